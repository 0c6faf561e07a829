use num_traits::Zero;

use super::{flatten, shared_shape, unflatten, SyzygyVector};
use crate::error::{Error, Result};
use crate::forms::{monomial_count, Degree, Form};
use crate::linalg::Matrix;

/// Forms `h1, h2, h3` exhibiting a syzygy `(A, B, C)` on `(a, b, c)` as a
/// combination of the three trivial relations:
///
/// ```text
/// A =  h1*c + h2*b
/// B = -h2*a + h3*c
/// C = -h1*a - h3*b
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulWitness {
    pub h: [Form; 3],
}

impl KoszulWitness {
    /// The syzygy this witness produces on `gens`.
    pub fn expand(&self, gens: &[Form]) -> Result<[Form; 3]> {
        let [a, b, c] = gens else {
            return Err(Error::Arity {
                expected: 3,
                found: gens.len(),
            });
        };
        let [h1, h2, h3] = &self.h;
        let ca = h1.checked_mul(c)?.checked_add(&h2.checked_mul(b)?)?;
        let cb = h3.checked_mul(c)?.checked_sub(&h2.checked_mul(a)?)?;
        let cc = -&h1.checked_mul(a)?.checked_add(&h3.checked_mul(b)?)?;
        Ok([ca, cb, cc])
    }

    /// Whether this witness reproduces `syz` exactly.
    pub fn reproduces(&self, syz: &SyzygyVector) -> bool {
        if self.h.iter().all(Form::is_zero) {
            return syz.is_zero();
        }
        match self.expand(syz.generators()) {
            Ok(parts) => parts[..] == *syz.components(),
            Err(_) => false,
        }
    }
}

/// Solves for a Koszul witness of `syz`, or `None` if it is not a Koszul
/// syzygy. The witness is the particular solution of the rref solve.
///
/// Below the generator degree only the zero syzygy is Koszul; its witness is
/// reported with zero forms of degree zero.
pub fn koszul_witness(gens: &[Form], syz: &SyzygyVector) -> Result<Option<KoszulWitness>> {
    if gens.len() != 3 {
        return Err(Error::Arity {
            expected: 3,
            found: gens.len(),
        });
    }
    let (ring, gdeg) = shared_shape(gens)?;
    if syz.generators() != gens {
        return Err(Error::Inconsistent(
            "syzygy was computed on different generators".into(),
        ));
    }
    let Some(hdeg) = syz.degree().checked_sub(gdeg) else {
        if syz.is_zero() {
            let z = Form::zero(ring, ring.zero_degree());
            return Ok(Some(KoszulWitness {
                h: [z.clone(), z.clone(), z],
            }));
        }
        return Ok(None);
    };
    let w = witness_system(gens, hdeg)?;
    let Some(sol) = w.solve(&flatten(syz.components())) else {
        return Ok(None);
    };
    let h = unflatten(ring, hdeg, &sol, 3);
    let witness = KoszulWitness {
        h: h.try_into().expect("three forms"),
    };
    if !witness.reproduces(syz) {
        return Err(Error::Internal("Koszul witness does not reproduce the syzygy".into()));
    }
    Ok(Some(witness))
}

/// The linear map `(h1, h2, h3) -> (A, B, C)` in block form.
fn witness_system(gens: &[Form], hdeg: Degree) -> Result<Matrix> {
    let (a, b, c) = (&gens[0], &gens[1], &gens[2]);
    let ring = a.ring();
    let width = monomial_count(ring, hdeg);
    let height = monomial_count(ring, hdeg.checked_add(a.degree()).expect("same grading"));
    let neg = |f: &Form| -f;
    // (row block, column block, generator)
    let blocks: [(usize, usize, Form); 6] = [
        (0, 0, c.clone()),
        (0, 1, b.clone()),
        (1, 1, neg(a)),
        (1, 2, c.clone()),
        (2, 0, neg(a)),
        (2, 2, neg(b)),
    ];
    let mut m = Matrix::zeros(3 * height, 3 * width);
    for (rb, cb, g) in blocks {
        let piece = super::mult_map(&[g], hdeg)?;
        for i in 0..height {
            for j in 0..width {
                let v = &piece[(i, j)];
                if !v.is_zero() {
                    m[(rb * height + i, cb * width + j)] = v.clone();
                }
            }
        }
    }
    Ok(m)
}
