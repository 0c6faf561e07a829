use num_traits::Zero;

use super::surface::quadratic_products;
use crate::error::{Error, Result};
use crate::forms::{Degree, Form, Ring};
use crate::linalg::{Matrix, Scalar};
use crate::syzygy::{mult_map, shared_shape};

/// Number of coordinate changes tried before giving up on `det MP != 0`.
pub const DANDREA_ATTEMPTS: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DandreaReport {
    pub det_mq_prime: Scalar,
    pub det_mp: Scalar,
    /// `det_mq_prime / det_mp^3`; its value depends on basis conventions,
    /// only its vanishing is meaningful.
    pub ratio: Scalar,
    /// The target coordinate change that was used.
    pub change: Matrix,
    pub attempts: u32,
}

fn transform(gens: &[Form], t: &Matrix) -> Vec<Form> {
    (0..4)
        .map(|i| {
            let mut acc = Form::zero(gens[0].ring(), gens[0].degree());
            for (j, g) in gens.iter().enumerate() {
                if !t[(i, j)].is_zero() {
                    acc = &acc + &g.scale(&t[(i, j)]);
                }
            }
            acc
        })
        .collect()
}

/// Determinants of the square maps `MP` (`4mn x 4mn`, on `a,b,c,d`) and
/// `MQ'` (`9mn x 9mn`, on the quadratic products without `d^2`) after a
/// random invertible change of target coordinates, and their ratio
/// `det MQ' / det MP^3`.
///
/// Changes are retried while either determinant vanishes. `det MP` only
/// picks up a nonzero factor under such a change, so a singular `MP`
/// (a basepoint of the quadruple) is reported as an error after the last
/// attempt; a vanishing `det MQ'` is returned with ratio 0.
pub fn dandrea_ratio(gens: &[Form], seed: u64) -> Result<DandreaReport> {
    if gens.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            found: gens.len(),
        });
    }
    let (ring, deg) = shared_shape(gens)?;
    let Degree::Bi(m, n) = deg else {
        return Err(Error::RingMismatch(format!(
            "resultant ratio needs bihomogeneous forms, got {ring}"
        )));
    };
    debug_assert_eq!(ring, Ring::Bihomogeneous);
    if m == 0 || n == 0 {
        return Err(Error::DegreeUnderflow(format!(
            "bidegree {deg} leaves no room for moving forms"
        )));
    }
    let source = Degree::Bi(m - 1, n - 1);
    let mut rng = crate::random::rng(seed);
    let mut fallback = None;
    for attempt in 1..=DANDREA_ATTEMPTS {
        let change = crate::random::invertible(&mut rng, 4, 5);
        let moved = transform(gens, &change);
        let det_mp = mult_map(&moved, source)?.determinant()?;
        if det_mp.is_zero() {
            continue;
        }
        let mut products = quadratic_products(&moved)?;
        products.pop();
        let det_mq_prime = mult_map(&products, source)?.determinant()?;
        let ratio = &det_mq_prime / (&det_mp * &det_mp * &det_mp);
        let report = DandreaReport {
            det_mq_prime,
            det_mp,
            ratio,
            change,
            attempts: attempt,
        };
        if !report.ratio.is_zero() {
            return Ok(report);
        }
        fallback.get_or_insert(report);
    }
    fallback.ok_or(Error::ZeroDeterminant("MP under every coordinate change"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_form_infer;

    fn forms(texts: &[&str]) -> Vec<Form> {
        texts
            .iter()
            .map(|t| parse_form_infer(t, Ring::Bihomogeneous).unwrap())
            .collect()
    }

    #[test]
    fn segre_ratio_is_nonzero() {
        let g = forms(&["s*t", "s*v", "u*t", "u*v"]);
        let r = dandrea_ratio(&g, 11).unwrap();
        assert!(!r.det_mp.is_zero() && !r.det_mq_prime.is_zero() && !r.ratio.is_zero());
        assert_eq!(r, dandrea_ratio(&g, 11).unwrap());
    }

    #[test]
    fn basepoint_makes_mp_singular() {
        let g = forms(&["s*t", "s*v", "u*t", "s*t - u*t"]);
        assert!(matches!(dandrea_ratio(&g, 3), Err(Error::ZeroDeterminant(_))));
    }
}
