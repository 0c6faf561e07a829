//! Graded multiplication maps, syzygies and degreewise ideal computations.
//!
//! Every computation here is a finite-dimensional linear algebra problem in a
//! single graded piece. Columns of a multiplication map are ordered
//! generator-major, then by the canonical monomial order of the source piece;
//! rows follow the canonical order of the target piece.

mod koszul;
mod mu;
mod saturation;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::forms::{
    add_exps, gcd_binary_all, monomial_count, monomial_index, monomials, Degree, Form, MovingForm, Ring, Target,
};
use crate::linalg::{Matrix, Scalar};

pub use koszul::{koszul_witness, KoszulWitness};
pub use mu::{mu_basis, MuBasis};
pub use saturation::{
    is_saturated_up_to, saturation_piece, vanishes_at_basepoints, vanishing_syzygies, Saturation, DEFAULT_WINDOW_FACTOR,
};

/// A verified relation `sum_i components[i] * generators[i] = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct SyzygyVector {
    components: Vec<Form>,
    generators: Arc<[Form]>,
}

impl SyzygyVector {
    /// Checks the relation by expansion; fails with [`Error::Inconsistent`]
    /// when it does not hold.
    pub fn new(components: Vec<Form>, generators: Arc<[Form]>) -> Result<Self> {
        if components.len() != generators.len() {
            return Err(Error::Arity {
                expected: generators.len(),
                found: components.len(),
            });
        }
        let Some(first) = components.first() else {
            return Err(Error::ZeroInput("empty syzygy".into()));
        };
        let (ring, deg) = (first.ring(), first.degree());
        if components.iter().any(|c| c.ring() != ring || c.degree() != deg) {
            return Err(Error::Inconsistent("syzygy components must share one degree".into()));
        }
        let mut sum: Option<Form> = None;
        for (c, g) in components.iter().zip(generators.iter()) {
            let term = c.checked_mul(g)?;
            sum = Some(match sum {
                None => term,
                Some(s) => s.checked_add(&term)?,
            });
        }
        if !sum.expect("nonempty").is_zero() {
            return Err(Error::Inconsistent("components do not form a syzygy".into()));
        }
        Ok(SyzygyVector { components, generators })
    }

    pub fn components(&self) -> &[Form] {
        &self.components
    }

    pub fn generators(&self) -> &[Form] {
        &self.generators
    }

    pub fn ring(&self) -> Ring {
        self.components[0].ring()
    }

    pub fn degree(&self) -> Degree {
        self.components[0].degree()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Form::is_zero)
    }

    /// Coefficients of all components concatenated, matching the column
    /// layout of [`mult_map`].
    pub fn to_vector(&self) -> Vec<Scalar> {
        flatten(&self.components)
    }

    /// Multiplies every component by the same monomial.
    pub fn mul_monomial(&self, e: &crate::forms::Exps) -> SyzygyVector {
        SyzygyVector {
            components: self.components.iter().map(|c| c.mul_monomial(e)).collect(),
            generators: Arc::clone(&self.generators),
        }
    }

    /// Reads the syzygy as a moving line (3 components), plane (4) or
    /// quadric (6 or 10, on the degree-2 products of the generators).
    pub fn to_moving_form(&self) -> Result<MovingForm> {
        let (target, deg) = match self.components.len() {
            3 => (Target::P2, 1),
            4 => (Target::P3, 1),
            6 => (Target::P2, 2),
            10 => (Target::P3, 2),
            k => {
                return Err(Error::Inconsistent(format!(
                    "a syzygy with {k} components is not a moving form"
                )))
            }
        };
        MovingForm::new(target, deg, self.components.clone())
    }
}

impl fmt::Debug for SyzygyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(Form::render).collect();
        write!(f, "Syz({})", parts.join(", "))
    }
}

pub(crate) fn flatten(forms: &[Form]) -> Vec<Scalar> {
    forms.iter().flat_map(|f| f.coeffs().iter().cloned()).collect()
}

/// Splits a concatenated coefficient vector into `k` forms of one degree.
pub(crate) fn unflatten(ring: Ring, deg: Degree, v: &[Scalar], k: usize) -> Vec<Form> {
    let width = monomial_count(ring, deg);
    assert_eq!(v.len(), width * k, "vector length mismatch");
    v.chunks(width)
        .map(|c| Form::from_coeffs(ring, deg, c.to_vec()).expect("chunk width matches degree"))
        .collect()
}

/// Common ring and degree of a nonempty generator list.
pub(crate) fn shared_shape(gens: &[Form]) -> Result<(Ring, Degree)> {
    let Some(first) = gens.first() else {
        return Err(Error::ZeroInput("empty generator list".into()));
    };
    let (ring, deg) = (first.ring(), first.degree());
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch(format!(
                "generators mix {ring} and {} rings",
                g.ring()
            )));
        }
        if g.degree() != deg {
            return Err(Error::DegreeMismatch {
                expected: deg.to_string(),
                found: g.degree().to_string(),
            });
        }
    }
    Ok((ring, deg))
}

fn common_ring(gens: &[Form]) -> Result<Ring> {
    let Some(first) = gens.first() else {
        return Err(Error::ZeroInput("empty generator list".into()));
    };
    let ring = first.ring();
    if let Some(g) = gens.iter().find(|g| g.ring() != ring) {
        return Err(Error::RingMismatch(format!(
            "generators mix {ring} and {} rings",
            g.ring()
        )));
    }
    Ok(ring)
}

/// Writes the columns `(m * g)` for every source monomial `m` into `out`.
fn push_product_columns(g: &Form, source: Degree, target: Degree, out: &mut Matrix, first_col: usize) {
    let ring = g.ring();
    debug_assert_eq!(out.rows(), monomial_count(ring, target));
    let terms: Vec<_> = g.terms().collect();
    for (j, m) in monomials(ring, source).iter().enumerate() {
        for (e, c) in &terms {
            let row = monomial_index(ring, &add_exps(m, e));
            out[(row, first_col + j)] += *c;
        }
    }
}

/// Matrix of `(h_1..h_k) -> sum h_i * gens_i` on `R_source^k`.
pub fn mult_map(gens: &[Form], source_deg: Degree) -> Result<Matrix> {
    let (ring, gdeg) = shared_shape(gens)?;
    ring.check_degree(source_deg)?;
    let target = source_deg.checked_add(gdeg).expect("same grading");
    let width = monomial_count(ring, source_deg);
    let mut m = Matrix::zeros(monomial_count(ring, target), width * gens.len());
    for (i, g) in gens.iter().enumerate() {
        push_product_columns(g, source_deg, target, &mut m, i * width);
    }
    Ok(m)
}

/// Like [`mult_map`], but for a source degree given relative to the
/// generator degree: fails with [`Error::DegreeUnderflow`] when `deg` lies
/// below it.
pub fn mult_map_into(gens: &[Form], deg: Degree) -> Result<Matrix> {
    let (_, gdeg) = shared_shape(gens)?;
    let source = deg
        .checked_sub(gdeg)
        .ok_or_else(|| Error::DegreeUnderflow(format!("degree {deg} lies below generator degree {gdeg}")))?;
    mult_map(gens, source)
}

/// Matrix whose column span is the degree-`deg` piece of the ideal generated
/// by `gens`. Generators may have different degrees; those above `deg`
/// contribute nothing.
pub fn ideal_matrix(gens: &[Form], deg: Degree) -> Result<Matrix> {
    let ring = common_ring(gens)?;
    ring.check_degree(deg)?;
    let sources: Vec<Option<Degree>> = gens.iter().map(|g| deg.checked_sub(g.degree())).collect();
    let cols: usize = sources.iter().flatten().map(|&s| monomial_count(ring, s)).sum();
    let mut m = Matrix::zeros(monomial_count(ring, deg), cols);
    let mut at = 0;
    for (g, src) in gens.iter().zip(&sources) {
        if let Some(s) = *src {
            push_product_columns(g, s, deg, &mut m, at);
            at += monomial_count(ring, s);
        }
    }
    Ok(m)
}

/// Canonical basis of the syzygies of degree `deg` on `gens`.
pub fn syzygies(gens: &[Form], deg: Degree) -> Result<Vec<SyzygyVector>> {
    let (ring, _) = shared_shape(gens)?;
    let m = mult_map(gens, deg)?;
    let shared: Arc<[Form]> = gens.to_vec().into();
    m.kernel_basis()
        .iter()
        .map(|v| {
            SyzygyVector::new(unflatten(ring, deg, v, gens.len()), Arc::clone(&shared))
                .map_err(|e| Error::Internal(format!("kernel vector failed the syzygy check: {e}")))
        })
        .collect()
}

/// `dim (R/I)_deg` for the ideal generated by `gens`.
pub fn hilbert_dim(gens: &[Form], deg: Degree) -> Result<usize> {
    let ring = common_ring(gens)?;
    let m = ideal_matrix(gens, deg)?;
    Ok(monomial_count(ring, deg) - if m.cols() == 0 { 0 } else { m.rank() })
}

/// Whether `f` lies in the ideal generated by `gens`.
pub fn ideal_membership(gens: &[Form], f: &Form) -> Result<bool> {
    let ring = common_ring(gens)?;
    if f.ring() != ring {
        return Err(Error::RingMismatch(format!(
            "form is {} but generators are {ring}",
            f.ring()
        )));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let m = ideal_matrix(gens, f.degree())?;
    if m.cols() == 0 {
        return Ok(false);
    }
    Ok(m.solve(f.coeffs()).is_some())
}

/// Substitutes binary forms for the variables of `f`.
fn restrict(f: &Form, images: &[Form]) -> Result<Form> {
    let deg = images[0].degree().total() * total_degree(f.degree());
    let mut acc = Form::zero(Ring::Binary, Degree::Total(deg));
    for (e, c) in f.terms() {
        let mut term = Form::one(Ring::Binary);
        for (img, &k) in images.iter().zip(e.iter()) {
            if k > 0 {
                term = term.checked_mul(&img.pow(k))?;
            }
        }
        acc = acc.checked_add(&term.scale(c))?;
    }
    Ok(acc)
}

fn total_degree(d: Degree) -> u32 {
    match d {
        Degree::Total(k) => k,
        Degree::Bi(a, b) => a + b,
    }
}

fn random_linear<R: Rng>(rng: &mut R) -> Form {
    loop {
        let c: Vec<Scalar> = (0..2).map(|_| crate::linalg::scalar(rng.gen_range(-9..=9))).collect();
        if c.iter().any(|x| !x.is_zero()) {
            return Form::from_coeffs(Ring::Binary, Degree::Total(1), c).expect("two coefficients");
        }
    }
}

/// Probabilistic test that `gens` have no common factor of positive degree.
///
/// The generators are restricted to random lines (ternary) or random graphs
/// of automorphisms of `P^1` (bihomogeneous) and compared with a binary gcd.
/// A `true` answer is a proof; `false` means every trial saw a common factor.
pub fn probably_coprime(gens: &[Form], seed: u64, trials: usize) -> Result<bool> {
    let (ring, _) = shared_shape(gens)?;
    if ring == Ring::Binary {
        return Ok(gcd_binary_all(gens)?.is_unit());
    }
    let mut rng = crate::random::rng(seed);
    for _ in 0..trials {
        let images: Vec<Form> = match ring {
            Ring::Ternary => (0..3).map(|_| random_linear(&mut rng)).collect(),
            _ => {
                let s = Form::monomial(Ring::Binary, [1, 0, 0, 0], Scalar::from_integer(1.into()));
                let u = Form::monomial(Ring::Binary, [0, 1, 0, 0], Scalar::from_integer(1.into()));
                vec![s, u, random_linear(&mut rng), random_linear(&mut rng)]
            }
        };
        let restricted: Vec<Form> = gens.iter().map(|g| restrict(g, &images)).collect::<Result<_>>()?;
        if restricted.iter().all(Form::is_zero) {
            continue;
        }
        if gcd_binary_all(&restricted)?.is_unit() {
            return Ok(true);
        }
    }
    Ok(false)
}
