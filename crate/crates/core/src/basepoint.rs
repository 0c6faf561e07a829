//! Strong μ-bases of triangular parametrizations and basepoint numerology.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{monomial_count, monomials, Degree, Form, Ring};
use crate::linalg::{Scalar, Span};
use crate::syzygy::{hilbert_dim, shared_shape, syzygies, SyzygyVector};

/// Three syzygies freely generating `Syz(a,b,c,d)` with degrees summing to
/// `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongMuBasis {
    pub p: [SyzygyVector; 3],
    pub mu: [u32; 3],
}

/// User-supplied basepoint data for the degree formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasepointData {
    pub multiplicities: Vec<u64>,
    pub n: u64,
    pub deg_phi: u64,
}

fn binom2(k: i64) -> i64 {
    // dim of ternary forms of degree k, zero for negative k
    if k < 0 {
        0
    } else {
        (k + 1) * (k + 2) / 2
    }
}

/// `dim (R/I)_d` predicted by a free resolution with generator degrees `mu`.
pub fn resolution_hilbert(n: u32, mu: &[u32; 3], d: u32) -> i64 {
    let (n, d) = (n as i64, d as i64);
    binom2(d) - 4 * binom2(d - n) + mu.iter().map(|&m| binom2(d - n - m as i64)).sum::<i64>()
}

/// Searches for minimal syzygy generators in degrees `0..n`. Returns a
/// strong μ-basis when exactly three are found, their degrees sum to `n`,
/// and the Hilbert function of `R/I` matches the resulting resolution up to
/// degree `3n`.
pub fn strong_mu_basis(gens: &[Form]) -> Result<Option<StrongMuBasis>> {
    if gens.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            found: gens.len(),
        });
    }
    let (ring, deg) = shared_shape(gens)?;
    if ring != Ring::Ternary {
        return Err(Error::RingMismatch(format!(
            "strong μ-bases need ternary forms, got {ring}"
        )));
    }
    let n = deg.total();
    let mut found: Vec<SyzygyVector> = Vec::new();
    for d in 0..n {
        let mut span = Span::new(4 * monomial_count(ring, Degree::Total(d)));
        for g in &found {
            let k = d - g.degree().total();
            for m in monomials(ring, Degree::Total(k)) {
                span.insert(&g.mul_monomial(&m).to_vector());
            }
        }
        for v in syzygies(gens, Degree::Total(d))? {
            if span.insert(&v.to_vector()) {
                found.push(v);
                if found.len() > 3 {
                    return Ok(None);
                }
            }
        }
    }
    if found.len() != 3 {
        return Ok(None);
    }
    let mu: [u32; 3] = std::array::from_fn(|i| found[i].degree().total());
    if mu.iter().sum::<u32>() != n {
        return Ok(None);
    }
    for d in 0..=3 * n {
        if hilbert_dim(gens, Degree::Total(d))? as i64 != resolution_hilbert(n, &mu, d) {
            return Ok(None);
        }
    }
    Ok(Some(StrongMuBasis {
        p: found.try_into().expect("three generators"),
        mu,
    }))
}

fn det3(m: &[[&Form; 3]; 3]) -> Result<Form> {
    let t = |a: usize, b: usize, c: usize| -> Result<Form> { m[0][a].checked_mul(m[1][b])?.checked_mul(m[2][c]) };
    let pos = t(0, 1, 2)?.checked_add(&t(1, 2, 0)?)?.checked_add(&t(2, 0, 1)?)?;
    let neg = t(2, 1, 0)?.checked_add(&t(0, 2, 1)?)?.checked_add(&t(1, 0, 2)?)?;
    pos.checked_sub(&neg)
}

/// The signed maximal minors `(-1)^i Δ_i` of the `4 x 3` matrix whose
/// columns are the given syzygies.
pub fn signed_minors(p: &[SyzygyVector; 3]) -> Result<[Form; 4]> {
    let mut out = Vec::with_capacity(4);
    for skip in 0..4 {
        let rows: Vec<usize> = (0..4).filter(|&r| r != skip).collect();
        let m: [[&Form; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| &p[j].components()[rows[i]]));
        let d = det3(&m)?;
        out.push(if skip % 2 == 0 { d } else { -&d });
    }
    Ok(out.try_into().expect("four minors"))
}

/// Whether the signed minors equal `lambda * (a, b, c, d)` for one nonzero
/// scalar `lambda`.
pub fn hilbert_burch_check(smb: &StrongMuBasis, gens: &[Form]) -> Result<bool> {
    if gens.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            found: gens.len(),
        });
    }
    let minors = signed_minors(&smb.p)?;
    if minors.iter().zip(gens).any(|(m, g)| m.degree() != g.degree()) {
        return Ok(false);
    }
    let mut lambda: Option<Scalar> = None;
    for (m, g) in minors.iter().zip(gens) {
        for (x, y) in m.coeffs().iter().zip(g.coeffs()) {
            match (x.is_zero(), y.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = x / y;
                    match &lambda {
                        None => lambda = Some(r),
                        Some(l) if *l != r => return Ok(false),
                        _ => {}
                    }
                }
                _ => return Ok(false),
            }
        }
    }
    Ok(lambda.is_some())
}

/// Degree and basepoint count attached to a strong μ-basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Numerology {
    pub n: u64,
    pub surface_degree: u64,
    pub basepoint_sum: u64,
    /// `basepoint_sum >= 2 n^2 / 3`.
    pub bound_holds: bool,
}

pub fn strong_mu_numerology(mu: [u32; 3]) -> Result<Numerology> {
    if mu.contains(&0) {
        return Err(Error::Inconsistent(format!("μ entries must be positive, got {mu:?}")));
    }
    let [a, b, c] = mu.map(u64::from);
    let n = a + b + c;
    let degree = a * b + a * c + b * c;
    let sum = n * n - degree;
    Ok(Numerology {
        n,
        surface_degree: degree,
        basepoint_sum: sum,
        bound_holds: 3 * sum >= 2 * n * n,
    })
}

/// `(n^2 - sum of multiplicities) / deg_phi`.
pub fn degree_formula(bp: &BasepointData) -> Result<u64> {
    if bp.deg_phi == 0 {
        return Err(Error::Inconsistent("generic degree must be positive".into()));
    }
    if let Some(&m) = bp.multiplicities.iter().find(|&&m| m == 0) {
        return Err(Error::Inconsistent(format!("multiplicity {m} is not positive")));
    }
    let total: u64 = bp.multiplicities.iter().sum();
    let nn = bp.n * bp.n;
    let rest = nn
        .checked_sub(total)
        .ok_or_else(|| Error::Inconsistent(format!("multiplicities sum to {total} > n^2 = {nn}")))?;
    if rest % bp.deg_phi != 0 {
        return Err(Error::Inconsistent(format!(
            "deg_phi = {} does not divide {rest}",
            bp.deg_phi
        )));
    }
    Ok(rest / bp.deg_phi)
}
