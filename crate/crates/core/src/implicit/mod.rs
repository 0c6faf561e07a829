//! Moving-form matrices and implicit equations.

mod dandrea;
mod surface;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{gcd_binary_all, normalize, substitute, Degree, Form, Ring, Target, TargetPoly};
use crate::linalg::{bareiss_determinant, Matrix, Scalar};
use crate::syzygy::{shared_shape, syzygies, MuBasis, SyzygyVector};

pub use dandrea::{dandrea_ratio, DandreaReport, DANDREA_ATTEMPTS};
pub use surface::{
    assemble_m_tp, assemble_m_tp_one_bp, assemble_m_tri, implicitize_surface, quadratic_products, Assembly, SurfaceKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowKind {
    Linear,
    Quadric,
}

impl RowKind {
    pub fn degree(self) -> u32 {
        match self {
            RowKind::Linear => 1,
            RowKind::Quadric => 2,
        }
    }
}

/// Square matrix of target-space forms; every entry of a row has the degree
/// of that row's kind.
#[derive(Clone, PartialEq, Eq)]
pub struct MovingMatrix {
    target: Target,
    rows: Vec<Vec<TargetPoly>>,
    kinds: Vec<RowKind>,
}

impl MovingMatrix {
    pub fn new(target: Target, rows: Vec<Vec<TargetPoly>>, kinds: Vec<RowKind>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::ZeroInput("empty moving matrix".into()));
        }
        if kinds.len() != k {
            return Err(Error::Arity {
                expected: k,
                found: kinds.len(),
            });
        }
        for (row, kind) in rows.iter().zip(&kinds) {
            if row.len() != k {
                return Err(Error::NotSquare {
                    rows: k,
                    cols: row.len(),
                });
            }
            for p in row {
                if p.target() != target {
                    return Err(Error::Inconsistent("moving matrix mixes target spaces".into()));
                }
                if !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(kind.degree())) {
                    return Err(Error::Inconsistent(format!(
                        "entry `{p}` does not have the row degree {}",
                        kind.degree()
                    )));
                }
            }
        }
        Ok(MovingMatrix { target, rows, kinds })
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entries(&self) -> &[Vec<TargetPoly>] {
        &self.rows
    }

    pub fn row_kinds(&self) -> &[RowKind] {
        &self.kinds
    }

    pub fn count_rows(&self, kind: RowKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    /// Sum of the row degrees: the degree of a nonzero determinant.
    pub fn det_degree(&self) -> u32 {
        self.kinds.iter().map(|k| k.degree()).sum()
    }

    /// Entrywise evaluation at a target point.
    pub fn evaluate(&self, point: &[Scalar]) -> Matrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point)).collect())
            .collect();
        Matrix::from_rows(rows).expect("square")
    }
}

impl fmt::Debug for MovingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MovingMatrix {}x{}", self.size(), self.size())?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(TargetPoly::render).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant over the target polynomial ring.
pub fn moving_det(m: &MovingMatrix) -> TargetPoly {
    bareiss_determinant(m.rows.clone())
}

/// Checks and dimensions gathered while building a matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub mp_kernel_dim: Option<usize>,
    pub mq_kernel_dim: Option<usize>,
    /// Outcome of the probabilistic common-factor check, when one ran.
    pub coprime: Option<bool>,
    pub notes: Vec<String>,
}

/// `det_poly = lambda * f^d` with `f` normalized.
#[derive(Clone, Debug)]
pub struct ImplicitResult {
    pub det_poly: TargetPoly,
    pub f: TargetPoly,
    pub d: u32,
    pub lambda: Scalar,
    pub matrix: MovingMatrix,
    pub diagnostics: Diagnostics,
}

impl ImplicitResult {
    /// Re-expands `lambda * f^d` and compares with the determinant.
    pub fn verify_power(&self) -> bool {
        self.f.pow(self.d).scale(&self.lambda) == self.det_poly
    }
}

/// Splits a nonzero homogeneous `det` as `lambda * f^d` with `d` maximal.
///
/// Candidate exponents are the divisors of `deg det`, largest first; each is
/// tried with an exact `d`-th root of the monic determinant. `d = 1` always
/// succeeds, so the split is total.
pub fn power_split(det: &TargetPoly) -> Result<(TargetPoly, u32, Scalar)> {
    let deg = det.degree().ok_or(Error::ZeroDeterminant("moving matrix"))?;
    let lc = det.leading().expect("nonzero").1.clone();
    let monic = det.scale(&lc.recip());
    for d in (1..=deg.max(1)).rev().filter(|d| deg % d == 0) {
        let Some(root) = monic.monic_root(d) else {
            continue;
        };
        let (f, _) = normalize(&root)?;
        let fd = f.pow(d);
        let lambda = &lc / fd.leading().expect("nonzero").1;
        if fd.scale(&lambda) == *det {
            return Ok((f, d, lambda));
        }
    }
    Err(Error::Internal(format!("no power split for `{det}`")))
}

/// Builds the result record and checks `f` vanishes on the parametrization.
pub(crate) fn finish(
    det: TargetPoly,
    matrix: MovingMatrix,
    gens: &[Form],
    diagnostics: Diagnostics,
) -> Result<ImplicitResult> {
    if det.is_zero() {
        return Err(Error::ZeroDeterminant("the moving matrix"));
    }
    let expected = matrix.det_degree();
    if det.degree() != Some(expected) || !det.is_homogeneous() {
        return Err(Error::Internal(format!(
            "determinant degree {:?} differs from the row-degree sum {expected}",
            det.degree()
        )));
    }
    let (f, d, lambda) = power_split(&det)?;
    if !substitute(&f, gens)?.is_zero() {
        return Err(Error::Internal(format!("`{f}` does not vanish on the parametrization")));
    }
    let res = ImplicitResult {
        det_poly: det,
        f,
        d,
        lambda,
        matrix,
        diagnostics,
    };
    debug_assert!(res.verify_power());
    Ok(res)
}

/// The `n x n` matrix of moving lines from a basis of `Syz_{n-1}`: row `i`
/// expands syzygy `i`, column `j` collects the coefficient of
/// `s^j t^(n-1-j)`.
pub fn curve_matrix(basis: &[SyzygyVector]) -> Result<MovingMatrix> {
    let n = basis.len();
    let expected = Degree::Total(n.saturating_sub(1) as u32);
    for v in basis {
        if v.components().len() != 3 || v.ring() != Ring::Binary {
            return Err(Error::Inconsistent(
                "curve syzygies have three binary components".into(),
            ));
        }
        if v.degree() != expected {
            return Err(Error::Arity {
                expected: v.degree().total() as usize + 1,
                found: n,
            });
        }
    }
    if n == 0 {
        return Err(Error::ZeroInput("empty syzygy basis".into()));
    }
    let columns: Vec<[u32; 4]> = (0..n as u32).map(|j| [j, n as u32 - 1 - j, 0, 0]).collect();
    let rows = basis
        .iter()
        .map(|v| Ok(v.to_moving_form()?.expand(&columns)))
        .collect::<Result<Vec<_>>>()?;
    MovingMatrix::new(Target::P2, rows, vec![RowKind::Linear; n])
}

/// Implicit equation of the curve `(a : b : c)` from its moving lines of
/// degree `n - 1`.
pub fn implicitize_curve(a: &Form, b: &Form, c: &Form) -> Result<ImplicitResult> {
    let gens = [a.clone(), b.clone(), c.clone()];
    let (ring, deg) = shared_shape(&gens)?;
    if ring != Ring::Binary {
        return Err(Error::RingMismatch(format!("curves need binary forms, got {ring}")));
    }
    let n = deg.total();
    if n == 0 {
        return Err(Error::DegreeUnderflow("curve generators need positive degree".into()));
    }
    let g = gcd_binary_all(&gens)?;
    if !g.is_unit() {
        return Err(Error::NotCoprime(g.render()));
    }
    let basis = syzygies(&gens, Degree::Total(n - 1))?;
    if basis.len() != n as usize {
        return Err(Error::Internal(format!(
            "syzygies of degree {} have dimension {}, expected {n}",
            n - 1,
            basis.len()
        )));
    }
    let m = curve_matrix(&basis)?;
    let det = moving_det(&m);
    let diag = Diagnostics {
        coprime: Some(true),
        ..Diagnostics::default()
    };
    finish(det, m, &gens, diag).map_err(|e| match e {
        Error::ZeroDeterminant(_) => Error::Internal("curve determinant vanished for coprime input".into()),
        other => other,
    })
}

/// Sylvester resultant of the μ-basis, eliminating `s, t`.
pub fn mu_resultant(mb: &MuBasis) -> Result<TargetPoly> {
    let coeffs = |v: &SyzygyVector| -> Result<Vec<TargetPoly>> {
        let k = v.degree().total();
        let line = v.to_moving_form()?;
        Ok((0..=k).map(|j| line.coefficient_of(&[k - j, j, 0, 0])).collect())
    };
    let p = coeffs(&mb.p)?;
    let q = coeffs(&mb.q)?;
    let (mu, nu) = (p.len() - 1, q.len() - 1);
    let size = mu + nu;
    if size == 0 {
        return Ok(TargetPoly::constant(Target::P2, Scalar::one()));
    }
    let zero = TargetPoly::zero(Target::P2);
    let mut rows = vec![vec![zero; size]; size];
    for i in 0..nu {
        for (j, c) in p.iter().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..mu {
        for (j, c) in q.iter().enumerate() {
            rows[nu + i][i + j] = c.clone();
        }
    }
    Ok(bareiss_determinant(rows))
}

/// Target points for cross-checking polynomial and scalar determinants.
pub fn sample_points(target: Target, count: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = crate::random::rng(seed);
    (0..count)
        .map(|_| {
            (0..target.num_vars())
                .map(|_| {
                    let c = crate::random::coefficient(&mut rng, 50);
                    let d = crate::random::coefficient(&mut rng, 7);
                    if d.is_zero() {
                        c
                    } else {
                        c / d.abs()
                    }
                })
                .collect()
        })
        .collect()
}
