//! Degreewise saturation of ternary ideals with finitely many basepoints.
//!
//! Let `c` be the Hilbert polynomial (a constant) of `R/I`. Once a degree
//! `e` at or above every generator degree has `H(e) = H(e+1) = c <= e`, the
//! growth from `e` to `e+1` is the minimal one allowed by Macaulay's bound,
//! so by Gotzmann persistence `I_k = sat(I)_k` for all `k >= e`. Below `e`,
//! `sat(I)_d = { f : f * R_{e-d} ⊆ I_e }`, computed as the kernel of a chain
//! of annihilators `E_d` pulled back one variable at a time.

use std::sync::Arc;

use num_traits::Zero;

use super::{ideal_matrix, mult_map, shared_shape, unflatten, SyzygyVector};
use crate::error::{Error, Result};
use crate::forms::{add_exps, monomial_count, monomial_index, monomials, Degree, Form, Ring};
use crate::linalg::{Matrix, Scalar};

/// Window factor: stabilization is searched up to `factor * max_gen_degree`
/// degrees above the top generator degree.
pub const DEFAULT_WINDOW_FACTOR: u32 = 4;

/// The saturation of a ternary ideal, resolved into graded pieces.
#[derive(Clone, Debug)]
pub struct Saturation {
    gens: Vec<Form>,
    top: u32,
    constant: usize,
    // ann[d] has rows spanning the functionals on R_d vanishing on sat(I)_d.
    ann: Vec<Matrix>,
}

fn ternary(d: u32) -> Degree {
    Degree::Total(d)
}

fn left_kernel(m: &Matrix) -> Matrix {
    let rows = m.transpose().kernel_basis();
    if rows.is_empty() {
        Matrix::zeros(0, m.rows())
    } else {
        Matrix::from_rows(rows).expect("kernel vectors share a length")
    }
}

impl Saturation {
    /// Uses the default window of `4 * n` degrees, `n` the top generator
    /// degree.
    pub fn new(gens: &[Form]) -> Result<Self> {
        let n = max_degree(gens)?;
        Self::with_window(gens, DEFAULT_WINDOW_FACTOR * n.max(1))
    }

    pub fn with_window(gens: &[Form], window: u32) -> Result<Self> {
        let gmax = max_degree(gens)?;
        let h = |d: u32| super::hilbert_dim(gens, ternary(d));
        let mut e = gmax;
        let mut he = h(e)?;
        let (top, constant) = loop {
            if e - gmax > window {
                return Err(Error::SaturationCap {
                    degree: gmax,
                    cap: window,
                });
            }
            let next = h(e + 1)?;
            if next == he && he <= e as usize {
                break (e, he);
            }
            e += 1;
            he = next;
        };
        let mut ann = vec![Matrix::zeros(0, 0); top as usize + 1];
        ann[top as usize] = left_kernel(&ideal_matrix(gens, ternary(top))?);
        for d in (0..top).rev() {
            ann[d as usize] = pull_back(&ann[d as usize + 1], d);
        }
        Ok(Saturation {
            gens: gens.to_vec(),
            top,
            constant,
            ann,
        })
    }

    /// First degree from which `I` and its saturation agree.
    pub fn stable_degree(&self) -> u32 {
        self.top
    }

    /// Length of the basepoint scheme: the eventual value of `dim (R/I)_d`.
    pub fn length(&self) -> usize {
        self.constant
    }

    fn annihilator(&self, d: u32) -> Result<Matrix> {
        if d <= self.top {
            Ok(self.ann[d as usize].clone())
        } else {
            Ok(left_kernel(&ideal_matrix(&self.gens, ternary(d))?))
        }
    }

    /// Basis of `sat(I)_d`.
    pub fn piece(&self, d: u32) -> Result<Vec<Form>> {
        let basis = self.annihilator(d)?.kernel_basis();
        Ok(basis
            .into_iter()
            .map(|v| Form::from_coeffs(Ring::Ternary, ternary(d), v).expect("piece width"))
            .collect())
    }

    pub fn piece_dim(&self, d: u32) -> Result<usize> {
        let e = self.annihilator(d)?;
        Ok(monomial_count(Ring::Ternary, ternary(d)) - e.rank())
    }

    pub fn contains(&self, f: &Form) -> Result<bool> {
        if f.ring() != Ring::Ternary {
            return Err(Error::RingMismatch(format!(
                "saturation is ternary, form is {}",
                f.ring()
            )));
        }
        if f.is_zero() {
            return Ok(true);
        }
        let e = self.annihilator(f.degree().total())?;
        Ok(e.mul_vec(f.coeffs()).iter().all(Zero::is_zero))
    }
}

fn max_degree(gens: &[Form]) -> Result<u32> {
    if gens.is_empty() {
        return Err(Error::ZeroInput("empty generator list".into()));
    }
    for g in gens {
        if g.ring() != Ring::Ternary {
            return Err(Error::RingMismatch(format!(
                "saturation needs ternary forms, got {}",
                g.ring()
            )));
        }
    }
    Ok(gens.iter().map(|g| g.degree().total()).max().expect("nonempty"))
}

/// `E_d` from `E_{d+1}`: `f` is killed iff `s*f`, `t*f`, `u*f` all are.
fn pull_back(upper: &Matrix, d: u32) -> Matrix {
    let mons = monomials(Ring::Ternary, ternary(d));
    let mut rows = Vec::with_capacity(3 * upper.rows());
    for r in 0..upper.rows() {
        let y = upper.row(r);
        for var in [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]] {
            let z: Vec<Scalar> = mons
                .iter()
                .map(|m| y[monomial_index(Ring::Ternary, &add_exps(m, &var))].clone())
                .collect();
            if z.iter().any(|x| !x.is_zero()) {
                rows.push(z);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, mons.len());
    }
    let red = Matrix::from_rows(rows).expect("uniform rows").rref();
    let rank = red.rank();
    Matrix::from_rows(red.matrix.to_rows().into_iter().take(rank).collect()).expect("uniform rows")
}

/// Basis of `sat(I)_deg` with the default stabilization window.
pub fn saturation_piece(gens: &[Form], deg: u32) -> Result<Vec<Form>> {
    Saturation::new(gens)?.piece(deg)
}

/// Whether `f` vanishes on the basepoint scheme, i.e. lies in `sat(I)`.
pub fn vanishes_at_basepoints(gens: &[Form], f: &Form) -> Result<bool> {
    Saturation::new(gens)?.contains(f)
}

/// Whether `sat(I)_d = I_d` for every `d <= dmax`.
pub fn is_saturated_up_to(gens: &[Form], dmax: u32) -> Result<bool> {
    let sat = Saturation::new(gens)?;
    for d in 0..=dmax.min(sat.stable_degree()) {
        let ideal = monomial_count(Ring::Ternary, ternary(d)) - super::hilbert_dim(gens, ternary(d))?;
        if sat.piece_dim(d)? != ideal {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of the syzygies of degree `deg` whose components all lie in the
/// saturation.
pub fn vanishing_syzygies(gens: &[Form], sat: &Saturation, deg: u32) -> Result<Vec<SyzygyVector>> {
    shared_shape(gens)?;
    let k = gens.len();
    let m = mult_map(gens, ternary(deg))?;
    let e = sat.annihilator(deg)?;
    let width = m.cols() / k;
    let mut stacked = m;
    for i in 0..k {
        let mut block = Matrix::zeros(e.rows(), k * width);
        for r in 0..e.rows() {
            for c in 0..width {
                block[(r, i * width + c)] = e[(r, c)].clone();
            }
        }
        stacked = stacked.vstack(&block);
    }
    let shared: Arc<[Form]> = gens.to_vec().into();
    stacked
        .kernel_basis()
        .iter()
        .map(|v| {
            SyzygyVector::new(unflatten(Ring::Ternary, ternary(deg), v, k), Arc::clone(&shared))
                .map_err(|e| Error::Internal(format!("kernel vector failed the syzygy check: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_form_infer;
    use crate::syzygy::{hilbert_dim, ideal_membership};

    fn forms(texts: &[&str]) -> Vec<Form> {
        texts
            .iter()
            .map(|t| parse_form_infer(t, Ring::Ternary).unwrap())
            .collect()
    }

    fn counter() -> Vec<Form> {
        forms(&["s^2*u + s*t^2", "s*t*u + 2*t^3", "t^2*u + s^3"])
    }

    #[test]
    fn artinian_ideal_saturates_to_everything() {
        let g = forms(&["s^2", "t^2", "u^2"]);
        let sat = Saturation::new(&g).unwrap();
        assert_eq!(sat.length(), 0);
        for d in 0..5 {
            assert_eq!(sat.piece(d).unwrap().len(), monomial_count(Ring::Ternary, ternary(d)));
        }
        assert_eq!(hilbert_dim(&g, ternary(4)).unwrap(), 0);
        assert!(!is_saturated_up_to(&g, 3).unwrap());
    }

    #[test]
    fn counter_ideal() {
        let g = counter();
        let sat = Saturation::new(&g).unwrap();
        assert_eq!(sat.length(), 3);
        for text in ["t^2*u^3 - 2*s^2*t^2*u", "-s*t*u^3 + s^3*t*u", "s*t^2*u^2"] {
            let f = parse_form_infer(text, Ring::Ternary).unwrap();
            assert!(sat.contains(&f).unwrap(), "{text}");
            assert!(ideal_membership(&g, &f).unwrap(), "{text}");
        }
        // the basepoint scheme lies inside (s^2, st, t^2), which I misses in degree 2
        for text in ["s^2", "s*t", "t^2"] {
            assert!(sat.contains(&parse_form_infer(text, Ring::Ternary).unwrap()).unwrap());
        }
        assert_eq!(sat.piece_dim(2).unwrap(), 3);
        assert!(!sat.contains(&parse_form_infer("s*u", Ring::Ternary).unwrap()).unwrap());
        let u5 = parse_form_infer("u^5", Ring::Ternary).unwrap();
        assert!(!vanishes_at_basepoints(&g, &u5).unwrap());
        assert!(vanishes_at_basepoints(&g, &(&g[0] * &u5)).unwrap());
        assert!(!is_saturated_up_to(&g, 6).unwrap());
    }

    #[test]
    fn saturated_ideals() {
        let g = forms(&["s", "t^2", "s*t"]);
        assert!(is_saturated_up_to(&g, 6).unwrap());
        let sat = Saturation::new(&g).unwrap();
        assert_eq!(sat.length(), 2);
        for d in 1..5 {
            assert_eq!(sat.piece_dim(d).unwrap(), monomial_count(Ring::Ternary, ternary(d)) - 2);
        }
    }

    #[test]
    fn curve_component_hits_the_cap() {
        let g = forms(&["s^2", "s*t"]);
        let e = Saturation::with_window(&g, 6).unwrap_err();
        assert!(matches!(e, Error::SaturationCap { cap: 6, .. }), "{e}");
    }

    #[test]
    fn counter_vanishing_syzygies_include_the_example() {
        let g = counter();
        let sat = Saturation::new(&g).unwrap();
        let v = vanishing_syzygies(&g, &sat, 5).unwrap();
        let all = crate::syzygy::syzygies(&g, ternary(5)).unwrap();
        assert!(!v.is_empty() && v.len() <= all.len());
        let abc = forms(&["t^2*u^3 - 2*s^2*t^2*u", "-s*t*u^3 + s^3*t*u", "s*t^2*u^2"]);
        let target = crate::syzygy::flatten(&abc);
        let cols: Vec<Vec<Scalar>> = v.iter().map(SyzygyVector::to_vector).collect();
        assert!(Matrix::from_columns(target.len(), &cols).solve(&target).is_some());
    }
}
