//! Graded polynomial rings over the rationals.
//!
//! A [`Form`] is a homogeneous (or bihomogeneous) polynomial stored densely
//! over the canonical monomial basis of its graded piece, so a form of degree
//! `d` cannot hold a term of any other degree. Three parameter rings exist:
//!
//! * binary `Q[s,t]`, monomials ordered by descending power of `s`;
//! * ternary `Q[s,t,u]`, graded lexicographic with `s > t > u`;
//! * bihomogeneous `Q[s,u;t,v]`, the product of descending `s` power and
//!   descending `t` power.
//!
//! Target-space polynomials in `x,y,z[,w]` live in [`TargetPoly`] and the
//! moving lines/planes/quadrics built from syzygies in [`MovingForm`].

mod gcd;
mod moving;
mod parse;
mod target;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Scalar;

pub use gcd::{gcd_binary, gcd_binary_all};
pub use moving::MovingForm;
pub use parse::{parse_form, parse_form_infer, parse_target};
pub use target::{normalize, substitute, Target, TargetPoly};

/// Exponent vector. Slot meaning depends on the ring: binary `[s,t,-,-]`,
/// ternary `[s,t,u,-]`, bihomogeneous `[s,u,t,v]`; target `[x,y,z,w]`.
pub type Exps = [u32; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Binary,
    Ternary,
    Bihomogeneous,
}

impl Ring {
    pub fn var_names(self) -> &'static [&'static str] {
        match self {
            Ring::Binary => &["s", "t"],
            Ring::Ternary => &["s", "t", "u"],
            Ring::Bihomogeneous => &["s", "u", "t", "v"],
        }
    }

    pub fn num_vars(self) -> usize {
        self.var_names().len()
    }

    /// Degree of the monomial with the given exponents in this ring's grading.
    pub fn degree_of(self, e: &Exps) -> Degree {
        match self {
            Ring::Binary => Degree::Total(e[0] + e[1]),
            Ring::Ternary => Degree::Total(e[0] + e[1] + e[2]),
            Ring::Bihomogeneous => Degree::Bi(e[0] + e[1], e[2] + e[3]),
        }
    }

    fn accepts(self, deg: Degree) -> bool {
        matches!(
            (self, deg),
            (Ring::Binary | Ring::Ternary, Degree::Total(_)) | (Ring::Bihomogeneous, Degree::Bi(..))
        )
    }

    pub fn check_degree(self, deg: Degree) -> Result<()> {
        if self.accepts(deg) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "degree {deg} is not a grading of the {self} ring"
            )))
        }
    }

    /// The zero degree of this ring's grading.
    pub fn zero_degree(self) -> Degree {
        match self {
            Ring::Bihomogeneous => Degree::Bi(0, 0),
            _ => Degree::Total(0),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Binary => "binary",
            Ring::Ternary => "ternary",
            Ring::Bihomogeneous => "bihomogeneous",
        })
    }
}

/// Degree (or bidegree) of a graded piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Total(u32),
    Bi(u32, u32),
}

impl Degree {
    pub fn checked_add(self, other: Degree) -> Option<Degree> {
        match (self, other) {
            (Degree::Total(a), Degree::Total(b)) => Some(Degree::Total(a + b)),
            (Degree::Bi(a, b), Degree::Bi(c, d)) => Some(Degree::Bi(a + c, b + d)),
            _ => None,
        }
    }

    /// `self - other`, or `None` when any component would go negative or the
    /// gradings differ.
    pub fn checked_sub(self, other: Degree) -> Option<Degree> {
        match (self, other) {
            (Degree::Total(a), Degree::Total(b)) => a.checked_sub(b).map(Degree::Total),
            (Degree::Bi(a, b), Degree::Bi(c, d)) => Some(Degree::Bi(a.checked_sub(c)?, b.checked_sub(d)?)),
            _ => None,
        }
    }

    pub fn scale(self, k: u32) -> Degree {
        match self {
            Degree::Total(a) => Degree::Total(a * k),
            Degree::Bi(a, b) => Degree::Bi(a * k, b * k),
        }
    }

    /// Total degree for single gradings; panics on bidegrees.
    pub fn total(self) -> u32 {
        match self {
            Degree::Total(d) => d,
            Degree::Bi(..) => panic!("total() on a bidegree"),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Total(d) => write!(f, "{d}"),
            Degree::Bi(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Number of monomials in the graded piece.
pub fn monomial_count(ring: Ring, deg: Degree) -> usize {
    match (ring, deg) {
        (Ring::Binary, Degree::Total(d)) => d as usize + 1,
        (Ring::Ternary, Degree::Total(d)) => {
            let d = d as usize;
            (d + 1) * (d + 2) / 2
        }
        (Ring::Bihomogeneous, Degree::Bi(m, n)) => (m as usize + 1) * (n as usize + 1),
        _ => panic!("degree {deg} does not grade the {ring} ring"),
    }
}

/// Canonical ordered monomial basis of the graded piece.
pub fn monomials(ring: Ring, deg: Degree) -> Vec<Exps> {
    match (ring, deg) {
        (Ring::Binary, Degree::Total(d)) => (0..=d).rev().map(|a| [a, d - a, 0, 0]).collect(),
        (Ring::Ternary, Degree::Total(d)) => {
            let mut out = Vec::with_capacity(monomial_count(ring, deg));
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    out.push([a, b, d - a - b, 0]);
                }
            }
            out
        }
        (Ring::Bihomogeneous, Degree::Bi(m, n)) => {
            let mut out = Vec::with_capacity(monomial_count(ring, deg));
            for i in (0..=m).rev() {
                for j in (0..=n).rev() {
                    out.push([i, m - i, j, n - j]);
                }
            }
            out
        }
        _ => panic!("degree {deg} does not grade the {ring} ring"),
    }
}

/// Position of a monomial in the canonical basis of its own graded piece.
pub fn monomial_index(ring: Ring, e: &Exps) -> usize {
    match ring {
        Ring::Binary => e[1] as usize,
        Ring::Ternary => {
            let d = (e[0] + e[1] + e[2]) as usize;
            let k = d - e[0] as usize;
            k * (k + 1) / 2 + (k - e[1] as usize)
        }
        Ring::Bihomogeneous => {
            let n = (e[2] + e[3]) as usize;
            e[1] as usize * (n + 1) + e[3] as usize
        }
    }
}

pub(crate) fn add_exps(a: &Exps, b: &Exps) -> Exps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Renders a monomial such as `s^2*t`; the empty monomial renders as `1`.
pub(crate) fn render_monomial(names: &[&str], e: &Exps) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(e.iter())
        .filter(|(_, &k)| k > 0)
        .map(|(n, &k)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Renders `sum c_i m_i` in the given order using the polynomial text grammar.
pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Scalar::zero();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono == "1" {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// A homogeneous (or bihomogeneous) polynomial with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    ring: Ring,
    deg: Degree,
    coeffs: Vec<Scalar>,
}

impl Form {
    pub fn zero(ring: Ring, deg: Degree) -> Form {
        Form {
            ring,
            deg,
            coeffs: vec![Scalar::zero(); monomial_count(ring, deg)],
        }
    }

    pub fn from_coeffs(ring: Ring, deg: Degree, coeffs: Vec<Scalar>) -> Result<Form> {
        ring.check_degree(deg)?;
        let expected = monomial_count(ring, deg);
        if coeffs.len() != expected {
            return Err(Error::DegreeMismatch {
                expected: format!("{expected} coefficients for degree {deg}"),
                found: format!("{} coefficients", coeffs.len()),
            });
        }
        Ok(Form { ring, deg, coeffs })
    }

    /// The monomial `c * x^e`.
    pub fn monomial(ring: Ring, e: Exps, c: Scalar) -> Form {
        let deg = ring.degree_of(&e);
        let mut f = Form::zero(ring, deg);
        f.coeffs[monomial_index(ring, &e)] = c;
        f
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> Degree {
        self.deg
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, e: &Exps) -> Scalar {
        if self.ring.degree_of(e) != self.deg {
            return Scalar::zero();
        }
        self.coeffs[monomial_index(self.ring, e)].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Exps, &Scalar)> + '_ {
        monomials(self.ring, self.deg)
            .into_iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    fn same_piece(&self, other: &Form, what: &str) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{what}: {} vs {}", self.ring, other.ring)));
        }
        if self.deg != other.deg {
            return Err(Error::DegreeMismatch {
                expected: self.deg.to_string(),
                found: other.deg.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Form) -> Result<Form> {
        self.same_piece(other, "add")?;
        Ok(Form {
            ring: self.ring,
            deg: self.deg,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Form) -> Result<Form> {
        self.same_piece(other, "sub")?;
        Ok(Form {
            ring: self.ring,
            deg: self.deg,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Form) -> Result<Form> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("mul: {} vs {}", self.ring, other.ring)));
        }
        let deg = self.deg.checked_add(other.deg).expect("same ring implies same grading");
        let mut out = Form::zero(self.ring, deg);
        let rhs: Vec<(Exps, &Scalar)> = other.terms().collect();
        for (ea, ca) in self.terms() {
            for (eb, cb) in &rhs {
                let idx = monomial_index(self.ring, &add_exps(&ea, eb));
                out.coeffs[idx] += ca * *cb;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        Form {
            ring: self.ring,
            deg: self.deg,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exps) -> Form {
        let deg = self
            .deg
            .checked_add(self.ring.degree_of(e))
            .expect("monomial grading matches ring");
        let mut out = Form::zero(self.ring, deg);
        for (ea, c) in self.terms() {
            out.coeffs[monomial_index(self.ring, &add_exps(&ea, e))] = c.clone();
        }
        out
    }

    pub fn pow(&self, k: u32) -> Form {
        let mut acc = Form::monomial(self.ring, [0; 4], Scalar::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point given in the ring's variable order.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.num_vars(), "point dimension mismatch");
        self.terms().fold(Scalar::zero(), |acc, (e, c)| {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    v *= x;
                }
            }
            acc + v
        })
    }

    /// Canonical text rendering, parseable by [`parse_form`].
    pub fn render(&self) -> String {
        let names = self.ring.var_names();
        render_terms(self.terms().map(|(e, c)| (c, render_monomial(names, &e))))
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{} {}]({})", self.ring, self.deg, self.render())
    }
}

impl std::ops::Mul for &Form {
    type Output = Form;
    fn mul(self, rhs: &Form) -> Form {
        self.checked_mul(rhs).expect("form ring mismatch")
    }
}

impl std::ops::Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.checked_add(rhs).expect("form piece mismatch")
    }
}

impl std::ops::Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self.checked_sub(rhs).expect("form piece mismatch")
    }
}

impl std::ops::Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            ring: self.ring,
            deg: self.deg,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}
