use num_traits::{One, Zero};

use super::{Degree, Form, Ring};
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// Dense univariate polynomial, ascending powers, no trailing zeros.
type Uni = Vec<Scalar>;

fn trim(mut p: Uni) -> Uni {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rem(mut a: Uni, b: &Uni) -> Uni {
    let lb = b.last().expect("nonzero divisor");
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let q = a.last().expect("nonempty") / lb;
        for (i, bc) in b.iter().enumerate() {
            let delta = &q * bc;
            a[shift + i] -= delta;
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn monic(p: Uni) -> Uni {
    let l = p.last().expect("nonzero").clone();
    p.into_iter().map(|c| c / &l).collect()
}

fn uni_gcd(mut a: Uni, mut b: Uni) -> Uni {
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// Splits a nonzero binary form `f = t^k * g` with `t` not dividing `g`, and
/// returns `k` with `g(s, 1)` as an ascending univariate polynomial in `s`.
fn split_t_power(f: &Form) -> (u32, Uni) {
    let d = f.degree().total();
    // coeffs()[i] is the coefficient of s^(d-i) t^i.
    let k = (0..=d)
        .find(|&i| !f.coeffs()[i as usize].is_zero())
        .expect("nonzero form");
    // f = sum_i c_i s^(d-i) t^i; divide by t^k: g(s,1) = sum_{i>=k} c_i s^(d-i).
    let mut uni = vec![Scalar::zero(); (d - k + 1) as usize];
    for i in k..=d {
        uni[(d - i) as usize] = f.coeffs()[i as usize].clone();
    }
    (k, trim(uni))
}

/// Greatest common divisor of two binary forms.
///
/// The result is normalized so its first coefficient in canonical order
/// (highest power of `s`) is 1. Powers of the homogenizing variable `t` are
/// split off before running Euclid on the dehomogenizations `f(s, 1)`.
/// A zero argument is the identity for gcd; both zero is an error.
pub fn gcd_binary(f: &Form, g: &Form) -> Result<Form> {
    for h in [f, g] {
        if h.ring() != Ring::Binary {
            return Err(Error::RingMismatch(format!(
                "gcd_binary needs binary forms, got {}",
                h.ring()
            )));
        }
    }
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::ZeroInput("gcd of two zero forms".into())),
        (true, false) => return Ok(make_monic(g)),
        (false, true) => return Ok(make_monic(f)),
        _ => {}
    }
    let (kf, uf) = split_t_power(f);
    let (kg, ug) = split_t_power(g);
    let common = uni_gcd(uf, ug);
    let e = (common.len() - 1) as u32;
    let k = kf.min(kg);
    let deg = e + k;
    // s^j t^(deg-j) sits at index deg - j; s^j comes from common[j] t^k.
    let mut coeffs = vec![Scalar::zero(); deg as usize + 1];
    for (j, c) in common.into_iter().enumerate() {
        coeffs[deg as usize - j] = c;
    }
    Form::from_coeffs(Ring::Binary, Degree::Total(deg), coeffs)
}

fn make_monic(f: &Form) -> Form {
    let lead = f.coeffs().iter().find(|c| !c.is_zero()).expect("nonzero form").clone();
    f.scale(&lead.recip())
}

/// Folds [`gcd_binary`] over a list of forms.
pub fn gcd_binary_all(forms: &[Form]) -> Result<Form> {
    let mut iter = forms.iter().filter(|f| !f.is_zero());
    let Some(first) = iter.next() else {
        return Err(Error::ZeroInput("gcd of zero forms".into()));
    };
    if first.ring() != Ring::Binary {
        return Err(Error::RingMismatch("gcd_binary_all needs binary forms".into()));
    }
    let mut acc = make_monic(first);
    for f in iter {
        acc = gcd_binary(&acc, f)?;
        if acc.degree() == Degree::Total(0) {
            break;
        }
    }
    Ok(acc)
}

impl Form {
    /// True when this form is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.degree() == self.ring().zero_degree() && !self.is_zero()
    }

    pub(crate) fn one(ring: Ring) -> Form {
        Form::monomial(ring, [0; 4], Scalar::one())
    }
}
