//! Polynomials in the target coordinates `x,y,z` (plane) or `x,y,z,w` (space).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{render_monomial, render_terms, Exps, Form};
use crate::error::{Error, Result};
use crate::linalg::{ExactDomain, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// `P^2` with coordinates `x,y,z`.
    P2,
    /// `P^3` with coordinates `x,y,z,w`.
    P3,
}

impl Target {
    pub fn var_names(self) -> &'static [&'static str] {
        match self {
            Target::P2 => &["x", "y", "z"],
            Target::P3 => &["x", "y", "z", "w"],
        }
    }

    pub fn num_vars(self) -> usize {
        self.var_names().len()
    }

    /// Target monomials of degree `deg` in graded lexicographic order
    /// `x > y > z > w`. Degree 2 in `P^3` gives `x^2, xy, xz, xw, y^2, ..., w^2`.
    pub fn monomials(self, deg: u32) -> Vec<Exps> {
        let n = self.num_vars();
        let mut out = Vec::new();
        let mut cur = [0u32; 4];
        fn rec(slot: usize, left: u32, n: usize, cur: &mut Exps, out: &mut Vec<Exps>) {
            if slot == n - 1 {
                cur[slot] = left;
                out.push(*cur);
                cur[slot] = 0;
                return;
            }
            for k in (0..=left).rev() {
                cur[slot] = k;
                rec(slot + 1, left - k, n, cur, out);
            }
            cur[slot] = 0;
        }
        rec(0, deg, n, &mut cur, &mut out);
        out
    }
}

/// Monomial key ordered so that ascending iteration is canonical order:
/// higher total degree first, then lexicographically larger exponents first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Key(Exps);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u32 = self.0.iter().sum();
        let db: u32 = other.0.iter().sum();
        db.cmp(&da).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in target coordinates with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TargetPoly {
    target: Target,
    terms: BTreeMap<Key, Scalar>,
}

impl TargetPoly {
    pub fn zero(target: Target) -> Self {
        TargetPoly {
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(target: Target, c: Scalar) -> Self {
        let mut p = TargetPoly::zero(target);
        p.add_term([0; 4], c);
        p
    }

    /// The `i`-th coordinate (`0 = x`, `1 = y`, ...).
    pub fn var(target: Target, i: usize) -> Self {
        assert!(i < target.num_vars(), "coordinate index out of range");
        let mut e = [0; 4];
        e[i] = 1;
        TargetPoly::monomial(target, e, Scalar::one())
    }

    pub fn monomial(target: Target, e: Exps, c: Scalar) -> Self {
        let mut p = TargetPoly::zero(target);
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: Exps, c: Scalar) {
        debug_assert!(e[self.target.num_vars()..].iter().all(|&k| k == 0));
        if c.is_zero() {
            return;
        }
        let key = Key(e);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (graded lexicographic, `x > y > z > w`).
    pub fn terms(&self) -> impl Iterator<Item = (Exps, &Scalar)> + '_ {
        self.terms.iter().map(|(k, c)| (k.0, c))
    }

    pub fn coeff(&self, e: &Exps) -> Scalar {
        self.terms.get(&Key(*e)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(Exps, &Scalar)> {
        self.terms.iter().next().map(|(k, c)| (k.0, c))
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(e, _)| e.iter().sum())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|k| k.0.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TargetPoly::zero(self.target);
        }
        TargetPoly {
            target: self.target,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = TargetPoly::constant(self.target, Scalar::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.target.num_vars(), "point dimension mismatch");
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

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &TargetPoly) -> Option<TargetPoly> {
        let (de, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quo = TargetPoly::zero(self.target);
        while let Some((re, rc)) = rem.leading() {
            let mut qe = [0u32; 4];
            for i in 0..4 {
                qe[i] = re[i].checked_sub(de[i])?;
            }
            let qc = rc / dc;
            let step = TargetPoly::monomial(self.target, qe, qc.clone());
            rem = &rem - &(&step * divisor);
            quo.add_term(qe, qc);
        }
        Some(quo)
    }

    /// If `self` equals `g^d` for some polynomial `g` with leading coefficient
    /// 1, returns `g`. Requires `self` homogeneous with leading coefficient 1.
    ///
    /// Terms of `g` are recovered one at a time: with `g_k` the partial root,
    /// the leading term of `self - g_k^d` is `d * lt(g)^(d-1) * t` where `t`
    /// is the next term of `g`.
    pub(crate) fn monic_root(&self, d: u32) -> Option<TargetPoly> {
        let (le, lc) = self.leading()?;
        if !lc.is_one() || !self.is_homogeneous() || d == 0 {
            return None;
        }
        if le.iter().any(|k| k % d != 0) {
            return None;
        }
        let lead = le.map(|k| k / d);
        let root_deg: u32 = lead.iter().sum();
        let budget = self.target.monomials(root_deg).len();
        let lead_pow = TargetPoly::monomial(self.target, lead, Scalar::one()).pow(d - 1);
        let (lpe, _) = lead_pow.leading().expect("nonzero monomial");
        let dd = Scalar::from_integer(BigInt::from(d));
        let mut root = TargetPoly::monomial(self.target, lead, Scalar::one());
        let mut last = Key(lead);
        for _ in 0..=budget {
            let rem = self - &root.pow(d);
            let Some((re, rc)) = rem.leading() else {
                return Some(root);
            };
            let mut te = [0u32; 4];
            for i in 0..4 {
                te[i] = re[i].checked_sub(lpe[i])?;
            }
            let key = Key(te);
            if key <= last {
                return None;
            }
            last = key;
            root.add_term(te, rc / &dd);
        }
        None
    }

    pub fn render(&self) -> String {
        let names = self.target.var_names();
        render_terms(self.terms().map(|(e, c)| (c, render_monomial(names, &e))))
    }
}

impl fmt::Display for TargetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for TargetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TargetPoly({})", self.render())
    }
}

impl std::ops::Add for &TargetPoly {
    type Output = TargetPoly;
    fn add(self, rhs: &TargetPoly) -> TargetPoly {
        assert_eq!(self.target, rhs.target, "target mismatch");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &TargetPoly {
    type Output = TargetPoly;
    fn sub(self, rhs: &TargetPoly) -> TargetPoly {
        assert_eq!(self.target, rhs.target, "target mismatch");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl std::ops::Mul for &TargetPoly {
    type Output = TargetPoly;
    fn mul(self, rhs: &TargetPoly) -> TargetPoly {
        assert_eq!(self.target, rhs.target, "target mismatch");
        let mut acc: BTreeMap<Key, Scalar> = BTreeMap::new();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                let e = super::add_exps(&ea, &eb);
                let slot = acc.entry(Key(e)).or_insert_with(Scalar::zero);
                *slot += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TargetPoly {
            target: self.target,
            terms: acc,
        }
    }
}

impl std::ops::Neg for &TargetPoly {
    type Output = TargetPoly;
    fn neg(self) -> TargetPoly {
        TargetPoly {
            target: self.target,
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl ExactDomain for TargetPoly {
    fn zero_like(&self) -> Self {
        TargetPoly::zero(self.target)
    }
    fn one_like(&self) -> Self {
        TargetPoly::constant(self.target, Scalar::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, other: &Self) -> Self {
        self.div_exact(other)
            .expect("Bareiss division is exact over an integral domain")
    }
}

/// Clears denominators, removes the integer content and fixes the sign so the
/// first coefficient in canonical order is positive. Returns `(G, lambda)`
/// with `f = lambda * G`.
pub fn normalize(f: &TargetPoly) -> Result<(TargetPoly, Scalar)> {
    let Some((_, lead)) = f.leading() else {
        return Err(Error::ZeroInput("cannot normalize the zero polynomial".into()));
    };
    let lead = lead.clone();
    let den_lcm = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let content = f
        .terms()
        .map(|(_, c)| (c * Scalar::from_integer(den_lcm.clone())).to_integer())
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    let mut factor = Scalar::new(den_lcm, content);
    if lead.is_negative() {
        factor = -factor;
    }
    let g = f.scale(&factor);
    Ok((g, factor.recip()))
}

/// Expands `F(g_0, ..., g_k)` in the parameter ring.
pub fn substitute(f: &TargetPoly, gens: &[Form]) -> Result<Form> {
    let nv = f.target().num_vars();
    if gens.len() != nv {
        return Err(Error::Arity {
            expected: nv,
            found: gens.len(),
        });
    }
    let ring = gens[0].ring();
    let gdeg = gens[0].degree();
    for g in &gens[1..] {
        if g.ring() != ring {
            return Err(Error::RingMismatch(
                "substitute: generators from different rings".into(),
            ));
        }
        if g.degree() != gdeg {
            return Err(Error::DegreeMismatch {
                expected: gdeg.to_string(),
                found: g.degree().to_string(),
            });
        }
    }
    if !f.is_homogeneous() {
        return Err(Error::Inconsistent(format!("substitute: `{f}` is not homogeneous")));
    }
    let fdeg = f.degree().unwrap_or(0);
    let mut powers: Vec<Vec<Form>> = gens.iter().map(|g| vec![g.pow(0)]).collect();
    for (i, g) in gens.iter().enumerate() {
        let maxk = f.terms().map(|(e, _)| e[i]).max().unwrap_or(0);
        for _ in 0..maxk {
            let next = powers[i].last().expect("nonempty") * g;
            powers[i].push(next);
        }
    }
    let mut acc = Form::zero(ring, gdeg.scale(fdeg));
    for (e, c) in f.terms() {
        let mut term = powers[0][e[0] as usize].scale(c);
        for i in 1..nv {
            term = &term * &powers[i][e[i] as usize];
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{parse_form_infer, parse_target, Ring};
    use crate::linalg::{ratio, scalar};

    fn t2(s: &str) -> TargetPoly {
        parse_target(s, Target::P2).unwrap()
    }

    fn t3(s: &str) -> TargetPoly {
        parse_target(s, Target::P3).unwrap()
    }

    #[test]
    fn target_monomial_order() {
        let q = Target::P3.monomials(2);
        let names: Vec<String> = q.iter().map(|e| render_monomial(Target::P3.var_names(), e)).collect();
        assert_eq!(
            names,
            vec!["x^2", "x*y", "x*z", "x*w", "y^2", "y*z", "y*w", "z^2", "z*w", "w^2"]
        );
        assert_eq!(Target::P2.monomials(1).len(), 3);
        assert_eq!(Target::P3.monomials(3).len(), 20);
    }

    #[test]
    fn normalize_examples() {
        let (g, l) = normalize(&t2("-2*x*z + 2*y^2")).unwrap();
        assert_eq!(g, t2("x*z - y^2"));
        assert_eq!(l, scalar(-2));
        let (g, l) = normalize(&t2("1/3*x")).unwrap();
        assert_eq!(g, t2("x"));
        assert_eq!(l, ratio(1, 3));
        let (g, l) = normalize(&t2("6*x^2 - 4*x*y")).unwrap();
        assert_eq!(g, t2("3*x^2 - 2*x*y"));
        assert_eq!(l, scalar(2));
        assert!(normalize(&TargetPoly::zero(Target::P2)).is_err());
    }

    #[test]
    fn substitute_examples() {
        let conic = [
            parse_form_infer("s^2", Ring::Binary).unwrap(),
            parse_form_infer("s*t", Ring::Binary).unwrap(),
            parse_form_infer("t^2", Ring::Binary).unwrap(),
        ];
        assert!(substitute(&t2("x*z - y^2"), &conic).unwrap().is_zero());
        assert_eq!(substitute(&t2("x"), &conic).unwrap(), conic[0]);
        let segre: Vec<Form> = ["s*t", "s*v", "u*t", "u*v"]
            .iter()
            .map(|s| parse_form_infer(s, Ring::Bihomogeneous).unwrap())
            .collect();
        assert!(substitute(&t3("x*w - y*z"), &segre).unwrap().is_zero());
        assert!(matches!(
            substitute(&t3("x"), &conic),
            Err(Error::Arity { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn exact_division_and_roots() {
        let f = t2("x*z - y^2");
        let sq = &f * &f;
        assert_eq!(sq.div_exact(&f).unwrap(), f);
        assert!(sq.div_exact(&t2("x + y")).is_none());
        assert_eq!(sq.monic_root(2).unwrap(), f);
        assert!(sq.monic_root(4).is_none());
        let cube = f.pow(3);
        assert_eq!(cube.monic_root(3).unwrap(), f);
        assert!(cube.monic_root(2).is_none());
        let prod = &f * &t2("x*y + z^2");
        assert!(prod.monic_root(2).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(deg: u32) -> impl Strategy<Value = TargetPoly> {
            let ms = Target::P2.monomials(deg);
            proptest::collection::vec(-3i64..=3, ms.len()).prop_map(move |cs| {
                let mut p = TargetPoly::zero(Target::P2);
                for (e, c) in ms.iter().zip(cs) {
                    p.add_term(*e, scalar(c));
                }
                p
            })
        }

        fn binary_form(deg: u32) -> impl Strategy<Value = Form> {
            proptest::collection::vec(-3i64..=3, deg as usize + 1).prop_map(move |cs| {
                Form::from_coeffs(
                    Ring::Binary,
                    crate::forms::Degree::Total(deg),
                    cs.into_iter().map(scalar).collect(),
                )
                .unwrap()
            })
        }

        proptest! {
            #[test]
            fn substitute_is_a_ring_homomorphism(
                f in poly(2), g in poly(1),
                a in binary_form(2), b in binary_form(2), c in binary_form(2),
            ) {
                let gens = [a, b, c];
                let lhs = substitute(&(&f * &g), &gens).unwrap();
                let rhs = &substitute(&f, &gens).unwrap() * &substitute(&g, &gens).unwrap();
                // the zero polynomial has no degree, so only compare values there
                if f.is_zero() || g.is_zero() {
                    prop_assert!(lhs.is_zero() && rhs.is_zero());
                } else {
                    prop_assert_eq!(lhs, rhs);
                }
            }

            #[test]
            fn normalize_is_scale_invariant(f in poly(2), num in -7i64..=7, den in 1i64..=5) {
                prop_assume!(!f.is_zero() && num != 0);
                let (g, lambda) = normalize(&f).unwrap();
                prop_assert_eq!(&g.scale(&lambda), &f);
                let (g2, _) = normalize(&g).unwrap();
                prop_assert_eq!(&g2, &g);
                let (g3, _) = normalize(&f.scale(&ratio(num, den))).unwrap();
                prop_assert_eq!(&g3, &g);
            }

            #[test]
            fn division_inverts_multiplication(f in poly(2), g in poly(1)) {
                prop_assume!(!g.is_zero());
                let p = &f * &g;
                prop_assert_eq!(p.div_exact(&g).unwrap(), f);
            }
        }
    }
}
