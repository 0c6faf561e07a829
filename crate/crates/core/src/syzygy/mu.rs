use super::{shared_shape, syzygies, SyzygyVector};
use crate::error::{Error, Result};
use crate::forms::{gcd_binary_all, monomials, Degree, Form, Ring};
use crate::linalg::Span;

/// A free basis `(p, q)` of the syzygy module of a coprime binary triple,
/// with `deg p = mu <= deg q = n - mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuBasis {
    pub p: SyzygyVector,
    pub q: SyzygyVector,
    pub mu: u32,
}

impl MuBasis {
    /// Degree `n` of the parametrization.
    pub fn n(&self) -> u32 {
        self.p.degree().total() + self.q.degree().total()
    }

    /// `{m * p : deg m = d - mu} ∪ {m * q : deg m = d - n + mu}`, the
    /// monomial multiples of the basis landing in degree `d`.
    pub fn multiples(&self, d: u32) -> Vec<SyzygyVector> {
        let mut out = Vec::new();
        for g in [&self.p, &self.q] {
            if let Some(k) = d.checked_sub(g.degree().total()) {
                out.extend(
                    monomials(Ring::Binary, Degree::Total(k))
                        .iter()
                        .map(|m| g.mul_monomial(m)),
                );
            }
        }
        out
    }
}

/// Computes a μ-basis by degreewise kernel search.
///
/// `mu` is the first degree with a nonzero syzygy and `p` the first canonical
/// kernel vector there; `q` is the first canonical kernel vector in degree
/// `n - mu` outside the span of the monomial multiples of `p`.
pub fn mu_basis(a: &Form, b: &Form, c: &Form) -> Result<MuBasis> {
    let gens = [a.clone(), b.clone(), c.clone()];
    let (ring, deg) = shared_shape(&gens)?;
    if ring != Ring::Binary {
        return Err(Error::RingMismatch(format!("μ-bases need binary forms, got {ring}")));
    }
    let n = deg.total();
    if n == 0 {
        return Err(Error::DegreeUnderflow(
            "μ-bases need generators of positive degree".into(),
        ));
    }
    let g = gcd_binary_all(&gens)?;
    if !g.is_unit() {
        return Err(Error::NotCoprime(g.render()));
    }
    let (mu, p) = (0..=n)
        .find_map(|d| {
            syzygies(&gens, Degree::Total(d))
                .map(|s| s.into_iter().next().map(|p| (d, p)))
                .transpose()
        })
        .transpose()?
        .ok_or_else(|| Error::Internal("no syzygy up to the generator degree".into()))?;
    if 2 * mu > n {
        return Err(Error::Internal(format!("first syzygy degree {mu} exceeds n/2")));
    }
    let qdeg = n - mu;
    let mut span = Span::new(3 * (qdeg as usize + 1));
    for m in monomials(Ring::Binary, Degree::Total(qdeg - mu)) {
        span.insert(&p.mul_monomial(&m).to_vector());
    }
    let q = syzygies(&gens, Degree::Total(qdeg))?
        .into_iter()
        .find(|v| span.insert(&v.to_vector()))
        .ok_or_else(|| Error::Internal(format!("no second generator in degree {qdeg}")))?;
    let mb = MuBasis { p, q, mu };

    // Syz_{n-1} has dimension n and is spanned by the multiples of p and q.
    let top = syzygies(&gens, Degree::Total(n - 1))?;
    if top.len() != n as usize {
        return Err(Error::Internal(format!(
            "syzygies of degree {} have dimension {}, expected {n}",
            n - 1,
            top.len()
        )));
    }
    let mut span = Span::new(3 * n as usize);
    let rank = mb
        .multiples(n - 1)
        .iter()
        .filter(|v| span.insert(&v.to_vector()))
        .count();
    if rank != n as usize {
        return Err(Error::Internal(format!(
            "μ-basis multiples span {rank} of {n} dimensions"
        )));
    }
    Ok(mb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_form_infer;

    fn b(s: &str) -> Form {
        parse_form_infer(s, Ring::Binary).unwrap()
    }

    #[test]
    fn conic() {
        let mb = mu_basis(&b("s^2"), &b("s*t"), &b("t^2")).unwrap();
        assert_eq!(mb.mu, 1);
        assert_eq!(mb.p.components()[..2], [b("-t"), b("s")]);
        assert_eq!(mb.q.components()[1..], [b("-t"), b("s")]);
    }

    #[test]
    fn double_conic() {
        let mb = mu_basis(&b("s^4"), &b("s^2*t^2"), &b("t^4")).unwrap();
        assert_eq!(mb.mu, 2);
        assert_eq!(mb.p.components()[..2], [b("-t^2"), b("s^2")]);
        assert!(mb.p.components()[2].is_zero());
        assert!(mb.q.components()[0].is_zero());
        assert_eq!(mb.n(), 4);
    }

    #[test]
    fn line_has_mu_zero() {
        let z = Form::zero(Ring::Binary, Degree::Total(1));
        let mb = mu_basis(&b("s"), &b("t"), &z).unwrap();
        assert_eq!(mb.mu, 0);
        assert_eq!(mb.q.degree(), Degree::Total(1));
    }

    #[test]
    fn rejects_common_factor() {
        let e = mu_basis(&b("s^2 + s*t"), &b("s*t + t^2"), &b("s^2 - t^2")).unwrap_err();
        assert!(matches!(e, Error::NotCoprime(ref g) if g == "s + t"), "{e}");
    }
}
