use std::fmt;

use super::{monomials, Degree, Exps, Form, Ring, Target, TargetPoly};
use crate::error::{Error, Result};

/// A moving line, plane or quadric: `sum_k C_k(params) * m_k(x,y,z[,w])`,
/// where `m_k` runs over the target monomials of degree 1 or 2 in canonical
/// order and every coefficient `C_k` is a form of one shared (bi)degree.
#[derive(Clone, PartialEq, Eq)]
pub struct MovingForm {
    target: Target,
    target_degree: u32,
    coeffs: Vec<Form>,
}

impl MovingForm {
    pub fn new(target: Target, target_degree: u32, coeffs: Vec<Form>) -> Result<Self> {
        if !(1..=2).contains(&target_degree) {
            return Err(Error::Inconsistent(format!(
                "moving forms have target degree 1 or 2, got {target_degree}"
            )));
        }
        let expected = target.monomials(target_degree).len();
        if coeffs.len() != expected {
            return Err(Error::Arity {
                expected,
                found: coeffs.len(),
            });
        }
        let (ring, deg) = (coeffs[0].ring(), coeffs[0].degree());
        if coeffs.iter().any(|c| c.ring() != ring || c.degree() != deg) {
            return Err(Error::Inconsistent(
                "moving form coefficients must share ring and degree".into(),
            ));
        }
        Ok(MovingForm {
            target,
            target_degree,
            coeffs,
        })
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn target_degree(&self) -> u32 {
        self.target_degree
    }

    pub fn param_ring(&self) -> Ring {
        self.coeffs[0].ring()
    }

    pub fn param_degree(&self) -> Degree {
        self.coeffs[0].degree()
    }

    pub fn coeffs(&self) -> &[Form] {
        &self.coeffs
    }

    /// Multiplies a moving plane by the target coordinate `i`, giving a moving
    /// quadric.
    pub fn times_coordinate(&self, i: usize) -> MovingForm {
        assert_eq!(self.target_degree, 1, "only moving planes can be lifted");
        let quad = self.target.monomials(2);
        let zero = Form::zero(self.param_ring(), self.param_degree());
        let mut out = vec![zero; quad.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut e = [0u32; 4];
            e[k] += 1;
            e[i] += 1;
            let slot = quad.iter().position(|q| *q == e).expect("degree-2 monomial");
            out[slot] = c.clone();
        }
        MovingForm {
            target: self.target,
            target_degree: 2,
            coeffs: out,
        }
    }

    /// The target polynomial multiplying the parameter monomial `param`.
    pub fn coefficient_of(&self, param: &Exps) -> TargetPoly {
        let mut p = TargetPoly::zero(self.target);
        for (m, c) in self.target.monomials(self.target_degree).iter().zip(&self.coeffs) {
            p.add_term(*m, c.coeff(param));
        }
        p
    }

    /// Expands along the given parameter monomials (one matrix row).
    pub fn expand(&self, columns: &[Exps]) -> Vec<TargetPoly> {
        columns.iter().map(|e| self.coefficient_of(e)).collect()
    }

    /// Expands along the canonical monomial basis of the parameter degree.
    pub fn expand_canonical(&self) -> Vec<TargetPoly> {
        self.expand(&monomials(self.param_ring(), self.param_degree()))
    }
}

impl fmt::Debug for MovingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.target.var_names();
        let parts: Vec<String> = self
            .target
            .monomials(self.target_degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| format!("({})*{}", c, super::render_monomial(names, m)))
            .collect();
        write!(f, "MovingForm[{}]", parts.join(" + "))
    }
}
