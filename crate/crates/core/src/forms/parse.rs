//! Text grammar for polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ['/' integer] | var ['^' integer]
//! ```
//!
//! Whitespace is insignificant. Variables are drawn from the ring (or target).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{monomial_count, monomial_index, render_monomial, Degree, Exps, Form, Ring, Target, TargetPoly};
use crate::error::{Error, Result};
use crate::linalg::Scalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as BigInt"))
    }

    fn small_integer(&mut self) -> Result<u32> {
        let at = self.pos;
        let v = self.integer()?;
        u32::try_from(v).or_else(|_| {
            self.pos = at;
            self.err("exponent out of range")
        })
    }

    fn factor(&mut self, coef: &mut Scalar, exps: &mut Exps) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Scalar::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= Scalar::from_integer(den);
                }
                *coef *= value;
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                let Some(slot) = self.names.iter().position(|n| *n == name) else {
                    self.pos = start;
                    return self.err(format!(
                        "unknown variable `{name}` (expected one of {})",
                        self.names.join(",")
                    ));
                };
                let mut k = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    k = self.small_integer()?;
                }
                exps[slot] += k;
                Ok(())
            }
            Some(_) => self.err("expected a coefficient or a variable"),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<(Scalar, Exps)> {
        let mut coef = Scalar::one();
        let mut exps = [0u32; 4];
        self.factor(&mut coef, &mut exps)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coef, &mut exps)?;
        }
        Ok((coef, exps))
    }

    fn poly(&mut self) -> Result<Vec<(Scalar, Exps)>> {
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let (c, e) = self.term()?;
            terms.push((if negate { -c } else { c }, e));
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(ch) => return self.err(format!("unexpected character `{}`", ch as char)),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

fn parse_terms(text: &str, names: &[&str]) -> Result<Vec<(Scalar, Exps)>> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        names,
    }
    .poly()
}

/// Degree shared by every term, `None` when all coefficients vanish.
fn common_degree(ring: Ring, terms: &[(Scalar, Exps)]) -> Result<Option<Degree>> {
    let mut deg: Option<Degree> = None;
    for (c, e) in terms {
        if c.is_zero() {
            continue;
        }
        let d = ring.degree_of(e);
        match deg {
            None => deg = Some(d),
            Some(expected) if expected != d => {
                return Err(Error::NotHomogeneous {
                    term: render_monomial(ring.var_names(), e),
                    found: d.to_string(),
                    expected: expected.to_string(),
                })
            }
            _ => {}
        }
    }
    Ok(deg)
}

fn assemble(ring: Ring, deg: Degree, terms: &[(Scalar, Exps)]) -> Form {
    let mut coeffs = vec![Scalar::zero(); monomial_count(ring, deg)];
    for (c, e) in terms {
        if !c.is_zero() {
            coeffs[monomial_index(ring, e)] += c;
        }
    }
    Form::from_coeffs(ring, deg, coeffs).expect("coefficient count matches degree")
}

/// Parses a form of a prescribed (bi)degree.
pub fn parse_form(text: &str, ring: Ring, deg: Degree) -> Result<Form> {
    ring.check_degree(deg)?;
    let terms = parse_terms(text, ring.var_names())?;
    match common_degree(ring, &terms)? {
        Some(found) if found != deg => Err(Error::DegreeMismatch {
            expected: deg.to_string(),
            found: found.to_string(),
        }),
        _ => Ok(assemble(ring, deg, &terms)),
    }
}

/// Parses a form and infers its (bi)degree from its terms.
///
/// The zero polynomial has no degree, so it is rejected here; use
/// [`parse_form`] when the degree is known.
pub fn parse_form_infer(text: &str, ring: Ring) -> Result<Form> {
    let terms = parse_terms(text, ring.var_names())?;
    match common_degree(ring, &terms)? {
        Some(deg) => Ok(assemble(ring, deg, &terms)),
        None => Err(Error::ZeroInput(format!(
            "cannot infer the degree of `{}`",
            text.trim()
        ))),
    }
}

/// Parses a polynomial in the target coordinates `x,y,z[,w]`.
pub fn parse_target(text: &str, target: Target) -> Result<TargetPoly> {
    let terms = parse_terms(text, target.var_names())?;
    let mut p = TargetPoly::zero(target);
    for (c, e) in terms {
        p.add_term(e, c);
    }
    Ok(p)
}
