use super::{finish, moving_det, Diagnostics, ImplicitResult, MovingMatrix, RowKind};
use crate::error::{Error, Result};
use crate::forms::{monomials, Degree, Form, MovingForm, Ring, Target};
use crate::linalg::Span;
use crate::syzygy::{probably_coprime, shared_shape, syzygies, SyzygyVector};

/// Which surface construction to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// `P^1 x P^1 -> P^3`, bidegree `(m, n)`, no basepoints.
    TensorProduct,
    /// `P^2 -> P^3`, degree `n`, no basepoints.
    Triangular,
    /// `P^1 x P^1 -> P^3` with exactly one simple basepoint.
    TensorProductOneBasepoint,
}

/// An assembled matrix with the dimensions observed on the way.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub matrix: MovingMatrix,
    pub diagnostics: Diagnostics,
}

const COPRIME_TRIALS: usize = 8;

/// `a^2, ab, ..., d^2` in the order of the degree-2 target monomials.
pub fn quadratic_products(gens: &[Form]) -> Result<Vec<Form>> {
    let target = match gens.len() {
        3 => Target::P2,
        4 => Target::P3,
        k => return Err(Error::Arity { expected: 4, found: k }),
    };
    target
        .monomials(2)
        .iter()
        .map(|e| {
            let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            gens[idx[0]].checked_mul(&gens[idx[1]])
        })
        .collect()
}

struct Quadruple {
    gens: Vec<Form>,
    ring: Ring,
    deg: Degree,
    source: Degree,
}

fn quadruple(gens: &[Form], ring: Ring) -> Result<Quadruple> {
    if gens.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            found: gens.len(),
        });
    }
    let (r, deg) = shared_shape(gens)?;
    if r != ring {
        return Err(Error::RingMismatch(format!(
            "this construction needs {ring} forms, got {r}"
        )));
    }
    if let Some(g) = gens.iter().find(|g| g.is_zero()) {
        return Err(Error::ZeroInput(format!("zero generator of degree {}", g.degree())));
    }
    let source = deg
        .checked_sub(unit(ring))
        .ok_or_else(|| Error::DegreeUnderflow(format!("degree {deg} leaves no room for moving forms")))?;
    Ok(Quadruple {
        gens: gens.to_vec(),
        ring,
        deg,
        source,
    })
}

fn unit(ring: Ring) -> Degree {
    match ring {
        Ring::Bihomogeneous => Degree::Bi(1, 1),
        _ => Degree::Total(1),
    }
}

fn coprime_note(q: &Quadruple, seed: u64, diag: &mut Diagnostics) -> Result<()> {
    let ok = probably_coprime(&q.gens, seed, COPRIME_TRIALS)?;
    diag.coprime = Some(ok);
    if !ok {
        diag.notes.push(format!(
            "warning: generators may share a common factor ({COPRIME_TRIALS} restriction trials)"
        ));
    }
    Ok(())
}

fn expect_dim(stage: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::RankDefect { stage, expected, found })
    }
}

fn rows_of(forms: &[MovingForm], columns: &[[u32; 4]]) -> Vec<Vec<crate::forms::TargetPoly>> {
    forms.iter().map(|f| f.expand(columns)).collect()
}

/// Greedily extends the span of `known` by quadrics from `candidates`,
/// scanning in canonical kernel order, until `want` have been added.
fn complement(known: &[MovingForm], candidates: &[SyzygyVector], want: usize) -> Result<Vec<MovingForm>> {
    let vec_of = |f: &MovingForm| crate::syzygy::flatten(f.coeffs());
    let dim = candidates.first().map_or(0, |c| c.to_vector().len());
    let mut span = Span::new(dim);
    let rank = known.iter().filter(|k| span.insert(&vec_of(k))).count();
    expect_dim("lifted moving planes", known.len(), rank)?;
    let mut out = Vec::with_capacity(want);
    for c in candidates {
        if out.len() == want {
            break;
        }
        if span.insert(&c.to_vector()) {
            out.push(c.to_moving_form()?);
        }
    }
    expect_dim("complement of the lifted planes", want, out.len())?;
    Ok(out)
}

fn planes(q: &Quadruple) -> Result<Vec<SyzygyVector>> {
    syzygies(&q.gens, q.source)
}

fn quadrics(q: &Quadruple) -> Result<Vec<SyzygyVector>> {
    syzygies(&quadratic_products(&q.gens)?, q.source)
}

fn lifts(planes: &[MovingForm]) -> Vec<MovingForm> {
    planes
        .iter()
        .flat_map(|p| (0..4).map(move |i| p.times_coordinate(i)))
        .collect()
}

/// The `mn x mn` matrix of moving quadrics for a basepoint-free
/// tensor-product surface of bidegree `(m, n)`.
pub fn assemble_m_tp(gens: &[Form], seed: u64) -> Result<Assembly> {
    let q = quadruple(gens, Ring::Bihomogeneous)?;
    let Degree::Bi(m, n) = q.deg else { unreachable!() };
    let mut diag = Diagnostics::default();
    coprime_note(&q, seed, &mut diag)?;
    let mn = (m * n) as usize;
    let p = planes(&q)?;
    diag.mp_kernel_dim = Some(p.len());
    expect_dim("MP kernel", 0, p.len())?;
    let quads = quadrics(&q)?;
    diag.mq_kernel_dim = Some(quads.len());
    expect_dim("MQ kernel", mn, quads.len())?;
    let forms = quads
        .iter()
        .map(SyzygyVector::to_moving_form)
        .collect::<Result<Vec<_>>>()?;
    let cols = monomials(q.ring, q.source);
    let matrix = MovingMatrix::new(Target::P3, rows_of(&forms, &cols), vec![RowKind::Quadric; mn])?;
    Ok(Assembly {
        matrix,
        diagnostics: diag,
    })
}

/// The `(n^2+n)/2` square matrix with `n` moving planes and `(n^2-n)/2`
/// moving quadrics for a basepoint-free triangular surface of degree `n`.
pub fn assemble_m_tri(gens: &[Form], seed: u64) -> Result<Assembly> {
    let q = quadruple(gens, Ring::Ternary)?;
    let n = q.deg.total() as usize;
    let mut diag = Diagnostics::default();
    coprime_note(&q, seed, &mut diag)?;
    let p = planes(&q)?;
    diag.mp_kernel_dim = Some(p.len());
    expect_dim("MP kernel", n, p.len())?;
    let quads = quadrics(&q)?;
    diag.mq_kernel_dim = Some(quads.len());
    expect_dim("MQ kernel", (n * n + 7 * n) / 2, quads.len())?;
    let plane_forms = p.iter().map(SyzygyVector::to_moving_form).collect::<Result<Vec<_>>>()?;
    let extra = complement(&lifts(&plane_forms), &quads, (n * n - n) / 2)?;
    let cols = monomials(q.ring, q.source);
    let mut rows = rows_of(&plane_forms, &cols);
    rows.extend(rows_of(&extra, &cols));
    let mut kinds = vec![RowKind::Linear; n];
    kinds.extend(vec![RowKind::Quadric; extra.len()]);
    let matrix = MovingMatrix::new(Target::P3, rows, kinds)?;
    Ok(Assembly {
        matrix,
        diagnostics: diag,
    })
}

/// One moving plane and `mn - 1` moving quadrics for a tensor-product
/// surface with a single simple basepoint. The kernel dimensions are the
/// expected ones (1 and `mn + 3`); anything else is reported as an error.
pub fn assemble_m_tp_one_bp(gens: &[Form], seed: u64) -> Result<Assembly> {
    let q = quadruple(gens, Ring::Bihomogeneous)?;
    let Degree::Bi(m, n) = q.deg else { unreachable!() };
    let mn = (m * n) as usize;
    let mut diag = Diagnostics::default();
    coprime_note(&q, seed, &mut diag)?;
    let p = planes(&q)?;
    diag.mp_kernel_dim = Some(p.len());
    expect_dim("MP kernel", 1, p.len())?;
    let quads = quadrics(&q)?;
    diag.mq_kernel_dim = Some(quads.len());
    expect_dim("MQ kernel", mn + 3, quads.len())?;
    let plane = p[0].to_moving_form()?;
    let extra = complement(&lifts(std::slice::from_ref(&plane)), &quads, mn - 1)?;
    let cols = monomials(q.ring, q.source);
    let mut rows = rows_of(std::slice::from_ref(&plane), &cols);
    rows.extend(rows_of(&extra, &cols));
    let mut kinds = vec![RowKind::Linear];
    kinds.extend(vec![RowKind::Quadric; extra.len()]);
    let matrix = MovingMatrix::new(Target::P3, rows, kinds)?;
    Ok(Assembly {
        matrix,
        diagnostics: diag,
    })
}

/// Implicit equation of a surface. The caller vouches that the map is
/// generically one-to-one; a higher generic degree still shows up as
/// `d > 1` when the determinant is a perfect power.
pub fn implicitize_surface(kind: SurfaceKind, gens: &[Form], seed: u64) -> Result<ImplicitResult> {
    let asm = match kind {
        SurfaceKind::TensorProduct => assemble_m_tp(gens, seed)?,
        SurfaceKind::Triangular => assemble_m_tri(gens, seed)?,
        SurfaceKind::TensorProductOneBasepoint => assemble_m_tp_one_bp(gens, seed)?,
    };
    let det = moving_det(&asm.matrix);
    finish(det, asm.matrix, gens, asm.diagnostics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{parse_form_infer, parse_target};

    fn forms(ring: Ring, texts: &[&str]) -> Vec<Form> {
        texts.iter().map(|t| parse_form_infer(t, ring).unwrap()).collect()
    }

    #[test]
    fn product_order_follows_target_monomials() {
        let g = forms(Ring::Ternary, &["s", "t", "u", "s + t"]);
        let p = quadratic_products(&g).unwrap();
        assert_eq!(p.len(), 10);
        assert_eq!(p[1], parse_form_infer("s*t", Ring::Ternary).unwrap());
        assert_eq!(p[3], parse_form_infer("s^2 + s*t", Ring::Ternary).unwrap());
        assert_eq!(p[9], parse_form_infer("s^2 + 2*s*t + t^2", Ring::Ternary).unwrap());
    }

    #[test]
    fn segre() {
        let g = forms(Ring::Bihomogeneous, &["s*t", "s*v", "u*t", "u*v"]);
        let r = implicitize_surface(SurfaceKind::TensorProduct, &g, 1).unwrap();
        assert_eq!(r.matrix.size(), 1);
        assert_eq!(r.f, parse_target("x*w - y*z", Target::P3).unwrap());
        assert_eq!((r.d, r.det_poly.degree()), (1, Some(2)));
        assert_eq!(r.diagnostics.mq_kernel_dim, Some(1));
    }

    #[test]
    fn roman_surface() {
        let g = forms(Ring::Ternary, &["s*t", "s*u", "t*u", "s^2 + t^2 + u^2"]);
        let r = implicitize_surface(SurfaceKind::Triangular, &g, 1).unwrap();
        assert_eq!(r.matrix.size(), 3);
        assert_eq!(r.matrix.count_rows(RowKind::Linear), 2);
        assert_eq!(r.matrix.count_rows(RowKind::Quadric), 1);
        assert_eq!(
            r.f,
            parse_target("x^2*y^2 + x^2*z^2 + y^2*z^2 - x*y*z*w", Target::P3).unwrap()
        );
        assert_eq!(r.det_poly.degree(), Some(4));
    }

    #[test]
    fn plane_from_linear_quadruple() {
        let g = forms(Ring::Ternary, &["s", "t", "u", "s + 2*t - u"]);
        let r = implicitize_surface(SurfaceKind::Triangular, &g, 1).unwrap();
        assert_eq!(r.matrix.size(), 1);
        assert_eq!(r.f.degree(), Some(1));
    }

    #[test]
    fn one_basepoint_plane() {
        // (1,1) forms vanishing at s = 0, t = 0: spanned by s*t, s*v, u*t.
        let g = forms(Ring::Bihomogeneous, &["s*t", "s*v", "u*t", "s*t + 2*s*v - u*t"]);
        let r = implicitize_surface(SurfaceKind::TensorProductOneBasepoint, &g, 1).unwrap();
        assert_eq!(r.matrix.size(), 1);
        assert_eq!(r.det_poly.degree(), Some(1));
    }

    #[test]
    fn basepoints_are_rejected_before_the_determinant() {
        let g = forms(Ring::Bihomogeneous, &["s*t", "s*v", "u*t", "s*t + s*v + u*t"]);
        let e = implicitize_surface(SurfaceKind::TensorProduct, &g, 1).unwrap_err();
        assert!(
            matches!(
                e,
                Error::RankDefect {
                    stage: "MP kernel",
                    expected: 0,
                    found: 1
                }
            ),
            "{e}"
        );
        let segre = forms(Ring::Bihomogeneous, &["s*t", "s*v", "u*t", "u*v"]);
        let e = implicitize_surface(SurfaceKind::TensorProductOneBasepoint, &segre, 1).unwrap_err();
        assert!(matches!(e, Error::RankDefect { found: 0, .. }), "{e}");
    }
}
