//! Seeded pseudorandom inputs. Everything is reproducible from a `u64` seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forms::{monomial_count, monomials, Degree, Exps, Form, Ring};
use crate::linalg::{scalar, Scalar};

pub type SeededRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `[-bound, bound]`.
pub fn coefficient<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    scalar(rng.gen_range(-bound..=bound))
}

/// Form with independent integer coefficients in `[-bound, bound]`.
pub fn form<R: Rng>(rng: &mut R, ring: Ring, deg: Degree, bound: i64) -> Form {
    let coeffs = (0..monomial_count(ring, deg))
        .map(|_| coefficient(rng, bound))
        .collect();
    Form::from_coeffs(ring, deg, coeffs).expect("coefficient count matches degree")
}

/// Random nonzero combination of the given monomials.
pub fn combination<R: Rng>(rng: &mut R, ring: Ring, deg: Degree, support: &[Exps], bound: i64) -> Form {
    loop {
        let mut f = Form::zero(ring, deg);
        for e in support {
            f = &f + &Form::monomial(ring, *e, coefficient(rng, bound));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random element of the degree-`deg` piece of a monomial ideal.
pub fn monomial_ideal_element<R: Rng>(rng: &mut R, ring: Ring, gens: &[Exps], deg: Degree, bound: i64) -> Form {
    let support: Vec<Exps> = monomials(ring, deg)
        .into_iter()
        .filter(|m| gens.iter().any(|g| (0..4).all(|i| m[i] >= g[i])))
        .collect();
    combination(rng, ring, deg, &support, bound)
}

/// Random invertible `k x k` integer matrix.
pub fn invertible<R: Rng>(rng: &mut R, k: usize, bound: i64) -> crate::linalg::Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..k)
            .map(|_| (0..k).map(|_| coefficient(rng, bound)).collect())
            .collect();
        let m = crate::linalg::Matrix::from_rows(rows).expect("square rows");
        if m.rank() == k {
            return m;
        }
    }
}

/// The four signed maximal minors `(-1)^i Δ_i` of a random `4 x 3` matrix of
/// ternary forms whose column `j` has degree `col_degrees[j]`.
pub fn minors_quadruple<R: Rng>(rng: &mut R, col_degrees: [u32; 3], bound: i64) -> [Form; 4] {
    loop {
        let m: Vec<Vec<Form>> = (0..4)
            .map(|_| {
                col_degrees
                    .iter()
                    .map(|&d| form(rng, Ring::Ternary, Degree::Total(d), bound))
                    .collect()
            })
            .collect();
        let q = signed_minors(&m);
        if q.iter().all(|f| !f.is_zero()) {
            return q;
        }
    }
}

/// Signed maximal minors of a `4 x 3` matrix of forms.
pub fn signed_minors(m: &[Vec<Form>]) -> [Form; 4] {
    assert_eq!(m.len(), 4);
    std::array::from_fn(|i| {
        let rows: Vec<&Vec<Form>> = (0..4).filter(|&r| r != i).map(|r| &m[r]).collect();
        let d = det3(&rows);
        if i % 2 == 0 {
            d
        } else {
            -&d
        }
    })
}

fn det3(r: &[&Vec<Form>]) -> Form {
    let t = |a: usize, b: usize, c: usize| &(&r[0][a] * &r[1][b]) * &r[2][c];
    let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
    let neg = &(&t(2, 1, 0) + &t(0, 2, 1)) + &t(1, 0, 2);
    &pos - &neg
}
