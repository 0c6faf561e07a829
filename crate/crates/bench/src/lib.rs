//! Seeded inputs shared by the benches.

use movingsyz::random::{self, SeededRng};
use movingsyz::{Degree, Form, Matrix, Ring};

fn forms(rng: &mut SeededRng, k: usize, ring: Ring, deg: Degree) -> Vec<Form> {
    (0..k).map(|_| random::form(rng, ring, deg, 9)).collect()
}

/// Dense integer matrix with entries in `[-9, 9]`.
pub fn matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = random::rng(seed);
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| random::coefficient(&mut rng, 9)).collect())
        .collect();
    Matrix::from_rows(data).expect("uniform rows")
}

pub fn curve(n: u32, seed: u64) -> Vec<Form> {
    forms(&mut random::rng(seed), 3, Ring::Binary, Degree::Total(n))
}

pub fn tensor_product(m: u32, n: u32, seed: u64) -> Vec<Form> {
    forms(&mut random::rng(seed), 4, Ring::Bihomogeneous, Degree::Bi(m, n))
}

pub fn triangular(n: u32, seed: u64) -> Vec<Form> {
    forms(&mut random::rng(seed), 4, Ring::Ternary, Degree::Total(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use movingsyz::implicit::{implicitize_curve, implicitize_surface, SurfaceKind};

    #[test]
    fn bench_inputs_are_valid() {
        let c = curve(4, 1);
        assert_eq!(implicitize_curve(&c[0], &c[1], &c[2]).unwrap().d, 1);
        assert!(implicitize_surface(SurfaceKind::TensorProduct, &tensor_product(1, 1, 1), 1).is_ok());
        assert!(implicitize_surface(SurfaceKind::Triangular, &triangular(2, 1), 1).is_ok());
        assert_eq!(matrix(5, 5, 1).rank(), 5);
    }
}
