//! Exact implicitization of rational parametric curves and surfaces with
//! moving lines, planes and quadrics.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: dense exact linear algebra over the rationals;
//! * [`forms`]: graded parameter rings, target polynomials and moving forms;
//! * [`syzygy`]: graded multiplication maps, syzygies, μ-bases, Koszul
//!   witnesses, Hilbert functions and saturation;
//! * [`implicit`]: moving-form matrices and their determinants;
//! * [`basepoint`]: strong μ-bases and basepoint numerology.
//!
//! ```
//! use movingsyz::forms::{parse_form_infer, Ring};
//! use movingsyz::implicit::implicitize_curve;
//!
//! let gens: Vec<_> = ["s^2", "s*t", "t^2"]
//!     .iter()
//!     .map(|g| parse_form_infer(g, Ring::Binary).unwrap())
//!     .collect();
//! let res = implicitize_curve(&gens[0], &gens[1], &gens[2]).unwrap();
//! assert_eq!(res.f.render(), "x*z - y^2");
//! assert_eq!(res.d, 1);
//! ```

pub mod basepoint;
pub mod error;
pub mod forms;
pub mod implicit;
pub mod linalg;
pub mod random;
pub mod syzygy;

pub use error::{Error, ErrorClass, Result};
pub use forms::{Degree, Form, MovingForm, Ring, Target, TargetPoly};
pub use implicit::{ImplicitResult, MovingMatrix};
pub use linalg::{Matrix, Scalar};
pub use syzygy::{KoszulWitness, MuBasis, SyzygyVector};
