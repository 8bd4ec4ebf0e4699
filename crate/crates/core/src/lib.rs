//! Exact computations around the torsion classes `y_{p,I}` of `BPGL_n`:
//! odd-primary Steenrod operations on presented graded-commutative algebras,
//! the classes `r_k` in the cohomology of `B(C_p × μ_p)`, SL₂(𝔽_p)
//! invariants, Young-subgroup double cosets, and the coefficient arithmetic
//! that decides whether `y_{p,I}` survives in `H^*(BPGL_n)`.
//!
//! ```
//! use torsionlab::models::{cpmup_model, zeta};
//! use torsionlab::{adem_normalize, apply, OpWord, Prime};
//!
//! let p = Prime::new(3)?;
//! let m = cpmup_model(p)?;
//! let r0 = apply(&OpWord::parse(p, "B P1")?, &zeta(&m)?)?;
//! assert_eq!(r0.to_string(), "xi^3*eta + 2*xi*eta^3");
//! assert_eq!(adem_normalize(&OpWord::parse(p, "P1 P1")?).to_string(), "2*P2");
//! # Ok::<(), torsionlab::Error>(())
//! ```

pub mod algebra;
pub mod checks;
pub mod error;
pub mod models;
pub mod modp;
pub mod par;
pub mod perm;
pub mod random;
pub mod sl2;
pub mod spectral;
pub mod steenrod;

pub use algebra::{AlgebraModel, Element, GeneratorKind, GeneratorSpec, ModelBuilder, Monomial};
pub use error::{Error, Result};
pub use modp::{binom_mod_p, Fp, Prime};
pub use steenrod::{adem_normalize, apply, AdmissibleSum, OpWord, SteenrodOp};
