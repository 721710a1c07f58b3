//! Exact intersection rings of blow-ups of projective space along curves,
//! secant bundles over rational normal curves, and the effective cones they
//! carry.

pub mod blowup;
pub mod catalog;
pub mod cone;
pub mod error;
pub mod expr;
pub mod formulas;
pub mod linalg;
pub mod ring;
pub mod secant;

pub use blowup::{BlowupPresentation, Family, FamilySpec, MixedClass, NumBasis};
pub use catalog::{list_cases, verify_case, Params, VerificationReport};
pub use cone::PolyCone;
pub use error::{Error, Result};
pub use expr::{parse_expr, Class, Expr, Ring, Space};
pub use linalg::Q;
pub use ring::{FormalSum, GeneratorSet, Monomial, RewriteSystem};
pub use secant::{PsiMaps, SecantBundleRing};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/numerical.md")]
    mod numerical {}
    #[doc = include_str!("../../../book/src/secant.md")]
    mod secant {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
