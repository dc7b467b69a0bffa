//! Exact construction and verification of Albert algebras.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`] and [`linalg`]: exact scalars over field towers and dense
//!   exact linear algebra;
//! * [`table`]: finite-dimensional algebras given by structure constants;
//! * [`composition`] and [`csa3`]: octonion/quaternion algebras and
//!   degree-3 associative algebras;
//! * [`jordan`]: generic cubic Jordan machinery (norms, adjoints, U-operators,
//!   isotopes);
//! * [`albert`]: the first Tits construction and reduced algebras `H3(C, Γ)`;
//! * [`strops`]: structure-group predicates on linear operators;
//! * [`fixtures`]: the named reference algebras.

pub mod field;
pub mod linalg;
pub mod error;
pub mod sample;
pub mod table;
pub mod composition;
pub mod cubic;
pub mod csa3;
pub mod jordan;
pub mod albert;
pub mod strops;
pub mod fixtures;
pub mod tagged;
