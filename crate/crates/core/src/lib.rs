//! Finite presheaf engine with adjoint-string audits.
//!
//! The crate computes with presheaves on small index categories — truncated
//! simplex and cube categories, their products and wide subcategories — and
//! audits, exhaustively on finite instances, the categorical facts that
//! transfer arguments between them rely on: adjunction exactness, triangle
//! identities, idempotency and fully-faithfulness of adjoint strings,
//! triangulation of cubical objects, lifting properties, and homology-based
//! weak-equivalence falsification.
//!
//! Everything is exact: no floating point, no sampling error. Randomness only
//! enters through seeded corpus generation, and every report records the seed
//! and truncation parameters needed to replay it.

pub mod adjstring;
pub mod bases;
pub mod colimit;
pub mod corpus;
pub mod cubes;
pub mod elements;
pub mod error;
pub mod fincat;
pub mod functor;
pub mod homology;
pub mod io;
pub mod kan;
pub mod lifting;
pub mod marked;
pub mod modelaudit;
pub mod presheaf;
pub mod report;
pub mod search;
pub mod suites;
pub mod weqoracle;

pub use error::{EngineError, Result};
pub use fincat::{FinCat, FinFunctor, MorId, ObjId};
pub use presheaf::{CellRef, Presheaf, PresheafMap};
