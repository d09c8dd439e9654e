//! Base sizes and regular suborbits of finite permutation groups, with an
//! emphasis on wreath products in product action.

pub mod base;
pub mod constructions;
pub mod distinguishing;
pub mod error;
pub mod par;
pub mod perm;
pub mod product;
pub mod report;
pub mod saxl;

pub use error::{Error, Result};
pub use perm::{Permutation, PermutationGroup};
