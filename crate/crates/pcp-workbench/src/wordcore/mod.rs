//! Letters, words, morphisms, conjugacy, and block-permutation
//! equivalence: the shared currency of every other module.

mod conjugacy;
mod letter;
mod morphism;
mod perm;
mod word;

pub use conjugacy::{conjugacy_splits, is_conjugate, primitive_root, Split};
pub use letter::{Letter, LetterError, Role, Subscript};
pub use morphism::{left_desync, right_desync, Morphism, MorphismError};
pub use perm::{sim_m, PermWitness};
pub use word::Word;
