pub mod artin;
pub mod certify;
pub mod characters;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod linalg;
pub mod permgroup;

pub use artin::{ArtinDecomposition, ArtinTerm, SubgroupFamily};
pub use certify::{check_certificate, TheoremCertificate};
pub use characters::{CharacterTable, ClassFunction, VirtualCharacter};
pub use cyclotomic::{CycloNumber, Rational};
pub use error::{Error, Result};
pub use permgroup::{FiniteGroup, GroupSpec, Permutation, SubgroupHandle};
