//! Provers, proof checkers and game semantics for fragments of
//! computability logic: the choice fragments CL1 and CL2, the shallow
//! cirquent systems CL5 and CCC, and the recurrence cirquent system CL15.

pub mod bruteforce;
pub mod cl15;
pub mod cl5;
pub mod data;
pub mod families;
pub mod formula;
pub mod games;
pub mod system;

pub use formula::{parse, Atom, AtomKind, Formula, ParseError};
pub use system::SystemId;
