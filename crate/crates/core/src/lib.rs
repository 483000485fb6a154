//! Finite Stallings pregroups.
//!
//! A pregroup is a finite carrier with identity, involutive inversion and a
//! partial multiplication. This crate checks the pregroup axioms and their
//! companions, computes in the universal group `U(P)` through reduced
//! products, and measures hyperbolicity constants on finite balls of the
//! Cayley graph.
//!
//! ```
//! use pregroup::{construct, word, UniversalGroup};
//!
//! let p = construct::amalgam_cyclic(4, 4, 2).unwrap();
//! let ug = UniversalGroup::new(&p);
//! let u = ug.parse_reduced("a3 b3").unwrap();
//! assert_eq!(p.format_word(ug.canonical(&u).factors()), "a b");
//! assert!(word::reduce(&p, &p.parse_word("a a3").unwrap(), Default::default()).is_identity(&p));
//! ```

pub mod axioms;
pub mod cayley;
pub mod construct;
pub mod format;
pub mod halfint;
pub mod length;
pub mod order_tree;
pub mod pregroup;
pub mod universal;
pub mod word;

pub use axioms::{check_axiom, A2Bounds, AxiomError, AxiomTag, AxiomVerdict};
pub use construct::{ConstructError, ExampleKind, FiniteGroup, RandomMode};
pub use format::{parse_pregroup, serialize_pregroup, ParseError};
pub use halfint::HalfInt;
pub use order_tree::{OrderTree, TreeError};
pub use pregroup::{Elem, Pregroup, PregroupError};
pub use universal::UniversalGroup;
pub use word::{Reduced, Strategy};
