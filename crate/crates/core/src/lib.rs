//! Exact computations in rational group algebras `QG` and integral group
//! rings `ZG` of small finite groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`group`]: finite groups from tables, permutations or catalog names,
//!   with subgroup lattices, quotients and class data.
//! * [`arith`]: rationals, cyclotomic fields and rational Hilbert symbols.
//! * [`ring`]: group ring elements over `Z`, `Q` and `Q(zeta_n)`.
//! * [`idempotents`]: Shoda pairs and primitive central idempotents.
//! * [`wedderburn`]: simple component descriptors and their classification,
//!   plus the structural predicates built on them.
//! * [`units`] and [`central`]: certified units of `ZG` and central units.
//! * [`report`]: the serializable aggregate used by the command-line tool.

pub mod arith;
pub mod central;
pub mod error;
pub mod group;
pub mod idempotents;
pub mod report;
pub mod ring;
pub mod units;
pub mod wedderburn;

pub use error::{Error, ErrorKind, Result};
pub use group::FiniteGroup;
