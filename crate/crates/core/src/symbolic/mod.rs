//! Exact arithmetic for infinite groups: the Heisenberg group and its
//! extensions of `Z^2`, free groups, and `Z × F`.

pub mod center;
pub mod examples;
pub mod free;
pub mod heis;
pub mod mixed;

pub use center::{center_criterion_solver, CenterReport, Family};
pub use free::{FreeGroup, FreeWord};
pub use heis::{omega, FreeAbelian, HeisByZ2, HeisElement, Heisenberg, SemidirectElement};
pub use mixed::{MacLane, MixedElement, MixedGroup};
