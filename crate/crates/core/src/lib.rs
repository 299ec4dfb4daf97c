//! Finite categories, their nerves, ramified coverings between them, and the
//! series Euler characteristic and zeta function in exact rational arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod category;
pub mod cli;
pub mod constructions;
pub mod covering;
pub mod invariants;
pub mod io;
pub mod nerve;
pub mod report;

pub use category::{FiniteCategory, MorphismId, ObjectId, RawCategory};
pub use covering::{check_ramified_covering, check_unramified_covering, CategoryFunctor, RamifiedCovering};
pub use invariants::polynomial::{Polynomial, RationalFunction};
pub use invariants::series::PowerSeries;
pub use invariants::EulerCharacteristic;
pub use nerve::Chain;
