//! Reals through the interval domain.

mod bisection;
mod enclose;
mod machin;
mod pi;
mod point;
mod poly;

use alloc::string::String;

pub use bisection::{bisection_element, bisection_trace, Bisection};
pub use enclose::{enclose, represent};
pub use machin::{machin_bounds, machin_terms_for};
pub use pi::{pi_domain, pi_element, pi_enclosure, pi_precision, pi_width_bound, GUARD_BITS};
pub use point::RealPoint;
pub use poly::{PolyParseError, RationalPoly};

use crate::codes::RatInterval;
use crate::domains::DomainError;
use crate::machine::MachineError;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RealError {
    #[error("{poly} has no strict sign change on [{a}, {b}]")]
    NoSignChange { poly: String, a: Rational, b: Rational },
    #[error("budget exhausted at emission {index}; best enclosure {best}")]
    Budget { best: RatInterval, index: u64 },
    #[error("emission {index} is not nested in the earlier probes")]
    NotShrinking { index: u64 },
    #[error("not an interval: {0}")]
    NotInterval(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Machine(#[from] MachineError),
}
