//! Exact rational maps over `ℚ(i)` and sandwich semigroups.

mod map;
mod poly;
pub mod roots;
pub mod sandwich;
pub mod text;

pub use map::{Mobius, Point, RatMapError, RationalMap};
pub use poly::Poly;
pub use roots::{critical_points, CriticalReport};
pub use sandwich::{rho, sandwich, verify_sandwich_isomorphism, SandwichIso, SandwichReport};
pub use text::{format_map, format_poly, parse_map, MapSyntaxError};
