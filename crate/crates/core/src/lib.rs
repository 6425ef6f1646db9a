//! Center conditions for Abel differential equations `x' = f(t)x³ + g(t)x²`.

pub mod arith;
pub mod cli;
pub mod error;
mod linalg;
pub mod ode;
pub mod pcc;
pub mod planar;
pub mod returnmap;
pub mod signs;
pub mod system;
pub mod trig;

pub use arith::{Degree, Poly, Rational};
pub use error::{Error, ParseError, Result};
pub use system::{AbelSystem, ExactValue, MomentMatrix, MomentReport};
pub use trig::TrigPoly;
