pub mod approx;
pub mod complexpath;
pub mod constants;
pub mod error;
pub mod historical;
pub mod lifn;
pub mod primes;
pub mod quadrature;
pub mod realnum;

pub use error::{Error, Result};
pub use realnum::{DecimalRounding, Precision, Real};
