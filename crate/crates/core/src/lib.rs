//! Differential and boomerang properties of power functions `x^d` over
//! GF(2^n): field arithmetic, spectra, Dickson polynomials, GF(2)[x, y]
//! resultants, the catalog of APN-like exponent families, and exhaustive
//! scans over cyclotomic cosets.

pub mod dickson;
pub mod error;
pub mod families;
pub mod gf2n;
pub mod resultant;
pub mod scan;
pub mod spectra;

pub use error::{Error, Result};
pub use families::{Catalog, Claim, Family};
pub use gf2n::{Elem, Field};
pub use scan::{ScanReport, Summary};
pub use spectra::{ClassificationRecord, DiffRow};
