//! Twisted Alexander polynomials and norm balls for link exteriors and
//! deficiency-one group presentations, over Q or a prime field.

pub mod ball;
pub mod bounds;
pub mod cover;
pub mod error;
pub mod field;
pub mod gcd;
pub mod intmat;
pub mod laurent;
pub mod newton;
pub mod pd;
pub mod perm;
pub mod polymat;
pub mod presentation;
pub mod rep;
pub mod twist;
pub mod wirtinger;
pub mod words;

pub use error::Error;
pub use field::{Field, FieldElem};
pub use laurent::LaurentPoly;
