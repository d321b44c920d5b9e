//! Lines on smooth surfaces in projective 3-space: exact enumeration over
//! finite fields, classification and flecnodal multiplicities.

pub mod algebra;
pub mod error;
pub mod lineenum;
pub mod projgeom;
pub mod tangentforms;

pub use error::Error;
pub mod audit;
pub mod flecnodal;
pub mod io;
