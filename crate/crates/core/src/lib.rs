//! Exact computations with representations of quivers: Hom and Ext via the
//! δ map, universal extension and reflection functors, maximal-rank checks,
//! coefficient quivers, and a construction of every real root
//! representation of the three-vertex quivers `Q(f,g,h)`.

pub mod catalog;
pub mod error;
pub mod family;
pub mod functor;
pub mod io;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod tree;

pub use error::{Error, Result};
pub use family::{build_family, construct, prime_subquiver, ConstructionTrace, EElement, FamilyParams, StarForm};
pub use linalg::{Field, Mat, Scalar};
pub use quiver::{DimVector, Quiver, RootClass, WeylWord};
pub use rep::{Morphism, Representation};
