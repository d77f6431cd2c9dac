//! Curves on smooth toric surfaces through their lattice polygons.
//!
//! ```
//! use latticecurve::curve::classify_curve;
//! use latticecurve::polygon::rectangle;
//!
//! let r = classify_curve(&rectangle(5, 3)).unwrap();
//! assert_eq!((r.genus, r.gonality, r.clifford), (8, 3, Some(1)));
//! ```

pub mod campaign;
pub mod curve;
pub mod enumerate;
pub mod equivalence;
pub mod error;
pub mod fan;
pub mod gaps;
pub mod io;
pub mod lattice;
pub mod poly;
pub mod polygon;
pub mod shape;
pub mod svg;
pub mod width;
