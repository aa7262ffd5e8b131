//! Numerical model of the groupoid of partially invertible elements of the
//! matrix W*-algebra `M_n(C)`.
//!
//! The crate covers polar data and supports ([`wstar`]), the projection
//! lattice orbit with its Möbius charts ([`lattice`]), the groupoid and its
//! three-component charts ([`groupoid`]), the frame bundle and gauge groupoid
//! ([`bundle`]), invariant vector fields and their Lie algebroid brackets
//! ([`algebroid`]), the algebroid of derivations ([`derivations`]) and the
//! Grassmannian specialisation in matrix elements ([`grassmann`]).
//!
//! Every routine is generic over the real scalar `T: Real` (`f32` or `f64`);
//! the `*64` aliases below fix `T = f64`.

pub mod algebroid;
pub mod bundle;
pub mod derivations;
pub mod error;
pub mod grassmann;
pub mod groupoid;
pub mod jet;
pub mod lattice;
pub mod operator;
pub mod scalar;
pub mod wirtinger;
pub mod wstar;

pub use error::{Error, Result};
pub use operator::Operator;
pub use scalar::{Cx, Real};
pub use bundle::{Frame, GaugeClass, StructureGroupElement};
pub use groupoid::GroupoidElement;
pub use lattice::{ChartPoint, LatticeOrbit};
pub use wstar::{Algebra, PolarData, Projection};

pub type Operator64 = Operator<f64>;
pub type Operator32 = Operator<f32>;
pub type Algebra64 = Algebra<f64>;
pub type Projection64 = Projection<f64>;
pub type Projection32 = Projection<f32>;
pub type LatticeOrbit64 = LatticeOrbit<f64>;
pub type GroupoidElement64 = GroupoidElement<f64>;
pub type Frame64 = Frame<f64>;
