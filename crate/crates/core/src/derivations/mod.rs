//! The frame groupoid `P0 x Aut(M p0) x P0`, its quotients, bisections and
//! the algebroid of derivations `D = -X + Theta`.

pub mod bisection;
pub mod derivation;
pub mod endo;
pub mod field;
pub mod trivial;

pub use bisection::{
    bisection_apply, bisection_equivariance, flow_derivative_residual, flow_transport, group_law_residual, Bisection,
    BisectionFamily, Composed, ExpBisection, ExpFamily, RightExpBisection, RightExpFamily,
};
pub use derivation::{
    anchor_law_residual, commutator_residual, derivation_anchor, derivation_apply, derivation_bracket,
    equivariance_residuals, leibniz_residual, lift_bracket, lift_bracket_residuals, linear_lift, tangent_lift, Applied,
    BracketTheta, Cocycle, CommutatorCocycle, Derivation, LiftBracketResiduals, LinearLift, ScaledVector,
};
pub use endo::{corner_exp, mod_automorphism_element, probe_mod_automorphism, CornerSpace, Endo, ModProbe};
pub use field::{
    theta_directional, Analytic, ConstTheta, DynField, DynTheta, FieldBracket, JacobianTheta, LeftSectionTheta, ThetaMap,
    VectorField, ZeroField,
};
pub use trivial::{quotient_class, quotient_pair_example, regauge, trivial_compose, PairQuotientReport, TrivialArrow};
