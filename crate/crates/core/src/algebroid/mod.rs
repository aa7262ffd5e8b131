//! Invariant vector fields on `P0` as sections of the Lie algebroid
//! `A_{p0}(M)`: brackets in flat, chart and section form, the anchor, the
//! Atiyah sequence, the tangent group and the unitary subalgebroid.

pub mod anchor;
pub mod atiyah;
pub mod bracket;
pub mod fields;
pub mod tangent;
pub mod unitary;

pub use anchor::{anchor, anchor_bracket_exact, anchor_bracket_fd, anchor_derivative, anchor_value, lattice_flow_velocity, leibniz_check};
pub use atiyah::{atiyah_exactness, AtiyahReport};
pub use bracket::{
    bracket_chart, bracket_flat, bracket_section, bracket_section_chart, chart_reconstruct_field, to_chart_field,
    Bracket, ChartBracket, SectionBracket, ToChart,
};
pub use fields::{
    chart_support, equivariance_residual, field_from_section, frame_support, ChartField, FrameField, FramePoly,
    HolomorphicField, LinearField, PolyScalar, PolySection, RightMultField, ScaledConst, ScaledField, Section,
    SectionField, SumField,
};
pub use tangent::{tangent_action, tangent_group_product, TangentGroupElement};
pub use unitary::{chart_unitary_residual, chart_unitary_y, unitary_condition};
