//! Fields tangent to the unitary frames and closure of their bracket.

use wstar_core::algebroid::{bracket_chart, bracket_flat, chart_unitary_residual, field_from_section, to_chart_field, unitary_condition};

use crate::gen::{gen_unitary_frame, gen_unitary_section, Rng64};
use crate::runner::{Ctx, Fail, Property};
use crate::suites::algebroid::chart_sample;

fn frame_tangency(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_unitary_frame(rng, o)?.into_op();
    let f1 = field_from_section(gen_unitary_section(rng, ctx.n()));
    let f2 = field_from_section(gen_unitary_section(rng, ctx.n()));
    let r = unitary_condition(o, &f1, &eta)?.max(unitary_condition(o, &f2, &eta)?);
    Ok(r.max(unitary_condition(o, &bracket_flat(&f1, &f2), &eta)?))
}

fn chart_tangency(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let f1 = field_from_section(gen_unitary_section(rng, ctx.n()));
    let f2 = field_from_section(gen_unitary_section(rng, ctx.n()));
    let c1 = to_chart_field(&f1, s.p.clone(), s.lambda.clone());
    let c2 = to_chart_field(&f2, s.p.clone(), s.lambda.clone());
    let r = chart_unitary_residual(o, &c1, &s.y)?.max(chart_unitary_residual(o, &c2, &s.y)?);
    Ok(r.max(chart_unitary_residual(o, &bracket_chart(&c1, &c2), &s.y)?))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "unitary", name: "frame_tangency", statement: "eta* theta + theta* eta = 0 for u-tangent fields and their bracket", tolerance: |c| c.tol_bracket, check: frame_tangency },
        Property { suite: "unitary", name: "chart_tangency", statement: "Y + Y* = 0 in the chart for u-tangent fields and their bracket", tolerance: |c| c.tol_bracket, check: chart_tangency },
    ]
}
