//! Groupoid laws and the three-component charts.

use wstar_core::groupoid::{chart_reconstruct, compose, groupoid_chart, groupoid_chart_transition, involution, involution_in_coordinates, GroupoidChartPoint};
use wstar_core::{GroupoidElement, Operator, Projection};

use crate::gen::{gen_chart_base, gen_groupoid_element, gen_operator, gen_projection, Rng64};
use crate::runner::{Ctx, Fail, Property};

/// `r(x) G s`, an element with `l = r(x)` and a random right support `s`.
pub(crate) fn gen_composable(ctx: &Ctx, rng: &mut Rng64, x: &GroupoidElement<f64>) -> Result<GroupoidElement<f64>, Fail> {
    let s = gen_projection(rng, &ctx.orbit, ctx.k())?;
    let g: Operator<f64> = gen_operator(rng, ctx.n(), 1.0);
    Ok(GroupoidElement::new(ctx.orbit.algebra(), x.r().matrix() * g * s.matrix())?)
}

/// Chart bases around `l(x)` and `r(x)`.
fn chart_bases(ctx: &Ctx, rng: &mut Rng64, x: &GroupoidElement<f64>) -> Result<(Projection<f64>, Projection<f64>), Fail> {
    let pt = gen_chart_base(rng, &ctx.orbit, ctx.k(), &[x.l()])?;
    let ps = gen_chart_base(rng, &ctx.orbit, ctx.k(), &[x.r()])?;
    Ok((pt, ps))
}

fn z_dist(a: &GroupoidChartPoint<f64>, b: &GroupoidChartPoint<f64>) -> f64 {
    a.z.dist(&b.z).max(a.target.coordinate.dist(&b.target.coordinate)).max(a.source.coordinate.dist(&b.source.coordinate))
}

fn psi_round_trip(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let (pt, ps) = chart_bases(ctx, rng, &x)?;
    let c = groupoid_chart(alg, &pt, &ps, &x)?;
    Ok(chart_reconstruct(alg, &c)?.op().dist(x.op()))
}

fn psi_transition(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let mut ps = Vec::new();
    for _ in 0..2 {
        let (pt, pss) = chart_bases(ctx, rng, &x)?;
        ps.push(pt);
        ps.push(pss);
    }
    let old = groupoid_chart(alg, &ps[0], &ps[1], &x)?;
    let moved = groupoid_chart_transition(alg, &old, &ps[2], &ps[3])?;
    Ok(z_dist(&moved, &groupoid_chart(alg, &ps[2], &ps[3], &x)?))
}

fn involution_chart(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let (pt, ps) = chart_bases(ctx, rng, &x)?;
    let mapped = involution_in_coordinates(alg, &groupoid_chart(alg, &pt, &ps, &x)?)?;
    Ok(z_dist(&mapped, &groupoid_chart(alg, &pt, &ps, &involution(alg, &x)?)?))
}

fn associativity(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let y = gen_composable(ctx, rng, &x)?;
    let z = gen_composable(ctx, rng, &y)?;
    let a = compose(alg, &compose(alg, &x, &y)?, &z)?;
    let b = compose(alg, &x, &compose(alg, &y, &z)?)?;
    Ok(a.op().dist(b.op()) / (1.0 + a.op().norm()))
}

fn inverse_and_units(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let xi = x.inverse(alg)?;
    let a = compose(alg, &x, &xi)?.op().dist(x.l().matrix());
    let b = compose(alg, &xi, &x)?.op().dist(x.r().matrix());
    let c = compose(alg, &GroupoidElement::unit(x.l()), &x)?.op().dist(x.op());
    let d = compose(alg, &x, &GroupoidElement::unit(x.r()))?.op().dist(x.op());
    Ok(a.max(b).max(c).max(d))
}

fn involution_laws(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let y = gen_composable(ctx, rng, &x)?;
    let jj = involution(alg, &involution(alg, &x)?)?.op().dist(x.op());
    let jx = involution(alg, &x)?;
    let supports = jx.l().dist(x.l()).max(jx.r().dist(x.r()));
    let lhs = involution(alg, &compose(alg, &x, &y)?)?;
    let rhs = compose(alg, &jx, &involution(alg, &y)?)?;
    Ok(jj.max(supports).max(lhs.op().dist(rhs.op()) / (1.0 + lhs.op().norm())))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "groupoid", name: "psi_round_trip", statement: "(p_t + y_t) z (p_s + y_s)^-1 recovers x", tolerance: |c| c.tol_eq, check: psi_round_trip },
        Property { suite: "groupoid", name: "psi_transition", statement: "chart change of (y_t, z, y_s) equals recharting", tolerance: |c| 10.0 * c.tol_eq, check: psi_transition },
        Property { suite: "groupoid", name: "involution_in_coordinates", statement: "J in coordinates equals the chart of J(x)", tolerance: |c| 10.0 * c.tol_eq, check: involution_chart },
        Property { suite: "groupoid", name: "associativity", statement: "(xy)z = x(yz), relative", tolerance: |c| c.tol_eq, check: associativity },
        Property { suite: "groupoid", name: "inverse_and_units", statement: "x x^-1 = l(x), x^-1 x = r(x), unit laws", tolerance: |c| c.tol_eq, check: inverse_and_units },
        Property { suite: "groupoid", name: "involution_laws", statement: "J^2 = id, J preserves supports, J(xy) = J(x) J(y)", tolerance: |c| c.tol_eq, check: involution_laws },
    ]
}
