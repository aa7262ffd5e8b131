//! Frame bundle charts, cocycles and the gauge groupoid.

use wstar_core::bundle::{
    anchor_element, cocycle, frame_chart, frame_transition, gauge_compose, gauge_to_groupoid, gauge_to_groupoid_unitary, trivialize,
    unitary_reduce, unitary_residual, GaugeClass,
};
use wstar_core::groupoid::compose;
use wstar_core::{Frame, GroupoidElement};

use crate::gen::{gen_chart_base, gen_frame, gen_structure, Rng64};
use crate::runner::{Ctx, Fail, Property};

fn cocycle_identity(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta_ref = gen_frame(rng, o)?;
    let q = gen_frame(rng, o)?.base(o)?;
    let q_ref = eta_ref.base(o)?;
    let mut ps = Vec::new();
    let mut ls = Vec::new();
    for _ in 0..3 {
        let p = gen_chart_base(rng, o, ctx.k(), &[&q, &q_ref])?;
        ls.push(anchor_element(o, &p, eta_ref.op())?);
        ps.push(p);
    }
    let g = |i: usize, j: usize| cocycle(o, &ps[j], &ls[j], &ps[i], &ls[i], &q);
    let lhs = g(2, 1)?.op() * g(1, 0)?.op();
    let rhs = g(2, 0)?;
    let unit = g(0, 0)?.op().dist(o.p0().matrix());
    Ok((lhs.dist(rhs.op()) / (1.0 + rhs.op().norm())).max(unit))
}

fn trivialization_change(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta_ref = gen_frame(rng, o)?;
    let eta = gen_frame(rng, o)?;
    let (b, b_ref) = (eta.base(o)?, eta_ref.base(o)?);
    let p = gen_chart_base(rng, o, ctx.k(), &[&b, &b_ref])?;
    let p_new = gen_chart_base(rng, o, ctx.k(), &[&b, &b_ref])?;
    let (l, l_new) = (anchor_element(o, &p, eta_ref.op())?, anchor_element(o, &p_new, eta_ref.op())?);
    let (q, g) = trivialize(o, &p, &l, &eta)?;
    let (_, g_new) = trivialize(o, &p_new, &l_new, &eta)?;
    let c = cocycle(o, &p, &l, &p_new, &l_new, &q)?;
    let rhs = c.op() * g.op();
    Ok(g_new.op().dist(&rhs) / (1.0 + rhs.norm()))
}

fn trivialization_equivariance(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta_ref = gen_frame(rng, o)?;
    let eta = gen_frame(rng, o)?;
    let g = gen_structure(rng, o);
    let p = gen_chart_base(rng, o, ctx.k(), &[&eta.base(o)?, &eta_ref.base(o)?])?;
    let l = anchor_element(o, &p, eta_ref.op())?;
    let (q1, h1) = trivialize(o, &p, &l, &eta)?;
    let (q2, h2) = trivialize(o, &p, &l, &Frame::new(o, eta.op() * &g)?)?;
    Ok(q1.dist(&q2).max(h2.op().dist(&(h1.op() * &g))))
}

fn frame_chart_round_trip(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?;
    let b = eta.base(o)?;
    let p = gen_chart_base(rng, o, ctx.k(), &[&b])?;
    let p_new = gen_chart_base(rng, o, ctx.k(), &[&b])?;
    let pt = frame_chart(o, &p, &eta)?;
    let back = pt.reconstruct().dist(eta.op());
    let moved = frame_transition(o, &pt, &p_new)?;
    let direct = frame_chart(o, &p_new, &eta)?;
    let t = moved.z.dist(&direct.z).max(moved.y.coordinate.dist(&direct.y.coordinate));
    Ok(back.max(t / 10.0))
}

fn gauge_composition(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let alg = o.algebra();
    let (eta, xi, zeta) = (gen_frame(rng, o)?, gen_frame(rng, o)?, gen_frame(rng, o)?);
    let g = gen_structure(rng, o);
    let c1 = GaugeClass::new(eta, xi.clone());
    let c2 = GaugeClass::new(Frame::new(o, xi.op() * &g)?, zeta);
    let lhs = gauge_to_groupoid(o, &gauge_compose(o, &c1, &c2)?)?;
    let rhs = compose(alg, &gauge_to_groupoid(o, &c1)?, &gauge_to_groupoid(o, &c2)?)?;
    Ok(lhs.op().dist(rhs.op()) / (1.0 + rhs.op().norm()))
}

fn gauge_inverse_unit(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let alg = o.algebra();
    let (eta, xi) = (gen_frame(rng, o)?, gen_frame(rng, o)?);
    let c = GaugeClass::new(eta.clone(), xi);
    let inv = gauge_to_groupoid(o, &c.inverse())?.op().dist(gauge_to_groupoid(o, &c)?.inverse(alg)?.op());
    let unit = gauge_to_groupoid(o, &GaugeClass::unit(eta.clone()))?;
    let u = unit.op().dist(GroupoidElement::unit(&eta.base(o)?).op());
    Ok(inv.max(u))
}

fn representative_independence(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let (eta, xi) = (gen_frame(rng, o)?, gen_frame(rng, o)?);
    let g = gen_structure(rng, o);
    let a = GaugeClass::new(eta.clone(), xi.clone()).invariant(o)?;
    let b = GaugeClass::new(Frame::new(o, eta.op() * &g)?, Frame::new(o, xi.op() * &g)?).invariant(o)?;
    Ok(a.dist(&b) / (1.0 + a.norm()))
}

fn unitary_image(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = unitary_reduce(o, &gen_frame(rng, o)?)?;
    let xi = unitary_reduce(o, &gen_frame(rng, o)?)?;
    let reduced = unitary_residual(o, eta.op()).max(unitary_residual(o, xi.op()));
    let x = gauge_to_groupoid_unitary(o, &GaugeClass::new(eta.clone(), xi.clone()))?;
    let pi = (x.op().adjoint() * x.op()).dist(x.r().matrix()).max((x.op() * x.op().adjoint()).dist(x.l().matrix()));
    let same = x.op().dist(gauge_to_groupoid(o, &GaugeClass::new(eta, xi))?.op());
    Ok(reduced.max(pi).max(same))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "bundle", name: "cocycle_identity", statement: "g_{p''p'} g_{p'p} = g_{p''p} and g_{pp} = p0, relative", tolerance: |c| c.tol_bracket, check: cocycle_identity },
        Property { suite: "bundle", name: "trivialization_change", statement: "trivialisations differ by the cocycle, relative", tolerance: |c| c.tol_bracket, check: trivialization_change },
        Property { suite: "bundle", name: "trivialization_equivariance", statement: "trivialize(eta g) = (l(eta), h g)", tolerance: |c| c.tol_eq, check: trivialization_equivariance },
        Property { suite: "bundle", name: "frame_chart", statement: "(p + y) z = eta; chart change equals recharting", tolerance: |c| c.tol_eq, check: frame_chart_round_trip },
        Property { suite: "bundle", name: "gauge_composition", statement: "<eta, xi><xi g, zeta> maps to the product in the groupoid", tolerance: |c| c.tol_eq, check: gauge_composition },
        Property { suite: "bundle", name: "gauge_inverse_unit", statement: "inverse and unit diagrams of the gauge map", tolerance: |c| c.tol_eq, check: gauge_inverse_unit },
        Property { suite: "bundle", name: "representative_independence", statement: "eta g (xi g)^-1 = eta xi^-1, relative", tolerance: |c| c.tol_eq, check: representative_independence },
        Property { suite: "bundle", name: "unitary_image", statement: "eta xi* is a partial isometry equal to eta xi^-1", tolerance: |c| c.tol_eq, check: unitary_image },
    ]
}
