//! Möbius charts of the projection lattice orbit.

use wstar_core::lattice::{phi, phi_inv, sigma, transition, ChartPoint};

use crate::gen::{gen_chart_base, gen_chart_coordinate, gen_projection, Rng64};
use crate::runner::{Ctx, Fail, Property};

fn phi_round_trip(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let q = gen_projection(rng, &ctx.orbit, ctx.k())?;
    let p = gen_chart_base(rng, &ctx.orbit, ctx.k(), &[&q])?;
    Ok(phi_inv(alg, &phi(alg, &p, &q)?)?.dist(&q))
}

fn phi_inverse_round_trip(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let p = gen_projection(rng, &ctx.orbit, ctx.k())?;
    let y = gen_chart_coordinate(rng, &p, 1.0);
    let q = phi_inv(alg, &ChartPoint::new(alg, p.clone(), y.clone())?)?;
    Ok(phi(alg, &p, &q)?.coordinate.dist(&y))
}

fn mobius_transition(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let q = gen_projection(rng, &ctx.orbit, ctx.k())?;
    let p = gen_chart_base(rng, &ctx.orbit, ctx.k(), &[&q])?;
    let p_new = gen_chart_base(rng, &ctx.orbit, ctx.k(), &[&q])?;
    let moved = transition(alg, &phi(alg, &p, &q)?, &p_new)?;
    Ok(moved.coordinate.dist(&phi(alg, &p_new, &q)?.coordinate))
}

fn sigma_supports(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let q = gen_projection(rng, &ctx.orbit, ctx.k())?;
    let p = gen_chart_base(rng, &ctx.orbit, ctx.k(), &[&q])?;
    let s = sigma(alg, &p, &q)?;
    Ok(s.l().dist(&q).max(s.r().dist(&p)))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "lattice", name: "chart_round_trip", statement: "phi_p^-1(phi_p(q)) = q", tolerance: |c| c.tol_eq, check: phi_round_trip },
        Property { suite: "lattice", name: "chart_inverse_round_trip", statement: "phi_p(phi_p^-1(y)) = y", tolerance: |c| c.tol_eq, check: phi_inverse_round_trip },
        Property { suite: "lattice", name: "mobius_transition", statement: "(b + d y)(a + c y)^-1 = phi_p'(q)", tolerance: |c| 10.0 * c.tol_eq, check: mobius_transition },
        Property { suite: "lattice", name: "sigma_supports", statement: "l(sigma_p(q)) = q and r(sigma_p(q)) = p", tolerance: |c| c.tol_eq, check: sigma_supports },
    ]
}
