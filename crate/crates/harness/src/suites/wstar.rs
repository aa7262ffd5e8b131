//! Polar decomposition, supports and the partial inverse.

use wstar_core::wstar::{partial_inverse, polar_decompose, verify_inverse_characterization};
use wstar_core::Operator;

use crate::gen::{gaussian, gen_groupoid_element, gen_operator, gen_projection, uniform, Rng64};
use crate::runner::{Ctx, Fail, Property};

fn polar(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let pd = polar_decompose(ctx.orbit.algebra(), x.op())?;
    Ok((&pd.u * &pd.modulus).dist(x.op()))
}

fn partial_isometry(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let pd = polar_decompose(ctx.orbit.algebra(), x.op())?;
    let a = (pd.u.adjoint() * &pd.u).dist(pd.r_support.matrix());
    let b = (&pd.u * pd.u.adjoint()).dist(pd.l_support.matrix());
    Ok(a.max(b))
}

fn inverse_right(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let y = partial_inverse(ctx.orbit.algebra(), x.op())?;
    Ok((&y * x.op()).dist(x.r().matrix()))
}

fn inverse_left(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let y = partial_inverse(ctx.orbit.algebra(), x.op())?;
    Ok((x.op() * &y).dist(x.l().matrix()))
}

/// Ten perturbations of the inverse; the residual counts the accepted ones.
fn inverse_uniqueness(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let alg = ctx.orbit.algebra();
    let x = gen_groupoid_element(rng, &ctx.orbit, ctx.k())?;
    let y = partial_inverse(alg, x.op())?;
    if !verify_inverse_characterization(alg, x.op(), &y) {
        return Err(Fail("the computed inverse fails its own characterisation".into()));
    }
    let mut accepted = 0;
    for _ in 0..10 {
        let size = 10f64.powf(uniform(rng, -4.0, -1.0));
        let d: Operator<f64> = gen_operator(rng, ctx.n(), size);
        if verify_inverse_characterization(alg, x.op(), &(&y + &d)) {
            accepted += 1;
        }
    }
    Ok(accepted as f64)
}

fn projection_generator(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let k = 1 + (gaussian(rng).abs() as usize) % ctx.n();
    let p = gen_projection(rng, &ctx.orbit, k)?;
    let m = p.matrix();
    let rank_err = if p.rank() == k { 0.0 } else { 1.0 };
    Ok(((m * m).dist(m)).max(m.adjoint().dist(m)).max(rank_err))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "wstar", name: "polar_reconstruction", statement: "u |x| = x", tolerance: |c| c.tol_eq, check: polar },
        Property { suite: "wstar", name: "polar_partial_isometry", statement: "u* u = r(x) and u u* = l(x)", tolerance: |c| c.tol_eq, check: partial_isometry },
        Property { suite: "wstar", name: "inverse_right", statement: "x^-1 x = r(x)", tolerance: |c| c.tol_eq, check: inverse_right },
        Property { suite: "wstar", name: "inverse_left", statement: "x x^-1 = l(x)", tolerance: |c| c.tol_eq, check: inverse_left },
        Property {
            suite: "wstar",
            name: "inverse_uniqueness",
            statement: "perturbed candidates fail the inverse characterisation (count accepted)",
            tolerance: |_| 0.0,
            check: inverse_uniqueness,
        },
        Property { suite: "wstar", name: "projection_generator", statement: "generated projections are hermitian idempotents of the requested rank", tolerance: |c| c.tol_eq, check: projection_generator },
    ]
}
