//! Derivations of the frame algebroid, their linear lifts, the trivial
//! groupoid with its quotients, and bisection flows.

use std::sync::Arc;

use wstar_core::algebroid::{bracket_flat, field_from_section, FrameField, FramePoly, PolySection};
use wstar_core::derivations::{
    anchor_law_residual, bisection_equivariance, commutator_residual, derivation_apply, derivation_bracket, equivariance_residuals,
    flow_derivative_residual, group_law_residual, leibniz_residual, lift_bracket_residuals, mod_automorphism_element, quotient_class,
    quotient_pair_example, regauge, tangent_lift, trivial_compose, Analytic, BisectionFamily, Composed, CornerSpace, Derivation, DynField,
    Endo, ExpBisection, ExpFamily, LeftSectionTheta, RightExpBisection, RightExpFamily, TrivialArrow, VectorField,
};
use wstar_core::{Cx, Frame, Operator};

use crate::gen::{gaussian_matrix, gen_frame, gen_holomorphic, gen_operator, gen_scalar, gen_section, gen_structure, uniform, Rng64};
use crate::runner::{Ctx, Fail, Property};

fn corner(ctx: &Ctx, x: Operator<f64>) -> Operator<f64> {
    let p0 = ctx.orbit.p0().matrix();
    p0 * x * p0
}

/// A non-equivariant test field `A eta B + C eta eta* D eta E`.
fn gen_z(ctx: &Ctx, rng: &mut Rng64) -> DynField<f64> {
    let n = ctx.n();
    let poly = FramePoly {
        a: gen_operator(rng, n, 1.0),
        b: corner(ctx, gen_operator(rng, n, 1.0)),
        c: gen_operator(rng, n, 0.5),
        d: gen_operator(rng, n, 0.5),
        e: corner(ctx, gen_operator(rng, n, 1.0)),
    };
    Arc::new(Analytic(poly))
}

/// `identity + small` on `M p0`, invertible.
fn gen_endo(ctx: &Ctx, rng: &mut Rng64, scale: f64) -> Endo<f64> {
    let space = CornerSpace::new(&ctx.orbit);
    let d = space.dim();
    let noise = gaussian_matrix(rng, d, d) * Cx::new(scale / (d as f64).sqrt(), 0.0);
    Endo::from_matrix(Endo::identity(&space).matrix.matrix().clone() + noise)
}

/// Tangent lift of a holomorphic field.
fn gen_lift(ctx: &Ctx, rng: &mut Rng64) -> Derivation<f64> {
    tangent_lift(gen_holomorphic(rng, ctx.n()), ctx.cfg.fd_step)
}

/// Section field with `Theta = L_{S(l(eta))}`.
fn gen_section_derivation(ctx: &Ctx, rng: &mut Rng64) -> Derivation<f64> {
    let field = Arc::new(Analytic(field_from_section(gen_section(rng, ctx.n()))));
    let theta = Arc::new(LeftSectionTheta(PolySection::<f64>::new(vec![vec![gen_operator(rng, ctx.n(), 1.0)], vec![gen_operator(rng, ctx.n(), 1.0), gen_operator(rng, ctx.n(), 1.0)]])));
    Derivation::new(field, theta, ctx.cfg.fd_step)
}

/// Vertical flow `eta -> eta exp(t m)` with its commutator cocycle.
fn gen_vertical(ctx: &Ctx, rng: &mut Rng64) -> RightExpFamily<f64> {
    RightExpFamily { m: corner(ctx, gen_operator(rng, ctx.n(), 0.5)) }
}

fn pair(ctx: &Ctx, rng: &mut Rng64) -> (Derivation<f64>, Derivation<f64>) {
    (gen_lift(ctx, rng), gen_section_derivation(ctx, rng))
}

fn commutator_identity(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let (d1, d2) = pair(ctx, rng);
    let z = gen_z(ctx, rng);
    let scale = 1.0 + derivation_apply(&derivation_bracket(&d1, &d2), z.clone()).value(o, &eta)?.norm();
    Ok(commutator_residual(o, &d1, &d2, z, &eta)? / scale)
}

fn lift_sample(ctx: &Ctx, rng: &mut Rng64) -> Result<wstar_core::derivations::LiftBracketResiduals<f64>, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let (d1, d2) = pair(ctx, rng);
    let v = gen_operator(rng, ctx.n(), 1.0) * o.p0().matrix();
    Ok(lift_bracket_residuals(o, &d1, &d2, &v, &eta)?)
}

/// The literal homomorphism `[X_{D1}, X_{D2}] = X_{[D1, D2]}`.
fn lift_homomorphism(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let r = lift_sample(ctx, rng)?;
    Ok(r.homomorphism / (1.0 + r.magnitude))
}

fn lift_anti_homomorphism(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let r = lift_sample(ctx, rng)?;
    Ok(r.anti_homomorphism / (1.0 + r.magnitude))
}

fn anchor_law(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let (d1, d2) = pair(ctx, rng);
    let scale = 1.0 + derivation_bracket(&d1, &d2).field.value(o, &eta)?.norm();
    Ok(anchor_law_residual(o, &d1, &d2, &eta)? / scale)
}

fn leibniz(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let d = gen_section_derivation(ctx, rng);
    let f = gen_scalar(rng, ctx.n());
    let z = gen_z(ctx, rng);
    let scale = 1.0 + derivation_apply(&d, z.clone()).value(o, &eta)?.norm();
    Ok(leibniz_residual(o, &d, &f, z, &eta)? / scale)
}

fn tangent_lift_bracket(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let f = gen_holomorphic(rng, ctx.n());
    let z = FramePoly {
        a: gen_operator(rng, ctx.n(), 1.0),
        b: corner(ctx, gen_operator(rng, ctx.n(), 1.0)),
        c: gen_operator(rng, ctx.n(), 0.5),
        d: gen_operator(rng, ctx.n(), 0.5),
        e: corner(ctx, gen_operator(rng, ctx.n(), 1.0)),
    };
    let d = tangent_lift(f.clone(), ctx.cfg.fd_step);
    let v = derivation_apply(&d, Arc::new(Analytic(z.clone()))).value(o, &eta)?;
    let expect = -bracket_flat(&f, &z).value(o, &eta)?;
    Ok(v.dist(&expect) / (1.0 + expect.norm()))
}

fn equivariance(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let g = gen_structure(rng, o);
    let ds = [gen_lift(ctx, rng), gen_section_derivation(ctx, rng), gen_vertical(ctx, rng).derivation(o, ctx.cfg.fd_step)];
    let mut worst: f64 = 0.0;
    for d in &ds {
        let (cv, ct) = equivariance_residuals(o, d, &eta, &g)?;
        let scale = 1.0 + d.field.value(o, &eta)?.norm() + d.theta.at(o, &eta)?.norm();
        worst = worst.max(cv.max(ct) / scale);
    }
    Ok(worst)
}

fn bracket_closure(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let g = gen_structure(rng, o);
    let (d1, d2) = pair(ctx, rng);
    let br = derivation_bracket(&d1, &d2);
    let (cv, ct) = equivariance_residuals(o, &br, &eta, &g)?;
    let scale = 1.0 + br.field.value(o, &eta)?.norm() + br.theta.at(o, &eta)?.norm();
    Ok(cv.max(ct) / scale)
}

fn arrow(ctx: &Ctx, rng: &mut Rng64, target: Frame<f64>, source: Frame<f64>) -> Result<TrivialArrow<f64>, Fail> {
    let space = CornerSpace::new(&ctx.orbit);
    let f = gen_structure(rng, &ctx.orbit);
    Ok(TrivialArrow::new(&ctx.orbit, target, Endo::right_mult(&space, &f), source)?)
}

fn quotient_invariance(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let (t, s) = (gen_frame(rng, o)?, gen_frame(rng, o)?);
    let a = arrow(ctx, rng, t, s)?;
    let (h, g) = (gen_structure(rng, o), gen_structure(rng, o));
    let x = quotient_class(o, &a)?;
    let y = quotient_class(o, &regauge(o, &a, &h, &g)?)?;
    Ok(x.op().dist(y.op()) / (1.0 + x.op().norm()))
}

fn quotient_homomorphism(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let alg = o.algebra();
    let (lam, xi, eta) = (gen_frame(rng, o)?, gen_frame(rng, o)?, gen_frame(rng, o)?);
    let a1 = arrow(ctx, rng, lam, xi.clone())?;
    let a2 = arrow(ctx, rng, xi, eta.clone())?;
    let prod = quotient_class(o, &trivial_compose(o, &a1, &a2)?)?;
    let expect = wstar_core::groupoid::compose(alg, &quotient_class(o, &a1)?, &quotient_class(o, &a2)?)?;
    let comp = prod.op().dist(expect.op()) / (1.0 + expect.op().norm());
    let x1 = quotient_class(o, &a1)?;
    let inv = quotient_class(o, &a1.inverse(o)?)?.op().dist(x1.inverse(alg)?.op()) / (1.0 + x1.op().norm());
    let unit = quotient_class(o, &TrivialArrow::unit(o, eta.clone()))?.op().dist(eta.base(o)?.matrix());
    Ok(comp.max(inv).max(unit))
}

/// Misclassified candidates among `R_g`, `L_x R_g` and a generic invertible map.
fn mod_classification(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let space = CornerSpace::new(o);
    let g = gen_structure(rng, o);
    let right = Endo::right_mult(&space, &g);
    let x = wstar_core::Operator::identity(ctx.n()) + gen_operator(rng, ctx.n(), 0.5);
    let mixed = Endo::left_mult(&space, &x).compose(&right);
    let generic = gen_endo(ctx, rng, 0.5);
    let mut wrong = 0.0;
    match mod_automorphism_element(o, &right) {
        Ok(found) if found.dist(&g) <= ctx.cfg.tol_eq * (1.0 + g.norm()) => {}
        _ => wrong += 1.0,
    }
    if mod_automorphism_element(o, &mixed).is_ok() {
        wrong += 1.0;
    }
    if mod_automorphism_element(o, &generic).is_ok() {
        wrong += 1.0;
    }
    Ok(wrong)
}

fn trivial_laws(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let (f1, f2, f3, f4) = (gen_frame(rng, o)?, gen_frame(rng, o)?, gen_frame(rng, o)?, gen_frame(rng, o)?);
    let mk = |rng: &mut Rng64, t: Frame<f64>, s: Frame<f64>| TrivialArrow::new(o, t, gen_endo(ctx, rng, 0.5), s);
    let a = mk(rng, f1, f2.clone())?;
    let b = mk(rng, f2, f3.clone())?;
    let c = mk(rng, f3, f4)?;
    let left = trivial_compose(o, &trivial_compose(o, &a, &b)?, &c)?;
    let right = trivial_compose(o, &a, &trivial_compose(o, &b, &c)?)?;
    let assoc = left.auto.dist(&right.auto) / (1.0 + left.auto.norm());
    let inv = trivial_compose(o, &a, &a.inverse(o)?)?;
    let unit = TrivialArrow::unit(o, a.target.clone());
    let inv_res = inv.auto.dist(&unit.auto).max(inv.source.op().dist(a.target.op()));
    let unit_res = trivial_compose(o, &unit, &a)?.auto.dist(&a.auto);
    Ok(assoc.max(inv_res).max(unit_res))
}

/// Three base points with two frames over each (one point when `k = n`); the residual adds the
/// invariance defect and the table mismatch count.
fn pair_quotient(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let mut frames = Vec::new();
    for _ in 0..3 {
        let eta = gen_frame(rng, o)?;
        let g = gen_structure(rng, o);
        frames.push(Frame::new(o, eta.op() * &g)?);
        frames.push(eta);
    }
    let gauges: Vec<Operator<f64>> = frames.iter().map(|_| gen_structure(rng, o)).collect();
    let r = quotient_pair_example(o, &frames, &gauges)?;
    let mut res = r.invariance + (r.composition_mismatches + r.inverse_mismatches + r.unit_mismatches) as f64;
    let expected = if ctx.k() < ctx.n() { 3 } else { 1 };
    if r.base_points != expected {
        res += 1.0;
    }
    Ok(res)
}

/// `gamma = e^{tA}`, `Gamma = e^{t L_x}`; a constant `Gamma` must commute
/// with every `R_g`, which left multiplications do.
fn exp_family(ctx: &Ctx, rng: &mut Rng64) -> ExpFamily<f64> {
    let space = CornerSpace::new(&ctx.orbit);
    let theta0 = Endo::left_mult(&space, &gen_operator(rng, ctx.n(), 0.5));
    ExpFamily { a: gen_operator(rng, ctx.n(), 0.5), theta0 }
}

fn group_law(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let (t, s) = (uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    let a = group_law_residual(o, &exp_family(ctx, rng), t, s, &eta)?;
    let b = group_law_residual(o, &gen_vertical(ctx, rng), t, s, &eta)?;
    Ok(a.max(b) / (1.0 + eta.norm()))
}

fn flow_derivative(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let h = ctx.cfg.fd_step;
    let eta = gen_frame(rng, o)?.into_op();
    let z = gen_z(ctx, rng);
    let ef = exp_family(ctx, rng);
    let vf = gen_vertical(ctx, rng);
    let se = 1.0 + derivation_apply(&ef.derivation(o, h), z.clone()).value(o, &eta)?.norm();
    let sv = 1.0 + derivation_apply(&vf.derivation(o, h), z.clone()).value(o, &eta)?.norm();
    let a = flow_derivative_residual(o, &ef, z.clone(), &eta, h)? / se;
    let b = flow_derivative_residual(o, &vf, z, &eta, h)? / sv;
    Ok(a.max(b))
}

fn bisection_laws(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let (g1, g2) = (gen_structure(rng, o), gen_structure(rng, o));
    let ef = exp_family(ctx, rng);
    let e: ExpBisection<f64> = ef.at(uniform(rng, -1.0, 1.0));
    let r: RightExpBisection<f64> = gen_vertical(ctx, rng).at(uniform(rng, -1.0, 1.0));
    let mut worst: f64 = 0.0;
    for res in [
        bisection_equivariance(o, &e, &eta, &g1, &g2)?,
        bisection_equivariance(o, &r, &eta, &g1, &g2)?,
        bisection_equivariance(o, &Composed(e.clone(), r.clone()), &eta, &g1, &g2)?,
    ] {
        worst = worst.max(res.iter().cloned().fold(0.0, f64::max));
    }
    Ok(worst / (1.0 + eta.norm()))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "derivations", name: "commutator_identity", statement: "[D1, D2] Z = D1 D2 Z - D2 D1 Z, relative", tolerance: |c| c.tol_jacobi, check: commutator_identity },
        Property { suite: "derivations", name: "lift_homomorphism", statement: "[X_D1, X_D2] = X_[D1, D2] taken literally, relative", tolerance: |c| c.tol_jacobi, check: lift_homomorphism },
        Property { suite: "derivations", name: "lift_anti_homomorphism", statement: "[X_D1, X_D2] = -X_[D1, D2], relative", tolerance: |c| c.tol_jacobi, check: lift_anti_homomorphism },
        Property { suite: "derivations", name: "anchor_law", statement: "a([D1, D2]) = [a(D1), a(D2)] as vector fields, relative", tolerance: |c| c.tol_fd, check: anchor_law },
        Property { suite: "derivations", name: "leibniz", statement: "D(f Z) = f D Z + a(D)(f) Z, relative", tolerance: |c| c.tol_bracket, check: leibniz },
        Property { suite: "derivations", name: "tangent_lift", statement: "the tangent lift acts as Z -> -[X, Z]", tolerance: |c| c.tol_exact, check: tangent_lift_bracket },
        Property { suite: "derivations", name: "equivariance", statement: "theta and Theta transform with the cocycle H", tolerance: |c| c.tol_eq, check: equivariance },
        Property { suite: "derivations", name: "bracket_closure", statement: "[D1, D2] is again equivariant", tolerance: |c| c.tol_fd, check: bracket_closure },
        Property { suite: "derivations", name: "quotient_invariance", statement: "xi f^-1 eta^-1 is unchanged by regauging", tolerance: |c| c.tol_eq, check: quotient_invariance },
        Property { suite: "derivations", name: "quotient_homomorphism", statement: "the quotient respects products, inverses and units", tolerance: |c| c.tol_eq, check: quotient_homomorphism },
        Property { suite: "derivations", name: "mod_classification", statement: "R_g is accepted with its g; L_x R_g and generic maps are rejected", tolerance: |_| 0.0, check: mod_classification },
        Property { suite: "derivations", name: "trivial_groupoid", statement: "associativity, inverse and unit laws of the trivial groupoid", tolerance: |c| c.tol_eq, check: trivial_laws },
        Property { suite: "derivations", name: "pair_quotient", statement: "regauged frame pairs give the pair groupoid of base points", tolerance: |c| c.tol_eq, check: pair_quotient },
        Property { suite: "derivations", name: "bisection_group_law", statement: "sigma_(t+s) = sigma_t sigma_s", tolerance: |c| c.tol_eq, check: group_law },
        Property { suite: "derivations", name: "flow_derivative", statement: "d/dt of the transported field at t = 0 equals D Z", tolerance: |c| c.tol_fd, check: flow_derivative },
        Property { suite: "derivations", name: "bisection_equivariance", statement: "gamma, Gamma and h satisfy the equivariance and cocycle laws", tolerance: |c| c.tol_eq, check: bisection_laws },
    ]
}
