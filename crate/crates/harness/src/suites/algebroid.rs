//! The algebroid bracket in its flat, chart and section forms, with the
//! anchor and Leibniz laws.

use wstar_core::algebroid::{
    anchor, anchor_bracket_exact, anchor_bracket_fd, anchor_value, bracket_chart, bracket_flat, bracket_section, bracket_section_chart,
    equivariance_residual, field_from_section, lattice_flow_velocity, leibniz_check, to_chart_field, ChartField, FrameField, Section,
    SectionField,
};
use wstar_core::algebroid::bracket::chart_reconstruct_field;
use wstar_core::bundle::anchor_element;
use wstar_core::lattice::phi;
use wstar_core::wirtinger::central_difference;
use wstar_core::wstar::polar_decompose;
use wstar_core::algebroid::PolySection;
use wstar_core::{Operator, Projection};

use crate::gen::{gen_chart_base, gen_frame, gen_holomorphic, gen_scalar, gen_section, gen_structure, Rng64};
use crate::runner::{Ctx, Fail, Property};

/// A chart at a random base, a frame in it and its coordinate.
pub(crate) struct ChartSample {
    pub p: Projection<f64>,
    pub lambda: Operator<f64>,
    pub y: Operator<f64>,
    /// The chart frame `(p + y) lambda`.
    pub eta: Operator<f64>,
}

pub(crate) fn chart_sample(ctx: &Ctx, rng: &mut Rng64) -> Result<ChartSample, Fail> {
    let o = &ctx.orbit;
    let alg = o.algebra();
    let eta_ref = gen_frame(rng, o)?;
    let q = gen_frame(rng, o)?.base(o)?;
    let p = gen_chart_base(rng, o, ctx.k(), &[&q, &eta_ref.base(o)?])?;
    let lambda = anchor_element(o, &p, eta_ref.op())?.into_op();
    let y = phi(alg, &p, &q)?.coordinate;
    let eta = (p.matrix() + &y) * &lambda;
    Ok(ChartSample { p, lambda, y, eta })
}

fn rel(a: &Operator<f64>, b: &Operator<f64>) -> f64 {
    a.dist(b) / (1.0 + b.norm())
}

fn two_sections(ctx: &Ctx, rng: &mut Rng64) -> (PolySection<f64>, PolySection<f64>) {
    (gen_section(rng, ctx.n()), gen_section(rng, ctx.n()))
}

fn flat_vs_chart(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let f1 = gen_holomorphic(rng, ctx.n());
    let f2 = field_from_section(gen_section(rng, ctx.n()));
    let flat = bracket_flat(&f1, &f2).value(o, &s.eta)?;
    let c1 = to_chart_field(&f1, s.p.clone(), s.lambda.clone());
    let c2 = to_chart_field(&f2, s.p.clone(), s.lambda.clone());
    let (a, b): (Operator<f64>, Operator<f64>) = bracket_chart(&c1, &c2).eval(o, &s.y)?;
    Ok(rel(&chart_reconstruct_field(&s.p, &s.y, &s.lambda, &a, &b), &flat))
}

fn flat_vs_section(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let (x1, x2) = two_sections(ctx, rng);
    let flat = bracket_flat(SectionField::new(&x1), SectionField::new(&x2)).value(o, &s.eta)?;
    let q = polar_decompose(o.algebra(), &s.eta)?.l_support;
    let x: Operator<f64> = bracket_section(&x1, &x2, s.lambda.clone()).eval(o, &q.matrix().clone())?;
    Ok(rel(&(x * &s.eta), &flat))
}

fn chart_vs_section(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let (x1, x2) = two_sections(ctx, rng);
    let c1 = to_chart_field(SectionField::new(&x1), s.p.clone(), s.lambda.clone());
    let c2 = to_chart_field(SectionField::new(&x2), s.p.clone(), s.lambda.clone());
    let (a, b): (Operator<f64>, Operator<f64>) = bracket_chart(&c1, &c2).eval(o, &s.y)?;
    let chart = chart_reconstruct_field(&s.p, &s.y, &s.lambda, &a, &b);
    let x: Operator<f64> = bracket_section_chart(o, &x1, &x2, &s.p, &s.y)?;
    Ok(rel(&chart, &(x * &s.eta)))
}

fn section_vs_section_chart(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let (x1, x2) = two_sections(ctx, rng);
    let q = polar_decompose(o.algebra(), &s.eta)?.l_support;
    let direct: Operator<f64> = bracket_section(&x1, &x2, s.lambda.clone()).eval(o, &q.matrix().clone())?;
    let chart: Operator<f64> = bracket_section_chart(o, &x1, &x2, &s.p, &s.y)?;
    Ok(rel(&chart, &direct))
}

fn wirtinger_form(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let f1 = gen_holomorphic(rng, ctx.n());
    let f2 = field_from_section(gen_section(rng, ctx.n()));
    let b = bracket_flat(&f1, &f2);
    Ok(rel(&b.value_wirtinger(o, &eta)?, &b.value(o, &eta)?))
}

fn finite_difference(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let h = ctx.cfg.fd_step;
    let eta = gen_frame(rng, o)?.into_op();
    let (x1, x2) = two_sections(ctx, rng);
    let (f1, f2) = (field_from_section(&x1), field_from_section(&x2));
    let (t1, t2) = (f1.value(o, &eta)?, f2.value(o, &eta)?);
    let d2 = central_difference(|e| f2.value(o, e), &eta, &t1, h)?;
    let d1 = central_difference(|e| f1.value(o, e), &eta, &t2, h)?;
    Ok(rel(&(d2 - d1), &bracket_flat(&f1, &f2).value(o, &eta)?))
}

fn antisymmetry(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let f1 = gen_holomorphic(rng, ctx.n());
    let f2 = field_from_section(gen_section(rng, ctx.n()));
    let a = bracket_flat(&f1, &f2).value(o, &eta)?;
    let b = bracket_flat(&f2, &f1).value(o, &eta)?;
    Ok((&a + &b).norm() / (1.0 + a.norm()))
}

fn jacobi(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let f1 = field_from_section(gen_section(rng, ctx.n()));
    let f2 = field_from_section(gen_section(rng, ctx.n()));
    let f3 = gen_holomorphic(rng, ctx.n());
    let a = bracket_flat(&f1, bracket_flat(&f2, &f3)).value(o, &eta)?;
    let b = bracket_flat(&f2, bracket_flat(&f3, &f1)).value(o, &eta)?;
    let c = bracket_flat(&f3, bracket_flat(&f1, &f2)).value(o, &eta)?;
    let scale = 1.0 + a.norm().max(b.norm()).max(c.norm());
    Ok((a + b + c).norm() / scale)
}

fn leibniz(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let f1 = field_from_section(gen_section(rng, ctx.n()));
    let f2 = gen_holomorphic(rng, ctx.n());
    let func = gen_scalar(rng, ctx.n());
    let r = leibniz_check(o, &f1, &f2, &func, &s.p, &s.lambda, &s.eta)?;
    Ok(r / (1.0 + bracket_flat(&f1, &f2).value(o, &s.eta)?.norm()))
}

fn anchor_homomorphism(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let f1 = field_from_section(gen_section(rng, ctx.n()));
    let f2 = gen_holomorphic(rng, ctx.n());
    let c1 = anchor(&f1, s.p.clone(), s.lambda.clone());
    let c2 = anchor(&f2, s.p.clone(), s.lambda.clone());
    let of_bracket = anchor_value(o, &anchor(bracket_flat(&f1, &f2), s.p.clone(), s.lambda.clone()), &s.y)?;
    let fd = anchor_bracket_fd(o, &c1, &c2, &s.y, ctx.cfg.fd_step)?;
    Ok(rel(&fd, &of_bracket))
}

fn anchor_homomorphism_exact(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let f1 = field_from_section(gen_section(rng, ctx.n()));
    let f2 = gen_holomorphic(rng, ctx.n());
    let c1 = anchor(&f1, s.p.clone(), s.lambda.clone());
    let c2 = anchor(&f2, s.p.clone(), s.lambda.clone());
    let of_bracket = anchor_value(o, &anchor(bracket_flat(&f1, &f2), s.p.clone(), s.lambda.clone()), &s.y)?;
    Ok(rel(&anchor_bracket_exact(o, &c1, &c2, &s.y)?, &of_bracket))
}

fn anchor_is_tl(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let s = chart_sample(ctx, rng)?;
    let f = field_from_section(gen_section(rng, ctx.n()));
    let theta = f.value(o, &s.eta)?;
    let v = anchor_value(o, &anchor(&f, s.p.clone(), s.lambda.clone()), &s.y)?;
    let fd = lattice_flow_velocity(o, &s.p, |t| Ok(&s.eta + theta.scale_real(t)), ctx.cfg.fd_step)?;
    Ok(rel(&fd, &v))
}

fn equivariance(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?.into_op();
    let g = gen_structure(rng, o);
    let f1 = field_from_section(gen_section(rng, ctx.n()));
    let f2 = gen_holomorphic(rng, ctx.n());
    let b = bracket_flat(&f1, &f2);
    let r = equivariance_residual(o, &f1, &eta, &g)?
        .max(equivariance_residual(o, &f2, &eta, &g)?)
        .max(equivariance_residual(o, &b, &eta, &g)?);
    Ok(r / (1.0 + b.value(o, &eta)?.norm()))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "algebroid", name: "flat_vs_chart", statement: "flat bracket equals a z + (p + y) b z from the chart bracket", tolerance: |c| c.tol_bracket, check: flat_vs_chart },
        Property { suite: "algebroid", name: "flat_vs_section", statement: "flat bracket of section fields equals [X1, X2] eta", tolerance: |c| c.tol_bracket, check: flat_vs_section },
        Property { suite: "algebroid", name: "chart_vs_section", statement: "chart bracket of section fields equals [X1, X2] eta", tolerance: |c| c.tol_bracket, check: chart_vs_section },
        Property { suite: "algebroid", name: "section_vs_section_chart", statement: "section bracket agrees with its chart form", tolerance: |c| c.tol_bracket, check: section_vs_section_chart },
        Property { suite: "algebroid", name: "wirtinger_form", statement: "bracket from the four Wirtinger pairings equals the flat bracket", tolerance: |c| c.tol_exact, check: wirtinger_form },
        Property { suite: "algebroid", name: "finite_difference", statement: "central-difference bracket matches the exact bracket", tolerance: |c| c.tol_fd, check: finite_difference },
        Property { suite: "algebroid", name: "antisymmetry", statement: "[X1, X2] + [X2, X1] = 0", tolerance: |c| c.tol_exact, check: antisymmetry },
        Property { suite: "algebroid", name: "jacobi", statement: "cyclic sum of nested brackets vanishes", tolerance: |c| c.tol_jacobi, check: jacobi },
        Property { suite: "algebroid", name: "leibniz", statement: "[X1, f X2] = f [X1, X2] + a(X1)(f) X2", tolerance: |c| c.tol_bracket, check: leibniz },
        Property { suite: "algebroid", name: "anchor_homomorphism", statement: "a([X1, X2]) = [a(X1), a(X2)] with the right side by central differences", tolerance: |c| c.tol_fd, check: anchor_homomorphism },
        Property { suite: "algebroid", name: "anchor_homomorphism_exact", statement: "a([X1, X2]) = [a(X1), a(X2)] with exact derivatives", tolerance: |c| c.tol_bracket, check: anchor_homomorphism_exact },
        Property { suite: "algebroid", name: "anchor_is_tangent_map", statement: "a_p(y) is the velocity of phi_p(l(eta + t theta))", tolerance: |c| c.tol_fd, check: anchor_is_tl },
        Property { suite: "algebroid", name: "equivariance", statement: "theta(eta g) = theta(eta) g for the fields and their bracket", tolerance: |c| c.tol_eq, check: equivariance },
    ]
}
