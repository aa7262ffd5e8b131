//! The Grassmannian in Dirac matrix elements against the general module
//! formulas, on random `(D, N)`.

use wstar_core::algebroid::{bracket_chart, field_from_section, to_chart_field, FrameField, LinearField};
use wstar_core::bundle::frame_chart;
use wstar_core::grassmann::{
    dirac_operator, dirac_supports, embed_y, field_columns, gram_polar, matrix_elements, matrixelement_anchor, matrixelement_bracket,
    multiindex_coordinates, DiracFrame, MultiIndexChart,
};
use wstar_core::wstar::polar_decompose;
use wstar_core::{Frame, LatticeOrbit, Operator};

use crate::gen::{gen_columns, gen_operator, gen_section, Rng64};
use crate::runner::{orbit_for, Ctx, Fail, Property};

use rand::Rng;

/// `D` in `3..=8`, `N` in `1..=min(3, D - 1)`.
fn draw(ctx: &Ctx, rng: &mut Rng64) -> Result<(LatticeOrbit<f64>, DiracFrame<f64>), Fail> {
    let d = rng.random_range(3..=8usize);
    let n = rng.random_range(1..=3usize.min(d - 1));
    let o = orbit_for(&ctx.cfg, d, n);
    let f = DiracFrame::new(&o, gen_columns(rng, d, n))?;
    Ok((o, f))
}

fn cmax(m: nalgebra::DMatrix<wstar_core::Cx<f64>>) -> f64 {
    if m.is_empty() {
        0.0
    } else {
        m.camax()
    }
}

fn polar(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let (o, f) = draw(ctx, rng)?;
    let n = f.n();
    let (u, m) = gram_polar(&f);
    let pd = polar_decompose(o.algebra(), &f.to_operator())?;
    let du = cmax(u - pd.u.matrix().columns(0, n));
    let dm = cmax(m - pd.modulus.matrix().view((0, 0), (n, n)));
    Ok(du.max(dm))
}

fn supports(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let (o, f) = draw(ctx, rng)?;
    let xi = gen_columns(rng, f.d(), f.n());
    let (l, r) = dirac_supports(&o, f.columns(), &xi)?;
    let pd = polar_decompose(o.algebra(), &dirac_operator(f.columns(), &xi))?;
    Ok(cmax((l - pd.l_support.matrix()).into_matrix()).max(cmax((r - pd.r_support.matrix()).into_matrix())))
}

fn coordinates(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let (o, f) = draw(ctx, rng)?;
    let c = MultiIndexChart::best_for(&f);
    let k = multiindex_coordinates(&o, &c, &f)?;
    let gen = frame_chart(&o, &c.projection(), &Frame::new(&o, f.to_operator())?)?;
    let dy = cmax((embed_y(&c, &k.y) - &gen.y.coordinate).into_matrix());
    let z_gen = gen.z.matrix().select_rows(c.indices().iter()).columns(0, f.n()).into_owned();
    Ok(dy.max(cmax(z_gen - k.z)))
}

/// Chart data at the frame: base `p`, `lambda = p eta` and `y`.
fn chart_at(o: &LatticeOrbit<f64>, f: &DiracFrame<f64>) -> Result<(MultiIndexChart, Operator<f64>, Operator<f64>), Fail> {
    let c = MultiIndexChart::best_for(f);
    let k = multiindex_coordinates(o, &c, f)?;
    let lambda = c.projection::<f64>().matrix() * f.to_operator();
    let y = embed_y(&c, &k.y);
    Ok((c, lambda, y))
}

fn bracket(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let (o, f) = draw(ctx, rng)?;
    let (c, lambda, y) = chart_at(&o, &f)?;
    let p = c.projection::<f64>();
    let l1 = LinearField { a: gen_operator(rng, f.d(), 1.0) };
    let s2 = field_from_section(gen_section(rng, f.d()));
    let c1 = to_chart_field(&l1, p.clone(), lambda.clone());
    let c2 = to_chart_field(&s2, p, lambda);
    let me = matrixelement_bracket(&o, &c, &c1, &c2, &y)?;
    let gen = matrix_elements(&o, &c, &bracket_chart(&c1, &c2), &y)?;
    let scale = 1.0 + cmax(gen.a.clone()).max(cmax(gen.b.clone()));
    Ok(me.dist(&gen) / scale)
}

fn anchor(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let (o, f) = draw(ctx, rng)?;
    let (c, lambda, y) = chart_at(&o, &f)?;
    let field = field_from_section(gen_section(rng, f.d()));
    let theta = field.value(&o, &f.to_operator())?;
    let an = matrixelement_anchor(&o, &c, &f, &field_columns(&o, &theta))?;
    let gen = matrix_elements(&o, &c, &to_chart_field(&field, c.projection(), lambda), &y)?;
    let scale = 1.0 + cmax(gen.a.clone()).max(cmax(gen.b.clone()));
    Ok(an.dist(&gen) / scale)
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "grassmann", name: "polar", statement: "Gram-matrix polar data equal the operator polar decomposition", tolerance: |c| c.tol_embed, check: polar },
        Property { suite: "grassmann", name: "supports", statement: "projectors of the vector families equal l(x) and r(x)", tolerance: |c| c.tol_embed, check: supports },
        Property { suite: "grassmann", name: "coordinates", statement: "multi-index coordinates equal the module chart (y, z)", tolerance: |c| c.tol_embed, check: coordinates },
        Property { suite: "grassmann", name: "bracket", statement: "matrix-element bracket equals the chart bracket entrywise, relative", tolerance: |c| c.tol_embed, check: bracket },
        Property { suite: "grassmann", name: "anchor", statement: "matrix-element anchor equals the chart field entrywise, relative", tolerance: |c| c.tol_embed, check: anchor },
    ]
}
