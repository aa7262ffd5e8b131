//! Exactness of the Atiyah sequence at random frames.

use wstar_core::algebroid::atiyah_exactness;

use crate::gen::{gen_chart_base, gen_frame, Rng64};
use crate::runner::{Ctx, Fail, Property};

/// Sum of the absolute rank defects.
fn dimensions(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let (n, k) = (ctx.n(), ctx.k());
    let eta = gen_frame(rng, o)?;
    let p = gen_chart_base(rng, o, k, &[&eta.base(o)?])?;
    let r = atiyah_exactness(o, &p, eta.op())?;
    let defect = |got: usize, want: usize| got.abs_diff(want) as f64;
    Ok(defect(r.iota_rank, k * k) + defect(r.anchor_rank, k * (n - k)) + defect(r.kernel_dim, k * k) + defect(r.total_dim, n * k))
}

fn containment(ctx: &Ctx, rng: &mut Rng64) -> Result<f64, Fail> {
    let o = &ctx.orbit;
    let eta = gen_frame(rng, o)?;
    let p = gen_chart_base(rng, o, ctx.k(), &[&eta.base(o)?])?;
    Ok(atiyah_exactness(o, &p, eta.op())?.containment)
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { suite: "atiyah", name: "dimensions", statement: "ranks k^2, k(n-k), k^2 and nk; residual counts rank defects", tolerance: |_| 0.0, check: dimensions },
        Property { suite: "atiyah", name: "containment", statement: "anchor o iota = 0, relative", tolerance: |c| c.tol_eq, check: containment },
    ]
}
