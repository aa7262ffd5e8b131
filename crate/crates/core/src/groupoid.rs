//! The groupoid `G_{p0}(M) => L_{p0}(M)` of partially invertible elements:
//! arrows are operators `x` with source `r(x)` and target `l(x)`, composed by
//! the algebra product.
//!
//! Its charts are `psi(x) = (phi_t(l(x)), sigma_t(l(x))^{-1} x sigma_s(r(x)), phi_s(r(x)))`
//! with inverse `(y_t, z, y_s) -> (p_t + y_t) z (p_s + y_s)^{-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{phi, transition, ChartPoint};
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wstar::{corner_inverse, partial_inverse, polar_decompose, spectrum, Algebra, PolarData, Projection};

/// A partially invertible operator with its polar data cached.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupoidElement<T: Real> {
    op: Operator<T>,
    polar: PolarData<T>,
}

impl<T: Real> GroupoidElement<T> {
    pub fn new(alg: &Algebra<T>, op: Operator<T>) -> Result<Self> {
        let (_, rep) = spectrum(alg, &op)?;
        if let Some(ratio) = rep.borderline {
            return Err(Error::BorderlineSpectrum { ratio });
        }
        let polar = polar_decompose(alg, &op)?;
        Ok(GroupoidElement { op, polar })
    }

    /// Wraps a projection as the unit arrow at `p`.
    pub fn unit(p: &Projection<T>) -> Self {
        let m = p.matrix().clone();
        GroupoidElement {
            op: m.clone(),
            polar: PolarData { u: m.clone(), modulus: m, l_support: p.clone(), r_support: p.clone() },
        }
    }

    pub fn op(&self) -> &Operator<T> {
        &self.op
    }

    pub fn into_op(self) -> Operator<T> {
        self.op
    }

    pub fn polar(&self) -> &PolarData<T> {
        &self.polar
    }

    /// Target `l(x)`.
    pub fn l(&self) -> &Projection<T> {
        &self.polar.l_support
    }

    /// Source `r(x)`.
    pub fn r(&self) -> &Projection<T> {
        &self.polar.r_support
    }

    /// Groupoid inverse `x^{-1} = |x|^{-1} u*`.
    pub fn inverse(&self, alg: &Algebra<T>) -> Result<Self> {
        GroupoidElement::new(alg, partial_inverse(alg, &self.op)?)
    }
}

impl<T: Real> Serialize for GroupoidElement<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.op.serialize(s)
    }
}

/// `xy`, defined when `r(x) = l(y)`.
pub fn compose<T: Real>(alg: &Algebra<T>, x: &GroupoidElement<T>, y: &GroupoidElement<T>) -> Result<GroupoidElement<T>> {
    let gap = x.r().dist(y.l());
    if gap > alg.tol_eq() {
        return Err(Error::NonComposable(gap.as_f64()));
    }
    GroupoidElement::new(alg, x.op() * y.op())
}

/// `J(x) = (x*)^{-1}`.
pub fn involution<T: Real>(alg: &Algebra<T>, x: &GroupoidElement<T>) -> Result<GroupoidElement<T>> {
    GroupoidElement::new(alg, partial_inverse(alg, &x.op().adjoint())?)
}

/// `|x^*x - r(x)| <= tol_eq`.
pub fn is_partial_isometry<T: Real>(alg: &Algebra<T>, x: &GroupoidElement<T>) -> bool {
    (x.op().adjoint() * x.op()).dist(x.r().matrix()) <= alg.tol_eq()
}

/// A point `(y_t, z, y_s)` of the chart `Omega_{p_t p_s}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct GroupoidChartPoint<T: Real> {
    pub target: ChartPoint<T>,
    pub z: Operator<T>,
    pub source: ChartPoint<T>,
}

impl<T: Real> GroupoidChartPoint<T> {
    pub fn p_target(&self) -> &Projection<T> {
        &self.target.base
    }

    pub fn p_source(&self) -> &Projection<T> {
        &self.source.base
    }
}

pub fn groupoid_chart<T: Real>(
    alg: &Algebra<T>,
    p_t: &Projection<T>,
    p_s: &Projection<T>,
    x: &GroupoidElement<T>,
) -> Result<GroupoidChartPoint<T>> {
    let target = phi(alg, p_t, x.l())?;
    let source = phi(alg, p_s, x.r())?;
    let st_inv = partial_inverse(alg, &target.lift())?;
    let z = st_inv * x.op() * source.lift();
    Ok(GroupoidChartPoint { target, z, source })
}

/// `(p_t + y_t) z (p_s + y_s)^{-1}`.
pub fn chart_reconstruct<T: Real>(alg: &Algebra<T>, pt: &GroupoidChartPoint<T>) -> Result<GroupoidElement<T>> {
    let ss_inv = partial_inverse(alg, &pt.source.lift())?;
    GroupoidElement::new(alg, pt.target.lift() * &pt.z * ss_inv)
}

/// Change of charts: Möbius laws on both `y`'s and
/// `z' = (p_t' + y_t')^{-1} (p_t + y_t) z (p_s + y_s)^{-1} (p_s' + y_s')`.
pub fn groupoid_chart_transition<T: Real>(
    alg: &Algebra<T>,
    old: &GroupoidChartPoint<T>,
    p_t_new: &Projection<T>,
    p_s_new: &Projection<T>,
) -> Result<GroupoidChartPoint<T>> {
    let target = transition(alg, &old.target, p_t_new)?;
    let source = transition(alg, &old.source, p_s_new)?;
    let t_new_inv = partial_inverse(alg, &target.lift())?;
    let s_old_inv = partial_inverse(alg, &old.source.lift())?;
    let z = t_new_inv * old.target.lift() * &old.z * s_old_inv * source.lift();
    Ok(GroupoidChartPoint { target, z, source })
}

/// The involution `J` in chart coordinates: the `y`'s are unchanged and
/// `z -> ((p_t+y_t)^*(p_t+y_t))^{-1} (z^*)^{-1} (p_s+y_s)^*(p_s+y_s)`.
pub fn involution_in_coordinates<T: Real>(alg: &Algebra<T>, pt: &GroupoidChartPoint<T>) -> Result<GroupoidChartPoint<T>> {
    let a = pt.target.lift();
    let b = pt.source.lift();
    let gram_t = corner_inverse(alg, pt.p_target(), &(a.adjoint() * &a))?;
    let z_adj_inv = partial_inverse(alg, &pt.z.adjoint())?;
    let z = gram_t * z_adj_inv * b.adjoint() * &b;
    Ok(GroupoidChartPoint { target: pt.target.clone(), z, source: pt.source.clone() })
}
