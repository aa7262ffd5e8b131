//! The principal bundle `P0 -> L_{p0}(M)` of frames with structure group
//! `G0 = G(p0 M p0)`, its unitary reduction, frame charts, trivialisations,
//! cocycles and the gauge groupoid isomorphisms `<eta, xi> -> eta xi^{-1}`
//! and `<eta, xi> -> eta xi^*`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::GroupoidElement;
use crate::lattice::{phi, transition, ChartPoint, LatticeOrbit};
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wstar::{corner_inverse, hermitian_corner_power, inverse_between, partial_inverse, polar_decompose, Projection};

/// A frame `eta = eta p0` with `r(eta) = p0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frame<T: Real> {
    eta: Operator<T>,
}

impl<T: Real> Frame<T> {
    pub fn new(orbit: &LatticeOrbit<T>, eta: Operator<T>) -> Result<Self> {
        let alg = orbit.algebra();
        let p0 = orbit.p0();
        let leak = (&eta * p0.complement().matrix()).norm();
        if leak > alg.tol_eq() {
            return Err(Error::InvalidInput(format!("frame is not supported in p0 (residual {:e})", leak.as_f64())));
        }
        corner_inverse(alg, p0, &(eta.adjoint() * &eta))?;
        Ok(Frame { eta })
    }

    pub fn op(&self) -> &Operator<T> {
        &self.eta
    }

    pub fn into_op(self) -> Operator<T> {
        self.eta
    }

    /// The base point `l(eta)`.
    pub fn base(&self, orbit: &LatticeOrbit<T>) -> Result<Projection<T>> {
        Ok(polar_decompose(orbit.algebra(), &self.eta)?.l_support)
    }

    pub fn is_unitary(&self, orbit: &LatticeOrbit<T>) -> bool {
        unitary_residual(orbit, &self.eta) <= orbit.algebra().tol_eq()
    }
}

/// `|eta^* eta - p0|`.
pub fn unitary_residual<T: Real>(orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> T {
    (eta.adjoint() * eta).dist(orbit.p0().matrix())
}

/// An element of `G0`, invertible in `p0 M p0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureGroupElement<T: Real> {
    g: Operator<T>,
}

impl<T: Real> StructureGroupElement<T> {
    pub fn new(orbit: &LatticeOrbit<T>, g: Operator<T>) -> Result<Self> {
        let p0 = orbit.p0().matrix();
        let leak = (&g - p0 * &g * p0).norm();
        if leak > orbit.algebra().tol_eq() {
            return Err(Error::InvalidInput(format!("element leaves p0 M p0 (residual {:e})", leak.as_f64())));
        }
        corner_inverse(orbit.algebra(), orbit.p0(), &g)?;
        Ok(StructureGroupElement { g })
    }

    pub fn identity(orbit: &LatticeOrbit<T>) -> Self {
        StructureGroupElement { g: orbit.p0().matrix().clone() }
    }

    pub fn op(&self) -> &Operator<T> {
        &self.g
    }

    pub fn inverse(&self, orbit: &LatticeOrbit<T>) -> Result<Self> {
        Ok(StructureGroupElement { g: corner_inverse(orbit.algebra(), orbit.p0(), &self.g)? })
    }

    pub fn is_unitary(&self, orbit: &LatticeOrbit<T>) -> bool {
        unitary_residual(orbit, &self.g) <= orbit.algebra().tol_eq()
    }

    /// Factorisation `g = u |g|` into a unitary and a positive element of `p0 M p0`.
    pub fn polar_parts(&self, orbit: &LatticeOrbit<T>) -> Result<(Self, Self)> {
        let pd = polar_decompose(orbit.algebra(), &self.g)?;
        Ok((StructureGroupElement { g: pd.u }, StructureGroupElement { g: pd.modulus }))
    }
}

/// `eta g`.
pub fn right_action<T: Real>(eta: &Frame<T>, g: &StructureGroupElement<T>) -> Frame<T> {
    Frame { eta: eta.op() * g.op() }
}

/// Frame chart coordinates `y = (1-p) eta (p eta)^{-1}`, `z = p eta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct FrameChartPoint<T: Real> {
    pub y: ChartPoint<T>,
    pub z: Operator<T>,
}

impl<T: Real> FrameChartPoint<T> {
    pub fn base(&self) -> &Projection<T> {
        &self.y.base
    }

    /// `eta = (p + y) z`.
    pub fn reconstruct(&self) -> Operator<T> {
        self.y.lift() * &self.z
    }
}

/// `(p eta)^{-1}`, mapping `range(p)` onto `range(p0)`.
fn p_eta_inverse<T: Real>(orbit: &LatticeOrbit<T>, p: &Projection<T>, eta: &Operator<T>) -> Result<Operator<T>> {
    inverse_between(orbit.algebra(), p, orbit.p0(), eta).map_err(|_| Error::ChartDomain)
}

pub fn frame_chart<T: Real>(orbit: &LatticeOrbit<T>, p: &Projection<T>, eta: &Frame<T>) -> Result<FrameChartPoint<T>> {
    let inv = p_eta_inverse(orbit, p, eta.op())?;
    let y = p.complement().matrix() * eta.op() * inv;
    Ok(FrameChartPoint { y: ChartPoint { base: p.clone(), coordinate: y }, z: p.matrix() * eta.op() })
}

/// `y` by the Möbius law and `z' = (p' + y')^{-1} (p + y) z`.
pub fn frame_transition<T: Real>(
    orbit: &LatticeOrbit<T>,
    pt: &FrameChartPoint<T>,
    p_new: &Projection<T>,
) -> Result<FrameChartPoint<T>> {
    let alg = orbit.algebra();
    let y = transition(alg, &pt.y, p_new)?;
    let z = partial_inverse(alg, &y.lift())? * pt.y.lift() * &pt.z;
    Ok(FrameChartPoint { y, z })
}

/// Anchor element `lambda_{p p0}`: the partial isometry of `p eta_ref`, mapping
/// `range(p0)` onto `range(p)`.
pub fn anchor_element<T: Real>(orbit: &LatticeOrbit<T>, p: &Projection<T>, eta_ref: &Operator<T>) -> Result<GroupoidElement<T>> {
    let alg = orbit.algebra();
    let pd = polar_decompose(alg, &(p.matrix() * eta_ref))?;
    if pd.l_support.rank() != orbit.base_rank() || pd.r_support.dist(orbit.p0()) > alg.tol_eq() {
        return Err(Error::ChartDomain);
    }
    GroupoidElement::new(alg, pd.u)
}

/// `(l(eta), lambda^{-1} sigma_p(l(eta))^{-1} eta)`.
pub fn trivialize<T: Real>(
    orbit: &LatticeOrbit<T>,
    p: &Projection<T>,
    anchor: &GroupoidElement<T>,
    eta: &Frame<T>,
) -> Result<(Projection<T>, StructureGroupElement<T>)> {
    let alg = orbit.algebra();
    if anchor.l().dist(p) > alg.tol_eq() || anchor.r().dist(orbit.p0()) > alg.tol_eq() {
        return Err(Error::InvalidInput("anchor must map p0 onto p".into()));
    }
    let q = eta.base(orbit)?;
    let s = phi(alg, p, &q)?.lift();
    let g = partial_inverse(alg, anchor.op())? * partial_inverse(alg, &s)? * eta.op();
    Ok((q, StructureGroupElement { g }))
}

/// Transition cocycle `g_{p'p}(q) = lambda_{p'}^{-1} sigma_{p'}(q)^{-1} sigma_p(q) lambda_p`.
pub fn cocycle<T: Real>(
    orbit: &LatticeOrbit<T>,
    p: &Projection<T>,
    anchor_p: &GroupoidElement<T>,
    p_new: &Projection<T>,
    anchor_new: &GroupoidElement<T>,
    q: &Projection<T>,
) -> Result<StructureGroupElement<T>> {
    let alg = orbit.algebra();
    let s_old = phi(alg, p, q).map_err(|_| Error::ChartOverlap)?.lift();
    let s_new = phi(alg, p_new, q).map_err(|_| Error::ChartOverlap)?.lift();
    let g = partial_inverse(alg, anchor_new.op())? * partial_inverse(alg, &s_new)? * s_old * anchor_p.op();
    Ok(StructureGroupElement { g })
}

/// A representative pair of the class `<eta, xi> = {(eta g, xi g)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeClass<T: Real> {
    pub eta: Frame<T>,
    pub xi: Frame<T>,
}

impl<T: Real> GaugeClass<T> {
    pub fn new(eta: Frame<T>, xi: Frame<T>) -> Self {
        GaugeClass { eta, xi }
    }

    pub fn unit(eta: Frame<T>) -> Self {
        GaugeClass { xi: eta.clone(), eta }
    }

    pub fn inverse(&self) -> Self {
        GaugeClass { eta: self.xi.clone(), xi: self.eta.clone() }
    }

    /// The complete invariant `eta xi^{-1}`.
    pub fn invariant(&self, orbit: &LatticeOrbit<T>) -> Result<Operator<T>> {
        Ok(self.eta.op() * partial_inverse(orbit.algebra(), self.xi.op())?)
    }

    pub fn same_class(&self, orbit: &LatticeOrbit<T>, other: &Self) -> Result<bool> {
        Ok(self.invariant(orbit)?.dist(&other.invariant(orbit)?) <= orbit.algebra().tol_eq())
    }
}

impl<T: Real> Serialize for GaugeClass<T> {
    /// Serialised through the canonical invariant `eta xi^{-1}`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let inv = partial_inverse(&crate::wstar::Algebra::with_defaults(self.xi.op().dim()), self.xi.op())
            .map_err(S::Error::custom)?;
        (self.eta.op() * inv).serialize(s)
    }
}

/// `<eta, xi> <xi', zeta>` where `xi' = xi g`: the product `<eta g, zeta>`.
pub fn gauge_compose<T: Real>(orbit: &LatticeOrbit<T>, c1: &GaugeClass<T>, c2: &GaugeClass<T>) -> Result<GaugeClass<T>> {
    let alg = orbit.algebra();
    let g = partial_inverse(alg, c1.xi.op())? * c2.eta.op();
    let mismatch = (c1.xi.op() * &g).dist(c2.eta.op());
    if mismatch > alg.tol_eq() {
        return Err(Error::FrameMismatch(mismatch.as_f64()));
    }
    Ok(GaugeClass { eta: Frame { eta: c1.eta.op() * g }, xi: c2.xi.clone() })
}

/// `<eta, xi> -> eta xi^{-1}`.
pub fn gauge_to_groupoid<T: Real>(orbit: &LatticeOrbit<T>, c: &GaugeClass<T>) -> Result<GroupoidElement<T>> {
    GroupoidElement::new(orbit.algebra(), c.invariant(orbit)?)
}

/// `[eta] -> eta eta^{-1} = l(eta)`.
pub fn base_to_lattice<T: Real>(orbit: &LatticeOrbit<T>, eta: &Frame<T>) -> Result<Projection<T>> {
    eta.base(orbit)
}

/// `eta (eta^* eta)^{-1/2}`.
pub fn unitary_reduce<T: Real>(orbit: &LatticeOrbit<T>, eta: &Frame<T>) -> Result<Frame<T>> {
    let gram = eta.op().adjoint() * eta.op();
    let root = hermitian_corner_power(orbit.algebra(), orbit.p0(), &gram, T::lit(-0.5))?;
    Ok(Frame { eta: eta.op() * root })
}

/// `<eta, xi> -> eta xi^*` on unitary frames.
pub fn gauge_to_groupoid_unitary<T: Real>(orbit: &LatticeOrbit<T>, c: &GaugeClass<T>) -> Result<GroupoidElement<T>> {
    for f in [&c.eta, &c.xi] {
        let res = unitary_residual(orbit, f.op());
        if res > orbit.algebra().tol_eq() {
            return Err(Error::NonUnitary(res.as_f64()));
        }
    }
    GroupoidElement::new(orbit.algebra(), c.eta.op() * c.xi.op().adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = Operator<f64>;

    fn orbit() -> LatticeOrbit<f64> {
        LatticeOrbit::canonical(3, 1).unwrap()
    }

    #[test]
    fn frame_requires_support_in_p0() {
        let o = orbit();
        assert!(Frame::new(&o, Op::from_real_rows(&[&[1.0, 0.0, 0.0], &[2.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])).is_ok());
        assert!(Frame::new(&o, Op::from_real_rows(&[&[1.0, 1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])).is_err());
        assert!(Frame::new(&o, Op::zeros(3)).is_err());
    }

    #[test]
    fn frame_chart_at_p0() {
        let o = orbit();
        let p0 = o.p0().clone();
        let eta = Frame::new(&o, p0.matrix().clone()).unwrap();
        let pt = frame_chart(&o, &p0, &eta).unwrap();
        assert!(pt.y.coordinate.norm() < 1e-15);
        assert!(pt.z.dist(p0.matrix()) < 1e-15);
    }

    #[test]
    fn unitary_reduce_scaled_isometry() {
        let o = orbit();
        let eta = Frame::new(&o, Op::from_real_rows(&[&[0.0, 0.0, 0.0], &[2.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])).unwrap();
        let u = unitary_reduce(&o, &eta).unwrap();
        assert!(u.op().dist(&Op::unit(3, 1, 0)) < 1e-14);
        assert!(u.is_unitary(&o));
    }

    #[test]
    fn unit_class_maps_to_support() {
        let o = orbit();
        let eta = Frame::new(&o, Op::from_real_rows(&[&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])).unwrap();
        let x = gauge_to_groupoid(&o, &GaugeClass::unit(eta.clone())).unwrap();
        assert!(x.op().dist(eta.base(&o).unwrap().matrix()) < 1e-14);
    }
}
