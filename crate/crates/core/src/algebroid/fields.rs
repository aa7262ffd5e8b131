//! Vector fields on the frame space `P0`, sections of the algebroid and the
//! generative polynomial families used by the property suites.
//!
//! Every formula is written against [`OpRing`], so a single definition yields
//! values, exact directional derivatives and exact second derivatives.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::jet::{Dual, OpRing};
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::{Cx, Real};
use crate::wirtinger::{wirtinger_exact, WirtingerPair};
use crate::wstar::Projection;

/// A vector field `eta -> theta(eta, eta^*)` on `P0` with values in `M p0`.
pub trait FrameField<T: Real>: Send + Sync {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, eta: &R) -> Result<R>;

    fn value(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>> {
        self.eval(orbit, eta)
    }

    /// Real directional derivative `D_E theta` at `eta`.
    fn directional(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, e: &Operator<T>) -> Result<Operator<T>> {
        Ok(self.eval(orbit, &Dual::new(eta.clone(), e.clone()))?.eps)
    }

    /// Exact Wirtinger pair `(<d theta/d eta, E>, <d theta/d eta*, E^*>)`.
    fn wirtinger(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, e: &Operator<T>) -> Result<WirtingerPair<T>> {
        wirtinger_exact(|d| self.directional(orbit, eta, d), e)
    }
}

/// A section `q -> X(q)` of the algebroid, given on the orbit.
pub trait Section<T: Real>: Send + Sync {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, q: &R) -> Result<R>;
}

/// A field in the chart `(y, z)` at base `p`: `theta = a z + (p + y) b z`.
pub trait ChartField<T: Real>: Send + Sync {
    fn base(&self) -> &Projection<T>;
    /// `(a_p(y), b_p(y))`.
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, y: &R) -> Result<(R, R)>;
}

macro_rules! forward_ref {
    ($tr:ident, $arg:ident, $out:ty) => {
        impl<T: Real, F: $tr<T>> $tr<T> for &F {
            fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, $arg: &R) -> Result<$out> {
                (**self).eval(orbit, $arg)
            }
        }
        impl<T: Real, F: $tr<T>> $tr<T> for std::sync::Arc<F> {
            fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, $arg: &R) -> Result<$out> {
                (**self).eval(orbit, $arg)
            }
        }
    };
}

forward_ref!(FrameField, eta, R);
forward_ref!(Section, q, R);

impl<T: Real, F: ChartField<T>> ChartField<T> for &F {
    fn base(&self) -> &Projection<T> {
        (**self).base()
    }
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, y: &R) -> Result<(R, R)> {
        (**self).eval(orbit, y)
    }
}

/// `l(eta) = eta (eta^* eta)^{-1} eta^*`, the inverse taken in `p0 M p0`.
pub fn frame_support<T: Real, R: OpRing<T>>(orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
    let adj = eta.adjoint();
    let gram_inv = adj.mul(eta).inverse_between(orbit.algebra(), orbit.p0(), orbit.p0())?;
    Ok(eta.mul(&gram_inv).mul(&adj))
}

/// `l(p + y)`, the inverse chart `phi_p^{-1}` as a formula in `y`.
pub fn chart_support<T: Real, R: OpRing<T>>(orbit: &LatticeOrbit<T>, p: &Projection<T>, y: &R) -> Result<R> {
    let s = y.add_const(p.matrix());
    let adj = s.adjoint();
    let gram_inv = adj.mul(&s).inverse_between(orbit.algebra(), p, p)?;
    Ok(s.mul(&gram_inv).mul(&adj))
}

fn word<T: Real, R: OpRing<T>>(coeffs: &[Operator<T>], q: &R) -> R {
    // C0 q C1 q ... q Cm
    let mut acc = R::constant(&coeffs[0]);
    for c in &coeffs[1..] {
        acc = acc.mul(q).rmul(c);
    }
    acc
}

/// `X(q) = sum_j C_{j0} q C_{j1} q ... q C_{jm}`, optionally made anti-hermitian
/// (`X - X^*`) and extended by a tangential part `(1 - q) W(q) q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct PolySection<T: Real> {
    pub terms: Vec<Vec<Operator<T>>>,
    #[serde(default)]
    pub skew: bool,
    #[serde(default)]
    pub tangential: Vec<Vec<Operator<T>>>,
}

impl<T: Real> PolySection<T> {
    pub fn new(terms: Vec<Vec<Operator<T>>>) -> Self {
        PolySection { terms, skew: false, tangential: Vec::new() }
    }

    pub fn constant(b: Operator<T>) -> Self {
        PolySection::new(vec![vec![b]])
    }

    /// Sections with `q (X + X^*) q = 0`, whose fields are tangent to the
    /// unitary frames.
    pub fn unitary(terms: Vec<Vec<Operator<T>>>, tangential: Vec<Vec<Operator<T>>>) -> Self {
        PolySection { terms, skew: true, tangential }
    }
}

impl<T: Real> Section<T> for PolySection<T> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, q: &R) -> Result<R> {
        let n = orbit.dim();
        let mut x = R::constant(&Operator::zeros(n));
        for t in self.terms.iter().filter(|t| !t.is_empty()) {
            x = x.add(&word(t, q));
        }
        if self.skew {
            x = x.sub(&x.adjoint());
        }
        if !self.tangential.is_empty() {
            let mut w = R::constant(&Operator::zeros(n));
            for t in self.tangential.iter().filter(|t| !t.is_empty()) {
                w = w.add(&word(t, q));
            }
            let one_minus_q = R::constant(&Operator::identity(n)).sub(q);
            x = x.add(&one_minus_q.mul(&w).mul(q));
        }
        Ok(x)
    }
}

/// `f(q) = c + sum_j Re tr(C_{j0} q ... q C_{jm})`, returned as `f(q) 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct PolyScalar<T: Real> {
    pub constant: f64,
    pub terms: Vec<Vec<Operator<T>>>,
}

impl<T: Real> Section<T> for PolyScalar<T> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, q: &R) -> Result<R> {
        let n = orbit.dim();
        let mut acc = R::constant(&Operator::identity(n).scale_real(T::lit(self.constant)));
        for t in self.terms.iter().filter(|t| !t.is_empty()) {
            let w = word(t, q);
            let re = w.add(&w.adjoint()).trace_id().scale(Cx::new(T::lit(0.5), T::zero()));
            acc = acc.add(&re);
        }
        Ok(acc)
    }
}

/// The field `theta(eta) = X(l(eta)) eta` of a section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionField<S> {
    pub section: S,
}

impl<S> SectionField<S> {
    pub fn new(section: S) -> Self {
        SectionField { section }
    }
}

impl<T: Real, S: Section<T>> FrameField<T> for SectionField<S> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        let q = frame_support(orbit, eta)?;
        Ok(self.section.eval(orbit, &q)?.mul(eta))
    }
}

/// `field_from_section`: the invariant field of a section.
pub fn field_from_section<S>(section: S) -> SectionField<S> {
    SectionField::new(section)
}

/// `theta(eta) = A eta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct LinearField<T: Real> {
    pub a: Operator<T>,
}

impl<T: Real> FrameField<T> for LinearField<T> {
    fn eval<R: OpRing<T>>(&self, _orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        Ok(eta.lmul(&self.a))
    }
}

/// Holomorphic equivariant field `theta(eta) = A eta + B eta (p0 C eta)^{-1} (p0 D eta)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct HolomorphicField<T: Real> {
    pub a: Operator<T>,
    pub b: Operator<T>,
    pub c: Operator<T>,
    pub d: Operator<T>,
}

impl<T: Real> FrameField<T> for HolomorphicField<T> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        let p0 = orbit.p0();
        let c_eta = eta.lmul(&self.c);
        let inv = c_eta.inverse_between(orbit.algebra(), p0, p0)?;
        let d_eta = eta.lmul(&(p0.matrix() * &self.d));
        Ok(eta.lmul(&self.a).add(&eta.lmul(&self.b).mul(&inv).mul(&d_eta)))
    }
}

/// Vertical field `theta(eta) = eta m` with `m` in `p0 M p0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct RightMultField<T: Real> {
    pub m: Operator<T>,
}

impl<T: Real> FrameField<T> for RightMultField<T> {
    fn eval<R: OpRing<T>>(&self, _orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        Ok(eta.rmul(&self.m))
    }
}

/// A field that is not equivariant:
/// `w(eta) = A eta B + C eta eta^* D eta E` with `B, E` in `p0 M p0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct FramePoly<T: Real> {
    pub a: Operator<T>,
    pub b: Operator<T>,
    pub c: Operator<T>,
    pub d: Operator<T>,
    pub e: Operator<T>,
}

impl<T: Real> FrameField<T> for FramePoly<T> {
    fn eval<R: OpRing<T>>(&self, _orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        let first = eta.lmul(&self.a).rmul(&self.b);
        let second = eta.lmul(&self.c).mul(&eta.adjoint()).rmul(&self.d).mul(eta).rmul(&self.e);
        Ok(first.add(&second))
    }
}

/// `f(l(eta)) theta(eta)` for a scalar function `f` on the orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledField<S, F> {
    pub scalar: S,
    pub field: F,
}

impl<T: Real, S: Section<T>, F: FrameField<T>> FrameField<T> for ScaledField<S, F> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        let q = frame_support(orbit, eta)?;
        Ok(self.scalar.eval(orbit, &q)?.mul(&self.field.eval(orbit, eta)?))
    }
}

/// `c theta(eta)` for a complex constant `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledConst<T: Real, F> {
    pub c: Cx<T>,
    pub field: F,
}

impl<T: Real, F: FrameField<T>> FrameField<T> for ScaledConst<T, F> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        Ok(self.field.eval(orbit, eta)?.scale(self.c))
    }
}

/// `theta_1 + theta_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SumField<F1, F2>(pub F1, pub F2);

impl<T: Real, F1: FrameField<T>, F2: FrameField<T>> FrameField<T> for SumField<F1, F2> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        Ok(self.0.eval(orbit, eta)?.add(&self.1.eval(orbit, eta)?))
    }
}

/// Equivariance residual `|theta(eta g) - theta(eta) g|`.
pub fn equivariance_residual<T: Real, F: FrameField<T>>(
    orbit: &LatticeOrbit<T>,
    f: &F,
    eta: &Operator<T>,
    g: &Operator<T>,
) -> Result<T> {
    let lhs = f.value(orbit, &(eta * g))?;
    let rhs = f.value(orbit, eta)? * g;
    Ok(lhs.dist(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = Operator<f64>;

    fn orbit() -> LatticeOrbit<f64> {
        LatticeOrbit::canonical(3, 1).unwrap()
    }

    fn eta() -> Op {
        Op::from_rows(&[&[(1.0, 0.5), (0.0, 0.0), (0.0, 0.0)], &[(0.3, 0.0), (0.0, 0.0), (0.0, 0.0)], &[(0.0, -1.0), (0.0, 0.0), (0.0, 0.0)]])
    }

    #[test]
    fn constant_section_gives_linear_field() {
        let o = orbit();
        let b = Op::from_real_rows(&[&[1.0, 2.0, 0.0], &[0.0, 1.0, 3.0], &[1.0, 0.0, 0.0]]);
        let f = field_from_section(PolySection::constant(b.clone()));
        assert!(f.value(&o, &eta()).unwrap().dist(&(&b * &eta())) < 1e-14);
    }

    #[test]
    fn frame_support_is_projection_onto_column() {
        let o = orbit();
        let q: Op = frame_support(&o, &eta()).unwrap();
        assert!((&q * &q).dist(&q) < 1e-14);
        assert!((&q * &eta()).dist(&eta()) < 1e-14);
        assert!((q.trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unitary_section_kills_polev() {
        let o = orbit();
        let c = Op::from_rows(&[&[(0.0, 1.0), (2.0, 0.0), (0.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0), (0.5, 0.5)], &[(0.0, 0.0), (1.0, 1.0), (0.0, 0.0)]]);
        let s = PolySection::unitary(vec![vec![c.clone(), c.adjoint()]], vec![vec![c.clone()]]);
        let f = field_from_section(s);
        let e = eta();
        let t = f.value(&o, &e).unwrap();
        assert!((e.adjoint() * &t + t.adjoint() * &e).norm() < 1e-13);
    }

    #[test]
    fn scalar_trace_function() {
        let o = orbit();
        let c = Op::from_rows(&[&[(0.0, 1.0), (2.0, 0.0), (0.0, 0.0)], &[(1.0, 0.0), (3.0, 0.0), (0.5, 0.5)], &[(0.0, 0.0), (1.0, 1.0), (0.0, 0.0)]]);
        let f = PolyScalar { constant: 1.0, terms: vec![vec![c.clone(), Op::identity(3)]] };
        let q = Op::from_real_diag(&[0.0, 1.0, 0.0]);
        let v: Op = f.eval(&o, &q).unwrap();
        assert!(v.dist(&Op::identity(3).scale_real(4.0)) < 1e-14);
    }
}
