//! Derivations `D = -X + Theta` of the frame algebroid acting on vector
//! fields of `P0`, their bracket, anchor and linear lift to `TP0`.
//!
//! `(D Z)(eta) = -D_{theta(eta)} Z(eta) + Theta(eta) Z(eta)`.

use std::sync::Arc;

use crate::algebroid::{frame_support, FrameField, PolyScalar, Section};
use crate::error::Result;
use crate::jet::Dual;
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wstar::corner_inverse;

use super::endo::{CornerSpace, Endo};
use super::field::{theta_directional, Analytic, DynField, DynTheta, FieldBracket, JacobianTheta, ThetaMap, VectorField};

/// Infinitesimal cocycle `H(eta, g)` in `p0 M p0`.
pub trait Cocycle<T: Real>: Send + Sync {
    fn at(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, g: &Operator<T>) -> Result<Operator<T>>;
}

/// `H(eta, g) = g m - m g`, the cocycle of the flow `eta -> eta exp(t m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorCocycle<T: Real> {
    pub m: Operator<T>,
}

impl<T: Real> Cocycle<T> for CommutatorCocycle<T> {
    fn at(&self, _orbit: &LatticeOrbit<T>, _eta: &Operator<T>, g: &Operator<T>) -> Result<Operator<T>> {
        Ok(g * &self.m - &self.m * g)
    }
}

#[derive(Clone)]
pub struct Derivation<T: Real> {
    pub field: DynField<T>,
    pub theta: DynTheta<T>,
    /// `None` means `H = 0`.
    pub cocycle: Option<Arc<dyn Cocycle<T>>>,
    /// Step for finite differences of `Theta` and of non-analytic fields.
    pub h: T,
}

impl<T: Real> Derivation<T> {
    pub fn new(field: DynField<T>, theta: DynTheta<T>, h: T) -> Self {
        Derivation { field, theta, cocycle: None, h }
    }

    pub fn with_cocycle(mut self, c: Arc<dyn Cocycle<T>>) -> Self {
        self.cocycle = Some(c);
        self
    }

    /// `H(eta, g)`, zero when no cocycle is attached.
    pub fn cocycle_at(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, g: &Operator<T>) -> Result<Operator<T>> {
        match &self.cocycle {
            Some(c) => c.at(orbit, eta, g),
            None => Ok(Operator::zeros(orbit.dim())),
        }
    }
}

/// `D Z` as a vector field.
#[derive(Clone)]
pub struct Applied<T: Real> {
    pub d: Derivation<T>,
    pub z: DynField<T>,
}

impl<T: Real> VectorField<T> for Applied<T> {
    fn value(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>> {
        let space = CornerSpace::new(orbit);
        let theta = self.d.field.value(orbit, eta)?;
        let dz = self.z.directional(orbit, eta, &theta, self.d.h)?;
        let z = self.z.value(orbit, eta)?;
        Ok(self.d.theta.at(orbit, eta)?.apply(&space, &z) - dz)
    }
}

pub fn derivation_apply<T: Real>(d: &Derivation<T>, z: DynField<T>) -> Applied<T> {
    Applied { d: d.clone(), z }
}

/// `D_{theta_2} Theta_1 - D_{theta_1} Theta_2 + [Theta_1, Theta_2]`.
pub struct BracketTheta<T: Real> {
    pub d1: Derivation<T>,
    pub d2: Derivation<T>,
}

impl<T: Real> ThetaMap<T> for BracketTheta<T> {
    fn at(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Endo<T>> {
        let t1 = self.d1.field.value(orbit, eta)?;
        let t2 = self.d2.field.value(orbit, eta)?;
        let h = self.d1.h;
        let a = theta_directional(self.d1.theta.as_ref(), orbit, eta, &t2, h)?;
        let b = theta_directional(self.d2.theta.as_ref(), orbit, eta, &t1, h)?;
        let th1 = self.d1.theta.at(orbit, eta)?;
        let th2 = self.d2.theta.at(orbit, eta)?;
        Ok(a.sub(&b).add(&th1.commutator(&th2)))
    }
}

/// `[D_1, D_2]`: field part `[theta_2, theta_1]`, endomorphism part
/// `D_{theta_2} Theta_1 - D_{theta_1} Theta_2 + [Theta_1, Theta_2]`.
pub fn derivation_bracket<T: Real>(d1: &Derivation<T>, d2: &Derivation<T>) -> Derivation<T> {
    let field = FieldBracket { first: d2.field.clone(), second: d1.field.clone(), h: d1.h };
    Derivation::new(Arc::new(field), Arc::new(BracketTheta { d1: d1.clone(), d2: d2.clone() }), d1.h)
}

/// `|[D_1, D_2] Z - (D_1 D_2 Z - D_2 D_1 Z)|` at `eta`.
pub fn commutator_residual<T: Real>(
    orbit: &LatticeOrbit<T>,
    d1: &Derivation<T>,
    d2: &Derivation<T>,
    z: DynField<T>,
    eta: &Operator<T>,
) -> Result<T> {
    let br = derivation_apply(&derivation_bracket(d1, d2), z.clone()).value(orbit, eta)?;
    let d2z: DynField<T> = Arc::new(derivation_apply(d2, z.clone()));
    let d1z: DynField<T> = Arc::new(derivation_apply(d1, z));
    let lhs = derivation_apply(d1, d2z).value(orbit, eta)? - derivation_apply(d2, d1z).value(orbit, eta)?;
    Ok(br.dist(&lhs))
}

/// The anchor `a(D) = -X` at `eta`.
pub fn derivation_anchor<T: Real>(orbit: &LatticeOrbit<T>, d: &Derivation<T>, eta: &Operator<T>) -> Result<Operator<T>> {
    Ok(-d.field.value(orbit, eta)?)
}

/// `|a([D_1, D_2]) - [a(D_1), a(D_2)]|` at `eta`, the bracket on the right
/// taken as the commutator of vector fields.
pub fn anchor_law_residual<T: Real>(
    orbit: &LatticeOrbit<T>,
    d1: &Derivation<T>,
    d2: &Derivation<T>,
    eta: &Operator<T>,
) -> Result<T> {
    let lhs = derivation_anchor(orbit, &derivation_bracket(d1, d2), eta)?;
    let t1 = d1.field.value(orbit, eta)?;
    let t2 = d2.field.value(orbit, eta)?;
    // fields -theta_i: D_{-t1}(-theta_2) - D_{-t2}(-theta_1)
    let rhs = d2.field.directional(orbit, eta, &t1, d1.h)? - d1.field.directional(orbit, eta, &t2, d1.h)?;
    Ok(lhs.dist(&rhs))
}

/// `f(l(eta)) Z(eta)` for a polynomial scalar function `f`.
pub struct ScaledVector<T: Real> {
    pub f: PolyScalar<T>,
    pub z: DynField<T>,
}

fn scalar_jet<T: Real>(orbit: &LatticeOrbit<T>, f: &PolyScalar<T>, eta: &Operator<T>, e: &Operator<T>) -> Result<(Operator<T>, Operator<T>)> {
    let q = frame_support(orbit, &Dual::new(eta.clone(), e.clone()))?;
    let v: Dual<Operator<T>> = f.eval(orbit, &q)?;
    Ok((v.re, v.eps))
}

impl<T: Real> VectorField<T> for ScaledVector<T> {
    fn value(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>> {
        let q = frame_support(orbit, eta)?;
        let fv: Operator<T> = self.f.eval(orbit, &q)?;
        Ok(fv * self.z.value(orbit, eta)?)
    }

    fn directional(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, e: &Operator<T>, h: T) -> Result<Operator<T>> {
        let (fv, df) = scalar_jet(orbit, &self.f, eta, e)?;
        Ok(df * self.z.value(orbit, eta)? + fv * self.z.directional(orbit, eta, e, h)?)
    }
}

/// `|D(f Z) - f D Z - a(D)(f) Z|` at `eta`, with `a(D)(f) = -D_theta f`.
pub fn leibniz_residual<T: Real>(
    orbit: &LatticeOrbit<T>,
    d: &Derivation<T>,
    f: &PolyScalar<T>,
    z: DynField<T>,
    eta: &Operator<T>,
) -> Result<T> {
    let scaled: DynField<T> = Arc::new(ScaledVector { f: f.clone(), z: z.clone() });
    let lhs = derivation_apply(d, scaled).value(orbit, eta)?;
    let theta = d.field.value(orbit, eta)?;
    let (fv, df) = scalar_jet(orbit, f, eta, &theta)?;
    let rhs = fv * derivation_apply(d, z.clone()).value(orbit, eta)? - df * z.value(orbit, eta)?;
    Ok(lhs.dist(&rhs))
}

/// The derivation `Z -> -[X, Z]` of a holomorphic field: `Theta = d theta / d eta`.
pub fn tangent_lift<T: Real, F: FrameField<T> + Clone + 'static>(field: F, h: T) -> Derivation<T> {
    Derivation::new(Arc::new(Analytic(field.clone())), Arc::new(JacobianTheta(field)), h)
}

/// The linear field `(v, eta) -> (Theta(eta) v, theta(eta))` on `TP0`.
#[derive(Clone)]
pub struct LinearLift<T: Real> {
    pub d: Derivation<T>,
}

pub fn linear_lift<T: Real>(d: &Derivation<T>) -> LinearLift<T> {
    LinearLift { d: d.clone() }
}

impl<T: Real> LinearLift<T> {
    pub fn value(&self, orbit: &LatticeOrbit<T>, v: &Operator<T>, eta: &Operator<T>) -> Result<(Operator<T>, Operator<T>)> {
        let space = CornerSpace::new(orbit);
        Ok((self.d.theta.at(orbit, eta)?.apply(&space, v), self.d.field.value(orbit, eta)?))
    }

    /// Derivative at `(v, eta)` along `(dv, deta)`.
    pub fn directional(
        &self,
        orbit: &LatticeOrbit<T>,
        v: &Operator<T>,
        eta: &Operator<T>,
        dv: &Operator<T>,
        deta: &Operator<T>,
    ) -> Result<(Operator<T>, Operator<T>)> {
        let space = CornerSpace::new(orbit);
        let dtheta = theta_directional(self.d.theta.as_ref(), orbit, eta, deta, self.d.h)?;
        let first = dtheta.apply(&space, v) + self.d.theta.at(orbit, eta)?.apply(&space, dv);
        Ok((first, self.d.field.directional(orbit, eta, deta, self.d.h)?))
    }
}

/// `[V_1, V_2] = D_{V_1} V_2 - D_{V_2} V_1` for two linear lifts at `(v, eta)`.
pub fn lift_bracket<T: Real>(
    orbit: &LatticeOrbit<T>,
    l1: &LinearLift<T>,
    l2: &LinearLift<T>,
    v: &Operator<T>,
    eta: &Operator<T>,
) -> Result<(Operator<T>, Operator<T>)> {
    let (a1, b1) = l1.value(orbit, v, eta)?;
    let (a2, b2) = l2.value(orbit, v, eta)?;
    let (da2, db2) = l2.directional(orbit, v, eta, &a1, &b1)?;
    let (da1, db1) = l1.directional(orbit, v, eta, &a2, &b2)?;
    Ok((da2 - da1, db2 - db1))
}

/// Residuals of `[X_{D_1}, X_{D_2}] = +X_{[D_1, D_2]}` and of
/// `[X_{D_1}, X_{D_2}] = -X_{[D_1, D_2]}` at one point of `TP0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftBracketResiduals<T> {
    pub homomorphism: T,
    pub anti_homomorphism: T,
    /// Size of `X_{[D_1, D_2]}` at the point, for scale.
    pub magnitude: T,
}

pub fn lift_bracket_residuals<T: Real>(
    orbit: &LatticeOrbit<T>,
    d1: &Derivation<T>,
    d2: &Derivation<T>,
    v: &Operator<T>,
    eta: &Operator<T>,
) -> Result<LiftBracketResiduals<T>> {
    let (a, b) = lift_bracket(orbit, &linear_lift(d1), &linear_lift(d2), v, eta)?;
    let (c, d) = linear_lift(&derivation_bracket(d1, d2)).value(orbit, v, eta)?;
    let max = |x: T, y: T| if x > y { x } else { y };
    Ok(LiftBracketResiduals {
        homomorphism: max(a.dist(&c), b.dist(&d)),
        anti_homomorphism: max((&a + &c).norm(), (&b + &d).norm()),
        magnitude: max(c.norm(), d.norm()),
    })
}

/// Residuals of `theta(eta g) = theta(eta) g + eta H(eta, g)` and
/// `Theta(eta g) = R_g Theta(eta) R_{g^{-1}} + R_{g^{-1} H(eta, g)}`.
pub fn equivariance_residuals<T: Real>(
    orbit: &LatticeOrbit<T>,
    d: &Derivation<T>,
    eta: &Operator<T>,
    g: &Operator<T>,
) -> Result<(T, T)> {
    let space = CornerSpace::new(orbit);
    let eta_g = eta * g;
    let hh = d.cocycle_at(orbit, eta, g)?;
    let condv = d.field.value(orbit, &eta_g)?.dist(&(d.field.value(orbit, eta)? * g + eta * &hh));
    let g_inv = corner_inverse(orbit.algebra(), orbit.p0(), g)?;
    let conj = Endo::right_mult(&space, g).compose(&d.theta.at(orbit, eta)?).compose(&Endo::right_mult(&space, &g_inv));
    let expected = conj.add(&Endo::right_mult(&space, &(&g_inv * &hh)));
    let condteta = d.theta.at(orbit, &eta_g)?.dist(&expected);
    Ok((condv, condteta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{field_from_section, FramePoly, HolomorphicField, LinearField, PolySection, RightMultField};
    use crate::derivations::field::{ConstTheta, ZeroField};
    use crate::wstar::Projection;

    type Op = Operator<f64>;

    fn orbit() -> LatticeOrbit<f64> {
        LatticeOrbit::canonical(3, 2).unwrap()
    }

    fn eta() -> Op {
        Op::from_rows(&[&[(1.0, 0.2), (0.3, 0.0), (0.0, 0.0)], &[(0.1, 0.0), (1.0, -0.4), (0.0, 0.0)], &[(0.5, 0.5), (-0.3, 0.2), (0.0, 0.0)]])
    }

    fn g() -> Op {
        Op::from_rows(&[&[(1.0, 0.5), (2.0, 0.0), (0.0, 0.0)], &[(0.0, 1.0), (1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0); 3]])
    }

    fn m(seed: f64) -> Op {
        Op::from_fn(3, |i, j| num_complex::Complex::new(((i * 3 + j) as f64 * seed).sin(), ((i + 2 * j) as f64 * seed).cos() * 0.5))
    }

    fn corner(x: Op) -> Op {
        let p = Projection::canonical(3, 2);
        p.matrix() * x * p.matrix()
    }

    fn z_poly() -> FramePoly<f64> {
        FramePoly { a: m(0.7), b: corner(m(1.3)), c: m(0.4), d: m(2.1), e: corner(m(0.9)) }
    }

    fn z_field() -> DynField<f64> {
        Arc::new(Analytic(z_poly()))
    }

    fn holo(s: f64) -> HolomorphicField<f64> {
        HolomorphicField { a: m(s).scale_real(0.3), b: m(s + 1.0).scale_real(0.2), c: Op::identity(3) + m(s + 2.0).scale_real(0.1), d: m(s + 3.0) }
    }

    #[test]
    fn constant_thetas_bracket_to_commutator() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let e1 = Endo::left_mult(&s, &m(0.3));
        let e2 = Endo::right_mult(&s, &m(1.1));
        let d1 = Derivation::new(Arc::new(ZeroField), Arc::new(ConstTheta(e1.clone())), 1e-5);
        let d2 = Derivation::new(Arc::new(ZeroField), Arc::new(ConstTheta(e2.clone())), 1e-5);
        let br = derivation_bracket(&d1, &d2);
        assert!(br.theta.at(&o, &eta()).unwrap().dist(&e1.commutator(&e2)) < 1e-12);
        assert!(br.field.value(&o, &eta()).unwrap().norm() < 1e-15);
    }

    #[test]
    fn operator_identity_for_tangent_lifts() {
        let o = orbit();
        let d1 = tangent_lift(holo(0.5), 1e-5);
        let d2 = tangent_lift(LinearField { a: m(1.7) }, 1e-5);
        assert!(commutator_residual(&o, &d1, &d2, z_field(), &eta()).unwrap() < 1e-5);
    }

    #[test]
    fn tangent_lift_acts_as_minus_bracket() {
        let o = orbit();
        let f = holo(0.2);
        let d = tangent_lift(f.clone(), 1e-5);
        let z = z_poly();
        let v = derivation_apply(&d, Arc::new(Analytic(z.clone()))).value(&o, &eta()).unwrap();
        let expect = -crate::algebroid::bracket_flat(&f, &z).value(&o, &eta()).unwrap();
        assert!(v.dist(&expect) < 1e-12);
    }

    #[test]
    fn anchor_law_and_leibniz() {
        let o = orbit();
        let d1 = tangent_lift(holo(0.5), 1e-5);
        let d2 = Derivation::new(Arc::new(Analytic(field_from_section(PolySection::new(vec![vec![m(0.1), m(0.6)]])))), Arc::new(ConstTheta(Endo::left_mult(&CornerSpace::new(&o), &m(0.8)))), 1e-5);
        assert!(anchor_law_residual(&o, &d1, &d2, &eta()).unwrap() < 1e-8);
        let f = PolyScalar { constant: 0.5, terms: vec![vec![m(0.2), m(1.9)]] };
        assert!(leibniz_residual(&o, &d2, &f, z_field(), &eta()).unwrap() < 1e-10);
    }

    #[test]
    fn linear_lift_of_constant_theta() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let e = Endo::left_mult(&s, &m(0.3));
        let d = Derivation::new(Arc::new(ZeroField), Arc::new(ConstTheta(e.clone())), 1e-5);
        let v = m(1.4) * o.p0().matrix();
        let (a, b) = linear_lift(&d).value(&o, &v, &eta()).unwrap();
        assert!(a.dist(&e.apply(&s, &v)) < 1e-14);
        assert!(b.norm() == 0.0);
    }

    #[test]
    fn lift_is_an_antihomomorphism() {
        let o = orbit();
        let d1 = tangent_lift(holo(0.5), 1e-5);
        let d2 = tangent_lift(LinearField { a: m(1.7) }, 1e-5);
        let v = m(2.2) * o.p0().matrix();
        let r = lift_bracket_residuals(&o, &d1, &d2, &v, &eta()).unwrap();
        assert!(r.anti_homomorphism < 1e-6);
        assert!(r.homomorphism > 1e-3 * r.magnitude);
    }

    #[test]
    fn equivariance_of_tangent_lift_and_vertical_flow() {
        let o = orbit();
        let d = tangent_lift(holo(0.5), 1e-5);
        let (cv, ct) = equivariance_residuals(&o, &d, &eta(), &g()).unwrap();
        assert!(cv < 1e-12 && ct < 1e-10);
        let s = CornerSpace::new(&o);
        let mm = corner(m(0.4));
        let dv = Derivation::new(Arc::new(Analytic(RightMultField { m: mm.clone() })), Arc::new(ConstTheta(Endo::right_mult(&s, &mm))), 1e-5)
            .with_cocycle(Arc::new(CommutatorCocycle { m: mm }));
        let (cv, ct) = equivariance_residuals(&o, &dv, &eta(), &g()).unwrap();
        assert!(cv < 1e-12 && ct < 1e-12);
    }
}
