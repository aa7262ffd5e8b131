//! Bisections `sigma(eta) = (gamma(eta), Gamma(eta), eta)` of the trivial
//! groupoid, their action on `TP0` and one-parameter families.

use std::sync::Arc;

use crate::algebroid::{LinearField, RightMultField};
use crate::error::Result;
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wstar::corner_inverse;

use super::derivation::{derivation_apply, CommutatorCocycle, Derivation};
use super::endo::{corner_exp, CornerSpace, Endo};
use super::field::{Analytic, ConstTheta, DynField, VectorField};

pub trait Bisection<T: Real>: Send + Sync {
    fn gamma(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>>;
    fn big_gamma(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Endo<T>>;
    /// The cocycle `h(eta, g)` with `gamma(eta g) = gamma(eta) h(eta, g)`.
    fn cocycle(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, g: &Operator<T>) -> Result<Operator<T>>;
}

/// `(theta, eta) -> (Gamma(eta) theta, gamma(eta))`.
pub fn bisection_apply<T: Real, B: Bisection<T> + ?Sized>(
    orbit: &LatticeOrbit<T>,
    s: &B,
    theta: &Operator<T>,
    eta: &Operator<T>,
) -> Result<(Operator<T>, Operator<T>)> {
    let space = CornerSpace::new(orbit);
    Ok((s.big_gamma(orbit, eta)?.apply(&space, theta), s.gamma(orbit, eta)?))
}

/// `sigma_1 * sigma_2`: `gamma_1 o gamma_2`, `Gamma_1(gamma_2(eta)) Gamma_2(eta)`.
pub struct Composed<B1, B2>(pub B1, pub B2);

impl<T: Real, B1: Bisection<T>, B2: Bisection<T>> Bisection<T> for Composed<B1, B2> {
    fn gamma(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>> {
        self.0.gamma(orbit, &self.1.gamma(orbit, eta)?)
    }

    fn big_gamma(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Endo<T>> {
        let inner = self.1.gamma(orbit, eta)?;
        Ok(self.0.big_gamma(orbit, &inner)?.compose(&self.1.big_gamma(orbit, eta)?))
    }

    fn cocycle(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, g: &Operator<T>) -> Result<Operator<T>> {
        let h2 = self.1.cocycle(orbit, eta, g)?;
        self.0.cocycle(orbit, &self.1.gamma(orbit, eta)?, &h2)
    }
}

/// `gamma(eta) = e^{tA} eta`, `Gamma = e^{t Theta_0}`, `h(eta, g) = g`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpBisection<T: Real> {
    pub a: Operator<T>,
    pub theta0: Endo<T>,
    pub t: T,
}

impl<T: Real> Bisection<T> for ExpBisection<T> {
    fn gamma(&self, _orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>> {
        Ok(Operator::from_matrix(self.a.scale_real(self.t).into_matrix().exp()) * eta)
    }

    fn big_gamma(&self, _orbit: &LatticeOrbit<T>, _eta: &Operator<T>) -> Result<Endo<T>> {
        Ok(self.theta0.scale_real(self.t).exp())
    }

    fn cocycle(&self, _orbit: &LatticeOrbit<T>, _eta: &Operator<T>, g: &Operator<T>) -> Result<Operator<T>> {
        Ok(g.clone())
    }
}

/// `gamma(eta) = eta c`, `Gamma = R_c` with `c = exp(t m)` in `p0 M p0`;
/// `h(eta, g) = c^{-1} g c`.
#[derive(Debug, Clone, PartialEq)]
pub struct RightExpBisection<T: Real> {
    pub m: Operator<T>,
    pub t: T,
}

impl<T: Real> RightExpBisection<T> {
    fn c(&self, orbit: &LatticeOrbit<T>) -> Operator<T> {
        corner_exp(orbit, &self.m.scale_real(self.t))
    }
}

impl<T: Real> Bisection<T> for RightExpBisection<T> {
    fn gamma(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>> {
        Ok(eta * self.c(orbit))
    }

    fn big_gamma(&self, orbit: &LatticeOrbit<T>, _eta: &Operator<T>) -> Result<Endo<T>> {
        Ok(Endo::right_mult(&CornerSpace::new(orbit), &self.c(orbit)))
    }

    fn cocycle(&self, orbit: &LatticeOrbit<T>, _eta: &Operator<T>, g: &Operator<T>) -> Result<Operator<T>> {
        let c = self.c(orbit);
        let ci = corner_inverse(orbit.algebra(), orbit.p0(), &c)?;
        Ok(ci * g * c)
    }
}

/// A one-parameter group `t -> sigma_t` with its generating derivation.
pub trait BisectionFamily<T: Real>: Send + Sync {
    type At: Bisection<T>;
    fn at(&self, t: T) -> Self::At;
    fn derivation(&self, orbit: &LatticeOrbit<T>, h: T) -> Derivation<T>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpFamily<T: Real> {
    pub a: Operator<T>,
    pub theta0: Endo<T>,
}

impl<T: Real> BisectionFamily<T> for ExpFamily<T> {
    type At = ExpBisection<T>;

    fn at(&self, t: T) -> ExpBisection<T> {
        ExpBisection { a: self.a.clone(), theta0: self.theta0.clone(), t }
    }

    fn derivation(&self, _orbit: &LatticeOrbit<T>, h: T) -> Derivation<T> {
        Derivation::new(Arc::new(Analytic(LinearField { a: self.a.clone() })), Arc::new(ConstTheta(self.theta0.clone())), h)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RightExpFamily<T: Real> {
    pub m: Operator<T>,
}

impl<T: Real> BisectionFamily<T> for RightExpFamily<T> {
    type At = RightExpBisection<T>;

    fn at(&self, t: T) -> RightExpBisection<T> {
        RightExpBisection { m: self.m.clone(), t }
    }

    fn derivation(&self, orbit: &LatticeOrbit<T>, h: T) -> Derivation<T> {
        let theta = Endo::right_mult(&CornerSpace::new(orbit), &self.m);
        Derivation::new(Arc::new(Analytic(RightMultField { m: self.m.clone() })), Arc::new(ConstTheta(theta)), h)
            .with_cocycle(Arc::new(CommutatorCocycle { m: self.m.clone() }))
    }
}

/// `(Sigma_t Z)(eta) = Gamma_t(gamma_{-t}(eta)) Z(gamma_{-t}(eta))`.
pub fn flow_transport<T: Real, F: BisectionFamily<T>>(
    orbit: &LatticeOrbit<T>,
    family: &F,
    z: &dyn VectorField<T>,
    t: T,
    eta: &Operator<T>,
) -> Result<Operator<T>> {
    let back = family.at(-t).gamma(orbit, eta)?;
    let (v, _) = bisection_apply(orbit, &family.at(t), &z.value(orbit, &back)?, &back)?;
    Ok(v)
}

/// `|d/dt (Sigma_t Z)(eta)|_{t=0} - (D Z)(eta)|`, the derivative by central differences.
pub fn flow_derivative_residual<T: Real, F: BisectionFamily<T>>(
    orbit: &LatticeOrbit<T>,
    family: &F,
    z: DynField<T>,
    eta: &Operator<T>,
    h: T,
) -> Result<T> {
    let plus = flow_transport(orbit, family, z.as_ref(), h, eta)?;
    let minus = flow_transport(orbit, family, z.as_ref(), -h, eta)?;
    let fd = (plus - minus).scale_real(T::one() / (h + h));
    let exact = derivation_apply(&family.derivation(orbit, h), z).value(orbit, eta)?;
    Ok(fd.dist(&exact))
}

/// `sigma_{t+s}` against `sigma_t * sigma_s` at `eta`.
pub fn group_law_residual<T: Real, F: BisectionFamily<T>>(
    orbit: &LatticeOrbit<T>,
    family: &F,
    t: T,
    s: T,
    eta: &Operator<T>,
) -> Result<T> {
    let joint = family.at(t + s);
    let comp = Composed(family.at(t), family.at(s));
    let a = joint.gamma(orbit, eta)?.dist(&comp.gamma(orbit, eta)?);
    let b = joint.big_gamma(orbit, eta)?.dist(&comp.big_gamma(orbit, eta)?);
    Ok(if a > b { a } else { b })
}

/// Residuals of `gamma(eta g) = gamma(eta) h`, of
/// `Gamma(eta g) = R_h Gamma(eta) R_{g^{-1}}` and of the cocycle identity
/// `h(eta, g_1 g_2) = h(eta, g_1) h(eta g_1, g_2)`.
pub fn bisection_equivariance<T: Real, B: Bisection<T> + ?Sized>(
    orbit: &LatticeOrbit<T>,
    s: &B,
    eta: &Operator<T>,
    g1: &Operator<T>,
    g2: &Operator<T>,
) -> Result<[T; 3]> {
    let space = CornerSpace::new(orbit);
    let h = s.cocycle(orbit, eta, g1)?;
    let eta_g = eta * g1;
    let cond1 = s.gamma(orbit, &eta_g)?.dist(&(s.gamma(orbit, eta)? * &h));
    let g_inv = corner_inverse(orbit.algebra(), orbit.p0(), g1)?;
    let expect = Endo::right_mult(&space, &h).compose(&s.big_gamma(orbit, eta)?).compose(&Endo::right_mult(&space, &g_inv));
    let cond2 = s.big_gamma(orbit, &eta_g)?.dist(&expect);
    let lhs = s.cocycle(orbit, eta, &(g1 * g2))?;
    let rhs = h * s.cocycle(orbit, &eta_g, g2)?;
    Ok([cond1, cond2, lhs.dist(&rhs)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::FramePoly;

    type Op = Operator<f64>;

    fn orbit() -> LatticeOrbit<f64> {
        LatticeOrbit::canonical(3, 2).unwrap()
    }

    fn m(seed: f64) -> Op {
        Op::from_fn(3, |i, j| num_complex::Complex::new(((i * 3 + j) as f64 * seed).sin(), ((i + 2 * j) as f64 * seed).cos() * 0.5))
    }

    fn corner(x: Op) -> Op {
        let o = orbit();
        o.p0().matrix() * x * o.p0().matrix()
    }

    fn eta() -> Op {
        Op::from_rows(&[&[(1.0, 0.2), (0.3, 0.0), (0.0, 0.0)], &[(0.1, 0.0), (1.0, -0.4), (0.0, 0.0)], &[(0.5, 0.5), (-0.3, 0.2), (0.0, 0.0)]])
    }

    fn z() -> DynField<f64> {
        Arc::new(Analytic(FramePoly { a: m(0.7), b: corner(m(1.3)), c: m(0.4), d: m(2.1), e: corner(m(0.9)) }))
    }

    #[test]
    fn identity_bisection_is_identity() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let b = ExpBisection { a: m(0.3), theta0: Endo::left_mult(&s, &m(0.5)), t: 0.0 };
        let th = m(1.1) * o.p0().matrix();
        let (v, e) = bisection_apply(&o, &b, &th, &eta()).unwrap();
        assert!(v.dist(&th) < 1e-14 && e.dist(&eta()) < 1e-14);
    }

    #[test]
    fn exponential_family_generates_its_derivation() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let fam = ExpFamily { a: m(0.3), theta0: Endo::left_mult(&s, &m(0.5)).add(&Endo::right_mult(&s, &corner(m(0.8)))) };
        assert!(flow_derivative_residual(&o, &fam, z(), &eta(), 1e-5).unwrap() < 1e-7);
        assert!(group_law_residual(&o, &fam, 0.3, -0.7, &eta()).unwrap() < 1e-12);
        assert!(flow_transport(&o, &fam, z().as_ref(), 0.0, &eta()).unwrap().dist(&z().value(&o, &eta()).unwrap()) < 1e-14);
    }

    #[test]
    fn right_family_is_equivariant_with_nontrivial_cocycle() {
        let o = orbit();
        let fam = RightExpFamily { m: corner(m(0.4)) };
        let g1 = corner(Op::identity(3) + m(1.5).scale_real(0.3));
        let g2 = corner(Op::identity(3) + m(2.5).scale_real(0.2));
        let r = bisection_equivariance(&o, &fam.at(0.7), &eta(), &g1, &g2).unwrap();
        assert!(r.iter().all(|&x| x < 1e-12));
        assert!(flow_derivative_residual(&o, &fam, z(), &eta(), 1e-5).unwrap() < 1e-7);
        let d = fam.derivation(&o, 1e-5);
        let (cv, ct) = super::super::derivation::equivariance_residuals(&o, &d, &eta(), &g1).unwrap();
        assert!(cv < 1e-12 && ct < 1e-12);
    }
}
