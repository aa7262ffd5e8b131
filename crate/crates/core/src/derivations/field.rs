//! Object-safe vector fields on `P0` and maps `P0 -> End(M p0)`.

use std::sync::Arc;

use crate::algebroid::FrameField;
use crate::error::Result;
use crate::jet::Dual;
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wirtinger::central_difference;

use super::endo::{CornerSpace, Endo};

/// A vector field `eta -> Z(eta)` in `M p0` with a real directional derivative.
pub trait VectorField<T: Real>: Send + Sync {
    fn value(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>>;

    /// `D_E Z` at `eta`; central differences with step `h` unless overridden.
    fn directional(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, e: &Operator<T>, h: T) -> Result<Operator<T>> {
        central_difference(|x| self.value(orbit, x), eta, e, h)
    }
}

pub type DynField<T> = Arc<dyn VectorField<T>>;

/// A [`FrameField`] used as a [`VectorField`] with exact directional derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct Analytic<F>(pub F);

impl<T: Real, F: FrameField<T>> VectorField<T> for Analytic<F> {
    fn value(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>> {
        self.0.value(orbit, eta)
    }

    fn directional(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>, e: &Operator<T>, _h: T) -> Result<Operator<T>> {
        Ok(self.0.eval(orbit, &Dual::new(eta.clone(), e.clone()))?.eps)
    }
}

/// The zero field.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ZeroField;

impl<T: Real> VectorField<T> for ZeroField {
    fn value(&self, orbit: &LatticeOrbit<T>, _eta: &Operator<T>) -> Result<Operator<T>> {
        Ok(Operator::zeros(orbit.dim()))
    }

    fn directional(&self, orbit: &LatticeOrbit<T>, _eta: &Operator<T>, _e: &Operator<T>, _h: T) -> Result<Operator<T>> {
        Ok(Operator::zeros(orbit.dim()))
    }
}

/// `D_{theta_1} theta_2 - D_{theta_2} theta_1`, the commutator of two fields.
pub struct FieldBracket<T: Real> {
    pub first: DynField<T>,
    pub second: DynField<T>,
    pub h: T,
}

impl<T: Real> VectorField<T> for FieldBracket<T> {
    fn value(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>> {
        let t1 = self.first.value(orbit, eta)?;
        let t2 = self.second.value(orbit, eta)?;
        let d2 = self.second.directional(orbit, eta, &t1, self.h)?;
        let d1 = self.first.directional(orbit, eta, &t2, self.h)?;
        Ok(d2 - d1)
    }
}

/// A map `eta -> Theta(eta)` into endomorphisms of `M p0`.
pub trait ThetaMap<T: Real>: Send + Sync {
    fn at(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Endo<T>>;
}

pub type DynTheta<T> = Arc<dyn ThetaMap<T>>;

/// A constant endomorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstTheta<T: Real>(pub Endo<T>);

impl<T: Real> ThetaMap<T> for ConstTheta<T> {
    fn at(&self, _orbit: &LatticeOrbit<T>, _eta: &Operator<T>) -> Result<Endo<T>> {
        Ok(self.0.clone())
    }
}

/// The complex Jacobian `E -> D_E theta` of a holomorphic field.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianTheta<F>(pub F);

impl<T: Real, F: FrameField<T>> ThetaMap<T> for JacobianTheta<F> {
    fn at(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Endo<T>> {
        let space = CornerSpace::new(orbit);
        Endo::from_linear_map(&space, |e| self.0.directional(orbit, eta, e))
    }
}

/// `Theta(eta) = L_{A(eta)}` for a field of operators `A`, here `A(eta) = S(l(eta))`
/// with `S` a polynomial section.
pub struct LeftSectionTheta<S>(pub S);

impl<T: Real, S: crate::algebroid::Section<T>> ThetaMap<T> for LeftSectionTheta<S> {
    fn at(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Endo<T>> {
        let q = crate::algebroid::frame_support(orbit, eta)?;
        let a: Operator<T> = self.0.eval(orbit, &q)?;
        Ok(Endo::left_mult(&CornerSpace::new(orbit), &a))
    }
}

/// Directional derivative of a [`ThetaMap`] by central differences.
pub fn theta_directional<T: Real>(
    theta: &dyn ThetaMap<T>,
    orbit: &LatticeOrbit<T>,
    eta: &Operator<T>,
    e: &Operator<T>,
    h: T,
) -> Result<Endo<T>> {
    let step = e.scale_real(h);
    let plus = theta.at(orbit, &(eta + &step))?;
    let minus = theta.at(orbit, &(eta - &step))?;
    Ok(plus.sub(&minus).scale_real(T::one() / (h + h)))
}
