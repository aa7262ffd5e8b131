//! The tangent group `TG0 = G0 x p0 M p0` with product
//! `(g, x)(h, y) = (gh, x + g y g^{-1})` and its action
//! `(theta, eta)(g, x) = (theta g + eta x g, eta g)` on `TP0`.

use crate::error::{Error, Result};
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wstar::corner_inverse;

#[derive(Debug, Clone, PartialEq)]
pub struct TangentGroupElement<T: Real> {
    pub g: Operator<T>,
    pub x: Operator<T>,
}

impl<T: Real> TangentGroupElement<T> {
    /// Checks that `g` is invertible in `p0 M p0` and `x` lies in that corner.
    pub fn new(orbit: &LatticeOrbit<T>, g: Operator<T>, x: Operator<T>) -> Result<Self> {
        let p0 = orbit.p0().matrix();
        let leak = (&x - p0 * &x * p0).norm();
        if leak > orbit.algebra().tol_eq() {
            return Err(Error::InvalidInput(format!("x leaves p0 M p0 (residual {:e})", leak.as_f64())));
        }
        corner_inverse(orbit.algebra(), orbit.p0(), &g)?;
        Ok(TangentGroupElement { g, x })
    }

    pub fn unit(orbit: &LatticeOrbit<T>) -> Self {
        TangentGroupElement { g: orbit.p0().matrix().clone(), x: Operator::zeros(orbit.dim()) }
    }

    /// `(g^{-1}, -g^{-1} x g)`.
    pub fn inverse(&self, orbit: &LatticeOrbit<T>) -> Result<Self> {
        let gi = corner_inverse(orbit.algebra(), orbit.p0(), &self.g)?;
        let x = -(&gi * &self.x * &self.g);
        Ok(TangentGroupElement { g: gi, x })
    }

    pub fn dist(&self, other: &Self) -> T {
        let a = self.g.dist(&other.g);
        let b = self.x.dist(&other.x);
        if a > b {
            a
        } else {
            b
        }
    }
}

pub fn tangent_group_product<T: Real>(
    orbit: &LatticeOrbit<T>,
    t1: &TangentGroupElement<T>,
    t2: &TangentGroupElement<T>,
) -> Result<TangentGroupElement<T>> {
    let gi = corner_inverse(orbit.algebra(), orbit.p0(), &t1.g)?;
    Ok(TangentGroupElement { g: &t1.g * &t2.g, x: &t1.x + &t1.g * &t2.x * gi })
}

/// `(theta, eta) * (g, x) = (theta g + eta x g, eta g)`.
pub fn tangent_action<T: Real>(
    theta: &Operator<T>,
    eta: &Operator<T>,
    t: &TangentGroupElement<T>,
) -> (Operator<T>, Operator<T>) {
    (theta * &t.g + eta * &t.x * &t.g, eta * &t.g)
}
