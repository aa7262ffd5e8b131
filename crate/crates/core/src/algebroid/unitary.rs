//! Tangency to the unitary frames `eta^* eta = p0`.

use crate::error::{Error, Result};
use crate::bundle::unitary_residual;
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::Real;

use super::fields::{ChartField, FrameField};

/// `|eta^* theta + theta^* eta|` on a unitary frame.
pub fn unitary_condition<T: Real, F: FrameField<T>>(orbit: &LatticeOrbit<T>, f: &F, eta: &Operator<T>) -> Result<T> {
    let res = unitary_residual(orbit, eta);
    if res > orbit.algebra().tol_eq() {
        return Err(Error::NonUnitary(res.as_f64()));
    }
    let theta = f.value(orbit, eta)?;
    Ok((eta.adjoint() * &theta + theta.adjoint() * eta).norm())
}

/// `Y_p = (p + y)^* (a_p + (p + y) b_p)`; tangency in chart form is `Y + Y^* = 0`.
pub fn chart_unitary_y<T: Real, C: ChartField<T>>(orbit: &LatticeOrbit<T>, c: &C, y: &Operator<T>) -> Result<Operator<T>> {
    let (a, b): (Operator<T>, Operator<T>) = c.eval(orbit, y)?;
    let s = c.base().matrix() + y;
    Ok(s.adjoint() * (a + &s * b))
}

/// `|Y + Y^*|`.
pub fn chart_unitary_residual<T: Real, C: ChartField<T>>(orbit: &LatticeOrbit<T>, c: &C, y: &Operator<T>) -> Result<T> {
    let yv = chart_unitary_y(orbit, c, y)?;
    Ok((&yv + yv.adjoint()).norm())
}
