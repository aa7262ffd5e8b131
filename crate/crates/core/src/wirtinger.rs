//! Wirtinger directional derivatives of operator-valued maps.
//!
//! For `F` and a direction `E`, with `D_E F` the real directional derivative,
//!
//! ```text
//! <dF/d eta,  E>   = (D_E F - i D_{iE} F) / 2
//! <dF/d eta*, E^*> = (D_E F + i D_{iE} F) / 2
//! ```
//!
//! so the two parts add up to `D_E F`. Both an exact (dual number) and a
//! central-difference evaluator are provided.

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{Cx, Real};

/// The pair `(<dF/d eta, E>, <dF/d eta*, E^*>)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WirtingerPair<T: Real> {
    pub holomorphic: Operator<T>,
    pub antiholomorphic: Operator<T>,
}

impl<T: Real> WirtingerPair<T> {
    /// Combines `D_E F` and `D_{iE} F`.
    pub fn from_directionals(d_e: &Operator<T>, d_ie: &Operator<T>) -> Self {
        let i = Cx::new(T::zero(), T::one());
        let half = T::lit(0.5);
        let rot = d_ie.scale(i);
        WirtingerPair {
            holomorphic: (d_e - &rot).scale_real(half),
            antiholomorphic: (d_e + &rot).scale_real(half),
        }
    }

    /// `D_E F`, the sum of both parts.
    pub fn total(&self) -> Operator<T> {
        &self.holomorphic + &self.antiholomorphic
    }

    pub fn dist(&self, other: &Self) -> T {
        let a = self.holomorphic.dist(&other.holomorphic);
        let b = self.antiholomorphic.dist(&other.antiholomorphic);
        if a > b {
            a
        } else {
            b
        }
    }
}

fn i_times<T: Real>(e: &Operator<T>) -> Operator<T> {
    e.scale(Cx::new(T::zero(), T::one()))
}

/// Exact Wirtinger pair from a real directional derivative oracle `d(E) = D_E F`.
pub fn wirtinger_exact<T: Real>(
    mut directional: impl FnMut(&Operator<T>) -> Result<Operator<T>>,
    e: &Operator<T>,
) -> Result<WirtingerPair<T>> {
    let d_e = directional(e)?;
    let d_ie = directional(&i_times(e))?;
    Ok(WirtingerPair::from_directionals(&d_e, &d_ie))
}

/// Central difference `(F(x + hE) - F(x - hE)) / 2h`.
pub fn central_difference<T: Real>(
    mut f: impl FnMut(&Operator<T>) -> Result<Operator<T>>,
    x: &Operator<T>,
    e: &Operator<T>,
    h: T,
) -> Result<Operator<T>> {
    if !(h > T::zero()) {
        return Err(Error::Derivative("finite-difference step must be positive".into()));
    }
    let step = e.scale_real(h);
    let plus = f(&(x + &step))?;
    let minus = f(&(x - &step))?;
    let d = (plus - minus).scale_real(T::one() / (h + h));
    if !d.is_finite() {
        return Err(Error::Derivative("non-finite difference quotient".into()));
    }
    Ok(d)
}

/// Wirtinger pair by central differences along `E` and `iE`.
pub fn wirtinger_fd<T: Real>(
    mut f: impl FnMut(&Operator<T>) -> Result<Operator<T>>,
    x: &Operator<T>,
    e: &Operator<T>,
    h: T,
) -> Result<WirtingerPair<T>> {
    let d_e = central_difference(&mut f, x, e, h)?;
    let d_ie = central_difference(&mut f, x, &i_times(e), h)?;
    Ok(WirtingerPair::from_directionals(&d_e, &d_ie))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = Operator<f64>;

    #[test]
    fn linear_map_is_holomorphic() {
        let a = Op::from_rows(&[&[(1.0, 1.0), (0.0, 2.0)], &[(3.0, 0.0), (0.0, -1.0)]]);
        let x = Op::from_real_rows(&[&[1.0, 0.0], &[0.5, 0.0]]);
        let e = Op::from_rows(&[&[(0.2, 0.1), (0.0, 0.0)], &[(1.0, -1.0), (0.0, 0.0)]]);
        let w = wirtinger_fd(|y| Ok(&a * y), &x, &e, 1e-5).unwrap();
        assert!(w.holomorphic.dist(&(&a * &e)) < 1e-9);
        assert!(w.antiholomorphic.norm() < 1e-9);
    }

    #[test]
    fn adjoint_is_antiholomorphic() {
        let x = Op::from_real_rows(&[&[1.0, 0.0], &[0.5, 0.0]]);
        let e = Op::from_rows(&[&[(0.2, 0.1), (0.0, 0.0)], &[(1.0, -1.0), (0.0, 0.0)]]);
        let w = wirtinger_fd(|y| Ok(y.adjoint()), &x, &e, 1e-5).unwrap();
        assert!(w.holomorphic.norm() < 1e-9);
        assert!(w.antiholomorphic.dist(&e.adjoint()) < 1e-9);
    }

    #[test]
    fn rejects_bad_step() {
        let x = Op::identity(2);
        assert!(central_difference(|y| Ok(y.clone()), &x, &x, 0.0).is_err());
    }
}
