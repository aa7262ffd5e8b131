//! The orbit `L_{p0}(M)` of a projection `p0` under inner automorphisms,
//! with the charts `phi_p : Pi_p -> (1-p)Mp`, local sections `sigma_p` and
//! Möbius transition maps between charts.
//!
//! In `M_n(C)` two projections are equivalent iff they have equal rank, and
//! `q` lies in the chart domain `Pi_p` iff `pqp` is invertible in `pMp`. Then
//!
//! ```text
//! phi_p(q)      = (1-p) q (pqp)^{-1} p
//! phi_p^{-1}(y) = l(p + y)
//! sigma_p(q)    = p + phi_p(q)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::GroupoidElement;
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wstar::{corner_inverse, inverse_between, polar_decompose, Algebra, Projection};

/// The orbit of `p0`: every projection of the same rank.
#[derive(Debug, Clone)]
pub struct LatticeOrbit<T: Real> {
    algebra: Algebra<T>,
    p0: Projection<T>,
}

impl<T: Real> LatticeOrbit<T> {
    pub fn new(algebra: Algebra<T>, p0: Projection<T>) -> Result<Self> {
        if p0.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: p0.dim() });
        }
        if p0.rank() == 0 {
            return Err(Error::InvalidInput("base projection must be nonzero".into()));
        }
        Ok(LatticeOrbit { algebra, p0 })
    }

    /// Orbit of `diag(1_k, 0)` in `M_n(C)` with default tolerances.
    pub fn canonical(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidInput(format!("rank {k} must lie in 1..={n}")));
        }
        LatticeOrbit::new(Algebra::with_defaults(n), Projection::canonical(n, k))
    }

    pub fn algebra(&self) -> &Algebra<T> {
        &self.algebra
    }

    pub fn p0(&self) -> &Projection<T> {
        &self.p0
    }

    pub fn base_rank(&self) -> usize {
        self.p0.rank()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn contains(&self, q: &Projection<T>) -> bool {
        q.dim() == self.dim() && q.rank() == self.base_rank()
    }
}

/// A chart coordinate `y` in `(1-p)Mp` together with its base `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct ChartPoint<T: Real> {
    pub base: Projection<T>,
    pub coordinate: Operator<T>,
}

impl<T: Real> ChartPoint<T> {
    /// Validates `p y = 0` and `y (1-p) = 0` within `tol_eq`.
    pub fn new(alg: &Algebra<T>, base: Projection<T>, coordinate: Operator<T>) -> Result<Self> {
        if coordinate.dim() != base.dim() {
            return Err(Error::DimensionMismatch { expected: base.dim(), found: coordinate.dim() });
        }
        let left = (base.matrix() * &coordinate).norm();
        let right = (&coordinate * base.complement().matrix()).norm();
        if left > alg.tol_eq() || right > alg.tol_eq() {
            return Err(Error::InvalidInput(format!(
                "coordinate leaves the corner (1-p)Mp (residuals {:e}, {:e})",
                left.as_f64(),
                right.as_f64()
            )));
        }
        Ok(ChartPoint { base, coordinate })
    }

    /// The chart center `y = 0`.
    pub fn origin(base: Projection<T>) -> Self {
        let n = base.dim();
        ChartPoint { base, coordinate: Operator::zeros(n) }
    }

    /// `p + y`, the section value `sigma_p(phi_p^{-1}(y))`.
    pub fn lift(&self) -> Operator<T> {
        self.base.matrix() + &self.coordinate
    }
}

/// Whether `q` lies in the chart domain `Pi_p`.
pub fn in_chart<T: Real>(alg: &Algebra<T>, p: &Projection<T>, q: &Projection<T>) -> bool {
    p.rank() == q.rank() && p.dim() == q.dim() && corner_inverse(alg, p, q.matrix()).is_ok()
}

pub fn phi<T: Real>(alg: &Algebra<T>, p: &Projection<T>, q: &Projection<T>) -> Result<ChartPoint<T>> {
    if p.rank() != q.rank() {
        return Err(Error::ChartDomain);
    }
    let inv = corner_inverse(alg, p, q.matrix()).map_err(|_| Error::ChartDomain)?;
    let y = p.complement().matrix() * q.matrix() * inv * p.matrix();
    Ok(ChartPoint { base: p.clone(), coordinate: y })
}

pub fn phi_inv<T: Real>(alg: &Algebra<T>, pt: &ChartPoint<T>) -> Result<Projection<T>> {
    Ok(polar_decompose(alg, &pt.lift())?.l_support)
}

/// `sigma_p(q) = p + phi_p(q)`, an element with `l = q` and `r = p`.
pub fn sigma<T: Real>(alg: &Algebra<T>, p: &Projection<T>, q: &Projection<T>) -> Result<GroupoidElement<T>> {
    GroupoidElement::new(alg, phi(alg, p, q)?.lift())
}

/// The corners `a = p'p`, `b = (1-p')p`, `c = p'(1-p)`, `d = (1-p')(1-p)` of the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionCoefficients<T: Real> {
    pub a: Operator<T>,
    pub b: Operator<T>,
    pub c: Operator<T>,
    pub d: Operator<T>,
}

pub fn transition_coefficients<T: Real>(p: &Projection<T>, p_new: &Projection<T>) -> TransitionCoefficients<T> {
    let (pm, pc) = (p.matrix(), p.complement());
    let (nm, nc) = (p_new.matrix(), p_new.complement());
    TransitionCoefficients {
        a: nm * pm,
        b: nc.matrix() * pm,
        c: nm * pc.matrix(),
        d: nc.matrix() * pc.matrix(),
    }
}

/// `y' = (b + d y)(a + c y)^{-1}`, the inverse taken from `range(p')` onto `range(p)`.
pub fn transition<T: Real>(alg: &Algebra<T>, pt: &ChartPoint<T>, p_new: &Projection<T>) -> Result<ChartPoint<T>> {
    if pt.base.rank() != p_new.rank() {
        return Err(Error::ChartOverlap);
    }
    let tc = transition_coefficients(&pt.base, p_new);
    let y = &pt.coordinate;
    let den = &tc.a + &tc.c * y;
    let inv = inverse_between(alg, p_new, &pt.base, &den).map_err(|_| Error::ChartOverlap)?;
    let y_new = (&tc.b + &tc.d * y) * inv;
    Ok(ChartPoint { base: p_new.clone(), coordinate: y_new })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = Operator<f64>;

    fn setup() -> (Algebra<f64>, Projection<f64>, Projection<f64>) {
        let alg = Algebra::with_defaults(2);
        let p = Projection::coordinate(2, &[0]);
        let q = Projection::new(&alg, Op::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])).unwrap();
        (alg, p, q)
    }

    #[test]
    fn chart_membership() {
        let (alg, p, q) = setup();
        assert!(in_chart(&alg, &p, &p));
        assert!(in_chart(&alg, &p, &q));
        assert!(!in_chart(&alg, &p, &Projection::coordinate(2, &[1])));
        assert!(!in_chart(&alg, &p, &Projection::identity(2)));
    }

    #[test]
    fn phi_of_diagonal_line() {
        let (alg, p, q) = setup();
        let y = phi(&alg, &p, &q).unwrap();
        assert!(y.coordinate.dist(&Op::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]])) < 1e-14);
        let back = phi_inv(&alg, &y).unwrap();
        assert!(back.dist(&q) < 1e-14);
        assert!(phi(&alg, &p, &p).unwrap().coordinate.norm() < 1e-15);
        assert!(phi_inv(&alg, &ChartPoint::origin(p.clone())).unwrap().dist(&p) < 1e-15);
    }

    #[test]
    fn sigma_supports() {
        let (alg, p, q) = setup();
        let s = sigma(&alg, &p, &q).unwrap();
        assert!(s.l().dist(&q) < 1e-14);
        assert!(s.r().dist(&p) < 1e-14);
        assert!(sigma(&alg, &p, &p).unwrap().op().dist(p.matrix()) < 1e-15);
    }

    #[test]
    fn coefficients_partition_identity() {
        let (_, p, q) = setup();
        let tc = transition_coefficients(&p, &q);
        assert!(tc.a.dist(&Op::from_real_rows(&[&[0.5, 0.0], &[0.5, 0.0]])) < 1e-15);
        let sum = &tc.a + &tc.b + &tc.c + &tc.d;
        assert!(sum.dist(&Op::identity(2)) < 1e-15);
        let same = transition_coefficients(&p, &p);
        assert_eq!(same.a, *p.matrix());
        assert!(same.b.norm() == 0.0 && same.c.norm() == 0.0);
    }

    #[test]
    fn transition_examples() {
        let (alg, p, q) = setup();
        let y = phi(&alg, &p, &q).unwrap();
        assert!(transition(&alg, &y, &p).unwrap().coordinate.dist(&y.coordinate) < 1e-15);
        let origin = ChartPoint::origin(p.clone());
        let moved = transition(&alg, &origin, &q).unwrap();
        let direct = phi(&alg, &q, &p).unwrap();
        assert!(moved.coordinate.dist(&direct.coordinate) < 1e-14);
    }

    #[test]
    fn chart_point_confinement() {
        let (alg, p, _) = setup();
        assert!(ChartPoint::new(&alg, p.clone(), Op::from_real_rows(&[&[0.0, 0.0], &[3.0, 0.0]])).is_ok());
        assert!(ChartPoint::new(&alg, p, Op::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])).is_err());
    }
}
