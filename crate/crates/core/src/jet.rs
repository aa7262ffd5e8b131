//! Forward-mode dual numbers over operators.
//!
//! Field formulas are written once against [`OpRing`]. Evaluated on plain
//! [`Operator`]s they give values; evaluated on [`Dual`]s they give exact real
//! directional derivatives, and `Dual<Dual<_>>` gives second derivatives, which
//! is what nested brackets need.

use crate::error::Result;
use crate::operator::Operator;
use crate::scalar::{Cx, Real};
use crate::wstar::{inverse_between, Algebra, Projection};

/// Operations a field formula may use.
pub trait OpRing<T: Real>: Clone + Send + Sync + Sized {
    /// A constant (zero derivative) element.
    fn constant(x: &Operator<T>) -> Self;
    /// The underlying value with all derivative parts dropped.
    fn primal(&self) -> &Operator<T>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn adjoint(&self) -> Self;
    fn scale(&self, c: Cx<T>) -> Self;
    /// `tr(x) 1`, used to build scalar functions as multiples of the identity.
    fn trace_id(&self) -> Self;
    /// Inverse of the compression `left x right` from `range(right)` onto
    /// `range(left)` (see [`crate::wstar::inverse_between`]).
    fn inverse_between(&self, alg: &Algebra<T>, left: &Projection<T>, right: &Projection<T>) -> Result<Self>;

    fn lmul(&self, c: &Operator<T>) -> Self {
        Self::constant(c).mul(self)
    }

    fn rmul(&self, c: &Operator<T>) -> Self {
        self.mul(&Self::constant(c))
    }

    fn add_const(&self, c: &Operator<T>) -> Self {
        self.add(&Self::constant(c))
    }
}

impl<T: Real> OpRing<T> for Operator<T> {
    fn constant(x: &Operator<T>) -> Self {
        x.clone()
    }

    fn primal(&self) -> &Operator<T> {
        self
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn adjoint(&self) -> Self {
        Operator::adjoint(self)
    }

    fn scale(&self, c: Cx<T>) -> Self {
        Operator::scale(self, c)
    }

    fn trace_id(&self) -> Self {
        Operator::identity(self.dim()).scale(self.trace())
    }

    fn inverse_between(&self, alg: &Algebra<T>, left: &Projection<T>, right: &Projection<T>) -> Result<Self> {
        inverse_between(alg, left, right, self)
    }

    fn lmul(&self, c: &Operator<T>) -> Self {
        c * self
    }

    fn rmul(&self, c: &Operator<T>) -> Self {
        self * c
    }

    fn add_const(&self, c: &Operator<T>) -> Self {
        self + c
    }
}

/// `re + eps * e` with `e^2 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual<R> {
    pub re: R,
    pub eps: R,
}

impl<R> Dual<R> {
    pub fn new(re: R, eps: R) -> Self {
        Dual { re, eps }
    }
}

impl<T: Real, R: OpRing<T>> OpRing<T> for Dual<R> {
    fn constant(x: &Operator<T>) -> Self {
        Dual { re: R::constant(x), eps: R::constant(&Operator::zeros(x.dim())) }
    }

    fn primal(&self) -> &Operator<T> {
        self.re.primal()
    }

    fn add(&self, o: &Self) -> Self {
        Dual { re: self.re.add(&o.re), eps: self.eps.add(&o.eps) }
    }

    fn sub(&self, o: &Self) -> Self {
        Dual { re: self.re.sub(&o.re), eps: self.eps.sub(&o.eps) }
    }

    fn mul(&self, o: &Self) -> Self {
        Dual { re: self.re.mul(&o.re), eps: self.re.mul(&o.eps).add(&self.eps.mul(&o.re)) }
    }

    fn adjoint(&self) -> Self {
        Dual { re: self.re.adjoint(), eps: self.eps.adjoint() }
    }

    fn scale(&self, c: Cx<T>) -> Self {
        Dual { re: self.re.scale(c), eps: self.eps.scale(c) }
    }

    fn trace_id(&self) -> Self {
        Dual { re: self.re.trace_id(), eps: self.eps.trace_id() }
    }

    fn inverse_between(&self, alg: &Algebra<T>, left: &Projection<T>, right: &Projection<T>) -> Result<Self> {
        // d(z) = -z dx z; z already absorbs the compressions.
        let z = self.re.inverse_between(alg, left, right)?;
        let dz = z.mul(&self.eps).mul(&z).scale(Cx::new(-T::one(), T::zero()));
        Ok(Dual { re: z, eps: dz })
    }

    fn lmul(&self, c: &Operator<T>) -> Self {
        Dual { re: self.re.lmul(c), eps: self.eps.lmul(c) }
    }

    fn rmul(&self, c: &Operator<T>) -> Self {
        Dual { re: self.re.rmul(c), eps: self.eps.rmul(c) }
    }

    fn add_const(&self, c: &Operator<T>) -> Self {
        Dual { re: self.re.add_const(c), eps: self.eps.clone() }
    }
}

/// Seeds `x + eps * dx` with `dx` constant at every deeper level.
pub fn seed<T: Real, R: OpRing<T>>(x: &R, dx: &Operator<T>) -> Dual<R> {
    Dual { re: x.clone(), eps: R::constant(dx) }
}

/// Seeds `x + eps * dx` where `dx` itself carries derivatives.
pub fn seed_with<R: Clone>(x: &R, dx: &R) -> Dual<R> {
    Dual { re: x.clone(), eps: dx.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = Operator<f64>;

    #[test]
    fn product_rule() {
        let a = Op::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        let e = Op::from_rows(&[&[(0.0, 1.0), (0.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0)]]);
        let x = seed(&a, &e);
        let sq = x.mul(&x);
        assert!(sq.eps.dist(&(&a * &e + &e * &a)) < 1e-15);
        let adj = x.adjoint().mul(&x);
        assert!(adj.eps.dist(&(e.adjoint() * &a + a.adjoint() * &e)) < 1e-15);
    }

    #[test]
    fn inverse_derivative_matches_difference_quotient() {
        let alg = Algebra::with_defaults(3);
        let p = Projection::canonical(3, 2);
        let x = Op::from_rows(&[
            &[(2.0, 0.1), (0.3, 0.0), (0.5, 0.0)],
            &[(0.1, 0.0), (1.5, -0.2), (0.0, 0.4)],
            &[(0.2, 0.0), (0.0, 0.0), (1.0, 0.0)],
        ]);
        let e = Op::from_rows(&[
            &[(0.1, 0.2), (0.0, 0.3), (1.0, 0.0)],
            &[(0.5, 0.0), (0.2, 0.0), (0.0, 0.0)],
            &[(0.0, 1.0), (0.3, 0.0), (0.7, 0.0)],
        ]);
        let d = seed(&x, &e).inverse_between(&alg, &p, &p).unwrap();
        let h = 1e-6;
        let plus = inverse_between(&alg, &p, &p, &(&x + &e.scale_real(h))).unwrap();
        let minus = inverse_between(&alg, &p, &p, &(&x - &e.scale_real(h))).unwrap();
        let fd = (plus - minus).scale_real(0.5 / h);
        assert!(d.eps.dist(&fd) < 1e-8);
    }

    #[test]
    fn nested_duals_give_mixed_second_derivative() {
        // f(x) = x^3, second derivative along (e1, e2) = sum over orderings.
        let a = Op::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let e1 = Op::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let e2 = Op::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let inner = seed(&a, &e1);
        let x: Dual<Dual<Op>> = seed(&inner, &e2);
        let c = x.mul(&x).mul(&x);
        let expect = &e1 * &e2 * &a + &e1 * &a * &e2 + &e2 * &e1 * &a + &a * &e1 * &e2 + &e2 * &a * &e1 + &a * &e2 * &e1;
        assert!(c.eps.eps.dist(&expect) < 1e-13);
    }
}
