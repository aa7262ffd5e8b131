//! The algebroid bracket in three coordinate systems.
//!
//! * flat: `theta = D_{theta_1} theta_2 - D_{theta_2} theta_1` on `P0`;
//! * chart: `a = D_{a_1} a_2 - D_{a_2} a_1`,
//!   `b = D_{a_1} b_2 - D_{a_2} b_1 + b_2 b_1 - b_1 b_2`;
//! * section: `[X_1, X_2] = X_2 X_1 - X_1 X_2 + D_{X_1 eta}(X_2 o l) - D_{X_2 eta}(X_1 o l)`.
//!
//! Directional derivatives are exact (dual numbers), so all three forms can be
//! nested and compared at round-off level.

use crate::error::Result;
use crate::jet::{seed_with, OpRing};
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wstar::Projection;

use super::fields::{chart_support, frame_support, ChartField, FrameField, Section};

/// The flat bracket `[X_1, X_2]` of two invariant fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket<F1, F2> {
    pub first: F1,
    pub second: F2,
}

pub fn bracket_flat<F1, F2>(first: F1, second: F2) -> Bracket<F1, F2> {
    Bracket { first, second }
}

impl<T: Real, F1: FrameField<T>, F2: FrameField<T>> FrameField<T> for Bracket<F1, F2> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, eta: &R) -> Result<R> {
        let t1 = self.first.eval(orbit, eta)?;
        let t2 = self.second.eval(orbit, eta)?;
        let d2 = self.second.eval(orbit, &seed_with(eta, &t1))?.eps;
        let d1 = self.first.eval(orbit, &seed_with(eta, &t2))?.eps;
        Ok(d2.sub(&d1))
    }
}

impl<F1, F2> Bracket<F1, F2> {
    /// The bracket value assembled from the four Wirtinger pairings
    /// `<d2/d eta, t1> - <d1/d eta, t2> + <d2/d eta*, t1^*> - <d1/d eta*, t2^*>`.
    pub fn value_wirtinger<T: Real>(&self, orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Operator<T>>
    where
        F1: FrameField<T>,
        F2: FrameField<T>,
    {
        let t1 = self.first.value(orbit, eta)?;
        let t2 = self.second.value(orbit, eta)?;
        let w2 = self.second.wirtinger(orbit, eta, &t1)?;
        let w1 = self.first.wirtinger(orbit, eta, &t2)?;
        Ok(w2.holomorphic - w1.holomorphic + w2.antiholomorphic - w1.antiholomorphic)
    }
}

/// The chart expression `(a_p, b_p)` of an invariant field, evaluated on the
/// frames `eta = (p + y) lambda` for a fixed `lambda` mapping `p0` onto `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToChart<T: Real, F> {
    pub field: F,
    pub p: Projection<T>,
    pub lambda: Operator<T>,
}

/// `to_chart_field`: `a = (1 - eta (p eta)^{-1}) theta (p eta)^{-1}`, `b = p theta (p eta)^{-1}`.
pub fn to_chart_field<T: Real, F>(field: F, p: Projection<T>, lambda: Operator<T>) -> ToChart<T, F> {
    ToChart { field, p, lambda }
}

impl<T: Real, F: FrameField<T>> ChartField<T> for ToChart<T, F> {
    fn base(&self) -> &Projection<T> {
        &self.p
    }

    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, y: &R) -> Result<(R, R)> {
        let n = orbit.dim();
        let eta = y.add_const(self.p.matrix()).rmul(&self.lambda);
        let theta = self.field.eval(orbit, &eta)?;
        let p_eta_inv = eta.inverse_between(orbit.algebra(), &self.p, orbit.p0())?;
        let proj = R::constant(&Operator::identity(n)).sub(&eta.mul(&p_eta_inv));
        let a = proj.mul(&theta).mul(&p_eta_inv);
        let b = theta.lmul(self.p.matrix()).mul(&p_eta_inv);
        Ok((a, b))
    }
}

/// `theta = a z + (p + y) b z`, the field recovered from chart data.
pub fn chart_reconstruct_field<T: Real>(
    p: &Projection<T>,
    y: &Operator<T>,
    z: &Operator<T>,
    a: &Operator<T>,
    b: &Operator<T>,
) -> Operator<T> {
    a * z + (p.matrix() + y) * b * z
}

/// Chart bracket of two chart fields on the same base.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartBracket<C1, C2> {
    pub first: C1,
    pub second: C2,
}

pub fn bracket_chart<C1, C2>(first: C1, second: C2) -> ChartBracket<C1, C2> {
    ChartBracket { first, second }
}

impl<T: Real, C1: ChartField<T>, C2: ChartField<T>> ChartField<T> for ChartBracket<C1, C2> {
    fn base(&self) -> &Projection<T> {
        self.first.base()
    }

    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, y: &R) -> Result<(R, R)> {
        let (a1, b1) = self.first.eval(orbit, y)?;
        let (a2, b2) = self.second.eval(orbit, y)?;
        let (da2, db2) = self.second.eval(orbit, &seed_with(y, &a1))?;
        let (da1, db1) = self.first.eval(orbit, &seed_with(y, &a2))?;
        let a = da2.eps.sub(&da1.eps);
        let b = db2.eps.sub(&db1.eps).add(&b2.mul(&b1)).sub(&b1.mul(&b2));
        Ok((a, b))
    }
}

/// Section form of the bracket, evaluated with the frame `eta = q eta_ref`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionBracket<T: Real, S1, S2> {
    pub first: S1,
    pub second: S2,
    pub eta_ref: Operator<T>,
}

pub fn bracket_section<T: Real, S1, S2>(first: S1, second: S2, eta_ref: Operator<T>) -> SectionBracket<T, S1, S2> {
    SectionBracket { first, second, eta_ref }
}

impl<T: Real, S1: Section<T>, S2: Section<T>> Section<T> for SectionBracket<T, S1, S2> {
    fn eval<R: OpRing<T>>(&self, orbit: &LatticeOrbit<T>, q: &R) -> Result<R> {
        let eta = q.rmul(&self.eta_ref);
        let x1 = self.first.eval(orbit, q)?;
        let x2 = self.second.eval(orbit, q)?;
        let q1 = frame_support(orbit, &seed_with(&eta, &x1.mul(&eta)))?;
        let q2 = frame_support(orbit, &seed_with(&eta, &x2.mul(&eta)))?;
        let d2 = self.second.eval(orbit, &q1)?.eps;
        let d1 = self.first.eval(orbit, &q2)?.eps;
        Ok(x2.mul(&x1).sub(&x1.mul(&x2)).add(&d2).sub(&d1))
    }
}

/// Chart form of the section bracket: with `X_i(y) = X_i(l(p + y))` and
/// `a_i = (X_i - (p + y) X_i)(p + y)`,
/// `[X_1, X_2] = X_2 X_1 - X_1 X_2 + D_{a_1} X_2 - D_{a_2} X_1`.
pub fn bracket_section_chart<T: Real, R: OpRing<T>, S1: Section<T>, S2: Section<T>>(
    orbit: &LatticeOrbit<T>,
    first: &S1,
    second: &S2,
    p: &Projection<T>,
    y: &R,
) -> Result<R> {
    let q = chart_support(orbit, p, y)?;
    let x1 = first.eval(orbit, &q)?;
    let x2 = second.eval(orbit, &q)?;
    let s = y.add_const(p.matrix());
    let a1 = x1.sub(&s.mul(&x1)).mul(&s);
    let a2 = x2.sub(&s.mul(&x2)).mul(&s);
    let d2 = second.eval(orbit, &chart_support(orbit, p, &seed_with(y, &a1))?)?.eps;
    let d1 = first.eval(orbit, &chart_support(orbit, p, &seed_with(y, &a2))?)?.eps;
    Ok(x2.mul(&x1).sub(&x1.mul(&x2)).add(&d2).sub(&d1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::fields::{field_from_section, LinearField, PolySection, RightMultField};

    type Op = Operator<f64>;

    fn orbit() -> LatticeOrbit<f64> {
        LatticeOrbit::canonical(3, 1).unwrap()
    }

    fn eta() -> Op {
        Op::from_rows(&[&[(1.0, 0.5), (0.0, 0.0), (0.0, 0.0)], &[(0.3, 0.0), (0.0, 0.0), (0.0, 0.0)], &[(0.0, -1.0), (0.0, 0.0), (0.0, 0.0)]])
    }

    fn mats() -> (Op, Op) {
        let a1 = Op::from_rows(&[&[(0.0, 1.0), (2.0, 0.0), (0.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0), (0.5, 0.5)], &[(0.0, 0.0), (1.0, 1.0), (0.0, 0.0)]]);
        let a2 = Op::from_rows(&[&[(1.0, 0.0), (0.0, 0.0), (0.3, 0.0)], &[(0.0, 0.0), (0.0, -1.0), (0.0, 0.0)], &[(2.0, 0.0), (0.0, 0.0), (1.0, 1.0)]]);
        (a1, a2)
    }

    #[test]
    fn linear_fields_bracket_to_commutator() {
        let o = orbit();
        let (a1, a2) = mats();
        let br = bracket_flat(LinearField { a: a1.clone() }, LinearField { a: a2.clone() });
        let v = br.value(&o, &eta()).unwrap();
        let expect = (&a2 * &a1 - &a1 * &a2) * eta();
        assert!(v.dist(&expect) < 1e-13);
        assert!(br.value_wirtinger(&o, &eta()).unwrap().dist(&expect) < 1e-13);
    }

    #[test]
    fn constant_sections_bracket_to_commutator() {
        let o = orbit();
        let (b1, b2) = mats();
        let s = bracket_section(PolySection::constant(b1.clone()), PolySection::constant(b2.clone()), eta());
        let q = frame_support(&o, &eta()).unwrap();
        let v: Op = s.eval(&o, &q).unwrap();
        assert!(v.dist(&(&b2 * &b1 - &b1 * &b2)) < 1e-13);
    }

    #[test]
    fn vertical_field_has_no_anchor() {
        let o = orbit();
        let m = Op::from_rows(&[&[(2.0, 1.0), (0.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0); 3], &[(0.0, 0.0); 3]]);
        let p = o.p0().clone();
        let c = to_chart_field(RightMultField { m }, p.clone(), p.matrix().clone());
        let y = Op::from_real_rows(&[&[0.0, 0.0, 0.0], &[0.5, 0.0, 0.0], &[-1.0, 0.0, 0.0]]);
        let (a, _b): (Op, Op) = c.eval(&o, &y).unwrap();
        assert!(a.norm() < 1e-14);
    }

    #[test]
    fn antisymmetry_of_flat_bracket() {
        let o = orbit();
        let (c1, c2) = mats();
        let f = field_from_section(PolySection::new(vec![vec![c1, c2]]));
        let br = bracket_flat(&f, &f);
        assert!(br.value(&o, &eta()).unwrap().norm() < 1e-12);
    }
}
