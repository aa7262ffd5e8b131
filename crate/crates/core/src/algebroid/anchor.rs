//! The anchor `a = Tl`, the tangent-field bracket on a chart, and the Leibniz
//! defect of the algebroid bracket.

use crate::error::Result;
use crate::jet::{seed_with, Dual, OpRing};
use crate::lattice::{phi, LatticeOrbit};
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wirtinger::central_difference;
use crate::wstar::{polar_decompose, Projection};

use super::bracket::{bracket_flat, to_chart_field, Bracket, ToChart};
use super::fields::{chart_support, ChartField, FrameField, ScaledField, Section};

/// The anchor of an invariant field as the vector field `y -> a_p(y)` on the
/// chart `phi_p(Pi_p)`.
pub fn anchor<T: Real, F: FrameField<T>>(field: F, p: Projection<T>, lambda: Operator<T>) -> ToChart<T, F> {
    to_chart_field(field, p, lambda)
}

/// `a_p(y)`.
pub fn anchor_value<T: Real, C: ChartField<T>>(orbit: &LatticeOrbit<T>, c: &C, y: &Operator<T>) -> Result<Operator<T>> {
    Ok(c.eval(orbit, y)?.0)
}

/// `d/dt phi_p(l(gamma_t))` at `t = 0` by central differences, for a curve of frames.
pub fn lattice_flow_velocity<T: Real>(
    orbit: &LatticeOrbit<T>,
    p: &Projection<T>,
    mut curve: impl FnMut(T) -> Result<Operator<T>>,
    h: T,
) -> Result<Operator<T>> {
    let alg = orbit.algebra();
    let mut coord = |t: T| -> Result<Operator<T>> {
        let q = polar_decompose(alg, &curve(t)?)?.l_support;
        Ok(phi(alg, p, &q)?.coordinate)
    };
    let plus = coord(h)?;
    let minus = coord(-h)?;
    Ok((plus - minus).scale_real(T::one() / (h + h)))
}

/// Bracket `D_{v1} v2 - D_{v2} v1` of the anchors of two chart fields,
/// by central differences in `y`.
pub fn anchor_bracket_fd<T: Real, C1: ChartField<T>, C2: ChartField<T>>(
    orbit: &LatticeOrbit<T>,
    c1: &C1,
    c2: &C2,
    y: &Operator<T>,
    h: T,
) -> Result<Operator<T>> {
    let v1 = anchor_value(orbit, c1, y)?;
    let v2 = anchor_value(orbit, c2, y)?;
    let d2 = central_difference(|x| anchor_value(orbit, c2, x), y, &v1, h)?;
    let d1 = central_difference(|x| anchor_value(orbit, c1, x), y, &v2, h)?;
    Ok(d2 - d1)
}

/// `a(X)(f)` at `y`: the derivative of `y -> f(l(p + y))` along `a_p(y)`.
pub fn anchor_derivative<T: Real, C: ChartField<T>, S: Section<T>>(
    orbit: &LatticeOrbit<T>,
    c: &C,
    f: &S,
    y: &Operator<T>,
) -> Result<Operator<T>> {
    let v = anchor_value(orbit, c, y)?;
    let q = chart_support(orbit, c.base(), &Dual::new(y.clone(), v))?;
    Ok(f.eval(orbit, &q)?.eps)
}

/// `|[X_1, f X_2] - f [X_1, X_2] - a(X_1)(f) X_2|` at the frame `eta`, with
/// the anchor term computed in the chart at `p`.
pub fn leibniz_check<T: Real, F1, F2, S>(
    orbit: &LatticeOrbit<T>,
    f1: &F1,
    f2: &F2,
    func: &S,
    p: &Projection<T>,
    lambda: &Operator<T>,
    eta: &Operator<T>,
) -> Result<T>
where
    F1: FrameField<T>,
    F2: FrameField<T>,
    S: Section<T>,
{
    let alg = orbit.algebra();
    let q = polar_decompose(alg, eta)?.l_support;
    let y = phi(alg, p, &q)?.coordinate;
    let scaled = ScaledField { scalar: func, field: f2 };
    let lhs = bracket_flat(f1, &scaled).value(orbit, eta)?;
    let fq: Operator<T> = func.eval(orbit, &q.matrix().clone())?;
    let plain = Bracket { first: f1, second: f2 }.value(orbit, eta)?;
    let chart = to_chart_field(f1, p.clone(), lambda.clone());
    let af = anchor_derivative(orbit, &chart, func, &y)?;
    let rhs = &fq * plain + af * f2.value(orbit, eta)?;
    Ok(lhs.dist(&rhs))
}

/// Exact chart bracket anchor `D_{a_1} a_2 - D_{a_2} a_1` (dual numbers).
pub fn anchor_bracket_exact<T: Real, C1: ChartField<T>, C2: ChartField<T>>(
    orbit: &LatticeOrbit<T>,
    c1: &C1,
    c2: &C2,
    y: &Operator<T>,
) -> Result<Operator<T>> {
    let (v1, _) = c1.eval(orbit, y)?;
    let (v2, _) = c2.eval(orbit, y)?;
    let d2 = c2.eval(orbit, &seed_with(y, &v1))?.0.eps;
    let d1 = c1.eval(orbit, &seed_with(y, &v2))?.0.eps;
    Ok(d2.sub(&d1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::fields::{LinearField, PolyScalar};

    type Op = Operator<f64>;

    #[test]
    fn linear_field_anchor_matches_flow() {
        let o = LatticeOrbit::<f64>::canonical(3, 1).unwrap();
        let a = Op::from_rows(&[&[(0.0, 1.0), (2.0, 0.0), (0.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0), (0.5, 0.5)], &[(0.0, 0.0), (1.0, 1.0), (0.0, 0.0)]]);
        let eta = Op::from_rows(&[&[(1.0, 0.5), (0.0, 0.0), (0.0, 0.0)], &[(0.3, 0.0), (0.0, 0.0), (0.0, 0.0)], &[(0.0, -1.0), (0.0, 0.0), (0.0, 0.0)]]);
        let p = o.p0().clone();
        let c = anchor(LinearField { a: a.clone() }, p.clone(), p.matrix().clone());
        let q = polar_decompose(o.algebra(), &eta).unwrap().l_support;
        let y = phi(o.algebra(), &p, &q).unwrap().coordinate;
        let v = anchor_value(&o, &c, &y).unwrap();
        let fd = lattice_flow_velocity(&o, &p, |t| Ok(Op::from_matrix(a.scale_real(t).into_matrix().exp()) * &eta), 1e-5).unwrap();
        assert!(v.dist(&fd) < 1e-8);
    }

    #[test]
    fn leibniz_with_constant_function() {
        let o = LatticeOrbit::<f64>::canonical(3, 1).unwrap();
        let a = Op::from_real_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 2.0], &[0.0, 1.0, 1.0]]);
        let b = Op::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 1.0, 0.0]]);
        let eta = Op::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.5, 0.0, 0.0], &[0.2, 0.0, 0.0]]);
        let one = PolyScalar::<f64> { constant: 1.0, terms: vec![] };
        let p = o.p0().clone();
        let r = leibniz_check(&o, &LinearField { a }, &LinearField { a: b }, &one, &p, p.matrix(), &eta).unwrap();
        assert!(r < 1e-13);
    }
}
