//! The trivial groupoid `P0 x Aut(M p0) x P0`, its module-automorphism
//! subgroupoid and the two quotients onto `G_{p0}(M)` and the pair groupoid.

use serde::Serialize;

use crate::bundle::Frame;
use crate::error::{Error, Result};
use crate::groupoid::GroupoidElement;
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::Real;
use crate::wstar::{corner_inverse, partial_inverse, polar_decompose, Projection};

use super::endo::{mod_automorphism_element, CornerSpace, Endo};

/// An arrow `(xi, Gamma, eta)` from `eta` to `xi`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrivialArrow<T: Real> {
    pub target: Frame<T>,
    pub auto: Endo<T>,
    pub source: Frame<T>,
}

impl<T: Real> TrivialArrow<T> {
    /// Checks that `auto` is invertible.
    pub fn new(orbit: &LatticeOrbit<T>, target: Frame<T>, auto: Endo<T>, source: Frame<T>) -> Result<Self> {
        auto.inverse(orbit)?;
        Ok(TrivialArrow { target, auto, source })
    }

    /// `(eta, id, eta)`.
    pub fn unit(orbit: &LatticeOrbit<T>, eta: Frame<T>) -> Self {
        TrivialArrow { target: eta.clone(), auto: Endo::identity(&CornerSpace::new(orbit)), source: eta }
    }

    /// `(eta, Gamma^{-1}, xi)`.
    pub fn inverse(&self, orbit: &LatticeOrbit<T>) -> Result<Self> {
        Ok(TrivialArrow { target: self.source.clone(), auto: self.auto.inverse(orbit)?, source: self.target.clone() })
    }
}

/// `(lambda, Lambda, xi)(xi, Gamma, eta) = (lambda, Lambda Gamma, eta)`.
pub fn trivial_compose<T: Real>(
    orbit: &LatticeOrbit<T>,
    a1: &TrivialArrow<T>,
    a2: &TrivialArrow<T>,
) -> Result<TrivialArrow<T>> {
    let gap = a1.source.op().dist(a2.target.op());
    if gap > orbit.algebra().tol_eq() {
        return Err(Error::FrameMismatch(gap.as_f64()));
    }
    Ok(TrivialArrow { target: a1.target.clone(), auto: a1.auto.compose(&a2.auto), source: a2.source.clone() })
}

/// `[(xi, R_f, eta)] -> xi f^{-1} eta^{-1}`.
pub fn quotient_class<T: Real>(orbit: &LatticeOrbit<T>, a: &TrivialArrow<T>) -> Result<GroupoidElement<T>> {
    let alg = orbit.algebra();
    let f = mod_automorphism_element(orbit, &a.auto)?;
    let f_inv = corner_inverse(alg, orbit.p0(), &f)?;
    let eta_inv = partial_inverse(alg, a.source.op())?;
    GroupoidElement::new(alg, a.target.op() * f_inv * eta_inv)
}

/// The action of `(h, g)` on a representative:
/// `(xi, R_f, eta) -> (xi h, R_{g^{-1} f h}, eta g)`.
pub fn regauge<T: Real>(
    orbit: &LatticeOrbit<T>,
    a: &TrivialArrow<T>,
    h: &Operator<T>,
    g: &Operator<T>,
) -> Result<TrivialArrow<T>> {
    let f = mod_automorphism_element(orbit, &a.auto)?;
    let g_inv = corner_inverse(orbit.algebra(), orbit.p0(), g)?;
    let space = CornerSpace::new(orbit);
    Ok(TrivialArrow {
        target: Frame::new(orbit, a.target.op() * h)?,
        auto: Endo::right_mult(&space, &(g_inv * f * h)),
        source: Frame::new(orbit, a.source.op() * g)?,
    })
}

/// Tables of `(P0 x P0) / (G0 x G0)` checked against the pair groupoid of the
/// base points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairQuotientReport {
    pub frames: usize,
    /// Number of distinct base points `l(eta)` among the frames.
    pub base_points: usize,
    /// Largest change of the class under independent regauging of both entries.
    pub invariance: f64,
    /// Composition table mismatches.
    pub composition_mismatches: usize,
    /// Inverse table mismatches.
    pub inverse_mismatches: usize,
    /// Unit table mismatches.
    pub unit_mismatches: usize,
}

impl PairQuotientReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.invariance <= tol && self.composition_mismatches == 0 && self.inverse_mismatches == 0 && self.unit_mismatches == 0
    }
}

fn class_of<T: Real>(orbit: &LatticeOrbit<T>, eta: &Operator<T>, xi: &Operator<T>) -> Result<(Projection<T>, Projection<T>)> {
    let alg = orbit.algebra();
    Ok((polar_decompose(alg, eta)?.l_support, polar_decompose(alg, xi)?.l_support))
}

fn base_index<T: Real>(bases: &[Projection<T>], p: &Projection<T>, tol: T) -> Option<usize> {
    bases.iter().position(|b| b.dist(p) <= tol)
}

/// Builds the class tables for the given frames and regauging elements
/// (`gauges[i]` is applied to `frames[i]`).
pub fn quotient_pair_example<T: Real>(
    orbit: &LatticeOrbit<T>,
    frames: &[Frame<T>],
    gauges: &[Operator<T>],
) -> Result<PairQuotientReport> {
    let tol = orbit.algebra().tol_eq();
    let mut bases: Vec<Projection<T>> = Vec::new();
    let mut idx = Vec::with_capacity(frames.len());
    for f in frames {
        let b = f.base(orbit)?;
        let i = match base_index(&bases, &b, tol) {
            Some(i) => i,
            None => {
                bases.push(b);
                bases.len() - 1
            }
        };
        idx.push(i);
    }
    let m = frames.len();
    let mut invariance = T::zero();
    let mut composition_mismatches = 0;
    let mut inverse_mismatches = 0;
    let mut unit_mismatches = 0;
    let lookup = |c: &(Projection<T>, Projection<T>)| (base_index(&bases, &c.0, tol), base_index(&bases, &c.1, tol));
    for i in 0..m {
        let gi = gauges.get(i % gauges.len().max(1)).cloned().unwrap_or_else(|| orbit.p0().matrix().clone());
        for j in 0..m {
            let gj = gauges.get(j % gauges.len().max(1)).cloned().unwrap_or_else(|| orbit.p0().matrix().clone());
            let (ei, ej) = (frames[i].op(), frames[j].op());
            let c = class_of(orbit, ei, ej)?;
            let moved = class_of(orbit, &(ei * &gi), &(ej * &gj))?;
            let d = if c.0.dist(&moved.0) > c.1.dist(&moved.1) { c.0.dist(&moved.0) } else { c.1.dist(&moved.1) };
            if d > invariance {
                invariance = d;
            }
            if lookup(&c) != (Some(idx[i]), Some(idx[j])) {
                composition_mismatches += 1;
            }
            // (i, j)^{-1} = (j, i)
            if lookup(&class_of(orbit, ej, ei)?) != (Some(idx[j]), Some(idx[i])) {
                inverse_mismatches += 1;
            }
            // (i, j)(j, l) = (i, l)
            for l in 0..m {
                if lookup(&class_of(orbit, ei, frames[l].op())?) != (Some(idx[i]), Some(idx[l])) {
                    composition_mismatches += 1;
                }
            }
        }
        if lookup(&class_of(orbit, frames[i].op(), frames[i].op())?) != (Some(idx[i]), Some(idx[i])) {
            unit_mismatches += 1;
        }
    }
    Ok(PairQuotientReport {
        frames: m,
        base_points: bases.len(),
        invariance: invariance.as_f64(),
        composition_mismatches,
        inverse_mismatches,
        unit_mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{gauge_to_groupoid, GaugeClass};
    use crate::groupoid::compose;

    type Op = Operator<f64>;

    fn orbit() -> LatticeOrbit<f64> {
        LatticeOrbit::canonical(3, 1).unwrap()
    }

    fn frame(o: &LatticeOrbit<f64>, c: [(f64, f64); 3]) -> Frame<f64> {
        Frame::new(o, Op::from_rows(&[&[c[0], (0.0, 0.0), (0.0, 0.0)], &[c[1], (0.0, 0.0), (0.0, 0.0)], &[c[2], (0.0, 0.0), (0.0, 0.0)]])).unwrap()
    }

    fn gl(o: &LatticeOrbit<f64>, z: (f64, f64)) -> Op {
        let _ = o;
        Op::from_rows(&[&[z, (0.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0); 3], &[(0.0, 0.0); 3]])
    }

    #[test]
    fn unit_maps_to_support() {
        let o = orbit();
        let eta = frame(&o, [(1.0, 0.0), (0.5, 0.5), (0.0, 2.0)]);
        let cls = quotient_class(&o, &TrivialArrow::unit(&o, eta.clone())).unwrap();
        assert!(cls.op().dist(eta.base(&o).unwrap().matrix()) < 1e-12);
    }

    #[test]
    fn class_is_invariant_and_multiplicative() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let (l, x, e) = (
            frame(&o, [(1.0, 0.0), (0.5, 0.5), (0.0, 2.0)]),
            frame(&o, [(0.2, 0.0), (1.0, 0.0), (1.0, -1.0)]),
            frame(&o, [(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)]),
        );
        let a1 = TrivialArrow::new(&o, l, Endo::right_mult(&s, &gl(&o, (2.0, 1.0))), x.clone()).unwrap();
        let a2 = TrivialArrow::new(&o, x, Endo::right_mult(&s, &gl(&o, (0.0, -0.5))), e).unwrap();
        let c1 = quotient_class(&o, &a1).unwrap();
        let moved = regauge(&o, &a1, &gl(&o, (1.0, 1.0)), &gl(&o, (-3.0, 0.2))).unwrap();
        assert!(quotient_class(&o, &moved).unwrap().op().dist(c1.op()) < 1e-12);
        let lhs = quotient_class(&o, &trivial_compose(&o, &a1, &a2).unwrap()).unwrap();
        let rhs = compose(o.algebra(), &c1, &quotient_class(&o, &a2).unwrap()).unwrap();
        assert!(lhs.op().dist(rhs.op()) < 1e-12);
    }

    #[test]
    fn identity_middle_agrees_with_gauge_map() {
        let o = orbit();
        let (x, e) = (frame(&o, [(0.2, 0.0), (1.0, 0.0), (1.0, -1.0)]), frame(&o, [(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)]));
        let a = TrivialArrow::new(&o, x.clone(), Endo::identity(&CornerSpace::new(&o)), e.clone()).unwrap();
        let g = gauge_to_groupoid(&o, &GaugeClass::new(x, e)).unwrap();
        assert!(quotient_class(&o, &a).unwrap().op().dist(g.op()) < 1e-12);
    }

    #[test]
    fn mismatched_frames_do_not_compose() {
        let o = orbit();
        let (x, e) = (frame(&o, [(0.2, 0.0), (1.0, 0.0), (1.0, -1.0)]), frame(&o, [(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)]));
        let a = TrivialArrow::unit(&o, x);
        let b = TrivialArrow::unit(&o, e);
        assert!(matches!(trivial_compose(&o, &a, &b), Err(Error::FrameMismatch(_))));
    }

    #[test]
    fn pair_tables() {
        let o = orbit();
        let frames = vec![
            frame(&o, [(1.0, 0.0), (0.5, 0.5), (0.0, 2.0)]),
            frame(&o, [(0.2, 0.0), (1.0, 0.0), (1.0, -1.0)]),
            frame(&o, [(2.0, 0.0), (1.0, 1.0), (0.0, 4.0)]),
        ];
        let rep = quotient_pair_example(&o, &frames, &[gl(&o, (2.0, 0.0)), gl(&o, (0.0, 1.0))]).unwrap();
        assert_eq!(rep.base_points, 2);
        assert!(rep.passes(1e-10));
    }
}
