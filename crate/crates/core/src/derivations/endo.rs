//! Linear endomorphisms of `M p0`.
//!
//! `theta` in `M p0` is stored as the `n x k` block `W = theta V`, with `V` an
//! orthonormal basis of `range(p0)`, vectorised column-major. An endomorphism
//! is an `(nk) x (nk)` complex matrix on that vector. In this layout
//! `R_g = G^T (x) I_n` with `G = V^* g V` and `L_x = I_k (x) x`, and
//! `R_g R_h = R_{hg}`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::{Cx, Real};
use crate::wstar::svd;

/// The vector space `M p0` with its fixed coordinates.
#[derive(Debug, Clone)]
pub struct CornerSpace<T: Real> {
    n: usize,
    k: usize,
    v: DMatrix<Cx<T>>,
}

impl<T: Real> CornerSpace<T> {
    pub fn new(orbit: &LatticeOrbit<T>) -> Self {
        CornerSpace { n: orbit.dim(), k: orbit.base_rank(), v: orbit.p0().basis() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `nk`.
    pub fn dim(&self) -> usize {
        self.n * self.k
    }

    pub fn vectorize(&self, theta: &Operator<T>) -> DVector<Cx<T>> {
        let w = theta.matrix() * &self.v;
        DVector::from_iterator(self.dim(), w.iter().copied())
    }

    pub fn unvectorize(&self, x: &DVector<Cx<T>>) -> Operator<T> {
        let w = DMatrix::from_column_slice(self.n, self.k, x.as_slice());
        Operator::from_matrix(w * self.v.adjoint())
    }

    /// The basis element `e_a v_j^*`, index `j n + a`.
    pub fn basis_element(&self, index: usize) -> Operator<T> {
        let (a, j) = (index % self.n, index / self.n);
        let mut x = DVector::zeros(self.dim());
        x[j * self.n + a] = Cx::new(T::one(), T::zero());
        self.unvectorize(&x)
    }

    /// `V^* g V`, the `k x k` block of an element of `p0 M p0`.
    pub fn corner_block(&self, g: &Operator<T>) -> DMatrix<Cx<T>> {
        self.v.adjoint() * g.matrix() * &self.v
    }

    pub fn from_corner_block(&self, g: &DMatrix<Cx<T>>) -> Operator<T> {
        Operator::from_matrix(&self.v * g * self.v.adjoint())
    }
}

/// An endomorphism of `M p0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "", deserialize = ""))]
pub struct Endo<T: Real> {
    pub matrix: Operator<T>,
}

impl<T: Real> Endo<T> {
    pub fn from_matrix(m: DMatrix<Cx<T>>) -> Self {
        Endo { matrix: Operator::from_matrix(m) }
    }

    pub fn identity(space: &CornerSpace<T>) -> Self {
        Endo { matrix: Operator::identity(space.dim()) }
    }

    pub fn zero(space: &CornerSpace<T>) -> Self {
        Endo { matrix: Operator::zeros(space.dim()) }
    }

    /// `R_g: theta -> theta g`.
    pub fn right_mult(space: &CornerSpace<T>, g: &Operator<T>) -> Self {
        let gb = space.corner_block(g).transpose();
        Self::from_matrix(gb.kronecker(&DMatrix::identity(space.n, space.n)))
    }

    /// `L_x: theta -> x theta`.
    pub fn left_mult(space: &CornerSpace<T>, x: &Operator<T>) -> Self {
        Self::from_matrix(DMatrix::<Cx<T>>::identity(space.k, space.k).kronecker(x.matrix()))
    }

    /// The matrix of a complex-linear map on `M p0`, read off on the basis.
    pub fn from_linear_map(
        space: &CornerSpace<T>,
        mut f: impl FnMut(&Operator<T>) -> Result<Operator<T>>,
    ) -> Result<Self> {
        let d = space.dim();
        let mut m = DMatrix::zeros(d, d);
        for c in 0..d {
            let col = space.vectorize(&f(&space.basis_element(c))?);
            m.set_column(c, &col);
        }
        Ok(Self::from_matrix(m))
    }

    pub fn apply(&self, space: &CornerSpace<T>, theta: &Operator<T>) -> Operator<T> {
        space.unvectorize(&(self.matrix.matrix() * space.vectorize(theta)))
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        Endo { matrix: &self.matrix * &other.matrix }
    }

    /// Inverse under the gap policy of the algebra.
    pub fn inverse(&self, orbit: &LatticeOrbit<T>) -> Result<Self> {
        let m = self.matrix.matrix();
        let s = svd(m).s;
        let (smax, smin) = (s[0], s[s.len() - 1]);
        if !(smax > T::zero()) || smin < orbit.algebra().tol_rank().sqrt() * smax {
            let ratio = if smax > T::zero() { (smin / smax).as_f64() } else { 0.0 };
            return Err(Error::BorderlineSpectrum { ratio });
        }
        let inv = m.clone().try_inverse().ok_or_else(|| Error::InvalidInput("singular endomorphism".into()))?;
        Ok(Self::from_matrix(inv))
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        Endo { matrix: self.matrix.commutator(&other.matrix) }
    }

    pub fn exp(&self) -> Self {
        Self::from_matrix(self.matrix.matrix().clone().exp())
    }

    pub fn scale_real(&self, t: T) -> Self {
        Endo { matrix: self.matrix.scale_real(t) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Endo { matrix: &self.matrix + &other.matrix }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Endo { matrix: &self.matrix - &other.matrix }
    }

    pub fn norm(&self) -> T {
        self.matrix.norm()
    }

    pub fn dist(&self, other: &Self) -> T {
        self.matrix.dist(&other.matrix)
    }
}

/// Outcome of testing `Gamma(x theta) = x Gamma(theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModProbe<T: Real> {
    /// `g = Gamma(p0)`.
    pub g: Operator<T>,
    /// `|Gamma - R_g|`.
    pub right_residual: T,
    /// `max_x |Gamma L_x - L_x Gamma|` over the matrix units `x = E_ab`.
    pub left_commutation: T,
}

impl<T: Real> ModProbe<T> {
    pub fn worst(&self) -> T {
        if self.right_residual > self.left_commutation {
            self.right_residual
        } else {
            self.left_commutation
        }
    }
}

pub fn probe_mod_automorphism<T: Real>(orbit: &LatticeOrbit<T>, gamma: &Endo<T>) -> ModProbe<T> {
    let space = CornerSpace::new(orbit);
    let n = space.n();
    let g = gamma.apply(&space, orbit.p0().matrix());
    let right_residual = gamma.dist(&Endo::right_mult(&space, &g));
    let mut left_commutation = T::zero();
    for a in 0..n {
        for b in 0..n {
            let lx = Endo::left_mult(&space, &Operator::unit(n, a, b));
            let r = gamma.compose(&lx).dist(&lx.compose(gamma));
            if r > left_commutation {
                left_commutation = r;
            }
        }
    }
    ModProbe { g, right_residual, left_commutation }
}

/// The `g` with `Gamma = R_g`, or an error if `Gamma` is not a module automorphism.
pub fn mod_automorphism_element<T: Real>(orbit: &LatticeOrbit<T>, gamma: &Endo<T>) -> Result<Operator<T>> {
    let probe = probe_mod_automorphism(orbit, gamma);
    let scale = T::one() + gamma.norm();
    if probe.worst() > orbit.algebra().tol_eq() * scale {
        return Err(Error::NonModAutomorphism(probe.worst().as_f64()));
    }
    crate::wstar::corner_inverse(orbit.algebra(), orbit.p0(), &probe.g)?;
    Ok(probe.g)
}

/// `exp(m)` in the corner `p0 M p0`: `exp(m) - (1 - p0)` for `m` in the corner.
pub fn corner_exp<T: Real>(orbit: &LatticeOrbit<T>, m: &Operator<T>) -> Operator<T> {
    let e = Operator::from_matrix(m.matrix().clone().exp());
    e - (Operator::identity(orbit.dim()) - orbit.p0().matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = Operator<f64>;

    fn orbit() -> LatticeOrbit<f64> {
        LatticeOrbit::canonical(3, 2).unwrap()
    }

    fn g() -> Op {
        Op::from_rows(&[&[(1.0, 0.5), (2.0, 0.0), (0.0, 0.0)], &[(0.0, 1.0), (1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0); 3]])
    }

    fn h() -> Op {
        Op::from_rows(&[&[(0.0, 1.0), (1.0, 0.0), (0.0, 0.0)], &[(3.0, 0.0), (1.0, -1.0), (0.0, 0.0)], &[(0.0, 0.0); 3]])
    }

    fn theta() -> Op {
        Op::from_rows(&[&[(1.0, 0.0), (0.0, 2.0), (0.0, 0.0)], &[(0.5, 0.0), (1.0, 1.0), (0.0, 0.0)], &[(0.0, -1.0), (2.0, 0.0), (0.0, 0.0)]])
    }

    #[test]
    fn right_and_left_multiplication_act_as_named() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let x = Op::from_real_rows(&[&[1.0, 2.0, 0.0], &[0.0, 1.0, 3.0], &[1.0, 0.0, 1.0]]);
        assert!(Endo::right_mult(&s, &g()).apply(&s, &theta()).dist(&(theta() * g())) < 1e-14);
        assert!(Endo::left_mult(&s, &x).apply(&s, &theta()).dist(&(&x * theta())) < 1e-14);
    }

    #[test]
    fn right_multiplication_is_an_antihomomorphism() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let lhs = Endo::right_mult(&s, &g()).compose(&Endo::right_mult(&s, &h()));
        assert!(lhs.dist(&Endo::right_mult(&s, &(h() * g()))) < 1e-13);
    }

    #[test]
    fn probe_accepts_right_multiplication_and_rejects_left() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let found = mod_automorphism_element(&o, &Endo::right_mult(&s, &g())).unwrap();
        assert!(found.dist(&g()) < 1e-14);
        let x = Op::from_real_rows(&[&[2.0, 1.0, 0.0], &[0.0, 1.0, 0.0], &[1.0, 0.0, 1.0]]);
        assert!(matches!(mod_automorphism_element(&o, &Endo::left_mult(&s, &x)), Err(Error::NonModAutomorphism(_))));
    }

    #[test]
    fn linear_map_round_trip() {
        let o = orbit();
        let s = CornerSpace::new(&o);
        let x = Op::from_real_rows(&[&[1.0, 2.0, 0.0], &[0.0, 1.0, 3.0], &[1.0, 0.0, 1.0]]);
        let e = Endo::from_linear_map(&s, |t| Ok(&x * t * g())).unwrap();
        assert!(e.apply(&s, &theta()).dist(&(&x * theta() * g())) < 1e-13);
        assert!(e.inverse(&o).unwrap().compose(&e).dist(&Endo::identity(&s)) < 1e-12);
    }
}
