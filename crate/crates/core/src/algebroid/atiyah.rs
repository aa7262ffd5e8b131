//! Numerical exactness of the Atiyah sequence
//! `0 -> p0 M p0 -> T_eta P0 -> T_q L_{p0}(M) -> 0` at one frame.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{phi, LatticeOrbit};
use crate::operator::Operator;
use crate::scalar::{Cx, Real};
use crate::wstar::{inverse_between, polar_decompose, svd, Projection};

/// Ranks and residuals of the sequence at a frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtiyahReport {
    /// Rank of `m -> eta m` on `p0 M p0` (expected `k^2`).
    pub iota_rank: usize,
    /// Rank of the anchor `theta -> (1 - p - y) theta z^{-1}` (expected `k(n-k)`).
    pub anchor_rank: usize,
    /// `nk - anchor_rank` (expected `k^2`).
    pub kernel_dim: usize,
    /// Dimension `nk` of `T_eta P0 = M p0`.
    pub total_dim: usize,
    /// `|anchor o iota|`, relative to `|anchor| |iota|`.
    pub containment: f64,
}

impl AtiyahReport {
    pub fn is_exact(&self, n: usize, k: usize, tol: f64) -> bool {
        self.iota_rank == k * k
            && self.anchor_rank == k * (n - k)
            && self.kernel_dim == k * k
            && self.total_dim == n * k
            && self.containment <= tol
    }
}

fn vec_of<T: Real>(x: &Operator<T>) -> Vec<Cx<T>> {
    x.matrix().iter().copied().collect()
}

/// Numerical rank relative to `max(s_max, floor)`; the floor keeps a map
/// that vanishes up to rounding from being read as full rank.
fn rank_of<T: Real>(m: &DMatrix<Cx<T>>, tol_rank: T, floor: T) -> (usize, T) {
    if m.ncols() == 0 || m.nrows() == 0 {
        return (0, T::zero());
    }
    let s = svd(m).s;
    let scale = if s[0] > floor { s[0] } else { floor };
    if scale <= T::zero() {
        return (0, T::zero());
    }
    (s.iter().filter(|&&v| v > tol_rank * scale).count(), scale)
}

pub fn atiyah_exactness<T: Real>(orbit: &LatticeOrbit<T>, p: &Projection<T>, eta: &Operator<T>) -> Result<AtiyahReport> {
    let alg = orbit.algebra();
    let n = orbit.dim();
    let k = orbit.base_rank();
    let v = orbit.p0().basis();
    let q = polar_decompose(alg, eta)?.l_support;
    let y = phi(alg, p, &q)?.coordinate;
    let z_inv = inverse_between(alg, p, orbit.p0(), eta)?;
    let proj = Operator::identity(n) - p.matrix() - &y;
    let vcol = |j: usize| v.column(j).into_owned();
    let unit_in_p0 = |i: usize, j: usize| Operator::from_matrix(vcol(i) * vcol(j).adjoint());

    // iota on the basis v_i v_j^* of p0 M p0
    let mut iota_cols = Vec::with_capacity(k * k);
    for j in 0..k {
        for i in 0..k {
            iota_cols.push(eta * unit_in_p0(i, j));
        }
    }
    // anchor on the basis e_a v_j^* of M p0
    let mut anchor_cols = Vec::with_capacity(n * k);
    for j in 0..k {
        for a in 0..n {
            let mut e = DMatrix::zeros(n, 1);
            e[(a, 0)] = Cx::new(T::one(), T::zero());
            let theta = Operator::from_matrix(e * vcol(j).adjoint());
            anchor_cols.push(&proj * theta * &z_inv);
        }
    }
    let iota_m = DMatrix::from_fn(n * n, iota_cols.len(), |r, c| vec_of(&iota_cols[c])[r]);
    let anchor_m = DMatrix::from_fn(n * n, anchor_cols.len(), |r, c| vec_of(&anchor_cols[c])[r]);
    let (iota_rank, iota_norm) = rank_of(&iota_m, alg.tol_rank(), T::zero());
    // |1 - p - y| >= 1 unless p = 1, so |z^{-1}| is the natural size of the anchor
    let (anchor_rank, anchor_norm) = rank_of(&anchor_m, alg.tol_rank(), z_inv.norm());
    let mut worst = T::zero();
    for col in &iota_cols {
        let r = (&proj * col * &z_inv).norm();
        if r > worst {
            worst = r;
        }
    }
    let scale = iota_norm * anchor_norm;
    let containment = if scale > T::zero() { (worst / scale).as_f64() } else { worst.as_f64() };
    Ok(AtiyahReport { iota_rank, anchor_rank, kernel_dim: n * k - anchor_rank, total_dim: n * k, containment })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_at_canonical_frame() {
        let o = LatticeOrbit::<f64>::canonical(4, 2).unwrap();
        let p0 = o.p0().clone();
        let rep = atiyah_exactness(&o, &p0, p0.matrix()).unwrap();
        assert_eq!((rep.iota_rank, rep.anchor_rank, rep.total_dim), (4, 4, 8));
        assert!(rep.is_exact(4, 2, 1e-12));
    }

    #[test]
    fn full_rank_orbit_has_zero_anchor() {
        let o = LatticeOrbit::<f64>::canonical(3, 3).unwrap();
        let p0 = o.p0().clone();
        let rep = atiyah_exactness(&o, &p0, p0.matrix()).unwrap();
        assert_eq!(rep.anchor_rank, 0);
        assert_eq!(rep.kernel_dim, 9);
    }
}
