//! The matrix W*-algebra `M_n(C)`: supports, polar decomposition, partial
//! invertibility and inverses inside corner algebras `pMq`.
//!
//! Rank decisions follow one gap policy everywhere. With `s_max` the largest
//! singular value, a singular value `s` counts as zero when
//! `s <= tol_rank * s_max` and as invertible when `s >= sqrt(tol_rank) * s_max`.
//! Anything strictly between the two is rejected as borderline.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{cre, Cx, Real};

/// Tolerances and size of the ambient algebra `M_n(C)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra<T: Real> {
    dim: usize,
    tol_rank: T,
    tol_eq: T,
}

pub const DEFAULT_TOL_RANK: f64 = 1e-9;
pub const DEFAULT_TOL_EQ: f64 = 1e-8;

impl<T: Real> Algebra<T> {
    pub fn new(dim: usize, tol_rank: T, tol_eq: T) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if !(tol_rank > T::zero() && tol_rank < T::one()) {
            return Err(Error::InvalidInput("tol_rank must lie in (0, 1)".into()));
        }
        if !(tol_eq > T::zero()) {
            return Err(Error::InvalidInput("tol_eq must be positive".into()));
        }
        Ok(Algebra { dim, tol_rank, tol_eq })
    }

    pub fn with_defaults(dim: usize) -> Self {
        Algebra::new(dim, T::lit(DEFAULT_TOL_RANK), T::lit(DEFAULT_TOL_EQ))
            .expect("default tolerances are valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol_rank(&self) -> T {
        self.tol_rank
    }

    pub fn tol_eq(&self) -> T {
        self.tol_eq
    }

    pub fn identity(&self) -> Operator<T> {
        Operator::identity(self.dim)
    }

    pub fn zero(&self) -> Operator<T> {
        Operator::zeros(self.dim)
    }

    /// Operator-norm equality within `tol_eq`.
    pub fn approx_eq(&self, a: &Operator<T>, b: &Operator<T>) -> bool {
        a.dist(b) <= self.tol_eq
    }

    fn check_dim(&self, x: &Operator<T>) -> Result<()> {
        if x.dim() != self.dim || x.matrix().ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }
}

/// Singular value decomposition `x = u diag(s) v*` with `s` sorted descending.
pub(crate) struct Svd<T: Real> {
    pub u: DMatrix<Cx<T>>,
    pub s: Vec<T>,
    pub v: DMatrix<Cx<T>>,
}

/// Thin SVD computed by `faer` in double precision. nalgebra's complex SVD
/// loses accuracy on rank-deficient input, which is the common case here.
pub(crate) fn svd<T: Real>(x: &DMatrix<Cx<T>>) -> Svd<T> {
    let (r, c) = x.shape();
    let m = faer::Mat::<faer::c64>::from_fn(r, c, |i, j| {
        let z = x[(i, j)];
        faer::c64::new(z.re.as_f64(), z.im.as_f64())
    });
    let dec = m.thin_svd().expect("SVD converges");
    let (fu, fs, fv) = (dec.U(), dec.S().column_vector(), dec.V());
    let k = fs.nrows();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| fs[b].re.partial_cmp(&fs[a].re).unwrap_or(std::cmp::Ordering::Equal));
    let back = |z: faer::c64| Cx::new(T::lit(z.re), T::lit(z.im));
    let u = DMatrix::from_fn(r, k, |i, j| back(fu[(i, order[j])]));
    let v = DMatrix::from_fn(c, k, |i, j| back(fv[(i, order[j])]));
    let s = order.iter().map(|&i| T::lit(fs[i].re)).collect();
    Svd { u, s, v }
}

/// Outcome of the gap policy applied to a list of singular values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    /// Number of singular values above `tol_rank * scale`.
    pub rank: usize,
    /// Smallest ratio `s / scale` found inside the rejection band, if any.
    pub borderline: Option<f64>,
}

fn gap_report<T: Real>(s: &[T], scale: T, tol_rank: T) -> GapReport {
    if scale <= T::zero() {
        return GapReport { rank: 0, borderline: None };
    }
    let lo = tol_rank * scale;
    let hi = tol_rank.sqrt() * scale;
    let rank = s.iter().filter(|&&v| v > lo).count();
    let borderline = s
        .iter()
        .filter(|&&v| v > lo && v < hi)
        .map(|&v| (v / scale).as_f64())
        .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.min(r))));
    GapReport { rank, borderline }
}

fn outer_sum<T: Real>(a: &DMatrix<Cx<T>>, w: &[Cx<T>], b: &DMatrix<Cx<T>>, k: usize) -> Operator<T> {
    // sum_{j<k} w_j a_j b_j^*
    let n = a.nrows();
    let mut m = DMatrix::zeros(n, b.nrows());
    for j in 0..k {
        let col_a = a.column(j);
        let col_b = b.column(j);
        m += (col_a * col_b.adjoint()) * w[j];
    }
    Operator::from_matrix(m)
}

/// An orthogonal projection `p = p* = p^2`, with its rank cached.
#[derive(Clone, PartialEq)]
pub struct Projection<T: Real> {
    matrix: Operator<T>,
    rank: usize,
}

impl<T: Real> std::fmt::Debug for Projection<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Projection(rank {}) {:?}", self.rank, self.matrix)
    }
}

impl<T: Real> Projection<T> {
    /// Validates `p = p* = p^2` within `tol_eq` and that the trace rounds to
    /// an integer with error below 0.01.
    pub fn new(alg: &Algebra<T>, p: Operator<T>) -> Result<Self> {
        alg.check_dim(&p)?;
        if !p.is_finite() {
            return Err(Error::InvalidInput("non-finite projection".into()));
        }
        let herm = p.dist(&p.adjoint());
        let idem = p.dist(&(&p * &p));
        if herm > alg.tol_eq || idem > alg.tol_eq {
            return Err(Error::InvalidInput(format!(
                "not an orthogonal projection (hermitian residual {:e}, idempotent residual {:e})",
                herm.as_f64(),
                idem.as_f64()
            )));
        }
        let rank = rank_from_trace(&p)?;
        Ok(Projection { matrix: p, rank })
    }

    /// Projection onto the span of the first `k` columns of an isometry.
    pub(crate) fn from_columns(v: &DMatrix<Cx<T>>, k: usize) -> Self {
        let ones = vec![Complex::new(T::one(), T::zero()); k];
        Projection { matrix: outer_sum(v, &ones, v, k), rank: k }
    }

    pub fn zero(n: usize) -> Self {
        Projection { matrix: Operator::zeros(n), rank: 0 }
    }

    pub fn identity(n: usize) -> Self {
        Projection { matrix: Operator::identity(n), rank: n }
    }

    /// `diag(1, ..., 1, 0, ..., 0)` with `k` ones.
    pub fn canonical(n: usize, k: usize) -> Self {
        assert!(k <= n, "rank exceeds dimension");
        let d: Vec<f64> = (0..n).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
        Projection { matrix: Operator::from_real_diag(&d), rank: k }
    }

    /// Projection onto the coordinate axes listed in `indices`.
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        let mut d = vec![0.0; n];
        for &i in indices {
            d[i] = 1.0;
        }
        Projection { matrix: Operator::from_real_diag(&d), rank: indices.len() }
    }

    pub fn matrix(&self) -> &Operator<T> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `1 - p`.
    pub fn complement(&self) -> Self {
        let n = self.dim();
        Projection { matrix: &Operator::identity(n) - &self.matrix, rank: n - self.rank }
    }

    pub fn dist(&self, other: &Self) -> T {
        self.matrix.dist(&other.matrix)
    }

    /// Orthonormal basis of the range as an `n x rank` isometry.
    pub fn basis(&self) -> DMatrix<Cx<T>> {
        let n = self.dim();
        if self.rank == 0 {
            return DMatrix::zeros(n, 0);
        }
        // Exact standard basis for diagonal 0/1 projections.
        let m = self.matrix.matrix();
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || (m[(i, j)].re == T::zero() && m[(i, j)].im == T::zero())));
        if diagonal {
            let idx: Vec<usize> = (0..n).filter(|&i| m[(i, i)].re > T::lit(0.5)).collect();
            if idx.len() == self.rank {
                return DMatrix::from_fn(n, self.rank, |i, j| {
                    if i == idx[j] {
                        Complex::new(T::one(), T::zero())
                    } else {
                        Complex::new(T::zero(), T::zero())
                    }
                });
            }
        }
        let dec = svd(m);
        dec.u.columns(0, self.rank).into_owned()
    }
}

fn rank_from_trace<T: Real>(p: &Operator<T>) -> Result<usize> {
    let tr = p.trace().re.as_f64();
    let r = tr.round();
    if (tr - r).abs() >= 0.01 || r < 0.0 {
        return Err(Error::InvalidInput(format!("trace {tr} is not close to an integer rank")));
    }
    Ok(r as usize)
}

impl<T: Real> Serialize for Projection<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Projection<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Operator::<T>::deserialize(d)?;
        let rank = rank_from_trace(&m).map_err(D::Error::custom)?;
        Ok(Projection { matrix: m, rank })
    }
}

/// Polar decomposition `x = u |x|` together with the supports of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarData<T: Real> {
    pub u: Operator<T>,
    pub modulus: Operator<T>,
    pub l_support: Projection<T>,
    pub r_support: Projection<T>,
}

fn validate_input<T: Real>(alg: &Algebra<T>, x: &Operator<T>) -> Result<()> {
    alg.check_dim(x)?;
    if !x.is_finite() {
        return Err(Error::InvalidInput("operator has non-finite entries".into()));
    }
    Ok(())
}

/// Singular values of `x` classified by the gap policy relative to `s_max`.
pub fn spectrum<T: Real>(alg: &Algebra<T>, x: &Operator<T>) -> Result<(Vec<T>, GapReport)> {
    validate_input(alg, x)?;
    let dec = svd(x.matrix());
    let smax = dec.s.first().copied().unwrap_or_else(T::zero);
    let rep = gap_report(&dec.s, smax, alg.tol_rank);
    Ok((dec.s, rep))
}

pub fn polar_decompose<T: Real>(alg: &Algebra<T>, x: &Operator<T>) -> Result<PolarData<T>> {
    validate_input(alg, x)?;
    let dec = svd(x.matrix());
    let smax = dec.s.first().copied().unwrap_or_else(T::zero);
    let k = gap_report(&dec.s, smax, alg.tol_rank).rank;
    let ones = vec![Complex::new(T::one(), T::zero()); k];
    let sig: Vec<Cx<T>> = dec.s.iter().map(|&s| cre(s)).collect();
    Ok(PolarData {
        u: outer_sum(&dec.u, &ones, &dec.v, k),
        modulus: outer_sum(&dec.v, &sig, &dec.v, k),
        l_support: Projection::from_columns(&dec.u, k),
        r_support: Projection::from_columns(&dec.v, k),
    })
}

/// Whether the singular values of `x` respect the spectral gap, i.e. `|x|`
/// is invertible in `r(x) M r(x)` with a numerically clean rank.
pub fn is_partially_invertible<T: Real>(alg: &Algebra<T>, x: &Operator<T>) -> bool {
    match spectrum(alg, x) {
        Ok((_, rep)) => rep.borderline.is_none(),
        Err(_) => false,
    }
}

/// `x^{-1} = |x|^{-1} u*`, inverting only the singular values above threshold.
pub fn partial_inverse<T: Real>(alg: &Algebra<T>, x: &Operator<T>) -> Result<Operator<T>> {
    validate_input(alg, x)?;
    let dec = svd(x.matrix());
    let smax = dec.s.first().copied().unwrap_or_else(T::zero);
    let rep = gap_report(&dec.s, smax, alg.tol_rank);
    if let Some(ratio) = rep.borderline {
        return Err(Error::BorderlineSpectrum { ratio });
    }
    let inv: Vec<Cx<T>> = dec.s.iter().map(|&s| cre(T::one() / s)).collect();
    Ok(outer_sum(&dec.v, &inv, &dec.u, rep.rank))
}

/// Checks `yx = r(x)` and `xy = l(x)` within `tol_eq`.
pub fn verify_inverse_characterization<T: Real>(alg: &Algebra<T>, x: &Operator<T>, y: &Operator<T>) -> bool {
    let Ok(pd) = polar_decompose(alg, x) else {
        return false;
    };
    if alg.check_dim(y).is_err() || !y.is_finite() {
        return false;
    }
    (y * x).dist(pd.r_support.matrix()) <= alg.tol_eq && (x * y).dist(pd.l_support.matrix()) <= alg.tol_eq
}

/// `p x q`.
pub fn corner<T: Real>(p: &Projection<T>, q: &Projection<T>, x: &Operator<T>) -> Operator<T> {
    p.matrix() * x * q.matrix()
}

/// Inverse of `l x r` as a map from `range(r)` onto `range(l)`: returns `z`
/// with `z (l x r) = r` and `(l x r) z = l`.
///
/// The compressed operator must have exactly `rank(l) = rank(r)` singular
/// values above `tol_rank * |x|`, the smallest of them at least
/// `sqrt(tol_rank) * |x|`.
pub fn inverse_between<T: Real>(
    alg: &Algebra<T>,
    left: &Projection<T>,
    right: &Projection<T>,
    x: &Operator<T>,
) -> Result<Operator<T>> {
    validate_input(alg, x)?;
    let k = left.rank();
    if right.rank() != k {
        return Err(Error::NotInvertibleInCorner { expected: k, found: right.rank() });
    }
    if k == 0 {
        return Ok(alg.zero());
    }
    let c = corner(left, right, x);
    let dec = svd(c.matrix());
    let scale = x.norm();
    let rep = gap_report(&dec.s, scale, alg.tol_rank);
    if rep.rank != k {
        return Err(Error::NotInvertibleInCorner { expected: k, found: rep.rank });
    }
    if let Some(ratio) = rep.borderline {
        return Err(Error::BorderlineSpectrum { ratio });
    }
    let inv: Vec<Cx<T>> = dec.s.iter().map(|&s| cre(T::one() / s)).collect();
    Ok(outer_sum(&dec.v, &inv, &dec.u, k))
}

/// Inverse of `pxp` inside the corner algebra `pMp`.
pub fn corner_inverse<T: Real>(alg: &Algebra<T>, p: &Projection<T>, x: &Operator<T>) -> Result<Operator<T>> {
    inverse_between(alg, p, p, x)
}

/// `h^power` for a hermitian `h` supported in the corner `pMp`, computed on
/// the `rank(p)` eigenvalues of largest magnitude. Requires those eigenvalues
/// to be positive and to pass the gap policy.
pub fn hermitian_corner_power<T: Real>(
    alg: &Algebra<T>,
    p: &Projection<T>,
    h: &Operator<T>,
    power: T,
) -> Result<Operator<T>> {
    validate_input(alg, h)?;
    let k = p.rank();
    let herm = corner(p, p, &h.hermitian_part());
    let eig = SymmetricEigen::new(herm.into_matrix());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b].abs().partial_cmp(&eig.eigenvalues[a].abs()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals: Vec<T> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(alg.dim, order.len(), |i, j| eig.eigenvectors[(i, order[j])]);
    let scale = vals.first().map(|v| v.abs()).unwrap_or_else(T::zero);
    let abs: Vec<T> = vals.iter().map(|v| v.abs()).collect();
    let rep = gap_report(&abs, scale, alg.tol_rank);
    if rep.rank != k {
        return Err(Error::NotInvertibleInCorner { expected: k, found: rep.rank });
    }
    if let Some(ratio) = rep.borderline {
        return Err(Error::BorderlineSpectrum { ratio });
    }
    if vals[..k].iter().any(|&v| v <= T::zero()) {
        return Err(Error::InvalidInput("hermitian power of a non-positive operator".into()));
    }
    let w: Vec<Cx<T>> = vals.iter().map(|&v| cre(v.powf(power))).collect();
    Ok(outer_sum(&vecs, &w, &vecs, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = Operator<f64>;

    fn alg(n: usize) -> Algebra<f64> {
        Algebra::with_defaults(n)
    }

    #[test]
    fn algebra_rejects_bad_tolerances() {
        assert!(Algebra::<f64>::new(0, 1e-9, 1e-8).is_err());
        assert!(Algebra::<f64>::new(2, 1.5, 1e-8).is_err());
        assert!(Algebra::<f64>::new(2, 1e-9, 0.0).is_err());
    }

    #[test]
    fn polar_of_projection_is_itself() {
        let a = alg(3);
        let p = Projection::<f64>::canonical(3, 2);
        let pd = polar_decompose(&a, p.matrix()).unwrap();
        assert!(pd.u.dist(p.matrix()) < 1e-14);
        assert!(pd.modulus.dist(p.matrix()) < 1e-14);
        assert!(pd.l_support.dist(&p) < 1e-14);
        assert!(pd.r_support.dist(&p) < 1e-14);
    }

    #[test]
    fn polar_of_nilpotent_by_hand() {
        let a = alg(2);
        let x = Op::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        let pd = polar_decompose(&a, &x).unwrap();
        assert!(pd.u.dist(&Op::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])) < 1e-14);
        assert!(pd.modulus.dist(&Op::from_real_diag(&[0.0, 2.0])) < 1e-14);
        assert!(pd.r_support.matrix().dist(&Op::from_real_diag(&[0.0, 1.0])) < 1e-14);
        assert!(pd.l_support.matrix().dist(&Op::from_real_diag(&[1.0, 0.0])) < 1e-14);
        assert_eq!(pd.l_support.rank(), 1);
    }

    #[test]
    fn polar_of_zero() {
        let a = alg(3);
        let pd = polar_decompose(&a, &Op::zeros(3)).unwrap();
        assert_eq!(pd.u, Op::zeros(3));
        assert_eq!(pd.l_support.rank(), 0);
        assert_eq!(pd.r_support.rank(), 0);
        assert!(is_partially_invertible(&a, &Op::zeros(3)));
    }

    #[test]
    fn polar_rejects_nan() {
        let a = alg(2);
        let x = Op::from_real_rows(&[&[f64::NAN, 0.0], &[0.0, 1.0]]);
        assert!(matches!(polar_decompose(&a, &x), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejection_band() {
        let a = alg(2);
        assert!(is_partially_invertible(&a, &Op::identity(2)));
        let inside = Op::from_real_diag(&[1.0, 1e-9f64.powf(0.75)]);
        assert!(!is_partially_invertible(&a, &inside));
        assert!(matches!(partial_inverse(&a, &inside), Err(Error::BorderlineSpectrum { .. })));
        // Far below the band is a clean zero.
        let clean = Op::from_real_diag(&[1.0, 1e-12]);
        assert!(is_partially_invertible(&a, &clean));
    }

    #[test]
    fn partial_inverse_by_hand() {
        let a = alg(2);
        let x = Op::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        let y = partial_inverse(&a, &x).unwrap();
        assert!(y.dist(&Op::from_real_rows(&[&[0.0, 0.0], &[0.5, 0.0]])) < 1e-14);
        assert!(verify_inverse_characterization(&a, &x, &y));
        let p = Projection::<f64>::canonical(2, 1);
        assert!(partial_inverse(&a, p.matrix()).unwrap().dist(p.matrix()) < 1e-14);
        assert!(verify_inverse_characterization(&a, p.matrix(), p.matrix()));
    }

    #[test]
    fn unitary_inverse_is_adjoint() {
        let a = alg(2);
        let s = 0.5f64.sqrt();
        let u = Op::from_rows(&[&[(s, 0.0), (0.0, s)], &[(0.0, s), (s, 0.0)]]);
        let inv = partial_inverse(&a, &u).unwrap();
        assert!(inv.dist(&u.adjoint()) < 1e-14);
    }

    #[test]
    fn corner_examples() {
        let x = Op::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let p = Projection::<f64>::coordinate(2, &[0]);
        let q = Projection::<f64>::coordinate(2, &[1]);
        assert_eq!(corner(&p, &q, &x), Op::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]));
        let one = Projection::<f64>::identity(2);
        assert_eq!(corner(&one, &one, &x), x);
        let pxq = corner(&p, &q, &x);
        assert_eq!(corner(&p, &q, &pxq), pxq);
    }

    #[test]
    fn corner_inverse_examples() {
        let a = alg(2);
        let p = Projection::<f64>::coordinate(2, &[0]);
        let z = corner_inverse(&a, &p, &Op::from_real_diag(&[2.0, 5.0])).unwrap();
        assert!(z.dist(&Op::from_real_diag(&[0.5, 0.0])) < 1e-14);
        assert!(corner_inverse(&a, &p, p.matrix()).unwrap().dist(p.matrix()) < 1e-14);
        let err = corner_inverse(&a, &p, &Op::from_real_diag(&[0.0, 1.0]));
        assert!(matches!(err, Err(Error::NotInvertibleInCorner { expected: 1, found: 0 })));
    }

    #[test]
    fn projection_validation() {
        let a = alg(2);
        assert!(Projection::new(&a, Op::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])).is_ok());
        assert!(Projection::new(&a, Op::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]])).is_err());
        assert!(Projection::new(&a, Op::from_real_diag(&[2.0, 0.0])).is_err());
        let p = Projection::new(&a, Op::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.complement().rank(), 1);
    }

    #[test]
    fn hermitian_power_in_corner() {
        let a = alg(3);
        let p = Projection::<f64>::canonical(3, 2);
        let h = Op::from_real_diag(&[4.0, 9.0, 0.0]);
        let r = hermitian_corner_power(&a, &p, &h, 0.5).unwrap();
        assert!(r.dist(&Op::from_real_diag(&[2.0, 3.0, 0.0])) < 1e-13);
        let ri = hermitian_corner_power(&a, &p, &h, -0.5).unwrap();
        assert!(ri.dist(&Op::from_real_diag(&[0.5, 1.0 / 3.0, 0.0])) < 1e-13);
    }

    #[test]
    fn f32_polar_reconstructs() {
        let a = Algebra::<f32>::new(2, 1e-5, 1e-4).unwrap();
        let x = Operator::<f32>::from_real_rows(&[&[1.0, 2.0], &[0.5, -1.0]]);
        let pd = polar_decompose(&a, &x).unwrap();
        assert!((&pd.u * &pd.modulus).dist(&x) < 1e-5);
    }
}
