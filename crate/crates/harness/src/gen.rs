//! Seeded random generators. Gaussians come from Box–Muller on the uniform
//! output of `ChaCha8Rng`, so samples are reproducible across platforms.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use wstar_core::algebroid::{HolomorphicField, PolyScalar, PolySection};
use wstar_core::{Cx, Frame, GroupoidElement, LatticeOrbit, Operator, Projection, Result};

pub type Rng64 = ChaCha8Rng;

/// Largest condition number accepted for generated frames and projections.
/// Products of a few such factors must stay well clear of the gap policy's
/// rejection band, which starts at `1 / sqrt(tol_rank)`.
pub const MAX_CONDITION: f64 = 50.0;

/// Smallest singular value of `p q` on `range(q)` accepted for a chart base
/// `p` and a point `q` it must chart.
pub const MIN_OVERLAP: f64 = 0.2;

/// Independent stream for `(seed, suite, property)`.
pub fn sub_rng(seed: u64, suite: &str, property: &str) -> Rng64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(suite.as_bytes());
    h.update([0u8]);
    h.update(property.as_bytes());
    let digest: [u8; 32] = h.finalize().into();
    ChaCha8Rng::from_seed(digest)
}

/// Standard normal sample.
pub fn gaussian(rng: &mut Rng64) -> f64 {
    // u1 in (0, 1] keeps the logarithm finite
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

pub fn uniform(rng: &mut Rng64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Complex Gaussian entries with unit variance.
pub fn gaussian_matrix(rng: &mut Rng64, rows: usize, cols: usize) -> DMatrix<Cx<f64>> {
    let s = 0.5f64.sqrt();
    DMatrix::from_fn(rows, cols, |_, _| Cx::new(s * gaussian(rng), s * gaussian(rng)))
}

/// `n x n` Gaussian operator scaled by `scale / sqrt(n)`.
pub fn gen_operator(rng: &mut Rng64, n: usize, scale: f64) -> Operator<f64> {
    let m = gaussian_matrix(rng, n, n) * Cx::new(scale / (n as f64).sqrt(), 0.0);
    Operator::from_matrix(m)
}

fn condition(m: &DMatrix<Cx<f64>>) -> f64 {
    let s = m.singular_values();
    let (mx, mn) = s.iter().fold((0.0f64, f64::INFINITY), |(a, b), &v| (a.max(v), b.min(v)));
    if mn > 0.0 {
        mx / mn
    } else {
        f64::INFINITY
    }
}

/// `n x k` Gaussian with condition number at most [`MAX_CONDITION`].
pub fn gen_columns(rng: &mut Rng64, n: usize, k: usize) -> DMatrix<Cx<f64>> {
    loop {
        let g = gaussian_matrix(rng, n, k);
        if k == 0 || condition(&g) <= MAX_CONDITION {
            return g;
        }
    }
}

/// Random unitary from the QR factorisation of a Gaussian matrix.
pub fn gen_unitary(rng: &mut Rng64, n: usize) -> DMatrix<Cx<f64>> {
    let qr = gaussian_matrix(rng, n, n).qr();
    let (q, r) = qr.unpack();
    // fix the phases so the distribution is Haar
    let d = DMatrix::from_diagonal(&r.diagonal().map(|v| if v.norm() > 0.0 { v / Cx::new(v.norm(), 0.0) } else { Cx::new(1.0, 0.0) }));
    q * d
}

/// `l(G)` for an `n x k` Gaussian `G`.
pub fn gen_projection(rng: &mut Rng64, orbit: &LatticeOrbit<f64>, k: usize) -> Result<Projection<f64>> {
    let n = orbit.dim();
    if k == 0 {
        return Ok(Projection::zero(n));
    }
    let g = gen_columns(rng, n, k);
    let u = g.svd(true, false).u.expect("left vectors");
    let u = u.columns(0, k).into_owned();
    Projection::new(orbit.algebra(), Operator::from_matrix(&u * u.adjoint()))
}

/// Smallest principal cosine between `range(p)` and `range(q)`.
pub fn overlap(p: &Projection<f64>, q: &Projection<f64>) -> f64 {
    let m = p.basis().adjoint() * q.basis();
    m.singular_values().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// A random rank-`k` projection whose chart contains each of `points`
/// with overlap at least [`MIN_OVERLAP`].
pub fn gen_chart_base(rng: &mut Rng64, orbit: &LatticeOrbit<f64>, k: usize, points: &[&Projection<f64>]) -> Result<Projection<f64>> {
    loop {
        let p = gen_projection(rng, orbit, k)?;
        if points.iter().all(|q| overlap(&p, q) >= MIN_OVERLAP) {
            return Ok(p);
        }
    }
}

/// `U diag(s) V^*` with `k` singular values uniform in `[0.5, 2]`.
pub fn gen_groupoid_element(rng: &mut Rng64, orbit: &LatticeOrbit<f64>, k: usize) -> Result<GroupoidElement<f64>> {
    let n = orbit.dim();
    let u = gen_unitary(rng, n);
    let v = gen_unitary(rng, n);
    let mut x = DMatrix::zeros(n, n);
    for j in 0..k {
        let s = uniform(rng, 0.5, 2.0);
        x += (u.column(j) * v.column(j).adjoint()) * Cx::new(s, 0.0);
    }
    GroupoidElement::new(orbit.algebra(), Operator::from_matrix(x))
}

/// An element of `p0 M p0` with singular values in `[0.5, 2]`.
pub fn gen_structure(rng: &mut Rng64, orbit: &LatticeOrbit<f64>) -> Operator<f64> {
    let k = orbit.base_rank();
    let v = orbit.p0().basis();
    let (a, b) = (gen_unitary(rng, k), gen_unitary(rng, k));
    let s = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(k, |_, _| Cx::new(uniform(rng, 0.5, 2.0), 0.0)));
    Operator::from_matrix(&v * (a * s * b.adjoint()) * v.adjoint())
}

/// A frame `G V^*` with `G` an `n x k` Gaussian.
pub fn gen_frame(rng: &mut Rng64, orbit: &LatticeOrbit<f64>) -> Result<Frame<f64>> {
    let g = gen_columns(rng, orbit.dim(), orbit.base_rank());
    Frame::new(orbit, Operator::from_matrix(g * orbit.p0().basis().adjoint()))
}

/// An orthonormal frame.
pub fn gen_unitary_frame(rng: &mut Rng64, orbit: &LatticeOrbit<f64>) -> Result<Frame<f64>> {
    let u = gen_unitary(rng, orbit.dim());
    let k = orbit.base_rank();
    Frame::new(orbit, Operator::from_matrix(u.columns(0, k) * orbit.p0().basis().adjoint()))
}

/// `x` in `(1 - p) M p`.
pub fn gen_chart_coordinate(rng: &mut Rng64, p: &Projection<f64>, scale: f64) -> Operator<f64> {
    let n = p.dim();
    let x = gen_operator(rng, n, scale);
    p.complement().matrix() * x * p.matrix()
}

fn words(rng: &mut Rng64, n: usize, scale: f64, lens: &[usize]) -> Vec<Vec<Operator<f64>>> {
    lens.iter().map(|&l| (0..l).map(|_| gen_operator(rng, n, scale)).collect()).collect()
}

/// `X(q) = C + C q C' + C q C' q C''` with random coefficients.
pub fn gen_section(rng: &mut Rng64, n: usize) -> PolySection<f64> {
    PolySection::new(words(rng, n, 1.0, &[1, 2, 3]))
}

/// A section whose field is tangent to the unitary frames.
pub fn gen_unitary_section(rng: &mut Rng64, n: usize) -> PolySection<f64> {
    PolySection::unitary(words(rng, n, 1.0, &[1, 2, 3]), words(rng, n, 1.0, &[1, 2]))
}

pub fn gen_scalar(rng: &mut Rng64, n: usize) -> PolyScalar<f64> {
    PolyScalar { constant: gaussian(rng), terms: words(rng, n, 1.0, &[1, 2]) }
}

/// `A eta + B eta (p0 C eta)^{-1} (p0 D eta)` with `C` near the identity.
pub fn gen_holomorphic(rng: &mut Rng64, n: usize) -> HolomorphicField<f64> {
    HolomorphicField {
        a: gen_operator(rng, n, 0.5),
        b: gen_operator(rng, n, 0.5),
        c: Operator::identity(n) + gen_operator(rng, n, 0.1),
        d: gen_operator(rng, n, 0.5),
    }
}
