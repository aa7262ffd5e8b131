//! The Grassmannian case in Dirac matrix elements.
//!
//! `M = M_D(C)` with `p0` the projection onto the first `N` basis vectors.
//! A frame is `eta = sum_k |eta_k><e_k|`, a chart is labelled by a
//! multi-index `n_1 < ... < n_N`, and every quantity is written entrywise.
//! Each routine here has a general-module counterpart it must reproduce.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebroid::ChartField;
use crate::error::{Error, Result};
use crate::jet::{seed, OpRing};
use crate::lattice::LatticeOrbit;
use crate::operator::Operator;
use crate::scalar::{Cx, Real};
use crate::wstar::{svd, Projection};

/// `N` linearly independent vectors in `C^D`, stored as the columns of a `D x N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracFrame<T: Real> {
    columns: DMatrix<Cx<T>>,
}

impl<T: Real> DiracFrame<T> {
    /// Checks independence with the gap policy of `orbit`.
    pub fn new(orbit: &LatticeOrbit<T>, columns: DMatrix<Cx<T>>) -> Result<Self> {
        if columns.nrows() != orbit.dim() || columns.ncols() != orbit.base_rank() {
            return Err(Error::DimensionMismatch { expected: orbit.dim(), found: columns.nrows() });
        }
        check_gap(orbit, &columns, Error::NotInvertibleInCorner { expected: columns.ncols(), found: 0 })?;
        Ok(DiracFrame { columns })
    }

    pub fn columns(&self) -> &DMatrix<Cx<T>> {
        &self.columns
    }

    pub fn d(&self) -> usize {
        self.columns.nrows()
    }

    pub fn n(&self) -> usize {
        self.columns.ncols()
    }

    /// The operator `sum_k |eta_k><e_k|`.
    pub fn to_operator(&self) -> Operator<T> {
        let (d, n) = (self.d(), self.n());
        Operator::from_fn(d, |i, j| if j < n { self.columns[(i, j)] } else { Cx::new(T::zero(), T::zero()) })
    }

    pub fn from_operator(orbit: &LatticeOrbit<T>, eta: &Operator<T>) -> Result<Self> {
        let n = orbit.base_rank();
        Self::new(orbit, eta.matrix().columns(0, n).into_owned())
    }

    pub fn to_vectors(&self) -> Vec<Vec<[f64; 2]>> {
        self.columns.column_iter().map(|c| c.iter().map(|v| [v.re.as_f64(), v.im.as_f64()]).collect()).collect()
    }
}

impl<T: Real> Serialize for DiracFrame<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vectors().serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for DiracFrame<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let cols: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let n = cols.len();
        let dim = cols.first().map_or(0, |c| c.len());
        if cols.iter().any(|c| c.len() != dim) {
            return Err(D::Error::custom("ragged frame"));
        }
        let columns = DMatrix::from_fn(dim, n, |i, j| Cx::new(T::lit(cols[j][i][0]), T::lit(cols[j][i][1])));
        Ok(DiracFrame { columns })
    }
}

fn check_gap<T: Real>(orbit: &LatticeOrbit<T>, m: &DMatrix<Cx<T>>, err: Error) -> Result<()> {
    if m.ncols() == 0 {
        return Ok(());
    }
    let s = svd(m).s;
    let (smax, smin) = (s[0], s[s.len() - 1]);
    if !(smax > T::zero()) || smin < orbit.algebra().tol_rank().sqrt() * smax {
        return Err(err);
    }
    Ok(())
}

/// `h^{power}` for a positive definite hermitian `N x N` matrix.
fn hermitian_power<T: Real>(h: &DMatrix<Cx<T>>, power: T) -> DMatrix<Cx<T>> {
    let herm = (h + h.adjoint()) * Cx::new(T::lit(0.5), T::zero());
    let eig = herm.symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Cx::new(l.powf(power), T::zero())));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Gram matrix `G_{kl} = <eta_k|eta_l>`.
pub fn gram<T: Real>(columns: &DMatrix<Cx<T>>) -> DMatrix<Cx<T>> {
    columns.adjoint() * columns
}

/// `(u, |eta|)` with `|eta| = G^{1/2}` and `u_k = sum_l eta_l (G^{-1/2})_{lk}`.
pub fn gram_polar<T: Real>(f: &DiracFrame<T>) -> (DMatrix<Cx<T>>, DMatrix<Cx<T>>) {
    let g = gram(&f.columns);
    let u = &f.columns * hermitian_power(&g, T::lit(-0.5));
    (u, hermitian_power(&g, T::lit(0.5)))
}

/// `sum_k |u_k><u_k|` for the orthonormalisation `u` of a column family.
pub fn projector_of<T: Real>(columns: &DMatrix<Cx<T>>) -> Operator<T> {
    let u = columns * hermitian_power(&gram(columns), T::lit(-0.5));
    Operator::from_matrix(&u * u.adjoint())
}

/// Supports `(l(x), r(x))` of `x = sum_k |eta_k><xi_k|`: `l` from the `eta`
/// family and `r` from the `xi` family.
pub fn dirac_supports<T: Real>(
    orbit: &LatticeOrbit<T>,
    eta: &DMatrix<Cx<T>>,
    xi: &DMatrix<Cx<T>>,
) -> Result<(Operator<T>, Operator<T>)> {
    for fam in [eta, xi] {
        check_gap(orbit, fam, Error::NotInvertibleInCorner { expected: fam.ncols(), found: 0 })?;
    }
    Ok((projector_of(eta), projector_of(xi)))
}

/// `x = sum_k |eta_k><xi_k|`.
pub fn dirac_operator<T: Real>(eta: &DMatrix<Cx<T>>, xi: &DMatrix<Cx<T>>) -> Operator<T> {
    Operator::from_matrix(eta * xi.adjoint())
}

/// A multi-index `n_1 < ... < n_N` in `0..D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndexChart {
    indices: Vec<usize>,
    d: usize,
}

impl MultiIndexChart {
    pub fn new(d: usize, indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= d) {
            return Err(Error::InvalidInput(format!("multi-index {indices:?} is not increasing in 0..{d}")));
        }
        Ok(MultiIndexChart { indices, d })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The indices not in the multi-index, increasing.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.d).filter(|i| !self.indices.contains(i)).collect()
    }

    /// `p_{n_1 ... n_N}`.
    pub fn projection<T: Real>(&self) -> Projection<T> {
        Projection::coordinate(self.d, &self.indices)
    }

    /// All multi-indices of size `n` in `0..d`, lexicographically.
    pub fn enumerate(d: usize, n: usize) -> Vec<MultiIndexChart> {
        fn rec(start: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..=d - left {
                cur.push(i);
                rec(i + 1, d, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n <= d {
            rec(0, d, n, &mut Vec::new(), &mut out);
        }
        out.into_iter().map(|indices| MultiIndexChart { indices, d }).collect()
    }

    /// The chart whose minor has the largest smallest singular value.
    pub fn best_for<T: Real>(f: &DiracFrame<T>) -> MultiIndexChart {
        let mut best = None;
        let mut best_s = -T::one();
        for c in Self::enumerate(f.d(), f.n()) {
            let s = svd(&minor(&c, &f.columns)).s;
            let smin = s.last().copied().unwrap_or_else(T::one);
            if smin > best_s {
                best_s = smin;
                best = Some(c);
            }
        }
        best.expect("at least one multi-index")
    }
}

fn minor<T: Real>(c: &MultiIndexChart, columns: &DMatrix<Cx<T>>) -> DMatrix<Cx<T>> {
    columns.select_rows(c.indices.iter())
}

/// Coordinates of a frame in a multi-index chart.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiIndexCoordinates<T: Real> {
    /// `z^{ts} = <e_{n_t}|eta_s>`, `N x N`.
    pub z: DMatrix<Cx<T>>,
    /// `y^{rt}` for `r` outside the multi-index, `(D - N) x N`.
    pub y: DMatrix<Cx<T>>,
}

pub fn multiindex_coordinates<T: Real>(
    orbit: &LatticeOrbit<T>,
    c: &MultiIndexChart,
    f: &DiracFrame<T>,
) -> Result<MultiIndexCoordinates<T>> {
    let z = minor(c, &f.columns);
    check_gap(orbit, &z, Error::ChartDomain)?;
    let z_inv = z.clone().try_inverse().ok_or(Error::ChartDomain)?;
    let comp = c.complement();
    let y = f.columns.select_rows(comp.iter()) * z_inv;
    Ok(MultiIndexCoordinates { z, y })
}

/// The operator `y` in `(1 - p) M p` with the given entries.
pub fn embed_y<T: Real>(c: &MultiIndexChart, y: &DMatrix<Cx<T>>) -> Operator<T> {
    let mut m = DMatrix::zeros(c.d, c.d);
    for (ri, &r) in c.complement().iter().enumerate() {
        for (ti, &t) in c.indices.iter().enumerate() {
            m[(r, t)] = y[(ri, ti)];
        }
    }
    Operator::from_matrix(m)
}

/// Entries `a^{rt}` (rows outside, columns inside the multi-index).
pub fn extract_a<T: Real>(c: &MultiIndexChart, a: &Operator<T>) -> DMatrix<Cx<T>> {
    a.matrix().select_rows(c.complement().iter()).select_columns(c.indices.iter())
}

/// Entries `b^{st}` (both inside the multi-index).
pub fn extract_b<T: Real>(c: &MultiIndexChart, b: &Operator<T>) -> DMatrix<Cx<T>> {
    b.matrix().select_rows(c.indices.iter()).select_columns(c.indices.iter())
}

/// Matrix elements `(a^{rt}, b^{st})` of a chart field.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixElements<T: Real> {
    pub a: DMatrix<Cx<T>>,
    pub b: DMatrix<Cx<T>>,
}

impl<T: Real> MatrixElements<T> {
    pub fn dist(&self, other: &Self) -> T {
        let amax = |m: DMatrix<Cx<T>>| if m.is_empty() { T::zero() } else { m.camax() };
        let da = amax(&self.a - &other.a);
        let db = amax(&self.b - &other.b);
        if da > db {
            da
        } else {
            db
        }
    }
}

pub fn matrix_elements<T: Real, C: ChartField<T>>(
    orbit: &LatticeOrbit<T>,
    c: &MultiIndexChart,
    f: &C,
    y: &Operator<T>,
) -> Result<MatrixElements<T>> {
    let (a, b): (Operator<T>, Operator<T>) = f.eval(orbit, y)?;
    Ok(MatrixElements { a: extract_a(c, &a), b: extract_b(c, &b) })
}

/// Wirtinger partials `d/dy^{r't'}` and `d/d conj(y^{r't'})` of a chart field's
/// matrix elements, indexed `[r' (D - N) + t']` in row-major order over `(r', t')`.
fn entry_partials<T: Real, C: ChartField<T>>(
    orbit: &LatticeOrbit<T>,
    c: &MultiIndexChart,
    f: &C,
    y: &Operator<T>,
) -> Result<Vec<(MatrixElements<T>, MatrixElements<T>)>> {
    let d = c.d;
    let i = Cx::new(T::zero(), T::one());
    let half = Cx::new(T::lit(0.5), T::zero());
    let mut out = Vec::new();
    for &r in &c.complement() {
        for &t in &c.indices {
            let e = Operator::unit(d, r, t);
            let (da, db) = f.eval(orbit, &seed(y, &e))?;
            let (ia, ib) = f.eval(orbit, &seed(y, &e.scale(i)))?;
            let (da, db, ia, ib) = (extract_a(c, &da.eps), extract_b(c, &db.eps), extract_a(c, &ia.eps), extract_b(c, &ib.eps));
            let holo = MatrixElements { a: (&da - &ia * i) * half, b: (&db - &ib * i) * half };
            let anti = MatrixElements { a: (&da + &ia * i) * half, b: (&db + &ib * i) * half };
            out.push((holo, anti));
        }
    }
    Ok(out)
}

/// `sum_{r', t'} (dF/dy^{r't'} v^{r't'} + dF/d conj(y^{r't'}) conj(v^{r't'}))`.
fn contract<T: Real>(partials: &[(MatrixElements<T>, MatrixElements<T>)], v: &DMatrix<Cx<T>>) -> MatrixElements<T> {
    let (rows, cols) = (partials[0].0.a.shape(), partials[0].0.b.shape());
    let mut a = DMatrix::zeros(rows.0, rows.1);
    let mut b = DMatrix::zeros(cols.0, cols.1);
    let mut idx = 0;
    for r in 0..v.nrows() {
        for t in 0..v.ncols() {
            let (h, ah) = &partials[idx];
            let (w, wc) = (v[(r, t)], v[(r, t)].conj());
            a += &h.a * w + &ah.a * wc;
            b += &h.b * w + &ah.b * wc;
            idx += 1;
        }
    }
    MatrixElements { a, b }
}

/// The bracket of two chart fields written in matrix elements:
/// `a^{rt} = sum (da_2^{rt}/dy a_1 + da_2^{rt}/d conj(y) conj(a_1)) - (1 <-> 2)` and
/// `b^{st} = (same for b) + sum_m (b_2^{sm} b_1^{mt} - b_1^{sm} b_2^{mt})`.
pub fn matrixelement_bracket<T: Real, C1: ChartField<T>, C2: ChartField<T>>(
    orbit: &LatticeOrbit<T>,
    c: &MultiIndexChart,
    f1: &C1,
    f2: &C2,
    y: &Operator<T>,
) -> Result<MatrixElements<T>> {
    let e1 = matrix_elements(orbit, c, f1, y)?;
    let e2 = matrix_elements(orbit, c, f2, y)?;
    if e1.a.is_empty() {
        // N = D: no coordinates, only the b-product survives.
        return Ok(MatrixElements { a: e1.a.clone(), b: &e2.b * &e1.b - &e1.b * &e2.b });
    }
    let d2 = contract(&entry_partials(orbit, c, f2, y)?, &e1.a);
    let d1 = contract(&entry_partials(orbit, c, f1, y)?, &e2.a);
    Ok(MatrixElements { a: &d2.a - &d1.a, b: &d2.b - &d1.b + &e2.b * &e1.b - &e1.b * &e2.b })
}

/// Anchor components `a^{rj}` of a field with value `theta` at the frame
/// `eta`, from matrix elements only:
/// `w = z^{-1}`, `y = eta_{out} w`, `b = theta_{in} w`, `a = theta_{out} w - y b`.
pub fn matrixelement_anchor<T: Real>(
    orbit: &LatticeOrbit<T>,
    c: &MultiIndexChart,
    f: &DiracFrame<T>,
    theta: &DMatrix<Cx<T>>,
) -> Result<MatrixElements<T>> {
    let coords = multiindex_coordinates(orbit, c, f)?;
    let w = coords.z.clone().try_inverse().ok_or(Error::ChartDomain)?;
    let comp = c.complement();
    let b = theta.select_rows(c.indices.iter()) * &w;
    let a = theta.select_rows(comp.iter()) * &w - &coords.y * &b;
    Ok(MatrixElements { a, b })
}

/// Column `k` of a frame field value: `theta e_k` for `k < N`.
pub fn field_columns<T: Real>(orbit: &LatticeOrbit<T>, theta: &Operator<T>) -> DMatrix<Cx<T>> {
    theta.matrix().columns(0, orbit.base_rank()).into_owned()
}

/// A chart field with constant `(a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstChartField<T: Real> {
    pub p: Projection<T>,
    pub a: Operator<T>,
    pub b: Operator<T>,
}

impl<T: Real> ChartField<T> for ConstChartField<T> {
    fn base(&self) -> &Projection<T> {
        &self.p
    }

    fn eval<R: OpRing<T>>(&self, _orbit: &LatticeOrbit<T>, _y: &R) -> Result<(R, R)> {
        Ok((R::constant(&self.a), R::constant(&self.b)))
    }
}

/// A frame as the coordinate vector of one basis direction, for tests and examples.
pub fn basis_frame<T: Real>(d: usize, indices: &[usize]) -> DMatrix<Cx<T>> {
    let mut m = DMatrix::zeros(d, indices.len());
    for (k, &i) in indices.iter().enumerate() {
        m[(i, k)] = Cx::new(T::one(), T::zero());
    }
    m
}

/// Column vector helper.
pub fn column<T: Real>(entries: &[(f64, f64)]) -> DVector<Cx<T>> {
    DVector::from_iterator(entries.len(), entries.iter().map(|&(re, im)| Cx::new(T::lit(re), T::lit(im))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{bracket_chart, to_chart_field, LinearField, RightMultField};
    use crate::bundle::{frame_chart, Frame};
    use crate::wstar::polar_decompose;

    type C = Cx<f64>;

    fn orbit(d: usize, n: usize) -> LatticeOrbit<f64> {
        LatticeOrbit::canonical(d, n).unwrap()
    }

    fn frame(d: usize, n: usize, seed: f64) -> DMatrix<C> {
        DMatrix::from_fn(d, n, |i, j| C::new(((i * 7 + j * 3) as f64 * seed).sin() + if i == j { 1.5 } else { 0.0 }, ((i + j * 5) as f64 * seed).cos() * 0.4))
    }

    #[test]
    fn orthonormal_and_scaled_moduli() {
        let o = orbit(4, 2);
        let f = DiracFrame::new(&o, basis_frame(4, &[1, 3])).unwrap();
        let (_, m) = gram_polar(&f);
        assert!((m - DMatrix::<C>::identity(2, 2)).norm() < 1e-15);
        let f2 = DiracFrame::new(&o, basis_frame::<f64>(4, &[1, 3]) * C::new(2.0, 0.0)).unwrap();
        assert!((gram_polar(&f2).1 - DMatrix::<C>::identity(2, 2) * C::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn polar_matches_general() {
        let o = orbit(5, 2);
        let f = DiracFrame::new(&o, frame(5, 2, 0.7)).unwrap();
        let (u, m) = gram_polar(&f);
        let pd = polar_decompose(o.algebra(), &f.to_operator()).unwrap();
        let u_gen = pd.u.matrix().columns(0, 2).into_owned();
        let m_gen = pd.modulus.matrix().view((0, 0), (2, 2)).into_owned();
        assert!((u - u_gen).norm() < 1e-12);
        assert!((m - m_gen).norm() < 1e-12);
    }

    #[test]
    fn supports_match_general() {
        let o = orbit(5, 2);
        let (eta, xi) = (frame(5, 2, 0.7), frame(5, 2, 1.9));
        let (l, r) = dirac_supports(&o, &eta, &xi).unwrap();
        let pd = polar_decompose(o.algebra(), &dirac_operator(&eta, &xi)).unwrap();
        assert!(l.dist(pd.l_support.matrix()) < 1e-12);
        assert!(r.dist(pd.r_support.matrix()) < 1e-12);
    }

    #[test]
    fn rank_one_example() {
        let o = orbit(3, 1);
        let f = DiracFrame::new(&o, DMatrix::from_column_slice(3, 1, column::<f64>(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]).as_slice())).unwrap();
        let c = MultiIndexChart::new(3, vec![0]).unwrap();
        let k = multiindex_coordinates(&o, &c, &f).unwrap();
        assert_eq!(k.z[(0, 0)], C::new(1.0, 0.0));
        assert_eq!(k.y[(0, 0)], C::new(2.0, 0.0));
        assert_eq!(k.y[(1, 0)], C::new(3.0, 0.0));
        let (l, _) = dirac_supports(&o, f.columns(), f.columns()).unwrap();
        let v = column::<f64>(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        assert!(l.dist(&Operator::from_matrix(&v * v.adjoint() / C::new(14.0, 0.0))) < 1e-15);
    }

    #[test]
    fn coordinates_match_frame_chart() {
        let o = orbit(6, 3);
        let f = DiracFrame::new(&o, frame(6, 3, 0.45)).unwrap();
        let c = MultiIndexChart::best_for(&f);
        let k = multiindex_coordinates(&o, &c, &f).unwrap();
        let gen = frame_chart(&o, &c.projection(), &Frame::new(&o, f.to_operator()).unwrap()).unwrap();
        assert!((embed_y(&c, &k.y) - &gen.y.coordinate).norm() < 1e-12);
        let z_gen = gen.z.matrix().select_rows(c.indices().iter()).columns(0, 3).into_owned();
        assert!((z_gen - k.z).norm() < 1e-12);
    }

    #[test]
    fn singular_minor_is_outside_chart() {
        let o = orbit(3, 1);
        let f = DiracFrame::new(&o, basis_frame(3, &[2])).unwrap();
        let c = MultiIndexChart::new(3, vec![0]).unwrap();
        assert!(matches!(multiindex_coordinates(&o, &c, &f), Err(Error::ChartDomain)));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = MultiIndexChart::enumerate(4, 2);
        let idx: Vec<Vec<usize>> = all.iter().map(|c| c.indices().to_vec()).collect();
        assert_eq!(idx, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn constant_b_bracket_is_commutator() {
        let o = orbit(3, 2);
        let c = MultiIndexChart::new(3, vec![0, 1]).unwrap();
        let p = c.projection::<f64>();
        let b1 = Operator::from_real_rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
        let b2 = Operator::from_real_rows(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
        let z = Operator::zeros(3);
        let f1 = ConstChartField { p: p.clone(), a: z.clone(), b: b1.clone() };
        let f2 = ConstChartField { p, a: z.clone(), b: b2.clone() };
        let me = matrixelement_bracket(&o, &c, &f1, &f2, &z).unwrap();
        assert!((me.b - extract_b(&c, &(&b2 * &b1 - &b1 * &b2))).norm() < 1e-15);
    }

    #[test]
    fn bracket_and_anchor_match_general() {
        let o = orbit(5, 2);
        let f = DiracFrame::new(&o, frame(5, 2, 0.8)).unwrap();
        let c = MultiIndexChart::best_for(&f);
        let p = c.projection::<f64>();
        let eta = f.to_operator();
        let lambda = p.matrix() * &eta;
        let k = multiindex_coordinates(&o, &c, &f).unwrap();
        let y = embed_y(&c, &k.y);
        let l1 = LinearField { a: Operator::from_matrix(frame(5, 5, 0.3)) };
        let l2 = LinearField { a: Operator::from_matrix(frame(5, 5, 1.1)) };
        let c1 = to_chart_field(l1.clone(), p.clone(), lambda.clone());
        let c2 = to_chart_field(l2, p.clone(), lambda.clone());
        let me = matrixelement_bracket(&o, &c, &c1, &c2, &y).unwrap();
        let gen = matrix_elements(&o, &c, &bracket_chart(&c1, &c2), &y).unwrap();
        assert!(me.dist(&gen) < 1e-12);

        let theta = crate::algebroid::FrameField::value(&l1, &o, &eta).unwrap();
        let an = matrixelement_anchor(&o, &c, &f, &field_columns(&o, &theta)).unwrap();
        let gen = matrix_elements(&o, &c, &c1, &y).unwrap();
        assert!(an.dist(&gen) < 1e-12);

        let m = Operator::from_real_rows(&[&[1.0, 2.0, 0.0, 0.0, 0.0], &[0.5, -1.0, 0.0, 0.0, 0.0], &[0.0; 5], &[0.0; 5], &[0.0; 5]]);
        let vert = crate::algebroid::FrameField::value(&RightMultField { m }, &o, &eta).unwrap();
        let an = matrixelement_anchor(&o, &c, &f, &field_columns(&o, &vert)).unwrap();
        assert!(an.a.norm() < 1e-13);
    }

    #[test]
    fn frame_serialises_as_vectors() {
        let o = orbit(3, 1);
        let f = DiracFrame::new(&o, basis_frame(3, &[1])).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, "[[[0.0,0.0],[1.0,0.0],[0.0,0.0]]]");
        let back: DiracFrame<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
