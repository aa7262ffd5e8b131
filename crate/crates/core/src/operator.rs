//! Dense complex operators on `C^n`, the elements of the matrix W*-algebra.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{cre, Cx, Real};

/// An element of `M_n(C)`.
#[derive(Clone, PartialEq)]
pub struct Operator<T: Real>(DMatrix<Cx<T>>);

impl<T: Real> Operator<T> {
    pub fn from_matrix(m: DMatrix<Cx<T>>) -> Self {
        Operator(m)
    }

    pub fn zeros(n: usize) -> Self {
        Operator(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Operator(DMatrix::identity(n, n))
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Cx<T>) -> Self {
        Operator(DMatrix::from_fn(n, n, |i, j| f(i, j)))
    }

    /// Builds an operator from row-major `(re, im)` pairs given as `f64`.
    pub fn from_rows(rows: &[&[(f64, f64)]]) -> Self {
        let n = rows.len();
        Operator::from_fn(n, |i, j| {
            let (re, im) = rows[i][j];
            Complex::new(T::lit(re), T::lit(im))
        })
    }

    /// Builds an operator from real row-major entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Operator::from_fn(n, |i, j| cre(T::lit(rows[i][j])))
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let n = d.len();
        Operator::from_fn(n, |i, j| if i == j { cre(T::lit(d[i])) } else { Complex::new(T::zero(), T::zero()) })
    }

    /// Matrix unit `|i><j|`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        m[(i, j)] = Complex::new(T::one(), T::zero());
        Operator(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Cx<T>> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Cx<T>> {
        self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Cx<T> {
        self.0[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Operator(self.0.adjoint())
    }

    pub fn scale(&self, c: Cx<T>) -> Self {
        Operator(self.0.map(|v| v * c))
    }

    pub fn scale_real(&self, r: T) -> Self {
        self.scale(cre(r))
    }

    pub fn trace(&self) -> Cx<T> {
        self.0.trace()
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Operator (spectral) norm, the largest singular value.
    pub fn norm(&self) -> T {
        if self.0.iter().all(|v| v.re == T::zero() && v.im == T::zero()) {
            return T::zero();
        }
        self.0
            .singular_values()
            .iter()
            .fold(T::zero(), |acc, &s| if s > acc { s } else { acc })
    }

    pub fn fro_norm(&self) -> T {
        self.0.norm()
    }

    /// Operator-norm distance `|self - other|`.
    pub fn dist(&self, other: &Self) -> T {
        (self - other).norm()
    }

    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(T::lit(0.5))
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.0.nrows())
            .map(|i| {
                (0..self.0.ncols())
                    .map(|j| {
                        let v = self.0[(i, j)];
                        [v.re.as_f64(), v.im.as_f64()]
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_f64_rows(rows: &[Vec<[f64; 2]>]) -> Result<Self, String> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(format!("expected a square {n}x{n} array of [re, im] pairs"));
        }
        Ok(Operator::from_fn(n, |i, j| Complex::new(T::lit(rows[i][j][0]), T::lit(rows[i][j][1]))))
    }
}

impl<T: Real> fmt::Debug for Operator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator {}x{} [", self.0.nrows(), self.0.ncols())?;
        for i in 0..self.0.nrows() {
            write!(f, "  ")?;
            for j in 0..self.0.ncols() {
                let v = self.0[(i, j)];
                write!(f, "{:>10.4}{:+.4}i ", v.re.as_f64(), v.im.as_f64())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a, T: Real> $tr<&'a Operator<T>> for &'a Operator<T> {
            type Output = Operator<T>;
            fn $m(self, rhs: &'a Operator<T>) -> Operator<T> {
                Operator(&self.0 $op &rhs.0)
            }
        }
        impl<T: Real> $tr<Operator<T>> for Operator<T> {
            type Output = Operator<T>;
            fn $m(self, rhs: Operator<T>) -> Operator<T> {
                Operator(self.0 $op rhs.0)
            }
        }
        impl<'a, T: Real> $tr<&'a Operator<T>> for Operator<T> {
            type Output = Operator<T>;
            fn $m(self, rhs: &'a Operator<T>) -> Operator<T> {
                Operator(self.0 $op &rhs.0)
            }
        }
        impl<'a, T: Real> $tr<Operator<T>> for &'a Operator<T> {
            type Output = Operator<T>;
            fn $m(self, rhs: Operator<T>) -> Operator<T> {
                Operator(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl<T: Real> Neg for Operator<T> {
    type Output = Operator<T>;
    fn neg(self) -> Operator<T> {
        Operator(-self.0)
    }
}

impl<T: Real> Neg for &Operator<T> {
    type Output = Operator<T>;
    fn neg(self) -> Operator<T> {
        Operator(-&self.0)
    }
}

impl<T: Real> AddAssign<&Operator<T>> for Operator<T> {
    fn add_assign(&mut self, rhs: &Operator<T>) {
        self.0 += &rhs.0;
    }
}

impl<T: Real> SubAssign<&Operator<T>> for Operator<T> {
    fn sub_assign(&mut self, rhs: &Operator<T>) {
        self.0 -= &rhs.0;
    }
}

/// Row-major array of rows, each entry an `[re, im]` pair.
impl<T: Real> Serialize for Operator<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_f64_rows().serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Operator<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let op = Operator::from_f64_rows(&rows).map_err(D::Error::custom)?;
        if !op.is_finite() {
            return Err(D::Error::custom("non-finite operator entry"));
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = Operator<f64>;

    #[test]
    fn norm_of_diag_is_max_abs() {
        let x = Op::from_real_diag(&[1.0, -3.0, 2.0]);
        assert!((x.norm() - 3.0).abs() < 1e-14);
        assert_eq!(Op::zeros(3).norm(), 0.0);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let x = Op::from_rows(&[&[(1.0, 2.0), (3.0, 0.0)], &[(0.0, -1.0), (4.0, 4.0)]]);
        let a = x.adjoint();
        assert_eq!(a.entry(0, 1), Complex::new(0.0, 1.0));
        assert_eq!(a.entry(1, 0), Complex::new(3.0, 0.0));
        assert_eq!(a.entry(0, 0), Complex::new(1.0, -2.0));
    }

    #[test]
    fn json_is_row_major_re_im() {
        let x = Op::from_rows(&[&[(1.0, 2.0), (3.0, 0.0)], &[(0.0, -1.0), (4.0, 4.0)]]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "[[[1.0,2.0],[3.0,0.0]],[[0.0,-1.0],[4.0,4.0]]]");
        let back: Op = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn json_rejects_ragged_input() {
        let r: Result<Op, _> = serde_json::from_str("[[[1.0,0.0]],[[0.0,0.0],[1.0,0.0]]]");
        assert!(r.is_err());
    }
}
