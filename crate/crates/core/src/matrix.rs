//! Dense matrices over ℚ(i).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Gauss, Rational};

/// A row-major `rows × cols` matrix with Gaussian-rational entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<R> {
    rows: usize,
    cols: usize,
    data: Vec<Gauss<R>>,
}

impl<R: Rational> Mat<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Gauss::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Gauss::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Gauss<R>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Gauss<R>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Gauss<R>>]) -> Result<Self> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        Ok(Self::from_fn(n, cols.len(), |r, c| cols[c][r].clone()))
    }

    pub fn diag(entries: &[Gauss<R>]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        m
    }

    /// Parses rows of scalar strings such as `[["0","i"],["0","0"]]`.
    pub fn parse(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entries(&self) -> &[Gauss<R>] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<Gauss<R>> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }
    pub fn col(&self, c: usize) -> Vec<Gauss<R>> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<Gauss<R>>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(Gauss::conj).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Gauss::is_real)
    }

    pub fn scale(&self, s: &Gauss<R>) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> Gauss<R> {
        (0..self.rows.min(self.cols)).fold(Gauss::zero(), |acc, k| acc + self[(k, k)].clone())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Gauss<R>]) -> Vec<Gauss<R>> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                let mut acc = Gauss::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(r, k)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }

    /// Real and imaginary parts as separate real matrices.
    pub fn split(&self) -> (Self, Self) {
        let re = Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Gauss::real(x.re.clone())).collect(),
        };
        let im = Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Gauss::real(x.im.clone())).collect(),
        };
        (re, im)
    }
}

/// The commutator `AB − BA`.
pub fn bracket<R: Rational>(a: &Mat<R>, b: &Mat<R>) -> Result<Mat<R>> {
    if !a.is_square() || a.rows != b.rows || !b.is_square() {
        return Err(Error::Dimension(format!("bracket of {}x{} and {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

impl<R> Index<(usize, usize)> for Mat<R> {
    type Output = Gauss<R>;
    fn index(&self, (r, c): (usize, usize)) -> &Gauss<R> {
        &self.data[r * self.cols + c]
    }
}

impl<R> IndexMut<(usize, usize)> for Mat<R> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Gauss<R> {
        &mut self.data[r * self.cols + c]
    }
}

impl<'a, R: Rational> Mul<&'a Mat<R>> for &'a Mat<R> {
    type Output = Mat<R>;
    fn mul(self, o: &Mat<R>) -> Mat<R> {
        self.try_mul(o).expect("matrix product shape")
    }
}

impl<'a, R: Rational> Add<&'a Mat<R>> for &'a Mat<R> {
    type Output = Mat<R>;
    fn add(self, o: &Mat<R>) -> Mat<R> {
        self.try_add(o).expect("matrix sum shape")
    }
}

impl<'a, R: Rational> Sub<&'a Mat<R>> for &'a Mat<R> {
    type Output = Mat<R>;
    fn sub(self, o: &Mat<R>) -> Mat<R> {
        self.try_sub(o).expect("matrix difference shape")
    }
}

impl<R: Rational> Neg for &Mat<R> {
    type Output = Mat<R>;
    fn neg(self) -> Mat<R> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl<R: Rational> fmt::Display for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Rational> Serialize for Mat<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de, R: Rational> Deserialize<'de> for Mat<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Mat::parse(&rows).map_err(serde::de::Error::custom)
    }
}
