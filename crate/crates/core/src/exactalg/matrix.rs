//! Dense integer matrices.
//!
//! Entries are arbitrary-precision, but the heavy kernels (products,
//! fraction-free elimination, Berkowitz) first run on checked `i128`
//! arithmetic and restart on `BigInt` only when an intermediate overflows.
//! Both paths execute the same generic code, so results are identical.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::poly::{IntPolynomial, JsonInt};
use crate::error::{Error, Result};

/// Ring operations that may refuse (overflow) instead of wrapping.
trait Exact: Clone + PartialEq {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Option<Self>;
    fn minus(&self, o: &Self) -> Option<Self>;
    fn times(&self, o: &Self) -> Option<Self>;
    fn negate(&self) -> Option<Self>;
    /// Quotient and whether the division was exact.
    fn divide(&self, o: &Self) -> Option<(Self, bool)>;
}

impl Exact for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn plus(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn negate(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn divide(&self, o: &Self) -> Option<(Self, bool)> {
        Some((self.checked_div(*o)?, self.checked_rem(*o)? == 0))
    }
}

impl Exact for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn negate(&self) -> Option<Self> {
        Some(-self)
    }
    fn divide(&self, o: &Self) -> Option<(Self, bool)> {
        let (q, r) = self.div_rem(o);
        Some((q, Zero::is_zero(&r)))
    }
}

/// Square or rectangular matrix over `Z`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        }
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `vᵗ M w`.
    pub fn bilinear(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        v.iter().zip(self.mul_vec(w)).map(|(a, b)| a * b).sum()
    }

    fn to_small(&self) -> Option<Vec<i128>> {
        self.data.iter().map(ToPrimitive::to_i128).collect()
    }

    fn from_small(rows: usize, cols: usize, data: Vec<i128>) -> Self {
        IntMatrix { rows, cols, data: data.into_iter().map(BigInt::from).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        if let (Some(a), Some(b)) = (self.to_small(), other.to_small()) {
            if let Some(c) = matmul(&a, &b, n, k, m) {
                return Self::from_small(n, m, c);
            }
        }
        let data = matmul(&self.data, &other.data, n, k, m).expect("bigint arithmetic is total");
        IntMatrix { rows: n, cols: m, data }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Solves `self * X = rhs` exactly, requiring `X` to be integral.
    ///
    /// Errors with [`Error::SingularMatrix`] or [`Error::NonIntegralCoxeter`].
    pub fn solve_integral(&self, rhs: &Self) -> Result<Self> {
        assert!(self.is_square() && self.rows == rhs.rows, "shape mismatch");
        let (n, m) = (self.rows, rhs.cols);
        if let (Some(a), Some(b)) = (self.to_small(), rhs.to_small()) {
            if let Some(res) = gauss_jordan(&a, &b, n, m) {
                return res.map(|x| Self::from_small(n, m, x));
            }
        }
        gauss_jordan(&self.data, &rhs.data, n, m)
            .expect("bigint arithmetic is total")
            .map(|data| IntMatrix { rows: n, cols: m, data })
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if let Some(a) = self.to_small() {
            if let Some(d) = bareiss_det(&a, n) {
                return BigInt::from(d);
            }
        }
        bareiss_det(&self.data, n).expect("bigint arithmetic is total")
    }

    /// Characteristic polynomial `det(x I - M)` by the division-free
    /// Berkowitz algorithm.
    pub fn charpoly(&self) -> IntPolynomial {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let desc = match self.to_small().and_then(|a| berkowitz(&a, n)) {
            Some(c) => c.into_iter().map(BigInt::from).collect(),
            None => berkowitz(&self.data, n).expect("bigint arithmetic is total"),
        };
        IntPolynomial::new(desc.into_iter().rev().collect())
    }
}

fn matmul<T: Exact>(a: &[T], b: &[T], n: usize, k: usize, m: usize) -> Option<Vec<T>> {
    let mut c = vec![T::nil(); n * m];
    for i in 0..n {
        for l in 0..k {
            let x = &a[i * k + l];
            if x.is_nil() {
                continue;
            }
            for j in 0..m {
                let y = &b[l * m + j];
                if y.is_nil() {
                    continue;
                }
                c[i * m + j] = c[i * m + j].plus(&x.times(y)?)?;
            }
        }
    }
    Some(c)
}

/// Fraction-free Gauss–Jordan on `[A | B]`. The outer `None` means
/// arithmetic overflow; the inner result carries domain failures.
fn gauss_jordan<T: Exact>(a: &[T], b: &[T], n: usize, m: usize) -> Option<Result<Vec<T>>> {
    let w = n + m;
    let mut aug = vec![T::nil(); n * w];
    for i in 0..n {
        for j in 0..n {
            aug[i * w + j] = a[i * n + j].clone();
        }
        for j in 0..m {
            aug[i * w + n + j] = b[i * m + j].clone();
        }
    }
    let mut prev = T::unit();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !aug[r * w + k].is_nil()) else {
            return Some(Err(Error::SingularMatrix));
        };
        if p != k {
            for j in 0..w {
                aug.swap(p * w + j, k * w + j);
            }
        }
        let pivot = aug[k * w + k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = aug[i * w + k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let num = pivot.times(&aug[i * w + j])?.minus(&factor.times(&aug[k * w + j])?)?;
                aug[i * w + j] = num.divide(&prev)?.0;
            }
            aug[i * w + k] = T::nil();
        }
        prev = pivot;
    }
    // Left block is now prev * I.
    let mut x = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let (q, exact) = aug[i * w + n + j].divide(&prev)?;
            if !exact {
                return Some(Err(Error::NonIntegralCoxeter));
            }
            x.push(q);
        }
    }
    Some(Ok(x))
}

fn bareiss_det<T: Exact>(a: &[T], n: usize) -> Option<T> {
    if n == 0 {
        return Some(T::unit());
    }
    let mut m = a.to_vec();
    let mut sign_flip = false;
    let mut prev = T::unit();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r * n + k].is_nil()) else {
            return Some(T::nil());
        };
        if p != k {
            for j in 0..n {
                m.swap(p * n + j, k * n + j);
            }
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k * n + k].times(&m[i * n + j])?.minus(&m[i * n + k].times(&m[k * n + j])?)?;
                m[i * n + j] = num.divide(&prev)?.0;
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    if sign_flip { d.negate() } else { Some(d) }
}

/// Coefficients of `det(x I - A)`, descending, leading coefficient first.
fn berkowitz<T: Exact>(a: &[T], n: usize) -> Option<Vec<T>> {
    let at = |i: usize, j: usize| &a[i * n + j];
    let mut poly = vec![T::unit()];
    for r in 0..n {
        // Border the leading r×r block with row R = A[r][0..r], column
        // C = A[0..r][r] and corner A[r][r].
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(T::unit());
        toeplitz.push(at(r, r).negate()?);
        let mut col: Vec<T> = (0..r).map(|i| at(i, r).clone()).collect();
        for _ in 0..r {
            let mut dot = T::nil();
            for (j, c) in col.iter().enumerate() {
                dot = dot.plus(&at(r, j).times(c)?)?;
            }
            toeplitz.push(dot.negate()?);
            let mut next = vec![T::nil(); r];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut s = T::nil();
                for (j, c) in col.iter().enumerate() {
                    s = s.plus(&at(i, j).times(c)?)?;
                }
                *slot = s;
            }
            col = next;
        }
        let mut next = vec![T::nil(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut s = T::nil();
            for (j, p) in poly.iter().enumerate() {
                if i >= j {
                    s = s.plus(&toeplitz[i - j].times(p)?)?;
                }
            }
            *slot = s;
        }
        poly = next;
    }
    Some(poly)
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = strs.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", strs[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

struct JsonRow<'a>(&'a [BigInt]);

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&JsonInt(x))?;
        }
        seq.end()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&JsonRow(self.row(i)))?;
        }
        seq.end()
    }
}
