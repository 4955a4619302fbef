//! Dense square and rectangular matrices over polynomials or rational
//! functions.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use super::gcd::lcm;
use super::poly::{Poly, Vars};
use super::rat::Rat;
use super::ratfn::RatFn;
use crate::error::{Error, Result};

/// Ring operations needed by [`Matrix`].
pub trait Entry: Clone + PartialEq {
    fn zero_in(vars: &Vars) -> Self;
    fn one_in(vars: &Vars) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn derivative(&self, var: usize) -> Self;
}

impl Entry for Poly {
    fn zero_in(vars: &Vars) -> Self {
        Poly::zero(vars)
    }
    fn one_in(vars: &Vars) -> Self {
        Poly::one(vars)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        Poly::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn derivative(&self, var: usize) -> Self {
        Poly::derivative(self, var)
    }
}

impl Entry for RatFn {
    fn zero_in(vars: &Vars) -> Self {
        RatFn::zero(vars)
    }
    fn one_in(vars: &Vars) -> Self {
        RatFn::one(vars)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        RatFn::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn derivative(&self, var: usize) -> Self {
        RatFn::derivative(self, var)
    }
}

/// Row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    vars: Vars,
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<Poly>;
pub type RatMatrix = Matrix<RatFn>;

impl<T: Entry> Matrix<T> {
    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        Matrix { vars: vars.clone(), rows, cols, data: alloc::vec![T::zero_in(vars); rows * cols] }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m[(i, i)] = T::one_in(vars);
        }
        m
    }

    pub fn from_fn(vars: &Vars, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { vars: vars.clone(), rows, cols, data }
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension(format!("ragged rows in a {r}-row matrix")));
        }
        Ok(Matrix { vars: vars.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<U: Entry>(&self, vars: &Vars, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { vars: vars.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Entry>(&self, vars: &Vars, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { vars: vars.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.vars, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Self::from_fn(&self.vars, self.rows, o.cols, |i, j| {
            let mut acc = T::zero_in(&self.vars);
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &o[(k, j)];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        }))
    }

    /// Panics on a dimension mismatch.
    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("matrix product dimensions")
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix dimensions differ");
        Matrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, T::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, T::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(&self.vars, T::neg)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map(&self.vars, |x| x.scale(c))
    }

    pub fn scale_by(&self, c: &T) -> Self {
        self.map(&self.vars, |x| x.mul(c))
    }

    pub fn derivative(&self, var: usize) -> Self {
        self.map(&self.vars, |x| x.derivative(var))
    }

    /// `[self, o] = self·o − o·self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero_in(&self.vars);
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self[(i, j)].is_zero() {
                        acc = acc.add(&self[(i, j)].mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Position of the first entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        if self.rows != o.rows || self.cols != o.cols {
            return Some((0, 0));
        }
        (0..self.rows * self.cols).find(|&k| self.data[k] != o.data[k]).map(|k| (k / self.cols, k % self.cols))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(&self.vars));
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = Poly::one(&self.vars);
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = !sign;
                    }
                    None => return Ok(Poly::zero(&self.vars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[(k, k)] * &a[(i, j)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = t.div_exact(&prev).map_err(|_| Error::Consistency("Bareiss step not exact".into()))?;
                }
                a[(i, k)] = Poly::zero(&self.vars);
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if sign { -d } else { d })
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        if r == s {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r * self.cols + j, s * self.cols + j);
        }
    }

    /// Fraction-free Gauss-Jordan on `[self | I]`. Returns `(d, M)` with
    /// `self · M = d · I` and `d = ±det(self)`; `d ≠ 0`.
    pub fn scaled_inverse(&self) -> Result<(Poly, PolyMatrix)> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let vars = self.vars.clone();
        let mut a = PolyMatrix::from_fn(&vars, n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Poly::one(&vars)
            } else {
                Poly::zero(&vars)
            }
        });
        let mut prev = Poly::one(&vars);
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let r = (k + 1..n).find(|&r| !a[(r, k)].is_zero()).ok_or(Error::Singular)?;
                a.swap_rows(k, r);
            }
            let piv = a[(k, k)].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let t = &(&piv * &a[(i, j)]) - &(&f * &a[(k, j)]);
                    a[(i, j)] = t
                        .div_exact(&prev)
                        .map_err(|_| Error::Consistency("fraction-free elimination not exact".into()))?;
                }
                a[(i, k)] = Poly::zero(&vars);
            }
            prev = piv;
        }
        // Rows were scaled by successive pivots; the left block is now diag(prev).
        let d = prev;
        let m = PolyMatrix::from_fn(&vars, n, n, |i, j| a[(i, j + n)].clone());
        Ok((d, m))
    }

    pub fn to_ratfn(&self) -> RatMatrix {
        self.map(&self.vars, |p| RatFn::from_poly(p.clone()))
    }
}

impl RatMatrix {
    pub fn from_polys(m: &PolyMatrix) -> Self {
        m.to_ratfn()
    }

    /// Clears row denominators: returns `(N, D)` with `self[i][j] = N[i][j] / D[i]`.
    fn clear_rows(&self) -> (PolyMatrix, Vec<Poly>) {
        let vars = self.vars.clone();
        let mut ds = Vec::with_capacity(self.rows);
        let mut n = PolyMatrix::zeros(&vars, self.rows, self.cols);
        for i in 0..self.rows {
            let mut d = Poly::one(&vars);
            for x in self.row(i) {
                if !x.denom().is_one() {
                    d = lcm(&d, x.denom());
                }
            }
            for j in 0..self.cols {
                let x = &self[(i, j)];
                n[(i, j)] = if x.denom() == &d {
                    x.numer().clone()
                } else {
                    x.numer() * &d.div_exact(x.denom()).expect("lcm is a multiple")
                };
            }
            ds.push(d);
        }
        (n, ds)
    }

    pub fn det(&self) -> Result<RatFn> {
        let (n, ds) = self.clear_rows();
        let mut den = Poly::one(&self.vars);
        for d in &ds {
            den = &den * d;
        }
        RatFn::new(n.det()?, den)
    }

    /// Exact inverse, verified by `self · inverse = I`.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let inv = self.inverse_unchecked()?;
        if self.mul(&inv) != RatMatrix::identity(&self.vars, self.rows) {
            return Err(Error::Consistency("matrix inverse failed verification".into()));
        }
        Ok(inv)
    }

    pub fn inverse_unchecked(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let (n, ds) = self.clear_rows();
        // self = diag(D)^{-1} N, so self^{-1} = N^{-1} diag(D).
        let (d, m) = n.scaled_inverse()?;
        let vars = self.vars.clone();
        let mut out = RatMatrix::zeros(&vars, self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                let top = &m[(i, j)] * &ds[j];
                out[(i, j)] = RatFn::new(top, d.clone())?;
            }
        }
        Ok(out)
    }

    /// Entries as polynomials, failing on the first proper fraction.
    pub fn to_poly(&self) -> Result<PolyMatrix> {
        self.try_map(&self.vars, RatFn::to_poly)
    }

    pub fn substitute(&self, vars: &Vars, images: &[Poly]) -> Result<RatMatrix> {
        self.try_map(vars, |x| x.substitute(images))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Vars {
        Vars::indexed("u", 2).unwrap()
    }

    fn u(i: usize) -> Poly {
        Poly::var(&ring(), i)
    }

    #[test]
    fn bareiss_matches_hand_expansion() {
        let v = ring();
        let m = PolyMatrix::from_rows(
            &v,
            alloc::vec![alloc::vec![u(0), u(1)], alloc::vec![u(1).pow(2), Poly::from_int(&v, 3)]],
        )
        .unwrap();
        let expect = &u(0).scale(&Rat::from_int(3)) - &u(1).pow(3);
        assert_eq!(m.det().unwrap(), expect);
    }

    #[test]
    fn zero_pivot_is_swapped() {
        let v = ring();
        let z = Poly::zero(&v);
        let m = PolyMatrix::from_rows(&v, alloc::vec![alloc::vec![z.clone(), u(0)], alloc::vec![u(1), z]]).unwrap();
        assert_eq!(m.det().unwrap(), -&(&u(0) * &u(1)));
        let inv = m.to_ratfn().inverse().unwrap();
        assert_eq!(inv[(0, 1)], RatFn::new(Poly::one(&v), u(1)).unwrap());
    }

    #[test]
    fn singular_matrix() {
        let v = ring();
        let m = PolyMatrix::from_rows(&v, alloc::vec![alloc::vec![u(0), u(1)], alloc::vec![u(0), u(1)]]).unwrap();
        assert!(m.det().unwrap().is_zero());
        assert!(matches!(m.to_ratfn().inverse(), Err(Error::Singular)));
    }

    #[test]
    fn rational_inverse_round_trip() {
        let v = ring();
        let a = RatFn::new(Poly::one(&v), u(0)).unwrap();
        let b = RatFn::from_poly(u(1));
        let c = RatFn::from_poly(&u(0) + &u(1));
        let d = RatFn::new(u(1), &u(0) - &u(1)).unwrap();
        let m = RatMatrix::from_rows(&v, alloc::vec![alloc::vec![a, b], alloc::vec![c, d]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.mul(&m), RatMatrix::identity(&v, 2));
    }
}
