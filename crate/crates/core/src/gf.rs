//! Dense linear algebra over a prime field `F_p`.
//!
//! Vectors are rows and matrices act on the right (`v * M`). Elimination
//! always pivots on the first nonzero entry, so echelon forms are
//! reproducible.

use std::fmt;

use crate::error::{Error, Result};

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "zero has no inverse");
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `a * x + y`, in place on `y`.
fn axpy(a: u32, x: &[u32], y: &mut [u32], p: u32) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = add_mod(*yi, mul_mod(a, xi, p), p);
    }
}

/// Reduces `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
fn rref(rows: &mut Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = neg_mod(row[c], p);
                axpy(f, &pivot_row, row, p);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl GfMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        GfMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Entries are reduced mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| x % p));
        }
        Ok(GfMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// A square diagonal matrix.
    pub fn diagonal(p: u32, entries: &[u32]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(p, n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e % p;
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.p, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let p = self.p;
        let mut out = Self::zero(p, self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k);
                axpy(a, other.row(k), out_row, p);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        GfMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        GfMatrix {
            data: self.data.iter().map(|&a| neg_mod(a, p)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, a: u32) -> Self {
        let p = self.p;
        GfMatrix {
            data: self.data.iter().map(|&x| mul_mod(x, a, p)).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Self {
        Self::identity(self.p, self.rows).sub(self)
    }

    /// `v * self`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            axpy(a, self.row(k), &mut out, self.p);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref(&mut rows, self.cols, self.p).len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<u32>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| u32::from(c == r)));
                row
            })
            .collect();
        let pivots = rref(&mut rows, 2 * n, self.p);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let inv: Vec<Vec<u32>> = rows.iter().map(|r| r[n..].to_vec()).collect();
        Some(GfMatrix::from_rows(self.p, &inv).unwrap())
    }

    /// Block-diagonal sum of `copies` copies of `self`.
    pub fn block_diagonal(&self, copies: usize) -> Self {
        let mut out = Self::zero(self.p, self.rows * copies, self.cols * copies);
        for b in 0..copies {
            for r in 0..self.rows {
                for c in 0..self.cols {
                    out.set(b * self.rows + r, b * self.cols + c, self.get(r, c));
                }
            }
        }
        out
    }

    /// Stacks the rows of `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        GfMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.p, self.to_rows())
    }
}

/// A subspace of `F_p^n`, kept as a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfSubspace {
    p: u32,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl GfSubspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        GfSubspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self::span(p, ambient, GfMatrix::identity(p, ambient).to_rows())
    }

    pub fn span(p: u32, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        let mut rows: Vec<Vec<u32>> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), ambient, "vector length mismatch");
                v.into_iter().map(|x| x % p).collect()
            })
            .collect();
        let pivots = rref(&mut rows, ambient, p);
        GfSubspace {
            p,
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the span along the pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut r: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            if r[c] != 0 {
                let f = neg_mod(r[c], self.p);
                axpy(f, b, &mut r, self.p);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &GfSubspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &GfSubspace) -> GfSubspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        GfSubspace::span(self.p, self.ambient, vs)
    }

    /// Whether `v * m` stays inside the subspace for every basis vector.
    pub fn is_invariant(&self, m: &GfMatrix) -> bool {
        self.basis.iter().all(|b| self.contains(&m.apply(b)))
    }

    /// Coordinates of `v` (assumed a member) in the echelon basis.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c] % self.p).collect()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }
}

impl fmt::Debug for GfSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}> in F{}^{}", self.basis, self.p, self.ambient)
    }
}

pub fn rank(m: &GfMatrix) -> usize {
    m.rank()
}

/// Left kernel `{v : v * m = 0}`.
pub fn kernel(m: &GfMatrix) -> GfSubspace {
    let (n, k, p) = (m.nrows(), m.ncols(), m.prime());
    // Row-reduce [m | I]; rows whose m-part vanishes carry kernel vectors.
    let mut rows: Vec<Vec<u32>> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.extend((0..n).map(|c| u32::from(c == r)));
            row
        })
        .collect();
    let pivots = rref(&mut rows, k + n, p);
    let vectors: Vec<Vec<u32>> = rows
        .iter()
        .zip(&pivots)
        .filter(|(_, &c)| c >= k)
        .map(|(r, _)| r[k..].to_vec())
        .collect();
    GfSubspace::span(p, n, vectors)
}

/// Row space `{v * m}`.
pub fn image(m: &GfMatrix) -> GfSubspace {
    GfSubspace::span(m.prime(), m.ncols(), m.to_rows())
}

/// Whether the vectors are linearly independent modulo `w`.
pub fn independent_mod(vectors: &[Vec<u32>], w: &GfSubspace) -> Result<bool> {
    for v in vectors {
        if v.len() != w.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: w.ambient_dim(),
                got: v.len(),
            });
        }
    }
    let mut all = w.basis().to_vec();
    all.extend(vectors.iter().cloned());
    let span = GfSubspace::span(w.prime(), w.ambient_dim(), all);
    Ok(span.dim() == w.dim() + vectors.len())
}

/// A solution `x` of `x * a = b` together with the left kernel of `a`.
pub fn solve_linear(a: &GfMatrix, b: &[u32]) -> Result<Option<(Vec<u32>, GfSubspace)>> {
    if b.len() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.ncols(),
            got: b.len(),
        });
    }
    let p = a.prime();
    let n = a.nrows();
    let stacked = a.vstack(&GfMatrix::from_rows(p, &[b.to_vec()]).unwrap_or_else(|_| {
        GfMatrix::zero(p, 1, 0)
    }));
    let ker = kernel(&stacked);
    // A kernel vector (c, t) with t != 0 gives x = -c / t.
    let Some(v) = ker.basis().iter().find(|v| v[n] != 0) else {
        return Ok(None);
    };
    let f = neg_mod(inv_mod(v[n], p), p);
    let x: Vec<u32> = v[..n].iter().map(|&c| mul_mod(c, f, p)).collect();
    Ok(Some((x, kernel(a))))
}

pub fn add_vec(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, p)).collect()
}

pub fn scale_vec(a: &[u32], s: u32, p: u32) -> Vec<u32> {
    a.iter().map(|&x| mul_mod(x, s, p)).collect()
}

pub fn neg_vec(a: &[u32], p: u32) -> Vec<u32> {
    a.iter().map(|&x| neg_mod(x, p)).collect()
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Decodes `index` as a base-`p` digit vector of length `n` (first coordinate least significant).
pub fn vector_from_index(mut index: u64, p: u32, n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for x in v.iter_mut() {
        *x = (index % p as u64) as u32;
        index /= p as u64;
    }
    v
}

pub fn vector_index(v: &[u32], p: u32) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * p as u64 + x as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[u32]]) -> GfMatrix {
        GfMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&GfMatrix::zero(5, 3, 3)), 0);
        assert_eq!(rank(&GfMatrix::identity(2, 4)), 4);
        assert_eq!(rank(&m(3, &[&[1, 1], &[2, 2]])), 1);
    }

    #[test]
    fn kernels() {
        let id = GfMatrix::identity(2, 2);
        assert_eq!(kernel(&id.one_minus()).dim(), 2);
        // order-3 element of GL(2,2) has no fixed vector
        let x = m(2, &[&[0, 1], &[1, 1]]);
        assert_eq!(kernel(&x.one_minus()).dim(), 0);
        assert_eq!(kernel(&GfMatrix::zero(7, 5, 5)).dim(), 5);
        let a = m(5, &[&[1, 2, 3], &[2, 4, 1]]);
        for v in kernel(&a.transpose()).basis() {
            assert!(a.transpose().apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn images() {
        let t = m(2, &[&[0, 1], &[1, 0]]);
        assert_eq!(image(&t.one_minus()).dim(), 1);
        assert_eq!(image(&GfMatrix::identity(3, 3).one_minus()).dim(), 0);
        let x = m(2, &[&[0, 1], &[1, 1]]);
        assert!(image(&x.one_minus()).is_full());
    }

    #[test]
    fn independence_mod_subspace() {
        let w = GfSubspace::span(3, 2, vec![vec![0, 1]]);
        assert!(independent_mod(&[vec![1, 0]], &w).unwrap());
        let zero = GfSubspace::zero(3, 2);
        assert!(!independent_mod(&[vec![1, 0], vec![2, 0]], &zero).unwrap());
        assert!(!independent_mod(&[vec![0, 2]], &w).unwrap());
        assert!(independent_mod(&[vec![1, 0, 0]], &w).is_err());
    }

    #[test]
    fn solving() {
        let id = GfMatrix::identity(5, 3);
        let (x, ns) = solve_linear(&id, &[1, 0, 0]).unwrap().unwrap();
        assert_eq!(x, vec![1, 0, 0]);
        assert_eq!(ns.dim(), 0);
        let z = GfMatrix::zero(5, 3, 3);
        assert!(solve_linear(&z, &[1, 0, 0]).unwrap().is_none());
        let (x, ns) = solve_linear(&z, &[0, 0, 0]).unwrap().unwrap();
        assert_eq!(x, vec![0, 0, 0]);
        assert_eq!(ns.dim(), 3);
        let a = m(7, &[&[1, 2], &[3, 4], &[5, 6]]);
        let (x, _) = solve_linear(&a, &[1, 1]).unwrap().unwrap();
        assert_eq!(a.apply(&x), vec![1, 1]);
        assert!(solve_linear(&a, &[1]).is_err());
    }

    #[test]
    fn inverses() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(5, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn index_roundtrip() {
        for i in 0..27 {
            assert_eq!(vector_index(&vector_from_index(i, 3, 3), 3), i);
        }
    }
}
