//! Exact integer and rational linear algebra: determinants, Smith forms,
//! and the mod-p and p-adic normal forms used by the singular determinant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Deref, Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numtheory::{
    check_odd_prime, factorize, mod_inverse, ord_p_int, ord_p_unchecked, Valuation,
};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::SizeMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds from small integers; panics on ragged input (test and literal use).
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let big = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_big_rows(big).expect("ragged matrix literal")
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

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `T * self * T^T`.
    pub fn congruence(&self, t: &IntMatrix) -> IntMatrix {
        t.mul(self).mul(&t.transpose())
    }

    pub fn block_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn leading_block(&self, k: usize) -> IntMatrix {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    /// Matrix text format: the size on the first line, then one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.rows)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the matrix text format: first line `n`, then `n` rows of `n` integers.
/// Lines starting with `#` are ignored.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix text".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad size line: {e}")))?;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("trailing line {extra:?}")));
    }
    if n == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    IntMatrix::from_big_rows(rows)
}

/// Square symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix(IntMatrix);

impl SymMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        if let Some((i, j)) = m.first_asymmetry() {
            return Err(Error::NotSymmetric(i, j));
        }
        Ok(SymMatrix(m))
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_matrix(text)?)
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix(IntMatrix::zeros(n, n))
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn has_even_diagonal(&self) -> bool {
        self.first_odd_diagonal().is_none()
    }

    pub fn first_odd_diagonal(&self) -> Option<usize> {
        (0..self.size()).find(|&i| self.0[(i, i)].is_odd())
    }

    pub fn congruence(&self, t: &Unimodular) -> SymMatrix {
        SymMatrix(self.0.congruence(t.matrix()))
    }

    pub fn block_sum(&self, other: &SymMatrix) -> SymMatrix {
        SymMatrix(self.0.block_sum(&other.0))
    }

    pub fn det(&self) -> BigInt {
        det_exact(&self.0)
    }
}

impl Deref for SymMatrix {
    type Target = IntMatrix;
    fn deref(&self) -> &IntMatrix {
        &self.0
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Integer matrix with determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unimodular(IntMatrix);

impl Unimodular {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        if det_exact(&m).abs() != BigInt::one() {
            return Err(Error::Unsupported("transform is not unimodular".into()));
        }
        Ok(Unimodular(m))
    }

    pub fn identity(n: usize) -> Self {
        Unimodular(IntMatrix::identity(n))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn det(&self) -> BigInt {
        det_exact(&self.0)
    }

    pub fn inverse(&self) -> Unimodular {
        let inv = self
            .0
            .to_rational()
            .inverse()
            .expect("unimodular matrices are invertible");
        Unimodular(inv.to_integer().expect("inverse of unimodular is integral"))
    }
}

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::SizeMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
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

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// `S * self * S^T` for an integer `S`.
    pub fn congruence_int(&self, s: &IntMatrix) -> RatMatrix {
        let sr = s.to_rational();
        sr.mul(self).mul(&sr.transpose())
    }

    /// Determinant by Gaussian elimination over Q.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for j in col..n {
                    let v = &f * &a[(col, j)];
                    a[(r, j)] -= v;
                }
            }
        }
        det
    }

    /// Exact inverse, `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            inv[(i, i)] = BigRational::one();
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let va = &f * &a[(col, j)];
                    a[(r, j)] -= va;
                    let vi = &f * &inv[(col, j)];
                    inv[(r, j)] -= vi;
                }
            }
        }
        Some(inv)
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_exact(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

/// Rank over F_p (any prime p, including 2).
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let (r, c) = (m.rows, m.cols);
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            (0..c)
                .map(|j| m[(i, j)].mod_floor(&pb).to_u64().unwrap_or(0))
                .collect()
        })
        .collect();
    let inv = |x: u64| -> u64 { modpow_u64(x, p - 2, p) };
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let pi = if p == 2 { 1 } else { inv(a[rank][col]) };
        for i in 0..r {
            if i != rank && a[i][col] != 0 {
                let f = (a[i][col] as u128 * pi as u128 % p as u128) as u64;
                for j in col..c {
                    let sub = (f as u128 * a[rank][j] as u128 % p as u128) as u64;
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == r {
            break;
        }
    }
    rank
}

fn modpow_u64(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut bb = (b % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % m;
        }
        bb = bb * bb % m;
        e >>= 1;
    }
    r as u64
}

/// Number of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Sylvester inertia by symmetric elimination over Q.
pub fn inertia(m: &SymMatrix) -> Inertia {
    let n = m.size();
    let mut a = m.to_rational();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => {
                let pair = active.iter().enumerate().find_map(|(x, &i)| {
                    active[x + 1..]
                        .iter()
                        .find(|&&j| !a[(i, j)].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                // e_j += e_i makes the (j, j) entry 2 a_ij, nonzero over Q.
                for k in 0..n {
                    let v = a[(i, k)].clone();
                    a[(j, k)] += v;
                }
                for k in 0..n {
                    let v = a[(k, i)].clone();
                    a[(k, j)] += v;
                }
                j
            }
        };
        let d = a[(piv, piv)].clone();
        if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        active.retain(|&x| x != piv);
        for &r in &active {
            if a[(r, piv)].is_zero() {
                continue;
            }
            let f = &a[(r, piv)] / &d;
            for k in 0..n {
                let v = &f * &a[(piv, k)];
                a[(r, k)] -= v;
            }
            for k in 0..n {
                let v = &f * &a[(k, piv)];
                a[(k, r)] -= v;
            }
        }
    }
    out
}

/// Smith normal form `left * m * right = diag` with unimodular `left`, `right`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Nonnegative diagonal entries, each dividing the next among the nonzero ones.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Smith normal form by repeated smallest-entry pivoting.
pub fn smith_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    let steps = r.min(c);
    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            a.swap_rows(t, bi);
            left.swap_rows(t, bi);
            a.swap_cols(t, bj);
            right.swap_cols(t, bj);

            let piv = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&piv);
                let nq = -q;
                a.add_row(i, t, &nq);
                left.add_row(i, t, &nq);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&piv);
                let nq = -q;
                a.add_col(j, t, &nq);
                right.add_col(j, t, &nq);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row and retry.
            let offender = (t + 1..r)
                .find(|&i| (t + 1..c).any(|j| !(&a[(i, j)] % &piv).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            for j in 0..c {
                a[(t, j)] = -&a[(t, j)];
            }
            for j in 0..r {
                left[(t, j)] = -&left[(t, j)];
            }
        }
    }
    let diagonal = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}

/// Invariant-factor description of `coker M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelDecomposition {
    /// Size of the presenting matrix (number of generators).
    pub size: usize,
    /// Nonnegative invariant factors (length `size`, zeros for free summands).
    pub invariant_factors: Vec<BigInt>,
    /// For each prime dividing the torsion order: ascending exponents, one
    /// per generator, zeros included.
    pub prime_parts: BTreeMap<u64, Vec<u32>>,
    pub free_rank: usize,
    /// Order of the group, or zero when it is infinite.
    pub order_or_zero: BigInt,
}

impl CokernelDecomposition {
    /// Ascending exponents of the p-primary part, padded with zeros.
    pub fn exponents(&self, p: u64) -> Vec<u32> {
        self.prime_parts
            .get(&p)
            .cloned()
            .unwrap_or_else(|| vec![0; self.size])
    }

    /// Nontrivial invariant factors (those other than 1).
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|x| !x.is_one())
            .cloned()
            .collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank == 0 && self.nontrivial_factors().len() <= 1
    }

    /// Number of generators of the p-primary part.
    pub fn p_rank(&self, p: u64) -> usize {
        self.exponents(p).iter().filter(|&&k| k > 0).count() + self.free_rank
    }
}

/// Cokernel of a square integer matrix through its Smith normal form.
pub fn smith_cokernel(m: &IntMatrix) -> CokernelDecomposition {
    let snf = smith_form(m);
    let size = m.rows;
    let mut factors = snf.diagonal.clone();
    factors.resize(size, BigInt::zero());
    let free_rank = factors.iter().filter(|x| x.is_zero()).count();
    let mut prime_parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for f in factors.iter().filter(|x| !x.is_zero()) {
        for (p, _) in factorize(&f.magnitude().clone()) {
            prime_parts.entry(p).or_insert_with(|| vec![0; size]);
        }
    }
    for (&p, exps) in prime_parts.iter_mut() {
        for (slot, f) in factors.iter().enumerate() {
            exps[slot] = match ord_p_int(f, p) {
                Valuation::Finite(v) => v as u32,
                Valuation::Infinite => 0,
            };
        }
        exps.sort_unstable();
    }
    let order_or_zero = if free_rank > 0 {
        BigInt::zero()
    } else {
        factors.iter().product()
    };
    CokernelDecomposition {
        size,
        invariant_factors: factors,
        prime_parts,
        free_rank,
        order_or_zero,
    }
}

/// Pivot selection for mod-p reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Always the lowest admissible index.
    LowestIndex,
    /// Uniformly random admissible pivot from a seeded generator.
    Seeded(u64),
}

/// Result of reducing a symmetric matrix modulo p.
#[derive(Debug, Clone)]
pub struct ModPReduction {
    pub transform: Unimodular,
    /// `T M T^T`, congruent mod p to `block ⊕ 0`.
    pub reduced: SymMatrix,
    /// Leading nondegenerate block; determinant prime to p (1 when empty).
    pub block: SymMatrix,
    /// Corank of the matrix over F_p.
    pub d_p: usize,
}

/// Symmetric elimination over F_p lifted to integer unimodular moves.
pub fn mod_p_block_reduce(m: &SymMatrix, p: u64) -> Result<ModPReduction> {
    mod_p_block_reduce_with(m, p, PivotRule::LowestIndex)
}

pub fn mod_p_block_reduce_with(m: &SymMatrix, p: u64, rule: PivotRule) -> Result<ModPReduction> {
    check_odd_prime(p)?;
    let n = m.size();
    let pb = BigInt::from(p);
    let mut a = m.matrix().clone();
    let mut t = IntMatrix::identity(n);
    let mut rng = match rule {
        PivotRule::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        PivotRule::LowestIndex => None,
    };
    let nonzero = |x: &BigInt| !(x % &pb).is_zero();

    let mut k = 0;
    while k < n {
        let diag: Vec<usize> = (k..n).filter(|&i| nonzero(&a[(i, i)])).collect();
        let piv = if !diag.is_empty() {
            pick(&diag, &mut rng)
        } else {
            let pairs: Vec<(usize, usize)> = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| nonzero(&a[(i, j)]))
                .collect();
            if pairs.is_empty() {
                break;
            }
            let (i, j) = pick(&pairs, &mut rng);
            // e_j += e_i: the new (j, j) entry is 2 a_ij mod p, a unit since p is odd.
            let one = BigInt::one();
            a.add_row(j, i, &one);
            a.add_col(j, i, &one);
            t.add_row(j, i, &one);
            j
        };
        a.swap_rows(k, piv);
        a.swap_cols(k, piv);
        t.swap_rows(k, piv);
        let inv = mod_inverse(&a[(k, k)], &pb);
        for r in k + 1..n {
            let c = (&a[(r, k)] * &inv).mod_floor(&pb);
            if c.is_zero() {
                continue;
            }
            let nc = -c;
            a.add_row(r, k, &nc);
            a.add_col(r, k, &nc);
            t.add_row(r, k, &nc);
        }
        k += 1;
    }
    let block = SymMatrix(a.leading_block(k));
    Ok(ModPReduction {
        transform: Unimodular(t),
        reduced: SymMatrix(a),
        block,
        d_p: n - k,
    })
}

/// Random unimodular matrix from `steps` elementary moves (shears with
/// coefficients in `[-2, 2]`, swaps and sign flips).
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, steps: usize, rng: &mut R) -> Unimodular {
    let mut t = IntMatrix::identity(n);
    if n == 0 {
        return Unimodular(t);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..6) {
            0 if i != j => t.swap_rows(i, j),
            1 => {
                for k in 0..n {
                    t[(i, k)] = -&t[(i, k)];
                }
            }
            _ if i != j => {
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                t.add_row(i, j, &c);
            }
            _ => {}
        }
    }
    Unimodular(t)
}

/// Random symmetric matrix with off-diagonal entries in `[-bound, bound]`.
/// Diagonal entries are drawn from the same range, doubled when
/// `even_diagonal` is set.
pub fn random_symmetric<R: Rng + ?Sized>(
    n: usize,
    bound: i64,
    even_diagonal: bool,
    rng: &mut R,
) -> SymMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        let d = rng.gen_range(-bound..=bound);
        m[(i, i)] = BigInt::from(if even_diagonal { 2 * d } else { d });
        for j in 0..i {
            let x = BigInt::from(rng.gen_range(-bound..=bound));
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    SymMatrix(m)
}

fn pick<T: Copy>(items: &[T], rng: &mut Option<ChaCha8Rng>) -> T {
    match rng {
        Some(r) => *items.choose(r).expect("nonempty candidates"),
        None => items[0],
    }
}

/// Integer `c` with `ord_p(x - c) >= k`, for p-integral `x`.
fn p_adic_truncation(x: &BigRational, p: u64, k: i64) -> BigInt {
    if k <= 0 {
        return BigInt::zero();
    }
    let modulus = BigInt::from(p).pow(k as u32);
    let inv = mod_inverse(x.denom(), &modulus);
    (x.numer() * inv).mod_floor(&modulus)
}

/// Unimodular `S` such that `N' = S N S^T` has nonincreasing diagonal
/// valuations, off-diagonal valuations strictly above both diagonal ones,
/// and off-diagonal valuations at least `rho`.
pub fn rational_normalize(n: &RatMatrix, p: u64, rho: i64) -> Result<Unimodular> {
    check_odd_prime(p)?;
    if !n.is_symmetric() {
        return Err(Error::NotSymmetric(0, 0));
    }
    let size = n.rows;
    let det = n.det();
    let Valuation::Finite(det_ord) = ord_p_unchecked(&det, p) else {
        return Err(Error::Singular);
    };
    let floor = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter_map(|(i, j)| ord_p_unchecked(&n[(i, j)], p).finite())
        .min()
        .unwrap_or(0);
    // Every final diagonal valuation is at least `floor` and they sum to the
    // valuation of the determinant, which caps each of them.
    let cap = det_ord - (size as i64 - 1) * floor + 1;

    let mut a = n.clone();
    let mut s = IntMatrix::identity(size);
    for m in (1..=size).rev() {
        let last = m - 1;
        let ord = |a: &RatMatrix, i: usize, j: usize| ord_p_unchecked(&a[(i, j)], p);
        let omega = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| ord(&a, i, j))
            .min()
            .expect("nonempty block");
        let diag = (0..m).find(|&i| ord(&a, i, i) == omega);
        let piv = match diag {
            Some(i) => i,
            None => {
                let (i, j) = (0..m)
                    .flat_map(|i| (0..m).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && ord(&a, i, j) == omega)
                    .expect("minimum attained off the diagonal");
                rat_add_basis(&mut a, &mut s, j, i, &BigInt::one());
                j
            }
        };
        rat_swap_basis(&mut a, &mut s, piv, last);
        let Valuation::Finite(w) = omega else {
            return Err(Error::Singular);
        };
        let target = rho.max(w + 1).max(cap);
        for j in 0..last {
            if ord(&a, j, last) >= Valuation::Finite(target) {
                continue;
            }
            let x = &a[(j, last)] / &a[(last, last)];
            let c = p_adic_truncation(&x, p, target - w);
            rat_add_basis(&mut a, &mut s, j, last, &(-c));
        }
    }
    Ok(Unimodular(s))
}

fn rat_swap_basis(a: &mut RatMatrix, s: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows;
    for k in 0..n {
        a.data.swap(i * n + k, j * n + k);
    }
    for k in 0..n {
        a.data.swap(k * n + i, k * n + j);
    }
    s.swap_rows(i, j);
}

/// Basis change `e_dst += c e_src`.
fn rat_add_basis(a: &mut RatMatrix, s: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let n = a.rows;
    let cr = BigRational::from_integer(c.clone());
    for k in 0..n {
        let v = &cr * &a[(src, k)];
        a[(dst, k)] += v;
    }
    for k in 0..n {
        let v = &cr * &a[(k, src)];
        a[(k, dst)] += v;
    }
    s.add_row(dst, src, c);
}

/// Unimodular `T` such that `(T M T^T)^{-1}` has off-diagonal valuations
/// `>= 0` and i-th diagonal valuation `-k_i`, with `k_i` the ascending
/// p-exponents of `coker M`.
pub fn inverse_ord_normalize(m: &SymMatrix, p: u64) -> Result<Unimodular> {
    check_odd_prime(p)?;
    let inv = m.to_rational().inverse().ok_or(Error::Singular)?;
    let s = rational_normalize(&inv, p, 0)?;
    let t = s.inverse().0.transpose();
    Ok(Unimodular(t))
}

/// Both sides of the general Jacobi identity
/// `det M[I;J] = (-1)^(ΣI+ΣJ) det M det M^{-1}[I^c;J^c]` (0-based indices;
/// the sign agrees with the 1-based convention because |I| = |J|).
pub fn jacobi_minor_identity(
    m: &RatMatrix,
    rows: &[usize],
    cols: &[usize],
) -> Result<(BigRational, BigRational)> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch {
            expected: rows.len(),
            got: cols.len(),
        });
    }
    let n = m.rows;
    if rows.iter().chain(cols).any(|&i| i >= n) {
        return Err(Error::SizeMismatch {
            expected: n,
            got: rows.iter().chain(cols).copied().max().unwrap_or(0) + 1,
        });
    }
    let det = m.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let inv = m.inverse().ok_or(Error::Singular)?;
    let mut rs = rows.to_vec();
    rs.sort_unstable();
    let mut cs = cols.to_vec();
    cs.sort_unstable();
    let lhs = m.submatrix(&rs, &cs).det();
    let rc: Vec<usize> = (0..n).filter(|i| !rs.contains(i)).collect();
    let cc: Vec<usize> = (0..n).filter(|i| !cs.contains(i)).collect();
    let sum: usize = rs.iter().sum::<usize>() + cs.iter().sum::<usize>();
    let sign = if sum % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let rhs = sign * det * inv.submatrix(&cc, &rc).transpose().det();
    Ok((lhs, rhs))
}
