//! Exact integer matrices: Smith normal form and ranks over ℚ and 𝔽ₚ.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }
}

/// Diagonal of the Smith normal form: the non-zero invariant factors
/// `d₁ | d₂ | …`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub factors: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    // unit pivots first, sparsely; whatever is left has no ±1 entry
    match eliminate_units(&IntArith, sparse_rows(m, Some)) {
        Some((ones, rest)) => {
            let mut factors = vec![BigInt::one(); ones];
            factors.extend(dense_snf(densify(&rest, BigInt::from)).factors);
            Snf { factors }
        }
        None => dense_snf(
            (0..m.rows)
                .map(|r| (0..m.cols).map(|c| BigInt::from(m.get(r, c))).collect())
                .collect(),
        ),
    }
}

fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Snf {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // pivot: smallest non-zero absolute value in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| a[r1][c1].abs().cmp(&a[r2][c2].abs()))
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(r);
                for (x, v) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * v;
                }
                if !a[r][t].is_zero() {
                    a.swap(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[c] -= v;
                }
                if !a[t][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the rest of the block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(&a[r][c] % &a[t][t]).is_zero());
            match bad {
                Some((r, _)) => {
                    let (head, tail) = a.split_at_mut(r);
                    for (x, v) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                        *x += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Snf { factors: diag }
}

/// Rank over ℚ by Gaussian elimination on exact rationals.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let rows = sparse_rows(m, |x| Some(BigRational::from_integer(BigInt::from(x))));
    eliminate_units(&RationalArith, rows).map_or(0, |(r, _)| r)
}

/// Rank over 𝔽ₚ.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let reduce = |x: i64| Some(x.rem_euclid(p as i64) as u64).filter(|&v| v != 0);
    eliminate_units(&ModArith(p), sparse_rows(m, reduce)).map_or(0, |(r, _)| r)
}

/// Entry arithmetic for [`eliminate_units`]. `sub_mul` returns `None` on
/// overflow.
trait Arith {
    type T: Clone;
    fn is_unit(&self, x: &Self::T) -> bool;
    fn zero(&self) -> Self::T;
    fn is_zero(&self, x: &Self::T) -> bool;
    /// `x / pivot` for a unit pivot.
    fn quot(&self, x: &Self::T, pivot: &Self::T) -> Self::T;
    /// `a - f * b`.
    fn sub_mul(&self, a: &Self::T, f: &Self::T, b: &Self::T) -> Option<Self::T>;
}

struct IntArith;

impl Arith for IntArith {
    type T = i64;
    fn is_unit(&self, x: &i64) -> bool {
        x.abs() == 1
    }
    fn zero(&self) -> i64 {
        0
    }
    fn is_zero(&self, x: &i64) -> bool {
        *x == 0
    }
    fn quot(&self, x: &i64, pivot: &i64) -> i64 {
        x * pivot
    }
    fn sub_mul(&self, a: &i64, f: &i64, b: &i64) -> Option<i64> {
        a.checked_sub(f.checked_mul(*b)?)
    }
}

struct RationalArith;

impl Arith for RationalArith {
    type T = BigRational;
    fn is_unit(&self, x: &BigRational) -> bool {
        !x.is_zero()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn quot(&self, x: &BigRational, pivot: &BigRational) -> BigRational {
        x / pivot
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> Option<BigRational> {
        Some(a - f * b)
    }
}

struct ModArith(u64);

impl Arith for ModArith {
    type T = u64;
    fn is_unit(&self, x: &u64) -> bool {
        *x != 0
    }
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn quot(&self, x: &u64, pivot: &u64) -> u64 {
        x * mod_pow(*pivot, self.0 - 2, self.0) % self.0
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> Option<u64> {
        let p = self.0;
        Some((a + p - f * b % p) % p)
    }
}

type SparseRow<T> = BTreeMap<usize, T>;

fn sparse_rows<T>(m: &IntMatrix, conv: impl Fn(i64) -> Option<T>) -> Vec<SparseRow<T>> {
    (0..m.rows)
        .map(|r| {
            (0..m.cols)
                .filter(|&c| m.get(r, c) != 0)
                .filter_map(|c| conv(m.get(r, c)).map(|v| (c, v)))
                .collect()
        })
        .collect()
}

fn densify<T: Clone>(rows: &[SparseRow<T>], conv: impl Fn(T) -> BigInt) -> Vec<Vec<BigInt>> {
    let cols: BTreeSet<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
    rows.iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            cols.iter()
                .map(|c| r.get(c).cloned().map_or_else(BigInt::zero, &conv))
                .collect()
        })
        .collect()
}

/// Sparse elimination on unit pivots, chosen to limit fill-in. Returns the
/// number of pivots and the remaining rows (which contain no unit), or
/// `None` on arithmetic overflow.
fn eliminate_units<A: Arith>(
    arith: &A,
    mut rows: Vec<SparseRow<A::T>>,
) -> Option<(usize, Vec<SparseRow<A::T>>)> {
    let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows.entry(c).or_default().insert(r);
        }
    }
    let mut pivots = 0;
    loop {
        // Markowitz cost (row length - 1) * (column length - 1)
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (&c, x) in row {
                if !arith.is_unit(x) {
                    continue;
                }
                let cost = (row.len() - 1) * (col_rows[&c].len() - 1);
                if best.is_none_or(|b| cost < b.0) {
                    best = Some((cost, r, c));
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else {
            return Some((pivots, rows));
        };
        let pivot_row = std::mem::take(&mut rows[pr]);
        for &c in pivot_row.keys() {
            col_rows.get_mut(&c).unwrap().remove(&pr);
        }
        let pivot = pivot_row[&pc].clone();
        let targets: Vec<usize> = col_rows[&pc].iter().copied().collect();
        for r in targets {
            let f = arith.quot(&rows[r][&pc], &pivot);
            for (&c, y) in &pivot_row {
                let old = rows[r].get(&c);
                let new = match old {
                    Some(x) => arith.sub_mul(x, &f, y)?,
                    None => arith.sub_mul(&arith.zero(), &f, y)?,
                };
                if arith.is_zero(&new) {
                    rows[r].remove(&c);
                    col_rows.get_mut(&c).unwrap().remove(&r);
                } else {
                    if old.is_none() {
                        col_rows.get_mut(&c).unwrap().insert(r);
                    }
                    rows[r].insert(c, new);
                }
            }
        }
        col_rows.remove(&pc);
        pivots += 1;
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}
