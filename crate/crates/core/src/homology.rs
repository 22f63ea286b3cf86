//! Cellular chains of `|Arr(Q)(a)|`, optionally relative to `|NAdm(Q)(a)|`.
//!
//! The total complex of the normalized bisimplicial chains has basis the
//! non-degenerate arrays of total degree `n = p + q` and differential
//!
//! ```text
//! ∂x = Σᵢ (-1)ⁱ d^h_i x + (-1)ᵖ Σⱼ (-1)ʲ d^v_j x
//! ```
//!
//! with degenerate faces (and, relatively, non-admissible faces) dropped.
//! [`diagonal_oracle`] recomputes the same homology from the diagonal
//! simplicial set as an independent check.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::array::ArrayPQ;
use crate::cells::CellSet;
use crate::completion::TruncatedCompletion;
use crate::error::{Error, Result};
use crate::linalg::{is_prime, rank_mod_p, rank_rational, smith_normal_form, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            _ => {
                let p = s
                    .strip_prefix('F')
                    .and_then(|p| p.parse::<u64>().ok())
                    .filter(|&p| is_prime(p) && p < (1 << 31))
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!("ring `{s}` (expected Z, Q or Fp)"))
                    })?;
                Ok(Ring::PrimeField(p))
            }
        }
    }
}

/// A finite chain complex with integer boundary matrices, interpreted over
/// `ring`. `boundary[n]` maps degree `n` to degree `n - 1`.
#[derive(Debug, Clone)]
pub struct ChainComplexData {
    pub ring: Ring,
    pub basis: Vec<Vec<ArrayPQ>>,
    pub boundary: Vec<IntMatrix>,
}

impl ChainComplexData {
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// `∂ₙ₋₁ ∘ ∂ₙ = 0` over the integers, for every `n`.
    pub fn is_chain_complex(&self) -> bool {
        self.boundary.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    pub fn homology(&self) -> HomologyResult {
        homology_of(self.ring, &self.dims(), &self.boundary)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors greater than one; always empty over a field.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_ring(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("R^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub ring: Ring,
    /// Indexed by degree.
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn degree(&self, n: usize) -> HomologyGroup {
        self.groups.get(n).cloned().unwrap_or(HomologyGroup {
            rank: 0,
            torsion: Vec::new(),
        })
    }

    pub fn rank(&self, n: usize) -> usize {
        self.groups.get(n).map_or(0, |g| g.rank)
    }

    /// Degrees with non-zero homology.
    pub fn support(&self) -> Vec<usize> {
        (0..self.groups.len())
            .filter(|&n| !self.groups[n].is_zero())
            .collect()
    }

    /// The unique degree carrying homology, when that group is the ring
    /// itself and every other degree vanishes.
    pub fn concentrated_degree(&self) -> Option<usize> {
        match self.support().as_slice() {
            [n] if self.groups[*n].is_ring() => Some(*n),
            _ => None,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(n, g)| {
                if n % 2 == 0 {
                    g.rank as i64
                } else {
                    -(g.rank as i64)
                }
            })
            .sum()
    }

    /// Equal group by group, ignoring trailing zero degrees.
    pub fn same_groups(&self, other: &HomologyResult) -> bool {
        let n = self.groups.len().max(other.groups.len());
        self.ring == other.ring && (0..n).all(|k| self.degree(k) == other.degree(k))
    }
}

fn matrix_rank(ring: Ring, m: &IntMatrix) -> (usize, Vec<BigInt>) {
    match ring {
        Ring::Integers => {
            let snf = smith_normal_form(m);
            let one = BigInt::from(1);
            let torsion = snf.factors.iter().filter(|d| **d != one).cloned().collect();
            (snf.rank(), torsion)
        }
        Ring::Rationals => (rank_rational(m), Vec::new()),
        Ring::PrimeField(p) => (rank_mod_p(m, p), Vec::new()),
    }
}

/// Homology of a complex with chain groups of the given ranks.
pub fn homology_of(ring: Ring, dims: &[usize], boundary: &[IntMatrix]) -> HomologyResult {
    let reduced: Vec<(usize, Vec<BigInt>)> =
        boundary.iter().map(|m| matrix_rank(ring, m)).collect();
    let groups = (0..dims.len())
        .map(|n| {
            let out_rank = reduced.get(n).map_or(0, |r| r.0);
            let (in_rank, torsion) = reduced.get(n + 1).cloned().unwrap_or_default();
            HomologyGroup {
                rank: dims[n] - out_rank - in_rank,
                torsion,
            }
        })
        .collect();
    HomologyResult { ring, groups }
}

fn empty_boundaries(dims: &[usize]) -> Vec<IntMatrix> {
    (0..dims.len())
        .map(|n| IntMatrix::zeros(if n == 0 { 0 } else { dims[n - 1] }, dims[n]))
        .collect()
}

/// Builds the normalized total complex of a cell set.
pub fn build_total_complex(
    tc: &TruncatedCompletion,
    cells: &CellSet,
    relative: bool,
    ring: Ring,
) -> Result<ChainComplexData> {
    let top = cells
        .iter()
        .map(|c| c.array.p() + c.array.q())
        .max()
        .unwrap_or(0);
    let mut basis: Vec<Vec<ArrayPQ>> = vec![Vec::new(); top + 1];
    for cell in cells.iter() {
        if relative && !cell.admissible {
            continue;
        }
        basis[cell.array.p() + cell.array.q()].push(cell.array.clone());
    }
    let index: HashMap<&ArrayPQ, usize> = basis
        .iter()
        .flat_map(|b| b.iter().enumerate().map(|(k, x)| (x, k)))
        .collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let mut boundary = empty_boundaries(&dims);

    for n in 1..=top {
        for (col, x) in basis[n].iter().enumerate() {
            let (p, q) = x.bidegree();
            let mut terms = Vec::new();
            if p >= 1 {
                for i in 0..=p {
                    terms.push((x.face_h(tc, i)?, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            if q >= 1 {
                for j in 0..=q {
                    terms.push((x.face_v(tc, j)?, if (p + j) % 2 == 0 { 1 } else { -1 }));
                }
            }
            for (face, sign) in terms {
                if !face.is_nondegenerate() || (relative && !face.is_admissible(tc)) {
                    continue;
                }
                let row = *index
                    .get(&face)
                    .ok_or_else(|| Error::ClosureViolation(x.display(tc).to_string()))?;
                boundary[n].add(row, col, sign);
            }
        }
    }
    Ok(ChainComplexData {
        ring,
        basis,
        boundary,
    })
}

/// Builds the total complex and returns its homology.
pub fn homology(
    tc: &TruncatedCompletion,
    cells: &CellSet,
    relative: bool,
    ring: Ring,
) -> Result<HomologyResult> {
    Ok(build_total_complex(tc, cells, relative, ring)?.homology())
}

/// Largest number of diagonal simplices [`diagonal_oracle`] will build.
pub const DIAGONAL_GUARD: usize = 10_000;

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = choose(n - 1, k);
    for mut s in choose(n - 1, k - 1) {
        s.push(n);
        out.push(s);
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Degenerates `x` to bidegree `(n, n)` keeping its interior columns at the
/// 1-based slots `cols` and its interior rows at `rows`.
fn spread(x: &ArrayPQ, n: usize, cols: &[usize], rows: &[usize]) -> ArrayPQ {
    let mut y = x.clone();
    for slot in 1..=n {
        if !cols.contains(&slot) {
            y = y.degeneracy_h(slot - 1);
        }
    }
    for slot in 1..=n {
        if !rows.contains(&slot) {
            y = y.degeneracy_v(slot - 1);
        }
    }
    y
}

/// Degenerate in the diagonal: some `k` has both column `k` and row `k` empty.
fn diagonal_degenerate(y: &ArrayPQ) -> bool {
    let n = y.p();
    (1..=n).any(|k| {
        y.column(k).iter().all(|c| c.0 == 0) && (0..y.columns()).all(|i| y.get(i, k).0 == 0)
    })
}

/// Homology of the normalized chains of the diagonal simplicial set
/// `n ↦ Arr_{n,n}(Q)(a)` with faces `d_k = d^h_k ∘ d^v_k`.
pub fn diagonal_oracle(
    tc: &TruncatedCompletion,
    cells: &CellSet,
    relative: bool,
    ring: Ring,
) -> Result<HomologyResult> {
    let kept: Vec<&ArrayPQ> = cells
        .iter()
        .filter(|c| !relative || c.admissible)
        .map(|c| &c.array)
        .collect();

    let mut count = 0usize;
    for x in &kept {
        let (p, q) = x.bidegree();
        for n in p.max(q)..=p + q {
            // slots covered by columns and rows together: q of the rows must
            // include the n - p slots no column occupies
            count = count.saturating_add(binomial(n, p).saturating_mul(binomial(p, p + q - n)));
        }
    }
    if count > DIAGONAL_GUARD {
        return Err(Error::SizeGuardExceeded {
            count,
            limit: DIAGONAL_GUARD,
        });
    }

    let top = kept.iter().map(|x| x.p() + x.q()).max().unwrap_or(0);
    let mut basis: Vec<Vec<ArrayPQ>> = vec![Vec::new(); top + 1];
    for x in &kept {
        let (p, q) = x.bidegree();
        for (n, level) in basis.iter_mut().enumerate().take(p + q + 1).skip(p.max(q)) {
            for cols in choose(n, p) {
                for rows in choose(n, q) {
                    let covered = (1..=n).all(|s| cols.contains(&s) || rows.contains(&s));
                    if covered {
                        level.push(spread(x, n, &cols, &rows));
                    }
                }
            }
        }
    }
    for b in &mut basis {
        b.sort();
    }
    debug_assert!(basis.iter().flatten().all(|y| !diagonal_degenerate(y)));

    let index: HashMap<&ArrayPQ, usize> = basis
        .iter()
        .flat_map(|b| b.iter().enumerate().map(|(k, x)| (x, k)))
        .collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let mut boundary = empty_boundaries(&dims);
    for n in 1..=top {
        for (col, y) in basis[n].iter().enumerate() {
            for k in 0..=n {
                let face = y.face_v(tc, k)?.face_h(tc, k)?;
                if diagonal_degenerate(&face) || (relative && !face.is_admissible(tc)) {
                    continue;
                }
                let row = *index
                    .get(&face)
                    .ok_or_else(|| Error::ClosureViolation(y.display(tc).to_string()))?;
                boundary[n].add(row, col, if k % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    Ok(homology_of(ring, &dims, &boundary))
}
