//! Enumeration of the non-degenerate arrays of a component `Arr(Q)(a)`.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::array::ArrayPQ;
use crate::completion::{ClassId, TruncatedCompletion};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub array: ArrayPQ,
    pub admissible: bool,
}

/// All non-degenerate arrays with a fixed total product, grouped by bidegree.
#[derive(Debug, Clone)]
pub struct CellSet {
    pub component: ClassId,
    pub cells: BTreeMap<(usize, usize), Vec<Cell>>,
}

impl CellSet {
    pub fn len(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.values().flatten()
    }

    /// Number of cells in each bidegree.
    pub fn counts(&self) -> BTreeMap<(usize, usize), usize> {
        self.cells.iter().map(|(&k, v)| (k, v.len())).collect()
    }

    pub fn count(&self, p: usize, q: usize) -> usize {
        self.cells.get(&(p, q)).map_or(0, Vec::len)
    }

    pub fn contains(&self, array: &ArrayPQ) -> bool {
        self.cells
            .get(&array.bidegree())
            .is_some_and(|v| v.binary_search_by(|c| c.array.cmp(array)).is_ok())
    }

    /// Every face of every cell is non-degenerate and listed.
    pub fn check_closure(&self, tc: &TruncatedCompletion) -> Result<()> {
        for cell in self.iter() {
            for face in faces(tc, &cell.array)? {
                if !face.is_nondegenerate() || !self.contains(&face) {
                    return Err(Error::ClosureViolation(cell.array.display(tc).to_string()));
                }
            }
        }
        Ok(())
    }
}

/// All horizontal then all vertical faces.
pub(crate) fn faces(tc: &TruncatedCompletion, ua: &ArrayPQ) -> Result<Vec<ArrayPQ>> {
    let (p, q) = ua.bidegree();
    let mut out = Vec::new();
    if p >= 1 {
        for i in 0..=p {
            out.push(ua.face_h(tc, i)?);
        }
    }
    if q >= 1 {
        for j in 0..=q {
            out.push(ua.face_v(tc, j)?);
        }
    }
    Ok(out)
}

/// Enumerates every non-degenerate array over `tc` whose total product is `a`.
///
/// Entries are chosen position by position in product order, tracking the
/// running product and the remaining norm budget `h(a) - Σ h(entry)`.
pub fn enumerate_cells(tc: &TruncatedCompletion, a: ClassId) -> Result<CellSet> {
    let base = tc.base();
    if !base.is_augmented() {
        return Err(Error::NotAugmented(format!("{base:?}")));
    }
    let n = tc.norm(a);
    if n > tc.bound() {
        return Err(Error::TruncationOverflow {
            needed: n,
            bound: tc.bound(),
        });
    }
    let labels: Vec<ClassId> = tc
        .classes()
        .iter()
        .filter(|c| c.norm >= 1 && c.norm <= n)
        .map(|c| c.id)
        .collect();

    let blocks: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect();
    let found: Vec<((usize, usize), Vec<Cell>)> = blocks
        .into_par_iter()
        .map(|(p, q)| {
            let mut search = Search {
                tc,
                target: a,
                labels: &labels,
                current: ArrayPQ::units(tc, p, q),
                out: Vec::new(),
            };
            search.run(0, tc.unit(), n)?;
            let mut cells: Vec<Cell> = search
                .out
                .into_iter()
                .map(|array| Cell {
                    admissible: array.is_admissible(tc),
                    array,
                })
                .collect();
            cells.sort_by(|x, y| x.array.cmp(&y.array));
            Ok(((p, q), cells))
        })
        .collect::<Result<_>>()?;

    let cells = found.into_iter().filter(|(_, v)| !v.is_empty()).collect();
    let set = CellSet {
        component: a,
        cells,
    };
    debug_assert_eq!(
        set.iter().map(|c| &c.array).collect::<HashSet<_>>().len(),
        set.len()
    );
    Ok(set)
}

struct Search<'a> {
    tc: &'a TruncatedCompletion,
    target: ClassId,
    labels: &'a [ClassId],
    current: ArrayPQ,
    out: Vec<ArrayPQ>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, prefix: ClassId, budget: usize) -> Result<()> {
        let rows = self.current.rows();
        let total = self.current.columns() * rows;
        if pos == total {
            if prefix == self.target && self.current.is_nondegenerate() {
                self.out.push(self.current.clone());
            }
            return Ok(());
        }
        // interior lines still needing an entry cannot outnumber the budget
        if self.uncovered_after(pos) > budget {
            return Ok(());
        }
        self.run(pos + 1, prefix, budget)?;
        let (i, j) = (pos / rows, pos % rows);
        for &label in self.labels {
            let norm = self.tc.norm(label);
            if norm > budget {
                continue;
            }
            let next = self.tc.product(prefix, label)?;
            self.current.set(i, j, label);
            self.run(pos + 1, next, budget - norm)?;
        }
        self.current.set(i, j, self.tc.unit());
        Ok(())
    }

    /// Lower bound on the number of further non-unit entries needed to make
    /// every interior column and row non-empty, given positions `< pos` fixed.
    fn uncovered_after(&self, pos: usize) -> usize {
        let ua = &self.current;
        let (p, q) = ua.bidegree();
        let col_now = pos / ua.rows();
        let empty_col = |i: usize| ua.column(i).iter().all(|c| c.0 == 0);
        if (1..=p.min(col_now.saturating_sub(1))).any(empty_col) {
            return usize::MAX;
        }
        let cols_missing = (col_now.max(1)..=p).filter(|&i| empty_col(i)).count();
        let rows_missing = (1..=q)
            .filter(|&j| (0..ua.columns()).all(|i| ua.get(i, j).0 == 0))
            .count();
        cols_missing.max(rows_missing)
    }
}
