//! Arrays: the bisimplices of `Arr(Q)`.
//!
//! An array of bidegree `(p, q)` has `p + 2` columns and `q + 2` rows of
//! entries in the truncated completion. Column `i` sits at horizontal
//! coordinate `s_i` and row `j` at vertical coordinate `t_j`, with columns
//! `0, p+1` and rows `0, q+1` on the sides of the square.
//!
//! Products are always taken column by column from left to right, and within a
//! column from bottom (`j = 0`) to top.

use std::fmt;

use crate::completion::{ClassId, TruncatedCompletion};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrayPQ {
    p: usize,
    q: usize,
    /// Column-major: entry `(i, j)` lives at `i * (q + 2) + j`.
    entries: Vec<ClassId>,
}

impl ArrayPQ {
    /// The array with all entries equal to the unit.
    pub fn units(tc: &TruncatedCompletion, p: usize, q: usize) -> Self {
        Self {
            p,
            q,
            entries: vec![tc.unit(); (p + 2) * (q + 2)],
        }
    }

    /// Builds an array from its columns, each listed bottom to top.
    pub fn from_columns(columns: Vec<Vec<ClassId>>) -> Self {
        assert!(columns.len() >= 2, "an array has at least two columns");
        let rows = columns[0].len();
        assert!(rows >= 2, "an array has at least two rows");
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        Self {
            p: columns.len() - 2,
            q: rows - 2,
            entries: columns.into_iter().flatten().collect(),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn columns(&self) -> usize {
        self.p + 2
    }

    pub fn rows(&self) -> usize {
        self.q + 2
    }

    pub fn get(&self, i: usize, j: usize) -> ClassId {
        self.entries[i * self.rows() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ClassId) {
        let rows = self.rows();
        self.entries[i * rows + j] = value;
    }

    pub fn with(mut self, i: usize, j: usize, value: ClassId) -> Self {
        self.set(i, j, value);
        self
    }

    /// Entries in product order.
    pub fn entries(&self) -> &[ClassId] {
        &self.entries
    }

    pub fn column(&self, i: usize) -> &[ClassId] {
        &self.entries[i * self.rows()..(i + 1) * self.rows()]
    }

    /// `I(ua)`: positions of non-unit entries, in product order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let rows = self.rows();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 != 0)
            .map(|(k, _)| (k / rows, k % rows))
            .collect()
    }

    fn column_empty(&self, i: usize) -> bool {
        self.column(i).iter().all(|c| c.0 == 0)
    }

    fn row_empty(&self, j: usize) -> bool {
        (0..self.columns()).all(|i| self.get(i, j).0 == 0)
    }

    /// Every interior column and every interior row holds a non-unit entry.
    pub fn is_nondegenerate(&self) -> bool {
        (1..=self.p).all(|i| !self.column_empty(i)) && (1..=self.q).all(|j| !self.row_empty(j))
    }

    /// All entries lie in `Q`, and non-unit entries avoid the boundary.
    pub fn is_admissible(&self, tc: &TruncatedCompletion) -> bool {
        let (p, q) = (self.p, self.q);
        self.entries
            .iter()
            .all(|&c| tc.in_q(c).is_some() || tc.is_unit(c))
            && self
                .support()
                .into_iter()
                .all(|(i, j)| (1..=p).contains(&i) && (1..=q).contains(&j))
    }

    /// Horizontal face: merges columns `i` and `i + 1`. The left column is
    /// conjugated by the partial products of the right one beneath each row.
    pub fn face_h(&self, tc: &TruncatedCompletion, i: usize) -> Result<Self> {
        assert!(
            self.p >= 1 && i <= self.p,
            "face_h({i}) on bidegree {:?}",
            self.bidegree()
        );
        let rows = self.rows();
        let mut entries = Vec::with_capacity((self.p + 1) * rows);
        for col in 0..i {
            entries.extend_from_slice(self.column(col));
        }
        let (left, right) = (self.column(i), self.column(i + 1));
        let mut below = tc.unit();
        for j in 0..rows {
            let merged = tc.product(tc.conj(left[j], below), right[j])?;
            entries.push(merged);
            below = tc.product(below, right[j])?;
        }
        for col in i + 2..self.columns() {
            entries.extend_from_slice(self.column(col));
        }
        Ok(Self {
            p: self.p - 1,
            q: self.q,
            entries,
        })
    }

    /// Vertical face: merges rows `j` and `j + 1`.
    pub fn face_v(&self, tc: &TruncatedCompletion, j: usize) -> Result<Self> {
        assert!(
            self.q >= 1 && j <= self.q,
            "face_v({j}) on bidegree {:?}",
            self.bidegree()
        );
        let mut entries = Vec::with_capacity(self.columns() * (self.q + 1));
        for i in 0..self.columns() {
            let col = self.column(i);
            entries.extend_from_slice(&col[..j]);
            entries.push(tc.product(col[j], col[j + 1])?);
            entries.extend_from_slice(&col[j + 2..]);
        }
        Ok(Self {
            p: self.p,
            q: self.q - 1,
            entries,
        })
    }

    /// Inserts a unit column after column `i`.
    pub fn degeneracy_h(&self, i: usize) -> Self {
        assert!(i <= self.p);
        let rows = self.rows();
        let mut entries = self.entries.clone();
        let at = (i + 1) * rows;
        entries.splice(at..at, std::iter::repeat_n(ClassId(0), rows));
        Self {
            p: self.p + 1,
            q: self.q,
            entries,
        }
    }

    /// Inserts a unit row after row `j`.
    pub fn degeneracy_v(&self, j: usize) -> Self {
        assert!(j <= self.q);
        let mut entries = Vec::with_capacity(self.columns() * (self.q + 3));
        for i in 0..self.columns() {
            let col = self.column(i);
            entries.extend_from_slice(&col[..=j]);
            entries.push(ClassId(0));
            entries.extend_from_slice(&col[j + 1..]);
        }
        Self {
            p: self.p,
            q: self.q + 1,
            entries,
        }
    }

    pub fn total_product(&self, tc: &TruncatedCompletion) -> Result<ClassId> {
        tc.product_all(self.entries.iter().copied())
    }

    /// Sum of entry norms.
    pub fn norm(&self, tc: &TruncatedCompletion) -> usize {
        self.entries.iter().map(|&c| tc.norm(c)).sum()
    }

    pub fn display<'a>(&'a self, tc: &'a TruncatedCompletion) -> ArrayDisplay<'a> {
        ArrayDisplay { array: self, tc }
    }
}

/// Renders an array as columns of canonical words: `[1 a | 1 1]`.
pub struct ArrayDisplay<'a> {
    array: &'a ArrayPQ,
    tc: &'a TruncatedCompletion,
}

impl fmt::Display for ArrayDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = (0..self.array.columns())
            .map(|i| {
                self.array
                    .column(i)
                    .iter()
                    .map(|&c| self.tc.name(c))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(
            f,
            "({},{})[{}]",
            self.array.p,
            self.array.q,
            cols.join(" | ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::complete;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn nondegeneracy_and_admissibility() {
        let tc = complete(&fixtures::free1(), 2).unwrap();
        let a = tc.parse_class("a").unwrap();
        let aa = tc.parse_class("a.a").unwrap();

        let empty = ArrayPQ::units(&tc, 0, 0);
        assert!(empty.is_nondegenerate());
        assert!(empty.is_admissible(&tc));

        let square = ArrayPQ::units(&tc, 1, 1).with(1, 1, a);
        assert!(square.is_nondegenerate());
        assert!(square.is_admissible(&tc));
        assert!(!ArrayPQ::units(&tc, 1, 1).with(1, 0, a).is_admissible(&tc));
        assert!(!ArrayPQ::units(&tc, 1, 1).with(1, 1, aa).is_admissible(&tc));

        assert!(!ArrayPQ::units(&tc, 1, 0).with(0, 0, a).is_nondegenerate());
    }

    #[test]
    fn horizontal_face_conjugates_by_the_column_below() {
        let tc = complete(&fixtures::trans3(), 2).unwrap();
        let c = |s: &str| tc.parse_class(s).unwrap();
        let ua = ArrayPQ::units(&tc, 1, 1)
            .with(1, 1, c("(12)"))
            .with(2, 0, c("(23)"));
        let face = ua.face_h(&tc, 1).unwrap();
        assert_eq!(face.bidegree(), (0, 1));
        assert_eq!(face.get(1, 1), c("(13)"));
        assert_eq!(face.get(1, 0), c("(23)"));
        assert_eq!(
            face.total_product(&tc).unwrap(),
            ua.total_product(&tc).unwrap()
        );
    }

    #[test]
    fn horizontal_face_on_free1() {
        let tc = complete(&fixtures::free1(), 1).unwrap();
        let a = tc.parse_class("a").unwrap();
        assert_eq!(
            ArrayPQ::units(&tc, 1, 0).face_h(&tc, 0).unwrap(),
            ArrayPQ::units(&tc, 0, 0)
        );
        let ua = ArrayPQ::units(&tc, 1, 0).with(1, 0, a);
        let face = ua.face_h(&tc, 1).unwrap();
        assert_eq!(face, ArrayPQ::units(&tc, 0, 0).with(1, 0, a));
        assert_eq!(face.total_product(&tc).unwrap(), a);
    }

    #[test]
    fn vertical_face_concatenates() {
        let tc = complete(&fixtures::free1(), 2).unwrap();
        let a = tc.parse_class("a").unwrap();
        let ua = ArrayPQ::units(&tc, 1, 2).with(1, 1, a).with(1, 2, a);
        let face = ua.face_v(&tc, 1).unwrap();
        assert_eq!(
            face,
            ArrayPQ::units(&tc, 1, 1).with(1, 1, tc.parse_class("a.a").unwrap())
        );
        assert_eq!(
            ArrayPQ::units(&tc, 0, 1).face_v(&tc, 0).unwrap(),
            ArrayPQ::units(&tc, 0, 0)
        );
    }

    #[test]
    fn degeneracies() {
        let tc = complete(&fixtures::free1(), 2).unwrap();
        let a = tc.parse_class("a").unwrap();
        let s = ArrayPQ::units(&tc, 0, 0).degeneracy_h(0);
        assert_eq!(s, ArrayPQ::units(&tc, 1, 0));
        assert!(!s.is_nondegenerate());
        let square = ArrayPQ::units(&tc, 1, 1).with(1, 1, a);
        for i in 0..=1 {
            let d = square.degeneracy_h(i);
            assert!(!d.is_nondegenerate());
            assert_eq!(d.face_h(&tc, i).unwrap(), square);
            assert_eq!(d.face_h(&tc, i + 1).unwrap(), square);
            let d = square.degeneracy_v(i);
            assert!(!d.is_nondegenerate());
            assert_eq!(d.face_v(&tc, i).unwrap(), square);
            assert_eq!(d.face_v(&tc, i + 1).unwrap(), square);
        }
    }

    #[test]
    fn total_product_order() {
        let tc = complete(&fixtures::trans3(), 2).unwrap();
        let c = |s: &str| tc.parse_class(s).unwrap();
        let ua = ArrayPQ::units(&tc, 2, 1)
            .with(1, 1, c("(12)"))
            .with(2, 1, c("(23)"));
        assert_eq!(ua.total_product(&tc).unwrap(), c("(12).(23)"));
        assert_eq!(
            ArrayPQ::units(&tc, 2, 1).total_product(&tc).unwrap(),
            tc.unit()
        );
    }

    fn arb_array(
        letters: usize,
        max_entries: usize,
    ) -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, usize)>)> {
        (0usize..=3, 0usize..=3).prop_flat_map(move |(p, q)| {
            let entry = (0..p + 2, 0..q + 2, 1..=letters);
            (
                Just(p),
                Just(q),
                proptest::collection::vec(entry, 0..=max_entries),
            )
        })
    }

    fn build(
        tc: &TruncatedCompletion,
        p: usize,
        q: usize,
        spots: &[(usize, usize, usize)],
    ) -> ArrayPQ {
        // later entries at the same spot are multiplied in
        let mut ua = ArrayPQ::units(tc, p, q);
        for &(i, j, letter) in spots {
            let x = tc.element(letter).unwrap();
            let v = tc.product(ua.get(i, j), x).unwrap();
            ua.set(i, j, v);
        }
        ua
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn simplicial_identities_trans3((p, q, spots) in arb_array(3, 4)) {
            let tc = complete(&fixtures::trans3(), 4).unwrap();
            let ua = build(&tc, p, q, &spots);
            let total = ua.total_product(&tc).unwrap();
            for j in 0..=p {
                if p >= 1 {
                    prop_assert_eq!(ua.face_h(&tc, j).unwrap().total_product(&tc).unwrap(), total);
                }
                for i in 0..j {
                    if p >= 2 {
                        let lhs = ua.face_h(&tc, j).unwrap().face_h(&tc, i).unwrap();
                        let rhs = ua.face_h(&tc, i).unwrap().face_h(&tc, j - 1).unwrap();
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
            if p >= 1 && q >= 1 {
                for i in 0..=p {
                    for j in 0..=q {
                        let lhs = ua.face_v(&tc, j).unwrap().face_h(&tc, i).unwrap();
                        let rhs = ua.face_h(&tc, i).unwrap().face_v(&tc, j).unwrap();
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
            for j in 0..=q {
                if q >= 1 {
                    prop_assert_eq!(ua.face_v(&tc, j).unwrap().total_product(&tc).unwrap(), total);
                }
                for i in 0..j {
                    if q >= 2 {
                        let lhs = ua.face_v(&tc, j).unwrap().face_v(&tc, i).unwrap();
                        let rhs = ua.face_v(&tc, i).unwrap().face_v(&tc, j - 1).unwrap();
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
            if ua.is_nondegenerate() && p >= 1 {
                for i in 0..=p {
                    prop_assert!(ua.face_h(&tc, i).unwrap().is_nondegenerate());
                }
            }
        }
    }
}
