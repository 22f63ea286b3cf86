//! Norm-truncated completion `ĥQ` of a locally finite PMQ.
//!
//! Elements of the completion are words over `Q₊` modulo the congruence
//! generated by two standard moves on adjacent letters:
//!
//! * merge: `(…, a, b, …) ~ (…, ab, …)` when `ab` is defined in `Q`;
//! * braid: `(…, a, b, …) ~ (…, b, a^b, …)`.
//!
//! Words are graded by `Σ h(letter)`. Only words of norm at most the bound are
//! materialized, so every class is a connected component of a finite graph.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::PairSpec;
use crate::pmq::{norms, Elem, PmqSpec};

/// A word over `Q₊`. The empty word is the unit.
pub type Word = Vec<Elem>;

/// Index of a class in a [`TruncatedCompletion`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub usize);

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HqClass {
    pub id: ClassId,
    /// Shortlex-minimal member.
    pub word: Word,
    pub norm: usize,
    /// Set iff the class contains a one-letter word.
    pub in_q: Option<Elem>,
    /// Every member word, in shortlex order.
    pub members: Vec<Word>,
}

#[derive(Debug, Clone)]
pub struct TruncatedCompletion {
    base: PmqSpec,
    bound: usize,
    norms: Vec<usize>,
    classes: Vec<HqClass>,
    lookup: HashMap<Word, ClassId>,
}

fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Builds the completion truncated at norm `bound`.
pub fn complete(spec: &PmqSpec, bound: usize) -> Result<TruncatedCompletion> {
    let h = norms(spec)?;
    let letters: Vec<Elem> = spec.nonunit().collect();

    let mut words: Vec<Word> = Vec::new();
    let mut stack: Vec<(Word, usize)> = vec![(Vec::new(), 0)];
    while let Some((w, norm)) = stack.pop() {
        for &a in &letters {
            if norm + h[a] <= bound {
                let mut next = w.clone();
                next.push(a);
                stack.push((next, norm + h[a]));
            }
        }
        words.push(w);
    }
    words.sort_by(shortlex);
    let index: HashMap<Word, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();

    let mut uf = UnionFind((0..words.len()).collect());
    for (i, w) in words.iter().enumerate() {
        for k in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[k], w[k + 1]);
            if let Some(ab) = spec.product(a, b) {
                let mut merged = Vec::with_capacity(w.len() - 1);
                merged.extend_from_slice(&w[..k]);
                if ab != spec.unit() {
                    merged.push(ab);
                }
                merged.extend_from_slice(&w[k + 2..]);
                if let Some(&j) = index.get(&merged) {
                    uf.union(i, j);
                }
            }
            let mut braided = w.clone();
            braided[k] = b;
            braided[k + 1] = spec.conj(a, b);
            if let Some(&j) = index.get(&braided) {
                uf.union(i, j);
            }
        }
    }

    // words are in shortlex order and roots are minimal indices, so the root
    // of each component is its canonical word and classes come out sorted
    let mut root_class: HashMap<usize, ClassId> = HashMap::new();
    let mut classes: Vec<HqClass> = Vec::new();
    let mut lookup = HashMap::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        let root = uf.find(i);
        let id = *root_class.entry(root).or_insert_with(|| {
            let id = ClassId(classes.len());
            classes.push(HqClass {
                id,
                word: words[root].clone(),
                norm: 0,
                in_q: None,
                members: Vec::new(),
            });
            id
        });
        let class = &mut classes[id.0];
        class.norm = class.norm.max(w.iter().map(|&a| h[a]).sum());
        if w.len() == 1 {
            if let Some(prev) = class.in_q {
                return Err(Error::CompletionNotConservative(
                    spec.symbol(prev).to_string(),
                    spec.symbol(w[0]).to_string(),
                ));
            }
            class.in_q = Some(w[0]);
        }
        class.members.push(w.clone());
        lookup.insert(w.clone(), id);
    }

    Ok(TruncatedCompletion {
        base: spec.clone(),
        bound,
        norms: h,
        classes,
        lookup,
    })
}

impl TruncatedCompletion {
    pub fn base(&self) -> &PmqSpec {
        &self.base
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `h` on the base PMQ.
    pub fn element_norms(&self) -> &[usize] {
        &self.norms
    }

    pub fn classes(&self) -> &[HqClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &HqClass {
        &self.classes[id.0]
    }

    pub fn unit(&self) -> ClassId {
        ClassId(0)
    }

    pub fn is_unit(&self, id: ClassId) -> bool {
        id.0 == 0
    }

    pub fn norm(&self, id: ClassId) -> usize {
        self.classes[id.0].norm
    }

    pub fn in_q(&self, id: ClassId) -> Option<Elem> {
        self.classes[id.0].in_q
    }

    /// Class of a word; unit letters are dropped.
    pub fn class_of(&self, word: &[Elem]) -> Result<ClassId> {
        let unit = self.base.unit();
        let w: Word = word.iter().copied().filter(|&a| a != unit).collect();
        self.lookup
            .get(&w)
            .copied()
            .ok_or_else(|| Error::TruncationOverflow {
                needed: w.iter().map(|&a| self.norms[a]).sum(),
                bound: self.bound,
            })
    }

    pub fn element(&self, a: Elem) -> Result<ClassId> {
        self.class_of(&[a])
    }

    pub fn product(&self, u: ClassId, v: ClassId) -> Result<ClassId> {
        let needed = self.norm(u) + self.norm(v);
        if needed > self.bound {
            return Err(Error::TruncationOverflow {
                needed,
                bound: self.bound,
            });
        }
        let mut w = self.classes[u.0].word.clone();
        w.extend_from_slice(&self.classes[v.0].word);
        self.class_of(&w)
    }

    /// Ordered product of a sequence of classes.
    pub fn product_all<I: IntoIterator<Item = ClassId>>(&self, items: I) -> Result<ClassId> {
        items
            .into_iter()
            .try_fold(self.unit(), |acc, x| self.product(acc, x))
    }

    /// `u^w`: each letter of `u` conjugated by the letters of `w` in turn.
    pub fn conj(&self, u: ClassId, w: ClassId) -> ClassId {
        let by = &self.classes[w.0].word;
        let word: Word = self.classes[u.0]
            .word
            .iter()
            .map(|&a| by.iter().fold(a, |x, &b| self.base.conj(x, b)))
            .collect();
        self.class_of(&word)
            .expect("conjugation preserves the norm of every letter")
    }

    pub fn decompositions(&self, u: ClassId) -> &[Word] {
        &self.classes[u.0].members
    }

    /// Ordered `e`-image of a class in the group of the pair.
    pub fn e_image(&self, pair: &PairSpec, u: ClassId) -> Elem {
        pair.group
            .product(self.classes[u.0].word.iter().map(|&a| pair.e(a)))
    }

    /// Letters joined by `.`; the empty word prints as the unit symbol.
    pub fn format_word(&self, word: &[Elem]) -> String {
        if word.is_empty() {
            return self.base.symbol(self.base.unit()).to_string();
        }
        word.iter()
            .map(|&a| self.base.symbol(a))
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn name(&self, id: ClassId) -> String {
        self.format_word(&self.classes[id.0].word)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(&self.base, text)
    }

    /// Class of a word written as in [`Self::format_word`].
    pub fn parse_class(&self, text: &str) -> Result<ClassId> {
        self.class_of(&self.parse_word(text)?)
    }
}

/// Parses letters joined by `.`. Symbols containing `.` are matched whole
/// first; an empty string or the unit symbol gives the empty word.
pub fn parse_word(spec: &PmqSpec, text: &str) -> Result<Word> {
    let unit = spec.unit();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if let Ok(a) = spec.elem(text) {
        return Ok(if a == unit { Vec::new() } else { vec![a] });
    }
    let mut word = Vec::new();
    for part in text.split('.') {
        let a = spec.elem(part)?;
        if a != unit {
            word.push(a);
        }
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::{BTreeSet, VecDeque};

    #[test]
    fn free1_truncated_at_three() {
        let tc = complete(&fixtures::free1(), 3).unwrap();
        let names: Vec<_> = tc.classes().iter().map(|c| tc.name(c.id)).collect();
        assert_eq!(names, vec!["1", "a", "a.a", "a.a.a"]);
        let norms: Vec<_> = tc.classes().iter().map(|c| c.norm).collect();
        assert_eq!(norms, vec![0, 1, 2, 3]);
        let a = tc.parse_class("a").unwrap();
        let aa = tc.parse_class("a.a").unwrap();
        assert_eq!(tc.name(tc.product(a, aa).unwrap()), "a.a.a");
        assert_eq!(tc.product(a, tc.unit()).unwrap(), a);
        assert!(matches!(
            tc.product(aa, aa),
            Err(Error::TruncationOverflow {
                needed: 4,
                bound: 3
            })
        ));
        assert_eq!(tc.conj(aa, a), aa);
        assert_eq!(tc.decompositions(aa), &[vec![1, 1]]);
        assert_eq!(tc.in_q(a), Some(1));
        assert_eq!(tc.in_q(aa), None);
    }

    #[test]
    fn triv_has_only_the_unit() {
        let tc = complete(&fixtures::triv(), 5).unwrap();
        assert_eq!(tc.classes().len(), 1);
        assert_eq!(tc.decompositions(tc.unit()), &[Vec::<Elem>::new()]);
    }

    #[test]
    fn non_locally_finite_input_is_rejected() {
        assert!(matches!(
            complete(&fixtures::z2(), 2),
            Err(Error::NormUnavailable { .. })
        ));
    }

    #[test]
    fn non_conservative_input_is_reported() {
        // violates the braid axiom: a·b = x but b·a^b = b·a = y
        let els = ["1", "a", "b", "x", "y"];
        let mut product = vec![(("a", "b"), "x"), (("b", "a"), "y")];
        let mut conj = Vec::new();
        for &s in &els {
            product.push((("1", s), s));
            product.push(((s, "1"), s));
            for &t in &els {
                conj.push(((s, t), s));
            }
        }
        let spec = PmqSpec::from_symbols(
            els.iter().map(|s| s.to_string()).collect(),
            "1",
            product,
            conj,
        )
        .unwrap();
        assert!(!crate::pmq::validate_pmq(&spec).is_valid());
        match complete(&spec, 2) {
            Err(Error::CompletionNotConservative(p, q)) => {
                assert_eq!((p.as_str(), q.as_str()), ("x", "y"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    fn s3_conj(x: &str, y: &str) -> &'static str {
        // conjugating one transposition by another swaps to the third unless equal
        let all = ["(12)", "(13)", "(23)"];
        if x == y {
            all.into_iter().find(|t| *t == x).unwrap()
        } else {
            all.into_iter().find(|t| *t != x && *t != y).unwrap()
        }
    }

    /// Orbit enumeration on two-letter words by explicit breadth-first search.
    /// No products are defined among transpositions, so only braids act.
    fn trans3_two_letter_orbits() -> usize {
        let letters = ["(12)", "(13)", "(23)"];
        let mut seen: BTreeSet<(&str, &str)> = BTreeSet::new();
        let mut orbits = 0;
        for &x in &letters {
            for &y in &letters {
                if seen.contains(&(x, y)) {
                    continue;
                }
                orbits += 1;
                let mut queue = VecDeque::from([(x, y)]);
                while let Some((a, b)) = queue.pop_front() {
                    if !seen.insert((a, b)) {
                        continue;
                    }
                    queue.push_back((b, s3_conj(a, b)));
                    // inverse braid: (a, b) came from (c, a) with c^a = b
                    let c = letters.into_iter().find(|&c| s3_conj(c, a) == b).unwrap();
                    queue.push_back((c, a));
                }
            }
        }
        orbits
    }

    #[test]
    fn trans3_truncated_at_two_matches_orbit_oracle() {
        let orbits = trans3_two_letter_orbits();
        assert_eq!(orbits, 5);
        let tc = complete(&fixtures::trans3(), 2).unwrap();
        let norm2 = tc.classes().iter().filter(|c| c.norm == 2).count();
        assert_eq!(norm2, orbits);
        assert_eq!(tc.classes().len(), 1 + 3 + orbits);
    }

    #[test]
    fn trans3_products_and_conjugation() {
        let tc = complete(&fixtures::trans3(), 2).unwrap();
        let c = |s: &str| tc.parse_class(s).unwrap();
        assert_eq!(tc.conj(c("(12)"), c("(23)")), c("(13)"));
        assert_eq!(tc.conj(c("(12)"), tc.unit()), c("(12)"));
        let sq12 = tc.product(c("(12)"), c("(12)")).unwrap();
        let sq13 = tc.product(c("(13)"), c("(13)")).unwrap();
        assert_ne!(sq12, sq13);
        assert_eq!(sq12, c("(12).(12)"));
        let mixed = c("(12).(23)");
        let members = tc.decompositions(mixed);
        assert_eq!(members.len(), 3);
        let pair = fixtures::trans3_s3();
        let images: BTreeSet<_> = members
            .iter()
            .map(|w| pair.group.product(w.iter().map(|&a| pair.e(a))))
            .collect();
        assert_eq!(images.len(), 1);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn tc() -> TruncatedCompletion {
            complete(&fixtures::trans3(), 3).unwrap()
        }

        fn conj_word(tc: &TruncatedCompletion, u: &[Elem], w: &[Elem]) -> ClassId {
            let word: Word = u
                .iter()
                .map(|&a| w.iter().fold(a, |x, &b| tc.base().conj(x, b)))
                .collect();
            tc.class_of(&word).unwrap()
        }

        proptest! {
            #[test]
            fn conjugation_ignores_representatives(u in 0usize..40, w in 0usize..40, i in 0usize..8, j in 0usize..8) {
                let tc = tc();
                let (u, w) = (ClassId(u % tc.classes().len()), ClassId(w % tc.classes().len()));
                let (mu, mw) = (tc.decompositions(u), tc.decompositions(w));
                let direct = conj_word(&tc, &mu[i % mu.len()], &mw[j % mw.len()]);
                prop_assert_eq!(direct, tc.conj(u, w));
            }

            #[test]
            fn product_is_associative(u in 0usize..40, v in 0usize..40, w in 0usize..40) {
                let tc = tc();
                let n = tc.classes().len();
                let (u, v, w) = (ClassId(u % n), ClassId(v % n), ClassId(w % n));
                if tc.norm(u) + tc.norm(v) + tc.norm(w) > tc.bound() {
                    return Ok(());
                }
                let left = tc.product(tc.product(u, v).unwrap(), w).unwrap();
                let right = tc.product(u, tc.product(v, w).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn braid_walks_stay_in_class(word in proptest::collection::vec(1usize..4, 0..=3), moves in proptest::collection::vec(0usize..8, 0..20)) {
                let tc = tc();
                let start = tc.class_of(&word).unwrap();
                let mut w = word.clone();
                for m in moves {
                    if w.len() < 2 {
                        break;
                    }
                    let k = m % (w.len() - 1);
                    let (a, b) = (w[k], w[k + 1]);
                    if m % 2 == 0 {
                        w[k] = b;
                        w[k + 1] = tc.base().conj(a, b);
                    } else {
                        // inverse braid: (a, b) -> (x, a) with x^a = b
                        let pre = (0..tc.base().len()).find(|&x| tc.base().conj(x, a) == b).unwrap();
                        w[k] = pre;
                        w[k + 1] = a;
                    }
                    prop_assert_eq!(tc.class_of(&w).unwrap(), start);
                }
            }
        }
    }
}
