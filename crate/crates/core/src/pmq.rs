//! Finite partially multiplicative quandles given by tables.
//!
//! Elements are opaque symbols, addressed internally by their position in the
//! element list. All algebra is table lookup.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of an element in a [`PmqSpec`] (or a [`crate::group::GroupSpec`]).
pub type Elem = usize;

/// A finite PMQ: a partial product and a total conjugation `conj(a, b) = a^b`.
#[derive(Clone, PartialEq, Eq)]
pub struct PmqSpec {
    elements: Vec<String>,
    unit: Elem,
    product: Vec<Option<Elem>>,
    conj: Vec<Elem>,
    index: HashMap<String, Elem>,
}

impl fmt::Debug for PmqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PmqSpec")
            .field("elements", &self.elements)
            .field("unit", &self.elements[self.unit])
            .finish_non_exhaustive()
    }
}

impl PmqSpec {
    /// Builds a PMQ from symbolic tables. `product` lists the defined products
    /// only; `conj` must cover every ordered pair.
    pub fn from_symbols<'a>(
        elements: Vec<String>,
        unit: &str,
        product: impl IntoIterator<Item = ((&'a str, &'a str), &'a str)>,
        conj: impl IntoIterator<Item = ((&'a str, &'a str), &'a str)>,
    ) -> Result<Self> {
        let index = symbol_index(&elements)?;
        let n = elements.len();
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::Structural(format!("table entry `{s}` is not an element")))
        };
        let unit = look(unit)?;
        let mut prod = vec![None; n * n];
        for ((a, b), c) in product {
            let (a, b, c) = (look(a)?, look(b)?, look(c)?);
            prod[a * n + b] = Some(c);
        }
        let mut cj = vec![None; n * n];
        for ((a, b), c) in conj {
            let (a, b, c) = (look(a)?, look(b)?, look(c)?);
            cj[a * n + b] = Some(c);
        }
        let conj = cj
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                v.ok_or_else(|| {
                    Error::Structural(format!(
                        "conjugation table is missing `{}|{}`",
                        elements[k / n],
                        elements[k % n]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            elements,
            unit,
            product: prod,
            conj,
            index,
        })
    }

    /// Builds a PMQ from index tables (row-major, `n * n` entries each).
    pub fn from_tables(
        elements: Vec<String>,
        unit: Elem,
        product: Vec<Option<Elem>>,
        conj: Vec<Elem>,
    ) -> Result<Self> {
        let index = symbol_index(&elements)?;
        let n = elements.len();
        if unit >= n || product.len() != n * n || conj.len() != n * n {
            return Err(Error::Structural("table dimensions do not match".into()));
        }
        if product.iter().flatten().chain(conj.iter()).any(|&e| e >= n) {
            return Err(Error::Structural("table entry out of range".into()));
        }
        Ok(Self {
            elements,
            unit,
            product,
            conj,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn symbol(&self, a: Elem) -> &str {
        &self.elements[a]
    }

    pub fn elem(&self, symbol: &str) -> Result<Elem> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownElement(symbol.to_string()))
    }

    /// Elements other than the unit, in list order.
    pub fn nonunit(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).filter(move |&a| a != self.unit)
    }

    pub fn product(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.product[a * self.len() + b]
    }

    /// `a^b`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.conj[a * self.len() + b]
    }

    /// Symbolic lookup of the partial product.
    pub fn product_sym(&self, a: &str, b: &str) -> Result<Option<&str>> {
        let (a, b) = (self.elem(a)?, self.elem(b)?);
        Ok(self.product(a, b).map(|c| self.symbol(c)))
    }

    /// Symbolic lookup of conjugation.
    pub fn conj_sym(&self, a: &str, b: &str) -> Result<&str> {
        let (a, b) = (self.elem(a)?, self.elem(b)?);
        Ok(self.symbol(self.conj(a, b)))
    }

    pub fn is_complete(&self) -> bool {
        self.product.iter().all(Option::is_some)
    }

    /// No factorization `1 = a·b` other than `1·1`.
    pub fn is_augmented(&self) -> bool {
        let u = self.unit;
        (0..self.len())
            .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
            .all(|(a, b)| (a == u && b == u) || self.product(a, b) != Some(u))
    }

    /// Restriction to a subset of elements. Products leaving the subset become
    /// undefined; the subset must contain the unit and be closed under
    /// conjugation.
    pub fn restrict(&self, keep: &[Elem]) -> Result<Self> {
        let mut map = vec![None; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = Some(new);
        }
        if map[self.unit].is_none() {
            return Err(Error::Structural("restriction drops the unit".into()));
        }
        let m = keep.len();
        let mut product = vec![None; m * m];
        let mut conj = vec![0; m * m];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                product[i * m + j] = self.product(a, b).and_then(|c| map[c]);
                conj[i * m + j] = map[self.conj(a, b)].ok_or_else(|| {
                    Error::Structural("restriction is not closed under conjugation".into())
                })?;
            }
        }
        let elements = keep.iter().map(|&a| self.elements[a].clone()).collect();
        Self::from_tables(elements, map[self.unit].unwrap(), product, conj)
    }
}

pub(crate) fn symbol_index(elements: &[String]) -> Result<HashMap<String, Elem>> {
    if elements.is_empty() {
        return Err(Error::Structural("element list is empty".into()));
    }
    let mut index = HashMap::with_capacity(elements.len());
    for (i, s) in elements.iter().enumerate() {
        if index.insert(s.clone(), i).is_some() {
            return Err(Error::Structural(format!("duplicate element `{s}`")));
        }
    }
    Ok(index)
}

/// One failed axiom together with the tuple that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.axiom, self.witness.join(", "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, axiom: &str, witness: &[&str]) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness: witness.iter().map(|s| s.to_string()).collect(),
        });
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

pub mod axiom {
    pub const UNIT_LEFT: &str = "1·a = a";
    pub const UNIT_RIGHT: &str = "a·1 = a";
    pub const CONJ_BY_UNIT: &str = "a^1 = a";
    pub const UNIT_CONJ: &str = "1^a = 1";
    pub const IDEMPOTENCE: &str = "a^a = a";
    pub const CONJ_BIJECTIVE: &str = "x -> x^b is a bijection";
    pub const ASSOCIATIVITY: &str = "(ab)c = a(bc)";
    pub const BRAID: &str = "ab = b·a^b";
    pub const CONJ_BY_PRODUCT: &str = "a^(bc) = (a^b)^c";
    pub const PRODUCT_CONJ: &str = "(ab)^c = a^c·b^c";
    pub const SELF_DISTRIBUTIVITY: &str = "(a^b)^c = (a^c)^(b^c)";
}

/// Checks every PMQ axiom exhaustively. Each failing axiom is reported once,
/// with the first witness found.
pub fn validate_pmq(spec: &PmqSpec) -> ValidationReport {
    use axiom::*;
    let mut report = ValidationReport::default();
    let n = spec.len();
    let u = spec.unit();
    let s = |a: Elem| spec.symbol(a);
    let failed = |report: &mut ValidationReport, ax: &str, w: &[&str]| {
        if !report.has(ax) {
            report.push(ax, w);
        }
    };

    for a in 0..n {
        if spec.product(u, a) != Some(a) {
            failed(&mut report, UNIT_LEFT, &[s(a)]);
        }
        if spec.product(a, u) != Some(a) {
            failed(&mut report, UNIT_RIGHT, &[s(a)]);
        }
        if spec.conj(a, u) != a {
            failed(&mut report, CONJ_BY_UNIT, &[s(a)]);
        }
        if spec.conj(u, a) != u {
            failed(&mut report, UNIT_CONJ, &[s(a)]);
        }
        if spec.conj(a, a) != a {
            failed(&mut report, IDEMPOTENCE, &[s(a)]);
        }
    }
    for b in 0..n {
        let mut seen = vec![false; n];
        for a in 0..n {
            seen[spec.conj(a, b)] = true;
        }
        if seen.iter().any(|x| !x) {
            failed(&mut report, CONJ_BIJECTIVE, &[s(b)]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = spec.product(a, b);
            let braided = spec.product(b, spec.conj(a, b));
            if ab != braided {
                failed(&mut report, BRAID, &[s(a), s(b)]);
            }
            for c in 0..n {
                let bc = spec.product(b, c);
                let left = ab.and_then(|ab| spec.product(ab, c));
                let right = bc.and_then(|bc| spec.product(a, bc));
                if left != right {
                    failed(&mut report, ASSOCIATIVITY, &[s(a), s(b), s(c)]);
                }
                if let Some(bc) = bc {
                    if spec.conj(a, bc) != spec.conj(spec.conj(a, b), c) {
                        failed(&mut report, CONJ_BY_PRODUCT, &[s(a), s(b), s(c)]);
                    }
                }
                let lhs = ab.map(|ab| spec.conj(ab, c));
                let rhs = spec.product(spec.conj(a, c), spec.conj(b, c));
                if lhs != rhs {
                    failed(&mut report, PRODUCT_CONJ, &[s(a), s(b), s(c)]);
                }
                let lhs = spec.conj(spec.conj(a, b), c);
                let rhs = spec.conj(spec.conj(a, c), spec.conj(b, c));
                if lhs != rhs {
                    failed(&mut report, SELF_DISTRIBUTIVITY, &[s(a), s(b), s(c)]);
                }
            }
        }
    }
    report
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub augmented: bool,
    pub complete: bool,
    pub locally_finite: bool,
    /// `h(a)` indexed by element, present iff locally finite.
    pub norms: Option<Vec<usize>>,
    /// Cycle in the factorization graph, present iff not locally finite.
    pub cycle: Option<Vec<String>>,
}

pub fn classify(spec: &PmqSpec) -> ClassificationReport {
    let (norms, cycle) = match norms(spec) {
        Ok(h) => (Some(h), None),
        Err(Error::NormUnavailable { cycle }) => (None, Some(cycle)),
        Err(_) => unreachable!("norms only fails with NormUnavailable"),
    };
    ClassificationReport {
        augmented: spec.is_augmented(),
        complete: spec.is_complete(),
        locally_finite: norms.is_some(),
        norms,
        cycle,
    }
}

/// Longest `Q₊`-decomposition length of every element.
///
/// Decompositions are peeled from the right: `a -> b` whenever `a = b·c` with
/// `c ≠ 1`. The lengths are bounded iff this graph is acyclic, and then `h(a)`
/// is the longest path from `a` down to the unit.
pub fn norms(spec: &PmqSpec) -> Result<Vec<usize>> {
    let n = spec.len();
    let u = spec.unit();
    let mut succ = vec![Vec::new(); n];
    for b in 0..n {
        for c in spec.nonunit() {
            if let Some(a) = spec.product(b, c) {
                succ[a].push(b);
            }
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; n];
    let mut h = vec![0usize; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // iterative DFS; the stack holds (node, next successor slot)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some(&mut (v, ref mut k)) = stack.last_mut() {
            if let Some(&w) = succ[v].get(*k) {
                *k += 1;
                match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Open;
                        stack.push((w, 0));
                    }
                    Mark::Open => {
                        let start = stack.iter().position(|&(x, _)| x == w).unwrap();
                        let mut cycle: Vec<String> = stack[start..]
                            .iter()
                            .map(|&(x, _)| spec.symbol(x).to_string())
                            .collect();
                        cycle.push(spec.symbol(w).to_string());
                        return Err(Error::NormUnavailable { cycle });
                    }
                    Mark::Done => {}
                }
            } else {
                h[v] = succ[v].iter().map(|&w| h[w] + 1).max().unwrap_or(0);
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    debug_assert_eq!(h[u], 0);
    Ok(h)
}

/// The sub-PMQ of elements with norm at most `k`.
pub fn sub_pmq_norm_le(spec: &PmqSpec, k: usize) -> Result<PmqSpec> {
    let h = norms(spec)?;
    let keep: Vec<Elem> = (0..spec.len()).filter(|&a| h[a] <= k).collect();
    spec.restrict(&keep)
}

/// Checks `h(ab) = h(a) + h(b)` on every defined product. Returns the first
/// violating triple otherwise.
pub fn intrinsic_norm_check(spec: &PmqSpec) -> Result<std::result::Result<(), [String; 3]>> {
    let h = norms(spec)?;
    for a in 0..spec.len() {
        for b in 0..spec.len() {
            if let Some(c) = spec.product(a, b) {
                if h[c] != h[a] + h[b] {
                    let s = |x: Elem| spec.symbol(x).to_string();
                    return Ok(Err([s(a), s(b), s(c)]));
                }
            }
        }
    }
    Ok(Ok(()))
}
