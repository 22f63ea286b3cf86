//! Finite groups and PMQ-group pairs `(Q, G, e, r)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pmq::{symbol_index, validate_pmq, Elem, PmqSpec, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    elements: Vec<String>,
    unit: Elem,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    index: HashMap<String, Elem>,
}

impl GroupSpec {
    pub fn from_symbols<'a>(
        elements: Vec<String>,
        unit: &str,
        mul: impl IntoIterator<Item = ((&'a str, &'a str), &'a str)>,
        inv: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let index = symbol_index(&elements)?;
        let n = elements.len();
        let look = |s: &str| {
            index.get(s).copied().ok_or_else(|| {
                Error::Structural(format!("table entry `{s}` is not a group element"))
            })
        };
        let unit = look(unit)?;
        let mut m = vec![None; n * n];
        for ((a, b), c) in mul {
            m[look(a)? * n + look(b)?] = Some(look(c)?);
        }
        let mut iv = vec![None; n];
        for (a, b) in inv {
            iv[look(a)?] = Some(look(b)?);
        }
        let missing = |what: &str| Error::Structural(format!("{what} table is not total"));
        let mul = m
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| missing("multiplication"))?;
        let inv = iv
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| missing("inverse"))?;
        Ok(Self {
            elements,
            unit,
            mul,
            inv,
            index,
        })
    }

    pub fn trivial() -> Self {
        Self::from_symbols(vec!["1".into()], "1", [(("1", "1"), "1")], [("1", "1")]).unwrap()
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

    pub fn symbol(&self, g: Elem) -> &str {
        &self.elements[g]
    }

    pub fn elem(&self, symbol: &str) -> Result<Elem> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownElement(symbol.to_string()))
    }

    pub fn mul(&self, g: Elem, h: Elem) -> Elem {
        self.mul[g * self.len() + h]
    }

    pub fn inv(&self, g: Elem) -> Elem {
        self.inv[g]
    }

    /// `g⁻¹ h g`.
    pub fn conj(&self, h: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), h), g)
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.unit, |acc, g| self.mul(acc, g))
    }
}

pub fn validate_group(group: &GroupSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = group.len();
    let s = |g: Elem| group.symbol(g);
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)) {
                    report.push("(gh)k = g(hk)", &[s(a), s(b), s(c)]);
                    break 'assoc;
                }
            }
        }
    }
    if let Some(a) =
        (0..n).find(|&a| group.mul(group.unit, a) != a || group.mul(a, group.unit) != a)
    {
        report.push("1g = g1 = g", &[s(a)]);
    }
    if let Some(a) = (0..n).find(|&a| {
        group.mul(a, group.inv(a)) != group.unit || group.mul(group.inv(a), a) != group.unit
    }) {
        report.push("g g⁻¹ = g⁻¹ g = 1", &[s(a)]);
    }
    report
}

/// A PMQ-group pair: `e: Q → G` and a right action `r` of `G` on `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSpec {
    pub pmq: PmqSpec,
    pub group: GroupSpec,
    /// `e[a]` for each element of the PMQ.
    pub e: Vec<Elem>,
    /// `r[g][a]`, the image of `a` under `r(g)`.
    pub r: Vec<Vec<Elem>>,
}

impl PairSpec {
    pub fn new(pmq: PmqSpec, group: GroupSpec, e: Vec<Elem>, r: Vec<Vec<Elem>>) -> Result<Self> {
        if e.len() != pmq.len() || e.iter().any(|&g| g >= group.len()) {
            return Err(Error::Structural(
                "map e must send every PMQ element into G".into(),
            ));
        }
        if r.len() != group.len()
            || r.iter()
                .any(|row| row.len() != pmq.len() || row.iter().any(|&a| a >= pmq.len()))
        {
            return Err(Error::Structural(
                "action r must give a map Q → Q for every g".into(),
            ));
        }
        Ok(Self { pmq, group, e, r })
    }

    /// The pair `(Q, 1)` with trivial group.
    pub fn with_trivial_group(pmq: PmqSpec) -> Self {
        let n = pmq.len();
        Self {
            e: vec![0; n],
            r: vec![(0..n).collect()],
            pmq,
            group: GroupSpec::trivial(),
        }
    }

    pub fn e(&self, a: Elem) -> Elem {
        self.e[a]
    }

    pub fn act(&self, a: Elem, g: Elem) -> Elem {
        self.r[g][a]
    }
}

/// Checks both components and every compatibility condition of the pair.
pub fn validate_pair(pair: &PairSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    for v in validate_pmq(&pair.pmq).violations {
        report.push(
            &format!("pmq: {}", v.axiom),
            &v.witness.iter().map(String::as_str).collect::<Vec<_>>(),
        );
    }
    for v in validate_group(&pair.group).violations {
        report.push(
            &format!("group: {}", v.axiom),
            &v.witness.iter().map(String::as_str).collect::<Vec<_>>(),
        );
    }
    let (q, g) = (&pair.pmq, &pair.group);
    let qs = |a: Elem| q.symbol(a).to_string();
    let gs = |x: Elem| g.symbol(x).to_string();
    let fail = |report: &mut ValidationReport, ax: &str, w: Vec<String>| {
        if !report.has(ax) {
            report.push(ax, &w.iter().map(String::as_str).collect::<Vec<_>>());
        }
    };

    if pair.e(q.unit()) != g.unit() {
        fail(&mut report, "e(1) = 1", vec![qs(q.unit())]);
    }
    for a in 0..q.len() {
        for b in 0..q.len() {
            if let Some(ab) = q.product(a, b) {
                if pair.e(ab) != g.mul(pair.e(a), pair.e(b)) {
                    fail(&mut report, "e(ab) = e(a)e(b)", vec![qs(a), qs(b)]);
                }
            }
            if pair.e(q.conj(a, b)) != g.conj(pair.e(a), pair.e(b)) {
                fail(&mut report, "e(a^b) = e(b)⁻¹e(a)e(b)", vec![qs(a), qs(b)]);
            }
        }
    }

    for x in 0..g.len() {
        let mut seen = vec![false; q.len()];
        for a in 0..q.len() {
            seen[pair.act(a, x)] = true;
        }
        if seen.iter().any(|s| !s) {
            fail(&mut report, "r(g) is a bijection", vec![gs(x)]);
        }
        if pair.act(q.unit(), x) != q.unit() {
            fail(&mut report, "r(g) preserves the unit", vec![gs(x)]);
        }
        for a in 0..q.len() {
            if x == g.unit() && pair.act(a, x) != a {
                fail(&mut report, "r(1) = id", vec![qs(a)]);
            }
            if pair.e(pair.act(a, x)) != g.conj(pair.e(a), x) {
                fail(&mut report, "e(r(g)a) = g⁻¹e(a)g", vec![gs(x), qs(a)]);
            }
            for b in 0..q.len() {
                let ra = pair.act(a, x);
                let rb = pair.act(b, x);
                if pair.act(q.conj(a, b), x) != q.conj(ra, rb) {
                    fail(
                        &mut report,
                        "r(g) preserves conjugation",
                        vec![gs(x), qs(a), qs(b)],
                    );
                }
                if q.product(a, b).map(|ab| pair.act(ab, x)) != q.product(ra, rb) {
                    fail(
                        &mut report,
                        "r(g) preserves the product",
                        vec![gs(x), qs(a), qs(b)],
                    );
                }
            }
        }
        for y in 0..g.len() {
            for a in 0..q.len() {
                if pair.act(a, g.mul(x, y)) != pair.act(pair.act(a, x), y) {
                    fail(&mut report, "r(gh) = r(h)∘r(g)", vec![gs(x), gs(y), qs(a)]);
                }
            }
        }
    }
    for a in 0..q.len() {
        for b in 0..q.len() {
            if pair.act(a, pair.e(b)) != q.conj(a, b) {
                fail(&mut report, "r(e(b)) = (-)^b", vec![qs(a), qs(b)]);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s3_is_a_group() {
        assert!(validate_group(&fixtures::s3()).is_valid());
        assert!(validate_group(&GroupSpec::trivial()).is_valid());
    }

    #[test]
    fn bundled_pairs_are_valid() {
        for pair in [
            fixtures::trans3_s3(),
            fixtures::triv_pair(),
            fixtures::free1_pair(),
        ] {
            let report = validate_pair(&pair);
            assert!(report.is_valid(), "{:?}", report.violations);
        }
    }

    #[test]
    fn broken_action_is_reported() {
        let mut pair = fixtures::trans3_s3();
        let g = pair.group.elem("(23)").unwrap();
        pair.r[g] = (0..pair.pmq.len()).collect();
        let report = validate_pair(&pair);
        assert!(report.has("r(e(b)) = (-)^b"));
        assert!(report.has("e(r(g)a) = g⁻¹e(a)g"));
    }

    #[test]
    fn broken_e_is_reported() {
        let mut pair = fixtures::trans3_s3();
        let a = pair.pmq.elem("(12)").unwrap();
        pair.e[a] = pair.group.elem("(123)").unwrap();
        assert!(!validate_pair(&pair).is_valid());
    }
}
