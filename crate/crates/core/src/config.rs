//! Labeled point configurations in the unit square.
//!
//! A fine point carries a class of the completion, a coarse point a group
//! element; coarse points sit on a finite set of sites. Points are ordered by
//! `x` and then `y`, which is also the order of every monodromy product.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::array::ArrayPQ;
use crate::completion::{ClassId, TruncatedCompletion};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, PairSpec};
use crate::pmq::Elem;

pub type Rat = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Fine(ClassId),
    Coarse(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
    pub label: Label,
}

impl Point {
    pub fn fine(x: Rat, y: Rat, c: ClassId) -> Self {
        Self {
            x,
            y,
            label: Label::Fine(c),
        }
    }

    pub fn coarse(x: Rat, y: Rat, g: Elem) -> Self {
        Self {
            x,
            y,
            label: Label::Coarse(g),
        }
    }

    fn at(&self) -> (&Rat, &Rat) {
        (&self.x, &self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    sites: Vec<(Rat, Rat)>,
    points: Vec<Point>,
}

fn in_unit(x: &Rat) -> bool {
    *x >= Rat::zero() && *x <= Rat::one()
}

impl Configuration {
    /// Checks the invariants and sorts points and sites.
    pub fn new(mut sites: Vec<(Rat, Rat)>, mut points: Vec<Point>) -> Result<Self> {
        sites.sort();
        sites.dedup();
        points.sort();
        let bad = |m: String| Err(Error::InvalidConfiguration(m));
        for (x, y) in &sites {
            if !in_unit(x) || !in_unit(y) {
                return bad(format!("site ({x}, {y}) outside the unit square"));
            }
        }
        for w in points.windows(2) {
            if w[0].at() == w[1].at() {
                return bad(format!("two points at ({}, {})", w[0].x, w[0].y));
            }
        }
        for pt in &points {
            if !in_unit(&pt.x) || !in_unit(&pt.y) {
                return bad(format!(
                    "point ({}, {}) outside the unit square",
                    pt.x, pt.y
                ));
            }
            let on_site = sites.binary_search(&(pt.x.clone(), pt.y.clone())).is_ok();
            match pt.label {
                Label::Fine(_) if on_site => {
                    return bad(format!("fine point on site ({}, {})", pt.x, pt.y))
                }
                Label::Coarse(_) if !on_site => {
                    return bad(format!(
                        "coarse point off the sites at ({}, {})",
                        pt.x, pt.y
                    ))
                }
                _ => {}
            }
        }
        Ok(Self { sites, points })
    }

    pub fn fine(points: Vec<Point>) -> Result<Self> {
        Self::new(Vec::new(), points)
    }

    pub fn empty() -> Self {
        Self {
            sites: Vec::new(),
            points: Vec::new(),
        }
    }

    pub fn sites(&self) -> &[(Rat, Rat)] {
        &self.sites
    }

    /// Sorted by `x`, then `y`.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn fine_labels(&self) -> Result<Vec<ClassId>> {
        self.points
            .iter()
            .map(|pt| match pt.label {
                Label::Fine(c) => Ok(c),
                Label::Coarse(_) => Err(Error::CoarsePointPresent),
            })
            .collect()
    }
}

/// Total monodromy in `G`.
pub fn omega(c: &Configuration, pair: &PairSpec, tc: &TruncatedCompletion) -> Elem {
    pair.group.product(c.points.iter().map(|pt| match pt.label {
        Label::Fine(u) => tc.e_image(pair, u),
        Label::Coarse(g) => g,
    }))
}

/// Total monodromy in the completion; all points must be fine.
pub fn omega_hat(c: &Configuration, tc: &TruncatedCompletion) -> Result<ClassId> {
    tc.product_all(c.fine_labels()?)
}

/// A cell of `Arr(Q)` together with interior coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellLocation {
    pub ua: ArrayPQ,
    pub us: Vec<Rat>,
    pub ut: Vec<Rat>,
}

fn grid_index(v: &Rat, interior: &[Rat]) -> usize {
    if v.is_zero() {
        0
    } else if v.is_one() {
        interior.len() + 1
    } else {
        1 + interior.binary_search(v).expect("coordinate listed")
    }
}

/// The cell containing a fine configuration and its coordinates there.
pub fn cell_of(c: &Configuration, tc: &TruncatedCompletion) -> Result<CellLocation> {
    let labels = c.fine_labels()?;
    if labels.iter().any(|&u| tc.is_unit(u)) {
        return Err(Error::InvalidConfiguration(
            "inert point; reduce first".into(),
        ));
    }
    let interior = |coord: fn(&Point) -> &Rat| -> Vec<Rat> {
        let set: BTreeSet<&Rat> = c
            .points
            .iter()
            .map(coord)
            .filter(|v| !v.is_zero() && !v.is_one())
            .collect();
        set.into_iter().cloned().collect()
    };
    let us = interior(|pt| &pt.x);
    let ut = interior(|pt| &pt.y);
    let mut ua = ArrayPQ::units(tc, us.len(), ut.len());
    for (pt, u) in c.points.iter().zip(labels) {
        ua.set(grid_index(&pt.x, &us), grid_index(&pt.y, &ut), u);
    }
    debug_assert!(ua.is_nondegenerate());
    Ok(CellLocation { ua, us, ut })
}

fn check_coordinates(values: &[Rat], what: &str) -> Result<()> {
    if values.iter().any(|v| !in_unit(v)) {
        return Err(Error::MonotonicityViolation(format!(
            "{what} coordinate outside [0, 1]"
        )));
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::MonotonicityViolation(format!(
            "{what} coordinates decrease"
        )));
    }
    Ok(())
}

/// Places the labels of a cell at the given coordinates. Repeated coordinates
/// and coordinates on the sides of the square first merge the corresponding
/// lines through the face maps.
pub fn upsilon(loc: &CellLocation, tc: &TruncatedCompletion) -> Result<Configuration> {
    let (p, q) = loc.ua.bidegree();
    if !loc.ua.is_nondegenerate() {
        return Err(Error::DegenerateCell);
    }
    if loc.us.len() != p || loc.ut.len() != q {
        return Err(Error::InvalidArgument(format!(
            "cell of bidegree ({p},{q}) needs {p} + {q} coordinates, got {} + {}",
            loc.us.len(),
            loc.ut.len()
        )));
    }
    check_coordinates(&loc.us, "horizontal")?;
    check_coordinates(&loc.ut, "vertical")?;

    let framed = |v: &[Rat]| {
        let mut out = vec![Rat::zero()];
        out.extend_from_slice(v);
        out.push(Rat::one());
        out
    };
    let (mut s, mut t) = (framed(&loc.us), framed(&loc.ut));
    let mut ua = loc.ua.clone();
    while let Some(i) = (0..s.len() - 1).find(|&i| s[i] == s[i + 1]) {
        ua = ua.face_h(tc, i)?;
        s.remove(i + 1);
    }
    while let Some(j) = (0..t.len() - 1).find(|&j| t[j] == t[j + 1]) {
        ua = ua.face_v(tc, j)?;
        t.remove(j + 1);
    }
    let points = ua
        .support()
        .into_iter()
        .map(|(i, j)| Point::fine(s[i].clone(), t[j].clone(), ua.get(i, j)))
        .collect();
    Configuration::fine(points)
}

/// Moves the distinct interior coordinates of `c` to the given targets,
/// merging points whose coordinates meet.
pub fn collide(
    c: &Configuration,
    xs: &[Rat],
    ys: &[Rat],
    tc: &TruncatedCompletion,
) -> Result<Configuration> {
    let loc = cell_of(c, tc)?;
    upsilon(
        &CellLocation {
            ua: loc.ua,
            us: xs.to_vec(),
            ut: ys.to_vec(),
        },
        tc,
    )
}

/// Global conjugation by `g`.
pub fn conj_global(
    c: &Configuration,
    g: Elem,
    pair: &PairSpec,
    tc: &TruncatedCompletion,
) -> Result<Configuration> {
    let mut out = Vec::with_capacity(c.len());
    for pt in &c.points {
        let label = match pt.label {
            Label::Fine(u) => {
                let word: Vec<Elem> = tc.class(u).word.iter().map(|&a| pair.act(a, g)).collect();
                Label::Fine(tc.class_of(&word)?)
            }
            Label::Coarse(h) => Label::Coarse(pair.group.conj(h, g)),
        };
        out.push(Point {
            label,
            ..pt.clone()
        });
    }
    Ok(Configuration {
        sites: c.sites.clone(),
        points: out,
    })
}

fn extreme_coarse(c: &Configuration, leftmost: bool) -> Result<usize> {
    let side = if leftmost { "left" } else { "right" };
    let (k, pt) = if leftmost {
        (0, c.points.first())
    } else {
        (c.len().saturating_sub(1), c.points.last())
    };
    let pt =
        pt.ok_or_else(|| Error::NoBasePoint(format!("empty configuration has no {side} point")))?;
    let ties = c.points.iter().filter(|o| o.x == pt.x).count();
    if ties > 1 {
        return Err(Error::NoBasePoint(format!(
            "{ties} points share the extreme {side} abscissa"
        )));
    }
    // with a unique extreme x the extreme point is first (resp. last) in order
    match pt.label {
        Label::Coarse(_) => Ok(k),
        Label::Fine(_) => Err(Error::NoBasePoint(format!("the {side}most point is fine"))),
    }
}

fn act(c: &Configuration, g: Elem, group: &GroupSpec, leftmost: bool) -> Result<Configuration> {
    let k = extreme_coarse(c, leftmost)?;
    let mut out = c.clone();
    if let Label::Coarse(h) = out.points[k].label {
        out.points[k].label = Label::Coarse(if leftmost {
            group.mul(g, h)
        } else {
            group.mul(h, g)
        });
    }
    Ok(out)
}

/// `h ↦ g·h` on the unique leftmost point, which must be coarse.
pub fn act_left(c: &Configuration, g: Elem, pair: &PairSpec) -> Result<Configuration> {
    act(c, g, &pair.group, true)
}

/// `h ↦ h·g` on the unique rightmost point, which must be coarse.
pub fn act_right(c: &Configuration, g: Elem, pair: &PairSpec) -> Result<Configuration> {
    act(c, g, &pair.group, false)
}

/// Forgets inert points, i.e. fine points labeled by the unit.
pub fn reduce(c: &Configuration, tc: &TruncatedCompletion) -> Configuration {
    Configuration {
        sites: c.sites.clone(),
        points: c
            .points
            .iter()
            .filter(|pt| !matches!(pt.label, Label::Fine(u) if tc.is_unit(u)))
            .cloned()
            .collect(),
    }
}

pub fn is_reduced(c: &Configuration, tc: &TruncatedCompletion) -> bool {
    reduce(c, tc).len() == c.len()
}

/// Open axis-parallel rectangle `(x0, x1) × (y0, y1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
}

impl Rect {
    pub fn new(x0: Rat, x1: Rat, y0: Rat, y1: Rat) -> Self {
        Self { x0, x1, y0, y1 }
    }

    pub fn contains(&self, x: &Rat, y: &Rat) -> bool {
        self.x0 < *x && *x < self.x1 && self.y0 < *y && *y < self.y1
    }

    fn closure_contains(&self, x: &Rat, y: &Rat) -> bool {
        self.x0 <= *x && *x <= self.x1 && self.y0 <= *y && *y <= self.y1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RectCovering {
    pub rects: Vec<Rect>,
}

impl RectCovering {
    /// Closed `x`-intervals are pairwise disjoint.
    pub fn check_strip_separated(&self) -> Result<()> {
        let mut spans: Vec<(&Rat, &Rat)> = self.rects.iter().map(|r| (&r.x0, &r.x1)).collect();
        spans.sort();
        for r in &self.rects {
            if r.x0 >= r.x1 || r.y0 >= r.y1 {
                return Err(Error::CoveringNotStripSeparated(format!(
                    "empty rectangle ({}, {}) x ({}, {})",
                    r.x0, r.x1, r.y0, r.y1
                )));
            }
        }
        for w in spans.windows(2) {
            if w[0].1 >= w[1].0 {
                return Err(Error::CoveringNotStripSeparated(format!(
                    "strips [{}, {}] and [{}, {}] meet",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(())
    }

    /// For each rectangle, the index of the unique base point inside it.
    pub fn check_adapted(&self, base: &Configuration) -> Result<Vec<usize>> {
        let mut owner = Vec::with_capacity(self.rects.len());
        for (k, r) in self.rects.iter().enumerate() {
            let inside: Vec<usize> = (0..base.len())
                .filter(|&i| r.contains(&base.points[i].x, &base.points[i].y))
                .collect();
            let [i] = inside[..] else {
                return Err(Error::CoveringNotAdapted(format!(
                    "rectangle {k} contains {} base points",
                    inside.len()
                )));
            };
            if matches!(base.points[i].label, Label::Fine(_))
                && base.sites.iter().any(|(x, y)| r.closure_contains(x, y))
            {
                return Err(Error::CoveringNotAdapted(format!(
                    "rectangle {k} around a fine point meets a site"
                )));
            }
            owner.push(i);
        }
        let mut covered = owner.clone();
        covered.sort_unstable();
        covered.dedup();
        if covered.len() != base.len() {
            return Err(Error::CoveringNotAdapted(
                "some base point lies in no rectangle".into(),
            ));
        }
        Ok(owner)
    }
}

/// Whether `cand` lies in the normal neighbourhood of `base` cut out by `cov`.
pub fn neighborhood_contains(
    base: &Configuration,
    cov: &RectCovering,
    cand: &Configuration,
    pair: &PairSpec,
    tc: &TruncatedCompletion,
) -> Result<bool> {
    cov.check_strip_separated()?;
    let owner = cov.check_adapted(base)?;

    let blocks: Vec<Vec<&Point>> = cov
        .rects
        .iter()
        .map(|r| {
            cand.points
                .iter()
                .filter(|pt| r.contains(&pt.x, &pt.y))
                .collect()
        })
        .collect();
    let assigned: usize = blocks.iter().map(Vec::len).sum();
    // strips are disjoint, so no point is counted twice
    if assigned != cand.len() || blocks.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    for (block, &i) in blocks.iter().zip(&owner) {
        let centre = &base.points[i];
        match centre.label {
            Label::Fine(target) => {
                let mut labels = Vec::with_capacity(block.len());
                for pt in block {
                    match pt.label {
                        Label::Fine(u) => labels.push(u),
                        Label::Coarse(_) => return Ok(false),
                    }
                }
                let norm: usize = labels.iter().map(|&u| tc.norm(u)).sum();
                if norm != tc.norm(target) || tc.product_all(labels)? != target {
                    return Ok(false);
                }
            }
            Label::Coarse(target) => {
                let site_kept = block
                    .iter()
                    .any(|pt| pt.at() == centre.at() && matches!(pt.label, Label::Coarse(_)));
                let g = pair.group.product(block.iter().map(|pt| match pt.label {
                    Label::Fine(u) => tc.e_image(pair, u),
                    Label::Coarse(h) => h,
                }));
                if !site_kept || g != target {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Exact rational written as `num/den` or an integer.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::InvalidArgument(format!("`{text}` is not a rational number"));
    let r = Rat::from_str(text.trim()).map_err(|_| bad())?;
    Ok(r)
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Text(String),
}

impl RatJson {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            RatJson::Int(n) => Ok(Rat::from_integer(BigInt::from(*n))),
            RatJson::Text(s) => parse_rat(s),
        }
    }

    pub fn from_rat(r: &Rat) -> Self {
        RatJson::Text(format_rat(r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub x: RatJson,
    pub y: RatJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fine: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coarse: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    #[serde(default)]
    pub sites: Vec<[RatJson; 2]>,
    pub points: Vec<PointJson>,
}

impl ConfigJson {
    /// Words of the fine labels, for sizing the completion before conversion.
    pub fn fine_words(&self) -> impl Iterator<Item = &str> {
        self.points.iter().filter_map(|p| p.fine.as_deref())
    }

    pub fn to_config(
        &self,
        tc: &TruncatedCompletion,
        group: Option<&GroupSpec>,
    ) -> Result<Configuration> {
        let sites = self
            .sites
            .iter()
            .map(|[x, y]| Ok((x.to_rat()?, y.to_rat()?)))
            .collect::<Result<Vec<_>>>()?;
        let mut points = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let (x, y) = (p.x.to_rat()?, p.y.to_rat()?);
            let label = match (&p.fine, &p.coarse) {
                (Some(w), None) => Label::Fine(tc.parse_class(w)?),
                (None, Some(g)) => {
                    let group = group.ok_or_else(|| {
                        Error::InvalidArgument("coarse points need a PMQ-group pair".into())
                    })?;
                    Label::Coarse(group.elem(g)?)
                }
                _ => {
                    return Err(Error::InvalidConfiguration(
                        "each point needs exactly one of `fine` and `coarse`".into(),
                    ))
                }
            };
            points.push(Point { x, y, label });
        }
        Configuration::new(sites, points)
    }

    pub fn from_config(
        c: &Configuration,
        tc: &TruncatedCompletion,
        group: Option<&GroupSpec>,
    ) -> Self {
        let sites = c
            .sites
            .iter()
            .map(|(x, y)| [RatJson::from_rat(x), RatJson::from_rat(y)])
            .collect();
        let points = c
            .points
            .iter()
            .map(|pt| {
                let (fine, coarse) = match pt.label {
                    Label::Fine(u) => (Some(tc.name(u)), None),
                    Label::Coarse(g) => (
                        None,
                        Some(group.map_or_else(|| g.to_string(), |gr| gr.symbol(g).to_string())),
                    ),
                };
                PointJson {
                    x: RatJson::from_rat(&pt.x),
                    y: RatJson::from_rat(&pt.y),
                    fine,
                    coarse,
                }
            })
            .collect();
        ConfigJson { sites, points }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectJson {
    pub x: [RatJson; 2],
    pub y: [RatJson; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringJson {
    pub rects: Vec<RectJson>,
}

impl CoveringJson {
    pub fn to_covering(&self) -> Result<RectCovering> {
        let rects = self
            .rects
            .iter()
            .map(|r| {
                Ok(Rect::new(
                    r.x[0].to_rat()?,
                    r.x[1].to_rat()?,
                    r.y[0].to_rat()?,
                    r.y[1].to_rat()?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(RectCovering { rects })
    }
}

/// A cell location: columns of canonical words, bottom to top, and the
/// interior coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocationJson {
    pub columns: Vec<Vec<String>>,
    pub us: Vec<RatJson>,
    pub ut: Vec<RatJson>,
}

impl LocationJson {
    pub fn to_location(&self, tc: &TruncatedCompletion) -> Result<CellLocation> {
        let rows = self.columns.first().map_or(0, Vec::len);
        if self.columns.len() < 2 || rows < 2 || self.columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidArgument(
                "cell needs at least 2 x 2 entries in equal columns".into(),
            ));
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|w| tc.parse_class(w))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CellLocation {
            ua: ArrayPQ::from_columns(columns),
            us: self.us.iter().map(RatJson::to_rat).collect::<Result<_>>()?,
            ut: self.ut.iter().map(RatJson::to_rat).collect::<Result<_>>()?,
        })
    }

    pub fn from_location(loc: &CellLocation, tc: &TruncatedCompletion) -> Self {
        Self {
            columns: (0..loc.ua.columns())
                .map(|i| loc.ua.column(i).iter().map(|&u| tc.name(u)).collect())
                .collect(),
            us: loc.us.iter().map(RatJson::from_rat).collect(),
            ut: loc.ut.iter().map(RatJson::from_rat).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::complete;
    use crate::fixtures;

    fn r(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn omega_examples() {
        let pair = fixtures::trans3_s3();
        let tc = complete(&pair.pmq, 2).unwrap();
        let g = |s: &str| pair.group.elem(s).unwrap();
        assert_eq!(
            omega(&Configuration::empty(), &pair, &tc),
            pair.group.unit()
        );

        let single = Configuration::new(
            vec![(r("1/2"), r("1/2"))],
            vec![Point::coarse(r("1/2"), r("1/2"), g("(123)"))],
        )
        .unwrap();
        assert_eq!(omega(&single, &pair, &tc), g("(123)"));

        let two = Configuration::fine(vec![
            Point::fine(r("3/4"), r("1/2"), tc.parse_class("(23)").unwrap()),
            Point::fine(r("1/4"), r("1/2"), tc.parse_class("(12)").unwrap()),
        ])
        .unwrap();
        assert_eq!(
            omega(&two, &pair, &tc),
            pair.group.mul(g("(12)"), g("(23)"))
        );
        assert_eq!(
            omega_hat(&two, &tc).unwrap(),
            tc.parse_class("(12).(23)").unwrap()
        );
        assert_eq!(omega_hat(&single, &tc), Err(Error::CoarsePointPresent));
    }

    #[test]
    fn free1_cells_and_upsilon() {
        let tc = complete(&fixtures::free1(), 2).unwrap();
        let a = tc.parse_class("a").unwrap();
        let c = Configuration::fine(vec![Point::fine(r("1/2"), r("1/2"), a)]).unwrap();
        let loc = cell_of(&c, &tc).unwrap();
        assert_eq!(loc.ua.bidegree(), (1, 1));
        assert_eq!(loc.ua.get(1, 1), a);
        assert_eq!(
            (loc.us.clone(), loc.ut.clone()),
            (vec![r("1/2")], vec![r("1/2")])
        );
        assert_eq!(upsilon(&loc, &tc).unwrap(), c);

        let edge = Configuration::fine(vec![Point::fine(r("0"), r("1/2"), a)]).unwrap();
        let loc = cell_of(&edge, &tc).unwrap();
        assert_eq!(loc.ua.bidegree(), (0, 1));
        assert_eq!(loc.ua.get(0, 1), a);
        assert!(!loc.ua.is_admissible(&tc));

        let square = CellLocation {
            ua: ArrayPQ::units(&tc, 1, 1).with(1, 1, a),
            us: vec![r("0")],
            ut: vec![r("1/2")],
        };
        assert_eq!(upsilon(&square, &tc).unwrap(), edge);

        let empty = cell_of(&Configuration::empty(), &tc).unwrap();
        assert_eq!(empty.ua, ArrayPQ::units(&tc, 0, 0));

        let degenerate = CellLocation {
            ua: ArrayPQ::units(&tc, 1, 0),
            us: vec![r("1/2")],
            ut: vec![],
        };
        assert_eq!(upsilon(&degenerate, &tc), Err(Error::DegenerateCell));
    }

    #[test]
    fn collisions() {
        let tc = complete(&fixtures::free1(), 2).unwrap();
        let a = tc.parse_class("a").unwrap();
        let c = Configuration::fine(vec![
            Point::fine(r("1/4"), r("1/2"), a),
            Point::fine(r("3/4"), r("1/2"), a),
        ])
        .unwrap();
        assert_eq!(
            collide(&c, &[r("1/4"), r("3/4")], &[r("1/2")], &tc).unwrap(),
            c
        );
        let merged = collide(&c, &[r("1/2"), r("1/2")], &[r("1/2")], &tc).unwrap();
        assert_eq!(
            merged.points(),
            &[Point::fine(
                r("1/2"),
                r("1/2"),
                tc.parse_class("a.a").unwrap()
            )]
        );
        assert!(matches!(
            collide(&c, &[r("3/4"), r("1/4")], &[r("1/2")], &tc),
            Err(Error::MonotonicityViolation(_))
        ));

        let tc = complete(&fixtures::trans3(), 2).unwrap();
        let column = Configuration::fine(vec![
            Point::fine(r("1/2"), r("1/4"), tc.parse_class("(12)").unwrap()),
            Point::fine(r("1/2"), r("3/4"), tc.parse_class("(23)").unwrap()),
        ])
        .unwrap();
        let merged = collide(&column, &[r("1/2")], &[r("1/2"), r("1/2")], &tc).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(
            merged.points()[0].label,
            Label::Fine(tc.parse_class("(12).(23)").unwrap())
        );
    }

    #[test]
    fn group_actions() {
        let pair = fixtures::trans3_s3();
        let tc = complete(&pair.pmq, 2).unwrap();
        let g = |s: &str| pair.group.elem(s).unwrap();
        let sites = vec![(r("0"), r("1/2")), (r("1"), r("1/2"))];
        let c = Configuration::new(
            sites,
            vec![
                Point::coarse(r("0"), r("1/2"), g("()")),
                Point::fine(r("1/2"), r("1/3"), tc.parse_class("(12)").unwrap()),
                Point::coarse(r("1"), r("1/2"), g("(13)")),
            ],
        )
        .unwrap();
        let conj = conj_global(&c, g("(23)"), &pair, &tc).unwrap();
        assert_eq!(
            conj.points()[1].label,
            Label::Fine(tc.parse_class("(13)").unwrap())
        );
        assert_eq!(
            omega(&conj, &pair, &tc),
            pair.group.conj(omega(&c, &pair, &tc), g("(23)"))
        );

        let left = act_left(&c, g("(123)"), &pair).unwrap();
        assert_eq!(
            omega(&left, &pair, &tc),
            pair.group.mul(g("(123)"), omega(&c, &pair, &tc))
        );
        let right = act_right(&c, g("(12)"), &pair).unwrap();
        assert_eq!(
            omega(&right, &pair, &tc),
            pair.group.mul(omega(&c, &pair, &tc), g("(12)"))
        );
        assert_eq!(
            act_left(&act_right(&c, g("(12)"), &pair).unwrap(), g("(13)"), &pair).unwrap(),
            act_right(&act_left(&c, g("(13)"), &pair).unwrap(), g("(12)"), &pair).unwrap()
        );
        assert_eq!(act_left(&c, g("()"), &pair).unwrap(), c);

        let fine_left = Configuration::fine(vec![Point::fine(
            r("1/2"),
            r("1/2"),
            tc.parse_class("(12)").unwrap(),
        )])
        .unwrap();
        assert!(matches!(
            act_left(&fine_left, g("(12)"), &pair),
            Err(Error::NoBasePoint(_))
        ));
    }

    #[test]
    fn reduction() {
        let tc = complete(&fixtures::free1(), 1).unwrap();
        let a = tc.parse_class("a").unwrap();
        let c = Configuration::fine(vec![
            Point::fine(r("1/4"), r("1/2"), a),
            Point::fine(r("1/2"), r("1/2"), tc.unit()),
            Point::fine(r("3/4"), r("1/2"), a),
        ])
        .unwrap();
        assert!(!is_reduced(&c, &tc));
        let red = reduce(&c, &tc);
        assert_eq!(red.len(), 2);
        assert!(is_reduced(&red, &tc));
        assert_eq!(reduce(&red, &tc), red);
    }

    #[test]
    fn neighbourhoods() {
        let pair = fixtures::free1_pair();
        let tc = complete(&pair.pmq, 2).unwrap();
        let a = tc.parse_class("a").unwrap();
        let aa = tc.parse_class("a.a").unwrap();
        let cov = RectCovering {
            rects: vec![Rect::new(r("1/4"), r("3/4"), r("1/4"), r("3/4"))],
        };
        let cand = Configuration::fine(vec![
            Point::fine(r("3/8"), r("1/2"), a),
            Point::fine(r("5/8"), r("1/2"), a),
        ])
        .unwrap();
        let base = Configuration::fine(vec![Point::fine(r("1/2"), r("1/2"), aa)]).unwrap();
        assert!(neighborhood_contains(&base, &cov, &cand, &pair, &tc).unwrap());
        assert!(neighborhood_contains(&base, &cov, &base, &pair, &tc).unwrap());
        let base_a = Configuration::fine(vec![Point::fine(r("1/2"), r("1/2"), a)]).unwrap();
        assert!(!neighborhood_contains(&base_a, &cov, &cand, &pair, &tc).unwrap());

        let overlapping = RectCovering {
            rects: vec![
                Rect::new(r("1/4"), r("3/4"), r("1/4"), r("3/4")),
                Rect::new(r("1/2"), r("7/8"), r("1/4"), r("3/4")),
            ],
        };
        assert!(matches!(
            neighborhood_contains(&base, &overlapping, &cand, &pair, &tc),
            Err(Error::CoveringNotStripSeparated(_))
        ));
        let missing = RectCovering {
            rects: vec![Rect::new(r("0"), r("1/8"), r("0"), r("1"))],
        };
        assert!(matches!(
            neighborhood_contains(&base, &missing, &cand, &pair, &tc),
            Err(Error::CoveringNotAdapted(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let pair = fixtures::trans3_s3();
        let tc = complete(&pair.pmq, 2).unwrap();
        let text = r#"{"sites":[["0","1/2"]],"points":[
            {"x":"0","y":"1/2","coarse":"(12)"},
            {"x":"3/8","y":"1/2","fine":"(12).(23)"},
            {"x":1,"y":"1/4","fine":"(13)"}]}"#;
        let json: ConfigJson = crate::io::parse_json(text).unwrap();
        let c = json.to_config(&tc, Some(&pair.group)).unwrap();
        assert_eq!(c.len(), 3);
        let back = ConfigJson::from_config(&c, &tc, Some(&pair.group));
        assert_eq!(back.to_config(&tc, Some(&pair.group)).unwrap(), c);
        let bad = r#"{"points":[{"x":"0","y":"1/2","coarse":"(12)"}]}"#;
        let json: ConfigJson = crate::io::parse_json(bad).unwrap();
        assert!(matches!(
            json.to_config(&tc, Some(&pair.group)),
            Err(Error::InvalidConfiguration(_))
        ));
    }
}
