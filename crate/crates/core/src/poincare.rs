//! Poincaré verdicts: per element `a ∈ Q₊`, whether the relative homology of
//! `(|Arr(Q)(a)|, |NAdm(Q)(a)|)` is the ring concentrated in degree `2h(a)`.

use rayon::prelude::*;

use crate::cells::enumerate_cells;
use crate::completion::{complete, TruncatedCompletion};
use crate::error::{Error, Result};
use crate::homology::{homology, HomologyResult, Ring};
use crate::pmq::{norms, sub_pmq_norm_le, Elem, PmqSpec};

pub use crate::pmq::intrinsic_norm_check;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementVerdict {
    pub element: String,
    pub norm: usize,
    pub relative: HomologyResult,
    pub absolute: HomologyResult,
    pub concentrated: Option<usize>,
    pub passes: bool,
    /// Absolute `H₀` has rank one.
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareReport {
    pub ring: Ring,
    /// Sorted by element symbol.
    pub elements: Vec<ElementVerdict>,
    pub overall: bool,
    pub norm_is_intrinsic: bool,
    pub intrinsic_witness: Option<[String; 3]>,
}

/// Non-unit elements, sorted by symbol so reports do not depend on the
/// element order of the presentation.
fn sorted_nonunit(spec: &PmqSpec) -> Vec<Elem> {
    let mut out: Vec<Elem> = spec.nonunit().collect();
    out.sort_by(|&a, &b| spec.symbol(a).cmp(spec.symbol(b)));
    out
}

fn check_input(spec: &PmqSpec) -> Result<Vec<usize>> {
    let h = norms(spec)?;
    if !spec.is_augmented() {
        return Err(Error::NotAugmented(
            "the unit has a non-trivial factorization".into(),
        ));
    }
    Ok(h)
}

fn verdict(tc: &TruncatedCompletion, a: Elem, ring: Ring) -> Result<ElementVerdict> {
    let id = tc.element(a)?;
    let norm = tc.norm(id);
    let cells = enumerate_cells(tc, id)?;
    let relative = homology(tc, &cells, true, ring)?;
    let absolute = homology(tc, &cells, false, ring)?;
    let concentrated = relative.concentrated_degree();
    Ok(ElementVerdict {
        element: tc.base().symbol(a).to_string(),
        norm,
        passes: concentrated == Some(2 * norm),
        connected: absolute.rank(0) == 1,
        concentrated,
        relative,
        absolute,
    })
}

pub fn poincare_report(spec: &PmqSpec, ring: Ring) -> Result<PoincareReport> {
    let h = check_input(spec)?;
    let witness = intrinsic_norm_check(spec)?.err();
    let elems = sorted_nonunit(spec);
    let bound = elems.iter().map(|&a| h[a]).max().unwrap_or(0);
    let tc = complete(spec, bound)?;
    let elements = elems
        .par_iter()
        .map(|&a| verdict(&tc, a, ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(PoincareReport {
        ring,
        overall: elements.iter().all(|v| v.passes),
        norm_is_intrinsic: witness.is_none(),
        intrinsic_witness: witness,
        elements,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoconnectRow {
    pub element: String,
    pub norm: usize,
    /// Top relative rank over `Q_{≤1}`, summed over the classes mapping to `a`.
    pub sub_rank: usize,
    pub rank: usize,
    pub equal: bool,
}

fn top_rank(tc: &TruncatedCompletion, id: crate::completion::ClassId, ring: Ring) -> Result<usize> {
    let cells = enumerate_cells(tc, id)?;
    Ok(homology(tc, &cells, true, ring)?.rank(2 * tc.norm(id)))
}

/// Compares `rank H_{2h(a)}` of the relative complex for `Q` against the one
/// for the sub-PMQ of norm at most one.
pub fn coconnectivity_probe(spec: &PmqSpec, ring: Ring) -> Result<Vec<CoconnectRow>> {
    let h = check_input(spec)?;
    let sub = sub_pmq_norm_le(spec, 1)?;
    let elems = sorted_nonunit(spec);
    let bound = elems.iter().map(|&a| h[a]).max().unwrap_or(0);
    let tc = complete(spec, bound)?;
    let sub_tc = complete(&sub, bound)?;

    elems
        .par_iter()
        .map(|&a| {
            let id = tc.element(a)?;
            let norm = h[a];
            let rank = top_rank(&tc, id, ring)?;
            let mut sub_rank = 0;
            for class in sub_tc.classes().iter().filter(|c| c.norm == norm) {
                let word: Vec<Elem> = class
                    .word
                    .iter()
                    .map(|&x| spec.elem(sub.symbol(x)))
                    .collect::<Result<_>>()?;
                if tc.class_of(&word)? == id {
                    sub_rank += top_rank(&sub_tc, class.id, ring)?;
                }
            }
            Ok(CoconnectRow {
                element: spec.symbol(a).to_string(),
                norm,
                sub_rank,
                rank,
                equal: sub_rank == rank,
            })
        })
        .collect()
}
