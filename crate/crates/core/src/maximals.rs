//! Δ_J-emptiness, the three kinds of maximals, and the symmetry between
//! relative maximals of `E` and absolute maximals of its dual.

use serde::Serialize;

use crate::duality;
use crate::error::{Error, Result};
use crate::lattice::{IndexSet, Point};
use crate::scan;
use crate::semigroup::{exists_in_box_descending, GoodIdeal};

/// `Δ_J(α, E) = ∅`.
///
/// Any member of `Δ_J(α, E)` stays in it after taking `inf` with
/// `sup(γ_E, α + 1̲)`, so the search is confined to `[α, sup(γ_E, α + 1̲)]`.
pub fn delta_empty(e: &GoodIdeal, alpha: &Point, j: IndexSet) -> Result<bool> {
    if j.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if alpha.dim() != e.dim() || j.iter().any(|i| i >= e.dim()) {
        return Err(Error::Dimension(format!(
            "point {alpha} / index set {j:?} do not match dimension {}",
            e.dim()
        )));
    }
    Ok(delta_empty_unchecked(e, alpha, j))
}

pub(crate) fn delta_empty_unchecked(e: &GoodIdeal, alpha: &Point, j: IndexSet) -> bool {
    let gamma = e.gamma_e();
    let mut lo = *alpha;
    let mut hi = *alpha;
    for k in 0..alpha.dim() {
        if !j.contains(k) {
            lo.set(k, alpha.get(k) + 1);
            hi.set(k, gamma.get(k).max(alpha.get(k) + 1));
        }
    }
    !exists_in_box_descending(lo, hi, &|v| e.contains(v))
}

/// `Δ(α, E) = ∅`, i.e. every singleton `Δ_i` is empty.
pub fn delta_union_empty(e: &GoodIdeal, alpha: &Point) -> bool {
    (0..e.dim()).all(|i| delta_empty_unchecked(e, alpha, IndexSet::single(i)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Kinds {
    pub maximal: bool,
    pub absolute: bool,
    pub relative: bool,
}

/// Classification of a single point; all flags false for non-members.
pub fn kinds_of(e: &GoodIdeal, alpha: &Point) -> Kinds {
    if !e.contains(alpha) {
        return Kinds {
            maximal: false,
            absolute: false,
            relative: false,
        };
    }
    let dim = e.dim();
    let maximal = delta_union_empty(e, alpha);
    if !maximal {
        return Kinds {
            maximal,
            absolute: false,
            relative: false,
        };
    }
    let absolute = IndexSet::proper_subsets(dim)
        .filter(|j| j.len() >= 2)
        .all(|j| delta_empty_unchecked(e, alpha, j));
    let relative = IndexSet::nonempty_subsets(dim)
        .filter(|j| j.len() >= 2)
        .all(|j| !delta_empty_unchecked(e, alpha, j));
    Kinds {
        maximal,
        absolute,
        relative,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalPair {
    pub alpha: Point,
    /// `γ − α − 1̲` with `γ` the ambient conductor.
    pub beta: Point,
    pub kinds: Kinds,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MaximalsReport {
    pub maximals: Vec<Point>,
    pub absolute: Vec<Point>,
    pub relative: Vec<Point>,
    pub pairs: Vec<MaximalPair>,
}

/// Scans `[μ, γ_E]` and classifies every maximal. Lists are lexicographic.
pub fn classify_maximals(e: &GoodIdeal) -> MaximalsReport {
    let gamma = e.ambient().gamma();
    let gamma_e = e.gamma_e();
    let classified: Vec<(Point, Kinds)> = scan::map_slice(e.small(), |a| (*a, kinds_of(e, a)))
        .into_iter()
        .filter(|(_, k)| k.maximal)
        .collect();
    let mut report = MaximalsReport::default();
    for (alpha, kinds) in classified {
        // Maximals lie strictly below the conductor.
        assert!(
            alpha.lt_all(&gamma_e),
            "maximal {alpha} not strictly below conductor {gamma_e}"
        );
        report.maximals.push(alpha);
        if kinds.absolute {
            report.absolute.push(alpha);
        }
        if kinds.relative {
            report.relative.push(alpha);
        }
        report.pairs.push(MaximalPair {
            alpha,
            beta: gamma.sub(&alpha).shift(-1),
            kinds,
        });
    }
    report
}

/// `Δ_i(α,E) = ∅` and `Δ_{i,j}(α,E) ≠ ∅` for every `j ≠ i`; when this holds
/// `α` is a relative maximal even if its membership was not known.
pub fn is_relative_maximal_by_criterion(e: &GoodIdeal, alpha: &Point, i: usize) -> Result<bool> {
    let dim = e.dim();
    if i >= dim || alpha.dim() != dim {
        return Err(Error::Dimension(format!(
            "index {} / point {alpha} do not match dimension {dim}",
            i + 1
        )));
    }
    if !delta_empty_unchecked(e, alpha, IndexSet::single(i)) {
        return Ok(false);
    }
    Ok((0..dim)
        .filter(|&j| j != i)
        .all(|j| !delta_empty_unchecked(e, alpha, IndexSet::pair(i, j))))
}

/// One pair `α ∈ E`, `β = γ − α − 1̲ ∈ E^∨` checked against the symmetry theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub alpha: Point,
    pub beta: Point,
    pub alpha_relative: bool,
    pub beta_absolute: bool,
    /// `β` absolute in `E^∨` ⇔ `α` relative in `E`.
    pub holds: bool,
    /// `α` relative ⇒ `β` absolute.
    pub corollary_holds: bool,
}

/// A point where `Δ_J(α,E) ≠ ∅` for all `|J| ≥ 2` but some proper `Δ_A(β,E^∨)` is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingFailure {
    pub alpha: Point,
    pub beta: Point,
    pub index_set: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub verdicts: Vec<Verdict>,
    /// Members `α` whose reflection is outside the dual; the theorem says nothing there.
    pub skipped: usize,
    pub pairing_failures: Vec<PairingFailure>,
}

impl SymmetryReport {
    pub fn violations(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|v| !v.holds || !v.corollary_holds)
            .count()
            + self.pairing_failures.len()
    }

    pub fn holds(&self) -> bool {
        self.violations() == 0
    }
}

/// Checks every `α ∈ E ∩ [μ, γ_E]` whose reflection lies in the dual.
/// Members outside `[μ, γ_E]` reflect below the dual's minimum.
pub fn symmetry_check(e: &GoodIdeal) -> Result<SymmetryReport> {
    let d = duality::dual(e)?.dual;
    Ok(symmetry_check_with_dual(e, &d))
}

pub fn symmetry_check_with_dual(e: &GoodIdeal, d: &GoodIdeal) -> SymmetryReport {
    let dim = e.dim();
    let gamma = e.ambient().gamma();
    let rows = scan::map_slice(e.small(), |alpha| {
        let beta = gamma.sub(alpha).shift(-1);
        let all_pairs_nonempty = IndexSet::nonempty_subsets(dim)
            .filter(|j| j.len() >= 2)
            .all(|j| !delta_empty_unchecked(e, alpha, j));
        let pairing_failure = if all_pairs_nonempty {
            IndexSet::proper_subsets(dim)
                .find(|a| !delta_empty_unchecked(d, &beta, *a))
                .map(|a| PairingFailure {
                    alpha: *alpha,
                    beta,
                    index_set: a.iter().map(|i| i + 1).collect(),
                })
        } else {
            None
        };
        let verdict = d.contains(&beta).then(|| {
            let alpha_relative = kinds_of(e, alpha).relative;
            let beta_absolute = kinds_of(d, &beta).absolute;
            Verdict {
                alpha: *alpha,
                beta,
                alpha_relative,
                beta_absolute,
                holds: alpha_relative == beta_absolute,
                corollary_holds: !alpha_relative || beta_absolute,
            }
        });
        (verdict, pairing_failure)
    });
    let mut report = SymmetryReport::default();
    for (verdict, failure) in rows {
        match verdict {
            Some(v) => report.verdicts.push(v),
            None => report.skipped += 1,
        }
        report.pairing_failures.extend(failure);
    }
    report
}

/// Relative maximals of `E` read off the absolute maximals of `E^∨`.
pub fn relmax_from_dual(e: &GoodIdeal) -> Result<Vec<Point>> {
    let d = duality::dual(e)?.dual;
    Ok(relmax_from_absolute(e, &classify_maximals(&d).absolute))
}

pub(crate) fn relmax_from_absolute(e: &GoodIdeal, dual_absolute: &[Point]) -> Vec<Point> {
    let shift = e.ambient().gamma().shift(-1);
    let mut out: Vec<Point> = dual_absolute.iter().map(|b| shift.sub(b)).collect();
    out.sort();
    out
}
