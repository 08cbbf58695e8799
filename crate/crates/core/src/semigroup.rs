//! Good semigroups and good semigroup ideals, stored by their small elements.
//!
//! A value set `E ⊆ Z^p` with minimum `μ` and conductor `γ_E` is kept as the
//! finite set `E ∩ [μ, γ_E]`. Membership of an arbitrary point `v` is
//! `v ≥ μ` and `inf(v, γ_E)` small. Every instance can be re-checked against
//! the axioms with [`GoodIdeal::validate`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{IndexSet, Point, Window};
use crate::scan;

/// Upper bound on the number of lattice points any internal window may hold.
pub const MAX_WINDOW_POINTS: usize = 1 << 24;

pub(crate) fn checked_window(lo: Point, hi: Point) -> Result<Window> {
    let w = Window::new(lo, hi)?;
    if w.len() > MAX_WINDOW_POINTS {
        return Err(Error::Window(format!(
            "[{lo}, {hi}] holds more than {MAX_WINDOW_POINTS} points"
        )));
    }
    Ok(w)
}

/// Dense membership table over `[μ, γ_E]` plus the sorted small elements.
#[derive(Clone)]
pub struct ValueSet {
    window: Window,
    bits: Vec<bool>,
    small: Vec<Point>,
}

impl ValueSet {
    /// Builds from explicit small elements. Every element must lie in `[mu, conductor]`.
    pub fn from_parts(
        mu: Point,
        conductor: Point,
        small: impl IntoIterator<Item = Point>,
    ) -> Result<Self> {
        let window = checked_window(mu, conductor)
            .map_err(|e| Error::Malformed(format!("minimum/conductor: {e}")))?;
        let mut bits = vec![false; window.len()];
        let mut sorted = BTreeSet::new();
        for v in small {
            if v.dim() != mu.dim() {
                return Err(Error::Malformed(format!(
                    "small element {v} has dimension {}, expected {}",
                    v.dim(),
                    mu.dim()
                )));
            }
            if !window.contains(&v) {
                return Err(Error::Malformed(format!(
                    "small element {v} outside [{mu}, {conductor}]"
                )));
            }
            bits[window.index_of(&v)] = true;
            sorted.insert(v);
        }
        Ok(ValueSet {
            window,
            bits,
            small: sorted.into_iter().collect(),
        })
    }

    /// Builds the set `{v : member(v)}` described on `[lo, hi]`, assuming
    /// `member` is invariant under clamping to `hi` (so `hi + N^p` belongs).
    /// The minimum is the componentwise minimum of the members and the
    /// conductor the least corner whose upper orthant is contained.
    pub fn from_membership<F>(lo: Point, hi: Point, member: F) -> Result<Self>
    where
        F: Fn(&Point) -> bool + Sync + Send,
    {
        let window = checked_window(lo, hi)?;
        let flags = scan::map_window(&window, |v| member(v));
        if !flags[window.len() - 1] {
            return Err(Error::Malformed(format!(
                "upper corner {hi} is not a member"
            )));
        }
        let lookup = |v: &Point| flags[window.index_of(&v.meet(&hi))];
        let mut mu = hi;
        for (k, &f) in flags.iter().enumerate() {
            if f {
                mu = mu.meet(&window.point_at(k));
            }
        }
        let conductor = least_conductor(&window, &lookup);
        let members = flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(k, _)| window.point_at(k))
            .filter(|v| v.le(&conductor));
        ValueSet::from_parts(mu, conductor, members)
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    pub fn mu(&self) -> Point {
        self.window.lo()
    }

    pub fn conductor(&self) -> Point {
        self.window.hi()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Sorted lexicographically.
    pub fn small(&self) -> &[Point] {
        &self.small
    }

    #[inline]
    pub fn contains(&self, v: &Point) -> bool {
        if v.dim() != self.dim() || !self.window.lo().le(v) {
            return false;
        }
        self.bits[self.window.index_of(&v.meet(&self.window.hi()))]
    }

    /// Membership of a point already known to lie in `[μ, γ_E]`.
    #[inline]
    pub(crate) fn contains_small(&self, v: &Point) -> bool {
        self.bits[self.window.index_of(v)]
    }
}

impl PartialEq for ValueSet {
    fn eq(&self, other: &Self) -> bool {
        self.window == other.window && self.small == other.small
    }
}

impl Eq for ValueSet {}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValueSet")
            .field("mu", &self.mu())
            .field("conductor", &self.conductor())
            .field("small", &self.small)
            .finish()
    }
}

/// Least `c` in `window` with `c + N^p` inside the set, found by lowering
/// one coordinate at a time while the newly exposed face stays inside.
/// Assumes the top corner's orthant is inside; returns a minimal such corner,
/// which is the least one whenever the set has a conductor.
pub(crate) fn least_conductor(window: &Window, member: &(dyn Fn(&Point) -> bool + Sync)) -> Point {
    let lo = window.lo();
    let hi = window.hi();
    let mut c = hi;
    loop {
        let mut changed = false;
        for i in 0..c.dim() {
            while c.get(i) > lo.get(i) {
                let face_lo = c.with(i, c.get(i) - 1);
                let face_hi = hi.with(i, c.get(i) - 1);
                let face = Window::new(face_lo, face_hi).expect("face inside window");
                if face.iter().all(|v| member(&v)) {
                    c = face_lo;
                    changed = true;
                } else {
                    break;
                }
            }
        }
        if !changed {
            return c;
        }
    }
}

/// A good semigroup `S ⊆ N^p`: the values of a ring, stored by its small elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GoodSemigroup {
    set: ValueSet,
}

impl GoodSemigroup {
    /// Structural construction; the axioms are checked by [`GoodSemigroup::validate`].
    pub fn new(gamma: Point, small: impl IntoIterator<Item = Point>) -> Result<Self> {
        let zero = Point::zero(gamma.dim());
        if !zero.le(&gamma) {
            return Err(Error::Malformed(format!(
                "conductor {gamma} has a negative coordinate"
            )));
        }
        Ok(GoodSemigroup {
            set: ValueSet::from_parts(zero, gamma, small)?,
        })
    }

    pub(crate) fn from_value_set(set: ValueSet) -> Result<Self> {
        if set.mu() != Point::zero(set.dim()) {
            return Err(Error::Malformed(format!(
                "semigroup minimum is {} rather than the origin",
                set.mu()
            )));
        }
        Ok(GoodSemigroup { set })
    }

    /// `N^p`: conductor at the origin.
    pub fn full_lattice(dim: usize) -> Self {
        let z = Point::zero(dim);
        GoodSemigroup::new(z, [z]).expect("origin window")
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn gamma(&self) -> Point {
        self.set.conductor()
    }

    pub fn small(&self) -> &[Point] {
        self.set.small()
    }

    pub fn value_set(&self) -> &ValueSet {
        &self.set
    }

    #[inline]
    pub fn contains(&self, v: &Point) -> bool {
        self.set.contains(v)
    }

    /// No nonzero element has a zero coordinate, as for the values of a local ring.
    pub fn is_local(&self) -> bool {
        let z = Point::zero(self.dim());
        self.small()
            .iter()
            .all(|v| *v == z || v.coords().iter().all(|&c| c > 0))
    }

    /// The semigroup viewed as an ideal over itself.
    pub fn as_ideal(self: &Arc<Self>) -> GoodIdeal {
        GoodIdeal {
            ambient: Arc::clone(self),
            set: self.set.clone(),
        }
    }

    pub fn validate(self: &Arc<Self>) -> ValidationReport {
        let mut report = self.as_ideal().validate();
        let z = Point::zero(self.dim());
        if !self.set.contains(&z) {
            report.violations.push(Violation::MissingOrigin);
        }
        report
    }

    /// Image of `S` under the coordinate projection onto `idx`.
    pub fn projection(self: &Arc<Self>, idx: IndexSet) -> Result<GoodSemigroup> {
        let projected = project_value_set(&self.set, idx)?;
        GoodSemigroup::from_value_set(projected)
    }
}

/// A good semigroup ideal over a mandatory ambient semigroup.
#[derive(Clone)]
pub struct GoodIdeal {
    ambient: Arc<GoodSemigroup>,
    set: ValueSet,
}

impl GoodIdeal {
    pub fn new(
        ambient: Arc<GoodSemigroup>,
        mu: Point,
        gamma_e: Point,
        small: impl IntoIterator<Item = Point>,
    ) -> Result<Self> {
        if mu.dim() != ambient.dim() {
            return Err(Error::Dimension(format!(
                "ideal dimension {} differs from ambient dimension {}",
                mu.dim(),
                ambient.dim()
            )));
        }
        Ok(GoodIdeal {
            ambient,
            set: ValueSet::from_parts(mu, gamma_e, small)?,
        })
    }

    pub fn from_value_set(ambient: Arc<GoodSemigroup>, set: ValueSet) -> Result<Self> {
        if set.dim() != ambient.dim() {
            return Err(Error::Dimension(format!(
                "ideal dimension {} differs from ambient dimension {}",
                set.dim(),
                ambient.dim()
            )));
        }
        Ok(GoodIdeal { ambient, set })
    }

    /// `c + N^p`.
    pub fn orthant(ambient: Arc<GoodSemigroup>, c: Point) -> Result<Self> {
        GoodIdeal::new(ambient, c, c, [c])
    }

    pub fn ambient(&self) -> &Arc<GoodSemigroup> {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn mu(&self) -> Point {
        self.set.mu()
    }

    pub fn gamma_e(&self) -> Point {
        self.set.conductor()
    }

    pub fn small(&self) -> &[Point] {
        self.set.small()
    }

    pub fn value_set(&self) -> &ValueSet {
        &self.set
    }

    /// `v ≥ μ` and `inf(v, γ_E)` is a small element.
    #[inline]
    pub fn contains(&self, v: &Point) -> bool {
        self.set.contains(v)
    }

    /// Same ambient, same minimum, conductor and small elements.
    pub fn equals(&self, other: &GoodIdeal) -> Result<bool> {
        if !Arc::ptr_eq(&self.ambient, &other.ambient) && *self.ambient != *other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.set == other.set)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_ideal(self)
    }

    /// `pr_J(E)` as an ideal over `pr_J(S)`.
    pub fn projection(&self, idx: IndexSet) -> Result<GoodIdeal> {
        let ambient = Arc::new(self.ambient.projection(idx)?);
        let set = project_value_set(&self.set, idx)?;
        GoodIdeal::from_value_set(ambient, set)
    }

    /// `E + t`, an ideal over the same ambient.
    pub fn translate(&self, t: &Point) -> Result<GoodIdeal> {
        let mu = self.mu().checked_add(t)?;
        let gamma = self.gamma_e().checked_add(t)?;
        let small: Vec<Point> = self.small().iter().map(|v| v.add(t)).collect();
        GoodIdeal::new(Arc::clone(&self.ambient), mu, gamma, small)
    }

    /// Members of `E` inside an arbitrary window, lexicographic.
    pub fn members_in(&self, window: &Window) -> Vec<Point> {
        scan::filter_window(window, |v| self.contains(v))
    }
}

impl fmt::Debug for GoodIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GoodIdeal")
            .field("ambient_gamma", &self.ambient.gamma())
            .field("mu", &self.mu())
            .field("gamma_e", &self.gamma_e())
            .field("small", &self.small())
            .finish()
    }
}

fn project_value_set(set: &ValueSet, idx: IndexSet) -> Result<ValueSet> {
    if idx.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let dim = set.dim();
    if idx.iter().any(|i| i >= dim) {
        return Err(Error::Dimension(format!(
            "index set {idx:?} exceeds dimension {dim}"
        )));
    }
    let mu = set.mu();
    let gamma = set.conductor();
    let free = idx.complement(dim);
    let lo = mu.project(&idx);
    let hi = gamma.project(&idx);
    let kept: Vec<usize> = idx.to_vec();
    let freed: Vec<usize> = free.to_vec();
    let free_window = (!freed.is_empty())
        .then(|| Window::new(mu.project(&free), gamma.project(&free)).expect("free window"));
    // A lift needs its free coordinates only in [μ_i, γ_E,i]: raising one above
    // γ_E,i changes nothing under clamping.
    let has_lift = |u: &Point| -> bool {
        let mut lift = mu;
        for (k, &i) in kept.iter().enumerate() {
            lift.set(i, u.get(k));
        }
        let Some(free_window) = free_window else {
            return set.contains(&lift);
        };
        free_window.iter().any(|f| {
            let mut l = lift;
            for (k, &i) in freed.iter().enumerate() {
                l.set(i, f.get(k));
            }
            set.contains(&l)
        })
    };
    ValueSet::from_membership(lo, hi, has_lift)
}

/// One broken axiom, with the witness that breaks it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Violation {
    /// `inf(a, b)` of two members is missing.
    InfClosure { a: Point, b: Point, inf: Point },
    /// No coordinate-raising witness for `(alpha, beta, index)`; `index` is 1-based.
    CoordinateRaising {
        alpha: Point,
        beta: Point,
        index: usize,
    },
    /// `s + v` missing for `s ∈ S`, `v ∈ E`.
    SemigroupAction { s: Point, v: Point, sum: Point },
    /// `γ_E − e_index` is a member, so the stored conductor is not the least one.
    ConductorMinimality { index: usize, point: Point },
    /// The stored conductor is not a small element.
    ConductorMissing { gamma_e: Point },
    /// The stored minimum is not the componentwise minimum of the members.
    Minimum { stored: Point, actual: Point },
    /// The stored minimum is not a member.
    MinimumMissing { mu: Point },
    /// A semigroup without the origin.
    MissingOrigin,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn validate_ideal(e: &GoodIdeal) -> ValidationReport {
    let set = &e.set;
    let small = set.small();
    let dim = set.dim();
    let mu = set.mu();
    let gamma = set.conductor();
    let mut violations = Vec::new();

    // (e) minimum
    if !set.contains(&mu) {
        violations.push(Violation::MinimumMissing { mu });
    }
    if let Some(first) = small.first() {
        let actual = small.iter().fold(*first, |acc, v| acc.meet(v));
        if actual != mu {
            violations.push(Violation::Minimum { stored: mu, actual });
        }
    }
    if !set.contains_small(&gamma) {
        violations.push(Violation::ConductorMissing { gamma_e: gamma });
    }

    // (a) inf-closure
    if let Some(v) = scan::find_map_first(small, |a| {
        small
            .iter()
            .filter(|b| *b > a)
            .find(|b| !set.contains_small(&a.meet(b)))
            .map(|b| Violation::InfClosure {
                a: *a,
                b: *b,
                inf: a.meet(b),
            })
    }) {
        violations.push(v);
    }

    // (b) coordinate raising
    if let Some(v) = scan::find_map_first(small, |a| {
        small.iter().filter(|b| *b > a).find_map(|b| {
            (0..dim)
                .filter(|&i| a.get(i) == b.get(i))
                .find(|&i| !has_raising_witness(set, a, b, i))
                .map(|i| Violation::CoordinateRaising {
                    alpha: *a,
                    beta: *b,
                    index: i + 1,
                })
        })
    }) {
        violations.push(v);
    }

    // (c) semigroup action; s beyond max(γ_S, γ_E − μ) behaves like its clamp
    let ambient = &e.ambient;
    let reach = ambient.gamma().join(&gamma.sub(&mu)).join(&Point::zero(dim));
    match checked_window(Point::zero(dim), reach) {
        Ok(sw) => {
            let s_members: Vec<Point> = sw.iter().filter(|s| ambient.contains(s)).collect();
            if let Some(v) = scan::find_map_first(&s_members, |s| {
                small.iter().find_map(|v| {
                    let sum = s.add(v);
                    (!set.contains(&sum)).then_some(Violation::SemigroupAction {
                        s: *s,
                        v: *v,
                        sum,
                    })
                })
            }) {
                violations.push(v);
            }
        }
        Err(_) => violations.push(Violation::SemigroupAction {
            s: reach,
            v: mu,
            sum: reach.add(&mu),
        }),
    }

    // (d) conductor minimality
    for i in 0..dim {
        let below = gamma.with(i, gamma.get(i) - 1);
        if set.contains(&below) {
            violations.push(Violation::ConductorMinimality {
                index: i + 1,
                point: below,
            });
        }
    }

    ValidationReport { violations }
}

/// Searches `[inf(α,β), sup(γ_E, α+1̲, β+1̲)]` for `η` with `η_i > α_i`,
/// `η_j = min(α_j, β_j)` where they differ and `η_j ≥ α_j` elsewhere.
fn has_raising_witness(set: &ValueSet, a: &Point, b: &Point, i: usize) -> bool {
    let gamma = set.conductor();
    let top = gamma.join(&a.shift(1)).join(&b.shift(1));
    let mut lo = a.meet(b);
    let mut hi = top;
    for j in 0..a.dim() {
        if j == i {
            lo.set(j, a.get(j) + 1);
        } else if a.get(j) != b.get(j) {
            hi.set(j, lo.get(j));
        }
    }
    exists_in_box_descending(lo, hi, &|v| set.contains(v))
}

/// Whether some point of `[lo, hi]` satisfies `pred`; tries high points first.
pub(crate) fn exists_in_box_descending(
    lo: Point,
    hi: Point,
    pred: &dyn Fn(&Point) -> bool,
) -> bool {
    if !lo.le(&hi) {
        return false;
    }
    let dim = lo.dim();
    let mut v = hi;
    loop {
        if pred(&v) {
            return true;
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if v.get(i) > lo.get(i) {
                v.set(i, v.get(i) - 1);
                break;
            }
            v.set(i, hi.get(i));
        }
    }
}
