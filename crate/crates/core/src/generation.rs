//! Membership from codimension-one projections plus relative maximals,
//! reconstruction of `E` from that data, and the `F`/`F′` sets built from
//! irreducible absolute maximals.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::duality;
use crate::error::{Error, Result};
use crate::lattice::{in_delta_unchecked, IndexSet, Point, Window};
use crate::maximals::{classify_maximals, kinds_of};
use crate::semigroup::{GoodIdeal, GoodSemigroup, ValueSet};
use crate::stdbasis::{irreducible_absolute_maximals, semigroup_irreducible_absolute_maximals};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Member,
    NonMember,
    /// Some `pr_J(v) ∉ pr_J(E)`; the theorem gives no verdict.
    PreconditionUnmet,
}

impl Membership {
    pub fn is_member(self) -> bool {
        self == Membership::Member
    }
}

#[derive(Clone, Debug)]
pub struct GenerationInput {
    /// `pr_J(E)` for `J` omitting coordinate `i`, indexed by `i`.
    pub projections: Vec<(IndexSet, GoodIdeal)>,
    pub relmax: Vec<Point>,
}

impl GenerationInput {
    pub fn new(projections: Vec<(IndexSet, GoodIdeal)>, relmax: Vec<Point>) -> Result<Self> {
        let p = projections.len();
        if p < 2 {
            return Err(Error::Precondition(format!(
                "generation needs p ≥ 2 projections, got {p}"
            )));
        }
        for (i, (j, proj)) in projections.iter().enumerate() {
            if *j != IndexSet::all_but(p, i) {
                return Err(Error::Malformed(format!(
                    "projection {} must omit coordinate {}",
                    i + 1,
                    i + 1
                )));
            }
            if proj.dim() != p - 1 {
                return Err(Error::Dimension(format!(
                    "projection {} has dimension {}, expected {}",
                    i + 1,
                    proj.dim(),
                    p - 1
                )));
            }
        }
        if let Some(a) = relmax.iter().find(|a| a.dim() != p) {
            return Err(Error::Dimension(format!("relative maximal {a} is not in dimension {p}")));
        }
        Ok(GenerationInput {
            projections,
            relmax,
        })
    }

    /// Projections and directly classified relative maximals of `E`.
    pub fn of(e: &GoodIdeal) -> Result<Self> {
        let p = e.dim();
        if p < 2 {
            return Err(Error::Precondition("generation needs p ≥ 2".into()));
        }
        let projections = (0..p)
            .map(|i| {
                let j = IndexSet::all_but(p, i);
                Ok((j, e.projection(j)?))
            })
            .collect::<Result<_>>()?;
        Self::new(projections, classify_maximals(e).relative)
    }

    pub fn dim(&self) -> usize {
        self.projections.len()
    }

    pub fn projections_pass(&self, v: &Point) -> bool {
        self.projections
            .iter()
            .all(|(j, proj)| proj.contains(&v.project(j)))
    }

    /// `[lo, hi]` with `v ∈ E` for every `v ≥ hi`, derived from the inputs:
    /// above every projected conductor and strictly above every relative
    /// maximal no exclusion applies. `lo` is the lift of the projected minima.
    pub fn default_window(&self) -> Result<Window> {
        let p = self.dim();
        let mut lo = vec![i64::MAX; p];
        let mut hi = vec![i64::MIN; p];
        for (j, proj) in &self.projections {
            for (slot, i) in j.iter().enumerate() {
                lo[i] = lo[i].min(proj.mu().get(slot));
                hi[i] = hi[i].max(proj.gamma_e().get(slot));
            }
        }
        for a in &self.relmax {
            for (i, h) in hi.iter_mut().enumerate() {
                *h = (*h).max(a.get(i) + 1);
            }
        }
        Window::new(Point::new(&lo)?, Point::new(&hi)?)
    }
}

fn excluded_by(v: &Point, points: &[Point]) -> bool {
    points.iter().any(|a| in_delta_unchecked(v, a))
}

pub fn membership_by_generation(v: &Point, g: &GenerationInput) -> Membership {
    if v.dim() != g.dim() || !g.projections_pass(v) {
        Membership::PreconditionUnmet
    } else if excluded_by(v, &g.relmax) {
        Membership::NonMember
    } else {
        Membership::Member
    }
}

/// Rebuilds `E` on `window`, whose top corner must lie in the conductor
/// orthant. Points failing the projection test count as non-members.
pub fn reconstruct(
    g: &GenerationInput,
    ambient: Arc<GoodSemigroup>,
    window: &Window,
) -> Result<GoodIdeal> {
    if ambient.dim() != g.dim() {
        return Err(Error::Dimension(format!(
            "ambient dimension {} differs from input dimension {}",
            ambient.dim(),
            g.dim()
        )));
    }
    let set = ValueSet::from_membership(window.lo(), window.hi(), |v| {
        membership_by_generation(v, g).is_member()
    })
    .map_err(|err| Error::Reconstruction(err.to_string()))?;
    let e = GoodIdeal::from_value_set(ambient, set)?;
    let report = e.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::Reconstruction(format!("{v:?}")));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FPrimeSet {
    pub f: Vec<Point>,
    pub fprime: Vec<Point>,
    pub nu_dual: Point,
    /// Irreducible absolute maximals `g_j` of the ambient semigroup.
    pub generators: Vec<Point>,
    /// Irreducible absolute maximals `β_i` of the dual.
    pub dual_irreducible: Vec<Point>,
}

/// `F = {Σ λ_j g_j + β_i ≤ ν − 1̲}` with `ν = γ_{E^∨}` and `F′ = γ − 1̲ − F`.
pub fn build_fprime(e: &GoodIdeal) -> Result<FPrimeSet> {
    let d = duality::dual(e)?.dual;
    let nu_dual = d.gamma_e();
    let cap = nu_dual.shift(-1);
    let generators = semigroup_irreducible_absolute_maximals(e.ambient());
    let dual_irreducible = irreducible_absolute_maximals(&d);
    let zero = Point::zero(e.dim());
    let steps: Vec<Point> = generators.iter().filter(|g| **g != zero).copied().collect();

    let mut seen: BTreeSet<Point> = BTreeSet::new();
    let mut frontier: Vec<Point> = dual_irreducible.iter().filter(|b| Point::le(b, &cap)).copied().collect();
    while let Some(u) = frontier.pop() {
        if !seen.insert(u) {
            continue;
        }
        for g in &steps {
            let next = u.add(g);
            if next.le(&cap) && !seen.contains(&next) {
                frontier.push(next);
            }
        }
    }
    let f: Vec<Point> = seen.into_iter().collect();
    let reflect = e.ambient().gamma().shift(-1);
    let mut fprime: Vec<Point> = f.iter().map(|u| reflect.sub(u)).collect();
    fprime.sort();
    Ok(FPrimeSet {
        f,
        fprime,
        nu_dual,
        generators,
        dual_irreducible,
    })
}

pub fn membership_by_fprime(v: &Point, fp: &FPrimeSet, g: &GenerationInput) -> Membership {
    if v.dim() != g.dim() || !g.projections_pass(v) {
        Membership::PreconditionUnmet
    } else if excluded_by(v, &fp.fprime) {
        Membership::NonMember
    } else {
        Membership::Member
    }
}

/// A point where a membership rule and `contains` disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub point: Point,
    pub expected: bool,
    pub rule: &'static str,
}

/// Compares both membership rules with `contains` on every point of `window`
/// that passes the projection test.
pub fn check_generation(
    e: &GoodIdeal,
    g: &GenerationInput,
    fp: &FPrimeSet,
    window: &Window,
) -> Vec<Disagreement> {
    let mut out = Vec::new();
    for v in window.iter() {
        let by_gen = membership_by_generation(&v, g);
        if by_gen == Membership::PreconditionUnmet {
            continue;
        }
        let expected = e.contains(&v);
        if by_gen.is_member() != expected {
            out.push(Disagreement {
                point: v,
                expected,
                rule: "relative-maximals",
            });
        }
        if membership_by_fprime(&v, fp, g).is_member() != expected {
            out.push(Disagreement {
                point: v,
                expected,
                rule: "fprime",
            });
        }
    }
    out
}

/// Relative maximals of `E` missing from `F′`.
pub fn relmax_outside_fprime(g: &GenerationInput, fp: &FPrimeSet) -> Vec<Point> {
    g.relmax
        .iter()
        .filter(|a| fp.fprime.binary_search(a).is_err())
        .copied()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionFailure {
    pub v: Point,
    pub a: Point,
    pub b: Point,
}

/// Every split `v = a + b` (`a ∈ S`, `b ∈ E`) of an absolute maximal `v` of
/// `E` should have `a` absolute maximal in `S` and `b` absolute maximal in `E`.
pub fn decomposition_failures(e: &GoodIdeal) -> Vec<DecompositionFailure> {
    let s = e.ambient();
    let s_ideal = s.as_ideal();
    let zero = Point::zero(e.dim());
    let mut out = Vec::new();
    for v in classify_maximals(e).absolute {
        let Ok(window) = Window::new(zero, v.sub(&e.mu())) else {
            continue;
        };
        for a in window.iter() {
            let b = v.sub(&a);
            if !s.contains(&a) || !e.contains(&b) {
                continue;
            }
            if !kinds_of(&s_ideal, &a).absolute || !kinds_of(e, &b).absolute {
                out.push(DecompositionFailure { v, a, b });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn pt(c: &[i64]) -> Point {
        Point::of(c)
    }

    #[test]
    fn generation_membership_examples() {
        let k = examples::k_of_a3();
        let g = GenerationInput::of(&k).unwrap();
        assert_eq!(membership_by_generation(&pt(&[0, 1, 1]), &g), Membership::NonMember);
        assert_eq!(membership_by_generation(&pt(&[0, 0, 1]), &g), Membership::Member);
        assert_eq!(membership_by_generation(&k.gamma_e(), &g), Membership::Member);
        assert_eq!(
            membership_by_generation(&pt(&[-1, 0, 0]), &g),
            Membership::PreconditionUnmet
        );
    }

    #[test]
    fn reconstruct_examples() {
        for e in [
            examples::k_of_a3(),
            examples::node().as_ideal(),
            examples::a3().as_ideal(),
            examples::node_maximal_ideal(),
        ] {
            let g = GenerationInput::of(&e).unwrap();
            let w = Window::new(e.mu(), e.gamma_e().shift(1)).unwrap();
            let r = reconstruct(&g, Arc::clone(e.ambient()), &w).unwrap();
            assert!(r.equals(&e).unwrap());
            let r = reconstruct(&g, Arc::clone(e.ambient()), &g.default_window().unwrap()).unwrap();
            assert!(r.equals(&e).unwrap());
        }
    }

    #[test]
    fn orthant_has_no_exclusions() {
        let e = GoodIdeal::orthant(examples::node(), pt(&[2, 3])).unwrap();
        let g = GenerationInput::of(&e).unwrap();
        assert!(g.relmax.is_empty());
        let fp = build_fprime(&e).unwrap();
        assert!(fp.f.is_empty() && fp.fprime.is_empty());
    }

    #[test]
    fn fprime_examples() {
        let k = examples::k_of_a3();
        let fp = build_fprime(&k).unwrap();
        assert_eq!(fp.generators, vec![Point::zero(3)]);
        assert_eq!(fp.dual_irreducible, vec![Point::zero(3)]);
        assert_eq!(fp.nu_dual, Point::ones(3));
        assert_eq!(fp.f, vec![Point::zero(3)]);
        assert_eq!(fp.fprime, vec![Point::zero(3)]);

        let node = examples::node().as_ideal();
        let fp = build_fprime(&node).unwrap();
        assert_eq!(fp.f, vec![Point::zero(2)]);
        assert_eq!(fp.fprime, vec![Point::zero(2)]);
    }

    #[test]
    fn fprime_membership_examples() {
        let k = examples::k_of_a3();
        let g = GenerationInput::of(&k).unwrap();
        let fp = build_fprime(&k).unwrap();
        assert_eq!(membership_by_fprime(&pt(&[0, 1, 1]), &fp, &g), Membership::NonMember);
        assert_eq!(membership_by_fprime(&pt(&[1, 1, 1]), &fp, &g), Membership::Member);

        let node = examples::node().as_ideal();
        let g = GenerationInput::of(&node).unwrap();
        let fp = build_fprime(&node).unwrap();
        assert!(g.projections_pass(&pt(&[0, 3])));
        assert_eq!(membership_by_fprime(&pt(&[0, 3]), &fp, &g), Membership::NonMember);
    }

    #[test]
    fn examples_agree_and_decompose() {
        for e in [examples::k_of_a3(), examples::node().as_ideal(), examples::a3().as_ideal()] {
            let g = GenerationInput::of(&e).unwrap();
            let fp = build_fprime(&e).unwrap();
            let w = Window::new(e.mu().shift(-1), e.gamma_e().shift(2)).unwrap();
            assert!(check_generation(&e, &g, &fp, &w).is_empty());
            assert!(relmax_outside_fprime(&g, &fp).is_empty());
            assert!(decomposition_failures(&e).is_empty());
        }
    }

    #[test]
    fn one_dimensional_input_is_rejected() {
        let s = Arc::new(GoodSemigroup::full_lattice(1));
        assert!(matches!(GenerationInput::of(&s.as_ideal()), Err(Error::Precondition(_))));
    }

    #[test]
    fn misordered_projections_are_rejected() {
        let g = GenerationInput::of(&examples::k_of_a3()).unwrap();
        let mut projections = g.projections.clone();
        projections.swap(0, 1);
        assert!(GenerationInput::new(projections, g.relmax).is_err());
    }
}
