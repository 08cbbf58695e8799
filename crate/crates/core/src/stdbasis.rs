//! Irreducible elements, irreducible absolute maximals, and the value-level
//! standard-basis characterization through the sets
//! `E_j^i(ν) = {v ∈ E : v_i = h^i_j, v_ℓ ≤ ν_ℓ for ℓ ≠ i}`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{IndexSet, Point, Window};
use crate::maximals::classify_maximals;
use crate::scan;
use crate::semigroup::{GoodIdeal, GoodSemigroup};

/// `v ∈ E` admits no decomposition `v = a + b` with `a ∈ S \ {0̲}`, `b ∈ E`.
/// Only `a ∈ [0̲, v − μ]` can work since `b ≥ μ`.
pub fn is_irreducible(v: &Point, e: &GoodIdeal) -> Result<bool> {
    if v.dim() != e.dim() {
        return Err(Error::Dimension(format!(
            "point {v} does not match dimension {}",
            e.dim()
        )));
    }
    if !e.contains(v) {
        return Err(Error::NotMember(*v));
    }
    Ok(first_decomposition(v, e).is_none())
}

/// The lexicographically first `a ≠ 0̲` with `a ∈ S` and `v − a ∈ E`.
pub fn first_decomposition(v: &Point, e: &GoodIdeal) -> Option<Point> {
    let zero = Point::zero(v.dim());
    let reach = v.sub(&e.mu());
    let window = Window::new(zero, reach).ok()?;
    let s = e.ambient();
    window
        .iter()
        .find(|a| *a != zero && s.contains(a) && e.contains(&v.sub(a)))
}

/// Absolute maximals of `E` that are irreducible.
pub fn irreducible_absolute_maximals(e: &GoodIdeal) -> Vec<Point> {
    let absolute = classify_maximals(e).absolute;
    scan::map_slice(&absolute, |a| first_decomposition(a, e).is_none().then_some(*a))
        .into_iter()
        .flatten()
        .collect()
}

/// Absolute maximals of `S` that are not a sum of two nonzero elements of `S`.
/// Read with `I = S`, the ideal notion would leave only `0̲`, since `v = v + 0̲`.
pub fn semigroup_irreducible_absolute_maximals(s: &Arc<GoodSemigroup>) -> Vec<Point> {
    let absolute = classify_maximals(&s.as_ideal()).absolute;
    let zero = Point::zero(s.dim());
    scan::map_slice(&absolute, |g| {
        let window = Window::new(zero, *g).ok()?;
        let splits = window
            .iter()
            .any(|a| a != zero && a != *g && s.contains(&a) && s.contains(&g.sub(&a)));
        (!splits).then_some(*g)
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Minimal generating values `h^i` of the projected ideal `N_i = pr_i(E)` over `pr_i(S)`, per branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchGeneratorValues {
    pub per_branch: Vec<Vec<i64>>,
}

/// Numerical-semigroup ideal data for one branch.
struct Branch {
    ideal: GoodIdeal,
}

impl Branch {
    fn new(e: &GoodIdeal, i: usize) -> Result<Self> {
        if i >= e.dim() {
            return Err(Error::Dimension(format!(
                "branch {} out of range for dimension {}",
                i + 1,
                e.dim()
            )));
        }
        Ok(Branch {
            ideal: e.projection(IndexSet::single(i))?,
        })
    }

    fn in_ideal(&self, n: i64) -> bool {
        self.ideal.contains(&Point::of(&[n]))
    }

    fn in_semigroup(&self, n: i64) -> bool {
        self.ideal.ambient().contains(&Point::of(&[n]))
    }

    fn min(&self) -> i64 {
        self.ideal.mu().get(0)
    }

    /// Past `conductor(N_i) + conductor(pr_i S)` every element decomposes.
    fn sieve_top(&self) -> i64 {
        self.ideal.gamma_e().get(0) + self.ideal.ambient().gamma().get(0)
    }

    fn generators(&self) -> Vec<i64> {
        let lo = self.min();
        (lo..=self.sieve_top())
            .filter(|&h| self.in_ideal(h))
            .filter(|&h| !(1..=h - lo).any(|s| self.in_semigroup(s) && self.in_ideal(h - s)))
            .collect()
    }
}

/// Values of a minimal standard basis of `pr_i(E)` over `pr_i(S)` (0-based `i`).
pub fn minimal_generator_values(e: &GoodIdeal, i: usize) -> Result<Vec<i64>> {
    Ok(Branch::new(e, i)?.generators())
}

pub fn branch_generator_values(e: &GoodIdeal) -> Result<BranchGeneratorValues> {
    let per_branch = (0..e.dim())
        .map(|i| minimal_generator_values(e, i))
        .collect::<Result<_>>()?;
    Ok(BranchGeneratorValues { per_branch })
}

/// Every element of `pr_i(E)` up to `top` is some generator plus an element of `pr_i(S)`.
pub fn generators_span(e: &GoodIdeal, i: usize, generators: &[i64], top: i64) -> Result<bool> {
    let b = Branch::new(e, i)?;
    Ok((b.min()..=top).filter(|&n| b.in_ideal(n)).all(|n| {
        generators
            .iter()
            .any(|&h| h <= n && b.in_semigroup(n - h))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EjiSet {
    /// 1-based branch index.
    pub branch: usize,
    pub h: i64,
    pub nu: Point,
    pub elements: Vec<Point>,
}

impl EjiSet {
    /// Elements with nothing strictly above them in the set (product order).
    pub fn maximal_elements(&self) -> Vec<Point> {
        self.elements
            .iter()
            .filter(|a| !self.elements.iter().any(|b| b != *a && Point::le(a, b)))
            .copied()
            .collect()
    }
}

/// Requires `ν + N^p ⊆ E`, i.e. `ν ≥ γ_E`.
pub fn check_nu(e: &GoodIdeal, nu: &Point) -> Result<()> {
    if nu.dim() != e.dim() {
        return Err(Error::InvalidNu {
            nu: *nu,
            reason: format!("dimension differs from {}", e.dim()),
        });
    }
    if !e.contains(nu) || !e.gamma_e().le(nu) {
        return Err(Error::InvalidNu {
            nu: *nu,
            reason: format!("ν + N^p is not inside E (conductor {})", e.gamma_e()),
        });
    }
    Ok(())
}

pub fn eji_sets(e: &GoodIdeal, nu: &Point) -> Result<Vec<EjiSet>> {
    check_nu(e, nu)?;
    let generators = branch_generator_values(e)?;
    let mut out = Vec::new();
    for (i, hs) in generators.per_branch.iter().enumerate() {
        for &h in hs {
            let lo = e.mu().with(i, h);
            let hi = nu.with(i, h);
            let elements = match Window::new(lo, hi) {
                Ok(w) => e.members_in(&w),
                Err(_) => Vec::new(),
            };
            out.push(EjiSet {
                branch: i + 1,
                h,
                nu: *nu,
                elements,
            });
        }
    }
    Ok(out)
}

fn avoids_nu(a: &Point, nu: &Point) -> bool {
    (0..a.dim()).all(|l| a.get(l) != nu.get(l))
}

/// Maximal elements of some `E_j^i(ν)` with no coordinate equal to `ν`.
pub fn irr_absmax_by_characterization(e: &GoodIdeal, nu: &Point) -> Result<Vec<Point>> {
    let mut out: Vec<Point> = eji_sets(e, nu)?
        .iter()
        .flat_map(|s| s.maximal_elements())
        .filter(|a| avoids_nu(a, nu))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The characterization gives the same set for both choices of `ν`.
pub fn nu_independence_check(e: &GoodIdeal, nu1: &Point, nu2: &Point) -> Result<bool> {
    Ok(irr_absmax_by_characterization(e, nu1)? == irr_absmax_by_characterization(e, nu2)?)
}

/// Pointwise audit of the `E_j^i(ν)` sets against direct classification.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EjiAudit {
    /// Members of some `E_j^i(ν)` that decompose.
    pub reducible_members: Vec<Point>,
    /// Members where "irreducible absolute maximal" and
    /// "maximal in the set with no coordinate at ν" disagree.
    pub characterization_mismatches: Vec<Point>,
    /// Characterized points that are not irreducible absolute maximals.
    pub not_direct: Vec<Point>,
}

impl EjiAudit {
    pub fn clean(&self) -> bool {
        self.reducible_members.is_empty()
            && self.characterization_mismatches.is_empty()
            && self.not_direct.is_empty()
    }
}

pub fn audit_eji(e: &GoodIdeal, nu: &Point) -> Result<EjiAudit> {
    let sets = eji_sets(e, nu)?;
    let direct = irreducible_absolute_maximals(e);
    let mut audit = EjiAudit::default();
    for set in &sets {
        let maximal = set.maximal_elements();
        for a in &set.elements {
            if first_decomposition(a, e).is_some() {
                audit.reducible_members.push(*a);
            }
            let characterized = maximal.contains(a) && avoids_nu(a, nu);
            let is_direct = direct.binary_search(a).is_ok();
            if characterized != is_direct {
                audit.characterization_mismatches.push(*a);
            }
        }
    }
    for a in irr_absmax_by_characterization(e, nu)? {
        if direct.binary_search(&a).is_err() {
            audit.not_direct.push(a);
        }
    }
    audit.reducible_members.sort();
    audit.reducible_members.dedup();
    audit.characterization_mismatches.sort();
    audit.characterization_mismatches.dedup();
    Ok(audit)
}

/// Irreducible absolute maximals that the characterization does not reach.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub nu: Point,
    pub direct: Vec<Point>,
    pub characterized: Vec<Point>,
    /// Found directly, with no coordinate equal to a minimal generator value.
    pub uncovered: Vec<Point>,
}

pub fn coverage_report(e: &GoodIdeal) -> Result<CoverageReport> {
    let nu = e.gamma_e();
    let direct = irreducible_absolute_maximals(e);
    let characterized = irr_absmax_by_characterization(e, &nu)?;
    let uncovered = direct
        .iter()
        .filter(|a| characterized.binary_search(a).is_err())
        .copied()
        .collect();
    Ok(CoverageReport {
        nu,
        direct,
        characterized,
        uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::semigroup::GoodIdeal;

    #[test]
    fn irreducible_examples() {
        let node = examples::node().as_ideal();
        assert!(is_irreducible(&Point::zero(2), &node).unwrap());
        assert!(!is_irreducible(&Point::of(&[2, 2]), &node).unwrap());
        let k = examples::k_of_a3();
        assert!(is_irreducible(&Point::of(&[0, 0, 1]), &k).unwrap());
        assert!(matches!(
            is_irreducible(&Point::of(&[0, 1]), &node),
            Err(Error::NotMember(_))
        ));
    }

    #[test]
    fn irreducible_absolute_maximal_examples() {
        assert_eq!(irreducible_absolute_maximals(&examples::a3().as_ideal()), vec![Point::zero(3)]);
        assert!(irreducible_absolute_maximals(&examples::k_of_a3()).is_empty());
        assert_eq!(irreducible_absolute_maximals(&examples::node().as_ideal()), vec![Point::zero(2)]);
    }

    #[test]
    fn semigroup_irreducible_examples() {
        assert_eq!(semigroup_irreducible_absolute_maximals(&examples::a3()), vec![Point::zero(3)]);
        assert_eq!(semigroup_irreducible_absolute_maximals(&examples::node()), vec![Point::zero(2)]);
    }

    #[test]
    fn generator_values_examples() {
        let node = examples::node();
        assert_eq!(minimal_generator_values(&node.as_ideal(), 0).unwrap(), vec![0]);
        let e = GoodIdeal::orthant(node, Point::of(&[2, 3])).unwrap();
        assert_eq!(minimal_generator_values(&e, 1).unwrap(), vec![3]);
        assert_eq!(minimal_generator_values(&examples::a3().as_ideal(), 0).unwrap(), vec![0]);
        assert!(minimal_generator_values(&e, 2).is_err());
    }

    #[test]
    fn eji_examples() {
        let nu = Point::ones(3);
        let a3 = examples::a3().as_ideal();
        let sets = eji_sets(&a3, &nu).unwrap();
        let first = sets.iter().find(|s| s.branch == 1 && s.h == 0).unwrap();
        assert_eq!(first.elements, vec![Point::zero(3)]);

        let k = examples::k_of_a3();
        let sets = eji_sets(&k, &nu).unwrap();
        let first = sets.iter().find(|s| s.branch == 1 && s.h == 0).unwrap();
        let want: Vec<Point> = [[0, 0, 0], [0, 0, 1], [0, 1, 0]].iter().map(|c| Point::of(c)).collect();
        assert_eq!(first.elements, want);

        let node = examples::node().as_ideal();
        let sets = eji_sets(&node, &Point::ones(2)).unwrap();
        let first = sets.iter().find(|s| s.branch == 1 && s.h == 0).unwrap();
        assert_eq!(first.elements, vec![Point::zero(2)]);
    }

    #[test]
    fn invalid_nu_is_rejected() {
        let k = examples::k_of_a3();
        assert!(matches!(
            eji_sets(&k, &Point::of(&[0, 1, 1])),
            Err(Error::InvalidNu { .. })
        ));
    }

    #[test]
    fn characterization_examples() {
        assert_eq!(
            irr_absmax_by_characterization(&examples::a3().as_ideal(), &Point::ones(3)).unwrap(),
            vec![Point::zero(3)]
        );
        assert!(irr_absmax_by_characterization(&examples::k_of_a3(), &Point::ones(3))
            .unwrap()
            .is_empty());
        assert_eq!(
            irr_absmax_by_characterization(&examples::node().as_ideal(), &Point::of(&[2, 2])).unwrap(),
            vec![Point::zero(2)]
        );
    }

    #[test]
    fn nu_independence_examples() {
        let a3 = examples::a3().as_ideal();
        assert!(nu_independence_check(&a3, &Point::ones(3), &Point::of(&[3, 2, 5])).unwrap());
        let node = examples::node().as_ideal();
        assert!(nu_independence_check(&node, &Point::ones(2), &Point::of(&[4, 4])).unwrap());
        let k = examples::k_of_a3();
        assert!(nu_independence_check(&k, &Point::ones(3), &Point::splat(3, 2)).unwrap());
    }

    #[test]
    fn coverage_examples() {
        assert!(coverage_report(&examples::a3().as_ideal()).unwrap().uncovered.is_empty());
        assert!(coverage_report(&examples::node().as_ideal()).unwrap().uncovered.is_empty());
    }

    #[test]
    fn audit_examples_are_clean() {
        for (e, nu) in [
            (examples::a3().as_ideal(), Point::ones(3)),
            (examples::k_of_a3(), Point::splat(3, 2)),
            (examples::node().as_ideal(), Point::of(&[2, 3])),
        ] {
            let audit = audit_eji(&e, &nu).unwrap();
            assert!(audit.clean(), "{audit:?}");
        }
    }
}
