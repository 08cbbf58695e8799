//! Seeded property runs over random good ideals.

use std::sync::Arc;

use serde::Serialize;

use crate::duality::dual;
use crate::error::{Error, Result};
use crate::generation::{
    build_fprime, check_generation, reconstruct, relmax_outside_fprime, GenerationInput,
};
use crate::lattice::{Point, Window};
use crate::maximals::{classify_maximals, relmax_from_absolute, symmetry_check_with_dual};
use crate::random::random_good_ideal;
use crate::scan;
use crate::semigroup::GoodIdeal;
use crate::stdbasis::{audit_eji, irr_absmax_by_characterization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Biduality,
    Symmetry,
    RelmaxFromDual,
    PairCoincidence,
    Reconstruct,
    Fprime,
    Eji,
    NuIndependence,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzFailure {
    pub seed: u64,
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzSummary {
    pub p: usize,
    pub bound: i64,
    pub instances: usize,
    pub passed: usize,
    /// Seeds for which no instance could be generated.
    pub generation_failures: Vec<u64>,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The `ν` choices used for the independence check: `γ_E`, `γ_E + 1̲` and
/// `γ_E + 3e_1`.
pub fn nu_choices(e: &GoodIdeal) -> [Point; 3] {
    let g = e.gamma_e();
    [g, g.shift(1), g.with(0, g.get(0) + 3)]
}

/// Every check on one instance; an empty result means all passed.
pub fn check_instance(seed: u64, e: &GoodIdeal) -> Result<Vec<FuzzFailure>> {
    let mut out = Vec::new();
    let mut fail = |check: Check, detail: String| out.push(FuzzFailure { seed, check, detail });

    let d = dual(e)?.dual;
    let back = dual(&d)?.dual;
    if !back.equals(e)? {
        fail(Check::Biduality, "dual of dual differs".into());
    }

    let report = symmetry_check_with_dual(e, &d);
    if !report.holds() {
        fail(
            Check::Symmetry,
            format!("{} violations, {} pairing failures", report.violations(), report.pairing_failures.len()),
        );
    }
    let direct = classify_maximals(e);
    let from_dual = relmax_from_absolute(e, &classify_maximals(&d).absolute);
    if from_dual != direct.relative {
        fail(
            Check::RelmaxFromDual,
            format!("direct {:?}, from dual {:?}", direct.relative, from_dual),
        );
    }
    if e.dim() == 2 && (direct.maximals != direct.absolute || direct.maximals != direct.relative) {
        fail(Check::PairCoincidence, format!("{direct:?}"));
    }

    let g = GenerationInput::of(e)?;
    let window = Window::new(e.mu(), e.gamma_e().shift(1))?;
    match reconstruct(&g, Arc::clone(e.ambient()), &window) {
        Ok(r) if r.equals(e)? => {}
        Ok(_) => fail(Check::Reconstruct, "reconstruction differs".into()),
        Err(err) => fail(Check::Reconstruct, err.to_string()),
    }

    let fp = build_fprime(e)?;
    let wide = Window::new(e.mu().shift(-1), e.gamma_e().shift(1))?;
    let disagreements = check_generation(e, &g, &fp, &wide);
    if let Some(first) = disagreements.first() {
        fail(
            Check::Fprime,
            format!("{} disagreements, first at {}", disagreements.len(), first.point),
        );
    }
    let outside = relmax_outside_fprime(&g, &fp);
    if !outside.is_empty() {
        fail(Check::Fprime, format!("relative maximals outside F′: {outside:?}"));
    }

    let nus = nu_choices(e);
    for nu in &nus {
        let audit = audit_eji(e, nu)?;
        if !audit.clean() {
            fail(Check::Eji, format!("ν = {nu}: {audit:?}"));
        }
    }
    let reference = irr_absmax_by_characterization(e, &nus[0])?;
    for nu in &nus[1..] {
        if irr_absmax_by_characterization(e, nu)? != reference {
            fail(Check::NuIndependence, format!("ν = {nu} differs from ν = {}", nus[0]));
        }
    }
    Ok(out)
}

/// Runs [`check_instance`] for each seed in `seeds`.
pub fn run(seeds: std::ops::Range<u64>, p: usize, bound: i64) -> Result<FuzzSummary> {
    // Rejects bad parameters up front, including for an empty range.
    if !(2..=4).contains(&p) || !(2..=8).contains(&bound) {
        return Err(Error::Precondition(format!(
            "fuzzing needs 2 ≤ p ≤ 4 and 2 ≤ bound ≤ 8, got p={p}, bound={bound}"
        )));
    }
    let seeds: Vec<u64> = seeds.collect();
    let results = scan::map_slice(&seeds, |&seed| match random_good_ideal(seed, p, bound) {
        Ok(e) => Some(check_instance(seed, &e)),
        Err(Error::GenerationFailed(_)) => None,
        Err(err) => Some(Err(err)),
    });
    let mut summary = FuzzSummary {
        p,
        bound,
        ..FuzzSummary::default()
    };
    for (seed, result) in seeds.into_iter().zip(results) {
        match result {
            None => summary.generation_failures.push(seed),
            Some(result) => {
                summary.instances += 1;
                let failures = result?;
                if failures.is_empty() {
                    summary.passed += 1;
                }
                summary.failures.extend(failures);
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for (p, bound) in [(2, 5), (3, 3), (4, 2)] {
            let s = run(0..12, p, bound).unwrap();
            assert!(s.ok(), "{s:?}");
            assert_eq!(s.instances + s.generation_failures.len(), 12);
        }
    }

    #[test]
    fn empty_range_is_vacuous() {
        let s = run(5..5, 2, 4).unwrap();
        assert_eq!(s.instances, 0);
        assert!(s.ok());
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(run(0..0, 5, 4).is_err());
    }

    #[test]
    fn examples_pass_every_check() {
        for e in [
            crate::examples::k_of_a3(),
            crate::examples::node().as_ideal(),
            crate::examples::a3().as_ideal(),
        ] {
            assert!(check_instance(0, &e).unwrap().is_empty());
        }
    }
}
