//! The dual value set `E^∨ = {v : Δ(γ − v − 1̲, E) = ∅}` and the canonical
//! value set `K = S^∨`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::maximals::delta_union_empty;
use crate::semigroup::{GoodIdeal, GoodSemigroup, ValueSet};

#[derive(Clone, Debug)]
pub struct DualResult {
    pub dual: GoodIdeal,
    /// Conductor of the ambient semigroup.
    pub gamma_used: Point,
}

/// Membership in `E^∨` straight from the Δ-condition, for any `v`.
pub fn in_dual(e: &GoodIdeal, v: &Point) -> bool {
    let w = e.ambient().gamma().sub(v).shift(-1);
    delta_union_empty(e, &w)
}

/// Computes `E^∨` on `[γ − γ_E, γ − μ]`.
///
/// Below the window some `v_i < γ_i − γ_{E,i}`, so `γ − v − 1̲` has a coordinate
/// at or above `γ_{E,i}` and the conductor supplies a Δ-witness. Above it
/// `γ − v − 1̲ < μ` and every Δ-set is empty. The result is validated.
pub fn dual(e: &GoodIdeal) -> Result<DualResult> {
    let gamma = e.ambient().gamma();
    let lo = gamma.checked_sub(&e.gamma_e())?;
    let hi = gamma.checked_sub(&e.mu())?;
    let set = ValueSet::from_membership(lo, hi, |v| in_dual(e, v))
        .map_err(|err| Error::DualInvalid(err.to_string()))?;
    if set.mu() != lo || set.conductor() != hi {
        return Err(Error::DualInvalid(format!(
            "expected minimum {lo} and conductor {hi}, found {} and {}",
            set.mu(),
            set.conductor()
        )));
    }
    let dual = GoodIdeal::from_value_set(Arc::clone(e.ambient()), set)?;
    let report = dual.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::DualInvalid(format!("{v:?}")));
    }
    Ok(DualResult {
        dual,
        gamma_used: gamma,
    })
}

/// `K = S^∨`, the canonical value set normalized by `S ⊆ K ⊆ N^p`.
pub fn canonical_values(s: &Arc<GoodSemigroup>) -> Result<GoodIdeal> {
    Ok(dual(&s.as_ideal())?.dual)
}

/// `S` is symmetric (Gorenstein) iff `K = S`.
pub fn is_symmetric(s: &Arc<GoodSemigroup>) -> Result<bool> {
    let k = canonical_values(s)?;
    k.equals(&s.as_ideal())
}
