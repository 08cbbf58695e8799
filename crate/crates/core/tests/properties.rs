//! Property tests over random instances, checked against brute-force oracles
//! written independently of the library's bounded searches.

use std::collections::BTreeSet;

use proptest::prelude::*;
use valmax_core::curveval::{sample_value_set, CurveSpec};
use valmax_core::duality::{dual, in_dual};
use valmax_core::generation::{membership_by_generation, GenerationInput, Membership};
use valmax_core::maximals::{classify_maximals, kinds_of};
use valmax_core::random::random_good_ideal;
use valmax_core::stdbasis::{generators_span, minimal_generator_values};
use valmax_core::{GoodIdeal, IndexSet, Point, Window};

fn ideal() -> impl Strategy<Value = GoodIdeal> {
    (0u64..5_000, 2usize..=3, 2i64..=5)
        .prop_map(|(seed, p, bound)| random_good_ideal(seed, p, bound).expect("generator"))
}

fn grow(w: &Window, by: i64) -> Window {
    let d = Point::splat(w.dim(), by);
    Window::new(w.lo().checked_sub(&d).unwrap(), w.hi().checked_add(&d).unwrap()).unwrap()
}

/// `Δ_J(α,E) = ∅` decided by scanning `E` on a window far past the conductor.
fn delta_j_empty_oracle(e: &GoodIdeal, alpha: &Point, j: IndexSet) -> bool {
    let hi = e.gamma_e().join_with(alpha).checked_add(&Point::splat(e.dim(), 3)).unwrap();
    let window = Window::new(e.mu(), hi).unwrap();
    !window.iter().any(|v| {
        e.contains(&v)
            && (0..v.dim()).all(|k| if j.contains(k) { v.get(k) == alpha.get(k) } else { v.get(k) > alpha.get(k) })
    })
}

trait JoinWith {
    fn join_with(&self, other: &Point) -> Point;
}

impl JoinWith for Point {
    fn join_with(&self, other: &Point) -> Point {
        self.sup(other).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dual_window_is_reflected(e in ideal()) {
        let gamma = e.ambient().gamma();
        let d = dual(&e).unwrap().dual;
        prop_assert_eq!(d.mu(), gamma.checked_sub(&e.gamma_e()).unwrap());
        prop_assert_eq!(d.gamma_e(), gamma.checked_sub(&e.mu()).unwrap());
        for v in grow(&Window::new(d.mu(), d.gamma_e()).unwrap(), 1).iter() {
            prop_assert_eq!(d.contains(&v), in_dual(&e, &v), "{}", v);
        }
    }

    #[test]
    fn dual_commutes_with_translation(e in ideal(), t in prop::collection::vec(-3i64..=3, 3)) {
        let t = Point::new(&t[..e.dim()]).unwrap();
        let shifted = dual(&e.translate(&t).unwrap()).unwrap().dual;
        let neg = Point::zero(e.dim()).checked_sub(&t).unwrap();
        let expected = dual(&e).unwrap().dual.translate(&neg).unwrap();
        prop_assert!(shifted.equals(&expected).unwrap());
    }

    #[test]
    fn maximal_kinds_match_oracle(e in ideal()) {
        let p = e.dim();
        let report = classify_maximals(&e);
        for alpha in grow(&Window::new(e.mu(), e.gamma_e()).unwrap(), 1).iter() {
            let k = kinds_of(&e, &alpha);
            let singles = (0..p).all(|i| delta_j_empty_oracle(&e, &alpha, IndexSet::single(i)));
            let maximal = e.contains(&alpha) && singles;
            prop_assert_eq!(k.maximal, maximal, "{}", alpha);
            if maximal {
                let proper: Vec<IndexSet> = IndexSet::proper_subsets(p).collect();
                let absolute = proper.iter().all(|j| delta_j_empty_oracle(&e, &alpha, *j));
                let relative = proper.iter().filter(|j| j.len() >= 2).all(|j| !delta_j_empty_oracle(&e, &alpha, *j));
                prop_assert_eq!(k.absolute, absolute, "{}", alpha);
                prop_assert_eq!(k.relative, relative, "{}", alpha);
                prop_assert!(report.maximals.contains(&alpha));
            }
        }
    }

    #[test]
    fn generation_agrees_with_membership(e in ideal()) {
        let g = GenerationInput::of(&e).unwrap();
        for v in grow(&Window::new(e.mu(), e.gamma_e()).unwrap(), 2).iter() {
            match membership_by_generation(&v, &g) {
                Membership::PreconditionUnmet => prop_assert!(!e.contains(&v)),
                m => prop_assert_eq!(m.is_member(), e.contains(&v), "{}", v),
            }
        }
    }

    #[test]
    fn projections_validate(e in ideal()) {
        let p = e.dim();
        for j in IndexSet::nonempty_subsets(p) {
            let proj = e.projection(j).unwrap();
            prop_assert!(proj.validate().passed());
            prop_assert!(proj.ambient().validate().passed());
            for v in e.small() {
                prop_assert!(proj.contains(&v.project(&j)));
            }
        }
    }

    #[test]
    fn branch_generators_span_projection(e in ideal()) {
        for i in 0..e.dim() {
            let hs = minimal_generator_values(&e, i).unwrap();
            prop_assert!(!hs.is_empty());
            let top = e.gamma_e().get(i) + 2 * e.ambient().gamma().get(i) + 4;
            prop_assert!(generators_span(&e, i, &hs, top).unwrap());
            for (k, &h) in hs.iter().enumerate() {
                prop_assert!(!generators_span(&e, i, &[&hs[..k], &hs[k + 1..]].concat(), h).unwrap());
            }
        }
    }
}

/// `⟨a, b⟩ ∩ [0, limit)`.
fn numerical_semigroup(a: i64, b: i64, limit: i64) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for x in 0..limit {
        for y in 0..limit {
            let v = a * x + b * y;
            if v < limit {
                out.insert(v);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn monomial_curve_values_lie_in_the_semigroup(a in 2i64..=4, b in 3i64..=7) {
        prop_assume!(a != b);
        let t = 12usize;
        let doc = format!(
            r#"{{"m":2,"T":{t},"branches":[{{"x1":[[1,1,{a}]],"x2":[[1,1,{b}]]}}],"generators":["1"]}}"#
        );
        let spec = CurveSpec::from_json(&doc).unwrap();
        let found: BTreeSet<i64> = sample_value_set(&spec, 6, 2, 5).unwrap().iter().map(|v| v.get(0)).collect();
        let expected = numerical_semigroup(a, b, t as i64);
        prop_assert_eq!(found, expected);
    }
}
