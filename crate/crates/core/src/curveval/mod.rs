//! Value sets of ideals of parametrized curves, computed from exact truncated
//! power series.
//!
//! A [`CurveSpec`] gives `p` branch parametrizations `x_k = x_k(t)` known
//! modulo `t^T` and a list of ideal generators. Elements `Σ c·m·g` (monomial
//! `m`, generator `g`) are valued branch by branch; an order is only trusted
//! when it is below `T`, so every sampled value is exact.

pub mod poly;
pub mod series;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Point, Window, MAX_DIM};
use crate::semigroup::{least_conductor, GoodIdeal, GoodSemigroup, ValueSet};
pub use poly::Poly;
pub use series::Series;

/// `[numerator, denominator, exponent]` terms of one coordinate series.
pub type Terms = Vec<(i64, i64, usize)>;

/// On-disk curve description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub m: usize,
    #[serde(rename = "T")]
    pub truncation: usize,
    /// Per branch, variable name to its terms.
    pub branches: Vec<BTreeMap<String, Terms>>,
    pub generators: Vec<String>,
    /// Added to every ideal value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct CurveSpec {
    m: usize,
    truncation: usize,
    /// `branches[i][k]` is `x_{k+1}` along branch `i`.
    branches: Vec<Vec<Series>>,
    generators: Vec<Poly>,
    shift: Option<Point>,
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(text)?)
    }

    pub fn from_doc(doc: &CurveDoc) -> Result<Self> {
        if doc.truncation < 1 {
            return Err(Error::Curve("T must be at least 1".into()));
        }
        if doc.m < 1 {
            return Err(Error::Curve("m must be at least 1".into()));
        }
        let p = doc.branches.len();
        if !(1..=MAX_DIM).contains(&p) {
            return Err(Error::Curve(format!("need 1 to {MAX_DIM} branches, got {p}")));
        }
        let mut branches = Vec::with_capacity(p);
        for (b, assignment) in doc.branches.iter().enumerate() {
            let mut series = vec![Series::zero(doc.truncation); doc.m];
            for (name, terms) in assignment {
                let k = variable_index(name, doc.m).ok_or_else(|| {
                    Error::Curve(format!("branch {}: unknown variable {name:?}", b + 1))
                })?;
                let mut parsed = Vec::with_capacity(terms.len());
                for &(num, den, exp) in terms {
                    if den == 0 {
                        return Err(Error::Curve(format!(
                            "branch {}: zero denominator in {name}",
                            b + 1
                        )));
                    }
                    parsed.push((series::rational(num, den), exp));
                }
                series[k] = Series::from_terms(doc.truncation, &parsed);
            }
            let moves = series
                .iter()
                .any(|s| s.coeffs().iter().skip(1).any(|c| !c.is_zero()));
            if !moves {
                return Err(Error::Curve(format!(
                    "branch {} is constant modulo t^{}",
                    b + 1,
                    doc.truncation
                )));
            }
            branches.push(series);
        }
        if doc.generators.is_empty() {
            return Err(Error::Curve("at least one generator is required".into()));
        }
        let generators = doc
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                Poly::parse(g, doc.m).map_err(|err| match err {
                    Error::Parse { column, message, .. } => Error::Parse {
                        line: k + 1,
                        column,
                        message: format!("generator {}: {message}", k + 1),
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let shift = match &doc.shift {
            Some(s) if s.len() != p => {
                return Err(Error::Curve(format!("shift has {} entries for {p} branches", s.len())))
            }
            Some(s) => Some(Point::new(s)?),
            None => None,
        };
        Ok(CurveSpec {
            m: doc.m,
            truncation: doc.truncation,
            branches,
            generators,
            shift,
        })
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn shift(&self) -> Point {
        self.shift.unwrap_or_else(|| Point::zero(self.branch_count()))
    }

    /// Same curve with the ring itself as the ideal.
    pub fn ring(&self) -> CurveSpec {
        CurveSpec {
            generators: vec![Poly::constant(self.m, BigRational::one())],
            shift: None,
            ..self.clone()
        }
    }

    fn series_along(&self, f: &Poly) -> Vec<Series> {
        self.branches.iter().map(|b| f.eval_series(b)).collect()
    }
}

/// Generator index `k` in a 1-based `x{k}` name.
fn variable_index(name: &str, m: usize) -> Option<usize> {
    let k: usize = name.strip_prefix('x')?.parse().ok()?;
    (1..=m).contains(&k).then(|| k - 1)
}

/// Orders along each branch; `None` means the order is at least `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveValue {
    pub orders: Vec<Option<usize>>,
}

impl CurveValue {
    pub fn finite(&self) -> Option<Point> {
        let coords: Option<Vec<i64>> = self.orders.iter().map(|o| o.map(|o| o as i64)).collect();
        Point::new(&coords?).ok()
    }
}

/// Raw `t`-orders of `f` along each branch (no shift applied).
pub fn value_of(f: &Poly, spec: &CurveSpec) -> CurveValue {
    CurveValue {
        orders: spec.series_along(f).iter().map(Series::order).collect(),
    }
}

/// An element whose value was computed exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueSample {
    pub element: String,
    pub value: Point,
}

/// `m·g` for every monomial `m` of degree at most `degree_bound` and generator `g`.
struct Basis {
    labels: Vec<String>,
    /// `series[b][i]`: element `b` along branch `i`.
    series: Vec<Vec<Series>>,
}

impl Basis {
    fn new(spec: &CurveSpec, degree_bound: u32) -> Self {
        let mut labels = Vec::new();
        let mut series = Vec::new();
        for exps in monomials(spec.m, degree_bound) {
            let mono = Poly::monomial(exps);
            for (k, g) in spec.generators.iter().enumerate() {
                labels.push(format!("({mono})*g{}", k + 1));
                series.push(spec.series_along(&mono.mul(g)));
            }
        }
        Basis { labels, series }
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    fn combine(&self, x: &[BigRational]) -> Vec<Series> {
        let branches = self.series[0].len();
        let truncation = self.series[0][0].truncation();
        (0..branches)
            .map(|i| {
                x.iter()
                    .zip(&self.series)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(Series::zero(truncation), |acc, (c, s)| acc.add(&s[i].scale(c)))
            })
            .collect()
    }

    fn describe(&self, x: &[BigRational]) -> String {
        let parts: Vec<String> = x
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{c}*{l}") })
            .collect();
        parts.join(" + ")
    }
}

fn monomials(vars: usize, degree_bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=degree_bound - used).map(move |e| {
                    let mut next = prefix.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    out
}

/// Basis of `{x : A x = 0}` by reduction to row echelon form over `Q`.
fn nullspace(rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let mut a = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for k in 0..a.len() {
            if k != r && !a[k][c].is_zero() {
                let f = a[k][c].clone();
                let pivot_row = a[r].clone();
                for (v, pv) in a[k].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![BigRational::zero(); cols];
            x[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[row][free].clone();
            }
            x
        })
        .collect()
}

/// Exactly valued elements of the ideal.
///
/// For each target `v ∈ [0, T−1]^p` the subspace of combinations whose orders
/// reach `v` is computed exactly; its basis vectors and `coefficient_trials`
/// seeded integer combinations of them are valued. Values with an order at or
/// beyond `T` on some branch are discarded, so every emitted value is exact.
pub fn sample_elements(
    spec: &CurveSpec,
    degree_bound: u32,
    coefficient_trials: usize,
    seed: u64,
) -> Result<Vec<ValueSample>> {
    let basis = Basis::new(spec, degree_bound);
    let p = spec.branch_count();
    let t = spec.truncation as i64;
    let shift = spec.shift();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut emit = |x: &[BigRational], out: &mut Vec<ValueSample>| -> Result<()> {
        let orders: Option<Vec<i64>> = basis
            .combine(x)
            .iter()
            .map(|s| s.order().map(|o| o as i64))
            .collect();
        if let Some(orders) = orders {
            let value = Point::new(&orders)?.checked_add(&shift)?;
            if seen.insert(value) {
                out.push(ValueSample {
                    element: basis.describe(x),
                    value,
                });
            }
        }
        Ok(())
    };
    let targets = Window::new(Point::zero(p), Point::splat(p, t - 1))?;
    for v in targets.iter() {
        let mut rows = Vec::new();
        for i in 0..p {
            for k in 0..v.get(i) as usize {
                rows.push(basis.series.iter().map(|s| s[i].coeffs()[k].clone()).collect());
            }
        }
        let kernel = nullspace(rows, basis.len());
        if kernel.is_empty() {
            continue;
        }
        for x in &kernel {
            emit(x, &mut out)?;
        }
        for _ in 0..coefficient_trials {
            let mut x = vec![BigRational::zero(); basis.len()];
            for k in &kernel {
                let c = BigRational::from_integer(rng.gen_range(-9i64..=9).into());
                for (xi, ki) in x.iter_mut().zip(k) {
                    *xi += &c * ki;
                }
            }
            emit(&x, &mut out)?;
        }
    }
    out.sort_by_key(|a| a.value);
    Ok(out)
}

/// Distinct exact values found by [`sample_elements`], sorted.
pub fn sample_value_set(
    spec: &CurveSpec,
    degree_bound: u32,
    coefficient_trials: usize,
    seed: u64,
) -> Result<Vec<Point>> {
    Ok(sample_elements(spec, degree_bound, coefficient_trials, seed)?
        .into_iter()
        .map(|s| s.value)
        .collect())
}

fn inf_closure(points: &[Point]) -> BTreeSet<Point> {
    let mut set: BTreeSet<Point> = points.iter().copied().collect();
    loop {
        let members: Vec<Point> = set.iter().copied().collect();
        let mut grew = false;
        for (k, a) in members.iter().enumerate() {
            for b in &members[k + 1..] {
                grew |= set.insert(a.meet(b));
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Value set on `window` from the inf-closure of `sample`; the top corner
/// must be reached and stands for its upper orthant.
fn fit_value_set(sample: &[Point], window: &Window, what: &str) -> Result<ValueSet> {
    let closed = inf_closure(sample);
    if !closed.contains(&window.hi()) {
        return Err(Error::Curve(format!(
            "{what}: window top {} not reached; increase the degree bound or T",
            window.hi()
        )));
    }
    let member = |v: &Point| closed.contains(v);
    let conductor = least_conductor(window, &member);
    let members: Vec<Point> = window.iter().filter(|v| member(v)).collect();
    let mu = members.iter().fold(window.hi(), |acc, v| acc.meet(v));
    ValueSet::from_parts(mu, conductor, members.into_iter().filter(|v| v.le(&conductor)))
}

/// Assembles and validates the semigroup from `ambient_sample` on
/// `[0̲, hi − lo]` and the ideal from `sample` on `window`.
pub fn fit_good_ideal(sample: &[Point], ambient_sample: &[Point], window: &Window) -> Result<GoodIdeal> {
    let p = window.dim();
    let extent = window.hi().checked_sub(&window.lo())?;
    let ring_window = Window::new(Point::zero(p), extent)?;
    let ring_set = fit_value_set(ambient_sample, &ring_window, "ring")?;
    let ambient = Arc::new(
        GoodSemigroup::from_value_set(ring_set)
            .map_err(|err| Error::Curve(format!("ring sample does not start at 0: {err}")))?,
    );
    if let Some(v) = ambient.validate().violations.first() {
        return Err(Error::Curve(format!(
            "ring sample is not a good semigroup ({v:?}); increase the degree bound or T"
        )));
    }
    let set = fit_value_set(sample, window, "ideal")?;
    let e = GoodIdeal::from_value_set(ambient, set)?;
    if let Some(v) = e.validate().violations.first() {
        return Err(Error::Curve(format!(
            "ideal sample is not a good ideal ({v:?}); increase the degree bound or T"
        )));
    }
    Ok(e)
}

#[derive(Clone, Debug)]
pub struct IngestOptions {
    pub degree_bound: u32,
    pub coefficient_trials: usize,
    pub seed: u64,
    /// Defaults to `[shift, shift + max(1, ⌊(T−2)/2⌋)·1̲]`.
    pub window: Option<Window>,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            degree_bound: 3,
            coefficient_trials: 4,
            seed: 0,
            window: None,
        }
    }
}

pub fn default_window(spec: &CurveSpec) -> Result<Window> {
    let lo = spec.shift();
    let reach = ((spec.truncation as i64 - 2) / 2).max(1);
    Window::new(lo, lo.checked_add(&Point::splat(spec.branch_count(), reach))?)
}

/// Samples at `degree_bound` and `degree_bound + 1`, fits both and requires
/// them to agree.
pub fn ingest(spec: &CurveSpec, opts: &IngestOptions) -> Result<GoodIdeal> {
    let window = match opts.window {
        Some(w) => w,
        None => default_window(spec)?,
    };
    if window.dim() != spec.branch_count() {
        return Err(Error::Dimension(format!(
            "window dimension {} differs from {} branches",
            window.dim(),
            spec.branch_count()
        )));
    }
    let ring = spec.ring();
    let fit = |degree: u32| -> Result<GoodIdeal> {
        let sample = sample_value_set(spec, degree, opts.coefficient_trials, opts.seed)?;
        let ambient = sample_value_set(&ring, degree, opts.coefficient_trials, opts.seed)?;
        fit_good_ideal(&sample, &ambient, &window)
    };
    let first = fit(opts.degree_bound)?;
    let second = fit(opts.degree_bound + 1)?;
    let same = first.ambient().small() == second.ambient().small()
        && first.small() == second.small()
        && first.gamma_e() == second.gamma_e();
    if !same {
        return Err(Error::Curve(format!(
            "sample not stabilized between degree bounds {} and {}",
            opts.degree_bound,
            opts.degree_bound + 1
        )));
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODE: &str = r#"{"m":2,"T":4,"branches":[{"x1":[[1,1,1]]},{"x2":[[1,1,1]]}],"generators":["1"]}"#;
    const AXES: &str = r#"{"m":3,"T":4,"branches":[{"x1":[[1,1,1]]},{"x2":[[1,1,1]]},{"x3":[[1,1,1]]}],"generators":["1"]}"#;

    fn pt(c: &[i64]) -> Point {
        Point::of(c)
    }

    #[test]
    fn value_of_node_examples() {
        let spec = CurveSpec::from_json(NODE).unwrap();
        let v = |s: &str| value_of(&Poly::parse(s, 2).unwrap(), &spec);
        assert_eq!(v("x1 + x2").finite(), Some(pt(&[1, 1])));
        let long = CurveSpec::from_json(&NODE.replace("\"T\":4", "\"T\":8")).unwrap();
        assert_eq!(value_of(&Poly::parse("x1^5 + x2", 2).unwrap(), &long).finite(), Some(pt(&[5, 1])));
        assert_eq!(v("x1").orders, vec![Some(1), None]);
        assert_eq!(v("x1").finite(), None);
    }

    #[test]
    fn node_ring_sample() {
        let spec = CurveSpec::from_json(&NODE.replace("\"T\":4", "\"T\":5")).unwrap();
        let sample = sample_value_set(&spec, 3, 2, 7).unwrap();
        for c in [[0, 0], [1, 1], [2, 1], [1, 2], [2, 2], [3, 1]] {
            assert!(sample.contains(&pt(&c)), "{c:?}");
        }
        assert!(!sample.contains(&pt(&[0, 1])));
    }

    #[test]
    fn every_sample_is_reproduced_by_its_element() {
        let spec = CurveSpec::from_json(AXES).unwrap();
        for s in sample_elements(&spec, 2, 2, 3).unwrap() {
            let f = Poly::parse(&s.element.replace("*g1", ""), 3).unwrap();
            assert_eq!(value_of(&f, &spec).finite(), Some(s.value), "{}", s.element);
        }
    }

    #[test]
    fn node_ingests() {
        let spec = CurveSpec::from_json(NODE).unwrap();
        let e = ingest(&spec, &IngestOptions::default()).unwrap();
        assert_eq!(e.ambient().gamma(), pt(&[1, 1]));
        assert_eq!(e.ambient().small(), &[pt(&[0, 0]), pt(&[1, 1])]);
    }

    #[test]
    fn node_maximal_ideal_ingests() {
        let doc = NODE.replace("[\"1\"]", "[\"x1\", \"x2\"]");
        let e = ingest(&CurveSpec::from_json(&doc).unwrap(), &IngestOptions::default()).unwrap();
        assert_eq!(e.mu(), pt(&[1, 1]));
        assert_eq!(e.gamma_e(), pt(&[1, 1]));
    }

    #[test]
    fn axes_ingest_to_a3() {
        let e = ingest(&CurveSpec::from_json(AXES).unwrap(), &IngestOptions::default()).unwrap();
        assert_eq!(e.ambient().gamma(), pt(&[1, 1, 1]));
        assert_eq!(e.ambient().small(), &[pt(&[0, 0, 0]), pt(&[1, 1, 1])]);
    }

    #[test]
    fn single_branch_gives_numerical_semigroup() {
        let cusp = r#"{"m":2,"T":10,"branches":[{"x1":[[1,1,2]],"x2":[[1,1,3]]}],"generators":["1"]}"#;
        let sample = sample_value_set(&CurveSpec::from_json(cusp).unwrap(), 4, 2, 1).unwrap();
        let values: Vec<i64> = sample.iter().map(|p| p.get(0)).collect();
        assert_eq!(values, vec![0, 2, 3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn malformed_specs() {
        let bad_var = NODE.replace("\"x2\":[[1,1,1]]", "\"y\":[[1,1,1]]");
        assert!(matches!(CurveSpec::from_json(&bad_var), Err(Error::Curve(_))));
        let constant = NODE.replace("{\"x2\":[[1,1,1]]}", "{\"x2\":[[1,1,0]]}");
        assert!(matches!(CurveSpec::from_json(&constant), Err(Error::Curve(_))));
        let bad_gen = NODE.replace("[\"1\"]", "[\"1\", \"x1 +* x2\"]");
        match CurveSpec::from_json(&bad_gen) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(CurveSpec::from_json("{\"m\":1}"), Err(Error::Json(_))));
    }

    #[test]
    fn nullspace_is_exact() {
        let r = |n: i64| BigRational::from_integer(n.into());
        let k = nullspace(vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]], 3);
        assert_eq!(k.len(), 2);
        for x in k {
            assert!((r(1) * &x[0] + r(2) * &x[1] + r(3) * &x[2]).is_zero());
        }
    }
}
