//! Seeded generation of valid good semigroups and good semigroup ideals.
//!
//! Both are grown on a window `[lo, B]` whose top corner stands for the orthant
//! `B + N^p`: random seed points are closed under inf, under the semigroup
//! action and under coordinate raising (by inserting the smallest missing
//! witness) until nothing changes. The conductor and minimum are then
//! recomputed and the result validated.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{Point, Window};
use crate::semigroup::{least_conductor, GoodIdeal, GoodSemigroup, ValueSet};

const MAX_ROUNDS: usize = 64;

/// Clamped membership grid used while growing an instance.
struct Grid {
    window: Window,
    bits: Vec<bool>,
}

impl Grid {
    fn new(lo: Point, hi: Point) -> Self {
        let window = Window::new(lo, hi).expect("generator window");
        let mut bits = vec![false; window.len()];
        *bits.last_mut().expect("nonempty window") = true;
        Grid { window, bits }
    }

    fn contains(&self, v: &Point) -> bool {
        self.window.lo().le(v) && self.bits[self.window.index_of(&v.meet(&self.window.hi()))]
    }

    /// Inserts the clamp of `v`; `false` if already present or below the window.
    fn insert(&mut self, v: &Point) -> bool {
        if !self.window.lo().le(v) {
            return false;
        }
        let k = self.window.index_of(&v.meet(&self.window.hi()));
        !std::mem::replace(&mut self.bits[k], true)
    }

    fn members(&self) -> Vec<Point> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| self.window.point_at(k))
            .collect()
    }

    fn close_inf(&mut self) -> bool {
        let mut changed = false;
        loop {
            let members = self.members();
            let mut round = false;
            for (x, a) in members.iter().enumerate() {
                for b in &members[x + 1..] {
                    round |= self.insert(&a.meet(b));
                }
            }
            if !round {
                return changed;
            }
            changed = true;
        }
    }

    fn close_action(&mut self, semigroup: &[Point]) -> bool {
        let mut changed = false;
        loop {
            let members = self.members();
            let mut round = false;
            for v in &members {
                for s in semigroup {
                    round |= self.insert(&v.add(s));
                }
            }
            if !round {
                return changed;
            }
            changed = true;
        }
    }

    fn close_sums(&mut self) -> bool {
        let mut changed = false;
        loop {
            let members = self.members();
            let mut round = false;
            for (x, a) in members.iter().enumerate() {
                for b in &members[x..] {
                    round |= self.insert(&a.add(b));
                }
            }
            if !round {
                return changed;
            }
            changed = true;
        }
    }

    /// Inserts the least witness for every pair that lacks one.
    fn repair_raising(&mut self) -> bool {
        let members = self.members();
        let top = self.window.hi();
        let mut missing = Vec::new();
        for (x, a) in members.iter().enumerate() {
            for b in &members[x + 1..] {
                for i in 0..a.dim() {
                    if a.get(i) != b.get(i) {
                        continue;
                    }
                    let mut lo = a.meet(b);
                    lo.set(i, a.get(i) + 1);
                    let mut hi = top.join(&a.shift(1)).join(&b.shift(1));
                    for j in 0..a.dim() {
                        if j != i && a.get(j) != b.get(j) {
                            hi.set(j, lo.get(j));
                        }
                    }
                    if !crate::semigroup::exists_in_box_descending(lo, hi, &|v| self.contains(v)) {
                        missing.push(lo);
                    }
                }
            }
        }
        let mut changed = false;
        for m in missing {
            changed |= self.insert(&m);
        }
        changed
    }

    fn into_value_set(self) -> Result<ValueSet> {
        let members = self.members();
        let mu = members
            .iter()
            .fold(self.window.hi(), |acc, v| acc.meet(v));
        let conductor = least_conductor(&self.window, &|v| self.contains(v));
        ValueSet::from_parts(mu, conductor, members.into_iter().filter(|v| v.le(&conductor)))
    }
}

fn rng_for(seed: u64, p: usize, bound: i64, salt: u64) -> ChaCha8Rng {
    let mixed = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((p as u64) << 40)
        .wrapping_add((bound as u64) << 32)
        .wrapping_add(salt);
    ChaCha8Rng::seed_from_u64(mixed)
}

fn random_point(rng: &mut ChaCha8Rng, p: usize, lo: i64, hi: i64) -> Point {
    let coords: Vec<i64> = (0..p).map(|_| rng.gen_range(lo..=hi)).collect();
    Point::of(&coords)
}

fn check_params(p: usize, bound: i64) -> Result<()> {
    if !(2..=4).contains(&p) || !(2..=8).contains(&bound) {
        return Err(Error::Precondition(format!(
            "random generation needs 2 ≤ p ≤ 4 and 2 ≤ bound ≤ 8, got p={p}, bound={bound}"
        )));
    }
    Ok(())
}

/// A local good semigroup with conductor coordinates at most `bound`.
pub fn random_good_semigroup(seed: u64, p: usize, bound: i64) -> Result<GoodSemigroup> {
    check_params(p, bound)?;
    let mut rng = rng_for(seed, p, bound, 1);
    let mut grid = Grid::new(Point::zero(p), Point::splat(p, bound));
    grid.insert(&Point::zero(p));
    let seeds = rng.gen_range(1..=3);
    for _ in 0..seeds {
        let hi = rng.gen_range(1..=bound);
        grid.insert(&random_point(&mut rng, p, 1, hi));
    }
    let mut rounds = 0;
    loop {
        let mut changed = grid.close_sums();
        changed |= grid.close_inf();
        changed |= grid.repair_raising();
        if !changed {
            break;
        }
        rounds += 1;
        if rounds > MAX_ROUNDS {
            return Err(Error::GenerationFailed(format!("semigroup seed {seed} did not settle")));
        }
    }
    let s = Arc::new(GoodSemigroup::from_value_set(grid.into_value_set()?)?);
    let report = s.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::GenerationFailed(format!("semigroup seed {seed}: {v:?}")));
    }
    Ok(Arc::try_unwrap(s).unwrap_or_else(|s| (*s).clone()))
}

/// A valid good ideal over a random local good semigroup, both with conductor
/// coordinates at most `bound`. Deterministic per `(seed, p, bound)`.
pub fn random_good_ideal(seed: u64, p: usize, bound: i64) -> Result<GoodIdeal> {
    let ambient = Arc::new(random_good_semigroup(seed, p, bound)?);
    let mut rng = rng_for(seed, p, bound, 2);
    let semigroup_window = Window::new(Point::zero(p), Point::splat(p, bound))?;
    let s_members: Vec<Point> = semigroup_window
        .iter()
        .filter(|s| ambient.contains(s) && *s != Point::zero(p))
        .collect();

    let mut grid = Grid::new(Point::zero(p), Point::splat(p, bound));
    // Vary the shape: free seeds, ideals containing S, principal ideals, and
    // the canonical value set of S.
    match seed % 4 {
        0 => {
            for _ in 0..rng.gen_range(1..=4) {
                let hi = rng.gen_range(0..=bound);
                grid.insert(&random_point(&mut rng, p, 0, hi));
            }
        }
        1 => {
            grid.insert(&Point::zero(p));
            for _ in 0..rng.gen_range(0..=2) {
                grid.insert(&random_point(&mut rng, p, 0, bound));
            }
        }
        2 => {
            grid.insert(&random_point(&mut rng, p, 0, (bound / 2).max(1)));
        }
        _ => {
            let k = crate::duality::canonical_values(&ambient)?;
            for v in k.small() {
                grid.insert(v);
            }
        }
    }
    let mut rounds = 0;
    loop {
        let mut changed = grid.close_action(&s_members);
        changed |= grid.close_inf();
        changed |= grid.repair_raising();
        if !changed {
            break;
        }
        rounds += 1;
        if rounds > MAX_ROUNDS {
            return Err(Error::GenerationFailed(format!("ideal seed {seed} did not settle")));
        }
    }
    let set = grid.into_value_set()?;
    let e = GoodIdeal::from_value_set(Arc::clone(&ambient), set)?;
    // Shift down by up to 2 so that negative minima occur.
    let t = random_point(&mut rng, p, -2, 0);
    let e = e.translate(&t)?;
    let report = e.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::GenerationFailed(format!("ideal seed {seed}: {v:?}")));
    }
    Ok(e)
}
