//! Integer lattice primitives: points of Z^p under the product order,
//! rectangular windows, index sets and the Δ-set predicates.
//!
//! Everything here works on arbitrary subsets of Z^p; nothing assumes the
//! good-semigroup axioms.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of branches.
pub const MAX_DIM: usize = 8;

/// Default bound on the absolute value of any coordinate.
pub const DEFAULT_COORD_LIMIT: i64 = 1_000_000;

/// A value vector in Z^p, stored inline.
#[derive(Clone, Copy)]
pub struct Point {
    dim: u8,
    coords: [i64; MAX_DIM],
}

impl Point {
    pub fn new(coords: &[i64]) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(Error::Dimension(format!(
                "point dimension {} outside 1..={}",
                coords.len(),
                MAX_DIM
            )));
        }
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Point {
            dim: coords.len() as u8,
            coords: c,
        })
    }

    /// Panicking constructor for literals in tests and internal code.
    pub fn of(coords: &[i64]) -> Self {
        Self::new(coords).expect("invalid point literal")
    }

    pub fn splat(dim: usize, value: i64) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        let mut c = [0; MAX_DIM];
        c[..dim].fill(value);
        Point {
            dim: dim as u8,
            coords: c,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::splat(dim, 0)
    }

    pub fn ones(dim: usize) -> Self {
        Self::splat(dim, 1)
    }

    /// The i-th unit vector (0-based index).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut p = Self::zero(dim);
        p.coords[i] = 1;
        p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub fn get(&self, i: usize) -> i64 {
        self.coords()[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: i64) {
        assert!(i < self.dim(), "index {i} out of range");
        self.coords[i] = value;
    }

    pub fn with(mut self, i: usize, value: i64) -> Self {
        self.set(i, value);
        self
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Point, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Point> {
        self.check_dim(other)?;
        let mut out = *self;
        for i in 0..self.dim() {
            out.coords[i] = f(self.coords[i], other.coords[i]).ok_or_else(|| {
                Error::Overflow(format!("coordinate overflow combining {self} and {other}"))
            })?;
        }
        Ok(out)
    }

    /// Componentwise minimum.
    pub fn inf(&self, other: &Point) -> Result<Point> {
        self.zip_with(other, |a, b| Some(a.min(b)))
    }

    /// Componentwise maximum.
    pub fn sup(&self, other: &Point) -> Result<Point> {
        self.zip_with(other, |a, b| Some(a.max(b)))
    }

    pub fn checked_add(&self, other: &Point) -> Result<Point> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn checked_sub(&self, other: &Point) -> Result<Point> {
        self.zip_with(other, i64::checked_sub)
    }

    /// Componentwise minimum for points already known to share a dimension.
    #[inline]
    pub(crate) fn meet(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = *self;
        for i in 0..self.dim() {
            out.coords[i] = self.coords[i].min(other.coords[i]);
        }
        out
    }

    #[inline]
    pub(crate) fn join(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = *self;
        for i in 0..self.dim() {
            out.coords[i] = self.coords[i].max(other.coords[i]);
        }
        out
    }

    #[inline]
    pub(crate) fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = *self;
        for i in 0..self.dim() {
            out.coords[i] = self.coords[i] + other.coords[i];
        }
        out
    }

    #[inline]
    pub(crate) fn sub(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = *self;
        for i in 0..self.dim() {
            out.coords[i] = self.coords[i] - other.coords[i];
        }
        out
    }

    pub(crate) fn shift(&self, delta: i64) -> Point {
        let mut out = *self;
        for i in 0..self.dim() {
            out.coords[i] += delta;
        }
        out
    }

    /// Product order: every coordinate of `self` is at most the matching one.
    #[inline]
    pub fn le(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        self.coords()
            .iter()
            .zip(other.coords())
            .all(|(a, b)| a <= b)
    }

    /// Strict in every coordinate.
    pub fn lt_all(&self, other: &Point) -> bool {
        self.coords()
            .iter()
            .zip(other.coords())
            .all(|(a, b)| a < b)
    }

    /// Keeps the coordinates listed in `idx`, in that order.
    pub fn project(&self, idx: &IndexSet) -> Point {
        let kept: Vec<i64> = idx.iter().map(|i| self.coords[i]).collect();
        Point::of(&kept)
    }

    pub fn max_abs(&self) -> i64 {
        self.coords()
            .iter()
            .map(|c| c.checked_abs().unwrap_or(i64::MAX))
            .max()
            .unwrap_or(0)
    }

    pub fn check_limit(&self, limit: i64) -> Result<()> {
        if self.max_abs() > limit {
            return Err(Error::Overflow(format!(
                "coordinate of {self} exceeds the limit {limit}"
            )));
        }
        Ok(())
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.coords() == other.coords()
    }
}

impl Eq for Point {}

impl std::hash::Hash for Point {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords().hash(state);
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order, used for canonical output. Not the product order.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords().cmp(other.coords())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(deserializer)?;
        Point::new(&v).map_err(serde::de::Error::custom)
    }
}

/// Componentwise minimum of two points.
pub fn inf(a: &Point, b: &Point) -> Result<Point> {
    a.inf(b)
}

/// A nonempty-or-empty subset of branch indices, stored as a bit mask.
/// Indices are 0-based internally and printed 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(u16);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(0)
    }

    pub fn full(dim: usize) -> Self {
        IndexSet(((1u32 << dim) - 1) as u16)
    }

    pub fn single(i: usize) -> Self {
        IndexSet(1 << i)
    }

    pub fn pair(i: usize, j: usize) -> Self {
        IndexSet((1 << i) | (1 << j))
    }

    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u16;
        for &i in indices {
            if i >= dim {
                return Err(Error::Dimension(format!(
                    "index {} out of range for dimension {dim}",
                    i + 1
                )));
            }
            if mask & (1 << i) != 0 {
                return Err(Error::Dimension(format!("duplicate index {}", i + 1)));
            }
            mask |= 1 << i;
        }
        Ok(IndexSet(mask))
    }

    /// The full index set with `i` removed.
    pub fn all_but(dim: usize, i: usize) -> Self {
        IndexSet(Self::full(dim).0 & !(1 << i))
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.0;
        (0..16).filter(move |i| mask & (1 << i) != 0)
    }

    pub fn complement(&self, dim: usize) -> Self {
        IndexSet(Self::full(dim).0 & !self.0)
    }

    /// Every nonempty subset of `{0..dim}`, in increasing mask order.
    pub fn nonempty_subsets(dim: usize) -> impl Iterator<Item = IndexSet> {
        (1..(1u32 << dim)).map(|m| IndexSet(m as u16))
    }

    /// Nonempty subsets other than the full set.
    pub fn proper_subsets(dim: usize) -> impl Iterator<Item = IndexSet> {
        let full = Self::full(dim);
        Self::nonempty_subsets(dim).filter(move |s| *s != full)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// `v ∈ Δ_J(α, Z^p)`: equal to α on J, strictly above it off J.
pub fn in_delta_j(v: &Point, alpha: &Point, j: IndexSet) -> Result<bool> {
    if j.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if v.dim() != alpha.dim() {
        return Err(Error::Dimension(format!(
            "dimension mismatch: {} vs {}",
            v.dim(),
            alpha.dim()
        )));
    }
    Ok(in_delta_j_unchecked(v, alpha, j))
}

#[inline]
pub(crate) fn in_delta_j_unchecked(v: &Point, alpha: &Point, j: IndexSet) -> bool {
    (0..v.dim()).all(|k| {
        if j.contains(k) {
            v.get(k) == alpha.get(k)
        } else {
            v.get(k) > alpha.get(k)
        }
    })
}

/// `v ∈ Δ(α, Z^p)`: exactly one coordinate equal to α, all others above.
pub fn in_delta(v: &Point, alpha: &Point) -> Result<bool> {
    if v.dim() != alpha.dim() {
        return Err(Error::Dimension(format!(
            "dimension mismatch: {} vs {}",
            v.dim(),
            alpha.dim()
        )));
    }
    Ok(in_delta_unchecked(v, alpha))
}

#[inline]
pub(crate) fn in_delta_unchecked(v: &Point, alpha: &Point) -> bool {
    let mut equal = 0;
    for k in 0..v.dim() {
        match v.get(k).cmp(&alpha.get(k)) {
            Ordering::Less => return false,
            Ordering::Equal => equal += 1,
            Ordering::Greater => {}
        }
    }
    equal == 1
}

/// A closed rectangular window `[lo, hi]` of lattice points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    lo: Point,
    hi: Point,
}

impl Window {
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(Error::Dimension(format!(
                "window corners differ in dimension: {lo} vs {hi}"
            )));
        }
        if !lo.le(&hi) {
            return Err(Error::Window(format!("lower corner {lo} not below {hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> Point {
        self.lo
    }

    pub fn hi(&self) -> Point {
        self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn extent(&self, i: usize) -> usize {
        (self.hi.get(i) - self.lo.get(i) + 1) as usize
    }

    /// Number of lattice points; saturates instead of overflowing.
    pub fn len(&self) -> usize {
        (0..self.dim()).fold(1usize, |acc, i| acc.saturating_mul(self.extent(i)))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &Point) -> bool {
        self.lo.le(v) && v.le(&self.hi)
    }

    /// Row-major index, last coordinate fastest. Caller guarantees membership.
    #[inline]
    pub fn index_of(&self, v: &Point) -> usize {
        let mut idx = 0usize;
        for i in 0..self.dim() {
            idx = idx * self.extent(i) + (v.get(i) - self.lo.get(i)) as usize;
        }
        idx
    }

    /// Inverse of [`Window::index_of`].
    #[inline]
    pub fn point_at(&self, mut idx: usize) -> Point {
        let mut p = self.lo;
        for i in (0..self.dim()).rev() {
            let e = self.extent(i);
            p.set(i, self.lo.get(i) + (idx % e) as i64);
            idx /= e;
        }
        p
    }

    /// Lexicographically ascending iteration.
    pub fn iter(&self) -> WindowIter {
        WindowIter {
            window: *self,
            next: Some(self.lo),
        }
    }
}

pub struct WindowIter {
    window: Window,
    next: Option<Point>,
}

impl Iterator for WindowIter {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let current = self.next?;
        let mut succ = current;
        let lo = self.window.lo;
        let hi = self.window.hi;
        let mut i = current.dim();
        self.next = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if succ.get(i) < hi.get(i) {
                succ.set(i, succ.get(i) + 1);
                break Some(succ);
            }
            succ.set(i, lo.get(i));
        };
        Some(current)
    }
}
