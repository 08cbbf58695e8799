//! Named instances used throughout the tests and the CLI documentation.

use std::sync::Arc;

use crate::lattice::Point;
use crate::semigroup::{GoodIdeal, GoodSemigroup};

fn pts(list: &[&[i64]]) -> Vec<Point> {
    list.iter().map(|c| Point::of(c)).collect()
}

/// Values of the node `xy = 0`: `{0̲} ∪ ((1,1) + N²)`.
pub fn node() -> Arc<GoodSemigroup> {
    Arc::new(GoodSemigroup::new(Point::of(&[1, 1]), pts(&[&[0, 0], &[1, 1]])).unwrap())
}

/// Values of the three coordinate axes in 3-space: `{0̲} ∪ ((1,1,1) + N³)`.
pub fn a3() -> Arc<GoodSemigroup> {
    Arc::new(GoodSemigroup::new(Point::of(&[1, 1, 1]), pts(&[&[0, 0, 0], &[1, 1, 1]])).unwrap())
}

/// The canonical value set of [`a3`], written out by hand:
/// `{0̲} ∪ {permutations of (0,0,k)} ∪ (1̲ + N³)`.
pub fn k_of_a3() -> GoodIdeal {
    GoodIdeal::new(
        a3(),
        Point::zero(3),
        Point::ones(3),
        pts(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[1, 1, 1]]),
    )
    .unwrap()
}

/// The maximal ideal of the node: `(1,1) + N²`.
pub fn node_maximal_ideal() -> GoodIdeal {
    GoodIdeal::orthant(node(), Point::of(&[1, 1])).unwrap()
}
