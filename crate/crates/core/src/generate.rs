//! Deterministic point-set families.
//!
//! Every generator is a pure function of its parameters: rerunning with
//! the same arguments yields the identical ordered point list. The random
//! family is driven by ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded from a
//! caller-supplied 64-bit seed; no global or time-dependent state is used.

use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geom::{Point2, PointSet};
use crate::rational::{int, Rational};

/// The `m × m` integer grid `{0..m-1}²` in lexicographic order.
pub fn grid(m: u32) -> Result<PointSet> {
    if m == 0 {
        return Err(Error::InvalidParameter("grid side must be at least 1".into()));
    }
    let mut points = Vec::with_capacity((m as usize) * (m as usize));
    for x in 0..m {
        for y in 0..m {
            points.push(Point2::from_ints(x as i64, y as i64));
        }
    }
    PointSet::new(points)
}

/// Rational point on the circle of radius `r` with tangent-half-angle `t`:
/// `(r(1-t²)/(1+t²), 2rt/(1+t²))`.
fn circle_point(r: &Rational, t: u64) -> Point2 {
    let t = int(t as i64);
    let t2 = &t * &t;
    let denom = int(1) + &t2;
    let x = r * (int(1) - &t2) / &denom;
    let y = r * int(2) * &t / &denom;
    Point2::new(x, y)
}

/// A center at the origin plus two concentric circles of rational points.
///
/// The remaining `n - 1` points are split between the circles of radius
/// `r1` and `r2` (the `r1` circle takes the larger half when `n - 1` is
/// odd). Circle points come from the tangent-half-angle parametrization at
/// `t = 0, 1, 2, …`; parameters whose point is already present are
/// skipped. This family concentrates equal-leg pairs on the hinge key
/// `(r1², r2²)`, which is realized at least `⌊(n-1)/2⌋²` times.
pub fn two_circles(n: u32, r1: &Rational, r2: &Rational) -> Result<PointSet> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "two-circles family needs at least 4 points, got {n}"
        )));
    }
    if !crate::rational::is_positive(r1) || !crate::rational::is_positive(r2) {
        return Err(Error::InvalidParameter("circle radii must be positive".into()));
    }
    if r1 == r2 {
        return Err(Error::InvalidParameter("circle radii must differ".into()));
    }

    let rest = (n - 1) as u64;
    let first = rest.div_ceil(2);
    let second = rest / 2;

    let mut points = vec![Point2::new(Rational::zero(), Rational::zero())];
    let mut seen: HashSet<Point2> = points.iter().cloned().collect();
    for (radius, want) in [(r1, first), (r2, second)] {
        let mut taken = 0u64;
        let mut t = 0u64;
        while taken < want {
            let p = circle_point(radius, t);
            t += 1;
            if seen.insert(p.clone()) {
                points.push(p);
                taken += 1;
            }
        }
    }
    PointSet::new(points)
}

/// Uniform integer in `[0, bound)` by rejection from raw 64-bit output,
/// so the stream depends only on the generator, not on platform details.
fn uniform_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = (u64::MAX / bound) * bound;
    loop {
        let raw = rng.next_u64();
        if raw < zone {
            return raw % bound;
        }
    }
}

/// `n` distinct points drawn uniformly from the integer square
/// `[-bound, bound]²`, sampled without replacement by rejection.
pub fn random_square(n: u32, bound: u32, seed: u64) -> Result<PointSet> {
    let side = 2 * bound as u64 + 1;
    let capacity = side * side;
    if n as u64 > capacity {
        return Err(Error::InvalidParameter(format!(
            "cannot place {n} distinct points in a {side}×{side} integer square"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n as usize);
    let mut seen: HashSet<(i64, i64)> = HashSet::with_capacity(n as usize);
    while points.len() < n as usize {
        let x = uniform_below(&mut rng, side) as i64 - bound as i64;
        let y = uniform_below(&mut rng, side) as i64 - bound as i64;
        if seen.insert((x, y)) {
            points.push(Point2::from_ints(x, y));
        }
    }
    PointSet::new(points)
}

/// `n` collinear points `(0,0), (1,0), …, (n-1,0)`.
pub fn collinear(n: u32) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "collinear family needs at least 1 point".into(),
        ));
    }
    PointSet::new((0..n as i64).map(|i| Point2::from_ints(i, 0)).collect())
}
