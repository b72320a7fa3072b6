//! Plane points, point sets, and distance profiles.
//!
//! A *distance profile* of a point `q` in a finite set `P` is the multiset
//! of squared distances from `q` to every point of `P` (including `q`
//! itself, at squared distance 0). Profiles are the single primitive the
//! hinge statistics and the line-space constructions are both built on:
//! the dot product of two profiles counts the ordered point pairs at equal
//! distance from the two centers.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A point of the rational plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    /// Integer-coordinate convenience constructor.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(crate::rational::int(x), crate::rational::int(y))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// A squared Euclidean distance; always nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquaredDistance(Rational);

impl SquaredDistance {
    /// Wraps a nonnegative rational.
    pub fn new(value: Rational) -> Result<Self> {
        if value < Rational::from_integer(0.into()) {
            return Err(Error::InvalidParameter(format!(
                "squared distance must be nonnegative, got {}",
                format_rational(&value)
            )));
        }
        Ok(SquaredDistance(value))
    }

    pub fn zero() -> Self {
        SquaredDistance(Rational::from_integer(0.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        use num_traits::Zero;
        self.0.is_zero()
    }
}

impl fmt::Display for SquaredDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// Squared Euclidean distance between two points. Exact and symmetric.
pub fn squared_distance(a: &Point2, b: &Point2) -> SquaredDistance {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    SquaredDistance(&dx * &dx + &dy * &dy)
}

/// An ordered list of pairwise-distinct plane points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point2>,
}

impl PointSet {
    /// Builds a set, rejecting duplicates.
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePoint {
                    point: p.to_string(),
                });
            }
        }
        Ok(PointSet { points })
    }

    /// Integer-coordinate convenience constructor.
    pub fn from_integer_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        PointSet::new(
            pairs
                .iter()
                .map(|&(x, y)| Point2::from_ints(x, y))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn get(&self, index: usize) -> Result<&Point2> {
        self.points.get(index).ok_or(Error::IndexOutOfRange {
            index,
            n: self.points.len(),
        })
    }
}

/// Multiset of squared distances from one center to every set point.
///
/// The counts sum to the size of the set; the center contributes the
/// distance 0 entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    center: usize,
    counts: BTreeMap<SquaredDistance, u64>,
}

impl DistanceProfile {
    pub fn center(&self) -> usize {
        self.center
    }

    /// Number of set points at the given squared distance from the center.
    pub fn count(&self, d: &SquaredDistance) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    /// Total mass; equals the size of the underlying set.
    pub fn mass(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Distances realized from the center, in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (&SquaredDistance, u64)> {
        self.counts.iter().map(|(d, &c)| (d, c))
    }

    pub fn distinct_distances(&self) -> usize {
        self.counts.len()
    }
}

/// Distance profile of the point at `center` within `set`.
pub fn distance_profile(set: &PointSet, center: usize) -> Result<DistanceProfile> {
    let q = set.get(center)?;
    let mut counts: BTreeMap<SquaredDistance, u64> = BTreeMap::new();
    for p in set.points() {
        *counts.entry(squared_distance(q, p)).or_insert(0) += 1;
    }
    Ok(DistanceProfile { center, counts })
}

/// Dot product of two profiles: the number of ordered pairs `(p, p')`
/// with `p` at the same squared distance from one center as `p'` is from
/// the other.
pub fn profile_dot(a: &DistanceProfile, b: &DistanceProfile) -> u128 {
    // Walk the smaller map, probe the larger.
    let (small, large) = if a.counts.len() <= b.counts.len() {
        (a, b)
    } else {
        (b, a)
    };
    let mut total: u128 = 0;
    for (d, c) in small.iter() {
        let other = large.count(d);
        if other != 0 {
            total += c as u128 * other as u128;
        }
    }
    total
}

/// Interned view of all pairwise squared distances of a set.
///
/// Distances are deduplicated and sorted; every profile becomes a sparse
/// vector over small integer ids, which keeps the quadratic and cubic
/// aggregation loops off bignum arithmetic.
#[derive(Debug, Clone)]
pub struct DistanceIndex {
    values: Vec<SquaredDistance>,
    /// Per center: `(distance id, count)`, sorted by id.
    profiles: Vec<Vec<(u32, u32)>>,
}

impl DistanceIndex {
    pub fn build(set: &PointSet) -> DistanceIndex {
        let n = set.len();
        let pts = set.points();
        // First-seen interning, then a remap so ids follow distance order.
        let mut lookup: HashMap<SquaredDistance, u32> = HashMap::new();
        let mut values: Vec<SquaredDistance> = Vec::new();
        let mut raw: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];

        let bump = |profile: &mut Vec<(u32, u32)>, id: u32| {
            match profile.iter_mut().find(|(i, _)| *i == id) {
                Some((_, c)) => *c += 1,
                None => profile.push((id, 1)),
            }
        };

        for i in 0..n {
            for j in i..n {
                let d = squared_distance(&pts[i], &pts[j]);
                let id = match lookup.get(&d) {
                    Some(&id) => id,
                    None => {
                        let id = values.len() as u32;
                        lookup.insert(d.clone(), id);
                        values.push(d);
                        id
                    }
                };
                bump(&mut raw[i], id);
                if i != j {
                    bump(&mut raw[j], id);
                }
            }
        }

        // Remap ids into sorted-distance order for deterministic reports.
        let mut order: Vec<u32> = (0..values.len() as u32).collect();
        order.sort_by(|&a, &b| values[a as usize].cmp(&values[b as usize]));
        let mut rank = vec![0u32; values.len()];
        for (new_id, &old_id) in order.iter().enumerate() {
            rank[old_id as usize] = new_id as u32;
        }
        let mut sorted_values = values.clone();
        sorted_values.sort();
        for profile in &mut raw {
            for entry in profile.iter_mut() {
                entry.0 = rank[entry.0 as usize];
            }
            profile.sort_unstable();
        }

        DistanceIndex {
            values: sorted_values,
            profiles: raw,
        }
    }

    /// Number of distinct squared distances (including 0 when the set is
    /// nonempty).
    pub fn distinct(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, id: u32) -> &SquaredDistance {
        &self.values[id as usize]
    }

    pub fn id_of(&self, d: &SquaredDistance) -> Option<u32> {
        self.values
            .binary_search(d)
            .ok()
            .map(|i| i as u32)
    }

    /// Sparse profile of one center over distance ids, sorted by id.
    pub fn profile(&self, center: usize) -> &[(u32, u32)] {
        &self.profiles[center]
    }

    pub fn centers(&self) -> usize {
        self.profiles.len()
    }

    /// Dot product of two interned profiles (sorted-merge join).
    pub fn dot(&self, a: usize, b: usize) -> u128 {
        let (mut i, mut j) = (0, 0);
        let (pa, pb) = (&self.profiles[a], &self.profiles[b]);
        let mut total: u128 = 0;
        while i < pa.len() && j < pb.len() {
            match pa[i].0.cmp(&pb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    total += pa[i].1 as u128 * pb[j].1 as u128;
                    i += 1;
                    j += 1;
                }
            }
        }
        total
    }
}

/// Distance buckets: for each center, the points at each squared distance.
///
/// This is the join structure used to enumerate pairs of lines that share
/// a projective point without testing all pairs.
#[derive(Debug, Clone)]
pub struct DistanceBuckets {
    index: DistanceIndex,
    /// Per center: `(distance id, member point indices)`, sorted by id.
    members: Vec<Vec<(u32, Vec<u32>)>>,
}

impl DistanceBuckets {
    pub fn build(set: &PointSet) -> DistanceBuckets {
        let index = DistanceIndex::build(set);
        let n = set.len();
        let pts = set.points();
        let mut members: Vec<Vec<(u32, Vec<u32>)>> = vec![Vec::new(); n];
        for q in 0..n {
            let mut per_center: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for p in 0..n {
                let d = squared_distance(&pts[q], &pts[p]);
                let id = index
                    .id_of(&d)
                    .expect("distance already interned during index build");
                per_center.entry(id).or_default().push(p as u32);
            }
            members[q] = per_center.into_iter().collect();
        }
        DistanceBuckets { index, members }
    }

    pub fn index(&self) -> &DistanceIndex {
        &self.index
    }

    /// Buckets of one center, sorted by distance id.
    pub fn of(&self, center: usize) -> &[(u32, Vec<u32>)] {
        &self.members[center]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rational};

    #[test]
    fn squared_distance_matches_hand_values() {
        let a = Point2::from_ints(0, 0);
        let b = Point2::from_ints(3, 4);
        assert_eq!(squared_distance(&a, &b).value(), &int(25));

        let c = Point2::new(rational(1, 2).unwrap(), int(0));
        let d = Point2::new(int(0), rational(1, 3).unwrap());
        assert_eq!(
            squared_distance(&c, &d).value(),
            &rational(13, 36).unwrap()
        );
    }

    #[test]
    fn zero_distance_only_for_equal_points() {
        let a = Point2::from_ints(2, -1);
        assert!(squared_distance(&a, &a).is_zero());
        let b = Point2::from_ints(2, 0);
        assert!(!squared_distance(&a, &b).is_zero());
    }

    #[test]
    fn duplicate_points_rejected() {
        let err = PointSet::from_integer_pairs(&[(0, 0), (1, 1), (0, 0)]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint { .. }));
        // Same value in different lexical forms is still a duplicate.
        let p = Point2::new(rational(1, 2).unwrap(), int(0));
        let q = Point2::new(rational(2, 4).unwrap(), int(0));
        assert!(PointSet::new(vec![p, q]).is_err());
    }

    #[test]
    fn profile_of_right_triangle_corner() {
        let set = PointSet::from_integer_pairs(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let prof = distance_profile(&set, 0).unwrap();
        assert_eq!(prof.mass(), 3);
        assert_eq!(prof.count(&SquaredDistance::zero()), 1);
        assert_eq!(prof.count(&SquaredDistance::new(int(1)).unwrap()), 2);
        assert_eq!(prof.distinct_distances(), 2);
    }

    #[test]
    fn profile_dot_of_right_triangle() {
        let set = PointSet::from_integer_pairs(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let pa = distance_profile(&set, 0).unwrap();
        let pb = distance_profile(&set, 1).unwrap();
        // center (0,0): {0:1, 1:2}; center (1,0): {0:1, 1:1, 2:1} -> dot 3.
        assert_eq!(profile_dot(&pa, &pb), 3);
        assert_eq!(profile_dot(&pa, &pa), 5);
        assert_eq!(profile_dot(&pb, &pb), 3);
    }

    #[test]
    fn interned_index_agrees_with_profiles() {
        let set =
            PointSet::from_integer_pairs(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 5)]).unwrap();
        let index = DistanceIndex::build(&set);
        for a in 0..set.len() {
            let pa = distance_profile(&set, a).unwrap();
            let mass: u64 = index.profile(a).iter().map(|&(_, c)| c as u64).sum();
            assert_eq!(mass, set.len() as u64);
            for b in 0..set.len() {
                let pb = distance_profile(&set, b).unwrap();
                assert_eq!(index.dot(a, b), profile_dot(&pa, &pb), "centers {a},{b}");
            }
        }
    }

    #[test]
    fn buckets_partition_the_set() {
        let set = PointSet::from_integer_pairs(&[(0, 0), (1, 0), (0, 1), (3, 3)]).unwrap();
        let buckets = DistanceBuckets::build(&set);
        for q in 0..set.len() {
            let mut seen: Vec<u32> = buckets
                .of(q)
                .iter()
                .flat_map(|(_, m)| m.iter().copied())
                .collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..set.len() as u32).collect::<Vec<_>>());
        }
    }
}
