//! Hinge statistics.
//!
//! A *hinge* is an equivalence class of ordered point triples `(p, q, r)`
//! keyed by the ordered pair of squared leg lengths
//! `(‖p−q‖², ‖q−r‖²)` — two triples are equivalent when both legs match.
//! For a set of `n` points this module computes, exactly:
//!
//! * the realisation histogram `key → count`,
//! * the number of distinct hinges,
//! * the hinge energy (sum of squared realisation counts), and
//! * the largest realisation count with a witness key.
//!
//! Counting runs over per-center distance profiles: the number of triples
//! with center `q` and key `(d1, d2)` is `c_q(d1)·c_q(d2)`, so the whole
//! histogram is a sum of profile outer products — `O(n·D²)` for `D`
//! distinct distances instead of `O(n³)` triple enumeration. An `O(n³)`
//! brute-force oracle is kept alongside for cross-checking.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{squared_distance, DistanceIndex, PointSet, SquaredDistance};
use crate::limits::Deadline;

/// Which ordered triples are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleConvention {
    /// Allow repeated points inside a triple (`p = q`, `q = r`, `p = r`).
    /// With this set the total triple mass is exactly `n³`.
    pub include_degenerate: bool,
    /// Keep the two legs ordered. When false, keys `(d1, d2)` and
    /// `(d2, d1)` are merged — a reporting view over the same triples.
    pub ordered: bool,
}

impl TripleConvention {
    /// All `n³` ordered triples, repeats allowed. The headline convention.
    pub fn all_triples() -> Self {
        TripleConvention {
            include_degenerate: true,
            ordered: true,
        }
    }

    /// Ordered triples of three pairwise-distinct points: `n(n-1)(n-2)`.
    pub fn distinct_points() -> Self {
        TripleConvention {
            include_degenerate: false,
            ordered: true,
        }
    }

    pub fn label(&self) -> String {
        format!(
            "{}-{}",
            if self.ordered { "ordered" } else { "unordered" },
            if self.include_degenerate {
                "all-triples"
            } else {
                "distinct-points"
            }
        )
    }
}

impl Default for TripleConvention {
    fn default() -> Self {
        TripleConvention::all_triples()
    }
}

/// Ordered pair of squared leg lengths identifying a hinge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HingeKey {
    pub d1: SquaredDistance,
    pub d2: SquaredDistance,
}

/// Exact hinge statistics of one point set under one convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HingeStats {
    pub convention: TripleConvention,
    pub n: usize,
    /// Number of distinct hinge keys with at least one realisation.
    pub distinct_count: u64,
    /// Sum of squared realisation counts.
    pub energy: u128,
    /// Total number of counted triples.
    pub total_triples: u128,
    /// Largest realisation count.
    pub max_realisations: u64,
    /// Smallest key attaining `max_realisations` (None for empty sets).
    pub max_key: Option<HingeKey>,
    /// Full `key → count` histogram in key order, when materialized.
    pub histogram: Option<Vec<(HingeKey, u64)>>,
}

impl HingeStats {
    /// Realisation count of one key (histogram must be materialized).
    pub fn realisations(&self, key: &HingeKey) -> Option<u64> {
        let hist = self.histogram.as_ref()?;
        hist.binary_search_by(|(k, _)| k.cmp(key))
            .ok()
            .map(|i| hist[i].1)
    }
}

/// Knobs for [`hinge_stats_opts`].
#[derive(Debug, Clone, Copy)]
pub struct HingeOptions {
    /// Keep the full histogram in the result. Distinct count, energy, and
    /// maxima are computed either way.
    pub materialize_histogram: bool,
    pub deadline: Deadline,
}

impl Default for HingeOptions {
    fn default() -> Self {
        HingeOptions {
            materialize_histogram: true,
            deadline: Deadline::none(),
        }
    }
}

// Dense accumulation is used while the key table fits comfortably in
// memory; beyond that the aggregation falls back to hash maps.
const DENSE_CELL_CAP: usize = 4_200_000;

enum KeyCounts {
    Dense { d: usize, cells: Vec<u64> },
    Sparse(HashMap<(u32, u32), u64>),
}

impl KeyCounts {
    fn new(d: usize) -> Self {
        if d.saturating_mul(d) <= DENSE_CELL_CAP {
            KeyCounts::Dense {
                d,
                cells: vec![0; d * d],
            }
        } else {
            KeyCounts::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn add(&mut self, k1: u32, k2: u32, count: u64) {
        match self {
            KeyCounts::Dense { d, cells } => cells[k1 as usize * *d + k2 as usize] += count,
            KeyCounts::Sparse(map) => *map.entry((k1, k2)).or_insert(0) += count,
        }
    }

    fn merge(mut self, other: KeyCounts) -> KeyCounts {
        match (&mut self, other) {
            (KeyCounts::Dense { cells, .. }, KeyCounts::Dense { cells: o, .. }) => {
                for (a, b) in cells.iter_mut().zip(o) {
                    *a += b;
                }
                self
            }
            (KeyCounts::Sparse(map), KeyCounts::Sparse(o)) => {
                for (k, v) in o {
                    *map.entry(k).or_insert(0) += v;
                }
                self
            }
            _ => unreachable!("accumulator shapes agree within one run"),
        }
    }

    /// Nonzero cells in key order.
    fn into_sorted(self) -> Vec<((u32, u32), u64)> {
        match self {
            KeyCounts::Dense { d, cells } => {
                let mut out = Vec::new();
                for (idx, &c) in cells.iter().enumerate() {
                    if c != 0 {
                        out.push((((idx / d) as u32, (idx % d) as u32), c));
                    }
                }
                out
            }
            KeyCounts::Sparse(map) => {
                let mut out: Vec<_> = map.into_iter().collect();
                out.sort_unstable_by_key(|&(k, _)| k);
                out
            }
        }
    }
}

/// Hinge statistics with the default options (histogram included).
pub fn hinge_stats(set: &PointSet, convention: TripleConvention) -> Result<HingeStats> {
    hinge_stats_opts(set, convention, &HingeOptions::default())
}

/// Hinge statistics with explicit options.
pub fn hinge_stats_opts(
    set: &PointSet,
    convention: TripleConvention,
    options: &HingeOptions,
) -> Result<HingeStats> {
    let index = DistanceIndex::build(set);
    hinge_stats_from_index(set, &index, convention, options)
}

/// As [`hinge_stats_opts`] but reusing a prebuilt distance index.
pub fn hinge_stats_from_index(
    set: &PointSet,
    index: &DistanceIndex,
    convention: TripleConvention,
    options: &HingeOptions,
) -> Result<HingeStats> {
    let n = set.len();
    let d = index.distinct();

    // Distance id 0 is always the zero distance (ids follow value order and
    // every center sees itself); degenerate legs are exactly the id-0 ones.
    debug_assert!(n == 0 || index.value(0).is_zero());

    let chunk_count = rayon::current_num_threads().clamp(1, 8);
    let chunk_size = n.div_ceil(chunk_count).max(1);
    let centers: Vec<usize> = (0..n).collect();

    let counts = centers
        .par_chunks(chunk_size)
        .map(|chunk| -> Result<KeyCounts> {
            let mut acc = KeyCounts::new(d);
            for &q in chunk {
                options.deadline.check("hinge aggregation")?;
                let profile = index.profile(q);
                for &(ia, ca) in profile {
                    if !convention.include_degenerate && ia == 0 {
                        continue;
                    }
                    for &(ib, cb) in profile {
                        if !convention.include_degenerate && ib == 0 {
                            continue;
                        }
                        let mut val = ca as u64 * cb as u64;
                        if !convention.include_degenerate && ia == ib {
                            // remove the p = r triples within equal legs
                            val -= ca as u64;
                        }
                        if val != 0 {
                            acc.add(ia, ib, val);
                        }
                    }
                }
            }
            Ok(acc)
        })
        .try_reduce(|| KeyCounts::new(d), |a, b| Ok(a.merge(b)))?;

    let mut sorted = counts.into_sorted();
    if !convention.ordered {
        // Fold (a, b) with a > b into (b, a); input is key-ordered, output
        // stays key-ordered because merged keys (min, max) already exist.
        let mut merged: Vec<((u32, u32), u64)> = Vec::with_capacity(sorted.len());
        let mut upper: HashMap<(u32, u32), u64> = HashMap::new();
        for &((a, b), c) in &sorted {
            if a > b {
                *upper.entry((b, a)).or_insert(0) += c;
            }
        }
        for ((a, b), c) in sorted.drain(..) {
            if a > b {
                continue;
            }
            let extra = upper.get(&(a, b)).copied().unwrap_or(0);
            merged.push(((a, b), c + extra));
        }
        sorted = merged;
    }

    let mut distinct_count: u64 = 0;
    let mut energy: u128 = 0;
    let mut total: u128 = 0;
    let mut max_realisations: u64 = 0;
    let mut max_ids: Option<(u32, u32)> = None;
    for &(ids, c) in &sorted {
        distinct_count += 1;
        energy += (c as u128) * (c as u128);
        total += c as u128;
        if c > max_realisations {
            max_realisations = c;
            max_ids = Some(ids);
        }
    }

    if convention.include_degenerate && convention.ordered {
        let expect = (n as u128).pow(3);
        if total != expect {
            return Err(Error::Internal(format!(
                "triple mass {total} != n³ = {expect}"
            )));
        }
    }

    let key_of = |(a, b): (u32, u32)| HingeKey {
        d1: index.value(a).clone(),
        d2: index.value(b).clone(),
    };

    let stats = HingeStats {
        convention,
        n,
        distinct_count,
        energy,
        total_triples: total,
        max_realisations,
        max_key: max_ids.map(key_of),
        histogram: options.materialize_histogram.then(|| {
            sorted
                .iter()
                .map(|&(ids, c)| (key_of(ids), c))
                .collect()
        }),
    };

    // The counting bound `distinct · energy ≥ total²` is a theorem for any
    // histogram; a violation means the aggregation itself is broken.
    if !cauchy_schwarz_check(&stats)? {
        return Err(Error::Internal(
            "distinct·energy < total² — histogram aggregation is inconsistent".into(),
        ));
    }
    Ok(stats)
}

/// Default size cap for the cubic brute-force oracle.
pub const BRUTE_FORCE_LIMIT: usize = 64;

/// Literal `O(n³)` triple enumeration; the oracle the fast path is tested
/// against. Always materializes the histogram.
pub fn brute_force_hinge_stats(
    set: &PointSet,
    convention: TripleConvention,
) -> Result<HingeStats> {
    brute_force_hinge_stats_with_limit(set, convention, BRUTE_FORCE_LIMIT)
}

/// Brute-force oracle with an explicit size cap.
pub fn brute_force_hinge_stats_with_limit(
    set: &PointSet,
    convention: TripleConvention,
    limit: usize,
) -> Result<HingeStats> {
    let n = set.len();
    if n > limit {
        return Err(Error::SizeLimit {
            what: "brute-force hinge oracle",
            limit,
            actual: n,
        });
    }
    let pts = set.points();
    let mut histogram: std::collections::BTreeMap<HingeKey, u64> = Default::default();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                if !convention.include_degenerate && (p == q || q == r || p == r) {
                    continue;
                }
                let mut d1 = squared_distance(&pts[p], &pts[q]);
                let mut d2 = squared_distance(&pts[q], &pts[r]);
                if !convention.ordered && d2 < d1 {
                    std::mem::swap(&mut d1, &mut d2);
                }
                *histogram.entry(HingeKey { d1, d2 }).or_insert(0) += 1;
            }
        }
    }

    let mut energy: u128 = 0;
    let mut total: u128 = 0;
    let mut max_realisations: u64 = 0;
    let mut max_key = None;
    for (key, &c) in &histogram {
        energy += (c as u128) * (c as u128);
        total += c as u128;
        if c > max_realisations {
            max_realisations = c;
            max_key = Some(key.clone());
        }
    }
    Ok(HingeStats {
        convention,
        n,
        distinct_count: histogram.len() as u64,
        energy,
        total_triples: total,
        max_realisations,
        max_key,
        histogram: Some(histogram.into_iter().collect()),
    })
}

/// Hinge energy alone.
///
/// Under the all-triples convention this is computed by an independent
/// route: the energy equals the sum over ordered center pairs `(q, q')`
/// of `profile_dot(q, q')²`, because a pair of equivalent triples is
/// exactly a choice of two centers plus an equal-distance pair for each
/// leg. Under the distinct-points convention it falls back to the
/// histogram aggregation.
pub fn hinge_energy(set: &PointSet, convention: TripleConvention) -> Result<u128> {
    if convention.include_degenerate && convention.ordered {
        let index = DistanceIndex::build(set);
        let n = set.len();
        let energy = (0..n)
            .into_par_iter()
            .map(|q| {
                let mut row: u128 = 0;
                for q2 in 0..n {
                    let m = index.dot(q, q2);
                    row += m * m;
                }
                row
            })
            .sum();
        return Ok(energy);
    }
    let stats = hinge_stats_opts(
        set,
        convention,
        &HingeOptions {
            materialize_histogram: false,
            deadline: Deadline::none(),
        },
    )?;
    Ok(stats.energy)
}

/// Counting (Cauchy–Schwarz) bound: `distinct · energy ≥ total²`, i.e.
/// the number of distinct hinges is at least `total² / energy`. Exact
/// integer comparison; `true` means the bound holds.
pub fn cauchy_schwarz_check(stats: &HingeStats) -> Result<bool> {
    if stats.total_triples > 0 && stats.energy == 0 {
        return Err(Error::CorruptStats(
            "nonzero triple mass with zero energy".into(),
        ));
    }
    if stats.total_triples == 0 {
        return Ok(true);
    }
    let lhs = BigUint::from(stats.distinct_count) * BigUint::from(stats.energy);
    let rhs = BigUint::from(stats.total_triples) * BigUint::from(stats.total_triples);
    Ok(lhs >= rhs)
}
