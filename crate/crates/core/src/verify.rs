//! Cross-module verification: recomputes the library's headline
//! statistics along independent routes and checks every structural
//! invariant, naming the first witness when something disagrees.
//!
//! Two levels exist. `fast` (point sets up to 64) runs the oracle
//! comparisons that stay near cubic in the input; `full` (up to 10) adds
//! the literal brute-force recounts, up to the O(n⁶) pairing of triples.

use std::collections::HashMap;

use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::geom::{squared_distance, DistanceIndex, PointSet};
use crate::hinge::{
    brute_force_hinge_stats, cauchy_schwarz_check, hinge_energy, hinge_stats_from_index,
    HingeOptions, HingeStats, TripleConvention,
};
use crate::incidence::count_incidences;
use crate::klein::{
    build_lines, intersection_profile, meets, IntersectionProfile, PlueckerLine, Point3H,
    ProfileOptions,
};
use crate::limits::Deadline;

/// How deep the suite digs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    /// Oracle comparisons polynomial of low degree; sets up to 64 points.
    Fast,
    /// Adds literal brute-force recounts (up to O(n⁶)); sets up to 10.
    Full,
}

impl VerifyLevel {
    pub fn max_points(self) -> usize {
        match self {
            VerifyLevel::Fast => 64,
            VerifyLevel::Full => 10,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            VerifyLevel::Fast => "fast",
            VerifyLevel::Full => "full",
        }
    }
}

impl std::fmt::Display for VerifyLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Result of one named invariant check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// First failing witness, present exactly when the check failed.
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn pass(name: &'static str) -> Self {
        CheckOutcome {
            name,
            passed: true,
            witness: None,
        }
    }

    fn fail(name: &'static str, witness: String) -> Self {
        CheckOutcome {
            name,
            passed: false,
            witness: Some(witness),
        }
    }
}

/// Everything the suite found, plus the headline hinge numbers.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub n: usize,
    /// Distinct hinges under the all-triples convention.
    pub hinge_count: u64,
    /// Hinge energy under the all-triples convention.
    pub hinge_energy: u128,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs the whole suite on one point set.
pub fn verify(set: &PointSet, level: VerifyLevel, deadline: Deadline) -> Result<VerifyReport> {
    let n = set.len();
    let cap = level.max_points();
    if n > cap {
        return Err(Error::SizeLimit {
            what: "verification suite",
            limit: cap,
            actual: n,
        });
    }

    let options = HingeOptions {
        materialize_histogram: true,
        deadline,
    };
    let index = DistanceIndex::build(set);
    let default_stats =
        hinge_stats_from_index(set, &index, TripleConvention::all_triples(), &options)?;
    let distinct_stats =
        hinge_stats_from_index(set, &index, TripleConvention::distinct_points(), &options)?;

    let mut checks = vec![
        check_triple_mass(&default_stats, &distinct_stats),
        check_hinge_oracle(set, &default_stats, &distinct_stats),
        check_pair_energy(set, &default_stats),
        check_cauchy_schwarz(&default_stats, &distinct_stats),
    ];

    match build_lines(set) {
        Err(e) => checks.push(CheckOutcome::fail("line injectivity", e.to_string())),
        Ok(lines) => {
            checks.push(check_quadric_membership(&lines));
            checks.push(check_line_injectivity(set, &lines));
            checks.push(check_meet_distance(set, &lines));

            let profile_options = ProfileOptions {
                max_points: cap,
                deadline,
            };
            let profile = intersection_profile(set, &profile_options)?;
            checks.push(check_nu_consistency(&profile, &index));
            checks.push(check_mu_bound(&profile));
            checks.push(check_double_counting(&profile));
            checks.push(check_dyadic_partition(&profile));
            checks.push(check_energy_bridge(&profile, &default_stats));
            if n <= 12 {
                checks.push(check_incidence_scan(&profile));
            }
            if level == VerifyLevel::Full {
                checks.push(check_meet_enumeration(&profile));
                checks.push(check_fourtuple_meets(set, &index, &profile));
                checks.push(check_triple_pair_energy(set, &index, &default_stats));
            }
        }
    }

    Ok(VerifyReport {
        level,
        n,
        hinge_count: default_stats.distinct_count,
        hinge_energy: default_stats.energy,
        checks,
    })
}

/// Histogram masses are the closed-form triple counts: `n³` with repeats
/// allowed, `n(n−1)(n−2)` without.
pub fn check_triple_mass(default_stats: &HingeStats, distinct_stats: &HingeStats) -> CheckOutcome {
    const NAME: &str = "triple mass";
    let n = default_stats.n as u128;
    let expected_default = n * n * n;
    let expected_distinct = if default_stats.n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2)
    };
    if default_stats.total_triples != expected_default {
        return CheckOutcome::fail(
            NAME,
            format!(
                "all-triples mass {} ≠ n³ = {expected_default}",
                default_stats.total_triples
            ),
        );
    }
    if distinct_stats.total_triples != expected_distinct {
        return CheckOutcome::fail(
            NAME,
            format!(
                "distinct-points mass {} ≠ n(n−1)(n−2) = {expected_distinct}",
                distinct_stats.total_triples
            ),
        );
    }
    for stats in [default_stats, distinct_stats] {
        if let Some(hist) = &stats.histogram {
            let mass: u128 = hist.iter().map(|&(_, c)| c as u128).sum();
            if mass != stats.total_triples {
                return CheckOutcome::fail(
                    NAME,
                    format!(
                        "{} histogram mass {mass} ≠ recorded total {}",
                        stats.convention.label(),
                        stats.total_triples
                    ),
                );
            }
        }
    }
    CheckOutcome::pass(NAME)
}

/// The production hinge aggregation agrees field-for-field with the
/// literal triple loop, under both conventions.
pub fn check_hinge_oracle(
    set: &PointSet,
    default_stats: &HingeStats,
    distinct_stats: &HingeStats,
) -> CheckOutcome {
    const NAME: &str = "hinge oracle equivalence";
    for fast in [default_stats, distinct_stats] {
        let oracle = match brute_force_hinge_stats(set, fast.convention) {
            Ok(o) => o,
            Err(e) => return CheckOutcome::fail(NAME, format!("oracle failed: {e}")),
        };
        let label = fast.convention.label();
        if oracle.distinct_count != fast.distinct_count
            || oracle.energy != fast.energy
            || oracle.total_triples != fast.total_triples
            || oracle.max_realisations != fast.max_realisations
            || oracle.max_key != fast.max_key
        {
            return CheckOutcome::fail(
                NAME,
                format!(
                    "{label}: oracle (|H|={}, E={}, total={}, max={}) vs fast (|H|={}, E={}, total={}, max={})",
                    oracle.distinct_count,
                    oracle.energy,
                    oracle.total_triples,
                    oracle.max_realisations,
                    fast.distinct_count,
                    fast.energy,
                    fast.total_triples,
                    fast.max_realisations,
                ),
            );
        }
        if let (Some(a), Some(b)) = (&oracle.histogram, &fast.histogram) {
            if a != b {
                let first = a
                    .iter()
                    .zip(b.iter())
                    .find(|(x, y)| x != y)
                    .map(|(x, y)| format!("{x:?} vs {y:?}"))
                    .unwrap_or_else(|| "histogram lengths differ".into());
                return CheckOutcome::fail(NAME, format!("{label}: first mismatch {first}"));
            }
        }
    }
    CheckOutcome::pass(NAME)
}

/// The hinge energy recomputed from center-profile dot products (a sum of
/// n² squared pair statistics, never touching triples) matches.
pub fn check_pair_energy(set: &PointSet, default_stats: &HingeStats) -> CheckOutcome {
    const NAME: &str = "pair-energy identity";
    match hinge_energy(set, TripleConvention::all_triples()) {
        Err(e) => CheckOutcome::fail(NAME, format!("pair route failed: {e}")),
        Ok(e) if e == default_stats.energy => CheckOutcome::pass(NAME),
        Ok(e) => CheckOutcome::fail(
            NAME,
            format!("pair route {e} ≠ histogram route {}", default_stats.energy),
        ),
    }
}

/// `|H| · E_H ≥ (Σ r_H)²` — the Cauchy–Schwarz floor on distinct hinges.
pub fn check_cauchy_schwarz(
    default_stats: &HingeStats,
    distinct_stats: &HingeStats,
) -> CheckOutcome {
    const NAME: &str = "Cauchy-Schwarz bound";
    for stats in [default_stats, distinct_stats] {
        match cauchy_schwarz_check(stats) {
            Ok(true) => {}
            Ok(false) => {
                return CheckOutcome::fail(
                    NAME,
                    format!(
                        "{}: |H|·E = {}·{} < total² with total = {}",
                        stats.convention.label(),
                        stats.distinct_count,
                        stats.energy,
                        stats.total_triples
                    ),
                )
            }
            Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
        }
    }
    CheckOutcome::pass(NAME)
}

/// Every line satisfies the quadric equation `dir · moment = 0` and lives
/// in the nonzero-third-coordinate chart.
pub fn check_quadric_membership(lines: &[PlueckerLine]) -> CheckOutcome {
    const NAME: &str = "Klein-quadric membership";
    for line in lines {
        let residual = line.quadric_residual();
        if residual != num_bigint::BigInt::from(0) {
            return CheckOutcome::fail(NAME, format!("line {line} has dir·moment = {residual}"));
        }
        if line.coords()[2] == num_bigint::BigInt::from(0) {
            return CheckOutcome::fail(NAME, format!("line {line} has third coordinate 0"));
        }
    }
    CheckOutcome::pass(NAME)
}

/// Canonical coordinates are pairwise distinct and invert back to their
/// source pairs.
pub fn check_line_injectivity(set: &PointSet, lines: &[PlueckerLine]) -> CheckOutcome {
    const NAME: &str = "line injectivity";
    let n = set.len();
    if lines.len() != n * n {
        return CheckOutcome::fail(
            NAME,
            format!("{} lines for {} points; expected n²", lines.len(), n),
        );
    }
    let mut seen: HashMap<&[num_bigint::BigInt; 6], usize> = HashMap::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        if let Some(&j) = seen.get(line.coords()) {
            return CheckOutcome::fail(NAME, format!("lines {j} and {i} share coordinates {line}"));
        }
        seen.insert(line.coords(), i);
        match line.source_from_coords() {
            Err(e) => return CheckOutcome::fail(NAME, format!("line {line}: {e}")),
            Ok((p, q)) => {
                let (sp, sq) = line.source();
                if &p != sp || &q != sq {
                    return CheckOutcome::fail(
                        NAME,
                        format!("line {line} recovers ({p}, {q}) but came from ({sp}, {sq})"),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(NAME)
}

/// The meet predicate agrees with squared-distance equality of the leg
/// pairs — exhaustively for small sets, on 10⁴ seeded random pairs
/// otherwise.
pub fn check_meet_distance(set: &PointSet, lines: &[PlueckerLine]) -> CheckOutcome {
    const NAME: &str = "meet-distance equivalence";
    let n = set.len();
    let line_count = lines.len();
    let pts = set.points();

    let examine = |i: usize, j: usize| -> Option<String> {
        let (a, b) = (i / n, i % n);
        let (c, d) = (j / n, j % n);
        let expected =
            squared_distance(&pts[a], &pts[c]) == squared_distance(&pts[b], &pts[d]);
        match meets(&lines[i], &lines[j]) {
            Err(e) => Some(format!("pair ({i}, {j}): {e}")),
            Ok(got) if got != expected => Some(format!(
                "pair ({i}, {j}): meet = {got} but leg equality = {expected}"
            )),
            Ok(_) => None,
        }
    };

    if n <= 12 {
        for i in 0..line_count {
            for j in (i + 1)..line_count {
                if let Some(witness) = examine(i, j) {
                    return CheckOutcome::fail(NAME, witness);
                }
            }
        }
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6d65_6574);
        let mut sampled = 0u32;
        while sampled < 10_000 {
            let i = (rng.next_u64() % line_count as u64) as usize;
            let j = (rng.next_u64() % line_count as u64) as usize;
            if i == j {
                continue;
            }
            if let Some(witness) = examine(i, j) {
                return CheckOutcome::fail(NAME, witness);
            }
            sampled += 1;
        }
    }
    CheckOutcome::pass(NAME)
}

/// Per-line meet counts from 3D point grouping equal the plane-side
/// count: `ν(l_{qq'}) = Σ_d c_q(d)·c_{q'}(d) − 1`.
pub fn check_nu_consistency(profile: &IntersectionProfile, index: &DistanceIndex) -> CheckOutcome {
    const NAME: &str = "nu consistency";
    let n = profile.n();
    for q in 0..n {
        for q2 in 0..n {
            let line = (q * n + q2) as u32;
            let nu = profile.nu_of(line) as u128;
            let dot = index.dot(q, q2);
            if nu + 1 != dot {
                return CheckOutcome::fail(
                    NAME,
                    format!("line {line} (pair {q},{q2}): ν+1 = {} ≠ profile dot {dot}", nu + 1),
                );
            }
        }
    }
    CheckOutcome::pass(NAME)
}

/// No projective point collects more than `n` of the family's lines.
pub fn check_mu_bound(profile: &IntersectionProfile) -> CheckOutcome {
    const NAME: &str = "mu bound";
    let n = profile.n() as u64;
    for point in profile.points() {
        if point.multiplicity() > n {
            return CheckOutcome::fail(
                NAME,
                format!("point {} has μ = {} > n = {n}", point.point(), point.multiplicity()),
            );
        }
    }
    CheckOutcome::pass(NAME)
}

/// `Σ_points μ(μ−1) = Σ_lines ν` — both sides count (meeting pair, point)
/// once.
pub fn check_double_counting(profile: &IntersectionProfile) -> CheckOutcome {
    const NAME: &str = "double counting";
    let lhs = profile.sum_mu_choose_ordered();
    let rhs = profile.sum_nu();
    if lhs != rhs {
        return CheckOutcome::fail(NAME, format!("Σμ(μ−1) = {lhs} ≠ Σν = {rhs}"));
    }
    CheckOutcome::pass(NAME)
}

/// Every profiled point sits in exactly the dyadic bucket its
/// multiplicity dictates, and the buckets partition the points.
pub fn check_dyadic_partition(profile: &IntersectionProfile) -> CheckOutcome {
    const NAME: &str = "dyadic partition";
    let mut covered = 0usize;
    for k in profile.dyadic_ks() {
        if !k.is_power_of_two() {
            return CheckOutcome::fail(NAME, format!("bucket key {k} is not a power of two"));
        }
        for &idx in profile.bucket(k) {
            let mu = profile.points()[idx as usize].multiplicity();
            if mu < k || mu >= 2 * k {
                return CheckOutcome::fail(
                    NAME,
                    format!("point index {idx} with μ = {mu} filed under k = {k}"),
                );
            }
            covered += 1;
        }
    }
    if covered != profile.points().len() {
        return CheckOutcome::fail(
            NAME,
            format!(
                "buckets cover {covered} of {} points",
                profile.points().len()
            ),
        );
    }
    CheckOutcome::pass(NAME)
}

/// `Σ_lines (ν+1)² = E_H` — the line-space recount of hinge energy.
pub fn check_energy_bridge(
    profile: &IntersectionProfile,
    default_stats: &HingeStats,
) -> CheckOutcome {
    const NAME: &str = "energy bridge";
    let line_count = profile.lines().len() as u128;
    let lhs = profile.sum_nu_sq() + 2 * profile.sum_nu() + line_count;
    if lhs != default_stats.energy {
        return CheckOutcome::fail(
            NAME,
            format!("Σ(ν+1)² = {lhs} ≠ E_H = {}", default_stats.energy),
        );
    }
    CheckOutcome::pass(NAME)
}

/// A full point-on-line scan over the recorded points reproduces Σμ —
/// i.e. profiling recorded every incidence of its own point set.
pub fn check_incidence_scan(profile: &IntersectionProfile) -> CheckOutcome {
    const NAME: &str = "incidence scan consistency";
    let points: Vec<Point3H> = profile.points().iter().map(|p| p.point().clone()).collect();
    let recorded: u128 = profile
        .points()
        .iter()
        .map(|p| p.multiplicity() as u128)
        .sum();
    match count_incidences(&points, profile.lines()) {
        Err(e) => CheckOutcome::fail(NAME, format!("scan failed: {e}")),
        Ok(scanned) if scanned == recorded => CheckOutcome::pass(NAME),
        Ok(scanned) => CheckOutcome::fail(
            NAME,
            format!("scan found {scanned} incidences, profile recorded {recorded}"),
        ),
    }
}

/// Literal all-pairs meet scan matches the bucket join: same total pair
/// count, same per-line ν.
pub fn check_meet_enumeration(profile: &IntersectionProfile) -> CheckOutcome {
    const NAME: &str = "meet enumeration oracle";
    let lines = profile.lines();
    let mut nu = vec![0u64; lines.len()];
    let mut pairs = 0u64;
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            match meets(&lines[i], &lines[j]) {
                Err(e) => return CheckOutcome::fail(NAME, format!("pair ({i}, {j}): {e}")),
                Ok(true) => {
                    nu[i] += 1;
                    nu[j] += 1;
                    pairs += 1;
                }
                Ok(false) => {}
            }
        }
    }
    if pairs != profile.meeting_pairs() {
        return CheckOutcome::fail(
            NAME,
            format!(
                "all-pairs scan found {pairs} meeting pairs, join recorded {}",
                profile.meeting_pairs()
            ),
        );
    }
    if let Some(first) = (0..lines.len()).find(|&l| nu[l] != profile.nu_of(l as u32)) {
        return CheckOutcome::fail(
            NAME,
            format!(
                "line {first}: scan ν = {} vs join ν = {}",
                nu[first],
                profile.nu_of(first as u32)
            ),
        );
    }
    CheckOutcome::pass(NAME)
}

fn distance_id_matrix(set: &PointSet, index: &DistanceIndex) -> Vec<Vec<u32>> {
    let pts = set.points();
    let n = pts.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    index
                        .id_of(&squared_distance(&pts[a], &pts[b]))
                        .expect("every pair distance is interned")
                })
                .collect()
        })
        .collect()
}

/// Literal O(n⁴) count of distance-equal 4-tuples equals `Σ(ν+1)`: each
/// `(p, p', q, q')` with `‖p−q‖ = ‖p'−q'‖` is one ordered meet-or-self
/// pair of lines.
pub fn check_fourtuple_meets(
    set: &PointSet,
    index: &DistanceIndex,
    profile: &IntersectionProfile,
) -> CheckOutcome {
    const NAME: &str = "four-tuple meet oracle";
    let ids = distance_id_matrix(set, index);
    let n = set.len();
    let mut tuples = 0u128;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if ids[a][c] == ids[b][d] {
                        tuples += 1;
                    }
                }
            }
        }
    }
    let expected = profile.sum_nu() + (profile.lines().len() as u128);
    if tuples != expected {
        return CheckOutcome::fail(
            NAME,
            format!("literal 4-tuple count {tuples} ≠ Σ(ν+1) = {expected}"),
        );
    }
    CheckOutcome::pass(NAME)
}

/// Literal O(n⁶) recount of the hinge energy: pairs of ordered triples
/// sharing both leg distances.
pub fn check_triple_pair_energy(
    set: &PointSet,
    index: &DistanceIndex,
    default_stats: &HingeStats,
) -> CheckOutcome {
    const NAME: &str = "triple-pair energy oracle";
    let ids = distance_id_matrix(set, index);
    let n = set.len();
    let mut keys = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                keys.push((ids[a][b], ids[b][c]));
            }
        }
    }
    let mut equal_pairs = 0u128;
    for i in 0..keys.len() {
        for j in (i + 1)..keys.len() {
            if keys[i] == keys[j] {
                equal_pairs += 1;
            }
        }
    }
    let literal = keys.len() as u128 + 2 * equal_pairs;
    if literal != default_stats.energy {
        return CheckOutcome::fail(
            NAME,
            format!(
                "literal triple-pair count {literal} ≠ E_H = {}",
                default_stats.energy
            ),
        );
    }
    CheckOutcome::pass(NAME)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::geom::Point2;
    use crate::klein::es_line;
    use num_bigint::BigInt;

    #[test]
    fn right_triangle_passes_full_with_headline_numbers() {
        let set = PointSet::from_integer_pairs(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let report = verify(&set, VerifyLevel::Full, Deadline::none()).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.hinge_count, 9);
        assert_eq!(report.hinge_energy, 97);
        assert_eq!(report.level.label(), "full");
    }

    #[test]
    fn generated_families_pass_fast() {
        let sets = [
            generate::grid(3).unwrap(),
            generate::collinear(9).unwrap(),
            generate::random_square(9, 20, 7).unwrap(),
            generate::two_circles(
                9,
                &crate::rational::int(1),
                &crate::rational::int(2),
            )
            .unwrap(),
        ];
        for set in &sets {
            let report = verify(set, VerifyLevel::Fast, Deadline::none()).unwrap();
            assert!(
                report.passed(),
                "failures: {:?}",
                report.failures().collect::<Vec<_>>()
            );
            // Full composition: mass + oracle + pair energy + CS + quadric
            // + injectivity + meet/distance + 5 profile checks + scan.
            assert_eq!(report.checks.len(), 13);
        }
    }

    #[test]
    fn full_level_adds_brute_force_recounts() {
        let set = generate::grid(3).unwrap();
        let report = verify(&set, VerifyLevel::Full, Deadline::none()).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 16);
        let names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
        assert!(names.contains(&"meet enumeration oracle"));
        assert!(names.contains(&"four-tuple meet oracle"));
        assert!(names.contains(&"triple-pair energy oracle"));
    }

    #[test]
    fn size_limits_are_enforced() {
        let set = generate::collinear(11).unwrap();
        assert!(matches!(
            verify(&set, VerifyLevel::Full, Deadline::none()),
            Err(Error::SizeLimit { .. })
        ));
        let big = generate::collinear(65).unwrap();
        assert!(matches!(
            verify(&big, VerifyLevel::Fast, Deadline::none()),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn corrupted_line_fails_quadric_membership_by_name() {
        let good = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let mut coords = good.coords().clone();
        coords[5] += BigInt::from(1); // break dir·moment = 0
        let bad = crate::klein::PlueckerLine::from_raw_parts(
            coords,
            (Point2::from_ints(0, 0), Point2::from_ints(0, 1)),
        );
        let outcome = check_quadric_membership(&[good, bad]);
        assert!(!outcome.passed);
        assert_eq!(outcome.name, "Klein-quadric membership");
        assert!(outcome.witness.unwrap().contains("dir·moment"));
    }

    #[test]
    fn tampered_source_fails_injectivity() {
        let line = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let tampered = crate::klein::PlueckerLine::from_raw_parts(
            line.coords().clone(),
            (Point2::from_ints(5, 5), Point2::from_ints(0, 1)),
        );
        let set = PointSet::from_integer_pairs(&[(0, 0)]).unwrap();
        let outcome = check_line_injectivity(&set, &[tampered]);
        assert!(!outcome.passed);
        assert_eq!(outcome.name, "line injectivity");
    }
}
