//! Machine-readable report shapes for the command-line surface.
//!
//! Layout rules: every report carries a `schema` tag; exact integers that
//! can exceed 2⁵³ are serialized as decimal strings; rationals as
//! canonical `"a/b"` strings; ratios against the closed-form bounds are
//! `f64` and become `null` when their denominator vanishes.

use serde::Serialize;

use crate::error::Result;
use crate::fit::SeriesPoint;
use crate::geom::{DistanceIndex, PointSet};
use crate::hinge::{cauchy_schwarz_check, HingeStats};
use crate::incidence::{
    bipartite_points_rhs, gk_incidence_rhs, plane_richness, Plane3H, RichnessOptions,
};
use crate::klein::IntersectionProfile;
use crate::limits::Deadline;
use crate::quad::{quadruple_count, quadruple_ratio};
use crate::rational::format_rational;
use crate::sweep::{FitGroup, FitSkip, RowError};
use crate::verify::VerifyReport;

/// Pretty-prints any report with a trailing newline.
pub fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn finite_ratio(numerator: f64, denominator: f64) -> Option<f64> {
    if denominator > 0.0 {
        let r = numerator / denominator;
        r.is_finite().then_some(r)
    } else {
        None
    }
}

fn plane_strings(plane: &Plane3H) -> [String; 4] {
    let c = plane.coeffs();
    [
        c[0].to_string(),
        c[1].to_string(),
        c[2].to_string(),
        c[3].to_string(),
    ]
}

// ---------------------------------------------------------------------
// hinges

#[derive(Debug, Clone, Serialize)]
pub struct HistogramRowJson {
    pub d1: String,
    pub d2: String,
    pub count: u64,
}

/// The most-realised hinge key and its realisation count.
#[derive(Debug, Clone, Serialize)]
pub struct MaxRealisationsJson {
    pub key: [String; 2],
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HingeReportJson {
    pub schema: &'static str,
    pub convention: String,
    pub n: usize,
    pub distinct_count: u64,
    pub energy: String,
    pub total_triples: String,
    /// Absent when the convention admits no triples at all (fewer than
    /// three distinct points under the distinct-points convention).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_realisations: Option<MaxRealisationsJson>,
    /// `|H| · E_H ≥ total²`, checked in exact arithmetic.
    pub cauchy_schwarz_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<Vec<HistogramRowJson>>,
}

pub fn hinge_report(stats: &HingeStats) -> Result<HingeReportJson> {
    let cauchy_schwarz_holds = cauchy_schwarz_check(stats)?;
    Ok(HingeReportJson {
        schema: "hinges/1",
        convention: stats.convention.label(),
        n: stats.n,
        distinct_count: stats.distinct_count,
        energy: stats.energy.to_string(),
        total_triples: stats.total_triples.to_string(),
        max_realisations: stats.max_key.as_ref().map(|k| MaxRealisationsJson {
            key: [format_rational(k.d1.value()), format_rational(k.d2.value())],
            count: stats.max_realisations,
        }),
        cauchy_schwarz_holds,
        histogram: stats.histogram.as_ref().map(|hist| {
            hist.iter()
                .map(|(key, count)| HistogramRowJson {
                    d1: format_rational(key.d1.value()),
                    d2: format_rational(key.d2.value()),
                    count: *count,
                })
                .collect()
        }),
    })
}

// ---------------------------------------------------------------------
// lines

#[derive(Debug, Clone, Serialize)]
pub struct NuHistogramRowJson {
    pub nu: u64,
    pub lines: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinesReportJson {
    pub schema: &'static str,
    pub n: usize,
    pub line_count: u64,
    /// Lines of pairs (p, p); always n.
    pub degenerate_lines: u64,
    pub max_nu: u64,
    pub sum_nu: String,
    pub sum_nu_sq: String,
    pub nu_histogram: Vec<NuHistogramRowJson>,
}

/// Per-line meet counts, computed directly from the distance profiles
/// (`ν(l_{qq'}) = Σ_d c_q(d)·c_{q'}(d) − 1`) without touching 3-space.
pub fn lines_report(
    set: &PointSet,
    index: &DistanceIndex,
    deadline: Deadline,
) -> Result<LinesReportJson> {
    use rayon::prelude::*;
    let n = set.len();
    let rows = (0..n)
        .into_par_iter()
        .map(|q| -> Result<Vec<u64>> {
            deadline.check("line meet counting")?;
            Ok((0..n)
                .map(|q2| {
                    let dot = index.dot(q, q2);
                    debug_assert!(dot >= 1, "every line meets itself");
                    (dot - 1) as u64
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut histogram = std::collections::BTreeMap::<u64, u64>::new();
    let mut max_nu = 0u64;
    let mut sum_nu = 0u128;
    let mut sum_nu_sq = 0u128;
    for nu in rows.iter().flatten().copied() {
        *histogram.entry(nu).or_insert(0) += 1;
        max_nu = max_nu.max(nu);
        sum_nu += nu as u128;
        sum_nu_sq += (nu as u128) * (nu as u128);
    }
    Ok(LinesReportJson {
        schema: "lines/1",
        n,
        line_count: (n * n) as u64,
        degenerate_lines: n as u64,
        max_nu,
        sum_nu: sum_nu.to_string(),
        sum_nu_sq: sum_nu_sq.to_string(),
        nu_histogram: histogram
            .into_iter()
            .map(|(nu, lines)| NuHistogramRowJson { nu, lines })
            .collect(),
    })
}

// ---------------------------------------------------------------------
// points3d

#[derive(Debug, Clone, Serialize)]
pub struct PkRowJson {
    pub k: u64,
    pub points: u64,
    /// `|P_k| · k² / n³`.
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LktRowJson {
    pub k: u64,
    pub t: u64,
    pub lines: u64,
    /// `|L_{k,t}| · (kt)² / n⁴`.
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Points3dReportJson {
    pub schema: &'static str,
    pub n: usize,
    pub line_count: u64,
    pub degenerate_lines: u64,
    pub point_count: u64,
    pub points_at_infinity: u64,
    pub meeting_pairs: u64,
    pub max_mu: u64,
    pub sum_nu: String,
    pub sum_nu_sq: String,
    pub pk_table: Vec<PkRowJson>,
    pub lkt_table: Vec<LktRowJson>,
}

pub fn points3d_report(profile: &IntersectionProfile) -> Result<Points3dReportJson> {
    let n = profile.n();
    let nf = n as f64;
    let mut pk_table = Vec::new();
    let mut lkt_table = Vec::new();
    for k in profile.dyadic_ks() {
        let points = profile.bucket(k).len() as u64;
        pk_table.push(PkRowJson {
            k,
            points,
            ratio: points as f64 * (k as f64).powi(2) / nf.powi(3),
        });
        if let Some(supp) = profile.support(k) {
            let max_supp = supp.iter().copied().max().unwrap_or(0) as u64;
            let mut t = 1u64;
            while t <= max_supp {
                let family = profile.rich_lines(k, t)?;
                if !family.lines.is_empty() {
                    let lines = family.lines.len() as u64;
                    lkt_table.push(LktRowJson {
                        k,
                        t,
                        lines,
                        ratio: lines as f64 * ((k * t) as f64).powi(2) / nf.powi(4),
                    });
                }
                t *= 2;
            }
        }
    }
    Ok(Points3dReportJson {
        schema: "points3d/1",
        n,
        line_count: profile.lines().len() as u64,
        degenerate_lines: profile.lines().iter().filter(|l| l.is_degenerate()).count() as u64,
        point_count: profile.points().len() as u64,
        points_at_infinity: profile
            .points()
            .iter()
            .filter(|p| p.point().is_at_infinity())
            .count() as u64,
        meeting_pairs: profile.meeting_pairs(),
        max_mu: profile.max_mu(),
        sum_nu: profile.sum_nu().to_string(),
        sum_nu_sq: profile.sum_nu_sq().to_string(),
        pk_table,
        lkt_table,
    })
}

// ---------------------------------------------------------------------
// incidence

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionJson {
    pub k: u64,
    pub t: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IncidenceReportJson {
    pub schema: &'static str,
    pub n: usize,
    /// Present when restricted to the bucket pair (P_k, L_{k,t}).
    pub restricted: Option<RestrictionJson>,
    pub point_count: u64,
    pub line_count: u64,
    pub ambient_line_count: u64,
    pub incidences: String,
    /// Plane richness of the examined line family. Reguli are not
    /// detected, so this is the plane-only lower bound of the structural
    /// richness parameter.
    pub s: u64,
    pub s_kind: &'static str,
    pub witness_plane: Option<[String; 4]>,
    /// `L^{3/4}P^{1/2} + s^{1/3}L^{1/3}P^{2/3} + L + P`.
    pub gk_incidence_rhs: f64,
    pub incidence_ratio: Option<f64>,
    /// `L·√L' + s·L'` with `L` the ambient family, `L'` the examined one.
    pub bipartite_points_rhs: f64,
    /// Points of the report's point set touching at least one examined
    /// line.
    pub points_on_family: u64,
    pub points_ratio: Option<f64>,
}

/// Incidence summary of the full configuration: every profiled point
/// against all n² lines.
pub fn incidence_report_full(
    profile: &IntersectionProfile,
    richness: &RichnessOptions,
) -> Result<IncidenceReportJson> {
    let point_count = profile.points().len() as u64;
    let line_count = profile.lines().len() as u64;
    let incidences: u128 = profile
        .points()
        .iter()
        .map(|p| p.multiplicity() as u128)
        .sum();
    let rich = plane_richness(profile.lines(), richness)?;
    let gk = gk_incidence_rhs(point_count as u128, line_count as u128, rich.s as u128);
    let bipartite = bipartite_points_rhs(line_count as u128, line_count as u128, rich.s as u128);
    Ok(IncidenceReportJson {
        schema: "incidence/1",
        n: profile.n(),
        restricted: None,
        point_count,
        line_count,
        ambient_line_count: line_count,
        incidences: incidences.to_string(),
        s: rich.s,
        s_kind: "plane-only",
        witness_plane: rich.witness.as_ref().map(plane_strings),
        gk_incidence_rhs: gk,
        incidence_ratio: finite_ratio(incidences as f64, gk),
        bipartite_points_rhs: bipartite,
        points_on_family: point_count,
        points_ratio: finite_ratio(point_count as f64, bipartite),
    })
}

/// Incidence summary restricted to the bucket pair `(P_k, L_{k,t})`.
pub fn incidence_report_restricted(
    profile: &IntersectionProfile,
    k: u64,
    t: u64,
    richness: &RichnessOptions,
) -> Result<IncidenceReportJson> {
    let family = profile.rich_lines(k, t)?;
    let family_lines: Vec<_> = family
        .lines
        .iter()
        .map(|&id| profile.line(id).clone())
        .collect();
    let family_ids: std::collections::HashSet<u32> = family.lines.iter().copied().collect();

    let point_count = profile.bucket(k).len() as u64;
    let line_count = family_lines.len() as u64;
    let ambient = profile.lines().len() as u64;
    let incidences = profile.bucket_incidences(k, &family);
    let points_on_family = profile
        .bucket(k)
        .iter()
        .filter(|&&idx| {
            profile.points()[idx as usize]
                .lines()
                .iter()
                .any(|id| family_ids.contains(id))
        })
        .count() as u64;

    let rich = plane_richness(&family_lines, richness)?;
    let gk = gk_incidence_rhs(point_count as u128, line_count as u128, rich.s as u128);
    let bipartite = bipartite_points_rhs(ambient as u128, line_count as u128, rich.s as u128);
    Ok(IncidenceReportJson {
        schema: "incidence/1",
        n: profile.n(),
        restricted: Some(RestrictionJson { k, t }),
        point_count,
        line_count,
        ambient_line_count: ambient,
        incidences: incidences.to_string(),
        s: rich.s,
        s_kind: "plane-only",
        witness_plane: rich.witness.as_ref().map(plane_strings),
        gk_incidence_rhs: gk,
        incidence_ratio: finite_ratio(incidences as f64, gk),
        bipartite_points_rhs: bipartite,
        points_on_family,
        points_ratio: finite_ratio(points_on_family as f64, bipartite),
    })
}

// ---------------------------------------------------------------------
// verify

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReportJson {
    pub schema: &'static str,
    pub level: &'static str,
    pub n: usize,
    pub passed: bool,
    pub hinge_count: u64,
    pub hinge_energy: String,
    pub checks: Vec<CheckJson>,
}

pub fn verify_report(report: &VerifyReport) -> VerifyReportJson {
    VerifyReportJson {
        schema: "verify/1",
        level: report.level.label(),
        n: report.n,
        passed: report.passed(),
        hinge_count: report.hinge_count,
        hinge_energy: report.hinge_energy.to_string(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.to_string(),
                passed: c.passed,
                witness: c.witness.clone(),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------
// quadruples

#[derive(Debug, Clone, Serialize)]
pub struct QuadReportJson {
    pub schema: &'static str,
    pub n: u64,
    pub count: String,
    /// `M(N)/(N² ln N)`; absent for N < 2.
    pub normalized_ratio: Option<f64>,
}

pub fn quad_report(n: u64) -> Result<QuadReportJson> {
    let count = quadruple_count(n)?;
    let normalized_ratio = if n >= 2 {
        Some(quadruple_ratio(n)?)
    } else {
        None
    };
    Ok(QuadReportJson {
        schema: "quadruples/1",
        n,
        count: count.to_string(),
        normalized_ratio,
    })
}

// ---------------------------------------------------------------------
// fit & sweep

#[derive(Debug, Clone, Serialize)]
pub struct FitReportJson {
    pub schema: &'static str,
    pub groups: Vec<FitGroup>,
    pub skipped: Vec<FitSkip>,
}

pub fn fit_report(groups: Vec<FitGroup>, skipped: Vec<FitSkip>) -> FitReportJson {
    FitReportJson {
        schema: "fit/1",
        groups,
        skipped,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReportJson {
    pub schema: &'static str,
    pub rows: Vec<SeriesPoint>,
    pub errors: Vec<RowError>,
    pub fits: Vec<FitGroup>,
    pub fit_skipped: Vec<FitSkip>,
}

pub fn sweep_report(outcome: crate::sweep::SweepOutcome) -> SweepReportJson {
    SweepReportJson {
        schema: "sweep/1",
        rows: outcome.rows,
        errors: outcome.errors,
        fits: outcome.fits,
        fit_skipped: outcome.fit_skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::hinge::{hinge_stats, TripleConvention};
    use crate::klein::{intersection_profile, ProfileOptions};

    #[test]
    fn hinge_report_uses_decimal_strings_and_rational_keys() {
        let set = PointSet::from_integer_pairs(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let stats = hinge_stats(&set, TripleConvention::all_triples()).unwrap();
        let report = hinge_report(&stats).unwrap();
        assert_eq!(report.schema, "hinges/1");
        assert_eq!(report.distinct_count, 9);
        assert_eq!(report.energy, "97");
        assert_eq!(report.total_triples, "27");
        assert!(report.cauchy_schwarz_holds);
        let json = to_pretty_json(&report).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["energy"], "97");
        // Right triangle with legs 1: the most-realised key is (1, 1)
        // (hinge at the right-angle vertex plus degenerate repeats).
        assert_eq!(value["max_realisations"]["key"][0], "1");
        assert!(value["max_realisations"]["count"].as_u64().unwrap() >= 1);
    }

    #[test]
    fn lines_report_matches_profile_route() {
        let set = generate::grid(2).unwrap();
        let index = DistanceIndex::build(&set);
        let report = lines_report(&set, &index, Deadline::none()).unwrap();
        assert_eq!(report.line_count, 16);
        assert_eq!(report.max_nu, 5);
        assert_eq!(report.sum_nu_sq, "400");
        assert_eq!(report.nu_histogram.len(), 1);
        assert_eq!(report.nu_histogram[0].nu, 5);
        assert_eq!(report.nu_histogram[0].lines, 16);
    }

    #[test]
    fn points3d_report_tabulates_buckets() {
        let set = generate::grid(2).unwrap();
        let profile = intersection_profile(&set, &ProfileOptions::default()).unwrap();
        let report = points3d_report(&profile).unwrap();
        assert_eq!(report.meeting_pairs, 40);
        assert_eq!(report.sum_nu_sq, "400");
        assert_eq!(report.degenerate_lines, 4);
        let total: u64 = report.pk_table.iter().map(|r| r.points).sum();
        assert_eq!(total, report.point_count);
        for row in &report.lkt_table {
            assert!(row.lines > 0);
        }
    }

    #[test]
    fn incidence_reports_are_consistent() {
        let set = generate::grid(2).unwrap();
        let profile = intersection_profile(&set, &ProfileOptions::default()).unwrap();
        let full = incidence_report_full(&profile, &RichnessOptions::default()).unwrap();
        assert!(full.restricted.is_none());
        assert_eq!(full.ambient_line_count, 16);
        assert!(full.s >= 2);
        assert!(full.witness_plane.is_some());
        assert!(full.incidence_ratio.unwrap() > 0.0);

        let restricted =
            incidence_report_restricted(&profile, 2, 1, &RichnessOptions::default()).unwrap();
        let tag = restricted.restricted.as_ref().map(|r| (r.k, r.t));
        assert_eq!(tag, Some((2, 1)));
        assert!(restricted.line_count <= 16);
    }

    #[test]
    fn quad_report_embeds_ratio() {
        let report = quad_report(3).unwrap();
        assert_eq!(report.count, "15");
        assert!(report.normalized_ratio.unwrap() > 0.0);
        assert!(quad_report(1).unwrap().normalized_ratio.is_none());
    }
}
