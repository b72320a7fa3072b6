//! Experiment orchestration: generate instance families, measure the
//! requested statistics, checkpoint rows as they land, and fit growth
//! models per (family, statistic) group.
//!
//! A sweep is fully described by a JSON [`SweepConfig`]; rerunning the
//! same config reproduces every value bit-for-bit (only the `runtime_s`
//! fields vary).

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{fit_power_log, group_series, FitResult, SeriesPoint};
use crate::generate;
use crate::geom::PointSet;
use crate::hinge::{hinge_stats_opts, HingeOptions, HingeStats, TripleConvention};
use crate::klein::{intersection_profile, IntersectionProfile, ProfileOptions};
use crate::limits::Deadline;
use crate::rational::parse_rational;

/// One instance family with its parameters. Rationals travel as strings
/// so configs stay plain JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorConfig {
    /// The m×m integer grid.
    Grid { m: u32 },
    /// Points split between two concentric circles of rational radii.
    TwoCircles { n: u32, r1: String, r2: String },
    /// Uniform integer points in [−bound, bound]², ChaCha8-seeded.
    Random { n: u32, bound: u32, seed: u64 },
    /// n points on the x-axis.
    Collinear { n: u32 },
}

impl GeneratorConfig {
    /// The family tag used in series rows.
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorConfig::Grid { .. } => "grid",
            GeneratorConfig::TwoCircles { .. } => "two-circles",
            GeneratorConfig::Random { .. } => "random",
            GeneratorConfig::Collinear { .. } => "collinear",
        }
    }

    pub fn build(&self) -> Result<PointSet> {
        match self {
            GeneratorConfig::Grid { m } => generate::grid(*m),
            GeneratorConfig::TwoCircles { n, r1, r2 } => {
                let r1 = parse_rational(r1)?;
                let r2 = parse_rational(r2)?;
                generate::two_circles(*n, &r1, &r2)
            }
            GeneratorConfig::Random { n, bound, seed } => {
                generate::random_square(*n, *bound, *seed)
            }
            GeneratorConfig::Collinear { n } => generate::collinear(*n),
        }
    }
}

/// A measurable scalar statistic of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    /// Distinct hinges, all-triples convention.
    HingeCount,
    /// Distinct hinges, distinct-points convention.
    HingeCountDistinct,
    /// Hinge energy, all-triples convention.
    HingeEnergy,
    /// Hinge energy, distinct-points convention.
    HingeEnergyDistinct,
    /// Largest per-line meet count ν.
    MaxNu,
    /// Σ ν² over all lines.
    SumNuSq,
    /// Largest point multiplicity μ.
    MaxMu,
    /// max_k |P_k|·k²/n³ over the dyadic buckets.
    PkMaxRatio,
}

impl Statistic {
    pub fn label(&self) -> &'static str {
        match self {
            Statistic::HingeCount => "hinge-count",
            Statistic::HingeCountDistinct => "hinge-count-distinct",
            Statistic::HingeEnergy => "hinge-energy",
            Statistic::HingeEnergyDistinct => "hinge-energy-distinct",
            Statistic::MaxNu => "max-nu",
            Statistic::SumNuSq => "sum-nu-sq",
            Statistic::MaxMu => "max-mu",
            Statistic::PkMaxRatio => "pk-max-ratio",
        }
    }
}

fn default_fit() -> bool {
    true
}

/// Whole-sweep description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub instances: Vec<GeneratorConfig>,
    pub statistics: Vec<Statistic>,
    /// Fit growth models per (family, statistic) after the sweep.
    #[serde(default = "default_fit")]
    pub fit: bool,
    /// Cap for the 3-space profile (statistics that need it fail
    /// per-row beyond the cap). Default 128.
    #[serde(default)]
    pub max_profile_points: Option<usize>,
    /// When set, every finished row is appended to this CSV file
    /// immediately, so partial results survive interruption.
    #[serde(default)]
    pub series_csv: Option<String>,
}

/// A row that could not be measured; the sweep continues past it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowError {
    pub family: String,
    pub n: u64,
    pub statistic: String,
    pub message: String,
}

/// A fitted (family, statistic) group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitGroup {
    pub family: String,
    pub statistic: String,
    pub points: usize,
    #[serde(flatten)]
    pub fit: FitResult,
}

/// A group the fitter refused, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSkip {
    pub family: String,
    pub statistic: String,
    pub reason: String,
}

/// Everything a sweep produced.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<SeriesPoint>,
    pub errors: Vec<RowError>,
    pub fits: Vec<FitGroup>,
    pub fit_skipped: Vec<FitSkip>,
}

/// Fits every (family, statistic) group of the rows; groups that fail the
/// fitter's preconditions are reported as skips rather than errors.
pub fn fit_groups(rows: &[SeriesPoint]) -> (Vec<FitGroup>, Vec<FitSkip>) {
    let mut fits = Vec::new();
    let mut skipped = Vec::new();
    for ((family, statistic), points) in group_series(rows) {
        match fit_power_log(&points) {
            Ok(fit) => fits.push(FitGroup {
                family,
                statistic,
                points: points.len(),
                fit,
            }),
            Err(e) => skipped.push(FitSkip {
                family,
                statistic,
                reason: e.to_string(),
            }),
        }
    }
    (fits, skipped)
}

/// Lazily computed per-instance artifacts shared between statistics.
struct InstanceCache<'a> {
    set: &'a PointSet,
    deadline: Deadline,
    max_profile_points: usize,
    default_stats: Option<HingeStats>,
    distinct_stats: Option<HingeStats>,
    profile: Option<IntersectionProfile>,
}

impl<'a> InstanceCache<'a> {
    fn hinge(&mut self, convention: TripleConvention) -> Result<&HingeStats> {
        let slot = if convention.include_degenerate {
            &mut self.default_stats
        } else {
            &mut self.distinct_stats
        };
        if slot.is_none() {
            let options = HingeOptions {
                materialize_histogram: false,
                deadline: self.deadline,
            };
            *slot = Some(hinge_stats_opts(self.set, convention, &options)?);
        }
        Ok(slot.as_ref().expect("just filled"))
    }

    fn profile(&mut self) -> Result<&IntersectionProfile> {
        if self.profile.is_none() {
            let options = ProfileOptions {
                max_points: self.max_profile_points,
                deadline: self.deadline,
            };
            self.profile = Some(intersection_profile(self.set, &options)?);
        }
        Ok(self.profile.as_ref().expect("just filled"))
    }

    fn measure(&mut self, statistic: Statistic) -> Result<f64> {
        Ok(match statistic {
            Statistic::HingeCount => {
                self.hinge(TripleConvention::all_triples())?.distinct_count as f64
            }
            Statistic::HingeCountDistinct => {
                self.hinge(TripleConvention::distinct_points())?.distinct_count as f64
            }
            Statistic::HingeEnergy => self.hinge(TripleConvention::all_triples())?.energy as f64,
            Statistic::HingeEnergyDistinct => {
                self.hinge(TripleConvention::distinct_points())?.energy as f64
            }
            Statistic::MaxNu => self.profile()?.max_nu() as f64,
            Statistic::SumNuSq => self.profile()?.sum_nu_sq() as f64,
            Statistic::MaxMu => self.profile()?.max_mu() as f64,
            Statistic::PkMaxRatio => {
                let profile = self.profile()?;
                let n = profile.n() as f64;
                profile
                    .dyadic_ks()
                    .map(|k| profile.bucket(k).len() as f64 * (k as f64).powi(2) / n.powi(3))
                    .fold(0.0, f64::max)
            }
        })
    }
}

/// Appends rows to the checkpoint file as they finish.
struct Checkpoint {
    writer: csv::Writer<std::fs::File>,
}

impl Checkpoint {
    fn create(path: &str) -> Result<Self> {
        Ok(Checkpoint {
            writer: csv::Writer::from_writer(std::fs::File::create(path)?),
        })
    }

    fn append(&mut self, row: &SeriesPoint) -> Result<()> {
        self.writer.serialize(row)?;
        self.writer.flush()?;
        Ok(())
    }
}

/// Runs the sweep: instances in config order, statistics in config order
/// within each instance. All measurement failures are recorded per row
/// and the run continues.
pub fn run_experiment(config: &SweepConfig, deadline: Deadline) -> Result<SweepOutcome> {
    if config.instances.is_empty() || config.statistics.is_empty() {
        return Err(Error::InvalidParameter(
            "sweep needs at least one instance and one statistic".into(),
        ));
    }
    let mut checkpoint = config
        .series_csv
        .as_deref()
        .map(Checkpoint::create)
        .transpose()?;

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for instance in &config.instances {
        let family = instance.family();
        let set = match instance.build() {
            Ok(set) => set,
            Err(e) => {
                errors.push(RowError {
                    family: family.to_string(),
                    n: 0,
                    statistic: "(generator)".to_string(),
                    message: e.to_string(),
                });
                continue;
            }
        };
        let n = set.len() as u64;
        let mut cache = InstanceCache {
            set: &set,
            deadline,
            max_profile_points: config.max_profile_points.unwrap_or(128),
            default_stats: None,
            distinct_stats: None,
            profile: None,
        };
        for &statistic in &config.statistics {
            let started = Instant::now();
            match cache.measure(statistic) {
                Ok(value) => {
                    let row = SeriesPoint {
                        family: family.to_string(),
                        statistic: statistic.label().to_string(),
                        n,
                        value,
                        runtime_s: started.elapsed().as_secs_f64(),
                    };
                    if let Some(cp) = checkpoint.as_mut() {
                        cp.append(&row)?;
                    }
                    rows.push(row);
                }
                Err(e) => errors.push(RowError {
                    family: family.to_string(),
                    n,
                    statistic: statistic.label().to_string(),
                    message: e.to_string(),
                }),
            }
        }
    }

    let (fits, fit_skipped) = if config.fit {
        fit_groups(&rows)
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(SweepOutcome {
        rows,
        errors,
        fits,
        fit_skipped,
    })
}
