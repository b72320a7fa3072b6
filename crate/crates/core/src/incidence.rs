//! Incidence counting between the profiled points and lines, plane
//! structure of line families, and the closed-form bound evaluations the
//! experiment reports compare against.
//!
//! Everything combinatorial here is exact integer arithmetic; only the
//! bound right-hand sides are floating point, since they exist to be
//! eyeballed against measured counts.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::klein::{canonical_from_ints, intersection_point, Point3H, PlueckerLine};
use crate::limits::Deadline;

fn cross3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot3(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

/// Exact containment test. A projective point `(x : w)` lies on the line
/// `(d : m)` exactly when `x × d = w·m`; the same equation covers points
/// at infinity, where it degenerates to `x ∥ d`.
pub fn point_on_line(point: &Point3H, line: &PlueckerLine) -> bool {
    let c = point.coords();
    let x = [c[0].clone(), c[1].clone(), c[2].clone()];
    let w = &c[3];
    let d = line.direction();
    let m = line.moment();
    let lhs = cross3(&x, &d);
    (0..3).all(|i| lhs[i] == w * &m[i])
}

/// Exact number of point–line incidences, by scanning every pair.
/// Duplicate points or lines are rejected: they would silently inflate
/// the count.
pub fn count_incidences(points: &[Point3H], lines: &[PlueckerLine]) -> Result<u128> {
    let mut seen_points = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if seen_points.insert(p, i).is_some() {
            return Err(Error::DuplicatePoint {
                point: p.to_string(),
            });
        }
    }
    let mut seen_lines = HashMap::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        if seen_lines.insert(l.coords(), i).is_some() {
            return Err(Error::InvalidParameter(format!(
                "duplicate line {l} in incidence count"
            )));
        }
    }
    Ok(lines
        .par_iter()
        .map(|l| {
            points
                .iter()
                .filter(|p| point_on_line(p, l))
                .count() as u128
        })
        .sum())
}

/// A plane of projective 3-space: coefficients `(A : B : C : D)` of
/// `Ax + By + Cz + Dw = 0`, as a coprime integer vector with positive
/// leading nonzero entry. The normal `(A, B, C)` must be nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Plane3H {
    coeffs: [BigInt; 4],
}

impl Plane3H {
    pub fn from_ints(raw: [BigInt; 4]) -> Result<Self> {
        let canonical = canonical_from_ints(raw.to_vec());
        if canonical[..3].iter().all(|v| v.is_zero()) {
            return Err(Error::InvalidParameter(
                "plane normal cannot be the zero vector".into(),
            ));
        }
        Ok(Plane3H {
            coeffs: canonical.try_into().expect("length 4"),
        })
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn contains_point(&self, point: &Point3H) -> bool {
        let p = point.coords();
        self.coeffs
            .iter()
            .zip(p.iter())
            .map(|(a, b)| a * b)
            .sum::<BigInt>()
            .is_zero()
    }

    /// A line lies in the plane exactly when the normal is orthogonal to
    /// its direction and one of its points satisfies the plane equation;
    /// the homogeneous base point `(d × m : d·d)` serves as that point.
    pub fn contains_line(&self, line: &PlueckerLine) -> bool {
        let d = line.direction();
        let m = line.moment();
        let normal = [
            self.coeffs[0].clone(),
            self.coeffs[1].clone(),
            self.coeffs[2].clone(),
        ];
        if !dot3(&normal, &d).is_zero() {
            return false;
        }
        let base = cross3(&d, &m);
        (dot3(&normal, &base) + &self.coeffs[3] * dot3(&d, &d)).is_zero()
    }
}

impl fmt::Display for Plane3H {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coeffs;
        write!(f, "[{} : {} : {} : {}]", c[0], c[1], c[2], c[3])
    }
}

/// The unique plane spanned by two distinct meeting lines.
pub fn span_plane(a: &PlueckerLine, b: &PlueckerLine) -> Result<Plane3H> {
    if a.coords() == b.coords() {
        return Err(Error::IdenticalLines);
    }
    let d1 = a.direction();
    let d2 = b.direction();
    // Errors out right here for lines that do not actually meet.
    let point = intersection_point(a, b)?;

    let normal = cross3(&d1, &d2);
    if normal.iter().any(|v| !v.is_zero()) {
        // Transversal directions: the plane passes through the (finite)
        // common point with normal d1 × d2.
        let p = point.coords();
        let x = [p[0].clone(), p[1].clone(), p[2].clone()];
        let w = &p[3];
        return Plane3H::from_ints([
            w * &normal[0],
            w * &normal[1],
            w * &normal[2],
            -dot3(&normal, &x),
        ]);
    }

    // Parallel directions: the plane holds both affine lines, so its
    // normal is orthogonal to the shared direction and to the offset
    // between the two homogeneous base points (d × m : d·d).
    let base1 = base_numerator(a);
    let base2 = base_numerator(b);
    let w1 = dot3(&d1, &d1);
    let w2 = dot3(&d2, &d2);
    let offset = [
        &w1 * &base2[0] - &w2 * &base1[0],
        &w1 * &base2[1] - &w2 * &base1[1],
        &w1 * &base2[2] - &w2 * &base1[2],
    ];
    let normal = cross3(&d1, &offset);
    if normal.iter().all(|v| v.is_zero()) {
        return Err(Error::Internal(
            "distinct parallel lines with identical base points".into(),
        ));
    }
    Plane3H::from_ints([
        &w1 * &normal[0],
        &w1 * &normal[1],
        &w1 * &normal[2],
        -dot3(&normal, &base1),
    ])
}

/// `d × m` of a line: the numerator of its homogeneous base point.
fn base_numerator(line: &PlueckerLine) -> [BigInt; 3] {
    let d = line.direction();
    let m = line.moment();
    cross3(&d, &m)
}

/// Limits for [`plane_richness`].
#[derive(Debug, Clone, Copy)]
pub struct RichnessOptions {
    /// Maximum family size; the scan is quadratic in it.
    pub max_lines: usize,
    pub deadline: Deadline,
}

impl Default for RichnessOptions {
    fn default() -> Self {
        RichnessOptions {
            max_lines: 4096,
            deadline: Deadline::none(),
        }
    }
}

/// The plane multiplicity of a line family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneRichness {
    /// Largest number of family lines lying in one common plane
    /// (0 for the empty family, 1 when no two lines are coplanar).
    pub s: u64,
    /// A plane attaining `s`, when `s ≥ 2`; smallest coefficient vector
    /// among the winners, re-verified by a full containment scan. For
    /// `s = 1` an arbitrary plane through the first line is reported.
    pub witness: Option<Plane3H>,
}

struct RichnessState {
    planes: HashMap<Plane3H, Vec<u32>>,
}

impl RichnessState {
    fn new() -> Self {
        RichnessState {
            planes: HashMap::new(),
        }
    }

    fn merge(self, other: RichnessState) -> RichnessState {
        let (mut into, from) = if self.planes.len() >= other.planes.len() {
            (self, other.planes)
        } else {
            (other, self.planes)
        };
        for (plane, mut ids) in from {
            into.planes
                .entry(plane)
                .and_modify(|v| v.append(&mut ids))
                .or_insert(ids);
        }
        into
    }
}

/// Computes how many lines of the family share a single plane, together
/// with a witness plane.
///
/// Coplanar lines of 3-space always share a projective point, so every
/// plane holding at least two family lines is found by spanning some
/// meeting pair; grouping all meeting pairs by their span therefore
/// recovers each rich plane with its complete line set. The winning count
/// is nevertheless re-established by an independent containment scan of
/// the whole family against the witness plane.
pub fn plane_richness(
    lines: &[PlueckerLine],
    options: &RichnessOptions,
) -> Result<PlaneRichness> {
    if lines.len() > options.max_lines {
        return Err(Error::SizeLimit {
            what: "plane richness scan",
            limit: options.max_lines,
            actual: lines.len(),
        });
    }
    let mut seen = HashMap::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        if seen.insert(l.coords(), i).is_some() {
            return Err(Error::InvalidParameter(format!(
                "duplicate line {l} in plane richness scan"
            )));
        }
    }
    if lines.is_empty() {
        return Ok(PlaneRichness {
            s: 0,
            witness: None,
        });
    }

    let state = (0..lines.len())
        .into_par_iter()
        .try_fold(
            RichnessState::new,
            |mut state, i| -> Result<RichnessState> {
                options.deadline.check("plane richness scan")?;
                for j in (i + 1)..lines.len() {
                    let li = &lines[i];
                    let lj = &lines[j];
                    if crate::klein::meets(li, lj)? {
                        let plane = span_plane(li, lj)?;
                        state
                            .planes
                            .entry(plane)
                            .or_default()
                            .extend([i as u32, j as u32]);
                    }
                }
                Ok(state)
            },
        )
        .try_reduce(RichnessState::new, |a, b| Ok(a.merge(b)))?;

    let mut best: Option<(usize, Plane3H)> = None;
    for (plane, mut ids) in state.planes {
        ids.sort_unstable();
        ids.dedup();
        let candidate = (ids.len(), plane);
        best = Some(match best {
            None => candidate,
            Some(current) => {
                // More lines wins; ties go to the smaller coefficient
                // vector so reruns agree.
                if candidate.0 > current.0
                    || (candidate.0 == current.0 && candidate.1 < current.1)
                {
                    candidate
                } else {
                    current
                }
            }
        });
    }

    match best {
        None => {
            // No two lines are coplanar; any plane through the first line
            // witnesses s = 1.
            let witness = some_plane_through(&lines[0])?;
            Ok(PlaneRichness {
                s: 1,
                witness: Some(witness),
            })
        }
        Some((grouped, plane)) => {
            let verified = lines.iter().filter(|l| plane.contains_line(l)).count();
            if verified < grouped {
                return Err(Error::Internal(format!(
                    "plane {plane} grouped {grouped} lines but contains only {verified}"
                )));
            }
            Ok(PlaneRichness {
                s: verified as u64,
                witness: Some(plane),
            })
        }
    }
}

/// Some plane containing the given line: normal `d × e` for the first
/// coordinate axis `e` not parallel to the direction.
fn some_plane_through(line: &PlueckerLine) -> Result<Plane3H> {
    let d = line.direction();
    let base = base_numerator(line);
    let norm = dot3(&d, &d);
    for axis in 0..3 {
        let mut e = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        e[axis] = BigInt::from(1);
        let normal = cross3(&d, &e);
        if normal.iter().any(|v| !v.is_zero()) {
            return Plane3H::from_ints([
                &norm * &normal[0],
                &norm * &normal[1],
                &norm * &normal[2],
                -dot3(&normal, &base),
            ]);
        }
    }
    Err(Error::Internal("line with zero direction".into()))
}

/// Right-hand side of the point–line incidence bound
/// `L^{3/4} P^{1/2} + s^{1/3} L^{1/3} P^{2/3} + L + P` for `P` points and
/// `L` lines of which at most `s` share a plane.
pub fn gk_incidence_rhs(points: u128, lines: u128, s: u128) -> f64 {
    let p = points as f64;
    let l = lines as f64;
    let s = s as f64;
    l.powf(0.75) * p.sqrt() + s.cbrt() * l.cbrt() * p.powf(2.0 / 3.0) + l + p
}

/// Right-hand side `L·√L' + s·L'` bounding how many points can lie on two
/// or more lines of a family of `L'` lines, at most `s` per plane, inside
/// an ambient family of `L` lines.
pub fn bipartite_points_rhs(lines_ambient: u128, lines_family: u128, s: u128) -> f64 {
    let l = lines_ambient as f64;
    let l2 = lines_family as f64;
    let s = s as f64;
    l * l2.sqrt() + s * l2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::geom::Point2;
    use crate::klein::{build_lines, es_line, intersection_profile, ProfileOptions};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn containment_matches_known_intersections() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let b = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(0, 0));
        let c = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(2, 2));
        let p = intersection_point(&a, &b).unwrap();
        assert!(point_on_line(&p, &a));
        assert!(point_on_line(&p, &b));
        assert!(!point_on_line(&p, &c));

        // Point at infinity of a horizontal-shift pair lies on its line.
        let h = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(1, 0));
        let h2 = es_line(&Point2::from_ints(0, 1), &Point2::from_ints(1, 1));
        let inf = intersection_point(&h, &h2).unwrap();
        assert!(inf.is_at_infinity());
        assert!(point_on_line(&inf, &h));
        assert!(point_on_line(&inf, &h2));
        assert!(!point_on_line(&inf, &a));
    }

    #[test]
    fn incidence_scan_agrees_with_profile_multiplicities() {
        let set = generate::grid(2).unwrap();
        let profile = intersection_profile(&set, &ProfileOptions::default()).unwrap();
        let points: Vec<Point3H> = profile.points().iter().map(|p| p.point().clone()).collect();
        let scanned = count_incidences(&points, profile.lines()).unwrap();
        let recorded: u128 = profile
            .points()
            .iter()
            .map(|p| p.multiplicity() as u128)
            .sum();
        assert_eq!(scanned, recorded);
    }

    #[test]
    fn incidence_scan_rejects_duplicates() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let b = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(0, 0));
        let p = intersection_point(&a, &b).unwrap();
        assert!(matches!(
            count_incidences(&[p.clone(), p.clone()], &[a.clone()]),
            Err(Error::DuplicatePoint { .. })
        ));
        assert!(matches!(
            count_incidences(&[p], &[a.clone(), a]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn span_of_crossing_lines_matches_hand_value() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let b = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(0, 0));
        let plane = span_plane(&a, &b).unwrap();
        assert_eq!(plane.coeffs(), &[big(2), big(2), big(-1), big(-1)]);
        assert!(plane.contains_line(&a));
        assert!(plane.contains_line(&b));
        assert_eq!(span_plane(&b, &a).unwrap(), plane);
    }

    #[test]
    fn span_of_parallel_lines_matches_hand_value() {
        let h = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(1, 0));
        let h2 = es_line(&Point2::from_ints(0, 1), &Point2::from_ints(1, 1));
        let plane = span_plane(&h, &h2).unwrap();
        assert_eq!(plane.coeffs(), &[big(2), big(0), big(0), big(-1)]);
        assert!(plane.contains_line(&h));
        assert!(plane.contains_line(&h2));
        // The shared infinity point lies in the plane too.
        let inf = intersection_point(&h, &h2).unwrap();
        assert!(plane.contains_point(&inf));
    }

    #[test]
    fn span_rejects_disjoint_and_identical_lines() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let c = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(2, 2));
        assert!(matches!(span_plane(&a, &c), Err(Error::NonMeetingLines)));
        assert!(matches!(span_plane(&a, &a), Err(Error::IdenticalLines)));
    }

    #[test]
    fn collinear_family_has_richness_n_with_axis_plane() {
        for n in [4u32, 5, 8] {
            let set = generate::collinear(n).unwrap();
            let lines = build_lines(&set).unwrap();
            let rich = plane_richness(&lines, &RichnessOptions::default()).unwrap();
            assert_eq!(rich.s, n as u64, "n={n}");
            let witness = rich.witness.unwrap();
            let held = lines.iter().filter(|l| witness.contains_line(l)).count();
            assert_eq!(held, n as usize, "witness count for n={n}");
            if n % 2 == 0 {
                // Unique winner: the plane y = 0 holding the n pair-(p,p)
                // lines.
                assert_eq!(witness.coeffs(), &[big(0), big(1), big(0), big(0)]);
            }
        }
    }

    #[test]
    fn single_line_family_has_richness_one() {
        let set = generate::collinear(1).unwrap();
        let lines = build_lines(&set).unwrap();
        assert_eq!(lines.len(), 1);
        let rich = plane_richness(&lines, &RichnessOptions::default()).unwrap();
        assert_eq!(rich.s, 1);
        let witness = rich.witness.unwrap();
        assert!(witness.contains_line(&lines[0]));

        let empty = plane_richness(&[], &RichnessOptions::default()).unwrap();
        assert_eq!(empty.s, 0);
        assert!(empty.witness.is_none());
    }

    #[test]
    fn richness_respects_size_limit() {
        let set = generate::grid(3).unwrap();
        let lines = build_lines(&set).unwrap();
        let opts = RichnessOptions {
            max_lines: 4,
            deadline: Deadline::none(),
        };
        assert!(matches!(
            plane_richness(&lines, &opts),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn bound_formulas_match_hand_arithmetic() {
        assert_eq!(gk_incidence_rhs(1, 1, 1), 4.0);
        // 16^{3/4}·√4 + 8^{1/3}·16^{1/3}·4^{2/3} + 16 + 4
        let v = gk_incidence_rhs(4, 16, 8);
        let expected = 16.0 + 2.0 * 16f64.cbrt() * 4f64.powf(2.0 / 3.0) + 20.0;
        assert!((v - expected).abs() < 1e-9);
        assert_eq!(bipartite_points_rhs(4, 9, 2), 30.0);
    }
}
