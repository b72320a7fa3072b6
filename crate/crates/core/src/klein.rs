//! The line-space shadow of a plane point set.
//!
//! Each ordered pair `(p, p')` of plane points is sent to a line in
//! 3-space, written in Plücker coordinates
//!
//! ```text
//! l(p, p') = ( (p'y−py)/2 : (px−p'x)/2 : 1 : (p'y+py)/2 : −(px+p'x)/2 : (‖p‖²−‖p'‖²)/4 )
//! ```
//!
//! scaled to a coprime integer 6-vector with positive leading entry. The
//! first three coordinates are the direction, the last three the moment;
//! every such line satisfies the Klein quadric equation `dir · moment = 0`.
//!
//! The construction is arranged so that the symmetric bilinear form
//!
//! ```text
//! Ω(L, M) = L0·M3 + L3·M0 + L1·M4 + L4·M1 + L2·M5 + L5·M2
//! ```
//!
//! evaluates, on the raw (unscaled) coordinates of `l(p,p')` and
//! `l(q,q')`, to `(‖p−q‖² − ‖p'−q'‖²)/4`. Hence two lines share a
//! projective point — parallel lines count, they share a point at
//! infinity — exactly when `‖p−q‖ = ‖p'−q'‖`. That equivalence is what
//! lets hinge counting be read off from line intersections, and it also
//! powers the fast meeting-pair enumeration here: instead of testing all
//! pairs of lines, pairs are joined through shared squared distances.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{DistanceBuckets, Point2, PointSet};
use crate::limits::Deadline;
use crate::rational::Rational;

/// Scales a rational vector to the canonical coprime integer vector with
/// positive leading nonzero entry. All-zero input stays all-zero; callers
/// reject that case where it is illegal.
pub(crate) fn canonical_from_rationals(values: &[Rational]) -> Vec<BigInt> {
    let mut scale = BigInt::one();
    for v in values {
        scale = scale.lcm(v.denom());
    }
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    canonical_from_ints(ints)
}

/// Divides out the gcd and normalizes the sign of the first nonzero entry.
pub(crate) fn canonical_from_ints(mut values: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for v in &values {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return values;
    }
    for v in &mut values {
        *v /= &g;
    }
    if let Some(first) = values.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut values {
                *v = -std::mem::take(v);
            }
        }
    }
    values
}

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

/// A projective point of 3-space: a coprime integer 4-vector
/// `(x : y : z : w)` with positive leading nonzero entry. Points with
/// `w = 0` are at infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3H {
    coords: [BigInt; 4],
}

impl Point3H {
    pub fn from_ints(raw: [BigInt; 4]) -> Result<Self> {
        let canonical = canonical_from_ints(raw.to_vec());
        if canonical.iter().all(|v| v.is_zero()) {
            return Err(Error::InvalidParameter(
                "projective point cannot be the zero vector".into(),
            ));
        }
        Ok(Point3H {
            coords: canonical.try_into().expect("length 4"),
        })
    }

    pub fn from_rationals(raw: &[Rational; 4]) -> Result<Self> {
        let canonical = canonical_from_rationals(raw);
        if canonical.iter().all(|v| v.is_zero()) {
            return Err(Error::InvalidParameter(
                "projective point cannot be the zero vector".into(),
            ));
        }
        Ok(Point3H {
            coords: canonical.try_into().expect("length 4"),
        })
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[3].is_zero()
    }
}

impl fmt::Display for Point3H {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} : {} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )
    }
}

/// A line of 3-space in canonical integer Plücker coordinates, tagged with
/// the ordered point pair it came from.
///
/// Equality and hashing use the coordinates only; by injectivity of the
/// pair-to-line map this agrees with equality of source pairs.
#[derive(Debug, Clone)]
pub struct PlueckerLine {
    coords: [BigInt; 6],
    source: (Point2, Point2),
}

impl PartialEq for PlueckerLine {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}
impl Eq for PlueckerLine {}
impl std::hash::Hash for PlueckerLine {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PlueckerLine {
    pub fn coords(&self) -> &[BigInt; 6] {
        &self.coords
    }

    pub fn direction(&self) -> [BigInt; 3] {
        [
            self.coords[0].clone(),
            self.coords[1].clone(),
            self.coords[2].clone(),
        ]
    }

    pub fn moment(&self) -> [BigInt; 3] {
        [
            self.coords[3].clone(),
            self.coords[4].clone(),
            self.coords[5].clone(),
        ]
    }

    /// The ordered point pair this line encodes.
    pub fn source(&self) -> (&Point2, &Point2) {
        (&self.source.0, &self.source.1)
    }

    /// True for lines of pairs `(p, p)`.
    pub fn is_degenerate(&self) -> bool {
        self.source.0 == self.source.1
    }

    /// `dir · moment`; zero is membership in the Klein quadric.
    pub fn quadric_residual(&self) -> BigInt {
        dot3(&self.direction(), &self.moment())
    }

    /// Recomputes the source pair from the coordinates alone. The map from
    /// pairs to lines is injective, so this inverts [`es_line`]; used to
    /// cross-check stored sources.
    pub fn source_from_coords(&self) -> Result<(Point2, Point2)> {
        let l2 = Rational::from_integer(self.coords[2].clone());
        if l2.is_zero() {
            return Err(Error::HorizontalLine);
        }
        let at = |i: usize| Rational::from_integer(self.coords[i].clone()) / &l2;
        let (a, b, c, f) = (at(0), at(1), at(3), at(4));
        let p = Point2::new(&b - &f, &c - &a);
        let p2 = Point2::new(-&b - &f, &c + &a);
        Ok((p, p2))
    }

    /// Builds a line from raw parts without any checks. Diagnostic hook:
    /// lets harnesses construct deliberately corrupted lines to exercise
    /// the verification failure paths.
    #[doc(hidden)]
    pub fn from_raw_parts(coords: [BigInt; 6], source: (Point2, Point2)) -> Self {
        PlueckerLine { coords, source }
    }
}

impl fmt::Display for PlueckerLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(
            f,
            "({} : {} : {} : {} : {} : {})",
            c[0], c[1], c[2], c[3], c[4], c[5]
        )
    }
}

/// The line of the ordered pair `(p, p')`.
pub fn es_line(p: &Point2, p2: &Point2) -> PlueckerLine {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    let norm_p = &p.x * &p.x + &p.y * &p.y;
    let norm_p2 = &p2.x * &p2.x + &p2.y * &p2.y;
    let raw = [
        (&p2.y - &p.y) * &half,
        (&p.x - &p2.x) * &half,
        Rational::one(),
        (&p2.y + &p.y) * &half,
        -((&p.x + &p2.x) * &half),
        (norm_p - norm_p2) * &quarter,
    ];
    let coords = canonical_from_rationals(&raw);
    PlueckerLine {
        coords: coords.try_into().expect("length 6"),
        source: (p.clone(), p2.clone()),
    }
}

fn omega(a: &[BigInt; 6], b: &[BigInt; 6]) -> BigInt {
    &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[4] + &a[4] * &b[1] + &a[2] * &b[5] + &a[5] * &b[2]
}

/// The symmetric bilinear form whose vanishing is the meet condition.
///
/// Evaluated on the stored canonical coordinates, so the value is only
/// projectively meaningful: zero iff the lines share a projective point.
pub fn klein_form(a: &PlueckerLine, b: &PlueckerLine) -> Rational {
    Rational::from_integer(omega(&a.coords, &b.coords))
}

/// Whether two distinct lines share a projective point (parallel lines
/// meet at infinity). Identical lines are rejected.
pub fn meets(a: &PlueckerLine, b: &PlueckerLine) -> Result<bool> {
    if a.coords == b.coords {
        return Err(Error::IdenticalLines);
    }
    Ok(omega(&a.coords, &b.coords).is_zero())
}

/// Affine chart of a line: a base point and direction with exact rational
/// entries, such that `moment = base × dir` in the raw normalization.
/// Fails for lines with third direction coordinate zero (never the case
/// for lines produced by [`es_line`]).
pub fn line_to_affine(line: &PlueckerLine) -> Result<([Rational; 3], [Rational; 3])> {
    if line.coords[2].is_zero() {
        return Err(Error::HorizontalLine);
    }
    let l2 = Rational::from_integer(line.coords[2].clone());
    let at = |i: usize| Rational::from_integer(line.coords[i].clone()) / &l2;
    let dir = [at(0), at(1), at(2)];
    let moment = [at(3), at(4), at(5)];
    // base = (dir × moment) / ‖dir‖² — the point of the line closest to
    // the origin, well-defined because dir ≠ 0.
    let cross = [
        &dir[1] * &moment[2] - &dir[2] * &moment[1],
        &dir[2] * &moment[0] - &dir[0] * &moment[2],
        &dir[0] * &moment[1] - &dir[1] * &moment[0],
    ];
    let norm = &dir[0] * &dir[0] + &dir[1] * &dir[1] + &dir[2] * &dir[2];
    let base = [&cross[0] / &norm, &cross[1] / &norm, &cross[2] / &norm];
    Ok((base, dir))
}

/// The common projective point of two meeting lines.
///
/// Runs in pure integer arithmetic on the canonical coordinates: a finite
/// point `x` on the line `(d, m)` satisfies `x × d = w·m`, so the pencil
/// of one line is intersected with the constraint of the other and the
/// resulting linear system is solved exactly. Errors on identical lines
/// and on lines that do not meet.
pub fn intersection_point(a: &PlueckerLine, b: &PlueckerLine) -> Result<Point3H> {
    if a.coords == b.coords {
        return Err(Error::IdenticalLines);
    }
    let d1 = a.direction();
    let m1 = a.moment();
    let d2 = b.direction();
    let m2 = b.moment();

    let cross = cross3(&d1, &d2);
    if cross.iter().all(|v| v.is_zero()) {
        // Parallel directions: the lines meet only at infinity, and only
        // if they are coplanar, which is exactly the vanishing of Ω.
        if !omega(&a.coords, &b.coords).is_zero() {
            return Err(Error::NonMeetingLines);
        }
        return Point3H::from_ints([
            d1[0].clone(),
            d1[1].clone(),
            d1[2].clone(),
            BigInt::zero(),
        ]);
    }

    // Points of line a: X = (d1 × m1 + t·d1 : d1·d1). Membership of X in
    // line b is the vector equation t·(d1 × d2) = (d1·d1)·m2 − (d1×m1)×d2;
    // solve t from one nonzero component and check the rest.
    let norm1 = dot3(&d1, &d1);
    let base1 = cross3(&d1, &m1);
    let base1_x_d2 = cross3(&base1, &d2);
    let rhs = [
        &norm1 * &m2[0] - &base1_x_d2[0],
        &norm1 * &m2[1] - &base1_x_d2[1],
        &norm1 * &m2[2] - &base1_x_d2[2],
    ];
    let pivot = (0..3).find(|&i| !cross[i].is_zero()).expect("cross ≠ 0");
    for j in 0..3 {
        if j != pivot && &rhs[j] * &cross[pivot] != &rhs[pivot] * &cross[j] {
            return Err(Error::NonMeetingLines);
        }
    }
    let num = &rhs[pivot];
    let den = &cross[pivot];
    let coords = [
        den * &base1[0] + num * &d1[0],
        den * &base1[1] + num * &d1[1],
        den * &base1[2] + num * &d1[2],
        den * &norm1,
    ];
    Point3H::from_ints(coords)
}

/// Lines of all `n²` ordered pairs, indexed by `i·n + j` for the pair
/// `(point i, point j)`. Fails if two pairs collide in canonical
/// coordinates — which would falsify injectivity of the map.
pub fn build_lines(set: &PointSet) -> Result<Vec<PlueckerLine>> {
    let n = set.len();
    let pts = set.points();
    let mut lines = Vec::with_capacity(n * n);
    let mut seen: HashMap<[BigInt; 6], usize> = HashMap::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let line = es_line(&pts[i], &pts[j]);
            if let Some(&prev) = seen.get(&line.coords) {
                return Err(Error::LineCollision(format!(
                    "pairs ({}, {}) and ({}, {}) share coordinates {}",
                    pts[prev / n],
                    pts[prev % n],
                    pts[i],
                    pts[j],
                    line
                )));
            }
            seen.insert(line.coords.clone(), i * n + j);
            lines.push(line);
        }
    }
    Ok(lines)
}

/// One distinct projective point hit by the line family, with the sorted
/// ids of all lines through it.
#[derive(Debug, Clone)]
pub struct ProfilePoint {
    point: Point3H,
    lines: Vec<u32>,
}

impl ProfilePoint {
    pub fn point(&self) -> &Point3H {
        &self.point
    }

    /// Ids of the lines through this point, sorted.
    pub fn lines(&self) -> &[u32] {
        &self.lines
    }

    /// Number of lines through the point; at least 2 by construction.
    pub fn multiplicity(&self) -> u64 {
        self.lines.len() as u64
    }
}

/// Dyadic bucket of a multiplicity: the power of two `k` with
/// `μ ∈ [k, 2k)`.
pub fn dyadic_bucket(mu: u64) -> u64 {
    debug_assert!(mu >= 1);
    1u64 << (63 - mu.leading_zeros())
}

/// Limits for [`intersection_profile`].
#[derive(Debug, Clone, Copy)]
pub struct ProfileOptions {
    /// Maximum size of the source point set (the line family is `n²` and
    /// the meeting-pair join is roughly cubic in `n`).
    pub max_points: usize,
    pub deadline: Deadline,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            max_points: 128,
            deadline: Deadline::none(),
        }
    }
}

/// Full intersection statistics of the line family of a point set.
#[derive(Debug, Clone)]
pub struct IntersectionProfile {
    n: usize,
    lines: Vec<PlueckerLine>,
    points: Vec<ProfilePoint>,
    nu: Vec<u64>,
    meeting_pairs: u64,
    /// `k → indices into points` for points with multiplicity in `[k, 2k)`.
    dyadic: BTreeMap<u64, Vec<u32>>,
    /// `k → per-line count of bucket-`k` points on the line`.
    supports: BTreeMap<u64, Vec<u32>>,
}

/// Lines whose bucket-`k` support lies in `[t, 2t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichLineFamily {
    pub k: u64,
    pub t: u64,
    /// Line ids, sorted.
    pub lines: Vec<u32>,
}

impl IntersectionProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[PlueckerLine] {
        &self.lines
    }

    pub fn line(&self, id: u32) -> &PlueckerLine {
        &self.lines[id as usize]
    }

    /// Distinct projective points hit by at least one meeting pair,
    /// sorted by canonical coordinates.
    pub fn points(&self) -> &[ProfilePoint] {
        &self.points
    }

    /// Per-line count of other lines met (index parallel to `lines`).
    pub fn nu(&self) -> &[u64] {
        &self.nu
    }

    pub fn nu_of(&self, line: u32) -> u64 {
        self.nu[line as usize]
    }

    /// Number of unordered meeting pairs; equals `Σ ν / 2`.
    pub fn meeting_pairs(&self) -> u64 {
        self.meeting_pairs
    }

    pub fn sum_nu(&self) -> u128 {
        self.nu.iter().map(|&v| v as u128).sum()
    }

    pub fn sum_nu_sq(&self) -> u128 {
        self.nu.iter().map(|&v| (v as u128) * (v as u128)).sum()
    }

    pub fn max_nu(&self) -> u64 {
        self.nu.iter().copied().max().unwrap_or(0)
    }

    /// Largest point multiplicity in the family (0 when nothing meets).
    pub fn max_mu(&self) -> u64 {
        self.points
            .iter()
            .map(ProfilePoint::multiplicity)
            .max()
            .unwrap_or(0)
    }

    /// `Σ_points μ(μ−1)`; pairs double-counted from the point side.
    pub fn sum_mu_choose_ordered(&self) -> u128 {
        self.points
            .iter()
            .map(|p| {
                let mu = p.multiplicity() as u128;
                mu * (mu - 1)
            })
            .sum()
    }

    /// The dyadic buckets present, ascending.
    pub fn dyadic_ks(&self) -> impl Iterator<Item = u64> + '_ {
        self.dyadic.keys().copied()
    }

    /// Indices into [`Self::points`] of the bucket-`k` points.
    pub fn bucket(&self, k: u64) -> &[u32] {
        self.dyadic.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Per-line counts of bucket-`k` points, when the bucket is nonempty.
    pub fn support(&self, k: u64) -> Option<&[u32]> {
        self.supports.get(&k).map(Vec::as_slice)
    }

    /// Lines of the family whose bucket-`k` support is in `[t, 2t)`.
    pub fn rich_lines(&self, k: u64, t: u64) -> Result<RichLineFamily> {
        if !k.is_power_of_two() || !t.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "bucket parameters must be powers of two, got k={k}, t={t}"
            )));
        }
        let lines = match self.supports.get(&k) {
            None => Vec::new(),
            Some(supp) => supp
                .iter()
                .enumerate()
                .filter(|&(_, &s)| (s as u64) >= t && (s as u64) < 2 * t)
                .map(|(i, _)| i as u32)
                .collect(),
        };
        Ok(RichLineFamily { k, t, lines })
    }

    /// Incidences between bucket-`k` points and the given lines, read off
    /// the recorded structure. For these families the record is complete:
    /// every line through a recorded point was itself recorded, because
    /// any line through the point meets every other line through it.
    pub fn bucket_incidences(&self, k: u64, family: &RichLineFamily) -> u128 {
        debug_assert_eq!(k, family.k);
        match self.supports.get(&k) {
            None => 0,
            Some(supp) => family
                .lines
                .iter()
                .map(|&l| supp[l as usize] as u128)
                .sum(),
        }
    }
}

struct JoinState {
    map: HashMap<Point3H, Vec<u32>>,
    nu: Vec<u64>,
    pairs: u64,
}

impl JoinState {
    fn new(lines: usize) -> Self {
        JoinState {
            map: HashMap::new(),
            nu: vec![0; lines],
            pairs: 0,
        }
    }

    fn merge(mut self, other: JoinState) -> JoinState {
        // Keep the bigger map, drain the smaller into it. Contents are
        // multiset unions, so the merge order cannot affect results.
        let (mut into, from) = if self.map.len() >= other.map.len() {
            let JoinState { map, nu, pairs } = other;
            for (a, b) in self.nu.iter_mut().zip(nu) {
                *a += b;
            }
            self.pairs += pairs;
            (self, map)
        } else {
            let JoinState { map, nu, pairs } = self;
            let mut keep = other;
            for (a, b) in keep.nu.iter_mut().zip(nu) {
                *a += b;
            }
            keep.pairs += pairs;
            (keep, map)
        };
        for (point, mut ids) in from {
            into.map
                .entry(point)
                .and_modify(|v| v.append(&mut ids))
                .or_insert(ids);
        }
        into
    }
}

/// Builds the full intersection profile of the line family of `set`:
/// enumerates every unordered pair of meeting lines through the shared
/// squared-distance join, computes each common point exactly, and groups
/// lines by point.
pub fn intersection_profile(
    set: &PointSet,
    options: &ProfileOptions,
) -> Result<IntersectionProfile> {
    let n = set.len();
    if n > options.max_points {
        return Err(Error::SizeLimit {
            what: "line-space intersection profile",
            limit: options.max_points,
            actual: n,
        });
    }
    let lines = build_lines(set)?;
    let buckets = DistanceBuckets::build(set);
    let line_count = n * n;

    let state = (0..line_count)
        .into_par_iter()
        .try_fold(
            || JoinState::new(line_count),
            |mut state, j| -> Result<JoinState> {
                options.deadline.check("meeting-pair enumeration")?;
                let q = j / n;
                let q2 = j % n;
                let (mut ai, mut bi) = (0, 0);
                let (qa, qb) = (buckets.of(q), buckets.of(q2));
                while ai < qa.len() && bi < qb.len() {
                    match qa[ai].0.cmp(&qb[bi].0) {
                        std::cmp::Ordering::Less => ai += 1,
                        std::cmp::Ordering::Greater => bi += 1,
                        std::cmp::Ordering::Equal => {
                            for &p in &qa[ai].1 {
                                let row = p as usize * n;
                                for &p2 in &qb[bi].1 {
                                    let i = row + p2 as usize;
                                    if i >= j {
                                        continue;
                                    }
                                    let point = intersection_point(&lines[i], &lines[j])
                                        .map_err(|e| {
                                            Error::Internal(format!(
                                                "distance join produced a non-meeting pair \
                                                 ({i}, {j}): {e}"
                                            ))
                                        })?;
                                    state
                                        .map
                                        .entry(point)
                                        .or_default()
                                        .extend([i as u32, j as u32]);
                                    state.nu[i] += 1;
                                    state.nu[j] += 1;
                                    state.pairs += 1;
                                }
                            }
                            ai += 1;
                            bi += 1;
                        }
                    }
                }
                Ok(state)
            },
        )
        .try_reduce(|| JoinState::new(line_count), |a, b| Ok(a.merge(b)));
    let JoinState { map, nu, pairs } = state?;

    let mut points: Vec<ProfilePoint> = map
        .into_iter()
        .map(|(point, mut ids)| {
            ids.sort_unstable();
            ids.dedup();
            ProfilePoint { point, lines: ids }
        })
        .collect();
    points.sort_by(|a, b| a.point.cmp(&b.point));

    let mut dyadic: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    let mut supports: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (idx, p) in points.iter().enumerate() {
        let k = dyadic_bucket(p.multiplicity());
        dyadic.entry(k).or_default().push(idx as u32);
        let supp = supports
            .entry(k)
            .or_insert_with(|| vec![0; line_count]);
        for &l in &p.lines {
            supp[l as usize] += 1;
        }
    }

    Ok(IntersectionProfile {
        n,
        lines,
        points,
        nu,
        meeting_pairs: pairs,
        dyadic,
        supports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::rational::{int, rational};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn line_of_axis_pair_matches_hand_canonicalization() {
        // (0,0) → (1,0): raw (0, −1/2, 1, 0, −1/2, −1/4) scales to
        // (0, 2, −4, 0, 2, 1) once the leading sign is fixed.
        let l = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(1, 0));
        assert_eq!(
            l.coords(),
            &[big(0), big(2), big(-4), big(0), big(2), big(1)]
        );
        assert!(l.quadric_residual().is_zero());
    }

    #[test]
    fn quadric_membership_holds_for_assorted_pairs() {
        let pts = [
            Point2::from_ints(0, 0),
            Point2::from_ints(3, -7),
            Point2::new(rational(1, 2).unwrap(), rational(-4, 3).unwrap()),
            Point2::from_ints(12, 5),
        ];
        for p in &pts {
            for q in &pts {
                let l = es_line(p, q);
                assert!(l.quadric_residual().is_zero(), "pair {p}, {q}");
                let (rp, rq) = l.source_from_coords().unwrap();
                assert_eq!((&rp, &rq), (p, q), "source recovery for {p}, {q}");
            }
        }
    }

    #[test]
    fn meet_iff_equal_leg_lengths() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let b = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(1, 1));
        let c = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(2, 2));
        // legs 1 and 1 agree; legs 1 and 5 do not.
        assert!(meets(&a, &b).unwrap());
        assert_eq!(klein_form(&a, &b), Rational::zero());
        assert!(!meets(&a, &c).unwrap());
        assert!(klein_form(&a, &c) != Rational::zero());
        assert_eq!(klein_form(&a, &a), Rational::zero());
        assert!(matches!(meets(&a, &a), Err(Error::IdenticalLines)));
    }

    #[test]
    fn affine_chart_matches_hand_values() {
        let l = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let (base, dir) = line_to_affine(&l).unwrap();
        assert_eq!(dir, [rational(1, 2).unwrap(), int(0), int(1)]);
        assert_eq!(base, [int(0), rational(1, 2).unwrap(), int(0)]);

        let m = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(0, 0));
        let (base, dir) = line_to_affine(&m).unwrap();
        assert_eq!(dir, [int(0), rational(1, 2).unwrap(), int(1)]);
        assert_eq!(base, [rational(1, 2).unwrap(), int(0), int(0)]);

        // moment = base × dir in the raw chart normalization.
        let l2 = Rational::from_integer(m.coords()[2].clone());
        let moment = [
            &base[1] * &dir[2] - &base[2] * &dir[1],
            &base[2] * &dir[0] - &base[0] * &dir[2],
            &base[0] * &dir[1] - &base[1] * &dir[0],
        ];
        for i in 0..3 {
            let raw = Rational::from_integer(m.coords()[3 + i].clone()) / &l2;
            assert_eq!(moment[i], raw);
        }
    }

    #[test]
    fn intersection_of_crossing_lines() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let b = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(0, 0));
        let p = intersection_point(&a, &b).unwrap();
        // (1/2 : 1/2 : 1 : 1) in canonical integers.
        assert_eq!(p.coords(), &[big(1), big(1), big(2), big(2)]);
        assert!(!p.is_at_infinity());
        // Symmetric in the arguments.
        assert_eq!(intersection_point(&b, &a).unwrap(), p);
    }

    #[test]
    fn parallel_lines_meet_at_infinity() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(1, 0));
        let b = es_line(&Point2::from_ints(0, 1), &Point2::from_ints(1, 1));
        let p = intersection_point(&a, &b).unwrap();
        assert!(p.is_at_infinity());
        assert_eq!(p.coords(), &[big(0), big(1), big(-2), big(0)]);
    }

    #[test]
    fn non_meeting_lines_error() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 1));
        let c = es_line(&Point2::from_ints(1, 0), &Point2::from_ints(2, 2));
        assert!(matches!(
            intersection_point(&a, &c),
            Err(Error::NonMeetingLines)
        ));
    }

    #[test]
    fn degenerate_pairs_share_the_vertical_pencil_point() {
        let a = es_line(&Point2::from_ints(0, 0), &Point2::from_ints(0, 0));
        let b = es_line(&Point2::from_ints(5, 7), &Point2::from_ints(5, 7));
        assert!(meets(&a, &b).unwrap());
        let p = intersection_point(&a, &b).unwrap();
        assert_eq!(p.coords(), &[big(0), big(0), big(1), big(0)]);
    }

    #[test]
    fn family_of_square_grid_is_injective_and_balanced() {
        let set = generate::grid(2).unwrap();
        let lines = build_lines(&set).unwrap();
        assert_eq!(lines.len(), 16);
        let profile = intersection_profile(&set, &ProfileOptions::default()).unwrap();
        assert_eq!(profile.meeting_pairs(), 40);
        assert!(profile.nu().iter().all(|&v| v == 5));
        assert_eq!(profile.sum_nu_sq(), 400);
        assert_eq!(profile.sum_mu_choose_ordered(), 80);
        for p in profile.points() {
            assert!(p.multiplicity() <= 4);
            assert!(p.multiplicity() >= 2);
        }
    }

    #[test]
    fn rich_line_families_partition_supported_lines() {
        let set = generate::grid(3).unwrap();
        let profile = intersection_profile(&set, &ProfileOptions::default()).unwrap();
        for k in profile.dyadic_ks() {
            let supp = profile.support(k).unwrap();
            let mut union: Vec<u32> = Vec::new();
            let mut t = 1u64;
            let max_supp = supp.iter().copied().max().unwrap_or(0) as u64;
            while t <= max_supp.max(1) {
                let family = profile.rich_lines(k, t).unwrap();
                union.extend(&family.lines);
                t *= 2;
            }
            union.sort_unstable();
            let expected: Vec<u32> = supp
                .iter()
                .enumerate()
                .filter(|&(_, &s)| s > 0)
                .map(|(i, _)| i as u32)
                .collect();
            assert_eq!(union, expected, "k={k}");
        }
    }

    #[test]
    fn rich_lines_rejects_non_powers_of_two() {
        let set = generate::grid(2).unwrap();
        let profile = intersection_profile(&set, &ProfileOptions::default()).unwrap();
        assert!(profile.rich_lines(3, 1).is_err());
        assert!(profile.rich_lines(2, 0).is_err());
    }

    #[test]
    fn profile_respects_size_limit() {
        let set = generate::grid(3).unwrap();
        let opts = ProfileOptions {
            max_points: 8,
            deadline: Deadline::none(),
        };
        assert!(matches!(
            intersection_profile(&set, &opts),
            Err(Error::SizeLimit { .. })
        ));
    }
}
