//! Admissible frequency partitions of R^d (d = 1, 2) and their derived
//! integer lattices, enlargements and contractions.
//!
//! The two built-in families are the half-open dyadic partition of the line
//! (bands `[2^j - 1/2, 2^{j+1} - 1/2)` and their mirrors, central interval
//! `(-1/2, 1/2)`) and its polar analogue in the plane with eight angular
//! sectors per scale. All endpoints are half-integers, hence exactly
//! representable in f64, so membership tests at band boundaries are exact.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A frequency point in dimension 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    D1(f64),
    D2(f64, f64),
}

impl Point {
    pub fn dim(&self) -> usize {
        match self {
            Point::D1(_) => 1,
            Point::D2(..) => 2,
        }
    }

    pub fn norm(&self) -> f64 {
        match *self {
            Point::D1(x) => x.abs(),
            Point::D2(x, y) => x.hypot(y),
        }
    }

    pub fn scale(&self, factor: f64) -> Point {
        match *self {
            Point::D1(x) => Point::D1(factor * x),
            Point::D2(x, y) => Point::D2(factor * x, factor * y),
        }
    }
}

/// Direction index of a band: a sign in 1D, one of eight sectors in 2D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Pos,
    Neg,
    Sector(u8),
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Pos => write!(f, "+"),
            Direction::Neg => write!(f, "-"),
            Direction::Sector(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Direction::Pos),
            "-" => Ok(Direction::Neg),
            _ => s
                .parse::<u8>()
                .ok()
                .filter(|k| *k < 8)
                .map(Direction::Sector)
                .ok_or_else(|| Error::Config(format!("bad direction '{s}'"))),
        }
    }
}

impl Serialize for Direction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Half-open interval on the line. Endpoints of all catalog bands are
/// half-integers, so the f64 comparisons below are exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        let left = if self.closed_lo {
            x >= self.lo
        } else {
            x > self.lo
        };
        let right = if self.closed_hi {
            x <= self.hi
        } else {
            x < self.hi
        };
        left && right
    }

    /// Euclidean distance to the closure.
    pub fn distance(&self, x: f64) -> f64 {
        (self.lo - x).max(x - self.hi).max(0.0)
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// Interior shrunk by `margin` on both sides.
    pub fn shrink(&self, margin: f64) -> Interval {
        Interval {
            lo: self.lo + margin,
            hi: self.hi - margin,
            closed_lo: true,
            closed_hi: true,
        }
    }
}

/// Annular sector in polar coordinates; `rho` in `[rho_lo, rho_hi)`,
/// `theta` in `[theta_lo, theta_hi)` with `theta` normalized to `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarSector {
    pub rho_lo: f64,
    pub rho_hi: f64,
    pub theta_lo: f64,
    pub theta_hi: f64,
}

fn normalize_angle(theta: f64) -> f64 {
    if theta < 0.0 {
        theta + 2.0 * std::f64::consts::PI
    } else {
        theta
    }
}

fn point_segment_distance(px: f64, py: f64, ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((px - ax) * dx + (py - ay) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (cx, cy) = (ax + t * dx, ay + t * dy);
    (px - cx).hypot(py - cy)
}

impl PolarSector {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let rho = x.hypot(y);
        if rho < self.rho_lo || rho >= self.rho_hi {
            return false;
        }
        let theta = normalize_angle(y.atan2(x));
        theta >= self.theta_lo && theta < self.theta_hi
    }

    /// Exact Euclidean distance to the closure of the sector. Inside the
    /// angular wedge the nearest point is radial; outside it lies on one of
    /// the two bounding radial segments (the arcs can only be nearest when
    /// the angle is inside the wedge).
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        let rho = x.hypot(y);
        let theta = normalize_angle(y.atan2(x));
        if theta >= self.theta_lo && theta <= self.theta_hi {
            return (self.rho_lo - rho).max(rho - self.rho_hi).max(0.0);
        }
        let edge = |ang: f64| {
            point_segment_distance(
                x,
                y,
                self.rho_lo * ang.cos(),
                self.rho_lo * ang.sin(),
                self.rho_hi * ang.cos(),
                self.rho_hi * ang.sin(),
            )
        };
        edge(self.theta_lo).min(edge(self.theta_hi))
    }
}

/// Geometry of a band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BandGeometry {
    Interval(Interval),
    Sector(PolarSector),
}

impl BandGeometry {
    pub fn dim(&self) -> usize {
        match self {
            BandGeometry::Interval(_) => 1,
            BandGeometry::Sector(_) => 2,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match (self, p) {
            (BandGeometry::Interval(iv), Point::D1(x)) => iv.contains(x),
            (BandGeometry::Sector(sec), Point::D2(x, y)) => sec.contains(x, y),
            _ => false,
        }
    }

    pub fn distance(&self, p: Point) -> f64 {
        match (self, p) {
            (BandGeometry::Interval(iv), Point::D1(x)) => iv.distance(x),
            (BandGeometry::Sector(sec), Point::D2(x, y)) => sec.distance(x, y),
            _ => f64::INFINITY,
        }
    }

    /// Range of `|omega|` over the closure. Bands never contain the origin.
    pub fn abs_range(&self) -> (f64, f64) {
        match self {
            BandGeometry::Interval(iv) => {
                let (a, b) = (iv.lo.abs(), iv.hi.abs());
                (a.min(b), a.max(b))
            }
            BandGeometry::Sector(sec) => (sec.rho_lo, sec.rho_hi),
        }
    }

    /// Radial scaling by `factor` (angles untouched).
    fn scaled(&self, factor: f64) -> BandGeometry {
        match *self {
            BandGeometry::Interval(iv) => BandGeometry::Interval(Interval {
                lo: iv.lo * factor,
                hi: iv.hi * factor,
                ..iv
            }),
            BandGeometry::Sector(sec) => BandGeometry::Sector(PolarSector {
                rho_lo: sec.rho_lo * factor,
                rho_hi: sec.rho_hi * factor,
                ..sec
            }),
        }
    }
}

/// One band `I_{j,k}` of a partition. Negative `j` denotes the contracted
/// band `I_{-j,k} = {x : 2^{2|j|} x in I_{|j|,k}}` used by the seminorm
/// frame extension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub j: i32,
    pub k: Direction,
    pub geometry: BandGeometry,
}

impl Band {
    pub fn dim(&self) -> usize {
        self.geometry.dim()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.geometry.contains(p)
    }
}

/// Central neighborhood of the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CentralSet {
    Interval(Interval),
    Disk { radius: f64 },
}

impl CentralSet {
    pub fn contains(&self, p: Point) -> bool {
        match (self, p) {
            (CentralSet::Interval(iv), Point::D1(x)) => iv.contains(x),
            (CentralSet::Disk { radius }, Point::D2(x, y)) => x.hypot(y) < *radius,
            _ => false,
        }
    }
}

/// Integer lattice points of a band, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticePoints {
    D1(Vec<i64>),
    D2(Vec<[i64; 2]>),
}

impl LatticePoints {
    pub fn len(&self) -> usize {
        match self {
            LatticePoints::D1(v) => v.len(),
            LatticePoints::D2(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSet {
    pub owner: (i32, Direction),
    pub points: LatticePoints,
}

/// Exact integer lattice of a band: `band ∩ Z^d`.
pub fn lattice_points(band: &Band) -> Result<LatticeSet> {
    if band.j < 0 {
        return Err(Error::Config(
            "lattice points are defined for bands with j >= 0".into(),
        ));
    }
    let points = match band.geometry {
        BandGeometry::Interval(iv) => {
            let lo = iv.lo.floor() as i64 - 1;
            let hi = iv.hi.ceil() as i64 + 1;
            LatticePoints::D1((lo..=hi).filter(|n| iv.contains(*n as f64)).collect())
        }
        BandGeometry::Sector(sec) => {
            let r = sec.rho_hi.ceil() as i64 + 1;
            let mut pts = Vec::new();
            for x in -r..=r {
                for y in -r..=r {
                    if sec.contains(x as f64, y as f64) {
                        pts.push([x, y]);
                    }
                }
            }
            LatticePoints::D2(pts)
        }
    };
    if points.is_empty() {
        return Err(Error::EmptyLattice {
            j: band.j,
            k: band.k.to_string(),
        });
    }
    Ok(LatticeSet {
        owner: (band.j, band.k),
        points,
    })
}

/// Euclidean set distance from a point to (the closure of) a band.
pub fn distance_to_band(p: Point, band: &Band) -> f64 {
    band.geometry.distance(p)
}

/// Contraction `I_{-j,k}` of a positive-scale band.
pub fn contract_band(band: &Band, j: u32) -> Result<Band> {
    if band.j <= 0 || j == 0 {
        return Err(Error::InvalidContraction(band.j.min(j as i32)));
    }
    Ok(Band {
        j: -(j as i32),
        k: band.k,
        geometry: band.geometry.scaled(f64::powi(4.0, -(j as i32))),
    })
}

/// Enlargement `E_{j,k} = {omega : d(omega, I_{j,k}) <= 2^{j-1}}`, its
/// contracted counterparts, and `E_bullet = I_bullet`.
#[derive(Debug, Clone, PartialEq)]
pub enum EnlargedRegion {
    Central(CentralSet),
    Padded {
        /// the positive-scale band being padded
        band: Band,
        pad: f64,
        /// contraction exponent: membership of `x` is tested via `4^c * x`
        contraction: u32,
    },
}

impl EnlargedRegion {
    pub fn contains(&self, p: Point) -> bool {
        match self {
            EnlargedRegion::Central(c) => c.contains(p),
            EnlargedRegion::Padded {
                band,
                pad,
                contraction,
            } => {
                let q = p.scale(f64::powi(4.0, *contraction as i32));
                band.geometry.distance(q) <= *pad
            }
        }
    }

    /// Closed interval hull in 1D.
    pub fn interval(&self) -> Option<Interval> {
        match self {
            EnlargedRegion::Central(CentralSet::Interval(iv)) => Some(*iv),
            EnlargedRegion::Padded {
                band:
                    Band {
                        geometry: BandGeometry::Interval(iv),
                        ..
                    },
                pad,
                contraction,
            } => {
                let f = f64::powi(4.0, -(*contraction as i32));
                Some(Interval {
                    lo: (iv.lo - pad) * f,
                    hi: (iv.hi + pad) * f,
                    closed_lo: true,
                    closed_hi: true,
                })
            }
            _ => None,
        }
    }
}

/// Enlarged region of a band (positive or contracted scale).
pub fn enlarged_region(band: &Band) -> EnlargedRegion {
    let aj = band.j.unsigned_abs();
    let pad = f64::powi(2.0, aj as i32 - 1);
    if band.j >= 0 {
        EnlargedRegion::Padded {
            band: *band,
            pad,
            contraction: 0,
        }
    } else {
        // recover the positive-scale geometry by undoing the contraction
        let parent = Band {
            j: aj as i32,
            k: band.k,
            geometry: band.geometry.scaled(f64::powi(4.0, aj as i32)),
        };
        EnlargedRegion::Padded {
            band: parent,
            pad,
            contraction: aj,
        }
    }
}

/// Built-in partition families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionKind {
    #[serde(rename = "dyadic1d")]
    Dyadic1d,
    #[serde(rename = "polar2d")]
    Polar2d,
}

/// Serialized form of a partition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub dimension: usize,
    pub kind: PartitionKind,
    pub j_max: u32,
}

/// A truncated admissible partition: bands for `0 <= j <= j_max` plus the
/// central set. The frequency ceiling is `2^{j_max+1} - 1/2`; grid-based
/// checks are restricted below it.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPartition {
    pub kind: PartitionKind,
    pub j_max: u32,
    pub bands: Vec<Band>,
    pub central: CentralSet,
    modified: bool,
}

/// Dyadic partition of the line.
pub fn make_dyadic_1d(j_max: u32) -> FrequencyPartition {
    let mut bands = Vec::with_capacity(2 * (j_max as usize + 1));
    for j in 0..=j_max {
        for k in [Direction::Pos, Direction::Neg] {
            bands.push(Band {
                j: j as i32,
                k,
                geometry: BandGeometry::Interval(dyadic_interval(j as i32, k)),
            });
        }
    }
    FrequencyPartition {
        kind: PartitionKind::Dyadic1d,
        j_max,
        bands,
        central: CentralSet::Interval(Interval {
            lo: -0.5,
            hi: 0.5,
            closed_lo: false,
            closed_hi: false,
        }),
        modified: false,
    }
}

fn dyadic_interval(j: i32, k: Direction) -> Interval {
    let a = f64::powi(2.0, j) - 0.5;
    let b = f64::powi(2.0, j + 1) - 0.5;
    match k {
        Direction::Pos => Interval {
            lo: a,
            hi: b,
            closed_lo: true,
            closed_hi: false,
        },
        Direction::Neg => Interval {
            lo: -b,
            hi: -a,
            closed_lo: false,
            closed_hi: true,
        },
        Direction::Sector(_) => unreachable!("sector direction in 1D"),
    }
}

/// Polar partition of the plane with eight angular sectors per scale.
pub fn make_polar_2d(j_max: u32) -> FrequencyPartition {
    let quarter = std::f64::consts::FRAC_PI_4;
    let mut bands = Vec::with_capacity(8 * (j_max as usize + 1));
    for j in 0..=j_max {
        for k in 0..8u8 {
            bands.push(Band {
                j: j as i32,
                k: Direction::Sector(k),
                geometry: BandGeometry::Sector(PolarSector {
                    rho_lo: f64::powi(2.0, j as i32) - 0.5,
                    rho_hi: f64::powi(2.0, j as i32 + 1) - 0.5,
                    theta_lo: k as f64 * quarter,
                    theta_hi: (k + 1) as f64 * quarter,
                }),
            });
        }
    }
    FrequencyPartition {
        kind: PartitionKind::Polar2d,
        j_max,
        bands,
        central: CentralSet::Disk { radius: 0.5 },
        modified: false,
    }
}

impl FrequencyPartition {
    pub fn dim(&self) -> usize {
        match self.kind {
            PartitionKind::Dyadic1d => 1,
            PartitionKind::Polar2d => 2,
        }
    }

    /// `2^{j_max+1} - 1/2`: the largest frequency magnitude covered.
    pub fn ceiling(&self) -> f64 {
        f64::powi(2.0, self.j_max as i32 + 1) - 0.5
    }

    pub fn band(&self, j: i32, k: Direction) -> Option<&Band> {
        self.bands.iter().find(|b| b.j == j && b.k == k)
    }

    /// Geometry of the band `(j, k)` of this family for an arbitrary
    /// `j >= 0`, independent of the stored truncation.
    pub fn band_for(&self, j: u32, k: Direction) -> Band {
        match self.kind {
            PartitionKind::Dyadic1d => Band {
                j: j as i32,
                k,
                geometry: BandGeometry::Interval(dyadic_interval(j as i32, k)),
            },
            PartitionKind::Polar2d => {
                let quarter = std::f64::consts::FRAC_PI_4;
                let s = match k {
                    Direction::Sector(s) => s,
                    _ => 0,
                };
                Band {
                    j: j as i32,
                    k,
                    geometry: BandGeometry::Sector(PolarSector {
                        rho_lo: f64::powi(2.0, j as i32) - 0.5,
                        rho_hi: f64::powi(2.0, j as i32 + 1) - 0.5,
                        theta_lo: s as f64 * quarter,
                        theta_hi: (s + 1) as f64 * quarter,
                    }),
                }
            }
        }
    }

    /// Diagnostic helper: drop one band to exercise hole detection. The
    /// result no longer round-trips through `PartitionSpec`.
    pub fn with_band_removed(&self, j: i32, k: Direction) -> FrequencyPartition {
        let mut out = self.clone();
        out.bands.retain(|b| !(b.j == j && b.k == k));
        out.modified = true;
        out
    }

    pub fn spec(&self) -> Result<PartitionSpec> {
        if self.modified {
            return Err(Error::Config(
                "modified partitions do not serialize faithfully".into(),
            ));
        }
        Ok(PartitionSpec {
            dimension: self.dim(),
            kind: self.kind,
            j_max: self.j_max,
        })
    }

    pub fn from_spec(spec: &PartitionSpec) -> Result<FrequencyPartition> {
        let p = match spec.kind {
            PartitionKind::Dyadic1d => make_dyadic_1d(spec.j_max),
            PartitionKind::Polar2d => make_polar_2d(spec.j_max),
        };
        if spec.dimension != p.dim() {
            return Err(Error::Dimension {
                expected: p.dim(),
                got: spec.dimension,
            });
        }
        Ok(p)
    }

    /// Exact bounds of `|omega| / 2^j` over the closures of all bands,
    /// computed from the (dyadic-rational) endpoints.
    pub fn scale_ratio_bounds(&self) -> (f64, f64) {
        let mut inf = f64::INFINITY;
        let mut sup = 0.0f64;
        for b in &self.bands {
            let (lo, hi) = b.geometry.abs_range();
            let scale = f64::powi(2.0, b.j);
            inf = inf.min(lo / scale);
            sup = sup.max(hi / scale);
        }
        (inf, sup)
    }
}

/// Grid configuration for partition validation.
#[derive(Debug, Clone, Copy)]
pub struct ValidationConfig {
    /// sample spacing; samples are offset by half a step so that endpoints
    /// (half-integers) are never hit
    pub spacing: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            spacing: 1.0 / 64.0,
        }
    }
}

/// Outcome of `validate_admissible`; failures are entries, not errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionValidation {
    /// sampled points covered by no set (capped at 4096 entries)
    pub holes: Vec<Vec<f64>>,
    pub max_overlap: usize,
    /// exact infimum of `|omega| / 2^j` over band closures
    pub c_inf: f64,
    /// exact supremum of `|omega| / 2^j` over band closures
    pub c_sup: f64,
    pub empty_lattice_bands: Vec<(i32, Direction)>,
    pub pass: bool,
}

const MAX_REPORTED_HOLES: usize = 4096;

/// Checks covering, overlap and lattice non-emptiness of a partition on an
/// offset sample grid below the frequency ceiling, and computes the scale
/// comparability constants exactly from the band endpoints.
pub fn validate_admissible(
    partition: &FrequencyPartition,
    config: &ValidationConfig,
) -> PartitionValidation {
    let ceiling = partition.ceiling();
    let mut holes = Vec::new();
    let mut max_overlap = 0usize;

    let mut visit = |p: Point, holes: &mut Vec<Vec<f64>>| {
        let mut count = usize::from(partition.central.contains(p));
        for b in &partition.bands {
            if b.contains(p) {
                count += 1;
            }
        }
        if count == 0 && holes.len() < MAX_REPORTED_HOLES {
            holes.push(match p {
                Point::D1(x) => vec![x],
                Point::D2(x, y) => vec![x, y],
            });
        }
        max_overlap = max_overlap.max(count);
    };

    let h = config.spacing;
    match partition.dim() {
        1 => {
            let n = (2.0 * ceiling / h).floor() as usize;
            for i in 0..n {
                let x = -ceiling + (i as f64 + 0.5) * h;
                if x.abs() < ceiling {
                    visit(Point::D1(x), &mut holes);
                }
            }
        }
        _ => {
            let n = (2.0 * ceiling / h).floor() as usize;
            for ix in 0..n {
                let x = -ceiling + (ix as f64 + 0.5) * h;
                for iy in 0..n {
                    let y = -ceiling + (iy as f64 + 0.5) * h;
                    if x.hypot(y) < ceiling {
                        visit(Point::D2(x, y), &mut holes);
                    }
                }
            }
        }
    }

    let empty_lattice_bands: Vec<(i32, Direction)> = partition
        .bands
        .iter()
        .filter(|b| lattice_points(b).is_err())
        .map(|b| (b.j, b.k))
        .collect();

    let (c_inf, c_sup) = partition.scale_ratio_bounds();
    let pass = holes.is_empty() && empty_lattice_bands.is_empty() && c_inf > 0.0;
    PartitionValidation {
        holes,
        max_overlap,
        c_inf,
        c_sup,
        empty_lattice_bands,
        pass,
    }
}
