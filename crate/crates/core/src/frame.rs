//! Frame element construction, fast analysis, Gram matrices and the frame
//! operator in direct and Walnut forms.
//!
//! In the frequency domain a band element is a modulated band symbol,
//!
//! ```text
//! F phi_{j,k,lambda}(omega) = e^{-2 pi i omega lambda / 2^j} n_{j,k} Phi_{j,k}(omega)
//! ```
//!
//! with `n_{j,k}` either the exact unit-norm constant `|Z_{j,k}|^{-1/2}` or
//! the dyadic `2^{-jd/2}`. In seminorm mode the index set drops the central
//! tag and extends to negative scales through the unitary dilation
//! `phi_{-j,k,lambda} = T_{lambda 2^j} D_{2^{2j}} phi_{j,k,0}`, whose
//! frequency form is `e^{-2 pi i omega lambda 2^j} n 2^j Phi_{j,k}(2^{2j} omega)`.
//!
//! All inner products are quadrature on the shared midpoint grid; see
//! [`crate::grid`] for why the cells are dyadic-aligned. Analysis sweeps
//! each band once, accumulating every translate through a phase recurrence;
//! `naive_coefficient` keeps the independent one-integral-per-index path for
//! cross-checking.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{FreqGrid, GridSpec, PhaseSweep};
use crate::partition::{
    contract_band, lattice_points, Direction, FrequencyPartition, LatticePoints, PartitionKind,
    PartitionSpec, Point,
};
use crate::sobolev::Signal;
use crate::window::{BandSymbol, Window, WindowSpec};

/// Frame element normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// exact unit L2 norm, `|Z_{j,k}|^{-1/2}`
    Exact,
    /// the dyadic constant `2^{-jd/2}`
    Dyadic,
}

/// Complete description of a truncated frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSpec {
    pub partition: FrequencyPartition,
    pub window: Window,
    /// translation step; the lattice is `lambda in nu Z`
    pub nu: f64,
    /// Sobolev index the weighted energies refer to
    pub s: f64,
    pub normalization: Normalization,
    /// include negative scales and drop the central tag
    pub seminorm_mode: bool,
    /// depth of the negative-scale range in seminorm mode
    pub j_neg: u32,
    /// translates kept: `|lambda| <= lambda_max`
    pub lambda_max: f64,
    pub grid: GridSpec,
}

impl FrameSpec {
    /// Spec with library defaults for the given partition and window.
    pub fn new(partition: FrequencyPartition, window: Window, nu: f64) -> Result<FrameSpec> {
        let grid = GridSpec::for_j_max(partition.j_max as i32);
        let spec = FrameSpec {
            partition,
            window,
            nu,
            s: 0.0,
            normalization: Normalization::Exact,
            seminorm_mode: false,
            j_neg: 6,
            lambda_max: 16.0,
            grid,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.window.validate()?;
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::Config(format!(
                "nu must be positive, got {}",
                self.nu
            )));
        }
        if !self.lambda_max.is_finite() || self.lambda_max <= 0.0 {
            return Err(Error::Config("lambda_max must be positive".into()));
        }
        if self.s < 0.0 {
            return Err(Error::Config("s must be nonnegative".into()));
        }
        if self.window.dim() != self.partition.dim() {
            return Err(Error::Dimension {
                expected: self.partition.dim(),
                got: self.window.dim(),
            });
        }
        if self.seminorm_mode && self.j_neg == 0 {
            return Err(Error::Config("seminorm mode needs j_neg >= 1".into()));
        }
        let ceiling = f64::powi(2.0, self.partition.j_max as i32 + 1);
        if self.grid.omega_max < ceiling {
            return Err(Error::Config(format!(
                "grid omega_max {} below the partition ceiling {}",
                self.grid.omega_max, ceiling
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.partition.dim()
    }

    /// Largest translate index: `lambda = m nu`, `|m| <= this`.
    pub fn max_lambda_idx(&self) -> i64 {
        (self.lambda_max / self.nu + 1e-9).floor() as i64
    }

    /// Scale tags in deterministic order (central first, then `(j, k)`
    /// ascending).
    pub fn tags(&self) -> Vec<Tag> {
        let mut tags = Vec::new();
        if !self.seminorm_mode {
            tags.push(Tag::Central);
        }
        let j_lo = if self.seminorm_mode {
            -(self.j_neg as i32)
        } else {
            0
        };
        let dirs: Vec<Direction> = match self.partition.kind {
            PartitionKind::Dyadic1d => vec![Direction::Pos, Direction::Neg],
            PartitionKind::Polar2d => (0..8).map(Direction::Sector).collect(),
        };
        for j in j_lo..=(self.partition.j_max as i32) {
            for &k in &dirs {
                tags.push(Tag::Band { j, k });
            }
        }
        tags
    }

    /// All frame indices within the truncation, tag-major.
    pub fn indices(&self) -> Vec<FrameIndex> {
        let m = self.max_lambda_idx();
        let mut out = Vec::new();
        for tag in self.tags() {
            for i in -m..=m {
                out.push(FrameIndex { tag, lambda_idx: i });
            }
        }
        out
    }

    fn tag_data(&self, tag: Tag) -> Result<TagData> {
        match tag {
            Tag::Central => Ok(TagData {
                tag,
                symbol: BandSymbol::central(self.window.clone()),
                norm: 1.0,
                amp: 1.0,
                spacing: self.nu,
            }),
            Tag::Band { j, k } => {
                let parent = self.partition.band_for(j.unsigned_abs(), k);
                let lattice = lattice_points(&parent)?;
                let band = if j >= 0 {
                    parent
                } else {
                    contract_band(&parent, j.unsigned_abs())?
                };
                let norm = match self.normalization {
                    Normalization::Exact => 1.0 / (lattice.points.len() as f64).sqrt(),
                    Normalization::Dyadic => {
                        f64::powi(2.0, -(j.unsigned_abs() as i32) * self.dim() as i32).sqrt()
                    }
                };
                let amp = if j < 0 {
                    f64::powi(2.0, (j.unsigned_abs() as i32) * self.dim() as i32).sqrt()
                } else {
                    1.0
                };
                Ok(TagData {
                    tag,
                    symbol: BandSymbol::new(self.window.clone(), &band, &lattice)?,
                    norm,
                    amp,
                    spacing: self.nu * f64::powi(2.0, -j),
                })
            }
        }
    }

    fn all_tag_data(&self) -> Result<Vec<TagData>> {
        self.tags().into_iter().map(|t| self.tag_data(t)).collect()
    }

    /// Serialized form.
    pub fn to_file(&self) -> Result<FrameSpecFile> {
        let pspec = self.partition.spec()?;
        Ok(FrameSpecFile {
            dimension: self.dim(),
            partition: PartitionField {
                kind: pspec.kind,
                j_max: pspec.j_max,
            },
            window: WindowField::from_window(&self.window),
            nu: self.nu,
            s: self.s,
            normalization: self.normalization,
            seminorm_mode: self.seminorm_mode,
            j_neg: if self.seminorm_mode {
                Some(self.j_neg)
            } else {
                None
            },
            lambda_max: self.lambda_max,
            grid: self.grid,
        })
    }

    pub fn from_file(file: &FrameSpecFile) -> Result<FrameSpec> {
        let partition = FrequencyPartition::from_spec(&PartitionSpec {
            dimension: file.dimension,
            kind: file.partition.kind,
            j_max: file.partition.j_max,
        })?;
        let spec = FrameSpec {
            partition,
            window: file.window.to_window(file.dimension)?,
            nu: file.nu,
            s: file.s,
            normalization: file.normalization,
            seminorm_mode: file.seminorm_mode,
            j_neg: file.j_neg.unwrap_or(6),
            lambda_max: file.lambda_max,
            grid: file.grid,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Short identifier used in report files.
    pub fn id(&self) -> String {
        format!(
            "{}/{:?}/jmax{}/nu{}",
            self.window, self.partition.kind, self.partition.j_max, self.nu
        )
    }
}

/// Scale tag of a frame index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Central,
    Band { j: i32, k: Direction },
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Central => write!(f, "central"),
            Tag::Band { j, k } => write!(f, "band({j},{k})"),
        }
    }
}

impl Tag {
    /// Energy weight `2^{2js}` (1 for the central tag).
    pub fn weight(&self, s: f64) -> f64 {
        match self {
            Tag::Central => 1.0,
            Tag::Band { j, .. } => f64::exp2(2.0 * *j as f64 * s),
        }
    }
}

/// A frame index `(tag, lambda)` with `lambda = lambda_idx * nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrameIndex {
    pub tag: Tag,
    pub lambda_idx: i64,
}

impl FrameIndex {
    pub fn central(lambda_idx: i64) -> FrameIndex {
        FrameIndex {
            tag: Tag::Central,
            lambda_idx,
        }
    }

    pub fn band(j: i32, k: Direction, lambda_idx: i64) -> FrameIndex {
        FrameIndex {
            tag: Tag::Band { j, k },
            lambda_idx,
        }
    }

    pub fn lambda(&self, nu: f64) -> f64 {
        self.lambda_idx as f64 * nu
    }
}

impl fmt::Display for FrameIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, m={})", self.tag, self.lambda_idx)
    }
}

/// Everything needed to evaluate the elements of one tag.
struct TagData {
    tag: Tag,
    symbol: BandSymbol,
    /// normalization constant
    norm: f64,
    /// frequency amplitude of the dilation (`2^{|j| d/2}` for negative j)
    amp: f64,
    /// physical translation step: element `m` sits at `x = m * spacing`
    spacing: f64,
}

impl TagData {
    /// Grid cells on which the symbol can be nonzero.
    fn cell_range(&self, grid: &FreqGrid) -> std::ops::Range<usize> {
        match self.symbol.support() {
            Some(iv) => grid.cell_range(iv.lo, iv.hi),
            None => 0..grid.len(),
        }
    }

    fn symbol_samples(&self, grid: &FreqGrid) -> (std::ops::Range<usize>, Vec<f64>) {
        let range = self.cell_range(grid);
        let vals = range
            .clone()
            .map(|i| self.symbol.eval(Point::D1(grid.center(i))))
            .collect();
        (range, vals)
    }
}

/// Complex frame coefficients in deterministic order (tag-major, then
/// lambda ascending).
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub entries: Vec<(FrameIndex, Complex64)>,
    pub nu: f64,
    pub s: f64,
    pub seminorm_mode: bool,
    pub signal_id: String,
    /// computation path, `"fast"` or `"naive"`
    pub path: String,
}

impl CoefficientTable {
    pub fn get(&self, idx: &FrameIndex) -> Option<Complex64> {
        self.entries.iter().find(|(i, _)| i == idx).map(|(_, c)| *c)
    }

    /// Truncation diagnostic: share of the (unweighted) energy carried by
    /// the outermost ten percent of translate indices. Large values mean
    /// `lambda_max` cuts into live coefficients.
    pub fn lambda_tail_fraction(&self) -> f64 {
        let m = self
            .entries
            .iter()
            .map(|(i, _)| i.lambda_idx.abs())
            .max()
            .unwrap_or(0);
        if m == 0 {
            return 0.0;
        }
        let edge = m - (m / 10).max(1) + 1;
        let (mut outer, mut total) = (0.0, 0.0);
        for (idx, c) in &self.entries {
            let e = c.norm_sqr();
            total += e;
            if idx.lambda_idx.abs() >= edge {
                outer += e;
            }
        }
        if total > 0.0 {
            outer / total
        } else {
            0.0
        }
    }

    /// Seminorm-mode diagnostic: share of the weighted energy sitting on
    /// the deepest negative scale, an estimate of the residual cut off by
    /// the `j_neg` truncation.
    pub fn deepest_scale_fraction(&self, s: f64) -> f64 {
        let j_min = self
            .entries
            .iter()
            .filter_map(|(i, _)| match i.tag {
                Tag::Band { j, .. } => Some(j),
                Tag::Central => None,
            })
            .min();
        let Some(j_min) = j_min else { return 0.0 };
        let (mut deepest, mut total) = (0.0, 0.0);
        for (idx, c) in &self.entries {
            let e = idx.tag.weight(s) * c.norm_sqr();
            total += e;
            if matches!(idx.tag, Tag::Band { j, .. } if j == j_min) {
                deepest += e;
            }
        }
        if total > 0.0 {
            deepest / total
        } else {
            0.0
        }
    }

    /// CSV dump: `tag,j,k,lambda,re,im,weight` with fixed 17-significant-
    /// digit formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tag,j,k,lambda,re,im,weight\n");
        for (idx, c) in &self.entries {
            let (tag, j, k) = match idx.tag {
                Tag::Central => ("central".to_string(), String::new(), String::new()),
                Tag::Band { j, k } => ("band".to_string(), j.to_string(), k.to_string()),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                tag,
                j,
                k,
                fmt_float(idx.lambda(self.nu)),
                fmt_float(c.re),
                fmt_float(c.im),
                fmt_float(idx.tag.weight(self.s)),
            ));
        }
        out
    }
}

/// Fixed numeric formatting: 17 significant digits, `.` separator.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn require_1d(spec: &FrameSpec) -> Result<()> {
    if spec.dim() != 1 {
        return Err(Error::Dimension {
            expected: 1,
            got: spec.dim(),
        });
    }
    Ok(())
}

fn check_index(spec: &FrameSpec, idx: &FrameIndex) -> Result<()> {
    if idx.lambda_idx.abs() > spec.max_lambda_idx() || !spec.tags().contains(&idx.tag) {
        return Err(Error::IndexOutOfRange(idx.to_string()));
    }
    Ok(())
}

/// Frequency-domain value of one frame element.
pub fn frame_element_freq(spec: &FrameSpec, idx: &FrameIndex, omega: f64) -> Result<Complex64> {
    require_1d(spec)?;
    check_index(spec, idx)?;
    let data = spec.tag_data(idx.tag)?;
    let x = idx.lambda_idx as f64 * data.spacing;
    let phase = Complex64::from_polar(1.0, -2.0 * PI * omega * x);
    Ok(phase * data.norm * data.amp * data.symbol.eval(Point::D1(omega)))
}

/// Time-domain value of one frame element.
pub fn frame_element_time(spec: &FrameSpec, idx: &FrameIndex, t: f64) -> Result<Complex64> {
    require_1d(spec)?;
    check_index(spec, idx)?;
    let data = spec.tag_data(idx.tag)?;
    let x = idx.lambda_idx as f64 * data.spacing;
    match idx.tag {
        Tag::Central => Ok(Complex64::new(spec.window.time(Point::D1(t - x)), 0.0)),
        Tag::Band { j, k } => {
            if j >= 0 {
                Ok(band_element_time_at_zero(spec, j, k, t - x)? * data.norm)
            } else {
                // T_{lambda 2^|j|} D_{4^|j|} phi_{|j|,k,0}
                let aj = j.unsigned_abs();
                let scale = f64::powi(4.0, aj as i32);
                let inner =
                    band_element_time_at_zero(spec, aj as i32, k, (t - x) / scale)? * data.norm;
                Ok(inner / scale.sqrt())
            }
        }
    }
}

/// `sum_{eta in Z_{j,k}} e^{2 pi i eta u} phi(u)` (no normalization).
fn band_element_time_at_zero(spec: &FrameSpec, j: i32, k: Direction, u: f64) -> Result<Complex64> {
    let band = spec.partition.band_for(j as u32, k);
    let lattice = lattice_points(&band)?;
    let z = match &lattice.points {
        LatticePoints::D1(v) => v,
        _ => unreachable!("1D lattice"),
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for eta in z {
        acc += Complex64::from_polar(1.0, 2.0 * PI * *eta as f64 * u);
    }
    Ok(acc * spec.window.time(Point::D1(u)))
}

/// Checks the signal bandwidth budget and returns its grid norm.
fn check_bandwidth(spec: &FrameSpec, grid: &FreqGrid, signal: &Signal) -> Result<f64> {
    let _ = spec;
    let norm_grid = grid.integrate(|w| signal.freq(w).norm_sqr());
    let tail = signal.tail_mass_bound(grid.omega_max());
    if tail > 1e-10 * norm_grid.max(f64::MIN_POSITIVE) {
        return Err(Error::BandwidthViolation {
            tail,
            omega_max: grid.omega_max(),
        });
    }
    Ok(norm_grid)
}

/// Fast analysis: frame coefficients of `signal` for every index within the
/// truncation. Each band is swept once; the lambda dependence is a pure
/// phase handled by a recurrence.
pub fn analyze(spec: &FrameSpec, signal: &Signal) -> Result<CoefficientTable> {
    require_1d(spec)?;
    spec.validate()?;
    let grid = spec.grid.build()?;
    check_bandwidth(spec, &grid, signal)?;

    let m = spec.max_lambda_idx();
    let tags = spec.all_tag_data()?;
    let per_tag: Result<Vec<Vec<(FrameIndex, Complex64)>>> = tags
        .par_iter()
        .map(|data| {
            let (range, symbol) = data.symbol_samples(&grid);
            let mut acc = vec![Complex64::new(0.0, 0.0); (2 * m + 1) as usize];
            for (off, i) in range.clone().enumerate() {
                let w = grid.center(i);
                let g = signal.freq(w) * symbol[off];
                if g == Complex64::new(0.0, 0.0) {
                    continue;
                }
                // phases e^{2 pi i w (m spacing)} for m = -M..=M
                let step = 2.0 * PI * w * data.spacing;
                let mut sweep = PhaseSweep::new(-(m as f64) * step, step);
                for slot in acc.iter_mut() {
                    *slot += g * sweep.advance();
                }
            }
            let scale = data.norm * data.amp * grid.cell();
            Ok(acc
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    (
                        FrameIndex {
                            tag: data.tag,
                            lambda_idx: i as i64 - m,
                        },
                        c * scale,
                    )
                })
                .collect())
        })
        .collect();

    Ok(CoefficientTable {
        entries: per_tag?.into_iter().flatten().collect(),
        nu: spec.nu,
        s: spec.s,
        seminorm_mode: spec.seminorm_mode,
        signal_id: signal.id(),
        path: "fast".into(),
    })
}

/// Independent oracle path: one full-grid quadrature per index.
pub fn naive_coefficient(spec: &FrameSpec, signal: &Signal, idx: &FrameIndex) -> Result<Complex64> {
    require_1d(spec)?;
    check_index(spec, idx)?;
    let grid = spec.grid.build()?;
    let data = spec.tag_data(idx.tag)?;
    let x = idx.lambda_idx as f64 * data.spacing;
    let mut acc = Complex64::new(0.0, 0.0);
    for w in grid.centers() {
        let elem = Complex64::from_polar(1.0, -2.0 * PI * w * x)
            * (data.norm * data.amp * data.symbol.eval(Point::D1(w)));
        acc += signal.freq(w) * elem.conj();
    }
    Ok(acc * grid.cell())
}

/// Gram matrix `G[a][b] = <phi_a, phi_b>` by frequency quadrature, restricted
/// to the overlap of the two symbol supports (exactly zero when the supports
/// are disjoint). Row-major, conjugate-symmetric by construction.
pub fn gram(spec: &FrameSpec, indices: &[FrameIndex]) -> Result<Vec<Complex64>> {
    require_1d(spec)?;
    let grid = spec.grid.build()?;
    for idx in indices {
        check_index(spec, idx)?;
    }
    // cache per-tag samples
    let mut tag_cache: Vec<(Tag, TagData, std::ops::Range<usize>, Vec<f64>)> = Vec::new();
    for idx in indices {
        if !tag_cache.iter().any(|(t, ..)| *t == idx.tag) {
            let data = spec.tag_data(idx.tag)?;
            let (range, samples) = data.symbol_samples(&grid);
            tag_cache.push((idx.tag, data, range, samples));
        }
    }
    let lookup = |tag: Tag| tag_cache.iter().find(|(t, ..)| *t == tag).unwrap();

    let n = indices.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let computed: Vec<Complex64> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (_, da, ra, sa) = lookup(indices[a].tag);
            let (_, db, rb, sb) = lookup(indices[b].tag);
            let lo = ra.start.max(rb.start);
            let hi = ra.end.min(rb.end);
            if lo >= hi {
                return Complex64::new(0.0, 0.0);
            }
            let xa = indices[a].lambda_idx as f64 * da.spacing;
            let xb = indices[b].lambda_idx as f64 * db.spacing;
            let delta = xa - xb;
            let step = -2.0 * PI * delta * grid.cell();
            let theta0 = -2.0 * PI * delta * grid.center(lo);
            let mut sweep = PhaseSweep::new(theta0, step);
            let mut acc = Complex64::new(0.0, 0.0);
            for i in lo..hi {
                let prod = sa[i - ra.start] * sb[i - rb.start];
                acc += prod * sweep.advance();
            }
            acc * (da.norm * da.amp * db.norm * db.amp * grid.cell())
        })
        .collect();

    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for (&(a, b), val) in pairs.iter().zip(&computed) {
        out[a * n + b] = *val;
        out[b * n + a] = val.conj();
    }
    Ok(out)
}

/// Frequency-domain samples of an operator output on the spec grid.
#[derive(Debug, Clone)]
pub struct FreqSamples {
    pub grid: FreqGrid,
    pub values: Vec<Complex64>,
}

impl FreqSamples {
    /// `<self, g_hat>` by quadrature.
    pub fn inner_with_signal(&self, signal: &Signal) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, v) in self.values.iter().enumerate() {
            acc += v * signal.freq(self.grid.center(i)).conj();
        }
        acc * self.grid.cell()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell()
    }
}

/// Applies the weighted frame operator
/// `S^s f = sum <f, phi_bullet> phi_bullet + sum 2^{2js} <f, phi> phi`
/// through analysis followed by weighted synthesis on the grid.
pub fn frame_operator_apply(spec: &FrameSpec, signal: &Signal, s: f64) -> Result<FreqSamples> {
    let table = analyze(spec, signal)?;
    let grid = spec.grid.build()?;
    let m = spec.max_lambda_idx();
    let tags = spec.all_tag_data()?;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for data in &tags {
        let weight = data.tag.weight(s);
        let coeffs: Vec<Complex64> = table
            .entries
            .iter()
            .filter(|(idx, _)| idx.tag == data.tag)
            .map(|(_, c)| *c)
            .collect();
        debug_assert_eq!(coeffs.len(), (2 * m + 1) as usize);
        let (range, symbol) = data.symbol_samples(&grid);
        let scale = data.norm * data.amp * weight;
        for (off, i) in range.clone().enumerate() {
            if symbol[off] == 0.0 {
                continue;
            }
            let w = grid.center(i);
            // synthesis phases e^{-2 pi i w (m spacing)}
            let step = -2.0 * PI * w * data.spacing;
            let mut sweep = PhaseSweep::new(-(m as f64) * step, step);
            let mut acc = Complex64::new(0.0, 0.0);
            for c in &coeffs {
                acc += c * sweep.advance();
            }
            values[i] += acc * (scale * symbol[off]);
        }
    }
    Ok(FreqSamples { grid, values })
}

/// Walnut-form application of the same operator: a lattice sum of translated
/// symbol products,
///
/// ```text
/// F(S^s f)(w) = sum_sigma 4^{sigma s} (n^2 A^2 / h_sigma)
///               Phi_sigma(w) sum_m (Phi_sigma f_hat)(w - m / h_sigma)
/// ```
///
/// where `h_sigma` is the translation spacing of the tag. The m-sum is
/// truncated once the translate leaves the grid; the signal tail outside the
/// grid is below the bandwidth budget by precondition.
pub fn walnut_apply(spec: &FrameSpec, signal: &Signal, s: f64) -> Result<FreqSamples> {
    require_1d(spec)?;
    spec.validate()?;
    let grid = spec.grid.build()?;
    check_bandwidth(spec, &grid, signal)?;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    let signal_samples: Vec<Complex64> = grid.centers().map(|w| signal.freq(w)).collect();
    for data in spec.all_tag_data()? {
        walnut_accumulate(&grid, &data, signal, &signal_samples, s, None, &mut values);
    }
    Ok(FreqSamples { grid, values })
}

/// Single `(tag, m)` term of the Walnut form, for diagnostics.
pub fn walnut_term(
    spec: &FrameSpec,
    signal: &Signal,
    s: f64,
    tag: Tag,
    m: i64,
) -> Result<FreqSamples> {
    require_1d(spec)?;
    let grid = spec.grid.build()?;
    let signal_samples: Vec<Complex64> = grid.centers().map(|w| signal.freq(w)).collect();
    let data = spec.tag_data(tag)?;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    walnut_accumulate(
        &grid,
        &data,
        signal,
        &signal_samples,
        s,
        Some(m),
        &mut values,
    );
    Ok(FreqSamples { grid, values })
}

fn walnut_accumulate(
    grid: &FreqGrid,
    data: &TagData,
    signal: &Signal,
    signal_samples: &[Complex64],
    s: f64,
    only_m: Option<i64>,
    values: &mut [Complex64],
) {
    let weight = data.tag.weight(s);
    let factor = weight * data.norm * data.norm * data.amp * data.amp / data.spacing;
    let (range, symbol) = data.symbol_samples(grid);
    let m_max = (2.0 * grid.omega_max() * data.spacing).ceil() as i64 + 1;
    let ms: Vec<i64> = match only_m {
        Some(m) => vec![m],
        None => (-m_max..=m_max).collect(),
    };
    for m in ms {
        let shift = m as f64 / data.spacing;
        // shifted sample index when the shift is grid-aligned
        let shift_cells = shift / grid.cell();
        let aligned = (shift_cells - shift_cells.round()).abs() < 1e-9;
        let di = shift_cells.round() as i64;
        for (off, i) in range.clone().enumerate() {
            if symbol[off] == 0.0 {
                continue;
            }
            let w = grid.center(i);
            let src = w - shift;
            let fval = if aligned {
                let si = i as i64 - di;
                if si < 0 || si >= grid.len() as i64 {
                    continue; // translate left the grid
                }
                signal_samples[si as usize]
            } else {
                if src.abs() > grid.omega_max() {
                    continue;
                }
                signal.freq(src)
            };
            let phi_shifted = data.symbol.eval(Point::D1(src));
            if phi_shifted == 0.0 {
                continue;
            }
            values[i] += fval * (factor * symbol[off] * phi_shifted);
        }
    }
}

/// Serialized frame spec: the JSON schema used by the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameSpecFile {
    pub dimension: usize,
    pub partition: PartitionField,
    pub window: WindowField,
    pub nu: f64,
    pub s: f64,
    pub normalization: Normalization,
    pub seminorm_mode: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j_neg: Option<u32>,
    pub lambda_max: f64,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PartitionField {
    pub kind: PartitionKind,
    pub j_max: u32,
}

/// Window description without the redundant dimension field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowField {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<Box<WindowField>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<Box<WindowField>>,
}

impl WindowField {
    pub fn from_window(w: &Window) -> WindowField {
        fn conv(s: &WindowSpec) -> WindowField {
            WindowField {
                kind: s.kind.clone(),
                n: s.n,
                x: s.x.as_deref().map(|f| Box::new(conv(f))),
                y: s.y.as_deref().map(|f| Box::new(conv(f))),
            }
        }
        conv(&WindowSpec::from_window(w))
    }

    pub fn to_window(&self, dimension: usize) -> Result<Window> {
        fn conv(f: &WindowField, dimension: usize) -> WindowSpec {
            WindowSpec {
                kind: f.kind.clone(),
                n: f.n,
                x: f.x.as_deref().map(|g| Box::new(conv(g, 1))),
                y: f.y.as_deref().map(|g| Box::new(conv(g, 1))),
                dimension,
            }
        }
        conv(self, dimension).to_window()
    }
}

/// Pointwise frequency-domain evaluation of a 2D frame element (positive
/// scales); the quadrature pipeline stays one-dimensional.
pub fn element_freq_2d(
    window: &Window,
    symbol: &BandSymbol,
    norm: f64,
    scale_j: i32,
    lambda: [f64; 2],
    omega: [f64; 2],
) -> Complex64 {
    debug_assert_eq!(window.dim(), 2);
    let inv = f64::powi(2.0, -scale_j);
    let dot = omega[0] * lambda[0] * inv + omega[1] * lambda[1] * inv;
    Complex64::from_polar(1.0, -2.0 * PI * dot)
        * (norm * symbol.eval(Point::D2(omega[0], omega[1])))
}

/// Pointwise time-domain evaluation of a 2D frame element (positive scales).
pub fn element_time_2d(
    window: &Window,
    lattice: &LatticePoints,
    norm: f64,
    scale_j: i32,
    lambda: [f64; 2],
    t: [f64; 2],
) -> Complex64 {
    debug_assert_eq!(window.dim(), 2);
    let inv = f64::powi(2.0, -scale_j);
    let u = [t[0] - lambda[0] * inv, t[1] - lambda[1] * inv];
    let z = match lattice {
        LatticePoints::D2(v) => v,
        _ => return Complex64::new(0.0, 0.0),
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for eta in z {
        acc += Complex64::from_polar(
            1.0,
            2.0 * PI * (eta[0] as f64 * u[0] + eta[1] as f64 * u[1]),
        );
    }
    acc * (norm * window.time(Point::D2(u[0], u[1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::make_dyadic_1d;

    fn sinc_spec(j_max: u32, lambda_max: f64) -> FrameSpec {
        let mut spec = FrameSpec::new(make_dyadic_1d(j_max), Window::SincPow(1), 1.0).unwrap();
        spec.lambda_max = lambda_max;
        spec
    }

    #[test]
    fn element_freq_sinc_closed_form() {
        let spec = sinc_spec(4, 8.0);
        // (1/2) chi_{[7/2, 15/2)} for j=2, lambda=0, exact normalization
        let idx = FrameIndex::band(2, Direction::Pos, 0);
        for (w, expect) in [(4.0, 0.5), (3.4, 0.0), (7.6, 0.0), (3.5, 0.5)] {
            let v = frame_element_freq(&spec, &idx, w).unwrap();
            assert_eq!(v, Complex64::new(expect, 0.0), "omega = {w}");
        }
        // modulus independent of lambda
        let idx3 = FrameIndex::band(2, Direction::Pos, 3);
        for w in [3.7, 5.1, 6.9] {
            let a = frame_element_freq(&spec, &idx, w).unwrap().norm();
            let b = frame_element_freq(&spec, &idx3, w).unwrap().norm();
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn index_truncation_enforced() {
        let spec = sinc_spec(2, 4.0);
        let bad = FrameIndex::band(7, Direction::Pos, 0);
        assert!(frame_element_freq(&spec, &bad, 1.0).is_err());
        let far = FrameIndex::band(1, Direction::Pos, 99);
        assert!(frame_element_freq(&spec, &far, 1.0).is_err());
    }

    #[test]
    fn central_element_is_translated_window() {
        let spec = sinc_spec(2, 4.0);
        let idx = FrameIndex::central(2);
        for t in [-1.3, 0.0, 0.7, 2.0] {
            let v = frame_element_time(&spec, &idx, t).unwrap();
            let expect = spec.window.time(Point::D1(t - 2.0));
            assert_eq!(v, Complex64::new(expect, 0.0));
        }
    }

    #[test]
    fn negative_direction_is_conjugate() {
        let mut spec = sinc_spec(3, 4.0);
        spec.window = Window::Gaussian;
        for m in [-2i64, 0, 1] {
            for t in [-0.4, 0.2, 1.1] {
                let plus =
                    frame_element_time(&spec, &FrameIndex::band(2, Direction::Pos, m), t).unwrap();
                let minus =
                    frame_element_time(&spec, &FrameIndex::band(2, Direction::Neg, m), t).unwrap();
                assert!((plus.conj() - minus).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn time_element_matches_inverse_transform_of_freq() {
        let mut spec = sinc_spec(3, 4.0);
        spec.grid = GridSpec::new(24.0, 1 << 14);
        let mut rng = 7u64;
        let mut next = || {
            rng = rng
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (rng >> 11) as f64 / (1u64 << 53) as f64
        };
        // two-grid Richardson extrapolation removes the second-order
        // midpoint term, which matters for the indicator-type integrands
        let quad_at = |spec: &FrameSpec, idx: &FrameIndex, t: f64, points: usize| {
            let grid = GridSpec::new(24.0, points).build().unwrap();
            let mut acc = Complex64::new(0.0, 0.0);
            for w in grid.centers() {
                acc += frame_element_freq(spec, idx, w).unwrap()
                    * Complex64::from_polar(1.0, 2.0 * PI * w * t);
            }
            acc * grid.cell()
        };
        for window in [Window::SincPow(1), Window::Gaussian] {
            spec.window = window;
            for _ in 0..5 {
                let j = (next() * 3.0) as i32;
                let m = ((next() - 0.5) * 6.0) as i64;
                let idx = FrameIndex::band(j, Direction::Pos, m);
                let t = -1.5 + 3.0 * next();
                let direct = frame_element_time(&spec, &idx, t).unwrap();
                let coarse = quad_at(&spec, &idx, t, 1 << 14);
                let fine = quad_at(&spec, &idx, t, 1 << 15);
                let quad = (fine * 4.0 - coarse) / 3.0;
                assert!(
                    (direct - quad).norm() < 1e-8,
                    "{} idx {idx} t {t}: {direct} vs {quad}",
                    spec.window
                );
            }
        }
    }

    #[test]
    fn analyze_recovers_orthonormal_coefficients() {
        let spec = sinc_spec(4, 8.0);
        let target = FrameIndex::band(2, Direction::Pos, 3);
        let signal = Signal::FrameElement {
            spec: Box::new(spec.clone()),
            idx: target,
        };
        let table = analyze(&spec, &signal).unwrap();
        for (idx, c) in &table.entries {
            if *idx == target {
                assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-8, "diag {c}");
            } else {
                assert!(c.norm() < 1e-8, "{idx}: {c}");
            }
        }
    }

    #[test]
    fn analyze_zero_signal() {
        let spec = sinc_spec(2, 2.0);
        let table = analyze(&spec, &Signal::Zero).unwrap();
        assert!(table.entries.iter().all(|(_, c)| c.norm() == 0.0));
    }

    #[test]
    fn analyze_conjugate_symmetry_for_real_signals() {
        let mut spec = sinc_spec(3, 6.0);
        spec.window = Window::Gaussian;
        spec.nu = 0.5;
        let signal = Signal::gaussian(1.0, 0.25, 0.0);
        let table = analyze(&spec, &signal).unwrap();
        for (idx, c) in &table.entries {
            if let Tag::Band {
                j,
                k: Direction::Pos,
            } = idx.tag
            {
                let mirror = FrameIndex::band(j, Direction::Neg, idx.lambda_idx);
                let cm = table.get(&mirror).unwrap();
                assert!(
                    (c.conj() - cm).norm() <= 1e-10 * c.norm().max(1.0),
                    "{idx}: {c} vs {cm}"
                );
            }
        }
    }

    #[test]
    fn fast_path_matches_naive_quadrature() {
        for window in [Window::Gaussian, Window::Boxcar] {
            let mut spec = sinc_spec(3, 4.0);
            spec.window = window;
            spec.nu = 0.5;
            let signal = Signal::gaussian(1.0, 0.2, 1.5);
            let table = analyze(&spec, &signal).unwrap();
            let mut err: f64 = 0.0;
            let mut scale: f64 = 0.0;
            for (idx, c) in table.entries.iter().step_by(3) {
                let naive = naive_coefficient(&spec, &signal, idx).unwrap();
                err = err.max((c - naive).norm());
                scale = scale.max(naive.norm());
            }
            assert!(err <= 1e-10 * scale.max(1.0), "{}: {err}", spec.window);
        }
    }

    #[test]
    fn phase_covariance_under_lattice_shift() {
        let spec = sinc_spec(3, 8.0);
        let f = Signal::gaussian(1.0, 0.0, 2.0);
        let shifted = Signal::gaussian(1.0, 1.0, 2.0); // T_nu f with nu = 1
        let t0 = analyze(&spec, &f).unwrap();
        let t1 = analyze(&spec, &shifted).unwrap();
        // c'_{j,k,lambda} = c_{j,k,lambda - nu 2^j} exactly on the sinc frame
        for (idx, c1) in &t1.entries {
            if let Tag::Band { j, .. } = idx.tag {
                let src = FrameIndex {
                    tag: idx.tag,
                    lambda_idx: idx.lambda_idx - (1i64 << j),
                };
                if src.lambda_idx.abs() <= spec.max_lambda_idx() {
                    let c0 = t0.get(&src).unwrap();
                    assert!(
                        (c1 - c0).norm() <= 1e-9 * c0.norm().max(1e-3),
                        "{idx}: {c1} vs {c0}"
                    );
                }
            }
        }
    }

    #[test]
    fn gram_is_identity_for_sinc_frame() {
        let spec = sinc_spec(3, 4.0);
        let indices = spec.indices();
        let g = gram(&spec, &indices).unwrap();
        let n = indices.len();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let expect = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g[a * n + b] - Complex64::new(expect, 0.0)).norm());
            }
        }
        assert!(worst < 1e-12, "max |G - I| = {worst}");
    }

    #[test]
    fn gram_is_hermitian_psd() {
        let mut spec = sinc_spec(2, 3.0);
        spec.window = Window::Gaussian;
        spec.nu = 0.5;
        let indices = spec.indices();
        let n = indices.len();
        let g = gram(&spec, &indices).unwrap();
        for a in 0..n {
            for b in 0..n {
                assert!((g[a * n + b] - g[b * n + a].conj()).norm() < 1e-14);
            }
        }
        // power iteration on G, then on (lmax I - G): both PSD bounds
        let matvec = |m: &[Complex64], v: &[Complex64]| -> Vec<Complex64> {
            (0..n)
                .map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum())
                .collect()
        };
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(1.0 + (i as f64 * 0.7).sin(), 0.3 * (i as f64).cos()))
            .collect();
        let mut lmax = 0.0;
        for _ in 0..200 {
            let w = matvec(&g, &v);
            lmax = w.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v = w.into_iter().map(|z| z / norm).collect();
        }
        let shifted: Vec<Complex64> = (0..n * n)
            .map(|i| {
                let (r, c) = (i / n, i % n);
                if r == c {
                    Complex64::new(lmax, 0.0) - g[i]
                } else {
                    -g[i]
                }
            })
            .collect();
        let mut u: Vec<Complex64> = v.clone();
        let mut mu = 0.0;
        for _ in 0..200 {
            let w = matvec(&shifted, &u);
            mu = w.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            u = w.into_iter().map(|z| z / norm).collect();
        }
        let lmin = lmax - mu;
        assert!(lmin > -1e-8, "min eigenvalue {lmin}");
    }

    #[test]
    fn frame_operator_is_identity_on_orthonormal_frame() {
        let mut spec = sinc_spec(3, 16.0);
        spec.grid = GridSpec::new(24.0, 1 << 15);
        // narrow-band signal: the indicator symbols cut f_hat where it is
        // negligible, so the truncated lambda series has no Gibbs tail
        let signal = Signal::gaussian(4.0, 0.0, 2.5);
        let out = frame_operator_apply(&spec, &signal, 0.0).unwrap();
        let mut err = 0.0f64;
        let mut scale = 0.0f64;
        for (i, v) in out.values.iter().enumerate() {
            let f = signal.freq(out.grid.center(i));
            err = err.max((v - f).norm());
            scale = scale.max(f.norm());
        }
        assert!(err <= 1e-6 * scale, "pointwise error {err}");
    }

    #[test]
    fn frame_operator_linearity_and_positivity() {
        let mut spec = sinc_spec(2, 8.0);
        spec.window = Window::Gaussian;
        spec.nu = 0.5;
        let f = Signal::gaussian(1.0, 0.0, 1.0);
        let g = Signal::gaussian(0.8, 0.3, 2.5);
        let alpha = Complex64::new(1.3, -0.4);
        let combo = Signal::Mixture(vec![
            (alpha, f.clone()),
            (Complex64::new(1.0, 0.0), g.clone()),
        ]);
        let s_combo = frame_operator_apply(&spec, &combo, 1.0).unwrap();
        let s_f = frame_operator_apply(&spec, &f, 1.0).unwrap();
        let s_g = frame_operator_apply(&spec, &g, 1.0).unwrap();
        let mut err = 0.0f64;
        for i in 0..s_combo.values.len() {
            let lin = alpha * s_f.values[i] + s_g.values[i];
            err = err.max((s_combo.values[i] - lin).norm());
        }
        assert!(err < 1e-10, "linearity error {err}");
        let q = s_f.inner_with_signal(&f);
        assert!(q.im.abs() < 1e-10 * q.re.abs().max(1e-12));
        assert!(q.re >= 0.0);
    }

    #[test]
    fn walnut_matches_direct_operator() {
        let mut spec = sinc_spec(3, 32.0);
        spec.window = Window::Gaussian;
        spec.nu = 0.25;
        spec.grid = GridSpec::new(24.0, 1 << 15);
        let signal = Signal::Mixture(vec![
            (Complex64::new(0.9, 0.1), Signal::gaussian(1.0, 0.2, 1.0)),
            (Complex64::new(-0.4, 0.6), Signal::gaussian(0.7, -0.3, 4.0)),
        ]);
        for s in [0.0, 1.0] {
            let direct = frame_operator_apply(&spec, &signal, s).unwrap();
            let walnut = walnut_apply(&spec, &signal, s).unwrap();
            let qd = direct.inner_with_signal(&signal);
            let qw = walnut.inner_with_signal(&signal);
            let rel = (qd - qw).norm() / qd.norm();
            assert!(rel < 1e-6, "s={s}: {qd} vs {qw} rel {rel}");
        }
    }

    #[test]
    fn walnut_offdiagonal_terms_vanish_for_band_limited_signals() {
        let mut spec = sinc_spec(3, 8.0);
        spec.nu = 0.25;
        // f_hat supported in E_{2,+} = [1.5, 9.5]
        let signal = Signal::Bump {
            center: 5.5,
            halfwidth: 2.0,
            amplitude: 1.0,
        };
        for m in [-2i64, -1, 1, 2] {
            let term = walnut_term(
                &spec,
                &signal,
                0.0,
                Tag::Band {
                    j: 2,
                    k: Direction::Pos,
                },
                m,
            )
            .unwrap();
            assert!(term.norm_sq() == 0.0, "m = {m}");
        }
        let zero = walnut_apply(&spec, &Signal::Zero, 0.0).unwrap();
        assert_eq!(zero.norm_sq(), 0.0);
    }

    #[test]
    fn spec_file_roundtrip() {
        let mut spec = sinc_spec(4, 8.0);
        spec.seminorm_mode = true;
        spec.j_neg = 3;
        spec.s = 0.5;
        let file = spec.to_file().unwrap();
        let json = serde_json::to_string_pretty(&file).unwrap();
        let back: FrameSpecFile = serde_json::from_str(&json).unwrap();
        assert_eq!(FrameSpec::from_file(&back).unwrap(), spec);
    }

    #[test]
    fn csv_is_deterministic() {
        let spec = sinc_spec(1, 2.0);
        let signal = Signal::gaussian(1.0, 0.0, 1.0);
        let a = analyze(&spec, &signal).unwrap().to_csv();
        let b = analyze(&spec, &signal).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("tag,j,k,lambda,re,im,weight\n"));
    }
}
