//! Uniform frequency-domain quadrature grid.
//!
//! Inner products are computed with a midpoint rule on cells of dyadic width
//! `2^-p` whose edges sit on the lattice of multiples of `2^-p`. Every
//! breakpoint of the catalog symbols (band endpoints, indicator edges,
//! B-spline knots) is a half-integer, so it lands exactly on a cell edge and
//! no quadrature node ever samples a jump. For piecewise-smooth integrands
//! this removes the O(cell) endpoint bias a node-on-the-jump rule would pay;
//! for the indicator symbols of the sinc window it makes band inner products
//! exact up to rounding, since the phase factors sum to zero over the whole
//! bands.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Requested grid geometry as it appears in spec files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub omega_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(omega_max: f64, points: usize) -> Self {
        Self { omega_max, points }
    }

    /// Default geometry for a partition truncated at `j_max`.
    pub fn for_j_max(j_max: i32) -> Self {
        Self {
            omega_max: f64::powi(2.0, j_max + 1) + 8.0,
            points: 1 << 16,
        }
    }

    pub fn build(&self) -> Result<FreqGrid> {
        FreqGrid::new(self.omega_max, self.points)
    }
}

/// Midpoint-rule grid over `[-omega_max, omega_max]` with dyadic cell width.
#[derive(Debug, Clone, PartialEq)]
pub struct FreqGrid {
    omega_max: f64,
    /// cell width is `2^-p`
    p: u32,
    n_cells: usize,
}

impl FreqGrid {
    /// Builds the grid, rounding `omega_max` up to an integer and the cell
    /// count up so that the cell width is a power of two and the total number
    /// of cells is at least `min_points`.
    pub fn new(omega_max: f64, min_points: usize) -> Result<Self> {
        if !omega_max.is_finite() || omega_max <= 0.0 {
            return Err(Error::Config(format!(
                "omega_max must be positive, got {omega_max}"
            )));
        }
        if min_points < 8 {
            return Err(Error::Config(format!(
                "grid needs at least 8 points, got {min_points}"
            )));
        }
        let omega_max = omega_max.ceil().max(1.0);
        let span = 2.0 * omega_max;
        let mut p: u32 = 2;
        while span * f64::powi(2.0, p as i32) < min_points as f64 {
            p += 1;
            if p > 26 {
                return Err(Error::Config(format!(
                    "grid of {min_points} points over [-{omega_max}, {omega_max}] is too fine"
                )));
            }
        }
        let n_cells = (span * f64::powi(2.0, p as i32)).round() as usize;
        Ok(Self {
            omega_max,
            p,
            n_cells,
        })
    }

    pub fn omega_max(&self) -> f64 {
        self.omega_max
    }

    pub fn cell(&self) -> f64 {
        f64::powi(2.0, -(self.p as i32))
    }

    pub fn len(&self) -> usize {
        self.n_cells
    }

    pub fn is_empty(&self) -> bool {
        self.n_cells == 0
    }

    /// Center of cell `i`.
    pub fn center(&self, i: usize) -> f64 {
        -self.omega_max + (i as f64 + 0.5) * self.cell()
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_cells).map(move |i| self.center(i))
    }

    /// Indices of the cells whose centers lie in `[lo, hi]`, clipped to the
    /// grid. Returns an empty range when the interval misses the grid.
    pub fn cell_range(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        if hi <= -self.omega_max || lo >= self.omega_max || hi < lo {
            return 0..0;
        }
        let cell = self.cell();
        let start = ((lo + self.omega_max) / cell - 0.5).ceil().max(0.0) as usize;
        let end = (((hi + self.omega_max) / cell - 0.5).floor() as isize + 1)
            .clamp(0, self.n_cells as isize) as usize;
        start.min(self.n_cells)..end
    }

    /// Midpoint-rule integral of `f` over the whole grid.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n_cells {
            acc += f(self.center(i));
        }
        acc * self.cell()
    }

    /// Midpoint-rule integral of a complex-valued `f` over the whole grid.
    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(&self, mut f: F) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.n_cells {
            acc += f(self.center(i));
        }
        acc * self.cell()
    }

    /// L2 inner product of two sample arrays on this grid.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        debug_assert_eq!(a.len(), self.n_cells);
        debug_assert_eq!(b.len(), self.n_cells);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, y) in a.iter().zip(b) {
            acc += x * y.conj();
        }
        acc * self.cell()
    }
}

/// Unit-modulus phase stepper: yields `exp(i * (theta0 + k * step))` while
/// avoiding a sin/cos pair per sample. Resynchronizes against the exact
/// angle every `RESYNC` steps to keep rounding drift out of long sweeps.
pub struct PhaseSweep {
    theta0: f64,
    step: f64,
    current: Complex64,
    rot: Complex64,
    k: u64,
}

const RESYNC: u64 = 4096;

impl PhaseSweep {
    pub fn new(theta0: f64, step: f64) -> Self {
        Self {
            theta0,
            step,
            current: Complex64::from_polar(1.0, theta0),
            rot: Complex64::from_polar(1.0, step),
            k: 0,
        }
    }

    /// Current phase, then advance by one step.
    #[inline]
    pub fn advance(&mut self) -> Complex64 {
        let out = self.current;
        self.k += 1;
        if self.k.is_multiple_of(RESYNC) {
            self.current = Complex64::from_polar(1.0, self.theta0 + self.k as f64 * self.step);
        } else {
            self.current *= self.rot;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snaps_to_dyadic_cells() {
        let g = FreqGrid::new(40.0, 1 << 16).unwrap();
        assert_eq!(g.cell(), f64::powi(2.0, -10));
        assert_eq!(g.len(), 80 * 1024);
        // half-integers sit on cell edges: the center nearest 0.5 is offset
        // by exactly half a cell
        let r = g.cell_range(0.5, 1.5);
        let first = g.center(r.start);
        assert_eq!(first, 0.5 + g.cell() / 2.0);
    }

    #[test]
    fn gaussian_integral_is_spectrally_accurate() {
        let g = FreqGrid::new(8.0, 1 << 12).unwrap();
        let v = g.integrate(|w| (-2.0 * std::f64::consts::PI * w * w).exp());
        // integral of exp(-2 pi w^2) over R is 1/sqrt(2)
        assert!((v - 0.5f64.sqrt()).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn cell_range_clips() {
        let g = FreqGrid::new(4.0, 64).unwrap();
        assert_eq!(g.cell_range(-100.0, 100.0), 0..g.len());
        assert!(g.cell_range(5.0, 6.0).is_empty());
        assert!(g.cell_range(2.0, 1.0).is_empty());
    }

    #[test]
    fn phase_sweep_tracks_exact_phase() {
        let mut sweep = PhaseSweep::new(0.3, 1e-3);
        let mut last = Complex64::default();
        for _ in 0..20_000 {
            last = sweep.advance();
        }
        let exact = Complex64::from_polar(1.0, 0.3 + 19_999.0 * 1e-3);
        assert!((last - exact).norm() < 1e-11);
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(FreqGrid::new(-1.0, 64).is_err());
        assert!(FreqGrid::new(8.0, 2).is_err());
    }
}
