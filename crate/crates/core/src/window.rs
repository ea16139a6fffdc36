//! Window catalog with analytic time/frequency evaluation and band symbols.
//!
//! Every window is a Fourier pair under the normalization
//! `F u(omega) = int e^{-2 pi i x omega} u(x) dx` and has a real-valued,
//! even frequency response:
//!
//! | kind              | time                 | frequency              |
//! |-------------------|----------------------|------------------------|
//! | `gaussian`        | `exp(-pi t^2)`       | `exp(-pi omega^2)`     |
//! | `sinc_pow(n)`     | `sinc(t)^n`          | cardinal B-spline `B_n`|
//! | `boxcar`          | `chi_[-1/2,1/2)`     | `sinc(omega)`          |
//! | `bspline_freq(n)` | `B_n(t)`             | `sinc(omega)^n`        |
//! | `tensor(x, y)`    | product              | product                |
//!
//! `sinc_pow(1)` is the sinc window whose band symbols are exactly the
//! indicators of the bands; `bspline_freq(1)` coincides with `boxcar`.
//!
//! The band symbol of a window over a lattice `Z` is
//! `Phi(omega) = sum_{eta in Z} freq(omega - eta)`, with the contracted
//! symbol evaluated through `Phi_{-j,k}(omega) = Phi_{j,k}(2^{2j} omega)`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{Band, BandGeometry, Interval, LatticePoints, LatticeSet, Point};

/// Normalized sinc: `sin(pi x) / (pi x)`, 1 at the origin. The numerator is
/// reduced to `(-1)^m sin(pi r)` with `x = m + r`, `|r| <= 1/2`, so the
/// zeros at the nonzero integers are exact.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let m = x.round();
    let r = x - m;
    let sign = if (m as i64) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (std::f64::consts::PI * r).sin() / (std::f64::consts::PI * x)
}

/// Centered cardinal B-spline of order `n` (the n-fold self-convolution of
/// the unit boxcar), evaluated by the Cox-de-Boor triangular recursion.
/// Support is `[-n/2, n/2)` with the half-open convention at order 1.
pub fn cardinal_bspline(n: u32, x: f64) -> f64 {
    debug_assert!(n >= 1);
    let u = x + n as f64 / 2.0;
    if !(0.0..(n as f64)).contains(&u) {
        return 0.0;
    }
    let k = u.floor() as usize;
    let mut vals = vec![0.0f64; n as usize];
    vals[k.min(n as usize - 1)] = 1.0;
    for m in 2..=(n as usize) {
        for i in 0..=(n as usize - m) {
            let t = u - i as f64;
            vals[i] = (t * vals[i] + (m as f64 - t) * vals[i + 1]) / (m as f64 - 1.0);
        }
    }
    vals[0]
}

/// A window function from the analytic catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Window {
    Gaussian,
    /// `sinc(t)^n`; `n = 1` is the sinc window of the orthonormal system
    SincPow(u32),
    Boxcar,
    /// time-domain B-spline of order `n`
    BsplineFreq(u32),
    /// separable 2D window
    Tensor(Box<Window>, Box<Window>),
    /// identically zero; diagnostic edge case
    Zero,
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Gaussian => write!(f, "gaussian"),
            Window::SincPow(1) => write!(f, "sinc"),
            Window::SincPow(n) => write!(f, "sinc_pow({n})"),
            Window::Boxcar => write!(f, "boxcar"),
            Window::BsplineFreq(n) => write!(f, "bspline_freq({n})"),
            Window::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            Window::Zero => write!(f, "zero"),
        }
    }
}

impl Window {
    pub fn dim(&self) -> usize {
        match self {
            Window::Tensor(..) => 2,
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Window::SincPow(0) | Window::BsplineFreq(0) => {
                Err(Error::Config(format!("{self}: order must be >= 1")))
            }
            Window::Tensor(a, b) => {
                if a.dim() != 1 || b.dim() != 1 {
                    return Err(Error::Config("tensor factors must be 1D".into()));
                }
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    fn time1(&self, t: f64) -> f64 {
        match self {
            Window::Gaussian => (-std::f64::consts::PI * t * t).exp(),
            Window::SincPow(n) => sinc(t).powi(*n as i32),
            Window::Boxcar => {
                if (-0.5..0.5).contains(&t) {
                    1.0
                } else {
                    0.0
                }
            }
            Window::BsplineFreq(n) => cardinal_bspline(*n, t),
            Window::Zero => 0.0,
            Window::Tensor(..) => unreachable!("tensor evaluated through time()"),
        }
    }

    fn freq1(&self, w: f64) -> f64 {
        match self {
            Window::Gaussian => (-std::f64::consts::PI * w * w).exp(),
            Window::SincPow(n) => cardinal_bspline(*n, w),
            Window::Boxcar => sinc(w),
            Window::BsplineFreq(n) => sinc(w).powi(*n as i32),
            Window::Zero => 0.0,
            Window::Tensor(..) => unreachable!("tensor evaluated through freq()"),
        }
    }

    /// Time-domain value `phi(t)`; product of the factors for tensors.
    pub fn time(&self, p: Point) -> f64 {
        match (self, p) {
            (Window::Tensor(a, b), Point::D2(x, y)) => a.time1(x) * b.time1(y),
            (w, Point::D1(t)) if w.dim() == 1 => w.time1(t),
            _ => 0.0,
        }
    }

    /// Frequency-domain value `phi_hat(omega)`; real for the whole catalog.
    pub fn freq(&self, p: Point) -> f64 {
        match (self, p) {
            (Window::Tensor(a, b), Point::D2(x, y)) => a.freq1(x) * b.freq1(y),
            (w, Point::D1(t)) if w.dim() == 1 => w.freq1(t),
            _ => 0.0,
        }
    }

    /// Radius beyond which `phi_hat` is exactly zero in f64 arithmetic:
    /// the mathematical support radius for compactly supported responses,
    /// the underflow radius for the Gaussian. `None` for heavy tails.
    pub fn freq_negligible_radius(&self) -> Option<f64> {
        match self {
            Window::SincPow(n) => Some(*n as f64 / 2.0),
            // exp(-pi * 16^2) underflows to 0.0
            Window::Gaussian => Some(16.0),
            Window::Zero => Some(0.0),
            Window::Boxcar | Window::BsplineFreq(_) => None,
            Window::Tensor(a, b) => {
                match (a.freq_negligible_radius(), b.freq_negligible_radius()) {
                    (Some(ra), Some(rb)) => Some(ra.max(rb) * std::f64::consts::SQRT_2),
                    _ => None,
                }
            }
        }
    }

    /// True when the frequency response has exact compact support.
    pub fn freq_compact_support(&self) -> bool {
        matches!(self, Window::SincPow(_) | Window::Zero)
            || matches!(self, Window::Tensor(a, b) if a.freq_compact_support() && b.freq_compact_support())
    }
}

/// Serialized window description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowSpec {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Box<WindowSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Box<WindowSpec>>,
    pub dimension: usize,
}

impl WindowSpec {
    pub fn to_window(&self) -> Result<Window> {
        let w = match self.kind.as_str() {
            "gaussian" => Window::Gaussian,
            "sinc" => Window::SincPow(1),
            "sinc_pow" => Window::SincPow(
                self.n
                    .ok_or_else(|| Error::Config("sinc_pow needs n".into()))?,
            ),
            "boxcar" => Window::Boxcar,
            "bspline_freq" => Window::BsplineFreq(
                self.n
                    .ok_or_else(|| Error::Config("bspline_freq needs n".into()))?,
            ),
            "zero" => Window::Zero,
            "tensor" => {
                let x = self
                    .x
                    .as_ref()
                    .ok_or_else(|| Error::Config("tensor needs x factor".into()))?;
                let y = self
                    .y
                    .as_ref()
                    .ok_or_else(|| Error::Config("tensor needs y factor".into()))?;
                Window::Tensor(Box::new(x.to_window()?), Box::new(y.to_window()?))
            }
            other => return Err(Error::Config(format!("unknown window kind '{other}'"))),
        };
        if w.dim() != self.dimension {
            return Err(Error::Dimension {
                expected: w.dim(),
                got: self.dimension,
            });
        }
        w.validate()?;
        Ok(w)
    }

    pub fn from_window(w: &Window) -> WindowSpec {
        let (kind, n, x, y) = match w {
            Window::Gaussian => ("gaussian", None, None, None),
            Window::SincPow(1) => ("sinc", None, None, None),
            Window::SincPow(n) => ("sinc_pow", Some(*n), None, None),
            Window::Boxcar => ("boxcar", None, None, None),
            Window::BsplineFreq(n) => ("bspline_freq", Some(*n), None, None),
            Window::Zero => ("zero", None, None, None),
            Window::Tensor(a, b) => (
                "tensor",
                None,
                Some(Box::new(WindowSpec::from_window(a))),
                Some(Box::new(WindowSpec::from_window(b))),
            ),
        };
        WindowSpec {
            kind: kind.into(),
            n,
            x,
            y,
            dimension: w.dim(),
        }
    }
}

/// The band symbol `Phi_{j,k}` (or `Phi_bullet`) of a window with respect to
/// a lattice, evaluable pointwise. Symbols are immutable and cheap to clone.
#[derive(Debug, Clone)]
pub struct BandSymbol {
    window: Window,
    tag: SymbolTag,
}

#[derive(Debug, Clone)]
enum SymbolTag {
    Central,
    Band {
        /// signed scale; negative values evaluate through the contraction
        j: i32,
        /// geometry of the positive-scale band `|j|`
        geometry: BandGeometry,
        /// lattice of the positive-scale band
        lattice: LatticePoints,
    },
}

impl BandSymbol {
    /// `Phi_bullet = phi_hat`.
    pub fn central(window: Window) -> BandSymbol {
        BandSymbol {
            window,
            tag: SymbolTag::Central,
        }
    }

    /// Symbol of a band. For `band.j >= 0` the lattice must belong to the
    /// band itself; for contracted bands (`band.j < 0`) it must belong to the
    /// positive-scale parent `|j|`, whose geometry is recovered by undoing
    /// the contraction.
    pub fn new(window: Window, band: &Band, lattice: &LatticeSet) -> Result<BandSymbol> {
        let aj = band.j.unsigned_abs() as i32;
        if lattice.owner != (aj, band.k) {
            return Err(Error::Config(format!(
                "lattice of band ({},{}) supplied for band ({},{})",
                lattice.owner.0, lattice.owner.1, band.j, band.k
            )));
        }
        let geometry = if band.j >= 0 {
            band.geometry
        } else {
            match band.geometry {
                BandGeometry::Interval(iv) => BandGeometry::Interval(Interval {
                    lo: iv.lo * f64::powi(4.0, aj),
                    hi: iv.hi * f64::powi(4.0, aj),
                    ..iv
                }),
                BandGeometry::Sector(sec) => BandGeometry::Sector(crate::partition::PolarSector {
                    rho_lo: sec.rho_lo * f64::powi(4.0, aj),
                    rho_hi: sec.rho_hi * f64::powi(4.0, aj),
                    ..sec
                }),
            }
        };
        Ok(BandSymbol {
            window,
            tag: SymbolTag::Band {
                j: band.j,
                geometry,
                lattice: lattice.points.clone(),
            },
        })
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn is_central(&self) -> bool {
        matches!(self.tag, SymbolTag::Central)
    }

    /// Number of lattice translates summed (0 for the central symbol).
    pub fn lattice_len(&self) -> usize {
        match &self.tag {
            SymbolTag::Central => 0,
            SymbolTag::Band { lattice, .. } => lattice.len(),
        }
    }

    /// Pointwise value of the symbol.
    pub fn eval(&self, p: Point) -> f64 {
        match &self.tag {
            SymbolTag::Central => self.window.freq(p),
            SymbolTag::Band { j, .. } if *j < 0 => self.eval_positive(p.scale(f64::powi(4.0, -j))),
            SymbolTag::Band { .. } => self.eval_positive(p),
        }
    }

    fn eval_positive(&self, p: Point) -> f64 {
        let (geometry, lattice) = match &self.tag {
            SymbolTag::Band {
                geometry, lattice, ..
            } => (geometry, lattice),
            SymbolTag::Central => unreachable!(),
        };
        match (&self.window, lattice, p) {
            // sinc window: the translated indicators tile the band exactly
            (Window::SincPow(1), LatticePoints::D1(_), Point::D1(x)) => {
                if geometry.contains(Point::D1(x)) {
                    1.0
                } else {
                    0.0
                }
            }
            (Window::Boxcar, LatticePoints::D1(z), Point::D1(x)) => boxcar_symbol(z, x),
            (w, LatticePoints::D1(z), Point::D1(x)) => {
                z.iter().map(|eta| w.freq1(x - *eta as f64)).sum()
            }
            (w, LatticePoints::D2(z), Point::D2(x, y)) => z
                .iter()
                .map(|eta| w.freq(Point::D2(x - eta[0] as f64, y - eta[1] as f64)))
                .sum(),
            _ => 0.0,
        }
    }

    /// CSV dump of symbol samples: columns `omega[,omega_y],phi_value`.
    pub fn sample_csv(&self, points: &[Point]) -> String {
        let two_d = points.first().map(|p| p.dim() == 2).unwrap_or(false);
        let mut out = String::from(if two_d {
            "omega_x,omega_y,phi_value\n"
        } else {
            "omega,phi_value\n"
        });
        for p in points {
            match p {
                Point::D1(w) => out.push_str(&format!("{w},{:e}\n", self.eval(*p))),
                Point::D2(x, y) => out.push_str(&format!("{x},{y},{:e}\n", self.eval(*p))),
            }
        }
        out
    }

    /// 1D interval outside which the symbol is exactly zero in f64
    /// arithmetic, when the window admits one.
    pub fn support(&self) -> Option<Interval> {
        let r = self.window.freq_negligible_radius()?;
        match &self.tag {
            SymbolTag::Central => Some(Interval {
                lo: -r,
                hi: r,
                closed_lo: true,
                closed_hi: true,
            }),
            SymbolTag::Band { j, geometry, .. } => {
                let iv = match geometry {
                    BandGeometry::Interval(iv) => iv,
                    BandGeometry::Sector(_) => return None,
                };
                let f = if *j < 0 { f64::powi(4.0, *j) } else { 1.0 };
                Some(Interval {
                    lo: (iv.lo - r) * f,
                    hi: (iv.hi + r) * f,
                    closed_lo: true,
                    closed_hi: true,
                })
            }
        }
    }
}

/// Stable summed evaluation of the boxcar symbol
/// `sum_{eta in Z} sinc(x - eta)` over a run of consecutive integers.
///
/// Consecutive terms nearly cancel (`sin(pi(x - eta))` alternates sign), so
/// they are summed in telescoped pairs
/// `sinc(u) + sinc(u-1) = -sin(pi u) / (pi u (u-1))`, which decay like the
/// inverse square of the distance without cancellation. Near lattice points
/// the paired form is 0/0, so the plain term-by-term sum (which is then
/// dominated by the nearest translate) is used instead.
fn boxcar_symbol(z: &[i64], x: f64) -> f64 {
    debug_assert!(z.windows(2).all(|w| w[1] == w[0] + 1));
    let near_integer = (x - x.round()).abs() < 1e-6;
    if z.len() < 2 || near_integer {
        return z.iter().map(|eta| sinc(x - *eta as f64)).sum();
    }
    let mut acc = 0.0;
    let mut idx = 0;
    // odd leftover term at the front; the rest pairs up exactly
    if z.len() % 2 == 1 {
        acc += sinc(x - z[0] as f64);
        idx = 1;
    }
    while idx < z.len() {
        debug_assert!(idx + 1 < z.len());
        let u = x - z[idx] as f64;
        // sin(pi u) via exact range reduction: u = m + r with |r| <= 1/2
        let m = u.round();
        let r = u - m;
        let sign = if (m as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let sin_pu = sign * (std::f64::consts::PI * r).sin();
        acc -= sin_pu / (std::f64::consts::PI * u * (u - 1.0));
        idx += 2;
    }
    acc
}
