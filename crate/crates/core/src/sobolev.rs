//! Reference Sobolev norms and seminorms, weighted coefficient energies,
//! frame-bound estimation and the test-signal catalog.
//!
//! Signals are defined by exact frequency-domain evaluation, which is all the
//! analysis pipeline needs. Reference norms are quadrature at a refined grid,
//! doubling the resolution until the value moves by less than 1e-8 relative.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frame::{analyze, frame_element_freq, CoefficientTable, FrameIndex, FrameSpec, Tag};
use crate::grid::GridSpec;

/// A test signal with pointwise frequency evaluation.
#[derive(Debug, Clone)]
pub enum Signal {
    /// `e^{2 pi i omega0 t} a^{-1/2} g((t - t0)/a)` with `g(t) = e^{-pi t^2}`;
    /// `a` is the dilation, `t0` the translation, `omega0` the modulation
    Gaussian {
        a: f64,
        t0: f64,
        omega0: f64,
    },
    /// band-limited bump: `f_hat(w) = amplitude * exp(1 - 1/(1 - u^2))` on
    /// `|u| < 1` with `u = (w - center)/halfwidth`, zero outside
    Bump {
        center: f64,
        halfwidth: f64,
        amplitude: f64,
    },
    /// a frame element re-used as a signal
    FrameElement {
        spec: Box<FrameSpec>,
        idx: FrameIndex,
    },
    /// finite linear combination
    Mixture(Vec<(Complex64, Signal)>),
    Zero,
}

impl Signal {
    pub fn gaussian(a: f64, t0: f64, omega0: f64) -> Signal {
        Signal::Gaussian { a, t0, omega0 }
    }

    /// Exact frequency-domain value `f_hat(omega)`.
    pub fn freq(&self, w: f64) -> Complex64 {
        match self {
            Signal::Gaussian { a, t0, omega0 } => {
                let u = a * (w - omega0);
                let mag = a.sqrt() * (-PI * u * u).exp();
                Complex64::from_polar(mag, -2.0 * PI * (w - omega0) * t0)
            }
            Signal::Bump {
                center,
                halfwidth,
                amplitude,
            } => {
                let u = (w - center) / halfwidth;
                if u.abs() < 1.0 {
                    Complex64::new(amplitude * (1.0 - 1.0 / (1.0 - u * u)).exp(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Signal::FrameElement { spec, idx } => {
                frame_element_freq(spec, idx, w).unwrap_or(Complex64::new(0.0, 0.0))
            }
            Signal::Mixture(parts) => parts.iter().map(|(c, s)| c * s.freq(w)).sum(),
            Signal::Zero => Complex64::new(0.0, 0.0),
        }
    }

    /// Upper bound on the absolute tail mass `int_{|w| > omega_max} |f_hat|^2`.
    pub fn tail_mass_bound(&self, omega_max: f64) -> f64 {
        match self {
            Signal::Zero => 0.0,
            Signal::Gaussian { a, omega0, .. } => {
                let x = omega_max - omega0.abs();
                if x <= 0.0 {
                    return 0.5f64.sqrt(); // the whole L2 mass
                }
                // |f_hat|^2 = a e^{-c u^2} with c = 2 pi a^2; Mills bound
                let c = 2.0 * PI * a * a;
                2.0 * a * (-c * x * x).exp() / (2.0 * c * x)
            }
            Signal::Bump {
                center,
                halfwidth,
                amplitude,
            } => {
                if center.abs() + halfwidth <= omega_max {
                    0.0
                } else {
                    amplitude * amplitude * 2.0 * halfwidth
                }
            }
            Signal::FrameElement { spec, idx } => frame_element_tail_bound(spec, idx, omega_max),
            Signal::Mixture(parts) => {
                // Cauchy-Schwarz on the component tails
                let s: f64 = parts
                    .iter()
                    .map(|(c, s)| c.norm() * s.tail_mass_bound(omega_max).sqrt())
                    .sum();
                s * s
            }
        }
    }

    /// Stable identifier; comma-free so it can sit in a CSV column.
    pub fn id(&self) -> String {
        match self {
            Signal::Gaussian { a, t0, omega0 } => {
                format!("gaussian(a={a:.4};t0={t0:.4};w0={omega0:.4})")
            }
            Signal::Bump {
                center, halfwidth, ..
            } => format!("bump(c={center};w={halfwidth})"),
            Signal::FrameElement { idx, .. } => {
                let tag = match idx.tag {
                    Tag::Central => "central".to_string(),
                    Tag::Band { j, k } => format!("band({j};{k})"),
                };
                format!("elem({tag};m={})", idx.lambda_idx)
            }
            Signal::Mixture(parts) => format!("mixture[{}]", parts.len()),
            Signal::Zero => "zero".into(),
        }
    }
}

fn frame_element_tail_bound(spec: &FrameSpec, idx: &FrameIndex, omega_max: f64) -> f64 {
    // compact or underflow-compact windows: zero once the support fits
    let data_support = match idx.tag {
        Tag::Central => spec.window.freq_negligible_radius().map(|r| (-r, r)),
        Tag::Band { j, .. } => {
            let ceiling = f64::powi(2.0, j.abs() + 1) - 0.5;
            spec.window
                .freq_negligible_radius()
                .map(|r| (-(ceiling + r), ceiling + r))
        }
    };
    if let Some((lo, hi)) = data_support {
        if lo >= -omega_max && hi <= omega_max {
            return 0.0;
        }
    }
    // heavy-tailed windows (boxcar and friends): |phi_hat| <= 1/(pi d), so
    // |element|^2 integrates to at most |Z| / (pi^2 d) past distance d
    let ceiling = f64::powi(2.0, spec.partition.j_max as i32 + 1);
    let d = omega_max - ceiling;
    if d <= 1.0 {
        return 1.0;
    }
    let z = match idx.tag {
        Tag::Central => 1.0,
        Tag::Band { j, .. } => f64::powi(2.0, j.abs()),
    };
    z / (PI * PI * d)
}

/// Sobolev norm squared: `int (1 + |w|)^{2s} |f_hat|^2 dw` by refined
/// quadrature.
pub fn sobolev_norm_sq(signal: &Signal, s: f64, base: &GridSpec) -> Result<f64> {
    weighted_norm_sq(signal, base, |w| (1.0 + w.abs()).powf(2.0 * s))
}

/// Sobolev seminorm squared: `int |w|^{2s} |f_hat|^2 dw`.
pub fn sobolev_seminorm_sq(signal: &Signal, s: f64, base: &GridSpec) -> Result<f64> {
    weighted_norm_sq(signal, base, |w| w.abs().powf(2.0 * s))
}

fn weighted_norm_sq<W: Fn(f64) -> f64>(signal: &Signal, base: &GridSpec, weight: W) -> Result<f64> {
    let eval = |points: usize| -> Result<f64> {
        let grid = GridSpec::new(base.omega_max, points).build()?;
        Ok(grid.integrate(|w| weight(w) * signal.freq(w).norm_sqr()))
    };
    let mut points = base.points.saturating_mul(4);
    let mut prev = eval(points)?;
    // tail budget identical to the analysis path
    let tail = signal.tail_mass_bound(base.omega_max);
    if tail > 1e-10 * prev.max(f64::MIN_POSITIVE) {
        return Err(Error::BandwidthViolation {
            tail,
            omega_max: base.omega_max,
        });
    }
    for _ in 0..3 {
        points = points.saturating_mul(2);
        let cur = eval(points)?;
        let done = (cur - prev).abs() <= 1e-8 * cur.abs().max(f64::MIN_POSITIVE);
        prev = cur;
        if done {
            break;
        }
    }
    Ok(prev)
}

/// Weighted coefficient energy of a norm-mode table:
/// `sum |c_central|^2 + sum 2^{2js} |c_{j,k,lambda}|^2`.
pub fn coefficient_energy(table: &CoefficientTable, s: f64) -> Result<f64> {
    if table.seminorm_mode {
        return Err(Error::TableMode(
            "coefficient_energy expects a norm-mode table".into(),
        ));
    }
    Ok(weighted_energy(table, s))
}

/// Weighted energy of a seminorm-mode table (no central component,
/// scales over the truncated two-sided range).
pub fn seminorm_energy(table: &CoefficientTable, s: f64) -> Result<f64> {
    if !table.seminorm_mode {
        return Err(Error::TableMode(
            "seminorm_energy expects a seminorm-mode table".into(),
        ));
    }
    Ok(weighted_energy(table, s))
}

fn weighted_energy(table: &CoefficientTable, s: f64) -> f64 {
    table
        .entries
        .iter()
        .map(|(idx, c)| idx.tag.weight(s) * c.norm_sqr())
        .sum()
}

/// Per-signal energy/norm ratio.
#[derive(Debug, Clone, Serialize)]
pub struct RatioRecord {
    pub signal_id: String,
    pub ratio: f64,
    pub energy: f64,
    pub norm_sq: f64,
}

/// Empirical frame-bound estimate over a signal family.
#[derive(Debug, Clone, Serialize)]
pub struct BoundEstimate {
    pub a_hat: f64,
    pub b_hat: f64,
    pub ratios: Vec<RatioRecord>,
    pub seminorm_mode: bool,
}

/// Ratios `energy(f) / ||f||_s^2` (seminorm variants in seminorm mode) over
/// a family; `a_hat` and `b_hat` are their min and max.
pub fn estimate_frame_bounds(spec: &FrameSpec, family: &[Signal], s: f64) -> Result<BoundEstimate> {
    if family.is_empty() {
        return Err(Error::Config("empty signal family".into()));
    }
    let records: Result<Vec<RatioRecord>> = family
        .par_iter()
        .map(|signal| {
            let table = analyze(spec, signal)?;
            let (energy, norm_sq) = if spec.seminorm_mode {
                (
                    seminorm_energy(&table, s)?,
                    sobolev_seminorm_sq(signal, s, &spec.grid)?,
                )
            } else {
                (
                    coefficient_energy(&table, s)?,
                    sobolev_norm_sq(signal, s, &spec.grid)?,
                )
            };
            if norm_sq <= 0.0 {
                return Err(Error::ZeroNormSignal(signal.id()));
            }
            Ok(RatioRecord {
                signal_id: signal.id(),
                ratio: energy / norm_sq,
                energy,
                norm_sq,
            })
        })
        .collect();
    let records = records?;
    let a_hat = records
        .iter()
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    let b_hat = records.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(BoundEstimate {
        a_hat,
        b_hat,
        ratios: records,
        seminorm_mode: spec.seminorm_mode,
    })
}

/// Bound estimates for a list of translation steps, in the given order.
pub fn scan_nu(
    spec: &FrameSpec,
    family: &[Signal],
    s: f64,
    nus: &[f64],
) -> Result<Vec<(f64, BoundEstimate)>> {
    nus.iter()
        .map(|&nu| {
            if !(0.0 < nu && nu <= 1.0) {
                return Err(Error::Config(format!(
                    "scan step nu must lie in (0, 1], got {nu}"
                )));
            }
            let mut sp = spec.clone();
            sp.nu = nu;
            sp.validate()?;
            Ok((nu, estimate_frame_bounds(&sp, family, s)?))
        })
        .collect()
}

/// Deterministic 64-bit linear congruential generator
/// (`x <- 6364136223846793005 x + 1442695040888963407 mod 2^64`), mapped to
/// doubles through the top 53 bits. Used for reproducible signal families.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg {
            state: seed
                .wrapping_mul(2862933555777941757)
                .wrapping_add(3037000493),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// The default bound-estimation family: 5 dilations x 2 modulations x
/// 2 translations of a Gaussian, with small seeded jitter.
pub fn gaussian_family(seed: u64) -> Vec<Signal> {
    let mut lcg = Lcg::new(seed);
    let dilations = [0.5, 0.75, 1.0, 1.5, 2.0];
    let modulations = [0.0, 3.0];
    let translations = [0.0, 0.25];
    let mut out = Vec::with_capacity(20);
    for a0 in dilations {
        for w0 in modulations {
            for t0 in translations {
                let a = a0 * (1.0 + 0.05 * (lcg.next_f64() - 0.5));
                let om = w0 + 0.25 * (lcg.next_f64() - 0.5);
                let tt = t0 + 0.1 * (lcg.next_f64() - 0.5);
                out.push(Signal::gaussian(a, tt, om));
            }
        }
    }
    out
}

/// Seeded Gaussian mixtures (two or three components each).
pub fn gaussian_mixtures(seed: u64, count: usize) -> Vec<Signal> {
    let mut lcg = Lcg::new(seed ^ 0x9e3779b97f4a7c15);
    (0..count)
        .map(|_| {
            let parts = 2 + (lcg.next_u64() % 2) as usize;
            Signal::Mixture(
                (0..parts)
                    .map(|_| {
                        let coeff = Complex64::new(lcg.range(-1.0, 1.0), lcg.range(-1.0, 1.0));
                        let a = lcg.range(0.6, 1.6);
                        let t0 = lcg.range(-0.5, 0.5);
                        let w0 = lcg.range(-6.0, 6.0);
                        (coeff, Signal::gaussian(a, t0, w0))
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Centered dilation family `a in {1/4, 1/2, 1, 2, 4}`.
pub fn dilation_family() -> Vec<Signal> {
    [0.25, 0.5, 1.0, 2.0, 4.0]
        .into_iter()
        .map(|a| Signal::gaussian(a, 0.0, 0.0))
        .collect()
}

/// Ten signals concentrated strictly inside dyadic bands (j_max >= 4):
/// mid-band Gaussians narrow enough to be negligible at every band endpoint,
/// plus compactly supported bumps. On indicator-symbol frames these carry no
/// Gibbs tail in the translate series, so truncated expansions converge to
/// quadrature accuracy.
pub fn narrowband_family() -> Vec<Signal> {
    vec![
        Signal::gaussian(4.0, 0.0, 1.0),
        Signal::gaussian(4.0, 0.2, 2.5),
        Signal::gaussian(4.0, -0.2, -2.5),
        Signal::gaussian(2.0, 0.0, 5.5),
        Signal::gaussian(1.5, 0.1, 11.5),
        Signal::gaussian(1.0, 0.0, 23.5),
        Signal::Bump {
            center: 2.5,
            halfwidth: 0.8,
            amplitude: 1.0,
        },
        Signal::Bump {
            center: -5.5,
            halfwidth: 1.5,
            amplitude: 0.7,
        },
        Signal::Bump {
            center: 0.0,
            halfwidth: 0.4,
            amplitude: 1.3,
        },
        Signal::Bump {
            center: 11.5,
            halfwidth: 3.0,
            amplitude: 1.0,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::make_dyadic_1d;
    use crate::window::Window;

    fn base_grid() -> GridSpec {
        GridSpec::new(24.0, 1 << 12)
    }

    #[test]
    fn gaussian_l2_norm_closed_form() {
        // ||e^{-pi t^2}||^2 = 1/sqrt(2)
        let f = Signal::gaussian(1.0, 0.0, 0.0);
        let v = sobolev_norm_sq(&f, 0.0, &base_grid()).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-10, "{v}");
        assert_eq!(
            sobolev_norm_sq(&Signal::Zero, 1.0, &base_grid()).unwrap(),
            0.0
        );
    }

    #[test]
    fn norm_monotone_in_s() {
        let f = Signal::gaussian(0.8, 0.3, 2.0);
        let mut prev = 0.0;
        for s in [0.0, 0.5, 1.0, 2.0] {
            let v = sobolev_norm_sq(&f, s, &base_grid()).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn seminorm_properties() {
        let catalog = [
            Signal::gaussian(1.0, 0.1, 1.5),
            Signal::gaussian(0.5, 0.0, 4.0),
            Signal::Bump {
                center: 3.0,
                halfwidth: 1.0,
                amplitude: 1.0,
            },
            Signal::Mixture(vec![
                (Complex64::new(1.0, 0.2), Signal::gaussian(2.0, -0.3, 0.5)),
                (Complex64::new(-0.5, 0.0), Signal::gaussian(1.0, 0.0, 2.0)),
            ]),
        ];
        let g = base_grid();
        for f in &catalog {
            // s = 0: identical weights
            let a = sobolev_norm_sq(f, 0.0, &g).unwrap();
            let b = sobolev_seminorm_sq(f, 0.0, &g).unwrap();
            assert!((a - b).abs() <= 1e-12 * a);
            // seminorm <= norm, and the sandwich bound
            for s in [0.5, 1.0, 2.0] {
                let n = sobolev_norm_sq(f, s, &g).unwrap();
                let sm = sobolev_seminorm_sq(f, s, &g).unwrap();
                assert!(sm <= n * (1.0 + 1e-12));
                let l2 = sobolev_norm_sq(f, 0.0, &g).unwrap();
                assert!(n <= f64::exp2(2.0 * s) * (l2 + sm) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn seminorm_dilation_homogeneity() {
        let g = base_grid();
        let s = 0.75;
        let base = Signal::gaussian(1.0, 0.0, 0.0);
        let v1 = sobolev_seminorm_sq(&base, s, &g).unwrap();
        for a in [0.5, 2.0, 4.0] {
            let fa = Signal::gaussian(a, 0.0, 0.0);
            let va = sobolev_seminorm_sq(&fa, s, &g).unwrap();
            let expect = v1 * a.powf(-2.0 * s);
            assert!(
                (va - expect).abs() <= 1e-8 * expect,
                "a={a}: {va} vs {expect}"
            );
        }
    }

    #[test]
    fn parseval_for_orthonormal_frame() {
        let mut spec = FrameSpec::new(make_dyadic_1d(4), Window::SincPow(1), 1.0).unwrap();
        spec.lambda_max = 64.0;
        // narrow-band: f_hat negligible at every band boundary, so the
        // truncated expansion carries no Gibbs tail in lambda
        let f = Signal::gaussian(4.0, 0.0, 2.5);
        let table = analyze(&spec, &f).unwrap();
        let energy = coefficient_energy(&table, 0.0).unwrap();
        let l2 = sobolev_norm_sq(&f, 0.0, &spec.grid).unwrap();
        assert!((energy - l2).abs() <= 1e-6 * l2, "{energy} vs {l2}");
    }

    #[test]
    fn energy_mode_guards() {
        let mut spec = FrameSpec::new(make_dyadic_1d(2), Window::Gaussian, 0.5).unwrap();
        let f = Signal::gaussian(1.0, 0.0, 1.0);
        let norm_table = analyze(&spec, &f).unwrap();
        assert!(seminorm_energy(&norm_table, 0.5).is_err());
        spec.seminorm_mode = true;
        spec.j_neg = 3;
        let semi_table = analyze(&spec, &f).unwrap();
        assert!(coefficient_energy(&semi_table, 0.5).is_err());
        assert!(seminorm_energy(&semi_table, 0.5).unwrap() > 0.0);
        // at s = 0 the seminorm energy is the plain unweighted sum
        let plain: f64 = semi_table.entries.iter().map(|(_, c)| c.norm_sqr()).sum();
        let e0 = seminorm_energy(&semi_table, 0.0).unwrap();
        assert!((e0 - plain).abs() <= 1e-14 * plain.max(1.0));
        // diagnostics are finite fractions
        assert!((0.0..=1.0).contains(&semi_table.lambda_tail_fraction()));
        assert!((0.0..=1.0).contains(&semi_table.deepest_scale_fraction(0.5)));
    }

    #[test]
    fn bound_estimates_and_nu_monotonicity() {
        let mut spec = FrameSpec::new(make_dyadic_1d(2), Window::Gaussian, 1.0).unwrap();
        spec.lambda_max = 12.0;
        let family: Vec<Signal> = gaussian_family(7).into_iter().take(6).collect();
        let scans = scan_nu(&spec, &family, 0.0, &[1.0, 0.5, 0.25]).unwrap();
        for (_, est) in &scans {
            assert!(est.a_hat > 0.0);
            assert!(est.a_hat <= est.b_hat);
        }
        // nested lattices: halving nu never decreases any ratio
        for w in scans.windows(2) {
            for (r0, r1) in w[0].1.ratios.iter().zip(&w[1].1.ratios) {
                assert!(
                    r1.ratio >= r0.ratio - 1e-12,
                    "{}: {} -> {}",
                    r0.signal_id,
                    r0.ratio,
                    r1.ratio
                );
            }
            assert!(w[1].1.a_hat >= w[0].1.a_hat - 1e-12);
        }
    }

    #[test]
    fn zero_norm_member_rejected() {
        let spec = FrameSpec::new(make_dyadic_1d(2), Window::Gaussian, 0.5).unwrap();
        let family = vec![Signal::Zero];
        assert!(matches!(
            estimate_frame_bounds(&spec, &family, 0.0),
            Err(Error::ZeroNormSignal(_))
        ));
    }

    #[test]
    fn lcg_is_deterministic() {
        let a: Vec<u64> = {
            let mut l = Lcg::new(42);
            (0..5).map(|_| l.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut l = Lcg::new(42);
            (0..5).map(|_| l.next_u64()).collect()
        };
        assert_eq!(a, b);
        assert_eq!(gaussian_family(42).len(), 20);
        assert_eq!(dilation_family().len(), 5);
        let m = gaussian_mixtures(1, 5);
        assert_eq!(m.len(), 5);
    }
}
