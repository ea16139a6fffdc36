//! Analyze a modulated Gaussian against a gaussian-window frame and relate
//! the weighted coefficient energy to the reference Sobolev norm.
//!
//! ```text
//! cargo run --release --example analyze_signal
//! ```

use stframe::frame::{analyze, naive_coefficient, FrameSpec, Tag};
use stframe::partition::make_dyadic_1d;
use stframe::sobolev::{coefficient_energy, sobolev_norm_sq, Signal};
use stframe::window::Window;

fn main() {
    let mut spec = FrameSpec::new(make_dyadic_1d(3), Window::Gaussian, 0.25).unwrap();
    spec.s = 1.0;
    spec.lambda_max = 12.0;
    let signal = Signal::gaussian(1.0, 0.3, 2.0);

    let table = analyze(&spec, &signal).unwrap();
    println!(
        "signal {}: {} coefficients",
        table.signal_id,
        table.entries.len()
    );

    // per-scale energy profile
    for tag in spec.tags() {
        let e: f64 = table
            .entries
            .iter()
            .filter(|(i, _)| i.tag == tag)
            .map(|(_, c)| c.norm_sqr())
            .sum();
        if let Tag::Band { j, k } = tag {
            println!("  band ({j},{k}): unweighted energy {e:.6e}");
        } else {
            println!("  central:    unweighted energy {e:.6e}");
        }
    }

    for s in [0.0, 1.0, 2.0] {
        let energy = coefficient_energy(&table, s).unwrap();
        let norm = sobolev_norm_sq(&signal, s, &spec.grid).unwrap();
        println!(
            "s = {s}: weighted energy {energy:.8}, ||f||_s^2 = {norm:.8}, ratio {:.4}",
            energy / norm
        );
    }

    // the single-sweep path agrees with per-index quadrature
    let (idx, fast) = &table.entries[table.entries.len() / 2];
    let slow = naive_coefficient(&spec, &signal, idx).unwrap();
    println!("oracle check at {idx}: fast {fast}, naive {slow}");

    let out = std::path::Path::new("target/example-out");
    std::fs::create_dir_all(out).unwrap();
    std::fs::write(out.join("coefficients.csv"), table.to_csv()).unwrap();
    println!("table -> target/example-out/coefficients.csv");
}
