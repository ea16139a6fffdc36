//! Build the two admissible partitions, validate them on a sample grid, and
//! show what a covering failure looks like.
//!
//! ```text
//! cargo run --release --example validate_partitions
//! ```

use stframe::partition::{
    make_dyadic_1d, make_polar_2d, validate_admissible, Direction, ValidationConfig,
};

fn main() {
    let config = ValidationConfig::default();

    let dyadic = make_dyadic_1d(6);
    let report = validate_admissible(&dyadic, &config);
    println!(
        "dyadic 1D, j_max = 6: pass = {}, overlap N = {}, |omega|/2^j in [{}, {}]",
        report.pass, report.max_overlap, report.c_inf, report.c_sup
    );
    println!(
        "  bands: {}, ceiling: {}",
        dyadic.bands.len(),
        dyadic.ceiling()
    );

    let polar = make_polar_2d(4);
    let report = validate_admissible(
        &polar,
        &ValidationConfig {
            spacing: 1.0 / 32.0,
        },
    );
    println!(
        "polar 2D, j_max = 4: pass = {}, overlap N = {}, rho/2^j in [{}, {}]",
        report.pass, report.max_overlap, report.c_inf, report.c_sup
    );

    // deliberately remove one band: validation reports the hole, it does
    // not panic
    let broken = make_dyadic_1d(4).with_band_removed(3, Direction::Pos);
    let report = validate_admissible(&broken, &config);
    println!(
        "dyadic 1D without I_(3,+): pass = {}, first holes: {:?} ...",
        report.pass,
        &report.holes[..3.min(report.holes.len())]
    );

    let json = serde_json::to_string_pretty(&report).unwrap();
    let out = std::path::Path::new("target/example-out");
    std::fs::create_dir_all(out).unwrap();
    std::fs::write(out.join("partition_report.json"), json).unwrap();
    println!("full report -> target/example-out/partition_report.json");
}
