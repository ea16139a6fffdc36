//! Run the three admissibility checks across the window catalog.
//!
//! The table prints one row per (window, s, mode); the norm check demands a
//! tail exponent above s + 1/2 and a positive band infimum, the seminorm
//! check additionally an |omega|^s factor at the origin, and the sufficient
//! check works directly on phi_hat.
//!
//! ```text
//! cargo run --release --example admissibility_checks
//! ```

use stframe::admissibility::{
    check_norm_admissibility, check_seminorm_admissibility, check_sufficient, CheckConfig,
};
use stframe::partition::make_dyadic_1d;
use stframe::window::Window;

fn main() {
    let partition = make_dyadic_1d(6);
    let config = CheckConfig::default();
    let windows = [
        Window::Gaussian,
        Window::SincPow(1),
        Window::SincPow(4),
        Window::Boxcar,
        Window::BsplineFreq(2),
    ];

    println!(
        "{:<16} {:>5} {:<11} {:>6} {:>12} {:>10}",
        "window", "s", "mode", "pass", "tail exp", "a_hat"
    );
    for window in &windows {
        for s in [0.0, 0.5, 1.0, 2.0] {
            let norm = check_norm_admissibility(window, &partition, s, &config).unwrap();
            let semi = check_seminorm_admissibility(window, &partition, s, &config).unwrap();
            let suff = check_sufficient(window, s, &config).unwrap();
            for rep in [&norm, &semi, &suff] {
                let tail = rep
                    .bands
                    .iter()
                    .map(|b| b.tail_exponent)
                    .fold(f64::INFINITY, f64::min)
                    .min(rep.central_exponent.unwrap_or(f64::INFINITY));
                println!(
                    "{:<16} {:>5} {:<11} {:>6} {:>12.3} {:>10.4}",
                    window.to_string(),
                    s,
                    format!("{:?}", rep.mode).to_lowercase(),
                    rep.pass,
                    tail,
                    rep.a_hat
                );
            }
        }
        println!();
    }
    println!("note: tail exponent 1e6 marks compactly supported or superpolynomially");
    println!("decaying symbols, for which the decay condition is vacuous.");
}
