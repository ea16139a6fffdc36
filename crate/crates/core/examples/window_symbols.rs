//! Sample the band symbols `Phi_{j,k} = sum_eta phi_hat(. - eta)` of the
//! window catalog across one band and dump them as CSV (columns
//! `omega,phi_value` per window).
//!
//! ```text
//! cargo run --release --example window_symbols
//! ```

use stframe::partition::{contract_band, lattice_points, make_dyadic_1d, Direction, Point};
use stframe::window::{BandSymbol, Window};

fn main() {
    let partition = make_dyadic_1d(6);
    let band = partition.band(3, Direction::Pos).unwrap();
    let lattice = lattice_points(band).unwrap();
    println!("band I_(3,+), lattice size {}", lattice.points.len());

    let windows = [
        Window::SincPow(1),
        Window::SincPow(3),
        Window::Gaussian,
        Window::Boxcar,
        Window::BsplineFreq(2),
    ];
    let symbols: Vec<BandSymbol> = windows
        .iter()
        .map(|w| BandSymbol::new(w.clone(), band, &lattice).unwrap())
        .collect();

    let out = std::path::Path::new("target/example-out");
    std::fs::create_dir_all(out).unwrap();
    let mut csv = String::from("omega");
    for w in &windows {
        csv.push_str(&format!(",{w}"));
    }
    csv.push('\n');
    let n = 1200;
    for i in 0..=n {
        let omega = 2.0 + 16.0 * i as f64 / n as f64;
        csv.push_str(&format!("{omega:.6}"));
        for sym in &symbols {
            csv.push_str(&format!(",{:.12e}", sym.eval(Point::D1(omega))));
        }
        csv.push('\n');
    }
    std::fs::write(out.join("band_symbols.csv"), csv).unwrap();
    println!("samples -> target/example-out/band_symbols.csv");

    // single-symbol dump in the omega,phi_value format
    let pts: Vec<Point> = (0..=2000)
        .map(|i| Point::D1(2.0 + 16.0 * i as f64 / 2000.0))
        .collect();
    std::fs::write(out.join("boxcar_symbol.csv"), symbols[3].sample_csv(&pts)).unwrap();
    println!("boxcar symbol -> target/example-out/boxcar_symbol.csv");

    // the sinc-window symbol is exactly the band indicator
    let sinc = &symbols[0];
    println!(
        "sinc symbol at 7.5 / 10.0 / 15.5: {} / {} / {}",
        sinc.eval(Point::D1(7.5)),
        sinc.eval(Point::D1(10.0)),
        sinc.eval(Point::D1(15.5)),
    );

    // contracted symbols evaluate through Phi_{-j,k}(w) = Phi_{j,k}(4^j w)
    let contracted = contract_band(band, 3).unwrap();
    let neg = BandSymbol::new(Window::Gaussian, &contracted, &lattice).unwrap();
    let pos = BandSymbol::new(Window::Gaussian, band, &lattice).unwrap();
    let w = 0.17;
    println!(
        "contraction identity at {w}: Phi_(-3,+)({w}) = {}, Phi_(3,+)({}) = {}",
        neg.eval(Point::D1(w)),
        64.0 * w,
        pos.eval(Point::D1(64.0 * w))
    );
}
