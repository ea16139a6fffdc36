//! The seminorm frame: contracted bands replace the central translates, so
//! the weighted energies track |f|_s^2 instead of ||f||_s^2. The boxcar
//! window (whose symbols vanish linearly at the origin) works for s < 1;
//! the ratios of a dilation family stay inside one bounded envelope.
//!
//! ```text
//! cargo run --release --example seminorm_frame
//! ```

use stframe::frame::FrameSpec;
use stframe::partition::{contract_band, make_dyadic_1d, BandGeometry, Direction};
use stframe::sobolev::{dilation_family, estimate_frame_bounds};
use stframe::window::Window;

fn main() {
    // contracted bands tile the central interval from the inside out
    let partition = make_dyadic_1d(3);
    println!("contractions of I_(j,+) covering the central interval:");
    for j in 1..=4u32 {
        let band = partition.band_for(j, Direction::Pos);
        let c = contract_band(&band, j).unwrap();
        if let BandGeometry::Interval(iv) = c.geometry {
            println!("  I_({},+) = [{:.6}, {:.6})", -(j as i32), iv.lo, iv.hi);
        }
    }

    let mut spec = FrameSpec::new(make_dyadic_1d(3), Window::Boxcar, 0.25).unwrap();
    spec.seminorm_mode = true;
    spec.j_neg = 6;
    spec.lambda_max = 16.0;
    spec.s = 0.5;
    println!(
        "\nseminorm frame: scales j in [-{}, {}], no central tag, {} indices",
        spec.j_neg,
        spec.partition.j_max,
        spec.indices().len()
    );

    let est = estimate_frame_bounds(&spec, &dilation_family(), 0.5).unwrap();
    println!("\nboxcar window, s = 1/2, dilation family a in {{1/4..4}}:");
    for r in &est.ratios {
        println!("  {:<44} energy/|f|_s^2 = {:.6}", r.signal_id, r.ratio);
    }
    println!(
        "envelope [A_hat, B_hat] = [{:.6}, {:.6}]",
        est.a_hat, est.b_hat
    );
}
