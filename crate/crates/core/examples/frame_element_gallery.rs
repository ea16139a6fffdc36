//! Sample frame elements in time and frequency, in 1D and 2D, and dump them
//! as CSV for plotting. The 2D element uses the polar partition with a
//! sinc^3 x sinc^3 tensor window.
//!
//! ```text
//! cargo run --release --example frame_element_gallery
//! ```

use stframe::frame::{
    element_freq_2d, element_time_2d, frame_element_freq, frame_element_time, FrameIndex, FrameSpec,
};
use stframe::partition::{lattice_points, make_dyadic_1d, make_polar_2d, Direction};
use stframe::window::{BandSymbol, Window};

fn main() {
    let out = std::path::Path::new("target/example-out");
    std::fs::create_dir_all(out).unwrap();

    // 1D: phi_{4,+,0} for two windows, time and frequency
    let mut spec = FrameSpec::new(make_dyadic_1d(4), Window::SincPow(3), 1.0).unwrap();
    spec.lambda_max = 4.0;
    let idx = FrameIndex::band(4, Direction::Pos, 0);
    let mut csv = String::from("t,re_sinc3,re_gauss,omega,abs_freq_sinc3,abs_freq_gauss\n");
    let n = 1024;
    for i in 0..=n {
        let t = -2.0 + 4.0 * i as f64 / n as f64;
        let omega = 40.0 * i as f64 / n as f64;
        let v3 = frame_element_time(&spec, &idx, t).unwrap();
        let f3 = frame_element_freq(&spec, &idx, omega).unwrap();
        spec.window = Window::Gaussian;
        let vg = frame_element_time(&spec, &idx, t).unwrap();
        let fg = frame_element_freq(&spec, &idx, omega).unwrap();
        spec.window = Window::SincPow(3);
        csv.push_str(&format!(
            "{t:.5},{:.8e},{:.8e},{omega:.5},{:.8e},{:.8e}\n",
            v3.re,
            vg.re,
            f3.norm(),
            fg.norm()
        ));
    }
    std::fs::write(out.join("element_1d.csv"), csv).unwrap();
    println!("1D element phi_(4,+,0) -> target/example-out/element_1d.csv");

    // 2D: scale j = 4, sector k = 1, tensor sinc^3 window
    let window = Window::Tensor(Box::new(Window::SincPow(3)), Box::new(Window::SincPow(3)));
    let partition = make_polar_2d(4);
    let band = partition.band(4, Direction::Sector(1)).unwrap();
    let lattice = lattice_points(band).unwrap();
    let norm = 1.0 / (lattice.points.len() as f64).sqrt();
    let symbol = BandSymbol::new(window.clone(), band, &lattice).unwrap();
    println!(
        "2D element: band (4, sector 1), {} lattice points",
        lattice.points.len()
    );

    let mut csv = String::from("x,y,re_time,abs_freq\n");
    let m = 96;
    for iy in 0..=m {
        for ix in 0..=m {
            let x = -1.5 + 3.0 * ix as f64 / m as f64;
            let y = -1.5 + 3.0 * iy as f64 / m as f64;
            let vt = element_time_2d(&window, &lattice.points, norm, 4, [0.0, 0.0], [x, y]);
            // frequency plane sampled over the first quadrant
            let (wx, wy) = (16.0 * (ix as f64 / m as f64), 16.0 * (iy as f64 / m as f64));
            let vf = element_freq_2d(&window, &symbol, norm, 4, [0.0, 0.0], [wx, wy]);
            csv.push_str(&format!("{x:.4},{y:.4},{:.6e},{:.6e}\n", vt.re, vf.norm()));
        }
    }
    std::fs::write(out.join("element_2d.csv"), csv).unwrap();
    println!("2D element grid -> target/example-out/element_2d.csv");
}
