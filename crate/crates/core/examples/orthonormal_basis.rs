//! The sinc window at nu = 1 with exact normalization yields an orthonormal
//! basis: the Gram matrix of the truncated system is the identity, and
//! analyzing one element recovers a single unit coefficient.
//!
//! ```text
//! cargo run --release --example orthonormal_basis
//! ```

use num_complex::Complex64;
use stframe::frame::{analyze, gram, FrameIndex, FrameSpec};
use stframe::partition::{make_dyadic_1d, Direction};
use stframe::sobolev::Signal;
use stframe::window::Window;

fn main() {
    let mut spec = FrameSpec::new(make_dyadic_1d(4), Window::SincPow(1), 1.0).unwrap();
    spec.lambda_max = 8.0;
    let indices = spec.indices();
    println!(
        "sinc frame, nu = 1, exact normalization: {} elements (j <= 4, |lambda| <= 8)",
        indices.len()
    );

    let g = gram(&spec, &indices).unwrap();
    let n = indices.len();
    let mut max_offdiag = 0.0f64;
    let mut max_diag_err = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let v = g[a * n + b];
            if a == b {
                max_diag_err = max_diag_err.max((v - Complex64::new(1.0, 0.0)).norm());
            } else {
                max_offdiag = max_offdiag.max(v.norm());
            }
        }
    }
    println!("max |G_aa - 1| = {max_diag_err:.3e}");
    println!("max |G_ab|, a != b = {max_offdiag:.3e}");

    // expanding one basis element gives back a single unit coefficient
    let target = FrameIndex::band(2, Direction::Pos, 3);
    let signal = Signal::FrameElement {
        spec: Box::new(spec.clone()),
        idx: target,
    };
    let table = analyze(&spec, &signal).unwrap();
    let diag = table.get(&target).unwrap();
    let worst_rest = table
        .entries
        .iter()
        .filter(|(i, _)| *i != target)
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max);
    println!("<phi, phi> coefficient at the element itself: {diag}");
    println!("largest coefficient elsewhere: {worst_rest:.3e}");
}
