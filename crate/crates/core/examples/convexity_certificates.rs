//! Grid certificates for convexity in a direction: the shear
//! `h − e^{2iα}g` is tested against the Royster–Ziegler inequality.
//!
//! cargo run --release --example convexity_certificates

use harmconv::canonical::{right_halfplane_f0, strip_primitive};
use harmconv::geometry::{
    direction_convexity, rz_certificate, rz_search, DiskGrid, SearchOptions,
};
use harmconv::{Complex, Series, StripParams};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

fn main() -> Result<(), harmconv::Error> {
    let grid = DiskGrid::default();
    let f0 = right_halfplane_f0(grid.recommended_order());
    for alpha in [0.0, FRAC_PI_4, FRAC_PI_2] {
        let cert = direction_convexity(&f0, alpha, &grid, &SearchOptions::default())?;
        println!(
            "f0, direction {alpha:.4}: min {:.3e} at mu = {:.4}, nu = {:.4}, passes: {}",
            cert.min_real_part,
            cert.mu,
            cert.nu,
            cert.passes()
        );
    }

    // arctan z is the strip primitive for b = 0, β = π/2
    let p = StripParams::new(Complex::new(0.0, 0.0), FRAC_PI_2)?;
    let arctan = strip_primitive(&p, grid.recommended_order());
    let cert = rz_certificate(&arctan, 0.0, FRAC_PI_2, &grid)?;
    println!("arctan at (0, pi/2): min {:.6}", cert.min_real_part);

    let square = Series::monomial(Complex::new(1.0, 0.0), 2, 4);
    let best = rz_search(&square, &grid, &SearchOptions::default())?;
    println!("z^2, best pair found: min {:.4}, no certificate", best.min_real_part);
    Ok(())
}
