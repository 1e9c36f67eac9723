//! Rotations `f^μ(z) = conj(μ) h(μz) + conj(μ g(μz))` and Hadamard
//! convolutions, with the identities that tie them together.
//!
//! cargo run --example rotation_and_convolution

use harmconv::canonical::{right_halfplane_f0, slanted_halfplane_canonical};
use harmconv::harmonic::convolution_dilatation_f_a0;
use harmconv::{cis, Complex, SlantParams};

fn main() -> Result<(), harmconv::Error> {
    let order = 300;
    let f1 = slanted_halfplane_canonical(&SlantParams::new(Complex::new(0.2, 0.3), 0.4)?, order);
    let f2 = slanted_halfplane_canonical(&SlantParams::new(Complex::new(-0.1, 0.1), 1.1)?, order);
    let (m1, m2) = (cis(0.7), cis(-1.9));

    let lhs = f1.rotate(m1)?.convolve(&f2.rotate(m2)?);
    let rhs = f1.convolve(&f2).rotate(m1 * m2)?;
    println!(
        "rotations commute with convolution: max coefficient gap {:.2e}",
        lhs.h().max_abs_diff(rhs.h()).max(lhs.g().max_abs_diff(rhs.g()))
    );

    let z = Complex::new(0.4, -0.3);
    let w = f1.rotate(m1)?.dilatation_at(z)?;
    println!(
        "dilatation of f^mu at z: {w:.12}\nmu^2 * dilatation of f at mu z: {:.12}",
        m1 * m1 * f1.dilatation_at(m1 * z)?
    );

    // f0 * f0 has dilatation z(1 + 2z)/(2 + z)
    let f0 = right_halfplane_f0(order);
    let w = convolution_dilatation_f_a0(0.0, &f0)?;
    for r in [0.2, 0.5, 0.8] {
        let z = Complex::new(r, r / 2.0);
        println!(
            "z = {z:.2}: series {:.10}, closed form {:.10}",
            w.evaluate(z)?,
            z * (1.0 + 2.0 * z) / (2.0 + z)
        );
    }
    Ok(())
}
