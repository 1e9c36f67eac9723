//! Render images of circles and rays under a map to SVG and CSV files in the
//! system temporary directory.
//!
//! cargo run --example render_images

use harmconv::harness::render::{sample_curves, to_csv, to_svg, RenderStyle};
use harmconv::harness::{write_atomic, MapSpec};

fn main() -> Result<(), harmconv::harness::HarnessError> {
    let spec = MapSpec::from_json(
        r#"{"type": "convolution",
            "left": {"type": "right_halfplane_f0"},
            "right": {"type": "slanted_halfplane_canonical", "a": {"re": 0.2, "im": 0.1}, "gamma": 0.6}}"#,
    )?;
    let f = spec.build(2000)?;
    let curves = sample_curves(&f, &RenderStyle::default());
    let dir = std::env::temp_dir();
    let (svg, csv) = (dir.join("harmconv_example.svg"), dir.join("harmconv_example.csv"));
    write_atomic(&svg, to_svg(&curves).as_bytes())?;
    write_atomic(&csv, to_csv(&curves).as_bytes())?;
    println!("wrote {} and {}", svg.display(), csv.display());
    Ok(())
}
