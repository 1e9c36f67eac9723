//! Run registered scenarios through the library instead of the binary.
//!
//! cargo run --release --example scenarios

use harmconv::geometry::DiskGrid;
use harmconv::harness::{registry, run_scenario, Overrides};

fn main() -> Result<(), harmconv::harness::HarnessError> {
    for s in registry() {
        println!("{:<12} {}", s.id, s.summary);
    }
    let ov = Overrides {
        grid: Some(DiskGrid::geometric(16, 0.05, 0.99, 128)?),
        ..Overrides::default()
    };
    for id in ["th4.3-case1", "th4.3-case2", "th4.2"] {
        let res = run_scenario(id, &ov)?;
        print!("{}", res.summary());
    }
    Ok(())
}
