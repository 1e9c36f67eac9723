use clap::{Args, Parser, Subcommand};
use harmconv::geometry::{DiskGrid, SearchOptions, DEFAULT_ANGLES, DEFAULT_MAX_RADIUS};
use harmconv::harness::render::{sample_curves, to_csv, to_svg, RenderStyle};
use harmconv::harness::{
    registry, run_checks, run_scenario, write_atomic, CheckRequest, HarnessError, MapSpec,
    Overrides, ScenarioResult,
};
use harmconv::series::order_for_radius;
use harmconv::Complex;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Harmonic mappings, their convolutions, and grid convexity certificates.
#[derive(Parser)]
#[command(name = "harmconv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a map from a JSON spec and print its coefficients as a spec.
    Construct {
        spec: PathBuf,
        /// Truncation order for specs that do not set one.
        #[arg(long, default_value_t = 128)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run univalence, convexity and membership checks on a map.
    Check {
        spec: PathBuf,
        /// `univalence`, `convex_direction:<α>`,
        /// `membership:halfplane:<re>,<im>,<γ>` or `membership:strip:<re>,<im>,<β>`.
        #[arg(long = "check", required = true)]
        checks: Vec<String>,
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named scenario.
    Reproduce {
        #[arg(required_unless_present = "list")]
        scenario: Option<String>,
        /// List scenario ids and their overrides.
        #[arg(long)]
        list: bool,
        /// Complex parameter as `re,im` (or a single real).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw images of circles and rays as SVG, with a CSV of the samples.
    Render {
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// CSV path; defaults to the SVG path with a `.csv` extension.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        rings: usize,
        #[arg(long, default_value_t = 24)]
        rays: usize,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 0.95)]
        r_max: f64,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Comma-separated increasing radii, or a single integer `N` for `N`
    /// geometric rings up to 0.995.
    #[arg(long)]
    grid_radii: Option<String>,
    #[arg(long)]
    grid_angles: Option<usize>,
}

impl GridArgs {
    fn grid(&self) -> Result<Option<DiskGrid>, HarnessError> {
        if self.grid_radii.is_none() && self.grid_angles.is_none() {
            return Ok(None);
        }
        let angles = self.grid_angles.unwrap_or(DEFAULT_ANGLES);
        let bad = |e: harmconv::Error| HarnessError::Schema(format!("grid: {e}"));
        let grid = match &self.grid_radii {
            None => {
                let d = DiskGrid::default();
                DiskGrid::new(d.radii().to_vec(), angles).map_err(bad)?
            }
            Some(text) => {
                let text = text.trim();
                if let Ok(levels) = text.parse::<usize>() {
                    DiskGrid::geometric(levels, 0.05, DEFAULT_MAX_RADIUS, angles).map_err(bad)?
                } else {
                    let radii = text
                        .split(',')
                        .map(|t| t.trim().parse::<f64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| HarnessError::Schema(format!("grid-radii: cannot parse `{text}`")))?;
                    DiskGrid::new(radii, angles).map_err(bad)?
                }
            }
        };
        Ok(Some(grid))
    }
}

fn parse_complex(text: &str) -> Result<Complex, HarnessError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let nums = parts
        .iter()
        .map(|t| t.parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| HarnessError::Schema(format!("a: cannot parse `{text}`")))?;
    let z = match nums[..] {
        [re] => Complex::new(re, 0.0),
        [re, im] => Complex::new(re, im),
        _ => return Err(HarnessError::Schema(format!("a: expected `re,im`, got `{text}`"))),
    };
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 {
        return Err(HarnessError::Schema(format!("a: {z} must lie in the unit disk")));
    }
    Ok(z)
}

fn read_spec(path: &Path) -> Result<MapSpec, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    MapSpec::from_json(&text)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), HarnessError> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_result(res: &ScenarioResult, out: Option<&Path>) -> Result<u8, HarnessError> {
    eprint!("{}", res.summary());
    let json = serde_json::to_string_pretty(res).expect("results serialize");
    emit(&json, out)?;
    Ok(if res.verdict.is_pass() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, HarnessError> {
    match cli.command {
        Command::Construct { spec, order, out } => {
            let f = read_spec(&spec)?.build(order)?;
            emit(&MapSpec::from_map(&f).to_json_pretty(), out.as_deref())?;
            Ok(0)
        }
        Command::Check {
            spec,
            checks,
            order,
            grid,
            out,
        } => {
            let requests = checks
                .iter()
                .map(|c| c.parse::<CheckRequest>())
                .collect::<Result<Vec<_>, _>>()?;
            let ms = read_spec(&spec)?;
            let grid = grid.grid()?.unwrap_or_default();
            let f = ms.build(order.unwrap_or_else(|| grid.recommended_order()))?;
            let inputs = serde_json::json!({ "spec": ms, "checks": checks, "grid": grid });
            let res = run_checks(&f, &requests, &grid, &SearchOptions::default(), inputs)?;
            emit_result(&res, out.as_deref())
        }
        Command::Reproduce {
            scenario,
            list,
            a,
            gamma,
            beta,
            theta,
            n,
            order,
            seed,
            grid,
            out,
        } => {
            if list {
                for s in registry() {
                    println!("{:<12} {}\n{:<12} overrides: {}", s.id, s.summary, "", s.overrides);
                }
                return Ok(0);
            }
            let ov = Overrides {
                a: a.as_deref().map(parse_complex).transpose()?,
                gamma,
                beta,
                theta,
                n,
                order,
                grid: grid.grid()?,
                seed,
            };
            let id = scenario.expect("clap requires a scenario without --list");
            let res = run_scenario(&id, &ov)?;
            emit_result(&res, out.as_deref())
        }
        Command::Render {
            spec,
            out,
            csv,
            rings,
            rays,
            samples,
            r_max,
            order,
        } => {
            if !(r_max > 0.0 && r_max < 1.0) {
                return Err(HarnessError::Schema(format!("r-max: {r_max} outside (0, 1)")));
            }
            let f = read_spec(&spec)?.build(order.unwrap_or_else(|| order_for_radius(r_max, 1e-10)))?;
            let style = RenderStyle {
                rings,
                rays,
                samples,
                r_max,
            };
            let curves = sample_curves(&f, &style);
            write_atomic(&out, to_svg(&curves).as_bytes())?;
            let csv = csv.unwrap_or_else(|| out.with_extension("csv"));
            write_atomic(&csv, to_csv(&curves).as_bytes())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(threads) = std::env::var("HARMCONV_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
