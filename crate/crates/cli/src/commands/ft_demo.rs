//! `splinedft ft-demo`: transform-accuracy curves for the damped
//! oscillator, one CSV pair per degree.

use std::path::PathBuf;

use splinedft::bench::{ft_demo_curves, DemoBc, DEMO_N};

use crate::errors::{write_err, CliError};
use crate::io::parse_range_spec;

#[derive(clap::Args, Debug)]
pub struct FtDemoArgs {
    /// Spline degrees (odd; the demo grid has an even interval count).
    #[arg(long, value_delimiter = ',', required = true)]
    theta: Vec<usize>,

    /// Boundary treatment: zero, method1 or exact.
    #[arg(long, default_value = "zero")]
    bc: String,

    /// Frequency grid, start:stop:step in rad/s or a comma list.
    #[arg(long, default_value = "0:100:0.5")]
    omega_grid: String,

    /// Interval count; the demonstration grid is fixed.
    #[arg(long, default_value_t = DEMO_N)]
    n: usize,

    /// Output directory for the CSV files.
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: &FtDemoArgs) -> Result<(), CliError> {
    if args.n != DEMO_N {
        return Err(CliError::Usage(format!(
            "the demonstration samples t in [0, 81.92] on exactly {DEMO_N} intervals; --n {} is not available",
            args.n
        )));
    }
    let bc = DemoBc::parse(&args.bc)?;
    let ctx = splinedft::numerics::PrecisionContext::binary64();
    let omegas: Vec<f64> = if args.omega_grid.contains(':') {
        parse_range_spec(&args.omega_grid, &ctx)?
    } else {
        args.omega_grid
            .split(',')
            .map(|s| crate::io::parse_scalar::<f64>(s, "omega", &ctx))
            .collect::<Result<Vec<_>, _>>()?
    };
    if omegas.is_empty() {
        return Err(CliError::Usage("empty omega grid".into()));
    }
    std::fs::create_dir_all(&args.out).map_err(|e| write_err(&args.out, e))?;

    for &theta in &args.theta {
        let curves = ft_demo_curves(theta, bc, &omegas)?;
        let ft_path = args
            .out
            .join(format!("ft_error_theta{theta}_{}.csv", bc.label()));
        std::fs::write(&ft_path, curves.ft_csv()).map_err(|e| write_err(&ft_path, e))?;
        let time_path = args
            .out
            .join(format!("time_error_theta{theta}_{}.csv", bc.label()));
        std::fs::write(&time_path, curves.time_csv()).map_err(|e| write_err(&time_path, e))?;
        log::info!(
            "theta {theta} {}: max transform error {:.3e}, max time error {:.3e}",
            bc.label(),
            curves.max_ft_error(),
            curves.max_time_error()
        );
    }

    let meta = serde_json::json!({
        "thetas": args.theta,
        "bc": bc.label(),
        "omega_grid": args.omega_grid,
        "n": DEMO_N,
    });
    let meta_path = args.out.join("meta.json");
    std::fs::write(
        &meta_path,
        serde_json::to_string_pretty(&meta).expect("static shape"),
    )
    .map_err(|e| write_err(&meta_path, e))?;
    Ok(())
}
