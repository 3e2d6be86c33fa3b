//! `splinedft bench`: run the error-table harness and write CSV or JSON.

use std::io::Write;
use std::path::PathBuf;

use splinedft::bench::{run_benchmark, BenchConfig, MethodTag, TestFunctionId};
use splinedft::numerics::PrecisionContext;

use crate::errors::{write_err, CliError};
use crate::io::effective_digits;

#[derive(clap::Args, Debug)]
pub struct BenchArgs {
    /// Test function: g1, g2, g3, g4 or ft_demo.
    #[arg(long)]
    function: String,

    /// Spline degrees, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    theta: Vec<usize>,

    /// Interval counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "31,101,501")]
    n: Vec<usize>,

    /// Methods per row: method1, method2, zero, exact, cubic-ns, cubic-nak.
    #[arg(long, value_delimiter = ',', default_value = "method1,method2,cubic-ns,cubic-nak")]
    bc: Vec<String>,

    /// Refinement factor for the error grid.
    #[arg(long, default_value_t = 10)]
    lambda: usize,

    /// Working precision in decimal digits; 15 selects binary64.
    /// The SPLINEDFT_DIGITS environment variable overrides this flag.
    #[arg(long, default_value_t = PrecisionContext::MIN_DIGITS)]
    digits: u32,

    /// Output file (default stdout). A `.meta.json` sidecar records the
    /// run configuration so the data file itself stays reproducible.
    #[arg(long)]
    out: Option<PathBuf>,

    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    let function = TestFunctionId::parse(&args.function)?;
    let methods = args
        .bc
        .iter()
        .map(|s| MethodTag::parse(s).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = BenchConfig {
        function,
        thetas: args.theta.clone(),
        ns: args.n.clone(),
        methods,
        lambda: args.lambda,
        digits: effective_digits(args.digits)?,
    };
    let table = run_benchmark(&cfg)?;
    let rendered = match args.format.as_str() {
        "csv" => table.to_csv_string(),
        "json" => table.to_json_string(),
        other => {
            return Err(CliError::Usage(format!(
                "--format must be csv or json, got {other:?}"
            )))
        }
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, rendered).map_err(|e| write_err(path, e))?;
            let sidecar = path.with_extension("meta.json");
            std::fs::write(&sidecar, table.metadata_json()).map_err(|e| write_err(&sidecar, e))?;
        }
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(|e| CliError::Internal(format!("stdout: {e}")))?,
    }
    Ok(())
}
