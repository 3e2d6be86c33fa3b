//! `splinedft table`: fresh results against the published cells.

use splinedft::bench::{
    required_digits, run_benchmark, BenchConfig, MethodTag, RowStatus, TestFunctionId,
};

use crate::errors::CliError;

#[derive(clap::Args, Debug)]
pub struct TableArgs {
    /// Test function: g1, g2, g3, g4.
    #[arg(long)]
    function: String,

    /// Spline degree (one table per degree).
    #[arg(long)]
    theta: usize,

    /// Interval counts.
    #[arg(long, value_delimiter = ',', default_value = "31,101,501")]
    n: Vec<usize>,

    /// Refinement factor for the error grid.
    #[arg(long, default_value_t = 10)]
    lambda: usize,

    /// Working precision; defaults to the minimum the degree/grid needs.
    #[arg(long)]
    digits: Option<u32>,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2e}")).unwrap_or_else(|| "-".into())
}

fn fmt_ratio(fresh: Option<f64>, published: Option<f64>) -> String {
    match (fresh, published) {
        (Some(f), Some(p)) if p > 0.0 => format!("{:.2}", f / p),
        _ => "-".into(),
    }
}

pub fn run(args: &TableArgs) -> Result<(), CliError> {
    let function = TestFunctionId::parse(&args.function)?;
    let digits = args.digits.unwrap_or_else(|| {
        args.n
            .iter()
            .map(|&n| required_digits(args.theta, n))
            .max()
            .unwrap_or(15)
    });
    // The degree 3 tables also carry the natural cubic column.
    let mut methods = vec![MethodTag::Method1, MethodTag::Method2];
    if args.theta == 3 {
        methods.push(MethodTag::CubicNs);
    }
    methods.push(MethodTag::CubicNak);
    let cfg = BenchConfig {
        function,
        thetas: vec![args.theta],
        ns: args.n.clone(),
        methods,
        lambda: args.lambda,
        digits,
    };
    let table = run_benchmark(&cfg)?;

    println!(
        "{} degree {} (lambda = {}, digits = {})",
        function.name(),
        args.theta,
        args.lambda,
        digits
    );
    println!(
        "{:<10} {:>5} {:>10} {:>10} {:>7}  {:>10} {:>10} {:>7}  {}",
        "method", "N", "e_max", "pub", "ratio", "e_avg", "pub", "ratio", "status"
    );
    for row in &table.rows {
        let status = match &row.status {
            RowStatus::Ok => "ok".to_string(),
            RowStatus::Skipped(r) => format!("skipped ({r})"),
            RowStatus::Failed(r) => format!("failed ({r})"),
        };
        println!(
            "{:<10} {:>5} {:>10} {:>10} {:>7}  {:>10} {:>10} {:>7}  {}",
            row.method.label(),
            row.n,
            fmt_opt(row.e_max),
            fmt_opt(row.paper_e_max),
            fmt_ratio(row.e_max, row.paper_e_max),
            fmt_opt(row.e_avg),
            fmt_opt(row.paper_e_avg),
            fmt_ratio(row.e_avg, row.paper_e_avg),
            status
        );
    }
    Ok(())
}
