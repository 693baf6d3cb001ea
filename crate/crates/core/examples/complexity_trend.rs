//! Attack runtime across code lengths, with the fitted log-log slope.

use flrank::cli::{bench_sizes, BENCH_HEADER};

fn main() -> flrank::Result<()> {
    let rows = bench_sizes(&[20, 28, 40, 56], 5, 1)?;
    println!("{BENCH_HEADER}");
    for r in &rows {
        println!("{}", r.to_csv());
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.params.n as f64).ln(), r.median.as_secs_f64().ln()))
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let cov: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    println!("log-log slope: {:.2}", cov / var);
    Ok(())
}
