//! gnuplot scripts for result tables. The script loads the CSV by file name,
//! so keep the two side by side.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::CliError;
use crate::table::ScanResult;

const PREAMBLE: &str =
    "set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\nset grid\n";

pub fn plot_script(result: &ScanResult, csv_name: &str) -> Result<String, CliError> {
    if result.rows.is_empty() {
        return Err(CliError::Parameters("nothing to plot: the table is empty".into()));
    }
    let mut s = String::from(PREAMBLE);
    let data = format!("'{}'", csv_name.replace('\'', "''"));
    match result.get_meta("command").unwrap_or("") {
        "classical" => {
            let rho = result.get_meta("rho_l").unwrap_or("?");
            let _ = writeln!(s, "set title 'Classical cross section, rho_L = {rho}'");
            s.push_str("set xrange [0:2*pi]\nset xlabel 'theta (rad)'\nset ylabel 'dsigma/dtheta (R)'\n");
            let _ = writeln!(s, "plot {data} using 1:2 with lines lw 2");
        }
        "compare" => {
            s.push_str("set title 'Classical and quantum cross sections'\n");
            s.push_str(
                "set xrange [0:2*pi]\nset xlabel 'theta (rad)'\nset ylabel 'dsigma/dtheta (R)'\nset logscale y\n",
            );
            let _ = writeln!(s, "plot {data} using 1:2 with lines lw 2, \\\n     {data} using 1:3 with lines dt 2, \\\n     {data} using 1:4 with lines lw 2");
        }
        "limit-scan" => {
            let slope = result.get_meta("fitted_slope").unwrap_or("nan");
            let intercept = result.get_meta("fit_log_prefactor").unwrap_or("0");
            s.push_str("set title 'Born cross section as hbar -> lambda hbar'\n");
            s.push_str(
                "set logscale xy\nset format xy '10^{%L}'\nset xlabel 'lambda'\nset ylabel 'dsigma/dtheta (R)'\n",
            );
            let _ = writeln!(s, "k = {slope}\nb = {intercept}\nfit_line(x) = exp(b) * x**k");
            let _ = writeln!(
                s,
                "set label 1 sprintf('fitted slope %.4f', k) at graph 0.05, graph 0.92"
            );
            let _ = writeln!(
                s,
                "plot {data} using 1:5 with points pt 7 ps 0.6, \\\n     {data} using 1:6 with lines lw 2, \\\n     fit_line(x) with lines dt 2 title 'fit', \\\n     {data} using 1:7 with lines title 'classical'"
            );
        }
        "mc" => {
            s.push_str("set title 'Monte Carlo histogram'\nset xrange [0:2*pi]\nset xlabel 'theta (rad)'\nset ylabel 'dsigma/dtheta (R)'\n");
            let _ = writeln!(
                s,
                "plot {data} using (($1+$2)/2):4:5 with yerrorbars pt 7 ps 0.4, \\\n     {data} using (($1+$2)/2):6 with steps lw 2"
            );
        }
        _ => {
            s.push_str("set xlabel columnhead(1)\n");
            let curves: Vec<String> = (2..=result.columns.len())
                .map(|i| format!("{data} using 1:{i} with linespoints"))
                .collect();
            let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
        }
    }
    s.push_str("pause mouse close\n");
    Ok(s)
}

pub fn emit_plot_script(result: &ScanResult, csv_name: &str, path: &Path) -> Result<(), CliError> {
    let script = plot_script(result, csv_name)?;
    std::fs::write(path, script).map_err(|e| CliError::io(path, e))
}
