/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    /// `ln` of the prefactor.
    pub log_prefactor: f64,
    /// Root-mean-square residual in `ln y`.
    pub rms_residual: f64,
}

/// Fits `y = A x^k`. Returns `None` with fewer than two distinct positive
/// abscissae or any non-positive ordinate.
pub fn power_law(xs: &[f64], ys: &[f64]) -> Option<PowerLawFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    if xs.iter().chain(ys).any(|&v| v <= 0.0 || !v.is_finite()) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let k = sxy / sxx;
    let b = my - k * mx;
    let rss: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - (k * x + b)).powi(2)).sum();
    Some(PowerLawFit {
        exponent: k,
        log_prefactor: b,
        rms_residual: (rss / n).sqrt(),
    })
}
