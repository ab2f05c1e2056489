use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
}

pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument("x and y lengths differ".into()));
    }
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} positive grid points, need at least 4",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("grid has a single abscissa".into()));
    }
    let slope = sxy / sxx;
    Ok(LogLogFit { slope, intercept: my - slope * mx, points: pts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let xs = [2.0, 4.0, 8.0, 16.0, 32.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(2.5)).collect();
        let f = fit_loglog(&xs, &ys).unwrap();
        assert!((f.slope - 2.5).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn needs_four_points() {
        assert!(matches!(fit_loglog(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), Err(Error::InsufficientData(_))));
        assert!(matches!(fit_loglog(&[1.0, 2.0, 3.0, 4.0], &[1.0, 0.0, 3.0, 4.0]), Err(Error::InsufficientData(_))));
    }
}
