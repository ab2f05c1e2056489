//! Parameter sweeps that check the explicit inequalities exactly and fit
//! growth exponents for the bounds that only hold up to `x^eps`.

mod explicit;
mod fit;
mod growth;
mod sampling;

pub use explicit::{check_explicit, MAWKISH_BASELINE};
pub use fit::{fit_loglog, LogLogFit};
pub use growth::check_growth;
pub use sampling::{rng_from_seed, sample_class, sample_of_class, sample_stratified, COORD_MAX};

use crate::error::{Error, Result};
use crate::expsums::EvalCtx;
use crate::forms::QuadPair;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// Distance past a window edge that still only warns.
pub const WARN_MARGIN: f64 = 0.15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    LemRho,
    HypRho,
    Need2,
    MawkishBound,
    SigmaClaim,
    MawkishDefect,
    Need1Sigma,
    Need3Mixed,
    Ghoul,
    BadM,
    QqBound,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::LemRho,
        Suite::HypRho,
        Suite::Need2,
        Suite::MawkishBound,
        Suite::SigmaClaim,
        Suite::MawkishDefect,
        Suite::Need1Sigma,
        Suite::Need3Mixed,
        Suite::Ghoul,
        Suite::BadM,
        Suite::QqBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LemRho => "lem_rho",
            Suite::HypRho => "hyp_rho",
            Suite::Need2 => "need2",
            Suite::MawkishBound => "mawkish_bound",
            Suite::SigmaClaim => "sigma_claim",
            Suite::MawkishDefect => "mawkish_defect",
            Suite::Need1Sigma => "need1_sigma",
            Suite::Need3Mixed => "need3_mixed",
            Suite::Ghoul => "ghoul",
            Suite::BadM => "bad_m",
            Suite::QqBound => "qq_bound",
        }
    }

    /// Growth suites fit exponents; the rest compare against explicit constants.
    pub fn is_growth(self) -> bool {
        matches!(
            self,
            Suite::Need1Sigma | Suite::Need3Mixed | Suite::Ghoul | Suite::BadM | Suite::QqBound
        )
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sweep ranges; `Ranges::default_for` gives each suite's standard grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranges {
    /// Largest prime tested.
    pub p_max: u64,
    /// Largest exponent tested.
    pub r_max: u32,
    /// Largest modulus tested.
    pub d_max: u64,
    /// Random instances per grid point (or in total, per suite).
    pub samples: usize,
    /// Abscissae for the partial-sum fits.
    pub x_grid: Vec<u64>,
    /// Box half-widths for the class-count fits.
    pub m_grid: Vec<u32>,
    /// Moduli pairs for the mixed-sum suites.
    pub moduli: Vec<(u64, u64)>,
}

impl Ranges {
    pub fn default_for(suite: Suite) -> Ranges {
        let base = Ranges {
            p_max: 11,
            r_max: 2,
            d_max: 45,
            samples: 20,
            x_grid: Vec::new(),
            m_grid: Vec::new(),
            moduli: Vec::new(),
        };
        match suite {
            Suite::LemRho => Ranges { p_max: 31, r_max: 3, samples: 200, ..base },
            Suite::HypRho => Ranges { p_max: 7, ..base },
            Suite::Need2 => Ranges { samples: 50, ..base },
            Suite::MawkishBound | Suite::SigmaClaim => base,
            Suite::MawkishDefect => Ranges { p_max: 97, r_max: 1, ..base },
            Suite::Need1Sigma => Ranges {
                samples: 5,
                x_grid: vec![2_500, 5_000, 10_000, 20_000],
                ..base
            },
            Suite::Need3Mixed => Ranges {
                samples: 10,
                moduli: vec![(3, 3), (3, 9), (9, 3), (5, 5), (7, 7), (9, 9), (11, 11)],
                ..base
            },
            Suite::Ghoul => Ranges {
                samples: 10,
                moduli: vec![(1, 3), (3, 3), (1, 9), (3, 9), (9, 3), (5, 5), (7, 7), (9, 9)],
                ..base
            },
            Suite::BadM => Ranges { m_grid: vec![2, 4, 6, 8, 10, 12], ..base },
            Suite::QqBound => Ranges {
                samples: 10,
                moduli: [3, 5, 7, 9, 11, 13, 15, 25, 27, 49]
                    .into_iter()
                    .map(|q| (1, q))
                    .collect(),
                ..base
            },
        }
    }
}

/// Acceptance window for a fitted exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn upper(hi: f64) -> Self {
        Self { lo: f64::NEG_INFINITY, hi }
    }

    /// Distance outside the window, zero inside.
    pub fn miss(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Settings shared by every suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub ranges: Ranges,
    /// Override for the growth window; `None` uses the suite default.
    pub window: Option<Window>,
    pub ctx: EvalCtx,
}

impl SuiteConfig {
    pub fn new(suite: Suite, seed: u64) -> Self {
        Self { seed, ranges: Ranges::default_for(suite), window: None, ctx: EvalCtx::default() }
    }
}

/// One checked instance: `ratio = value / bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check_name: String,
    pub instance: String,
    pub value: f64,
    pub bound: f64,
    pub ratio: f64,
    pub pass: bool,
}

/// One fitted exponent of a growth suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    pub label: String,
    pub slope: f64,
    pub window: Window,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub instances: usize,
    pub worst_ratio: f64,
    pub worst_instance: String,
    pub fitted_exponent: Option<f64>,
    pub pass: bool,
    pub warnings: Vec<String>,
    pub fits: Vec<FitRecord>,
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    /// Report for an explicit-constant suite: passes iff every ratio is at most 1.
    pub(crate) fn explicit(name: &str, rows: Vec<CheckRow>) -> CheckReport {
        let mut worst_ratio = 0.0;
        let mut worst_instance = String::new();
        for r in &rows {
            if r.ratio > worst_ratio || worst_instance.is_empty() {
                worst_ratio = r.ratio;
                worst_instance = r.instance.clone();
            }
        }
        CheckReport {
            check_name: name.to_string(),
            instances: rows.len(),
            worst_ratio,
            worst_instance,
            fitted_exponent: None,
            pass: !rows.is_empty() && rows.iter().all(|r| r.pass),
            warnings: Vec::new(),
            fits: Vec::new(),
            rows,
        }
    }

    /// Report for a growth suite: warns inside the margin, fails beyond it.
    pub(crate) fn growth(name: &str, rows: Vec<CheckRow>, fits: Vec<FitRecord>) -> CheckReport {
        let mut report = CheckReport::explicit(name, rows);
        let mut warnings = Vec::new();
        let mut pass = !fits.is_empty();
        let mut worst: Option<(f64, f64)> = None;
        for f in &fits {
            let miss = f.window.miss(f.slope);
            if miss > WARN_MARGIN {
                pass = false;
                warnings.push(format!("{}: exponent {} outside {} by {miss}", f.label, f.slope, f.window));
            } else if miss > 0.0 {
                warnings.push(format!("{}: exponent {} just outside {}", f.label, f.slope, f.window));
            }
            if worst.is_none_or(|(m, _)| miss > m) {
                worst = Some((miss, f.slope));
            }
        }
        report.fitted_exponent = worst.map(|w| w.1);
        report.pass = pass;
        report.warnings = warnings;
        report.fits = fits;
        report
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat CSV: `check_name,instance,value,bound,ratio,pass`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv output: {e}"));
        for row in &self.rows {
            wr.serialize(row).map_err(io)?;
        }
        if self.rows.is_empty() {
            wr.write_record(["check_name", "instance", "value", "bound", "ratio", "pass"])
                .map_err(io)?;
        }
        wr.flush().map_err(|e| Error::InvalidArgument(format!("csv output: {e}")))?;
        Ok(())
    }
}

/// Runs any suite.
pub fn run_suite(suite: Suite, p: &QuadPair, cfg: &SuiteConfig) -> Result<CheckReport> {
    if suite.is_growth() {
        check_growth(suite, p, cfg)
    } else {
        check_explicit(suite, p, cfg)
    }
}

pub(crate) fn row(name: &str, instance: String, value: f64, bound: f64) -> CheckRow {
    let ratio = if bound > 0.0 { value / bound } else if value == 0.0 { 0.0 } else { f64::INFINITY };
    CheckRow { check_name: name.to_string(), instance, value, bound, ratio, pass: ratio <= 1.0 }
}
