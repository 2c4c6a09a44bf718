//! Chi-squared deviation statistics over threshold sweeps.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bounds::goodman_fraction;
use crate::census::TriangleCensus;
use crate::error::{Error, Result};

pub const DEFAULT_DF: u32 = 1;

/// Observed or reference fractions indexed by strictly increasing thresholds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    thresholds: Vec<f64>,
    values: Vec<f64>,
}

impl Series {
    pub fn new(thresholds: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if thresholds.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "{} thresholds but {} values",
                thresholds.len(),
                values.len()
            )));
        }
        if thresholds
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
        {
            return Err(Error::InvalidInput(
                "thresholds must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("series values must be finite".into()));
        }
        Ok(Series { thresholds, values })
    }

    /// Builds a series from `(threshold, value)` points in any order.
    pub fn from_points(mut points: Vec<(f64, f64)>) -> Result<Self> {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (t, v) = points.into_iter().unzip();
        Self::new(t, v)
    }

    /// Evaluates `f` at each threshold.
    pub fn from_fn(thresholds: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = thresholds.iter().map(|&t| f(t)).collect();
        Self::new(thresholds, values)
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chi2Kind {
    VsExpectation,
    VsGoodman,
    /// Constant Thomason reference, used for `K_4` and larger.
    VsThomason,
    DeviationOfDeviations,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chi2Report {
    pub kind: Chi2Kind,
    pub statistic: f64,
    pub df: u32,
    pub p_value: f64,
    /// Points included in the sum.
    pub points: usize,
    /// Points dropped because the reference was zero there.
    pub skipped: usize,
}

impl Chi2Report {
    pub fn significant(&self, level: f64) -> bool {
        self.p_value < level
    }
}

fn check_df(df: u32) -> Result<()> {
    if df == 0 {
        return Err(Error::InvalidInput(
            "degrees of freedom must be >= 1".into(),
        ));
    }
    Ok(())
}

fn pearson<'a>(pairs: impl Iterator<Item = (f64, f64)> + 'a) -> (f64, usize, usize) {
    let mut stat = 0.0;
    let (mut points, mut skipped) = (0, 0);
    for (obs, exp) in pairs {
        if exp == 0.0 {
            skipped += 1;
            continue;
        }
        stat += (obs - exp) * (obs - exp) / exp;
        points += 1;
    }
    (stat, points, skipped)
}

/// `sum (obs - exp)^2 / exp` over aligned thresholds.
pub fn chi2_vs_expectation(observed: &Series, expected: &Series, df: u32) -> Result<Chi2Report> {
    check_df(df)?;
    if observed.thresholds != expected.thresholds {
        return Err(Error::InvalidInput(
            "observed and expected series are not aligned".into(),
        ));
    }
    let (statistic, points, skipped) = pearson(
        observed
            .values
            .iter()
            .copied()
            .zip(expected.values.iter().copied()),
    );
    Ok(Chi2Report {
        kind: Chi2Kind::VsExpectation,
        statistic,
        df,
        p_value: p_value(statistic, df),
        points,
        skipped,
    })
}

/// Chi-squared against a reference fraction held constant at every point.
pub fn chi2_vs_constant(
    observed: &Series,
    reference: f64,
    kind: Chi2Kind,
    df: u32,
) -> Result<Chi2Report> {
    check_df(df)?;
    if reference.partial_cmp(&0.0) != Some(Ordering::Greater) {
        return Err(Error::InvalidInput(format!(
            "reference {reference} must be positive"
        )));
    }
    let (statistic, points, skipped) = pearson(observed.values.iter().map(|&v| (v, reference)));
    Ok(Chi2Report {
        kind,
        statistic,
        df,
        p_value: p_value(statistic, df),
        points,
        skipped,
    })
}

/// Chi-squared of an observed monochromatic-fraction series against the
/// Goodman floor for `n` vertices. With `per_color`, the reference is half
/// the floor (one color's share).
pub fn chi2_vs_goodman(observed: &Series, n: u64, per_color: bool, df: u32) -> Result<Chi2Report> {
    let g = goodman_fraction(n).map_err(|_| Error::DegenerateReference(n))?;
    if g.forced_count == 0 {
        return Err(Error::DegenerateReference(n));
    }
    let reference = if per_color {
        g.forced_fraction / 2.0
    } else {
        g.forced_fraction
    };
    chi2_vs_constant(observed, reference, Chi2Kind::VsGoodman, df)
}

/// `|a - b|` for two reports of the same kind and df, with its p-value.
pub fn chi2_deviation(a: &Chi2Report, b: &Chi2Report) -> Result<Chi2Report> {
    if a.kind != b.kind {
        return Err(Error::InvalidInput(format!(
            "cannot compare {:?} with {:?}",
            a.kind, b.kind
        )));
    }
    if a.df != b.df {
        return Err(Error::InvalidInput(format!(
            "degrees of freedom differ: {} vs {}",
            a.df, b.df
        )));
    }
    let statistic = (a.statistic - b.statistic).abs();
    Ok(Chi2Report {
        kind: Chi2Kind::DeviationOfDeviations,
        statistic,
        df: a.df,
        p_value: p_value(statistic, a.df),
        points: a.points.min(b.points),
        skipped: 0,
    })
}

/// Mean statistic over reports for clique orders `3, 4, ...` (one report per
/// order, in order). Divides by the number of terms.
pub fn bar_chi2(reports: &[Chi2Report]) -> Result<f64> {
    if reports.is_empty() {
        return Err(Error::InvalidInput("no reports to average".into()));
    }
    Ok(reports.iter().map(|r| r.statistic).sum::<f64>() / reports.len() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bias {
    pub red_share: f64,
    pub blue_share: f64,
    /// `red / blue`; infinite when there are no blue triangles.
    pub bias_ratio: f64,
}

pub fn bias_summary(census: &TriangleCensus) -> Result<Bias> {
    if census.mono == 0 {
        return Err(Error::UndefinedBias);
    }
    let mono = census.mono as f64;
    Ok(Bias {
        red_share: census.red_triangles as f64 / mono,
        blue_share: census.blue_triangles as f64 / mono,
        bias_ratio: if census.blue_triangles == 0 {
            f64::INFINITY
        } else {
            census.red_triangles as f64 / census.blue_triangles as f64
        },
    })
}

/// How far the observed monochromatic fraction sits above the Goodman floor.
pub fn dichotomy(census: &TriangleCensus) -> Result<f64> {
    Ok(census.mono_fraction - goodman_fraction(census.n)?.forced_fraction)
}

/// Upper tail of the chi-squared distribution, `1 - CDF(statistic; df)`.
pub fn p_value(statistic: f64, df: u32) -> f64 {
    if statistic <= 0.0 {
        return 1.0;
    }
    if statistic.is_infinite() {
        return 0.0;
    }
    gamma_q(df as f64 / 2.0, statistic / 2.0).clamp(0.0, 1.0)
}

/// Lanczos approximation (g = 7, n = 9), about 15 significant digits.
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    let t = x + 7.5;
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

const EPS: f64 = 1e-15;
const MAX_ITER: usize = 10_000;

/// Regularized lower incomplete gamma `P(a, x)`.
pub fn gamma_p(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x < a + 1.0 {
        gamma_series(a, x)
    } else {
        1.0 - gamma_continued_fraction(a, x)
    }
}

/// Regularized upper incomplete gamma `Q(a, x) = 1 - P(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x < a + 1.0 {
        1.0 - gamma_series(a, x)
    } else {
        gamma_continued_fraction(a, x)
    }
}

fn gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

// modified Lentz
fn gamma_continued_fraction(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}
