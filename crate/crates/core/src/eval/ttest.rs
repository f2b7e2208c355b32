use crate::error::{Error, Result};
use crate::math;

/// Paired two-sided Student t-test result.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TTest {
    pub t: f64,
    pub p: f64,
    pub df: usize,
}

impl TTest {
    pub fn significant(&self, level: f64) -> bool {
        self.p < level
    }
}

/// Tests whether the mean of `a[i] - b[i]` differs from zero.
///
/// When every difference is the same the variance vanishes: identical
/// samples give `p = 1`, a constant non-zero shift gives `p = 0` with an
/// infinite statistic.
pub fn paired_ttest(a: &[f64], b: &[f64]) -> Result<TTest> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let nf = n as f64;
    let diffs = || a.iter().zip(b).map(|(x, y)| x - y);
    let mean = diffs().sum::<f64>() / nf;
    let var = diffs().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (nf - 1.0);
    let sd = math::sqrt(var);
    let df = n - 1;
    let scale = diffs().map(f64::abs).sum::<f64>() / nf;
    if sd <= 1e-12 * scale || sd == 0.0 {
        return Ok(if mean == 0.0 || scale == 0.0 {
            TTest { t: 0.0, p: 1.0, df }
        } else {
            TTest {
                t: if mean > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY },
                p: 0.0,
                df,
            }
        });
    }
    let t = mean / (sd / math::sqrt(nf));
    let v = df as f64;
    let p = incomplete_beta(v / 2.0, 0.5, v / (v + t * t));
    Ok(TTest {
        t,
        p: p.clamp(0.0, 1.0),
        df,
    })
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub(crate) fn incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front =
        math::ln_gamma(a + b) - math::ln_gamma(a) - math::ln_gamma(b) + a * math::ln(x) + b * math::ln(1.0 - x);
    let front = math::exp(ln_front);
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Lentz evaluation of the continued fraction for `I_x(a, b)`.
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
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
    h
}
