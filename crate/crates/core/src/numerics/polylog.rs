use statrs::function::gamma::gamma;

use super::accum::CompensatedSum;
use super::zeta::{zeta_continued, ROUNDING};
use super::{check_eps, EvalReport, MAX_TERMS};
use crate::error::{Error, Result};

/// Above this `x` the expansion in `t = -ln x` replaces the power series.
const SERIES_LIMIT: f64 = 0.5;

/// Distance to a positive integer below which `q` is treated as that
/// integer, switching to the logarithmic form of the expansion.
pub(crate) const INTEGER_SNAP: f64 = 1e-10;

/// Polylogarithm `Li_q(x) = sum_{j>=1} x^j / j^q` for real `q` and
/// `0 < x < 1`.
pub fn polylog(q: f64, x: f64, target_eps: f64) -> Result<EvalReport> {
    check_eps(target_eps)?;
    if !q.is_finite() {
        return Err(Error::domain(format!("polylog order {q} is not finite")));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!("polylog argument must lie in (0, 1), got {x}")));
    }
    let (value, err, terms) = if x <= SERIES_LIMIT {
        power_series(q, x, target_eps / 2.0)?
    } else {
        let t = -(x - 1.0).ln_1p();
        near_one(q, t)
    };
    if err > target_eps {
        return Err(Error::precision(format!("Li_{q}({x}): bound {err:e} exceeds target {target_eps:e}")));
    }
    Ok(EvalReport::new(value, err, terms))
}

/// Direct series with a geometric bound on the remainder.
pub(crate) fn power_series(q: f64, x: f64, eps: f64) -> Result<(f64, f64, usize)> {
    let mut acc = CompensatedSum::new();
    let mut power = 1.0;
    for k in 1..=MAX_TERMS {
        power *= x;
        acc.add(power * (k as f64).powf(-q));
        let next = power * x * ((k + 1) as f64).powf(-q);
        // ratio of consecutive terms past k+1 never exceeds this
        let ratio = if q >= 0.0 { x } else { x * ((k + 2) as f64 / (k + 1) as f64).powf(-q) };
        if ratio < 1.0 {
            let remainder = next / (1.0 - ratio);
            let rounding = ROUNDING * acc.abs_sum();
            if remainder <= eps || remainder <= 1e-3 * rounding {
                return Ok((acc.value(), remainder + rounding, k));
            }
        }
    }
    Err(Error::precision(format!("Li_{q}({x}) series did not converge")))
}

/// `Li_q(e^-t)` for `0 < t < 2 pi` from
/// `Gamma(1-q) t^(q-1) + sum_k zeta(q-k) (-t)^k / k!`, or its logarithmic
/// limit when `q` is a positive integer.
pub(crate) fn near_one(q: f64, t: f64) -> (f64, f64, usize) {
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let n = q.round();
    let integer = n >= 1.0 && (q - n).abs() < INTEGER_SNAP;
    let special = if integer { n as usize - 1 } else { usize::MAX };
    if integer {
        // q was snapped; d/dq Li_q is at most |ln t| Li_q + zeta'-size terms
        err += (q - n).abs() * 1e3;
    } else {
        let g = gamma(1.0 - q) * t.powf(q - 1.0);
        acc.add(g);
        err += 1e-14 * g.abs();
    }
    let mut scale = 1.0; // (-t)^k / k!
    let mut last = f64::INFINITY;
    let mut used = 0;
    for k in 0..120usize {
        if k > 0 {
            scale *= -t / k as f64;
        }
        let term = if k == special {
            let harmonic: f64 = (1..=special).map(|j| 1.0 / j as f64).sum();
            scale * (harmonic - t.ln())
        } else {
            let (z, zerr) = zeta_continued(q - k as f64);
            err += (scale * zerr).abs();
            scale * z
        };
        acc.add(term);
        used = k + 1;
        let past_special = special == usize::MAX || k > special;
        if past_special && term.abs() < 1e-20 * acc.abs_sum() && last.abs() < 1e-18 * acc.abs_sum() {
            break;
        }
        last = term;
    }
    err += 4.0 * last.abs() + ROUNDING * acc.abs_sum();
    (acc.value(), err, used)
}
