use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use super::accum::CompensatedSum;
use super::asymptotic::Expansion;
use super::bernoulli::scaled_bernoulli;
use super::{check_eps, EvalReport, BOUNDARY_GUARD, MAX_TERMS};
use crate::error::{Error, Result};

/// Relative rounding allowance for sums of positive terms whose summands
/// are each correct to a couple of ulps.
pub(crate) const ROUNDING: f64 = 8.0 * f64::EPSILON;

const EM_ORDER: usize = 24;

/// Riemann zeta at real `s > 1`: direct summation of `N` terms plus the
/// Euler-Maclaurin tail through the `B_4` correction, with `N` chosen so the
/// first omitted (`B_6`) correction is below `target_eps`.
pub fn zeta(s: f64, target_eps: f64) -> Result<EvalReport> {
    check_eps(target_eps)?;
    if !(s > 1.0 + BOUNDARY_GUARD) || !s.is_finite() {
        return Err(Error::domain(format!("zeta needs s > 1 + {BOUNDARY_GUARD}, got {s}")));
    }
    // |B_6/6! (s)_5| N^(-s-5) <= target/4
    let c6 = (scaled_bernoulli(6) * s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0)).abs();
    let n_min = (4.0 * c6 / target_eps).powf(1.0 / (s + 5.0)).ceil().max(2.0);
    if n_min > MAX_TERMS as f64 {
        return Err(Error::precision(format!("zeta({s}) needs more than {MAX_TERMS} terms")));
    }
    let n = n_min as u64;
    let mut acc = CompensatedSum::new();
    for i in 1..=n {
        acc.add((i as f64).powf(-s));
    }
    let nf = n as f64;
    let correction = nf.powf(1.0 - s) / (s - 1.0) - 0.5 * nf.powf(-s)
        + scaled_bernoulli(2) * s * nf.powf(-s - 1.0)
        + scaled_bernoulli(4) * s * (s + 1.0) * (s + 2.0) * nf.powf(-s - 3.0);
    acc.add(correction);
    let value = acc.value();
    let truncation = c6 * nf.powf(-s - 5.0);
    let bound = truncation + ROUNDING * value.abs();
    if bound > target_eps {
        return Err(Error::precision(format!("zeta({s}): rounding alone exceeds target {target_eps:e}")));
    }
    Ok(EvalReport::new(value, bound, n as usize))
}

/// `sum_{i > n} i^-p`, computed from the tail side.
pub fn tail(p: f64, n: u64, target_eps: f64) -> Result<EvalReport> {
    check_eps(target_eps)?;
    if !(p > 1.0 + BOUNDARY_GUARD) || !p.is_finite() {
        return Err(Error::domain(format!("tail needs p > 1 + {BOUNDARY_GUARD}, got {p}")));
    }
    let (value, err, terms) = hurwitz_tail(p, n, target_eps / 2.0)?;
    let bound = err + ROUNDING * value;
    if bound > target_eps {
        return Err(Error::precision(format!("tail({p}, {n}): cannot reach {target_eps:e} (bound {bound:e})")));
    }
    Ok(EvalReport::new(value, bound, terms))
}

/// `H(s, m) = sum_{i > m} i^-s` for `s > 1`: direct terms up to a cutoff
/// `M >= m`, then the Euler-Maclaurin expansion at `M`. Returns the value,
/// the truncation bound and the number of terms touched.
pub(crate) fn hurwitz_tail(s: f64, m: u64, eps: f64) -> Result<(f64, f64, usize)> {
    let mut cutoff = m.max((s.abs() + 10.0).ceil() as u64);
    loop {
        let (em, err) = Expansion::hurwitz(s, EM_ORDER).eval(cutoff as f64);
        if err <= eps || cutoff > MAX_TERMS as u64 {
            if err > eps {
                return Err(Error::precision(format!("H({s}, {m}) did not converge")));
            }
            // descending from the cutoff keeps the small terms first
            let mut acc = CompensatedSum::starting_at(em);
            for i in (m + 1..=cutoff).rev() {
                acc.add((i as f64).powf(-s));
            }
            let terms = (cutoff - m) as usize + EM_ORDER / 2;
            return Ok((acc.value(), err, terms));
        }
        cutoff *= 2;
    }
}

/// Zeta at any real `s != 1` by analytic continuation; used for the
/// coefficients of the polylogarithm expansion near `x = 1`. Returns the value
/// and an error estimate.
pub(crate) fn zeta_continued(s: f64) -> (f64, f64) {
    debug_assert!(s != 1.0);
    if s > 1.0 + 1e-3 {
        let (v, err, _) = hurwitz_tail(s, 0, 1e-18 * 1.0f64.max(1.0 / (s - 1.0))).expect("zeta continuation");
        return (v, err + ROUNDING * v.abs());
    }
    if s >= 0.0 {
        // Euler-Maclaurin at a fixed cutoff also continues below s = 1
        let cutoff = 12u64;
        let (em, err) = Expansion::hurwitz(s, EM_ORDER).eval(cutoff as f64);
        let mut acc = CompensatedSum::starting_at(em);
        for i in (1..=cutoff).rev() {
            acc.add((i as f64).powf(-s));
        }
        let v = acc.value();
        return (v, err + ROUNDING * acc.abs_sum() + 16.0 * f64::EPSILON * em.abs());
    }
    // functional equation
    let half = s / 2.0;
    if half == half.round() {
        return (0.0, 0.0);
    }
    let (z, zerr) = zeta_continued(1.0 - s);
    let factor = 2f64.powf(s) * PI.powf(s - 1.0) * sin_pi(half) * gamma(1.0 - s);
    let v = factor * z;
    (v, (factor * zerr).abs() + 64.0 * f64::EPSILON * v.abs())
}

/// `sin(pi x)` with exact argument reduction.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r.abs() == 1.0 || r == 0.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zeta_two_is_basel() {
        let r = zeta(2.0, 1e-12).unwrap();
        let basel = PI * PI / 6.0;
        assert!((r.value - basel).abs() <= r.abs_error_bound + 4e-16);
        assert!(r.abs_error_bound <= 1e-12);
    }

    #[test]
    fn zeta_four_and_six() {
        let z4 = zeta(4.0, 1e-13).unwrap();
        assert_abs_diff_eq!(z4.value, PI.powi(4) / 90.0, epsilon = 1e-13);
        let z6 = zeta(6.0, 1e-13).unwrap();
        assert_abs_diff_eq!(z6.value, PI.powi(6) / 945.0, epsilon = 1e-13);
    }

    #[test]
    fn zeta_three_brackets_partial_sum() {
        // sum_{i<=N} i^-3 plus the integral-test bracket for the remainder
        let n = 10_000_000u64;
        let mut acc = CompensatedSum::new();
        for i in 1..=n {
            acc.add((i as f64).powi(-3));
        }
        let nf = n as f64;
        let lo = acc.value() + 0.5 / ((nf + 1.0) * (nf + 1.0));
        let hi = acc.value() + 0.5 / (nf * nf);
        let r = zeta(3.0, 1e-10).unwrap();
        assert!(r.value >= lo - r.abs_error_bound - 1e-15);
        assert!(r.value <= hi + r.abs_error_bound + 1e-15);
    }

    #[test]
    fn bound_meets_target_for_many_s() {
        for &s in &[1.01, 1.5, 2.5, 7.0, 30.0] {
            let r = zeta(s, 1e-10).unwrap();
            assert!(r.abs_error_bound <= 1e-10, "s={s}");
        }
    }

    #[test]
    fn refinement_stays_within_previous_bound() {
        for &s in &[1.2, 2.0, 3.3] {
            let coarse = zeta(s, 1e-6).unwrap();
            let fine = zeta(s, 1e-12).unwrap();
            assert!((coarse.value - fine.value).abs() <= coarse.abs_error_bound);
        }
    }

    #[test]
    fn zeta_domain_errors() {
        assert!(matches!(zeta(1.0, 1e-9), Err(Error::Domain(_))));
        assert!(matches!(zeta(1.0 + 1e-7, 1e-9), Err(Error::Domain(_))));
        assert!(matches!(zeta(2.0, 0.0), Err(Error::Domain(_))));
        // value ~ 1e5: rounding alone is above 1e-12
        assert!(matches!(zeta(1.00001, 1e-12), Err(Error::Precision(_))));
    }

    #[test]
    fn tail_examples() {
        for &p in &[1.5, 2.0, 3.7] {
            let t = tail(p, 0, 1e-11).unwrap();
            let z = zeta(p, 1e-11).unwrap();
            assert!((t.value - z.value).abs() <= t.abs_error_bound + z.abs_error_bound);
        }
        let t = tail(2.0, 1, 1e-12).unwrap();
        assert_abs_diff_eq!(t.value, PI * PI / 6.0 - 1.0, epsilon = 1e-12);
        // integral-test bracket: int_{11}^inf x^-3 <= T(3,10) <= int_{10}^inf x^-3
        let t = tail(3.0, 10, 1e-14).unwrap();
        assert!(t.value >= 0.5 / 121.0 && t.value <= 0.5 / 100.0);
        assert!(tail(1.0, 3, 1e-9).is_err());
    }

    #[test]
    fn continuation_known_values() {
        let cases = [
            (0.0, -0.5),
            (-1.0, -1.0 / 12.0),
            (-3.0, 1.0 / 120.0),
            (-2.0, 0.0),
            (0.5, -1.4603545088095868),
            (-0.5, -0.207_886_224_977_354_57),
            (-1.5, -0.025_485_201_889_833_04),
            (2.0, PI * PI / 6.0),
            (1.5, 2.612_375_348_685_488),
        ];
        for (s, expected) in cases {
            let (v, err) = zeta_continued(s);
            assert!((v - expected).abs() < 1e-14 + err, "zeta({s}) = {v}, want {expected}");
            assert!(err < 1e-13, "s={s} err={err}");
        }
        // zeta(-7) = -B_8 / 8 = 1/240
        assert!((zeta_continued(-7.0).0 * 240.0 - 1.0).abs() < 1e-13);
        let (v, _) = zeta_continued(-21.0);
        // zeta(-21) = -B_22/22 = -854513/3036
        assert!((v / (-854513.0 / 3036.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn sin_pi_reduction() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-8.0), 0.0);
        assert_abs_diff_eq!(sin_pi(0.5), 1.0);
        assert_abs_diff_eq!(sin_pi(-2.5), -1.0);
        assert_abs_diff_eq!(sin_pi(10.25), (PI / 4.0).sin(), epsilon = 1e-15);
    }
}
