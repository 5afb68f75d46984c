//! Multiple zeta values with real arguments.
//!
//! `zeta(s_1, ..., s_d) = sum_{n_1 > ... > n_d >= 1} n_1^-s_1 ... n_d^-s_d`
//! is evaluated from the outermost argument inward through the nested tails
//!
//! ```text
//! T_1(m) = sum_{n > m} n^-s_1
//! T_j(m) = sum_{n > m} n^-s_j T_{j-1}(n)
//! ```
//!
//! so that `zeta = T_d(0)`. Each `T_j` is tabulated for `m <= N` by
//! downward recurrence from its large-`m` expansion at `N`; every step adds a
//! positive term, so there is no cancellation.

use super::accum::CompensatedSum;
use super::asymptotic::Expansion;
use super::zeta::ROUNDING;
use super::{check_eps, EvalReport, BOUNDARY_GUARD, MAX_TERMS};
use crate::domain::{convergence_margin, converges, MzvIndex};
use crate::error::{Error, Result};

/// Deepest index accepted by [`mzv`].
pub const MAX_DEPTH: usize = 8;

const EXPANSION_ORDER: usize = 22;
const INITIAL_CUTOFF: usize = 64;

pub fn mzv(index: &MzvIndex, target_eps: f64) -> Result<EvalReport> {
    check_eps(target_eps)?;
    let args = index.args();
    if args.len() > MAX_DEPTH {
        return Err(Error::UnsupportedDepth { depth: args.len(), max: MAX_DEPTH });
    }
    if !converges(index) {
        return Err(Error::domain(format!("zeta{index} diverges")));
    }
    if convergence_margin(args) <= BOUNDARY_GUARD {
        return Err(Error::domain(format!("zeta{index} is too close to the divergence boundary")));
    }
    let mut cutoff = INITIAL_CUTOFF;
    loop {
        let (value, truncation) = nested_tails(args, cutoff);
        let bound = truncation + ROUNDING * (args.len() as f64 + 1.0) * value.abs();
        if bound <= target_eps {
            return Ok(EvalReport::new(value, bound, cutoff * args.len()));
        }
        if truncation <= target_eps / 8.0 || cutoff * 2 > MAX_TERMS {
            return Err(Error::precision(format!("zeta{index}: bound {bound:e} exceeds target {target_eps:e}")));
        }
        cutoff *= 2;
    }
}

/// Returns `T_d(0)` and a bound on the error inherited from truncating the
/// expansions at the cutoff.
fn nested_tails(args: &[f64], cutoff: usize) -> (f64, f64) {
    let nf = cutoff as f64;
    // inner[m] = T_{j-1}(m) for 1 <= m <= cutoff
    let mut inner: Vec<f64> = Vec::new();
    let mut inner_err = 0.0;
    let mut expansion: Option<Expansion> = None;
    let mut current = vec![0.0; cutoff + 1];
    for (level, &s) in args.iter().enumerate() {
        let next = match &expansion {
            None => Expansion::hurwitz(s, EXPANSION_ORDER),
            Some(e) => e.weighted_tail(s),
        };
        let (at_cutoff, trunc) = next.eval(nf);
        let mut acc = CompensatedSum::starting_at(at_cutoff);
        let mut weight_sum = 0.0;
        current[cutoff] = at_cutoff;
        for m in (1..=cutoff).rev() {
            let w = (m as f64).powf(-s);
            let term = if level == 0 { w } else { w * inner[m] };
            weight_sum += w;
            acc.add(term);
            current[m - 1] = acc.value();
        }
        inner_err = trunc + inner_err * weight_sum;
        expansion = Some(next);
        std::mem::swap(&mut inner, &mut current);
        if current.len() != cutoff + 1 {
            current = vec![0.0; cutoff + 1];
        }
    }
    (inner[0], inner_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::zeta::zeta;

    fn idx(v: &[f64]) -> MzvIndex {
        MzvIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn zeta_two_one_is_zeta_three() {
        let a = mzv(&idx(&[2.0, 1.0]), 1e-12).unwrap();
        let b = zeta(3.0, 1e-12).unwrap();
        assert!((a.value - b.value).abs() <= a.abs_error_bound + b.abs_error_bound);
    }

    #[test]
    fn depth_one_is_zeta() {
        for &s in &[1.3, 2.0, 4.5] {
            let a = mzv(&idx(&[s]), 1e-11).unwrap();
            let b = zeta(s, 1e-11).unwrap();
            assert!((a.value - b.value).abs() <= a.abs_error_bound + b.abs_error_bound, "s={s}");
        }
    }

    #[test]
    fn double_loop_oracle() {
        // sum_{n1 > n2, n1 <= N} n1^-2.5 n2^-1.7 brute force, plus a bracket on
        // the n1 > N remainder: n2-sum < zeta(1.7) and sum_{n1>N} n1^-2.5 < N^-1.5/1.5
        let (s1, s2) = (2.5f64, 1.7f64);
        let n = 20_000usize;
        let mut inner = 0.0;
        let mut acc = CompensatedSum::new();
        for n1 in 1..=n {
            acc.add((n1 as f64).powf(-s1) * inner);
            inner += (n1 as f64).powf(-s2);
        }
        let lower = acc.value();
        let z17 = zeta(s2, 1e-12).unwrap().value;
        let nf = n as f64;
        let upper = lower + z17 * nf.powf(1.0 - s1) / (s1 - 1.0);
        let r = mzv(&idx(&[s1, s2]), 1e-10).unwrap();
        assert!(r.value >= lower && r.value <= upper, "{lower} <= {} <= {upper}", r.value);
    }

    #[test]
    fn product_relation_for_real_arguments() {
        for &(a, b) in &[(1.3, 2.2), (2.0, 3.0), (3.7, 1.9)] {
            let za = zeta(a, 1e-12).unwrap();
            let zb = zeta(b, 1e-12).unwrap();
            let ab = mzv(&idx(&[a, b]), 1e-11).unwrap();
            let ba = mzv(&idx(&[b, a]), 1e-11).unwrap();
            let sum = zeta(a + b, 1e-12).unwrap();
            let lhs = za.value * zb.value;
            let rhs = ab.value + ba.value + sum.value;
            let tol = za.abs_error_bound * zb.value
                + zb.abs_error_bound * za.value
                + ab.abs_error_bound
                + ba.abs_error_bound
                + sum.abs_error_bound;
            assert!((lhs - rhs).abs() <= tol, "({a},{b}): {lhs} vs {rhs}");
        }
    }

    #[test]
    fn negative_and_small_trailing_arguments() {
        // zeta(3.5, -0.5) = sum_{n1 > n2} n1^-3.5 n2^0.5, brute force with
        // a cutoff and the integral-test estimate of what remains
        let r = mzv(&idx(&[3.5, -0.5]), 1e-10).unwrap();
        let n = 200_000usize;
        let mut inner = 0.0;
        let mut acc = CompensatedSum::new();
        for n1 in 1..=n {
            acc.add((n1 as f64).powf(-3.5) * inner);
            inner += (n1 as f64).sqrt();
        }
        // remainder ~ sum_{n1>N} n1^-3.5 * (2/3) n1^1.5 = (2/3) / N
        let est = acc.value() + (2.0 / 3.0) / n as f64;
        assert!((r.value - est).abs() < 1e-9, "{} vs {est}", r.value);
    }

    #[test]
    fn errors() {
        assert!(matches!(mzv(&idx(&[1.0, 2.0]), 1e-9), Err(Error::Domain(_))));
        assert!(matches!(mzv(&idx(&[2.0, 0.0]), 1e-9), Err(Error::Domain(_))));
        assert!(matches!(mzv(&idx(&[2.0; 9]), 1e-9), Err(Error::UnsupportedDepth { depth: 9, .. })));
    }

    #[test]
    fn refinement_stays_within_previous_bound() {
        for args in [&[2.0, 1.0][..], &[2.5, 0.3, 1.2], &[2.0, 2.0, 2.0, 1.0]] {
            let coarse = mzv(&idx(args), 1e-6).unwrap();
            let fine = mzv(&idx(args), 1e-12).unwrap();
            assert!((coarse.value - fine.value).abs() <= coarse.abs_error_bound, "{args:?}");
        }
    }
}
