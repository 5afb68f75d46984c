use super::accum::CompensatedSum;
use super::asymptotic::Expansion;
use super::zeta::{hurwitz_tail, ROUNDING};
use super::{check_eps, EvalReport, BOUNDARY_GUARD, MAX_TERMS};
use crate::domain::ExponentList;
use crate::error::{Error, Result};

const EXPANSION_ORDER: usize = 22;
const INITIAL_CUTOFF: usize = 256;

/// `sum_{n>=1} prod_j (zeta(i_j) - sum_{m<=n} m^-i_j)`, summed directly.
///
/// The tails are tabulated for `n <= N` by upward accumulation from their
/// values at `N`. The outer sum beyond `N` is taken from the large-`n`
/// expansion of the product of tails, whose terms are again Hurwitz tails.
/// Nothing here goes through multiple zeta values, so this serves as the
/// oracle for the closed forms.
pub fn brute_tail_product_sum(exponents: &ExponentList, target_eps: f64) -> Result<EvalReport> {
    check_eps(target_eps)?;
    exponents.check_tail_hypothesis()?;
    let ps = exponents.as_slice();
    let k = ps.len();
    if ps.iter().any(|&p| p <= 1.0 + BOUNDARY_GUARD) || exponents.sum() <= (k + 1) as f64 + BOUNDARY_GUARD {
        return Err(Error::domain("exponents too close to the convergence boundary"));
    }

    let mut cutoff = INITIAL_CUTOFF;
    loop {
        let (value, truncation, rounding) = truncated_sum(ps, cutoff, target_eps)?;
        let bound = truncation + rounding;
        if bound <= target_eps {
            return Ok(EvalReport::new(value, bound, cutoff));
        }
        if truncation <= target_eps / 8.0 || cutoff * 2 > MAX_TERMS {
            return Err(Error::precision(format!("tail product sum: bound {bound:e} exceeds target {target_eps:e}")));
        }
        cutoff *= 2;
    }
}

fn truncated_sum(ps: &[f64], cutoff: usize, target_eps: f64) -> Result<(f64, f64, f64)> {
    let nf = cutoff as f64;
    // tails[j][n] = sum_{m > n} m^-p_j for 1 <= n <= cutoff
    let mut tails = Vec::with_capacity(ps.len());
    let mut tail_errs = Vec::with_capacity(ps.len());
    for &p in ps {
        let (at_cutoff, err, _) = hurwitz_tail(p, cutoff as u64, 1e-3 * target_eps)?;
        let mut column = vec![0.0; cutoff + 1];
        let mut acc = CompensatedSum::starting_at(at_cutoff);
        column[cutoff] = at_cutoff;
        for n in (1..cutoff).rev() {
            acc.add(((n + 1) as f64).powf(-p));
            column[n] = acc.value();
        }
        tails.push(column);
        tail_errs.push(err);
    }

    let mut direct = CompensatedSum::new();
    let mut propagated = 0.0;
    for n in 1..=cutoff {
        let product: f64 = tails.iter().map(|c| c[n]).product();
        direct.add(product);
        // first-order effect of each tail's absolute error
        for (j, column) in tails.iter().enumerate() {
            propagated += tail_errs[j] * product / column[n];
        }
    }

    let mut expansion = Expansion::hurwitz(ps[0], EXPANSION_ORDER);
    for &p in &ps[1..] {
        expansion = expansion.product(&Expansion::hurwitz(p, EXPANSION_ORDER));
    }
    let (remainder, truncation) = expansion.weighted_tail(0.0).eval(nf);

    let mut total = direct;
    total.add(remainder);
    let value = total.value();
    let rounding = ROUNDING * (ps.len() as f64 + 1.0) * value.abs();
    Ok((value, truncation + propagated, rounding))
}
