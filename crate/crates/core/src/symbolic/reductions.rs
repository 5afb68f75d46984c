use num_bigint::BigInt;

use super::ZetaPolynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn sign(exp: u32) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `zeta(n, 1) = (n/2) zeta(n+1) - (1/2) sum_{j=2}^{n-1} zeta(j) zeta(n+1-j)`.
pub fn reduce_n1(n: u32) -> Result<ZetaPolynomial> {
    if n < 2 {
        return Err(Error::domain(format!("zeta({n},1) needs n >= 2")));
    }
    let mut p = ZetaPolynomial::monomial(Rational::new(n as i64, 2), vec![n + 1]);
    let half = Rational::new(-1, 2);
    for j in 2..n {
        p = p + ZetaPolynomial::monomial(half.clone(), vec![j, n + 1 - j]);
    }
    Ok(p)
}

/// Euler's reduction of `zeta(m, n)` for odd weight `m + n` and `n > 1`.
///
/// Requires `m >= 2` for convergence; `n = 1` is handled by [`reduce_n1`].
pub fn reduce_double_odd(m: u32, n: u32) -> Result<ZetaPolynomial> {
    if m < 2 {
        return Err(Error::domain(format!("zeta({m},{n}) diverges: first argument must be >= 2")));
    }
    if n < 2 {
        return Err(Error::domain(format!("zeta({m},{n}): use the (n,1) reduction for n = 1")));
    }
    let w = m + n;
    if w.is_multiple_of(2) {
        return Err(Error::domain(format!("zeta({m},{n}) has even weight {w}")));
    }
    let sm = sign(m);
    let (mi, ni, wi) = (m as i64, n as i64, w as i64);

    let lead = Rational::new(sm * binomial(wi, ni) - 1, 2);
    let mut p = ZetaPolynomial::monomial(lead, vec![w]);
    p = p + ZetaPolynomial::monomial(Rational::new(1 + sm, 2), vec![m, n]);
    for j in 1..=((w - 1) / 2) as i64 {
        let c = binomial(2 * j - 2, mi - 1) + binomial(2 * j - 2, ni - 1);
        if c == BigInt::from(0) {
            continue;
        }
        // j = 1 would need zeta(1); its binomials vanish because m, n >= 2
        let coeff = Rational::integer(-sm * c);
        p = p + ZetaPolynomial::monomial(coeff, vec![2 * j as u32 - 1, w + 1 - 2 * j as u32]);
    }
    Ok(p)
}
