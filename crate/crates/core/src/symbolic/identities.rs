use num_bigint::BigInt;

use super::{IntegerIndex, ZetaPolynomial};
use crate::error::{Error, Result};
use crate::numerics::{mzv, CompensatedSum, EvalReport};
use crate::rational::Rational;

/// A claimed relation `sum_i c_i zeta(I_i) = P(zeta(2), zeta(3), ...)`.
///
/// Generators return the relation as data; deciding whether it holds to a
/// given tolerance is left to the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct Identity {
    pub mzv_side: Vec<(Rational, IntegerIndex)>,
    pub zeta_side: ZetaPolynomial,
}

impl Identity {
    /// The multiple zeta indices alone, for generators with unit coefficients.
    pub fn indices(&self) -> Vec<IntegerIndex> {
        self.mzv_side.iter().map(|(_, i)| i.clone()).collect()
    }

    pub fn weight(&self) -> u32 {
        self.mzv_side.first().map(|(_, i)| i.weight()).unwrap_or(0)
    }

    /// Evaluates both sides independently.
    pub fn evaluate(&self, target_eps: f64) -> Result<(EvalReport, EvalReport)> {
        let n = self.mzv_side.len().max(1) as f64;
        let mut acc = CompensatedSum::new();
        let mut err = 0.0;
        let mut terms = 0;
        for (c, index) in &self.mzv_side {
            let r = mzv(&index.to_real(), target_eps / (2.0 * n * c.to_f64().abs().max(1.0)))?;
            let cf = c.to_f64();
            acc.add(cf * r.value);
            err += cf.abs() * r.abs_error_bound;
            terms += r.terms_used;
        }
        err += 4.0 * f64::EPSILON * acc.abs_sum();
        let lhs = EvalReport::new(acc.value(), err, terms);
        let rhs = self.zeta_side.evaluate(target_eps / 2.0)?;
        Ok((lhs, rhs))
    }
}

/// Sum theorem: the admissible indices of weight `n` and depth `k` sum to
/// `zeta(n)`. Indices are listed with the first entry descending.
pub fn sum_theorem_identity(n: u32, k: u32) -> Result<Identity> {
    if !(k >= 2 && n > k && n <= 10) {
        return Err(Error::domain(format!("sum theorem needs 2 <= k < n <= 10, got n={n}, k={k}")));
    }
    let mut indices = Vec::new();
    let mut prefix = Vec::with_capacity(k as usize);
    fn rec(rest: u32, slots: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let lo = if prefix.is_empty() { 2 } else { 1 };
        // leave at least one for each remaining slot
        let hi = rest.saturating_sub(slots - 1);
        for a in (lo..=hi).rev() {
            prefix.push(a);
            rec(rest - a, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    rec(n, k, &mut prefix, &mut indices);
    Ok(Identity {
        mzv_side: indices
            .into_iter()
            .map(|v| (Rational::one(), IntegerIndex::new(v).expect("admissible by construction")))
            .collect(),
        zeta_side: ZetaPolynomial::zeta(n),
    })
}

/// `zeta(n) = sum_{i=p+1}^{n-1} C(i-1,p-1) zeta(i,n-i) + sum_{i=q+1}^{n-1} C(i-1,q-1) zeta(i,n-i)`
/// with `n = p + q`. Terms appear exactly as the two sums produce them,
/// first sum first, without merging.
pub fn binom_relation(p: u32, q: u32) -> Result<Identity> {
    if p < 1 || q < 1 || p + q < 3 {
        return Err(Error::domain(format!("binomial relation needs p, q >= 1 and p+q >= 3, got ({p},{q})")));
    }
    let n = p + q;
    let mut mzv_side = Vec::new();
    for base in [p, q] {
        for i in base + 1..n {
            let c = binom(i - 1, base - 1);
            let index = IntegerIndex::new(vec![i, n - i]).expect("i >= 2");
            mzv_side.push((Rational::integer(c), index));
        }
    }
    Ok(Identity { mzv_side, zeta_side: ZetaPolynomial::zeta(n) })
}

/// `zeta(n) zeta(m) = zeta(n,m) + zeta(m,n) + zeta(m+n)`.
pub fn product_relation(n: u32, m: u32) -> Result<Identity> {
    if n < 2 || m < 2 {
        return Err(Error::domain(format!("product relation needs n, m >= 2, got ({n},{m})")));
    }
    let idx = |v: Vec<u32>| IntegerIndex::new(v).expect("entries >= 2");
    Ok(Identity {
        mzv_side: vec![
            (Rational::one(), idx(vec![n, m])),
            (Rational::one(), idx(vec![m, n])),
            (Rational::one(), idx(vec![n + m])),
        ],
        zeta_side: ZetaPolynomial::monomial(Rational::one(), vec![n, m]),
    })
}

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(id: &Identity) -> Vec<Vec<u32>> {
        id.indices().iter().map(|i| i.args().to_vec()).collect()
    }

    #[test]
    fn sum_theorem_lists() {
        let id = sum_theorem_identity(3, 2).unwrap();
        assert_eq!(args(&id), vec![vec![2, 1]]);
        assert_eq!(id.zeta_side, ZetaPolynomial::zeta(3));
        assert_eq!(args(&sum_theorem_identity(4, 2).unwrap()), vec![vec![3, 1], vec![2, 2]]);
        assert_eq!(args(&sum_theorem_identity(4, 3).unwrap()), vec![vec![2, 1, 1]]);
        // C(n-2, k-1) indices
        assert_eq!(sum_theorem_identity(10, 4).unwrap().mzv_side.len(), 56);
        assert!(sum_theorem_identity(3, 3).is_err());
        assert!(sum_theorem_identity(11, 2).is_err());
        assert!(sum_theorem_identity(5, 1).is_err());
    }

    #[test]
    fn binomial_relation_terms() {
        let id = binom_relation(1, 2).unwrap();
        let terms: Vec<(String, Vec<u32>)> =
            id.mzv_side.iter().map(|(c, i)| (c.to_string(), i.args().to_vec())).collect();
        assert_eq!(terms, vec![("1".into(), vec![2, 1])]);

        let id = binom_relation(2, 2).unwrap();
        let terms: Vec<(String, Vec<u32>)> =
            id.mzv_side.iter().map(|(c, i)| (c.to_string(), i.args().to_vec())).collect();
        assert_eq!(terms, vec![("2".into(), vec![3, 1]), ("2".into(), vec![3, 1])]);
        assert_eq!(id.zeta_side, ZetaPolynomial::zeta(4));
        assert!(binom_relation(0, 3).is_err());
        assert!(binom_relation(1, 1).is_err());
    }

    #[test]
    fn binomial_relation_with_p_one_is_sum_theorem() {
        for n in 3..=8 {
            let b = binom_relation(1, n - 1).unwrap();
            let s = sum_theorem_identity(n, 2).unwrap();
            let mut lhs = args(&b);
            let mut rhs = args(&s);
            lhs.sort();
            rhs.sort();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn product_relation_records() {
        let id = product_relation(2, 3).unwrap();
        assert_eq!(args(&id), vec![vec![2, 3], vec![3, 2], vec![5]]);
        assert_eq!(id.zeta_side, ZetaPolynomial::monomial(Rational::one(), vec![2, 3]));
        assert!(product_relation(1, 3).is_err());
    }

    #[test]
    fn identities_hold_numerically() {
        let mut ids = vec![binom_relation(2, 2).unwrap(), binom_relation(2, 5).unwrap()];
        ids.push(binom_relation(3, 4).unwrap());
        ids.push(product_relation(4, 3).unwrap());
        ids.push(product_relation(3, 3).unwrap());
        ids.push(sum_theorem_identity(6, 3).unwrap());
        for id in ids {
            let (l, r) = id.evaluate(1e-10).unwrap();
            assert!(l.agrees_with(&r, 0.0), "{:?}: {} vs {}", id.zeta_side, l.value, r.value);
        }
    }
}
