use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{zeta, CompensatedSum, EvalReport};
use crate::rational::Rational;

/// Polynomial with rational coefficients in the single zeta values
/// `zeta(2), zeta(3), ...`.
///
/// A monomial is stored as the sorted list of its zeta arguments, so
/// `zeta(2)^2 zeta(3)` is `[2, 2, 3]`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaPolynomial {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ZetaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `zeta(n)`
    pub fn zeta(n: u32) -> Self {
        Self::monomial(Rational::one(), vec![n])
    }

    pub fn monomial(coeff: Rational, mut args: Vec<u32>) -> Self {
        args.sort_unstable();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(args, coeff);
        }
        ZetaPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn coefficient(&self, monomial: &[u32]) -> Rational {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, monomial: Vec<u32>, coeff: &Rational) {
        let entry = self.terms.entry(monomial).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        ZetaPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect() }
    }

    /// Common weight of all monomials, if there is one.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let weights: BTreeSet<u32> = self.terms.keys().map(|m| m.iter().sum()).collect();
        match weights.len() {
            0 | 1 => weights.into_iter().next().or(Some(0)),
            _ => None,
        }
    }

    /// Distinct zeta arguments appearing anywhere in the polynomial.
    pub fn arguments(&self) -> BTreeSet<u32> {
        self.terms.keys().flatten().copied().collect()
    }

    /// Numeric value using [`zeta`] for each distinct argument; each
    /// monomial's error is bounded by `prod(|v_i| + e_i) - prod |v_i|`.
    pub fn evaluate(&self, target_eps: f64) -> Result<EvalReport> {
        if let Some(&a) = self.arguments().iter().find(|&&a| a < 2) {
            return Err(Error::domain(format!("zeta({a}) is not defined")));
        }
        // below this zeta(n >= 2) is limited by rounding; the bound stays honest
        let per_value = (target_eps / (4.0 * self.terms.len().max(1) as f64 * self.scale_hint())).max(1e-14);
        let values: BTreeMap<u32, EvalReport> =
            self.arguments().into_iter().map(|a| zeta(a as f64, per_value).map(|r| (a, r))).collect::<Result<_>>()?;
        let mut acc = CompensatedSum::new();
        let mut err = 0.0;
        let mut terms = 0;
        for (monomial, coeff) in &self.terms {
            let c = coeff.to_f64();
            let mut product = 1.0;
            let mut upper = 1.0;
            for a in monomial {
                let r = &values[a];
                product *= r.value;
                upper *= r.value.abs() + r.abs_error_bound;
                terms += r.terms_used;
            }
            acc.add(c * product);
            err += c.abs() * (upper - product.abs()) + 4.0 * f64::EPSILON * (c * product).abs();
        }
        err += 4.0 * f64::EPSILON * acc.abs_sum();
        Ok(EvalReport::new(acc.value(), err, terms))
    }

    fn scale_hint(&self) -> f64 {
        self.terms.iter().map(|(m, c)| c.to_f64().abs() * 2f64.powi(m.len() as i32)).fold(1.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolynomialJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let parsed: PolynomialJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(parsed.into())
    }
}

impl Add for ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn add(mut self, rhs: ZetaPolynomial) -> ZetaPolynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, &c);
        }
        self
    }
}

impl Sub for ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn sub(self, rhs: ZetaPolynomial) -> ZetaPolynomial {
        self + (-rhs)
    }
}

impl Neg for ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn neg(self) -> ZetaPolynomial {
        ZetaPolynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn mul(self, rhs: &ZetaPolynomial) -> ZetaPolynomial {
        let mut out = ZetaPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m: Vec<u32> = ma.iter().chain(mb).copied().collect();
                m.sort_unstable();
                out.add_term(m, &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for ZetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (monomial, coeff)) in self.terms.iter().enumerate() {
            let magnitude = coeff.abs();
            match (i, coeff.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = magnitude == Rational::one();
            if !unit || monomial.is_empty() {
                write!(f, "{magnitude}")?;
            }
            if !unit && !monomial.is_empty() {
                f.write_str(" ")?;
            }
            let mut k = 0;
            while k < monomial.len() {
                let a = monomial[k];
                let power = monomial[k..].iter().take_while(|&&b| b == a).count();
                write!(f, "ζ({a})")?;
                if power > 1 {
                    write!(f, "^{power}")?;
                }
                k += power;
            }
        }
        Ok(())
    }
}

/// Wire form: `{"terms":[{"coeff":"a/b","monomial":[args...]}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: Rational,
    pub monomial: Vec<u32>,
}

impl From<&ZetaPolynomial> for PolynomialJson {
    fn from(p: &ZetaPolynomial) -> Self {
        PolynomialJson {
            terms: p.terms.iter().map(|(m, c)| TermJson { coeff: c.clone(), monomial: m.clone() }).collect(),
        }
    }
}

impl From<PolynomialJson> for ZetaPolynomial {
    fn from(j: PolynomialJson) -> Self {
        j.terms.into_iter().fold(ZetaPolynomial::zero(), |acc, t| acc + ZetaPolynomial::monomial(t.coeff, t.monomial))
    }
}
