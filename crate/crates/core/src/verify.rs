//! Verification suites comparing independently computed sides of known
//! identities.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{ExponentList, MzvIndex};
use crate::error::{Error, Result};
use crate::numerics::{brute_tail_product_sum, mzv, mzv_integral, zeta, EvalReport};
use crate::rational::Rational;
use crate::symbolic::{
    admissible_indices, duality, reduce_double_odd, reduce_n1, sum_theorem_identity, ZetaPolynomial,
};
use crate::tails::{evaluate_formula, proposition_kk1, proposition_square, tail_product_formula};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const RANDOM_KFOLD_CASES: usize = 50;
pub const RANDOM_INTEGRAL_CASES: usize = 20;

/// One comparison. `bound` is the allowed difference: both error bounds
/// plus the check's tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
    pub bound: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl CheckRecord {
    pub fn compare(name: impl Into<String>, lhs: EvalReport, rhs: EvalReport, tol: f64) -> Self {
        let diff = (lhs.value - rhs.value).abs();
        let bound = lhs.abs_error_bound + rhs.abs_error_bound + tol;
        CheckRecord { name: name.into(), lhs: lhs.value, rhs: rhs.value, diff, bound, pass: diff <= bound, error: None }
    }

    fn failed(name: impl Into<String>, error: Error) -> Self {
        CheckRecord {
            name: name.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            diff: f64::NAN,
            bound: f64::NAN,
            pass: false,
            error: Some(error.to_string()),
        }
    }

    fn from_result(name: String, sides: Result<(EvalReport, EvalReport)>, tol: f64) -> Self {
        match sides {
            Ok((l, r)) => CheckRecord::compare(name, l, r, tol),
            Err(e) => CheckRecord::failed(name, e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Closed forms and identities with exactly known right-hand sides.
    #[serde(rename = "paper")]
    Known,
    /// Seeded random exponent lists and integral parameters.
    Random,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Suite::Known),
            "random" => Ok(Suite::Random),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite '{other}'"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Known => "paper",
            Suite::Random => "random",
            Suite::All => "all",
        })
    }
}

/// A tail-product sum with a known closed form.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub exponents: Vec<f64>,
    pub value: ZetaPolynomial,
    pub tol: f64,
}

fn poly(terms: &[(i64, i64, &[u32])]) -> ZetaPolynomial {
    terms
        .iter()
        .fold(ZetaPolynomial::zero(), |acc, &(n, d, m)| acc + ZetaPolynomial::monomial(Rational::new(n, d), m.to_vec()))
}

/// Tail-product sums whose values are known as polynomials in single zeta
/// values.
pub fn closed_forms() -> Vec<ClosedForm> {
    let case = |exponents: &[f64], value, tol| ClosedForm { exponents: exponents.to_vec(), value, tol };
    vec![
        case(&[2.0, 2.0], poly(&[(3, 1, &[3]), (-5, 2, &[4])]), 1e-8),
        case(&[3.0, 2.0], poly(&[(2, 1, &[4]), (-1, 1, &[2, 3])]), 1e-8),
        case(&[4.0, 3.0], poly(&[(-5, 6, &[6]), (3, 2, &[3, 3]), (-1, 1, &[3, 4])]), 1e-8),
        case(&[3.0, 3.0], poly(&[(-10, 1, &[5]), (6, 1, &[2, 3]), (-1, 1, &[3, 3])]), 1e-8),
        case(&[2.0, 2.0, 2.0], poly(&[(9, 1, &[2, 3]), (-25, 2, &[5]), (-35, 8, &[6])]), 1e-7),
        case(&[3.0, 2.0, 2.0], poly(&[(7, 6, &[6]), (3, 2, &[3, 3]), (-1, 1, &[2, 2, 3])]), 1e-7),
        case(
            &[3.0, 3.0, 2.0],
            poly(&[(77, 8, &[7]), (3, 1, &[2, 2, 3]), (-10, 1, &[2, 5]), (-1, 1, &[2, 3, 3])]),
            1e-7,
        ),
        case(
            &[2.0, 2.0, 2.0, 2.0],
            poly(&[(-301, 4, &[7]), (10, 1, &[2, 5]), (102, 5, &[2, 2, 3]), (-175, 24, &[8])]),
            1e-6,
        ),
    ]
}

fn label(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(",")
}

fn closed_form_checks(eps: f64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for case in closed_forms() {
        let name = label(&case.exponents);
        let sides = ExponentList::new(case.exponents.clone()).and_then(|list| {
            let lhs = brute_tail_product_sum(&list, eps)?;
            let rhs = case.value.evaluate(eps)?;
            Ok((lhs, rhs))
        });
        out.push(CheckRecord::from_result(format!("closed-form/{name}"), sides, case.tol));

        let sides = ExponentList::new(case.exponents.clone()).and_then(|list| {
            let formula = tail_product_formula(&list)?;
            let lhs = evaluate_formula(&formula, &list, eps)?;
            let rhs = brute_tail_product_sum(&list, eps)?;
            Ok((lhs, rhs))
        });
        out.push(CheckRecord::from_result(format!("formula/{name}"), sides, case.tol));
    }
    out
}

fn proposition_checks(eps: f64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for k in [2.0, 2.5, 3.0] {
        out.push(CheckRecord::from_result(format!("prop-kk1/k={k}"), proposition_kk1(k, eps), 1e-7));
        out.push(CheckRecord::from_result(format!("prop-square/k={k}"), proposition_square(k, eps), 1e-7));
    }
    out
}

fn identity_checks(eps: f64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let sides = mzv_integral(2.0, 1.0, eps).and_then(|l| Ok((l, zeta(3.0, eps)?)));
    out.push(CheckRecord::from_result("integral/2,1".into(), sides, 1e-8));

    for weight in 2..=6 {
        for index in admissible_indices(weight) {
            let name = format!("duality/{index}");
            let sides = duality(&index).and_then(|dual| {
                if duality(&dual)? != index {
                    return Err(Error::domain(format!("duality of {dual} is not {index}")));
                }
                Ok((mzv(&index.to_real(), eps)?, mzv(&dual.to_real(), eps)?))
            });
            out.push(CheckRecord::from_result(name, sides, 1e-8));
        }
    }

    for n in 3..=6 {
        for k in 2..=3u32.min(n - 1) {
            let sides = sum_theorem_identity(n, k).and_then(|id| id.evaluate(eps));
            out.push(CheckRecord::from_result(format!("sum-theorem/n={n},k={k}"), sides, 1e-8));
        }
    }

    for n in 2..=6 {
        let sides = reduce_n1(n).and_then(|p| Ok((mzv(&MzvIndex::new(vec![n as f64, 1.0])?, eps)?, p.evaluate(eps)?)));
        out.push(CheckRecord::from_result(format!("reduce/{n},1"), sides, 1e-8));
    }
    for (m, n) in [(3, 2), (2, 3), (4, 3), (3, 4), (5, 2), (2, 5)] {
        let sides = reduce_double_odd(m, n)
            .and_then(|p| Ok((mzv(&MzvIndex::new(vec![m as f64, n as f64])?, eps)?, p.evaluate(eps)?)));
        out.push(CheckRecord::from_result(format!("reduce/{m},{n}"), sides, 1e-8));
    }
    out
}

/// `k` in {2, 3}, entries uniform in (1.2, 4), resampled until the sum
/// exceeds `k + 1`.
pub fn random_exponent_lists(seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.random_range(2..=3usize);
        let list: Vec<f64> = (0..k).map(|_| rng.random_range(1.2..4.0)).collect();
        if list.iter().sum::<f64>() > k as f64 + 1.0 + 1e-3 {
            out.push(list);
        }
    }
    out
}

/// `r` uniform in (1.5, 4) and `q` in (0, 3), resampled until `r + q > 2.25`.
pub fn random_integral_pairs(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.random_range(1.5..4.0);
        let q = rng.random_range(0.0..3.0);
        if r + q > 2.25 {
            out.push((r, q));
        }
    }
    out
}

fn random_checks(seed: u64, eps: f64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for (i, exps) in random_exponent_lists(seed, RANDOM_KFOLD_CASES).into_iter().enumerate() {
        let sides = ExponentList::new(exps).and_then(|list| {
            let formula = tail_product_formula(&list)?;
            Ok((evaluate_formula(&formula, &list, eps)?, brute_tail_product_sum(&list, eps)?))
        });
        out.push(CheckRecord::from_result(format!("random-kfold/{i:02}"), sides, 1e-6));
    }
    for (i, (r, q)) in random_integral_pairs(seed, RANDOM_INTEGRAL_CASES).into_iter().enumerate() {
        let sides = MzvIndex::new(vec![r, q]).and_then(|index| Ok((mzv_integral(r, q, eps)?, mzv(&index, eps)?)));
        out.push(CheckRecord::from_result(format!("random-integral/{i:02}"), sides, 1e-7));
    }
    out
}

/// Runs a suite; records are ordered by name.
pub fn run_suite(suite: Suite, seed: u64, eps: f64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Known | Suite::All) {
        out.extend(closed_form_checks(eps));
        out.extend(proposition_checks(eps));
        out.extend(identity_checks(eps));
    }
    if matches!(suite, Suite::Random | Suite::All) {
        out.extend(random_checks(seed, eps));
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
