use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::domain::factorial;
use crate::rational::Rational;

pub(crate) const MAX_INDEX: usize = 64;

struct Tables {
    exact: Vec<Rational>,
    /// `B_m / m!`
    scaled: Vec<f64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0, B_0 = 1
        let mut exact: Vec<Rational> = vec![Rational::one()];
        for m in 1..=MAX_INDEX {
            let mut acc = Rational::zero();
            let mut binom = BigInt::from(1);
            for (j, b) in exact.iter().enumerate() {
                acc += &(&Rational::integer(binom.clone()) * b);
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            exact.push(-(acc * Rational::new(1, m as i64 + 1)));
        }
        let scaled = exact
            .iter()
            .enumerate()
            .map(|(m, b)| (b * &Rational::integer(BigInt::from(factorial(m))).recip()).to_f64())
            .collect();
        Tables { exact, scaled }
    })
}

/// Bernoulli number `B_m` (with `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Rational {
    assert!(m <= MAX_INDEX, "Bernoulli index {m} beyond table");
    tables().exact[m].clone()
}

/// `B_m / m!` as a float.
pub(crate) fn scaled_bernoulli(m: usize) -> f64 {
    tables().scaled[m]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let cases = [
            (0, "1"),
            (1, "-1/2"),
            (2, "1/6"),
            (3, "0"),
            (4, "-1/30"),
            (6, "1/42"),
            (12, "-691/2730"),
            (20, "-174611/330"),
            (30, "8615841276005/14322"),
        ];
        for (m, expected) in cases {
            assert_eq!(bernoulli(m).to_string(), expected, "B_{m}");
        }
        assert!((1..MAX_INDEX / 2).all(|j| bernoulli(2 * j + 1).is_zero()));
    }

    #[test]
    fn scaled_matches_exact() {
        assert!((scaled_bernoulli(2) - 1.0 / 12.0).abs() < 1e-17);
        assert!((scaled_bernoulli(4) + 1.0 / 720.0).abs() < 1e-18);
    }
}
