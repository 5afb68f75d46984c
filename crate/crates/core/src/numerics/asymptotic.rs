//! Large-`m` expansions of nested tail sums.
//!
//! A tail `T(m) = sum_{n > m} g(n)` whose summand has an expansion in pure
//! powers of `n` again has such an expansion in `m`, obtained term by term
//! from the Euler-Maclaurin expansion of the Hurwitz tail
//! `H(s, m) = sum_{n > m} n^-s`. No logarithms appear as long as every
//! exponent stays above one, which is exactly the convergence condition for
//! nested sums.

use super::bernoulli::scaled_bernoulli;

/// `value(m) ~ m^-decay * sum_t coeffs[t] * m^-t`
#[derive(Debug, Clone)]
pub(crate) struct Expansion {
    pub decay: f64,
    pub coeffs: Vec<f64>,
}

/// Coefficients `c_l(s)` with `H(s, m) ~ m^(1-s) sum_l c_l(s) m^-l`.
pub(crate) fn hurwitz_coefficients(s: f64, order: usize) -> Vec<f64> {
    let mut c = vec![0.0; order + 1];
    c[0] = 1.0 / (s - 1.0);
    if order >= 1 {
        c[1] = -0.5;
    }
    // rising factorial (s)_{2l-1}
    let mut rising = s;
    let mut l = 2;
    while l <= order {
        c[l] = scaled_bernoulli(l) * rising;
        rising *= (s + l as f64 - 1.0) * (s + l as f64);
        l += 2;
    }
    c
}

impl Expansion {
    pub fn hurwitz(s: f64, order: usize) -> Self {
        Expansion { decay: s - 1.0, coeffs: hurwitz_coefficients(s, order) }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Expansion of `sum_{n > m} n^-s * self(n)`.
    pub fn weighted_tail(&self, s: f64) -> Self {
        let order = self.order();
        let mut out = vec![0.0; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let c = hurwitz_coefficients(s + self.decay + i as f64, order - i);
            for (l, &cl) in c.iter().enumerate() {
                out[i + l] += a * cl;
            }
        }
        Expansion { decay: self.decay + s - 1.0, coeffs: out }
    }

    pub fn product(&self, other: &Expansion) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![0.0; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, &b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Expansion { decay: self.decay + other.decay, coeffs: out }
    }

    /// Evaluates at `m`, keeping all but the last two orders; the omitted
    /// orders give the truncation estimate.
    pub fn eval(&self, m: f64) -> (f64, f64) {
        let order = self.order();
        let lead = m.powf(-self.decay);
        let inv = 1.0 / m;
        let mut value = 0.0;
        let mut omitted = 0.0;
        let mut scale = lead;
        for (t, &a) in self.coeffs.iter().enumerate() {
            let term = a * scale;
            if t + 2 <= order {
                value += term;
            } else {
                omitted += term.abs();
            }
            scale *= inv;
        }
        (value, 4.0 * omitted)
    }
}
