//! Shared index types and the combinatorics behind weak orderings.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest arity accepted by the enumeration routines.
pub const MAX_ARITY: usize = 8;

/// Ordered list of finite real exponents `(i_1, ..., i_k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentList(Vec<f64>);

impl ExponentList {
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::domain("exponent list must be nonempty"));
        }
        if let Some(x) = exponents.iter().find(|x| !x.is_finite()) {
            return Err(Error::domain(format!("exponent {x} is not finite")));
        }
        Ok(ExponentList(exponents))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Checks that the list may be used as tail exponents in a product sum:
    /// every entry exceeds one and the entries sum to more than `k + 1`.
    pub fn check_tail_hypothesis(&self) -> Result<()> {
        let k = self.len();
        if let Some(x) = self.0.iter().find(|&&x| x <= 1.0) {
            return Err(Error::domain(format!("tail exponent {x} must exceed 1")));
        }
        if self.sum() <= k as f64 + 1.0 {
            return Err(Error::domain(format!("exponent sum {} must exceed {}", self.sum(), k + 1)));
        }
        Ok(())
    }
}

impl From<ExponentList> for Vec<f64> {
    fn from(list: ExponentList) -> Self {
        list.0
    }
}

/// Ordered positive parts `(j_1, ..., j_p)` summing to `k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::domain(format!("composition parts must be positive: {parts:?}")));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `j_1! * ... * j_p!`
    pub fn factorial_product(&self) -> BigUint {
        self.0.iter().map(|&j| factorial(j)).product()
    }

    /// Multinomial coefficient `k! / (j_1! ... j_p!)`.
    pub fn multinomial(&self) -> BigUint {
        factorial(self.total()) / self.factorial_product()
    }

    /// Consecutive index ranges `[start, end)` covered by each part.
    pub fn ranges(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.0.iter().scan(0, |start, &j| {
            let r = *start..*start + j;
            *start += j;
            Some(r)
        })
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Argument list of a multiple zeta value `zeta(a_1, ..., a_m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MzvIndex(Vec<f64>);

impl MzvIndex {
    pub fn new(args: Vec<f64>) -> Result<Self> {
        if args.is_empty() {
            return Err(Error::domain("multiple zeta index must be nonempty"));
        }
        if let Some(x) = args.iter().find(|x| !x.is_finite()) {
            return Err(Error::domain(format!("argument {x} is not finite")));
        }
        Ok(MzvIndex(args))
    }

    pub fn args(&self) -> &[f64] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// Absolute convergence of the nested series: `a_1 + ... + a_j > j` for
/// every prefix.
pub fn converges(index: &MzvIndex) -> bool {
    let mut partial = 0.0;
    index.args().iter().enumerate().all(|(j, &a)| {
        partial += a;
        partial > (j + 1) as f64
    })
}

/// Smallest prefix margin `min_j (a_1 + ... + a_j - j)`.
pub(crate) fn convergence_margin(args: &[f64]) -> f64 {
    let mut partial = 0.0;
    args.iter()
        .enumerate()
        .map(|(j, &a)| {
            partial += a;
            partial - (j + 1) as f64
        })
        .fold(f64::INFINITY, f64::min)
}

fn check_arity(k: usize) -> Result<()> {
    if (1..=MAX_ARITY).contains(&k) {
        Ok(())
    } else {
        Err(Error::Bound(format!("k = {k} outside 1..={MAX_ARITY}")))
    }
}

/// All `2^(k-1)` compositions of `k`, in lexicographic order of parts.
pub fn compositions(k: usize) -> Result<Vec<Composition>> {
    check_arity(k)?;
    let mut out = Vec::with_capacity(1 << (k - 1));
    let mut prefix = Vec::with_capacity(k);
    push_compositions(k, &mut prefix, &mut out);
    Ok(out)
}

fn push_compositions(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if rest == 0 {
        out.push(Composition(prefix.clone()));
        return;
    }
    for first in 1..=rest {
        prefix.push(first);
        push_compositions(rest - first, prefix, out);
        prefix.pop();
    }
}

/// Number of weak orderings (ordered set partitions) of `k` items: the
/// ordered Bell / Fubini number.
pub fn weak_ordering_count(k: usize) -> Result<u64> {
    check_arity(k)?;
    // a(n) = sum_{i=1}^{n} C(n, i) a(n - i), a(0) = 1
    let mut a = vec![1u64; k + 1];
    for n in 1..=k {
        a[n] = (1..=n).map(|i| binomial_u64(n, i) * a[n - i]).sum();
    }
    Ok(a[k])
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub(crate) fn binomial_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Result<Vec<Vec<usize>>> {
    check_arity(k)?;
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
