use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::domain::{compositions, factorial, permutations, Composition, ExponentList, MAX_ARITY};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One grouped multiple zeta term `c * zeta(S_1, ..., S_p [- 1])`, where
/// `S_c` is the sum of the exponents at the positions in block `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTerm {
    pub coeff: Rational,
    /// Disjoint, nonempty, sorted 1-based position sets covering `1..=k`.
    pub blocks: Vec<Vec<usize>>,
    /// Subtract one from the last block's sum.
    pub offset_last: bool,
}

impl BlockTerm {
    pub fn composition(&self) -> Composition {
        Composition::new(self.blocks.iter().map(Vec::len).collect()).expect("nonempty blocks")
    }

    /// Arguments of the multiple zeta value for concrete exponents.
    pub fn arguments(&self, exponents: &[f64]) -> Vec<f64> {
        let mut args: Vec<f64> = self.blocks.iter().map(|b| b.iter().map(|&p| exponents[p - 1]).sum()).collect();
        if self.offset_last {
            *args.last_mut().expect("nonempty") -= 1.0;
        }
        args
    }

    /// Renders `zeta(...)` with the given names (or numbers) for positions.
    pub fn render_zeta(&self, names: &[String]) -> String {
        let n = self.blocks.len();
        let parts: Vec<String> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(c, b)| {
                let mut s = b.iter().map(|&p| names[p - 1].as_str()).collect::<Vec<_>>().join("+");
                if self.offset_last && c + 1 == n {
                    s.push_str("-1");
                }
                s
            })
            .collect();
        format!("ζ({})", parts.join(","))
    }
}

/// Closed form of `sum_n prod_j tail(i_j, n)`: the grouped terms minus
/// `prod_j zeta(i_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailFormula {
    pub k: usize,
    pub zeta_terms: Vec<BlockTerm>,
    pub product_coeff: Rational,
    /// Number of `(permutation, composition)` pairs before merging.
    pub pre_merge_pairs: u64,
}

impl TailFormula {
    /// Merged `(arguments, coefficient)` pairs for concrete exponents, with
    /// terms whose arguments coincide numerically combined.
    pub fn instantiate(&self, exponents: &[f64]) -> Vec<(Vec<f64>, Rational)> {
        let mut merged: Vec<(Vec<f64>, Rational)> = Vec::new();
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        for term in &self.zeta_terms {
            let args = term.arguments(exponents);
            let key: Vec<u64> = args.iter().map(|a| a.to_bits()).collect();
            match seen.get(&key) {
                Some(&i) => merged[i].1 += &term.coeff,
                None => {
                    seen.insert(key, merged.len());
                    merged.push((args, term.coeff.clone()));
                }
            }
        }
        merged
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (i, t) in self.zeta_terms.iter().enumerate() {
            if i > 0 {
                out.push_str(if t.coeff.is_negative() { " - " } else { " + " });
            } else if t.coeff.is_negative() {
                out.push('-');
            }
            let c = t.coeff.abs();
            if c != Rational::one() {
                out.push_str(&format!("{c} "));
            }
            out.push_str(&t.render_zeta(names));
        }
        let product: String = names.iter().map(|n| format!("ζ({n})")).collect();
        let c = self.product_coeff.abs();
        out.push_str(if self.product_coeff.is_negative() { " - " } else { " + " });
        if c != Rational::one() {
            out.push_str(&format!("{c} "));
        }
        out.push_str(&product);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FormulaJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let parsed: FormulaJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        parsed.try_into()
    }
}

impl fmt::Display for TailFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.k).map(|p| format!("i{p}")).collect();
        f.write_str(&self.render(&names))
    }
}

/// Wire form:
/// `{"k":k,"terms":[{"coeff":"a/b","blocks":[[...]],"offset_last":true}],"product_coeff":"-1"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormulaJson {
    pub k: usize,
    pub terms: Vec<FormulaTermJson>,
    pub product_coeff: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormulaTermJson {
    pub coeff: Rational,
    pub blocks: Vec<Vec<usize>>,
    pub offset_last: bool,
}

impl From<&TailFormula> for FormulaJson {
    fn from(f: &TailFormula) -> Self {
        FormulaJson {
            k: f.k,
            terms: f
                .zeta_terms
                .iter()
                .map(|t| FormulaTermJson {
                    coeff: t.coeff.clone(),
                    blocks: t.blocks.clone(),
                    offset_last: t.offset_last,
                })
                .collect(),
            product_coeff: f.product_coeff.clone(),
        }
    }
}

impl TryFrom<FormulaJson> for TailFormula {
    type Error = Error;

    fn try_from(j: FormulaJson) -> Result<Self> {
        for t in &j.terms {
            let mut seen: Vec<usize> = t.blocks.iter().flatten().copied().collect();
            seen.sort_unstable();
            if seen != (1..=j.k).collect::<Vec<_>>() || t.blocks.iter().any(Vec::is_empty) {
                return Err(Error::Parse(format!("blocks {:?} do not partition 1..={}", t.blocks, j.k)));
            }
        }
        Ok(TailFormula {
            k: j.k,
            zeta_terms: j
                .terms
                .into_iter()
                .map(|t| BlockTerm { coeff: t.coeff, blocks: t.blocks, offset_last: t.offset_last })
                .collect(),
            product_coeff: j.product_coeff,
            pre_merge_pairs: 0,
        })
    }
}

/// Sums `1/(j_1! ... j_p!) zeta(J(sigma I))` over every permutation `sigma`
/// and composition `J`, merging pairs that group the same positions into the
/// same ordered blocks. Terms come out ordered by composition, then by
/// block content.
pub(crate) fn grouped_terms(k: usize, offset_last: bool) -> Result<(Vec<BlockTerm>, u64)> {
    let perms = permutations(k)?;
    let comps = compositions(k)?;
    let mut pairs = 0u64;
    let mut terms = Vec::new();
    for comp in &comps {
        // block label for each position, keyed to merge identical groupings
        let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
        let ranges: Vec<_> = comp.ranges().collect();
        for sigma in &perms {
            let mut label = vec![0u8; k];
            for (c, range) in ranges.iter().enumerate() {
                for slot in range.clone() {
                    label[sigma[slot]] = c as u8;
                }
            }
            *counts.entry(label).or_insert(0) += 1;
            pairs += 1;
        }
        let weight = Rational::integer(BigInt::from(comp.factorial_product())).recip();
        let mut group: Vec<BlockTerm> = counts
            .into_iter()
            .map(|(label, count)| {
                let mut blocks = vec![Vec::new(); comp.parts().len()];
                for (pos, &c) in label.iter().enumerate() {
                    blocks[c as usize].push(pos + 1);
                }
                BlockTerm { coeff: &Rational::integer(count as i64) * &weight, blocks, offset_last }
            })
            .collect();
        group.sort_by(|a, b| a.blocks.cmp(&b.blocks));
        terms.extend(group);
    }
    Ok((terms, pairs))
}

/// Formula for `sum_n prod_j tail(i_j, n)`, one term per weak ordering of
/// the positions.
pub fn tail_product_formula(exponents: &ExponentList) -> Result<TailFormula> {
    exponents.check_tail_hypothesis()?;
    formula_for_arity(exponents.len())
}

/// The same formula without binding exponent values.
pub fn formula_for_arity(k: usize) -> Result<TailFormula> {
    let (zeta_terms, pre_merge_pairs) = grouped_terms(k, true)?;
    Ok(TailFormula { k, zeta_terms, product_coeff: Rational::integer(-1), pre_merge_pairs })
}

/// Terms of `prod_j zeta(i_j)` as a sum over weak orderings (no offset).
pub fn product_expansion(k: usize) -> Result<Vec<BlockTerm>> {
    Ok(grouped_terms(k, false)?.0)
}

/// Formula for `sum_n tail(r, n)^k`: one term per composition `J` with the
/// multinomial coefficient, blocks taken as consecutive runs. Valid only for
/// all exponents equal to `r`.
pub fn repeated_tail_formula(r: f64, k: usize) -> Result<TailFormula> {
    if !(2..=MAX_ARITY).contains(&k) {
        return Err(Error::domain(format!("repeated tail formula needs 2 <= k <= {MAX_ARITY}, got {k}")));
    }
    if !(r > 1.0 + 1.0 / k as f64) || !r.is_finite() {
        return Err(Error::domain(format!("repeated tail formula needs r > 1 + 1/{k}, got {r}")));
    }
    let zeta_terms = compositions(k)?
        .iter()
        .map(|comp| BlockTerm {
            coeff: Rational::integer(BigInt::from(comp.multinomial())),
            blocks: comp.ranges().map(|range| range.map(|p| p + 1).collect()).collect(),
            offset_last: true,
        })
        .collect();
    let pairs = (factorial(k) * (1u64 << (k - 1))).try_into().unwrap_or(u64::MAX);
    Ok(TailFormula { k, zeta_terms, product_coeff: Rational::integer(-1), pre_merge_pairs: pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::weak_ordering_count;
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_tails() {
        let f = formula_for_arity(2).unwrap();
        assert_eq!(f.zeta_terms.len(), 3);
        assert!(f.zeta_terms.iter().all(|t| t.coeff == Rational::one()));
        assert_eq!(f.render(&names(&["p", "q"])), "ζ(p,q-1) + ζ(q,p-1) + ζ(p+q-1) - ζ(p)ζ(q)");
    }

    #[test]
    fn three_tails() {
        let f = formula_for_arity(3).unwrap();
        assert_eq!(f.zeta_terms.len(), 13);
        assert!(f.zeta_terms.iter().all(|t| t.coeff == Rational::one()));
        let text = f.render(&names(&["p", "q", "r"]));
        for expected in [
            "ζ(p,q,r-1)",
            "ζ(p,r,q-1)",
            "ζ(q,p,r-1)",
            "ζ(q,r,p-1)",
            "ζ(r,p,q-1)",
            "ζ(r,q,p-1)",
            "ζ(p+q,r-1)",
            "ζ(p+r,q-1)",
            "ζ(q+r,p-1)",
            "ζ(p,q+r-1)",
            "ζ(q,p+r-1)",
            "ζ(r,p+q-1)",
            "ζ(p+q+r-1)",
        ] {
            assert!(text.contains(expected), "{expected} missing from {text}");
        }
        assert!(text.ends_with(" - ζ(p)ζ(q)ζ(r)"));
    }

    #[test]
    fn single_tail() {
        let f = formula_for_arity(1).unwrap();
        assert_eq!(f.render(&names(&["p"])), "ζ(p-1) - ζ(p)");
    }

    #[test]
    fn term_count_laws() {
        for k in 1..=6 {
            let f = formula_for_arity(k).unwrap();
            let fact: u64 = (1..=k as u64).product();
            assert_eq!(f.pre_merge_pairs, fact << (k - 1));
            assert_eq!(f.zeta_terms.len() as u64, weak_ordering_count(k).unwrap());
            assert!(f.zeta_terms.iter().all(|t| t.coeff == Rational::one()));
        }
    }

    #[test]
    fn canonical_order() {
        let f = formula_for_arity(3).unwrap();
        let keys: Vec<(Composition, Vec<Vec<usize>>)> =
            f.zeta_terms.iter().map(|t| (t.composition(), t.blocks.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(f.zeta_terms[0].blocks, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(f.zeta_terms[12].blocks, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn repeated_coefficients() {
        let f = repeated_tail_formula(2.0, 2).unwrap();
        let terms = f.instantiate(&[2.0, 2.0]);
        assert_eq!(terms, vec![(vec![2.0, 1.0], Rational::integer(2)), (vec![3.0], Rational::one())]);

        let f = repeated_tail_formula(2.0, 3).unwrap();
        let mut terms = f.instantiate(&[2.0; 3]);
        terms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let expected = vec![(vec![2.0, 2.0, 1.0], 6), (vec![2.0, 3.0], 3), (vec![4.0, 1.0], 3), (vec![5.0], 1)];
        let expected: Vec<_> = expected.into_iter().map(|(a, c)| (a, Rational::integer(c))).collect();
        assert_eq!(terms, expected);

        let f = repeated_tail_formula(2.0, 4).unwrap();
        let mut coeffs: Vec<String> = f.zeta_terms.iter().map(|t| t.coeff.to_string()).collect();
        coeffs.sort();
        let mut want: Vec<String> = ["24", "12", "12", "12", "4", "4", "6", "1"].map(String::from).to_vec();
        want.sort();
        assert_eq!(coeffs, want);
    }

    #[test]
    fn repeated_domain() {
        assert!(repeated_tail_formula(1.5, 2).is_err());
        assert!(repeated_tail_formula(1.4, 3).is_ok());
        assert!(repeated_tail_formula(2.0, 1).is_err());
    }

    #[test]
    fn specialization_matches_general_formula() {
        for k in 2..=5 {
            let r = 2.25;
            let general = formula_for_arity(k).unwrap();
            let special = repeated_tail_formula(r, k).unwrap();
            let mut a = general.instantiate(&vec![r; k]);
            let mut b = special.instantiate(&vec![r; k]);
            a.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            b.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            assert_eq!(a, b, "k = {k}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let f = formula_for_arity(2).unwrap();
        let s = f.to_json();
        assert_eq!(
            s,
            r#"{"k":2,"terms":[{"coeff":"1","blocks":[[1],[2]],"offset_last":true},{"coeff":"1","blocks":[[2],[1]],"offset_last":true},{"coeff":"1","blocks":[[1,2]],"offset_last":true}],"product_coeff":"-1"}"#
        );
        let back = TailFormula::from_json(&s).unwrap();
        assert_eq!(back.to_json(), s);
        assert!(TailFormula::from_json(
            r#"{"k":2,"terms":[{"coeff":"1","blocks":[[1]],"offset_last":true}],"product_coeff":"-1"}"#
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn permutation_invariance(
            exps in prop::collection::vec(1.2f64..4.0, 2..5),
            seed in 0usize..1000,
        ) {
            let k = exps.len();
            let f = formula_for_arity(k).unwrap();
            let perms = permutations(k).unwrap();
            let sigma = &perms[seed % perms.len()];
            let permuted: Vec<f64> = sigma.iter().map(|&i| exps[i]).collect();
            let mut a = f.instantiate(&exps);
            let mut b = f.instantiate(&permuted);
            a.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            b.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            // block sums may associate differently; compare to rounding
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert_eq!(&x.1, &y.1);
                for (u, v) in x.0.iter().zip(&y.0) {
                    prop_assert!((u - v).abs() < 1e-12);
                }
            }
        }
    }
}
