use std::fmt;

use serde::{Deserialize, Serialize};

use crate::domain::MzvIndex;
use crate::error::{Error, Result};

/// Admissible integer index: all entries positive, the first at least 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntegerIndex(Vec<u32>);

impl IntegerIndex {
    pub fn new(args: Vec<u32>) -> Result<Self> {
        match args.first() {
            None => Err(Error::domain("index must be nonempty")),
            Some(&first) if first < 2 => {
                Err(Error::domain(format!("index {args:?} is not admissible: first entry < 2")))
            }
            _ if args.contains(&0) => Err(Error::domain(format!("index {args:?} has a zero entry"))),
            _ => Ok(IntegerIndex(args)),
        }
    }

    pub fn args(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn to_real(&self) -> MzvIndex {
        MzvIndex::new(self.0.iter().map(|&a| a as f64).collect()).expect("nonempty")
    }
}

impl fmt::Display for IntegerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All admissible indices of the given weight, in lexicographic order.
pub fn admissible_indices(weight: u32) -> Vec<IntegerIndex> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<IntegerIndex>) {
        if rest == 0 {
            out.push(IntegerIndex(prefix.clone()));
            return;
        }
        let lo = if prefix.is_empty() { 2 } else { 1 };
        for a in lo..=rest {
            prefix.push(a);
            rec(rest - a, prefix, out);
            prefix.pop();
        }
    }
    if weight >= 2 {
        rec(weight, &mut prefix, &mut out);
    }
    out
}
