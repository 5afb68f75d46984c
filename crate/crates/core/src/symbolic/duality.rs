use super::IntegerIndex;
use crate::error::Result;

/// The duality involution `tau`: partial sums, complement in `{1..n}`,
/// reflection `a -> n + 1 - a`, then back to differences.
pub fn duality(index: &IntegerIndex) -> Result<IntegerIndex> {
    // revalidate: IntegerIndex may have been built by deserialization
    let index = IntegerIndex::new(index.args().to_vec())?;
    let n = index.weight();
    let mut in_set = vec![false; n as usize + 1];
    let mut partial = 0;
    for &a in index.args() {
        partial += a;
        in_set[partial as usize] = true;
    }
    let complement: Vec<u32> = (1..=n).filter(|&a| !in_set[a as usize]).collect();
    // 1 is never a partial sum of an admissible index, so n ends the image
    let reflected: Vec<u32> = complement.iter().rev().map(|&a| n + 1 - a).collect();
    let mut previous = 0;
    let args = reflected
        .into_iter()
        .map(|a| {
            let d = a - previous;
            previous = a;
            d
        })
        .collect();
    IntegerIndex::new(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::admissible_indices;

    fn tau(v: &[u32]) -> Vec<u32> {
        duality(&IntegerIndex::new(v.to_vec()).unwrap()).unwrap().args().to_vec()
    }

    #[test]
    fn examples() {
        assert_eq!(tau(&[2, 1, 2]), vec![2, 3]);
        assert_eq!(tau(&[2]), vec![2]);
        assert_eq!(tau(&[3]), vec![2, 1]);
        assert_eq!(tau(&[2, 1]), vec![3]);
        assert_eq!(tau(&[4]), vec![2, 1, 1]);
    }

    #[test]
    fn involution_preserving_weight() {
        for w in 2..=8 {
            for index in admissible_indices(w) {
                let image = duality(&index).unwrap();
                assert_eq!(image.weight(), w);
                assert_eq!(duality(&image).unwrap(), index);
            }
        }
    }
}
