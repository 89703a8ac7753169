use super::ideal::Ideal;
use super::monomial::Monomial;

/// Krull dimension of V(I): the size of a largest variable set that no
/// leading monomial of the basis is supported in. Trivial ideals give -1.
pub fn krull_dimension(ideal: &Ideal) -> i64 {
    if ideal.is_trivial() {
        return -1;
    }
    let n = ideal.nvars();
    let lms = ideal.leading_monomials();
    independent_dimension(&lms, n)
}

pub fn independent_dimension(lms: &[Monomial], n: usize) -> i64 {
    let masks: Vec<u64> = lms
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0i64;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as i64;
        if size <= best {
            continue;
        }
        // Independent: no leading monomial lives entirely inside `set`.
        if masks.iter().all(|&m| m & !set != 0) {
            best = size;
        }
    }
    best
}
