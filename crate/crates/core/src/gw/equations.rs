use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::algebra::binomial_z;

/// An associativity equation `A(i, j, k, l) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WdvvEquationId {
    pub indices: [usize; 4],
    /// Whether `indices` is the least element of its symmetry class.
    pub canonical: bool,
}

/// `m(m - 1)(m^2 - m + 2) / 8`.
pub fn wdvv_count(m: u64) -> BigInt {
    let m = BigInt::from(m);
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    &m * (&m - &one) * (&m * &m - &m + two) / BigInt::from(8)
}

/// `3 C(m, 4) + m C(m - 1, 2) + C(m, 2)`.
pub fn wdvv_count_binomial(m: u64) -> BigInt {
    let m = m as i64;
    BigInt::from(3) * binomial_z(m, 4) + BigInt::from(m) * binomial_z(m - 1, 2) + binomial_z(m, 2)
}

fn sigma1([i, j, k, l]: [usize; 4]) -> [usize; 4] {
    [k, j, i, l]
}

fn sigma2([i, j, k, l]: [usize; 4]) -> [usize; 4] {
    [l, k, j, i]
}

fn trivial([i, j, k, l]: [usize; 4]) -> bool {
    i == k || j == l || [i, j, k, l].contains(&0)
}

/// Canonical representative of `A(i, j, k, l)` and the sign relating the
/// two, or `None` when the equation is discarded (a repeated index in the
/// first/third or second/fourth slot, or a unit index).
pub fn canonicalize(indices: [usize; 4]) -> Option<(WdvvEquationId, i8)> {
    if trivial(indices) {
        return None;
    }
    let mut seen = vec![(indices, 1i8)];
    let mut stack = vec![(indices, 1i8)];
    while let Some((t, s)) = stack.pop() {
        for (u, su) in [(sigma1(t), -s), (sigma2(t), s)] {
            if !seen.iter().any(|(v, _)| *v == u) {
                seen.push((u, su));
                stack.push((u, su));
            }
        }
    }
    let (least, sign) = seen.into_iter().min_by_key(|(v, _)| *v).expect("orbit is non-empty");
    Some((WdvvEquationId { indices: least, canonical: true }, sign))
}

/// One representative per symmetry class among indices `1..=m`.
pub fn wdvv_canonical_equations(m: usize) -> Vec<WdvvEquationId> {
    let mut out = BTreeSet::new();
    for i in 1..=m {
        for j in 1..=m {
            for k in 1..=m {
                for l in 1..=m {
                    if let Some((id, _)) = canonicalize([i, j, k, l]) {
                        out.insert(id);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}
