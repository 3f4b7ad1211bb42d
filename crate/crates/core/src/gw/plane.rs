use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::binomial_z;
use crate::error::{Error, Result};
use crate::gw::GWTable;
use crate::model::{Builtin, FanoModel};

/// `N_1..=N_dmax` for rational plane curves through `3d - 1` points.
pub fn nd_plane_values(d_max: u32) -> Result<Vec<BigInt>> {
    if d_max < 1 {
        return Err(Error::InvalidBound(format!("d_max must be at least 1, got {d_max}")));
    }
    let mut n: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for d in 2..=d_max as i64 {
        let mut total = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let pair = &n[d1 as usize] * &n[d2 as usize];
            let term = BigInt::from(d1 * d1 * d2 * d2) * binomial_z(3 * d - 4, 3 * d1 - 2)
                - BigInt::from(d1 * d1 * d1 * d2) * binomial_z(3 * d - 4, 3 * d1 - 1);
            total += pair * term;
        }
        n.push(total);
    }
    n.remove(0);
    Ok(n)
}

/// The plane-curve table as a table for the built-in `p2` model.
pub fn nd_plane(d_max: u32) -> Result<GWTable> {
    let values = nd_plane_values(d_max)?;
    let p2 = FanoModel::builtin(Builtin::P2);
    let mut table = GWTable::new(&p2, 3 * d_max);
    for (i, v) in values.into_iter().enumerate() {
        let d = i as u32 + 1;
        table.insert(vec![d], vec![3 * d - 1], v)?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent fixed-width evaluation, summing the split in reverse order.
    fn oracle(d_max: usize) -> Vec<i128> {
        fn c(n: i128, k: i128) -> i128 {
            if n < 0 || k < 0 || k > n {
                return 0;
            }
            (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
        }
        let mut n = vec![0i128, 1];
        for d in 2..=d_max as i128 {
            let mut s = 0i128;
            for d2 in (1..d).rev() {
                let d1 = d - d2;
                s += n[d1 as usize]
                    * n[d2 as usize]
                    * (d1 * d1 * d2 * d2 * c(3 * d - 4, 3 * d1 - 2) - d1 * d1 * d1 * d2 * c(3 * d - 4, 3 * d1 - 1));
            }
            n.push(s);
        }
        n.split_off(1)
    }

    #[test]
    fn published_values() {
        let v = nd_plane_values(6).unwrap();
        let expected = [1u64, 1, 12, 620, 87304, 26312976];
        for (a, b) in v.iter().zip(expected) {
            assert_eq!(a, &BigInt::from(b));
        }
    }

    #[test]
    fn agrees_with_fixed_width_oracle_to_ten() {
        let v = nd_plane_values(10).unwrap();
        let o = oracle(10);
        for (a, b) in v.iter().zip(&o) {
            assert_eq!(a, &BigInt::from(*b));
        }
        assert_eq!(v[6], BigInt::from(14616808192u64));
    }

    #[test]
    fn rejects_zero_bound() {
        assert!(matches!(nd_plane_values(0), Err(Error::InvalidBound(_))));
    }

    #[test]
    fn table_keys() {
        let t = nd_plane(3).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.lookup(&[3], &[8]).unwrap(), BigInt::from(12));
        assert_eq!(t.complete_c1(), 9);
    }
}
