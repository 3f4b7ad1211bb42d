use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gw::{gw_invariant, GWTable};
use crate::model::FanoModel;
use crate::potential::beta_splits;

/// The `n`-point number `<gamma_1, ..., gamma_n>_beta` with fixed marked
/// points, obtained by splitting after position `k`:
/// `sum_{beta1 + beta2 = beta} sum_{e,f} <gamma_1..gamma_k, T_e>_{beta1} g^{ef} <T_f, gamma_{k+1}..gamma_n>_{beta2}`.
///
/// Three-point numbers are Gromov-Witten invariants; `k` is ignored for them.
/// Longer sides are split again after their second entry.
pub fn fixed_points_number(
    model: &FanoModel,
    table: &GWTable,
    beta: &[u32],
    classes: &[usize],
    k: usize,
) -> Result<BigRational> {
    let n = classes.len();
    if n < 3 {
        return Err(Error::InvalidBound(format!("need at least 3 classes, got {n}")));
    }
    if n == 3 {
        return Ok(BigRational::from_integer(gw_invariant(model, table, beta, classes)?));
    }
    if k < 2 || k + 2 > n {
        return Err(Error::InvalidBound(format!("split position {k} must satisfy 1 < k < {}", n - 1)));
    }
    let rank = model.rank();
    let mut total = BigRational::zero();
    let mut left_classes = classes[..k].to_vec();
    let mut right_classes = Vec::with_capacity(n - k + 1);
    for (b1, b2) in beta_splits(beta) {
        for e in 0..rank {
            left_classes.push(e);
            let left = fixed_points_number(model, table, &b1, &left_classes, 2)?;
            left_classes.pop();
            if left.is_zero() {
                continue;
            }
            for f in 0..rank {
                let g = model.inverse_pairing(e, f);
                if g.is_zero() {
                    continue;
                }
                right_classes.clear();
                right_classes.push(f);
                right_classes.extend_from_slice(&classes[k..]);
                let right = fixed_points_number(model, table, &b2, &right_classes, 2)?;
                total += &left * g * right;
            }
        }
    }
    Ok(total)
}
