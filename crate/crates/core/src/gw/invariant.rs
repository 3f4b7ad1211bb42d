use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gw::GWTable;
use crate::model::FanoModel;

/// `I_beta(T_{c_1} ... T_{c_n})` for a multiset of basis indices.
///
/// Degree zero gives the classical triple product, the unit kills any
/// positive-degree invariant and divisor insertions are stripped, each
/// contributing its pairing with `beta`. What remains is read from `table`.
pub fn gw_invariant(model: &FanoModel, table: &GWTable, beta: &[u32], classes: &[usize]) -> Result<BigInt> {
    let max = model.rank() - 1;
    if let Some(&bad) = classes.iter().find(|&&c| c > max) {
        return Err(Error::IndexOutOfRange { index: bad, max });
    }
    if beta.len() != model.divisor_count() {
        return Err(Error::ArityMismatch(format!(
            "curve class {beta:?} for a model with {} divisor classes",
            model.divisor_count()
        )));
    }
    if beta.iter().all(|&d| d == 0) {
        return Ok(match classes {
            [i, j, k] => model.triple(*i, *j, *k).clone(),
            _ => BigInt::zero(),
        });
    }
    if classes.contains(&0) {
        return Ok(BigInt::zero());
    }
    let mut factor = BigInt::from(1);
    let mut n = vec![0u32; model.nondivisor_count()];
    for &c in classes {
        if model.is_divisor(c) {
            factor *= beta[c - 1];
        } else {
            n[c - 1 - model.divisor_count()] += 1;
        }
    }
    if factor.is_zero() || !model.is_valid_key(beta, &n) {
        return Ok(BigInt::zero());
    }
    if model.c1_degree(beta) > table.complete_c1() {
        return Err(Error::TableMiss { beta: beta.to_vec(), insertions: n });
    }
    Ok(factor * table.lookup(beta, &n)?)
}
