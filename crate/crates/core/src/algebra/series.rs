use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::binomial_z;
use crate::error::{Error, Result};

/// `(d, n)`: curve-class exponents over the divisor directions and the
/// insertion multidegree over the non-divisor variables.
pub type SeriesKey = (Vec<u32>, Vec<u32>);

/// Frontier value for a series with no missing terms inside its box.
pub const COMPLETE: i64 = i64::MAX;

/// Truncation box: `sum(d_i * w_i) <= c1_max` and `|n| <= ins_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub c1_max: u32,
    pub ins_max: u32,
}

/// Truncated series in `q^d * prod y^n / n!`, stored sparsely.
///
/// Everything is computed modulo the truncation ideal: keys outside the box
/// are dropped silently. `exact_ins` records how far the stored coefficients
/// can be trusted in the insertion direction; differentiating in a
/// non-divisor variable pulls the frontier in by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWSeries {
    weights: Vec<u32>,
    nondiv: usize,
    bounds: Bounds,
    exact_ins: i64,
    terms: BTreeMap<SeriesKey, BigRational>,
}

impl GWSeries {
    /// `weights[i]` is the c1-degree of the i-th divisor direction.
    pub fn zero(weights: Vec<u32>, nondiv: usize, bounds: Bounds) -> Self {
        GWSeries { weights, nondiv, bounds, exact_ins: COMPLETE, terms: BTreeMap::new() }
    }

    pub fn constant(weights: Vec<u32>, nondiv: usize, bounds: Bounds, value: BigRational) -> Self {
        let mut s = Self::zero(weights, nondiv, bounds);
        let key = (vec![0; s.weights.len()], vec![0; nondiv]);
        if !value.is_zero() {
            s.terms.insert(key, value);
        }
        s
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.weights.clone(), self.nondiv, self.bounds)
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn divisor_arity(&self) -> usize {
        self.weights.len()
    }

    pub fn nondivisor_arity(&self) -> usize {
        self.nondiv
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn exact_ins(&self) -> i64 {
        self.exact_ins
    }

    pub fn with_exact_ins(mut self, exact_ins: i64) -> Self {
        self.exact_ins = exact_ins;
        self
    }

    pub fn c1_degree(&self, d: &[u32]) -> u64 {
        d.iter().zip(&self.weights).map(|(&a, &w)| a as u64 * w as u64).sum()
    }

    pub fn in_box(&self, d: &[u32], n: &[u32]) -> bool {
        self.c1_degree(d) <= self.bounds.c1_max as u64
            && n.iter().map(|&x| x as u64).sum::<u64>() <= self.bounds.ins_max as u64
    }

    /// Whether the coefficient at `(d, n)` is fully determined.
    pub fn is_exact_at(&self, d: &[u32], n: &[u32]) -> bool {
        self.in_box(d, n) && (n.iter().map(|&x| x as i64).sum::<i64>() <= self.exact_ins)
    }

    fn check_key(&self, d: &[u32], n: &[u32]) -> Result<()> {
        if d.len() != self.weights.len() || n.len() != self.nondiv {
            return Err(Error::ArityMismatch(format!(
                "key ({d:?}, {n:?}) for series with {} divisor and {} non-divisor variables",
                self.weights.len(),
                self.nondiv
            )));
        }
        Ok(())
    }

    /// Adds `value` to the coefficient at `(d, n)`; out-of-box keys are dropped.
    pub fn add_term(&mut self, d: Vec<u32>, n: Vec<u32>, value: BigRational) -> Result<()> {
        self.check_key(&d, &n)?;
        if !self.in_box(&d, &n) || value.is_zero() {
            return Ok(());
        }
        self.accumulate((d, n), value);
        Ok(())
    }

    fn accumulate(&mut self, key: SeriesKey, value: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(value);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, d: &[u32], n: &[u32]) -> BigRational {
        self.terms
            .get(&(d.to_vec(), n.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeriesKey, &BigRational)> {
        self.terms.iter()
    }

    /// Nonzero terms whose coefficients are fully determined.
    pub fn exact_terms(&self) -> impl Iterator<Item = (&SeriesKey, &BigRational)> {
        self.terms.iter().filter(|((d, n), _)| self.is_exact_at(d, n))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// No terms and no truncation: products with it are zero everywhere.
    pub fn is_exactly_zero(&self) -> bool {
        self.terms.is_empty() && self.exact_ins == COMPLETE
    }

    /// Zero on every key where the coefficient is determined.
    pub fn vanishes_on_exact_keys(&self) -> bool {
        self.exact_terms().next().is_none()
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.weights != other.weights || self.nondiv != other.nondiv || self.bounds != other.bounds {
            return Err(Error::ArityMismatch(format!(
                "series shapes differ: ({:?}, {}, {:?}) vs ({:?}, {}, {:?})",
                self.weights, self.nondiv, self.bounds, other.weights, other.nondiv, other.bounds
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.exact_ins = self.exact_ins.min(other.exact_ins);
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.zero_like();
        out.exact_ins = self.exact_ins;
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    /// Divided-power product, truncated to the box.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.zero_like();
        out.exact_ins = self.exact_ins.min(other.exact_ins);
        for ((da, na), va) in &self.terms {
            for ((db, nb), vb) in &other.terms {
                let d: Vec<u32> = da.iter().zip(db).map(|(x, y)| x + y).collect();
                let n: Vec<u32> = na.iter().zip(nb).map(|(x, y)| x + y).collect();
                if !self.in_box(&d, &n) {
                    continue;
                }
                let mut factor = BigInt::one();
                for (&total, &part) in n.iter().zip(na) {
                    factor *= binomial_z(total as i64, part as i64);
                }
                out.accumulate((d, n), va * vb * BigRational::from_integer(factor));
            }
        }
        Ok(out)
    }

    /// Derivative in variable `var` of the basis `T_0, divisors, non-divisors`.
    ///
    /// `T_0` does not occur; divisor variables enter as `exp(d_i y_i)`; a
    /// non-divisor derivative shifts its exponent down by one.
    pub fn partial(&self, var: usize) -> Result<Self> {
        let p = self.weights.len();
        let count = 1 + p + self.nondiv;
        if var >= count {
            return Err(Error::UnknownVariable { var, count });
        }
        let mut out = self.zero_like();
        if var == 0 {
            return Ok(out);
        }
        if var <= p {
            out.exact_ins = self.exact_ins;
            for ((d, n), v) in &self.terms {
                let di = d[var - 1];
                if di != 0 {
                    out.terms.insert((d.clone(), n.clone()), v * BigRational::from_integer(di.into()));
                }
            }
        } else {
            let j = var - 1 - p;
            out.exact_ins = if self.exact_ins == COMPLETE { COMPLETE } else { self.exact_ins - 1 };
            for ((d, n), v) in &self.terms {
                if n[j] > 0 {
                    let mut m = n.clone();
                    m[j] -= 1;
                    out.terms.insert((d.clone(), m), v.clone());
                }
            }
        }
        Ok(out)
    }
}
