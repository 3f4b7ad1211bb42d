//! Boundary divisors `D(A, B; beta1, beta2)` of the space of stable maps and
//! the intersection count behind the plane-curve recursion.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::binomial_z;
use crate::error::{Error, Result};
use crate::gw::GWTable;
use crate::potential::beta_splits;

/// A partition `A | B` of the marked points `1..=n` with a class split
/// `beta1 + beta2`. Stored with the lexicographically smaller side
/// `(A, beta1)` first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundaryDatum {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub beta1: Vec<u32>,
    pub beta2: Vec<u32>,
}

impl BoundaryDatum {
    /// Builds the datum in canonical orientation.
    pub fn new(a: Vec<usize>, b: Vec<usize>, beta1: Vec<u32>, beta2: Vec<u32>) -> Self {
        let (mut a, mut b) = (a, b);
        a.sort_unstable();
        b.sort_unstable();
        if (&b, &beta2) < (&a, &beta1) {
            BoundaryDatum { a: b, b: a, beta1: beta2, beta2: beta1 }
        } else {
            BoundaryDatum { a, b, beta1, beta2 }
        }
    }

    /// The side holding marked point `i`, with its class.
    pub fn side_of(&self, i: usize) -> Option<(&[usize], &[u32])> {
        if self.a.contains(&i) {
            Some((&self.a, &self.beta1))
        } else if self.b.contains(&i) {
            Some((&self.b, &self.beta2))
        } else {
            None
        }
    }

    /// The other side from [`side_of`](Self::side_of).
    pub fn opposite_of(&self, i: usize) -> Option<(&[usize], &[u32])> {
        if self.a.contains(&i) {
            Some((&self.b, &self.beta2))
        } else if self.b.contains(&i) {
            Some((&self.a, &self.beta1))
        } else {
            None
        }
    }

    /// Whether the datum satisfies the partition, splitting and stability
    /// conditions for `n` points and class `beta`.
    pub fn is_valid(&self, n: usize, beta: &[u32]) -> bool {
        let mut seen = vec![false; n + 1];
        for &x in self.a.iter().chain(&self.b) {
            if x == 0 || x > n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            return false;
        }
        if self.beta1.len() != beta.len() || self.beta2.len() != beta.len() {
            return false;
        }
        if self.beta1.iter().zip(&self.beta2).zip(beta).any(|((x, y), z)| x + y != *z) {
            return false;
        }
        let zero = |v: &[u32]| v.iter().all(|&x| x == 0);
        !(zero(&self.beta1) && self.a.len() < 2 || zero(&self.beta2) && self.b.len() < 2)
    }
}

impl fmt::Display for BoundaryDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let class = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "D({{{}}},{{{}}};({}),({}))", list(&self.a), list(&self.b), class(&self.beta1), class(&self.beta2))
    }
}

fn check_n(n: usize) {
    assert!(n < 64, "at most 63 marked points are supported, got {n}");
}

fn split_by_mask(n: usize, mask: u64) -> (Vec<usize>, Vec<usize>) {
    (1..=n).partition(|&x| mask >> (x - 1) & 1 == 1)
}

/// Every boundary datum for `n` marked points and class `beta`, once each, sorted.
pub fn enumerate_boundary(n: usize, beta: &[u32]) -> Vec<BoundaryDatum> {
    check_n(n);
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let (a, b) = split_by_mask(n, mask);
        for (b1, b2) in beta_splits(beta) {
            let d = BoundaryDatum { a: a.clone(), b: b.clone(), beta1: b1, beta2: b2 };
            if d.is_valid(n, beta) && (&d.a, &d.beta1) <= (&d.b, &d.beta2) {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}

/// Data of `D(i, j | k, l)`: `i, j` on one side and `k, l` on the other.
/// Marked points are numbered from 1.
pub fn d_sum(n: usize, beta: &[u32], i: usize, j: usize, k: usize, l: usize) -> Result<Vec<BoundaryDatum>> {
    check_n(n);
    let pts = [i, j, k, l];
    if let Some(&bad) = pts.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::IndexOutOfRange { index: bad, max: n });
    }
    for a in 0..4 {
        for b in 0..a {
            if pts[a] == pts[b] {
                return Err(Error::NotDistinct(pts.to_vec()));
            }
        }
    }
    let free: Vec<usize> = (1..=n).filter(|x| !pts.contains(x)).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        let mut a = vec![i, j];
        let mut b = vec![k, l];
        for (bit, &x) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                a.push(x);
            } else {
                b.push(x);
            }
        }
        for (b1, b2) in beta_splits(beta) {
            let d = BoundaryDatum::new(a.clone(), b.clone(), b1, b2);
            if d.is_valid(n, beta) {
                out.push(d);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// One boundary datum meeting the test curve, with its intersection number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub datum: BoundaryDatum,
    pub value: BigInt,
}

/// `#(Y . D(i, j | k, l))` itemized over the data of the sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionSide {
    pub label: String,
    pub contributions: Vec<Contribution>,
    pub total: BigInt,
}

/// Both sides of `D(q, r | s, t) = D(q, s | r, t)` intersected with the test
/// curve `Y` in degree `d` on the plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCounts {
    pub d: u32,
    pub lhs: IntersectionSide,
    pub rhs: IntersectionSide,
}

impl IntersectionCounts {
    pub fn balanced(&self) -> bool {
        self.lhs.total == self.rhs.total
    }
}

/// Number of degree-`d` plane curves through `3d - 1` general points.
fn plane_count(table: &GWTable, d: u32) -> Result<BigInt> {
    table.lookup(&[d], &[3 * d - 1])
}

/// Curves of degree `d` through `points` general points, each line mark
/// choosing one of `d` intersections. `None` unless the curve is rigid.
fn component(table: &GWTable, d: u32, points: usize, lines: usize) -> Result<Option<BigInt>> {
    if points as u32 + 1 != 3 * d {
        return Ok(None);
    }
    Ok(Some(plane_count(table, d)? * BigInt::from(d).pow(lines as u32)))
}

/// Intersection of `Y` with one boundary datum. `Y` fixes marks `q, r` to
/// general lines and every other mark to a general point.
fn contribution(table: &GWTable, datum: &BoundaryDatum, lines: [usize; 2]) -> Result<BigInt> {
    let count = |side: &[usize]| {
        let l = side.iter().filter(|x| lines.contains(x)).count();
        (side.len() - l, l)
    };
    let (pa, la) = count(&datum.a);
    let (pb, lb) = count(&datum.b);
    let (d1, d2) = (datum.beta1[0], datum.beta2[0]);
    // A contracted side maps to one point; only two line marks meet generically.
    let contracted = |p: usize, l: usize| p == 0 && l == 2;
    if d1 == 0 {
        return if contracted(pa, la) { plane_count(table, d2) } else { Ok(BigInt::zero()) };
    }
    if d2 == 0 {
        return if contracted(pb, lb) { plane_count(table, d1) } else { Ok(BigInt::zero()) };
    }
    match (component(table, d1, pa, la)?, component(table, d2, pb, lb)?) {
        // The node goes to any of the d1 d2 intersection points.
        (Some(x), Some(y)) => Ok(x * y * BigInt::from(d1 * d2)),
        _ => Ok(BigInt::zero()),
    }
}

fn side(table: &GWTable, d: u32, label: &str, pts: [usize; 4], lines: [usize; 2]) -> Result<IntersectionSide> {
    let n = 3 * d as usize;
    let mut contributions = Vec::new();
    let mut total = BigInt::zero();
    for datum in d_sum(n, &[d], pts[0], pts[1], pts[2], pts[3])? {
        let value = contribution(table, &datum, lines)?;
        if !value.is_zero() {
            total += &value;
            contributions.push(Contribution { datum, value });
        }
    }
    Ok(IntersectionSide { label: label.to_string(), contributions, total })
}

/// Evaluates both sides for `n = 3d` marks; `q, r, s, t` are the last four.
pub fn intersection_counts(table: &GWTable, d: u32) -> Result<IntersectionCounts> {
    if d < 2 {
        return Err(Error::InvalidBound(format!("degree must be at least 2, got {d}")));
    }
    if table.model().rank() != 3 || table.model().divisor_count() != 1 {
        return Err(Error::ArityMismatch(format!("plane table required, got `{}`", table.model().name())));
    }
    let n = 3 * d as usize;
    let (q, r, s, t) = (n - 3, n - 2, n - 1, n);
    let lhs = side(table, d, "D(q,r|s,t)", [q, r, s, t], [q, r])?;
    let rhs = side(table, d, "D(q,s|r,t)", [q, s, r, t], [q, r])?;
    Ok(IntersectionCounts { d, lhs, rhs })
}

/// Closed forms of both sides from the plane counts alone.
pub fn intersection_formulas(table: &GWTable, d: u32) -> Result<(BigInt, BigInt)> {
    if d < 2 {
        return Err(Error::InvalidBound(format!("degree must be at least 2, got {d}")));
    }
    let mut lhs = plane_count(table, d)?;
    let mut rhs = BigInt::zero();
    let m = 3 * d as i64 - 4;
    for d1 in 1..d {
        let d2 = d - d1;
        let nn = plane_count(table, d1)? * plane_count(table, d2)?;
        let (a, b) = (BigInt::from(d1), BigInt::from(d2));
        lhs += &nn * a.pow(3) * &b * binomial_z(m, 3 * d1 as i64 - 1);
        rhs += &nn * a.pow(2) * b.pow(2) * binomial_z(m, 3 * d1 as i64 - 2);
    }
    Ok((lhs, rhs))
}
