use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::linalg::row_reduce;
use crate::algebra::{to_integer, GradedPoly};
use crate::error::{Error, Result};
use crate::gw::{default_seeds, wdvv_solve};
use crate::model::{Builtin, FanoModel};
use crate::qring::small::{small_ring, SmallElement, SmallRing};

/// Graded quotient `Z[x_1, ..., x_v] / (relations)` with one distinguished
/// deformation variable `q`.
///
/// Normal forms come from per-degree linear elimination: in each degree the
/// span of `monomial * relation` is row-reduced with monomials ordered by
/// increasing power of `q`, then by decreasing exponent vector, so
/// `q`-free monomials are eliminated first.
#[derive(Clone, Debug)]
pub struct PresentationIdeal {
    names: Vec<String>,
    degrees: Vec<u32>,
    q: usize,
    relations: Vec<GradedPoly>,
    /// Degree -> quotient basis monomials at `q = 0`.
    classical_basis: BTreeMap<u32, Vec<Vec<u32>>>,
}

struct DegreeTable {
    columns: Vec<Vec<u32>>,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

/// All exponent vectors of weighted degree `d`.
fn monomials_of_degree(degrees: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left / w[i] {
            cur.push(k);
            rec(w, i + 1, left - k * w[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, d, &mut Vec::new(), &mut out);
    out
}

impl PresentationIdeal {
    /// Builds the presentation and checks that the quotient has `expected_rank`
    /// basis monomials at `q = 0`.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<u32>,
        q: usize,
        relations: Vec<GradedPoly>,
        expected_rank: usize,
    ) -> Result<Self> {
        if names.len() != degrees.len() || q >= degrees.len() || degrees.contains(&0) {
            return Err(Error::ArityMismatch("presentation variables are inconsistent".into()));
        }
        for r in &relations {
            if r.degrees() != degrees.as_slice() {
                return Err(Error::ArityMismatch("relation over a different variable list".into()));
            }
            if r.is_zero() || !r.is_homogeneous() {
                return Err(Error::Residual(format!(
                    "relation {} is not homogeneous",
                    r.format_with(&names.iter().map(String::as_str).collect::<Vec<_>>())
                )));
            }
        }
        let mut p = PresentationIdeal { names, degrees, q, relations, classical_basis: BTreeMap::new() };
        let max_deg = *p.degrees.iter().max().unwrap_or(&1);
        let mut zero_run = 0;
        let mut d = 0;
        let mut total = 0;
        // The quotient vanishes from degree D on once it vanishes on a window
        // as wide as the largest variable degree.
        while zero_run < max_deg {
            let basis = p.classical_basis_in_degree(d);
            total += basis.len();
            if total > expected_rank {
                break;
            }
            zero_run = if basis.is_empty() { zero_run + 1 } else { 0 };
            p.classical_basis.insert(d, basis);
            d += 1;
        }
        if total != expected_rank {
            return Err(Error::RankMismatch { expected: expected_rank, got: total });
        }
        p.classical_basis.retain(|_, b| !b.is_empty());
        Ok(p)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn var(&self, i: usize) -> GradedPoly {
        GradedPoly::var(&self.degrees, i)
    }

    pub fn q(&self) -> GradedPoly {
        self.var(self.q)
    }

    pub fn rank(&self) -> usize {
        self.classical_basis.values().map(Vec::len).sum()
    }

    pub fn classical_basis(&self) -> &BTreeMap<u32, Vec<Vec<u32>>> {
        &self.classical_basis
    }

    pub fn format(&self, p: &GradedPoly) -> String {
        p.format_with(&self.names.iter().map(String::as_str).collect::<Vec<_>>())
    }

    fn column_order(&self, mut cols: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        let q = self.q;
        cols.sort_by(|a, b| a[q].cmp(&b[q]).then_with(|| b.cmp(a)));
        cols
    }

    fn table(&self, d: u32, specialize_q: bool) -> DegreeTable {
        let mut columns = monomials_of_degree(&self.degrees, d);
        if specialize_q {
            columns.retain(|m| m[self.q] == 0);
        }
        let columns = self.column_order(columns);
        let index: BTreeMap<&Vec<u32>, usize> = columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut rows = Vec::new();
        for r in &self.relations {
            let rel = if specialize_q { r.specialize_zero(self.q) } else { r.clone() };
            let Some(rd) = r.homogeneous_degree() else { continue };
            if rd > d || rel.is_zero() {
                continue;
            }
            for m in monomials_of_degree(&self.degrees, d - rd) {
                if specialize_q && m[self.q] > 0 {
                    continue;
                }
                let mut row = vec![BigRational::zero(); columns.len()];
                for (e, c) in rel.terms() {
                    let prod: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    row[index[&prod]] += BigRational::from_integer(c.clone());
                }
                rows.push(row);
            }
        }
        let n = columns.len();
        let red = row_reduce(rows, n);
        let k = red.pivots.len();
        DegreeTable { columns, rows: red.rows.into_iter().take(k).collect(), pivots: red.pivots }
    }

    fn classical_basis_in_degree(&self, d: u32) -> Vec<Vec<u32>> {
        let t = self.table(d, true);
        t.columns.iter().enumerate().filter(|(i, _)| !t.pivots.contains(i)).map(|(_, c)| c.clone()).collect()
    }

    /// Unique representative modulo the ideal in the span of non-pivot monomials.
    pub fn normal_form(&self, p: &GradedPoly) -> Result<GradedPoly> {
        if p.degrees() != self.degrees.as_slice() {
            return Err(Error::ArityMismatch("polynomial over a different variable list".into()));
        }
        let mut by_degree: BTreeMap<u32, Vec<(&Vec<u32>, &BigInt)>> = BTreeMap::new();
        for (e, c) in p.terms() {
            by_degree.entry(p.monomial_degree(e)).or_default().push((e, c));
        }
        let mut out = GradedPoly::zero(&self.degrees);
        for (d, terms) in by_degree {
            let t = self.table(d, false);
            let mut v = vec![BigRational::zero(); t.columns.len()];
            for (e, c) in terms {
                let i = t.columns.iter().position(|x| x == e).expect("monomial of this degree");
                v[i] += BigRational::from_integer(c.clone());
            }
            for (row, &col) in t.rows.iter().zip(&t.pivots) {
                if v[col].is_zero() {
                    continue;
                }
                let f = v[col].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let c = to_integer(c).ok_or_else(|| {
                    Error::Residual(format!("normal form has non-integral coefficient {c} in degree {d}"))
                })?;
                out.add_monomial(t.columns[i].clone(), c);
            }
        }
        Ok(out)
    }

    /// Normal form with `q` set to zero.
    pub fn classical_normal_form(&self, p: &GradedPoly) -> Result<GradedPoly> {
        Ok(self.normal_form(&p.specialize_zero(self.q))?.specialize_zero(self.q))
    }

    pub fn reduces_to_zero(&self, p: &GradedPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

/// `Z[T, q] / (T^{r+1} - q)` with `deg T = 1`, `deg q = r + 1`.
pub fn pr_presentation(r: u32) -> Result<PresentationIdeal> {
    if r < 1 {
        return Err(Error::InvalidBound("r must be at least 1".into()));
    }
    let deg = vec![1, r + 1];
    let t = GradedPoly::var(&deg, 0);
    let q = GradedPoly::var(&deg, 1);
    let rel = &t.pow(r + 1) - &q;
    PresentationIdeal::new(vec!["T".into(), "q".into()], deg, 1, vec![rel], r as usize + 1)
}

/// Result of checking the projective-space presentation against its small ring.
#[derive(Clone, Debug)]
pub struct PrCheck {
    pub ring: SmallRing,
    pub presentation: PresentationIdeal,
    /// `T_1^{*(r+1)}` in the small ring.
    pub power: SmallElement,
    pub rules_hold: bool,
    pub relation_holds: bool,
}

/// Builds the small ring of `P^r` from the associativity solver, checks the
/// two product rules and that `T_1^{*(r+1)} = q T_0`.
pub fn check_pr_small_ring(r: u32) -> Result<PrCheck> {
    let presentation = pr_presentation(r)?;
    let model = FanoModel::builtin(Builtin::Pr(r));
    let table = wdvv_solve(&model, &default_seeds(&model)?, 2 * r)?;
    let ring = small_ring(&model, &table)?;
    let n = r as usize;
    let mut rules_hold = true;
    for i in 0..=n {
        for j in 0..=n {
            let expected =
                if i + j <= n { ring.basis_element(i + j) } else { ring.monomial(vec![1], i + j - n - 1) };
            rules_hold &= ring.product(i, j) == &expected;
        }
    }
    let power = ring.power(1, r + 1);
    let relation_holds = power == ring.monomial(vec![1], 0);
    if !relation_holds {
        return Err(Error::Residual(format!("T1^{} = {} in P^{r}", r + 1, ring.format_element(&power))));
    }
    Ok(PrCheck { ring, presentation, power, rules_hold, relation_holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_presentation() {
        for r in 1..=5 {
            let p = pr_presentation(r).unwrap();
            assert_eq!(p.rank(), r as usize + 1);
            let t = p.var(0);
            assert_eq!(p.normal_form(&t.pow(r + 1)).unwrap(), p.q());
            assert_eq!(p.normal_form(&t.pow(r + 2)).unwrap(), &p.q() * &t);
            assert_eq!(p.normal_form(&t.pow(r)).unwrap(), t.pow(r));
            assert!(p.classical_normal_form(&t.pow(r + 1)).unwrap().is_zero());
        }
    }

    #[test]
    fn projective_small_rings() {
        for r in 1..=4 {
            let c = check_pr_small_ring(r).unwrap();
            assert!(c.rules_hold && c.relation_holds);
        }
    }

    #[test]
    fn wrong_rank_is_rejected() {
        let deg = vec![1, 3];
        let t = GradedPoly::var(&deg, 0);
        let q = GradedPoly::var(&deg, 1);
        let rel = &t.pow(3) - &q;
        let err = PresentationIdeal::new(vec!["T".into(), "q".into()], deg, 1, vec![rel], 4).unwrap_err();
        assert_eq!(err, Error::RankMismatch { expected: 4, got: 3 });
    }
}
