use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::linalg::row_reduce;
use crate::algebra::{to_integer, Bounds, GWSeries};
use crate::error::{Error, Result};
use crate::gw::{wdvv_canonical_equations, GWTable, WdvvEquationId};
use crate::model::FanoModel;
use crate::potential::{empty_series, natural_ins_max, wdvv_residual, PotentialBundle};

/// Seeds known for the built-in models: the count of lines (or rulings)
/// through the appropriate number of points.
pub fn default_seeds(model: &FanoModel) -> Result<GWTable> {
    let mut t = GWTable::new(model, 0);
    let name = model.name();
    let q = model.nondivisor_count();
    match name {
        "q3" => t.insert(vec![1], vec![1, 1], 1.into())?,
        "p1xp1" => {
            t.insert(vec![1, 0], vec![1], 1.into())?;
            t.insert(vec![0, 1], vec![1], 1.into())?;
        }
        _ if name.starts_with('p') && name[1..].parse::<u32>().is_ok() => {
            // lines through two points; for the projective line, the 0-point count
            let mut n = vec![0; q];
            if q > 0 {
                n[q - 1] = 2;
            }
            t.insert(vec![1], n, 1.into())?;
        }
        _ => return Err(Error::UnknownModel(format!("no default seeds for `{name}`"))),
    }
    Ok(t)
}

type Known = BTreeMap<(Vec<u32>, Vec<u32>), BigInt>;

fn series_from(model: &FanoModel, bounds: Bounds, known: &Known) -> Result<GWSeries> {
    let mut g = empty_series(model, bounds);
    for ((b, n), v) in known {
        g.add_term(b.clone(), n.clone(), BigRational::from_integer(v.clone()))?;
    }
    Ok(g)
}

fn residuals(model: &FanoModel, gamma: GWSeries, eqs: &[WdvvEquationId]) -> Result<Vec<GWSeries>> {
    let p = PotentialBundle::from_gamma(model, gamma)?;
    eqs.iter()
        .map(|e| {
            let [i, j, k, l] = e.indices;
            wdvv_residual(&p, i, j, k, l)
        })
        .collect()
}

/// Reverse-lexicographic comparison key: later variables dominate.
fn revlex(n: &[u32]) -> Vec<u32> {
    n.iter().rev().copied().collect()
}

/// Determines every invariant of class with c1-degree at most `c1_max`
/// from `seeds` and the associativity equations.
///
/// Classes are processed in increasing c1-degree. At each class the
/// coefficient equations are affine in that class's unknowns; the full
/// system is row-reduced, so every equation beyond those used for pivots
/// serves as a consistency check.
pub fn wdvv_solve(model: &FanoModel, seeds: &GWTable, c1_max: u32) -> Result<GWTable> {
    if seeds.model() != model {
        return Err(Error::ArityMismatch("seed table belongs to a different model".into()));
    }
    let eqs = wdvv_canonical_equations(model.rank() - 1);
    let mut known = Known::new();
    for (b, n, v) in seeds.entries() {
        if model.c1_degree(b) <= c1_max {
            known.insert((b.clone(), n.clone()), v.clone());
        }
    }

    for beta in model.effective_classes(c1_max) {
        let level = model.c1_degree(&beta);
        let mut unknowns: Vec<Vec<u32>> = model
            .insertion_keys(&beta)
            .into_iter()
            .filter(|n| !known.contains_key(&(beta.clone(), n.clone())))
            .collect();
        unknowns.sort_by_key(|n| revlex(n));
        let bounds = Bounds { c1_max: level, ins_max: natural_ins_max(model, level) };
        let constant = residuals(model, series_from(model, bounds, &known)?, &eqs)?;
        let mut linear = Vec::with_capacity(unknowns.len());
        for u in &unknowns {
            let mut g = empty_series(model, bounds);
            g.add_term(beta.clone(), u.clone(), BigRational::one())?;
            linear.push(residuals(model, g, &eqs)?);
        }

        // One row per (equation, coefficient key of class beta).
        let mut rows = Vec::new();
        for (e, c) in constant.iter().enumerate() {
            let mut keys: Vec<&Vec<u32>> = c.terms().filter(|((d, _), _)| *d == beta).map(|((_, n), _)| n).collect();
            for l in &linear {
                keys.extend(l[e].terms().filter(|((d, _), _)| *d == beta).map(|((_, n), _)| n));
            }
            keys.sort();
            keys.dedup();
            for n in keys {
                let mut row: Vec<BigRational> = linear.iter().map(|l| l[e].coeff(&beta, n)).collect();
                row.push(-c.coeff(&beta, n));
                rows.push(row);
            }
        }
        let nu = unknowns.len();
        let red = row_reduce(rows, nu);
        for (r, row) in red.rows.iter().enumerate() {
            if r >= red.pivots.len() && !row[nu].is_zero() {
                return Err(Error::Inconsistent(format!(
                    "associativity equations for class {beta:?} have no solution"
                )));
            }
        }
        if let Some(missing) = (0..nu).find(|c| !red.pivots.contains(c)) {
            return Err(Error::NoSolvableEquation { beta: beta.clone(), insertions: unknowns[missing].clone() });
        }
        for (r, &col) in red.pivots.iter().enumerate() {
            let v = &red.rows[r][nu];
            let n = unknowns[col].clone();
            let int = to_integer(v).ok_or_else(|| Error::NonIntegral {
                beta: beta.clone(),
                insertions: n.clone(),
                value: v.to_string(),
            })?;
            if int.is_negative() {
                return Err(Error::Inconsistent(format!("negative value {int} for class {beta:?}, insertions {n:?}")));
            }
            known.insert((beta.clone(), n), int);
        }
    }

    let mut table = GWTable::new(model, c1_max);
    for ((b, n), v) in known {
        table.insert(b, n, v)?;
    }
    Ok(table)
}
