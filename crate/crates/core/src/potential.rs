//! The quantum potential and its third derivatives, the associativity
//! brackets and their residuals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{to_integer, Bounds, GWSeries, COMPLETE};
use crate::error::{Error, Result};
use crate::gw::{gw_invariant, GWTable};
use crate::model::FanoModel;

/// `Gamma` together with every `Phi_ijk = c_ijk + d_i d_j d_k Gamma`.
#[derive(Clone, Debug)]
pub struct PotentialBundle {
    model: FanoModel,
    bounds: Bounds,
    gamma: GWSeries,
    phi: BTreeMap<[usize; 3], GWSeries>,
}

/// Largest insertion degree any invariant within `c1_max` can carry.
pub fn natural_ins_max(model: &FanoModel, c1_max: u32) -> u32 {
    model
        .effective_classes(c1_max)
        .iter()
        .flat_map(|b| model.insertion_keys(b))
        .map(|n| n.iter().sum::<u32>())
        .max()
        .unwrap_or(0)
}

/// Default box: everything through `c1_max`, nothing truncated in the
/// insertion direction.
pub fn full_bounds(model: &FanoModel, c1_max: u32) -> Bounds {
    Bounds { c1_max, ins_max: natural_ins_max(model, c1_max) }
}

pub fn empty_series(model: &FanoModel, bounds: Bounds) -> GWSeries {
    GWSeries::zero(model.c1_weights().to_vec(), model.nondivisor_count(), bounds)
}

/// `Gamma` with coefficients taken verbatim from `table`.
pub fn gamma_series(model: &FanoModel, table: &GWTable, bounds: Bounds) -> Result<GWSeries> {
    if table.model() != model {
        return Err(Error::ArityMismatch(format!(
            "table for `{}` used with model `{}`",
            table.model().name(),
            model.name()
        )));
    }
    if table.complete_c1() < bounds.c1_max {
        return Err(Error::InvalidBound(format!(
            "table is complete through c1-degree {} but the series needs {}",
            table.complete_c1(),
            bounds.c1_max
        )));
    }
    let mut g = empty_series(model, bounds);
    for (beta, n, v) in table.entries() {
        g.add_term(beta.clone(), n.clone(), BigRational::from_integer(v.clone()))?;
    }
    let exact = if bounds.ins_max >= natural_ins_max(model, bounds.c1_max) {
        COMPLETE
    } else {
        bounds.ins_max as i64
    };
    Ok(g.with_exact_ins(exact))
}

pub fn build_potential(model: &FanoModel, table: &GWTable, bounds: Bounds) -> Result<PotentialBundle> {
    let gamma = gamma_series(model, table, bounds)?;
    PotentialBundle::from_gamma(model, gamma)
}

fn check_index(model: &FanoModel, i: usize) -> Result<()> {
    if i >= model.rank() {
        return Err(Error::IndexOutOfRange { index: i, max: model.rank() - 1 });
    }
    Ok(())
}

impl PotentialBundle {
    pub fn from_gamma(model: &FanoModel, gamma: GWSeries) -> Result<Self> {
        if gamma.weights() != model.c1_weights() || gamma.nondivisor_arity() != model.nondivisor_count() {
            return Err(Error::ArityMismatch("series does not match the model".into()));
        }
        let bounds = gamma.bounds();
        let n = model.rank();
        let mut phi = BTreeMap::new();
        let mut first = Vec::with_capacity(n);
        for i in 0..n {
            first.push(gamma.partial(i)?);
        }
        for i in 0..n {
            for j in i..n {
                let second = first[i].partial(j)?;
                for k in j..n {
                    let third = second.partial(k)?;
                    let classical = GWSeries::constant(
                        model.c1_weights().to_vec(),
                        model.nondivisor_count(),
                        bounds,
                        BigRational::from_integer(model.triple(i, j, k).clone()),
                    );
                    phi.insert([i, j, k], classical.add(&third)?);
                }
            }
        }
        Ok(PotentialBundle { model: model.clone(), bounds, gamma, phi })
    }

    pub fn model(&self) -> &FanoModel {
        &self.model
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn gamma(&self) -> &GWSeries {
        &self.gamma
    }

    pub fn zero(&self) -> GWSeries {
        empty_series(&self.model, self.bounds)
    }

    pub fn constant(&self, c: BigRational) -> GWSeries {
        GWSeries::constant(self.model.c1_weights().to_vec(), self.model.nondivisor_count(), self.bounds, c)
    }

    pub fn phi(&self, i: usize, j: usize, k: usize) -> Result<&GWSeries> {
        for x in [i, j, k] {
            check_index(&self.model, x)?;
        }
        let mut key = [i, j, k];
        key.sort_unstable();
        Ok(&self.phi[&key])
    }

    /// `Gamma_ijk`, the third derivative without the classical part.
    pub fn gamma_ijk(&self, i: usize, j: usize, k: usize) -> Result<GWSeries> {
        self.gamma.partial(i)?.partial(j)?.partial(k)
    }

    /// `sum_e Phi_ije g^{ef}` for each `f`: the coefficients of `T_i * T_j`.
    pub fn product_coefficients(&self, i: usize, j: usize) -> Result<Vec<GWSeries>> {
        let n = self.model.rank();
        let mut out = vec![self.zero(); n];
        for e in 0..n {
            let p = self.phi(i, j, e)?;
            if p.is_exactly_zero() {
                continue;
            }
            for (f, slot) in out.iter_mut().enumerate() {
                let g = self.model.inverse_pairing(e, f);
                if !g.is_zero() {
                    *slot = slot.add(&p.scale(g))?;
                }
            }
        }
        Ok(out)
    }
}

/// `F(i, j | k, l) = sum_{e,f} Phi_ije g^{ef} Phi_fkl`.
pub fn f_bracket(p: &PotentialBundle, i: usize, j: usize, k: usize, l: usize) -> Result<GWSeries> {
    let left = p.product_coefficients(i, j)?;
    let mut total = p.zero();
    for (f, coef) in left.iter().enumerate() {
        if coef.is_exactly_zero() {
            continue;
        }
        let right = p.phi(f, k, l)?;
        if right.is_exactly_zero() {
            continue;
        }
        total = total.add(&coef.mul(right)?)?;
    }
    Ok(total)
}

/// `A(i, j, k, l) = F(i, j | k, l) - F(j, k | i, l)`.
pub fn wdvv_residual(p: &PotentialBundle, i: usize, j: usize, k: usize, l: usize) -> Result<GWSeries> {
    f_bracket(p, i, j, k, l)?.sub(&f_bracket(p, j, k, i, l)?)
}

/// `G(q, r | s, t)` for insertions `classes` in class `beta`; positions are
/// zero-based indices into `classes`.
pub fn g_bracket(
    model: &FanoModel,
    table: &GWTable,
    beta: &[u32],
    classes: &[usize],
    [q, r, s, t]: [usize; 4],
) -> Result<BigInt> {
    let n = classes.len();
    if n < 4 {
        return Err(Error::InvalidBound(format!("need at least 4 insertions, got {n}")));
    }
    let pos = [q, r, s, t];
    if let Some(&bad) = pos.iter().find(|&&x| x >= n) {
        return Err(Error::IndexOutOfRange { index: bad, max: n - 1 });
    }
    for a in 0..4 {
        for b in 0..a {
            if pos[a] == pos[b] {
                return Err(Error::NotDistinct(pos.to_vec()));
            }
        }
    }
    let free: Vec<usize> = (0..n).filter(|x| !pos.contains(x)).collect();
    let splits = beta_splits(beta);
    let rank = model.rank();
    let mut total = BigRational::zero();
    for mask in 0u64..(1 << free.len()) {
        let mut a_side = vec![classes[q], classes[r]];
        let mut b_side = vec![classes[s], classes[t]];
        for (bit, &x) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                a_side.push(classes[x]);
            } else {
                b_side.push(classes[x]);
            }
        }
        for (b1, b2) in &splits {
            for e in 0..rank {
                a_side.push(e);
                let left = gw_invariant(model, table, b1, &a_side)?;
                a_side.pop();
                if left.is_zero() {
                    continue;
                }
                for f in 0..rank {
                    let g = model.inverse_pairing(e, f);
                    if g.is_zero() {
                        continue;
                    }
                    b_side.push(f);
                    let right = gw_invariant(model, table, b2, &b_side)?;
                    b_side.pop();
                    total += g * BigRational::from_integer(&left * right);
                }
            }
        }
    }
    to_integer(&total).ok_or_else(|| Error::NonIntegral {
        beta: beta.to_vec(),
        insertions: classes.iter().map(|&c| c as u32).collect(),
        value: total.to_string(),
    })
}

/// All `(beta1, beta2)` with `beta1 + beta2 = beta`, both effective.
pub fn beta_splits(beta: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &d in beta {
        let mut next = Vec::new();
        for (a, b) in &out {
            for x in 0..=d {
                let mut a2 = a.clone();
                let mut b2 = b.clone();
                a2.push(x);
                b2.push(d - x);
                next.push((a2, b2));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::gw::nd_plane;
    use crate::model::Builtin;

    fn plane(d: u32) -> PotentialBundle {
        let m = FanoModel::builtin(Builtin::P2);
        let t = nd_plane(d).unwrap();
        build_potential(&m, &t, full_bounds(&m, 3 * d)).unwrap()
    }

    #[test]
    fn gamma_coefficients_are_invariants() {
        let p = plane(3);
        assert_eq!(p.gamma().coeff(&[1], &[2]), rat(1));
        assert_eq!(p.gamma().coeff(&[3], &[8]), rat(12));
        assert_eq!(p.gamma_ijk(1, 1, 2).unwrap().coeff(&[2], &[4]), rat(4));
        assert_eq!(p.gamma_ijk(2, 2, 2).unwrap().coeff(&[2], &[2]), rat(1));
        assert_eq!(p.gamma().exact_ins(), COMPLETE);
    }

    #[test]
    fn empty_table_gives_classical_phi() {
        let m = FanoModel::builtin(Builtin::P2);
        let t = GWTable::new(&m, 6);
        let p = build_potential(&m, &t, full_bounds(&m, 6)).unwrap();
        assert!(p.gamma().is_zero());
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let c = BigRational::from_integer(m.triple(i, j, k).clone());
                    assert_eq!(p.phi(i, j, k).unwrap(), &p.constant(c));
                }
            }
        }
    }

    #[test]
    fn bound_mismatch() {
        let m = FanoModel::builtin(Builtin::P2);
        let t = nd_plane(2).unwrap();
        assert!(matches!(build_potential(&m, &t, full_bounds(&m, 9)), Err(Error::InvalidBound(_))));
        let q3 = FanoModel::builtin(Builtin::Q3);
        assert!(build_potential(&q3, &t, full_bounds(&q3, 3)).is_err());
    }

    #[test]
    fn plane_identities() {
        let p = plane(5);
        let r = wdvv_residual(&p, 1, 1, 2, 2).unwrap();
        assert!(r.is_zero());
        let f = f_bracket(&p, 1, 1, 2, 2).unwrap().sub(&f_bracket(&p, 1, 2, 1, 2).unwrap()).unwrap();
        assert!(f.is_zero());
        // Gamma_222 = Gamma_112^2 - Gamma_111 Gamma_122
        let g = |i, j, k| p.gamma_ijk(i, j, k).unwrap();
        let rhs = g(1, 1, 2).mul(&g(1, 1, 2)).unwrap().sub(&g(1, 1, 1).mul(&g(1, 2, 2)).unwrap()).unwrap();
        assert_eq!(g(2, 2, 2), rhs);
    }

    #[test]
    fn unit_contraction() {
        let p = plane(3);
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let f = f_bracket(&p, 0, j, k, l).unwrap();
                    assert_eq!(f.coeff(&[0], &[0]), rat(p.model().triple(j, k, l).clone()));
                }
                assert_eq!(p.phi(0, j, k).unwrap(), &p.constant(rat(p.model().pairing(j, k).clone())));
            }
        }
    }

    #[test]
    fn residual_sign_rules() {
        let p = plane(4);
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    assert!(wdvv_residual(&p, i, j, i, l).unwrap().is_zero());
                    for k in 0..3 {
                        let a = wdvv_residual(&p, i, j, k, l).unwrap();
                        let b = wdvv_residual(&p, k, j, i, l).unwrap();
                        assert_eq!(a, b.neg());
                    }
                }
            }
        }
    }

    #[test]
    fn truncated_frontier() {
        let m = FanoModel::builtin(Builtin::P2);
        let t = nd_plane(3).unwrap();
        let p = build_potential(&m, &t, Bounds { c1_max: 9, ins_max: 6 }).unwrap();
        assert_eq!(p.gamma().exact_ins(), 6);
        let r = wdvv_residual(&p, 1, 1, 2, 2).unwrap();
        assert!(r.vanishes_on_exact_keys());
        assert!(r.exact_ins() < 6);
    }

    #[test]
    fn g_bracket_degree_two() {
        let m = FanoModel::builtin(Builtin::P2);
        let t = nd_plane(2).unwrap();
        let classes = [1, 1, 2, 2, 2, 2];
        let qrst = g_bracket(&m, &t, &[2], &classes, [0, 1, 2, 3]).unwrap();
        let qsrt = g_bracket(&m, &t, &[2], &classes, [0, 2, 1, 3]).unwrap();
        assert_eq!(qrst, BigInt::from(2));
        assert_eq!(qsrt, BigInt::from(2));
        assert!(g_bracket(&m, &t, &[2], &classes, [0, 0, 1, 2]).is_err());
    }

    #[test]
    fn g_bracket_degree_zero() {
        let m = FanoModel::builtin(Builtin::P2);
        let t = nd_plane(1).unwrap();
        let classes = [1, 1, 0, 0];
        let a = g_bracket(&m, &t, &[0], &classes, [0, 1, 2, 3]).unwrap();
        let b = g_bracket(&m, &t, &[0], &classes, [1, 2, 0, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, BigInt::from(1));
    }
}
