use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{to_integer, GradedPoly};
use crate::error::{Error, Result};
use crate::gw::{gw_invariant, GWTable};
use crate::model::FanoModel;

/// Element of the small quantum ring: a polynomial in `q_1..q_p` per basis class.
pub type SmallElement = Vec<GradedPoly>;

/// Small quantum cohomology over `Z[q_1, ..., q_p]` with `deg q_i` the
/// c1-degree of the i-th effective generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallRing {
    model: FanoModel,
    q_degrees: Vec<u32>,
    products: Vec<Vec<SmallElement>>,
}

pub fn small_ring(model: &FanoModel, table: &GWTable) -> Result<SmallRing> {
    let n = model.rank();
    let qd = model.c1_weights().to_vec();
    let zero = GradedPoly::zero(&qd);
    // Three-point invariants need c1(beta) = sum of codimensions - dim <= 2 dim.
    let classes = model.effective_classes(2 * model.dimension());

    let mut gamma_bar = vec![zero.clone(); n * n * n];
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let mut poly = GradedPoly::constant(&qd, model.triple(i, j, k).clone());
                for beta in &classes {
                    let v = gw_invariant(model, table, beta, &[i, j, k])?;
                    if !v.is_zero() {
                        poly.add_monomial(beta.clone(), v);
                    }
                }
                for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                    gamma_bar[(a * n + b) * n + c] = poly.clone();
                }
            }
        }
    }

    let mut products = vec![vec![vec![zero.clone(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for f in 0..n {
                let mut acc = zero.clone();
                for e in 0..n {
                    let g = model.inverse_pairing(e, f);
                    if g.is_zero() {
                        continue;
                    }
                    let g = integral(g)?;
                    acc = &acc + &gamma_bar[(i * n + j) * n + e].scale(&g);
                }
                products[i][j][f] = acc;
            }
        }
    }
    Ok(SmallRing { model: model.clone(), q_degrees: qd, products })
}

fn integral(g: &BigRational) -> Result<BigInt> {
    to_integer(g).ok_or_else(|| Error::InvalidModel {
        invariant: "unimodular pairing",
        detail: format!("inverse pairing entry {g} is not integral"),
    })
}

impl SmallRing {
    pub fn model(&self) -> &FanoModel {
        &self.model
    }

    pub fn rank(&self) -> usize {
        self.products.len()
    }

    pub fn q_degrees(&self) -> &[u32] {
        &self.q_degrees
    }

    pub fn product(&self, i: usize, j: usize) -> &SmallElement {
        &self.products[i][j]
    }

    pub fn zero(&self) -> SmallElement {
        vec![GradedPoly::zero(&self.q_degrees); self.rank()]
    }

    pub fn basis_element(&self, i: usize) -> SmallElement {
        let mut x = self.zero();
        x[i] = GradedPoly::one(&self.q_degrees);
        x
    }

    /// `q^beta T_f` as an element.
    pub fn monomial(&self, beta: Vec<u32>, f: usize) -> SmallElement {
        let mut x = self.zero();
        x[f] = GradedPoly::monomial(&self.q_degrees, beta, 1);
        x
    }

    pub fn mul(&self, x: &SmallElement, y: &SmallElement) -> SmallElement {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (f, pf) in self.products[i][j].iter().enumerate() {
                    if !pf.is_zero() {
                        out[f] = &out[f] + &(&c * pf);
                    }
                }
            }
        }
        out
    }

    /// `T_i^{*k}`.
    pub fn power(&self, i: usize, k: u32) -> SmallElement {
        let t = self.basis_element(i);
        let mut out = self.basis_element(0);
        for _ in 0..k {
            out = self.mul(&out, &t);
        }
        out
    }

    pub fn associator(&self, i: usize, j: usize, k: usize) -> SmallElement {
        let left = self.mul(self.product(i, j), &self.basis_element(k));
        let right = self.mul(&self.basis_element(i), self.product(j, k));
        left.iter().zip(&right).map(|(a, b)| a - b).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.products[i][j] == self.products[j][i]))
    }

    pub fn has_unit(&self) -> bool {
        (0..self.rank()).all(|j| self.products[0][j] == self.basis_element(j))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.associator(i, j, k).iter().all(GradedPoly::is_zero))))
    }

    /// Every term `q^a T_f` of `T_i * T_j` has total degree `codim T_i + codim T_j`.
    pub fn is_homogeneous(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let target = self.model.codim(i) + self.model.codim(j);
                self.products[i][j].iter().enumerate().all(|(f, p)| {
                    p.terms().all(|(a, _)| p.monomial_degree(a) + self.model.codim(f) == target)
                })
            })
        })
    }

    /// Structure constants at `q = 0`: `cup[i][j][f]`.
    pub fn classical_limit(&self) -> Vec<Vec<Vec<BigInt>>> {
        let zero = vec![0; self.q_degrees.len()];
        self.products
            .iter()
            .map(|row| row.iter().map(|e| e.iter().map(|p| p.coeff(&zero)).collect()).collect())
            .collect()
    }

    /// Cup-product structure constants computed from the classical triple products.
    pub fn cup_product_table(&self) -> Result<Vec<Vec<Vec<BigInt>>>> {
        let n = self.rank();
        let m = &self.model;
        let mut out = vec![vec![vec![BigInt::zero(); n]; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                for (f, slot) in e.iter_mut().enumerate() {
                    let mut s = BigRational::zero();
                    for k in 0..n {
                        s += BigRational::from_integer(m.triple(i, j, k).clone()) * m.inverse_pairing(k, f);
                    }
                    *slot = integral(&s)?;
                }
            }
        }
        Ok(out)
    }

    pub fn format_element(&self, x: &SmallElement) -> String {
        let names: Vec<String> = (1..=self.q_degrees.len())
            .map(|i| if self.q_degrees.len() == 1 { "q".to_string() } else { format!("q{i}") })
            .collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let parts: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(f, p)| {
                let b = &self.model.basis()[f].name;
                if p.len() == 1 && p.coeff(&vec![0; names.len()]) == BigInt::from(1) {
                    b.clone()
                } else {
                    format!("({})*{b}", p.format_with(&names))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
