use num_rational::BigRational;
use num_traits::One;

use crate::algebra::GWSeries;
use crate::error::{Error, Result};
use crate::potential::PotentialBundle;

/// Element of the big quantum ring: one series coefficient per basis class.
pub type BigElement = Vec<GWSeries>;

/// Big quantum cohomology: structure constants `T_i * T_j = sum_f (sum_e Phi_ije g^{ef}) T_f`.
#[derive(Clone, Debug)]
pub struct BigRing {
    bundle: PotentialBundle,
    products: Vec<Vec<BigElement>>,
}

pub fn big_product(p: &PotentialBundle, i: usize, j: usize) -> Result<BigElement> {
    p.product_coefficients(i, j)
}

impl BigRing {
    pub fn new(bundle: PotentialBundle) -> Result<Self> {
        let n = bundle.model().rank();
        let mut products = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(big_product(&bundle, i, j)?);
            }
            products.push(row);
        }
        Ok(BigRing { bundle, products })
    }

    pub fn bundle(&self) -> &PotentialBundle {
        &self.bundle
    }

    pub fn rank(&self) -> usize {
        self.products.len()
    }

    pub fn product(&self, i: usize, j: usize) -> Result<&BigElement> {
        let max = self.rank() - 1;
        for x in [i, j] {
            if x > max {
                return Err(Error::IndexOutOfRange { index: x, max });
            }
        }
        Ok(&self.products[i][j])
    }

    pub fn basis_element(&self, i: usize) -> BigElement {
        (0..self.rank())
            .map(|f| if f == i { self.bundle.constant(BigRational::one()) } else { self.bundle.zero() })
            .collect()
    }

    pub fn scalar(&self, s: &GWSeries, x: &BigElement) -> Result<BigElement> {
        x.iter().map(|c| s.mul(c)).collect()
    }

    pub fn add(&self, x: &BigElement, y: &BigElement) -> Result<BigElement> {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    pub fn sub(&self, x: &BigElement, y: &BigElement) -> Result<BigElement> {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    pub fn mul(&self, x: &BigElement, y: &BigElement) -> Result<BigElement> {
        let n = self.rank();
        let mut out = vec![self.bundle.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_exactly_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_exactly_zero() {
                    continue;
                }
                let c = xi.mul(yj)?;
                for (f, pf) in self.products[i][j].iter().enumerate() {
                    if !pf.is_exactly_zero() {
                        out[f] = out[f].add(&c.mul(pf)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(T_i * T_j) * T_k - T_i * (T_j * T_k)`.
    pub fn associator(&self, i: usize, j: usize, k: usize) -> Result<BigElement> {
        let left = self.mul(self.product(i, j)?, &self.basis_element(k))?;
        let right = self.mul(&self.basis_element(i), self.product(j, k)?)?;
        self.sub(&left, &right)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.products[i][j] == self.products[j][i]))
    }

    pub fn has_unit(&self) -> bool {
        (0..self.rank()).all(|j| self.products[0][j] == self.basis_element(j))
    }
}

pub fn big_associator(p: &PotentialBundle, i: usize, j: usize, k: usize) -> Result<BigElement> {
    BigRing::new(p.clone())?.associator(i, j, k)
}

pub fn vanishes(x: &BigElement) -> bool {
    x.iter().all(GWSeries::vanishes_on_exact_keys)
}

/// The cubic `Z^3 - Gamma_111 Z^2 - 2 Gamma_112 Z - Gamma_122` satisfied by
/// `Z = T_1` in the big quantum ring of the plane.
#[derive(Clone, Debug)]
pub struct CubicRelation {
    /// `Gamma_111`, `2 Gamma_112`, `Gamma_122`.
    pub coefficients: [GWSeries; 3],
    /// `T_1^{*3}`.
    pub cube: BigElement,
    /// Value of the cubic at `T_1`.
    pub residual: BigElement,
}

/// Verifies that `T_1` satisfies the cubic relation; fails with
/// [`Error::Residual`] otherwise.
pub fn presentation_from_big(p: &PotentialBundle) -> Result<CubicRelation> {
    let m = p.model();
    if m.rank() != 3 || m.dimension() != 2 || m.divisor_count() != 1 {
        return Err(Error::ArityMismatch(format!("cubic presentation needs the plane, got `{}`", m.name())));
    }
    let ring = BigRing::new(p.clone())?;
    let t1 = ring.basis_element(1);
    let square = ring.product(1, 1)?.clone();
    let cube = ring.mul(&square, &t1)?;
    let g111 = p.gamma_ijk(1, 1, 1)?;
    let g112 = p.gamma_ijk(1, 1, 2)?.scale(&BigRational::from_integer(2.into()));
    let g122 = p.gamma_ijk(1, 2, 2)?;
    let mut residual = ring.sub(&cube, &ring.scalar(&g111, &square)?)?;
    residual = ring.sub(&residual, &ring.scalar(&g112, &t1)?)?;
    residual = ring.sub(&residual, &ring.scalar(&g122, &ring.basis_element(0))?)?;
    if !vanishes(&residual) {
        let bad = residual.iter().position(|s| !s.vanishes_on_exact_keys()).unwrap_or(0);
        return Err(Error::Residual(format!("cubic relation fails in the T{bad} coefficient")));
    }
    Ok(CubicRelation { coefficients: [g111, g112, g122], cube, residual })
}

impl CubicRelation {
    pub fn is_classical(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }
}
