use std::collections::HashMap;

use num_bigint::BigInt;

use crate::algebra::{binomial_z, GradedPoly};
use crate::error::{Error, Result};
use crate::qring::presentation::PresentationIdeal;

/// `S_r(sigma) = det(sigma_{1+j-i})_{1 <= i,j <= r}` for `Gr(p, n)`, as a
/// polynomial in `sigma_1..sigma_k` (`k = n - p`, `deg sigma_i = i`).
pub fn s_r_determinant(p: u32, n: u32, r: u32) -> Result<GradedPoly> {
    if p < 1 || p >= n {
        return Err(Error::InvalidBound(format!("need 1 <= p < n, got p={p}, n={n}")));
    }
    let k = (n - p) as usize;
    let degrees: Vec<u32> = (1..=k as u32).collect();
    Ok(jacobi_trudi(&degrees, r as usize))
}

fn sigma(degrees: &[u32], i: i64) -> GradedPoly {
    let k = degrees.len() as i64;
    match i {
        0 => GradedPoly::one(degrees),
        1.. if i <= k => GradedPoly::var(degrees, i as usize - 1),
        _ => GradedPoly::zero(degrees),
    }
}

/// Laplace expansion along rows, memoized on the set of used columns.
fn jacobi_trudi(degrees: &[u32], r: usize) -> GradedPoly {
    fn expand(
        degrees: &[u32],
        r: usize,
        used: u32,
        memo: &mut HashMap<u32, GradedPoly>,
    ) -> GradedPoly {
        let row = used.count_ones() as usize;
        if row == r {
            return GradedPoly::one(degrees);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = GradedPoly::zero(degrees);
        let mut free_before = 0;
        for col in 0..r {
            if used >> col & 1 == 1 {
                continue;
            }
            let entry = sigma(degrees, 1 + col as i64 - row as i64);
            if !entry.is_zero() {
                let minor = expand(degrees, r, used | 1 << col, memo);
                let term = &entry * &minor;
                acc = if free_before % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    expand(degrees, r, 0, &mut HashMap::new())
}

/// Presentation of the small quantum ring of `Gr(p, n)`:
/// `Z[sigma_1..sigma_k, q] / (S_{p+1}, ..., S_{n-1}, S_n + (-1)^k q)`.
#[derive(Clone, Debug)]
pub struct Grassmannian {
    pub p: u32,
    pub n: u32,
    ideal: PresentationIdeal,
}

pub fn grassmannian_presentation(p: u32, n: u32) -> Result<Grassmannian> {
    if p < 1 || p >= n {
        return Err(Error::InvalidBound(format!("need 1 <= p < n, got p={p}, n={n}")));
    }
    let k = n - p;
    if p * k > 6 {
        return Err(Error::InvalidBound(format!("Gr({p},{n}) has dimension {} > 6", p * k)));
    }
    let mut degrees: Vec<u32> = (1..=k).collect();
    degrees.push(n);
    let names: Vec<String> = (1..=k).map(|i| format!("s{i}")).chain(["q".to_string()]).collect();
    let q = GradedPoly::var(&degrees, k as usize);
    let mut relations = Vec::new();
    for r in p + 1..=n {
        let s = embed(&s_r_determinant(p, n, r)?, &degrees);
        relations.push(if r == n {
            if k.is_multiple_of(2) {
                &s + &q
            } else {
                &s - &q
            }
        } else {
            s
        });
    }
    let rank = usize::try_from(binomial_z(n as i64, p as i64)).expect("small binomial");
    let ideal = PresentationIdeal::new(names, degrees, k as usize, relations, rank)?;
    Ok(Grassmannian { p, n, ideal })
}

/// Appends a zero exponent for `q`.
fn embed(s: &GradedPoly, degrees: &[u32]) -> GradedPoly {
    let mut out = GradedPoly::zero(degrees);
    for (e, c) in s.terms() {
        let mut e = e.clone();
        e.push(0);
        out.add_monomial(e, c.clone());
    }
    out
}

impl Grassmannian {
    pub fn k(&self) -> u32 {
        self.n - self.p
    }

    pub fn ideal(&self) -> &PresentationIdeal {
        &self.ideal
    }

    pub fn sigma(&self, i: u32) -> GradedPoly {
        sigma(self.ideal.degrees(), i as i64)
    }

    pub fn q(&self) -> GradedPoly {
        self.ideal.q()
    }

    /// `S_r` inside the presentation ring.
    pub fn s(&self, r: u32) -> GradedPoly {
        embed(&jacobi_trudi(&(1..=self.k()).collect::<Vec<_>>(), r as usize), self.ideal.degrees())
    }

    /// `sigma_{(1^m)}`, which equals `S_m`.
    pub fn sigma_column(&self, m: u32) -> GradedPoly {
        self.s(m)
    }

    pub fn normal_form(&self, x: &GradedPoly) -> Result<GradedPoly> {
        self.ideal.normal_form(x)
    }

    pub fn product(&self, x: &GradedPoly, y: &GradedPoly) -> Result<GradedPoly> {
        self.normal_form(&(x * y))
    }

    /// `sum_{i=0}^{k} (-1)^i sigma_i S_{r-i}`, which must vanish for `r >= 1`.
    pub fn alternating_sum(&self, r: u32) -> GradedPoly {
        let mut acc = GradedPoly::zero(self.ideal.degrees());
        for i in 0..=self.k().min(r) {
            let term = &self.sigma(i) * &self.s(r - i);
            acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// `S_i` for `p < i < n` at `q = 0`, reduced.
    pub fn classical_relations_vanish(&self) -> Result<bool> {
        for i in self.p + 1..=self.n {
            if !self.ideal.classical_normal_form(&self.s(i))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `sigma_k * sigma_{(1^p)}` reduced; equals `q`.
    pub fn seed_product(&self) -> Result<GradedPoly> {
        self.product(&self.sigma(self.k()), &self.sigma_column(self.p))
    }

    pub fn format(&self, x: &GradedPoly) -> String {
        self.ideal.format(x)
    }

    pub fn coefficient(&self, x: &GradedPoly, exps: &[u32]) -> BigInt {
        x.coeff(exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Leibniz expansion over all permutations.
    fn leibniz(k: usize, r: usize) -> GradedPoly {
        let degrees: Vec<u32> = (1..=k as u32).collect();
        let mut perm: Vec<usize> = (0..r).collect();
        let mut acc = GradedPoly::zero(&degrees);
        fn next(p: &mut [usize]) -> bool {
            let n = p.len();
            if n < 2 {
                return false;
            }
            let mut i = n - 1;
            while i > 0 && p[i - 1] >= p[i] {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            let mut j = n - 1;
            while p[j] <= p[i - 1] {
                j -= 1;
            }
            p.swap(i - 1, j);
            p[i..].reverse();
            true
        }
        loop {
            let inversions = (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let mut term = GradedPoly::one(&degrees);
            for (i, &j) in perm.iter().enumerate() {
                term = &term * &sigma(&degrees, 1 + j as i64 - i as i64);
            }
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
            if !next(&mut perm) {
                break;
            }
        }
        acc
    }

    #[test]
    fn determinants() {
        let s1 = s_r_determinant(2, 4, 1).unwrap();
        assert_eq!(s1, GradedPoly::var(&[1, 2], 0));
        let s3 = s_r_determinant(2, 4, 3).unwrap();
        let (a, b) = (GradedPoly::var(&[1, 2], 0), GradedPoly::var(&[1, 2], 1));
        assert_eq!(s3, &a.pow(3) - &(&a * &b).scale(&BigInt::from(2)));
        let s4 = s_r_determinant(2, 4, 4).unwrap();
        assert_eq!(s4, &(&a.pow(4) - &(&a.pow(2) * &b).scale(&BigInt::from(3))) + &b.pow(2));
        for k in 1..=4 {
            for r in 0..=6 {
                assert_eq!(jacobi_trudi(&(1..=k as u32).collect::<Vec<_>>(), r), leibniz(k, r), "k={k} r={r}");
            }
        }
    }

    #[test]
    fn gr24() {
        let g = grassmannian_presentation(2, 4).unwrap();
        assert_eq!(g.ideal().rank(), 6);
        assert!(g.classical_relations_vanish().unwrap());
        assert_eq!(g.seed_product().unwrap(), g.q());
        let s2 = g.sigma(2);
        let s11 = g.sigma_column(2);
        assert_eq!(s11, &g.sigma(1).pow(2) - &s2);
        // sigma_2^3 = q sigma_{(1,1)}, witnessed by an explicit ideal combination.
        let target = &g.q() * &s11;
        let r3 = &g.s(3);
        let r4 = &(&g.s(4) + &g.q());
        let s1 = g.sigma(1);
        let witness = &(r3 * &(&s1.pow(3) - &(&s1 * &s2).scale(&BigInt::from(2)))) + &(r4 * &(&s2 - &s1.pow(2)));
        assert_eq!(&s2.pow(3) - &target, witness);
        assert_eq!(g.normal_form(&s2.pow(3)).unwrap(), target);
        for r in 1..=8 {
            assert!(g.alternating_sum(r).is_zero());
        }
    }

    #[test]
    fn other_grassmannians() {
        for (p, n) in [(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (1, 7), (2, 3), (3, 4)] {
            let g = grassmannian_presentation(p, n).unwrap();
            assert_eq!(g.ideal().rank() as u64, u64::try_from(binomial_z(n as i64, p as i64)).unwrap());
            assert!(g.classical_relations_vanish().unwrap());
            assert_eq!(g.seed_product().unwrap(), g.q(), "Gr({p},{n})");
            for r in 1..=n + 2 {
                assert!(g.alternating_sum(r).is_zero());
            }
        }
        assert!(grassmannian_presentation(3, 6).is_err());
        assert!(grassmannian_presentation(2, 2).is_err());
    }
}
