use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse polynomial over the integers with a weight attached to every variable.
///
/// Arithmetic between polynomials over different variable lists panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedPoly {
    degrees: Vec<u32>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl GradedPoly {
    pub fn zero(degrees: &[u32]) -> Self {
        GradedPoly { degrees: degrees.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(degrees: &[u32], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(degrees);
        p.add_monomial(vec![0; degrees.len()], c.into());
        p
    }

    pub fn one(degrees: &[u32]) -> Self {
        Self::constant(degrees, 1)
    }

    pub fn var(degrees: &[u32], i: usize) -> Self {
        let mut e = vec![0; degrees.len()];
        e[i] = 1;
        Self::monomial(degrees, e, 1)
    }

    pub fn monomial(degrees: &[u32], exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), degrees.len(), "monomial arity");
        let mut p = Self::zero(degrees);
        p.add_monomial(exps, c.into());
        p
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn monomial_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.degrees).map(|(e, d)| e * d).sum()
    }

    /// The common degree of all terms, or `None` if the polynomial is zero
    /// or mixes degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| self.monomial_degree(e));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add_monomial(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.degrees);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.degrees);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Sets variable `i` to zero.
    pub fn specialize_zero(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.degrees);
        for (e, v) in &self.terms {
            if e[i] == 0 {
                out.terms.insert(e.clone(), v.clone());
            }
        }
        out
    }

    pub fn format_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{k}", names[i]) })
                .collect();
            if mono.is_empty() {
                let _ = write!(s, "{a}");
            } else if a.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                let _ = write!(s, "{a}*{}", mono.join("*"));
            }
        }
        s
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        assert_eq!(self.degrees, rhs.degrees, "variable lists differ");
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_monomial(e.clone(), v.clone());
        }
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self + &(-rhs)
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        assert_eq!(self.degrees, rhs.degrees, "variable lists differ");
        let mut out = GradedPoly::zero(&self.degrees);
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_monomial(e, va * vb);
            }
        }
        out
    }
}
