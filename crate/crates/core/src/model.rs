//! Cohomological data of a homogeneous space: Schubert basis, Poincaré
//! pairing, classical triple products and the effective curve lattice.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::invert;
use crate::error::{Error, Result};

/// Coordinates of a curve class in the basis dual to the divisor classes.
pub type EffectiveClass = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisClass {
    pub name: String,
    pub codim: u32,
}

/// A validated model. Index 0 is the unit, indices `1..=p` are the divisor
/// classes and the remaining indices have codimension at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoModel {
    name: String,
    dimension: u32,
    basis: Vec<BasisClass>,
    pairing: Vec<Vec<BigInt>>,
    inverse: Vec<Vec<BigRational>>,
    triples: Vec<BigInt>,
    divisors: usize,
    c1: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    P1,
    P2,
    P3,
    Q3,
    Pr(u32),
    P1xP1,
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "p1" => Ok(Builtin::P1),
            "p2" => Ok(Builtin::P2),
            "p3" => Ok(Builtin::P3),
            "q3" => Ok(Builtin::Q3),
            "p1xp1" => Ok(Builtin::P1xP1),
            _ => match lower.strip_prefix('p').and_then(|r| r.parse::<u32>().ok()) {
                Some(r) if r >= 1 => Ok(Builtin::Pr(r)),
                _ => Err(Error::UnknownModel(s.to_string())),
            },
        }
    }
}

/// Looks up a built-in model. `pr` takes its dimension from `r`.
pub fn builtin_model(name: &str, r: Option<u32>) -> Result<FanoModel> {
    let which = if name.eq_ignore_ascii_case("pr") {
        match r {
            Some(r) if r >= 1 => Builtin::Pr(r),
            _ => return Err(Error::InvalidBound("model pr needs r >= 1".into())),
        }
    } else {
        name.parse()?
    };
    Ok(FanoModel::builtin(which))
}

impl FanoModel {
    pub fn builtin(which: Builtin) -> FanoModel {
        match which {
            Builtin::P1 => projective(1),
            Builtin::P2 => projective(2),
            Builtin::P3 => projective(3),
            Builtin::Pr(r) => projective(r),
            Builtin::Q3 => quadric3(),
            Builtin::P1xP1 => p1xp1(),
        }
    }

    /// Builds and validates a model from dense data.
    ///
    /// `triples` is a full symmetric `(m+1)^3` array; `c1[i]` is the c1-degree
    /// of the curve class dual to divisor `i + 1`.
    pub fn new(
        name: impl Into<String>,
        dimension: u32,
        basis: Vec<BasisClass>,
        pairing: Vec<Vec<BigInt>>,
        triples: Vec<BigInt>,
        c1: Vec<u32>,
    ) -> Result<FanoModel> {
        let n = basis.len();
        let bad = |invariant: &'static str, detail: String| Error::InvalidModel { invariant, detail };
        if n == 0 {
            return Err(bad("basis", "empty basis".into()));
        }
        if basis[0].codim != 0 {
            return Err(bad("basis", "first basis class must have codimension 0".into()));
        }
        let divisors = basis.iter().skip(1).take_while(|b| b.codim == 1).count();
        for (i, b) in basis.iter().enumerate().skip(1 + divisors) {
            if b.codim < 2 {
                return Err(bad(
                    "basis",
                    format!("class {i} ({}) has codimension {} after the divisor block", b.name, b.codim),
                ));
            }
        }
        if let Some(b) = basis.iter().find(|b| b.codim > dimension) {
            return Err(bad("basis", format!("class {} has codimension above the dimension", b.name)));
        }
        for k in 0..=dimension {
            let lo = basis.iter().filter(|b| b.codim == k).count();
            let hi = basis.iter().filter(|b| b.codim == dimension - k).count();
            if lo != hi {
                return Err(bad(
                    "Poincare duality",
                    format!("{lo} classes in codimension {k} but {hi} in codimension {}", dimension - k),
                ));
            }
        }
        if pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(bad("pairing", format!("pairing must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if pairing[i][j] != pairing[j][i] {
                    return Err(bad("pairing symmetry", format!("g[{i}][{j}] != g[{j}][{i}]")));
                }
            }
        }
        let rational: Vec<Vec<BigRational>> = pairing
            .iter()
            .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        let inverse =
            invert(&rational).ok_or_else(|| bad("pairing invertibility", "pairing is singular".into()))?;
        if triples.len() != n * n * n {
            return Err(bad("triples", format!("expected {} triple products", n * n * n)));
        }
        let at = |i: usize, j: usize, k: usize| &triples[(i * n + j) * n + k];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = at(i, j, k);
                    if v != at(j, i, k) || v != at(i, k, j) {
                        return Err(bad("triple symmetry", format!("c[{i}][{j}][{k}] is not symmetric")));
                    }
                    if !v.is_zero() && basis[i].codim + basis[j].codim + basis[k].codim != dimension {
                        return Err(bad(
                            "codimension rule",
                            format!("c[{i}][{j}][{k}] = {v} but codimensions do not sum to {dimension}"),
                        ));
                    }
                }
                if at(0, i, j) != &pairing[i][j] {
                    return Err(bad("unit law", format!("c[0][{i}][{j}] != g[{i}][{j}]")));
                }
            }
        }
        if c1.len() != divisors {
            return Err(bad(
                "effective basis",
                format!("{} effective generators for {divisors} divisor classes", c1.len()),
            ));
        }
        if let Some((i, &c)) = c1.iter().enumerate().find(|(_, &c)| c < 2) {
            return Err(bad(
                "Fano bound",
                format!("curve class dual to divisor {} has c1-degree {c} < 2", i + 1),
            ));
        }
        Ok(FanoModel { name: name.into(), dimension, basis, pairing, inverse, triples, divisors, c1 })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Number of basis classes, `m + 1`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisClass] {
        &self.basis
    }

    pub fn codim(&self, i: usize) -> u32 {
        self.basis[i].codim
    }

    /// Number of divisor classes `p`.
    pub fn divisor_count(&self) -> usize {
        self.divisors
    }

    pub fn nondivisor_count(&self) -> usize {
        self.rank() - 1 - self.divisors
    }

    pub fn is_divisor(&self, i: usize) -> bool {
        (1..=self.divisors).contains(&i)
    }

    /// Basis index of the `j`-th non-divisor variable.
    pub fn nondivisor_index(&self, j: usize) -> usize {
        1 + self.divisors + j
    }

    pub fn pairing(&self, i: usize, j: usize) -> &BigInt {
        &self.pairing[i][j]
    }

    pub fn pairing_matrix(&self) -> &[Vec<BigInt>] {
        &self.pairing
    }

    pub fn inverse_pairing(&self, i: usize, j: usize) -> &BigRational {
        &self.inverse[i][j]
    }

    pub fn triple(&self, i: usize, j: usize, k: usize) -> &BigInt {
        let n = self.rank();
        &self.triples[(i * n + j) * n + k]
    }

    pub fn c1_weights(&self) -> &[u32] {
        &self.c1
    }

    pub fn c1_degree(&self, beta: &[u32]) -> u32 {
        beta.iter().zip(&self.c1).map(|(d, w)| d * w).sum()
    }

    pub fn expected_dimension(&self, beta: &[u32], n: u32) -> i64 {
        expected_dimension(self, beta, n)
    }

    /// `sum n_i (codim T_i - 1)` over the non-divisor insertions.
    pub fn insertion_weight(&self, n: &[u32]) -> u32 {
        n.iter().enumerate().map(|(j, &k)| k * (self.codim(self.nondivisor_index(j)) - 1)).sum()
    }

    /// Whether `N(n; beta)` is a dimensionally allowed invariant.
    pub fn is_valid_key(&self, beta: &[u32], n: &[u32]) -> bool {
        beta.len() == self.divisors
            && n.len() == self.nondivisor_count()
            && self.insertion_weight(n) as i64 == self.dimension as i64 + self.c1_degree(beta) as i64 - 3
    }

    /// All nonzero effective classes with c1-degree in `1..=c1_max`,
    /// ordered by c1-degree, then lexicographically.
    pub fn effective_classes(&self, c1_max: u32) -> Vec<EffectiveClass> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.divisors];
        fn rec(m: &FanoModel, i: usize, cur: &mut Vec<u32>, budget: u32, out: &mut Vec<EffectiveClass>) {
            if i == cur.len() {
                if cur.iter().any(|&x| x > 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let w = m.c1[i];
            let mut k = 0;
            while k * w <= budget {
                cur[i] = k;
                rec(m, i + 1, cur, budget - k * w, out);
                k += 1;
            }
            cur[i] = 0;
        }
        rec(self, 0, &mut cur, c1_max, &mut out);
        out.sort_by(|a, b| self.c1_degree(a).cmp(&self.c1_degree(b)).then_with(|| a.cmp(b)));
        out
    }

    /// All insertion multidegrees `n` with `N(n; beta)` dimensionally allowed.
    pub fn insertion_keys(&self, beta: &[u32]) -> Vec<Vec<u32>> {
        let target = self.dimension as i64 + self.c1_degree(beta) as i64 - 3;
        let q = self.nondivisor_count();
        let mut out = Vec::new();
        if target < 0 {
            return out;
        }
        let weights: Vec<u32> = (0..q).map(|j| self.codim(self.nondivisor_index(j)) - 1).collect();
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
        rec(&weights, 0, target as u32, &mut Vec::new(), &mut out);
        out
    }

    pub fn to_file(&self) -> ModelFile {
        let n = self.rank();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let v = self.triple(i, j, k);
                    if !v.is_zero() {
                        triples.push(TripleEntry { i, j, k, value: IntLit::Num(int_to_i64(v)) });
                    }
                }
            }
        }
        ModelFile {
            name: Some(self.name.clone()),
            dimension: self.dimension,
            basis: self.basis.clone(),
            pairing: self
                .pairing
                .iter()
                .map(|r| r.iter().map(|v| IntLit::Num(int_to_i64(v))).collect())
                .collect(),
            triples,
            effective: self
                .c1
                .iter()
                .enumerate()
                .map(|(i, &c)| EffectiveEntry { dual_divisor_index: i + 1, c1_degree: c })
                .collect(),
        }
    }

    pub fn from_file(file: ModelFile, default_name: &str) -> Result<FanoModel> {
        let n = file.basis.len();
        let pairing = file
            .pairing
            .iter()
            .map(|r| r.iter().map(IntLit::value).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut dense = vec![BigInt::zero(); n * n * n];
        let mut seen: BTreeMap<[usize; 3], BigInt> = BTreeMap::new();
        for t in &file.triples {
            for idx in [t.i, t.j, t.k] {
                if idx >= n {
                    return Err(Error::InvalidModel {
                        invariant: "triples",
                        detail: format!("index {idx} out of range for {n} basis classes"),
                    });
                }
            }
            let v = t.value()?;
            let mut key = [t.i, t.j, t.k];
            key.sort_unstable();
            if let Some(prev) = seen.insert(key, v.clone()) {
                if prev != v {
                    return Err(Error::InvalidModel {
                        invariant: "triple symmetry",
                        detail: format!("conflicting values for triple {key:?}"),
                    });
                }
            }
            for (a, b, c) in permutations(t.i, t.j, t.k) {
                dense[(a * n + b) * n + c] = v.clone();
            }
        }
        let mut c1 = vec![None; file.effective.len()];
        for e in &file.effective {
            let slot = e.dual_divisor_index.checked_sub(1).and_then(|i| c1.get_mut(i));
            match slot {
                Some(s @ None) => *s = Some(e.c1_degree),
                _ => {
                    return Err(Error::InvalidModel {
                        invariant: "effective basis",
                        detail: format!(
                            "dual_divisor_index {} is repeated or not a divisor index",
                            e.dual_divisor_index
                        ),
                    })
                }
            }
        }
        let c1: Vec<u32> = c1.into_iter().map(|c| c.unwrap_or(0)).collect();
        let name = file.name.unwrap_or_else(|| default_name.to_string());
        FanoModel::new(name, file.dimension, file.basis, pairing, dense, c1)
    }
}

fn int_to_i64(v: &BigInt) -> i64 {
    i64::try_from(v).expect("model data fits in 64 bits")
}

fn permutations(i: usize, j: usize, k: usize) -> [(usize, usize, usize); 6] {
    [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)]
}

pub fn expected_dimension(model: &FanoModel, beta: &[u32], n: u32) -> i64 {
    model.dimension as i64 + model.c1_degree(beta) as i64 + n as i64 - 3
}

/// Reads and validates a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<FanoModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("model");
    parse_model(&text, stem)
}

pub fn parse_model(text: &str, default_name: &str) -> Result<FanoModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    FanoModel::from_file(file, default_name)
}

/// On-disk model schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: u32,
    pub basis: Vec<BasisClass>,
    pub pairing: Vec<Vec<IntLit>>,
    pub triples: Vec<TripleEntry>,
    pub effective: Vec<EffectiveEntry>,
}

/// Integer given either as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLit {
    Num(i64),
    Str(String),
}

impl IntLit {
    pub fn value(&self) -> Result<BigInt> {
        match self {
            IntLit::Num(v) => Ok(BigInt::from(*v)),
            IntLit::Str(s) => s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: IntLit,
}

impl TripleEntry {
    fn value(&self) -> Result<BigInt> {
        self.value.value()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectiveEntry {
    pub dual_divisor_index: usize,
    pub c1_degree: u32,
}

fn dense_triples(n: usize, f: impl Fn(usize, usize, usize) -> i64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.push(BigInt::from(f(i, j, k)));
            }
        }
    }
    out
}

fn projective(r: u32) -> FanoModel {
    let n = r as usize + 1;
    let basis = (0..n).map(|i| BasisClass { name: format!("T{i}"), codim: i as u32 }).collect();
    let pairing = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i + j == r as usize) as i64)).collect())
        .collect();
    let triples = dense_triples(n, |i, j, k| (i + j + k == r as usize) as i64);
    let name = match r {
        1 => "p1".to_string(),
        2 => "p2".to_string(),
        3 => "p3".to_string(),
        _ => format!("p{r}"),
    };
    FanoModel::new(name, r, basis, pairing, triples, vec![r + 1]).expect("projective space is valid")
}

fn quadric3() -> FanoModel {
    // T1 hyperplane, T2 line, T3 point; T1^2 = 2 T2.
    let basis = ["T0", "T1", "T2", "T3"]
        .iter()
        .zip([0, 1, 2, 3])
        .map(|(n, c)| BasisClass { name: n.to_string(), codim: c })
        .collect();
    let pairing = (0..4)
        .map(|i| (0..4).map(|j| BigInt::from((i + j == 3) as i64)).collect())
        .collect();
    let triples = dense_triples(4, |i, j, k| {
        if i + j + k != 3 {
            0
        } else if (i, j, k) == (1, 1, 1) {
            2
        } else {
            1
        }
    });
    FanoModel::new("q3", 3, basis, pairing, triples, vec![3]).expect("quadric threefold is valid")
}

fn p1xp1() -> FanoModel {
    let basis = [("1", 0), ("h1", 1), ("h2", 1), ("pt", 2)]
        .iter()
        .map(|&(n, c)| BasisClass { name: n.to_string(), codim: c })
        .collect();
    let g = |i: usize, j: usize| -> i64 { matches!((i.min(j), i.max(j)), (0, 3) | (1, 2)) as i64 };
    let pairing = (0..4).map(|i| (0..4).map(|j| BigInt::from(g(i, j))).collect()).collect();
    let triples = dense_triples(4, |i, j, k| {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        match idx {
            [0, 0, 3] | [0, 1, 2] => 1,
            _ => 0,
        }
    });
    FanoModel::new("p1xp1", 2, basis, pairing, triples, vec![2, 2]).expect("P1xP1 is valid")
}

impl FanoModel {
    /// `g^{-1} g`, which must be the identity.
    pub fn pairing_product_check(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: BigRational = (0..n)
                    .map(|k| &self.inverse[i][k] * BigRational::from_integer(self.pairing[k][j].clone()))
                    .sum();
                if i == j {
                    s.is_one()
                } else {
                    s.is_zero()
                }
            })
        })
    }
}
