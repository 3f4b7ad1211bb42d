//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::Zero;

use qcoh::algebra::binomial_z;
use qcoh::boundary::{enumerate_boundary, intersection_counts, intersection_formulas};
use qcoh::gw::{
    fano3_check, fano3_solve, fano3_solve_report, nd_plane, nd_plane_values, wdvv_canonical_equations, wdvv_count,
    wdvv_solve, Fano3Space, GWTable,
};
use qcoh::model::{Builtin, FanoModel};
use qcoh::potential::{build_potential, full_bounds, wdvv_residual};
use qcoh::qring::{
    check_pr_small_ring, grassmannian_presentation, presentation_from_big, small_ring, vanishes, BigRing,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Plane counts straight from the recursion, with a left-to-right sum.
fn plane_oracle(d_max: u32) -> Vec<BigInt> {
    let mut n = vec![BigInt::zero(), big(1)];
    for d in 2..=d_max as i64 {
        let mut s = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let p = &n[d1 as usize] * &n[d2 as usize];
            s += &p * BigInt::from(d1 * d1 * d2 * d2) * binomial_z(3 * d - 4, 3 * d1 - 2);
            s -= &p * BigInt::from(d1 * d1 * d1 * d2) * binomial_z(3 * d - 4, 3 * d1 - 1);
        }
        n.push(s);
    }
    n.remove(0);
    n
}

fn plane_curves() -> Outcome {
    let published = [1u64, 1, 12, 620, 87304, 26312976];
    let values = nd_plane_values(10).map_err(|e| e.to_string())?;
    for (d, v) in published.iter().enumerate() {
        ensure(values[d] == big(*v), || format!("N_{} = {}, expected {v}", d + 1, values[d]))?;
    }
    let oracle = plane_oracle(10);
    ensure(values == oracle, || "degrees 7..10 disagree with the direct recursion".into())?;
    let table = nd_plane(10).map_err(|e| e.to_string())?;
    for d in 2..=10 {
        let (lhs, rhs) = intersection_formulas(&table, d).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("degree {d} fails the boundary relation"))?;
    }
    Ok(format!("N_10 = {}", values[9]))
}

const QUADRIC: [(u32, u32, u64); 26] = [
    (1, 1, 1),
    (3, 0, 1),
    (0, 3, 1),
    (2, 2, 1),
    (4, 1, 2),
    (6, 0, 5),
    (1, 4, 2),
    (3, 3, 5),
    (5, 2, 16),
    (7, 1, 59),
    (9, 0, 242),
    (0, 6, 6),
    (2, 5, 20),
    (4, 4, 74),
    (6, 3, 320),
    (8, 2, 1546),
    (10, 1, 8148),
    (12, 0, 46230),
    (1, 7, 106),
    (3, 6, 448),
    (5, 5, 2180),
    (7, 4, 11910),
    (9, 3, 71178),
    (11, 2, 457788),
    (13, 1, 3136284),
    (15, 0, 22731810),
];

fn quadric_table() -> Outcome {
    let report = fano3_solve_report(Fano3Space::Q3, 5).map_err(|e| e.to_string())?;
    ensure(report.table.len() == QUADRIC.len(), || format!("{} entries", report.table.len()))?;
    for (a, b, v) in QUADRIC {
        let d = (a + 2 * b) / 3;
        let got = report.table.lookup(&[d], &[a, b]).map_err(|e| e.to_string())?;
        ensure(got == big(v), || format!("N[{a},{b}] = {got}, expected {v}"))?;
    }
    let checked = fano3_check(Fano3Space::Q3, &report.table).map_err(|e| e.to_string())?;
    for (a, b, _) in QUADRIC {
        let c = report.confirmations.get(&(a, b)).copied().unwrap_or(0);
        ensure(c > 0, || format!("N[{a},{b}] is not confirmed by any recursion instance"))?;
    }
    Ok(format!("26 values, {checked} recursion instances hold"))
}

fn space_table() -> Outcome {
    let t = fano3_solve(Fano3Space::P3, 3).map_err(|e| e.to_string())?;
    for (d, a, v) in [(1, 4, 2u64), (2, 8, 92), (3, 12, 80160)] {
        let got = t.lookup(&[d], &[a, 0]).map_err(|e| e.to_string())?;
        ensure(got == big(v), || format!("N[{a},0] = {got}, expected {v}"))?;
    }
    fano3_check(Fano3Space::P3, &t).map_err(|e| e.to_string())?;
    Ok("N[4,0]=2, N[8,0]=92, N[12,0]=80160".into())
}

fn equation_count() -> Outcome {
    let expected = [1u64, 6, 21, 55, 120, 231];
    for (m, n) in (2u64..=7).zip(expected) {
        ensure(wdvv_count(m) == big(n), || format!("N({m}) = {}", wdvv_count(m)))?;
        let classes = wdvv_canonical_equations(m as usize).len();
        ensure(classes as u64 == n, || format!("{classes} symmetry classes for m = {m}"))?;
    }
    let n23 = wdvv_count(23);
    ensure(n23 == big(32131), || format!("N(23) = {n23}"))?;
    Ok("N(2..7) = 1, 6, 21, 55, 120, 231; N(23) = 32131".into())
}

fn residual_suite() -> Outcome {
    let cases = [
        (FanoModel::builtin(Builtin::P2), nd_plane(6)),
        (FanoModel::builtin(Builtin::P3), fano3_solve(Fano3Space::P3, 4)),
        (FanoModel::builtin(Builtin::Q3), fano3_solve(Fano3Space::Q3, 4)),
    ];
    let mut total = 0;
    for (m, t) in cases {
        let t = t.map_err(|e| e.to_string())?;
        let p = build_potential(&m, &t, full_bounds(&m, t.complete_c1())).map_err(|e| e.to_string())?;
        for e in wdvv_canonical_equations(m.rank() - 1) {
            let [i, j, k, l] = e.indices;
            let r = wdvv_residual(&p, i, j, k, l).map_err(|e| e.to_string())?;
            ensure(r.vanishes_on_exact_keys(), || format!("{} residual ({i},{j},{k},{l}) is nonzero", m.name()))?;
            total += 1;
        }
    }
    Ok(format!("{total} residuals vanish"))
}

fn cross_solver() -> Outcome {
    let seeds = |m: &FanoModel, n: Vec<u32>| {
        let mut s = GWTable::new(m, 0);
        s.insert(vec![1], n, big(1)).map(|_| s)
    };
    let p2 = FanoModel::builtin(Builtin::P2);
    let generic = wdvv_solve(&p2, &seeds(&p2, vec![2]).map_err(|e| e.to_string())?, 18).map_err(|e| e.to_string())?;
    ensure(generic == nd_plane(6).map_err(|e| e.to_string())?, || "plane tables differ".into())?;
    for (space, n, c1) in [(Fano3Space::Q3, vec![1, 1], 12), (Fano3Space::P3, vec![0, 2], 16)] {
        let m = space.model();
        let generic = wdvv_solve(&m, &seeds(&m, n).map_err(|e| e.to_string())?, c1).map_err(|e| e.to_string())?;
        let dedicated = fano3_solve(space, 4).map_err(|e| e.to_string())?;
        ensure(generic == dedicated, || format!("{} tables differ", m.name()))?;
    }
    Ok("P^2 through d=6, Q^3 and P^3 through d=4".into())
}

fn ring_laws() -> Outcome {
    let cases = [
        (FanoModel::builtin(Builtin::P2), nd_plane(5)),
        (FanoModel::builtin(Builtin::P3), fano3_solve(Fano3Space::P3, 3)),
        (FanoModel::builtin(Builtin::Q3), fano3_solve(Fano3Space::Q3, 4)),
    ];
    for (m, t) in cases {
        let t = t.map_err(|e| e.to_string())?;
        let p = build_potential(&m, &t, full_bounds(&m, t.complete_c1())).map_err(|e| e.to_string())?;
        let ring = BigRing::new(p.clone()).map_err(|e| e.to_string())?;
        ensure(ring.is_commutative(), || format!("{} is not commutative", m.name()))?;
        ensure(ring.has_unit(), || format!("T0 is not a unit on {}", m.name()))?;
        let n = m.rank();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = ring.associator(i, j, k).map_err(|e| e.to_string())?;
                    ensure(vanishes(&a), || format!("{} associator ({i},{j},{k})", m.name()))?;
                }
            }
        }
        if m.name() == "p2" {
            let cubic = presentation_from_big(&p).map_err(|e| e.to_string())?;
            ensure(vanishes(&cubic.residual), || "cubic residual".into())?;
        }
    }
    Ok("P^2, P^3, Q^3 commutative, unital, associative; cubic holds".into())
}

fn small_rings() -> Outcome {
    for r in 1..=4 {
        let c = check_pr_small_ring(r).map_err(|e| e.to_string())?;
        ensure(c.rules_hold, || format!("product rules fail on P^{r}"))?;
        ensure(c.relation_holds, || format!("T^{} != q on P^{r}", r + 1))?;
        ensure(c.ring.classical_limit() == c.ring.cup_product_table().map_err(|e| e.to_string())?, || {
            format!("q = 0 limit differs from the cup product on P^{r}")
        })?;
    }
    let q3 = FanoModel::builtin(Builtin::Q3);
    let ring = small_ring(&q3, &fano3_solve(Fano3Space::Q3, 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(ring.classical_limit() == ring.cup_product_table().map_err(|e| e.to_string())?, || "Q^3 limit".into())?;

    let g = grassmannian_presentation(2, 4).map_err(|e| e.to_string())?;
    ensure(g.ideal().rank() == 6, || format!("Gr(2,4) rank {}", g.ideal().rank()))?;
    ensure(g.classical_relations_vanish().map_err(|e| e.to_string())?, || "S_3, S_4 survive at q = 0".into())?;
    for r in 1..=8 {
        ensure(g.alternating_sum(r).is_zero(), || format!("alternating sum fails at r = {r}"))?;
    }
    let s11 = &g.sigma(1).pow(2) - &g.sigma(2);
    let prod = g.product(&g.sigma(2), &s11).map_err(|e| e.to_string())?;
    ensure(prod == g.q(), || format!("sigma_2 * sigma_11 = {}", g.format(&prod)))?;
    Ok("P^1..P^4 rules and T^(r+1) = q; Gr(2,4) rank 6 and sigma_2 * sigma_11 = q".into())
}

fn boundary_equivalence() -> Outcome {
    let t = nd_plane(6).map_err(|e| e.to_string())?;
    let mut totals = Vec::new();
    for d in 2..=6 {
        let c = intersection_counts(&t, d).map_err(|e| e.to_string())?;
        ensure(c.balanced(), || format!("d={d}: lhs {} != rhs {}", c.lhs.total, c.rhs.total))?;
        totals.push(c.lhs.total.to_string());
    }
    let d2 = intersection_counts(&t, 2).map_err(|e| e.to_string())?;
    ensure(d2.lhs.total == big(2) && d2.rhs.total == big(2), || "d=2 sides are not N_2 + 1 = 2".into())?;
    Ok(format!("lhs = rhs = {}", totals.join(", ")))
}

type Side = (Vec<usize>, u32);

/// All `A | B` splits of `1..=n` with all class splits, filtered by the
/// three conditions and stored as unordered pairs.
fn brute_force(n: usize, d: u32) -> BTreeSet<BTreeSet<Side>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let a: Vec<usize> = (1..=n).filter(|x| mask >> (x - 1) & 1 == 1).collect();
        let b: Vec<usize> = (1..=n).filter(|x| mask >> (x - 1) & 1 == 0).collect();
        for d1 in 0..=d {
            let d2 = d - d1;
            if (d1 == 0 && a.len() < 2) || (d2 == 0 && b.len() < 2) {
                continue;
            }
            out.insert([(a.clone(), d1), (b.clone(), d2)].into_iter().collect());
        }
    }
    out
}

fn enumeration_oracle() -> Outcome {
    let mut checked = 0;
    for (name, line) in [("P^2", 3u32), ("P^3", 4)] {
        for d in 0..=12 / line {
            for n in 0..=8 {
                let data = enumerate_boundary(n, &[d]);
                let ours: BTreeSet<BTreeSet<Side>> = data
                    .iter()
                    .map(|x| [(x.a.clone(), x.beta1[0]), (x.b.clone(), x.beta2[0])].into_iter().collect())
                    .collect();
                ensure(ours.len() == data.len(), || format!("{name} n={n} d={d}: duplicate data"))?;
                ensure(ours == brute_force(n, d), || format!("{name} n={n} d={d}: sets differ"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, beta) cases"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("plane-curve table", plane_curves),
        ("quadric table", quadric_table),
        ("P^3 numbers", space_table),
        ("equation count", equation_count),
        ("WDVV residual suite", residual_suite),
        ("cross-solver oracle", cross_solver),
        ("ring laws", ring_laws),
        ("small rings", small_rings),
        ("boundary equivalence", boundary_equivalence),
        ("enumeration oracle", enumeration_oracle),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
