use num_bigint::BigInt;
use qcoh::gw::{default_seeds, fano3_check, fano3_solve, fano3_solve_report, nd_plane, wdvv_solve, Fano3Space};
use qcoh::model::{Builtin, FanoModel};

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

#[test]
fn quadric_table_through_degree_five() {
    let report = fano3_solve_report(Fano3Space::Q3, 5).unwrap();
    assert_eq!(report.table.len(), QUADRIC.len());
    for (a, b, v) in QUADRIC {
        let d = (a + 2 * b) / 3;
        assert_eq!(report.table.lookup(&[d], &[a, b]).unwrap(), BigInt::from(v), "N[{a},{b}]");
    }
    assert_eq!(fano3_check(Fano3Space::Q3, &report.table).unwrap(), report.instances_checked);
}

#[test]
fn twisted_cubics() {
    let t = fano3_solve(Fano3Space::P3, 3).unwrap();
    assert_eq!(t.lookup(&[1], &[4, 0]).unwrap(), BigInt::from(2));
    assert_eq!(t.lookup(&[2], &[8, 0]).unwrap(), BigInt::from(92));
    assert_eq!(t.lookup(&[3], &[12, 0]).unwrap(), BigInt::from(80160));
}

#[test]
fn generic_solver_matches_plane_recursion() {
    let m = FanoModel::builtin(Builtin::P2);
    let t = wdvv_solve(&m, &default_seeds(&m).unwrap(), 18).unwrap();
    assert_eq!(t, nd_plane(6).unwrap());
}

#[test]
fn generic_solver_matches_quadric_recursions() {
    let m = FanoModel::builtin(Builtin::Q3);
    let t = wdvv_solve(&m, &default_seeds(&m).unwrap(), 12).unwrap();
    assert_eq!(t, fano3_solve(Fano3Space::Q3, 4).unwrap());
}

#[test]
fn generic_solver_matches_p3_recursions() {
    let m = FanoModel::builtin(Builtin::P3);
    let t = wdvv_solve(&m, &default_seeds(&m).unwrap(), 16).unwrap();
    assert_eq!(t, fano3_solve(Fano3Space::P3, 4).unwrap());
}
