//! Gromov-Witten tables: dedicated recursions, axiom-based evaluation, the
//! generic associativity solver and equation bookkeeping.

mod equations;
mod fano3;
mod invariant;
mod plane;
mod solver;
mod table;

pub use equations::{canonicalize, wdvv_canonical_equations, wdvv_count, wdvv_count_binomial, WdvvEquationId};
pub use fano3::{fano3_check, fano3_solve, fano3_solve_report, Fano3Report, Fano3Space};
pub use invariant::gw_invariant;
pub use plane::{nd_plane, nd_plane_values};
pub use solver::{default_seeds, wdvv_solve};
pub use table::{GWTable, TableEntry};
