//! Command-line front end. [`run`] returns the rendered output and exit code
//! so the binary stays a thin wrapper.

mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::algebra::{binomial_z, Bounds, GradedPoly};
use crate::boundary::intersection_counts;
use crate::error::{Error, Result};
use crate::gw::{
    default_seeds, fano3_solve_report, nd_plane, wdvv_canonical_equations, wdvv_count, wdvv_count_binomial,
    wdvv_solve, Fano3Space, GWTable, TableEntry,
};
use crate::model::{builtin_model, load_model, FanoModel};
use crate::potential::{build_potential, natural_ins_max, wdvv_residual};
use crate::qring::{
    check_pr_small_ring, grassmannian_presentation, presentation_from_big, small_ring, vanishes, BigRing,
};

pub use report::{Check, Format, KeyPart, Report, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qcoh", version, about = "Exact Gromov-Witten invariants and quantum cohomology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(clap::Args, Debug, Clone)]
pub struct ModelArgs {
    /// Built-in model: p1, p2, p3, pN, pr (with --r), q3, p1xp1.
    #[arg(long, default_value = "p2")]
    pub model: String,
    /// JSON model description; overrides --model.
    #[arg(long)]
    pub model_file: Option<PathBuf>,
    /// Dimension for `--model pr`.
    #[arg(long)]
    pub r: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree-d rational plane curves through 3d-1 points.
    Nd {
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
    /// Line and point counts on P^3 or the quadric threefold.
    Fano3 {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 3)]
        dmax: u32,
    },
    /// Number of independent associativity equations for m + 1 basis classes.
    WdvvCount {
        #[arg(long, default_value_t = 7)]
        mmax: u32,
    },
    /// Solves the associativity equations from seed invariants.
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        /// Largest c1-degree to solve; defaults to dmax times the largest line degree.
        #[arg(long)]
        c1max: Option<u32>,
        #[arg(long, default_value_t = 3)]
        dmax: u32,
        /// JSON array of `{beta, insertions, value}` seeds.
        #[arg(long)]
        seeds: Option<PathBuf>,
    },
    /// Structure constants of the small quantum ring.
    Qring {
        #[command(flatten)]
        model: ModelArgs,
        /// Grassmannian `p,n` instead of a model.
        #[arg(long, value_delimiter = ',')]
        grassmannian: Option<Vec<u32>>,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        #[arg(long)]
        c1max: Option<u32>,
        /// Insertion-degree truncation of the potential.
        #[arg(long)]
        trunc: Option<u32>,
        #[arg(long)]
        seeds: Option<PathBuf>,
        /// Grassmannian `p,n` checked by the rings suite.
        #[arg(long, value_delimiter = ',', default_value = "2,4")]
        grassmannian: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Wdvv,
    Rings,
    Boundary,
    All,
}

/// Usage and configuration errors exit with 2, the rest with 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownModel(_)
        | Error::InvalidModel { .. }
        | Error::Parse(_)
        | Error::InvalidBound(_)
        | Error::Io(_)
        | Error::ArityMismatch(_)
        | Error::IndexOutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns `(stdout, stderr, exit code)`.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { (text, String::new(), code) } else { (String::new(), text, code) };
        }
    };
    match execute(&cli.command) {
        Ok(report) => match report.emit(cli.format) {
            Ok(mut text) => {
                if !text.ends_with('\n') {
                    text.push('\n');
                }
                let code = if report.passed() { EXIT_OK } else { EXIT_FAILED };
                (text, String::new(), code)
            }
            Err(e) => (String::new(), format!("error: {e}\n"), exit_code(&e)),
        },
        Err(e) => (String::new(), format!("error: {e}\n"), exit_code(&e)),
    }
}

pub fn execute(cmd: &Command) -> Result<Report> {
    let mut report = match cmd {
        Command::Nd { dmax } => cmd_nd(*dmax),
        Command::Fano3 { space, dmax } => cmd_fano3(space, *dmax),
        Command::WdvvCount { mmax } => cmd_wdvv_count(*mmax),
        Command::Solve { model, c1max, dmax, seeds } => cmd_solve(model, *c1max, *dmax, seeds.as_ref()),
        Command::Qring { model, grassmannian } => cmd_qring(model, grassmannian.as_deref()),
        Command::Verify { suite, model, dmax, c1max, trunc, seeds, grassmannian } => {
            cmd_verify(*suite, model, *dmax, *c1max, *trunc, seeds.as_ref(), grassmannian)
        }
    }?;
    report.sort();
    Ok(report)
}

fn positive(name: &str, x: u32) -> Result<()> {
    if x == 0 {
        return Err(Error::InvalidBound(format!("--{name} must be positive")));
    }
    Ok(())
}

fn resolve_model(args: &ModelArgs) -> Result<FanoModel> {
    match &args.model_file {
        Some(path) => load_model(path),
        None => builtin_model(&args.model, args.r),
    }
}

fn load_seeds(model: &FanoModel, path: Option<&PathBuf>) -> Result<GWTable> {
    match path {
        None => default_seeds(model),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let entries: Vec<TableEntry> = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            GWTable::from_entries(model, 0, &entries)
        }
    }
}

fn default_c1(model: &FanoModel, dmax: u32) -> u32 {
    dmax * model.c1_weights().iter().copied().max().unwrap_or(1)
}

fn table_rows(report: &mut Report, table: &GWTable) {
    for (b, n, v) in table.entries() {
        let key = b.iter().chain(n).map(|&x| KeyPart::from(x)).collect();
        report.row(key, v);
    }
}

fn cmd_nd(dmax: u32) -> Result<Report> {
    positive("dmax", dmax)?;
    let table = nd_plane(dmax)?;
    let mut r = Report::new("p2", "nd");
    r.bound("dmax", dmax);
    for (b, _, v) in table.entries() {
        r.row(vec![b[0].into()], v);
    }
    Ok(r)
}

fn cmd_fano3(space: &str, dmax: u32) -> Result<Report> {
    positive("dmax", dmax)?;
    let space: Fano3Space = space.parse()?;
    let rep = fano3_solve_report(space, dmax)?;
    let mut r = Report::new(rep.table.model().name(), "fano3");
    r.bound("dmax", dmax);
    for (_, n, v) in rep.table.entries() {
        r.row(vec![n[0].into(), n[1].into()], v);
    }
    r.check("recursions", true, format!("{} recursion instances agree", rep.instances_checked));
    Ok(r)
}

fn cmd_wdvv_count(mmax: u32) -> Result<Report> {
    if !(2..=40).contains(&mmax) {
        return Err(Error::InvalidBound(format!("--mmax must be in 2..=40, got {mmax}")));
    }
    let mut r = Report::new("-", "wdvv-count");
    r.bound("mmax", mmax);
    for m in 2..=mmax {
        let n = wdvv_count(m.into());
        let binom = wdvv_count_binomial(m.into());
        r.check(format!("binomial form m={m}"), n == binom, format!("{n} vs {binom}"));
        let classes = wdvv_canonical_equations(m as usize).len();
        r.check(format!("symmetry classes m={m}"), n == classes.into(), format!("{classes} classes"));
        r.row(vec![m.into()], n);
    }
    Ok(r)
}

fn cmd_solve(args: &ModelArgs, c1max: Option<u32>, dmax: u32, seeds: Option<&PathBuf>) -> Result<Report> {
    let model = resolve_model(args)?;
    let c1 = c1max.unwrap_or_else(|| default_c1(&model, dmax));
    positive("c1max", c1)?;
    let seeds = load_seeds(&model, seeds)?;
    let table = wdvv_solve(&model, &seeds, c1)?;
    let mut r = Report::new(model.name(), "solve");
    r.bound("c1max", c1);
    table_rows(&mut r, &table);
    Ok(r)
}

/// Table of invariants used by `qring` and `verify`: the dedicated recursion
/// where one exists, the generic solver otherwise.
fn model_table(model: &FanoModel, dmax: u32, c1max: Option<u32>, seeds: Option<&PathBuf>) -> Result<GWTable> {
    positive("dmax", dmax)?;
    match (model.name(), seeds) {
        ("p2", None) => nd_plane(dmax),
        ("p3", None) => Ok(fano3_solve_report(Fano3Space::P3, dmax)?.table),
        ("q3", None) => Ok(fano3_solve_report(Fano3Space::Q3, dmax)?.table),
        _ => wdvv_solve(model, &load_seeds(model, seeds)?, c1max.unwrap_or_else(|| default_c1(model, dmax))),
    }
}

fn cmd_qring(args: &ModelArgs, gr: Option<&[u32]>) -> Result<Report> {
    if let Some(pn) = gr {
        let (p, n) = grassmannian_pair(pn)?;
        let g = grassmannian_presentation(p, n)?;
        let mut r = Report::new(&format!("gr{p},{n}"), "qring");
        r.bound("p", p);
        r.bound("n", n);
        // products of the quotient basis monomials, numbered by degree
        let degrees = g.ideal().degrees().to_vec();
        let basis: Vec<_> = g
            .ideal()
            .classical_basis()
            .values()
            .flatten()
            .map(|e| GradedPoly::monomial(&degrees, e.clone(), 1))
            .collect();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate().skip(i) {
                let xy = g.product(x, y)?;
                r.row(vec![i.into(), j.into()], format!("{} * {} = {}", g.format(x), g.format(y), g.format(&xy)));
            }
        }
        grassmannian_checks(&mut r, pn)?;
        return Ok(r);
    }
    let model = resolve_model(args)?;
    // three-point invariants reach c1-degree 2 dim
    let c1 = 2 * model.dimension();
    let line = model.c1_weights().iter().copied().min().unwrap_or(1);
    let table = model_table(&model, c1.div_ceil(line).max(1), Some(c1), None)?;
    let ring = small_ring(&model, &table)?;
    let mut r = Report::new(model.name(), "qring");
    r.bound("c1max", c1);
    for i in 0..ring.rank() {
        for j in i..ring.rank() {
            r.row(vec![i.into(), j.into()], ring.format_element(ring.product(i, j)));
        }
    }
    small_ring_checks(&mut r, &model, &table)?;
    Ok(r)
}

fn small_ring_checks(r: &mut Report, model: &FanoModel, table: &GWTable) -> Result<()> {
    let ring = small_ring(model, table)?;
    r.check("small commutative", ring.is_commutative(), "");
    r.check("small unit", ring.has_unit(), "T0 * Tj = Tj");
    r.check("small associative", ring.is_associative(), "");
    r.check("small homogeneous", ring.is_homogeneous(), "");
    let classical = ring.classical_limit() == ring.cup_product_table()?;
    r.check("classical limit", classical, "q = 0 gives the cup product");
    Ok(())
}

fn grassmannian_pair(pn: &[u32]) -> Result<(u32, u32)> {
    match pn {
        [p, n] => Ok((*p, *n)),
        _ => Err(Error::InvalidBound(format!("--grassmannian takes p,n, got {pn:?}"))),
    }
}

fn grassmannian_checks(r: &mut Report, pn: &[u32]) -> Result<()> {
    let (p, n) = grassmannian_pair(pn)?;
    let g = grassmannian_presentation(p, n)?;
    let name = format!("Gr({p},{n})");
    let expected = binomial_z(n.into(), p.into());
    let rank = g.ideal().rank();
    r.check(format!("{name} rank"), expected == rank.into(), format!("quotient rank {rank}"));
    r.check(format!("{name} classical relations"), g.classical_relations_vanish()?, "S_i = 0 at q = 0 for p < i <= n");
    let alt = (1..=n + 2).all(|k| g.alternating_sum(k).is_zero());
    r.check(format!("{name} alternating sum"), alt, "sum (-1)^i sigma_i S_(r-i) = 0");
    let seed = g.seed_product()?;
    r.check(format!("{name} seed product"), seed == g.q(), g.format(&seed));
    Ok(())
}

fn cmd_verify(
    suite: Suite,
    args: &ModelArgs,
    dmax: u32,
    c1max: Option<u32>,
    trunc: Option<u32>,
    seeds: Option<&PathBuf>,
    gr: &[u32],
) -> Result<Report> {
    let model = resolve_model(args)?;
    let mut r = Report::new(model.name(), "verify");
    r.bound("dmax", dmax);
    if let Some(l) = trunc {
        r.bound("trunc", l);
    }
    let table = match model_table(&model, dmax, c1max, seeds) {
        Ok(t) => t,
        Err(e) if exit_code(&e) == EXIT_FAILED => {
            r.check("table", false, e.to_string());
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    r.bound("c1max", table.complete_c1());
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let outcome = (|| -> Result<()> {
        if wants(Suite::Wdvv) {
            verify_wdvv(&mut r, &model, &table, trunc)?;
        }
        if wants(Suite::Rings) {
            verify_rings(&mut r, &model, &table, trunc, gr)?;
        }
        if wants(Suite::Boundary) {
            verify_boundary(&mut r, &model, &table, dmax, suite == Suite::Boundary)?;
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        if exit_code(&e) == EXIT_USAGE {
            return Err(e);
        }
        r.check("evaluation", false, e.to_string());
    }
    Ok(r)
}

fn bounds_for(model: &FanoModel, table: &GWTable, trunc: Option<u32>) -> Bounds {
    let c1 = table.complete_c1();
    Bounds { c1_max: c1, ins_max: trunc.unwrap_or_else(|| natural_ins_max(model, c1)) }
}

fn verify_wdvv(r: &mut Report, model: &FanoModel, table: &GWTable, trunc: Option<u32>) -> Result<()> {
    let p = build_potential(model, table, bounds_for(model, table, trunc))?;
    let eqs = wdvv_canonical_equations(model.rank() - 1);
    let mut failed = 0;
    for e in &eqs {
        let [i, j, k, l] = e.indices;
        let res = wdvv_residual(&p, i, j, k, l)?;
        let bad = res.exact_terms().filter(|(_, c)| !c.is_zero()).count();
        failed += usize::from(bad > 0);
        r.row(vec!["wdvv".into(), i.into(), j.into(), k.into(), l.into()], bad);
    }
    let expected = wdvv_count((model.rank() - 1) as u64);
    r.check(
        "wdvv residuals",
        failed == 0 && expected == eqs.len().into(),
        format!("{} canonical equations, {failed} with nonzero exact coefficients", eqs.len()),
    );
    Ok(())
}

fn verify_rings(r: &mut Report, model: &FanoModel, table: &GWTable, trunc: Option<u32>, gr: &[u32]) -> Result<()> {
    if table.complete_c1() >= 2 * model.dimension() {
        small_ring_checks(r, model, table)?;
    } else {
        r.check("small ring", false, format!("table complete only through c1 = {}", table.complete_c1()));
    }
    if let Some(rank) = model.name().strip_prefix('p').and_then(|s| s.parse::<u32>().ok()) {
        let c = check_pr_small_ring(rank)?;
        r.check(format!("P^{rank} product rules"), c.rules_hold, "");
        r.check(format!("P^{rank} T^{}=q", rank + 1), c.relation_holds, c.ring.format_element(&c.power));
    }
    let ring = BigRing::new(build_potential(model, table, bounds_for(model, table, trunc))?)?;
    r.check("big commutative", ring.is_commutative(), "");
    r.check("big unit", ring.has_unit(), "");
    let n = ring.rank();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !vanishes(&ring.associator(i, j, k)?) {
                    bad.push(format!("({i},{j},{k})"));
                }
            }
        }
    }
    r.check("big associators", bad.is_empty(), if bad.is_empty() { format!("{} triples", n * n * n) } else { bad.join(" ") });
    if model.name() == "p2" {
        let ok = match presentation_from_big(ring.bundle()) {
            Ok(c) => vanishes(&c.residual),
            Err(_) => false,
        };
        r.check("big cubic presentation", ok, "Z^3 - G111 Z^2 - 2 G112 Z - G122");
    }
    if !gr.is_empty() {
        grassmannian_checks(r, gr)?;
    }
    Ok(())
}

fn verify_boundary(r: &mut Report, model: &FanoModel, table: &GWTable, dmax: u32, required: bool) -> Result<()> {
    if model.name() != "p2" {
        if required {
            return Err(Error::InvalidBound("the boundary suite runs on p2".into()));
        }
        return Ok(());
    }
    for d in 2..=dmax {
        let c = intersection_counts(table, d)?;
        r.row(vec!["boundary".into(), d.into(), "lhs".into()], &c.lhs.total);
        r.row(vec!["boundary".into(), d.into(), "rhs".into()], &c.rhs.total);
        r.check(format!("boundary d={d}"), c.balanced(), format!("lhs={} rhs={}", c.lhs.total, c.rhs.total));
    }
    Ok(())
}
