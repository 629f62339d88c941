//! The `posskit` command line: `check`, `eval`, `valid`, `complete` and `dualize`
//! over structure files (see [`crate::format`]).
//!
//! Exit codes: 0 pass, true or valid; 1 fail, false or countermodel; 2 input
//! error; 3 resource cap exceeded.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::balg::{self, FiniteBooleanAlgebra};
use crate::error::{Error, Result, Verdict};
use crate::fomodel::{fo_truth_set, parse_fo, validate_fomodel, Assignment};
use crate::format::{dump_ba, dump_poset, parse_structure, Kind, StructureFile};
use crate::frames::PossibilityFrame;
use crate::heyting::{self, DownsetAlgebra, Nucleus};
use crate::modal::{
    self, bao_filter_frame, vbao_box_preserved, vbao_full_frame, Boxes, ModalFrame, Model, NCondition,
    QuasiNormalFrame, QuasiValidity, RelCondition, SearchCaps, Validity, Valuation,
};
use crate::poset::{ElementSet, Poset};
use crate::syntax::{parse, Formula};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "posskit", version, about = "Possibility semantics on finite structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include forced sets and extra detail.
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every validator that applies to the structure.
    Check { path: PathBuf },
    /// Decide whether a point forces a formula.
    Eval {
        path: PathBuf,
        #[arg(short = 'x')]
        point: String,
        #[arg(short = 'f')]
        formula: String,
        /// Evaluate with a nucleus on the downsets of a `poset` or `frame` file.
        #[arg(long, value_enum)]
        nucleus: Option<NucleusArg>,
    },
    /// Search all valuations for a countermodel.
    Valid {
        path: PathBuf,
        #[arg(short = 'f')]
        formula: String,
        /// Maximum number of valuations to try.
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Build a completion or representation.
    Complete {
        #[arg(value_enum)]
        kind: CompletionKind,
        path: PathBuf,
    },
    /// Pass between an algebra and its dual frame.
    Dualize { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CompletionKind {
    Macneille,
    Canonical,
    Ro,
    Dragalin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NucleusArg {
    Notnot,
    Beth,
    Identity,
}

/// Exit code and everything written to standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub condition: String,
    pub holds: bool,
    /// Failures of required rows make the check fail; others are informational.
    pub required: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub kind: String,
    pub pass: bool,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub point: String,
    pub formula: String,
    pub value: bool,
    pub forced: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidReport {
    pub formula: String,
    pub valid: bool,
    pub valuation: BTreeMap<String, Vec<String>>,
    pub point: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
struct DumpReport<'a> {
    text: &'a str,
}

#[derive(Clone, Debug, Serialize)]
struct ErrorReport {
    error: String,
    code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

/// Parses arguments (the first is the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            Outcome {
                code,
                stdout: e.to_string(),
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => {
            let code = exit_code(&e);
            let stdout = if cli.json {
                json(&ErrorReport {
                    error: e.to_string(),
                    code,
                })
            } else {
                format!("error: {e}\n")
            };
            Outcome { code, stdout }
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn load(path: &PathBuf) -> Result<StructureFile> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Format {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_structure(&src)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { path } => {
            let report = check(&load(path)?)?;
            let code = if report.pass { EXIT_PASS } else { EXIT_FAIL };
            let stdout = if cli.json { json(&report) } else { render_check(&report, cli.verbose) };
            Ok(Outcome { code, stdout })
        }
        Command::Eval {
            path,
            point,
            formula,
            nucleus,
        } => {
            let report = eval(&load(path)?, point, formula, *nucleus)?;
            let code = if report.value { EXIT_PASS } else { EXIT_FAIL };
            let stdout = if cli.json {
                json(&report)
            } else if cli.verbose {
                format!("{}\nforced: {{{}}}\n", report.value, report.forced.join(","))
            } else {
                format!("{}\n", report.value)
            };
            Ok(Outcome { code, stdout })
        }
        Command::Valid { path, formula, cap } => {
            let report = valid(&load(path)?, formula, *cap)?;
            let code = if report.valid { EXIT_PASS } else { EXIT_FAIL };
            let stdout = if cli.json { json(&report) } else { render_valid(&report) };
            Ok(Outcome { code, stdout })
        }
        Command::Complete { kind, path } => dump(cli, complete(*kind, &load(path)?)?),
        Command::Dualize { path } => dump(cli, dualize(&load(path)?)?),
    }
}

fn dump(cli: &Cli, text: String) -> Result<Outcome> {
    let stdout = if cli.json { json(&DumpReport { text: &text }) } else { text };
    Ok(Outcome {
        code: EXIT_PASS,
        stdout,
    })
}

fn render_check(r: &CheckReport, verbose: bool) -> String {
    let width = r.rows.iter().map(|row| row.condition.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for row in &r.rows {
        let status = match (row.holds, row.required) {
            (true, _) => "ok",
            (false, true) => "FAIL",
            (false, false) => "no",
        };
        let pad = width - row.condition.chars().count();
        out.push_str(&format!("{}{}  {status}", row.condition, " ".repeat(pad)));
        if let Some(w) = &row.witness {
            if !row.holds || verbose {
                out.push_str(&format!("  {w}"));
            }
        }
        out.push('\n');
    }
    out.push_str(if r.pass { "pass\n" } else { "fail\n" });
    out
}

fn render_valid(r: &ValidReport) -> String {
    if r.valid {
        return "valid\n".to_string();
    }
    let mut out = String::from("countermodel\n");
    for (p, v) in &r.valuation {
        out.push_str(&format!("  {p} = {{{}}}\n", v.join(",")));
    }
    if let Some(x) = &r.point {
        out.push_str(&format!("  point {x}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// check

fn row(condition: impl Into<String>, verdict: Verdict, required: bool) -> Row {
    let (holds, witness) = match verdict {
        Ok(()) => (true, None),
        Err(v) => (false, Some(v.witness)),
    };
    Row {
        condition: condition.into(),
        holds,
        required,
        witness,
    }
}

fn info(condition: impl Into<String>, holds: bool, detail: Option<String>) -> Row {
    Row {
        condition: condition.into(),
        holds,
        required: false,
        witness: detail,
    }
}

/// A construction failure becomes a failed row; other errors propagate.
fn construct<T>(rows: &mut Vec<Row>, what: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ (Error::NotBoolean(_) | Error::NotLattice(_) | Error::InvalidFrame(_) | Error::NotMultiplicative { .. })) => {
            rows.push(Row {
                condition: what.to_string(),
                holds: false,
                required: true,
                witness: Some(e.to_string()),
            });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn valuation_rows(rows: &mut Vec<Row>, frame: &PossibilityFrame, val: &Valuation) {
    for (p, &u) in val {
        let verdict = if frame.is_admissible(u) {
            Ok(())
        } else {
            Err(crate::error::Violation::new(
                "admissible",
                format!("{} is not admissible", frame.poset.show(u)),
            ))
        };
        rows.push(row(format!("valuation {p}"), verdict, true));
    }
}

pub fn check(f: &StructureFile) -> Result<CheckReport> {
    let mut rows = Vec::new();
    match f.kind {
        Kind::Poset => {
            let p = f.poset()?;
            rows.push(info("separative", p.is_separative(), None));
            let ros = p.enumerate_regular_opens()?;
            rows.push(info("regular opens", true, Some(ros.len().to_string())));
            let h = DownsetAlgebra::new(p.clone())?;
            for name in &f.nuclei {
                let j = match name.as_str() {
                    "notnot" => Nucleus::notnot(&h),
                    "beth" => Nucleus::beth(&h)?,
                    "identity" => Nucleus::identity(&h),
                    _ => Nucleus::fm(&h, &f.fm_order()?)?,
                };
                rows.push(row(format!("nucleus {name}"), heyting::check_nucleus(&h, &j), true));
            }
        }
        Kind::Frame => {
            let fr = f.possibility_frame()?;
            rows.push(row("admissible family", fr.validate(), true));
            valuation_rows(&mut rows, &fr, &f.valuation);
            if fr.validate().is_ok() {
                rows.push(row("separation", fr.satisfies_separation(), false));
                rows.push(row("filter realization", fr.satisfies_filter_realization()?, false));
            }
        }
        Kind::RelFrame => {
            let Some(fr) = construct(&mut rows, "relational frame", f.relational_frame())? else {
                return Ok(report(f.kind, rows));
            };
            rows.push(row("relational frame", fr.validate(), true));
            valuation_rows(&mut rows, &fr.base, &f.valuation);
            for i in fr.relations.keys() {
                for c in RelCondition::ALL {
                    let required = RelCondition::PARADIGM.contains(&c);
                    rows.push(row(format!("{c} [{i}]"), fr.check_relation_condition(i, c)?, required));
                }
            }
            if fr.is_full()? {
                rows.push(info("R-tight", fr.is_r_tight()?, None));
            }
            if let Some(d) = f.designated {
                let directed = QuasiNormalFrame::new(fr.clone(), d).map(|_| ());
                let verdict = directed.map_err(|e| crate::error::Violation::new("directed", e.to_string()));
                rows.push(row("designated set directed", verdict, true));
            }
        }
        Kind::NbFrame => {
            let Some(fr) = construct(&mut rows, "neighborhood frame", f.neighborhood_frame())? else {
                return Ok(report(f.kind, rows));
            };
            rows.push(row("neighborhood frame", fr.validate(), true));
            valuation_rows(&mut rows, &fr.base, &f.valuation);
            for i in fr.neighborhoods.keys() {
                for c in NCondition::ALL {
                    rows.push(row(format!("{c} [{i}]"), fr.check_n_condition(i, c)?, true));
                }
            }
        }
        Kind::Ba => {
            let Some(b) = construct(&mut rows, "Boolean algebra", f.boolean_algebra())? else {
                return Ok(report(f.kind, rows));
            };
            rows.push(info("Boolean algebra", true, Some(format!("{} elements", b.len()))));
            let boxes = f.box_tables()?;
            if !boxes.is_empty() {
                if let Some(bf) = construct(&mut rows, "boxes multiplicative", vbao_full_frame(&b, &boxes))? {
                    rows.push(info("boxes multiplicative", true, None));
                    rows.push(info("full frame realizes boxes", vbao_box_preserved(&boxes, &bf)?, None));
                }
            }
        }
        Kind::Lattice => {
            let Some(l) = construct(&mut rows, "lattice", f.lattice())? else {
                return Ok(report(f.kind, rows));
            };
            rows.push(info("lattice", true, Some(format!("{} elements", l.len()))));
            rows.push(info("distributive", l.is_distributive(), None));
            rows.push(row("locale", l.is_locale()?, false));
            rows.push(info("join-prime generated", l.is_join_prime_generated()?, None));
        }
        Kind::FoModel => {
            let m = f.fomodel()?;
            rows.push(row("first-order model", validate_fomodel(&m)?, true));
        }
    }
    Ok(report(f.kind, rows))
}

fn report(kind: Kind, rows: Vec<Row>) -> CheckReport {
    CheckReport {
        kind: kind.to_string(),
        pass: rows.iter().all(|r| r.holds || !r.required),
        rows,
    }
}

// ---------------------------------------------------------------------------
// eval and valid

fn modal_frame(f: &StructureFile) -> Result<Box<dyn ModalFrame>> {
    Ok(match f.kind {
        Kind::Poset | Kind::Frame => Box::new(f.possibility_frame()?),
        Kind::RelFrame => Box::new(f.relational_frame()?),
        Kind::NbFrame => Box::new(f.neighborhood_frame()?),
        k => {
            return Err(Error::Precondition(format!(
                "`{k}` files have no possibilities to evaluate at"
            )))
        }
    })
}

fn names(p: &Poset, u: ElementSet) -> Vec<String> {
    u.iter().map(|x| p.name(x).to_string()).collect()
}

pub fn eval(f: &StructureFile, point: &str, formula: &str, nucleus: Option<NucleusArg>) -> Result<EvalReport> {
    let x = f.element(point)?;
    if f.kind == Kind::FoModel {
        let m = f.fomodel()?;
        if let Err(v) = validate_fomodel(&m)? {
            return Err(Error::InvalidModel(v.to_string()));
        }
        let phi = parse_fo(formula, &m.signature())?;
        let forced = fo_truth_set(&m, &Assignment::new(), &phi)?;
        return Ok(EvalReport {
            point: point.to_string(),
            formula: phi.to_string(),
            value: forced.contains(x),
            forced: names(&m.poset, forced),
        });
    }
    let phi: Formula = parse(formula)?;
    let forced = match nucleus {
        Some(kind) => {
            if !matches!(f.kind, Kind::Poset | Kind::Frame) {
                return Err(Error::Precondition("--nucleus needs a `poset` or `frame` file".into()));
            }
            let h = DownsetAlgebra::new(f.poset()?)?;
            let j = match kind {
                NucleusArg::Notnot => Nucleus::notnot(&h),
                NucleusArg::Beth => Nucleus::beth(&h)?,
                NucleusArg::Identity => Nucleus::identity(&h),
            };
            heyting::nuclear_truth_set(&h, &j, &f.valuation, &phi)?
        }
        None => {
            let frame = modal_frame(f)?;
            Model::new(frame.as_ref(), f.valuation.clone())?;
            forced_for_all(frame.as_ref(), &f.valuation, &phi)?
        }
    };
    let p = f.poset()?;
    Ok(EvalReport {
        point: point.to_string(),
        formula: phi.to_string(),
        value: forced.contains(x),
        forced: names(&p, forced),
    })
}

/// Truth set of `phi`, intersected over every admissible value of the
/// variables the file leaves unvalued.
fn forced_for_all(frame: &dyn ModalFrame, valuation: &Valuation, phi: &Formula) -> Result<ElementSet> {
    let free: Vec<String> = phi
        .free_vars()
        .into_iter()
        .filter(|v| !valuation.contains_key(v))
        .collect();
    let family = &frame.base().admissible;
    let limit = SearchCaps::default().max_valuations;
    let total = (family.len() as u128)
        .checked_pow(free.len() as u32)
        .unwrap_or(u128::MAX);
    if total > limit {
        return Err(Error::cap("valuations", limit, total));
    }
    let mut forced = frame.base().poset.all();
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut val = valuation.clone();
        for (v, &d) in free.iter().zip(&digits) {
            val.insert(v.clone(), family[d]);
        }
        forced = forced.intersection(modal::truth_set(frame, &val, phi)?);
        let Some(i) = digits.iter().position(|&d| d + 1 < family.len()) else {
            return Ok(forced);
        };
        digits[i] += 1;
        digits[..i].iter_mut().for_each(|d| *d = 0);
    }
}

pub fn valid(f: &StructureFile, formula: &str, cap: Option<u128>) -> Result<ValidReport> {
    let mut caps = SearchCaps::default();
    if let Some(c) = cap {
        caps.max_valuations = c;
    }
    if f.kind == Kind::FoModel {
        return fo_valid(f, formula);
    }
    let phi = parse(formula)?;
    let p = f.poset()?;
    let show = |val: Valuation| -> BTreeMap<String, Vec<String>> {
        val.into_iter().map(|(k, u)| (k, names(&p, u))).collect()
    };
    if let (Kind::RelFrame, Some(d)) = (f.kind, f.designated) {
        let q = QuasiNormalFrame::new(f.relational_frame()?, d)?;
        return Ok(match modal::quasi_valid_capped(&q, &phi, caps)? {
            QuasiValidity::Valid => ValidReport {
                formula: phi.to_string(),
                valid: true,
                valuation: BTreeMap::new(),
                point: None,
            },
            QuasiValidity::Countermodel { valuation } => ValidReport {
                formula: phi.to_string(),
                valid: false,
                valuation: show(valuation),
                point: None,
            },
        });
    }
    let frame = modal_frame(f)?;
    Ok(match modal::is_valid_capped(frame.as_ref(), &phi, caps)? {
        Validity::Valid => ValidReport {
            formula: phi.to_string(),
            valid: true,
            valuation: BTreeMap::new(),
            point: None,
        },
        Validity::Countermodel { valuation, point } => ValidReport {
            formula: phi.to_string(),
            valid: false,
            valuation: show(valuation),
            point: Some(p.name(point).to_string()),
        },
    })
}

/// Truth in a first-order model at every point under every assignment of the free variables.
fn fo_valid(f: &StructureFile, formula: &str) -> Result<ValidReport> {
    let m = f.fomodel()?;
    if let Err(v) = validate_fomodel(&m)? {
        return Err(Error::InvalidModel(v.to_string()));
    }
    let phi = parse_fo(formula, &m.signature())?;
    let vars: Vec<String> = phi.free_vars().into_iter().collect();
    let n = m.guises.len();
    let total = (n as u128).checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    if total > SearchCaps::default().max_valuations {
        return Err(Error::cap("assignments", SearchCaps::default().max_valuations, total));
    }
    for k in 0..total {
        let mut g = Assignment::new();
        let mut rest = k;
        for v in vars.iter().rev() {
            g.insert(v.clone(), (rest % n as u128) as usize);
            rest /= n as u128;
        }
        let bad = m.poset.all() - fo_truth_set(&m, &g, &phi)?;
        if let Some(s) = bad.first() {
            return Ok(ValidReport {
                formula: phi.to_string(),
                valid: false,
                valuation: g.into_iter().map(|(x, a)| (x, vec![m.guises[a].clone()])).collect(),
                point: Some(m.poset.name(s).to_string()),
            });
        }
    }
    Ok(ValidReport {
        formula: phi.to_string(),
        valid: true,
        valuation: BTreeMap::new(),
        point: None,
    })
}

// ---------------------------------------------------------------------------
// complete and dualize

fn embedding_comments(b: &FiniteBooleanAlgebra, target: &FiniteBooleanAlgebra, embedding: &[usize]) -> String {
    (0..b.len())
        .map(|a| format!("# {} -> {}\n", b.name(a), target.name(embedding[a])))
        .collect()
}

pub fn complete(kind: CompletionKind, f: &StructureFile) -> Result<String> {
    let mismatch = |want: &str| {
        Error::Precondition(format!("this completion needs a `{want}` file, found `{}`", f.kind))
    };
    match kind {
        CompletionKind::Macneille | CompletionKind::Canonical => {
            if f.kind != Kind::Ba {
                return Err(mismatch("ba"));
            }
            let b = f.boolean_algebra()?;
            let c = if kind == CompletionKind::Macneille {
                balg::macneille(&b)?
            } else {
                balg::canonical_extension(&b)?
            };
            let mut out = dump_ba(&c.ro.algebra, &Boxes::new());
            out.push_str(&embedding_comments(&b, &c.ro.algebra, &c.embedding));
            Ok(out)
        }
        CompletionKind::Ro => {
            if !f.kind.is_frame_like() || f.kind == Kind::FoModel {
                return Err(mismatch("poset"));
            }
            let ro = balg::ro_algebra(&f.poset()?)?;
            Ok(dump_ba(&ro.algebra, &Boxes::new()))
        }
        CompletionKind::Dragalin => {
            if f.kind != Kind::Lattice {
                return Err(mismatch("lattice"));
            }
            let l = f.lattice()?;
            let d = heyting::dragalin_represent(&l)?;
            let fa = heyting::fixpoint_algebra(&d.algebra, &d.nucleus)?;
            let mut out = dump_poset(&d.algebra.poset);
            let fixed: Vec<String> = fa.elements.iter().map(|&u| d.algebra.poset.show(u)).collect();
            out.push_str(&format!("# fixpoints: {}\n", fixed.join(" ")));
            let iso = heyting::lattices_isomorphic(&fa.lattice()?, &l);
            out.push_str(&format!("# fixpoint lattice isomorphic to input: {iso}\n"));
            Ok(out)
        }
    }
}

pub fn dualize(f: &StructureFile) -> Result<String> {
    match f.kind {
        Kind::Ba => {
            let b = f.boolean_algebra()?;
            let boxes = f.box_tables()?;
            let bf = bao_filter_frame(&b, &boxes)?;
            let names: Vec<String> = bf
                .frame
                .base
                .admissible
                .iter()
                .map(|u| {
                    let a = bf.embedding.iter().position(|e| e == u).expect("admissible sets are hats");
                    b.name(a).to_string()
                })
                .collect();
            Ok(if boxes.is_empty() {
                crate::format::dump_frame(&bf.frame.base, &names)
            } else {
                crate::format::dump_relframe(&bf.frame, &names)
            })
        }
        Kind::Frame | Kind::RelFrame | Kind::Poset => {
            let fr = f.relational_frame()?;
            if let Err(v) = fr.validate() {
                return Err(Error::InvalidFrame(v.to_string()));
            }
            let alg = fr.base.algebra()?;
            let boxes: Boxes = fr
                .relations
                .iter()
                .map(|(i, r)| {
                    let table = alg
                        .sets
                        .iter()
                        .map(|&u| alg.index_of(r.box_set(u)).expect("admissible sets are closed under box"))
                        .collect();
                    (i.clone(), table)
                })
                .collect();
            Ok(dump_ba(&alg.algebra, &boxes))
        }
        k => Err(Error::Precondition(format!("cannot dualize a `{k}` file"))),
    }
}
