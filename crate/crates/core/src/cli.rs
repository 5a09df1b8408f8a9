//! The `witt-display` command line.
//!
//! Every command writes one document to standard output, JSON by default
//! and a plain rendering with `--format text`. Commands that act on a
//! display or a Dieudonné module read it as JSON from `--input` or standard
//! input, so commands compose through pipes:
//!
//! ```text
//! witt-display display example lubin-tate-h3 | witt-display display point
//! ```
//!
//! Exit codes: 0 on success (including negative answers to yes/no
//! queries), 1 on domain errors, 2 on usage and parse errors.
//!
//! When `WITT_DISPLAY_CACHE` names a directory, universal Witt polynomials
//! are loaded from and saved to it as versioned JSON.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::deformation::{
    etale_all_charts, jacobian_etale_check, projective_point, tangent_lift_oracle, ChartMap, EtaleReport,
    DEFAULT_BUDGET,
};
use crate::dieudonne::to_dieudonne;
use crate::display::corpus::{by_name, lubin_tate, lubin_tate_ring, NAMES};
use crate::display::{reduce_h2, DisplayMatrix, Nilpotence};
use crate::error::{Error, Result};
use crate::matrix::ElemMatrix;
use crate::moduli::{build_presentation, Assignment};
use crate::period::{compare_with_display_point, horizontal_sections, period_map, period_ring, psi_matrix};
use crate::ring::parse::split_list;
use crate::ring::{Elem, Ring};
use crate::serial::{
    elem_matrix_json, rational_table, witt_matrix_json, ChangeDoc, DieudonneDoc, DisplayDoc, ElemInput, ElemJson,
    WittDoc,
};
use crate::witt::table::{cached_tables, install_table, UniversalPolynomialTable};
use crate::witt::WittVector;

/// Environment variable naming the universal polynomial cache directory.
pub const CACHE_ENV: &str = "WITT_DISPLAY_CACHE";

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "witt-display", version, about = "Exact Witt vectors and displays in matrix form")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Read the input document from a file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic in W_N(R).
    #[command(subcommand)]
    Witt(WittCmd),
    /// Displays in matrix form.
    #[command(subcommand)]
    Display(DisplayCmd),
    /// Dieudonné modules over finite fields.
    #[command(subcommand)]
    Dieudonne(DieudonneCmd),
    /// The Hopf algebroid of displays and their isomorphisms.
    #[command(subcommand)]
    Moduli(ModuliCmd),
    /// The map to projective space and first-order deformations.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Horizontal sections and the period map.
    #[command(subcommand)]
    Period(PeriodCmd),
    /// Runs the acceptance criteria.
    Selftest {
        /// Comma-separated criterion numbers; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Args, Debug, Clone)]
struct WittArgs {
    #[arg(long)]
    p: u64,
    /// Witt length; defaults to the number of components of `--x`.
    #[arg(long)]
    len: Option<usize>,
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Components, as `[a, b, ...]`.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args, Debug, Clone)]
struct BinaryArgs {
    #[command(flatten)]
    w: WittArgs,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
}

#[derive(Subcommand, Debug)]
enum WittCmd {
    Add(BinaryArgs),
    Mul(BinaryArgs),
    Frob(WittArgs),
    Versch(WittArgs),
    /// Teichmüller lift of the single element `--x`.
    Teich(WittArgs),
    Ghost(WittArgs),
    Invert(WittArgs),
}

#[derive(Subcommand, Debug)]
enum DisplayCmd {
    /// Builds a display from a matrix of Witt components.
    New {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ring: String,
        /// JSON rows of entries, each entry a list of components.
        #[arg(long)]
        matrix: String,
    },
    /// Validates a display.
    Check,
    Nilpotent {
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Applies a coordinate change given as JSON blocks `{a, b, c, e}`.
    Change {
        /// The change as JSON, or `@path` to read it from a file.
        #[arg(long)]
        change: String,
    },
    Dual,
    ReduceH2,
    /// The point `[w0(B_1h) : ... : w0(B_hh)]`.
    Point,
    /// A display from the built-in corpus.
    Example {
        name: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DieudonneCmd {
    FromDisplay,
    /// Checks `FV = VF = p`; accepts a module or a display.
    CheckFv,
}

#[derive(Args, Debug, Clone)]
struct ModuliArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    h: usize,
    #[arg(long, default_value_t = 2)]
    len: usize,
}

#[derive(Subcommand, Debug)]
enum ModuliCmd {
    Present(ModuliArgs),
    InvariantIdeal(ModuliArgs),
}

#[derive(Subcommand, Debug)]
enum DeformCmd {
    /// Jacobian test on one chart, or on all of them.
    Etale {
        #[arg(long)]
        chart: Option<usize>,
        #[arg(long)]
        all_charts: bool,
    },
    /// Counts first-order lifts up to isomorphism by enumeration.
    TangentOracle {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Fail instead of warning when the display is not nilpotent.
        #[arg(long)]
        require_nilpotent: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct PeriodArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    h: usize,
    #[arg(long)]
    order: u32,
}

#[derive(Subcommand, Debug)]
enum PeriodCmd {
    Psi(PeriodArgs),
    Sections(PeriodArgs),
    Map(PeriodArgs),
}

/// A command result in both renderings.
struct Output {
    json: Value,
    text: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidRing(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Output, Failure>;

/// Runs one command. `stdin` is read only when a command needs an input
/// document and `--input` is absent.
pub fn run<S: AsRef<str>>(argv: &[S], stdin: &mut dyn Read) -> Outcome {
    let args = std::iter::once("witt-display").chain(argv.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cache_dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    if let Some(dir) = &cache_dir {
        load_cache(dir);
    }
    let result = dispatch(&cli, stdin);
    if let Some(dir) = &cache_dir {
        if let Err(e) = save_cache(dir) {
            return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    }
    match result {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
                Format::Text => out.text + "\n",
            };
            let code = if out.json.get("passed") == Some(&Value::Bool(false)) { 1 } else { 0 };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Domain(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn cache_file(dir: &Path, p: u64) -> PathBuf {
    dir.join(format!("universal-p{p}.json"))
}

fn load_cache(dir: &Path) {
    let Ok(entries) = std::fs::read_dir(dir) else { return };
    let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    for path in paths {
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
        if name.starts_with("universal-p") && name.ends_with(".json") {
            if let Ok(table) = UniversalPolynomialTable::load_json(&path) {
                install_table(table);
            }
        }
    }
}

fn save_cache(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    for table in cached_tables() {
        let path = cache_file(dir, table.p());
        let stale = match UniversalPolynomialTable::load_json(&path) {
            Ok(old) => old.len() < table.len(),
            Err(_) => true,
        };
        if stale {
            let tmp = path.with_extension("json.tmp");
            table.save_json(&tmp)?;
            std::fs::rename(&tmp, &path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> CmdResult {
    let mut input = || read_input(cli.input.as_deref(), stdin);
    match &cli.command {
        Command::Witt(cmd) => witt_command(cmd),
        Command::Display(cmd) => display_command(cmd, &mut input),
        Command::Dieudonne(cmd) => dieudonne_command(cmd, &mut input()?),
        Command::Moduli(cmd) => moduli_command(cmd),
        Command::Deform(cmd) => deform_command(cmd, &input()?),
        Command::Period(cmd) => period_command(cmd),
        Command::Selftest { only } => Ok(selftest(only)),
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> std::result::Result<Value, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(|e| Failure::Usage(format!("standard input: {e}")))?;
        }
    }
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("input document: {e}")))
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// The embedded document of the given kind: the value itself or its field
/// of that name.
fn find_kind<'a>(doc: &'a Value, kind: &str) -> Option<&'a Value> {
    if doc.get("kind").and_then(Value::as_str) == Some(kind) {
        Some(doc)
    } else {
        doc.get(kind).filter(|v| v.is_object())
    }
}

fn display_from(doc: &Value) -> std::result::Result<DisplayMatrix, Failure> {
    let v = find_kind(doc, "display").ok_or_else(|| usage("input is not a display document"))?;
    let parsed: DisplayDoc = serde_json::from_value(v.clone()).map_err(|e| usage(format!("display document: {e}")))?;
    Ok(parsed.to_display()?)
}

fn with_kind<T: Serialize>(kind: &str, body: &T) -> Value {
    let mut v = serde_json::to_value(body).expect("serializable");
    if let Value::Object(map) = &mut v {
        map.insert("kind".into(), Value::String(kind.into()));
    }
    v
}

fn elem_json(x: &Elem) -> Value {
    serde_json::to_value(ElemJson::from_elem(x)).expect("serializable")
}

fn bracket<T: ToString>(items: &[T]) -> String {
    format!("[{}]", items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

// ----- witt -----

fn parse_components(text: &str, ring: &Ring) -> Result<Vec<Elem>> {
    if let Ok(items) = serde_json::from_str::<Vec<ElemInput>>(text) {
        return items.iter().map(|c| c.to_elem(ring)).collect();
    }
    split_list(text).iter().map(|s| crate::ring::parse::parse_element(ring, s)).collect()
}

fn witt_operand(w: &WittArgs, text: &str, ring: &Ring) -> Result<WittVector> {
    let mut comps = parse_components(text, ring)?;
    let len = w.len.unwrap_or(comps.len());
    if comps.len() > len {
        return Err(Error::Parse(format!("{} components given for length {len}", comps.len())));
    }
    comps.resize(len, ring.zero());
    WittVector::new(w.p, comps)
}

fn witt_output(x: &WittVector) -> Output {
    Output { json: with_kind("witt", &WittDoc::from_witt(x)), text: bracket(x.components()) }
}

fn witt_command(cmd: &WittCmd) -> CmdResult {
    let ring_of = |w: &WittArgs| Ring::parse(&w.ring);
    match cmd {
        WittCmd::Add(b) | WittCmd::Mul(b) => {
            let ring = ring_of(&b.w)?;
            let x = witt_operand(&b.w, &b.w.x, &ring)?;
            let y = witt_operand(&b.w, &b.y, &ring)?;
            let z = if matches!(cmd, WittCmd::Add(_)) { x.try_add(&y)? } else { x.try_mul(&y)? };
            Ok(witt_output(&z))
        }
        WittCmd::Frob(w) => Ok(witt_output(&witt_operand(w, &w.x, &ring_of(w)?)?.frobenius()?)),
        WittCmd::Versch(w) => Ok(witt_output(&witt_operand(w, &w.x, &ring_of(w)?)?.verschiebung())),
        WittCmd::Invert(w) => Ok(witt_output(&witt_operand(w, &w.x, &ring_of(w)?)?.invert()?)),
        WittCmd::Teich(w) => {
            let ring = ring_of(w)?;
            let comps = parse_components(&w.x, &ring)?;
            let [r] = comps.as_slice() else {
                return Err(usage("teich takes a single element"));
            };
            let len = w.len.ok_or_else(|| usage("teich needs --len"))?;
            Ok(witt_output(&WittVector::teichmuller(w.p, r, len)))
        }
        WittCmd::Ghost(w) => {
            let x = witt_operand(w, &w.x, &ring_of(w)?)?;
            let ghosts = x.ghosts();
            let json = json!({
                "kind": "ghost",
                "p": w.p,
                "ring": x.ring().to_string(),
                "ghosts": ghosts.iter().map(elem_json).collect::<Vec<_>>(),
            });
            Ok(Output { json, text: bracket(&ghosts) })
        }
    }
}

// ----- display -----

fn display_output(disp: &DisplayMatrix) -> Output {
    Output { json: with_kind("display", &DisplayDoc::from_display(disp)), text: display_text(disp) }
}

fn display_text(disp: &DisplayMatrix) -> String {
    let m = disp.matrix_form();
    let rows: Vec<String> = (0..m.nrows()).map(|i| bracket(m.row(i))).collect();
    format!(
        "display over {} with p = {}, h = {}, d = {}, N = {}\n{}",
        disp.ring(),
        disp.p(),
        disp.height(),
        disp.dimension(),
        disp.witt_len(),
        rows.join("\n")
    )
}

fn nilpotence_json(n: &Nilpotence) -> Value {
    match n {
        Nilpotence::Nilpotent(k) => json!({"status": "nilpotent", "steps": k}),
        Nilpotence::NotNilpotent => json!({"status": "not-nilpotent"}),
        Nilpotence::Unknown { iterations } => json!({"status": "unknown", "iterations": iterations}),
    }
}

fn nilpotence_text(n: &Nilpotence) -> String {
    match n {
        Nilpotence::Nilpotent(k) => format!("nilpotent after {k} steps"),
        Nilpotence::NotNilpotent => "not nilpotent".into(),
        Nilpotence::Unknown { iterations } => format!("unknown after {iterations} iterations"),
    }
}

fn display_command(cmd: &DisplayCmd, input: &mut dyn FnMut() -> std::result::Result<Value, Failure>) -> CmdResult {
    match cmd {
        DisplayCmd::New { p, h, d, ring, matrix } => {
            let doc = DisplayDoc {
                p: *p,
                h: *h,
                d: *d,
                ring: ring.clone(),
                matrix: serde_json::from_str(matrix).map_err(|e| usage(format!("--matrix: {e}")))?,
            };
            Ok(display_output(&doc.to_display()?))
        }
        DisplayCmd::Example { name, p, len } => {
            let disp = by_name(name, *p, *len).map_err(|e| match e {
                Error::Parse(_) => usage(format!("unknown example `{name}`; known: {}", NAMES.join(", "))),
                other => other.into(),
            })?;
            let mut out = display_output(&disp);
            out.json["name"] = Value::String(name.clone());
            Ok(out)
        }
        DisplayCmd::Check => {
            let disp = display_from(&input()?)?;
            let json = json!({
                "kind": "display-check",
                "valid": true,
                "p": disp.p(),
                "h": disp.height(),
                "d": disp.dimension(),
                "N": disp.witt_len(),
                "ring": disp.ring().to_string(),
            });
            let text = format!("valid display: h = {}, d = {}, N = {}", disp.height(), disp.dimension(), disp.witt_len());
            Ok(Output { json, text })
        }
        DisplayCmd::Nilpotent { max_iter } => {
            let disp = display_from(&input()?)?;
            let n = disp.is_nilpotent(*max_iter)?;
            let mut json = nilpotence_json(&n);
            json["kind"] = "nilpotence".into();
            Ok(Output { json, text: nilpotence_text(&n) })
        }
        DisplayCmd::Change { change } => {
            let disp = display_from(&input()?)?;
            let text = match change.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
                None => change.clone(),
            };
            let doc: ChangeDoc = serde_json::from_str(&text).map_err(|e| usage(format!("--change: {e}")))?;
            let phi = doc.to_change(disp.p(), disp.ring())?;
            let (out, factor) = disp.change_of_coords(&phi)?;
            let mut o = display_output(&out);
            o.json["factor"] = serde_json::to_value(elem_matrix_json(&factor)).expect("serializable");
            o.text = format!("{}\n1-form factor {}", o.text, factor);
            Ok(o)
        }
        DisplayCmd::Dual => Ok(display_output(&display_from(&input()?)?.dual()?)),
        DisplayCmd::ReduceH2 => {
            let (out, phi) = reduce_h2(&display_from(&input()?)?)?;
            let mut o = display_output(&out);
            o.json["change"] = serde_json::to_value(ChangeDoc::from_change(&phi)).expect("serializable");
            Ok(o)
        }
        DisplayCmd::Point => {
            let point = projective_point(&display_from(&input()?)?)?;
            let json = json!({
                "kind": "point",
                "ring": point.ring().to_string(),
                "coords": point.coords().iter().map(elem_json).collect::<Vec<_>>(),
                "text": point.to_string(),
            });
            Ok(Output { json, text: point.to_string() })
        }
    }
}

// ----- dieudonne -----

fn dieudonne_command(cmd: &DieudonneCmd, doc: &mut Value) -> CmdResult {
    let module = if let Some(v) = find_kind(doc, "dieudonne") {
        let parsed: DieudonneDoc = serde_json::from_value(v.clone()).map_err(|e| usage(format!("module document: {e}")))?;
        parsed.to_module()?
    } else {
        to_dieudonne(&display_from(doc)?)?
    };
    match cmd {
        DieudonneCmd::FromDisplay => {
            let json = with_kind("dieudonne", &DieudonneDoc::from_module(&module));
            let text = format!(
                "Dieudonné module of rank {} over W_{}({})\nF = {}\nV = {}",
                module.rank(),
                module.witt_len(),
                module.field(),
                module.f_matrix(),
                module.v_matrix()
            );
            Ok(Output { json, text })
        }
        DieudonneCmd::CheckFv => {
            let holds = module.check_fv()?;
            let json = json!({"kind": "fv-check", "holds": holds, "rank": module.rank(), "N": module.witt_len()});
            let text = if holds { "FV = VF = p holds" } else { "FV = VF = p fails" };
            Ok(Output { json, text: text.into() })
        }
    }
}

// ----- moduli -----

fn assignment_json(a: &Assignment) -> BTreeMap<String, String> {
    a.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

fn moduli_command(cmd: &ModuliCmd) -> CmdResult {
    match cmd {
        ModuliCmd::Present(m) => {
            let pres = build_presentation(m.p, m.len, m.h)?;
            let modulus = num_bigint::BigInt::from(m.p).pow(m.len as u32);
            let json = json!({
                "kind": "hopf-algebroid",
                "p": m.p,
                "h": m.h,
                "N": m.len,
                "A": pres.a_ring().to_string(),
                "Gamma": pres.gamma().to_string(),
                "A_generators": pres.beta_generators(),
                "Gamma_generators": pres.phi_generators(),
                "inverted": pres.inverted(),
                "relations": [format!("{modulus} = 0")],
                "eta_L": assignment_json(pres.eta_l()),
                "eta_R": pres.eta_r().map(assignment_json),
                "Delta": assignment_json(pres.delta()),
                "epsilon": assignment_json(pres.epsilon()),
                "inverse": pres.inverse().map(assignment_json),
            });
            let mut text = format!(
                "A = {}\nGamma = {}\ninverted: {}\n",
                pres.a_ring(),
                pres.gamma(),
                pres.inverted().join(", ")
            );
            let maps: [(&str, Option<&Assignment>); 5] = [
                ("eta_L", Some(pres.eta_l())),
                ("eta_R", pres.eta_r()),
                ("Delta", Some(pres.delta())),
                ("epsilon", Some(pres.epsilon())),
                ("inverse", pres.inverse()),
            ];
            for (name, map) in maps {
                match map {
                    Some(map) => {
                        for (k, v) in map {
                            text.push_str(&format!("{name}({k}) = {v}\n"));
                        }
                    }
                    None => text.push_str(&format!("{name}: numeric specialization only\n")),
                }
            }
            Ok(Output { json, text: text.trim_end().to_string() })
        }
        ModuliCmd::InvariantIdeal(m) => {
            let pres = build_presentation(m.p, m.len, m.h)?;
            let cert = pres.invariant_ideal_certificate()?;
            let json = json!({
                "kind": "invariant-ideal",
                "image": cert.image.to_string(),
                "unit": cert.unit.to_string(),
                "quotient": cert.quotient.to_string(),
            });
            let b = crate::moduli::beta_name(0, m.h - 1, m.h - 1);
            let text = format!("eta_R({b}) = ({}) * {b} + {} * ({})", cert.unit, m.p, cert.quotient);
            Ok(Output { json, text })
        }
    }
}

// ----- deform -----

fn chart_json(map: &ChartMap) -> Value {
    let table: BTreeMap<String, Value> =
        map.coords().iter().enumerate().map(|(i, c)| (format!("x{}", i + 1), elem_json(c))).collect();
    json!({"chart": map.chart(), "ring": map.ring().to_string(), "map": table})
}

fn etale_json(report: &EtaleReport) -> Value {
    json!({
        "etale": report.etale,
        "jacobian_det": report.jacobian_det.as_ref().map(elem_json),
        "reason": report.reason,
    })
}

fn deform_command(cmd: &DeformCmd, doc: &Value) -> CmdResult {
    let disp = display_from(doc)?;
    match cmd {
        DeformCmd::Etale { chart, all_charts } => {
            let point = projective_point(&disp)?;
            if *all_charts {
                let report = etale_all_charts(&point)?;
                let charts: Vec<Value> = report
                    .charts
                    .iter()
                    .map(|(i, r)| {
                        let mut v = etale_json(r);
                        v["chart"] = json!(i);
                        v
                    })
                    .collect();
                let json = json!({"kind": "etale-all-charts", "point": point.to_string(), "etale": report.etale, "charts": charts});
                let text = format!("{point}: étale on all unit charts: {}", report.etale);
                return Ok(Output { json, text });
            }
            let i = match chart {
                Some(i) => *i,
                None => *point
                    .unit_indices()
                    .first()
                    .ok_or_else(|| Failure::Domain(format!("{point} has no unit coordinate")))?,
            };
            let map = point.chart(i)?;
            let report = jacobian_etale_check(&map)?;
            let mut json = etale_json(&report);
            json["kind"] = "etale".into();
            json["point"] = point.to_string().into();
            json["chart_map"] = chart_json(&map);
            let text = match (&report.jacobian_det, &report.reason) {
                (_, Some(reason)) => format!("{point}, chart {i}: not étale ({reason})"),
                (Some(det), None) => format!("{point}, chart {i}: étale, Jacobian determinant {det}"),
                (None, None) => format!("{point}, chart {i}: étale"),
            };
            Ok(Output { json, text })
        }
        DeformCmd::TangentOracle { budget, require_nilpotent } => {
            let rep = tangent_lift_oracle(&disp, *budget, *require_nilpotent)?;
            let json = json!({
                "kind": "tangent-oracle",
                "class_count": rep.class_count,
                "expected": rep.expected,
                "lift_count": rep.lift_count,
                "orbit_size": rep.orbit_size,
                "closed_form_agrees": rep.closed_form_agrees,
                "checks": rep.checks,
                "nilpotence": nilpotence_json(&rep.nilpotence),
                "warning": rep.warning,
                "representatives": rep.representatives.iter().map(witt_matrix_json).collect::<Vec<_>>(),
            });
            let mut text = format!(
                "{} isomorphism classes of lifts (expected {}), {} lifts, orbit size {}, closed form agrees: {}",
                rep.class_count, rep.expected, rep.lift_count, rep.orbit_size, rep.closed_form_agrees
            );
            if let Some(w) = &rep.warning {
                text.push_str(&format!("\nwarning: {w}"));
            }
            Ok(Output { json, text })
        }
    }
}

// ----- period -----

fn rational_matrix_json(m: &ElemMatrix) -> Value {
    let rows: Vec<Vec<_>> = m.to_rows().iter().map(|row| row.iter().map(rational_table).collect()).collect();
    serde_json::to_value(rows).expect("serializable")
}

fn period_command(cmd: &PeriodCmd) -> CmdResult {
    match cmd {
        PeriodCmd::Psi(a) => {
            let ring = period_ring(a.h, a.order)?;
            let psi = psi_matrix(a.p, a.h, &ring, false)?;
            let psi_bar = psi_matrix(a.p, a.h, &ring, true)?;
            let json = json!({
                "kind": "psi",
                "ring": ring.to_string(),
                "Psi": rational_matrix_json(&psi),
                "Psi_bar": rational_matrix_json(&psi_bar),
            });
            Ok(Output { json, text: format!("Psi = {psi}\nPsi_bar = {psi_bar}") })
        }
        PeriodCmd::Sections(a) => {
            let pa = horizontal_sections(a.p, a.h, a.order)?;
            let json = json!({
                "kind": "horizontal-sections",
                "ring": pa.ring().to_string(),
                "A": rational_matrix_json(pa.a()),
                "iterations": pa.iterations(),
                "functional_equation_holds": pa.functional_equation_holds(),
                "residual": rational_matrix_json(pa.residual()),
                "identity_mod_J": pa.is_identity_mod_j()?,
            });
            Ok(Output { json, text: format!("A = {}", pa.a()) })
        }
        PeriodCmd::Map(a) => {
            let pa = horizontal_sections(a.p, a.h, a.order)?;
            let point = period_map(&pa)?;
            let lt = lubin_tate(a.p, a.h, 2, &lubin_tate_ring(a.p, a.h, a.p as u32)?)?;
            let display_point = projective_point(&lt)?;
            let agrees = compare_with_display_point(&pa, &display_point)?;
            let json = json!({
                "kind": "period-map",
                "ring": pa.ring().to_string(),
                "coords": point.coords().iter().map(rational_table).collect::<Vec<_>>(),
                "text": point.to_string(),
                "display_point": display_point.to_string(),
                "agrees_mod_J^p": agrees,
            });
            let text = format!("{point}\ndisplay point {display_point}, agreement mod J^p: {agrees}");
            Ok(Output { json, text })
        }
    }
}

// ----- selftest -----

fn selftest(only: &[u32]) -> Output {
    let results = if only.is_empty() { crate::acceptance::run_all() } else { crate::acceptance::run_selected(only) };
    let passed = results.iter().all(|r| r.passed);
    let json = json!({
        "kind": "selftest",
        "passed": passed,
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    let text = results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
    Output { json, text }
}
