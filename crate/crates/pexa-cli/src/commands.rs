//! Command execution and report rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use pexa::exactness::{
    complete_square, ext_enumerate, hall_constant, is_short_exact, verify_proto_exact_axioms, BiCartesianSquare,
    Category, HyperModules, Lattices, PartialSquare, SemiringModules, ShortExactSequence,
};
use pexa::geometry::{en_module, is_kmodule, projective_geometry, projective_space_kmodule, quotient_geometry, IncidenceGeometry};
use pexa::hmod::{check_hmodule_axioms, enumerate_hsubmodules, quotient_hmodule, HModule};
use pexa::lattice::{compact_elements_module, is_geometric, quotient_lattice, saturated_submodule_lattice, FiniteLattice};
use pexa::smod::{check_module_axioms, enumerate_submodules, quotient_module, FiniteModule};
use pexa::tables::{
    boolean, builtin, check_hyperstructure_axioms, check_semiring_axioms, krasner, HyperTable, RingTable, SemiringTable,
};
use pexa::{generate, AxiomReport, Error, Mask, Morphism, Structure, MAX_ELEMENTS};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::format::{parse_structure, parse_subset, render, Body, ParseOptions, StructureFile};
use crate::{CategoryName, Cli, Command, Direction, Family, Output, EXIT_BOUND, EXIT_FAILED, EXIT_INVALID};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Pexa(#[from] Error),
    #[error("{path}: {source}")]
    File { path: String, source: Error },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let inner = match self {
            CliError::Pexa(e) | CliError::File { source: e, .. } => e,
            _ => return EXIT_INVALID,
        };
        match inner {
            Error::TooLarge { .. } => EXIT_BOUND,
            Error::Axioms { .. } | Error::NotLattice(_) => EXIT_FAILED,
            _ => EXIT_INVALID,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A finished command: text, the structured result and its witnesses, and
/// whether a checked property failed.
struct Report {
    text: String,
    result: Value,
    witnesses: Value,
    failed: bool,
}

impl Report {
    fn new(text: String, result: Value) -> Self {
        Report { text, result, witnesses: Value::Array(Vec::new()), failed: false }
    }

    fn witnesses(mut self, witnesses: Value) -> Self {
        self.witnesses = witnesses;
        self
    }

    fn failed(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Reads the size cap from `PEXA_MAX_SIZE`.
pub fn max_size_from_env() -> CliResult<usize> {
    match std::env::var("PEXA_MAX_SIZE") {
        Err(_) => Ok(pexa::DEFAULT_MAX_SIZE),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_ELEMENTS).contains(&n) => Ok(n),
            _ => Err(usage(format!("PEXA_MAX_SIZE must be a number between 1 and {MAX_ELEMENTS}, got `{v}`"))),
        },
    }
}

/// A morphism file with its endpoints loaded.
struct HomFile {
    name: String,
    source: StructureFile,
    target: StructureFile,
    map: Vec<usize>,
}

struct Ctx {
    skip_check: bool,
    max_size: usize,
    digests: BTreeMap<String, String>,
}

impl Ctx {
    fn read(&self, path: &Path) -> CliResult<String> {
        fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
    }

    fn load(&mut self, role: &str, path: &Path) -> CliResult<StructureFile> {
        let file = self.load_unchecked(role, path)?;
        if !self.skip_check {
            let report = axiom_report(&file.body);
            if !report.is_valid() {
                let source = Error::Axioms { what: file.body.kind().to_string(), report };
                return Err(CliError::File { path: path.display().to_string(), source });
            }
        }
        Ok(file)
    }

    fn load_unchecked(&mut self, role: &str, path: &Path) -> CliResult<StructureFile> {
        let text = self.read(path)?;
        let file = parse_structure(&text, ParseOptions { max_size: self.max_size })
            .map_err(|source| CliError::File { path: path.display().to_string(), source })?;
        self.digests.insert(role.to_string(), digest(&render(&file)));
        Ok(file)
    }

    /// ```text
    /// morphism f 4
    /// source b2.mod
    /// target b.mod
    /// map 0 1 0 1
    /// ```
    /// Paths are relative to the morphism file; the map refers to the
    /// canonical element order of its endpoints.
    fn load_hom(&mut self, role: &str, path: &Path) -> CliResult<HomFile> {
        let text = self.read(path)?;
        let at = |line: usize, message: String| CliError::File {
            path: path.display().to_string(),
            source: Error::Parse { line, column: 1, message },
        };
        let mut header = None;
        let (mut source, mut target, mut map) = (None, None, None);
        for (k, raw) in text.lines().enumerate() {
            let words: Vec<&str> = raw.split('#').next().unwrap().split_whitespace().collect();
            let Some(&first) = words.first() else { continue };
            match first {
                "morphism" if header.is_none() && words.len() == 3 => {
                    let n: usize = words[2].parse().map_err(|_| at(k + 1, "size must be a number".into()))?;
                    header = Some((words[1].to_string(), n));
                }
                "source" | "target" if words.len() == 2 => {
                    let slot = if first == "source" { &mut source } else { &mut target };
                    *slot = Some(path.parent().unwrap_or(Path::new(".")).join(words[1]));
                }
                "map" => {
                    let values: Result<Vec<usize>, _> = words[1..].iter().map(|w| w.parse::<usize>()).collect();
                    map = Some(values.map_err(|_| at(k + 1, "map entries must be numbers".into()))?);
                }
                _ => return Err(at(k + 1, format!("unexpected `{}`", raw.trim()))),
            }
        }
        let last = text.lines().count().max(1);
        let (name, n) = header.ok_or_else(|| at(1, "expected header `morphism name size`".into()))?;
        let source = source.ok_or_else(|| at(last, "missing `source` line".into()))?;
        let target = target.ok_or_else(|| at(last, "missing `target` line".into()))?;
        let map = map.ok_or_else(|| at(last, "missing `map` line".into()))?;
        if map.len() != n {
            return Err(at(last, format!("map has {} entries, header says {n}", map.len())));
        }
        let source = self.load(&format!("{role}.source"), &source)?;
        let target = self.load(&format!("{role}.target"), &target)?;
        let canonical = format!(
            "morphism {name} {n}\nsource {}\ntarget {}\nmap {}\n",
            self.digests[&format!("{role}.source")],
            self.digests[&format!("{role}.target")],
            map.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        );
        self.digests.insert(role.to_string(), digest(&canonical));
        Ok(HomFile { name, source, target, map })
    }
}

/// Axiom check for whatever a file describes; lattices are checked while
/// parsing.
pub fn axiom_report(body: &Body) -> AxiomReport {
    match body {
        Body::Semiring(t) => check_semiring_axioms(t),
        Body::Ring(t) => match RingTable::from_semiring(t.clone()) {
            Err(Error::Axioms { report, .. }) => report,
            _ => AxiomReport::default(),
        },
        Body::Hyperring(t) => check_hyperstructure_axioms(t),
        Body::Module { module, .. } => check_module_axioms(module),
        Body::HModule { module, .. } => check_hmodule_axioms(module),
        Body::Lattice(_) => AxiomReport::default(),
    }
}

fn semiring_base_name(t: &SemiringTable) -> String {
    let n = t.size();
    ["B".to_string(), "zero".to_string(), format!("chain_{n}"), format!("F_{n}")]
        .into_iter()
        .find(|name| builtin(name).ok().and_then(|b| b.semiring()).as_ref() == Some(t))
        .unwrap_or_else(|| "B".to_string())
}

fn hyper_base_name(t: &HyperTable) -> String {
    let n = t.size();
    ["K".to_string(), "S".to_string(), format!("F_{n}")]
        .into_iter()
        .find(|name| builtin(name).ok().and_then(|b| b.hyper()).as_ref() == Some(t))
        .unwrap_or_else(|| "K".to_string())
}

/// A category whose objects can be read from and written to files.
trait Backend: Category {
    fn object(&self, file: &StructureFile) -> CliResult<Arc<Self::Object>>;
    fn file(&self, name: &str, object: &Self::Object) -> StructureFile;
}

impl Backend for SemiringModules {
    fn object(&self, file: &StructureFile) -> CliResult<Arc<FiniteModule>> {
        match &file.body {
            Body::Module { module, .. } if module.ring() == &self.ring => Ok(Arc::new(module.clone())),
            Body::Module { .. } => Err(Error::RingMismatch.into()),
            other => Err(usage(format!("`{}` is a {}, expected a module", file.name, other.kind()))),
        }
    }

    fn file(&self, name: &str, object: &FiniteModule) -> StructureFile {
        let base = semiring_base_name(&self.ring);
        StructureFile::new(name, Body::Module { base, module: object.clone() })
    }
}

impl Backend for HyperModules {
    fn object(&self, file: &StructureFile) -> CliResult<Arc<HModule>> {
        match &file.body {
            Body::HModule { module, .. } if module.ring() == &self.ring => Ok(Arc::new(module.clone())),
            Body::HModule { .. } => Err(Error::RingMismatch.into()),
            other => Err(usage(format!("`{}` is a {}, expected an hmodule", file.name, other.kind()))),
        }
    }

    fn file(&self, name: &str, object: &HModule) -> StructureFile {
        let base = hyper_base_name(&self.ring);
        StructureFile::new(name, Body::HModule { base, module: object.clone() })
    }
}

impl Backend for Lattices {
    fn object(&self, file: &StructureFile) -> CliResult<Arc<FiniteLattice>> {
        match &file.body {
            Body::Lattice(l) => Ok(Arc::new(l.clone())),
            other => Err(usage(format!("`{}` is a {}, expected a lattice", file.name, other.kind()))),
        }
    }

    fn file(&self, name: &str, object: &FiniteLattice) -> StructureFile {
        StructureFile::new(name, Body::Lattice(object.clone()))
    }
}

enum AnyCategory {
    Modules(SemiringModules),
    HyperModules(HyperModules),
    Lattices(Lattices),
}

fn category_of(file: &StructureFile) -> CliResult<AnyCategory> {
    match &file.body {
        Body::Module { module, .. } => Ok(AnyCategory::Modules(SemiringModules { ring: module.ring().clone() })),
        Body::HModule { module, .. } => Ok(AnyCategory::HyperModules(HyperModules { ring: module.ring().clone() })),
        Body::Lattice(_) => Ok(AnyCategory::Lattices(Lattices)),
        other => Err(usage(format!("`{}` is a {}; expected a module, hmodule or lattice", file.name, other.kind()))),
    }
}

macro_rules! with_category {
    ($any:expr, $cat:ident => $body:expr) => {
        match $any {
            AnyCategory::Modules($cat) => $body,
            AnyCategory::HyperModules($cat) => $body,
            AnyCategory::Lattices($cat) => $body,
        }
    };
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Submodules { .. } => "submodules",
        Command::Quotient { .. } => "quotient",
        Command::Classify { .. } => "classify",
        Command::Complete { .. } => "complete",
        Command::Exact { .. } => "exact",
        Command::Ext { .. } => "ext",
        Command::Hall { .. } => "hall",
        Command::LatticeOf { .. } => "lattice-of",
        Command::ModuleOf { .. } => "module-of",
        Command::Geometric { .. } => "geometric",
        Command::Geometry { .. } => "geometry",
        Command::Flags { .. } => "flags",
        Command::Axioms { .. } => "axioms",
        Command::Gen { .. } => "gen",
    }
}

pub fn execute(cli: &Cli) -> Output {
    let fail = |e: CliError| Output { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") };
    let max_size = match max_size_from_env() {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return fail(usage(format!("cannot start worker threads: {e}"))),
    };
    let mut ctx = Ctx { skip_check: cli.skip_check, max_size, digests: BTreeMap::new() };
    let report = match pool.install(|| dispatch(&mut ctx, &cli.command)) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let stdout = if cli.json {
        let doc = json!({
            "command": command_name(&cli.command),
            "input_digests": ctx.digests,
            "result": report.result,
            "witnesses": report.witnesses,
        });
        serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
    } else {
        report.text
    };
    Output { code: if report.failed { EXIT_FAILED } else { 0 }, stdout, stderr: String::new() }
}

fn dispatch(ctx: &mut Ctx, command: &Command) -> CliResult<Report> {
    match command {
        Command::Check { file } => check(ctx, file),
        Command::Submodules { file, saturated } => submodules(&ctx.load("input", file)?, *saturated),
        Command::Quotient { file, by } => quotient(&ctx.load("input", file)?, by),
        Command::Classify { hom } => {
            let h = ctx.load_hom("hom", hom)?;
            with_category!(category_of(&h.source)?, cat => classify(&cat, &h))
        }
        Command::Complete { direction, mono, epi } => {
            let (m, e) = (ctx.load_hom("mono", mono)?, ctx.load_hom("epi", epi)?);
            with_category!(category_of(&m.source)?, cat => complete(&cat, *direction, &m, &e))
        }
        Command::Exact { mono, epi } => {
            let (m, e) = (ctx.load_hom("mono", mono)?, ctx.load_hom("epi", epi)?);
            with_category!(category_of(&m.source)?, cat => exact(&cat, &m, &e))
        }
        Command::Ext { cat, a, c, max_size } => {
            let (a, c) = (ctx.load("A", a)?, ctx.load("C", c)?);
            let any = category_of(&a)?;
            if let Some(wanted) = cat {
                let ok = match (&any, wanted) {
                    (AnyCategory::Modules(m), CategoryName::Bmod) => *m.ring == boolean(),
                    (AnyCategory::HyperModules(h), CategoryName::Kmod) => *h.ring == krasner(),
                    (AnyCategory::Lattices(_), CategoryName::Lattice) => true,
                    _ => false,
                };
                if !ok {
                    return Err(usage(format!("`{}` does not live in the requested category", a.name)));
                }
            }
            with_category!(any, cat => ext(&cat, &a, &c, *max_size))
        }
        Command::Hall { e, a, b } => {
            let (e, a, b) = (ctx.load("E", e)?, ctx.load("A", a)?, ctx.load("B", b)?);
            with_category!(category_of(&e)?, cat => hall(&cat, &e, &a, &b))
        }
        Command::LatticeOf { file } => lattice_of(&ctx.load("input", file)?),
        Command::ModuleOf { file } => module_of(&ctx.load("input", file)?),
        Command::Geometric { file } => geometric(&ctx.load("input", file)?),
        Command::Geometry { file, quotient_by } => geometry(&ctx.load("input", file)?, quotient_by.as_deref()),
        Command::Flags { file } => flags(&ctx.load("input", file)?),
        Command::Axioms { corpus, max_size } => axioms(ctx, corpus, *max_size),
        Command::Gen { family, max_size, n, p, d, out } => gen(ctx, *family, *max_size, *n, *p, *d, out.as_deref()),
    }
}

fn check(ctx: &mut Ctx, path: &Path) -> CliResult<Report> {
    let file = match ctx.load_unchecked("input", path) {
        Err(CliError::File { source: Error::NotLattice(why), .. }) => {
            let text = format!("invalid lattice: {why}\n");
            return Ok(Report::new(text, json!({ "valid": false, "kind": "lattice", "reason": why })).failed(true));
        }
        other => other?,
    };
    let report = axiom_report(&file.body);
    let what = match &file.body {
        Body::Semiring(t) if t.is_idempotent() => "semiring (idempotent)".to_string(),
        Body::Hyperring(t) => t.kind().to_string(),
        Body::Module { base, module } => {
            let idem = if module.is_idempotent() { ", idempotent" } else { "" };
            format!("module over {base}{idem}")
        }
        Body::HModule { base, module } => {
            let k = base == "K" && report.is_valid() && is_kmodule(module).unwrap_or(false);
            format!("hmodule over {base}{}", if k { " (K-module)" } else { "" })
        }
        other => other.kind().to_string(),
    };
    let text = if report.is_valid() {
        format!("valid {what}\n")
    } else {
        let mut t = format!("invalid {what}\n");
        for v in &report.violations {
            let w: Vec<String> = v.witness.iter().map(|x| x.to_string()).collect();
            writeln!(t, "  {} at ({})", v.axiom, w.join(",")).unwrap();
        }
        t
    };
    let result = json!({ "valid": report.is_valid(), "kind": what, "size": file.body.size() });
    Ok(Report::new(text, result).witnesses(json!(report.violations)).failed(!report.is_valid()))
}

fn mask_list(masks: &[Mask]) -> Value {
    json!(masks.iter().map(|m| m.to_string()).collect::<Vec<_>>())
}

fn submodules(file: &StructureFile, saturated: bool) -> CliResult<Report> {
    let (subs, what) = match &file.body {
        Body::Module { module, .. } => {
            (enumerate_submodules(module, saturated), if saturated { "saturated submodules" } else { "submodules" })
        }
        Body::HModule { module, .. } => (enumerate_hsubmodules(module), "submodules"),
        other => return Err(usage(format!("submodules needs a module or hmodule, not a {}", other.kind()))),
    };
    let mut text = format!("{} {what}\n", subs.len());
    for s in &subs {
        writeln!(text, "{s}").unwrap();
    }
    Ok(Report::new(text, json!({ "count": subs.len() })).witnesses(mask_list(&subs)))
}

fn indented(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn quotient(file: &StructureFile, by: &str) -> CliResult<Report> {
    let size = file.body.size();
    let subset = parse_subset(by, size, file.labels.as_deref())?;
    let name = format!("{}_quotient", file.name);
    let (class_of, body) = match &file.body {
        Body::Module { base, module } => {
            let q = quotient_module(&Arc::new(module.clone()), subset)?;
            (q.class_of, Body::Module { base: base.clone(), module: (*q.quotient).clone() })
        }
        Body::HModule { base, module } => {
            let q = quotient_hmodule(&Arc::new(module.clone()), subset)?;
            (q.class_of, Body::HModule { base: base.clone(), module: (*q.quotient).clone() })
        }
        Body::Lattice(l) => {
            let q = quotient_lattice(&Arc::new(l.clone()), subset)?;
            (q.projection.map().to_vec(), Body::Lattice((*q.quotient).clone()))
        }
        other => return Err(usage(format!("quotient needs a module, hmodule or lattice, not a {}", other.kind()))),
    };
    let rendered = render(&StructureFile::new(name, body));
    let text = format!("classes {class_of:?}\n{rendered}");
    Ok(Report::new(text, json!({ "class_of": class_of, "quotient": rendered })))
}

fn morphism<C: Backend>(cat: &C, h: &HomFile) -> CliResult<Morphism<C::Object>> {
    Ok(Morphism::new(cat.object(&h.source)?, cat.object(&h.target)?, h.map.clone())?)
}

fn classify<C: Backend>(cat: &C, h: &HomFile) -> CliResult<Report> {
    let f = morphism(cat, h)?;
    let class = cat.classify(&f);
    let text = format!("{}: {class}\n", h.name);
    let result = json!({
        "class": class,
        "injective": f.is_injective(),
        "surjective": f.is_surjective(),
    });
    Ok(Report::new(text, result))
}

fn describe<O: Structure>(label: &str, f: &Morphism<O>) -> String {
    format!("{label}: {} -> {} elements {:?}\n", f.source().len(), f.target().len(), f.map())
}

fn square_json<O: Structure>(sq: &BiCartesianSquare<O>) -> Value {
    json!({ "i": sq.i.map(), "j": sq.j.map(), "i_prime": sq.i_prime.map(), "j_prime": sq.j_prime.map() })
}

fn complete<C: Backend>(cat: &C, direction: Direction, mono: &HomFile, epi: &HomFile) -> CliResult<Report> {
    let (m, e) = (morphism(cat, mono)?, morphism(cat, epi)?);
    let (partial, corner, name) = match direction {
        Direction::Pullback => (PartialSquare::Pullback { i_prime: m, j_prime: e }, "M", "pullback"),
        Direction::Pushout => (PartialSquare::Pushout { i: m, j: e }, "N'", "pushout"),
    };
    let sq = complete_square(cat, &partial)?;
    let new_corner = match direction {
        Direction::Pullback => sq.i.source(),
        Direction::Pushout => sq.j_prime.target(),
    };
    let rendered = render(&cat.file(name, new_corner));
    let mut text = String::new();
    for (label, f) in [("i", &sq.i), ("j", &sq.j), ("i'", &sq.i_prime), ("j'", &sq.j_prime)] {
        text.push_str(&describe(label, f));
    }
    writeln!(text, "{corner}:").unwrap();
    text.push_str(&indented(&rendered));
    Ok(Report::new(text, json!({ "square": square_json(&sq), "corner": rendered })))
}

fn exact<C: Backend>(cat: &C, mono: &HomFile, epi: &HomFile) -> CliResult<Report> {
    let seq = ShortExactSequence { i: morphism(cat, mono)?, j: morphism(cat, epi)? };
    let r = is_short_exact(cat, &seq)?;
    let text = match &r.diagnosis {
        None => "exact\n".to_string(),
        Some(why) => format!("not exact: {why}\n"),
    };
    Ok(Report::new(text, json!(r)).failed(!r.exact))
}

fn ext<C: Backend>(cat: &C, a: &StructureFile, c: &StructureFile, max_size: usize) -> CliResult<Report> {
    let r = ext_enumerate(cat, &cat.object(c)?, &cat.object(a)?, max_size)?;
    let mut text = format!(
        "{} extension classes of {} by {} with middles of at most {max_size} elements ({} middles searched)\n",
        r.classes.len(),
        c.name,
        a.name,
        r.middles_searched
    );
    if let Some(note) = &r.note {
        writeln!(text, "note: {note}").unwrap();
    }
    let mut classes = Vec::new();
    for (k, class) in r.classes.iter().enumerate() {
        let seq = &class.representative;
        let middle = render(&cat.file(&format!("middle_{}", k + 1), seq.middle()));
        writeln!(text, "class {}: middle of {} elements, {} sequences", k + 1, seq.middle().len(), class.orbit_size).unwrap();
        writeln!(text, "  i = {:?}\n  j = {:?}", seq.i.map(), seq.j.map()).unwrap();
        text.push_str(&indented(&middle));
        classes.push(json!({
            "middle": middle,
            "middle_size": seq.middle().len(),
            "i": seq.i.map(),
            "j": seq.j.map(),
            "sequences": class.orbit_size,
        }));
    }
    let result = json!({ "count": r.classes.len(), "middles_searched": r.middles_searched, "note": r.note });
    Ok(Report::new(text, result).witnesses(json!(classes)))
}

fn hall<C: Backend>(cat: &C, e: &StructureFile, a: &StructureFile, b: &StructureFile) -> CliResult<Report> {
    let r = hall_constant(cat, &cat.object(e)?, &cat.object(a)?, &cat.object(b)?)?;
    let mut text = format!("{}\n", r.count);
    for w in &r.witnesses {
        writeln!(text, "{w}").unwrap();
    }
    Ok(Report::new(text, json!({ "count": r.count })).witnesses(mask_list(&r.witnesses)))
}

fn lattice_of(file: &StructureFile) -> CliResult<Report> {
    let Body::Module { module, .. } = &file.body else {
        return Err(usage("lattice-of needs a module over B"));
    };
    let s = saturated_submodule_lattice(module)?;
    let rendered = render(&StructureFile::new(format!("S_{}", file.name), Body::Lattice((*s.lattice).clone())));
    let mut text = rendered.clone();
    text.push_str("elements\n");
    for (k, m) in s.elements.iter().enumerate() {
        writeln!(text, "{k} = {m}").unwrap();
    }
    Ok(Report::new(text, json!({ "lattice": rendered })).witnesses(mask_list(&s.elements)))
}

fn module_of(file: &StructureFile) -> CliResult<Report> {
    let Body::Lattice(l) = &file.body else {
        return Err(usage("module-of needs a lattice"));
    };
    let m = compact_elements_module(l);
    let rendered = render(&StructureFile::new(format!("{}_module", file.name), Body::Module { base: "B".into(), module: m }));
    Ok(Report::new(rendered.clone(), json!({ "module": rendered })))
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn geometric(file: &StructureFile) -> CliResult<Report> {
    let Body::Lattice(l) = &file.body else {
        return Err(usage("geometric needs a lattice"));
    };
    let r = is_geometric(l);
    let mut text = format!("geometric: {}\n", yes_no(r.geometric));
    let pair = |w: Option<(usize, usize)>| w.map_or(String::new(), |(x, y)| format!(" (witness {x}, {y})"));
    writeln!(text, "jordan-dedekind: {}{}", yes_no(r.jordan_dedekind), pair(r.jordan_dedekind_witness)).unwrap();
    writeln!(text, "semimodular: {}{}", yes_no(r.semimodular), pair(r.semimodular_witness)).unwrap();
    let atom = r.atomistic_witness.map_or(String::new(), |x| format!(" (witness {x})"));
    writeln!(text, "atomistic: {}{atom}", yes_no(r.atomistic)).unwrap();
    Ok(Report::new(text, json!(r)))
}

fn geometry_text(g: &IncidenceGeometry) -> String {
    let mut text = format!("{} points, {} lines, {} flags\n", g.points.len(), g.lines.len(), g.flag_count());
    if let Some(m) = g.min_line_size {
        writeln!(text, "smallest line: {m} points").unwrap();
    }
    writeln!(text, "every line has at least four points: {}", yes_no(g.lines_have_four_points)).unwrap();
    for l in &g.lines {
        writeln!(text, "line {l}").unwrap();
    }
    text
}

fn hmodule(file: &StructureFile, command: &str) -> CliResult<HModule> {
    match &file.body {
        Body::HModule { module, .. } => Ok(module.clone()),
        other => Err(usage(format!("{command} needs an hmodule over K, not a {}", other.kind()))),
    }
}

fn geometry(file: &StructureFile, quotient_by: Option<&str>) -> CliResult<Report> {
    let m = Arc::new(hmodule(file, "geometry")?);
    let g = match quotient_by {
        None => projective_geometry(&m)?,
        Some(x) => {
            let p = parse_subset(x, m.size(), file.labels.as_deref())?;
            let point = p.single().ok_or_else(|| usage("--quotient-by takes a single point"))?;
            quotient_geometry(&m, point)?
        }
    };
    Ok(Report::new(geometry_text(&g), json!(g)))
}

fn flags(file: &StructureFile) -> CliResult<Report> {
    let g = projective_geometry(&hmodule(file, "flags")?)?;
    let text = format!("{}\n", g.flag_count());
    Ok(Report::new(text, json!({ "flags": g.flag_count(), "points": g.points.len(), "lines": g.lines.len() })))
}

fn axioms(ctx: &mut Ctx, dir: &Path, max_size: Option<usize>) -> CliResult<Report> {
    let io = |source| CliError::Io { path: dir.display().to_string(), source };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(io)?
        .into_iter()
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let mut files = Vec::new();
    for p in &paths {
        let name = p.file_name().unwrap().to_string_lossy().into_owned();
        let file = ctx.load(&format!("corpus/{name}"), p)?;
        if max_size.map_or(true, |m| file.body.size() <= m) {
            files.push((name, file));
        } else {
            ctx.digests.remove(&format!("corpus/{name}"));
        }
    }
    let Some((_, first)) = files.first() else {
        return Err(usage(format!("{}: no structure files in the corpus", dir.display())));
    };
    with_category!(category_of(first)?, cat => {
        let corpus = files.iter().map(|(_, f)| cat.object(f)).collect::<CliResult<Vec<_>>>()?;
        let r = verify_proto_exact_axioms(&cat, &corpus)?;
        let mut text = format!("category: {}\nobjects: {}\napexes: {}\n", r.category, r.objects, r.apexes);
        for a in &r.axioms {
            let verdict = if a.passed() { "pass" } else { "FAIL" };
            writeln!(text, "axiom {}: {verdict} ({} instances) {}", a.axiom, a.checked, a.statement).unwrap();
            for f in &a.failures {
                writeln!(text, "  {f}").unwrap();
            }
        }
        let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
        Ok(Report::new(text, json!(r)).witnesses(json!(names)).failed(!r.passed()))
    })
}

#[allow(clippy::too_many_arguments)]
fn gen(ctx: &Ctx, family: Family, max_size: usize, n: usize, p: usize, d: usize, out: Option<&Path>) -> CliResult<Report> {
    let files: Vec<(String, StructureFile)> = match family {
        Family::Bmod => numbered("bmod", "mod", generate::bmodules(max_size)?, |m| Body::Module { base: "B".into(), module: m }),
        Family::Kmod => numbered("kmod", "hmod", generate::kmodules(max_size)?, |m| Body::HModule { base: "K".into(), module: m }),
        Family::Lattice => numbered("lattice", "lat", generate::lattices(max_size)?, Body::Lattice),
        Family::En => {
            let name = format!("E_{n}");
            let body = Body::HModule { base: "K".into(), module: en_module(n)? };
            vec![(format!("{name}.hmod"), StructureFile::new(name, body))]
        }
        Family::Proj => {
            let name = format!("P{d}_F{p}");
            let body = Body::HModule { base: "K".into(), module: projective_space_kmodule(p, d)? };
            vec![(format!("{name}.hmod"), StructureFile::new(name, body))]
        }
    };
    if let Some((_, big)) = files.iter().find(|(_, f)| f.body.size() > ctx.max_size) {
        return Err(Error::TooLarge { what: format!("structure `{}`", big.name), size: big.body.size(), limit: ctx.max_size }.into());
    }
    let mut text = String::new();
    let mut listing = Vec::new();
    for (k, (file_name, file)) in files.iter().enumerate() {
        let rendered = render(file);
        match out {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
                let path = dir.join(file_name);
                fs::write(&path, &rendered).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                writeln!(text, "{file_name}").unwrap();
            }
            None => {
                if k > 0 {
                    text.push('\n');
                }
                text.push_str(&rendered);
            }
        }
        listing.push(json!({ "file": file_name, "name": file.name, "size": file.body.size(), "text": rendered }));
    }
    Ok(Report::new(text, json!({ "count": files.len() })).witnesses(json!(listing)))
}

/// Names family members `<family>_<size>_<k>` with `k` counting within a size.
fn numbered<T>(family: &str, ext: &str, items: Vec<T>, body: impl Fn(T) -> Body) -> Vec<(String, StructureFile)> {
    let mut out: Vec<(String, StructureFile)> = Vec::new();
    let mut last = (0, 0);
    for item in items {
        let b = body(item);
        let size = b.size();
        last = if last.0 == size { (size, last.1 + 1) } else { (size, 1) };
        let name = format!("{family}_{size:02}_{:03}", last.1);
        out.push((format!("{name}.{ext}"), StructureFile::new(name, b)));
    }
    out
}
