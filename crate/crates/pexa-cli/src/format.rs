//! The line-oriented structure file format.
//!
//! ```text
//! # comments run to the end of the line
//! semiring B 2
//! labels 0 1
//! add
//! 0 1
//! 1 1
//! mul
//! 0 0
//! 0 1
//! ```
//!
//! The header is `kind name size` with kind one of `semiring`, `ring`,
//! `hyperring` (also `hypergroup`, `hyperfield`), `module`, `hmodule` or
//! `lattice`. Tables follow as rows under `add`, `mul`, `act`, `hyperadd` or
//! `leq` headings. Hyperaddition rows are brace sets such as `{0,1}`. Cells can
//! also be given as equations (`1+1 = {0,1}`, `1*2 = 2`); equations are
//! symmetric, and cells left open default to `0 + x = x`, `0 * x = 0` and
//! `1 * x = x`. Modules name their base with `base <builtin>`; `act` has one
//! row per base element. Elements are indices, or labels once a `labels` line
//! has been read.
//!
//! Parsing reorders elements so that zero comes first and one second (bottom
//! first for lattices). Rendering writes that canonical form, ASCII with LF
//! line endings, and parsing a rendered file gives back the same structure.

use std::fmt::Write as _;

use pexa::lattice::{lattice_from_poset, FiniteLattice};
use pexa::tables::{builtin, HyperKind, HyperTable, SemiringTable};
use pexa::{Error, Mask, Result, MAX_ELEMENTS};
use pexa::hmod::HModule;
use pexa::smod::FiniteModule;
use std::sync::Arc;

/// What a structure file describes.
#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Semiring(SemiringTable),
    /// Ring tables; the ring axioms are checked on demand.
    Ring(SemiringTable),
    Hyperring(HyperTable),
    Module { base: String, module: FiniteModule },
    HModule { base: String, module: HModule },
    Lattice(FiniteLattice),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Semiring(_) => "semiring",
            Body::Ring(_) => "ring",
            Body::Hyperring(_) => "hyperring",
            Body::Module { .. } => "module",
            Body::HModule { .. } => "hmodule",
            Body::Lattice(_) => "lattice",
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Body::Semiring(t) | Body::Ring(t) => t.size(),
            Body::Hyperring(t) => t.size(),
            Body::Module { module, .. } => module.size(),
            Body::HModule { module, .. } => module.size(),
            Body::Lattice(l) => l.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureFile {
    pub name: String,
    pub labels: Option<Vec<String>>,
    pub body: Body,
}

impl StructureFile {
    pub fn new(name: impl Into<String>, body: Body) -> Self {
        StructureFile { name: name.into(), labels: None, body }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub max_size: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_size: pexa::DEFAULT_MAX_SIZE }
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// A significant line: its number, and its text with comments stripped.
#[derive(Clone, Copy)]
struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        parse_error(self.number, self.indent + offset + 1, message)
    }

    /// Whitespace-separated words with their offsets.
    fn words(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out
    }
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let body = raw.split('#').next().unwrap();
            let trimmed = body.trim_end();
            let text = trimmed.trim_start();
            (!text.is_empty()).then_some(Line { number: k + 1, indent: trimmed.len() - text.len(), text })
        })
        .collect()
}

const SECTIONS: [&str; 5] = ["add", "mul", "act", "hyperadd", "leq"];

struct Section<'a> {
    heading: Line<'a>,
    rows: Vec<Line<'a>>,
}

/// Resolves element references: indices, or labels.
struct Names<'a> {
    labels: Option<&'a [String]>,
}

impl Names<'_> {
    fn element(&self, line: &Line, offset: usize, word: &str, bound: usize) -> Result<usize> {
        let found = match word.parse::<usize>() {
            Ok(i) => Some(i),
            Err(_) => self.labels.and_then(|l| l.iter().position(|x| x == word)),
        };
        match found {
            Some(i) if i < bound => Ok(i),
            Some(i) => Err(line.error(offset, format!("element {i} is out of range (size {bound})"))),
            None => Err(line.error(offset, format!("unknown element `{word}`"))),
        }
    }

    /// `{a,b}`, `{}` or a bare element.
    fn set(&self, line: &Line, offset: usize, word: &str, bound: usize) -> Result<Mask> {
        let Some(inner) = word.strip_prefix('{') else {
            return Ok(Mask::singleton(self.element(line, offset, word, bound)?));
        };
        let Some(inner) = inner.strip_suffix('}') else {
            return Err(line.error(offset, "unterminated set"));
        };
        let mut mask = Mask::EMPTY;
        let mut at = offset + 1;
        for part in inner.split(',') {
            let item = part.trim();
            if !item.is_empty() {
                mask.insert(self.element(line, at + part.find(item).unwrap_or(0), item, bound)?);
            } else if inner.trim() != "" {
                return Err(line.error(at, "empty set element"));
            }
            at += part.len() + 1;
        }
        Ok(mask)
    }
}

/// Splits a row of brace sets, allowing spaces inside braces.
fn set_tokens<'a>(line: &Line<'a>) -> Result<Vec<(usize, &'a str)>> {
    let text = line.text;
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '{' {
            let end = text[i..].find('}').ok_or_else(|| line.error(i, "unterminated set"))?;
            out.push((i, &text[i..=i + end]));
            while chars.peek().is_some_and(|&(j, _)| j <= i + end) {
                chars.next();
            }
        } else {
            let end = text[i..].find(char::is_whitespace).map_or(text.len(), |e| i + e);
            out.push((i, &text[i..end]));
            while chars.peek().is_some_and(|&(j, _)| j < end) {
                chars.next();
            }
        }
    }
    Ok(out)
}

enum Op {
    Add,
    Mul,
}

/// `a+b = rhs` or `a*b = rhs`.
fn parse_equation<'a>(line: &Line<'a>) -> Result<(Op, (usize, &'a str), (usize, &'a str), (usize, &'a str))> {
    let eq = line.text.find('=').unwrap();
    let lhs = &line.text[..eq];
    let (op, at) = match (lhs.find('+'), lhs.find('*')) {
        (Some(p), None) => (Op::Add, p),
        (None, Some(p)) => (Op::Mul, p),
        _ => return Err(line.error(0, "expected an equation `a+b = c` or `a*b = c`")),
    };
    let part = |start: usize, end: usize| {
        let s = &line.text[start..end];
        let t = s.trim();
        (start + s.find(t).unwrap_or(0), t)
    };
    let a = part(0, at);
    let b = part(at + 1, eq);
    let rhs = part(eq + 1, line.text.len());
    for (offset, word) in [a, b, rhs] {
        if word.is_empty() {
            return Err(line.error(offset, "missing operand"));
        }
    }
    Ok((op, a, b, rhs))
}

pub fn parse_structure(text: &str, options: ParseOptions) -> Result<StructureFile> {
    if !text.is_ascii() {
        let (number, line) = text.lines().enumerate().find(|(_, l)| !l.is_ascii()).unwrap();
        let column = line.chars().position(|c| !c.is_ascii()).unwrap() + 1;
        return Err(parse_error(number + 1, column, "structure files are ASCII"));
    }
    let lines = significant_lines(text);
    let Some(header) = lines.first() else {
        return Err(parse_error(1, 1, "empty structure file"));
    };
    let words = header.words();
    if words.len() != 3 {
        return Err(header.error(0, "expected header `kind name size`"));
    }
    let (kind, class) = match words[0].1 {
        "hypergroup" => ("hyperring", Some(HyperKind::Hypergroup)),
        "hyperfield" => ("hyperring", Some(HyperKind::Hyperfield)),
        k @ ("semiring" | "ring" | "hyperring" | "module" | "hmodule" | "lattice") => (k, None),
        other => return Err(header.error(words[0].0, format!("unknown kind `{other}`"))),
    };
    let name = words[1].1.to_string();
    let size: usize = words[2].1.parse().map_err(|_| header.error(words[2].0, "size must be a number"))?;
    if size == 0 {
        return Err(header.error(words[2].0, "size must be positive"));
    }
    let limit = options.max_size.min(MAX_ELEMENTS);
    if size > limit {
        return Err(Error::TooLarge { what: format!("structure `{name}`"), size, limit });
    }

    let mut labels: Option<Vec<String>> = None;
    let mut base: Option<(Line, String)> = None;
    let mut class = class;
    let mut sections: Vec<Section> = Vec::new();
    let mut equations: Vec<Line> = Vec::new();
    for line in &lines[1..] {
        let words = line.words();
        let first = words[0].1;
        if line.text.contains('=') {
            equations.push(*line);
        } else if first == "labels" {
            let names: Vec<String> = words[1..].iter().map(|w| w.1.to_string()).collect();
            if names.len() != size {
                return Err(line.error(0, format!("expected {size} labels, found {}", names.len())));
            }
            labels = Some(names);
        } else if first == "base" {
            if words.len() != 2 {
                return Err(line.error(0, "expected `base <builtin>`"));
            }
            base = Some((*line, words[1].1.to_string()));
        } else if first == "class" {
            class = Some(match words.get(1).map(|w| w.1) {
                Some("hypergroup") => HyperKind::Hypergroup,
                Some("hyperring") => HyperKind::Hyperring,
                Some("hyperfield") => HyperKind::Hyperfield,
                _ => return Err(line.error(0, "expected `class hypergroup|hyperring|hyperfield`")),
            });
        } else if SECTIONS.contains(&first) && words.len() == 1 {
            if sections.iter().any(|s| s.heading.text == first) {
                return Err(line.error(0, format!("duplicate `{first}` section")));
            }
            sections.push(Section { heading: *line, rows: Vec::new() });
        } else if let Some(section) = sections.last_mut() {
            section.rows.push(*line);
        } else {
            return Err(line.error(words[0].0, format!("unexpected `{first}` before any table")));
        }
    }
    let names = Names { labels: labels.as_deref() };
    let last_line = lines.last().unwrap().number;
    let section = |name: &str| sections.iter().find(|s| s.heading.text == name);
    let allowed: &[&str] = match kind {
        "semiring" | "ring" => &["add", "mul"],
        "hyperring" => &["hyperadd", "mul"],
        "module" => &["add", "act"],
        "hmodule" => &["hyperadd", "act"],
        _ => &["leq"],
    };
    if let Some(s) = sections.iter().find(|s| !allowed.contains(&s.heading.text)) {
        return Err(s.heading.error(0, format!("a {kind} has no `{}` table", s.heading.text)));
    }

    // single-valued tables
    let value_table = |heading: &str, rows: usize, cols: usize, bound: usize| -> Result<Vec<Option<usize>>> {
        let mut cells = vec![None; rows * cols];
        let Some(s) = section(heading) else { return Ok(cells) };
        if s.rows.len() != rows {
            return Err(parse_error(
                s.rows.last().map_or(s.heading.number, |l| l.number),
                1,
                format!("`{heading}` needs {rows} rows, found {}", s.rows.len()),
            ));
        }
        for (r, line) in s.rows.iter().enumerate() {
            let words = line.words();
            if words.len() != cols {
                return Err(line.error(0, format!("`{heading}` rows need {cols} entries, found {}", words.len())));
            }
            for (c, (offset, w)) in words.into_iter().enumerate() {
                cells[r * cols + c] = Some(names.element(line, offset, w, bound)?);
            }
        }
        Ok(cells)
    };
    let set_table = |heading: &str| -> Result<Vec<Option<Mask>>> {
        let mut cells = vec![None; size * size];
        let Some(s) = section(heading) else { return Ok(cells) };
        if s.rows.len() != size {
            return Err(parse_error(
                s.rows.last().map_or(s.heading.number, |l| l.number),
                1,
                format!("`{heading}` needs {size} rows, found {}", s.rows.len()),
            ));
        }
        for (r, line) in s.rows.iter().enumerate() {
            let tokens = set_tokens(line)?;
            if tokens.len() != size {
                return Err(line.error(0, format!("`{heading}` rows need {size} entries, found {}", tokens.len())));
            }
            for (c, (offset, w)) in tokens.into_iter().enumerate() {
                cells[r * size + c] = Some(names.set(line, offset, w, size)?);
            }
        }
        Ok(cells)
    };

    let mut add_cells: Vec<Option<Mask>> = match kind {
        "hyperring" | "hmodule" => set_table("hyperadd")?,
        "lattice" => Vec::new(),
        _ => value_table("add", size, size, size)?.into_iter().map(|c| c.map(Mask::singleton)).collect(),
    };
    let has_mul = matches!(kind, "semiring" | "ring") || (kind == "hyperring" && class != Some(HyperKind::Hypergroup));
    let mut mul_cells = if has_mul { value_table("mul", size, size, size)? } else { Vec::new() };
    for line in &equations {
        let (op, (ao, a), (bo, b), (ro, rhs)) = parse_equation(line)?;
        let (a, b) = (names.element(line, ao, a, size)?, names.element(line, bo, b, size)?);
        match op {
            Op::Add if !add_cells.is_empty() => {
                let set = names.set(line, ro, rhs, size)?;
                if !matches!(kind, "hyperring" | "hmodule") && set.len() != 1 {
                    return Err(line.error(ro, "sums in this structure are single elements"));
                }
                add_cells[a * size + b] = Some(set);
                add_cells[b * size + a] = Some(set);
            }
            Op::Mul if has_mul => {
                let c = names.element(line, ro, rhs, size)?;
                mul_cells[a * size + b] = Some(c);
                mul_cells[b * size + a] = Some(c);
            }
            _ => return Err(line.error(0, format!("this equation does not apply to a {kind}"))),
        }
    }
    for x in 0..size.min(add_cells.len()) {
        for (p, q) in [(x, 0), (0, x)] {
            add_cells[p * size + q].get_or_insert(Mask::singleton(x));
        }
    }
    if size >= 2 {
        for x in 0..mul_cells.len() / size.max(1) {
            mul_cells[x * size].get_or_insert(0);
            mul_cells[x].get_or_insert(0);
            mul_cells[size + x].get_or_insert(x);
            mul_cells[x * size + 1].get_or_insert(x);
        }
    } else if let Some(c) = mul_cells.first_mut() {
        c.get_or_insert(0);
    }
    let missing = |what: &str, k: usize, sep: &str| {
        parse_error(last_line, 1, format!("{what} entry {}{sep}{} is missing", k / size, k % size))
    };
    let add_sets = |cells: Vec<Option<Mask>>| -> Result<Vec<Mask>> {
        cells.iter().enumerate().map(|(k, c)| c.ok_or_else(|| missing("addition", k, "+"))).collect()
    };
    let add_values = |cells: Vec<Option<Mask>>| -> Result<Vec<usize>> {
        Ok(add_sets(cells)?.into_iter().map(|m| m.first().unwrap()).collect())
    };
    let mul_values = |cells: Vec<Option<usize>>| -> Result<Vec<usize>> {
        cells.iter().enumerate().map(|(k, c)| c.ok_or_else(|| missing("multiplication", k, "*"))).collect()
    };
    let base_named = |what: &str| -> Result<String> {
        match &base {
            Some((_, b)) => Ok(b.clone()),
            None => Err(parse_error(header.number, 1, format!("a {what} needs a `base <builtin>` line"))),
        }
    };
    let base_error = |e: Error| match &base {
        Some((line, _)) => line.error(5, e.to_string()),
        None => e,
    };
    let need = |heading: &str| -> Result<()> {
        if section(heading).is_none() {
            return Err(parse_error(last_line, 1, format!("missing `{heading}` table")));
        }
        Ok(())
    };

    let body = match kind {
        "semiring" | "ring" => {
            let add = add_values(add_cells)?;
            let mul = mul_values(mul_cells)?;
            let t = canonical_semiring(SemiringTable::from_tables(size, add, mul)?, &mut labels)?;
            if kind == "ring" { Body::Ring(t) } else { Body::Semiring(t) }
        }
        "hyperring" => {
            let hyperadd = add_sets(add_cells)?;
            let mul = if has_mul { mul_values(mul_cells)? } else { Vec::new() };
            let kind = class.unwrap_or_else(|| infer_class(size, &mul));
            Body::Hyperring(canonical_hyper(HyperTable::from_tables(size, hyperadd, mul, kind)?, &mut labels)?)
        }
        "module" => {
            need("act")?;
            let base = base_named("module")?;
            let ring = builtin(&base)
                .map_err(base_error)?
                .semiring()
                .ok_or_else(|| base_error(Error::InvalidArgument(format!("`{base}` is not a semiring"))))?;
            let act = mul_values(value_table("act", ring.size(), size, size)?)?;
            let add = add_values(add_cells)?;
            let m = FiniteModule::from_tables(Arc::new(ring), size, add, act)?;
            Body::Module { base, module: canonical_module(m, &mut labels)? }
        }
        "hmodule" => {
            need("act")?;
            let base = base_named("hmodule")?;
            let ring = builtin(&base)
                .map_err(base_error)?
                .hyper()
                .ok_or_else(|| base_error(Error::InvalidArgument(format!("`{base}` is not a hyperring"))))?;
            let act = mul_values(value_table("act", ring.size(), size, size)?)?;
            let add = add_sets(add_cells)?;
            let m = HModule::from_tables(Arc::new(ring), size, add, act)?;
            Body::HModule { base, module: canonical_hmodule(m, &mut labels)? }
        }
        _ => {
            need("leq")?;
            let s = section("leq").unwrap();
            let mut leq = vec![false; size * size];
            if s.rows.len() != size {
                return Err(parse_error(s.heading.number, 1, format!("`leq` needs {size} rows, found {}", s.rows.len())));
            }
            for (r, line) in s.rows.iter().enumerate() {
                let words = line.words();
                if words.len() != size {
                    return Err(line.error(0, format!("`leq` rows need {size} entries, found {}", words.len())));
                }
                for (c, (offset, w)) in words.into_iter().enumerate() {
                    leq[r * size + c] = match w {
                        "0" => false,
                        "1" => true,
                        _ => return Err(line.error(offset, "`leq` entries are 0 or 1")),
                    };
                }
            }
            let order = match (0..size).find(|&b| (0..size).all(|x| leq[b * size + x])) {
                Some(bottom) => with_first(size, &[bottom]),
                None => (0..size).collect(),
            };
            let leq = (0..size * size).map(|p| leq[order[p / size] * size + order[p % size]]).collect();
            relabel(&mut labels, &order);
            Body::Lattice(lattice_from_poset(size, leq)?)
        }
    };
    Ok(StructureFile { name, labels, body })
}

/// A hyperring is a hyperfield when every nonzero element is invertible.
fn infer_class(size: usize, mul: &[usize]) -> HyperKind {
    let field = size >= 2 && (1..size).all(|a| (1..size).any(|b| mul[a * size + b] == 1));
    if field { HyperKind::Hyperfield } else { HyperKind::Hyperring }
}

/// Permutation listing `first` and then the remaining elements in order;
/// `order[new] = old`.
fn with_first(size: usize, first: &[usize]) -> Vec<usize> {
    let mut order = first.to_vec();
    order.extend((0..size).filter(|x| !first.contains(x)));
    order
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    pos
}

fn relabel(labels: &mut Option<Vec<String>>, order: &[usize]) {
    if let Some(l) = labels {
        *l = order.iter().map(|&o| l[o].clone()).collect();
    }
}

fn permute_values(table: &[usize], size: usize, order: &[usize]) -> Vec<usize> {
    let pos = inverse(order);
    (0..size * size).map(|p| pos[table[order[p / size] * size + order[p % size]]]).collect()
}

fn permute_sets(table: &[Mask], size: usize, order: &[usize]) -> Vec<Mask> {
    let pos = inverse(order);
    (0..size * size).map(|p| table[order[p / size] * size + order[p % size]].map(&pos)).collect()
}

/// Element orders with zero and one in front, when they exist.
fn zero_one_order(size: usize, is_zero: impl Fn(usize) -> bool, is_one: impl Fn(usize) -> bool) -> Vec<usize> {
    let Some(zero) = (0..size).find(|&z| is_zero(z)) else { return (0..size).collect() };
    match (0..size).find(|&u| u != zero && is_one(u)) {
        Some(one) => with_first(size, &[zero, one]),
        None => with_first(size, &[zero]),
    }
}

fn canonical_semiring(t: SemiringTable, labels: &mut Option<Vec<String>>) -> Result<SemiringTable> {
    let n = t.size();
    let order = zero_one_order(n, |z| (0..n).all(|x| t.add(z, x) == x), |u| (0..n).all(|x| t.mul(u, x) == x));
    relabel(labels, &order);
    SemiringTable::from_tables(n, permute_values(t.add_table(), n, &order), permute_values(t.mul_table(), n, &order))
}

fn canonical_hyper(t: HyperTable, labels: &mut Option<Vec<String>>) -> Result<HyperTable> {
    let n = t.size();
    let order = zero_one_order(
        n,
        |z| (0..n).all(|x| t.sum(z, x) == Mask::singleton(x)),
        |u| t.has_mul() && (0..n).all(|x| t.mul(u, x) == x),
    );
    relabel(labels, &order);
    let mul = if t.has_mul() { permute_values(t.mul_table(), n, &order) } else { Vec::new() };
    HyperTable::from_tables(n, permute_sets(t.hyperadd_table(), n, &order), mul, t.kind())
}

/// Module elements reordered with zero first; the base is untouched.
fn module_order(size: usize, is_zero: impl Fn(usize) -> bool) -> Vec<usize> {
    match (0..size).find(|&z| is_zero(z)) {
        Some(z) => with_first(size, &[z]),
        None => (0..size).collect(),
    }
}

fn permute_action(act: &[usize], ring_size: usize, size: usize, order: &[usize]) -> Vec<usize> {
    let pos = inverse(order);
    (0..ring_size * size).map(|p| pos[act[(p / size) * size + order[p % size]]]).collect()
}

fn canonical_module(m: FiniteModule, labels: &mut Option<Vec<String>>) -> Result<FiniteModule> {
    let n = m.size();
    let order = module_order(n, |z| (0..n).all(|x| m.add(z, x) == x));
    relabel(labels, &order);
    let act = permute_action(m.act_table(), m.ring().size(), n, &order);
    FiniteModule::from_tables(m.ring().clone(), n, permute_values(m.add_table(), n, &order), act)
}

fn canonical_hmodule(m: HModule, labels: &mut Option<Vec<String>>) -> Result<HModule> {
    let n = m.size();
    let order = module_order(n, |z| (0..n).all(|x| m.sum(z, x) == Mask::singleton(x)));
    relabel(labels, &order);
    let act = permute_action(m.act_table(), m.ring().size(), n, &order);
    HModule::from_tables(m.ring().clone(), n, permute_sets(m.add_table(), n, &order), act)
}

fn set_text(m: Mask) -> String {
    let items: Vec<String> = m.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn write_rows(out: &mut String, heading: &str, rows: usize, cols: usize, cell: impl Fn(usize, usize) -> String) {
    out.push_str(heading);
    out.push('\n');
    for r in 0..rows {
        let row: Vec<String> = (0..cols).map(|c| cell(r, c)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Canonical text of a structure.
pub fn render(file: &StructureFile) -> String {
    let size = file.body.size();
    let mut out = String::new();
    writeln!(out, "{} {} {}", file.body.kind(), file.name, size).unwrap();
    if let Some(labels) = &file.labels {
        writeln!(out, "labels {}", labels.join(" ")).unwrap();
    }
    match &file.body {
        Body::Semiring(t) | Body::Ring(t) => {
            write_rows(&mut out, "add", size, size, |a, b| t.add(a, b).to_string());
            write_rows(&mut out, "mul", size, size, |a, b| t.mul(a, b).to_string());
        }
        Body::Hyperring(t) => {
            writeln!(out, "class {}", t.kind()).unwrap();
            write_rows(&mut out, "hyperadd", size, size, |a, b| set_text(t.sum(a, b)));
            if t.has_mul() {
                write_rows(&mut out, "mul", size, size, |a, b| t.mul(a, b).to_string());
            }
        }
        Body::Module { base, module } => {
            writeln!(out, "base {base}").unwrap();
            write_rows(&mut out, "add", size, size, |a, b| module.add(a, b).to_string());
            write_rows(&mut out, "act", module.ring().size(), size, |r, x| module.act(r, x).to_string());
        }
        Body::HModule { base, module } => {
            writeln!(out, "base {base}").unwrap();
            write_rows(&mut out, "hyperadd", size, size, |a, b| set_text(module.sum(a, b)));
            write_rows(&mut out, "act", module.ring().size(), size, |r, x| module.act(r, x).to_string());
        }
        Body::Lattice(l) => {
            write_rows(&mut out, "leq", size, size, |a, b| if l.leq(a, b) { "1" } else { "0" }.to_string());
        }
    }
    out
}

/// Parses a subset such as `{0,2}`, `0,2` or `{}`, resolving labels.
pub fn parse_subset(text: &str, size: usize, labels: Option<&[String]>) -> Result<Mask> {
    let trimmed = text.trim();
    let braced = if trimmed.starts_with('{') { trimmed.to_string() } else { format!("{{{trimmed}}}") };
    let line = Line { number: 1, indent: 0, text: &braced };
    Names { labels }.set(&line, 0, &braced, size)
}
