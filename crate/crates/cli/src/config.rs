//! The sectioned config format. A file fully determines a Yetter-Drinfeld
//! spec, its algebra structure and optionally a braiding that overrides the
//! induced one:
//!
//! ```text
//! [group]
//! free = 0
//! torsion = 2
//! names = eps
//!
//! [basis]
//! v1 = 1
//! xi11 = 0
//!
//! [action]
//! eps = −1, 1
//!
//! [mult]
//! v1 v1 -> xi11
//! unit = one
//!
//! [braiding]
//! v1 v1 -> −v1@v1
//! ```
//!
//! Everything after `#` on a line is a comment. Actions are either diagonal scalars or matrix rows separated by `;`, row
//! `a` being the image of letter `a`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use cofree_hopf::braid::BraidingTable;
use cofree_hopf::grouphopf::{induced_braiding, AbelianGroup, YdSpec};
use cofree_hopf::kernel::{Alphabet, Element, Letter, LocalMap, Matrix, Scalar, Word};
use cofree_hopf::qalg::BraidedAlgebraSpec;

use crate::expr::{parse_expr, parse_scalar, scalar_text, Basis, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub col: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, col: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line: Some(line),
            col: Some(col),
            message: message.into(),
        }
    }

    fn section(message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            col: None,
            message: message.into(),
        }
    }

    fn located<T>(loc: &Located<T>, message: impl Into<String>) -> Self {
        if loc.line == 0 {
            Self::section(message)
        } else {
            Self::at(loc.line, loc.col, message)
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.col) {
            (Some(l), Some(c)) => write!(f, "config line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "config line {l}: {}", self.message),
            _ => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A value with the position it was read from; positions are ignored by
/// equality. Line 0 marks a value that was not read from text.
#[derive(Clone, Debug)]
pub struct Located<T> {
    pub value: T,
    pub line: usize,
    pub col: usize,
}

impl<T> Located<T> {
    fn new(value: T, line: usize, col: usize) -> Self {
        Located { value, line, col }
    }

    fn detached(value: T) -> Self {
        Located { value, line: 0, col: 0 }
    }
}

impl<T: PartialEq> PartialEq for Located<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct GroupSection {
    pub free: usize,
    pub torsion: Vec<u32>,
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ActionEntry {
    Diagonal(Vec<Scalar>),
    Matrix(Vec<Vec<Scalar>>),
}

/// `left right -> rhs`, the right-hand side kept as written.
#[derive(Clone, Debug, PartialEq)]
pub struct TableLine {
    pub left: String,
    pub right: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConfigDocument {
    pub group: Located<GroupSection>,
    pub basis: Vec<Located<(String, Vec<i64>)>>,
    pub action: Vec<Located<(String, ActionEntry)>>,
    pub mult: Option<Vec<Located<TableLine>>>,
    pub unit: Option<Located<String>>,
    pub braiding: Option<Vec<Located<TableLine>>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Group,
    Basis,
    Action,
    Mult,
    Braiding,
}

fn trimmed_col(raw: &str, part: &str) -> usize {
    // column (1-based, in chars) of `part`, a subslice of `raw`
    let offset = part.as_ptr() as usize - raw.as_ptr() as usize;
    raw[..offset].chars().count() + 1
}

fn split_kv(raw: &str, line: usize) -> Result<(&str, &str), ConfigError> {
    let Some(eq) = raw.find('=') else {
        let t = raw.trim_start();
        return Err(ConfigError::at(line, trimmed_col(raw, t), "expected 'key = value'"));
    };
    Ok((raw[..eq].trim(), raw[eq + 1..].trim()))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn comma_list(v: &str) -> Vec<&str> {
    if v.trim().is_empty() {
        Vec::new()
    } else {
        v.split(',').map(str::trim).collect()
    }
}

fn parse_table_line(raw: &str, line: usize) -> Result<Located<TableLine>, ConfigError> {
    let Some(arrow) = raw.find("->") else {
        return Err(ConfigError::at(line, trimmed_col(raw, raw.trim_start()), "expected 'a b -> element'"));
    };
    let lhs = &raw[..arrow];
    let names: Vec<&str> = lhs.split_whitespace().collect();
    if names.len() != 2 {
        return Err(ConfigError::at(
            line,
            trimmed_col(raw, raw.trim_start()),
            "expected exactly two letters before '->'",
        ));
    }
    let rhs = raw[arrow + 2..].trim();
    let col = if rhs.is_empty() { raw.chars().count() + 1 } else { trimmed_col(raw, rhs) };
    Ok(Located::new(
        TableLine {
            left: names[0].into(),
            right: names[1].into(),
            rhs: rhs.into(),
        },
        line,
        col,
    ))
}

fn scalar_at(s: &str, raw: &str, line: usize) -> Result<Scalar, ConfigError> {
    let col = trimmed_col(raw, s);
    parse_scalar(s).map_err(|e| ConfigError::at(line, col + e.col - 1, e.message))
}

/// Reads the document without resolving names; see [`load`] for validation.
pub fn parse_document(text: &str) -> Result<ConfigDocument, ConfigError> {
    let mut section: Option<Section> = None;
    let mut seen: HashSet<&'static str> = HashSet::new();
    let mut group: Option<Located<GroupSection>> = None;
    let mut doc_basis = Vec::new();
    let mut action = Vec::new();
    let mut mult: Option<Vec<Located<TableLine>>> = None;
    let mut unit = None;
    let mut braiding: Option<Vec<Located<TableLine>>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.split('#').next().unwrap_or_default();
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if t.starts_with('[') {
            let col = trimmed_col(raw, t);
            let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
                return Err(ConfigError::at(line, col, "malformed section header"));
            };
            let (sec, key) = match name.trim() {
                "group" => (Section::Group, "group"),
                "basis" => (Section::Basis, "basis"),
                "action" => (Section::Action, "action"),
                "mult" => (Section::Mult, "mult"),
                "braiding" => (Section::Braiding, "braiding"),
                other => return Err(ConfigError::at(line, col, format!("unknown section [{other}]"))),
            };
            if !seen.insert(key) {
                return Err(ConfigError::at(line, col, format!("duplicate section [{key}]")));
            }
            match sec {
                Section::Group => group = Some(Located::new(GroupSection::default(), line, col)),
                Section::Mult => mult = Some(Vec::new()),
                Section::Braiding => braiding = Some(Vec::new()),
                _ => {}
            }
            section = Some(sec);
            continue;
        }
        let Some(sec) = section else {
            return Err(ConfigError::at(line, trimmed_col(raw, t), "entry outside of any section"));
        };
        match sec {
            Section::Group => {
                let (k, v) = split_kv(raw, line)?;
                let g = &mut group.as_mut().expect("opened").value;
                let vcol = trimmed_col(raw, v);
                match k {
                    "free" => {
                        g.free = v
                            .parse()
                            .map_err(|_| ConfigError::at(line, vcol, "free rank must be a nonnegative integer"))?
                    }
                    "torsion" => {
                        g.torsion = v
                            .split(|c: char| c == ',' || c.is_whitespace())
                            .filter(|s| !s.is_empty())
                            .map(|s| s.parse::<u32>())
                            .collect::<Result<_, _>>()
                            .map_err(|_| ConfigError::at(line, vcol, "torsion orders must be positive integers"))?
                    }
                    "names" => g.names = Some(comma_list(v).into_iter().map(String::from).collect()),
                    other => {
                        return Err(ConfigError::at(
                            line,
                            trimmed_col(raw, raw.trim_start()),
                            format!("unknown key '{other}' in [group]"),
                        ))
                    }
                }
            }
            Section::Basis => {
                let (k, v) = split_kv(raw, line)?;
                let kcol = trimmed_col(raw, raw.trim_start());
                let exps = comma_list(v)
                    .into_iter()
                    .map(|s| s.replace('−', "-").parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ConfigError::at(line, trimmed_col(raw, v), "malformed exponent vector"))?;
                doc_basis.push(Located::new((k.to_string(), exps), line, kcol));
            }
            Section::Action => {
                let (k, v) = split_kv(raw, line)?;
                let kcol = trimmed_col(raw, raw.trim_start());
                let entry = if v.contains(';') {
                    let rows = v
                        .split(';')
                        .map(|row| comma_list(row).into_iter().map(|s| scalar_at(s, raw, line)).collect())
                        .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
                    ActionEntry::Matrix(rows)
                } else {
                    ActionEntry::Diagonal(comma_list(v).into_iter().map(|s| scalar_at(s, raw, line)).collect::<Result<_, _>>()?)
                };
                action.push(Located::new((k.to_string(), entry), line, kcol));
            }
            Section::Mult => {
                if !t.contains("->") && t.starts_with("unit") {
                    let (k, v) = split_kv(raw, line)?;
                    if k != "unit" {
                        return Err(ConfigError::at(line, trimmed_col(raw, t), "expected 'unit = letter'"));
                    }
                    unit = Some(Located::new(v.to_string(), line, trimmed_col(raw, v)));
                } else {
                    mult.as_mut().expect("opened").push(parse_table_line(raw, line)?);
                }
            }
            Section::Braiding => braiding.as_mut().expect("opened").push(parse_table_line(raw, line)?),
        }
    }
    let group = group.ok_or_else(|| ConfigError::section("missing [group] section"))?;
    if !seen.contains("basis") {
        return Err(ConfigError::section("missing [basis] section"));
    }
    Ok(ConfigDocument {
        group,
        basis: doc_basis,
        action,
        mult,
        unit,
        braiding,
    })
}

/// A validated config: the YD spec, the braiding in force and the braided
/// algebra built from them.
#[derive(Clone, Debug)]
pub struct Model {
    pub document: ConfigDocument,
    pub yd: YdSpec,
    pub braiding: BraidingTable,
    pub algebra: BraidedAlgebraSpec,
    pub braiding_overridden: bool,
    /// Non-fatal normalizations performed while loading.
    pub notes: Vec<String>,
}

fn table_element(
    al: &Alphabet,
    entry: &Located<TableLine>,
    length: usize,
) -> Result<(Letter, Letter, Element<Word>), ConfigError> {
    let letter = |name: &str| {
        al.letter(name)
            .ok_or_else(|| ConfigError::located(entry, format!("unknown letter '{name}'")))
    };
    let (a, b) = (letter(&entry.value.left)?, letter(&entry.value.right)?);
    let shift = |e: ParseError| ConfigError::at(entry.line, entry.col + e.col - 1, e.message);
    let expr = parse_expr(&entry.value.rhs).map_err(shift)?;
    let mut out = Element::zero(al.id());
    for (c, basis) in &expr.terms {
        let word = match basis {
            Basis::Unit => Word::empty(),
            Basis::Word { items, smash: None } if items.iter().all(|i| i.group.is_none()) => Word(
                items
                    .iter()
                    .map(|i| letter(&i.name))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            _ => return Err(ConfigError::located(entry, "table entries must be combinations of plain words")),
        };
        if word.len() != length {
            return Err(ConfigError::located(
                entry,
                format!("table entry has a term of length {} where {length} is required", word.len()),
            ));
        }
        out.add_term(word, c);
    }
    Ok((a, b, out))
}

/// Parses and validates: every referenced letter is declared, every element
/// parses, actions are invertible and the braiding table is invertible.
pub fn load(text: &str) -> Result<Model, ConfigError> {
    let doc = parse_document(text)?;
    build(doc)
}

pub fn build(doc: ConfigDocument) -> Result<Model, ConfigError> {
    let gs = &doc.group.value;
    let group = AbelianGroup::new(gs.free, gs.torsion.clone(), gs.names.clone())
        .map_err(|e| ConfigError::located(&doc.group, e.to_string()))?;
    let count = group.generator_count();
    let mut notes = Vec::new();

    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for entry in &doc.basis {
        let (name, exps) = &entry.value;
        if !is_identifier(name) {
            return Err(ConfigError::located(entry, format!("'{name}' is not a valid letter name")));
        }
        if name == "q" {
            return Err(ConfigError::located(entry, "'q' is reserved for the scalar parameter"));
        }
        if names.contains(name) {
            return Err(ConfigError::located(entry, format!("letter '{name}' declared twice")));
        }
        if exps.len() != count {
            return Err(ConfigError::located(
                entry,
                format!("malformed exponent vector: {} entries for {count} generators", exps.len()),
            ));
        }
        for (t, &m) in group.torsion().iter().enumerate() {
            let e = exps[group.rank() + t];
            if e < 0 || e >= m as i64 {
                notes.push(format!(
                    "line {}: exponent {e} of {} normalized to {}",
                    entry.line,
                    group.names()[group.rank() + t],
                    e.rem_euclid(m as i64)
                ));
            }
        }
        names.push(name.clone());
        degrees.push(group.element(exps.clone()).expect("length checked"));
    }
    if names.is_empty() {
        return Err(ConfigError::section("[basis] declares no letters"));
    }
    let alphabet = Alphabet::new(names);
    let id = alphabet.id();
    let dim = alphabet.len();

    let mut actions: Vec<Option<Matrix>> = vec![None; count];
    for entry in &doc.action {
        let (gen, a) = &entry.value;
        let Some(i) = group.names().iter().position(|n| n == gen) else {
            return Err(ConfigError::located(entry, format!("unknown group generator '{gen}'")));
        };
        if actions[i].is_some() {
            return Err(ConfigError::located(entry, format!("action of '{gen}' given twice")));
        }
        let m = match a {
            ActionEntry::Diagonal(d) if d.len() == dim => Matrix::diagonal(d.clone()),
            ActionEntry::Matrix(rows) if rows.len() == dim && rows.iter().all(|r| r.len() == dim) => {
                Matrix::from_rows(rows.clone()).expect("square")
            }
            _ => {
                return Err(ConfigError::located(
                    entry,
                    format!("action of '{gen}' must have {dim} diagonal entries or {dim} rows of {dim}"),
                ))
            }
        };
        actions[i] = Some(m);
    }
    let actions = actions.into_iter().map(|m| m.unwrap_or_else(|| Matrix::identity(dim))).collect();

    let mult = match &doc.mult {
        None => None,
        Some(lines) => {
            let mut m = LocalMap::new(dim);
            let mut set = HashSet::new();
            for entry in lines {
                let (a, b, img) = table_element(&alphabet, entry, 1)?;
                if !set.insert((a, b)) {
                    return Err(ConfigError::located(entry, "product given twice"));
                }
                m.set(a, b, img);
            }
            Some(m)
        }
    };
    let unit = match &doc.unit {
        None => None,
        Some(u) => Some(
            alphabet
                .letter(&u.value)
                .ok_or_else(|| ConfigError::located(u, format!("unknown letter '{}'", u.value)))?,
        ),
    };
    let yd = YdSpec::new(group, alphabet.clone(), degrees, actions, mult.clone(), unit)
        .map_err(|e| ConfigError::section(format!("invalid Yetter-Drinfeld data: {e}")))?;

    let induced = induced_braiding(&yd).map_err(|e| ConfigError::section(format!("induced braiding: {e}")))?;
    let (braiding, overridden) = match &doc.braiding {
        None => (induced, false),
        Some(lines) => {
            let mut over = BTreeMap::new();
            for entry in lines {
                let (a, b, img) = table_element(&alphabet, entry, 2)?;
                if over.insert((a, b), img).is_some() {
                    return Err(ConfigError::located(entry, "braiding entry given twice"));
                }
            }
            let table = BraidingTable::from_fn(alphabet.clone(), |a, b| {
                over.get(&(a, b)).cloned().unwrap_or_else(|| induced.image(a, b).clone())
            })
            .map_err(|e| ConfigError::section(format!("[braiding]: {e}")))?;
            (table, true)
        }
    };
    let algebra = BraidedAlgebraSpec::new(braiding.clone(), mult.unwrap_or_else(|| LocalMap::new(dim)), unit)
        .map_err(|e| ConfigError::section(e.to_string()))?;
    debug_assert_eq!(algebra.id(), id);
    Ok(Model {
        document: doc,
        yd,
        braiding,
        algebra,
        braiding_overridden: overridden,
        notes,
    })
}

/// The document describing `yd` (without a braiding override).
pub fn document_from_yd(yd: &YdSpec) -> ConfigDocument {
    let group = yd.group();
    let al = yd.alphabet();
    let basis = al
        .letters()
        .map(|a| Located::detached((al.name(a).to_string(), yd.degree(a).exps().to_vec())))
        .collect();
    let action = yd
        .actions()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let n = m.dim();
            let entry = if m.is_diagonal() {
                ActionEntry::Diagonal((0..n).map(|k| m.get(k, k).clone()).collect())
            } else {
                ActionEntry::Matrix((0..n).map(|r| m.row(r).to_vec()).collect())
            };
            Located::detached((group.names()[i].clone(), entry))
        })
        .collect();
    let mult = yd.mult().map(|m| {
        let mut lines = Vec::new();
        for a in al.letters() {
            for b in al.letters() {
                if let Some(img) = m.get(a, b).filter(|e| !e.is_zero()) {
                    lines.push(Located::detached(TableLine {
                        left: al.name(a).into(),
                        right: al.name(b).into(),
                        rhs: img.render(al),
                    }));
                }
            }
        }
        lines
    });
    ConfigDocument {
        group: Located::detached(GroupSection {
            free: group.rank(),
            torsion: group.torsion().to_vec(),
            names: Some(group.names().to_vec()),
        }),
        basis,
        action,
        mult,
        unit: yd.unit().map(|u| Located::detached(al.name(u).to_string())),
        braiding: None,
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn scalars(row: &[Scalar]) -> String {
    row.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
}

fn kv(out: &mut String, k: &str, v: &str) {
    if v.is_empty() {
        out.push_str(&format!("{k} =\n"));
    } else {
        out.push_str(&format!("{k} = {v}\n"));
    }
}

/// Canonical text of a document; [`parse_document`] reads it back to an
/// equal document.
pub fn emit(doc: &ConfigDocument) -> String {
    let mut out = String::from("[group]\n");
    let g = &doc.group.value;
    kv(&mut out, "free", &g.free.to_string());
    kv(&mut out, "torsion", &join(&g.torsion));
    if let Some(n) = &g.names {
        kv(&mut out, "names", &n.join(", "));
    }
    out.push_str("\n[basis]\n");
    for b in &doc.basis {
        kv(&mut out, &b.value.0, &join(&b.value.1));
    }
    if !doc.action.is_empty() {
        out.push_str("\n[action]\n");
        for a in &doc.action {
            let v = match &a.value.1 {
                ActionEntry::Diagonal(d) => scalars(d),
                ActionEntry::Matrix(rows) => rows.iter().map(|r| scalars(r)).collect::<Vec<_>>().join("; "),
            };
            kv(&mut out, &a.value.0, &v);
        }
    }
    let table = |out: &mut String, lines: &[Located<TableLine>]| {
        for l in lines {
            out.push_str(&format!("{} {} -> {}\n", l.value.left, l.value.right, l.value.rhs));
        }
    };
    if doc.mult.is_some() || doc.unit.is_some() {
        out.push_str("\n[mult]\n");
        table(&mut out, doc.mult.as_deref().unwrap_or_default());
        if let Some(u) = &doc.unit {
            kv(&mut out, "unit", &u.value);
        }
    }
    if let Some(b) = &doc.braiding {
        out.push_str("\n[braiding]\n");
        table(&mut out, b);
    }
    out
}
