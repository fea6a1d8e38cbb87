//! Parser for filtration spec documents.
//!
//! A spec document is a flat, line-oriented file of named blocks holding
//! `key = value` entries:
//!
//! ```text
//! document := line*
//! line     := blank | comment | header | entry
//! comment  := '#' any*
//! header   := '[' block ']'
//! block    := 'ring' | 'ideals' | 'filtration' | 'reductions'
//!           | 'joint-reductions' | 'analysis'
//! entry    := key '=' value            (trailing '# ...' is stripped)
//!
//! monomial := '1' | factor ('*' factor)*
//! factor   := var | var '^' digits
//! row      := monomial (',' monomial)*
//! matrix   := row (';' row)*
//! ```
//!
//! Keys per block:
//!
//! | block              | key              | value                                       |
//! |--------------------|------------------|---------------------------------------------|
//! | `ring`             | `backend`        | `poly` or `semigroup`                       |
//! |                    | `variables`      | comma list of 1 or 2 names (poly, default `x, y`) |
//! |                    | `generators`     | comma list of integers (semigroup)          |
//! |                    | `quotient`       | comma list of monomials (poly, optional)    |
//! |                    | `dimension`      | `1` or `2`, checked against the ring        |
//! |                    | `cohen-macaulay` | `true`/`false`, optional, checked           |
//! | `ideals`           | any name         | comma list of monomial generators           |
//! | `filtration`       | `kind`           | `powers`, `integral-closure`, `ratliff-rush`|
//! |                    | `ideals`         | comma list of ideal names                   |
//! | `reductions`       | any name         | matrix, one row per ideal                   |
//! | `joint-reductions` | any name         | `q1, ..., qs : matrix`                      |
//! | `analysis`         | `commands`       | comma list of commands, may be empty        |
//! |                    | `box`, `margin`, `offset`, `search-degree` | non-negative integers |
//!
//! Semigroup monomials are written in the variable `t`, e.g. `t^3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use mgfilt_core::filtration::{Filtration, FiltrationKind};
use mgfilt_core::ideal::{Ideal, Monomial, PolyRing, Ring, SemigroupRing};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Pipelines selectable by `--command` or the `commands` key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Hilbert,
    Reductions,
    Postulation,
    Huneke,
    H1,
    VerifyAll,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Hilbert,
        Command::Reductions,
        Command::Postulation,
        Command::Huneke,
        Command::H1,
        Command::VerifyAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Reductions => "reductions",
            Command::Postulation => "postulation",
            Command::Huneke => "huneke",
            Command::H1 => "h1",
            Command::VerifyAll => "verify-all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Numeric parameters of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub box_size: i64,
    pub margin: i64,
    pub base_offset: i64,
    /// Degree bound for monomial reduction searches.
    pub search_degree: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            box_size: 6,
            margin: 3,
            base_offset: 8,
            search_degree: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedIdeal {
    pub name: String,
    pub ideal: Ideal,
}

/// An explicit complete reduction, one row of generators per ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSpec {
    pub name: String,
    pub line: usize,
    pub rows: Vec<Vec<Monomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointReductionSpec {
    pub name: String,
    pub line: usize,
    pub type_vector: Vec<u32>,
    pub rows: Vec<Vec<Monomial>>,
}

/// A validated spec document.
#[derive(Clone, Debug)]
pub struct SpecDocument {
    pub ring: Ring,
    pub ideals: Vec<NamedIdeal>,
    pub kind: FiltrationKind,
    /// Ideals of the filtration, in order.
    pub filtration_ideals: Vec<String>,
    pub reductions: Vec<ReductionSpec>,
    pub joint_reductions: Vec<JointReductionSpec>,
    pub commands: Vec<Command>,
    pub settings: Settings,
}

impl SpecDocument {
    /// A fresh filtration with an empty cache.
    pub fn filtration(&self) -> Filtration {
        let ideals = self
            .filtration_ideals
            .iter()
            .map(|n| self.ideal(n).expect("names resolved at parse time").clone())
            .collect();
        Filtration::new(ideals, self.kind).expect("filtration validated at parse time")
    }

    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.iter().find(|i| i.name == name).map(|i| &i.ideal)
    }

    /// E.g. `k[[t^3, t^4, t^5]]` or `k[[x, y]]/(x^2, x*y)`.
    pub fn ring_description(&self) -> String {
        match &self.ring {
            Ring::Semigroup(r) => {
                let g: Vec<String> = r.generators().iter().map(|a| format!("t^{a}")).collect();
                format!("k[[{}]]", g.join(", "))
            }
            Ring::Poly(r) => {
                let base = format!("k[[{}]]", r.var_names().join(", "));
                if r.has_quotient() {
                    let q: Vec<String> =
                        r.quotient().gens().iter().map(|m| r.format_monomial(m)).collect();
                    format!("{base}/({})", q.join(", "))
                } else {
                    base
                }
            }
        }
    }

    /// E.g. `powers: I = (t^3, t^4), J = (t^3)`.
    pub fn filtration_description(&self) -> String {
        let parts: Vec<String> = self
            .filtration_ideals
            .iter()
            .map(|n| format!("{n} = {}", self.ideal(n).expect("resolved")))
            .collect();
        format!("{}: {}", self.kind.name(), parts.join(", "))
    }
}

#[derive(Clone, Debug)]
struct Entry {
    line: usize,
    key: String,
    value: String,
}

const BLOCKS: [&str; 6] = ["ring", "ideals", "filtration", "reductions", "joint-reductions", "analysis"];

/// Parse and validate a spec document.
pub fn parse_spec(text: &str) -> Result<SpecDocument, ParseError> {
    let blocks = split_blocks(text)?;
    let empty = Vec::new();
    let block = |name: &str| blocks.get(name).map(|(_, e)| e).unwrap_or(&empty);
    let require = |name: &str| {
        blocks
            .get(name)
            .map(|(_, e)| e)
            .ok_or_else(|| ParseError::new(0, name, format!("missing [{name}] block")))
    };

    let ring = parse_ring(require("ring")?)?;
    let ideals = parse_ideals(&ring, block("ideals"))?;
    let (kind, filtration_ideals) = parse_filtration(require("filtration")?, &ideals)?;
    let s = filtration_ideals.len();
    let reductions = block("reductions")
        .iter()
        .map(|e| {
            let rows = parse_matrix(&ring, e, &e.value, s)?;
            Ok(ReductionSpec {
                name: e.key.clone(),
                line: e.line,
                rows,
            })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    let joint_reductions = block("joint-reductions")
        .iter()
        .map(|e| parse_joint(&ring, e, s))
        .collect::<Result<Vec<_>, ParseError>>()?;
    let (commands, settings) = parse_analysis(block("analysis"))?;

    let doc = SpecDocument {
        ring,
        ideals,
        kind,
        filtration_ideals,
        reductions,
        joint_reductions,
        commands,
        settings,
    };
    let line = require("filtration")?.first().map_or(0, |e| e.line);
    let ideals: Vec<Ideal> = doc
        .filtration_ideals
        .iter()
        .map(|n| doc.ideal(n).expect("resolved").clone())
        .collect();
    Filtration::new(ideals, doc.kind).map_err(|e| ParseError::new(line, "filtration", e.to_string()))?;
    Ok(doc)
}

fn split_blocks(text: &str) -> Result<BTreeMap<String, (usize, Vec<Entry>)>, ParseError> {
    let mut blocks: BTreeMap<String, (usize, Vec<Entry>)> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| ParseError::new(line, "header", "unterminated block header"))?
                .trim();
            if !BLOCKS.contains(&name) {
                return Err(ParseError::new(line, "header", format!("unknown block [{name}]")));
            }
            if blocks.contains_key(name) {
                return Err(ParseError::new(line, "header", format!("duplicate block [{name}]")));
            }
            blocks.insert(name.to_string(), (line, Vec::new()));
            current = Some(name.to_string());
            continue;
        }
        let Some(block) = &current else {
            return Err(ParseError::new(line, "entry", "entry outside of any block"));
        };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ParseError::new(line, block, "expected `key = value`"))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ParseError::new(line, block, "empty key"));
        }
        let entries = &mut blocks.get_mut(block).expect("current block exists").1;
        if entries.iter().any(|e| e.key == key) {
            return Err(ParseError::new(line, key, "duplicate key"));
        }
        entries.push(Entry {
            line,
            key: key.to_string(),
            value: value.trim().to_string(),
        });
    }
    Ok(blocks)
}

fn list(value: &str) -> Vec<&str> {
    if value.trim().is_empty() {
        return Vec::new();
    }
    value.split(',').map(str::trim).collect()
}

fn parse_uint<T: FromStr>(e: &Entry, s: &str) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| ParseError::new(e.line, &e.key, format!("expected a non-negative integer, got `{s}`")))
}

fn check_keys(entries: &[Entry], block: &str, allowed: &[&str]) -> Result<(), ParseError> {
    match entries.iter().find(|e| !allowed.contains(&e.key.as_str())) {
        Some(e) => Err(ParseError::new(e.line, &e.key, format!("unknown key in [{block}]"))),
        None => Ok(()),
    }
}

fn parse_ring(entries: &[Entry]) -> Result<Ring, ParseError> {
    check_keys(
        entries,
        "ring",
        &["backend", "variables", "generators", "quotient", "dimension", "cohen-macaulay"],
    )?;
    let get = |k: &str| entries.iter().find(|e| e.key == k);
    let backend = get("backend").ok_or_else(|| ParseError::new(0, "backend", "missing ring backend"))?;
    let dim_entry = get("dimension").ok_or_else(|| ParseError::new(0, "dimension", "missing ring dimension"))?;
    let declared: u32 = parse_uint(dim_entry, &dim_entry.value)?;
    if !(1..=2).contains(&declared) {
        return Err(ParseError::new(dim_entry.line, "dimension", "dimension must be 1 or 2"));
    }
    let ring = match backend.value.as_str() {
        "semigroup" => {
            for k in ["variables", "quotient"] {
                if let Some(e) = get(k) {
                    return Err(ParseError::new(e.line, k, "not allowed for the semigroup backend"));
                }
            }
            let g = get("generators")
                .ok_or_else(|| ParseError::new(backend.line, "generators", "missing semigroup generators"))?;
            let mut gens = list(&g.value)
                .into_iter()
                .map(|v| parse_uint::<u32>(g, v))
                .collect::<Result<Vec<_>, _>>()?;
            gens.sort_unstable();
            gens.dedup();
            let r = SemigroupRing::new(gens).map_err(|e| ParseError::new(g.line, "generators", e.to_string()))?;
            if declared != 1 {
                return Err(ParseError::new(
                    dim_entry.line,
                    "dimension",
                    format!("declared dimension {declared} but the ring has dimension 1"),
                ));
            }
            Ring::Semigroup(r)
        }
        "poly" => {
            if let Some(e) = get("generators") {
                return Err(ParseError::new(e.line, "generators", "not allowed for the poly backend"));
            }
            let names: Vec<String> = match get("variables") {
                Some(e) => list(&e.value).into_iter().map(String::from).collect(),
                None => vec!["x".into(), "y".into()],
            };
            if let Some(e) = get("variables") {
                let ok = names.iter().all(|n| !n.is_empty() && n.chars().all(char::is_alphabetic));
                if !ok || names.len() > 2 || names.is_empty() {
                    return Err(ParseError::new(e.line, "variables", "expected 1 or 2 alphabetic names"));
                }
            }
            let quotient = match get("quotient") {
                Some(e) => list(&e.value)
                    .into_iter()
                    .map(|m| parse_monomial(&names, e, m))
                    .collect::<Result<Vec<_>, _>>()?,
                None => Vec::new(),
            };
            let r = PolyRing::with_declared_dimension(names, quotient, declared)
                .map_err(|e| ParseError::new(dim_entry.line, "ring", e.to_string()))?;
            Ring::Poly(r)
        }
        other => {
            return Err(ParseError::new(
                backend.line,
                "backend",
                format!("unknown backend `{other}` (expected poly or semigroup)"),
            ))
        }
    };
    if let Some(e) = get("cohen-macaulay") {
        let flag: bool = e
            .value
            .parse()
            .map_err(|_| ParseError::new(e.line, "cohen-macaulay", "expected true or false"))?;
        if flag != ring.is_cohen_macaulay() {
            return Err(ParseError::new(
                e.line,
                "cohen-macaulay",
                format!("declared {flag} but the ring is{} Cohen-Macaulay", if flag { " not" } else { "" }),
            ));
        }
    }
    Ok(ring)
}

fn var_names(ring: &Ring) -> Vec<String> {
    match ring {
        Ring::Poly(r) => r.var_names().to_vec(),
        Ring::Semigroup(_) => vec!["t".into()],
    }
}

fn parse_monomial(names: &[String], e: &Entry, text: &str) -> Result<Monomial, ParseError> {
    let err = |msg: String| ParseError::new(e.line, &e.key, msg);
    let mut exps = vec![0u32; names.len()];
    if text == "1" {
        return Ok(Monomial::new(exps));
    }
    if text.is_empty() {
        return Err(err("empty monomial".into()));
    }
    for factor in text.split('*').map(str::trim) {
        let (var, exp) = match factor.split_once('^') {
            Some((v, k)) => (
                v.trim(),
                k.trim()
                    .parse::<u32>()
                    .map_err(|_| err(format!("malformed exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let i = names
            .iter()
            .position(|n| n == var)
            .ok_or_else(|| err(format!("unknown variable `{var}` in `{text}`")))?;
        exps[i] += exp;
    }
    Ok(Monomial::new(exps))
}

fn parse_row(ring: &Ring, e: &Entry, text: &str) -> Result<Vec<Monomial>, ParseError> {
    let names = var_names(ring);
    let mons = list(text)
        .into_iter()
        .map(|m| parse_monomial(&names, e, m))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = mons.iter().find(|m| !ring.is_valid_monomial(m)) {
        return Err(ParseError::new(
            e.line,
            &e.key,
            format!("{} is not a nonzero monomial of the ring", ring.format_monomial(bad)),
        ));
    }
    Ok(mons)
}

fn parse_ideals(ring: &Ring, entries: &[Entry]) -> Result<Vec<NamedIdeal>, ParseError> {
    entries
        .iter()
        .map(|e| {
            let gens = parse_row(ring, e, &e.value)?;
            let ideal = ring.ideal(&gens).map_err(|err| ParseError::new(e.line, &e.key, err.to_string()))?;
            if !ideal.is_m_primary() {
                return Err(ParseError::new(
                    e.line,
                    &e.key,
                    format!("{ideal} is not primary to the maximal ideal"),
                ));
            }
            Ok(NamedIdeal {
                name: e.key.clone(),
                ideal,
            })
        })
        .collect()
}

fn parse_filtration(
    entries: &[Entry],
    ideals: &[NamedIdeal],
) -> Result<(FiltrationKind, Vec<String>), ParseError> {
    check_keys(entries, "filtration", &["kind", "ideals"])?;
    let get = |k: &str| {
        entries
            .iter()
            .find(|e| e.key == k)
            .ok_or_else(|| ParseError::new(0, k, format!("missing `{k}` in [filtration]")))
    };
    let k = get("kind")?;
    let kind = match k.value.as_str() {
        "powers" => FiltrationKind::Powers,
        "integral-closure" => FiltrationKind::IntegralClosure,
        "ratliff-rush" => FiltrationKind::RatliffRush,
        other => return Err(ParseError::new(k.line, "kind", format!("unknown filtration kind `{other}`"))),
    };
    let e = get("ideals")?;
    let names: Vec<String> = list(&e.value).into_iter().map(String::from).collect();
    if names.is_empty() {
        return Err(ParseError::new(e.line, "ideals", "at least one ideal is required"));
    }
    if let Some(bad) = names.iter().find(|n| !ideals.iter().any(|i| &i.name == *n)) {
        return Err(ParseError::new(e.line, "ideals", format!("unresolved ideal name `{bad}`")));
    }
    Ok((kind, names))
}

fn parse_matrix(ring: &Ring, e: &Entry, text: &str, s: usize) -> Result<Vec<Vec<Monomial>>, ParseError> {
    let rows = text
        .split(';')
        .map(|r| parse_row(ring, e, r.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != s {
        return Err(ParseError::new(
            e.line,
            &e.key,
            format!("expected {s} rows separated by `;`, got {}", rows.len()),
        ));
    }
    Ok(rows)
}

fn parse_joint(ring: &Ring, e: &Entry, s: usize) -> Result<JointReductionSpec, ParseError> {
    let (q, matrix) = e
        .value
        .split_once(':')
        .ok_or_else(|| ParseError::new(e.line, &e.key, "expected `q1, ..., qs : matrix`"))?;
    let type_vector = list(q)
        .into_iter()
        .map(|v| parse_uint::<u32>(e, v))
        .collect::<Result<Vec<_>, _>>()?;
    if type_vector.len() != s {
        return Err(ParseError::new(e.line, &e.key, format!("type vector needs {s} entries")));
    }
    Ok(JointReductionSpec {
        name: e.key.clone(),
        line: e.line,
        type_vector,
        rows: parse_matrix(ring, e, matrix.trim(), s)?,
    })
}

fn parse_analysis(entries: &[Entry]) -> Result<(Vec<Command>, Settings), ParseError> {
    check_keys(entries, "analysis", &["commands", "box", "margin", "offset", "search-degree"])?;
    let mut settings = Settings::default();
    let mut commands = Vec::new();
    for e in entries {
        match e.key.as_str() {
            "commands" => {
                for c in list(&e.value) {
                    let c: Command = c.parse().map_err(|m| ParseError::new(e.line, "commands", m))?;
                    if !commands.contains(&c) {
                        commands.push(c);
                    }
                }
            }
            "box" => settings.box_size = parse_uint(e, &e.value)?,
            "margin" => settings.margin = parse_uint(e, &e.value)?,
            "offset" => settings.base_offset = parse_uint(e, &e.value)?,
            "search-degree" => settings.search_degree = parse_uint(e, &e.value)?,
            _ => unreachable!("keys checked above"),
        }
    }
    if settings.box_size < 0 || settings.margin < 0 || settings.base_offset < 0 {
        return Err(ParseError::new(0, "analysis", "box, margin and offset must be non-negative"));
    }
    Ok((commands, settings))
}
