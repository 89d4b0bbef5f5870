//! The `.naf` workspace format: sections of `key = value` lines.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use nilaff::affine::AffTrans;
use nilaff::closure::{DeclaredHull, FiniteGroup, GroupPresentation, PresentationSpec, SeriesFactor, Word};
use nilaff::morphism::{Certificate, GroupMorphism};
use nilaff::nilgroup::{AlgebraRef, NilLieAlgebra};

use crate::syntax::{fmt_vector, parse_aff_trans, parse_vector, ValueError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// The item lies outside the quasi-unipotent scope rather than being malformed.
    pub scope_violation: bool,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.source, self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
struct Entry {
    key: Vec<String>,
    value: String,
    line: usize,
    value_col: usize,
}

#[derive(Debug, Clone)]
struct Section {
    source: String,
    kind: String,
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            source: self.source.clone(),
            line,
            column,
            message: message.into(),
            scope_violation: false,
        }
    }

    fn item_error(&self, e: &Entry, message: impl fmt::Display) -> ParseError {
        self.error(e.line, e.value_col, format!("{} `{}`: {message}", self.kind, self.name))
    }

    fn header_error(&self, message: impl fmt::Display) -> ParseError {
        self.error(self.line, 1, format!("{} `{}`: {message}", self.kind, self.name))
    }

    fn value_error(&self, e: &Entry, v: ValueError) -> ParseError {
        self.error(e.line, e.value_col + v.offset, format!("{} `{}`: {}", self.kind, self.name, v.message))
    }

    fn single(&self, key: &str) -> Result<Option<&Entry>, ParseError> {
        let mut found = self.entries.iter().filter(|e| e.key.len() == 1 && e.key[0] == key);
        let first = found.next();
        if let Some(dup) = found.next() {
            return Err(self.item_error(dup, format!("`{key}` given twice")));
        }
        Ok(first)
    }

    fn required(&self, key: &str) -> Result<&Entry, ParseError> {
        self.single(key)?
            .ok_or_else(|| self.header_error(format!("missing `{key}`")))
    }
}

fn lex(source: &str, text: &str) -> Result<Vec<Section>, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let error = |column: usize, message: &str| ParseError {
            source: source.to_string(),
            line,
            column,
            message: message.to_string(),
            scope_violation: false,
        };
        if let Some(head) = trimmed.strip_prefix('[') {
            let Some(head) = head.strip_suffix(']') else {
                return Err(error(indent + 1, "section header must end with `]`"));
            };
            let mut words = head.split_whitespace();
            let kind = words.next().unwrap_or("").to_string();
            let name = words.next().unwrap_or("").to_string();
            if words.next().is_some() {
                return Err(error(indent + 1, "section header takes a kind and one name"));
            }
            let needs_name = kind != "expect";
            if !["algebra", "group", "hull", "morphism", "expect"].contains(&kind.as_str()) {
                return Err(error(indent + 2, &format!("unknown section kind `{kind}`")));
            }
            if needs_name == name.is_empty() {
                return Err(error(indent + 1, if needs_name { "section needs a name" } else { "[expect] takes no name" }));
            }
            sections.push(Section {
                source: source.to_string(),
                kind,
                name,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(section) = sections.last_mut() else {
            return Err(error(indent + 1, "entry outside of any section"));
        };
        let Some(eq) = content.find('=') else {
            return Err(error(indent + 1, "expected `key = value`"));
        };
        let key: Vec<String> = content[..eq].split_whitespace().map(str::to_string).collect();
        if key.is_empty() {
            return Err(error(indent + 1, "missing key before `=`"));
        }
        let value = &content[eq + 1..];
        let lead = value.len() - value.trim_start().len();
        section.entries.push(Entry {
            key,
            value: value.trim().to_string(),
            line,
            value_col: eq + 2 + lead,
        });
    }
    Ok(sections)
}

/// A morphism as declared, before verification.
#[derive(Debug, Clone)]
pub struct MorphismDecl {
    pub source: String,
    pub target: String,
    pub morphism: GroupMorphism,
    pub certificate: Option<Certificate>,
}

/// One expected verdict: `command item = true|false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub command: String,
    pub item: String,
    pub expected: bool,
}

#[derive(Debug, Clone)]
pub struct GroupDecl {
    pub algebra: String,
    pub presentation: GroupPresentation,
}

/// Everything loaded from one or more `.naf` files, cross-references resolved and validated.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub algebras: Vec<(String, AlgebraRef)>,
    pub groups: Vec<(String, GroupDecl)>,
    pub morphisms: Vec<(String, MorphismDecl)>,
    pub expectations: Vec<Expectation>,
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, t)| t)
}

impl Workspace {
    pub fn algebra(&self, name: &str) -> Option<&AlgebraRef> {
        lookup(&self.algebras, name)
    }

    pub fn group(&self, name: &str) -> Option<&GroupPresentation> {
        lookup(&self.groups, name).map(|g| &g.presentation)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDecl> {
        lookup(&self.morphisms, name)
    }

    /// Parses a single source text.
    pub fn parse(text: &str) -> Result<Workspace, ParseError> {
        Self::parse_sources(&[("<input>".to_string(), text.to_string())])
    }

    /// Parses several labelled sources as one workspace.
    pub fn parse_sources(sources: &[(String, String)]) -> Result<Workspace, ParseError> {
        let mut sections = Vec::new();
        for (label, text) in sources {
            sections.extend(lex(label, text)?);
        }
        let mut ws = Workspace::default();
        let mut seen: Vec<(String, String)> = Vec::new();
        for s in &sections {
            if s.kind != "expect" {
                let key = (s.kind.clone(), s.name.clone());
                if seen.contains(&key) {
                    return Err(s.header_error("declared twice"));
                }
                seen.push(key);
            }
        }
        for s in sections.iter().filter(|s| s.kind == "algebra") {
            let alg = build_algebra(s)?;
            ws.algebras.push((s.name.clone(), alg));
        }
        for s in sections.iter().filter(|s| s.kind == "hull") {
            if !sections.iter().any(|g| g.kind == "group" && g.name == s.name) {
                return Err(s.header_error("no group of this name"));
            }
        }
        for s in sections.iter().filter(|s| s.kind == "group") {
            let hull = sections.iter().find(|h| h.kind == "hull" && h.name == s.name);
            let g = build_group(&ws, s, hull)?;
            ws.groups.push((s.name.clone(), g));
        }
        for s in sections.iter().filter(|s| s.kind == "morphism") {
            let m = build_morphism(&ws, s)?;
            ws.morphisms.push((s.name.clone(), m));
        }
        for s in sections.iter().filter(|s| s.kind == "expect") {
            for e in &s.entries {
                if e.key.len() != 2 {
                    return Err(s.error(e.line, 1, "expectations read `command item = true|false`"));
                }
                let expected = match e.value.as_str() {
                    "true" => true,
                    "false" => false,
                    _ => return Err(s.error(e.line, e.value_col, "expected `true` or `false`")),
                };
                ws.expectations.push(Expectation {
                    command: e.key[0].clone(),
                    item: e.key[1].clone(),
                    expected,
                });
            }
        }
        Ok(ws)
    }

    /// Writes the workspace back in the section format.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (name, alg) in &self.algebras {
            let _ = writeln!(out, "[algebra {name}]");
            let _ = writeln!(out, "dim = {}", alg.dim());
            let w: Vec<String> = alg.weights().iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "weights = {}", w.join(" "));
            let n = alg.dim();
            for i in 0..n {
                for j in i + 1..n {
                    let v = alg.bracket(&nilaff::exactalg::unit_vector(n, i), &nilaff::exactalg::unit_vector(n, j));
                    if !nilaff::exactalg::is_zero_vec(&v) {
                        let _ = writeln!(out, "bracket {} {} = {}", i + 1, j + 1, fmt_vector(&v));
                    }
                }
            }
            out.push('\n');
        }
        for (name, g) in &self.groups {
            let p = &g.presentation;
            let _ = writeln!(out, "[group {name}]");
            let _ = writeln!(out, "algebra = {}", g.algebra);
            for (gn, gen) in p.names().iter().zip(p.generators()) {
                let _ = writeln!(out, "generator {gn} = {gen}");
            }
            for r in p.relators() {
                let _ = writeln!(out, "relator = {}", r.fmt_with(p.names()));
            }
            let f = p.holonomy();
            if f.order() > 1 {
                let _ = writeln!(out, "holonomy elements = {}", f.names().join(" "));
                for (i, row) in f.table().iter().enumerate() {
                    let cells: Vec<&str> = row.iter().map(|&k| f.names()[k].as_str()).collect();
                    let _ = writeln!(out, "holonomy row {} = {}", f.names()[i], cells.join(" "));
                }
                for (gn, &t) in p.names().iter().zip(p.tags()) {
                    if t != f.identity() {
                        let _ = writeln!(out, "tag {gn} = {}", f.names()[t]);
                    }
                }
            }
            if let Some(series) = p.series() {
                let s: Vec<&str> = series
                    .iter()
                    .map(|f| match f {
                        SeriesFactor::Infinite => "infinite",
                        SeriesFactor::Finite => "finite",
                    })
                    .collect();
                let _ = writeln!(out, "series = {}", s.join(" "));
            }
            let _ = writeln!(out, "discrete = {}", p.is_discrete());
            out.push('\n');
            if let Some(h) = p.declared_hull() {
                let _ = writeln!(out, "[hull {name}]");
                for t in &h.torus {
                    let _ = writeln!(out, "torus = {t}");
                }
                for u in &h.unipotent {
                    let _ = writeln!(out, "unipotent = {u}");
                }
                let density = if h.density_asserted { "asserted" } else { "unverified" };
                let _ = writeln!(out, "density = {density}");
                out.push('\n');
            }
        }
        for (name, m) in &self.morphisms {
            let _ = writeln!(out, "[morphism {name}]");
            let _ = writeln!(out, "source = {}", m.source);
            let _ = writeln!(out, "target = {}", m.target);
            let src = m.morphism.source();
            let tgt = m.morphism.target();
            for (gn, w) in src.names().iter().zip(m.morphism.images()) {
                let _ = writeln!(out, "image {gn} = {}", w.fmt_with(tgt.names()));
            }
            if let Some(c) = &m.certificate {
                for (gn, w) in tgt.names().iter().zip(&c.words) {
                    let _ = writeln!(out, "certificate {gn} = {}", w.fmt_with(src.names()));
                }
            }
            out.push('\n');
        }
        if !self.expectations.is_empty() {
            out.push_str("[expect]\n");
            for e in &self.expectations {
                let _ = writeln!(out, "{} {} = {}", e.command, e.item, e.expected);
            }
        }
        out
    }
}

fn build_algebra(s: &Section) -> Result<AlgebraRef, ParseError> {
    let dim_entry = s.required("dim")?;
    let dim: usize = dim_entry
        .value
        .parse()
        .map_err(|_| s.item_error(dim_entry, "dimension must be a natural number"))?;
    let weights: Vec<u32> = match s.single("weights")? {
        None => vec![1; dim],
        Some(e) => e
            .value
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| s.item_error(e, "weights must be positive integers"))?,
    };
    let mut brackets = Vec::new();
    for e in &s.entries {
        match e.key[0].as_str() {
            "dim" | "weights" if e.key.len() == 1 => {}
            "bracket" if e.key.len() == 3 => {
                let idx = |k: &str| -> Result<usize, ParseError> {
                    match k.parse::<usize>() {
                        Ok(i) if (1..=dim).contains(&i) => Ok(i - 1),
                        _ => Err(s.item_error(e, format!("bracket index `{k}` out of range"))),
                    }
                };
                let (i, j) = (idx(&e.key[1])?, idx(&e.key[2])?);
                let v = parse_vector(&e.value, 0).map_err(|v| s.value_error(e, v))?;
                brackets.push((i, j, v));
            }
            _ => return Err(s.error(e.line, 1, format!("algebra `{}`: unknown entry `{}`", s.name, e.key.join(" ")))),
        }
    }
    if weights.len() != dim {
        return Err(s.header_error(format!("{} weights for dimension {dim}", weights.len())));
    }
    NilLieAlgebra::from_brackets(weights, &brackets)
        .map(Arc::new)
        .map_err(|e| s.header_error(e))
}

fn parse_holonomy(s: &Section) -> Result<Option<FiniteGroup>, ParseError> {
    let shorthand = s.single("holonomy")?;
    let elements = s.entries.iter().find(|e| e.key == ["holonomy", "elements"]);
    match (shorthand, elements) {
        (Some(e), None) => {
            let words: Vec<&str> = e.value.split_whitespace().collect();
            match words.as_slice() {
                ["trivial"] => Ok(None),
                ["cyclic", n, g] => {
                    let n: usize = n
                        .parse()
                        .ok()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| s.item_error(e, "cyclic order must be a positive integer"))?;
                    Ok(Some(FiniteGroup::cyclic(n, g)))
                }
                _ => Err(s.item_error(e, "expected `trivial` or `cyclic <order> <name>`")),
            }
        }
        (None, Some(e)) => {
            let names: Vec<String> = e.value.split_whitespace().map(str::to_string).collect();
            let mut table = vec![Vec::new(); names.len()];
            for r in s.entries.iter().filter(|r| r.key.len() == 3 && r.key[0] == "holonomy" && r.key[1] == "row") {
                let i = names
                    .iter()
                    .position(|n| *n == r.key[2])
                    .ok_or_else(|| s.item_error(r, format!("unknown holonomy element `{}`", r.key[2])))?;
                table[i] = r
                    .value
                    .split_whitespace()
                    .map(|c| {
                        names
                            .iter()
                            .position(|n| n == c)
                            .ok_or_else(|| s.item_error(r, format!("unknown holonomy element `{c}`")))
                    })
                    .collect::<Result<_, _>>()?;
            }
            FiniteGroup::new(names, table).map(Some).map_err(|err| s.item_error(e, err))
        }
        (None, None) => Ok(None),
        (Some(e), Some(_)) => Err(s.item_error(e, "give either `holonomy` or `holonomy elements`, not both")),
    }
}

fn build_group(ws: &Workspace, s: &Section, hull: Option<&Section>) -> Result<GroupDecl, ParseError> {
    let alg_entry = s.required("algebra")?;
    let algebra = ws
        .algebra(&alg_entry.value)
        .ok_or_else(|| s.item_error(alg_entry, format!("unknown algebra `{}`", alg_entry.value)))?
        .clone();
    let mut names = Vec::new();
    let mut generators = Vec::new();
    for e in s.entries.iter().filter(|e| e.key[0] == "generator") {
        if e.key.len() != 2 {
            return Err(s.item_error(e, "write `generator <name> = (...)`"));
        }
        names.push(e.key[1].clone());
        generators.push(parse_aff_trans(&e.value, 0, &algebra).map_err(|v| s.value_error(e, v))?);
    }
    let holonomy = parse_holonomy(s)?;
    let mut relators = Vec::new();
    let mut tags = vec![None; names.len()];
    let mut series = None;
    let mut discrete = false;
    for e in &s.entries {
        match (e.key[0].as_str(), e.key.len()) {
            ("algebra", 1) | ("generator", 2) | ("holonomy", _) => {}
            ("relator", 1) => relators.push(Word::parse(&e.value, &names).map_err(|err| s.item_error(e, err))?),
            ("tag", 2) => {
                let Some(f) = &holonomy else {
                    return Err(s.item_error(e, "tag given without a holonomy group"));
                };
                let g = names
                    .iter()
                    .position(|n| *n == e.key[1])
                    .ok_or_else(|| s.item_error(e, format!("unknown generator `{}`", e.key[1])))?;
                let t = f
                    .index_of(&e.value)
                    .ok_or_else(|| s.item_error(e, format!("unknown holonomy element `{}`", e.value)))?;
                tags[g] = Some(t);
            }
            ("series", 1) => {
                series = Some(
                    e.value
                        .split_whitespace()
                        .map(|w| match w {
                            "infinite" => Ok(SeriesFactor::Infinite),
                            "finite" => Ok(SeriesFactor::Finite),
                            _ => Err(s.item_error(e, format!("series factor `{w}` is neither infinite nor finite"))),
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            ("discrete", 1) => {
                discrete = match e.value.as_str() {
                    "true" => true,
                    "false" => false,
                    _ => return Err(s.item_error(e, "expected `true` or `false`")),
                }
            }
            _ => return Err(s.error(e.line, 1, format!("group `{}`: unknown entry `{}`", s.name, e.key.join(" ")))),
        }
    }
    let declared_hull = match hull {
        None => None,
        Some(h) => {
            let mut torus = Vec::new();
            let mut unipotent = Vec::new();
            let mut density_asserted = false;
            for e in &h.entries {
                match (e.key[0].as_str(), e.key.len()) {
                    ("torus", 1) => torus.push(parse_aff_trans(&e.value, 0, &algebra).map_err(|v| h.value_error(e, v))?),
                    ("unipotent", 1) => {
                        unipotent.push(parse_aff_trans(&e.value, 0, &algebra).map_err(|v| h.value_error(e, v))?)
                    }
                    ("density", 1) => {
                        density_asserted = match e.value.as_str() {
                            "asserted" => true,
                            "unverified" => false,
                            _ => return Err(h.item_error(e, "expected `asserted` or `unverified`")),
                        }
                    }
                    _ => return Err(h.error(e.line, 1, format!("hull `{}`: unknown entry `{}`", h.name, e.key.join(" ")))),
                }
            }
            Some(DeclaredHull {
                torus,
                unipotent,
                density_asserted,
            })
        }
    };
    let holonomy = holonomy.map(|f| {
        let id = f.identity();
        (f, tags.iter().map(|t| t.unwrap_or(id)).collect())
    });
    let spec = PresentationSpec {
        algebra: algebra.clone(),
        names,
        generators,
        relators,
        holonomy,
        series,
        declared_hull,
        discrete,
    };
    let presentation = GroupPresentation::new(spec).map_err(|e| {
        let mut err = s.header_error(&e);
        err.scope_violation = matches!(e, nilaff::Error::ScopeViolation(_));
        err
    })?;
    Ok(GroupDecl {
        algebra: alg_entry.value.clone(),
        presentation,
    })
}

fn build_morphism(ws: &Workspace, s: &Section) -> Result<MorphismDecl, ParseError> {
    let group = |key: &str| -> Result<(String, GroupPresentation), ParseError> {
        let e = s.required(key)?;
        let g = ws
            .group(&e.value)
            .ok_or_else(|| s.item_error(e, format!("unknown group `{}`", e.value)))?;
        Ok((e.value.clone(), g.clone()))
    };
    let (src_name, src) = group("source")?;
    let (tgt_name, tgt) = group("target")?;
    let mut images: Vec<Option<Word>> = vec![None; src.len()];
    let mut cert: Vec<Option<Word>> = vec![None; tgt.len()];
    for e in &s.entries {
        match (e.key[0].as_str(), e.key.len()) {
            ("source", 1) | ("target", 1) => {}
            ("image", 2) => {
                let i = src
                    .generator_index(&e.key[1])
                    .ok_or_else(|| s.item_error(e, format!("unknown source generator `{}`", e.key[1])))?;
                images[i] = Some(tgt.parse_word(&e.value).map_err(|err| s.item_error(e, err))?);
            }
            ("certificate", 2) => {
                let i = tgt
                    .generator_index(&e.key[1])
                    .ok_or_else(|| s.item_error(e, format!("unknown target generator `{}`", e.key[1])))?;
                cert[i] = Some(src.parse_word(&e.value).map_err(|err| s.item_error(e, err))?);
            }
            _ => return Err(s.error(e.line, 1, format!("morphism `{}`: unknown entry `{}`", s.name, e.key.join(" ")))),
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| s.header_error(format!("no image for generator `{}`", src.names()[i]))))
        .collect::<Result<Vec<_>, _>>()?;
    let certificate = if cert.iter().all(Option::is_none) {
        None
    } else {
        Some(Certificate {
            words: cert
                .into_iter()
                .enumerate()
                .map(|(i, w)| w.ok_or_else(|| s.header_error(format!("certificate misses `{}`", tgt.names()[i]))))
                .collect::<Result<Vec<_>, _>>()?,
        })
    };
    let morphism = GroupMorphism::unverified(src, tgt, images).map_err(|e| s.header_error(e))?;
    Ok(MorphismDecl {
        source: src_name,
        target: tgt_name,
        morphism,
        certificate,
    })
}

/// Parses a standalone affine transformation on a named algebra of the workspace.
pub fn parse_element(ws: &Workspace, algebra: &str, text: &str) -> Result<AffTrans, String> {
    let alg = ws.algebra(algebra).ok_or_else(|| format!("unknown algebra `{algebra}`"))?;
    parse_aff_trans(text, 0, alg).map_err(|e| e.message)
}

