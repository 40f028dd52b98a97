//! The transcribed data: MAD-group generators, grading bases, displayed selections,
//! real-form matrices, coefficient tables and intersection lists.
//!
//! The data file starts with a two-line header, `finegrad-catalog 1` and
//! `sha256 <hex>`, where the digest covers every byte after the header.
//! Each following line is a record introduced by a keyword; lines indented under
//! `madgroup`, `realpart` and `grading` records belong to them. Matrices are written
//! as expressions over unit matrices `Ejk`, the identity `I`, named matrices,
//! `diag(..)`, `kron(a, b)`, `{..}` literals and `[..]` scalar literals.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::exact::GQ;
use crate::gradings::Grading;
use crate::maps::{aut_equal_projective, AntiKind, Antiautomorphism, Automorphism, FormClass};
use crate::mat::{sigma, signature, tensor, Mat2, Mat4, Signature};
use crate::subspace::{sl4, Subspace};

pub const FORMAT_VERSION: u32 = 1;
const HEADER: &str = "finegrad-catalog";

/// The bundled catalog file.
pub const BUNDLED: &str = include_str!("../data/catalog.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sl,
    Sp,
    O,
}

impl Family {
    pub fn complex_dim(self) -> usize {
        match self {
            Family::Sl => 15,
            Family::Sp => 10,
            Family::O => 6,
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl" => Ok(Family::Sl),
            "sp" => Ok(Family::Sp),
            "o" => Ok(Family::O),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Skew,
}

#[derive(Clone, Debug)]
pub struct MadGroupSpec {
    pub name: String,
    /// Name of the complex MAD-group a real part belongs to.
    pub parent: Option<String>,
    pub finite: bool,
    /// Sample values of the continuous parameters, as written in the file.
    pub samples: String,
    /// Name of the matrix `S` when the generators are already conjugated by `Ad_S`.
    pub conjugated_by: Option<String>,
    pub inner_generators: Vec<Mat4>,
    pub outer_generator: Option<Mat4>,
}

impl MadGroupSpec {
    pub fn generators(&self) -> Vec<Automorphism> {
        let mut v: Vec<Automorphism> = self
            .inner_generators
            .iter()
            .map(|a| Automorphism::inner(a.clone()).expect("validated at load"))
            .collect();
        if let Some(c) = &self.outer_generator {
            v.push(Automorphism::outer(c.clone()).expect("validated at load"));
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct PartSpec {
    pub labels: Vec<String>,
    pub basis: Vec<Mat4>,
}

#[derive(Clone, Debug)]
pub struct GradingSpec {
    pub name: String,
    pub mad: String,
    pub claimed_group: AbelianGroup,
    pub parts: Vec<PartSpec>,
}

impl GradingSpec {
    pub fn grading(&self) -> Grading {
        let parts = self
            .parts
            .iter()
            .map(|p| Subspace::complex(p.basis.clone()).expect("validated at load"))
            .collect();
        Grading::new(self.name.clone(), sl4(), parts)
    }

    /// Index of the part holding basis vector `label` (e.g. `X14`).
    pub fn part_of_label(&self, label: &str) -> Option<usize> {
        self.parts.iter().position(|p| p.labels.iter().any(|l| l == label))
    }

    pub fn basis_by_label(&self, label: &str) -> Option<&Mat4> {
        self.parts
            .iter()
            .find_map(|p| p.labels.iter().position(|l| l == label).map(|i| &p.basis[i]))
    }
}

#[derive(Clone, Debug)]
pub struct DisplayedSpec {
    pub family: Family,
    pub source: String,
    pub k_name: String,
    pub k: Mat4,
    pub symmetry: Symmetry,
    /// 0-based part indices of the source grading, in the listed order.
    pub selected_parts: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SplitSpec {
    pub family: Family,
    pub source: String,
    pub k_name: String,
    pub part: usize,
    pub pieces: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub antiaut: Antiautomorphism,
}

#[derive(Clone, Debug)]
pub struct RealFormSpec {
    pub name: String,
    pub family: Family,
    pub class: Option<FormClass>,
    pub signature: Option<Signature>,
    /// sl real form this one is cut out of (sp and o forms).
    pub source: Option<String>,
    pub k_name: Option<String>,
    pub k: Option<Mat4>,
    /// Cataloged representation names; the first is canonical.
    pub reps: Vec<String>,
    pub antiaut: Antiautomorphism,
}

#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub grading: String,
    pub rep: String,
    pub multipliers: Vec<GQ>,
}

#[derive(Clone, Debug)]
pub struct SubformSpec {
    pub form: String,
    pub grading: String,
    pub k_name: String,
    pub rep: String,
}

#[derive(Clone, Debug)]
pub struct MadRealSpec {
    pub form: String,
    pub groups: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub matrices: BTreeMap<String, Mat4>,
    pub matrices2: BTreeMap<String, Mat2>,
    pub madgroups: Vec<MadGroupSpec>,
    pub realparts: Vec<MadGroupSpec>,
    pub gradings: Vec<GradingSpec>,
    pub displayed: Vec<DisplayedSpec>,
    pub splits: Vec<SplitSpec>,
    pub reps: Vec<Representation>,
    pub realforms: Vec<RealFormSpec>,
    pub coefficient_tables: Vec<CoefficientTable>,
    pub subforms: Vec<SubformSpec>,
    pub madreal: Vec<MadRealSpec>,
    pub expected: BTreeMap<String, usize>,
}

fn unknown(name: &str) -> Error {
    Error::UnknownName(name.to_string())
}

impl Catalog {
    pub fn matrix(&self, name: &str) -> Result<&Mat4> {
        self.matrices.get(name).ok_or_else(|| unknown(name))
    }

    pub fn madgroup(&self, name: &str) -> Result<&MadGroupSpec> {
        self.madgroups.iter().find(|m| m.name == name).ok_or_else(|| unknown(name))
    }

    pub fn realpart(&self, name: &str) -> Result<&MadGroupSpec> {
        self.realparts.iter().find(|m| m.name == name).ok_or_else(|| unknown(name))
    }

    pub fn grading(&self, name: &str) -> Result<&GradingSpec> {
        self.gradings.iter().find(|g| g.name == name).ok_or_else(|| unknown(name))
    }

    pub fn rep(&self, name: &str) -> Result<&Representation> {
        self.reps.iter().find(|r| r.name == name).ok_or_else(|| unknown(name))
    }

    pub fn realform(&self, name: &str) -> Result<&RealFormSpec> {
        self.realforms.iter().find(|r| r.name == name).ok_or_else(|| unknown(name))
    }

    /// The sl real form a representation belongs to.
    pub fn form_of_rep(&self, rep: &str) -> Result<&RealFormSpec> {
        self.realforms
            .iter()
            .find(|f| f.family == Family::Sl && f.reps.iter().any(|r| r == rep))
            .ok_or_else(|| unknown(rep))
    }

    pub fn displayed_for(&self, family: Family, grading: &str) -> Result<&DisplayedSpec> {
        self.displayed
            .iter()
            .find(|d| d.family == family && d.source == grading)
            .ok_or_else(|| unknown(grading))
    }

    pub fn coefficient_table(&self, grading: &str, rep: &str) -> Option<&CoefficientTable> {
        self.coefficient_tables.iter().find(|t| t.grading == grading && t.rep == rep)
    }

    pub fn expected(&self, key: &str) -> Option<usize> {
        self.expected.get(key).copied()
    }
}

/// Hex sha256 of the catalog body.
pub fn checksum(body: &str) -> String {
    format!("{:x}", Sha256::digest(body.as_bytes()))
}

/// Prefix `body` with a header carrying its checksum.
pub fn seal(body: &str) -> String {
    format!("{HEADER} {FORMAT_VERSION}\nsha256 {}\n{body}", checksum(body))
}

/// The bundled catalog, parsed once.
pub fn load_catalog() -> Result<&'static Catalog> {
    static CELL: OnceLock<std::result::Result<Catalog, Error>> = OnceLock::new();
    CELL.get_or_init(|| parse_catalog(BUNDLED)).as_ref().map_err(Clone::clone)
}

pub fn load_catalog_from(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::CatalogCorrupt(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let corrupt = |m: String| Error::CatalogCorrupt(m);
    let (first, rest) = text.split_once('\n').ok_or_else(|| corrupt("missing header".into()))?;
    let version = first
        .strip_prefix(HEADER)
        .map(str::trim)
        .ok_or_else(|| corrupt("missing header".into()))?;
    if version != FORMAT_VERSION.to_string() {
        return Err(corrupt(format!("unsupported format version `{version}`")));
    }
    let (second, body) = rest.split_once('\n').ok_or_else(|| corrupt("missing checksum".into()))?;
    let digest = second.strip_prefix("sha256 ").ok_or_else(|| corrupt("missing checksum".into()))?;
    if digest.trim() != checksum(body) {
        return Err(corrupt("checksum mismatch".into()));
    }
    let mut p = Parser { cat: Catalog::default(), block: Block::None };
    for (n, raw) in body.lines().enumerate() {
        let lineno = n + 3;
        p.line(raw).map_err(|e| corrupt(format!("line {lineno}: {}", strip(e))))?;
    }
    let cat = p.cat;
    validate(&cat).map_err(|e| corrupt(strip(e)))?;
    Ok(cat)
}

fn strip(e: Error) -> String {
    match e {
        Error::Parse(m) | Error::CatalogCorrupt(m) => m,
        other => other.to_string(),
    }
}

enum Block {
    None,
    Mad { real: bool },
    Grading,
}

struct Parser {
    cat: Catalog,
    block: Block,
}

fn perr(m: impl Into<String>) -> Error {
    Error::Parse(m.into())
}

fn take_after<'a>(words: &[&'a str], key: &str) -> Option<&'a str> {
    words.iter().position(|w| *w == key).and_then(|i| words.get(i + 1).copied())
}

impl Parser {
    fn line(&mut self, raw: &str) -> Result<()> {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            return Ok(());
        }
        if line.starts_with(char::is_whitespace) {
            return self.continuation(line.trim());
        }
        self.block = Block::None;
        let line = line.trim();
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let words: Vec<&str> = rest.split_whitespace().collect();
        match kw {
            "matrix" | "matrix2" => {
                let (name, expr) = rest.split_once('=').ok_or_else(|| perr("expected `name = expr`"))?;
                let name = name.trim().to_string();
                match (kw, self.eval(expr)?) {
                    ("matrix", Value::M4(m)) => self.cat.matrices.insert(name, m),
                    ("matrix2", Value::M2(m)) => {
                        self.cat.matrices2.insert(name, m);
                        None
                    }
                    _ => return Err(perr(format!("`{name}` has the wrong size"))),
                };
            }
            "madgroup" | "realpart" => {
                let real = kw == "realpart";
                let name = words.first().ok_or_else(|| perr("missing name"))?.to_string();
                let parent = if real {
                    Some(take_after(&words, "of").ok_or_else(|| perr("missing `of`"))?.to_string())
                } else {
                    None
                };
                let finite = words.contains(&"finite");
                let samples = match rest.split_once("samples") {
                    Some((_, s)) => s.split(" conjugated").next().unwrap_or("").trim().to_string(),
                    None => String::new(),
                };
                if !finite && samples.is_empty() {
                    return Err(perr("expected `finite` or `samples`"));
                }
                let spec = MadGroupSpec {
                    name,
                    parent,
                    finite,
                    samples,
                    conjugated_by: take_after(&words, "conjugated").map(str::to_string),
                    inner_generators: Vec::new(),
                    outer_generator: None,
                };
                if real {
                    self.cat.realparts.push(spec);
                } else {
                    self.cat.madgroups.push(spec);
                }
                self.block = Block::Mad { real };
            }
            "grading" => {
                let name = words.first().ok_or_else(|| perr("missing name"))?.to_string();
                let mad = take_after(&words, "mad").ok_or_else(|| perr("missing `mad`"))?.to_string();
                let group_text = rest.split_once(" group ").ok_or_else(|| perr("missing `group`"))?.1;
                let claimed_group = group_text.parse()?;
                self.cat.gradings.push(GradingSpec { name, mad, claimed_group, parts: Vec::new() });
                self.block = Block::Grading;
            }
            "displayed" => {
                let [family, source, k_name, "parts", labels @ ..] = &words[..] else {
                    return Err(perr("expected `displayed FAMILY GRADING K parts L..`"));
                };
                let family: Family = family.parse()?;
                let k = self.cat.matrix(k_name).map_err(|_| perr(format!("unknown matrix `{k_name}`")))?.clone();
                let symmetry = if family == Family::Sp { Symmetry::Skew } else { Symmetry::Symmetric };
                let selected_parts = labels.iter().map(|l| part_label(l)).collect::<Result<_>>()?;
                self.cat.displayed.push(DisplayedSpec {
                    family,
                    source: source.to_string(),
                    k_name: k_name.to_string(),
                    k,
                    symmetry,
                    selected_parts,
                });
            }
            "split" => {
                let [family, source, k_name, "part", part, "into", pieces @ ..] = &words[..] else {
                    return Err(perr("expected `split FAMILY GRADING K part L into X.. | X..`"));
                };
                let pieces = pieces
                    .split(|w| *w == "|")
                    .map(|p| p.iter().map(|s| s.to_string()).collect())
                    .collect();
                self.cat.splits.push(SplitSpec {
                    family: family.parse()?,
                    source: source.to_string(),
                    k_name: k_name.to_string(),
                    part: part_label(part)?,
                    pieces,
                });
            }
            "rep" => {
                let [name, kind, ..] = &words[..] else { return Err(perr("expected `rep NAME KIND EXPR`")) };
                let expr = rest.splitn(3, char::is_whitespace).nth(2).ok_or_else(|| perr("missing matrix"))?;
                let m = self.eval_m4(expr)?;
                let kind = match *kind {
                    "conjinner" => AntiKind::ConjInner,
                    "conjouter" => AntiKind::ConjOuter,
                    other => return Err(perr(format!("unknown antiautomorphism kind `{other}`"))),
                };
                let antiaut = Antiautomorphism::new(kind, m).map_err(|e| perr(format!("`{name}`: {e}")))?;
                self.cat.reps.push(Representation { name: name.to_string(), antiaut });
            }
            "realform" => self.realform(&words)?,
            "coeffs" => {
                let (head, values) = rest.split_once('=').ok_or_else(|| perr("expected `coeffs G REP = ..`"))?;
                let [grading, rep] = head.split_whitespace().collect::<Vec<_>>()[..] else {
                    return Err(perr("expected `coeffs G REP = ..`"));
                };
                let multipliers = values.split_whitespace().map(GQ::from_str).collect::<Result<_>>()?;
                self.cat.coefficient_tables.push(CoefficientTable {
                    grading: grading.to_string(),
                    rep: rep.to_string(),
                    multipliers,
                });
            }
            "subform" => {
                let [form, grading, k_name, rep] = words[..] else {
                    return Err(perr("expected `subform FORM GRADING K REP`"));
                };
                self.cat.subforms.push(SubformSpec {
                    form: form.into(),
                    grading: grading.into(),
                    k_name: k_name.into(),
                    rep: rep.into(),
                });
            }
            "madreal" => {
                let [form, groups @ ..] = &words[..] else { return Err(perr("expected `madreal FORM G..`")) };
                self.cat.madreal.push(MadRealSpec {
                    form: form.to_string(),
                    groups: groups.iter().map(|s| s.to_string()).collect(),
                });
            }
            "expect" => {
                let [key, n] = words[..] else { return Err(perr("expected `expect KEY N`")) };
                let n = n.parse().map_err(|_| perr(format!("bad count `{n}`")))?;
                self.cat.expected.insert(key.to_string(), n);
            }
            other => return Err(perr(format!("unknown record `{other}`"))),
        }
        Ok(())
    }

    fn realform(&mut self, words: &[&str]) -> Result<()> {
        let name = words.first().ok_or_else(|| perr("missing name"))?.to_string();
        let family: Family = take_after(words, "family").ok_or_else(|| perr("missing `family`"))?.parse()?;
        let class = match take_after(words, "class") {
            None => None,
            Some("circular") => Some(FormClass::Circular),
            Some("anticircular") => Some(FormClass::Anticircular),
            Some("hermitian") => Some(FormClass::Hermitian),
            Some(other) => return Err(perr(format!("unknown class `{other}`"))),
        };
        let signature = take_after(words, "signature")
            .map(|s| {
                let v: Vec<usize> = s.split(',').map(|t| t.trim().parse()).collect::<std::result::Result<_, _>>()
                    .map_err(|_| perr(format!("bad signature `{s}`")))?;
                match v[..] {
                    [p, z, n] => Ok(Signature::new(p, z, n)),
                    _ => Err(perr(format!("bad signature `{s}`"))),
                }
            })
            .transpose()?;
        let k_name = take_after(words, "within").map(str::to_string);
        let k = k_name.as_deref().map(|k| self.cat.matrix(k).cloned()).transpose()?;
        let reps: Vec<String> = words
            .iter()
            .position(|w| *w == "reps")
            .map(|i| words[i + 1..].iter().map(|s| s.to_string()).collect())
            .unwrap_or_default();
        let first = reps.first().ok_or_else(|| perr(format!("`{name}` lists no representation")))?;
        let antiaut = self.cat.rep(first)?.antiaut.clone();
        self.cat.realforms.push(RealFormSpec {
            name,
            family,
            class,
            signature,
            source: take_after(words, "source").map(str::to_string),
            k_name,
            k,
            reps,
            antiaut,
        });
        Ok(())
    }

    fn continuation(&mut self, line: &str) -> Result<()> {
        match self.block {
            Block::Mad { real } => {
                let (kind, expr) = line.split_once(char::is_whitespace).ok_or_else(|| perr("expected generator"))?;
                let m = self.eval_m4(expr)?;
                let spec = if real { self.cat.realparts.last_mut() } else { self.cat.madgroups.last_mut() }
                    .expect("block opened by a record");
                match kind {
                    "inner" => spec.inner_generators.push(m),
                    "outer" if spec.outer_generator.is_none() => spec.outer_generator = Some(m),
                    "outer" => return Err(perr("more than one outer generator")),
                    other => return Err(perr(format!("unknown generator kind `{other}`"))),
                }
            }
            Block::Grading => {
                let body = line.strip_prefix("part").ok_or_else(|| perr("expected `part`"))?;
                let mut part = PartSpec { labels: Vec::new(), basis: Vec::new() };
                for item in body.split(';') {
                    let (label, expr) = item.split_once('=').ok_or_else(|| perr("expected `Xn = expr`"))?;
                    part.labels.push(label.trim().to_string());
                    part.basis.push(self.eval_m4(expr)?);
                }
                self.cat.gradings.last_mut().expect("block opened by a record").parts.push(part);
            }
            Block::None => return Err(perr("indented line outside a block")),
        }
        Ok(())
    }

    fn eval(&self, expr: &str) -> Result<Value> {
        let tokens = tokenize(expr)?;
        let mut ev = Eval { cat: &self.cat, tokens, pos: 0 };
        let v = ev.expr()?;
        if ev.pos != ev.tokens.len() {
            return Err(perr(format!("trailing input in `{}`", expr.trim())));
        }
        Ok(v)
    }

    fn eval_m4(&self, expr: &str) -> Result<Mat4> {
        match self.eval(expr)? {
            Value::M4(m) => Ok(m),
            _ => Err(perr(format!("`{}` is not a 4x4 matrix", expr.trim()))),
        }
    }
}

/// `L7` -> 6.
fn part_label(l: &str) -> Result<usize> {
    l.strip_prefix('L')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .map(|n| n - 1)
        .ok_or_else(|| perr(format!("bad part label `{l}`")))
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
enum Value {
    S(GQ),
    M2(Mat2),
    M4(Mat4),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Scalar(String),
    Literal(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let grab = |i: &mut usize, close: char| -> Result<String> {
        let start = *i + 1;
        let end = cs[start..].iter().position(|&c| c == close).ok_or_else(|| perr(format!("missing `{close}`")))?;
        *i = start + end + 1;
        Ok(cs[start..start + end].iter().collect())
    };
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '[' {
            out.push(Tok::Scalar(grab(&mut i, ']')?));
        } else if c == '{' {
            out.push(Tok::Literal(grab(&mut i, '}')?));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                i += 1;
            }
            out.push(Tok::Num(cs[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*^(),".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(perr(format!("unexpected `{c}`")));
        }
    }
    Ok(out)
}

struct Eval<'a> {
    cat: &'a Catalog,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Eval<'_> {
    fn peek_op(&self, c: char) -> bool {
        self.tokens.get(self.pos) == Some(&Tok::Op(c))
    }

    fn expect_op(&mut self, c: char) -> Result<()> {
        if self.peek_op(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(perr(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let negate = self.peek_op('-');
        if negate {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = neg(acc);
        }
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                let t = self.term()?;
                acc = add(acc, t)?;
            } else if self.peek_op('-') {
                self.pos += 1;
                let t = self.term()?;
                acc = add(acc, neg(t))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        while self.peek_op('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(acc, f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.primary()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e: u32 = match self.tokens.get(self.pos) {
            Some(Tok::Num(n)) => n.parse().map_err(|_| perr(format!("bad exponent `{n}`")))?,
            _ => return Err(perr("expected exponent")),
        };
        self.pos += 1;
        Ok(match base {
            Value::S(s) => Value::S(s.pow(e as i32)?),
            Value::M2(m) => Value::M2(m.pow(e)),
            Value::M4(m) => Value::M4(m.pow(e)),
        })
    }

    fn args(&mut self) -> Result<Vec<Value>> {
        self.expect_op('(')?;
        let mut v = vec![self.expr()?];
        while self.peek_op(',') {
            self.pos += 1;
            v.push(self.expr()?);
        }
        self.expect_op(')')?;
        Ok(v)
    }

    fn primary(&mut self) -> Result<Value> {
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| perr("unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) | Tok::Scalar(n) => Ok(Value::S(n.parse()?)),
            Tok::Literal(body) => {
                let n = body.split(|c: char| c.is_whitespace() || c == ',' || c == ';').filter(|t| !t.is_empty()).count();
                match n {
                    4 => Ok(Value::M2(body.parse()?)),
                    16 => Ok(Value::M4(body.parse()?)),
                    _ => Err(perr(format!("matrix literal with {n} entries"))),
                }
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                self.expect_op(')')?;
                Ok(v)
            }
            Tok::Op(c) => Err(perr(format!("unexpected `{c}`"))),
            Tok::Ident(id) => self.ident(&id),
        }
    }

    fn ident(&mut self, id: &str) -> Result<Value> {
        match id {
            "i" => return Ok(Value::S(GQ::i())),
            "I" => return Ok(Value::M4(Mat4::identity())),
            "diag" => {
                let scalars: Vec<GQ> = self
                    .args()?
                    .into_iter()
                    .map(|v| match v {
                        Value::S(s) => Ok(s),
                        _ => Err(perr("diag takes scalars")),
                    })
                    .collect::<Result<_>>()?;
                return match scalars.len() {
                    2 => Ok(Value::M2(Mat2::diag(scalars.try_into().expect("length 2")))),
                    4 => Ok(Value::M4(Mat4::diag(scalars.try_into().expect("length 4")))),
                    n => Err(perr(format!("diag with {n} entries"))),
                };
            }
            "kron" => {
                return match &self.args()?[..] {
                    [Value::M2(a), Value::M2(b)] => Ok(Value::M4(tensor(a, b))),
                    _ => Err(perr("kron takes two 2x2 matrices")),
                };
            }
            _ => {}
        }
        if let Some(m) = unit_matrix(id) {
            return Ok(Value::M4(m));
        }
        if let Some(j) = id.strip_prefix('s').and_then(|d| d.parse::<usize>().ok()).filter(|&j| j < 4) {
            return Ok(Value::M2(sigma(j)));
        }
        if let Some(m) = self.cat.matrices2.get(id) {
            return Ok(Value::M2(m.clone()));
        }
        if let Some(m) = self.cat.matrices.get(id) {
            return Ok(Value::M4(m.clone()));
        }
        Err(perr(format!("unknown name `{id}`")))
    }
}

fn unit_matrix(id: &str) -> Option<Mat4> {
    let d: Vec<usize> = id.strip_prefix('E')?.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?;
    match d[..] {
        [j, k] if (1..=4).contains(&j) && (1..=4).contains(&k) => Some(Mat4::unit(j, k)),
        _ => None,
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::S(s) => Value::S(-s),
        Value::M2(m) => Value::M2(-&m),
        Value::M4(m) => Value::M4(-&m),
    }
}

fn add(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::S(x), Value::S(y)) => Ok(Value::S(&x + &y)),
        (Value::M2(x), Value::M2(y)) => Ok(Value::M2(x + y)),
        (Value::M4(x), Value::M4(y)) => Ok(Value::M4(x + y)),
        _ => Err(perr("adding values of different shapes")),
    }
}

fn mul(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::S(x), Value::S(y)) => Ok(Value::S(&x * &y)),
        (Value::S(s), Value::M2(m)) | (Value::M2(m), Value::S(s)) => Ok(Value::M2(m.scale(&s))),
        (Value::S(s), Value::M4(m)) | (Value::M4(m), Value::S(s)) => Ok(Value::M4(m.scale(&s))),
        (Value::M2(x), Value::M2(y)) => Ok(Value::M2(x * y)),
        (Value::M4(x), Value::M4(y)) => Ok(Value::M4(x * y)),
        _ => Err(perr("multiplying matrices of different sizes")),
    }
}

fn validate(cat: &Catalog) -> Result<()> {
    let fail = |m: String| Err(Error::CatalogCorrupt(m));
    for m in cat.madgroups.iter().chain(&cat.realparts) {
        let gens: Vec<Automorphism> = m
            .inner_generators
            .iter()
            .map(|a| Automorphism::inner(a.clone()))
            .chain(m.outer_generator.iter().map(|c| Automorphism::outer(c.clone())))
            .collect::<Result<_>>()
            .map_err(|e| Error::CatalogCorrupt(format!("madgroup {}: {e}", m.name)))?;
        for (x, g) in gens.iter().enumerate() {
            for h in &gens[x + 1..] {
                if !aut_equal_projective(&g.compose(h), &h.compose(g)) {
                    return fail(format!("madgroup {}: generators do not commute", m.name));
                }
            }
        }
        if let Some(p) = &m.parent {
            cat.madgroup(p)?;
        }
    }
    for g in &cat.gradings {
        cat.madgroup(&g.mad)?;
        let n: usize = g.parts.iter().map(|p| p.basis.len()).sum();
        if n != 15 {
            return fail(format!("grading {}: {n} basis matrices", g.name));
        }
        for p in &g.parts {
            if let Some(b) = p.basis.iter().find(|b| !b.trace().is_zero()) {
                return fail(format!("grading {}: basis matrix with trace {}", g.name, b.trace()));
            }
            Subspace::complex(p.basis.clone())
                .map_err(|_| Error::CatalogCorrupt(format!("grading {}: dependent part {:?}", g.name, p.labels)))?;
        }
    }
    for d in &cat.displayed {
        let g = cat.grading(&d.source)?;
        if d.k.inverse().is_err() {
            return fail(format!("displayed {}: K is singular", d.source));
        }
        let kt = d.k.transpose();
        let ok = match d.symmetry {
            Symmetry::Symmetric => kt == d.k,
            Symmetry::Skew => kt == -&d.k,
        };
        if !ok {
            return fail(format!("displayed {} {}: K has the wrong symmetry", d.source, d.k_name));
        }
        if let Some(&bad) = d.selected_parts.iter().find(|&&p| p >= g.parts.len()) {
            return fail(format!("displayed {}: no part L{}", d.source, bad + 1));
        }
    }
    for s in &cat.splits {
        let g = cat.grading(&s.source)?;
        for label in s.pieces.iter().flatten() {
            if g.part_of_label(label) != Some(s.part) {
                return fail(format!("split {}: {label} is not in L{}", s.source, s.part + 1));
            }
        }
    }
    for f in &cat.realforms {
        for r in &f.reps {
            let rep = cat.rep(r)?;
            if let Some(class) = f.class {
                if rep.antiaut.class() != class {
                    return fail(format!("realform {}: {r} has class {:?}", f.name, rep.antiaut.class()));
                }
            }
            if let Some(sig) = f.signature {
                let s = signature(rep.antiaut.matrix())?;
                if s != sig && s.flipped() != sig {
                    return fail(format!("realform {}: {r} has signature {s}", f.name));
                }
            }
        }
        if let Some(src) = &f.source {
            cat.realform(src)?;
        }
    }
    for t in &cat.coefficient_tables {
        let g = cat.grading(&t.grading)?;
        cat.rep(&t.rep)?;
        if t.multipliers.len() != g.parts.len() {
            return fail(format!("coeffs {} {}: {} entries for {} parts", t.grading, t.rep, t.multipliers.len(), g.parts.len()));
        }
        if t.multipliers.iter().any(Zero::is_zero) {
            return fail(format!("coeffs {} {}: zero multiplier", t.grading, t.rep));
        }
    }
    for s in &cat.subforms {
        cat.realform(&s.form)?;
        cat.grading(&s.grading)?;
        cat.matrix(&s.k_name)?;
        cat.rep(&s.rep)?;
    }
    for m in &cat.madreal {
        cat.realform(&m.form)?;
        for g in &m.groups {
            cat.realpart(g)?;
        }
    }
    Ok(())
}

/// `Ad_S` for a named matrix, used to undo or apply the cataloged conjugation.
pub fn conjugator(cat: &Catalog, name: &str) -> Result<Automorphism> {
    Automorphism::inner(cat.matrix(name)?.clone())
}
