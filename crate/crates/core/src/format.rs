//! The line-oriented input format.
//!
//! ```text
//! # comments run to the end of the line
//! field Q                      # or `field QZETA n`, `field GF p`
//! algebra
//!   dim 2
//!   basis u0 u1
//!   unit u0
//!   mul u1 u1 = u0             # absent products are zero
//! end
//! coalgebra
//!   dim 2
//!   basis x0 x1
//!   counit x0 = 1              # absent values are zero
//!   counit x1 = 1
//!   comul x0 = x0@x0
//!   comul x1 = x1@x1
//! end
//! coaction
//!   u0 = u0@x0
//!   u1 = u1@x1
//! end
//! grouplike x0
//! corep deg1
//!   basis v
//!   coact v = v@x1
//! end
//! ```
//!
//! A linear combination is `0` or terms joined by ` + `; a term is
//! `coef*label` or a bare `label` (coefficient 1), where tensor labels are
//! joined by `@`. Coefficients follow the field's grammar.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{AnyField, Cyclotomic, Field, FieldDescriptor, PrimeField, Rationals};
use crate::linalg::{Matrix, TensorSpace, VectorSpace};
use crate::structures::{ComoduleAlgebra, Corepresentation, StructureAlgebra, StructureCoalgebra};

/// A parsed input over a concrete field.
#[derive(Debug, Clone)]
pub struct Document<F: Field> {
    pub p: ComoduleAlgebra<F>,
    pub grouplike: Option<Vec<F::Elem>>,
    pub coreps: Vec<Corepresentation<F>>,
}

impl<F: Field> Document<F> {
    pub fn field(&self) -> &F {
        self.p.field()
    }

    pub fn require_grouplike(&self) -> Result<&[F::Elem]> {
        self.grouplike.as_deref().ok_or_else(|| Error::Input("grouplike required".into()))
    }

    pub fn corep(&self, name: &str) -> Result<&Corepresentation<F>> {
        self.coreps
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Input(format!("unknown corep `{name}`")))
    }

    /// The canonical text form; parsing it gives back the same document.
    pub fn dump(&self) -> String {
        let f = self.field();
        let a = &self.p.algebra;
        let c = &self.p.coalgebra;
        let (pa, ca) = (a.space(), c.space());
        let mut out = format!("field {}\n\nalgebra\n", f.descriptor());
        out += &format!("  dim {}\n  basis {}\n", a.dim(), pa.labels().join(" "));
        out += &format!("  unit {}\n", render_combo(f, a.unit(), &[pa]));
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let v = a.mul_basis(i, j);
                if v.iter().any(|x| !f.is_zero(x)) {
                    out += &format!("  mul {} {} = {}\n", pa.label(i), pa.label(j), render_combo(f, v, &[pa]));
                }
            }
        }
        out += "end\n\ncoalgebra\n";
        out += &format!("  dim {}\n  basis {}\n", c.dim(), ca.labels().join(" "));
        for (k, x) in c.counit_matrix().row(0).iter().enumerate() {
            if !f.is_zero(x) {
                out += &format!("  counit {} = {}\n", ca.label(k), f.render(x));
            }
        }
        for k in 0..c.dim() {
            let v = c.comul_matrix().column(k);
            if v.iter().any(|x| !f.is_zero(x)) {
                out += &format!("  comul {} = {}\n", ca.label(k), render_combo(f, v, &[ca, ca]));
            }
        }
        out += "end\n\ncoaction\n";
        for k in 0..a.dim() {
            let v = self.p.coaction.column(k);
            if v.iter().any(|x| !f.is_zero(x)) {
                out += &format!("  {} = {}\n", pa.label(k), render_combo(f, v, &[pa, ca]));
            }
        }
        out += "end\n";
        if let Some(e) = &self.grouplike {
            out += &format!("\ngrouplike {}\n", render_combo(f, e, &[ca]));
        }
        for phi in &self.coreps {
            let vs = phi.space();
            out += &format!("\ncorep {}\n  basis {}\n", phi.name, vs.labels().join(" "));
            for k in 0..phi.dim() {
                let v = phi.coaction().column(k);
                if v.iter().any(|x| !f.is_zero(x)) {
                    out += &format!("  coact {} = {}\n", vs.label(k), render_combo(f, v, &[vs, ca]));
                }
            }
            out += "end\n";
        }
        out
    }
}

/// A document over whichever field its first line declares.
#[derive(Debug, Clone)]
pub enum AnyDocument {
    Rationals(Document<Rationals>),
    Cyclotomic(Document<Cyclotomic>),
    Prime(Document<PrimeField>),
}

/// Runs `$body` with `$d` bound to the concrete document behind an [`AnyDocument`].
#[macro_export]
macro_rules! with_document {
    ($any:expr, |$d:ident| $body:expr) => {
        match $any {
            $crate::format::AnyDocument::Rationals($d) => $body,
            $crate::format::AnyDocument::Cyclotomic($d) => $body,
            $crate::format::AnyDocument::Prime($d) => $body,
        }
    };
}

impl AnyDocument {
    pub fn dump(&self) -> String {
        with_document!(self, |d| d.dump())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        with_document!(self, |d| d.field().descriptor())
    }
}

pub fn render_combo<F: Field>(f: &F, v: &[F::Elem], spaces: &[&VectorSpace]) -> String {
    let tensor = TensorSpace::new(spaces.iter().map(|s| (*s).clone()).collect());
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(k, x)| {
            let label: Vec<&str> = tensor.unflatten(k).iter().zip(spaces).map(|(&i, s)| s.label(i)).collect();
            let label = label.join("@");
            if f.is_one(x) {
                label
            } else {
                format!("{}*{label}", f.render(x))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_combo<F: Field>(f: &F, text: &str, spaces: &[&VectorSpace], line: usize) -> Result<Vec<F::Elem>> {
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let mut v = vec![f.zero(); dims.iter().product()];
    let text = text.trim();
    if text == "0" {
        return Ok(v);
    }
    if text.is_empty() {
        return Err(err(line, "empty linear combination"));
    }
    for term in text.split(" + ") {
        let term = term.trim();
        let (coef, label) = match term.split_once('*') {
            Some((c, l)) => (f.parse(c.trim()).map_err(|e| err(line, e.to_string()))?, l.trim()),
            None => (f.one(), term),
        };
        let parts: Vec<&str> = label.split('@').collect();
        if parts.len() != spaces.len() {
            return Err(err(line, format!("`{label}` should have {} tensor factor(s)", spaces.len())));
        }
        let mut flat = 0;
        for (part, (space, d)) in parts.iter().zip(spaces.iter().zip(&dims)) {
            let i = space.index_of(part).ok_or_else(|| err(line, format!("unknown label `{part}`")))?;
            flat = flat * d + i;
        }
        v[flat] = f.add(&v[flat], &coef);
    }
    Ok(v)
}

fn parse_labels(rest: &str, line: usize) -> Result<VectorSpace> {
    let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    if let Some(bad) = labels.iter().find(|l| l.contains(['@', '*', '=', '#']) || *l == "0") {
        return Err(err(line, format!("invalid label `{bad}`")));
    }
    VectorSpace::new(labels).map_err(|m| err(line, m))
}

type Lines<'a> = [(usize, &'a str)];

/// Splits `text` into numbered, comment-free, non-empty lines.
fn meaningful_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn keyword(line: &str) -> (&str, &str) {
    match line.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (line, ""),
    }
}

/// The body of the block opened at `lines[start]` and the index after its `end`.
fn take_block<'a, 'b>(lines: &'b Lines<'a>, start: usize) -> Result<(&'b Lines<'a>, usize)> {
    let open = lines[start].0;
    let len = lines[start + 1..]
        .iter()
        .position(|(_, l)| *l == "end")
        .ok_or_else(|| err(open, "block is not closed by `end`"))?;
    Ok((&lines[start + 1..start + 1 + len], start + len + 2))
}

fn parse_field_line(line: usize, text: &str) -> Result<FieldDescriptor> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let number = |s: &str| s.parse::<u64>().map_err(|_| err(line, format!("expected a number, got `{s}`")));
    let desc = match words.as_slice() {
        ["field", "Q"] => FieldDescriptor::Rationals,
        ["field", "QZETA", n] => FieldDescriptor::Cyclotomic(
            u32::try_from(number(n)?).map_err(|_| err(line, "cyclotomic order too large"))?,
        ),
        ["field", "GF", p] => FieldDescriptor::Prime(number(p)?),
        ["field", ..] => return Err(err(line, "expected `field Q`, `field QZETA n` or `field GF p`")),
        _ => return Err(err(line, "the document must start with a `field` line")),
    };
    desc.validate().map_err(|e| err(line, e.to_string()))?;
    Ok(desc)
}

pub fn parse(text: &str) -> Result<AnyDocument> {
    let lines = meaningful_lines(text);
    let Some(&(no, first)) = lines.first() else {
        return Err(err(1, "empty document"));
    };
    let desc = parse_field_line(no, first)?;
    let any = AnyField::new(desc).map_err(|e| err(no, e.to_string()))?;
    let rest = &lines[1..];
    Ok(match any {
        AnyField::Rationals(f) => AnyDocument::Rationals(parse_body(f, rest)?),
        AnyField::Cyclotomic(f) => AnyDocument::Cyclotomic(parse_body(f, rest)?),
        AnyField::Prime(f) => AnyDocument::Prime(parse_body(f, rest)?),
    })
}

/// `dim` and `basis` lines shared by the algebra and coalgebra blocks.
struct Header {
    dim: Option<(usize, usize)>,
    basis: Option<VectorSpace>,
}

impl Header {
    fn accept(&mut self, line: usize, key: &str, rest: &str) -> Result<bool> {
        match key {
            "dim" => {
                if self.dim.is_some() {
                    return Err(err(line, "duplicate `dim`"));
                }
                let d = rest.parse().map_err(|_| err(line, format!("bad dimension `{rest}`")))?;
                self.dim = Some((line, d));
            }
            "basis" => {
                if self.basis.is_some() {
                    return Err(err(line, "duplicate `basis`"));
                }
                self.basis = Some(parse_labels(rest, line)?);
                if let Some((dl, d)) = self.dim {
                    if self.basis.as_ref().map(VectorSpace::dim) != Some(d) {
                        return Err(err(line, format!("basis has {} labels but dim {d} was declared on line {dl}", self.basis.as_ref().map_or(0, VectorSpace::dim))));
                    }
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn basis(&self, line: usize) -> Result<&VectorSpace> {
        self.basis.as_ref().ok_or_else(|| err(line, "`basis` must come first"))
    }

    fn finish(self, open: usize) -> Result<VectorSpace> {
        let basis = self.basis.ok_or_else(|| err(open, "block has no `basis`"))?;
        match self.dim {
            None => Err(err(open, "block has no `dim`")),
            Some((line, d)) if d != basis.dim() => Err(err(line, format!("dim {d} but {} basis labels", basis.dim()))),
            Some(_) => Ok(basis),
        }
    }
}

fn parse_algebra<F: Field>(f: &F, open: usize, body: &Lines) -> Result<StructureAlgebra<F>> {
    let mut header = Header { dim: None, basis: None };
    let mut unit = None;
    let mut products: Vec<(usize, usize, usize, &str)> = Vec::new();
    for &(line, text) in body {
        let (key, rest) = keyword(text);
        if header.accept(line, key, rest)? {
            continue;
        }
        match key {
            "unit" => {
                if unit.is_some() {
                    return Err(err(line, "duplicate `unit`"));
                }
                unit = Some(parse_combo(f, rest, &[header.basis(line)?], line)?);
            }
            "mul" => {
                let basis = header.basis(line)?;
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err(line, "expected `mul a b = ...`"))?;
                let names: Vec<&str> = lhs.split_whitespace().collect();
                let [a, b] = names.as_slice() else {
                    return Err(err(line, "expected two factors before `=`"));
                };
                let idx = |s: &str| basis.index_of(s).ok_or_else(|| err(line, format!("unknown label `{s}`")));
                products.push((line, idx(a)?, idx(b)?, rhs));
            }
            other => return Err(err(line, format!("unknown keyword `{other}` in algebra block"))),
        }
    }
    let basis = header.finish(open)?;
    let n = basis.dim();
    let unit = unit.ok_or_else(|| err(open, "algebra block has no `unit`"))?;
    let mut cols = vec![None; n * n];
    for (line, i, j, rhs) in products {
        if cols[i * n + j].is_some() {
            return Err(err(line, format!("duplicate product {} {}", basis.label(i), basis.label(j))));
        }
        cols[i * n + j] = Some(parse_combo(f, rhs, &[&basis], line)?);
    }
    let cols = cols.into_iter().map(|c| c.unwrap_or_else(|| vec![f.zero(); n])).collect();
    StructureAlgebra::new(f.clone(), basis, Matrix::from_columns(n, cols), unit)
}

fn parse_coalgebra<F: Field>(f: &F, open: usize, body: &Lines) -> Result<StructureCoalgebra<F>> {
    let mut header = Header { dim: None, basis: None };
    let mut counit: Vec<(usize, usize, F::Elem)> = Vec::new();
    let mut comul: Vec<(usize, usize, &str)> = Vec::new();
    for &(line, text) in body {
        let (key, rest) = keyword(text);
        if header.accept(line, key, rest)? {
            continue;
        }
        let (lhs, rhs) = rest
            .split_once('=')
            .map(|(a, b)| (a.trim(), b.trim()))
            .ok_or_else(|| err(line, format!("expected `{key} x = ...`")))?;
        let basis = header.basis(line)?;
        let k = basis.index_of(lhs).ok_or_else(|| err(line, format!("unknown label `{lhs}`")))?;
        match key {
            "counit" => counit.push((line, k, f.parse(rhs).map_err(|e| err(line, e.to_string()))?)),
            "comul" => comul.push((line, k, rhs)),
            other => return Err(err(line, format!("unknown keyword `{other}` in coalgebra block"))),
        }
    }
    let basis = header.finish(open)?;
    let n = basis.dim();
    let mut eps = vec![None; n];
    for (line, k, x) in counit {
        if eps[k].replace(x).is_some() {
            return Err(err(line, format!("duplicate counit for {}", basis.label(k))));
        }
    }
    let mut cols = vec![None; n];
    for (line, k, rhs) in comul {
        if cols[k].is_some() {
            return Err(err(line, format!("duplicate comul for {}", basis.label(k))));
        }
        cols[k] = Some(parse_combo(f, rhs, &[&basis, &basis], line)?);
    }
    let eps = eps.into_iter().map(|x| x.unwrap_or_else(|| f.zero())).collect();
    let cols = cols.into_iter().map(|c| c.unwrap_or_else(|| vec![f.zero(); n * n])).collect();
    StructureCoalgebra::new(f.clone(), basis, Matrix::from_columns(n * n, cols), eps)
}

/// Lines `label = combo` (with an optional leading keyword) over `domain ⊗ C`.
fn parse_coaction<F: Field>(
    f: &F,
    body: &Lines,
    key: Option<&str>,
    domain: &VectorSpace,
    c: &VectorSpace,
) -> Result<Matrix<F::Elem>> {
    let mut cols = vec![None; domain.dim()];
    for &(line, text) in body {
        let text = match key {
            Some(k) => match keyword(text) {
                (w, rest) if w == k => rest,
                (w, _) => return Err(err(line, format!("unknown keyword `{w}` in corep block"))),
            },
            None => text,
        };
        let (lhs, rhs) = text.split_once('=').ok_or_else(|| err(line, "expected `label = ...`"))?;
        let lhs = lhs.trim();
        let k = domain.index_of(lhs).ok_or_else(|| err(line, format!("unknown label `{lhs}`")))?;
        if cols[k].is_some() {
            return Err(err(line, format!("duplicate coaction for {lhs}")));
        }
        cols[k] = Some(parse_combo(f, rhs, &[domain, c], line)?);
    }
    let rows = domain.dim() * c.dim();
    Ok(Matrix::from_columns(rows, cols.into_iter().map(|v| v.unwrap_or_else(|| vec![f.zero(); rows])).collect()))
}

fn parse_body<F: Field>(f: F, lines: &Lines) -> Result<Document<F>> {
    let mut algebra: Option<StructureAlgebra<F>> = None;
    let mut coalgebra: Option<StructureCoalgebra<F>> = None;
    let mut coaction: Option<Matrix<F::Elem>> = None;
    let mut grouplike = None;
    let mut coreps: Vec<Corepresentation<F>> = Vec::new();
    let mut names = HashSet::new();
    let mut i = 0;
    while i < lines.len() {
        let (line, text) = lines[i];
        let (key, rest) = keyword(text);
        let needs_c = |what: &str| coalgebra.as_ref().ok_or_else(|| err(line, format!("{what} needs the coalgebra block first")));
        match key {
            "field" => return Err(err(line, "duplicate `field` line")),
            "algebra" | "coalgebra" | "coaction" if !rest.is_empty() => {
                return Err(err(line, format!("`{key}` takes no arguments")));
            }
            "algebra" => {
                if algebra.is_some() {
                    return Err(err(line, "duplicate algebra block"));
                }
                let (body, next) = take_block(lines, i)?;
                algebra = Some(parse_algebra(&f, line, body)?);
                i = next;
                continue;
            }
            "coalgebra" => {
                if coalgebra.is_some() {
                    return Err(err(line, "duplicate coalgebra block"));
                }
                let (body, next) = take_block(lines, i)?;
                coalgebra = Some(parse_coalgebra(&f, line, body)?);
                i = next;
                continue;
            }
            "coaction" => {
                if coaction.is_some() {
                    return Err(err(line, "duplicate coaction block"));
                }
                let a = algebra.as_ref().ok_or_else(|| err(line, "the coaction needs the algebra block first"))?;
                let c = needs_c("the coaction")?;
                let (body, next) = take_block(lines, i)?;
                coaction = Some(parse_coaction(&f, body, None, a.space(), c.space())?);
                i = next;
                continue;
            }
            "grouplike" => {
                if grouplike.is_some() {
                    return Err(err(line, "duplicate `grouplike`"));
                }
                grouplike = Some(parse_combo(&f, rest, &[needs_c("`grouplike`")?.space()], line)?);
            }
            "corep" => {
                let name = rest;
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(line, "expected `corep NAME`"));
                }
                if !names.insert(name.to_string()) {
                    return Err(err(line, format!("duplicate corep `{name}`")));
                }
                let c = needs_c("a corep")?;
                let (body, next) = take_block(lines, i)?;
                let Some((&(bl, btext), coacts)) = body.split_first() else {
                    return Err(err(line, "corep block needs a `basis` line"));
                };
                let space = match keyword(btext) {
                    ("basis", labels) => parse_labels(labels, bl)?,
                    _ => return Err(err(bl, "corep block must start with `basis`")),
                };
                let m = parse_coaction(&f, coacts, Some("coact"), &space, c.space())?;
                coreps.push(Corepresentation::new(name, space, m));
                i = next;
                continue;
            }
            "end" => return Err(err(line, "`end` without an open block")),
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
        i += 1;
    }
    let last = lines.last().map_or(1, |l| l.0);
    let algebra = algebra.ok_or_else(|| err(last, "missing algebra block"))?;
    let coalgebra = coalgebra.ok_or_else(|| err(last, "missing coalgebra block"))?;
    let coaction = coaction.ok_or_else(|| err(last, "missing coaction block"))?;
    Ok(Document { p: ComoduleAlgebra::new(algebra, coalgebra, coaction)?, grouplike, coreps })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = "field Q
algebra
  dim 2
  basis u0 u1
  unit u0
  mul u0 u0 = u0
  mul u0 u1 = u1
  mul u1 u0 = u1
  mul u1 u1 = u0
end
coalgebra
  dim 2
  basis x0 x1
  counit x0 = 1
  counit x1 = 1
  comul x0 = x0@x0
  comul x1 = x1@x1
end
coaction
  u0 = u0@x0
  u1 = u1@x1
end
grouplike x0
corep deg1
  basis v
  coact v = v@x1
end
";

    #[test]
    fn round_trip() {
        let doc = parse(Z2).unwrap();
        let dumped = doc.dump();
        assert_eq!(parse(&dumped).unwrap().dump(), dumped);
        let AnyDocument::Rationals(d) = doc else { panic!() };
        assert!(d.p.validate().is_ok());
        assert_eq!(d.coreps[0].name, "deg1");
    }

    #[test]
    fn coefficients_are_canonical() {
        let text = Z2.replace("mul u1 u1 = u0", "mul u1 u1 = 2/4*u0 + 1/2*u0");
        let dumped = parse(&text).unwrap().dump();
        assert!(dumped.contains("mul u1 u1 = u0\n"));
        let text = Z2.replace("mul u1 u1 = u0", "mul u1 u1 = 2/4*u0");
        assert!(parse(&text).unwrap().dump().contains("mul u1 u1 = 1/2*u0\n"));
    }

    #[test]
    fn missing_grouplike_is_reported_on_use() {
        let AnyDocument::Rationals(d) = parse(&Z2.replace("grouplike x0\n", "")).unwrap() else { panic!() };
        assert_eq!(d.require_grouplike().unwrap_err().to_string(), "grouplike required");
    }

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("{other}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(parse(&Z2.replace("mul u1 u1 = u0", "mul u1 u2 = u0")).unwrap_err()), 9);
        assert_eq!(line_of(parse(&Z2.replace("unit u0", "frobnicate")).unwrap_err()), 5);
        assert_eq!(line_of(parse(&Z2.replace("mul u1 u0 = u1", "mul u0 u1 = u1")).unwrap_err()), 8);
        assert_eq!(line_of(parse(&Z2.replace("basis x0 x1", "basis x0 x0")).unwrap_err()), 13);
        assert_eq!(line_of(parse(&Z2.replace("  dim 2\n  basis u0 u1", "  dim 3\n  basis u0 u1")).unwrap_err()), 4);
        assert_eq!(line_of(parse(&Z2.replace("u1 = u1@x1", "u1 = u1@x1@x1")).unwrap_err()), 21);
        assert_eq!(line_of(parse("field GF 4\n").unwrap_err()), 1);
        assert!(matches!(parse("").unwrap_err(), Error::Parse { .. }));
        assert!(parse(&Z2.replace("grouplike x0", "grouplike x0\ncorep deg1\n  basis w\nend")).is_err());
    }

    #[test]
    fn cyclotomic_fields() {
        let text = Z2.replace("field Q", "field QZETA 3").replace("mul u1 u1 = u0", "mul u1 u1 = [0,1]*u0");
        let doc = parse(&text).unwrap();
        assert_eq!(doc.descriptor(), FieldDescriptor::Cyclotomic(3));
        let dumped = doc.dump();
        assert!(dumped.starts_with("field QZETA 3\n"));
        assert!(dumped.contains("mul u1 u1 = [0,1]*u0\n"));
        assert_eq!(parse(&dumped).unwrap().dump(), dumped);
    }
}
