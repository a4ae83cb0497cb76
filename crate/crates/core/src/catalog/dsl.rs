//! Line-based text format for multiplication tables (`.zb` files).
//!
//! ```text
//! # comments run to end of line
//! algebra A8
//! dim 4
//! param alpha = 2/3
//! table
//! e1 * e1 = e3
//! e1 * e2 = e4
//! e2 * e1 = -alpha e3
//! e2 * e2 = -1 e4
//! end
//! ```
//!
//! A term is `[rational] e<k>` or `[-]ident e<k>`; terms are joined with `+`.
//! Omitted products are zero.

use std::collections::{HashMap, HashSet};

use num_traits::One;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficient {
    Literal(#[serde(serialize_with = "ser_rational")] Rational),
    Param { name: String, negated: bool },
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coefficient: Coefficient,
    /// 1-based basis index.
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductLine {
    pub left: usize,
    pub right: usize,
    pub terms: Vec<Term>,
}

/// A parsed algebra file. Indices are 1-based, as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    pub params: Vec<(String, Rational)>,
    pub products: Vec<ProductLine>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && parse_basis(s).is_none()
}

/// `e<k>` with `k ≥ 1`.
fn parse_basis(s: &str) -> Option<usize> {
    let digits = s.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&k| k >= 1)
}

fn parse_term(text: &str, line: usize) -> Result<Term> {
    let text = text.trim();
    if text.is_empty() {
        return Err(syntax(line, "empty term"));
    }
    // the basis vector is the trailing `e<digits>`
    let split = text
        .rfind('e')
        .filter(|&p| parse_basis(&text[p..]).is_some())
        .ok_or_else(|| syntax(line, format!("term `{text}` does not end in a basis vector e<k>")))?;
    let target = parse_basis(&text[split..]).expect("checked above");
    let prefix = &text[..split];
    let separated = prefix.is_empty() || prefix.ends_with(char::is_whitespace);
    let prefix = prefix.trim();
    let coefficient = if prefix.is_empty() {
        Coefficient::Literal(Rational::one())
    } else {
        let (negated, name) = match prefix.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, prefix),
        };
        if is_ident(name) {
            if !separated {
                return Err(syntax(line, format!("missing space between `{name}` and the basis vector")));
            }
            Coefficient::Param { name: name.to_string(), negated }
        } else {
            Coefficient::Literal(parse_rational(prefix)?)
        }
    };
    Ok(Term { coefficient, target })
}

fn check_index(index: usize, dim: usize, line: usize) -> Result<()> {
    if index == 0 || index > dim {
        Err(Error::IndexOutOfRange { line, index, dim })
    } else {
        Ok(())
    }
}

#[derive(PartialEq)]
enum Stage {
    Name,
    Dim,
    Params,
    Table,
    Done,
}

/// Parses the text format. Line numbers in errors are 1-based.
pub fn parse_dsl(text: &str) -> Result<AlgebraDoc> {
    let mut stage = Stage::Name;
    let mut doc = AlgebraDoc { name: String::new(), dim: 0, params: Vec::new(), products: Vec::new() };
    let mut seen_products = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match stage {
            Stage::Name => {
                if keyword != "algebra" || rest.is_empty() {
                    return Err(syntax(line, "expected `algebra <name>`"));
                }
                doc.name = rest.to_string();
                stage = Stage::Dim;
            }
            Stage::Dim => {
                if keyword != "dim" {
                    return Err(syntax(line, "expected `dim <n>`"));
                }
                doc.dim = rest
                    .parse()
                    .ok()
                    .filter(|&n: &usize| n >= 1 && rest.bytes().all(|b| b.is_ascii_digit()))
                    .ok_or_else(|| syntax(line, format!("bad dimension `{rest}`")))?;
                stage = Stage::Params;
            }
            Stage::Params if keyword == "param" => {
                let (name, value) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax(line, "expected `param <ident> = <rational>`"))?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(syntax(line, format!("bad parameter name `{name}`")));
                }
                if doc.params.iter().any(|(n, _)| n == name) {
                    return Err(syntax(line, format!("parameter `{name}` declared twice")));
                }
                doc.params.push((name.to_string(), parse_rational(value.trim())?));
            }
            Stage::Params if keyword == "table" && rest.is_empty() => stage = Stage::Table,
            Stage::Params => return Err(syntax(line, "expected `param` or `table`")),
            Stage::Table if content == "end" => stage = Stage::Done,
            Stage::Table => {
                let (lhs, rhs) = content
                    .split_once('=')
                    .ok_or_else(|| syntax(line, "expected `e<i> * e<j> = <terms>`"))?;
                let (l, r) = lhs.split_once('*').ok_or_else(|| syntax(line, "expected `e<i> * e<j>`"))?;
                let left = parse_basis(l.trim()).ok_or_else(|| syntax(line, format!("bad basis vector `{}`", l.trim())))?;
                let right = parse_basis(r.trim()).ok_or_else(|| syntax(line, format!("bad basis vector `{}`", r.trim())))?;
                check_index(left, doc.dim, line)?;
                check_index(right, doc.dim, line)?;
                let terms = rhs.split('+').map(|t| parse_term(t, line)).collect::<Result<Vec<_>>>()?;
                for t in &terms {
                    check_index(t.target, doc.dim, line)?;
                }
                if !seen_products.insert((left, right)) {
                    return Err(Error::DuplicateProduct { line, left, right });
                }
                doc.products.push(ProductLine { left, right, terms });
            }
            Stage::Done => return Err(syntax(line, "content after `end`")),
        }
    }
    if stage != Stage::Done {
        return Err(syntax(last_line + 1, "unexpected end of input (missing `end`?)"));
    }
    Ok(doc)
}

impl AlgebraDoc {
    /// Substitutes parameters and builds the algebra. `bindings` override the
    /// values declared with `param`.
    pub fn instantiate(&self, bindings: &[(String, Rational)]) -> Result<Algebra> {
        let mut values: HashMap<&str, &Rational> = self.params.iter().map(|(n, v)| (n.as_str(), v)).collect();
        for (n, v) in bindings {
            values.insert(n.as_str(), v);
        }
        let mut seen = HashSet::new();
        let mut products = Vec::with_capacity(self.products.len());
        for p in &self.products {
            for idx in [p.left, p.right].into_iter().chain(p.terms.iter().map(|t| t.target)) {
                check_index(idx, self.dim, 0)?;
            }
            if !seen.insert((p.left, p.right)) {
                return Err(Error::DuplicateProduct { line: 0, left: p.left, right: p.right });
            }
            let mut terms = Vec::with_capacity(p.terms.len());
            for t in &p.terms {
                let c = match &t.coefficient {
                    Coefficient::Literal(q) => q.clone(),
                    Coefficient::Param { name, negated } => {
                        let v = (*values.get(name.as_str()).ok_or_else(|| Error::UnboundParameter(name.clone()))?).clone();
                        if *negated {
                            -v
                        } else {
                            v
                        }
                    }
                };
                terms.push((c, t.target - 1));
            }
            products.push((p.left - 1, p.right - 1, terms));
        }
        Algebra::from_products(self.dim, products)
    }

    /// Literal-coefficient document for an algebra with rational entries.
    pub fn from_algebra<F: Field>(name: &str, a: &Algebra<F>) -> Result<Self> {
        let n = a.dim();
        let mut products = Vec::new();
        for (i, j, v) in a.nonzero_products() {
            let mut terms = Vec::new();
            for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let q = c.to_rational().ok_or_else(|| Error::ExtensionScalarNotSerializable {
                    entry: format!("c[{}][{}][{}] = {}", i + 1, j + 1, k + 1, c),
                })?;
                terms.push(Term { coefficient: Coefficient::Literal(q), target: k + 1 });
            }
            products.push(ProductLine { left: i + 1, right: j + 1, terms });
        }
        Ok(AlgebraDoc { name: name.to_string(), dim: n, params: Vec::new(), products })
    }
}

fn format_term(t: &Term) -> String {
    match &t.coefficient {
        Coefficient::Literal(q) if q.is_one() => format!("e{}", t.target),
        Coefficient::Literal(q) => format!("{} e{}", format_rational(q), t.target),
        Coefficient::Param { name, negated } => {
            format!("{}{} e{}", if *negated { "-" } else { "" }, name, t.target)
        }
    }
}

/// Canonical text: products sorted by `(i, j)`, terms by target.
pub fn serialize_doc(doc: &AlgebraDoc) -> String {
    let mut out = format!("algebra {}\ndim {}\n", doc.name, doc.dim);
    for (name, value) in &doc.params {
        out.push_str(&format!("param {} = {}\n", name, format_rational(value)));
    }
    out.push_str("table\n");
    let mut products: Vec<&ProductLine> = doc.products.iter().collect();
    products.sort_by_key(|p| (p.left, p.right));
    for p in products {
        let mut terms: Vec<&Term> = p.terms.iter().collect();
        terms.sort_by_key(|t| t.target);
        let rhs: Vec<String> = terms.into_iter().map(format_term).collect();
        out.push_str(&format!("e{} * e{} = {}\n", p.left, p.right, rhs.join(" + ")));
    }
    out.push_str("end\n");
    out
}

/// Serializes an algebra. Fails if any constant is irrational.
pub fn serialize_algebra<F: Field>(name: &str, a: &Algebra<F>) -> Result<String> {
    Ok(serialize_doc(&AlgebraDoc::from_algebra(name, a)?))
}
