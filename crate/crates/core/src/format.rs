//! The line-oriented spec file read by the command-line tool.
//!
//! ```text
//! # the Segre product of two points
//! [grading]
//! 1 0
//! 0 1
//! [sizes]
//! s: 2 2
//! t: 2 2
//! [ideal I]
//! x_1_1*x_2_2 - x_1_2*x_2_1
//! [ideal J]
//! [weights]
//! w1: 1 0 0 0
//! w2: 0 0 0 0
//! [map]
//! p_1 = a_1*b_1
//! ```
//!
//! `[grading]` holds the rows of the matrix whose columns are the degrees
//! `a^i`. Ideals are written in the x and y rings of the spec. Map lines
//! define a polynomial map; its source variables are the left-hand sides in
//! file order, its target variables everything on the right, sorted.

use std::collections::BTreeSet;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::oracle::PolynomialMap;
use crate::poly::{parse_polynomial, Polynomial, Ring, RingRef, Var};
use crate::tfp::{validate_spec, TfpSpec};

/// Raw sections of a spec file; polynomials stay as text until a ring is known.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
    pub grading: Vec<Vec<i64>>,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
    pub ideal_i: Vec<String>,
    pub ideal_j: Vec<String>,
    pub w1: Option<Vec<i64>>,
    pub w2: Option<Vec<i64>>,
    pub map: Vec<(String, String)>,
}

fn line_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("line {line}: {msg}"))
}

fn numbers<T: std::str::FromStr>(text: &str, line: usize) -> Result<Vec<T>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| w.parse().map_err(|_| line_err(line, format!("bad number `{w}`"))))
        .collect()
}

fn key_value(text: &str, line: usize) -> Result<(&str, &str)> {
    let (k, v) = text.split_once(':').ok_or_else(|| line_err(line, "expected `key: value`"))?;
    Ok((k.trim(), v.trim()))
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = SpecFile::default();
        let mut section: Option<String> = None;
        let mut seen = BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let n = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.split_whitespace().collect::<Vec<_>>().join(" ");
                if !["grading", "sizes", "ideal I", "ideal J", "weights", "map"].contains(&name.as_str()) {
                    return Err(line_err(n, format!("unknown section [{name}]")));
                }
                if !seen.insert(name.clone()) {
                    return Err(line_err(n, format!("section [{name}] repeated")));
                }
                section = Some(name);
                continue;
            }
            match section.as_deref() {
                None => return Err(line_err(n, "content before the first section")),
                Some("grading") => out.grading.push(numbers(line, n)?),
                Some("sizes") => match key_value(line, n)? {
                    ("s", v) => out.s = numbers(v, n)?,
                    ("t", v) => out.t = numbers(v, n)?,
                    (k, _) => return Err(line_err(n, format!("unknown size `{k}`"))),
                },
                Some("ideal I") => out.ideal_i.push(line.to_string()),
                Some("ideal J") => out.ideal_j.push(line.to_string()),
                Some("weights") => match key_value(line, n)? {
                    ("w1", v) => out.w1 = Some(numbers(v, n)?),
                    ("w2", v) => out.w2 = Some(numbers(v, n)?),
                    (k, _) => return Err(line_err(n, format!("unknown weight `{k}`"))),
                },
                Some(_) => {
                    let (lhs, rhs) = line.split_once('=').ok_or_else(|| line_err(n, "expected `var = polynomial`"))?;
                    out.map.push((lhs.trim().to_string(), rhs.trim().to_string()));
                }
            }
        }
        Ok(out)
    }

    /// The grading columns (transpose of the `[grading]` rows).
    pub fn columns(&self) -> Result<Vec<Vec<i64>>> {
        let Some(first) = self.grading.first() else {
            return Err(Error::Config("missing [grading]".into()));
        };
        if self.grading.iter().any(|r| r.len() != first.len()) {
            return Err(Error::Config("grading rows differ in length".into()));
        }
        Ok((0..first.len()).map(|c| self.grading.iter().map(|row| row[c]).collect()).collect())
    }

    pub fn spec(&self) -> Result<TfpSpec> {
        validate_spec(self.columns()?, self.s.clone(), self.t.clone())
    }

    /// Generators of `I` and `J` in the x and y rings of `spec`.
    pub fn ideals<C: Coeff>(&self, spec: &TfpSpec) -> Result<(Vec<Polynomial<C>>, Vec<Polynomial<C>>)> {
        let parse = |lines: &[String], ring: &RingRef| {
            lines.iter().map(|l| parse_polynomial(l, ring)).collect::<Result<Vec<_>>>()
        };
        Ok((parse(&self.ideal_i, spec.x_ring())?, parse(&self.ideal_j, spec.y_ring())?))
    }

    pub fn polynomial_map<C: Coeff>(&self) -> Result<PolynomialMap<C>> {
        if self.map.is_empty() {
            return Err(Error::Config("missing [map]".into()));
        }
        let source = Ring::new(self.map.iter().map(|(v, _)| parse_var(v)).collect::<Result<_>>()?)?;
        let mut target = BTreeSet::new();
        for (_, rhs) in &self.map {
            target.extend(scan_vars(rhs)?);
        }
        let target = Ring::new(target.into_iter().collect())?;
        let images = self.map.iter().map(|(_, rhs)| parse_polynomial(rhs, &target)).collect::<Result<_>>()?;
        PolynomialMap::new(&source, &target, images)
    }
}

/// `tag_1_2` as a variable.
pub fn parse_var(text: &str) -> Result<Var> {
    let mut parts = text.trim().split('_');
    let tag = parts.next().unwrap_or("");
    let ok_tag = tag.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && tag.chars().all(|c| c.is_ascii_alphanumeric() || c == '\'');
    let indices: Vec<u32> = parts.map(|p| p.parse().ok()).collect::<Option<_>>().unwrap_or_default();
    if !ok_tag || indices.is_empty() {
        return Err(Error::Config(format!("bad variable name `{text}`")));
    }
    Ok(Var::new(tag, indices))
}

/// Every variable named in a polynomial text.
pub fn scan_vars(text: &str) -> Result<BTreeSet<Var>> {
    let mut out = BTreeSet::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.insert(parse_var(&text[start..i])?);
        } else {
            i += 1;
        }
    }
    Ok(out)
}

/// A ring holding every variable used in `texts`, sorted by tag then index.
pub fn infer_ring(texts: &[&str]) -> Result<RingRef> {
    let mut vars = BTreeSet::new();
    for t in texts {
        vars.extend(scan_vars(t)?);
    }
    Ring::new(vars.into_iter().collect())
}

/// A comma or space separated list of numbers.
pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    numbers(text, 0).map_err(|_| Error::Config(format!("bad list `{text}`")))
}
