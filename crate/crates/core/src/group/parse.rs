//! Text formats for groups and subsets.
//!
//! Group specs: `C<n>`, `D<n>` (order `2n`), `S<n>`, `A<n>`, products
//! `<spec>x<spec>` (left-associative) and `semidirect:<file>`.
//!
//! Subsets are comma-separated element names. Cyclic elements are powers
//! of `g`, dihedral elements are words in `s`/`σ` and `t`/`τ` with optional
//! integer exponents, permutations use cycle notation, and product
//! elements are pairs `(a,b)`. `e` is the identity in every group.
//!
//! A semidirect file looks like
//!
//! ```text
//! # D6 as C6 x| C2, the generator of C2 inverting C6
//! normal: C6
//! complement: C2
//! act e: e g g^2 g^3 g^4 g^5
//! act g: e g^5 g^4 g^3 g^2 g
//! ```
//!
//! with one `act` line per element of the complement, listing the images
//! of the normal subgroup's elements in index order.

use std::path::Path;

use super::construct::{
    direct_product, make_alternating, make_cyclic, make_dihedral, make_symmetric,
    semidirect_product, Action,
};
use super::perm::Permutation;
use super::{ElementSubset, FiniteGroup, Structure};
use crate::error::{Error, Result};

pub fn parse_group_spec(text: &str) -> Result<FiniteGroup> {
    let trimmed = text.trim();
    if let Some(path) = trimmed.strip_prefix("semidirect:") {
        return parse_semidirect_file(Path::new(path.trim()));
    }
    let lead = text.len() - text.trim_start().len();
    let mut group: Option<FiniteGroup> = None;
    let mut start = 0;
    for part in trimmed.split('x') {
        let atom = parse_atom(part, lead + start)?;
        group = Some(match group {
            None => atom,
            Some(acc) => direct_product(&acc, &atom)?,
        });
        start += part.len() + 1;
    }
    Ok(group.expect("split yields at least one part"))
}

fn parse_atom(part: &str, offset: usize) -> Result<FiniteGroup> {
    let lead = part.len() - part.trim_start().len();
    let atom = part.trim();
    let mut chars = atom.chars();
    let Some(kind) = chars.next() else {
        return Err(Error::syntax(offset, "expected a group such as C7 or D6"));
    };
    let digits = chars.as_str();
    let n: usize = digits.parse().map_err(|_| {
        Error::syntax(
            offset + lead + 1,
            format!("expected an integer after `{kind}`"),
        )
    })?;
    match kind {
        'C' => make_cyclic(n),
        'D' => make_dihedral(n),
        'S' => make_symmetric(n),
        'A' => make_alternating(n),
        other => Err(Error::syntax(
            offset + lead,
            format!("unknown group family `{other}`; expected C, D, S or A"),
        )),
    }
}

pub fn parse_semidirect_file(path: &Path) -> Result<FiniteGroup> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut group = parse_semidirect_text(&text)?;
    group.set_name(format!("semidirect:{}", path.display()));
    Ok(group)
}

/// Parses the semidirect file format from a string.
pub fn parse_semidirect_text(text: &str) -> Result<FiniteGroup> {
    let mut normal = None;
    let mut complement: Option<FiniteGroup> = None;
    let mut acts: Vec<(usize, &str, &str)> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let here = offset;
        offset += line.len();
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| Error::syntax(here, "expected `key: value`"))?;
        let value_at = here + line.find(':').unwrap() + 1;
        match key.trim() {
            "normal" => normal = Some(parse_group_spec(value)?),
            "complement" => complement = Some(parse_group_spec(value)?),
            k if k.starts_with("act ") => acts.push((value_at, k[4..].trim(), value)),
            other => return Err(Error::syntax(here, format!("unknown key `{other}`"))),
        }
    }
    let normal = normal.ok_or_else(|| Error::syntax(0, "missing `normal:` line"))?;
    let complement = complement.ok_or_else(|| Error::syntax(0, "missing `complement:` line"))?;
    let mut images: Vec<Option<Vec<usize>>> = vec![None; complement.order()];
    for (at, k_name, value) in acts {
        let k = parse_element(&complement, k_name, at)?;
        let mut row = Vec::with_capacity(normal.order());
        let mut pos = 0;
        for tok in value.split_whitespace() {
            let tok_at = value[pos..].find(tok).unwrap() + pos;
            row.push(parse_element(&normal, tok, at + tok_at)?);
            pos = tok_at + tok.len();
        }
        if images[k].replace(row).is_some() {
            return Err(Error::InvalidAction {
                axiom: format!("shape: action of `{}` given twice", complement.label(k)),
            });
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(k, row)| {
            row.ok_or_else(|| Error::InvalidAction {
                axiom: format!("shape: missing action of `{}`", complement.label(k)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    semidirect_product(&normal, &complement, &Action::new(images))
}

/// Parses a comma-separated list of element names.
pub fn parse_subset(group: &FiniteGroup, text: &str) -> Result<ElementSubset> {
    if text.trim().is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut members = Vec::new();
    for (at, token) in split_top_level(text, 0)? {
        if token.trim().is_empty() {
            return Err(Error::syntax(at, "empty element name"));
        }
        members.push(parse_element(group, token, at)?);
    }
    ElementSubset::new(group, members)
}

/// Splits on commas at parenthesis depth zero, keeping byte offsets.
fn split_top_level(text: &str, offset: usize) -> Result<Vec<(usize, &str)>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::syntax(offset + i, "unbalanced `)`"));
                }
            }
            ',' if depth == 0 => {
                parts.push((offset + start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::syntax(offset + text.len(), "unclosed `(`"));
    }
    parts.push((offset + start, &text[start..]));
    Ok(parts)
}

/// Resolves one element name; `offset` locates `text` in the caller's input.
pub fn parse_element(group: &FiniteGroup, text: &str, offset: usize) -> Result<usize> {
    let lead = text.len() - text.trim_start().len();
    let name = text.trim();
    let offset = offset + lead;
    if name == "e" {
        return Ok(group.identity());
    }
    if let Some(idx) = group.index_of(name) {
        return Ok(idx);
    }
    let unknown = || Error::UnknownElement {
        name: name.to_string(),
        group: group.name().to_string(),
    };
    match group.structure() {
        Structure::Cyclic { .. } => parse_word(group, name, offset, &[('g', 1)]),
        Structure::Dihedral { n } => {
            let (s, t) = (if *n > 1 { 1 } else { 0 }, *n);
            parse_word(
                group,
                name,
                offset,
                &[('s', s), ('σ', s), ('t', t), ('τ', t)],
            )
        }
        Structure::Symmetric { degree } | Structure::Alternating { degree } => {
            let p = Permutation::parse_cycles(name, *degree, offset)?;
            group.index_of(&p.cycle_label()).ok_or_else(unknown)
        }
        Structure::Direct(left, right)
        | Structure::Semidirect {
            normal: left,
            complement: right,
        } => {
            let inner = name
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::syntax(offset, "expected a pair `(a,b)`"))?;
            let parts = split_top_level(inner, offset + 1)?;
            let [(a_at, a), (b_at, b)] = parts[..] else {
                return Err(Error::syntax(offset, "a pair needs exactly two entries"));
            };
            let x = parse_element(left, a, a_at)?;
            let y = parse_element(right, b, b_at)?;
            Ok(x * right.order() + y)
        }
        Structure::Quotient | Structure::Table => Err(unknown()),
    }
}

/// Evaluates a word such as `ts^5`, `g^-2` or `σ τ σ^2` left to right.
fn parse_word(
    group: &FiniteGroup,
    text: &str,
    offset: usize,
    generators: &[(char, usize)],
) -> Result<usize> {
    let mut acc = group.identity();
    let mut chars = text.char_indices().peekable();
    let mut any = false;
    while let Some((i, c)) = chars.next() {
        if c.is_whitespace() || c == '*' || c == '.' || c == '·' {
            continue;
        }
        let base = if c == 'e' {
            group.identity()
        } else if let Some(&(_, idx)) = generators.iter().find(|(sym, _)| *sym == c) {
            idx
        } else if c.is_alphabetic() {
            return Err(Error::UnknownElement {
                name: text.to_string(),
                group: group.name().to_string(),
            });
        } else {
            return Err(Error::syntax(offset + i, format!("unexpected `{c}`")));
        };
        any = true;
        let mut exp: i64 = 1;
        if let Some(&(j, '^')) = chars.peek() {
            chars.next();
            let start = j + 1;
            let mut end = start;
            while let Some(&(k, d)) = chars.peek() {
                if d.is_ascii_digit() || (k == start && (d == '-' || d == '+')) {
                    end = k + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            exp = text[start..end]
                .parse()
                .map_err(|_| Error::syntax(offset + start, "expected an integer exponent"))?;
        }
        acc = group.mul(acc, group.pow(base, exp));
    }
    if !any {
        return Err(Error::syntax(offset, "empty element name"));
    }
    Ok(acc)
}
