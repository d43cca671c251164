//! Permutations of `{1..n}` and cycle notation.
//!
//! Products compose right-to-left: `(p·q)(x) = p(q(x))`, so the right
//! factor acts first. The worked examples for the alternating groups
//! (valencies in A4, double cosets in A5) only come out under this rule.

use crate::error::{Error, Result};

/// Images of `0..n`, zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        Permutation(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self · other`, applying `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Canonical cycle notation: each cycle starts at its smallest point,
    /// cycles ordered by that point, fixed points dropped, identity is `e`.
    pub fn cycle_label(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                out.push_str(&(x + 1).to_string());
                x = self.apply(x);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }

    /// Parses a product of cycles such as `(243)`, `(2 4 3)` or
    /// `(1 2)(3 4)`. `offset` is added to reported error positions.
    pub fn parse_cycles(text: &str, degree: usize, offset: usize) -> Result<Permutation> {
        let trimmed = text.trim();
        if trimmed == "e" {
            return Ok(Permutation::identity(degree));
        }
        let lead = text.len() - text.trim_start().len();
        let mut acc = Permutation::identity(degree);
        let bytes = trimmed.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            match bytes[pos] {
                b' ' | b'\t' => pos += 1,
                b'(' => {
                    let close = trimmed[pos..]
                        .find(')')
                        .ok_or_else(|| Error::syntax(offset + lead + pos, "unclosed cycle"))?
                        + pos;
                    let body = &trimmed[pos + 1..close];
                    let points = parse_points(body, degree, offset + lead + pos + 1)?;
                    let mut images: Vec<u8> = (0..degree as u8).collect();
                    for (i, &p) in points.iter().enumerate() {
                        images[p] = points[(i + 1) % points.len()] as u8;
                    }
                    // Cycles in a product are read with the same right-first rule.
                    acc = acc.compose(&Permutation(images));
                    pos = close + 1;
                }
                _ => {
                    return Err(Error::syntax(
                        offset + lead + pos,
                        "expected `(` to start a cycle",
                    ))
                }
            }
        }
        Ok(acc)
    }
}

fn parse_points(body: &str, degree: usize, offset: usize) -> Result<Vec<usize>> {
    let tokens: Vec<(usize, &str)> = if body.trim().contains(char::is_whitespace) {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in body.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s, &body[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &body[s..]));
        }
        out
    } else {
        let lead = body.len() - body.trim_start().len();
        body.trim()
            .char_indices()
            .map(|(i, c)| (lead + i, &body[lead + i..lead + i + c.len_utf8()]))
            .collect()
    };
    if tokens.is_empty() {
        return Err(Error::syntax(offset, "empty cycle"));
    }
    let mut points = Vec::with_capacity(tokens.len());
    for (at, tok) in tokens {
        let p: usize = tok
            .parse()
            .map_err(|_| Error::syntax(offset + at, format!("`{tok}` is not a point")))?;
        if p == 0 || p > degree {
            return Err(Error::syntax(
                offset + at,
                format!("point {p} outside 1..={degree}"),
            ));
        }
        if points.contains(&(p - 1)) {
            return Err(Error::syntax(
                offset + at,
                format!("point {p} repeated in cycle"),
            ));
        }
        points.push(p - 1);
    }
    Ok(points)
}

/// All permutations of `0..n` in lexicographic order; identity comes first.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![Permutation(current.clone())];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Permutation(current.clone()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_labels_are_canonical() {
        let p = Permutation::parse_cycles("(432)", 4, 0).unwrap();
        assert_eq!(p.cycle_label(), "(243)");
        let q = Permutation::parse_cycles("(2 4 3)", 4, 0).unwrap();
        assert_eq!(p, q);
        assert_eq!(Permutation::identity(5).cycle_label(), "e");
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Permutation::parse_cycles("(12)", 3, 0).unwrap();
        let b = Permutation::parse_cycles("(23)", 3, 0).unwrap();
        // (12)(23): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(a.compose(&b).cycle_label(), "(123)");
        let ab = Permutation::parse_cycles("(12)(23)", 3, 0).unwrap();
        assert_eq!(ab, a.compose(&b));
    }

    #[test]
    fn parity() {
        assert!(Permutation::parse_cycles("(123)", 3, 0).unwrap().is_even());
        assert!(!Permutation::parse_cycles("(12)", 3, 0).unwrap().is_even());
        assert!(Permutation::parse_cycles("(12)(34)", 4, 0)
            .unwrap()
            .is_even());
    }

    #[test]
    fn lexicographic_enumeration() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], Permutation::identity(4));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Permutation::parse_cycles("(12)(35)", 4, 10).unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                position: 16,
                message: "point 5 outside 1..=4".into()
            }
        );
        assert!(Permutation::parse_cycles("(12", 4, 0).is_err());
        assert!(Permutation::parse_cycles("(11)", 4, 0).is_err());
        assert!(Permutation::parse_cycles("12", 4, 0).is_err());
    }
}
