use std::collections::HashSet;

use serde::Serialize;

use super::{CheckRecord, Instance};
use crate::connectivity::is_strongly_connected;
use crate::error::{Error, Result};
use crate::group::{closure, ElementSubset, FiniteGroup};

/// All words of length ≥ 1 in `letters`, built by left multiplication.
fn word_set(group: &FiniteGroup, letters: &ElementSubset) -> Vec<bool> {
    let mut mask = letters.mask(group.order());
    let mut frontier: Vec<usize> = letters.members().to_vec();
    while let Some(w) = frontier.pop() {
        for a in letters.iter() {
            let x = group.mul(a, w);
            if !mask[x] {
                mask[x] = true;
                frontier.push(x);
            }
        }
    }
    mask
}

fn product_covers(group: &FiniteGroup, a: &[bool], b: &[bool]) -> bool {
    let n = group.order();
    let mut hit = vec![false; n];
    let bs: Vec<usize> = (0..n).filter(|&y| b[y]).collect();
    for x in (0..n).filter(|&x| a[x]) {
        for &y in &bs {
            hit[group.mul(x, y)] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

/// Whether `G = W(L⁻¹) W(R) = W(L) W(R⁻¹)`.
///
/// The word-set form is compared with the subgroup form `⟨L⟩⟨R⟩ = G`;
/// for a finite group they must agree, and a disagreement is reported as
/// an inconsistency.
pub fn factorization_check(
    group: &FiniteGroup,
    left: &ElementSubset,
    right: &ElementSubset,
) -> Result<bool> {
    let w_left_inv = word_set(group, &left.inverse(group));
    let w_right = word_set(group, right);
    let w_left = word_set(group, left);
    let w_right_inv = word_set(group, &right.inverse(group));
    let word_form_a = product_covers(group, &w_left_inv, &w_right);
    let word_form_b = product_covers(group, &w_left, &w_right_inv);

    let n = group.order();
    let sub_left = closure(group, left).mask(n);
    let sub_right = closure(group, right).mask(n);
    if sub_left != w_left || sub_right != w_right {
        return Err(Error::Inconsistency(
            "word sets differ from generated subgroups".into(),
        ));
    }
    let subgroup_form = product_covers(group, &sub_left, &sub_right);
    if word_form_a != subgroup_form || word_form_b != subgroup_form {
        return Err(Error::Inconsistency(format!(
            "factorization forms disagree: W(L^-1)W(R) {word_form_a}, W(L)W(R^-1) {word_form_b}, <L><R> {subgroup_form}"
        )));
    }
    Ok(subgroup_form)
}

const NO_PARENT: (u32, u32) = (u32::MAX, u32::MAX);

/// Sets of length-`n` words in `L⁻¹` (left) and in `R` (right), advanced one
/// letter at a time with parent pointers for word reconstruction and a
/// history of visited state pairs for cycle detection.
#[derive(Debug, Clone)]
pub struct WordLengthState<'g> {
    group: &'g FiniteGroup,
    left_letters: Vec<usize>,
    right_letters: Vec<usize>,
    /// `left_levels[m][x]` = (letter, previous element) for words of length m+1.
    left_levels: Vec<Vec<(u32, u32)>>,
    right_levels: Vec<Vec<(u32, u32)>>,
    history: HashSet<(Vec<u64>, Vec<u64>)>,
}

fn bits(level: &[(u32, u32)]) -> Vec<u64> {
    let mut out = vec![0u64; level.len().div_ceil(64)];
    for (i, p) in level.iter().enumerate() {
        if *p != NO_PARENT {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

impl<'g> WordLengthState<'g> {
    /// The length-1 state `(L⁻¹, R)`.
    pub fn new(group: &'g FiniteGroup, left: &ElementSubset, right: &ElementSubset) -> Self {
        let n = group.order();
        let left_letters: Vec<usize> = left.inverse(group).members().to_vec();
        let right_letters: Vec<usize> = right.members().to_vec();
        let mut l1 = vec![NO_PARENT; n];
        for (i, &a) in left_letters.iter().enumerate() {
            l1[a] = (i as u32, u32::MAX - 1);
        }
        let mut r1 = vec![NO_PARENT; n];
        for (i, &b) in right_letters.iter().enumerate() {
            r1[b] = (i as u32, u32::MAX - 1);
        }
        let mut history = HashSet::new();
        history.insert((bits(&l1), bits(&r1)));
        WordLengthState {
            group,
            left_letters,
            right_letters,
            left_levels: vec![l1],
            right_levels: vec![r1],
            history,
        }
    }

    pub fn length(&self) -> usize {
        self.left_levels.len()
    }

    fn level_set(level: &[(u32, u32)]) -> ElementSubset {
        let mask: Vec<bool> = level.iter().map(|p| *p != NO_PARENT).collect();
        ElementSubset::from_mask(&mask)
    }

    /// Elements that are length-`n` words in `L⁻¹`.
    pub fn left_words(&self, n: usize) -> ElementSubset {
        Self::level_set(&self.left_levels[n - 1])
    }

    /// Elements that are length-`n` words in `R`.
    pub fn right_words(&self, n: usize) -> ElementSubset {
        Self::level_set(&self.right_levels[n - 1])
    }

    /// Moves to length `n+1`. Returns `false` when the new state pair has
    /// been seen before, after which the trajectory only repeats.
    pub fn advance(&mut self) -> bool {
        let g = self.group;
        let n = g.order();
        let last_l = self.left_levels.last().expect("nonempty levels");
        let mut next_l = vec![NO_PARENT; n];
        for (w, p) in last_l.iter().enumerate() {
            if *p == NO_PARENT {
                continue;
            }
            for (i, &a) in self.left_letters.iter().enumerate() {
                let x = g.mul(a, w);
                if next_l[x] == NO_PARENT {
                    next_l[x] = (i as u32, w as u32);
                }
            }
        }
        let last_r = self.right_levels.last().expect("nonempty levels");
        let mut next_r = vec![NO_PARENT; n];
        for (w, p) in last_r.iter().enumerate() {
            if *p == NO_PARENT {
                continue;
            }
            for (i, &b) in self.right_letters.iter().enumerate() {
                let x = g.mul(w, b);
                if next_r[x] == NO_PARENT {
                    next_r[x] = (i as u32, w as u32);
                }
            }
        }
        let fresh = self.history.insert((bits(&next_l), bits(&next_r)));
        self.left_levels.push(next_l);
        self.right_levels.push(next_r);
        fresh
    }

    /// Letters `a_n, …, a_1` of `L⁻¹` with `x = a_n ⋯ a_1`.
    pub fn left_word(&self, x: usize, n: usize) -> Vec<usize> {
        let mut letters = Vec::with_capacity(n);
        let mut cur = x;
        for m in (0..n).rev() {
            let (i, prev) = self.left_levels[m][cur];
            assert!(
                (i, prev) != NO_PARENT,
                "element is not a word of this length"
            );
            letters.push(self.left_letters[i as usize]);
            cur = prev as usize;
        }
        letters
    }

    /// Letters `b_1, …, b_n` of `R` with `x = b_1 ⋯ b_n`.
    pub fn right_word(&self, x: usize, n: usize) -> Vec<usize> {
        let mut letters = Vec::with_capacity(n);
        let mut cur = x;
        for m in (0..n).rev() {
            let (i, prev) = self.right_levels[m][cur];
            assert!(
                (i, prev) != NO_PARENT,
                "element is not a word of this length"
            );
            letters.push(self.right_letters[i as usize]);
            cur = prev as usize;
        }
        letters.reverse();
        letters
    }

    /// First `x` among length-`a` left words whose inverse is a length-`b` right word.
    fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let g = self.group;
        let right = &self.right_levels[b - 1];
        self.left_levels[a - 1]
            .iter()
            .enumerate()
            .find(|(x, p)| **p != NO_PARENT && right[g.inv(*x)] != NO_PARENT)
            .map(|(x, _)| x)
    }
}

/// Words witnessing `e = w_{L⁻¹,i+1} w_{R,i} = w_{L⁻¹,j} w_{R,j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffsetWitness {
    pub i: usize,
    pub j: usize,
    pub i_left: Vec<usize>,
    pub i_right: Vec<usize>,
    pub j_left: Vec<usize>,
    pub j_right: Vec<usize>,
}

fn render_word(group: &FiniteGroup, letters: &[usize]) -> String {
    let names: Vec<&str> = letters.iter().map(|&x| group.label(x)).collect();
    names.join(".")
}

fn product(group: &FiniteGroup, letters: &[usize]) -> usize {
    letters
        .iter()
        .fold(group.identity(), |acc, &x| group.mul(acc, x))
}

impl OffsetWitness {
    /// Renders one offset as `left word | right word`.
    pub fn render_i(&self, group: &FiniteGroup) -> String {
        format!(
            "{} | {}",
            render_word(group, &self.i_left),
            render_word(group, &self.i_right)
        )
    }

    pub fn render_j(&self, group: &FiniteGroup) -> String {
        format!(
            "{} | {}",
            render_word(group, &self.j_left),
            render_word(group, &self.j_right)
        )
    }

    /// Whether both word pairs multiply to the identity with the stated lengths.
    pub fn is_valid(&self, group: &FiniteGroup) -> bool {
        let e = group.identity();
        let prod = |l: &[usize], r: &[usize]| group.mul(product(group, l), product(group, r));
        self.i >= 1
            && self.j >= 1
            && self.i_left.len() == self.i + 1
            && self.i_right.len() == self.i
            && self.j_left.len() == self.j
            && self.j_right.len() == self.j + 1
            && prod(&self.i_left, &self.i_right) == e
            && prod(&self.j_left, &self.j_right) == e
    }
}

/// Searches increasing lengths for the smallest offsets `i` and `j`,
/// halting when both are found or when the state pair repeats.
pub fn identity_offset_witness(
    group: &FiniteGroup,
    left: &ElementSubset,
    right: &ElementSubset,
) -> Option<OffsetWitness> {
    let mut st = WordLengthState::new(group, left, right);
    let mut found_i: Option<(usize, usize)> = None;
    let mut found_j: Option<(usize, usize)> = None;
    loop {
        let n = st.length();
        let fresh = st.advance();
        if found_i.is_none() {
            found_i = st.meet(n + 1, n).map(|x| (n, x));
        }
        if found_j.is_none() {
            found_j = st.meet(n, n + 1).map(|x| (n, x));
        }
        if let (Some((i, xi)), Some((j, xj))) = (found_i, found_j) {
            return Some(OffsetWitness {
                i,
                j,
                i_left: st.left_word(xi, i + 1),
                i_right: st.right_word(group.inv(xi), i),
                j_left: st.left_word(xj, j),
                j_right: st.right_word(group.inv(xj), j + 1),
            });
        }
        if !fresh {
            return None;
        }
    }
}

/// The strong-connectivity criterion next to the SCC ground truth.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheck {
    pub factorization: bool,
    pub witness: Option<OffsetWitness>,
    pub predicted: bool,
    pub oracle: bool,
}

impl TheoremCheck {
    pub fn record(&self, group: &FiniteGroup) -> CheckRecord {
        let witness = match &self.witness {
            Some(w) => format!(
                "i={}: {}; j={}: {}",
                w.i,
                w.render_i(group),
                w.j,
                w.render_j(group)
            ),
            None => "no identity offset".to_string(),
        };
        CheckRecord::compare(
            "strong_connectivity_criterion",
            self.predicted,
            self.oracle,
            Some(format!("factorization={}; {witness}", self.factorization)),
        )
    }
}

/// Factorization plus both identity offsets, compared with Tarjan.
pub fn theorem_strong_connectivity(inst: &Instance<'_>) -> Result<TheoremCheck> {
    let factorization = factorization_check(inst.group, &inst.left, &inst.right)?;
    let witness = identity_offset_witness(inst.group, &inst.left, &inst.right);
    if let Some(w) = &witness {
        if !w.is_valid(inst.group) {
            return Err(Error::Inconsistency(
                "identity offset words do not multiply to e".into(),
            ));
        }
    }
    Ok(TheoremCheck {
        factorization,
        predicted: factorization && witness.is_some(),
        oracle: is_strongly_connected(&inst.digraph),
        witness,
    })
}
