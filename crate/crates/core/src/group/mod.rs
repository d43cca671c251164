//! Finite groups stored as complete multiplication tables.
//!
//! Every element is addressed by its index in `0..order`. Labels are kept
//! for display and parsing only; all algebra goes through the table.

mod construct;
mod iso;
mod parse;
pub mod perm;
mod subgroup;

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use construct::{
    direct_product, make_alternating, make_cyclic, make_dihedral, make_symmetric, quotient,
    semidirect_product, Action,
};
pub use iso::{groups_isomorphic, ISOMORPHISM_ORDER_LIMIT};
pub use parse::{parse_group_spec, parse_semidirect_file, parse_subset};
pub use subgroup::{closure, double_cosets, normalizer, DoubleCosetDecomposition};

/// Largest group order a table may have.
pub const MAX_ORDER: usize = 5040;

/// Orders up to this bound get exhaustive associativity checks.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 64;

/// How a group was built. Parsing of element names depends on it.
#[derive(Debug, Clone)]
pub enum Structure {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Symmetric {
        degree: usize,
    },
    Alternating {
        degree: usize,
    },
    Direct(Box<FiniteGroup>, Box<FiniteGroup>),
    /// `normal ⋊ complement`; element `(h, k)` has index `h * |K| + k`.
    Semidirect {
        normal: Box<FiniteGroup>,
        complement: Box<FiniteGroup>,
    },
    Quotient,
    Table,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    table: Vec<u16>,
    identity: usize,
    inverses: Vec<usize>,
    structure: Structure,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from an explicit table and checks every group axiom.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: &[Vec<usize>],
    ) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!(
                "table must be {n}x{n} to match the labels"
            )));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        let flat = table.iter().flatten().map(|&x| x as u16).collect();
        let group = Self::assemble(name.into(), labels, flat, Structure::Table)?;
        group.validate()?;
        Ok(group)
    }

    /// Finds identity and inverses; full axiom checks live in [`validate`](Self::validate).
    pub(crate) fn assemble(
        name: String,
        labels: Vec<String>,
        table: Vec<u16>,
        structure: Structure,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable(
                "a group needs at least one element".into(),
            ));
        }
        if n > MAX_ORDER {
            return Err(Error::Capability {
                what: format!("group order {n}"),
                limit: MAX_ORDER,
            });
        }
        debug_assert_eq!(table.len(), n * n);
        let mut label_index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if label_index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidTable(format!("duplicate label `{label}`")));
            }
        }
        let at = |i: usize, j: usize| table[i * n + j] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| at(e, i) == i && at(i, e) == i))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            let inv = (0..n)
                .find(|&j| at(i, j) == identity && at(j, i) == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element `{label}` has no inverse")))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup {
            name,
            labels,
            label_index,
            table,
            identity,
            inverses,
            structure,
        })
    }

    /// Checks the Latin-square, identity, inverse and associativity laws.
    ///
    /// Associativity is exhaustive up to [`EXHAUSTIVE_CHECK_LIMIT`] elements
    /// and sampled with `10 * order^2` fixed-seed triples above it.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = self.mul(i, j);
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!("row {i} repeats an entry")));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = self.mul(j, i);
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!("column {i} repeats an entry")));
                }
            }
        }
        let e = self.identity;
        for i in 0..n {
            if self.mul(e, i) != i || self.mul(i, e) != i {
                return Err(Error::InvalidTable("identity law fails".into()));
            }
            let v = self.inverses[i];
            if self.mul(i, v) != e || self.mul(v, i) != e {
                return Err(Error::InvalidTable("inverse law fails".into()));
            }
        }
        let assoc = |i: usize, j: usize, k: usize| {
            self.mul(self.mul(i, j), k) == self.mul(i, self.mul(j, k))
        };
        if n <= EXHAUSTIVE_CHECK_LIMIT {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if !assoc(i, j, k) {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({i}, {j}, {k})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d0f7_ab1e);
            for _ in 0..10 * n * n {
                let (i, j, k) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(i, j, k) {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails at ({i}, {j}, {k})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    /// `a^k` for any integer `k`; negative powers go through the inverse.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let ord = self.element_order(a) as u64;
        let mut exp = k.unsigned_abs() % ord;
        let mut acc = self.identity;
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            exp >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        orders.sort_unstable();
        orders
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Row-major copy of the table with `usize` entries.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|i| (0..self.order()).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    /// `g^-1 x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i + 1..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Retraction onto the complement of a semidirect product, if any.
    pub fn retraction(&self) -> Option<Retraction<'_>> {
        match &self.structure {
            Structure::Semidirect { normal, complement } => Some(Retraction {
                group: self,
                normal,
                complement,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

/// The retraction `(h, k) ↦ k` of `H ⋊ K` onto `K`.
#[derive(Debug, Clone, Copy)]
pub struct Retraction<'g> {
    group: &'g FiniteGroup,
    normal: &'g FiniteGroup,
    complement: &'g FiniteGroup,
}

impl<'g> Retraction<'g> {
    pub fn complement(&self) -> &'g FiniteGroup {
        self.complement
    }

    pub fn normal(&self) -> &'g FiniteGroup {
        self.normal
    }

    /// Image in the standalone complement group `K`.
    pub fn project(&self, g: usize) -> usize {
        g % self.complement.order()
    }

    /// Element `(e_H, k)` of the big group.
    pub fn embed_complement(&self, k: usize) -> usize {
        self.normal.identity() * self.complement.order() + k
    }

    /// `ker φ`, the embedded copy of `H`.
    pub fn kernel(&self) -> ElementSubset {
        let m = self.complement.order();
        let e = self.complement.identity();
        ElementSubset::from_sorted((0..self.normal.order()).map(|h| h * m + e).collect())
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }
}

/// A nonempty set of element indices, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ElementSubset {
    members: Vec<usize>,
}

impl ElementSubset {
    pub fn new(group: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = members.iter().find(|&&m| m >= group.order()) {
            return Err(Error::InvalidParameter(format!(
                "element index {bad} out of range for {}",
                group.name()
            )));
        }
        Ok(ElementSubset { members })
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        ElementSubset { members }
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        Self::from_sorted(
            mask.iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        )
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_sorted(group.elements().collect())
    }

    pub fn singleton(group: &FiniteGroup, g: usize) -> Result<Self> {
        Self::new(group, [g])
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn mask(&self, order: usize) -> Vec<bool> {
        let mut mask = vec![false; order];
        for &m in &self.members {
            mask[m] = true;
        }
        mask
    }

    /// `S^-1`
    pub fn inverse(&self, group: &FiniteGroup) -> Self {
        let mut members: Vec<usize> = self.iter().map(|s| group.inv(s)).collect();
        members.sort_unstable();
        Self::from_sorted(members)
    }

    pub fn is_subgroup(&self, group: &FiniteGroup) -> bool {
        let mask = self.mask(group.order());
        mask[group.identity()]
            && self.iter().all(|a| mask[group.inv(a)])
            && self
                .iter()
                .all(|a| self.iter().all(|b| mask[group.mul(a, b)]))
    }

    pub fn intersects(&self, other: &ElementSubset) -> bool {
        self.iter().any(|x| other.contains(x))
    }

    pub fn is_subset_of(&self, other: &ElementSubset) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn display(&self, group: &FiniteGroup) -> String {
        let names: Vec<&str> = self.iter().map(|g| group.label(g)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_table_accepts_klein_four() {
        let labels = ["e", "a", "b", "c"].map(String::from).to_vec();
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let g = FiniteGroup::from_table("V4", labels, &table).unwrap();
        assert_eq!(g.identity(), 0);
        assert!((1..4).all(|a| g.element_order(a) == 2));
    }

    #[test]
    fn from_table_rejects_non_latin_rows() {
        let labels = ["e", "a"].map(String::from).to_vec();
        let err = FiniteGroup::from_table("bad", labels, &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidTable(_)));
    }

    #[test]
    fn from_table_rejects_non_associative_loop() {
        // A Latin square with identity 0 and inverses, but not associative.
        let labels = ["e", "a", "b", "c", "d"].map(String::from).to_vec();
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", labels, &table).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn duplicate_labels_rejected() {
        let labels = ["e", "e"].map(String::from).to_vec();
        let err = FiniteGroup::from_table("dup", labels, &[vec![0, 1], vec![1, 0]]).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn empty_subset_rejected() {
        let g = make_cyclic(3).unwrap();
        assert_eq!(ElementSubset::new(&g, []), Err(Error::EmptySubset));
        assert!(ElementSubset::new(&g, [3]).is_err());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let g = make_cyclic(7).unwrap();
        assert_eq!(g.pow(1, -1), 6);
        assert_eq!(g.pow(2, 3), 6);
        assert_eq!(g.pow(3, 0), 0);
        assert_eq!(g.pow(1, -15), 6);
    }
}
