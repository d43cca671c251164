//! Two-sided, generalized and Cayley digraphs on the elements of a group.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ElementSubset, FiniteGroup};

/// Read access to sorted adjacency lists.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn out_neighbors(&self, v: usize) -> &[usize];
    fn in_neighbors(&self, v: usize) -> &[usize];

    fn arc_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.out_neighbors(v).len())
            .sum()
    }

    fn has_arc(&self, from: usize, to: usize) -> bool {
        self.out_neighbors(from).binary_search(&to).is_ok()
    }
}

/// How the arcs of a digraph were generated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArcSource {
    /// `g → l⁻¹ g r` for `l ∈ L`, `r ∈ R`.
    TwoSided { left: Vec<usize>, right: Vec<usize> },
    /// `g → u_l⁻¹ g u_r` for `(u_l, u_r) ∈ U`.
    PairSet { pairs: Vec<(usize, usize)> },
    /// `g → g s` for `s ∈ S`.
    Cayley { set: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct TwoSidedDigraph<'g> {
    group: &'g FiniteGroup,
    source: ArcSource,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Adjacency for TwoSidedDigraph<'_> {
    fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }
}

/// JSON form of a digraph: arcs as index pairs, sorted.
#[derive(Debug, Clone, Serialize)]
pub struct DigraphJson {
    pub group_spec: String,
    pub source: ArcSource,
    pub arcs: Vec<[usize; 2]>,
}

impl<'g> TwoSidedDigraph<'g> {
    fn from_successors(
        group: &'g FiniteGroup,
        source: ArcSource,
        successors: impl Fn(usize, &mut Vec<usize>),
    ) -> Self {
        let n = group.order();
        let mut out_adj = Vec::with_capacity(n);
        let mut in_adj = vec![Vec::new(); n];
        let mut buf = Vec::new();
        for g in 0..n {
            buf.clear();
            successors(g, &mut buf);
            buf.sort_unstable();
            buf.dedup();
            for &h in &buf {
                in_adj[h].push(g);
            }
            out_adj.push(buf.clone());
        }
        // sources were visited in increasing order, so in_adj is sorted
        TwoSidedDigraph {
            group,
            source,
            out_adj,
            in_adj,
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn source(&self) -> &ArcSource {
        &self.source
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(g, hs)| hs.iter().map(move |&h| (g, h)))
    }

    /// True when every arc has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.out_adj == self.in_adj
    }

    pub fn to_json(&self) -> DigraphJson {
        DigraphJson {
            group_spec: self.group.name().to_string(),
            source: self.source.clone(),
            arcs: self.arcs().map(|(g, h)| [g, h]).collect(),
        }
    }

    /// Human-readable name such as `2S(C7; {g^2, g^3}, {e, g})`.
    pub fn title(&self) -> String {
        let g = self.group;
        let set = |xs: &[usize]| {
            let names: Vec<&str> = xs.iter().map(|&x| g.label(x)).collect();
            format!("{{{}}}", names.join(", "))
        };
        match &self.source {
            ArcSource::TwoSided { left, right } => {
                format!("2S({}; {}, {})", g.name(), set(left), set(right))
            }
            ArcSource::PairSet { pairs } => {
                let names: Vec<String> = pairs
                    .iter()
                    .map(|&(a, b)| format!("({}, {})", g.label(a), g.label(b)))
                    .collect();
                format!("2S({}; {{{}}})", g.name(), names.join(", "))
            }
            ArcSource::Cayley { set: s } => format!("Cay({}, {})", g.name(), set(s)),
        }
    }

    /// Deterministic Graphviz text. Reciprocal arc pairs and loops are
    /// written once with `dir=none`; other arcs are directed.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(&self.title()));
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", escape(self.group.label(v)));
        }
        for (g, h) in self.arcs() {
            if self.has_arc(h, g) {
                if g <= h {
                    let _ = writeln!(out, "  v{g} -> v{h} [dir=none];");
                }
            } else {
                let _ = writeln!(out, "  v{g} -> v{h};");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// `2S(G; L, R)`: an arc `g → l⁻¹ g r` for each `l ∈ L`, `r ∈ R`.
pub fn build_two_sided<'g>(
    group: &'g FiniteGroup,
    left: &ElementSubset,
    right: &ElementSubset,
) -> TwoSidedDigraph<'g> {
    let left_inv: Vec<usize> = left.iter().map(|l| group.inv(l)).collect();
    TwoSidedDigraph::from_successors(
        group,
        ArcSource::TwoSided {
            left: left.members().to_vec(),
            right: right.members().to_vec(),
        },
        |g, buf| {
            for &li in &left_inv {
                let lg = group.mul(li, g);
                buf.extend(right.iter().map(|r| group.mul(lg, r)));
            }
        },
    )
}

/// `2S(G; U)` for a set `U ⊆ G × G` of index pairs.
pub fn build_generalized<'g>(
    group: &'g FiniteGroup,
    pairs: &[(usize, usize)],
) -> Result<TwoSidedDigraph<'g>> {
    if pairs.is_empty() {
        return Err(Error::InvalidParameter(
            "pair set U must be nonempty".into(),
        ));
    }
    let n = group.order();
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::InvalidParameter(format!(
            "pair ({a}, {b}) out of range for {}",
            group.name()
        )));
    }
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let source = ArcSource::PairSet {
        pairs: sorted.clone(),
    };
    Ok(TwoSidedDigraph::from_successors(group, source, |g, buf| {
        buf.extend(
            sorted
                .iter()
                .map(|&(ul, ur)| group.mul(group.mul(group.inv(ul), g), ur)),
        );
    }))
}

/// `Cay(G, S)` with arcs `g → g s`.
pub fn build_cayley<'g>(group: &'g FiniteGroup, set: &ElementSubset) -> TwoSidedDigraph<'g> {
    TwoSidedDigraph::from_successors(
        group,
        ArcSource::Cayley {
            set: set.members().to_vec(),
        },
        |g, buf| buf.extend(set.iter().map(|s| group.mul(g, s))),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValencyProfile {
    pub out_valencies: Vec<usize>,
    pub in_valencies: Vec<usize>,
    pub out_constant: Option<usize>,
    pub in_constant: Option<usize>,
    pub regular: bool,
}

impl ValencyProfile {
    /// Distinct in-valencies, ascending.
    pub fn in_valency_values(&self) -> Vec<usize> {
        distinct(&self.in_valencies)
    }

    pub fn out_valency_values(&self) -> Vec<usize> {
        distinct(&self.out_valencies)
    }
}

fn distinct(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn constant(xs: &[usize]) -> Option<usize> {
    let first = *xs.first()?;
    xs.iter().all(|&x| x == first).then_some(first)
}

pub fn valency_profile<D: Adjacency>(d: &D) -> ValencyProfile {
    let n = d.vertex_count();
    let out_valencies: Vec<usize> = (0..n).map(|v| d.out_neighbors(v).len()).collect();
    let in_valencies: Vec<usize> = (0..n).map(|v| d.in_neighbors(v).len()).collect();
    let out_constant = constant(&out_valencies);
    let in_constant = constant(&in_valencies);
    let regular = out_constant.is_some() && out_constant == in_constant;
    ValencyProfile {
        out_valencies,
        in_valencies,
        out_constant,
        in_constant,
        regular,
    }
}

fn product_set(group: &FiniteGroup, left: &[usize], g: usize, right: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; group.order()];
    for &a in left {
        let ag = group.mul(a, g);
        for &b in right {
            mask[group.mul(ag, b)] = true;
        }
    }
    mask
}

/// Whether `L⁻¹ g R = L g R⁻¹` for every `g`.
pub fn is_undirected(group: &FiniteGroup, left: &ElementSubset, right: &ElementSubset) -> bool {
    let l = left.members();
    let r = right.members();
    let l_inv = left.inverse(group);
    let r_inv = right.inverse(group);
    group.elements().all(|g| {
        product_set(group, l_inv.members(), g, r) == product_set(group, l, g, r_inv.members())
    })
}

/// Multiset `L⁻¹ g R`: element ↦ number of pairs `(l, r)` producing it.
pub fn arc_multiset(
    group: &FiniteGroup,
    left: &ElementSubset,
    right: &ElementSubset,
    g: usize,
) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for l in left.iter() {
        let lg = group.mul(group.inv(l), g);
        for r in right.iter() {
            *counts.entry(group.mul(lg, r)).or_insert(0) += 1;
        }
    }
    counts
}

/// `g⁻¹ (L L⁻¹) g ∩ R R⁻¹`. When this is `{e}` the out-valency at `g` is `|L|·|R|`.
pub fn valency_obstruction(
    group: &FiniteGroup,
    left: &ElementSubset,
    right: &ElementSubset,
    g: usize,
) -> ElementSubset {
    let n = group.order();
    let mut conj_ll = vec![false; n];
    for a in left.iter() {
        for b in left.iter() {
            conj_ll[group.conjugate(group.mul(a, group.inv(b)), g)] = true;
        }
    }
    let mut both = vec![false; n];
    for a in right.iter() {
        for b in right.iter() {
            let x = group.mul(a, group.inv(b));
            both[x] = conj_ll[x];
        }
    }
    ElementSubset::from_mask(&both)
}
