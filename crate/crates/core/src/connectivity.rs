//! Strong and weak components, and isomorphism of small induced subdigraphs.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::digraph::Adjacency;
use crate::error::{Error, Result};

/// Vertex limit for [`digraphs_isomorphic`].
pub const ISOMORPHISM_VERTEX_LIMIT: usize = 64;

/// A partition of the vertex set. Components are sorted internally and
/// numbered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    components: Vec<Vec<usize>>,
    #[serde(skip)]
    component_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from arbitrary per-vertex class labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut component_of = vec![0; labels.len()];
        // vertices are visited in increasing order, so first sight is the minimum
        for (v, &label) in labels.iter().enumerate() {
            let id = *renumber.entry(label).or_insert_with(|| {
                components.push(Vec::new());
                components.len() - 1
            });
            components[id].push(v);
            component_of[v] = id;
        }
        Partition {
            components,
            component_of,
        }
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, id: usize) -> &[usize] {
        &self.components[id]
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.component_of[a] == self.component_of[b]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// Whether every class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.components.iter().all(|c| {
            let id = coarser.component_of(c[0]);
            c.iter().all(|&v| coarser.component_of(v) == id)
        })
    }
}

/// Tarjan's algorithm, iterative so deep digraphs cannot overflow the stack.
/// Current colour with the sorted colours of out- and in-neighbours.
type ColourKey = (usize, Vec<usize>, Vec<usize>);

pub fn strong_components<D: Adjacency>(d: &D) -> Partition {
    const UNVISITED: usize = usize::MAX;
    let n = d.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut label = vec![0; n];
    let mut next_index = 0;
    let mut next_label = 0;
    // (vertex, position in its out-list)
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            let succ = d.out_neighbors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack holds the root");
                    on_stack[w] = false;
                    label[w] = next_label;
                    if w == v {
                        break;
                    }
                }
                next_label += 1;
            }
        }
    }
    Partition::from_labels(&label)
}

struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Components of the underlying undirected graph.
pub fn weak_components<D: Adjacency>(d: &D) -> Partition {
    let n = d.vertex_count();
    let mut dsu = Dsu::new(n);
    for v in 0..n {
        for &w in d.out_neighbors(v) {
            dsu.union(v, w);
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| dsu.find(v)).collect();
    Partition::from_labels(&labels)
}

/// Strong component id of `v`.
pub fn component_of<D: Adjacency>(d: &D, v: usize) -> usize {
    strong_components(d).component_of(v)
}

pub fn is_strongly_connected<D: Adjacency>(d: &D) -> bool {
    strong_components(d).len() == 1
}

pub fn is_weakly_connected<D: Adjacency>(d: &D) -> bool {
    weak_components(d).len() == 1
}

fn bfs<D: Adjacency>(d: &D, start: usize, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; d.vertex_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let next = if forward {
            d.out_neighbors(v)
        } else {
            d.in_neighbors(v)
        };
        for &w in next {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Vertices reachable from `start` along directed paths.
pub fn reachable_from<D: Adjacency>(d: &D, start: usize) -> Vec<bool> {
    bfs(d, start, true)
}

/// Breadth-first oracle for a strong partition. For each sampled source,
/// the vertices reachable in both directions must be exactly its class.
/// Sources are the minimum of each class, capped at `max_sources`, so
/// every vertex is also checked against the sampled classes.
pub fn spot_check_strong<D: Adjacency>(d: &D, p: &Partition, max_sources: usize) -> Result<()> {
    for comp in p.components().iter().take(max_sources) {
        let s = comp[0];
        let fwd = bfs(d, s, true);
        let back = bfs(d, s, false);
        for v in 0..d.vertex_count() {
            let mutual = fwd[v] && back[v];
            if mutual != p.same(s, v) {
                return Err(Error::Inconsistency(format!(
                    "strong partition disagrees with search at vertices {s} and {v}"
                )));
            }
        }
    }
    Ok(())
}

/// Strong and weak partitions together with isomorphism classes of the
/// strong components.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentAnalysis {
    pub strong: Partition,
    pub weak: Partition,
    pub strong_sizes: Vec<usize>,
    pub weak_sizes: Vec<usize>,
    /// `None` when some component exceeds the isomorphism guard.
    pub iso_classes: Option<Vec<Vec<usize>>>,
}

impl ComponentAnalysis {
    pub fn new<D: Adjacency>(d: &D) -> Result<Self> {
        let strong = strong_components(d);
        let weak = weak_components(d);
        spot_check_strong(d, &strong, 16)?;
        if !strong.refines(&weak) {
            return Err(Error::Inconsistency(
                "strong partition does not refine weak partition".into(),
            ));
        }
        let iso_classes = if strong
            .components()
            .iter()
            .all(|c| c.len() <= ISOMORPHISM_VERTEX_LIMIT)
        {
            Some(iso_classes(d, &strong)?)
        } else {
            None
        };
        Ok(ComponentAnalysis {
            strong_sizes: strong.sizes(),
            weak_sizes: weak.sizes(),
            strong,
            weak,
            iso_classes,
        })
    }
}

/// Groups components into isomorphism classes, each class listing
/// component ids in increasing order.
pub fn iso_classes<D: Adjacency>(d: &D, p: &Partition) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (id, comp) in p.components().iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if digraphs_isomorphic(d, p.component(class[0]), d, comp)? {
                class.push(id);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![id]);
        }
    }
    Ok(classes)
}

/// Induced subdigraph stored as bitmasks over local indices.
struct Local {
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Local {
    fn new<D: Adjacency>(d: &D, vertices: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let k = vertices.len();
        let mut out = vec![0u64; k];
        let mut inn = vec![0u64; k];
        for (i, &v) in vertices.iter().enumerate() {
            for w in d.out_neighbors(v) {
                if let Some(&j) = pos.get(w) {
                    out[i] |= 1 << j;
                    inn[j] |= 1 << i;
                }
            }
        }
        Local { out, inn }
    }

    fn len(&self) -> usize {
        self.out.len()
    }

    fn has_loop(&self, i: usize) -> bool {
        self.out[i] >> i & 1 == 1
    }

    fn undirected(&self, i: usize) -> u64 {
        self.out[i] | self.inn[i]
    }
}

/// Colour refinement run on both graphs at once so colours are comparable.
fn refine_colours(a: &Local, b: &Local) -> (Vec<usize>, Vec<usize>) {
    let graphs = [a, b];
    let mut colours: Vec<Vec<usize>> = graphs
        .iter()
        .map(|g| {
            (0..g.len())
                .map(|i| {
                    let sig = (
                        g.out[i].count_ones() as usize,
                        g.inn[i].count_ones() as usize,
                        g.has_loop(i) as usize,
                    );
                    sig.0 * 4096 + sig.1 * 2 + sig.2
                })
                .collect()
        })
        .collect();
    let mut count = usize::MAX;
    loop {
        let mut table: BTreeMap<ColourKey, usize> = BTreeMap::new();
        let keys: Vec<Vec<ColourKey>> = graphs
            .iter()
            .zip(&colours)
            .map(|(g, col)| {
                (0..g.len())
                    .map(|i| {
                        let gather = |mask: u64| {
                            let mut v: Vec<usize> = (0..g.len())
                                .filter(|&j| mask >> j & 1 == 1)
                                .map(|j| col[j])
                                .collect();
                            v.sort_unstable();
                            v
                        };
                        (col[i], gather(g.out[i]), gather(g.inn[i]))
                    })
                    .collect()
            })
            .collect();
        for key in keys.iter().flatten() {
            let next = table.len();
            table.entry(key.clone()).or_insert(next);
        }
        let next: Vec<Vec<usize>> = keys
            .iter()
            .map(|ks| ks.iter().map(|k| table[k]).collect())
            .collect();
        let done = table.len() == count;
        count = table.len();
        colours = next;
        if done {
            break;
        }
    }
    let b_col = colours.pop().unwrap_or_default();
    let a_col = colours.pop().unwrap_or_default();
    (a_col, b_col)
}

/// Whether the subdigraphs induced on `a_vertices` and `b_vertices` are
/// isomorphic. Both sides may be at most [`ISOMORPHISM_VERTEX_LIMIT`].
pub fn digraphs_isomorphic<DA: Adjacency, DB: Adjacency>(
    da: &DA,
    a_vertices: &[usize],
    db: &DB,
    b_vertices: &[usize],
) -> Result<bool> {
    for side in [a_vertices, b_vertices] {
        if side.len() > ISOMORPHISM_VERTEX_LIMIT {
            return Err(Error::Capability {
                what: format!("digraph isomorphism on {} vertices", side.len()),
                limit: ISOMORPHISM_VERTEX_LIMIT,
            });
        }
    }
    if a_vertices.len() != b_vertices.len() {
        return Ok(false);
    }
    if a_vertices.is_empty() {
        return Ok(true);
    }
    let a = Local::new(da, a_vertices);
    let b = Local::new(db, b_vertices);
    let (a_col, b_col) = refine_colours(&a, &b);
    let histogram = |col: &[usize]| {
        let mut v = col.to_vec();
        v.sort_unstable();
        v
    };
    if histogram(&a_col) != histogram(&b_col) {
        return Ok(false);
    }

    // visit order: breadth-first over the undirected structure, rarest colour first
    let k = a.len();
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &a_col {
        *freq.entry(c).or_insert(0) += 1;
    }
    let mut order = Vec::with_capacity(k);
    let mut seen = 0u64;
    while order.len() < k {
        let start = (0..k)
            .filter(|&i| seen >> i & 1 == 0)
            .min_by_key(|&i| (freq[&a_col[i]], i))
            .expect("unvisited vertex remains");
        seen |= 1 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in 0..k {
                if a.undirected(v) >> w & 1 == 1 && seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; k];
    let mut used = 0u64;
    Ok(extend_map(
        &a, &b, &a_col, &b_col, &order, 0, &mut map, &mut used,
    ))
}

#[allow(clippy::too_many_arguments)]
fn extend_map(
    a: &Local,
    b: &Local,
    a_col: &[usize],
    b_col: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    // prefer candidates adjacent to the image of an already mapped neighbour
    let anchor = order[..depth]
        .iter()
        .copied()
        .find(|&u| a.undirected(v) >> u & 1 == 1);
    let pool = match anchor {
        Some(u) => b.undirected(map[u]),
        None => u64::MAX >> (64 - b.len()),
    };
    for w in 0..b.len() {
        if pool >> w & 1 == 0 || *used >> w & 1 == 1 || b_col[w] != a_col[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let mu = map[u];
            (a.out[v] >> u & 1) == (b.out[w] >> mu & 1)
                && (a.inn[v] >> u & 1) == (b.inn[w] >> mu & 1)
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        *used |= 1 << w;
        if extend_map(a, b, a_col, b_col, order, depth + 1, map, used) {
            return true;
        }
        *used &= !(1 << w);
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{build_cayley, build_generalized, build_two_sided};
    use crate::group::{make_alternating, make_cyclic, make_dihedral, parse_subset};

    /// Plain adjacency lists for hand-made test digraphs.
    struct Lists {
        out: Vec<Vec<usize>>,
        inn: Vec<Vec<usize>>,
    }

    impl Lists {
        fn new(n: usize, arcs: &[(usize, usize)]) -> Self {
            let mut out = vec![Vec::new(); n];
            let mut inn = vec![Vec::new(); n];
            for &(a, b) in arcs {
                out[a].push(b);
                inn[b].push(a);
            }
            for l in out.iter_mut().chain(inn.iter_mut()) {
                l.sort_unstable();
                l.dedup();
            }
            Lists { out, inn }
        }
    }

    impl Adjacency for Lists {
        fn vertex_count(&self) -> usize {
            self.out.len()
        }
        fn out_neighbors(&self, v: usize) -> &[usize] {
            &self.out[v]
        }
        fn in_neighbors(&self, v: usize) -> &[usize] {
            &self.inn[v]
        }
    }

    #[test]
    fn a4_instance_is_strongly_connected() {
        let a4 = make_alternating(4).unwrap();
        let d = build_two_sided(
            &a4,
            &parse_subset(&a4, "e, (243)").unwrap(),
            &parse_subset(&a4, "(234), (12)(34), (132), (14)(23)").unwrap(),
        );
        assert!(is_strongly_connected(&d));
        assert_eq!(strong_components(&d).sizes(), vec![12]);
    }

    #[test]
    fn loops_only_gives_singletons() {
        for n in [2, 3] {
            let c = make_cyclic(n).unwrap();
            let d = build_generalized(&c, &[(0, 0)]).unwrap();
            let p = strong_components(&d);
            assert_eq!(p.len(), n);
            assert!(!is_strongly_connected(&d));
            assert_eq!(weak_components(&d), p);
        }
    }

    #[test]
    fn empty_arc_digraph() {
        let d = Lists::new(4, &[]);
        assert_eq!(weak_components(&d).sizes(), vec![1, 1, 1, 1]);
        assert_eq!(strong_components(&d).sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn weak_differs_from_strong_on_a_path() {
        let d = Lists::new(3, &[(0, 1), (1, 2), (2, 1)]);
        let s = strong_components(&d);
        let w = weak_components(&d);
        assert_eq!(s.components(), &[vec![0], vec![1, 2]]);
        assert_eq!(w.len(), 1);
        assert!(s.refines(&w));
        assert!(!w.refines(&s));
        spot_check_strong(&d, &s, 8).unwrap();
        let bad = Partition::from_labels(&[0, 0, 0]);
        assert!(spot_check_strong(&d, &bad, 8).is_err());
    }

    #[test]
    fn dihedral_examples() {
        let d10 = make_dihedral(10).unwrap();
        let d = build_two_sided(
            &d10,
            &parse_subset(&d10, "s").unwrap(),
            &parse_subset(&d10, "t, s^3").unwrap(),
        );
        let a = ComponentAnalysis::new(&d).unwrap();
        assert_eq!(a.strong_sizes, vec![10, 10]);
        assert_eq!(a.strong, a.weak);
        assert_eq!(a.iso_classes, Some(vec![vec![0, 1]]));

        let d6 = make_dihedral(6).unwrap();
        let d = build_two_sided(
            &d6,
            &parse_subset(&d6, "t, ts^5").unwrap(),
            &parse_subset(&d6, "ts, ts^2").unwrap(),
        );
        let a = ComponentAnalysis::new(&d).unwrap();
        assert_eq!(a.weak_sizes, vec![6, 6]);
        assert_eq!(a.iso_classes, Some(vec![vec![0], vec![1]]));
        let (c0, c1) = (a.strong.component(0), a.strong.component(1));
        assert!(!digraphs_isomorphic(&d, c0, &d, c1).unwrap());
        assert!(!digraphs_isomorphic(&d, c1, &d, c0).unwrap());
        assert!(digraphs_isomorphic(&d, c0, &d, c0).unwrap());
    }

    #[test]
    fn cayley_and_two_sided_c7_isomorphic() {
        let c7 = make_cyclic(7).unwrap();
        let two = build_two_sided(
            &c7,
            &parse_subset(&c7, "g^2, g^3").unwrap(),
            &parse_subset(&c7, "e, g").unwrap(),
        );
        let cay = build_cayley(&c7, &parse_subset(&c7, "g^4, g^5, g^6").unwrap());
        let all: Vec<usize> = (0..7).collect();
        assert!(digraphs_isomorphic(&two, &all, &cay, &all).unwrap());
        let other = build_cayley(&c7, &parse_subset(&c7, "g, g^2, g^4").unwrap());
        let three = build_cayley(&c7, &parse_subset(&c7, "g, g^2, g^3").unwrap());
        assert!(!digraphs_isomorphic(&other, &all, &three, &all).unwrap());
    }

    #[test]
    fn direction_matters() {
        // a directed 3-cycle and its reverse are isomorphic; a transitive
        // triangle is not isomorphic to a cycle
        let cyc = Lists::new(3, &[(0, 1), (1, 2), (2, 0)]);
        let rev = Lists::new(3, &[(1, 0), (2, 1), (0, 2)]);
        let tri = Lists::new(3, &[(0, 1), (1, 2), (0, 2)]);
        let all = [0, 1, 2];
        assert!(digraphs_isomorphic(&cyc, &all, &rev, &all).unwrap());
        assert!(!digraphs_isomorphic(&cyc, &all, &tri, &all).unwrap());
        let looped = Lists::new(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]);
        let looped2 = Lists::new(3, &[(0, 1), (1, 2), (2, 0), (2, 2)]);
        assert!(digraphs_isomorphic(&looped, &all, &looped2, &all).unwrap());
        assert!(!digraphs_isomorphic(&looped, &all, &cyc, &all).unwrap());
    }

    #[test]
    fn size_guard() {
        let c = make_cyclic(65).unwrap();
        let d = build_cayley(&c, &parse_subset(&c, "g").unwrap());
        let all: Vec<usize> = (0..65).collect();
        assert!(matches!(
            digraphs_isomorphic(&d, &all, &d, &all),
            Err(Error::Capability { .. })
        ));
        let a = ComponentAnalysis::new(&d).unwrap();
        assert!(a.iso_classes.is_none());
    }

    #[test]
    fn a5_instance_has_seven_components() {
        let a5 = make_alternating(5).unwrap();
        let d = build_two_sided(
            &a5,
            &parse_subset(&a5, "(235)").unwrap(),
            &parse_subset(&a5, "(243), (254)").unwrap(),
        );
        let p = strong_components(&d);
        assert_eq!(p.len(), 7);
        assert_eq!(component_of(&d, 0), 0);
        spot_check_strong(&d, &p, 7).unwrap();
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let n = 200_000;
        let arcs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let d = Lists::new(n, &arcs);
        assert_eq!(strong_components(&d).len(), n);
        assert!(is_weakly_connected(&d));
    }
}
