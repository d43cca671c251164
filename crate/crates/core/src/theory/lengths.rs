use std::collections::BTreeSet;

use serde::Serialize;

use super::{factorization_check, CheckRecord, Instance, VerificationReport};
use crate::connectivity::{digraphs_isomorphic, Partition};
use crate::error::{Error, Result};
use crate::group::{closure, double_cosets, normalizer, ElementSubset, FiniteGroup};

/// Connection length inside one double coset `⟨L⟩ s ⟨R⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetLength {
    pub representative: usize,
    pub coset_size: usize,
    pub k_s: usize,
    /// Strong components meeting the coset, by id.
    pub component_ids: Vec<usize>,
    pub component_sizes: Vec<usize>,
}

impl CosetLength {
    /// `k_s` against the observed split of the coset.
    pub fn records(&self, group: &FiniteGroup) -> VerificationReport {
        let rep = group.label(self.representative);
        let mut r = VerificationReport::new();
        r.push(CheckRecord::compare(
            format!("coset_components[{rep}]"),
            self.k_s,
            self.component_ids.len(),
            None,
        ));
        r.push(CheckRecord::compare(
            format!("coset_equal_sizes[{rep}]"),
            vec![self.coset_size / self.k_s; self.k_s],
            &self.component_sizes,
            None,
        ));
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectionLengthReport {
    /// Always finite here: `k ≤ ord(l)` because `l^{ord(l)} = e`.
    pub k: usize,
    pub witness_generator: usize,
    pub per_coset: Vec<CosetLength>,
    pub predicted_components: usize,
}

/// Least `n ≥ 1` with `x^n · s` in the class of `s`. Some `n ≤ ord(x)` works.
fn power_length(group: &FiniteGroup, p: &Partition, x: usize, s: usize, on_right: bool) -> usize {
    let mut cur = s;
    for n in 1.. {
        cur = if on_right {
            group.mul(cur, x)
        } else {
            group.mul(x, cur)
        };
        if p.same(s, cur) {
            return n;
        }
    }
    unreachable!("powers of a finite-order element return to s")
}

/// Lengths from every generator of `L`, `L⁻¹`, `R` and `R⁻¹` at `s`, with
/// `L` acting on the left and `R` on the right.
fn all_generator_lengths(
    group: &FiniteGroup,
    p: &Partition,
    left: &ElementSubset,
    right: &ElementSubset,
    s: usize,
) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for l in left.iter() {
        out.push((
            format!("l={}", group.label(l)),
            power_length(group, p, l, s, false),
        ));
        let li = group.inv(l);
        out.push((
            format!("l^-1={}", group.label(li)),
            power_length(group, p, li, s, false),
        ));
    }
    for r in right.iter() {
        out.push((
            format!("r={}", group.label(r)),
            power_length(group, p, r, s, true),
        ));
        let ri = group.inv(r);
        out.push((
            format!("r^-1={}", group.label(ri)),
            power_length(group, p, ri, s, true),
        ));
    }
    out
}

fn require_independent(
    lengths: &[(String, usize)],
    expected: usize,
    context: impl Fn() -> String,
) -> Result<()> {
    if let Some((name, k)) = lengths.iter().find(|(_, k)| *k != expected) {
        return Err(Error::Inconsistency(format!(
            "connection length depends on generator at {}: {name} gives {k}, expected {expected}",
            context()
        )));
    }
    Ok(())
}

/// Global minimum connection length `k`. Requires `G = ⟨L⟩⟨R⟩`.
pub fn min_connection_length(inst: &Instance<'_>) -> Result<ConnectionLengthReport> {
    let g = inst.group;
    if !factorization_check(g, &inst.left, &inst.right)? {
        return Err(Error::HypothesisNotMet(
            "G is not <L><R>; use the per-coset connection lengths".into(),
        ));
    }
    let e = g.identity();
    let l0 = inst.left.members()[0];
    let mut k_by_partition = Vec::new();
    for (name, p) in inst.partitions() {
        let k = power_length(g, p, l0, e, false);
        let lengths = all_generator_lengths(g, p, &inst.left, &inst.right, e);
        require_independent(&lengths, k, || format!("e ({name} partition)"))?;
        k_by_partition.push(k);
    }
    if k_by_partition[0] != k_by_partition[1] {
        return Err(Error::Inconsistency(format!(
            "weak k {} differs from strong k {}",
            k_by_partition[0], k_by_partition[1]
        )));
    }
    let k = k_by_partition[0];
    let ids: Vec<usize> = (0..inst.strong.len()).collect();
    Ok(ConnectionLengthReport {
        k,
        witness_generator: l0,
        per_coset: vec![CosetLength {
            representative: e,
            coset_size: g.order(),
            k_s: k,
            component_sizes: inst.strong.sizes(),
            component_ids: ids,
        }],
        predicted_components: k,
    })
}

/// Whether `L ∩ N(L)` or `R ∩ N(R)` is nonempty.
pub fn normalizer_condition(
    group: &FiniteGroup,
    left: &ElementSubset,
    right: &ElementSubset,
) -> bool {
    left.intersects(&normalizer(group, left)) || right.intersects(&normalizer(group, right))
}

fn all_isomorphic(inst: &Instance<'_>, ids: &[usize]) -> Result<bool> {
    let p = &inst.strong;
    let d = &inst.digraph;
    for &id in ids.iter().skip(1) {
        if !digraphs_isomorphic(d, p.component(ids[0]), d, p.component(id))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Component count, equal sizes, distinct classes of `l^i` for `i < k`,
/// and isomorphism under the normalizer condition, on both partitions.
pub fn component_count_theorem(inst: &Instance<'_>) -> Result<VerificationReport> {
    let g = inst.group;
    let len = min_connection_length(inst)?;
    let k = len.k;
    let l0 = len.witness_generator;
    let mut report = VerificationReport::new();
    for (name, p) in inst.partitions() {
        report.push(CheckRecord::compare(
            format!("component_count[{name}]"),
            k,
            p.len(),
            None,
        ));
        report.push(CheckRecord::compare(
            format!("equal_sizes[{name}]"),
            vec![g.order() / k; k],
            p.sizes(),
            None,
        ));
        let classes: BTreeSet<usize> = (0..k as i64)
            .map(|i| p.component_of(g.pow(l0, i)))
            .collect();
        report.push(CheckRecord::compare(
            format!("power_classes_distinct[{name}]"),
            k,
            classes.len(),
            Some(format!("powers of {}", g.label(l0))),
        ));
    }
    if normalizer_condition(g, &inst.left, &inst.right) {
        let ids: Vec<usize> = (0..inst.strong.len()).collect();
        report.push(match all_isomorphic(inst, &ids) {
            Ok(iso) => CheckRecord::compare("components_isomorphic", true, iso, None),
            Err(e) => CheckRecord::error("components_isomorphic", e),
        });
    }
    Ok(report)
}

/// Per-coset connection lengths `k_s` over the double cosets of
/// `⟨L⟩` and `⟨R⟩`. Asserts that components stay inside their coset and that
/// `k_s` does not depend on the representative or the generator.
pub fn coset_connection_lengths(inst: &Instance<'_>) -> Result<ConnectionLengthReport> {
    let g = inst.group;
    let hl = closure(g, &inst.left);
    let hr = closure(g, &inst.right);
    let dc = double_cosets(g, &hl, &hr)?;
    let l0 = inst.left.members()[0];

    for (name, p) in inst.partitions() {
        for comp in p.components() {
            let c = dc.coset_of(comp[0]);
            if let Some(&v) = comp.iter().find(|&&v| !dc.cosets[c].contains(v)) {
                return Err(Error::Inconsistency(format!(
                    "{name} component of {} leaves its double coset at {}",
                    g.label(comp[0]),
                    g.label(v)
                )));
            }
        }
    }

    let mut per_coset = Vec::with_capacity(dc.len());
    for (&s, coset) in dc.representatives.iter().zip(&dc.cosets) {
        let mut ks = Vec::new();
        for (name, p) in inst.partitions() {
            let k_s = power_length(g, p, l0, s, false);
            let lengths = all_generator_lengths(g, p, &inst.left, &inst.right, s);
            require_independent(&lengths, k_s, || {
                format!("representative {} ({name} partition)", g.label(s))
            })?;
            for x in coset.iter() {
                let k_x = power_length(g, p, l0, x, false);
                if k_x != k_s {
                    return Err(Error::Inconsistency(format!(
                        "k_s depends on the representative: {} gives {k_s}, {} gives {k_x}",
                        g.label(s),
                        g.label(x)
                    )));
                }
            }
            ks.push(k_s);
        }
        if ks[0] != ks[1] {
            return Err(Error::Inconsistency(format!(
                "weak and strong k_s differ at {}",
                g.label(s)
            )));
        }
        let ids: BTreeSet<usize> = coset.iter().map(|x| inst.strong.component_of(x)).collect();
        let component_ids: Vec<usize> = ids.into_iter().collect();
        per_coset.push(CosetLength {
            representative: s,
            coset_size: coset.len(),
            k_s: ks[0],
            component_sizes: component_ids
                .iter()
                .map(|&id| inst.strong.component(id).len())
                .collect(),
            component_ids,
        });
    }
    let k = per_coset
        .iter()
        .find(|c| c.representative == g.identity())
        .map(|c| c.k_s)
        .expect("some coset contains the identity");
    Ok(ConnectionLengthReport {
        k,
        witness_generator: l0,
        predicted_components: per_coset.iter().map(|c| c.k_s).sum(),
        per_coset,
    })
}

/// `Σ k_s` over all double cosets.
pub fn total_component_prediction(inst: &Instance<'_>) -> Result<usize> {
    Ok(coset_connection_lengths(inst)?.predicted_components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        direct_product, make_alternating, make_cyclic, make_dihedral, parse_subset,
    };

    fn inst<'g>(g: &'g FiniteGroup, l: &str, r: &str) -> Instance<'g> {
        Instance::new(g, parse_subset(g, l).unwrap(), parse_subset(g, r).unwrap())
    }

    #[test]
    fn d6_two_components() {
        let d6 = make_dihedral(6).unwrap();
        let i = inst(&d6, "t, ts^5", "ts, ts^2");
        let len = min_connection_length(&i).unwrap();
        assert_eq!(len.k, 2);
        assert!(!normalizer_condition(&d6, &i.left, &i.right));
        let report = component_count_theorem(&i).unwrap();
        assert!(report.all_pass(), "{}", report.render_text());
        assert!(!report
            .records
            .iter()
            .any(|r| r.check == "components_isomorphic"));
    }

    #[test]
    fn d10_isomorphic_components() {
        let d10 = make_dihedral(10).unwrap();
        let i = inst(&d10, "s", "t, s^3");
        assert_eq!(min_connection_length(&i).unwrap().k, 2);
        assert!(normalizer_condition(&d10, &i.left, &i.right));
        let report = component_count_theorem(&i).unwrap();
        assert!(report.all_pass(), "{}", report.render_text());
        assert!(report
            .records
            .iter()
            .any(|r| r.check == "components_isomorphic"));
    }

    #[test]
    fn strongly_connected_has_k_one() {
        let c7 = make_cyclic(7).unwrap();
        let i = inst(&c7, "g^2, g^3", "e, g");
        assert_eq!(min_connection_length(&i).unwrap().k, 1);
        assert_eq!(total_component_prediction(&i).unwrap(), 1);
    }

    #[test]
    fn hypothesis_gate() {
        let c2 = make_cyclic(2).unwrap();
        let i = inst(&c2, "e", "e");
        assert!(matches!(
            min_connection_length(&i),
            Err(Error::HypothesisNotMet(_))
        ));
        assert!(component_count_theorem(&i).is_err());
    }

    #[test]
    fn trivial_cosets() {
        let c3 = make_cyclic(3).unwrap();
        let i = inst(&c3, "e", "e");
        let r = coset_connection_lengths(&i).unwrap();
        assert_eq!(r.per_coset.len(), 3);
        assert!(r.per_coset.iter().all(|c| c.k_s == 1));
        assert_eq!(r.predicted_components, 3);
    }

    #[test]
    fn d3xc3_cosets() {
        let g = direct_product(&make_dihedral(3).unwrap(), &make_cyclic(3).unwrap()).unwrap();
        let i = inst(&g, "(ts^2,g^2)", "(e,g^2), (t,g^2)");
        let r = coset_connection_lengths(&i).unwrap();
        assert_eq!(
            r.per_coset.iter().map(|c| c.k_s).collect::<Vec<_>>(),
            vec![3, 3]
        );
        assert_eq!(r.predicted_components, 6);
        assert_eq!(i.strong.len(), 6);
    }

    #[test]
    fn a5_cosets() {
        let a5 = make_alternating(5).unwrap();
        let i = inst(&a5, "(235)", "(243), (254)");
        let r = coset_connection_lengths(&i).unwrap();
        let mut found: Vec<(usize, usize, Vec<usize>)> = r
            .per_coset
            .iter()
            .map(|c| (c.coset_size, c.k_s, c.component_sizes.clone()))
            .collect();
        found.sort();
        assert_eq!(
            found,
            vec![
                (12, 1, vec![12]),
                (12, 3, vec![4, 4, 4]),
                (36, 3, vec![12, 12, 12])
            ]
        );
        assert_eq!(r.predicted_components, 7);
        for c in &r.per_coset {
            assert!(c.records(&a5).all_pass());
        }
    }
}
