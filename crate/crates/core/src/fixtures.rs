//! Worked examples of two-sided group digraphs, each replayed against
//! quantities computed from the built digraph.
//!
//! In every record `predicted` is the stated value and `oracle` is what
//! this crate computes.

use std::collections::BTreeMap;

use crate::connectivity::{digraphs_isomorphic, is_strongly_connected};
use crate::digraph::{
    arc_multiset, build_cayley, build_generalized, is_undirected, valency_obstruction,
    valency_profile, Adjacency,
};
use crate::error::Result;
use crate::group::{
    closure, direct_product, double_cosets, make_alternating, make_cyclic, make_dihedral,
    normalizer, parse_subset, semidirect_product, Action, ElementSubset, FiniteGroup,
};
use crate::theory::{
    burnside_component_count, coset_connection_lengths, factorization_check, min_connection_length,
    retract_reduction_check, theorem_strong_connectivity, CheckRecord, Instance,
    VerificationReport,
};

pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    run: fn() -> Result<VerificationReport>,
}

impl Fixture {
    /// Runs the fixture; an error becomes a single failing record.
    pub fn run(&self) -> VerificationReport {
        self.run_checked().unwrap_or_else(|e| VerificationReport {
            records: vec![CheckRecord::error(self.id, e)],
        })
    }

    pub fn run_checked(&self) -> Result<VerificationReport> {
        (self.run)()
    }
}

static FIXTURES: &[Fixture] = &[
    Fixture {
        id: "a4-valency",
        title: "A4: constant out-valency 7, in-valencies 6 and 8",
        run: a4_valency,
    },
    Fixture {
        id: "c7-cayley",
        title: "C7: regular of valency 3 and a Cayley digraph",
        run: c7_cayley,
    },
    Fixture {
        id: "d6-obstruction",
        title: "D6: undirected, valency 3 through the obstruction set",
        run: d6_obstruction,
    },
    Fixture {
        id: "a4-complete",
        title: "A4: complete graph with loops, every arc doubled",
        run: a4_complete,
    },
    Fixture {
        id: "d6-nonisomorphic",
        title: "D6: two components that are not isomorphic",
        run: d6_nonisomorphic,
    },
    Fixture {
        id: "d10-isomorphic",
        title: "D10: two isomorphic components",
        run: d10_isomorphic,
    },
    Fixture {
        id: "d3xc3-cosets",
        title: "D3 x C3: two double cosets with k_s = 3",
        run: d3xc3_cosets,
    },
    Fixture {
        id: "a5-cosets",
        title: "A5: three double cosets, seven components",
        run: a5_cosets,
    },
    Fixture {
        id: "d6-retract-connected",
        title: "C6 x| C2: connected through the retraction",
        run: d6_retract_connected,
    },
    Fixture {
        id: "d6-retract-disconnected",
        title: "C6 x| C2: disconnected image, isolated e and tau",
        run: d6_retract_disconnected,
    },
];

pub fn fixtures() -> &'static [Fixture] {
    FIXTURES
}

pub fn fixture(id: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.id == id)
}

fn sub(g: &FiniteGroup, text: &str) -> Result<ElementSubset> {
    parse_subset(g, text)
}

fn names(g: &FiniteGroup, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    let mut v: Vec<String> = xs.into_iter().map(|x| g.label(x).to_string()).collect();
    v.sort();
    v
}

fn sorted(xs: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn a4_valency() -> Result<VerificationReport> {
    let a4 = make_alternating(4)?;
    let inst = Instance::new(
        &a4,
        sub(&a4, "e, (243)")?,
        sub(&a4, "(234), (12)(34), (132), (14)(23)")?,
    );
    let p = valency_profile(&inst.digraph);
    let with_in = |k: usize| names(&a4, a4.elements().filter(|&v| p.in_valencies[v] == k));
    let mut r = VerificationReport::new();
    r.push(CheckRecord::compare(
        "out_valency_constant",
        Some(7),
        p.out_constant,
        None,
    ));
    r.push(CheckRecord::compare(
        "in_valency_6_vertices",
        sorted(&["(123)", "(132)", "(142)", "(143)", "(12)(34)", "(13)(24)"]),
        with_in(6),
        None,
    ));
    r.push(CheckRecord::compare(
        "in_valency_8_count",
        6,
        with_in(8).len(),
        None,
    ));
    r.push(CheckRecord::compare(
        "strongly_connected",
        true,
        is_strongly_connected(&inst.digraph),
        None,
    ));
    r.push(CheckRecord::compare(
        "factorization",
        true,
        factorization_check(&a4, &inst.left, &inst.right)?,
        None,
    ));
    // e = e^3 [(12)(34)]^2 with e in L^-1 and (12)(34) in R
    let e = a4.identity();
    let x = a4.index_of("(12)(34)").expect("A4 contains (12)(34)");
    let valid = inst.left.inverse(&a4).contains(e)
        && inst.right.contains(x)
        && a4.mul(a4.pow(e, 3), a4.pow(x, 2)) == e;
    r.push(CheckRecord::compare(
        "known_identity_offset",
        true,
        valid,
        Some("e.e.e | (12)(34).(12)(34)".into()),
    ));
    r.push(theorem_strong_connectivity(&inst)?.record(&a4));
    Ok(r)
}

fn c7_cayley() -> Result<VerificationReport> {
    let c7 = make_cyclic(7)?;
    let inst = Instance::new(&c7, sub(&c7, "g^2, g^3")?, sub(&c7, "e, g")?);
    let p = valency_profile(&inst.digraph);
    let cay = build_cayley(&c7, &sub(&c7, "g^4, g^5, g^6")?);
    let all: Vec<usize> = c7.elements().collect();
    let multiset: BTreeMap<String, usize> =
        arc_multiset(&c7, &inst.left, &inst.right, c7.identity())
            .into_iter()
            .map(|(x, m)| (c7.label(x).to_string(), m))
            .collect();
    let expected: BTreeMap<String, usize> = [("g^4", 1), ("g^5", 2), ("g^6", 1)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let pairs: Vec<(usize, usize)> = inst
        .left
        .iter()
        .flat_map(|l| inst.right.iter().map(move |r| (l, r)))
        .collect();
    let generalized = build_generalized(&c7, &pairs)?;

    let mut r = VerificationReport::new();
    r.push(CheckRecord::compare("regular", true, p.regular, None));
    r.push(CheckRecord::compare(
        "valency",
        Some(3),
        p.out_constant,
        None,
    ));
    r.push(CheckRecord::compare(
        "arc_count",
        21,
        inst.digraph.arc_count(),
        None,
    ));
    r.push(CheckRecord::compare(
        "isomorphic_to_cayley",
        true,
        digraphs_isomorphic(&inst.digraph, &all, &cay, &all)?,
        Some("Cay(C7, {g^4, g^5, g^6})".into()),
    ));
    r.push(CheckRecord::compare(
        "arc_multiset_at_e",
        expected,
        multiset,
        None,
    ));
    r.push(CheckRecord::compare(
        "pair_set_matches",
        true,
        generalized.arcs().eq(inst.digraph.arcs()),
        None,
    ));
    r.push(CheckRecord::compare(
        "undirected",
        false,
        is_undirected(&c7, &inst.left, &inst.right),
        None,
    ));
    r.push(theorem_strong_connectivity(&inst)?.record(&c7));
    r.push(CheckRecord::compare(
        "k",
        1,
        min_connection_length(&inst)?.k,
        None,
    ));
    Ok(r)
}

fn d6_instance(d6: &FiniteGroup) -> Result<Instance<'_>> {
    Ok(Instance::new(d6, sub(d6, "τ, τσ^5")?, sub(d6, "τσ, τσ^2")?))
}

fn d6_obstruction() -> Result<VerificationReport> {
    let d6 = make_dihedral(6)?;
    let inst = d6_instance(&d6)?;
    let p = valency_profile(&inst.digraph);
    let expected = sub(&d6, "e, σ, σ^-1")?;
    let matching = d6
        .elements()
        .filter(|&g| valency_obstruction(&d6, &inst.left, &inst.right, g) == expected)
        .count();
    let mut r = VerificationReport::new();
    r.push(CheckRecord::compare(
        "undirected",
        true,
        is_undirected(&d6, &inst.left, &inst.right),
        None,
    ));
    r.push(CheckRecord::compare(
        "arc_relation_symmetric",
        true,
        inst.digraph.is_symmetric(),
        None,
    ));
    r.push(CheckRecord::compare("regular", true, p.regular, None));
    r.push(CheckRecord::compare(
        "valency",
        Some(3),
        p.out_constant,
        None,
    ));
    r.push(CheckRecord::compare(
        "obstruction_is_e_sigma_sigma_inverse",
        d6.order(),
        matching,
        Some("vertices g with obstruction {e, s, s^5}".into()),
    ));
    Ok(r)
}

fn a4_complete() -> Result<VerificationReport> {
    let a4 = make_alternating(4)?;
    let left = ElementSubset::whole(&a4);
    let right = sub(&a4, "(243), (12)(34)")?;
    let inst = Instance::new(&a4, left, right);
    let p = valency_profile(&inst.digraph);
    let doubled = a4
        .elements()
        .filter(|&g| {
            let m = arc_multiset(&a4, &inst.left, &inst.right, g);
            m.len() == 12 && m.values().all(|&c| c == 2)
        })
        .count();
    let expected = sub(&a4, "e, (124), (142)")?;
    let obstructed = a4
        .elements()
        .filter(|&g| valency_obstruction(&a4, &inst.left, &inst.right, g) == expected)
        .count();
    let mut r = VerificationReport::new();
    r.push(CheckRecord::compare("regular", true, p.regular, None));
    r.push(CheckRecord::compare(
        "valency",
        Some(12),
        p.out_constant,
        None,
    ));
    r.push(CheckRecord::compare(
        "undirected",
        true,
        is_undirected(&a4, &inst.left, &inst.right),
        None,
    ));
    r.push(CheckRecord::compare(
        "multisets_12_values_twice",
        a4.order(),
        doubled,
        None,
    ));
    r.push(CheckRecord::compare(
        "obstruction_e_124_142",
        a4.order(),
        obstructed,
        None,
    ));
    Ok(r)
}

fn two_component_records(
    r: &mut VerificationReport,
    inst: &Instance<'_>,
    sizes: Vec<usize>,
    isomorphic: bool,
) -> Result<()> {
    let comps = inst.components()?;
    r.push(CheckRecord::compare(
        "k",
        2,
        min_connection_length(inst)?.k,
        None,
    ));
    r.push(CheckRecord::compare(
        "component_sizes",
        sizes,
        comps.sizes(),
        None,
    ));
    r.push(CheckRecord::compare(
        "components_isomorphic",
        isomorphic,
        digraphs_isomorphic(
            &inst.digraph,
            comps.component(0),
            &inst.digraph,
            comps.component(1),
        )?,
        None,
    ));
    let g = inst.group;
    let t = g.index_of("t").expect("dihedral group has t");
    r.push(CheckRecord::compare(
        "e_not_joined_to_tau",
        false,
        comps.same(g.identity(), t),
        None,
    ));
    let b = burnside_component_count(g, &inst.left, &inst.right)?;
    r.push(CheckRecord::compare("burnside_count", 2, b.count, None));
    Ok(())
}

fn d6_nonisomorphic() -> Result<VerificationReport> {
    let d6 = make_dihedral(6)?;
    let inst = d6_instance(&d6)?;
    let mut r = VerificationReport::new();
    r.push(CheckRecord::compare(
        "factorization",
        true,
        factorization_check(&d6, &inst.left, &inst.right)?,
        None,
    ));
    two_component_records(&mut r, &inst, vec![6, 6], false)?;
    let n_l = normalizer(&d6, &inst.left);
    let n_r = normalizer(&d6, &inst.right);
    let expected = sub(&d6, "e, σ^3")?;
    r.push(CheckRecord::compare(
        "normalizers",
        [names(&d6, expected.iter()), names(&d6, expected.iter())],
        [names(&d6, n_l.iter()), names(&d6, n_r.iter())],
        None,
    ));
    r.push(CheckRecord::compare(
        "normalizer_meets_l_or_r",
        false,
        n_l.intersects(&inst.left) || n_r.intersects(&inst.right),
        None,
    ));
    Ok(r)
}

fn d10_isomorphic() -> Result<VerificationReport> {
    let d10 = make_dihedral(10)?;
    let inst = Instance::new(&d10, sub(&d10, "σ")?, sub(&d10, "τ, σ^3")?);
    let mut r = VerificationReport::new();
    two_component_records(&mut r, &inst, vec![10, 10], true)?;
    let n_l = normalizer(&d10, &inst.left);
    let sigma = d10.index_of("s").expect("dihedral group has s");
    r.push(CheckRecord::compare(
        "normalizer_of_l",
        names(&d10, closure(&d10, &inst.left).iter()),
        names(&d10, n_l.iter()),
        None,
    ));
    r.push(CheckRecord::compare(
        "sigma_in_l_and_normalizer",
        true,
        inst.left.contains(sigma) && n_l.contains(sigma),
        None,
    ));
    Ok(r)
}

fn coset_isomorphism(inst: &Instance<'_>, ids: &[usize]) -> Result<bool> {
    let p = &inst.strong;
    for &id in &ids[1..] {
        if !digraphs_isomorphic(
            &inst.digraph,
            p.component(ids[0]),
            &inst.digraph,
            p.component(id),
        )? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn d3xc3_cosets() -> Result<VerificationReport> {
    let g = direct_product(&make_dihedral(3)?, &make_cyclic(3)?)?;
    let inst = Instance::new(&g, sub(&g, "(ts^2,g^2)")?, sub(&g, "(e,g^2), (t,g^2)")?);
    let lengths = coset_connection_lengths(&inst)?;
    let dc = double_cosets(&g, &closure(&g, &inst.left), &closure(&g, &inst.right))?;
    let rep2 = g.index_of("(s^2,e)").expect("D3 x C3 contains (s^2,e)");
    let mut r = VerificationReport::new();
    r.push(CheckRecord::compare("double_cosets", 2, dc.len(), None));
    r.push(CheckRecord::compare(
        "given_representatives_distinct",
        true,
        dc.coset_of(g.identity()) != dc.coset_of(rep2),
        Some("e and (s^2,e)".into()),
    ));
    r.push(CheckRecord::compare(
        "k_s",
        vec![3, 3],
        lengths.per_coset.iter().map(|c| c.k_s).collect::<Vec<_>>(),
        None,
    ));
    r.push(CheckRecord::compare(
        "total_components",
        6,
        lengths.predicted_components,
        None,
    ));
    r.push(CheckRecord::compare(
        "scc_count",
        6,
        inst.components()?.len(),
        None,
    ));
    let iso: Result<Vec<bool>> = lengths
        .per_coset
        .iter()
        .map(|c| coset_isomorphism(&inst, &c.component_ids))
        .collect();
    r.push(CheckRecord::compare(
        "isomorphic_within_cosets",
        vec![true, true],
        iso?,
        None,
    ));
    Ok(r)
}

fn a5_cosets() -> Result<VerificationReport> {
    let a5 = make_alternating(5)?;
    let inst = Instance::new(&a5, sub(&a5, "(235)")?, sub(&a5, "(243), (254)")?);
    let lengths = coset_connection_lengths(&inst)?;
    let dc = double_cosets(&a5, &closure(&a5, &inst.left), &closure(&a5, &inst.right))?;
    let reps: Vec<usize> = ["e", "(123)", "(145)"]
        .iter()
        .map(|s| {
            a5.index_of(s)
                .expect("A5 contains the given representatives")
        })
        .collect();
    let coset_ids: Vec<usize> = reps.iter().map(|&s| dc.coset_of(s)).collect();
    let mut distinct = coset_ids.clone();
    distinct.sort_unstable();
    distinct.dedup();
    // report in the given order of representatives
    let in_order: Vec<_> = coset_ids.iter().map(|&c| &lengths.per_coset[c]).collect();
    let mut r = VerificationReport::new();
    r.push(CheckRecord::compare("double_cosets", 3, dc.len(), None));
    r.push(CheckRecord::compare(
        "given_representatives_distinct",
        3,
        distinct.len(),
        Some("e, (123), (145)".into()),
    ));
    r.push(CheckRecord::compare(
        "k_s",
        vec![3, 3, 1],
        in_order.iter().map(|c| c.k_s).collect::<Vec<_>>(),
        None,
    ));
    r.push(CheckRecord::compare(
        "component_sizes",
        vec![4, 12, 12],
        in_order
            .iter()
            .map(|c| c.component_sizes[0])
            .collect::<Vec<_>>(),
        None,
    ));
    r.push(CheckRecord::compare(
        "total_components",
        7,
        lengths.predicted_components,
        None,
    ));
    r.push(CheckRecord::compare(
        "scc_count",
        7,
        inst.components()?.len(),
        None,
    ));
    r.push(CheckRecord::compare(
        "burnside_count",
        7,
        burnside_component_count(&a5, &inst.left, &inst.right)?.count,
        None,
    ));
    Ok(r)
}

/// `C6 ⋊ C2` with the generator of `C2` inverting `C6`.
pub fn dihedral_semidirect() -> Result<FiniteGroup> {
    let c6 = make_cyclic(6)?;
    let c2 = make_cyclic(2)?;
    let inversion = Action::new(vec![
        (0..6).collect(),
        (0..6).map(|x| (6 - x) % 6).collect(),
    ]);
    semidirect_product(&c6, &c2, &inversion)
}

/// Whether `(g^a, g^b) ↦ σ^a τ^b` is an isomorphism onto `D6`, so that the
/// pair notation in the retract fixtures names the intended elements.
fn semidirect_matches_dihedral(g: &FiniteGroup, d6: &FiniteGroup) -> bool {
    let sigma = d6.index_of("s").expect("dihedral group has s");
    let tau = d6.index_of("t").expect("dihedral group has t");
    // index a * 2 + b encodes (g^a, g^b)
    let map: Vec<usize> = g
        .elements()
        .map(|x| d6.mul(d6.pow(sigma, (x / 2) as i64), d6.pow(tau, (x % 2) as i64)))
        .collect();
    let mut seen = map.clone();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == d6.order()
        && g.elements().all(|x| {
            g.elements()
                .all(|y| map[g.mul(x, y)] == d6.mul(map[x], map[y]))
        })
}

fn retract_fixture(
    left: &str,
    right: &str,
    dihedral_left: &str,
    dihedral_right: &str,
    connected: bool,
) -> Result<(VerificationReport, crate::theory::ReductionReport)> {
    let g = dihedral_semidirect()?;
    let d6 = make_dihedral(6)?;
    let inst = Instance::new(&g, sub(&g, left)?, sub(&g, right)?);
    let direct = Instance::new(&d6, sub(&d6, dihedral_left)?, sub(&d6, dihedral_right)?);
    let rep = retract_reduction_check(&inst)?;
    let mut r = VerificationReport::new();
    r.push(CheckRecord::compare(
        "semidirect_matches_dihedral",
        true,
        semidirect_matches_dihedral(&g, &d6),
        None,
    ));
    r.push(CheckRecord::compare(
        "weakly_connected",
        connected,
        rep.connected,
        None,
    ));
    r.push(CheckRecord::compare(
        "dihedral_weakly_connected",
        connected,
        direct.weak.len() == 1,
        None,
    ));
    r.push(CheckRecord::compare(
        "kernel_in_one_component",
        true,
        rep.kernel_within_one,
        None,
    ));
    r.push(rep.record("retract_equivalence"));
    Ok((r, rep))
}

fn d6_retract_connected() -> Result<VerificationReport> {
    let (mut r, rep) = retract_fixture("(g,e)", "(g^2,e), (e,g)", "σ", "σ^2, τ", true)?;
    r.push(CheckRecord::compare(
        "image_connected",
        true,
        rep.image_connected,
        None,
    ));
    r.push(CheckRecord::compare(
        "image_loops",
        vec!["e", "g"],
        &rep.image_loops,
        Some("loops at e and tau".into()),
    ));
    Ok(r)
}

fn d6_retract_disconnected() -> Result<VerificationReport> {
    // τσ^i is the pair (g^-i, g)
    let (mut r, rep) = retract_fixture(
        "(e,g), (g,g)",
        "(g^5,g), (g^4,g)",
        "τ, τσ^5",
        "τσ, τσ^2",
        false,
    )?;
    r.push(CheckRecord::compare(
        "image_connected",
        false,
        rep.image_connected,
        None,
    ));
    r.push(CheckRecord::compare(
        "image_isolated_vertices",
        vec!["e", "g"],
        &rep.image_isolated,
        Some("isolated e and tau".into()),
    ));
    r.push(CheckRecord::compare(
        "image_loops",
        vec!["e", "g"],
        &rep.image_loops,
        None,
    ));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        for f in fixtures() {
            let r = f.run_checked().unwrap_or_else(|e| panic!("{}: {e}", f.id));
            assert!(r.all_pass(), "{}\n{}", f.id, r.render_text());
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(fixtures().len(), 10);
        assert!(fixture("c7-cayley").is_some());
        assert!(fixture("nope").is_none());
    }
}
