use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use twosided::connectivity::ComponentAnalysis;
use twosided::digraph::{
    is_undirected, valency_obstruction, valency_profile, Adjacency, TwoSidedDigraph,
};
use twosided::group::FiniteGroup;
use twosided::theory::{
    burnside_component_count, component_count_theorem, coset_connection_lengths,
    factorization_check, min_connection_length, retract_reduction_check,
    theorem_strong_connectivity, CheckRecord, Instance, VerificationReport,
};
use twosided::{ElementSubset, Result};

use crate::Check;

fn names(g: &FiniteGroup, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| g.label(x).to_string()).collect()
}

fn valency_section(g: &FiniteGroup, inst: &Instance<'_>, checks: &mut VerificationReport) -> Value {
    let d: &TwoSidedDigraph<'_> = &inst.digraph;
    let p = valency_profile(d);
    let mut by_in: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for v in g.elements() {
        by_in
            .entry(p.in_valencies[v])
            .or_default()
            .push(g.label(v).to_string());
    }
    let undirected = is_undirected(g, &inst.left, &inst.right);
    let full = inst.left.len() * inst.right.len();
    let trivial: Vec<usize> = g
        .elements()
        .filter(|&v| valency_obstruction(g, &inst.left, &inst.right, v).len() == 1)
        .collect();
    checks.push(CheckRecord::compare(
        "valency_sums",
        [d.arc_count(), d.arc_count()],
        [
            p.out_valencies.iter().sum::<usize>(),
            p.in_valencies.iter().sum::<usize>(),
        ],
        None,
    ));
    checks.push(CheckRecord::compare(
        "undirected_matches_symmetry",
        undirected,
        d.is_symmetric(),
        None,
    ));
    checks.push(CheckRecord::compare(
        "trivial_obstruction_full_valency",
        trivial.len(),
        trivial
            .iter()
            .filter(|&&v| d.out_neighbors(v).len() == full)
            .count(),
        None,
    ));
    let obstruction_e = valency_obstruction(g, &inst.left, &inst.right, g.identity());
    json!({
        "out_constant": p.out_constant,
        "in_constant": p.in_constant,
        "regular": p.regular,
        "out_valencies": p.out_valency_values(),
        "in_valencies": p.in_valency_values(),
        "vertices_by_in_valency": by_in,
        "undirected": undirected,
        "obstruction_at_e": names(g, obstruction_e.iter()),
    })
}

fn components_section(
    g: &FiniteGroup,
    inst: &Instance<'_>,
    checks: &mut VerificationReport,
) -> Result<Value> {
    let analysis = ComponentAnalysis::new(&inst.digraph)?;
    let label_parts = |p: &twosided::connectivity::Partition| -> Vec<Vec<String>> {
        p.components()
            .iter()
            .map(|c| names(g, c.iter().copied()))
            .collect()
    };
    checks.push(CheckRecord::compare(
        "weak_equals_strong",
        true,
        analysis.weak == analysis.strong,
        None,
    ));
    let factorization = factorization_check(g, &inst.left, &inst.right)?;
    let k = if factorization {
        checks.extend(component_count_theorem(inst)?);
        Some(min_connection_length(inst)?.k)
    } else {
        None
    };
    Ok(json!({
        "count": analysis.strong.len(),
        "strongly_connected": analysis.strong.len() == 1,
        "strong": label_parts(&analysis.strong),
        "weak": label_parts(&analysis.weak),
        "strong_sizes": analysis.strong_sizes,
        "weak_sizes": analysis.weak_sizes,
        "iso_classes": analysis.iso_classes,
        "factorization": factorization,
        "k": k,
    }))
}

fn cosets_section(
    g: &FiniteGroup,
    inst: &Instance<'_>,
    checks: &mut VerificationReport,
) -> Result<Value> {
    let lengths = coset_connection_lengths(inst)?;
    for c in &lengths.per_coset {
        checks.extend(c.records(g));
    }
    checks.push(CheckRecord::compare(
        "total_components",
        lengths.predicted_components,
        inst.strong.len(),
        None,
    ));
    let per: Vec<Value> = lengths
        .per_coset
        .iter()
        .map(|c| {
            json!({
                "representative": g.label(c.representative),
                "size": c.coset_size,
                "k_s": c.k_s,
                "component_sizes": c.component_sizes,
            })
        })
        .collect();
    Ok(json!({
        "double_cosets": per.len(),
        "cosets": per,
        "predicted_components": lengths.predicted_components,
    }))
}

fn burnside_section(
    g: &FiniteGroup,
    inst: &Instance<'_>,
    checks: &mut VerificationReport,
) -> Result<Value> {
    let b = burnside_component_count(g, &inst.left, &inst.right)?;
    checks.push(CheckRecord::compare(
        "burnside_count",
        b.count,
        inst.strong.len(),
        None,
    ));
    checks.push(CheckRecord::compare(
        "u_subgroup",
        true,
        b.u_contains_identity && b.u_inverse_closed,
        None,
    ));
    Ok(serde_json::to_value(b).expect("report serializes"))
}

fn theorem_section(
    g: &FiniteGroup,
    inst: &Instance<'_>,
    checks: &mut VerificationReport,
) -> Result<Value> {
    let t = theorem_strong_connectivity(inst)?;
    checks.push(t.record(g));
    Ok(json!({
        "factorization": t.factorization,
        "i": t.witness.as_ref().map(|w| w.i),
        "j": t.witness.as_ref().map(|w| w.j),
        "i_words": t.witness.as_ref().map(|w| w.render_i(g)),
        "j_words": t.witness.as_ref().map(|w| w.render_j(g)),
        "predicted": t.predicted,
        "strongly_connected": t.oracle,
    }))
}

fn retract_section(inst: &Instance<'_>, checks: &mut VerificationReport) -> Result<Value> {
    let r = retract_reduction_check(inst)?;
    checks.push(r.record("retract_equivalence"));
    Ok(serde_json::to_value(r).expect("report serializes"))
}

/// Builds the analysis record. The text report is rendered from this value.
pub fn analyze(
    g: &FiniteGroup,
    left: ElementSubset,
    right: ElementSubset,
    selected: &[Check],
    want_dot: bool,
) -> Result<Value> {
    let inst = Instance::new(g, left, right);
    let mut checks = VerificationReport::new();
    let mut record = Map::new();
    record.insert("group".into(), json!(g.name()));
    record.insert("order".into(), json!(g.order()));
    record.insert("left".into(), json!(names(g, inst.left.iter())));
    record.insert("right".into(), json!(names(g, inst.right.iter())));
    record.insert("arcs".into(), json!(inst.digraph.arc_count()));
    for check in selected {
        let (key, value) = match check {
            Check::Valency => ("valency", valency_section(g, &inst, &mut checks)),
            Check::Components => ("components", components_section(g, &inst, &mut checks)?),
            Check::Cosets => ("cosets", cosets_section(g, &inst, &mut checks)?),
            Check::Burnside => ("burnside", burnside_section(g, &inst, &mut checks)?),
            Check::Theorem24 => ("theorem24", theorem_section(g, &inst, &mut checks)?),
            Check::Retract => ("retract", retract_section(&inst, &mut checks)?),
        };
        record.insert(key.into(), value);
    }
    record.insert("pass".into(), json!(checks.all_pass()));
    record.insert(
        "checks".into(),
        serde_json::to_value(&checks).expect("report serializes"),
    );
    if want_dot {
        record.insert("dot".into(), json!(inst.digraph.to_dot()));
    }
    Ok(Value::Object(record))
}
