use serde::Serialize;

use super::{CheckRecord, VerificationReport};
use crate::connectivity::strong_components;
use crate::digraph::{build_generalized, build_two_sided, Adjacency};
use crate::error::{Error, Result};
use crate::group::{direct_product, ElementSubset, FiniteGroup};

/// Largest group order for the orbit count; `U` can reach `|G|²` pairs.
pub const BURNSIDE_ORDER_LIMIT: usize = 360;

/// Largest group order for the diagonal correspondence check.
pub const DELTA_ORDER_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurnsideReport {
    /// `|U|` for `U = ⟨(l, r) : l ∈ L, r ∈ R⟩ ≤ G × G`.
    pub u_order: usize,
    pub fixed_point_sum: usize,
    pub count: usize,
    pub u_contains_identity: bool,
    pub u_inverse_closed: bool,
}

/// Counts orbits of `U` acting by `g ↦ a⁻¹ g b`: the sum of fixed points
/// over `U`, divided by `|U|`.
pub fn burnside_component_count(
    group: &FiniteGroup,
    left: &ElementSubset,
    right: &ElementSubset,
) -> Result<BurnsideReport> {
    let n = group.order();
    if n > BURNSIDE_ORDER_LIMIT {
        return Err(Error::Capability {
            what: format!("orbit count on {group}"),
            limit: BURNSIDE_ORDER_LIMIT,
        });
    }
    // pairs (a, b) encoded as a * n + b
    let gens: Vec<(usize, usize)> = left
        .iter()
        .flat_map(|l| right.iter().map(move |r| (l, r)))
        .collect();
    let mut in_u = vec![false; n * n];
    let mut queue = Vec::new();
    for &(a, b) in &gens {
        if !in_u[a * n + b] {
            in_u[a * n + b] = true;
            queue.push((a, b));
        }
    }
    while let Some((a, b)) = queue.pop() {
        for &(l, r) in &gens {
            let (x, y) = (group.mul(a, l), group.mul(b, r));
            if !in_u[x * n + y] {
                in_u[x * n + y] = true;
                queue.push((x, y));
            }
        }
    }
    let u: Vec<(usize, usize)> = (0..n * n)
        .filter(|&i| in_u[i])
        .map(|i| (i / n, i % n))
        .collect();
    let e = group.identity();
    let u_contains_identity = in_u[e * n + e];
    let u_inverse_closed = u
        .iter()
        .all(|&(a, b)| in_u[group.inv(a) * n + group.inv(b)]);

    let fixed_point_sum: usize = u
        .iter()
        .map(|&(a, b)| {
            let ai = group.inv(a);
            group
                .elements()
                .filter(|&g| group.mul(group.mul(ai, g), b) == g)
                .count()
        })
        .sum();
    if !fixed_point_sum.is_multiple_of(u.len()) {
        return Err(Error::Inconsistency(format!(
            "fixed-point sum {fixed_point_sum} not divisible by |U| = {}",
            u.len()
        )));
    }
    Ok(BurnsideReport {
        u_order: u.len(),
        fixed_point_sum,
        count: fixed_point_sum / u.len(),
        u_contains_identity,
        u_inverse_closed,
    })
}

/// Checks that `φ(g₁, g₂) = g₁⁻¹ g₂` maps arcs of `2S(G × G; ΔG, U)` to arcs
/// of `2S(G; U)` and induces a bijection on components.
pub fn delta_correspondence_check(
    group: &FiniteGroup,
    pairs: &[(usize, usize)],
) -> Result<VerificationReport> {
    let n = group.order();
    if n > DELTA_ORDER_LIMIT {
        return Err(Error::Capability {
            what: format!("diagonal correspondence on {group}"),
            limit: DELTA_ORDER_LIMIT,
        });
    }
    let target = build_generalized(group, pairs)?;
    let gg = direct_product(group, group)?;
    let diagonal = ElementSubset::new(&gg, group.elements().map(|g| g * n + g))?;
    let u_set = ElementSubset::new(&gg, pairs.iter().map(|&(a, b)| a * n + b))?;
    let product = build_two_sided(&gg, &diagonal, &u_set);
    let phi = |x: usize| group.mul(group.inv(x / n), x % n);

    let broken_arc = product
        .arcs()
        .find(|&(x, y)| !target.has_arc(phi(x), phi(y)));

    let sp = strong_components(&product);
    let st = strong_components(&target);
    let mut image = Vec::with_capacity(sp.len());
    let mut well_defined = true;
    for comp in sp.components() {
        let id = st.component_of(phi(comp[0]));
        well_defined &= comp.iter().all(|&x| st.component_of(phi(x)) == id);
        image.push(id);
    }
    let mut hit = vec![0usize; st.len()];
    for &id in &image {
        hit[id] += 1;
    }
    let bijective = well_defined && hit.iter().all(|&c| c == 1);

    let mut report = VerificationReport::new();
    report.push(CheckRecord::compare(
        "delta_arcs_preserved",
        true,
        broken_arc.is_none(),
        broken_arc.map(|(x, y)| format!("{} -> {}", gg.label(x), gg.label(y))),
    ));
    report.push(CheckRecord::compare(
        "delta_components_well_defined",
        true,
        well_defined,
        None,
    ));
    report.push(CheckRecord::compare(
        "delta_component_bijection",
        true,
        bijective,
        Some(format!(
            "{} product components, {} target components",
            sp.len(),
            st.len()
        )),
    ));
    Ok(report)
}
