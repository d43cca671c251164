use serde::Serialize;

use super::{CheckRecord, Instance};
use crate::connectivity::weak_components;
use crate::digraph::{build_two_sided, Adjacency};
use crate::error::{Error, Result};
use crate::group::{quotient, ElementSubset, FiniteGroup};

/// The three booleans of the reduction through a homomorphism `φ` with
/// kernel `N`: (a) `2S(G; L, R)` weakly connected, (b) the image digraph
/// `2S(φ(G); φ(L), φ(R))` weakly connected, (c) `N` inside one weak component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub connected: bool,
    pub image_connected: bool,
    pub kernel_within_one: bool,
    /// Weak components of the image digraph, as labels.
    pub image_components: Vec<Vec<String>>,
    /// Image vertices with no arcs other than a loop.
    pub image_isolated: Vec<String>,
    /// Image vertices carrying a loop.
    pub image_loops: Vec<String>,
}

impl ReductionReport {
    pub fn record(&self, check: &str) -> CheckRecord {
        CheckRecord::compare(
            check,
            self.image_connected && self.kernel_within_one,
            self.connected,
            Some(format!(
                "image connected={}, kernel in one component={}",
                self.image_connected, self.kernel_within_one
            )),
        )
    }
}

fn reduce(
    inst: &Instance<'_>,
    image_group: &FiniteGroup,
    project: impl Fn(usize) -> usize,
    kernel: &ElementSubset,
) -> Result<ReductionReport> {
    let l_img = ElementSubset::new(image_group, inst.left.iter().map(&project))?;
    let r_img = ElementSubset::new(image_group, inst.right.iter().map(&project))?;
    let image = build_two_sided(image_group, &l_img, &r_img);
    let image_weak = weak_components(&image);
    let first = inst.weak.component_of(kernel.members()[0]);
    let label = |v: usize| image_group.label(v).to_string();
    Ok(ReductionReport {
        connected: inst.weak.len() == 1,
        image_connected: image_weak.len() == 1,
        kernel_within_one: kernel.iter().all(|h| inst.weak.component_of(h) == first),
        image_components: image_weak
            .components()
            .iter()
            .map(|c| c.iter().map(|&v| label(v)).collect())
            .collect(),
        image_isolated: (0..image.vertex_count())
            .filter(|&v| {
                image.out_neighbors(v).iter().all(|&w| w == v)
                    && image.in_neighbors(v).iter().all(|&w| w == v)
            })
            .map(label)
            .collect(),
        image_loops: (0..image.vertex_count())
            .filter(|&v| image.has_arc(v, v))
            .map(label)
            .collect(),
    })
}

/// Reduction through the retraction `H ⋊ K → K`. The group must have been
/// built as a semidirect product.
pub fn retract_reduction_check(inst: &Instance<'_>) -> Result<ReductionReport> {
    let retraction = inst.group.retraction().ok_or(Error::MissingRetraction)?;
    reduce(
        inst,
        retraction.complement(),
        |g| retraction.project(g),
        &retraction.kernel(),
    )
}

/// Reduction through the projection `G → G/N`.
pub fn quotient_reduction_check(
    inst: &Instance<'_>,
    normal: &ElementSubset,
) -> Result<ReductionReport> {
    let (q, map) = quotient(inst.group, normal)?;
    reduce(inst, &q, |g| map[g], normal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, parse_subset, semidirect_product, Action};

    fn d6_semidirect() -> FiniteGroup {
        let c6 = make_cyclic(6).unwrap();
        let c2 = make_cyclic(2).unwrap();
        let inversion = Action::new(vec![
            (0..6).collect(),
            (0..6).map(|x| (6 - x) % 6).collect(),
        ]);
        semidirect_product(&c6, &c2, &inversion).unwrap()
    }

    #[test]
    fn connected_retract_example() {
        let g = d6_semidirect();
        let l = parse_subset(&g, "(g,e)").unwrap();
        let r = parse_subset(&g, "(g^2,e), (e,g)").unwrap();
        let rep = retract_reduction_check(&Instance::new(&g, l, r)).unwrap();
        assert!(rep.connected && rep.image_connected && rep.kernel_within_one);
        assert!(rep.record("retract").pass);
    }

    #[test]
    fn disconnected_retract_example() {
        let g = d6_semidirect();
        // tau sigma^i is the pair (g^-i, g)
        let l = parse_subset(&g, "(e,g), (g,g)").unwrap();
        let r = parse_subset(&g, "(g^5,g), (g^4,g)").unwrap();
        let rep = retract_reduction_check(&Instance::new(&g, l, r)).unwrap();
        assert!(!rep.connected && !rep.image_connected && rep.kernel_within_one);
        assert_eq!(rep.image_isolated, vec!["e", "g"]);
        assert_eq!(rep.image_loops, vec!["e", "g"]);
        assert!(rep.record("retract").pass);
    }

    #[test]
    fn missing_retraction() {
        let d6 = make_dihedral(6).unwrap();
        let s = parse_subset(&d6, "s").unwrap();
        assert!(matches!(
            retract_reduction_check(&Instance::new(&d6, s.clone(), s)),
            Err(Error::MissingRetraction)
        ));
    }

    #[test]
    fn quotient_examples() {
        let d6 = make_dihedral(6).unwrap();
        let n = crate::group::closure(&d6, &parse_subset(&d6, "s").unwrap());
        let i = Instance::new(
            &d6,
            parse_subset(&d6, "s").unwrap(),
            parse_subset(&d6, "s^2, t").unwrap(),
        );
        let rep = quotient_reduction_check(&i, &n).unwrap();
        assert!(rep.connected && rep.record("quotient").pass);

        let whole = ElementSubset::whole(&d6);
        let rep = quotient_reduction_check(&i, &whole).unwrap();
        assert!(rep.image_connected && rep.record("quotient").pass);

        let c6 = make_cyclic(6).unwrap();
        let n = parse_subset(&c6, "e, g^3").unwrap();
        let g1 = parse_subset(&c6, "g").unwrap();
        let i = Instance::new(&c6, g1.clone(), g1);
        let rep = quotient_reduction_check(&i, &n).unwrap();
        assert!(!rep.connected && !rep.image_connected);
        assert_eq!(rep.image_isolated.len(), 3);
        assert!(rep.record("quotient").pass);

        let not_normal = parse_subset(&d6, "e, t").unwrap();
        assert!(quotient_reduction_check(&i_d6(&d6), &not_normal).is_err());
    }

    fn i_d6(d6: &FiniteGroup) -> Instance<'_> {
        let s = parse_subset(d6, "s").unwrap();
        Instance::new(d6, s.clone(), s)
    }
}
