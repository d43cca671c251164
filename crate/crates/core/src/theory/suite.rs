use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    burnside_component_count, component_count_theorem, coset_connection_lengths,
    factorization_check, min_connection_length, normalizer_condition, theorem_strong_connectivity,
    CheckRecord, Instance, VerificationReport,
};
use crate::connectivity::digraphs_isomorphic;
use crate::error::{Error, Result};
use crate::group::{
    make_alternating, make_cyclic, make_dihedral, make_symmetric, ElementSubset, FiniteGroup,
};

/// Upper bound accepted for `max_order`.
pub const SUITE_MAX_ORDER: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: usize,
    pub max_order: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            instances: 200,
            max_order: 24,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceOutcome {
    pub index: usize,
    pub group: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub pass: bool,
    pub records: VerificationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub passed: usize,
    pub total: usize,
    pub outcomes: Vec<InstanceOutcome>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }

    /// Pass and total counts per check family, keyed by name without the
    /// bracketed qualifier.
    pub fn summary(&self) -> BTreeMap<String, (usize, usize)> {
        let mut table = BTreeMap::new();
        for rec in self.outcomes.iter().flat_map(|o| &o.records.records) {
            let family = rec
                .check
                .split('[')
                .next()
                .unwrap_or(&rec.check)
                .to_string();
            let entry = table.entry(family).or_insert((0, 0));
            entry.0 += rec.pass as usize;
            entry.1 += 1;
        }
        table
    }
}

/// Groups the suite draws from: `C_n` for `n ≤ 12`, `D_n` for `n ≤ 10`,
/// `S_3`, `S_4` and `A_4`, restricted to order at most `max_order`.
fn group_pool(max_order: usize) -> Result<Vec<FiniteGroup>> {
    let mut pool = Vec::new();
    for n in 1..=12 {
        pool.push(make_cyclic(n)?);
    }
    for n in 1..=10 {
        pool.push(make_dihedral(n)?);
    }
    pool.push(make_symmetric(3)?);
    pool.push(make_symmetric(4)?);
    pool.push(make_alternating(4)?);
    pool.retain(|g| g.order() <= max_order);
    Ok(pool)
}

fn random_subset(rng: &mut ChaCha8Rng, group: &FiniteGroup) -> ElementSubset {
    let n = group.order();
    let size = rng.gen_range(1..=n.min(4));
    ElementSubset::new(group, sample(rng, n, size)).expect("nonempty in-range sample")
}

fn labels(group: &FiniteGroup, s: &ElementSubset) -> Vec<String> {
    s.iter().map(|x| group.label(x).to_string()).collect()
}

fn push_result(report: &mut VerificationReport, check: &str, res: Result<VerificationReport>) {
    match res {
        Ok(r) => report.extend(r),
        Err(e) => report.push(CheckRecord::error(check, e)),
    }
}

/// Every theorem checker on one instance.
pub fn check_instance(inst: &Instance<'_>) -> VerificationReport {
    let g = inst.group;
    let mut report = VerificationReport::new();
    let scc = inst.strong.len();

    match theorem_strong_connectivity(inst) {
        Ok(t) => report.push(t.record(g)),
        Err(e) => report.push(CheckRecord::error("strong_connectivity_criterion", e)),
    }
    report.push(CheckRecord::compare(
        "weak_equals_strong",
        true,
        inst.weak == inst.strong,
        None,
    ));

    match coset_connection_lengths(inst) {
        Ok(lengths) => {
            report.push(CheckRecord::compare(
                "k_generator_independence",
                true,
                true,
                None,
            ));
            report.push(CheckRecord::compare(
                "total_components[strong]",
                lengths.predicted_components,
                scc,
                None,
            ));
            report.push(CheckRecord::compare(
                "total_components[weak]",
                lengths.predicted_components,
                inst.weak.len(),
                None,
            ));
            for c in &lengths.per_coset {
                report.extend(c.records(g));
            }
            if normalizer_condition(g, &inst.left, &inst.right) {
                for c in &lengths.per_coset {
                    let first = inst.strong.component(c.component_ids[0]);
                    let iso = c.component_ids[1..].iter().try_fold(true, |acc, &id| {
                        Ok::<_, Error>(
                            acc && digraphs_isomorphic(
                                &inst.digraph,
                                first,
                                &inst.digraph,
                                inst.strong.component(id),
                            )?,
                        )
                    });
                    let name = format!("normalizer_isomorphism[{}]", g.label(c.representative));
                    report.push(match iso {
                        Ok(iso) => CheckRecord::compare(name, true, iso, None),
                        Err(e) => CheckRecord::error(name, e),
                    });
                }
            }
        }
        Err(e) => report.push(CheckRecord::error("k_generator_independence", e)),
    }

    match burnside_component_count(g, &inst.left, &inst.right) {
        Ok(b) => {
            report.push(CheckRecord::compare(
                "burnside_count",
                b.count,
                scc,
                Some(format!("|U|={}, fixed={}", b.u_order, b.fixed_point_sum)),
            ));
            report.push(CheckRecord::compare(
                "u_subgroup",
                true,
                b.u_contains_identity && b.u_inverse_closed,
                None,
            ));
        }
        Err(e) => report.push(CheckRecord::error("burnside_count", e)),
    }

    match factorization_check(g, &inst.left, &inst.right) {
        Ok(true) => push_result(
            &mut report,
            "component_count",
            component_count_theorem(inst),
        ),
        Ok(false) => report.push(CheckRecord::compare(
            "global_k_gated",
            true,
            matches!(min_connection_length(inst), Err(Error::HypothesisNotMet(_))),
            None,
        )),
        Err(e) => report.push(CheckRecord::error("factorization", e)),
    }
    report
}

/// Runs the randomized suite. Instance `i` draws from its own ChaCha8 stream
/// `(seed, i)`, so results do not depend on scheduling.
pub fn run_suite(config: SuiteConfig) -> Result<SuiteReport> {
    if config.instances == 0 {
        return Err(Error::InvalidParameter(
            "instances must be at least 1".into(),
        ));
    }
    if config.max_order > SUITE_MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "max order {} exceeds {SUITE_MAX_ORDER}",
            config.max_order
        )));
    }
    let pool = group_pool(config.max_order)?;
    if pool.is_empty() {
        return Err(Error::InvalidParameter(
            "max order must be at least 1".into(),
        ));
    }
    let outcomes: Vec<InstanceOutcome> = (0..config.instances)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(index as u64);
            let group = &pool[rng.gen_range(0..pool.len())];
            let left = random_subset(&mut rng, group);
            let right = random_subset(&mut rng, group);
            let (l_names, r_names) = (labels(group, &left), labels(group, &right));
            let inst = Instance::new(group, left, right);
            let records = check_instance(&inst);
            InstanceOutcome {
                index,
                group: group.name().to_string(),
                left: l_names,
                right: r_names,
                pass: records.all_pass(),
                records,
            }
        })
        .collect();
    Ok(SuiteReport {
        config,
        passed: outcomes.iter().filter(|o| o.pass).count(),
        total: outcomes.len(),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig {
            seed: 3,
            instances: 20,
            max_order: 12,
        };
        let a = run_suite(cfg).unwrap();
        let b = run_suite(cfg).unwrap();
        if let Some(o) = a.outcomes.iter().find(|o| !o.pass) {
            panic!(
                "{} {:?} {:?}\n{}",
                o.group,
                o.left,
                o.right,
                o.records.render_text()
            );
        }
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn trivial_group_instance() {
        let r = run_suite(SuiteConfig {
            seed: 7,
            instances: 1,
            max_order: 1,
        })
        .unwrap();
        assert_eq!(r.outcomes[0].group, "C1");
        assert!(r.all_pass());
    }

    #[test]
    fn parameter_validation() {
        let bad = |instances, max_order| {
            run_suite(SuiteConfig {
                seed: 0,
                instances,
                max_order,
            })
            .is_err()
        };
        assert!(bad(0, 24));
        assert!(bad(1, 61));
        assert!(bad(1, 0));
    }
}
