//! Executable forms of the structural results on two-sided group digraphs,
//! each paired with a brute-force oracle computed from the digraph itself.

mod burnside;
mod lengths;
mod reduction;
mod report;
mod suite;
mod words;

pub use burnside::{
    burnside_component_count, delta_correspondence_check, BurnsideReport, BURNSIDE_ORDER_LIMIT,
    DELTA_ORDER_LIMIT,
};
pub use lengths::{
    component_count_theorem, coset_connection_lengths, min_connection_length, normalizer_condition,
    total_component_prediction, ConnectionLengthReport, CosetLength,
};
pub use reduction::{quotient_reduction_check, retract_reduction_check, ReductionReport};
pub use report::{CheckRecord, VerificationReport};
pub use suite::{
    check_instance, run_suite, InstanceOutcome, SuiteConfig, SuiteReport, SUITE_MAX_ORDER,
};
pub use words::{
    factorization_check, identity_offset_witness, theorem_strong_connectivity, OffsetWitness,
    TheoremCheck, WordLengthState,
};

use crate::connectivity::{strong_components, weak_components, Partition};
use crate::digraph::{build_two_sided, TwoSidedDigraph};
use crate::error::{Error, Result};
use crate::group::{ElementSubset, FiniteGroup};

/// A built instance `2S(G; L, R)` with both component partitions.
#[derive(Debug, Clone)]
pub struct Instance<'g> {
    pub group: &'g FiniteGroup,
    pub left: ElementSubset,
    pub right: ElementSubset,
    pub digraph: TwoSidedDigraph<'g>,
    pub strong: Partition,
    pub weak: Partition,
}

impl<'g> Instance<'g> {
    pub fn new(group: &'g FiniteGroup, left: ElementSubset, right: ElementSubset) -> Self {
        let digraph = build_two_sided(group, &left, &right);
        let strong = strong_components(&digraph);
        let weak = weak_components(&digraph);
        Instance {
            group,
            left,
            right,
            digraph,
            strong,
            weak,
        }
    }

    /// Both partitions, labelled, for checks that run on each.
    pub(crate) fn partitions(&self) -> [(&'static str, &Partition); 2] {
        [("weak", &self.weak), ("strong", &self.strong)]
    }

    /// The strong partition, after confirming it equals the weak one.
    pub fn components(&self) -> Result<&Partition> {
        if self.strong != self.weak {
            return Err(Error::Inconsistency(
                "weak and strong partitions differ on a finite group".into(),
            ));
        }
        Ok(&self.strong)
    }
}
