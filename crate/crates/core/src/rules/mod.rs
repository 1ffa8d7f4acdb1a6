//! Classic combination rules and the weighted-operator family.

mod classic;
mod conjunctive;
mod weighted;

pub use classic::{dempster, disjunctive, dubois_prade, murphy, smets, yager, TOTAL_CONFLICT_TOLERANCE};
pub use conjunctive::{conjunctive, ConflictEntry, ConjunctiveOutcome};
pub use weighted::{wao_combine, wao_combine_extended, wao_weights, wo_combine, WeightVector, WEIGHT_TOLERANCE};

pub(crate) use conjunctive::ConsensusAccumulator;

use crate::error::Result;
use crate::lattice::{Element, Frame, Model};
use crate::mass::{validate, Bba, MassAudit, MassMap, MASS_TOLERANCE};
use crate::scalar::Scalar;

/// Output of a combination rule together with its diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct CombinationResult<T> {
    pub frame: Frame,
    /// Combined masses; `∅` appears only for open-world outcomes.
    pub masses: MassMap<T>,
    /// Total conflicting mass, when the rule is built on the conjunctive
    /// consensus.
    pub k: Option<T>,
    /// Share of the conflict moved onto each element.
    pub transfers: MassMap<T>,
    pub audit: MassAudit<T>,
}

impl<T: Scalar> CombinationResult<T> {
    pub(crate) fn new(model: &Model, masses: MassMap<T>, k: Option<T>, transfers: MassMap<T>) -> Self {
        let mut masses = masses;
        masses.retain(|_, m| !m.is_zero());
        let audit = validate(&masses, model, MASS_TOLERANCE);
        Self { frame: model.frame().clone(), masses, k, transfers, audit }
    }

    pub fn mass(&self, x: &Element) -> T {
        self.masses.get(x).cloned().unwrap_or_else(T::zero)
    }

    /// Mass on `∅`.
    pub fn empty_mass(&self) -> T {
        self.mass(&self.frame.empty_element())
    }

    pub fn total(&self) -> T {
        self.audit.sum.clone()
    }

    /// Re-validates the output as an assignment, e.g. to feed it to another
    /// combination. Fails when the mass sum is off (degenerate WAO).
    pub fn to_bba(&self) -> Result<Bba<T>> {
        let open = self.masses.contains_key(&self.frame.empty_element());
        Bba::with_tolerance(
            self.frame.clone(),
            self.masses.iter().map(|(e, m)| (e.clone(), m.clone())),
            open,
            MASS_TOLERANCE,
        )
    }
}

pub(crate) fn add_mass<T: Scalar>(map: &mut MassMap<T>, x: Element, m: T) {
    let slot = map.entry(x).or_insert_with(T::zero);
    *slot = slot.clone() + m;
}

/// Where mass aimed at `target` ends up under the model: its reduced form if
/// it survives, otherwise total ignorance, otherwise `∅`.
pub(crate) fn route(model: &Model, target: &Element) -> Element {
    if !model.is_empty_raw(target) {
        model.reduce_raw(target)
    } else {
        model.reduced_ignorance().unwrap_or_else(|| model.frame().empty_element())
    }
}

/// Calls `f` for every tuple of focal elements, one per source, with the
/// product of their masses.
pub(crate) fn for_each_tuple<T: Scalar>(sources: &[Bba<T>], mut f: impl FnMut(&[&Element], T)) {
    let focal: Vec<Vec<(&Element, &T)>> = sources.iter().map(|s| s.focal().collect()).collect();
    if focal.iter().any(Vec::is_empty) {
        return;
    }
    let mut index = vec![0usize; focal.len()];
    let mut tuple: Vec<&Element> = Vec::with_capacity(focal.len());
    loop {
        tuple.clear();
        let mut product = T::one();
        for (column, &i) in focal.iter().zip(&index) {
            tuple.push(column[i].0);
            product = product * column[i].1.clone();
        }
        f(&tuple, product);

        let mut pos = focal.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < focal[pos].len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

pub(crate) fn meet_all(tuple: &[&Element]) -> Element {
    let mut acc = tuple[0].clone();
    for x in &tuple[1..] {
        acc = acc.meet_raw(x);
    }
    acc
}

pub(crate) fn join_all(tuple: &[&Element]) -> Element {
    let mut acc = tuple[0].clone();
    for x in &tuple[1..] {
        acc = acc.join_raw(x);
    }
    acc
}
