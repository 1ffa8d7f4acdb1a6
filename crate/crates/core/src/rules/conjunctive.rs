use crate::error::{Error, Result};
use crate::lattice::{Element, Model};
use crate::mass::{check_model, shared_frame, Bba, MassMap};
use crate::rules::{add_mass, for_each_tuple, meet_all};
use crate::scalar::{self, Scalar};

/// One combination of focal elements whose meet is empty under the model.
#[derive(Clone, Debug, PartialEq)]
pub struct ConflictEntry<T> {
    pub tuple: Vec<Element>,
    pub mass: T,
}

/// Conjunctive consensus over non-empty reduced elements plus the conflict.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjunctiveOutcome<T> {
    pub consensus: MassMap<T>,
    pub k: T,
    pub conflict_ledger: Vec<ConflictEntry<T>>,
}

/// Running product-level conjunctive consensus, never normalized.
///
/// Each absorbed source multiplies every stored mass by each of its focal
/// masses; products whose meet is empty under the model go to `k`.
/// Intermediate results are reduced as they go, which is sound because
/// reduction commutes with meet.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct ConsensusAccumulator<T> {
    pub(crate) consensus: MassMap<T>,
    pub(crate) k: T,
    pub(crate) sources: usize,
}

impl<T: Scalar> ConsensusAccumulator<T> {
    pub(crate) fn new() -> Self {
        Self { consensus: MassMap::new(), k: T::zero(), sources: 0 }
    }

    pub(crate) fn absorb(&mut self, source: &Bba<T>, model: &Model) {
        let mut next = MassMap::new();
        let mut conflict = T::zero();
        if self.sources == 0 {
            for (x, m) in source.focal() {
                if model.is_empty_raw(x) {
                    conflict = conflict + m.clone();
                } else {
                    add_mass(&mut next, model.reduce_raw(x), m.clone());
                }
            }
        } else {
            for (acc, a) in &self.consensus {
                for (x, m) in source.focal() {
                    let meet = acc.meet_raw(x);
                    let product = a.clone() * m.clone();
                    if model.is_empty_raw(&meet) {
                        conflict = conflict + product;
                    } else {
                        add_mass(&mut next, model.reduce_raw(&meet), product);
                    }
                }
            }
            // conflict already recorded persists whatever the new source says
            conflict = self.k.clone() * source.total() + conflict;
        }
        next.retain(|_, m| !m.is_zero());
        self.consensus = next;
        self.k = conflict;
        self.sources += 1;
    }
}

/// Conjunctive consensus of `N ≥ 2` sources under `model`.
///
/// Masses landing on equivalent elements are merged. Mass already placed on
/// `∅` or on model-empty elements by open-world sources counts as conflict.
pub fn conjunctive<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<ConjunctiveOutcome<T>> {
    let frame = shared_frame(sources, 2)?;
    check_model(frame, model)?;
    if sources.len() < 2 {
        return Err(Error::TooFewSources { needed: 2, got: sources.len() });
    }
    let mut acc = ConsensusAccumulator::new();
    for s in sources {
        acc.absorb(s, model);
    }
    let mut ledger = Vec::new();
    for_each_tuple(sources, |tuple, product| {
        if model.is_empty_raw(&meet_all(tuple)) && !product.is_zero() {
            ledger.push(ConflictEntry { tuple: tuple.iter().map(|&x| x.clone()).collect(), mass: product });
        }
    });
    Ok(ConjunctiveOutcome { consensus: acc.consensus, k: acc.k, conflict_ledger: ledger })
}

impl<T: Scalar> ConjunctiveOutcome<T> {
    pub fn consensus_total(&self) -> T {
        scalar::sum(self.consensus.values())
    }

    pub fn ledger_total(&self) -> T {
        scalar::sum(self.conflict_ledger.iter().map(|e| &e.mass))
    }
}
