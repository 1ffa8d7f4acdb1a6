//! Proportional conflict redistribution, first version (PCR1).
//!
//! The conflict `k` is split among the surviving elements in proportion to
//! their column sums `c(X) = Σ_i m_i(X)` in the mass matrix:
//!
//! ```text
//! m(X) = m∩(X) + c(X) · k / d,        d = Σ_X c(X)
//! ```
//!
//! Elements with a zero column receive nothing. When every surviving column
//! is zero (all focal mass sits on elements the model forces empty), the
//! whole conflict goes to the union of the hypotheses named by the focal
//! elements, or to `∅` if the model empties that union too.
//!
//! [`FusionState`] keeps the unnormalized consensus and the running column
//! sums, so sources can be folded in one at a time and the finalized result
//! matches the batch combination. Re-combining a finalized PCR1 result with
//! a new source does not (the rule is not associative).

use crate::error::{Error, Result};
use crate::lattice::{Element, Model};
use crate::mass::{check_model, shared_frame, Bba, ColumnSums, MassMap};
use crate::rules::{add_mass, CombinationResult, ConsensusAccumulator};
use crate::scalar::Scalar;

/// PCR1 combination of `N ≥ 2` sources under `model`.
pub fn pcr1_combine<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    let frame = shared_frame(sources, 2)?;
    check_model(frame, model)?;
    let mut state = FusionState::new(model.clone());
    for s in sources {
        state.absorb_in_place(s)?;
    }
    state.finalize()
}

/// Target of the conflict when no surviving column has mass.
pub(crate) fn degenerate_target<'a>(model: &Model, focal: impl IntoIterator<Item = &'a Element>) -> Element {
    let empty = model.frame().empty_element();
    let span = focal
        .into_iter()
        .filter(|x| !x.is_bottom())
        .map(Element::u_of_raw)
        .reduce(|a, b| a.join_raw(&b));
    match span {
        Some(u) if !model.is_empty_raw(&u) => model.reduce_raw(&u),
        _ => empty,
    }
}

/// Quasi-associative PCR1 accumulator: the running conjunctive consensus
/// (with its conflict) and the running column sums.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionState<T> {
    model: Model,
    consensus: ConsensusAccumulator<T>,
    sums: ColumnSums<T>,
    /// Join of `u(X)` over every non-empty focal element seen so far.
    span: Option<Element>,
}

impl<T: Scalar> FusionState<T> {
    pub fn new(model: Model) -> Self {
        Self { model, consensus: ConsensusAccumulator::new(), sums: ColumnSums::empty(), span: None }
    }

    /// Returns the state after absorbing `next`.
    pub fn absorb(&self, next: &Bba<T>) -> Result<Self> {
        let mut state = self.clone();
        state.absorb_in_place(next)?;
        Ok(state)
    }

    pub fn absorb_in_place(&mut self, next: &Bba<T>) -> Result<()> {
        check_model(next.frame(), &self.model)?;
        self.consensus.absorb(next, &self.model);
        self.sums.absorb(next, &self.model);
        for (x, _) in next.focal().filter(|(x, _)| !x.is_bottom()) {
            let u = x.u_of_raw();
            self.span = Some(match self.span.take() {
                Some(s) => s.join_raw(&u),
                None => u,
            });
        }
        Ok(())
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn n_sources(&self) -> usize {
        self.consensus.sources
    }

    /// Unnormalized consensus accumulated so far.
    pub fn consensus(&self) -> &MassMap<T> {
        &self.consensus.consensus
    }

    pub fn k(&self) -> &T {
        &self.consensus.k
    }

    pub fn column_sums(&self) -> &ColumnSums<T> {
        &self.sums
    }

    /// Applies the proportional redistribution to the running quantities.
    pub fn finalize(&self) -> Result<CombinationResult<T>> {
        if self.n_sources() == 0 {
            return Err(Error::TooFewSources { needed: 1, got: 0 });
        }
        let k = self.consensus.k.clone();
        let mut masses = self.consensus.consensus.clone();
        let mut transfers = MassMap::new();
        if self.sums.d > T::zero() {
            for (x, c) in &self.sums.c {
                let share = c.clone() * k.clone() / self.sums.d.clone();
                add_mass(&mut transfers, x.clone(), share.clone());
                add_mass(&mut masses, x.clone(), share);
            }
        } else if !k.is_zero() {
            let target = match &self.span {
                Some(u) if !self.model.is_empty_raw(u) => self.model.reduce_raw(u),
                _ => self.model.frame().empty_element(),
            };
            add_mass(&mut transfers, target.clone(), k.clone());
            add_mass(&mut masses, target, k.clone());
        }
        Ok(CombinationResult::new(&self.model, masses, Some(k), transfers))
    }
}

/// Sequential WAO accumulator: consensus, running mean of every element,
/// and the number of sources needed to update that mean.
#[derive(Clone, Debug, PartialEq)]
pub struct WaoState<T> {
    model: Model,
    consensus: ConsensusAccumulator<T>,
    averages: MassMap<T>,
}

impl<T: Scalar> WaoState<T> {
    pub fn new(model: Model) -> Self {
        Self { model, consensus: ConsensusAccumulator::new(), averages: MassMap::new() }
    }

    pub fn absorb(&self, next: &Bba<T>) -> Result<Self> {
        let mut state = self.clone();
        state.absorb_in_place(next)?;
        Ok(state)
    }

    /// `avg ← (n·avg + m_next) / (n + 1)` for every element.
    pub fn absorb_in_place(&mut self, next: &Bba<T>) -> Result<()> {
        check_model(next.frame(), &self.model)?;
        let n = T::from_usize(self.consensus.sources).expect("source count fits the scalar type");
        let n1 = n.clone() + T::one();
        let mut keys: Vec<Element> = self.averages.keys().cloned().collect();
        keys.extend(next.focal().map(|(x, _)| x.clone()));
        keys.sort();
        keys.dedup();
        self.averages = keys
            .into_iter()
            .map(|x| {
                let old = self.averages.get(&x).cloned().unwrap_or_else(T::zero);
                let value = (n.clone() * old + next.mass(&x)) / n1.clone();
                (x, value)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.consensus.absorb(next, &self.model);
        Ok(())
    }

    pub fn n_sources(&self) -> usize {
        self.consensus.sources
    }

    pub fn average(&self, x: &Element) -> T {
        self.averages.get(x).cloned().unwrap_or_else(T::zero)
    }

    pub fn averages(&self) -> &MassMap<T> {
        &self.averages
    }

    pub fn finalize(&self) -> Result<CombinationResult<T>> {
        if self.n_sources() == 0 {
            return Err(Error::TooFewSources { needed: 1, got: 0 });
        }
        let k = self.consensus.k.clone();
        let mut masses = self.consensus.consensus.clone();
        let mut transfers = MassMap::new();
        for (x, w) in &self.averages {
            if x.is_bottom() || self.model.is_empty_raw(x) {
                continue;
            }
            let share = w.clone() * k.clone();
            let target = self.model.reduce_raw(x);
            add_mass(&mut transfers, target.clone(), share.clone());
            add_mass(&mut masses, target, share);
        }
        Ok(CombinationResult::new(&self.model, masses, Some(k), transfers))
    }
}
