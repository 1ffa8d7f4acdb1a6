//! The weighted operator (WO): consensus plus a convex reallocation of the
//! conflict, `m(X) = m∩(X) + w(X)·k` and `m(∅) = w(∅)·k`. Particular weight
//! choices give Smets, Yager, Dempster, WAO and PCR1.

use crate::error::{Error, Result};
use crate::lattice::{Element, Frame, Model};
use crate::mass::{check_model, shared_frame, Bba, MassMap};
use crate::pcr1::degenerate_target;
use crate::rules::{add_mass, conjunctive, CombinationResult};
use crate::scalar::{self, Scalar};

/// Tolerance on the sum of a weight vector.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;

/// Reallocation weights, `∅` included.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector<T> {
    frame: Frame,
    weights: MassMap<T>,
}

impl<T: Scalar> WeightVector<T> {
    /// Weights must be in `[0, 1]` and sum to one.
    pub fn new(frame: Frame, weights: impl IntoIterator<Item = (Element, T)>) -> Result<Self> {
        let mut map = MassMap::new();
        for (x, w) in weights {
            frame.check(&x)?;
            if w < T::zero() || w > T::one() {
                return Err(Error::WeightSum { sum: w.as_f64() });
            }
            add_mass(&mut map, x, w);
        }
        let sum = scalar::sum(map.values());
        if !sum.approx_eq(&T::one(), WEIGHT_TOLERANCE) {
            return Err(Error::WeightSum { sum: sum.as_f64() });
        }
        map.retain(|_, w| !w.is_zero());
        Ok(Self { frame, weights: map })
    }

    /// No sum check: WAO weights lose whatever sat on empty elements.
    pub(crate) fn unchecked(frame: Frame, mut weights: MassMap<T>) -> Self {
        weights.retain(|_, w| !w.is_zero());
        Self { frame, weights }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn weights(&self) -> &MassMap<T> {
        &self.weights
    }

    pub fn weight(&self, x: &Element) -> T {
        self.weights.get(x).cloned().unwrap_or_else(T::zero)
    }

    pub fn total(&self) -> T {
        scalar::sum(self.weights.values())
    }
}

/// Applies the weighted operator with explicit weights.
///
/// Weight aimed at an element the model forces empty is dropped, which is
/// what makes WAO lose mass in degenerate cases.
pub fn wo_combine<T: Scalar>(
    sources: &[Bba<T>],
    model: &Model,
    weights: &WeightVector<T>,
) -> Result<CombinationResult<T>> {
    check_model(weights.frame(), model)?;
    let conj = conjunctive(sources, model)?;
    let mut masses = conj.consensus;
    let mut transfers = MassMap::new();
    for (x, w) in weights.weights() {
        let share = w.clone() * conj.k.clone();
        if x.is_bottom() {
            add_mass(&mut transfers, x.clone(), share.clone());
            add_mass(&mut masses, x.clone(), share);
        } else if !model.is_empty_raw(x) {
            let target = model.reduce_raw(x);
            add_mass(&mut transfers, target.clone(), share.clone());
            add_mass(&mut masses, target, share);
        }
    }
    Ok(CombinationResult::new(model, masses, Some(conj.k), transfers))
}

/// Weighted-average-operator weights: the mean source mass of every
/// non-empty element that survives the model; `w(∅) = 0`.
pub fn wao_weights<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<WeightVector<T>> {
    let frame = shared_frame(sources, 1)?;
    check_model(frame, model)?;
    let n = T::from_usize(sources.len()).expect("source count fits the scalar type");
    let mut totals = MassMap::new();
    for s in sources {
        for (x, m) in s.focal() {
            if !x.is_bottom() && !model.is_empty_raw(x) {
                add_mass(&mut totals, x.clone(), m.clone());
            }
        }
    }
    let weights = totals.into_iter().map(|(x, t)| (x, t / n.clone())).collect();
    Ok(WeightVector::unchecked(frame.clone(), weights))
}

/// WAO as published. When elements are forced empty or sources carry
/// open-world mass the result sums to less than one; the shortfall shows up
/// in the audit and is not repaired.
pub fn wao_combine<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    let weights = wao_weights(sources, model)?;
    wo_combine(sources, model, &weights)
}

/// WAO with the degenerate-case extension: when no surviving element has
/// any weight, the conflict goes to the disjunctive form of the focal
/// elements, or to `∅` when that form is itself empty. Otherwise identical to
/// [`wao_combine`].
pub fn wao_combine_extended<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    let weights = wao_weights(sources, model)?;
    if !weights.total().is_zero() {
        return wo_combine(sources, model, &weights);
    }
    let conj = conjunctive(sources, model)?;
    let focal: Vec<&Element> = sources.iter().flat_map(|s| s.focal().map(|(x, _)| x)).collect();
    let target = degenerate_target(model, focal);
    let mut masses = conj.consensus;
    add_mass(&mut masses, target.clone(), conj.k.clone());
    let transfers = [(target, conj.k.clone())].into_iter().collect();
    Ok(CombinationResult::new(model, masses, Some(conj.k), transfers))
}
