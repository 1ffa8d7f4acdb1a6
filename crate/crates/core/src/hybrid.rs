//! Hybrid DSm rule of combination.
//!
//! Every tuple of focal elements (one per source) falls in exactly one of
//! three parts:
//!
//! - `S1`: the meet survives the model; the product goes to its reduced form.
//! - `S2`: every member is forced empty; the product goes to the union `U` of
//!   the hypotheses named by the members, else to total ignorance, else `∅`.
//! - `S3`: the meet is empty but some member is not; the product goes to the
//!   reduced join of the tuple, else to total ignorance, else `∅`.

use crate::error::{Error, Result};
use crate::lattice::{Element, Model};
use crate::mass::{check_model, shared_frame, Bba, MassMap};
use crate::rules::{add_mass, for_each_tuple, join_all, meet_all, route, CombinationResult};
use crate::scalar::{self, Scalar};

/// Contribution of each part of the rule, keyed by target element.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridBreakdown<T> {
    pub s1: MassMap<T>,
    pub s2: MassMap<T>,
    pub s3: MassMap<T>,
}

impl<T: Scalar> HybridBreakdown<T> {
    pub fn total(&self) -> T {
        scalar::sum(self.s1.values().chain(self.s2.values()).chain(self.s3.values()))
    }
}

/// Target of an all-empty tuple.
pub fn s2_target(tuple: &[Element], model: &Model) -> Result<Element> {
    for x in tuple {
        check_model_element(model, x)?;
        if !model.is_empty_raw(x) {
            return Err(Error::Precondition("every member of an S2 tuple must be empty under the model"));
        }
    }
    let refs: Vec<&Element> = tuple.iter().collect();
    Ok(s2_route(&refs, model))
}

fn check_model_element(model: &Model, x: &Element) -> Result<()> {
    model.is_empty(x).map(|_| ())
}

fn s2_route(tuple: &[&Element], model: &Model) -> Element {
    let u = tuple
        .iter()
        .filter(|x| !x.is_bottom())
        .map(|x| x.u_of_raw())
        .reduce(|a, b| a.join_raw(&b));
    match u {
        Some(u) => route(model, &u),
        None => route(model, &model.frame().total_ignorance()),
    }
}

/// Hybrid DSm combination of `N ≥ 2` sources.
pub fn hybrid_combine<T: Scalar>(
    sources: &[Bba<T>],
    model: &Model,
) -> Result<(CombinationResult<T>, HybridBreakdown<T>)> {
    let frame = shared_frame(sources, 2)?;
    check_model(frame, model)?;
    let mut parts = HybridBreakdown { s1: MassMap::new(), s2: MassMap::new(), s3: MassMap::new() };
    let mut k = T::zero();
    for_each_tuple(sources, |tuple, product| {
        let meet = meet_all(tuple);
        if !model.is_empty_raw(&meet) {
            add_mass(&mut parts.s1, model.reduce_raw(&meet), product);
            return;
        }
        k = k.clone() + product.clone();
        if tuple.iter().all(|x| model.is_empty_raw(x)) {
            add_mass(&mut parts.s2, s2_route(tuple, model), product);
        } else {
            add_mass(&mut parts.s3, route(model, &join_all(tuple)), product);
        }
    });
    for part in [&mut parts.s1, &mut parts.s2, &mut parts.s3] {
        part.retain(|_, m| !m.is_zero());
    }
    let mut masses = parts.s1.clone();
    let mut transfers = MassMap::new();
    for (x, m) in parts.s2.iter().chain(&parts.s3) {
        add_mass(&mut transfers, x.clone(), m.clone());
        add_mass(&mut masses, x.clone(), m.clone());
    }
    Ok((CombinationResult::new(model, masses, Some(k), transfers), parts))
}
