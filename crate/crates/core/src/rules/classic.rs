use crate::error::{Error, Result};
use crate::lattice::Model;
use crate::mass::{average, check_model, shared_frame, Bba, MassMap};
use crate::rules::{add_mass, conjunctive, for_each_tuple, join_all, meet_all, route, CombinationResult};
use crate::scalar::Scalar;

/// `|1 - k|` at or below this is treated as total conflict by Dempster's rule.
pub const TOTAL_CONFLICT_TOLERANCE: f64 = 1e-12;

fn require_closed_world<T: Scalar>(rule: &'static str, sources: &[Bba<T>]) -> Result<()> {
    let has_empty_mass = sources.iter().any(|s| !s.mass(&s.frame().empty_element()).is_zero());
    if has_empty_mass {
        return Err(Error::ClosedWorldRequired(rule));
    }
    Ok(())
}

/// Disjunctive consensus: each product goes to the join of its tuple.
pub fn disjunctive<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    let frame = shared_frame(sources, 2)?;
    check_model(frame, model)?;
    require_closed_world("disjunctive", sources)?;
    let mut out = MassMap::new();
    for_each_tuple(sources, |tuple, product| {
        add_mass(&mut out, route(model, &join_all(tuple)), product);
    });
    Ok(CombinationResult::new(model, out, None, MassMap::new()))
}

/// Dempster's rule: the consensus renormalized by `1 - k`, computed as the
/// consensus total.
pub fn dempster<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    let conj = conjunctive(sources, model)?;
    let denom = conj.consensus_total();
    if denom.abs() <= T::tolerance(TOTAL_CONFLICT_TOLERANCE) {
        return Err(Error::TotalConflict { k: conj.k.as_f64() });
    }
    let masses = conj.consensus.into_iter().map(|(x, m)| (x, m / denom.clone())).collect();
    Ok(CombinationResult::new(model, masses, Some(conj.k), MassMap::new()))
}

/// Smets' rule: the unnormalized consensus with `m(∅) = k`.
pub fn smets<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    let conj = conjunctive(sources, model)?;
    let mut masses = conj.consensus;
    let empty = model.frame().empty_element();
    add_mass(&mut masses, empty.clone(), conj.k.clone());
    let transfers = [(empty, conj.k.clone())].into_iter().collect();
    Ok(CombinationResult::new(model, masses, Some(conj.k), transfers))
}

/// Yager's rule: the conflict is added to total ignorance.
pub fn yager<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    require_closed_world("yager", sources)?;
    let conj = conjunctive(sources, model)?;
    let mut masses = conj.consensus;
    let target = route(model, &model.frame().total_ignorance());
    add_mass(&mut masses, target.clone(), conj.k.clone());
    let transfers = [(target, conj.k.clone())].into_iter().collect();
    Ok(CombinationResult::new(model, masses, Some(conj.k), transfers))
}

/// Dubois & Prade's rule for two sources: conflicting products go to the
/// union of the pair instead of being discarded.
pub fn dubois_prade<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    if sources.len() != 2 {
        return Err(Error::UnsupportedArity { rule: "dubois_prade", arity: 2, got: sources.len() });
    }
    let frame = shared_frame(sources, 2)?;
    check_model(frame, model)?;
    require_closed_world("dubois_prade", sources)?;
    let mut out = MassMap::new();
    let mut transfers = MassMap::new();
    let mut k = T::zero();
    for_each_tuple(sources, |tuple, product| {
        let meet = meet_all(tuple);
        if model.is_empty_raw(&meet) {
            let target = route(model, &join_all(tuple));
            k = k.clone() + product.clone();
            add_mass(&mut transfers, target.clone(), product.clone());
            add_mass(&mut out, target, product);
        } else {
            add_mass(&mut out, model.reduce_raw(&meet), product);
        }
    });
    Ok(CombinationResult::new(model, out, Some(k), transfers))
}

/// Murphy's rule: arithmetic mean of the sources.
pub fn murphy<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<CombinationResult<T>> {
    let frame = shared_frame(sources, 1)?;
    check_model(frame, model)?;
    let mean = average(sources)?;
    Ok(CombinationResult::new(model, mean.into_masses(), None, MassMap::new()))
}
