//! Basic belief assignments and the mass matrix.
//!
//! `bel` and `pl` are evaluated through the lattice order and meet, so they
//! accept hyper-power-set elements as well as ordinary subsets. Under
//! Shafer's model with power-set inputs they reduce to the usual sums over
//! subsets and intersecting sets. The hyper-power-set reading under other
//! models is an extension and should be treated as such.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{Element, Frame, Model};
use crate::scalar::{self, Scalar};

/// Mass per element. Absent elements carry zero mass.
pub type MassMap<T> = BTreeMap<Element, T>;

/// Default tolerance on the total mass of an assignment.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A basic belief assignment over one frame.
///
/// Only focal elements (strictly positive mass) are stored. Closed-world
/// assignments never put mass on `∅`; open-world ones may.
#[derive(Clone, Debug, PartialEq)]
pub struct Bba<T> {
    frame: Frame,
    masses: MassMap<T>,
    open_world: bool,
}

impl<T: Scalar> Bba<T> {
    /// Closed-world assignment.
    pub fn new(frame: Frame, masses: impl IntoIterator<Item = (Element, T)>) -> Result<Self> {
        Self::with_tolerance(frame, masses, false, MASS_TOLERANCE)
    }

    /// Assignment that may put mass on `∅`.
    pub fn open_world(frame: Frame, masses: impl IntoIterator<Item = (Element, T)>) -> Result<Self> {
        Self::with_tolerance(frame, masses, true, MASS_TOLERANCE)
    }

    /// Validating constructor. Repeated elements have their masses added;
    /// zero entries are dropped. No renormalization takes place.
    pub fn with_tolerance(
        frame: Frame,
        masses: impl IntoIterator<Item = (Element, T)>,
        open_world: bool,
        tolerance: f64,
    ) -> Result<Self> {
        let mut map = MassMap::new();
        for (element, mass) in masses {
            frame.check(&element)?;
            let slot = map.entry(element).or_insert_with(T::zero);
            *slot = slot.clone() + mass;
        }
        for (element, mass) in &map {
            if *mass < T::zero() {
                return Err(Error::NegativeMass { element: format!("{element:?}"), mass: mass.as_f64() });
            }
        }
        map.retain(|_, m| !m.is_zero());
        let sum = scalar::sum(map.values());
        if !sum.approx_eq(&T::one(), tolerance) {
            return Err(Error::NotNormalized { sum: sum.as_f64() });
        }
        if !open_world {
            if let Some(m) = map.get(&frame.empty_element()) {
                return Err(Error::EmptySetMass { mass: m.as_f64() });
            }
        }
        Ok(Self { frame, masses: map, open_world })
    }

    /// Rescales arbitrary non-negative masses to sum to one. Never applied
    /// implicitly.
    pub fn normalized(frame: Frame, masses: impl IntoIterator<Item = (Element, T)>, open_world: bool) -> Result<Self> {
        let pairs: Vec<(Element, T)> = masses.into_iter().collect();
        let total = pairs.iter().fold(T::zero(), |acc, (_, m)| acc + m.clone());
        if total.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::NotNormalized { sum: total.as_f64() });
        }
        let scaled = pairs.into_iter().map(|(e, m)| (e, m / total.clone()));
        Self::with_tolerance(frame, scaled, open_world, MASS_TOLERANCE)
    }

    /// `m(I_t) = 1`.
    pub fn vacuous(frame: Frame) -> Self {
        let top = frame.total_ignorance();
        Self { frame, masses: [(top, T::one())].into_iter().collect(), open_world: false }
    }

    /// Wraps already-validated masses.
    pub(crate) fn from_parts(frame: Frame, mut masses: MassMap<T>, open_world: bool) -> Self {
        masses.retain(|_, m| !m.is_zero());
        Self { frame, masses, open_world }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn masses(&self) -> &MassMap<T> {
        &self.masses
    }

    pub fn into_masses(self) -> MassMap<T> {
        self.masses
    }

    pub fn is_open_world(&self) -> bool {
        self.open_world
    }

    pub fn mass(&self, x: &Element) -> T {
        self.masses.get(x).cloned().unwrap_or_else(T::zero)
    }

    /// Focal elements in element order.
    pub fn focal(&self) -> impl Iterator<Item = (&Element, &T)> {
        self.masses.iter()
    }

    pub fn total(&self) -> T {
        scalar::sum(self.masses.values())
    }

    /// `Bel(X) = Σ m(Y)` over non-empty focal `Y ⊆ X`.
    pub fn bel(&self, x: &Element) -> Result<T> {
        self.frame.check(x)?;
        Ok(self
            .masses
            .iter()
            .filter(|(y, _)| !y.is_bottom() && y.leq_raw(x))
            .fold(T::zero(), |acc, (_, m)| acc + m.clone()))
    }

    /// `Pl(X) = Σ m(Y)` over focal `Y` whose meet with `X` survives the model.
    pub fn pl(&self, x: &Element, model: &Model) -> Result<T> {
        self.frame.check(x)?;
        check_model(&self.frame, model)?;
        Ok(self
            .masses
            .iter()
            .filter(|(y, _)| !model.is_empty_raw(&y.meet_raw(x)))
            .fold(T::zero(), |acc, (_, m)| acc + m.clone()))
    }
}

/// Result of checking a mass map against the assignment axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct MassAudit<T> {
    pub sum: T,
    /// `1 - sum`.
    pub deficit: T,
    pub negative: Vec<Element>,
    /// Mass resting on `∅` or on elements the model forces empty.
    pub empty_mass: T,
    pub passed: bool,
}

impl<T: Scalar> MassAudit<T> {
    pub fn has_empty_mass(&self) -> bool {
        self.empty_mass > T::zero()
    }
}

/// Audits raw masses: passes iff the sum is within `tolerance` of one and no
/// entry is negative. Mass on empty elements is reported but does not fail.
pub fn validate<T: Scalar>(masses: &MassMap<T>, model: &Model, tolerance: f64) -> MassAudit<T> {
    let sum = scalar::sum(masses.values());
    let negative: Vec<Element> = masses.iter().filter(|(_, m)| **m < T::zero()).map(|(e, _)| e.clone()).collect();
    let empty_mass = masses
        .iter()
        .filter(|(e, _)| model.is_empty_raw(e))
        .fold(T::zero(), |acc, (_, m)| acc + m.clone());
    let passed = negative.is_empty() && sum.approx_eq(&T::one(), tolerance);
    MassAudit { deficit: T::one() - sum.clone(), sum, negative, empty_mass, passed }
}

/// Sources-by-columns table of input masses, restricted to columns that are
/// focal for at least one source.
#[derive(Clone, Debug, PartialEq)]
pub struct MassMatrix<T> {
    columns: Vec<Element>,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> MassMatrix<T> {
    pub fn columns(&self) -> &[Element] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn source_count(&self) -> usize {
        self.rows.len()
    }

    pub fn cell(&self, source: usize, column: usize) -> &T {
        &self.rows[source][column]
    }

    /// Masses of one source, read back from its row.
    pub fn row_masses(&self, source: usize) -> MassMap<T> {
        self.columns
            .iter()
            .zip(&self.rows[source])
            .filter(|(_, m)| !m.is_zero())
            .map(|(e, m)| (e.clone(), m.clone()))
            .collect()
    }
}

pub fn build_matrix<T: Scalar>(sources: &[Bba<T>], model: &Model) -> Result<MassMatrix<T>> {
    shared_frame(sources, 1)?;
    check_model(sources[0].frame(), model)?;
    let mut columns: Vec<Element> = sources.iter().flat_map(|s| s.masses.keys().cloned()).collect();
    columns.sort();
    columns.dedup();
    let rows = sources.iter().map(|s| columns.iter().map(|c| s.mass(c)).collect()).collect();
    Ok(MassMatrix { columns, rows })
}

/// Column sums of the mass matrix over elements that survive the model.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnSums<T> {
    /// Keyed by the model-reduced element; equivalent columns are merged.
    pub c: MassMap<T>,
    pub d: T,
    /// Input mass resting on `∅` or on model-empty elements.
    pub excluded_empty_mass: T,
}

impl<T: Scalar> ColumnSums<T> {
    pub(crate) fn empty() -> Self {
        Self { c: MassMap::new(), d: T::zero(), excluded_empty_mass: T::zero() }
    }

    /// Adds one source's row. Sources are accumulated in order so batch and
    /// incremental sums agree term by term.
    pub(crate) fn absorb(&mut self, source: &Bba<T>, model: &Model) {
        for (x, m) in source.focal() {
            if model.is_empty_raw(x) {
                self.excluded_empty_mass = self.excluded_empty_mass.clone() + m.clone();
            } else {
                let slot = self.c.entry(model.reduce_raw(x)).or_insert_with(T::zero);
                *slot = slot.clone() + m.clone();
            }
        }
        self.d = scalar::sum(self.c.values());
    }
}

pub fn column_sums<T: Scalar>(matrix: &MassMatrix<T>, model: &Model) -> ColumnSums<T> {
    let mut sums = ColumnSums::<T>::empty();
    for row in &matrix.rows {
        for (x, m) in matrix.columns.iter().zip(row) {
            if m.is_zero() {
                continue;
            }
            if model.is_empty_raw(x) {
                sums.excluded_empty_mass = sums.excluded_empty_mass.clone() + m.clone();
            } else {
                let slot = sums.c.entry(model.reduce_raw(x)).or_insert_with(T::zero);
                *slot = slot.clone() + m.clone();
            }
        }
    }
    sums.d = scalar::sum(sums.c.values());
    sums
}

/// Element-wise arithmetic mean of the sources. By linearity of `Bel` this
/// is also the mean of the belief functions.
pub fn average<T: Scalar>(sources: &[Bba<T>]) -> Result<Bba<T>> {
    let frame = shared_frame(sources, 1)?;
    let n = T::from_usize(sources.len()).expect("source count fits the scalar type");
    let mut totals = MassMap::new();
    for s in sources {
        for (x, m) in s.focal() {
            let slot = totals.entry(x.clone()).or_insert_with(T::zero);
            *slot = slot.clone() + m.clone();
        }
    }
    let masses = totals.into_iter().map(|(x, m)| (x, m / n.clone())).collect();
    let open = sources.iter().any(Bba::is_open_world);
    Ok(Bba::from_parts(frame.clone(), masses, open))
}

/// Checks that there are at least `min` sources on one frame.
pub(crate) fn shared_frame<T: Scalar>(sources: &[Bba<T>], min: usize) -> Result<&Frame> {
    if sources.len() < min || sources.is_empty() {
        return Err(Error::TooFewSources { needed: min.max(1), got: sources.len() });
    }
    let frame = sources[0].frame();
    for s in &sources[1..] {
        if s.frame() != frame {
            return Err(Error::FrameMismatch { expected: frame.len(), found: s.frame().len() });
        }
    }
    Ok(frame)
}

pub(crate) fn check_model(frame: &Frame, model: &Model) -> Result<()> {
    if model.frame() != frame {
        return Err(Error::FrameMismatch { expected: frame.len(), found: model.frame().len() });
    }
    Ok(())
}
