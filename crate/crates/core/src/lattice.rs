//! Frames, hyper-power-set elements and integrity-constraint models.
//!
//! An [`Element`] of the free Dedekind lattice generated by the hypotheses
//! `θ_1..θ_n` is kept in two equivalent forms:
//!
//! * a canonical antichain of *terms*, each term a non-empty set of
//!   hypothesis indices read as the intersection of those hypotheses; the
//!   element is the union of its terms;
//! * the upward-closed set of *atoms* it covers. Atom `T` (a non-empty index
//!   set) is the Venn region lying inside every `θ_i` with `i ∈ T` and outside
//!   all the others.
//!
//! Meet and join are bitwise AND / OR on atom sets, so every lattice
//! operation is a handful of word operations followed by re-extraction of the
//! minimal atoms. Power-set elements are simply the elements whose terms are
//! all singletons.
//!
//! A [`Model`] declares some elements empty. An element is empty under a
//! model when all of its atoms are covered by the declared-empty elements;
//! [`Model::reduce`] picks the canonical representative of an element's
//! equivalence class under the model.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::expr::RESERVED;

/// Largest supported frame. The atom universe has `2^n - 1` members.
pub const MAX_FRAME: usize = 12;

/// An ordered list of distinct hypothesis labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME {
            return Err(Error::FrameTooLarge(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Frame with labels `θ1..θn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("θ{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label of hypothesis `index` (1-based).
    pub fn label(&self, index: usize) -> Option<&str> {
        index.checked_sub(1).and_then(|i| self.labels.get(i)).map(String::as_str)
    }

    /// 1-based index of `label`.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label).map(|i| i + 1)
    }

    /// Canonical element from a collection of terms given as 1-based index
    /// sets. Redundant and duplicate terms are absorbed.
    pub fn element<I, J>(&self, raw_terms: I) -> Result<Element>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let n = self.len();
        let mut masks = Vec::new();
        for term in raw_terms {
            let mut mask = 0u16;
            for index in term {
                if index == 0 || index > n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
                mask |= 1 << (index - 1);
            }
            if mask == 0 {
                return Err(Error::Precondition("a term must name at least one hypothesis"));
            }
            masks.push(mask);
        }
        Ok(Element::from_term_masks(n, &masks))
    }

    /// The hypothesis `θ_index` (1-based).
    pub fn singleton(&self, index: usize) -> Result<Element> {
        self.element([[index]])
    }

    pub fn empty_element(&self) -> Element {
        Element::bottom(self.len())
    }

    /// `θ_1 ∪ … ∪ θ_n`.
    pub fn total_ignorance(&self) -> Element {
        Element::top(self.len())
    }

    /// All non-empty unions of singletons, in element order.
    pub fn power_set(&self) -> Vec<Element> {
        let n = self.len();
        let mut out: Vec<Element> = (1u32..(1 << n))
            .map(|set| {
                let masks: Vec<u16> = (0..n).filter(|i| set & (1 << i) != 0).map(|i| 1 << i).collect();
                Element::from_term_masks(n, &masks)
            })
            .collect();
        out.sort();
        out
    }

    /// Every element of the free Dedekind lattice, `∅` included, in element
    /// order. Only small frames are supported.
    pub fn hyper_power_set(&self) -> Result<Vec<Element>> {
        let n = self.len();
        if n > 4 {
            return Err(Error::FrameTooLarge(n));
        }
        let atom_count = (1usize << n) - 1;
        let mut out = Vec::new();
        for subset in 0u32..(1u32 << atom_count) {
            // bit j of `subset` stands for atom j + 1
            let contains = |atom: usize| subset & (1 << (atom - 1)) != 0;
            let upward_closed = (1..=atom_count).filter(|&a| contains(a)).all(|a| {
                (0..n).all(|i| {
                    let sup = a | (1 << i);
                    contains(sup)
                })
            });
            if upward_closed {
                let mut atoms = AtomSet::empty(n);
                for a in (1..=atom_count).filter(|&a| contains(a)) {
                    atoms.insert(a as u16);
                }
                out.push(Element::from_upward_closed(n, atoms));
            }
        }
        out.sort();
        Ok(out)
    }

    pub(crate) fn check(&self, x: &Element) -> Result<()> {
        check_n(self.len(), x.n())
    }
}

fn check_n(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::FrameMismatch { expected, found })
    }
}

/// Fixed-width bitset over the atoms of an `n`-hypothesis frame. Bit `T` is
/// the atom indexed by the index-set mask `T`; bit 0 is never set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct AtomSet {
    words: Box<[u64]>,
}

impl AtomSet {
    fn word_count(n: usize) -> usize {
        (1usize << n).div_ceil(64)
    }

    pub(crate) fn empty(n: usize) -> Self {
        Self { words: vec![0; Self::word_count(n)].into_boxed_slice() }
    }

    fn contains(&self, atom: u16) -> bool {
        let a = atom as usize;
        self.words[a / 64] & (1 << (a % 64)) != 0
    }

    fn insert(&mut self, atom: u16) {
        let a = atom as usize;
        self.words[a / 64] |= 1 << (a % 64);
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let words = self.words.iter().zip(other.words.iter()).map(|(&a, &b)| f(a, b)).collect();
        Self { words }
    }

    pub(crate) fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(&a, &b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1u64 << b) != 0).map(move |b| (w * 64 + b) as u16)
        })
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Minimal atoms (under index-set inclusion) of this set.
    fn minimal(&self) -> Vec<u16> {
        self.iter()
            .filter(|&t| {
                let mut rest = t;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= !bit;
                    let smaller = t & !bit;
                    if smaller != 0 && self.contains(smaller) {
                        return false;
                    }
                }
                true
            })
            .collect()
    }
}

impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> Ordering {
        // numeric order of the bitset, most significant word first
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the hyper-power set `D^Θ`.
///
/// Equality and ordering depend only on the covered atoms, so two elements
/// built from different but equivalent term lists compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    n: u8,
    atoms: AtomSet,
    terms: Box<[u16]>,
}

impl Element {
    pub(crate) fn bottom(n: usize) -> Self {
        Self { n: n as u8, atoms: AtomSet::empty(n), terms: Box::new([]) }
    }

    pub(crate) fn top(n: usize) -> Self {
        let masks: Vec<u16> = (0..n).map(|i| 1 << i).collect();
        Self::from_term_masks(n, &masks)
    }

    pub(crate) fn from_term_masks(n: usize, masks: &[u16]) -> Self {
        let full: u16 = ((1u32 << n) - 1) as u16;
        let mut atoms = AtomSet::empty(n);
        for &term in masks {
            let rest = full & !term;
            let mut sub = rest;
            loop {
                atoms.insert(term | sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        Self::from_upward_closed(n, atoms)
    }

    fn from_upward_closed(n: usize, atoms: AtomSet) -> Self {
        let mut terms = atoms.minimal();
        terms.sort_by(|a, b| term_order(*a, *b));
        Self { n: n as u8, atoms, terms: terms.into_boxed_slice() }
    }

    /// Canonical element covering at least `atoms` and no atom outside the
    /// upward closure of its minimal members.
    pub(crate) fn from_atom_minimals(n: usize, atoms: &AtomSet) -> Self {
        Self::from_term_masks(n, &atoms.minimal())
    }

    /// Number of hypotheses in the frame this element lives on.
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `true` for the empty element `∅`.
    pub fn is_bottom(&self) -> bool {
        self.terms.is_empty()
    }

    /// `true` when every term is a single hypothesis (an element of `2^Θ`).
    pub fn is_power_set_element(&self) -> bool {
        self.terms.iter().all(|t| t.count_ones() == 1)
    }

    /// Canonical terms as bitmasks (bit `i-1` for `θ_i`).
    pub fn term_masks(&self) -> &[u16] {
        &self.terms
    }

    /// Canonical terms as sorted 1-based index lists.
    pub fn terms(&self) -> Vec<Vec<usize>> {
        self.terms.iter().map(|&m| mask_indices(m)).collect()
    }

    /// The covered atoms, as index-set masks, in increasing order.
    pub fn atom_masks(&self) -> Vec<u16> {
        self.atoms.iter().collect()
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub(crate) fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        check_n(self.n(), other.n())?;
        Ok(self.meet_raw(other))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        check_n(self.n(), other.n())?;
        Ok(self.join_raw(other))
    }

    /// Lattice order: `self ⊆ other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        check_n(self.n(), other.n())?;
        Ok(self.atoms.is_subset(&other.atoms))
    }

    pub(crate) fn meet_raw(&self, other: &Self) -> Self {
        Self::from_upward_closed(self.n(), self.atoms.zip(&other.atoms, |a, b| a & b))
    }

    pub(crate) fn join_raw(&self, other: &Self) -> Self {
        Self::from_upward_closed(self.n(), self.atoms.zip(&other.atoms, |a, b| a | b))
    }

    pub(crate) fn leq_raw(&self, other: &Self) -> bool {
        self.atoms.is_subset(&other.atoms)
    }

    /// Union of every hypothesis that appears in some term.
    pub fn u_of(&self) -> Result<Self> {
        if self.is_bottom() {
            return Err(Error::UndefinedForEmpty("u(X)"));
        }
        Ok(self.u_of_raw())
    }

    pub(crate) fn u_of_raw(&self) -> Self {
        let support = self.terms.iter().fold(0u16, |acc, t| acc | t);
        let masks: Vec<u16> = (0..self.n()).filter(|i| support & (1 << i) != 0).map(|i| 1 << i).collect();
        Self::from_term_masks(self.n(), &masks)
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.atoms.cmp(&other.atoms))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            return f.write_str("∅");
        }
        let terms: Vec<String> = self
            .terms()
            .iter()
            .map(|t| t.iter().map(|i| format!("θ{i}")).collect::<Vec<_>>().join("∩"))
            .collect();
        f.write_str(&terms.join(" ∪ "))
    }
}

fn mask_indices(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

/// Terms order by size, then lexicographically by their index lists.
fn term_order(a: u16, b: u16) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| mask_indices(a).cmp(&mask_indices(b)))
}

/// Closed or open world assumption.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum World {
    #[default]
    Closed,
    Open,
}

/// Integrity constraints: the elements forced to be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    constraints: Vec<Element>,
    world: World,
    forced: AtomSet,
}

impl Model {
    pub fn new(frame: Frame, constraints: Vec<Element>, world: World) -> Result<Self> {
        let mut forced = AtomSet::empty(frame.len());
        for c in &constraints {
            frame.check(c)?;
            forced.union_with(c.atoms());
        }
        Ok(Self { frame, constraints, world, forced })
    }

    /// No constraints: only `∅` is empty.
    pub fn free(frame: Frame) -> Self {
        Self::new(frame, Vec::new(), World::Closed).expect("no constraints to check")
    }

    /// All hypotheses pairwise exclusive.
    pub fn shafer(frame: Frame) -> Self {
        let n = frame.len();
        let mut constraints = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                constraints.push(Element::from_term_masks(n, &[(1 << i) | (1 << j)]));
            }
        }
        Self::new(frame, constraints, World::Closed).expect("constraints built on the frame")
    }

    /// Adds a further constraint.
    pub fn with_constraint(mut self, x: Element) -> Result<Self> {
        self.frame.check(&x)?;
        self.forced.union_with(x.atoms());
        self.constraints.push(x);
        Ok(self)
    }

    pub fn with_world(mut self, world: World) -> Self {
        self.world = world;
        self
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn constraints(&self) -> &[Element] {
        &self.constraints
    }

    pub fn world(&self) -> World {
        self.world
    }

    /// `true` when every atom of `x` is forced empty.
    pub fn is_empty(&self, x: &Element) -> Result<bool> {
        self.frame.check(x)?;
        Ok(self.is_empty_raw(x))
    }

    /// Canonical representative of `x` modulo the constraints.
    pub fn reduce(&self, x: &Element) -> Result<Element> {
        self.frame.check(x)?;
        Ok(self.reduce_raw(x))
    }

    pub(crate) fn is_empty_raw(&self, x: &Element) -> bool {
        x.atoms().is_subset(&self.forced)
    }

    pub(crate) fn reduce_raw(&self, x: &Element) -> Element {
        if self.forced.is_zero() {
            return x.clone();
        }
        let surviving = x.atoms().zip(&self.forced, |a, f| a & !f);
        Element::from_atom_minimals(self.frame.len(), &surviving)
    }

    /// `reduce(I_t)`, or `None` when the whole frame is forced empty.
    pub(crate) fn reduced_ignorance(&self) -> Option<Element> {
        let top = self.frame.total_ignorance();
        (!self.is_empty_raw(&top)).then(|| self.reduce_raw(&top))
    }

    /// Elements with the same surviving atoms are identified by the model.
    pub fn equivalent(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.reduce(a)? == self.reduce(b)?)
    }
}
