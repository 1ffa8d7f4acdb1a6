#![allow(dead_code)]

use evfusion::{
    conjunctive, dempster, dubois_prade, expr, hybrid_combine, murphy, pcr1_combine, smets, wao_combine, wo_combine,
    yager, Bba, Bba64, BbaExact, CombinationResult, Element, FusionState, Frame, MassMap, Model, Rational, Scalar,
    WeightVector,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const EPS: f64 = 1e-12;

pub fn el(frame: &Frame, text: &str) -> Element {
    expr::parse(frame, text).unwrap()
}

pub fn bba(frame: &Frame, entries: &[(&str, f64)]) -> Bba64 {
    Bba::new(frame.clone(), entries.iter().map(|(t, m)| (el(frame, t), *m))).unwrap()
}

pub fn open_bba(frame: &Frame, entries: &[(&str, f64)]) -> Bba64 {
    Bba::open_world(frame.clone(), entries.iter().map(|(t, m)| (el(frame, t), *m))).unwrap()
}

/// Focal elements as raw term masks plus integer weights; turned into a bba
/// over any scalar by dividing by the weight total.
#[derive(Clone, Debug)]
pub struct RawBba {
    pub n: usize,
    pub focal: Vec<(Vec<u16>, u32)>,
}

impl RawBba {
    pub fn element(&self, frame: &Frame, terms: &[u16]) -> Element {
        frame
            .element(terms.iter().map(|&m| (0..self.n).filter(move |i| m & (1 << i) != 0).map(|i| i + 1)))
            .unwrap()
    }

    pub fn to_f64(&self, frame: &Frame) -> Bba64 {
        let total: u32 = self.focal.iter().map(|(_, w)| w).sum();
        let masses = self.focal.iter().map(|(t, w)| (self.element(frame, t), *w as f64 / total as f64));
        Bba::new(frame.clone(), masses).unwrap()
    }

    pub fn to_exact(&self, frame: &Frame) -> BbaExact {
        let total: u32 = self.focal.iter().map(|(_, w)| w).sum();
        let masses = self
            .focal
            .iter()
            .map(|(t, w)| (self.element(frame, t), Rational::new(BigInt::from(*w), BigInt::from(total))));
        Bba::new(frame.clone(), masses).unwrap()
    }
}

/// Power-set focal elements: each a single union of singletons.
pub fn power_bba(n: usize) -> impl Strategy<Value = RawBba> {
    let top = (1u16 << n) - 1;
    prop::collection::vec((1..=top, 1u32..100), 1..=4).prop_map(move |focal| RawBba {
        n,
        focal: focal
            .into_iter()
            .map(|(mask, w)| ((0..n).filter(|i| mask & (1 << i) != 0).map(|i| 1u16 << i).collect(), w))
            .collect(),
    })
}

/// Hyper-power-set focal elements: unions of up to three intersections.
pub fn lattice_bba(n: usize) -> impl Strategy<Value = RawBba> {
    let top = (1u16 << n) - 1;
    prop::collection::vec((prop::collection::vec(1..=top, 1..=3), 1u32..100), 1..=4)
        .prop_map(move |focal| RawBba { n, focal })
}

pub fn sources<S: Strategy<Value = RawBba>>(
    n: usize,
    count: std::ops::RangeInclusive<usize>,
    each: impl Fn(usize) -> S,
) -> impl Strategy<Value = Vec<RawBba>> {
    prop::collection::vec(each(n), count)
}

/// Frame size and a list of power-set sources on it.
pub fn power_case(count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (usize, Vec<RawBba>)> {
    (2usize..=4).prop_flat_map(move |n| (Just(n), sources(n, count.clone(), power_bba)))
}

pub fn lattice_case(count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (usize, Vec<RawBba>)> {
    (2usize..=4).prop_flat_map(move |n| (Just(n), sources(n, count.clone(), lattice_bba)))
}

/// Shafer, free, or Shafer plus one extra non-existential constraint.
#[derive(Clone, Copy, Debug)]
pub enum ModelKind {
    Free,
    Shafer,
    ShaferMinus(u16),
    Hybrid(u16),
}

pub fn model_kind(n: usize) -> impl Strategy<Value = ModelKind> {
    let top = (1u16 << n) - 1;
    prop_oneof![
        Just(ModelKind::Free),
        Just(ModelKind::Shafer),
        (1..=top).prop_map(ModelKind::ShaferMinus),
        (1..=top).prop_filter("needs an intersection", |m| m.count_ones() >= 2).prop_map(ModelKind::Hybrid),
    ]
}

pub fn build_model(frame: &Frame, kind: ModelKind) -> Model {
    let n = frame.len();
    let element = |mask: u16| frame.element([(0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1)]).unwrap();
    match kind {
        ModelKind::Free => Model::free(frame.clone()),
        ModelKind::Shafer => Model::shafer(frame.clone()),
        ModelKind::ShaferMinus(mask) => {
            // removes one union of singletons entirely
            let mut model = Model::shafer(frame.clone());
            for i in (0..n).filter(|i| mask & (1 << i) != 0) {
                model = model.with_constraint(frame.singleton(i + 1).unwrap()).unwrap();
            }
            model
        }
        ModelKind::Hybrid(mask) => Model::free(frame.clone()).with_constraint(element(mask)).unwrap(),
    }
}

pub fn frame(n: usize) -> Frame {
    Frame::numbered(n).unwrap()
}

pub fn check_close<T: Scalar>(a: &MassMap<T>, b: &MassMap<T>, eps: f64, what: &str) -> Result<(), TestCaseError> {
    for x in a.keys().chain(b.keys()) {
        let va = a.get(x).cloned().unwrap_or_else(T::zero);
        let vb = b.get(x).cloned().unwrap_or_else(T::zero);
        prop_assert!(va.approx_eq(&vb, eps), "{what}: {x:?} differs: {va} vs {vb}");
    }
    Ok(())
}

fn check_sum<T: Scalar>(r: &CombinationResult<T>, eps: f64, rule: &str) -> Result<(), TestCaseError> {
    prop_assert!(r.total().approx_eq(&T::one(), eps), "{rule}: sum {}", r.total());
    Ok(())
}

// ---- property checks shared by the proptest suite and the acceptance gate ----

pub fn conservation((n, raw): (usize, Vec<RawBba>), kind: ModelKind) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = build_model(&f, kind);
    let s: Vec<Bba64> = raw.iter().map(|r| r.to_f64(&f)).collect();
    check_sum(&pcr1_combine(&s, &model).unwrap(), EPS, "pcr1")?;
    check_sum(&smets(&s, &model).unwrap(), EPS, "smets")?;
    check_sum(&yager(&s, &model).unwrap(), EPS, "yager")?;
    check_sum(&murphy(&s, &model).unwrap(), EPS, "murphy")?;
    check_sum(&hybrid_combine(&s, &model).unwrap().0, EPS, "hybrid")?;
    if s.len() == 2 {
        check_sum(&dubois_prade(&s, &model).unwrap(), EPS, "dubois_prade")?;
    }
    if let Ok(r) = dempster(&s, &model) {
        check_sum(&r, EPS, "dempster")?;
    }
    let conj = conjunctive(&s, &model).unwrap();
    prop_assert!((conj.consensus_total() + conj.k - 1.0).abs() < EPS);
    prop_assert!((conj.ledger_total() - conj.k).abs() < EPS);
    Ok(())
}

pub fn commutativity((n, raw): (usize, Vec<RawBba>), kind: ModelKind) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = build_model(&f, kind);
    let mut rev = raw.clone();
    rev.reverse();
    let mut rot = raw.clone();
    rot.rotate_left(1);
    // exact arithmetic: equal maps
    let a: Vec<BbaExact> = raw.iter().map(|r| r.to_exact(&f)).collect();
    for other in [&rev, &rot] {
        let b: Vec<BbaExact> = other.iter().map(|r| r.to_exact(&f)).collect();
        prop_assert_eq!(pcr1_combine(&a, &model).unwrap().masses, pcr1_combine(&b, &model).unwrap().masses);
        prop_assert_eq!(smets(&a, &model).unwrap().masses, smets(&b, &model).unwrap().masses);
        prop_assert_eq!(yager(&a, &model).unwrap().masses, yager(&b, &model).unwrap().masses);
        prop_assert_eq!(murphy(&a, &model).unwrap().masses, murphy(&b, &model).unwrap().masses);
        prop_assert_eq!(wao_combine(&a, &model).unwrap().masses, wao_combine(&b, &model).unwrap().masses);
        prop_assert_eq!(hybrid_combine(&a, &model).unwrap().0.masses, hybrid_combine(&b, &model).unwrap().0.masses);
        prop_assert_eq!(dempster(&a, &model).ok().map(|r| r.masses), dempster(&b, &model).ok().map(|r| r.masses));
        if a.len() == 2 {
            prop_assert_eq!(dubois_prade(&a, &model).unwrap().masses, dubois_prade(&b, &model).unwrap().masses);
        }
    }
    // floating point: equal up to rounding
    let a: Vec<Bba64> = raw.iter().map(|r| r.to_f64(&f)).collect();
    let b: Vec<Bba64> = rev.iter().map(|r| r.to_f64(&f)).collect();
    check_close(&pcr1_combine(&a, &model).unwrap().masses, &pcr1_combine(&b, &model).unwrap().masses, EPS, "pcr1")?;
    Ok(())
}

/// Closed world, power set, Shafer model: nothing is forced empty, so `d = N`.
pub fn pcr1_equals_wao((n, raw): (usize, Vec<RawBba>)) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = Model::shafer(f.clone());
    let s: Vec<Bba64> = raw.iter().map(|r| r.to_f64(&f)).collect();
    let p = pcr1_combine(&s, &model).unwrap();
    let w = wao_combine(&s, &model).unwrap();
    check_close(&p.masses, &w.masses, EPS, "pcr1 vs wao")
}

pub fn pcr1_equals_wo((n, raw): (usize, Vec<RawBba>), kind: ModelKind) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = build_model(&f, kind);
    let s: Vec<Bba64> = raw.iter().map(|r| r.to_f64(&f)).collect();
    let state = s.iter().try_fold(FusionState::new(model.clone()), |st, b| st.absorb(b)).unwrap();
    let sums = state.column_sums();
    prop_assume!(sums.d > 0.0);
    let weights = WeightVector::new(f.clone(), sums.c.iter().map(|(x, c)| (x.clone(), c / sums.d))).unwrap();
    let wo = wo_combine(&s, &model, &weights).unwrap();
    check_close(&pcr1_combine(&s, &model).unwrap().masses, &wo.masses, EPS, "pcr1 vs wo")
}

pub fn wo_identities((n, raw): (usize, Vec<RawBba>), kind: ModelKind) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = build_model(&f, kind);
    let s: Vec<Bba64> = raw.iter().map(|r| r.to_f64(&f)).collect();
    let ws = WeightVector::new(f.clone(), [(f.empty_element(), 1.0)]).unwrap();
    check_close(&wo_combine(&s, &model, &ws).unwrap().masses, &smets(&s, &model).unwrap().masses, EPS, "smets")?;
    if let Some(top) = model.reduce(&f.total_ignorance()).ok().filter(|t| !t.is_bottom()) {
        let wy = WeightVector::new(f.clone(), [(top, 1.0)]).unwrap();
        check_close(&wo_combine(&s, &model, &wy).unwrap().masses, &yager(&s, &model).unwrap().masses, EPS, "yager")?;
    }
    let wa = evfusion::wao_weights(&s, &model).unwrap();
    let direct = wo_combine(&s, &model, &wa).unwrap_or_else(|_| unreachable!());
    check_close(&direct.masses, &wao_combine(&s, &model).unwrap().masses, EPS, "wao")?;
    let conj = conjunctive(&s, &model).unwrap();
    if let Ok(ds) = dempster(&s, &model) {
        let denom = 1.0 - conj.k;
        let wd = WeightVector::new(f.clone(), conj.consensus.iter().map(|(x, m)| (x.clone(), m / denom)));
        if let Ok(wd) = wd {
            check_close(&wo_combine(&s, &model, &wd).unwrap().masses, &ds.masses, 1e-9, "dempster")?;
        }
        // Dempster is Smets renormalized
        let sm = smets(&s, &model).unwrap();
        for (x, m) in &ds.masses {
            prop_assert!((m - sm.mass(x) / denom).abs() < 1e-9);
        }
    }
    Ok(())
}

pub fn associativity((n, raw): (usize, Vec<RawBba>)) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = Model::shafer(f.clone());
    let s: Vec<Bba64> = raw.iter().map(|r| r.to_f64(&f)).collect();
    let (a, b, c) = (&s[0], &s[1], &s[2]);
    let pair = |x: &Bba64, y: &Bba64, rule: fn(&[Bba64], &Model) -> evfusion::Result<CombinationResult<f64>>| {
        rule(&[x.clone(), y.clone()], &model).and_then(|r| r.to_bba())
    };
    let left = pair(a, b, smets).and_then(|ab| pair(&ab, c, smets)).unwrap();
    let right = pair(b, c, smets).and_then(|bc| pair(a, &bc, smets)).unwrap();
    check_close(left.masses(), right.masses(), EPS, "smets")?;
    let left = pair(a, b, dempster).and_then(|ab| pair(&ab, c, dempster));
    let right = pair(b, c, dempster).and_then(|bc| pair(a, &bc, dempster));
    if let (Ok(l), Ok(r)) = (&left, &right) {
        check_close(l.masses(), r.masses(), 1e-9, "dempster")?;
    }
    Ok(())
}

/// Free model: no conflict, so PCR1 and the hybrid rule reduce to the
/// conjunctive consensus.
pub fn no_conflict((n, raw): (usize, Vec<RawBba>)) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = Model::free(f.clone());
    let s: Vec<BbaExact> = raw.iter().map(|r| r.to_exact(&f)).collect();
    let conj = conjunctive(&s, &model).unwrap();
    prop_assert!(conj.k == Rational::from_integer(0.into()));
    prop_assert_eq!(&pcr1_combine(&s, &model).unwrap().masses, &conj.consensus);
    prop_assert_eq!(&hybrid_combine(&s, &model).unwrap().0.masses, &conj.consensus);
    Ok(())
}

/// Independent tuple-enumeration oracle for the conjunctive consensus.
pub fn oracle_consensus(s: &[BbaExact], model: &Model) -> (MassMap<Rational>, Rational) {
    let mut consensus = MassMap::new();
    let mut k = Rational::from_integer(0.into());
    let mut partial: Vec<(Option<Element>, Rational)> = vec![(None, Rational::from_integer(1.into()))];
    for b in s {
        let mut next = Vec::new();
        for (acc, m) in &partial {
            for (x, w) in b.masses() {
                let meet = match acc {
                    None => x.clone(),
                    Some(a) => a.meet(x).unwrap(),
                };
                next.push((Some(meet), m * w));
            }
        }
        partial = next;
    }
    for (x, m) in partial {
        let x = x.unwrap();
        if model.is_empty(&x).unwrap() {
            k += m;
        } else {
            *consensus.entry(model.reduce(&x).unwrap()).or_insert_with(|| Rational::from_integer(0.into())) += m;
        }
    }
    (consensus, k)
}

pub fn quasi_associativity((n, raw): (usize, Vec<RawBba>), kind: ModelKind) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = build_model(&f, kind);
    let s: Vec<BbaExact> = raw.iter().map(|r| r.to_exact(&f)).collect();
    let state = s.iter().try_fold(FusionState::new(model.clone()), |st, b| st.absorb(b)).unwrap();
    let (consensus, k) = oracle_consensus(&s, &model);
    prop_assert_eq!(state.consensus(), &consensus);
    prop_assert_eq!(state.k(), &k);
    prop_assert_eq!(state.finalize().unwrap().masses, pcr1_combine(&s, &model).unwrap().masses);
    let conj = conjunctive(&s, &model).unwrap();
    prop_assert_eq!(conj.ledger_total(), k);
    // float path agrees with the batch rule exactly
    let s64: Vec<Bba64> = raw.iter().map(|r| r.to_f64(&f)).collect();
    let state = s64.iter().try_fold(FusionState::new(model.clone()), |st, b| st.absorb(b)).unwrap();
    prop_assert_eq!(state.finalize().unwrap().masses, pcr1_combine(&s64, &model).unwrap().masses);
    Ok(())
}

pub fn hybrid_properties((n, raw): (usize, Vec<RawBba>), kind: ModelKind) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = build_model(&f, kind);
    let s: Vec<BbaExact> = raw.iter().map(|r| r.to_exact(&f)).collect();
    let (out, parts) = hybrid_combine(&s, &model).unwrap();
    let one = Rational::from_integer(1.into());
    prop_assert_eq!(out.total(), one.clone());
    prop_assert_eq!(parts.total(), one);
    for x in out.masses.keys() {
        prop_assert!(x.is_bottom() || !model.is_empty(x).unwrap(), "mass on empty {x:?}");
    }
    Ok(())
}

/// Two sources, Shafer model: hybrid DSm and Dubois-Prade coincide.
pub fn hybrid_equals_dubois_prade((n, raw): (usize, Vec<RawBba>)) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = Model::shafer(f.clone());
    let s: Vec<BbaExact> = raw.iter().map(|r| r.to_exact(&f)).collect();
    prop_assert_eq!(hybrid_combine(&s, &model).unwrap().0.masses, dubois_prade(&s, &model).unwrap().masses);
    Ok(())
}

pub fn idempotence_closed_form(a: f64, n: usize) -> Result<(), TestCaseError> {
    let f = frame(2);
    let b = bba(&f, &[("θ1", a), ("θ2", 1.0 - a)]);
    let out = pcr1_combine(&vec![b; n], &Model::shafer(f.clone())).unwrap();
    let expected = a.powi(n as i32) + a * (1.0 - a.powi(n as i32) - (1.0 - a).powi(n as i32));
    prop_assert!((out.mass(&el(&f, "θ1")) - expected).abs() < EPS, "a={a} n={n}");
    Ok(())
}

// ---- lattice and parser ----

pub fn element(n: usize) -> impl Strategy<Value = (usize, Vec<u16>)> {
    let top = (1u16 << n) - 1;
    prop::collection::vec(1..=top, 0..=3).prop_map(move |t| (n, t))
}

pub fn triple() -> impl Strategy<Value = (usize, Vec<u16>, Vec<u16>, Vec<u16>)> {
    (1usize..=4).prop_flat_map(|n| {
        let top = (1u16 << n) - 1;
        let e = move || prop::collection::vec(1..=top, 0..=3);
        (Just(n), e(), e(), e())
    })
}

pub fn make(frame: &Frame, terms: &[u16]) -> Element {
    let n = frame.len();
    frame.element(terms.iter().map(|&m| (0..n).filter(move |i| m & (1 << i) != 0).map(|i| i + 1))).unwrap()
}

pub fn lattice_laws((n, ta, tb, tc): (usize, Vec<u16>, Vec<u16>, Vec<u16>)) -> Result<(), TestCaseError> {
    let f = frame(n);
    let (a, b, c) = (make(&f, &ta), make(&f, &tb), make(&f, &tc));
    let bot = f.empty_element();
    let top = f.total_ignorance();
    prop_assert_eq!(a.meet(&b).unwrap(), b.meet(&a).unwrap());
    prop_assert_eq!(a.join(&b).unwrap(), b.join(&a).unwrap());
    prop_assert_eq!(a.meet(&b).unwrap().meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
    prop_assert_eq!(a.join(&b).unwrap().join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
    prop_assert_eq!(a.meet(&a).unwrap(), a.clone());
    prop_assert_eq!(a.join(&a).unwrap(), a.clone());
    prop_assert_eq!(a.meet(&a.join(&b).unwrap()).unwrap(), a.clone());
    prop_assert_eq!(a.join(&a.meet(&b).unwrap()).unwrap(), a.clone());
    prop_assert_eq!(a.meet(&bot).unwrap(), bot.clone());
    prop_assert_eq!(a.join(&top).unwrap(), top.clone());
    prop_assert!(bot.leq(&a).unwrap() && a.leq(&top).unwrap());
    prop_assert_eq!(a.leq(&b).unwrap(), a.meet(&b).unwrap() == a);
    // canonical form is stable
    let again = f.element(a.terms()).unwrap();
    prop_assert_eq!(&again, &a);
    prop_assert_eq!(again.atom_masks(), a.atom_masks());
    // reduction is idempotent and commutes with meet
    let model = Model::shafer(f.clone());
    let r = model.reduce(&a).unwrap();
    prop_assert_eq!(model.reduce(&r).unwrap(), r.clone());
    prop_assert_eq!(r.is_bottom(), model.is_empty(&a).unwrap());
    let rm = model.reduce(&a.meet(&b).unwrap()).unwrap();
    let mr = model.reduce(&r.meet(&model.reduce(&b).unwrap()).unwrap()).unwrap();
    prop_assert_eq!(rm, mr);
    Ok(())
}

pub fn round_trip((n, terms): (usize, Vec<u16>)) -> Result<(), TestCaseError> {
    let f = Frame::new(["A", "B", "C", "D"].into_iter().take(n)).unwrap();
    let x = make(&f, &terms);
    for glyphs in [expr::Glyphs::Ascii, expr::Glyphs::Unicode] {
        let text = expr::format(&f, &x, glyphs);
        prop_assert_eq!(expr::parse(&f, &text).unwrap(), x.clone(), "{}", text);
    }
    Ok(())
}

pub fn bel_pl((n, raw): (usize, Vec<RawBba>), terms: Vec<u16>) -> Result<(), TestCaseError> {
    let f = frame(n);
    let model = Model::shafer(f.clone());
    let b = raw[0].to_f64(&f);
    let top = (1u16 << n) - 1;
    let mask = terms.iter().fold(0u16, |a, m| a | m) & top;
    prop_assume!(mask != 0 && mask != top);
    let union = |m: u16| make(&f, &(0..n).filter(|i| m & (1 << i) != 0).map(|i| 1u16 << i).collect::<Vec<_>>());
    let x = union(mask);
    let complement = union(top & !mask);
    let (bel, pl) = (b.bel(&x).unwrap(), b.pl(&x, &model).unwrap());
    prop_assert!(-EPS <= bel && bel <= pl + EPS && pl <= 1.0 + EPS);
    prop_assert!((pl - (1.0 - b.bel(&complement).unwrap())).abs() < EPS);
    Ok(())
}

/// Keeps a model's masks inside the frame it is applied to.
pub fn clamp_kind(kind: ModelKind, n: usize) -> ModelKind {
    let top = (1u16 << n) - 1;
    match kind {
        ModelKind::ShaferMinus(m) if m & top != 0 => ModelKind::ShaferMinus(m & top),
        ModelKind::Hybrid(m) if (m & top).count_ones() >= 2 => ModelKind::Hybrid(m & top),
        ModelKind::Free | ModelKind::Shafer => kind,
        _ => ModelKind::Shafer,
    }
}
