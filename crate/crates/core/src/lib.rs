//! Belief-function fusion over power sets and hyper-power sets.
//!
//! The crate provides
//!
//! * [`lattice`]: frames, hyper-power-set elements and constraint models;
//! * [`mass`]: basic belief assignments, `Bel`/`Pl`, mass matrices and
//!   column sums;
//! * [`rules`]: conjunctive and disjunctive consensus, Dempster, Smets,
//!   Yager, Dubois-Prade, Murphy, the weighted operator and WAO;
//! * [`pcr1`]: proportional conflict redistribution, batch and sequential;
//! * [`hybrid`]: the hybrid DSm rule;
//! * [`expr`]: parsing and formatting of set expressions.
//!
//! Everything is generic over [`Scalar`]; the aliases below fix the common
//! choices.
//!
//! ```
//! use evfusion::{expr, pcr1_combine, Bba64, Frame, Model};
//!
//! let frame = Frame::new(["A", "B"]).unwrap();
//! let el = |s: &str| expr::parse(&frame, s).unwrap();
//! let m1 = Bba64::new(frame.clone(), [(el("A"), 0.6), (el("B"), 0.3), (el("A|B"), 0.1)]).unwrap();
//! let m2 = Bba64::new(frame.clone(), [(el("A"), 0.5), (el("B"), 0.2), (el("A|B"), 0.3)]).unwrap();
//! let out = pcr1_combine(&[m1, m2], &Model::shafer(frame.clone())).unwrap();
//! assert!((out.mass(&el("A")) - 0.6785).abs() < 1e-12);
//! ```

pub mod error;
pub mod expr;
pub mod hybrid;
pub mod lattice;
pub mod mass;
pub mod pcr1;
pub mod rules;
pub mod scalar;

pub use error::{Error, Result};
pub use hybrid::{hybrid_combine, s2_target, HybridBreakdown};
pub use lattice::{Element, Frame, Model, World, MAX_FRAME};
pub use mass::{average, build_matrix, column_sums, validate, Bba, ColumnSums, MassAudit, MassMap, MassMatrix};
pub use pcr1::{pcr1_combine, FusionState, WaoState};
pub use rules::{
    conjunctive, dempster, disjunctive, dubois_prade, murphy, smets, wao_combine, wao_combine_extended, wao_weights,
    wo_combine, yager, CombinationResult, ConjunctiveOutcome, WeightVector,
};
pub use scalar::Scalar;

pub use num_rational::BigRational as Rational;

pub type Bba64 = Bba<f64>;
pub type Bba32 = Bba<f32>;
pub type BbaExact = Bba<Rational>;
pub type CombinationResult64 = CombinationResult<f64>;
pub type CombinationResultExact = CombinationResult<Rational>;
pub type FusionState64 = FusionState<f64>;
pub type WaoState64 = WaoState<f64>;
