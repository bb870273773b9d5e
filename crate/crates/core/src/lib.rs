//! Combinatorics of root data and Weyl groups for parabolic induction:
//! coset and double coset representatives, Bruhat order, the d_w / δ_w
//! invariants, symbolic graded pieces of derived ordinary parts and Jacquet
//! functors, and a decision procedure for Ext¹ between parabolic inductions.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod ext;
pub mod filtration;
pub mod format;
pub mod grading;
pub mod lattice;
pub mod oracle;
pub mod root_datum;
pub mod subset;
pub mod weyl;

pub use error::{Error, Result};
pub use root_datum::{build_datum, CartanType, DatumSource, DatumSpec, IsogenyFlags, Lattice, Root, RootDatum, RootId};
pub use subset::Subset;
pub use weyl::{CrossSection, DoubleCosetTable, ElemId, OppositeMaps, RepData, WeylElement, WeylGroup};
pub use filtration::{FinitePoset, LowerSet};
pub use grading::{Derivation, GradedTerm, GradingOptions, GradingReport, Side, SigmaDescriptor, TermStatus, ZeroReason};
pub use ext::{Branch, ExtVerdict, Pairing, Relation, Scenario, VerdictKind, Violation};
pub use format::{parse_datum_spec, parse_scenario};
pub use oracle::{default_cases, sweep, OracleGroup, OracleReport, SweepCase};
