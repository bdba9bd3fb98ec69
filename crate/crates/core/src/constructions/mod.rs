//! Extremal families and the worked examples.

mod examples;
mod guo;
mod lemma15;
mod lift;

pub use examples::{builtin_example, BuiltinExample, Expected, EXAMPLE_NAMES};
pub use guo::{build_guo_pair, pair_coset_reps, GuoParameters};
pub use lemma15::{lemma15_classify, symmetric_about_each_point, Lemma15Class};
pub use lift::{lift_critical_triple, QuotientParams, Recipe};

pub(crate) use guo::{core_block, CosetPairing};
