//! Verification of the lower bound and recovery of extremal structure.

mod audit;
mod bounds;
mod critical;
mod kneser;

pub use audit::{lemma11_partition_audit, lemma6_audit, nu_floor_audit, Lemma6Outcome, PairedPartition};
pub use bounds::{
    bound_report, check_threshold, corollary5_audit, lemma3_audit, theorem_f_check, BoundReport, Regime,
};
pub use critical::{
    anchor_factorization, classify_critical, decompose_mod_2g, exception_structure, prop14_check, ClassSummary,
    CriticalRegime, CriticalWitness, WitnessRecord,
};
pub use kneser::{kneser_check, kneser_stabilizer};
