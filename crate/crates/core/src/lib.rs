//! Exact arithmetic for Leonard pair parameter arrays: validation, the
//! diagonal sequences a_i and a*_i, the case classification, closed-form
//! families, a matrix oracle and a randomized identity sweep.

pub mod array;
pub mod cli;
pub mod error;
pub mod families;
pub mod field;
pub mod matrix;
pub mod sweep;
pub mod theorems;

pub use array::{
    analyze, classify_case, compute_a, compute_a_star, compute_a_via_second_split, compute_h, reverse_theta, validate,
    AnalysisReport, CaseLabel, CaseTag, Condition, ConditionFailure, ParameterArray, ValidationReport, Verdict,
};
pub use error::{Error, Result};
pub use families::{CaseData, CaseIData, CaseIIData, CaseIIIData, CaseIVData, CaseMinusOneData, CaseVData};
pub use field::{FieldDescriptor, FieldElement, FieldError};
pub use matrix::{conjugate, eigenbasis_ordered, oracle_a, oracle_matrices, ExactMatrix, OracleMatrices};
pub use theorems::{
    check_all, check_all_with, is_balanced, is_essentially_bipartite, is_essentially_dual_bipartite, TheoremEntry,
    TheoremReport,
};
