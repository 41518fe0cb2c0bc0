//! Verification suites, report files and the command-line front end built
//! on `ortholab-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod output;
pub mod suite;
