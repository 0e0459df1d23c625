//! Command-line front end for restricted Chebyshev centers: instance files,
//! reports, lemma suites and corpus runs on top of `supcenter-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod corpus;
pub mod error;
pub mod instance;
pub mod report;
pub mod suites;
