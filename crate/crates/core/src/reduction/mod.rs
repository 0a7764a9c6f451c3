// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! From a dense graph to a good coloring of `G^M`.

mod augmented;
mod case2a;
mod case2b;
mod classify;
mod fallback;
mod lift;

pub use augmented::{build_augmented, good_coloring_to_total, AugmentedGraph, AugmentedSummary};
pub use case2a::{regularize_case2a, Case2aOutcome};
pub use case2b::{peel_case2b, Case2bOutcome, PeelTerminal};
pub use classify::{classify_and_pick_matching, diagnostics, CaseAssignment, CaseKind, Diagnostics, Plan};
pub use fallback::{fallback_good_coloring, FallbackOptions, FallbackOutcome};
pub use lift::{lift_coloring, Layer};

use thiserror::Error;

use crate::chromatics::ColoringError;
use crate::matching::MatchingError;
use crate::tools::ToolError;
use crate::verify::GoodViolation;

#[derive(Debug, Clone, Error)]
pub enum ReductionError {
    #[error("not a matching of the complement: {0}")]
    BadMatching(String),
    #[error("coloring is not good: {0}")]
    NotGood(GoodViolation),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("hypothesis `{name}` violated: {detail}")]
    Hypothesis { name: &'static str, detail: String },
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("precondition `{name}` failed: {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("palette arithmetic: {0}")]
    Palette(String),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Tool(#[from] ToolError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}
