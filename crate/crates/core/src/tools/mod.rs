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

//! Degree-sequence realization, equitable vertex coloring and balanced bisection.

mod equitable;
mod hakimi;
mod partition;

pub use equitable::{equitable_vertex_coloring, is_equitable};
pub use hakimi::{hakimi_realize, HakimiOutcome, HakimiViolation};
pub use partition::{balanced_partition, balanced_partition_with, Partition, PartitionOptions};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToolError {
    #[error("precondition `{name}` failed: {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("no valid partition after {restarts} restarts")]
    PartitionFailed { restarts: usize },
    #[error("equitable coloring search exhausted")]
    EquitableFailed,
}
