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

use serde::Serialize;

use super::Graph;

/// Degree statistics used by the case analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub min_degree: usize,
    pub max_degree: usize,
    /// Vertices of minimum degree.
    pub v_min: Vec<usize>,
    /// Vertices of maximum degree.
    pub v_max: Vec<usize>,
    /// Vertices with `max_degree - d(u) >= xi * n`.
    pub u_xi: Vec<usize>,
    /// Vertices strictly between minimum and maximum degree.
    pub middle: Vec<usize>,
}

impl DegreeProfile {
    pub fn is_regular(&self) -> bool {
        self.min_degree == self.max_degree
    }

    pub fn has_middle(&self) -> bool {
        !self.middle.is_empty()
    }
}

/// Computes the degree profile of a non-empty graph.
pub fn degree_profile(g: &Graph, xi: f64) -> DegreeProfile {
    assert!(g.n() > 0, "degree profile of the null graph");
    let n = g.n();
    let (lo, hi) = (g.min_degree(), g.max_degree());
    let thresh = xi * n as f64;
    let mut p = DegreeProfile {
        min_degree: lo,
        max_degree: hi,
        v_min: Vec::new(),
        v_max: Vec::new(),
        u_xi: Vec::new(),
        middle: Vec::new(),
    };
    for v in 0..n {
        let d = g.degree(v);
        if d == lo {
            p.v_min.push(v);
        }
        if d == hi {
            p.v_max.push(v);
        }
        if d != lo && d != hi {
            p.middle.push(v);
        }
        if (hi - d) as f64 >= thresh {
            p.u_xi.push(v);
        }
    }
    p
}
