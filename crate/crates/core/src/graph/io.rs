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

//! graph6 and edge-list serialization.
//!
//! graph6 follows the published format bit for bit: a size prefix followed by
//! the upper triangle in column order, six bits per byte, offset by 63.

use std::str::FromStr;

use super::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edge-list" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        offset,
        message: message.into(),
    }
}

pub fn parse_graph(bytes: &[u8], format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::Graph6 => parse_graph6(bytes),
        Format::EdgeList => parse_edge_list(bytes),
    }
}

pub fn emit_graph(g: &Graph, format: Format) -> Vec<u8> {
    match format {
        Format::Graph6 => emit_graph6(g).into_bytes(),
        Format::EdgeList => emit_edge_list(g).into_bytes(),
    }
}

/// Decodes one graph6 record. A trailing newline and an optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, GraphError> {
    let mut start = 0;
    const HEADER: &[u8] = b">>graph6<<";
    if bytes.starts_with(HEADER) {
        start = HEADER.len();
    }
    let mut end = bytes.len();
    while end > start && (bytes[end - 1] == b'\n' || bytes[end - 1] == b'\r') {
        end -= 1;
    }
    let data = &bytes[start..end];
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(start + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let six = |i: usize| -> Result<usize, GraphError> {
        data.get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| parse_err(start + i, "truncated size header"))
    };
    let (n, mut pos) = if data.is_empty() {
        return Err(parse_err(start, "empty graph6 record"));
    } else if data[0] != 126 {
        (six(0)?, 1)
    } else if data.get(1) != Some(&126) {
        let n = (six(1)? << 12) | (six(2)? << 6) | six(3)?;
        (n, 4)
    } else {
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | six(i)?;
        }
        (n, 8)
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if data.len() - pos != need {
        return Err(parse_err(
            start + pos,
            format!("expected {need} adjacency bytes for n={n}, found {}", data.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0;
    let mut cur = 0usize;
    for j in 1..n {
        for i in 0..j {
            if bit == 0 {
                cur = (data[pos] - 63) as usize;
                pos += 1;
                bit = 6;
            }
            bit -= 1;
            if (cur >> bit) & 1 == 1 {
                g.add_edge(i, j)?;
            }
        }
    }
    if bit > 0 && cur & ((1 << bit) - 1) != 0 {
        return Err(parse_err(start + pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut cur = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            cur = (cur << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(cur + 63);
                cur = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((cur << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

struct Tokens<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn next_number(&mut self) -> Option<Result<(usize, usize), GraphError>> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos == self.bytes.len() {
            return None;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let tok = &self.bytes[start..self.pos];
        let parsed = std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| {
                parse_err(start, format!("expected a non-negative integer, got `{}`", String::from_utf8_lossy(tok)))
            });
        Some(parsed.map(|v| (v, start)))
    }
}

/// Parses `n m` followed by `m` whitespace-separated vertex pairs.
pub fn parse_edge_list(bytes: &[u8]) -> Result<Graph, GraphError> {
    let mut t = Tokens { bytes, pos: 0 };
    let (n, _) = t.next_number().ok_or_else(|| parse_err(0, "missing `n m` header"))??;
    let (m, _) = t
        .next_number()
        .ok_or_else(|| parse_err(t.pos, "header is missing the edge count"))??;
    let g = parse_pairs(&mut t, n, Some(m))?;
    Ok(g)
}

/// Parses vertex pairs without a header on a known vertex count.
pub fn parse_edge_list_on(bytes: &[u8], n: usize) -> Result<Graph, GraphError> {
    parse_pairs(&mut Tokens { bytes, pos: 0 }, n, None)
}

fn parse_pairs(t: &mut Tokens<'_>, n: usize, m: Option<usize>) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n);
    let mut count = 0;
    while let Some(u) = t.next_number() {
        let (u, uo) = u?;
        let (v, vo) = t
            .next_number()
            .ok_or_else(|| parse_err(t.pos, "edge with a single endpoint"))??;
        for (w, off) in [(u, uo), (v, vo)] {
            if w >= n {
                return Err(parse_err(off, format!("vertex {w} out of range for n={n}")));
            }
        }
        g.add_edge(u, v).map_err(|e| parse_err(uo, e.to_string()))?;
        count += 1;
    }
    if let Some(m) = m {
        if count != m {
            return Err(parse_err(t.pos, format!("header declares {m} edges, found {count}")));
        }
    }
    Ok(g)
}

/// Canonical edge list: header, then edges sorted lexicographically.
pub fn emit_edge_list(g: &Graph) -> String {
    use std::fmt::Write;
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent decoder: reads the bit string directly off the bytes.
    fn reference_graph6_edges(s: &str) -> (usize, Vec<(usize, usize)>) {
        let b: Vec<u8> = s.bytes().map(|c| c - 63).collect();
        assert!(b[0] < 63);
        let n = b[0] as usize;
        let bits: Vec<bool> = b[1..]
            .iter()
            .flat_map(|&x| (0..6).rev().map(move |k| (x >> k) & 1 == 1))
            .collect();
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[k] {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        edges.sort();
        (n, edges)
    }

    #[test]
    fn k4_from_graph6() {
        let g = parse_graph6(b"C~").unwrap();
        assert_eq!(g, Graph::complete(4));
        let (n, e) = reference_graph6_edges("C~");
        assert_eq!(n, 4);
        assert_eq!(g.edges().collect::<Vec<_>>(), e);
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph6(b"@\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(emit_graph6(&g), "@");
    }

    #[test]
    fn reference_decoder_agrees_on_cycles() {
        for n in 3..12 {
            let g = Graph::cycle(n);
            let s = emit_graph6(&g);
            let (rn, re) = reference_graph6_edges(&s);
            assert_eq!(rn, n);
            assert_eq!(g.edges().collect::<Vec<_>>(), re);
        }
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::path(100);
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn edge_list_k2() {
        let g = parse_edge_list(b"2 1\n0 1\n").unwrap();
        assert_eq!(g, Graph::complete(2));
        assert_eq!(parse_edge_list_on(b"0 1", 2).unwrap(), Graph::complete(2));
        assert_eq!(emit_edge_list(&g), "2 1\n0 1\n");
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_edge_list(b"3 1\n0 7\n") {
            Err(GraphError::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        match parse_edge_list(b"x") {
            Err(GraphError::Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("{other:?}"),
        }
        match parse_graph6(b"C~~") {
            Err(GraphError::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match parse_graph6(b"C\x10") {
            Err(GraphError::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_edge_list(b"3 2\n0 1\n").is_err());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn round_trip(n in 0usize..70, seed in any::<u64>()) {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut g = Graph::empty(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(0.4) {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                prop_assert_eq!(&parse_graph6(emit_graph6(&g).as_bytes()).unwrap(), &g);
                prop_assert_eq!(&parse_edge_list(emit_edge_list(&g).as_bytes()).unwrap(), &g);
            }
        }
    }
}
