//! Induced (Seifert) graphs of canonical Seifert surfaces.
//!
//! Vertices are Seifert circles, edges are the half-twisted bands at the
//! crossings, each carrying the sign of its crossing.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Sign {
    pub fn of(value: i64) -> Sign {
        if value < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    /// The endpoint across the edge from `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Signed multigraph without self-loops. Edge ids are positions in the edge
/// list and are stable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedMultigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl SignedMultigraph {
    pub fn new(vertex_count: usize) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Range("a graph needs at least one vertex".into()));
        }
        Ok(SignedMultigraph { vertex_count, edges: Vec::new() })
    }

    pub fn add_edge(&mut self, u: usize, v: usize, sign: Sign) -> Result<usize> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::Range(format!(
                "edge {u}-{v} outside vertex range 0..{}",
                self.vertex_count
            )));
        }
        self.edges.push(Edge { u, v, sign });
        Ok(self.edges.len() - 1)
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize, Sign)]) -> Result<Self> {
        let mut g = SignedMultigraph::new(vertex_count)?;
        for &(u, v, s) in edges {
            g.add_edge(u, v, s)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Incident edge ids per vertex, in increasing id order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            inc[e.u].push(id);
            inc[e.v].push(id);
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        let inc = self.incidence();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &id in &inc[x] {
                let y = self.edges[id].other(x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.vertex_count
    }

    /// Cycle rank `c - s + 1` of a connected graph.
    pub fn cycle_rank(&self) -> i64 {
        self.edges.len() as i64 - self.vertex_count as i64 + 1
    }

    /// Serialize in the line-oriented graph file format.
    pub fn render(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.u, e.v, e.sign));
        }
        out
    }
}

/// Seifert graph of a closed braid: one vertex per strand, one edge per letter.
pub fn graph_from_braid(w: &BraidWord) -> Result<SignedMultigraph> {
    if let Some(i) = w.missing_generator() {
        return Err(Error::DisconnectedDiagram(i));
    }
    let mut g = SignedMultigraph::new(w.strands())?;
    for &e in w.letters() {
        let i = e.unsigned_abs() as usize;
        g.add_edge(i - 1, i, Sign::of(e))?;
    }
    Ok(g)
}

/// Parse the graph file format:
///
/// ```text
/// # comment
/// vertices <N>
/// edge <u> <v> <+|->
/// ```
///
/// Connectivity is not required here; check [`SignedMultigraph::is_connected`].
pub fn parse_graph(text: &str) -> Result<SignedMultigraph> {
    let mut graph: Option<SignedMultigraph> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: &str| Error::Syntax(format!("line {}: {msg}", lineno + 1));
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "vertices" => {
                if graph.is_some() {
                    return Err(at("duplicate 'vertices' line"));
                }
                if tokens.len() != 2 {
                    return Err(at("expected 'vertices <N>'"));
                }
                let n: usize = tokens[1].parse().map_err(|_| at("vertex count is not an integer"))?;
                graph = Some(SignedMultigraph::new(n)?);
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(at("expected 'edge <u> <v> <+|->'"));
                }
                let u: usize = tokens[1].parse().map_err(|_| at("bad vertex id"))?;
                let v: usize = tokens[2].parse().map_err(|_| at("bad vertex id"))?;
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                let sign = match tokens[3] {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    _ => return Err(at("edge sign must be '+' or '-'")),
                };
                let g = graph.as_mut().ok_or_else(|| at("'vertices' must come first"))?;
                g.add_edge(u, v, sign)?;
            }
            other => return Err(at(&format!("unknown directive {other:?}"))),
        }
    }
    graph.ok_or_else(|| Error::Syntax("missing 'vertices' line".into()))
}

/// Two-colouring of a connected graph, if one exists.
pub fn bipartition(g: &SignedMultigraph) -> Result<Option<Vec<u8>>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let inc = g.incidence();
    let mut colour: Vec<Option<u8>> = vec![None; g.vertex_count()];
    colour[0] = Some(0);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let cx = colour[x].unwrap_or(0);
        for &id in &inc[x] {
            let y = g.edge(id).other(x);
            match colour[y] {
                None => {
                    colour[y] = Some(1 - cx);
                    queue.push_back(y);
                }
                Some(cy) if cy == cx => return Ok(None),
                Some(_) => {}
            }
        }
    }
    Ok(Some(colour.into_iter().map(|c| c.unwrap_or(0)).collect()))
}

pub fn is_bipartite(g: &SignedMultigraph) -> Result<bool> {
    Ok(bipartition(g)?.is_some())
}

/// Euler data of a canonical surface with `l` boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EulerData {
    pub s: usize,
    pub c: usize,
    pub l: usize,
    pub canonical_genus: usize,
}

/// Genus from `χ = s - c = 2 - 2g - l`.
pub fn euler_data(g: &SignedMultigraph, l: usize) -> Result<EulerData> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if l == 0 {
        return Err(Error::Range("component count must be positive".into()));
    }
    let (s, c) = (g.vertex_count(), g.edge_count());
    let twice_genus = c as i64 - s as i64 + 2 - l as i64;
    if twice_genus < 0 {
        return Err(Error::NegativeGenus(twice_genus));
    }
    if twice_genus % 2 != 0 {
        return Err(Error::Parity(format!(
            "c - s + 2 - l = {twice_genus} is odd; {l} boundary components is impossible"
        )));
    }
    Ok(EulerData { s, c, l, canonical_genus: (twice_genus / 2) as usize })
}
