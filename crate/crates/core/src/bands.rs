//! Band and flat-band upper bounds from spanning trees of Seifert graphs, and
//! the parity lower bounds they are combined with.
//!
//! A spanning tree `T` of the Seifert graph collapses to a disc; every edge
//! outside `T` becomes a band, so `B ≤ c − s + 1`. Relabelling `T`
//! alternately by depth (`β` tree edges change sign, each costing a type II
//! move and four flat bands) makes every band's tree path sum to `±1`; a band
//! whose sign equals its path sum carries a full twist and costs two more
//! flat bands (`γ` of them). Hence `FB ≤ c − s + 1 + 4β + 2γ`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::poly::determinant;
use crate::seifert_graph::{bipartition, graph_from_braid, Sign, SignedMultigraph};

/// Trees counted by the matrix-tree theorem before exhaustive enumeration
/// is abandoned for the heuristic search.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Quantity {
    B,
    FB,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::B => write!(f, "B"),
            Quantity::FB => write!(f, "FB"),
        }
    }
}

/// One bound on `B` or `FB` together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundWitness {
    pub kind: BoundKind,
    pub quantity: Quantity,
    pub value: u64,
    pub source: String,
}

impl BoundWitness {
    pub fn upper(quantity: Quantity, value: u64, source: impl Into<String>) -> Self {
        BoundWitness { kind: BoundKind::Upper, quantity, value, source: source.into() }
    }

    pub fn lower(quantity: Quantity, value: u64, source: impl Into<String>) -> Self {
        BoundWitness { kind: BoundKind::Lower, quantity, value, source: source.into() }
    }
}

/// A spanning tree hung from a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    edges: Vec<usize>,
    root: usize,
    in_tree: Vec<bool>,
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl RootedTree {
    /// Validates that `edges` is a spanning tree of `g`.
    pub fn new(g: &SignedMultigraph, edges: &[usize], root: usize) -> Result<Self> {
        let s = g.vertex_count();
        if root >= s {
            return Err(Error::Range(format!("root {root} outside 0..{s}")));
        }
        if edges.len() + 1 != s {
            return Err(Error::InvalidInput(format!(
                "a spanning tree on {s} vertices has {} edges, got {}",
                s - 1,
                edges.len()
            )));
        }
        let mut in_tree = vec![false; g.edge_count()];
        let mut adj = vec![Vec::new(); s];
        for &id in edges {
            if id >= g.edge_count() || in_tree[id] {
                return Err(Error::InvalidInput(format!("bad tree edge {id}")));
            }
            in_tree[id] = true;
            let e = g.edge(id);
            adj[e.u].push(id);
            adj[e.v].push(id);
        }
        let mut parent = vec![None; s];
        let mut depth = vec![0; s];
        let mut seen = vec![false; s];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            adj[x].sort_unstable();
            for &id in &adj[x] {
                let y = g.edge(id).other(x);
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    parent[y] = Some((x, id));
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != s {
            return Err(Error::InvalidInput("tree edges do not span the graph".into()));
        }
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        Ok(RootedTree { edges: sorted, root, in_tree, parent, depth })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.in_tree[edge]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Depth of the deeper endpoint of a tree edge.
    pub fn edge_depth(&self, g: &SignedMultigraph, edge: usize) -> usize {
        let e = g.edge(edge);
        self.depth[e.u].max(self.depth[e.v])
    }

    /// Tree edges on the unique path between `u` and `v`.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let (mut a, mut b) = (u, v);
        let mut from_a = Vec::new();
        let mut from_b = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, id) = self.parent[a].expect("non-root vertex has a parent");
                from_a.push(id);
                a = p;
            } else {
                let (p, id) = self.parent[b].expect("non-root vertex has a parent");
                from_b.push(id);
                b = p;
            }
        }
        from_a.extend(from_b.into_iter().rev());
        from_a
    }
}

/// Tree edge id → target sign.
pub type Labeling = BTreeMap<usize, Sign>;

/// Everything derived from one (tree, root, start sign) choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreeAnalysis {
    pub tree: Vec<usize>,
    pub root: usize,
    pub start_sign: Sign,
    pub labeling: Labeling,
    pub beta: u64,
    pub gamma: u64,
    /// Framing of each band (non-tree edge) against the alternating labels.
    pub framings: BTreeMap<usize, i64>,
    pub band_bound: u64,
    pub flat_bound: u64,
}

fn require_connected(g: &SignedMultigraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::NotConnected)
    }
}

fn require_bipartite(g: &SignedMultigraph) -> Result<()> {
    match bipartition(g)? {
        Some(_) => Ok(()),
        None => Err(Error::NotBipartite),
    }
}

/// `B ≤ c − s + 1`: collapse any spanning tree to a disc.
pub fn band_upper_bound(g: &SignedMultigraph) -> Result<BoundWitness> {
    require_connected(g)?;
    let value = g.cycle_rank() as u64;
    Ok(BoundWitness::upper(
        Quantity::B,
        value,
        format!(
            "cycle rank of the Seifert graph: c - s + 1 = {} - {} + 1 = {value}",
            g.edge_count(),
            g.vertex_count()
        ),
    ))
}

/// Breadth-first spanning tree from `root`; vertices are expanded in queue
/// order and each scans its incident edges by increasing id.
pub fn spanning_tree(g: &SignedMultigraph, root: usize) -> Result<Vec<usize>> {
    require_connected(g)?;
    if root >= g.vertex_count() {
        return Err(Error::Range(format!("root {root} outside 0..{}", g.vertex_count())));
    }
    let inc = g.incidence();
    let mut seen = vec![false; g.vertex_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut tree = Vec::new();
    while let Some(x) = queue.pop_front() {
        for &id in &inc[x] {
            let y = g.edge(id).other(x);
            if !seen[y] {
                seen[y] = true;
                tree.push(id);
                queue.push_back(y);
            }
        }
    }
    tree.sort_unstable();
    Ok(tree)
}

/// Label of a tree edge whose deeper endpoint sits at depth `d`:
/// `start · (−1)^(d−1)`.
pub fn alternating_labeling(g: &SignedMultigraph, tree: &RootedTree, start: Sign) -> Labeling {
    tree.edges()
        .iter()
        .map(|&id| {
            let d = tree.edge_depth(g, id);
            let label = if d % 2 == 1 { start } else { start.flip() };
            (id, label)
        })
        .collect()
}

fn path_sum(g: &SignedMultigraph, tree: &RootedTree, labeling: &Labeling, edge: usize) -> i64 {
    let e = g.edge(edge);
    tree.path(e.u, e.v).iter().map(|id| labeling[id].value()).sum()
}

fn actual_path_sum(g: &SignedMultigraph, tree: &RootedTree, edge: usize) -> i64 {
    let e = g.edge(edge);
    tree.path(e.u, e.v).iter().map(|&id| g.edge(id).sign.value()).sum()
}

fn require_band(tree: &RootedTree, edge: usize) -> Result<()> {
    if tree.contains(edge) {
        Err(Error::InvalidInput(format!("edge {edge} belongs to the tree")))
    } else {
        Ok(())
    }
}

/// Sum of the labels along the tree path joining the endpoints of a band.
/// On bipartite graphs with an alternating labeling this is always `±1`.
pub fn path_sign_sum(
    g: &SignedMultigraph,
    tree: &RootedTree,
    labeling: &Labeling,
    edge: usize,
) -> Result<i64> {
    require_bipartite(g)?;
    require_band(tree, edge)?;
    Ok(path_sum(g, tree, labeling, edge))
}

/// Tree edges whose actual sign differs from their label.
pub fn beta_count(g: &SignedMultigraph, tree: &RootedTree, labeling: &Labeling) -> u64 {
    tree.edges()
        .iter()
        .filter(|&&id| g.edge(id).sign != labeling[&id])
        .count() as u64
}

fn gamma_unchecked(g: &SignedMultigraph, tree: &RootedTree, labeling: &Labeling) -> u64 {
    (0..g.edge_count())
        .filter(|&id| !tree.contains(id))
        .filter(|&id| g.edge(id).sign.value() == path_sum(g, tree, labeling, id))
        .count() as u64
}

/// Bands whose sign equals the label sum along their tree path.
pub fn gamma_count(g: &SignedMultigraph, tree: &RootedTree, labeling: &Labeling) -> Result<u64> {
    require_bipartite(g)?;
    Ok(gamma_unchecked(g, tree, labeling))
}

/// Full twists `n_e = (k + ε(e)) / 2` of a band, with `k` summed over the
/// labels or, with `use_actual_signs`, over the tree's own signs.
pub fn framing(
    g: &SignedMultigraph,
    tree: &RootedTree,
    labeling: &Labeling,
    edge: usize,
    use_actual_signs: bool,
) -> Result<i64> {
    require_bipartite(g)?;
    require_band(tree, edge)?;
    let k = if use_actual_signs {
        actual_path_sum(g, tree, edge)
    } else {
        path_sum(g, tree, labeling, edge)
    };
    let twice = k + g.edge(edge).sign.value();
    if twice % 2 != 0 {
        return Err(Error::Internal(format!("odd k + ε = {twice} on a bipartite graph")));
    }
    Ok(twice / 2)
}

fn analyze_unchecked(g: &SignedMultigraph, tree: &RootedTree, start: Sign) -> SpanningTreeAnalysis {
    let labeling = alternating_labeling(g, tree, start);
    let beta = beta_count(g, tree, &labeling);
    let framings: BTreeMap<usize, i64> = (0..g.edge_count())
        .filter(|&id| !tree.contains(id))
        .map(|id| (id, (path_sum(g, tree, &labeling, id) + g.edge(id).sign.value()) / 2))
        .collect();
    let gamma = framings.values().filter(|&&n| n != 0).count() as u64;
    let band_bound = g.cycle_rank() as u64;
    SpanningTreeAnalysis {
        tree: tree.edges().to_vec(),
        root: tree.root(),
        start_sign: start,
        labeling,
        beta,
        gamma,
        framings,
        band_bound,
        flat_bound: band_bound + 4 * beta + 2 * gamma,
    }
}

/// Full analysis of one (tree, root, start sign) triple.
pub fn analyze_tree(
    g: &SignedMultigraph,
    tree: &[usize],
    root: usize,
    start: Sign,
) -> Result<SpanningTreeAnalysis> {
    require_bipartite(g)?;
    let rooted = RootedTree::new(g, tree, root)?;
    Ok(analyze_unchecked(g, &rooted, start))
}

fn flat_witness(a: &SpanningTreeAnalysis, how: &str) -> BoundWitness {
    BoundWitness::upper(
        Quantity::FB,
        a.flat_bound,
        format!(
            "spanning-tree disc ({how}; root {}, first label {}): c - s + 1 + 4*beta + 2*gamma = {} + 4*{} + 2*{} = {}",
            a.root, a.start_sign, a.band_bound, a.beta, a.gamma, a.flat_bound
        ),
    )
}

/// `FB ≤ c − s + 1 + 4β + 2γ` for the given tree, root and start sign.
pub fn flat_upper_bound(
    g: &SignedMultigraph,
    tree: &[usize],
    root: usize,
    start: Sign,
) -> Result<BoundWitness> {
    let a = analyze_tree(g, tree, root, start)?;
    Ok(flat_witness(&a, "given tree"))
}

/// Number of spanning trees, by the matrix-tree theorem.
pub fn count_spanning_trees(g: &SignedMultigraph) -> BigInt {
    let s = g.vertex_count();
    let mut lap = vec![vec![BigInt::from(0); s]; s];
    for e in g.edges() {
        lap[e.u][e.u] += 1;
        lap[e.v][e.v] += 1;
        lap[e.u][e.v] -= 1;
        lap[e.v][e.u] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    determinant(&minor).unwrap_or_default()
}

struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu { parent: (0..n).collect(), size: vec![1; n], history: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push((ra, rb));
        true
    }

    fn rollback(&mut self) {
        if let Some((ra, rb)) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

fn connected_without(g: &SignedMultigraph, excluded: &[bool]) -> bool {
    let mut dsu = RollbackDsu::new(g.vertex_count());
    let mut parts = g.vertex_count();
    for (id, e) in g.edges().iter().enumerate() {
        if !excluded[id] && dsu.union(e.u, e.v) {
            parts -= 1;
        }
    }
    parts == 1
}

/// All spanning trees (sorted edge-id lists, lexicographic order), or `None`
/// if there are more than `limit`.
pub fn enumerate_spanning_trees(g: &SignedMultigraph, limit: usize) -> Option<Vec<Vec<usize>>> {
    struct Search<'a> {
        g: &'a SignedMultigraph,
        dsu: RollbackDsu,
        excluded: Vec<bool>,
        chosen: Vec<usize>,
        out: Vec<Vec<usize>>,
        limit: usize,
        overflow: bool,
    }

    impl Search<'_> {
        fn run(&mut self, idx: usize) {
            if self.overflow {
                return;
            }
            if self.chosen.len() + 1 == self.g.vertex_count() {
                if self.out.len() == self.limit {
                    self.overflow = true;
                } else {
                    self.out.push(self.chosen.clone());
                }
                return;
            }
            if idx == self.g.edge_count() {
                return;
            }
            let e = self.g.edge(idx);
            if self.dsu.union(e.u, e.v) {
                self.chosen.push(idx);
                self.run(idx + 1);
                self.chosen.pop();
                self.dsu.rollback();
            }
            self.excluded[idx] = true;
            if connected_without(self.g, &self.excluded) {
                self.run(idx + 1);
            }
            self.excluded[idx] = false;
        }
    }

    if !g.is_connected() {
        return Some(Vec::new());
    }
    let mut search = Search {
        g,
        dsu: RollbackDsu::new(g.vertex_count()),
        excluded: vec![false; g.edge_count()],
        chosen: Vec::new(),
        out: Vec::new(),
        limit,
        overflow: false,
    };
    search.run(0);
    (!search.overflow).then_some(search.out)
}

/// Best analysis of one tree over every root and both start signs
/// (`−` tried first; the first strict improvement wins).
fn best_for_tree(g: &SignedMultigraph, tree: &[usize]) -> SpanningTreeAnalysis {
    let mut best: Option<SpanningTreeAnalysis> = None;
    for root in 0..g.vertex_count() {
        let rooted = RootedTree::new(g, tree, root).expect("enumerated trees are spanning");
        for start in [Sign::Minus, Sign::Plus] {
            let a = analyze_unchecked(g, &rooted, start);
            if best.as_ref().is_none_or(|b| a.flat_bound < b.flat_bound) {
                best = Some(a);
            }
        }
    }
    best.expect("graph has at least one vertex")
}

/// Cycle edges of `tree + band`, i.e. the tree path between the band's ends.
fn swap_candidates(g: &SignedMultigraph, tree: &[usize], band: usize) -> Vec<usize> {
    let rooted = RootedTree::new(g, tree, 0).expect("spanning tree");
    let e = g.edge(band);
    let mut path = rooted.path(e.u, e.v);
    path.sort_unstable();
    path
}

/// Smallest flat bound over (tree, root, start sign).
///
/// With at most `budget` spanning trees every tree is examined; otherwise the
/// search starts from the breadth-first tree of every root and then improves
/// the best one by single edge swaps until no swap helps. Deterministic.
pub fn minimize_flat_bound(
    g: &SignedMultigraph,
    budget: usize,
) -> Result<(BoundWitness, SpanningTreeAnalysis)> {
    require_bipartite(g)?;
    let count = count_spanning_trees(g);
    if count <= BigInt::from(budget) {
        if let Some(trees) = enumerate_spanning_trees(g, budget) {
            let mut best: Option<SpanningTreeAnalysis> = None;
            for tree in &trees {
                let a = best_for_tree(g, tree);
                if best.as_ref().is_none_or(|b| a.flat_bound < b.flat_bound) {
                    best = Some(a);
                }
            }
            let best = best.ok_or(Error::NotConnected)?;
            let how = format!("best of all {} spanning trees", trees.len());
            return Ok((flat_witness(&best, &how), best));
        }
    }

    let mut best: Option<SpanningTreeAnalysis> = None;
    for root in 0..g.vertex_count() {
        let tree = spanning_tree(g, root)?;
        let a = best_for_tree(g, &tree);
        if best.as_ref().is_none_or(|b| a.flat_bound < b.flat_bound) {
            best = Some(a);
        }
    }
    let mut best = best.ok_or(Error::NotConnected)?;
    'climb: loop {
        for band in 0..g.edge_count() {
            if best.tree.binary_search(&band).is_ok() {
                continue;
            }
            for out in swap_candidates(g, &best.tree, band) {
                let mut tree: Vec<usize> = best.tree.iter().copied().filter(|&id| id != out).collect();
                tree.push(band);
                tree.sort_unstable();
                let a = best_for_tree(g, &tree);
                if a.flat_bound < best.flat_bound {
                    best = a;
                    continue 'climb;
                }
            }
        }
        break;
    }
    let how = format!("breadth-first trees plus edge swaps, {count} spanning trees exceed budget {budget}");
    Ok((flat_witness(&best, &how), best))
}

/// `B ≤ m` where `m = len − (n − 1)`: the first occurrence of each generator
/// builds the disc, every other letter is a band.
pub fn braid_band_bound(w: &BraidWord) -> Result<BoundWitness> {
    let g = graph_from_braid(w)?;
    let m = (w.len() + 1 - w.strands()) as u64;
    let via_graph = band_upper_bound(&g)?.value;
    if via_graph != m {
        return Err(Error::Internal(format!(
            "braid band bound {m} disagrees with cycle rank {via_graph}"
        )));
    }
    Ok(BoundWitness::upper(
        Quantity::B,
        m,
        format!("braid disc: length - (strands - 1) = {} - {} = {m}", w.len(), w.strands() - 1),
    ))
}

/// Flat bound from a braid word, generator by generator.
///
/// For generator `i` with `p` positive and `q` negative letters, a disc letter
/// of sign `d` leaves `p + q − 1` bands, and each remaining letter of sign `d`
/// needs two extra flat bands. If no letter has sign `d`, a cancelling pair
/// `σ_i^d σ_i^{−d}` is inserted first, giving `p + q + 1` bands and no extras.
pub fn braid_flat_bound(w: &BraidWord) -> Result<BoundWitness> {
    if let Some(i) = w.missing_generator() {
        return Err(Error::DisconnectedDiagram(i));
    }
    let occ = w.occurrences();
    let mut total = 0u64;
    let mut parts = Vec::new();
    for (i, positions) in occ.iter().enumerate().skip(1) {
        let p = positions.iter().filter(|&&pos| w.letters()[pos] > 0).count() as u64;
        let q = positions.len() as u64 - p;
        let cost = |same: u64| {
            if same >= 1 {
                (p + q - 1) + 2 * (same - 1)
            } else {
                p + q + 1
            }
        };
        // negative disc letter first on ties
        let (cost_neg, cost_pos) = (cost(q), cost(p));
        let (c, d) = if cost_neg <= cost_pos { (cost_neg, '-') } else { (cost_pos, '+') };
        total += c;
        parts.push(format!("sigma_{i}: {c} (disc {d})"));
    }
    Ok(BoundWitness::upper(
        Quantity::FB,
        total,
        format!("braid flat disc, per generator [{}] = {total}", parts.join(", ")),
    ))
}

/// Least `n ≥ value` with `n ≡ l + 1 (mod 2)`: an `n`-banded surface has
/// a boundary with `n + 1 − 2k` components.
pub fn round_to_parity(value: u64, l: usize) -> u64 {
    if (value + l as u64) % 2 == 1 {
        value
    } else {
        value + 1
    }
}

/// Lower bounds shared by `B` and `FB`:
/// `max(l − 1, 2g + l − 1, deg ∇)` rounded up to the parity of `l + 1`.
pub fn band_lower_bounds(
    l: usize,
    conway_degree: Option<usize>,
    genus_lower: Option<u64>,
) -> (BoundWitness, BoundWitness) {
    let l = l.max(1);
    let mut base = (l - 1) as u64;
    let mut why = format!("at most n + 1 boundary components: n >= l - 1 = {base}");
    if let Some(g) = genus_lower {
        let v = 2 * g + l as u64 - 1;
        if v > base {
            base = v;
            why = format!("genus: n >= 2g + l - 1 = 2*{g} + {l} - 1 = {v}");
        }
    }
    if let Some(d) = conway_degree {
        let d = d as u64;
        if d > base {
            base = d;
            why = format!("Conway degree: n >= 2g + l - 1 >= deg = {d}");
        }
    }
    let value = round_to_parity(base, l);
    let source = if value == base {
        why
    } else {
        format!("{why}; components = n + 1 (mod 2) raises it to {value}")
    };
    (
        BoundWitness::lower(Quantity::B, value, source.clone()),
        BoundWitness::lower(Quantity::FB, value, source),
    )
}
