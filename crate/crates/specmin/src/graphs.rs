//! Graph data model, family constructors, products, and the combinatorial
//! predicates consumed by the bound engine.
//!
//! Vertices are numbered 1..=n everywhere in the public interface. Internally
//! adjacency is kept as one u64 neighbor mask per vertex, which caps the
//! supported order at 64; the largest graph the rest of the crate ever builds
//! has 34 vertices.

use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

pub const MAX_VERTICES: usize = 64;

/// Undirected simple graph on vertices 1..=n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(u16, u16)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Build a graph, normalizing edge endpoint order and rejecting loops,
    /// duplicates, and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(u16, u16)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("graph needs at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(format!("order {n} exceeds {MAX_VERTICES}")));
        }
        let mut norm: Vec<(u16, u16)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidParams(format!("loop at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if u == 0 || v as usize > n {
                return Err(Error::InvalidParams(format!(
                    "edge ({a},{b}) out of range 1..={n}"
                )));
            }
            norm.push((u, v));
        }
        norm.sort_unstable();
        norm.dedup();
        if norm.len() != edges.len() {
            return Err(Error::InvalidParams("duplicate edge".into()));
        }
        Ok(Graph { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u16, u16)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u16, v: u16) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Neighbor bitmasks, one u64 per vertex, bit k set for neighbor k+1.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            m[u as usize - 1] |= 1 << (v - 1);
            m[v as usize - 1] |= 1 << (u - 1);
        }
        m
    }

    pub fn degree(&self, v: u16) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            d[u as usize - 1] += 1;
            d[v as usize - 1] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        self.n == 1 || component_masks(self.n, &self.neighbor_masks()).len() == 1
    }

    /// Vertex sets of the connected components, each sorted, as 1-based lists.
    pub fn components(&self) -> Vec<Vec<u16>> {
        component_masks(self.n, &self.neighbor_masks())
            .into_iter()
            .map(|m| mask_vertices(m))
            .collect()
    }

    /// Induced subgraph on `vertices` (1-based, need not be sorted),
    /// relabeled 1..=k in the sorted order of `vertices`.
    pub fn induced(&self, vertices: &[u16]) -> Result<Graph> {
        let mut vs: Vec<u16> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != vertices.len() {
            return Err(Error::InvalidParams("duplicate vertex in induced set".into()));
        }
        if vs.is_empty() || *vs.last().unwrap() as usize > self.n {
            return Err(Error::InvalidParams("induced set out of range".into()));
        }
        let index = |v: u16| (vs.binary_search(&v).unwrap() + 1) as u16;
        let edges: Vec<(u16, u16)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| vs.binary_search(&u).is_ok() && vs.binary_search(&v).is_ok())
            .map(|&(u, v)| (index(u), index(v)))
            .collect();
        Graph::new(vs.len(), &edges)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=self.n as u16 {
            for v in (u + 1)..=self.n as u16 {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph { n: self.n, edges }
    }
}

fn component_masks(n: usize, masks: &[u64]) -> Vec<u64> {
    let all: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut unseen = all;
    let mut comps = Vec::new();
    while unseen != 0 {
        let start = unseen.trailing_zeros() as usize;
        let mut comp: u64 = 1 << start;
        loop {
            let mut grown = comp;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grown |= masks[v];
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        comps.push(comp);
        unseen &= !comp;
    }
    comps
}

fn mask_vertices(mut m: u64) -> Vec<u16> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as u16 + 1);
        m &= m - 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Families

/// Graph family identifiers accepted by [`make_family`] and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Empty,
    CompleteBipartite,
    CompleteMinusEdge,
    Hypercube,
    GenStar,
    GenBull,
    CliquePath,
    CliqueStar,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "empty" => Family::Empty,
            "completebipartite" | "complete_bipartite" => Family::CompleteBipartite,
            "completeminusedge" | "complete_minus_edge" => Family::CompleteMinusEdge,
            "hypercube" => Family::Hypercube,
            "genstar" => Family::GenStar,
            "genbull" => Family::GenBull,
            "cliquepath" => Family::CliquePath,
            "cliquestar" => Family::CliqueStar,
            other => return Err(Error::InvalidParams(format!("unknown family '{other}'"))),
        })
    }
}

/// Construct a named family member.
///
/// Numbering conventions: paths and cycles are numbered along the walk;
/// clique-path vertices run consecutively clique by clique with consecutive
/// cliques sharing one vertex; the clique-star center is the last vertex;
/// the generalized star S(a,b,1) is the path on a+b+1 vertices with the extra
/// leaf (vertex n) attached to vertex a+1; the generalized bull GB(k,m) is
/// the path on k+m+3 vertices plus the chord {k+1, k+3}.
pub fn make_family(kind: Family, params: &[usize]) -> Result<Graph> {
    let one = |params: &[usize]| -> Result<usize> {
        if params.len() != 1 {
            return Err(Error::InvalidParams("expected one parameter".into()));
        }
        Ok(params[0])
    };
    match kind {
        Family::Path => {
            let n = one(params)?;
            if n < 1 {
                return Err(Error::InvalidParams("path needs n >= 1".into()));
            }
            let edges: Vec<_> = (1..n as u16).map(|i| (i, i + 1)).collect();
            Graph::new(n, &edges)
        }
        Family::Cycle => {
            let n = one(params)?;
            if n < 3 {
                return Err(Error::InvalidParams("cycle needs n >= 3".into()));
            }
            let mut edges: Vec<_> = (1..n as u16).map(|i| (i, i + 1)).collect();
            edges.push((1, n as u16));
            Graph::new(n, &edges)
        }
        Family::Complete => {
            let n = one(params)?;
            if n < 1 {
                return Err(Error::InvalidParams("complete graph needs n >= 1".into()));
            }
            let mut edges = Vec::new();
            for u in 1..=n as u16 {
                for v in (u + 1)..=n as u16 {
                    edges.push((u, v));
                }
            }
            Graph::new(n, &edges)
        }
        Family::Empty => {
            let n = one(params)?;
            Graph::new(n, &[])
        }
        Family::CompleteBipartite => {
            if params.len() != 2 {
                return Err(Error::InvalidParams("expected two part sizes".into()));
            }
            let (m, n) = (params[0], params[1]);
            if m < 1 || n < 1 {
                return Err(Error::InvalidParams("part sizes must be positive".into()));
            }
            let mut edges = Vec::new();
            for u in 1..=m as u16 {
                for v in 1..=n as u16 {
                    edges.push((u, m as u16 + v));
                }
            }
            Graph::new(m + n, &edges)
        }
        Family::CompleteMinusEdge => {
            let n = one(params)?;
            if n < 3 {
                return Err(Error::InvalidParams("needs n >= 3".into()));
            }
            let mut edges = Vec::new();
            for u in 1..=n as u16 {
                for v in (u + 1)..=n as u16 {
                    if (u, v) != (1, 2) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, &edges)
        }
        Family::Hypercube => {
            let d = one(params)?;
            if d < 1 || d > 6 {
                return Err(Error::InvalidParams("hypercube dimension must be 1..=6".into()));
            }
            let p2 = make_family(Family::Path, &[2])?;
            let mut g = p2.clone();
            for _ in 1..d {
                g = product(ProductKind::Cartesian, &g, &p2)?;
            }
            Ok(g)
        }
        Family::GenStar => {
            if params.len() != 2 {
                return Err(Error::InvalidParams("expected leg lengths a, b".into()));
            }
            let (a, b) = (params[0], params[1]);
            if a < 1 || b < 1 {
                return Err(Error::InvalidParams("legs must satisfy a, b >= 1".into()));
            }
            let n = a + b + 2;
            let mut edges: Vec<_> = (1..(a + b + 1) as u16).map(|i| (i, i + 1)).collect();
            edges.push((a as u16 + 1, n as u16));
            Graph::new(n, &edges)
        }
        Family::GenBull => {
            if params.len() != 2 {
                return Err(Error::InvalidParams("expected tail lengths k, m".into()));
            }
            let (k, m) = (params[0], params[1]);
            let n = k + m + 3;
            let mut edges: Vec<_> = (1..n as u16).map(|i| (i, i + 1)).collect();
            edges.push((k as u16 + 1, k as u16 + 3));
            Graph::new(n, &edges)
        }
        Family::CliquePath => clique_path(params),
        Family::CliqueStar => clique_star(params),
    }
}

fn check_clique_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.len() < 2 {
        return Err(Error::InvalidParams("need at least two cliques".into()));
    }
    if sizes.iter().any(|&s| s < 2) {
        return Err(Error::InvalidParams("every clique needs at least 2 vertices".into()));
    }
    Ok(())
}

fn clique_path(sizes: &[usize]) -> Result<Graph> {
    check_clique_sizes(sizes)?;
    let n: usize = sizes.iter().sum::<usize>() - (sizes.len() - 1);
    let mut edges = Vec::new();
    let mut start = 1u16;
    for &sz in sizes {
        let verts: Vec<u16> = (start..start + sz as u16).collect();
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                edges.push((verts[i], verts[j]));
            }
        }
        start += sz as u16 - 1;
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::new(n, &edges)
}

fn clique_star(sizes: &[usize]) -> Result<Graph> {
    check_clique_sizes(sizes)?;
    let n: usize = sizes.iter().sum::<usize>() - (sizes.len() - 1);
    let center = n as u16;
    let mut edges = Vec::new();
    let mut start = 1u16;
    for &sz in sizes {
        let mut verts: Vec<u16> = (start..start + sz as u16 - 1).collect();
        verts.push(center);
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                let (a, b) = (verts[i], verts[j]);
                edges.push(if a < b { (a, b) } else { (b, a) });
            }
        }
        start += sz as u16 - 1;
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::new(n, &edges)
}

// ---------------------------------------------------------------------------
// Products, joins, local operations

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Cartesian,
    Tensor,
    Strong,
}

impl std::str::FromStr for ProductKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cartesian" => ProductKind::Cartesian,
            "tensor" => ProductKind::Tensor,
            "strong" => ProductKind::Strong,
            other => return Err(Error::InvalidParams(format!("unknown product '{other}'"))),
        })
    }
}

/// Graph product with row-major vertex indexing: (u, u') -> (u-1)*|V(h)| + u'.
/// The indexing matches Kronecker block layout, so pattern checks of product
/// constructions need no permutation.
pub fn product(kind: ProductKind, g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.n(), h.n());
    let n = ng
        .checked_mul(nh)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| Error::TooLarge("product order exceeds 64".into()))?;
    let idx = |u: u16, v: u16| (u as usize - 1) * nh + v as usize;
    let mut edges: Vec<(u16, u16)> = Vec::new();
    let mut push = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        edges.push((a as u16, b as u16));
    };
    if matches!(kind, ProductKind::Cartesian | ProductKind::Strong) {
        for &(u, w) in g.edges() {
            for v in 1..=nh as u16 {
                push(idx(u, v), idx(w, v));
            }
        }
        for u in 1..=ng as u16 {
            for &(v, x) in h.edges() {
                push(idx(u, v), idx(u, x));
            }
        }
    }
    if matches!(kind, ProductKind::Tensor | ProductKind::Strong) {
        for &(u, w) in g.edges() {
            for &(v, x) in h.edges() {
                push(idx(u, v), idx(w, x));
                push(idx(u, x), idx(w, v));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::new(n, &edges)
}

/// Join G v H: all of G, all of H (shifted by |V(G)|), and every cross edge.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let ng = g.n();
    let n = ng + h.n();
    let mut edges: Vec<(u16, u16)> = g.edges().to_vec();
    for &(u, v) in h.edges() {
        edges.push((ng as u16 + u, ng as u16 + v));
    }
    for u in 1..=ng as u16 {
        for v in 1..=h.n() as u16 {
            edges.push((u, ng as u16 + v));
        }
    }
    Graph::new(n, &edges)
}

/// Local graph surgery recorded by [`GraphOpLog`].
#[derive(Clone, Debug)]
pub enum GraphOp {
    DeleteVertex(u16),
    DeleteEdge(u16, u16),
    ContractEdge(u16, u16),
    SubdivideEdge(u16, u16),
    /// Identify vertex `at` of the base graph with vertex `at_other` of
    /// `other`; other's remaining vertices are appended in order.
    VertexSum {
        at: u16,
        other: Graph,
        at_other: u16,
    },
    Join(Graph),
    Product(ProductKind, Graph),
}

/// A recorded operation together with its input and output.
#[derive(Clone, Debug)]
pub struct GraphOpLog {
    pub base: Graph,
    pub op: GraphOp,
    pub result: Graph,
}

impl GraphOpLog {
    pub fn record(base: Graph, op: GraphOp) -> Result<Self> {
        let result = apply_op(&base, &op)?;
        Ok(GraphOpLog { base, op, result })
    }

    /// True iff `result` still matches what `op` produces from `base`.
    pub fn verify(&self) -> bool {
        apply_op(&self.base, &self.op).map(|g| g == self.result).unwrap_or(false)
    }
}

pub fn apply_op(g: &Graph, op: &GraphOp) -> Result<Graph> {
    match op {
        GraphOp::DeleteVertex(v) => {
            let v = *v;
            if v == 0 || v as usize > g.n() {
                return Err(Error::MissingElement(format!("vertex {v}")));
            }
            if g.n() == 1 {
                return Err(Error::InvalidParams("cannot delete the last vertex".into()));
            }
            let relabel = |u: u16| if u > v { u - 1 } else { u };
            let edges: Vec<_> = g
                .edges()
                .iter()
                .filter(|&&(a, b)| a != v && b != v)
                .map(|&(a, b)| (relabel(a), relabel(b)))
                .collect();
            Graph::new(g.n() - 1, &edges)
        }
        GraphOp::DeleteEdge(a, b) => {
            if !g.has_edge(*a, *b) {
                return Err(Error::MissingElement(format!("edge ({a},{b})")));
            }
            let key = if a < b { (*a, *b) } else { (*b, *a) };
            let edges: Vec<_> = g.edges().iter().copied().filter(|&e| e != key).collect();
            Graph::new(g.n(), &edges)
        }
        GraphOp::ContractEdge(a, b) => {
            if !g.has_edge(*a, *b) {
                return Err(Error::MissingElement(format!("edge ({a},{b})")));
            }
            let (keep, gone) = if a < b { (*a, *b) } else { (*b, *a) };
            let relabel = |u: u16| {
                let u = if u == gone { keep } else { u };
                if u > gone {
                    u - 1
                } else {
                    u
                }
            };
            let mut edges: Vec<(u16, u16)> = Vec::new();
            for &(u, v) in g.edges() {
                let (x, y) = (relabel(u), relabel(v));
                if x != y {
                    edges.push(if x < y { (x, y) } else { (y, x) });
                }
            }
            edges.sort_unstable();
            edges.dedup();
            Graph::new(g.n() - 1, &edges)
        }
        GraphOp::SubdivideEdge(a, b) => {
            if !g.has_edge(*a, *b) {
                return Err(Error::MissingElement(format!("edge ({a},{b})")));
            }
            let key = if a < b { (*a, *b) } else { (*b, *a) };
            let w = g.n() as u16 + 1;
            let mut edges: Vec<_> = g.edges().iter().copied().filter(|&e| e != key).collect();
            edges.push((*a.min(b), w));
            edges.push((*a.max(b), w));
            Graph::new(g.n() + 1, &edges)
        }
        GraphOp::VertexSum { at, other, at_other } => {
            if *at == 0 || *at as usize > g.n() {
                return Err(Error::MissingElement(format!("vertex {at}")));
            }
            if *at_other == 0 || *at_other as usize > other.n() {
                return Err(Error::MissingElement(format!("vertex {at_other} of summand")));
            }
            let base_n = g.n() as u16;
            // other's vertices except at_other map to base_n+1.. in order
            let mut map = vec![0u16; other.n() + 1];
            let mut next = base_n + 1;
            for u in 1..=other.n() as u16 {
                if u == *at_other {
                    map[u as usize] = *at;
                } else {
                    map[u as usize] = next;
                    next += 1;
                }
            }
            let mut edges: Vec<(u16, u16)> = g.edges().to_vec();
            for &(u, v) in other.edges() {
                let (x, y) = (map[u as usize], map[v as usize]);
                edges.push(if x < y { (x, y) } else { (y, x) });
            }
            Graph::new(g.n() + other.n() - 1, &edges)
        }
        GraphOp::Join(h) => join(g, h),
        GraphOp::Product(kind, h) => product(*kind, g, h),
    }
}

// ---------------------------------------------------------------------------
// Bound predicates

/// Largest d+1 over vertex pairs joined by a unique shortest path of length
/// d. Connected graphs with at least one edge always return >= 2 because an
/// adjacent pair's shortest path is the edge itself. K_1 returns 1.
pub fn unique_shortest_path_bound(g: &Graph) -> Result<u32> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let masks = g.neighbor_masks();
    let mut best = 1u32;
    for src in 0..n {
        let mut dist = vec![u32::MAX; n];
        let mut count = vec![0u64; n];
        dist[src] = 0;
        count[src] = 1;
        let mut frontier = vec![src];
        let mut d = 0u32;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &v in &frontier {
                let mut m = masks[v];
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if dist[w] == u32::MAX {
                        dist[w] = d + 1;
                        next.push(w);
                    }
                    if dist[w] == d + 1 {
                        count[w] = count[w].saturating_add(count[v]);
                    }
                }
            }
            frontier = next;
            d += 1;
        }
        for v in 0..n {
            if v != src && count[v] == 1 {
                best = best.max(dist[v] + 1);
            }
        }
    }
    Ok(best)
}

/// Minimum size of a zero forcing set under the rule: a colored vertex with
/// exactly one uncolored neighbor colors it. Exhaustive over subsets in
/// increasing size, starting at the minimum degree (a forcing set can never
/// be smaller).
pub fn zero_forcing_number(g: &Graph) -> Result<u32> {
    let n = g.n();
    if n > 32 {
        return Err(Error::TooLarge(format!("zero forcing capped at 32 vertices, got {n}")));
    }
    if n == 1 {
        return Ok(1);
    }
    let masks = g.neighbor_masks();
    let all: u64 = (1u64 << n) - 1;
    let closure_fills = |start: u64| -> bool {
        let mut colored = start;
        loop {
            let mut changed = false;
            let mut probe = colored;
            while probe != 0 {
                let v = probe.trailing_zeros() as usize;
                probe &= probe - 1;
                let uncolored = masks[v] & !colored;
                if uncolored != 0 && uncolored & (uncolored - 1) == 0 {
                    colored |= uncolored;
                    changed = true;
                }
            }
            if colored == all {
                return true;
            }
            if !changed {
                return false;
            }
        }
    };
    let min_deg = g.degrees().into_iter().min().unwrap_or(0).max(1);
    for k in min_deg..=n {
        // Gosper's hack over all k-subsets of n bits
        let mut subset: u64 = (1u64 << k) - 1;
        while subset <= all {
            if closure_fills(subset) {
                return Ok(k as u32);
            }
            let c = subset & subset.wrapping_neg();
            let r = subset + c;
            if r > all || c == 0 {
                break;
            }
            subset = (((r ^ subset) >> 2) / c) | r;
        }
    }
    Ok(n as u32)
}

/// Spanning-cycle test by bitmask dynamic programming.
pub fn has_hamilton_cycle(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n > 16 {
        return Err(Error::TooLarge(format!("hamilton test capped at 16 vertices, got {n}")));
    }
    if n < 3 {
        return Ok(false);
    }
    let masks = g.neighbor_masks();
    let full: usize = (1 << n) - 1;
    // reachable[mask] = set of endpoints v such that some path starting at
    // vertex 0 visits exactly `mask` and ends at v
    let mut reachable = vec![0u64; 1 << n];
    reachable[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reachable[mask] == 0 {
            continue;
        }
        let mut ends = reachable[mask];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut nbrs = masks[v] & !(mask as u64);
            while nbrs != 0 {
                let w = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                reachable[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    Ok(reachable[full] & masks[0] != 0)
}

/// An independent set S in which every pair has a common neighbor, yet the
/// union of those pairwise common neighborhoods has fewer than |S| vertices,
/// witnesses that no matrix in the pattern can have exactly two distinct
/// eigenvalues.
///
/// The every-pair hypothesis is essential. Normalizing a two-eigenvalue
/// matrix gives a symmetric involution B whose row u is supported on
/// {u} union N(u), so rows at independent vertices overlap only inside the
/// union U of pairwise common neighborhoods and their restrictions to U are
/// pairwise orthogonal. When each pair of set vertices shares a neighbor,
/// every restricted row keeps a nonzero entry (off-diagonal entries on edges
/// never vanish), forcing |S| <= |U|. If some pair has no common neighbor
/// the restricted row can be zero and the count argument collapses: the
/// 4-cube carries an involution witness with exactly two eigenvalues even
/// though {0000, 0011, 1101} has union {0001, 0010} of size two.
pub fn violates_independent_set_condition(g: &Graph, set: &[u16]) -> bool {
    if set.len() < 2 {
        return false;
    }
    let masks = g.neighbor_masks();
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.has_edge(u, v) {
                return false;
            }
        }
    }
    let mut union: u64 = 0;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            let common = masks[u as usize - 1] & masks[v as usize - 1];
            if common == 0 {
                return false;
            }
            union |= common;
        }
    }
    (union.count_ones() as usize) < set.len()
}

/// Search all independent sets of size 2..=max_size for a violation of the
/// common-neighborhood condition; a hit certifies q >= 3.
pub fn independent_set_violation(g: &Graph, max_size: usize) -> Option<Vec<u16>> {
    let n = g.n();
    let masks = g.neighbor_masks();
    let max_size = max_size.min(n);
    // depth-first extension over vertices in increasing order
    fn extend(
        g: &Graph,
        masks: &[u64],
        current: &mut Vec<u16>,
        next: u16,
        max_size: usize,
    ) -> Option<Vec<u16>> {
        if current.len() >= 2 && violates_independent_set_condition(g, current) {
            return Some(current.clone());
        }
        if current.len() == max_size {
            return None;
        }
        for v in next..=g.n() as u16 {
            if current
                .iter()
                .all(|&u| masks[u as usize - 1] & (1 << (v - 1)) == 0)
            {
                current.push(v);
                if let Some(hit) = extend(g, masks, current, v + 1, max_size) {
                    return Some(hit);
                }
                current.pop();
            }
        }
        None
    }
    extend(g, &masks, &mut Vec::new(), 1, max_size)
}

/// Vertex bijection embedding every edge of `h` into `g` (same order), found
/// by backtracking with degree pruning. Returns the image of vertex i at
/// position i-1.
pub fn is_spanning_subgraph_of(h: &Graph, g: &Graph) -> Result<Option<Vec<u16>>> {
    if h.n() != g.n() {
        return Err(Error::OrderMismatch(format!("{} vs {}", h.n(), g.n())));
    }
    let n = h.n();
    if n > 10 {
        return Err(Error::TooLarge(format!("subgraph search capped at 10 vertices, got {n}")));
    }
    if h.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let hdeg = h.degrees();
    let gdeg = g.degrees();
    let gmasks = g.neighbor_masks();
    let hmasks = h.neighbor_masks();
    // map h vertices in decreasing-degree order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(hdeg[v]));
    let mut image = vec![usize::MAX; n]; // h vertex -> g vertex
    let mut used: u64 = 0;
    fn assign(
        pos: usize,
        order: &[usize],
        hdeg: &[usize],
        gdeg: &[usize],
        hmasks: &[u64],
        gmasks: &[u64],
        image: &mut [usize],
        used: &mut u64,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let hv = order[pos];
        for gv in 0..gdeg.len() {
            if *used & (1 << gv) != 0 || gdeg[gv] < hdeg[hv] {
                continue;
            }
            let mut ok = true;
            let mut nbrs = hmasks[hv];
            while nbrs != 0 {
                let hw = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if image[hw] != usize::MAX && gmasks[gv] & (1 << image[hw]) == 0 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            image[hv] = gv;
            *used |= 1 << gv;
            if assign(pos + 1, order, hdeg, gdeg, hmasks, gmasks, image, used) {
                return true;
            }
            image[hv] = usize::MAX;
            *used &= !(1 << gv);
        }
        false
    }
    if assign(0, &order, &hdeg, &gdeg, &hmasks, &gmasks, &mut image, &mut used) {
        Ok(Some(image.iter().map(|&v| v as u16 + 1).collect()))
    } else {
        Ok(None)
    }
}

/// The graph classes whose minimum distinct-eigenvalue count is at least
/// n-1: paths, a path plus an isolated vertex, generalized stars S(a,b,1),
/// and generalized bulls GB(a,b).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NearPathClass {
    Path,
    PathPlusIsolated,
    GenStar,
    GenBull,
}

pub fn near_path_class(g: &Graph) -> Option<NearPathClass> {
    let n = g.n();
    let deg = g.degrees();
    let comps = g.components();
    let is_path = |g: &Graph| -> bool {
        let n = g.n();
        if !g.is_connected() {
            return false;
        }
        if n == 1 {
            return g.edge_count() == 0;
        }
        let mut d = g.degrees();
        d.sort_unstable();
        d == [vec![1, 1], vec![2; n - 2]].concat()
    };
    if is_path(g) {
        return Some(NearPathClass::Path);
    }
    if comps.len() == 2 {
        let (a, b) = (&comps[0], &comps[1]);
        let (iso, rest) = if a.len() == 1 { (a, b) } else { (b, a) };
        if iso.len() == 1 && is_path(&g.induced(rest).ok()?) {
            return Some(NearPathClass::PathPlusIsolated);
        }
    }
    if comps.len() != 1 {
        return None;
    }
    // generalized star: a tree with one degree-3 branch vertex, three leaves,
    // one of which is adjacent to the branch vertex, legs a, b >= 1
    if g.edge_count() == n - 1 && n >= 4 {
        let three: Vec<_> = (0..n).filter(|&v| deg[v] == 3).collect();
        let leaves = (0..n).filter(|&v| deg[v] == 1).count();
        if three.len() == 1 && leaves == 3 && deg.iter().all(|&d| d <= 3) {
            let center = three[0] as u16 + 1;
            let masks = g.neighbor_masks();
            // legs have lengths a, b, 1 with a, b >= 1, so at least one leaf
            // sits next to the branch vertex; the other two legs may also
            // have length one
            let leaf_next_to_center = (0..n)
                .any(|v| deg[v] == 1 && masks[v] & (1 << (center - 1)) != 0);
            if leaf_next_to_center {
                return Some(NearPathClass::GenStar);
            }
        }
        return None;
    }
    // generalized bull: unicyclic, cycle length 3, at most one pendant path
    // hanging from each of two distinct triangle vertices
    if g.edge_count() == n && deg.iter().all(|&d| d <= 3) {
        let tri: Vec<_> = (0..n).filter(|&v| deg[v] == 3).collect();
        // strip leaves repeatedly; what remains is the unique cycle
        let masks = g.neighbor_masks();
        let mut alive: u64 = if n == 64 { !0 } else { (1 << n) - 1 };
        loop {
            let mut removed = false;
            for v in 0..n {
                if alive & (1 << v) != 0 && (masks[v] & alive).count_ones() == 1 {
                    alive &= !(1 << v);
                    removed = true;
                }
            }
            if !removed {
                break;
            }
        }
        if alive.count_ones() != 3 {
            return None;
        }
        // every branch vertex must lie on the triangle, and at most two of
        // the triangle vertices may carry a tail
        if tri.iter().any(|&v| alive & (1 << v) == 0) {
            return None;
        }
        let tails = (0..n)
            .filter(|&v| alive & (1 << v) != 0 && (masks[v] & !alive) != 0)
            .count();
        // non-triangle structure must be paths: every off-triangle vertex has
        // degree <= 2 and exactly deg-1 or deg-2 alive links... with max
        // degree 3 on the triangle and leaf stripping succeeding, the only
        // way to fail is a tail that branches, which needs degree >= 3 off
        // the triangle
        let off_branch = (0..n).any(|v| alive & (1 << v) == 0 && deg[v] >= 3);
        if tails <= 2 && !off_branch {
            return Some(NearPathClass::GenBull);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Canonical forms and enumeration

/// Canonical key: the minimum adjacency bitstring over all vertex
/// permutations for n <= 8, or the labeled edge list beyond that.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonKey {
    Bits(usize, u64),
    Labeled(usize, Vec<(u16, u16)>),
}

pub fn canonical_key(g: &Graph) -> CanonKey {
    let n = g.n();
    if n > 8 {
        return CanonKey::Labeled(n, g.edges().to_vec());
    }
    CanonKey::Bits(n, canonical_bits(g))
}

fn adjacency_bits(n: usize, adj: &[u64], perm: &[usize]) -> u64 {
    let mut bits: u64 = 0;
    let mut k = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            if adj[perm[a]] & (1 << perm[b]) != 0 {
                bits |= 1 << k;
            }
            k += 1;
        }
    }
    bits
}

fn canonical_bits(g: &Graph) -> u64 {
    let n = g.n();
    let adj = g.neighbor_masks();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = adjacency_bits(n, &adj, &perm);
    // Heap's algorithm, iterative
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let bits = adjacency_bits(n, &adj, &perm);
            if bits < best {
                best = bits;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for a in 0..n as u16 {
        for b in (a + 1)..n as u16 {
            if bits >> k & 1 == 1 {
                edges.push((a + 1, b + 1));
            }
            k += 1;
        }
    }
    Graph { n, edges }
}

/// All connected graphs on n vertices up to isomorphism, smallest canonical
/// bitstring first. Counts for n = 1..6 are 1, 1, 2, 6, 21, 112.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 7 {
        return Err(Error::TooLarge("enumeration supported for 1..=7 vertices".into()));
    }
    let mut canon: Vec<u64> = all_graph_bits(n)?
        .into_iter()
        .filter(|&bits| graph_from_bits(n, bits).is_connected())
        .collect();
    canon.sort_unstable();
    Ok(canon.into_iter().map(|bits| graph_from_bits(n, bits)).collect())
}

/// Canonical bitstrings of ALL graphs on n vertices (any connectivity),
/// built incrementally: every graph on n vertices arises from one on n-1 by
/// adding a vertex with some neighbor set.
fn all_graph_bits(n: usize) -> Result<Vec<u64>> {
    if n == 1 {
        return Ok(vec![0]);
    }
    let prev = all_graph_bits(n - 1)?;
    let mut out = std::collections::HashSet::new();
    for &bits in &prev {
        let base = graph_from_bits(n - 1, bits);
        for nb in 0u32..(1 << (n - 1)) {
            let mut edges = base.edges().to_vec();
            for v in 0..(n - 1) {
                if nb >> v & 1 == 1 {
                    edges.push((v as u16 + 1, n as u16));
                }
            }
            let g = Graph { n, edges };
            out.insert(canonical_bits(&g));
        }
    }
    let mut v: Vec<u64> = out.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

// ---------------------------------------------------------------------------
// Serialization

impl Graph {
    /// Encode in graph6 format (printable 6-bit encoding of the upper
    /// triangle, column by column).
    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out = Vec::new();
        if n <= 62 {
            out.push(63 + n as u8);
        } else {
            out.push(126);
            out.push(63 + ((n >> 12) & 63) as u8);
            out.push(63 + ((n >> 6) & 63) as u8);
            out.push(63 + (n & 63) as u8);
        }
        let mut bits: Vec<bool> = Vec::with_capacity(n * (n - 1) / 2);
        for j in 2..=n as u16 {
            for i in 1..j {
                bits.push(self.has_edge(i, j));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        for chunk in bits.chunks(6) {
            let mut v = 0u8;
            for (k, &b) in chunk.iter().enumerate() {
                if b {
                    v |= 1 << (5 - k);
                }
            }
            out.push(63 + v);
        }
        String::from_utf8(out).unwrap()
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        let bytes = s.trim().as_bytes();
        if bytes.is_empty() {
            return Err(Error::Parse("empty graph6 string".into()));
        }
        let (n, rest) = if bytes[0] == 126 {
            if bytes.len() < 4 {
                return Err(Error::Parse("truncated graph6 header".into()));
            }
            let n = (((bytes[1] - 63) as usize) << 12)
                | (((bytes[2] - 63) as usize) << 6)
                | ((bytes[3] - 63) as usize);
            (n, &bytes[4..])
        } else {
            ((bytes[0] - 63) as usize, &bytes[1..])
        };
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Parse(format!("graph6 order {n} unsupported")));
        }
        let need = (n * (n - 1) / 2 + 5) / 6;
        if rest.len() != need {
            return Err(Error::Parse(format!(
                "graph6 body length {} differs from expected {need}",
                rest.len()
            )));
        }
        let mut bits = Vec::with_capacity(rest.len() * 6);
        for &b in rest {
            if !(63..=126).contains(&b) {
                return Err(Error::Parse(format!("invalid graph6 byte {b}")));
            }
            let v = b - 63;
            for k in 0..6 {
                bits.push(v >> (5 - k) & 1 == 1);
            }
        }
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 2..=n as u16 {
            for i in 1..j {
                if bits[idx] {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        Graph::new(n, &edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(u16, u16)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson { n: self.n, edges: self.edges.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(de)?;
        Graph::new(raw.n, &raw.edges).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        make_family(Family::Path, &[n]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        make_family(Family::Cycle, &[n]).unwrap()
    }

    fn complete(n: usize) -> Graph {
        make_family(Family::Complete, &[n]).unwrap()
    }

    #[test]
    fn graph_invariants_rejected() {
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(1, 4)]).is_err());
        assert!(Graph::new(3, &[(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(0, &[]).is_err());
    }

    #[test]
    fn path_family_edges() {
        let g = path(4);
        assert_eq!(g.edges(), &[(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn clique_star_of_five_edges_is_star_with_center_last() {
        let g = make_family(Family::CliqueStar, &[2, 2, 2, 2, 2]).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.degree(6), 5);
    }

    #[test]
    fn hypercube_five_is_32_vertex_5_regular() {
        let g = make_family(Family::Hypercube, &[5]).unwrap();
        assert_eq!(g.n(), 32);
        assert_eq!(g.edge_count(), 80);
        assert!(g.degrees().iter().all(|&d| d == 5));
    }

    #[test]
    fn cartesian_square_of_p2_is_c4() {
        let p2 = path(2);
        let g = product(ProductKind::Cartesian, &p2, &p2).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&cycle(4)));
    }

    #[test]
    fn tensor_of_p3_p2_is_two_paths() {
        let g = product(ProductKind::Tensor, &path(3), &path(2)).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        for c in comps {
            let ind = g.induced(&c).unwrap();
            assert_eq!(canonical_key(&ind), canonical_key(&path(3)));
        }
    }

    #[test]
    fn strong_square_of_p2_is_k4() {
        let g = product(ProductKind::Strong, &path(2), &path(2)).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&complete(4)));
    }

    #[test]
    fn strong_product_edges_split_into_cartesian_and_tensor() {
        let g = cycle(4);
        let h = path(3);
        let c = product(ProductKind::Cartesian, &g, &h).unwrap();
        let t = product(ProductKind::Tensor, &g, &h).unwrap();
        let s = product(ProductKind::Strong, &g, &h).unwrap();
        let mut union: Vec<_> = c.edges().iter().chain(t.edges()).copied().collect();
        union.sort_unstable();
        assert_eq!(union.len(), c.edge_count() + t.edge_count());
        assert_eq!(s.edges(), &union[..]);
    }

    #[test]
    fn join_of_empty_parts_is_complete_bipartite() {
        let a = make_family(Family::Empty, &[2]).unwrap();
        let b = make_family(Family::Empty, &[3]).unwrap();
        let g = join(&a, &b).unwrap();
        let kb = make_family(Family::CompleteBipartite, &[2, 3]).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&kb));
    }

    #[test]
    fn contract_middle_edge_of_p4_gives_p3() {
        let g = apply_op(&path(4), &GraphOp::ContractEdge(2, 3)).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&path(3)));
    }

    #[test]
    fn subdividing_the_bull_chord_gives_a_c4_between_paths() {
        // GB(1,1) is the path on 5 vertices plus the chord {2,4}; subdividing
        // that chord yields paths of length one glued to a 4-cycle
        let g = make_family(Family::GenBull, &[1, 1]).unwrap();
        let sub = apply_op(&g, &GraphOp::SubdivideEdge(2, 4)).unwrap();
        assert_eq!(sub.n(), 6);
        assert_eq!(sub.edge_count(), 6);
        // vertex sum shape: C_4 on {2,3,4,6} with pendant vertices 1 and 5
        assert!(sub.has_edge(2, 6) && sub.has_edge(4, 6));
        assert!(!sub.has_edge(2, 4));
        let deg = sub.degrees();
        assert_eq!(deg.iter().filter(|&&d| d == 1).count(), 2);
        // deleting a degree-2 cycle vertex opposite the glue points leaves P_5
        let del = apply_op(&sub, &GraphOp::DeleteVertex(3)).unwrap();
        assert_eq!(canonical_key(&del), canonical_key(&path(5)));
    }

    #[test]
    fn vertex_sum_of_two_triangles_is_bowtie() {
        let k3 = complete(3);
        let g = apply_op(
            &k3,
            &GraphOp::VertexSum { at: 1, other: complete(3), at_other: 1 },
        )
        .unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(1), 4);
        let ks = make_family(Family::CliqueStar, &[3, 3]).unwrap();
        assert_eq!(canonical_key(&g), canonical_key(&ks));
    }

    #[test]
    fn unique_path_bound_on_paths_cliques_cliquepaths() {
        assert_eq!(unique_shortest_path_bound(&path(6)).unwrap(), 6);
        assert_eq!(unique_shortest_path_bound(&complete(5)).unwrap(), 2);
        let kp = make_family(Family::CliquePath, &[3, 4, 3]).unwrap();
        assert_eq!(unique_shortest_path_bound(&kp).unwrap(), 4);
        assert!(unique_shortest_path_bound(&make_family(Family::Empty, &[3]).unwrap()).is_err());
    }

    #[test]
    fn unique_path_bound_never_exceeds_order_and_hits_it_only_for_paths() {
        for g in enumerate_connected(5).unwrap() {
            let b = unique_shortest_path_bound(&g).unwrap();
            assert!(b <= 5);
            assert_eq!(b == 5, near_path_class(&g) == Some(NearPathClass::Path));
        }
    }

    #[test]
    fn zero_forcing_small_cases() {
        assert_eq!(zero_forcing_number(&path(7)).unwrap(), 1);
        assert_eq!(zero_forcing_number(&cycle(6)).unwrap(), 2);
        assert_eq!(zero_forcing_number(&complete(5)).unwrap(), 4);
        let q3 = make_family(Family::Hypercube, &[3]).unwrap();
        assert_eq!(zero_forcing_number(&q3).unwrap(), 4);
    }

    #[test]
    fn zero_forcing_shifts_by_at_most_one_per_edge() {
        // adding one edge moves the zero forcing number by at most one in
        // either direction
        let mut rng = 12345u64;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng >> 33) as usize
        };
        let mut tested = 0;
        'outer: for n in 4..=7 {
            let all = enumerate_connected(n).unwrap();
            for _ in 0..40 {
                let g = &all[next() % all.len()];
                let comp = g.complement();
                if comp.edge_count() == 0 {
                    continue;
                }
                let &(u, v) = &comp.edges()[next() % comp.edge_count()];
                let mut edges = g.edges().to_vec();
                edges.push((u, v));
                let g2 = Graph::new(n, &edges).unwrap();
                let z1 = zero_forcing_number(g).unwrap() as i64;
                let z2 = zero_forcing_number(&g2).unwrap() as i64;
                assert!(
                    (z1 - z2).abs() <= 1,
                    "edge addition moved Z from {z1} to {z2}"
                );
                tested += 1;
                if tested >= 120 {
                    break 'outer;
                }
            }
        }
        assert!(tested >= 100);
    }

    #[test]
    fn hamilton_detection() {
        assert!(has_hamilton_cycle(&cycle(7)).unwrap());
        assert!(!has_hamilton_cycle(&path(5)).unwrap());
        let p4p2 = product(ProductKind::Cartesian, &path(4), &path(2)).unwrap();
        assert!(has_hamilton_cycle(&p4p2).unwrap());
        let star = make_family(Family::CompleteBipartite, &[1, 3]).unwrap();
        assert!(!has_hamilton_cycle(&star).unwrap());
    }

    #[test]
    fn independent_set_violations() {
        // two leaves of a path share exactly one neighbor
        assert!(independent_set_violation(&path(3), 4).is_some());
        // C_4's diagonal pairs have two common neighbors, union never
        // strictly between 0 and the set size
        assert!(independent_set_violation(&cycle(4), 4).is_none());
        let k24 = make_family(Family::CompleteBipartite, &[2, 4]).unwrap();
        assert!(independent_set_violation(&k24, 6).is_some());
        assert!(violates_independent_set_condition(&k24, &[3, 4, 5]));
    }

    #[test]
    fn spanning_subgraph_embedding() {
        let c6 = cycle(6);
        let k6 = complete(6);
        let pi = is_spanning_subgraph_of(&c6, &k6).unwrap().unwrap();
        assert_eq!(pi.len(), 6);
        assert!(is_spanning_subgraph_of(&path(3), &cycle(3)).unwrap().is_some());
        assert!(is_spanning_subgraph_of(&complete(4), &cycle(4)).unwrap().is_none());
        assert!(is_spanning_subgraph_of(&path(3), &complete(4)).is_err());
        // returned maps always send edges to edges
        for g in enumerate_connected(5).unwrap().iter().take(10) {
            if let Some(pi) = is_spanning_subgraph_of(&cycle(5), g).unwrap() {
                for &(u, v) in cycle(5).edges() {
                    assert!(g.has_edge(pi[u as usize - 1], pi[v as usize - 1]));
                }
            }
        }
    }

    #[test]
    fn near_path_classification() {
        assert_eq!(near_path_class(&path(6)), Some(NearPathClass::Path));
        assert_eq!(near_path_class(&cycle(6)), None);
        let s = make_family(Family::GenStar, &[2, 2]).unwrap();
        assert_eq!(near_path_class(&s), Some(NearPathClass::GenStar));
        let k13 = make_family(Family::CompleteBipartite, &[1, 3]).unwrap();
        assert_eq!(near_path_class(&k13), Some(NearPathClass::GenStar));
        let b = make_family(Family::GenBull, &[1, 1]).unwrap();
        assert_eq!(near_path_class(&b), Some(NearPathClass::GenBull));
        assert_eq!(near_path_class(&complete(3)), Some(NearPathClass::GenBull));
        let spider = Graph::new(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (6, 7)]).unwrap();
        // legs 3, 2, 1 from the branch vertex: still a generalized star
        assert_eq!(near_path_class(&spider), Some(NearPathClass::GenStar));
        let spider222 = Graph::new(7, &[(1, 2), (2, 7), (3, 4), (4, 7), (5, 6), (6, 7)]).unwrap();
        // all legs of length two: no leaf at the branch vertex
        assert_eq!(near_path_class(&spider222), None);
        let mut pk = path(5).edges().to_vec();
        pk.push((5, 6));
        let mut g = Graph::new(6, &pk).unwrap();
        assert_eq!(near_path_class(&g), Some(NearPathClass::Path));
        g = Graph::new(6, &path(5).edges().to_vec()).unwrap();
        assert_eq!(near_path_class(&g), Some(NearPathClass::PathPlusIsolated));
    }

    #[test]
    fn near_path_matches_explicit_family_canon_forms() {
        // cross-check the structural classifier against constructed families
        // on every connected graph of order <= 6
        for n in 2..=6 {
            let mut expected = std::collections::HashSet::new();
            expected.insert(canonical_key(&path(n)));
            for a in 1..n {
                let b = n as i64 - 2 - a as i64;
                if b >= 1 {
                    let s = make_family(Family::GenStar, &[a, b as usize]).unwrap();
                    expected.insert(canonical_key(&s));
                }
            }
            for k in 0..=(n as i64 - 3).max(-1) {
                let m = n as i64 - 3 - k;
                if k >= 0 && m >= 0 {
                    let gb = make_family(Family::GenBull, &[k as usize, m as usize]).unwrap();
                    expected.insert(canonical_key(&gb));
                }
            }
            for g in enumerate_connected(n).unwrap() {
                let classified = near_path_class(&g).is_some();
                assert_eq!(
                    classified,
                    expected.contains(&canonical_key(&g)),
                    "disagreement at n={n} edges={:?}",
                    g.edges()
                );
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn enumeration_has_no_isomorphic_duplicates() {
        for n in 1..=6 {
            let graphs = enumerate_connected(n).unwrap();
            let keys: std::collections::HashSet<_> =
                graphs.iter().map(canonical_key).collect();
            assert_eq!(keys.len(), graphs.len());
        }
    }

    #[test]
    fn graph6_round_trip_and_known_strings() {
        // frozen strings produced by an independent encoder
        assert_eq!(path(2).to_graph6(), "A_");
        assert_eq!(path(3).to_graph6(), "Bg");
        assert_eq!(cycle(4).to_graph6(), "Cl");
        assert_eq!(complete(4).to_graph6(), "C~");
        for g in enumerate_connected(5).unwrap() {
            let rt = Graph::from_graph6(&g.to_graph6()).unwrap();
            assert_eq!(g, rt);
        }
    }

    #[test]
    fn json_round_trip() {
        let g = make_family(Family::CliquePath, &[3, 3]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
        assert!(serde_json::from_str::<Graph>("{\"n\":2,\"edges\":[[1,1]]}").is_err());
    }

    #[test]
    fn op_log_recomputes() {
        let log = GraphOpLog::record(path(4), GraphOp::DeleteEdge(2, 3)).unwrap();
        assert!(log.verify());
        assert_eq!(log.result.components().len(), 2);
    }
}
