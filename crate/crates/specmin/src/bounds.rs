//! The bound engine: combines every applicable rule into a certified
//! interval for the minimum number of distinct eigenvalues, with per-rule
//! provenance. Also evaluates the graph-family table rows and checks the
//! order <= 6 value tables for feasibility by bipartite matching.

use crate::constructions::{
    c4_cartesian_witness, c4_tensor_witness, clique_path_matrix, clique_star_matrix,
    flipped_cycle, kn_minus_e_witness, signed_cycle_matrix, strong_product_witness,
    p3_three_level, tensor_path_witness,
};
use crate::graphs::{
    has_hamilton_cycle, independent_set_violation, is_spanning_subgraph_of, join,
    make_family, near_path_class, product, unique_shortest_path_bound, zero_forcing_number,
    Family, Graph, NearPathClass, ProductKind,
};
use crate::search::{realize, RealizationTarget, RealizationTask};
use crate::spectra::{kron, rank, SymMatrix, DEFAULT_GAP, DEFAULT_RANK_TOL};
use crate::strongprops::WitnessRegistry;
use crate::{Error, Result};
use serde::Serialize;

/// Zero forcing is exhaustive over vertex subsets, so the quotient rule is
/// only attempted below this order.
const ZERO_FORCING_MAX: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

/// One applicable bound with the rule that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Contribution {
    pub value: usize,
    pub direction: Direction,
    pub citation: String,
    pub detail: String,
}

impl Contribution {
    fn lower(value: usize, citation: &str, detail: String) -> Self {
        Contribution { value, direction: Direction::Lower, citation: citation.into(), detail }
    }

    fn upper(value: usize, citation: &str, detail: String) -> Self {
        Contribution { value, direction: Direction::Upper, citation: citation.into(), detail }
    }
}

/// Certified interval for one graph together with everything that went into
/// it.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub graph: Graph,
    pub lo: usize,
    pub hi: usize,
    pub contributions: Vec<Contribution>,
    /// Labels of registry witnesses that contributed.
    pub witnesses: Vec<String>,
}

impl BoundReport {
    pub fn determined(&self) -> bool {
        self.lo == self.hi
    }
}

/// All applicable lower bounds on a connected graph.
pub fn lower_bounds(g: &Graph) -> Result<Vec<Contribution>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut out = vec![Contribution::lower(
        1,
        "trivial-order",
        "every symmetric matrix has an eigenvalue".into(),
    )];
    if g.edge_count() > 0 {
        out.push(Contribution::lower(
            2,
            "trivial-edge",
            "a graph with an edge admits no scalar-spectrum matrix".into(),
        ));
    }
    let usp = unique_shortest_path_bound(g)? as usize;
    if usp > 1 {
        out.push(Contribution::lower(
            usp,
            "unique-shortest-path",
            format!("a unique shortest path on {usp} vertices exists"),
        ));
    }
    if n <= ZERO_FORCING_MAX {
        let z = zero_forcing_number(g)? as usize;
        out.push(Contribution::lower(
            n.div_ceil(z),
            "zero-forcing-quotient",
            format!("Z(G) = {z} bounds the maximum multiplicity"),
        ));
    }
    if let Some(set) = independent_set_violation(g, n) {
        out.push(Contribution::lower(
            3,
            "independent-set-obstruction",
            format!("independent set {set:?} rules out two distinct eigenvalues"),
        ));
    }
    if let Some(class) = near_path_class(g) {
        let (value, name) = match class {
            NearPathClass::Path => (n, "path"),
            NearPathClass::PathPlusIsolated => (n, "path plus isolated vertex"),
            NearPathClass::GenStar => (n - 1, "generalized star with three legs"),
            NearPathClass::GenBull => (n - 1, "generalized bull"),
        };
        out.push(Contribution::lower(
            value,
            "near-path-class",
            format!("graph is a {name}"),
        ));
    }
    Ok(out)
}

/// All applicable upper bounds on a connected graph, using any registered
/// witnesses whose graph matches or spans.
pub fn upper_bounds(g: &Graph, registry: &WitnessRegistry) -> Result<Vec<Contribution>> {
    let n = g.n();
    let mut out = vec![Contribution::upper(
        n,
        "trivial-order",
        "an order-n matrix has at most n distinct eigenvalues".into(),
    )];
    if n <= 16 && n >= 3 && has_hamilton_cycle(g)? {
        out.push(Contribution::upper(
            n.div_ceil(2),
            "hamilton-cycle",
            "a spanning cycle lifts the signed-cycle witness".into(),
        ));
    }
    for w in registry.for_graph(g) {
        out.push(Contribution::upper(
            w.summary.q,
            "witness-distinct-eigenvalues",
            format!("witness '{}' attains {} distinct eigenvalues", w.label, w.summary.q),
        ));
        let r = rank(&w.matrix, DEFAULT_RANK_TOL);
        out.push(Contribution::upper(
            r + 1,
            "witness-rank",
            format!("witness '{}' has rank {r}", w.label),
        ));
    }
    if let Some(lift) = registry.lift_bound(g)? {
        out.push(Contribution::upper(
            lift.q,
            "spanning-lift",
            format!(
                "witness '{}' spans the host through vertex image {:?}",
                lift.label, lift.mapping
            ),
        ));
    }
    if let Some((ell, parts)) = best_join_split(g) {
        out.push(Contribution::upper(
            2 + ell,
            "join-split",
            format!("join of connected parts of orders {} and {}", parts.0, parts.1),
        ));
    }
    Ok(out)
}

/// Best join decomposition: minimize the part-order difference over splits
/// of the complement's components into two groups inducing connected parts.
/// Returns (difference, (larger, smaller)) when a split exists.
fn best_join_split(g: &Graph) -> Option<(usize, (usize, usize))> {
    let comps = g.complement().components();
    let k = comps.len();
    if k < 2 {
        return None;
    }
    // a part made of two or more components is automatically connected
    // (every cross pair is an edge of g); single-component parts need their
    // induced subgraph connected
    let single_ok: Vec<bool> = comps
        .iter()
        .map(|c| g.induced(c).map(|h| h.is_connected()).unwrap_or(false))
        .collect();
    let sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let n: usize = sizes.iter().sum();
    let mut best: Option<(usize, (usize, usize))> = None;
    if k <= 16 {
        for mask in 1..(1u32 << (k - 1)) {
            let mut na = 0usize;
            let mut ca = 0usize;
            let mut single_a = true;
            let mut single_b = true;
            for (i, &sz) in sizes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    na += sz;
                    ca += 1;
                    single_a = single_ok[i];
                } else {
                    single_b = single_ok[i];
                }
            }
            let cb = k - ca;
            if (ca == 1 && !single_a) || (cb == 1 && !single_b) {
                continue;
            }
            let nb = n - na;
            let ell = na.abs_diff(nb);
            if best.map_or(true, |(b, _)| ell < b) {
                best = Some((ell, (na.max(nb), na.min(nb))));
            }
        }
    } else if sizes.iter().all(|&s| s == 1) {
        // complete graph: split as evenly as the order allows
        let half = n / 2;
        best = Some((n - 2 * half, (n - half, half)));
    }
    best
}

/// Aggregate every applicable bound into a certified interval.
pub fn bound(g: &Graph, registry: &WitnessRegistry) -> Result<BoundReport> {
    let lowers = lower_bounds(g)?;
    let uppers = upper_bounds(g, registry)?;
    let lo = lowers.iter().map(|c| c.value).max().unwrap_or(1);
    let hi = uppers.iter().map(|c| c.value).min().unwrap_or(g.n());
    if lo > hi {
        return Err(Error::InfeasibleReport {
            graph: format!("{g:?}"),
            lo: lo as u32,
            hi: hi as u32,
        });
    }
    let witnesses = registry
        .for_graph(g)
        .iter()
        .map(|w| w.label.clone())
        .collect();
    let mut contributions = lowers;
    contributions.extend(uppers);
    Ok(BoundReport { graph: g.clone(), lo, hi, contributions, witnesses })
}

/// Extension of `bound` to graphs whose components are all isomorphic: the
/// minimum distinct-eigenvalue count of a disjoint union of copies equals
/// the component's (duplicate a witness block-diagonally one way; restrict
/// a witness to one block the other way). Upper bounds from registered
/// witnesses on the full pattern still apply and are merged in.
pub fn bound_with_components(g: &Graph, registry: &WitnessRegistry) -> Result<BoundReport> {
    if g.is_connected() {
        return bound(g, registry);
    }
    let comps = g.components();
    let first = g.induced(&comps[0])?;
    for c in &comps[1..] {
        let other = g.induced(c)?;
        let iso = other.n() == first.n()
            && other.edge_count() == first.edge_count()
            && is_spanning_subgraph_of(&first, &other)?.is_some();
        if !iso {
            return Err(Error::Disconnected);
        }
    }
    let inner = bound(&first, registry)?;
    let mut contributions = vec![
        Contribution::lower(
            inner.lo,
            "component-reduction",
            format!("{} isomorphic components, each bounded below by {}", comps.len(), inner.lo),
        ),
        Contribution::upper(
            inner.hi,
            "component-reduction",
            format!("{} isomorphic components, each bounded above by {}", comps.len(), inner.hi),
        ),
    ];
    let mut witnesses: Vec<String> = Vec::new();
    let mut hi = inner.hi;
    for w in registry.for_graph(g) {
        contributions.push(Contribution::upper(
            w.summary.q,
            "witness-distinct-eigenvalues",
            format!("witness '{}' attains {} distinct eigenvalues", w.label, w.summary.q),
        ));
        hi = hi.min(w.summary.q);
        witnesses.push(w.label.clone());
    }
    let lo = inner.lo;
    if lo > hi {
        return Err(Error::InfeasibleReport {
            graph: format!("{g:?}"),
            lo: lo as u32,
            hi: hi as u32,
        });
    }
    Ok(BoundReport { graph: g.clone(), lo, hi, contributions, witnesses })
}

// ---------------------------------------------------------------------------
// Family table rows

/// One row of the family value table, with the parameters to evaluate at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRow {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    GenBull(usize, usize),
    GenStar(usize, usize),
    CliquePath(Vec<usize>),
    CliqueStar(Vec<usize>),
    PathBoxP2(usize),
    C4BoxPath(usize),
    C4BoxCycle(usize),
    PathTensorP2(usize),
    C4TensorPath(usize),
    P3StrongP3,
    PathJoinK1(usize),
    CompleteMinusEdge(usize),
}

impl FamilyRow {
    pub fn label(&self) -> String {
        match self {
            FamilyRow::Complete(n) => format!("K_{n}"),
            FamilyRow::Cycle(n) => format!("C_{n}"),
            FamilyRow::Path(n) => format!("P_{n}"),
            FamilyRow::CompleteBipartite(m, n) => format!("K_{{{m},{n}}}"),
            FamilyRow::Hypercube(d) => format!("Q_{d}"),
            FamilyRow::GenBull(k, m) => format!("GB({k},{m})"),
            FamilyRow::GenStar(a, b) => format!("S({a},{b},1)"),
            FamilyRow::CliquePath(s) => format!("KP{s:?}"),
            FamilyRow::CliqueStar(s) => format!("KS{s:?}"),
            FamilyRow::PathBoxP2(s) => format!("P_{s} box P_2"),
            FamilyRow::C4BoxPath(s) => format!("C_4 box P_{s}"),
            FamilyRow::C4BoxCycle(s) => format!("C_4 box C_{s}"),
            FamilyRow::PathTensorP2(s) => format!("P_{s} x P_2"),
            FamilyRow::C4TensorPath(s) => format!("C_4 x P_{s}"),
            FamilyRow::P3StrongP3 => "P_3 strong P_3".into(),
            FamilyRow::PathJoinK1(s) => format!("P_{s} join K_1"),
            FamilyRow::CompleteMinusEdge(n) => format!("K_{n} - e"),
        }
    }

    /// The table's formula value for this row.
    pub fn expected_q(&self) -> usize {
        match self {
            FamilyRow::Complete(n) => {
                if *n == 1 {
                    1
                } else {
                    2
                }
            }
            FamilyRow::Cycle(n) => n.div_ceil(2),
            FamilyRow::Path(n) => *n,
            FamilyRow::CompleteBipartite(m, n) => {
                if m == n {
                    2
                } else {
                    3
                }
            }
            FamilyRow::Hypercube(_) => 2,
            FamilyRow::GenBull(k, m) => k + m + 2,
            FamilyRow::GenStar(a, b) => a + b + 1,
            FamilyRow::CliquePath(sizes) => sizes.len() + 1,
            FamilyRow::CliqueStar(_) => 3,
            FamilyRow::PathBoxP2(s) => *s,
            FamilyRow::C4BoxPath(s) => *s,
            FamilyRow::C4BoxCycle(s) => s.div_ceil(2),
            FamilyRow::PathTensorP2(s) => *s,
            FamilyRow::C4TensorPath(s) => *s,
            FamilyRow::P3StrongP3 => 3,
            FamilyRow::PathJoinK1(s) => (s + 1).div_ceil(2),
            FamilyRow::CompleteMinusEdge(_) => 2,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        let c4 = || make_family(Family::Cycle, &[4]);
        let path = |s: usize| make_family(Family::Path, &[s]);
        match self {
            FamilyRow::Complete(n) => make_family(Family::Complete, &[*n]),
            FamilyRow::Cycle(n) => make_family(Family::Cycle, &[*n]),
            FamilyRow::Path(n) => path(*n),
            FamilyRow::CompleteBipartite(m, n) => {
                make_family(Family::CompleteBipartite, &[*m, *n])
            }
            FamilyRow::Hypercube(d) => make_family(Family::Hypercube, &[*d]),
            FamilyRow::GenBull(k, m) => make_family(Family::GenBull, &[*k, *m]),
            FamilyRow::GenStar(a, b) => make_family(Family::GenStar, &[*a, *b]),
            FamilyRow::CliquePath(sizes) => make_family(Family::CliquePath, sizes),
            FamilyRow::CliqueStar(sizes) => make_family(Family::CliqueStar, sizes),
            FamilyRow::PathBoxP2(s) => product(ProductKind::Cartesian, &path(*s)?, &path(2)?),
            FamilyRow::C4BoxPath(s) => product(ProductKind::Cartesian, &c4()?, &path(*s)?),
            FamilyRow::C4BoxCycle(s) => {
                product(ProductKind::Cartesian, &c4()?, &make_family(Family::Cycle, &[*s])?)
            }
            FamilyRow::PathTensorP2(s) => product(ProductKind::Tensor, &path(*s)?, &path(2)?),
            FamilyRow::C4TensorPath(s) => product(ProductKind::Tensor, &c4()?, &path(*s)?),
            FamilyRow::P3StrongP3 => product(ProductKind::Strong, &path(3)?, &path(3)?),
            FamilyRow::PathJoinK1(s) => join(&path(*s)?, &make_family(Family::Complete, &[1])?),
            FamilyRow::CompleteMinusEdge(n) => make_family(Family::CompleteMinusEdge, &[*n]),
        }
    }
}

/// Symmetric orthogonal matrix with no zero entries (a Householder
/// reflection across a vector with distinct positive coordinates).
pub fn dense_reflection(n: usize) -> SymMatrix {
    let v: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    let norm2: f64 = v.iter().map(|x| x * x).sum();
    let mut h = SymMatrix::identity(n);
    for i in 0..n {
        for j in i..n {
            h.set(i, j, h.get(i, j) - 2.0 * v[i] * v[j] / norm2);
        }
    }
    h
}

/// Two-eigenvalue witness on K_{n,n}: zero blocks on the diagonal and a
/// dense reflection off it, squaring to the identity.
pub fn balanced_bipartite_witness(n: usize) -> SymMatrix {
    let h = dense_reflection(n);
    let mut a = SymMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            a.set(i, n + j, h.get(i, j));
        }
    }
    a
}

/// Three-eigenvalue witness on K_{m,n} with m < n: the off-diagonal block
/// keeps m orthonormal rows of a dense reflection, so A^3 = A.
pub fn unbalanced_bipartite_witness(m: usize, n: usize) -> SymMatrix {
    let h = dense_reflection(n);
    let mut a = SymMatrix::zeros(m + n);
    for i in 0..m {
        for j in 0..n {
            a.set(i, m + j, h.get(i, j));
        }
    }
    a
}

/// Signed adjacency of the d-cube squaring to d times the identity, built by
/// the anticommuting-signing recursion: A_1 = X, S_1 = Z, then
/// A_d = A (x) I + S (x) X and S_d = S (x) Z.
pub fn hypercube_signed_matrix(d: usize) -> Result<SymMatrix> {
    let x = SymMatrix::adjacency(&make_family(Family::Path, &[2])?);
    let z = SymMatrix::from_diag(&[1.0, -1.0]);
    let mut a = x.clone();
    let mut s = z.clone();
    for _ in 2..=d {
        a = kron(&a, &SymMatrix::identity(2))?.add(&kron(&s, &x)?)?;
        s = kron(&s, &z)?;
    }
    Ok(a)
}

/// Find a witness with one repeated eigenvalue (multiplicity list all ones
/// except a single 2), scanning the position of the doubled value. Used for
/// the near-path families whose value is n - 1.
pub fn doubled_eigenvalue_witness(g: &Graph, seed: u64) -> Result<SymMatrix> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParams("needs at least two vertices".into()));
    }
    // positions ordered ends-first: the extreme eigenvalues are the usual
    // home of the doubled one in these families
    let mut order: Vec<usize> = Vec::new();
    let (mut a, mut b) = (0usize, n - 2);
    while a <= b {
        order.push(a);
        if a != b {
            order.push(b);
        }
        a += 1;
        b = b.saturating_sub(1);
        if b == usize::MAX {
            break;
        }
    }
    for budget in [60usize, 200] {
        for &pos in &order {
            let mut mults = vec![1usize; n - 1];
            mults[pos] = 2;
            let task = RealizationTask::new(
                g.clone(),
                RealizationTarget::Multiplicities(mults),
                seed ^ (pos as u64).wrapping_mul(0x9e3779b97f4a7c15),
            )
            .with_budget(budget, 500);
            if let Some(m) = realize(&task)? {
                return Ok(m);
            }
        }
    }
    Err(Error::RealizationFailed(
        "no witness with a single doubled eigenvalue found within budget".into(),
    ))
}

/// Evaluate one family row: build the graph, seed the registry with the
/// row's construction witnesses, and run the bound engine.
pub fn evaluate_family_row(row: &FamilyRow) -> Result<BoundReport> {
    let g = row.graph()?;
    let mut reg = WitnessRegistry::new();
    let add = |reg: &mut WitnessRegistry, label: &str, graph: Graph, matrix: SymMatrix| {
        reg.register(label, graph, matrix, false, false, DEFAULT_GAP, DEFAULT_RANK_TOL)
            .map(|_| ())
    };
    match row {
        FamilyRow::Complete(n) => {
            if *n >= 2 {
                let mut ones = SymMatrix::zeros(*n);
                for i in 0..*n {
                    for j in i..*n {
                        ones.set(i, j, 1.0);
                    }
                }
                add(&mut reg, "all-ones", g.clone(), ones)?;
            }
        }
        FamilyRow::Cycle(n) => {
            let w = flipped_cycle(*n)?;
            add(&mut reg, "signed-cycle", w.graph, w.matrix)?;
        }
        FamilyRow::CompleteBipartite(m, n) => {
            let w = if m == n {
                balanced_bipartite_witness(*n)
            } else {
                unbalanced_bipartite_witness(*m.min(n), *m.max(n))
            };
            add(&mut reg, "bipartite-reflection", g.clone(), w)?;
        }
        FamilyRow::Hypercube(d) => {
            add(&mut reg, "hypercube-signing", g.clone(), hypercube_signed_matrix(*d)?)?;
        }
        FamilyRow::GenBull(..) | FamilyRow::GenStar(..) => {
            let m = doubled_eigenvalue_witness(&g, 0x6e65617250617468)?;
            add(&mut reg, "doubled-eigenvalue", g.clone(), m)?;
        }
        FamilyRow::CliquePath(sizes) => {
            let w = clique_path_matrix(sizes)?;
            add(&mut reg, "clique-path-rank", w.graph, w.matrix)?;
        }
        FamilyRow::CliqueStar(sizes) => {
            let w = clique_star_matrix(sizes)?;
            add(&mut reg, "clique-star-projection", w.graph, w.matrix)?;
        }
        FamilyRow::C4BoxPath(s) => {
            let p = make_family(Family::Path, &[*s])?;
            let w = c4_cartesian_witness(&SymMatrix::adjacency(&p), &p)?;
            add(&mut reg, "c4-cartesian-block", w.graph, w.matrix)?;
        }
        FamilyRow::C4BoxCycle(s) => {
            let c = make_family(Family::Cycle, &[*s])?;
            let factor = if s % 2 == 0 {
                Some(signed_cycle_matrix(*s))
            } else {
                // need a symmetric spectrum on an odd cycle: aim for the
                // shortest symmetric list, one zero plus doubled +-1
                let mut target = vec![-1.0; (s - 1) / 2];
                target.push(0.0);
                target.extend(vec![1.0; (s - 1) / 2]);
                realize(&RealizationTask::new(
                    c.clone(),
                    RealizationTarget::Spectrum(target),
                    0xC4B07,
                ))?
            };
            if let Some(f) = factor {
                if let Ok(w) = c4_cartesian_witness(&f, &c) {
                    add(&mut reg, "c4-cartesian-block", w.graph, w.matrix)?;
                }
            }
        }
        FamilyRow::PathTensorP2(s) => {
            let w = tensor_path_witness(*s, 2)?;
            add(&mut reg, "tensor-path-kron", w.graph, w.matrix)?;
        }
        FamilyRow::C4TensorPath(s) => {
            let p = make_family(Family::Path, &[*s])?;
            let w = c4_tensor_witness(&SymMatrix::adjacency(&p), &p)?;
            add(&mut reg, "c4-tensor-scaled-kron", w.graph, w.matrix)?;
        }
        FamilyRow::P3StrongP3 => {
            let p3 = make_family(Family::Path, &[3])?;
            let b = p3_three_level();
            let w = strong_product_witness(&b, &p3, &b, &p3)?;
            add(&mut reg, "strong-product-kron", w.graph, w.matrix)?;
        }
        FamilyRow::CompleteMinusEdge(n) => {
            let w = kn_minus_e_witness(*n)?;
            add(&mut reg, "balanced-multiplicity-witness", w.graph, w.matrix)?;
        }
        FamilyRow::Path(_) | FamilyRow::PathBoxP2(_) | FamilyRow::PathJoinK1(_) => {}
    }
    bound_with_components(&g, &reg)
}

/// The desk-scale parameter sweep of the family table, used by the table
/// reproduction command and the acceptance suite.
pub fn family_rows_at_desk_scale() -> Vec<FamilyRow> {
    let mut rows = Vec::new();
    for n in 2..=8 {
        rows.push(FamilyRow::Complete(n));
    }
    for n in 3..=12 {
        rows.push(FamilyRow::Cycle(n));
    }
    for n in 1..=8 {
        rows.push(FamilyRow::Path(n));
    }
    for m in 1..=5 {
        for n in m..=5 {
            rows.push(FamilyRow::CompleteBipartite(m, n));
        }
    }
    for d in 1..=4 {
        rows.push(FamilyRow::Hypercube(d));
    }
    for k in 0..=5 {
        for m in k..=5 {
            if k + m + 3 <= 8 {
                rows.push(FamilyRow::GenBull(k, m));
            }
        }
    }
    for a in 1..=5 {
        for b in a..=5 {
            if a + b + 2 <= 8 {
                rows.push(FamilyRow::GenStar(a, b));
            }
        }
    }
    for sizes in [
        vec![2, 2],
        vec![3, 3],
        vec![4, 4],
        vec![2, 3, 4],
        vec![3, 3, 3],
        vec![2, 2, 2, 2],
        vec![4, 3, 2, 4],
    ] {
        rows.push(FamilyRow::CliquePath(sizes.clone()));
        rows.push(FamilyRow::CliqueStar(sizes));
    }
    for s in 2..=6 {
        rows.push(FamilyRow::PathBoxP2(s));
    }
    for s in [2, 4, 6] {
        rows.push(FamilyRow::C4BoxPath(s));
    }
    for s in [4, 5, 8] {
        rows.push(FamilyRow::C4BoxCycle(s));
    }
    for s in 2..=6 {
        rows.push(FamilyRow::PathTensorP2(s));
    }
    for s in 2..=5 {
        rows.push(FamilyRow::C4TensorPath(s));
    }
    rows.push(FamilyRow::P3StrongP3);
    for s in 2..=7 {
        rows.push(FamilyRow::PathJoinK1(s));
    }
    for n in 4..=7 {
        rows.push(FamilyRow::CompleteMinusEdge(n));
    }
    rows
}

// ---------------------------------------------------------------------------
// Table feasibility

/// Outcome of matching an order-n enumeration against a value multiset.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyVerdict {
    pub feasible: bool,
    pub graphs: usize,
    pub determined: usize,
}

/// Check that the claimed multiset of values for all connected graphs of
/// order n is compatible with the engine's intervals: a perfect matching
/// must exist between graphs and value slots (graph matches slot v when
/// lo <= v <= hi), and determined graphs must each consume a slot of their
/// exact value.
pub fn table_consistency(
    n: usize,
    paper_multiset: &[(usize, usize)],
    registry: &WitnessRegistry,
) -> Result<ConsistencyVerdict> {
    if n > 6 {
        return Err(Error::TooLarge("table check capped at order 6".into()));
    }
    let graphs = crate::graphs::enumerate_connected(n)?;
    let total: usize = paper_multiset.iter().map(|&(_, c)| c).sum();
    if total != graphs.len() {
        return Err(Error::CountMismatch(format!(
            "{} connected graphs of order {n} but the table lists {total} values",
            graphs.len()
        )));
    }
    let mut slots = Vec::with_capacity(total);
    for &(value, count) in paper_multiset {
        slots.extend(std::iter::repeat(value).take(count));
    }
    let mut determined_by_value: std::collections::HashMap<usize, usize> = Default::default();
    let mut adjacency: Vec<Vec<usize>> = Vec::with_capacity(graphs.len());
    let mut determined = 0usize;
    for g in &graphs {
        let report = bound(g, registry)?;
        if report.determined() {
            determined += 1;
            *determined_by_value.entry(report.lo).or_insert(0) += 1;
        }
        adjacency.push(
            slots
                .iter()
                .enumerate()
                .filter(|&(_, &v)| report.lo <= v && v <= report.hi)
                .map(|(i, _)| i)
                .collect(),
        );
    }
    // every determined graph must find a slot of its own value
    for (&value, &need) in &determined_by_value {
        let have = slots.iter().filter(|&&v| v == value).count();
        if need > have {
            return Ok(ConsistencyVerdict { feasible: false, graphs: graphs.len(), determined });
        }
    }
    let matched = hopcroft_karp(graphs.len(), slots.len(), &adjacency);
    Ok(ConsistencyVerdict {
        feasible: matched == graphs.len(),
        graphs: graphs.len(),
        determined,
    })
}

/// Maximum bipartite matching size via Hopcroft-Karp.
fn hopcroft_karp(nl: usize, nr: usize, adj: &[Vec<usize>]) -> usize {
    const NIL: usize = usize::MAX;
    let mut match_l = vec![NIL; nl];
    let mut match_r = vec![NIL; nr];
    let mut dist = vec![0u32; nl];
    let mut matched = 0usize;
    loop {
        // BFS layering over free left vertices
        let mut queue = std::collections::VecDeque::new();
        for u in 0..nl {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    NIL => found = true,
                    w => {
                        if dist[w] == u32::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        if !found {
            return matched;
        }
        fn dfs(
            u: usize,
            adj: &[Vec<usize>],
            dist: &mut [u32],
            match_l: &mut [usize],
            match_r: &mut [usize],
        ) -> bool {
            for i in 0..adj[u].len() {
                let v = adj[u][i];
                let w = match_r[v];
                if w == NIL
                    || (dist[w] == dist[u] + 1 && dfs(w, adj, dist, match_l, match_r))
                {
                    match_l[u] = v;
                    match_r[v] = u;
                    return true;
                }
            }
            dist[u] = u32::MAX;
            false
        }
        for u in 0..nl {
            if match_l[u] == NIL && dfs(u, adj, &mut dist, &mut match_l, &mut match_r) {
                matched += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enumerate_connected;

    fn fam(f: Family, p: &[usize]) -> Graph {
        make_family(f, p).unwrap()
    }

    #[test]
    fn lower_bound_rules_fire() {
        let p6 = fam(Family::Path, &[6]);
        let lows = lower_bounds(&p6).unwrap();
        assert!(lows
            .iter()
            .any(|c| c.citation == "near-path-class" && c.value == 6));
        let c8 = fam(Family::Cycle, &[8]);
        let lows = lower_bounds(&c8).unwrap();
        assert!(lows
            .iter()
            .any(|c| c.citation == "zero-forcing-quotient" && c.value == 4));
        assert!(lows
            .iter()
            .any(|c| c.citation == "unique-shortest-path" && c.value == 4));
        let star = fam(Family::CompleteBipartite, &[1, 3]);
        let lows = lower_bounds(&star).unwrap();
        assert!(lows
            .iter()
            .any(|c| c.citation == "independent-set-obstruction" && c.value == 3));
        assert!(lower_bounds(&fam(Family::Path, &[2]).complement()).is_err());
    }

    #[test]
    fn upper_bound_rules_fire() {
        let reg = WitnessRegistry::new();
        let grid = product(
            ProductKind::Cartesian,
            &fam(Family::Path, &[4]),
            &fam(Family::Path, &[2]),
        )
        .unwrap();
        let ups = upper_bounds(&grid, &reg).unwrap();
        assert!(ups
            .iter()
            .any(|c| c.citation == "hamilton-cycle" && c.value == 4));
        // equal-order connected join
        let p5 = fam(Family::Path, &[5]);
        let joined = join(&p5, &p5).unwrap();
        let ups = upper_bounds(&joined, &reg).unwrap();
        assert!(ups.iter().any(|c| c.citation == "join-split" && c.value == 2));
        // unequal orders pay the difference
        let fan = join(&fam(Family::Path, &[4]), &fam(Family::Complete, &[1])).unwrap();
        let ups = upper_bounds(&fan, &reg).unwrap();
        assert!(ups.iter().any(|c| c.citation == "join-split" && c.value == 5));
        assert!(ups.iter().any(|c| c.citation == "hamilton-cycle" && c.value == 3));
    }

    #[test]
    fn witness_and_lift_contributions() {
        let mut reg = WitnessRegistry::new();
        let c5 = fam(Family::Cycle, &[5]);
        let w = flipped_cycle(5).unwrap();
        reg.register("signed-c5", w.graph, w.matrix, false, true, DEFAULT_GAP, DEFAULT_RANK_TOL)
            .unwrap();
        let report = bound(&c5, &reg).unwrap();
        assert_eq!((report.lo, report.hi), (3, 3));
        assert!(report.witnesses.contains(&"signed-c5".to_string()));
        // the signed cycle lifts onto any Hamiltonian host of order 5
        let host = fam(Family::Complete, &[5]);
        let ups = upper_bounds(&host, &reg).unwrap();
        assert!(ups.iter().any(|c| c.citation == "spanning-lift" && c.value == 3));
    }

    #[test]
    fn infeasible_reports_never_occur_at_small_order() {
        let reg = WitnessRegistry::new();
        for n in 1..=5 {
            for g in enumerate_connected(n).unwrap() {
                let report = bound(&g, &reg).unwrap();
                assert!(report.lo <= report.hi);
                assert!(report.lo >= 1 && report.hi <= n);
            }
        }
    }

    #[test]
    fn registry_monotonicity() {
        let c6 = fam(Family::Cycle, &[6]);
        let empty = WitnessRegistry::new();
        let before = bound(&c6, &empty).unwrap();
        let mut reg = WitnessRegistry::new();
        let w = flipped_cycle(6).unwrap();
        reg.register("signed-c6", w.graph, w.matrix, false, false, DEFAULT_GAP, DEFAULT_RANK_TOL)
            .unwrap();
        let after = bound(&c6, &reg).unwrap();
        assert!(after.hi <= before.hi);
        assert_eq!(after.lo, before.lo);
    }

    #[test]
    fn family_rows_basic() {
        let checks = [
            (FamilyRow::Complete(5), 2),
            (FamilyRow::Cycle(6), 3),
            (FamilyRow::Path(5), 5),
            (FamilyRow::CompleteBipartite(3, 3), 2),
            (FamilyRow::CompleteBipartite(2, 4), 3),
            (FamilyRow::Hypercube(3), 2),
            (FamilyRow::CliqueStar(vec![3, 3, 4]), 3),
            (FamilyRow::CliquePath(vec![3, 3]), 3),
            (FamilyRow::PathBoxP2(4), 4),
            (FamilyRow::P3StrongP3, 3),
            (FamilyRow::PathJoinK1(5), 3),
        ];
        for (row, expect) in checks {
            let report = evaluate_family_row(&row).unwrap();
            assert_eq!(row.expected_q(), expect, "{}", row.label());
            assert!(report.determined(), "{} gave [{},{}]", row.label(), report.lo, report.hi);
            assert_eq!(report.lo, expect, "{}", row.label());
        }
    }

    #[test]
    fn family_rows_disconnected_tensor() {
        let report = evaluate_family_row(&FamilyRow::PathTensorP2(5)).unwrap();
        assert_eq!((report.lo, report.hi), (5, 5));
        let report = evaluate_family_row(&FamilyRow::C4TensorPath(2)).unwrap();
        assert_eq!((report.lo, report.hi), (2, 2));
    }

    #[test]
    fn near_path_family_rows() {
        let report = evaluate_family_row(&FamilyRow::GenStar(2, 1)).unwrap();
        assert_eq!((report.lo, report.hi), (4, 4));
        let report = evaluate_family_row(&FamilyRow::GenBull(1, 0)).unwrap();
        assert_eq!((report.lo, report.hi), (3, 3));
    }

    #[test]
    fn order4_table_consistency() {
        let reg = WitnessRegistry::new();
        let verdict = table_consistency(4, &[(2, 3), (3, 2), (4, 1)], &reg).unwrap();
        assert!(verdict.feasible);
        assert_eq!(verdict.graphs, 6);
        let verdict = table_consistency(2, &[(2, 1)], &reg).unwrap();
        assert!(verdict.feasible);
        // wrong totals are a hard error
        assert!(matches!(
            table_consistency(4, &[(2, 5)], &reg).unwrap_err(),
            Error::CountMismatch(_)
        ));
        // an impossible multiset is infeasible: six order-4 graphs cannot all
        // have two distinct eigenvalues
        let verdict = table_consistency(4, &[(2, 6)], &reg).unwrap();
        assert!(!verdict.feasible);
    }

    #[test]
    fn hopcroft_karp_small_cases() {
        // triangle-free 3x3 with a unique perfect matching
        let adj = vec![vec![0], vec![0, 1], vec![1, 2]];
        assert_eq!(hopcroft_karp(3, 3, &adj), 3);
        let adj = vec![vec![0], vec![0], vec![0]];
        assert_eq!(hopcroft_karp(3, 3, &adj), 1);
        let adj: Vec<Vec<usize>> = vec![vec![], vec![0, 1]];
        assert_eq!(hopcroft_karp(2, 2, &adj), 1);
    }
}
