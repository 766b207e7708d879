//! Numeric realization of target spectra and multiplicity lists inside a
//! graph pattern, plus constructive multiplicity augmentation.
//!
//! The optimizer is a damped Levenberg-Marquardt least-squares loop over the
//! free entries (one per edge, one per diagonal), using the analytic
//! first-order eigenvalue derivatives d lambda_i / d a_uv = 2 v_i[u] v_i[v].
//! Every candidate the optimizer produces is re-verified (pattern, spectrum,
//! strong property) before being returned; a search that exhausts its budget
//! returns None, which callers must treat as inconclusive rather than as
//! evidence of nonexistence.

use crate::graphs::Graph;
use crate::spectra::{
    eigensystem, in_pattern, summarize, SymMatrix, DEFAULT_GAP, DEFAULT_RANK_TOL,
};
use crate::strongprops::{augmentation_hypothesis, has_ssp};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative tolerance for accepting a realized spectrum.
pub const REALIZE_TOL: f64 = 1e-7;
/// Minimum |entry| for an edge of a realized matrix to count as present.
pub const REALIZE_PATTERN_TOL: f64 = 1e-7;
/// Relative tolerance for cluster preservation when augmenting.
pub const AUGMENT_CLUSTER_TOL: f64 = 1e-6;
pub const DEFAULT_STARTS: usize = 200;
pub const DEFAULT_ITERS: usize = 500;

/// What the optimizer is asked to hit.
#[derive(Clone, Debug)]
pub enum RealizationTarget {
    /// Exact eigenvalues, ascending, repeated per multiplicity; length must
    /// equal the graph order.
    Spectrum(Vec<f64>),
    /// Ordered multiplicity list with the spectrum left free; entries must
    /// sum to the graph order.
    Multiplicities(Vec<usize>),
}

/// A realization request: find a matrix in the pattern of `graph` matching
/// `target`, optionally with the strong spectral property.
#[derive(Clone, Debug)]
pub struct RealizationTask {
    pub graph: Graph,
    pub target: RealizationTarget,
    pub require_ssp: bool,
    pub seed: u64,
    pub starts: usize,
    pub iters: usize,
}

impl RealizationTask {
    pub fn new(graph: Graph, target: RealizationTarget, seed: u64) -> Self {
        RealizationTask {
            graph,
            target,
            require_ssp: false,
            seed,
            starts: DEFAULT_STARTS,
            iters: DEFAULT_ITERS,
        }
    }

    pub fn with_ssp(mut self) -> Self {
        self.require_ssp = true;
        self
    }

    pub fn with_budget(mut self, starts: usize, iters: usize) -> Self {
        self.starts = starts;
        self.iters = iters;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.graph.n();
        match &self.target {
            RealizationTarget::Spectrum(t) => {
                if t.len() != n {
                    return Err(Error::InvalidParams(format!(
                        "target has {} eigenvalues for a graph of order {n}",
                        t.len()
                    )));
                }
                if t.windows(2).any(|w| w[0] > w[1]) {
                    return Err(Error::InvalidParams("target spectrum must be ascending".into()));
                }
            }
            RealizationTarget::Multiplicities(m) => {
                if m.iter().sum::<usize>() != n {
                    return Err(Error::InvalidParams(format!(
                        "multiplicities sum to {} for a graph of order {n}",
                        m.iter().sum::<usize>()
                    )));
                }
                if m.iter().any(|&k| k == 0) {
                    return Err(Error::InvalidParams("zero multiplicity in target".into()));
                }
            }
        }
        if self.starts == 0 || self.iters == 0 {
            return Err(Error::InvalidParams("empty search budget".into()));
        }
        Ok(())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Per-start RNG seed so runs are reproducible for a given (seed, start).
fn derive_seed(seed: u64, start: usize) -> u64 {
    splitmix64(seed ^ splitmix64(start as u64 + 1))
}

fn build_matrix(g: &Graph, x: &[f64]) -> SymMatrix {
    let n = g.n();
    let m = g.edge_count();
    let mut a = SymMatrix::zeros(n);
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        a.set(u as usize - 1, v as usize - 1, x[k]);
    }
    for d in 0..n {
        a.set(d, d, x[m + d]);
    }
    a
}

/// Solve (H + mu I) delta = -grad for small dense symmetric H by Gaussian
/// elimination with partial pivoting.
fn solve_damped(h: &[Vec<f64>], grad: &[f64], mu: f64) -> Option<Vec<f64>> {
    let n = grad.len();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = h[i].clone();
            row[i] += mu;
            row.push(-grad[i]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        })?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..=n {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut s = a[col][n];
        for k in (col + 1)..n {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}

/// Residuals and Jacobian rows for the current point, target-dependent.
struct Objective<'a> {
    graph: &'a Graph,
    target: &'a RealizationTarget,
    /// cluster separation demanded by the free-spectrum objective
    sep: f64,
}

impl Objective<'_> {
    /// Returns (residuals, jacobian rows over the m+n variables).
    fn eval(&self, x: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        let g = self.graph;
        let n = g.n();
        let m = g.edge_count();
        let nv = m + n;
        let a = build_matrix(g, x);
        let es = eigensystem(&a)?;
        // d lambda_i / d x_k for every variable
        let dlam = |i: usize, k: usize| -> f64 {
            if k < m {
                let (u, v) = g.edges()[k];
                2.0 * es.vectors[i][u as usize - 1] * es.vectors[i][v as usize - 1]
            } else {
                let d = k - m;
                es.vectors[i][d] * es.vectors[i][d]
            }
        };
        match self.target {
            RealizationTarget::Spectrum(t) => {
                let resid: Vec<f64> = es.values.iter().zip(t.iter()).map(|(l, t)| l - t).collect();
                let jac: Vec<Vec<f64>> = (0..n)
                    .map(|i| (0..nv).map(|k| dlam(i, k)).collect())
                    .collect();
                Ok((resid, jac))
            }
            RealizationTarget::Multiplicities(mults) => {
                let mut resid = Vec::new();
                let mut jac: Vec<Vec<f64>> = Vec::new();
                let mut start = 0usize;
                let mut mean_rows: Vec<(f64, Vec<f64>)> = Vec::new();
                for &sz in mults {
                    let idx: Vec<usize> = (start..start + sz).collect();
                    start += sz;
                    let mean = idx.iter().map(|&i| es.values[i]).sum::<f64>() / sz as f64;
                    let dmean: Vec<f64> = (0..nv)
                        .map(|k| idx.iter().map(|&i| dlam(i, k)).sum::<f64>() / sz as f64)
                        .collect();
                    for &i in &idx {
                        resid.push(es.values[i] - mean);
                        jac.push((0..nv).map(|k| dlam(i, k) - dmean[k]).collect());
                    }
                    mean_rows.push((mean, dmean));
                }
                // hinge penalties keep consecutive cluster means separated
                for w in mean_rows.windows(2) {
                    let gap = w[1].0 - w[0].0;
                    if gap < self.sep {
                        resid.push(self.sep - gap);
                        jac.push((0..nv).map(|k| w[0].1[k] - w[1].1[k]).collect());
                    } else {
                        resid.push(0.0);
                        jac.push(vec![0.0; nv]);
                    }
                }
                Ok((resid, jac))
            }
        }
    }
}

fn lm_minimize(obj: &Objective, x0: Vec<f64>, iters: usize, stop_cost: f64) -> Result<Vec<f64>> {
    let mut x = x0;
    let (mut resid, mut jac) = obj.eval(&x)?;
    let mut cost: f64 = resid.iter().map(|r| r * r).sum();
    let nv = x.len();
    let mut mu = 1e-3;
    for _ in 0..iters {
        if cost <= stop_cost {
            break;
        }
        // normal equations
        let mut h = vec![vec![0.0; nv]; nv];
        let mut grad = vec![0.0; nv];
        for (r, row) in resid.iter().zip(&jac) {
            for i in 0..nv {
                grad[i] += r * row[i];
                for j in i..nv {
                    h[i][j] += row[i] * row[j];
                }
            }
        }
        for i in 0..nv {
            for j in 0..i {
                h[i][j] = h[j][i];
            }
        }
        if grad.iter().all(|g| g.abs() < 1e-14) {
            break;
        }
        let mut improved = false;
        for _ in 0..10 {
            let Some(delta) = solve_damped(&h, &grad, mu) else {
                mu *= 10.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(&delta).map(|(a, d)| a + d).collect();
            let (tr, tj) = obj.eval(&trial)?;
            let tcost: f64 = tr.iter().map(|r| r * r).sum();
            if tcost < cost {
                x = trial;
                resid = tr;
                jac = tj;
                cost = tcost;
                mu = (mu / 3.0).max(1e-12);
                improved = true;
                break;
            }
            mu *= 4.0;
            if mu > 1e14 {
                break;
            }
        }
        if !improved {
            break;
        }
    }
    Ok(x)
}

fn random_start(task: &RealizationTask, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let (center, radius) = match &task.target {
        RealizationTarget::Spectrum(t) => {
            let lo = t.first().copied().unwrap_or(0.0);
            let hi = t.last().copied().unwrap_or(0.0);
            ((lo + hi) / 2.0, ((hi - lo) / 2.0).max(1.0))
        }
        RealizationTarget::Multiplicities(_) => (0.0, 1.5),
    };
    let m = task.graph.edge_count();
    let n = task.graph.n();
    let mut x = Vec::with_capacity(m + n);
    for _ in 0..m {
        let mag: f64 = rng.gen_range(0.2..1.0) * radius;
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        x.push(sign * mag);
    }
    for _ in 0..n {
        x.push(center + rng.gen_range(-1.0..1.0) * radius);
    }
    x
}

/// Check an optimizer's output against the task, independently of how it was
/// produced. Returns the verified matrix.
fn verify_candidate(task: &RealizationTask, a: &SymMatrix) -> Option<SymMatrix> {
    if !in_pattern(a, &task.graph, REALIZE_PATTERN_TOL) {
        return None;
    }
    let es = eigensystem(a).ok()?;
    match &task.target {
        RealizationTarget::Spectrum(t) => {
            let scale = t.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
            if es
                .values
                .iter()
                .zip(t.iter())
                .any(|(l, t)| (l - t).abs() > REALIZE_TOL * scale)
            {
                return None;
            }
        }
        RealizationTarget::Multiplicities(mults) => {
            let summary = summarize(&es.values, DEFAULT_GAP);
            if &summary.ordered_mult != mults {
                return None;
            }
        }
    }
    if task.require_ssp && !has_ssp(a, &task.graph, DEFAULT_RANK_TOL).ok()? {
        return None;
    }
    Some(a.clone())
}

/// Multi-start realization. `hint` optionally provides the variable vector
/// for the first starts (used to seed augmentation from a bordered matrix).
fn realize_with_hint(task: &RealizationTask, hint: Option<&[f64]>) -> Result<Option<SymMatrix>> {
    task.validate()?;
    let stop_scale = match &task.target {
        RealizationTarget::Spectrum(t) => t.iter().fold(1.0f64, |m, &x| m.max(x.abs())),
        RealizationTarget::Multiplicities(_) => 1.0,
    };
    let obj = Objective { graph: &task.graph, target: &task.target, sep: 0.35 };
    let stop_cost = (1e-9 * stop_scale).powi(2);
    for start in 0..task.starts {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(task.seed, start));
        let x0 = match hint {
            Some(h) if start == 0 => h.to_vec(),
            Some(h) if start < task.starts / 2 => {
                // jitter the hint with growing amplitude
                let amp = 0.05 * start as f64;
                h.iter().map(|&v| v + rng.gen_range(-1.0..1.0) * amp).collect()
            }
            _ => random_start(task, &mut rng),
        };
        let x = lm_minimize(&obj, x0, task.iters, stop_cost)?;
        let a = build_matrix(&task.graph, &x);
        if let Some(hit) = verify_candidate(task, &a) {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

/// Find a matrix in the pattern matching the task's target, or report the
/// search as inconclusive (None).
pub fn realize(task: &RealizationTask) -> Result<Option<SymMatrix>> {
    realize_with_hint(task, None)
}

/// The graph plus one new vertex adjacent exactly to `alpha`.
pub fn augmented_graph(g: &Graph, alpha: &[u16]) -> Result<Graph> {
    let w = g.n() as u16 + 1;
    let mut edges = g.edges().to_vec();
    for &v in alpha {
        if v == 0 || v as usize > g.n() {
            return Err(Error::MissingElement(format!("vertex {v}")));
        }
        edges.push((v, w));
    }
    Graph::new(g.n() + 1, &edges)
}

fn bordered_hint(a: &SymMatrix, g: &Graph, h: &Graph, new_diag: f64) -> Vec<f64> {
    let n = g.n();
    let mut x = Vec::with_capacity(h.edge_count() + h.n());
    for &(u, v) in h.edges() {
        if (v as usize) <= n {
            x.push(a.get(u as usize - 1, v as usize - 1));
        } else {
            x.push(0.25);
        }
    }
    for d in 0..n {
        x.push(a.get(d, d));
    }
    x.push(new_diag);
    x
}

/// Result of growing a multiplicity by one: the certificate matrix and the
/// augmented graph it realizes.
pub type Grown = (SymMatrix, Graph);

fn grow_cluster(
    a: &SymMatrix,
    g: &Graph,
    h: Graph,
    cluster: usize,
    seed: u64,
    starts: usize,
    iters: usize,
) -> Result<Option<Grown>> {
    let base = summarize(&eigensystem(a)?.values, DEFAULT_GAP);
    let reps = base.representatives();
    if cluster >= reps.len() {
        return Err(Error::MissingElement(format!(
            "eigenvalue cluster {cluster} of {}",
            reps.len()
        )));
    }
    let mut target = Vec::with_capacity(g.n() + 1);
    for (c, &rep) in reps.iter().enumerate() {
        let mult = base.ordered_mult[c] + usize::from(c == cluster);
        target.extend(std::iter::repeat(rep).take(mult));
    }
    let task = RealizationTask::new(h.clone(), RealizationTarget::Spectrum(target), seed)
        .with_ssp()
        .with_budget(starts, iters);
    let hint = bordered_hint(a, g, &h, reps[cluster] + 0.1);
    let Some(b) = realize_with_hint(&task, Some(&hint))? else {
        return Ok(None);
    };
    // cluster preservation: same representatives, one multiplicity grown
    let after = summarize(&eigensystem(&b)?.values, DEFAULT_GAP);
    let rho = reps.iter().fold(1.0f64, |m, &r| m.max(r.abs()));
    let ok = after.q == base.q
        && after
            .representatives()
            .iter()
            .zip(&reps)
            .all(|(x, y)| (x - y).abs() <= AUGMENT_CLUSTER_TOL * rho)
        && after
            .ordered_mult
            .iter()
            .zip(&base.ordered_mult)
            .enumerate()
            .all(|(c, (x, y))| *x == y + usize::from(c == cluster));
    if !ok {
        return Ok(None);
    }
    Ok(Some((b, h)))
}

/// Augmentation: verify the hypotheses for the eigenvalue cluster
/// `lambda_index` and the attachment set `alpha`, then search for a matrix
/// on the augmented graph whose spectrum matches the input's except that the
/// chosen multiplicity has grown by one. The output is re-verified for
/// pattern, spectrum, strong spectral property, and cluster preservation.
pub fn augment(
    a: &SymMatrix,
    g: &Graph,
    lambda_index: usize,
    alpha: &[u16],
    seed: u64,
    starts: usize,
    iters: usize,
) -> Result<Option<Grown>> {
    let base = summarize(&eigensystem(a)?.values, DEFAULT_GAP);
    let reps = base.representatives();
    if lambda_index >= reps.len() {
        return Err(Error::MissingElement(format!(
            "eigenvalue cluster {lambda_index} of {}",
            reps.len()
        )));
    }
    augmentation_hypothesis(a, g, reps[lambda_index], alpha, DEFAULT_GAP, DEFAULT_RANK_TOL)?;
    let h = augmented_graph(g, alpha)?;
    grow_cluster(a, g, h, lambda_index, seed, starts, iters)
}

/// Grow multiplicity j by joining one universal vertex. Requires the input
/// to have the strong spectral property and every vertex to have at least
/// two neighbors. Shares the bordered-seed search with `augment` but targets
/// alpha = V(g), where the augmentation rank hypothesis does not apply.
pub fn add_universal_vertex_witness(
    a: &SymMatrix,
    g: &Graph,
    j: usize,
    seed: u64,
    starts: usize,
    iters: usize,
) -> Result<Option<Grown>> {
    if !has_ssp(a, g, DEFAULT_RANK_TOL)? {
        return Err(Error::HypothesisNotSatisfied(
            "universal-vertex growth needs the strong spectral property".into(),
        ));
    }
    if let Some(d) = g.degrees().iter().position(|&d| d < 2) {
        return Err(Error::DegreeConditionViolated(format!(
            "vertex {} has fewer than two neighbors",
            d + 1
        )));
    }
    let alpha: Vec<u16> = (1..=g.n() as u16).collect();
    let h = augmented_graph(g, &alpha)?;
    grow_cluster(a, g, h, j, seed, starts, iters)
}
