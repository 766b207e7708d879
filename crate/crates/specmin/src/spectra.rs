//! Dense symmetric matrices and the numeric kernel: a cyclic Jacobi
//! eigensolver, eigenvalue clustering into a distinct-eigenvalue summary,
//! pattern membership tests, Kronecker products, and numerical rank via
//! one-sided Jacobi SVD.
//!
//! Everything here is sized for matrices of order at most 64, which keeps a
//! fully dense O(n^3) solver both adequate and dependency-free.

use crate::graphs::Graph;
use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Relative factor for the eigensolver's off-diagonal convergence target.
pub const EIG_TOL_FACTOR: f64 = 1e-10;
/// Default relative gap separating eigenvalue clusters.
pub const DEFAULT_GAP: f64 = 1e-7;
/// Default tolerance for deciding whether an entry is a structural zero.
pub const PATTERN_TOL: f64 = 1e-9;
/// Default relative tolerance for numerical rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Dense real symmetric matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.data[i * d.len() + i] = x;
        }
        m
    }

    /// Build from explicit rows, rejecting ragged input and asymmetry beyond
    /// a small relative tolerance; tiny asymmetry is averaged away.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        let scale = rows
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0f64, |m, &x| m.max(x.abs()))
            .max(1.0);
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if (rows[i][j] - rows[j][i]).abs() > 1e-12 * scale {
                    return Err(Error::DimensionMismatch(format!(
                        "asymmetric at ({},{}): {} vs {}",
                        i + 1,
                        j + 1,
                        rows[i][j],
                        rows[j][i]
                    )));
                }
                data[i * n + j] = 0.5 * (rows[i][j] + rows[j][i]);
            }
        }
        Ok(SymMatrix { n, data })
    }

    /// 0/1 adjacency matrix of a graph.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.n();
        let mut m = Self::zeros(n);
        for &(u, v) in g.edges() {
            m.set(u as usize - 1, v as usize - 1, 1.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Set entry (i, j) and its mirror.
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.n + j] = x;
        self.data[j * self.n + i] = x;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|&x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix { n: self.n, data: self.data.iter().map(|&x| c * x).collect() }
    }

    pub fn add(&self, rhs: &SymMatrix) -> Result<SymMatrix> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, rhs.n)));
        }
        Ok(SymMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &SymMatrix) -> Result<SymMatrix> {
        self.add(&rhs.scale(-1.0))
    }

    /// Matrix square; symmetric by construction.
    pub fn square(&self) -> SymMatrix {
        let n = self.n;
        let mut out = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.get(i, k) * self.get(k, j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|k| self.get(i, k) * v[k]).sum())
            .collect()
    }

    /// Largest |difference| entry against another matrix of the same order.
    pub fn max_abs_diff(&self, rhs: &SymMatrix) -> Result<f64> {
        Ok(self.sub(rhs)?.max_abs())
    }
}

/// Kronecker product; indexing matches the row-major vertex numbering of
/// graph products, block (i, j) holding a[i][j] * b.
pub fn kron(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    let n = a
        .n()
        .checked_mul(b.n())
        .filter(|&n| n <= crate::graphs::MAX_VERTICES)
        .ok_or_else(|| Error::TooLarge("kronecker product order exceeds 64".into()))?;
    let mut out = SymMatrix::zeros(n);
    for i in 0..a.n() {
        for j in 0..a.n() {
            let aij = a.get(i, j);
            if aij == 0.0 {
                continue;
            }
            for k in 0..b.n() {
                for l in 0..b.n() {
                    out.data[(i * b.n() + k) * n + (j * b.n() + l)] = aij * b.get(k, l);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Eigensolver

/// Full eigendecomposition; `vectors[k]` is the unit eigenvector paired with
/// `values[k]`, values ascending.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl Eigensystem {
    /// Rebuild the matrix from the decomposition (for verification).
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.values.len();
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for (k, &lam) in self.values.iter().enumerate() {
                    s += lam * self.vectors[k][i] * self.vectors[k][j];
                }
                m.set(i, j, s);
            }
        }
        m
    }
}

/// Cyclic Jacobi eigensolver. Converges when the off-diagonal Frobenius norm
/// drops below 1e-10 * max(1, ||a||_F); reports the sweep count on failure.
pub fn eigensystem(a: &SymMatrix) -> Result<Eigensystem> {
    let n = a.n();
    let mut m = a.data.clone();
    let mut v = vec![0.0f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let target = EIG_TOL_FACTOR * a.frob_norm().max(1.0);
    let off = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    const MAX_SWEEPS: usize = 64;
    let mut sweeps = 0;
    while off(&m) > target {
        if sweeps >= MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // rows/columns p and q of m
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                // accumulate rotation into v (v's columns end as eigenvectors)
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].partial_cmp(&m[j * n + j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    // deterministic sign: largest-magnitude entry positive
    for vec in &mut vectors {
        let mut pivot = 0;
        for (i, &x) in vec.iter().enumerate() {
            if x.abs() > vec[pivot].abs() + 1e-15 {
                pivot = i;
            }
        }
        if vec[pivot] < 0.0 {
            for x in vec.iter_mut() {
                *x = -*x;
            }
        }
    }
    Ok(Eigensystem { values, vectors })
}

// ---------------------------------------------------------------------------
// Spectrum summaries

/// Eigenvalues grouped into clusters of nearly equal values, with the
/// resulting ordered multiplicity list and distinct-eigenvalue count.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    /// Sorted (ascending) eigenvalues as given.
    pub eigenvalues: Vec<f64>,
    /// Indices into `eigenvalues`, one sorted list per cluster, ascending.
    pub clusters: Vec<Vec<usize>>,
    /// Cluster sizes in eigenvalue order.
    pub ordered_mult: Vec<usize>,
    /// Number of distinct eigenvalues at the used tolerance.
    pub q: usize,
    /// Absolute gap threshold that produced the clustering.
    pub tolerance_used: f64,
}

impl SpectrumSummary {
    /// Mean eigenvalue of each cluster.
    pub fn representatives(&self) -> Vec<f64> {
        self.clusters
            .iter()
            .map(|c| c.iter().map(|&i| self.eigenvalues[i]).sum::<f64>() / c.len() as f64)
            .collect()
    }
}

/// Group sorted eigenvalues greedily: a new cluster starts whenever the gap
/// to the previous eigenvalue exceeds `gap * max(1, spectral radius)`.
pub fn summarize(eigenvalues: &[f64], gap: f64) -> SpectrumSummary {
    let mut eigs = eigenvalues.to_vec();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rho = eigs.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let tol = gap * rho.max(1.0);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..eigs.len() {
        if i == 0 || eigs[i] - eigs[i - 1] > tol {
            clusters.push(vec![i]);
        } else {
            clusters.last_mut().unwrap().push(i);
        }
    }
    let ordered_mult: Vec<usize> = clusters.iter().map(|c| c.len()).collect();
    SpectrumSummary {
        eigenvalues: eigs,
        q: clusters.len(),
        clusters,
        ordered_mult,
        tolerance_used: tol,
    }
}

/// Summary of a matrix's spectrum at the default gap.
pub fn summarize_matrix(a: &SymMatrix, gap: f64) -> Result<SpectrumSummary> {
    Ok(summarize(&eigensystem(a)?.values, gap))
}

// ---------------------------------------------------------------------------
// Pattern and witness checks

/// Does the matrix have the off-diagonal zero/nonzero pattern of the graph?
/// Edges need |entry| > tol, non-edges need |entry| <= tol; the diagonal is
/// unconstrained.
pub fn in_pattern(a: &SymMatrix, g: &Graph, tol: f64) -> bool {
    if a.n() != g.n() {
        return false;
    }
    for i in 0..a.n() {
        for j in (i + 1)..a.n() {
            let edge = g.has_edge(i as u16 + 1, j as u16 + 1);
            let nonzero = a.get(i, j).abs() > tol;
            if edge != nonzero {
                return false;
            }
        }
    }
    true
}

/// An orthogonal witness is a matrix in the pattern with a^2 = I (to `tol`,
/// max norm) whose spectrum genuinely uses both +1 and -1.
pub fn is_orthogonal_witness(a: &SymMatrix, g: &Graph, tol: f64) -> bool {
    if !in_pattern(a, g, PATTERN_TOL) {
        return false;
    }
    let n = a.n();
    let dev = match a.square().max_abs_diff(&SymMatrix::identity(n)) {
        Ok(d) => d,
        Err(_) => return false,
    };
    if dev > tol {
        return false;
    }
    // a^2 = I forces eigenvalues in {-1, +1}; the trace reveals the split
    let plus = (n as f64 + a.trace()) / 2.0;
    let m_plus = plus.round() as i64;
    (plus - m_plus as f64).abs() < 0.25 && m_plus >= 1 && m_plus <= n as i64 - 1
}

/// Cauchy interlacing check: `inner` (length n-1, from deleting one row and
/// column) must satisfy outer_i - tol <= inner_i <= outer_{i+1} + tol.
pub fn check_interlacing(outer: &[f64], inner: &[f64], tol: f64) -> bool {
    if inner.len() + 1 != outer.len() {
        return false;
    }
    let mut o = outer.to_vec();
    let mut i = inner.to_vec();
    o.sort_by(|a, b| a.partial_cmp(b).unwrap());
    i.sort_by(|a, b| a.partial_cmp(b).unwrap());
    i.iter()
        .enumerate()
        .all(|(k, &mu)| o[k] - tol <= mu && mu <= o[k + 1] + tol)
}

// ---------------------------------------------------------------------------
// Rank

/// Absolute singular-value cutoff for rank decisions.
pub fn rank_tol(sigma_max: f64, rel_tol: f64) -> f64 {
    rel_tol * sigma_max.max(1.0)
}

/// Numerical rank of a dense rectangular matrix via one-sided Jacobi SVD
/// (Hestenes orthogonalization of the columns). Counts singular values above
/// `rank_tol(sigma_max, rel_tol)`.
pub fn rank_from_rows(rows: &[Vec<f64>], rel_tol: f64) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let k = rows[0].len();
    if k == 0 {
        return 0;
    }
    // orthogonalize the shorter dimension
    let mut cols: Vec<Vec<f64>> = if k <= m {
        (0..k).map(|j| (0..m).map(|i| rows[i][j]).collect()).collect()
    } else {
        rows.to_vec()
    };
    let nc = cols.len();
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    for _ in 0..60 {
        let mut rotated = false;
        for i in 0..nc {
            for j in (i + 1)..nc {
                let alpha = dot(&cols[i], &cols[i]);
                let beta = dot(&cols[j], &cols[j]);
                let gamma = dot(&cols[i], &cols[j]);
                if gamma.abs() <= 1e-14 * (alpha * beta).sqrt().max(f64::MIN_POSITIVE) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..cols[i].len() {
                    let xi = cols[i][r];
                    let xj = cols[j][r];
                    cols[i][r] = c * xi - s * xj;
                    cols[j][r] = s * xi + c * xj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigmas: Vec<f64> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    let smax = sigmas.iter().fold(0.0f64, |m, &s| m.max(s));
    let cut = rank_tol(smax, rel_tol);
    sigmas.iter().filter(|&&s| s > cut).count()
}

/// Numerical rank of a symmetric matrix.
pub fn rank(a: &SymMatrix, rel_tol: f64) -> usize {
    rank_from_rows(&a.rows(), rel_tol)
}

// ---------------------------------------------------------------------------
// Serialization: entries as decimal strings with 17 significant digits, so
// every f64 round-trips exactly.

fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for SymMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| fmt_f64(self.get(i, j))).collect())
            .collect();
        MatrixJson { n: self.n, entries }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(de)?;
        if raw.entries.len() != raw.n {
            return Err(D::Error::custom("row count differs from n"));
        }
        let mut rows = Vec::with_capacity(raw.n);
        for r in &raw.entries {
            let mut row = Vec::with_capacity(raw.n);
            for s in r {
                row.push(
                    s.parse::<f64>()
                        .map_err(|e| D::Error::custom(format!("bad entry '{s}': {e}")))?,
                );
            }
            rows.push(row);
        }
        SymMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{make_family, Family};

    fn path_adj(n: usize) -> SymMatrix {
        SymMatrix::adjacency(&make_family(Family::Path, &[n]).unwrap())
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    struct Lcg(u64);
    impl Lcg {
        fn next_f64(&mut self) -> f64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((self.0 >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        }
    }

    fn random_sym(n: usize, rng: &mut Lcg) -> SymMatrix {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, rng.next_f64());
            }
        }
        m
    }

    #[test]
    fn path_adjacency_eigenvalues_match_closed_form() {
        for n in [2usize, 4, 6, 8] {
            let eigs = eigensystem(&path_adj(n)).unwrap().values;
            for (k, &lam) in eigs.iter().enumerate() {
                let expect = 2.0 * (std::f64::consts::PI * (n - k) as f64 / (n as f64 + 1.0)).cos();
                assert_close(lam, expect, 1e-12);
            }
        }
    }

    #[test]
    fn cycle_spectrum_clusters_into_known_multiplicities() {
        let c6 = SymMatrix::adjacency(&make_family(Family::Cycle, &[6]).unwrap());
        let s = summarize_matrix(&c6, DEFAULT_GAP).unwrap();
        assert_eq!(s.ordered_mult, vec![1, 2, 2, 1]);
        assert_eq!(s.q, 4);
        let reps = s.representatives();
        assert_close(reps[0], -2.0, 1e-12);
        assert_close(reps[3], 2.0, 1e-12);
    }

    #[test]
    fn complete_graph_has_two_distinct_eigenvalues() {
        let k5 = SymMatrix::adjacency(&make_family(Family::Complete, &[5]).unwrap());
        let s = summarize_matrix(&k5, DEFAULT_GAP).unwrap();
        assert_eq!(s.q, 2);
        assert_eq!(s.ordered_mult, vec![4, 1]);
    }

    #[test]
    fn eigensystem_reconstructs_random_matrices() {
        let mut rng = Lcg(7);
        for trial in 0..20 {
            let n = 2 + trial % 9;
            let a = random_sym(n, &mut rng);
            let es = eigensystem(&a).unwrap();
            let diff = es.reconstruct().max_abs_diff(&a).unwrap();
            assert!(diff <= 1e-8 * a.max_abs().max(1.0), "diff {diff} at n={n}");
            for k in 1..es.values.len() {
                assert!(es.values[k] >= es.values[k - 1]);
            }
        }
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let mut rng = Lcg(99);
        let a = random_sym(7, &mut rng);
        let es = eigensystem(&a).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let d: f64 = es.vectors[i].iter().zip(&es.vectors[j]).map(|(x, y)| x * y).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_close(d, expect, 1e-10);
            }
        }
    }

    #[test]
    fn one_by_one_matrix() {
        let a = SymMatrix::from_rows(&[vec![3.5]]).unwrap();
        let es = eigensystem(&a).unwrap();
        assert_eq!(es.values, vec![3.5]);
    }

    #[test]
    fn kron_eigenvalues_are_products() {
        let a = path_adj(2);
        let b = path_adj(3);
        let k = kron(&a, &b).unwrap();
        let mut expect: Vec<f64> = eigensystem(&a)
            .unwrap()
            .values
            .iter()
            .flat_map(|&x| eigensystem(&b).unwrap().values.iter().map(|&y| x * y).collect::<Vec<_>>())
            .collect();
        expect.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let got = eigensystem(&k).unwrap().values;
        for (g, e) in got.iter().zip(&expect) {
            assert_close(*g, *e, 1e-10);
        }
    }

    #[test]
    fn kron_block_layout_matches_row_major_products() {
        // kron(adj(g), identity-free pattern) vs graph tensor product layout
        let g = make_family(Family::Cycle, &[4]).unwrap();
        let h = make_family(Family::Path, &[3]).unwrap();
        let k = kron(&SymMatrix::adjacency(&g), &SymMatrix::adjacency(&h)).unwrap();
        let t = crate::graphs::product(crate::graphs::ProductKind::Tensor, &g, &h).unwrap();
        assert!(in_pattern(&k, &t, PATTERN_TOL));
    }

    #[test]
    fn pattern_membership() {
        let p3 = make_family(Family::Path, &[3]).unwrap();
        assert!(in_pattern(&path_adj(3), &p3, PATTERN_TOL));
        assert!(!in_pattern(&SymMatrix::zeros(3), &p3, PATTERN_TOL));
        let mut with_diag = path_adj(3);
        with_diag.set(0, 0, -2.5);
        assert!(in_pattern(&with_diag, &p3, PATTERN_TOL));
        let mut extra = path_adj(3);
        extra.set(0, 2, 0.01);
        assert!(!in_pattern(&extra, &p3, PATTERN_TOL));
    }

    #[test]
    fn summarize_groups_and_refines() {
        let s = summarize(&[1.0, 1.0 + 1e-9, 2.0, 5.0, 5.0 + 1e-9, 5.0 + 2e-9], DEFAULT_GAP);
        assert_eq!(s.ordered_mult, vec![2, 1, 3]);
        assert_eq!(s.q, 3);
        // refining the gap on a well-separated spectrum never merges clusters
        let reps = s.representatives();
        let finer = summarize(&reps, DEFAULT_GAP * 0.01);
        assert_eq!(finer.q, s.q);
    }

    #[test]
    fn orthogonal_witness_detection() {
        let h = SymMatrix::from_rows(&[
            vec![std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
            vec![std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2],
        ])
        .unwrap();
        let p2 = make_family(Family::Path, &[2]).unwrap();
        assert!(is_orthogonal_witness(&h, &p2, 1e-9));
        // identity squares to identity but uses only +1
        assert!(!is_orthogonal_witness(&SymMatrix::identity(2), &make_family(Family::Empty, &[2]).unwrap(), 1e-9));
        // right pattern, wrong square
        assert!(!is_orthogonal_witness(&path_adj(2).scale(2.0), &p2, 1e-9));
    }

    #[test]
    fn interlacing_on_vertex_deletion() {
        let c5 = SymMatrix::adjacency(&make_family(Family::Cycle, &[5]).unwrap());
        let outer = eigensystem(&c5).unwrap().values;
        let inner = eigensystem(&path_adj(4)).unwrap().values;
        assert!(check_interlacing(&outer, &inner, 1e-10));
        // shifting the inner spectrum past an outer eigenvalue breaks it
        let shifted: Vec<f64> = inner.iter().map(|x| x + 1.5).collect();
        assert!(!check_interlacing(&outer, &shifted, 1e-10));
        assert!(!check_interlacing(&outer, &outer, 1e-10));
    }

    #[test]
    fn rank_of_structured_matrices() {
        assert_eq!(rank(&path_adj(3), DEFAULT_RANK_TOL), 2);
        let ones = SymMatrix::from_rows(&vec![vec![1.0; 4]; 4]).unwrap();
        assert_eq!(rank(&ones, DEFAULT_RANK_TOL), 1);
        assert_eq!(rank(&SymMatrix::identity(6), DEFAULT_RANK_TOL), 6);
        assert_eq!(rank(&SymMatrix::zeros(5), DEFAULT_RANK_TOL), 0);
        let rect = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]];
        assert_eq!(rank_from_rows(&rect, DEFAULT_RANK_TOL), 1);
        let tall = vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
            vec![2.0, -1.0],
        ];
        assert_eq!(rank_from_rows(&tall, DEFAULT_RANK_TOL), 2);
    }

    #[test]
    fn rank_multiplicativity_under_kron() {
        let ones3 = SymMatrix::from_rows(&vec![vec![1.0; 3]; 3]).unwrap();
        let a = path_adj(3);
        let k = kron(&ones3, &a).unwrap();
        assert_eq!(
            rank(&k, DEFAULT_RANK_TOL),
            rank(&ones3, DEFAULT_RANK_TOL) * rank(&a, DEFAULT_RANK_TOL)
        );
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut rng = Lcg(31337);
        let a = random_sym(5, &mut rng).scale(std::f64::consts::PI);
        let s = serde_json::to_string(&a).unwrap();
        let back: SymMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
        assert!(s.contains("e0") || s.contains("e-"));
    }

    #[test]
    fn asymmetric_input_rejected() {
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
    }
}
