//! Explicit witness-matrix constructions: signed cycles, block matrices for
//! cartesian/tensor/strong products, tridiagonal inverse-eigenvalue
//! realizations, clique-chain and clique-star matrices, and the balanced
//! two-eigenvalue witnesses on a complete graph minus an edge.
//!
//! Every constructor re-verifies its own output (pattern membership and the
//! claimed distinct-eigenvalue bound) before returning it; the algebraic
//! identities behind the block constructions are also checked numerically.

use crate::graphs::{make_family, product, Family, Graph, ProductKind};
use crate::search::{add_universal_vertex_witness, realize, RealizationTarget, RealizationTask};
use crate::spectra::{
    eigensystem, in_pattern, kron, rank, summarize_matrix, SpectrumSummary, SymMatrix,
    DEFAULT_GAP, DEFAULT_RANK_TOL, PATTERN_TOL,
};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tolerance for the numeric check of each block construction's algebraic
/// identity (for example M^2 = I (x) (A^2 + 2I)).
pub const IDENTITY_TOL: f64 = 1e-9;

/// A verified witness: a matrix, the graph whose pattern it realizes, and
/// the distinct-eigenvalue bound it certifies.
#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub graph: Graph,
    pub matrix: SymMatrix,
    pub claimed_q_upper: usize,
    /// Name of the construction rule that produced this witness.
    pub citation: String,
}

impl ConstructionResult {
    pub fn summary(&self) -> Result<SpectrumSummary> {
        summarize_matrix(&self.matrix, DEFAULT_GAP)
    }
}

/// Final gate every construction passes: the matrix realizes the graph and
/// its distinct-eigenvalue count does not exceed the claim.
fn finish(
    graph: Graph,
    matrix: SymMatrix,
    claimed_q_upper: usize,
    citation: &str,
) -> Result<ConstructionResult> {
    if !in_pattern(&matrix, &graph, PATTERN_TOL) {
        return Err(Error::PatternMismatch(format!(
            "{citation}: constructed matrix leaves the graph pattern"
        )));
    }
    let q = summarize_matrix(&matrix, DEFAULT_GAP)?.q;
    if q > claimed_q_upper {
        return Err(Error::VerificationFailed(format!(
            "{citation}: matrix has {q} distinct eigenvalues, more than the claimed {claimed_q_upper}"
        )));
    }
    Ok(ConstructionResult {
        graph,
        matrix,
        claimed_q_upper,
        citation: citation.to_string(),
    })
}

// ---------------------------------------------------------------------------
// Signed cycle

/// The signed cycle matrix: adjacency of C_s with the (1,s) entry pair
/// negated, collapsing the spectrum to ceil(s/2) distinct values.
pub fn signed_cycle_matrix(s: usize) -> SymMatrix {
    let mut m = SymMatrix::zeros(s);
    for i in 0..s - 1 {
        m.set(i, i + 1, 1.0);
    }
    m.set(0, s - 1, -1.0);
    m
}

/// Closed-form spectrum of the signed cycle: 2 cos(pi (2j-1) / s) with
/// multiplicity two for j = 1..floor(s/2), plus a simple -2 when s is odd.
/// Returned ascending.
pub fn signed_cycle_spectrum(s: usize) -> Vec<f64> {
    let mut eigs = Vec::with_capacity(s);
    for j in 1..=(s / 2) {
        let lam = 2.0 * (std::f64::consts::PI * (2 * j - 1) as f64 / s as f64).cos();
        eigs.push(lam);
        eigs.push(lam);
    }
    if s % 2 == 1 {
        eigs.push(-2.0);
    }
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}

/// Signed cycle witness on C_s, certifying q <= ceil(s/2).
pub fn flipped_cycle(s: usize) -> Result<ConstructionResult> {
    if s < 3 {
        return Err(Error::InvalidParams("cycle needs s >= 3".into()));
    }
    let graph = make_family(Family::Cycle, &[s])?;
    finish(graph, signed_cycle_matrix(s), s.div_ceil(2), "signed-cycle")
}

// ---------------------------------------------------------------------------
// C_4 product blocks

fn spectrum_facts(a: &SymMatrix) -> Result<(SpectrumSummary, Vec<f64>, bool, bool)> {
    let summary = summarize_matrix(a, DEFAULT_GAP)?;
    let reps = summary.representatives();
    let tol = 10.0 * summary.tolerance_used;
    let symmetric = (0..reps.len()).all(|i| (reps[i] + reps[reps.len() - 1 - i]).abs() <= tol);
    let has_zero = reps.iter().any(|r| r.abs() <= tol);
    Ok((summary, reps, symmetric, has_zero))
}

fn check_identity(citation: &str, m: &SymMatrix, expect: &SymMatrix) -> Result<()> {
    let dev = m.square().max_abs_diff(expect)?;
    let scale = expect.max_abs().max(1.0);
    if dev > IDENTITY_TOL * scale {
        return Err(Error::VerificationFailed(format!(
            "{citation}: block identity violated by {dev:.3e}"
        )));
    }
    Ok(())
}

/// Witness on C_4 box g from a factor matrix with symmetric spectrum:
/// M = S (x) I + D (x) a with S the signed 4-cycle and D = diag(1,-1,1,-1).
/// The cross terms cancel because S and D anticommute, leaving
/// M^2 = I (x) (a^2 + 2I); the spectrum of M is {±sqrt(l^2+2)} over
/// eigenvalues l of a, so q(M) = q(a), plus one when 0 is an eigenvalue.
pub fn c4_cartesian_witness(a: &SymMatrix, g: &Graph) -> Result<ConstructionResult> {
    if !in_pattern(a, g, PATTERN_TOL) {
        return Err(Error::PatternMismatch(
            "factor matrix does not realize the factor graph".into(),
        ));
    }
    let (summary, _, symmetric, has_zero) = spectrum_facts(a)?;
    if !symmetric {
        return Err(Error::SpectrumNotSymmetric);
    }
    let t = a.n();
    let s4 = signed_cycle_matrix(4);
    let d = SymMatrix::from_diag(&[1.0, -1.0, 1.0, -1.0]);
    let m = kron(&s4, &SymMatrix::identity(t))?.add(&kron(&d, a)?)?;
    let expect = kron(
        &SymMatrix::identity(4),
        &a.square().add(&SymMatrix::identity(t).scale(2.0))?,
    )?;
    check_identity("c4-cartesian-block", &m, &expect)?;
    let c4 = make_family(Family::Cycle, &[4])?;
    let graph = product(ProductKind::Cartesian, &c4, g)?;
    let claimed = summary.q + usize::from(has_zero);
    finish(graph, m, claimed, "c4-cartesian-block")
}

/// Witness on C_4 x g from a zero-diagonal factor with symmetric spectrum:
/// M = (1/sqrt(2)) S (x) a, giving M^2 = I (x) a^2 and spectrum contained in
/// the factor's, so q(M) <= q(a).
pub fn c4_tensor_witness(a: &SymMatrix, g: &Graph) -> Result<ConstructionResult> {
    if !in_pattern(a, g, PATTERN_TOL) {
        return Err(Error::PatternMismatch(
            "factor matrix does not realize the factor graph".into(),
        ));
    }
    for i in 0..a.n() {
        if a.get(i, i).abs() > PATTERN_TOL {
            return Err(Error::NonzeroDiagonal(format!(
                "factor diagonal entry {} is {}",
                i + 1,
                a.get(i, i)
            )));
        }
    }
    let (summary, _, symmetric, _) = spectrum_facts(a)?;
    if !symmetric {
        return Err(Error::SpectrumNotSymmetric);
    }
    let s4 = signed_cycle_matrix(4);
    let m = kron(&s4, a)?.scale(std::f64::consts::FRAC_1_SQRT_2);
    let expect = kron(&SymMatrix::identity(4), &a.square())?;
    check_identity("c4-tensor-scaled-kron", &m, &expect)?;
    let c4 = make_family(Family::Cycle, &[4])?;
    let graph = product(ProductKind::Tensor, &c4, g)?;
    finish(graph, m, summary.q, "c4-tensor-scaled-kron")
}

// ---------------------------------------------------------------------------
// Path tensor products

/// Adjacency Kronecker witness on P_s x P_t with the parity-dependent
/// distinct-eigenvalue bound: ts/2 for s, t both even; (t-1)s/2 + 1 for s
/// even and t odd; (t-1)(s-1)/2 + 1 for both odd.
pub fn tensor_path_witness(s: usize, t: usize) -> Result<ConstructionResult> {
    if s < 2 || t < 2 {
        return Err(Error::InvalidParams("both path orders must be at least 2".into()));
    }
    let ps = make_family(Family::Path, &[s])?;
    let pt = make_family(Family::Path, &[t])?;
    let m = kron(&SymMatrix::adjacency(&ps), &SymMatrix::adjacency(&pt))?;
    let claimed = match (s % 2 == 0, t % 2 == 0) {
        (true, true) => t * s / 2,
        (true, false) => (t - 1) * s / 2 + 1,
        (false, true) => (s - 1) * t / 2 + 1,
        (false, false) => (t - 1) * (s - 1) / 2 + 1,
    };
    let graph = product(ProductKind::Tensor, &ps, &pt)?;
    finish(graph, m, claimed, "tensor-path-kron")
}

// ---------------------------------------------------------------------------
// Strong products

fn require_nonzero_diag(a: &SymMatrix, which: &str) -> Result<()> {
    for i in 0..a.n() {
        if a.get(i, i).abs() <= PATTERN_TOL {
            return Err(Error::ZeroDiagonalEntry(format!(
                "{which} factor has zero diagonal entry at {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Kronecker witness on the strong product g (x) h; both factors need every
/// diagonal entry nonzero so the product pattern comes out exactly right.
pub fn strong_product_witness(
    a: &SymMatrix,
    g: &Graph,
    b: &SymMatrix,
    h: &Graph,
) -> Result<ConstructionResult> {
    if !in_pattern(a, g, PATTERN_TOL) || !in_pattern(b, h, PATTERN_TOL) {
        return Err(Error::PatternMismatch(
            "factor matrices must realize their factor graphs".into(),
        ));
    }
    require_nonzero_diag(a, "left")?;
    require_nonzero_diag(b, "right")?;
    let m = kron(a, b)?;
    let claimed = summarize_matrix(&m, DEFAULT_GAP)?.q;
    let graph = product(ProductKind::Strong, g, h)?;
    finish(graph, m, claimed, "strong-product-kron")
}

/// The 2x2 factor with spectrum {-1, 1} used when the other factor's
/// spectrum is symmetric.
pub fn p2_sign_split() -> SymMatrix {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    SymMatrix::from_rows(&[vec![c, c], vec![c, -c]]).unwrap()
}

/// The 2x2 factor with spectrum {0, 1} used when the other factor already
/// has a zero eigenvalue.
pub fn p2_half_ones() -> SymMatrix {
    SymMatrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap()
}

/// The 3x3 tridiagonal matrix with nonzero diagonal and spectrum {-1, 0, 1},
/// driving the strong product with a 3-vertex path.
pub fn p3_three_level() -> SymMatrix {
    let r = (3.0f64 / 5.0).sqrt();
    SymMatrix::from_rows(&[
        vec![-5.0 / 6.0 * r, -5.0 / 6.0 * r, 0.0],
        vec![-5.0 / 6.0 * r, 0.5 * r, 2.0 / 3.0 * r],
        vec![0.0, 2.0 / 3.0 * r, r / 3.0],
    ])
    .unwrap()
}

/// Witness on g (x) P_2 with q <= q(a): chooses the {-1,1} factor when the
/// spectrum of a is symmetric, the {0,1} factor when 0 is an eigenvalue, and
/// otherwise shifts a by an eigenvalue first (distinct-eigenvalue counts are
/// shift-invariant) provided some shift keeps the diagonal nonzero.
pub fn strong_p2_witness(a: &SymMatrix, g: &Graph) -> Result<ConstructionResult> {
    if !in_pattern(a, g, PATTERN_TOL) {
        return Err(Error::PatternMismatch(
            "factor matrix does not realize the factor graph".into(),
        ));
    }
    require_nonzero_diag(a, "left")?;
    let (summary, reps, symmetric, has_zero) = spectrum_facts(a)?;
    let p2 = make_family(Family::Path, &[2])?;
    if symmetric {
        let m = kron(a, &p2_sign_split())?;
        let graph = product(ProductKind::Strong, g, &p2)?;
        return finish(graph, m, summary.q, "strong-p2-factor");
    }
    let shifted = if has_zero {
        a.clone()
    } else {
        // put 0 into the spectrum without zeroing any diagonal entry
        let n = a.n();
        reps.iter()
            .map(|&r| a.sub(&SymMatrix::identity(n).scale(r)).unwrap())
            .find(|c| (0..n).all(|i| c.get(i, i).abs() > PATTERN_TOL))
            .ok_or_else(|| {
                Error::ZeroDiagonalEntry(
                    "every eigenvalue shift zeroes some diagonal entry".into(),
                )
            })?
    };
    let m = kron(&shifted, &p2_half_ones())?;
    let graph = product(ProductKind::Strong, g, &p2)?;
    finish(graph, m, summary.q, "strong-p2-factor")
}

// ---------------------------------------------------------------------------
// Tridiagonal inverse eigenvalue construction

fn hash_target(target: &[f64], salt: u64) -> u64 {
    let mut h = 0xcbf29ce484222325u64 ^ salt;
    for &x in target {
        h ^= x.to_bits();
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Tridiagonal matrix with positive off-diagonals whose spectrum is exactly
/// `target` (distinct, ascending), built by the Lanczos recurrence on the
/// diagonal matrix of targets started from a random positive weight vector.
/// With `require_nonzero_diag`, weights are resampled until every diagonal
/// entry clears 1e-6 in magnitude.
pub fn path_with_spectrum(target: &[f64], require_nonzero_diag: bool) -> Result<SymMatrix> {
    let n = target.len();
    if n == 0 {
        return Err(Error::InvalidParams("empty target spectrum".into()));
    }
    if target.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(
            "target spectrum must be strictly ascending (tridiagonal spectra are simple)".into(),
        ));
    }
    let scale = target.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
    if n == 1 {
        return Ok(SymMatrix::from_diag(target));
    }
    'attempt: for attempt in 0..80u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(hash_target(target, attempt));
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut basis: Vec<Vec<f64>> = vec![w.iter().map(|x| x / norm).collect()];
        let mut alpha = Vec::with_capacity(n);
        let mut beta = Vec::with_capacity(n - 1);
        for step in 0..n {
            let v = &basis[step];
            let lv: Vec<f64> = v.iter().zip(target).map(|(x, t)| x * t).collect();
            let a_k: f64 = v.iter().zip(&lv).map(|(x, y)| x * y).sum();
            alpha.push(a_k);
            if step + 1 == n {
                break;
            }
            let mut u = lv;
            // full reorthogonalization, twice for stability
            for _ in 0..2 {
                for b in &basis {
                    let proj: f64 = b.iter().zip(&u).map(|(x, y)| x * y).sum();
                    for (ui, bi) in u.iter_mut().zip(b) {
                        *ui -= proj * bi;
                    }
                }
            }
            let b_k = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if b_k < 1e-8 * scale {
                continue 'attempt;
            }
            beta.push(b_k);
            basis.push(u.iter().map(|x| x / b_k).collect());
        }
        if require_nonzero_diag && alpha.iter().any(|a| a.abs() <= 1e-6) {
            continue;
        }
        let mut m = SymMatrix::from_diag(&alpha);
        for (i, &b) in beta.iter().enumerate() {
            m.set(i, i + 1, b);
        }
        let got = eigensystem(&m)?.values;
        if got
            .iter()
            .zip(target)
            .all(|(g, t)| (g - t).abs() <= 1e-8 * scale)
        {
            return Ok(m);
        }
    }
    Err(Error::RealizationFailed(
        "tridiagonal construction exhausted its resampling budget".into(),
    ))
}

// ---------------------------------------------------------------------------
// Cartesian sums

fn consecutive_integer_q(a: &SymMatrix, which: &str) -> Result<usize> {
    let summary = summarize_matrix(a, DEFAULT_GAP)?;
    let reps = summary.representatives();
    for (i, &r) in reps.iter().enumerate() {
        if (r - (i + 1) as f64).abs() > 1e-6 {
            return Err(Error::SpectrumNotConsecutiveIntegers(format!(
                "{which} factor eigenvalue {r} where {} was needed",
                i + 1
            )));
        }
    }
    Ok(summary.q)
}

/// Witness a (x) I + I (x) b on g box h. Both factors must have spectra
/// {1, ..., q} (consecutive integers), making the sum-set spectrum
/// {2, ..., q(a)+q(b)} of size q(a)+q(b)-1.
pub fn cartesian_sum_witness(
    a: &SymMatrix,
    g: &Graph,
    b: &SymMatrix,
    h: &Graph,
) -> Result<ConstructionResult> {
    if !in_pattern(a, g, PATTERN_TOL) || !in_pattern(b, h, PATTERN_TOL) {
        return Err(Error::PatternMismatch(
            "factor matrices must realize their factor graphs".into(),
        ));
    }
    let qa = consecutive_integer_q(a, "left")?;
    let qb = consecutive_integer_q(b, "right")?;
    let m = kron(a, &SymMatrix::identity(b.n()))?.add(&kron(&SymMatrix::identity(a.n()), b)?)?;
    let graph = product(ProductKind::Cartesian, g, h)?;
    finish(graph, m, qa + qb - 1, "cartesian-integer-sum")
}

// ---------------------------------------------------------------------------
// Clique chains and clique stars

fn check_clique_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.len() < 2 || sizes.iter().any(|&s| s < 2) {
        return Err(Error::InvalidParams(
            "need at least two cliques, each with at least two vertices".into(),
        ));
    }
    Ok(())
}

/// Sum of clique-indicator rank-one projectors on the clique chain: rank
/// equals the number of cliques s, so q <= s + 1.
pub fn clique_path_matrix(sizes: &[usize]) -> Result<ConstructionResult> {
    check_clique_sizes(sizes)?;
    let graph = make_family(Family::CliquePath, sizes)?;
    let n = graph.n();
    let mut m = SymMatrix::zeros(n);
    let mut start = 0usize;
    for &sz in sizes {
        // clique occupies [start, start+sz), sharing `start` with the
        // previous clique; set() mirrors, so touch each pair once
        for i in start..start + sz {
            for j in i..start + sz {
                m.set(i, j, m.get(i, j) + 1.0);
            }
        }
        start += sz - 1;
    }
    let s = sizes.len();
    if rank(&m, DEFAULT_RANK_TOL) != s {
        return Err(Error::VerificationFailed(format!(
            "clique-path-rank: matrix rank differs from the clique count {s}"
        )));
    }
    finish(graph, m, s + 1, "clique-path-rank")
}

/// Normalized clique projectors sharing the center vertex (numbered last):
/// eigenvalue 0 with multiplicity n-s, eigenvalue 1 with multiplicity s-1,
/// and one simple eigenvalue 1 + sum(1/l_i), so exactly three distinct.
pub fn clique_star_matrix(sizes: &[usize]) -> Result<ConstructionResult> {
    check_clique_sizes(sizes)?;
    let graph = make_family(Family::CliqueStar, sizes)?;
    let n = graph.n();
    let center = n - 1;
    let mut m = SymMatrix::zeros(n);
    let mut start = 0usize;
    for &sz in sizes {
        let ell = sz - 1;
        let mut verts: Vec<usize> = (start..start + ell).collect();
        verts.push(center);
        start += ell;
        for (ai, &i) in verts.iter().enumerate() {
            for &j in &verts[ai..] {
                m.set(i, j, m.get(i, j) + 1.0 / ell as f64);
            }
        }
    }
    let s = sizes.len();
    // structural spectrum check beyond the generic q bound
    let summary = summarize_matrix(&m, DEFAULT_GAP)?;
    let total: f64 = sizes.iter().map(|&sz| 1.0 / (sz - 1) as f64).sum();
    let reps = summary.representatives();
    let ok = summary.q == 3
        && summary.ordered_mult == vec![n - s, s - 1, 1]
        && reps[0].abs() < 1e-9
        && (reps[1] - 1.0).abs() < 1e-9
        && (reps[2] - (1.0 + total)).abs() < 1e-9;
    if !ok {
        return Err(Error::VerificationFailed(
            "clique-star-projection: spectrum structure differs from the closed form".into(),
        ));
    }
    finish(graph, m, 3, "clique-star-projection")
}

// ---------------------------------------------------------------------------
// Complete graph minus an edge

/// Two-eigenvalue witness on K_n - e with balanced multiplicities
/// (ceil(n/2), floor(n/2)) and the strong spectral property. Even orders are
/// realized directly; odd orders grow the even witness by one universal
/// vertex.
pub fn kn_minus_e_witness(n: usize) -> Result<ConstructionResult> {
    if n < 4 {
        return Err(Error::InvalidParams("needs n >= 4".into()));
    }
    let (matrix, graph) = kn_minus_e_matrix(n)?;
    finish(graph, matrix, 2, "balanced-multiplicity-witness")
}

fn kn_minus_e_matrix(n: usize) -> Result<(SymMatrix, Graph)> {
    let graph = make_family(Family::CompleteMinusEdge, &[n])?;
    if n % 2 == 0 {
        let k = n / 2;
        let mut target = vec![0.0; k];
        target.extend(vec![1.0; k]);
        let task = RealizationTask::new(
            graph.clone(),
            RealizationTarget::Spectrum(target),
            0xE5EED ^ n as u64,
        )
        .with_ssp();
        let matrix = realize(&task)?.ok_or_else(|| {
            Error::RealizationFailed(format!(
                "no balanced two-eigenvalue matrix found on order {n} within budget"
            ))
        })?;
        Ok((matrix, graph))
    } else {
        let (prev, prev_graph) = kn_minus_e_matrix(n - 1)?;
        // grow the lower eigenvalue so the larger multiplicity leads
        let (matrix, grown) =
            add_universal_vertex_witness(&prev, &prev_graph, 0, 0xE5EED ^ n as u64, 120, 500)?
                .ok_or_else(|| {
                    Error::RealizationFailed(format!(
                        "universal-vertex growth to order {n} exhausted its budget"
                    ))
                })?;
        if grown != graph {
            return Err(Error::VerificationFailed(
                "balanced-multiplicity-witness: grown graph is not the expected pattern".into(),
            ));
        }
        Ok((matrix, graph))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::canonical_key;
    use crate::strongprops::has_ssp;

    #[test]
    fn signed_cycle_matches_cosine_formula() {
        for s in 3..=20 {
            let m = signed_cycle_matrix(s);
            let got = eigensystem(&m).unwrap().values;
            let expect = signed_cycle_spectrum(s);
            for (g, e) in got.iter().zip(&expect) {
                assert!((g - e).abs() <= 1e-10, "s={s}: {g} vs {e}");
            }
        }
    }

    #[test]
    fn signed_cycle_multiplicities() {
        let r4 = flipped_cycle(4).unwrap();
        assert_eq!(r4.claimed_q_upper, 2);
        assert_eq!(r4.summary().unwrap().ordered_mult, vec![2, 2]);
        let r5 = flipped_cycle(5).unwrap();
        assert_eq!(r5.claimed_q_upper, 3);
        assert_eq!(r5.summary().unwrap().ordered_mult, vec![1, 2, 2]);
        let r6 = flipped_cycle(6).unwrap();
        assert_eq!(r6.summary().unwrap().ordered_mult, vec![2, 2, 2]);
    }

    #[test]
    fn c4_cartesian_block_on_paths() {
        let p4 = make_family(Family::Path, &[4]).unwrap();
        let r = c4_cartesian_witness(&SymMatrix::adjacency(&p4), &p4).unwrap();
        assert_eq!(r.claimed_q_upper, 4);
        assert_eq!(r.summary().unwrap().q, 4);
        let c4 = make_family(Family::Cycle, &[4]).unwrap();
        let expect = product(ProductKind::Cartesian, &c4, &p4).unwrap();
        assert_eq!(r.graph, expect);
        // odd path has 0 in its spectrum, costing one extra value
        let p3 = make_family(Family::Path, &[3]).unwrap();
        let r3 = c4_cartesian_witness(&SymMatrix::adjacency(&p3), &p3).unwrap();
        assert_eq!(r3.claimed_q_upper, 4);
    }

    #[test]
    fn c4_cartesian_block_on_signed_cycles() {
        let c8 = make_family(Family::Cycle, &[8]).unwrap();
        let r = c4_cartesian_witness(&signed_cycle_matrix(8), &c8).unwrap();
        assert_eq!(r.claimed_q_upper, 4);
        assert_eq!(r.graph.n(), 32);
        let c4 = make_family(Family::Cycle, &[4]).unwrap();
        let r44 = c4_cartesian_witness(&signed_cycle_matrix(4), &c4).unwrap();
        assert_eq!(r44.claimed_q_upper, 2);
    }

    #[test]
    fn c4_cartesian_rejects_asymmetric_spectrum() {
        let p3 = make_family(Family::Path, &[3]).unwrap();
        let shifted = SymMatrix::adjacency(&p3)
            .add(&SymMatrix::identity(3))
            .unwrap();
        let err = c4_cartesian_witness(&shifted, &p3).unwrap_err();
        assert!(matches!(err, Error::SpectrumNotSymmetric), "{err}");
    }

    #[test]
    fn c4_tensor_witnesses() {
        let c4 = make_family(Family::Cycle, &[4]).unwrap();
        let r = c4_tensor_witness(&signed_cycle_matrix(4), &c4).unwrap();
        assert_eq!(r.claimed_q_upper, 2);
        assert_eq!(r.summary().unwrap().q, 2);
        let c6 = make_family(Family::Cycle, &[6]).unwrap();
        let r6 = c4_tensor_witness(&signed_cycle_matrix(6), &c6).unwrap();
        assert_eq!(r6.claimed_q_upper, 3);
        // plain adjacency of C_4 keeps 0 in the spectrum: q stays 3
        let radj = c4_tensor_witness(&SymMatrix::adjacency(&c4), &c4).unwrap();
        assert_eq!(radj.claimed_q_upper, 3);
        // a diagonal entry breaks the tensor pattern
        let mut with_diag = signed_cycle_matrix(4);
        with_diag.set(0, 0, 1.0);
        assert!(matches!(
            c4_tensor_witness(&with_diag, &c4).unwrap_err(),
            Error::NonzeroDiagonal(_)
        ));
    }

    #[test]
    fn tensor_path_case_formulas() {
        let r44 = tensor_path_witness(4, 4).unwrap();
        assert_eq!(r44.claimed_q_upper, 8);
        let r43 = tensor_path_witness(4, 3).unwrap();
        assert_eq!(r43.claimed_q_upper, 5);
        assert_eq!(r43.summary().unwrap().q, 5);
        let r34 = tensor_path_witness(3, 4).unwrap();
        assert_eq!(r34.claimed_q_upper, 5);
        let r33 = tensor_path_witness(3, 3).unwrap();
        assert_eq!(r33.claimed_q_upper, 3);
        assert_eq!(r33.graph.components().len(), 2);
    }

    #[test]
    fn strong_product_three_level_square() {
        let p3 = make_family(Family::Path, &[3]).unwrap();
        let b = p3_three_level();
        let got = eigensystem(&b).unwrap().values;
        for (g, e) in got.iter().zip(&[-1.0, 0.0, 1.0]) {
            assert!((g - e).abs() < 1e-12);
        }
        let r = strong_product_witness(&b, &p3, &b, &p3).unwrap();
        assert_eq!(r.claimed_q_upper, 3);
        assert_eq!(r.graph.n(), 9);
        // adjacency factors have zero diagonals
        assert!(matches!(
            strong_product_witness(&SymMatrix::adjacency(&p3), &p3, &b, &p3).unwrap_err(),
            Error::ZeroDiagonalEntry(_)
        ));
    }

    #[test]
    fn strong_p2_factor_choices() {
        let p3 = make_family(Family::Path, &[3]).unwrap();
        // symmetric spectrum path
        let r = strong_p2_witness(&p3_three_level(), &p3).unwrap();
        assert_eq!(r.claimed_q_upper, 3);
        assert!(r.summary().unwrap().q <= 3);
        // spectrum {0,1}: not symmetric, has zero
        let p2 = make_family(Family::Path, &[2]).unwrap();
        let r2 = strong_p2_witness(&p2_half_ones(), &p2).unwrap();
        assert_eq!(r2.claimed_q_upper, 2);
        assert_eq!(
            canonical_key(&r2.graph),
            canonical_key(&make_family(Family::Complete, &[4]).unwrap())
        );
        // generic spectrum handled by shifting
        let c = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 4.0]]).unwrap();
        let r3 = strong_p2_witness(&c, &p2).unwrap();
        assert_eq!(r3.claimed_q_upper, 2);
    }

    #[test]
    fn tridiagonal_inverse_eigenvalue() {
        let target = [1.0, 2.0, 4.0];
        let m = path_with_spectrum(&target, false).unwrap();
        let got = eigensystem(&m).unwrap().values;
        for (g, e) in got.iter().zip(&target) {
            assert!((g - e).abs() <= 1e-8);
        }
        assert!(m.get(0, 1) > 0.0 && m.get(1, 2) > 0.0);
        assert!((m.get(0, 2)).abs() < 1e-15);
        let nz = path_with_spectrum(&[-2.0, -1.0, 1.0, 2.0], true).unwrap();
        for i in 0..4 {
            assert!(nz.get(i, i).abs() > 1e-6);
        }
        assert!(path_with_spectrum(&[1.0, 1.0, 2.0], false).is_err());
    }

    #[test]
    fn cartesian_sum_of_integer_paths() {
        let a = path_with_spectrum(&[1.0, 2.0, 3.0], false).unwrap();
        let b = path_with_spectrum(&[1.0, 2.0], false).unwrap();
        let p3 = make_family(Family::Path, &[3]).unwrap();
        let p2 = make_family(Family::Path, &[2]).unwrap();
        let r = cartesian_sum_witness(&a, &p3, &b, &p2).unwrap();
        assert_eq!(r.claimed_q_upper, 4);
        assert_eq!(r.summary().unwrap().q, 4);
        let expect = product(ProductKind::Cartesian, &p3, &p2).unwrap();
        assert_eq!(r.graph, expect);
        // non-integer spectra are rejected
        let bad = SymMatrix::adjacency(&p2);
        assert!(matches!(
            cartesian_sum_witness(&bad, &p2, &b, &p2).unwrap_err(),
            Error::SpectrumNotConsecutiveIntegers(_)
        ));
    }

    #[test]
    fn clique_chain_matrices() {
        let r = clique_path_matrix(&[3, 3]).unwrap();
        assert_eq!(r.claimed_q_upper, 3);
        assert_eq!(rank(&r.matrix, DEFAULT_RANK_TOL), 2);
        let r2 = clique_path_matrix(&[2, 2, 2]).unwrap();
        assert_eq!(r2.claimed_q_upper, 4);
        assert_eq!(
            canonical_key(&r2.graph),
            canonical_key(&make_family(Family::Path, &[4]).unwrap())
        );
        let r3 = clique_path_matrix(&[3, 4, 3]).unwrap();
        assert_eq!(r3.claimed_q_upper, 4);
        assert_eq!(rank(&r3.matrix, DEFAULT_RANK_TOL), 3);
        assert!(clique_path_matrix(&[3]).is_err());
        assert!(clique_path_matrix(&[3, 1]).is_err());
    }

    #[test]
    fn clique_star_matrices() {
        let r = clique_star_matrix(&[2, 2, 2, 2, 2]).unwrap();
        assert_eq!(r.claimed_q_upper, 3);
        assert_eq!(r.graph.degree(6), 5);
        let s = r.summary().unwrap();
        assert_eq!(s.ordered_mult, vec![1, 4, 1]);
        let r2 = clique_star_matrix(&[3, 3, 4]).unwrap();
        let s2 = r2.summary().unwrap();
        assert_eq!(s2.ordered_mult, vec![5, 2, 1]);
        let r3 = clique_star_matrix(&[2, 2]).unwrap();
        assert_eq!(
            canonical_key(&r3.graph),
            canonical_key(&make_family(Family::Path, &[3]).unwrap())
        );
    }

    #[test]
    fn kn_minus_e_even_and_odd() {
        let r4 = kn_minus_e_witness(4).unwrap();
        assert_eq!(r4.claimed_q_upper, 2);
        assert_eq!(r4.summary().unwrap().ordered_mult, vec![2, 2]);
        let r6 = kn_minus_e_witness(6).unwrap();
        assert_eq!(r6.summary().unwrap().ordered_mult, vec![3, 3]);
        assert!(has_ssp(&r6.matrix, &r6.graph, DEFAULT_RANK_TOL).unwrap());
        let r7 = kn_minus_e_witness(7).unwrap();
        assert_eq!(r7.summary().unwrap().ordered_mult, vec![4, 3]);
        assert!(has_ssp(&r7.matrix, &r7.graph, DEFAULT_RANK_TOL).unwrap());
        assert!(kn_minus_e_witness(3).is_err());
    }
}
