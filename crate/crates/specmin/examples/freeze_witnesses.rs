//! Regenerate the frozen witness block of the embedded data file.
//!
//! The shipped catalog must load without running any optimizer, so the
//! search products it carries (vertex augmentations, near-path templates,
//! complete-minus-edge witnesses) are produced here once, verified, and
//! written back into `data/catalog.json` at full double precision. The
//! loader re-verifies all of them from scratch on every load, making this
//! a build step that only needs re-running when the pipeline changes.
//!
//!     cargo run --example freeze_witnesses

use serde_json::{json, Value};
use specmin::bounds::doubled_eigenvalue_witness;
use specmin::catalog::{banner_matrix, g48_matrix};
use specmin::constructions::{kn_minus_e_witness, signed_cycle_matrix};
use specmin::graphs::{make_family, Family, Graph};
use specmin::search::augment;
use specmin::spectra::{eigensystem, summarize, SymMatrix, DEFAULT_GAP, DEFAULT_RANK_TOL};
use specmin::strongprops::{has_smp, has_ssp};

fn data_path() -> String {
    format!("{}/data/catalog.json", env!("CARGO_MANIFEST_DIR"))
}

fn ident_edges(doc: &Value, key: &str) -> Vec<(u16, u16)> {
    let rows = doc["identified_graphs"].as_array().expect("identified_graphs array");
    let row = rows
        .iter()
        .find(|r| r["key"] == key)
        .unwrap_or_else(|| panic!("no identified graph {key}"));
    row["edges"]
        .as_array()
        .expect("edge list")
        .iter()
        .map(|e| (e[0].as_u64().unwrap() as u16, e[1].as_u64().unwrap() as u16))
        .collect()
}

fn sorted_edges(g: &Graph) -> Vec<(u16, u16)> {
    let mut e = g.edges().to_vec();
    e.sort_unstable();
    e
}

/// Verify the witness once more and serialize it.
fn freeze(key: &str, g: &Graph, m: &SymMatrix, q: u32) -> Value {
    let summary = summarize(&eigensystem(m).unwrap().values, DEFAULT_GAP);
    assert_eq!(summary.q, q as usize, "{key}: distinct eigenvalue count");
    let ssp = has_ssp(m, g, DEFAULT_RANK_TOL).unwrap();
    let smp = if ssp { true } else { has_smp(m, g, DEFAULT_RANK_TOL).unwrap() };
    println!(
        "{key}: q={q} mults={:?} ssp={ssp} smp={smp}",
        summary.ordered_mult
    );
    json!({
        "key": key,
        "order": g.n(),
        "edges": sorted_edges(g),
        "q": q,
        "ssp": ssp,
        "smp": smp,
        "matrix": m.rows(),
    })
}

/// Run the augmentation search until a seed yields the wanted multiplicity
/// pattern, then check the grown graph is exactly the pinned one.
fn grow(
    key: &str,
    base: &SymMatrix,
    g: &Graph,
    lambda_index: usize,
    alpha: &[u16],
    want_mults: &[usize],
    want_edges: &[(u16, u16)],
) -> Value {
    for seed in 1..=40u64 {
        let grown = augment(base, g, lambda_index, alpha, seed, 60, 300)
            .unwrap_or_else(|e| panic!("{key}: {e}"));
        let Some((m, h)) = grown else { continue };
        let summary = summarize(&eigensystem(&m).unwrap().values, DEFAULT_GAP);
        if summary.ordered_mult != want_mults {
            continue;
        }
        let mut want = want_edges.to_vec();
        want.sort_unstable();
        assert_eq!(sorted_edges(&h), want, "{key}: grown graph disagrees with the pinned one");
        return freeze(key, &h, &m, want_mults.len() as u32);
    }
    panic!("{key}: no seed in 1..=40 produced the wanted multiplicities");
}

fn near_path(label: &str, fam: Family, params: &[usize]) -> Value {
    let g = make_family(fam, params).unwrap();
    let q = (g.n() - 1) as u32;
    for seed in 1..=40u64 {
        match doubled_eigenvalue_witness(&g, seed) {
            Ok(m) => {
                let summary = summarize(&eigensystem(&m).unwrap().values, DEFAULT_GAP);
                if summary.q == q as usize {
                    return freeze(label, &g, &m, q);
                }
            }
            Err(_) => continue,
        }
    }
    panic!("{label}: no doubled-eigenvalue witness found");
}

fn main() {
    let path = data_path();
    let text = std::fs::read_to_string(&path).expect("read data file");
    let mut doc: Value = serde_json::from_str(&text).expect("parse data file");

    let mut frozen: Vec<Value> = Vec::new();

    // vertex augmentations onto the pinned six-vertex patterns
    let banner = banner_matrix();
    let banner_g = Graph::new(5, &ident_edges(&doc, "G37")).unwrap();
    let mut g125 = ident_edges(&doc, "G125");
    frozen.push(grow("aug-G125", &banner, &banner_g, 1, &[2, 3], &[2, 2, 2], &g125));

    let c5 = make_family(Family::Cycle, &[5]).unwrap();
    let hat5 = signed_cycle_matrix(5);
    let g129 = ident_edges(&doc, "G129");
    frozen.push(grow("aug-G129", &hat5, &c5, 0, &[1, 3], &[2, 2, 2], &g129));

    let g48 = g48_matrix();
    let g48_g = Graph::new(5, &ident_edges(&doc, "G48")).unwrap();
    g125 = ident_edges(&doc, "G190");
    frozen.push(grow("aug-G190", &g48, &g48_g, 1, &[1, 2, 3], &[3, 3], &g125));

    // near-path templates: one doubled eigenvalue, all others simple
    for (label, fam, params) in [
        ("near-path-star-1-1", Family::GenStar, &[1usize, 1][..]),
        ("near-path-star-1-2", Family::GenStar, &[1, 2]),
        ("near-path-star-1-3", Family::GenStar, &[1, 3]),
        ("near-path-star-2-2", Family::GenStar, &[2, 2]),
        ("near-path-bull-0-1", Family::GenBull, &[0, 1]),
        ("near-path-bull-1-1", Family::GenBull, &[1, 1]),
        ("near-path-bull-0-2", Family::GenBull, &[0, 2]),
        ("near-path-bull-0-3", Family::GenBull, &[0, 3]),
        ("near-path-bull-1-2", Family::GenBull, &[1, 2]),
    ] {
        frozen.push(near_path(label, fam, params));
    }

    // balanced two-eigenvalue witnesses on complete graphs minus an edge
    for n in 4..=6usize {
        let cr = kn_minus_e_witness(n).unwrap();
        frozen.push(freeze(&format!("complete-minus-edge-{n}"), &cr.graph, &cr.matrix, 2));
    }

    doc["frozen_witnesses"] = Value::Array(frozen);
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).expect("write data file");
    println!("wrote {path}");
}
