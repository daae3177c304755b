//! Small named structures used by the tests, the CLI and the bundled files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cpc::ChainedProjectionCategory;
use crate::error::{DrcError, Result};
use crate::free::mp_of;
use crate::functors::c_of;
use crate::io;
use crate::projection_algebra::ProjectionAlgebra;
use crate::semigroup::{projection_algebra_of, FiniteSemigroup};

/// `{0 < 1 < ⋯ < k-1}` under `min`; every element is a projection.
pub fn chain_semilattice(k: usize) -> FiniteSemigroup {
    let mul = (0..k).map(|a| (0..k).map(|b| a.min(b)).collect()).collect();
    let id: Vec<usize> = (0..k).collect();
    FiniteSemigroup::new(mul, id.clone(), id).expect("valid chain")
}

/// Square rectangular band on `n × n` with `(i,j)` at `i*n + j`,
/// `D(i,j) = (i,i)` and `R(i,j) = (j,j)`.
pub fn rectangular_band(m: usize, n: usize) -> FiniteSemigroup {
    assert_eq!(m, n, "the D/R structure needs a square band");
    let size = n * n;
    let mul = (0..size)
        .map(|x| (0..size).map(|y| (x / n) * n + y % n).collect())
        .collect();
    let d = (0..size).map(|x| (x / n) * n + x / n).collect();
    let r = (0..size).map(|x| (x % n) * n + x % n).collect();
    FiniteSemigroup::new(mul, d, r).expect("valid band")
}

/// Brandt semigroup `B₂`: `0` is zero, then `e11, e12, e21, e22`.
pub fn brandt_b2() -> FiniteSemigroup {
    let units = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let idx = |i: usize, j: usize| 1 + units.iter().position(|&u| u == (i, j)).unwrap();
    let mut mul = vec![vec![0; 5]; 5];
    for (x, &(i, j)) in units.iter().enumerate() {
        for (y, &(k, l)) in units.iter().enumerate() {
            if j == k {
                mul[x + 1][y + 1] = idx(i, l);
            }
        }
    }
    let mut d = vec![0; 5];
    let mut r = vec![0; 5];
    for (x, &(i, j)) in units.iter().enumerate() {
        d[x + 1] = idx(i, i);
        r[x + 1] = idx(j, j);
    }
    FiniteSemigroup::new(mul, d, r).expect("valid B2")
}

pub fn trivial_monoid() -> FiniteSemigroup {
    FiniteSemigroup::new(vec![vec![0]], vec![0], vec![0]).expect("valid")
}

/// Cyclic group of order `k` with `D = R = identity element`.
pub fn cyclic_group(k: usize) -> FiniteSemigroup {
    let mul = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
    FiniteSemigroup::new(mul, vec![0; k], vec![0; k]).expect("valid group")
}

/// Two-element chain times `C_k`; its maximum projection-separating
/// congruence collapses each group factor.
pub fn semilattice_times_cyclic(k: usize) -> FiniteSemigroup {
    chain_semilattice(2).direct_product(&cyclic_group(k))
}

/// Chain `0 < ⋯ < k-1` with `qθ_p = qδ_p = min(p, q)`.
pub fn semilattice_pa(k: usize) -> ProjectionAlgebra {
    let t = (0..k).map(|p| (0..k).map(|q| p.min(q)).collect()).collect();
    ProjectionAlgebra::symmetric(t).expect("valid")
}

/// `qθ_p = qδ_p = p` for all `p, q`.
pub fn constant_pa(n: usize) -> ProjectionAlgebra {
    let t = (0..n).map(|p| vec![p; n]).collect();
    ProjectionAlgebra::symmetric(t).expect("valid")
}

/// Four-element lattice: bottom `0`, atoms `1` and `2`, top `3`, with meets.
pub fn diamond_pa() -> ProjectionAlgebra {
    let meet = |a: usize, b: usize| -> usize {
        if a == b {
            a
        } else if a == 3 {
            b
        } else if b == 3 {
            a
        } else {
            0
        }
    };
    let t = (0..4).map(|p| (0..4).map(|q| meet(p, q)).collect()).collect();
    ProjectionAlgebra::symmetric(t).expect("valid")
}

/// Version of the bundled corpus layout and contents.
pub const CORPUS_VERSION: u32 = 1;

/// A projection algebra morphism `φ: P → P(S)` between two named entries;
/// `map[p]` is the element of `S` that `p` goes to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismBundle {
    pub pa: String,
    pub semigroup: String,
    pub map: Vec<usize>,
}

/// A table pair produced by the model finder, kept in the projection
/// algebra layout; it need not satisfy P1–P5.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchModel {
    pub satisfy: Vec<String>,
    pub violate: String,
    pub table: ProjectionAlgebra,
}

#[derive(Debug, Clone)]
pub enum Structure {
    Semigroup(FiniteSemigroup),
    Pa(ProjectionAlgebra),
    Cpc(Box<ChainedProjectionCategory>),
    Morphism(MorphismBundle),
    Model(SearchModel),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Semigroup(_) => "semigroup",
            Structure::Pa(_) => "pa",
            Structure::Cpc(_) => "cpc",
            Structure::Morphism(_) => "morphism",
            Structure::Model(_) => "model",
        }
    }

    pub fn semigroup(&self) -> Option<&FiniteSemigroup> {
        match self {
            Structure::Semigroup(s) => Some(s),
            _ => None,
        }
    }

    pub fn to_canonical(&self) -> Result<String> {
        match self {
            Structure::Semigroup(s) => io::to_canonical_json(s),
            Structure::Pa(p) => io::to_canonical_json(p),
            Structure::Cpc(c) => io::to_canonical_json(c.as_ref()),
            Structure::Morphism(m) => io::to_canonical_json(m),
            Structure::Model(m) => io::to_canonical_json(m),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub description: String,
    pub structure: Structure,
}

impl Entry {
    pub fn file_name(&self) -> String {
        format!("{}.json", self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexLine {
    pub name: String,
    pub kind: String,
    pub file: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusIndex {
    pub version: u32,
    pub entries: Vec<IndexLine>,
}

/// Symmetric three-element algebra satisfying P1–P5 and violating the
/// fourth Imaoka axiom, found by the model finder.
pub fn imaoka_witness_pa() -> ProjectionAlgebra {
    ProjectionAlgebra::symmetric(vec![vec![0, 0, 0], vec![0, 1, 1], vec![2, 2, 2]]).expect("valid")
}

/// Smallest model of LP1–LP3 violating LP4; only `δ` is referenced.
pub fn lp4_model() -> SearchModel {
    let delta = vec![vec![0, 0, 0], vec![1, 1, 0], vec![2, 2, 2]];
    let theta = (0..3).map(|p| vec![p; 3]).collect();
    SearchModel {
        satisfy: vec!["LP1".into(), "LP2".into(), "LP3".into()],
        violate: "LP4".into(),
        table: ProjectionAlgebra::new(theta, delta).expect("valid tables"),
    }
}

pub fn imaoka_model() -> SearchModel {
    let mut satisfy: Vec<String> = (1..=5).map(|i| format!("P{i}")).collect();
    satisfy.push("symmetry".into());
    SearchModel { satisfy, violate: "P4'".into(), table: imaoka_witness_pa() }
}

fn entry(name: &str, description: &str, structure: Structure) -> Entry {
    Entry { name: name.into(), description: description.into(), structure }
}

fn morphism(pa: &str, semigroup: &str, map: &[usize]) -> Structure {
    Structure::Morphism(MorphismBundle { pa: pa.into(), semigroup: semigroup.into(), map: map.to_vec() })
}

/// Named semigroups, in registry order.
pub fn semigroups() -> Vec<(&'static str, &'static str, FiniteSemigroup)> {
    let mp = |pa: ProjectionAlgebra| mp_of(&pa).expect("small model").semigroup;
    vec![
        ("trivial", "one-element monoid", trivial_monoid()),
        ("chain2", "two-element chain semilattice", chain_semilattice(2)),
        ("chain3", "three-element chain semilattice", chain_semilattice(3)),
        ("rb2", "2×2 rectangular band", rectangular_band(2, 2)),
        ("b2", "Brandt semigroup B2", brandt_b2()),
        ("c3", "cyclic group of order 3", cyclic_group(3)),
        ("sxc3", "two-chain times C3, collapsed by its projection-separating congruence", semilattice_times_cyclic(3)),
        ("mp_const2", "fundamental model of the constant two-element algebra", mp(constant_pa(2))),
        ("mp_chain2", "fundamental model of the two-chain", mp(semilattice_pa(2))),
        ("mp_diamond", "fundamental model of the four-element lattice", mp(diamond_pa())),
        ("mp_imaoka", "fundamental model of the Imaoka witness algebra", mp(imaoka_witness_pa())),
    ]
}

/// Named projection algebras, in registry order.
pub fn projection_algebras() -> Vec<(&'static str, &'static str, ProjectionAlgebra)> {
    let b2 = projection_algebra_of(&brandt_b2()).expect("B2 has projections");
    vec![
        ("chain2_pa", "two-chain", semilattice_pa(2)),
        ("chain3_pa", "three-chain", semilattice_pa(3)),
        ("const2", "constant two-element algebra", constant_pa(2)),
        ("diamond", "four-element lattice", diamond_pa()),
        ("b2_pa", "projections of B2", b2),
        ("imaoka_pa", "symmetric algebra violating the fourth Imaoka axiom", imaoka_witness_pa()),
    ]
}

/// Bundled `φ: P → P(S)`.
pub fn morphisms() -> Vec<(&'static str, MorphismBundle)> {
    let list: [(&str, &str, &str, &[usize]); 9] = [
        ("phi_const2_rb2", "const2", "rb2", &[0, 3]),
        ("phi_chain2_chain3", "chain2_pa", "chain3", &[0, 1]),
        ("phi_chain2_chain3_top", "chain2_pa", "chain3", &[1, 2]),
        ("phi_chain2_chain2", "chain2_pa", "chain2", &[0, 1]),
        ("phi_chain2_sxc3", "chain2_pa", "sxc3", &[0, 3]),
        ("phi_b2_b2", "b2_pa", "b2", &[0, 1, 4]),
        ("phi_const2_mp", "const2", "mp_const2", &[0, 1]),
        ("phi_diamond_mp", "diamond", "mp_diamond", &[0, 1, 2, 3]),
        ("phi_imaoka_mp", "imaoka_pa", "mp_imaoka", &[0, 1, 2]),
    ];
    list.iter()
        .map(|&(name, pa, s, map)| (name, MorphismBundle { pa: pa.into(), semigroup: s.into(), map: map.to_vec() }))
        .collect()
}

/// Every bundled structure under its stable name.
pub fn registry() -> Vec<Entry> {
    let mut out = Vec::new();
    let sgs = semigroups();
    for (name, desc, s) in &sgs {
        out.push(entry(name, desc, Structure::Semigroup(s.clone())));
    }
    for (name, desc, p) in projection_algebras() {
        out.push(entry(name, desc, Structure::Pa(p)));
    }
    for (name, _, s) in &sgs {
        let c = c_of(s).expect("corpus semigroups are DRC");
        out.push(entry(&format!("cpc_{name}"), &format!("category built from {name}"), Structure::Cpc(Box::new(c))));
    }
    for (name, m) in morphisms() {
        let desc = format!("{} into the projections of {}", m.pa, m.semigroup);
        out.push(entry(name, &desc, morphism(&m.pa, &m.semigroup, &m.map)));
    }
    out.push(entry("model_lp4", "LP1–LP3 model violating LP4", Structure::Model(lp4_model())));
    out.push(entry("model_imaoka", "P1–P5 symmetric model violating P4'", Structure::Model(imaoka_model())));
    out
}

pub fn get(name: &str) -> Option<Entry> {
    registry().into_iter().find(|e| e.name == name)
}

pub fn index() -> CorpusIndex {
    CorpusIndex {
        version: CORPUS_VERSION,
        entries: registry()
            .iter()
            .map(|e| IndexLine {
                name: e.name.clone(),
                kind: e.structure.kind().into(),
                file: e.file_name(),
                description: e.description.clone(),
            })
            .collect(),
    }
}

/// Writes every entry and `index.json` into `dir`.
pub fn write_corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| DrcError::Malformed(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for e in registry() {
        let path = dir.join(e.file_name());
        io::write_text(&path, &e.structure.to_canonical()?)?;
        written.push(path);
    }
    let path = dir.join("index.json");
    io::write_text(&path, &io::to_canonical_json(&index())?)?;
    written.push(path);
    Ok(written)
}
