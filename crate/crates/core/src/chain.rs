//! Paths of F-related projections, their restrictions, and chains as
//! adjacent-duplicate-free normal forms.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::biordered::{check_biordered_congruence, quotient_category, BiorderedCategory, CategoryParts};
use crate::error::{DrcError, Result};
use crate::projection_algebra::ProjectionAlgebra;
use crate::report::AxiomReport;
use crate::unionfind::UnionFind;

/// Nonempty sequence `p_1 F p_2 F ⋯ F p_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(pa: &ProjectionAlgebra, entries: Vec<usize>) -> Result<Path> {
        if entries.is_empty() {
            return Err(DrcError::Malformed("empty path".into()));
        }
        if let Some(&x) = entries.iter().find(|&&x| x >= pa.n()) {
            return Err(DrcError::Malformed(format!("path entry {x} out of range")));
        }
        if let Some(i) = entries.windows(2).position(|w| !pa.f_related(w[0], w[1])) {
            return Err(DrcError::Malformed(format!(
                "path entries {} and {} are not F-related",
                entries[i],
                entries[i + 1]
            )));
        }
        Ok(Path(entries))
    }

    pub fn single(p: usize) -> Path {
        Path(vec![p])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn d(&self) -> usize {
        self.0[0]
    }
    pub fn r(&self) -> usize {
        self.0[self.0.len() - 1]
    }
    pub fn is_valid(&self, pa: &ProjectionAlgebra) -> bool {
        self.0.windows(2).all(|w| pa.f_related(w[0], w[1]))
    }
}

/// A path with no two adjacent equal entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chain(Path);

impl Chain {
    pub fn path(&self) -> &Path {
        &self.0
    }
    pub fn entries(&self) -> &[usize] {
        self.0.entries()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn d(&self) -> usize {
        self.0.d()
    }
    pub fn r(&self) -> usize {
        self.0.r()
    }
}

/// Concatenation sharing the junction entry.
pub fn compose_paths(a: &Path, b: &Path) -> Result<Path> {
    if a.r() != b.d() {
        return Err(DrcError::JunctionMismatch { left: a.r(), right: b.d() });
    }
    let mut v = a.0.clone();
    v.extend_from_slice(&b.0[1..]);
    Ok(Path(v))
}

/// `q⌐(p_1,…,p_k) = (q_1,…,q_k)` with `q_i = q θ_{p_1} ⋯ θ_{p_i}`.
pub fn left_restrict_path(pa: &ProjectionAlgebra, q: usize, a: &Path) -> Result<Path> {
    if q >= pa.n() || !pa.leq(q, a.d()) {
        return Err(DrcError::Undefined(format!("{q} is not below d = {}", a.d())));
    }
    let mut x = q;
    let v = a.0.iter().map(|&p| {
        x = pa.th(p, x);
        x
    });
    Ok(Path(v.collect()))
}

/// `(p_1,…,p_k)⌐r = (r_1,…,r_k)` with `r_i = r δ_{p_k} ⋯ δ_{p_i}`.
pub fn right_restrict_path(pa: &ProjectionAlgebra, a: &Path, r: usize) -> Result<Path> {
    if r >= pa.n() || !pa.leq(r, a.r()) {
        return Err(DrcError::Undefined(format!("{r} is not below r = {}", a.r())));
    }
    let mut x = r;
    let mut v: Vec<usize> = a
        .0
        .iter()
        .rev()
        .map(|&p| {
            x = pa.de(p, x);
            x
        })
        .collect();
    v.reverse();
    Ok(Path(v))
}

/// Deletes adjacent duplicates.
pub fn normalize_chain(a: &Path) -> Chain {
    let mut v = a.0.clone();
    v.dedup();
    Chain(Path(v))
}

pub fn chain_compose(c: &Chain, d: &Chain) -> Result<Chain> {
    compose_paths(&c.0, &d.0).map(|p| normalize_chain(&p))
}

pub fn chain_restrict_left(pa: &ProjectionAlgebra, q: usize, c: &Chain) -> Result<Chain> {
    left_restrict_path(pa, q, &c.0).map(|p| normalize_chain(&p))
}

pub fn chain_restrict_right(pa: &ProjectionAlgebra, c: &Chain, r: usize) -> Result<Chain> {
    right_restrict_path(pa, &c.0, r).map(|p| normalize_chain(&p))
}

/// Paths in order of increasing length, lexicographic within a length.
pub struct PathIter<'a> {
    pa: &'a ProjectionAlgebra,
    max_len: usize,
    level: Vec<Vec<usize>>,
    next_level: Vec<Vec<usize>>,
    pos: usize,
}

impl<'a> PathIter<'a> {
    pub fn new(pa: &'a ProjectionAlgebra, max_len: usize) -> Self {
        let level = if max_len == 0 { Vec::new() } else { (0..pa.n()).map(|p| vec![p]).collect() };
        PathIter { pa, max_len, level, next_level: Vec::new(), pos: 0 }
    }
}

impl Iterator for PathIter<'_> {
    type Item = Path;
    fn next(&mut self) -> Option<Path> {
        loop {
            if self.pos < self.level.len() {
                let v = self.level[self.pos].clone();
                self.pos += 1;
                if v.len() < self.max_len {
                    let last = v[v.len() - 1];
                    for q in 0..self.pa.n() {
                        if self.pa.f_related(last, q) {
                            let mut w = v.clone();
                            w.push(q);
                            self.next_level.push(w);
                        }
                    }
                }
                return Some(Path(v));
            }
            if self.next_level.is_empty() {
                return None;
            }
            self.level = std::mem::take(&mut self.next_level);
            self.pos = 0;
        }
    }
}

pub fn enumerate_paths(pa: &ProjectionAlgebra, max_len: usize) -> Vec<Path> {
    PathIter::new(pa, max_len).collect()
}

/// Truncated category whose morphisms are stored as sequences.
fn sequence_category(
    pa: &ProjectionAlgebra,
    items: &[Vec<usize>],
    bound: usize,
    normalize: bool,
) -> Result<BiorderedCategory> {
    let index: HashMap<&[usize], usize> = items.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let n = pa.n();
    let fix = |mut v: Vec<usize>| {
        if normalize {
            v.dedup();
        }
        v
    };
    let mut parts = CategoryParts {
        m: items.len(),
        objects: (0..n).collect(),
        dom: items.iter().map(|v| v[0]).collect(),
        cod: items.iter().map(|v| v[v.len() - 1]).collect(),
        bound: Some(bound),
        ..Default::default()
    };
    for p in 0..n {
        for q in 0..n {
            if pa.leq(p, q) {
                parts.obj_leq.push([p, q]);
            }
        }
    }
    let mut by_start: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, v) in items.iter().enumerate() {
        by_start.entry(v[0]).or_default().push(i);
    }
    for (i, a) in items.iter().enumerate() {
        let path = Path(a.clone());
        for &j in by_start.get(&path.r()).map(Vec::as_slice).unwrap_or(&[]) {
            let joined = fix(compose_paths(&path, &Path(items[j].clone()))?.0);
            if let Some(&k) = index.get(joined.as_slice()) {
                parts.comp.push([i, j, k]);
            }
        }
        for q in 0..n {
            if pa.leq(q, path.d()) {
                let u = fix(left_restrict_path(pa, q, &path)?.0);
                let k = *index.get(u.as_slice()).ok_or_else(|| DrcError::Malformed("restriction left the truncation".into()))?;
                parts.lres.push([q, i, k]);
            }
            if pa.leq(q, path.r()) {
                let u = fix(right_restrict_path(pa, &path, q)?.0);
                let k = *index.get(u.as_slice()).ok_or_else(|| DrcError::Malformed("restriction left the truncation".into()))?;
                parts.rres.push([i, q, k]);
            }
        }
    }
    BiorderedCategory::from_parts(parts)
}

/// Paths of length at most `max_len`; object `p` is the path `(p)` at index `p`.
pub fn path_category(pa: &ProjectionAlgebra, max_len: usize) -> Result<(BiorderedCategory, Vec<Path>)> {
    let paths = enumerate_paths(pa, max_len.max(1));
    let items: Vec<Vec<usize>> = paths.iter().map(|p| p.0.clone()).collect();
    Ok((sequence_category(pa, &items, max_len.max(1), false)?, paths))
}

/// Chains whose normal form has length at most `max_len`, in path enumeration order.
pub fn chain_category(pa: &ProjectionAlgebra, max_len: usize) -> Result<(BiorderedCategory, Vec<Chain>)> {
    let chains: Vec<Chain> = PathIter::new(pa, max_len.max(1))
        .filter(|p| p.0.windows(2).all(|w| w[0] != w[1]))
        .map(Chain)
        .collect();
    let items: Vec<Vec<usize>> = chains.iter().map(|c| c.0 .0.clone()).collect();
    Ok((sequence_category(pa, &items, max_len.max(1), true)?, chains))
}

/// Classes of the congruence generated by `(p,p) ≈ p` on paths of length at
/// most `max_len`, by union-find over single insertions and deletions.
/// Independent of [`normalize_chain`].
pub fn approx_closure_labels(pa: &ProjectionAlgebra, max_len: usize) -> (Vec<Path>, Vec<usize>) {
    let paths = enumerate_paths(pa, max_len);
    let index: HashMap<&[usize], usize> = paths.iter().enumerate().map(|(i, p)| (p.entries(), i)).collect();
    let mut uf = UnionFind::new(paths.len());
    for (i, p) in paths.iter().enumerate() {
        let e = p.entries();
        for k in 0..e.len() {
            // u·(x,x)·v ≈ u·(x)·v, read as inserting a duplicate at position k.
            let mut longer = e.to_vec();
            longer.insert(k, e[k]);
            if let Some(&j) = index.get(longer.as_slice()) {
                uf.union(i, j);
            }
        }
    }
    let labels = uf.labels();
    (paths, labels)
}

/// Certifies that normal forms classify `≈`, that `≈` is a biordered
/// congruence on the truncated path category, and that the quotient is the
/// truncated chain category.
pub fn certify_normal_forms(pa: &ProjectionAlgebra, max_len: usize) -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("chain normal forms").with_bound(max_len);
    let (paths, labels) = approx_closure_labels(pa, max_len);
    let normals: Vec<Chain> = paths.iter().map(normalize_chain).collect();
    let mut agree = None;
    'outer: for i in 0..paths.len() {
        for j in 0..paths.len() {
            if (labels[i] == labels[j]) != (normals[i] == normals[j]) {
                agree = Some(vec![i, j]);
                break 'outer;
            }
        }
    }
    rep.record("normal forms classify the closure", agree);

    // Overlapping redexes are runs x,x,x; deleting either duplicate gives the same path.
    let mut confluent = None;
    for (i, p) in paths.iter().enumerate() {
        let e = p.entries();
        for k in 0..e.len().saturating_sub(2) {
            if e[k] == e[k + 1] && e[k + 1] == e[k + 2] {
                let mut a = e.to_vec();
                a.remove(k);
                let mut b = e.to_vec();
                b.remove(k + 1);
                if a != b {
                    confluent = Some(vec![i, k]);
                }
            }
        }
    }
    rep.record("local confluence on overlapping redexes", confluent);
    rep.record(
        "normal forms have no adjacent duplicates",
        normals.iter().position(|c| c.entries().windows(2).any(|w| w[0] == w[1])).map(|i| vec![i]),
    );

    let (cat, _) = path_category(pa, max_len)?;
    let partition: Vec<usize> = {
        let mut ids: HashMap<&Chain, usize> = HashMap::new();
        normals
            .iter()
            .map(|c| {
                let k = ids.len();
                *ids.entry(c).or_insert(k)
            })
            .collect()
    };
    let congruence = check_biordered_congruence(&cat, &partition);
    rep.record_note(
        "≈ is a biordered congruence on the truncated path category",
        congruence.is_ok(),
        congruence.as_ref().err().map_or_else(|| "verified".to_string(), |e| e.to_string()),
    );
    if congruence.is_ok() {
        let q = quotient_category(&cat, &partition)?;
        let (chains, _) = chain_category(pa, max_len)?;
        rep.record("quotient equals the truncated chain category", if q == chains { None } else { Some(vec![]) });
        let qb = crate::biordered::check_biordered(&q);
        rep.record("quotient is biordered", qb.first_failure().map(|c| c.witness.clone().unwrap_or_default()));
    }

    let mut independent = None;
    'rep: for i in 0..paths.len() {
        for j in 0..paths.len() {
            if normals[i] != normals[j] || i == j {
                continue;
            }
            let (a, b) = (&paths[i], &paths[j]);
            for q in 0..pa.n() {
                if pa.leq(q, a.d())
                    && normalize_chain(&left_restrict_path(pa, q, a)?) != normalize_chain(&left_restrict_path(pa, q, b)?)
                {
                    independent = Some(vec![i, j, q]);
                    break 'rep;
                }
                if pa.leq(q, a.r())
                    && normalize_chain(&right_restrict_path(pa, a, q)?) != normalize_chain(&right_restrict_path(pa, b, q)?)
                {
                    independent = Some(vec![i, j, q]);
                    break 'rep;
                }
            }
        }
    }
    rep.record("restrictions are representative-independent", independent);
    Ok(rep)
}

/// Path-level restriction lemmas on every path of length at most `max_len`.
pub fn check_path_restrictions(pa: &ProjectionAlgebra, max_len: usize) -> Result<AxiomReport> {
    let mut rep = AxiomReport::new("path restrictions").with_bound(max_len);
    let paths = enumerate_paths(pa, max_len);
    let mut valid = None;
    let mut full = None;
    let mut nested = None;
    let mut o4 = None;
    for (i, a) in paths.iter().enumerate() {
        if left_restrict_path(pa, a.d(), a)? != *a || right_restrict_path(pa, a, a.r())? != *a {
            full.get_or_insert(vec![i]);
        }
        for q in (0..pa.n()).filter(|&q| pa.leq(q, a.d())) {
            let u = left_restrict_path(pa, q, a)?;
            if !u.is_valid(pa) || u.d() != q || !pa.leq(u.r(), a.r()) {
                valid.get_or_insert(vec![i, q]);
            }
            for r in (0..pa.n()).filter(|&r| pa.leq(r, q)) {
                if left_restrict_path(pa, r, &u)? != left_restrict_path(pa, r, a)? {
                    nested.get_or_insert(vec![i, q, r]);
                }
            }
        }
        for q in (0..pa.n()).filter(|&q| pa.leq(q, a.r())) {
            let u = right_restrict_path(pa, a, q)?;
            if !u.is_valid(pa) || u.r() != q || !pa.leq(u.d(), a.d()) {
                valid.get_or_insert(vec![i, q]);
            }
        }
        for (j, b) in paths.iter().enumerate() {
            if a.r() != b.d() || a.len() + b.len() - 1 > max_len {
                continue;
            }
            let ab = compose_paths(a, b)?;
            for r in (0..pa.n()).filter(|&r| pa.leq(r, a.d())) {
                let u = left_restrict_path(pa, r, a)?;
                let rhs = compose_paths(&u, &left_restrict_path(pa, u.r(), b)?)?;
                if left_restrict_path(pa, r, &ab)? != rhs {
                    o4.get_or_insert(vec![i, j, r]);
                }
            }
        }
    }
    rep.record("restrictions are paths with the stated ends", valid);
    rep.record("restriction to the end is the identity", full);
    rep.record("nested restrictions collapse", nested);
    rep.record("restriction distributes over composition", o4);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn composition_and_mismatch() {
        let pa = corpus::constant_pa(2);
        let pq = Path::new(&pa, vec![0, 1]).unwrap();
        let qp = Path::new(&pa, vec![1, 0]).unwrap();
        assert_eq!(compose_paths(&pq, &qp).unwrap().entries(), &[0, 1, 0]);
        assert!(matches!(compose_paths(&pq, &pq), Err(DrcError::JunctionMismatch { .. })));
        let p = Path::single(0);
        assert_eq!(compose_paths(&p, &p).unwrap(), p);
    }

    #[test]
    fn semilattice_rejects_non_f_paths() {
        let pa = corpus::semilattice_pa(2);
        assert!(Path::new(&pa, vec![0, 1]).is_err());
        assert!(Path::new(&pa, vec![]).is_err());
    }

    #[test]
    fn constant_algebra_restrictions_are_fixed() {
        let pa = corpus::constant_pa(2);
        let a = Path::new(&pa, vec![0, 1]).unwrap();
        assert_eq!(left_restrict_path(&pa, 0, &a).unwrap(), a);
        assert_eq!(right_restrict_path(&pa, &a, 1).unwrap(), a);
        assert!(left_restrict_path(&pa, 1, &a).is_err());
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normalize_chain(&Path(vec![0, 0, 0])).entries(), &[0]);
        assert_eq!(normalize_chain(&Path(vec![0, 1, 1, 0])).entries(), &[0, 1, 0]);
    }

    #[test]
    fn constant_algebra_certification_at_length_five() {
        let rep = certify_normal_forms(&corpus::constant_pa(2), 5).unwrap();
        assert!(rep.all_passed(), "{rep}");
        assert!(check_path_restrictions(&corpus::constant_pa(2), 4).unwrap().all_passed());
    }

    #[test]
    fn path_iteration_counts() {
        // F is full in the constant algebra: 2 + 4 + 8 paths.
        assert_eq!(enumerate_paths(&corpus::constant_pa(2), 3).len(), 14);
        assert_eq!(enumerate_paths(&corpus::semilattice_pa(3), 4).len(), 12);
    }
}
