//! Finite (2,1,1)-algebras `(S, ·, D, R)` and their congruences.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{DrcError, Result};
use crate::projection_algebra::ProjectionAlgebra;
use crate::report::{first1, first2, first3, AxiomReport};
use crate::unionfind::UnionFind;

/// Largest carrier for which [`enumerate_congruences`] will run.
pub const CONGRUENCE_ENUMERATION_CAP: usize = 12;

/// Multiplication table with the two unary operations, elements `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SemigroupFile", into = "SemigroupFile")]
pub struct FiniteSemigroup {
    n: usize,
    mul: Vec<Vec<usize>>,
    d_op: Vec<usize>,
    r_op: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SemigroupFile {
    n: usize,
    mul: Vec<Vec<usize>>,
    #[serde(rename = "D")]
    d: Vec<usize>,
    #[serde(rename = "R")]
    r: Vec<usize>,
}

impl TryFrom<SemigroupFile> for FiniteSemigroup {
    type Error = DrcError;
    fn try_from(f: SemigroupFile) -> Result<Self> {
        if f.mul.len() != f.n {
            return Err(DrcError::Malformed(format!("mul has {} rows, n = {}", f.mul.len(), f.n)));
        }
        FiniteSemigroup::new(f.mul, f.d, f.r)
    }
}

impl From<FiniteSemigroup> for SemigroupFile {
    fn from(s: FiniteSemigroup) -> Self {
        SemigroupFile { n: s.n, mul: s.mul, d: s.d_op, r: s.r_op }
    }
}

impl FiniteSemigroup {
    /// Validates shape and index ranges only; the laws are left to the checkers.
    pub fn new(mul: Vec<Vec<usize>>, d_op: Vec<usize>, r_op: Vec<usize>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(DrcError::Malformed("empty carrier".into()));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(DrcError::Malformed(format!("mul row {a} has length {}", row.len())));
            }
            if let Some(b) = row.iter().position(|&x| x >= n) {
                return Err(DrcError::Malformed(format!("mul[{a}][{b}] = {} out of range", row[b])));
            }
        }
        for (name, t) in [("D", &d_op), ("R", &r_op)] {
            if t.len() != n {
                return Err(DrcError::Malformed(format!("{name} has length {}, n = {n}", t.len())));
            }
            if let Some(a) = t.iter().position(|&x| x >= n) {
                return Err(DrcError::Malformed(format!("{name}[{a}] = {} out of range", t[a])));
            }
        }
        Ok(FiniteSemigroup { n, mul, d_op, r_op })
    }

    /// Like [`FiniteSemigroup::new`] but also rejects non-associative tables.
    pub fn new_checked(mul: Vec<Vec<usize>>, d_op: Vec<usize>, r_op: Vec<usize>) -> Result<Self> {
        let s = Self::new(mul, d_op, r_op)?;
        s.verify_associative()?;
        Ok(s)
    }

    pub fn verify_associative(&self) -> Result<()> {
        match self.associativity_witness() {
            None => Ok(()),
            Some(witness) => Err(DrcError::AxiomFailure { name: "associativity".into(), witness }),
        }
    }

    fn associativity_witness(&self) -> Option<Vec<usize>> {
        first3(self.n, |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
    }

    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }
    #[inline]
    pub fn d(&self, a: usize) -> usize {
        self.d_op[a]
    }
    #[inline]
    pub fn r(&self, a: usize) -> usize {
        self.r_op[a]
    }
    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }
    pub fn d_table(&self) -> &[usize] {
        &self.d_op
    }
    pub fn r_table(&self) -> &[usize] {
        &self.r_op
    }

    /// Product of a nonempty sequence, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        let (&first, rest) = xs.split_first().expect("empty product");
        rest.iter().fold(first, |acc, &x| self.mul(acc, x))
    }

    pub fn is_projection(&self, x: usize) -> bool {
        self.mul(x, x) == x && self.d(x) == x && self.r(x) == x
    }

    /// Reverses multiplication and swaps `D` with `R`.
    pub fn opposite(&self) -> FiniteSemigroup {
        let mul = (0..self.n).map(|a| (0..self.n).map(|b| self.mul(b, a)).collect()).collect();
        FiniteSemigroup { n: self.n, mul, d_op: self.r_op.clone(), r_op: self.d_op.clone() }
    }

    /// Componentwise product, with `(a, b)` stored at `a * t.n + b`.
    pub fn direct_product(&self, t: &FiniteSemigroup) -> FiniteSemigroup {
        let m = t.n;
        let n = self.n * m;
        let pair = |x: usize| (x / m, x % m);
        let mul = (0..n)
            .map(|x| {
                let (a, b) = pair(x);
                (0..n)
                    .map(|y| {
                        let (c, d) = pair(y);
                        self.mul(a, c) * m + t.mul(b, d)
                    })
                    .collect()
            })
            .collect();
        let d_op = (0..n).map(|x| self.d(x / m) * m + t.d(x % m)).collect();
        let r_op = (0..n).map(|x| self.r(x / m) * m + t.r(x % m)).collect();
        FiniteSemigroup { n, mul, d_op, r_op }
    }

    /// Relabels elements so that `old` becomes `perm[old]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSemigroup {
        let n = self.n;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mul = (0..n)
            .map(|a| (0..n).map(|b| perm[self.mul(inv[a], inv[b])]).collect())
            .collect();
        let d_op = (0..n).map(|a| perm[self.d(inv[a])]).collect();
        let r_op = (0..n).map(|a| perm[self.r(inv[a])]).collect();
        FiniteSemigroup { n, mul, d_op, r_op }
    }

    /// Closure of `gens` under multiplication.
    pub fn generated_by(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if set.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        set
    }
}

/// Checks associativity, DRC1–DRC4 (both halves) and the derived DRC5.
pub fn check_drc_axioms(s: &FiniteSemigroup) -> AxiomReport {
    let n = s.n;
    let (d, r, m) = (|a| s.d(a), |a| s.r(a), |a, b| s.mul(a, b));
    let mut rep = AxiomReport::new("DRC axioms");
    rep.record("associativity", s.associativity_witness());
    rep.record("DRC1 D(a)a = a", first1(n, |a| m(d(a), a) == a));
    rep.record("DRC1 aR(a) = a", first1(n, |a| m(a, r(a)) == a));
    rep.record("DRC2 D(ab) = D(aD(b))", first2(n, |a, b| d(m(a, b)) == d(m(a, d(b)))));
    rep.record("DRC2 R(ab) = R(R(a)b)", first2(n, |a, b| r(m(a, b)) == r(m(r(a), b))));
    rep.record(
        "DRC3 D(ab) = D(a)D(ab)D(a)",
        first2(n, |a, b| d(m(a, b)) == m(m(d(a), d(m(a, b))), d(a))),
    );
    rep.record(
        "DRC3 R(ab) = R(b)R(ab)R(b)",
        first2(n, |a, b| r(m(a, b)) == m(m(r(b), r(m(a, b))), r(b))),
    );
    rep.record("DRC4 R(D(a)) = D(a)", first1(n, |a| r(d(a)) == d(a)));
    rep.record("DRC4 D(R(a)) = R(a)", first1(n, |a| d(r(a)) == r(a)));
    rep.record_derived("DRC5 D(D(a)) = D(a)", first1(n, |a| d(d(a)) == d(a)));
    rep.record_derived("DRC5 R(R(a)) = R(a)", first1(n, |a| r(r(a)) == r(a)));
    rep
}

/// Consequences that every DRC-semigroup satisfies: images of `D`/`R` are
/// projections, products along matching ends keep their ends, and the
/// projection order has its three descriptions.
pub fn check_drc_consequences(s: &FiniteSemigroup) -> AxiomReport {
    let n = s.n;
    let proj = projections(s);
    let mut rep = AxiomReport::new("DRC consequences");
    rep.record_derived("D(a) is a projection", first1(n, |a| s.is_projection(s.d(a))));
    rep.record_derived("R(a) is a projection", first1(n, |a| s.is_projection(s.r(a))));
    rep.record_derived(
        "R(a) = D(b) implies D(ab) = D(a), R(ab) = R(b)",
        first2(n, |a, b| {
            s.r(a) != s.d(b) || (s.d(s.mul(a, b)) == s.d(a) && s.r(s.mul(a, b)) == s.r(b))
        }),
    );
    let k = proj.len();
    rep.record_derived(
        "p = pq iff p = qp on projections",
        first2(k, |i, j| {
            let (p, q) = (proj[i], proj[j]);
            (s.mul(p, q) == p) == (s.mul(q, p) == p)
        }),
    );
    rep
}

/// Sorted list of `x` with `x² = x = D(x) = R(x)`.
pub fn projections(s: &FiniteSemigroup) -> Vec<usize> {
    (0..s.n).filter(|&x| s.is_projection(x)).collect()
}

/// Position of each element in [`projections`], if it is one.
fn projection_index(s: &FiniteSemigroup) -> (Vec<usize>, Vec<Option<usize>>) {
    let proj = projections(s);
    let mut pos = vec![None; s.n];
    for (i, &p) in proj.iter().enumerate() {
        pos[p] = Some(i);
    }
    (proj, pos)
}

fn require_drc(s: &FiniteSemigroup) -> Result<()> {
    let rep = check_drc_axioms(s);
    match rep.first_failure() {
        None => Ok(()),
        Some(c) => Err(DrcError::AxiomFailure {
            name: c.name.clone(),
            witness: c.witness.clone().unwrap_or_default(),
        }),
    }
}

/// Projection algebra on [`projections`]; index `i` is the `i`-th projection.
pub fn projection_algebra_of(s: &FiniteSemigroup) -> Result<ProjectionAlgebra> {
    require_drc(s)?;
    let (proj, pos) = projection_index(s);
    let at = |x: usize| pos[x].expect("D and R land in projections");
    let theta = proj
        .iter()
        .map(|&p| proj.iter().map(|&q| at(s.r(s.mul(q, p)))).collect())
        .collect();
    let delta = proj
        .iter()
        .map(|&p| proj.iter().map(|&q| at(s.d(s.mul(p, q)))).collect())
        .collect();
    ProjectionAlgebra::new(theta, delta)
}

/// `p ↦ R(pa)` on projection positions.
pub fn theta_cap_map(s: &FiniteSemigroup, a: usize) -> Result<Vec<usize>> {
    if a >= s.n {
        return Err(DrcError::Malformed(format!("element {a} out of range")));
    }
    let (proj, pos) = projection_index(s);
    proj.iter()
        .map(|&p| pos[s.r(s.mul(p, a))].ok_or_else(|| DrcError::Malformed("R does not land in projections".into())))
        .collect()
}

/// `p ↦ D(ap)` on projection positions.
pub fn delta_cap_map(s: &FiniteSemigroup, a: usize) -> Result<Vec<usize>> {
    if a >= s.n {
        return Err(DrcError::Malformed(format!("element {a} out of range")));
    }
    let (proj, pos) = projection_index(s);
    proj.iter()
        .map(|&p| pos[s.d(s.mul(a, p))].ok_or_else(|| DrcError::Malformed("D does not land in projections".into())))
        .collect()
}

/// Partition of the carrier; class ids are numbered by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Congruence {
    pub partition: Vec<usize>,
}

impl Congruence {
    /// Renumbers arbitrary labels by first occurrence.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Congruence {
        let mut ids: HashMap<&T, usize> = HashMap::new();
        let partition = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Congruence { partition }
    }

    pub fn identity(n: usize) -> Congruence {
        Congruence { partition: (0..n).collect() }
    }

    pub fn total(n: usize) -> Congruence {
        Congruence { partition: vec![0; n] }
    }

    pub fn class_count(&self) -> usize {
        self.partition.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.class_count() == self.partition.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.partition[a] == self.partition[b]
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image: Vec<Option<usize>> = vec![None; self.class_count()];
        self.partition.iter().zip(&other.partition).all(|(&c, &o)| match image[c] {
            None => {
                image[c] = Some(o);
                true
            }
            Some(x) => x == o,
        })
    }

    /// One representative per class, in class order.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.class_count()];
        for (x, &c) in self.partition.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }
}

/// Checks that the class of every result depends only on classes of arguments.
pub fn check_compatible(s: &FiniteSemigroup, c: &Congruence) -> Result<()> {
    let n = s.n;
    if c.partition.len() != n {
        return Err(DrcError::Malformed(format!("partition has length {}, n = {n}", c.partition.len())));
    }
    let reps = c.representatives();
    let rep_of = |x: usize| reps[c.partition[x]];
    let bad = |op: &str, witness: Vec<usize>| Err(DrcError::Incompatible { op: op.into(), witness });
    // Comparing against class representatives suffices: relatedness is transitive.
    for a in 0..n {
        let ra = rep_of(a);
        if !c.related(s.d(a), s.d(ra)) {
            return bad("D", vec![a, ra]);
        }
        if !c.related(s.r(a), s.r(ra)) {
            return bad("R", vec![a, ra]);
        }
    }
    if let Some(w) = first2(n, |a, b| c.related(s.mul(a, b), s.mul(rep_of(a), rep_of(b)))) {
        let (a, b) = (w[0], w[1]);
        return bad("multiplication", vec![a, b, rep_of(a), rep_of(b)]);
    }
    Ok(())
}

/// The congruence with `a ~ b` iff `Θ_a = Θ_b` and `Δ_a = Δ_b`.
pub fn mu_congruence(s: &FiniteSemigroup) -> Congruence {
    let keys: Vec<(Vec<usize>, Vec<usize>)> = (0..s.n)
        .map(|a| (theta_cap_map(s, a).expect("in range"), delta_cap_map(s, a).expect("in range")))
        .collect();
    Congruence::from_labels(&keys)
}

pub fn quotient(s: &FiniteSemigroup, c: &Congruence) -> Result<FiniteSemigroup> {
    check_compatible(s, c)?;
    let reps = c.representatives();
    let k = reps.len();
    let cls = |x: usize| c.partition[x];
    let mul = (0..k).map(|i| (0..k).map(|j| cls(s.mul(reps[i], reps[j]))).collect()).collect();
    let d_op = reps.iter().map(|&x| cls(s.d(x))).collect();
    let r_op = reps.iter().map(|&x| cls(s.r(x))).collect();
    FiniteSemigroup::new(mul, d_op, r_op)
}

pub fn is_fundamental(s: &FiniteSemigroup) -> bool {
    mu_congruence(s).is_identity()
}

/// No two distinct projections share a class.
pub fn is_projection_separating(s: &FiniteSemigroup, c: &Congruence) -> bool {
    let proj = projections(s);
    let classes: BTreeSet<usize> = proj.iter().map(|&p| c.partition[p]).collect();
    classes.len() == proj.len()
}

/// Smallest congruence containing the given pairs.
pub fn congruence_generated(s: &FiniteSemigroup, pairs: &[(usize, usize)]) -> Congruence {
    let mut uf = UnionFind::new(s.n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    close_under_operations(s, &mut uf, queue);
    Congruence::from_labels(&uf.labels())
}

/// Merges translates of every merged pair until nothing new is merged.
fn close_under_operations(s: &FiniteSemigroup, uf: &mut UnionFind, mut queue: Vec<(usize, usize)>) {
    while let Some((x, y)) = queue.pop() {
        let mut push = |u: usize, v: usize, uf: &mut UnionFind| {
            if uf.union(u, v) {
                queue.push((u, v));
            }
        };
        push(s.d(x), s.d(y), uf);
        push(s.r(x), s.r(y), uf);
        for z in 0..s.n {
            push(s.mul(x, z), s.mul(y, z), uf);
            push(s.mul(z, x), s.mul(z, y), uf);
        }
    }
}

fn join(s: &FiniteSemigroup, a: &Congruence, b: &Congruence) -> Congruence {
    let mut uf = UnionFind::new(s.n);
    let mut queue = Vec::new();
    for c in [a, b] {
        for (x, y) in c.representatives().into_iter().flat_map(|r| {
            (0..s.n).filter(move |&x| c.partition[x] == c.partition[r]).map(move |x| (r, x))
        }) {
            if uf.union(x, y) {
                queue.push((x, y));
            }
        }
    }
    close_under_operations(s, &mut uf, queue);
    Congruence::from_labels(&uf.labels())
}

/// Every congruence of `s`, as joins of principal ones. Refuses above
/// [`CONGRUENCE_ENUMERATION_CAP`] elements.
pub fn enumerate_congruences(s: &FiniteSemigroup) -> Result<Vec<Congruence>> {
    if s.n > CONGRUENCE_ENUMERATION_CAP {
        return Err(DrcError::TooLarge {
            what: "congruence enumeration".into(),
            size: s.n,
            cap: CONGRUENCE_ENUMERATION_CAP,
        });
    }
    let mut principal: BTreeSet<Congruence> = BTreeSet::new();
    for a in 0..s.n {
        for b in a + 1..s.n {
            principal.insert(congruence_generated(s, &[(a, b)]));
        }
    }
    let principal: Vec<Congruence> = principal.into_iter().collect();
    let mut all: BTreeSet<Congruence> = BTreeSet::new();
    all.insert(Congruence::identity(s.n));
    let mut frontier: Vec<Congruence> = all.iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        for p in &principal {
            let j = join(s, &c, p);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// Whether `map` preserves `·`, `D` and `R`.
pub fn is_drc_morphism(src: &FiniteSemigroup, dst: &FiniteSemigroup, map: &[usize]) -> bool {
    map.len() == src.n
        && map.iter().all(|&x| x < dst.n)
        && (0..src.n).all(|a| map[src.d(a)] == dst.d(map[a]) && map[src.r(a)] == dst.r(map[a]))
        && first2(src.n, |a, b| map[src.mul(a, b)] == dst.mul(map[a], map[b])).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn semilattice_passes_and_is_all_projections() {
        let s = corpus::chain_semilattice(2);
        assert!(check_drc_axioms(&s).all_passed());
        assert_eq!(projections(&s), vec![0, 1]);
        assert!(is_fundamental(&s));
    }

    #[test]
    fn rectangular_band_projections_are_diagonal() {
        let s = corpus::rectangular_band(2, 2);
        assert!(check_drc_axioms(&s).all_passed());
        let diag: Vec<usize> = projections(&s);
        assert_eq!(diag, vec![0, 3]);
        let pa = projection_algebra_of(&s).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                assert_eq!(pa.th(p, q), p);
                assert_eq!(pa.de(p, q), p);
            }
        }
    }

    #[test]
    fn swapped_d_r_breaks_drc1() {
        let s = corpus::rectangular_band(2, 2);
        let mut d = s.d_table().to_vec();
        let mut r = s.r_table().to_vec();
        std::mem::swap(&mut d[1], &mut r[1]);
        let bad = FiniteSemigroup::new(s.mul_table().to_vec(), d, r).unwrap();
        let rep = check_drc_axioms(&bad);
        assert!(!rep.passed("DRC1 D(a)a = a"));
        assert_eq!(rep.get("DRC1 D(a)a = a").unwrap().witness, Some(vec![1]));
    }

    #[test]
    fn out_of_range_is_malformed() {
        let e = FiniteSemigroup::new(vec![vec![0, 2], vec![1, 1]], vec![0, 1], vec![0, 1]);
        assert!(matches!(e, Err(DrcError::Malformed(_))));
        assert!(matches!(theta_cap_map(&corpus::trivial_monoid(), 3), Err(DrcError::Malformed(_))));
    }

    #[test]
    fn b2_has_three_projections_and_meet_operations() {
        let s = corpus::brandt_b2();
        assert_eq!(projections(&s).len(), 3);
        let pa = projection_algebra_of(&s).unwrap();
        let proj = projections(&s);
        for (i, &p) in proj.iter().enumerate() {
            for (j, &q) in proj.iter().enumerate() {
                let pqp = s.mul(s.mul(p, q), p);
                assert_eq!(proj[pa.th(i, j)], pqp);
                assert_eq!(proj[pa.de(i, j)], pqp);
            }
        }
    }

    #[test]
    fn cap_maps_of_projection_products_compose() {
        let s = corpus::brandt_b2();
        let pa = projection_algebra_of(&s).unwrap();
        let proj = projections(&s);
        for (i, &p1) in proj.iter().enumerate() {
            for (j, &p2) in proj.iter().enumerate() {
                let a = s.mul(p1, p2);
                let cap = theta_cap_map(&s, a).unwrap();
                let composed: Vec<usize> = (0..proj.len()).map(|t| pa.th(j, pa.th(i, t))).collect();
                assert_eq!(cap, composed);
            }
        }
    }

    #[test]
    fn mu_collapses_the_group_factor() {
        let s = corpus::semilattice_times_cyclic(3);
        let mu = mu_congruence(&s);
        assert_eq!(mu.class_count(), 2);
        assert!(check_compatible(&s, &mu).is_ok());
        let q = quotient(&s, &mu).unwrap();
        assert_eq!(q, corpus::chain_semilattice(2));
        assert!(is_fundamental(&q));
        assert!(!is_fundamental(&s));
    }

    #[test]
    fn mu_is_the_largest_projection_separating_congruence() {
        for s in [corpus::brandt_b2(), corpus::semilattice_times_cyclic(3), corpus::rectangular_band(2, 2)] {
            let mu = mu_congruence(&s);
            assert!(is_projection_separating(&s, &mu));
            let all = enumerate_congruences(&s).unwrap();
            assert!(all.contains(&mu));
            for c in all.iter().filter(|c| is_projection_separating(&s, c)) {
                assert!(c.refines(&mu));
            }
        }
    }

    #[test]
    fn quotient_edge_cases() {
        let s = corpus::brandt_b2();
        assert_eq!(quotient(&s, &Congruence::identity(s.n())).unwrap(), s);
        let one = quotient(&s, &Congruence::total(s.n())).unwrap();
        assert_eq!(one.n(), 1);
        let bad = Congruence::from_labels(&[0, 1, 0, 2, 3]);
        assert!(matches!(quotient(&s, &bad), Err(DrcError::Incompatible { .. })));
    }

    #[test]
    fn enumeration_refuses_large_inputs() {
        let s = corpus::chain_semilattice(13);
        assert!(matches!(enumerate_congruences(&s), Err(DrcError::TooLarge { .. })));
    }
}
