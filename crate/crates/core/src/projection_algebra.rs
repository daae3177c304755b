//! Projection algebras `(P, θ, δ)` given by two families of unary tables.
//!
//! Orientation: `theta[p][q]` is the image of `q` under `θ_p`. Maps act on
//! the right, so `t θ_p θ_q` is `th(q, th(p, t))`.

use serde::{Deserialize, Serialize};

use crate::error::{DrcError, Result};
use crate::report::{first1, first2, first3, AxiomReport};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PaFile", into = "PaFile")]
pub struct ProjectionAlgebra {
    n: usize,
    theta: Vec<Vec<usize>>,
    delta: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PaFile {
    n: usize,
    theta: Vec<Vec<usize>>,
    delta: Vec<Vec<usize>>,
}

impl TryFrom<PaFile> for ProjectionAlgebra {
    type Error = DrcError;
    fn try_from(f: PaFile) -> Result<Self> {
        if f.theta.len() != f.n {
            return Err(DrcError::Malformed(format!("theta has {} rows, n = {}", f.theta.len(), f.n)));
        }
        ProjectionAlgebra::new(f.theta, f.delta)
    }
}

impl From<ProjectionAlgebra> for PaFile {
    fn from(p: ProjectionAlgebra) -> Self {
        PaFile { n: p.n, theta: p.theta, delta: p.delta }
    }
}

fn validate_square(name: &str, t: &[Vec<usize>], n: usize) -> Result<()> {
    if t.len() != n {
        return Err(DrcError::Malformed(format!("{name} has {} rows, expected {n}", t.len())));
    }
    for (p, row) in t.iter().enumerate() {
        if row.len() != n {
            return Err(DrcError::Malformed(format!("{name} row {p} has length {}", row.len())));
        }
        if let Some(q) = row.iter().position(|&x| x >= n) {
            return Err(DrcError::Malformed(format!("{name}[{p}][{q}] = {} out of range", row[q])));
        }
    }
    Ok(())
}

impl ProjectionAlgebra {
    pub fn new(theta: Vec<Vec<usize>>, delta: Vec<Vec<usize>>) -> Result<Self> {
        let n = theta.len();
        if n == 0 {
            return Err(DrcError::Malformed("empty carrier".into()));
        }
        validate_square("theta", &theta, n)?;
        validate_square("delta", &delta, n)?;
        Ok(ProjectionAlgebra { n, theta, delta })
    }

    /// Same tables for both families.
    pub fn symmetric(theta: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(theta.clone(), theta)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    /// `t θ_p`.
    #[inline]
    pub fn th(&self, p: usize, t: usize) -> usize {
        self.theta[p][t]
    }
    /// `t δ_p`.
    #[inline]
    pub fn de(&self, p: usize, t: usize) -> usize {
        self.delta[p][t]
    }
    pub fn theta_table(&self) -> &[Vec<usize>] {
        &self.theta
    }
    pub fn delta_table(&self) -> &[Vec<usize>] {
        &self.delta
    }

    /// `t θ_{p_1} ⋯ θ_{p_k}`.
    pub fn theta_along(&self, ps: &[usize], t: usize) -> usize {
        ps.iter().fold(t, |x, &p| self.th(p, x))
    }
    /// `t δ_{p_k} ⋯ δ_{p_1}`.
    pub fn delta_along(&self, ps: &[usize], t: usize) -> usize {
        ps.iter().rev().fold(t, |x, &p| self.de(p, x))
    }

    /// `p ≤ q` iff `p = p θ_q`.
    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.th(q, p) == p
    }

    /// `p F q` iff `p = q δ_p` and `q = p θ_q`.
    #[inline]
    pub fn f_related(&self, p: usize, q: usize) -> bool {
        self.de(p, q) == p && self.th(q, p) == q
    }

    /// Relabels so that `old` becomes `perm[old]`.
    pub fn relabel(&self, perm: &[usize]) -> ProjectionAlgebra {
        let n = self.n;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let map = |t: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            (0..n).map(|p| (0..n).map(|q| perm[t[inv[p]][inv[q]]]).collect()).collect()
        };
        ProjectionAlgebra { n, theta: map(&self.theta), delta: map(&self.delta) }
    }
}

/// Partial order table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRelation {
    pub leq: Vec<Vec<bool>>,
}

impl OrderRelation {
    pub fn holds(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }
    /// `p↓`, ascending.
    pub fn down_set(&self, p: usize) -> Vec<usize> {
        (0..self.leq.len()).filter(|&q| self.leq[q][p]).collect()
    }
    pub fn is_partial_order(&self) -> bool {
        let n = self.leq.len();
        (0..n).all(|p| self.leq[p][p])
            && first2(n, |p, q| !(self.leq[p][q] && self.leq[q][p]) || p == q).is_none()
            && first3(n, |p, q, r| !(self.leq[p][q] && self.leq[q][r]) || self.leq[p][r]).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FRelation {
    pub f: Vec<Vec<bool>>,
}

impl FRelation {
    pub fn holds(&self, p: usize, q: usize) -> bool {
        self.f[p][q]
    }
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.f.len();
        (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).filter(|&(p, q)| self.f[p][q]).collect()
    }
}

/// P1–P5 in both columns, then the derived P6–P10 in both columns.
pub fn check_pa_axioms(pa: &ProjectionAlgebra) -> AxiomReport {
    let mut rep = AxiomReport::new("projection algebra axioms");
    let n = pa.n;
    for (col, a) in [("θ", pa.clone()), ("δ", opposite_pa(pa))] {
        let th = |p, t| a.th(p, t);
        let de = |p, t| a.de(p, t);
        rep.record(format!("P1 ({col})"), first1(n, |p| th(p, p) == p));
        rep.record(format!("P2 ({col})"), first2(n, |p, q| th(th(p, q), p) == th(p, q)));
        rep.record(
            format!("P3 ({col})"),
            first3(n, |p, q, t| th(th(p, q), th(q, t)) == th(p, th(q, t))),
        );
        rep.record(format!("P4 ({col})"), first2(n, |p, t| de(p, th(p, t)) == th(p, t)));
        rep.record(
            format!("P5 ({col})"),
            first3(n, |p, q, t| th(p, th(de(q, p), t)) == th(p, th(q, t))),
        );
    }
    for (col, a) in [("θ", pa.clone()), ("δ", opposite_pa(pa))] {
        let th = |p, t| a.th(p, t);
        let de = |p, t| a.de(p, t);
        rep.record_derived(format!("P6 ({col})"), first2(n, |p, t| th(p, th(p, t)) == th(p, t)));
        rep.record_derived(
            format!("P7 ({col})"),
            first3(n, |p, q, t| {
                let u = th(p, q);
                th(u, t) == th(u, th(p, t)) && th(u, t) == th(p, th(u, t))
            }),
        );
        rep.record_derived(format!("P8 ({col})"), first2(n, |p, q| th(th(p, q), q) == th(p, q)));
        rep.record_derived(format!("P9 ({col})"), first2(n, |p, q| th(p, de(q, p)) == th(p, q)));
        rep.record_derived(
            format!("P10 ({col})"),
            first3(n, |p, q, t| th(th(p, q), de(q, t)) == th(p, de(q, t))),
        );
    }
    rep
}

/// Structural lemmas about `≤` and `F` as exact table identities.
pub fn check_pa_invariants(pa: &ProjectionAlgebra) -> AxiomReport {
    let n = pa.n;
    let (th, de) = (|p, t| pa.th(p, t), |p, t| pa.de(p, t));
    let in_image = |table: &dyn Fn(usize, usize) -> usize, q: usize, p: usize| (0..n).any(|t| table(q, t) == p);
    let mut rep = AxiomReport::new("projection algebra invariants");
    rep.record_derived(
        "p = pθ_q implies p = qθ_p, and dually",
        first2(n, |p, q| (th(q, p) != p || th(p, q) == p) && (de(q, p) != p || de(p, q) == p)),
    );
    rep.record_derived(
        "five order characterisations agree",
        first2(n, |p, q| {
            let c1 = th(q, p) == p;
            let c2 = in_image(&th, q, p);
            let c3 = de(q, p) == p;
            let c4 = in_image(&de, q, p);
            let c5 = th(q, p) == p && de(q, p) == p && th(p, q) == p && de(p, q) == p;
            c1 == c2 && c2 == c3 && c3 == c4 && c4 == c5
        }),
    );
    let order = order_of(pa);
    rep.record_derived(
        "order is a partial order",
        if order.is_partial_order() { None } else { Some(vec![]) },
    );
    rep.record_derived(
        "im θ_p = im δ_p = p↓",
        first2(n, |p, q| {
            let below = order.holds(q, p);
            in_image(&th, p, q) == below && in_image(&de, p, q) == below
        }),
    );
    rep.record_derived(
        "p ≤ q gives θ_p = θ_pθ_q = θ_qθ_p, and dually",
        first3(n, |p, q, t| {
            !order.holds(p, q)
                || (th(p, t) == th(q, th(p, t))
                    && th(p, t) == th(p, th(q, t))
                    && de(p, t) == de(q, de(p, t))
                    && de(p, t) == de(p, de(q, t)))
        }),
    );
    rep.record_derived(
        "p' ≤ p, q' ≤ q, p' F q'",
        first2(n, |p, q| {
            let (p1, q1) = (de(p, q), th(q, p));
            pa.leq(p1, p) && pa.leq(q1, q) && pa.f_related(p1, q1)
        }),
    );
    rep.record_derived(
        "θ_pθ_q = θ_p'θ_q' and δ_qδ_p = δ_q'δ_p'",
        first3(n, |p, q, t| {
            let (p1, q1) = (de(p, q), th(q, p));
            th(q, th(p, t)) == th(q1, th(p1, t)) && de(p, de(q, t)) == de(p1, de(q1, t))
        }),
    );
    rep.record_derived(
        "p F q and r ≤ p give r F rθ_q; s ≤ q gives sδ_p F s",
        first3(n, |p, q, r| {
            !pa.f_related(p, q)
                || ((!pa.leq(r, p) || pa.f_related(r, th(q, r)))
                    && (!pa.leq(r, q) || pa.f_related(de(p, r), r)))
        }),
    );
    rep.record_derived(
        "θ_p = θ_q or δ_p = δ_q implies p = q",
        first2(n, |p, q| p == q || (pa.theta[p] != pa.theta[q] && pa.delta[p] != pa.delta[q])),
    );
    rep
}

pub fn order_of(pa: &ProjectionAlgebra) -> OrderRelation {
    let n = pa.n;
    OrderRelation { leq: (0..n).map(|p| (0..n).map(|q| pa.leq(p, q)).collect()).collect() }
}

pub fn f_relation_of(pa: &ProjectionAlgebra) -> FRelation {
    let n = pa.n;
    FRelation { f: (0..n).map(|p| (0..n).map(|q| pa.f_related(p, q)).collect()).collect() }
}

/// First pair `(p, q)` at which `map` fails to commute with `θ` or `δ`.
pub fn pa_morphism_witness(src: &ProjectionAlgebra, dst: &ProjectionAlgebra, map: &[usize]) -> Option<Vec<usize>> {
    if map.len() != src.n || map.iter().any(|&x| x >= dst.n) {
        return Some(vec![]);
    }
    first2(src.n, |p, q| {
        map[src.th(p, q)] == dst.th(map[p], map[q]) && map[src.de(p, q)] == dst.de(map[p], map[q])
    })
}

pub fn is_pa_morphism(src: &ProjectionAlgebra, dst: &ProjectionAlgebra, map: &[usize]) -> bool {
    pa_morphism_witness(src, dst, map).is_none()
}

/// Swaps the two families.
pub fn opposite_pa(pa: &ProjectionAlgebra) -> ProjectionAlgebra {
    ProjectionAlgebra { n: pa.n, theta: pa.delta.clone(), delta: pa.theta.clone() }
}

pub fn is_symmetric(pa: &ProjectionAlgebra) -> bool {
    pa.theta == pa.delta
}

/// P1′–P5′, evaluated on `θ` alone.
pub fn check_imaoka(pa: &ProjectionAlgebra) -> AxiomReport {
    let n = pa.n;
    let th = |p, t| pa.th(p, t);
    let mut rep = AxiomReport::new("Imaoka axioms");
    rep.record("P1' pθ_p = p", first1(n, |p| th(p, p) == p));
    rep.record("P2' θ_pθ_p = θ_p", first2(n, |p, t| th(p, th(p, t)) == th(p, t)));
    rep.record("P3' pθ_qθ_p = qθ_p", first2(n, |p, q| th(p, th(q, p)) == th(p, q)));
    rep.record(
        "P4' θ_pθ_qθ_p = θ_(qθ_p)",
        first3(n, |p, q, t| th(p, th(q, th(p, t))) == th(th(p, q), t)),
    );
    rep.record(
        "P5' θ_pθ_qθ_pθ_q = θ_pθ_q",
        first3(n, |p, q, t| th(q, th(p, th(q, th(p, t)))) == th(q, th(p, t))),
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn semilattice_and_constant_algebras_pass() {
        for pa in [corpus::semilattice_pa(3), corpus::constant_pa(2)] {
            let rep = check_pa_axioms(&pa);
            assert!(rep.all_passed(), "{rep}");
            assert!(check_pa_invariants(&pa).all_passed());
            assert!(is_symmetric(&pa));
            assert!(check_imaoka(&pa).all_passed());
            assert_eq!(opposite_pa(&opposite_pa(&pa)), pa);
        }
    }

    #[test]
    fn constant_algebra_order_is_antichain_and_f_full() {
        let pa = corpus::constant_pa(2);
        let o = order_of(&pa);
        assert!(o.holds(0, 0) && o.holds(1, 1) && !o.holds(0, 1) && !o.holds(1, 0));
        assert_eq!(f_relation_of(&pa).pairs().len(), 4);
    }

    #[test]
    fn semilattice_order_is_native_and_f_is_identity() {
        let pa = corpus::semilattice_pa(3);
        let o = order_of(&pa);
        for p in 0..3 {
            for q in 0..3 {
                assert_eq!(o.holds(p, q), p <= q);
                assert_eq!(pa.f_related(p, q), p == q);
            }
        }
        assert_eq!(o.down_set(1), vec![0, 1]);
    }

    #[test]
    fn morphism_checks() {
        let pa = corpus::semilattice_pa(3);
        assert!(is_pa_morphism(&pa, &pa, &[0, 1, 2]));
        assert!(is_pa_morphism(&pa, &pa, &[0, 0, 0]));
        // onto the diamond's two atoms: not meet-closed, so θ is not preserved
        let diamond = corpus::diamond_pa();
        assert_eq!(pa_morphism_witness(&corpus::semilattice_pa(2), &diamond, &[1, 2]), Some(vec![0, 1]));
    }

    #[test]
    fn broken_p2_is_localised() {
        let pa = corpus::semilattice_pa(3);
        let mut theta = pa.theta_table().to_vec();
        // 2θ_0 = 1, which is not below 0
        theta[0][2] = 1;
        let bad = ProjectionAlgebra::new(theta, pa.delta_table().to_vec()).unwrap();
        let rep = check_pa_axioms(&bad);
        assert!(!rep.all_passed());
        let f = rep.first_failure().unwrap();
        assert_eq!(f.name, "P2 (θ)");
        assert_eq!(f.witness, Some(vec![0, 2]));
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(ProjectionAlgebra::new(vec![vec![0, 1], vec![2, 0]], vec![vec![0, 0], vec![1, 1]]).is_err());
        assert!(ProjectionAlgebra::new(vec![vec![0, 1]], vec![vec![0]]).is_err());
    }
}
