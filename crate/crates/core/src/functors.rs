//! The two constructions between DRC-semigroups and chained projection
//! categories, and the checks that they are mutually inverse.

use rayon::prelude::*;

use crate::biordered::{BiorderedCategory, CategoryParts};
use crate::cpc::{check_cpc, cp_functor_witness, ChainedProjectionCategory};
use crate::error::{DrcError, Result};
use crate::report::{first2, first3, AxiomReport};
use crate::semigroup::{
    check_drc_axioms, is_drc_morphism, projection_algebra_of, projections, FiniteSemigroup,
};

/// Category on the elements of `s` with `d = D`, `r = R`, composition the
/// product, restrictions by multiplication and `ε[p,q] = pq`.
pub fn c_of(s: &FiniteSemigroup) -> Result<ChainedProjectionCategory> {
    let pa = projection_algebra_of(s)?;
    let proj = projections(s);
    let n = s.n();
    let mut parts = CategoryParts {
        m: n,
        objects: proj.clone(),
        dom: s.d_table().to_vec(),
        cod: s.r_table().to_vec(),
        ..Default::default()
    };
    for a in 0..n {
        for b in 0..n {
            if s.r(a) == s.d(b) {
                parts.comp.push([a, b, s.mul(a, b)]);
            }
        }
    }
    for (i, &p) in proj.iter().enumerate() {
        for (j, &q) in proj.iter().enumerate() {
            if pa.leq(i, j) {
                parts.obj_leq.push([p, q]);
            }
        }
    }
    for a in 0..n {
        for (i, &p) in proj.iter().enumerate() {
            let dpos = proj.binary_search(&s.d(a)).expect("D(a) is a projection");
            let rpos = proj.binary_search(&s.r(a)).expect("R(a) is a projection");
            if pa.leq(i, dpos) {
                parts.lres.push([p, a, s.mul(p, a)]);
            }
            if pa.leq(i, rpos) {
                parts.rres.push([a, p, s.mul(a, p)]);
            }
        }
    }
    let cat = BiorderedCategory::from_parts(parts)?;
    let mut eval = Vec::new();
    for i in 0..pa.n() {
        for j in 0..pa.n() {
            if pa.f_related(i, j) {
                eval.push((i, j, s.mul(proj[i], proj[j])));
            }
        }
    }
    ChainedProjectionCategory::new(pa, cat, eval)
}

/// `a ⊛ b = a⌐p′ ∘ ε[p′,q′] ∘ q′⌐b` with `p = r(a)`, `q = d(b)`,
/// `p′ = qδ_p` and `q′ = pθ_q`.
pub fn star(c: &ChainedProjectionCategory, a: usize, b: usize) -> Result<usize> {
    let v = c.view();
    let pa = c.pa();
    let (p, q) = (v.r(a), v.d(b));
    let (p1, q1) = (pa.de(p, q), pa.th(q, p));
    let undefined = |what: &str| DrcError::Undefined(format!("{what} in {a} ⊛ {b}"));
    let left = v.rres(a, p1).ok_or_else(|| undefined("right restriction"))?;
    let mid = c.eps(p1, q1).ok_or_else(|| undefined("evaluation edge"))?;
    let right = v.lres(q1, b).ok_or_else(|| undefined("left restriction"))?;
    c.cat().compose_all(&[left, mid, right])
}

/// The semigroup `(C, ⊛, d, r)`.
pub fn s_of(c: &ChainedProjectionCategory) -> Result<FiniteSemigroup> {
    let m = c.cat().m();
    let mul: Vec<Vec<usize>> = (0..m)
        .into_par_iter()
        .map(|a| (0..m).map(|b| star(c, a, b)).collect::<Result<Vec<usize>>>())
        .collect::<Result<_>>()?;
    let d = (0..m).map(|a| c.cat().dom(a)).collect();
    let r = (0..m).map(|a| c.cat().cod(a)).collect();
    FiniteSemigroup::new(mul, d, r)
}

/// `S(C(S)) = S` as literal table equality.
pub fn roundtrip_sc(s: &FiniteSemigroup) -> Result<bool> {
    Ok(s_of(&c_of(s)?)? == *s)
}

/// `C(S(C)) = C` as literal table equality; `C` must pass every suite first.
pub fn roundtrip_cs(c: &ChainedProjectionCategory) -> Result<bool> {
    let rep = check_cpc(c);
    if let Some(f) = rep.first_failure() {
        return Err(DrcError::AxiomFailure { name: f.name.clone(), witness: f.witness.clone().unwrap_or_default() });
    }
    Ok(c_of(&s_of(c)?)? == *c)
}

/// Both readings of a map of carriers, which are shared by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transport {
    pub drc_morphism: bool,
    pub cp_functor: bool,
}

/// Reads `map` as a candidate DRC-morphism `s → t` and as a candidate
/// chained projection functor `C(s) → C(t)`.
pub fn transport_morphism(s: &FiniteSemigroup, t: &FiniteSemigroup, map: &[usize]) -> Result<Transport> {
    let (cs, ct) = (c_of(s)?, c_of(t)?);
    Ok(Transport { drc_morphism: is_drc_morphism(s, t, map), cp_functor: cp_functor_witness(&cs, &ct, map).is_none() })
}

/// The reverse direction, starting from chained projection categories.
pub fn transport_back(
    src: &ChainedProjectionCategory,
    dst: &ChainedProjectionCategory,
    map: &[usize],
) -> Result<Transport> {
    let (s, t) = (s_of(src)?, s_of(dst)?);
    Ok(Transport { drc_morphism: is_drc_morphism(&s, &t, map), cp_functor: cp_functor_witness(src, dst, map).is_none() })
}

/// Laws of `⊛` checked directly: associativity, the end formulas, its
/// agreement with composition and restriction, and the projections of the
/// resulting semigroup.
pub fn check_star_laws(c: &ChainedProjectionCategory) -> Result<AxiomReport> {
    let s = s_of(c)?;
    let v = c.view();
    let pa = c.pa();
    let cat = c.cat();
    let m = s.n();
    let mut rep = AxiomReport::new("⊛ product");
    rep.record("associativity", first3(m, |a, b, k| s.mul(s.mul(a, b), k) == s.mul(a, s.mul(b, k))));
    let deltas: Vec<Vec<usize>> = (0..m).map(|a| v.delta_cap(a).expect("full category")).collect();
    let thetas: Vec<Vec<usize>> = (0..m).map(|a| v.theta_cap(a).expect("full category")).collect();
    rep.record(
        "d(a⊛b) = d(b)Δ_a and r(a⊛b) = r(a)Θ_b",
        first2(m, |a, b| {
            let ab = s.mul(a, b);
            v.d(ab) == deltas[a][v.d(b)] && v.r(ab) == thetas[b][v.r(a)]
        }),
    );
    rep.record(
        "a⊛b = a∘b when composable",
        first2(m, |a, b| cat.cod(a) != cat.dom(b) || cat.comp(a, b) == Some(s.mul(a, b))),
    );
    let n = pa.n();
    rep.record(
        "p⊛q = ε[p′,q′]",
        first2(n, |p, q| c.eps(pa.de(p, q), pa.th(q, p)) == Some(s.mul(v.obj(p), v.obj(q)))),
    );
    rep.record(
        "p⊛a = p⌐a and a⊛q = a⌐q below the ends",
        first2(m, |a, i| {
            if i >= n {
                return true;
            }
            let p = v.obj(i);
            (!pa.leq(i, v.d(a)) || v.lres(i, a) == Some(s.mul(p, a)))
                && (!pa.leq(i, v.r(a)) || v.rres(a, i) == Some(s.mul(a, p)))
        }),
    );
    let extracted = projections(&s);
    rep.record(
        "projections of S(C) are the objects",
        if extracted == cat.objects() { None } else { Some(extracted) },
    );
    rep.record(
        "D(p⊛q) = qδ_p",
        first2(n, |p, q| v.d(s.mul(v.obj(p), v.obj(q))) == pa.de(p, q)),
    );
    let drc = check_drc_axioms(&s);
    rep.record("S(C) is a DRC-semigroup", drc.first_failure().map(|f| f.witness.clone().unwrap_or_default()));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::cpc::check_cpc;

    #[test]
    fn trivial_monoid_gives_one_object() {
        let c = c_of(&corpus::trivial_monoid()).unwrap();
        assert_eq!(c.cat().m(), 1);
        assert_eq!(c.cat().objects(), &[0]);
        assert!(check_cpc(&c).all_passed());
    }

    #[test]
    fn rectangular_band_has_full_f_and_four_edges() {
        let c = c_of(&corpus::rectangular_band(2, 2)).unwrap();
        assert_eq!(c.eval_entries().len(), 4);
        assert!(check_cpc(&c).all_passed());
        assert!(roundtrip_sc(&corpus::rectangular_band(2, 2)).unwrap());
        assert!(roundtrip_cs(&c).unwrap());
    }

    #[test]
    fn b2_has_identity_f() {
        let c = c_of(&corpus::brandt_b2()).unwrap();
        assert_eq!(c.eval_entries().len(), 3);
        assert!(c.eval_entries().iter().all(|&(p, q, _)| p == q));
    }

    #[test]
    fn broken_cpc_is_rejected_before_round_trip() {
        let c = c_of(&corpus::rectangular_band(2, 2)).unwrap();
        let bad = c.with_eps(0, 1, 2).unwrap();
        assert!(matches!(roundtrip_cs(&bad), Err(DrcError::AxiomFailure { .. })));
    }

    #[test]
    fn mu_quotient_map_transports() {
        let s = corpus::semilattice_times_cyclic(3);
        let mu = crate::semigroup::mu_congruence(&s);
        let q = crate::semigroup::quotient(&s, &mu).unwrap();
        let t = transport_morphism(&s, &q, &mu.partition).unwrap();
        assert!(t.drc_morphism && t.cp_functor);
    }
}
