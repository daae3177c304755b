//! Finite biordered categories presented by an object order and restrictions.
//!
//! Objects are identity morphisms and are named by their own morphism index.
//! Composition and the restrictions are partial and stored sparsely.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{DrcError, Result};
use crate::report::AxiomReport;

/// Plain-data form of a category, matching the file layout.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryParts {
    pub m: usize,
    pub objects: Vec<usize>,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    /// `[a, b, a∘b]`
    pub comp: Vec<[usize; 3]>,
    /// `[p, q]` for `p ≤ q`
    pub obj_leq: Vec<[usize; 2]>,
    /// `[p, a, p⌐a]`
    pub lres: Vec<[usize; 3]>,
    /// `[a, q, a⌐q]`
    pub rres: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "CategoryParts", into = "CategoryParts")]
pub struct BiorderedCategory {
    m: usize,
    objects: Vec<usize>,
    object_pos: Vec<Option<usize>>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
    obj_leq: HashSet<(usize, usize)>,
    lres: HashMap<(usize, usize), usize>,
    rres: HashMap<(usize, usize), usize>,
    bound: Option<usize>,
}

impl PartialEq for BiorderedCategory {
    fn eq(&self, other: &Self) -> bool {
        self.to_parts() == other.to_parts()
    }
}
impl Eq for BiorderedCategory {}

impl TryFrom<CategoryParts> for BiorderedCategory {
    type Error = DrcError;
    fn try_from(p: CategoryParts) -> Result<Self> {
        BiorderedCategory::from_parts(p)
    }
}

impl From<BiorderedCategory> for CategoryParts {
    fn from(c: BiorderedCategory) -> Self {
        c.to_parts()
    }
}

fn malformed<T>(msg: String) -> Result<T> {
    Err(DrcError::Malformed(msg))
}

fn index_triples(name: &str, triples: &[[usize; 3]], m: usize) -> Result<HashMap<(usize, usize), usize>> {
    let mut map = HashMap::with_capacity(triples.len());
    for &[x, y, z] in triples {
        if x >= m || y >= m || z >= m {
            return malformed(format!("{name} entry {:?} out of range", [x, y, z]));
        }
        if let Some(old) = map.insert((x, y), z) {
            if old != z {
                return malformed(format!("{name} entry ({x}, {y}) has two values"));
            }
        }
    }
    Ok(map)
}

impl BiorderedCategory {
    /// Validates ranges and the definedness conditions of every stored entry.
    pub fn from_parts(p: CategoryParts) -> Result<Self> {
        let m = p.m;
        if p.dom.len() != m || p.cod.len() != m {
            return malformed(format!("dom/cod must have length {m}"));
        }
        let mut object_pos = vec![None; m];
        let mut objects = p.objects.clone();
        objects.sort_unstable();
        objects.dedup();
        if objects.len() != p.objects.len() {
            return malformed("repeated object".into());
        }
        for (i, &o) in objects.iter().enumerate() {
            if o >= m {
                return malformed(format!("object {o} out of range"));
            }
            object_pos[o] = Some(i);
        }
        for a in 0..m {
            for (name, x) in [("dom", p.dom[a]), ("cod", p.cod[a])] {
                if x >= m || object_pos[x].is_none() {
                    return malformed(format!("{name}({a}) = {x} is not an object"));
                }
            }
        }
        for &o in &objects {
            if p.dom[o] != o || p.cod[o] != o {
                return malformed(format!("object {o} is not its own domain and codomain"));
            }
        }
        let comp = index_triples("comp", &p.comp, m)?;
        for (&(a, b), _) in &comp {
            if p.cod[a] != p.dom[b] {
                return malformed(format!("comp defined on ({a}, {b}) but cod({a}) ≠ dom({b})"));
            }
        }
        let mut obj_leq = HashSet::with_capacity(p.obj_leq.len());
        for &[x, y] in &p.obj_leq {
            if x >= m || y >= m || object_pos[x].is_none() || object_pos[y].is_none() {
                return malformed(format!("obj_leq entry [{x}, {y}] is not a pair of objects"));
            }
            obj_leq.insert((x, y));
        }
        let lres = index_triples("lres", &p.lres, m)?;
        for &(q, a) in lres.keys() {
            if object_pos[q].is_none() || !obj_leq.contains(&(q, p.dom[a])) {
                return malformed(format!("lres defined at ({q}, {a}) but {q} ≰ dom({a})"));
            }
        }
        let rres = index_triples("rres", &p.rres, m)?;
        for &(a, q) in rres.keys() {
            if object_pos[q].is_none() || !obj_leq.contains(&(q, p.cod[a])) {
                return malformed(format!("rres defined at ({a}, {q}) but {q} ≰ cod({a})"));
            }
        }
        Ok(BiorderedCategory {
            m,
            objects,
            object_pos,
            dom: p.dom,
            cod: p.cod,
            comp,
            obj_leq,
            lres,
            rres,
            bound: p.bound,
        })
    }

    /// Canonical parts with all lists sorted.
    pub fn to_parts(&self) -> CategoryParts {
        let mut comp: Vec<[usize; 3]> = self.comp.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        let mut lres: Vec<[usize; 3]> = self.lres.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        let mut rres: Vec<[usize; 3]> = self.rres.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        let mut obj_leq: Vec<[usize; 2]> = self.obj_leq.iter().map(|&(a, b)| [a, b]).collect();
        comp.sort_unstable();
        lres.sort_unstable();
        rres.sort_unstable();
        obj_leq.sort_unstable();
        CategoryParts {
            m: self.m,
            objects: self.objects.clone(),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            comp,
            obj_leq,
            lres,
            rres,
            bound: self.bound,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }
    pub fn object_position(&self, p: usize) -> Option<usize> {
        self.object_pos.get(p).copied().flatten()
    }
    pub fn is_object(&self, p: usize) -> bool {
        self.object_position(p).is_some()
    }
    #[inline]
    pub fn dom(&self, a: usize) -> usize {
        self.dom[a]
    }
    #[inline]
    pub fn cod(&self, a: usize) -> usize {
        self.cod[a]
    }
    pub fn bound(&self) -> Option<usize> {
        self.bound
    }
    pub fn comp(&self, a: usize, b: usize) -> Option<usize> {
        self.comp.get(&(a, b)).copied()
    }
    pub fn obj_leq(&self, p: usize, q: usize) -> bool {
        self.obj_leq.contains(&(p, q))
    }
    /// `p⌐a`, left restriction.
    pub fn lres(&self, p: usize, a: usize) -> Option<usize> {
        self.lres.get(&(p, a)).copied()
    }
    /// `a⌐q`, right restriction.
    pub fn rres(&self, a: usize, q: usize) -> Option<usize> {
        self.rres.get(&(a, q)).copied()
    }

    /// Composite of a nonempty sequence, if every step is stored.
    pub fn compose_all(&self, xs: &[usize]) -> Result<usize> {
        let (&first, rest) = xs.split_first().ok_or_else(|| DrcError::Malformed("empty composite".into()))?;
        rest.iter().try_fold(first, |acc, &x| {
            if self.cod(acc) != self.dom(x) {
                return Err(DrcError::JunctionMismatch { left: self.cod(acc), right: self.dom(x) });
            }
            self.comp(acc, x).ok_or_else(|| DrcError::Undefined(format!("composite {acc}∘{x} outside truncation")))
        })
    }

    /// Objects below `p`, ascending.
    pub fn down_set(&self, p: usize) -> Vec<usize> {
        self.objects.iter().copied().filter(|&q| self.obj_leq(q, p)).collect()
    }

    /// Morphisms from `p` to `q`.
    pub fn hom(&self, p: usize, q: usize) -> Vec<usize> {
        (0..self.m).filter(|&a| self.dom[a] == p && self.cod[a] == q).collect()
    }

    /// Replaces one left restriction value; used for mutation tests.
    pub fn with_lres(&self, p: usize, a: usize, value: usize) -> Result<Self> {
        let mut parts = self.to_parts();
        for e in parts.lres.iter_mut() {
            if e[0] == p && e[1] == a {
                e[2] = value;
            }
        }
        Self::from_parts(parts)
    }

    /// Replaces one composite; used for mutation tests.
    pub fn with_comp(&self, a: usize, b: usize, value: usize) -> Result<Self> {
        let mut parts = self.to_parts();
        for e in parts.comp.iter_mut() {
            if e[0] == a && e[1] == b {
                e[2] = value;
            }
        }
        Self::from_parts(parts)
    }
}

fn note_truncation(rep: &mut AxiomReport, c: &BiorderedCategory, skipped: usize) {
    if let Some(b) = c.bound {
        rep.bound = Some(b);
        rep.record_note(
            "truncation",
            true,
            format!("{skipped} instances involve entries beyond bound {b} and were not evaluated"),
        );
    }
}

/// Definedness of `∘`, identity laws, end laws and associativity.
pub fn check_category(c: &BiorderedCategory) -> AxiomReport {
    let mut rep = AxiomReport::new("category laws");
    let m = c.m;
    let truncated = c.bound.is_some();
    let mut skipped = 0usize;
    let mut total = None;
    let mut ends = None;
    let mut ident = None;
    for a in 0..m {
        if ident.is_none() && (c.comp(c.dom(a), a) != Some(a) || c.comp(a, c.cod(a)) != Some(a)) {
            ident = Some(vec![a]);
        }
        for b in 0..m {
            if c.cod(a) != c.dom(b) {
                continue;
            }
            match c.comp(a, b) {
                None if truncated => skipped += 1,
                None => {
                    total.get_or_insert(vec![a, b]);
                }
                Some(ab) => {
                    if ends.is_none() && (c.dom(ab) != c.dom(a) || c.cod(ab) != c.cod(b)) {
                        ends = Some(vec![a, b]);
                    }
                }
            }
        }
    }
    rep.record("composition defined on composable pairs", total);
    rep.record("d(a∘b) = d(a), r(a∘b) = r(b)", ends);
    rep.record("d(a)∘a = a = a∘r(a)", ident);
    let assoc: Vec<usize> = (0..m).collect();
    let counter = std::sync::atomic::AtomicUsize::new(0);
    let w = crate::report::first_failing(&assoc, |&a| {
        for b in (0..m).filter(|&b| c.cod(a) == c.dom(b)) {
            for k in (0..m).filter(|&k| c.cod(b) == c.dom(k)) {
                let lhs = c.comp(a, b).and_then(|ab| c.comp(ab, k));
                let rhs = c.comp(b, k).and_then(|bk| c.comp(a, bk));
                match (lhs, rhs) {
                    (Some(x), Some(y)) if x != y => return Some(vec![a, b, k]),
                    (Some(_), Some(_)) => {}
                    _ => {
                        counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    }
                }
            }
        }
        None
    });
    rep.record("associativity", w);
    skipped += counter.into_inner();
    note_truncation(&mut rep, c, skipped);
    rep
}

/// The object order must be a partial order.
fn object_order_witness(c: &BiorderedCategory) -> Option<Vec<usize>> {
    let obs = &c.objects;
    for &p in obs {
        if !c.obj_leq(p, p) {
            return Some(vec![p]);
        }
    }
    for &p in obs {
        for &q in obs {
            if p != q && c.obj_leq(p, q) && c.obj_leq(q, p) {
                return Some(vec![p, q]);
            }
            for &r in obs {
                if c.obj_leq(p, q) && c.obj_leq(q, r) && !c.obj_leq(p, r) {
                    return Some(vec![p, q, r]);
                }
            }
        }
    }
    None
}

/// O1–O4 for left and right restrictions, and agreement of the two
/// derived orders on objects.
pub fn check_biordered(c: &BiorderedCategory) -> AxiomReport {
    let mut rep = AxiomReport::new("biordered category laws");
    let m = c.m;
    let truncated = c.bound.is_some();
    let skipped = std::sync::atomic::AtomicUsize::new(0);
    let skip = || {
        skipped.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    };
    rep.record("object order is a partial order", object_order_witness(c));
    let morphisms: Vec<usize> = (0..m).collect();

    let o1l = crate::report::first_failing(&morphisms, |&a| {
        for p in c.down_set(c.dom(a)) {
            match c.lres(p, a) {
                None if truncated => skip(),
                None => return Some(vec![p, a]),
                Some(u) => {
                    if c.dom(u) != p || !c.obj_leq(c.cod(u), c.cod(a)) {
                        return Some(vec![p, a]);
                    }
                }
            }
        }
        None
    });
    rep.record("O1 left", o1l);
    let o1r = crate::report::first_failing(&morphisms, |&a| {
        for q in c.down_set(c.cod(a)) {
            match c.rres(a, q) {
                None if truncated => skip(),
                None => return Some(vec![a, q]),
                Some(u) => {
                    if c.cod(u) != q || !c.obj_leq(c.dom(u), c.dom(a)) {
                        return Some(vec![a, q]);
                    }
                }
            }
        }
        None
    });
    rep.record("O1 right", o1r);

    rep.record(
        "O2 left",
        (0..m).find(|&a| c.lres(c.dom(a), a) != Some(a)).map(|a| vec![a]),
    );
    rep.record(
        "O2 right",
        (0..m).find(|&a| c.rres(a, c.cod(a)) != Some(a)).map(|a| vec![a]),
    );

    let o3l = crate::report::first_failing(&morphisms, |&a| {
        let below = c.down_set(c.dom(a));
        for &p in &below {
            for &q in &below {
                if !c.obj_leq(p, q) {
                    continue;
                }
                let nested = c.lres(q, a).and_then(|u| c.lres(p, u));
                match (nested, c.lres(p, a)) {
                    (Some(x), Some(y)) if x != y => return Some(vec![p, q, a]),
                    (Some(_), Some(_)) => {}
                    _ if truncated => skip(),
                    _ => return Some(vec![p, q, a]),
                }
            }
        }
        None
    });
    rep.record("O3 left", o3l);
    let o3r = crate::report::first_failing(&morphisms, |&a| {
        let below = c.down_set(c.cod(a));
        for &r in &below {
            for &s in &below {
                if !c.obj_leq(r, s) {
                    continue;
                }
                let nested = c.rres(a, s).and_then(|u| c.rres(u, r));
                match (nested, c.rres(a, r)) {
                    (Some(x), Some(y)) if x != y => return Some(vec![a, s, r]),
                    (Some(_), Some(_)) => {}
                    _ if truncated => skip(),
                    _ => return Some(vec![a, s, r]),
                }
            }
        }
        None
    });
    rep.record("O3 right", o3r);

    let o4l = crate::report::first_failing(&morphisms, |&a| {
        for b in (0..m).filter(|&b| c.dom(b) == c.cod(a)) {
            let Some(ab) = c.comp(a, b) else {
                if truncated {
                    skip();
                    continue;
                }
                return Some(vec![a, b]);
            };
            for p in c.down_set(c.dom(a)) {
                let lhs = c.lres(p, ab);
                let rhs = c.lres(p, a).and_then(|u| c.lres(c.cod(u), b).and_then(|v| c.comp(u, v)));
                match (lhs, rhs) {
                    (Some(x), Some(y)) if x != y => return Some(vec![p, a, b]),
                    (Some(_), Some(_)) => {}
                    _ if truncated => skip(),
                    _ => return Some(vec![p, a, b]),
                }
            }
        }
        None
    });
    rep.record("O4 left", o4l);
    let o4r = crate::report::first_failing(&morphisms, |&a| {
        for b in (0..m).filter(|&b| c.dom(b) == c.cod(a)) {
            let Some(ab) = c.comp(a, b) else {
                if truncated {
                    skip();
                    continue;
                }
                return Some(vec![a, b]);
            };
            for r in c.down_set(c.cod(b)) {
                let lhs = c.rres(ab, r);
                let rhs = c.rres(b, r).and_then(|v| c.rres(a, c.dom(v)).and_then(|u| c.comp(u, v)));
                match (lhs, rhs) {
                    (Some(x), Some(y)) if x != y => return Some(vec![a, b, r]),
                    (Some(_), Some(_)) => {}
                    _ if truncated => skip(),
                    _ => return Some(vec![a, b, r]),
                }
            }
        }
        None
    });
    rep.record("O4 right", o4r);

    let (l, r) = derive_orders(c);
    let mut agree = None;
    'outer: for &p in &c.objects {
        for &q in &c.objects {
            let o = c.obj_leq(p, q);
            if l[p][q] != o || r[p][q] != o {
                agree = Some(vec![p, q]);
                break 'outer;
            }
        }
    }
    rep.record("derived orders agree with the object order", agree);
    note_truncation(&mut rep, c, skipped.into_inner());
    rep
}

/// `a ≤ₗ b` iff `d(a) ≤ d(b)` and `a = d(a)⌐b`; dually for `≤ᵣ`.
pub fn derive_orders(c: &BiorderedCategory) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let m = c.m;
    let rows: Vec<(Vec<bool>, Vec<bool>)> = (0..m)
        .into_par_iter()
        .map(|a| {
            let l = (0..m)
                .map(|b| c.obj_leq(c.dom(a), c.dom(b)) && c.lres(c.dom(a), b) == Some(a))
                .collect();
            let r = (0..m)
                .map(|b| c.obj_leq(c.cod(a), c.cod(b)) && c.rres(b, c.cod(a)) == Some(a))
                .collect();
            (l, r)
        })
        .collect();
    rows.into_iter().unzip()
}

/// Whether a boolean table is reflexive, antisymmetric and transitive.
pub fn is_partial_order_table(t: &[Vec<bool>]) -> bool {
    let n = t.len();
    (0..n).all(|a| t[a][a])
        && (0..n).all(|a| (0..n).all(|b| a == b || !(t[a][b] && t[b][a])))
        && (0..n).into_par_iter().all(|a| {
            (0..n).filter(|&b| t[a][b]).all(|b| (0..n).filter(|&k| t[b][k]).all(|k| t[a][k]))
        })
}

/// `p ↦ r(p⌐a)` on `d(a)↓`, as `(p, pϑ_a)` pairs.
pub fn vt_map(c: &BiorderedCategory, a: usize) -> Vec<(usize, Option<usize>)> {
    c.down_set(c.dom(a)).into_iter().map(|p| (p, c.lres(p, a).map(|u| c.cod(u)))).collect()
}

/// `q ↦ d(a⌐q)` on `r(a)↓`.
pub fn vd_map(c: &BiorderedCategory, a: usize) -> Vec<(usize, Option<usize>)> {
    c.down_set(c.cod(a)).into_iter().map(|q| (q, c.rres(a, q).map(|u| c.dom(u)))).collect()
}

/// Restricting first does not change `ϑ` or `∂` on the smaller down-set.
pub fn check_vt_stability(c: &BiorderedCategory) -> AxiomReport {
    let mut rep = AxiomReport::new("stability of ϑ and ∂ under restriction");
    let val = |x: Option<usize>, f: &dyn Fn(usize) -> usize| x.map(f);
    let mut left = None;
    let mut right = None;
    for a in 0..c.m {
        for p in c.down_set(c.dom(a)) {
            let Some(u) = c.lres(p, a) else { continue };
            for s in c.down_set(p) {
                let x = val(c.lres(s, u), &|w| c.cod(w));
                let y = val(c.lres(s, a), &|w| c.cod(w));
                if x.is_some() && y.is_some() && x != y && left.is_none() {
                    left = Some(vec![s, p, a]);
                }
            }
        }
        for q in c.down_set(c.cod(a)) {
            let Some(u) = c.rres(a, q) else { continue };
            for t in c.down_set(q) {
                let x = val(c.rres(u, t), &|w| c.dom(w));
                let y = val(c.rres(a, t), &|w| c.dom(w));
                if x.is_some() && y.is_some() && x != y && right.is_none() {
                    right = Some(vec![a, q, t]);
                }
            }
        }
    }
    rep.record("sϑ after p⌐a = sϑ_a", left);
    rep.record("t∂ after a⌐q = t∂_a", right);
    rep
}

/// Swaps domain with codomain, reverses composition, swaps the restrictions.
pub fn opposite_cat(c: &BiorderedCategory) -> BiorderedCategory {
    let p = c.to_parts();
    let parts = CategoryParts {
        m: p.m,
        objects: p.objects,
        dom: p.cod,
        cod: p.dom,
        comp: p.comp.iter().map(|&[a, b, ab]| [b, a, ab]).collect(),
        obj_leq: p.obj_leq,
        lres: p.rres.iter().map(|&[a, q, u]| [q, a, u]).collect(),
        rres: p.lres.iter().map(|&[q, a, u]| [a, q, u]).collect(),
        bound: p.bound,
    };
    BiorderedCategory::from_parts(parts).expect("opposite of a valid category is valid")
}

/// Functor laws plus preservation of both restrictions, with `map` on morphisms.
pub fn biordered_functor_witness(
    c: &BiorderedCategory,
    c2: &BiorderedCategory,
    map: &[usize],
) -> Option<Vec<usize>> {
    if map.len() != c.m || map.iter().any(|&x| x >= c2.m) {
        return Some(vec![]);
    }
    for &p in &c.objects {
        if !c2.is_object(map[p]) {
            return Some(vec![p]);
        }
    }
    for a in 0..c.m {
        if c2.dom(map[a]) != map[c.dom(a)] || c2.cod(map[a]) != map[c.cod(a)] {
            return Some(vec![a]);
        }
    }
    let mut comp: Vec<_> = c.comp.iter().collect();
    comp.sort_unstable();
    for (&(a, b), &ab) in comp {
        if c2.comp(map[a], map[b]).is_some_and(|x| x != map[ab]) {
            return Some(vec![a, b]);
        }
    }
    let mut lres: Vec<_> = c.lres.iter().collect();
    lres.sort_unstable();
    for (&(p, a), &u) in lres {
        if c2.lres(map[p], map[a]).is_some_and(|x| x != map[u]) {
            return Some(vec![p, a]);
        }
    }
    let mut rres: Vec<_> = c.rres.iter().collect();
    rres.sort_unstable();
    for (&(a, q), &u) in rres {
        if c2.rres(map[a], map[q]).is_some_and(|x| x != map[u]) {
            return Some(vec![a, q]);
        }
    }
    None
}

pub fn is_biordered_functor(c: &BiorderedCategory, c2: &BiorderedCategory, map: &[usize]) -> bool {
    biordered_functor_witness(c, c2, map).is_none()
}

/// v-congruence plus restriction compatibility; errors name the failing clause.
pub fn check_biordered_congruence(c: &BiorderedCategory, partition: &[usize]) -> Result<()> {
    if partition.len() != c.m {
        return malformed(format!("partition has length {}, m = {}", partition.len(), c.m));
    }
    let bad = |op: &str, witness: Vec<usize>| Err(DrcError::Incompatible { op: op.into(), witness });
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for (a, &k) in partition.iter().enumerate() {
        classes.entry(k).or_default().push(a);
    }
    let mut keys: Vec<usize> = classes.keys().copied().collect();
    keys.sort_unstable();
    for k in &keys {
        let members = &classes[k];
        let a = members[0];
        for &b in &members[1..] {
            if c.dom(a) != c.dom(b) || c.cod(a) != c.cod(b) {
                return bad("domain/codomain", vec![a, b]);
            }
            for u in 0..c.m {
                if c.cod(u) == c.dom(a) {
                    if let (Some(x), Some(y)) = (c.comp(u, a), c.comp(u, b)) {
                        if partition[x] != partition[y] {
                            return bad("left composition", vec![u, a, b]);
                        }
                    }
                }
                if c.dom(u) == c.cod(a) {
                    if let (Some(x), Some(y)) = (c.comp(a, u), c.comp(b, u)) {
                        if partition[x] != partition[y] {
                            return bad("right composition", vec![a, b, u]);
                        }
                    }
                }
            }
            for p in c.down_set(c.dom(a)) {
                if let (Some(x), Some(y)) = (c.lres(p, a), c.lres(p, b)) {
                    if partition[x] != partition[y] {
                        return bad("left restriction", vec![p, a, b]);
                    }
                }
            }
            for q in c.down_set(c.cod(a)) {
                if let (Some(x), Some(y)) = (c.rres(a, q), c.rres(b, q)) {
                    if partition[x] != partition[y] {
                        return bad("right restriction", vec![a, b, q]);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Quotient by a biordered congruence; classes are renumbered by first occurrence.
pub fn quotient_category(c: &BiorderedCategory, partition: &[usize]) -> Result<BiorderedCategory> {
    check_biordered_congruence(c, partition)?;
    let labels = crate::semigroup::Congruence::from_labels(partition).partition;
    let k = labels.iter().max().map_or(0, |x| x + 1);
    let mut objects: Vec<usize> = c.objects.iter().map(|&o| labels[o]).collect();
    objects.sort_unstable();
    objects.dedup();
    if objects.len() != c.objects.len() {
        return bad_objects();
    }
    let mut dom = vec![0; k];
    let mut cod = vec![0; k];
    for a in 0..c.m {
        dom[labels[a]] = labels[c.dom(a)];
        cod[labels[a]] = labels[c.cod(a)];
    }
    let mut seen = HashSet::new();
    let mut dedup = |v: Vec<[usize; 3]>| -> Vec<[usize; 3]> {
        seen.clear();
        v.into_iter().filter(|t| seen.insert(*t)).collect()
    };
    let comp = dedup(c.comp.iter().map(|(&(a, b), &ab)| [labels[a], labels[b], labels[ab]]).collect());
    let lres = dedup(c.lres.iter().map(|(&(p, a), &u)| [labels[p], labels[a], labels[u]]).collect());
    let rres = dedup(c.rres.iter().map(|(&(a, q), &u)| [labels[a], labels[q], labels[u]]).collect());
    let mut obj_leq: Vec<[usize; 2]> = c.obj_leq.iter().map(|&(p, q)| [labels[p], labels[q]]).collect();
    obj_leq.sort_unstable();
    obj_leq.dedup();
    BiorderedCategory::from_parts(CategoryParts {
        m: k,
        objects,
        dom,
        cod,
        comp,
        obj_leq,
        lres,
        rres,
        bound: c.bound,
    })
}

fn bad_objects<T>() -> Result<T> {
    Err(DrcError::Incompatible { op: "objects".into(), witness: vec![] })
}

/// Category with identities only, ordered by `leq` on `0..n`.
pub fn discrete(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<BiorderedCategory> {
    let objects: Vec<usize> = (0..n).collect();
    let mut obj_leq = Vec::new();
    let mut lres = Vec::new();
    let mut rres = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if leq(p, q) {
                obj_leq.push([p, q]);
            }
        }
    }
    // In a category of identities a restriction of q to p ≤ q must be p itself.
    for &[p, q] in &obj_leq {
        lres.push([p, q, p]);
        rres.push([q, p, p]);
    }
    BiorderedCategory::from_parts(CategoryParts {
        m: n,
        objects: objects.clone(),
        dom: objects.clone(),
        cod: objects.clone(),
        comp: objects.iter().map(|&p| [p, p, p]).collect(),
        obj_leq,
        lres,
        rres,
        bound: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_category_passes_and_is_self_opposite() {
        let c = discrete(3, |p, q| p == q).unwrap();
        assert!(check_category(&c).all_passed());
        assert!(check_biordered(&c).all_passed());
        assert_eq!(opposite_cat(&c), c);
        assert!(is_biordered_functor(&c, &c, &[0, 1, 2]));
    }

    #[test]
    fn ordered_identities_pass() {
        let c = discrete(3, |p, q| p <= q).unwrap();
        assert!(check_biordered(&c).all_passed());
        let (l, r) = derive_orders(&c);
        assert!(is_partial_order_table(&l) && is_partial_order_table(&r));
        assert_eq!(vt_map(&c, 2), vec![(0, Some(0)), (1, Some(1)), (2, Some(2))]);
    }

    #[test]
    fn loader_rejects_bad_definedness() {
        let mut p = discrete(2, |p, q| p == q).unwrap().to_parts();
        p.comp.push([0, 1, 0]);
        assert!(BiorderedCategory::from_parts(p).is_err());
        let mut p = discrete(2, |p, q| p == q).unwrap().to_parts();
        p.lres.push([0, 1, 0]);
        assert!(BiorderedCategory::from_parts(p).is_err());
    }

    #[test]
    fn merging_objects_is_rejected() {
        let c = discrete(2, |p, q| p == q).unwrap();
        assert!(matches!(
            check_biordered_congruence(&c, &[0, 0]),
            Err(DrcError::Incompatible { .. })
        ));
        assert_eq!(quotient_category(&c, &[0, 1]).unwrap(), c);
    }
}
