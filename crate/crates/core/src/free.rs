//! The presentation of the free projection-generated DRC-semigroup on a
//! projection algebra, truncated by word length, together with its
//! transformation-pair model and the special-class predicates.
//!
//! Letters are projection indices. The defining relations are
//! `x_p x_p = x_p`, `x_p x_q = x_p x_{pθ_q}` and `x_p x_q = x_{qδ_p} x_q`.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biordered::derive_orders;
use crate::chain::{enumerate_paths, left_restrict_path, right_restrict_path, Path};
use crate::error::{DrcError, Result};
use crate::functors::c_of;
use crate::projection_algebra::{pa_morphism_witness, ProjectionAlgebra};
use crate::report::{first1, first2, AxiomReport};
use crate::semigroup::{check_drc_axioms, projection_algebra_of, projections, FiniteSemigroup};
use crate::unionfind::UnionFind;

pub const DEFAULT_SLACK: usize = 2;
/// Largest word universe the bounded closure will materialise.
pub const WORD_UNIVERSE_CAP: usize = 2_000_000;
pub const MP_CAP: usize = 100_000;

/// Nonempty word over the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(pa: &ProjectionAlgebra, letters: Vec<usize>) -> Result<Word> {
        if letters.is_empty() {
            return Err(DrcError::Malformed("empty word".into()));
        }
        if let Some(&x) = letters.iter().find(|&&x| x >= pa.n()) {
            return Err(DrcError::Malformed(format!("letter {x} out of range")));
        }
        Ok(Word(letters))
    }
    pub fn letters(&self) -> &[usize] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
}

fn sweep(pa: &ProjectionAlgebra, ps: &[usize]) -> Vec<usize> {
    let k = ps.len();
    if k == 1 {
        return ps.to_vec();
    }
    let (a, b) = (ps[k - 2], ps[k - 1]);
    let left = pa.de(a, b);
    let right = pa.th(b, a);
    let mut head = ps[..k - 2].to_vec();
    head.push(left);
    let mut out = sweep(pa, &head);
    let last = *out.last().unwrap();
    out.push(pa.th(right, last));
    out
}

/// A path `𝔭` with `w ∼ w_𝔭`, each entry below the corresponding letter,
/// by the right-to-left pair normalisation sweep followed by deleting
/// adjacent duplicates.
pub fn rewrite_to_path(pa: &ProjectionAlgebra, w: &Word) -> Path {
    let mut v = sweep(pa, &w.0);
    v.dedup();
    Path::new(pa, v).expect("the sweep produces F-related entries")
}

/// `𝔭⌐_s ⊕ ⌐_t 𝔮` with `s = q_1δ_{p_k}` and `t = p_kθ_{q_1}`; represents
/// the product of the two path words.
pub fn path_product(pa: &ProjectionAlgebra, p: &Path, q: &Path) -> Path {
    let (pk, q1) = (p.r(), q.d());
    let s = pa.de(pk, q1);
    let t = pa.th(q1, pk);
    let left = right_restrict_path(pa, p, s).expect("s is below r(p)");
    let right = left_restrict_path(pa, t, q).expect("t is below d(q)");
    let mut v = left.entries().to_vec();
    v.extend_from_slice(right.entries());
    Path::new(pa, v).expect("s F t joins the halves")
}

/// Pair `(θ_{p_1}⋯θ_{p_k}, δ_{p_k}⋯δ_{p_1})` with a path representing it.
/// Image tables are indexed by the argument: `theta_comp[t]` is `t θ_{p_1}⋯θ_{p_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MPElement {
    pub theta_comp: Vec<usize>,
    pub delta_comp: Vec<usize>,
    pub witness: Path,
}

impl MPElement {
    pub fn generator(pa: &ProjectionAlgebra, p: usize) -> MPElement {
        MPElement {
            theta_comp: pa.theta_table()[p].clone(),
            delta_comp: pa.delta_table()[p].clone(),
            witness: Path::single(p),
        }
    }

    pub fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.theta_comp.clone(), self.delta_comp.clone())
    }

    /// `(αβ, β′α′)`; the witness is the restricted concatenation.
    pub fn times(&self, other: &MPElement, pa: &ProjectionAlgebra) -> MPElement {
        MPElement {
            theta_comp: self.theta_comp.iter().map(|&t| other.theta_comp[t]).collect(),
            delta_comp: other.delta_comp.iter().map(|&t| self.delta_comp[t]).collect(),
            witness: path_product(pa, &self.witness, &other.witness),
        }
    }
}

/// Image of a word in the transformation-pair model.
pub fn psi(pa: &ProjectionAlgebra, w: &Word) -> MPElement {
    let (theta_comp, delta_comp) = psi_maps(pa, &w.0);
    MPElement { theta_comp, delta_comp, witness: rewrite_to_path(pa, w) }
}

fn psi_maps(pa: &ProjectionAlgebra, letters: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let th = (0..pa.n()).map(|t| letters.iter().fold(t, |x, &p| pa.th(p, x))).collect();
    let de = (0..pa.n()).map(|t| letters.iter().rev().fold(t, |x, &p| pa.de(p, x))).collect();
    (th, de)
}

/// The transformation-pair semigroup with a witness per element; element
/// `p < n` is the generator of projection `p`.
#[derive(Debug, Clone)]
pub struct MpModel {
    pub elements: Vec<MPElement>,
    pub semigroup: FiniteSemigroup,
    index: HashMap<(Vec<usize>, Vec<usize>), usize>,
}

impl MpModel {
    pub fn index_of(&self, theta_comp: &[usize], delta_comp: &[usize]) -> Option<usize> {
        self.index.get(&(theta_comp.to_vec(), delta_comp.to_vec())).copied()
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Closure of the generators `(θ_p, δ_p)`; `D` and `R` read off witness endpoints.
pub fn mp_of(pa: &ProjectionAlgebra) -> Result<MpModel> {
    let n = pa.n();
    let mut elements: Vec<MPElement> = Vec::new();
    let mut index: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    for p in 0..n {
        let g = MPElement::generator(pa, p);
        if let Some(&q) = index.get(&g.key()) {
            return Err(DrcError::AxiomFailure { name: "generators are distinct".into(), witness: vec![q, p] });
        }
        index.insert(g.key(), p);
        elements.push(g);
    }
    let mut i = 0;
    while i < elements.len() {
        for p in 0..n {
            let x = elements[i].times(&elements[p], pa);
            if !index.contains_key(&x.key()) {
                if elements.len() >= MP_CAP {
                    return Err(DrcError::TooLarge { what: "transformation-pair closure".into(), size: elements.len() + 1, cap: MP_CAP });
                }
                index.insert(x.key(), elements.len());
                elements.push(x);
            }
        }
        i += 1;
    }
    let m = elements.len();
    let mul: Vec<Vec<usize>> = (0..m)
        .into_par_iter()
        .map(|a| {
            (0..m)
                .map(|b| {
                    let e = &elements[a];
                    let f = &elements[b];
                    let th: Vec<usize> = e.theta_comp.iter().map(|&t| f.theta_comp[t]).collect();
                    let de: Vec<usize> = f.delta_comp.iter().map(|&t| e.delta_comp[t]).collect();
                    index[&(th, de)]
                })
                .collect()
        })
        .collect();
    let d = elements.iter().map(|e| e.witness.d()).collect();
    let r = elements.iter().map(|e| e.witness.r()).collect();
    let semigroup = FiniteSemigroup::new(mul, d, r)?;
    Ok(MpModel { elements, semigroup, index })
}

/// Consistency of the model: witnesses evaluate to their maps, product
/// witnesses have the stored endpoints, and the structural conclusions.
pub fn certify_mp(pa: &ProjectionAlgebra, mp: &MpModel) -> AxiomReport {
    let mut rep = AxiomReport::new("transformation-pair model");
    let m = mp.len();
    let n = pa.n();
    rep.record(
        "witness paths evaluate to the stored pair",
        first1(m, |a| {
            let e = &mp.elements[a];
            let (th, de) = psi_maps(pa, e.witness.entries());
            th == e.theta_comp && de == e.delta_comp
        }),
    );
    rep.record(
        "product witnesses have the stored endpoints",
        first2(m, |a, b| {
            let c = mp.semigroup.mul(a, b);
            let w = path_product(pa, &mp.elements[a].witness, &mp.elements[b].witness);
            w.d() == mp.elements[c].witness.d() && w.r() == mp.elements[c].witness.r()
        }),
    );
    let s = &mp.semigroup;
    let drc = check_drc_axioms(s);
    rep.record("DRC axioms", drc.first_failure().map(|f| f.witness.clone().unwrap_or_default()));
    let proj = projections(s);
    let expected: Vec<usize> = (0..n).collect();
    rep.record("projections are the generators", if proj == expected { None } else { Some(proj) });
    let gen = s.generated_by(&expected);
    rep.record("projection-generated", if gen.len() == m { None } else { (0..m).find(|x| !gen.contains(x)).map(|x| vec![x]) });
    if drc.all_passed() {
        match projection_algebra_of(s) {
            Ok(q) => rep.record("projection algebra is the input", if q == *pa { None } else { pa_morphism_witness(pa, &q, &expected).or(Some(vec![])) }),
            Err(_) => rep.record("projection algebra is the input", Some(vec![])),
        }
        let mu = crate::semigroup::mu_congruence(s);
        rep.record("fundamental", if mu.is_identity() { None } else { Some(mu.partition.clone()) });
    }
    rep
}

/// Truncation of the free semigroup: classes of path words of length at
/// most `max_len` under the relations, explored through words of length at
/// most `max_len + slack`.
#[derive(Debug, Clone)]
pub struct BoundedFreeSemigroup {
    pa: ProjectionAlgebra,
    max_len: usize,
    slack: usize,
    reps: Vec<Path>,
    generators: Vec<usize>,
    mul: Vec<Vec<Option<usize>>>,
    d: Vec<usize>,
    r: Vec<usize>,
    component: HashMap<Vec<usize>, usize>,
    component_class: Vec<Option<usize>>,
}

/// Words one relation application away from `w`, in either direction.
fn neighbours(pa: &ProjectionAlgebra, w: &[usize], cap: usize, out: &mut Vec<Vec<usize>>) {
    out.clear();
    let n = pa.n();
    for i in 0..w.len() {
        if w.len() < cap {
            let mut v = w.to_vec();
            v.insert(i, w[i]);
            out.push(v);
        }
        if i + 1 == w.len() {
            break;
        }
        let (a, b) = (w[i], w[i + 1]);
        if a == b {
            let mut v = w.to_vec();
            v.remove(i);
            out.push(v);
        }
        for q in 0..n {
            if q != b && (q == pa.th(b, a) || pa.th(q, a) == b) {
                let mut v = w.to_vec();
                v[i + 1] = q;
                out.push(v);
            }
            if q != a && (q == pa.de(a, b) || pa.de(q, b) == a) {
                let mut v = w.to_vec();
                v[i] = q;
                out.push(v);
            }
        }
    }
}

fn universe_size(n: usize, cap: usize) -> usize {
    (1..=cap).fold(0usize, |acc, k| acc.saturating_add(n.saturating_pow(k as u32)))
}

pub fn build_bounded_free(pa: &ProjectionAlgebra, max_len: usize) -> Result<BoundedFreeSemigroup> {
    build_bounded_free_with_slack(pa, max_len, DEFAULT_SLACK)
}

pub fn build_bounded_free_with_slack(pa: &ProjectionAlgebra, max_len: usize, slack: usize) -> Result<BoundedFreeSemigroup> {
    if max_len == 0 {
        return Err(DrcError::Malformed("max_len must be at least 1".into()));
    }
    let cap = max_len + slack;
    let size = universe_size(pa.n(), cap);
    if size > WORD_UNIVERSE_CAP {
        return Err(DrcError::TooLarge { what: "word universe".into(), size, cap: WORD_UNIVERSE_CAP });
    }
    let seeds: Vec<Path> = enumerate_paths(pa, max_len);
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut uf = UnionFind::new(0);
    let mut queue = VecDeque::new();
    for s in &seeds {
        let v = s.entries().to_vec();
        ids.insert(v.clone(), words.len());
        words.push(v);
        uf.push();
        queue.push_back(words.len() - 1);
    }
    let mut buf = Vec::new();
    while let Some(i) = queue.pop_front() {
        let w = words[i].clone();
        neighbours(pa, &w, cap, &mut buf);
        for v in buf.drain(..) {
            let j = match ids.get(&v) {
                Some(&j) => j,
                None => {
                    let j = words.len();
                    ids.insert(v.clone(), j);
                    words.push(v);
                    uf.push();
                    queue.push_back(j);
                    j
                }
            };
            uf.union(i, j);
        }
    }
    let labels = uf.labels();
    let mut root_component: HashMap<usize, usize> = HashMap::new();
    let mut comp_of_word = Vec::with_capacity(words.len());
    for &l in &labels {
        let next = root_component.len();
        comp_of_word.push(*root_component.entry(l).or_insert(next));
    }
    let mut component_class = vec![None; root_component.len()];
    let mut reps = Vec::new();
    for (i, s) in seeds.iter().enumerate() {
        let c = comp_of_word[i];
        if component_class[c].is_none() {
            component_class[c] = Some(reps.len());
            reps.push(s.clone());
        }
    }
    let component: HashMap<Vec<usize>, usize> = words.into_iter().zip(comp_of_word).collect();
    let class_of = |v: &[usize]| component.get(v).and_then(|&c| component_class[c]);
    let generators: Vec<usize> = (0..pa.n()).map(|p| class_of(&[p]).expect("generators are seeds")).collect();
    let d = reps.iter().map(|p| generators[p.d()]).collect();
    let r = reps.iter().map(|p| generators[p.r()]).collect();
    let k = reps.len();
    let mul = (0..k)
        .into_par_iter()
        .map(|a| {
            (0..k)
                .map(|b| {
                    let mut v = path_product(pa, &reps[a], &reps[b]).entries().to_vec();
                    v.dedup();
                    if v.len() <= max_len {
                        return class_of(&v);
                    }
                    let mut cat = reps[a].entries().to_vec();
                    cat.extend_from_slice(reps[b].entries());
                    if cat.len() <= cap {
                        class_of(&cat)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    Ok(BoundedFreeSemigroup { pa: pa.clone(), max_len, slack, reps, generators, mul, d, r, component, component_class })
}

impl BoundedFreeSemigroup {
    pub fn pa(&self) -> &ProjectionAlgebra {
        &self.pa
    }
    pub fn max_len(&self) -> usize {
        self.max_len
    }
    pub fn slack(&self) -> usize {
        self.slack
    }
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }
    /// Shortest, then lexicographically least, path word of the class.
    pub fn representative(&self, c: usize) -> &Path {
        &self.reps[c]
    }
    /// Class of `x_p`.
    pub fn generator(&self, p: usize) -> usize {
        self.generators[p]
    }
    /// `None` when the product could not be closed within the bound.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.mul[a][b]
    }
    pub fn d(&self, c: usize) -> usize {
        self.d[c]
    }
    pub fn r(&self, c: usize) -> usize {
        self.r[c]
    }
    pub fn mul_table(&self) -> &[Vec<Option<usize>>] {
        &self.mul
    }
    pub fn unknown_products(&self) -> usize {
        self.mul.iter().flatten().filter(|x| x.is_none()).count()
    }
    /// Class containing a word reached by the closure, if it has an in-bound path word.
    pub fn class_of_word(&self, letters: &[usize]) -> Option<usize> {
        self.component.get(letters).and_then(|&c| self.component_class[c])
    }
    /// Every explored word with its class.
    pub fn explored_words(&self) -> impl Iterator<Item = (&[usize], Option<usize>)> + '_ {
        self.component.iter().map(|(w, &c)| (w.as_slice(), self.component_class[c]))
    }
}

/// Number of classes among all words of length at most `max_len`, by
/// closing every word of length at most `max_len + slack` under the
/// relations read left to right.
pub fn closure_class_count(pa: &ProjectionAlgebra, max_len: usize, slack: usize) -> Result<usize> {
    let n = pa.n();
    let cap = max_len + slack;
    let size = universe_size(n, cap);
    if size > WORD_UNIVERSE_CAP {
        return Err(DrcError::TooLarge { what: "word universe".into(), size, cap: WORD_UNIVERSE_CAP });
    }
    // Base-n encoding with an offset per length keeps every word at a fixed index.
    let mut offsets = vec![0usize; cap + 2];
    for k in 1..=cap {
        offsets[k + 1] = offsets[k] + n.pow(k as u32);
    }
    let encode = |w: &[usize]| offsets[w.len()] + w.iter().fold(0, |acc, &x| acc * n + x);
    let decode = |len: usize, mut code: usize| {
        let mut w = vec![0; len];
        for i in (0..len).rev() {
            w[i] = code % n;
            code /= n;
        }
        w
    };
    let mut uf = UnionFind::new(size);
    for len in 1..=cap {
        for code in 0..n.pow(len as u32) {
            let w = decode(len, code);
            let me = encode(&w);
            for i in 0..len.saturating_sub(1) {
                let (a, b) = (w[i], w[i + 1]);
                if a == b {
                    let mut v = w.clone();
                    v.remove(i);
                    uf.union(me, encode(&v));
                }
                let mut v = w.clone();
                v[i + 1] = pa.th(b, a);
                uf.union(me, encode(&v));
                let mut v = w.clone();
                v[i] = pa.de(a, b);
                uf.union(me, encode(&v));
            }
        }
    }
    let mut roots = std::collections::HashSet::new();
    for x in 0..offsets[max_len + 1] {
        roots.insert(uf.find(x));
    }
    Ok(roots.len())
}

/// Internal consistency of a truncation: rewriting, endpoints, the
/// restriction and product lemmas as class equalities, and the DRC laws on
/// the closed part of the table.
pub fn certify_bounded_free(bf: &BoundedFreeSemigroup) -> AxiomReport {
    let pa = &bf.pa;
    let n = pa.n();
    let k = bf.class_count();
    let cap = bf.max_len + bf.slack;
    let mut rep = AxiomReport::new("bounded free semigroup").with_bound(bf.max_len);

    let mut short: Vec<Vec<usize>> = vec![vec![]];
    let mut all_short = Vec::new();
    for _ in 0..bf.max_len {
        short = short.iter().flat_map(|w| (0..n).map(move |x| [w.as_slice(), &[x]].concat())).collect();
        all_short.extend(short.iter().cloned());
    }
    rep.record(
        "every short word rewrites to a path in its own class",
        all_short.par_iter().enumerate().find_map_first(|(i, w)| {
            let p = rewrite_to_path(pa, &Word(w.clone()));
            let ok = sweep(pa, w).iter().zip(w).all(|(&a, &b)| pa.leq(a, b));
            match (bf.class_of_word(w), bf.class_of_word(p.entries())) {
                (Some(a), Some(b)) if a == b && ok => None,
                _ => Some(vec![i]),
            }
        }),
    );
    rep.record(
        "generator classes are pairwise distinct",
        first2(n, |p, q| p == q || bf.generators[p] != bf.generators[q]),
    );
    let explored: Vec<(&[usize], Option<usize>)> = bf.explored_words().collect();
    rep.record(
        "path words in one class share endpoints",
        explored.par_iter().enumerate().find_map_first(|(i, (w, c))| match c {
            Some(c) if w.windows(2).all(|x| pa.f_related(x[0], x[1])) => {
                let r = &bf.reps[*c];
                (w[0] != r.d() || w[w.len() - 1] != r.r()).then(|| vec![i])
            }
            _ => None,
        }),
    );
    let rep_maps: Vec<(Vec<usize>, Vec<usize>)> = bf.reps.iter().map(|p| psi_maps(pa, p.entries())).collect();
    rep.record(
        "the transformation-pair image is constant on classes",
        explored.par_iter().enumerate().find_map_first(|(i, (w, c))| match c {
            Some(c) => (psi_maps(pa, w) != rep_maps[*c]).then(|| vec![i, *c]),
            None => None,
        }),
    );
    rep.record(
        "x_s w_𝔭 and w_𝔭 x_t are the restricted path words",
        first2(k.max(n), |c, s| {
            if c >= k || s >= n {
                return true;
            }
            let p = &bf.reps[c];
            if p.len() + 1 > cap {
                return true;
            }
            let left_ok = !pa.leq(s, p.d()) || {
                let w = [&[s], p.entries()].concat();
                let u = left_restrict_path(pa, s, p).unwrap();
                bf.class_of_word(&w) == bf.class_of_word(u.entries())
            };
            let right_ok = !pa.leq(s, p.r()) || {
                let w = [p.entries(), &[s]].concat();
                let u = right_restrict_path(pa, p, s).unwrap();
                bf.class_of_word(&w) == bf.class_of_word(u.entries())
            };
            left_ok && right_ok
        }),
    );
    rep.record(
        "concatenation agrees with the restricted path product",
        first2(k, |a, b| {
            let (p, q) = (&bf.reps[a], &bf.reps[b]);
            if p.len() + q.len() > cap {
                return true;
            }
            let w = [p.entries(), q.entries()].concat();
            let u = path_product(pa, p, q);
            u.len() > cap || bf.class_of_word(&w) == bf.class_of_word(u.entries())
        }),
    );
    let known = |a: usize, b: usize| bf.mul[a][b];
    rep.record("D(a)a = a and aR(a) = a", first1(k, |a| known(bf.d[a], a) == Some(a) && known(a, bf.r[a]) == Some(a)));
    rep.record(
        "D(ab) = D(aD(b)) and R(ab) = R(R(a)b) where closed",
        first2(k, |a, b| match (known(a, b), known(a, bf.d[b]), known(bf.r[a], b)) {
            (Some(ab), Some(x), Some(y)) => bf.d[ab] == bf.d[x] && bf.r[ab] == bf.r[y],
            _ => true,
        }),
    );
    rep.record(
        "R(D(a)) = D(a) and D(R(a)) = R(a)",
        first1(k, |a| bf.r[bf.d[a]] == bf.d[a] && bf.d[bf.r[a]] == bf.r[a]),
    );
    rep.record(
        "associativity where closed",
        crate::report::first3(k, |a, b, c| {
            match (known(a, b).and_then(|x| known(x, c)), known(b, c).and_then(|y| known(a, y))) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
        }),
    );
    rep.record(
        "generator θ and δ are the projection algebra operations",
        first2(n, |p, q| {
            let (gp, gq) = (bf.generators[p], bf.generators[q]);
            known(gp, gq).is_some_and(|x| bf.r[x] == bf.generators[pa.th(q, p)])
                && known(gq, gp).is_some_and(|x| bf.d[x] == bf.generators[pa.de(q, p)])
        }),
    );
    rep
}

/// Certification against the exhaustive closure count and the
/// transformation-pair model.
pub fn compare_with_closure_and_model(bf: &BoundedFreeSemigroup, mp: &MpModel) -> Result<AxiomReport> {
    let pa = &bf.pa;
    let k = bf.class_count();
    let mut rep = AxiomReport::new("bounded free semigroup against closure and model").with_bound(bf.max_len);
    let count = closure_class_count(pa, bf.max_len, bf.slack)?;
    rep.record_note(
        "class count equals the exhaustive closure count",
        count == k,
        format!("{k} classes, closure gives {count}"),
    );
    let image: Vec<Option<usize>> = bf
        .reps
        .iter()
        .map(|p| {
            let (th, de) = psi_maps(pa, p.entries());
            mp.index_of(&th, &de)
        })
        .collect();
    rep.record("every class maps into the model", first1(k, |c| image[c].is_some()));
    if image.iter().all(Option::is_some) {
        let img: Vec<usize> = image.iter().map(|x| x.unwrap()).collect();
        let s = &mp.semigroup;
        rep.record(
            "the map to the model preserves closed products",
            first2(k, |a, b| bf.mul[a][b].is_none_or(|c| img[c] == s.mul(img[a], img[b]))),
        );
        rep.record(
            "the map to the model preserves D and R",
            first1(k, |c| img[bf.d[c]] == s.d(img[c]) && img[bf.r[c]] == s.r(img[c])),
        );
        rep.record(
            "the map to the model is injective on projections",
            first2(pa.n(), |p, q| p == q || img[bf.generators[p]] != img[bf.generators[q]]),
        );
        let mut hit = vec![false; mp.len()];
        for &x in &img {
            hit[x] = true;
        }
        let covered = hit.iter().filter(|&&h| h).count();
        rep.record_note(
            "image in the model",
            true,
            format!("{covered} of {} elements reached, {} kernel classes", mp.len(), covered),
        );
    }
    Ok(rep)
}

/// Kernel classes of the map to the model: two classes are related when
/// their images agree.
pub fn kernel_labels(bf: &BoundedFreeSemigroup) -> Vec<(Vec<usize>, Vec<usize>)> {
    bf.reps.iter().map(|p| psi_maps(&bf.pa, p.entries())).collect()
}

/// Result of extending a projection algebra morphism to the truncation.
#[derive(Debug, Clone)]
pub struct InducedMorphism {
    pub images: Vec<usize>,
    pub report: AxiomReport,
}

/// `Φ(w̄) = φ(p_1)⋯φ(p_k)`; `phi[p]` is an element of `s` that must be a
/// projection, with `φ` a projection algebra morphism.
pub fn induced_morphism(bf: &BoundedFreeSemigroup, s: &FiniteSemigroup, phi: &[usize]) -> Result<InducedMorphism> {
    let pa = &bf.pa;
    let n = pa.n();
    if phi.len() != n {
        return Err(DrcError::Malformed(format!("map has length {}, expected {n}", phi.len())));
    }
    let proj = projections(s);
    let mut pos = Vec::with_capacity(n);
    for (p, &x) in phi.iter().enumerate() {
        match proj.binary_search(&x) {
            Ok(i) => pos.push(i),
            Err(_) => return Err(DrcError::Incompatible { op: "projection".into(), witness: vec![p, x] }),
        }
    }
    let target = projection_algebra_of(s)?;
    if let Some(w) = pa_morphism_witness(pa, &target, &pos) {
        return Err(DrcError::Incompatible { op: "projection algebra morphism".into(), witness: w });
    }
    let k = bf.class_count();
    let eval = |w: &[usize]| w.iter().map(|&p| phi[p]).reduce(|a, b| s.mul(a, b)).unwrap();
    let images: Vec<usize> = bf.reps.iter().map(|p| eval(p.entries())).collect();
    let mut rep = AxiomReport::new("induced morphism").with_bound(bf.max_len);
    let explored: Vec<(&[usize], Option<usize>)> = bf.explored_words().collect();
    rep.record(
        "constant on classes",
        explored.par_iter().enumerate().find_map_first(|(i, (w, c))| match c {
            Some(c) => (eval(w) != images[*c]).then(|| vec![i, *c]),
            None => None,
        }),
    );
    let preserves = |img: &[usize], a: usize, b: usize| bf.mul[a][b].is_none_or(|c| img[c] == s.mul(img[a], img[b]));
    rep.record("preserves closed products", first2(k, |a, b| preserves(&images, a, b)));
    rep.record(
        "preserves D and R",
        first1(k, |c| images[bf.d[c]] == s.d(images[c]) && images[bf.r[c]] == s.r(images[c])),
    );
    rep.record("restricts to the given map on projections", first1(n, |p| images[bf.generators[p]] == phi[p]));
    // Every single-class change of value must break one of the preserved laws.
    rep.record(
        "no other value on any class is compatible",
        (0..k).into_par_iter().find_map_first(|c| {
            (0..s.n()).filter(|&v| v != images[c]).find_map(|v| {
                let mut alt = images.clone();
                alt[c] = v;
                let generator_fixed = (0..n).all(|p| alt[bf.generators[p]] == phi[p]);
                let laws = (0..k).all(|x| {
                    preserves(&alt, c, x)
                        && preserves(&alt, x, c)
                        && alt[bf.d[x]] == s.d(alt[x])
                        && alt[bf.r[x]] == s.r(alt[x])
                }) && (0..k).all(|a| (0..k).all(|b| bf.mul[a][b] != Some(c) || preserves(&alt, a, b)));
                (generator_fixed && laws).then(|| vec![c, v])
            })
        }),
    );
    Ok(InducedMorphism { images, report: rep })
}

/// Projections commute, with the consequences for the projection algebra.
pub fn ehresmann_report(s: &FiniteSemigroup) -> AxiomReport {
    let n = s.n();
    let mut rep = AxiomReport::new("Ehresmann law");
    rep.record(
        "D(a)D(b) = D(b)D(a)",
        first2(n, |a, b| s.mul(s.d(a), s.d(b)) == s.mul(s.d(b), s.d(a))),
    );
    rep.record(
        "R(a)R(b) = R(b)R(a)",
        first2(n, |a, b| s.mul(s.r(a), s.r(b)) == s.mul(s.r(b), s.r(a))),
    );
    let proj = projections(s);
    let Ok(pa) = projection_algebra_of(s) else {
        rep.record("projection algebra", Some(vec![]));
        return rep;
    };
    let k = proj.len();
    let pos = |x: usize| proj.binary_search(&x).ok();
    rep.record(
        "commuting projections have equal θ, δ images and product",
        first2(k, |i, j| {
            let (p, q) = (proj[i], proj[j]);
            let commute = s.mul(p, q) == s.mul(q, p);
            let two = pa.th(i, j) == pa.th(j, i) && pa.de(i, j) == pa.de(j, i);
            let four = two && pa.th(j, i) == pa.de(j, i) && pos(s.mul(p, q)) == Some(pa.th(j, i));
            commute == two && two == four
        }),
    );
    if rep.all_passed() {
        let meet = |i: usize, j: usize| -> Option<usize> {
            let lower: Vec<usize> = (0..k).filter(|&x| pa.leq(x, i) && pa.leq(x, j)).collect();
            lower.iter().copied().find(|&m| lower.iter().all(|&x| pa.leq(x, m)))
        };
        rep.record(
            "projections form a meet semilattice with meet pq",
            first2(k, |i, j| meet(i, j).is_some() && meet(i, j) == pos(s.mul(proj[i], proj[j]))),
        );
        rep.record("F is equality", first2(k, |i, j| i == j || !pa.f_related(i, j)));
    }
    rep
}

pub fn is_ehresmann(s: &FiniteSemigroup) -> bool {
    let n = s.n();
    check_drc_axioms(s).all_passed()
        && first2(n, |a, b| s.mul(s.d(a), s.d(b)) == s.mul(s.d(b), s.d(a))).is_none()
}

/// `D(ab)a = aD(R(a)b)` and `aR(ba) = R(bD(a))a`.
pub fn drc_restriction_report(s: &FiniteSemigroup) -> AxiomReport {
    let n = s.n();
    let mut rep = AxiomReport::new("DRC-restriction laws");
    rep.record(
        "D(ab)a = aD(R(a)b)",
        first2(n, |a, b| s.mul(s.d(s.mul(a, b)), a) == s.mul(a, s.d(s.mul(s.r(a), b)))),
    );
    rep.record(
        "aR(ba) = R(bD(a))a",
        first2(n, |a, b| s.mul(a, s.r(s.mul(b, a))) == s.mul(s.r(s.mul(b, s.d(a))), a)),
    );
    rep
}

pub fn is_drc_restriction(s: &FiniteSemigroup) -> bool {
    check_drc_axioms(s).all_passed() && drc_restriction_report(s).all_passed()
}

/// Whether the two derived orders on the category of `s` coincide.
pub fn orders_coincide(s: &FiniteSemigroup) -> Result<bool> {
    let c = c_of(s)?;
    let (l, r) = derive_orders(c.cat());
    Ok(l == r)
}

/// Law check and order coincidence side by side.
pub fn restriction_diagnostic(s: &FiniteSemigroup) -> Result<AxiomReport> {
    let law = is_drc_restriction(s);
    let orders = orders_coincide(s)?;
    let mut rep = drc_restriction_report(s);
    rep.record_note(
        "order coincidence agrees with the laws",
        law == orders,
        format!("laws {}, orders coincide {}", law, orders),
    );
    Ok(rep)
}

/// Unique inverses, with `D(a) = aa⁻¹` and `R(a) = a⁻¹a`.
pub fn is_inverse_semigroup(s: &FiniteSemigroup) -> bool {
    let n = s.n();
    (0..n).all(|a| {
        let inv: Vec<usize> =
            (0..n).filter(|&b| s.mul(s.mul(a, b), a) == a && s.mul(s.mul(b, a), b) == b).collect();
        inv.len() == 1 && s.d(a) == s.mul(a, inv[0]) && s.r(a) == s.mul(inv[0], a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn rewriting_examples() {
        let c = corpus::constant_pa(2);
        assert_eq!(rewrite_to_path(&c, &Word::new(&c, vec![0, 1]).unwrap()).entries(), &[0, 1]);
        assert_eq!(rewrite_to_path(&c, &Word::new(&c, vec![1, 1, 0, 0]).unwrap()).entries(), &[1, 0]);
        let s = corpus::semilattice_pa(3);
        assert_eq!(rewrite_to_path(&s, &Word::new(&s, vec![2, 1]).unwrap()).entries(), &[1]);
        assert_eq!(rewrite_to_path(&s, &Word::new(&s, vec![2, 0, 2]).unwrap()).entries(), &[0]);
        let d = corpus::diamond_pa();
        assert_eq!(rewrite_to_path(&d, &Word::new(&d, vec![1, 2]).unwrap()).entries(), &[0]);
    }

    #[test]
    fn mp_sizes() {
        assert_eq!(mp_of(&corpus::semilattice_pa(2)).unwrap().len(), 2);
        let c = mp_of(&corpus::constant_pa(2)).unwrap();
        assert_eq!(c.len(), 4);
        assert!(certify_mp(&corpus::constant_pa(2), &c).all_passed());
    }

    #[test]
    fn bounded_free_counts() {
        let bf = build_bounded_free(&corpus::semilattice_pa(2), 3).unwrap();
        assert_eq!(bf.class_count(), 2);
        let bf = build_bounded_free(&corpus::constant_pa(2), 4).unwrap();
        assert_eq!(bf.class_count(), 8);
        assert!(certify_bounded_free(&bf).all_passed(), "{}", certify_bounded_free(&bf));
        assert_eq!(closure_class_count(&corpus::constant_pa(2), 4, 2).unwrap(), 8);
    }

    #[test]
    fn special_classes_on_small_members() {
        let b2 = corpus::brandt_b2();
        assert!(is_inverse_semigroup(&b2));
        assert!(is_ehresmann(&b2));
        assert!(ehresmann_report(&b2).all_passed());
        let rb = corpus::rectangular_band(2, 2);
        assert!(!is_inverse_semigroup(&rb));
        assert!(!is_ehresmann(&rb));
        assert!(restriction_diagnostic(&rb).unwrap().all_passed());
    }

    #[test]
    fn induced_morphism_into_the_model_is_the_canonical_map() {
        let pa = corpus::constant_pa(2);
        let bf = build_bounded_free(&pa, 4).unwrap();
        let mp = mp_of(&pa).unwrap();
        let im = induced_morphism(&bf, &mp.semigroup, &[0, 1]).unwrap();
        assert!(im.report.all_passed(), "{}", im.report);
        let canon: Vec<usize> = kernel_labels(&bf).iter().map(|(t, d)| mp.index_of(t, d).unwrap()).collect();
        assert_eq!(im.images, canon);
    }
}
