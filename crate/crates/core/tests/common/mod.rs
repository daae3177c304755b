//! Brute-force evaluators written directly from the definitions, sharing no
//! code with the library beyond the table accessors.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use drc_core::cpc::ChainedProjectionCategory;
use drc_core::star::RationalMatrix;
use drc_core::{FiniteSemigroup, ProjectionAlgebra};
use itertools::Itertools;

/// `x θ_p` in postfix reading.
pub fn th(pa: &ProjectionAlgebra, x: usize, p: usize) -> usize {
    pa.theta_table()[p][x]
}

/// `x δ_p` in postfix reading.
pub fn de(pa: &ProjectionAlgebra, x: usize, p: usize) -> usize {
    pa.delta_table()[p][x]
}

pub fn drc_laws_hold(s: &FiniteSemigroup) -> bool {
    let n = s.n();
    let m = |a, b| s.mul(a, b);
    let (d, r) = (|a| s.d(a), |a| s.r(a));
    for a in 0..n {
        if m(d(a), a) != a || m(a, r(a)) != a || r(d(a)) != d(a) || d(r(a)) != r(a) {
            return false;
        }
        for b in 0..n {
            let ab = m(a, b);
            if d(ab) != d(m(a, d(b))) || r(ab) != r(m(r(a), b)) {
                return false;
            }
            if d(ab) != m(m(d(a), d(ab)), d(a)) || r(ab) != m(m(r(b), r(ab)), r(b)) {
                return false;
            }
            for c in 0..n {
                if m(ab, c) != m(a, m(b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// P1–P5 and their duals, with the map identities compared pointwise.
pub fn pa_laws_hold(theta: &[Vec<usize>], delta: &[Vec<usize>]) -> bool {
    one_column(theta, delta) && one_column(delta, theta)
}

fn one_column(t: &[Vec<usize>], d: &[Vec<usize>]) -> bool {
    let n = t.len();
    let th = |x: usize, p: usize| t[p][x];
    let de = |x: usize, p: usize| d[p][x];
    for p in 0..n {
        if th(p, p) != p || (0..n).any(|x| de(th(x, p), p) != th(x, p)) {
            return false;
        }
        for q in 0..n {
            let qp = th(q, p);
            if th(p, qp) != qp {
                return false;
            }
            for x in 0..n {
                if th(th(x, q), qp) != th(th(x, q), p) {
                    return false;
                }
                if th(th(x, de(p, q)), p) != th(th(x, q), p) {
                    return false;
                }
            }
        }
    }
    true
}

/// Jones' axioms with `p × q = qδ_p` and `p ⋆ q = pθ_q`.
pub fn jones_law(name: &str, theta: &[Vec<usize>], delta: &[Vec<usize>]) -> bool {
    let n = theta.len();
    let x = |p: usize, q: usize| delta[p][q];
    let s = |p: usize, q: usize| theta[q][p];
    let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| {
        (0..n).all(|e| (0..n).all(|f2| (0..n).all(|g| f(e, f2, g))))
    };
    match name {
        "LP1" => (0..n).all(|e| x(e, e) == e),
        "LP2" => all3(&|e, f, _| x(x(e, f), e) == x(e, f)),
        "LP3" => all3(&|e, f, g| x(g, x(f, e)) == x(x(g, f), x(f, e))),
        "LP4" => all3(&|e, f, g| x(x(g, f), e) == x(x(g, f), x(g, e))),
        "RP1" => (0..n).all(|e| s(e, e) == e),
        "RP2" => all3(&|e, f, _| s(e, s(f, e)) == s(f, e)),
        "RP3" => all3(&|e, f, g| s(s(e, f), g) == s(s(e, f), s(f, g))),
        "RP4" => all3(&|e, f, g| s(e, s(f, g)) == s(s(e, g), s(f, g))),
        "PA1" => all3(&|e, f, _| s(x(f, e), f) == x(f, e) && x(f, s(e, f)) == s(e, f)),
        "PA2" => all3(&|e, f, g| s(s(e, x(f, g)), g) == s(s(e, f), g) && x(g, x(s(g, f), e)) == x(g, x(f, e))),
        other => panic!("unknown law {other}"),
    }
}

/// Number of classes of the congruence generated by R1–R3 on words of
/// length at most `max_len`, exploring words up to `max_len + slack`.
pub fn word_class_count(pa: &ProjectionAlgebra, max_len: usize, slack: usize) -> usize {
    let n = pa.n();
    let cap = max_len + slack;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut classes = 0;
    let all_short = (1..=max_len).flat_map(|len| (0..len).map(|_| 0..n).multi_cartesian_product());
    for start in all_short {
        if seen.contains(&start) {
            continue;
        }
        classes += 1;
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start);
        while let Some(w) = queue.pop_front() {
            for v in word_neighbours(pa, &w, cap) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    classes
}

fn word_neighbours(pa: &ProjectionAlgebra, w: &[usize], cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let splice = |i: usize, len: usize, with: &[usize]| -> Vec<usize> {
        let mut v = w[..i].to_vec();
        v.extend_from_slice(with);
        v.extend_from_slice(&w[i + len..]);
        v
    };
    for i in 0..w.len() {
        if w.len() < cap {
            out.push(splice(i, 1, &[w[i], w[i]]));
        }
        if i + 1 < w.len() {
            let (p, q) = (w[i], w[i + 1]);
            if p == q {
                out.push(splice(i, 2, &[p]));
            }
            out.push(splice(i, 2, &[p, th(pa, p, q)]));
            out.push(splice(i, 2, &[de(pa, q, p), q]));
            // backward steps: x_p x_r comes from x_p x_q whenever r = pθ_q
            for t in 0..pa.n() {
                if th(pa, p, t) == q {
                    out.push(splice(i, 2, &[p, t]));
                }
                if de(pa, q, t) == p {
                    out.push(splice(i, 2, &[t, q]));
                }
            }
        }
    }
    out
}

/// Size of the transformation-pair semigroup generated by `(θ_p, δ_p)`.
pub fn transformation_pair_count(pa: &ProjectionAlgebra) -> usize {
    let n = pa.n();
    type Pair = (Vec<usize>, Vec<usize>);
    let gens: Vec<Pair> =
        (0..n).map(|p| ((0..n).map(|x| th(pa, x, p)).collect(), (0..n).map(|x| de(pa, x, p)).collect())).collect();
    // (α, α′)(β, β′) = (αβ, β′α′) with maps acting on the right
    let times = |a: &Pair, b: &Pair| -> Pair {
        ((0..n).map(|x| b.0[a.0[x]]).collect(), (0..n).map(|x| a.1[b.1[x]]).collect())
    };
    let mut set: BTreeSet<Pair> = gens.iter().cloned().collect();
    let mut frontier: Vec<Pair> = gens.clone();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = times(&x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set.len()
}

/// `a ⊛ b` read off the stored tables of a chained projection category.
pub fn star_from_tables(c: &ChainedProjectionCategory, a: usize, b: usize) -> Option<usize> {
    let cat = c.cat();
    let pa = c.pa();
    let objects = cat.objects();
    let pos = |o: usize| objects.iter().position(|&x| x == o).expect("object");
    let (p, q) = (pos(cat.cod(a)), pos(cat.dom(b)));
    let p1 = pa.de(p, q);
    let q1 = pa.th(q, p);
    let left = cat.rres(a, objects[p1])?;
    let mid = c.eps(p1, q1)?;
    let right = cat.lres(objects[q1], b)?;
    let lm = cat.comp(left, mid)?;
    cat.comp(lm, right)
}

/// First triple where the stored-table product fails associativity.
pub fn star_associativity_failure(c: &ChainedProjectionCategory) -> Option<(usize, usize, usize)> {
    let m = c.cat().m();
    let table: Vec<Vec<usize>> =
        (0..m).map(|a| (0..m).map(|b| star_from_tables(c, a, b).expect("total product")).collect()).collect();
    for a in 0..m {
        for b in 0..m {
            for k in 0..m {
                if table[table[a][b]][k] != table[a][table[b][k]] {
                    return Some((a, b, k));
                }
            }
        }
    }
    None
}

/// All set partitions of `0..n` as label vectors in restricted growth form.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max + 1 {
            if i == 0 && l > 0 {
                break;
            }
            cur.push(l);
            go(i + 1, n, cur, if i == 0 { 0 } else { max.max(l) }, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

pub fn is_congruence(s: &FiniteSemigroup, labels: &[usize]) -> bool {
    let n = s.n();
    (0..n).all(|a| {
        (0..n).all(|b| {
            labels[a] != labels[b]
                || (labels[s.d(a)] == labels[s.d(b)]
                    && labels[s.r(a)] == labels[s.r(b)]
                    && (0..n).all(|c| {
                        labels[s.mul(a, c)] == labels[s.mul(b, c)] && labels[s.mul(c, a)] == labels[s.mul(c, b)]
                    }))
        })
    })
}

/// The largest congruence (by number of related pairs) that is injective on projections.
pub fn brute_force_mu(s: &FiniteSemigroup) -> Vec<usize> {
    let proj: Vec<usize> = (0..s.n()).filter(|&a| s.d(a) == a).collect();
    let pairs = |l: &[usize]| (0..l.len()).flat_map(|a| (0..l.len()).map(move |b| (a, b))).filter(|&(a, b)| l[a] == l[b]).count();
    partitions(s.n())
        .into_iter()
        .filter(|l| {
            proj.iter().all(|&p| proj.iter().all(|&q| p == q || l[p] != l[q])) && is_congruence(s, l)
        })
        .max_by_key(|l| pairs(l))
        .expect("identity partition qualifies")
}

/// Same-class test for two label vectors.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let mut ab: HashMap<usize, usize> = HashMap::new();
    let mut ba: HashMap<usize, usize> = HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| *ab.entry(x).or_insert(y) == y && *ba.entry(y).or_insert(x) == x)
}

/// Paths of length at most `max_len`, and the classes of the congruence
/// generated by `pp ≈ p` inside that bound.
pub fn path_closure(pa: &ProjectionAlgebra, max_len: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = pa.n();
    let f = |p: usize, q: usize| pa.f_related(p, q);
    let mut paths: Vec<Vec<usize>> = (0..n).map(|p| vec![p]).collect();
    let mut start = 0;
    for _ in 1..max_len {
        let end = paths.len();
        for i in start..end {
            let last = *paths[i].last().unwrap();
            for q in 0..n {
                if f(last, q) {
                    let mut v = paths[i].clone();
                    v.push(q);
                    paths.push(v);
                }
            }
        }
        start = end;
    }
    let index: HashMap<Vec<usize>, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut label: Vec<usize> = (0..paths.len()).collect();
    fn find(l: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while l[r] != r {
            r = l[r];
        }
        l[x] = r;
        r
    }
    for (i, p) in paths.iter().enumerate() {
        for k in 0..p.len().saturating_sub(1) {
            if p[k] == p[k + 1] {
                let mut shorter = p.clone();
                shorter.remove(k);
                let j = index[&shorter];
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let labels = (0..paths.len()).map(|i| find(&mut label, i)).collect();
    (paths, labels)
}

pub fn dedup(p: &[usize]) -> Vec<usize> {
    let mut v = p.to_vec();
    v.dedup();
    v
}

pub fn penrose(a: &RationalMatrix, x: &RationalMatrix) -> bool {
    let ax = a.mul(x);
    let xa = x.mul(a);
    ax.mul(a) == *a && xa.mul(x) == *x && ax.transpose() == ax && xa.transpose() == xa
}
