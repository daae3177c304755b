//! Finite model search over pairs of unary-operation tables.
//!
//! A model of size `n` is a pair of tables `th, de : n × n → n` read as in
//! [`ProjectionAlgebra`]. Axioms are equations between terms; ground
//! instances watch one unassigned cell at a time and force a cell whenever
//! one side is known and the other is a single pending lookup.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{DrcError, Result};
use crate::projection_algebra::ProjectionAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Th(Box<Term>, Box<Term>),
    De(Box<Term>, Box<Term>),
}

use Term::{De, Th, Var};

fn v(i: usize) -> Term {
    Var(i)
}
fn th(a: Term, b: Term) -> Term {
    Th(Box::new(a), Box::new(b))
}
fn de(a: Term, b: Term) -> Term {
    De(Box::new(a), Box::new(b))
}
/// `a × b = bδ_a`.
fn x(a: Term, b: Term) -> Term {
    de(a, b)
}
/// `a ⋆ b = aθ_b`.
fn st(a: Term, b: Term) -> Term {
    th(b, a)
}

impl Term {
    fn dual(&self) -> Term {
        match self {
            Var(i) => Var(*i),
            Th(a, b) => de(a.dual(), b.dual()),
            De(a, b) => th(a.dual(), b.dual()),
        }
    }
    fn uses(&self, table: usize) -> bool {
        match self {
            Var(_) => false,
            Th(a, b) => table == 0 || a.uses(table) || b.uses(table),
            De(a, b) => table == 1 || a.uses(table) || b.uses(table),
        }
    }
    pub fn eval(&self, vars: &[usize], theta: &[Vec<usize>], delta: &[Vec<usize>]) -> usize {
        match self {
            Var(i) => vars[*i],
            Th(a, b) => theta[a.eval(vars, theta, delta)][b.eval(vars, theta, delta)],
            De(a, b) => delta[a.eval(vars, theta, delta)][b.eval(vars, theta, delta)],
        }
    }
}

/// One quantified equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub vars: usize,
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    fn new(name: impl Into<String>, vars: usize, lhs: Term, rhs: Term) -> Self {
        Equation { name: name.into(), vars, lhs, rhs }
    }
    fn dual(&self, name: impl Into<String>) -> Self {
        Equation::new(name, self.vars, self.lhs.dual(), self.rhs.dual())
    }
    /// First failing assignment in lexicographic order.
    pub fn first_failure(&self, theta: &[Vec<usize>], delta: &[Vec<usize>]) -> Option<Vec<usize>> {
        let n = theta.len();
        (0..self.vars)
            .map(|_| 0..n)
            .multi_cartesian_product()
            .find(|vs| self.lhs.eval(vs, theta, delta) != self.rhs.eval(vs, theta, delta))
    }
}

/// Axiom identifiers accepted by the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    LP1,
    LP2,
    LP3,
    LP4,
    RP1,
    RP2,
    RP3,
    RP4,
    PA1,
    PA2,
    I1,
    I2,
    I3,
    I4,
    I5,
    Symmetry,
}

impl AxiomId {
    pub const ALL: [AxiomId; 26] = [
        AxiomId::P1,
        AxiomId::P2,
        AxiomId::P3,
        AxiomId::P4,
        AxiomId::P5,
        AxiomId::P6,
        AxiomId::P7,
        AxiomId::P8,
        AxiomId::P9,
        AxiomId::P10,
        AxiomId::LP1,
        AxiomId::LP2,
        AxiomId::LP3,
        AxiomId::LP4,
        AxiomId::RP1,
        AxiomId::RP2,
        AxiomId::RP3,
        AxiomId::RP4,
        AxiomId::PA1,
        AxiomId::PA2,
        AxiomId::I1,
        AxiomId::I2,
        AxiomId::I3,
        AxiomId::I4,
        AxiomId::I5,
        AxiomId::Symmetry,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AxiomId::P1 => "P1",
            AxiomId::P2 => "P2",
            AxiomId::P3 => "P3",
            AxiomId::P4 => "P4",
            AxiomId::P5 => "P5",
            AxiomId::P6 => "P6",
            AxiomId::P7 => "P7",
            AxiomId::P8 => "P8",
            AxiomId::P9 => "P9",
            AxiomId::P10 => "P10",
            AxiomId::LP1 => "LP1",
            AxiomId::LP2 => "LP2",
            AxiomId::LP3 => "LP3",
            AxiomId::LP4 => "LP4",
            AxiomId::RP1 => "RP1",
            AxiomId::RP2 => "RP2",
            AxiomId::RP3 => "RP3",
            AxiomId::RP4 => "RP4",
            AxiomId::PA1 => "PA1",
            AxiomId::PA2 => "PA2",
            AxiomId::I1 => "P1'",
            AxiomId::I2 => "P2'",
            AxiomId::I3 => "P3'",
            AxiomId::I4 => "P4'",
            AxiomId::I5 => "P5'",
            AxiomId::Symmetry => "symmetry",
        }
    }

    /// The equations making up this axiom; the P-axioms include their duals.
    pub fn equations(self) -> Vec<Equation> {
        let (p, q, t) = (v(0), v(1), v(2));
        let pair = |name: &str, vars: usize, lhs: Term, rhs: Term| {
            let e = Equation::new(format!("{name} (θ)"), vars, lhs, rhs);
            let d = e.dual(format!("{name} (δ)"));
            vec![e, d]
        };
        let one = |vars: usize, lhs: Term, rhs: Term| vec![Equation::new(self.label(), vars, lhs, rhs)];
        let (e, f, g) = (v(0), v(1), v(2));
        match self {
            AxiomId::P1 => pair("P1", 1, th(p.clone(), p.clone()), p),
            AxiomId::P2 => pair("P2", 2, th(th(p.clone(), q.clone()), p.clone()), th(p, q)),
            AxiomId::P3 => pair(
                "P3",
                3,
                th(th(p.clone(), q.clone()), th(q.clone(), t.clone())),
                th(p, th(q, t)),
            ),
            AxiomId::P4 => pair("P4", 2, de(p.clone(), th(p.clone(), q.clone())), th(p, q)),
            AxiomId::P5 => pair(
                "P5",
                3,
                th(p.clone(), th(de(q.clone(), p.clone()), t.clone())),
                th(p, th(q, t)),
            ),
            AxiomId::P6 => pair("P6", 2, th(p.clone(), th(p.clone(), q.clone())), th(p, q)),
            AxiomId::P7 => {
                let u = th(p.clone(), q.clone());
                let mut a = pair("P7a", 3, th(u.clone(), t.clone()), th(u.clone(), th(p.clone(), t.clone())));
                a.extend(pair("P7b", 3, th(u.clone(), t.clone()), th(p, th(u, t))));
                a
            }
            AxiomId::P8 => pair("P8", 2, th(th(p.clone(), q.clone()), q.clone()), th(p, q)),
            AxiomId::P9 => pair("P9", 2, th(p.clone(), de(q.clone(), p.clone())), th(p, q)),
            AxiomId::P10 => pair(
                "P10",
                3,
                th(th(p.clone(), q.clone()), de(q.clone(), t.clone())),
                th(p, de(q, t)),
            ),
            AxiomId::LP1 => one(1, x(e.clone(), e.clone()), e),
            AxiomId::LP2 => one(2, x(x(e.clone(), f.clone()), e.clone()), x(e, f)),
            AxiomId::LP3 => one(
                3,
                x(g.clone(), x(f.clone(), e.clone())),
                x(x(g, f.clone()), x(f, e)),
            ),
            AxiomId::LP4 => one(
                3,
                x(x(g.clone(), f.clone()), e.clone()),
                x(x(g.clone(), f), x(g, e)),
            ),
            AxiomId::RP1 => one(1, st(e.clone(), e.clone()), e),
            AxiomId::RP2 => one(2, st(e.clone(), st(f.clone(), e.clone())), st(f, e)),
            AxiomId::RP3 => one(
                3,
                st(st(e.clone(), f.clone()), g.clone()),
                st(st(e, f.clone()), st(f, g)),
            ),
            AxiomId::RP4 => one(
                3,
                st(e.clone(), st(f.clone(), g.clone())),
                st(st(e, g.clone()), st(f, g)),
            ),
            AxiomId::PA1 => vec![
                Equation::new("PA1a", 2, st(x(f.clone(), e.clone()), f.clone()), x(f.clone(), e.clone())),
                Equation::new("PA1b", 2, x(f.clone(), st(e.clone(), f.clone())), st(e, f)),
            ],
            AxiomId::PA2 => vec![
                Equation::new(
                    "PA2a",
                    3,
                    st(st(e.clone(), x(f.clone(), g.clone())), g.clone()),
                    st(st(e.clone(), f.clone()), g.clone()),
                ),
                Equation::new(
                    "PA2b",
                    3,
                    x(g.clone(), x(st(g.clone(), f.clone()), e.clone())),
                    x(g, x(f, e)),
                ),
            ],
            AxiomId::I1 => one(1, th(p.clone(), p.clone()), p),
            AxiomId::I2 => one(2, th(p.clone(), th(p.clone(), t.clone())), th(p, t)),
            AxiomId::I3 => one(2, th(p.clone(), th(q.clone(), p.clone())), th(p, q)),
            AxiomId::I4 => one(
                3,
                th(p.clone(), th(q.clone(), th(p.clone(), t.clone()))),
                th(th(p, q), t),
            ),
            AxiomId::I5 => one(
                3,
                th(q.clone(), th(p.clone(), th(q.clone(), th(p.clone(), t.clone())))),
                th(q, th(p, t)),
            ),
            AxiomId::Symmetry => one(2, th(p.clone(), q.clone()), de(p, q)),
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for AxiomId {
    type Err = DrcError;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('′', "'");
        let key = key.as_str();
        let alias = match key {
            "p1'" | "i1" => Some(AxiomId::I1),
            "p2'" | "i2" => Some(AxiomId::I2),
            "p3'" | "i3" => Some(AxiomId::I3),
            "p4'" | "i4" => Some(AxiomId::I4),
            "p5'" | "i5" => Some(AxiomId::I5),
            "sym" | "symmetry" => Some(AxiomId::Symmetry),
            _ => None,
        };
        alias
            .or_else(|| AxiomId::ALL.iter().copied().find(|a| a.label().to_ascii_lowercase() == key))
            .ok_or_else(|| DrcError::Malformed(format!("unknown axiom {s:?}")))
    }
}

/// Parses `p1..p5` ranges and comma lists such as `lp1,lp2,lp3`.
pub fn parse_axiom_list(s: &str) -> Result<Vec<AxiomId>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: AxiomId = a.parse()?;
            let b: AxiomId = b.parse()?;
            let i = AxiomId::ALL.iter().position(|&x| x == a).unwrap();
            let j = AxiomId::ALL.iter().position(|&x| x == b).unwrap();
            if j < i {
                return Err(DrcError::Malformed(format!("empty range {part}")));
            }
            out.extend_from_slice(&AxiomId::ALL[i..=j]);
        } else {
            out.push(part.parse()?);
        }
    }
    out.dedup();
    Ok(out)
}

/// A set of axioms compiled to equations.
#[derive(Debug, Clone)]
pub struct AxiomSystem {
    pub ids: Vec<AxiomId>,
    pub equations: Vec<Equation>,
}

impl AxiomSystem {
    pub fn new(ids: &[AxiomId]) -> Self {
        let equations = ids.iter().flat_map(|a| a.equations()).collect();
        AxiomSystem { ids: ids.to_vec(), equations }
    }

    /// First failing equation with its witness.
    pub fn first_failure(&self, theta: &[Vec<usize>], delta: &[Vec<usize>]) -> Option<(String, Vec<usize>)> {
        self.equations.iter().find_map(|e| e.first_failure(theta, delta).map(|w| (e.name.clone(), w)))
    }

    pub fn holds(&self, pa: &ProjectionAlgebra) -> bool {
        self.first_failure(pa.theta_table(), pa.delta_table()).is_none()
    }

    fn uses(&self, table: usize) -> bool {
        self.equations.iter().any(|e| e.lhs.uses(table) || e.rhs.uses(table))
    }
}

const UNSET: u8 = u8::MAX;

enum Eval {
    Val(usize),
    /// First unassigned cell met, and whether it is the outermost lookup.
    Need(usize, bool),
}

struct Instance {
    eq: usize,
    vars: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Done,
    Waiting(usize),
}

enum Undo {
    Cell(usize),
    State(usize, State),
    Watch(usize),
}

/// Search state: cell `table*n*n + p*n + t` holds `table[p][t]`.
struct Solver<'a> {
    n: usize,
    eqs: &'a [Equation],
    instances: &'a [Instance],
    cells: Vec<u8>,
    state: Vec<State>,
    watch: Vec<Vec<usize>>,
    trail: Vec<Undo>,
}

fn eval(t: &Term, vars: &[usize], cells: &[u8], n: usize) -> Eval {
    match t {
        Var(i) => Eval::Val(vars[*i]),
        Th(a, b) | De(a, b) => {
            let table = usize::from(matches!(t, De(..)));
            let a = match eval(a, vars, cells, n) {
                Eval::Val(x) => x,
                Eval::Need(c, _) => return Eval::Need(c, false),
            };
            let b = match eval(b, vars, cells, n) {
                Eval::Val(x) => x,
                Eval::Need(c, _) => return Eval::Need(c, false),
            };
            let c = table * n * n + a * n + b;
            match cells[c] {
                UNSET => Eval::Need(c, true),
                x => Eval::Val(x as usize),
            }
        }
    }
}

enum Outcome {
    Conflict,
    Done,
    Wait(usize),
    Force(usize, usize),
}

impl<'a> Solver<'a> {
    fn evaluate(&self, i: usize) -> Outcome {
        let inst = &self.instances[i];
        let eq = &self.eqs[inst.eq];
        let l = eval(&eq.lhs, &inst.vars, &self.cells, self.n);
        let r = eval(&eq.rhs, &inst.vars, &self.cells, self.n);
        match (l, r) {
            (Eval::Val(a), Eval::Val(b)) => {
                if a == b {
                    Outcome::Done
                } else {
                    Outcome::Conflict
                }
            }
            (Eval::Val(a), Eval::Need(c, true)) | (Eval::Need(c, true), Eval::Val(a)) => Outcome::Force(c, a),
            (Eval::Need(c, _), _) | (_, Eval::Need(c, _)) => Outcome::Wait(c),
        }
    }

    fn set_state(&mut self, i: usize, s: State) {
        self.trail.push(Undo::State(i, self.state[i]));
        self.state[i] = s;
        if let State::Waiting(c) = s {
            self.watch[c].push(i);
            self.trail.push(Undo::Watch(c));
        }
    }

    /// Processes an instance; returns false on conflict.
    fn process(&mut self, i: usize, pending: &mut Vec<(usize, usize)>) -> bool {
        match self.evaluate(i) {
            Outcome::Conflict => false,
            Outcome::Done => {
                self.set_state(i, State::Done);
                true
            }
            Outcome::Wait(c) => {
                self.set_state(i, State::Waiting(c));
                true
            }
            Outcome::Force(c, val) => {
                self.set_state(i, State::Waiting(c));
                pending.push((c, val));
                true
            }
        }
    }

    fn assign(&mut self, cell: usize, val: usize) -> bool {
        let mut pending = vec![(cell, val)];
        while let Some((c, x)) = pending.pop() {
            match self.cells[c] {
                UNSET => {}
                y if y as usize == x => continue,
                _ => return false,
            }
            self.cells[c] = x as u8;
            self.trail.push(Undo::Cell(c));
            let mut k = 0;
            while k < self.watch[c].len() {
                let i = self.watch[c][k];
                k += 1;
                if self.state[i] != State::Waiting(c) {
                    continue;
                }
                if !self.process(i, &mut pending) {
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Cell(c) => self.cells[c] = UNSET,
                Undo::State(i, s) => self.state[i] = s,
                Undo::Watch(c) => {
                    self.watch[c].pop();
                }
            }
        }
    }
}

/// Outcome of a search at one size.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub size: usize,
    pub satisfy: Vec<AxiomId>,
    pub violate: AxiomId,
    /// Pairwise non-isomorphic models in canonical form.
    pub models: Vec<ProjectionAlgebra>,
    /// Every branch was explored, so `models` lists all classes.
    pub exhausted: bool,
    pub nodes: u64,
}

impl SearchResult {
    /// No model exists at this size.
    pub fn certifies_exhaustion(&self) -> bool {
        self.exhausted && self.models.is_empty()
    }
}

type Tables = (Vec<Vec<usize>>, Vec<Vec<usize>>);

fn tables_of(cells: &[u8], n: usize, used: [bool; 2]) -> Tables {
    let get = |table: usize| -> Vec<Vec<usize>> {
        (0..n)
            .map(|p| {
                (0..n)
                    .map(|t| if used[table] { cells[table * n * n + p * n + t] as usize } else { p })
                    .collect()
            })
            .collect()
    };
    (get(0), get(1))
}

fn relabel_tables(t: &Tables, perm: &[usize]) -> Tables {
    let n = perm.len();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let map = |tab: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..n).map(|p| (0..n).map(|x| perm[tab[inv[p]][inv[x]]]).collect()).collect()
    };
    (map(&t.0), map(&t.1))
}

/// Least relabelling of the tables over all carrier permutations.
pub fn canonical_form(theta: &[Vec<usize>], delta: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = theta.len();
    let t = (theta.to_vec(), delta.to_vec());
    (0..n).permutations(n).map(|perm| relabel_tables(&t, &perm)).min().unwrap()
}

/// Row 0 of the first searched table is no larger than any of its
/// conjugates by permutations fixing 0.
fn row0_minimal(cells: &[u8], n: usize, table: usize) -> bool {
    let row: Vec<usize> = (0..n).map(|t| cells[table * n * n + t] as usize).collect();
    (1..n).permutations(n - 1).all(|rest| {
        let mut perm = vec![0];
        perm.extend(rest);
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let conj: Vec<usize> = (0..n).map(|x| perm[row[inv[x]]]).collect();
        conj >= row
    })
}

struct Branch<'a> {
    solver: Solver<'a>,
    order: Vec<usize>,
    used: [bool; 2],
    violate: &'a AxiomSystem,
    limit: usize,
    found: Vec<Tables>,
    seen: HashSet<Tables>,
    nodes: u64,
    complete: bool,
    first_table: usize,
}

impl Branch<'_> {
    fn row0_done(&self) -> bool {
        let n = self.solver.n;
        (0..n).all(|t| self.solver.cells[self.first_table * n * n + t] != UNSET)
    }

    fn dfs(&mut self, row0_checked: bool) {
        if self.found.len() >= self.limit {
            self.complete = false;
            return;
        }
        self.nodes += 1;
        let n = self.solver.n;
        let mut checked = row0_checked;
        if !checked && self.row0_done() {
            if !row0_minimal(&self.solver.cells, n, self.first_table) {
                return;
            }
            checked = true;
        }
        let Some(&cell) = self.order.iter().find(|&&c| self.solver.cells[c] == UNSET) else {
            let (theta, delta) = tables_of(&self.solver.cells, n, self.used);
            if self.violate.first_failure(&theta, &delta).is_some() {
                let canon = canonical_form(&theta, &delta);
                if self.seen.insert(canon.clone()) {
                    self.found.push(canon);
                }
            }
            return;
        };
        for val in 0..n {
            let mark = self.solver.trail.len();
            if self.solver.assign(cell, val) {
                self.dfs(checked);
            }
            self.solver.undo_to(mark);
            if self.found.len() >= self.limit {
                self.complete = false;
                return;
            }
        }
    }
}

/// Up to `limit` non-isomorphic models of size `size` satisfying every
/// axiom in `satisfy` and failing `violate`.
pub fn search(satisfy: &[AxiomId], violate: AxiomId, size: usize, limit: usize) -> Result<SearchResult> {
    if size == 0 {
        return Err(DrcError::Malformed("size must be at least 1".into()));
    }
    if size > 8 {
        return Err(DrcError::TooLarge { what: "model size".into(), size, cap: 8 });
    }
    let n = size;
    let sys = AxiomSystem::new(satisfy);
    let bad = AxiomSystem::new(&[violate]);
    let used = [sys.uses(0) || bad.uses(0), sys.uses(1) || bad.uses(1)];
    let mut instances = Vec::new();
    for (k, eq) in sys.equations.iter().enumerate() {
        for vars in (0..eq.vars).map(|_| 0..n).multi_cartesian_product() {
            instances.push(Instance { eq: k, vars });
        }
    }
    let order: Vec<usize> = (0..2).filter(|&t| used[t]).flat_map(|t| (0..n * n).map(move |c| t * n * n + c)).collect();
    let first_table = if used[0] { 0 } else { 1 };
    let mut root = Solver {
        n,
        eqs: &sys.equations,
        instances: &instances,
        cells: vec![UNSET; 2 * n * n],
        state: vec![State::Done; instances.len()],
        watch: vec![Vec::new(); 2 * n * n],
        trail: Vec::new(),
    };
    let mut pending = Vec::new();
    let mut consistent = true;
    for i in 0..instances.len() {
        if !root.process(i, &mut pending) {
            consistent = false;
            break;
        }
    }
    while consistent {
        let Some((c, x)) = pending.pop() else { break };
        consistent = root.assign(c, x);
    }
    root.trail.clear();
    if !consistent {
        return Ok(SearchResult { size, satisfy: satisfy.to_vec(), violate, models: vec![], exhausted: true, nodes: 1 });
    }
    let branch_cell = order.iter().copied().find(|&c| root.cells[c] == UNSET);
    let run = |first: Option<(usize, usize)>| -> (Vec<Tables>, u64, bool) {
        let solver = Solver {
            n,
            eqs: &sys.equations,
            instances: &instances,
            cells: root.cells.clone(),
            state: root.state.clone(),
            watch: root.watch.clone(),
            trail: Vec::new(),
        };
        let mut b = Branch {
            solver,
            order: order.clone(),
            used,
            violate: &bad,
            limit,
            found: Vec::new(),
            seen: HashSet::new(),
            nodes: 0,
            complete: true,
            first_table,
        };
        if let Some((c, x)) = first {
            if !b.solver.assign(c, x) {
                return (Vec::new(), 1, true);
            }
        }
        b.dfs(false);
        (b.found, b.nodes, b.complete)
    };
    let parts: Vec<(Vec<Tables>, u64, bool)> = match branch_cell {
        Some(c) => (0..n).into_par_iter().map(|x| run(Some((c, x)))).collect(),
        None => vec![run(None)],
    };
    let mut seen = HashSet::new();
    let mut models = Vec::new();
    let mut nodes = 0;
    let mut exhausted = true;
    for (found, k, complete) in parts {
        nodes += k;
        exhausted &= complete;
        for t in found {
            if seen.insert(t.clone()) {
                models.push(t);
            }
        }
    }
    models.sort();
    if models.len() > limit {
        models.truncate(limit);
        exhausted = false;
    }
    let models = models
        .into_iter()
        .map(|(t, d)| ProjectionAlgebra::new(t, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchResult { size, satisfy: satisfy.to_vec(), violate, models, exhausted, nodes })
}

/// Searches sizes `from..=to` in turn and stops at the first size with a model.
pub fn search_upward(
    satisfy: &[AxiomId],
    violate: AxiomId,
    from: usize,
    to: usize,
    limit: usize,
) -> Result<Vec<SearchResult>> {
    let mut out = Vec::new();
    for size in from.max(1)..=to {
        let r = search(satisfy, violate, size, limit)?;
        let found = !r.models.is_empty();
        out.push(r);
        if found {
            break;
        }
    }
    Ok(out)
}
