//! Acyclic e-graph with eager canonical representatives.
//!
//! Every equivalence class is represented by one of its own nodes (the
//! union-find root). Roots always have root children once the pending
//! queue is drained, so the graph of representatives is a DAG: a node's
//! children are created before it, and a merge never elects a
//! representative that contains the class it absorbs.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use crate::syntax::{Const, Op};

pub type Id = u32;

/// A flattened integer polynomial: `Σ coef · Π factors + constant`.
/// Keys are sorted factor lists; coefficients are never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FlatSum {
    pub terms: Vec<(Vec<Id>, i32)>,
    pub constant: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SNode {
    Const(Const),
    Atom(u32),
    Bound(u32),
    /// Any operation on input. Stored nodes only use `==`, `<`, `&&`,
    /// `||`, `/` and `%`; the rest normalize into other forms.
    Bin(Op, Id, Id),
    Pair(Id, Id),
    Inl(Id),
    Inr(Id),
    Proj1(Id),
    Proj2(Id),
    Lambda(Id),
    Apply(Id, Id),
    Not(Id),
    Sum(FlatSum),
}

impl SNode {
    pub fn children(&self) -> Vec<Id> {
        match self {
            SNode::Const(_) | SNode::Atom(_) | SNode::Bound(_) => vec![],
            SNode::Bin(_, a, b) | SNode::Pair(a, b) | SNode::Apply(a, b) => vec![*a, *b],
            SNode::Inl(a)
            | SNode::Inr(a)
            | SNode::Proj1(a)
            | SNode::Proj2(a)
            | SNode::Lambda(a)
            | SNode::Not(a) => vec![*a],
            SNode::Sum(s) => s.terms.iter().flat_map(|(k, _)| k.iter().copied()).collect(),
        }
    }

    pub fn map_children(&self, mut f: impl FnMut(Id) -> Id) -> SNode {
        match self {
            SNode::Const(_) | SNode::Atom(_) | SNode::Bound(_) => self.clone(),
            SNode::Bin(op, a, b) => SNode::Bin(*op, f(*a), f(*b)),
            SNode::Pair(a, b) => SNode::Pair(f(*a), f(*b)),
            SNode::Apply(a, b) => SNode::Apply(f(*a), f(*b)),
            SNode::Inl(a) => SNode::Inl(f(*a)),
            SNode::Inr(a) => SNode::Inr(f(*a)),
            SNode::Proj1(a) => SNode::Proj1(f(*a)),
            SNode::Proj2(a) => SNode::Proj2(f(*a)),
            SNode::Lambda(a) => SNode::Lambda(f(*a)),
            SNode::Not(a) => SNode::Not(f(*a)),
            SNode::Sum(s) => SNode::Sum(FlatSum {
                terms: s.terms.iter().map(|(k, c)| (k.iter().map(|&x| f(x)).collect(), *c)).collect(),
                constant: s.constant,
            }),
        }
    }

    /// Preference used to elect representatives; lower wins.
    pub fn rank(&self) -> u8 {
        match self {
            SNode::Const(_) => 0,
            SNode::Bin(..) | SNode::Sum(_) | SNode::Not(_) | SNode::Proj1(_) | SNode::Proj2(_) | SNode::Apply(..) => 1,
            SNode::Pair(..) | SNode::Inl(_) | SNode::Inr(_) => 2,
            SNode::Lambda(_) => 3,
            SNode::Atom(_) => 4,
            SNode::Bound(_) => 5,
        }
    }

    fn is_constructor(&self) -> bool {
        matches!(self, SNode::Pair(..) | SNode::Inl(_) | SNode::Inr(_))
    }
}

/// Why a merge happened; shows up in traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Assert,
    Congruence,
    Conjunct,
    Disjunct,
    Negation,
    Equality,
    Injectivity,
    Ordering,
    Linear,
    External,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Assert => "assert",
            Rule::Congruence => "congruence",
            Rule::Conjunct => "conjunct",
            Rule::Disjunct => "disjunct",
            Rule::Negation => "negation",
            Rule::Equality => "equality",
            Rule::Injectivity => "injectivity",
            Rule::Ordering => "ordering",
            Rule::Linear => "linear",
            Rule::External => "external",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergeError {
    BoundVariable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Rel {
    Le,
    Lt,
}

const INT_MIN: i64 = i32::MIN as i64;
const INT_MAX: i64 = i32::MAX as i64;
/// Closure over more classes than this is skipped (intervals still apply).
const CLOSURE_LIMIT: usize = 96;

#[derive(Clone, Debug)]
pub struct EGraph {
    nodes: Vec<SNode>,
    memo: HashMap<SNode, Id>,
    uf: Vec<Id>,
    members: Vec<Vec<Id>>,
    parents: Vec<Vec<Id>>,
    /// One more than the largest loose bound-variable index, or 0.
    loose: Vec<u32>,
    /// Asserted `a < b` (strict) and `a <= b` facts, by original ids.
    order_facts: Vec<(Id, Id, Rel)>,
    order_dirty: bool,
    pending: VecDeque<(Id, Id, Rule)>,
    merges: usize,
    merge_cap: usize,
    node_cap: usize,
    contradiction: bool,
    incomplete: bool,
    trace: Option<Vec<String>>,
    truth: Id,
    falsity: Id,
}

impl Default for EGraph {
    fn default() -> Self {
        EGraph::new(10_000)
    }
}

impl EGraph {
    pub fn new(merge_cap: usize) -> EGraph {
        let mut g = EGraph {
            nodes: Vec::new(),
            memo: HashMap::new(),
            uf: Vec::new(),
            members: Vec::new(),
            parents: Vec::new(),
            loose: Vec::new(),
            order_facts: Vec::new(),
            order_dirty: false,
            pending: VecDeque::new(),
            merges: 0,
            merge_cap,
            node_cap: 20 * merge_cap.max(1000),
            contradiction: false,
            incomplete: false,
            trace: None,
            truth: 0,
            falsity: 0,
        };
        g.truth = g.intern(SNode::Const(Const::Bool(true)));
        g.falsity = g.intern(SNode::Const(Const::Bool(false)));
        g
    }

    pub fn with_trace(mut self) -> EGraph {
        self.trace = Some(Vec::new());
        self
    }

    pub fn truth(&self) -> Id {
        self.truth
    }

    pub fn falsity(&self) -> Id {
        self.falsity
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: Id) -> &SNode {
        &self.nodes[id as usize]
    }

    pub fn merges(&self) -> usize {
        self.merges
    }

    /// The facts asserted so far cannot all hold.
    pub fn is_contradictory(&self) -> bool {
        self.contradiction
    }

    /// A cap was hit; the graph may be missing consequences.
    pub fn is_incomplete(&self) -> bool {
        self.incomplete
    }

    pub fn trace(&self) -> &[String] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn take_trace(&mut self) -> Vec<String> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    pub fn find(&self, mut id: Id) -> Id {
        while self.uf[id as usize] != id {
            id = self.uf[id as usize];
        }
        id
    }

    fn find_compress(&mut self, id: Id) -> Id {
        let root = self.find(id);
        let mut cur = id;
        while self.uf[cur as usize] != root {
            let next = self.uf[cur as usize];
            self.uf[cur as usize] = root;
            cur = next;
        }
        root
    }

    pub fn is_root(&self, id: Id) -> bool {
        self.uf[id as usize] == id
    }

    pub fn class_members(&self, id: Id) -> &[Id] {
        &self.members[self.find(id) as usize]
    }

    pub fn loose(&self, id: Id) -> u32 {
        self.loose[id as usize]
    }

    /// Content of `id` with every child replaced by its representative.
    pub fn canonical_content(&self, id: Id) -> SNode {
        self.nodes[id as usize].map_children(|c| self.find(c))
    }

    /// Known strict lower and upper bounds of a class, from the ordering
    /// facts and their transitive closure.
    pub fn bounds(&self, id: Id) -> (Vec<Id>, Vec<Id>) {
        let root = self.find(id);
        let (classes, rel, _) = self.order_closure();
        let Some(i) = classes.iter().position(|&c| c == root) else {
            return (vec![], vec![]);
        };
        let n = classes.len();
        let lower = (0..n).filter(|&j| rel[j * n + i] == Some(Rel::Lt)).map(|j| classes[j]).collect();
        let upper = (0..n).filter(|&j| rel[i * n + j] == Some(Rel::Lt)).map(|j| classes[j]).collect();
        (lower, upper)
    }

    /// Is the value `k` ruled out for class `id` by the ordering facts?
    pub fn excludes(&self, id: Id, k: i32) -> bool {
        let root = self.find(id);
        let (classes, _, iv) = self.order_closure();
        classes
            .iter()
            .position(|&c| c == root)
            .is_some_and(|i| (k as i64) < iv[i].0 || (k as i64) > iv[i].1)
    }

    fn intern(&mut self, node: SNode) -> Id {
        if let Some(&id) = self.memo.get(&node) {
            return self.find(id);
        }
        let id = self.nodes.len() as Id;
        if self.nodes.len() >= self.node_cap {
            self.incomplete = true;
        }
        let loose = match &node {
            SNode::Bound(k) => k + 1,
            SNode::Lambda(b) => self.loose[*b as usize].saturating_sub(1),
            n => n.children().iter().map(|&c| self.loose[c as usize]).max().unwrap_or(0),
        };
        for c in node.children() {
            let root = self.find(c);
            let ps = &mut self.parents[root as usize];
            if ps.last() != Some(&id) {
                ps.push(id);
            }
        }
        self.nodes.push(node.clone());
        self.memo.insert(node, id);
        self.uf.push(id);
        self.members.push(vec![id]);
        self.parents.push(Vec::new());
        self.loose.push(loose);
        id
    }

    fn int_const(&self, id: Id) -> Option<i32> {
        match self.nodes[self.find(id) as usize] {
            SNode::Const(Const::Int(z)) => Some(z),
            _ => None,
        }
    }

    fn bool_const(&self, id: Id) -> Option<bool> {
        match self.nodes[self.find(id) as usize] {
            SNode::Const(Const::Bool(b)) => Some(b),
            _ => None,
        }
    }

    pub fn constant(&mut self, c: Const) -> Id {
        self.intern(SNode::Const(c))
    }

    pub fn atom(&mut self, a: u32) -> Id {
        self.intern(SNode::Atom(a))
    }

    /// Insert a node, normalizing it first. Children are canonicalized.
    pub fn add(&mut self, node: SNode) -> Id {
        let node = node.map_children(|c| self.find(c));
        self.normalize(node)
    }

    fn normalize(&mut self, node: SNode) -> Id {
        match node {
            SNode::Bin(op, a, b) => self.normalize_bin(op, a, b),
            SNode::Not(a) => {
                if let Some(v) = self.bool_const(a) {
                    return self.constant(Const::Bool(!v));
                }
                if let SNode::Not(inner) = self.nodes[a as usize] {
                    return self.find(inner);
                }
                self.intern(SNode::Not(a))
            }
            SNode::Proj1(a) => match self.nodes[a as usize] {
                SNode::Pair(x, _) => self.find(x),
                _ => self.intern(SNode::Proj1(a)),
            },
            SNode::Proj2(a) => match self.nodes[a as usize] {
                SNode::Pair(_, y) => self.find(y),
                _ => self.intern(SNode::Proj2(a)),
            },
            SNode::Apply(f, a) => match self.nodes[f as usize] {
                SNode::Lambda(body) => {
                    self.merges += 1;
                    if self.merges > self.merge_cap {
                        self.incomplete = true;
                        return self.intern(SNode::Apply(f, a));
                    }
                    let mut memo = HashMap::new();
                    self.subst(body, 0, a, &mut memo)
                }
                _ => self.intern(SNode::Apply(f, a)),
            },
            SNode::Sum(s) => {
                let mut poly = Poly {
                    constant: s.constant,
                    ..Poly::default()
                };
                for (key, coef) in &s.terms {
                    let p = self.monomial(key);
                    poly.add_scaled(&p, *coef);
                }
                self.intern_poly(poly)
            }
            other => self.intern(other),
        }
    }

    fn normalize_bin(&mut self, op: Op, a: Id, b: Id) -> Id {
        match op {
            Op::Add => {
                let mut p = self.poly(a);
                p.add_scaled(&self.poly(b), 1);
                self.intern_poly(p)
            }
            Op::Sub => {
                let mut p = self.poly(a);
                p.add_scaled(&self.poly(b), -1);
                self.intern_poly(p)
            }
            Op::Mul => {
                let p = self.product(&[a, b]);
                self.intern_poly(p)
            }
            Op::Div | Op::Mod => match (self.int_const(a), self.int_const(b)) {
                (Some(x), Some(y)) if y != 0 => {
                    let z = if op == Op::Div { x.wrapping_div(y) } else { x.wrapping_rem(y) };
                    self.constant(Const::Int(z))
                }
                _ => self.intern(SNode::Bin(op, a, b)),
            },
            Op::Ne => {
                let eq = self.normalize_bin(Op::Eq, a, b);
                self.normalize(SNode::Not(eq))
            }
            Op::Gt => self.normalize_bin(Op::Lt, b, a),
            Op::Le => {
                let lt = self.normalize_bin(Op::Lt, b, a);
                self.normalize(SNode::Not(lt))
            }
            Op::Ge => {
                let lt = self.normalize_bin(Op::Lt, a, b);
                self.normalize(SNode::Not(lt))
            }
            Op::Lt => {
                if a == b {
                    return self.falsity;
                }
                if let (Some(x), Some(y)) = (self.int_const(a), self.int_const(b)) {
                    return self.constant(Const::Bool(x < y));
                }
                self.intern(SNode::Bin(Op::Lt, a, b))
            }
            Op::Eq => self.normalize_eq(a, b),
            Op::And | Op::Or => {
                let absorbing = op == Op::Or;
                match (self.bool_const(a), self.bool_const(b)) {
                    (Some(x), _) if x == absorbing => return self.constant(Const::Bool(absorbing)),
                    (_, Some(y)) if y == absorbing => return self.constant(Const::Bool(absorbing)),
                    (Some(_), _) => return b,
                    (_, Some(_)) => return a,
                    _ => {}
                }
                if a == b {
                    return a;
                }
                let (x, y) = if a <= b { (a, b) } else { (b, a) };
                self.intern(SNode::Bin(op, x, y))
            }
        }
    }

    fn normalize_eq(&mut self, a: Id, b: Id) -> Id {
        if a == b {
            return self.truth;
        }
        let (na, nb) = (self.nodes[a as usize].clone(), self.nodes[b as usize].clone());
        match (&na, &nb) {
            (SNode::Const(x), SNode::Const(y)) => return self.constant(Const::Bool(x == y)),
            (SNode::Pair(a1, a2), SNode::Pair(b1, b2)) => {
                let l = self.normalize_eq(*a1, *b1);
                let r = self.normalize_eq(*a2, *b2);
                return self.normalize_bin(Op::And, l, r);
            }
            (SNode::Inl(x), SNode::Inl(y)) | (SNode::Inr(x), SNode::Inr(y)) => {
                return self.normalize_eq(*x, *y);
            }
            (x, y) if shapes_clash(x, y) => return self.falsity,
            _ => {}
        }
        // Sums that differ by a constant.
        if matches!(na, SNode::Sum(_)) || matches!(nb, SNode::Sum(_)) {
            let mut d = self.poly(a);
            d.add_scaled(&self.poly(b), -1);
            if d.terms.is_empty() {
                return self.constant(Const::Bool(d.constant == 0));
            }
        }
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        self.intern(SNode::Bin(Op::Eq, x, y))
    }

    /// Polynomial view of a canonical node.
    fn poly(&self, id: Id) -> Poly {
        match &self.nodes[id as usize] {
            SNode::Const(Const::Int(z)) => Poly::constant(*z),
            SNode::Sum(s) => Poly::from_flat(s),
            _ => Poly::var(vec![id]),
        }
    }

    /// Product of factors without distributing over sums: a factor that
    /// is a sum of several terms stays an opaque key.
    fn product(&self, factors: &[Id]) -> Poly {
        let mut coef: i32 = 1;
        let mut key = Vec::new();
        for &f in factors {
            let p = self.poly(f);
            if p.terms.is_empty() {
                coef = coef.wrapping_mul(p.constant);
            } else if p.terms.len() == 1 && p.constant == 0 {
                let (k, c) = p.terms.iter().next().unwrap();
                coef = coef.wrapping_mul(*c);
                key.extend(k.iter().copied());
            } else {
                key.push(f);
            }
        }
        if coef == 0 {
            return Poly::constant(0);
        }
        if key.is_empty() {
            return Poly::constant(coef);
        }
        key.sort_unstable();
        let mut p = Poly::default();
        p.terms.insert(key, coef);
        p
    }

    fn monomial(&self, key: &[Id]) -> Poly {
        if let [single] = key {
            self.poly(*single)
        } else {
            self.product(key)
        }
    }

    fn intern_poly(&mut self, p: Poly) -> Id {
        if p.terms.is_empty() {
            return self.constant(Const::Int(p.constant));
        }
        if p.constant == 0 && p.terms.len() == 1 {
            let (k, c) = p.terms.iter().next().unwrap();
            if *c == 1 && k.len() == 1 {
                return k[0];
            }
        }
        self.intern(SNode::Sum(p.into_flat()))
    }

    fn subst(&mut self, n: Id, depth: u32, arg: Id, memo: &mut HashMap<(Id, u32), Id>) -> Id {
        let n = self.find(n);
        if self.loose[n as usize] <= depth {
            return n;
        }
        if let Some(&r) = memo.get(&(n, depth)) {
            return r;
        }
        let r = match self.nodes[n as usize].clone() {
            SNode::Bound(k) if k == depth => {
                let mut m = HashMap::new();
                self.shift(arg, depth, 0, &mut m)
            }
            SNode::Bound(k) => self.intern(SNode::Bound(k - 1)),
            SNode::Lambda(b) => {
                let b = self.subst(b, depth + 1, arg, memo);
                self.normalize(SNode::Lambda(b))
            }
            other => {
                let node = other.map_children(|c| self.subst(c, depth, arg, memo));
                let node = node.map_children(|c| self.find(c));
                self.normalize(node)
            }
        };
        memo.insert((n, depth), r);
        r
    }

    fn shift(&mut self, n: Id, amount: u32, cutoff: u32, memo: &mut HashMap<(Id, u32), Id>) -> Id {
        let n = self.find(n);
        if amount == 0 || self.loose[n as usize] <= cutoff {
            return n;
        }
        if let Some(&r) = memo.get(&(n, cutoff)) {
            return r;
        }
        let r = match self.nodes[n as usize].clone() {
            SNode::Bound(k) => self.intern(SNode::Bound(k + amount)),
            SNode::Lambda(b) => {
                let b = self.shift(b, amount, cutoff + 1, memo);
                self.normalize(SNode::Lambda(b))
            }
            other => {
                let node = other.map_children(|c| self.shift(c, amount, cutoff, memo));
                let node = node.map_children(|c| self.find(c));
                self.normalize(node)
            }
        };
        memo.insert((n, cutoff), r);
        r
    }

    /// Assert `a ≡ b` and restore all invariants.
    pub fn merge(&mut self, a: Id, b: Id) -> Result<(), MergeError> {
        self.merge_with(a, b, Rule::External)
    }

    pub fn merge_with(&mut self, a: Id, b: Id, rule: Rule) -> Result<(), MergeError> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb && (self.is_bound(ra) || self.is_bound(rb)) {
            return Err(MergeError::BoundVariable);
        }
        self.pending.push_back((a, b, rule));
        self.rebuild();
        Ok(())
    }

    /// Assert that a boolean node holds.
    pub fn assert_true(&mut self, id: Id) {
        let t = self.truth;
        let _ = self.merge_with(id, t, Rule::Assert);
    }

    pub fn is_true(&self, id: Id) -> bool {
        self.find(id) == self.find(self.truth)
    }

    fn is_bound(&self, id: Id) -> bool {
        matches!(self.nodes[id as usize], SNode::Bound(_))
    }

    fn is_canonical(&self, id: Id) -> bool {
        self.nodes[id as usize].children().iter().all(|&c| self.find(c) == c)
    }

    /// Does the representative structure below `from` reach class `target`?
    fn reaches(&self, from: Id, target: Id) -> bool {
        let mut stack = vec![from];
        let mut seen = HashSet::new();
        while let Some(n) = stack.pop() {
            for c in self.nodes[n as usize].children() {
                let r = self.find(c);
                if r == target {
                    return true;
                }
                if seen.insert(r) {
                    stack.push(r);
                }
            }
        }
        false
    }

    /// Pick the representative of the union of two classes. Returns
    /// `(winner, loser)`.
    fn choose(&self, a: Id, b: Id) -> (Id, Id) {
        if self.reaches(a, b) {
            return (b, a);
        }
        if self.reaches(b, a) {
            return (a, b);
        }
        match (self.is_canonical(a), self.is_canonical(b)) {
            (true, false) => return (a, b),
            (false, true) => return (b, a),
            _ => {}
        }
        let (ka, kb) = (self.nodes[a as usize].rank(), self.nodes[b as usize].rank());
        if (ka, a) <= (kb, b) {
            (a, b)
        } else {
            (b, a)
        }
    }

    fn log(&mut self, rule: Rule, winner: Id, loser: Id) {
        if self.trace.is_some() {
            let line = format!(
                "merge {}: {} <- {} [{}]",
                self.merges,
                self.show(winner),
                self.show(loser),
                rule
            );
            if let Some(t) = self.trace.as_mut() {
                t.push(line);
            }
        }
    }

    fn rebuild(&mut self) {
        loop {
            while let Some((a, b, rule)) = self.pending.pop_front() {
                if self.contradiction || self.incomplete {
                    self.pending.clear();
                    return;
                }
                let (ra, rb) = (self.find_compress(a), self.find_compress(b));
                if ra == rb {
                    continue;
                }
                if self.is_bound(ra) || self.is_bound(rb) {
                    continue;
                }
                self.merges += 1;
                if self.merges > self.merge_cap {
                    self.incomplete = true;
                    continue;
                }
                if self.clash(ra, rb) {
                    self.log(rule, ra, rb);
                    if let Some(t) = self.trace.as_mut() {
                        t.push("contradiction".to_string());
                    }
                    self.contradiction = true;
                    continue;
                }
                self.inject(ra, rb);
                let (w, l) = self.choose(ra, rb);
                self.log(rule, w, l);
                self.uf[l as usize] = w;
                let moved = std::mem::take(&mut self.members[l as usize]);
                if let SNode::Const(c) = self.nodes[w as usize] {
                    for &m in &moved {
                        self.propagate(m, c);
                    }
                }
                self.members[w as usize].extend(moved);
                let ps = std::mem::take(&mut self.parents[l as usize]);
                for &p in &ps {
                    self.repair(p);
                }
                self.parents[w as usize].extend(ps);
                self.order_dirty = true;
            }
            if self.contradiction || self.incomplete || !self.order_dirty {
                return;
            }
            self.order_dirty = false;
            self.saturate_order();
            if self.pending.is_empty() {
                return;
            }
        }
    }

    fn clash(&self, a: Id, b: Id) -> bool {
        shapes_clash(&self.nodes[a as usize], &self.nodes[b as usize])
    }

    fn inject(&mut self, a: Id, b: Id) {
        match (self.nodes[a as usize].clone(), self.nodes[b as usize].clone()) {
            (SNode::Pair(a1, a2), SNode::Pair(b1, b2)) => {
                self.pending.push_back((a1, b1, Rule::Injectivity));
                self.pending.push_back((a2, b2, Rule::Injectivity));
            }
            (SNode::Inl(x), SNode::Inl(y)) | (SNode::Inr(x), SNode::Inr(y)) => {
                self.pending.push_back((x, y, Rule::Injectivity));
            }
            _ => {}
        }
    }

    /// A node just joined the class of constant `c`.
    fn propagate(&mut self, m: Id, c: Const) {
        if self.loose[m as usize] > 0 {
            return;
        }
        let (t, f) = (self.truth, self.falsity);
        match (self.nodes[m as usize].clone(), c) {
            (SNode::Bin(Op::And, x, y), Const::Bool(true)) => {
                self.pending.push_back((x, t, Rule::Conjunct));
                self.pending.push_back((y, t, Rule::Conjunct));
            }
            (SNode::Bin(Op::Or, x, y), Const::Bool(false)) => {
                self.pending.push_back((x, f, Rule::Disjunct));
                self.pending.push_back((y, f, Rule::Disjunct));
            }
            (SNode::Not(x), Const::Bool(v)) => {
                let target = if v { f } else { t };
                self.pending.push_back((x, target, Rule::Negation));
            }
            (SNode::Bin(Op::Eq, x, y), Const::Bool(true)) => {
                self.pending.push_back((x, y, Rule::Equality));
            }
            (SNode::Bin(Op::Lt, x, y), Const::Bool(v)) => {
                if v {
                    self.order_facts.push((x, y, Rel::Lt));
                } else {
                    self.order_facts.push((y, x, Rel::Le));
                }
                self.order_dirty = true;
            }
            (SNode::Sum(s), Const::Int(k)) => self.solve_linear(&s, k),
            _ => {}
        }
    }

    /// `Σ + const == k` with a unit-coefficient atom: solve for the atom.
    fn solve_linear(&mut self, s: &FlatSum, k: i32) {
        let pivot = s.terms.iter().position(|(key, c)| {
            key.len() == 1 && (*c == 1 || *c == -1) && matches!(self.nodes[self.find(key[0]) as usize], SNode::Atom(_))
        });
        let Some(i) = pivot else { return };
        let (x, c) = (s.terms[i].0[0], s.terms[i].1);
        // c·x + rest + const = k  ⇒  x = c·(k − const − rest)
        let mut p = Poly::constant(k.wrapping_sub(s.constant));
        for (j, (key, coef)) in s.terms.iter().enumerate() {
            if j != i {
                let m = self.monomial(key);
                p.add_scaled(&m, coef.wrapping_neg());
            }
        }
        let mut solved = Poly::default();
        solved.add_scaled(&p, c);
        let rhs = self.intern_poly(solved);
        self.pending.push_back((x, rhs, Rule::Linear));
    }

    fn repair(&mut self, p: Id) {
        let content = self.nodes[p as usize].clone();
        let canon = content.map_children(|c| self.find(c));
        if canon == content {
            return;
        }
        let np = self.normalize(canon);
        self.pending.push_back((p, np, Rule::Congruence));
    }

    /// Transitive closure of the ordering facts over representatives.
    /// Returns the classes involved, the relation matrix, and interval
    /// bounds per class.
    #[allow(clippy::type_complexity)]
    fn order_closure(&self) -> (Vec<Id>, Vec<Option<Rel>>, Vec<(i64, i64)>) {
        let mut index: BTreeMap<Id, usize> = BTreeMap::new();
        let mut classes = Vec::new();
        let mut slot = |id: Id, classes: &mut Vec<Id>| -> usize {
            *index.entry(id).or_insert_with(|| {
                classes.push(id);
                classes.len() - 1
            })
        };
        let mut edges = Vec::new();
        for &(a, b, r) in &self.order_facts {
            let (a, b) = (self.find(a), self.find(b));
            let i = slot(a, &mut classes);
            let j = slot(b, &mut classes);
            edges.push((i, j, r));
        }
        // Integer constants and the operands of undecided comparisons take
        // part in interval reasoning.
        for (id, node) in self.nodes.iter().enumerate() {
            let id = id as Id;
            if !self.is_root(id) || self.loose[id as usize] > 0 {
                continue;
            }
            match node {
                SNode::Const(Const::Int(_)) => {
                    slot(id, &mut classes);
                }
                SNode::Bin(Op::Lt, a, b) => {
                    slot(self.find(*a), &mut classes);
                    slot(self.find(*b), &mut classes);
                }
                _ => {}
            }
        }
        let n = classes.len();
        let mut iv: Vec<(i64, i64)> = classes
            .iter()
            .map(|&c| match self.nodes[c as usize] {
                SNode::Const(Const::Int(z)) => (z as i64, z as i64),
                _ => (INT_MIN, INT_MAX),
            })
            .collect();
        for _ in 0..=n {
            let mut changed = false;
            for &(i, j, r) in &edges {
                let gap = if r == Rel::Lt { 1 } else { 0 };
                let lo = iv[i].0 + gap;
                if lo > iv[j].0 {
                    iv[j].0 = lo;
                    changed = true;
                }
                let hi = iv[j].1 - gap;
                if hi < iv[i].1 {
                    iv[i].1 = hi;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut rel = vec![None; n * n];
        if n <= CLOSURE_LIMIT {
            for &(i, j, r) in &edges {
                rel[i * n + j] = rel[i * n + j].max(Some(r));
            }
            for k in 0..n {
                for i in 0..n {
                    let Some(ik) = rel[i * n + k] else { continue };
                    for j in 0..n {
                        let Some(kj) = rel[k * n + j] else { continue };
                        let r = ik.max(kj);
                        if rel[i * n + j] < Some(r) {
                            rel[i * n + j] = Some(r);
                        }
                    }
                }
            }
        }
        (classes, rel, iv)
    }

    fn saturate_order(&mut self) {
        let (classes, rel, iv) = self.order_closure();
        let n = classes.len();
        let (t, f) = (self.truth, self.falsity);
        for i in 0..n {
            if iv[i].0 > iv[i].1 || rel[i * n + i] == Some(Rel::Lt) {
                if let Some(tr) = self.trace.as_mut() {
                    tr.push("contradiction [ordering]".to_string());
                }
                self.contradiction = true;
                return;
            }
        }
        let at = |id: Id| classes.iter().position(|&c| c == id);
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i * n + j].is_some() && rel[j * n + i].is_some() {
                    self.pending.push_back((classes[i], classes[j], Rule::Ordering));
                }
            }
            let (lo, hi) = iv[i];
            if lo == hi && !matches!(self.nodes[classes[i] as usize], SNode::Const(_)) {
                let k = self.constant(Const::Int(lo as i32));
                self.pending.push_back((classes[i], k, Rule::Ordering));
            }
        }
        for id in 0..self.nodes.len() as Id {
            if !self.is_root(id) || self.loose[id as usize] > 0 {
                continue;
            }
            let SNode::Bin(Op::Lt, a, b) = self.nodes[id as usize] else {
                continue;
            };
            let (Some(i), Some(j)) = (at(self.find(a)), at(self.find(b))) else {
                continue;
            };
            if rel[i * n + j] == Some(Rel::Lt) || iv[i].1 < iv[j].0 {
                self.pending.push_back((id, t, Rule::Ordering));
            } else if rel[j * n + i].is_some() || iv[i].0 >= iv[j].1 {
                self.pending.push_back((id, f, Rule::Ordering));
            }
        }
    }

    /// Render a node as an expression, following representatives.
    pub fn show(&self, id: Id) -> String {
        let mut s = String::new();
        self.show_into(id, 6, &mut s);
        s
    }

    fn show_into(&self, id: Id, depth: usize, out: &mut String) {
        if depth == 0 {
            let _ = write!(out, "#{id}");
            return;
        }
        let d = depth - 1;
        match &self.nodes[id as usize] {
            SNode::Const(c) => {
                let _ = write!(out, "{c}");
            }
            SNode::Atom(a) => {
                let _ = write!(out, "a{a}");
            }
            SNode::Bound(k) => {
                let _ = write!(out, "^{k}");
            }
            SNode::Bin(op, a, b) => {
                out.push('(');
                self.show_into(*a, d, out);
                let _ = write!(out, " {op} ");
                self.show_into(*b, d, out);
                out.push(')');
            }
            SNode::Pair(a, b) => {
                out.push('(');
                self.show_into(*a, d, out);
                out.push_str(", ");
                self.show_into(*b, d, out);
                out.push(')');
            }
            SNode::Inl(a) | SNode::Inr(a) | SNode::Proj1(a) | SNode::Proj2(a) | SNode::Not(a) | SNode::Lambda(a) => {
                let head = match &self.nodes[id as usize] {
                    SNode::Inl(_) => "inl",
                    SNode::Inr(_) => "inr",
                    SNode::Proj1(_) => "fst",
                    SNode::Proj2(_) => "snd",
                    SNode::Not(_) => "not",
                    _ => "lam",
                };
                let _ = write!(out, "{head}(");
                self.show_into(*a, d, out);
                out.push(')');
            }
            SNode::Apply(fun, a) => {
                out.push('(');
                self.show_into(*fun, d, out);
                out.push(' ');
                self.show_into(*a, d, out);
                out.push(')');
            }
            SNode::Sum(s) => {
                out.push('(');
                for (i, (key, c)) in s.terms.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    if *c != 1 {
                        let _ = write!(out, "{c}*");
                    }
                    for (j, k) in key.iter().enumerate() {
                        if j > 0 {
                            out.push('*');
                        }
                        self.show_into(*k, d, out);
                    }
                }
                if s.constant != 0 {
                    let _ = write!(out, " + {}", s.constant);
                }
                out.push(')');
            }
        }
    }

    /// Check the structural invariants; returns a description of the first
    /// violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut seen: HashMap<SNode, Id> = HashMap::new();
        for id in 0..self.nodes.len() as Id {
            let r = self.find(id);
            if self.find(r) != r {
                return Err(format!("find is not idempotent at {id}"));
            }
            if self.is_bound(id) && self.members[r as usize].len() != 1 {
                return Err(format!("bound variable {id} was merged"));
            }
            if self.contradiction || self.incomplete {
                continue;
            }
            if self.is_root(id) {
                for c in self.nodes[id as usize].children() {
                    if self.find(c) != c {
                        return Err(format!("representative {id} has non-canonical child {c}"));
                    }
                }
            }
            let key = self.canonical_content(id);
            if let Some(&other) = seen.get(&key) {
                if self.find(other) != r {
                    return Err(format!("congruent nodes {other} and {id} are in different classes"));
                }
            } else {
                seen.insert(key, id);
            }
        }
        Ok(())
    }
}

fn shapes_clash(a: &SNode, b: &SNode) -> bool {
    match (a, b) {
        (SNode::Const(x), SNode::Const(y)) => x != y,
        (SNode::Const(_), n) | (n, SNode::Const(_)) => n.is_constructor() || matches!(n, SNode::Lambda(_)),
        (SNode::Pair(..), SNode::Inl(_) | SNode::Inr(_))
        | (SNode::Inl(_) | SNode::Inr(_), SNode::Pair(..))
        | (SNode::Inl(_), SNode::Inr(_))
        | (SNode::Inr(_), SNode::Inl(_)) => true,
        (SNode::Lambda(_), n) | (n, SNode::Lambda(_)) => n.is_constructor(),
        _ => false,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly {
    terms: BTreeMap<Vec<Id>, i32>,
    constant: i32,
}

impl Poly {
    fn constant(k: i32) -> Poly {
        Poly {
            terms: BTreeMap::new(),
            constant: k,
        }
    }

    fn var(key: Vec<Id>) -> Poly {
        let mut p = Poly::default();
        p.terms.insert(key, 1);
        p
    }

    fn from_flat(s: &FlatSum) -> Poly {
        Poly {
            terms: s.terms.iter().cloned().collect(),
            constant: s.constant,
        }
    }

    fn add_scaled(&mut self, other: &Poly, k: i32) {
        self.constant = self.constant.wrapping_add(other.constant.wrapping_mul(k));
        for (key, c) in &other.terms {
            let e = self.terms.entry(key.clone()).or_insert(0);
            *e = e.wrapping_add(c.wrapping_mul(k));
            if *e == 0 {
                self.terms.remove(key);
            }
        }
    }

    fn into_flat(self) -> FlatSum {
        FlatSum {
            terms: self.terms.into_iter().collect(),
            constant: self.constant,
        }
    }
}
