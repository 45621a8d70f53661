//! Kashiwara operators, weights, tensor products and component exploration.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::tableaux::{DualTableau, Letter, Tableau, Word};

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// `level * Λ_0 + Σ eps[i] ε_i`, with zero coefficients omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub level: i64,
    pub eps: BTreeMap<i64, i64>,
}

impl Weight {
    pub fn zero() -> Self {
        Weight::default()
    }

    pub fn unit(i: i64) -> Self {
        let mut w = Weight::zero();
        w.add_eps(i, 1);
        w
    }

    pub fn add_eps(&mut self, i: i64, c: i64) {
        let e = self.eps.entry(i).or_insert(0);
        *e += c;
        if *e == 0 {
            self.eps.remove(&i);
        }
    }

    pub fn coeff(&self, i: i64) -> i64 {
        self.eps.get(&i).copied().unwrap_or(0)
    }

    /// `⟨wt, h_i⟩ = eps(i) - eps(i+1)`.
    pub fn pair(&self, i: i64) -> i64 {
        self.coeff(i) - self.coeff(i + 1)
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        let mut w = self.clone();
        w.level += other.level;
        for (&i, &c) in &other.eps {
            w.add_eps(i, c);
        }
        w
    }

    pub fn neg(&self) -> Weight {
        Weight { level: -self.level, eps: self.eps.iter().map(|(&i, &c)| (i, -c)).collect() }
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        self.plus(&other.neg())
    }

    /// The simple root `α_i = ε_i - ε_{i+1}`.
    pub fn simple_root(i: i64) -> Weight {
        let mut w = Weight::unit(i);
        w.add_eps(i + 1, -1);
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Raise,
    Lower,
}

/// Outcome of the bracket rule on a sequence of factors with signatures `-^ε +^φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub epsilon: i64,
    pub phi: i64,
    /// Factor on which the raising operator acts.
    pub raise_at: Option<usize>,
    /// Factor on which the lowering operator acts.
    pub lower_at: Option<usize>,
}

/// Cancels `+-` pairs (plus left of minus) across the factors.
pub fn bracket(factors: impl IntoIterator<Item = (i64, i64)>) -> Signature {
    let mut pluses: Vec<(usize, i64)> = Vec::new();
    let mut epsilon = 0;
    let mut raise_at = None;
    for (pos, (mut minus, plus)) in factors.into_iter().enumerate() {
        while minus > 0 {
            match pluses.last_mut() {
                Some(top) => {
                    let k = top.1.min(minus);
                    top.1 -= k;
                    minus -= k;
                    if top.1 == 0 {
                        pluses.pop();
                    }
                }
                None => {
                    epsilon += minus;
                    raise_at = Some(pos);
                    minus = 0;
                }
            }
        }
        if plus > 0 {
            pluses.push((pos, plus));
        }
    }
    Signature {
        epsilon,
        phi: pluses.iter().map(|p| p.1).sum(),
        raise_at,
        lower_at: pluses.first().map(|p| p.0),
    }
}

/// A regular crystal carrier.
pub trait Crystal: Clone + Ord {
    fn weight(&self) -> Weight;
    fn epsilon(&self, i: i64) -> i64;
    fn phi(&self, i: i64) -> i64;
    fn raise(&self, i: i64) -> Option<Self>;
    fn lower(&self, i: i64) -> Option<Self>;
    /// Smallest and largest letter occurring, used for window checks.
    fn letter_span(&self) -> Option<(i64, i64)>;
    /// Canonical JSON form, used for node labels.
    fn to_json(&self) -> Value;

    fn act(&self, i: i64, dir: Direction) -> Option<Self> {
        match dir {
            Direction::Raise => self.raise(i),
            Direction::Lower => self.lower(i),
        }
    }
}

fn letter_signature(a: Letter, i: i64) -> (i64, i64) {
    match (a.dual, a.index - i) {
        (false, 0) | (true, 1) => (0, 1),
        (false, 1) | (true, 0) => (1, 0),
        _ => (0, 0),
    }
}

fn letter_weight(a: Letter) -> Weight {
    let mut w = Weight::zero();
    w.add_eps(a.index, if a.dual { -1 } else { 1 });
    w
}

fn raise_letter(a: Letter) -> Letter {
    if a.dual {
        Letter::dual(a.index + 1)
    } else {
        Letter::plain(a.index - 1)
    }
}

fn lower_letter(a: Letter) -> Letter {
    if a.dual {
        Letter::dual(a.index - 1)
    } else {
        Letter::plain(a.index + 1)
    }
}

pub fn word_signature(w: &[Letter], i: i64) -> Signature {
    bracket(w.iter().map(|&a| letter_signature(a, i)))
}

/// Applies `ẽ_i` or `f̃_i` to a word by the bracket rule.
pub fn signature_act(w: &[Letter], i: i64, dir: Direction) -> Option<Word> {
    let sig = word_signature(w, i);
    let (pos, f): (Option<usize>, fn(Letter) -> Letter) = match dir {
        Direction::Raise => (sig.raise_at, raise_letter),
        Direction::Lower => (sig.lower_at, lower_letter),
    };
    let pos = pos?;
    let mut out = w.to_vec();
    out[pos] = f(out[pos]);
    Some(out)
}

fn word_span(w: &[Letter]) -> Option<(i64, i64)> {
    let lo = w.iter().map(|a| a.index).min()?;
    let hi = w.iter().map(|a| a.index).max()?;
    Some((lo, hi))
}

impl Crystal for Word {
    fn weight(&self) -> Weight {
        self.iter().fold(Weight::zero(), |w, &a| w.plus(&letter_weight(a)))
    }
    fn epsilon(&self, i: i64) -> i64 {
        word_signature(self, i).epsilon
    }
    fn phi(&self, i: i64) -> i64 {
        word_signature(self, i).phi
    }
    fn raise(&self, i: i64) -> Option<Self> {
        signature_act(self, i, Direction::Raise)
    }
    fn lower(&self, i: i64) -> Option<Self> {
        signature_act(self, i, Direction::Lower)
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        word_span(self)
    }
    fn to_json(&self) -> Value {
        Value::from(self.iter().map(|a| if a.dual { json!({ "d": a.index }) } else { json!(a.index) }).collect::<Vec<_>>())
    }
}

/// `ẽ_i`/`f̃_i` on a tableau through its column word.
pub fn tableau_act(t: &Tableau, i: i64, dir: Direction) -> Option<Tableau> {
    let w = signature_act(&t.word(), i, dir)?;
    let plain: Vec<i64> = w.iter().map(|a| a.index).collect();
    Some(t.with_column_word(&plain).expect("crystal operators preserve semistandardness"))
}

impl Crystal for Tableau {
    fn weight(&self) -> Weight {
        let mut w = Weight::zero();
        for x in self.entries() {
            w.add_eps(x, 1);
        }
        w
    }
    fn epsilon(&self, i: i64) -> i64 {
        word_signature(&self.word(), i).epsilon
    }
    fn phi(&self, i: i64) -> i64 {
        word_signature(&self.word(), i).phi
    }
    fn raise(&self, i: i64) -> Option<Self> {
        tableau_act(self, i, Direction::Raise)
    }
    fn lower(&self, i: i64) -> Option<Self> {
        tableau_act(self, i, Direction::Lower)
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        Some((self.min_entry()?, self.max_entry()?))
    }
    fn to_json(&self) -> Value {
        Tableau::to_json(self)
    }
}

fn dual_tableau_act(t: &DualTableau, i: i64, dir: Direction) -> Option<DualTableau> {
    let w = signature_act(&t.word(), i, dir)?;
    let plain: Vec<i64> = w.iter().rev().map(|a| a.index).collect();
    Some(DualTableau::from_vee(t.vee().with_column_word(&plain).expect("crystal operators preserve semistandardness")))
}

impl Crystal for DualTableau {
    fn weight(&self) -> Weight {
        self.vee().weight().neg()
    }
    fn epsilon(&self, i: i64) -> i64 {
        word_signature(&self.word(), i).epsilon
    }
    fn phi(&self, i: i64) -> i64 {
        word_signature(&self.word(), i).phi
    }
    fn raise(&self, i: i64) -> Option<Self> {
        dual_tableau_act(self, i, Direction::Raise)
    }
    fn lower(&self, i: i64) -> Option<Self> {
        dual_tableau_act(self, i, Direction::Lower)
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        self.vee().letter_span()
    }
    fn to_json(&self) -> Value {
        DualTableau::to_json(self)
    }
}

/// The dual crystal: arrows reversed, weight negated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dual<C>(pub C);

impl<C: Crystal> Crystal for Dual<C> {
    fn weight(&self) -> Weight {
        self.0.weight().neg()
    }
    fn epsilon(&self, i: i64) -> i64 {
        self.0.phi(i)
    }
    fn phi(&self, i: i64) -> i64 {
        self.0.epsilon(i)
    }
    fn raise(&self, i: i64) -> Option<Self> {
        self.0.lower(i).map(Dual)
    }
    fn lower(&self, i: i64) -> Option<Self> {
        self.0.raise(i).map(Dual)
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        self.0.letter_span()
    }
    fn to_json(&self) -> Value {
        json!({ "dual": self.0.to_json() })
    }
}

/// `a ⊗ b` under the tensor rule.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor<A, B>(pub A, pub B);

impl<A: Crystal, B: Crystal> Tensor<A, B> {
    fn sig(&self, i: i64) -> Signature {
        bracket([(self.0.epsilon(i), self.0.phi(i)), (self.1.epsilon(i), self.1.phi(i))])
    }
}

/// Applies `ẽ_i`/`f̃_i` to `a ⊗ b` by the displayed case split.
pub fn tensor_act<A: Crystal, B: Crystal>(a: &A, b: &B, i: i64, dir: Direction) -> Option<(A, B)> {
    let (pa, eb) = (a.phi(i), b.epsilon(i));
    let on_first = match dir {
        Direction::Raise => pa >= eb,
        Direction::Lower => pa > eb,
    };
    if on_first {
        Some((a.act(i, dir)?, b.clone()))
    } else {
        Some((a.clone(), b.act(i, dir)?))
    }
}

impl<A: Crystal, B: Crystal> Crystal for Tensor<A, B> {
    fn weight(&self) -> Weight {
        self.0.weight().plus(&self.1.weight())
    }
    fn epsilon(&self, i: i64) -> i64 {
        self.sig(i).epsilon
    }
    fn phi(&self, i: i64) -> i64 {
        self.sig(i).phi
    }
    fn raise(&self, i: i64) -> Option<Self> {
        tensor_act(&self.0, &self.1, i, Direction::Raise).map(|(a, b)| Tensor(a, b))
    }
    fn lower(&self, i: i64) -> Option<Self> {
        tensor_act(&self.0, &self.1, i, Direction::Lower).map(|(a, b)| Tensor(a, b))
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        match (self.0.letter_span(), self.1.letter_span()) {
            (Some(x), Some(y)) => Some((x.0.min(y.0), x.1.max(y.1))),
            (x, y) => x.or(y),
        }
    }
    fn to_json(&self) -> Value {
        json!({ "tensor": [self.0.to_json(), self.1.to_json()] })
    }
}

/// A finite index interval `[lo, hi]`; its colors are `lo..hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition(format!("empty window {lo}..{hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn colors(&self) -> std::ops::Range<i64> {
        self.lo..self.hi
    }

    pub fn admits<C: Crystal>(&self, x: &C) -> bool {
        x.letter_span().is_none_or(|(a, b)| a >= self.lo && b <= self.hi)
    }

    fn check<C: Crystal>(&self, x: &C) -> Result<()> {
        if self.admits(x) {
            Ok(())
        } else {
            Err(Error::WindowExhausted(format!("element uses letters outside {}..{}", self.lo, self.hi)))
        }
    }
}

impl std::str::FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once("..").ok_or_else(|| Error::Malformed(format!("window must read p..q, got {s}")))?;
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::Malformed(format!("bad window bound {x}")));
        Window::new(parse(a)?, parse(b)?)
    }
}

/// A connected component with nodes in canonical order and edges `b -i-> f̃_i b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGraph<C> {
    pub nodes: Vec<C>,
    pub edges: Vec<(usize, i64, usize)>,
}

impl<C: Crystal> ComponentGraph<C> {
    pub fn index_of(&self, x: &C) -> Option<usize> {
        self.nodes.binary_search(x).ok()
    }

    /// Graphviz rendering with JSON node labels and color edge labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n");
        for (k, x) in self.nodes.iter().enumerate() {
            let label = x.to_json().to_string().replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(s, "  n{k} [label=\"{label}\"];");
        }
        for &(a, i, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -> n{b} [label=\"{i}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first closure of `x` under `ẽ_i`, `f̃_i` for the colors of `window`.
pub fn explore_component<C: Crystal>(x: &C, window: Window, node_cap: usize) -> Result<ComponentGraph<C>> {
    window.check(x)?;
    let mut seen: BTreeSet<C> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut raw_edges = Vec::new();
    seen.insert(x.clone());
    queue.push_back(x.clone());
    while let Some(b) = queue.pop_front() {
        for i in window.colors() {
            if let Some(y) = b.lower(i) {
                raw_edges.push((b.clone(), i, y.clone()));
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
            if let Some(y) = b.raise(i) {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
            if seen.len() > node_cap {
                return Err(Error::NodeCap(node_cap));
            }
        }
    }
    let nodes: Vec<C> = seen.into_iter().collect();
    let idx = |y: &C| nodes.binary_search(y).expect("explored node");
    let mut edges: Vec<(usize, i64, usize)> = raw_edges.iter().map(|(a, i, b)| (idx(a), *i, idx(b))).collect();
    edges.sort_unstable();
    Ok(ComponentGraph { nodes, edges })
}

/// Whether `x ↦ y` extends to a color-preserving isomorphism of components.
pub fn equivalent<X: Crystal, Y: Crystal>(x: &X, y: &Y, window: Window, node_cap: usize) -> Result<bool> {
    window.check(x)?;
    window.check(y)?;
    let mut fwd: BTreeMap<X, Y> = BTreeMap::new();
    let mut back: BTreeMap<Y, X> = BTreeMap::new();
    let mut queue = VecDeque::new();
    fwd.insert(x.clone(), y.clone());
    back.insert(y.clone(), x.clone());
    queue.push_back((x.clone(), y.clone()));
    while let Some((a, b)) = queue.pop_front() {
        if a.weight() != b.weight() {
            return Ok(false);
        }
        for i in window.colors() {
            if a.epsilon(i) != b.epsilon(i) || a.phi(i) != b.phi(i) {
                return Ok(false);
            }
            for dir in [Direction::Raise, Direction::Lower] {
                match (a.act(i, dir), b.act(i, dir)) {
                    (None, None) => {}
                    (Some(a2), Some(b2)) => match (fwd.get(&a2), back.get(&b2)) {
                        (None, None) => {
                            fwd.insert(a2.clone(), b2.clone());
                            back.insert(b2.clone(), a2.clone());
                            queue.push_back((a2, b2));
                        }
                        (Some(img), Some(pre)) if *img == b2 && *pre == a2 => {}
                        _ => return Ok(false),
                    },
                    _ => return Ok(false),
                }
            }
        }
        if fwd.len() > node_cap {
            return Err(Error::NodeCap(node_cap));
        }
    }
    Ok(true)
}
