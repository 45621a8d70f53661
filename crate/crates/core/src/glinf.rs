//! Integer-indexed 0/1 matrices, the level `m - n` crystals `B(Λ_μ) ⊗ B(-Λ_ν)`,
//! their component labels and multiplicities, and the map `ψ^∞`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::crystal::{bracket, Crystal, Direction, Signature, Tensor, Weight};
use crate::error::{Error, Result};
use crate::extremal::product_multiplicity;
use crate::lr::{enumerate_lr, lr_membership};
use crate::modified::{kappa, psi, SkewPair};
use crate::rsk_jdt::column_insert;
use crate::shapes::{GeneralizedPartition, Partition, SkewShape};
use crate::tableaux::{DualTableau, Tableau};

/// A 0/1 row over `ℤ`: `ldef` left of `lo`, `bits` from `lo`, `rdef` afterwards.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryRow {
    ldef: u8,
    rdef: u8,
    lo: i64,
    bits: Vec<u8>,
}

impl BinaryRow {
    pub fn new(ldef: u8, rdef: u8, lo: i64, bits: Vec<u8>) -> Result<Self> {
        if ldef > 1 || rdef > 1 || bits.iter().any(|&b| b > 1) {
            return Err(Error::Malformed("row entries must be 0 or 1".into()));
        }
        let mut row = BinaryRow { ldef, rdef, lo, bits };
        row.normalize();
        Ok(row)
    }

    /// `ldef` for `j < boundary`, `rdef` from `boundary` on.
    pub fn step(ldef: u8, rdef: u8, boundary: i64) -> Self {
        BinaryRow::new(ldef, rdef, boundary, Vec::new()).expect("bits are 0/1")
    }

    /// Ones exactly on `[a, b]`.
    pub fn interval(a: i64, b: i64) -> Self {
        let bits = if b >= a { vec![1; (b - a + 1) as usize] } else { Vec::new() };
        BinaryRow::new(0, 0, a, bits).expect("bits are 0/1")
    }

    pub fn ldef(&self) -> u8 {
        self.ldef
    }

    pub fn rdef(&self) -> u8 {
        self.rdef
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    fn end(&self) -> i64 {
        self.lo + self.bits.len() as i64
    }

    pub fn get(&self, j: i64) -> u8 {
        if j < self.lo {
            self.ldef
        } else if j >= self.end() {
            self.rdef
        } else {
            self.bits[(j - self.lo) as usize]
        }
    }

    pub fn set(&mut self, j: i64, v: u8) {
        if self.get(j) == v {
            return;
        }
        if j < self.lo {
            let mut bits = vec![self.ldef; (self.lo - j) as usize];
            bits.append(&mut self.bits);
            self.bits = bits;
            self.lo = j;
        }
        if j >= self.end() {
            let extra = (j - self.end() + 1) as usize;
            self.bits.extend(std::iter::repeat(self.rdef).take(extra));
        }
        self.bits[(j - self.lo) as usize] = v;
        self.normalize();
    }

    fn normalize(&mut self) {
        let lead = self.bits.iter().take_while(|&&b| b == self.ldef).count();
        self.bits.drain(..lead);
        self.lo += lead as i64;
        while self.bits.last() == Some(&self.rdef) {
            self.bits.pop();
        }
        if self.bits.is_empty() && self.ldef == self.rdef {
            self.lo = 0;
        }
    }

    /// Positions that can differ from the defaults, including a step boundary.
    fn span(&self) -> Option<(i64, i64)> {
        match (self.bits.is_empty(), self.ldef == self.rdef) {
            (true, true) => None,
            (true, false) => Some((self.lo - 1, self.lo)),
            (false, _) => Some((self.lo, self.end() - 1)),
        }
    }

    /// `(1 - a_j)`.
    pub fn flipped(&self) -> Self {
        BinaryRow::new(1 - self.ldef, 1 - self.rdef, self.lo, self.bits.iter().map(|b| 1 - b).collect()).expect("bits are 0/1")
    }

    pub fn to_json(&self) -> Value {
        json!({ "ldef": self.ldef, "rdef": self.rdef, "lo": self.lo, "bits": self.bits })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bit = |k: &str| v.get(k).and_then(Value::as_u64).filter(|&b| b <= 1).map(|b| b as u8);
        let (ldef, rdef) = match (bit("ldef"), bit("rdef")) {
            (Some(l), Some(r)) => (l, r),
            _ => return Err(Error::Malformed("row needs ldef and rdef in {0,1}".into())),
        };
        let lo = v.get("lo").map_or(Some(0), Value::as_i64).ok_or_else(|| Error::Malformed("lo must be an integer".into()))?;
        let bits = match v.get("bits") {
            None => Vec::new(),
            Some(b) => b
                .as_array()
                .and_then(|a| a.iter().map(|x| x.as_u64().filter(|&x| x <= 1).map(|x| x as u8)).collect())
                .ok_or_else(|| Error::Malformed("bits must be 0/1 integers".into()))?,
        };
        BinaryRow::new(ldef, rdef, lo, bits)
    }
}

/// A matrix with rows `1..=len` and columns `ℤ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryMatrix {
    rows: Vec<BinaryRow>,
}

impl BinaryMatrix {
    pub fn new(rows: Vec<BinaryRow>) -> Self {
        BinaryMatrix { rows }
    }

    pub fn rows(&self) -> &[BinaryRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Entry `a_ij` with `i` counted from 1.
    pub fn get(&self, i: usize, j: i64) -> u8 {
        self.rows[i - 1].get(j)
    }

    pub fn set(&mut self, i: usize, j: i64, v: u8) {
        self.rows[i - 1].set(j, v);
    }

    /// `(1 - a_ij)`, which realizes the dual crystal.
    pub fn dual(&self) -> Self {
        BinaryMatrix { rows: self.rows.iter().map(BinaryRow::flipped).collect() }
    }

    /// Rows of `self` followed by rows of `below`.
    pub fn stack(&self, below: &BinaryMatrix) -> Self {
        BinaryMatrix { rows: self.rows.iter().chain(&below.rows).cloned().collect() }
    }

    fn span(&self) -> Option<(i64, i64)> {
        let spans: Vec<(i64, i64)> = self.rows.iter().filter_map(BinaryRow::span).collect();
        Some((spans.iter().map(|s| s.0).min()?, spans.iter().map(|s| s.1).max()?))
    }

    fn column_signature(&self, k: i64) -> Signature {
        bracket(self.rows.iter().map(|row| match (row.get(k), row.get(k + 1)) {
            (1, 0) => (0, 1),
            (0, 1) => (1, 0),
            _ => (0, 0),
        }))
    }

    /// Every column color is admissible: the row index set is finite.
    pub fn admissible(&self, _k: i64) -> bool {
        true
    }

    /// `x̃_k` acting through the tensor rule on rows in increasing order.
    pub fn act(&self, k: i64, dir: Direction) -> Option<BinaryMatrix> {
        let sig = self.column_signature(k);
        let mut out = self.clone();
        match dir {
            Direction::Lower => {
                let i = sig.lower_at?;
                out.rows[i].set(k, 0);
                out.rows[i].set(k + 1, 1);
            }
            Direction::Raise => {
                let i = sig.raise_at?;
                out.rows[i].set(k, 1);
                out.rows[i].set(k + 1, 0);
            }
        }
        Some(out)
    }

    /// Rows `l, l+1` have no infinite unmatched tail: no `(1,0)` pattern far right
    /// (the left end of the transposed tensor word) and no `(0,1)` pattern far left.
    pub fn row_admissible(&self, l: usize) -> bool {
        if l == 0 || l >= self.len() {
            return false;
        }
        let (a, b) = (&self.rows[l - 1], &self.rows[l]);
        !((a.rdef, b.rdef) == (1, 0) || (a.ldef, b.ldef) == (0, 1))
    }

    /// `Ẽ_l` / `F̃_l`: the column action conjugated by `ρ`, so columns are read
    /// with `j` decreasing and `F̃_l` moves a one from row `l` to row `l+1`.
    pub fn act_row(&self, l: usize, dir: Direction) -> Result<Option<BinaryMatrix>> {
        if !self.row_admissible(l) {
            return Err(Error::NotAdmissible(format!("rows {l} and {} are not admissible", l + 1)));
        }
        let (a, b) = (&self.rows[l - 1], &self.rows[l]);
        let spans: Vec<(i64, i64)> = [a.span(), b.span()].into_iter().flatten().collect();
        let Some(lo) = spans.iter().map(|s| s.0).min() else { return Ok(None) };
        let hi = spans.iter().map(|s| s.1).max().expect("nonempty");
        let cols: Vec<i64> = ((lo - 1)..=(hi + 1)).rev().collect();
        let sig = bracket(cols.iter().map(|&j| match (a.get(j), b.get(j)) {
            (1, 0) => (0, 1),
            (0, 1) => (1, 0),
            _ => (0, 0),
        }));
        let mut out = self.clone();
        let (pos, top, bottom) = match dir {
            Direction::Lower => (sig.lower_at, 0, 1),
            Direction::Raise => (sig.raise_at, 1, 0),
        };
        let Some(pos) = pos else { return Ok(None) };
        out.rows[l - 1].set(cols[pos], top);
        out.rows[l].set(cols[pos], bottom);
        Ok(Some(out))
    }

    pub fn to_json(&self) -> Value {
        json!({ "rows": self.rows.iter().map(BinaryRow::to_json).collect::<Vec<_>>() })
    }

    /// Accepts `{"rows": [...]}` or a bare array of rows.
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("rows")
            .unwrap_or(v)
            .as_array()
            .ok_or_else(|| Error::Malformed("matrix needs an array of rows".into()))?;
        Ok(BinaryMatrix { rows: rows.iter().map(BinaryRow::from_json).collect::<Result<_>>()? })
    }
}

impl Crystal for BinaryMatrix {
    /// `Σ_i (ldef_i - rdef_i) Λ_0 + Σ_j (a_ij - c_ij) ε_j` with `c_ij` the left
    /// default for `j ≤ 0` and the right default for `j > 0`.
    fn weight(&self) -> Weight {
        let mut w = Weight::zero();
        for row in &self.rows {
            w.level += row.ldef as i64 - row.rdef as i64;
            let lo = row.lo.min(1);
            let hi = (row.end() - 1).max(0);
            for j in lo..=hi {
                let ground = if j <= 0 { row.ldef } else { row.rdef };
                w.add_eps(j, row.get(j) as i64 - ground as i64);
            }
        }
        w
    }
    fn epsilon(&self, i: i64) -> i64 {
        self.column_signature(i).epsilon
    }
    fn phi(&self, i: i64) -> i64 {
        self.column_signature(i).phi
    }
    fn raise(&self, i: i64) -> Option<Self> {
        self.act(i, Direction::Raise)
    }
    fn lower(&self, i: i64) -> Option<Self> {
        self.act(i, Direction::Lower)
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        self.span()
    }
    fn to_json(&self) -> Value {
        BinaryMatrix::to_json(self)
    }
}

/// `Λ_k`: level one, plus `ε_1 + … + ε_k` or minus `ε_{k+1} + … + ε_0`.
pub fn fundamental_weight(k: i64) -> Weight {
    let mut w = Weight { level: 1, ..Weight::zero() };
    for j in 1..=k {
        w.add_eps(j, 1);
    }
    for j in (k + 1)..=0 {
        w.add_eps(j, -1);
    }
    w
}

/// `Λ_λ = Λ_{λ_1} + … + Λ_{λ_n}`.
pub fn dominant_weight(lambda: &GeneralizedPartition) -> Weight {
    lambda.parts().iter().fold(Weight::zero(), |w, &k| w.plus(&fundamental_weight(k)))
}

/// The two extremal patterns: `Circ` reverses the row order, `Diamond` keeps it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    Circ,
    Diamond,
}

/// Finite-support generator on `n` rows for a partition with `λ_1 ≤ n`, at offset `r`.
pub fn build_e(lambda: &Partition, n: usize, r: i64, variant: Variant) -> Result<BinaryMatrix> {
    if lambda.part(0) > n {
        return Err(Error::Precondition(format!("{lambda} has a part larger than {n}")));
    }
    let conj = lambda.conjugate();
    let rows = (1..=n)
        .map(|i| match variant {
            Variant::Circ => BinaryRow::interval(1 + r, conj.part(n - i) as i64 + r),
            Variant::Diamond => BinaryRow::interval(r - conj.part(i - 1) as i64 + 1, r),
        })
        .collect();
    Ok(BinaryMatrix { rows })
}

/// Level-`n` generator: row `i` holds ones exactly for `j ≤ λ_{n-i+1}` (`Circ`) or `j ≤ λ_i` (`Diamond`).
pub fn build_f(lambda: &GeneralizedPartition, variant: Variant) -> BinaryMatrix {
    let n = lambda.len();
    let rows = (1..=n)
        .map(|i| {
            let p = match variant {
                Variant::Circ => lambda.parts()[n - i],
                Variant::Diamond => lambda.parts()[i - 1],
            };
            BinaryRow::step(1, 0, p + 1)
        })
        .collect();
    BinaryMatrix { rows }
}

/// The generator of `B(Λ_μ) ⊗ B(-Λ_ν)`: `A°_μ` stacked over the dual of `A◇_ν`.
pub fn generator(mu: &GeneralizedPartition, nu: &GeneralizedPartition) -> BinaryMatrix {
    build_f(mu, Variant::Circ).stack(&build_f(nu, Variant::Diamond).dual())
}

/// `(λ - (r^n))'`.
pub fn column_shape(lambda: &GeneralizedPartition, r: i64) -> Result<Partition> {
    Ok(lambda.shift(r).to_partition()?.conjugate())
}

fn check_layout(a: &BinaryMatrix, m: usize, n: usize) -> Result<()> {
    if a.len() != m + n {
        return Err(Error::NotMember(format!("expected {} rows, found {}", m + n, a.len())));
    }
    let ok = a.rows.iter().enumerate().all(|(i, row)| if i < m { (row.ldef, row.rdef) == (1, 0) } else { (row.ldef, row.rdef) == (0, 1) });
    if !ok {
        return Err(Error::NotMember("rows must be eventually 1 then 0 (first block) or 0 then 1 (second block)".into()));
    }
    Ok(())
}

/// The largest `r ≤ min(μ_m, ν_n)` with every row at its left default for `j ≤ r`.
pub fn default_base(a: &BinaryMatrix, mu: &GeneralizedPartition, nu: &GeneralizedPartition) -> i64 {
    let rows = a.rows.iter().map(|row| row.lo - 1);
    rows.chain(mu.min_part()).chain(nu.min_part()).min().unwrap_or(0)
}

fn tableau_from_columns(cols: &[Vec<i64>]) -> Result<Tableau> {
    let height = cols.first().map_or(0, Vec::len);
    let rows = (0..height).map(|p| cols.iter().filter_map(|c| c.get(p).copied()).collect()).collect();
    Tableau::from_rows(rows).map_err(|e| Error::NotMember(format!("columns do not form a tableau: {e}")))
}

/// `A ↦ S^{>r} ⊗ T^{>r}`: column `c` of `S` (from the left) is `{j > r : a_{m-c+1, j} = 1}`,
/// column `c` of `T^∨` is `{j > r : a_{m+c, j} = 0}`.
pub fn to_pair(a: &BinaryMatrix, mu: &GeneralizedPartition, nu: &GeneralizedPartition, r: i64) -> Result<(Tableau, DualTableau)> {
    let (m, n) = (mu.len(), nu.len());
    check_layout(a, m, n)?;
    let bound = mu.min_part().into_iter().chain(nu.min_part()).min();
    if bound.is_some_and(|b| r > b) {
        return Err(Error::Precondition(format!("base {r} exceeds the smallest part")));
    }
    let mut s_cols = Vec::new();
    for c in 1..=m {
        let row = &a.rows[m - c];
        s_cols.push(collect_above(row, r, 1, mu.parts()[c - 1] - r)?);
    }
    let mut t_cols = Vec::new();
    for c in 1..=n {
        let row = &a.rows[m + c - 1];
        t_cols.push(collect_above(row, r, 0, nu.parts()[c - 1] - r)?);
    }
    Ok((tableau_from_columns(&s_cols)?, DualTableau::from_vee(tableau_from_columns(&t_cols)?)))
}

fn collect_above(row: &BinaryRow, r: i64, bit: u8, expected: i64) -> Result<Vec<i64>> {
    if row.lo <= r && (row.lo..=r).any(|j| row.get(j) != row.ldef) {
        return Err(Error::NotMember(format!("row is not at its default for j ≤ {r}")));
    }
    let hi = row.end().max(r + 1);
    let set: Vec<i64> = ((r + 1)..=hi).filter(|&j| row.get(j) == bit).collect();
    if set.len() as i64 != expected {
        return Err(Error::NotMember(format!("row holds {} marked positions above {r}, expected {expected}", set.len())));
    }
    Ok(set)
}

pub fn window_membership(a: &BinaryMatrix, mu: &GeneralizedPartition, nu: &GeneralizedPartition, r: i64) -> bool {
    to_pair(a, mu, nu, r).is_ok()
}

/// Inverse of [`to_pair`].
pub fn from_pair(s: &Tableau, t: &DualTableau, mu: &GeneralizedPartition, nu: &GeneralizedPartition, r: i64) -> Result<BinaryMatrix> {
    if s.shape().outer() != &column_shape(mu, r)? || t.vee().shape().outer() != &column_shape(nu, r)? {
        return Err(Error::InvalidShape("tableau shapes disagree with (μ - r)' and (ν - r)'".into()));
    }
    if s.entries().chain(t.vee().entries()).any(|x| x <= r) {
        return Err(Error::Alphabet(format!("entries must exceed {r}")));
    }
    let (m, n) = (mu.len(), nu.len());
    let mut rows = Vec::new();
    for i in 1..=m {
        let mut row = BinaryRow::step(1, 0, r + 1);
        for j in s.column(m - i) {
            row.set(j, 1);
        }
        rows.push(row);
    }
    for c in 0..n {
        let mut row = BinaryRow::step(0, 1, r + 1);
        for j in t.vee().column(c) {
            row.set(j, 0);
        }
        rows.push(row);
    }
    Ok(BinaryMatrix { rows })
}

fn shift(t: &Tableau, d: i64) -> Tableau {
    t.map_entries(|x| x + d, t.order()).expect("shifting keeps semistandardness")
}

/// `Y^∨ ⊗ X` with rows numbered from `base + 1`; `width` is the number of columns of `(μ - r^n)'`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InfPair {
    pub base: i64,
    pub width: usize,
    pub y: Tableau,
    pub x: Tableau,
}

fn pad_top(t: &Tableau, count: usize, width: usize) -> Tableau {
    let mut inner = vec![width; count];
    let mut rows = vec![Vec::new(); count];
    for i in 0..t.shape().rows() {
        inner.push(t.shape().inner().part(i));
        rows.push(t.row(i).to_vec());
    }
    Tableau::skew_from_rows(inner, rows, t.order()).expect("padding keeps the shape valid")
}

impl InfPair {
    /// The same element with rows numbered from `s + 1`.
    pub fn rebase(&self, s: i64) -> Result<InfPair> {
        if s > self.base {
            return Err(Error::Precondition(format!("cannot rebase from {} up to {s}", self.base)));
        }
        let d = (self.base - s) as usize;
        Ok(InfPair { base: s, width: self.width, y: pad_top(&self.y, d, self.width), x: pad_top(&self.x, d, self.width) })
    }

    /// Equality after moving both to the lower base.
    pub fn same_element(&self, other: &InfPair) -> bool {
        let s = self.base.min(other.base);
        self.width == other.width && matches!((self.rebase(s), other.rebase(s)), (Ok(a), Ok(b)) if a == b)
    }

    pub fn skew_pair(&self) -> SkewPair {
        SkewPair { y: self.y.clone(), x: self.x.clone() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "base": self.base, "y": self.y.to_json(), "x": self.x.to_json() })
    }
}

fn same_length(mu: &GeneralizedPartition, nu: &GeneralizedPartition) -> Result<()> {
    if mu.len() != nu.len() || mu.is_empty() {
        return Err(Error::Precondition("ψ^∞ needs μ and ν of the same positive length".into()));
    }
    Ok(())
}

/// `ψ^∞` computed through `ψ^{>r}`.
pub fn psi_at(a: &BinaryMatrix, mu: &GeneralizedPartition, nu: &GeneralizedPartition, r: i64) -> Result<InfPair> {
    same_length(mu, nu)?;
    let (s, t) = to_pair(a, mu, nu, r)?;
    let out = psi(&shift(&s, -r), &DualTableau::from_vee(shift(t.vee(), -r)))?;
    Ok(InfPair { base: r, width: mu.len(), y: shift(&out.y, r), x: shift(&out.x, r) })
}

/// `ψ^∞_{μ,ν}(A ⊗ A')` at the default base.
pub fn psi_inf(a: &BinaryMatrix, mu: &GeneralizedPartition, nu: &GeneralizedPartition) -> Result<InfPair> {
    psi_at(a, mu, nu, default_base(a, mu, nu))
}

/// `κ_k^∨ ⊗ κ_k` in the integer row numbering.
pub fn kappa_inf(p: &InfPair, k: i64) -> Result<InfPair> {
    let q = if k < p.base { p.rebase(k)? } else { p.clone() };
    let rows = (k - q.base) as usize;
    Ok(InfPair { base: q.base, width: q.width + 1, y: kappa(&q.y, rows), x: kappa(&q.x, rows) })
}

/// The embedding `B(Λ_μ) ⊗ B(-Λ_ν) → B(Λ_μ + Λ_k) ⊗ B(-Λ_k - Λ_ν)`: column-inserts
/// `s+1, …, k` into `S^{>s}` and into `(T^{>s})^∨`.
pub fn iota_inf(
    a: &BinaryMatrix,
    mu: &GeneralizedPartition,
    nu: &GeneralizedPartition,
    k: i64,
) -> Result<(BinaryMatrix, GeneralizedPartition, GeneralizedPartition)> {
    let s = default_base(a, mu, nu).min(k);
    let (st, tt) = to_pair(a, mu, nu, s)?;
    let insert = |t: &Tableau| ((s + 1)..=k).fold(t.clone(), |acc, x| column_insert(x, &acc).0);
    let (mu2, nu2) = (mu.insert(k), nu.insert(k));
    let b = from_pair(&insert(&st), &DualTableau::from_vee(insert(tt.vee())), &mu2, &nu2, s)?;
    Ok((b, mu2, nu2))
}

/// `(ζ, η, ξ)` with `B_{ζ,η} ⊗ B(Λ_ξ)` the component type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ComponentLabel {
    pub zeta: Partition,
    pub eta: Partition,
    pub xi: GeneralizedPartition,
}

impl ComponentLabel {
    pub fn to_json(&self) -> Value {
        json!({ "zeta": self.zeta, "eta": self.eta, "xi": self.xi.parts() })
    }

    /// Accepts `{"zeta": [...], "eta": [...], "xi": [...]}`; missing fields are empty.
    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Raw {
            #[serde(default)]
            zeta: Partition,
            #[serde(default)]
            eta: Partition,
            #[serde(default)]
            xi: Option<GeneralizedPartition>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(format!("component label: {e}")))?;
        let xi = raw.xi.unwrap_or(GeneralizedPartition::new(Vec::new())?);
        Ok(ComponentLabel { zeta: raw.zeta, eta: raw.eta, xi })
    }
}

/// Label of a component whose part above `r` has type `B^{>r}_{σ,τ}`.
pub fn component_label(sigma: &Partition, tau: &Partition, r: i64, m: usize, n: usize) -> Result<ComponentLabel> {
    let sc = sigma.conjugate();
    if m < n || sc.len() > m {
        return Err(Error::Precondition(format!("need m ≥ n and σ_1 ≤ m, got m={m}, n={n}, σ={sigma}")));
    }
    let zeta = Partition::new((m - n..m).map(|i| sc.part(i)).collect())?.conjugate();
    let xi = GeneralizedPartition::new((0..m - n).map(|i| sc.part(i) as i64 + r).collect())?;
    Ok(ComponentLabel { zeta, eta: tau.clone(), xi })
}

/// The `σ` with `component_label(σ, η, r) = label`, if one exists.
pub fn label_sigma(label: &ComponentLabel, r: i64, m: usize, n: usize) -> Option<Partition> {
    if label.xi.len() != m - n || label.zeta.part(0) > n {
        return None;
    }
    let mut conj: Vec<i64> = label.xi.parts().iter().map(|x| x - r).collect();
    conj.extend(label.zeta.conjugate().parts().iter().map(|&p| p as i64));
    if conj.iter().any(|&p| p < 0) || conj.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(Partition::new(conj.into_iter().map(|p| p as usize).collect()).ok()?.conjugate())
}

/// Number of components of the given type meeting the part above `r`.
pub fn multiplicity_at(mu: &GeneralizedPartition, nu: &GeneralizedPartition, label: &ComponentLabel, r: i64) -> Result<usize> {
    let (alpha, beta) = (column_shape(mu, r)?, column_shape(nu, r)?);
    Ok(match label_sigma(label, r, mu.len(), nu.len()) {
        Some(sigma) if alpha.contains(&sigma) && beta.contains(&label.eta) => product_multiplicity(&alpha, &beta, &sigma, &label.eta),
        _ => 0,
    })
}

/// Readings of the stable multiplicity formula `Σ_λ c^{μ+(k^m)}_{σλ} c^{ν+(k^n)}_{ηλ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// `σ = (ξ + (k^{m-n})) ∪ ζ'` paired with `η'`.
    Corrected,
    /// `σ = (ξ + (k^{m-n})) ∪ ζ'` paired with `η`.
    Statement,
    /// `σ = (ξ + (k^{m-n})) ∪ ζ` paired with `η`.
    ProofLastLine,
}

impl Formula {
    pub const ALL: [Formula; 3] = [Formula::Corrected, Formula::Statement, Formula::ProofLastLine];
}

/// One evaluation of the formula at shift `k`.
pub fn formula_value(mu: &GeneralizedPartition, nu: &GeneralizedPartition, label: &ComponentLabel, k: i64, formula: Formula) -> Result<usize> {
    let (big_mu, big_nu) = (mu.shift(-k).to_partition()?, nu.shift(-k).to_partition()?);
    let mut parts: Vec<i64> = label.xi.parts().iter().map(|x| x + k).collect();
    if parts.iter().any(|&p| p < 0) {
        return Ok(0);
    }
    let (tail, eta) = match formula {
        Formula::Corrected => (label.zeta.conjugate(), label.eta.conjugate()),
        Formula::Statement => (label.zeta.conjugate(), label.eta.clone()),
        Formula::ProofLastLine => (label.zeta.clone(), label.eta.clone()),
    };
    parts.extend(tail.parts().iter().map(|&p| p as i64));
    let sigma = Partition::from_multiset(parts.into_iter().map(|p| p as usize).collect());
    if !big_mu.contains(&sigma) || !big_nu.contains(&eta) {
        return Ok(0);
    }
    Ok(product_multiplicity(&big_mu, &big_nu, &sigma, &eta))
}

/// A stabilized formula value and the shift where it was read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilized {
    pub value: usize,
    pub k: i64,
}

/// Smallest shift from which the part above `-k` meets every component of the given type.
pub fn stable_shift(mu: &GeneralizedPartition, nu: &GeneralizedPartition, label: &ComponentLabel) -> i64 {
    let min_part = mu.min_part().into_iter().chain(nu.min_part()).min().unwrap_or(0);
    let mut k = 1.max(-min_part) + 1;
    let n = nu.len() as i64;
    if n > 0 {
        let nu1 = nu.parts()[0];
        let total: i64 = nu.parts().iter().sum();
        k = k.max((n - 1) * nu1 - total + label.eta.size() as i64 + 2);
    }
    if let Some(&last) = label.xi.parts().last() {
        k = k.max(label.zeta.len() as i64 - last + 1);
    }
    k
}

/// The formula evaluated from [`stable_shift`] until two consecutive values agree.
pub fn multiplicity(mu: &GeneralizedPartition, nu: &GeneralizedPartition, label: &ComponentLabel, formula: Formula) -> Result<Stabilized> {
    if mu.len() < nu.len() {
        return Err(Error::Precondition("multiplicities need m ≥ n".into()));
    }
    let start = stable_shift(mu, nu, label);
    let mut prev = formula_value(mu, nu, label, start, formula)?;
    for k in start + 1..start + 64 {
        let v = formula_value(mu, nu, label, k, formula)?;
        if v == prev {
            return Ok(Stabilized { value: v, k: k - 1 });
        }
        prev = v;
    }
    Err(Error::WindowExhausted("formula did not stabilize within 64 shifts".into()))
}

/// Weights of the highest-weight vertices of `B_α ⊗ B_β^∨` on letters `1..=letters`.
fn highest_weight_profile(alpha: &Partition, beta: &Partition, letters: i64) -> BTreeMap<Vec<i64>, usize> {
    let h = Tableau::highest(alpha);
    let mut out = BTreeMap::new();
    for t in Tableau::all_sst(&SkewShape::straight(beta.clone()), 1, letters) {
        let b = Tensor(h.clone(), DualTableau::from_vee(t));
        if (1..letters).all(|i| b.epsilon(i) == 0) {
            let w = b.weight();
            *out.entry((1..=letters).map(|i| w.coeff(i)).collect()).or_insert(0) += 1;
        }
    }
    out
}

fn cartan_weight(sigma: &Partition, tau: &Partition, letters: i64) -> Vec<i64> {
    let mut v = vec![0; letters as usize];
    for i in 0..sigma.len() {
        v[i] += sigma.part(i) as i64;
    }
    for j in 0..tau.len() {
        v[letters as usize - 1 - j] -= tau.part(j) as i64;
    }
    v
}

/// Multiplicity of each `B_{σ,τ}` in `B_α ⊗ B_β^∨`. On `ℓ(α) + ℓ(β)` letters each type
/// truncates to a single irreducible of highest weight `(σ, 0, …, 0, -τ)`, so the count is the
/// number of highest-weight vertices of that weight.
pub fn direct_type_counts(alpha: &Partition, beta: &Partition) -> BTreeMap<(Partition, Partition), usize> {
    let letters = (alpha.len() + beta.len()).max(1) as i64;
    let total = highest_weight_profile(alpha, beta, letters);
    let mut counts = BTreeMap::new();
    for sigma in alpha.subpartitions() {
        for tau in beta.subpartitions() {
            if alpha.size() + tau.size() != beta.size() + sigma.size() {
                continue;
            }
            let c = total.get(&cartan_weight(&sigma, &tau, letters)).copied().unwrap_or(0);
            if c > 0 {
                counts.insert((sigma.clone(), tau), c);
            }
        }
    }
    counts
}

/// Component counts by label for the part of `B(Λ_μ) ⊗ B(-Λ_ν)` above `r`.
pub fn direct_label_counts(mu: &GeneralizedPartition, nu: &GeneralizedPartition, r: i64) -> Result<BTreeMap<ComponentLabel, usize>> {
    let (alpha, beta) = (column_shape(mu, r)?, column_shape(nu, r)?);
    let mut out = BTreeMap::new();
    for ((sigma, tau), c) in direct_type_counts(&alpha, &beta) {
        *out.entry(component_label(&sigma, &tau, r, mu.len(), nu.len())?).or_insert(0) += c;
    }
    Ok(out)
}

/// `(S_1, S_2) ∈ ⊔_λ LR^{(μ-r)'}_{σλ} × LR^{(ν-r)'}_{ηλ}`.
pub fn c_set(mu: &GeneralizedPartition, nu: &GeneralizedPartition, label: &ComponentLabel, r: i64) -> Result<Vec<(Tableau, Tableau)>> {
    let (alpha, beta) = (column_shape(mu, r)?, column_shape(nu, r)?);
    let Some(sigma) = label_sigma(label, r, mu.len(), nu.len()) else { return Ok(Vec::new()) };
    if !alpha.contains(&sigma) || !beta.contains(&label.eta) || alpha.size() - sigma.size() != beta.size() - label.eta.size() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for lambda in Partition::all_of_size(alpha.size() - sigma.size()) {
        let firsts = enumerate_lr(&alpha, &sigma, &lambda, false);
        if firsts.is_empty() {
            continue;
        }
        let seconds = enumerate_lr(&beta, &label.eta, &lambda, false);
        for s1 in &firsts {
            for s2 in &seconds {
                out.push((s1.clone(), s2.clone()));
            }
        }
    }
    Ok(out)
}

/// Row `ell` (1-based) is repeated with entries raised by one; rows below move down and
/// their entries above the repeated row's first entry are raised by one.
fn duplicate_row(s: &Tableau, ell: usize) -> Result<Tableau> {
    if ell == 0 || ell > s.shape().outer().len().max(s.shape().inner().len()) {
        return Err(Error::Precondition(format!("row {ell} is outside the tableau")));
    }
    let k = ell - 1;
    let row: Vec<i64> = if k < s.shape().rows() { s.row(k).to_vec() } else { Vec::new() };
    let first = row.first().copied();
    let mut inner = Vec::new();
    let mut rows = Vec::new();
    let count = s.shape().rows().max(s.shape().inner().len());
    for i in 0..count {
        let entries: Vec<i64> = if i < s.shape().rows() { s.row(i).to_vec() } else { Vec::new() };
        let entries = if i > k { entries.into_iter().map(|x| if first.is_some_and(|a| x > a) { x + 1 } else { x }).collect() } else { entries };
        inner.push(s.shape().inner().part(i));
        rows.push(entries);
        if i == k {
            inner.push(s.shape().inner().part(k));
            rows.push(row.iter().map(|x| x + 1).collect());
        }
    }
    Tableau::skew_from_rows(inner, rows, s.order()).map_err(|e| Error::Precondition(format!("repeated row breaks the tableau: {e}")))
}

/// Row indices used by the two steps of `θ_r`: the last full rows of `(μ - r)'` and `(ν - r)'`.
pub fn theta_rows(mu: &GeneralizedPartition, nu: &GeneralizedPartition, r: i64) -> (i64, i64) {
    (mu.min_part().unwrap_or(r) - r, nu.min_part().unwrap_or(r) - r)
}

/// Largest `-r` bound from which [`theta`] applies: the multiplicity has stabilized and the
/// duplicated rows lie below `ζ` and `η`.
pub fn theta_shift(mu: &GeneralizedPartition, nu: &GeneralizedPartition, label: &ComponentLabel) -> i64 {
    let mut k = stable_shift(mu, nu, label);
    if let Some(last) = mu.min_part() {
        k = k.max(label.zeta.len() as i64 - last + 1);
    }
    if let Some(last) = nu.min_part() {
        k = k.max(label.eta.len() as i64 - last + 1);
    }
    k
}

/// `θ_r : 𝒞(r) → 𝒞(r-1)`, for `-r ≥` [`theta_shift`].
pub fn theta(
    s1: &Tableau,
    s2: &Tableau,
    mu: &GeneralizedPartition,
    nu: &GeneralizedPartition,
    r: i64,
) -> Result<(Tableau, Tableau)> {
    let (l1, l2) = theta_rows(mu, nu, r);
    if l1 < 1 || (!nu.is_empty() && l2 < 1) {
        return Err(Error::Precondition(format!("base {r} is too large for θ")));
    }
    let t1 = duplicate_row(s1, l1 as usize)?;
    let t2 = if nu.is_empty() { s2.clone() } else { duplicate_row(s2, l2 as usize)? };
    Ok((t1, t2))
}

/// Whether `(T_1, T_2)` lies in `𝒞(r)`.
pub fn c_set_membership(t1: &Tableau, t2: &Tableau, mu: &GeneralizedPartition, nu: &GeneralizedPartition, label: &ComponentLabel, r: i64) -> bool {
    let (Ok(alpha), Ok(beta)) = (column_shape(mu, r), column_shape(nu, r)) else { return false };
    let Some(sigma) = label_sigma(label, r, mu.len(), nu.len()) else { return false };
    let lambda = match crate::lr::content_partition(t1) {
        Ok(l) => l,
        Err(_) => return false,
    };
    let shape_ok = |t: &Tableau, outer: &Partition, inner: &Partition| {
        t.shape().outer() == outer && (t.shape().inner() == inner || (t.is_empty() && outer == inner))
    };
    shape_ok(t1, &alpha, &sigma) && shape_ok(t2, &beta, &label.eta) && lr_membership(t1, &lambda, false) && lr_membership(t2, &lambda, false)
}
