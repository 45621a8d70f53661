//! Letters, alphabets, semistandard tableaux and their duals.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::shapes::{Partition, SkewShape};

/// A plain letter `k` or a dual letter `k^∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: i64,
    pub dual: bool,
}

impl Letter {
    pub fn plain(index: i64) -> Self {
        Letter { index, dual: false }
    }

    pub fn dual(index: i64) -> Self {
        Letter { index, dual: true }
    }

    pub fn flip(self) -> Self {
        Letter { index: self.index, dual: !self.dual }
    }
}

pub type Word = Vec<Letter>;

/// Linear order used to compare entries of a tableau.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    /// The usual order on integers.
    #[default]
    Natural,
    /// Nonzero integers ordered 1, 2, 3, ..., -3, -2, -1.
    Zhat,
}

impl Order {
    pub fn cmp(self, a: i64, b: i64) -> Ordering {
        match self {
            Order::Natural => a.cmp(&b),
            Order::Zhat => ((a < 0), a).cmp(&((b < 0), b)),
        }
    }

    pub fn lt(self, a: i64, b: i64) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    pub fn le(self, a: i64, b: i64) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }
}

/// Ordered alphabets of letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// Plain letters in `[lo, hi]`; `None` means unbounded on that side.
    Interval { lo: Option<i64>, hi: Option<i64> },
    /// Dual letters `k^∨` for `k` in the interval, ordered `a^∨ < b^∨` iff `b < a`.
    DualInterval { lo: Option<i64>, hi: Option<i64> },
    /// Nonzero integers in the order of [`Order::Zhat`].
    Zhat,
}

impl Alphabet {
    pub fn naturals() -> Self {
        Alphabet::Interval { lo: Some(1), hi: None }
    }

    pub fn negatives() -> Self {
        Alphabet::Interval { lo: None, hi: Some(-1) }
    }

    pub fn interval(lo: i64, hi: i64) -> Self {
        Alphabet::Interval { lo: Some(lo), hi: Some(hi) }
    }

    fn in_range(lo: Option<i64>, hi: Option<i64>, k: i64) -> bool {
        lo.is_none_or(|l| k >= l) && hi.is_none_or(|h| k <= h)
    }

    pub fn contains(&self, a: Letter) -> bool {
        match *self {
            Alphabet::Interval { lo, hi } => !a.dual && Self::in_range(lo, hi, a.index),
            Alphabet::DualInterval { lo, hi } => a.dual && Self::in_range(lo, hi, a.index),
            Alphabet::Zhat => !a.dual && a.index != 0,
        }
    }

    /// Compares two member letters.
    pub fn cmp(&self, a: Letter, b: Letter) -> Ordering {
        match self {
            Alphabet::Interval { .. } => a.index.cmp(&b.index),
            Alphabet::DualInterval { .. } => b.index.cmp(&a.index),
            Alphabet::Zhat => Order::Zhat.cmp(a.index, b.index),
        }
    }
}

/// A semistandard tableau of skew shape with integer entries.
///
/// `rows[i]` holds the entries of row `i` in columns `inner_i..outer_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    shape: SkewShape,
    rows: Vec<Vec<i64>>,
    order: Order,
}

impl Tableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<i64>>, order: Order) -> Result<Self> {
        if rows.len() > shape.rows() || (0..shape.rows()).any(|i| rows.get(i).map_or(0, Vec::len) != shape.row_range(i).len()) {
            return Err(Error::InvalidShape("row lengths disagree with the shape".into()));
        }
        let mut rows = rows;
        rows.resize(shape.rows(), Vec::new());
        let t = Tableau { shape, rows, order };
        t.check()?;
        Ok(t)
    }

    pub fn empty() -> Self {
        Tableau { shape: SkewShape::default(), rows: Vec::new(), order: Order::Natural }
    }

    /// Straight-shape tableau over the integers.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::skew_from_rows(vec![], rows, Order::Natural)
    }

    /// Skew tableau given the inner shape and the filled part of each row.
    pub fn skew_from_rows(inner: Vec<usize>, rows: Vec<Vec<i64>>, order: Order) -> Result<Self> {
        let mut rows = rows;
        while rows.len() < inner.len() {
            rows.push(Vec::new());
        }
        let outer: Vec<usize> = rows.iter().enumerate().map(|(i, r)| inner.get(i).copied().unwrap_or(0) + r.len()).collect();
        let shape = SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)?;
        Self::new(shape, rows, order)
    }

    /// Tableau from rows in outer-shape coordinates, `None` marking inner cells.
    pub fn from_grid(grid: Vec<Vec<Option<i64>>>, order: Order) -> Result<Self> {
        let mut inner = Vec::new();
        let mut rows = Vec::new();
        for r in grid {
            let k = r.iter().take_while(|e| e.is_none()).count();
            let filled: Option<Vec<i64>> = r[k..].iter().copied().collect();
            let filled = filled.ok_or_else(|| Error::InvalidShape("null entry after a filled cell".into()))?;
            inner.push(k);
            rows.push(filled);
        }
        while inner.last() == Some(&0) && rows.last().is_some_and(Vec::is_empty) {
            inner.pop();
            rows.pop();
        }
        Self::skew_from_rows(inner, rows, order)
    }

    fn check(&self) -> Result<()> {
        for (i, j) in self.shape.cells() {
            let x = self.at(i, j);
            if self.order == Order::Zhat && x == 0 {
                return Err(Error::Alphabet("zero entry under the zhat order".into()));
            }
            if j > 0 && self.shape.contains_cell(i, j - 1) && !self.order.le(self.at(i, j - 1), x) {
                return Err(Error::NotSemistandard(format!("row {} decreases at column {}", i + 1, j + 1)));
            }
            if i > 0 && self.shape.contains_cell(i - 1, j) && !self.order.lt(self.at(i - 1, j), x) {
                return Err(Error::NotSemistandard(format!("column {} not strict at row {}", j + 1, i + 1)));
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn is_empty(&self) -> bool {
        self.shape.size() == 0
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Entry at a cell known to lie in the shape.
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j - self.shape.inner().part(i)]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.shape.contains_cell(i, j).then(|| self.at(i, j))
    }

    /// Filled part of row `i`.
    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Entries of column `j` from top to bottom.
    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.shape.rows()).filter(|&i| self.shape.contains_cell(i, j)).map(|i| self.at(i, j)).collect()
    }

    /// Rows in outer-shape coordinates with `None` for inner cells.
    pub fn grid(&self) -> Vec<Vec<Option<i64>>> {
        (0..self.shape.rows())
            .map(|i| {
                let mut r = vec![None; self.shape.inner().part(i)];
                r.extend(self.rows[i].iter().map(|&x| Some(x)));
                r
            })
            .collect()
    }

    /// Entries read columns right to left, each top to bottom.
    pub fn column_word(&self) -> Vec<i64> {
        self.shape.column_reading_cells().into_iter().map(|(i, j)| self.at(i, j)).collect()
    }

    pub fn word(&self) -> Word {
        self.column_word().into_iter().map(Letter::plain).collect()
    }

    /// Rewrites the entries in column-reading order; the result is validated.
    pub fn with_column_word(&self, word: &[i64]) -> Result<Self> {
        let mut t = self.clone();
        for (&(i, j), &x) in self.shape.column_reading_cells().iter().zip(word) {
            let off = t.shape.inner().part(i);
            t.rows[i][j - off] = x;
        }
        t.check()?;
        Ok(t)
    }

    pub fn map_entries(&self, f: impl Fn(i64) -> i64, order: Order) -> Result<Self> {
        let rows = self.rows.iter().map(|r| r.iter().map(|&x| f(x)).collect()).collect();
        Tableau::new(self.shape.clone(), rows, order)
    }

    /// Number of occurrences of each entry.
    pub fn content(&self) -> BTreeMap<i64, usize> {
        let mut c = BTreeMap::new();
        for r in &self.rows {
            for &x in r {
                *c.entry(x).or_insert(0) += 1;
            }
        }
        c
    }

    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn min_entry(&self) -> Option<i64> {
        self.entries().min()
    }

    pub fn max_entry(&self) -> Option<i64> {
        self.entries().max()
    }

    /// `H_ν(i,j) = i`.
    pub fn highest(nu: &Partition) -> Self {
        let rows = (0..nu.len()).map(|i| vec![i as i64 + 1; nu.part(i)]).collect();
        Tableau::new(SkewShape::straight(nu.clone()), rows, Order::Natural).expect("highest tableau")
    }

    /// `H_ν` shifted to the alphabet `[r+1, ∞)`.
    pub fn highest_above(nu: &Partition, r: i64) -> Self {
        let rows = (0..nu.len()).map(|i| vec![r + i as i64 + 1; nu.part(i)]).collect();
        Tableau::new(SkewShape::straight(nu.clone()), rows, Order::Natural).expect("highest tableau")
    }

    /// `L_ν(i,j) = -ν'_j + i - 1` (1-based), the lowest element over the negative integers.
    pub fn lowest(nu: &Partition) -> Self {
        let conj = nu.conjugate();
        let rows = (0..nu.len())
            .map(|i| (0..nu.part(i)).map(|j| -(conj.part(j) as i64) + i as i64).collect())
            .collect();
        Tableau::new(SkewShape::straight(nu.clone()), rows, Order::Natural).expect("lowest tableau")
    }

    /// The dual tableau `E` with `E^∨(i,j) = s - ν'_j + i`, over `[r+1, ∞)`.
    pub fn extremal_element(nu: &Partition, s: i64, r: i64) -> Result<DualTableau> {
        if s < nu.len() as i64 {
            return Err(Error::Precondition(format!("s = {s} is smaller than the length of {nu}")));
        }
        let conj = nu.conjugate();
        let rows = (0..nu.len())
            .map(|i| (0..nu.part(i)).map(|j| r + s - conj.part(j) as i64 + i as i64 + 1).collect())
            .collect();
        Ok(DualTableau::from_vee(Tableau::new(SkewShape::straight(nu.clone()), rows, Order::Natural)?))
    }

    pub fn dualize(self) -> DualTableau {
        DualTableau::from_vee(self)
    }

    /// All semistandard tableaux of the given shape with entries in `[lo, hi]`.
    pub fn all_sst(shape: &SkewShape, lo: i64, hi: i64) -> Vec<Tableau> {
        let cells: Vec<(usize, usize)> = shape.cells().collect();
        let mut rows: Vec<Vec<i64>> = (0..shape.rows()).map(|i| vec![0; shape.row_range(i).len()]).collect();
        let mut out = Vec::new();
        fn go(shape: &SkewShape, cells: &[(usize, usize)], k: usize, rows: &mut Vec<Vec<i64>>, lo: i64, hi: i64, out: &mut Vec<Tableau>) {
            if k == cells.len() {
                out.push(Tableau { shape: shape.clone(), rows: rows.clone(), order: Order::Natural });
                return;
            }
            let (i, j) = cells[k];
            let at = |rows: &Vec<Vec<i64>>, i: usize, j: usize| rows[i][j - shape.inner().part(i)];
            let mut min = lo;
            if j > 0 && shape.contains_cell(i, j - 1) {
                min = min.max(at(rows, i, j - 1));
            }
            if i > 0 && shape.contains_cell(i - 1, j) {
                min = min.max(at(rows, i - 1, j) + 1);
            }
            for x in min..=hi {
                let off = shape.inner().part(i);
                rows[i][j - off] = x;
                go(shape, cells, k + 1, rows, lo, hi, out);
            }
        }
        go(shape, &cells, 0, &mut rows, lo, hi, &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.grid().into_iter().map(|r| Value::from(r.into_iter().map(|e| e.map_or(Value::Null, Value::from)).collect::<Vec<_>>())).collect();
        let mut v = json!({
            "outer": self.shape.outer(),
            "inner": self.shape.inner(),
            "rows": rows,
        });
        if self.order == Order::Zhat {
            v["alphabet"] = json!("zhat");
        }
        v
    }
}

/// A dual tableau `T`, stored through the ordinary tableau `T^∨`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualTableau {
    vee: Tableau,
}

impl Default for Tableau {
    fn default() -> Self {
        Tableau::empty()
    }
}

impl DualTableau {
    pub fn from_vee(vee: Tableau) -> Self {
        DualTableau { vee }
    }

    pub fn empty() -> Self {
        DualTableau { vee: Tableau::empty() }
    }

    /// The ordinary tableau `T^∨`.
    pub fn vee(&self) -> &Tableau {
        &self.vee
    }

    pub fn into_vee(self) -> Tableau {
        self.vee
    }

    pub fn dualize(self) -> Tableau {
        self.vee
    }

    pub fn is_empty(&self) -> bool {
        self.vee.is_empty()
    }

    /// The displayed (rotated) shape.
    pub fn shape(&self) -> SkewShape {
        self.vee.shape().rotate()
    }

    /// Displayed rows in the bounding box of `T^∨`, `None` outside the shape.
    pub fn display_grid(&self) -> Vec<Vec<Option<i64>>> {
        let l = self.vee.shape().rows();
        let w = self.vee.shape().outer().part(0);
        (0..l).map(|i| (0..w).map(|j| self.vee.get(l - 1 - i, w - 1 - j)).collect()).collect()
    }

    /// Column word of the displayed tableau: columns of `T^∨` left to right, each bottom to top.
    pub fn word(&self) -> Word {
        self.vee.column_word().into_iter().rev().map(Letter::dual).collect()
    }

    pub fn to_json(&self) -> Value {
        let shape = self.shape();
        let rows: Vec<Value> = self
            .display_grid()
            .into_iter()
            .map(|r| Value::from(r.into_iter().map(|e| e.map_or(Value::Null, |k| json!({ "d": k }))).collect::<Vec<_>>()))
            .collect();
        json!({ "outer": shape.outer(), "inner": shape.inner(), "rows": rows })
    }
}

/// A parsed tableau of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTableau {
    Plain(Tableau),
    Dual(DualTableau),
}

impl AnyTableau {
    pub fn to_json(&self) -> Value {
        match self {
            AnyTableau::Plain(t) => t.to_json(),
            AnyTableau::Dual(t) => t.to_json(),
        }
    }

    /// Parses the JSON tableau schema; `{"d":k}` entries mark a displayed dual tableau.
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("tableau needs a \"rows\" array".into()))?;
        let order = match v.get("alphabet").and_then(Value::as_str) {
            Some("zhat") => Order::Zhat,
            None | Some("natural") => Order::Natural,
            Some(other) => return Err(Error::Malformed(format!("unknown alphabet {other}"))),
        };
        let mut dual = false;
        let mut plain = false;
        let mut grid: Vec<Vec<Option<i64>>> = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Malformed("row is not an array".into()))?;
            let mut out = Vec::new();
            for e in r {
                out.push(match e {
                    Value::Null => None,
                    Value::Number(n) => {
                        plain = true;
                        Some(n.as_i64().ok_or_else(|| Error::Malformed("entry is not an integer".into()))?)
                    }
                    Value::Object(o) => {
                        dual = true;
                        Some(o.get("d").and_then(Value::as_i64).ok_or_else(|| Error::Malformed("dual entry needs integer \"d\"".into()))?)
                    }
                    _ => return Err(Error::Malformed("unsupported entry".into())),
                });
            }
            grid.push(out);
        }
        if dual && plain {
            return Err(Error::Malformed("mixed plain and dual entries".into()));
        }
        if !dual {
            return Ok(AnyTableau::Plain(Tableau::from_grid(grid, order)?));
        }
        let l = grid.len();
        let w = grid.iter().map(Vec::len).max().unwrap_or(0);
        let rotated: Vec<Vec<Option<i64>>> = (0..l)
            .map(|i| {
                let mut r: Vec<Option<i64>> = (0..w).map(|j| grid[l - 1 - i].get(w - 1 - j).copied().flatten()).collect();
                while r.last() == Some(&None) {
                    r.pop();
                }
                r
            })
            .collect();
        Ok(AnyTableau::Dual(DualTableau::from_vee(Tableau::from_grid(rotated, Order::Natural)?)))
    }

    pub fn plain(self) -> Result<Tableau> {
        match self {
            AnyTableau::Plain(t) => Ok(t),
            AnyTableau::Dual(_) => Err(Error::Malformed("expected a plain tableau".into())),
        }
    }

    /// Accepts a displayed dual tableau, or a plain one taken as `T^∨`.
    pub fn dual(self) -> DualTableau {
        match self {
            AnyTableau::Plain(t) => DualTableau::from_vee(t),
            AnyTableau::Dual(t) => t,
        }
    }
}
