//! Finitely supported nonnegative integer matrices with their two crystal structures.

use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::crystal::{bracket, Crystal, Direction, Weight};
use crate::error::{Error, Result};

/// A finitely supported table of nonnegative integers indexed by `ℤ × ℤ`.
///
/// Row `i` is read as the one-row tableau with `a_ij` copies of `j`; rows are
/// tensor factors with row `i` to the left of row `i+1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    entries: BTreeMap<(i64, i64), u64>,
}

/// The same carrier on `ℤ × ℤ`; `IntMatrix` is used for `ℕ × ℕ` as well.
pub type ZIntMatrix = IntMatrix;

impl IntMatrix {
    pub fn new() -> Self {
        IntMatrix::default()
    }

    /// Dense rows, indexed from `1`.
    pub fn from_dense(rows: &[Vec<u64>]) -> Self {
        let mut m = IntMatrix::new();
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i as i64 + 1, j as i64 + 1, v);
            }
        }
        m
    }

    pub fn get(&self, i: i64, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: i64, j: i64, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add(&mut self, i: i64, j: i64, v: u64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix { entries: self.entries.iter().map(|(&(i, j), &v)| ((j, i), v)).collect() }
    }

    /// Indices of nonzero rows, ascending.
    pub fn row_indices(&self) -> Vec<i64> {
        let mut rows: Vec<i64> = self.entries.keys().map(|k| k.0).collect();
        rows.dedup();
        rows
    }

    /// Column indices of row `i` with multiplicity, ascending.
    pub fn row_content(&self, i: i64) -> Vec<i64> {
        self.entries
            .range((i, i64::MIN)..=(i, i64::MAX))
            .flat_map(|(&(_, j), &v)| std::iter::repeat_n(j, v as usize))
            .collect()
    }

    /// Biletters `(i, j)`: rows ascending, and inside a row the columns descending.
    pub fn biword(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for i in self.row_indices() {
            out.extend(self.row_content(i).into_iter().rev().map(|j| (i, j)));
        }
        out
    }

    /// Row sums as a weight `Σ_i (Σ_j a_ij) ε_i`.
    pub fn row_weight(&self) -> Weight {
        let mut w = Weight::zero();
        for (&(i, _), &v) in &self.entries {
            w.add_eps(i, v as i64);
        }
        w
    }

    pub fn to_json(&self) -> Value {
        json!({ "entries": self.entries.iter().map(|(&(i, j), &v)| json!([i, j, v])).collect::<Vec<_>>() })
    }

    /// Accepts `{"entries": [[i, j, v], ...]}` or a dense array of rows indexed from 1.
    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(rows) = v.as_array() {
            let dense: Option<Vec<Vec<u64>>> = rows.iter().map(|r| r.as_array().and_then(|r| r.iter().map(Value::as_u64).collect())).collect();
            return dense.map(|d| IntMatrix::from_dense(&d)).ok_or_else(|| Error::Malformed("dense matrix must hold nonnegative integers".into()));
        }
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("matrix needs \"entries\" or a dense array".into()))?;
        let mut m = IntMatrix::new();
        for e in entries {
            let t = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| Error::Malformed("entry must be [i, j, v]".into()))?;
            let (i, j, val) = (t[0].as_i64(), t[1].as_i64(), t[2].as_u64());
            match (i, j, val) {
                (Some(i), Some(j), Some(val)) => m.add(i, j, val),
                _ => return Err(Error::Malformed("entry must be [int, int, nonnegative int]".into())),
            }
        }
        Ok(m)
    }

    fn signature(&self, c: i64) -> crate::crystal::Signature {
        let rows = self.row_indices();
        bracket(rows.iter().map(|&i| (self.get(i, c + 1) as i64, self.get(i, c) as i64)))
    }

    fn shift(&self, c: i64, dir: Direction) -> Option<IntMatrix> {
        let sig = self.signature(c);
        let rows = self.row_indices();
        let mut m = self.clone();
        match dir {
            Direction::Raise => {
                let r = rows[sig.raise_at?];
                m.set(r, c + 1, m.get(r, c + 1) - 1);
                m.add(r, c, 1);
            }
            Direction::Lower => {
                let r = rows[sig.lower_at?];
                m.set(r, c, m.get(r, c) - 1);
                m.add(r, c + 1, 1);
            }
        }
        Some(m)
    }
}

impl Crystal for IntMatrix {
    fn weight(&self) -> Weight {
        self.transpose().row_weight()
    }
    fn epsilon(&self, i: i64) -> i64 {
        self.signature(i).epsilon
    }
    fn phi(&self, i: i64) -> i64 {
        self.signature(i).phi
    }
    fn raise(&self, i: i64) -> Option<Self> {
        self.shift(i, Direction::Raise)
    }
    fn lower(&self, i: i64) -> Option<Self> {
        self.shift(i, Direction::Lower)
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        let lo = self.entries.keys().map(|k| k.1).min()?;
        let hi = self.entries.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }
    fn to_json(&self) -> Value {
        IntMatrix::to_json(self)
    }
}

/// A matrix under the transposed structure `x̃^t A = (x̃ Aᵗ)ᵗ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transposed(pub IntMatrix);

impl Crystal for Transposed {
    fn weight(&self) -> Weight {
        self.0.row_weight()
    }
    fn epsilon(&self, i: i64) -> i64 {
        self.0.transpose().epsilon(i)
    }
    fn phi(&self, i: i64) -> i64 {
        self.0.transpose().phi(i)
    }
    fn raise(&self, i: i64) -> Option<Self> {
        self.0.transpose().raise(i).map(|m| Transposed(m.transpose()))
    }
    fn lower(&self, i: i64) -> Option<Self> {
        self.0.transpose().lower(i).map(|m| Transposed(m.transpose()))
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        self.0.transpose().letter_span()
    }
    fn to_json(&self) -> Value {
        self.0.to_json()
    }
}

/// `ẽ_i`/`f̃_i` on a matrix, or their transposed versions.
pub fn matrix_act(m: &IntMatrix, i: i64, dir: Direction, transposed: bool) -> Option<IntMatrix> {
    if transposed {
        Transposed(m.clone()).act(i, dir).map(|t| t.0)
    } else {
        m.act(i, dir)
    }
}
