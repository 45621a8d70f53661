//! Partitions, generalized partitions and skew shapes.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A partition stored without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("parts not weakly decreasing: {parts:?}")));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts and trims an arbitrary multiset of parts.
    pub fn from_multiset(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut all = self.0.clone();
        all.extend_from_slice(&other.0);
        Partition::from_multiset(all)
    }

    pub fn sum(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition((0..n).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// Adds `1` to each of the first `k` parts (shape plus a column of height `k`).
    pub fn add_column(&self, k: usize) -> Partition {
        self.sum(&Partition(vec![1; k]))
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn go(outer: &Partition, i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == outer.len() {
                out.push(Partition::new(cur.clone()).expect("decreasing"));
                return;
            }
            for p in 0..=outer.part(i).min(max) {
                cur.push(p);
                go(outer, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self, 0, usize::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A weakly decreasing integer sequence of explicit length; parts may be negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GeneralizedPartition {
    n: usize,
    parts: Vec<i64>,
}

impl GeneralizedPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("parts not weakly decreasing: {parts:?}")));
        }
        Ok(GeneralizedPartition { n: parts.len(), parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn shift(&self, r: i64) -> GeneralizedPartition {
        GeneralizedPartition { n: self.n, parts: self.parts.iter().map(|p| p - r).collect() }
    }

    pub fn insert(&self, k: i64) -> GeneralizedPartition {
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p < k).unwrap_or(parts.len());
        parts.insert(pos, k);
        GeneralizedPartition { n: self.n + 1, parts }
    }

    pub fn min_part(&self) -> Option<i64> {
        self.parts.last().copied()
    }

    /// Converts to an ordinary partition when every part is nonnegative.
    pub fn to_partition(&self) -> Result<Partition> {
        if self.parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidShape(format!("negative part in {:?}", self.parts)));
        }
        Partition::new(self.parts.iter().map(|&p| p as usize).collect())
    }

    /// All generalized partitions of length `n` with parts in `[lo, hi]`.
    pub fn all_in_range(n: usize, lo: i64, hi: i64) -> Vec<GeneralizedPartition> {
        fn go(n: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<GeneralizedPartition>) {
            if cur.len() == n {
                out.push(GeneralizedPartition::new(cur.clone()).expect("decreasing"));
                return;
            }
            for p in (lo..=max).rev() {
                cur.push(p);
                go(n, lo, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, lo, hi, &mut Vec::new(), &mut out);
        out
    }
}

impl<'de> Deserialize<'de> for GeneralizedPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Obj { n: usize, parts: Vec<i64> },
            Bare(Vec<i64>),
        }
        let parts = match Raw::deserialize(d)? {
            Raw::Obj { n, parts } => {
                if n != parts.len() {
                    return Err(serde::de::Error::custom("length field disagrees with parts"));
                }
                parts
            }
            Raw::Bare(parts) => parts,
        };
        GeneralizedPartition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// The cells of `outer` not in `inner`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidShape(format!("inner {inner} not contained in outer {outer}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Column range `[inner_i, outer_i)` of row `i` (0-based).
    pub fn row_range(&self, i: usize) -> std::ops::Range<usize> {
        self.inner.part(i)..self.outer.part(i)
    }

    pub fn contains_cell(&self, i: usize, j: usize) -> bool {
        self.row_range(i).contains(&j)
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows()).flat_map(move |i| self.row_range(i).map(move |j| (i, j)))
    }

    /// Cells in column-reading order: columns right to left, each top to bottom.
    pub fn column_reading_cells(&self) -> Vec<(usize, usize)> {
        let width = self.outer.part(0);
        let mut out = Vec::with_capacity(self.size());
        for j in (0..width).rev() {
            for i in 0..self.rows() {
                if self.contains_cell(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The shape rotated by 180 degrees inside the bounding box of `outer`.
    pub fn rotate(&self) -> SkewShape {
        let l = self.outer.len();
        let w = self.outer.part(0);
        let outer = (0..l).map(|i| w - self.inner.part(l - 1 - i)).collect();
        let inner = (0..l).map(|i| w - self.outer.part(l - 1 - i)).collect();
        SkewShape {
            outer: Partition::new(outer).expect("rotation of a skew shape"),
            inner: Partition::new(inner).expect("rotation of a skew shape"),
        }
    }
}

impl<'de> Deserialize<'de> for SkewShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            outer: Partition,
            #[serde(default)]
            inner: Partition,
        }
        let raw = Raw::deserialize(d)?;
        SkewShape::new(raw.outer, raw.inner).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn gp(v: &[i64]) -> GeneralizedPartition {
        GeneralizedPartition::new(v.to_vec()).unwrap()
    }

    fn cells_transposed(q: &Partition) -> Partition {
        let mut cols = vec![0usize; q.part(0)];
        for i in 0..q.len() {
            for c in cols.iter_mut().take(q.part(i)) {
                *c += 1;
            }
        }
        Partition::new(cols).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 2]).conjugate(), p(&[2, 2, 1]));
        assert_eq!(p(&[]).conjugate(), p(&[]));
        assert_eq!(p(&[5, 4, 2, 1]).conjugate(), p(&[4, 3, 2, 2, 1]));
    }

    #[test]
    fn conjugate_matches_cell_transpose_and_is_involution() {
        for n in 0..=12 {
            for q in Partition::all_of_size(n) {
                assert_eq!(q.conjugate(), cells_transposed(&q));
                assert_eq!(q.conjugate().conjugate(), q);
            }
        }
    }

    #[test]
    fn union_and_sum() {
        assert_eq!(p(&[3, 1]).union(&p(&[2, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[3, 1]).sum(&p(&[2, 1])), p(&[5, 2]));
        assert_eq!(p(&[2, 2]).union(&p(&[1])).conjugate(), p(&[3, 2]));
    }

    #[test]
    fn union_conjugates_to_sum() {
        for a in 0..=6 {
            for b in 0..=6 {
                for x in Partition::all_of_size(a) {
                    for y in Partition::all_of_size(b) {
                        assert_eq!(x.union(&y).conjugate(), x.conjugate().sum(&y.conjugate()));
                    }
                }
            }
        }
    }

    #[test]
    fn generalized_shift_and_insert() {
        assert_eq!(gp(&[2, 2, 1]).shift(-1), gp(&[3, 3, 2]));
        assert_eq!(gp(&[3, 1, -2]).insert(0), gp(&[3, 1, 0, -2]));
        for n in 0..=3 {
            for g in GeneralizedPartition::all_in_range(n, -2, 2) {
                for k in -3..=3 {
                    for r in -2..=2 {
                        assert_eq!(g.insert(k).shift(r), g.shift(r).insert(k - r));
                    }
                }
            }
        }
    }

    #[test]
    fn skew_shape_rejects_non_containment() {
        assert!(SkewShape::new(p(&[2]), p(&[1, 1])).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn rotation_of_staircase() {
        let s = SkewShape::straight(p(&[3, 2, 1]));
        let r = s.rotate();
        assert_eq!(r.outer(), &p(&[3, 3, 3]));
        assert_eq!(r.inner(), &p(&[2, 1]));
        assert_eq!(r.rotate(), s);
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&p(&[3, 1])).unwrap(), "[3,1]");
        let g: GeneralizedPartition = serde_json::from_str(r#"{"n":2,"parts":[1,-1]}"#).unwrap();
        assert_eq!(g, gp(&[1, -1]));
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"n":2,"parts":[1,-1]}"#);
        let s: SkewShape = serde_json::from_str(r#"{"outer":[2,1],"inner":[1]}"#).unwrap();
        assert_eq!(s.size(), 2);
    }
}
