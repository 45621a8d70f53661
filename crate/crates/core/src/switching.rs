//! Tableau switching and the maps `ȷ`, `ȷ_R`, `ı` built from it.

use crate::error::{Error, Result};
use crate::lr;
use crate::shapes::{Partition, SkewShape};
use crate::tableaux::{Order, Tableau};

/// Which of the two glued alphabets a cell belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    A,
    B,
}

/// A tableau of skew shape whose entries are tagged by alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GluedTableau {
    shape: SkewShape,
    cells: Vec<Vec<Option<(Part, i64)>>>,
}

type Cell = (usize, usize);

impl GluedTableau {
    /// `inner * outer`, the inner tableau tagged `inner_part`.
    pub fn glue(inner: &Tableau, inner_part: Part, outer: &Tableau, outer_part: Part) -> Result<Self> {
        if inner.shape().outer() != outer.shape().inner() {
            return Err(Error::InvalidShape("outer shape of the inner tableau must be the inner shape of the outer one".into()));
        }
        let shape = SkewShape::new(outer.shape().outer().clone(), inner.shape().inner().clone())?;
        let mut cells: Vec<Vec<Option<(Part, i64)>>> = (0..shape.rows()).map(|i| vec![None; shape.outer().part(i)]).collect();
        for (t, part) in [(inner, inner_part), (outer, outer_part)] {
            for (i, j) in t.shape().cells() {
                cells[i][j] = Some((part, t.at(i, j)));
            }
        }
        let g = GluedTableau { shape, cells };
        if !g.is_valid() {
            return Err(Error::NotSemistandard("glued tableau violates the switching conditions".into()));
        }
        Ok(g)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn get(&self, c: Cell) -> Option<(Part, i64)> {
        self.cells.get(c.0).and_then(|r| r.get(c.1)).copied().flatten()
    }

    fn filled(&self) -> impl Iterator<Item = (Cell, Part, i64)> + '_ {
        self.shape.cells().map(|c| {
            let (p, v) = self.get(c).expect("filled cell");
            (c, p, v)
        })
    }

    fn pair_ok(a: (Cell, Part, i64), b: (Cell, Part, i64)) -> bool {
        let ((c1, p1, v1), (c2, p2, v2)) = (a, b);
        if p1 != p2 || c1 == c2 {
            return true;
        }
        let (lo, hi) = if c1.0 <= c2.0 && c1.1 <= c2.1 {
            ((c1, v1), (c2, v2))
        } else if c2.0 <= c1.0 && c2.1 <= c1.1 {
            ((c2, v2), (c1, v1))
        } else {
            return true;
        };
        if lo.1 > hi.1 {
            return false;
        }
        !(lo.0 .1 == hi.0 .1 && lo.1 == hi.1)
    }

    /// Conditions (S1) and (S2) for both alphabets.
    pub fn is_valid(&self) -> bool {
        let all: Vec<_> = self.filled().collect();
        all.iter().enumerate().all(|(k, &a)| all[k + 1..].iter().all(|&b| Self::pair_ok(a, b)))
    }

    fn valid_around(&self, touched: &[Cell]) -> bool {
        let all: Vec<_> = self.filled().collect();
        touched.iter().all(|&c| {
            let (p, v) = self.get(c).expect("filled");
            all.iter().all(|&b| Self::pair_ok((c, p, v), b))
        })
    }

    fn swapped(&self, c1: Cell, c2: Cell) -> GluedTableau {
        let mut g = self.clone();
        let (x, y) = (self.get(c1), self.get(c2));
        g.cells[c1.0][c1.1] = y;
        g.cells[c2.0][c2.1] = x;
        g
    }

    /// Swaps a `moving` entry with the other-alphabet entry right of or below it.
    fn try_switch(&self, c1: Cell, c2: Cell, moving: Part) -> Result<GluedTableau> {
        let adjacent = c2 == (c1.0, c1.1 + 1) || c2 == (c1.0 + 1, c1.1);
        match (self.get(c1), self.get(c2)) {
            (Some((p1, _)), Some((p2, _))) if adjacent && p1 == moving && p2 != moving => {}
            _ => return Err(Error::IllegalSwitch("cells must hold adjacent entries of the two alphabets in switching position".into())),
        }
        let g = self.swapped(c1, c2);
        if g.valid_around(&[c1, c2]) {
            Ok(g)
        } else {
            Err(Error::IllegalSwitch("swap violates the switching conditions".into()))
        }
    }

    /// One switching of the `B` entry at `c1` with the `A` entry at `c2`.
    pub fn switch_once(&self, c1: Cell, c2: Cell) -> Result<GluedTableau> {
        self.try_switch(c1, c2, Part::B)
    }

    /// All legal switches moving `moving` entries outward.
    pub fn legal_switches(&self, moving: Part) -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        for c in self.shape.cells() {
            for d in [(c.0, c.1 + 1), (c.0 + 1, c.1)] {
                if self.shape.contains_cell(d.0, d.1) && self.try_switch(c, d, moving).is_ok() {
                    out.push((c, d));
                }
            }
        }
        out
    }

    /// Switches to a fixpoint: columns left to right, each bottom to top.
    pub fn switch_until_done(&self, moving: Part) -> GluedTableau {
        let mut g = self.clone();
        let width = self.shape.outer().part(0);
        loop {
            let mut changed = false;
            for j in 0..width {
                for i in (0..self.shape.rows()).rev() {
                    if !g.shape.contains_cell(i, j) {
                        continue;
                    }
                    for d in [(i + 1, j), (i, j + 1)] {
                        if g.shape.contains_cell(d.0, d.1) {
                            if let Ok(h) = g.try_switch((i, j), d, moving) {
                                g = h;
                                changed = true;
                                break;
                            }
                        }
                    }
                }
            }
            if !changed {
                return g;
            }
        }
    }

    /// Splits into `(inner, outer)` when the first alphabet fills an order ideal.
    pub fn split(&self, first: Part) -> Result<(Tableau, Tableau)> {
        let mut mid = Vec::new();
        for i in 0..self.shape.rows() {
            let r = self.shape.row_range(i);
            let k = r.clone().take_while(|&j| self.get((i, j)).expect("filled").0 == first).count();
            if r.clone().skip(k).any(|j| self.get((i, j)).expect("filled").0 == first) {
                return Err(Error::Precondition("alphabets are not separated".into()));
            }
            mid.push(r.start + k);
        }
        let mid = Partition::new(mid)?;
        let build = |shape: SkewShape| -> Result<Tableau> {
            let rows = (0..shape.rows()).map(|i| shape.row_range(i).map(|j| self.get((i, j)).expect("filled").1).collect()).collect();
            Tableau::new(shape, rows, Order::Natural)
        };
        let inner = build(SkewShape::new(mid.clone(), self.shape.inner().clone())?)?;
        let outer = build(SkewShape::new(self.shape.outer().clone(), mid)?)?;
        Ok((inner, outer))
    }
}

fn straighten(t: Tableau) -> Tableau {
    if t.shape().is_straight() {
        let rows: Vec<Vec<i64>> = t.rows().iter().filter(|r| !r.is_empty()).cloned().collect();
        Tableau::skew_from_rows(vec![], rows, t.order()).expect("straight")
    } else {
        t
    }
}

/// Exhaustive switching of `s * t`: returns `(t', s')` with `U = t' * s'`.
pub fn switch_full(s: &Tableau, t: &Tableau) -> Result<(Tableau, Tableau)> {
    let g = GluedTableau::glue(s, Part::B, t, Part::A)?.switch_until_done(Part::B);
    let (t2, s2) = g.split(Part::A)?;
    Ok((straighten(t2), s2))
}

/// Reverse switching of `t' * s'`: returns `(s, t)` with `U = s * t`.
pub fn switch_full_reverse(t2: &Tableau, s2: &Tableau) -> Result<(Tableau, Tableau)> {
    let g = GluedTableau::glue(t2, Part::A, s2, Part::B)?.switch_until_done(Part::A);
    let (s, t) = g.split(Part::B)?;
    Ok((straighten(s), t))
}

/// `(ȷ(t), ȷ(t)_R)`, switching `t` against `H_μ` for its inner shape `μ`.
pub fn skew_decompose(t: &Tableau) -> (Tableau, Tableau) {
    let h = Tableau::highest(t.shape().inner());
    switch_full(&h, t).expect("a skew tableau glues onto the highest tableau of its inner shape")
}

pub fn jmath(t: &Tableau) -> Tableau {
    skew_decompose(t).0
}

pub fn jmath_r(t: &Tableau) -> Tableau {
    skew_decompose(t).1
}

/// Inverse of [`skew_decompose`]: reverse-switches `straight * recorder`.
pub fn skew_compose(straight: &Tableau, recorder: &Tableau) -> Result<Tableau> {
    if !straight.shape().is_straight() || recorder.shape().inner() != straight.shape().outer() {
        return Err(Error::Precondition("recorder must sit on the shape of the straight tableau".into()));
    }
    let content = lr::content_partition(recorder)?;
    if !lr::lr_membership(recorder, &content, false) {
        return Err(Error::Precondition("recorder is not a Littlewood-Richardson tableau".into()));
    }
    let (s, t) = switch_full_reverse(straight, recorder)?;
    if s != Tableau::highest(&content) {
        return Err(Error::Precondition("reverse switching did not return the highest tableau".into()));
    }
    Ok(t)
}

/// `ı(V)`: row `k` of the result holds `i` as often as row `i` of `V` holds `k`.
pub fn imath(v: &Tableau, mu: &Partition) -> Result<Tableau> {
    if !v.shape().is_straight() {
        return Err(Error::Precondition("ı needs a straight-shape tableau".into()));
    }
    let mut counts: Vec<Vec<usize>> = Vec::new();
    for i in 0..v.shape().rows() {
        for &k in v.row(i) {
            if k < 1 {
                return Err(Error::Alphabet(format!("entry {k} is not a positive integer")));
            }
            let k = k as usize;
            if counts.len() < k {
                counts.resize(k, Vec::new());
            }
            if counts[k - 1].len() <= i {
                counts[k - 1].resize(i + 1, 0);
            }
            counts[k - 1][i] += 1;
        }
    }
    let nrows = counts.len().max(mu.len());
    let rows: Vec<Vec<i64>> = (0..nrows)
        .map(|k| {
            counts
                .get(k)
                .map(|c| c.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i as i64 + 1, m)).collect())
                .unwrap_or_default()
        })
        .collect();
    let inner: Vec<usize> = (0..nrows).map(|k| mu.part(k)).collect();
    let u = Tableau::skew_from_rows(inner, rows, Order::Natural)
        .map_err(|e| Error::Precondition(format!("H_μ ⊗ V is not highest weight: {e}")))?;
    let nu = v.shape().outer().clone();
    if !lr::lr_membership(&u, &nu, false) {
        return Err(Error::Precondition("H_μ ⊗ V is not highest weight".into()));
    }
    Ok(u)
}

/// Inverse of [`imath`].
pub fn imath_inverse(u: &Tableau) -> Result<Tableau> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for k in 0..u.shape().rows() {
        for &i in u.row(k) {
            let i = i as usize;
            if rows.len() < i {
                rows.resize(i, Vec::new());
            }
            rows[i - 1].push(k as i64 + 1);
        }
    }
    for r in &mut rows {
        r.sort_unstable();
    }
    Tableau::from_rows(rows)
}
