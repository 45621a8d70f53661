//! Extremal weight pairs `(S, T)` over `[r+1, ∞)`, their insertions and recording tableaux.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::crystal::{Crystal, Tensor, Weight};
use crate::error::{Error, Result};
use crate::lr::{cset_membership, lr_coeff};
use crate::rsk_jdt::{column_insert_grid, reverse_column_insert_grid, Grid};
use crate::shapes::{Partition, SkewShape};
use crate::tableaux::{AnyTableau, DualTableau, Order, Tableau};

/// `S ⊗ T` with `S` plain and `T` dual, both over `[r+1, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtremalPair {
    pub r: i64,
    pub s: Tableau,
    pub t: DualTableau,
}

/// Where a dual letter went.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualPlacement {
    /// Row insertion into `T^∨` finished with a new cell in this row (0-based).
    Grew(usize),
    /// A cell was removed from `S` in this row (0-based).
    Removed(usize),
}

/// Recording pair: plain part over `ℕ`, second part over the `ẑ` order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Recording {
    pub plain: Tableau,
    pub signed: Tableau,
}

impl Recording {
    pub fn to_json(&self) -> Value {
        json!({ "plain": self.plain.to_json(), "signed": self.signed.to_json() })
    }
}

fn column_condition(s_col: &[i64], t_col: &[i64], r: i64) -> bool {
    s_col.iter().chain(t_col).all(|&v| {
        let k = v - r;
        k >= 1 && (s_col.iter().filter(|&&x| x <= v).count() + t_col.iter().filter(|&&x| x <= v).count()) as i64 <= k
    })
}

/// The first-column inequality for all `k ≥ 1`.
pub fn pair_membership(s: &Tableau, t: &DualTableau, r: i64) -> bool {
    let entries_ok = s.entries().chain(t.vee().entries()).all(|x| x > r);
    s.shape().is_straight() && t.vee().shape().is_straight() && entries_ok && column_condition(&s.column(0), &t.vee().column(0), r)
}

fn grid_column(g: &Grid, j: usize) -> Vec<i64> {
    g.cells.iter().map_while(|row| row.get(j).copied().flatten()).collect()
}

/// Slides the hole at `(i, 0)` out to an outer corner; returns that corner's row.
fn remove_and_slide(g: &mut Grid, i: usize) -> usize {
    let (mut i, mut j) = (i, 0);
    loop {
        let right = g.get(i, j + 1);
        let below = g.get(i + 1, j);
        let next = match (right, below) {
            (None, None) => break,
            (Some(_), None) => (i, j + 1),
            (None, Some(_)) => (i + 1, j),
            (Some(r), Some(b)) => {
                if b <= r {
                    (i + 1, j)
                } else {
                    (i, j + 1)
                }
            }
        };
        g.cells[i][j] = g.get(next.0, next.1);
        (i, j) = next;
    }
    g.cells[i].pop();
    while g.cells.last().is_some_and(Vec::is_empty) {
        g.cells.pop();
    }
    i
}

impl ExtremalPair {
    pub fn new(r: i64, s: Tableau, t: DualTableau) -> Result<Self> {
        if !pair_membership(&s, &t, r) {
            return Err(Error::NotMember("pair violates the first-column condition".into()));
        }
        Ok(ExtremalPair { r, s, t })
    }

    pub fn empty(r: i64) -> Self {
        ExtremalPair { r, s: Tableau::empty(), t: DualTableau::empty() }
    }

    /// `(H^{>r}_μ, E^{>r}_ν(s))` with `s = ℓ(μ) + ℓ(ν)`.
    pub fn generator(mu: &Partition, nu: &Partition, r: i64) -> Self {
        let s = (mu.len() + nu.len()) as i64;
        let t = Tableau::extremal_element(nu, s, r).expect("s is at least the length");
        ExtremalPair { r, s: Tableau::highest_above(mu, r), t }
    }

    pub fn shapes(&self) -> (Partition, Partition) {
        (self.s.shape().outer().clone(), self.t.vee().shape().outer().clone())
    }

    fn check_letter(&self, a: i64) -> Result<()> {
        if a <= self.r {
            return Err(Error::Alphabet(format!("letter {a} is not above the base {}", self.r)));
        }
        Ok(())
    }

    /// `a → (S, T)`; returns the row (0-based) of the new cell of `S`.
    pub fn insert_letter(&self, a: i64) -> Result<(ExtremalPair, usize)> {
        self.check_letter(a)?;
        let mut tg = Grid::from_tableau(self.t.vee());
        let mut a = a;
        let width = tg.row_len(0);
        for j in (0..width).rev() {
            let col = grid_column(&tg, j);
            if let Some(start) = col.iter().position(|&x| x == a) {
                let mut end = start;
                while end + 1 < col.len() && col[end + 1] == col[end] + 1 {
                    end += 1;
                }
                for (i, &v) in col.iter().enumerate().take(end + 1).skip(start) {
                    tg.cells[i][j] = Some(v + 1);
                }
                a = col[end] + 1;
            }
        }
        let mut sg = Grid::from_tableau(&self.s);
        let (row, _) = column_insert_grid(&mut sg, a);
        let out = ExtremalPair { r: self.r, s: sg.to_tableau(), t: DualTableau::from_vee(tg.to_tableau()) };
        debug_assert!(pair_membership(&out.s, &out.t, out.r));
        Ok((out, row))
    }

    /// `(S, T) ← a^∨`.
    pub fn insert_dual(&self, a: i64) -> Result<(ExtremalPair, DualPlacement)> {
        self.check_letter(a)?;
        let s_col = self.s.column(0);
        let mut tg = Grid::from_tableau(self.t.vee());
        let mut x = a;
        let mut i = 0;
        loop {
            let before = tg.clone();
            let pos = tg.cells.get(i).and_then(|row| row.iter().position(|e| e.is_some_and(|v| v > x)));
            let bumped = match pos {
                Some(c) => {
                    let y = tg.get(i, c).expect("filled");
                    tg.cells[i][c] = Some(x);
                    Some(y)
                }
                None => {
                    if i == tg.cells.len() {
                        tg.cells.push(Vec::new());
                    }
                    tg.cells[i].push(Some(x));
                    None
                }
            };
            if !column_condition(&s_col, &grid_column(&tg, 0), self.r) {
                let p = s_col.iter().position(|&v| v == x).expect("the violating letter sits in the first column of S");
                let mut sg = Grid::from_tableau(&self.s);
                let row = remove_and_slide(&mut sg, p);
                let out = ExtremalPair { r: self.r, s: sg.to_tableau(), t: DualTableau::from_vee(before.to_tableau()) };
                debug_assert!(pair_membership(&out.s, &out.t, out.r));
                return Ok((out, DualPlacement::Removed(row)));
            }
            match bumped {
                Some(y) => {
                    x = y;
                    i += 1;
                }
                None => {
                    let out = ExtremalPair { r: self.r, s: self.s.clone(), t: DualTableau::from_vee(tg.to_tableau()) };
                    return Ok((out, DualPlacement::Grew(i)));
                }
            }
        }
    }

    /// `((S', T') → (S, T))` with its recording pair.
    pub fn insert_pair(&self, q: &ExtremalPair) -> Result<(ExtremalPair, Recording)> {
        if q.r != self.r {
            return Err(Error::Precondition("pairs must share the base index".into()));
        }
        let mut cur = self.clone();
        let s_shape = q.s.shape().clone();
        let mut plain: Vec<Vec<Option<i64>>> = (0..s_shape.rows()).map(|i| vec![None; s_shape.outer().part(i)]).collect();
        for (cell, a) in s_shape.column_reading_cells().into_iter().zip(q.s.column_word()) {
            let (next, row) = cur.insert_letter(a)?;
            plain[cell.0][cell.1] = Some(row as i64 + 1);
            cur = next;
        }
        let vee = q.t.vee();
        let t_shape = vee.shape().clone();
        let mut signed: Vec<Vec<Option<i64>>> = (0..t_shape.rows()).map(|i| vec![None; t_shape.outer().part(i)]).collect();
        let mut cells = t_shape.column_reading_cells();
        cells.reverse();
        for cell in cells {
            let (next, placement) = cur.insert_dual(vee.at(cell.0, cell.1))?;
            signed[cell.0][cell.1] = Some(match placement {
                DualPlacement::Grew(row) => -(row as i64) - 1,
                DualPlacement::Removed(row) => row as i64 + 1,
            });
            cur = next;
        }
        let rec = Recording {
            plain: Tableau::from_grid(plain, Order::Natural).expect("recording is semistandard"),
            signed: Tableau::from_grid(signed, Order::Zhat).expect("recording is semistandard"),
        };
        Ok((cur, rec))
    }

    /// `((∅, T) → (S, ∅))` for `S ⊗ T`, with its recording tableau.
    pub fn from_tensor(s: &Tableau, t: &DualTableau, r: i64) -> Result<(ExtremalPair, Tableau)> {
        let base = ExtremalPair { r, s: s.clone(), t: DualTableau::empty() };
        let q = ExtremalPair { r, s: Tableau::empty(), t: t.clone() };
        let (p, rec) = base.insert_pair(&q)?;
        Ok((p, rec.signed))
    }

    pub fn to_json(&self) -> Value {
        json!({ "r": self.r, "s": self.s.to_json(), "t": self.t.to_json() })
    }

    /// Accepts `{"r": r, "s": tableau, "t": tableau}`; `r` defaults to `base`.
    pub fn from_json(v: &Value, base: i64) -> Result<Self> {
        let r = v.get("r").and_then(Value::as_i64).unwrap_or(base);
        let s = match v.get("s") {
            Some(x) if !x.is_null() => AnyTableau::from_json(x)?.plain()?,
            _ => Tableau::empty(),
        };
        let t = match v.get("t") {
            Some(x) if !x.is_null() => AnyTableau::from_json(x)?.dual(),
            _ => DualTableau::empty(),
        };
        ExtremalPair::new(r, s, t)
    }

    fn as_tensor(&self) -> Tensor<Tableau, DualTableau> {
        Tensor(self.s.clone(), self.t.clone())
    }

    fn map(&self, x: Option<Tensor<Tableau, DualTableau>>) -> Option<Self> {
        x.map(|Tensor(s, t)| ExtremalPair { r: self.r, s, t })
    }
}

impl Crystal for ExtremalPair {
    fn weight(&self) -> Weight {
        self.as_tensor().weight()
    }
    fn epsilon(&self, i: i64) -> i64 {
        self.as_tensor().epsilon(i)
    }
    fn phi(&self, i: i64) -> i64 {
        self.as_tensor().phi(i)
    }
    fn raise(&self, i: i64) -> Option<Self> {
        if i <= self.r {
            return None;
        }
        self.map(self.as_tensor().raise(i))
    }
    fn lower(&self, i: i64) -> Option<Self> {
        if i <= self.r {
            return None;
        }
        self.map(self.as_tensor().lower(i))
    }
    fn letter_span(&self) -> Option<(i64, i64)> {
        self.as_tensor().letter_span()
    }
    fn to_json(&self) -> Value {
        ExtremalPair::to_json(self)
    }
}

/// Reverse plain insertion step: the reduced pair and the letter that was inserted.
fn uninsert(p: &ExtremalPair, row: usize) -> Result<(ExtremalPair, i64)> {
    let mut sg = Grid::from_tableau(&p.s);
    if sg.row_len(row) == 0 {
        return Err(Error::Precondition("no cell to remove in that row".into()));
    }
    let mut b = reverse_column_insert_grid(&mut sg, row);
    let mut tg = Grid::from_tableau(p.t.vee());
    for j in 0..tg.row_len(0) {
        let col = grid_column(&tg, j);
        if let Some(end) = col.iter().position(|&x| x == b) {
            let mut start = end;
            while start > 0 && col[start - 1] == col[start] - 1 {
                start -= 1;
            }
            for (i, &v) in col.iter().enumerate().take(end + 1).skip(start) {
                tg.cells[i][j] = Some(v - 1);
            }
            b = col[start] - 1;
            if b <= p.r {
                return Err(Error::NotMember("reverse insertion left the alphabet".into()));
            }
        }
    }
    let t = Tableau::from_grid(tg.cells, Order::Natural).map_err(|e| Error::NotMember(e.to_string()))?;
    Ok((ExtremalPair { r: p.r, s: sg.to_tableau(), t: DualTableau::from_vee(t) }, b))
}

/// The unique `T̃ ⊗ S̃` with `((S̃, ∅) → (∅, T̃)) = p`.
pub fn canonical_factor(p: &ExtremalPair) -> Result<(DualTableau, Tableau)> {
    let mu = p.s.shape().outer().clone();
    let cells = SkewShape::straight(mu.clone()).column_reading_cells();
    let mut grid: Vec<Vec<Option<i64>>> = (0..mu.len()).map(|i| vec![None; mu.part(i)]).collect();
    let mut cur = p.clone();
    for &(i, j) in cells.iter().rev() {
        let (next, a) = uninsert(&cur, i)?;
        grid[i][j] = Some(a);
        cur = next;
    }
    let s = Tableau::from_grid(grid, Order::Natural).map_err(|e| Error::NotMember(e.to_string()))?;
    let t = cur.t;
    let (fwd, _) = ExtremalPair { r: p.r, s: Tableau::empty(), t: t.clone() }.insert_pair(&ExtremalPair { r: p.r, s: s.clone(), t: DualTableau::empty() })?;
    if &fwd != p {
        return Err(Error::NotMember("pair is not in the image of the factorization".into()));
    }
    Ok((t, s))
}

/// One row of a product decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCount {
    pub sigma: Partition,
    pub tau: Partition,
    pub formula: usize,
    pub counted: usize,
}

/// `Σ_λ c^μ_{σλ} c^ν_{τλ}`.
pub fn product_multiplicity(mu: &Partition, nu: &Partition, sigma: &Partition, tau: &Partition) -> usize {
    let k = mu.size().min(nu.size());
    (0..=k)
        .flat_map(Partition::all_of_size)
        .map(|lam| lr_coeff(mu, sigma, &lam) * lr_coeff(nu, tau, &lam))
        .sum()
}

/// Every `S ⊗ T` with entries in `[r+1, hi]`.
pub fn product_elements(mu: &Partition, nu: &Partition, r: i64, hi: i64) -> Vec<(Tableau, DualTableau)> {
    let ss = Tableau::all_sst(&SkewShape::straight(mu.clone()), r + 1, hi);
    let ts = Tableau::all_sst(&SkewShape::straight(nu.clone()), r + 1, hi);
    ss.iter().flat_map(|s| ts.iter().map(move |t| (s.clone(), DualTableau::from_vee(t.clone())))).collect()
}

/// Multiplicities of each `B_{σ,τ}` in `B_μ ⊗ B_ν^∨`, by formula and by
/// counting distinct recording tableaux over entries in `[r+1, hi]`.
pub fn decompose_product(mu: &Partition, nu: &Partition, r: i64, hi: i64) -> Result<Vec<ComponentCount>> {
    if hi - r < (mu.len() + nu.len()) as i64 {
        return Err(Error::WindowExhausted(format!("entries up to {hi} cannot hold the generators for {mu} and {nu}")));
    }
    let mut seen: BTreeMap<(Partition, Partition), std::collections::BTreeSet<Tableau>> = BTreeMap::new();
    for (s, t) in product_elements(mu, nu, r, hi) {
        let (p, w) = ExtremalPair::from_tensor(&s, &t, r)?;
        let key = p.shapes();
        debug_assert_eq!(cset_membership(&w, mu).as_ref(), Some(&key));
        seen.entry(key).or_default().insert(w);
    }
    let mut out = Vec::new();
    for sigma in mu.subpartitions() {
        for tau in nu.subpartitions() {
            let formula = product_multiplicity(mu, nu, &sigma, &tau);
            let counted = seen.get(&(sigma.clone(), tau.clone())).map_or(0, |s| s.len());
            let sigma = sigma.clone();
            if formula > 0 || counted > 0 {
                out.push(ComponentCount { sigma, tau, formula, counted });
            }
        }
    }
    Ok(out)
}
