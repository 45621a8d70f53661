//! Schensted insertion, jeu de taquin and the RSK correspondence.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::shapes::{Partition, SkewShape};
use crate::tableaux::{Order, Tableau};

/// Mutable tableau in outer-shape coordinates.
#[derive(Clone, Debug)]
pub(crate) struct Grid {
    pub cells: Vec<Vec<Option<i64>>>,
    pub order: Order,
}

impl Grid {
    pub fn from_tableau(t: &Tableau) -> Self {
        Grid { cells: t.grid(), order: t.order() }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        self.cells.get(i).and_then(|r| r.get(j)).copied().flatten()
    }

    pub fn to_tableau(&self) -> Tableau {
        Tableau::from_grid(self.cells.clone(), self.order).expect("grid keeps semistandardness")
    }

    /// Straight-shape row lengths.
    pub fn row_len(&self, i: usize) -> usize {
        self.cells.get(i).map_or(0, Vec::len)
    }

    fn col_len(&self, j: usize) -> usize {
        self.cells.iter().take_while(|r| r.len() > j).count()
    }

    fn push_cell(&mut self, i: usize, x: i64) -> usize {
        if i == self.cells.len() {
            self.cells.push(Vec::new());
        }
        self.cells[i].push(Some(x));
        self.cells[i].len() - 1
    }

    fn pop_cell(&mut self, i: usize) -> i64 {
        let x = self.cells[i].pop().flatten().expect("filled corner");
        while self.cells.last().is_some_and(Vec::is_empty) {
            self.cells.pop();
        }
        x
    }
}

fn require_straight(t: &Tableau) {
    assert!(t.shape().is_straight(), "insertion needs a straight-shape tableau");
}

/// Row insertion `t ← a`; returns the new tableau and the added cell.
pub fn row_insert(t: &Tableau, a: i64) -> (Tableau, (usize, usize)) {
    require_straight(t);
    let mut g = Grid::from_tableau(t);
    let cell = row_insert_grid(&mut g, a);
    (g.to_tableau(), cell)
}

pub(crate) fn row_insert_grid(g: &mut Grid, a: i64) -> (usize, usize) {
    let mut x = a;
    let mut i = 0;
    loop {
        let len = g.row_len(i);
        let pos = (0..len).find(|&j| g.order.lt(x, g.get(i, j).expect("straight")));
        match pos {
            Some(j) => {
                let y = g.get(i, j).expect("straight");
                g.cells[i][j] = Some(x);
                x = y;
                i += 1;
            }
            None => {
                let j = g.push_cell(i, x);
                return (i, j);
            }
        }
    }
}

/// Column insertion `a → t`; returns the new tableau and the added cell.
pub fn column_insert(a: i64, t: &Tableau) -> (Tableau, (usize, usize)) {
    require_straight(t);
    let mut g = Grid::from_tableau(t);
    let cell = column_insert_grid(&mut g, a);
    (g.to_tableau(), cell)
}

pub(crate) fn column_insert_grid(g: &mut Grid, a: i64) -> (usize, usize) {
    let mut x = a;
    let mut j = 0;
    loop {
        let len = g.col_len(j);
        let pos = (0..len).find(|&i| g.order.le(x, g.get(i, j).expect("straight")));
        match pos {
            Some(i) => {
                let y = g.get(i, j).expect("straight");
                g.cells[i][j] = Some(x);
                x = y;
                j += 1;
            }
            None => {
                g.push_cell(len, x);
                return (len, j);
            }
        }
    }
}

/// Undoes a column insertion whose new cell ended row `i`.
pub(crate) fn reverse_column_insert_grid(g: &mut Grid, i: usize) -> i64 {
    let j = g.row_len(i) - 1;
    let mut y = g.pop_cell(i);
    for c in (0..j).rev() {
        let len = g.col_len(c);
        let r = (0..len).rev().find(|&r| g.order.le(g.get(r, c).expect("straight"), y)).expect("reverse column bump");
        let x = g.get(r, c).expect("straight");
        g.cells[r][c] = Some(y);
        y = x;
    }
    y
}

/// Undoes a row insertion whose new cell ended row `i`.
#[cfg(test)]
pub(crate) fn reverse_row_insert_grid(g: &mut Grid, i: usize) -> i64 {
    let mut y = g.pop_cell(i);
    for r in (0..i).rev() {
        let len = g.row_len(r);
        let c = (0..len).rev().find(|&c| g.order.lt(g.get(r, c).expect("straight"), y)).expect("reverse row bump");
        let x = g.get(r, c).expect("straight");
        g.cells[r][c] = Some(y);
        y = x;
    }
    y
}

/// Inner corners of a skew shape: removable cells of the inner shape.
pub fn inner_corners(shape: &SkewShape) -> Vec<(usize, usize)> {
    let inner = shape.inner();
    (0..inner.len()).filter(|&i| inner.part(i) > inner.part(i + 1)).map(|i| (i, inner.part(i) - 1)).collect()
}

/// One forward slide into the inner corner `corner`.
pub fn jeu_de_taquin_slide(t: &Tableau, corner: (usize, usize)) -> Result<Tableau> {
    if !inner_corners(t.shape()).contains(&corner) {
        return Err(Error::NotInnerCorner(corner.0 + 1, corner.1 + 1));
    }
    let shape = t.shape();
    let (mut i, mut j) = corner;
    let mut g = Grid::from_tableau(t);
    loop {
        let right = shape.contains_cell(i, j + 1).then(|| g.get(i, j + 1)).flatten();
        let below = shape.contains_cell(i + 1, j).then(|| g.get(i + 1, j)).flatten();
        let next = match (right, below) {
            (None, None) => break,
            (Some(_), None) => (i, j + 1),
            (None, Some(_)) => (i + 1, j),
            (Some(r), Some(b)) => {
                if g.order.le(b, r) {
                    (i + 1, j)
                } else {
                    (i, j + 1)
                }
            }
        };
        g.cells[i][j] = g.get(next.0, next.1);
        g.cells[next.0][next.1] = None;
        (i, j) = next;
    }
    let mut outer: Vec<usize> = shape.outer().parts().to_vec();
    outer[i] -= 1;
    g.cells[i].truncate(outer[i]);
    let mut inner: Vec<usize> = shape.inner().parts().to_vec();
    inner[corner.0] -= 1;
    while outer.last() == Some(&0) {
        outer.pop();
    }
    let rows: Vec<Vec<i64>> = (0..outer.len())
        .map(|r| (inner.get(r).copied().unwrap_or(0)..outer[r]).map(|c| g.get(r, c).expect("filled after slide")).collect())
        .collect();
    let shape = SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)?;
    Tableau::new(shape, rows, t.order())
}

/// Slides until straight, always using the lowest inner corner.
pub fn rectify(t: &Tableau) -> Tableau {
    rectify_with(t, |corners| corners.len() - 1)
}

/// Slides until straight, choosing corners with `pick`.
pub fn rectify_with(t: &Tableau, mut pick: impl FnMut(&[(usize, usize)]) -> usize) -> Tableau {
    let mut cur = t.clone();
    loop {
        let corners = inner_corners(cur.shape());
        if corners.is_empty() {
            return trim(cur);
        }
        let c = corners[pick(&corners)];
        cur = jeu_de_taquin_slide(&cur, c).expect("inner corner");
    }
}

fn trim(t: Tableau) -> Tableau {
    let rows: Vec<Vec<i64>> = t.rows().iter().filter(|r| !r.is_empty()).cloned().collect();
    Tableau::skew_from_rows(vec![], rows, t.order()).expect("straight tableau")
}

/// Inserts a word letter by letter with row insertion.
pub fn insert_word(word: &[i64]) -> Tableau {
    let mut g = Grid { cells: Vec::new(), order: Order::Natural };
    for &a in word {
        row_insert_grid(&mut g, a);
    }
    g.to_tableau()
}

/// RSK on a matrix: the biword lists rows top to bottom and, within a row,
/// columns right to left; column indices are column-inserted into `P` and the
/// row index is recorded in `Q` at the new cell.
pub fn rsk(m: &IntMatrix) -> (Tableau, Tableau) {
    let mut p = Grid { cells: Vec::new(), order: Order::Natural };
    let mut q = Grid { cells: Vec::new(), order: Order::Natural };
    for (i, j) in m.biword() {
        let (r, c) = column_insert_grid(&mut p, j);
        let c2 = q.push_cell(r, i);
        debug_assert_eq!(c, c2);
    }
    (p.to_tableau(), q.to_tableau())
}

pub fn rsk_inverse(p: &Tableau, q: &Tableau) -> Result<IntMatrix> {
    if p.shape() != q.shape() || !p.shape().is_straight() {
        return Err(Error::Precondition("P and Q must share a straight shape".into()));
    }
    let mut pg = Grid::from_tableau(p);
    let mut qg = Grid::from_tableau(q);
    let mut m = IntMatrix::new();
    while !qg.cells.is_empty() {
        let mut best: Option<(i64, usize, usize)> = None;
        for (r, row) in qg.cells.iter().enumerate() {
            let c = row.len() - 1;
            let v = row[c].expect("filled");
            if best.is_none_or(|(bv, _, bc)| v > bv || (v == bv && c > bc)) {
                best = Some((v, r, c));
            }
        }
        let (i, r, _) = best.expect("nonempty");
        qg.pop_cell(r);
        let j = reverse_column_insert_grid(&mut pg, r);
        m.add(i, j, 1);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::Crystal;
    use crate::matrix::Transposed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t(rows: &[&[i64]]) -> Tableau {
        Tableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn skew(grid: Vec<Vec<Option<i64>>>) -> Tableau {
        Tableau::from_grid(grid, Order::Natural).unwrap()
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(row_insert(&t(&[&[1, 3]]), 2).0, t(&[&[1, 2], &[3]]));
        assert_eq!(column_insert(1, &t(&[&[1, 2]])).0, t(&[&[1, 1, 2]]));
        assert_eq!(column_insert(2, &Tableau::empty()), (t(&[&[2]]), (0, 0)));
    }

    #[test]
    fn row_and_column_insertion_are_knuth_equivalent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let len = rng.gen_range(0..9);
            let word: Vec<i64> = (0..len).map(|_| rng.gen_range(1..5)).collect();
            let by_rows = insert_word(&word);
            let mut g = Grid { cells: Vec::new(), order: Order::Natural };
            for &a in word.iter().rev() {
                column_insert_grid(&mut g, a);
            }
            assert_eq!(g.to_tableau(), by_rows);
        }
    }

    #[test]
    fn reverse_insertions_undo() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..300 {
            let len = rng.gen_range(0..8);
            let word: Vec<i64> = (0..len).map(|_| rng.gen_range(1..5)).collect();
            let base = insert_word(&word);
            let a = rng.gen_range(1..5);
            let (after, (r, _)) = row_insert(&base, a);
            let mut g = Grid::from_tableau(&after);
            assert_eq!(reverse_row_insert_grid(&mut g, r), a);
            assert_eq!(g.to_tableau(), base);
            let (after, (r, _)) = column_insert(a, &base);
            let mut g = Grid::from_tableau(&after);
            assert_eq!(reverse_column_insert_grid(&mut g, r), a);
            assert_eq!(g.to_tableau(), base);
        }
    }

    #[test]
    fn rectification_examples() {
        assert_eq!(rectify(&skew(vec![vec![None, Some(1)], vec![Some(1)]])), t(&[&[1, 1]]));
        let x = t(&[&[1, 2], &[3]]);
        assert_eq!(rectify(&x), x);
        assert!(jeu_de_taquin_slide(&x, (0, 0)).is_err());
    }

    fn all_small_skew(max_cells: usize, hi: i64) -> Vec<Tableau> {
        let mut out = Vec::new();
        for n in 0..=max_cells + 3 {
            for lam in Partition::all_of_size(n) {
                for mu in lam.subpartitions() {
                    if lam.size() - mu.size() > max_cells {
                        continue;
                    }
                    out.extend(Tableau::all_sst(&SkewShape::new(lam.clone(), mu).unwrap(), 1, hi));
                }
            }
        }
        out
    }

    #[test]
    fn rectification_is_independent_of_slide_order() {
        fn all_results(x: &Tableau, out: &mut std::collections::BTreeSet<Tableau>) {
            let corners = inner_corners(x.shape());
            if corners.is_empty() {
                out.insert(trim(x.clone()));
                return;
            }
            for c in corners {
                all_results(&jeu_de_taquin_slide(x, c).unwrap(), out);
            }
        }
        for x in all_small_skew(4, 3) {
            let mut results = std::collections::BTreeSet::new();
            all_results(&x, &mut results);
            assert_eq!(results.len(), 1, "{x:?}");
            let r = results.into_iter().next().unwrap();
            assert_eq!(r, insert_word(&x.column_word().into_iter().rev().collect::<Vec<_>>()));
        }
    }

    #[test]
    fn rectify_matches_word_insertion_on_random_skew() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pool = all_small_skew(6, 3);
        for _ in 0..100 {
            let x = &pool[rng.gen_range(0..pool.len())];
            let by_random = rectify_with(x, |c| rng.gen_range(0..c.len()));
            let mut g = Grid { cells: Vec::new(), order: Order::Natural };
            for a in x.column_word() {
                column_insert_grid(&mut g, a);
            }
            assert_eq!(by_random, g.to_tableau());
        }
    }

    fn all_matrices(n: i64, total: u64) -> Vec<IntMatrix> {
        let cells: Vec<(i64, i64)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        fn go(cells: &[(i64, i64)], k: usize, left: u64, cur: &mut IntMatrix, out: &mut Vec<IntMatrix>) {
            if k == cells.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=left {
                cur.set(cells[k].0, cells[k].1, v);
                go(cells, k + 1, left - v, cur, out);
            }
            cur.set(cells[k].0, cells[k].1, 0);
        }
        go(&cells, 0, total, &mut IntMatrix::new(), &mut out);
        out
    }

    #[test]
    fn rsk_examples() {
        assert_eq!(rsk(&IntMatrix::new()), (Tableau::empty(), Tableau::empty()));
        let mut m = IntMatrix::new();
        m.set(2, 3, 1);
        assert_eq!(rsk(&m), (t(&[&[3]]), t(&[&[2]])));
    }

    #[test]
    fn rsk_is_bijective_and_intertwines() {
        let all = all_matrices(3, 4);
        assert_eq!(all.len(), 715);
        let mut images = std::collections::BTreeSet::new();
        for m in &all {
            let (p, q) = rsk(m);
            assert_eq!(p.shape(), q.shape());
            assert_eq!(&rsk_inverse(&p, &q).unwrap(), m);
            assert!(images.insert((p.clone(), q.clone())));
            for i in 1..=3 {
                if let Some(m2) = m.raise(i) {
                    assert_eq!(rsk(&m2), (p.raise(i).unwrap(), q.clone()));
                }
                if let Some(m2) = m.lower(i) {
                    assert_eq!(rsk(&m2), (p.lower(i).unwrap(), q.clone()));
                }
                let tm = Transposed(m.clone());
                if let Some(Transposed(m2)) = tm.raise(i) {
                    assert_eq!(rsk(&m2), (p.clone(), q.raise(i).unwrap()));
                }
                if let Some(Transposed(m2)) = tm.lower(i) {
                    assert_eq!(rsk(&m2), (p.clone(), q.lower(i).unwrap()));
                }
            }
        }
    }

    #[test]
    fn standard_row_insertion_rsk_does_not_intertwine() {
        // a12 = a21 = 1: the lexicographic biword row-inserted gives P = [[1],[2]],
        // which is highest weight, while the matrix is not.
        let mut m = IntMatrix::new();
        m.set(1, 2, 1);
        m.set(2, 1, 1);
        let standard = insert_word(&[2, 1]);
        assert_eq!(standard, t(&[&[1], &[2]]));
        assert!(standard.raise(1).is_none());
        assert!(m.raise(1).is_some());
    }
}
