//! Littlewood-Richardson tableaux, coefficients and the `𝒞`-sets of pair insertion.

use crate::error::{Error, Result};
use crate::shapes::{Partition, SkewShape};
use crate::switching::{imath, imath_inverse, jmath_r, skew_compose};
use crate::tableaux::{Order, Tableau};

/// Content of a tableau over `1..k` as a partition, or an error if it is not one.
pub fn content_partition(t: &Tableau) -> Result<Partition> {
    let content = t.content();
    let mut parts = Vec::new();
    for (k, (&letter, &count)) in content.iter().enumerate() {
        if letter != k as i64 + 1 {
            return Err(Error::Alphabet("content must occupy 1..k".into()));
        }
        parts.push(count);
    }
    Partition::new(parts).map_err(|_| Error::Precondition("content is not a partition".into()))
}

/// Content of a tableau over `-k..-1`, with `-i` counted in part `i`.
fn barred_content(t: &Tableau) -> Option<Partition> {
    let content = t.content();
    let k = content.len();
    let mut parts = Vec::with_capacity(k);
    for i in 1..=k as i64 {
        parts.push(*content.get(&-i)?);
    }
    Partition::new(parts).ok()
}

fn prefix_lattice(word: impl Iterator<Item = usize>, len: usize) -> bool {
    let mut counts = vec![0usize; len + 1];
    for i in word {
        counts[i] += 1;
        if i > 0 && counts[i] > counts[i - 1] {
            return false;
        }
    }
    true
}

/// Content `ν` and the lattice condition on the column word.
///
/// The barred variant takes entries `-i` with multiplicity `ν_i` and
/// imposes the condition on every suffix.
pub fn lr_membership(u: &Tableau, nu: &Partition, barred: bool) -> bool {
    if barred {
        if barred_content(u).as_ref() != Some(nu) && !(u.is_empty() && nu.is_empty()) {
            return false;
        }
        let word = u.column_word();
        prefix_lattice(word.iter().rev().map(|&x| (-x - 1) as usize), nu.len())
    } else {
        if content_partition(u).ok().as_ref() != Some(nu) {
            return false;
        }
        prefix_lattice(u.column_word().iter().map(|&x| (x - 1) as usize), nu.len())
    }
}

/// All of `LR^λ_{μν}` (shape `λ/μ`, content `ν`), ordered by column word.
pub fn enumerate_lr(lambda: &Partition, mu: &Partition, nu: &Partition, barred: bool) -> Vec<Tableau> {
    let Ok(shape) = SkewShape::new(lambda.clone(), mu.clone()) else {
        return Vec::new();
    };
    if shape.size() != nu.size() {
        return Vec::new();
    }
    let mut order = shape.column_reading_cells();
    if barred {
        order.reverse();
    }
    let mut grid: Vec<Vec<Option<i64>>> = (0..shape.rows()).map(|i| vec![None; lambda.part(i)]).collect();
    let mut counts = vec![0usize; nu.len()];
    let mut out = Vec::new();
    fill(&shape, &order, 0, nu, barred, &mut grid, &mut counts, &mut out);
    out.sort_by_key(|t| t.column_word());
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(
    shape: &SkewShape,
    order: &[(usize, usize)],
    k: usize,
    nu: &Partition,
    barred: bool,
    grid: &mut Vec<Vec<Option<i64>>>,
    counts: &mut Vec<usize>,
    out: &mut Vec<Tableau>,
) {
    if k == order.len() {
        let g = grid.clone();
        out.push(Tableau::from_grid(g, Order::Natural).expect("filling is semistandard"));
        return;
    }
    let (i, j) = order[k];
    let get = |g: &Vec<Vec<Option<i64>>>, i: usize, j: usize| g.get(i).and_then(|r| r.get(j)).copied().flatten();
    for idx in 0..nu.len() {
        if counts[idx] >= nu.part(idx) || (idx > 0 && counts[idx] >= counts[idx - 1]) {
            continue;
        }
        let x = if barred { -(idx as i64) - 1 } else { idx as i64 + 1 };
        let ok = j.checked_sub(1).and_then(|l| get(grid, i, l)).is_none_or(|l| l <= x)
            && get(grid, i, j + 1).is_none_or(|r| x <= r)
            && i.checked_sub(1).and_then(|a| get(grid, a, j)).is_none_or(|a| a < x)
            && get(grid, i + 1, j).is_none_or(|b| x < b);
        if !ok {
            continue;
        }
        grid[i][j] = Some(x);
        counts[idx] += 1;
        fill(shape, order, k + 1, nu, barred, grid, counts, out);
        counts[idx] -= 1;
        grid[i][j] = None;
    }
}

/// `c^λ_{μν}`.
pub fn lr_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    enumerate_lr(lambda, mu, nu, false).len()
}

/// Runs the `α`/`β` recursion on the column word from its last letter back.
///
/// Positive letters `k` remove a box from row `k` of `α` (starting at `μ`),
/// negative letters `-k` add one to row `k` of `β` (starting empty).
pub fn cset_membership(w: &Tableau, mu: &Partition) -> Option<(Partition, Partition)> {
    let mut alpha: Vec<usize> = mu.parts().to_vec();
    let mut beta: Vec<usize> = Vec::new();
    for &x in w.column_word().iter().rev() {
        if x > 0 {
            let k = x as usize - 1;
            if k >= alpha.len() || alpha[k] == 0 || alpha.get(k + 1).is_some_and(|&n| n == alpha[k]) {
                return None;
            }
            alpha[k] -= 1;
        } else if x < 0 {
            let k = (-x) as usize - 1;
            if k > beta.len() {
                return None;
            }
            if k == beta.len() {
                beta.push(0);
            }
            if k > 0 && beta[k - 1] == beta[k] {
                return None;
            }
            beta[k] += 1;
        } else {
            return None;
        }
    }
    Some((Partition::from_multiset(alpha), Partition::from_multiset(beta)))
}

/// Positive entries (a straight subtableau) and negative entries of a `ẑ`-tableau.
pub fn split_signs(w: &Tableau) -> Result<(Tableau, Tableau)> {
    let mut pos_rows = Vec::new();
    let mut neg_rows = Vec::new();
    for i in 0..w.shape().rows() {
        let row = w.row(i);
        let k = row.iter().take_while(|&&x| x > 0).count();
        pos_rows.push(row[..k].to_vec());
        neg_rows.push(row[k..].to_vec());
    }
    if !w.shape().is_straight() {
        return Err(Error::Precondition("𝒞-set elements have straight shape".into()));
    }
    while pos_rows.last().is_some_and(Vec::is_empty) {
        pos_rows.pop();
    }
    let inner: Vec<usize> = pos_rows.iter().map(Vec::len).collect();
    let pos = Tableau::from_rows(pos_rows)?;
    let neg = Tableau::skew_from_rows(inner, neg_rows, Order::Natural)?;
    Ok((pos, neg))
}

/// `W ↦ (ı(W_+), ȷ(W_-)_R)`, with `ı` taken relative to `σ`.
pub fn cset_bijection(w: &Tableau, mu: &Partition) -> Result<(Tableau, Tableau)> {
    let (sigma, _) = cset_membership(w, mu).ok_or_else(|| Error::NotMember("tableau is not in a 𝒞-set for this μ".into()))?;
    let (pos, neg) = split_signs(w)?;
    Ok((imath(&pos, &sigma)?, jmath_r(&neg)))
}

/// Inverse of [`cset_bijection`].
pub fn cset_bijection_inv(w1: &Tableau, w2: &Tableau) -> Result<Tableau> {
    let lambda = content_partition(w1)?;
    if content_partition(w2)? != lambda {
        return Err(Error::Precondition("the two recorders have different contents".into()));
    }
    if !lr_membership(w1, &lambda, false) {
        return Err(Error::Precondition("first recorder is not a Littlewood-Richardson tableau".into()));
    }
    let pos = imath_inverse(w1)?;
    let tau = w2.shape().inner().clone();
    let neg = skew_compose(&Tableau::lowest(&tau), w2)?;
    let nu = neg.shape().outer();
    let rows: Vec<Vec<i64>> = (0..nu.len().max(lambda.len()))
        .map(|i| {
            let mut r: Vec<i64> = pos.rows().get(i).cloned().unwrap_or_default();
            if i < neg.shape().rows() {
                r.extend_from_slice(neg.row(i));
            }
            r
        })
        .collect();
    Tableau::skew_from_rows(vec![], rows, Order::Zhat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{equivalent, Window, DEFAULT_NODE_CAP};
    use crate::switching::jmath;
    use std::collections::BTreeMap;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn grid(rows: Vec<Vec<Option<i64>>>) -> Tableau {
        Tableau::from_grid(rows, Order::Natural).unwrap()
    }

    fn zhat(rows: &[&[i64]]) -> Tableau {
        Tableau::skew_from_rows(vec![], rows.iter().map(|r| r.to_vec()).collect(), Order::Zhat).unwrap()
    }

    fn partitions_up_to(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }

    /// Brute-force coefficient: all semistandard fillings checked one by one.
    fn brute_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
        let Ok(shape) = SkewShape::new(lambda.clone(), mu.clone()) else { return 0 };
        if shape.size() != nu.size() {
            return 0;
        }
        Tableau::all_sst(&shape, 1, nu.len().max(1) as i64).iter().filter(|t| lr_membership(t, nu, false)).count()
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(lr_coeff(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coeff(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        for lam in partitions_up_to(5) {
            assert_eq!(enumerate_lr(&lam, &Partition::empty(), &lam, false), vec![Tableau::highest(&lam)]);
        }
        let ex = grid(vec![
            vec![None, None, None, Some(1), Some(1)],
            vec![None, Some(1), Some(2), Some(2)],
            vec![Some(2), Some(3)],
            vec![Some(3)],
        ]);
        assert!(lr_membership(&ex, &p(&[3, 3, 2]), false));
        assert!(enumerate_lr(&p(&[5, 4, 2, 1]), &p(&[3, 1]), &p(&[3, 3, 2]), false).contains(&ex));
        assert!(!lr_membership(&Tableau::from_rows(vec![vec![2]]).unwrap(), &p(&[1]), false));
    }

    #[test]
    fn enumeration_matches_brute_force_and_equivalence() {
        let window = Window::new(1, 6).unwrap();
        for lam in partitions_up_to(6) {
            for mu in lam.subpartitions() {
                let shape = SkewShape::new(lam.clone(), mu.clone()).unwrap();
                let n = shape.size();
                for nu in Partition::all_of_size(n) {
                    let list = enumerate_lr(&lam, &mu, &nu, false);
                    assert_eq!(list.len(), brute_coeff(&lam, &mu, &nu));
                    for u in &list {
                        assert!(equivalent(u, &Tableau::highest(&nu), window, DEFAULT_NODE_CAP).unwrap());
                    }
                }
                // Condition-based and equivalence-based membership agree on every filling.
                if n <= 4 {
                    for u in Tableau::all_sst(&shape, 1, 3) {
                        if let Ok(c) = content_partition(&u) {
                            let eq = equivalent(&u, &Tableau::highest(&c), window, DEFAULT_NODE_CAP).unwrap();
                            assert_eq!(lr_membership(&u, &c, false), eq, "{u:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn barred_tableaux_are_lowest_weight_and_biject() {
        let window = Window::new(-6, -1).unwrap();
        for lam in partitions_up_to(6) {
            for mu in lam.subpartitions() {
                let n = lam.size() - mu.size();
                for nu in Partition::all_of_size(n) {
                    let barred = enumerate_lr(&lam, &mu, &nu, true);
                    assert_eq!(barred.len(), lr_coeff(&lam, &nu, &mu));
                    let images: std::collections::BTreeSet<Tableau> = barred.iter().map(jmath_r).collect();
                    assert_eq!(images.len(), barred.len());
                    for u in &barred {
                        assert!(lr_membership(u, &nu, true));
                        assert_eq!(jmath(u), Tableau::lowest(&nu));
                        assert!(equivalent(u, &Tableau::lowest(&nu), window, DEFAULT_NODE_CAP).unwrap());
                    }
                    for r in images {
                        assert!(lr_membership(&r, &mu, false));
                        assert_eq!(r.shape().inner(), &nu);
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_is_symmetric_via_recorders() {
        for lam in partitions_up_to(8) {
            for mu in lam.subpartitions() {
                for nu in Partition::all_of_size(lam.size() - mu.size()) {
                    let list = enumerate_lr(&lam, &mu, &nu, false);
                    let swapped = lr_coeff(&lam, &nu, &mu);
                    assert_eq!(list.len(), swapped);
                    let recs: std::collections::BTreeSet<Tableau> = list.iter().map(jmath_r).collect();
                    assert_eq!(recs.len(), list.len());
                    assert!(recs.iter().all(|r| r.shape().inner() == &nu && lr_membership(r, &mu, false)));
                }
            }
        }
    }

    #[test]
    fn worked_cset_element() {
        let w = zhat(&[&[1, 2, -1], &[2, -2], &[-1]]);
        let mu = p(&[3, 2]);
        assert_eq!(cset_membership(&w, &mu), Some((p(&[2]), p(&[2, 1]))));
        let (w1, w2) = cset_bijection(&w, &mu).unwrap();
        assert_eq!(w1, grid(vec![vec![None, None, Some(1)], vec![Some(1), Some(2)]]));
        assert_eq!(w2, grid(vec![vec![None, None, Some(1)], vec![None, Some(2)], vec![Some(1)]]));
        assert_eq!(cset_bijection_inv(&w1, &w2).unwrap(), w);

        let h = zhat(&[&[1, 1], &[2]]);
        assert_eq!(cset_membership(&h, &p(&[2, 1])), Some((Partition::empty(), Partition::empty())));
        let (w1, w2) = cset_bijection(&h, &p(&[3, 1])).unwrap();
        assert_eq!(w1, grid(vec![vec![None, Some(1), Some(1)], vec![Some(2)]]));
        assert_eq!(w2, Tableau::highest(&p(&[2, 1])));
        assert_eq!(cset_bijection_inv(&w1, &w2).unwrap(), h);
    }

    /// Every semistandard `ẑ`-tableau of shape `ν` with positives in `1..a` and negatives in `-b..-1`.
    fn zhat_tableaux(nu: &Partition, a: i64, b: i64) -> Vec<Tableau> {
        let f = |v: i64| if v <= a { v } else { v - (a + b + 1) };
        Tableau::all_sst(&SkewShape::straight(nu.clone()), 1, a + b)
            .into_iter()
            .map(|t| t.map_entries(f, Order::Zhat).unwrap())
            .collect()
    }

    #[test]
    fn cset_counts_and_bijection() {
        for mu in partitions_up_to(4) {
            for nu in partitions_up_to(4) {
                let mut counts: BTreeMap<(Partition, Partition), usize> = BTreeMap::new();
                for w in zhat_tableaux(&nu, mu.len() as i64, nu.size() as i64) {
                    if let Some(key) = cset_membership(&w, &mu) {
                        *counts.entry(key).or_default() += 1;
                        let (w1, w2) = cset_bijection(&w, &mu).unwrap();
                        assert_eq!(cset_bijection_inv(&w1, &w2).unwrap(), w);
                    }
                }
                for sigma in mu.subpartitions() {
                    for tau in nu.subpartitions() {
                        let expected: usize = partitions_up_to(mu.size().min(nu.size()))
                            .iter()
                            .map(|lam| lr_coeff(&mu, &sigma, lam) * lr_coeff(&nu, &tau, lam))
                            .sum();
                        assert_eq!(counts.get(&(sigma.clone(), tau.clone())).copied().unwrap_or(0), expected, "{mu} {nu} {sigma} {tau}");
                    }
                }
            }
        }
    }
}
