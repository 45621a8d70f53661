//! Randomized invariants across modules.

use proptest::prelude::*;
use proptest::sample::Index;

use crystalline::crystal::{Crystal, Direction, Tensor};
use crystalline::extremal::{canonical_factor, pair_membership, ExtremalPair};
use crystalline::glinf::{self, BinaryRow};
use crystalline::lr::lr_coeff;
use crystalline::matrix::IntMatrix;
use crystalline::modified::psi;
use crystalline::rsk_jdt::{insert_word, rectify, rsk, rsk_inverse};
use crystalline::shapes::{GeneralizedPartition, Partition, SkewShape};
use crystalline::switching::{skew_compose, skew_decompose};
use crystalline::tableaux::{DualTableau, Tableau};

fn partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..=max_part, 0..=max_parts).prop_map(Partition::from_multiset)
}

fn pick(all: &[Tableau], i: &Index) -> Tableau {
    all[i.index(all.len())].clone()
}

fn straight(p: &Partition, hi: i64, i: &Index) -> Tableau {
    pick(&Tableau::all_sst(&SkewShape::straight(p.clone()), 1, hi), i)
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Raise), Just(Direction::Lower)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugation_is_an_involution(p in partition(6, 6)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn rsk_roundtrips(cells in proptest::collection::vec((1i64..=4, 1i64..=4, 1u64..=2), 0..6)) {
        let mut m = IntMatrix::new();
        for (i, j, v) in cells {
            m.add(i, j, v);
        }
        let (p, q) = rsk(&m);
        prop_assert_eq!(p.shape(), q.shape());
        prop_assert_eq!(rsk_inverse(&p, &q).unwrap(), m);
    }

    #[test]
    fn rectification_is_insertion_of_the_reversed_column_word(outer in partition(4, 4), inner_pick in any::<Index>(), fill in any::<Index>()) {
        let inners = outer.subpartitions();
        let inner = inners[inner_pick.index(inners.len())].clone();
        let all = Tableau::all_sst(&SkewShape::new(outer, inner).unwrap(), 1, 4);
        let x = pick(&all, &fill);
        let mut reading = x.column_word();
        reading.reverse();
        prop_assert_eq!(rectify(&x), insert_word(&reading));
        let (j, r) = skew_decompose(&x);
        prop_assert_eq!(skew_compose(&j, &r).unwrap(), x);
    }

    #[test]
    fn lr_coefficients_are_symmetric(lambda in partition(4, 4), mu_pick in any::<Index>(), nu_pick in any::<Index>()) {
        let subs = lambda.subpartitions();
        let mu = subs[mu_pick.index(subs.len())].clone();
        let nus = Partition::all_of_size(lambda.size() - mu.size());
        let nu = nus[nu_pick.index(nus.len())].clone();
        prop_assert_eq!(lr_coeff(&lambda, &mu, &nu), lr_coeff(&lambda, &nu, &mu));
    }

    #[test]
    fn factorization_inverts_pair_insertion(mu in partition(2, 2), nu in partition(2, 2), a in any::<Index>(), b in any::<Index>()) {
        let s = straight(&mu, 4, &a);
        let t = DualTableau::from_vee(straight(&nu, 4, &b));
        let base = ExtremalPair::new(0, Tableau::empty(), t.clone()).unwrap();
        let (fwd, _) = base.insert_pair(&ExtremalPair::new(0, s.clone(), DualTableau::empty()).unwrap()).unwrap();
        prop_assert!(pair_membership(&fwd.s, &fwd.t, 0));
        prop_assert_eq!(canonical_factor(&fwd).unwrap(), (t, s));
    }

    #[test]
    fn psi_commutes_with_operators(mu in partition(2, 3), nu in partition(2, 3), a in any::<Index>(), b in any::<Index>(), i in 1i64..4, dir in direction()) {
        let s = straight(&mu, 4, &a);
        let t = DualTableau::from_vee(straight(&nu, 4, &b));
        let img = psi(&s, &t).unwrap();
        prop_assert_eq!(img.weight(), Tensor(s.clone(), t.clone()).weight());
        match Tensor(s, t).act(i, dir) {
            Some(Tensor(s2, t2)) => prop_assert_eq!(Some(psi(&s2, &t2).unwrap()), img.act(i, dir)),
            None => prop_assert_eq!(img.act(i, dir), None),
        }
    }

    #[test]
    fn binary_rows_read_back_what_was_set(ldef in 0u8..2, rdef in 0u8..2, writes in proptest::collection::vec((-6i64..6, 0u8..2), 0..10)) {
        let mut row = BinaryRow::step(ldef, rdef, 0);
        let mut expect: std::collections::BTreeMap<i64, u8> = std::collections::BTreeMap::new();
        for (j, v) in writes {
            row.set(j, v);
            expect.insert(j, v);
        }
        for j in -8..8 {
            let default = if j < 0 { ldef } else { rdef };
            prop_assert_eq!(row.get(j), expect.get(&j).copied().unwrap_or(default));
        }
        prop_assert_eq!(BinaryRow::from_json(&row.to_json()).unwrap(), row.clone());
        prop_assert_eq!(row.flipped().flipped(), row);
    }

    #[test]
    fn matrices_roundtrip_through_pairs(m0 in -1i64..=1, m1 in -1i64..=1, n0 in -1i64..=1, a in any::<Index>(), b in any::<Index>(), k in -2i64..4, dir in direction()) {
        let mu = GeneralizedPartition::new(vec![m0.max(m1), m0.min(m1)]).unwrap();
        let nu = GeneralizedPartition::new(vec![n0]).unwrap();
        let r = -2;
        let s = straight(&glinf::column_shape(&mu, r).unwrap(), 6, &a).map_entries(|x| x + r, Default::default()).unwrap();
        let t = straight(&glinf::column_shape(&nu, r).unwrap(), 6, &b).map_entries(|x| x + r, Default::default()).unwrap();
        let t = DualTableau::from_vee(t);
        let m = glinf::from_pair(&s, &t, &mu, &nu, r).unwrap();
        prop_assert_eq!(glinf::to_pair(&m, &mu, &nu, r).unwrap(), (s.clone(), t.clone()));
        prop_assert_eq!(glinf::to_pair(&m, &mu, &nu, r - 1).map(|_| ()), Ok(()));
        if k > r {
            let moved = m.act(k, dir).map(|x| glinf::to_pair(&x, &mu, &nu, r).map(|(s, t)| Tensor(s, t)));
            prop_assert_eq!(moved.transpose().unwrap(), Tensor(s, t).act(k, dir));
        }
    }
}
