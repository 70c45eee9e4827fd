use katabol::tableau::{inverse_rsk, rsk};
use katabol::word::{charge, sigma, Letter};
use katabol::{Partition, Tableau};
use proptest::prelude::*;

fn word(max_letter: Letter, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(1..=max_letter, 0..=max_len)
}

/// Words whose evaluation is a partition: a shuffle of 1..=m_1, 1..=m_2, ...
fn partition_word(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(1usize..=4, 0..=4)
        .prop_map(|cols| {
            let mut w = vec![];
            for c in cols {
                w.extend(1..=c as Letter);
            }
            w
        })
        .prop_filter("length", move |w| w.len() <= max_len)
        .prop_shuffle()
}

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max, 0..=max).prop_map(Partition::from_unsorted)
}

proptest! {
    #[test]
    fn sigma_is_an_involution(w in word(6, 12), i in 1u8..6) {
        prop_assert_eq!(sigma(i, &sigma(i, &w)), w);
    }

    #[test]
    fn sigma_braid_relation(w in word(6, 12), i in 1u8..5) {
        let l = sigma(i, &sigma(i + 1, &sigma(i, &w)));
        let r = sigma(i + 1, &sigma(i, &sigma(i + 1, &w)));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn distant_sigmas_commute(w in word(6, 12), i in 1u8..6, j in 1u8..6) {
        prop_assume!(i.abs_diff(j) >= 2);
        prop_assert_eq!(sigma(i, &sigma(j, &w)), sigma(j, &sigma(i, &w)));
    }

    #[test]
    fn sigma_swaps_evaluation(w in word(5, 12), i in 1u8..5) {
        let s = sigma(i, &w);
        let count = |v: &[Letter], x: Letter| v.iter().filter(|&&y| y == x).count();
        prop_assert_eq!(count(&s, i), count(&w, i + 1));
        prop_assert_eq!(count(&s, i + 1), count(&w, i));
    }

    #[test]
    fn rsk_roundtrip(w in word(6, 12)) {
        let (p, q) = rsk(&w);
        prop_assert_eq!(p.shape(), q.shape());
        prop_assert!(q.is_standard());
        prop_assert_eq!(inverse_rsk(&p, &q).unwrap(), w);
    }

    #[test]
    fn reading_word_inserts_to_itself(w in word(6, 12)) {
        let p = Tableau::from_word(&w);
        prop_assert_eq!(Tableau::from_word(&p.reading_word()), p);
    }

    #[test]
    fn charge_is_plactic(w in partition_word(12)) {
        prop_assert_eq!(charge(&w), Tableau::from_word(&w).charge());
    }

    #[test]
    fn cyclage_raises_charge(w in partition_word(12)) {
        let t = Tableau::from_word(&w);
        if let Some(c) = t.cyclage() {
            prop_assert_eq!(c.evaluation(), t.evaluation());
            prop_assert_eq!(c.charge(), t.charge() + 1);
        }
        if let Some(c) = t.cocyclage() {
            prop_assert_eq!(c.charge() + 1, t.charge());
        }
    }

    #[test]
    fn conjugation_is_an_involution(l in partition(7)) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn k_conjugation_is_an_involution(l in partition(6), extra in 0usize..4) {
        let k = l.first().max(1) + extra;
        let c = l.k_conjugate(k).unwrap();
        prop_assert!(c.is_bounded(k));
        prop_assert_eq!(c.size(), l.size());
        prop_assert_eq!(c.k_conjugate(k).unwrap(), l);
    }

    #[test]
    fn k_split_blocks_recombine(l in partition(5), extra in 0usize..3) {
        let k = l.first().max(1) + extra;
        let blocks = l.k_split(k).unwrap();
        let mut parts: Vec<usize> = blocks.iter().flat_map(|b| b.parts().to_vec()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(Partition::from_unsorted(parts), l);
        for b in &blocks[..blocks.len().saturating_sub(1)] {
            prop_assert_eq!(b.main_hook(), k);
        }
    }

    #[test]
    fn dominance_reverses_under_conjugation(n in 0usize..9, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let all = Partition::all(n);
        let (a, b) = (i.get(&all), j.get(&all));
        prop_assert_eq!(a.dominates(b), b.conjugate().dominates(&a.conjugate()));
    }
}
