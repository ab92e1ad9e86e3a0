//! The value hyperfield against models written from scratch here.
//!
//! In `T_G`, `x ⊞ y` is `{min(x, y)}` when `x ≠ y` and `{z : z ≥ x}` when
//! they are equal. At rank 1 the valuation ring is `{v ≥ 0} ∪ {∞}` and its
//! nonzero proper ideals are `{v ≥ m}` for `m ≥ 1`, so every operation on
//! them is integer arithmetic on `m`.

use krasner::closure::value::value_ideal_closure;
use krasner::valuation::{
    closure_via_valuations, definitional_closure_mismatch, extend_contract_mismatch, rings_over,
};
use krasner::valuefield::{
    cut_is_primary, cut_is_prime, cut_power, cut_product, cut_radical, cut_sum, hyperadd, CutIdeal,
    ValuationSubring, Value, ValueHyperfield,
};
use proptest::prelude::*;

fn value(rank: usize) -> impl Strategy<Value = Value> {
    prop_oneof![
        1 => Just(Value::Infinity),
        6 => proptest::collection::vec(-3i64..=3, rank).prop_map(Value::Finite),
    ]
}

fn v1(m: i64) -> Value {
    Value::Finite(vec![m])
}

proptest! {
    #[test]
    fn hyperaddition_matches_the_min_rule(
        (x, y, z) in (1usize..=3).prop_flat_map(|k| (value(k), value(k), value(k)))
    ) {
        let expected = if x != y { z == x.clone().min(y.clone()) } else { z >= x };
        prop_assert_eq!(hyperadd(&x, &y).contains(&z), expected, "{:?} ⊞ {:?} ∋ {:?}", x, y, z);
    }

    #[test]
    fn rank_one_cuts_follow_integer_arithmetic(m in 1i64..20, k in 1i64..20, n in 1usize..6) {
        let (a, b) = (CutIdeal::cut(vec![m]), CutIdeal::cut(vec![k]));
        prop_assert_eq!(cut_sum(&a, &b), CutIdeal::cut(vec![m.min(k)]));
        prop_assert_eq!(cut_product(&a, &b), CutIdeal::cut(vec![m + k]));
        prop_assert_eq!(cut_power(&a, n).unwrap(), CutIdeal::cut(vec![m * n as i64]));
        prop_assert_eq!(cut_radical(&a), CutIdeal::cut(vec![1]));
        prop_assert_eq!(cut_is_prime(&a).unwrap(), m == 1);
        // every nonzero ideal of a rank-one valuation ring is primary
        prop_assert!(cut_is_primary(&a).unwrap());
    }

    #[test]
    fn rank_one_membership(m in 1i64..10, x in -10i64..20) {
        let field = ValueHyperfield::new(1).unwrap();
        let ring = ValuationSubring::valuation_ring(&field);
        prop_assert_eq!(CutIdeal::cut(vec![m]).contains(&ring, &v1(x)), x >= m);
        prop_assert_eq!(ring.contains(&v1(x)), x >= 0);
    }

    #[test]
    fn closures_agree_three_ways(rank in 1usize..=3, level_seed in 0usize..4, p in proptest::collection::vec(-2i64..=3, 3)) {
        let field = ValueHyperfield::new(rank).unwrap();
        let ring = ValuationSubring::new(&field, level_seed % (rank + 1)).unwrap();
        let ideal = match ring.level() {
            0 => CutIdeal::Zero,
            l => CutIdeal::cut(p[..l.min(rank)].to_vec()),
        };
        let closure = value_ideal_closure(&ring, &ideal).unwrap();
        prop_assert_eq!(&closure, &ideal);
        prop_assert_eq!(closure_via_valuations(&ideal, &ring).unwrap(), closure);
        if rank <= 2 {
            prop_assert_eq!(definitional_closure_mismatch(&ring, &ideal, 2), None);
        }
        for w in rings_over(&ring).unwrap() {
            prop_assert_eq!(extend_contract_mismatch(&ideal, &w, &ring, 8), None);
        }
    }
}

#[test]
fn rank_one_valuation_ring_ideals_are_closed() {
    let field = ValueHyperfield::new(1).unwrap();
    let ring = ValuationSubring::valuation_ring(&field);
    for m in 1..8 {
        let ideal = CutIdeal::cut(vec![m]);
        assert_eq!(value_ideal_closure(&ring, &ideal).unwrap(), ideal);
    }
}
