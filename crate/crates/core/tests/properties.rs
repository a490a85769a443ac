use proptest::prelude::*;
use scross_core::combinatorics::{
    enumerate_ksubsets, is_s_cross_intersecting, is_shifted, shift_closure, shift_closure_pair, shift_family, Family,
    KSet, Params,
};
use scross_core::extremal::{extremal_pair, size_c};
use scross_core::oracle::{max_sum_nonempty, DEFAULT_ORACLE_CAP};

/// `(n, k, s, A, B)` with `A` an arbitrary non-empty family and `B` drawn
/// from the sets that s-meet every member of `A`.
fn cross_pair() -> impl Strategy<Value = (u32, u32, u32, Family, Family)> {
    (4u32..=8)
        .prop_flat_map(|n| (Just(n), 2u32..=(n - 1).min(4)))
        .prop_flat_map(|(n, k)| (Just(n), Just(k), 1u32..k, any::<u64>(), any::<u64>()))
        .prop_filter_map("no partner sets", |(n, k, s, ma, mb)| {
            let all = enumerate_ksubsets(n, k).ok()?;
            let pick = |mask: u64, pool: &[KSet]| -> Vec<KSet> {
                let mut v: Vec<KSet> =
                    pool.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, x)| *x).collect();
                if v.is_empty() && !pool.is_empty() {
                    v.push(pool[(mask as usize) % pool.len()]);
                }
                v
            };
            let a = pick(ma, all.members());
            let partners: Vec<KSet> = all
                .iter()
                .copied()
                .filter(|y| a.iter().all(|x| (x.bits() & y.bits()).count_ones() >= s))
                .collect();
            if partners.is_empty() {
                return None;
            }
            let b = pick(mb, &partners);
            Some((n, k, s, Family::new(n, k, a).ok()?, Family::new(n, k, b).ok()?))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shifts_preserve_cross_intersection((n, _k, s, a, b) in cross_pair(), i in 1u32..8, gap in 1u32..8) {
        let j = (i + gap).min(n);
        prop_assume!(i < j);
        let sa = shift_family(i, j, &a).unwrap();
        let sb = shift_family(i, j, &b).unwrap();
        prop_assert_eq!(sa.len(), a.len());
        prop_assert_eq!(sb.len(), b.len());
        prop_assert!(is_s_cross_intersecting(&sa, &sb, s).unwrap().holds);
    }

    #[test]
    fn closure_is_idempotent_and_contains_initial((n, k, s, a, b) in cross_pair()) {
        let initial = KSet::initial(n, k).unwrap();
        for f in [&a, &b] {
            let c = shift_closure(f);
            prop_assert!(is_shifted(&c));
            prop_assert_eq!(c.len(), f.len());
            prop_assert_eq!(shift_closure(&c), c.clone());
            prop_assert!(c.contains(&initial));
        }
        let (ca, cb) = shift_closure_pair(&a, &b).unwrap();
        prop_assert!(is_s_cross_intersecting(&ca, &cb, s).unwrap().holds);
        prop_assert!(ca.contains(&initial) && cb.contains(&initial));
    }

    #[test]
    fn oracle_reaches_the_extremal_pair(k in 2u32..=4, s_off in 0u32..3, l in 0i64..3) {
        let s = 1 + s_off % (k - 1);
        let p = Params::from_slack(k, s, l).unwrap();
        let best = max_sum_nonempty(&p, DEFAULT_ORACLE_CAP).unwrap();
        let (a, b) = extremal_pair(&p).unwrap();
        prop_assert!(is_s_cross_intersecting(&a, &b, s).unwrap().holds);
        prop_assert!(best.value >= (a.len() + b.len()) as u128);
        prop_assert_eq!(best.value, size_c(&p).unwrap() + 1);
        prop_assert!(is_s_cross_intersecting(&best.a, &best.b, s).unwrap().holds);
    }
}
