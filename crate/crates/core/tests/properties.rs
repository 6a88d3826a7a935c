use kratio::dp::{dp_update, DpKey, Target};
use kratio::feasibility::{check_feasible, ProblemKind};
use kratio::part_fptas::{dp_kpartr, PruneBound};
use kratio::ssr_exact::dp_kssrr;
use kratio::{
    brute_force_kpart, brute_force_kssr, brute_force_kssrr, exact_kssrr, fast_fptas_kssr, fptas_kpart, fptas_kssr,
    round_instance, ExtendedRational, Fraction, Instance, RestrictionContext,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn big(r: &ExtendedRational) -> Option<BigRational> {
    (!r.is_infinite()).then(|| BigRational::new(BigInt::from(r.numer()), BigInt::from(r.denom())))
}

fn extended() -> impl Strategy<Value = ExtendedRational> {
    prop_oneof![
        9 => (0u64.., 1u64..).prop_map(|(n, d)| ExtendedRational::new(n, d).unwrap()),
        1 => (1u64..).prop_map(|n| ExtendedRational::new(n, 0).unwrap()),
    ]
}

fn small_instance(max_n: usize, max_k: usize) -> impl Strategy<Value = Instance> {
    (2..=max_k).prop_flat_map(move |k| {
        prop::collection::vec(1u64..=40, k..=max_n).prop_map(move |v| Instance::from_unsorted(v, k).unwrap())
    })
}

fn epsilon() -> impl Strategy<Value = Fraction> {
    (1u64..20).prop_flat_map(|d| (1..d.max(2)).prop_map(move |n| Fraction::epsilon(n, d.max(2)).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn comparison_agrees_with_big_rationals(a in extended(), b in extended()) {
        let expected = match (big(&a), big(&b)) {
            (Some(x), Some(y)) => x.cmp(&y),
            (None, None) => std::cmp::Ordering::Equal,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (Some(_), None) => std::cmp::Ordering::Less,
        };
        prop_assert_eq!(a.cmp(&b), expected);
    }
}

proptest! {
    #[test]
    fn factor_test_agrees_with_big_rationals(a in extended(), b in extended(), eps in epsilon()) {
        let expected = match (big(&a), big(&b)) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(x), Some(y)) => {
                let f = BigRational::new(BigInt::from(eps.denom() + eps.numer()), BigInt::from(eps.denom()));
                x <= f * y
            }
        };
        prop_assert_eq!(a.within_factor_of(&b, eps), expected);
    }

    #[test]
    fn decimal_epsilon_is_exact(digits in 1u64..1_000_000, places in 6u32..=9) {
        let den = 10u64.pow(places);
        let text = format!("0.{:0width$}", digits, width = places as usize);
        let f: Fraction = text.parse().unwrap();
        prop_assert_eq!(f, Fraction::new(digits, den).unwrap());
    }

    #[test]
    fn restriction_context_partitions_values(a in small_instance(12, 4), pick in 0usize..100) {
        let p = 1 + pick % a.max_restriction();
        let RestrictionContext { prefix_sum, q, large_count, .. } = a.restriction(p).unwrap();
        prop_assert_eq!(prefix_sum, a.values()[..p].iter().sum::<u64>());
        prop_assert!(q >= p);
        prop_assert!(a.values()[..q].iter().all(|&v| v <= prefix_sum));
        prop_assert!(a.values()[q..].iter().all(|&v| v > prefix_sum));
        prop_assert_eq!(large_count, a.n() - q);
    }

    #[test]
    fn update_keeps_differences_sorted(
        diffs in prop::collection::vec(-50i64..50, 1..4),
        bits in 0u32..8,
        value in 1u64..30,
        slot in 0usize..4,
        i in 1usize..10,
    ) {
        let mut diffs = diffs;
        diffs.sort_unstable();
        let validity: Vec<bool> = (0..diffs.len()).map(|t| bits >> t & 1 == 1).collect();
        let key = DpKey::from_parts(&diffs, &validity);
        let target = if slot == 0 { Target::First } else { Target::Other((slot - 1) % diffs.len()) };
        let (next, sum1) = dp_update(value, i, target, &key, 100, 5);
        prop_assert!(next.diffs().windows(2).all(|w| w[0] <= w[1]));
        let before: i64 = diffs.iter().sum();
        let after: i64 = next.diffs().iter().sum();
        match target {
            Target::First => {
                prop_assert_eq!(sum1, 100 + value);
                prop_assert_eq!(after, before + value as i64 * diffs.len() as i64);
            }
            Target::Other(_) => {
                prop_assert_eq!(sum1, 100);
                prop_assert_eq!(after, before - value as i64);
                let valid_before = validity.iter().filter(|&&v| v).count();
                let valid_after = next.validity().iter().filter(|&&v| v).count();
                prop_assert!(valid_after >= valid_before && valid_after <= valid_before + 1);
            }
        }
    }

    #[test]
    fn subset_sum_table_reconstructs_its_keys(a in small_instance(9, 3), pick in 0usize..100) {
        let k = a.k();
        let p = 1 + pick % a.max_restriction();
        let ctx = a.restriction(p).unwrap();
        prop_assume!(p + k <= ctx.q + 1);
        let values = &a.values()[..ctx.q];
        let out = dp_kssrr(values, k, p, 2 * ctx.prefix_sum).unwrap();
        for (key, cell) in out.table().all_cells() {
            let (sets, replayed, sum1) = out.table().reconstruct(cell);
            prop_assert_eq!(&replayed, key);
            prop_assert_eq!(sum1, cell.sum1);
            let sums: Vec<i64> = sets.iter().map(|s| s.iter().map(|&i| values[i - 1] as i64).sum()).collect();
            prop_assert_eq!(sums[0] as u64, cell.sum1);
            for (t, &d) in key.diffs().iter().enumerate() {
                prop_assert_eq!(sums[0] - sums[t + 1], d);
            }
            prop_assert_eq!(sets[0].iter().max(), Some(&p));
            if key.all_valid() {
                prop_assert!(check_feasible(&sets, ctx.q, k, ProblemKind::SsrRestricted(p)).is_feasible());
            }
        }
    }

    #[test]
    fn partition_table_covers_every_element(a in small_instance(8, 3), pick in 0usize..100) {
        let k = a.k();
        let p = 1 + pick % a.max_restriction();
        prop_assume!(p + k <= a.n() + 1);
        // no difference can fall below -total, so this bound prunes nothing
        let total: u64 = a.values().iter().sum();
        let out = dp_kpartr(a.values(), k, p, PruneBound { num: 2 * total as u128 + 1, den: 1 }).unwrap();
        for sets in out.solutions() {
            prop_assert!(check_feasible(&sets, a.n(), k, ProblemKind::Part).is_feasible());
            prop_assert_eq!(sets[0].iter().max(), Some(&p));
            prop_assert!(sets[1..].iter().all(|s| s.iter().max().is_some_and(|&m| m > p)));
        }
    }

    #[test]
    fn rounding_brackets_every_value(a in small_instance(12, 4), pick in 0usize..100, eps in epsilon()) {
        let p = 1 + pick % a.max_restriction();
        let r = round_instance(&a, p, eps).unwrap();
        prop_assert!(r.brackets(a.values()));
        prop_assert!(r.values[p - 1] >= 3 * a.n() as u64);
    }

    #[test]
    fn exact_solver_matches_oracle(a in small_instance(8, 3), pick in 0usize..100) {
        let p = 1 + pick % a.max_restriction();
        prop_assert_eq!(exact_kssrr(&a, p).unwrap().ratio(), brute_force_kssrr(&a, p).unwrap().ratio());
    }

    #[test]
    fn approximation_schemes_meet_their_bounds(a in small_instance(8, 3), eps in epsilon()) {
        let ssr = brute_force_kssr(&a).unwrap().ratio();
        let part = brute_force_kpart(&a).unwrap().ratio();
        let s = fptas_kssr(&a, eps).unwrap();
        prop_assert!(check_feasible(s.sets(), a.n(), a.k(), ProblemKind::Ssr).is_feasible());
        prop_assert!(s.ratio().within_factor_of(&ssr, eps));
        let f = fast_fptas_kssr(&a, eps).unwrap();
        prop_assert!(f.ratio().within_factor_of(&ssr, eps));
        let pt = fptas_kpart(&a, eps).unwrap();
        prop_assert!(check_feasible(pt.sets(), a.n(), a.k(), ProblemKind::Part).is_feasible());
        prop_assert!(pt.ratio().within_factor_of(&part, eps));
        prop_assert!(ssr <= part);
    }

    #[test]
    fn oracle_ratio_is_scale_invariant(a in small_instance(7, 3), c in 2u64..20) {
        let b = Instance::from_unsorted(a.values().iter().map(|v| v * c).collect(), a.k()).unwrap();
        prop_assert_eq!(brute_force_kssr(&a).unwrap().ratio(), brute_force_kssr(&b).unwrap().ratio());
        prop_assert_eq!(brute_force_kpart(&a).unwrap().ratio(), brute_force_kpart(&b).unwrap().ratio());
    }

    #[test]
    fn original_indices_point_at_the_same_values(raw in prop::collection::vec(1i64..100, 2..10)) {
        let a = Instance::new(&raw, 2).unwrap();
        let s = brute_force_kssr(&a).unwrap();
        for (set, &sum) in s.original_sets(&a).iter().zip(s.sums()) {
            prop_assert_eq!(set.iter().map(|&i| raw[i] as u64).sum::<u64>(), sum);
        }
    }
}
