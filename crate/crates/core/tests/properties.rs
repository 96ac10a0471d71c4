use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use immanant_core::character::{dimension, mn_character};
use immanant_core::engine::{determinant, perm_class_stats, permanent, sign_twisted_immanant};
use immanant_core::group::abelian_groups_of_order;
use immanant_core::padic::padic_profile;
use immanant_core::support::{
    count_d, count_p, hall_support, near_hook_scalar_numerator, support_counts,
};
use immanant_core::zerosum::labelled_det_coeff;
use immanant_core::{
    immanant, CycleType, GroupPolynomial, GroupSpec, GroupTable, Mode, Partition,
    RationalSpecialization,
};

fn g(s: &str) -> GroupSpec {
    s.parse().unwrap()
}

#[test]
fn conjugate_character_is_sign_twist() {
    for n in 1..=8 {
        for lambda in Partition::all(n) {
            let conj = lambda.conjugate();
            for mu in CycleType::all(n) {
                assert_eq!(
                    mn_character(&conj, &mu).unwrap(),
                    mu.sign() * mn_character(&lambda, &mu).unwrap(),
                    "{lambda} at {:?}",
                    mu.lengths()
                );
            }
        }
    }
}

#[test]
fn column_orthogonality() {
    for n in 1..=7 {
        let shapes = Partition::all(n);
        for mu in CycleType::all(n) {
            let sq: i64 = shapes
                .iter()
                .map(|l| mn_character(l, &mu).unwrap().pow(2))
                .sum();
            assert_eq!(
                BigInt::from(sq),
                mu.centralizer_order(),
                "{:?}",
                mu.lengths()
            );
        }
    }
}

#[test]
fn regular_character() {
    for n in 1..=7 {
        let fact: i64 = (1..=n as i64).product();
        for mu in CycleType::all(n) {
            let total: i64 = Partition::all(n)
                .iter()
                .map(|l| dimension(l) * mn_character(l, &mu).unwrap())
                .sum();
            let want = if mu == CycleType::identity(n) {
                fact
            } else {
                0
            };
            assert_eq!(total, want);
        }
    }
}

#[test]
fn conjugate_immanant_is_sign_twisted() {
    for name in ["c2", "c3", "c4", "c2xc2", "c5", "c6"] {
        let spec = g(name);
        for lambda in Partition::all(spec.order()) {
            let twisted = sign_twisted_immanant(&spec, &lambda).unwrap();
            let conj = immanant(&spec, &lambda.conjugate(), Mode::BruteForce).unwrap();
            assert_eq!(twisted, conj, "{name} {lambda}");
        }
    }
}

#[test]
fn json_round_trip_over_all_immanants() {
    for name in ["c3", "c4", "c2xc2"] {
        let spec = g(name);
        for lambda in Partition::all(spec.order()) {
            let p = immanant(&spec, &lambda, Mode::BruteForce).unwrap();
            let text = serde_json::to_string(&p).unwrap();
            let back: GroupPolynomial = serde_json::from_str(&text).unwrap();
            assert_eq!(back, p);
            assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}

#[test]
fn per_a_counts_are_proportional() {
    for name in ["c3", "c4", "c2xc2", "c5", "c6", "c7"] {
        let spec = g(name);
        let n = spec.order() as i64;
        for m in hall_support(&spec) {
            let st = perm_class_stats(&spec, &m).unwrap();
            for a in 0..spec.order() {
                let la = m.exponents[a] as i64;
                assert_eq!(
                    st.per_a_counts[a] as i64 * n,
                    la * st.p_m as i64,
                    "{name} {m} a={a}"
                );
                assert_eq!(st.per_a_signed[a] * n, la * st.d_m, "{name} {m} a={a}");
            }
            assert!(st.d_m.unsigned_abs() <= st.p_m);
        }
    }
}

#[test]
fn near_hook_supports_on_c6() {
    let c6 = g("c6");
    let hook = immanant(&c6, &"5,1".parse().unwrap(), Mode::BruteForce).unwrap();
    let cohook = immanant(&c6, &"2,1,1,1,1".parse().unwrap(), Mode::BruteForce).unwrap();
    let per = permanent(&c6).unwrap();
    let det = determinant(&c6).unwrap();
    assert!(hook.support().eq(per.support()));
    assert!(cohook.support().eq(det.support()));
}

#[test]
fn factor_order_does_not_change_counts() {
    let a = support_counts(&g("c2xc6")).unwrap();
    let b = support_counts(&g("c6xc2")).unwrap();
    assert_eq!(a, b);
    assert_eq!(g("c2xc6").canonical(), g("c6xc2").canonical());
}

#[test]
fn scalar_never_vanishes_when_order_is_twice_odd() {
    for n in [2, 6, 10] {
        for spec in abelian_groups_of_order(n) {
            let table = GroupTable::new(&spec);
            for m in hall_support(&spec) {
                assert_ne!(near_hook_scalar_numerator(&table, &m), 0, "{spec} {m}");
            }
        }
    }
}

#[test]
fn prime_power_orders_have_strict_one_block_minimum() {
    for name in ["c2xc2", "c4", "c8", "c2xc4", "c2xc2xc2", "c9", "c3xc3"] {
        let spec = g(name);
        let table = GroupTable::new(&spec);
        for m in hall_support(&spec) {
            let prof = padic_profile(&table, &m.sequence()).unwrap();
            assert!(prof.strictly_minimal, "{name} {m}");
        }
        assert_eq!(count_p(&spec), count_d(&spec).unwrap());
    }
}

#[test]
fn order_twelve_counts_are_reported() {
    // no assertion about P versus D here, only that both paths run
    for spec in abelian_groups_of_order(12) {
        let p = count_p(&spec);
        let d = count_d(&spec).unwrap();
        assert!(d <= p, "{spec}: P = {p}, D = {d}");
    }
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(vec!["c3", "c4", "c2xc2", "c5", "c6", "c7"]).prop_map(g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn labelled_coefficient_ignores_order(
        (name, seq, shuffled) in prop::sample::select(vec!["c3", "c4", "c2xc2", "c5", "c6", "c7"])
            .prop_flat_map(|name| {
                let n = g(name).order();
                (Just(name), prop::collection::vec(0..n, n))
            })
            .prop_flat_map(|(name, seq)| (Just(name), Just(seq.clone()), Just(seq).prop_shuffle()))
    ) {
        let table = GroupTable::new(&g(name));
        prop_assert_eq!(
            labelled_det_coeff(&table, &seq).unwrap(),
            labelled_det_coeff(&table, &shuffled).unwrap()
        );
    }

    #[test]
    fn evaluation_is_linear(
        spec in spec_strategy().prop_filter("order <= 5", |s| s.order() <= 5),
        pick in (0usize..16, 0usize..16),
        c in -20i64..20,
        values in prop::collection::vec(-9i64..10, 5),
    ) {
        let n = spec.order();
        let shapes = Partition::all(n);
        let p = immanant(&spec, &shapes[pick.0 % shapes.len()], Mode::BruteForce).unwrap();
        let q = immanant(&spec, &shapes[pick.1 % shapes.len()], Mode::BruteForce).unwrap();
        let rho = RationalSpecialization::from_integers(&values[..n]);
        let combined = p.add_scaled(&q, &BigInt::from(c)).unwrap();
        let want = p.evaluate(&rho).unwrap()
            + BigRational::from_integer(BigInt::from(c)) * q.evaluate(&rho).unwrap();
        prop_assert_eq!(combined.evaluate(&rho).unwrap(), want);
        prop_assert_eq!(p.sub(&q).unwrap().evaluate(&rho).unwrap(),
            p.evaluate(&rho).unwrap() - q.evaluate(&rho).unwrap());
    }
}
