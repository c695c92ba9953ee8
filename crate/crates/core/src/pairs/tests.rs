use super::*;
use proptest::prelude::*;

fn pp(n: u64) -> PrimePower {
    factor_prime_power(n).unwrap()
}

fn statuses(q1: u64, q2: u64) -> (Status, Status) {
    let r = classify(q1, q2).unwrap();
    (r.e1_status, r.e2_status)
}

use Status::{Empty as E, Ordinary as O, Supersingular as S};

#[test]
fn prime_power_factoring() {
    assert_eq!(factor_prime_power(243), Some(PrimePower { q: 243, p: 3, a: 5 }));
    assert_eq!(factor_prime_power(22501), Some(PrimePower { q: 22501, p: 22501, a: 1 }));
    assert_eq!(factor_prime_power(22801), Some(PrimePower { q: 22801, p: 151, a: 2 }));
    assert_eq!(factor_prime_power(12), None);
    assert_eq!(factor_prime_power(1), None);
    assert_eq!(factor_prime_power(1 << 63), Some(PrimePower { q: 1 << 63, p: 2, a: 63 }));
    assert_eq!(factor_prime_power(4_294_967_291u64 * 4_294_967_291), Some(PrimePower { q: 4_294_967_291u64 * 4_294_967_291, p: 4_294_967_291, a: 2 }));
}

#[test]
fn hasse_predicate() {
    assert!(is_hasse(3, 7).unwrap());
    assert!(!is_hasse(5, 11).unwrap());
    assert!(is_hasse(81, 64).unwrap());
    assert_eq!(is_hasse(9, 9).unwrap_err(), PairError::EqualInputs);
}

#[test]
fn invariants_examples() {
    assert_eq!(pair_invariants(3, 7).unwrap(), (-3, 5, -3));
    assert_eq!(pair_invariants(625, 587).unwrap(), (39, -37, -979));
    assert_eq!(pair_invariants(22801, 22501).unwrap(), (301, -299, -603));
    assert_eq!(pair_invariants(5, 11).unwrap_err(), PairError::NotHasse(5, 11));
}

#[test]
fn discriminant_decomposition() {
    assert_eq!(decompose_discriminant(-1875).unwrap(), (25, -3));
    assert_eq!(decompose_discriminant(-979).unwrap(), (1, -979));
    assert_eq!(decompose_discriminant(-12).unwrap(), (2, -3));
    assert_eq!(decompose_discriminant(-4).unwrap(), (1, -4));
    assert_eq!(decompose_discriminant(-32).unwrap(), (2, -8));
    assert_eq!(decompose_discriminant(-603).unwrap(), (3, -67));
    assert_eq!(decompose_discriminant(0).unwrap_err(), PairError::NonNegative(0));
    assert_eq!(decompose_discriminant(-6).unwrap_err(), PairError::NotDiscriminant(-6));
}

#[test]
fn waterhouse_examples() {
    assert_eq!(waterhouse_case(pp(3), -3).unwrap(), WaterhouseCase::RamifiedRoot);
    assert_eq!(waterhouse_status(pp(7), 5).unwrap(), O);
    assert_eq!(waterhouse_status(pp(49), 7).unwrap(), E);
    assert_eq!(waterhouse_status(pp(256), 14).unwrap(), E);
    assert_eq!(waterhouse_status(pp(243), -12).unwrap(), E);
    assert_eq!(waterhouse_case(pp(4), 0).unwrap(), WaterhouseCase::ZeroEvenDegree);
    assert_eq!(waterhouse_case(pp(25), 0).unwrap(), WaterhouseCase::Unrealized);
    assert_eq!(waterhouse_case(pp(25), 5).unwrap(), WaterhouseCase::Root);
    assert_eq!(waterhouse_case(pp(25), -10).unwrap(), WaterhouseCase::TwiceRoot);
    assert!(matches!(waterhouse_case(pp(7), 6), Err(PairError::HasseBoundViolated { .. })));
}

#[test]
fn classification_examples() {
    assert_eq!(statuses(3, 7), (S, O));
    assert_eq!(statuses(4, 3), (S, S));
    assert_eq!(statuses(16, 11), (E, O));
    assert_eq!(statuses(8, 7), (E, S));
    assert_eq!(statuses(256, 243), (E, E));
    assert_eq!(statuses(49, 43), (E, O));
    assert_eq!(statuses(2, 4), (O, O));
    assert_eq!(statuses(4, 8), (O, O));
    let r = classify(64, 81).unwrap();
    assert_eq!((r.e1_status, r.e2_status), (S, S));
    assert_eq!((r.delta, r.conductor_f, r.fundamental_d), (0, 0, 0));
    assert_eq!((r.split1, r.split2), (Split::Undefined, Split::Undefined));
    assert_eq!(classify(6, 7).unwrap_err(), PairError::NotPrimePower(6));
}

#[test]
fn table_cell_roundtrip() {
    let c = TableCell(E, O);
    assert_eq!(c.to_string(), "empty-ordinary");
    assert_eq!("empty-ordinary".parse::<TableCell>().unwrap(), c);
    assert!("empty".parse::<TableCell>().is_err());
}

#[test]
fn json_roundtrip_and_key_order() {
    let r = classify(625, 587).unwrap();
    let text = serde_json::to_string(&r.to_json()).unwrap();
    assert!(text.starts_with(r#"{"q1":625,"q2":587,"p1":5,"a1":4,"p2":587,"a2":1,"t1":39,"t2":-37,"delta":-979"#));
    let back: PairJson = serde_json::from_str(&text).unwrap();
    assert_eq!(PairRecord::try_from(&back).unwrap(), r);
}

#[test]
fn swapped_matches_direct_classification() {
    for r in enumerate_hasse_pairs(3000, false).unwrap() {
        assert_eq!(r.swapped(), classify_pair(r.q2, r.q1).unwrap());
    }
}

#[test]
fn enumeration_examples() {
    let small: Vec<(u64, u64)> = enumerate_hasse_pairs(8, false).unwrap().map(|r| (r.q1.q, r.q2.q)).collect();
    for pair in [(2, 3), (2, 4), (3, 4), (4, 5), (4, 8), (2, 5), (3, 7)] {
        assert!(small.contains(&pair), "{pair:?}");
    }
    let odd: Vec<(u64, u64)> = enumerate_hasse_pairs(7, true).unwrap().map(|r| (r.q1.q, r.q2.q)).collect();
    assert_eq!(odd, vec![(3, 5), (3, 7), (5, 7)]);
    assert_eq!(enumerate_hasse_pairs(2, false).unwrap().count(), 0);
    assert!(enumerate_hasse_pairs(ENUMERATION_LIMIT + 1, false).is_err());
}

#[test]
fn enumeration_matches_quadratic_scan() {
    let max = 2000u64;
    let powers: Vec<u64> = (2..=max).filter(|&n| factor_prime_power(n).is_some()).collect();
    let mut expect = Vec::new();
    for (i, &a) in powers.iter().enumerate() {
        for &b in &powers[i + 1..] {
            // symmetric form of the predicate, as an independent path
            let t = a as i128 + 1 - b as i128;
            if t * t <= 4 * a as i128 {
                expect.push((a, b));
            }
        }
    }
    let got: Vec<(u64, u64)> = enumerate_hasse_pairs(max, false).unwrap().map(|r| (r.q1.q, r.q2.q)).collect();
    assert_eq!(got, expect);
}

#[test]
fn split_examples() {
    assert_eq!(split_type(-3, 3).unwrap(), Split::Ramified);
    assert_eq!(split_type(-3, 7).unwrap(), Split::Split);
    assert_eq!(split_type(-3, 17).unwrap(), Split::Inert);
    assert_eq!(split_type(-7, 2).unwrap(), Split::Split);
    assert_eq!(split_type(-3, 2).unwrap(), Split::Inert);
    assert_eq!(split_type(-12, 5).unwrap_err(), PairError::NotFundamental(-12));
}

#[test]
fn exceptional_examples() {
    assert!(!exceptional_flag(&classify(49, 43).unwrap()).unwrap());
    assert!(!exceptional_flag(&classify(625, 587).unwrap()).unwrap());
    assert_eq!(exceptional_flag(&classify(2, 3).unwrap()).unwrap_err(), PairError::NotOddPair);
}

#[test]
fn no_exceptional_pairs_to_ten_thousand() {
    let flagged: Vec<_> =
        enumerate_hasse_pairs(10_000, true).unwrap().filter(|r| exceptional_flag(r).unwrap()).map(|r| (r.q1.q, r.q2.q)).collect();
    assert!(flagged.is_empty(), "{flagged:?}");
}

#[test]
fn even_supersingular_shapes() {
    let tag = |a, b| even_ss_case(&classify(a, b).unwrap()).unwrap();
    assert_eq!(tag(64, 81), EvenSsCase::Special64_81);
    assert_eq!(tag(16, 25), EvenSsCase::FermatSquare);
    assert_eq!(tag(1024, 961), EvenSsCase::MersenneSquare);
    assert_eq!(tag(4, 3), EvenSsCase::Pair4_3);
    assert_eq!(tag(2, 3), EvenSsCase::OrdinaryOtherSide);
    assert_eq!(even_ss_case(&classify(3, 7).unwrap()).unwrap_err(), PairError::NotEvenSupersingular);
}

#[test]
fn even_supersingular_dichotomy_sweep() {
    let mut seen = 0;
    for r in enumerate_hasse_pairs(1 << 16, false).unwrap() {
        for r in [r.clone(), r.swapped()] {
            if r.q1.p == 2 && r.e1_status == S {
                let tag = even_ss_case(&r).unwrap();
                assert_eq!(tag.both_supersingular(), r.e2_status == S, "({}, {})", r.q1.q, r.q2.q);
                if tag.both_supersingular() {
                    seen += 1;
                }
            }
        }
    }
    assert!(seen >= 5);
}

#[test]
fn consecutive_scan() {
    assert_eq!(consecutive_prime_power_scan(1_000_000).unwrap(), vec![(8, 9)]);
    assert_eq!(consecutive_prime_power_scan(8).unwrap(), vec![]);
    assert_eq!(consecutive_prime_power_scan(100).unwrap(), vec![(8, 9)]);
}

#[test]
fn equality_pairs_include_both_known_cases() {
    let eq = hasse_equality_pairs(100);
    assert!(eq.contains(&(81, 64)));
    assert!(eq.contains(&(9, 4)));
    for (a, b) in eq {
        let t = b as i128 + 1 - a as i128;
        assert_eq!(t * t, 4 * b as i128);
    }
}

#[test]
fn sweep_invariants_to_ten_thousand() {
    let mut empty_empty = Vec::new();
    for r in enumerate_hasse_pairs(10_000, false).unwrap() {
        for r in [r.clone(), r.swapped()] {
            assert_eq!(r.t1 + r.t2, 2);
            assert_eq!(r.t1 * r.t1 - 4 * r.q1.q as i128, r.delta);
            assert_eq!(r.t2 * r.t2 - 4 * r.q2.q as i128, r.delta);
            if r.delta < 0 {
                assert_eq!(r.conductor_f as i128 * r.conductor_f as i128 * r.fundamental_d, r.delta);
                assert!(is_fundamental(r.fundamental_d));
            }
            if r.q1.p == r.q2.p {
                let prod = r.q1.q as i128 * r.q2.q as i128;
                assert_eq!(arith::gcd_i128(r.delta, prod), 1);
            }
            if r.is_odd() {
                assert_ne!((r.e1_status, r.e2_status), (S, S));
                assert!(r.split1 == Split::Split || r.split2 == Split::Split);
                assert!(r.delta < 0 && r.delta.rem_euclid(4) == 1);
                assert!(!arith::is_square(r.delta.unsigned_abs()));
                assert_eq!(r.fundamental_d.rem_euclid(4), 1);
            }
            if r.q1.a == 1 {
                assert_ne!(r.e1_status, E);
                if r.e1_status == S && r.q2.a == 1 {
                    assert!(matches!((r.q1.q, r.q2.q), (2, 3) | (2, 5) | (3, 7)), "({}, {})", r.q1.q, r.q2.q);
                }
            }
            if r.q1.p == 2 && r.e1_status == O {
                assert!(matches!((r.q1.q, r.q2.q), (2, 4) | (4, 2) | (4, 8) | (8, 4)), "({}, {})", r.q1.q, r.q2.q);
            }
            if (r.e1_status, r.e2_status) == (E, E) {
                empty_empty.push((r.q1.q, r.q2.q));
            }
        }
    }
    empty_empty.sort();
    assert_eq!(empty_empty, vec![(243, 256), (256, 243)]);
}

proptest! {
    #[test]
    fn hasse_is_symmetric(a in 2u64..5_000_000, b in 2u64..5_000_000) {
        prop_assume!(a != b);
        prop_assert_eq!(is_hasse(a, b).unwrap(), is_hasse(b, a).unwrap());
    }

    #[test]
    fn decomposition_recomposes(m in 1u64..2_000_000) {
        let delta = -(m as i128);
        prop_assume!(matches!(delta.rem_euclid(4), 0 | 1));
        let (f, d) = decompose_discriminant(delta).unwrap();
        prop_assert_eq!(f as i128 * f as i128 * d, delta);
        prop_assert!(is_fundamental(d));
    }

    #[test]
    fn prime_powers_roundtrip(start in 2u64..10_000, a in 1u32..5) {
        let p = (start..).find(|&n| is_prime(n)).unwrap();
        let q = p.pow(a);
        prop_assert_eq!(factor_prime_power(q), Some(PrimePower { q, p, a }));
    }
}
