use super::*;
use crate::field::make_field;

fn fe(field: &Field, v: i128) -> FieldElement {
    FieldElement::from_int(field, v)
}

fn js(set: &CurveSet) -> Vec<u128> {
    set.js().iter().map(|j| j.index()).collect()
}

#[test]
fn point_counts() {
    let f3 = make_field(3, 1).unwrap();
    assert_eq!(count_points(&CurveModel::from_ints(&f3, [0, 0, 0, 2, 1]).unwrap()).unwrap(), 7);
    let f7 = make_field(7, 1).unwrap();
    assert_eq!(count_points(&CurveModel::from_ints(&f7, [0, 0, 0, 0, 4]).unwrap()).unwrap(), 3);
    let f2 = make_field(2, 1).unwrap();
    assert_eq!(count_points(&CurveModel::from_ints(&f2, [1, 0, 0, 0, 1]).unwrap()).unwrap(), 4);
}

#[test]
fn singular_rejected() {
    let f7 = make_field(7, 1).unwrap();
    assert_eq!(CurveModel::from_ints(&f7, [0, 0, 0, 0, 0]), Err(CurveError::SingularModel));
}

#[test]
fn j_values() {
    let f7 = make_field(7, 1).unwrap();
    let e = CurveModel::from_ints(&f7, [0, 0, 0, 1, 0]).unwrap();
    assert_eq!(e.j_invariant(), fe(&f7, 1728));
    let e = CurveModel::from_ints(&f7, [0, 0, 0, 0, 4]).unwrap();
    assert!(e.j_invariant().is_zero());
}

#[test]
fn standard_model_has_requested_j() {
    for (p, a) in [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (5, 2), (13, 1)] {
        let f = make_field(p, a).unwrap();
        for i in 0..f.order() {
            let j = FieldElement::from_index(&f, i);
            assert_eq!(standard_model(&f, &j).unwrap().j_invariant(), j, "p={p} a={a} j={j}");
        }
    }
}

#[test]
fn sextic_twists_of_j0_mod7() {
    let f7 = make_field(7, 1).unwrap();
    let models = curves_with_j(&f7, &FieldElement::zero(&f7)).unwrap();
    assert_eq!(models.len(), 6);
    let mut orders: Vec<u128> = models.iter().map(|m| count_points(m).unwrap()).collect();
    orders.sort();
    assert_eq!(orders, vec![3, 4, 7, 9, 12, 13]);
}

#[test]
fn twists_pairwise_non_isomorphic() {
    for (p, a) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (13, 1)] {
        let f = make_field(p, a).unwrap();
        for i in 0..f.order() {
            let j = FieldElement::from_index(&f, i);
            let ms = curves_with_j(&f, &j).unwrap();
            for x in 0..ms.len() {
                for y in 0..ms.len() {
                    assert_eq!(is_isomorphic(&ms[x], &ms[y]).unwrap(), x == y, "p={p} a={a} {} {}", ms[x], ms[y]);
                }
            }
        }
    }
}

#[test]
fn class_counts_match_brute_force() {
    for (p, a) in [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1)] {
        let f = make_field(p, a).unwrap();
        let q = f.order();
        let mut reps: Vec<CurveModel> = Vec::new();
        let n = q as usize;
        for code in 0..n.pow(5) {
            let mut c = code;
            let coeffs = [(); 5].map(|_| {
                let v = FieldElement::from_index(&f, (c % n) as u128);
                c /= n;
                v
            });
            let Ok(m) = CurveModel::new(&f, coeffs) else { continue };
            if !reps.iter().any(|r| is_isomorphic(r, &m).unwrap()) {
                reps.push(m);
            }
        }
        let all = field_classes(&f).unwrap();
        assert_eq!(all.classes.len(), reps.len(), "p={p} a={a}");
    }
}

#[test]
fn twist_traces_sum_to_zero() {
    for q in 2..=500u64 {
        let Some(pp) = crate::pairs::factor_prime_power(q) else { continue };
        let f = make_field(pp.p, pp.a).unwrap();
        let all = field_classes(&f).unwrap();
        let mut by_j: std::collections::BTreeMap<u128, Vec<i128>> = Default::default();
        for c in &all.classes {
            by_j.entry(c.j.index()).or_default().push(c.trace);
        }
        for (j, ts) in by_j {
            if ts.len() == 2 {
                assert_eq!(ts[0] + ts[1], 0, "q={q} j={j}");
            }
        }
    }
}

#[test]
fn ordinary_sets() {
    let f7 = make_field(7, 1).unwrap();
    assert_eq!(js(&enumerate_set(&f7, 4).unwrap()), vec![0, 2]);

    let f = make_field(587, 1).unwrap();
    assert_eq!(js(&enumerate_set(&f, 625).unwrap()), vec![22, 203, 279, 354, 415, 427, 477, 576]);

    let f = make_field(1021, 1).unwrap();
    let mut want = vec![0, 33, 89, 109, 143, 277, 439, 462, 730, 782, 894, 912, 931];
    want.sort();
    assert_eq!(js(&enumerate_set(&f, 1069).unwrap()), want);

    let f = make_field(1069, 1).unwrap();
    let mut want = vec![0, 643, 855, 1025, 883, 364, 266, 79, 212, 537, 195, 707, 352];
    want.sort();
    assert_eq!(js(&enumerate_set(&f, 1021).unwrap()), want);
}

#[test]
fn small_characteristic_sets() {
    let f3 = make_field(3, 1).unwrap();
    let s = enumerate_set(&f3, 7).unwrap();
    assert!(s.complete);
    assert!(s.classes.iter().all(|c| c.order == 7));
    assert!(!s.classes.is_empty());

    let f4 = make_field(2, 2).unwrap();
    let s = enumerate_set(&f4, 7).unwrap();
    assert_eq!(s.classes.len(), 2);
}

#[test]
fn out_of_window_rejected() {
    let f7 = make_field(7, 1).unwrap();
    assert!(matches!(enumerate_set(&f7, 20), Err(CurveError::TargetOutOfHasseWindow { .. })));
}

#[test]
fn supersingular_detection() {
    let f7 = make_field(7, 1).unwrap();
    let c = CurveClass::from_model(CurveModel::from_ints(&f7, [0, 0, 0, 1, 0]).unwrap()).unwrap();
    assert_eq!(c.order, 8);
    assert!(is_supersingular(&c));
}

#[test]
fn counts_agree_with_naive() {
    for (p, a) in [(2, 3), (3, 2), (5, 2), (11, 1)] {
        let f = make_field(p, a).unwrap();
        let elems: Vec<FieldElement> = (0..f.order()).map(|i| FieldElement::from_index(&f, i)).collect();
        for c in field_classes(&f).unwrap().classes.iter().step_by(3) {
            let [a1, a2, a3, a4, a6] = c.model.coeffs();
            let mut n = 1u128;
            for x in &elems {
                for y in &elems {
                    let l = &(&(y * y) + &(&(a1 * x) * y)) + &(a3 * y);
                    let r = &(&(&x.pow(3) + &(a2 * &x.square())) + &(a4 * x)) + a6;
                    if l == r {
                        n += 1;
                    }
                }
            }
            assert_eq!(n, c.order, "{}", c.model);
        }
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    const SHAPES: [(u64, u32); 6] = [(2, 3), (2, 4), (3, 2), (5, 1), (7, 2), (101, 1)];

    /// `[u, r, s, t]` change of variables applied to a long Weierstrass model.
    fn transform(e: &CurveModel, w: &[FieldElement; 4]) -> CurveModel {
        let [a1, a2, a3, a4, a6] = e.coeffs().clone();
        let [u, r, s, t] = w;
        let ui = u.inv().unwrap();
        let ui2 = ui.square();
        let ui3 = ui2.mul(&ui);
        let n1 = a1.add(&s.scale(2));
        let n2 = a2.sub(&s.mul(&a1)).add(&r.scale(3)).sub(&s.square());
        let n3 = a3.add(&r.mul(&a1)).add(&t.scale(2));
        let n4 = a4
            .sub(&s.mul(&a3))
            .add(&r.mul(&a2).scale(2))
            .sub(&t.add(&r.mul(s)).mul(&a1))
            .add(&r.square().scale(3))
            .sub(&s.mul(t).scale(2));
        let n6 = a6
            .add(&r.mul(&a4))
            .add(&r.square().mul(&a2))
            .add(&r.square().mul(r))
            .sub(&t.mul(&a3))
            .sub(&t.square())
            .sub(&r.mul(t).mul(&a1));
        let coeffs = [n1.mul(&ui), n2.mul(&ui2), n3.mul(&ui3), n4.mul(&ui2.square()), n6.mul(&ui3.square())];
        CurveModel::new(e.field(), coeffs).unwrap()
    }

    proptest! {
        #[test]
        fn changes_of_variables_preserve_j_and_order(
            shape in 0..SHAPES.len(),
            raw in proptest::collection::vec(any::<u64>(), 9),
        ) {
            let (p, a) = SHAPES[shape];
            let field = make_field(p, a).unwrap();
            let q = field.order();
            let el = |r: u64| FieldElement::from_index(&field, r as u128 % q);
            let coeffs = [el(raw[0]), el(raw[1]), el(raw[2]), el(raw[3]), el(raw[4])];
            let Ok(e) = CurveModel::new(&field, coeffs) else { return Ok(()) };
            let u = el(raw[5]);
            prop_assume!(!u.is_zero());
            let e2 = transform(&e, &[u, el(raw[6]), el(raw[7]), el(raw[8])]);
            prop_assert_eq!(e.j_invariant(), e2.j_invariant());
            prop_assert_eq!(count_points(&e).unwrap(), count_points(&e2).unwrap());
            prop_assert!(is_isomorphic(&e, &e2).unwrap());
            let n = count_points(&e).unwrap() as i128;
            prop_assert!((n - (q as i128 + 1)).abs() <= crate::arith::isqrt(4 * q) as i128);
        }
    }
}
