use parahoric::pgl2::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

fn f(q: u64) -> Arc<Fq> {
    field(q).unwrap()
}

fn mat(fq: &Arc<Fq>, s: &str) -> LaurentMatrix {
    LaurentMatrix::parse(fq, s, None).unwrap()
}

fn rng(seed: u64) -> impl FnMut(u32) -> u32 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    move |n| r.gen_range(0..n)
}

#[test]
fn prime_powers() {
    assert_eq!(prime_power(1), None);
    assert_eq!(prime_power(12), None);
    assert_eq!(prime_power(8), Some((2, 3)));
    assert_eq!(prime_power(9), Some((3, 2)));
    assert!(matches!(field(1), Err(Pgl2Error::Field(FieldError::NotPrimePower(1)))));
}

#[test]
fn small_fields_are_fields() {
    for q in [2, 3, 4, 5, 8, 9] {
        let k = Fq::new(q).unwrap();
        for a in 0..k.q {
            assert_eq!(k.add(a, k.neg(a)), 0);
            if a != 0 {
                assert_eq!(k.mul(a, k.inv(a)), 1, "q={q} a={a}");
            }
            for b in 0..k.q {
                for c in 0..k.q {
                    assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn valuations() {
    let k = f(5);
    let x = Laurent::parse(&k, "1+1e@2", None).unwrap();
    assert_eq!(x.valuation().unwrap(), Valuation::Finite(2));
    assert_eq!(Laurent::zero(&k).valuation().unwrap(), Valuation::Infinite);
    let a = Laurent::parse(&k, "1+1e", Some(5)).unwrap();
    let b = Laurent::parse(&k, "1-1e", Some(5)).unwrap();
    let p = a.mul(&b);
    assert_eq!(p.valuation().unwrap(), Valuation::Finite(0));
    assert_eq!(p.coeff(2), Some(k.neg(1)));
    assert_eq!(p.prec(), Some(5));
    let lost = Laurent::parse(&k, "1@7", Some(5)).unwrap();
    assert!(matches!(lost.valuation(), Err(Pgl2Error::Indeterminate(_))));
}

#[test]
fn inverse_keeps_relative_precision() {
    let k = f(3);
    let x = Laurent::parse(&k, "1+1e+2e^2@1", Some(7)).unwrap();
    let y = x.inv().unwrap();
    assert_eq!(y.prec(), Some(5));
    let one = x.mul(&y);
    assert_eq!(one.valuation().unwrap(), Valuation::Finite(0));
    assert_eq!(one.sub(&Laurent::one(&k)).known_val(), None);
}

#[test]
fn parse_forms() {
    let k = f(5);
    let x = Laurent::parse(&k, "3+2e^2@-1", None).unwrap();
    assert_eq!((x.coeff(-1), x.coeff(0), x.coeff(1)), (Some(3), Some(0), Some(2)));
    assert_eq!(x.to_string(), "3+0e+2e^2@-1");
    let m = mat(&k, "0,1;1@1,0");
    assert_eq!(m.to_string(), "0,1@0;1@1,0");
    assert!(LaurentMatrix::parse(&k, "1,2,3", None).is_err());
    assert!(Laurent::parse(&k, "1+x", None).is_err());
}

#[test]
fn iwahori_examples() {
    let k = f(3);
    assert_eq!(iwahori_class(&LaurentMatrix::identity(&k)).unwrap(), IwahoriClass::I1 { m: 0 });
    assert_eq!(iwahori_class(&mat(&k, "0,1;1@1,0")).unwrap(), IwahoriClass::I2 { m: 0 });
    assert_eq!(iwahori_class(&mat(&k, "1@1,0;0,1")).unwrap(), IwahoriClass::Neither);
    assert_eq!(iwahori_class(&LaurentMatrix::identity(&k).shift(3)).unwrap(), IwahoriClass::I1 { m: 3 });
    assert_eq!(iwahori_class(&mat(&k, "1@1,1;1@1,1@1")).unwrap(), IwahoriClass::I2 { m: 0 });
    // lower-left entry of valuation 0 leaves the Iwahori subgroup
    assert_eq!(iwahori_class(&mat(&k, "1,0;1,1")).unwrap(), IwahoriClass::Neither);
    let vague = LaurentMatrix::identity(&k).sub(&mat(&k, "1,0;0,1")).truncate(2);
    assert!(matches!(iwahori_class(&vague), Err(Pgl2Error::Indeterminate(_))));
}

#[test]
fn discriminant_examples() {
    for q in [3, 5] {
        let k = f(q);
        assert_eq!(discriminant_valuation(&mat(&k, "0,1;1@1,0")).unwrap(), 1);
        assert_eq!(discriminant_valuation(&mat(&k, "1@1,1;1@1,1@1")).unwrap(), 1);
    }
    let k = f(3);
    assert!(matches!(discriminant_valuation(&LaurentMatrix::identity(&k)), Err(Pgl2Error::Precondition(_))));
}

#[test]
fn discriminant_degenerates_in_characteristic_two() {
    // tr² − 4det = tr² has even valuation (or vanishes) when 4 = 0
    let k = f(2);
    assert!(matches!(
        discriminant_valuation(&mat(&k, "0,1;1@1,0")),
        Err(Pgl2Error::Discriminant(Valuation::Infinite))
    ));
    assert!(matches!(
        discriminant_valuation(&mat(&k, "0,1;1@1,1@1")),
        Err(Pgl2Error::Discriminant(Valuation::Finite(2)))
    ));
}

#[test]
fn discriminant_random_q5() {
    let k = f(5);
    let mut next = rng(5);
    for _ in 0..100 {
        let g = sample_i2(&k, 8, &mut next);
        assert_eq!(discriminant_valuation(&g).unwrap(), 1, "{g}");
    }
}

#[test]
fn conjugator_identity_case() {
    let k = f(3);
    let g = mat(&k, "0,1;1@1,0");
    assert_eq!(conjugating_element(&g, &g).unwrap(), Some(LaurentMatrix::identity(&k)));
    let other = mat(&k, "0,1;2@1,0");
    assert_eq!(conjugating_element(&g, &other).unwrap(), None);
}

#[test]
fn conjugator_random_q3() {
    let k = f(3);
    let mut next = rng(33);
    for _ in 0..20 {
        let g = sample_i2(&k, 8, &mut next);
        let h = sample_i1(&k, 3, &mut next);
        let g2 = h.mul(&g).mul(&h.inverse().unwrap()).truncate(8);
        let r = conjugating_element(&g, &g2).unwrap().expect("conjugate pair");
        assert!(matches!(iwahori_class(&r).unwrap(), IwahoriClass::I1 { .. }));
        let defect = r.mul(&g).sub(&g2.mul(&r));
        assert!(defect.m.iter().flatten().all(|x| x.known_val().is_none()));
    }
}

#[test]
fn two_fixed_points() {
    let k = f(2);
    let g = mat(&k, "0,1;1@1,0");
    let rep = fixed_point_count(&g, 6, 8).unwrap();
    assert_eq!(rep.count, 2);
    assert_eq!(rep.by_length[0], 2);
}

#[test]
fn two_fixed_points_after_conjugation() {
    for q in [2, 3] {
        let k = f(q);
        let mut next = rng(q);
        let g = mat(&k, "0,1;1@1,0");
        for _ in 0..3 {
            let h = sample_i1(&k, 2, &mut next);
            let g2 = h.mul(&g).mul(&h.adj());
            assert_eq!(fixed_point_count(&g2, 6, 6).unwrap().count, 2, "q={q} {g2}");
        }
    }
}

#[test]
fn fixed_points_need_i2() {
    let k = f(2);
    assert!(matches!(fixed_point_count(&LaurentMatrix::identity(&k), 6, 4), Err(Pgl2Error::Precondition(_))));
}

#[test]
fn recurrence_iteration() {
    let alt = iterate_recurrence(1, -1, 5);
    assert!(alt.iter().all(|&(n, u)| u == if n.rem_euclid(2) == 0 { 1 } else { -1 }));
    let lin = iterate_recurrence(0, -1, 5);
    assert_eq!(lin.len(), 11);
    assert!(lin.iter().all(|&(n, u)| u == if n.rem_euclid(2) == 0 { n } else { -n }));
}

#[test]
fn recurrence_space() {
    for n in [2, 6, 10] {
        let s = recurrence_solution_space(n).unwrap();
        assert_eq!(s.dimension, 2);
        assert!(s.verified);
    }
}

#[test]
fn generation_and_coinvariants() {
    let r6 = module_generation_check(6).unwrap();
    assert!(r6.generates);
    assert_eq!(r6.coinvariant_rank, 0);
    assert_eq!(module_generation_check(10).unwrap(), r6);
    assert!(matches!(module_generation_check(1), Err(Pgl2Error::WindowTooSmall(1))));
}

#[test]
fn regular_window() {
    for w in [2, 6, 12] {
        let h = h0_cvr_module(w).unwrap();
        assert_eq!(h.coinvariant_rank(), 1);
        assert_eq!(h.trace(Some(0)), parahoric::Cyclo::zero());
        assert_eq!(h.trace(None), parahoric::Cyclo::int(w as i64));
    }
    assert!(h0_cvr_module(5).is_err());
}

#[test]
fn almost_character_value() {
    for (q, v) in [(2, 4), (3, 6), (4, 8), (5, 10)] {
        let a = almost_char_split_torus(q).unwrap();
        assert_eq!(a.value, v);
        assert_eq!(a.value - a.steinberg, 1);
        assert_eq!(a.unit, 1);
    }
    assert!(almost_char_split_torus(1).is_err());
    assert!(almost_char_split_torus(6).is_err());
}

#[test]
fn hom_space_dimensions() {
    let trivial = "({1},C)";
    assert_eq!(a_space_dims(trivial, CaseTag::SplitTorus).unwrap(), BTreeMap::from([(2, 2)]));
    assert_eq!(a_space_dims(trivial, CaseTag::VeryRegular).unwrap(), BTreeMap::from([(0, 2)]));
    // no nonzero vector is fixed by both simple reflections of this table
    assert_eq!(a_space_dims(trivial, CaseTag::TwoPoint).unwrap(), BTreeMap::new());
    assert_eq!(a_space_dims("(reg,C)", CaseTag::SplitTorus).unwrap(), BTreeMap::from([(0, 1)]));
    assert_eq!(a_space_dims("(reg,C)", CaseTag::TwoPoint).unwrap(), BTreeMap::from([(0, 1)]));
    assert!(a_space_dims("(x,C)", CaseTag::TwoPoint).is_err());
    assert!("elsewhere".parse::<CaseTag>().is_err());
}

proptest! {
    #[test]
    fn iwahori_closed_under_products(seed in 0u64..1000, q in prop::sample::select(vec![2u64, 3, 5])) {
        let k = f(q);
        let mut next = rng(seed);
        let a = sample_i1(&k, 3, &mut next);
        let b = sample_i1(&k, 3, &mut next);
        prop_assert_eq!(iwahori_class(&a.mul(&b)).unwrap(), IwahoriClass::I1 { m: 0 });
        let t = tau(&k);
        prop_assert_eq!(iwahori_class(&a.mul(&t)).unwrap(), IwahoriClass::I2 { m: 0 });
    }

    #[test]
    fn valuation_is_multiplicative(seed in 0u64..1000) {
        let k = f(3);
        let mut next = rng(seed);
        let mut poly = |shift: i64| {
            let c: Vec<u32> = (0..4).map(|i| if i == 0 { 1 + next(2) } else { next(3) }).collect();
            Laurent::new(&k, shift, c, None)
        };
        let (x, y) = (poly(seed as i64 % 5 - 2), poly(1));
        let vx = x.known_val().unwrap();
        let vy = y.known_val().unwrap();
        prop_assert_eq!(x.mul(&y).known_val(), Some(vx + vy));
        let s = x.add(&y);
        prop_assert!(s.known_val().map_or(true, |v| v >= vx.min(vy)));
    }
}
