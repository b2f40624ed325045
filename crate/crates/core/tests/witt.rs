use parahoric::witt::{
    borel_fiber_count, enumerate_x_n, structure_polys, LatticeModel, LieDatum, Submodule, WittError, WittRing,
    WittScalar,
};
use proptest::prelude::*;
use std::collections::HashSet;

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `(a_0, a_1, …) ↦ Σ p^i [a_i]` with `[a] = a^{p^{m−1}} mod p^m`.
fn teichmuller_image(c: &[u32], p: u64) -> u64 {
    let m = c.len() as u32;
    let modulus = p.pow(m);
    let t = p.pow(m - 1);
    c.iter().enumerate().map(|(i, &a)| p.pow(i as u32) * pow_mod(a as u64, t, modulus)).sum::<u64>() % modulus
}

fn check_against_integers(p: u64, m: usize) {
    let ring = WittRing::new(p, m).unwrap();
    let modulus = p.pow(m as u32);
    let elems = ring.elements();
    let images: Vec<u64> = elems.iter().map(|x| teichmuller_image(&x.c, p)).collect();
    assert_eq!(images.iter().collect::<HashSet<_>>().len(), elems.len(), "not a bijection");
    for (x, &ix) in elems.iter().zip(&images) {
        for (y, &iy) in elems.iter().zip(&images) {
            assert_eq!(teichmuller_image(&x.add(y).unwrap().c, p), (ix + iy) % modulus, "{x} + {y}");
            assert_eq!(teichmuller_image(&x.mul(y).unwrap().c, p), ix * iy % modulus, "{x} * {y}");
        }
    }
}

#[test]
fn witt_arithmetic_matches_integers_mod_p_power() {
    for (p, m) in [(3, 2), (5, 2), (3, 3), (5, 3)] {
        check_against_integers(p, m);
    }
}

#[test]
fn length_one_is_the_prime_field() {
    check_against_integers(7, 1);
}

#[test]
fn structure_polynomials_are_cached_and_sized() {
    let a = structure_polys(3, 2);
    let b = structure_polys(3, 2);
    assert!(std::sync::Arc::ptr_eq(&a, &b));
    let (add, mul) = a.sizes();
    assert_eq!(add.len(), 2);
    assert_eq!(mul.len(), 2);
    // S_0 = X_0 + Y_0, P_0 = X_0 Y_0
    assert_eq!((add[0], mul[0]), (2, 1));
}

#[test]
fn p_times_one_is_verschiebung_of_one() {
    let ring = WittRing::new(5, 3).unwrap();
    assert_eq!(WittScalar::from_int(&ring, 5).c, vec![0, 1, 0]);
    assert_eq!(WittScalar::from_int(&ring, 25).c, vec![0, 0, 1]);
    assert!(WittScalar::from_int(&ring, 125).is_zero());
    let minus_one = WittScalar::from_int(&ring, -1);
    assert!(minus_one.add(&ring.one()).unwrap().is_zero());
}

#[test]
fn characteristic_two_ring_axioms() {
    let ring = WittRing::new(4, 2).unwrap();
    let elems = ring.elements();
    assert_eq!(elems.len(), 16);
    for x in &elems {
        assert!(x.add(&x.neg()).unwrap().is_zero());
        assert_eq!(x.mul(&ring.one()).unwrap(), *x);
        for y in &elems {
            assert_eq!(x.add(y).unwrap(), y.add(x).unwrap());
            assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
            for z in elems.iter().step_by(3) {
                let lhs = x.mul(&y.add(z).unwrap()).unwrap();
                let rhs = x.mul(y).unwrap().add(&x.mul(z).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
    // 2 = (0, 1) over 𝔽_4
    assert_eq!(WittScalar::from_int(&ring, 2).c, vec![0, 1]);
}

#[test]
fn parse_display_and_mismatch() {
    let r = WittRing::new(3, 2).unwrap();
    let x = r.parse("(2,1)").unwrap();
    assert_eq!(x.to_string(), "(2,1)");
    assert_eq!(r.parse(&x.to_string()).unwrap(), x);
    assert!(matches!(r.parse("(3,0)"), Err(WittError::Parameters(_))));
    assert!(matches!(r.parse("(1,0,0)"), Err(WittError::Parameters(_))));
    assert!(matches!(r.parse("1,0"), Err(WittError::Parse(_))));
    let s = WittRing::new(5, 2).unwrap();
    assert!(matches!(x.add(&s.one()), Err(WittError::Mismatch { .. })));
    assert!(WittRing::new(6, 2).is_err());
    assert!(WittRing::new(3, 0).is_err());
}

fn span_bruteforce(p: i64, k: u32, gens: &[Vec<i64>]) -> HashSet<Vec<i64>> {
    let m = p.pow(k);
    let dim = gens.first().map_or(0, Vec::len);
    let mut set: HashSet<Vec<i64>> = HashSet::from([vec![0; dim]]);
    let mut frontier = vec![vec![0; dim]];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(m)).collect();
            if set.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    set
}

proptest! {
    #[test]
    fn submodule_matches_bruteforce_span(
        gens in prop::collection::vec(prop::collection::vec(0i64..9, 3), 0..4),
        probe in prop::collection::vec(prop::collection::vec(0i64..9, 3), 8),
    ) {
        let z = Submodule::from_generators(3, 2, 3, &gens);
        let gens3: Vec<Vec<i64>> = if gens.is_empty() { vec![vec![0, 0, 0]] } else { gens.clone() };
        let span = span_bruteforce(3, 2, &gens3);
        prop_assert_eq!(3usize.pow(z.log_order()), span.len());
        prop_assert_eq!(3usize.pow(z.d()), span.len());
        for v in probe.iter().chain(&gens) {
            prop_assert_eq!(z.contains(v), span.contains(v));
        }
        let again = Submodule::from_generators(3, 2, 3, &z.generators());
        prop_assert_eq!(again, z);
    }
}

fn model(p: u32, n: u32) -> LatticeModel {
    LatticeModel::new(LieDatum::sl2(p).unwrap(), n)
}

#[test]
fn sl2_datum() {
    let d = LieDatum::sl2(3).unwrap();
    assert_eq!(d.bracket(&[1, 0, 0], &[0, 0, 1]), vec![0, 1, 0]);
    assert_eq!(d.bracket(&[1, 0, 0], &[0, 1, 0]), vec![-2, 0, 0]);
    assert_eq!(d.pair(&[0, 1, 0], &[0, 1, 0]), 8);
    assert!(matches!(LieDatum::sl2(2), Err(WittError::Degenerate(_))));
    assert!(matches!(LieDatum::sl2(9), Err(WittError::Parameters(_))));
    let mut bad = d.gram.clone();
    bad[1][1] = 4;
    assert!(LieDatum::new("bad", 3, d.structure.clone(), bad).is_err());
}

#[test]
fn d_of_standard_submodules() {
    let m = model(3, 1);
    assert_eq!(m.ambient().d(), 6);
    assert_eq!(m.base_image().d(), 3);
    assert_eq!(m.submodule(&[]).d(), 0);
    assert_eq!(m.submodule(&[vec![3, 0, 0], vec![1, 0, 0]]).d(), 2);
    assert_eq!(m.submodule(&[vec![3, 1, 0]]).d(), 2);
}

#[test]
fn base_lattice_is_self_dual_and_closed() {
    for (p, n) in [(3, 1), (5, 1), (3, 2)] {
        let m = model(p, n);
        let l0 = m.base_image();
        assert_eq!(m.sharp(&l0).unwrap(), l0);
        assert!(m.is_self_dual_isotropic(&l0));
        assert!(m.is_lie_closed(&l0));
    }
}

#[test]
fn sharp_is_an_order_reversing_involution() {
    let m = model(3, 1);
    let all = m.all_submodules(1 << 20).unwrap();
    for z in &all {
        let s = m.sharp(z).unwrap();
        assert_eq!(m.sharp(&s).unwrap(), *z);
        assert_eq!(s.d(), 6 - z.d());
    }
    for (i, a) in all.iter().enumerate().step_by(7) {
        for b in all.iter().skip(i).step_by(11) {
            if a.is_subset_of(b) {
                assert!(m.sharp(b).unwrap().is_subset_of(&m.sharp(a).unwrap()));
            }
        }
    }
}

#[test]
fn double_enumeration_p3_n1() {
    let m = model(3, 1);
    let r = enumerate_x_n(&m, 1 << 20).unwrap();
    assert!(r.bijection_e());
    assert!(r.bijection_x());
    assert_eq!(r.duality_failures, 0);
    assert!(r.e_prime_0.contains(&m.base_image()));
    // the base vertex and its q + 1 neighbours in the tree
    assert_eq!(r.e_prime.len(), 1 + 4);
    // every self-dual lattice in range is a Lie ring here, so E′∖E′₀ is empty
    assert_eq!(r.e_prime_0, r.e_prime);
    for z in &r.e_prime {
        assert_eq!(m.sharp(z).unwrap(), *z);
    }
}

#[test]
fn base_point_lies_in_x1() {
    // X_0 = {L_0} sits inside X_1
    let m = model(5, 1);
    let l0 = m.base_image();
    assert!(m.is_self_dual_isotropic(&l0) && m.is_lie_closed(&l0));
}

#[test]
fn budget_is_enforced() {
    let m = model(5, 2);
    assert!(matches!(enumerate_x_n(&m, 1 << 20), Err(WittError::Budget { .. })));
}

#[test]
fn borel_counts() {
    for (p, q) in [(3, 3), (5, 5), (3, 9)] {
        let m = model(p, 1);
        assert_eq!(borel_fiber_count(&m, &m.base_image(), q).unwrap(), q as usize + 1, "q={q}");
    }
    let m = model(3, 1);
    assert!(matches!(borel_fiber_count(&m, &m.base_image(), 5), Err(WittError::Parameters(_))));
    let ambient = m.ambient();
    assert!(borel_fiber_count(&m, &ambient, 3).is_err());
}

#[test]
fn every_lattice_in_x1_has_q_plus_one_borels() {
    let m = model(3, 1);
    let r = enumerate_x_n(&m, 1 << 20).unwrap();
    for z in &r.e_prime_0 {
        assert_eq!(borel_fiber_count(&m, z, 3).unwrap(), 4);
    }
}
