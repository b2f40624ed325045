use parahoric::alcove::{sample_grid, AlcoveError, LevelOnePoint, TorusData};
use parahoric::coxeter::*;
use parahoric::cyclotomic::Cyclo;
use parahoric::linalg::{q, qf, trace, Mat, Q};
use parahoric::reps::*;
use proptest::prelude::*;
use num_traits::Zero;
use std::sync::Arc;

fn datum(t: AffineType) -> Arc<CartanDatum> {
    Arc::new(CartanDatum::new(t).unwrap())
}

fn pt(d: &CartanDatum, c: &[(i64, i64)]) -> LevelOnePoint {
    LevelOnePoint::real(d, c.iter().map(|&(a, b)| qf(a, b)).collect()).unwrap()
}

fn a1_data() -> TorusData {
    TorusData::new(&datum(AffineType::A(1)), &nodes(&[])).unwrap()
}

fn scalar(x: i64) -> Mat<Q> {
    vec![vec![q(x)]]
}

#[test]
fn full_stabilizer_trivial_character() {
    let data = a1_data();
    let d = pt(&data.datum, &[(1, 1), (0, 1)]);
    let m = build_irreducible(&data, &d, &[scalar(1)]).unwrap();
    assert_eq!(m.dim(), 1);
    for g in &m.rep.gens {
        assert_eq!(g, &vec![vec![Cyclo::one()]]);
    }
}

#[test]
fn regular_point_induces_from_trivial_group() {
    let data = a1_data();
    let d = pt(&data.datum, &[(1, 2), (1, 2)]);
    let m = build_irreducible(&data, &d, &[]).unwrap();
    assert_eq!(m.dim(), 2);
    assert_eq!(m.coset_reps.len(), 2);
    let s = SemidirectElement::finite(&data, 1);
    assert_eq!(m.character(&data, &s), Cyclo::zero());
    assert_eq!(character(&m.rep, &data, &s).unwrap(), Cyclo::zero());
    let id = SemidirectElement::identity(&data);
    assert_eq!(character(&m.rep, &data, &id).unwrap(), Cyclo::int(2));
}

#[test]
fn one_dimensional_character_is_the_pairing() {
    let data = a1_data();
    let d = pt(&data.datum, &[(0, 1), (1, 1)]);
    let m = build_irreducible(&data, &d, &[scalar(-1)]).unwrap();
    assert_eq!(m.dim(), 1);
    for l in -3..=3 {
        let x = SemidirectElement::translation(vec![l]);
        let expected = Cyclo::exp_2pi_i(&m.point.pair(&[l]));
        assert_eq!(character(&m.rep, &data, &x).unwrap(), expected);
    }
    assert_eq!(m.point.values(), &[qf(1, 2)]);
}

#[test]
fn bad_rho_is_rejected() {
    let data = a1_data();
    let d = pt(&data.datum, &[(1, 1), (0, 1)]);
    assert!(matches!(build_irreducible(&data, &d, &[scalar(2)]), Err(RepError::Inconsistent(_))));
    assert!(matches!(build_irreducible(&data, &d, &[]), Err(RepError::WrongGeneratorCount { .. })));
    let c = LevelOnePoint::new(&data.datum, vec![(Q::zero(), qf(1, 3)), (q(1), qf(-1, 3))]).unwrap();
    assert!(matches!(build_irreducible(&data, &c, &[]), Err(RepError::Alcove(AlcoveError::UnsupportedRegime))));
}

fn check_grid(t: AffineType, j: &[usize], den: i64) {
    let data = TorusData::new(&datum(t), &nodes(j)).unwrap();
    for d in sample_grid(&data.datum, &data.j, den) {
        for sign in [1, -1] {
            let rho: Vec<Mat<Q>> = trivial_rho(&data, &d).unwrap().iter().map(|_| scalar(sign)).collect();
            let m = match build_irreducible(&data, &d, &rho) {
                Ok(m) => m,
                // the sign character need not respect the stabilizer relations
                Err(RepError::Inconsistent(_)) if sign == -1 => continue,
                Err(e) => panic!("{d}: {e}"),
            };
            assert_eq!(m.dim(), m.coset_reps.len(), "induction dimension");
            assert_eq!(m.coset_reps.len() * m.stabilizer.len(), data.group_order());
            assert_eq!(m.mackey_norm(&data), q(1), "{t} {d}");
        }
    }
}

#[test]
fn mackey_norm_a1() {
    check_grid(AffineType::A(1), &[], 6);
}

#[test]
fn mackey_norm_a2() {
    check_grid(AffineType::A(2), &[], 3);
}

#[test]
fn mackey_norm_c2() {
    check_grid(AffineType::C(2), &[], 2);
    check_grid(AffineType::C(2), &[1], 4);
}

#[test]
fn mackey_norm_g2() {
    check_grid(AffineType::G2, &[], 2);
}

#[test]
fn matrix_and_formula_characters_agree() {
    let data = TorusData::new(&datum(AffineType::A(2)), &nodes(&[])).unwrap();
    let d = pt(&data.datum, &[(1, 3), (1, 3), (1, 3)]);
    let m = build_irreducible(&data, &d, &[]).unwrap();
    assert_eq!(m.dim(), 6);
    for w in 0..data.group_order() {
        for l in [vec![0, 0], vec![1, 0], vec![0, 1], vec![2, -1]] {
            let g = SemidirectElement { lattice: l, finite: w };
            assert_eq!(m.character(&data, &g), character(&m.rep, &data, &g).unwrap());
        }
    }
}

fn a2_module() -> (TorusData, InducedModule) {
    let data = TorusData::new(&datum(AffineType::A(2)), &nodes(&[])).unwrap();
    let d = pt(&data.datum, &[(1, 2), (1, 2), (0, 1)]);
    let rho = trivial_rho(&data, &d).unwrap();
    let m = build_irreducible(&data, &d, &rho).unwrap();
    (data, m)
}

fn element() -> impl Strategy<Value = (Vec<i64>, usize)> {
    (proptest::collection::vec(-3i64..=3, 2), 0usize..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn image_is_multiplicative(a in element(), b in element()) {
        let (data, m) = a2_module();
        let g = SemidirectElement { lattice: a.0, finite: a.1 };
        let h = SemidirectElement { lattice: b.0, finite: b.1 };
        let gh = g.multiply(&h, &data);
        let lhs = m.rep.image(&data, &gh).unwrap();
        let rhs = parahoric::linalg::mat_mul(&m.rep.image(&data, &g).unwrap(), &m.rep.image(&data, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
        let e = g.multiply(&g.inverse(&data), &data);
        prop_assert_eq!(e, SemidirectElement::identity(&data));
    }

    #[test]
    fn character_is_a_class_function(a in element(), b in element()) {
        let (data, m) = a2_module();
        let g = SemidirectElement { lattice: a.0, finite: a.1 };
        let h = SemidirectElement { lattice: b.0, finite: b.1 };
        let conj = g.multiply(&h, &data).multiply(&g.inverse(&data), &data);
        prop_assert_eq!(m.character(&data, &conj), m.character(&data, &h));
    }
}

fn ext(d: &Arc<CartanDatum>, word: &[usize], omega: bool) -> ExtendedWeylElement {
    let xi = if omega { DiagramAutomorphism::new(vec![1, 0]).unwrap() } else { DiagramAutomorphism::identity(2) };
    ExtendedWeylElement::new(xi, WeylElement::from_word(d, word))
}

#[test]
fn builtin_a1_costandard() {
    let c = builtin_costandard("({1},C)").unwrap();
    assert_eq!(c.carrier.dim, 2);
    assert_eq!(c.layers.len(), 2);
    // sign on top as a submodule, unit as the quotient
    assert_eq!(c.layers[1].constituents, vec![("1".to_string(), "triv".to_string(), 1)]);
    assert_eq!(c.layers[0].constituents, vec![("reg".to_string(), "triv".to_string(), 1)]);
    let d = c.datum.clone();
    assert_eq!(almost_char_cvr(&c, &ext(&d, &[1], false)).unwrap(), Cyclo::zero());
    assert_eq!(almost_char_cvr(&c, &ext(&d, &[], false)).unwrap(), Cyclo::int(2));
    let a = almost_char_cvr(&c, &ext(&d, &[1, 0, 1], false)).unwrap();
    assert_eq!(a, almost_char_cvr(&c, &ext(&d, &[0], false)).unwrap());
    assert_eq!(almost_char_cvr(&c, &ext(&d, &[], true)).unwrap(), Cyclo::zero());
    assert!(matches!(almost_char_cvr(&c, &ext(&d, &[0, 1], false)), Err(CoStandardError::NotFiniteOrder)));
    assert_eq!(trace(&c.carrier.gens[1]), Cyclo::zero());
}

#[test]
fn unit_layer_only_table() {
    let c = builtin_costandard("(reg,C)").unwrap();
    assert_eq!(c.layers.len(), 1);
    assert_eq!(c.filtration.len(), 1);
    assert!(matches!(builtin_costandard("(reg,sgn)"), Err(CoStandardError::UnsupportedZeta(_))));
}

const A1_HEAD: &str = "group A1\nlabel 0 1,0 1 triv\ndim 2\n";

#[test]
fn swapped_filtration_rejected() {
    // unit rep as the submodule, sign rep as the quotient
    let t = format!("{A1_HEAD}gen s0 [1 0; 0 -1]\ngen s1 [1 1; 0 -1]\ngen o(1,0) [1 1/2; 0 -1]\nlayer [1 0; 0 1]\nlayer [1 0]\n");
    match load_costandard(&t) {
        Err(CoStandardError::Rejected { layer, .. }) => assert_eq!(layer, 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn non_invariant_layer_rejected() {
    let t = format!("{A1_HEAD}gen s0 [-1 0; 0 1]\ngen s1 [-1 1; 0 1]\nlayer [1 0; 0 1]\nlayer [0 1]\n");
    match load_costandard(&t) {
        Err(CoStandardError::Rejected { layer, reason }) => {
            assert_eq!(layer, 1);
            assert!(reason.contains("invariant"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn omega_matrix_is_forced() {
    for (c, ok) in [("1/2", true), ("0", false), ("1", false), ("-1/2", false)] {
        let t = format!("{A1_HEAD}gen s0 [-1 0; 0 1]\ngen s1 [-1 1; 0 1]\ngen o(1,0) [-1 {c}; 0 1]\nlayer [1 0; 0 1]\nlayer [1 0]\n");
        assert_eq!(load_costandard(&t).is_ok(), ok, "{c}");
    }
    let t = format!("{A1_HEAD}gen s0 [-1 0; 0 1]\ngen s1 [-1 1; 0 1]\nlayer [1 0; 0 1]\nlayer [1 0]\n");
    let c = load_costandard(&t).unwrap();
    assert!(c.omega.is_empty());
    assert!(almost_char_cvr(&c, &ext(&c.datum.clone(), &[], true)).is_err());
}

#[test]
fn omega_induction_trivial_and_order_two() {
    let c2 = datum(AffineType::C(2));
    let act = omega_action(&c2, &nodes(&[0]), &DiagramAutomorphism::identity(3)).unwrap();
    assert_eq!(act.elements.len(), 1);
    let tag = GroupTag::Affine { datum: "C2".into() };
    let h = FiniteDimRep::new(tag.clone(), 1, vec![vec![vec![Cyclo::int(-1)]]; act.act[0].len()]).unwrap();
    let ind = omega_induce(&h, &act).unwrap();
    assert_eq!(ind.dim, 1);
    assert_eq!(ind.gens[..h.gens.len()], h.gens[..]);

    let a1 = datum(AffineType::A(1));
    let act = omega_action(&a1, &nodes(&[]), &DiagramAutomorphism::identity(2)).unwrap();
    assert_eq!(act.elements.len(), 2);
    assert_eq!(act.kernel(), vec![0]);
    let h = FiniteDimRep::new(tag, 1, vec![vec![vec![Cyclo::one()]]; 2]).unwrap();
    let ind = omega_induce(&h, &act).unwrap();
    assert_eq!(ind.dim, 2);
    let xi = act.elements.iter().position(|x| !x.is_identity()).unwrap();
    assert_eq!(trace(&ind.gens[2 + xi]), Cyclo::zero());
    // the first block restricts back to the original module
    for g in 0..2 {
        assert_eq!(ind.gens[g][0][0], Cyclo::one());
    }
}

#[test]
fn kernel_idempotents_split_d6() {
    let d6 = datum(AffineType::D(6));
    let flip = DiagramAutomorphism::new((0..7).rev().collect()).unwrap();
    let act = omega_action(&d6, &nodes(&[3]), &flip).unwrap();
    assert_eq!(act.elements.len(), 4);
    assert_eq!(act.kernel().len(), 2);
    let ng = act.act[0].len();
    for sign in [1, -1] {
        let h = FiniteDimRep::new(GroupTag::Affine { datum: "D6".into() }, 1, vec![vec![vec![Cyclo::int(sign)]]; ng]).unwrap();
        let ind = omega_induce(&h, &act).unwrap();
        let rep = kernel_idempotents(&ind, ng, &act).unwrap();
        assert_eq!(rep.ranks, vec![2, 2]);
    }
    let c2 = datum(AffineType::C(2));
    let act = omega_action(&c2, &nodes(&[0]), &DiagramAutomorphism::identity(3)).unwrap();
    let h = FiniteDimRep::new(GroupTag::Affine { datum: "C2".into() }, 1, vec![vec![vec![Cyclo::one()]]; 2]).unwrap();
    let ind = omega_induce(&h, &act).unwrap();
    assert!(kernel_idempotents(&ind, 2, &act).is_err());
}
