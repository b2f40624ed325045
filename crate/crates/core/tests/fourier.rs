use parahoric::cyclotomic::Cyclo;
use parahoric::fourier::*;
use parahoric::linalg::{mat_mul, qf, Q};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn c(n: i64, d: i64) -> Cyclo {
    Cyclo::from_q(qf(n, d))
}

fn is_identity(m: &[Vec<Cyclo>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { Cyclo::one() } else { Cyclo::zero() }))
}

#[test]
fn m_set_sizes() {
    for (name, n) in [("1", 1), ("Z2", 4), ("Z3", 9), ("Z2xZ2", 16), ("S3", 8)] {
        assert_eq!(m_set(&curated_group(name).unwrap()).len(), n, "{name}");
    }
}

#[test]
fn s3_character_table() {
    let g = curated_group("S3").unwrap();
    let t = g.characters().unwrap();
    let degrees: Vec<Cyclo> = (0..t.len()).map(|i| t.degree(i)).collect();
    assert_eq!(degrees, vec![Cyclo::int(1), Cyclo::int(1), Cyclo::int(2)]);
    assert_eq!(g.classes.iter().map(|c| c.len()).collect::<Vec<_>>(), vec![1, 3, 2]);
    let z3 = &g.centralizer_chars[2];
    assert_eq!(z3.len(), 3);
    let rot = g.classes[2][0];
    let mut vals: Vec<Cyclo> = (0..3).map(|i| z3.value(i, rot).clone()).collect();
    vals.sort_by_key(|x| x.to_string());
    assert!(vals.contains(&Cyclo::zeta(3, 1)) && vals.contains(&Cyclo::zeta(3, 2)));
}

#[test]
fn z2_matrix_matches_the_four_identities() {
    let g = curated_group("Z2").unwrap();
    let s = pairing_matrix(&g);
    let expected = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(s[i][j], c(expected[i][j], 2));
        }
    }
    let labels: Vec<String> = m_set(&g).iter().map(|p| p.label(&g)).collect();
    assert_eq!(labels, vec!["(1,1)", "(r,1)", "(1,chi1)", "(r,chi1)"]);
}

// independent computation with hand-written centralizer characters,
// rows and columns class-major: (1,triv) (1,sgn) (1,refl) ((12),1) ((12),e) ((123),1) ((123),w) ((123),w²)
const S3_ORACLE: [[(i64, i64); 8]; 8] = [
    [(1, 6), (1, 6), (1, 3), (1, 2), (1, 2), (1, 3), (1, 3), (1, 3)],
    [(1, 6), (1, 6), (1, 3), (-1, 2), (-1, 2), (1, 3), (1, 3), (1, 3)],
    [(1, 3), (1, 3), (2, 3), (0, 1), (0, 1), (-1, 3), (-1, 3), (-1, 3)],
    [(1, 2), (-1, 2), (0, 1), (1, 2), (-1, 2), (0, 1), (0, 1), (0, 1)],
    [(1, 2), (-1, 2), (0, 1), (-1, 2), (1, 2), (0, 1), (0, 1), (0, 1)],
    [(1, 3), (1, 3), (-1, 3), (0, 1), (0, 1), (2, 3), (-1, 3), (-1, 3)],
    [(1, 3), (1, 3), (-1, 3), (0, 1), (0, 1), (-1, 3), (2, 3), (-1, 3)],
    [(1, 3), (1, 3), (-1, 3), (0, 1), (0, 1), (-1, 3), (-1, 3), (2, 3)],
];

#[test]
fn s3_matrix_matches_oracle() {
    let g = curated_group("S3").unwrap();
    let mut idx = m_set(&g);
    idx.sort_by_key(|p| (p.x, p.sigma));
    for (i, a) in idx.iter().enumerate() {
        for (j, b) in idx.iter().enumerate() {
            let (n, d) = S3_ORACLE[i][j];
            assert_eq!(pairing(&g, a, b), c(n, d), "{} {}", a.label(&g), b.label(&g));
        }
    }
}

#[test]
fn symmetric_and_involutive() {
    for name in curated_groups() {
        let g = curated_group(name).unwrap();
        let s = pairing_matrix(&g);
        let n = s.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(s[i][j], s[j][i].conj(), "{name}");
            }
        }
        assert!(is_identity(&mat_mul(&s, &s)), "{name}");
    }
    let g = curated_group("1").unwrap();
    assert_eq!(pairing_matrix(&g), vec![vec![Cyclo::one()]]);
}

#[test]
fn unit_row_is_positive() {
    for name in ["Z2", "S3"] {
        let g = curated_group(name).unwrap();
        let s = pairing_matrix(&g);
        assert!(s[0].iter().all(|x| x.to_rational().unwrap() > Q::from_integer(0.into())));
    }
}

#[test]
fn delta_vector_gives_constant_row() {
    let g = curated_group("Z2").unwrap();
    let mut v = vec![Cyclo::zero(); 4];
    v[0] = Cyclo::one();
    assert_eq!(apply_transform(&g, &v).unwrap(), vec![c(1, 2); 4]);
    assert!(matches!(apply_transform(&g, &v[..3]), Err(FourierError::IndexMismatch { .. })));
}

#[test]
fn central_selection() {
    let g = curated_group("S3").unwrap();
    assert_eq!(m_set_one(&g, &[0]).len(), 8);
    let z2 = curated_group("Z2").unwrap();
    let one = m_set_one(&z2, &[1]);
    assert_eq!(one.len(), 2);
    assert!(one.iter().all(|p| p.sigma == 0));
}

#[test]
fn b2_labels() {
    let mut phi = BTreeMap::new();
    for (i, l) in B2_LABELS.iter().enumerate() {
        phi.insert(l.to_string(), Cyclo::int([3, 5, 7, 11, 3, 7][i]));
    }
    let tau = b2_transform(&phi).unwrap();
    assert_eq!(tau["(1,1)"], c(3 + 5 + 7 + 11, 2));
    assert_eq!(tau["(r,1)"], c(3 + 5 - 7 - 11, 2));
    assert_eq!(tau["(1,e)"], c(3 - 5 + 7 - 11, 2));
    assert_eq!(tau["(r,e)"], c(3 - 5 - 7 + 11, 2));
    assert_eq!(tau["(-1,1)"], tau["(1,1)"]);
    assert_eq!(tau["(-1,e)"], tau["(1,e)"]);
    phi.insert("(-1,1)".into(), Cyclo::int(0));
    assert!(matches!(b2_transform(&phi), Err(FourierError::Symmetry(_))));
}

#[test]
fn bad_tables_rejected() {
    let t = "group X\nelements e a\ne a\na a\n";
    assert!(matches!(FiniteGroupTable::parse(t), Err(FourierError::NotAGroup(_))));
    let t = "group X\nelements e a\ne a\na q\n";
    assert!(matches!(FiniteGroupTable::parse(t), Err(FourierError::Parse { line: 4, .. })));
}

proptest! {
    #[test]
    fn transform_is_an_involution(v in proptest::collection::vec((-20i64..20, 1i64..7), 8)) {
        let g = curated_group("S3").unwrap();
        let phi: Vec<Cyclo> = v.iter().map(|&(n, d)| c(n, d)).collect();
        let twice = apply_transform(&g, &apply_transform(&g, &phi).unwrap()).unwrap();
        prop_assert_eq!(twice, phi);
    }
}
