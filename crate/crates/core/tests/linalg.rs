use num_bigint::BigInt;
use num_traits::Zero;
use parahoric::linalg::*;

fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn hnf_of_redundant_generators() {
    let h = hnf(&[bi(&[4, 6]), bi(&[6, 9]), bi(&[2, 3])]);
    assert_eq!(h, vec![bi(&[2, 3])]);
    let h = hnf(&[bi(&[2, 0]), bi(&[0, 3]), bi(&[1, 1])]);
    assert_eq!(h, vec![bi(&[1, 0]), bi(&[0, 1])]);
    let h = hnf(&[bi(&[2, 2]), bi(&[0, 3])]);
    assert_eq!(h, vec![bi(&[2, 2]), bi(&[0, 3])]);
}

#[test]
fn inverse_and_kernel() {
    let a = to_q(&[vec![2, 1], vec![1, 1]]);
    let inv = inverse(&a).unwrap();
    assert_eq!(mat_mul(&a, &inv), identity(2, &q(0)));
    let s = to_q(&[vec![1, 2, 3], vec![2, 4, 6]]);
    let k = kernel(&s, 3, &q(0));
    assert_eq!(k.len(), 2);
    for v in k {
        assert!(mat_vec(&s, &v).iter().all(|x| x.is_zero()));
    }
}
