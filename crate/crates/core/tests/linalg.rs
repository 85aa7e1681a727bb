use modiag::{MatrixFp, PrimeField, Subspace};
use proptest::prelude::*;

fn fp(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn mat(p: u32, rows: &[&[i64]]) -> MatrixFp {
    let cols = rows[0].len();
    MatrixFp::from_rows(fp(p), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols)
}

fn span(p: u32, n: usize, vecs: &[&[u32]]) -> Subspace {
    Subspace::from_vectors(fp(p), n, &vecs.iter().map(|v| v.to_vec()).collect::<Vec<_>>())
}

#[test]
fn rref_examples() {
    let (r, _, rank) = mat(2, &[&[1, 1], &[1, 1]]).rref();
    assert_eq!((r.to_nested(), rank), (vec![vec![1, 1]], 1));

    let id = MatrixFp::identity(fp(3), 3);
    let (r, _, rank) = id.rref();
    assert_eq!((r, rank), (id, 3));

    // 2·(1,2) = (2,4): the rows are proportional, and (1,2) is already normalized.
    let (r, pivots, rank) = mat(5, &[&[2, 4], &[1, 2]]).rref();
    assert_eq!((r.to_nested(), pivots, rank), (vec![vec![1, 2]], vec![0], 1));
}

#[test]
fn kernel_examples() {
    assert_eq!(MatrixFp::zeros(fp(2), 2, 2).kernel(), Subspace::full(fp(2), 2));
    for p in [2, 3, 5, 7] {
        assert!(MatrixFp::identity(fp(p), 4).kernel().is_zero());
    }
    // Brute force over F_2^2.
    let m = mat(2, &[&[1, 1]]);
    let zeros: Vec<Vec<u32>> = (0..4u32)
        .map(|x| vec![x & 1, x >> 1])
        .filter(|v| m.mul_vec(v).iter().all(|&c| c == 0))
        .collect();
    assert_eq!(m.kernel(), Subspace::from_vectors(fp(2), 2, &zeros));
    assert_eq!(m.kernel(), span(2, 2, &[&[1, 1]]));
}

#[test]
fn subspace_examples() {
    let a = span(2, 2, &[&[1, 0]]);
    let b = span(2, 2, &[&[0, 1]]);
    assert!(a.sum(&b).unwrap().is_full());
    assert!(a.intersection(&b).unwrap().is_zero());
    assert_eq!(a.sum(&a).unwrap(), a);
    assert_eq!(a.intersection(&a).unwrap(), a);

    let a = span(3, 3, &[&[1, 1, 0]]);
    let b = span(3, 3, &[&[1, 0, 0], &[0, 1, 0]]);
    // The 1-dim complements of a in b are the lines other than a; scanning
    // b's RREF rows keeps e1 first.
    assert_eq!(a.complement_in(&b).unwrap(), span(3, 3, &[&[1, 0, 0]]));
}

fn field_and_matrix() -> impl Strategy<Value = MatrixFp> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..7, 1usize..7).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p as i64, r * c).prop_map(move |data| {
            let rows: Vec<Vec<i64>> = data.chunks(c).map(|x| x.to_vec()).collect();
            MatrixFp::from_rows(fp(p), &rows, c)
        })
    })
}

fn subspace_pair() -> impl Strategy<Value = (Subspace, Subspace)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..6).prop_flat_map(|(p, n)| {
        let vecs = prop::collection::vec(prop::collection::vec(0..p, n), 0..n + 1);
        (vecs.clone(), vecs).prop_map(move |(a, b)| {
            (Subspace::from_vectors(fp(p), n, &a), Subspace::from_vectors(fp(p), n, &b))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rref_is_idempotent(m in field_and_matrix()) {
        let (r, pivots, rank) = m.rref();
        let (r2, pivots2, rank2) = r.rref();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(pivots, pivots2);
        prop_assert_eq!(rank, rank2);
    }

    #[test]
    fn rank_nullity(m in field_and_matrix()) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for v in m.kernel().vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn modular_law((a, b) in subspace_pair()) {
        let s = a.sum(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
        prop_assert!(i.is_subset(&a).unwrap() && i.is_subset(&b).unwrap());
    }

    #[test]
    fn complement_is_direct((a, b) in subspace_pair()) {
        let outer = a.sum(&b).unwrap();
        let c = a.complement_in(&outer).unwrap();
        prop_assert_eq!(c.sum(&a).unwrap(), outer);
        prop_assert!(c.intersection(&a).unwrap().is_zero());
    }

    #[test]
    fn deterministic(m in field_and_matrix()) {
        prop_assert_eq!(m.rref(), m.clone().rref());
        prop_assert_eq!(m.kernel(), m.clone().kernel());
    }
}
