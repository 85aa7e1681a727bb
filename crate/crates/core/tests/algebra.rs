use std::sync::Arc;

use modiag::corpus::{self, truncated_polynomial};
use modiag::{Algebra, AlgebraSpec, AModule, Config, Error, PrimeField, Subspace};

fn alg(name: &str) -> Arc<Algebra> {
    corpus::algebra(name).unwrap()
}

/// Every subspace of a small algebra, by spanning all generator tuples.
fn all_subspaces(a: &Algebra) -> Vec<Subspace> {
    let f = a.field();
    let p = f.p() as usize;
    let n = a.dim();
    let elems: Vec<Vec<u32>> = (0..p.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = (x % p) as u32;
                    x /= p;
                    d
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Subspace> = vec![Subspace::zero(f, n)];
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for e in &elems {
                if s.contains(e) {
                    continue;
                }
                let t = s.sum(&Subspace::from_vectors(f, n, std::slice::from_ref(e))).unwrap();
                if !out.contains(&t) && !next.contains(&t) {
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn product_space(a: &Algebra, x: &Subspace, y: &Subspace) -> Subspace {
    let mut v = Vec::new();
    for u in x.vectors() {
        for w in y.vectors() {
            v.push(a.product(&u, &w));
        }
    }
    Subspace::from_vectors(a.field(), a.dim(), &v)
}

/// The largest nilpotent two-sided ideal, found by exhaustive search.
fn brute_radical(a: &Algebra) -> Subspace {
    let full = Subspace::full(a.field(), a.dim());
    let mut best = Subspace::zero(a.field(), a.dim());
    for s in all_subspaces(a) {
        let ideal = product_space(a, &full, &s).is_subset(&s).unwrap() && product_space(a, &s, &full).is_subset(&s).unwrap();
        if !ideal {
            continue;
        }
        let mut pw = s.clone();
        for _ in 0..a.dim() {
            pw = product_space(a, &pw, &s);
        }
        if pw.is_zero() && s.dim() > best.dim() {
            best = s;
        }
    }
    best
}

#[test]
fn group_algebra_sizes() {
    assert_eq!(alg("f2_c2").dim(), 2);
    assert_eq!(alg("f2_c2").one(), &[1, 0]);
    assert_eq!(alg("f2_v4").dim(), 4);
}

#[test]
fn non_associative_structure_is_rejected() {
    // (b1·b1)·b1 = b2·b1 = b1 but b1·(b1·b1) = b1·b2 = 0.
    let e = |i: usize| (0..3).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
    let z = vec![0i64; 3];
    let spec = AlgebraSpec::Structure {
        field: 2,
        dim: 3,
        mult: vec![vec![e(0), e(1), e(2)], vec![e(1), e(2), z.clone()], vec![e(2), e(1), z]],
        one: vec![1, 0, 0],
        anti: None,
    };
    let err = Algebra::build(&spec, &Config::default()).unwrap_err();
    assert!(matches!(err, Error::NotAssociative(..)), "{err:?}");
}

#[test]
fn radical_examples() {
    let c2 = alg("f2_c2");
    let f2 = PrimeField::new(2).unwrap();
    assert_eq!(*c2.radical(), Subspace::from_vectors(f2, 2, &[vec![1, 1]]));
    assert!(alg("f3_c2").radical().is_zero());

    let v4 = alg("f2_v4");
    let dims: Vec<usize> = v4.radical_chain().iter().map(|s| s.dim()).collect();
    assert_eq!(dims, vec![4, 3, 1, 0]);
    assert_eq!(*v4.radical(), brute_radical(&v4));
}

#[test]
fn radical_matches_brute_force_on_small_algebras() {
    for name in ["f2_c2", "f3_c2", "f2_c4", "f2_v4", "f3_c3", "f2_x2", "f2_x3", "f3_x3"] {
        let a = alg(name);
        assert_eq!(*a.radical(), brute_radical(&a), "{name}");
    }
}

#[test]
fn cyclic_radical_chain_drops_by_one() {
    for (name, p) in [("f2_c2", 2), ("f3_c3", 3), ("f2_c4", 4)] {
        let dims: Vec<usize> = alg(name).radical_chain().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, (0..=p).rev().collect::<Vec<_>>(), "{name}");
    }
}

#[test]
fn simples_and_pims() {
    for (name, simples, pim_dim) in [("f2_c2", 1, 2), ("f2_v4", 1, 4)] {
        let a = alg(name);
        assert_eq!(a.num_simples(), simples);
        assert_eq!(a.simple_data(0).dim, 1);
        assert_eq!(AModule::pim(&a, 0).dim(), pim_dim, "{name}");
    }
    let a = alg("f3_c2");
    assert_eq!(a.num_simples(), 2);
    for s in 0..2 {
        assert_eq!(AModule::pim(&a, s).dim(), 1);
    }
}

#[test]
fn hypotheses() {
    for (name, _) in corpus::algebra_specs() {
        let k = alg(name).kind();
        if k.is_group_algebra {
            assert!(k.is_symmetric, "{name}");
        }
        assert!(!k.is_symmetric || k.is_selfinjective, "{name}");
    }
    assert!(alg("f2_c2").kind().is_selfinjective);
    let x2 = Algebra::build(&truncated_polynomial(2, 2), &Config::default()).unwrap();
    assert!(x2.kind().is_symmetric);
}

#[test]
fn structural_invariants() {
    for (name, _) in corpus::algebra_specs() {
        let a = alg(name);
        // A/J is semisimple: the radical of J-annihilated quotient is zero.
        let reg = AModule::regular(&a);
        let top = reg.quotient(a.radical()).unwrap();
        assert!(top.radical().is_zero(), "{name}");
        // Σ dim(P_i)·[A/J : S_i] = dim A, and [A/J : S_i] = dim S_i for split algebras.
        let total: usize = (0..a.num_simples()).map(|s| AModule::pim(&a, s).dim() * a.simple_data(s).dim).sum();
        assert_eq!(total, a.dim(), "{name}");
        let chain = a.radical_chain();
        assert!(chain.windows(2).all(|w| w[1].dim() < w[0].dim()), "{name}");
        assert!(chain.last().unwrap().is_zero());
        // Head and socle of every principal indecomposable agree for symmetric algebras.
        if a.kind().is_symmetric {
            for s in 0..a.num_simples() {
                let p = AModule::pim(&a, s);
                let soc = p.submodule(&p.socle()).unwrap();
                assert_eq!(soc.dim(), a.simple_data(s).dim, "{name} pim{s}");
                let head = AModule::simple(&a, s);
                assert!(modiag::iso_test(&soc, &head, &Config::default(), &modiag::SeedStream::new(0)).unwrap().is_some());
            }
        }
    }
}

#[test]
fn non_split_field_is_reported() {
    let spec = AlgebraSpec::Group {
        field: 2,
        generators: modiag::GroupGenerators::Permutations(vec![vec![1, 2, 0]]),
        matrix_field: None,
    };
    assert!(matches!(Algebra::build(&spec, &Config::default()), Err(Error::NotSplit(_))));
}
