//! Simples, principal indecomposables and the self-injective/symmetric
//! certificates, computed once when an algebra is built.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraKind, PimData, SimpleData};
use crate::config::Config;
use crate::decompose::{decompose, iso_test, EndInfo};
use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::module::AModule;
use crate::rng::SeedStream;
use crate::subspace::Coordinates;

/// Algebra construction uses a fixed stream so cached data never depends on the run seed.
const BUILD_SEED: u64 = 0x5eed;

pub(crate) fn complete(bare: Algebra, cfg: &Config) -> Result<Arc<Algebra>> {
    let arc = Arc::new(bare);
    let rng = SeedStream::new(BUILD_SEED);
    let reg = AModule::regular(&arc);
    let summands = decompose(&reg, cfg, &rng)?;

    // Group summands into isomorphism classes, in sorted order.
    let mut class_of = Vec::with_capacity(summands.len());
    let mut reps: Vec<usize> = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if iso_test(&s.module, &summands[r].module, cfg, &rng)?.is_some() {
                found = Some(c);
                break;
            }
        }
        class_of.push(found.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }

    // 1 = Σ e_i with e_i in the i-th summand.
    let f = arc.field();
    let stacked: Vec<Vec<u32>> = summands.iter().flat_map(|s| s.space.vectors()).collect();
    let coords = Coordinates::new(&MatrixFp::from_vectors(f, arc.dim(), &stacked));
    let c = coords.coords(arc.one()).expect("summands span A");
    let mut offset = 0;
    let mut idempotents = Vec::new();
    for s in &summands {
        let k = s.space.dim();
        idempotents.push(s.space.basis().vec_mul(&c[offset..offset + k]));
        offset += k;
    }

    let mut simples = Vec::new();
    let mut pims = Vec::new();
    for (cls, &r) in reps.iter().enumerate() {
        let p = &summands[r].module;
        let head = p.quotient(&p.radical())?;
        if EndInfo::of(&head)?.basis.len() != 1 {
            return Err(Error::NotSplit(format!("head of principal indecomposable {cls} has End of dim > 1")));
        }
        simples.push(SimpleData { dim: head.dim(), action: head.actions().to_vec() });
        pims.push(PimData {
            simple: cls,
            ideal: summands[r].space.clone(),
            idempotent: idempotents[r].clone(),
            multiplicity: class_of.iter().filter(|&&x| x == cls).count(),
        });
    }

    let mut full = (*arc).clone();
    full.simples = simples;
    full.pims = pims;
    let full = Arc::new(full);
    let kind = classify(&full, cfg)?;
    let mut done = (*full).clone();
    done.kind = kind;
    Ok(Arc::new(done))
}

/// Certifies the self-injective and symmetric hypotheses.
pub fn classify(alg: &Arc<Algebra>, cfg: &Config) -> Result<AlgebraKind> {
    let is_group_algebra = alg.group_order().is_some();
    let is_symmetric = is_group_algebra || has_symmetric_form(alg, cfg);
    let is_selfinjective = is_symmetric || socles_pair_with_heads(alg, cfg)?;
    Ok(AlgebraKind { is_selfinjective, is_symmetric, is_group_algebra })
}

/// Every pim has a simple socle, and `P ↦ Soc(P)` is a bijection onto the simples.
fn socles_pair_with_heads(alg: &Arc<Algebra>, cfg: &Config) -> Result<bool> {
    let rng = SeedStream::new(BUILD_SEED);
    let mut hit = vec![false; alg.num_simples()];
    for id in 0..alg.num_simples() {
        let p = AModule::pim(alg, id);
        let soc = p.submodule(&p.socle())?;
        let mut matched = None;
        for s in 0..alg.num_simples() {
            if iso_test(&soc, &AModule::simple(alg, s), cfg, &rng)?.is_some() {
                matched = Some(s);
                break;
            }
        }
        match matched {
            Some(s) if !hit[s] => hit[s] = true,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Searches the symmetric associative forms `(x, y) ↦ λ(xy)` for a nondegenerate one.
fn has_symmetric_form(alg: &Algebra, cfg: &Config) -> bool {
    let f = alg.field();
    let n = alg.dim();
    let unit = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let products: Vec<Vec<Vec<u32>>> =
        (0..n).map(|i| (0..n).map(|j| alg.product(&unit(i), &unit(j))).collect()).collect();
    // λ must vanish on every commutator b_i b_j − b_j b_i.
    let mut comm = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            comm.push(products[i][j].iter().zip(&products[j][i]).map(|(&a, &b)| f.sub(a, b)).collect());
        }
    }
    let lambdas = MatrixFp::from_vectors(f, n, &comm).kernel().vectors();
    if lambdas.is_empty() {
        return false;
    }
    let gram = |lambda: &[u32]| {
        let mut g = MatrixFp::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let v = products[i][j].iter().zip(lambda).fold(0, |acc, (&x, &l)| f.add(acc, f.mul(x, l)));
                g.set(i, j, v);
            }
        }
        g
    };
    let combo = |c: &[u32]| {
        let mut l = vec![0; n];
        for (v, &x) in lambdas.iter().zip(c) {
            for (a, &b) in l.iter_mut().zip(v) {
                *a = f.add(*a, f.mul(x, b));
            }
        }
        l
    };
    let k = lambdas.len() as u32;
    if (f.p() as u64).checked_pow(k).is_some_and(|t| t <= cfg.iso_exhaustive_limit) {
        let mut c = vec![0u32; lambdas.len()];
        loop {
            let mut i = 0;
            while i < c.len() {
                c[i] += 1;
                if c[i] == f.p() {
                    c[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == c.len() {
                return false;
            }
            if gram(&combo(&c)).is_invertible() {
                return true;
            }
        }
    }
    let mut rng = SeedStream::new(BUILD_SEED).fork(0x5f);
    (0..cfg.iso_samples).any(|_| {
        let c = rng.vector(f, lambdas.len());
        gram(&combo(&c)).is_invertible()
    })
}
