#![allow(dead_code)]

use std::sync::Arc;

use modiag::corpus::{self, CorpusModule};
use modiag::decompose::composition_factors;
use modiag::{Algebra, AModule, Config, SeedStream};

pub fn algebras() -> Vec<(String, Arc<Algebra>)> {
    corpus::algebra_specs().into_iter().map(|(n, _)| (n.to_string(), corpus::algebra(n).unwrap())).collect()
}

pub fn corpus_upto(max_dim: usize) -> Vec<CorpusModule> {
    corpus::corpus(max_dim).unwrap()
}

/// The 200 seeded random modules, cycling through the corpus algebras.
pub fn random_modules() -> Vec<(String, AModule)> {
    let algs = algebras();
    let base = SeedStream::new(7);
    (0..200u64)
        .map(|k| {
            let (name, alg) = &algs[k as usize % algs.len()];
            (format!("{name}#{k}"), modiag::random::random_module(alg, 12, &base.fork(k)).unwrap())
        })
        .collect()
}

/// `dual_class[i]`: the simple isomorphic to the dual of simple `i`.
pub fn dual_classes(alg: &Arc<Algebra>) -> Vec<usize> {
    (0..alg.num_simples())
        .map(|i| {
            let cf = composition_factors(&AModule::simple(alg, i).dual().unwrap());
            cf.iter().position(|&c| c == 1).unwrap()
        })
        .collect()
}

pub fn cfg() -> Config {
    Config::default()
}
