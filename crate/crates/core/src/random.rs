//! Random modules: sections of sums of principal indecomposables cut out by
//! randomly generated submodules.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::module::AModule;
use crate::rng::SeedStream;
use crate::subspace::Subspace;

/// A random nonzero module of dimension at most `max_dim`.
///
/// Takes a direct sum of up to four principal indecomposables, the
/// submodule generated by up to three random vectors, and then the quotient
/// by the submodule generated by a random vector deep in its radical series,
/// retrying until the dimension fits.
pub fn random_module(alg: &Arc<Algebra>, max_dim: usize, rng: &SeedStream) -> Result<AModule> {
    let f = alg.field();
    for attempt in 0..256u64 {
        let mut r = rng.fork(attempt);
        let count = 1 + r.below(4);
        let pims: Vec<AModule> = (0..count).map(|_| AModule::pim(alg, r.below(alg.num_simples()))).collect();
        let refs: Vec<&AModule> = pims.iter().collect();
        let big = AModule::direct_sum(&refs)?;
        let gens: Vec<Vec<u32>> = (0..1 + r.below(3)).map(|_| r.vector(f, big.dim())).collect();
        let top = big.generate(&gens);
        if top.is_zero() {
            continue;
        }
        let mut deep = top.clone();
        for _ in 0..r.below(4) {
            deep = big.radical_of(&deep);
        }
        let bottom = if r.below(3) == 0 || deep.is_zero() {
            Subspace::zero(f, big.dim())
        } else {
            big.generate(&[deep.basis().vec_mul(&r.vector(f, deep.dim()))])
        };
        let d = top.dim() - bottom.dim();
        if d == 0 || d > max_dim {
            continue;
        }
        return Ok(big.local_section(&top, &bottom)?.0);
    }
    Ok(AModule::simple(alg, 0))
}
