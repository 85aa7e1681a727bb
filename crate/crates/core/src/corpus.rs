//! The bundled test algebras and modules.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraSpec, GroupGenerators};
use crate::config::Config;
use crate::error::Result;
use crate::module::AModule;
use crate::projectives::heller;
use crate::rng::SeedStream;

fn group(p: u32, perms: &[&[usize]]) -> AlgebraSpec {
    AlgebraSpec::Group {
        field: p,
        generators: GroupGenerators::Permutations(perms.iter().map(|g| g.to_vec()).collect()),
        matrix_field: None,
    }
}

/// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`; commutative, so the identity is its anti-automorphism.
pub fn truncated_polynomial(p: u32, n: usize) -> AlgebraSpec {
    let mult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = vec![0i64; n];
                    if i + j < n {
                        v[i + j] = 1;
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut one = vec![0i64; n];
    one[0] = 1;
    let anti = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    AlgebraSpec::Structure { field: p, dim: n, mult, one, anti: Some(anti) }
}

/// Names and presentations of the corpus algebras.
pub fn algebra_specs() -> Vec<(&'static str, AlgebraSpec)> {
    vec![
        ("f2_c2", group(2, &[&[1, 0]])),
        ("f3_c2", group(3, &[&[1, 0]])),
        ("f2_c4", group(2, &[&[1, 2, 3, 0]])),
        ("f2_v4", group(2, &[&[1, 0, 3, 2], &[2, 3, 0, 1]])),
        ("f3_c3", group(3, &[&[1, 2, 0]])),
        ("f2_d8", group(2, &[&[1, 2, 3, 0], &[0, 3, 2, 1]])),
        ("f3_s3", group(3, &[&[1, 0, 2], &[1, 2, 0]])),
        ("f2_x2", truncated_polynomial(2, 2)),
        ("f2_x3", truncated_polynomial(2, 3)),
        ("f3_x3", truncated_polynomial(3, 3)),
    ]
}

pub fn algebra(name: &str) -> Result<Arc<Algebra>> {
    let spec = algebra_specs()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| crate::error::Error::Invalid(format!("unknown corpus algebra {name}")))?;
    Algebra::build_named(&spec, &Config::default(), name)
}

#[derive(Debug, Clone)]
pub struct CorpusModule {
    pub algebra: String,
    pub name: String,
    pub module: AModule,
}

/// Standard modules over one algebra, capped at dimension `max_dim`.
pub fn modules_for(alg: &Arc<Algebra>, max_dim: usize) -> Result<Vec<(String, AModule)>> {
    let cfg = Config::default();
    let rng = SeedStream::new(0);
    let mut out: Vec<(String, AModule)> = Vec::new();
    let reg = AModule::regular(alg);
    out.push(("regular".into(), reg.clone()));
    for s in 0..alg.num_simples() {
        out.push((format!("simple{s}"), AModule::simple(alg, s)));
    }
    if alg.num_simples() > 1 {
        for s in 0..alg.num_simples() {
            out.push((format!("pim{s}"), AModule::pim(alg, s)));
        }
    }
    let u = AModule::pim(alg, 0);
    let k = AModule::simple(alg, 0);
    out.push(("pim0+pim0".into(), AModule::direct_sum(&[&u, &u])?));
    out.push(("simple0+pim0".into(), AModule::direct_sum(&[&k, &u])?));
    let rad = reg.radical();
    let rad2 = reg.radical_of(&rad);
    if !rad2.is_zero() && rad2 != rad {
        out.push(("regular/rad2".into(), reg.quotient(&rad2)?));
        out.push(("regular/rad2+simple0".into(), {
            let top = reg.quotient(&rad2)?;
            AModule::direct_sum(&[&top, &k])?
        }));
    }
    let soc = reg.socle();
    if !soc.is_full() && !soc.is_zero() {
        out.push(("regular/soc".into(), reg.quotient(&soc)?));
    }
    if !alg.radical().is_zero() {
        for n in [1, 2] {
            out.push((format!("omega{n}(simple0)"), heller(&k, n, &cfg, &rng)?));
        }
        if alg.kind().is_selfinjective && alg.has_duality() {
            out.push(("omega-1(simple0)".into(), heller(&k, -1, &cfg, &rng)?));
            let o = heller(&k, 1, &cfg, &rng)?;
            out.push(("omega1(simple0)+simple0".into(), AModule::direct_sum(&[&o, &k])?));
        }
    }
    out.retain(|(_, m)| m.dim() <= max_dim && m.dim() > 0);
    // Drop exact duplicates (same action on the same basis).
    let mut seen: Vec<AModule> = Vec::new();
    out.retain(|(_, m)| {
        if seen.iter().any(|s| s == m) {
            false
        } else {
            seen.push(m.clone());
            true
        }
    });
    Ok(out)
}

/// The whole corpus with modules up to `max_dim`.
pub fn corpus(max_dim: usize) -> Result<Vec<CorpusModule>> {
    let mut out = Vec::new();
    for (name, _) in algebra_specs() {
        let alg = algebra(name)?;
        for (mname, module) in modules_for(&alg, max_dim)? {
            out.push(CorpusModule { algebra: name.to_string(), name: mname, module });
        }
    }
    Ok(out)
}
