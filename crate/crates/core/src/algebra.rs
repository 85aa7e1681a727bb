//! Finite-dimensional algebras over `F_p`: structure constants, generator
//! words and the cached radical chain, simples and principal indecomposables.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::MatrixFp;
use crate::radical::radical_coefficients;
use crate::subspace::{Coordinates, Subspace};

/// How an algebra is presented.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraSpec {
    /// Group algebra `kG` of a group generated by permutations (0-based image
    /// lists) or by invertible matrices over `matrix_field` (defaults to `field`).
    Group {
        field: u32,
        generators: GroupGenerators,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix_field: Option<u32>,
    },
    /// Explicit structure constants: `mult[i][j]` holds the coordinates of `b_i b_j`.
    Structure {
        field: u32,
        dim: usize,
        mult: Vec<Vec<Vec<i64>>>,
        one: Vec<i64>,
        /// Optional anti-automorphism (column `j` = image of `b_j`), used for duals.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        anti: Option<Vec<Vec<i64>>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupGenerators {
    Permutations(Vec<Vec<usize>>),
    Matrices(Vec<Vec<Vec<i64>>>),
}

/// Hypotheses certified for an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraKind {
    pub is_selfinjective: bool,
    pub is_symmetric: bool,
    pub is_group_algebra: bool,
}

/// Action data of a simple module on the generators.
#[derive(Debug, Clone)]
pub struct SimpleData {
    pub dim: usize,
    pub action: Vec<MatrixFp>,
}

/// A principal indecomposable as a left ideal `A e` of the regular module.
#[derive(Debug, Clone)]
pub struct PimData {
    pub simple: usize,
    pub ideal: Subspace,
    pub idempotent: Vec<u32>,
    /// Number of copies in the regular module.
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct Algebra {
    pub(crate) id: u64,
    pub(crate) name: String,
    pub(crate) field: PrimeField,
    pub(crate) dim: usize,
    /// `left_mult[i]` is left multiplication by `b_i` on coordinate columns.
    pub(crate) left_mult: Vec<MatrixFp>,
    pub(crate) one: Vec<u32>,
    pub(crate) gens: Vec<usize>,
    /// Word `k` is `gens[word.0] * word(word.1)`; word 0 is the identity.
    pub(crate) words: Vec<(usize, usize)>,
    /// Row `i`: coordinates of `b_i` in the word basis.
    pub(crate) basis_in_words: MatrixFp,
    /// For each generator, column `k` = word coordinates of `g * w_k`.
    pub(crate) gen_on_words: Vec<MatrixFp>,
    pub(crate) anti: Option<MatrixFp>,
    pub(crate) group_order: Option<usize>,
    pub(crate) radical_chain: Vec<Subspace>,
    pub(crate) simples: Vec<SimpleData>,
    pub(crate) pims: Vec<PimData>,
    pub(crate) kind: AlgebraKind,
}

impl Algebra {
    pub fn build(spec: &AlgebraSpec, config: &Config) -> Result<Arc<Algebra>> {
        Self::build_named(spec, config, "")
    }

    pub fn build_named(spec: &AlgebraSpec, config: &Config, name: &str) -> Result<Arc<Algebra>> {
        let bare = match spec {
            AlgebraSpec::Group { field, generators, matrix_field } => {
                let f = PrimeField::new(*field)?;
                build_group(f, generators, matrix_field.unwrap_or(*field), config)?
            }
            AlgebraSpec::Structure { field, dim, mult, one, anti } => {
                let f = PrimeField::new(*field)?;
                build_structure(f, *dim, mult, one, anti.as_ref(), config)?
            }
        };
        let mut bare = bare;
        bare.name = name.to_string();
        crate::structure::complete(bare, config)
    }

    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }
    pub fn one(&self) -> &[u32] {
        &self.one
    }
    pub fn left_mult(&self, i: usize) -> &MatrixFp {
        &self.left_mult[i]
    }
    pub fn group_order(&self) -> Option<usize> {
        self.group_order
    }
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }
    pub fn has_duality(&self) -> bool {
        self.anti.is_some()
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_mult_by(&self, x: &[u32]) -> MatrixFp {
        crate::radical::combine(self.field, &self.left_mult, x)
    }

    pub fn product(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.left_mult_by(x).mul_vec(y)
    }

    /// `J(A)`.
    pub fn radical(&self) -> &Subspace {
        &self.radical_chain[1.min(self.radical_chain.len() - 1)]
    }

    /// `J^0 ⊇ J^1 ⊇ … ⊇ 0`, ending with the zero space.
    pub fn radical_chain(&self) -> &[Subspace] {
        &self.radical_chain
    }

    pub fn num_simples(&self) -> usize {
        self.simples.len()
    }
    pub fn simple_data(&self, id: usize) -> &SimpleData {
        &self.simples[id]
    }
    pub fn pims(&self) -> &[PimData] {
        &self.pims
    }

    /// Same underlying algebra (by structure hash).
    pub fn same(&self, other: &Algebra) -> bool {
        self.id == other.id
    }
}

fn hash_structure(field: PrimeField, left_mult: &[MatrixFp], gens: &[usize]) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    field.p().hash(&mut h);
    for m in left_mult {
        m.data().hash(&mut h);
    }
    gens.hash(&mut h);
    h.finish()
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Builds words, checks axioms and computes the radical chain.
fn assemble(
    field: PrimeField,
    left_mult: Vec<MatrixFp>,
    one: Vec<u32>,
    gens: Option<Vec<usize>>,
    anti: Option<MatrixFp>,
    group_order: Option<usize>,
) -> Result<Algebra> {
    let n = left_mult.len();
    // Identity: left multiplication by `one` is the identity map, and b_i * one = b_i.
    let lone = crate::radical::combine(field, &left_mult, &one);
    if lone != MatrixFp::identity(field, n) {
        return Err(Error::NoIdentity);
    }
    for (i, l) in left_mult.iter().enumerate() {
        if l.mul_vec(&one) != unit(n, i) {
            return Err(Error::NoIdentity);
        }
    }
    // Associativity: L_{b_i b_j} = L_i L_j, checked on every triple via columns.
    for i in 0..n {
        for j in 0..n {
            let prod = left_mult[i].mul(&left_mult[j]);
            let bij = left_mult[i].mul_vec(&unit(n, j));
            let expect = crate::radical::combine(field, &left_mult, &bij);
            if prod != expect {
                let k = (0..n).find(|&k| prod.column(k) != expect.column(k)).unwrap_or(0);
                return Err(Error::NotAssociative(i, j, k));
            }
        }
    }
    let gens = match gens {
        Some(g) => g,
        None => choose_generators(field, &left_mult, &one),
    };
    let (words, word_vectors) = closure_words(field, &left_mult, &one, &gens);
    if words.len() != n {
        return Err(Error::Invalid("generators do not generate the algebra".into()));
    }
    let word_rows = MatrixFp::from_vectors(field, n, &word_vectors);
    let coords = Coordinates::new(&word_rows);
    let basis_in_words = MatrixFp::from_vectors(
        field,
        n,
        &(0..n).map(|i| coords.coords(&unit(n, i)).expect("words span A")).collect::<Vec<_>>(),
    );
    let gen_on_words = gens
        .iter()
        .map(|&g| {
            let cols: Vec<Vec<u32>> = word_vectors
                .iter()
                .map(|w| coords.coords(&left_mult[g].mul_vec(w)).expect("closed"))
                .collect();
            MatrixFp::from_columns(field, n, &cols)
        })
        .collect();
    if let Some(a) = &anti {
        check_anti(field, &left_mult, a)?;
    }
    let radical = Subspace::from_vectors(field, n, &radical_coefficients(field, &left_mult));
    let mut chain = vec![Subspace::full(field, n), radical.clone()];
    while !chain.last().unwrap().is_zero() {
        let last = chain.last().unwrap();
        let mut vecs = Vec::new();
        for j in radical.vectors() {
            let lj = crate::radical::combine(field, &left_mult, &j);
            for v in last.vectors() {
                vecs.push(lj.mul_vec(&v));
            }
        }
        let next = Subspace::from_vectors(field, n, &vecs);
        if next == *last {
            return Err(Error::Invalid("radical is not nilpotent".into()));
        }
        chain.push(next);
    }
    if chain.len() >= 2 && chain[0] == chain[1] {
        chain.remove(1);
    }
    Ok(Algebra {
        id: hash_structure(field, &left_mult, &gens),
        name: String::new(),
        field,
        dim: n,
        left_mult,
        one,
        gens,
        words,
        basis_in_words,
        gen_on_words,
        anti,
        group_order,
        radical_chain: chain,
        simples: vec![],
        pims: vec![],
        kind: AlgebraKind { is_selfinjective: false, is_symmetric: false, is_group_algebra: group_order.is_some() },
    })
}

fn check_anti(field: PrimeField, left_mult: &[MatrixFp], anti: &MatrixFp) -> Result<()> {
    let n = left_mult.len();
    for i in 0..n {
        for j in 0..n {
            let bij = left_mult[i].mul_vec(&unit(n, j));
            let lhs = anti.mul_vec(&bij);
            let si = anti.column(i);
            let sj = anti.column(j);
            let rhs = crate::radical::combine(field, left_mult, &sj).mul_vec(&si);
            if lhs != rhs {
                return Err(Error::Invalid("anti map is not an anti-automorphism".into()));
            }
        }
    }
    if !anti.is_invertible() {
        return Err(Error::Invalid("anti map is not invertible".into()));
    }
    Ok(())
}

/// Span of all words in `gens`, in breadth-first order (generators by index).
fn closure_words(
    field: PrimeField,
    left_mult: &[MatrixFp],
    one: &[u32],
    gens: &[usize],
) -> (Vec<(usize, usize)>, Vec<Vec<u32>>) {
    let n = left_mult.len();
    let mut words = vec![(usize::MAX, usize::MAX)];
    let mut vecs = vec![one.to_vec()];
    let mut span = Subspace::from_vectors(field, n, &vecs);
    let mut head = 0;
    while head < words.len() && span.dim() < n {
        for (gi, &g) in gens.iter().enumerate() {
            let v = left_mult[g].mul_vec(&vecs[head]);
            if !span.contains(&v) {
                words.push((gi, head));
                vecs.push(v);
                span = Subspace::from_vectors(field, n, &vecs);
            }
        }
        head += 1;
    }
    (words, vecs)
}

fn choose_generators(field: PrimeField, left_mult: &[MatrixFp], one: &[u32]) -> Vec<usize> {
    let n = left_mult.len();
    let mut gens = Vec::new();
    let mut span = closure_words(field, left_mult, one, &gens).1;
    for i in 0..n {
        let s = Subspace::from_vectors(field, n, &span);
        if s.dim() == n {
            break;
        }
        if !s.contains(&unit(n, i)) {
            gens.push(i);
            span = closure_words(field, left_mult, one, &gens).1;
        }
    }
    gens
}

fn build_structure(
    field: PrimeField,
    dim: usize,
    mult: &[Vec<Vec<i64>>],
    one: &[i64],
    anti: Option<&Vec<Vec<i64>>>,
    config: &Config,
) -> Result<Algebra> {
    if dim > config.max_dim {
        return Err(Error::DimCapExceeded { dim, cap: config.max_dim });
    }
    if mult.len() != dim || mult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) || one.len() != dim {
        return Err(Error::Invalid(format!("structure constants must have shape {dim}x{dim}x{dim}")));
    }
    let left_mult: Vec<MatrixFp> = (0..dim)
        .map(|i| {
            let cols: Vec<Vec<u32>> =
                (0..dim).map(|j| mult[i][j].iter().map(|&x| field.from_i64(x)).collect()).collect();
            MatrixFp::from_columns(field, dim, &cols)
        })
        .collect();
    let one: Vec<u32> = one.iter().map(|&x| field.from_i64(x)).collect();
    let anti = match anti {
        Some(rows) => Some(MatrixFp::from_rows(field, rows, dim)),
        None => {
            let commutative = (0..dim).all(|i| (0..dim).all(|j| mult[i][j] == mult[j][i]));
            commutative.then(|| MatrixFp::identity(field, dim))
        }
    };
    assemble(field, left_mult, one, None, anti, None)
}

/// Group element: a permutation or a flattened square matrix.
type Element = Vec<u32>;

fn build_group(field: PrimeField, gens: &GroupGenerators, matrix_p: u32, config: &Config) -> Result<Algebra> {
    let (gen_elems, compose): (Vec<Element>, Box<dyn Fn(&Element, &Element) -> Element>) = match gens {
        GroupGenerators::Permutations(perms) => {
            let deg = perms.iter().map(|p| p.len()).max().unwrap_or(0);
            let mut elems = Vec::new();
            for p in perms {
                let mut seen = vec![false; p.len()];
                for &x in p {
                    if x >= p.len() || seen[x] {
                        return Err(Error::Invalid("generator is not a permutation".into()));
                    }
                    seen[x] = true;
                }
                let mut e: Element = (0..deg as u32).collect();
                for (i, &x) in p.iter().enumerate() {
                    e[i] = x as u32;
                }
                elems.push(e);
            }
            // (g h)(x) = g(h(x))
            (elems, Box::new(|g: &Element, h: &Element| h.iter().map(|&x| g[x as usize]).collect()))
        }
        GroupGenerators::Matrices(ms) => {
            let mf = PrimeField::new(matrix_p)?;
            let d = ms.first().map(|m| m.len()).unwrap_or(0);
            let mut elems = Vec::new();
            for m in ms {
                let mm = MatrixFp::from_rows(mf, m, d);
                if !mm.is_invertible() {
                    return Err(Error::Invalid("matrix generator is not invertible".into()));
                }
                elems.push(mm.data().to_vec());
            }
            (
                elems,
                Box::new(move |g: &Element, h: &Element| {
                    let a = MatrixFp::from_flat(mf, d, d, g.clone());
                    let b = MatrixFp::from_flat(mf, d, d, h.clone());
                    a.mul(&b).data().to_vec()
                }),
            )
        }
    };
    let identity: Element = match gens {
        GroupGenerators::Permutations(perms) => (0..perms.iter().map(|p| p.len()).max().unwrap_or(0) as u32).collect(),
        GroupGenerators::Matrices(ms) => {
            let d = ms.first().map(|m| m.len()).unwrap_or(0);
            MatrixFp::identity(PrimeField::new(matrix_p)?, d).data().to_vec()
        }
    };
    // Breadth-first closure: element k is reached as g * (earlier element).
    let mut elems = vec![identity];
    let mut index: HashMap<Element, usize> = HashMap::new();
    index.insert(elems[0].clone(), 0);
    let mut head = 0;
    while head < elems.len() {
        for g in &gen_elems {
            let x = compose(g, &elems[head]);
            if !index.contains_key(&x) {
                if elems.len() >= config.max_group_order {
                    return Err(Error::GroupClosureOverflow(config.max_group_order));
                }
                index.insert(x.clone(), elems.len());
                elems.push(x);
            }
        }
        head += 1;
    }
    let n = elems.len();
    if n > config.max_dim {
        return Err(Error::DimCapExceeded { dim: n, cap: config.max_dim });
    }
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
        .collect();
    let left_mult: Vec<MatrixFp> = (0..n)
        .map(|i| {
            let mut m = MatrixFp::zeros(field, n, n);
            for j in 0..n {
                m.set(table[i][j], j, 1);
            }
            m
        })
        .collect();
    let mut anti = MatrixFp::zeros(field, n, n);
    for i in 0..n {
        let inv = (0..n).find(|&j| table[i][j] == 0).expect("group inverse");
        anti.set(inv, i, 1);
    }
    let mut gen_idx: Vec<usize> = Vec::new();
    for g in &gen_elems {
        let i = index[g];
        if i != 0 && !gen_idx.contains(&i) {
            gen_idx.push(i);
        }
    }
    assemble(field, left_mult, unit(n, 0), Some(gen_idx), Some(anti), Some(n))
}
