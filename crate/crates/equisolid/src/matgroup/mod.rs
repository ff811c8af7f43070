//! Finite group engine: closures of exact matrix (and other) elements, Cayley
//! structure, fingerprints, identification, Goursat machinery.

pub mod goursat;
pub mod named;
pub mod table;

pub use table::{
    abelian_invariant_factors, all_subgroups, direct_product, find_isomorphism, fingerprint,
    has_subgroup_isomorphic_to, is_isomorphic_tables, subgroups_matching, CayleyTable,
    Fingerprint, SubgroupFilter, ORDER_BOUND,
};

use crate::cyclo::{kth_root_rat_times_unit, CycNum};
use crate::error::Error;
use crate::linalg::CMat;
use std::collections::HashMap;
use std::hash::Hash;

/// Default closure cap for matrix groups.
pub const DEFAULT_CAP: usize = 1024;

/// Anything that composes associatively and compares exactly.
pub trait Element: Clone + Eq + Hash {
    fn compose(&self, other: &Self) -> Self;
}

/// A finite group: closed element list, Cayley table, generator indices.
#[derive(Clone, Debug)]
pub struct FiniteGroup<E> {
    pub elements: Vec<E>,
    pub table: CayleyTable,
    pub generators: Vec<u32>,
}

impl<E: Element> FiniteGroup<E> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &E {
        &self.elements[self.table.identity as usize]
    }

    pub fn index_of(&self, e: &E) -> Option<u32> {
        self.elements.iter().position(|x| x == e).map(|i| i as u32)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index_of(e).is_some()
    }

    pub fn generator_elements(&self) -> Vec<E> {
        self.generators.iter().map(|&i| self.elements[i as usize].clone()).collect()
    }

    /// Subgroup on the given member indices, keeping the element payloads.
    pub fn subgroup(&self, members: &[u32]) -> FiniteGroup<E> {
        let (table, ms) = self.table.subgroup(members);
        let elements = ms.iter().map(|&m| self.elements[m as usize].clone()).collect();
        let sub = FiniteGroup { elements, table, generators: vec![] };
        let gens = sub.table.small_generating_set();
        FiniteGroup { generators: gens, ..sub }
    }
}

/// Breadth-first closure of the generators. Deterministic element order: the
/// identity first, then products in BFS order with generators in input order.
pub fn close_group<E: Element>(generators: &[E], cap: usize) -> Result<FiniteGroup<E>, Error> {
    assert!(!generators.is_empty(), "need at least one generator");
    let identity = derive_identity(&generators[0], cap)?;
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<E, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut k = 0;
    while k < elements.len() {
        for g in generators {
            let h = elements[k].compose(g);
            if !index.contains_key(&h) {
                if elements.len() >= cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                index.insert(h.clone(), elements.len() as u32);
                elements.push(h);
            }
        }
        k += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = elements[i].compose(&elements[j]);
            table[i * n + j] = *index
                .get(&p)
                .expect("closure is closed under composition");
        }
    }
    let table = CayleyTable::new(n, table, 0);
    let generators = generators
        .iter()
        .map(|g| *index.get(g).expect("generators are in the closure"))
        .collect();
    Ok(FiniteGroup { elements, table, generators })
}

/// Identity element derived from powers of a generator: the power `p` with
/// `p * g = g` is the identity.
fn derive_identity<E: Element>(g: &E, cap: usize) -> Result<E, Error> {
    let mut p = g.clone();
    for _ in 0..cap {
        let next = p.compose(g);
        if next == *g {
            return Ok(p);
        }
        p = next;
    }
    Err(Error::ClosureCapExceeded { cap })
}

// ---------------------------------------------------------------------------
// Matrix elements
// ---------------------------------------------------------------------------

/// Invertible square matrix over cyclotomic scalars, compared exactly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat(pub CMat);

impl Mat {
    pub fn new(m: CMat) -> Self {
        debug_assert!(!m.det().is_zero(), "group matrices must be invertible");
        Mat(m)
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        Mat::new(CMat::from_fn(n, n, |i, j| CycNum::from_i64(rows[i][j])))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn det(&self) -> CycNum {
        self.0.det()
    }
}

impl Element for Mat {
    fn compose(&self, other: &Self) -> Self {
        Mat(self.0.matmul(&other.0))
    }
}

/// Projective matrix: scaled so the first nonzero entry in row-major order
/// is 1, making equality and hashing structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjMat(CMat);

impl ProjMat {
    pub fn new(m: CMat) -> Self {
        ProjMat(projective_scale(m))
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        ProjMat::new(CMat::from_fn(n, n, |i, j| CycNum::from_i64(rows[i][j])))
    }

    pub fn mat(&self) -> &CMat {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn inverse(&self) -> ProjMat {
        ProjMat::new(self.0.inverse().expect("projective matrices are invertible"))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == CMat::identity(self.0.rows)
    }
}

pub fn projective_scale(m: CMat) -> CMat {
    let pivot = m.a.iter().find(|x| !x.is_zero()).expect("nonzero matrix");
    if pivot.is_one() {
        return m;
    }
    let inv = pivot.inverse().expect("nonzero");
    CMat {
        rows: m.rows,
        cols: m.cols,
        a: m.a.iter().map(|x| x.mul(&inv)).collect(),
    }
}

impl Element for ProjMat {
    fn compose(&self, other: &Self) -> Self {
        ProjMat::new(self.0.matmul(&other.0))
    }
}

/// Closure of matrices under exact (not projective) equality. If the raw
/// generators fail to close within the cap, each is rescaled to determinant 1
/// (k-th roots of `rational * root-of-unity` determinants) and retried; the
/// projective image is unchanged by the rescaling.
pub fn lift_closure(generators: &[Mat], cap: usize) -> Result<FiniteGroup<Mat>, Error> {
    match close_group(generators, cap) {
        Ok(g) => Ok(g),
        Err(Error::ClosureCapExceeded { .. }) => {
            let dim = generators[0].dim() as u32;
            let rescaled: Vec<Mat> = generators
                .iter()
                .map(|m| {
                    let det = m.det();
                    let lambda = kth_root_rat_times_unit(&det.inverse()?, dim)?;
                    Ok(Mat(m.0.scale(&lambda)))
                })
                .collect::<Result<_, Error>>()?;
            for m in &rescaled {
                debug_assert!(m.det().is_one());
            }
            close_group(&rescaled, cap)
        }
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// Permutation of `0..n`, composed left-to-right: `(p.compose(q))(i) = p[q[i]]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<u8>]) -> Result<Self, Error> {
        let mut v: Vec<u8> = (0..n as u8).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let a = cyc[w] as usize;
                let b = cyc[(w + 1) % cyc.len()] as usize;
                if a >= n || b >= n {
                    return Err(Error::Parse(format!("cycle entry out of range 1..={n}")));
                }
                v[a] = b as u8;
            }
        }
        // must be a bijection
        let mut seen = vec![false; n];
        for &x in &v {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::Parse("cycles do not describe a permutation".into()));
            }
        }
        Ok(Perm(v))
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Disjoint cycle notation over 1-based labels, fixed points omitted.
    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for s in 0..n {
            if seen[s] || self.apply(s) == s {
                seen[s] = true;
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push('(');
            out.push_str(
                &cyc.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl Element for Perm {
    fn compose(&self, other: &Self) -> Self {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }
}
