//! Cayley-table algorithms: orders, classes, derived series, abelian
//! structure, fingerprints, subgroup enumeration, isomorphism search.

use crate::error::Error;
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// Bound above which subgroup enumeration and isomorphism search refuse to run.
pub const ORDER_BOUND: usize = 512;

/// Multiplication table of a finite group; `identity` is always index 0 for
/// tables built by this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    pub n: usize,
    table: Vec<u32>,
    pub identity: u32,
}

impl CayleyTable {
    pub fn new(n: usize, table: Vec<u32>, identity: u32) -> Self {
        assert_eq!(table.len(), n * n);
        let t = CayleyTable { n, table, identity };
        debug_assert!(t.validate().is_ok());
        t
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.table[i as usize * self.n + j as usize]
    }

    pub fn inv(&self, i: u32) -> u32 {
        (0..self.n as u32)
            .find(|&j| self.mul(i, j) == self.identity)
            .expect("every element has an inverse")
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn order_of(&self, i: u32) -> u32 {
        let mut k = 1;
        let mut x = i;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Rows and columns are permutations, identity is neutral.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.n as u32;
        for i in 0..n {
            if self.mul(self.identity, i) != i || self.mul(i, self.identity) != i {
                return Err(format!("identity not neutral at {i}"));
            }
            let mut seen_row = vec![false; self.n];
            let mut seen_col = vec![false; self.n];
            for j in 0..n {
                let r = self.mul(i, j) as usize;
                let c = self.mul(j, i) as usize;
                if seen_row[r] || seen_col[c] {
                    return Err(format!("table row/col {i} not a permutation"));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        Ok(())
    }

    /// Indices of the subgroup generated by `gens`, in BFS order from the
    /// identity.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        let mut out = vec![self.identity];
        seen[self.identity as usize] = true;
        let mut k = 0;
        while k < out.len() {
            for &g in gens {
                let x = self.mul(out[k], g);
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    out.push(x);
                }
            }
            k += 1;
        }
        out
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for i in 0..self.n as u32 {
            if seen[i as usize] {
                continue;
            }
            let mut cls: Vec<u32> = (0..self.n as u32).map(|g| self.conj(g, i)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &x in &cls {
                seen[x as usize] = true;
            }
            classes.push(cls);
        }
        classes
    }

    pub fn center(&self) -> Vec<u32> {
        (0..self.n as u32)
            .filter(|&i| (0..self.n as u32).all(|j| self.mul(i, j) == self.mul(j, i)))
            .collect()
    }

    /// The derived (commutator) subgroup, as a sorted member list.
    pub fn derived_subgroup(&self) -> Vec<u32> {
        let mut comms: Vec<u32> = Vec::new();
        for i in 0..self.n as u32 {
            for j in 0..self.n as u32 {
                let c = self.mul(self.mul(i, j), self.inv(self.mul(j, i)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        let mut members = self.closure(&comms);
        members.sort_unstable();
        members
    }

    /// Restriction of the table to a subgroup; returns the sub-table plus the
    /// member list in the sub-table's index order (identity first).
    pub fn subgroup(&self, members: &[u32]) -> (CayleyTable, Vec<u32>) {
        let mut ms: Vec<u32> = members.to_vec();
        ms.sort_unstable();
        ms.dedup();
        let pos = ms.iter().position(|&m| m == self.identity).expect("identity in subgroup");
        ms.swap(0, pos);
        let index: HashMap<u32, u32> =
            ms.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let k = ms.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                let prod = self.mul(ms[i], ms[j]);
                table[i * k + j] = *index.get(&prod).expect("subgroup closed");
            }
        }
        (CayleyTable { n: k, table, identity: 0 }, ms)
    }

    /// Quotient by a normal subgroup given as a member list. Returns the
    /// quotient table, coset representatives (parent indices), and the map
    /// from parent elements to quotient indices.
    pub fn quotient(&self, normal: &[u32]) -> (CayleyTable, Vec<u32>, Vec<u32>) {
        let nset: HashSet<u32> = normal.iter().copied().collect();
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for i in 0..self.n as u32 {
            if coset_of[i as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(i);
            for &h in &nset {
                coset_of[self.mul(i, h) as usize] = c;
            }
        }
        let k = reps.len();
        let mut table = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = coset_of[self.mul(reps[a], reps[b]) as usize];
            }
        }
        let identity = coset_of[self.identity as usize];
        // normalize identity to 0
        let (table, reps, coset_of) = if identity != 0 {
            let swap = |x: u32| {
                if x == identity {
                    0
                } else if x == 0 {
                    identity
                } else {
                    x
                }
            };
            let mut t2 = vec![0u32; k * k];
            for a in 0..k as u32 {
                for b in 0..k as u32 {
                    t2[swap(a) as usize * k + swap(b) as usize] =
                        swap(table[a as usize * k + b as usize]);
                }
            }
            let mut r2 = reps.clone();
            r2.swap(0, identity as usize);
            (t2, r2, coset_of.iter().map(|&c| swap(c)).collect())
        } else {
            (table, reps, coset_of)
        };
        (CayleyTable { n: k, table, identity: 0 }, reps, coset_of)
    }

    /// A small generating set, greedily extended in deterministic order.
    pub fn small_generating_set(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.n as u32).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.order_of(i)), i));
        let mut gens: Vec<u32> = Vec::new();
        let mut have = vec![false; self.n];
        have[self.identity as usize] = true;
        let mut count = 1;
        for &cand in &order {
            if have[cand as usize] {
                continue;
            }
            gens.push(cand);
            for x in self.closure(&gens) {
                if !have[x as usize] {
                    have[x as usize] = true;
                    count += 1;
                }
            }
            if count == self.n {
                break;
            }
        }
        gens
    }

    pub fn exponent(&self) -> u32 {
        (0..self.n as u32).fold(1u32, |acc, i| {
            let o = self.order_of(i);
            acc / crate::cyclo::gcd_u32(acc, o) * o
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.n
    }
}

/// Direct product of two tables, elements ordered as `(a, b)` with `b` fastest.
pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
    let n = a.n * b.n;
    let idx = |x: u32, y: u32| (x as usize * b.n + y as usize) as u32;
    let mut table = vec![0u32; n * n];
    for x1 in 0..a.n as u32 {
        for y1 in 0..b.n as u32 {
            for x2 in 0..a.n as u32 {
                for y2 in 0..b.n as u32 {
                    table[idx(x1, y1) as usize * n + idx(x2, y2) as usize] =
                        idx(a.mul(x1, x2), b.mul(y1, y2));
                }
            }
        }
    }
    CayleyTable { n, table, identity: 0 }
}

/// Structure invariants recomputable from the table alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: u32,
    /// (element order, multiplicity) sorted by order.
    pub element_orders: Vec<(u32, u32)>,
    pub conjugacy_class_sizes: Vec<u32>,
    pub center_order: u32,
    pub derived_series_orders: Vec<u32>,
    pub abelianization: Vec<u32>,
    pub exponent: u32,
}

pub fn fingerprint(t: &CayleyTable) -> Fingerprint {
    let mut hist: HashMap<u32, u32> = HashMap::new();
    for i in 0..t.n as u32 {
        *hist.entry(t.order_of(i)).or_insert(0) += 1;
    }
    let mut element_orders: Vec<(u32, u32)> = hist.into_iter().collect();
    element_orders.sort_unstable();
    let mut class_sizes: Vec<u32> =
        t.conjugacy_classes().iter().map(|c| c.len() as u32).collect();
    class_sizes.sort_unstable();
    let mut derived_series_orders = vec![t.n as u32];
    let mut cur = t.clone();
    loop {
        let d = cur.derived_subgroup();
        if d.len() == cur.n {
            break;
        }
        derived_series_orders.push(d.len() as u32);
        let (sub, _) = cur.subgroup(&d);
        cur = sub;
        if cur.n == 1 {
            break;
        }
    }
    Fingerprint {
        order: t.n as u32,
        element_orders,
        conjugacy_class_sizes: class_sizes,
        center_order: t.center().len() as u32,
        derived_series_orders,
        abelianization: abelian_invariant_factors_of(t),
        exponent: t.exponent(),
    }
}

/// Invariant factors (descending, each dividing the previous) of the
/// abelianization `G/[G,G]`.
pub fn abelian_invariant_factors_of(t: &CayleyTable) -> Vec<u32> {
    let derived = t.derived_subgroup();
    let (q, _, _) = t.quotient(&derived);
    abelian_invariant_factors(&q)
}

/// Invariant factors of an abelian table: peel off a maximal-order cyclic
/// (always a direct summand in an abelian group) and recurse on the quotient.
pub fn abelian_invariant_factors(t: &CayleyTable) -> Vec<u32> {
    assert!(t.is_abelian());
    if t.n == 1 {
        return vec![];
    }
    let g = (0..t.n as u32).max_by_key(|&i| (t.order_of(i), std::cmp::Reverse(i))).unwrap();
    let d = t.order_of(g);
    let cyc = t.closure(&[g]);
    let (q, _, _) = t.quotient(&cyc);
    let mut out = vec![d];
    out.extend(abelian_invariant_factors(&q));
    out
}

/// Explicit isomorphism `G -> H` as an index map, or `None`.
pub fn find_isomorphism(g: &CayleyTable, h: &CayleyTable) -> Result<Option<Vec<u32>>, Error> {
    if g.n > ORDER_BOUND || h.n > ORDER_BOUND {
        return Err(Error::UnsupportedOrder { order: g.n.max(h.n), bound: ORDER_BOUND });
    }
    if g.n != h.n {
        return Ok(None);
    }
    let fg = fingerprint(g);
    let fh = fingerprint(h);
    if fg != fh {
        return Ok(None);
    }
    let gens = g.small_generating_set();
    // candidate targets filtered by order and conjugacy class size
    let class_size_of = |t: &CayleyTable| {
        let classes = t.conjugacy_classes();
        let mut out = vec![0u32; t.n];
        for c in &classes {
            for &x in c {
                out[x as usize] = c.len() as u32;
            }
        }
        out
    };
    let gcs = class_size_of(g);
    let hcs = class_size_of(h);
    let cands: Vec<Vec<u32>> = gens
        .iter()
        .map(|&x| {
            (0..h.n as u32)
                .filter(|&y| h.order_of(y) == g.order_of(x) && hcs[y as usize] == gcs[x as usize])
                .collect()
        })
        .collect();
    let mut images = vec![0u32; gens.len()];
    Ok(search_iso(g, h, &gens, &cands, &mut images, 0))
}

fn search_iso(
    g: &CayleyTable,
    h: &CayleyTable,
    gens: &[u32],
    cands: &[Vec<u32>],
    images: &mut Vec<u32>,
    depth: usize,
) -> Option<Vec<u32>> {
    if depth == gens.len() {
        return extend_hom(g, h, gens, images).filter(|m| {
            let mut seen = vec![false; h.n];
            m.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
        });
    }
    for &cand in &cands[depth] {
        images[depth] = cand;
        // quick partial consistency: the partial map must extend on the
        // subgroup generated so far
        if extend_hom(g, h, &gens[..=depth], &images[..=depth]).is_some() {
            if let Some(full) = search_iso(g, h, gens, cands, images, depth + 1) {
                return Some(full);
            }
        }
    }
    None
}

/// Extend `gens -> images` to a homomorphism on the subgroup generated by
/// `gens`, or `None` if inconsistent. The result maps every generated element.
pub fn extend_hom(g: &CayleyTable, h: &CayleyTable, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let mut map: Vec<Option<u32>> = vec![None; g.n];
    map[g.identity as usize] = Some(h.identity);
    let mut frontier = vec![g.identity];
    let mut k = 0;
    while k < frontier.len() {
        let x = frontier[k];
        let fx = map[x as usize].unwrap();
        for (gi, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            let fy = h.mul(fx, images[gi]);
            match map[y as usize] {
                None => {
                    map[y as usize] = Some(fy);
                    frontier.push(y);
                }
                Some(prev) if prev != fy => return None,
                _ => {}
            }
        }
        k += 1;
    }
    // verify the homomorphism property on the generated set
    let dom: Vec<u32> = frontier;
    for &a in &dom {
        for &b in &dom {
            let ab = g.mul(a, b);
            let (fa, fb) = (map[a as usize]?, map[b as usize]?);
            if map[ab as usize]? != h.mul(fa, fb) {
                return None;
            }
        }
    }
    let mut out = vec![u32::MAX; g.n];
    for (i, m) in map.iter().enumerate() {
        if let Some(v) = m {
            out[i] = *v;
        }
    }
    if out.iter().any(|&v| v == u32::MAX) {
        // generators did not generate all of g: caller wanted a partial check
        // on the generated subgroup only, which succeeded
        return Some(out);
    }
    Some(out)
}

pub fn is_isomorphic_tables(g: &CayleyTable, h: &CayleyTable) -> Result<bool, Error> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// All subgroups, as sorted member lists, by join-closure of the cyclic
/// subgroups. Deterministic output order: by (order, members lexicographic).
pub fn all_subgroups(t: &CayleyTable) -> Result<Vec<Vec<u32>>, Error> {
    if t.n > ORDER_BOUND {
        return Err(Error::UnsupportedOrder { order: t.n, bound: ORDER_BOUND });
    }
    let mut cyclic: Vec<Vec<u32>> = Vec::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for i in 0..t.n as u32 {
        let mut m = t.closure(&[i]);
        m.sort_unstable();
        if seen.insert(m.clone()) {
            cyclic.push(m);
        }
    }
    let mut queue: Vec<Vec<u32>> = cyclic.clone();
    let mut k = 0;
    while k < queue.len() {
        let current = queue[k].clone();
        if current.len() < t.n {
            for cyc in &cyclic {
                if cyc.iter().all(|x| current.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = current.clone();
                gens.extend_from_slice(cyc);
                let mut m = t.closure(&gens);
                m.sort_unstable();
                if seen.insert(m.clone()) {
                    queue.push(m);
                }
            }
        }
        k += 1;
    }
    queue.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(queue)
}

/// Subgroups matching an order/index filter.
pub enum SubgroupFilter {
    All,
    Order(u32),
    Index(u32),
    OrderAtMost(u32),
}

pub fn subgroups_matching(t: &CayleyTable, f: &SubgroupFilter) -> Result<Vec<Vec<u32>>, Error> {
    let all = all_subgroups(t)?;
    Ok(all
        .into_iter()
        .filter(|m| match f {
            SubgroupFilter::All => true,
            SubgroupFilter::Order(k) => m.len() as u32 == *k,
            SubgroupFilter::Index(k) => t.n as u32 == *k * m.len() as u32,
            SubgroupFilter::OrderAtMost(k) => m.len() as u32 <= *k,
        })
        .collect())
}

/// Does `t` contain a subgroup isomorphic to `model`?
pub fn has_subgroup_isomorphic_to(
    t: &CayleyTable,
    model: &CayleyTable,
) -> Result<Option<Vec<u32>>, Error> {
    if t.n % model.n != 0 {
        return Ok(None);
    }
    for m in subgroups_matching(t, &SubgroupFilter::Order(model.n as u32))? {
        let (sub, members) = t.subgroup(&m);
        if is_isomorphic_tables(&sub, model)? {
            return Ok(Some(members));
        }
    }
    Ok(None)
}
