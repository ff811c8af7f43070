//! Goursat decomposition of subdirect products, fibre products, and the
//! split-subgroup witness embedding.

use super::table::{find_isomorphism, CayleyTable};
use crate::error::Error;
use std::collections::{HashMap, HashSet};

/// A homomorphism between two tables, stored as the full image map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub dom_order: usize,
    pub cod_order: usize,
    pub images: Vec<u32>,
}

impl GroupHom {
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod_order];
        for &y in &self.images {
            seen[y as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn kernel(&self, cod_identity: u32) -> Vec<u32> {
        (0..self.dom_order as u32).filter(|&i| self.images[i as usize] == cod_identity).collect()
    }

    /// Exhaustive homomorphism check against the two tables.
    pub fn verify(&self, dom: &CayleyTable, cod: &CayleyTable) -> bool {
        if self.images.len() != dom.n {
            return false;
        }
        for a in 0..dom.n as u32 {
            for b in 0..dom.n as u32 {
                if self.apply(dom.mul(a, b)) != cod.mul(self.apply(a), self.apply(b)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Extend generator images to a homomorphism on all of `dom`; `None` when the
/// images are inconsistent or the generators do not generate `dom`.
pub fn hom_from_generators(
    dom: &CayleyTable,
    cod: &CayleyTable,
    gens: &[u32],
    images: &[u32],
) -> Option<GroupHom> {
    let full = super::table::extend_hom(dom, cod, gens, images)?;
    if full.iter().any(|&v| v == u32::MAX) {
        return None;
    }
    let hom = GroupHom { dom_order: dom.n, cod_order: cod.n, images: full };
    hom.verify(dom, cod).then_some(hom)
}

/// A subgroup of a direct product `H x H'`, stored by element pairs.
#[derive(Clone, Debug)]
pub struct PairSubgroup {
    pub pairs: Vec<(u32, u32)>,
    pub table: CayleyTable,
}

/// Build the table of a set of pairs closed under componentwise products.
pub fn pair_group(h: &CayleyTable, h2: &CayleyTable, pairs: Vec<(u32, u32)>) -> PairSubgroup {
    let mut pairs = pairs;
    pairs.sort_unstable();
    pairs.dedup();
    let id = (h.identity, h2.identity);
    let pos = pairs.iter().position(|&p| p == id).expect("identity pair present");
    pairs.swap(0, pos);
    let index: HashMap<(u32, u32), u32> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let n = pairs.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = (h.mul(pairs[i].0, pairs[j].0), h2.mul(pairs[i].1, pairs[j].1));
            table[i * n + j] = *index.get(&p).expect("pair set closed");
        }
    }
    PairSubgroup { pairs, table: CayleyTable::new(n, table, 0) }
}

/// Output of a Goursat decomposition: the common quotient `D` with the two
/// surjections, satisfying `R = {(h, h') : phi(h) = psi(h')}` exactly.
#[derive(Clone, Debug)]
pub struct GoursatData {
    pub d: CayleyTable,
    pub phi: GroupHom,
    pub psi: GroupHom,
    /// Images of the two projections inside the ambient groups (sorted);
    /// equal to the full groups when `R` is subdirect.
    pub image1: Vec<u32>,
    pub image2: Vec<u32>,
}

/// Goursat decomposition of `R <= H x H'`. When the projections are not
/// surjective, `H` and `H'` are first restricted to the images (reported in
/// the output); the homs are then on the restricted tables.
pub fn goursat_decompose(
    h: &CayleyTable,
    h2: &CayleyTable,
    r: &PairSubgroup,
) -> Result<(GoursatData, CayleyTable, CayleyTable), Error> {
    let mut im1: Vec<u32> = r.pairs.iter().map(|p| p.0).collect();
    im1.sort_unstable();
    im1.dedup();
    let mut im2: Vec<u32> = r.pairs.iter().map(|p| p.1).collect();
    im2.sort_unstable();
    im2.dedup();
    let (h_r, h_members) = h.subgroup(&im1);
    let (h2_r, h2_members) = h2.subgroup(&im2);
    let h_index: HashMap<u32, u32> =
        h_members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let h2_index: HashMap<u32, u32> =
        h2_members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();

    // N1 = p1(ker p2 cap R), normal in the restricted H.
    let n1: Vec<u32> = r
        .pairs
        .iter()
        .filter(|p| p.1 == h2.identity)
        .map(|p| h_index[&p.0])
        .collect();
    let (d, _reps, coset_of) = h_r.quotient(&n1);
    let phi = GroupHom { dom_order: h_r.n, cod_order: d.n, images: coset_of.clone() };
    // psi(h') = phi(h) for any (h, h') in R (well-defined by Goursat).
    let mut psi_images = vec![u32::MAX; h2_r.n];
    for p in &r.pairs {
        let hi = h_index[&p.0];
        let h2i = h2_index[&p.1];
        let v = phi.apply(hi);
        if psi_images[h2i as usize] == u32::MAX {
            psi_images[h2i as usize] = v;
        } else if psi_images[h2i as usize] != v {
            return Err(Error::HypothesisFailed(
                "pair set is not a subgroup: psi not well-defined".into(),
            ));
        }
    }
    if psi_images.iter().any(|&v| v == u32::MAX) {
        return Err(Error::HypothesisFailed("second projection misses elements".into()));
    }
    let psi = GroupHom { dom_order: h2_r.n, cod_order: d.n, images: psi_images };
    if !phi.verify(&h_r, &d) || !psi.verify(&h2_r, &d) {
        return Err(Error::HypothesisFailed("induced maps are not homomorphisms".into()));
    }
    // Exact reconstruction check: R = {(h, h') : phi(h) = psi(h')}.
    let rebuilt: HashSet<(u32, u32)> = fibre_pairs(&phi, &psi)
        .into_iter()
        .map(|(a, b)| (h_members[a as usize], h2_members[b as usize]))
        .collect();
    let original: HashSet<(u32, u32)> = r.pairs.iter().copied().collect();
    if rebuilt != original {
        return Err(Error::HypothesisFailed(
            "Goursat reconstruction mismatch: input is not a subgroup".into(),
        ));
    }
    Ok((GoursatData { d, phi, psi, image1: h_members, image2: h2_members }, h_r, h2_r))
}

fn fibre_pairs(phi: &GroupHom, psi: &GroupHom) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for a in 0..phi.dom_order as u32 {
        for b in 0..psi.dom_order as u32 {
            if phi.apply(a) == psi.apply(b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Fibre product `H x_D H'` for surjections `phi`, `psi` onto `D`.
pub fn fibre_product(
    h: &CayleyTable,
    h2: &CayleyTable,
    phi: &GroupHom,
    psi: &GroupHom,
    d: &CayleyTable,
) -> Result<PairSubgroup, Error> {
    if !phi.verify(h, d) || !psi.verify(h2, d) {
        return Err(Error::HypothesisFailed("maps are not homomorphisms onto D".into()));
    }
    if !phi.is_surjective() || !psi.is_surjective() {
        return Err(Error::HypothesisFailed("fibre product requires surjections".into()));
    }
    let pairs = fibre_pairs(phi, psi);
    let fp = pair_group(h, h2, pairs);
    debug_assert_eq!(fp.pairs.len() * d.n, h.n * h2.n);
    Ok(fp)
}

/// For `H = N : D` (split, with `ker phi = ker psi = N`), the canonical
/// subgroup of `H x_D H` isomorphic to `H`: generated by `ker(phi) x {id}`
/// and the twisted diagonal `{(d, psi^-1(phi(d)))}`. Verified isomorphic to
/// `H` via the first projection.
pub fn split_subgroup_witness(
    h: &CayleyTable,
    n_members: &[u32],
    d_members: &[u32],
    phi: &GroupHom,
    psi: &GroupHom,
    d: &CayleyTable,
) -> Result<(PairSubgroup, Vec<u32>), Error> {
    let nset: HashSet<u32> = n_members.iter().copied().collect();
    let dset: HashSet<u32> = d_members.iter().copied().collect();
    // hypotheses
    if nset.intersection(&dset).count() != 1 {
        return Err(Error::HypothesisFailed("N and D must intersect trivially".into()));
    }
    if nset.len() * dset.len() != h.n {
        return Err(Error::HypothesisFailed("N D must cover H (split product)".into()));
    }
    let ker_phi: HashSet<u32> = phi.kernel(d.identity).into_iter().collect();
    let ker_psi: HashSet<u32> = psi.kernel(d.identity).into_iter().collect();
    if ker_phi != nset {
        return Err(Error::HypothesisFailed("ker phi differs from N".into()));
    }
    if ker_psi != nset {
        return Err(Error::HypothesisFailed("ker psi differs from N".into()));
    }
    // psi restricted to D is a bijection onto D's image; build its inverse
    let mut psi_inv: HashMap<u32, u32> = HashMap::new();
    for &x in d_members {
        if psi_inv.insert(psi.apply(x), x).is_some() {
            return Err(Error::HypothesisFailed("psi not injective on D".into()));
        }
    }
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for &nn in n_members {
        pairs.push((nn, h.identity));
    }
    for &dd in d_members {
        pairs.push((dd, psi_inv[&phi.apply(dd)]));
    }
    // close the generated set inside H x H
    let mut set: HashSet<(u32, u32)> = pairs.iter().copied().collect();
    set.insert((h.identity, h.identity));
    let mut queue: Vec<(u32, u32)> = set.iter().copied().collect();
    queue.sort_unstable();
    let gens = queue.clone();
    let mut k = 0;
    while k < queue.len() {
        for g in &gens {
            let p = (h.mul(queue[k].0, g.0), h.mul(queue[k].1, g.1));
            if set.insert(p) {
                queue.push(p);
            }
        }
        k += 1;
    }
    let witness = pair_group(h, h, queue);
    // the first projection restricted to the witness must be bijective
    let mut proj: Vec<u32> = witness.pairs.iter().map(|p| p.0).collect();
    proj.sort_unstable();
    proj.dedup();
    if proj.len() != witness.pairs.len() || witness.pairs.len() != h.n {
        return Err(Error::HypothesisFailed(
            "witness does not project isomorphically onto H".into(),
        ));
    }
    let iso = find_isomorphism(&witness.table, h)?.ok_or_else(|| {
        Error::HypothesisFailed("witness not isomorphic to H".into())
    })?;
    Ok((witness, iso))
}
