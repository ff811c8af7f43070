//! Torus-normalizer machinery on P1xP1: the boundary square, the
//! square-symmetry homomorphism, torus normalization of the 4-cycle class,
//! the toricity criterion, and membership in the order-16 group generated by
//! r, s, t.

use crate::cyclo::{kth_root_rat_times_unit, CycNum};
use crate::error::Error;
use crate::linalg::CMat;
use crate::matgroup::{
    close_group, has_subgroup_isomorphic_to, named, Element, FiniteGroup, Perm, ProjMat,
    DEFAULT_CAP,
};
use crate::surfaces::{Model, SurfaceAut, SurfacePoint};
use std::sync::OnceLock;

fn c(n: i64) -> CycNum {
    CycNum::from_i64(n)
}

fn zero_one() -> Vec<CycNum> {
    vec![c(0), c(1)]
}

fn one_zero() -> Vec<CycNum> {
    vec![c(1), c(0)]
}

/// The four boundary curves of the open torus orbit, with their vertices.
/// Curves are indexed 0..4: `{(1:0)} x P1`, `{(0:1)} x P1`, `P1 x {(1:0)}`,
/// `P1 x {(0:1)}`.
pub struct SquareC {
    /// (factor, coordinate point): factor 0 means the first coordinate is
    /// pinned.
    pub curves: [(usize, Vec<CycNum>); 4],
    pub vertices: [SurfacePoint; 4],
}

pub fn square() -> &'static SquareC {
    static SQ: OnceLock<SquareC> = OnceLock::new();
    SQ.get_or_init(|| SquareC {
        curves: [
            (0, one_zero()),
            (0, zero_one()),
            (1, one_zero()),
            (1, zero_one()),
        ],
        vertices: [
            SurfacePoint::p1xp1(&one_zero(), &one_zero()),
            SurfacePoint::p1xp1(&one_zero(), &zero_one()),
            SurfacePoint::p1xp1(&zero_one(), &one_zero()),
            SurfacePoint::p1xp1(&zero_one(), &zero_one()),
        ],
    })
}

/// A symmetry of the labeled square, as the induced permutation of the four
/// boundary curves.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct D4Element(pub Perm);

impl D4Element {
    pub fn identity() -> Self {
        D4Element(Perm::identity(4))
    }

    /// True when the symmetry cyclically permutes the vertices (the class of
    /// the standard 4-cycle w(r)); equivalently it exchanges the two rulings
    /// and has order 4 on the curves.
    pub fn is_four_cycle(&self) -> bool {
        let p = &self.0;
        // exchanges rulings: curve 0 (first factor) maps to a second-factor curve
        let swaps = p.apply(0) >= 2;
        if !swaps {
            return false;
        }
        // order 4 as a permutation
        let mut x = 0usize;
        let mut steps = 0;
        loop {
            x = p.apply(x);
            steps += 1;
            if x == 0 {
                break;
            }
        }
        steps == 4
    }

    /// Preserves each curve individually (the kernel condition for the torus).
    pub fn is_trivial(&self) -> bool {
        (0..4).all(|i| self.0.apply(i) == i)
    }
}

impl Element for D4Element {
    fn compose(&self, other: &Self) -> Self {
        D4Element(self.0.compose(&other.0))
    }
}

/// If `g` maps the four boundary curves among themselves, the induced square
/// symmetry `w(g)`; otherwise `None` (g is outside the torus normalizer).
pub fn preserves_square(g: &SurfaceAut) -> Result<Option<D4Element>, Error> {
    if g.model() != Model::P1xP1 {
        return Err(Error::ModelMismatch { expected: "P1xP1".into(), got: g.model().to_string() });
    }
    let sq = square();
    let (a, b) = g.factors().unwrap();
    let mut perm = [0u8; 4];
    for (i, (factor, at)) in sq.curves.iter().enumerate() {
        // image of the curve {at} x P1 (factor 0) or P1 x {at} (factor 1):
        // swap-free g sends factor-0 curves to factor-0 curves at A(at);
        // a swap element sends factor-0 curves to factor-1 curves at B(at).
        let (img_factor, img_at) = match (g.swap_bit(), factor) {
            (false, 0) => (0usize, crate::surfaces::canon_vec(&a.mat().apply(at))),
            (false, 1) => (1, crate::surfaces::canon_vec(&b.mat().apply(at))),
            (true, 0) => (1, crate::surfaces::canon_vec(&b.mat().apply(at))),
            (true, 1) => (0, crate::surfaces::canon_vec(&a.mat().apply(at))),
            _ => unreachable!(),
        };
        match sq
            .curves
            .iter()
            .position(|(f, p)| *f == img_factor && *p == img_at)
        {
            Some(j) => perm[i] = j as u8,
            None => return Ok(None),
        }
    }
    Ok(Some(D4Element(Perm(perm.to_vec()))))
}

/// True iff `g` is a diagonal torus element `(ax, by)`.
pub fn is_torus_element(g: &SurfaceAut) -> bool {
    if g.swap_bit() {
        return false;
    }
    let Some((a, b)) = g.factors() else { return false };
    let diag = |m: &ProjMat| m.mat().at(0, 1).is_zero() && m.mat().at(1, 0).is_zero();
    diag(a) && diag(b)
}

/// The group G16 = <r, s, t> of order 16 (Z2 x D4).
pub fn g16() -> &'static FiniteGroup<SurfaceAut> {
    static G: OnceLock<FiniteGroup<SurfaceAut>> = OnceLock::new();
    G.get_or_init(|| {
        let id = ProjMat::new(CMat::identity(2));
        let inv = ProjMat::new(CMat::new(2, 2, vec![c(0), c(1), c(1), c(0)]));
        let neg = ProjMat::new(CMat::new(2, 2, vec![c(1), c(0), c(0), c(-1)]));
        let r = SurfaceAut::p1xp1(inv, id.clone(), true);
        let s = SurfaceAut::p1xp1(id.clone(), id, true);
        let t = SurfaceAut::p1xp1(neg.clone(), neg, false);
        let g = close_group(&[r, s, t], DEFAULT_CAP).expect("G16 closes");
        assert_eq!(g.order(), 16);
        g
    })
}

/// The standard r = (1/y, x).
pub fn standard_r() -> SurfaceAut {
    let id = ProjMat::new(CMat::identity(2));
    let inv = ProjMat::new(CMat::new(2, 2, vec![c(0), c(1), c(1), c(0)]));
    SurfaceAut::p1xp1(inv, id, true)
}

/// For `g = (a/y, bx)`: the torus element `t = (kx, ly)` with `l^2 = 1/(ab)`
/// and `k = b l`, so that `t g t^-1 = r`. The conjugation identity is
/// verified exactly before returning.
pub fn normalize_r(g: &SurfaceAut) -> Result<SurfaceAut, Error> {
    let (a_mat, b_mat) = g.factors().ok_or_else(|| {
        Error::Precondition("normalize_r needs a P1xP1 element".into())
    })?;
    if !g.swap_bit() {
        return Err(Error::Precondition("normalize_r needs a factor-swapping element".into()));
    }
    // shape (a/y, bx): A = [[0,1],[a,0]] canonical, B = diag(1, b)
    let am = a_mat.mat();
    let bm = b_mat.mat();
    if !am.at(0, 0).is_zero() || am.at(0, 1) != &CycNum::one() || am.at(1, 0).is_zero()
        || !am.at(1, 1).is_zero()
    {
        return Err(Error::Precondition("first factor is not of the shape x -> a/y".into()));
    }
    if bm.at(0, 0) != &CycNum::one() || !bm.at(0, 1).is_zero() || !bm.at(1, 0).is_zero()
        || bm.at(1, 1).is_zero()
    {
        return Err(Error::Precondition("second factor is not of the shape y -> b x".into()));
    }
    let a = am.at(1, 0).clone();
    let b = bm.at(1, 1).clone();
    let ab_inv = a.mul(&b).inverse()?;
    let l = kth_root_rat_times_unit(&ab_inv, 2)?;
    for cand in [l.clone(), l.neg()] {
        let k = b.mul(&cand);
        let t = SurfaceAut::p1xp1(
            ProjMat::new(CMat::new(2, 2, vec![c(1), c(0), c(0), k])),
            ProjMat::new(CMat::new(2, 2, vec![c(1), c(0), c(0), cand.clone()])),
            false,
        );
        let conj = t.compose(g).compose(&t.inverse());
        if conj == standard_r() {
            return Ok(t);
        }
    }
    Err(Error::HypothesisFailed("conjugation to r failed for both square roots".into()))
}

/// Toricity of a rank-1 group on P1xP1, by the subgroup criterion: toric iff
/// no subgroup isomorphic to A4. When the group visibly preserves the
/// coordinate square, direct normalizer membership is cross-checked.
pub fn is_toric(group: &FiniteGroup<SurfaceAut>) -> Result<bool, Error> {
    if crate::picard::invariant_rank(group)? != 1 {
        return Err(Error::Precondition("toricity criterion needs invariant rank 1".into()));
    }
    let a4 = named::alternating(4);
    let has_a4 = has_subgroup_isomorphic_to(&group.table, &a4)?.is_some();
    let toric = !has_a4;
    // cross-check: a group inside the normalizer (all elements preserve the
    // square) must come out toric
    let all_preserve = group
        .elements
        .iter()
        .map(preserves_square)
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .all(|w| w.is_some());
    if all_preserve && !toric {
        return Err(Error::HypothesisFailed(
            "square-preserving group flagged non-toric: criterion inconsistency".into(),
        ));
    }
    Ok(toric)
}

/// Element-wise membership of the group in G16 (exact projective equality).
pub fn contained_in_g16(group: &FiniteGroup<SurfaceAut>) -> bool {
    let g16 = g16();
    group.elements.iter().all(|g| g16.contains(g))
}
