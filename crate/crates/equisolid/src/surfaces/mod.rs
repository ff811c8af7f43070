//! Geometric actions on P1, P2, P1xP1, and the degree-6 del Pezzo surface
//! embedded in P2 x P2 by xu = yv = zw.

mod fixed;
mod orbits;

pub use fixed::{fixed_locus, p1_fixed_points, verify_component_fixed, FixedComponent};
pub use orbits::{
    collinear, conic_row, eval_conic, general_position_p1p1, line_form_from_span,
    minimal_orbit_lengths, on_common_conic, orbit, orbit_lengths_on_conic, substitute_conic,
    OrbitFamily, OrbitReport, ShortOrbitInventory,
};

/// Exact points of a line (given by its linear form) on a conic.
pub fn line_conic_points_for(
    line_form: &[crate::cyclo::CycNum],
    conic: &[crate::cyclo::CycNum],
) -> Result<Vec<Vec<crate::cyclo::CycNum>>, crate::error::Error> {
    fixed::line_conic_points_pub(line_form, conic)
}

use crate::cyclo::CycNum;
use crate::error::Error;
use crate::linalg::CMat;
use crate::matgroup::{Element, ProjMat};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Model {
    P1,
    P2,
    P1xP1,
    Dp6,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Model::P1 => "P1",
            Model::P2 => "P2",
            Model::P1xP1 => "P1xP1",
            Model::Dp6 => "dP6",
        };
        write!(f, "{s}")
    }
}

/// Automorphism of one of the four surface models. Product models carry a
/// factor-swap bit with the composition law
/// `(A,B;1)(C,D;d) = (AD, BC; 1^d)` and `(A,B;0)(C,D;d) = (AC, BD; d)`;
/// a swap element acts by `(p, q) -> (A q, B p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SurfaceAut {
    P1(ProjMat),
    P2(ProjMat),
    P1xP1 { a: ProjMat, b: ProjMat, swap: bool },
    Dp6 { a: ProjMat, b: ProjMat, swap: bool },
}

impl SurfaceAut {
    pub fn model(&self) -> Model {
        match self {
            SurfaceAut::P1(_) => Model::P1,
            SurfaceAut::P2(_) => Model::P2,
            SurfaceAut::P1xP1 { .. } => Model::P1xP1,
            SurfaceAut::Dp6 { .. } => Model::Dp6,
        }
    }

    pub fn p1(m: ProjMat) -> Self {
        assert_eq!(m.dim(), 2);
        SurfaceAut::P1(m)
    }

    pub fn p2(m: ProjMat) -> Self {
        assert_eq!(m.dim(), 3);
        SurfaceAut::P2(m)
    }

    pub fn p1xp1(a: ProjMat, b: ProjMat, swap: bool) -> Self {
        assert_eq!(a.dim(), 2);
        assert_eq!(b.dim(), 2);
        SurfaceAut::P1xP1 { a, b, swap }
    }

    /// dP6 elements must preserve span{xu - yv, xu - zw}; rejected otherwise.
    pub fn dp6(a: ProjMat, b: ProjMat, swap: bool) -> Result<Self, Error> {
        assert_eq!(a.dim(), 3);
        assert_eq!(b.dim(), 3);
        if !dp6_membership(&a, &b, swap) {
            return Err(Error::NotAnAutomorphism(
                "pullback does not preserve the span of the two bilinear surface forms".into(),
            ));
        }
        Ok(SurfaceAut::Dp6 { a, b, swap })
    }

    pub fn identity(model: Model) -> Self {
        match model {
            Model::P1 => SurfaceAut::P1(ProjMat::new(CMat::identity(2))),
            Model::P2 => SurfaceAut::P2(ProjMat::new(CMat::identity(3))),
            Model::P1xP1 => SurfaceAut::P1xP1 {
                a: ProjMat::new(CMat::identity(2)),
                b: ProjMat::new(CMat::identity(2)),
                swap: false,
            },
            Model::Dp6 => SurfaceAut::Dp6 {
                a: ProjMat::new(CMat::identity(3)),
                b: ProjMat::new(CMat::identity(3)),
                swap: false,
            },
        }
    }

    pub fn swap_bit(&self) -> bool {
        match self {
            SurfaceAut::P1xP1 { swap, .. } | SurfaceAut::Dp6 { swap, .. } => *swap,
            _ => false,
        }
    }

    pub fn factors(&self) -> Option<(&ProjMat, &ProjMat)> {
        match self {
            SurfaceAut::P1xP1 { a, b, .. } | SurfaceAut::Dp6 { a, b, .. } => Some((a, b)),
            _ => None,
        }
    }

    pub fn inverse(&self) -> SurfaceAut {
        match self {
            SurfaceAut::P1(m) => SurfaceAut::P1(m.inverse()),
            SurfaceAut::P2(m) => SurfaceAut::P2(m.inverse()),
            SurfaceAut::P1xP1 { a, b, swap: false } => {
                SurfaceAut::P1xP1 { a: a.inverse(), b: b.inverse(), swap: false }
            }
            // (A,B;1)^-1 = (B^-1, A^-1; 1)
            SurfaceAut::P1xP1 { a, b, swap: true } => {
                SurfaceAut::P1xP1 { a: b.inverse(), b: a.inverse(), swap: true }
            }
            SurfaceAut::Dp6 { a, b, swap: false } => {
                SurfaceAut::Dp6 { a: a.inverse(), b: b.inverse(), swap: false }
            }
            SurfaceAut::Dp6 { a, b, swap: true } => {
                SurfaceAut::Dp6 { a: b.inverse(), b: a.inverse(), swap: true }
            }
        }
    }
}

impl Element for SurfaceAut {
    fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (SurfaceAut::P1(m), SurfaceAut::P1(n)) => SurfaceAut::P1(m.compose(n)),
            (SurfaceAut::P2(m), SurfaceAut::P2(n)) => SurfaceAut::P2(m.compose(n)),
            (
                SurfaceAut::P1xP1 { a, b, swap: s1 },
                SurfaceAut::P1xP1 { a: c, b: d, swap: s2 },
            ) => {
                let (na, nb) = compose_pair(a, b, *s1, c, d);
                SurfaceAut::P1xP1 { a: na, b: nb, swap: s1 ^ s2 }
            }
            (
                SurfaceAut::Dp6 { a, b, swap: s1 },
                SurfaceAut::Dp6 { a: c, b: d, swap: s2 },
            ) => {
                let (na, nb) = compose_pair(a, b, *s1, c, d);
                SurfaceAut::Dp6 { a: na, b: nb, swap: s1 ^ s2 }
            }
            _ => panic!("composing automorphisms of different models"),
        }
    }
}

fn compose_pair(a: &ProjMat, b: &ProjMat, s1: bool, c: &ProjMat, d: &ProjMat) -> (ProjMat, ProjMat) {
    if s1 {
        (a.compose(d), b.compose(c))
    } else {
        (a.compose(c), b.compose(d))
    }
}

/// Point on one of the models; coordinate vectors are scaled so the first
/// nonzero entry is 1, making equality structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SurfacePoint {
    P1(Vec<CycNum>),
    P2(Vec<CycNum>),
    P1xP1(Vec<CycNum>, Vec<CycNum>),
    Dp6(Vec<CycNum>, Vec<CycNum>),
}

pub fn canon_vec(v: &[CycNum]) -> Vec<CycNum> {
    let pivot = v.iter().find(|x| !x.is_zero()).expect("nonzero coordinate vector");
    if pivot.is_one() {
        return v.to_vec();
    }
    let inv = pivot.inverse().expect("nonzero");
    v.iter().map(|x| x.mul(&inv)).collect()
}

impl SurfacePoint {
    pub fn model(&self) -> Model {
        match self {
            SurfacePoint::P1(_) => Model::P1,
            SurfacePoint::P2(_) => Model::P2,
            SurfacePoint::P1xP1(..) => Model::P1xP1,
            SurfacePoint::Dp6(..) => Model::Dp6,
        }
    }

    pub fn p1(v: &[CycNum]) -> Self {
        assert_eq!(v.len(), 2);
        SurfacePoint::P1(canon_vec(v))
    }

    pub fn p2(v: &[CycNum]) -> Self {
        assert_eq!(v.len(), 3);
        SurfacePoint::P2(canon_vec(v))
    }

    pub fn p2_i64(x: i64, y: i64, z: i64) -> Self {
        Self::p2(&[CycNum::from_i64(x), CycNum::from_i64(y), CycNum::from_i64(z)])
    }

    pub fn p1xp1(p: &[CycNum], q: &[CycNum]) -> Self {
        assert_eq!(p.len(), 2);
        assert_eq!(q.len(), 2);
        SurfacePoint::P1xP1(canon_vec(p), canon_vec(q))
    }

    /// Affine point (1:x) x (1:y) of P1 x P1.
    pub fn p1xp1_affine(x: CycNum, y: CycNum) -> Self {
        SurfacePoint::P1xP1(
            canon_vec(&[CycNum::one(), x]),
            canon_vec(&[CycNum::one(), y]),
        )
    }

    pub fn dp6(p: &[CycNum], q: &[CycNum]) -> Result<Self, Error> {
        assert_eq!(p.len(), 3);
        assert_eq!(q.len(), 3);
        let pt = SurfacePoint::Dp6(canon_vec(p), canon_vec(q));
        if !pt.on_dp6_surface() {
            return Err(Error::Precondition("point does not satisfy xu = yv = zw".into()));
        }
        Ok(pt)
    }

    pub fn on_dp6_surface(&self) -> bool {
        match self {
            SurfacePoint::Dp6(p, q) => {
                let xu = p[0].mul(&q[0]);
                let yv = p[1].mul(&q[1]);
                let zw = p[2].mul(&q[2]);
                xu == yv && xu == zw
            }
            _ => false,
        }
    }

    /// Render as coordinate strings in the scalar grammar.
    pub fn render(&self) -> String {
        let rv = |v: &[CycNum]| {
            format!(
                "({})",
                v.iter().map(crate::cyclo::render_scalar).collect::<Vec<_>>().join(":")
            )
        };
        match self {
            SurfacePoint::P1(v) | SurfacePoint::P2(v) => rv(v),
            SurfacePoint::P1xP1(p, q) | SurfacePoint::Dp6(p, q) => {
                format!("{}x{}", rv(p), rv(q))
            }
        }
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Exact image of a point, canonically scaled.
pub fn act(g: &SurfaceAut, p: &SurfacePoint) -> Result<SurfacePoint, Error> {
    if g.model() != p.model() {
        return Err(Error::ModelMismatch {
            expected: g.model().to_string(),
            got: p.model().to_string(),
        });
    }
    Ok(match (g, p) {
        (SurfaceAut::P1(m), SurfacePoint::P1(v)) => SurfacePoint::P1(canon_vec(&m.mat().apply(v))),
        (SurfaceAut::P2(m), SurfacePoint::P2(v)) => SurfacePoint::P2(canon_vec(&m.mat().apply(v))),
        (SurfaceAut::P1xP1 { a, b, swap }, SurfacePoint::P1xP1(p, q)) => {
            let (p, q) = if *swap { (q, p) } else { (p, q) };
            SurfacePoint::P1xP1(canon_vec(&a.mat().apply(p)), canon_vec(&b.mat().apply(q)))
        }
        (SurfaceAut::Dp6 { a, b, swap }, SurfacePoint::Dp6(p, q)) => {
            let (p, q) = if *swap { (q, p) } else { (p, q) };
            let out = SurfacePoint::Dp6(canon_vec(&a.mat().apply(p)), canon_vec(&b.mat().apply(q)));
            debug_assert!(out.on_dp6_surface(), "dP6 automorphisms preserve the surface");
            out
        }
        _ => unreachable!("models already checked"),
    })
}

/// The two bilinear forms cutting the surface: xu - yv and xu - zw, as 3x3
/// coefficient matrices `B(p,q) = p^T Q q`.
pub fn dp6_forms() -> (CMat, CMat) {
    let mut q1 = CMat::zero(3, 3);
    q1.set(0, 0, CycNum::one());
    q1.set(1, 1, CycNum::from_i64(-1));
    let mut q2 = CMat::zero(3, 3);
    q2.set(0, 0, CycNum::one());
    q2.set(2, 2, CycNum::from_i64(-1));
    (q1, q2)
}

/// True iff the pullback of span{xu - yv, xu - zw} under `(a, b; swap)`
/// equals the same span.
pub fn dp6_membership(a: &ProjMat, b: &ProjMat, swap: bool) -> bool {
    let (q1, q2) = dp6_forms();
    let pullback = |q: &CMat| -> CMat {
        // non-swap: B'(p,q) = B(Ap, Bq) = p^T (A^T Q B) q
        // swap:     B'(p,q) = B(Aq, Bp) = p^T (A^T Q B)^T q
        let m = a.mat().transpose().matmul(q).matmul(b.mat());
        if swap { m.transpose() } else { m }
    };
    let in_span = |m: &CMat| -> bool {
        // alpha, beta forced by the (1,1) and (2,2) entries
        let alpha = m.at(1, 1).neg();
        let beta = m.at(2, 2).neg();
        for i in 0..3 {
            for j in 0..3 {
                let want = alpha.mul(q1.at(i, j)).add(&beta.mul(q2.at(i, j)));
                if *m.at(i, j) != want {
                    return false;
                }
            }
        }
        true
    };
    in_span(&pullback(&q1)) && in_span(&pullback(&q2))
}

#[cfg(test)]
pub mod tests;
