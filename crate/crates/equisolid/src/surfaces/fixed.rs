//! Pointwise-fixed loci of finite automorphism groups, computed from linear
//! characters of lifted matrix groups. No characteristic polynomial is ever
//! solved: every eigenvector comes out of an exact isotypic projector.

use super::{act, canon_vec, Model, SurfaceAut, SurfacePoint};
use crate::cyclo::CycNum;
use crate::error::Error;
use crate::linalg::{self, CMat};
use crate::matgroup::{
    self, abelian_invariant_factors, direct_product, find_isomorphism, lift_closure, named,
    Element, FiniteGroup, Mat, ProjMat,
};

/// A connected pointwise-fixed component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedComponent {
    Point(SurfacePoint),
    /// Pointwise-fixed projective line in P2, as a basis pair.
    LineP2 { span: [Vec<CycNum>; 2] },
    /// Trivial action on P2: the whole plane (degenerate flag).
    PlaneP2,
    /// Trivial action on P1.
    WholeP1,
    /// On P1xP1: `{at} x P1` (factor = 0) or `P1 x {at}` (factor = 1).
    RulingLine { factor: usize, at: Vec<CycNum> },
    /// On P1xP1: the twisted diagonal `{(p, B p)}` of a swap involution.
    GraphP1 { b: ProjMat },
    /// On dP6: point x line (or line x point) lying on the surface.
    Dp6Curve { point_first: bool, point: Vec<CycNum>, line: [Vec<CycNum>; 2] },
    /// On dP6: `{(p, B p) : conic(p) = 0}` for an order-2 factor swap.
    Dp6GraphConic { b: ProjMat, conic: Vec<CycNum> },
}

impl FixedComponent {
    pub fn dimension(&self) -> usize {
        match self {
            FixedComponent::Point(_) => 0,
            FixedComponent::PlaneP2 => 2,
            _ => 1,
        }
    }

    /// Three exact sample points, enough to certify pointwise fixedness of a
    /// rational curve component under a projective transformation.
    pub fn sample_points(&self) -> Vec<SurfacePoint> {
        let one = CycNum::one();
        let zero = CycNum::zero();
        let params: [(CycNum, CycNum); 3] =
            [(one.clone(), zero.clone()), (zero.clone(), one.clone()), (one.clone(), one.clone())];
        match self {
            FixedComponent::Point(p) => vec![p.clone()],
            FixedComponent::LineP2 { span } => params
                .iter()
                .map(|(s, t)| {
                    let v: Vec<CycNum> = (0..3)
                        .map(|i| span[0][i].mul(s).add(&span[1][i].mul(t)))
                        .collect();
                    SurfacePoint::p2(&v)
                })
                .collect(),
            FixedComponent::PlaneP2 => vec![
                SurfacePoint::p2_i64(1, 0, 0),
                SurfacePoint::p2_i64(0, 1, 0),
                SurfacePoint::p2_i64(0, 0, 1),
                SurfacePoint::p2_i64(1, 1, 1),
            ],
            FixedComponent::WholeP1 => params
                .iter()
                .map(|(s, t)| SurfacePoint::p1(&[s.clone(), t.clone()]))
                .collect(),
            FixedComponent::RulingLine { factor, at } => params
                .iter()
                .map(|(s, t)| {
                    let q = vec![s.clone(), t.clone()];
                    if *factor == 0 {
                        SurfacePoint::p1xp1(at, &q)
                    } else {
                        SurfacePoint::p1xp1(&q, at)
                    }
                })
                .collect(),
            FixedComponent::GraphP1 { b } => params
                .iter()
                .map(|(s, t)| {
                    let p = vec![s.clone(), t.clone()];
                    SurfacePoint::p1xp1(&p, &b.mat().apply(&p))
                })
                .collect(),
            FixedComponent::Dp6Curve { point_first, point, line } => params
                .iter()
                .filter_map(|(s, t)| {
                    let q: Vec<CycNum> = (0..3)
                        .map(|i| line[0][i].mul(s).add(&line[1][i].mul(t)))
                        .collect();
                    let pt = if *point_first {
                        SurfacePoint::dp6(point, &q)
                    } else {
                        SurfacePoint::dp6(&q, point)
                    };
                    pt.ok()
                })
                .collect(),
            FixedComponent::Dp6GraphConic { .. } => vec![],
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FixedComponent::Point(p) => format!("point {}", p.render()),
            FixedComponent::LineP2 { span } => format!(
                "line span {} , {}",
                SurfacePoint::p2(&span[0]).render(),
                SurfacePoint::p2(&span[1]).render()
            ),
            FixedComponent::PlaneP2 => "whole plane (trivial action)".into(),
            FixedComponent::WholeP1 => "whole line (trivial action)".into(),
            FixedComponent::RulingLine { factor, at } => {
                let at = SurfacePoint::p1(at).render();
                if *factor == 0 {
                    format!("ruling {at} x P1")
                } else {
                    format!("ruling P1 x {at}")
                }
            }
            FixedComponent::GraphP1 { .. } => "twisted diagonal {(p, B p)}".into(),
            FixedComponent::Dp6Curve { point_first, point, line } => {
                let p = SurfacePoint::p2(point).render();
                let l = format!(
                    "[{}, {}]",
                    SurfacePoint::p2(&line[0]).render(),
                    SurfacePoint::p2(&line[1]).render()
                );
                if *point_first {
                    format!("curve {p} x {l}")
                } else {
                    format!("curve {l} x {p}")
                }
            }
            FixedComponent::Dp6GraphConic { conic, .. } => {
                format!("graph curve over conic {:?}", conic.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            }
        }
    }
}

/// Isotypic fixed-space decomposition of a lifted finite linear group:
/// subspaces on which the group acts by each linear character.
fn isotypic_spaces(lift: &FiniteGroup<Mat>) -> Result<Vec<Vec<Vec<CycNum>>>, Error> {
    let dim = lift.elements[0].dim();
    let order = lift.order();
    // linear characters = characters of the abelianization
    let derived = lift.table.derived_subgroup();
    let (ab, _reps, to_ab) = lift.table.quotient(&derived);
    let inv = abelian_invariant_factors(&ab);
    // coordinates: explicit isomorphism onto the product of cyclic groups
    let mut model = named::cyclic(1);
    for &d in &inv {
        model = direct_product(&model, &named::cyclic(d as usize));
    }
    let iso = find_isomorphism(&ab, &model)?
        .ok_or_else(|| Error::HypothesisFailed("abelianization decomposition failed".into()))?;
    let coords = |g_idx: u32| -> Vec<u32> {
        let mut idx = iso[to_ab[g_idx as usize] as usize];
        let mut out = vec![0u32; inv.len()];
        for (i, &d) in inv.iter().enumerate().rev() {
            out[i] = idx % d;
            idx /= d;
        }
        out
    };
    // all character tuples
    let mut tuples: Vec<Vec<u32>> = vec![vec![]];
    for &d in &inv {
        let mut next = Vec::new();
        for t in &tuples {
            for j in 0..d {
                let mut t2 = t.clone();
                t2.push(j);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let inv_order = CycNum::from_i64(order as i64).inverse()?;
    let mut spaces = Vec::new();
    for tuple in &tuples {
        // P = (1/|G|) sum_g lambda(g)^-1 rho(g)
        let mut p = CMat::zero(dim, dim);
        for (gi, g) in lift.elements.iter().enumerate() {
            let cs = coords(gi as u32);
            let mut lam_inv = CycNum::one();
            for (i, &d) in inv.iter().enumerate() {
                if tuple[i] != 0 && cs[i] != 0 {
                    let e = (tuple[i] as i64) * (cs[i] as i64);
                    lam_inv = lam_inv.mul(&CycNum::root_of_unity(d, -e));
                }
            }
            p = p.add(&g.0.scale(&lam_inv));
        }
        p = p.scale(&inv_order);
        let basis = linalg::column_space(&p);
        if !basis.is_empty() {
            spaces.push(basis);
        }
    }
    Ok(spaces)
}

/// Fixed points of a projective 2x2 group on P1: `Points(..)` or the whole
/// line for the trivial group.
pub fn p1_fixed_points(mats: &[ProjMat]) -> Result<Vec<FixedComponent>, Error> {
    let nontrivial: Vec<Mat> = mats
        .iter()
        .filter(|m| !m.is_identity())
        .map(|m| Mat::new(m.mat().clone()))
        .collect();
    if nontrivial.is_empty() {
        return Ok(vec![FixedComponent::WholeP1]);
    }
    let lift = lift_closure(&nontrivial, matgroup::DEFAULT_CAP)?;
    let mut out = Vec::new();
    for basis in isotypic_spaces(&lift)? {
        match basis.len() {
            1 => out.push(FixedComponent::Point(SurfacePoint::p1(&basis[0]))),
            2 => return Ok(vec![FixedComponent::WholeP1]),
            _ => {}
        }
    }
    Ok(out)
}

/// Fixed locus on P2 via the isotypic decomposition of the lifted group.
fn p2_fixed_locus(mats: &[ProjMat]) -> Result<Vec<FixedComponent>, Error> {
    let nontrivial: Vec<Mat> = mats
        .iter()
        .filter(|m| !m.is_identity())
        .map(|m| Mat::new(m.mat().clone()))
        .collect();
    if nontrivial.is_empty() {
        return Ok(vec![FixedComponent::PlaneP2]);
    }
    let lift = lift_closure(&nontrivial, matgroup::DEFAULT_CAP)?;
    let mut out = Vec::new();
    for basis in isotypic_spaces(&lift)? {
        match basis.len() {
            1 => out.push(FixedComponent::Point(SurfacePoint::p2(&basis[0]))),
            2 => out.push(FixedComponent::LineP2 {
                span: [canon_vec(&basis[0]), canon_vec(&basis[1])],
            }),
            3 => return Ok(vec![FixedComponent::PlaneP2]),
            _ => {}
        }
    }
    Ok(out)
}

/// Pointwise-fixed locus of a finite group of surface automorphisms.
pub fn fixed_locus(group: &FiniteGroup<SurfaceAut>) -> Result<Vec<FixedComponent>, Error> {
    let model = group.elements[0].model();
    match model {
        Model::P1 => {
            let mats: Vec<ProjMat> = group
                .elements
                .iter()
                .map(|g| match g {
                    SurfaceAut::P1(m) => m.clone(),
                    _ => unreachable!(),
                })
                .collect();
            p1_fixed_points(&mats)
        }
        Model::P2 => {
            let mats: Vec<ProjMat> = group
                .elements
                .iter()
                .map(|g| match g {
                    SurfaceAut::P2(m) => m.clone(),
                    _ => unreachable!(),
                })
                .collect();
            p2_fixed_locus(&mats)
        }
        Model::P1xP1 => p1xp1_fixed_locus(group),
        Model::Dp6 => dp6_fixed_locus(group),
    }
}

fn swap_free_part(group: &FiniteGroup<SurfaceAut>) -> (Vec<SurfaceAut>, Option<SurfaceAut>) {
    let mut free = Vec::new();
    let mut swap = None;
    for g in &group.elements {
        if g.swap_bit() {
            if swap.is_none() {
                swap = Some(g.clone());
            }
        } else {
            free.push(g.clone());
        }
    }
    (free, swap)
}

fn p1xp1_fixed_locus(group: &FiniteGroup<SurfaceAut>) -> Result<Vec<FixedComponent>, Error> {
    let (free, swap) = swap_free_part(group);
    // fixed locus of the swap-free part, factor-wise
    let a_mats: Vec<ProjMat> = free.iter().map(|g| g.factors().unwrap().0.clone()).collect();
    let b_mats: Vec<ProjMat> = free.iter().map(|g| g.factors().unwrap().1.clone()).collect();
    let base: Vec<FixedComponent> = if free.len() <= 1 {
        // only the identity is swap-free: handled by the swap analysis below
        Vec::new()
    } else {
        let fix_a = p1_fixed_points(&a_mats)?;
        let fix_b = p1_fixed_points(&b_mats)?;
        let mut out = Vec::new();
        for fa in &fix_a {
            for fb in &fix_b {
                match (fa, fb) {
                    (FixedComponent::Point(SurfacePoint::P1(p)), FixedComponent::Point(SurfacePoint::P1(q))) => {
                        out.push(FixedComponent::Point(SurfacePoint::p1xp1(p, q)));
                    }
                    (FixedComponent::Point(SurfacePoint::P1(p)), FixedComponent::WholeP1) => {
                        out.push(FixedComponent::RulingLine { factor: 0, at: p.clone() });
                    }
                    (FixedComponent::WholeP1, FixedComponent::Point(SurfacePoint::P1(q))) => {
                        out.push(FixedComponent::RulingLine { factor: 1, at: q.clone() });
                    }
                    _ => {}
                }
            }
        }
        out
    };
    let Some(g) = swap else {
        if free.len() <= 1 {
            return Err(Error::Precondition(
                "trivial group on P1xP1 fixes the whole surface".into(),
            ));
        }
        return Ok(base);
    };
    let (a, b) = g.factors().unwrap();
    if free.len() <= 1 {
        // cyclic of order 2 generated by a swap: fixed locus is
        // {(p, B p) : p in Fix(A B)}
        let ab = a.compose(b);
        if ab.is_identity() {
            return Ok(vec![FixedComponent::GraphP1 { b: b.clone() }]);
        }
        let mut out = Vec::new();
        for c in p1_fixed_points(&[ab])? {
            if let FixedComponent::Point(SurfacePoint::P1(p)) = c {
                let q = canon_vec(&b.mat().apply(&p));
                out.push(FixedComponent::Point(SurfacePoint::p1xp1(&p, &q)));
            }
        }
        return Ok(out);
    }
    // intersect the swap-free fixed locus with Fix(g)
    let mut out = Vec::new();
    for comp in base {
        match comp {
            FixedComponent::Point(p) => {
                if act(&g, &p)? == p {
                    out.push(FixedComponent::Point(p));
                }
            }
            FixedComponent::RulingLine { factor, at } => {
                // points (at, q) (resp. (q, at)) fixed by g: q forced
                let (p, q) = if factor == 0 {
                    // g(at, q) = (A q, B at): need A q ~ at and B at ~ q
                    let q = canon_vec(&b.mat().apply(&at));
                    (at.clone(), q)
                } else {
                    let p = canon_vec(&a.mat().apply(&at));
                    (p, at.clone())
                };
                let cand = SurfacePoint::p1xp1(&p, &q);
                if act(&g, &cand)? == cand {
                    out.push(FixedComponent::Point(cand));
                }
            }
            other => out.push(other),
        }
    }
    out.sort_by_key(component_sort_key);
    out.dedup();
    Ok(out)
}

fn dp6_fixed_locus(group: &FiniteGroup<SurfaceAut>) -> Result<Vec<FixedComponent>, Error> {
    if group.order() == 1 {
        return Err(Error::Precondition("trivial group on dP6 fixes the whole surface".into()));
    }
    let (free, swap) = swap_free_part(group);
    if free.len() <= 1 {
        let g = swap.expect("nontrivial group");
        return dp6_pure_swap_fixed(&g);
    }
    let a_mats: Vec<ProjMat> = free.iter().map(|g| g.factors().unwrap().0.clone()).collect();
    let b_mats: Vec<ProjMat> = free.iter().map(|g| g.factors().unwrap().1.clone()).collect();
    let fix_a = p2_fixed_locus(&a_mats)?;
    let fix_b = p2_fixed_locus(&b_mats)?;
    let mut base = Vec::new();
    for fa in &fix_a {
        for fb in &fix_b {
            base.extend(dp6_combine(fa, fb)?);
        }
    }
    let Some(g) = swap else {
        base.sort_by_key(component_sort_key);
        base.dedup();
        return Ok(base);
    };
    let mut out = Vec::new();
    for comp in base {
        match comp {
            FixedComponent::Point(p) => {
                if act(&g, &p)? == p {
                    out.push(FixedComponent::Point(p));
                }
            }
            FixedComponent::Dp6Curve { point_first, point, line } => {
                // fixed points of the swap g on the curve: linear in the
                // line parameter because one factor is constant
                let (a, b) = g.factors().unwrap();
                // curve points: point_first: (P, q(t)); image (A q(t), B P)
                // fixedness: A q(t) ~ P and q(t) ~ B P
                let (m_to_point, m_from_point) =
                    if point_first { (a, b) } else { (b, a) };
                let q = canon_vec(&m_from_point.mat().apply(&point));
                // q must lie on the line span
                if let Some(_c) = linalg::solve_in_span(
                    &[line[0].clone(), line[1].clone()],
                    &q,
                ) {
                    let img = canon_vec(&m_to_point.mat().apply(&q));
                    if img == canon_vec(&point) {
                        let cand = if point_first {
                            SurfacePoint::dp6(&point, &q)
                        } else {
                            SurfacePoint::dp6(&q, &point)
                        };
                        if let Ok(cand) = cand {
                            if act(&g, &cand)? == cand {
                                out.push(FixedComponent::Point(cand));
                            }
                        }
                    }
                }
            }
            other => out.push(other),
        }
    }
    out.sort_by_key(component_sort_key);
    out.dedup();
    Ok(out)
}

/// Intersect a product of factor components with the surface xu = yv = zw.
fn dp6_combine(
    fa: &FixedComponent,
    fb: &FixedComponent,
) -> Result<Vec<FixedComponent>, Error> {
    use FixedComponent::*;
    let (q1, q2) = super::dp6_forms();
    let eval = |p: &[CycNum], q: &[CycNum], m: &CMat| -> CycNum {
        let mq = m.apply(q);
        (0..3).fold(CycNum::zero(), |acc, i| acc.add(&p[i].mul(&mq[i])))
    };
    match (fa, fb) {
        (Point(SurfacePoint::P2(p)), Point(SurfacePoint::P2(q))) => {
            Ok(match SurfacePoint::dp6(p, q) {
                Ok(pt) => vec![Point(pt)],
                Err(_) => vec![],
            })
        }
        (Point(SurfacePoint::P2(p)), LineP2 { span }) => {
            Ok(point_line_on_surface(p, span, true, &q1, &q2, eval))
        }
        (LineP2 { span }, Point(SurfacePoint::P2(q))) => {
            Ok(point_line_on_surface(q, span, false, &q1, &q2, eval))
        }
        (LineP2 { span: s1 }, LineP2 { span: s2 }) => line_line_on_surface(s1, s2),
        (PlaneP2, Point(SurfacePoint::P2(q))) => {
            // {p : B_i(p, q) = 0 for both forms}: two linear conditions on p
            let rows: Vec<Vec<CycNum>> = [&q1, &q2]
                .iter()
                .map(|m| m.apply(q))
                .collect();
            let kern = linalg::kernel(&rows);
            Ok(match kern.len() {
                1 => match SurfacePoint::dp6(&canon_vec(&kern[0]), q) {
                    Ok(pt) => vec![Point(pt)],
                    Err(_) => vec![],
                },
                2 => vec![Dp6Curve {
                    point_first: false,
                    point: canon_vec(q),
                    line: [canon_vec(&kern[0]), canon_vec(&kern[1])],
                }],
                _ => vec![],
            })
        }
        (Point(SurfacePoint::P2(p)), PlaneP2) => {
            let rows: Vec<Vec<CycNum>> = [&q1, &q2]
                .iter()
                .map(|m| m.transpose().apply(p))
                .collect();
            let kern = linalg::kernel(&rows);
            Ok(match kern.len() {
                1 => match SurfacePoint::dp6(p, &canon_vec(&kern[0])) {
                    Ok(pt) => vec![Point(pt)],
                    Err(_) => vec![],
                },
                2 => vec![Dp6Curve {
                    point_first: true,
                    point: canon_vec(p),
                    line: [canon_vec(&kern[0]), canon_vec(&kern[1])],
                }],
                _ => vec![],
            })
        }
        _ => Err(Error::NotRepresentable(
            "fixed locus with 2-dimensional factor components on dP6 is out of scope".into(),
        )),
    }
}

fn point_line_on_surface(
    p: &[CycNum],
    span: &[Vec<CycNum>; 2],
    point_first: bool,
    q1: &CMat,
    q2: &CMat,
    eval: impl Fn(&[CycNum], &[CycNum], &CMat) -> CycNum,
) -> Vec<FixedComponent> {
    // B(p, q0 + t q1) = B(p, q0) + t B(p, q1): solve two linear equations in t
    let pair = |m: &CMat| -> (CycNum, CycNum) {
        if point_first {
            (eval(p, &span[0], m), eval(p, &span[1], m))
        } else {
            (eval(&span[0], p, m), eval(&span[1], p, m))
        }
    };
    let (a1, b1) = pair(q1);
    let (a2, b2) = pair(q2);
    // solutions (s : t) of s*a + t*b = 0 for both forms
    let rows = vec![vec![a1, b1], vec![a2, b2]];
    let kern = linalg::kernel(&rows);
    match kern.len() {
        0 => vec![],
        1 => {
            let st = &kern[0];
            let q: Vec<CycNum> = (0..3)
                .map(|i| span[0][i].mul(&st[0]).add(&span[1][i].mul(&st[1])))
                .collect();
            if q.iter().all(|c| c.is_zero()) {
                return vec![];
            }
            let pt = if point_first {
                SurfacePoint::dp6(p, &canon_vec(&q))
            } else {
                SurfacePoint::dp6(&canon_vec(&q), p)
            };
            match pt {
                Ok(pt) => vec![FixedComponent::Point(pt)],
                Err(_) => vec![],
            }
        }
        2 => vec![FixedComponent::Dp6Curve {
            point_first,
            point: canon_vec(p),
            line: [canon_vec(&span[0]), canon_vec(&span[1])],
        }],
        _ => unreachable!(),
    }
}

/// line x line on the surface: two bilinear equations in (s, t); finite
/// solutions are extracted when each bilinear form factors through a linear
/// solve, otherwise this is out of representable scope.
fn line_line_on_surface(
    s1: &[Vec<CycNum>; 2],
    s2: &[Vec<CycNum>; 2],
) -> Result<Vec<FixedComponent>, Error> {
    let (q1, q2) = super::dp6_forms();
    // B(s, t) as 2x2 coefficient matrices over the two line parameters
    let coeff = |m: &CMat| -> CMat {
        CMat::from_fn(2, 2, |i, j| {
            let mq = m.apply(&s2[j]);
            (0..3).fold(CycNum::zero(), |acc, k| acc.add(&s1[i][k].mul(&mq[k])))
        })
    };
    let c1 = coeff(&q1);
    let c2 = coeff(&q2);
    // For fixed s = (s0 : s1): the two equations are linear in t; a common
    // nonzero t exists iff the 2x2 determinant in s vanishes. That determinant
    // is a quadratic form in s; only the split cases are supported.
    // det [ s^T c1 ; s^T c2 ] where rows are the t-coefficient vectors.
    // Expand: (s c1)_0 (s c2)_1 - (s c1)_1 (s c2)_0 = quadratic in s.
    let a = &c1;
    let b = &c2;
    // quadratic q(s0, s1) = alpha s0^2 + beta s0 s1 + gamma s1^2
    let alpha = a.at(0, 0).mul(b.at(0, 1)).sub(&a.at(0, 1).mul(b.at(0, 0)));
    let gamma = a.at(1, 0).mul(b.at(1, 1)).sub(&a.at(1, 1).mul(b.at(1, 0)));
    let beta = a
        .at(0, 0)
        .mul(b.at(1, 1))
        .add(&a.at(1, 0).mul(b.at(0, 1)))
        .sub(&a.at(0, 1).mul(b.at(1, 0)))
        .sub(&a.at(1, 1).mul(b.at(0, 0)));
    let roots = solve_quadratic(&alpha, &beta, &gamma)?;
    let mut out = Vec::new();
    for (s0, s1v) in roots {
        let p: Vec<CycNum> =
            (0..3).map(|i| s1[0][i].mul(&s0).add(&s1[1][i].mul(&s1v))).collect();
        if p.iter().all(|c| c.is_zero()) {
            continue;
        }
        let p = canon_vec(&p);
        // solve for t
        let rows = vec![
            vec![
                p.iter().zip(q1.apply(&s2[0])).fold(CycNum::zero(), |acc, (x, y)| acc.add(&x.mul(&y))),
                p.iter().zip(q1.apply(&s2[1])).fold(CycNum::zero(), |acc, (x, y)| acc.add(&x.mul(&y))),
            ],
            vec![
                p.iter().zip(q2.apply(&s2[0])).fold(CycNum::zero(), |acc, (x, y)| acc.add(&x.mul(&y))),
                p.iter().zip(q2.apply(&s2[1])).fold(CycNum::zero(), |acc, (x, y)| acc.add(&x.mul(&y))),
            ],
        ];
        for t in linalg::kernel(&rows) {
            let q: Vec<CycNum> =
                (0..3).map(|i| s2[0][i].mul(&t[0]).add(&s2[1][i].mul(&t[1]))).collect();
            if q.iter().all(|c| c.is_zero()) {
                continue;
            }
            if let Ok(pt) = SurfacePoint::dp6(&p, &canon_vec(&q)) {
                out.push(FixedComponent::Point(pt));
            }
        }
    }
    out.sort_by_key(component_sort_key);
    out.dedup();
    Ok(out)
}

/// Roots of a homogeneous quadratic in (s0 : s1) over the cyclotomic field.
/// Supported when the discriminant is rational-times-root-of-unity (see the
/// square-root machinery); degenerate cases fall out naturally.
fn solve_quadratic(
    alpha: &CycNum,
    beta: &CycNum,
    gamma: &CycNum,
) -> Result<Vec<(CycNum, CycNum)>, Error> {
    if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
        return Err(Error::NotRepresentable(
            "identically-zero pencil determinant: infinite intersection".into(),
        ));
    }
    if alpha.is_zero() {
        // s1 (beta s0 + gamma s1) = 0
        let mut out = vec![(CycNum::one(), CycNum::zero())];
        if !beta.is_zero() {
            out.push((gamma.neg().div(beta)?, CycNum::one()));
        }
        return Ok(out);
    }
    // s0 = (-beta ± sqrt(beta^2 - 4 alpha gamma)) / (2 alpha), s1 = 1
    let four = CycNum::from_i64(4);
    let disc = beta.mul(beta).sub(&four.mul(&alpha.mul(gamma)));
    let two_alpha = CycNum::from_i64(2).mul(alpha);
    if disc.is_zero() {
        return Ok(vec![(beta.neg().div(&two_alpha)?, CycNum::one())]);
    }
    let root = crate::cyclo::sqrt_value(&disc)?;
    Ok(vec![
        (beta.neg().add(&root).div(&two_alpha)?, CycNum::one()),
        (beta.neg().sub(&root).div(&two_alpha)?, CycNum::one()),
    ])
}

/// Fixed locus of an order-2 factor swap on dP6: the graph {(p, B p)} cut by
/// two pulled-back conics.
fn dp6_pure_swap_fixed(g: &SurfaceAut) -> Result<Vec<FixedComponent>, Error> {
    let (a, b) = g.factors().unwrap();
    let ab = a.compose(b);
    if !ab.is_identity() {
        // Fix(g) = {(p, B p) : p in Fix(AB)} intersected with the surface:
        // the P2 fixed locus of <AB> gives points and lines; combine.
        let comps = p2_fixed_locus(&[ab])?;
        let mut out = Vec::new();
        for c in comps {
            match c {
                FixedComponent::Point(SurfacePoint::P2(p)) => {
                    let q = canon_vec(&b.mat().apply(&p));
                    if let Ok(pt) = SurfacePoint::dp6(&p, &q) {
                        if act(g, &pt)? == pt {
                            out.push(FixedComponent::Point(pt));
                        }
                    }
                }
                _ => {
                    return Err(Error::NotRepresentable(
                        "swap fixed locus over a positive-dimensional Fix(AB) is out of scope"
                            .into(),
                    ))
                }
            }
        }
        return Ok(out);
    }
    // AB ~ id: graph {(p, Bp)} meets the surface in the common zero locus of
    // two conics in p.
    let (q1, q2) = super::dp6_forms();
    let conic = |m: &CMat| -> Vec<CycNum> {
        // p^T (Q B) p as symmetric coefficients (x2, y2, z2, xy, xz, yz)
        let qb = m.matmul(b.mat());
        vec![
            qb.at(0, 0).clone(),
            qb.at(1, 1).clone(),
            qb.at(2, 2).clone(),
            qb.at(0, 1).add(qb.at(1, 0)),
            qb.at(0, 2).add(qb.at(2, 0)),
            qb.at(1, 2).add(qb.at(2, 1)),
        ]
    };
    let c1 = conic(&q1);
    let c2 = conic(&q2);
    let rows = vec![c1.clone(), c2.clone()];
    let rank = linalg::rank(&rows);
    match rank {
        0 => Err(Error::NotRepresentable("swap graph lies entirely on the surface".into())),
        1 => {
            let c = if c1.iter().any(|x| !x.is_zero()) { c1 } else { c2 };
            Ok(vec![FixedComponent::Dp6GraphConic { b: b.clone(), conic: canon_vec(&c) }])
        }
        _ => {
            // finite intersection of two conics; supported when one is split
            let pts = intersect_conics(&c1, &c2)?;
            let mut out = Vec::new();
            for p in pts {
                let q = canon_vec(&b.mat().apply(&p));
                if let Ok(pt) = SurfacePoint::dp6(&p, &q) {
                    if act(g, &pt)? == pt {
                        out.push(FixedComponent::Point(pt));
                    }
                }
            }
            out.sort_by_key(component_sort_key);
            out.dedup();
            Ok(out)
        }
    }
}

/// Intersection points of two distinct conics, exact, supported when at least
/// one combination in the pencil splits into two lines with representable
/// square roots.
fn intersect_conics(c1: &[CycNum], c2: &[CycNum]) -> Result<Vec<Vec<CycNum>>, Error> {
    // try c1, c2, c1 + k c2 for small k: find one with matrix rank <= 2
    let as_mat = |c: &[CycNum]| -> CMat {
        let half = crate::cyclo::rat_frac(1, 2);
        let h = |i: usize| CycNum::from_rat(half.clone()).mul(&c[i]);
        CMat::new(
            3,
            3,
            vec![
                c[0].clone(), h(3), h(4),
                h(3), c[1].clone(), h(5),
                h(4), h(5), c[2].clone(),
            ],
        )
    };
    let combos: Vec<(Vec<CycNum>, Vec<CycNum>)> = {
        let mut v = vec![(c1.to_vec(), c2.to_vec()), (c2.to_vec(), c1.to_vec())];
        for k in [1i64, -1, 2, -2, 3] {
            let kc = CycNum::from_i64(k);
            let sum: Vec<CycNum> =
                c1.iter().zip(c2.iter()).map(|(a, b)| a.add(&b.mul(&kc))).collect();
            v.push((sum, c2.to_vec()));
        }
        v
    };
    for (split_me, other) in combos {
        if split_me.iter().all(|c| c.is_zero()) {
            continue;
        }
        let m = as_mat(&split_me);
        let rows: Vec<Vec<CycNum>> =
            (0..3).map(|i| (0..3).map(|j| m.at(i, j).clone()).collect()).collect();
        if linalg::rank(&rows) <= 2 {
            if let Ok(lines) = split_conic(&split_me) {
                let mut out = Vec::new();
                for line in lines {
                    out.extend(line_conic_points(&line, &other)?);
                }
                out = out.into_iter().map(|p| canon_vec(&p)).collect();
                out.sort();
                out.dedup();
                return Ok(out);
            }
        }
    }
    Err(Error::NotRepresentable(
        "conic intersection without a representable split member".into(),
    ))
}

/// Split a rank <= 2 conic into its two linear factors.
fn split_conic(c: &[CycNum]) -> Result<Vec<Vec<CycNum>>, Error> {
    // q(x,y,z) = c0 x^2 + c1 y^2 + c2 z^2 + c3 xy + c4 xz + c5 yz, rank <= 2.
    // Choose a variable with nonzero square coefficient and complete the
    // square; if none, the quadric is already a product of distinct
    // coordinate-ish forms.
    let [c0, c1, c2, c3, c4, c5] = [&c[0], &c[1], &c[2], &c[3], &c[4], &c[5]];
    let two = CycNum::from_i64(2);
    if !c0.is_zero() {
        // q = c0 (x + (c3 y + c4 z)/(2 c0))^2 + (rest in y, z)
        let l1 = |co: &CycNum| co.div(&two.mul(c0));
        let (ay, az) = (l1(c3)?, l1(c4)?);
        // rest = (c1 - c0 ay^2) y^2 + (c2 - c0 az^2) z^2 + (c5 - 2 c0 ay az) yz
        let ry = c1.sub(&c0.mul(&ay.mul(&ay)));
        let rz = c2.sub(&c0.mul(&az.mul(&az)));
        let ryz = c5.sub(&two.mul(c0).mul(&ay.mul(&az)));
        // rank <= 2 means rest = -c0 (b y + c z)^2 for some b, c
        // solve: -c0 b^2 = ry, -c0 c^2 = rz, -2 c0 b c = ryz
        let b2 = ry.neg().div(c0)?;
        let b = crate::cyclo::sqrt_value(&b2)?;
        let cc = if b.is_zero() {
            crate::cyclo::sqrt_value(&rz.neg().div(c0)?)?
        } else {
            ryz.neg().div(&two.mul(c0).mul(&b))?
        };
        // verify
        let check = rz.sub(&cc.mul(&cc).mul(&c0.neg()));
        if !check.is_zero() {
            return Err(Error::NotRepresentable("conic does not split over the field".into()));
        }
        // q = c0 [ (x + ay y + az z)^2 - (b y + cc z)^2 ] = c0 L1 L2
        let mk = |sign: i64| -> Vec<CycNum> {
            let s = CycNum::from_i64(sign);
            vec![
                CycNum::one(),
                ay.add(&b.mul(&s)),
                az.add(&cc.mul(&s)),
            ]
        };
        return Ok(vec![mk(1), mk(-1)]);
    }
    if !c1.is_zero() || !c2.is_zero() {
        // permute coordinates so the square lands on x, reuse, permute back
        let (perm, inv): (Vec<usize>, Vec<usize>) = if !c1.is_zero() {
            (vec![1, 0, 2], vec![1, 0, 2])
        } else {
            (vec![2, 1, 0], vec![2, 1, 0])
        };
        let permuted = permute_conic(c, &perm);
        let lines = split_conic(&permuted)?;
        return Ok(lines.iter().map(|l| inv.iter().map(|&i| l[i].clone()).collect()).collect());
    }
    // no square terms: q = c3 xy + c4 xz + c5 yz with rank <= 2 forces one of
    // the cross terms to vanish; q = x (c3 y + c4 z) when c5 = 0
    if c5.is_zero() {
        return Ok(vec![
            vec![CycNum::one(), CycNum::zero(), CycNum::zero()],
            vec![CycNum::zero(), c3.clone(), c4.clone()],
        ]);
    }
    if c3.is_zero() {
        return Ok(vec![
            vec![CycNum::zero(), CycNum::zero(), CycNum::one()],
            vec![c4.clone(), c5.clone(), CycNum::zero()],
        ]);
    }
    if c4.is_zero() {
        return Ok(vec![
            vec![CycNum::zero(), CycNum::one(), CycNum::zero()],
            vec![c3.clone(), CycNum::zero(), c5.clone()],
        ]);
    }
    Err(Error::NotRepresentable("cross-term conic with full rank cannot split".into()))
}

fn permute_conic(c: &[CycNum], perm: &[usize]) -> Vec<CycNum> {
    // coefficients order: x2 y2 z2 xy xz yz; entry for (i,j) pair
    let sq = [0, 1, 2];
    let cross = |i: usize, j: usize| -> usize {
        match (i.min(j), i.max(j)) {
            (0, 1) => 3,
            (0, 2) => 4,
            (1, 2) => 5,
            _ => unreachable!(),
        }
    };
    let mut out = vec![CycNum::zero(); 6];
    for i in 0..3 {
        out[sq[i]] = c[sq[perm[i]]].clone();
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        out[cross(i, j)] = c[cross(perm[i], perm[j])].clone();
    }
    out
}

/// Points of a line (given by a linear form) on a conic; exact, with the
/// limited square-root machinery.
pub(super) fn line_conic_points_pub(
    line_form: &[CycNum],
    conic: &[CycNum],
) -> Result<Vec<Vec<CycNum>>, Error> {
    line_conic_points(line_form, conic)
}

fn line_conic_points(line_form: &[CycNum], conic: &[CycNum]) -> Result<Vec<Vec<CycNum>>, Error> {
    // parametrize the line {l . p = 0}: kernel of the 1x3 matrix
    let kern = linalg::kernel(&[line_form.to_vec()]);
    if kern.len() != 2 {
        return Ok(vec![]);
    }
    let eval2 = |p: &[CycNum], q: &[CycNum]| -> CycNum {
        // polarized conic value: C(p, q) with C(p, p) = conic(p)
        let [c0, c1, c2, c3, c4, c5] = [
            &conic[0], &conic[1], &conic[2], &conic[3], &conic[4], &conic[5],
        ];
        let half = CycNum::from_rat(crate::cyclo::rat_frac(1, 2));
        c0.mul(&p[0].mul(&q[0]))
            .add(&c1.mul(&p[1].mul(&q[1])))
            .add(&c2.mul(&p[2].mul(&q[2])))
            .add(&half.mul(c3).mul(&p[0].mul(&q[1]).add(&p[1].mul(&q[0]))))
            .add(&half.mul(c4).mul(&p[0].mul(&q[2]).add(&p[2].mul(&q[0]))))
            .add(&half.mul(c5).mul(&p[1].mul(&q[2]).add(&p[2].mul(&q[1]))))
    };
    let (u, v) = (&kern[0], &kern[1]);
    let alpha = eval2(u, u);
    let beta = eval2(u, v).mul(&CycNum::from_i64(2));
    let gamma = eval2(v, v);
    let roots = solve_quadratic(&alpha, &beta, &gamma)?;
    Ok(roots
        .into_iter()
        .map(|(s, t)| {
            (0..3).map(|i| u[i].mul(&s).add(&v[i].mul(&t))).collect::<Vec<CycNum>>()
        })
        .filter(|p| p.iter().any(|c| !c.is_zero()))
        .collect())
}

/// Deterministic ordering key for components.
pub fn component_sort_key(c: &FixedComponent) -> String {
    format!("{:?}", c)
}

/// Re-check that a component is pointwise fixed by every generator.
pub fn verify_component_fixed(
    comp: &FixedComponent,
    generators: &[SurfaceAut],
) -> Result<bool, Error> {
    let samples = comp.sample_points();
    for g in generators {
        for p in &samples {
            if act(g, p)? != *p {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
