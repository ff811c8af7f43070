//! Orbits, stabilizers, short-orbit inventories, and position predicates.

use super::fixed::{fixed_locus, p1_fixed_points, FixedComponent};
use super::{act, canon_vec, Model, SurfaceAut, SurfacePoint};
use crate::cyclo::{rat_i64, CycNum};
use crate::error::Error;
use crate::linalg;
use crate::matgroup::{Element, FiniteGroup};
use std::collections::{BTreeMap, HashSet};

/// Exact orbit of a point with its stabilizer.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub base: SurfacePoint,
    /// Deterministic order: BFS over generators in input order.
    pub points: Vec<SurfacePoint>,
    /// Indices into the group's element list.
    pub stabilizer: Vec<u32>,
    /// On P1xP1: all point pairs in general position. On P2: no 3 collinear.
    pub general_position: Option<bool>,
    /// On P2, for orbits of length >= 5: the unique conic through the orbit.
    pub on_conic: Option<Vec<CycNum>>,
}

impl OrbitReport {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_set(&self) -> Vec<SurfacePoint> {
        let mut v = self.points.clone();
        v.sort_by_key(|p| format!("{:?}", p));
        v
    }
}

/// Exact orbit with stabilizer; `length x |stabilizer| = |G|` is asserted.
pub fn orbit(group: &FiniteGroup<SurfaceAut>, p: &SurfacePoint) -> Result<OrbitReport, Error> {
    let gens = group.generator_elements();
    let mut points = vec![p.clone()];
    let mut seen: HashSet<SurfacePoint> = HashSet::new();
    seen.insert(p.clone());
    let mut k = 0;
    while k < points.len() {
        for g in &gens {
            let q = act(g, &points[k])?;
            if seen.insert(q.clone()) {
                points.push(q);
            }
        }
        k += 1;
    }
    let mut stabilizer = Vec::new();
    for (i, g) in group.elements.iter().enumerate() {
        if act(g, p)? == *p {
            stabilizer.push(i as u32);
        }
    }
    assert_eq!(
        points.len() * stabilizer.len(),
        group.order(),
        "orbit-stabilizer mismatch"
    );
    let general_position = match p.model() {
        Model::P1xP1 => Some(pairwise_general_position(&points)),
        Model::P2 => Some(!any_three_collinear(&points)),
        _ => None,
    };
    let on_conic = if p.model() == Model::P2 && points.len() >= 5 {
        let pts: Vec<&[CycNum]> = points
            .iter()
            .map(|q| match q {
                SurfacePoint::P2(v) => v.as_slice(),
                _ => unreachable!(),
            })
            .collect();
        on_common_conic(&pts)
    } else {
        None
    };
    Ok(OrbitReport { base: p.clone(), points, stabilizer, general_position, on_conic })
}

pub fn general_position_p1p1(p: &SurfacePoint, q: &SurfacePoint) -> Result<bool, Error> {
    match (p, q) {
        (SurfacePoint::P1xP1(p1, p2), SurfacePoint::P1xP1(q1, q2)) => {
            Ok(p1 != q1 && p2 != q2)
        }
        _ => Err(Error::ModelMismatch { expected: "P1xP1".into(), got: p.model().to_string() }),
    }
}

fn pairwise_general_position(points: &[SurfacePoint]) -> bool {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if !general_position_p1p1(&points[i], &points[j]).unwrap_or(false) {
                return false;
            }
        }
    }
    !points.is_empty()
}

pub fn collinear(p1: &[CycNum], p2: &[CycNum], p3: &[CycNum]) -> bool {
    let det = p1[0]
        .mul(&p2[1].mul(&p3[2]).sub(&p2[2].mul(&p3[1])))
        .sub(&p1[1].mul(&p2[0].mul(&p3[2]).sub(&p2[2].mul(&p3[0]))))
        .add(&p1[2].mul(&p2[0].mul(&p3[1]).sub(&p2[1].mul(&p3[0]))));
    det.is_zero()
}

fn any_three_collinear(points: &[SurfacePoint]) -> bool {
    let pts: Vec<&Vec<CycNum>> = points
        .iter()
        .map(|q| match q {
            SurfacePoint::P2(v) => v,
            _ => unreachable!("collinearity is a P2 notion"),
        })
        .collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if collinear(pts[i], pts[j], pts[k]) {
                    return true;
                }
            }
        }
    }
    false
}

/// Monomial row (x2, y2, z2, xy, xz, yz) of a P2 point.
pub fn conic_row(p: &[CycNum]) -> Vec<CycNum> {
    vec![
        p[0].mul(&p[0]),
        p[1].mul(&p[1]),
        p[2].mul(&p[2]),
        p[0].mul(&p[1]),
        p[0].mul(&p[2]),
        p[1].mul(&p[2]),
    ]
}

/// The unique conic through at least 5 points, when the solution space is
/// exactly one-dimensional. Coefficients come back canonically scaled in the
/// order (x2, y2, z2, xy, xz, yz).
pub fn on_common_conic(points: &[&[CycNum]]) -> Option<Vec<CycNum>> {
    if points.len() < 5 {
        return None;
    }
    let rows: Vec<Vec<CycNum>> = points.iter().map(|p| conic_row(p)).collect();
    let kern = linalg::kernel(&rows);
    if kern.len() == 1 {
        Some(canon_vec(&kern[0]))
    } else {
        None
    }
}

pub fn eval_conic(c: &[CycNum], p: &[CycNum]) -> CycNum {
    conic_row(p)
        .iter()
        .zip(c.iter())
        .fold(CycNum::zero(), |acc, (m, co)| acc.add(&m.mul(co)))
}

/// One-parameter family of short orbits traced by a fixed curve component.
#[derive(Clone, Debug)]
pub struct OrbitFamily {
    pub component: FixedComponent,
    pub pointwise_stabilizer_order: usize,
    pub generic_length: usize,
    pub witness: OrbitReport,
}

/// Everything realized at or below the bound.
#[derive(Debug)]
pub struct ShortOrbitInventory {
    /// Distinct orbits of length <= bound, deduplicated, deterministic order.
    pub orbits: Vec<OrbitReport>,
    /// Realized lengths with one witness each.
    pub lengths: BTreeMap<usize, OrbitReport>,
    /// Curve components whose generic orbit length is <= bound.
    pub families: Vec<OrbitFamily>,
}

impl ShortOrbitInventory {
    /// Lengths realized by orbits whose points satisfy the model's general
    /// position requirement (always true on P1).
    pub fn general_position_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .orbits
            .iter()
            .filter(|o| o.general_position.unwrap_or(true))
            .map(|o| o.len())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn realized_lengths(&self) -> Vec<usize> {
        self.lengths.keys().copied().collect()
    }
}

/// All orbit lengths <= bound, with witnesses. Candidate points are the
/// 0-dimensional fixed components of every nontrivial cyclic subgroup (one
/// generator per conjugacy class), pairwise intersections of 1-dimensional
/// fixed components, sampled generic points of those components, and (when
/// |G| <= bound) a sampled free orbit.
pub fn minimal_orbit_lengths(
    group: &FiniteGroup<SurfaceAut>,
    bound: usize,
) -> Result<ShortOrbitInventory, Error> {
    let model = group.elements[0].model();
    if model == Model::Dp6 {
        return Err(Error::Precondition(
            "short-orbit inventory is provided for P1, P2, and P1xP1".into(),
        ));
    }
    if group.order() > crate::matgroup::ORDER_BOUND {
        return Err(Error::UnsupportedOrder {
            order: group.order(),
            bound: crate::matgroup::ORDER_BOUND,
        });
    }
    let mut candidates: Vec<SurfacePoint> = Vec::new();
    let mut curves: Vec<FixedComponent> = Vec::new();
    // one representative per conjugacy class of nontrivial elements
    let classes = group.table.conjugacy_classes();
    for class in &classes {
        let rep = class[0];
        if rep == group.table.identity {
            continue;
        }
        let cyclic = group.subgroup(&group.table.closure(&[rep]));
        let comps = fixed_locus(&cyclic)?;
        for comp in comps {
            match comp {
                FixedComponent::Point(p) => candidates.push(p),
                FixedComponent::PlaneP2 | FixedComponent::WholeP1 => {}
                c => curves.push(c),
            }
        }
    }
    curves.sort_by_key(super::fixed::component_sort_key);
    curves.dedup();
    // intersections of distinct curve components
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            candidates.extend(intersect_components(&curves[i], &curves[j])?);
        }
    }
    let mut inventory = ShortOrbitInventory {
        orbits: Vec::new(),
        lengths: BTreeMap::new(),
        families: Vec::new(),
    };
    let mut seen_orbits: HashSet<Vec<String>> = HashSet::new();
    let mut record = |rep: OrbitReport, inv: &mut ShortOrbitInventory| {
        if rep.len() > bound {
            return;
        }
        let key: Vec<String> =
            rep.point_set().iter().map(|p| format!("{:?}", p)).collect();
        if seen_orbits.insert(key) {
            inv.lengths.entry(rep.len()).or_insert_with(|| rep.clone());
            inv.orbits.push(rep);
        }
    };
    for p in &candidates {
        let rep = orbit(group, p)?;
        record(rep, &mut inventory);
    }
    // families from curve components
    for comp in &curves {
        let stab_order = pointwise_stabilizer_order(group, comp)?;
        let generic_len = group.order() / stab_order;
        if generic_len <= bound {
            if let Some(witness) = sample_generic_on_component(group, comp, generic_len)? {
                record(witness.clone(), &mut inventory);
                inventory.families.push(OrbitFamily {
                    component: comp.clone(),
                    pointwise_stabilizer_order: stab_order,
                    generic_length: generic_len,
                    witness,
                });
            }
        }
    }
    // free orbits when the whole group order is within the bound
    if group.order() <= bound {
        for p in sample_points(model) {
            let rep = orbit(group, &p)?;
            if rep.len() == group.order() {
                record(rep, &mut inventory);
                break;
            }
        }
    }
    inventory.orbits.sort_by_key(|o| (o.len(), format!("{:?}", o.point_set())));
    Ok(inventory)
}

/// Number of group elements fixing a curve component pointwise (checked on
/// the component's exact sample points; three points of a rational curve
/// pin a projective transformation on it).
fn pointwise_stabilizer_order(
    group: &FiniteGroup<SurfaceAut>,
    comp: &FixedComponent,
) -> Result<usize, Error> {
    let samples = comp.sample_points();
    let mut count = 0;
    for g in &group.elements {
        let mut ok = true;
        for p in &samples {
            if act(g, p)? != *p {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// Deterministic parameter sweep to find a point on the component whose
/// orbit length equals the generic length.
fn sample_generic_on_component(
    group: &FiniteGroup<SurfaceAut>,
    comp: &FixedComponent,
    generic_len: usize,
) -> Result<Option<OrbitReport>, Error> {
    for t in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
        let tc = CycNum::from_i64(t);
        let p = match comp {
            FixedComponent::RulingLine { factor, at } => {
                let q = vec![CycNum::one(), tc.clone()];
                if *factor == 0 {
                    SurfacePoint::p1xp1(at, &q)
                } else {
                    SurfacePoint::p1xp1(&q, at)
                }
            }
            FixedComponent::GraphP1 { b } => {
                let p = vec![CycNum::one(), tc.clone()];
                SurfacePoint::p1xp1(&p, &b.mat().apply(&p))
            }
            FixedComponent::LineP2 { span } => {
                let v: Vec<CycNum> =
                    (0..3).map(|i| span[0][i].add(&span[1][i].mul(&tc))).collect();
                SurfacePoint::p2(&v)
            }
            _ => return Ok(None),
        };
        let rep = orbit(group, &p)?;
        if rep.len() == generic_len {
            return Ok(Some(rep));
        }
    }
    Ok(None)
}

fn sample_points(model: Model) -> Vec<SurfacePoint> {
    let pairs = [(2i64, 3i64), (3, 5), (5, 7), (7, 11), (2, 5), (3, 7), (11, 13)];
    match model {
        Model::P1 => pairs
            .iter()
            .map(|(a, b)| {
                SurfacePoint::p1(&[CycNum::one(), CycNum::from_rat(rat_i64(*a) / rat_i64(*b))])
            })
            .collect(),
        Model::P2 => pairs
            .iter()
            .map(|(a, b)| SurfacePoint::p2_i64(1, *a, *b))
            .collect(),
        Model::P1xP1 => pairs
            .iter()
            .map(|(a, b)| {
                SurfacePoint::p1xp1_affine(CycNum::from_i64(*a), CycNum::from_i64(*b))
            })
            .collect(),
        Model::Dp6 => vec![],
    }
}

/// Exact intersection points of two distinct 1-dimensional fixed components.
fn intersect_components(
    a: &FixedComponent,
    b: &FixedComponent,
) -> Result<Vec<SurfacePoint>, Error> {
    use FixedComponent::*;
    Ok(match (a, b) {
        (RulingLine { factor: f1, at: p }, RulingLine { factor: f2, at: q }) => {
            if f1 != f2 {
                if *f1 == 0 {
                    vec![SurfacePoint::p1xp1(p, q)]
                } else {
                    vec![SurfacePoint::p1xp1(q, p)]
                }
            } else {
                vec![]
            }
        }
        (RulingLine { factor, at }, GraphP1 { b: m }) | (GraphP1 { b: m }, RulingLine { factor, at }) => {
            if *factor == 0 {
                vec![SurfacePoint::p1xp1(at, &m.mat().apply(at))]
            } else {
                // P1 x {at} meets {(p, Mp)} where M p ~ at: p = M^-1 at
                let p = m.inverse().mat().apply(at);
                vec![SurfacePoint::p1xp1(&canon_vec(&p), at)]
            }
        }
        (GraphP1 { b: m1 }, GraphP1 { b: m2 }) => {
            // M1 p ~ M2 p: fixed points of M2^-1 M1 on the first factor
            let comp = m2.inverse().compose(m1);
            if comp.is_identity() {
                vec![]
            } else {
                p1_fixed_points(&[comp])?
                    .into_iter()
                    .filter_map(|c| match c {
                        Point(SurfacePoint::P1(p)) => {
                            Some(SurfacePoint::p1xp1(&p, &canon_vec(&m1.mat().apply(&p))))
                        }
                        _ => None,
                    })
                    .collect()
            }
        }
        (LineP2 { span: s1 }, LineP2 { span: s2 }) => {
            // solve x s1_0 + y s1_1 - u s2_0 - v s2_1 = 0
            let rows: Vec<Vec<CycNum>> = (0..3)
                .map(|i| {
                    vec![
                        s1[0][i].clone(),
                        s1[1][i].clone(),
                        s2[0][i].neg(),
                        s2[1][i].neg(),
                    ]
                })
                .collect();
            linalg::kernel(&rows)
                .into_iter()
                .map(|k| {
                    let v: Vec<CycNum> = (0..3)
                        .map(|i| s1[0][i].mul(&k[0]).add(&s1[1][i].mul(&k[1])))
                        .collect();
                    v
                })
                .filter(|v| v.iter().any(|c| !c.is_zero()))
                .map(|v| SurfacePoint::p2(&v))
                .collect()
        }
        _ => vec![],
    })
}

/// Orbit lengths <= bound of a PGL3 group restricted to a smooth conic it
/// preserves. Candidates: all P2 candidate points on the conic plus
/// fixed-line intersections with the conic.
pub fn orbit_lengths_on_conic(
    group: &FiniteGroup<SurfaceAut>,
    conic: &[CycNum],
    bound: usize,
) -> Result<BTreeMap<usize, OrbitReport>, Error> {
    // the group must preserve the conic
    for g in &group.elements {
        let m = match g {
            SurfaceAut::P2(m) => m,
            _ => return Err(Error::ModelMismatch { expected: "P2".into(), got: g.model().to_string() }),
        };
        let minv = m.inverse();
        // pullback of the conic under g^-1... preservING means substitution
        // maps the conic to a multiple of itself; check on sample rows
        let sub = substitute_conic(conic, minv.mat());
        if canon_vec(&sub) != canon_vec(&conic.to_vec()) {
            return Err(Error::Precondition("group does not preserve the conic".into()));
        }
    }
    let classes = group.table.conjugacy_classes();
    let mut candidates: Vec<SurfacePoint> = Vec::new();
    for class in &classes {
        let rep = class[0];
        if rep == group.table.identity {
            continue;
        }
        let cyclic = group.subgroup(&group.table.closure(&[rep]));
        for comp in fixed_locus(&cyclic)? {
            match comp {
                FixedComponent::Point(p) => {
                    if let SurfacePoint::P2(v) = &p {
                        if eval_conic(conic, v).is_zero() {
                            candidates.push(p);
                        }
                    }
                }
                FixedComponent::LineP2 { span } => {
                    // line meets the conic in up to two points
                    let line_form = line_form_from_span(&span)?;
                    for pt in super::fixed::line_conic_points_pub(&line_form, conic)? {
                        candidates.push(SurfacePoint::p2(&pt));
                    }
                }
                _ => {}
            }
        }
    }
    let mut lengths = BTreeMap::new();
    for p in candidates {
        let rep = orbit(group, &p)?;
        if rep.len() <= bound {
            lengths.entry(rep.len()).or_insert(rep);
        }
    }
    Ok(lengths)
}

/// Substitute `p -> M p` in a conic's coefficient vector.
pub fn substitute_conic(c: &[CycNum], m: &crate::linalg::CMat) -> Vec<CycNum> {
    // Q' = M^T Q M on symmetric matrices
    let half = CycNum::from_rat(crate::cyclo::rat_frac(1, 2));
    let q = crate::linalg::CMat::new(
        3,
        3,
        vec![
            c[0].clone(), half.mul(&c[3]), half.mul(&c[4]),
            half.mul(&c[3]), c[1].clone(), half.mul(&c[5]),
            half.mul(&c[4]), half.mul(&c[5]), c[2].clone(),
        ],
    );
    let qp = m.transpose().matmul(&q).matmul(m);
    vec![
        qp.at(0, 0).clone(),
        qp.at(1, 1).clone(),
        qp.at(2, 2).clone(),
        qp.at(0, 1).add(qp.at(1, 0)),
        qp.at(0, 2).add(qp.at(2, 0)),
        qp.at(1, 2).add(qp.at(2, 1)),
    ]
}

/// The linear form vanishing on a line given by a span basis.
pub fn line_form_from_span(span: &[Vec<CycNum>; 2]) -> Result<Vec<CycNum>, Error> {
    let rows = vec![span[0].clone(), span[1].clone()];
    let kern = linalg::kernel(&rows);
    if kern.len() != 1 {
        return Err(Error::Precondition("degenerate line span".into()));
    }
    Ok(kern.into_iter().next().unwrap())
}
