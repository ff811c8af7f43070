//! Sarkisov-link data for the plane: small-orbit inventories for the
//! tetrahedral and octahedral actions, the Cremona involution, the quintic
//! involution family, conic-pencil kernels, and the degree-5 construction.

use crate::cyclo::CycNum;
use crate::error::Error;
use crate::linalg;
use crate::matgroup::{named, CayleyTable, Element, FiniteGroup, ProjMat};
use crate::surfaces::{
    act, canon_vec, collinear, eval_conic, fixed_locus, minimal_orbit_lengths, on_common_conic,
    orbit, substitute_conic, FixedComponent, OrbitReport, SurfaceAut, SurfacePoint,
};
use serde::Serialize;

fn c(n: i64) -> CycNum {
    CycNum::from_i64(n)
}

// ---------------------------------------------------------------------------
// Cremona involution
// ---------------------------------------------------------------------------

/// The standard Cremona involution (x:y:z) -> (yz:xz:xy). Errors on the
/// coordinate points (the base locus).
pub fn cremona(p: &SurfacePoint) -> Result<SurfacePoint, Error> {
    let SurfacePoint::P2(v) = p else {
        return Err(Error::ModelMismatch { expected: "P2".into(), got: p.model().to_string() });
    };
    let img = vec![v[1].mul(&v[2]), v[0].mul(&v[2]), v[0].mul(&v[1])];
    if img.iter().all(|x| x.is_zero()) {
        return Err(Error::BasePoint(format!("{} is a coordinate point", p.render())));
    }
    Ok(SurfacePoint::p2(&img))
}

// ---------------------------------------------------------------------------
// The quintic involution family i_a
// ---------------------------------------------------------------------------

/// The three quintics of the involution `i_a`, evaluated exactly.
/// Base locus: the six-point orbit O6^a (and, for special `a`, more).
pub fn ia_polynomials(a: &CycNum, x: &CycNum, y: &CycNum, z: &CycNum) -> [CycNum; 3] {
    let a2 = a.mul(a);
    let a4 = a2.mul(&a2);
    let a6 = a4.mul(&a2);
    let a8 = a4.mul(&a4);
    let a10 = a8.mul(&a2);
    let a12 = a8.mul(&a4);
    let one = CycNum::one();
    let two = c(2);
    let p = |b: &CycNum, e: u32| b.pow(e as i64).unwrap();
    let f1 = a12
        .add(&one)
        .mul(&p(x, 2).mul(&p(y, 2)).mul(z))
        .sub(&a10.mul(&p(y, 4).mul(z)))
        .add(&two.mul(&a8).mul(&p(y, 2).mul(&p(z, 3))))
        .sub(&a6.mul(&p(z, 5)))
        .add(&two.mul(&a4).mul(&p(x, 2).mul(&p(z, 3))))
        .sub(&a2.mul(&p(x, 4).mul(z)));
    let f2 = a12
        .add(&one)
        .mul(&p(x, 2).mul(y).mul(&p(z, 2)))
        .sub(&a10.mul(&p(x, 4).mul(y)))
        .add(&two.mul(&a8).mul(&p(x, 2).mul(&p(y, 3))))
        .sub(&a6.mul(&p(y, 5)))
        .add(&two.mul(&a4).mul(&p(y, 3).mul(&p(z, 2))))
        .sub(&a2.mul(y).mul(&p(z, 4)));
    let f3 = a12
        .add(&one)
        .mul(&x.mul(&p(y, 2)).mul(&p(z, 2)))
        .sub(&a10.mul(&x.mul(&p(z, 4))))
        .add(&two.mul(&a8).mul(&p(x, 3).mul(&p(z, 2))))
        .sub(&a6.mul(&p(x, 5)))
        .add(&two.mul(&a4).mul(&p(x, 3).mul(&p(y, 2))))
        .sub(&a2.mul(&x.mul(&p(y, 4))));
    [f1, f2, f3]
}

/// Exact evaluation of `i_a`; errors where all three quintics vanish.
pub fn involution_ia(a: &CycNum, p: &SurfacePoint) -> Result<SurfacePoint, Error> {
    if a.is_zero() {
        return Err(Error::Precondition("the family parameter must be nonzero".into()));
    }
    let SurfacePoint::P2(v) = p else {
        return Err(Error::ModelMismatch { expected: "P2".into(), got: p.model().to_string() });
    };
    let fs = ia_polynomials(a, &v[0], &v[1], &v[2]);
    if fs.iter().all(|f| f.is_zero()) {
        return Err(Error::BasePoint(format!(
            "all three quintics vanish at {}",
            p.render()
        )));
    }
    Ok(SurfacePoint::p2(&fs))
}

/// The six-point orbit O6^a = {(0:1:a), (a:0:1), (1:a:0), (0:-1:a),
/// (a:0:-1), (-1:a:0)}.
pub fn o6a_points(a: &CycNum) -> Vec<SurfacePoint> {
    let one = CycNum::one();
    let m_one = c(-1);
    let z = CycNum::zero();
    [
        [z.clone(), one.clone(), a.clone()],
        [a.clone(), z.clone(), one.clone()],
        [one.clone(), a.clone(), z.clone()],
        [z.clone(), m_one.clone(), a.clone()],
        [a.clone(), z.clone(), m_one.clone()],
        [m_one, a.clone(), z],
    ]
    .iter()
    .map(|v| SurfacePoint::p2(v))
    .collect()
}

/// Outcome of the equivariance check `g o i_a o g^-1 = i_a` over the
/// tetrahedral group. The printed quintics conjugate the group by the
/// coordinate swap M: x <-> z instead of centralizing it; the counterexample
/// and the twist identity are reported.
#[derive(Debug, Clone, Serialize)]
pub struct IaEquivarianceReport {
    pub holds: bool,
    /// A violating (g, p) with both sides, when equivariance fails.
    pub counterexample: Option<IaCounterexample>,
    /// Verified twist: conj by i_a equals conj by the swap x <-> z on every
    /// sampled generator pair.
    pub twist_by_xz_swap_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IaCounterexample {
    pub group_element: String,
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

/// Check `g(i_a(g^-1 p)) = i_a(p)` for every group element on sampled points,
/// and verify the observed twist `i_a g i_a = M g M` (M the x/z swap).
pub fn ia_equivariance_report(
    group: &FiniteGroup<SurfaceAut>,
    a: &CycNum,
    samples: usize,
) -> Result<IaEquivarianceReport, Error> {
    let points = sample_p2_points(samples);
    let mut counterexample = None;
    'outer: for (gi, g) in group.elements.iter().enumerate() {
        let ginv = g.inverse();
        for p in &points {
            let Ok(lhs_inner) = involution_ia(a, &act(&ginv, p)?) else { continue };
            let lhs = act(g, &lhs_inner)?;
            let Ok(rhs) = involution_ia(a, p) else { continue };
            if lhs != rhs {
                counterexample = Some(IaCounterexample {
                    group_element: format!("element #{gi}"),
                    point: p.render(),
                    lhs: lhs.render(),
                    rhs: rhs.render(),
                });
                break 'outer;
            }
        }
    }
    // twist identity: i_a(g^-1 . p) = (M g M)^-1 . i_a(p) for all g
    let m_swap = SurfaceAut::p2(ProjMat::from_rows_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
    let mut twist_ok = true;
    'twist: for g in &group.elements {
        let conj = m_swap.compose(g).compose(&m_swap);
        let ginv = g.inverse();
        for p in &points {
            let Ok(ia_p) = involution_ia(a, p) else { continue };
            let lhs = match involution_ia(a, &act(&ginv, p)?) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let rhs = act(&conj.inverse(), &ia_p)?;
            if lhs != rhs {
                twist_ok = false;
                break 'twist;
            }
        }
    }
    Ok(IaEquivarianceReport {
        holds: counterexample.is_none(),
        counterexample,
        twist_by_xz_swap_verified: twist_ok,
    })
}

pub fn sample_p2_points(n: usize) -> Vec<SurfacePoint> {
    // deterministic rational points off the coordinate triangle
    let mut out = Vec::with_capacity(n);
    let mut k: i64 = 1;
    while out.len() < n {
        let (a, b) = (k % 17 + 2, (3 * k) % 23 + 2);
        out.push(SurfacePoint::p2_i64(1, a, b));
        k += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Small-orbit inventory and link enumeration for A4 / S4 on the plane
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct AnnotatedOrbit {
    pub length: usize,
    pub points: Vec<String>,
    pub general_position: bool,
    /// Conic through the orbit (length >= 5), canonical coefficients in the
    /// order x2, y2, z2, xy, xz, yz.
    pub on_conic: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitFamilyDescriptor {
    /// The pointwise-fixed line carrying the family, as a point plus
    /// direction sample description.
    pub description: String,
    pub generic_length: usize,
    /// Two verified sample parameters with their orbits.
    pub samples: Vec<AnnotatedOrbit>,
}

#[derive(Debug, Serialize)]
pub struct SmallOrbitInventory {
    pub group: String,
    pub orbits: Vec<AnnotatedOrbit>,
    pub families: Vec<OrbitFamilyDescriptor>,
}

fn annotate(rep: &OrbitReport) -> AnnotatedOrbit {
    AnnotatedOrbit {
        length: rep.len(),
        points: rep.point_set().iter().map(|p| p.render()).collect(),
        general_position: rep.general_position.unwrap_or(false),
        on_conic: rep
            .on_conic
            .as_ref()
            .map(|cs| cs.iter().map(crate::cyclo::render_scalar).collect()),
    }
}

/// Identify the group and require the tetrahedral or octahedral family.
fn require_a4_or_s4(group: &FiniteGroup<SurfaceAut>) -> Result<String, Error> {
    let id = named::identify_named(&group.table)?;
    match id.name.as_str() {
        "A4" | "S4" => Ok(id.name),
        other => Err(Error::Precondition(format!(
            "link enumeration covers the A4 and S4 plane actions; got {other}"
        ))),
    }
}

/// All orbits of length <= 8 for an A4 or S4 action on the plane, with
/// position annotations, plus the one-parameter families living on the
/// pointwise-fixed lines of involutions.
pub fn enumerate_small_orbits(
    group: &FiniteGroup<SurfaceAut>,
) -> Result<SmallOrbitInventory, Error> {
    let name = require_a4_or_s4(group)?;
    let inventory = minimal_orbit_lengths(group, 8)?;
    let orbits: Vec<AnnotatedOrbit> = inventory.orbits.iter().map(annotate).collect();
    let mut families = Vec::new();
    for fam in &inventory.families {
        let FixedComponent::LineP2 { span } = &fam.component else { continue };
        let mut samples = Vec::new();
        for t in [2i64, 3] {
            let v: Vec<CycNum> = (0..3)
                .map(|i| span[0][i].add(&span[1][i].mul(&c(t))))
                .collect();
            let p = SurfacePoint::p2(&v);
            let rep = orbit(group, &p)?;
            if rep.len() == fam.generic_length {
                samples.push(annotate(&rep));
            }
        }
        families.push(OrbitFamilyDescriptor {
            description: format!(
                "generic points of the pointwise-fixed line through {} and {}",
                SurfacePoint::p2(&span[0]).render(),
                SurfacePoint::p2(&span[1]).render()
            ),
            generic_length: fam.generic_length,
            samples,
        });
    }
    Ok(SmallOrbitInventory { group: name, orbits, families })
}

/// A certified link descriptor: the center orbit plus the target data.
#[derive(Debug, Clone, Serialize)]
pub struct SarkisovLinkDescriptor {
    pub link_type: String,
    pub center_length: usize,
    pub center: Vec<String>,
    pub target: String,
    /// Explicit birational map when the classification provides one.
    pub map: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct LinkInventory {
    pub group: String,
    pub links: Vec<SarkisovLinkDescriptor>,
    /// Orbits of admissible length that carry no link, with the blocking
    /// conic.
    pub blocked: Vec<BlockedOrbit>,
    /// Present for the tetrahedral action: the one-parameter family of
    /// quintic-involution links over O6^a.
    pub family: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockedOrbit {
    pub length: usize,
    /// Conic through the orbit, when that is the obstruction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocking_conic: Option<Vec<String>>,
    /// Set when a collinear triple blocks the center instead.
    pub collinear_triple: bool,
}

/// The link lists for the two plane actions: S4 has exactly a type-I link
/// over the length-4 orbit and the Cremona type-II link over the coordinate
/// triangle; A4 adds two more type-I links and the i_a family.
pub fn enumerate_links_p2(group: &FiniteGroup<SurfaceAut>) -> Result<LinkInventory, Error> {
    let name = require_a4_or_s4(group)?;
    let inventory = minimal_orbit_lengths(group, 8)?;
    let mut links = Vec::new();
    let mut blocked = Vec::new();
    for rep in &inventory.orbits {
        match rep.len() {
            3 => {
                // the coordinate triangle: Cremona type II
                links.push(SarkisovLinkDescriptor {
                    link_type: "II".into(),
                    center_length: 3,
                    center: rep.point_set().iter().map(|p| p.render()).collect(),
                    target: "P2 (Cremona involution)".into(),
                    map: Some("(x:y:z) -> (yz:xz:xy)".into()),
                });
            }
            4 if rep.general_position == Some(true) => {
                links.push(SarkisovLinkDescriptor {
                    link_type: "I".into(),
                    center_length: 4,
                    center: rep.point_set().iter().map(|p| p.render()).collect(),
                    target: "degree-5 del Pezzo conic bundle".into(),
                    map: None,
                });
            }
            l if l >= 5 => {
                if let Some(conic) = rep.on_conic.as_ref() {
                    blocked.push(BlockedOrbit {
                        length: l,
                        blocking_conic: Some(
                            conic.iter().map(crate::cyclo::render_scalar).collect(),
                        ),
                        collinear_triple: false,
                    });
                } else if rep.general_position == Some(false) {
                    blocked.push(BlockedOrbit {
                        length: l,
                        blocking_conic: None,
                        collinear_triple: true,
                    });
                }
                // length-6 orbits in general position are the centers of the
                // quintic-involution family, reported below
            }
            _ => {}
        }
    }
    // the quintic involution family over the fixed lines of involutions
    let family = if name == "A4" {
        let fam_count = inventory
            .families
            .iter()
            .filter(|f| matches!(f.component, FixedComponent::LineP2 { .. }))
            .count();
        if fam_count == 0 {
            return Err(Error::HypothesisFailed(
                "expected the length-6 orbit family for the tetrahedral action".into(),
            ));
        }
        Some("type II over each orbit O6^a (a != 0), realized by the involution i_a".into())
    } else {
        None
    };
    links.sort_by(|a, b| (a.center_length, &a.link_type).cmp(&(b.center_length, &b.link_type)));
    Ok(LinkInventory { group: name, links, blocked, family })
}

// ---------------------------------------------------------------------------
// Conic pencils
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct ConicPencilReport {
    /// Basis of the conics through the four points.
    pub basis: [Vec<String>; 2],
    /// Order of the kernel of the induced action on the pencil.
    pub kernel_order: usize,
    pub kernel_name: String,
    /// True when the kernel fixes no point on any sampled smooth member.
    pub fibrewise_free: bool,
    /// Set when the kernel is trivial and no obstruction was computed.
    pub no_obstruction_computed: bool,
}

/// The pencil of conics through a length-4 orbit in general position, the
/// kernel of the induced action on the pencil parameter, and the
/// fixed-point-freeness of that kernel on sampled smooth members.
pub fn conic_pencil_check(
    group: &FiniteGroup<SurfaceAut>,
    orbit4: &OrbitReport,
) -> Result<ConicPencilReport, Error> {
    if orbit4.len() != 4 {
        return Err(Error::Precondition("pencil check needs a length-4 orbit".into()));
    }
    let pts: Vec<&[CycNum]> = orbit4
        .points
        .iter()
        .map(|p| match p {
            SurfacePoint::P2(v) => Ok(v.as_slice()),
            _ => Err(Error::ModelMismatch { expected: "P2".into(), got: p.model().to_string() }),
        })
        .collect::<Result<_, _>>()?;
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                if collinear(pts[i], pts[j], pts[k]) {
                    return Err(Error::Precondition(
                        "three of the four points are collinear".into(),
                    ));
                }
            }
        }
    }
    let rows: Vec<Vec<CycNum>> = pts.iter().map(|p| crate::surfaces::conic_row(p)).collect();
    let kern = linalg::kernel(&rows);
    if kern.len() != 2 {
        return Err(Error::Precondition("pencil through the orbit is not 2-dimensional".into()));
    }
    let basis: [Vec<CycNum>; 2] = [canon_vec(&kern[0]), canon_vec(&kern[1])];
    // induced action on the pencil: substitution by g maps each basis conic to
    // a combination; kernel = elements acting as a scalar
    let mut kernel_members: Vec<u32> = Vec::new();
    for (gi, g) in group.elements.iter().enumerate() {
        let SurfaceAut::P2(m) = g else { unreachable!() };
        let img0 = substitute_conic(&basis[0], m.mat());
        let img1 = substitute_conic(&basis[1], m.mat());
        let sol0 = linalg::solve_in_span(&[basis[0].clone(), basis[1].clone()], &img0);
        let sol1 = linalg::solve_in_span(&[basis[0].clone(), basis[1].clone()], &img1);
        let (Some(s0), Some(s1)) = (sol0, sol1) else {
            return Err(Error::HypothesisFailed(
                "group does not preserve the pencil of the orbit".into(),
            ));
        };
        // acts as scalar iff off-diagonals vanish and diagonals agree
        if s0[1].is_zero() && s1[0].is_zero() && s0[0] == s1[1] {
            kernel_members.push(gi as u32);
        }
    }
    let (kernel_table, _) = group.table.subgroup(&kernel_members);
    let kernel_name = named::identify_named(&kernel_table)?.name;
    if kernel_members.len() == 1 {
        return Ok(ConicPencilReport {
            basis: [render_conic(&basis[0]), render_conic(&basis[1])],
            kernel_order: 1,
            kernel_name,
            fibrewise_free: false,
            no_obstruction_computed: true,
        });
    }
    // sample smooth members lambda in {1, 2, 3, 5, 7}, skipping singular ones
    let kernel_group = group.subgroup(&kernel_members);
    let kernel_fixed = fixed_locus(&kernel_group)?;
    let mut free = true;
    let mut checked = 0;
    for lambda in [1i64, 2, 3, 5, 7] {
        let lam = c(lambda);
        let member: Vec<CycNum> = basis[0]
            .iter()
            .zip(basis[1].iter())
            .map(|(u, v)| u.add(&v.mul(&lam)))
            .collect();
        if conic_matrix_rank(&member) < 3 {
            continue; // singular member
        }
        checked += 1;
        // a fixed point of the kernel on this member blocks freeness
        for compnt in &kernel_fixed {
            match compnt {
                FixedComponent::Point(SurfacePoint::P2(v)) => {
                    if eval_conic(&member, v).is_zero() {
                        free = false;
                    }
                }
                FixedComponent::LineP2 { span } => {
                    // a pointwise-fixed line meets every conic: fixed points
                    // exist on the member
                    let form = crate::surfaces::line_form_from_span(span)?;
                    if crate::surfaces::line_conic_points_for(&form, &member)?
                        .iter()
                        .any(|p| !p.is_empty())
                    {
                        free = false;
                    }
                }
                _ => {}
            }
        }
    }
    if checked == 0 {
        return Err(Error::HypothesisFailed("all sampled pencil members were singular".into()));
    }
    Ok(ConicPencilReport {
        basis: [render_conic(&basis[0]), render_conic(&basis[1])],
        kernel_order: kernel_members.len(),
        kernel_name,
        fibrewise_free: free,
        no_obstruction_computed: false,
    })
}

fn render_conic(cs: &[CycNum]) -> Vec<String> {
    cs.iter().map(crate::cyclo::render_scalar).collect()
}

fn conic_matrix_rank(cs: &[CycNum]) -> usize {
    let half = CycNum::from_rat(crate::cyclo::rat_frac(1, 2));
    let h = |i: usize| half.mul(&cs[i]);
    let rows = vec![
        vec![cs[0].clone(), h(3), h(4)],
        vec![h(3), cs[1].clone(), h(5)],
        vec![h(4), h(5), cs[2].clone()],
    ];
    linalg::rank(&rows)
}

/// Span equality of two conic pencils up to basis change.
pub fn pencil_spans_equal(b1: &[Vec<CycNum>; 2], b2: &[Vec<CycNum>; 2]) -> bool {
    let in_span = |v: &Vec<CycNum>, basis: &[Vec<CycNum>; 2]| {
        linalg::solve_in_span(&[basis[0].clone(), basis[1].clone()], v).is_some()
    };
    in_span(&b1[0], b2) && in_span(&b1[1], b2) && in_span(&b2[0], b1) && in_span(&b2[1], b1)
}

// ---------------------------------------------------------------------------
// Degree-5 construction
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct Dp5Construction {
    pub group: String,
    pub orbit_points: Vec<String>,
    pub orbit_length: usize,
    pub no_three_collinear: bool,
    pub conic: Vec<String>,
    pub fixed_point: String,
}

/// The cyclic and dihedral degree-5 data: the length-5 orbit of (1:1:1) in
/// general position on a single conic, plus the fixed point (1:0:0).
pub fn dp5_construction(group: &FiniteGroup<SurfaceAut>) -> Result<Dp5Construction, Error> {
    let id = named::identify_named(&group.table)?;
    if id.name != "Z5" && id.name != "D5" {
        return Err(Error::Precondition(format!(
            "the degree-5 construction is for the Z5 and D5 plane groups; got {}",
            id.name
        )));
    }
    let rep = orbit(group, &SurfacePoint::p2_i64(1, 1, 1))?;
    if rep.len() != 5 {
        return Err(Error::HypothesisFailed(format!(
            "orbit of (1:1:1) has length {}, expected 5",
            rep.len()
        )));
    }
    let pts: Vec<&[CycNum]> = rep
        .points
        .iter()
        .map(|p| match p {
            SurfacePoint::P2(v) => v.as_slice(),
            _ => unreachable!(),
        })
        .collect();
    let mut no3 = true;
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                if collinear(pts[i], pts[j], pts[k]) {
                    no3 = false;
                }
            }
        }
    }
    let conic = on_common_conic(&pts)
        .ok_or_else(|| Error::HypothesisFailed("no unique conic through the orbit".into()))?;
    let fixed = SurfacePoint::p2_i64(1, 0, 0);
    for g in &group.elements {
        if act(g, &fixed)? != fixed {
            return Err(Error::HypothesisFailed("(1:0:0) is not fixed".into()));
        }
    }
    Ok(Dp5Construction {
        group: id.name,
        orbit_points: rep.point_set().iter().map(|p| p.render()).collect(),
        orbit_length: rep.len(),
        no_three_collinear: no3,
        conic: render_conic(&conic),
        fixed_point: fixed.render(),
    })
}

/// Reference tables used by callers of the enumeration.
pub fn a4_table() -> CayleyTable {
    named::alternating(4)
}
