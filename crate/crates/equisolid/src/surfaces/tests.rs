use super::*;
use crate::cyclo::{parse_scalar, rat_frac, CycNum};
use crate::linalg::CMat;
use crate::matgroup::{close_group, Element, FiniteGroup, ProjMat, DEFAULT_CAP};

fn pm2(rows: &[&[i64]]) -> ProjMat {
    ProjMat::from_rows_i64(rows)
}

fn c(n: i64) -> CycNum {
    CycNum::from_i64(n)
}

fn sc(text: &str) -> CycNum {
    parse_scalar(text).unwrap()
}

/// Affine scaling x -> a x as a projective 2x2.
pub fn aff_scale(a: CycNum) -> ProjMat {
    ProjMat::new(CMat::new(2, 2, vec![c(1), c(0), c(0), a]))
}

/// x -> a / x.
pub fn aff_inv_scale(a: CycNum) -> ProjMat {
    ProjMat::new(CMat::new(2, 2, vec![c(0), c(1), a, c(0)]))
}

pub fn id2() -> ProjMat {
    ProjMat::new(CMat::identity(2))
}

/// r = (1/y, x)
pub fn r_p1p1() -> SurfaceAut {
    SurfaceAut::p1xp1(aff_inv_scale(c(1)), id2(), true)
}

/// s = (y, x)
pub fn s_p1p1() -> SurfaceAut {
    SurfaceAut::p1xp1(id2(), id2(), true)
}

/// t = (-x, -y)
pub fn t_p1p1() -> SurfaceAut {
    SurfaceAut::p1xp1(aff_scale(c(-1)), aff_scale(c(-1)), false)
}

/// h = (-y, x)
pub fn h_p1p1() -> SurfaceAut {
    SurfaceAut::p1xp1(aff_scale(c(-1)), id2(), true)
}

pub fn group_of(gens: &[SurfaceAut]) -> FiniteGroup<SurfaceAut> {
    close_group(gens, DEFAULT_CAP).unwrap()
}

/// dP6 r: (x:y:z)x(u:v:w) -> (w:u:v)x(z:x:y).
pub fn dp6_r() -> SurfaceAut {
    let p = ProjMat::from_rows_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    SurfaceAut::dp6(p.clone(), p, true).unwrap()
}

/// dP6 s: (x:y:z)x(u:v:w) -> (x:z:y)x(u:w:v).
pub fn dp6_s() -> SurfaceAut {
    let m = ProjMat::from_rows_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    SurfaceAut::dp6(m.clone(), m, false).unwrap()
}

#[test]
fn act_examples() {
    // r applied to affine (2, 3) gives (1/3, 2)
    let p = SurfacePoint::p1xp1_affine(c(2), c(3));
    let img = act(&r_p1p1(), &p).unwrap();
    assert_eq!(img, SurfacePoint::p1xp1_affine(sc("1/3"), c(2)));
    // the 3-cycle fixes (1:1:1)
    let b = ProjMat::from_rows_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let p = SurfacePoint::p2_i64(1, 1, 1);
    assert_eq!(act(&SurfaceAut::p2(b), &p).unwrap(), p);
    // dP6 s fixes (1:1:1)x(1:1:1)
    let one3 = [c(1), c(1), c(1)];
    let pd = SurfacePoint::dp6(&one3, &one3).unwrap();
    assert_eq!(act(&dp6_s(), &pd).unwrap(), pd);
    // model mismatch errors
    assert!(act(&r_p1p1(), &SurfacePoint::p2_i64(1, 0, 0)).is_err());
}

#[test]
fn composition_law_random() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let gens = [r_p1p1(), s_p1p1(), t_p1p1(), h_p1p1()];
    for _ in 0..40 {
        let g = &gens[rng.gen_range(0..4)];
        let h = &gens[rng.gen_range(0..4)];
        let p = SurfacePoint::p1xp1_affine(
            c(rng.gen_range(2..20)),
            c(rng.gen_range(2..20)),
        );
        let via_composite = act(&g.compose(h), &p).unwrap();
        let via_steps = act(g, &act(h, &p).unwrap()).unwrap();
        assert_eq!(via_composite, via_steps);
    }
}

#[test]
fn dp6_membership_examples() {
    // identity, r, s pass; the v<->u twist fails
    let id3 = ProjMat::new(CMat::identity(3));
    assert!(dp6_membership(&id3, &id3, false));
    let _ = dp6_r();
    let _ = dp6_s();
    let bad = ProjMat::from_rows_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    assert!(!dp6_membership(&id3, &bad, false));
    assert!(SurfaceAut::dp6(id3, bad, false).is_err());
}

#[test]
fn dp6_relations() {
    let r = dp6_r();
    let s = dp6_s();
    let id = SurfaceAut::identity(Model::Dp6);
    let mut r6 = id.clone();
    for _ in 0..6 {
        r6 = r6.compose(&r);
    }
    assert_eq!(r6, id);
    let mut r3 = id.clone();
    for _ in 0..3 {
        r3 = r3.compose(&r);
    }
    assert_ne!(r3, id);
    assert_eq!(s.compose(&s), id);
    let rs = r.compose(&s);
    assert_eq!(rs.compose(&rs), id);
    assert_eq!(group_of(&[r, s]).order(), 12);
}

#[test]
fn orbits_s4_on_p2() {
    let s4 = crate::matgroup::tests::s4_pgl3();
    let s4 = FiniteGroup {
        elements: s4.elements.into_iter().map(SurfaceAut::P2).collect(),
        table: s4.table,
        generators: s4.generators,
    };
    let o4 = orbit(&s4, &SurfacePoint::p2_i64(1, 1, 1)).unwrap();
    assert_eq!(o4.len(), 4);
    let expected: Vec<SurfacePoint> = vec![
        SurfacePoint::p2_i64(1, 1, 1),
        SurfacePoint::p2_i64(-1, 1, 1),
        SurfacePoint::p2_i64(1, -1, 1),
        SurfacePoint::p2_i64(1, 1, -1),
    ];
    let mut got = o4.point_set();
    let mut want: Vec<SurfacePoint> = expected.iter().map(|p| p.clone()).collect();
    want.sort_by_key(|p| format!("{:?}", p));
    got.sort_by_key(|p| format!("{:?}", p));
    assert_eq!(got, want);
    assert_eq!(o4.general_position, Some(true));

    let o3 = orbit(&s4, &SurfacePoint::p2_i64(0, 0, 1)).unwrap();
    assert_eq!(o3.len(), 3);
    assert_eq!(o3.stabilizer.len(), 8);

    let generic = orbit(&s4, &SurfacePoint::p2_i64(1, 2, 3)).unwrap();
    assert_eq!(generic.len(), 24);
}

#[test]
fn fixed_points_of_r_on_p1xp1() {
    let g = group_of(&[r_p1p1()]);
    let comps = fixed_locus(&g).unwrap();
    let pts: Vec<&SurfacePoint> = comps
        .iter()
        .filter_map(|c| match c {
            FixedComponent::Point(p) => Some(p),
            _ => None,
        })
        .collect();
    assert_eq!(pts.len(), 2);
    let want1 = SurfacePoint::p1xp1_affine(c(1), c(1));
    let want2 = SurfacePoint::p1xp1_affine(c(-1), c(-1));
    assert!(pts.contains(&&want1) && pts.contains(&&want2));
    for comp in &comps {
        assert!(verify_component_fixed(comp, &g.generator_elements()).unwrap());
    }
}

#[test]
fn fixed_points_of_order4_cyclic_in_s4() {
    // the block rotation (x, y, z) -> (x, z, -y): fixed points (0:-i:1),
    // (0:i:1), (1:0:0)
    let m = ProjMat::from_rows_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
    let g = group_of(&[SurfaceAut::p2(m)]);
    assert_eq!(g.order(), 4);
    let comps = fixed_locus(&g).unwrap();
    let mut pts: Vec<SurfacePoint> = comps
        .iter()
        .filter_map(|c| match c {
            FixedComponent::Point(p) => Some(p.clone()),
            _ => None,
        })
        .collect();
    pts.sort_by_key(|p| format!("{:?}", p));
    let i = CycNum::i();
    let mut want = vec![
        SurfacePoint::p2_i64(1, 0, 0),
        SurfacePoint::p2(&[c(0), i.clone(), c(1)]),
        SurfacePoint::p2(&[c(0), i.neg(), c(1)]),
    ];
    want.sort_by_key(|p| format!("{:?}", p));
    assert_eq!(pts, want);
}

#[test]
fn fixed_locus_trivial_group_p2() {
    let g = group_of(&[SurfaceAut::identity(Model::P2)]);
    let comps = fixed_locus(&g).unwrap();
    assert_eq!(comps, vec![FixedComponent::PlaneP2]);
}

#[test]
fn fixed_locus_cyclic_on_p1_structure() {
    // order-2: two points; identity: everything
    let m = aff_scale(c(-1));
    let g = group_of(&[SurfaceAut::p1(m)]);
    let comps = fixed_locus(&g).unwrap();
    assert_eq!(
        comps.iter().filter(|c| matches!(c, FixedComponent::Point(_))).count(),
        2
    );
    let trivial = group_of(&[SurfaceAut::identity(Model::P1)]);
    assert_eq!(fixed_locus(&trivial).unwrap(), vec![FixedComponent::WholeP1]);
}

#[test]
fn minimal_orbits_trh_nothing_short_in_general_position() {
    let g = group_of(&[t_p1p1(), r_p1p1(), h_p1p1()]);
    assert_eq!(g.order(), 16);
    let inv = minimal_orbit_lengths(&g, 5).unwrap();
    // the square's vertices form a length-4 orbit, but not in general
    // position; nothing of length <= 5 is in general position
    assert!(inv.general_position_lengths().is_empty());
    for o in &inv.orbits {
        assert_eq!(o.general_position, Some(false));
    }
}

#[test]
fn minimal_orbits_r_negs_length_two() {
    let negs = SurfaceAut::p1xp1(aff_scale(c(-1)), aff_scale(c(-1)), true);
    let g = group_of(&[r_p1p1(), negs]);
    assert_eq!(g.order(), 8);
    let inv = minimal_orbit_lengths(&g, 2).unwrap();
    let two = inv.lengths.get(&2).expect("length-2 orbit realized");
    let mut got = two.point_set();
    got.sort_by_key(|p| format!("{:?}", p));
    let mut want = vec![
        SurfacePoint::p1xp1_affine(c(1), c(1)),
        SurfacePoint::p1xp1_affine(c(-1), c(-1)),
    ];
    want.sort_by_key(|p| format!("{:?}", p));
    assert_eq!(got, want);
    assert_eq!(two.general_position, Some(true));
}

#[test]
fn minimal_orbits_a4_on_p1() {
    // footnote generators in PGL2
    let mu3 = CycNum::root_of_unity(3, 1);
    let g1 = ProjMat::new(CMat::new(2, 2, vec![c(1), c(0), c(0), mu3]));
    let g2 = ProjMat::new(CMat::new(2, 2, vec![c(1), c(2), c(1), c(-1)]));
    let g = group_of(&[SurfaceAut::p1(g1), SurfaceAut::p1(g2)]);
    assert_eq!(g.order(), 12);
    let inv = minimal_orbit_lengths(&g, 6).unwrap();
    assert_eq!(inv.realized_lengths(), vec![4, 6]);
}

#[test]
fn minimal_orbits_complete_against_brute_force() {
    // small groups (order <= 12): a brute-force scan over 10^4 random
    // rational points plus the boundary lattice never finds an orbit
    // shorter than the reported minimum
    use rand::{Rng, SeedableRng};
    let cases: Vec<FiniteGroup<SurfaceAut>> = vec![
        group_of(&[r_p1p1()]),
        group_of(&[r_p1p1(), s_p1p1()]),
        group_of(&[t_p1p1(), r_p1p1()]),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for g in cases {
        assert!(g.order() <= 12);
        let bound = g.order();
        let inv = minimal_orbit_lengths(&g, bound).unwrap();
        let reported_min = *inv.lengths.keys().min().unwrap();
        let mut brute_min = usize::MAX;
        for _ in 0..10_000 {
            let q = |rng: &mut rand_chacha::ChaCha8Rng| {
                rat_frac(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=9))
            };
            let p =
                SurfacePoint::p1xp1_affine(CycNum::from_rat(q(&mut rng)), CycNum::from_rat(q(&mut rng)));
            brute_min = brute_min.min(orbit(&g, &p).unwrap().len());
        }
        // boundary points (projective infinity in either factor)
        let zero = c(0);
        let one = c(1);
        for a in -3i64..=3 {
            for p in [
                SurfacePoint::p1xp1(&[zero.clone(), one.clone()], &[one.clone(), c(a)]),
                SurfacePoint::p1xp1(&[one.clone(), c(a)], &[zero.clone(), one.clone()]),
            ] {
                brute_min = brute_min.min(orbit(&g, &p).unwrap().len());
            }
        }
        brute_min = brute_min
            .min(orbit(&g, &SurfacePoint::p1xp1(&[zero.clone(), one.clone()], &[zero, one])).unwrap().len());
        assert!(
            reported_min <= brute_min,
            "brute force found an orbit of length {brute_min} but inventory reports {reported_min}"
        );
    }
}

#[test]
fn general_position_predicates() {
    let p = SurfacePoint::p1xp1_affine(c(1), c(1));
    let q = SurfacePoint::p1xp1_affine(c(-1), c(-1));
    assert!(general_position_p1p1(&p, &q).unwrap());
    let q2 = SurfacePoint::p1xp1_affine(c(1), c(2));
    assert!(!general_position_p1p1(&p, &q2).unwrap());
    assert!(!general_position_p1p1(&p, &p).unwrap());
}

#[test]
fn collinear_and_conic() {
    let a = [c(1), c(0), c(0)];
    let b = [c(0), c(1), c(0)];
    let d = [c(1), c(1), c(0)];
    assert!(collinear(&a, &b, &d));
    let e = [c(0), c(0), c(1)];
    assert!(!collinear(&a, &b, &e));
    // five points on x^2 = yz: (t^2 : t : t^3)? use (1 : t : 1/t) pattern
    let pts: Vec<Vec<CycNum>> = [1i64, 2, 3, 5, 7]
        .iter()
        .map(|&t| {
            vec![c(1), c(t), CycNum::from_rat(rat_frac(1, t))]
        })
        .collect();
    let refs: Vec<&[CycNum]> = pts.iter().map(|v| v.as_slice()).collect();
    let conic = on_common_conic(&refs).unwrap();
    // x^2 - yz scaled canonically
    assert_eq!(conic, canon_vec(&[c(1), c(0), c(0), c(0), c(0), c(-1)]));
}

#[test]
fn dp6_s3_fixed_points() {
    // Prop-style S3: g = (y:z:x)x(v:w:u), h = (w:v:u)x(z:y:x)
    let q = ProjMat::from_rows_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let g = SurfaceAut::dp6(q.clone(), q, false).unwrap();
    let rev = ProjMat::from_rows_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
    let h = SurfaceAut::dp6(rev.clone(), rev, true).unwrap();
    let s3 = group_of(&[g, h]);
    assert_eq!(s3.order(), 6);
    let comps = fixed_locus(&s3).unwrap();
    let pts: Vec<&SurfacePoint> = comps
        .iter()
        .filter_map(|c| match c {
            FixedComponent::Point(p) => Some(p),
            _ => None,
        })
        .collect();
    assert_eq!(pts.len(), 3, "the three fixed points of the S3 action");
    let mu = CycNum::root_of_unity(3, 1);
    for k in 0..3i64 {
        let mk = mu.pow(k).unwrap();
        let m2k = mu.pow(2 * k).unwrap();
        let want = SurfacePoint::dp6(
            &[c(1), m2k.clone(), mk.clone()],
            &[c(1), mk, m2k],
        )
        .unwrap();
        assert!(pts.contains(&&want), "missing fixed point k={k}");
    }
}

#[test]
fn dp6_d6_fixed_point() {
    let d6 = group_of(&[dp6_r(), dp6_s()]);
    let comps = fixed_locus(&d6).unwrap();
    let one3 = [c(1), c(1), c(1)];
    let want = SurfacePoint::dp6(&one3, &one3).unwrap();
    assert_eq!(comps, vec![FixedComponent::Point(want)]);
    // <r> alone also fixes exactly that point
    let zr = group_of(&[dp6_r()]);
    let comps = fixed_locus(&zr).unwrap();
    let one3 = [c(1), c(1), c(1)];
    let want = SurfacePoint::dp6(&one3, &one3).unwrap();
    assert_eq!(comps, vec![FixedComponent::Point(want)]);
}

#[test]
fn orbit_lengths_on_conic_a4() {
    // A4 in PGL3 preserves the Fermat conic; on it there is no orbit of
    // length 1, 2, 3, or 5
    let a4 = crate::matgroup::tests::a4_pgl3();
    let a4 = FiniteGroup {
        elements: a4.elements.into_iter().map(SurfaceAut::P2).collect(),
        table: a4.table,
        generators: a4.generators,
    };
    let fermat = vec![c(1), c(1), c(1), c(0), c(0), c(0)];
    let lengths = orbit_lengths_on_conic(&a4, &fermat, 6).unwrap();
    let ls: Vec<usize> = lengths.keys().copied().collect();
    assert_eq!(ls, vec![4, 6]);
}
