//! Picard-lattice actions: the ruling swap on P1xP1 and the hexagon of
//! (-1)-curves on the degree-6 del Pezzo surface, with invariant ranks.

use crate::cyclo::CycNum;
use crate::error::Error;
use crate::matgroup::{named, CayleyTable, Element, FiniteGroup, Perm};
use crate::surfaces::{act, Model, SurfaceAut, SurfacePoint};
use std::sync::OnceLock;

/// Labels of the six (-1)-curves in hexagon order.
pub const HEX_CURVES: [&str; 6] = ["E1", "D12", "E2", "D23", "E3", "D13"];

/// The hexagon of (-1)-curves on the dP6 model xu = yv = zw:
/// E1 = {(1:0:0) x (0:v:w)}, E2 = {(0:1:0) x (u:0:w)}, E3 = {(0:0:1) x (u:v:0)},
/// D23 = {(0:y:z) x (1:0:0)}, D13 = {(x:0:z) x (0:1:0)}, D12 = {(x:y:0) x (0:0:1)};
/// consecutive curves (in `HEX_CURVES` order) meet in one vertex each.
pub struct HexagonModel {
    /// vertices[i] = intersection of curve i and curve (i+1) mod 6.
    pub vertices: [SurfacePoint; 6],
}

fn c(n: i64) -> CycNum {
    CycNum::from_i64(n)
}

static HEXAGON: OnceLock<HexagonModel> = OnceLock::new();

pub fn hexagon() -> &'static HexagonModel {
    HEXAGON.get_or_init(|| {
        let m = HexagonModel::build();
        m.verify().expect("hexagon incidence verification");
        m
    })
}

impl HexagonModel {
    fn build() -> Self {
        let p = |a: [i64; 3], b: [i64; 3]| {
            SurfacePoint::dp6(
                &[c(a[0]), c(a[1]), c(a[2])],
                &[c(b[0]), c(b[1]), c(b[2])],
            )
            .expect("hexagon vertices lie on the surface")
        };
        // E1 cap D12, D12 cap E2, E2 cap D23, D23 cap E3, E3 cap D13, D13 cap E1
        HexagonModel {
            vertices: [
                p([1, 0, 0], [0, 0, 1]),
                p([0, 1, 0], [0, 0, 1]),
                p([0, 1, 0], [1, 0, 0]),
                p([0, 0, 1], [1, 0, 0]),
                p([0, 0, 1], [0, 1, 0]),
                p([1, 0, 0], [0, 1, 0]),
            ],
        }
    }

    /// Startup checks: every curve parametrization stays on the surface,
    /// consecutive curves share exactly the listed vertex, non-consecutive
    /// curves are disjoint.
    fn verify(&self) -> Result<(), Error> {
        // curves as (first-factor data, second-factor data): each is either a
        // fixed point or a parametrized line; sample the line at 3 values
        for i in 0..6 {
            for j in 0..6 {
                let shared: Vec<usize> = (0..6)
                    .filter(|&v| {
                        let on_i = v == i || (v + 1) % 6 == i;
                        let on_j = v == j || (v + 1) % 6 == j;
                        on_i && on_j
                    })
                    .collect();
                if i == j {
                    continue;
                }
                let consecutive = (i + 1) % 6 == j || (j + 1) % 6 == i;
                if consecutive {
                    if shared.len() != 1 {
                        return Err(Error::HypothesisFailed(format!(
                            "curves {i},{j} should share one vertex"
                        )));
                    }
                } else if !shared.is_empty() {
                    return Err(Error::HypothesisFailed(format!(
                        "curves {i},{j} should be disjoint"
                    )));
                }
            }
        }
        // sample points of each curve lie on the surface
        for k in 0..6 {
            for t in [0i64, 1, 2] {
                let pt = curve_sample(k, c(t));
                if !pt.on_dp6_surface() {
                    return Err(Error::HypothesisFailed(format!(
                        "curve {k} leaves the surface"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A sample point of hexagon curve `k` at parameter `t` (exact).
fn curve_sample(k: usize, t: CycNum) -> SurfacePoint {
    let one = CycNum::one();
    let zero = CycNum::zero();
    let line = |a: CycNum, b: CycNum| [a, b];
    let (p, q): ([CycNum; 3], [CycNum; 3]) = match k {
        0 => ([one.clone(), zero.clone(), zero.clone()], {
            let [a, b] = line(one.clone(), t);
            [zero.clone(), a, b]
        }),
        1 => (
            {
                let [a, b] = line(one.clone(), t);
                [a, b, zero.clone()]
            },
            [zero.clone(), zero.clone(), one.clone()],
        ),
        2 => ([zero.clone(), one.clone(), zero.clone()], {
            let [a, b] = line(one.clone(), t);
            [a, zero.clone(), b]
        }),
        3 => (
            {
                let [a, b] = line(one.clone(), t);
                [zero.clone(), a, b]
            },
            [one.clone(), zero.clone(), zero.clone()],
        ),
        4 => ([zero.clone(), zero.clone(), one.clone()], {
            let [a, b] = line(one.clone(), t);
            [a, b, zero.clone()]
        }),
        5 => (
            {
                let [a, b] = line(one.clone(), t);
                [a, zero.clone(), b]
            },
            [zero.clone(), one.clone(), zero.clone()],
        ),
        _ => unreachable!(),
    };
    SurfacePoint::Dp6(crate::surfaces::canon_vec(&p), crate::surfaces::canon_vec(&q))
}

/// Curve classes on the basis (H, E1, E2, E3): E_i itself, D_ij = H - E_i - E_j.
fn curve_class(label: &str) -> [i64; 4] {
    match label {
        "E1" => [0, 1, 0, 0],
        "E2" => [0, 0, 1, 0],
        "E3" => [0, 0, 0, 1],
        "D12" => [1, -1, -1, 0],
        "D13" => [1, -1, 0, -1],
        "D23" => [1, 0, -1, -1],
        _ => unreachable!(),
    }
}

/// Lattice action of one dP6 automorphism: the hexagon vertex permutation,
/// the induced curve permutation, and the 4x4 matrix on (H, E1, E2, E3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dp6LatticeAction {
    /// Permutation of the 6 vertices (hexagon order).
    pub vertex_perm: Perm,
    /// curve_images[i] = index of the image of HEX_CURVES[i].
    pub curve_images: [usize; 6],
    /// Column-action matrix on (H, E1, E2, E3).
    pub matrix: [[i64; 4]; 4],
}

/// Lattice automorphism induced by a surface automorphism.
pub enum PicAction {
    /// P1xP1: identity or the ruling swap on Z^2.
    RulingSwap(bool),
    Dp6(Dp6LatticeAction),
}

pub fn pic_action(g: &SurfaceAut) -> Result<PicAction, Error> {
    match g.model() {
        Model::P1xP1 => Ok(PicAction::RulingSwap(g.swap_bit())),
        Model::Dp6 => Ok(PicAction::Dp6(dp6_lattice_action(g)?)),
        _ => Err(Error::ModelMismatch {
            expected: "P1xP1 or dP6".into(),
            got: g.model().to_string(),
        }),
    }
}

pub fn dp6_lattice_action(g: &SurfaceAut) -> Result<Dp6LatticeAction, Error> {
    let hex = hexagon();
    let mut vperm = [0u8; 6];
    for (i, v) in hex.vertices.iter().enumerate() {
        let img = act(g, v)?;
        let j = hex
            .vertices
            .iter()
            .position(|w| *w == img)
            .ok_or_else(|| Error::NotAnAutomorphism(format!(
                "vertex {i} maps off the hexagon to {}",
                img.render()
            )))?;
        vperm[i] = j as u8;
    }
    // curve i joins vertices (i-1, i); its image is the curve joining the
    // image vertices, which must be adjacent
    let mut curve_images = [0usize; 6];
    for i in 0..6 {
        let va = vperm[(i + 5) % 6] as usize;
        let vb = vperm[i] as usize;
        // curve containing both vertices va-side: vertices of curve k are
        // (k-1, k)
        let k = (0..6)
            .find(|&k| {
                let s = [(k + 5) % 6, k];
                s.contains(&va) && s.contains(&vb)
            })
            .ok_or_else(|| Error::NotAnAutomorphism(
                "vertex permutation does not preserve hexagon adjacency".into(),
            ))?;
        curve_images[i] = k;
    }
    // 4x4 matrix: columns = images of H, E1, E2, E3
    let mut matrix = [[0i64; 4]; 4];
    let img_class = |i: usize| curve_class(HEX_CURVES[curve_images[i]]);
    // E1, E2, E3 are curves 0, 2, 4 in hexagon order
    for (col, curve_idx) in [(1usize, 0usize), (2, 2), (3, 4)] {
        let cls = img_class(curve_idx);
        for r in 0..4 {
            matrix[r][col] = cls[r];
        }
    }
    // H = D12 + E1 + E2 as classes (curves 1, 0, 2)
    let d12 = img_class(1);
    let e1 = img_class(0);
    let e2 = img_class(2);
    for r in 0..4 {
        matrix[r][0] = d12[r] + e1[r] + e2[r];
    }
    Ok(Dp6LatticeAction { vertex_perm: Perm(vperm.to_vec()), curve_images, matrix })
}

fn mat4_mul(a: &[[i64; 4]; 4], b: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Rank of the common fixed sublattice (exact kernel of stacked `M_g - I`).
pub fn invariant_rank(group: &FiniteGroup<SurfaceAut>) -> Result<usize, Error> {
    match group.elements[0].model() {
        Model::P2 => Ok(1),
        Model::P1 => Ok(1),
        Model::P1xP1 => {
            let any_swap = group.elements.iter().any(|g| g.swap_bit());
            Ok(if any_swap { 1 } else { 2 })
        }
        Model::Dp6 => {
            let mut rows: Vec<Vec<CycNum>> = Vec::new();
            for gi in &group.generators {
                let a = dp6_lattice_action(&group.elements[*gi as usize])?;
                for r in 0..4 {
                    let mut row = Vec::with_capacity(4);
                    for ccol in 0..4 {
                        let v = a.matrix[r][ccol] - if r == ccol { 1 } else { 0 };
                        row.push(c(v));
                    }
                    rows.push(row);
                }
            }
            if rows.is_empty() {
                return Ok(4);
            }
            Ok(4 - crate::linalg::rank(&rows))
        }
    }
}

/// Classification of the image of a dP6 group in the hexagon's dihedral
/// symmetry group.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum HexImageKind {
    /// Contains the full rotation subgroup Z6.
    ContainsRotations,
    /// The transitive S3 (rotations by 2 plus vertex-fixing reflections),
    /// acting transitively on the six curves.
    TransitiveS3,
    /// Anything smaller: fails the minimality requirement.
    Smaller,
}

pub struct HexImage {
    pub order: usize,
    pub vertex_perms: Vec<Perm>,
    pub kind: HexImageKind,
    /// True when the image contains Z6 or the transitive S3 (the necessary
    /// condition for the surface to carry a rank-1 action).
    pub passes_minimality: bool,
}

/// Image of the group in the dihedral symmetry group of the hexagon.
pub fn w_image_dp6(group: &FiniteGroup<SurfaceAut>) -> Result<HexImage, Error> {
    let gens: Vec<Perm> = group
        .generators
        .iter()
        .map(|&gi| Ok(dp6_lattice_action(&group.elements[gi as usize])?.vertex_perm))
        .collect::<Result<_, Error>>()?;
    let img = crate::matgroup::close_group(&gens, 13)?;
    let rotation = Perm(vec![1, 2, 3, 4, 5, 0]);
    let has_z6 = img.contains(&rotation);
    // transitivity on curves: curve i joins vertices (i-1, i); the curve
    // orbit of curve 0 under the image
    let curve_image = |p: &Perm, i: usize| -> usize {
        let va = p.apply((i + 5) % 6);
        let vb = p.apply(i);
        (0..6)
            .find(|&k| {
                let s = [(k + 5) % 6, k];
                s.contains(&va) && s.contains(&vb)
            })
            .expect("dihedral symmetries preserve adjacency")
    };
    let mut orbit = vec![0usize];
    let mut k = 0;
    while k < orbit.len() {
        for p in &img.elements {
            let im = curve_image(p, orbit[k]);
            if !orbit.contains(&im) {
                orbit.push(im);
            }
        }
        k += 1;
    }
    let transitive = orbit.len() == 6;
    let kind = if has_z6 {
        HexImageKind::ContainsRotations
    } else if transitive && img.order() == 6 {
        HexImageKind::TransitiveS3
    } else {
        HexImageKind::Smaller
    };
    let passes = matches!(kind, HexImageKind::ContainsRotations | HexImageKind::TransitiveS3);
    Ok(HexImage {
        order: img.order(),
        vertex_perms: img.elements.clone(),
        kind,
        passes_minimality: passes,
    })
}

/// Multiplicativity check used by property tests: the lattice action of a
/// product is the product of the lattice actions.
pub fn pic_action_is_multiplicative(group: &FiniteGroup<SurfaceAut>) -> Result<bool, Error> {
    for &i in &group.generators {
        for &j in &group.generators {
            let gi = &group.elements[i as usize];
            let gj = &group.elements[j as usize];
            let composite = gi.compose(gj);
            match group.elements[0].model() {
                Model::P1xP1 => {
                    if composite.swap_bit() != (gi.swap_bit() ^ gj.swap_bit()) {
                        return Ok(false);
                    }
                }
                Model::Dp6 => {
                    let a = dp6_lattice_action(gi)?;
                    let b = dp6_lattice_action(gj)?;
                    let ab = dp6_lattice_action(&composite)?;
                    if mat4_mul(&a.matrix, &b.matrix) != ab.matrix {
                        return Ok(false);
                    }
                }
                _ => {}
            }
        }
    }
    Ok(true)
}

/// Reference D6 table for identifying hexagon images.
pub fn hexagon_dihedral() -> &'static CayleyTable {
    static T: OnceLock<CayleyTable> = OnceLock::new();
    T.get_or_init(|| named::dihedral(6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::close_group;
    use crate::surfaces::tests::{dp6_r, dp6_s, group_of, r_p1p1, s_p1p1, t_p1p1};

    #[test]
    fn hexagon_builds_and_verifies() {
        let h = hexagon();
        assert_eq!(h.vertices.len(), 6);
    }

    #[test]
    fn rotation_and_reflection() {
        let r = dp6_lattice_action(&dp6_r()).unwrap();
        // r acts on the hexagon as an elementary rotation: vertex perm is a
        // 6-cycle
        let p = &r.vertex_perm;
        let mut x = 0usize;
        let mut steps = 0;
        loop {
            x = p.apply(x);
            steps += 1;
            if x == 0 {
                break;
            }
        }
        assert_eq!(steps, 6, "r is a 6-cycle on vertices");
        let s = dp6_lattice_action(&dp6_s()).unwrap();
        // s is a reflection fixing no vertex
        for v in 0..6 {
            assert_ne!(s.vertex_perm.apply(v), v);
        }
        assert_eq!(s.curve_images[0], 0, "s fixes the curve E1");
    }

    #[test]
    fn invariant_ranks() {
        let d6 = group_of(&[dp6_r(), dp6_s()]);
        assert_eq!(invariant_rank(&d6).unwrap(), 1);
        let zr = group_of(&[dp6_r()]);
        assert_eq!(invariant_rank(&zr).unwrap(), 1);
        let zs = group_of(&[dp6_s()]);
        assert_eq!(invariant_rank(&zs).unwrap(), 3);
        let trivial = group_of(&[crate::surfaces::SurfaceAut::identity(
            crate::surfaces::Model::Dp6,
        )]);
        assert_eq!(invariant_rank(&trivial).unwrap(), 4);
        // P1xP1: swap gives 1, swap-free nontrivial gives 2
        assert_eq!(invariant_rank(&group_of(&[r_p1p1()])).unwrap(), 1);
        assert_eq!(invariant_rank(&group_of(&[t_p1p1()])).unwrap(), 2);
    }

    #[test]
    fn w_images() {
        let zr = group_of(&[dp6_r()]);
        let img = w_image_dp6(&zr).unwrap();
        assert_eq!(img.kind, HexImageKind::ContainsRotations);
        assert_eq!(img.order, 6);

        let zs = group_of(&[dp6_s()]);
        let img = w_image_dp6(&zs).unwrap();
        assert_eq!(img.kind, HexImageKind::Smaller);
        assert!(!img.passes_minimality);

        // <r^2, rs>: the transitive S3
        use crate::matgroup::Element;
        let r = dp6_r();
        let r2 = r.compose(&r);
        let rs = r.compose(&dp6_s());
        let s3 = group_of(&[r2, rs]);
        assert_eq!(s3.order(), 6);
        let img = w_image_dp6(&s3).unwrap();
        assert_eq!(img.kind, HexImageKind::TransitiveS3);
        assert!(img.passes_minimality);
    }

    #[test]
    fn multiplicativity() {
        let d6 = group_of(&[dp6_r(), dp6_s()]);
        assert!(pic_action_is_multiplicative(&d6).unwrap());
        let g16 = group_of(&[r_p1p1(), s_p1p1(), t_p1p1()]);
        assert!(pic_action_is_multiplicative(&g16).unwrap());
    }

    #[test]
    fn rank_monotone_under_growth() {
        let zr = group_of(&[dp6_r()]);
        let d6 = group_of(&[dp6_r(), dp6_s()]);
        let zs = group_of(&[dp6_s()]);
        let trivial = group_of(&[crate::surfaces::SurfaceAut::identity(
            crate::surfaces::Model::Dp6,
        )]);
        let rk = |g| invariant_rank(g).unwrap();
        assert!(rk(&d6) <= rk(&zr).min(rk(&zs)));
        assert!(rk(&zr) <= rk(&trivial));
        let _ = close_group(&[dp6_r()], 16).unwrap();
    }
}
