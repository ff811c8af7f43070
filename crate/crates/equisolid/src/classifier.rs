//! The solidity decision engine: one verdict per surface/group input, with a
//! machine-checkable certificate reproducing the case analysis.

use crate::cyclo::CycNum;
use crate::error::Error;
use crate::links;
use crate::matgroup::{close_group, named, Element, FiniteGroup, Perm, DEFAULT_CAP};
use crate::picard::{invariant_rank, w_image_dp6, HexImageKind};
use crate::surfaces::{
    fixed_locus, minimal_orbit_lengths, FixedComponent, Model, SurfaceAut,
};
use crate::toric::{contained_in_g16, is_toric, normalize_r, preserves_square, standard_r};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "G-solid")]
    Solid,
    #[serde(rename = "not G-solid")]
    NotSolid,
    #[serde(rename = "not minimal")]
    NotMinimal,
    #[serde(rename = "indeterminate")]
    Indeterminate,
}

/// Verdict with its provenance and re-verifiable certificate data.
#[derive(Debug, Serialize)]
pub struct SolidityVerdict {
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Model>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<named::Identification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_rank: Option<usize>,
    pub verdict: Verdict,
    /// Rule code naming the decision branch.
    pub rationale: String,
    pub certificate: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

/// Degree <= 4 inputs carry asserted facts instead of a geometric model.
#[derive(Clone, Debug, Serialize)]
pub struct AssertedFacts {
    pub degree: u32,
    pub rank_one: bool,
    /// Degree 4 only: a fixed point off the (-1)-curves ("in general
    /// position").
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixes_point_in_general_position: Option<bool>,
}

pub enum ClassifyInput {
    P2(FiniteGroup<SurfaceAut>),
    P1xP1(FiniteGroup<SurfaceAut>),
    Dp6(FiniteGroup<SurfaceAut>),
    Dp5(FiniteGroup<Perm>),
    Asserted(AssertedFacts),
}

pub fn classify(input: &ClassifyInput) -> Result<SolidityVerdict, Error> {
    match input {
        ClassifyInput::P2(g) => classify_p2(g),
        ClassifyInput::P1xP1(g) => classify_p1xp1(g),
        ClassifyInput::Dp6(g) => classify_dp6(g),
        ClassifyInput::Dp5(g) => classify_dp5(g),
        ClassifyInput::Asserted(a) => classify_asserted(a),
    }
}

fn classify_p2(group: &FiniteGroup<SurfaceAut>) -> Result<SolidityVerdict, Error> {
    let id = named::identify_named(&group.table)?;
    let comps = fixed_locus(group)?;
    let fixed_points: Vec<String> = comps
        .iter()
        .filter_map(|c| match c {
            FixedComponent::Point(p) => Some(p.render()),
            _ => None,
        })
        .collect();
    let fixed_lines: Vec<String> = comps
        .iter()
        .filter_map(|c| match c {
            FixedComponent::LineP2 { .. } | FixedComponent::PlaneP2 => Some(c.describe()),
            _ => None,
        })
        .collect();
    if !comps.is_empty() {
        // a fixed point (or pointwise-fixed line, which contains fixed
        // points) gives the blow-up link to a conic bundle
        return Ok(SolidityVerdict {
            degree: 9,
            model: Some(Model::P2),
            group: Some(id),
            invariant_rank: Some(1),
            verdict: Verdict::NotSolid,
            rationale: "p2:fixed-point".into(),
            certificate: json!({
                "fixed_points": fixed_points,
                "fixed_lines": fixed_lines,
                "link": "blow up a fixed point: conic bundle of degree 8",
            }),
            flags: vec![],
        });
    }
    if id.name == "A4" || id.name == "S4" {
        let link_data = links::enumerate_links_p2(group)?;
        return Ok(SolidityVerdict {
            degree: 9,
            model: Some(Model::P2),
            group: Some(id),
            invariant_rank: Some(1),
            verdict: Verdict::NotSolid,
            rationale: "p2:tetrahedral-or-octahedral".into(),
            certificate: serde_json::to_value(&link_data).unwrap(),
            flags: vec!["not G-birational to any Hirzebruch surface".into()],
        });
    }
    Ok(SolidityVerdict {
        degree: 9,
        model: Some(Model::P2),
        group: Some(id),
        invariant_rank: Some(1),
        verdict: Verdict::Solid,
        rationale: "p2:transitive-rigid".into(),
        certificate: json!({
            "fixed_locus": "empty",
            "note": "no fixed point and outside the two exceptional families: rigid",
        }),
        flags: vec![],
    })
}

fn classify_p1xp1(group: &FiniteGroup<SurfaceAut>) -> Result<SolidityVerdict, Error> {
    let id = named::identify_named(&group.table)?;
    let rank = invariant_rank(group)?;
    if rank != 1 {
        return Ok(SolidityVerdict {
            degree: 8,
            model: Some(Model::P1xP1),
            group: Some(id),
            invariant_rank: Some(rank),
            verdict: Verdict::NotMinimal,
            rationale: "d8:rank-not-one".into(),
            certificate: json!({
                "invariant_rank": rank,
                "swap_element_present": group.elements.iter().any(|g| g.swap_bit()),
            }),
            flags: vec![],
        });
    }
    if !is_toric(group)? {
        let a4 = named::alternating(4);
        let members = crate::matgroup::has_subgroup_isomorphic_to(&group.table, &a4)?
            .expect("non-toric means a tetrahedral subgroup exists");
        return Ok(SolidityVerdict {
            degree: 8,
            model: Some(Model::P1xP1),
            group: Some(id),
            invariant_rank: Some(1),
            verdict: Verdict::Solid,
            rationale: "d8:tetrahedral-subgroup".into(),
            certificate: json!({
                "a4_subgroup_member_indices": members,
                "note": "groups with a tetrahedral subgroup are never toric and carry no short orbit in general position",
            }),
            flags: vec![],
        });
    }
    // toric path: need square-preserving coordinates to test the 4-cycle
    let symmetries: Vec<Option<crate::toric::D4Element>> = group
        .elements
        .iter()
        .map(preserves_square)
        .collect::<Result<_, _>>()?;
    if symmetries.iter().any(|w| w.is_none()) {
        return Ok(SolidityVerdict {
            degree: 8,
            model: Some(Model::P1xP1),
            group: Some(id),
            invariant_rank: Some(1),
            verdict: Verdict::Indeterminate,
            rationale: "d8:normalization-not-constructed".into(),
            certificate: json!({
                "note": "group is toric by the subgroup criterion but is not presented in square-preserving coordinates",
            }),
            flags: vec!["normalization not constructed".into()],
        });
    }
    let four_cycle_idx = symmetries
        .iter()
        .position(|w| w.as_ref().is_some_and(|d| d.is_four_cycle()));
    let Some(gi) = four_cycle_idx else {
        // no 4-cycle: the vertices give a fixed pair or a short orbit
        let inv = minimal_orbit_lengths(group, 2)?;
        let short: Vec<Value> = inv
            .orbits
            .iter()
            .map(|o| {
                json!({
                    "length": o.len(),
                    "points": o.point_set().iter().map(|p| p.render()).collect::<Vec<_>>(),
                    "general_position": o.general_position,
                })
            })
            .collect();
        return Ok(SolidityVerdict {
            degree: 8,
            model: Some(Model::P1xP1),
            group: Some(id),
            invariant_rank: Some(1),
            verdict: Verdict::NotSolid,
            rationale: "d8:no-four-cycle-symmetry".into(),
            certificate: json!({
                "square_image_order": symmetries.len(),
                "short_orbits": short,
                "note": "no element cyclically permutes the square's vertices; a vertex pair yields the conic-bundle link",
            }),
            flags: vec![],
        });
    };
    // normalize the 4-cycle element to r and conjugate the group
    let g = group.elements[gi].clone();
    let (t, used) = match normalize_r(&g) {
        Ok(t) => (t, g),
        Err(_) => {
            let ginv = g.inverse();
            (normalize_r(&ginv)?, ginv)
        }
    };
    let _ = used;
    let conj_gens: Vec<SurfaceAut> = group
        .generator_elements()
        .iter()
        .map(|x| t.compose(x).compose(&t.inverse()))
        .collect();
    let normalized = close_group(&conj_gens, DEFAULT_CAP)?;
    debug_assert_eq!(normalized.order(), group.order());
    assert!(normalized.contains(&standard_r()), "normalization must produce r");
    if contained_in_g16(&normalized) {
        Ok(SolidityVerdict {
            degree: 8,
            model: Some(Model::P1xP1),
            group: Some(id),
            invariant_rank: Some(1),
            verdict: Verdict::NotSolid,
            rationale: "d8:inside-g16".into(),
            certificate: json!({
                "normalized_contains_r": true,
                "g16_membership": "every element of the normalized group lies in <r, s, t>",
                "order": normalized.order(),
            }),
            flags: vec![],
        })
    } else {
        Ok(SolidityVerdict {
            degree: 8,
            model: Some(Model::P1xP1),
            group: Some(id),
            invariant_rank: Some(1),
            verdict: Verdict::Solid,
            rationale: "d8:r-in-group-outside-g16".into(),
            certificate: json!({
                "normalized_contains_r": true,
                "witness_outside_g16": normalized
                    .elements
                    .iter()
                    .find(|e| !crate::toric::g16().contains(e))
                    .map(|_| "found"),
                "order": normalized.order(),
            }),
            flags: vec![],
        })
    }
}

fn classify_dp6(group: &FiniteGroup<SurfaceAut>) -> Result<SolidityVerdict, Error> {
    let id = named::identify_named(&group.table)?;
    let rank = invariant_rank(group)?;
    if rank != 1 {
        let img = w_image_dp6(group)?;
        return Ok(SolidityVerdict {
            degree: 6,
            model: Some(Model::Dp6),
            group: Some(id),
            invariant_rank: Some(rank),
            verdict: Verdict::NotMinimal,
            rationale: "d6:rank-not-one".into(),
            certificate: json!({
                "invariant_rank": rank,
                "hexagon_image_order": img.order,
                "hexagon_image_minimality": matches!(img.kind, HexImageKind::ContainsRotations | HexImageKind::TransitiveS3),
            }),
            flags: vec![],
        });
    }
    let excluded = ["Z6", "S3", "D6"];
    if excluded.contains(&id.name.as_str()) {
        let comps = fixed_locus(group)?;
        let fixed_points: Vec<String> = comps
            .iter()
            .filter_map(|c| match c {
                FixedComponent::Point(p) => Some(p.render()),
                _ => None,
            })
            .collect();
        return Ok(SolidityVerdict {
            degree: 6,
            model: Some(Model::Dp6),
            group: Some(id),
            invariant_rank: Some(1),
            verdict: Verdict::NotSolid,
            rationale: "d6:exceptional-group".into(),
            certificate: json!({
                "fixed_points_in_general_position": fixed_points,
                "link": "blow up a fixed point and contract: the quadric with a short-orbit pair",
            }),
            flags: vec![],
        });
    }
    let img = w_image_dp6(group)?;
    let certificate = json!({
        "group": id.name,
        "hexagon_image_kind": format!("{:?}", img.kind),
    });
    Ok(SolidityVerdict {
        degree: 6,
        model: Some(Model::Dp6),
        group: Some(id),
        invariant_rank: Some(1),
        verdict: Verdict::Solid,
        rationale: "d6:outside-exception-list".into(),
        certificate,
        flags: vec![],
    })
}

fn classify_dp5(group: &FiniteGroup<Perm>) -> Result<SolidityVerdict, Error> {
    let id = named::identify_named(&group.table)?;
    let minimal = ["S5", "A5", "D5", "Z5", "F5"];
    if !minimal.contains(&id.name.as_str()) {
        return Ok(SolidityVerdict {
            degree: 5,
            model: None,
            group: Some(id),
            invariant_rank: None,
            verdict: Verdict::NotMinimal,
            rationale: "d5:rank-not-one".into(),
            certificate: json!({
                "note": "the invariant rank is 1 exactly for S5, A5, D5, Z5, F5",
            }),
            flags: vec![],
        });
    }
    let name = id.name.clone();
    match name.as_str() {
        "Z5" | "D5" => {
            // certificate from the standard plane construction (the degree-5
            // groups are unique up to conjugacy)
            let plane = standard_plane_dp5_group(&id.name)?;
            let data = links::dp5_construction(&plane)?;
            Ok(SolidityVerdict {
                degree: 5,
                model: None,
                group: Some(id.clone()),
                invariant_rank: Some(1),
                verdict: Verdict::NotSolid,
                rationale: "d5:cyclic-or-dihedral".into(),
                certificate: serde_json::to_value(&data).unwrap(),
                flags: vec![],
            })
        }
        other => Ok(SolidityVerdict {
            degree: 5,
            model: None,
            group: Some(id.clone()),
            invariant_rank: Some(1),
            verdict: Verdict::Solid,
            rationale: if other == "F5" { "d5:frobenius".into() } else { "d5:superrigid".into() },
            certificate: json!({ "group": other }),
            flags: vec![],
        }),
    }
}

/// The standard plane realizations of the degree-5 cyclic and dihedral
/// groups: diag(1, mu5, mu5^-1) and the y/z swap.
pub fn standard_plane_dp5_group(name: &str) -> Result<FiniteGroup<SurfaceAut>, Error> {
    let mu5 = CycNum::root_of_unity(5, 1);
    let m = crate::matgroup::ProjMat::new(crate::linalg::CMat::from_fn(3, 3, |i, j| {
        if i != j {
            CycNum::zero()
        } else if i == 0 {
            CycNum::one()
        } else if i == 1 {
            mu5.clone()
        } else {
            mu5.inverse().unwrap()
        }
    }));
    let n = crate::matgroup::ProjMat::from_rows_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    let gens = match name {
        "Z5" => vec![SurfaceAut::p2(m)],
        "D5" => vec![SurfaceAut::p2(m), SurfaceAut::p2(n)],
        _ => return Err(Error::Precondition("expected Z5 or D5".into())),
    };
    close_group(&gens, 32)
}

fn classify_asserted(facts: &AssertedFacts) -> Result<SolidityVerdict, Error> {
    if !(1..=4).contains(&facts.degree) {
        return Err(Error::Precondition(
            "asserted-facts classification covers degrees 1 through 4".into(),
        ));
    }
    if !facts.rank_one {
        return Ok(SolidityVerdict {
            degree: facts.degree,
            model: None,
            group: None,
            invariant_rank: None,
            verdict: Verdict::NotMinimal,
            rationale: "low-degree:rank-not-one".into(),
            certificate: json!({ "asserted": facts }),
            flags: vec![],
        });
    }
    if facts.degree <= 3 {
        return Ok(SolidityVerdict {
            degree: facts.degree,
            model: None,
            group: None,
            invariant_rank: Some(1),
            verdict: Verdict::Solid,
            rationale: "d<=3:rigid".into(),
            certificate: json!({ "asserted": facts }),
            flags: vec![],
        });
    }
    match facts.fixes_point_in_general_position {
        Some(true) => Ok(SolidityVerdict {
            degree: 4,
            model: None,
            group: None,
            invariant_rank: Some(1),
            verdict: Verdict::NotSolid,
            rationale: "d4:fixed-point-off-exceptional-curves".into(),
            certificate: json!({ "asserted": facts }),
            flags: vec![],
        }),
        Some(false) => Ok(SolidityVerdict {
            degree: 4,
            model: None,
            group: None,
            invariant_rank: Some(1),
            verdict: Verdict::Solid,
            rationale: "d4:no-fixed-point-off-exceptional-curves".into(),
            certificate: json!({ "asserted": facts }),
            flags: vec![],
        }),
        None => Err(Error::Precondition(
            "degree 4 needs the fixed-point assertion".into(),
        )),
    }
}
