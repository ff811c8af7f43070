//! Deterministic JSON reports for the command-line front end, with on-disk
//! caching keyed by a digest of the canonical spec.

use crate::classifier::{classify, ClassifyInput, Verdict};
use crate::error::Error;
use crate::links;
use crate::matgroup::{self, goursat, named, ProjMat};
use crate::picard::invariant_rank;
use crate::spec_format::{build_input, render_spec, GroupSpec};
use crate::surfaces::{fixed_locus, minimal_orbit_lengths, SurfaceAut};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

pub const SCHEMA: &str = "equisolid-report/1";

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: Value,
    pub result: Value,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub max_length: Option<usize>,
    pub no_cache: bool,
}

/// Exit code convention: 0 success, 2 not-minimal, 3 indeterminate. Errors
/// are raised as `Err` and map to exit code 1 at the boundary.
pub fn exit_code_for(report: &Report) -> i32 {
    match report.result.get("verdict").and_then(|v| v.as_str()) {
        Some("not minimal") => 2,
        Some("indeterminate") => 3,
        _ => 0,
    }
}

fn input_echo(spec: &GroupSpec) -> Value {
    json!({
        "name": spec.name,
        "surface": spec.surface.as_str(),
        "spec": render_spec(spec),
    })
}

fn group_info(input: &ClassifyInput) -> Result<Value, Error> {
    let (order, id) = match input {
        ClassifyInput::P2(g) | ClassifyInput::P1xP1(g) | ClassifyInput::Dp6(g) => {
            (g.order(), named::identify_named(&g.table)?)
        }
        ClassifyInput::Dp5(g) => (g.order(), named::identify_named(&g.table)?),
        ClassifyInput::Asserted(_) => return Ok(Value::Null),
    };
    Ok(json!({ "order": order, "identification": id }))
}

/// Build the report for one command on one parsed spec.
pub fn run_command(command: &str, spec: &GroupSpec, options: &Options) -> Result<Report, Error> {
    if let Some(cached) = cache_read(command, spec, options) {
        return Ok(cached);
    }
    let input = build_input(spec)?;
    let result = match command {
        "classify" => {
            let verdict = classify(&input)?;
            serde_json::to_value(&verdict).unwrap()
        }
        "orbits" => {
            let bound = options.max_length.unwrap_or(8);
            let g = surface_group(&input)?;
            let inv = minimal_orbit_lengths(g, bound)?;
            let orbits: Vec<Value> = inv
                .orbits
                .iter()
                .map(|o| {
                    json!({
                        "length": o.len(),
                        "points": o.point_set().iter().map(|p| p.render()).collect::<Vec<_>>(),
                        "stabilizer_order": o.stabilizer.len(),
                        "general_position": o.general_position,
                        "on_conic": o.on_conic.as_ref().map(|c| c.iter().map(crate::cyclo::render_scalar).collect::<Vec<_>>()),
                    })
                })
                .collect();
            json!({
                "bound": bound,
                "realized_lengths": inv.realized_lengths(),
                "general_position_lengths": inv.general_position_lengths(),
                "orbits": orbits,
                "families": inv.families.iter().map(|f| json!({
                    "component": f.component.describe(),
                    "generic_length": f.generic_length,
                    "pointwise_stabilizer_order": f.pointwise_stabilizer_order,
                })).collect::<Vec<_>>(),
            })
        }
        "fixed-points" => {
            let g = surface_group(&input)?;
            let comps = fixed_locus(g)?;
            json!({
                "components": comps.iter().map(|c| c.describe()).collect::<Vec<_>>(),
                "invariant_rank": match invariant_rank(g) {
                    Ok(r) => Value::from(r),
                    Err(_) => Value::Null,
                },
            })
        }
        "links" => {
            let g = surface_group(&input)?;
            let inv = links::enumerate_links_p2(g)?;
            serde_json::to_value(&inv).unwrap()
        }
        "identify" => identify_result(&input)?,
        "goursat" => goursat_result(&input)?,
        other => return Err(Error::Parse(format!("unknown command '{other}'"))),
    };
    let report = Report {
        schema: SCHEMA,
        command: command.to_string(),
        input: input_echo(spec),
        result,
    };
    cache_write(command, spec, options, &report);
    Ok(report)
}

fn surface_group<'a>(input: &'a ClassifyInput) -> Result<&'a matgroup::FiniteGroup<SurfaceAut>, Error> {
    match input {
        ClassifyInput::P2(g) | ClassifyInput::P1xP1(g) | ClassifyInput::Dp6(g) => Ok(g),
        _ => Err(Error::Precondition(
            "this command needs a geometric surface model (P2, P1xP1, or dP6)".into(),
        )),
    }
}

fn identify_result(input: &ClassifyInput) -> Result<Value, Error> {
    let table = match input {
        ClassifyInput::P2(g) | ClassifyInput::P1xP1(g) | ClassifyInput::Dp6(g) => &g.table,
        ClassifyInput::Dp5(g) => &g.table,
        ClassifyInput::Asserted(_) => {
            return Err(Error::Precondition("identify needs a group input".into()))
        }
    };
    let id = named::identify_named(table)?;
    let fp = matgroup::fingerprint(table);
    // the dihedral-subgroup certificate for small groups
    let d4_subgroup = if table.n % 8 == 0 && table.n <= 64 {
        let d4 = named::dihedral(4);
        Some(matgroup::has_subgroup_isomorphic_to(table, &d4)?.is_some())
    } else {
        None
    };
    Ok(json!({
        "order": table.n,
        "identification": id,
        "fingerprint": fp,
        "has_d4_subgroup": d4_subgroup,
    }))
}

/// Goursat data for the ruling-preserving part of a quadric group: project
/// the swap-free elements to the two factors and decompose.
fn goursat_result(input: &ClassifyInput) -> Result<Value, Error> {
    let ClassifyInput::P1xP1(g) = input else {
        return Err(Error::Precondition("goursat decomposition applies to P1xP1 inputs".into()));
    };
    let kernel: Vec<&SurfaceAut> = g.elements.iter().filter(|e| !e.swap_bit()).collect();
    let a_parts: Vec<ProjMat> = kernel.iter().map(|e| e.factors().unwrap().0.clone()).collect();
    let b_parts: Vec<ProjMat> = kernel.iter().map(|e| e.factors().unwrap().1.clone()).collect();
    // projections of a group are groups; close to fix a canonical indexing
    let g1 = matgroup::close_group(&a_parts, matgroup::DEFAULT_CAP)?;
    let g2 = matgroup::close_group(&b_parts, matgroup::DEFAULT_CAP)?;
    let (t1, t2) = (g1.table.clone(), g2.table.clone());
    let pairs: Vec<(u32, u32)> = kernel
        .iter()
        .map(|e| {
            let (a, b) = e.factors().unwrap();
            (
                g1.index_of(a).expect("factor lies in the projection"),
                g2.index_of(b).expect("factor lies in the projection"),
            )
        })
        .collect();
    let r = goursat::pair_group(&t1, &t2, pairs);
    let (data, h1r, h2r) = goursat::goursat_decompose(&t1, &t2, &r)?;
    let rebuilt = goursat::fibre_product(&h1r, &h2r, &data.phi, &data.psi, &data.d)?;
    let reconstruction_ok = {
        let a: std::collections::HashSet<(u32, u32)> = r.pairs.iter().copied().collect();
        let b: std::collections::HashSet<(u32, u32)> = rebuilt.pairs.iter().copied().collect();
        a == b
    };
    Ok(json!({
        "ruling_kernel_order": r.pairs.len(),
        "factor_orders": [t1.n, t2.n],
        "common_quotient": {
            "order": data.d.n,
            "identification": named::identify_named(&data.d)?,
        },
        "reconstruction_ok": reconstruction_ok,
        "kernel_identification": named::identify_named(&r.table)?,
    }))
}

pub fn render_report(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Catalog report
// ---------------------------------------------------------------------------

/// One classify verdict per catalog entry; deterministic order and content.
pub fn catalog_report(options: &Options) -> Result<Report, Error> {
    let mut rows = Vec::new();
    for e in crate::catalog::CATALOG {
        let spec = crate::spec_format::parse_spec(e.text)?;
        let sub = run_command("classify", &spec, options)?;
        let input = build_input(&spec)?;
        let gi = group_info(&input)?;
        rows.push(json!({
            "name": e.name,
            "group": gi,
            "verdict": sub.result.get("verdict"),
            "rationale": sub.result.get("rationale"),
        }));
    }
    Ok(Report {
        schema: SCHEMA,
        command: "catalog".into(),
        input: json!({ "entries": crate::catalog::CATALOG.len() }),
        result: json!({ "verdicts": rows }),
    })
}

pub fn classify_verdict_of(report: &Report) -> Option<Verdict> {
    match report.result.get("verdict").and_then(|v| v.as_str()) {
        Some("G-solid") => Some(Verdict::Solid),
        Some("not G-solid") => Some(Verdict::NotSolid),
        Some("not minimal") => Some(Verdict::NotMinimal),
        Some("indeterminate") => Some(Verdict::Indeterminate),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

pub fn cache_dir() -> PathBuf {
    if let Ok(d) = std::env::var("EQUISOLID_CACHE_DIR") {
        return PathBuf::from(d);
    }
    std::env::temp_dir().join("equisolid-cache")
}

fn cache_key(command: &str, spec: &GroupSpec, options: &Options) -> String {
    let mut h = Sha256::new();
    h.update(SCHEMA.as_bytes());
    h.update(b"\0");
    h.update(command.as_bytes());
    h.update(b"\0");
    h.update(render_spec(spec).as_bytes());
    h.update(b"\0");
    h.update(format!("{:?}", options.max_length).as_bytes());
    hex::encode(h.finalize())
}

fn cache_read(command: &str, spec: &GroupSpec, options: &Options) -> Option<Report> {
    if options.no_cache {
        return None;
    }
    let path = cache_dir().join(format!("{}.json", cache_key(command, spec, options)));
    let bytes = std::fs::read(path).ok()?;
    let v: Value = serde_json::from_slice(&bytes).ok()?;
    Some(Report {
        schema: SCHEMA,
        command: v.get("command")?.as_str()?.to_string(),
        input: v.get("input")?.clone(),
        result: v.get("result")?.clone(),
    })
}

fn cache_write(command: &str, spec: &GroupSpec, options: &Options, report: &Report) {
    if options.no_cache {
        return;
    }
    let dir = cache_dir();
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let path = dir.join(format!("{}.json", cache_key(command, spec, options)));
    let tmp = path.with_extension("tmp");
    if std::fs::write(&tmp, render_report(report)).is_ok() {
        let _ = std::fs::rename(&tmp, &path);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec_format::parse_spec;

    #[test]
    fn classify_report_deterministic() {
        let spec = parse_spec(crate::catalog::entry("p1p1/Z4-r").unwrap().text).unwrap();
        let opts = Options { no_cache: true, ..Default::default() };
        let r1 = render_report(&run_command("classify", &spec, &opts).unwrap());
        let r2 = render_report(&run_command("classify", &spec, &opts).unwrap());
        assert_eq!(r1, r2);
        assert!(r1.contains("equisolid-report/1"));
        assert!(r1.contains("not G-solid"));
    }

    #[test]
    fn goursat_report_on_contrex() {
        let spec = parse_spec(crate::catalog::entry("p1p1/contrex-ext").unwrap().text).unwrap();
        let opts = Options { no_cache: true, ..Default::default() };
        let r = run_command("goursat", &spec, &opts).unwrap();
        assert_eq!(r.result["ruling_kernel_order"], 16);
        assert_eq!(r.result["common_quotient"]["order"], 4);
        assert_eq!(r.result["reconstruction_ok"], true);
        assert_eq!(r.result["kernel_identification"]["name"], "Z2^2:Z4");
    }

    #[test]
    fn identify_report_on_contrex() {
        let spec = parse_spec(crate::catalog::entry("p1p1/contrex").unwrap().text).unwrap();
        let opts = Options { no_cache: true, ..Default::default() };
        let r = run_command("identify", &spec, &opts).unwrap();
        assert_eq!(r.result["order"], 16);
        assert_eq!(r.result["identification"]["name"], "Z2^2:Z4");
        assert_eq!(r.result["has_d4_subgroup"], false);
    }

    #[test]
    fn cache_round_trip() {
        let tmp = tempfile::tempdir().unwrap();
        std::env::set_var("EQUISOLID_CACHE_DIR", tmp.path());
        let spec = parse_spec(crate::catalog::entry("dp5/Z5").unwrap().text).unwrap();
        let opts = Options::default();
        let r1 = render_report(&run_command("classify", &spec, &opts).unwrap());
        let r2 = render_report(&run_command("classify", &spec, &opts).unwrap());
        assert_eq!(r1, r2);
        std::env::remove_var("EQUISOLID_CACHE_DIR");
    }
}
