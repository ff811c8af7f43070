//! The group-spec text format: UTF-8 `key = value` lines with bracketed
//! matrix literals in the scalar grammar, permutation cycles for the
//! degree-5 surface, and asserted facts for degrees <= 4.

use crate::classifier::{AssertedFacts, ClassifyInput};
use crate::cyclo::{parse_scalar, render_scalar, CycNum};
use crate::error::Error;
use crate::linalg::CMat;
use crate::matgroup::{close_group, Perm, ProjMat, DEFAULT_CAP};
use crate::surfaces::SurfaceAut;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceKind {
    P2,
    P1xP1,
    Dp6,
    Dp5,
    Asserted,
}

impl SurfaceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SurfaceKind::P2 => "P2",
            SurfaceKind::P1xP1 => "P1xP1",
            SurfaceKind::Dp6 => "dP6",
            SurfaceKind::Dp5 => "dP5",
            SurfaceKind::Asserted => "asserted",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    /// One square matrix (P2).
    Single(Vec<Vec<CycNum>>),
    /// A factor pair with the swap flag (P1xP1, dP6).
    Pair { a: Vec<Vec<CycNum>>, b: Vec<Vec<CycNum>>, swap: bool },
    /// A permutation in cycle notation (dP5).
    Permutation(Perm),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    pub name: Option<String>,
    pub surface: SurfaceKind,
    pub generators: Vec<GenSpec>,
    pub asserted: Option<AssertedFactsSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssertedFactsSpec {
    pub degree: u32,
    pub rank_one: bool,
    pub fixes_general_point: Option<bool>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {}: {}", line, msg.into()))
}

/// Parse a spec file. Errors carry the offending line number.
pub fn parse_spec(text: &str) -> Result<GroupSpec, Error> {
    let mut name = None;
    let mut surface: Option<SurfaceKind> = None;
    let mut generators = Vec::new();
    let mut degree: Option<u32> = None;
    let mut rank_one: Option<bool> = None;
    let mut fixes: Option<bool> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(err(lineno, "expected 'key = value'"));
        };
        let key = line[..eq].trim();
        let value = line[eq + 1..].trim();
        match key {
            "name" => name = Some(value.to_string()),
            "surface" => {
                surface = Some(match value {
                    "P2" => SurfaceKind::P2,
                    "P1xP1" => SurfaceKind::P1xP1,
                    "dP6" => SurfaceKind::Dp6,
                    "dP5" => SurfaceKind::Dp5,
                    "asserted" => SurfaceKind::Asserted,
                    other => return Err(err(lineno, format!("unknown surface '{other}'"))),
                })
            }
            "gen" => {
                let sk = surface
                    .ok_or_else(|| err(lineno, "surface must be declared before generators"))?;
                generators.push(parse_gen(sk, value, lineno)?);
            }
            "degree" => {
                degree = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| err(lineno, "degree must be an integer"))?,
                )
            }
            "rank_one" => rank_one = Some(parse_bool(value, lineno)?),
            "fixes_general_point" => fixes = Some(parse_bool(value, lineno)?),
            other => return Err(err(lineno, format!("unknown key '{other}'"))),
        }
    }
    let surface = surface.ok_or_else(|| err(0, "missing 'surface'"))?;
    let asserted = if surface == SurfaceKind::Asserted {
        Some(AssertedFactsSpec {
            degree: degree.ok_or_else(|| err(0, "asserted input needs 'degree'"))?,
            rank_one: rank_one.unwrap_or(true),
            fixes_general_point: fixes,
        })
    } else {
        if !generators.iter().any(|_| true) {
            return Err(err(0, "geometric input needs at least one 'gen'"));
        }
        None
    };
    Ok(GroupSpec { name, surface, generators, asserted })
}

fn parse_bool(v: &str, lineno: usize) -> Result<bool, Error> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(err(lineno, "expected 'true' or 'false'")),
    }
}

fn parse_gen(surface: SurfaceKind, value: &str, lineno: usize) -> Result<GenSpec, Error> {
    match surface {
        SurfaceKind::P2 => {
            let m = parse_matrix(value, lineno)?;
            expect_square(&m, 3, lineno)?;
            Ok(GenSpec::Single(m))
        }
        SurfaceKind::P1xP1 | SurfaceKind::Dp6 => {
            let dim = if surface == SurfaceKind::P1xP1 { 2 } else { 3 };
            let mut parts: Vec<&str> = value.split(';').map(|s| s.trim()).collect();
            let swap = match parts.last() {
                Some(&"swap") => {
                    parts.pop();
                    true
                }
                _ => false,
            };
            if parts.len() != 2 {
                return Err(err(
                    lineno,
                    "expected 'M1 ; M2' or 'M1 ; M2 ; swap' for a product surface",
                ));
            }
            let a = parse_matrix(parts[0], lineno)?;
            let b = parse_matrix(parts[1], lineno)?;
            expect_square(&a, dim, lineno)?;
            expect_square(&b, dim, lineno)?;
            Ok(GenSpec::Pair { a, b, swap })
        }
        SurfaceKind::Dp5 => Ok(GenSpec::Permutation(parse_cycles(value, lineno)?)),
        SurfaceKind::Asserted => Err(err(lineno, "asserted inputs have no generators")),
    }
}

fn expect_square(m: &[Vec<CycNum>], dim: usize, lineno: usize) -> Result<(), Error> {
    if m.len() != dim || m.iter().any(|r| r.len() != dim) {
        return Err(err(lineno, format!("expected a {dim}x{dim} matrix")));
    }
    Ok(())
}

/// `[[a,b],[c,d]]` with scalar-grammar entries.
fn parse_matrix(text: &str, lineno: usize) -> Result<Vec<Vec<CycNum>>, Error> {
    let t = text.trim();
    if !t.starts_with("[[") || !t.ends_with("]]") {
        return Err(err(lineno, "matrix literal must look like [[...],[...]]"));
    }
    let inner = &t[2..t.len() - 2];
    let rows: Vec<&str> = inner.split("],[").collect();
    let mut out = Vec::new();
    for row in rows {
        let mut entries = Vec::new();
        for cell in split_top_level(row) {
            let v = parse_scalar(cell.trim()).map_err(|e| {
                err(lineno, format!("bad scalar '{}': {}", cell.trim(), e))
            })?;
            entries.push(v);
        }
        out.push(entries);
    }
    Ok(out)
}

/// Split on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `(1 2 3 4 5)` or `(1 2)(3 4)`; entries are 1-based.
fn parse_cycles(text: &str, lineno: usize) -> Result<Perm, Error> {
    let t = text.trim();
    if t == "()" {
        return Ok(Perm::identity(5));
    }
    let mut cycles: Vec<Vec<u8>> = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(err(lineno, "permutations use cycle notation like (1 2 3)"));
        }
        let Some(close) = rest.find(')') else {
            return Err(err(lineno, "unclosed cycle"));
        };
        let body = &rest[1..close];
        let entries: Result<Vec<u8>, _> = body
            .split(|c: char| c == ' ' || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u8>())
            .collect();
        let entries = entries.map_err(|_| err(lineno, "cycle entries must be integers"))?;
        if entries.iter().any(|&e| e == 0 || e > 5) {
            return Err(err(lineno, "cycle entries must be in 1..=5"));
        }
        cycles.push(entries.iter().map(|&e| e - 1).collect());
        rest = rest[close + 1..].trim_start();
    }
    Perm::from_cycles(5, &cycles).map_err(|e| err(lineno, e.to_string()))
}

/// Canonical text rendering; `parse_spec(render_spec(s)) == s`.
pub fn render_spec(spec: &GroupSpec) -> String {
    let mut out = String::new();
    if let Some(n) = &spec.name {
        out.push_str(&format!("name = {n}\n"));
    }
    out.push_str(&format!("surface = {}\n", spec.surface.as_str()));
    if let Some(a) = &spec.asserted {
        out.push_str(&format!("degree = {}\n", a.degree));
        out.push_str(&format!("rank_one = {}\n", a.rank_one));
        if let Some(f) = a.fixes_general_point {
            out.push_str(&format!("fixes_general_point = {f}\n"));
        }
    }
    for g in &spec.generators {
        match g {
            GenSpec::Single(m) => out.push_str(&format!("gen = {}\n", render_matrix(m))),
            GenSpec::Pair { a, b, swap } => {
                let swap_suffix = if *swap { " ; swap" } else { "" };
                out.push_str(&format!(
                    "gen = {} ; {}{}\n",
                    render_matrix(a),
                    render_matrix(b),
                    swap_suffix
                ));
            }
            GenSpec::Permutation(p) => out.push_str(&format!("gen = {}\n", p.cycle_string())),
        }
    }
    out
}

fn render_matrix(m: &[Vec<CycNum>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| r.iter().map(render_scalar).collect::<Vec<_>>().join(","))
        .collect();
    format!("[[{}]]", rows.join("],["))
}

/// Build the classifier input, validating matrix shapes, invertibility, and
/// surface membership for dP6 generators.
pub fn build_input(spec: &GroupSpec) -> Result<ClassifyInput, Error> {
    match spec.surface {
        SurfaceKind::Asserted => {
            let a = spec.asserted.as_ref().expect("validated at parse time");
            Ok(ClassifyInput::Asserted(AssertedFacts {
                degree: a.degree,
                rank_one: a.rank_one,
                fixes_point_in_general_position: a.fixes_general_point,
            }))
        }
        SurfaceKind::P2 => {
            let gens: Vec<SurfaceAut> = spec
                .generators
                .iter()
                .map(|g| match g {
                    GenSpec::Single(m) => Ok(SurfaceAut::p2(to_projmat(m)?)),
                    _ => unreachable!("parse enforces the generator shape"),
                })
                .collect::<Result<_, Error>>()?;
            Ok(ClassifyInput::P2(close_group(&gens, DEFAULT_CAP)?))
        }
        SurfaceKind::P1xP1 => {
            let gens: Vec<SurfaceAut> = spec
                .generators
                .iter()
                .map(|g| match g {
                    GenSpec::Pair { a, b, swap } => {
                        Ok(SurfaceAut::p1xp1(to_projmat(a)?, to_projmat(b)?, *swap))
                    }
                    _ => unreachable!(),
                })
                .collect::<Result<_, Error>>()?;
            Ok(ClassifyInput::P1xP1(close_group(&gens, DEFAULT_CAP)?))
        }
        SurfaceKind::Dp6 => {
            let gens: Vec<SurfaceAut> = spec
                .generators
                .iter()
                .map(|g| match g {
                    GenSpec::Pair { a, b, swap } => {
                        SurfaceAut::dp6(to_projmat(a)?, to_projmat(b)?, *swap)
                    }
                    _ => unreachable!(),
                })
                .collect::<Result<_, Error>>()?;
            Ok(ClassifyInput::Dp6(close_group(&gens, DEFAULT_CAP)?))
        }
        SurfaceKind::Dp5 => {
            let gens: Vec<Perm> = spec
                .generators
                .iter()
                .map(|g| match g {
                    GenSpec::Permutation(p) => p.clone(),
                    _ => unreachable!(),
                })
                .collect();
            Ok(ClassifyInput::Dp5(close_group(&gens, 121)?))
        }
    }
}

fn to_projmat(m: &[Vec<CycNum>]) -> Result<ProjMat, Error> {
    let n = m.len();
    let cm = CMat::from_fn(n, n, |i, j| m[i][j].clone());
    if cm.det().is_zero() {
        return Err(Error::Parse("generator matrix is singular".into()));
    }
    Ok(ProjMat::new(cm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_render_round_trip() {
        let text = "name = p1p1/Z4-r\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\n";
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.name.as_deref(), Some("p1p1/Z4-r"));
        let rendered = render_spec(&spec);
        let again = parse_spec(&rendered).unwrap();
        assert_eq!(spec, again);
        // and the parsed r acts correctly: (2, 3) -> (1/3, 2)
        let ClassifyInput::P1xP1(g) = build_input(&spec).unwrap() else { panic!() };
        assert_eq!(g.order(), 4);
        let c = |n: i64| CycNum::from_i64(n);
        let p = crate::surfaces::SurfacePoint::p1xp1_affine(c(2), c(3));
        let img = crate::surfaces::act(&g.generator_elements()[0], &p).unwrap();
        assert_eq!(
            img,
            crate::surfaces::SurfacePoint::p1xp1_affine(
                CycNum::from_rat(crate::cyclo::rat_frac(1, 3)),
                c(2)
            )
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        let bad = "surface = P1xP1\ngen = [[z5^^,1],[1,0]] ; [[1,0],[0,1]]\n";
        let e = parse_spec(bad).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        let bad = "surface = Plane\n";
        assert!(parse_spec(bad).is_err());
        let bad = "surface = P2\ngen = [[1,0],[0,1]]\n";
        assert!(parse_spec(bad).is_err(), "wrong matrix shape must be rejected");
    }

    #[test]
    fn dp6_membership_enforced() {
        // a pair that does not preserve the form span is rejected at build
        let text = "surface = dP6\ngen = [[1,0,0],[0,1,0],[0,0,1]] ; [[0,1,0],[1,0,0],[0,0,1]]\n";
        let spec = parse_spec(text).unwrap();
        let e = build_input(&spec);
        assert!(matches!(e, Err(Error::NotAnAutomorphism(_))));
    }

    #[test]
    fn dp5_cycles() {
        let text = "surface = dP5\ngen = (1 2 3 4 5)\ngen = (2 5)(3 4)\n";
        let spec = parse_spec(text).unwrap();
        let ClassifyInput::Dp5(g) = build_input(&spec).unwrap() else { panic!() };
        assert_eq!(g.order(), 10);
        let rendered = render_spec(&spec);
        assert_eq!(parse_spec(&rendered).unwrap(), spec);
    }

    #[test]
    fn asserted_spec() {
        let text = "surface = asserted\ndegree = 4\nrank_one = true\nfixes_general_point = true\n";
        let spec = parse_spec(text).unwrap();
        let rendered = render_spec(&spec);
        assert_eq!(parse_spec(&rendered).unwrap(), spec);
    }
}
