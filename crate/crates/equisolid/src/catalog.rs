//! The built-in catalog of named group actions, stored in the spec text
//! format itself so every use also exercises the parser.

use crate::classifier::{classify, ClassifyInput, SolidityVerdict};
use crate::error::Error;
use crate::spec_format::{parse_spec, GroupSpec};

pub struct CatalogEntry {
    pub name: &'static str,
    pub text: &'static str,
}

/// Every named action from the classification: the degree-5 plane pair, the
/// full quadric list, the quadric fibre-product examples, the hexagon groups,
/// and the two exceptional plane actions.
pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "p2/S4",
        text: "name = p2/S4\nsurface = P2\ngen = [[-1,0,0],[0,1,0],[0,0,1]]\ngen = [[0,0,1],[1,0,0],[0,1,0]]\ngen = [[1,0,0],[0,0,1],[0,1,0]]\n",
    },
    CatalogEntry {
        name: "p2/A4",
        text: "name = p2/A4\nsurface = P2\ngen = [[0,0,1],[1,0,0],[0,1,0]]\ngen = [[-1,0,0],[0,1,0],[0,0,1]]\n",
    },
    CatalogEntry {
        name: "p2/Z5-M",
        text: "name = p2/Z5-M\nsurface = P2\ngen = [[1,0,0],[0,z5,0],[0,0,z5^4]]\n",
    },
    CatalogEntry {
        name: "p2/D5-MN",
        text: "name = p2/D5-MN\nsurface = P2\ngen = [[1,0,0],[0,z5,0],[0,0,z5^4]]\ngen = [[1,0,0],[0,0,1],[0,1,0]]\n",
    },
    CatalogEntry {
        name: "p1p1/Z4-r",
        text: "name = p1p1/Z4-r\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/D4-rs",
        text: "name = p1p1/D4-rs\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,1]] ; [[1,0],[0,1]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/D4-r-negs",
        text: "name = p1p1/D4-r-negs\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,-1]] ; [[1,0],[0,-1]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/Z4xZ2-tr",
        text: "name = p1p1/Z4xZ2-tr\nsurface = P1xP1\ngen = [[1,0],[0,-1]] ; [[1,0],[0,-1]]\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/G16-trs",
        text: "name = p1p1/G16-trs\nsurface = P1xP1\ngen = [[1,0],[0,-1]] ; [[1,0],[0,-1]]\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,1]] ; [[1,0],[0,1]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/Z2sqZ4-trh",
        text: "name = p1p1/Z2sqZ4-trh\nsurface = P1xP1\ngen = [[1,0],[0,-1]] ; [[1,0],[0,-1]]\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,-1]] ; [[1,0],[0,1]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/Z2sqZ4-rt1",
        text: "name = p1p1/Z2sqZ4-rt1\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,-1]] ; [[1,0],[0,1]]\n",
    },
    CatalogEntry {
        name: "p1p1/32-rt1s",
        text: "name = p1p1/32-rt1s\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,-1]] ; [[1,0],[0,1]]\ngen = [[1,0],[0,1]] ; [[1,0],[0,1]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/32-rt1-iyix",
        text: "name = p1p1/32-rt1-iyix\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,-1]] ; [[1,0],[0,1]]\ngen = [[1,0],[0,i]] ; [[1,0],[0,i]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/F5",
        text: "name = p1p1/F5\nsurface = P1xP1\ngen = [[1,0],[0,z5]] ; [[1,0],[0,z5^2]]\ngen = [[0,1],[1,0]] ; [[1,0],[0,1]] ; swap\n",
    },
    CatalogEntry {
        name: "p1p1/D3-2fixed",
        text: "name = p1p1/D3-2fixed\nsurface = P1xP1\ngen = [[1,0],[0,1]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,z3]] ; [[1,0],[0,z3^2]]\n",
    },
    CatalogEntry {
        name: "p1p1/D4-2fixed",
        text: "name = p1p1/D4-2fixed\nsurface = P1xP1\ngen = [[1,0],[0,1]] ; [[1,0],[0,1]] ; swap\ngen = [[1,0],[0,i]] ; [[1,0],[0,i^3]]\n",
    },
    CatalogEntry {
        name: "p1p1/Q8-2fixed",
        text: "name = p1p1/Q8-2fixed\nsurface = P1xP1\ngen = [[1,0],[0,1]] ; [[1,0],[0,-1]] ; swap\ngen = [[1,0],[0,i]] ; [[1,0],[0,i^3]]\n",
    },
    // The order-16 fibre product D4 x_{Z2^2} D4 with crossed surjections,
    // generated by the pairs (b, a), (ab, b), (a^2, 1) for a = diag(1, i),
    // b the coordinate swap. Swap-free, so not minimal on the quadric.
    CatalogEntry {
        name: "p1p1/contrex",
        text: "name = p1p1/contrex\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,i]]\ngen = [[0,1],[i,0]] ; [[0,1],[1,0]]\ngen = [[1,0],[0,-1]] ; [[1,0],[0,1]]\n",
    },
    // The same kernel extended by g = (z8^-1 y, z8 x), reaching rank 1.
    CatalogEntry {
        name: "p1p1/contrex-ext",
        text: "name = p1p1/contrex-ext\nsurface = P1xP1\ngen = [[0,1],[1,0]] ; [[1,0],[0,i]]\ngen = [[0,1],[i,0]] ; [[0,1],[1,0]]\ngen = [[1,0],[0,-1]] ; [[1,0],[0,1]]\ngen = [[1,0],[0,z8^7]] ; [[1,0],[0,z8]] ; swap\n",
    },
    // Diagonal tetrahedral action plus the factor swap: the non-toric
    // example with a length-4 orbit in general position.
    CatalogEntry {
        name: "p1p1/A4xZ2-diag",
        text: "name = p1p1/A4xZ2-diag\nsurface = P1xP1\ngen = [[1,0],[0,z3]] ; [[1,0],[0,z3]]\ngen = [[1,2],[1,-1]] ; [[1,2],[1,-1]]\ngen = [[1,0],[0,1]] ; [[1,0],[0,1]] ; swap\n",
    },
    CatalogEntry {
        name: "dp6/Z6-r",
        text: "name = dp6/Z6-r\nsurface = dP6\ngen = [[0,0,1],[1,0,0],[0,1,0]] ; [[0,0,1],[1,0,0],[0,1,0]] ; swap\n",
    },
    CatalogEntry {
        name: "dp6/Z2-s",
        text: "name = dp6/Z2-s\nsurface = dP6\ngen = [[1,0,0],[0,0,1],[0,1,0]] ; [[1,0,0],[0,0,1],[0,1,0]]\n",
    },
    CatalogEntry {
        name: "dp6/S3",
        text: "name = dp6/S3\nsurface = dP6\ngen = [[0,1,0],[0,0,1],[1,0,0]] ; [[0,1,0],[0,0,1],[1,0,0]]\ngen = [[0,0,1],[0,1,0],[1,0,0]] ; [[0,0,1],[0,1,0],[1,0,0]] ; swap\n",
    },
    CatalogEntry {
        name: "dp6/D6-rs",
        text: "name = dp6/D6-rs\nsurface = dP6\ngen = [[0,0,1],[1,0,0],[0,1,0]] ; [[0,0,1],[1,0,0],[0,1,0]] ; swap\ngen = [[1,0,0],[0,0,1],[0,1,0]] ; [[1,0,0],[0,0,1],[0,1,0]]\n",
    },
    // A rank-1 hexagon action outside the exception list: <r> extended by a
    // 3-torsion torus element.
    CatalogEntry {
        name: "dp6/Z3xZ6-ext",
        text: "name = dp6/Z3xZ6-ext\nsurface = dP6\ngen = [[0,0,1],[1,0,0],[0,1,0]] ; [[0,0,1],[1,0,0],[0,1,0]] ; swap\ngen = [[1,0,0],[0,z3,0],[0,0,z3]] ; [[1,0,0],[0,z3^2,0],[0,0,z3^2]]\n",
    },
    CatalogEntry {
        name: "dp5/Z5",
        text: "name = dp5/Z5\nsurface = dP5\ngen = (1 2 3 4 5)\n",
    },
    CatalogEntry {
        name: "dp5/D5",
        text: "name = dp5/D5\nsurface = dP5\ngen = (1 2 3 4 5)\ngen = (2 5)(3 4)\n",
    },
    CatalogEntry {
        name: "dp5/F5",
        text: "name = dp5/F5\nsurface = dP5\ngen = (1 2 3 4 5)\ngen = (2 3 5 4)\n",
    },
    CatalogEntry {
        name: "dp5/A5",
        text: "name = dp5/A5\nsurface = dP5\ngen = (1 2 3 4 5)\ngen = (1 2 3)\n",
    },
    CatalogEntry {
        name: "dp5/S5",
        text: "name = dp5/S5\nsurface = dP5\ngen = (1 2 3 4 5)\ngen = (1 2)\n",
    },
    CatalogEntry {
        name: "dp5/Z4",
        text: "name = dp5/Z4\nsurface = dP5\ngen = (1 2 3 4)\n",
    },
    CatalogEntry {
        name: "asserted/dp4-fixed-point",
        text: "name = asserted/dp4-fixed-point\nsurface = asserted\ndegree = 4\nrank_one = true\nfixes_general_point = true\n",
    },
    CatalogEntry {
        name: "asserted/dp4-point-free",
        text: "name = asserted/dp4-point-free\nsurface = asserted\ndegree = 4\nrank_one = true\nfixes_general_point = false\n",
    },
    CatalogEntry {
        name: "asserted/dp3",
        text: "name = asserted/dp3\nsurface = asserted\ndegree = 3\nrank_one = true\n",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

pub fn parse_entry(name: &str) -> Result<GroupSpec, Error> {
    let e = entry(name)
        .ok_or_else(|| Error::Parse(format!("no catalog entry named '{name}'")))?;
    parse_spec(e.text)
}

pub fn classify_entry(name: &str) -> Result<SolidityVerdict, Error> {
    let spec = parse_entry(name)?;
    let input = crate::spec_format::build_input(&spec)?;
    classify(&input)
}

pub fn build_entry_input(name: &str) -> Result<ClassifyInput, Error> {
    let spec = parse_entry(name)?;
    crate::spec_format::build_input(&spec)
}
