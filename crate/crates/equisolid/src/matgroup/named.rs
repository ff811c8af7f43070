//! Reference models and identification against the named families used by
//! the classifier: Z_n, D_n, S_n, A_n, Q8, F5, the three small semidirect
//! products, Z2 x D4, and abelian products generally.

use super::table::{
    abelian_invariant_factors, direct_product, fingerprint, is_isomorphic_tables, CayleyTable,
    Fingerprint, ORDER_BOUND,
};
use super::{close_group, goursat, Element, FiniteGroup, Mat, Perm};
use crate::cyclo::CycNum;
use crate::error::Error;
use crate::linalg::CMat;
use serde::Serialize;
use std::sync::OnceLock;

pub fn cyclic(n: usize) -> CayleyTable {
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = ((i + j) % n) as u32;
        }
    }
    CayleyTable::new(n, table, 0)
}

pub fn dihedral(n: usize) -> CayleyTable {
    assert!(n >= 1);
    let rot = Perm((0..n as u8).map(|i| ((i as usize + 1) % n) as u8).collect());
    let refl = Perm((0..n as u8).map(|i| ((n - i as usize) % n) as u8).collect());
    close_group(&[rot, refl], 2 * n + 1).expect("dihedral closes").table
}

pub fn symmetric(n: usize) -> CayleyTable {
    let cycle = Perm((0..n as u8).map(|i| ((i as usize + 1) % n) as u8).collect());
    let swap = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
    let gens = if n >= 2 { vec![cycle, swap] } else { vec![Perm::identity(1)] };
    let t = close_group(&gens, factorial(n) + 1).expect("symmetric closes").table;
    assert_eq!(t.n, factorial(n));
    t
}

pub fn alternating(n: usize) -> CayleyTable {
    assert!((3..=5).contains(&n));
    let three = Perm::from_cycles(n, &[vec![0, 1, 2]]).unwrap();
    let gens = match n {
        3 => vec![three],
        4 => vec![three, Perm::from_cycles(n, &[vec![0, 1], vec![2, 3]]).unwrap()],
        _ => vec![three, Perm::from_cycles(n, &[vec![0, 1, 2, 3, 4]]).unwrap()],
    };
    let t = close_group(&gens, factorial(n) / 2 + 1).expect("alternating closes").table;
    assert_eq!(t.n, factorial(n) / 2);
    t
}

/// Quaternion group via exact 2x2 matrices i, j (not projective).
pub fn quaternion8() -> CayleyTable {
    let i = CycNum::i();
    let a = Mat::new(CMat::new(
        2,
        2,
        vec![i.clone(), CycNum::zero(), CycNum::zero(), i.neg()],
    ));
    let b = Mat::from_rows_i64(&[&[0, 1], &[-1, 0]]);
    close_group(&[a, b], 9).expect("Q8 closes").table
}

/// Frobenius group of order 20 as permutations of 5 points.
pub fn frobenius20() -> CayleyTable {
    let a = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
    // i -> 2i mod 5 fixes 0 and 4-cycles the rest
    let b = Perm(vec![0, 2, 4, 1, 3]);
    close_group(&[a, b], 21).expect("F5 closes").table
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The order-16 group `Z2^2 : Z4`, realized as the fibre product
/// `D4 x_{Z2^2} D4` over the two distinct surjections (the same abstract
/// group underlies both the counterexample fibre product and the solid
/// torus-normalizer subgroup of order 16).
pub fn z2sq_semi_z4() -> CayleyTable {
    static T: OnceLock<CayleyTable> = OnceLock::new();
    T.get_or_init(|| {
        let d4 = dihedral(4);
        // generators of D4 as built: rotation r (order 4), reflection s
        let r = (0..d4.n as u32).find(|&i| d4.order_of(i) == 4).unwrap();
        let rr = d4.mul(r, r);
        let s = (0..d4.n as u32)
            .find(|&i| {
                d4.order_of(i) == 2 && i != rr && d4.mul(i, r) != d4.mul(r, i)
            })
            .unwrap();
        let z22 = direct_product(&cyclic(2), &cyclic(2));
        // phi: r -> (0,1), s -> (1,0); psi: r -> (1,0), s -> (1,1)
        let phi = goursat::hom_from_generators(&d4, &z22, &[r, s], &[1, 2]).unwrap();
        let psi = goursat::hom_from_generators(&d4, &z22, &[r, s], &[2, 3]).unwrap();
        let fp = goursat::fibre_product(&d4, &d4, &phi, &psi, &z22).unwrap();
        fp.table
    })
    .clone()
}

pub fn z2_x_d4() -> CayleyTable {
    direct_product(&cyclic(2), &dihedral(4))
}

/// Pinned fingerprints of the two order-32 torus-normalizer groups; they are
/// not isomorphic (19 vs 11 involutions), so the fingerprint separates them.
/// The geometric catalog groups are checked against these in tests.
fn fp_z2quad_semi_z2() -> Fingerprint {
    Fingerprint {
        order: 32,
        element_orders: vec![(1, 1), (2, 19), (4, 12)],
        conjugacy_class_sizes: vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 4, 4, 4, 4],
        center_order: 4,
        derived_series_orders: vec![32, 4, 1],
        abelianization: vec![2, 2, 2],
        exponent: 4,
    }
}

fn fp_z2cube_semi_z4() -> Fingerprint {
    Fingerprint {
        order: 32,
        element_orders: vec![(1, 1), (2, 11), (4, 20)],
        conjugacy_class_sizes: vec![1, 1, 2, 2, 2, 4, 4, 4, 4, 4, 4],
        center_order: 2,
        derived_series_orders: vec![32, 4, 1],
        abelianization: vec![4, 2],
        exponent: 4,
    }
}

/// Identification of a group against the named families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub name: String,
    pub order: u32,
    /// Present when the name is "unrecognized" (and for the order-32 pair,
    /// where the identification is by fingerprint).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<Fingerprint>,
}

pub fn identify_named(t: &CayleyTable) -> Result<Identification, Error> {
    if t.n > ORDER_BOUND {
        return Err(Error::UnsupportedOrder { order: t.n, bound: ORDER_BOUND });
    }
    let order = t.n as u32;
    let named = |name: String| Identification { name, order, fingerprint: None };
    if t.n == 1 {
        return Ok(named("Z1".into()));
    }
    if t.is_abelian() {
        let inv = abelian_invariant_factors(t);
        return Ok(named(abelian_name(&inv)));
    }
    // symmetric and alternating families first (S3 rather than D3)
    for n in 3..=5usize {
        if t.n == factorial(n) && is_isomorphic_tables(t, &symmetric(n))? {
            return Ok(named(format!("S{n}")));
        }
    }
    for n in 4..=5usize {
        if t.n == factorial(n) / 2 && is_isomorphic_tables(t, &alternating(n))? {
            return Ok(named(format!("A{n}")));
        }
    }
    // dihedral: cyclic subgroup of index 2 plus an inverting involution
    if t.n % 2 == 0 {
        let half = t.n / 2;
        if let Some(r) = (0..t.n as u32).find(|&i| t.order_of(i) == half as u32) {
            let rot = t.closure(&[r]);
            let s = (0..t.n as u32).find(|&j| {
                !rot.contains(&j) && t.order_of(j) == 2 && t.conj(j, r) == t.inv(r)
            });
            if s.is_some() && half >= 3 {
                return Ok(named(format!("D{half}")));
            }
        }
    }
    if t.n == 8 && is_isomorphic_tables(t, &quaternion8())? {
        return Ok(named("Q8".into()));
    }
    if t.n == 20 && is_isomorphic_tables(t, &frobenius20())? {
        return Ok(named("F5".into()));
    }
    if t.n == 16 {
        if is_isomorphic_tables(t, &z2sq_semi_z4())? {
            return Ok(named("Z2^2:Z4".into()));
        }
        if is_isomorphic_tables(t, &z2_x_d4())? {
            return Ok(named("Z2xD4".into()));
        }
    }
    if t.n == 32 {
        let fp = fingerprint(t);
        if fp == fp_z2quad_semi_z2() {
            return Ok(Identification {
                name: "Z2^4:Z2".into(),
                order,
                fingerprint: Some(fp),
            });
        }
        if fp == fp_z2cube_semi_z4() {
            return Ok(Identification {
                name: "Z2^3:Z4".into(),
                order,
                fingerprint: Some(fp),
            });
        }
    }
    Ok(Identification {
        name: "unrecognized".into(),
        order,
        fingerprint: Some(fingerprint(t)),
    })
}

/// "Z6" for a single factor, "Z4xZ2", "Z2^3" etc. for products.
pub fn abelian_name(invariant_factors: &[u32]) -> String {
    if invariant_factors.is_empty() {
        return "Z1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < invariant_factors.len() {
        let d = invariant_factors[i];
        let mut count = 1;
        while i + count < invariant_factors.len() && invariant_factors[i + count] == d {
            count += 1;
        }
        if count == 1 {
            parts.push(format!("Z{d}"));
        } else {
            parts.push(format!("Z{d}^{count}"));
        }
        i += count;
    }
    parts.join("x")
}

pub fn identify_group<E: Element>(g: &FiniteGroup<E>) -> Result<Identification, Error> {
    identify_named(&g.table)
}
