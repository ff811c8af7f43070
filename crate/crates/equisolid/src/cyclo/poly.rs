//! Dense polynomial helpers over the rationals, just enough for reduction and
//! inversion modulo a cyclotomic polynomial.

use super::conductor::ConductorData;
use super::Rat;
use num_traits::{One, Zero};

pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Remainder of `p` modulo `Phi_n` (monic, integer coefficients), truncated to
/// length `phi(n)`.
pub fn rem_by_cyclotomic(mut p: Vec<Rat>, data: &ConductorData) -> Vec<Rat> {
    let d = data.phi;
    for i in (d..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut p[i], Rat::zero());
        for (j, phi_j) in data.cyclotomic.iter().enumerate().take(d) {
            if !phi_j.is_zero() {
                let t = &c * phi_j;
                p[i - d + j] -= t;
            }
        }
    }
    p.truncate(d);
    p.resize(d, Rat::zero());
    p
}

/// Inverse of `a` modulo `Phi_n`, by solving `(mult by a) z = 1` exactly.
/// `Phi_n` is irreducible over Q, so any nonzero `a` is invertible. (Gaussian
/// elimination keeps coefficient growth polynomial, unlike the naive rational
/// Euclidean algorithm, whose remainders blow up on dense inputs.)
pub fn invert_mod_cyclotomic(a: &[Rat], data: &ConductorData) -> Vec<Rat> {
    let d = data.phi;
    // columns of the multiplication-by-a matrix: a * x^j mod Phi_n
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
    let mut cur: Vec<Rat> = a.to_vec();
    cur.resize(d, Rat::zero());
    cols.push(cur.clone());
    for _ in 1..d {
        let mut next = vec![Rat::zero(); d + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] = c.clone();
        }
        cur = rem_by_cyclotomic(next, data);
        cols.push(cur.clone());
    }
    // augmented system [M | e0], eliminate
    let mut m: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(if i == 0 { Rat::one() } else { Rat::zero() });
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&i| !m[i][c].is_zero()).expect("nonzero value is invertible");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..d {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=d {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    (0..d).map(|j| m[j][d].clone()).collect()
}
