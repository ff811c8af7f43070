//! Per-conductor data: the cyclotomic polynomial, memoized reduced powers of
//! the root, and the unit group. Computed once and shared; reads are
//! concurrent, inserts serialized behind `RwLock`s.

use super::poly;
use super::Rat;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

pub struct ConductorData {
    pub n: u32,
    pub phi: usize,
    /// Coefficients of `Phi_n`, low degree first, length `phi + 1`, monic.
    pub cyclotomic: Vec<Rat>,
    /// Sorted units of `(Z/n)*`.
    pub units: Vec<u32>,
    /// `x^m mod Phi_n` for `m >= phi`, filled on demand.
    powers: RwLock<HashMap<usize, Arc<Vec<Rat>>>>,
    /// A prime `q = 1 mod n` with the powers of a primitive n-th root mod q,
    /// used as a fast necessary-condition filter during canonicalization.
    pub probe: Probe,
}

pub struct Probe {
    pub q: u64,
    /// `omega^j mod q` for `j` in `0..n`.
    pub omega_pows: Vec<u64>,
}

impl ConductorData {
    /// `x^e mod Phi_n` for `0 <= e < n`; trivial below `phi`, memoized above.
    /// Built incrementally from the nearest cached lower exponent.
    pub fn power_row(&self, e: usize) -> Arc<Vec<Rat>> {
        debug_assert!(e < self.n as usize);
        if e < self.phi {
            let mut mono = vec![Rat::zero(); self.phi];
            mono[e] = Rat::one();
            return Arc::new(mono);
        }
        if let Some(row) = self.powers.read().unwrap().get(&e) {
            return row.clone();
        }
        // start from the largest cached exponent below e, else from x^(phi-1)
        let (mut cur_e, mut cur) = {
            let r = self.powers.read().unwrap();
            r.iter()
                .filter(|(k, _)| **k < e)
                .max_by_key(|(k, _)| **k)
                .map(|(k, v)| (*k, v.as_ref().clone()))
                .unwrap_or_else(|| {
                    let mut mono = vec![Rat::zero(); self.phi];
                    mono[self.phi - 1] = Rat::one();
                    (self.phi - 1, mono)
                })
        };
        while cur_e < e {
            let mut next = vec![Rat::zero(); self.phi + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            cur = poly::rem_by_cyclotomic(next, self);
            cur_e += 1;
        }
        let row = Arc::new(cur);
        let mut w = self.powers.write().unwrap();
        w.entry(e).or_insert(row).clone()
    }
}

static CACHE: OnceLock<RwLock<HashMap<u32, Arc<ConductorData>>>> = OnceLock::new();

pub fn conductor_data(n: u32) -> Arc<ConductorData> {
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(d) = cache.read().unwrap().get(&n) {
        return d.clone();
    }
    let data = Arc::new(build(n));
    let mut w = cache.write().unwrap();
    w.entry(n).or_insert(data).clone()
}

fn build(n: u32) -> ConductorData {
    let cyclotomic = cyclotomic_polynomial(n);
    let phi = cyclotomic.len() - 1;
    let units = (1..=n).filter(|&k| super::gcd_u32(k, n) == 1).collect();
    let probe = build_probe(n);
    ConductorData { n, phi, cyclotomic, units, powers: RwLock::new(HashMap::new()), probe }
}

fn build_probe(n: u32) -> Probe {
    if n == 1 {
        return Probe { q: 2, omega_pows: vec![1] };
    }
    let n64 = n as u64;
    let mut k = 1u64;
    loop {
        let q = k * n64 + 1;
        if q > 2 && is_prime_u64(q) {
            if let Some(omega) = primitive_nth_root(n64, q) {
                let mut omega_pows = Vec::with_capacity(n as usize);
                let mut acc = 1u64;
                for _ in 0..n {
                    omega_pows.push(acc);
                    acc = mul_mod(acc, omega, q);
                }
                return Probe { q, omega_pows };
            }
        }
        k += 1;
    }
}

fn primitive_nth_root(n: u64, q: u64) -> Option<u64> {
    // g^((q-1)/n) has order dividing n; accept when the order is exactly n.
    'g: for g in 2..q.min(200) {
        let w = pow_mod(g, (q - 1) / n, q);
        if w == 1 {
            continue;
        }
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                for e in [d, n / d] {
                    if e < n && e > 0 && pow_mod(w, e, q) == 1 {
                        continue 'g;
                    }
                }
            }
            d += 1;
        }
        return Some(w);
    }
    None
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if a % m == 0 {
        return None;
    }
    Some(pow_mod(a % m, m - 2, m)) // m prime
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin bases for u64
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `Phi_n` by the divisor recurrence: divide `x^n - 1` by all lower `Phi_d`.
fn cyclotomic_polynomial(n: u32) -> Vec<Rat> {
    if n == 1 {
        return vec![-Rat::one(), Rat::one()];
    }
    let mut poly = vec![Rat::zero(); n as usize + 1];
    poly[0] = -Rat::one();
    poly[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            let pd = cyclotomic_of(d);
            poly = exact_div(&poly, &pd);
        }
    }
    poly
}

fn cyclotomic_of(d: u32) -> Vec<Rat> {
    if let Some(c) = CACHE
        .get_or_init(|| RwLock::new(HashMap::new()))
        .read()
        .unwrap()
        .get(&d)
    {
        return c.cyclotomic.clone();
    }
    cyclotomic_polynomial(d)
}

fn exact_div(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = a.to_vec();
    let db = b.len() - 1;
    let mut out = vec![Rat::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        if a[i].is_zero() {
            continue;
        }
        let c = &a[i] / &b[db];
        out[i - db] = c.clone();
        for j in 0..=db {
            let t = &c * &b[j];
            a[i - db + j] -= t;
        }
    }
    debug_assert!(a.iter().all(|x| x.is_zero()), "nonexact cyclotomic division");
    out
}
