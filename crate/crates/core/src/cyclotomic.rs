//! Exact integer combinations of `M`-th roots of unity.
//!
//! A [`Cyclotomic`] stores `sum_k a_k * zeta_M^k` with integer `a_k`. Equality is
//! decided after reducing modulo the cyclotomic polynomial `Phi_M`, so
//! `1 + zeta_4^2 == 0` holds as it should.

use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// `exp(2 pi i num / den)` with exact values at multiples of a quarter turn.
pub fn unit_root(num: i64, den: u64) -> Complex64 {
    let d = den as i64;
    let r = num.rem_euclid(d);
    if (4 * r) % d == 0 {
        return match 4 * r / d {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // symmetric reduction keeps the angle in (-pi, pi]
    let centred = if 2 * r > d { r - d } else { r };
    let angle = 2.0 * std::f64::consts::PI * centred as f64 / den as f64;
    let (s, c) = angle.sin_cos();
    Complex64::new(c, s)
}

#[derive(Debug, Clone, Eq)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        Self { order, coeffs: vec![0; order as usize] }
    }

    pub fn one(order: u64) -> Self {
        Self::root(order, 0)
    }

    /// `zeta_order^exponent`.
    pub fn root(order: u64, exponent: u64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[(exponent % order) as usize] = 1;
        z
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiply by `zeta_order^exponent` (a cyclic shift).
    pub fn rotate(&self, exponent: u64) -> Self {
        let m = self.order as usize;
        let e = (exponent % self.order) as usize;
        let mut out = vec![0; m];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[(k + e) % m] += c;
        }
        Self { order: self.order, coeffs: out }
    }

    /// Complex conjugate: `zeta^k -> zeta^{-k}`.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut out = vec![0; m];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[(m - k) % m] += c;
        }
        Self { order: self.order, coeffs: out }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.order, other.order, "mixed cyclotomic orders");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "mixed cyclotomic orders");
        let m = self.order as usize;
        let mut out = vec![0i64; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[(i + j) % m] += a * b;
                }
            }
        }
        Self { order: self.order, coeffs: out }
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                acc += unit_root(k as i64, self.order) * c as f64;
            }
        }
        acc
    }

    /// Canonical coefficients of the remainder modulo `Phi_order`.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        let mut r = self.coeffs.clone();
        // phi is monic, so plain long division stays in the integers
        for top in (deg..r.len()).rev() {
            let c = r[top];
            if c != 0 {
                for (k, &p) in phi.iter().enumerate() {
                    r[top - deg + k] -= c * p;
                }
            }
        }
        r.truncate(deg);
        r
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.reduced() == other.reduced()
    }
}

/// Integer coefficients (constant term first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d of m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in crate::arith::divisors(m) {
        if d < m {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (k, &d) in den.iter().enumerate() {
            rem[i + k] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}
