//! Dirichlet characters to prime moduli, stored by discrete logarithm.
//!
//! With `g` the smallest primitive root mod `q` and `n = g^k (mod q)`, the
//! character with index `j` is `chi(n) = exp(2 pi i j k / (q - 1))`. Values are
//! kept as exponents in `Z/(q-1)` so identities such as complete
//! multiplicativity can be checked on integers.

use crate::arith::{is_prime, smallest_primitive_root};
use crate::cyclotomic::{unit_root, Cyclotomic};
use crate::error::{Error, Result};
use crate::sum::ComplexNeumaier;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    index: u64,
    generator: u64,
    /// `dlog[n]` = k with `g^k = n (mod q)`; entry 0 unused.
    dlog: Arc<Vec<u64>>,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirichletCharacter({}:{})", self.modulus, self.index)
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.index == other.index
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.modulus, self.index)
    }
}

impl FromStr for DirichletCharacter {
    type Err = Error;

    /// Parses the canonical `"q:j"` form.
    fn from_str(s: &str) -> Result<Self> {
        let (q, j) = s.split_once(':').ok_or_else(|| Error::CharacterSyntax(s.to_string()))?;
        let q: u64 = q.trim().parse().map_err(|_| Error::CharacterSyntax(s.to_string()))?;
        let j: u64 = j.trim().parse().map_err(|_| Error::CharacterSyntax(s.to_string()))?;
        character(q, j)
    }
}

/// Build the character `q:j`.
pub fn character(q: u64, j: u64) -> Result<DirichletCharacter> {
    if q < 3 || !is_prime(q) {
        return Err(Error::NonPrimeModulus(q));
    }
    if j > q - 2 {
        return Err(Error::IndexOutOfRange { modulus: q, index: j, max: q - 2 });
    }
    let g = smallest_primitive_root(q);
    let mut dlog = vec![0u64; q as usize];
    let mut x = 1u64;
    for k in 0..q - 1 {
        dlog[x as usize] = k;
        x = x * g % q;
    }
    Ok(DirichletCharacter { modulus: q, index: j, generator: g, dlog: Arc::new(dlog) })
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Order of the value group `Z/(q-1)`.
    pub fn value_order(&self) -> u64 {
        self.modulus - 1
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// Every non-principal character to a prime modulus is primitive.
    pub fn is_primitive(&self) -> bool {
        !self.is_principal()
    }

    /// The conjugate character `q:(q-1-j) mod (q-1)`.
    pub fn conj(&self) -> Self {
        let m = self.modulus - 1;
        Self { index: (m - self.index) % m, ..self.clone() }
    }

    /// Exponent `e` with `chi(n) = exp(2 pi i e / (q-1))`, or `None` when `q | n`.
    pub fn exponent(&self, n: i64) -> Option<u64> {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        if r == 0 {
            return None;
        }
        let m = self.modulus - 1;
        Some((self.index as u128 * self.dlog[r] as u128 % m as u128) as u64)
    }

    /// Parity: 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u32 {
        // chi(-1) = exp(pi i j) since -1 = g^{(q-1)/2}
        (self.index % 2) as u32
    }

    /// `chi(n)` as an exact element of `Z[zeta_order]`; `order` must be a
    /// multiple of `q - 1`.
    pub fn eval_exact(&self, n: i64, order: u64) -> Cyclotomic {
        let m = self.modulus - 1;
        assert_eq!(order % m, 0, "order {order} is not a multiple of {m}");
        match self.exponent(n) {
            Some(e) => Cyclotomic::root(order, e * (order / m)),
            None => Cyclotomic::zero(order),
        }
    }

    /// `chi(n)` as a complex number (0 or a root of unity).
    pub fn eval(&self, n: i64) -> Complex64 {
        match self.exponent(n) {
            Some(e) => unit_root(e as i64, self.modulus - 1),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Values `chi(0), chi(1), ..., chi(q-1)` for table-driven loops.
    pub fn table(&self) -> Vec<Complex64> {
        (0..self.modulus as i64).map(|n| self.eval(n)).collect()
    }

    /// The root number `eps(chi) = G(1,chi) / (i^a sqrt q)`; unimodular.
    pub fn root_number(&self) -> Complex64 {
        let i_pow_neg_a = if self.parity() == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, -1.0) };
        gauss_sum(1, self) * i_pow_neg_a / (self.modulus as f64).sqrt()
    }
}

/// Free-function form of [`DirichletCharacter::eval`].
pub fn chi_eval(chi: &DirichletCharacter, n: i64) -> Complex64 {
    chi.eval(n)
}

/// `G(k, chi) = sum_{a=1}^{q} chi(a) exp(2 pi i a k / q)` by its literal definition.
pub fn gauss_sum(k: i64, chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus();
    let kq = k.rem_euclid(q as i64);
    let mut acc = ComplexNeumaier::new();
    for a in 1..=q as i64 {
        acc.add(chi.eval(a) * unit_root(a * kq % q as i64, q));
    }
    acc.value()
}

/// Every character mod `q`, indices `0..q-1`.
pub fn all_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    let base = character(q, 0)?;
    Ok((0..q - 1).map(|j| DirichletCharacter { index: j, ..base.clone() }).collect())
}
