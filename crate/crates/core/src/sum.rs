//! Compensated summation and deterministic chunked reductions.
//!
//! Every long reduction in the crate (zero sums, Dirichlet series, Euler-Maclaurin
//! heads) goes through [`Neumaier`] or [`ComplexNeumaier`]. Parallel reductions use
//! fixed chunk boundaries and combine chunk partials serially in index order, so
//! the serial and parallel paths produce bit-identical results.

use num_complex::Complex64;
use rayon::prelude::*;

/// Number of items per chunk in [`chunked_sum`]. Part of the reproducibility
/// contract: changing it changes low-order bits of every reported sum.
pub const CHUNK: usize = 256;

/// Neumaier (improved Kahan-Babuska) running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Componentwise Neumaier sum of complex values.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexNeumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl std::iter::FromIterator<Complex64> for ComplexNeumaier {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = ComplexNeumaier::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Serial or rayon-backed execution of a map-reduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Map `f` over `items` and return the per-item values in input order.
pub fn ordered_map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Serial => items.iter().map(&f).collect(),
        Execution::Parallel => items.par_iter().map(&f).collect(),
    }
}

/// Compensated sum of already-computed values using fixed [`CHUNK`] boundaries.
pub fn chunked_sum(values: &[Complex64], exec: Execution) -> Complex64 {
    let partials: Vec<Complex64> = match exec {
        Execution::Serial => values
            .chunks(CHUNK)
            .map(|c| c.iter().copied().collect::<ComplexNeumaier>().value())
            .collect(),
        Execution::Parallel => values
            .par_chunks(CHUNK)
            .map(|c| c.iter().copied().collect::<ComplexNeumaier>().value())
            .collect(),
    };
    partials.into_iter().collect::<ComplexNeumaier>().value()
}

/// Real counterpart of [`chunked_sum`].
pub fn chunked_sum_real(values: &[f64], exec: Execution) -> f64 {
    let partials: Vec<f64> = match exec {
        Execution::Serial => values
            .chunks(CHUNK)
            .map(|c| c.iter().copied().collect::<Neumaier>().value())
            .collect(),
        Execution::Parallel => values
            .par_chunks(CHUNK)
            .map(|c| c.iter().copied().collect::<Neumaier>().value())
            .collect(),
    };
    partials.into_iter().collect::<Neumaier>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_mass() {
        let vals = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = vals.iter().sum();
        let comp: Neumaier = vals.iter().copied().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(comp.value(), 2.0);
    }

    #[test]
    fn harmonic_tail_matches_reverse_order() {
        let fwd: Neumaier = (1..200_000).map(|k| 1.0 / k as f64).collect();
        let rev: Neumaier = (1..200_000).rev().map(|k| 1.0 / k as f64).collect();
        assert!((fwd.value() - rev.value()).abs() <= 1e-15 * fwd.value());
    }

    #[test]
    fn chunked_serial_and_parallel_are_bit_identical() {
        let vals: Vec<Complex64> = (0..10_007)
            .map(|k| Complex64::from_polar(1.0 / (1.0 + k as f64).sqrt(), k as f64 * 0.37))
            .collect();
        let a = chunked_sum(&vals, Execution::Serial);
        let b = chunked_sum(&vals, Execution::Parallel);
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
}
