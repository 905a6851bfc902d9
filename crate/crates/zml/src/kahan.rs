//! Compensated (Kahan-Neumaier) summation and deterministic parallel
//! reduction.
//!
//! Every series in the crate is accumulated through these helpers so that a
//! sum over a given sequence is a pure function of the sequence — identical
//! bits for any thread count.

use num_complex::Complex64;
use rayon::prelude::*;

/// Neumaier variant of compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Componentwise compensated accumulator for complex series.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Block size of the deterministic parallel reduction. Fixed so that the
/// split, and therefore the rounding, never depends on the thread count.
const BLOCK: usize = 256;

/// Sum `f` over `items`: compensated within fixed 256-element blocks, block
/// results merged compensated in ascending block order.
pub fn block_sum<T: Sync, F>(items: &[T], f: F) -> f64
where
    F: Fn(&T) -> f64 + Sync,
{
    let partials: Vec<f64> = items
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut acc = CompensatedSum::new();
            for item in chunk {
                acc.add(f(item));
            }
            acc.value()
        })
        .collect();
    let mut total = CompensatedSum::new();
    for p in partials {
        total.add(p);
    }
    total.value()
}

/// Complex counterpart of [`block_sum`].
pub fn block_sum_complex<T: Sync, F>(items: &[T], f: F) -> Complex64
where
    F: Fn(&T) -> Complex64 + Sync,
{
    let partials: Vec<Complex64> = items
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut acc = CompensatedComplexSum::new();
            for item in chunk {
                acc.add(f(item));
            }
            acc.value()
        })
        .collect();
    let mut total = CompensatedComplexSum::new();
    for p in partials {
        total.add(p);
    }
    total.value()
}

/// Fallible complex reduction: first error wins (lowest block, then lowest
/// index), so failures are as deterministic as successes.
pub fn try_block_sum_complex<T: Sync, F, E: Send>(items: &[T], f: F) -> Result<Complex64, E>
where
    F: Fn(&T) -> Result<Complex64, E> + Sync,
{
    let partials: Vec<Result<Complex64, E>> = items
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut acc = CompensatedComplexSum::new();
            for item in chunk {
                acc.add(f(item)?);
            }
            Ok(acc.value())
        })
        .collect();
    let mut total = CompensatedComplexSum::new();
    for p in partials {
        total.add(p?);
    }
    Ok(total.value())
}

/// Fallible real reduction with the same determinism guarantee.
pub fn try_block_sum<T: Sync, F, E: Send>(items: &[T], f: F) -> Result<f64, E>
where
    F: Fn(&T) -> Result<f64, E> + Sync,
{
    let partials: Vec<Result<f64, E>> = items
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut acc = CompensatedSum::new();
            for item in chunk {
                acc.add(f(item)?);
            }
            Ok(acc.value())
        })
        .collect();
    let mut total = CompensatedSum::new();
    for p in partials {
        total.add(p?);
    }
    Ok(total.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_small_term() {
        let mut acc = CompensatedSum::new();
        acc.add(1e16);
        acc.add(1.0);
        acc.add(-1e16);
        assert_eq!(acc.value(), 1.0);
    }

    #[test]
    fn block_sum_matches_sequential() {
        let xs: Vec<f64> = (1..=10_000).map(|n| 1.0 / n as f64).collect();
        let mut seq = CompensatedSum::new();
        for blk in xs.chunks(256) {
            let mut b = CompensatedSum::new();
            for &x in blk {
                b.add(x);
            }
            seq.add(b.value());
        }
        let par = block_sum(&xs, |&x| x);
        assert_eq!(par, seq.value());
    }

    #[test]
    fn block_sum_independent_of_thread_count() {
        let xs: Vec<f64> = (1..=50_000)
            .map(|n| ((n as f64) * 0.7).sin() / (n as f64).sqrt())
            .collect();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| block_sum(&xs, |&x| x));
        let eight = rayon::ThreadPoolBuilder::new()
            .num_threads(8)
            .build()
            .unwrap()
            .install(|| block_sum(&xs, |&x| x));
        assert_eq!(one.to_bits(), eight.to_bits());
    }

    #[test]
    fn try_block_sum_reports_first_error() {
        let xs: Vec<i64> = (0..1000).collect();
        let r: Result<f64, i64> = try_block_sum(&xs, |&x| if x >= 700 { Err(x) } else { Ok(1.0) });
        assert_eq!(r, Err(700));
    }
}
