//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature (on by default) the heavy reductions run on the
//! rayon pool. Every entry point also has a `_with` variant taking an
//! [`Execution`] so callers and benches can force the sequential path.

use std::ops::Range;

use num_complex::Complex64;

/// How a reduction or map is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Falls back to [`Execution::Sequential`] when the crate is built
    /// without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(mut self, other: CompensatedSum) -> Self {
        self.add(other.sum);
        self.add(other.carry);
        self
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

const CHUNK: usize = 4096;

/// Compensated sum of `f(i)` over an index range.
///
/// Chunk partial sums are merged in index order, so the result does not
/// depend on thread scheduling.
pub fn sum_range<F>(exec: Execution, range: Range<usize>, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    chunked(exec, range, |r| r.map(&f).collect::<CompensatedSum>())
        .into_iter()
        .fold(CompensatedSum::new(), CompensatedSum::merge)
        .value()
}

/// Compensated sum of complex terms over an index range.
pub fn sum_range_complex<F>(exec: Execution, range: Range<usize>, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync + Send,
{
    let parts = chunked(exec, range, |r| {
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for i in r {
            let v = f(i);
            re.add(v.re);
            im.add(v.im);
        }
        (re, im)
    });
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (a, b) in parts {
        re = re.merge(a);
        im = im.merge(b);
    }
    Complex64::new(re.value(), im.value())
}

/// Applies `f` to consecutive chunks of `range`, returning results in order.
fn chunked<R, F>(exec: Execution, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(Range<usize>) -> R + Sync + Send,
{
    let start = range.start;
    let n = range.len();
    let chunks = n.div_ceil(CHUNK).max(1);
    let piece = |c: usize| {
        let lo = start + c * CHUNK;
        let hi = (lo + CHUNK).min(start + n);
        f(lo..hi)
    };
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && chunks > 1 {
        use rayon::prelude::*;
        return (0..chunks).into_par_iter().map(piece).collect();
    }
    let _ = exec;
    (0..chunks).map(piece).collect()
}

/// Sum of `f(i)` for integer-valued terms.
pub fn sum_range_u64<F>(exec: Execution, range: Range<usize>, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && range.len() > 1 {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).sum();
    }
    let _ = exec;
    range.map(f).sum()
}

/// Order-preserving map over a slice.
pub fn map_slice<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let s: CompensatedSum = [1e16, 1.0, -1e16, 1.0].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn modes_agree() {
        let f = |i: usize| 1.0 / ((i + 1) as f64).powi(2);
        let a = sum_range(Execution::Sequential, 0..100_000, f);
        let b = sum_range(Execution::Parallel, 0..100_000, f);
        assert_eq!(a.to_bits(), b.to_bits());
        let z = sum_range_complex(Execution::Parallel, 0..10_000, |i| {
            Complex64::from_polar(1.0, i as f64)
        });
        let w = sum_range_complex(Execution::Sequential, 0..10_000, |i| {
            Complex64::from_polar(1.0, i as f64)
        });
        assert_eq!(z, w);
        let c = sum_range_u64(Execution::Parallel, 0..1000, |i| i as u64);
        assert_eq!(c, 499_500);
        let v = map_slice(Execution::Parallel, &[1, 2, 3], |x| x * 2);
        assert_eq!(v, vec![2, 4, 6]);
    }
}
