//! Primes up to a limit, prime-power sums, Chebyshev ψ and exact counts of
//! y-friable integers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, Error, Result};
use crate::par::{self, Execution};
use crate::specialfns::DickmanSolver;

/// Largest sieve limit accepted by [`PrimeTable::new`].
pub const PRIME_LIMIT_CAP: u64 = 1_000_000_000;

const SEGMENT: u64 = 1 << 18;

/// Ascending primes up to `limit` with cached logarithms.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
    logs: Vec<f64>,
}

/// Builds the table of primes ≤ `limit` with the default cap and execution.
pub fn build_prime_table(limit: u64) -> Result<PrimeTable> {
    PrimeTable::new(limit)
}

impl PrimeTable {
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_options(limit, PRIME_LIMIT_CAP, Execution::default())
    }

    pub fn with_options(limit: u64, cap: u64, exec: Execution) -> Result<Self> {
        if limit < 2 || limit > cap.min(u32::MAX as u64) {
            return Err(Error::Resource {
                op: "build_prime_table",
                reason: format!("limit must lie in [2, {cap}], got {limit}"),
                estimate: Some(limit as f64),
            });
        }
        let primes = segmented_sieve(limit, exec);
        let logs = primes.iter().map(|&p| (p as f64).ln()).collect();
        Ok(PrimeTable {
            limit,
            primes,
            logs,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// π(y) restricted to the table.
    pub fn count_upto(&self, y: f64) -> usize {
        if !(y >= 2.0) {
            return 0;
        }
        let n = y.floor().min(u32::MAX as f64) as u32;
        self.primes.partition_point(|&p| p <= n)
    }

    /// Primes ≤ y.
    pub fn primes_upto(&self, y: f64) -> &[u32] {
        &self.primes[..self.count_upto(y)]
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= u32::MAX as u64 && self.primes.binary_search(&(n as u32)).is_ok()
    }

    pub(crate) fn check_covers(&self, op: &'static str, v: f64) -> Result<()> {
        if v.floor() > self.limit as f64 {
            return Err(domain(
                op,
                format!("argument {v} exceeds the prime table limit {}", self.limit),
            ));
        }
        Ok(())
    }
}

fn simple_sieve(limit: usize) -> Vec<u32> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn segmented_sieve(limit: u64, exec: Execution) -> Vec<u32> {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = simple_sieve(root as usize);
    let segments: Vec<u64> = (0..limit.div_ceil(SEGMENT) + 1)
        .map(|i| i * SEGMENT)
        .filter(|&lo| lo <= limit)
        .collect();
    let parts = par::map_slice(exec, &segments, |&lo| {
        let hi = (lo + SEGMENT).min(limit + 1);
        let mut mark = vec![true; (hi - lo) as usize];
        for &p in &base {
            let p = p as u64;
            if p * p >= hi {
                break;
            }
            let mut start = (lo.div_ceil(p) * p).max(p * p);
            while start < hi {
                mark[(start - lo) as usize] = false;
                start += p;
            }
        }
        let mut out = Vec::new();
        for (i, &m) in mark.iter().enumerate() {
            let n = lo + i as u64;
            if m && n >= 2 {
                out.push(n as u32);
            }
        }
        out
    });
    parts.concat()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin primality test for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn checked_pow(base: u64, k: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn integer_root(n: u64, k: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && checked_pow(r, k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while checked_pow(r + 1, k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// `Some((p, k))` when `n = p^k` for a prime p and k ≥ 1.
pub fn prime_power_base(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let max_k = 63 - n.leading_zeros();
    for k in (2..=max_k).rev() {
        let r = integer_root(n, k);
        if r >= 2 && checked_pow(r, k) == Some(n) {
            return is_prime_u64(r).then_some((r, k));
        }
    }
    is_prime_u64(n).then_some((n, 1))
}

/// ψ(y) = Σ_{p^k ≤ y} log p.
pub fn chebyshev_psi(y: f64, table: &PrimeTable) -> Result<f64> {
    check_finite("chebyshev_psi", "y", y)?;
    if y < 1.0 {
        return Err(domain("chebyshev_psi", format!("y must be >= 1, got {y}")));
    }
    table.check_covers("chebyshev_psi", y)?;
    let n = y.floor() as u64;
    let count = table.count_upto(y);
    Ok(par::sum_range(Execution::default(), 0..count, |i| {
        let p = table.primes[i] as u64;
        let mut k = 0u32;
        let mut pk = p;
        while pk <= n {
            k += 1;
            match pk.checked_mul(p) {
                Some(v) => pk = v,
                None => break,
            }
        }
        k as f64 * table.logs[i]
    }))
}

/// Whether the prime power equal to an integral `x` gets weight 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoint {
    Halved,
    Full,
}

fn endpoint_target(x: f64, endpoint: Endpoint) -> Option<u64> {
    (endpoint == Endpoint::Halved && x.fract() == 0.0).then_some(x as u64)
}

fn check_sum_args(op: &'static str, x: f64, table: &PrimeTable) -> Result<()> {
    check_finite(op, "x", x)?;
    if x < 1.0 {
        return Err(domain(op, format!("x must be >= 1, got {x}")));
    }
    table.check_covers(op, x)
}

/// S₁(x, s) = Σ'_{n ≤ x} Λ(n)/n^s, halving the term at n = x.
pub fn s1_direct(x: f64, s: Complex64, table: &PrimeTable) -> Result<Complex64> {
    check_sum_args("S1_direct", x, table)?;
    if !(s.re >= 0.0) || !s.im.is_finite() {
        return Err(domain(
            "S1_direct",
            format!("need finite s with Re s >= 0, got {s}"),
        ));
    }
    let n = x.floor() as u64;
    let half_at = endpoint_target(x, Endpoint::Halved);
    let count = table.count_upto(x);
    Ok(par::sum_range_complex(
        Execution::default(),
        0..count,
        |i| {
            let p = table.primes[i] as u64;
            let lp = table.logs[i];
            let mut acc = Complex64::new(0.0, 0.0);
            let mut pk = p;
            let mut k = 1.0;
            while pk <= n {
                let w = if Some(pk) == half_at { 0.5 } else { 1.0 };
                acc += w * lp * (-s * (k * lp)).exp();
                k += 1.0;
                match pk.checked_mul(p) {
                    Some(v) => pk = v,
                    None => break,
                }
            }
            acc
        },
    ))
}

/// Derivatives of order `0..orders` in s of Σ_{n ≤ x} Λ(n)/(n^s log n).
pub fn s2_derivatives(
    x: f64,
    s: f64,
    table: &PrimeTable,
    endpoint: Endpoint,
    orders: usize,
) -> Result<Vec<f64>> {
    check_sum_args("S2_direct", x, table)?;
    check_finite("S2_direct", "s", s)?;
    let n = x.floor() as u64;
    let half_at = endpoint_target(x, endpoint);
    let count = table.count_upto(x);
    Ok((0..orders)
        .map(|order| {
            par::sum_range(Execution::default(), 0..count, |i| {
                let p = table.primes[i] as u64;
                let lp = table.logs[i];
                let mut acc = 0.0;
                let mut pk = p;
                let mut k = 1.0;
                while pk <= n {
                    let w = if Some(pk) == half_at { 0.5 } else { 1.0 };
                    let ln = k * lp;
                    acc += w * (-ln).powi(order as i32) * (-s * ln).exp() / k;
                    k += 1.0;
                    match pk.checked_mul(p) {
                        Some(v) => pk = v,
                        None => break,
                    }
                }
                acc
            })
        })
        .collect())
}

/// S₂(x, s) = Σ'_{n ≤ x} Λ(n)/(n^s log n), halving the term at n = x.
pub fn s2_direct(x: f64, s: f64, table: &PrimeTable) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(domain(
            "S2_direct",
            format!("s must lie in [0, 1], got {s}"),
        ));
    }
    Ok(s2_derivatives(x, s, table, Endpoint::Halved, 1)?[0])
}

/// Limits on exact friable counting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountBudget {
    /// Largest estimated Ψ(x, y) that will be counted exactly.
    pub max_estimate: f64,
}

impl Default for CountBudget {
    fn default() -> Self {
        CountBudget { max_estimate: 1e9 }
    }
}

/// Rough size of Ψ(x, y): the larger of x·ρ(u) and the lattice-simplex count
/// `Π_{p ≤ y} (log x/log p) / π(y)!`, capped at x.
pub fn friable_count_estimate(x: f64, y: f64, table: &PrimeTable) -> f64 {
    if y >= x {
        return x.floor();
    }
    let lx = x.ln();
    let u = lx / y.ln();
    let solver = DickmanSolver::shared();
    let dickman = if u <= solver.max_u() {
        x * solver.rho(u).unwrap_or(0.0)
    } else {
        0.0
    };
    let mut log_simplex = 0.0;
    for (k, &lp) in table.logs[..table.count_upto(y)].iter().enumerate() {
        log_simplex += (lx / lp).ln() - ((k + 1) as f64).ln();
    }
    dickman.max(log_simplex.exp()).min(x.floor())
}

fn check_count_args(op: &'static str, x: f64, y: f64, table: &PrimeTable) -> Result<u64> {
    check_finite(op, "x", x)?;
    check_finite(op, "y", y)?;
    if x < 1.0 || y < 2.0 {
        return Err(domain(
            op,
            format!("need x >= 1 and y >= 2, got x = {x}, y = {y}"),
        ));
    }
    if x >= 1.8e19 {
        return Err(domain(op, format!("x = {x} exceeds 64-bit range")));
    }
    let n = x.floor() as u64;
    if y.floor() as u64 >= n {
        return Ok(n);
    }
    table.check_covers(op, y)?;
    Ok(n)
}

/// Ψ(x, y) by depth-first enumeration with the default budget.
pub fn psi_smooth_exact(x: f64, y: f64, table: &PrimeTable) -> Result<u64> {
    psi_smooth_exact_with(x, y, table, CountBudget::default(), Execution::default())
}

/// Ψ(x, y), splitting the search by the largest prime factor.
pub fn psi_smooth_exact_with(
    x: f64,
    y: f64,
    table: &PrimeTable,
    budget: CountBudget,
    exec: Execution,
) -> Result<u64> {
    let n = check_count_args("psi_smooth_exact", x, y, table)?;
    if y.floor() as u64 >= n {
        return Ok(n);
    }
    let estimate = friable_count_estimate(x, y, table);
    if estimate > budget.max_estimate {
        return Err(Error::Resource {
            op: "psi_smooth_exact",
            reason: format!(
                "estimated count {estimate:.3e} exceeds budget {:.3e}",
                budget.max_estimate
            ),
            estimate: Some(estimate),
        });
    }
    let primes = table.primes_upto(y);
    let rest = par::sum_range_u64(exec, 0..primes.len(), |i| {
        count_with_largest(n / primes[i] as u64, &primes[..=i])
    });
    Ok(1 + rest)
}

/// Integers m ≤ n whose prime factors all lie in `primes` (an initial run of
/// the primes).
fn count_with_largest(n: u64, primes: &[u32]) -> u64 {
    if n < 2 {
        return n;
    }
    let largest = *primes.last().expect("nonempty") as u64;
    if largest >= n {
        return n;
    }
    if primes.len() == 1 {
        return 1 + (63 - n.leading_zeros()) as u64;
    }
    let mut total = 1;
    for (i, &p) in primes.iter().enumerate() {
        let p = p as u64;
        if p > n {
            break;
        }
        let m = n / p;
        total += if p >= m {
            m
        } else {
            count_with_largest(m, &primes[..=i])
        };
    }
    total
}

/// Indicator of y-friability for 1..=n by dividing out every prime ≤ y.
pub fn friable_indicator(n: u64, y: f64, table: &PrimeTable, exec: Execution) -> Result<Vec<bool>> {
    table.check_covers("friable_indicator", y.min(n as f64))?;
    let primes = table.primes_upto(y);
    let starts: Vec<u64> = (0..n.div_ceil(SEGMENT)).map(|i| 1 + i * SEGMENT).collect();
    let parts = par::map_slice(exec, &starts, |&lo| {
        let hi = (lo + SEGMENT).min(n + 1);
        let mut rest: Vec<u64> = (lo..hi).collect();
        for &p in primes {
            let p = p as u64;
            let mut m = lo.div_ceil(p) * p;
            while m < hi {
                let slot = &mut rest[(m - lo) as usize];
                while (*slot).is_multiple_of(p) {
                    *slot /= p;
                }
                m += p;
            }
        }
        rest.into_iter().map(|r| r == 1).collect::<Vec<bool>>()
    });
    Ok(parts.concat())
}

/// Ψ(x, y) by sieving out the primes ≤ y from every integer ≤ x.
pub fn psi_smooth_sieve(x: f64, y: f64, table: &PrimeTable, exec: Execution) -> Result<u64> {
    let n = check_count_args("psi_smooth_sieve", x, y, table)?;
    if y.floor() as u64 >= n {
        return Ok(n);
    }
    if n > 200_000_000 {
        return Err(Error::Resource {
            op: "psi_smooth_sieve",
            reason: format!("sieve length {n} exceeds 2e8"),
            estimate: Some(n as f64),
        });
    }
    Ok(friable_indicator(n, y, table, exec)?
        .into_iter()
        .filter(|&b| b)
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division_prime(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    fn mangoldt(n: u64) -> f64 {
        for d in 2..=n {
            if n.is_multiple_of(d) {
                let mut m = n;
                while m.is_multiple_of(d) {
                    m /= d;
                }
                return if m == 1 { (d as f64).ln() } else { 0.0 };
            }
        }
        0.0
    }

    fn table() -> PrimeTable {
        PrimeTable::new(200_000).unwrap()
    }

    #[test]
    fn small_tables() {
        assert_eq!(PrimeTable::new(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(PrimeTable::new(2).unwrap().primes(), &[2]);
        assert_eq!(PrimeTable::new(100).unwrap().len(), 25);
        assert!(PrimeTable::new(1).is_err());
        assert!(matches!(
            PrimeTable::new(PRIME_LIMIT_CAP + 1),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let t = table();
        let expected: Vec<u32> = (0..=200_000u64)
            .filter(|&n| trial_division_prime(n))
            .map(|n| n as u32)
            .collect();
        assert_eq!(t.primes(), expected.as_slice());
        let seq =
            PrimeTable::with_options(200_000, PRIME_LIMIT_CAP, Execution::Sequential).unwrap();
        assert_eq!(seq, t);
        assert_eq!(t.count_upto(1e5), 9592);
    }

    #[test]
    fn miller_rabin_large() {
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(18_446_744_073_709_551_559));
        assert!(!is_prime_u64(3_215_031_751));
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(1024), Some((2, 10)));
        assert_eq!(prime_power_base(9), Some((3, 2)));
        assert_eq!(prime_power_base(7), Some((7, 1)));
        assert_eq!(prime_power_base(36), None);
        assert_eq!(prime_power_base(1), None);
        assert_eq!(prime_power_base(1 << 63), Some((2, 63)));
        assert_eq!(prime_power_base(3u64.pow(40)), Some((3, 40)));
        assert_eq!(
            prime_power_base(1_000_000_007u64 * 1_000_000_007),
            Some((1_000_000_007, 2))
        );
    }

    #[test]
    fn chebyshev_values() {
        let t = table();
        assert_eq!(chebyshev_psi(1.5, &t).unwrap(), 0.0);
        let l = |v: f64| v.ln();
        let ten = 3.0 * l(2.0) + 2.0 * l(3.0) + l(5.0) + l(7.0);
        assert!((chebyshev_psi(10.0, &t).unwrap() - ten).abs() < 1e-13);
        let brute: f64 = (1..=100).map(mangoldt).sum();
        assert!((chebyshev_psi(100.0, &t).unwrap() - brute).abs() < 1e-12);
        assert!(chebyshev_psi(1e6, &t).is_err());
        for y in [1e4, 5e4, 1e5, 2e5] {
            let r = chebyshev_psi(y, &t).unwrap() / y;
            assert!((0.9..=1.1).contains(&r));
        }
    }

    #[test]
    fn friable_counts_small() {
        let t = table();
        assert_eq!(psi_smooth_exact(10.0, 2.0, &t).unwrap(), 4);
        assert_eq!(psi_smooth_exact(100.0, 100.0, &t).unwrap(), 100);
        assert_eq!(psi_smooth_exact(1.0, 2.0, &t).unwrap(), 1);
        assert_eq!(psi_smooth_exact(30.0, 5.0, &t).unwrap(), 18);
        assert_eq!(
            psi_smooth_sieve(30.0, 5.0, &t, Execution::Sequential).unwrap(),
            18
        );
    }

    #[test]
    fn enumeration_matches_sieve() {
        let t = table();
        let n = 5000u64;
        for y in [2.0, 3.0, 5.0, 10.0, 30.0, 100.0] {
            let ind = friable_indicator(n, y, &t, Execution::Sequential).unwrap();
            let mut count = 0;
            for x in 1..=n {
                count += ind[x as usize - 1] as u64;
                assert_eq!(
                    psi_smooth_exact(x as f64, y, &t).unwrap(),
                    count,
                    "x = {x}, y = {y}"
                );
            }
        }
    }

    #[test]
    fn million_by_thousand() {
        let t = table();
        let a = psi_smooth_exact(1e6, 1e3, &t).unwrap();
        let b = psi_smooth_sieve(1e6, 1e3, &t, Execution::default()).unwrap();
        assert_eq!(a, b);
        let c = psi_smooth_exact_with(1e6, 1e3, &t, CountBudget::default(), Execution::Sequential)
            .unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn budget_is_enforced() {
        let t = table();
        let tight = CountBudget { max_estimate: 1e3 };
        match psi_smooth_exact_with(1e7, 1e3, &t, tight, Execution::default()) {
            Err(Error::Resource {
                estimate: Some(e), ..
            }) => assert!(e > 1e3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn s1_examples() {
        let t = table();
        let l2 = 2f64.ln();
        let l3 = 3f64.ln();
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        assert!((s1_direct(2.0, zero, &t).unwrap().re - 0.5 * l2).abs() < 1e-15);
        let v = s1_direct(10.0, zero, &t).unwrap();
        assert!((v.re - chebyshev_psi(10.0, &t).unwrap()).abs() < 1e-13);
        assert_eq!(v.im, 0.0);
        let nine = l2 * (0.5 + 0.25 + 0.125)
            + l3 * (1.0 / 3.0 + 0.5 / 9.0)
            + 5f64.ln() / 5.0
            + 7f64.ln() / 7.0;
        assert!((s1_direct(9.0, one, &t).unwrap().re - nine).abs() < 1e-14);
        // non-integral x never halves
        assert!((s1_direct(9.5, one, &t).unwrap().re - nine - 0.5 * l3 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn s2_examples() {
        let t = table();
        assert!((s2_direct(3.0, 0.0, &t).unwrap() - 1.5).abs() < 1e-15);
        let four = 0.5 + 1.0 / 3.0 + 1.0 / 16.0;
        assert!((s2_direct(4.0, 1.0, &t).unwrap() - four).abs() < 1e-15);
        let brute: f64 = (2..100u64)
            .map(|n| mangoldt(n) / ((n as f64).sqrt() * (n as f64).ln()))
            .filter(|v| v.is_finite())
            .sum();
        assert!((s2_direct(100.0, 0.5, &t).unwrap() - brute).abs() < 1e-12);
        let full = s2_derivatives(4.0, 1.0, &t, Endpoint::Full, 1).unwrap()[0];
        assert!((full - (0.5 + 1.0 / 3.0 + 1.0 / 8.0)).abs() < 1e-15);
    }

    #[test]
    fn s2_derivatives_match_finite_differences() {
        let t = table();
        let d = s2_derivatives(1000.0, 0.6, &t, Endpoint::Full, 4).unwrap();
        let h = 1e-5;
        for k in 0..3 {
            let hi = s2_derivatives(1000.0, 0.6 + h, &t, Endpoint::Full, 4).unwrap()[k];
            let lo = s2_derivatives(1000.0, 0.6 - h, &t, Endpoint::Full, 4).unwrap()[k];
            let fd = (hi - lo) / (2.0 * h);
            assert!(((fd - d[k + 1]) / d[k + 1]).abs() < 1e-7, "order {}", k + 1);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn miller_rabin_agrees_with_trial_division(n in 0u64..2_000_000) {
            prop_assert_eq!(is_prime_u64(n), trial_division_prime(n));
        }

        #[test]
        fn count_monotone(x in 1.0f64..50_000.0, y in 2.0f64..400.0, dx in 0.0f64..500.0, dy in 0.0f64..50.0) {
            let t = PrimeTable::new(1000).unwrap();
            let base = psi_smooth_exact(x, y, &t).unwrap();
            prop_assert!(psi_smooth_exact(x + dx, y, &t).unwrap() >= base);
            prop_assert!(psi_smooth_exact(x, y + dy, &t).unwrap() >= base);
        }

        #[test]
        fn powers_of_two_only(x in 1.0f64..1e12, y in 2.0f64..2.999) {
            let t = PrimeTable::new(100).unwrap();
            let expected = 1 + (x.floor() as u64).ilog2() as u64;
            prop_assert_eq!(psi_smooth_exact(x, y, &t).unwrap(), expected);
        }

        #[test]
        fn large_y_counts_everything(x in 1.0f64..1e5, extra in 0.0f64..1e3) {
            let t = PrimeTable::new(1000).unwrap();
            prop_assert_eq!(psi_smooth_exact(x, x + extra, &t).unwrap(), x.floor() as u64);
        }
    }
}
