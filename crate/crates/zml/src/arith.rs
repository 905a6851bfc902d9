//! Arithmetic ingredients: the von Mangoldt function on integers and reals,
//! a prime-power sieve, the distance to the nearest prime power, and
//! truncated Dirichlet polynomials.

use num_complex::Complex64;

use crate::kahan::CompensatedComplexSum;

/// One row of the prime-power sieve: value = prime^exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub value: u64,
    pub prime: u64,
    pub exponent: u32,
}

/// All prime powers up to a limit, sorted by value, no duplicates.
#[derive(Debug, Clone)]
pub struct PrimePowerTable {
    limit: u64,
    entries: Vec<PrimePower>,
}

impl PrimePowerTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn entries(&self) -> &[PrimePower] {
        &self.entries
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|e| e.value)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.entries.binary_search_by_key(&n, |e| e.value).is_ok()
    }
}

/// Decompose n as p^k, if it is a prime power.
fn prime_power_decomposition(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    // smallest prime factor by trial division
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            p = d;
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut m = n;
    let mut k = 0u32;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    if m == 1 {
        Some((p, k))
    } else {
        None
    }
}

/// Lambda(n): log p if n = p^k, else 0.
pub fn von_mangoldt(n: u64) -> f64 {
    assert!(n >= 1, "von_mangoldt requires n >= 1");
    match prime_power_decomposition(n) {
        Some((p, _)) => (p as f64).ln(),
        None => 0.0,
    }
}

/// Lambda extended to the reals: snaps x to the nearest integer when within
/// eps (floating-point inputs can miss integrality by rounding), zero
/// elsewhere.
pub fn von_mangoldt_real(x: f64, eps: f64) -> f64 {
    debug_assert!(x > 1.0 && eps >= 0.0);
    let r = x.round();
    if (x - r).abs() <= eps && r >= 2.0 {
        von_mangoldt(r as u64)
    } else {
        0.0
    }
}

/// Default snap window for Lambda on derived reals.
pub fn von_mangoldt_snap_eps(x: f64) -> f64 {
    1e-9 * x
}

/// <x>: distance from x to the nearest prime power other than x itself.
/// Exact enumeration over integers near x.
pub fn nearest_prime_power_distance(x: f64) -> f64 {
    assert!(x > 1.0, "nearest_prime_power_distance requires x > 1");
    let is_pp = |m: u64| prime_power_decomposition(m).is_some();
    let x_as_int = if x.fract() == 0.0 && x <= u64::MAX as f64 {
        Some(x as u64)
    } else {
        None
    };

    // nearest prime power strictly below x (or equal integer part, when x
    // itself is not that integer)
    let mut below = f64::INFINITY;
    let mut m = x.floor() as u64;
    while m >= 2 {
        if Some(m) != x_as_int && is_pp(m) {
            below = x - m as f64;
            break;
        }
        m -= 1;
    }

    let mut m = (x.ceil() as u64).max(2);
    let above = loop {
        if Some(m) != x_as_int && is_pp(m) {
            break m as f64 - x;
        }
        m += 1;
    };

    below.min(above)
}

/// Complete prime-power table up to `limit` (limit >= 2), built from a plain
/// prime sieve.
pub fn prime_powers_up_to(limit: u64) -> PrimePowerTable {
    assert!(limit >= 2, "prime_powers_up_to requires limit >= 2");
    let n = limit as usize;
    let mut is_prime = vec![true; n + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut i = 2usize;
    while i * i <= n {
        if is_prime[i] {
            let mut j = i * i;
            while j <= n {
                is_prime[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    let mut entries = Vec::new();
    for p in 2..=limit {
        if is_prime[p as usize] {
            let mut value = p;
            let mut exponent = 1u32;
            loop {
                entries.push(PrimePower {
                    value,
                    prime: p,
                    exponent,
                });
                match value.checked_mul(p) {
                    Some(next) if next <= limit => {
                        value = next;
                        exponent += 1;
                    }
                    _ => break,
                }
            }
        }
    }
    entries.sort_by_key(|e| e.value);
    PrimePowerTable { limit, entries }
}

/// Truncated Dirichlet polynomial sum_{n <= n_max} n^{-s}, compensated.
pub fn dirichlet_polynomial(s: Complex64, n_max: u64) -> Complex64 {
    let mut acc = CompensatedComplexSum::new();
    for n in 1..=n_max {
        let ln_n = (n as f64).ln();
        let r = (-s.re * ln_n).exp();
        let (sin, cos) = (-s.im * ln_n).sin_cos();
        acc.add(Complex64::new(r * cos, r * sin));
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EvalConfig;
    use crate::zeta::zeta;

    #[test]
    fn lambda_on_integers() {
        assert_eq!(von_mangoldt(1), 0.0);
        assert_eq!(von_mangoldt(2), 2.0f64.ln());
        assert_eq!(von_mangoldt(8), 2.0f64.ln());
        assert_eq!(von_mangoldt(9), 3.0f64.ln());
        assert_eq!(von_mangoldt(12), 0.0);
        assert_eq!(von_mangoldt(97), 97.0f64.ln());
        assert_eq!(von_mangoldt(100), 0.0);
    }

    #[test]
    fn lambda_on_reals_snaps_within_eps() {
        assert_eq!(von_mangoldt_real(2.0, 0.0), 2.0f64.ln());
        assert_eq!(von_mangoldt_real(2.5, 1e-9), 0.0);
        assert_eq!(von_mangoldt_real(3.0000000001, 1e-6), 3.0f64.ln());
        assert_eq!(von_mangoldt_real(3.0000000001, 1e-12), 0.0);
    }

    #[test]
    fn chebyshev_identity_against_lcm() {
        // sum_{n<=N} Lambda(n) = log lcm(1..N); lcm(1..60) fits u128.
        fn gcd(a: u128, b: u128) -> u128 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let mut lcm: u128 = 1;
        let mut psi = 0.0f64;
        for n in 1..=60u64 {
            lcm = lcm / gcd(lcm, n as u128) * n as u128;
            psi += von_mangoldt(n);
            let log_lcm = (lcm as f64).ln();
            assert!(
                (psi - log_lcm).abs() <= 1e-12 * log_lcm.max(1.0),
                "psi({n}) = {psi} vs log lcm = {log_lcm}"
            );
        }
    }

    #[test]
    fn lambda_nonzero_exactly_on_table_values() {
        let table = prime_powers_up_to(2000);
        for n in 2..=2000u64 {
            assert_eq!(
                von_mangoldt(n) != 0.0,
                table.contains(n),
                "disagreement at n = {n}"
            );
        }
    }

    #[test]
    fn table_small_limits() {
        let t = prime_powers_up_to(2);
        assert_eq!(t.values().collect::<Vec<_>>(), vec![2]);

        let t = prime_powers_up_to(10);
        assert_eq!(t.values().collect::<Vec<_>>(), vec![2, 3, 4, 5, 7, 8, 9]);

        // brute-force verified list for limit = 30 (16 entries)
        let t = prime_powers_up_to(30);
        assert_eq!(
            t.values().collect::<Vec<_>>(),
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
        );
        for e in t.entries() {
            assert_eq!(e.prime.pow(e.exponent), e.value);
        }
    }

    #[test]
    fn nearest_distance_examples() {
        assert_eq!(nearest_prime_power_distance(4.0), 1.0);
        assert_eq!(nearest_prime_power_distance(2.5), 0.5);
        assert_eq!(nearest_prime_power_distance(9.0), 1.0);
        assert_eq!(nearest_prime_power_distance(2.0), 1.0);
        // between 1 and 2 only the upper neighbour exists
        assert_eq!(nearest_prime_power_distance(1.25), 0.75);
        // 6 sits between 5 and 7
        assert_eq!(nearest_prime_power_distance(6.0), 1.0);
    }

    #[test]
    fn nearest_distance_positive_even_at_prime_powers() {
        let table = prime_powers_up_to(300);
        for v in table.values() {
            assert!(nearest_prime_power_distance(v as f64) > 0.0);
        }
    }

    #[test]
    fn dirichlet_polynomial_degenerate_cases() {
        assert_eq!(
            dirichlet_polynomial(Complex64::new(3.7, -2.0), 0),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            dirichlet_polynomial(Complex64::new(3.7, -2.0), 1),
            Complex64::new(1.0, 0.0)
        );
        let five = dirichlet_polynomial(Complex64::new(0.0, 0.0), 5);
        assert!((five - Complex64::new(5.0, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn dirichlet_tail_bound() {
        // |poly(s, N) - zeta(s)| <= N^{1-re}/(re-1) + N^{-re} for re >= 2
        let cfg = EvalConfig::default();
        for (re, im, n) in [(2.0, 13.0, 100u64), (2.5, -400.0, 50), (3.0, 0.0, 20)] {
            let s = Complex64::new(re, im);
            let z = zeta(s, &cfg).unwrap();
            let p = dirichlet_polynomial(s, n);
            let nf = n as f64;
            let bound = nf.powf(1.0 - re) / (re - 1.0) + nf.powf(-re);
            assert!(
                (p - z).norm() <= bound,
                "tail bound violated at s = {s}, N = {n}"
            );
        }
    }

    #[test]
    fn dirichlet_remainder_shrinks_with_cutoff() {
        // Remainder measurement at s = 0.75 + 50i: the error
        // against zeta decreases as the cutoff grows from 50^0.5 to 50^0.9.
        let cfg = EvalConfig::default();
        let s = Complex64::new(0.75, 50.0);
        let z = zeta(s, &cfg).unwrap();
        let at = |d: f64| {
            let n = 50.0f64.powf(d).ceil() as u64;
            (dirichlet_polynomial(s, n) - z).norm()
        };
        assert!(at(0.9) < at(0.5), "r = {} vs {}", at(0.9), at(0.5));
    }
}
