//! Elementary number-theoretic functions used as coefficient oracles.
//!
//! Everything here works on machine integers with trial division; the
//! arguments that appear in the catalog are desk-scale.

/// The positive divisors of `n`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorProfile {
    pub n: u64,
    pub divisors: Vec<u64>,
}

impl DivisorProfile {
    pub fn new(n: u64) -> Self {
        DivisorProfile {
            n,
            divisors: divisors(n),
        }
    }
}

/// Ascending list of positive divisors of `n` (empty for `n == 0`).
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Kronecker symbol `(a / n)` for `n >= 1`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let mut n = n;
    let mut result = 1i32;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 for a = ±1 mod 8, -1 for a = ±3 mod 8
        if twos % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        n >>= twos;
    }
    result * jacobi(a, n)
}

/// Jacobi symbol `(a / n)` for odd `n >= 1`.
fn jacobi(a: i64, n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Divisor power sum `sigma_v(n)`.
pub fn sigma(v: u32, n: u64) -> i128 {
    assert!(n >= 1, "sigma needs n >= 1");
    divisors(n).into_iter().map(|d| (d as i128).pow(v)).sum()
}

/// `c(m)`: the number of ideals of norm `m` in the integers of `Q(sqrt 5)`,
/// computed as the divisor sum of the character `(5 / d)`.
pub fn c5(m: u64) -> i64 {
    assert!(m >= 1, "c5 needs m >= 1");
    divisors(m).into_iter().map(|d| kronecker(5, d) as i64).sum()
}

/// Sum of the divisors `d` of `r` whose cofactor `r / d` is odd.
pub fn odd_quotient_divisor_sum(r: u64) -> i64 {
    assert!(r >= 1, "odd_quotient_divisor_sum needs r >= 1");
    divisors(r)
        .into_iter()
        .filter(|d| (r / d) % 2 == 1)
        .map(|d| d as i64)
        .sum()
}

/// Coefficient of `q^m` in `prod_{j>=1} (1 - q^j)`.
pub fn euler_a(m: u64) -> i32 {
    // m = k(3k - 1)/2 over all integers k; k and -k give the two branches.
    let mut k: u64 = 0;
    loop {
        let lo = k * (3 * k).saturating_sub(1) / 2;
        if lo > m {
            return 0;
        }
        let hi = k * (3 * k + 1) / 2;
        if lo == m || hi == m {
            return if k.is_multiple_of(2) { 1 } else { -1 };
        }
        k += 1;
    }
}

/// The `k`-th triangular number `k(k+1)/2`.
pub fn triangular(k: u64) -> u64 {
    k * (k + 1) / 2
}

/// Whether `t` is a triangular number (zero included).
pub fn is_triangular(t: u64) -> bool {
    let disc = 8 * t + 1;
    let r = disc.isqrt();
    r * r == disc
}

/// Number of ordered pairs `(a, b)` with `a, b >= 0` and `T_a + T_b = s`.
pub fn triangular_pairs(s: u64) -> u64 {
    (0..)
        .map(triangular)
        .take_while(|&t| t <= s)
        .filter(|&t| is_triangular(s - t))
        .count() as u64
}
