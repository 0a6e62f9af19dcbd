//! Builders for the named q-series: Pochhammer products, single and double
//! Lambert series, theta and Eisenstein series, and the finite sequences
//! `aa(n)`, `aa1(n)`, `A_n`, `C_n` and the WZ pair `F`, `G`.
//!
//! Every double sum goes through [`TermFamily`] and [`bivariate_sum`]. A
//! family declares a lower bound on the exponent of each summand, strictly
//! increasing in both indices, so truncating at order `N` only needs the
//! finitely many summands whose bound is at most `N`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{c5, divisors, euler_a, kronecker, odd_quotient_divisor_sum, sigma, triangular_pairs};
use crate::error::{Error, Result};
use crate::partitions::thm54_rhs_series;
use crate::series::{rat, ratio, Coeff, Exponent, TruncatedSeries};

/// Largest truncation order any builder accepts.
pub const ENGINE_ORDER_LIMIT: Exponent = 4000;

fn check_order(order: Exponent) -> Result<()> {
    if order < 0 {
        return Err(Error::InvalidOrder { order, min: 0 });
    }
    if order > ENGINE_ORDER_LIMIT {
        return Err(Error::EngineLimit {
            id: "series engine".into(),
            order,
            limit: ENGINE_ORDER_LIMIT,
        });
    }
    Ok(())
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A doubly indexed family of summands `(m, n)`, `m, n >= 1`.
pub trait TermFamily: Sync {
    /// Lower bound on the exponent of every nonzero coefficient of `term(m, n)`.
    /// Must be strictly increasing in each argument.
    fn min_exponent(&self, m: i64, n: i64) -> Exponent;

    /// The `(m, n)` summand, exact up to `order`.
    fn term(&self, m: i64, n: i64, order: Exponent) -> Result<TruncatedSeries>;
}

/// A [`TermFamily`] assembled from two closures.
pub struct Family<M, T> {
    min_exponent: M,
    term: T,
}

impl<M, T> Family<M, T>
where
    M: Fn(i64, i64) -> Exponent + Sync,
    T: Fn(i64, i64, Exponent) -> Result<TruncatedSeries> + Sync,
{
    pub fn new(min_exponent: M, term: T) -> Self {
        Family { min_exponent, term }
    }
}

impl<M, T> TermFamily for Family<M, T>
where
    M: Fn(i64, i64) -> Exponent + Sync,
    T: Fn(i64, i64, Exponent) -> Result<TruncatedSeries> + Sync,
{
    fn min_exponent(&self, m: i64, n: i64) -> Exponent {
        (self.min_exponent)(m, n)
    }

    fn term(&self, m: i64, n: i64, order: Exponent) -> Result<TruncatedSeries> {
        (self.term)(m, n, order)
    }
}

/// Checks a summand against its declared minimum exponent.
pub fn checked_term(family: &dyn TermFamily, m: i64, n: i64, order: Exponent) -> Result<TruncatedSeries> {
    let declared = family.min_exponent(m, n);
    let t = family.term(m, n, order)?;
    if let Some(actual) = t.valuation() {
        if actual < declared {
            return Err(Error::ContractViolation { m, n, declared, actual });
        }
    }
    Ok(t)
}

/// `sum_{m,n >= 1} term(m, n)` truncated at `order`.
pub fn bivariate_sum(family: &dyn TermFamily, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut rows = Vec::new();
    let mut m = 1;
    while family.min_exponent(m, 1) <= order {
        if m > 1 && family.min_exponent(m, 1) <= family.min_exponent(m - 1, 1) {
            return Err(Error::ContractViolation {
                m,
                n: 1,
                declared: family.min_exponent(m - 1, 1),
                actual: family.min_exponent(m, 1),
            });
        }
        rows.push(m);
        m += 1;
    }
    let partials = rows
        .into_par_iter()
        .map(|m| {
            let mut acc = TruncatedSeries::zero(order);
            let mut n = 1;
            let mut prev = None;
            while family.min_exponent(m, n) <= order {
                let e = family.min_exponent(m, n);
                if let Some(p) = prev {
                    if e <= p {
                        return Err(Error::ContractViolation { m, n, declared: p, actual: e });
                    }
                }
                prev = Some(e);
                acc.add_assign(&checked_term(family, m, n, order)?);
                n += 1;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = TruncatedSeries::zero(order);
    for p in &partials {
        total.add_assign(p);
    }
    Ok(total)
}

/// `numerator / prod (1 + s q^k)` with an integer-monomial numerator.
pub fn rational_term(numerator: &[(i64, Exponent)], denominators: &[(i64, Exponent)], order: Exponent) -> TruncatedSeries {
    let mut s = TruncatedSeries::polynomial(numerator.iter().copied(), order);
    for &(sg, k) in denominators {
        s.div_binomial(&rat(sg), k);
    }
    s
}

/// Multiplies (or divides) in place by `(1 - q^step)(1 - q^{2 step}) ... (1 - q^{count step})`.
fn apply_qfactorial(s: &mut TruncatedSeries, step: Exponent, count: i64, divide: bool) {
    let span = s.order() - s.floor();
    let minus = -Coeff::one();
    for j in 1..=count {
        let k = j * step;
        if k > span {
            break;
        }
        if divide {
            s.div_binomial(&minus, k);
        } else {
            s.mul_binomial(&minus, k);
        }
    }
}

/// Multiplies by `prod (q;q)_a` over `num` and divides by `prod (q;q)_b` over `den`,
/// cancelling common factors first. All indices must be nonnegative.
fn apply_qfactorial_ratio(s: &mut TruncatedSeries, num: &[i64], den: &[i64]) {
    let top = num.iter().chain(den).copied().max().unwrap_or(0).max(0);
    let span = s.order() - s.floor();
    let minus = -Coeff::one();
    for i in 1..=top.min(span.max(0)) {
        let mult = num.iter().filter(|&&a| a >= i).count() as i64 - den.iter().filter(|&&b| b >= i).count() as i64;
        for _ in 0..mult.max(0) {
            s.mul_binomial(&minus, i);
        }
        for _ in 0..(-mult).max(0) {
            s.div_binomial(&minus, i);
        }
    }
}

/// `(c q^e; q)_n = prod_{j=0}^{n-1} (1 - c q^{e+j})`, or the infinite product when `n` is `None`.
pub fn pochhammer(c: &Coeff, e: Exponent, n: Option<u64>, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut s = TruncatedSeries::one(order);
    let neg_c = -c;
    let count = match n {
        Some(n) => n as i64,
        None => {
            if e <= 0 {
                return Err(Error::DivergentProduct { first: e });
            }
            // factors with e + j > order are 1 + O(q^{order+1})
            (order - e + 1).max(0)
        }
    };
    for j in 0..count {
        let k = e + j;
        if k > 0 {
            if k <= order {
                s.mul_binomial(&neg_c, k);
            }
        } else if k == 0 {
            s = s.scale(&(Coeff::one() - c));
        } else {
            // (1 - c q^k) with k < 0 is a Laurent polynomial; the min rule lowers the order
            let shifted = s.shift(k).scale(&neg_c);
            s.add_assign(&shifted);
        }
    }
    Ok(s)
}

/// `sum_{n>=1} a(n) q^n / (1 - q^n)` truncated at `order`.
pub fn lambert_single(a: &dyn Fn(i64) -> Coeff, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut s = TruncatedSeries::zero(order);
    for n in 1..=order {
        let c = a(n);
        if c.is_zero() {
            continue;
        }
        let mut e = n;
        while e <= order {
            *s.coeff_mut(e)? += &c;
            e += n;
        }
    }
    Ok(s)
}

/// `sum_{k>=1} term(k)` where `term(k)` starts no lower than `q^{min_exponent(k)}`,
/// which must be increasing.
fn single_sum(
    order: Exponent,
    min_exponent: impl Fn(i64) -> Exponent,
    term: impl Fn(i64) -> TruncatedSeries,
) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    let mut k = 1;
    while min_exponent(k) <= order {
        s.add_assign(&term(k));
        k += 1;
    }
    s
}

/// `sum_{n>=1} coeff(n) q^n` as a series, with zero constant term.
fn coefficient_series(order: Exponent, coeff: impl Fn(i64) -> Coeff) -> TruncatedSeries {
    TruncatedSeries::from_fn(0, order, |e| if e == 0 { Coeff::zero() } else { coeff(e) })
}

/// Builds `f(q^k)` to `order` from a builder of `f`.
fn at_power(build: impl Fn(Exponent) -> Result<TruncatedSeries>, k: Exponent, order: Exponent) -> Result<TruncatedSeries> {
    let inner = build((order + k - 1).div_euclid(k))?;
    inner.substitute_power(k)?.truncate(order)
}

/// `q * f` where `f` is built one order lower, so the product is trusted to `order`.
fn times_q(build: impl Fn(Exponent) -> Result<TruncatedSeries>, order: Exponent) -> Result<TruncatedSeries> {
    Ok(build(order - 1)?.shift(1))
}

// ---------------------------------------------------------------------------
// Three Lambert series

/// `f1 = sum_k [k(k-1) q^k/(1-q^k) - 2k q^{2k}/(1-q^k)^2]`.
pub fn f1(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(
        order,
        |k| k,
        |k| {
            let mut a = rational_term(&[(k * (k - 1), k)], &[(-1, k)], order);
            let b = rational_term(&[(2 * k, 2 * k)], &[(-1, k), (-1, k)], order);
            a.sub_assign(&b);
            a
        },
    ))
}

/// `sum_n (sum_{d|n} (d^2 + d - 2n)) q^n`.
pub fn lem31_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(coefficient_series(order, |n| {
        rat(divisors(n as u64).into_iter().map(|d| {
            let d = d as i64;
            d * d + d - 2 * n
        }).sum())
    }))
}

/// `f2 = sum_{k,l>=1} (k+l) q^{k+l+kl} / ((1-q^k)(1-q^l))`.
pub fn f2(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |k, l| k + l + k * l,
        |k, l, order| Ok(rational_term(&[(k + l, k + l + k * l)], &[(-1, k), (-1, l)], order)),
    );
    bivariate_sum(&fam, order)
}

/// `f3 = sum_{k>=1} sum_{l>k} 2k q^{k+l} / ((1-q^k)(1-q^l))`, indexed by `l = k + n`.
pub fn f3(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |k, n| 2 * k + n,
        |k, n, order| {
            let l = k + n;
            Ok(rational_term(&[(2 * k, k + l)], &[(-1, k), (-1, l)], order))
        },
    );
    bivariate_sum(&fam, order)
}

/// `sum_n (c(n) + d(n)) q^n`, the two-part-size statistics.
pub fn twosize_cd_series(order: Exponent) -> Result<TruncatedSeries> {
    use crate::partitions::{stat_twosize_c, stat_twosize_d};
    check_order(order)?;
    Ok(coefficient_series(order, |n| rat(stat_twosize_c(n as u64) + stat_twosize_d(n as u64))))
}

/// `sum_n 2 c(n) q^n`.
pub fn twosize_2c_series(order: Exponent) -> Result<TruncatedSeries> {
    use crate::partitions::stat_twosize_c;
    check_order(order)?;
    Ok(coefficient_series(order, |n| rat(2 * stat_twosize_c(n as u64))))
}

/// `sum_n (a(n) - b(n)) q^n`, the rectangular statistics.
pub fn rect_ab_series(order: Exponent) -> Result<TruncatedSeries> {
    use crate::partitions::{stat_rect_a, stat_rect_b};
    check_order(order)?;
    Ok(coefficient_series(order, |n| rat(stat_rect_a(n as u64) - stat_rect_b(n as u64))))
}

/// `sum_{k>=1} sum_{l>k} k q^l / ((1-q^k)(1-q^l))`, indexed by `l = k + n`.
pub fn lem33_lhs(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |k, n| k + n,
        |k, n, order| {
            let l = k + n;
            Ok(rational_term(&[(k, l)], &[(-1, k), (-1, l)], order))
        },
    );
    bivariate_sum(&fam, order)
}

/// `sum_k k^2 q^k/(1-q^k) - sum_k k q^k/(1-q^k)^2`.
pub fn lem33_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(
        order,
        |k| k,
        |k| {
            let mut a = rational_term(&[(k * k, k)], &[(-1, k)], order);
            a.sub_assign(&rational_term(&[(k, k)], &[(-1, k), (-1, k)], order));
            a
        },
    ))
}

/// Brute-force count of `q^{x1 x2 + x2 x3 + x3 x4 + x4 x5}` over
/// `x1, x2, x4, x5 >= 1` and `x3 >= 0`.
pub fn quintuple_sum(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut counts = vec![0i64; order as usize + 1];
    // exponent = x2 (x1 + x3) + x4 (x3 + x5)
    for x3 in 0..=order {
        for x2 in 1..=order {
            for x1 in 1..=order {
                let left = x2 * (x1 + x3);
                if left + (x3 + 1) > order {
                    break;
                }
                for x4 in 1..=order {
                    for x5 in 1..=order {
                        let e = left + x4 * (x3 + x5);
                        if e > order {
                            break;
                        }
                        counts[e as usize] += 1;
                    }
                    if left + x4 * (x3 + 1) > order {
                        break;
                    }
                }
            }
            if x2 * (1 + x3) + (x3 + 1) > order {
                break;
            }
        }
        if 2 * (x3 + 1) > order {
            break;
        }
    }
    Ok(TruncatedSeries::from_coeffs(0, counts.into_iter().map(rat).collect()))
}

/// `sum_{m,n>=1} q^{m+n} / ((1-q^m)(1-q^n)(1-q^{m+n}))`.
pub fn liouville_triple(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |m, n| m + n,
        |m, n, order| Ok(rational_term(&[(1, m + n)], &[(-1, m), (-1, n), (-1, m + n)], order)),
    );
    bivariate_sum(&fam, order)
}

/// `sum_{m,n>=1} q^{m+n} / ((1-q^n)(1-q^{m+n})^2)`.
pub fn identity33_lhs(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |m, n| m + n,
        |m, n, order| Ok(rational_term(&[(1, m + n)], &[(-1, n), (-1, m + n), (-1, m + n)], order)),
    );
    bivariate_sum(&fam, order)
}

/// `sum_i q^{2i} / (1-q^i)^3`.
pub fn identity33_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(order, |i| 2 * i, |i| rational_term(&[(1, 2 * i)], &[(-1, i), (-1, i), (-1, i)], order)))
}

// ---------------------------------------------------------------------------
// Rogers-Ramanujan type identities

/// `q^e (q;q)_{n-1} / prod_{i=n+1}^{2n} (1 - q^i)`, i.e. `q^e (q;q)_n (q;q)_{n-1} / (q;q)_{2n}`.
fn rr_term(c: i64, e: Exponent, n: i64, order: Exponent) -> TruncatedSeries {
    let mut t = TruncatedSeries::polynomial([(c, e)], order);
    apply_qfactorial_ratio(&mut t, &[n, n - 1], &[2 * n]);
    t
}

/// `sum_{n>=1} (q;q)_n (q;q)_{n-1} q^{n^2} / (q;q)_{2n}`.
pub fn intro_mod3_lhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(order, |n| n * n, |n| rr_term(1, n * n, n, order)))
}

/// `sum_{n>=1} (n/3) q^n / (1 - q^n)`.
pub fn intro_mod3_rhs(order: Exponent) -> Result<TruncatedSeries> {
    lambert_single(&|n| rat(kronecker(n, 3) as i64), order)
}

/// `sum_{n>=1} (-1)^{n-1} q^{binom(n+1,2)} (q;q)_n (q;q)_{n-1} / (q;q)_{2n}`.
pub fn thm41_lhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(order, |n| binom2(n + 1), |n| rr_term(sign(n - 1), binom2(n + 1), n, order)))
}

/// `sum_{n>=1} (5/n) q^n / (1 - q^n)`.
pub fn thm41_rhs(order: Exponent) -> Result<TruncatedSeries> {
    lambert_single(&|n| rat(kronecker(5, n as u64) as i64), order)
}

/// The two lattice sums
/// `sum_{n>=0} sum_{j=-n+1}^{n} q^{5n^2-j^2} + sum_{n>=0} sum_{j=-n}^{n} q^{5n^2-j^2+5n-j+1}`.
pub fn thm41_sumrep(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut terms = Vec::new();
    let mut n = 0;
    // smallest exponents are 4n^2 and 4n^2 + 4n + 1
    while 4 * n * n <= order {
        for j in (-n + 1)..=n {
            terms.push((1, 5 * n * n - j * j));
        }
        for j in -n..=n {
            terms.push((1, 5 * n * n - j * j + 5 * n - j + 1));
        }
        n += 1;
    }
    Ok(TruncatedSeries::polynomial(terms, order).truncate(order)?.padded_to_zero())
}

/// `sum_m c(m) q^m` with `c(m) = sum_{d|m} (5/d)`.
pub fn lem44_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(coefficient_series(order, |m| rat(c5(m as u64))))
}

/// `F(n, j)` of the WZ pair; zero outside `1 <= j <= n`.
pub fn wz_f(n: i64, j: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    if j < 1 || j > n {
        return Ok(TruncatedSeries::zero(order));
    }
    let mut t = TruncatedSeries::polynomial([(sign(j - 1), binom2(n - j))], order);
    apply_qfactorial_ratio(&mut t, &[n + j, j - 1], &[n - j, 2 * j]);
    Ok(t.padded_to_zero())
}

/// `G(n, j)` of the WZ pair; zero whenever a `(q;q)` index in it is negative.
pub fn wz_g(n: i64, j: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    if j < 0 || n + 2 - j < 0 || n + j + 1 < 0 {
        return Ok(TruncatedSeries::zero(order));
    }
    let mut t = TruncatedSeries::polynomial([(sign(j - 1), binom2(n + 3 - j))], order);
    apply_qfactorial_ratio(&mut t, &[n + j + 1, j], &[n + 2 - j, 2 * j]);
    t.mul_binomial(&rat(-1), 2 * n + 4);
    Ok(t.padded_to_zero())
}

/// `sum_{j=1}^{n} F(n, j)`.
pub fn wz_sum(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(order);
    for j in 1..=n {
        s.add_assign(&wz_f(n, j, order)?);
    }
    Ok(s)
}

/// The braces of the WZ identity:
/// `sum_{j=0}^{floor(n/2)} sum_{i=-j+1}^{j} q^{j^2-i^2} + sum_{j=0}^{floor((n-1)/2)} sum_{i=-j}^{j} q^{j^2+j-i^2-i}`.
fn wz_braces(n: i64) -> Vec<(i64, Exponent)> {
    let mut terms = Vec::new();
    for j in 0..=n.div_euclid(2) {
        for i in (-j + 1)..=j {
            terms.push((1, j * j - i * i));
        }
    }
    for j in 0..=(n - 1).div_euclid(2) {
        for i in -j..=j {
            terms.push((1, j * j + j - i * i - i));
        }
    }
    terms
}

/// `q^{binom(n,2)} { braces }`, the closed side of the WZ identity.
pub fn wz_closed(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let shift = binom2(n);
    Ok(TruncatedSeries::polynomial(wz_braces(n).into_iter().map(|(c, e)| (c, e + shift)), order).padded_to_zero())
}

/// `aa(n) = (-1)^{n-1} q^{binom(n,2)} { braces }`; `aa(0) = 0`.
pub fn aa(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    if n <= 0 {
        return Ok(TruncatedSeries::zero(order));
    }
    Ok(wz_closed(n, order)?.scale_int(sign(n - 1)))
}

/// `aa1(n) = aa(n) + q^{n-1} aa(n-1)`; `aa1(0) = 0`.
pub fn aa1(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    if n <= 0 {
        return Ok(TruncatedSeries::zero(order));
    }
    let mut s = aa(n, order)?;
    let prev = aa(n - 1, order)?;
    s.add_assign(&prev.shift(n - 1).truncate(order).unwrap_or(prev.shift(n - 1)));
    Ok(s.padded_to_zero())
}

/// The parity closed forms of `aa1`:
/// `aa1(2k) = -q^{3k^2-k} sum_{j=-k+1}^{k} q^{-j^2}`, `aa1(2k+1) = q^{3k^2+2k} sum_{j=-k}^{k} q^{-j^2-j}`.
pub fn aa1_closed(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let k = n.div_euclid(2);
    let terms: Vec<(i64, Exponent)> = if n % 2 == 0 {
        ((-k + 1)..=k).map(|j| (-1, 3 * k * k - k - j * j)).collect()
    } else {
        (-k..=k).map(|j| (1, 3 * k * k + 2 * k - j * j - j)).collect()
    };
    Ok(TruncatedSeries::polynomial(terms, order).padded_to_zero())
}

/// `sum_{j=0}^{n} (-1)^j q^{nj - binom(j+1,2)} aa1(n-j)`.
pub fn aa_reconstructed(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut s = TruncatedSeries::zero(order);
    for j in 0..=n {
        let e = n * j - binom2(j + 1);
        if e > order {
            continue;
        }
        let t = aa1(n - j, order)?.shift(e).truncate(order)?;
        s.add_scaled_assign(&t, &rat(sign(j)));
    }
    Ok(s)
}

/// `A_n (1-q)/(1-q^{2n+1})`: the finite inversion sum, `1` at `n = 0`.
pub fn bailey_a_normalized(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    if n == 0 {
        return Ok(TruncatedSeries::one(order));
    }
    let mut s = TruncatedSeries::zero(order);
    for j in 0..=n {
        let mut t = TruncatedSeries::polynomial([(sign(n - j), binom2(n - j))], order);
        apply_qfactorial_ratio(&mut t, &[n + j], &[n - j, 2 * j]);
        s.add_assign(&t);
    }
    Ok(s)
}

/// `A_n` of the Bailey pair with `B_n = 1/(q;q)_{2n}`.
pub fn bailey_a(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    Ok(unnormalize(bailey_a_normalized(n, order)?, n))
}

/// `C_n (1-q)/(1-q^{2n+1})`: `0` when `n = 1 mod 3`, else `(-q)^{n(2n-1)/3}`.
pub fn bailey_c_normalized(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    bailey_c_normalized_with(n, order, |n| n * (2 * n - 1) / 3)
}

/// Same support and exponents as [`bailey_c_normalized`] but with sign `+1`
/// when `3 | n` and `-1` when `n = 2 mod 3`, which is what the inversion sum produces.
pub fn bailey_c_signed_normalized(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    bailey_c_normalized_with(n, order, |n| i64::from(n % 3 == 2))
}

fn bailey_c_normalized_with(n: i64, order: Exponent, sign_exp: impl Fn(i64) -> i64) -> Result<TruncatedSeries> {
    check_order(order)?;
    if n == 0 {
        return Ok(TruncatedSeries::one(order));
    }
    if n % 3 == 1 {
        return Ok(TruncatedSeries::zero(order));
    }
    let e = n * (2 * n - 1) / 3;
    Ok(TruncatedSeries::polynomial([(sign(sign_exp(n)), e)], order).padded_to_zero())
}

fn unnormalize(mut s: TruncatedSeries, n: i64) -> TruncatedSeries {
    if n > 0 {
        s.mul_binomial(&rat(-1), 2 * n + 1);
        s.div_binomial(&rat(-1), 1);
    }
    s
}

/// The closed form `C_n`.
pub fn bailey_c(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    Ok(unnormalize(bailey_c_normalized(n, order)?, n))
}

/// `C_n` with the sign of [`bailey_c_signed_normalized`].
pub fn bailey_c_signed(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    Ok(unnormalize(bailey_c_signed_normalized(n, order)?, n))
}

/// `B_n = sum_{r=0}^{n} A_r / ((q^2;q^2)_{n+r} (q;q)_{n-r})`, rebuilt from the `A_r`.
pub fn bailey_b_from_a(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(order);
    for r in 0..=n {
        let mut t = bailey_a(r, order)?;
        apply_qfactorial(&mut t, 2, n + r, true);
        apply_qfactorial(&mut t, 1, n - r, true);
        s.add_assign(&t);
    }
    Ok(s)
}

/// `1 / (q;q)_{2n}`.
pub fn inverse_qfactorial(n: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut s = TruncatedSeries::one(order);
    apply_qfactorial(&mut s, 1, 2 * n, true);
    Ok(s)
}

/// `sum_{n>=0} (-1)^n q^{binom(n+1,2)} (q;q)_n / (q;q)_{2n}`.
pub fn thm46_lhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut s = TruncatedSeries::one(order);
    s.add_assign(&single_sum(
        order,
        |n| binom2(n + 1),
        |n| {
            let mut t = TruncatedSeries::polynomial([(sign(n), binom2(n + 1))], order);
            apply_qfactorial_ratio(&mut t, &[n], &[2 * n]);
            t
        },
    ));
    Ok(s)
}

/// `sum_{m>=0} (-1)^m |a(7m)| q^m` with `a` the pentagonal coefficients.
pub fn thm46_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(TruncatedSeries::from_fn(0, order, |m| rat(sign(m) * (euler_a(7 * m as u64) as i64).abs())))
}

/// `sum_{n>=0} { q^{(3n+2)(7n+5)/2}(1-q^{6n+5}) + q^{n(21n+1)/2}(1-q^{6n+1}) }`.
pub fn thm46_sumrep(order: Exponent) -> Result<TruncatedSeries> {
    thm46_sumrep_with(order, |_| 1, |_| 1)
}

/// `sum_{n>=0} (-1)^n { q^{n(21n+1)/2}(1-q^{6n+1}) - q^{(3n+2)(7n+5)/2}(1-q^{6n+5}) }`.
pub fn thm46_sumrep_signed(order: Exponent) -> Result<TruncatedSeries> {
    thm46_sumrep_with(order, |n| -sign(n), sign)
}

fn thm46_sumrep_with(order: Exponent, first: impl Fn(i64) -> i64, second: impl Fn(i64) -> i64) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut terms = Vec::new();
    let mut n = 0;
    while n * (21 * n + 1) / 2 <= order {
        let a = (3 * n + 2) * (7 * n + 5) / 2;
        let b = n * (21 * n + 1) / 2;
        let (f, g) = (first(n), second(n));
        terms.extend([(f, a), (-f, a + 6 * n + 5), (g, b), (-g, b + 6 * n + 1)]);
        n += 1;
    }
    Ok(TruncatedSeries::polynomial(terms, order).padded_to_zero())
}

/// `(1-q) sum_{n>=0} (-1)^n q^{binom(n+1,2)} A_n`.
pub fn thm46_bailey(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut s = TruncatedSeries::zero(order);
    let mut n = 0;
    while binom2(n + 1) <= order {
        let t = bailey_a(n, order)?.shift(binom2(n + 1)).truncate(order)?;
        s.add_scaled_assign(&t, &rat(sign(n)));
        n += 1;
    }
    s.mul_binomial(&rat(-1), 1);
    Ok(s)
}

// ---------------------------------------------------------------------------
// The double Lambert series around Y(q)

/// `Y = sum_{m,n>=1} (-q)^{2mn+m} / ((1+q^n)(1-q^{2m-1}))`.
pub fn y_series(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |m, n| 2 * m * n + m,
        |m, n, order| Ok(rational_term(&[(sign(m), 2 * m * n + m)], &[(1, n), (-1, 2 * m - 1)], order)),
    );
    bivariate_sum(&fam, order)
}

/// The summand `a(m, n) = (-1)^{m-1} q^{2mn+m-1} / ((1+q^n)(1-q^{2m-1}))` of `Y / (-q)`.
pub fn ytilde_term(m: i64, n: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(rational_term(&[(sign(m - 1), 2 * m * n + m - 1)], &[(1, n), (-1, 2 * m - 1)], order))
}

/// `Y / (-q) = sum_{m,n>=1} a(m, n)`.
pub fn ytilde(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(|m, n| 2 * m * n + m - 1, ytilde_term);
    bivariate_sum(&fam, order)
}

/// `sum_{k>=2} q^{k-1}/(1+q^{2k-1}) sum_{n=1}^{k-1} q^n/(1+q^n)`.
pub fn prop53_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut inner = TruncatedSeries::zero(order);
    let mut s = TruncatedSeries::zero(order);
    let mut k = 2;
    while k <= order {
        inner.add_assign(&rational_term(&[(1, k - 1)], &[(1, k - 1)], order));
        let mut t = inner.shift(k - 1).truncate(order)?;
        t.div_binomial(&rat(1), 2 * k - 1);
        s.add_assign(&t);
        k += 1;
    }
    Ok(s)
}

/// `prod_j 1/(1+q^j) * sum_k q^k/(1+q^k) sum_{l>k} q^{l-1}/(1+q^{2l-1})`.
pub fn thm54_lhs(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |k, n| 2 * k + n - 1,
        |k, n, order| {
            let l = k + n;
            Ok(rational_term(&[(1, k + l - 1)], &[(1, k), (1, 2 * l - 1)], order))
        },
    );
    let mut s = bivariate_sum(&fam, order)?;
    for j in 1..=order {
        s.div_binomial(&rat(1), j);
    }
    Ok(s)
}

/// The partition-enumeration side, certified to `order`.
pub fn thm54_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(thm54_rhs_series(order))
}

/// `sum_{m,n>=1} (-1)^{m-1} q^{2mn} [q^{m-1} + s q^{-m}] / ((1+q^{2n-1})(1-q^{2m-1}))`.
fn lem57_family_sum(s: i64, order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |m, n| 2 * m * n - m,
        move |m, n, order| {
            let sg = sign(m - 1);
            Ok(rational_term(
                &[(sg, 2 * m * n + m - 1), (sg * s, 2 * m * n - m)],
                &[(1, 2 * n - 1), (-1, 2 * m - 1)],
                order,
            ))
        },
    );
    bivariate_sum(&fam, order)
}

/// Left side of the first paired identity (`[q^{m-1} + q^{-m}]`).
pub fn lem57_id1_lhs(order: Exponent) -> Result<TruncatedSeries> {
    lem57_family_sum(1, order)
}

/// Left side of the second paired identity (`[q^{-m} - q^{m-1}]`).
pub fn lem57_id2_lhs(order: Exponent) -> Result<TruncatedSeries> {
    Ok(-lem57_family_sum(-1, order)?)
}

/// `sum_{n>=1} q^{n-1} / (1+q^{2n-1})`.
pub fn half_theta_sum(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order.max(0))?;
    Ok(single_sum(order, |n| n - 1, |n| rational_term(&[(1, n - 1)], &[(1, 2 * n - 1)], order)))
}

/// `q (sum_{n>=1} q^{n-1}/(1+q^{2n-1}))^2`.
pub fn alt_y_lhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    times_q(|o| Ok(half_theta_sum(o)?.pow(2)), order)
}

/// `sum_{n>=1} q^{2n-1} / (1+q^{2n-1})^2`.
pub fn odd_square_sum(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(order, |n| 2 * n - 1, |n| rational_term(&[(1, 2 * n - 1)], &[(1, 2 * n - 1), (1, 2 * n - 1)], order)))
}

/// `sum_{n>=1} q^{4n-2} / (1-q^{4n-2})^2`.
pub fn thm58_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(order, |n| 4 * n - 2, |n| rational_term(&[(1, 4 * n - 2)], &[(-1, 4 * n - 2), (-1, 4 * n - 2)], order)))
}

/// `sum q^{2n-1}/(1+q^{2n-1})^2 + 2 sum q^{4n-2}/(1-q^{4n-2})^2`.
pub fn alt_y_rhs(order: Exponent) -> Result<TruncatedSeries> {
    let mut s = odd_square_sum(order)?;
    s.add_scaled_assign(&thm58_rhs(order)?, &rat(2));
    Ok(s)
}

/// `sum_{m,n>=1} (-q)^{2mn+m-1} / ((1+q^{2n-1})(1-q^{2m-1}))`.
pub fn thm58_lhs(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |m, n| 2 * m * n + m - 1,
        |m, n, order| {
            Ok(rational_term(
                &[(sign(m - 1), 2 * m * n + m - 1)],
                &[(1, 2 * n - 1), (-1, 2 * m - 1)],
                order,
            ))
        },
    );
    bivariate_sum(&fam, order)
}

/// Zero at odd exponents, `sum_{d|r, r/d odd} d` at `q^{2r}`.
pub fn cor59_law(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(coefficient_series(order, |e| {
        if e % 2 == 1 {
            Coeff::zero()
        } else {
            rat(odd_quotient_divisor_sum((e / 2) as u64))
        }
    }))
}

/// `sum_{n>=1} q^n / (1+q^{2n-1})`.
pub fn prop510_lhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(order, |n| n, |n| rational_term(&[(1, n)], &[(1, 2 * n - 1)], order)))
}

/// `sum_{n>=0} q^{n(n+1)}`.
pub fn psi_q2(order: Exponent) -> Result<TruncatedSeries> {
    let order = order.max(-1);
    let mut terms = Vec::new();
    let mut n = 0;
    while n * (n + 1) <= order {
        terms.push((1, n * (n + 1)));
        n += 1;
    }
    Ok(TruncatedSeries::polynomial(terms, order).padded_to_zero())
}

/// `q (sum_{n>=0} q^{n(n+1)})^2`.
pub fn psi2sq(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    times_q(|o| Ok(psi_q2(o)?.pow(2)), order)
}

/// Zero at even exponents, the number of ordered triangular pairs summing to `r - 1` at `q^{2r-1}`.
pub fn prop510_law(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(coefficient_series(order, |e| {
        if e % 2 == 0 {
            Coeff::zero()
        } else {
            rat(triangular_pairs(((e + 1) / 2 - 1) as u64) as i64)
        }
    }))
}

/// `sum_{n>=1} q^{2mn} / (1-q^n)`.
pub fn prop511_lhs(m: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    positive("m", m)?;
    Ok(single_sum(order, |n| 2 * m * n, |n| rational_term(&[(1, 2 * m * n)], &[(-1, n)], order)))
}

/// `sum_{n>=1} (-1)^{n-1} q^{(2m-1)n + binom(n+1,2)} / ((1-q^n)(q^{2m};q)_n)`.
pub fn prop511_rhs(m: i64, order: Exponent) -> Result<TruncatedSeries> {
    prop511_rhs_with(m, order, |i| 2 * m + i - 1)
}

/// The same sum with `(q^{2m};q^{2m})_n` in the denominator.
pub fn prop511_rhs_base_q2m(m: i64, order: Exponent) -> Result<TruncatedSeries> {
    prop511_rhs_with(m, order, |i| 2 * m * i)
}

fn prop511_rhs_with(m: i64, order: Exponent, factor: impl Fn(i64) -> Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    positive("m", m)?;
    Ok(single_sum(
        order,
        |n| (2 * m - 1) * n + binom2(n + 1),
        |n| {
            let mut t = rational_term(&[(sign(n - 1), (2 * m - 1) * n + binom2(n + 1))], &[(-1, n)], order);
            for i in 1..=n {
                if factor(i) <= order {
                    t.div_binomial(&rat(-1), factor(i));
                }
            }
            t
        },
    ))
}

fn positive(name: &str, v: i64) -> Result<()> {
    if v < 1 {
        return Err(Error::InvalidParameter {
            name: name.into(),
            value: v,
            reason: "must be positive".into(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Theta and Eisenstein series

/// `theta_3 = sum_{m in Z} q^{m^2}`.
pub fn theta3(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    theta_signed(order, false)
}

/// `theta_4 = sum_{m in Z} (-1)^m q^{m^2}`.
pub fn theta4(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    theta_signed(order, true)
}

fn theta_signed(order: Exponent, alternating: bool) -> Result<TruncatedSeries> {
    let mut terms = vec![(1, 0)];
    let mut m = 1;
    while m * m <= order {
        let c = if alternating { 2 * sign(m) } else { 2 };
        terms.push((c, m * m));
        m += 1;
    }
    Ok(TruncatedSeries::polynomial(terms, order).padded_to_zero())
}

/// `theta_2^4 = 16 q (sum_{n>=0} q^{n(n+1)})^4`; `theta_2` alone has quarter-integer exponents.
pub fn theta2pow4(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(times_q(|o| Ok(psi_q2(o)?.pow(4)), order)?.scale_int(16))
}

/// `1 + scale * sum_n sigma_v(n) q^n`.
fn eisenstein(v: u32, scale: i64, order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(TruncatedSeries::from_fn(0, order, |n| {
        if n == 0 {
            Coeff::one()
        } else {
            BigRational::from_integer(BigInt::from(scale) * BigInt::from(sigma(v, n as u64)))
        }
    }))
}

pub fn e2(order: Exponent) -> Result<TruncatedSeries> {
    eisenstein(1, -24, order)
}

pub fn e4(order: Exponent) -> Result<TruncatedSeries> {
    eisenstein(3, 240, order)
}

pub fn e6(order: Exponent) -> Result<TruncatedSeries> {
    eisenstein(5, -504, order)
}

/// `prod_{j>=1} (1 - q^j)`.
pub fn euler_prod(order: Exponent) -> Result<TruncatedSeries> {
    pochhammer(&Coeff::one(), 1, None, order)
}

/// `(a E2(q) + b E2(q^2) + c E2(q^4)) / d`.
pub fn e2_combination(a: i64, b: i64, c: i64, d: i64, order: Exponent) -> Result<TruncatedSeries> {
    let mut s = e2(order)?.scale_int(a);
    s.add_scaled_assign(&at_power(e2, 2, order)?, &rat(b));
    s.add_scaled_assign(&at_power(e2, 4, order)?, &rat(c));
    Ok(s.scale(&ratio(1, d)))
}

/// `D f / f` for a series with nonzero constant term.
pub fn log_derivative(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.derivative_d().div(f)
}

/// `D theta_2 / theta_2 = 1/4 + D P / P` with `theta_2 = 2 q^{1/4} P(q^2)`, `P = sum q^{n(n+1)/2}`;
/// written in integer exponents as `1/4 + D psi / psi` where `psi = sum q^{n(n+1)}`.
pub fn theta2_log_derivative(order: Exponent) -> Result<TruncatedSeries> {
    let mut s = log_derivative(&psi_q2(order)?)?;
    *s.coeff_mut(0)? += ratio(1, 4);
    Ok(s)
}

/// `(E2 + a theta_2^4 + b theta_3^4) / 24`.
pub fn e2_theta_combination(a: i64, b: i64, order: Exponent) -> Result<TruncatedSeries> {
    let mut s = e2(order)?;
    s.add_scaled_assign(&theta2pow4(order)?, &rat(a));
    s.add_scaled_assign(&theta3(order)?.pow(4), &rat(b));
    Ok(s.scale(&ratio(1, 24)))
}

// ---------------------------------------------------------------------------
// Conjecture series

/// `sum_{m,n>=1} q^{mn 2^a} / ((1+q^{n 2^{a-1}})(1-q^{2m-1}))`.
pub fn kick3(a: i64, order: Exponent) -> Result<TruncatedSeries> {
    positive("a", a)?;
    if a > 20 {
        return Err(Error::InvalidParameter {
            name: "a".into(),
            value: a,
            reason: "must be at most 20".into(),
        });
    }
    let p = 1i64 << a;
    let half = p / 2;
    let fam = Family::new(
        move |m, n| m * n * p,
        move |m, n, order| Ok(rational_term(&[(1, m * n * p)], &[(1, n * half), (-1, 2 * m - 1)], order)),
    );
    bivariate_sum(&fam, order)
}

/// `sum_{m,n>=1} q^{2mn} / ((1+q^{2n-1})(1-q^{2m-1}))`.
pub fn kick4_lhs(order: Exponent) -> Result<TruncatedSeries> {
    let fam = Family::new(
        |m, n| 2 * m * n,
        |m, n, order| Ok(rational_term(&[(1, 2 * m * n)], &[(1, 2 * n - 1), (-1, 2 * m - 1)], order)),
    );
    bivariate_sum(&fam, order)
}

/// `sum_{n>=1} (n-1) q^n / (1+q^{2n-1})`.
pub fn kick4_rhs(order: Exponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    Ok(single_sum(order, |n| n, |n| rational_term(&[(n - 1, n)], &[(1, 2 * n - 1)], order)))
}

impl TruncatedSeries {
    /// Lowers the floor to 0 when it sits above it, so builders hand out
    /// series on the canonical window `[0, order]`.
    pub(crate) fn padded_to_zero(mut self) -> Self {
        if self.floor() > 0 {
            let mut z = TruncatedSeries::zero(self.order());
            z.add_assign(&self);
            self = z;
        }
        self
    }
}

// ---------------------------------------------------------------------------
// Registry

/// Integer parameters passed to parameterised series.
pub type Params = BTreeMap<String, i64>;

/// A parameter accepted by a registry entry.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: i64,
    pub min: i64,
    pub max: i64,
}

type Builder = fn(&Params, Exponent) -> Result<TruncatedSeries>;

/// One named series in the registry.
#[derive(Clone, Copy)]
pub struct SeriesSpec {
    pub name: &'static str,
    pub params: &'static [ParamSpec],
    pub about: &'static str,
    build: Builder,
}

impl SeriesSpec {
    pub fn build(&self, params: &Params, order: Exponent) -> Result<TruncatedSeries> {
        check_order(order)?;
        let resolved = resolve_params(self.params, params)?;
        (self.build)(&resolved, order)
    }
}

/// Fills defaults, rejects unknown keys and out-of-range values.
pub fn resolve_params(specs: &[ParamSpec], given: &Params) -> Result<Params> {
    for key in given.keys() {
        if !specs.iter().any(|s| s.name == key) {
            let accepted: Vec<&str> = specs.iter().map(|s| s.name).collect();
            return Err(Error::MalformedParams(format!(
                "unknown parameter '{key}' (accepted: {})",
                if accepted.is_empty() { "none".to_string() } else { accepted.join(", ") }
            )));
        }
    }
    let mut out = Params::new();
    for s in specs {
        let v = given.get(s.name).copied().unwrap_or(s.default);
        if v < s.min || v > s.max {
            return Err(Error::InvalidParameter {
                name: s.name.into(),
                value: v,
                reason: format!("must lie in [{}, {}]", s.min, s.max),
            });
        }
        out.insert(s.name.to_string(), v);
    }
    Ok(out)
}

const NO_PARAMS: &[ParamSpec] = &[];
const INDEX_N: &[ParamSpec] = &[ParamSpec { name: "n", default: 1, min: 0, max: 60 }];
const INDEX_M: &[ParamSpec] = &[ParamSpec { name: "m", default: 1, min: 1, max: 100 }];
const INDEX_A: &[ParamSpec] = &[ParamSpec { name: "a", default: 1, min: 1, max: 20 }];
const INDEX_MN: &[ParamSpec] = &[
    ParamSpec { name: "m", default: 1, min: 1, max: 1000 },
    ParamSpec { name: "n", default: 1, min: 1, max: 1000 },
];

fn p(params: &Params, key: &str) -> i64 {
    params[key]
}

macro_rules! plain {
    ($name:expr, $about:expr, $f:expr) => {
        SeriesSpec {
            name: $name,
            params: NO_PARAMS,
            about: $about,
            build: |_, order| $f(order),
        }
    };
}

/// Every named series, in display order.
pub static REGISTRY: &[SeriesSpec] = &[
    plain!("f1", "sum k(k-1)q^k/(1-q^k) - 2k q^{2k}/(1-q^k)^2", f1),
    plain!("f2", "sum_{k,l} (k+l) q^{k+l+kl}/((1-q^k)(1-q^l))", f2),
    plain!("f3", "sum_{l>k} 2k q^{k+l}/((1-q^k)(1-q^l))", f3),
    plain!("f1_divisor_form", "sum_n sum_{d|n} (d^2+d-2n) q^n", lem31_rhs),
    plain!("rect_ab", "sum_n (a(n) - b(n)) q^n from rectangular partitions", rect_ab_series),
    plain!("twosize_cd", "sum_n (c(n) + d(n)) q^n from two-part-size partitions", twosize_cd_series),
    plain!("twosize_2c", "sum_n 2c(n) q^n", twosize_2c_series),
    plain!("lem33_lhs", "sum_{l>k} k q^l/((1-q^k)(1-q^l))", lem33_lhs),
    plain!("lem33_rhs", "sum k^2 q^k/(1-q^k) - sum k q^k/(1-q^k)^2", lem33_rhs),
    plain!("quintuple", "brute-force sum of q^{x1x2+x2x3+x3x4+x4x5}", quintuple_sum),
    plain!("liouville_triple", "sum_{m,n} q^{m+n}/((1-q^m)(1-q^n)(1-q^{m+n}))", liouville_triple),
    plain!("identity33_lhs", "sum_{m,n} q^{m+n}/((1-q^n)(1-q^{m+n})^2)", identity33_lhs),
    plain!("identity33_rhs", "sum q^{2i}/(1-q^i)^3", identity33_rhs),
    plain!("intro_mod3_lhs", "sum (q;q)_n (q;q)_{n-1} q^{n^2}/(q;q)_{2n}", intro_mod3_lhs),
    plain!("intro_mod3_rhs", "sum (n/3) q^n/(1-q^n)", intro_mod3_rhs),
    plain!("thm41_lhs", "sum (-1)^{n-1} q^{binom(n+1,2)} (q;q)_n (q;q)_{n-1}/(q;q)_{2n}", thm41_lhs),
    plain!("thm41_rhs", "sum (5/n) q^n/(1-q^n)", thm41_rhs),
    plain!("thm41_sumrep", "the two lattice sums over 5n^2 - j^2", thm41_sumrep),
    plain!("c5_series", "sum c(m) q^m, c(m) = sum_{d|m} (5/d)", lem44_rhs),
    SeriesSpec { name: "wz_sum", params: INDEX_N, about: "sum_{j=1}^{n} F(n,j)", build: |ps, o| wz_sum(p(ps, "n"), o) },
    SeriesSpec { name: "wz_closed", params: INDEX_N, about: "q^{binom(n,2)} {braces}", build: |ps, o| wz_closed(p(ps, "n"), o) },
    SeriesSpec { name: "aa", params: INDEX_N, about: "aa(n)", build: |ps, o| aa(p(ps, "n"), o) },
    SeriesSpec { name: "aa1", params: INDEX_N, about: "aa1(n) = aa(n) + q^{n-1} aa(n-1)", build: |ps, o| aa1(p(ps, "n"), o) },
    SeriesSpec { name: "aa1_closed", params: INDEX_N, about: "parity closed form of aa1(n)", build: |ps, o| aa1_closed(p(ps, "n"), o) },
    SeriesSpec { name: "bailey_A", params: INDEX_N, about: "A_n by inversion", build: |ps, o| bailey_a(p(ps, "n"), o) },
    SeriesSpec { name: "bailey_C", params: INDEX_N, about: "C_n closed form with (-q)^{n(2n-1)/3}", build: |ps, o| bailey_c(p(ps, "n"), o) },
    SeriesSpec { name: "bailey_C_signed", params: INDEX_N, about: "C_n with sign -1 exactly when n = 2 mod 3", build: |ps, o| bailey_c_signed(p(ps, "n"), o) },
    plain!("thm46_lhs", "sum (-1)^n q^{binom(n+1,2)} (q;q)_n/(q;q)_{2n}", thm46_lhs),
    plain!("thm46_rhs", "sum (-1)^m |a(7m)| q^m", thm46_rhs),
    plain!("thm46_sumrep", "sum q^{(3n+2)(7n+5)/2}(1-q^{6n+5}) + q^{n(21n+1)/2}(1-q^{6n+1})", thm46_sumrep),
    plain!("thm46_sumrep_signed", "sum (-1)^n {q^{n(21n+1)/2}(1-q^{6n+1}) - q^{(3n+2)(7n+5)/2}(1-q^{6n+5})}", thm46_sumrep_signed),
    plain!("thm46_bailey", "(1-q) sum (-1)^n q^{binom(n+1,2)} A_n", thm46_bailey),
    plain!("Y", "sum_{m,n} (-q)^{2mn+m}/((1+q^n)(1-q^{2m-1}))", y_series),
    plain!("Ytilde", "Y(q)/(-q)", ytilde),
    SeriesSpec { name: "ytilde_term", params: INDEX_MN, about: "single summand a(m,n) of Ytilde", build: |ps, o| ytilde_term(p(ps, "m"), p(ps, "n"), o) },
    plain!("prop53_rhs", "sum_{k>=2} q^{k-1}/(1+q^{2k-1}) sum_{n<k} q^n/(1+q^n)", prop53_rhs),
    plain!("thm54_lhs", "prod 1/(1+q^j) * sum_k q^k/(1+q^k) sum_{l>k} q^{l-1}/(1+q^{2l-1})", thm54_lhs),
    plain!("thm54_rhs", "partition sum of (-1)^{l1} q^{|l|-i}(l_{2i-1}-l_{2i})(l_1-l_i)", thm54_rhs),
    plain!("lem57_id1_lhs", "sum (-1)^{m-1} q^{2mn}[q^{m-1}+q^{-m}]/((1+q^{2n-1})(1-q^{2m-1}))", lem57_id1_lhs),
    plain!("lem57_id2_lhs", "sum (-1)^{m-1} q^{2mn}[q^{-m}-q^{m-1}]/((1+q^{2n-1})(1-q^{2m-1}))", lem57_id2_lhs),
    plain!("altY_lhs", "q (sum q^{n-1}/(1+q^{2n-1}))^2", alt_y_lhs),
    plain!("altY_rhs", "sum q^{2n-1}/(1+q^{2n-1})^2 + 2 sum q^{4n-2}/(1-q^{4n-2})^2", alt_y_rhs),
    plain!("odd_square_sum", "sum q^{2n-1}/(1+q^{2n-1})^2", odd_square_sum),
    plain!("thm58_lhs", "sum (-q)^{2mn+m-1}/((1+q^{2n-1})(1-q^{2m-1}))", thm58_lhs),
    plain!("thm58_rhs", "sum q^{4n-2}/(1-q^{4n-2})^2", thm58_rhs),
    plain!("cor59_law", "odd-quotient divisor sums at even exponents", cor59_law),
    plain!("prop510_lhs", "sum q^n/(1+q^{2n-1})", prop510_lhs),
    plain!("psi2sq", "q (sum_{n>=0} q^{n(n+1)})^2", psi2sq),
    SeriesSpec { name: "prop511_lhs", params: INDEX_M, about: "sum q^{2mn}/(1-q^n)", build: |ps, o| prop511_lhs(p(ps, "m"), o) },
    SeriesSpec { name: "prop511_rhs", params: INDEX_M, about: "sum (-1)^{n-1} q^{(2m-1)n+binom(n+1,2)}/((1-q^n)(q^{2m};q)_n)", build: |ps, o| prop511_rhs(p(ps, "m"), o) },
    SeriesSpec { name: "prop511_rhs_base_q2m", params: INDEX_M, about: "the same sum over (q^{2m};q^{2m})_n", build: |ps, o| prop511_rhs_base_q2m(p(ps, "m"), o) },
    plain!("E2", "1 - 24 sum sigma_1(n) q^n", e2),
    plain!("E4", "1 + 240 sum sigma_3(n) q^n", e4),
    plain!("E6", "1 - 504 sum sigma_5(n) q^n", e6),
    plain!("theta3", "sum_{m in Z} q^{m^2}", theta3),
    plain!("theta4", "sum_{m in Z} (-1)^m q^{m^2}", theta4),
    plain!("theta2pow4", "theta_2^4 = 16 q (sum q^{n(n+1)})^4", theta2pow4),
    plain!("euler_prod", "prod (1 - q^j)", euler_prod),
    SeriesSpec { name: "kick3", params: INDEX_A, about: "sum q^{mn2^a}/((1+q^{n2^{a-1}})(1-q^{2m-1}))", build: |ps, o| kick3(p(ps, "a"), o) },
    plain!("kick4_lhs", "sum q^{2mn}/((1+q^{2n-1})(1-q^{2m-1}))", kick4_lhs),
    plain!("kick4_rhs", "sum (n-1) q^n/(1+q^{2n-1})", kick4_rhs),
];

pub fn lookup(name: &str) -> Result<&'static SeriesSpec> {
    REGISTRY.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownSeries {
        name: name.to_string(),
        valid: REGISTRY.iter().map(|s| s.name).collect::<Vec<_>>().join(", "),
    })
}

/// Builds a registry series that takes no parameters (defaults otherwise).
pub fn named_series(name: &str, order: Exponent) -> Result<TruncatedSeries> {
    lookup(name)?.build(&Params::new(), order)
}

/// Builds a registry series with explicit parameters.
pub fn build_series(name: &str, params: &Params, order: Exponent) -> Result<TruncatedSeries> {
    lookup(name)?.build(params, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn coeffs_i64(s: &TruncatedSeries, upto: Exponent) -> Vec<i64> {
        (0..=upto).map(|e| s.coeff(e).unwrap().to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1), 1, Some(0), 5).unwrap(), TruncatedSeries::one(5));
        let p2 = pochhammer(&rat(1), 1, Some(2), 5).unwrap();
        assert_eq!(coeffs_i64(&p2, 5), vec![1, -1, -1, 1, 0, 0]);
        let inf = pochhammer(&rat(1), 1, None, 12).unwrap();
        for m in 0..=12 {
            assert_eq!(inf.coeff(m).unwrap(), rat(euler_a(m as u64) as i64));
        }
        assert!(matches!(
            pochhammer(&rat(1), 0, None, 5),
            Err(Error::DivergentProduct { first: 0 })
        ));
    }

    #[test]
    fn pochhammer_with_rational_base_and_zero_start() {
        // (1/2; q)_2 = (1 - 1/2)(1 - q/2)
        let s = pochhammer(&ratio(1, 2), 0, Some(2), 3).unwrap();
        assert_eq!(s.coeff(0).unwrap(), ratio(1, 2));
        assert_eq!(s.coeff(1).unwrap(), ratio(-1, 4));
        assert_eq!(s.coeff(2).unwrap(), rat(0));
    }

    #[test]
    fn lambert_single_examples() {
        let d = lambert_single(&|_| rat(1), 10).unwrap();
        assert_eq!(d.coeff(6).unwrap(), rat(4));
        let chi = lambert_single(&|n| rat(kronecker(5, n as u64) as i64), 10).unwrap();
        assert_eq!(chi.coeff(4).unwrap(), rat(1));
        let id = lambert_single(&|n| rat(n), 10).unwrap();
        assert_eq!(id.coeff(6).unwrap(), rat(12));
    }

    #[test]
    fn bivariate_sum_examples() {
        let fam = Family::new(|m, n| m + n, |m, n, order| Ok(TruncatedSeries::polynomial([(1, m + n)], order)));
        let s = bivariate_sum(&fam, 6).unwrap();
        assert_eq!(s.coeff(2).unwrap(), rat(1));
        assert_eq!(s.coeff(5).unwrap(), rat(4));

        let f = f2(3).unwrap();
        assert_eq!(coeffs_i64(&f, 3), vec![0, 0, 0, 2]);

        assert!(bivariate_sum(&fam, 0).unwrap().is_zero());
    }

    #[test]
    fn bivariate_sum_detects_contract_violation() {
        let fam = Family::new(|m, n| m + n, |m, n, order| Ok(TruncatedSeries::polynomial([(1, m + n - 1)], order)));
        assert!(matches!(
            bivariate_sum(&fam, 5),
            Err(Error::ContractViolation { m: 1, n: 1, declared: 2, actual: 1 })
        ));
    }

    #[test]
    fn bivariate_sum_rejects_non_monotone_bounds() {
        let fam = Family::new(|_, _| 1, |_, _, order| Ok(TruncatedSeries::zero(order)));
        assert!(matches!(bivariate_sum(&fam, 5), Err(Error::ContractViolation { .. })));
    }

    #[test]
    fn named_series_examples() {
        let yt = named_series("Ytilde", 8).unwrap();
        assert_eq!(yt.coeff(2).unwrap(), rat(1));
        assert_eq!(yt.coeff(3).unwrap(), rat(0));
        assert_eq!(yt.coeff(5).unwrap(), rat(0));

        let e = named_series("E2", 4).unwrap();
        assert_eq!(coeffs_i64(&e, 4), vec![1, -24, -72, -96, -168]);

        let t = named_series("theta3", 4).unwrap();
        assert_eq!(coeffs_i64(&t, 4), vec![1, 2, 0, 0, 2]);

        assert_eq!(named_series("f1", 6).unwrap().coeff(6).unwrap(), rat(14));

        assert!(matches!(named_series("nope", 4), Err(Error::UnknownSeries { .. })));
    }

    #[test]
    fn ytilde_low_terms_by_hand() {
        // a(1,1) = q^2/((1+q)(1-q)) = q^2/(1-q^2): q^2 + q^4 + ...
        // a(1,2) = q^4/((1+q^2)(1-q)) and a(2,1) = -q^5/((1+q)(1-q^3))
        let a11 = ytilde_term(1, 1, 6).unwrap();
        assert_eq!(coeffs_i64(&a11, 6), vec![0, 0, 1, 0, 1, 0, 1]);
        let a12 = ytilde_term(1, 2, 6).unwrap();
        assert_eq!(coeffs_i64(&a12, 6), vec![0, 0, 0, 0, 1, 1, 0]);
        let a21 = ytilde_term(2, 1, 6).unwrap();
        assert_eq!(coeffs_i64(&a21, 6), vec![0, 0, 0, 0, 0, -1, 1]);
    }

    #[test]
    fn aa_examples() {
        assert_eq!(aa(1, 5).unwrap(), TruncatedSeries::one(5));
        assert_eq!(coeffs_i64(&aa(2, 5).unwrap(), 5), vec![0, -2, -1, 0, 0, 0]);
        assert_eq!(aa1(1, 5).unwrap(), TruncatedSeries::one(5));
        assert_eq!(aa1_closed(1, 5).unwrap(), TruncatedSeries::one(5));
        assert!(aa(0, 5).unwrap().is_zero());
    }

    #[test]
    fn wz_examples() {
        assert_eq!(wz_f(1, 1, 10).unwrap(), TruncatedSeries::one(10));
        assert!(wz_f(3, 4, 10).unwrap().is_zero());
        assert!(wz_f(3, 0, 10).unwrap().is_zero());
        // G(n, 0) = -q^{binom(n+3,2)} (1 + q^{n+2})
        let g = wz_g(1, 0, 20).unwrap();
        let expected = TruncatedSeries::polynomial([(-1, 6), (-1, 9)], 20).padded_to_zero();
        assert_eq!(g, expected);
        assert!(wz_g(1, 4, 20).unwrap().is_zero());
    }

    #[test]
    fn bailey_examples() {
        assert!(bailey_c(1, 20).unwrap().is_zero());
        let c2 = bailey_c(2, 20).unwrap();
        assert_eq!(coeffs_i64(&c2, 8), vec![0, 0, 1, 1, 1, 1, 1, 0, 0]);
        assert_eq!(bailey_a(0, 10).unwrap(), TruncatedSeries::one(10));
    }

    #[test]
    fn theta_pythagoras_low_order() {
        let lhs = theta3(60).unwrap().pow(4);
        let mut rhs = theta4(60).unwrap().pow(4);
        rhs.add_assign(&theta2pow4(60).unwrap());
        assert_eq!(lhs.equals_up_to(&rhs, 60).unwrap(), None);
    }

    #[test]
    fn registry_names_are_unique_and_buildable() {
        let mut names: Vec<&str> = REGISTRY.iter().map(|s| s.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), REGISTRY.len());
        for spec in REGISTRY {
            let s = spec.build(&Params::new(), 12).unwrap();
            assert_eq!(s.order(), 12, "{}", spec.name);
            assert!(s.floor() >= 0, "{}", spec.name);
        }
    }

    #[test]
    fn registry_rejects_unknown_and_out_of_range_params() {
        let mut ps = Params::new();
        ps.insert("b".into(), 1);
        assert!(matches!(build_series("kick3", &ps, 10), Err(Error::MalformedParams(_))));
        let mut ps = Params::new();
        ps.insert("a".into(), 0);
        assert!(matches!(build_series("kick3", &ps, 10), Err(Error::InvalidParameter { .. })));
        assert!(matches!(named_series("f1", -1), Err(Error::InvalidOrder { .. })));
        assert!(matches!(named_series("f1", ENGINE_ORDER_LIMIT + 1), Err(Error::EngineLimit { .. })));
    }
}
