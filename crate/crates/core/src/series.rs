//! Truncated formal power series in one variable `q` over exact rationals.
//!
//! A [`TruncatedSeries`] stores every coefficient in the window
//! `[floor, order]`. Coefficients below `floor` are zero, coefficients above
//! `order` are unknown. Every operation propagates the trusted order
//! pessimistically, and asking for a coefficient past it is an error rather
//! than a silent zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A power of `q`.
pub type Exponent = i64;

/// Exact coefficient type.
pub type Coeff = BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the rational `p/q`. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Coeff {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Decimal string form of a coefficient: `"p/q"`, or `"p"` when `q == 1`.
pub fn format_coeff(c: &Coeff) -> String {
    c.to_string()
}

/// Parses the decimal string form produced by [`format_coeff`].
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::MalformedSeries(format!("bad coefficient '{s}': {e}")))
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    floor: Exponent,
    order: Exponent,
    coeffs: Vec<Coeff>,
}

impl TruncatedSeries {
    /// The zero series, trusted on `[0, order]`.
    pub fn zero(order: Exponent) -> Self {
        Self::zero_window(0.min(order + 1), order)
    }

    /// The zero series on an explicit window. `order < floor` gives the empty series.
    pub fn zero_window(floor: Exponent, order: Exponent) -> Self {
        let order = order.max(floor - 1);
        let len = (order - floor + 1) as usize;
        TruncatedSeries {
            floor,
            order,
            coeffs: vec![Coeff::zero(); len],
        }
    }

    pub fn one(order: Exponent) -> Self {
        let mut s = Self::zero(order);
        if order >= 0 {
            s.coeffs[(0 - s.floor) as usize] = Coeff::one();
        }
        s
    }

    /// `c * q^e`, trusted up to `order`.
    pub fn monomial(c: Coeff, e: Exponent, order: Exponent) -> Result<Self> {
        if order < e {
            return Err(Error::InvalidOrder { order, min: e });
        }
        let mut coeffs = vec![Coeff::zero(); (order - e + 1) as usize];
        coeffs[0] = c;
        Ok(TruncatedSeries {
            floor: e,
            order,
            coeffs,
        })
    }

    /// Series whose coefficients are listed starting at `floor`.
    pub fn from_coeffs(floor: Exponent, coeffs: Vec<Coeff>) -> Self {
        let order = floor + coeffs.len() as Exponent - 1;
        TruncatedSeries {
            floor,
            order,
            coeffs,
        }
    }

    pub fn from_integers(floor: Exponent, coeffs: &[i64]) -> Self {
        Self::from_coeffs(floor, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Series with coefficient `f(e)` for every `e` in `[floor, order]`.
    pub fn from_fn(floor: Exponent, order: Exponent, mut f: impl FnMut(Exponent) -> Coeff) -> Self {
        let order = order.max(floor - 1);
        Self::from_coeffs(floor, (floor..=order).map(&mut f).collect())
    }

    /// A finite sum of integer monomials `c * q^e`, truncated at `order`.
    ///
    /// Terms beyond `order` are dropped; that is exact truncation, not an
    /// approximation. The floor is the smallest kept exponent, or 0 when no
    /// term survives.
    pub fn polynomial<I>(terms: I, order: Exponent) -> Self
    where
        I: IntoIterator<Item = (i64, Exponent)>,
    {
        let terms: Vec<(i64, Exponent)> = terms.into_iter().filter(|t| t.1 <= order).collect();
        let floor = terms.iter().map(|t| t.1).min().unwrap_or(0);
        let mut s = Self::zero_window(floor.min(order + 1), order);
        for (c, e) in terms {
            let idx = (e - s.floor) as usize;
            s.coeffs[idx] += rat(c);
        }
        s
    }

    pub fn floor(&self) -> Exponent {
        self.floor
    }

    pub fn order(&self) -> Exponent {
        self.order
    }

    /// Coefficients on `[floor, order]`.
    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact coefficient of `q^e`; zero below the floor, an error above the order.
    pub fn coeff(&self, e: Exponent) -> Result<Coeff> {
        self.coeff_ref(e).map(|c| c.cloned().unwrap_or_else(Coeff::zero))
    }

    fn coeff_ref(&self, e: Exponent) -> Result<Option<&Coeff>> {
        if e > self.order {
            return Err(Error::UntrustedCoefficient {
                exponent: e,
                order: self.order,
            });
        }
        if e < self.floor {
            return Ok(None);
        }
        Ok(Some(&self.coeffs[(e - self.floor) as usize]))
    }

    /// Mutable access to a represented coefficient, for building series in place.
    pub fn coeff_mut(&mut self, e: Exponent) -> Result<&mut Coeff> {
        if e > self.order || e < self.floor {
            return Err(Error::UntrustedCoefficient {
                exponent: e,
                order: self.order,
            });
        }
        Ok(&mut self.coeffs[(e - self.floor) as usize])
    }

    /// Iterates `(exponent, coefficient)` over the trusted window.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Coeff)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.floor + i as Exponent, c))
    }

    /// Exponent of the lowest nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<Exponent> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.floor + i as Exponent)
    }

    /// True when every trusted coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every trusted coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Drops knowledge above `order`.
    pub fn truncate(&self, order: Exponent) -> Result<Self> {
        if order > self.order {
            return Err(Error::InvalidOrder {
                order,
                min: self.order,
            });
        }
        let mut s = self.clone();
        s.truncate_in_place(order);
        Ok(s)
    }

    fn truncate_in_place(&mut self, order: Exponent) {
        if order >= self.order {
            return;
        }
        if order < self.floor - 1 {
            self.floor = order + 1;
            self.coeffs.clear();
        } else {
            self.coeffs.truncate((order - self.floor + 1) as usize);
        }
        self.order = order;
    }

    /// Extends the represented window down to `floor` with zeros.
    fn lower_floor(&mut self, floor: Exponent) {
        if floor >= self.floor {
            return;
        }
        let pad = (self.floor - floor) as usize;
        let mut coeffs = vec![Coeff::zero(); pad];
        coeffs.append(&mut self.coeffs);
        self.coeffs = coeffs;
        self.floor = floor;
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: Exponent) -> Self {
        TruncatedSeries {
            floor: self.floor + s,
            order: self.order + s,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        TruncatedSeries {
            floor: self.floor,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    /// In-place `self += c * other`, with the min rule on order and floor.
    pub fn add_scaled_assign(&mut self, other: &Self, c: &Coeff) {
        let order = self.order.min(other.order);
        self.truncate_in_place(order);
        self.lower_floor(other.floor);
        let unit = c.is_one();
        let neg_unit = (-c).is_one();
        for e in other.floor..=order {
            let x = &other.coeffs[(e - other.floor) as usize];
            if x.is_zero() {
                continue;
            }
            let slot = &mut self.coeffs[(e - self.floor) as usize];
            if unit {
                *slot += x;
            } else if neg_unit {
                *slot -= x;
            } else {
                *slot += x * c;
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled_assign(other, &Coeff::one());
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.add_scaled_assign(other, &-Coeff::one());
    }

    /// Multiplies in place by the binomial `1 + c q^k`, `k >= 1`.
    pub fn mul_binomial(&mut self, c: &Coeff, k: Exponent) {
        assert!(k >= 1, "binomial exponent must be positive");
        let unit = c.is_one();
        let neg_unit = (-c).is_one();
        let len = self.coeffs.len();
        let k = k as usize;
        for i in (k..len).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let src = &lo[i - k];
            if src.is_zero() {
                continue;
            }
            if unit {
                hi[0] += src;
            } else if neg_unit {
                hi[0] -= src;
            } else {
                hi[0] += src * c;
            }
        }
    }

    /// Divides in place by the binomial `1 + c q^k`, `k >= 1`.
    pub fn div_binomial(&mut self, c: &Coeff, k: Exponent) {
        assert!(k >= 1, "binomial exponent must be positive");
        let unit = c.is_one();
        let neg_unit = (-c).is_one();
        let len = self.coeffs.len();
        let k = k as usize;
        for i in k..len {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let src = &lo[i - k];
            if src.is_zero() {
                continue;
            }
            if unit {
                hi[0] -= src;
            } else if neg_unit {
                hi[0] += src;
            } else {
                hi[0] -= src * c;
            }
        }
    }

    /// `1 / (1 - q^k)` truncated at `order`.
    pub fn geometric(k: Exponent, order: Exponent) -> Result<Self> {
        Self::geometric_signed(k, order, false)
    }

    /// `1 / (1 + q^k)` truncated at `order`.
    pub fn alt_geometric(k: Exponent, order: Exponent) -> Result<Self> {
        Self::geometric_signed(k, order, true)
    }

    fn geometric_signed(k: Exponent, order: Exponent, alternating: bool) -> Result<Self> {
        if k <= 0 {
            return Err(Error::InvalidParameter {
                name: "k".into(),
                value: k,
                reason: "geometric step must be positive".into(),
            });
        }
        let mut s = Self::zero(order);
        if order < 0 {
            return Ok(s);
        }
        let mut sign = 1;
        let mut e = 0;
        while e <= order {
            s.coeffs[e as usize] = rat(sign);
            if alternating {
                sign = -sign;
            }
            e += k;
        }
        Ok(s)
    }

    /// The substitution `q -> q^k`.
    pub fn substitute_power(&self, k: Exponent) -> Result<Self> {
        if k <= 0 {
            return Err(Error::InvalidParameter {
                name: "k".into(),
                value: k,
                reason: "substitution power must be positive".into(),
            });
        }
        let floor = self.floor * k;
        if self.is_empty() {
            return Ok(Self::zero_window(floor, floor - 1));
        }
        let order = self.order * k;
        let mut s = Self::zero_window(floor, order);
        for (i, c) in self.coeffs.iter().enumerate() {
            s.coeffs[i * k as usize] = c.clone();
        }
        Ok(s)
    }

    /// The operator `q d/dq`.
    pub fn derivative_d(&self) -> Self {
        TruncatedSeries {
            floor: self.floor,
            order: self.order,
            coeffs: self
                .terms()
                .map(|(e, c)| if e == 0 { Coeff::zero() } else { c * rat(e) })
                .collect(),
        }
    }

    /// Cauchy product with the tightest trustworthy order.
    pub fn mul(&self, other: &Self) -> Self {
        let floor = self.floor + other.floor;
        let order = (self.order + other.floor).min(other.order + self.floor);
        if order < floor {
            return Self::zero_window(floor, floor - 1);
        }
        let len = (order - floor + 1) as usize;
        let a = &self.coeffs[..self.coeffs.len().min(len)];
        let b = &other.coeffs[..other.coeffs.len().min(len)];
        TruncatedSeries {
            floor,
            order,
            coeffs: convolve(a, b, len),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap_or_else(|| Self::one(self.order - self.floor.max(0)))
    }

    /// Multiplicative inverse of a unit times `q^v`.
    ///
    /// The result has floor `-v` and order `self.order - 2v`.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NonInvertible { order: self.order })?;
        let u = &self.coeffs[(v - self.floor) as usize..];
        let n = u.len();
        let lead_inv = u[0].recip();
        let nonzero: Vec<(usize, &Coeff)> = u
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut inv: Vec<Coeff> = Vec::with_capacity(n);
        inv.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = Coeff::zero();
            for &(i, c) in &nonzero {
                if i > k {
                    break;
                }
                let b = &inv[k - i];
                if !b.is_zero() {
                    acc += c * b;
                }
            }
            inv.push(-(acc * &lead_inv));
        }
        Ok(TruncatedSeries {
            floor: -v,
            order: self.order - 2 * v,
            coeffs: inv,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Compares against `other` on every exponent up to `m`.
    ///
    /// Returns the smallest exponent `<= m` where the coefficients differ, or
    /// `None` when they agree. `m` must not exceed either trusted order.
    pub fn equals_up_to(&self, other: &Self, m: Exponent) -> Result<Option<Exponent>> {
        let trusted = self.order.min(other.order);
        if m > trusted {
            return Err(Error::InvalidComparison {
                requested: m,
                trusted,
            });
        }
        let start = self.floor.min(other.floor);
        for e in start..=m {
            let a = self.coeff_ref(e)?;
            let b = other.coeff_ref(e)?;
            let same = match (a, b) {
                (None, None) => true,
                (Some(x), None) | (None, Some(x)) => x.is_zero(),
                (Some(x), Some(y)) => x == y,
            };
            if !same {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }
}

fn lcm_of_denominators(cs: &[Coeff]) -> BigInt {
    cs.iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn scaled_numerators(cs: &[Coeff], denom: &BigInt) -> Vec<BigInt> {
    cs.iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else {
                c.numer() * (denom / c.denom())
            }
        })
        .collect()
}

fn max_bits(xs: &[BigInt]) -> u64 {
    xs.iter().map(|x| x.bits()).max().unwrap_or(0)
}

/// Truncated Cauchy product of two coefficient windows, both starting at index 0.
///
/// Both inputs are brought to a common denominator so the inner loop runs on
/// integers; a 128-bit path is used whenever the product sums provably fit.
fn convolve(a: &[Coeff], b: &[Coeff], len: usize) -> Vec<Coeff> {
    let da = lcm_of_denominators(a);
    let db = lcm_of_denominators(b);
    let na = scaled_numerators(a, &da);
    let nb = scaled_numerators(b, &db);
    let denom = da * db;
    let len_bits = 64 - (len as u64).leading_zeros() as u64;
    let raw: Vec<BigInt> = if max_bits(&na) + max_bits(&nb) + len_bits < 126 {
        let wa: Vec<i128> = na.iter().map(|x| x.to_i128().unwrap()).collect();
        let wb: Vec<i128> = nb.iter().map(|x| x.to_i128().unwrap()).collect();
        let mut out = vec![0i128; len];
        for (i, &x) in wa.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let lim = (len - i).min(wb.len());
            for (slot, &y) in out[i..i + lim].iter_mut().zip(&wb[..lim]) {
                *slot += x * y;
            }
        }
        out.into_iter().map(BigInt::from).collect()
    } else {
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let lim = (len - i).min(nb.len());
            for (slot, y) in out[i..i + lim].iter_mut().zip(&nb[..lim]) {
                if !y.is_zero() {
                    *slot += x * y;
                }
            }
        }
        out
    };
    raw.into_iter()
        .map(|n| BigRational::new(n, denom.clone()))
        .collect()
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            floor: self.floor,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(mut self) -> TruncatedSeries {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || e == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}q", if show_mag { "*" } else { "" })?,
                _ => write!(f, "{}q^{e}", if show_mag { "*" } else { "" })?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{}..={}]({self})", self.floor, self.order)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    floor: Exponent,
    order: Exponent,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            floor: self.floor,
            order: self.order,
            coeffs: self.coeffs.iter().map(format_coeff).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.order - raw.floor + 1 != raw.coeffs.len() as Exponent {
            return Err(D::Error::custom(format!(
                "window [{}, {}] does not match {} coefficients",
                raw.floor,
                raw.order,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_coeff(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(TruncatedSeries {
            floor: raw.floor,
            order: raw.order,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn monomial_examples() {
        let one = TruncatedSeries::monomial(rat(1), 0, 5).unwrap();
        assert_eq!(ints(&one), vec![1, 0, 0, 0, 0, 0]);
        let m = TruncatedSeries::monomial(rat(-2), 1, 3).unwrap();
        assert_eq!(m.coeff(1).unwrap(), rat(-2));
        assert_eq!(m.coeff(0).unwrap(), rat(0));
        assert_eq!(m.coeff(3).unwrap(), rat(0));
        assert!(matches!(
            TruncatedSeries::monomial(rat(1), 2, 1),
            Err(Error::InvalidOrder { .. })
        ));
    }

    #[test]
    fn addition_and_order_propagation() {
        let a = TruncatedSeries::from_integers(0, &[1, 1]);
        let b = TruncatedSeries::from_integers(0, &[1, -1]);
        let s = &a + &b;
        assert_eq!(ints(&s), vec![2, 0]);

        let f = TruncatedSeries::from_integers(0, &[3, -1, 4, 1, -5]);
        assert!((&f + &(-&f)).is_zero());

        let p = TruncatedSeries::zero(5);
        let q = TruncatedSeries::zero(3);
        assert_eq!((&p + &q).order(), 3);
        assert_eq!((&p - &q).order(), 3);
    }

    #[test]
    fn add_takes_min_floor() {
        let a = TruncatedSeries::monomial(rat(1), 3, 6).unwrap();
        let b = TruncatedSeries::monomial(rat(2), -1, 8).unwrap();
        let s = &a + &b;
        assert_eq!(s.floor(), -1);
        assert_eq!(s.order(), 6);
        assert_eq!(s.coeff(-1).unwrap(), rat(2));
        assert_eq!(s.coeff(3).unwrap(), rat(1));
    }

    #[test]
    fn multiplication_examples() {
        let a = TruncatedSeries::from_integers(0, &[1, -1, 0, 0]);
        let b = TruncatedSeries::from_integers(0, &[1, 1, 1, 1]);
        let p = a.mul(&b);
        assert_eq!(p.order(), 3);
        assert_eq!(ints(&p), vec![1, 0, 0, 0]);

        let q2 = TruncatedSeries::monomial(rat(1), 2, 10).unwrap();
        let q3 = TruncatedSeries::monomial(rat(1), 3, 10).unwrap();
        let q5 = q2.mul(&q3);
        assert_eq!(q5.floor(), 5);
        assert_eq!(q5.order(), 12);
        assert_eq!(q5.valuation(), Some(5));

        let f = TruncatedSeries::from_integers(0, &[1, -1, -1, 1]);
        assert_eq!(f.mul(&TruncatedSeries::one(3)), f);
    }

    #[test]
    fn multiplication_order_rule() {
        let a = TruncatedSeries::zero_window(1, 7);
        let b = TruncatedSeries::zero_window(2, 5);
        let p = a.mul(&b);
        assert_eq!(p.floor(), 3);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn rational_multiplication_uses_exact_denominators() {
        let a = TruncatedSeries::from_coeffs(0, vec![ratio(1, 2), ratio(1, 3)]);
        let b = TruncatedSeries::from_coeffs(0, vec![ratio(2, 5), ratio(-3, 7)]);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0).unwrap(), ratio(1, 5));
        assert_eq!(p.coeff(1).unwrap(), ratio(-3, 14) + ratio(2, 15));
    }

    #[test]
    fn wide_coefficients_take_bigint_path() {
        let big = BigRational::from_integer(BigInt::from(1u8) << 100);
        let a = TruncatedSeries::from_coeffs(0, vec![big.clone(), big.clone()]);
        let p = a.mul(&a);
        let sq = &big * &big;
        assert_eq!(p.coeff(0).unwrap(), sq);
        assert_eq!(p.coeff(1).unwrap(), &sq + &sq);
    }

    #[test]
    fn inverse_examples() {
        let a = TruncatedSeries::from_integers(0, &[1, -1, 0, 0, 0]);
        assert_eq!(ints(&a.inverse().unwrap()), vec![1, 1, 1, 1, 1]);
        let b = TruncatedSeries::from_integers(0, &[1, 1, 0, 0]);
        assert_eq!(ints(&b.inverse().unwrap()), vec![1, -1, 1, -1]);
        assert!(matches!(
            TruncatedSeries::zero(4).inverse(),
            Err(Error::NonInvertible { .. })
        ));
    }

    #[test]
    fn inverse_of_shifted_unit_has_negative_floor() {
        // q^2 (1 - q) to order 6
        let a = TruncatedSeries::from_integers(0, &[0, 0, 1, -1, 0, 0, 0]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.floor(), -2);
        assert_eq!(inv.order(), 2);
        let prod = a.mul(&inv);
        let one = TruncatedSeries::one(prod.order());
        assert_eq!(prod.equals_up_to(&one, prod.order()).unwrap(), None);
    }

    #[test]
    fn geometric_examples() {
        let g = TruncatedSeries::geometric(2, 5).unwrap();
        assert_eq!(ints(&g), vec![1, 0, 1, 0, 1, 0]);
        let h = TruncatedSeries::alt_geometric(1, 3).unwrap();
        assert_eq!(ints(&h), vec![1, -1, 1, -1]);
        for k in 1..6 {
            let mut prod = TruncatedSeries::geometric(k, 20).unwrap();
            prod.mul_binomial(&rat(-1), k);
            assert_eq!(prod, TruncatedSeries::one(20));
        }
        assert!(TruncatedSeries::geometric(0, 5).is_err());
        assert!(TruncatedSeries::alt_geometric(-1, 5).is_err());
    }

    #[test]
    fn binomial_division_matches_geometric() {
        let mut s = TruncatedSeries::one(12);
        s.div_binomial(&rat(1), 3);
        s.div_binomial(&rat(-1), 2);
        let expected = TruncatedSeries::alt_geometric(3, 12)
            .unwrap()
            .mul(&TruncatedSeries::geometric(2, 12).unwrap());
        assert_eq!(s, expected);
    }

    #[test]
    fn substitute_power_examples() {
        let a = TruncatedSeries::from_integers(0, &[1, 1]);
        let b = a.substitute_power(2).unwrap();
        assert_eq!(ints(&b), vec![1, 0, 1]);
        assert_eq!(a.substitute_power(1).unwrap(), a);
        let c = TruncatedSeries::from_integers(0, &[0, 1, 0, 1]);
        let d = c.substitute_power(3).unwrap();
        assert_eq!(d.order(), 9);
        assert_eq!(d.valuation(), Some(3));
        assert_eq!(d.coeff(9).unwrap(), rat(1));
        assert_eq!(d.coeff(6).unwrap(), rat(0));
    }

    #[test]
    fn derivative_examples() {
        let q3 = TruncatedSeries::monomial(rat(1), 3, 5).unwrap();
        assert_eq!(q3.derivative_d().coeff(3).unwrap(), rat(3));
        assert!(TruncatedSeries::one(4).derivative_d().is_zero());
    }

    #[test]
    fn coefficient_access() {
        let g = TruncatedSeries::geometric(2, 6).unwrap();
        assert_eq!(g.coeff(4).unwrap(), rat(1));
        assert_eq!(g.coeff(3).unwrap(), rat(0));
        assert_eq!(g.coeff(-3).unwrap(), rat(0));
        assert!(matches!(
            g.coeff(7),
            Err(Error::UntrustedCoefficient { exponent: 7, order: 6 })
        ));
    }

    #[test]
    fn equals_up_to_reports_first_mismatch() {
        let a = TruncatedSeries::from_integers(0, &[1, 2, 3, 4, 5]);
        let b = TruncatedSeries::from_integers(0, &[1, 2, 3, 9, 5, 6]);
        assert_eq!(a.equals_up_to(&b, 2).unwrap(), None);
        assert_eq!(a.equals_up_to(&b, 4).unwrap(), Some(3));
        assert!(matches!(
            a.equals_up_to(&b, 5),
            Err(Error::InvalidComparison { requested: 5, trusted: 4 })
        ));
    }

    #[test]
    fn json_round_trip_and_format() {
        let s = TruncatedSeries::from_coeffs(-1, vec![ratio(1, 2), rat(0), rat(-3)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"floor":-1,"order":1,"coeffs":["1/2","0","-3"]}"#);
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"floor":0,"order":3,"coeffs":["1"]}"#;
        assert!(serde_json::from_str::<TruncatedSeries>(bad).is_err());
    }

    #[test]
    fn display_is_readable() {
        let s = TruncatedSeries::from_integers(0, &[1, -2, 0, 3]);
        assert_eq!(s.to_string(), "1 - 2*q + 3*q^3 + O(q^4)");
    }
}
