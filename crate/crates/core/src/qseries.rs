//! Truncated formal power series in `q` with exact integer coefficients.
//!
//! Every generating function in the crate is a [`TruncSeries`] of some fixed
//! truncation order `N`: the coefficients of `q^0..=q^N` are stored and nothing
//! beyond `q^N` is ever represented. Binary operations require both operands
//! to share the same order and never resize implicitly.
//!
//! Multiplication and inversion are schoolbook, but they walk only the nonzero
//! coefficients of the sparser operand. Eta-type products such as `(q;q)_inf`
//! vanish off the generalized pentagonal numbers, so most of the products
//! built in this crate are `sparse x dense`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sign `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn pow(self, e: u64) -> Sign {
        if self == Sign::Minus && e % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Power series `sum_{i=0}^{N} c_i q^i` modulo `q^{N+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c * q^k`, or the zero series when `k > order`.
    pub fn monomial(c: BigInt, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series whose order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(TruncSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be `+1` or `-1`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        let a0_sign = if a0.is_one() {
            Sign::Plus
        } else if (-a0).is_one() {
            Sign::Minus
        } else {
            return Err(Error::InvalidInverse);
        };
        let order = self.order();
        let terms: Vec<(usize, &BigInt)> = self.nonzero_terms().skip(1).collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        out.push(a0.clone());
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for &(i, ai) in &terms {
                if i > n {
                    break;
                }
                add_product(&mut acc, ai, &out[n - i]);
            }
            // 1/a0 == a0 for a unit, so c_n = -a0 * acc
            if a0_sign == Sign::Plus {
                acc = -acc;
            }
            out.push(acc);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `self^e`; negative exponents invert first. Binary powering.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = TruncSeries::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = series_mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = series_mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// The substitution `q -> q^k`, truncated back to the same order.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitute_power needs k >= 1");
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(k) {
                Some(idx) if idx <= order => out.coeffs[idx] = c.clone(),
                _ => break,
            }
        }
        out
    }

    /// The substitution `q -> -q`.
    pub fn alternate(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Least nonnegative residues modulo `m`.
    pub fn reduce_mod(&self, m: u64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        let m = BigInt::from(m);
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.mod_floor(&m)).collect(),
        }
    }

    /// Coefficientwise division by two; fails on the first odd coefficient.
    pub fn halve_exact(&self) -> Result<Self> {
        let two = BigInt::from(2);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (index, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(&two);
            if !r.is_zero() {
                return Err(Error::InexactHalving { index });
            }
            out.push(q);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Multiplies in place by `1 + c*q^k`. With `k == 0` this scales by `1 + c`.
    pub fn mul_binomial(&mut self, c: i64, k: usize) {
        let order = self.order();
        if k == 0 {
            let f = BigInt::from(1 + c);
            for x in &mut self.coeffs {
                *x *= &f;
            }
            return;
        }
        if k > order || c == 0 {
            return;
        }
        let c = BigInt::from(c);
        for i in (k..=order).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            if !lo[i - k].is_zero() {
                add_product(&mut hi[0], &c, &lo[i - k]);
            }
        }
    }
}

/// `acc += a * b` with the common unit cases kept allocation-free.
fn add_product(acc: &mut BigInt, a: &BigInt, b: &BigInt) {
    if a.is_one() {
        *acc += b;
    } else if a.is_negative() && a.magnitude().is_one() {
        *acc -= b;
    } else {
        *acc += a * b;
    }
}

fn check_orders(a: &TruncSeries, b: &TruncSeries) -> Result<usize> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(a.order())
}

pub fn series_add(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    check_orders(a, b)?;
    Ok(TruncSeries {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
    })
}

pub fn series_sub(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    check_orders(a, b)?;
    Ok(TruncSeries {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
    })
}

/// Cauchy product truncated at the common order.
pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    let order = check_orders(a, b)?;
    let (sparse, dense) = if a.nonzero_count() <= b.nonzero_count() {
        (a, b)
    } else {
        (b, a)
    };
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, ai) in sparse.nonzero_terms() {
        for (j, bj) in dense.coeffs[..=order - i].iter().enumerate() {
            if !bj.is_zero() {
                add_product(&mut out[i + j], ai, bj);
            }
        }
    }
    Ok(TruncSeries { coeffs: out })
}

/// Truncation of `prod_{k>=0} (1 - sign * q^{offset + k*step})`.
///
/// `Sign::Plus` gives `(q^offset; q^step)_inf`, `Sign::Minus` gives
/// `(-q^offset; q^step)_inf`. Only factors with exponent `<= order` matter.
pub fn pochhammer(sign: Sign, offset: usize, step: usize, order: usize) -> Result<TruncSeries> {
    if offset == 0 || step == 0 {
        return Err(Error::InvalidArgument(format!(
            "pochhammer needs offset >= 1 and step >= 1, got offset {offset}, step {step}"
        )));
    }
    let exponents = || (offset..=order).step_by(step);
    if let Some(small) = pochhammer_i128(sign, exponents(), order) {
        return TruncSeries::from_coeffs(small.into_iter().map(BigInt::from).collect());
    }
    let mut s = TruncSeries::one(order);
    for k in exponents() {
        s.mul_binomial(-sign.value(), k);
    }
    Ok(s)
}

/// Fixed-width evaluation of the product; `None` on overflow.
fn pochhammer_i128(
    sign: Sign,
    exponents: impl Iterator<Item = usize>,
    order: usize,
) -> Option<Vec<i128>> {
    let mut a = vec![0i128; order + 1];
    a[0] = 1;
    // highest index that can be nonzero so far
    let mut top = 0usize;
    for k in exponents {
        let new_top = (top + k).min(order);
        for i in (k..=new_top).rev() {
            let prev = a[i - k];
            if prev != 0 {
                a[i] = match sign {
                    Sign::Plus => a[i].checked_sub(prev)?,
                    Sign::Minus => a[i].checked_add(prev)?,
                };
            }
        }
        top = new_top;
    }
    Some(a)
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.nonzero_terms() {
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// Wire form: `{"order": N, "coeffs": ["1", "-1", ...]}` with decimal strings.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl From<TruncSeries> for SeriesRepr {
    fn from(s: TruncSeries) -> Self {
        SeriesRepr {
            order: s.order(),
            coeffs: s.coeffs.iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for TruncSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.coeffs.len() != r.order + 1 {
            return Err(Error::InvalidArgument(format!(
                "order {} needs {} coefficients, got {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            )));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| Error::InvalidArgument(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TruncSeries::from_coeffs(coeffs)
    }
}
