//! Spin character counts of the double covers, both by enumeration and by
//! generating function.
//!
//! Counting rules, for a bar partition `lambda` of `n`:
//! - positive (`n - l(lambda)` even) labels one spin character of the
//!   symmetric cover and splits into two for the alternating cover;
//! - negative labels an associate pair for the symmetric cover, which
//!   restricts to a single character of the alternating cover.
//!
//! The same rule applied to `p`-bar-cores counts the `p`-defect zero spin
//! characters.

use std::collections::BTreeMap;
use std::io;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{check_odd_prime, valuation};
use crate::barcomb::{bar_lengths, bar_sign, enumerate_p_bar_cores, BarPartition, SignedBarClass};
use crate::error::{Error, Result};
use crate::qseries::{pochhammer, series_add, series_mul, series_sub, Sign, TruncSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    SymmetricCover,
    AlternatingCover,
}

impl Group {
    /// Characters contributed by a positive and by a negative label.
    fn weights(self) -> (u32, u32) {
        match self {
            Group::SymmetricCover => (1, 2),
            Group::AlternatingCover => (2, 1),
        }
    }

    fn weigh(self, positive: &BigUint, negative: &BigUint) -> BigUint {
        let (wp, wn) = self.weights();
        positive * wp + negative * wn
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    Enumeration,
    Series,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Per-prime block of a [`SpinCountRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCounts {
    pub p: u64,
    #[serde(with = "decimal")]
    pub f_pbar: BigUint,
    #[serde(with = "decimal")]
    pub f_pbar_plus: BigUint,
    #[serde(with = "decimal")]
    pub f_pbar_minus: BigUint,
    #[serde(with = "decimal")]
    pub f0_s: BigUint,
    #[serde(with = "decimal")]
    pub f0_a: BigUint,
}

impl PrimeCounts {
    fn from_signed(p: u64, plus: BigUint, minus: BigUint) -> Self {
        PrimeCounts {
            p,
            f_pbar: &plus + &minus,
            f0_s: Group::SymmetricCover.weigh(&plus, &minus),
            f0_a: Group::AlternatingCover.weigh(&plus, &minus),
            f_pbar_plus: plus,
            f_pbar_minus: minus,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.f_pbar == &self.f_pbar_plus + &self.f_pbar_minus
            && self.f0_s == &self.f_pbar_plus + &self.f_pbar_minus * 2u32
            && self.f0_a == &self.f_pbar_plus * 2u32 + &self.f_pbar_minus
            && &self.f0_s + &self.f0_a == &self.f_pbar * 3u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCountRecord {
    pub n: usize,
    #[serde(with = "decimal")]
    pub f_s_hat: BigUint,
    #[serde(with = "decimal")]
    pub f_a_hat: BigUint,
    pub primes: Vec<PrimeCounts>,
    pub source: Source,
}

impl SpinCountRecord {
    pub fn is_consistent(&self) -> bool {
        self.primes.iter().all(PrimeCounts::is_consistent)
    }
}

/// Degree of the spin character(s) labelled by `lambda`, with `p`-defects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinDegree {
    pub lambda: BarPartition,
    #[serde(with = "decimal")]
    pub degree: BigUint,
    pub defects: BTreeMap<u64, u64>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn spin_power(lambda: &BarPartition) -> BigUint {
    BigUint::one() << ((lambda.n() - lambda.len()) / 2)
}

fn exact_div(num: BigUint, den: &BigUint, lambda: &BarPartition) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::DegreeMismatch(format!(
            "{lambda}: non-integral quotient"
        )))
    }
}

/// `2^floor((n-m)/2) * n! / prod a_i! * prod_{i<j} (a_i - a_j)/(a_i + a_j)`.
pub fn degree_from_parts(lambda: &BarPartition) -> Result<BigUint> {
    let a = lambda.parts();
    let mut num = spin_power(lambda) * factorial(lambda.n());
    let mut den = a
        .iter()
        .fold(BigUint::one(), |acc, &ai| acc * factorial(ai));
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            num *= a[i] - a[j];
            den *= a[i] + a[j];
        }
    }
    exact_div(num, &den, lambda)
}

/// `2^floor((n-m)/2) * n! / prod of all bar lengths`.
pub fn degree_from_bar_lengths(lambda: &BarPartition) -> Result<BigUint> {
    let num = spin_power(lambda) * factorial(lambda.n());
    exact_div(num, &bar_lengths(lambda).product(), lambda)
}

/// Spin degree, evaluated by both closed forms; they must agree.
pub fn spin_degree(lambda: &BarPartition) -> Result<BigUint> {
    if lambda.is_empty() {
        return Err(Error::InvalidArgument(
            "spin degree needs a nonempty partition".into(),
        ));
    }
    let by_parts = degree_from_parts(lambda)?;
    let by_bars = degree_from_bar_lengths(lambda)?;
    if by_parts != by_bars {
        return Err(Error::DegreeMismatch(format!(
            "{lambda}: {by_parts} from parts, {by_bars} from bar lengths"
        )));
    }
    Ok(by_parts)
}

/// `p`-defect of the spin character(s) labelled by `lambda`.
///
/// The defect is `nu_p(|cover|) - nu_p(degree)`. For odd `p` the cover has
/// the same `p`-part as `n!`, and the degree is `n!/prod(bar lengths)` up to
/// a power of two, so this is `nu_p` of the bar-length product.
pub fn p_defect(lambda: &BarPartition, p: u64) -> Result<u64> {
    let p = check_odd_prime(p)?;
    Ok(bar_lengths(lambda)
        .multiset()
        .into_iter()
        .map(|h| valuation(h as u64, p))
        .sum())
}

pub fn spin_degree_with_defects(lambda: &BarPartition, primes: &[u64]) -> Result<SpinDegree> {
    let degree = spin_degree(lambda)?;
    let defects = primes
        .iter()
        .map(|&p| Ok((p, p_defect(lambda, p)?)))
        .collect::<Result<_>>()?;
    Ok(SpinDegree {
        lambda: lambda.clone(),
        degree,
        defects,
    })
}

/// `(|P+(n)|, |P-(n)|)` for every `n <= n_max`.
///
/// Counts strict partitions by adding one admissible part size at a time,
/// tracking the parity of the number of parts.
pub fn signed_bar_counts(n_max: usize) -> Vec<(BigUint, BigUint)> {
    // dp[n][l % 2]
    let mut dp = vec![[BigUint::zero(), BigUint::zero()]; n_max + 1];
    dp[0][0] = BigUint::one();
    for k in 1..=n_max {
        for n in (k..=n_max).rev() {
            let (lo, hi) = dp.split_at_mut(n);
            let from = &lo[n - k];
            if !from[0].is_zero() {
                hi[0][1] += &from[0];
            }
            if !from[1].is_zero() {
                hi[0][0] += &from[1];
            }
        }
    }
    dp.into_iter()
        .enumerate()
        .map(|(n, [even_len, odd_len])| {
            if n % 2 == 0 {
                (even_len, odd_len)
            } else {
                (odd_len, even_len)
            }
        })
        .collect()
}

/// Number of spin characters of the cover of degree `n`.
pub fn count_spin_chars(n: usize, group: Group) -> BigUint {
    let (plus, minus) = signed_bar_counts(n).pop().expect("n + 1 entries");
    group.weigh(&plus, &minus)
}

/// `(f+, f-)`: cores of `n` with positive and negative sign.
pub fn signed_core_counts(n: usize, p: u64) -> Result<(BigUint, BigUint)> {
    let (mut plus, mut minus) = (0u64, 0u64);
    for lambda in enumerate_p_bar_cores(n, p)? {
        match bar_sign(&lambda) {
            SignedBarClass::Positive => plus += 1,
            SignedBarClass::Negative => minus += 1,
        }
    }
    Ok((plus.into(), minus.into()))
}

/// Records for `0..=n_max` from direct counting of (core) bar partitions.
pub fn enumerated_records(n_max: usize, primes: &[u64]) -> Result<Vec<SpinCountRecord>> {
    for &p in primes {
        check_odd_prime(p)?;
    }
    signed_bar_counts(n_max)
        .into_iter()
        .enumerate()
        .map(|(n, (plus, minus))| {
            let blocks = primes
                .iter()
                .map(|&p| {
                    let (cp, cm) = signed_core_counts(n, p)?;
                    Ok(PrimeCounts::from_signed(p, cp, cm))
                })
                .collect::<Result<_>>()?;
            Ok(SpinCountRecord {
                n,
                f_s_hat: Group::SymmetricCover.weigh(&plus, &minus),
                f_a_hat: Group::AlternatingCover.weigh(&plus, &minus),
                primes: blocks,
                source: Source::Enumeration,
            })
        })
        .collect()
}

fn nonnegative(c: &BigInt) -> Result<BigUint> {
    c.to_biguint()
        .ok_or_else(|| Error::InvalidArgument(format!("negative count {c} in a counting series")))
}

/// Records for `0..=n_max` read off the generating functions.
pub fn series_records(n_max: usize, primes: &[u64]) -> Result<Vec<SpinCountRecord>> {
    let spin_s = gf_spin_chars(Group::SymmetricCover, n_max)?;
    let spin_a = gf_spin_chars(Group::AlternatingCover, n_max)?;
    let signed = primes
        .iter()
        .map(|&p| Ok((p, gf_bar_core_signed(p, n_max)?)))
        .collect::<Result<Vec<_>>>()?;
    (0..=n_max)
        .map(|n| {
            let blocks = signed
                .iter()
                .map(|(p, (plus, minus))| {
                    Ok(PrimeCounts::from_signed(
                        *p,
                        nonnegative(plus.coeff(n))?,
                        nonnegative(minus.coeff(n))?,
                    ))
                })
                .collect::<Result<_>>()?;
            Ok(SpinCountRecord {
                n,
                f_s_hat: nonnegative(spin_s.coeff(n))?,
                f_a_hat: nonnegative(spin_a.coeff(n))?,
                primes: blocks,
                source: Source::Series,
            })
        })
        .collect()
}

/// CSV with a header row; one column group per prime in `primes`.
pub fn write_csv<W: io::Write>(
    records: &[SpinCountRecord],
    primes: &[u64],
    mut w: W,
) -> io::Result<()> {
    let mut header = vec!["n".to_string(), "f_S_hat".into(), "f_A_hat".into()];
    for p in primes {
        for col in ["f_pbar", "f_pbar_plus", "f_pbar_minus", "f0_S", "f0_A"] {
            header.push(format!("{col}_p{p}"));
        }
    }
    writeln!(w, "{}", header.join(","))?;
    for r in records {
        let mut row = vec![
            r.n.to_string(),
            r.f_s_hat.to_string(),
            r.f_a_hat.to_string(),
        ];
        for block in &r.primes {
            for v in [
                &block.f_pbar,
                &block.f_pbar_plus,
                &block.f_pbar_minus,
                &block.f0_s,
                &block.f0_a,
            ] {
                row.push(v.to_string());
            }
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// `(q^k; q^k)_inf`.
fn euler(k: usize, order: usize) -> Result<TruncSeries> {
    pochhammer(Sign::Plus, k, k, order)
}

/// `1 / (q;q)_inf`, the partition generating function.
pub fn gf_partitions(order: usize) -> Result<TruncSeries> {
    euler(1, order)?.invert()
}

/// `sum_{k in Z} (-1)^k q^{2k^2}` as the product `(q^2;q^2)^2 / (q^4;q^4)`.
fn theta_even(order: usize) -> Result<TruncSeries> {
    let e2 = euler(2, order)?;
    let inner = series_mul(&e2, &euler(4, order)?.invert()?)?;
    series_mul(&e2, &inner)
}

/// `(q^2;q^2)/(q;q) * (3/2 -+ 1/2 (q^2;q^2)^2/(q^4;q^4))`, minus for the
/// symmetric cover and plus for the alternating cover.
pub fn gf_spin_chars(group: Group, order: usize) -> Result<TruncSeries> {
    let bar_gf = series_mul(&euler(2, order)?, &euler(1, order)?.invert()?)?;
    let three = TruncSeries::monomial(BigInt::from(3), 0, order);
    let theta = theta_even(order)?;
    let bracket = match group {
        Group::SymmetricCover => series_sub(&three, &theta)?,
        Group::AlternatingCover => series_add(&three, &theta)?,
    };
    series_mul(&bar_gf, &bracket)?.halve_exact()
}

/// `(q^2;q^2) (q^p;q^p)^{(p+1)/2} / ((q;q) (q^{2p};q^{2p}))`.
pub fn gf_bar_core(p: u64, order: usize) -> Result<TruncSeries> {
    let p = check_odd_prime(p)? as usize;
    let bar_gf = series_mul(&euler(2, order)?, &euler(1, order)?.invert()?)?;
    let lifted = euler(p, order)?.pow(p.div_ceil(2) as i64)?;
    let denom = euler(2 * p, order)?.invert()?;
    series_mul(&series_mul(&bar_gf, &denom)?, &lifted)
}

/// `F+ - F-`: the sign-weighted core series
/// `(-q;-q)_inf (-q^p;-q^p)_inf^{t-1}` with `p = 2t + 1`.
pub fn gf_bar_core_sign_difference(p: u64, order: usize) -> Result<TruncSeries> {
    let p = check_odd_prime(p)? as usize;
    let t = (p - 1) / 2;
    let e1 = euler(1, order)?.alternate();
    // p is odd, so q -> -q maps (q^p;q^p) to (-q^p;-q^p)
    let ep = euler(p, order)?.alternate();
    series_mul(&e1, &ep.pow(t as i64 - 1)?)
}

/// `(F+, F-)` for cores with positive and negative sign.
pub fn gf_bar_core_signed(p: u64, order: usize) -> Result<(TruncSeries, TruncSeries)> {
    let all = gf_bar_core(p, order)?;
    let diff = gf_bar_core_sign_difference(p, order)?;
    let plus = series_add(&all, &diff)?.halve_exact()?;
    let minus = series_sub(&all, &diff)?.halve_exact()?;
    Ok((plus, minus))
}

/// `F+ + 2F-` for the symmetric cover, `2F+ + F-` for the alternating cover.
pub fn gf_defect_zero(group: Group, p: u64, order: usize) -> Result<TruncSeries> {
    let (plus, minus) = gf_bar_core_signed(p, order)?;
    let (wp, wn) = group.weights();
    series_add(
        &plus.scale(&BigInt::from(wp)),
        &minus.scale(&BigInt::from(wn)),
    )
}

/// Spin characters of positive `p`-defect: all spin characters minus the
/// defect zero ones.
pub fn gf_positive_defect(group: Group, p: u64, order: usize) -> Result<TruncSeries> {
    series_sub(
        &gf_spin_chars(group, order)?,
        &gf_defect_zero(group, p, order)?,
    )
}
