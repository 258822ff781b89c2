//! Congruence statements for the counting functions and a checker that
//! evaluates them on arithmetic progressions.
//!
//! Two shapes of statement occur:
//! - vanishing families: `f(A n + B) = 0 (mod M)` for all `n >= 0`;
//! - characterizations: `f(n) mod M` is predicted for every `n >= 1`, either
//!   by the parity of a representation count or by a pentagonal-number table.
//!
//! Statements are identified by descriptive names; the numbered aliases
//! accepted by the CLI are listed in [`Statement::alias`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{check_odd_prime, is_prime, is_square, isqrt};
use crate::error::{Error, Result};
use crate::qseries::TruncSeries;
use crate::spincounts::{
    gf_bar_core, gf_bar_core_signed, gf_defect_zero, gf_partitions, gf_positive_defect,
    gf_spin_chars, Group,
};

/// A counting function with a generating function in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Counter {
    /// `p(n)`, ordinary partitions.
    Partitions,
    SpinS,
    SpinA,
    BarCore(u64),
    BarCorePlus(u64),
    BarCoreMinus(u64),
    DefectZeroS(u64),
    DefectZeroA(u64),
    /// Spin characters of the symmetric cover with positive `p`-defect.
    PositiveDefectS(u64),
    PositiveDefectA(u64),
}

impl Counter {
    pub const NAMES: [&'static str; 10] = [
        "p",
        "f-shat",
        "f-ahat",
        "f-pbar",
        "f-pbar-plus",
        "f-pbar-minus",
        "f0-shat",
        "f0-ahat",
        "fplus-shat",
        "fplus-ahat",
    ];

    /// Parses a counter name; `p` is required exactly for the prime-dependent ones.
    pub fn parse(name: &str, p: Option<u64>) -> Result<Counter> {
        let simple = match name {
            "p" => Some(Counter::Partitions),
            "f-shat" => Some(Counter::SpinS),
            "f-ahat" => Some(Counter::SpinA),
            _ => None,
        };
        if let Some(c) = simple {
            return match p {
                None => Ok(c),
                Some(_) => Err(Error::InvalidArgument(format!(
                    "counter {name} does not take a prime"
                ))),
            };
        }
        let make: fn(u64) -> Counter = match name {
            "f-pbar" => Counter::BarCore,
            "f-pbar-plus" => Counter::BarCorePlus,
            "f-pbar-minus" => Counter::BarCoreMinus,
            "f0-shat" => Counter::DefectZeroS,
            "f0-ahat" => Counter::DefectZeroA,
            "fplus-shat" => Counter::PositiveDefectS,
            "fplus-ahat" => Counter::PositiveDefectA,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown counter {name:?}; expected one of {}",
                    Counter::NAMES.join(", ")
                )))
            }
        };
        let p = p.ok_or_else(|| Error::InvalidArgument(format!("counter {name} needs --p")))?;
        Ok(make(check_odd_prime(p)?))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Counter::Partitions => "p",
            Counter::SpinS => "f-shat",
            Counter::SpinA => "f-ahat",
            Counter::BarCore(_) => "f-pbar",
            Counter::BarCorePlus(_) => "f-pbar-plus",
            Counter::BarCoreMinus(_) => "f-pbar-minus",
            Counter::DefectZeroS(_) => "f0-shat",
            Counter::DefectZeroA(_) => "f0-ahat",
            Counter::PositiveDefectS(_) => "fplus-shat",
            Counter::PositiveDefectA(_) => "fplus-ahat",
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match *self {
            Counter::Partitions | Counter::SpinS | Counter::SpinA => None,
            Counter::BarCore(p)
            | Counter::BarCorePlus(p)
            | Counter::BarCoreMinus(p)
            | Counter::DefectZeroS(p)
            | Counter::DefectZeroA(p)
            | Counter::PositiveDefectS(p)
            | Counter::PositiveDefectA(p) => Some(p),
        }
    }

    /// The generating function truncated at `order`.
    pub fn series(&self, order: usize) -> Result<TruncSeries> {
        use Group::{AlternatingCover as A, SymmetricCover as S};
        match *self {
            Counter::Partitions => gf_partitions(order),
            Counter::SpinS => gf_spin_chars(S, order),
            Counter::SpinA => gf_spin_chars(A, order),
            Counter::BarCore(p) => gf_bar_core(p, order),
            Counter::BarCorePlus(p) => Ok(gf_bar_core_signed(p, order)?.0),
            Counter::BarCoreMinus(p) => Ok(gf_bar_core_signed(p, order)?.1),
            Counter::DefectZeroS(p) => gf_defect_zero(S, p, order),
            Counter::DefectZeroA(p) => gf_defect_zero(A, p, order),
            Counter::PositiveDefectS(p) => gf_positive_defect(S, p, order),
            Counter::PositiveDefectA(p) => gf_positive_defect(A, p, order),
        }
    }
}

impl fmt::Display for Counter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prime() {
            Some(p) => write!(f, "{}[p={p}]", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// What a family asserts about `counter(A n + B) mod M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// Every value is divisible by `M`.
    Vanishing,
    /// `f(n) = R(n) (mod 2)` for `n >= 1`, with `R` from [`count_r`].
    ParityOfR { k_min: u64 },
    /// `f(n) mod 3` follows [`predicted_residue_mod3`] for `n >= 1`.
    PentagonalMod3 { group: Group },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CongruenceFamily {
    pub counter: Counter,
    pub modulus: u64,
    /// Step `A` of the progression `A n + B`.
    pub a: u64,
    pub b: u64,
    pub kind: CheckKind,
    /// Statement id, or `"candidate"` for search results.
    pub source: String,
}

impl CongruenceFamily {
    pub fn vanishing(counter: Counter, modulus: u64, a: u64, b: u64, source: &str) -> Result<Self> {
        if a == 0 || modulus < 2 {
            return Err(Error::InvalidArgument(format!(
                "family needs A >= 1 and M >= 2, got A={a} B={b} M={modulus}"
            )));
        }
        Ok(CongruenceFamily {
            counter,
            modulus,
            a,
            b,
            kind: CheckKind::Vanishing,
            source: source.to_string(),
        })
    }

    /// Largest index the family touches for `n <= n_max`.
    pub fn max_index(&self, n_max: u64) -> u64 {
        self.a * n_max + self.b
    }
}

impl fmt::Display for CongruenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CheckKind::Vanishing => write!(
                f,
                "{}({}n+{}) = 0 (mod {})",
                self.counter, self.a, self.b, self.modulus
            ),
            CheckKind::ParityOfR { k_min } => {
                write!(f, "{}(n) = R_{}(n) (mod 2)", self.counter, k_min)
            }
            CheckKind::PentagonalMod3 { .. } => {
                write!(f, "{}(n) = pentagonal table (mod 3)", self.counter)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub family: CongruenceFamily,
    pub n_max: u64,
    pub holds: bool,
    /// First argument `A n + B` at which the statement fails.
    pub counterexample: Option<u64>,
}

/// One JSON line of `verify` output.
#[derive(Serialize)]
struct ReportLine<'a> {
    source: &'a str,
    counter: String,
    #[serde(rename = "A")]
    a: u64,
    #[serde(rename = "B")]
    b: u64,
    #[serde(rename = "M")]
    m: u64,
    n_max: u64,
    holds: bool,
    counterexample: Option<u64>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        let f = &self.family;
        serde_json::to_string(&ReportLine {
            source: &f.source,
            counter: f.counter.to_string(),
            a: f.a,
            b: f.b,
            m: f.modulus,
            n_max: self.n_max,
            holds: self.holds,
            counterexample: self.counterexample,
        })
        .expect("report serializes")
    }
}

/// Number of pairs `(m, k)` with `n = m(3m+1)/2 + 2k^2`, `m` any integer, `k >= k_min`.
pub fn count_r(n: u64, k_min: u64) -> u64 {
    let bound = isqrt(2 * n / 3) as i64 + 1;
    let mut count = 0;
    for m in -bound..=bound {
        let pent = m * (3 * m + 1) / 2;
        if pent < 0 || pent as u64 > n {
            continue;
        }
        let rest = n - pent as u64;
        if rest.is_multiple_of(2) && is_square(rest / 2) && isqrt(rest / 2) >= k_min {
            count += 1;
        }
    }
    count
}

/// Whether `n` is a generalized pentagonal number `k(3k+1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PentagonalClass {
    pub n: u64,
    pub k: Option<i64>,
}

impl PentagonalClass {
    pub fn k_mod_4(&self) -> Option<u8> {
        self.k.map(|k| k.rem_euclid(4) as u8)
    }
}

/// Solves `24n + 1 = (6k + 1)^2` over the integers.
pub fn pentagonal_class(n: u64) -> PentagonalClass {
    let d = 24 * n + 1;
    let s = isqrt(d);
    let k = (s * s == d).then(|| {
        // s is prime to 6, so exactly one of +-s is 1 mod 6
        let s = s as i64;
        if s % 6 == 1 {
            (s - 1) / 6
        } else {
            (-s - 1) / 6
        }
    });
    PentagonalClass { n, k }
}

/// Residue of the spin character count mod 3 predicted by the pentagonal table.
pub fn predicted_residue_mod3(n: u64, group: Group) -> u8 {
    let Some(k4) = pentagonal_class(n).k_mod_4() else {
        return 0;
    };
    let symmetric = if k4 == 0 || k4 == 3 { 1 } else { 2 };
    match group {
        Group::SymmetricCover => symmetric,
        Group::AlternatingCover => 3 - symmetric,
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    let p = check_odd_prime(p)?;
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

fn check_prime_at_least_5(p: u64) -> Result<u64> {
    if p >= 5 && is_prime(p) {
        Ok(p)
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// All `1 <= r <= p-1` with `24r + 1` a quadratic nonresidue mod `p`.
pub fn qnr_residues(p: u64) -> Result<Vec<u64>> {
    let p = check_prime_at_least_5(p)?;
    (1..p)
        .filter_map(|r| match legendre(24 * r as i64 + 1, p) {
            Ok(-1) => Some(Ok(r)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// `f(p^2 n + p r + (p^2-1)/24) = 0 (mod 2)`, `1 <= r <= p-1`, for `p = 5, 11 (mod 24)`.
pub fn mod2_family(p: u64, group: Group, source: &str) -> Result<Vec<CongruenceFamily>> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if !matches!(p % 24, 5 | 11) {
        return Err(Error::WrongResidueClass(p));
    }
    let counter = match group {
        Group::SymmetricCover => Counter::SpinS,
        Group::AlternatingCover => Counter::SpinA,
    };
    let offset = (p * p - 1) / 24;
    (1..p)
        .map(|r| CongruenceFamily::vanishing(counter, 2, p * p, p * r + offset, source))
        .collect()
}

/// `f(p n + r) = 0 (mod M)` for every quadratic-nonresidue offset `r`.
pub fn qnr_family(
    counter: Counter,
    p: u64,
    modulus: u64,
    source: &str,
) -> Result<Vec<CongruenceFamily>> {
    qnr_residues(p)?
        .into_iter()
        .map(|r| CongruenceFamily::vanishing(counter, modulus, p, r, source))
        .collect()
}

fn characterization(
    counter: Counter,
    modulus: u64,
    kind: CheckKind,
    source: &str,
) -> CongruenceFamily {
    CongruenceFamily {
        counter,
        modulus,
        a: 1,
        b: 0,
        kind,
        source: source.to_string(),
    }
}

/// Checks a family against a precomputed series of sufficient order.
pub fn verify_family_with(
    family: &CongruenceFamily,
    series: &TruncSeries,
    n_max: u64,
) -> Result<VerificationReport> {
    let need = family.max_index(n_max);
    if need > series.order() as u64 {
        return Err(Error::OrderTooSmall {
            have: series.order(),
            need: need as usize,
        });
    }
    let m = BigInt::from(family.modulus);
    let residue = |idx: u64| -> u64 {
        series
            .coeff(idx as usize)
            .mod_floor(&m)
            .to_u64()
            .expect("residue below modulus")
    };
    let mut counterexample = None;
    for n in 0..=n_max {
        let idx = family.a * n + family.b;
        let ok = match family.kind {
            CheckKind::Vanishing => residue(idx) == 0,
            // characterizations are stated for n >= 1
            _ if idx == 0 => true,
            CheckKind::ParityOfR { k_min } => residue(idx) == count_r(idx, k_min) % 2,
            CheckKind::PentagonalMod3 { group } => {
                residue(idx) == u64::from(predicted_residue_mod3(idx, group))
            }
        };
        if !ok {
            counterexample = Some(idx);
            break;
        }
    }
    Ok(VerificationReport {
        family: family.clone(),
        n_max,
        holds: counterexample.is_none(),
        counterexample,
    })
}

/// Evaluates the counter at `A n + B` for `0 <= n <= n_max`.
pub fn verify_family(family: &CongruenceFamily, n_max: u64) -> Result<VerificationReport> {
    let series = family.counter.series(family.max_index(n_max) as usize)?;
    verify_family_with(family, &series, n_max)
}

/// Verifies many families, computing each counter's series once (in parallel)
/// at the largest order any of its families needs. Reports keep input order.
pub fn verify_families(
    families: &[CongruenceFamily],
    n_max: u64,
) -> Result<Vec<VerificationReport>> {
    let mut orders: BTreeMap<Counter, u64> = BTreeMap::new();
    for f in families {
        let e = orders.entry(f.counter).or_insert(0);
        *e = (*e).max(f.max_index(n_max));
    }
    let series: BTreeMap<Counter, TruncSeries> = orders
        .into_par_iter()
        .map(|(c, order)| Ok((c, c.series(order as usize)?)))
        .collect::<Result<_>>()?;
    families
        .par_iter()
        .map(|f| verify_family_with(f, &series[&f.counter], n_max))
        .collect()
}

/// Exhaustive search for vanishing progressions `A n + B` with `A <= a_max`.
///
/// Results are candidates only, ordered by `(M, A, B)`.
pub fn search_congruences(
    counter: Counter,
    a_max: u64,
    moduli: &[u64],
    n_max: u64,
) -> Result<Vec<CongruenceFamily>> {
    if n_max < 50 {
        return Err(Error::InvalidArgument(format!(
            "search needs n_max >= 50 to avoid vacuous matches, got {n_max}"
        )));
    }
    if a_max == 0 {
        return Err(Error::InvalidArgument("a_max must be at least 1".into()));
    }
    let mut moduli: Vec<u64> = moduli.to_vec();
    moduli.sort_unstable();
    moduli.dedup();
    if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidArgument(format!("modulus {m} is below 2")));
    }
    let order = a_max * n_max + a_max - 1;
    let series = counter.series(order as usize)?;
    let mut out = Vec::new();
    for &m in &moduli {
        let modulus = BigInt::from(m);
        let divisible: Vec<bool> = series
            .coeffs()
            .iter()
            .map(|c| c.is_multiple_of(&modulus))
            .collect();
        for a in 1..=a_max {
            for b in 0..a {
                if (0..=n_max).all(|n| divisible[(a * n + b) as usize]) {
                    out.push(CongruenceFamily::vanishing(counter, m, a, b, "candidate")?);
                }
            }
        }
    }
    Ok(out)
}

/// A named statement whose instances are [`CongruenceFamily`] values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statement {
    /// `p(5n+4)`, `p(7n+5)`, `p(11n+6)` modulo 5, 7, 11.
    ClassicalPartition,
    SpinSParity,
    SpinSParityFamily,
    SpinSMod3,
    SpinSMod3Family,
    SpinAParity,
    SpinAParityFamily,
    SpinAMod3,
    SpinAMod3Family,
    BarCoreParity,
    DefectZeroSMod3,
    PositiveDefectSMod3,
    DefectZeroAMod3,
    PositiveDefectAMod3,
}

impl Statement {
    pub const ALL: [Statement; 14] = [
        Statement::ClassicalPartition,
        Statement::SpinSParity,
        Statement::SpinSParityFamily,
        Statement::SpinSMod3,
        Statement::SpinSMod3Family,
        Statement::SpinAParity,
        Statement::SpinAParityFamily,
        Statement::SpinAMod3,
        Statement::SpinAMod3Family,
        Statement::BarCoreParity,
        Statement::DefectZeroSMod3,
        Statement::PositiveDefectSMod3,
        Statement::DefectZeroAMod3,
        Statement::PositiveDefectAMod3,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Statement::ClassicalPartition => "partition-classical",
            Statement::SpinSParity => "spin-s-parity",
            Statement::SpinSParityFamily => "spin-s-mod2-family",
            Statement::SpinSMod3 => "spin-s-mod3",
            Statement::SpinSMod3Family => "spin-s-mod3-family",
            Statement::SpinAParity => "spin-a-parity",
            Statement::SpinAParityFamily => "spin-a-mod2-family",
            Statement::SpinAMod3 => "spin-a-mod3",
            Statement::SpinAMod3Family => "spin-a-mod3-family",
            Statement::BarCoreParity => "bar-core-parity",
            Statement::DefectZeroSMod3 => "defect-zero-s-mod3",
            Statement::PositiveDefectSMod3 => "positive-defect-s-mod3",
            Statement::DefectZeroAMod3 => "defect-zero-a-mod3",
            Statement::PositiveDefectAMod3 => "positive-defect-a-mod3",
        }
    }

    /// Numbered alias used in the literature.
    pub fn alias(&self) -> Option<&'static str> {
        match self {
            Statement::ClassicalPartition => Some("theorem-1.1"),
            Statement::SpinSParity => Some("theorem-3.1"),
            Statement::SpinSParityFamily => Some("corollary-3.3"),
            Statement::SpinSMod3 => Some("theorem-3.5"),
            Statement::SpinSMod3Family => Some("corollary-3.6"),
            Statement::SpinAParity => Some("theorem-3.7"),
            Statement::SpinAParityFamily => Some("corollary-3.8"),
            Statement::SpinAMod3 => Some("theorem-3.9"),
            Statement::SpinAMod3Family => Some("corollary-3.10"),
            Statement::BarCoreParity => Some("theorem-4.1"),
            Statement::DefectZeroSMod3 => Some("theorem-4.3"),
            Statement::DefectZeroAMod3 => Some("theorem-4.5"),
            Statement::PositiveDefectSMod3 | Statement::PositiveDefectAMod3 => None,
        }
    }

    pub fn parse(s: &str) -> Result<Statement> {
        Statement::ALL
            .into_iter()
            .find(|st| st.id() == s || st.alias() == Some(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown statement {s:?}")))
    }

    /// Whether the statement is instantiated per prime.
    pub fn takes_primes(&self) -> bool {
        !matches!(
            self,
            Statement::ClassicalPartition
                | Statement::SpinSParity
                | Statement::SpinSMod3
                | Statement::SpinAParity
                | Statement::SpinAMod3
        )
    }

    /// Primes used when the caller supplies none.
    pub fn default_primes(&self) -> &'static [u64] {
        match self {
            Statement::SpinSParityFamily | Statement::SpinAParityFamily => &[5],
            s if s.takes_primes() => &[5, 7, 11, 13],
            _ => &[],
        }
    }

    /// Instances for the given primes (or the defaults when `primes` is empty).
    pub fn families(&self, primes: &[u64]) -> Result<Vec<CongruenceFamily>> {
        use Group::{AlternatingCover as A, SymmetricCover as S};
        let id = self.id();
        let primes = if primes.is_empty() {
            self.default_primes()
        } else {
            primes
        };
        let per_prime = |f: &dyn Fn(u64) -> Result<Vec<CongruenceFamily>>| -> Result<Vec<_>> {
            let mut out = Vec::new();
            for &p in primes {
                out.extend(f(p)?);
            }
            Ok(out)
        };
        match self {
            Statement::ClassicalPartition => [(5, 4), (7, 5), (11, 6)]
                .into_iter()
                .map(|(m, b)| CongruenceFamily::vanishing(Counter::Partitions, m, m, b, id))
                .collect(),
            Statement::SpinSParity => Ok(vec![characterization(
                Counter::SpinS,
                2,
                CheckKind::ParityOfR { k_min: 0 },
                id,
            )]),
            Statement::SpinAParity => Ok(vec![characterization(
                Counter::SpinA,
                2,
                CheckKind::ParityOfR { k_min: 1 },
                id,
            )]),
            Statement::SpinSMod3 => Ok(vec![characterization(
                Counter::SpinS,
                3,
                CheckKind::PentagonalMod3 { group: S },
                id,
            )]),
            Statement::SpinAMod3 => Ok(vec![characterization(
                Counter::SpinA,
                3,
                CheckKind::PentagonalMod3 { group: A },
                id,
            )]),
            Statement::SpinSParityFamily => per_prime(&|p| mod2_family(p, S, id)),
            Statement::SpinAParityFamily => per_prime(&|p| mod2_family(p, A, id)),
            Statement::SpinSMod3Family => per_prime(&|p| qnr_family(Counter::SpinS, p, 3, id)),
            Statement::SpinAMod3Family => per_prime(&|p| qnr_family(Counter::SpinA, p, 3, id)),
            Statement::BarCoreParity => per_prime(&|p| qnr_family(Counter::BarCore(p), p, 2, id)),
            Statement::DefectZeroSMod3 => {
                per_prime(&|p| qnr_family(Counter::DefectZeroS(p), p, 3, id))
            }
            Statement::DefectZeroAMod3 => {
                per_prime(&|p| qnr_family(Counter::DefectZeroA(p), p, 3, id))
            }
            Statement::PositiveDefectSMod3 => {
                per_prime(&|p| qnr_family(Counter::PositiveDefectS(p), p, 3, id))
            }
            Statement::PositiveDefectAMod3 => {
                per_prime(&|p| qnr_family(Counter::PositiveDefectA(p), p, 3, id))
            }
        }
    }
}
