//! Classical product-to-sum identities evaluated at monomial specializations,
//! with the sum and product sides built independently.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::qseries::{Sign, TruncSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityName {
    /// Jacobi triple product.
    Jtp,
    /// Euler's pentagonal number theorem.
    EulerPnt,
    /// Quintuple product.
    Qpi,
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityName::Jtp => "JTP",
            IdentityName::EulerPnt => "EulerPNT",
            IdentityName::Qpi => "QPI",
        })
    }
}

/// `sign * q^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub sign: Sign,
    pub exponent: usize,
}

impl SignedMonomial {
    pub fn new(sign: Sign, exponent: usize) -> Self {
        SignedMonomial { sign, exponent }
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => "",
            Sign::Minus => "-",
        };
        match self.exponent {
            0 => write!(f, "{s}1"),
            1 => write!(f, "{s}q"),
            e => write!(f, "{s}q^{e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Specialization {
    None,
    Z(SignedMonomial),
    ST { s: SignedMonomial, t: Sign },
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::None => f.write_str("-"),
            Specialization::Z(z) => write!(f, "z={z}"),
            Specialization::ST { s, t } => {
                write!(f, "s={s},t={}", SignedMonomial::new(*t, 0))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: IdentityName,
    pub specialization: Specialization,
    pub order: usize,
    pub lhs: TruncSeries,
    pub rhs: TruncSeries,
    pub matches: bool,
}

impl IdentityCheck {
    fn new(
        name: IdentityName,
        specialization: Specialization,
        lhs: TruncSeries,
        rhs: TruncSeries,
    ) -> Self {
        IdentityCheck {
            name,
            specialization,
            order: lhs.order(),
            matches: lhs.coeffs() == rhs.coeffs(),
            lhs,
            rhs,
        }
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} N={} {} ({} nonzero terms)",
            self.name,
            self.specialization,
            self.order,
            if self.matches { "match" } else { "MISMATCH" },
            self.lhs.nonzero_count()
        )
    }
}

/// Accumulates `sum_n c(n) q^{e(n)}` over `|n| <= bound`, dropping `e(n) > order`.
fn lattice_sum(order: usize, bound: i64, term: impl Fn(i64) -> (i64, i64)) -> TruncSeries {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    for n in -bound..=bound {
        let (e, c) = term(n);
        debug_assert!(e >= 0);
        if (e as usize) <= order {
            coeffs[e as usize] += c;
        }
    }
    TruncSeries::from_coeffs(coeffs).expect("order + 1 coefficients")
}

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn pentagonal_bound(order: usize) -> i64 {
    isqrt(2 * order as u64 / 3) as i64 + 2
}

/// `sum_{m in Z} (-1)^m q^{m(3m-1)/2}`.
pub fn pnt_sum(order: usize) -> TruncSeries {
    lattice_sum(order, pentagonal_bound(order), |m| {
        (m * (3 * m - 1) / 2, parity_sign(m))
    })
}

/// Euler's theorem against the product `(q;q)_inf` built factor by factor.
pub fn pnt_check(order: usize) -> IdentityCheck {
    let mut product = TruncSeries::one(order);
    for k in 1..=order {
        product.mul_binomial(-1, k);
    }
    IdentityCheck::new(
        IdentityName::EulerPnt,
        Specialization::None,
        pnt_sum(order),
        product,
    )
}

/// Triple product at `z = z_sign * q^{z_exponent}`:
/// `sum z^n q^{n^2}` against `prod (1-q^{2n+2})(1+z q^{2n+1})(1+z^{-1} q^{2n+1})`.
pub fn jtp_check(z_sign: Sign, z_exponent: usize, order: usize) -> Result<IdentityCheck> {
    let e = z_exponent as i64;
    if e >= 2 {
        return Err(Error::IllFormedSpecialization(format!(
            "z = {} puts q^{} in the factor 1 + z^-1 q",
            SignedMonomial::new(z_sign, z_exponent),
            1 - e
        )));
    }
    let sigma = z_sign.value();
    let bound = isqrt(order as u64) as i64 + 2;
    let sum = lattice_sum(order, bound, |n| {
        let c = if sigma == 1 { 1 } else { parity_sign(n) };
        (n * n + e * n, c)
    });
    let mut product = TruncSeries::one(order);
    for n in 0..=order {
        product.mul_binomial(-1, 2 * n + 2);
        product.mul_binomial(sigma, 2 * n + 1 + z_exponent);
        product.mul_binomial(sigma, 2 * n + 1 - z_exponent);
    }
    Ok(IdentityCheck::new(
        IdentityName::Jtp,
        Specialization::Z(SignedMonomial::new(z_sign, z_exponent)),
        sum,
        product,
    ))
}

/// Quintuple product at `s = s_sign * q^{s_exponent}` and `t = +-1`.
///
/// For `t = +1` the factor `1 - s^0 t^{-1}` vanishes and so does the sum.
pub fn qpi_check(s: SignedMonomial, t: Sign, order: usize) -> Result<IdentityCheck> {
    if s.exponent == 0 {
        return Err(Error::UnsupportedSpecialization(format!(
            "s = {s} is not a positive power of q"
        )));
    }
    let a = s.exponent as i64;
    let sigma = s.sign.value();
    let tau = t.value();
    // t^{3n} - t^{-3n-1} = t^{3n} (1 - t) when t^2 = 1
    let sum = lattice_sum(order, pentagonal_bound(order), |n| {
        let e = (3 * n * n + n) / 2;
        let c = sigma.pow((e % 2) as u32) * tau.pow((n.rem_euclid(2)) as u32) * (1 - tau);
        (a * e, c)
    });
    let s_pow = |k: usize| -> (i64, usize) { (sigma.pow((k % 2) as u32), s.exponent * k) };
    let mut product = TruncSeries::one(order);
    for n in 1.. {
        let (cn, en) = s_pow(n);
        let (cm, em) = s_pow(n - 1);
        let (co, eo) = s_pow(2 * n - 1);
        product.mul_binomial(-cn, en);
        product.mul_binomial(-cn * tau, en);
        product.mul_binomial(-cm * tau, em);
        product.mul_binomial(-co, eo);
        product.mul_binomial(-co, eo);
        if em > order {
            break;
        }
    }
    Ok(IdentityCheck::new(
        IdentityName::Qpi,
        Specialization::ST { s, t },
        sum,
        product,
    ))
}

/// `2 sum_{n in Z} (-1)^{(3n^2+7n)/2} q^{(3n^2+n)/2}`.
pub fn mod3_sum_side(order: usize) -> TruncSeries {
    lattice_sum(order, pentagonal_bound(order), |n| {
        (
            (3 * n * n + n) / 2,
            2 * parity_sign((3 * n * n + 7 * n) / 2),
        )
    })
}

/// Every supported instance at the given order.
pub fn all_checks(order: usize) -> Result<Vec<IdentityCheck>> {
    let mut out = vec![pnt_check(order)];
    for sign in [Sign::Minus, Sign::Plus] {
        for e in 0..=1 {
            out.push(jtp_check(sign, e, order)?);
        }
    }
    for sign in [Sign::Minus, Sign::Plus] {
        for a in 1..=2 {
            for t in [Sign::Minus, Sign::Plus] {
                out.push(qpi_check(SignedMonomial::new(sign, a), t, order)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    use crate::congruence::{pentagonal_class, predicted_residue_mod3};
    use crate::qseries::{pochhammer, series_mul};
    use crate::spincounts::{gf_spin_chars, Group};

    fn euler(k: usize, order: usize) -> TruncSeries {
        pochhammer(Sign::Plus, k, k, order).unwrap()
    }

    #[test]
    fn pentagonal_sum_values() {
        let s = pnt_sum(20);
        let at = |i: usize| s.coeff(i).clone();
        for (i, c) in [
            (0, 1),
            (1, -1),
            (2, -1),
            (3, 0),
            (5, 1),
            (7, 1),
            (12, -1),
            (15, -1),
        ] {
            assert_eq!(at(i), BigInt::from(c), "index {i}");
        }
        for i in 0..=20u64 {
            if pentagonal_class(i).k.is_none() {
                assert!(s.coeff(i as usize).is_zero());
            }
        }
    }

    #[test]
    fn pentagonal_sum_equals_product_at_10000() {
        assert_eq!(pnt_sum(10_000), euler(1, 10_000));
    }

    #[test]
    fn triple_product_instances() {
        for (sign, e, n) in [
            (Sign::Minus, 0, 100),
            (Sign::Plus, 1, 100),
            (Sign::Plus, 0, 50),
        ] {
            let c = jtp_check(sign, e, n).unwrap();
            assert!(c.matches, "{c}");
        }
        let c = jtp_check(Sign::Minus, 0, 100).unwrap();
        let e2 = euler(2, 100);
        let e1 = euler(1, 100);
        let expected = series_mul(&series_mul(&e1, &e1).unwrap(), &e2.invert().unwrap()).unwrap();
        assert_eq!(c.rhs, expected);
        let lifted = series_mul(
            &series_mul(&e2, &e2).unwrap(),
            &euler(4, 100).invert().unwrap(),
        )
        .unwrap();
        assert_eq!(c.rhs.substitute_power(2), lifted);
        assert!(matches!(
            jtp_check(Sign::Plus, 2, 10),
            Err(Error::IllFormedSpecialization(_))
        ));
    }

    #[test]
    fn quintuple_product_instances() {
        let mq = SignedMonomial::new(Sign::Minus, 1);
        let c = qpi_check(mq, Sign::Minus, 200).unwrap();
        assert!(c.matches);
        let e2 = euler(2, 200);
        let num = series_mul(&series_mul(&e2, &e2).unwrap(), &e2).unwrap();
        let den = series_mul(&euler(1, 200), &euler(4, 200))
            .unwrap()
            .invert()
            .unwrap();
        let expected = series_mul(&num, &den).unwrap().scale(&BigInt::from(2));
        assert_eq!(c.lhs, expected);

        let q = SignedMonomial::new(Sign::Plus, 1);
        assert!(qpi_check(q, Sign::Minus, 100).unwrap().matches);
        let trivial = qpi_check(q, Sign::Plus, 50).unwrap();
        assert!(trivial.matches && trivial.lhs.is_zero() && trivial.rhs.is_zero());
        assert!(matches!(
            qpi_check(SignedMonomial::new(Sign::Plus, 0), Sign::Minus, 10),
            Err(Error::UnsupportedSpecialization(_))
        ));
    }

    #[test]
    fn all_supported_instances_match_at_200() {
        for c in all_checks(200).unwrap() {
            assert!(c.matches, "{c}");
            assert_eq!(c.order, 200);
        }
    }

    #[test]
    fn mod3_sum_reduces_to_twice_the_spin_series() {
        let sum = mod3_sum_side(500);
        assert_eq!(sum.coeff(0), &BigInt::from(2));
        let twice = gf_spin_chars(Group::SymmetricCover, 500)
            .unwrap()
            .scale(&BigInt::from(2));
        assert_eq!(sum.reduce_mod(3), twice.reduce_mod(3));
    }

    #[test]
    fn mod3_sum_signs_match_the_pentagonal_table() {
        let sum = mod3_sum_side(2000);
        for n in 1..=2000u64 {
            let c = sum.coeff(n as usize);
            let class = pentagonal_class(n);
            if class.k.is_none() {
                assert!(c.is_zero());
                continue;
            }
            // dividing by 2 in Z/3 is multiplying by 2
            let halved = (c * BigInt::from(2)).mod_floor(&BigInt::from(3));
            let expected = predicted_residue_mod3(n, Group::SymmetricCover);
            assert_eq!(halved, BigInt::from(expected), "n={n}");
        }
    }

    #[test]
    fn display_lines() {
        let c = jtp_check(Sign::Minus, 0, 10).unwrap();
        assert_eq!(c.to_string(), "JTP z=-1 N=10 match (4 nonzero terms)");
        let c = qpi_check(SignedMonomial::new(Sign::Minus, 1), Sign::Minus, 10).unwrap();
        assert!(c.to_string().starts_with("QPI s=-q,t=-1 N=10 match"));
    }
}
