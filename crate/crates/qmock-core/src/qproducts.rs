//! Pochhammer products and theta functions.
//!
//! Arguments are always signed powers of q (`ThetaArg`): the engine works at
//! specializations, never with symbolic parameters. The building blocks are
//!
//!   (x; q^m)_n   = prod_{k=0}^{n-1} (1 - x q^{km})        [poch_finite]
//!   (x; q^m)_inf = prod_{k>=0}     (1 - x q^{km})         [poch_infinite]
//!   j(x, q^m)    = sum_{n in Z} (-x)^n q^{m*binom(n,2)}
//!                = (x; q^m)_inf (q^m/x; q^m)_inf (q^m; q^m)_inf
//!
//! and the abbreviations J_{a,m} = j(q^a, q^m), Jbar_{a,m} = j(-q^a, q^m),
//! J_m = J_{m,3m} = (q^m; q^m)_inf.
//!
//! `theta_j` first normalizes its argument exponent into [0, m) using
//!   j(q^{nm} x, q^m) = (-1)^n q^{-m*binom(n,2)} x^{-n} j(x, q^m),
//! so arbitrarily large or negative exponents are supported uniformly. The
//! bilateral sum is the production path; the triple product is kept as an
//! independent cross-check.

use std::fmt;

use num_traits::One;

use crate::error::{QError, Result};
use crate::series::{Coeff, Order, QSeries};

// ---------------------------------------------------------------------------
// ThetaArg: +/- q^k
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn pow(self, k: i64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => {
                if k.rem_euclid(2) == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A specialization token: sign * q^exp. Total order is by (sign, exp).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThetaArg {
    pub sign: Sign,
    pub exp: i64,
}

impl ThetaArg {
    pub fn q_pow(exp: i64) -> ThetaArg {
        ThetaArg {
            sign: Sign::Plus,
            exp,
        }
    }

    pub fn neg_q_pow(exp: i64) -> ThetaArg {
        ThetaArg {
            sign: Sign::Minus,
            exp,
        }
    }

    pub fn one() -> ThetaArg {
        ThetaArg::q_pow(0)
    }

    pub fn minus_one() -> ThetaArg {
        ThetaArg::neg_q_pow(0)
    }

    pub fn mul(self, other: ThetaArg) -> ThetaArg {
        ThetaArg {
            sign: self.sign.mul(other.sign),
            exp: self.exp + other.exp,
        }
    }

    pub fn div(self, other: ThetaArg) -> ThetaArg {
        self.mul(other.inverse())
    }

    pub fn inverse(self) -> ThetaArg {
        ThetaArg {
            sign: self.sign,
            exp: -self.exp,
        }
    }

    /// -x: flips the sign token.
    pub fn negate(self) -> ThetaArg {
        ThetaArg {
            sign: self.sign.flip(),
            exp: self.exp,
        }
    }

    pub fn pow(self, k: i64) -> ThetaArg {
        ThetaArg {
            sign: self.sign.pow(k),
            exp: self.exp * k,
        }
    }

    /// The argument as an exact one-term series.
    pub fn monomial(self) -> QSeries {
        QSeries::monomial(self.coeff(), self.exp)
    }

    pub fn coeff(self) -> Coeff {
        match self.sign {
            Sign::Plus => Coeff::one(),
            Sign::Minus => -Coeff::one(),
        }
    }

    /// Multiply a series by this argument (one monomial).
    pub fn scale_series(self, s: &QSeries) -> QSeries {
        s.mul_monomial(&self.coeff(), self.exp)
    }
}

impl fmt::Display for ThetaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Minus { "-" } else { "" };
        match self.exp {
            0 => write!(f, "{s}1"),
            1 => write!(f, "{s}q"),
            e => write!(f, "{s}q^{e}"),
        }
    }
}

impl fmt::Debug for ThetaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for ThetaArg {
    type Err = QError;

    /// Accepts `1`, `-1`, `q`, `-q`, `q^5`, `-q^-3`.
    fn from_str(s: &str) -> Result<ThetaArg> {
        let t = s.trim();
        let (sign, rest) = match t.strip_prefix('-') {
            Some(r) => (Sign::Minus, r),
            None => (Sign::Plus, t),
        };
        let exp = match rest {
            "1" => 0,
            "q" => 1,
            r => r
                .strip_prefix("q^")
                .and_then(|e| e.parse::<i64>().ok())
                .ok_or_else(|| QError::Parse {
                    what: format!("bad theta argument `{s}`"),
                })?,
        };
        Ok(ThetaArg { sign, exp })
    }
}

// ---------------------------------------------------------------------------
// Pochhammer products
// ---------------------------------------------------------------------------

/// One factor 1 - x q^{km} as an exact polynomial.
fn poch_factor(x: ThetaArg, offset: i64) -> QSeries {
    QSeries::one().sub(&QSeries::monomial(x.coeff(), x.exp + offset))
}

/// (x; q^m)_n, exact. n = 0 is the empty product 1; negative argument
/// exponents give Laurent polynomials.
pub fn poch_finite(x: ThetaArg, m: i64, n: u32) -> QSeries {
    assert!(m >= 1, "pochhammer step must be >= 1");
    let mut acc = QSeries::one();
    for k in 0..n as i64 {
        acc = acc.mul(&poch_factor(x, k * m));
    }
    acc
}

/// (x; q^m)_n truncated at `cap` while accumulating. Falls back to the exact
/// product when some factor has a negative exponent (truncation would then
/// be unsound).
pub fn poch_finite_to(x: ThetaArg, m: i64, n: u32, cap: i64) -> QSeries {
    assert!(m >= 1, "pochhammer step must be >= 1");
    if x.exp < 0 {
        return poch_finite(x, m, n);
    }
    let mut acc = QSeries::one().truncated(cap);
    for k in 0..n as i64 {
        let e = x.exp + k * m;
        if e > cap {
            break; // remaining factors are 1 to this order
        }
        acc = acc.mul(&poch_factor(x, k * m)).truncated(cap);
    }
    acc
}

/// (x; q^m)_inf truncated to order `n`.
///
/// Factors with exponent beyond `n` are 1 to that order, which guarantees
/// termination. A factor 1 - q^0 makes the whole product identically zero
/// and is rejected.
pub fn poch_infinite(x: ThetaArg, m: i64, n: i64) -> Result<QSeries> {
    if m < 1 {
        return Err(QError::NonTerminating { step: m });
    }
    if x.sign == Sign::Plus && x.exp <= 0 && x.exp.rem_euclid(m) == 0 {
        return Err(QError::ZeroFactor { exp: x.exp, step: m });
    }
    // Finitely many factors have exponent <= 0; handle them exactly, then
    // truncate through the rest.
    let mut acc = QSeries::one();
    let mut k = 0i64;
    while x.exp + k * m <= 0 {
        acc = acc.mul(&poch_factor(x, k * m));
        k += 1;
    }
    // Laurent factors may have shifted the minimum exponent below zero; keep
    // enough working precision that the final truncation is still certified.
    let shift = acc.min_exp().unwrap_or(0).min(0);
    let cap = n - shift;
    acc = acc.truncated(cap);
    while x.exp + k * m <= cap {
        acc = acc.mul(&poch_factor(x, k * m)).truncated(cap);
        k += 1;
    }
    Ok(acc.truncated(n))
}

// ---------------------------------------------------------------------------
// Theta function j(x, q^m)
// ---------------------------------------------------------------------------

/// j(x, q^m) to order `n`, via the bilateral sum after exponent
/// normalization. Returns the exact zero series when x = q^{km}.
pub fn theta_j(x: ThetaArg, m: i64, n: i64) -> QSeries {
    assert!(m >= 1, "theta modulus must be >= 1");
    let a0 = x.exp.rem_euclid(m);
    let shift = (x.exp - a0) / m;
    if x.sign == Sign::Plus && a0 == 0 {
        return QSeries::zero_exact();
    }
    // j(q^{shift*m} xhat) = (-1)^shift q^{-m binom(shift,2)} xhat^{-shift} j(xhat)
    let xhat = ThetaArg {
        sign: x.sign,
        exp: a0,
    };
    let pre_sign = Sign::Minus.pow(shift).mul(x.sign.pow(shift));
    let pre_exp = -m * binom2(shift) - shift * a0;
    let pre = QSeries::monomial(
        match pre_sign {
            Sign::Plus => Coeff::one(),
            Sign::Minus => -Coeff::one(),
        },
        pre_exp,
    );
    let sum = theta_sum_normalized(xhat, m, n - pre_exp);
    pre.mul(&sum).truncated(n)
}

/// binom(n, 2) = n(n-1)/2, valid for any integer n.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Bilateral sum for 0 <= exp < m (and not the zero case): terms
/// (-x)^k q^{m*binom(k,2)} have nonnegative exponents that grow on both
/// tails.
fn theta_sum_normalized(x: ThetaArg, m: i64, n: i64) -> QSeries {
    let mut terms = Vec::new();
    let term_exp = |k: i64| m * binom2(k) + x.exp * k;
    let term_sign = |k: i64| Sign::Minus.pow(k).mul(x.sign.pow(k));
    for dir in [1i64, -1] {
        let mut k = if dir == 1 { 0 } else { -1 };
        loop {
            let e = term_exp(k);
            if e > n {
                // exponents are monotone in |k| past the first step on
                // each tail, since 0 <= x.exp < m
                break;
            }
            terms.push((
                e,
                match term_sign(k) {
                    Sign::Plus => Coeff::one(),
                    Sign::Minus => -Coeff::one(),
                },
            ));
            k += dir;
        }
    }
    QSeries::from_terms(terms, Order::UpTo(n))
}

/// Triple-product form of j(x, q^m); independent cross-check of `theta_j`.
pub fn theta_j_product(x: ThetaArg, m: i64, n: i64) -> Result<QSeries> {
    let a0 = x.exp.rem_euclid(m);
    let shift = (x.exp - a0) / m;
    if x.sign == Sign::Plus && a0 == 0 {
        return Ok(QSeries::zero_exact());
    }
    let xhat = ThetaArg {
        sign: x.sign,
        exp: a0,
    };
    let pre_sign = Sign::Minus.pow(shift).mul(x.sign.pow(shift));
    let pre_exp = -m * binom2(shift) - shift * a0;
    let w = n - pre_exp;
    let p1 = poch_infinite(xhat, m, w)?;
    let p2 = poch_infinite(
        ThetaArg {
            sign: xhat.sign,
            exp: m - a0,
        },
        m,
        w,
    )?;
    let p3 = poch_infinite(ThetaArg::q_pow(m), m, w)?;
    let prod = p1.mul(&p2).mul(&p3);
    Ok(QSeries::monomial(
        match pre_sign {
            Sign::Plus => Coeff::one(),
            Sign::Minus => -Coeff::one(),
        },
        pre_exp,
    )
    .mul(&prod)
    .truncated(n))
}

// ---------------------------------------------------------------------------
// J-symbols
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JKind {
    /// J_{a,m} = j(q^a, q^m)
    Plain,
    /// Jbar_{a,m} = j(-q^a, q^m)
    Bar,
    /// J_m = J_{m,3m} = (q^m; q^m)_inf; the `a` parameter is ignored.
    Single,
}

pub fn j_symbol(kind: JKind, a: i64, m: i64, n: i64) -> QSeries {
    match kind {
        JKind::Plain => theta_j(ThetaArg::q_pow(a), m, n),
        JKind::Bar => theta_j(ThetaArg::neg_q_pow(a), m, n),
        JKind::Single => theta_j(ThetaArg::q_pow(m), 3 * m, n),
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn q(e: i64) -> ThetaArg {
        ThetaArg::q_pow(e)
    }

    fn nq(e: i64) -> ThetaArg {
        ThetaArg::neg_q_pow(e)
    }

    #[test]
    fn poch_finite_hand_cases() {
        // (q; q)_2 = (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let p = poch_finite(q(1), 1, 2);
        assert_eq!(p.to_string(), "1 - q - q^2 + q^3");
        // empty product
        assert_eq!(poch_finite(nq(0), 1, 0), QSeries::one());
    }

    #[test]
    fn poch_minus_one_peels_factor_two() {
        // (-1; q)_j = 2 (-q; q)_{j-1}
        for j in 1..=8u32 {
            let lhs = poch_finite(nq(0), 1, j);
            let rhs = poch_finite(nq(1), 1, j - 1).scaled(&int(2));
            assert_eq!(lhs, rhs, "j = {j}");
        }
    }

    #[test]
    fn poch_finite_to_matches_exact() {
        for n in 0..=6u32 {
            let exact = poch_finite(q(1), 1, n).truncated(10);
            let trunc = poch_finite_to(q(1), 1, n, 10);
            assert!(exact.eq_upto(&trunc, 10).unwrap().is_equal());
        }
    }

    #[test]
    fn poch_infinite_euler() {
        // (q; q)_inf = 1 - q - q^2 + q^5 + q^7 - ... (pentagonal numbers)
        let p = poch_infinite(q(1), 1, 7).unwrap();
        assert_eq!(p.to_string(), "1 - q - q^2 + q^5 + q^7");
    }

    #[test]
    fn poch_infinite_distinct_parts() {
        // (-q; q)_inf = 1 + q + q^2 + 2q^3 + ...
        let p = poch_infinite(nq(1), 1, 3).unwrap();
        assert_eq!(p.to_string(), "1 + q + q^2 + 2*q^3");
    }

    #[test]
    fn poch_infinite_unit_check() {
        let n = 20;
        let p = poch_infinite(q(1), 1, n).unwrap();
        let inv = p.invert(n).unwrap();
        assert!(p.mul(&inv).eq_upto(&QSeries::one(), n).unwrap().is_equal());
    }

    #[test]
    fn poch_infinite_zero_factor() {
        assert_eq!(
            poch_infinite(q(0), 1, 5),
            Err(QError::ZeroFactor { exp: 0, step: 1 })
        );
        assert_eq!(
            poch_infinite(q(-4), 2, 5),
            Err(QError::ZeroFactor { exp: -4, step: 2 })
        );
    }

    #[test]
    fn theta_j_euler_via_modulus_three() {
        // j(q, q^3) = (q;q^3)(q^2;q^3)(q^3;q^3) = (q; q)_inf
        let j = theta_j(q(1), 3, 7);
        assert_eq!(j.to_string(), "1 - q - q^2 + q^5 + q^7");
    }

    #[test]
    fn theta_j_zero_case() {
        assert_eq!(theta_j(q(0), 1, 12), QSeries::zero_exact());
        assert_eq!(theta_j(q(10), 5, 12), QSeries::zero_exact());
    }

    #[test]
    fn theta_j_at_minus_one() {
        // j(-1, q) = 2 (-q; q)_inf^2 (q; q)_inf, constant term 2
        let j = theta_j(nq(0), 1, 2);
        assert_eq!(j.coeff(0), int(2));
        let prod = poch_infinite(nq(1), 1, 8)
            .unwrap()
            .mul(&poch_infinite(nq(1), 1, 8).unwrap())
            .mul(&poch_infinite(q(1), 1, 8).unwrap())
            .scaled(&int(2));
        assert!(theta_j(nq(0), 1, 8).eq_upto(&prod, 8).unwrap().is_equal());
    }

    #[test]
    fn theta_sum_equals_product_small_grid() {
        // exhaustive grid lives in the acceptance suite; spot-check here
        for m in 1..=4 {
            for a in -5..=5 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let x = ThetaArg { sign, exp: a };
                    let lhs = theta_j(x, m, 20);
                    let rhs = theta_j_product(x, m, 20).unwrap();
                    assert!(
                        lhs.eq_upto(&rhs, 20).unwrap().is_equal(),
                        "mismatch at x = {x}, m = {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn j_symbol_values() {
        assert_eq!(
            j_symbol(JKind::Plain, 1, 3, 7).to_string(),
            "1 - q - q^2 + q^5 + q^7"
        );
        // Jbar_{0,16} has constant term 2
        assert_eq!(j_symbol(JKind::Bar, 0, 16, 10).coeff(0), int(2));
        // J_{0,5} = j(1, q^5) = 0
        assert_eq!(j_symbol(JKind::Plain, 0, 5, 10), QSeries::zero_exact());
        // J_m = (q^m; q^m)_inf
        let jm = j_symbol(JKind::Single, 2, 2, 20);
        let euler = poch_infinite(q(2), 2, 20).unwrap();
        assert!(jm.eq_upto(&euler, 20).unwrap().is_equal());
    }

    #[test]
    fn j_shift_law() {
        // j(q^{nm} x, q^m) = (-1)^n q^{-m binom(n,2)} x^{-n} j(x, q^m)
        let m = 5;
        let x = nq(3);
        for nn in -3..=3i64 {
            let shifted = ThetaArg {
                sign: x.sign,
                exp: x.exp + nn * m,
            };
            let lhs = theta_j(shifted, m, 25);
            let pre = ThetaArg {
                sign: Sign::Minus.pow(nn).mul(x.sign.pow(nn)),
                exp: -m * binom2(nn) - nn * x.exp,
            };
            let rhs = pre.scale_series(&theta_j(x, m, 25 - pre.exp)).truncated(25);
            assert!(lhs.eq_upto(&rhs, 25).unwrap().is_equal(), "n = {nn}");
        }
    }

    #[test]
    fn j_inversion_law() {
        // j(x, q^m) = j(q^m/x, q^m) = -x j(1/x, q^m)
        for (x, m) in [(q(2), 7), (nq(3), 5), (q(-4), 9), (nq(0), 3)] {
            let lhs = theta_j(x, m, 25);
            let mid = theta_j(ThetaArg::q_pow(m).div(x), m, 25);
            let neg_x = x.negate();
            let rhs = neg_x
                .scale_series(&theta_j(x.inverse(), m, 25 - neg_x.exp))
                .truncated(25);
            assert!(lhs.eq_upto(&mid, 25).unwrap().is_equal(), "x={x} m={m} mid");
            assert!(lhs.eq_upto(&rhs, 25).unwrap().is_equal(), "x={x} m={m} rhs");
        }
    }

    #[test]
    fn falling_q_power_identity() {
        // (q^{-n}; q)_k = (q)_n / (q)_{n-k} * (-1)^k q^{binom(k,2) - nk}
        for n in 0..=10u32 {
            for k in 0..=n {
                let lhs = poch_finite(q(-(n as i64)), 1, k);
                let num = poch_finite(q(1), 1, n);
                let den = poch_finite(q(1), 1, n - k);
                let mono = QSeries::monomial(
                    if k % 2 == 0 { int(1) } else { int(-1) },
                    binom2(k as i64) - (n as i64) * (k as i64),
                );
                let rhs = num.mul(&mono).div_to(&den, 40).unwrap();
                assert!(lhs.eq_upto(&rhs, 40).unwrap().is_equal(), "n={n} k={k}");
            }
        }
    }
}
