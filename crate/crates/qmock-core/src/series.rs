//! Truncated Laurent series in q with exact rational coefficients.
//!
//! A `QSeries` stores a sparse map exponent -> coefficient together with a
//! certified `Order`: every coefficient at an exponent `<= order` is exactly
//! right, while exponents above the order are unknown. `Order::Exact` marks
//! polynomials built term-by-term, whose coefficients are known everywhere.
//!
//! Precision propagates pessimistically through arithmetic. Adding series
//! certified to orders M and N yields min(M, N); multiplying yields
//! min(a.order + b.min_exp, b.order + a.min_exp), since the unknown tail of
//! one factor first pollutes the product at its partner's lowest exponent.
//! Comparing two series past their certified window is an error, never a
//! silent truncation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QError, Result};

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// Convenience constructor for small rational coefficients.
pub fn rat(num: i64, den: i64) -> Coeff {
    Coeff::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Certified order
// ---------------------------------------------------------------------------

/// The largest exponent whose coefficient is certified correct.
///
/// Derived `Ord` puts `UpTo(n) < Exact` for every `n`, so `min` combines
/// precision windows directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    UpTo(i64),
    Exact,
}

impl Order {
    pub fn covers(self, exp: i64) -> bool {
        match self {
            Order::Exact => true,
            Order::UpTo(n) => exp <= n,
        }
    }

    pub fn shift(self, d: i64) -> Order {
        match self {
            Order::Exact => Order::Exact,
            Order::UpTo(n) => Order::UpTo(n + d),
        }
    }

    /// Order of a dilated series: every gap between m*n and the next known
    /// multiple is certified zero, so `UpTo(n)` maps to `UpTo(m*n + m - 1)`.
    pub fn dilate(self, m: i64) -> Order {
        match self {
            Order::Exact => Order::Exact,
            Order::UpTo(n) => Order::UpTo(m * n + m - 1),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact => write!(f, "exact"),
            Order::UpTo(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Exact => s.serialize_str("exact"),
            Order::UpTo(n) => s.serialize_i64(*n),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) if s == "exact" => Ok(Order::Exact),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Order::UpTo)
                .ok_or_else(|| D::Error::custom("order out of range")),
            other => Err(D::Error::custom(format!("bad order value: {other}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// QSeries
// ---------------------------------------------------------------------------

/// Truncated Laurent series in q over exact rationals.
///
/// Canonical form: no stored coefficient is zero and every stored exponent
/// lies within the certified order.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, Coeff>,
    order: Order,
}

/// Result of comparing two series over a precision window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqReport {
    Equal,
    FirstMismatch {
        exponent: i64,
        left: Coeff,
        right: Coeff,
    },
}

impl EqReport {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqReport::Equal)
    }
}

impl QSeries {
    // -- constructors --

    pub fn zero(order: Order) -> QSeries {
        QSeries {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    /// The identically-zero series, known at every exponent.
    pub fn zero_exact() -> QSeries {
        QSeries::zero(Order::Exact)
    }

    pub fn one() -> QSeries {
        QSeries::monomial(Coeff::one(), 0)
    }

    /// c * q^exp as an exact series.
    pub fn monomial(c: Coeff, exp: i64) -> QSeries {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        QSeries {
            coeffs,
            order: Order::Exact,
        }
    }

    pub fn constant(c: Coeff) -> QSeries {
        QSeries::monomial(c, 0)
    }

    /// Build from raw terms. Zero coefficients and terms beyond the order
    /// are dropped; the latter lie outside the certified window.
    pub fn from_terms<I: IntoIterator<Item = (i64, Coeff)>>(terms: I, order: Order) -> QSeries {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() || !order.covers(e) {
                continue;
            }
            let entry = coeffs.entry(e).or_insert_with(Coeff::zero);
            *entry += c;
        }
        coeffs.retain(|_, c: &mut Coeff| !c.is_zero());
        QSeries { coeffs, order }
    }

    // -- inspection --

    pub fn order(&self) -> Order {
        self.order
    }

    /// Lowest stored exponent, if any term is stored.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Lowest exponent at which this series can differ from zero: the first
    /// stored term, or just past the certified window for a truncated zero.
    /// `None` means the series is identically zero.
    pub fn effective_min_exp(&self) -> Option<i64> {
        self.min_exp().or(match self.order {
            Order::Exact => None,
            Order::UpTo(n) => Some(n + 1),
        })
    }

    pub fn coeff(&self, exp: i64) -> Coeff {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coeff)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    // -- arithmetic --

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &other.coeffs {
            let entry = coeffs.entry(e).or_insert_with(Coeff::zero);
            *entry += c;
        }
        coeffs.retain(|&e, c| order.covers(e) && !c.is_zero());
        QSeries { coeffs, order }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scaled(&self, c: &Coeff) -> QSeries {
        if c.is_zero() {
            // Scaling by an exact zero is exact regardless of self.
            return QSeries::zero_exact();
        }
        QSeries {
            coeffs: self.coeffs.iter().map(|(&e, k)| (e, k * c)).collect(),
            order: self.order,
        }
    }

    /// Multiply by c * q^exp.
    pub fn mul_monomial(&self, c: &Coeff, exp: i64) -> QSeries {
        if c.is_zero() {
            return QSeries::zero_exact();
        }
        QSeries {
            coeffs: self.coeffs.iter().map(|(&e, k)| (e + exp, k * c)).collect(),
            order: self.order.shift(exp),
        }
    }

    /// Cauchy product, truncated to the certified window of the result.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = mul_order(self, other);
        if self.is_zero() || other.is_zero() {
            return QSeries::zero(order);
        }
        let mut coeffs: BTreeMap<i64, Coeff> = BTreeMap::new();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if !order.covers(e) {
                    continue;
                }
                let entry = coeffs.entry(e).or_insert_with(Coeff::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries { coeffs, order }
    }

    /// Multiplicative inverse b with `self * b = 1` certified to order `n`.
    ///
    /// `b.min_exp = -self.min_exp`; the result carries enough terms that the
    /// product check holds even when `self` has a pole (negative min_exp).
    pub fn invert(&self, n: i64) -> Result<QSeries> {
        let m = match self.min_exp() {
            Some(m) => m,
            None => return Err(QError::ZeroLeadingTerm),
        };
        // Target order for the result, and for the normalized power series.
        let b_order = n.max(n - m);
        let w = b_order + m; // = max(n + m, n)
        if !self.order.covers(w + m) {
            return Err(QError::InsufficientPrecision {
                needed: w + m,
                have: self.order,
            });
        }
        // Normalize: self = q^m * (a_0 + a_1 q + ...) with a_0 != 0.
        let a = |k: i64| self.coeff(m + k);
        let a0 = a(0);
        let a0_inv = Coeff::one() / &a0;
        let len = (w.max(0) + 1) as usize;
        let mut g: Vec<Coeff> = Vec::with_capacity(len);
        g.push(a0_inv.clone());
        for k in 1..=w.max(0) {
            let mut s = Coeff::zero();
            for i in 1..=k {
                let ai = a(i);
                if !ai.is_zero() {
                    s += ai * &g[(k - i) as usize];
                }
            }
            g.push(-(&a0_inv * s));
        }
        Ok(QSeries::from_terms(
            g.into_iter().enumerate().map(|(k, c)| (k as i64 - m, c)),
            Order::UpTo(b_order),
        ))
    }

    /// self / den, certified at least to order `n`.
    pub fn div_to(&self, den: &QSeries, n: i64) -> Result<QSeries> {
        if self.is_zero() && self.order == Order::Exact {
            return Ok(QSeries::zero_exact());
        }
        let k = self
            .effective_min_exp()
            .expect("non-exact zero handled above");
        let inv = den.invert(n - k)?;
        let prod = self.mul(&inv);
        if !prod.order().covers(n) {
            return Err(QError::InsufficientPrecision {
                needed: n,
                have: prod.order(),
            });
        }
        Ok(prod)
    }

    /// Substitute q -> q^m (m >= 1).
    pub fn dilate(&self, m: i64) -> QSeries {
        assert!(m >= 1, "dilation factor must be >= 1");
        QSeries {
            coeffs: self.coeffs.iter().map(|(&e, c)| (m * e, c.clone())).collect(),
            order: self.order.dilate(m),
        }
    }

    /// Drop terms above `n` and cap the order at `n`.
    pub fn truncated(&self, n: i64) -> QSeries {
        let order = self.order.min(Order::UpTo(n));
        let coeffs = self
            .coeffs
            .range(..=n)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        QSeries { coeffs, order }
    }

    /// Compare coefficients for every exponent `<= n`.
    pub fn eq_upto(&self, other: &QSeries, n: i64) -> Result<EqReport> {
        for (s, _name) in [(self, "left"), (other, "right")] {
            if !s.order.covers(n) {
                return Err(QError::InsufficientPrecision {
                    needed: n,
                    have: s.order,
                });
            }
        }
        let mut exps: Vec<i64> = self
            .coeffs
            .range(..=n)
            .map(|(&e, _)| e)
            .chain(other.coeffs.range(..=n).map(|(&e, _)| e))
            .collect();
        exps.sort_unstable();
        exps.dedup();
        for e in exps {
            let l = self.coeff(e);
            let r = other.coeff(e);
            if l != r {
                return Ok(EqReport::FirstMismatch {
                    exponent: e,
                    left: l,
                    right: r,
                });
            }
        }
        Ok(EqReport::Equal)
    }
}

fn mul_order(a: &QSeries, b: &QSeries) -> Order {
    let channel = |o: Order, partner_min: Option<i64>| match (o, partner_min) {
        (Order::Exact, _) => Order::Exact,
        // Partner is identically zero: its tail contributes nothing.
        (_, None) => Order::Exact,
        (Order::UpTo(n), Some(m)) => Order::UpTo(n + m),
    };
    channel(a.order, b.effective_min_exp()).min(channel(b.order, a.effective_min_exp()))
}

impl std::ops::Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl std::ops::Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

/// Evaluate `f` at increasing working precision until the result covers
/// `target`, then truncate to exactly `target`. Retries only on precision
/// shortfalls; structural errors propagate immediately.
pub fn compute_to<F>(target: i64, mut f: F) -> Result<QSeries>
where
    F: FnMut(i64) -> Result<QSeries>,
{
    let mut slack: i64 = 8;
    loop {
        match f(target + slack) {
            Ok(s) if s.order().covers(target) => return Ok(s.truncated(target)),
            Ok(s) => {
                if slack >= (1 << 16) {
                    return Err(QError::InsufficientPrecision {
                        needed: target,
                        have: s.order(),
                    });
                }
                slack *= 2;
            }
            Err(QError::InsufficientPrecision { .. }) if slack < (1 << 16) => slack *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// Stabilized limits of the even- and odd-indexed partial sums of a
/// non-convergent series (the engine's reading of a starred sum): each
/// subsequence must repeat its truncation twice in a row before it counts
/// as stable.
pub fn starred_partial_limits(
    mut row: impl FnMut(usize, i64) -> QSeries,
    order: i64,
    cap: usize,
    label: &str,
) -> Result<(QSeries, QSeries)> {
    let mut partial = QSeries::zero(Order::UpTo(order));
    let mut even: Vec<QSeries> = Vec::new();
    let mut odd: Vec<QSeries> = Vec::new();
    let stable = |v: &[QSeries]| {
        v.len() >= 3 && v[v.len() - 1] == v[v.len() - 2] && v[v.len() - 2] == v[v.len() - 3]
    };
    let mut n = 0usize;
    loop {
        partial = partial.add(&row(n, order)).truncated(order);
        if n % 2 == 0 {
            even.push(partial.clone());
        } else {
            odd.push(partial.clone());
        }
        if stable(&even) && stable(&odd) {
            return Ok((
                even.last().expect("nonempty").clone(),
                odd.last().expect("nonempty").clone(),
            ));
        }
        n += 1;
        if n > cap {
            return Err(QError::StabilizationFailure {
                id: label.into(),
                cap,
            });
        }
    }
}

// ---------------------------------------------------------------------------
// Textual form: `c*q^e` terms joined by ` + ` / ` - `
// ---------------------------------------------------------------------------

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

// Debug shows the textual form plus the certified order.
impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (order {})", self.order)
    }
}

impl FromStr for QSeries {
    type Err = QError;

    /// Parse the textual form back into an exact series.
    fn from_str(s: &str) -> Result<QSeries> {
        let s = s.trim();
        if s.is_empty() {
            return Err(QError::Parse {
                what: "empty series text".into(),
            });
        }
        if s == "0" {
            return Ok(QSeries::zero_exact());
        }
        let mut terms = Vec::new();
        // Split on " + " and " - "; a leading '-' binds to the first term.
        let (mut rest, mut sign) = match s.strip_prefix('-') {
            Some(r) => (r.trim_start(), -1i64),
            None => (s, 1i64),
        };
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(p), Some(m)) if p < m => (&rest[..p], Some((&rest[p + 3..], 1))),
                (Some(_), Some(m)) => (&rest[..m], Some((&rest[m + 3..], -1))),
                (Some(p), None) => (&rest[..p], Some((&rest[p + 3..], 1))),
                (None, Some(m)) => (&rest[..m], Some((&rest[m + 3..], -1))),
                (None, None) => (rest, None),
            };
            terms.push(parse_term(term.trim(), sign)?);
            match next {
                Some((r, sg)) => {
                    rest = r;
                    sign = sg;
                }
                None => break,
            }
        }
        Ok(QSeries::from_terms(terms, Order::Exact))
    }
}

fn parse_term(t: &str, sign: i64) -> Result<(i64, Coeff)> {
    let bad = |w: &str| QError::Parse {
        what: format!("{w} in term `{t}`"),
    };
    let (coeff_part, q_part) = match t.find('q') {
        Some(0) => (None, Some(&t[..])),
        Some(i) => {
            let c = t[..i].trim().trim_end_matches('*').trim();
            (Some(c), Some(&t[i..]))
        }
        None => (Some(t), None),
    };
    let mut coeff = match coeff_part {
        None | Some("") => Coeff::one(),
        Some(c) => parse_rational(c).ok_or_else(|| bad("bad coefficient"))?,
    };
    if sign < 0 {
        coeff = -coeff;
    }
    let exp = match q_part {
        None => 0,
        Some("q") => 1,
        Some(qp) => {
            let e = qp.strip_prefix("q^").ok_or_else(|| bad("bad power"))?;
            e.parse::<i64>().map_err(|_| bad("bad exponent"))?
        }
    };
    Ok((exp, coeff))
}

fn parse_rational(s: &str) -> Option<Coeff> {
    match s.split_once('/') {
        Some((n, d)) => Some(Coeff::new(
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        )),
        None => Some(Coeff::from_integer(s.trim().parse::<BigInt>().ok()?)),
    }
}

// ---------------------------------------------------------------------------
// Record form used in reports
// ---------------------------------------------------------------------------

/// Serialized record: `min_exp`, `order`, and `[exponent, "num/den"]` pairs
/// in increasing exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub min_exp: i64,
    pub order: Order,
    pub terms: Vec<(i64, String)>,
}

impl From<&QSeries> for SeriesRecord {
    fn from(s: &QSeries) -> SeriesRecord {
        let min_exp = s.min_exp().unwrap_or(match s.order {
            Order::Exact => 0,
            Order::UpTo(n) => n + 1,
        });
        SeriesRecord {
            min_exp,
            order: s.order,
            terms: s.terms().map(|(e, c)| (e, c.to_string())).collect(),
        }
    }
}

impl TryFrom<&SeriesRecord> for QSeries {
    type Error = QError;
    fn try_from(r: &SeriesRecord) -> Result<QSeries> {
        let mut terms = Vec::with_capacity(r.terms.len());
        for (e, c) in &r.terms {
            let coeff = parse_rational(c).ok_or_else(|| QError::Parse {
                what: format!("bad rational `{c}`"),
            })?;
            terms.push((*e, coeff));
        }
        Ok(QSeries::from_terms(terms, r.order))
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)], order: Order) -> QSeries {
        QSeries::from_terms(terms.iter().map(|&(e, c)| (e, int(c))), order)
    }

    #[test]
    fn add_cancels_and_takes_min_order() {
        // (1 - q) + q = 1 at order 10
        let a = poly(&[(0, 1), (1, -1)], Order::UpTo(10));
        let b = poly(&[(1, 1)], Order::UpTo(10));
        let s = a.add(&b);
        assert_eq!(s, poly(&[(0, 1)], Order::UpTo(10)));

        // q^-1 + 0 = q^-1 at order 5
        let a = poly(&[(-1, 1)], Order::UpTo(5));
        let s = a.add(&QSeries::zero(Order::UpTo(5)));
        assert_eq!(s, poly(&[(-1, 1)], Order::UpTo(5)));

        // (1+q, order 3) + (1+q^2, order 8) = 2 + q + q^2 at order 3
        let a = poly(&[(0, 1), (1, 1)], Order::UpTo(3));
        let b = poly(&[(0, 1), (2, 1)], Order::UpTo(8));
        let s = a.add(&b);
        assert_eq!(s, poly(&[(0, 2), (1, 1), (2, 1)], Order::UpTo(3)));
    }

    #[test]
    fn mul_telescopes_geometric() {
        // (1 - q) * (1 + q + ... + q^N) = 1 - q^{N+1}
        let n = 12i64;
        let a = poly(&[(0, 1), (1, -1)], Order::Exact);
        let b = QSeries::from_terms((0..=n).map(|e| (e, int(1))), Order::Exact);
        let p = a.mul(&b);
        assert_eq!(p, poly(&[(0, 1), (n + 1, -1)], Order::Exact));
    }

    #[test]
    fn mul_exponents_add() {
        let a = QSeries::monomial(int(1), -1);
        let b = QSeries::monomial(int(1), 1);
        assert_eq!(a.mul(&b), QSeries::one());
    }

    #[test]
    fn mul_hand_expansion() {
        // (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let a = poly(&[(0, 1), (1, -1)], Order::Exact);
        let b = poly(&[(0, 1), (2, -1)], Order::Exact);
        assert_eq!(a.mul(&b), poly(&[(0, 1), (1, -1), (2, -1), (3, 1)], Order::Exact));
    }

    #[test]
    fn mul_order_propagation() {
        // tail of b pollutes the product starting at a.min_exp + b.order + 1
        let a = poly(&[(-2, 1)], Order::Exact);
        let b = poly(&[(0, 1)], Order::UpTo(5));
        assert_eq!(a.mul(&b).order(), Order::UpTo(3));
    }

    #[test]
    fn invert_geometric() {
        let a = poly(&[(0, 1), (1, -1)], Order::Exact);
        let inv = a.invert(4).unwrap();
        assert_eq!(
            inv,
            QSeries::from_terms((0..=4).map(|e| (e, int(1))), Order::UpTo(4))
        );
    }

    #[test]
    fn invert_constant() {
        let two = QSeries::constant(int(2));
        let inv = two.invert(4).unwrap();
        assert_eq!(inv.coeff(0), rat(1, 2));
        assert_eq!(inv.num_terms(), 1);
    }

    #[test]
    fn invert_shifted_unit() {
        // 1 / (q^2 (1-q)) = q^-2 + q^-1 + 1 + q + q^2 + q^3 to order 3
        let a = poly(&[(2, 1), (3, -1)], Order::Exact);
        let inv = a.invert(3).unwrap();
        assert_eq!(
            inv,
            QSeries::from_terms((-2..=3).map(|e| (e, int(1))), Order::UpTo(3))
        );
        // and the defining product holds through the window
        let prod = a.mul(&inv);
        assert!(prod.eq_upto(&QSeries::one(), 3).unwrap().is_equal());
    }

    #[test]
    fn invert_zero_is_error() {
        let z = QSeries::zero(Order::UpTo(10));
        assert_eq!(z.invert(3), Err(QError::ZeroLeadingTerm));
    }

    #[test]
    fn invert_with_pole_covers_target() {
        // a has min_exp -2; product must still be certified to the target.
        let a = poly(&[(-2, 1), (0, -1)], Order::Exact);
        let inv = a.invert(6).unwrap();
        let prod = a.mul(&inv);
        assert!(prod.order().covers(6));
        assert!(prod.eq_upto(&QSeries::one(), 6).unwrap().is_equal());
    }

    #[test]
    fn dilate_examples() {
        let a = poly(&[(0, 1), (1, 1)], Order::Exact);
        assert_eq!(a.dilate(2), poly(&[(0, 1), (2, 1)], Order::Exact));

        let b = poly(&[(-1, 1), (1, -1)], Order::Exact);
        assert_eq!(b.dilate(3), poly(&[(-3, 1), (3, -1)], Order::Exact));

        let s = poly(&[(0, 1), (1, 1), (2, 1)], Order::UpTo(9));
        assert_eq!(s.dilate(2).dilate(3), s.dilate(6));
        assert_eq!(s.dilate(2).order(), Order::UpTo(19));
    }

    #[test]
    fn eq_upto_windows() {
        let a = poly(&[(0, 1), (1, 1)], Order::UpTo(8));
        let b = poly(&[(0, 1), (1, 1), (6, 1)], Order::UpTo(8));
        assert!(a.eq_upto(&b, 5).unwrap().is_equal());
        assert_eq!(
            a.eq_upto(&b, 6).unwrap(),
            EqReport::FirstMismatch {
                exponent: 6,
                left: int(0),
                right: int(1)
            }
        );

        let c = poly(&[(0, 1), (1, 2)], Order::UpTo(8));
        assert_eq!(
            a.eq_upto(&c, 5).unwrap(),
            EqReport::FirstMismatch {
                exponent: 1,
                left: int(1),
                right: int(2)
            }
        );
    }

    #[test]
    fn eq_upto_requires_precision() {
        let a = poly(&[(0, 1)], Order::UpTo(4));
        let b = poly(&[(0, 1)], Order::UpTo(9));
        assert!(matches!(
            a.eq_upto(&b, 5),
            Err(QError::InsufficientPrecision { needed: 5, .. })
        ));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let s = QSeries::from_terms(
            vec![(-2, rat(1, 2)), (0, int(-3)), (1, int(1)), (4, rat(-7, 3))],
            Order::Exact,
        );
        let text = s.to_string();
        assert_eq!(text, "1/2*q^-2 - 3 + q - 7/3*q^4");
        let back: QSeries = text.parse().unwrap();
        assert_eq!(back, s);

        assert_eq!(QSeries::zero_exact().to_string(), "0");
        assert_eq!("0".parse::<QSeries>().unwrap(), QSeries::zero_exact());
    }

    #[test]
    fn record_round_trip() {
        let s = poly(&[(-1, 2), (3, -5)], Order::UpTo(7));
        let rec = SeriesRecord::from(&s);
        assert_eq!(rec.min_exp, -1);
        let json = serde_json::to_string(&rec).unwrap();
        let rec2: SeriesRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(rec, rec2);
        assert_eq!(QSeries::try_from(&rec2).unwrap(), s);

        let exact = poly(&[(0, 1)], Order::Exact);
        let rec = SeriesRecord::from(&exact);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"exact\""));
        let rec2: SeriesRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(QSeries::try_from(&rec2).unwrap(), exact);
    }
}
