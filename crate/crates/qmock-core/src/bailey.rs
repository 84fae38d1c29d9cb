//! Bailey pairs as executable sequence pairs.
//!
//! A Bailey pair relative to (a, Q), with Q = q^step and a in {1, Q}, is a
//! pair of sequences (alpha_n, beta_n) satisfying
//!
//!   beta_n = sum_{k=0}^{n} alpha_k / [(Q; Q)_{n-k} (aQ; Q)_{n+k}]
//!
//! or equivalently
//!
//!   alpha_n = (1 - a Q^{2n}) sum_{j=0}^{n}
//!               (aQ; Q)_{n+j-1} (-1)^{n-j} Q^{binom(n-j,2)} beta_j / (Q; Q)_{n-j}.
//!
//! Sequences are lazy: each evaluator takes (n, order) and produces the n-th
//! series certified at least to that order, so high-precision checks never
//! force precomputation.
//!
//! The module carries the Bailey lemma step `bailey_step` with rho
//! specializations (finite +/- q^k, a limit to infinity, or the joint
//! (sqrt(q), -sqrt(q)) pair, which only ever enters through the products
//! (rho1)_n (rho2)_n = (Q; Q^2)_n so no fractional exponents arise), the
//! limiting form `limit_identity`, four pair constructors (`thm_main1`,
//! `thm_main2`, `thm_main3`, `thm_main1_inverse`), a change of base to
//! (1, Q^2), and a catalog of the pairs used by the identity machinery.

use std::sync::Arc;

use num_traits::One;

use crate::error::{QError, Result};
use crate::qproducts::{binom2, poch_finite, poch_finite_to, Sign, ThetaArg};
use crate::series::{compute_to, int, Coeff, EqReport, Order, QSeries};

// ---------------------------------------------------------------------------
// Core types
// ---------------------------------------------------------------------------

/// Base of the pair relation: a = 1 or a = Q, relative to Q = q^step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairBase {
    pub a_is_q: bool,
    pub step: i64,
}

impl PairBase {
    pub fn one() -> PairBase {
        PairBase {
            a_is_q: false,
            step: 1,
        }
    }

    pub fn q() -> PairBase {
        PairBase {
            a_is_q: true,
            step: 1,
        }
    }

    /// Exponent of aQ as a power of q.
    pub fn aq_exp(self) -> i64 {
        self.step * (1 + self.a_is_q as i64)
    }

    /// Exponent of a as a power of q.
    pub fn a_exp(self) -> i64 {
        self.step * self.a_is_q as i64
    }

    pub fn label(self) -> String {
        let a = if self.a_is_q { "q" } else { "1" };
        if self.step == 1 {
            format!("({a}, q)")
        } else {
            format!("({a}, q^{})", self.step)
        }
    }
}

pub type SeqFn = Arc<dyn Fn(usize, i64) -> QSeries + Send + Sync>;

/// A Bailey pair with lazily evaluated sequences.
#[derive(Clone)]
pub struct BaileyPair {
    pub base: PairBase,
    pub provenance: String,
    alpha: SeqFn,
    beta: SeqFn,
}

impl BaileyPair {
    pub fn new(
        base: PairBase,
        provenance: impl Into<String>,
        alpha: impl Fn(usize, i64) -> QSeries + Send + Sync + 'static,
        beta: impl Fn(usize, i64) -> QSeries + Send + Sync + 'static,
    ) -> BaileyPair {
        BaileyPair {
            base,
            provenance: provenance.into(),
            alpha: Arc::new(alpha),
            beta: Arc::new(beta),
        }
    }

    pub fn alpha(&self, n: usize, order: i64) -> QSeries {
        (self.alpha)(n, order)
    }

    pub fn beta(&self, n: usize, order: i64) -> QSeries {
        (self.beta)(n, order)
    }

    /// Multiply both sequences by an exact constant.
    pub fn scaled(&self, c: Coeff) -> BaileyPair {
        let (a, b) = (self.alpha.clone(), self.beta.clone());
        let (ca, cb) = (c.clone(), c);
        BaileyPair {
            base: self.base,
            provenance: format!("{} (scaled)", self.provenance),
            alpha: Arc::new(move |n, o| a(n, o).scaled(&ca)),
            beta: Arc::new(move |n, o| b(n, o).scaled(&cb)),
        }
    }

    /// Substitute q -> q^m in both sequences and in the base.
    pub fn dilated(&self, m: i64) -> BaileyPair {
        assert!(m >= 1);
        if m == 1 {
            return self.clone();
        }
        let (a, b) = (self.alpha.clone(), self.beta.clone());
        BaileyPair {
            base: PairBase {
                a_is_q: self.base.a_is_q,
                step: self.base.step * m,
            },
            provenance: format!("{} (q -> q^{m})", self.provenance),
            alpha: Arc::new(move |n, o| a(n, o.div_euclid(m)).dilate(m)),
            beta: Arc::new(move |n, o| b(n, o.div_euclid(m)).dilate(m)),
        }
    }
}

impl std::fmt::Debug for BaileyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BaileyPair[{} rel {}]", self.provenance, self.base.label())
    }
}

/// Outcome of a pair-relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCheck {
    Equal,
    FirstMismatch {
        n: usize,
        exponent: i64,
        left: Coeff,
        right: Coeff,
    },
}

impl PairCheck {
    pub fn is_equal(&self) -> bool {
        matches!(self, PairCheck::Equal)
    }
}

// ---------------------------------------------------------------------------
// The pair relation and its inverse
// ---------------------------------------------------------------------------

fn poch_q(step: i64, n: usize) -> QSeries {
    poch_finite(ThetaArg::q_pow(step), step, n as u32)
}

fn poch_q_to(step: i64, n: usize, cap: i64) -> QSeries {
    poch_finite_to(ThetaArg::q_pow(step), step, n as u32, cap)
}

fn poch_aq(base: PairBase, n: usize) -> QSeries {
    poch_finite(ThetaArg::q_pow(base.aq_exp()), base.step, n as u32)
}

/// beta_n from the alpha sequence via the defining relation.
pub fn beta_from_alpha(alpha: &SeqFn, base: PairBase, n: usize, order: i64) -> QSeries {
    compute_to(order, |w| {
        let mut sum = QSeries::zero(Order::UpTo(w));
        for k in 0..=n {
            let den = poch_q(base.step, n - k).mul(&poch_aq(base, n + k));
            let term = alpha(k, w).div_to(&den, w)?;
            sum = sum.add(&term);
        }
        Ok(sum)
    })
    .expect("pair relation denominators are exact nonzero polynomials")
}

/// alpha_n from the beta sequence via the inverted relation. The n = 0 case
/// reduces to alpha_0 = beta_0.
pub fn alpha_from_beta(beta: &SeqFn, base: PairBase, n: usize, order: i64) -> QSeries {
    if n == 0 {
        return beta(0, order);
    }
    compute_to(order, |w| {
        let step = base.step;
        // 1 - a Q^{2n}
        let front = QSeries::one().sub(&QSeries::monomial(
            Coeff::one(),
            base.a_exp() + 2 * step * n as i64,
        ));
        let mut sum = QSeries::zero(Order::UpTo(w));
        for j in 0..=n {
            let m = n - j;
            let sign = if m % 2 == 0 { int(1) } else { int(-1) };
            let mono = QSeries::monomial(sign, step * binom2(m as i64));
            let num = poch_aq(base, n + j - 1).mul(&mono).mul(&beta(j, w));
            let term = num.div_to(&poch_q(step, m), w)?;
            sum = sum.add(&term);
        }
        Ok(front.mul(&sum))
    })
    .expect("pair relation denominators are exact nonzero polynomials")
}

/// Check the defining relation for n <= n_max at the given order.
pub fn verify_pair(pair: &BaileyPair, n_max: usize, order: i64) -> Result<PairCheck> {
    for n in 0..=n_max {
        let stored = pair.beta(n, order);
        let derived = beta_from_alpha(&pair.alpha, pair.base, n, order);
        match stored.eq_upto(&derived, order)? {
            EqReport::Equal => {}
            EqReport::FirstMismatch {
                exponent,
                left,
                right,
            } => {
                return Ok(PairCheck::FirstMismatch {
                    n,
                    exponent,
                    left,
                    right,
                })
            }
        }
    }
    Ok(PairCheck::Equal)
}

/// Sequencewise equality of two pairs to the given order.
pub fn pairs_equal(a: &BaileyPair, b: &BaileyPair, n_max: usize, order: i64) -> Result<PairCheck> {
    for n in 0..=n_max {
        for (l, r) in [
            (a.alpha(n, order), b.alpha(n, order)),
            (a.beta(n, order), b.beta(n, order)),
        ] {
            if let EqReport::FirstMismatch {
                exponent,
                left,
                right,
            } = l.eq_upto(&r, order)?
            {
                return Ok(PairCheck::FirstMismatch {
                    n,
                    exponent,
                    left,
                    right,
                });
            }
        }
    }
    Ok(PairCheck::Equal)
}

// ---------------------------------------------------------------------------
// Rho specializations and the Bailey lemma
// ---------------------------------------------------------------------------

/// One rho slot of the Bailey lemma. `SqrtPair` stands for the joint
/// specialization (rho1, rho2) = (sqrt(Q), -sqrt(Q)) and must occupy both
/// slots; it never appears alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoParam {
    Finite(ThetaArg),
    Infinity,
    SqrtPair,
}

impl std::fmt::Display for RhoParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RhoParam::Finite(t) => write!(f, "{t}"),
            RhoParam::Infinity => write!(f, "inf"),
            RhoParam::SqrtPair => write!(f, "sqrt-pair"),
        }
    }
}

/// Validated joint specialization of both rho slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RhoPair {
    Both(ThetaArg, ThetaArg),
    OneFinite(ThetaArg),
    BothInfinite,
    Sqrt,
}

fn classify_rho(rho1: RhoParam, rho2: RhoParam) -> Result<RhoPair> {
    match (rho1, rho2) {
        (RhoParam::SqrtPair, RhoParam::SqrtPair) => Ok(RhoPair::Sqrt),
        (RhoParam::SqrtPair, _) | (_, RhoParam::SqrtPair) => Err(QError::PreconditionFailed {
            what: "sqrt-pair rho must occupy both slots jointly".into(),
        }),
        (RhoParam::Finite(a), RhoParam::Finite(b)) => Ok(RhoPair::Both(a, b)),
        (RhoParam::Finite(a), RhoParam::Infinity) => Ok(RhoPair::OneFinite(a)),
        (RhoParam::Infinity, RhoParam::Finite(b)) => Ok(RhoPair::OneFinite(b)),
        (RhoParam::Infinity, RhoParam::Infinity) => Ok(RhoPair::BothInfinite),
    }
}

/// A factor (x; Q)_n or (x; Q)_inf vanishes iff x = q^{k step} with k <= 0.
fn vanishes(x: ThetaArg, step: i64) -> bool {
    x.sign == Sign::Plus && x.exp <= 0 && x.exp.rem_euclid(step) == 0
}

fn check_generic(base: PairBase, rho: RhoPair) -> Result<()> {
    let aq = ThetaArg::q_pow(base.aq_exp());
    let step = base.step;
    let check = |arg: ThetaArg, what: &str| -> Result<()> {
        if vanishes(arg, step) {
            return Err(QError::NonGenericRho {
                factor: format!("{what} = ({arg}; q^{step})_n"),
            });
        }
        Ok(())
    };
    match rho {
        RhoPair::BothInfinite | RhoPair::Sqrt => Ok(()),
        RhoPair::OneFinite(r) => {
            check(r, "(rho)_n")?;
            check(aq.div(r), "(aq/rho)_n")
        }
        RhoPair::Both(r1, r2) => {
            check(r1, "(rho1)_n")?;
            check(r2, "(rho2)_n")?;
            check(aq.div(r1), "(aq/rho1)_n")?;
            check(aq.div(r2), "(aq/rho2)_n")?;
            check(aq.div(r1).div(r2), "(aq/rho1 rho2)_n")
        }
    }
}

/// The lhs weight (rho1)_n (rho2)_n (aQ/rho1 rho2)^n of the limiting form,
/// with the infinite-rho limit (rho)_n (c/rho)^n -> (-1)^n c^n Q^{binom(n,2)}.
/// Pochhammers are truncated at `cap`: the weight only ever multiplies
/// series carried to that working order, and the exact polynomials grow
/// quadratically in degree.
fn lhs_weight(base: PairBase, rho: RhoPair, n: usize, cap: i64) -> QSeries {
    let step = base.step;
    let aq = ThetaArg::q_pow(base.aq_exp());
    let ni = n as i64;
    match rho {
        RhoPair::BothInfinite => {
            // a^n Q^{n^2}
            QSeries::monomial(Coeff::one(), base.a_exp() * ni + step * ni * ni)
        }
        RhoPair::OneFinite(r) => {
            let c = aq.div(r);
            let mono = c
                .pow(ni)
                .mul(ThetaArg::q_pow(step * binom2(ni)))
                .monomial()
                .scaled(&if n % 2 == 0 { int(1) } else { int(-1) });
            // the monomial may shift deeply negative or positive; keep the
            // pochhammer certified far enough either way
            poch_finite_to(r, step, n as u32, cap + mono_shift_margin(&mono)).mul(&mono)
        }
        RhoPair::Both(r1, r2) => {
            let c = aq.div(r1).div(r2);
            let mono = c.pow(ni).monomial();
            let m = cap + mono_shift_margin(&mono);
            poch_finite_to(r1, step, n as u32, m)
                .mul(&poch_finite_to(r2, step, n as u32, m))
                .mul(&mono)
        }
        RhoPair::Sqrt => {
            // (Q; Q^2)_n (-a)^n
            let neg_a = ThetaArg::neg_q_pow(base.a_exp());
            let mono = neg_a.pow(ni).monomial();
            poch_finite_to(
                ThetaArg::q_pow(step),
                2 * step,
                n as u32,
                cap + mono_shift_margin(&mono),
            )
            .mul(&mono)
        }
    }
}

fn mono_shift_margin(mono: &QSeries) -> i64 {
    mono.min_exp().map(|e| e.abs()).unwrap_or(0)
}

/// Pole depth of a numerator: how far below q^0 its terms reach.
fn pole_depth(s: &QSeries) -> i64 {
    s.effective_min_exp().map(|e| e.min(0).abs()).unwrap_or(0)
}

/// Divide by a unit-leading product, targeting whatever order the numerator
/// actually carries (at most `w`) and building the denominator deep enough
/// to cover the numerator's pole. The enclosing `compute_to` loop raises `w`
/// until the result covers its caller's window.
fn div_by_unit(num: QSeries, den: impl Fn(i64) -> QSeries, w: i64) -> Result<QSeries> {
    let avail = match num.order() {
        Order::Exact => w,
        Order::UpTo(n) => n.min(w),
    };
    let cap = avail + pole_depth(&num);
    num.div_to(&den(cap), avail)
}

/// Denominator (aQ/rho1)_n (aQ/rho2)_n (1 for infinite slots; the paired
/// product (a^2 Q; Q^2)_n for the sqrt case), truncated at `cap`.
fn alpha_denominator(base: PairBase, rho: RhoPair, n: usize, cap: i64) -> QSeries {
    let step = base.step;
    let aq = ThetaArg::q_pow(base.aq_exp());
    match rho {
        RhoPair::BothInfinite => QSeries::one(),
        RhoPair::OneFinite(r) => poch_finite_to(aq.div(r), step, n as u32, cap),
        RhoPair::Both(r1, r2) => poch_finite_to(aq.div(r1), step, n as u32, cap)
            .mul(&poch_finite_to(aq.div(r2), step, n as u32, cap)),
        RhoPair::Sqrt => poch_finite_to(
            ThetaArg::q_pow(2 * base.a_exp() + step),
            2 * step,
            n as u32,
            cap,
        ),
    }
}

/// Apply the Bailey lemma: (alpha, beta) -> (alpha', beta'),
///
///   alpha'_n = (rho1)_n (rho2)_n (aQ/rho1 rho2)^n
///              / [(aQ/rho1)_n (aQ/rho2)_n] * alpha_n
///   beta'_n  = sum_{k=0}^{n} (rho1)_k (rho2)_k (aQ/rho1 rho2)_{n-k}
///              (aQ/rho1 rho2)^k / [(aQ/rho1)_n (aQ/rho2)_n (Q)_{n-k}] beta_k
///
/// with infinite slots taken as limits.
pub fn bailey_step(pair: &BaileyPair, rho1: RhoParam, rho2: RhoParam) -> Result<BaileyPair> {
    let rho = classify_rho(rho1, rho2)?;
    check_generic(pair.base, rho)?;
    let base = pair.base;
    let step = base.step;
    let aq = ThetaArg::q_pow(base.aq_exp());

    let seed_alpha = pair.alpha.clone();
    let alpha = move |n: usize, order: i64| {
        compute_to(order, |w| {
            let num = lhs_weight(base, rho, n, w).mul(&seed_alpha(n, w));
            div_by_unit(num, |cap| alpha_denominator(base, rho, n, cap), w)
        })
        .expect("generic rho keeps lemma denominators invertible")
    };

    let seed_beta = pair.beta.clone();
    let beta = move |n: usize, order: i64| {
        compute_to(order, |w| {
            let mut sum = QSeries::zero(Order::UpTo(w));
            for k in 0..=n {
                // (aQ/rho1 rho2)_{n-k} degenerates to 1 when a slot is infinite.
                let middle = match rho {
                    RhoPair::Both(r1, r2) => {
                        poch_finite_to(aq.div(r1).div(r2), step, (n - k) as u32, w)
                    }
                    RhoPair::Sqrt => poch_finite_to(
                        ThetaArg::neg_q_pow(base.a_exp()),
                        step,
                        (n - k) as u32,
                        w,
                    ),
                    _ => QSeries::one(),
                };
                let num = lhs_weight(base, rho, k, w).mul(&middle).mul(&seed_beta(k, w));
                let term = div_by_unit(num, |cap| poch_q_to(step, n - k, cap), w)?;
                sum = sum.add(&term);
            }
            div_by_unit(sum, |cap| alpha_denominator(base, rho, n, cap), w)
        })
        .expect("generic rho keeps lemma denominators invertible")
    };

    Ok(BaileyPair::new(
        base,
        format!("step[{rho1}, {rho2}]({})", pair.provenance),
        alpha,
        beta,
    ))
}

// ---------------------------------------------------------------------------
// Limiting form
// ---------------------------------------------------------------------------

/// Hard cap on the number of summed rows before a non-convergent sum is
/// reported (a starred sum reaching this entry point, typically).
const LIMIT_ROW_CAP: usize = 4096;

fn sum_rows(
    order: i64,
    label: &str,
    mut row: impl FnMut(usize, i64) -> QSeries,
) -> Result<QSeries> {
    let mut sum = QSeries::zero(Order::UpTo(order));
    let mut beyond = 0usize;
    let mut in_window = 0usize;
    // a convergent row sequence leaves the window after O(order) rows at
    // worst (linear exponent growth); rows stuck inside it signal a starred
    // sum reaching the plain entry point
    let stuck_cap = (2 * order.unsigned_abs() as usize).max(64) + 16;
    let mut n = 0usize;
    loop {
        let r = row(n, order);
        match r.effective_min_exp() {
            Some(e) if e <= order => {
                beyond = 0;
                in_window += 1;
            }
            _ => beyond += 1,
        }
        sum = sum.add(&r);
        if beyond >= 3 && n >= 3 {
            return Ok(sum);
        }
        n += 1;
        if in_window > stuck_cap || n > LIMIT_ROW_CAP {
            return Err(QError::NonConvergent { what: label.into() });
        }
    }
}

/// Both sides of the limiting form of the Bailey lemma:
///
///   lhs = sum_n (rho1)_n (rho2)_n (aQ/rho1 rho2)^n beta_n
///   rhs = (aQ/rho1)_inf (aQ/rho2)_inf / [(aQ)_inf (aQ/rho1 rho2)_inf]
///         * sum_n (rho1)_n (rho2)_n (aQ/rho1 rho2)^n
///           / [(aQ/rho1)_n (aQ/rho2)_n] alpha_n
///
/// after dilating the pair's base variable q -> q^d.
pub fn limit_identity(
    pair: &BaileyPair,
    rho1: RhoParam,
    rho2: RhoParam,
    d: i64,
    order: i64,
) -> Result<(QSeries, QSeries)> {
    let rho = classify_rho(rho1, rho2)?;
    let work = pair.dilated(d);
    check_generic(work.base, rho)?;
    let lhs = limit_lhs(&work, rho, order)?;
    let rhs = limit_rhs(&work, rho, order)?;
    Ok((lhs.truncated(order), rhs.truncated(order)))
}

fn limit_lhs(work: &BaileyPair, rho: RhoPair, order: i64) -> Result<QSeries> {
    let base = work.base;
    sum_rows(order, "limiting-form lhs", |n, o| {
        compute_to(o, |w| Ok(lhs_weight(base, rho, n, w).mul(&work.beta(n, w))))
            .expect("infallible row")
    })
}

fn limit_rhs(work: &BaileyPair, rho: RhoPair, order: i64) -> Result<QSeries> {
    let base = work.base;
    let step = base.step;
    let aq = ThetaArg::q_pow(base.aq_exp());
    let sum = sum_rows(order, "limiting-form rhs", |n, o| {
        compute_to(o, |w| {
            let num = lhs_weight(base, rho, n, w).mul(&work.alpha(n, w));
            div_by_unit(num, |cap| alpha_denominator(base, rho, n, cap), w)
        })
        .expect("generic rho keeps denominators invertible")
    })?;
    compute_to(order, |w| {
        let inf = |x: ThetaArg| crate::qproducts::poch_infinite(x, step, w);
        // numerator (aQ/rho1)_inf (aQ/rho2)_inf, denominator (aQ)_inf (aQ/rho1 rho2)_inf
        let (num, den_extra) = match rho {
            RhoPair::BothInfinite => (QSeries::one(), QSeries::one()),
            RhoPair::OneFinite(r) => (inf(aq.div(r))?, QSeries::one()),
            RhoPair::Both(r1, r2) => (
                inf(aq.div(r1))?.mul(&inf(aq.div(r2))?),
                inf(aq.div(r1).div(r2))?,
            ),
            RhoPair::Sqrt => (
                crate::qproducts::poch_infinite(
                    ThetaArg::q_pow(2 * base.a_exp() + step),
                    2 * step,
                    w,
                )?,
                inf(ThetaArg::neg_q_pow(base.a_exp()))?,
            ),
        };
        let den = inf(aq)?.mul(&den_extra);
        sum.mul(&num).div_to(&den, order)
    })
}

/// Starred variant of the limiting-form lhs: the sum does not converge
/// coefficientwise, but its even and odd partial sums both stabilize; the
/// value is their average.
pub fn limit_lhs_starred(
    pair: &BaileyPair,
    rho1: RhoParam,
    rho2: RhoParam,
    d: i64,
    order: i64,
    cap: usize,
) -> Result<QSeries> {
    let rho = classify_rho(rho1, rho2)?;
    let work = pair.dilated(d);
    check_generic(work.base, rho)?;
    let base = work.base;
    let (even, odd) = crate::series::starred_partial_limits(
        |n, o| {
            compute_to(o, |w| Ok(lhs_weight(base, rho, n, w).mul(&work.beta(n, w))))
                .expect("infallible row")
        },
        order,
        cap,
        "limiting-form lhs (starred)",
    )?;
    Ok(even.add(&odd).scaled(&crate::series::rat(1, 2)))
}

// ---------------------------------------------------------------------------
// Pair constructors
// ---------------------------------------------------------------------------

fn expect_base_one(pair: &BaileyPair, who: &str) -> Result<()> {
    if pair.base.a_is_q {
        return Err(QError::PreconditionFailed {
            what: format!("{who} expects a pair relative to 1, got {}", pair.base.label()),
        });
    }
    Ok(())
}

fn seq_is(pair_seq: &SeqFn, n: usize, expect: &QSeries) -> bool {
    pair_seq(n, 8)
        .eq_upto(&expect.truncated(8), 8)
        .map(|r| r.is_equal())
        .unwrap_or(false)
}

/// q^{step*k} as an exact monomial.
fn qs(step: i64, k: i64) -> QSeries {
    QSeries::monomial(Coeff::one(), step * k)
}

/// 1 - q^{step*k}.
fn one_minus(step: i64, k: i64) -> QSeries {
    QSeries::one().sub(&qs(step, k))
}

/// If (alpha_n, beta_n) is relative to 1 with alpha_0 = beta_0 = 1, then
/// (alpha'_n, beta'_n) is also relative to 1, where alpha'_0 = beta'_0 = 0,
///
///   alpha'_{2n}   = -(1 - Q^{4n})   Q^{2n^2-2n} sum_{j=0}^{n-1} Q^{-2j^2-2j} alpha_{2j+1}
///   alpha'_{2n+1} = -(1 - Q^{4n+2}) Q^{2n^2}    sum_{j=0}^{n}   Q^{-2j^2}    alpha_{2j}
///   beta'_n       = -beta_{n-1} / (1 - Q^{2n-1})        (n >= 1).
pub fn thm_main1(pair: &BaileyPair) -> Result<BaileyPair> {
    expect_base_one(pair, "thm_main1")?;
    if !seq_is(&pair.alpha, 0, &QSeries::one()) || !seq_is(&pair.beta, 0, &QSeries::one()) {
        return Err(QError::PreconditionFailed {
            what: "thm_main1 expects alpha_0 = beta_0 = 1".into(),
        });
    }
    let step = pair.base.step;
    let seed_alpha = pair.alpha.clone();
    let alpha = move |m: usize, order: i64| -> QSeries {
        let mi = m as i64;
        if m == 0 {
            return QSeries::zero_exact();
        }
        compute_to(order, |w| {
            let n = mi / 2;
            let (front, shift, jmax, inner_exp, pick): (_, _, _, fn(i64) -> i64, _) =
                if m % 2 == 0 {
                    (
                        one_minus(step, 4 * n),
                        2 * n * n - 2 * n,
                        n - 1,
                        |j| -2 * j * j - 2 * j,
                        1usize,
                    )
                } else {
                    (
                        one_minus(step, 4 * n + 2),
                        2 * n * n,
                        n,
                        |j| -2 * j * j,
                        0usize,
                    )
                };
            let mut sum = QSeries::zero(Order::UpTo(w));
            for j in 0..=jmax {
                let idx = (2 * j) as usize + pick;
                let term = qs(step, inner_exp(j)).mul(&seed_alpha(idx, w));
                sum = sum.add(&term);
            }
            Ok(qs(step, shift).mul(&front).mul(&sum).neg())
        })
        .expect("infallible")
    };
    let seed_beta = pair.beta.clone();
    let beta = move |n: usize, order: i64| -> QSeries {
        if n == 0 {
            return QSeries::zero_exact();
        }
        compute_to(order, |w| {
            seed_beta(n - 1, w)
                .neg()
                .div_to(&one_minus(step, 2 * n as i64 - 1), order)
        })
        .expect("denominator 1 - Q^{2n-1} is a unit")
    };
    Ok(BaileyPair::new(
        pair.base,
        format!("main1({})", pair.provenance),
        alpha,
        beta,
    ))
}

/// If (alpha_n, beta_n) is relative to 1 with alpha_0 = beta_0 = 0, then
///
///   alpha'_n = (1/(1-Q)) [ -alpha_{n+1}/(1 - Q^{2n+2}) + Q^{2n} alpha_n/(1 - Q^{2n}) ]
///   beta'_n  = -beta_{n+1}
///
/// is a pair relative to Q. The n = 0 second term reads 0 (alpha_0 = 0).
pub fn thm_main2(pair: &BaileyPair) -> Result<BaileyPair> {
    expect_base_one(pair, "thm_main2")?;
    if !seq_is(&pair.alpha, 0, &QSeries::zero_exact())
        || !seq_is(&pair.beta, 0, &QSeries::zero_exact())
    {
        return Err(QError::PreconditionFailed {
            what: "thm_main2 expects alpha_0 = beta_0 = 0".into(),
        });
    }
    let step = pair.base.step;
    let seed_alpha = pair.alpha.clone();
    let alpha = move |n: usize, order: i64| -> QSeries {
        compute_to(order, |w| {
            let ni = n as i64;
            let first = seed_alpha(n + 1, w)
                .neg()
                .div_to(&one_minus(step, 2 * ni + 2), w)?;
            let second = if n == 0 {
                QSeries::zero_exact()
            } else {
                qs(step, 2 * ni)
                    .mul(&seed_alpha(n, w))
                    .div_to(&one_minus(step, 2 * ni), w)?
            };
            first.add(&second).div_to(&one_minus(step, 1), order)
        })
        .expect("denominators are units")
    };
    let seed_beta = pair.beta.clone();
    let beta = move |n: usize, order: i64| seed_beta(n + 1, order).neg();
    Ok(BaileyPair::new(
        PairBase {
            a_is_q: true,
            step: pair.base.step,
        },
        format!("main2({})", pair.provenance),
        alpha,
        beta,
    ))
}

/// Composition of `thm_main1` then `thm_main2` in closed form: for a pair
/// relative to 1 with alpha_0 = beta_0 = 1,
///
///   alpha''_{2n}   = (1/(1-Q)) [ Q^{2n^2} sum_{j<=n} Q^{-2j^2} alpha_{2j}
///                                - Q^{2n^2+2n} sum_{j<=n-1} Q^{-2j^2-2j} alpha_{2j+1} ]
///   alpha''_{2n+1} = (1/(1-Q)) [ Q^{2n^2+2n} sum_{j<=n} Q^{-2j^2-2j} alpha_{2j+1}
///                                - Q^{2n^2+4n+2} sum_{j<=n} Q^{-2j^2} alpha_{2j} ]
///   beta''_n       = beta_n / (1 - Q^{2n+1})
///
/// is a pair relative to Q.
pub fn thm_main3(pair: &BaileyPair) -> Result<BaileyPair> {
    expect_base_one(pair, "thm_main3")?;
    if !seq_is(&pair.alpha, 0, &QSeries::one()) || !seq_is(&pair.beta, 0, &QSeries::one()) {
        return Err(QError::PreconditionFailed {
            what: "thm_main3 expects alpha_0 = beta_0 = 1".into(),
        });
    }
    let step = pair.base.step;
    let seed_alpha = pair.alpha.clone();
    let alpha = move |m: usize, order: i64| -> QSeries {
        compute_to(order, |w| {
            let n = (m / 2) as i64;
            let even_sum = |hi: i64| {
                let mut s = QSeries::zero(Order::UpTo(w));
                for j in 0..=hi {
                    s = s.add(&qs(step, -2 * j * j).mul(&seed_alpha(2 * j as usize, w)));
                }
                s
            };
            let odd_sum = |hi: i64| {
                let mut s = QSeries::zero(Order::UpTo(w));
                let mut j = 0;
                while j <= hi {
                    s = s.add(
                        &qs(step, -2 * j * j - 2 * j).mul(&seed_alpha((2 * j + 1) as usize, w)),
                    );
                    j += 1;
                }
                s
            };
            let num = if m % 2 == 0 {
                qs(step, 2 * n * n)
                    .mul(&even_sum(n))
                    .sub(&qs(step, 2 * n * n + 2 * n).mul(&odd_sum(n - 1)))
            } else {
                qs(step, 2 * n * n + 2 * n)
                    .mul(&odd_sum(n))
                    .sub(&qs(step, 2 * n * n + 4 * n + 2).mul(&even_sum(n)))
            };
            num.div_to(&one_minus(step, 1), order)
        })
        .expect("denominator 1 - Q is a unit")
    };
    let seed_beta = pair.beta.clone();
    let beta = move |n: usize, order: i64| -> QSeries {
        compute_to(order, |w| {
            seed_beta(n, w).div_to(&one_minus(step, 2 * n as i64 + 1), order)
        })
        .expect("denominator is a unit")
    };
    Ok(BaileyPair::new(
        PairBase {
            a_is_q: true,
            step: pair.base.step,
        },
        format!("main3({})", pair.provenance),
        alpha,
        beta,
    ))
}

/// Inverse of `thm_main1`: for a pair relative to 1 with alpha'_0 = 0 and
/// alpha'_1 = -(1 - Q^2),
///
///   alpha_n = -alpha'_{n+1}/(1 - Q^{2n+2}) + Q^{2n-2} alpha'_{n-1}/(1 - Q^{2n-2})
///   beta_n  = -(1 - Q^{2n+1}) beta'_{n+1}
///
/// recovers a pair with alpha_0 = beta_0 = 1 (the n = 0 second term reads 0).
pub fn thm_main1_inverse(pair: &BaileyPair) -> Result<BaileyPair> {
    expect_base_one(pair, "thm_main1_inverse")?;
    let step = pair.base.step;
    let expect_a1 = one_minus(step, 2).neg();
    if !seq_is(&pair.alpha, 0, &QSeries::zero_exact()) || !seq_is(&pair.alpha, 1, &expect_a1) {
        return Err(QError::PreconditionFailed {
            what: "thm_main1_inverse expects alpha_0 = 0 and alpha_1 = -(1 - Q^2)".into(),
        });
    }
    let seed_alpha = pair.alpha.clone();
    let alpha = move |n: usize, order: i64| -> QSeries {
        compute_to(order, |w| {
            let ni = n as i64;
            let first = seed_alpha(n + 1, w)
                .neg()
                .div_to(&one_minus(step, 2 * ni + 2), w)?;
            let second = if n == 0 {
                QSeries::zero_exact()
            } else {
                qs(step, 2 * ni - 2)
                    .mul(&seed_alpha(n - 1, w))
                    .div_to(&one_minus(step, 2 * ni - 2), w)?
            };
            Ok(first.add(&second).truncated(w))
        })
        .expect("denominators are units")
    };
    let seed_beta = pair.beta.clone();
    let beta = move |n: usize, order: i64| -> QSeries {
        one_minus(step, 2 * n as i64 + 1)
            .mul(&seed_beta(n + 1, order))
            .neg()
    };
    Ok(BaileyPair::new(
        pair.base,
        format!("main1_inverse({})", pair.provenance),
        alpha,
        beta,
    ))
}

/// Change of base: a pair relative to (1, Q) maps to one relative to
/// (1, Q^2), where
///
///   alpha'_n = (1/2)(1 + Q^{2n}) Q^{n^2-n} alpha_n
///   beta'_n  = (1/(-1; Q)_{2n}) sum_{k=0}^{n} Q^{k^2-k} beta_k / (Q^2; Q^2)_{n-k}.
pub fn base_change(pair: &BaileyPair) -> Result<BaileyPair> {
    expect_base_one(pair, "base_change")?;
    let step = pair.base.step;
    let seed_alpha = pair.alpha.clone();
    let alpha = move |n: usize, order: i64| -> QSeries {
        let ni = n as i64;
        let front = QSeries::one()
            .add(&qs(step, 2 * ni))
            .scaled(&crate::series::rat(1, 2));
        front
            .mul(&qs(step, ni * ni - ni))
            .mul(&seed_alpha(n, order))
    };
    let seed_beta = pair.beta.clone();
    let beta = move |n: usize, order: i64| -> QSeries {
        compute_to(order, |w| {
            let mut sum = QSeries::zero(Order::UpTo(w));
            for k in 0..=n {
                let ki = k as i64;
                let den = poch_finite(ThetaArg::q_pow(2 * step), 2 * step, (n - k) as u32);
                let term = qs(step, ki * ki - ki).mul(&seed_beta(k, w)).div_to(&den, w)?;
                sum = sum.add(&term);
            }
            let front = poch_finite(ThetaArg::minus_one(), step, 2 * n as u32);
            sum.div_to(&front, order)
        })
        .expect("denominators are units")
    };
    Ok(BaileyPair::new(
        PairBase {
            a_is_q: false,
            step: 2 * step,
        },
        format!("base_change({})", pair.provenance),
        alpha,
        beta,
    ))
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Stable ids of the cataloged pairs.
pub const PAIR_IDS: &[&str] = &[
    "unit", "slater1", "slater2", "slater3", "bk_seed", "bk", "bk_q", "andrews0", "andrews1",
    "andrews2", "cor1", "cor2", "cor3", "cor1q", "cor2q", "cor3q", "d1", "d1q", "d2", "d2q",
    "d3", "d3q",
];

/// Symmetric inner sum sum_{j=lo}^{hi} q^{f(j)} as an exact Laurent polynomial.
fn jsum(lo: i64, hi: i64, f: impl Fn(i64) -> i64) -> QSeries {
    QSeries::from_terms((lo..=hi).map(|j| (f(j), Coeff::one())), Order::Exact)
}

fn sign_of(n: i64) -> Coeff {
    if n.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Split-index alpha of the shape
///   a_{2n}   = s_even (1 - q^{g_even(n)}) q^{sh_even(n)} sum_{j=-n}^{n-1} q^{fe(n,j)}
///   a_{2n+1} = s_odd  (1 - q^{g_odd(n)})  q^{sh_odd(n)}  sum_{j=-n}^{n}   q^{fo(n,j)}
#[allow(clippy::too_many_arguments)]
fn split_alpha_rel1(
    m: usize,
    s_even: i64,
    g_even: impl Fn(i64) -> i64,
    sh_even: impl Fn(i64) -> i64,
    fe: impl Fn(i64) -> i64,
    s_odd: i64,
    g_odd: impl Fn(i64) -> i64,
    sh_odd: impl Fn(i64) -> i64,
    fo: impl Fn(i64) -> i64,
) -> QSeries {
    let n = (m / 2) as i64;
    if m % 2 == 0 {
        let front = QSeries::one().sub(&QSeries::monomial(Coeff::one(), g_even(n)));
        front
            .mul(&jsum(-n, n - 1, fe))
            .mul_monomial(&int(s_even), sh_even(n))
    } else {
        let front = QSeries::one().sub(&QSeries::monomial(Coeff::one(), g_odd(n)));
        front
            .mul(&jsum(-n, n, fo))
            .mul_monomial(&int(s_odd), sh_odd(n))
    }
}

/// Split-index alpha of the shape (relative to q)
///   a_{2n}   = (1/(1-q)) [ q^{sa(n)} sum_{j=-n}^{n} q^{f1(j)} + q^{sb(n)} sum_{j=-n}^{n-1} q^{f2(j)} ]
///   a_{2n+1} = -(1/(1-q)) [ q^{sc(n)} sum_{j=-n-1}^{n} q^{f3(j)} + q^{sd(n)} sum_{j=-n}^{n} q^{f4(j)} ]
#[allow(clippy::too_many_arguments)]
fn split_alpha_relq(
    m: usize,
    order: i64,
    sa: impl Fn(i64) -> i64,
    f1: impl Fn(i64) -> i64,
    sb: impl Fn(i64) -> i64,
    f2: impl Fn(i64) -> i64,
    sc: impl Fn(i64) -> i64,
    f3: impl Fn(i64) -> i64,
    sd: impl Fn(i64) -> i64,
    f4: impl Fn(i64) -> i64,
) -> QSeries {
    let n = (m / 2) as i64;
    let num = if m % 2 == 0 {
        jsum(-n, n, f1)
            .mul_monomial(&int(1), sa(n))
            .add(&jsum(-n, n - 1, f2).mul_monomial(&int(1), sb(n)))
    } else {
        jsum(-n - 1, n, f3)
            .mul_monomial(&int(1), sc(n))
            .add(&jsum(-n, n, f4).mul_monomial(&int(1), sd(n)))
            .neg()
    };
    compute_to(order, |w| num.div_to(&one_minus(1, 1), w))
        .expect("denominator 1 - q is a unit")
}

/// Numerator over a unit-denominator product, with the working precision
/// widened to cover the numerator's pole depth.
fn unit_fraction(
    num: impl Fn(i64) -> QSeries,
    den: impl Fn(i64) -> QSeries,
    order: i64,
) -> QSeries {
    compute_to(order, |w| {
        let n0 = num(w);
        let margin = n0.min_exp().map(|e| e.min(0).abs()).unwrap_or(0);
        let n = if margin > 0 { num(w + margin) } else { n0 };
        n.div_to(&den(w + margin), w)
    })
    .expect("catalog denominators are units")
}

/// Fetch a catalog pair by id.
pub fn catalog_pair(id: &str) -> Result<BaileyPair> {
    let pair = match id {
        "unit" => BaileyPair::new(
            PairBase::one(),
            "unit",
            |n, _| {
                if n == 0 {
                    QSeries::one()
                } else {
                    QSeries::zero_exact()
                }
            },
            move |n, order| {
                unit_fraction(
                    |_| QSeries::one(),
                    |w| {
                        let p = poch_finite_to(ThetaArg::q_pow(1), 1, n as u32, w);
                        p.mul(&p)
                    },
                    order,
                )
            },
        ),
        // alpha_n = (-1)^n (q^n + q^{-n}), beta_n = (-1)^n q^{-n} / (q^2; q^2)_n
        "slater1" => BaileyPair::new(
            PairBase::one(),
            "slater1",
            |n, _| {
                let ni = n as i64;
                if n == 0 {
                    QSeries::one()
                } else {
                    QSeries::from_terms(
                        [(ni, sign_of(ni)), (-ni, sign_of(ni))],
                        Order::Exact,
                    )
                }
            },
            move |n, order| {
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -ni),
                    |w| poch_finite_to(ThetaArg::q_pow(2), 2, n as u32, w),
                    order,
                )
            },
        ),
        // alpha_n = (-1)^n q^{-binom(n+1,2)} (1 + q^n), beta_n = (-1)^n q^{-binom(n+1,2)} / (q)_n
        "slater2" => BaileyPair::new(
            PairBase::one(),
            "slater2",
            |n, _| {
                let ni = n as i64;
                if n == 0 {
                    QSeries::one()
                } else {
                    let e = -binom2(ni + 1);
                    QSeries::from_terms([(e, sign_of(ni)), (e + ni, sign_of(ni))], Order::Exact)
                }
            },
            move |n, order| {
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -binom2(ni + 1)),
                    |w| poch_finite_to(ThetaArg::q_pow(1), 1, n as u32, w),
                    order,
                )
            },
        ),
        // alpha_n = (-1)^n q^{-n(n+3)/2} (1 + q^{3n}), beta_n = (-1)^n q^{-n(n+3)/2} / (q)_n
        "slater3" => BaileyPair::new(
            PairBase::one(),
            "slater3",
            |n, _| {
                let ni = n as i64;
                if n == 0 {
                    QSeries::one()
                } else {
                    let e = -ni * (ni + 3) / 2;
                    QSeries::from_terms(
                        [(e, sign_of(ni)), (e + 3 * ni, sign_of(ni))],
                        Order::Exact,
                    )
                }
            },
            move |n, order| {
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -ni * (ni + 3) / 2),
                    |w| poch_finite_to(ThetaArg::q_pow(1), 1, n as u32, w),
                    order,
                )
            },
        ),
        // alpha_n = 2 (-1)^n, beta_n = (-1)^n / (q^2; q^2)_n
        "bk_seed" => BaileyPair::new(
            PairBase::one(),
            "bk_seed",
            |n, _| {
                if n == 0 {
                    QSeries::one()
                } else {
                    QSeries::constant(sign_of(n as i64) * int(2))
                }
            },
            move |n, order| {
                unit_fraction(
                    |_| QSeries::constant(sign_of(n as i64)),
                    |w| poch_finite_to(ThetaArg::q_pow(2), 2, n as u32, w),
                    order,
                )
            },
        ),
        "bk" => BaileyPair::new(
            PairBase::one(),
            "bk",
            |m, _| {
                split_alpha_rel1(
                    m,
                    1,
                    |n| 4 * n,
                    |n| 2 * n * n - 2 * n,
                    |j| -2 * j * j - 2 * j,
                    -1,
                    |n| 4 * n + 2,
                    |n| 2 * n * n,
                    |j| -2 * j * j,
                )
            },
            move |n, order| {
                if n == 0 {
                    return QSeries::zero_exact();
                }
                let ni = n as i64;
                unit_fraction(
                    |w| poch_finite_to(ThetaArg::q_pow(1), 2, n as u32 - 1, w).scaled(&sign_of(ni)),
                    |w| poch_finite_to(ThetaArg::q_pow(1), 1, 2 * n as u32 - 1, w),
                    order,
                )
            },
        ),
        "bk_q" => BaileyPair::new(
            PairBase::q(),
            "bk_q",
            |m, order| {
                split_alpha_relq(
                    m,
                    order,
                    |n| 2 * n * n,
                    |j| -2 * j * j,
                    |n| 2 * n * n + 2 * n,
                    |j| -2 * j * j - 2 * j,
                    |n| 2 * n * n + 2 * n,
                    |j| -2 * j * j - 2 * j,
                    |n| 2 * n * n + 4 * n + 2,
                    |j| -2 * j * j,
                )
            },
            move |n, order| {
                let ni = n as i64;
                unit_fraction(
                    |w| poch_finite_to(ThetaArg::q_pow(1), 2, n as u32, w).scaled(&sign_of(ni)),
                    |w| poch_finite_to(ThetaArg::q_pow(1), 1, 2 * n as u32 + 1, w),
                    order,
                )
            },
        ),
        "andrews0" => BaileyPair::new(
            PairBase::one(),
            "andrews0",
            |m, _| {
                let n = (m / 2) as i64;
                if m % 2 == 0 {
                    jsum(-n, n, |j| -j * j)
                        .mul_monomial(&int(1), 3 * n * n + n)
                        .sub(&jsum(-n + 1, n - 1, |j| -j * j)
                            .mul_monomial(&int(1), 3 * n * n - n))
                } else {
                    jsum(-n, n - 1, |j| -j * j - j)
                        .mul_monomial(&int(1), 3 * n * n + 2 * n)
                        .sub(&jsum(-n - 1, n, |j| -j * j - j)
                            .mul_monomial(&int(1), 3 * n * n + 4 * n + 1))
                }
            },
            move |n, order| {
                unit_fraction(
                    |_| QSeries::one(),
                    |w| poch_finite_to(ThetaArg::q_pow(n as i64 + 1), 1, n as u32, w),
                    order,
                )
            },
        ),
        "andrews1" => BaileyPair::new(
            PairBase::one(),
            "andrews1",
            |m, _| {
                split_alpha_rel1(
                    m,
                    -1,
                    |n| 4 * n,
                    |n| 3 * n * n - 2 * n,
                    |j| -j * j - j,
                    1,
                    |n| 4 * n + 2,
                    |n| 3 * n * n + n,
                    |j| -j * j,
                )
            },
            move |n, order| {
                if n == 0 {
                    return QSeries::zero_exact();
                }
                unit_fraction(
                    |_| QSeries::one(),
                    |w| poch_finite_to(ThetaArg::q_pow(n as i64), 1, n as u32, w),
                    order,
                )
            },
        ),
        "andrews2" => BaileyPair::new(
            PairBase::q(),
            "andrews2",
            |m, order| {
                split_alpha_relq(
                    m,
                    order,
                    |n| 3 * n * n + n,
                    |j| -j * j,
                    |n| 3 * n * n + 2 * n,
                    |j| -j * j - j,
                    |n| 3 * n * n + 4 * n + 1,
                    |j| -j * j - j,
                    |n| 3 * n * n + 5 * n + 2,
                    |j| -j * j,
                )
            },
            move |n, order| {
                unit_fraction(
                    |_| QSeries::one(),
                    |w| poch_finite_to(ThetaArg::q_pow(n as i64 + 1), 1, n as u32 + 1, w),
                    order,
                )
            },
        ),
        "cor1" => BaileyPair::new(
            PairBase::one(),
            "cor1",
            |m, _| {
                split_alpha_rel1(
                    m,
                    1,
                    |n| 4 * n,
                    |n| 2 * n * n - 2 * n + 1,
                    |j| -2 * j * j,
                    -1,
                    |n| 4 * n + 2,
                    |n| 2 * n * n,
                    |j| -2 * j * j - 2 * j,
                )
            },
            move |n, order| {
                if n == 0 {
                    return QSeries::zero_exact();
                }
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -ni + 1),
                    |w| {
                        poch_finite_to(ThetaArg::q_pow(2), 2, n as u32 - 1, w)
                            .mul(&one_minus(1, 2 * ni - 1))
                    },
                    order,
                )
            },
        ),
        "cor1q" => BaileyPair::new(
            PairBase::q(),
            "cor1q",
            |m, order| {
                split_alpha_relq(
                    m,
                    order,
                    |n| 2 * n * n,
                    |j| -2 * j * j - 2 * j,
                    |n| 2 * n * n + 2 * n + 1,
                    |j| -2 * j * j,
                    |n| 2 * n * n + 2 * n + 1,
                    |j| -2 * j * j,
                    |n| 2 * n * n + 4 * n + 2,
                    |j| -2 * j * j - 2 * j,
                )
            },
            move |n, order| {
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -ni),
                    |w| {
                        poch_finite_to(ThetaArg::q_pow(2), 2, n as u32, w)
                            .mul(&one_minus(1, 2 * ni + 1))
                    },
                    order,
                )
            },
        ),
        "cor2" => BaileyPair::new(
            PairBase::one(),
            "cor2",
            |m, _| {
                split_alpha_rel1(
                    m,
                    1,
                    |n| 4 * n,
                    |n| 2 * n * n - 2 * n,
                    |j| -4 * j * j - 3 * j,
                    -1,
                    |n| 4 * n + 2,
                    |n| 2 * n * n,
                    |j| -4 * j * j - j,
                )
            },
            move |n, order| {
                if n == 0 {
                    return QSeries::zero_exact();
                }
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -binom2(ni)),
                    |w| {
                        poch_finite_to(ThetaArg::q_pow(1), 1, n as u32 - 1, w)
                            .mul(&one_minus(1, 2 * ni - 1))
                    },
                    order,
                )
            },
        ),
        "cor2q" => BaileyPair::new(
            PairBase::q(),
            "cor2q",
            |m, order| {
                split_alpha_relq(
                    m,
                    order,
                    |n| 2 * n * n,
                    |j| -4 * j * j - j,
                    |n| 2 * n * n + 2 * n,
                    |j| -4 * j * j - 3 * j,
                    |n| 2 * n * n + 2 * n,
                    |j| -4 * j * j - 3 * j,
                    |n| 2 * n * n + 4 * n + 2,
                    |j| -4 * j * j - j,
                )
            },
            move |n, order| {
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -binom2(ni + 1)),
                    |w| {
                        poch_finite_to(ThetaArg::q_pow(1), 1, n as u32, w)
                            .mul(&one_minus(1, 2 * ni + 1))
                    },
                    order,
                )
            },
        ),
        "cor3" => BaileyPair::new(
            PairBase::one(),
            "cor3",
            |m, _| {
                split_alpha_rel1(
                    m,
                    1,
                    |n| 4 * n,
                    |n| 2 * n * n - 2 * n + 1,
                    |j| -4 * j * j - j,
                    -1,
                    |n| 4 * n + 2,
                    |n| 2 * n * n,
                    |j| -4 * j * j - 3 * j,
                )
            },
            move |n, order| {
                if n == 0 {
                    return QSeries::zero_exact();
                }
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -binom2(ni + 1) + 1),
                    |w| {
                        poch_finite_to(ThetaArg::q_pow(1), 1, n as u32 - 1, w)
                            .mul(&one_minus(1, 2 * ni - 1))
                    },
                    order,
                )
            },
        ),
        "cor3q" => BaileyPair::new(
            PairBase::q(),
            "cor3q",
            |m, order| {
                split_alpha_relq(
                    m,
                    order,
                    |n| 2 * n * n,
                    |j| -4 * j * j - 3 * j,
                    |n| 2 * n * n + 2 * n + 1,
                    |j| -4 * j * j - j,
                    |n| 2 * n * n + 2 * n + 1,
                    |j| -4 * j * j - j,
                    |n| 2 * n * n + 4 * n + 2,
                    |j| -4 * j * j - 3 * j,
                )
            },
            move |n, order| {
                let ni = n as i64;
                unit_fraction(
                    |_| QSeries::monomial(sign_of(ni), -ni * (ni + 3) / 2),
                    |w| {
                        poch_finite_to(ThetaArg::q_pow(1), 1, n as u32, w)
                            .mul(&one_minus(1, 2 * ni + 1))
                    },
                    order,
                )
            },
        ),
        // derived pairs: one Bailey-lemma step applied to cor1..cor3 / cor1q..cor3q
        "d1" => BaileyPair::new(
            PairBase::one(),
            "d1",
            |m, _| {
                split_alpha_rel1(
                    m,
                    2,
                    |n| 2 * n,
                    |n| 4 * n * n - n + 1,
                    |j| -2 * j * j,
                    -2,
                    |n| 2 * n + 1,
                    |n| 4 * n * n + 3 * n + 1,
                    |j| -2 * j * j - 2 * j,
                )
            },
            move |n, order| derived_beta(n, order, 1, true, |j| binom2(j) + 1, 2, true),
        ),
        "d1q" => BaileyPair::new(
            PairBase::q(),
            "d1q",
            |m, order| {
                split_alpha_relq(
                    m,
                    order,
                    |n| 4 * n * n + n,
                    |j| -2 * j * j - 2 * j,
                    |n| 4 * n * n + 3 * n + 1,
                    |j| -2 * j * j,
                    |n| 4 * n * n + 5 * n + 2,
                    |j| -2 * j * j,
                    |n| 4 * n * n + 7 * n + 3,
                    |j| -2 * j * j - 2 * j,
                )
            },
            move |n, order| derived_beta(n, order, 0, false, |j| binom2(j), 1, true),
        ),
        "d2" => BaileyPair::new(
            PairBase::one(),
            "d2",
            |m, _| {
                split_alpha_rel1(
                    m,
                    1,
                    |n| 4 * n,
                    |n| 6 * n * n - 2 * n,
                    |j| -4 * j * j - 3 * j,
                    -1,
                    |n| 4 * n + 2,
                    |n| 6 * n * n + 4 * n + 1,
                    |j| -4 * j * j - j,
                )
            },
            move |n, order| derived_beta(n, order, 1, false, |j| binom2(j + 1), 1, false),
        ),
        "d2q" => BaileyPair::new(
            PairBase::q(),
            "d2q",
            |m, order| {
                split_alpha_relq(
                    m,
                    order,
                    |n| 6 * n * n + 2 * n,
                    |j| -4 * j * j - j,
                    |n| 6 * n * n + 4 * n,
                    |j| -4 * j * j - 3 * j,
                    |n| 6 * n * n + 8 * n + 2,
                    |j| -4 * j * j - 3 * j,
                    |n| 6 * n * n + 10 * n + 4,
                    |j| -4 * j * j - j,
                )
            },
            move |n, order| derived_beta(n, order, 0, false, |j| binom2(j + 1), 1, false),
        ),
        "d3" => BaileyPair::new(
            PairBase::one(),
            "d3",
            |m, _| {
                split_alpha_rel1(
                    m,
                    1,
                    |n| 4 * n,
                    |n| 6 * n * n - 2 * n + 1,
                    |j| -4 * j * j - j,
                    -1,
                    |n| 4 * n + 2,
                    |n| 6 * n * n + 4 * n + 1,
                    |j| -4 * j * j - 3 * j,
                )
            },
            move |n, order| derived_beta(n, order, 1, false, |j| binom2(j) + 1, 1, false),
        ),
        "d3q" => BaileyPair::new(
            PairBase::q(),
            "d3q",
            |m, order| {
                split_alpha_relq(
                    m,
                    order,
                    |n| 6 * n * n + 2 * n,
                    |j| -4 * j * j - 3 * j,
                    |n| 6 * n * n + 4 * n + 1,
                    |j| -4 * j * j - j,
                    |n| 6 * n * n + 8 * n + 3,
                    |j| -4 * j * j - j,
                    |n| 6 * n * n + 10 * n + 4,
                    |j| -4 * j * j - 3 * j,
                )
            },
            move |n, order| derived_beta(n, order, 0, false, |j| binom2(j), 1, false),
        ),
        _ => {
            return Err(QError::UnknownPairId { id: id.into() })
        }
    };
    Ok(pair)
}

/// beta of the derived pairs:
///   prefactor 1/(-q)_n when `neg_poch`, then
///   sum_{j=j0}^{n} (-1)_j^{with_minus_one} (-1)^j q^{f(j)}
///     / [(q)_{n-j} (q^step2; q^step2)_{j-1 or j} (1 - q^{2j -/+ 1})]
/// where `rel_q` selects the j >= 0, (..)_j, (1 - q^{2j+1}) variant.
fn derived_beta(
    n: usize,
    order: i64,
    j0: usize,
    with_minus_one: bool,
    f: impl Fn(i64) -> i64,
    step2: i64,
    neg_poch_prefactor: bool,
) -> QSeries {
    compute_to(order, |w| {
        let mut sum = QSeries::zero(Order::UpTo(w));
        for j in j0..=n {
            let ji = j as i64;
            let mut num = QSeries::monomial(sign_of(ji), f(ji));
            if with_minus_one {
                num = num.mul(&poch_finite_to(ThetaArg::minus_one(), 1, j as u32, w));
            }
            let inner = if j0 == 0 {
                poch_finite_to(ThetaArg::q_pow(step2), step2, j as u32, w)
                    .mul(&one_minus(1, 2 * ji + 1))
            } else {
                poch_finite_to(ThetaArg::q_pow(step2), step2, j as u32 - 1, w)
                    .mul(&one_minus(1, 2 * ji - 1))
            };
            let den = poch_finite_to(ThetaArg::q_pow(1), 1, (n - j) as u32, w).mul(&inner);
            sum = sum.add(&num.div_to(&den, w)?);
        }
        if neg_poch_prefactor {
            sum.div_to(&poch_finite_to(ThetaArg::neg_q_pow(1), 1, n as u32, order + 4), order)
        } else {
            Ok(sum)
        }
    })
    .expect("derived beta denominators are units")
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn assert_pair_ok(pair: &BaileyPair, n_max: usize, order: i64) {
        match verify_pair(pair, n_max, order).unwrap() {
            PairCheck::Equal => {}
            PairCheck::FirstMismatch {
                n,
                exponent,
                left,
                right,
            } => panic!(
                "{:?} fails pair relation at n={n}, q^{exponent}: {left} vs {right}",
                pair
            ),
        }
    }

    fn assert_pairs_eq(a: &BaileyPair, b: &BaileyPair, n_max: usize, order: i64) {
        match pairs_equal(a, b, n_max, order).unwrap() {
            PairCheck::Equal => {}
            PairCheck::FirstMismatch {
                n,
                exponent,
                left,
                right,
            } => panic!(
                "{:?} != {:?} at n={n}, q^{exponent}: {left} vs {right}",
                a, b
            ),
        }
    }

    #[test]
    fn unit_pair_beta_closed_form() {
        let unit = catalog_pair("unit").unwrap();
        for n in 0..=4usize {
            let direct = unit.beta(n, 25);
            let derived = beta_from_alpha(&unit.alpha, unit.base, n, 25);
            assert!(direct.eq_upto(&derived, 25).unwrap().is_equal(), "n={n}");
        }
        assert_pair_ok(&unit, 6, 30);
    }

    #[test]
    fn catalog_closed_form_values() {
        // bk: beta_2 = (q; q^2)_1 / (q)_3
        let bk = catalog_pair("bk").unwrap();
        let expect = poch_finite(ThetaArg::q_pow(1), 2, 1)
            .div_to(&poch_finite(ThetaArg::q_pow(1), 1, 3), 25)
            .unwrap();
        assert!(bk.beta(2, 25).eq_upto(&expect, 25).unwrap().is_equal());

        // bk: beta_1 = -1/(1 - q), via the defining relation from alpha
        let b1 = beta_from_alpha(&bk.alpha, bk.base, 1, 25);
        let expect = QSeries::one()
            .neg()
            .div_to(&one_minus(1, 1), 25)
            .unwrap();
        assert!(b1.eq_upto(&expect, 25).unwrap().is_equal());

        // andrews1: beta_0 = 0
        let a1 = catalog_pair("andrews1").unwrap();
        assert!(a1.beta(0, 10).is_zero());

        // cor2: beta_1 = -1/(1 - q)
        let cor2 = catalog_pair("cor2").unwrap();
        let expect = QSeries::one().neg().div_to(&one_minus(1, 1), 25).unwrap();
        assert!(cor2.beta(1, 25).eq_upto(&expect, 25).unwrap().is_equal());

        // bk_seed: beta_2 = 1/(q^2; q^2)_2 from the relation
        let seed = catalog_pair("bk_seed").unwrap();
        let b2 = beta_from_alpha(&seed.alpha, seed.base, 2, 25);
        let expect = QSeries::one()
            .div_to(&poch_finite(ThetaArg::q_pow(2), 2, 2), 25)
            .unwrap();
        assert!(b2.eq_upto(&expect, 25).unwrap().is_equal());
    }

    #[test]
    fn all_catalog_pairs_satisfy_relation() {
        for id in PAIR_IDS {
            let pair = catalog_pair(id).unwrap();
            assert_pair_ok(&pair, 5, 30);
        }
    }

    #[test]
    fn corrupted_beta_is_detected() {
        let bk = catalog_pair("bk").unwrap();
        let beta = bk.beta.clone();
        let bad = BaileyPair {
            base: bk.base,
            provenance: "bk (corrupted)".into(),
            alpha: bk.alpha.clone(),
            beta: Arc::new(move |n, o| {
                let b = beta(n, o);
                if n == 3 {
                    b.add(&QSeries::monomial(Coeff::one(), 4))
                } else {
                    b
                }
            }),
        };
        match verify_pair(&bad, 5, 30).unwrap() {
            PairCheck::FirstMismatch { n, .. } => assert_eq!(n, 3),
            PairCheck::Equal => panic!("corruption went undetected"),
        }
    }

    #[test]
    fn inversion_round_trip() {
        for id in ["slater2", "bk_q", "cor1"] {
            let pair = catalog_pair(id).unwrap();
            for n in 0..=5usize {
                let alpha = alpha_from_beta(&pair.beta, pair.base, n, 30);
                let direct = pair.alpha(n, 30);
                assert!(
                    alpha.eq_upto(&direct, 30).unwrap().is_equal(),
                    "{id} n={n}"
                );
            }
        }
    }

    #[test]
    fn bailey_step_reproduces_derived_pairs() {
        let d1 = catalog_pair("d1").unwrap();
        let s1 = bailey_step(
            &catalog_pair("cor1").unwrap(),
            RhoParam::Finite(ThetaArg::minus_one()),
            RhoParam::Infinity,
        )
        .unwrap();
        assert_pairs_eq(&s1, &d1, 5, 30);

        let d2 = catalog_pair("d2").unwrap();
        let s2 = bailey_step(
            &catalog_pair("cor2").unwrap(),
            RhoParam::Infinity,
            RhoParam::Infinity,
        )
        .unwrap();
        assert_pairs_eq(&s2, &d2, 5, 30);

        let d1q = catalog_pair("d1q").unwrap();
        let s1q = bailey_step(
            &catalog_pair("cor1q").unwrap(),
            RhoParam::Finite(ThetaArg::neg_q_pow(1)),
            RhoParam::Infinity,
        )
        .unwrap();
        assert_pairs_eq(&s1q, &d1q, 5, 30);
    }

    #[test]
    fn bailey_step_output_satisfies_relation() {
        let seed = catalog_pair("slater1").unwrap();
        for (r1, r2) in [
            (RhoParam::Infinity, RhoParam::Infinity),
            (RhoParam::Finite(ThetaArg::minus_one()), RhoParam::Infinity),
            (RhoParam::SqrtPair, RhoParam::SqrtPair),
        ] {
            let out = bailey_step(&seed, r1, r2).unwrap();
            assert_pair_ok(&out, 4, 30);
        }
    }

    #[test]
    fn non_generic_rho_is_rejected() {
        let seed = catalog_pair("slater1").unwrap();
        // aq/rho = q/q = 1 gives a vanishing factor
        let err = bailey_step(&seed, RhoParam::Finite(ThetaArg::q_pow(1)), RhoParam::Infinity);
        assert!(matches!(err, Err(QError::NonGenericRho { .. })));
        // sqrt-pair must occupy both slots
        let err = bailey_step(&seed, RhoParam::SqrtPair, RhoParam::Infinity);
        assert!(matches!(err, Err(QError::PreconditionFailed { .. })));
    }

    #[test]
    fn main1_and_main3_on_seeds() {
        let s1 = catalog_pair("slater1").unwrap();
        assert_pairs_eq(&thm_main1(&s1).unwrap(), &catalog_pair("cor1").unwrap(), 5, 30);
        assert_pairs_eq(&thm_main3(&s1).unwrap(), &catalog_pair("cor1q").unwrap(), 5, 30);
        let seed = catalog_pair("bk_seed").unwrap();
        assert_pairs_eq(&thm_main1(&seed).unwrap(), &catalog_pair("bk").unwrap(), 5, 30);
        assert_pairs_eq(&thm_main3(&seed).unwrap(), &catalog_pair("bk_q").unwrap(), 5, 30);
    }

    #[test]
    fn main3_is_main2_after_main1() {
        let seed = catalog_pair("slater2").unwrap();
        let composed = thm_main2(&thm_main1(&seed).unwrap()).unwrap();
        assert_pairs_eq(&composed, &thm_main3(&seed).unwrap(), 5, 30);
    }

    #[test]
    fn main1_inverse_round_trip() {
        let seed = catalog_pair("slater3").unwrap();
        let back = thm_main1_inverse(&thm_main1(&seed).unwrap()).unwrap();
        assert_pairs_eq(&back, &seed, 5, 30);
    }

    #[test]
    fn main1_recurrence() {
        // alpha'_{n+2}/(1 - q^{2n+4}) - q^{2n} alpha'_n/(1 - q^{2n}) = -alpha_{n+1},
        // with the n = 0 second term read as 0
        let seed = catalog_pair("slater1").unwrap();
        let out = thm_main1(&seed).unwrap();
        let order = 30;
        for n in 0..=5usize {
            let ni = n as i64;
            let first = out
                .alpha(n + 2, order + 8)
                .div_to(&one_minus(1, 2 * ni + 4), order)
                .unwrap();
            let second = if n == 0 {
                QSeries::zero_exact()
            } else {
                qs(1, 2 * ni)
                    .mul(&out.alpha(n, order + 8))
                    .div_to(&one_minus(1, 2 * ni), order)
                    .unwrap()
            };
            let lhs = first.sub(&second);
            let rhs = seed.alpha(n + 1, order).neg();
            assert!(lhs.eq_upto(&rhs, order).unwrap().is_equal(), "n = {n}");
        }
    }

    #[test]
    fn precondition_failures() {
        let a1 = catalog_pair("andrews1").unwrap();
        assert!(matches!(
            thm_main1(&a1),
            Err(QError::PreconditionFailed { .. })
        ));
        let s1 = catalog_pair("slater1").unwrap();
        assert!(matches!(
            thm_main2(&s1),
            Err(QError::PreconditionFailed { .. })
        ));
        let bkq = catalog_pair("bk_q").unwrap();
        assert!(matches!(
            thm_main3(&bkq),
            Err(QError::PreconditionFailed { .. })
        ));
    }

    #[test]
    fn base_change_of_bk() {
        let bc = base_change(&catalog_pair("bk").unwrap()).unwrap();
        assert_eq!(bc.base, PairBase { a_is_q: false, step: 2 });
        // b'_n = -1/(2 (q^{2n}; q^2)_n)
        for n in 1..=4usize {
            let den = poch_finite(ThetaArg::q_pow(2 * n as i64), 2, n as u32).scaled(&int(2));
            let expect = QSeries::one().neg().div_to(&den, 25).unwrap();
            assert!(bc.beta(n, 25).eq_upto(&expect, 25).unwrap().is_equal(), "n={n}");
        }
        // the output satisfies the (1, q^2) relation
        assert_pair_ok(&bc, 4, 30);
        // -2 * base_change(bk) = andrews1 dilated by 2
        let left = bc.scaled(int(-2));
        let right = catalog_pair("andrews1").unwrap().dilated(2);
        assert_pairs_eq(&left, &right, 4, 30);
    }

    #[test]
    fn andrews_chain() {
        let minus_a1 = catalog_pair("andrews1").unwrap().scaled(int(-1));
        assert_pairs_eq(
            &thm_main2(&minus_a1).unwrap(),
            &catalog_pair("andrews2").unwrap(),
            4,
            30,
        );
        assert_pairs_eq(
            &thm_main1_inverse(&minus_a1).unwrap(),
            &catalog_pair("andrews0").unwrap(),
            4,
            30,
        );
    }

    #[test]
    fn limit_identity_on_unit_pair() {
        let unit = catalog_pair("unit").unwrap();
        let (lhs, rhs) =
            limit_identity(&unit, RhoParam::Infinity, RhoParam::Infinity, 1, 30).unwrap();
        assert!(lhs.eq_upto(&rhs, 30).unwrap().is_equal());
        // lhs = sum q^{n^2} / ((q)_n (q)_n) is the partition-counting kernel
        assert_eq!(lhs.coeff(0), int(1));
        assert_eq!(lhs.coeff(1), int(1));
        assert_eq!(lhs.coeff(2), int(2));
    }

    #[test]
    fn limit_identity_on_derived_pairs() {
        // one representative per rho shape
        let d2 = catalog_pair("d2").unwrap();
        for (r1, r2, d) in [
            (RhoParam::Infinity, RhoParam::Infinity, 1),
            (RhoParam::Finite(ThetaArg::minus_one()), RhoParam::Infinity, 1),
            (RhoParam::Finite(ThetaArg::q_pow(1)), RhoParam::Infinity, 2),
            (
                RhoParam::Finite(ThetaArg::minus_one()),
                RhoParam::Finite(ThetaArg::neg_q_pow(1)),
                2,
            ),
        ] {
            let (lhs, rhs) = limit_identity(&d2, r1, r2, d, 25).unwrap();
            assert!(
                lhs.eq_upto(&rhs, 25).unwrap().is_equal(),
                "rho = ({r1}, {r2}), d = {d}"
            );
        }
    }

    #[test]
    fn starred_limit_stabilizes() {
        // sqrt-pair weight on d2: plain summation does not converge, the
        // even/odd partial sums do
        let d2 = catalog_pair("d2").unwrap();
        let plain = limit_identity(&d2, RhoParam::SqrtPair, RhoParam::SqrtPair, 1, 20);
        assert!(matches!(plain, Err(QError::NonConvergent { .. })));
        let starred =
            limit_lhs_starred(&d2, RhoParam::SqrtPair, RhoParam::SqrtPair, 1, 20, 512).unwrap();
        // the average has half-integer coefficients in general; spot check
        // that it is a real series
        assert!(starred.order().covers(20));
        assert_eq!(starred.coeff(0), rat(0, 1));
    }
}
