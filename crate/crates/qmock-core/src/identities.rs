//! The identity catalog: the double-sum mock theta functions W1-W4 and
//! M1-M19, each carried in up to four forms, plus the classical-mock-theta
//! corollaries.
//!
//! Every identity binds:
//!  - a q-hypergeometric double sum (the defining display),
//!  - a Hecke form: infinite-product prefactor times f_{a,b,c},
//!  - an Appell-Lerch form: a combination of m(x, q^M, z) values, signed
//!    theta quotients, and rational constants,
//!  - optionally a classical form in terms of T0, omega, A, U1, S1, T1.
//!
//! Forms are transcribed symbol-for-symbol from their source displays; the
//! verifier compares them pairwise and reports the first differing
//! coefficient, so a defective transcription is pinpointed rather than
//! patched over.
//!
//! Starred sums (W2, M2, M8, M15) do not converge coefficientwise; the
//! engine takes the stabilized limits of the even- and odd-indexed partial
//! sums and averages them.

use std::sync::Arc;

use num_traits::One;

use crate::bailey::{self, RhoParam};
use crate::error::{QError, Result};
use crate::hecke::{appell_m, hecke_f, AppellSpec, FSpec};
use crate::qproducts::{binom2, poch_finite_to, poch_infinite, theta_j, Sign, ThetaArg};
use crate::series::{compute_to, int, rat, Coeff, EqReport, Order, QSeries};

pub const IDENTITY_IDS: &[&str] = &[
    "W1", "W2", "W3", "W4", "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "M9", "M10", "M11",
    "M12", "M13", "M14", "M15", "M16", "M17", "M18", "M19",
];

pub const COROLLARY_IDS: &[&str] = &["C8a", "C8b", "C8c", "C8d", "ID0"];

/// Default hard cap on double-sum rows; the CLI can override it.
pub const DEFAULT_ROW_CAP: usize = 4096;

// ---------------------------------------------------------------------------
// Catalog data structures
// ---------------------------------------------------------------------------

type TermFn = Arc<dyn Fn(i64, i64, i64) -> QSeries + Send + Sync>;

#[derive(Clone)]
pub struct DoubleSum {
    /// Outer and inner indices start at 1 (else 0).
    pub from_one: bool,
    pub starred: bool,
    /// Literal leading factor of the display (2 for M8 and M15).
    pub leading: Coeff,
    term: TermFn,
}

#[derive(Clone, Copy, Debug)]
pub struct InfProd {
    pub arg: ThetaArg,
    pub step: i64,
}

#[derive(Clone)]
pub struct HeckeForm {
    pub coeff: Coeff,
    pub qpow: i64,
    pub num: Vec<InfProd>,
    pub den: Vec<InfProd>,
    pub fspec: FSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JSym {
    pub bar: bool,
    pub a: i64,
    pub m: i64,
}

#[derive(Clone, Debug)]
pub struct ThetaQuotient {
    pub coeff: Coeff,
    pub qpow: i64,
    pub num: Vec<JSym>,
    pub den: Vec<JSym>,
}

#[derive(Clone)]
pub struct AppellForm {
    pub m_terms: Vec<(Coeff, i64, AppellSpec)>,
    pub thetas: Vec<ThetaQuotient>,
    pub constants: Vec<(Coeff, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalName {
    T0,
    Omega,
    A,
    U1,
    S1,
    T1,
}

impl ClassicalName {
    pub fn parse(s: &str) -> Option<ClassicalName> {
        Some(match s {
            "T0" => ClassicalName::T0,
            "omega" => ClassicalName::Omega,
            "A" => ClassicalName::A,
            "U1" => ClassicalName::U1,
            "S1" => ClassicalName::S1,
            "T1" => ClassicalName::T1,
            _ => return None,
        })
    }
}

/// A classical-series term c * q^pow * F(sigma * q^dilation).
#[derive(Clone, Debug)]
pub struct ClassicalTerm {
    pub coeff: Coeff,
    pub qpow: i64,
    pub name: ClassicalName,
    pub dilation: i64,
    pub negated_arg: bool,
}

#[derive(Clone)]
pub struct ClassicalCombo {
    pub terms: Vec<ClassicalTerm>,
    pub thetas: Vec<ThetaQuotient>,
    pub constants: Vec<(Coeff, i64)>,
}

/// Cross-path data: the (pair, rho, dilation) tuple whose limiting-form lhs
/// reproduces the double sum, up to a monomial.
#[derive(Clone, Debug)]
pub struct LimitChain {
    pub seed: &'static str,
    pub pre_rho: Option<(RhoParam, RhoParam)>,
    pub rho: (RhoParam, RhoParam),
    pub dilation: i64,
    pub scale_coeff: Coeff,
    pub scale_qpow: i64,
    pub starred: bool,
}

#[derive(Clone)]
pub struct IdentityEntry {
    pub id: &'static str,
    pub double_sum: Option<DoubleSum>,
    pub hecke_form: Option<HeckeForm>,
    pub appell_form: Option<AppellForm>,
    pub classical_form: Option<ClassicalCombo>,
    pub chain: Option<LimitChain>,
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

fn row_of(sum: &DoubleSum, n: i64, order: i64) -> QSeries {
    let j0 = if sum.from_one { 1 } else { 0 };
    let mut row = QSeries::zero(Order::UpTo(order));
    for j in j0..=n {
        row = row.add(&(sum.term)(n, j, order));
    }
    row
}

pub fn eval_double_sum_of(sum: &DoubleSum, id: &str, order: i64, row_cap: usize) -> Result<QSeries> {
    if sum.starred {
        let (even, odd) = starred_parts_of(sum, id, order, row_cap)?;
        return Ok(even
            .add(&odd)
            .scaled(&rat(1, 2))
            .scaled(&sum.leading)
            .truncated(order));
    }
    let n0 = if sum.from_one { 1 } else { 0 };
    let mut total = QSeries::zero(Order::UpTo(order));
    let mut beyond = 0usize;
    let mut n = n0;
    loop {
        let row = row_of(sum, n, order);
        match row.effective_min_exp() {
            Some(e) if e <= order => beyond = 0,
            _ => beyond += 1,
        }
        total = total.add(&row);
        if beyond >= 2 && n >= n0 + 2 {
            return Ok(total.scaled(&sum.leading).truncated(order));
        }
        n += 1;
        if n as usize > row_cap {
            return Err(QError::RowCapExceeded {
                id: id.into(),
                cap: row_cap,
            });
        }
    }
}

/// Stabilized even and odd partial-sum limits of a starred double sum,
/// without the leading factor.
pub fn starred_parts_of(
    sum: &DoubleSum,
    id: &str,
    order: i64,
    row_cap: usize,
) -> Result<(QSeries, QSeries)> {
    if !sum.starred {
        return Err(QError::PreconditionFailed {
            what: format!("{id} is not a starred sum"),
        });
    }
    let n0: i64 = if sum.from_one { 1 } else { 0 };
    crate::series::starred_partial_limits(
        |k, o| row_of(sum, n0 + k as i64, o),
        order,
        row_cap,
        id,
    )
}

pub fn eval_hecke_form_of(form: &HeckeForm, order: i64) -> Result<QSeries> {
    compute_to(order, |w| {
        let mut num = hecke_f(&form.fspec, w).mul_monomial(&form.coeff, form.qpow);
        for p in &form.num {
            num = num.mul(&poch_infinite(p.arg, p.step, w)?);
        }
        let mut den = QSeries::one();
        for p in &form.den {
            den = den.mul(&poch_infinite(p.arg, p.step, w)?);
        }
        num.div_to(&den, order)
    })
}

pub fn eval_theta_quotient(tq: &ThetaQuotient, order: i64) -> Result<QSeries> {
    compute_to(order, |w| {
        let mut num = QSeries::monomial(tq.coeff.clone(), tq.qpow);
        for j in &tq.num {
            num = num.mul(&eval_jsym(*j, w));
        }
        let mut den = QSeries::one();
        for j in &tq.den {
            let s = eval_jsym(*j, w);
            if s.is_zero() && s.order() == Order::Exact {
                return Err(QError::DivisionByZeroTheta {
                    symbol: format!("{j:?}"),
                });
            }
            den = den.mul(&s);
        }
        num.div_to(&den, order)
    })
}

fn eval_jsym(j: JSym, order: i64) -> QSeries {
    let arg = if j.bar {
        ThetaArg::neg_q_pow(j.a)
    } else {
        ThetaArg::q_pow(j.a)
    };
    theta_j(arg, j.m, order)
}

pub fn eval_appell_form_of(form: &AppellForm, order: i64) -> Result<QSeries> {
    let mut total = QSeries::zero(Order::Exact);
    for (c, pow, spec) in &form.m_terms {
        let m = appell_m(spec, order + pow.min(&0).abs())?;
        total = total.add(&m.mul_monomial(c, *pow));
    }
    for tq in &form.thetas {
        total = total.add(&eval_theta_quotient(tq, order)?);
    }
    for (c, pow) in &form.constants {
        total = total.add(&QSeries::monomial(c.clone(), *pow));
    }
    Ok(total.truncated(order))
}

/// One term of a classical mock theta series after the substitution
/// q -> sigma * q^dil.
fn classical_term(name: ClassicalName, n: i64, sigma: Sign, dil: i64, w: i64) -> QSeries {
    // poch argument sign0 * q^{e} with step `st`, substituted
    let p = |sign0: Sign, e: i64, st: i64, cnt: i64| {
        debug_assert!(st % 2 == 0 || sigma == Sign::Plus);
        let arg = ThetaArg {
            sign: sign0.mul(sigma.pow(e)),
            exp: dil * e,
        };
        poch_finite_to(arg, dil * st, cnt.max(0) as u32, w)
    };
    let mono = |e: i64| {
        QSeries::monomial(
            match sigma.pow(e) {
                Sign::Plus => Coeff::one(),
                Sign::Minus => -Coeff::one(),
            },
            dil * e,
        )
    };
    let (outer, num, den) = match name {
        // sum q^{(n+1)(n+2)} (-q^2; q^2)_n / (-q; q^2)_{n+1}
        ClassicalName::T0 => (
            mono((n + 1) * (n + 2)),
            p(Sign::Minus, 2, 2, n),
            p(Sign::Minus, 1, 2, n + 1),
        ),
        // sum q^{2n(n+1)} / (q; q^2)_{n+1}^2
        ClassicalName::Omega => {
            let d = p(Sign::Plus, 1, 2, n + 1);
            (mono(2 * n * (n + 1)), QSeries::one(), d.mul(&d))
        }
        // sum q^{n+1} (-q^2; q^2)_n / (q; q^2)_{n+1}
        ClassicalName::A => (
            mono(n + 1),
            p(Sign::Minus, 2, 2, n),
            p(Sign::Plus, 1, 2, n + 1),
        ),
        // sum q^{(n+1)^2} (-q; q^2)_n / (-q^2; q^4)_{n+1}
        ClassicalName::U1 => (
            mono((n + 1) * (n + 1)),
            p(Sign::Minus, 1, 2, n),
            p(Sign::Minus, 2, 4, n + 1),
        ),
        // sum q^{n(n+2)} (-q; q^2)_n / (-q^2; q^2)_n
        ClassicalName::S1 => (
            mono(n * (n + 2)),
            p(Sign::Minus, 1, 2, n),
            p(Sign::Minus, 2, 2, n),
        ),
        // sum q^{n(n+1)} (-q^2; q^2)_n / (-q; q^2)_{n+1}
        ClassicalName::T1 => (
            mono(n * (n + 1)),
            p(Sign::Minus, 2, 2, n),
            p(Sign::Minus, 1, 2, n + 1),
        ),
    };
    outer
        .mul(&num)
        .div_to(&den, w)
        .expect("classical denominators are units")
}

/// A classical mock theta series at the plain argument q.
pub fn eval_classical(name: ClassicalName, order: i64) -> QSeries {
    eval_classical_at(name, 1, false, order)
}

/// F(sigma q^dilation) for a classical series F.
pub fn eval_classical_at(name: ClassicalName, dilation: i64, negated: bool, order: i64) -> QSeries {
    let sigma = if negated { Sign::Minus } else { Sign::Plus };
    let mut total = QSeries::zero(Order::UpTo(order));
    let mut n = 0i64;
    let mut beyond = 0usize;
    loop {
        let t = classical_term(name, n, sigma, dilation, order);
        match t.effective_min_exp() {
            Some(e) if e <= order => beyond = 0,
            _ => beyond += 1,
        }
        total = total.add(&t);
        if beyond >= 2 && n >= 2 {
            return total.truncated(order);
        }
        n += 1;
        assert!(n < 10_000, "classical series failed to leave the window");
    }
}

pub fn eval_classical_combo(combo: &ClassicalCombo, order: i64) -> Result<QSeries> {
    let mut total = QSeries::zero(Order::Exact);
    for t in &combo.terms {
        let s = eval_classical_at(t.name, t.dilation, t.negated_arg, order + t.qpow.abs());
        total = total.add(&s.mul_monomial(&t.coeff, t.qpow));
    }
    for tq in &combo.thetas {
        total = total.add(&eval_theta_quotient(tq, order)?);
    }
    for (c, pow) in &combo.constants {
        total = total.add(&QSeries::monomial(c.clone(), *pow));
    }
    Ok(total.truncated(order))
}

// -- entry-level wrappers --

pub fn eval_double_sum(id: &str, order: i64, row_cap: usize) -> Result<QSeries> {
    let e = entry(id)?;
    let ds = e.double_sum.as_ref().ok_or_else(|| QError::UnknownId {
        id: format!("{id}.double_sum"),
    })?;
    eval_double_sum_of(ds, id, order, row_cap)
}

pub fn eval_hecke_form(id: &str, order: i64) -> Result<QSeries> {
    let e = entry(id)?;
    let f = e.hecke_form.as_ref().ok_or_else(|| QError::UnknownId {
        id: format!("{id}.hecke"),
    })?;
    eval_hecke_form_of(f, order)
}

pub fn eval_appell_form(id: &str, order: i64) -> Result<QSeries> {
    let e = entry(id)?;
    let f = e.appell_form.as_ref().ok_or_else(|| QError::UnknownId {
        id: format!("{id}.appell"),
    })?;
    eval_appell_form_of(f, order)
}

pub fn eval_classical_form(id: &str, order: i64) -> Result<QSeries> {
    let e = entry(id)?;
    let f = e.classical_form.as_ref().ok_or_else(|| QError::UnknownId {
        id: format!("{id}.classical"),
    })?;
    eval_classical_combo(f, order)
}

/// The limiting-form lhs for the identity's (pair, rho, dilation) tuple,
/// scaled onto the double sum's normalization.
pub fn eval_chain_lhs(id: &str, order: i64, row_cap: usize) -> Result<QSeries> {
    let e = entry(id)?;
    let ch = e.chain.as_ref().ok_or_else(|| QError::UnknownId {
        id: format!("{id}.chain"),
    })?;
    let mut pair = bailey::catalog_pair(ch.seed)?;
    if let Some((r1, r2)) = ch.pre_rho {
        pair = bailey::bailey_step(&pair, r1, r2)?;
    }
    let raw_order = order + ch.scale_qpow.min(0).abs();
    let raw = if ch.starred {
        bailey::limit_lhs_starred(&pair, ch.rho.0, ch.rho.1, ch.dilation, raw_order, row_cap)?
    } else {
        bailey::limit_identity(&pair, ch.rho.0, ch.rho.1, ch.dilation, raw_order)?.0
    };
    Ok(raw
        .mul_monomial(&ch.scale_coeff, ch.scale_qpow)
        .truncated(order))
}

/// Pairwise comparison of every form the entry carries.
pub fn verify_identity(id: &str, order: i64, row_cap: usize) -> Result<Vec<(String, EqReport)>> {
    let e = entry(id)?;
    let mut forms: Vec<(&str, QSeries)> = Vec::new();
    if let Some(ds) = &e.double_sum {
        forms.push(("double_sum", eval_double_sum_of(ds, id, order, row_cap)?));
    }
    if let Some(f) = &e.hecke_form {
        forms.push(("hecke", eval_hecke_form_of(f, order)?));
    }
    if let Some(f) = &e.appell_form {
        forms.push(("appell", eval_appell_form_of(f, order)?));
    }
    if let Some(f) = &e.classical_form {
        forms.push(("classical", eval_classical_combo(f, order)?));
    }
    let mut out = Vec::new();
    for i in 0..forms.len() {
        for k in (i + 1)..forms.len() {
            let label = format!("{} = {}", forms[i].0, forms[k].0);
            out.push((label, forms[i].1.eq_upto(&forms[k].1, order)?));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Catalog entries
// ---------------------------------------------------------------------------

fn q(e: i64) -> ThetaArg {
    ThetaArg::q_pow(e)
}

fn nq(e: i64) -> ThetaArg {
    ThetaArg::neg_q_pow(e)
}

fn jp(a: i64, m: i64) -> JSym {
    JSym { bar: false, a, m }
}

fn jb(a: i64, m: i64) -> JSym {
    JSym { bar: true, a, m }
}

/// Single-index J_k = (q^k; q^k)_inf = j(q^k, q^{3k}).
fn js(k: i64) -> JSym {
    JSym {
        bar: false,
        a: k,
        m: 3 * k,
    }
}

fn inf(arg: ThetaArg, step: i64) -> InfProd {
    InfProd { arg, step }
}

fn mt(c: i64, pow: i64, x: ThetaArg, modulus: i64, z: ThetaArg) -> (Coeff, i64, AppellSpec) {
    (
        int(c),
        pow,
        AppellSpec::new(x, modulus, z).expect("catalog Appell specs are generic"),
    )
}

fn tq(c: i64, pow: i64, num: &[JSym], den: &[JSym]) -> ThetaQuotient {
    ThetaQuotient {
        coeff: int(c),
        qpow: pow,
        num: num.to_vec(),
        den: den.to_vec(),
    }
}

/// Product builder for double-sum terms.
struct TermParts {
    w: i64,
    num: QSeries,
    den: QSeries,
}

impl TermParts {
    fn new(w: i64) -> TermParts {
        TermParts {
            w,
            num: QSeries::one(),
            den: QSeries::one(),
        }
    }

    fn n(mut self, arg: ThetaArg, step: i64, count: i64) -> Self {
        self.num = self
            .num
            .mul(&poch_finite_to(arg, step, count.max(0) as u32, self.w));
        self
    }

    fn d(mut self, arg: ThetaArg, step: i64, count: i64) -> Self {
        self.den = self
            .den
            .mul(&poch_finite_to(arg, step, count.max(0) as u32, self.w));
        self
    }

    /// Extra denominator factor 1 - q^e.
    fn d1(mut self, e: i64) -> Self {
        self.den = self
            .den
            .mul(&QSeries::one().sub(&QSeries::monomial(Coeff::one(), e)));
        self
    }

    fn done(self, negative: bool, e: i64) -> QSeries {
        let c = if negative { int(-1) } else { int(1) };
        self.num
            .mul_monomial(&c, e)
            .div_to(&self.den, self.w)
            .expect("double-sum denominators are units")
    }
}

fn dsum(
    from_one: bool,
    starred: bool,
    leading: i64,
    term: impl Fn(i64, i64, i64) -> QSeries + Send + Sync + 'static,
) -> Option<DoubleSum> {
    Some(DoubleSum {
        from_one,
        starred,
        leading: int(leading),
        term: Arc::new(term),
    })
}

fn hecke(
    coeff: i64,
    qpow: i64,
    num: &[InfProd],
    den: &[InfProd],
    fspec: FSpec,
) -> Option<HeckeForm> {
    Some(HeckeForm {
        coeff: int(coeff),
        qpow,
        num: num.to_vec(),
        den: den.to_vec(),
        fspec,
    })
}

fn chain(
    seed: &'static str,
    pre_rho: Option<(RhoParam, RhoParam)>,
    rho: (RhoParam, RhoParam),
    dilation: i64,
    scale_coeff: i64,
    scale_qpow: i64,
    starred: bool,
) -> Option<LimitChain> {
    Some(LimitChain {
        seed,
        pre_rho,
        rho,
        dilation,
        scale_coeff: int(scale_coeff),
        scale_qpow,
        starred,
    })
}

const INF: RhoParam = RhoParam::Infinity;
const SQRT: RhoParam = RhoParam::SqrtPair;

fn fin(t: ThetaArg) -> RhoParam {
    RhoParam::Finite(t)
}

fn parity(k: i64) -> bool {
    k.rem_euclid(2) == 1
}

/// Fetch a catalog entry by id.
pub fn entry(id: &str) -> Result<IdentityEntry> {
    let e = match id {
        "W1" => IdentityEntry {
            id: "W1",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(0), 1, j)
                    .n(q(1), 2, j - 1)
                    .d(nq(1), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, 2 * j - 1)
                    .done(parity(j), n * n + binom2(j + 1))
            }),
            hecke_form: hecke(-2, 2, &[], &[inf(q(1), 1)], FSpec::new(3, 5, 3, q(5), q(5), 1)),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(4, 0, nq(17), 48, q(24)),
                    mt(-4, -5, nq(1), 48, q(24)),
                ],
                thetas: vec![tq(
                    -2,
                    2,
                    &[js(8), js(12), js(96), jp(7, 16), jb(4, 24), jp(6, 48), jp(30, 96)],
                    &[js(24), js(48), jp(3, 8), jp(2, 12), jp(14, 96), jp(46, 96)],
                )],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("bk", Some((fin(nq(0)), INF)), (INF, INF), 1, 1, 0, false),
        },
        "W2" => IdentityEntry {
            id: "W2",
            double_sum: dsum(true, true, 1, |n, j, w| {
                TermParts::new(w)
                    .n(q(1), 2, n)
                    .n(nq(0), 1, j)
                    .n(q(1), 2, j - 1)
                    .d(nq(1), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, 2 * j - 1)
                    .done(parity(n + j), binom2(j + 1))
            }),
            hecke_form: hecke(
                1,
                1,
                &[inf(q(1), 2)],
                &[inf(q(2), 2)],
                FSpec::new(1, 3, 1, nq(2), nq(2), 1),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(4, 0, nq(1), 8, q(4))],
                thetas: vec![tq(
                    1,
                    1,
                    &[jp(1, 8), jp(1, 8), jp(3, 8), jp(3, 8), jp(3, 8), jp(2, 16)],
                    &[js(8), js(8), js(8), js(8), js(16)],
                )],
                constants: vec![],
            }),
            classical_form: Some(ClassicalCombo {
                terms: vec![
                    ClassicalTerm {
                        coeff: int(2),
                        qpow: 1,
                        name: ClassicalName::T1,
                        dilation: 1,
                        negated_arg: false,
                    },
                    ClassicalTerm {
                        coeff: int(-1),
                        qpow: 1,
                        name: ClassicalName::S1,
                        dilation: 1,
                        negated_arg: false,
                    },
                ],
                thetas: vec![],
                constants: vec![],
            }),
            chain: chain("bk", Some((fin(nq(0)), INF)), (SQRT, SQRT), 1, 1, 0, true),
        },
        "W3" => IdentityEntry {
            id: "W3",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(q(1), 2, n)
                    .n(nq(0), 2, j)
                    .n(q(2), 4, j - 1)
                    .d(nq(2), 2, n)
                    .d(q(2), 2, n - j)
                    .d(q(2), 2, 2 * j - 1)
                    .done(parity(n + j), n * n + j * j + j)
            }),
            hecke_form: hecke(
                2,
                3,
                &[inf(q(1), 2)],
                &[inf(q(2), 2)],
                FSpec::new(1, 2, 1, nq(7), nq(7), 4),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(4, 0, nq(1), 12, q(4))],
                thetas: vec![tq(2, 3, &[jb(1, 12), jb(1, 12)], &[jb(1, 4)])],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain(
                "bk",
                Some((fin(nq(0)), INF)),
                (fin(q(1)), INF),
                2,
                1,
                0,
                false,
            ),
        },
        "W4" => IdentityEntry {
            id: "W4",
            double_sum: dsum(false, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(1), 1, j)
                    .n(q(1), 2, j)
                    .d(nq(1), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, 2 * j + 1)
                    .done(parity(j), n * n + n + binom2(j + 1))
            }),
            hecke_form: hecke(1, 0, &[], &[inf(q(1), 1)], FSpec::new(3, 5, 3, q(3), q(3), 1)),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(-2, -4, nq(5), 48, q(24)),
                    mt(-2, -2, nq(11), 48, q(24)),
                ],
                thetas: vec![tq(
                    1,
                    0,
                    &[
                        js(8),
                        js(12),
                        js(96),
                        jp(3, 16),
                        jb(4, 24),
                        jp(6, 48),
                        jp(18, 96),
                        jp(30, 96),
                    ],
                    &[
                        js(24),
                        js(48),
                        jp(1, 8),
                        jp(2, 12),
                        jp(6, 96),
                        jp(26, 96),
                        jp(38, 96),
                    ],
                )],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("bk_q", Some((fin(nq(1)), INF)), (INF, INF), 1, 1, 0, false),
        },
        "M1" => IdentityEntry {
            id: "M1",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(0), 1, j)
                    .d(nq(1), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(2), 2, j - 1)
                    .d1(2 * j - 1)
                    .done(parity(j), n * n + binom2(j))
            }),
            hecke_form: hecke(-2, 1, &[], &[inf(q(1), 1)], FSpec::new(3, 5, 3, q(4), q(6), 1)),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(4, -3, nq(7), 48, q(24)),
                    mt(4, 0, nq(25), 48, q(-24)),
                ],
                thetas: vec![tq(
                    -2,
                    0,
                    &[js(8), js(12), js(96), jp(1, 16), jb(4, 24), jp(6, 48), jp(18, 96)],
                    &[js(24), js(48), jp(3, 8), jp(2, 12), jp(2, 96), jp(34, 96)],
                )],
                constants: vec![(int(-2), 0)],
            }),
            classical_form: None,
            chain: chain("d1", None, (INF, INF), 1, 1, -1, false),
        },
        "M2" => IdentityEntry {
            id: "M2",
            double_sum: dsum(true, true, 1, |n, j, w| {
                TermParts::new(w)
                    .n(q(1), 2, n)
                    .n(nq(0), 1, j)
                    .d(nq(1), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(2), 2, j - 1)
                    .d1(2 * j - 1)
                    .done(parity(n + j), binom2(j))
            }),
            hecke_form: hecke(
                1,
                0,
                &[inf(q(1), 2)],
                &[inf(q(2), 2)],
                FSpec::new(1, 3, 1, nq(1), nq(3), 1),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(4, 0, nq(5), 8, q(4))],
                thetas: vec![tq(
                    -1,
                    0,
                    &[jp(1, 8), jp(1, 8), jp(1, 8), jp(3, 8), jp(3, 8), jp(6, 16)],
                    &[js(8), js(8), js(8), js(8), js(16)],
                )],
                constants: vec![(int(-2), 0)],
            }),
            classical_form: Some(ClassicalCombo {
                terms: vec![ClassicalTerm {
                    coeff: int(4),
                    qpow: 0,
                    name: ClassicalName::T0,
                    dilation: 1,
                    negated_arg: false,
                }],
                thetas: vec![
                    tq(-2, 0, &[js(8), js(8), js(8), jp(4, 8)], &[jp(2, 8), jp(2, 8), jb(1, 8)]),
                    tq(
                        1,
                        0,
                        &[jp(2, 4), jp(8, 16), jp(1, 8), jp(6, 16)],
                        &[jb(1, 4), jb(1, 8), jb(3, 8)],
                    ),
                ],
                constants: vec![(int(2), 0)],
            }),
            chain: chain("d1", None, (SQRT, SQRT), 1, 1, -1, true),
        },
        "M3" => IdentityEntry {
            id: "M3",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(q(1), 2, n)
                    .n(nq(0), 2, j)
                    .d(nq(2), 2, n)
                    .d(q(2), 2, n - j)
                    .d(q(4), 4, j - 1)
                    .d1(4 * j - 2)
                    .done(parity(n + j), n * n + j * j - j)
            }),
            hecke_form: hecke(
                2,
                1,
                &[inf(q(1), 2)],
                &[inf(q(2), 2)],
                FSpec::new(1, 2, 1, nq(5), nq(9), 4),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(4, 0, nq(7), 12, q(4))],
                thetas: vec![tq(
                    2,
                    0,
                    &[js(12), js(12), js(12), jb(5, 12)],
                    &[jp(4, 12), jb(1, 12), jb(3, 12)],
                )],
                constants: vec![(int(-2), 0)],
            }),
            classical_form: None,
            chain: chain("d1", None, (fin(q(1)), INF), 2, 1, -2, false),
        },
        "M4" => IdentityEntry {
            id: "M4",
            double_sum: dsum(false, false, 1, |n, j, w| {
                TermParts::new(w)
                    .d(nq(1), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j)
                    .d1(2 * j + 1)
                    .done(parity(j), n * n + n + binom2(j))
            }),
            hecke_form: hecke(1, 0, &[], &[inf(q(1), 1)], FSpec::new(3, 5, 3, q(2), q(4), 1)),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(2, 0, nq(29), 48, q(24)),
                    mt(-2, -1, nq(13), 48, q(-24)),
                ],
                thetas: vec![tq(
                    1,
                    1,
                    &[
                        js(8),
                        js(12),
                        js(96),
                        js(96),
                        js(96),
                        jp(5, 16),
                        jb(4, 24),
                        jp(6, 48),
                        jp(18, 48),
                    ],
                    &[
                        js(24),
                        js(48),
                        js(48),
                        jp(1, 8),
                        jp(2, 12),
                        jp(10, 96),
                        jp(22, 96),
                        jp(42, 96),
                    ],
                )],
                constants: vec![(int(-1), 0)],
            }),
            classical_form: None,
            chain: chain("d1q", None, (INF, INF), 1, 1, 0, false),
        },
        "M5" => IdentityEntry {
            id: "M5",
            double_sum: dsum(false, false, 1, |n, j, w| {
                TermParts::new(w)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j)
                    .d1(2 * j + 1)
                    .done(parity(j), binom2(n + 1) + binom2(j))
            }),
            hecke_form: hecke(
                1,
                0,
                &[inf(nq(1), 1)],
                &[inf(q(1), 1)],
                FSpec::new(1, 2, 1, q(1), q(3), 2),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(2, 0, q(5), 6, q(2))],
                thetas: vec![tq(-1, 1, &[js(6), js(6), js(6)], &[jp(2, 6), jp(3, 6)])],
                constants: vec![(int(-1), 0)],
            }),
            classical_form: Some(ClassicalCombo {
                terms: vec![ClassicalTerm {
                    coeff: int(1),
                    qpow: 1,
                    name: ClassicalName::Omega,
                    dilation: 1,
                    negated_arg: false,
                }],
                thetas: vec![],
                constants: vec![(int(1), 0)],
            }),
            chain: chain("d1q", None, (fin(nq(1)), INF), 1, 1, 0, false),
        },
        "M6" => IdentityEntry {
            id: "M6",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j - 1)
                    .d1(2 * j - 1)
                    .done(parity(j), n * n + binom2(j + 1))
            }),
            hecke_form: hecke(-1, 2, &[], &[inf(q(1), 1)], FSpec::new(3, 7, 3, q(5), q(6), 1)),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(1, 0, nq(49), 120, q(-3)),
                    mt(-1, -3, nq(89), 120, q(-3)),
                    mt(1, -14, nq(119), 120, q(3)),
                    mt(-1, -1, nq(79), 120, q(3)),
                ],
                thetas: vec![
                    tq(
                        -1,
                        -11,
                        &[jp(12, 48), jp(16, 40), jp(2, 20), jp(3, 40), jb(17, 40), js(40)],
                        &[js(1), jp(3, 120), jb(6, 40), js(20), js(80)],
                    ),
                    tq(
                        1,
                        -4,
                        &[
                            jp(24, 48),
                            jp(1, 40),
                            jp(4, 40),
                            jb(1, 40),
                            jp(8, 20),
                            jb(4, 40),
                            jp(18, 40),
                            js(80),
                        ],
                        &[js(1), jp(3, 120), jb(6, 40), jb(2, 40), js(20), js(20), js(40)],
                    ),
                    tq(
                        1,
                        -12,
                        &[
                            jp(24, 48),
                            jp(1, 40),
                            jp(4, 40),
                            jb(1, 40),
                            jp(8, 20),
                            jb(16, 40),
                            jp(42, 80),
                            jp(42, 80),
                        ],
                        &[js(1), jp(3, 120), jb(6, 40), jb(2, 40), js(20), js(20), js(80)],
                    ),
                ],
                constants: vec![(int(1), -3), (int(-1), -14), (int(1), -1)],
            }),
            classical_form: None,
            chain: chain("d2", None, (INF, INF), 1, 1, 0, false),
        },
        "M7" => IdentityEntry {
            id: "M7",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(0), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j - 1)
                    .d1(2 * j - 1)
                    .done(parity(j), binom2(n + 1) + binom2(j + 1))
            }),
            hecke_form: hecke(
                -2,
                2,
                &[inf(nq(1), 1)],
                &[inf(q(1), 1)],
                FSpec::new(1, 3, 1, q(4), q(5), 2),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(2, -1, nq(1), 16, q(-1))],
                thetas: vec![tq(
                    -2,
                    -1,
                    &[jp(4, 8), jp(16, 32), jp(1, 16), jp(14, 32)],
                    &[jp(1, 2), jb(2, 16), jb(0, 16)],
                )],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d2", None, (fin(nq(0)), INF), 1, 1, 0, false),
        },
        "M8" => IdentityEntry {
            id: "M8",
            double_sum: dsum(true, true, 2, |n, j, w| {
                TermParts::new(w)
                    .n(q(1), 2, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j - 1)
                    .d1(2 * j - 1)
                    .done(parity(n + j), binom2(j + 1))
            }),
            hecke_form: hecke(
                1,
                1,
                &[inf(q(1), 2)],
                &[inf(q(2), 2)],
                FSpec::new(1, 5, 1, nq(2), nq(3), 1),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(2, 0, nq(7), 24, q(6)),
                    mt(2, -2, nq(1), 24, q(-6)),
                ],
                thetas: vec![tq(
                    1,
                    1,
                    &[js(1), jp(3, 8), jp(2, 16)],
                    &[js(2), js(16)],
                )],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d2", None, (SQRT, SQRT), 1, 2, 0, true),
        },
        "M9" => IdentityEntry {
            id: "M9",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(q(1), 2, n)
                    .d(q(2), 2, n - j)
                    .d(q(2), 2, j - 1)
                    .d1(4 * j - 2)
                    .done(parity(n + j), n * n + j * j + j)
            }),
            hecke_form: hecke(
                1,
                3,
                &[inf(q(1), 2)],
                &[inf(q(2), 2)],
                FSpec::new(1, 3, 1, nq(7), nq(9), 4),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(1, 0, nq(8), 32, q(-2))],
                thetas: vec![
                    tq(-1, -1, &[js(64), js(64), jp(28, 64)], &[js(32), jp(4, 64)]),
                    tq(
                        1,
                        -1,
                        &[jp(8, 16), jp(32, 64), jp(4, 32), jp(24, 64)],
                        &[jb(1, 4), jb(6, 32), jb(2, 32)],
                    ),
                ],
                constants: vec![],
            }),
            classical_form: Some(ClassicalCombo {
                terms: vec![ClassicalTerm {
                    coeff: int(-1),
                    qpow: 0,
                    name: ClassicalName::A,
                    dilation: 8,
                    negated_arg: true,
                }],
                thetas: vec![
                    tq(
                        1,
                        0,
                        &[js(32), js(32), js(32), jp(14, 32), jb(10, 32)],
                        &[jp(16, 32), jp(2, 32), jb(6, 32), jb(8, 32)],
                    ),
                    tq(-1, -1, &[js(64), js(64), jp(28, 64)], &[js(32), jp(4, 64)]),
                    tq(
                        1,
                        -1,
                        &[jp(8, 16), jp(32, 64), jp(4, 32), jp(24, 64)],
                        &[jb(1, 4), jb(6, 32), jb(2, 32)],
                    ),
                ],
                constants: vec![],
            }),
            chain: chain("d2", None, (fin(q(1)), INF), 2, 1, 0, false),
        },
        "M10" => IdentityEntry {
            id: "M10",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(0), 1, 2 * n)
                    .d(q(2), 2, n - j)
                    .d(q(2), 2, j - 1)
                    .d1(4 * j - 2)
                    .done(parity(j), n + j * j + j)
            }),
            hecke_form: hecke(
                -2,
                3,
                &[inf(nq(1), 1)],
                &[inf(q(1), 1)],
                FSpec::new(1, 5, 1, q(5), q(7), 2),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(-2, -1, nq(10), 48, q(-2)),
                    mt(-2, -4, nq(2), 48, q(-2)),
                ],
                thetas: vec![
                    tq(
                        -4,
                        -3,
                        &[jp(8, 32), jp(20, 48), jb(22, 48), jp(2, 24), jp(6, 48), js(96)],
                        &[jp(1, 2), jb(8, 48), jb(0, 48), js(24), jp(2, 48)],
                    ),
                    tq(
                        2,
                        6,
                        &[
                            jp(16, 32),
                            jp(4, 48),
                            jb(2, 48),
                            jp(10, 24),
                            jb(4, 48),
                            jp(20, 48),
                            js(96),
                        ],
                        &[jp(1, 2), jb(8, 48), jb(0, 48), js(24), js(24), js(48)],
                    ),
                    tq(
                        2,
                        -4,
                        &[
                            jp(16, 32),
                            jp(4, 48),
                            jb(2, 48),
                            jp(10, 24),
                            jb(20, 48),
                            jp(44, 96),
                            jp(44, 96),
                        ],
                        &[jp(1, 2), jb(8, 48), jb(0, 48), js(24), js(24), js(96)],
                    ),
                ],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d2", None, (fin(nq(0)), fin(nq(1))), 2, 1, 0, false),
        },
        "M11" => IdentityEntry {
            id: "M11",
            double_sum: dsum(false, false, 1, |n, j, w| {
                TermParts::new(w)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j)
                    .d1(2 * j + 1)
                    .done(parity(j), n * n + n + binom2(j + 1))
            }),
            hecke_form: hecke(1, 0, &[], &[inf(q(1), 1)], FSpec::new(3, 7, 3, q(3), q(4), 1)),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(1, -8, nq(17), 120, q(-3)),
                    mt(1, -6, nq(23), 120, q(3)),
                    mt(-1, -1, nq(47), 120, q(3)),
                    mt(1, -12, nq(7), 120, q(3)),
                ],
                thetas: vec![
                    tq(
                        1,
                        -9,
                        &[
                            jp(12, 48),
                            jp(1, 40),
                            jp(8, 40),
                            jb(19, 40),
                            jp(6, 20),
                            jb(12, 40),
                            jp(18, 40),
                            js(40),
                            js(40),
                        ],
                        &[js(1), jp(3, 120), jb(14, 40), jb(10, 40), js(20), js(20), js(20), js(80)],
                    ),
                    tq(
                        1,
                        -4,
                        &[
                            jp(12, 48),
                            jp(1, 40),
                            jp(8, 40),
                            jb(19, 40),
                            jp(6, 20),
                            jb(8, 40),
                            jp(19, 40),
                            jp(19, 40),
                            jb(1, 40),
                            jb(1, 40),
                        ],
                        &[
                            js(1),
                            jp(3, 120),
                            jb(14, 40),
                            jb(10, 40),
                            js(20),
                            js(20),
                            js(20),
                            js(40),
                            js(80),
                        ],
                    ),
                    tq(
                        -1,
                        -4,
                        &[
                            jp(24, 48),
                            jp(1, 40),
                            jp(12, 40),
                            jb(1, 40),
                            jp(4, 20),
                            jb(12, 40),
                            jp(18, 40),
                            js(80),
                        ],
                        &[js(1), jp(3, 120), jb(14, 40), jb(10, 40), js(20), js(20), js(40)],
                    ),
                    tq(
                        -1,
                        -8,
                        &[
                            jp(24, 48),
                            jp(1, 40),
                            jp(12, 40),
                            jb(1, 40),
                            jp(4, 20),
                            jb(8, 40),
                            jp(38, 80),
                            jp(38, 80),
                        ],
                        &[js(1), jp(3, 120), jb(14, 40), jb(10, 40), js(20), js(20), js(80)],
                    ),
                ],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d2q", None, (INF, INF), 1, 1, 0, false),
        },
        "M12" => IdentityEntry {
            id: "M12",
            double_sum: dsum(false, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(1), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j)
                    .d1(2 * j + 1)
                    .done(parity(j), binom2(n + 1) + binom2(j + 1))
            }),
            hecke_form: hecke(
                1,
                0,
                &[inf(nq(1), 1)],
                &[inf(q(1), 1)],
                FSpec::new(1, 3, 1, q(2), q(3), 2),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(-1, -1, nq(3), 16, q(1))],
                thetas: vec![tq(
                    1,
                    1,
                    &[jp(4, 8), jp(16, 32), jp(5, 16), jp(6, 32)],
                    &[jp(1, 2), jb(6, 16), jb(4, 16)],
                )],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d2q", None, (fin(nq(1)), INF), 1, 1, 0, false),
        },
        "M13" => IdentityEntry {
            id: "M13",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j - 1)
                    .d1(2 * j - 1)
                    .done(parity(j), n * n + binom2(j))
            }),
            hecke_form: hecke(-1, 1, &[], &[inf(q(1), 1)], FSpec::new(3, 7, 3, q(4), q(7), 1)),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(1, 0, nq(59), 120, q(-9)),
                    mt(-1, -7, nq(19), 120, q(-9)),
                    mt(-1, -4, nq(29), 120, q(9)),
                    mt(-1, -10, nq(11), 120, q(-9)),
                ],
                thetas: vec![
                    tq(
                        -1,
                        -8,
                        &[
                            jp(12, 48),
                            jp(3, 40),
                            jp(16, 40),
                            jb(17, 40),
                            jp(2, 20),
                            jb(4, 40),
                            jp(14, 40),
                            js(40),
                            js(40),
                        ],
                        &[js(1), jp(9, 120), jb(10, 40), jb(2, 40), js(20), js(20), js(20), js(80)],
                    ),
                    tq(
                        -1,
                        -9,
                        &[
                            jp(12, 48),
                            jp(3, 40),
                            jp(16, 40),
                            jb(17, 40),
                            jp(2, 20),
                            jb(16, 40),
                            jp(17, 40),
                            jp(17, 40),
                            jb(3, 40),
                            jb(3, 40),
                        ],
                        &[
                            js(1),
                            jp(9, 120),
                            jb(10, 40),
                            jb(2, 40),
                            js(20),
                            js(20),
                            js(20),
                            js(40),
                            js(80),
                        ],
                    ),
                    tq(
                        1,
                        -2,
                        &[
                            jp(24, 48),
                            jp(3, 40),
                            jp(4, 40),
                            jb(3, 40),
                            jp(8, 20),
                            jb(4, 40),
                            jp(14, 40),
                            js(80),
                        ],
                        &[js(1), jp(9, 120), jb(10, 40), jb(2, 40), js(20), js(20), js(40)],
                    ),
                    tq(
                        1,
                        -10,
                        &[
                            jp(24, 48),
                            jp(3, 40),
                            jp(4, 40),
                            jb(3, 40),
                            jp(8, 20),
                            jb(16, 40),
                            jp(34, 80),
                            jp(34, 80),
                        ],
                        &[js(1), jp(9, 120), jb(10, 40), jb(2, 40), js(20), js(20), js(80)],
                    ),
                ],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d3", None, (INF, INF), 1, 1, -1, false),
        },
        "M14" => IdentityEntry {
            id: "M14",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(0), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j - 1)
                    .d1(2 * j - 1)
                    .done(parity(j), binom2(n + 1) + binom2(j))
            }),
            hecke_form: hecke(
                -2,
                1,
                &[inf(nq(1), 1)],
                &[inf(q(1), 1)],
                FSpec::new(1, 3, 1, q(3), q(6), 2),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(2, 0, nq(7), 16, q(-3))],
                thetas: vec![tq(
                    -2,
                    0,
                    &[jp(4, 8), jp(16, 32), jp(1, 16), jp(14, 32)],
                    &[jp(1, 2), jb(2, 16), jb(4, 16)],
                )],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d3", None, (fin(nq(0)), INF), 1, 1, -1, false),
        },
        "M15" => IdentityEntry {
            id: "M15",
            double_sum: dsum(true, true, 2, |n, j, w| {
                TermParts::new(w)
                    .n(q(1), 2, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j - 1)
                    .d1(2 * j - 1)
                    .done(parity(n + j), binom2(j))
            }),
            hecke_form: hecke(
                1,
                0,
                &[inf(q(1), 2)],
                &[inf(q(2), 2)],
                FSpec::new(1, 5, 1, nq(1), nq(4), 1),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(2, 0, nq(13), 24, q(2)),
                    mt(-2, -1, nq(5), 24, q(2)),
                ],
                thetas: vec![tq(
                    1,
                    0,
                    &[js(1), jp(1, 8), jp(6, 16)],
                    &[js(2), js(16)],
                )],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d3", None, (SQRT, SQRT), 1, 2, -1, true),
        },
        "M16" => IdentityEntry {
            id: "M16",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(q(1), 2, n)
                    .d(q(2), 2, n - j)
                    .d(q(2), 2, j - 1)
                    .d1(4 * j - 2)
                    .done(parity(n + j), n * n + j * j - j)
            }),
            hecke_form: hecke(
                1,
                1,
                &[inf(q(1), 2)],
                &[inf(q(2), 2)],
                FSpec::new(1, 3, 1, nq(5), nq(11), 4),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(-1, -1, nq(8), 32, q(-6))],
                thetas: vec![
                    tq(
                        1,
                        0,
                        &[js(32), js(32), js(32), jp(10, 32), jb(6, 32)],
                        &[jp(6, 32), jp(16, 32), jb(0, 32), jb(10, 32)],
                    ),
                    tq(
                        1,
                        -1,
                        &[jp(8, 16), jp(32, 64), jp(4, 32), jp(24, 64)],
                        &[jb(1, 4), jb(2, 32), jb(10, 32)],
                    ),
                ],
                constants: vec![(rat(1, 2), 0)],
            }),
            classical_form: Some(ClassicalCombo {
                terms: vec![ClassicalTerm {
                    coeff: int(1),
                    qpow: -1,
                    name: ClassicalName::U1,
                    dilation: 8,
                    negated_arg: false,
                }],
                thetas: vec![
                    tq(
                        -1,
                        -1,
                        &[js(32), js(32), js(32), jb(10, 32), jp(14, 32)],
                        &[jb(16, 32), jp(6, 32), jp(8, 32), jb(2, 32)],
                    ),
                    tq(
                        1,
                        0,
                        &[js(32), js(32), js(32), jp(10, 32), jb(6, 32)],
                        &[jp(6, 32), jp(16, 32), jb(0, 32), jb(10, 32)],
                    ),
                    tq(
                        1,
                        -1,
                        &[jp(8, 16), jp(32, 64), jp(4, 32), jp(24, 64)],
                        &[jb(1, 4), jb(2, 32), jb(10, 32)],
                    ),
                ],
                constants: vec![(rat(1, 2), 0)],
            }),
            chain: chain("d3", None, (fin(q(1)), INF), 2, 1, -2, false),
        },
        "M17" => IdentityEntry {
            id: "M17",
            double_sum: dsum(true, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(0), 1, 2 * n)
                    .d(q(2), 2, n - j)
                    .d(q(2), 2, j - 1)
                    .d1(4 * j - 2)
                    .done(parity(j), n + j * j - j)
            }),
            hecke_form: hecke(
                -2,
                1,
                &[inf(nq(1), 1)],
                &[inf(q(1), 1)],
                FSpec::new(1, 5, 1, q(3), q(9), 2),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(2, 0, nq(22), 48, q(-6)),
                    mt(2, -1, nq(14), 48, q(-6)),
                ],
                thetas: vec![
                    tq(
                        -2,
                        3,
                        &[
                            jp(8, 32),
                            jp(20, 48),
                            jb(18, 48),
                            jp(2, 24),
                            jb(4, 48),
                            jp(12, 48),
                            js(48),
                            js(48),
                        ],
                        &[jp(1, 2), jb(16, 48), jb(8, 48), js(24), js(24), js(24), js(96)],
                    ),
                    tq(
                        -2,
                        -1,
                        &[
                            jp(8, 32),
                            jp(20, 48),
                            jb(18, 48),
                            jp(2, 24),
                            jb(20, 48),
                            jp(18, 48),
                            jp(18, 48),
                            jb(6, 48),
                            jb(6, 48),
                        ],
                        &[
                            jp(1, 2),
                            jb(16, 48),
                            jb(8, 48),
                            js(24),
                            js(24),
                            js(24),
                            js(48),
                            js(96),
                        ],
                    ),
                    tq(
                        2,
                        10,
                        &[
                            jp(16, 32),
                            jp(4, 48),
                            jb(6, 48),
                            jp(10, 24),
                            jb(4, 48),
                            jp(12, 48),
                            js(96),
                        ],
                        &[jp(1, 2), jb(16, 48), jb(8, 48), js(24), js(24), js(48)],
                    ),
                    tq(
                        2,
                        0,
                        &[
                            jp(16, 32),
                            jp(4, 48),
                            jb(6, 48),
                            jp(10, 24),
                            jb(20, 48),
                            jp(36, 96),
                            jp(36, 96),
                        ],
                        &[jp(1, 2), jb(16, 48), jb(8, 48), js(24), js(24), js(96)],
                    ),
                ],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d3", None, (fin(nq(0)), fin(nq(1))), 2, 1, -2, false),
        },
        "M18" => IdentityEntry {
            id: "M18",
            double_sum: dsum(false, false, 1, |n, j, w| {
                TermParts::new(w)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j)
                    .d1(2 * j + 1)
                    .done(parity(j), n * n + n + binom2(j))
            }),
            hecke_form: hecke(1, 0, &[], &[inf(q(1), 1)], FSpec::new(3, 7, 3, q(2), q(5), 1)),
            appell_form: Some(AppellForm {
                m_terms: vec![
                    mt(1, 0, nq(67), 120, q(-9)),
                    mt(1, -9, nq(13), 120, q(9)),
                    mt(-1, -2, nq(37), 120, q(9)),
                    mt(-1, -1, nq(43), 120, q(-9)),
                ],
                thetas: vec![
                    tq(
                        1,
                        -7,
                        &[
                            jp(12, 48),
                            jp(3, 40),
                            jp(8, 40),
                            jb(17, 40),
                            jp(6, 20),
                            jb(12, 40),
                            jp(14, 40),
                            js(40),
                            js(40),
                        ],
                        &[js(1), jp(9, 120), jb(18, 40), jb(6, 40), js(20), js(20), js(20), js(80)],
                    ),
                    tq(
                        1,
                        -4,
                        &[
                            jp(12, 48),
                            jp(3, 40),
                            jp(8, 40),
                            jb(17, 40),
                            jp(6, 20),
                            jb(8, 40),
                            jp(17, 40),
                            jp(17, 40),
                            jb(3, 40),
                            jb(3, 40),
                        ],
                        &[
                            js(1),
                            jp(9, 120),
                            jb(18, 40),
                            jb(6, 40),
                            js(20),
                            js(20),
                            js(20),
                            js(40),
                            js(80),
                        ],
                    ),
                    tq(
                        -1,
                        -3,
                        &[
                            jp(24, 48),
                            jp(3, 40),
                            jp(12, 40),
                            jb(3, 40),
                            jp(4, 20),
                            jb(12, 40),
                            jp(14, 40),
                            js(80),
                        ],
                        &[js(1), jp(9, 120), jb(18, 40), jb(6, 40), js(20), js(20), js(40)],
                    ),
                    tq(
                        -1,
                        -7,
                        &[
                            jp(24, 48),
                            jp(3, 40),
                            jp(12, 40),
                            jb(3, 40),
                            jp(4, 20),
                            jb(8, 40),
                            jp(34, 80),
                            jp(34, 80),
                        ],
                        &[js(1), jp(9, 120), jb(18, 40), jb(6, 40), js(20), js(20), js(80)],
                    ),
                ],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d3q", None, (INF, INF), 1, 1, 0, false),
        },
        "M19" => IdentityEntry {
            id: "M19",
            double_sum: dsum(false, false, 1, |n, j, w| {
                TermParts::new(w)
                    .n(nq(1), 1, n)
                    .d(q(1), 1, n - j)
                    .d(q(1), 1, j)
                    .d1(2 * j + 1)
                    .done(parity(j), binom2(n + 1) + binom2(j))
            }),
            hecke_form: hecke(
                1,
                0,
                &[inf(nq(1), 1)],
                &[inf(q(1), 1)],
                FSpec::new(1, 3, 1, q(1), q(4), 2),
            ),
            appell_form: Some(AppellForm {
                m_terms: vec![mt(1, 0, nq(11), 16, q(-3))],
                thetas: vec![tq(
                    1,
                    1,
                    &[jp(4, 8), jp(16, 32), jp(5, 16), jp(6, 32)],
                    &[jp(1, 2), jb(8, 16), jb(2, 16)],
                )],
                constants: vec![],
            }),
            classical_form: None,
            chain: chain("d3q", None, (fin(nq(1)), INF), 1, 1, 0, false),
        },
        // Corollary entries: the double sum of the covered identity against
        // its classical closed form.
        "C8a" => IdentityEntry {
            id: "C8a",
            double_sum: entry("M2")?.double_sum,
            hecke_form: None,
            appell_form: None,
            classical_form: entry("M2")?.classical_form,
            chain: None,
        },
        "C8b" => IdentityEntry {
            id: "C8b",
            double_sum: entry("M5")?.double_sum,
            hecke_form: None,
            appell_form: None,
            classical_form: entry("M5")?.classical_form,
            chain: None,
        },
        "C8c" => IdentityEntry {
            id: "C8c",
            double_sum: entry("M9")?.double_sum,
            hecke_form: None,
            appell_form: None,
            classical_form: entry("M9")?.classical_form,
            chain: None,
        },
        "C8d" => IdentityEntry {
            id: "C8d",
            double_sum: entry("M16")?.double_sum,
            hecke_form: None,
            appell_form: None,
            classical_form: entry("M16")?.classical_form,
            chain: None,
        },
        "ID0" => IdentityEntry {
            id: "ID0",
            double_sum: entry("W2")?.double_sum,
            hecke_form: None,
            appell_form: None,
            classical_form: entry("W2")?.classical_form,
            chain: None,
        },
        _ => return Err(QError::UnknownId { id: id.into() }),
    };
    Ok(e)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_first_terms() {
        let omega = eval_classical(ClassicalName::Omega, 3);
        assert_eq!(omega.to_string(), "1 + 2*q + 3*q^2 + 4*q^3");
        let a = eval_classical(ClassicalName::A, 4);
        assert_eq!(a.coeff(0), int(0));
        assert_eq!(a.coeff(1), int(1));
        assert_eq!(a.coeff(2), int(2));
        let t0 = eval_classical(ClassicalName::T0, 4);
        assert_eq!(t0.min_exp(), Some(2));
    }

    #[test]
    fn m5_low_terms_and_closed_form() {
        // brute-force oracle over n, j <= 12
        let mut brute = QSeries::zero(Order::UpTo(12));
        let e = entry("M5").unwrap();
        let ds = e.double_sum.as_ref().unwrap();
        for n in 0..=12 {
            for j in 0..=n {
                brute = brute.add(&(ds.term)(n, j, 12));
            }
        }
        let production = eval_double_sum("M5", 12, 512).unwrap();
        assert!(production.eq_upto(&brute, 12).unwrap().is_equal());
        assert_eq!(production.coeff(0), int(1));
        assert_eq!(production.coeff(1), int(1));
        assert_eq!(production.coeff(2), int(2));
        // M5 = 1 + q omega(q)
        let classical = eval_classical_form("M5", 12).unwrap();
        assert!(production.eq_upto(&classical, 12).unwrap().is_equal());
    }

    #[test]
    fn m4_constant_term() {
        let m4 = eval_double_sum("M4", 6, 512).unwrap();
        assert_eq!(m4.coeff(0), int(1));
    }

    #[test]
    fn m5_all_forms_agree() {
        for (label, rep) in verify_identity("M5", 25, 512).unwrap() {
            assert!(rep.is_equal(), "M5 {label}: {rep:?}");
        }
    }

    #[test]
    fn w3_and_m9_forms_agree_modestly() {
        for id in ["W3", "M9"] {
            for (label, rep) in verify_identity(id, 20, 512).unwrap() {
                assert!(rep.is_equal(), "{id} {label}: {rep:?}");
            }
        }
    }

    #[test]
    fn starred_average_matches_closed_forms() {
        let ds = eval_double_sum("W2", 16, 1024).unwrap();
        let hf = eval_hecke_form("W2", 16).unwrap();
        assert!(ds.eq_upto(&hf, 16).unwrap().is_equal());
    }

    #[test]
    fn starred_even_and_odd_differ() {
        let e = entry("M2").unwrap();
        let ds = e.double_sum.as_ref().unwrap();
        let (even, odd) = starred_parts_of(ds, "M2", 16, 1024).unwrap();
        assert!(!even.eq_upto(&odd, 16).unwrap().is_equal());
    }

    #[test]
    fn perturbed_catalog_detected() {
        // doctor the M5 appell form's constant and watch the comparison fail
        let e = entry("M5").unwrap();
        let mut appell = e.appell_form.clone().unwrap();
        appell.constants[0].0 = int(1);
        let good = eval_appell_form_of(&e.appell_form.unwrap(), 15).unwrap();
        let bad = eval_appell_form_of(&appell, 15).unwrap();
        match good.eq_upto(&bad, 15).unwrap() {
            EqReport::FirstMismatch { exponent, .. } => assert_eq!(exponent, 0),
            EqReport::Equal => panic!("perturbation went undetected"),
        }
    }

    #[test]
    fn chain_lhs_matches_double_sum() {
        for id in ["M5", "M7"] {
            let ds = eval_double_sum(id, 16, 512).unwrap();
            let lhs = eval_chain_lhs(id, 16, 512).unwrap();
            assert!(ds.eq_upto(&lhs, 16).unwrap().is_equal(), "{id}");
        }
    }

    #[test]
    fn unknown_ids_error() {
        assert!(matches!(
            entry("M99"),
            Err(QError::UnknownId { .. })
        ));
        assert!(matches!(
            eval_classical_form("M1", 10),
            Err(QError::UnknownId { .. })
        ));
    }
}
