//! Batch verification suites.
//!
//! Each suite runs one family of checks and emits records through a sink as
//! they complete, so long runs show progress. The suite functions are what
//! both the CLI and the acceptance tests drive.

use crate::bailey::{
    bailey_step, base_change, catalog_pair, pairs_equal, thm_main1, thm_main1_inverse,
    thm_main2, thm_main3, verify_pair, BaileyPair, PairCheck, RhoParam, PAIR_IDS,
};
use crate::error::{QError, Result};
use crate::hecke::{appell_m, hecke_f, hm_expand, AppellSpec, FSpec};
use crate::identities::{
    entry, eval_chain_lhs, eval_double_sum, eval_hecke_form, starred_parts_of, verify_identity,
    COROLLARY_IDS, DEFAULT_ROW_CAP, IDENTITY_IDS,
};
use crate::qproducts::{binom2, poch_finite, poch_infinite, theta_j, theta_j_product, Sign, ThetaArg};
use crate::report::Record;
use crate::series::{compute_to, int, EqReport, Order, QSeries};

pub type Sink<'a> = &'a mut dyn FnMut(&Record);

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub order: Option<i64>,
    pub n_max: Option<usize>,
    pub ids: Option<Vec<String>>,
    pub row_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            order: None,
            n_max: None,
            ids: None,
            row_cap: DEFAULT_ROW_CAP,
        }
    }
}

impl SuiteConfig {
    fn wants(&self, id: &str) -> bool {
        match &self.ids {
            None => true,
            Some(list) => list.iter().any(|x| x == id),
        }
    }
}

fn push(sink: Sink, records: &mut Vec<Record>, r: Record) {
    sink(&r);
    records.push(r);
}

fn pair_check_report(check: PairCheck) -> Result<EqReport> {
    Ok(match check {
        PairCheck::Equal => EqReport::Equal,
        PairCheck::FirstMismatch {
            exponent,
            left,
            right,
            ..
        } => EqReport::FirstMismatch {
            exponent,
            left,
            right,
        },
    })
}

// ---------------------------------------------------------------------------
// Pair suite
// ---------------------------------------------------------------------------

/// Every catalog pair satisfies the defining relation.
pub fn pairs_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let order = cfg.order.unwrap_or(50);
    let n_max = cfg.n_max.unwrap_or(12);
    let mut out = Vec::new();
    for id in PAIR_IDS {
        if !cfg.wants(id) {
            continue;
        }
        let r = Record::run(*id, "pair relation", order, || {
            pair_check_report(verify_pair(&catalog_pair(id)?, n_max, order)?)
        });
        push(sink, &mut out, r);
    }
    out
}

// ---------------------------------------------------------------------------
// Transform suite
// ---------------------------------------------------------------------------

fn eq_pairs(a: &BaileyPair, b: &BaileyPair, n_max: usize, order: i64) -> Result<EqReport> {
    pair_check_report(pairs_equal(a, b, n_max, order)?)
}

/// Constructors against the catalog, composition and inversion laws, the
/// defining recurrence, and the Bailey-lemma step across rho shapes.
pub fn transforms_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let order = cfg.order.unwrap_or(40);
    let n_max = cfg.n_max.unwrap_or(10);
    let mut out = Vec::new();

    let seeds: [(&str, &str, &str); 4] = [
        ("slater1", "cor1", "cor1q"),
        ("slater2", "cor2", "cor2q"),
        ("slater3", "cor3", "cor3q"),
        ("bk_seed", "bk", "bk_q"),
    ];
    for (seed, via1, via3) in seeds {
        let r = Record::run(seed, format!("main1 -> {via1}"), order, || {
            eq_pairs(
                &thm_main1(&catalog_pair(seed)?)?,
                &catalog_pair(via1)?,
                n_max,
                order,
            )
        });
        push(sink, &mut out, r);
        let r = Record::run(seed, format!("main3 -> {via3}"), order, || {
            eq_pairs(
                &thm_main3(&catalog_pair(seed)?)?,
                &catalog_pair(via3)?,
                n_max,
                order,
            )
        });
        push(sink, &mut out, r);
        let r = Record::run(seed, "main3 = main2 o main1", order, || {
            let seed_pair = catalog_pair(seed)?;
            eq_pairs(
                &thm_main2(&thm_main1(&seed_pair)?)?,
                &thm_main3(&seed_pair)?,
                n_max,
                order,
            )
        });
        push(sink, &mut out, r);
        let r = Record::run(seed, "main1_inverse o main1 = id", order, || {
            let seed_pair = catalog_pair(seed)?;
            eq_pairs(
                &thm_main1_inverse(&thm_main1(&seed_pair)?)?,
                &seed_pair,
                n_max,
                order,
            )
        });
        push(sink, &mut out, r);
        let r = Record::run(seed, "main1 recurrence", order, || {
            let seed_pair = catalog_pair(seed)?;
            let derived = thm_main1(&seed_pair)?;
            for n in 0..=(n_max.min(8)) {
                let ni = n as i64;
                let one_minus = |k: i64| QSeries::one().sub(&QSeries::monomial(int(1), k));
                let first = derived
                    .alpha(n + 2, order + 8)
                    .div_to(&one_minus(2 * ni + 4), order)?;
                let second = if n == 0 {
                    QSeries::zero_exact()
                } else {
                    QSeries::monomial(int(1), 2 * ni)
                        .mul(&derived.alpha(n, order + 8))
                        .div_to(&one_minus(2 * ni), order)?
                };
                let lhs = first.sub(&second);
                let rhs = seed_pair.alpha(n + 1, order).neg();
                if let EqReport::FirstMismatch {
                    exponent,
                    left,
                    right,
                } = lhs.eq_upto(&rhs, order)?
                {
                    return Ok(EqReport::FirstMismatch {
                        exponent,
                        left,
                        right,
                    });
                }
            }
            Ok(EqReport::Equal)
        });
        push(sink, &mut out, r);
    }

    // derived catalog pairs are one lemma step from the corollary pairs
    let steps: [(&str, &str, RhoParam, RhoParam); 6] = [
        ("cor1", "d1", RhoParam::Finite(ThetaArg::minus_one()), RhoParam::Infinity),
        ("cor1q", "d1q", RhoParam::Finite(ThetaArg::neg_q_pow(1)), RhoParam::Infinity),
        ("cor2", "d2", RhoParam::Infinity, RhoParam::Infinity),
        ("cor2q", "d2q", RhoParam::Infinity, RhoParam::Infinity),
        ("cor3", "d3", RhoParam::Infinity, RhoParam::Infinity),
        ("cor3q", "d3q", RhoParam::Infinity, RhoParam::Infinity),
    ];
    for (seed, target, r1, r2) in steps {
        let r = Record::run(seed, format!("bailey_step -> {target}"), order, || {
            eq_pairs(
                &bailey_step(&catalog_pair(seed)?, r1, r2)?,
                &catalog_pair(target)?,
                n_max.min(8),
                order,
            )
        });
        push(sink, &mut out, r);
    }

    // the lemma output satisfies the pair relation for every generic rho shape
    let rho_grid: [(&str, RhoParam, RhoParam); 6] = [
        ("(inf, inf)", RhoParam::Infinity, RhoParam::Infinity),
        ("(-1, inf)", RhoParam::Finite(ThetaArg::minus_one()), RhoParam::Infinity),
        ("(-q, inf)", RhoParam::Finite(ThetaArg::neg_q_pow(1)), RhoParam::Infinity),
        ("(q, inf)", RhoParam::Finite(ThetaArg::q_pow(1)), RhoParam::Infinity),
        ("(sqrt, -sqrt)", RhoParam::SqrtPair, RhoParam::SqrtPair),
        ("(-1, -q)", RhoParam::Finite(ThetaArg::minus_one()), RhoParam::Finite(ThetaArg::neg_q_pow(1))),
    ];
    for seed in ["unit", "slater1", "slater2", "slater3", "bk", "bk_q"] {
        for (label, r1, r2) in rho_grid {
            let pair = match catalog_pair(seed) {
                Ok(p) => p,
                Err(_) => continue,
            };
            match bailey_step(&pair, r1, r2) {
                Err(QError::NonGenericRho { .. }) => continue, // skip non-generic combos
                Err(e) => {
                    let r = Record::run(seed, format!("step {label}"), order, || Err(e));
                    push(sink, &mut out, r);
                }
                Ok(stepped) => {
                    let r = Record::run(seed, format!("step {label}"), order, || {
                        pair_check_report(verify_pair(&stepped, n_max.min(8), order)?)
                    });
                    push(sink, &mut out, r);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Change-of-base chain suite
// ---------------------------------------------------------------------------

pub fn chain_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let order = cfg.order.unwrap_or(40);
    let mut out = Vec::new();

    let r = Record::run("bk", "base_change beta closed form", order, || {
        let bc = base_change(&catalog_pair("bk")?)?;
        for n in 1..=6usize {
            let den = poch_finite(ThetaArg::q_pow(2 * n as i64), 2, n as u32).scaled(&int(2));
            let expect = QSeries::one().neg().div_to(&den, order)?;
            if let EqReport::FirstMismatch {
                exponent,
                left,
                right,
            } = bc.beta(n, order).eq_upto(&expect, order)?
            {
                return Ok(EqReport::FirstMismatch {
                    exponent,
                    left,
                    right,
                });
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    let r = Record::run("bk", "base_change satisfies (1, q^2) relation", order, || {
        pair_check_report(verify_pair(&base_change(&catalog_pair("bk")?)?, 8, order)?)
    });
    push(sink, &mut out, r);

    let r = Record::run("bk", "-2 base_change(bk) = andrews1(q -> q^2)", order, || {
        eq_pairs(
            &base_change(&catalog_pair("bk")?)?.scaled(int(-2)),
            &catalog_pair("andrews1")?.dilated(2),
            8,
            order,
        )
    });
    push(sink, &mut out, r);

    let r = Record::run("andrews1", "-andrews1 -> main2 -> andrews2", order, || {
        eq_pairs(
            &thm_main2(&catalog_pair("andrews1")?.scaled(int(-1)))?,
            &catalog_pair("andrews2")?,
            8,
            order,
        )
    });
    push(sink, &mut out, r);

    let r = Record::run(
        "andrews1",
        "-andrews1 -> main1_inverse -> andrews0",
        order,
        || {
            eq_pairs(
                &thm_main1_inverse(&catalog_pair("andrews1")?.scaled(int(-1)))?,
                &catalog_pair("andrews0")?,
                8,
                order,
            )
        },
    );
    push(sink, &mut out, r);
    out
}

// ---------------------------------------------------------------------------
// Identity, corollary, starred, cross-path suites
// ---------------------------------------------------------------------------

pub fn identities_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let order = cfg.order.unwrap_or(40);
    let mut out = Vec::new();
    for id in IDENTITY_IDS {
        if !cfg.wants(id) {
            continue;
        }
        match verify_identity(id, order, cfg.row_cap) {
            Ok(results) => {
                for (label, rep) in results {
                    let r = Record::run(*id, label, order, || Ok(rep));
                    push(sink, &mut out, r);
                }
            }
            Err(e) => {
                let r = Record::run(*id, "all forms", order, || Err(e));
                push(sink, &mut out, r);
            }
        }
    }
    out
}

pub fn corollary_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let order = cfg.order.unwrap_or(40);
    let mut out = Vec::new();
    for id in COROLLARY_IDS {
        if !cfg.wants(id) {
            continue;
        }
        match verify_identity(id, order, cfg.row_cap) {
            Ok(results) => {
                for (label, rep) in results {
                    let r = Record::run(*id, label, order, || Ok(rep));
                    push(sink, &mut out, r);
                }
            }
            Err(e) => {
                let r = Record::run(*id, "all forms", order, || Err(e));
                push(sink, &mut out, r);
            }
        }
    }
    out
}

/// Even and odd stabilized partial sums differ, and their average equals
/// the closed forms.
pub fn starred_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let order = cfg.order.unwrap_or(20);
    let mut out = Vec::new();
    for id in ["W2", "M2", "M8", "M15"] {
        if !cfg.wants(id) {
            continue;
        }
        let r = Record::property(id, "even and odd limits differ", order, || {
            let e = entry(id)?;
            let ds = e.double_sum.as_ref().expect("starred ids have double sums");
            let (even, odd) = starred_parts_of(ds, id, order, cfg.row_cap)?;
            match even.eq_upto(&odd, order)? {
                EqReport::Equal => Ok((false, Some("even = odd: star would be vacuous".into()))),
                EqReport::FirstMismatch { exponent, .. } => {
                    Ok((true, Some(format!("first differing exponent: {exponent}"))))
                }
            }
        });
        push(sink, &mut out, r);
        let r = Record::run(id, "starred average = hecke", order, || {
            eval_double_sum(id, order, cfg.row_cap)?.eq_upto(&eval_hecke_form(id, order)?, order)
        });
        push(sink, &mut out, r);
        let r = Record::run(id, "starred average = appell", order, || {
            eval_double_sum(id, order, cfg.row_cap)?
                .eq_upto(&crate::identities::eval_appell_form(id, order)?, order)
        });
        push(sink, &mut out, r);
    }
    out
}

/// The double sum equals the limiting-form lhs of its (pair, rho, dilation)
/// tuple: two independent code paths to the same series.
pub fn crosspath_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let order = cfg.order.unwrap_or(30);
    let mut out = Vec::new();
    for id in IDENTITY_IDS {
        if !cfg.wants(id) {
            continue;
        }
        let r = Record::run(id.to_string(), "double_sum = limit lhs", order, || {
            eval_double_sum(id, order, cfg.row_cap)?
                .eq_upto(&eval_chain_lhs(id, order, cfg.row_cap)?, order)
        });
        push(sink, &mut out, r);
    }
    out
}

// ---------------------------------------------------------------------------
// Hickerson-Mortenson suite
// ---------------------------------------------------------------------------

/// Every (n, p, x, y, dilation) specialization the derivations use, plus the
/// argument-swapped form that the a = c symmetry identifies.
pub fn hm_cases() -> Vec<(&'static str, i64, u8, ThetaArg, ThetaArg, i64, i64)> {
    let q = ThetaArg::q_pow;
    let nq = ThetaArg::neg_q_pow;
    vec![
        ("M1", 3, 2, q(4), q(6), 1, 40),
        ("M1'", 3, 2, q(6), q(4), 1, 40),
        ("M2", 1, 2, nq(1), nq(3), 1, 40),
        ("M3", 1, 1, nq(5), nq(9), 4, 40),
        ("M4", 3, 2, q(2), q(4), 1, 40),
        ("M5", 1, 1, q(1), q(3), 2, 40),
        ("M6", 3, 4, q(5), q(6), 1, 30),
        ("M7", 1, 2, q(4), q(5), 2, 40),
        ("M8", 1, 4, nq(2), nq(3), 1, 30),
        ("M9", 1, 2, nq(7), nq(9), 4, 40),
        ("M10", 1, 4, q(5), q(7), 2, 30),
        ("M11", 3, 4, q(3), q(4), 1, 30),
        ("M12", 1, 2, q(2), q(3), 2, 40),
        ("M13", 3, 4, q(4), q(7), 1, 30),
        ("M14", 1, 2, q(3), q(6), 2, 40),
        ("M15", 1, 4, nq(1), nq(4), 1, 30),
        ("M16", 1, 2, nq(5), nq(11), 4, 40),
        ("M17", 1, 4, q(3), q(9), 2, 30),
        ("M18", 3, 4, q(2), q(5), 1, 30),
        ("M19", 1, 2, q(1), q(4), 2, 40),
    ]
}

pub fn hm_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let mut out = Vec::new();
    for (id, n, p, x, y, d, default_order) in hm_cases() {
        if !cfg.wants(id.trim_end_matches('\'')) {
            continue;
        }
        let order = cfg.order.unwrap_or(default_order).min(default_order);
        let label = format!("f_{{{n},{},{n}}}({x}, {y}; d={d}) = hm rhs", n + p as i64);
        let r = Record::run(id, label, order, || {
            let f = hecke_f(&FSpec::new(n, n + p as i64, n, x, y, d), order);
            let rhs = hm_expand(n, p, x, y, d, order)?;
            f.eq_upto(&rhs, order)
        });
        push(sink, &mut out, r);
    }
    out
}

// ---------------------------------------------------------------------------
// Function-law suite
// ---------------------------------------------------------------------------

fn sample_appell_specs() -> Vec<(ThetaArg, i64, ThetaArg)> {
    let q = ThetaArg::q_pow;
    let nq = ThetaArg::neg_q_pow;
    vec![
        (nq(7), 8, q(2)),
        (nq(1), 8, q(4)),
        (nq(3), 16, q(1)),
        (nq(5), 16, q(-2)),
        (q(5), 6, q(-2)),
        (q(3), 4, q(-2)),
        (q(3), 10, nq(2)),
        (q(7), 12, nq(0)),
        (nq(2), 5, q(1)),
        (nq(4), 9, q(2)),
        (q(2), 7, nq(3)),
        (nq(6), 14, q(3)),
        (q(4), 11, nq(1)),
        (nq(8), 16, q(5)),
        (q(1), 3, nq(1)),
        (nq(3), 6, q(-1)),
        (q(6), 13, nq(2)),
        (nq(5), 12, q(1)),
        (q(2), 9, nq(4)),
        (nq(1), 10, q(3)),
        (q(8), 15, nq(3)),
        (nq(9), 16, q(7)),
    ]
}

pub fn laws_suite(cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let mut out = Vec::new();
    let order = cfg.order.unwrap_or(40);

    // m(q, q^2, -1) = 1/2 exactly
    let r = Record::run("mprod", "m(q, q^2, -1) = 1/2", order, || {
        let spec = AppellSpec::new(ThetaArg::q_pow(1), 2, ThetaArg::minus_one())?;
        appell_m(&spec, order)?.eq_upto(&QSeries::constant(crate::series::rat(1, 2)), order)
    });
    push(sink, &mut out, r);

    // m1: m(x, q, z) = x^{-1} m(x^{-1}, q, z^{-1})
    let r = Record::run("m1", "inversion law on sampled specs", order, || {
        for (x, m, z) in sample_appell_specs() {
            let lhs = appell_m(&AppellSpec::new(x, m, z)?, order)?;
            let inner = appell_m(&AppellSpec::new(x.inverse(), m, z.inverse())?, order + x.exp.abs())?;
            let rhs = x.inverse().scale_series(&inner).truncated(order);
            if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, order)? {
                return Ok(r);
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // m2: m(qx, q, z) = 1 - x m(x, q, z)
    let r = Record::run("m2", "shift law on sampled specs", order, || {
        for (x, m, z) in sample_appell_specs() {
            let shifted = ThetaArg::q_pow(m).mul(x);
            let lhs = appell_m(&AppellSpec::new(shifted, m, z)?, order)?;
            let inner = appell_m(&AppellSpec::new(x, m, z)?, order + x.exp.abs())?;
            let rhs = QSeries::one().sub(&x.scale_series(&inner)).truncated(order);
            if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, order)? {
                return Ok(r);
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // m3: changing z costs an explicit theta quotient
    let r = Record::run("m3", "z-change law on sampled pairs", order, || {
        let pairs = [
            (ThetaArg::neg_q_pow(7), 48i64, ThetaArg::q_pow(6), ThetaArg::q_pow(-6)),
            (ThetaArg::neg_q_pow(25), 48, ThetaArg::q_pow(-24), ThetaArg::q_pow(6)),
            (ThetaArg::q_pow(5), 6, ThetaArg::q_pow(-2), ThetaArg::q_pow(2)),
            (ThetaArg::neg_q_pow(1), 8, ThetaArg::q_pow(4), ThetaArg::q_pow(2)),
            (ThetaArg::neg_q_pow(3), 16, ThetaArg::q_pow(1), ThetaArg::q_pow(5)),
        ];
        for (x, m, z, z0) in pairs {
            let lhs = appell_m(&AppellSpec::new(x, m, z)?, order)?
                .sub(&appell_m(&AppellSpec::new(x, m, z0)?, order)?);
            let rhs = compute_to(order, |w| {
                let j1 = theta_j(ThetaArg::q_pow(m), 3 * m, w);
                let num = j1
                    .mul(&j1)
                    .mul(&j1)
                    .mul(&theta_j(z.div(z0), m, w))
                    .mul(&theta_j(x.mul(z).mul(z0), m, w));
                let den = theta_j(z0, m, w)
                    .mul(&theta_j(z, m, w))
                    .mul(&theta_j(x.mul(z0), m, w))
                    .mul(&theta_j(x.mul(z), m, w));
                z0.scale_series(&num).div_to(&den, order)
            })?;
            if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, order)? {
                return Ok(r);
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // theta sum form = product form on the full grid
    let r = Record::run("theta", "bilateral sum = triple product (grid)", 60, || {
        for m in 1..=12i64 {
            for a in -24..=24i64 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let x = ThetaArg { sign, exp: a };
                    let lhs = theta_j(x, m, 60);
                    let rhs = theta_j_product(x, m, 60)?;
                    if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, 60)? {
                        return Ok(r);
                    }
                }
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // shift law j(q^{nm} x, q^m) = (-1)^n q^{-m binom(n,2)} x^{-n} j(x, q^m)
    let r = Record::run("j1", "argument shift law (grid)", 60, || {
        for m in 1..=12i64 {
            for a in -24..=24i64 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let x = ThetaArg { sign, exp: a };
                    for n in -4..=4i64 {
                        let shifted = ThetaArg {
                            sign,
                            exp: a + n * m,
                        };
                        let lhs = theta_j(shifted, m, 60);
                        let pre = ThetaArg {
                            sign: Sign::Minus.pow(n).mul(sign.pow(n)),
                            exp: -m * binom2(n) - n * a,
                        };
                        let rhs = pre.scale_series(&theta_j(x, m, 60 - pre.exp)).truncated(60);
                        if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, 60)? {
                            return Ok(r);
                        }
                    }
                }
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // inversion law j(x, q^m) = j(q^m/x, q^m) = -x j(1/x, q^m)
    let r = Record::run("j2", "argument inversion law (grid)", 60, || {
        for m in 1..=12i64 {
            for a in -24..=24i64 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let x = ThetaArg { sign, exp: a };
                    let lhs = theta_j(x, m, 60);
                    let mid = theta_j(ThetaArg::q_pow(m).div(x), m, 60);
                    if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&mid, 60)? {
                        return Ok(r);
                    }
                    let nx = x.negate();
                    let rhs = nx
                        .scale_series(&theta_j(x.inverse(), m, 60 - nx.exp))
                        .truncated(60);
                    if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, 60)? {
                        return Ok(r);
                    }
                }
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // (q^{-n})_k = (q)_n / (q)_{n-k} (-1)^k q^{binom(k,2) - nk}
    let r = Record::run("littlefact1", "negative-argument factorization", order, || {
        for n in 0..=10u32 {
            for k in 0..=n {
                let lhs = poch_finite(ThetaArg::q_pow(-(n as i64)), 1, k);
                let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                let mono = QSeries::monomial(sign, binom2(k as i64) - (n as i64) * (k as i64));
                let rhs = poch_finite(ThetaArg::q_pow(1), 1, n)
                    .mul(&mono)
                    .div_to(&poch_finite(ThetaArg::q_pow(1), 1, n - k), order)?;
                if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, order)? {
                    return Ok(r);
                }
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // finite sum identity:
    // sum_k (-1)^k q^{2nk} (q^{-(n-r)})_k (-q^{-(n-r)})_k / ((q)_k (q^{2r+1})_k)
    //   = (1 + q^{2r}) (q)_{2r} (-1)_{2n} / (2 (q^2; q^2)_{n+r})
    let r = Record::run("littlefact2", "finite sum identity", order, || {
        for n in 0..=8i64 {
            for rr in 0..=n {
                let mut lhs = QSeries::zero(Order::UpTo(order + 80));
                for k in 0..=(n - rr) {
                    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                    let num = QSeries::monomial(sign, 2 * n * k)
                        .mul(&poch_finite(ThetaArg::q_pow(-(n - rr)), 1, k as u32))
                        .mul(&poch_finite(ThetaArg::neg_q_pow(-(n - rr)), 1, k as u32));
                    let den = poch_finite(ThetaArg::q_pow(1), 1, k as u32)
                        .mul(&poch_finite(ThetaArg::q_pow(2 * rr + 1), 1, k as u32));
                    lhs = lhs.add(&num.div_to(&den, order)?);
                }
                let rhs_num = QSeries::one()
                    .add(&QSeries::monomial(int(1), 2 * rr))
                    .mul(&poch_finite(ThetaArg::q_pow(1), 1, 2 * rr as u32))
                    .mul(&poch_finite(ThetaArg::minus_one(), 1, 2 * n as u32));
                let rhs_den =
                    poch_finite(ThetaArg::q_pow(2), 2, (n + rr) as u32).scaled(&int(2));
                let rhs = rhs_num.div_to(&rhs_den, order)?;
                if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, order)? {
                    return Ok(r);
                }
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // q-Chu-Vandermonde at base q^2, N = n-1, a = q, c = q^3
    let r = Record::run("chu-vandermonde", "terminating summation", order, || {
        for n in 1..=10i64 {
            let nn = n - 1;
            let mut lhs = QSeries::zero(Order::UpTo(order + 80));
            for k in 0..=nn {
                let num = poch_finite(ThetaArg::q_pow(1), 2, k as u32)
                    .mul(&poch_finite(ThetaArg::q_pow(-2 * nn), 2, k as u32))
                    .mul(&QSeries::monomial(int(1), (2 * nn + 2) * k));
                let den = poch_finite(ThetaArg::q_pow(2), 2, k as u32)
                    .mul(&poch_finite(ThetaArg::q_pow(3), 2, k as u32));
                lhs = lhs.add(&num.div_to(&den, order)?);
            }
            let rhs = poch_finite(ThetaArg::q_pow(2), 2, nn as u32)
                .div_to(&poch_finite(ThetaArg::q_pow(3), 2, nn as u32), order)?;
            if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, order)? {
                return Ok(r);
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    // second Heine transformation at z = -q^{2n}, a = q^{r-n}, b = -q^{r-n},
    // c = q^{2r+1}; the (0,0) point hits the zero factor (q^0; q)_inf and is
    // excluded
    let r = Record::run("heine", "second transformation at the used spec", 30, || {
        let horder = 30;
        for n in 0..=6i64 {
            for rr in 0..=n {
                if n == 0 && rr == 0 {
                    continue;
                }
                let a = ThetaArg::q_pow(rr - n);
                let b = ThetaArg::neg_q_pow(rr - n);
                let c = ThetaArg::q_pow(2 * rr + 1);
                let z = ThetaArg::neg_q_pow(2 * n);
                let lhs = compute_to(horder, |w| {
                    let mut s = QSeries::zero(Order::UpTo(w));
                    for k in 0..=(n - rr) {
                        let num = poch_finite(a, 1, k as u32)
                            .mul(&poch_finite(b, 1, k as u32))
                            .mul(&z.pow(k).monomial());
                        let den = poch_finite(c, 1, k as u32)
                            .mul(&poch_finite(ThetaArg::q_pow(1), 1, k as u32));
                        s = s.add(&num.div_to(&den, w)?);
                    }
                    Ok(s)
                })?;
                let rhs = compute_to(horder, |w| {
                    let cb = c.div(b);
                    let bz = b.mul(z);
                    let abz_c = a.mul(b).mul(z).div(c);
                    let pre_num = poch_infinite(cb, 1, w)?.mul(&poch_infinite(bz, 1, w)?);
                    let pre_den = poch_infinite(c, 1, w)?.mul(&poch_infinite(z, 1, w)?);
                    let mut s = QSeries::zero(Order::UpTo(w));
                    let mut k = 0i64;
                    loop {
                        let num = poch_finite(abz_c, 1, k as u32)
                            .mul(&poch_finite(b, 1, k as u32))
                            .mul(&cb.pow(k).monomial());
                        let den = poch_finite(bz, 1, k as u32)
                            .mul(&poch_finite(ThetaArg::q_pow(1), 1, k as u32));
                        let term = num.div_to(&den, w)?;
                        let vanished = term.is_zero();
                        s = s.add(&term);
                        k += 1;
                        if k >= 2 && vanished {
                            break; // (q^{-1}; q)_k kills every later term
                        }
                        assert!(k < 64);
                    }
                    pre_num.mul(&s).div_to(&pre_den, horder)
                })?;
                if let r @ EqReport::FirstMismatch { .. } = lhs.eq_upto(&rhs, horder)? {
                    return Ok(r);
                }
            }
        }
        Ok(EqReport::Equal)
    });
    push(sink, &mut out, r);

    out
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteSet {
    Pairs,
    Transforms,
    Identities,
    Hm,
    Props,
    All,
}

impl SuiteSet {
    pub fn parse(s: &str) -> Option<SuiteSet> {
        Some(match s {
            "pairs" => SuiteSet::Pairs,
            "transforms" => SuiteSet::Transforms,
            "identities" => SuiteSet::Identities,
            "hm" => SuiteSet::Hm,
            "props" => SuiteSet::Props,
            "all" => SuiteSet::All,
            _ => return None,
        })
    }
}

pub fn run_set(set: SuiteSet, cfg: &SuiteConfig, sink: Sink) -> Vec<Record> {
    let mut out = Vec::new();
    let mut extend = |mut v: Vec<Record>| out.append(&mut v);
    match set {
        SuiteSet::Pairs => extend(pairs_suite(cfg, sink)),
        SuiteSet::Transforms => {
            extend(transforms_suite(cfg, sink));
            extend(chain_suite(cfg, sink));
        }
        SuiteSet::Identities => {
            extend(identities_suite(cfg, sink));
            extend(corollary_suite(cfg, sink));
            extend(starred_suite(
                &SuiteConfig {
                    order: Some(cfg.order.unwrap_or(20).min(20)),
                    ..cfg.clone()
                },
                sink,
            ));
            extend(crosspath_suite(
                &SuiteConfig {
                    order: Some(cfg.order.unwrap_or(30).min(30)),
                    ..cfg.clone()
                },
                sink,
            ));
        }
        SuiteSet::Hm => extend(hm_suite(cfg, sink)),
        SuiteSet::Props => extend(laws_suite(cfg, sink)),
        SuiteSet::All => {
            for s in [
                SuiteSet::Pairs,
                SuiteSet::Transforms,
                SuiteSet::Identities,
                SuiteSet::Hm,
                SuiteSet::Props,
            ] {
                extend(run_set(s, cfg, sink));
            }
        }
    }
    out
}
