//! Hecke-type double sums, Appell-Lerch sums, and the Hickerson-Mortenson
//! expansion of one in terms of the other.
//!
//! The three building blocks:
//!
//!   f_{a,b,c}(x, y, q) = (sum_{r,s >= 0} - sum_{r,s < 0})
//!                          (-1)^{r+s} x^r y^s q^{a*binom(r,2) + b*r*s + c*binom(s,2)}
//!
//!   m(x, q, z) = (1 / j(z, q)) * sum_{r in Z}
//!                  (-1)^r q^{binom(r,2)} z^r / (1 - q^{r-1} x z)
//!
//!   g_{a,b,c}(x, y, q, z1, z0): the theta-weighted combination of m-values
//!   over t = 0..a-1 and t = 0..c-1 that expands f_{a,b,c} when b = a + p
//!   for p in {1, 2, 4} (with a theta correction for p = 2 and p = 4).
//!
//! Everything is evaluated at specializations x, y, z = +/- q^k, optionally
//! with a base dilation d: identities stated in q^2 or q^4 are computed with
//! every structural exponent pre-multiplied by d, so output exponents are
//! literal.

use num_traits::One;

use crate::error::{QError, Result};
use crate::qproducts::{binom2, theta_j, Sign, ThetaArg};
use crate::series::{compute_to, rat, Coeff, Order, QSeries};

// ---------------------------------------------------------------------------
// Hecke-type series f_{a,b,c}
// ---------------------------------------------------------------------------

/// A specialization of f_{a,b,c}(x, y, q^d).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x: ThetaArg,
    pub y: ThetaArg,
    /// The series lives in q^d; all structural exponents scale by d.
    pub base_dilation: i64,
}

impl FSpec {
    pub fn new(a: i64, b: i64, c: i64, x: ThetaArg, y: ThetaArg, base_dilation: i64) -> FSpec {
        assert!(a > 0 && c > 0, "f_{{a,b,c}} requires a > 0 and c > 0");
        assert!(base_dilation >= 1);
        FSpec {
            a,
            b,
            c,
            x,
            y,
            base_dilation,
        }
    }

    /// b^2 > ac: the quadratic form in the exponent is indefinite.
    pub fn is_indefinite(&self) -> bool {
        self.b * self.b > self.a * self.c
    }
}

/// f_{a,b,c}(x, y, q^d) to order `n`.
///
/// The r,s < 0 quadrant is reindexed (r, s) -> (-1-r, -1-s) so both scans
/// run over nonnegative indices. Scan bounds are dynamic: a column stops
/// once its exponent passed the vertex of the quadratic and exceeded `n`,
/// and the row loop stops once an entire row lies beyond `n` with rows
/// increasing from there on.
pub fn hecke_f(spec: &FSpec, n: i64) -> QSeries {
    let FSpec {
        a,
        b,
        c,
        x,
        y,
        base_dilation: d,
    } = *spec;
    let (sx, ex) = (x.sign, x.exp);
    let (sy, ey) = (y.sign, y.exp);
    let mut terms: Vec<(i64, Coeff)> = Vec::new();

    // Positive quadrant: (-1)^{r+s} x^r y^s q^{d(a binom(r,2) + brs + c binom(s,2))}.
    let pos_exp = |r: i64, s: i64| d * (a * binom2(r) + b * r * s + c * binom2(s)) + r * ex + s * ey;
    let pos_sign = |r: i64, s: i64| Sign::Minus.pow(r + s).mul(sx.pow(r)).mul(sy.pow(s));

    // Reindexed negative quadrant, subtracted:
    // -(-1)^{r+s} x^{-(r+1)} y^{-(s+1)} q^{d(a binom(r+2,2) + b(r+1)(s+1) + c binom(s+2,2))}.
    let neg_exp = |r: i64, s: i64| {
        d * (a * binom2(r + 2) + b * (r + 1) * (s + 1) + c * binom2(s + 2))
            - (r + 1) * ex
            - (s + 1) * ey
    };
    let neg_sign = |r: i64, s: i64| {
        Sign::Minus
            .pow(r + s + 1)
            .mul(sx.pow(r + 1))
            .mul(sy.pow(s + 1))
    };

    let hard_cap = 4 * (n.abs() + ex.abs() + ey.abs()) + 64;

    for quadrant in 0..2 {
        let exp_of = |r: i64, s: i64| {
            if quadrant == 0 {
                pos_exp(r, s)
            } else {
                neg_exp(r, s)
            }
        };
        // Forward differences of the exponent, used for the monotonicity cuts.
        let col_step = |r: i64, s: i64| {
            if quadrant == 0 {
                d * (b * r + c * s) + ey
            } else {
                d * (b * (r + 1) + c * (s + 2)) - ey
            }
        };
        let row_step_floor = |r: i64| {
            if quadrant == 0 {
                d * a * r + ex
            } else {
                d * (a * (r + 2) + b) - ex
            }
        };
        let mut r = 0i64;
        loop {
            let mut row_min = i64::MAX;
            let mut s = 0i64;
            loop {
                let e = exp_of(r, s);
                row_min = row_min.min(e);
                if e <= n {
                    let sign = if quadrant == 0 {
                        pos_sign(r, s)
                    } else {
                        neg_sign(r, s)
                    };
                    terms.push((
                        e,
                        match sign {
                            Sign::Plus => Coeff::one(),
                            Sign::Minus => -Coeff::one(),
                        },
                    ));
                }
                if e > n && col_step(r, s) > 0 {
                    break;
                }
                s += 1;
                assert!(s <= hard_cap, "hecke_f column scan exceeded hard cap");
            }
            if row_min > n && row_step_floor(r) > 0 {
                break;
            }
            r += 1;
            assert!(r <= hard_cap, "hecke_f row scan exceeded hard cap");
        }
    }
    QSeries::from_terms(terms, Order::UpTo(n))
}

// ---------------------------------------------------------------------------
// Appell-Lerch sum m(x, q^M, z)
// ---------------------------------------------------------------------------

/// A specialization of m(x, q^M, z). Construction checks genericity: no
/// bilateral term may degenerate to 1/(1 - q^0) with positive sign, and
/// j(z, q^M) must not vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AppellSpec {
    pub x: ThetaArg,
    pub modulus: i64,
    pub z: ThetaArg,
}

impl AppellSpec {
    pub fn new(x: ThetaArg, modulus: i64, z: ThetaArg) -> Result<AppellSpec> {
        assert!(modulus >= 1, "appell modulus must be >= 1");
        if x.sign.mul(z.sign) == Sign::Plus && (x.exp + z.exp).rem_euclid(modulus) == 0 {
            let r = 1 - (x.exp + z.exp) / modulus;
            return Err(QError::PoleAtTerm { r });
        }
        if z.sign == Sign::Plus && z.exp.rem_euclid(modulus) == 0 {
            return Err(QError::DivisionByZeroTheta {
                symbol: format!("j({z}, q^{modulus})"),
            });
        }
        Ok(AppellSpec { x, modulus, z })
    }
}

/// 1/(1 - s q^e) expanded to order `n`. For e < 0 the factor is rewritten
/// as -s q^{-e} / (1 - s q^{-e}); e = 0 is legal only for s = -1 (value 1/2).
fn geometric(s: Sign, e: i64, n: i64) -> QSeries {
    if e == 0 {
        debug_assert_eq!(s, Sign::Minus);
        return QSeries::constant(rat(1, 2));
    }
    let mut terms = Vec::new();
    if e < 0 {
        // 1/(1 - s q^{-|e|}) = -sum_{k >= 1} s^k q^{|e| k}
        let mag = -e;
        let mut k = 1i64;
        while mag * k <= n {
            terms.push((
                mag * k,
                match s.pow(k) {
                    Sign::Plus => -Coeff::one(),
                    Sign::Minus => Coeff::one(),
                },
            ));
            k += 1;
        }
    } else {
        let mut k = 0i64;
        while e * k <= n {
            terms.push((
                e * k,
                match s.pow(k) {
                    Sign::Plus => Coeff::one(),
                    Sign::Minus => -Coeff::one(),
                },
            ));
            k += 1;
        }
    }
    QSeries::from_terms(terms, Order::UpTo(n))
}

/// m(x, q^M, z) to order `n`.
pub fn appell_m(spec: &AppellSpec, n: i64) -> Result<QSeries> {
    let AppellSpec { x, modulus: m, z } = *spec;
    let s_pole = x.sign.mul(z.sign);
    if s_pole == Sign::Plus && (x.exp + z.exp).rem_euclid(m) == 0 {
        return Err(QError::PoleAtTerm {
            r: 1 - (x.exp + z.exp) / m,
        });
    }
    compute_to(n, |w| {
        let jz = theta_j(z, m, w);
        if jz.is_zero() && jz.order() == Order::Exact {
            return Err(QError::DivisionByZeroTheta {
                symbol: format!("j({z}, q^{m})"),
            });
        }
        let mut sum = QSeries::zero(Order::UpTo(w));
        // Bilateral sum over r. The numerator exponent grows quadratically
        // in r; the pole-shift correction max(0, -d_r) is linear, so both
        // tails leave the window for good once past the vertex.
        let num_exp = |r: i64| m * binom2(r) + r * z.exp;
        let d_r = |r: i64| (r - 1) * m + x.exp + z.exp;
        let term_min = |r: i64| num_exp(r) + 0i64.max(-d_r(r));
        let cap = 4 * (w.abs() + z.exp.abs() + x.exp.abs()) / m + 64;
        for dir in [1i64, -1] {
            let mut r = if dir == 1 { 0 } else { -1 };
            loop {
                let tm = term_min(r);
                if tm > w {
                    // cut only once the minimum provably grows from here on:
                    // ascending, the pole-shift part max(0, -d_r) keeps
                    // shrinking while d_r < 0, so require it gone as well
                    let increasing = if dir == 1 {
                        m * r + z.exp > 0 && d_r(r) >= 0
                    } else {
                        m * (1 - r) - z.exp > 0
                    };
                    if increasing {
                        break;
                    }
                } else {
                    let ne = num_exp(r);
                    let geo = geometric(s_pole, d_r(r), w - ne);
                    let sign = Sign::Minus.pow(r).mul(z.sign.pow(r));
                    let term = geo.mul_monomial(
                        &match sign {
                            Sign::Plus => Coeff::one(),
                            Sign::Minus => -Coeff::one(),
                        },
                        ne,
                    );
                    sum = sum.add(&term);
                }
                r += dir;
                assert!(r.abs() <= cap, "appell_m bilateral scan exceeded hard cap");
            }
        }
        sum.div_to(&jz, n)
    })
}

// ---------------------------------------------------------------------------
// Hickerson-Mortenson g_{a,b,c} and theta corrections
// ---------------------------------------------------------------------------

/// g_{a,b,c}(x, y, q^d, z1, z0) to order `n`: two sums of theta-weighted
/// Appell-Lerch values. A vanishing theta weight j(q^{dbt} x, q^{da}) kills
/// its term; poles inside a surviving m-value propagate as errors.
#[allow(clippy::too_many_arguments)]
pub fn hm_g(
    a: i64,
    b: i64,
    c: i64,
    x: ThetaArg,
    y: ThetaArg,
    z1: ThetaArg,
    z0: ThetaArg,
    d: i64,
    n: i64,
) -> Result<QSeries> {
    let disc = b * b - a * c;
    if disc <= 0 {
        return Err(QError::PreconditionFailed {
            what: format!("g_{{{a},{b},{c}}} requires b^2 > ac"),
        });
    }
    let mut total = QSeries::zero(Order::Exact);
    // The second sum swaps (x, a, z0) <-> (y, c, z1).
    for (u, v, len, other, z) in [(x, y, a, c, z0), (y, x, c, a, z1)] {
        for t in 0..len {
            let weight_arg = v.negate().pow(t).mul(ThetaArg::q_pow(d * other * binom2(t)));
            let theta_arg = ThetaArg::q_pow(d * b * t).mul(u);
            let m_x = ThetaArg::neg_q_pow(d * (len * binom2(b + 1) - other * binom2(len + 1) - t * disc))
                .mul(v.negate().pow(len))
                .mul(u.negate().pow(b).inverse());
            let m_modulus = d * len * disc;
            let term = compute_to(n, |w| {
                let jf = theta_j(theta_arg, d * len, w);
                if jf.is_zero() && jf.order() == Order::Exact {
                    return Ok(QSeries::zero_exact());
                }
                let spec = AppellSpec::new(m_x, m_modulus, z)?;
                let mv = appell_m(&spec, w)?;
                Ok(weight_arg.scale_series(&jf.mul(&mv)))
            })?;
            total = total.add(&term);
        }
    }
    Ok(total.truncated(n))
}

fn check_nonzero(j: &QSeries, name: impl Fn() -> String) -> Result<()> {
    if j.is_zero() && j.order() == Order::Exact {
        return Err(QError::DivisionByZeroTheta { symbol: name() });
    }
    Ok(())
}

/// Theta correction for f_{n,n+2,n} (n odd).
pub fn theta_correction_2(nn: i64, x: ThetaArg, y: ThetaArg, d: i64, n: i64) -> Result<QSeries> {
    assert!(nn > 0 && nn % 2 == 1, "correction defined for odd n");
    let m4 = 4 * (nn + 1) * d;
    let m8 = 8 * (nn + 1) * d;
    let yx = y.div(x);
    let mono = y
        .pow((nn + 1) / 2)
        .mul(x.pow((nn - 3) / 2).inverse())
        .mul(ThetaArg::q_pow(d * (nn * nn - 3) / 2).inverse());
    compute_to(n, |w| {
        let num = theta_j(ThetaArg::q_pow(2 * nn * d), 4 * nn * d, w)
            .mul(&theta_j(ThetaArg::q_pow(4 * (nn + 1) * d), m8, w))
            .mul(&theta_j(yx, m4, w))
            .mul(&theta_j(ThetaArg::q_pow((nn + 2) * d).mul(x).mul(y), m4, w))
            .mul(&theta_j(
                ThetaArg::q_pow(2 * nn * d).mul(x.pow(2).mul(y.pow(2)).inverse()),
                m8,
                w,
            ));
        let den_factors = [
            (yx.pow(nn), 4 * nn * (nn + 1) * d),
            (ThetaArg::q_pow((nn + 2) * d).mul(x.pow(2)).negate(), m4),
            (ThetaArg::q_pow((nn + 2) * d).mul(y.pow(2)).negate(), m4),
        ];
        let mut den = QSeries::one();
        for (arg, m) in den_factors {
            let j = theta_j(arg, m, w);
            check_nonzero(&j, || format!("j({arg}, q^{m})"))?;
            den = den.mul(&j);
        }
        if num.is_zero() && num.order() == Order::Exact {
            return Ok(QSeries::zero_exact());
        }
        mono.scale_series(&num).div_to(&den, n)
    })
}

/// Theta correction for f_{n,n+4,n} (n odd), assembled from the two
/// auxiliary sums S1 and S2.
///
/// The whole expression is placed over one common denominator so a single
/// division happens at the end; chained divisions would each eat working
/// precision without bound.
pub fn theta_correction_4(nn: i64, x: ThetaArg, y: ThetaArg, d: i64, n: i64) -> Result<QSeries> {
    assert!(nn > 0 && nn % 2 == 1, "correction defined for odd n");
    let p = 2 * nn + 4;
    let m2 = 2 * p * d;
    let m4 = 4 * p * d;
    let m8 = 8 * p * d;
    let yx = y.div(x);
    let x2y2 = x.pow(2).mul(y.pow(2));
    let pre_mono = ThetaArg::q_pow(d * (nn * nn + nn - 3))
        .inverse()
        .mul(x.pow((nn - 3) / 2).inverse())
        .mul(y.pow((nn + 1) / 2));

    compute_to(n, |w| {
        // Single-index J_k = (q^k; q^k)_inf, dilated by d.
        let j_single = |k: i64| theta_j(ThetaArg::q_pow(k * d), 3 * k * d, w);
        let j2p = j_single(2 * p);
        let j4p = j_single(4 * p);
        let j8p = j_single(8 * p);
        let sq = |s: &QSeries| s.mul(s);

        // S1 = O1 * (A1 + B1 / J_{4p}) / (J_{2p}^3 J_{8p})
        let o1 = theta_j(ThetaArg::q_pow((6 * nn + 16) * d).mul(x2y2), m4, w)
            .mul(&theta_j(ThetaArg::q_pow(2 * p * d).mul(yx).negate(), m4, w))
            .mul(&theta_j(ThetaArg::q_pow((nn + 4) * d).mul(x).mul(y), m2, w));
        let a1 = theta_j(ThetaArg::q_pow((2 * nn + 8) * d).mul(x2y2).negate(), m4, w)
            .mul(&theta_j(ThetaArg::q_pow(2 * p * d).mul(yx.pow(2)), m4, w))
            .mul(&sq(&j4p));
        let b1 = ThetaArg::q_pow((nn + 4) * d).mul(x.pow(2)).scale_series(
            &theta_j(ThetaArg::q_pow((6 * nn + 16) * d).mul(x2y2).negate(), m4, w)
                .mul(&sq(&theta_j(ThetaArg::q_pow(2 * p * d).mul(yx), m4, w)))
                .mul(&sq(&theta_j(yx.negate(), m4, w))),
        );

        // S2 = O2 * (A2 / J_{4p} + B2 / J_{8p}) / J_{2p}^2
        let o2 = theta_j(ThetaArg::q_pow((2 * nn + 8) * d).mul(x2y2), m4, w)
            .mul(&theta_j(yx.negate(), m4, w))
            .mul(&theta_j(ThetaArg::q_pow((3 * nn + 8) * d).mul(x).mul(y), m2, w));
        let a2 = ThetaArg::q_pow((nn + 1) * d).mul(y.inverse()).scale_series(
            &theta_j(ThetaArg::q_pow((2 * nn + 8) * d).mul(x2y2).negate(), m4, w)
                .mul(&theta_j(ThetaArg::q_pow(2 * p * d).mul(yx.pow(2)), m4, w))
                .mul(&j8p),
        );
        let b2 = ThetaArg::q_pow(d).mul(x).scale_series(
            &theta_j(ThetaArg::q_pow((6 * nn + 16) * d).mul(x2y2).negate(), m4, w)
                .mul(&sq(&theta_j(ThetaArg::q_pow(4 * p * d).mul(yx.pow(2)), m8, w))),
        );

        // Prefactor: pre_mono * j(y/x, q^{4p}) / pre_den.
        let pre_num = theta_j(yx, m4, w);
        let den_factors = [
            (yx.pow(nn), 4 * nn * p * d),
            (ThetaArg::q_pow((2 * nn + 8) * d).mul(x.pow(4)).negate(), m4),
            (ThetaArg::q_pow((2 * nn + 8) * d).mul(y.pow(4)).negate(), m4),
        ];
        let mut pre_den = QSeries::one();
        for (arg, m) in den_factors {
            let j = theta_j(arg, m, w);
            check_nonzero(&j, || format!("j({arg}, q^{m})"))?;
            pre_den = pre_den.mul(&j);
        }
        for (j, name) in [(&j2p, "J_{2(2n+4)}"), (&j4p, "J_{4(2n+4)}"), (&j8p, "J_{8(2n+4)}")] {
            check_nonzero(j, || name.into())?;
        }

        // J_{4n,16n} S1 - q J_{8n,16n} S2, over J_{2p}^3 J_{4p} J_{8p}:
        //   J_{4n,16n} O1 (A1 J_{4p} + B1)
        //   - q J_{8n,16n} O2 (A2 J_{8p} + B2 J_{4p}) J_{2p}
        let j4n16n = theta_j(ThetaArg::q_pow(4 * nn * d), 16 * nn * d, w);
        let j8n16n = theta_j(ThetaArg::q_pow(8 * nn * d), 16 * nn * d, w);
        let term1 = j4n16n.mul(&o1).mul(&a1.mul(&j4p).add(&b1));
        let term2 = ThetaArg::q_pow(d)
            .scale_series(&j8n16n.mul(&o2).mul(&a2.mul(&j8p).add(&b2.mul(&j4p))).mul(&j2p));
        let numerator = pre_num.mul(&term1.sub(&term2));
        let denominator = sq(&j2p).mul(&j2p).mul(&j4p).mul(&j8p).mul(&pre_den);

        pre_mono.scale_series(&numerator).div_to(&denominator, n)
    })
}

/// Theta correction for f_{n,n+p,n} with p in {2, 4}.
pub fn theta_correction(
    nn: i64,
    p: u8,
    x: ThetaArg,
    y: ThetaArg,
    d: i64,
    n: i64,
) -> Result<QSeries> {
    match p {
        2 => theta_correction_2(nn, x, y, d, n),
        4 => theta_correction_4(nn, x, y, d, n),
        _ => Err(QError::PreconditionFailed {
            what: format!("theta correction defined for p in {{2, 4}}, got {p}"),
        }),
    }
}

/// The Hickerson-Mortenson right-hand side for f_{n,n+p,n}(x, y, q^d):
/// g_{n,n+p,n}(x, y, q^d, (y/x)^n, (x/y)^n) minus the theta correction
/// (absent for p = 1).
pub fn hm_expand(nn: i64, p: u8, x: ThetaArg, y: ThetaArg, d: i64, n: i64) -> Result<QSeries> {
    if p != 1 && nn % 2 == 0 {
        return Err(QError::PreconditionFailed {
            what: format!("hm_expand with p = {p} requires odd n, got {nn}"),
        });
    }
    let z1 = y.div(x).pow(nn);
    let z0 = x.div(y).pow(nn);
    let g = hm_g(nn, nn + p as i64, nn, x, y, z1, z0, d, n)?;
    let theta = match p {
        1 => QSeries::zero_exact(),
        2 | 4 => theta_correction(nn, p, x, y, d, n)?,
        _ => {
            return Err(QError::PreconditionFailed {
                what: format!("hm_expand supports p in {{1, 2, 4}}, got {p}"),
            })
        }
    };
    Ok(g.sub(&theta).truncated(n))
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

    /// Brute-force oracle: sum the raw definition over an explicit box
    /// -bound <= r, s < bound, keeping only exponents <= n.
    fn hecke_f_bruteforce(spec: &FSpec, n: i64, bound: i64) -> QSeries {
        let FSpec {
            a,
            b,
            c,
            x,
            y,
            base_dilation: d,
        } = *spec;
        let mut terms = Vec::new();
        for r in -bound..bound {
            for s in -bound..bound {
                let in_pos = r >= 0 && s >= 0;
                let in_neg = r < 0 && s < 0;
                if !in_pos && !in_neg {
                    continue;
                }
                let e = d * (a * binom2(r) + b * r * s + c * binom2(s)) + r * x.exp + s * y.exp;
                if e > n {
                    continue;
                }
                let mut sign = Sign::Minus.pow(r + s).mul(x.sign.pow(r)).mul(y.sign.pow(s));
                if in_neg {
                    sign = sign.flip();
                }
                terms.push((
                    e,
                    match sign {
                        Sign::Plus => Coeff::one(),
                        Sign::Minus => -Coeff::one(),
                    },
                ));
            }
        }
        QSeries::from_terms(terms, Order::UpTo(n))
    }

    #[test]
    fn hecke_first_terms() {
        // f_{3,5,3}(q^2, q^4, q): +1 at (0,0); -q^2 at (1,0); -q^4 at (0,1);
        // the first negative-quadrant contribution (r,s) = (-1,-1) carries
        // exponent 3 + 5 + 3 - 2 - 4 = 5 and enters subtracted.
        let f = hecke_f(&FSpec::new(3, 5, 3, q(2), q(4), 1), 5);
        assert_eq!(f.coeff(0), int(1));
        assert_eq!(f.coeff(2), int(-1));
        assert_eq!(f.coeff(4), int(-1));
        assert_eq!(f.coeff(5), int(-1));
        assert_eq!(f.coeff(1), int(0));
        assert_eq!(f.coeff(3), int(0));
    }

    #[test]
    fn hecke_matches_bruteforce() {
        let cases = [
            FSpec::new(3, 5, 3, q(2), q(4), 1),
            FSpec::new(1, 3, 1, nq(1), nq(3), 1),
            FSpec::new(1, 2, 1, q(1), q(3), 2),
            FSpec::new(3, 7, 3, q(4), q(7), 1),
            FSpec::new(1, 5, 1, nq(1), nq(4), 1),
            FSpec::new(1, 3, 1, nq(5), nq(11), 4),
        ];
        for spec in cases {
            let fast = hecke_f(&spec, 25);
            let slow = hecke_f_bruteforce(&spec, 25, 40);
            assert!(fast.eq_upto(&slow, 25).unwrap().is_equal(), "spec {spec:?}");
        }
    }

    #[test]
    fn hecke_symmetric_when_a_equals_c() {
        for (a, b) in [(3i64, 5i64), (1, 2), (1, 3), (3, 7), (1, 5)] {
            let f1 = hecke_f(&FSpec::new(a, b, a, q(2), q(5), 1), 30);
            let f2 = hecke_f(&FSpec::new(a, b, a, q(5), q(2), 1), 30);
            assert!(f1.eq_upto(&f2, 30).unwrap().is_equal(), "a={a} b={b}");
        }
    }

    #[test]
    fn appell_product_value_is_one_half() {
        // m(q, q^2, -1) = 1/2 exactly
        let spec = AppellSpec::new(q(1), 2, nq(0)).unwrap();
        let m = appell_m(&spec, 40).unwrap();
        assert_eq!(m.coeff(0), rat(1, 2));
        assert!(m
            .eq_upto(&QSeries::constant(rat(1, 2)), 40)
            .unwrap()
            .is_equal());
    }

    #[test]
    fn appell_inversion_law() {
        // m(x, q, z) = x^{-1} m(x^{-1}, q, z^{-1})
        let samples = [
            (nq(7), 48, q(6)),
            (q(5), 6, q(-2)),
            (nq(1), 8, q(4)),
            (nq(3), 16, q(1)),
            (q(3), 10, nq(2)),
        ];
        for (x, m, z) in samples {
            let lhs = appell_m(&AppellSpec::new(x, m, z).unwrap(), 30).unwrap();
            let rhs_m = appell_m(
                &AppellSpec::new(x.inverse(), m, z.inverse()).unwrap(),
                30 + x.exp.abs(),
            )
            .unwrap();
            let rhs = x.inverse().scale_series(&rhs_m).truncated(30);
            assert!(
                lhs.eq_upto(&rhs, 30).unwrap().is_equal(),
                "x={x} m={m} z={z}"
            );
        }
    }

    #[test]
    fn appell_shift_law() {
        // m(qx, q, z) = 1 - x m(x, q, z)
        let samples = [(nq(7), 48i64, q(6)), (q(5), 6, q(-2)), (nq(3), 16, q(1))];
        for (x, m, z) in samples {
            let shifted = ThetaArg::q_pow(m).mul(x);
            let lhs = appell_m(&AppellSpec::new(shifted, m, z).unwrap(), 30).unwrap();
            let mx = appell_m(&AppellSpec::new(x, m, z).unwrap(), 30 + x.exp.abs()).unwrap();
            let rhs = QSeries::one().sub(&x.scale_series(&mx)).truncated(30);
            assert!(
                lhs.eq_upto(&rhs, 30).unwrap().is_equal(),
                "x={x} m={m} z={z}"
            );
        }
    }

    #[test]
    fn appell_z_change_is_theta_quotient() {
        // m(x, q, z) - m(x, q, z0)
        //   = z0 J^3 j(z/z0) j(x z z0) / (j(z0) j(z) j(x z0) j(x z))
        let cases = [
            (nq(7), 48i64, q(6), q(-6)),
            (nq(25), 48, q(-24), q(6)),
            (q(5), 6, q(-2), q(2)),
        ];
        for (x, m, z, z0) in cases {
            let n = 30;
            let lhs = appell_m(&AppellSpec::new(x, m, z).unwrap(), n)
                .unwrap()
                .sub(&appell_m(&AppellSpec::new(x, m, z0).unwrap(), n).unwrap());
            let rhs = compute_to(n, |w| {
                let j1 = theta_j(q(m), 3 * m, w);
                let num = j1
                    .mul(&j1)
                    .mul(&j1)
                    .mul(&theta_j(z.div(z0), m, w))
                    .mul(&theta_j(x.mul(z).mul(z0), m, w));
                let den = theta_j(z0, m, w)
                    .mul(&theta_j(z, m, w))
                    .mul(&theta_j(x.mul(z0), m, w))
                    .mul(&theta_j(x.mul(z), m, w));
                z0.scale_series(&num).div_to(&den, n)
            })
            .unwrap();
            assert!(
                lhs.eq_upto(&rhs, n).unwrap().is_equal(),
                "x={x} m={m} z={z} z0={z0}"
            );
        }
    }

    #[test]
    fn g_single_term_structure() {
        // a = c = 1: one t = 0 term per sum,
        // g = j(x, q) m(-q^{binom(b+1,2) - 1} (-y)/(-x)^b, q^{b^2-1}, z0)
        //   + j(y, q) m(-q^{binom(b+1,2) - 1} (-x)/(-y)^b, q^{b^2-1}, z1)
        let (x, y) = (q(1), q(3));
        let b = 2i64;
        let z1 = y.div(x);
        let z0 = x.div(y);
        let g = hm_g(1, b, 1, x, y, z1, z0, 1, 25).unwrap();
        let disc = b * b - 1;
        let e0 = binom2(b + 1) - 1;
        let hand = |u: ThetaArg, v: ThetaArg, z: ThetaArg| {
            let m_x = nq(e0).mul(v.negate()).mul(u.negate().pow(b).inverse());
            let mv = appell_m(&AppellSpec::new(m_x, disc, z).unwrap(), 30).unwrap();
            theta_j(u, 1, 30).mul(&mv)
        };
        let expect = hand(x, y, z0).add(&hand(y, x, z1)).truncated(25);
        assert!(g.eq_upto(&expect, 25).unwrap().is_equal());
    }

    #[test]
    fn hm_expand_p1_matches_hecke() {
        // f_{1,2,1}(q, q^3, q^2)
        let spec = FSpec::new(1, 2, 1, q(1), q(3), 2);
        let f = hecke_f(&spec, 40);
        let rhs = hm_expand(1, 1, q(1), q(3), 2, 40).unwrap();
        assert!(f.eq_upto(&rhs, 40).unwrap().is_equal());
    }

    #[test]
    fn hm_expand_p2_matches_hecke() {
        // f_{3,5,3}(q^6, q^4, q) and f_{1,3,1}(-q, -q^3, q)
        for (nn, x, y, d) in [(3i64, q(6), q(4), 1i64), (1, nq(1), nq(3), 1)] {
            let spec = FSpec::new(nn, nn + 2, nn, x, y, d);
            let f = hecke_f(&spec, 30);
            let rhs = hm_expand(nn, 2, x, y, d, 30).unwrap();
            assert!(
                f.eq_upto(&rhs, 30).unwrap().is_equal(),
                "n={nn} x={x} y={y}"
            );
        }
    }

    #[test]
    fn hm_expand_p4_matches_hecke() {
        // f_{1,5,1}(-q, -q^4, q) and f_{3,7,3}(q^3, q^4, q)
        for (nn, x, y, d) in [(1i64, nq(1), nq(4), 1i64), (3, q(3), q(4), 1)] {
            let spec = FSpec::new(nn, nn + 4, nn, x, y, d);
            let f = hecke_f(&spec, 30);
            let rhs = hm_expand(nn, 4, x, y, d, 30).unwrap();
            assert!(
                f.eq_upto(&rhs, 30).unwrap().is_equal(),
                "n={nn} x={x} y={y}"
            );
        }
    }

    #[test]
    fn theta_correction_dispatch() {
        let t2 = theta_correction(1, 2, nq(1), nq(3), 1, 20).unwrap();
        assert!(t2
            .eq_upto(&theta_correction_2(1, nq(1), nq(3), 1, 20).unwrap(), 20)
            .unwrap()
            .is_equal());
        assert!(matches!(
            theta_correction(1, 3, nq(1), nq(3), 1, 20),
            Err(QError::PreconditionFailed { .. })
        ));
    }

    #[test]
    fn appell_rejects_non_generic() {
        // x z = q^M makes the r = 0 denominator vanish
        assert!(matches!(
            AppellSpec::new(q(2), 2, q(0)),
            Err(QError::PoleAtTerm { .. })
        ));
        // z an integral power of q^M makes j(z, q^M) vanish
        assert!(matches!(
            AppellSpec::new(nq(1), 2, q(4)),
            Err(QError::DivisionByZeroTheta { .. })
        ));
    }
}
