//! Exact q-series engine with Bailey-pair machinery.
//!
//! The crate verifies q-hypergeometric identities coefficient-by-coefficient
//! in the ring of truncated Laurent series over exact rationals:
//!
//! - [`series`]: the series ring itself (`QSeries`, certified precision).
//! - [`qproducts`]: Pochhammer products and the theta function `j(x, q)`.
//! - [`hecke`]: Hecke-type double sums `f_{a,b,c}`, Appell-Lerch sums
//!   `m(x, q, z)`, and the Hickerson-Mortenson expansion of one in terms of
//!   the other.
//! - [`bailey`]: Bailey pairs as executable sequence pairs, the Bailey lemma
//!   and its limiting form, constructors for derived pairs, and a catalog.
//! - [`identities`]: the double-sum mock theta catalog (W1-W4, M1-M19, the
//!   classical-mock-theta corollaries) and its verification engine.
//! - [`report`] / [`suites`]: batch verification drivers and their reports.

pub mod bailey;
pub mod error;
pub mod hecke;
pub mod identities;
pub mod qproducts;
pub mod report;
pub mod series;
pub mod suites;

pub use error::{QError, Result};
pub use series::{Coeff, EqReport, Order, QSeries};
