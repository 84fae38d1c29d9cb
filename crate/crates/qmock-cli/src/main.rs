//! Batch driver for the q-series engine: expand catalog objects, check
//! Bailey pairs, run derivation chains, and verify the identity catalog.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qmock_core::bailey::{
    base_change, catalog_pair, pairs_equal, thm_main1, thm_main1_inverse, thm_main2, thm_main3,
    verify_pair, PairCheck, PAIR_IDS,
};
use qmock_core::identities::{self, ClassicalName, COROLLARY_IDS, IDENTITY_IDS};
use qmock_core::qproducts::{j_symbol, JKind};
use qmock_core::report::{Record, VerificationReport};
use qmock_core::series::{int, SeriesRecord};
use qmock_core::suites::{run_set, SuiteConfig, SuiteSet};
use qmock_core::{EqReport, QSeries};

#[derive(Parser)]
#[command(
    name = "qmock",
    about = "Exact q-series verification of Bailey pairs and mock theta double-sum identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CommonOpts {
    /// Truncation order (coefficients up to q^N)
    #[arg(long, short = 'o')]
    order: Option<i64>,
    /// Largest pair index checked
    #[arg(long)]
    nmax: Option<usize>,
    /// Comma-separated id filter
    #[arg(long, value_delimiter = ',')]
    ids: Option<Vec<String>>,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Row cap for double sums (env QMOCK_ROW_CAP)
    #[arg(long)]
    row_cap: Option<usize>,
}

impl CommonOpts {
    fn suite_config(&self) -> SuiteConfig {
        let env_cap = std::env::var("QMOCK_ROW_CAP")
            .ok()
            .and_then(|v| v.parse().ok());
        SuiteConfig {
            order: self.order,
            n_max: self.nmax,
            ids: self.ids.clone(),
            row_cap: self
                .row_cap
                .or(env_cap)
                .unwrap_or(identities::DEFAULT_ROW_CAP),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print series expansions of catalog objects
    Expand {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a verification suite
    Verify {
        /// Which suite: pairs, transforms, identities, hm, props, all
        #[arg(long, default_value = "all")]
        set: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a named derivation chain and verify each step
    Derive {
        /// Chain id: bk-to-andrews or slater-to-corollaries
        #[arg(long)]
        chain: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check the defining relation of catalog Bailey pairs
    PairCheck {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Expand { common } => cmd_expand(&common),
        Command::Verify { set, common } => cmd_verify(&set, &common),
        Command::Derive { chain, common } => cmd_derive(&chain, &common),
        Command::PairCheck { common } => cmd_pair_check(&common),
    }
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

fn expand_id(id: &str, order: i64, row_cap: usize) -> Result<QSeries, String> {
    // classical series
    if let Some(name) = ClassicalName::parse(id) {
        return Ok(identities::eval_classical(name, order));
    }
    // J:a:m, Jbar:a:m, J:m (colon-separated so the comma id-list survives)
    if let Some(rest) = id.strip_prefix("Jbar:") {
        let parts: Vec<_> = rest.split(':').map(str::trim).collect();
        if let [a, m] = parts[..] {
            let (a, m) = (
                a.parse().map_err(|_| format!("bad J symbol `{id}`"))?,
                m.parse().map_err(|_| format!("bad J symbol `{id}`"))?,
            );
            return Ok(j_symbol(JKind::Bar, a, m, order));
        }
        return Err(format!("bad J symbol `{id}`"));
    }
    if let Some(rest) = id.strip_prefix("J:") {
        let parts: Vec<_> = rest.split(':').map(str::trim).collect();
        return match parts[..] {
            [m] => {
                let m = m.parse().map_err(|_| format!("bad J symbol `{id}`"))?;
                Ok(j_symbol(JKind::Single, m, m, order))
            }
            [a, m] => {
                let a = a.parse().map_err(|_| format!("bad J symbol `{id}`"))?;
                let m = m.parse().map_err(|_| format!("bad J symbol `{id}`"))?;
                Ok(j_symbol(JKind::Plain, a, m, order))
            }
            _ => Err(format!("bad J symbol `{id}`")),
        };
    }
    // identity forms: M5, M5.double_sum, M5.hecke, M5.appell, M5.classical
    let (head, form) = match id.split_once('.') {
        Some((h, f)) => (h, f),
        None => (id, "double_sum"),
    };
    if IDENTITY_IDS.contains(&head) || COROLLARY_IDS.contains(&head) {
        let result = match form {
            "double_sum" => identities::eval_double_sum(head, order, row_cap),
            "hecke" => identities::eval_hecke_form(head, order),
            "appell" => identities::eval_appell_form(head, order),
            "classical" => identities::eval_classical_form(head, order),
            other => return Err(format!("unknown form `{other}` for id `{head}`")),
        };
        return result.map_err(|e| e.to_string());
    }
    // pair components: bk.alpha.2 / bk.beta.3
    if PAIR_IDS.contains(&head) {
        let (seq, n) = form
            .split_once('.')
            .ok_or_else(|| format!("expected `{head}.alpha.N` or `{head}.beta.N`"))?;
        let n: usize = n.parse().map_err(|_| format!("bad index in `{id}`"))?;
        let pair = catalog_pair(head).map_err(|e| e.to_string())?;
        return match seq {
            "alpha" => Ok(pair.alpha(n, order).truncated(order)),
            "beta" => Ok(pair.beta(n, order).truncated(order)),
            _ => Err(format!("expected alpha or beta in `{id}`")),
        };
    }
    Err(format!("unknown id `{id}`"))
}

fn cmd_expand(common: &CommonOpts) -> ExitCode {
    let order = common.order.unwrap_or(40);
    let cfg = common.suite_config();
    let ids = match &common.ids {
        Some(ids) if !ids.is_empty() => ids.clone(),
        _ => {
            eprintln!("expand requires --ids");
            return ExitCode::from(2);
        }
    };
    let mut rendered = Vec::new();
    for id in &ids {
        match expand_id(id, order, cfg.row_cap) {
            Ok(series) => rendered.push((id.clone(), series)),
            Err(msg) => {
                eprintln!("{msg}");
                return ExitCode::from(2);
            }
        }
    }
    match common.format {
        Format::Text => {
            for (id, series) in &rendered {
                if rendered.len() == 1 {
                    println!("{series}");
                } else {
                    println!("{id} = {series}");
                }
            }
        }
        Format::Json => {
            let doc: Vec<_> = rendered
                .iter()
                .map(|(id, s)| {
                    serde_json::json!({ "id": id, "series": SeriesRecord::from(s) })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
        }
    }
    ExitCode::SUCCESS
}

// ---------------------------------------------------------------------------
// verify / derive / pair-check
// ---------------------------------------------------------------------------

fn emit(report: VerificationReport, format: Format, streamed: bool) -> ExitCode {
    match format {
        Format::Text => {
            if !streamed {
                for r in &report.records {
                    println!("{}", r.render_line());
                }
            }
            println!(
                "summary: {} equal, {} mismatch, {} error",
                report.summary.equal, report.summary.mismatch, report.summary.error
            );
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serialize report")
            );
        }
    }
    if report.all_equal() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_verify(set: &str, common: &CommonOpts) -> ExitCode {
    let set = match SuiteSet::parse(set) {
        Some(s) => s,
        None => {
            eprintln!("unknown set `{set}` (expected pairs, transforms, identities, hm, props, all)");
            return ExitCode::from(2);
        }
    };
    let cfg = common.suite_config();
    let text = matches!(common.format, Format::Text);
    let mut sink = |r: &Record| {
        if text {
            println!("{}", r.render_line());
        }
    };
    let records = run_set(set, &cfg, &mut sink);
    emit(
        VerificationReport::new(format!("verify --set {set:?}"), records),
        common.format,
        text,
    )
}

fn cmd_derive(chain: &str, common: &CommonOpts) -> ExitCode {
    let order = common.order.unwrap_or(40);
    let n_max = common.nmax.unwrap_or(8);
    let text = matches!(common.format, Format::Text);
    let eq = |a: PairCheck| -> qmock_core::Result<EqReport> {
        Ok(match a {
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
    };
    let records = match chain {
        "bk-to-andrews" => vec![
            Record::run("bk", "-2 base_change(bk) = andrews1(q -> q^2)", order, || {
                eq(pairs_equal(
                    &base_change(&catalog_pair("bk")?)?.scaled(int(-2)),
                    &catalog_pair("andrews1")?.dilated(2),
                    n_max,
                    order,
                )?)
            }),
            Record::run("andrews1", "-andrews1 -> main2 -> andrews2", order, || {
                eq(pairs_equal(
                    &thm_main2(&catalog_pair("andrews1")?.scaled(int(-1)))?,
                    &catalog_pair("andrews2")?,
                    n_max,
                    order,
                )?)
            }),
            Record::run(
                "andrews1",
                "-andrews1 -> main1_inverse -> andrews0",
                order,
                || {
                    eq(pairs_equal(
                        &thm_main1_inverse(&catalog_pair("andrews1")?.scaled(int(-1)))?,
                        &catalog_pair("andrews0")?,
                        n_max,
                        order,
                    )?)
                },
            ),
        ],
        "slater-to-corollaries" => {
            let mut v = Vec::new();
            for (seed, c1, c3) in [
                ("slater1", "cor1", "cor1q"),
                ("slater2", "cor2", "cor2q"),
                ("slater3", "cor3", "cor3q"),
            ] {
                v.push(Record::run(seed, format!("main1 -> {c1}"), order, || {
                    eq(pairs_equal(
                        &thm_main1(&catalog_pair(seed)?)?,
                        &catalog_pair(c1)?,
                        n_max,
                        order,
                    )?)
                }));
                v.push(Record::run(seed, format!("main3 -> {c3}"), order, || {
                    eq(pairs_equal(
                        &thm_main3(&catalog_pair(seed)?)?,
                        &catalog_pair(c3)?,
                        n_max,
                        order,
                    )?)
                }));
            }
            v
        }
        other => {
            eprintln!("unknown chain `{other}` (expected bk-to-andrews or slater-to-corollaries)");
            return ExitCode::from(2);
        }
    };
    if text {
        for r in &records {
            println!("{}", r.render_line());
        }
    }
    emit(
        VerificationReport::new(format!("derive --chain {chain}"), records),
        common.format,
        text,
    )
}

fn cmd_pair_check(common: &CommonOpts) -> ExitCode {
    let order = common.order.unwrap_or(50);
    let n_max = common.nmax.unwrap_or(12);
    let text = matches!(common.format, Format::Text);
    let ids: Vec<String> = match &common.ids {
        Some(ids) => {
            for id in ids {
                if !PAIR_IDS.contains(&id.as_str()) {
                    eprintln!("unknown pair id `{id}`");
                    return ExitCode::from(2);
                }
            }
            ids.clone()
        }
        None => PAIR_IDS.iter().map(|s| s.to_string()).collect(),
    };
    let mut records = Vec::new();
    for id in &ids {
        let r = Record::run(id.clone(), "pair relation", order, || {
            Ok(match verify_pair(&catalog_pair(id)?, n_max, order)? {
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
        });
        if text {
            println!("{}", r.render_line());
        }
        records.push(r);
    }
    emit(
        VerificationReport::new("pair-check", records),
        common.format,
        text,
    )
}
