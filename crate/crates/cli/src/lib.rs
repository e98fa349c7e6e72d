//! `rplace` command line: parses expressions, runs one library operation and
//! renders the result as text or JSON.
//!
//! Exit codes: 0 success, 1 domain error, 2 budget exhausted, 3 parse or
//! usage error, 4 internal invariant violated (including disagreement of the
//! two gluing procedures).

use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use rplace::parse::{parse_factored, parse_function, parse_order, parse_rational, parse_series};
use rplace::rational::{fmt_rational, int};
use rplace::{
    cauchy_limit, cellularity_family, cellularity_member, evaluate_place, harrison_decompose,
    harrison_membership, interval_to_harrison, order_to_place, same_place_code, same_place_su,
    separating_element, sign_at, Budget, Error, OrderInterval, Series,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub const DEFAULT_BUDGET: i64 = 64;

#[derive(Parser, Debug)]
#[command(name = "rplace", version, about = "Orders and real places of F(X) over series fields")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exponent depth for semidecidable questions (overrides RPLACE_BUDGET).
    #[arg(long, global = true)]
    budget: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sign of a rational function at an order.
    EvalSign { function: String, order: String },
    /// Residue of a rational function at the place of an order.
    Value { function: String, order: String },
    /// Whether two orders induce the same real place.
    SamePlace { first: String, second: String },
    /// Certified unit separating the places of two orders.
    Separate { first: String, second: String },
    /// Interval decomposition of the Harrison set of a factored polynomial,
    /// with membership of any further orders given.
    Harrison { factored: String, orders: Vec<String> },
    /// Polynomial positive exactly on an interval with principal endpoints.
    Interval { lower: String, upper: String },
    /// Limit of the partial sums of a series.
    Limit { series: String },
    /// Cellularity family and a member for a rational `t`.
    Cellularity {
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
}

/// Failure of a command: a library error or a detected invariant violation.
enum Failure {
    Lib(Error),
    Disagreement { su: bool, code: bool },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Rendered {
    text: String,
    json: Value,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted { .. } => EXIT_BUDGET,
        Error::Parse { .. } => EXIT_PARSE,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_DOMAIN,
    }
}

fn budget_from(flag: Option<i64>, env: Option<&str>) -> Result<Budget, Error> {
    let depth = match (flag, env) {
        (Some(d), _) => d,
        (None, Some(s)) => s.trim().parse::<i64>().map_err(|_| Error::Parse {
            offset: 0,
            message: format!("RPLACE_BUDGET must be an integer, got {s:?}"),
        })?,
        (None, None) => DEFAULT_BUDGET,
    };
    if depth < 0 {
        return Err(Error::Parse {
            offset: 0,
            message: format!("budget must be nonnegative, got {depth}"),
        });
    }
    Ok(Budget::from_depth(depth))
}

/// Runs one command, reading `RPLACE_BUDGET` from the environment.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let env = std::env::var("RPLACE_BUDGET").ok();
    run_with_env(argv, env.as_deref())
}

/// As [`run`], with the budget variable passed explicitly.
pub fn run_with_env<I, S>(argv: I, env_budget: Option<&str>) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let json = cli.json;
    let result = budget_from(cli.budget, env_budget)
        .map_err(Failure::from)
        .and_then(|b| dispatch(cli.command, &b));
    match result {
        Ok(r) if json => (EXIT_OK, r.json.to_string()),
        Ok(r) => (EXIT_OK, r.text),
        Err(Failure::Lib(e)) => {
            let text = if json {
                json!({"error": e.code(), "message": e.to_string()}).to_string()
            } else {
                format!("error[{}]: {e}", e.code())
            };
            (exit_code(&e), text)
        }
        Err(Failure::Disagreement { su, code }) => {
            let text = if json {
                json!({"error": "gluing_disagreement", "SU": su, "code": code}).to_string()
            } else {
                format!("error[gluing_disagreement]: SU criterion says {su}, code comparison says {code}")
            };
            (EXIT_INTERNAL, text)
        }
    }
}

fn dispatch(cmd: Command, b: &Budget) -> Result<Rendered, Failure> {
    Ok(match cmd {
        Command::EvalSign { function, order } => {
            let f = parse_function(&function, b)?;
            let p = parse_order(&order, b)?;
            let s = sign_at(&f, &p, b)?;
            Rendered {
                text: s.symbol().to_string(),
                json: json!({"sign": s.symbol()}),
            }
        }
        Command::Value { function, order } => {
            let f = parse_function(&function, b)?;
            let p = parse_order(&order, b)?;
            let v = evaluate_place(&f, &p, b)?;
            Rendered {
                text: v.to_string(),
                json: json!({"value": v.to_string(), "place": order_to_place(&p).to_json(b)}),
            }
        }
        Command::SamePlace { first, second } => {
            let p = parse_order(&first, b)?;
            let q = parse_order(&second, b)?;
            let same = glued(&p, &q, b)?;
            Rendered {
                text: if same { "same place" } else { "different places" }.to_string(),
                json: json!({"same_place": same, "by": ["SU", "code"]}),
            }
        }
        Command::Separate { first, second } => {
            let p = parse_order(&first, b)?;
            let q = parse_order(&second, b)?;
            let same = glued(&p, &q, b)?;
            match separating_element(&p, &q, b)? {
                Some(w) if !same && w.record.certified() => Rendered {
                    text: format!(
                        "f = {}\npositive at {}\nnegative at {}\ncertified: signs ({}, {}), unit at positive side",
                        w.f,
                        w.positive,
                        w.negative,
                        w.record.sign_at_positive,
                        w.record.sign_at_negative
                    ),
                    json: json!({"same_place": false, "witness": w.to_json()}),
                },
                None if same => Rendered {
                    text: "same place: no separating element".to_string(),
                    json: json!({"same_place": true, "witness": null}),
                },
                _ => {
                    return Err(Error::Internal(
                        "separation result contradicts the gluing procedures".into(),
                    )
                    .into())
                }
            }
        }
        Command::Harrison { factored, orders } => {
            let f = parse_factored(&factored, b)?;
            let ivs = harrison_decompose(&f, b)?;
            let g = f.to_function();
            let mut members = Vec::new();
            for o in &orders {
                let p = parse_order(o, b)?;
                members.push((p.to_string(), harrison_membership(&g, &p, b)?));
            }
            let mut text: Vec<String> = ivs.iter().map(|iv| iv.to_string()).collect();
            if ivs.is_empty() {
                text.push("empty".to_string());
            }
            text.extend(members.iter().map(|(p, m)| format!("{p}: {}", if *m { "in" } else { "out" })));
            Rendered {
                text: text.join("\n"),
                json: json!({
                    "polynomial": f.to_string(),
                    "intervals": ivs.iter().map(OrderInterval::to_json).collect::<Vec<_>>(),
                    "membership": members.iter().map(|(p, m)| json!({"order": p, "member": m})).collect::<Vec<_>>(),
                }),
            }
        }
        Command::Interval { lower, upper } => {
            let iv = OrderInterval::new(parse_order(&lower, b)?, parse_order(&upper, b)?, b)?;
            let f = interval_to_harrison(&iv, b)?;
            Rendered {
                text: format!("{f}\n= {}", f.expand()),
                json: json!({"interval": iv.to_json(), "factored": f.to_string(), "expanded": f.expand().to_string()}),
            }
        }
        Command::Limit { series } => {
            let s = parse_series(&series, b)?;
            let target = s.clone();
            let lim = cauchy_limit(
                Arc::new(move |n| target.truncated(&int(n as i64))),
                Arc::new(|g| rplace::rational::ceil_i64(g).max(0) as usize),
                b,
            )?;
            let terms = lim.truncate_below(&b.depth);
            let shown = Series::from_terms(terms.clone());
            let depth = fmt_rational(&b.depth);
            Rendered {
                text: format!("{shown} + O(x^({depth}))"),
                json: json!({
                    "terms": terms.iter().map(|t| json!([fmt_rational(&t.exponent), fmt_rational(&t.coefficient)])).collect::<Vec<_>>(),
                    "error_order": depth,
                }),
            }
        }
        Command::Cellularity { t } => {
            let t = parse_rational(&t)?;
            let fam = cellularity_family(&t);
            let member = cellularity_member(&t);
            Rendered {
                text: format!("{fam}\nmember {member}"),
                json: json!({"t": fmt_rational(&t), "family": fam.to_json(), "member": member.to_string()}),
            }
        }
    })
}

/// Runs both gluing procedures and insists they agree.
fn glued(p: &rplace::OrderCode, q: &rplace::OrderCode, b: &Budget) -> Result<bool, Failure> {
    let su = same_place_su(p, q, b)?;
    let code = same_place_code(p, q, b)?;
    if su != code {
        return Err(Failure::Disagreement { su, code });
    }
    Ok(su)
}
