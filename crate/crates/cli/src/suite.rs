//! The price-of-anarchy / price-of-stability battery.

use serde::Serialize;

use divjump::equilibria::{brute_force, OracleReport, PriceRatio};
use divjump::instances::{
    gen_poa_line_equilibrium, gen_poa_line_ktypes, gen_star_asymmetric, PosFixture,
};
use divjump::utility::social_welfare;
use divjump::{GameInstance, Rational};

const BUDGET: u128 = 10_000_000;

pub const ROW_NAMES: [&str; 7] = [
    "star_n5_k2",
    "star_n7_k3",
    "line_n8_k2",
    "line_n12_k2",
    "line_n6_k3",
    "line_n8_k4",
    "pos_fixture",
];

#[derive(Debug, Serialize)]
pub struct Check {
    pub quantity: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub rows: Vec<Row>,
    pub pass: bool,
}

fn check(quantity: &'static str, expected: impl ToString, observed: Option<impl ToString>) -> Check {
    let expected = expected.to_string();
    let observed = observed.map_or_else(|| "none".to_string(), |o| o.to_string());
    Check {
        quantity,
        pass: expected == observed,
        expected,
        observed,
    }
}

fn poa(report: &OracleReport) -> Option<PriceRatio> {
    report.poa
}

fn oracle(game: &GameInstance) -> Result<OracleReport, String> {
    brute_force(game, BUDGET).map_err(|e| e.to_string())
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn run_row(name: &str, fixture: &PosFixture) -> Result<Vec<Check>, String> {
    let err = |e: divjump::instances::InstanceError| e.to_string();
    Ok(match name {
        "star_n5_k2" => {
            let report = oracle(&gen_star_asymmetric(5, 2).map_err(err)?)?;
            vec![check("poa", r(4, 1), poa(&report))]
        }
        "star_n7_k3" => {
            let report = oracle(&gen_star_asymmetric(7, 3).map_err(err)?)?;
            vec![check("poa", r(3, 1), poa(&report))]
        }
        "line_n8_k2" | "line_n12_k2" => {
            let n: i128 = if name == "line_n8_k2" { 8 } else { 12 };
            let (game, eq) = gen_poa_line_equilibrium(n as usize).map_err(err)?;
            let report = oracle(&game)?;
            vec![
                check("pattern_welfare", r(n + 4, 2), social_welfare(&game, &eq).ok()),
                check("min_eq_welfare", r(n + 4, 2), report.min_eq_welfare),
                check("poa", r(2 * n, n + 4), poa(&report)),
            ]
        }
        "line_n6_k3" | "line_n8_k4" => {
            let (n, k): (i128, i128) = if name == "line_n6_k3" { (6, 3) } else { (8, 4) };
            let (game, eq) = gen_poa_line_ktypes(n as usize, k as usize).map_err(err)?;
            let report = oracle(&game)?;
            // (k-1) n/k + 1/2
            let welfare = r((k - 1) * n, k) + r(1, 2);
            vec![
                check("pattern_welfare", welfare, social_welfare(&game, &eq).ok()),
                check("poa", r(n, 1) / welfare, poa(&report)),
            ]
        }
        "pos_fixture" => {
            let report = oracle(&fixture.game)?;
            vec![
                check("opt_welfare", r(65, 12), Some(report.opt_welfare)),
                check("max_eq_welfare", r(62, 12), report.max_eq_welfare),
                check("pos", r(65, 62), report.pos),
            ]
        }
        other => return Err(format!("unknown row {other}")),
    })
}

pub fn run(rows: &[String], fixture: &PosFixture) -> SuiteReport {
    let rows: Vec<Row> = rows
        .iter()
        .map(|name| {
            let checks = run_row(name, fixture).unwrap_or_else(|e| {
                vec![Check {
                    quantity: "error",
                    expected: "no error".into(),
                    observed: e,
                    pass: false,
                }]
            });
            Row {
                name: name.clone(),
                pass: checks.iter().all(|c| c.pass),
                checks,
            }
        })
        .collect();
    SuiteReport {
        pass: rows.iter().all(|r| r.pass),
        rows,
    }
}

fn approx(s: &str) -> String {
    match s.parse::<Rational>() {
        Ok(v) => format!("{s} ({:.4})", v.to_f64()),
        Err(_) => s.to_string(),
    }
}

/// Aligned, human-readable table.
pub fn render(report: &SuiteReport) -> String {
    let mut lines = vec![(
        "row".to_string(),
        "quantity".to_string(),
        "expected".to_string(),
        "observed".to_string(),
        "result".to_string(),
    )];
    for row in &report.rows {
        for c in &row.checks {
            lines.push((
                row.name.clone(),
                c.quantity.to_string(),
                approx(&c.expected),
                approx(&c.observed),
                if c.pass { "pass" } else { "FAIL" }.to_string(),
            ));
        }
    }
    let width = |f: fn(&(String, String, String, String, String)) -> &String| {
        lines.iter().map(|l| f(l).len()).max().unwrap_or(0)
    };
    let (w0, w1, w2, w3) = (width(|l| &l.0), width(|l| &l.1), width(|l| &l.2), width(|l| &l.3));
    let mut out = String::new();
    for l in &lines {
        out.push_str(&format!(
            "{:w0$}  {:w1$}  {:w2$}  {:w3$}  {}\n",
            l.0, l.1, l.2, l.3, l.4
        ));
    }
    let failing: Vec<&str> = report.rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    if failing.is_empty() {
        out.push_str(&format!("all {} rows pass\n", report.rows.len()));
    } else {
        out.push_str(&format!("failing rows: {}\n", failing.join(", ")));
    }
    out
}
