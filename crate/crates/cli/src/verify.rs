//! Verification suites. Each (suite, group) pair yields one report; a
//! statement that does not apply to a group is reported as skipped.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use immanant_core::arith::prime_power;
use immanant_core::character::twin_diff_char;
use immanant_core::engine::{class_coefficient, determinant, permanent, twin_difference, ENVELOPE};
use immanant_core::group::abelian_groups_of_order;
use immanant_core::support::{
    count_d, count_i_nearhook, count_p, hall_support, near_hook_scalar_numerator, NearHookRoute,
};
use immanant_core::{immanant, GroupSpec, GroupTable, Monomial, Partition};

use crate::args::{MinorCheck, Suite, VerifyArgs};
use crate::commands::run_minor_checks;
use crate::{emit_json, CliResult, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub group: String,
    pub params: Value,
    pub status: Status,
    /// First counterexample; present exactly when the status is `fail`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    skipped: usize,
}

#[derive(Debug, Serialize)]
struct VerifyOutput {
    suite: String,
    seed: u64,
    range: u64,
    reports: Vec<VerifyReport>,
    summary: Summary,
}

enum Verdict {
    Pass(Option<Value>),
    Fail(String, Option<Value>),
    Skipped(&'static str),
}

const SEED_COUNT: u64 = 5;

struct Ctx {
    seeds: Vec<u64>,
    range: u64,
    timings: bool,
}

fn case<F>(
    theorem: &str,
    spec: &GroupSpec,
    params: Value,
    ctx: &Ctx,
    f: F,
) -> CliResult<VerifyReport>
where
    F: FnOnce() -> CliResult<Verdict>,
{
    let start = Instant::now();
    let verdict = f()?;
    let wall_ms = ctx.timings.then(|| start.elapsed().as_millis() as u64);
    let (status, witness, note, detail) = match verdict {
        Verdict::Pass(detail) => (Status::Pass, None, None, detail),
        Verdict::Fail(w, detail) => (Status::Fail, Some(w), None, detail),
        Verdict::Skipped(why) => (Status::Skipped, None, Some(why.to_string()), None),
    };
    Ok(VerifyReport {
        theorem: theorem.to_string(),
        group: spec.to_string(),
        params,
        status,
        witness,
        note,
        detail,
        wall_ms,
    })
}

fn specs(names: &[&str]) -> Vec<GroupSpec> {
    names
        .iter()
        .map(|s| s.parse().expect("built-in group"))
        .collect()
}

fn default_groups(suite: Suite) -> Vec<GroupSpec> {
    match suite {
        Suite::Hall => specs(&["c4", "c5", "c6", "c7", "c8", "c2xc2", "c2xc4", "c3xc3"]),
        Suite::Thm13 => (2..=9)
            .filter(|&n| prime_power(n).is_some())
            .flat_map(abelian_groups_of_order)
            .collect(),
        Suite::Thm14 => specs(&["c3", "c5", "c7", "c9", "c3xc3", "c6", "c10"]),
        Suite::Thm15 => specs(&["c7", "c9", "c3xc3"]),
        Suite::Prop42 => specs(&["c6", "c8", "c10"]),
        Suite::Jacobi => specs(&["c3", "c4", "c5", "c6", "c7", "c8", "c2xc2", "c2xc4"]),
        Suite::Scalars => specs(&["c3", "c5", "c7", "c9", "c6", "c8"]),
        Suite::All => unreachable!("expanded before lookup"),
    }
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Hall => "hall",
        Suite::Thm13 => "thm13",
        Suite::Thm14 => "thm14",
        Suite::Thm15 => "thm15",
        Suite::Prop42 => "prop42",
        Suite::Jacobi => "jacobi",
        Suite::Scalars => "scalars",
        Suite::All => "all",
    }
}

fn first_difference(a: &BTreeSet<Monomial>, b: &BTreeSet<Monomial>) -> Option<String> {
    a.symmetric_difference(b).next().map(|m| m.to_string())
}

fn hall(spec: &GroupSpec) -> CliResult<Verdict> {
    let per: BTreeSet<Monomial> = permanent(spec)?.support().cloned().collect();
    let zero_sum = hall_support(spec);
    Ok(match first_difference(&per, &zero_sum) {
        None => Verdict::Pass(Some(json!({ "P": per.len() }))),
        Some(m) => Verdict::Fail(format!("monomial {m} in exactly one of the two sets"), None),
    })
}

fn thm13(spec: &GroupSpec) -> CliResult<Verdict> {
    if prime_power(spec.order()).is_none() {
        return Ok(Verdict::Skipped("order is not a prime power"));
    }
    let p = count_p(spec);
    let d = count_d(spec)?;
    let mut detail = json!({ "P": p, "D": d });
    if p != d {
        return Ok(Verdict::Fail(format!("P = {p}, D = {d}"), Some(detail)));
    }
    if spec.order() <= 8 {
        let bp = permanent(spec)?.support_size();
        let bd = determinant(spec)?.support_size();
        detail["bruteforce"] = json!({ "P": bp, "D": bd });
        if (bp, bd) != (p, d) {
            return Ok(Verdict::Fail(
                format!("enumeration gives P = {bp}, D = {bd}"),
                Some(detail),
            ));
        }
    }
    Ok(Verdict::Pass(Some(detail)))
}

fn thm14(spec: &GroupSpec) -> CliResult<Verdict> {
    let n = spec.order();
    let table = GroupTable::new(spec);
    if n % 2 == 1 {
        if let Some(m) = hall_support(spec)
            .into_iter()
            .find(|m| near_hook_scalar_numerator(&table, m) != 0)
        {
            return Ok(Verdict::Fail(format!("nonzero scalar at {m}"), None));
        }
        if n <= ENVELOPE {
            for lambda in [Partition::hook(n, n - 1), Partition::hook(n, 2)] {
                let p = immanant(spec, &lambda, Default::default())?;
                let first = p
                    .terms()
                    .next()
                    .map(|(m, c)| format!("[{m}] imm_{lambda} = {c}"));
                if let Some(w) = first {
                    return Ok(Verdict::Fail(w, None));
                }
            }
        }
        return Ok(Verdict::Pass(Some(json!({ "I_hook": 0, "I_cohook": 0 }))));
    }
    if n % 4 != 2 {
        return Ok(Verdict::Skipped("order is neither odd nor 2 mod 4"));
    }
    let p = count_p(spec);
    let d = count_d(spec)?;
    let (ih, ic) = count_i_nearhook(spec, NearHookRoute::Formula)?;
    let mut detail = json!({ "P": p, "D": d, "I_hook": ih, "I_cohook": ic });
    if (ih, ic) != (p, d) {
        return Ok(Verdict::Fail(
            format!("I = ({ih}, {ic}), (P, D) = ({p}, {d})"),
            Some(detail),
        ));
    }
    if n <= 8 {
        let bh = immanant(spec, &Partition::hook(n, n - 1), Default::default())?.support_size();
        let bc = immanant(spec, &Partition::hook(n, 2), Default::default())?.support_size();
        detail["bruteforce"] = json!({ "I_hook": bh, "I_cohook": bc });
        if (bh, bc) != (p, d) {
            return Ok(Verdict::Fail(
                format!("enumeration gives I = ({bh}, {bc})"),
                Some(detail),
            ));
        }
    }
    Ok(Verdict::Pass(Some(detail)))
}

fn thm15(spec: &GroupSpec) -> CliResult<Verdict> {
    let n = spec.order();
    if n.is_multiple_of(2) || n < 7 {
        return Ok(Verdict::Skipped("needs odd order >= 7"));
    }
    let twin = twin_difference(spec)?;
    let first = twin.terms().next().map(|(m, c)| format!("[{m}] = {c}"));
    Ok(match first {
        None => Verdict::Pass(None),
        Some(w) => Verdict::Fail(w, None),
    })
}

fn prop42(spec: &GroupSpec) -> CliResult<Verdict> {
    let n = spec.order();
    if spec.factors().len() != 1 || n % 2 == 1 || n < 6 {
        return Ok(Verdict::Skipped("needs a cyclic group of even order >= 6"));
    }
    let x0 = Monomial::power(n, 0, n as u32);
    let got = class_coefficient(spec, &x0, |mu| Ok(twin_diff_char(mu)))?;
    let sign = if ((n - 2) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let want = BigInt::from((3 - n as i64) * sign);
    let detail = json!({ "coefficient": got.to_string(), "expected": want.to_string() });
    Ok(if got == want {
        Verdict::Pass(Some(detail))
    } else {
        Verdict::Fail(format!("[x0^{n}] = {got}, expected {want}"), Some(detail))
    })
}

fn minor_suite(spec: &GroupSpec, ctx: &Ctx, checks: &[MinorCheck]) -> CliResult<Verdict> {
    let results = run_minor_checks(spec, &ctx.seeds, ctx.range, checks)?;
    let statuses: Value = results
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::to_value(v.status).expect("status")))
        .collect::<serde_json::Map<_, _>>()
        .into();
    if let Some((name, c)) = results.iter().find(|(_, c)| c.status == Status::Fail) {
        let witness = format!(
            "{name}, seed {}: {}",
            c.seed.unwrap_or_default(),
            c.counterexample.clone().unwrap_or_default()
        );
        return Ok(Verdict::Fail(witness, Some(statuses)));
    }
    if results.values().all(|c| c.status == Status::Skipped) {
        return Ok(Verdict::Skipped("no check applies to this order"));
    }
    Ok(Verdict::Pass(Some(statuses)))
}

fn run_suite(suite: Suite, groups: &[GroupSpec], ctx: &Ctx) -> CliResult<Vec<VerifyReport>> {
    let name = suite_name(suite);
    let mut out = Vec::new();
    for spec in groups {
        let seeded = json!({ "seeds": ctx.seeds, "range": ctx.range });
        let report = match suite {
            Suite::Hall => case(name, spec, json!({}), ctx, || hall(spec))?,
            Suite::Thm13 => case(name, spec, json!({}), ctx, || thm13(spec))?,
            Suite::Thm14 => case(name, spec, json!({}), ctx, || thm14(spec))?,
            Suite::Thm15 => case(name, spec, json!({}), ctx, || thm15(spec))?,
            Suite::Prop42 => case(name, spec, json!({}), ctx, || prop42(spec))?,
            Suite::Jacobi => case(name, spec, seeded, ctx, || {
                minor_suite(
                    spec,
                    ctx,
                    &[MinorCheck::Conv, MinorCheck::Hankel, MinorCheck::Jacobi],
                )
            })?,
            Suite::Scalars => case(name, spec, seeded, ctx, || {
                minor_suite(
                    spec,
                    ctx,
                    &[
                        MinorCheck::F1,
                        MinorCheck::T2t12,
                        MinorCheck::Scalars,
                        MinorCheck::Reduction,
                    ],
                )
            })?,
            Suite::All => unreachable!("expanded before dispatch"),
        };
        out.push(report);
    }
    Ok(out)
}

pub fn verify(a: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<Outcome> {
    let suites = match a.suite {
        Suite::All => vec![
            Suite::Hall,
            Suite::Thm13,
            Suite::Thm14,
            Suite::Thm15,
            Suite::Prop42,
            Suite::Jacobi,
            Suite::Scalars,
        ],
        s => vec![s],
    };
    let ctx = Ctx {
        seeds: (0..SEED_COUNT).map(|i| a.seed + i).collect(),
        range: a.range,
        timings: a.timings,
    };
    let mut reports = Vec::new();
    for suite in suites {
        let groups = if a.groups.is_empty() {
            default_groups(suite)
        } else {
            a.groups.clone()
        };
        let groups: Vec<GroupSpec> = groups
            .into_iter()
            .filter(|g| a.max_order.is_none_or(|m| g.order() <= m))
            .collect();
        for r in run_suite(suite, &groups, &ctx)? {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            writeln!(stderr, "{tag} {} {}", r.theorem, r.group)?;
            reports.push(r);
        }
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        skipped: count(Status::Skipped),
    };
    let pass = summary.fail == 0;
    let output = VerifyOutput {
        suite: suite_name(a.suite).to_string(),
        seed: a.seed,
        range: a.range,
        reports,
        summary,
    };
    emit_json(&output, a.out.as_deref(), stdout)?;
    Ok(Outcome::from_pass(pass))
}
