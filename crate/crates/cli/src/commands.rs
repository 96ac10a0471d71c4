use std::collections::BTreeMap;
use std::io::Write;

use num_traits::Zero;
use serde::Serialize;

use immanant_core::arith::prime_power;
use immanant_core::engine::{determinant, perm_class_stats, permanent, twin_difference, ENVELOPE};
use immanant_core::group::abelian_groups_of_order;
use immanant_core::linalg;
use immanant_core::minors::{
    conv_residuals, f1, hankel_defect, inverse_profile, jacobi_check, minor_sum_scalars,
    reduction_check_with, specialized_matrix, t12, t2,
};
use immanant_core::padic::{padic_profile, ValuationProfile};
use immanant_core::support::{
    count_d, count_i_nearhook, count_p, det_coeff, hall_support, near_hook_scalar_numerator,
    support_counts, NearHookRoute, SupportCounts,
};
use immanant_core::{
    immanant, Error, GroupPolynomial, GroupSpec, GroupTable, Partition, RationalSpecialization,
};

use crate::args::{
    ExploreArgs, Format, GapArgs, ImmArgs, MinorCheck, MinorsArgs, PadicArgs, ReportKind, RouteArg,
    SupportArgs, TwinArgs,
};
use crate::verify::Status;
use crate::{emit_json, emit_json_compact, emit_text, CliError, CliResult, Outcome};

/// Largest order for the P/D gap search.
pub const GAP_LIMIT: usize = 12;

#[derive(Debug, Serialize)]
struct PolySummary {
    group: String,
    shape: String,
    support_size: usize,
    positive_terms: usize,
    negative_terms: usize,
}

fn summarize(poly: &GroupPolynomial, shape: String) -> PolySummary {
    let positive = poly.terms().filter(|(_, c)| c > &&Zero::zero()).count();
    PolySummary {
        group: poly.spec().to_string(),
        shape,
        support_size: poly.support_size(),
        positive_terms: positive,
        negative_terms: poly.support_size() - positive,
    }
}

fn emit_poly(
    poly: &GroupPolynomial,
    shape: String,
    out: Option<&std::path::Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<Outcome> {
    let summary = summarize(poly, shape);
    match out {
        Some(path) => {
            emit_json_compact(poly, Some(path), stdout)?;
            emit_json(&summary, None, stdout)?;
        }
        None => {
            emit_json_compact(poly, None, stdout)?;
            writeln!(
                stderr,
                "{} {}: {} terms ({} positive, {} negative)",
                summary.group,
                summary.shape,
                summary.support_size,
                summary.positive_terms,
                summary.negative_terms
            )?;
        }
    }
    Ok(Outcome::Pass)
}

pub fn imm(a: ImmArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<Outcome> {
    let poly = immanant(&a.group, &a.partition, a.mode.into())?;
    emit_poly(
        &poly,
        a.partition.to_string(),
        a.out.as_deref(),
        stdout,
        stderr,
    )
}

pub fn twin(a: TwinArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<Outcome> {
    let poly = twin_difference(&a.group)?;
    emit_poly(&poly, "twin".into(), a.out.as_deref(), stdout, stderr)
}

#[derive(Debug, Serialize)]
struct SupportRow {
    exp: Vec<u32>,
    det_coeff: String,
    /// `sum_a r(a) lambda_a - n`
    scalar_numerator: i64,
}

#[derive(Debug, Serialize)]
struct SupportReport {
    group: String,
    route: &'static str,
    #[serde(flatten)]
    counts: SupportCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    monomials: Option<Vec<SupportRow>>,
}

fn counts_by(spec: &GroupSpec, route: RouteArg) -> CliResult<SupportCounts> {
    let n = spec.order();
    Ok(match route {
        RouteArg::Formula => support_counts(spec)?,
        RouteArg::Backtrack => {
            let mut d = 0;
            for m in hall_support(spec) {
                if perm_class_stats(spec, &m)?.d_m != 0 {
                    d += 1;
                }
            }
            let (i_hook, i_cohook) = count_i_nearhook(spec, NearHookRoute::Backtrack)?;
            SupportCounts {
                p: count_p(spec),
                d,
                i_hook,
                i_cohook,
            }
        }
        RouteArg::Bruteforce => SupportCounts {
            p: permanent(spec)?.support_size(),
            d: determinant(spec)?.support_size(),
            i_hook: immanant(spec, &Partition::hook(n, n - 1), Default::default())?.support_size(),
            i_cohook: immanant(spec, &Partition::hook(n, 2), Default::default())?.support_size(),
        },
    })
}

pub fn support(a: SupportArgs, stdout: &mut dyn Write) -> CliResult<Outcome> {
    let spec = &a.group;
    let counts = counts_by(spec, a.route)?;
    let monomials = match a.report {
        ReportKind::Counts => None,
        ReportKind::Full => {
            let table = GroupTable::new(spec);
            let mut rows = Vec::new();
            for m in hall_support(spec) {
                rows.push(SupportRow {
                    det_coeff: det_coeff(spec, &m)?.to_string(),
                    scalar_numerator: near_hook_scalar_numerator(&table, &m),
                    exp: m.exponents,
                });
            }
            Some(rows)
        }
    };
    let route = match a.route {
        RouteArg::Formula => "formula",
        RouteArg::Backtrack => "backtrack",
        RouteArg::Bruteforce => "bruteforce",
    };
    let report = SupportReport {
        group: spec.to_string(),
        route,
        counts,
        monomials,
    };
    emit_json(&report, a.out.as_deref(), stdout)?;
    Ok(Outcome::Pass)
}

#[derive(Debug, Serialize)]
struct PadicSingle {
    group: String,
    sequence: Vec<usize>,
    #[serde(flatten)]
    profile: ValuationProfile,
}

#[derive(Debug, Serialize)]
struct PadicRow {
    sequence: Vec<usize>,
    min_valuation: u32,
    one_block_valuation: u32,
    strictly_minimal: bool,
}

#[derive(Debug, Serialize)]
struct PadicAll {
    group: String,
    p: usize,
    r: u32,
    rows: Vec<PadicRow>,
}

pub fn padic(a: PadicArgs, stdout: &mut dyn Write) -> CliResult<Outcome> {
    let spec = &a.group;
    let n = spec.order();
    let (p, r) = prime_power(n).ok_or(Error::NotPrimePower(n))?;
    let table = GroupTable::new(spec);
    let sequences: Vec<Vec<usize>> = if a.all {
        let mut all: Vec<Vec<usize>> = hall_support(spec).iter().map(|m| m.sequence()).collect();
        all.sort();
        all
    } else {
        vec![a.sequence.clone()]
    };
    let mut rows = Vec::with_capacity(sequences.len());
    let mut profiles = Vec::with_capacity(sequences.len());
    for seq in sequences {
        if let Some(&bad) = seq.iter().find(|&&g| g >= n) {
            return Err(CliError::Usage(format!(
                "element index {bad} is out of range for {spec}"
            )));
        }
        let prof = padic_profile(&table, &seq)?;
        rows.push(PadicRow {
            sequence: seq.clone(),
            min_valuation: prof.min_valuation(),
            one_block_valuation: prof.one_block_valuation,
            strictly_minimal: prof.strictly_minimal,
        });
        profiles.push((seq, prof));
    }
    let pass = rows.iter().all(|r| r.strictly_minimal);
    match a.format {
        Format::Csv => {
            let mut text = String::from("sequence,min_valuation,strictly_minimal\n");
            for row in &rows {
                let seq: Vec<String> = row.sequence.iter().map(|g| g.to_string()).collect();
                text.push_str(&format!(
                    "{},{},{}\n",
                    seq.join(" "),
                    row.min_valuation,
                    row.strictly_minimal
                ));
            }
            emit_text(&text, a.out.as_deref(), stdout)?;
        }
        Format::Json if a.all => {
            let report = PadicAll {
                group: spec.to_string(),
                p,
                r,
                rows,
            };
            emit_json(&report, a.out.as_deref(), stdout)?;
        }
        Format::Json => {
            let (sequence, profile) = profiles.pop().expect("one sequence");
            let report = PadicSingle {
                group: spec.to_string(),
                sequence,
                profile,
            };
            emit_json(&report, a.out.as_deref(), stdout)?;
        }
    }
    Ok(Outcome::from_pass(pass))
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub status: Status,
    /// Seed of the first failing specialization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckOutcome {
    fn skipped(note: &str) -> Self {
        CheckOutcome {
            status: Status::Skipped,
            seed: None,
            counterexample: None,
            note: Some(note.to_string()),
        }
    }
}

/// Turns a broken identity into a counterexample; other errors propagate.
fn soft<T>(r: immanant_core::Result<T>) -> CliResult<Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::IdentityFailed { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn applicability(check: MinorCheck, n: usize) -> Option<&'static str> {
    match check {
        MinorCheck::F1 | MinorCheck::T2t12 | MinorCheck::Scalars if n.is_multiple_of(2) => {
            Some("identity stated for odd order only")
        }
        MinorCheck::Reduction if n < 6 => Some("twin shapes need order >= 6"),
        _ => None,
    }
}

fn check_once(
    check: MinorCheck,
    spec: &GroupSpec,
    rho: &RationalSpecialization,
    twin: Option<&GroupPolynomial>,
) -> CliResult<Option<String>> {
    let counter = |left: String, right: String| Some(format!("{left} != {right}"));
    Ok(match check {
        MinorCheck::Conv => match soft(inverse_profile(spec, rho))? {
            Err(msg) => Some(msg),
            Ok(prof) => conv_residuals(spec, rho, &prof)
                .iter()
                .position(|r| !r.is_zero())
                .map(|s| format!("convolution residual at s = {s}")),
        },
        MinorCheck::Hankel => {
            let d = hankel_defect(spec, rho)?;
            (!d.is_zero()).then(|| format!("Hankel defect {d}"))
        }
        MinorCheck::Jacobi => jacobi_check(spec, rho)?.violations.first().map(|v| {
            format!(
                "{} at {:?}: {} != {}",
                v.equation, v.indices, v.left, v.right
            )
        }),
        MinorCheck::F1 => {
            let m = specialized_matrix(spec, rho)?;
            let (a, b) = (f1(&m), linalg::determinant(&m));
            if a == b {
                None
            } else {
                counter(format!("F1 = {a}"), format!("det = {b}"))
            }
        }
        MinorCheck::T2t12 => {
            let m = specialized_matrix(spec, rho)?;
            let (a, b) = (t12(&m), t2(&m));
            if a == b {
                None
            } else {
                counter(format!("T12 = {a}"), format!("T2 = {b}"))
            }
        }
        MinorCheck::Scalars => soft(minor_sum_scalars(spec, rho))?.err(),
        MinorCheck::Reduction => {
            let twin = twin.expect("twin polynomial prepared for reduction");
            soft(reduction_check_with(twin, rho))?.err()
        }
    })
}

/// Runs each check over every seed; a check stops at its first failure.
pub fn run_minor_checks(
    spec: &GroupSpec,
    seeds: &[u64],
    range: u64,
    checks: &[MinorCheck],
) -> CliResult<BTreeMap<String, CheckOutcome>> {
    let n = spec.order();
    let twin = if checks.contains(&MinorCheck::Reduction) && n >= 6 {
        Some(twin_difference(spec)?)
    } else {
        None
    };
    let mut rhos = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        rhos.push(RationalSpecialization::random(spec, seed, range)?);
    }
    let mut out = BTreeMap::new();
    for &check in checks {
        let outcome = if let Some(note) = applicability(check, n) {
            CheckOutcome::skipped(note)
        } else {
            let mut outcome = CheckOutcome {
                status: Status::Pass,
                seed: None,
                counterexample: None,
                note: None,
            };
            for (rho, &seed) in rhos.iter().zip(seeds) {
                if let Some(c) = check_once(check, spec, rho, twin.as_ref())? {
                    outcome.status = Status::Fail;
                    outcome.seed = Some(seed);
                    outcome.counterexample = Some(c);
                    break;
                }
            }
            outcome
        };
        out.insert(check.name().to_string(), outcome);
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct MinorsReport {
    group: String,
    range: u64,
    seeds: Vec<u64>,
    checks: BTreeMap<String, CheckOutcome>,
}

pub fn minors(a: MinorsArgs, stdout: &mut dyn Write) -> CliResult<Outcome> {
    let mut checks = if a.checks.is_empty() {
        MinorCheck::ALL.to_vec()
    } else {
        a.checks.clone()
    };
    checks.sort();
    checks.dedup();
    let seeds: Vec<u64> = (0..a.seeds).map(|i| a.seed + i).collect();
    let results = run_minor_checks(&a.group, &seeds, a.range, &checks)?;
    let pass = results.values().all(|c| c.status != Status::Fail);
    let report = MinorsReport {
        group: a.group.to_string(),
        range: a.range,
        seeds,
        checks: results,
    };
    emit_json(&report, a.out.as_deref(), stdout)?;
    Ok(Outcome::from_pass(pass))
}

#[derive(Debug, Serialize)]
struct ExploreRow {
    group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    i_lambda: Option<usize>,
    #[serde(rename = "I_hook", skip_serializing_if = "Option::is_none")]
    i_hook: Option<usize>,
    #[serde(rename = "I_cohook", skip_serializing_if = "Option::is_none")]
    i_cohook: Option<usize>,
    #[serde(rename = "P")]
    p: usize,
    #[serde(rename = "D")]
    d: usize,
}

#[derive(Debug, Serialize)]
struct ExploreReport {
    conjecture: u8,
    n: usize,
    statement: &'static str,
    rows: Vec<ExploreRow>,
}

pub fn explore(a: ExploreArgs, stdout: &mut dyn Write) -> CliResult<Outcome> {
    let n = a.n;
    let statement = match a.conjecture {
        1 if n >= 3 && n % 2 == 1 => "odd n: I_(n-1,1) = I_(2,1^(n-2)) = 0",
        2 if n % 4 == 2 => "n = 2 mod 4: I_(n-1,1) = P and I_(2,1^(n-2)) = D",
        3 if n >= 7 && n % 2 == 1 => "odd n >= 7: I_(n-2,1,1) = P",
        1 => {
            return Err(CliError::Usage(format!(
                "conjecture 1 needs odd n >= 3, got {n}"
            )))
        }
        2 => {
            return Err(CliError::Usage(format!(
                "conjecture 2 needs n = 2 mod 4, got {n}"
            )))
        }
        _ => {
            return Err(CliError::Usage(format!(
                "conjecture 3 needs odd n >= 7, got {n}"
            )))
        }
    };
    if a.conjecture == 3 && n > ENVELOPE {
        return Err(Error::EnvelopeExceeded {
            order: n,
            limit: ENVELOPE,
        }
        .into());
    }
    let mut rows = Vec::new();
    for spec in abelian_groups_of_order(n) {
        let p = count_p(&spec);
        let d = count_d(&spec)?;
        let row = if a.conjecture == 3 {
            let lambda = Partition::new(vec![n - 2, 1, 1])?;
            let i = immanant(&spec, &lambda, Default::default())?.support_size();
            ExploreRow {
                group: spec.to_string(),
                partition: Some(lambda.to_string()),
                i_lambda: Some(i),
                i_hook: None,
                i_cohook: None,
                p,
                d,
            }
        } else {
            let (h, c) = count_i_nearhook(&spec, NearHookRoute::Formula)?;
            ExploreRow {
                group: spec.to_string(),
                partition: None,
                i_lambda: None,
                i_hook: Some(h),
                i_cohook: Some(c),
                p,
                d,
            }
        };
        rows.push(row);
    }
    let report = ExploreReport {
        conjecture: a.conjecture,
        n,
        statement,
        rows,
    };
    emit_json(&report, a.out.as_deref(), stdout)?;
    Ok(Outcome::Pass)
}

#[derive(Debug, Serialize)]
struct GapRow {
    group: String,
    order: usize,
    prime_power: bool,
    #[serde(rename = "P")]
    p: usize,
    #[serde(rename = "D")]
    d: usize,
}

#[derive(Debug, Serialize)]
struct GapReport {
    max_order: usize,
    rows: Vec<GapRow>,
    /// Groups with `D < P`.
    gaps: Vec<String>,
}

pub fn search_pd_gap(a: GapArgs, stdout: &mut dyn Write) -> CliResult<Outcome> {
    if a.max_order > GAP_LIMIT {
        return Err(Error::EnvelopeExceeded {
            order: a.max_order,
            limit: GAP_LIMIT,
        }
        .into());
    }
    let mut rows = Vec::new();
    for n in 2..=a.max_order {
        for spec in abelian_groups_of_order(n) {
            rows.push(GapRow {
                group: spec.to_string(),
                order: n,
                prime_power: prime_power(n).is_some(),
                p: count_p(&spec),
                d: count_d(&spec)?,
            });
        }
    }
    let gaps = rows
        .iter()
        .filter(|r| r.d < r.p)
        .map(|r| r.group.clone())
        .collect();
    let report = GapReport {
        max_order: a.max_order,
        rows,
        gaps,
    };
    emit_json(&report, a.out.as_deref(), stdout)?;
    Ok(Outcome::Pass)
}
