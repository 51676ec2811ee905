use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{OrderRecord, Transcript, SCHEMA_VERSION};
use crate::arith::{Fe, PrimeModulus};
use crate::config::DescentConfig;
use crate::cubic::{CubicRejections, TernaryCubic, MONOMIAL_ORDER};
use crate::curve::{hasse_holds, order_data, OrderData, PointCounting};
use crate::error::{CountError, PipelineError};
use crate::pipeline::{descend, generate, GenerationConfig, Streams};
use crate::quartic::{BinaryQuartic, QuarticRejections};
use crate::reconcile::{delta_of, CurveParams, Reconciliation};
use crate::stream::{FieldStream, MixLabel, SeedContext};
use crate::validate::{validate_all, Policy};

/// Verification stages in reporting order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Inputs,
    Streams,
    Quartic,
    Cubic,
    Reconciliation,
    OrderData,
    Validation,
    Policy,
    Digest,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Inputs => "inputs",
            Stage::Streams => "streams",
            Stage::Quartic => "quartic",
            Stage::Cubic => "cubic",
            Stage::Reconciliation => "reconciliation",
            Stage::OrderData => "order_data",
            Stage::Validation => "validation",
            Stage::Policy => "policy",
            Stage::Digest => "digest",
        }
    }

    /// Top-level transcript keys compared by a replay stage.
    fn keys(self) -> &'static [&'static str] {
        match self {
            Stage::Streams => &["trial_index", "retries", "rejections", "streams"],
            Stage::Quartic => &["quartic"],
            Stage::Cubic => &["cubic"],
            Stage::Reconciliation => &["reconciliation"],
            Stage::OrderData => &["order"],
            Stage::Validation => &["validation"],
            _ => &[],
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

const REPLAY_STAGES: [Stage; 6] = [
    Stage::Streams,
    Stage::Quartic,
    Stage::Cubic,
    Stage::Reconciliation,
    Stage::OrderData,
    Stage::Validation,
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCheck {
    pub stage: Stage,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<StageCheck>,
    /// False when some stages could not be re-derived.
    pub complete: bool,
    pub first_divergence: Option<Stage>,
}

impl VerifyReport {
    /// Full agreement: every stage ran and matched.
    pub fn passed(&self) -> bool {
        self.complete && self.first_divergence.is_none()
    }

    pub fn check(&self, stage: Stage) -> Option<&StageCheck> {
        self.checks.iter().find(|c| c.stage == stage)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub counting: PointCounting,
    /// Re-validate the recorded curve under this policy instead of the
    /// recorded one. Replay always uses the recorded policy.
    pub policy_override: Option<Policy>,
}

struct Builder {
    checks: Vec<StageCheck>,
    complete: bool,
}

impl Builder {
    /// Record a result; a stage reported twice fails if either report does.
    fn push(&mut self, stage: Stage, result: Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        match self.checks.iter_mut().find(|c| c.stage == stage) {
            Some(c) if c.passed && !passed => {
                c.passed = false;
                c.detail = detail;
            }
            Some(c) if c.passed => {
                c.detail = format!("{}; {detail}", c.detail);
            }
            Some(_) => {}
            None => self.checks.push(StageCheck { stage, passed, detail }),
        }
    }

    fn finish(mut self) -> VerifyReport {
        self.checks.sort_by_key(|c| c.stage as u8);
        let first_divergence = self.checks.iter().find(|c| !c.passed).map(|c| c.stage);
        VerifyReport {
            checks: self.checks,
            complete: self.complete,
            first_divergence,
        }
    }
}

fn context(tr: &Transcript) -> Result<SeedContext, String> {
    if tr.schema_version != SCHEMA_VERSION {
        return Err(format!("schema_version `{}`", tr.schema_version));
    }
    let m = PrimeModulus::new(tr.inputs.p.clone()).map_err(|e| format!("p: {e}"))?;
    SeedContext::new(m, tr.inputs.ds.clone(), tr.inputs.sigma).map_err(|e| e.to_string())
}

fn generation_config(tr: &Transcript, counting: &PointCounting) -> GenerationConfig {
    GenerationConfig {
        descent: DescentConfig {
            ell_set: tr.config.ell_set.clone(),
            quartic_search_bound: tr.config.quartic_search_bound,
            cubic_search_bound: tr.config.cubic_search_bound,
            stage_budget: tr.config.stage_budget,
            cubic_mode: tr.config.cubic_invariants,
        },
        policy: tr.policy.clone(),
        counting: counting.clone(),
        order_check_points: tr.config.order_check_points,
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn elems(m: &PrimeModulus, vs: &[BigUint], n: usize, what: &str) -> Result<Vec<Fe>, String> {
    ensure(vs.len() == n, || format!("{what} has {} coefficients, expected {n}", vs.len()))?;
    vs.iter()
        .map(|v| m.checked_elem(v.clone()).map_err(|e| format!("{what}: {e}")))
        .collect()
}

fn eq_fe(what: &str, recorded: &BigUint, computed: &Fe) -> Result<(), String> {
    ensure(recorded == computed.value(), || {
        format!("{what}: recorded {recorded:x}, computed {:x}", computed.value())
    })
}

type Check = Result<(), String>;

fn streams_identities(tr: &Transcript) -> Check {
    ensure(tr.trial_index < tr.policy.max_trials, || "trial_index not below max_trials".into())?;
    ensure(tr.retries.total() == tr.trial_index, || {
        format!("retries sum to {}, trial_index is {}", tr.retries.total(), tr.trial_index)
    })?;
    let trials = tr.trial_index + 1;
    let s = &tr.streams;
    ensure(s.f2.end == 5 * (trials + tr.rejections.quartic_total()), || {
        "f2 cursor disagrees with trials and quartic rejections".into()
    })?;
    ensure(s.f3.end == 10 * (trials + tr.rejections.cubic_total()), || {
        "f3 cursor disagrees with trials and cubic rejections".into()
    })?;
    for (name, r, step) in [("f2", s.f2, 5), ("f3", s.f3, 10)] {
        ensure(r.start < r.end && r.start % step == 0, || format!("{name} cursor range is inconsistent"))?;
    }
    ensure(s.u.start <= s.u.end, || "u cursor range is inconsistent".into())
}

fn quartic_identities(tr: &Transcript, m: &PrimeModulus) -> Check {
    let coeffs: [Fe; 5] = elems(m, &tr.quartic.coeffs, 5, "quartic")?
        .try_into()
        .expect("length checked");
    let qi = BinaryQuartic::from_coeffs(coeffs).invariants();
    eq_fe("quartic.i", &tr.quartic.i, &qi.i)?;
    eq_fe("quartic.j", &tr.quartic.j, &qi.j)?;
    eq_fe("quartic.c4", &tr.quartic.c4, &qi.c4)?;
    eq_fe("quartic.c6", &tr.quartic.c6, &qi.c6)?;
    ensure(!qi.is_singular(), || "recorded quartic is singular".into())
}

fn cubic_identities(tr: &Transcript, ctx: &SeedContext) -> Check {
    let m = ctx.modulus();
    let c = TernaryCubic {
        coeffs: elems(m, &tr.cubic.coeffs, 10, "cubic")?
            .try_into()
            .expect("length checked"),
    };
    let ci = c.invariants_with(tr.config.cubic_invariants, ctx);
    eq_fe("cubic.s", &tr.cubic.s, &ci.s)?;
    eq_fe("cubic.t", &tr.cubic.t, &ci.t)?;
    eq_fe("cubic.c4", &tr.cubic.c4, &ci.c4)?;
    eq_fe("cubic.c6", &tr.cubic.c6, &ci.c6)?;
    ensure(!ci.is_singular(), || "recorded cubic is singular".into())
}

fn recorded(m: &PrimeModulus, v: &BigUint, what: &str) -> Result<Fe, String> {
    m.checked_elem(v.clone()).map_err(|e| format!("{what}: {e}"))
}

/// The recorded curve, when its `(c4, c6)` are reduced and non-singular.
fn recorded_curve(tr: &Transcript, m: &PrimeModulus) -> Result<CurveParams, String> {
    let c4 = recorded(m, &tr.reconciliation.c4, "reconciliation.c4")?;
    let c6 = recorded(m, &tr.reconciliation.c6, "reconciliation.c6")?;
    CurveParams::from_invariants(c4, c6).ok_or_else(|| "recorded curve is singular".into())
}

fn reconciliation_identities(tr: &Transcript, ctx: &SeedContext) -> Check {
    let m = ctx.modulus();
    let (q4, q6) = (recorded(m, &tr.quartic.c4, "quartic.c4")?, recorded(m, &tr.quartic.c6, "quartic.c6")?);
    let (k4, k6) = (recorded(m, &tr.cubic.c4, "cubic.c4")?, recorded(m, &tr.cubic.c6, "cubic.c6")?);
    let r = &tr.reconciliation;
    let mix4 = ctx.rec_mix(MixLabel::C4, &q4, &k4);
    let mix6 = ctx.rec_mix(MixLabel::C6, &q6, &k6);
    eq_fe("reconciliation.c4_mix", &r.c4_mix, &mix4)?;
    eq_fe("reconciliation.c6_mix", &r.c6_mix, &mix6)?;
    let c4 = &(&m.elem(2) * &q4) + &(&m.elem(3) * &mix4);
    let c6 = &(&m.elem(2) * &q6) + &(&m.elem(3) * &mix6);
    eq_fe("reconciliation.c4", &r.c4, &c4)?;
    eq_fe("reconciliation.c6", &r.c6, &c6)?;
    eq_fe("reconciliation.delta", &r.delta, &delta_of(&c4, &c6))?;
    let params = recorded_curve(tr, m)?;
    eq_fe("reconciliation.a", &r.a, params.a())?;
    eq_fe("reconciliation.b", &r.b, params.b())
}

/// Order data derived from the recorded `N`, once `N` is known to lie in the
/// Hasse interval.
fn recorded_order(tr: &Transcript, m: &PrimeModulus) -> Result<OrderData, String> {
    ensure(hasse_holds(m.p(), &tr.order.n), || "N violates the Hasse bound".into())?;
    Ok(order_data(m, tr.order.n.clone()))
}

fn order_identities(tr: &Transcript, m: &PrimeModulus) -> Check {
    let p = m.p();
    let o = &tr.order;
    ensure(&o.n + &o.n_twist == p * 2u32 + 2u32, || "N + N_twist != 2p + 2".into())?;
    ensure(BigInt::from(p + 1u32) - BigInt::from(o.n.clone()) == o.trace, || {
        "trace != p + 1 - N".into()
    })?;
    ensure(&o.h * &o.r == o.n, || "h * r != N".into())?;
    ensure(&o.h_twist * &o.r_twist == o.n_twist, || "h' * r' != N_twist".into())?;
    let od = recorded_order(tr, m)?;
    ensure(OrderRecord::from_order_data(&od) == *o, || {
        "order record disagrees with the factorization of N".into()
    })
}

fn validation_identities(tr: &Transcript, m: &PrimeModulus) -> Check {
    let params = recorded_curve(tr, m)?;
    let od = recorded_order(tr, m)?;
    ensure(validate_all(&params, &od, &tr.policy) == tr.validation, || {
        "validation record disagrees with the recorded curve, N and policy".into()
    })?;
    ensure(tr.validation.passed, || "recorded validation did not pass".into())
}

/// Arithmetic identities that hold for any honest transcript and need
/// neither stream replay nor a point counter, each attributed to the stage
/// whose record it constrains.
fn identities(tr: &Transcript, ctx: &SeedContext) -> Vec<(Stage, Check)> {
    let m = ctx.modulus();
    vec![
        (
            Stage::Inputs,
            ensure(tr.config.monomial_order == MONOMIAL_ORDER, || {
                format!("unsupported monomial_order `{}`", tr.config.monomial_order)
            }),
        ),
        (Stage::Streams, streams_identities(tr)),
        (Stage::Quartic, quartic_identities(tr, m)),
        (Stage::Cubic, cubic_identities(tr, ctx)),
        (Stage::Reconciliation, reconciliation_identities(tr, ctx)),
        (Stage::OrderData, order_identities(tr, m)),
        (Stage::Validation, validation_identities(tr, m)),
    ]
}

/// First differing leaf between two JSON values, as `path: a vs b`.
fn first_diff(path: &str, recorded: &Value, replayed: &Value) -> Option<String> {
    match (recorded, replayed) {
        (Value::Object(a), Value::Object(b)) => {
            for (k, va) in a {
                let sub = format!("{path}.{k}");
                match b.get(k) {
                    Some(vb) => {
                        if let Some(d) = first_diff(&sub, va, vb) {
                            return Some(d);
                        }
                    }
                    None => return Some(format!("{sub}: missing in replay")),
                }
            }
            b.keys()
                .find(|k| !a.contains_key(*k))
                .map(|k| format!("{path}.{k}: missing in transcript"))
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => a
            .iter()
            .zip(b)
            .enumerate()
            .find_map(|(i, (va, vb))| first_diff(&format!("{path}[{i}]"), va, vb)),
        _ if recorded == replayed => None,
        _ => Some(format!("{path}: recorded {recorded}, replayed {replayed}")),
    }
}

fn compare_stage(stage: Stage, recorded: &Value, replayed: &Value) -> Result<String, String> {
    for key in stage.keys() {
        let (a, b) = (&recorded[key], &replayed[key]);
        if let Some(d) = first_diff(key, a, b) {
            return Err(d);
        }
    }
    Ok("matches replay".into())
}

/// Replay only the accepted trial from its recorded start cursors.
fn partial_replay(tr: &Transcript, ctx: &SeedContext, cfg: &GenerationConfig, b: &mut Builder) {
    let s = &tr.streams;
    let mut streams = Streams::at(ctx, s.f2.start, s.f3.start, s.u.start);
    let d = match descend(
        ctx,
        &cfg.descent,
        &mut streams,
        &mut QuarticRejections::default(),
        &mut CubicRejections::default(),
    ) {
        Ok(d) => d,
        Err(e) => {
            b.push(Stage::Streams, Err(format!("replay of the accepted trial failed: {e}")));
            return;
        }
    };
    b.push(
        Stage::Streams,
        ensure(
            streams.f2.cursor() == s.f2.end && streams.f3.cursor() == s.f3.end,
            || "f2/f3 cursors after the accepted trial differ from the record".into(),
        )
        .map(|_| "accepted trial replayed from recorded cursors".into()),
    );
    let q: Vec<BigUint> = d.quartic.coeffs().iter().map(|v| v.value().clone()).collect();
    b.push(
        Stage::Quartic,
        ensure(q == tr.quartic.coeffs, || "quartic coefficients differ from replay".into())
            .map(|_| "matches replay".into()),
    );
    let c: Vec<BigUint> = d.cubic.coeffs.iter().map(|v| v.value().clone()).collect();
    b.push(
        Stage::Cubic,
        ensure(c == tr.cubic.coeffs, || "cubic coefficients differ from replay".into())
            .map(|_| "matches replay".into()),
    );
    let recon = match &d.reconciliation {
        Reconciliation::Curve(r) => ensure(
            r.params.c4.value() == &tr.reconciliation.c4 && r.params.c6.value() == &tr.reconciliation.c6,
            || "reconciled (c4, c6) differ from replay".into(),
        )
        .map(|_| "matches replay".into()),
        Reconciliation::SingularRetry { .. } => Err("replay reconciles to a singular curve".into()),
    };
    b.push(Stage::Reconciliation, recon);
    b.complete = false;
}

/// Re-derive the transcript from its inputs and compare every recorded
/// field, alongside replay-independent arithmetic identities.
pub fn verify(tr: &Transcript, opts: &VerifyOptions) -> VerifyReport {
    let mut b = Builder {
        checks: Vec::new(),
        complete: true,
    };
    b.push(
        Stage::Digest,
        ensure(tr.digest_matches(), || "content_digest does not match the content".into())
            .map(|_| "content_digest matches".into()),
    );

    let ctx = match context(tr) {
        Ok(ctx) => ctx,
        Err(e) => {
            b.push(Stage::Inputs, Err(e));
            b.complete = false;
            return b.finish();
        }
    };
    for (stage, check) in identities(tr, &ctx) {
        b.push(stage, check.map(|_| "identities hold".to_owned()));
    }

    let cfg = generation_config(tr, &opts.counting);
    match generate(&ctx, &cfg) {
        Ok(g) => {
            let recorded = serde_json::to_value(tr).expect("transcript serializes");
            let replayed = serde_json::to_value(&g.transcript).expect("transcript serializes");
            for stage in REPLAY_STAGES {
                b.push(stage, compare_stage(stage, &recorded, &replayed));
            }
        }
        Err(PipelineError::Counting(e @ CountError::CountingUnavailable { .. })) => {
            partial_replay(tr, &ctx, &cfg, &mut b);
            b.push(Stage::OrderData, Ok(format!("not re-derived: {e}")));
        }
        Err(e) => {
            let stage = match e {
                PipelineError::StageBudget(_) => Stage::Streams,
                PipelineError::OrderInconsistent(_) | PipelineError::Counting(_) => Stage::OrderData,
                PipelineError::MaxTrialsExceeded { .. } => Stage::Validation,
                _ => Stage::Inputs,
            };
            b.push(stage, Err(format!("replay failed: {e}")));
        }
    }

    let effective = opts.policy_override.as_ref().unwrap_or(&tr.policy);
    let policy = effective
        .check()
        .and_then(|_| {
            let m = ctx.modulus();
            let params = recorded_curve(tr, m)?;
            let report = validate_all(&params, &recorded_order(tr, m)?, effective);
            let failed: Vec<&str> = report
                .checks()
                .iter()
                .filter(|(_, c)| !c.passed)
                .map(|(n, _)| *n)
                .collect();
            ensure(report.passed, || format!("fails under {} policy: {}", effective.profile.as_str(), failed.join(", ")))
                .map(|_| format!("passes under {} policy", effective.profile.as_str()))
        });
    b.push(Stage::Policy, policy);
    b.finish()
}
