//! The trial loop: sample a quartic and a cubic, reconcile, count, validate,
//! and either emit a transcript or retry with the streams where they left off.

use num_bigint::BigUint;

use crate::arith::PrimeModulus;
use crate::config::{CubicInvariantMode, DescentConfig};
use crate::cubic::{accept_cubic, CubicInvariants, CubicRejections, TernaryCubic, MONOMIAL_ORDER};
use crate::curve::{count_points_with, OrderData, Point, PointCounting, ShortWeierstrass};
use crate::error::{PipelineError, StageBudgetExceeded};
use crate::quartic::{accept_quartic, BinaryQuartic, QuarticInvariants, QuarticRejections};
use crate::reconcile::{reconcile, CurveParams, Reconciliation};
use crate::stream::{FieldStream, LabeledStream, SeedContext, StreamLabel};
use crate::transcript::{
    ConfigRecord, CubicRecord, CursorRange, Inputs, OrderRecord, QuarticRecord,
    ReconciliationRecord, Rejections, Retries, StreamCursors, Transcript, SCHEMA_VERSION,
};
use crate::validate::{validate_all, Policy, ValidationReport};

/// Points drawn on each of the curve and its twist to confirm `N · P = O`.
pub const DEFAULT_ORDER_CHECK_POINTS: u64 = 2;

#[derive(Clone, Debug)]
pub struct GenerationConfig {
    pub descent: DescentConfig,
    pub policy: Policy,
    pub counting: PointCounting,
    pub order_check_points: u64,
}

impl GenerationConfig {
    /// Defaults throughout, with the policy chosen by [`Policy::for_modulus`].
    pub fn for_modulus(modulus: &PrimeModulus) -> Self {
        Self {
            descent: DescentConfig::default(),
            policy: Policy::for_modulus(modulus),
            counting: PointCounting::default(),
            order_check_points: DEFAULT_ORDER_CHECK_POINTS,
        }
    }

    pub fn check(&self) -> Result<(), PipelineError> {
        self.descent.check().map_err(PipelineError::Config)?;
        self.policy.check().map_err(PipelineError::Config)
    }
}

/// An accepted curve with its transcript.
#[derive(Clone, Debug)]
pub struct Generated {
    pub transcript: Transcript,
    pub params: CurveParams,
    pub order: OrderData,
    pub validation: ValidationReport,
}

/// The three stream cursors, advanced together across trials.
#[derive(Clone, Debug)]
pub(crate) struct Streams {
    pub f2: LabeledStream,
    pub f3: LabeledStream,
    pub u: LabeledStream,
}

impl Streams {
    pub fn at(ctx: &SeedContext, f2: u64, f3: u64, u: u64) -> Self {
        Self {
            f2: LabeledStream::at(ctx.clone(), StreamLabel::F2, f2),
            f3: LabeledStream::at(ctx.clone(), StreamLabel::F3, f3),
            u: LabeledStream::at(ctx.clone(), StreamLabel::U, u),
        }
    }

    fn cursors(&self) -> [u64; 3] {
        [self.f2.cursor(), self.f3.cursor(), self.u.cursor()]
    }
}

/// One pass through the descent stages of a trial.
#[derive(Clone, Debug)]
pub(crate) struct Descent {
    pub quartic: BinaryQuartic,
    pub quartic_inv: QuarticInvariants,
    pub cubic: TernaryCubic,
    pub cubic_inv: CubicInvariants,
    pub reconciliation: Reconciliation,
}

pub(crate) fn descend(
    ctx: &SeedContext,
    config: &DescentConfig,
    streams: &mut Streams,
    qrej: &mut QuarticRejections,
    crej: &mut CubicRejections,
) -> Result<Descent, StageBudgetExceeded> {
    let (quartic, quartic_inv) = accept_quartic(&mut streams.f2, &mut streams.u, config, qrej)?;
    let (cubic, cubic_inv) = accept_cubic(&mut streams.f3, &mut streams.u, ctx, config, crej)?;
    let reconciliation = reconcile(ctx, &quartic_inv.c4, &cubic_inv.c4, &quartic_inv.c6, &cubic_inv.c6);
    Ok(Descent {
        quartic,
        quartic_inv,
        cubic,
        cubic_inv,
        reconciliation,
    })
}

/// `N · P = O` on the curve and `N' · P' = O` on its twist for points drawn
/// from `u`.
pub fn check_group_orders<S: FieldStream>(
    curve: &ShortWeierstrass,
    od: &OrderData,
    u: &mut S,
    points: u64,
) -> Result<(), PipelineError> {
    let (twist, _) = curve.quadratic_twist();
    for (e, n, name) in [(curve, &od.n, "curve"), (&twist, &od.n_twist, "twist")] {
        for _ in 0..points {
            let p = e
                .random_point(u)
                .ok_or_else(|| PipelineError::OrderInconsistent(format!("no point found on the {name}")))?;
            if e.mul(n, &p) != Point::Infinity {
                return Err(PipelineError::OrderInconsistent(format!(
                    "{n} · P is not the identity on the {name}"
                )));
            }
        }
    }
    Ok(())
}

fn config_record(cfg: &GenerationConfig, modulus: &PrimeModulus) -> ConfigRecord {
    ConfigRecord {
        ell_set: cfg.descent.ell_set.clone(),
        quartic_search_bound: cfg.descent.quartic_search_bound,
        cubic_search_bound: cfg.descent.cubic_search_bound,
        stage_budget: cfg.descent.stage_budget,
        order_check_points: cfg.order_check_points,
        cubic_invariants: cfg.descent.cubic_mode,
        monomial_order: MONOMIAL_ORDER.to_owned(),
        counter: cfg.counting.source_for(modulus.bit_len()),
    }
}

fn values<'a>(it: impl IntoIterator<Item = &'a crate::arith::Fe>) -> Vec<BigUint> {
    it.into_iter().map(|v| v.value().clone()).collect()
}

fn warnings(ctx: &SeedContext, cfg: &GenerationConfig) -> Vec<String> {
    let m = ctx.modulus();
    let mut w = Vec::new();
    if !m.is_3_mod_4() {
        w.push("p is not 3 mod 4; square roots use Tonelli-Shanks".to_owned());
    }
    if cfg.descent.cubic_mode == CubicInvariantMode::HashPlaceholder {
        w.push("cubic c4, c6 are hash placeholders, not classical invariants".to_owned());
    }
    if cfg.counting.source_for(m.bit_len()) != "builtin" {
        w.push(format!("point count supplied by {}", cfg.counting.source_for(m.bit_len())));
    }
    w
}

/// Run trials until one passes every filter or `policy.max_trials` is spent.
pub fn generate(ctx: &SeedContext, cfg: &GenerationConfig) -> Result<Generated, PipelineError> {
    cfg.check()?;
    let m = ctx.modulus();
    let mut streams = Streams::at(ctx, 0, 0, 0);
    let mut qrej = QuarticRejections::default();
    let mut crej = CubicRejections::default();
    let mut retries = Retries::default();

    for trial in 0..cfg.policy.max_trials {
        let start = streams.cursors();
        let d = descend(ctx, &cfg.descent, &mut streams, &mut qrej, &mut crej)?;
        let rec = match d.reconciliation {
            Reconciliation::SingularRetry { .. } => {
                retries.reconcile_singular += 1;
                continue;
            }
            Reconciliation::Curve(rec) => rec,
        };
        let od = count_points_with(&rec.params.curve, &cfg.counting)?;
        check_group_orders(&rec.params.curve, &od, &mut streams.u, cfg.order_check_points)?;
        let report = validate_all(&rec.params, &od, &cfg.policy);
        if !report.passed {
            retries.validation_failed += 1;
            continue;
        }

        let end = streams.cursors();
        let params = &rec.params;
        let mut transcript = Transcript {
            schema_version: SCHEMA_VERSION.to_owned(),
            inputs: Inputs {
                p: m.p().clone(),
                ds: ctx.ds().to_owned(),
                sigma: *ctx.sigma(),
            },
            config: config_record(cfg, m),
            policy: cfg.policy.clone(),
            trial_index: trial,
            retries,
            rejections: Rejections {
                quartic_zero_or_square: qrej.zero_or_square,
                quartic_singular: qrej.singular,
                quartic_insoluble: qrej.insoluble,
                cubic_singular: crej.singular,
                cubic_insoluble: crej.insoluble,
            },
            streams: StreamCursors {
                f2: CursorRange { start: start[0], end: end[0] },
                f3: CursorRange { start: start[1], end: end[1] },
                u: CursorRange { start: start[2], end: end[2] },
            },
            quartic: QuarticRecord {
                coeffs: values(d.quartic.coeffs()),
                i: d.quartic_inv.i.value().clone(),
                j: d.quartic_inv.j.value().clone(),
                c4: d.quartic_inv.c4.value().clone(),
                c6: d.quartic_inv.c6.value().clone(),
            },
            cubic: CubicRecord {
                coeffs: values(&d.cubic.coeffs),
                s: d.cubic_inv.s.value().clone(),
                t: d.cubic_inv.t.value().clone(),
                c4: d.cubic_inv.c4.value().clone(),
                c6: d.cubic_inv.c6.value().clone(),
            },
            reconciliation: ReconciliationRecord {
                c4_mix: rec.c4_mix.value().clone(),
                c6_mix: rec.c6_mix.value().clone(),
                c4: params.c4.value().clone(),
                c6: params.c6.value().clone(),
                delta: params.delta.value().clone(),
                a: params.a().value().clone(),
                b: params.b().value().clone(),
            },
            order: OrderRecord::from_order_data(&od),
            validation: report.clone(),
            warnings: warnings(ctx, cfg),
            content_digest: String::new(),
        };
        transcript.seal();
        return Ok(Generated {
            transcript,
            params: rec.params,
            order: od,
            validation: report,
        });
    }

    Err(PipelineError::MaxTrialsExceeded {
        trials: cfg.policy.max_trials,
        reconcile_singular: retries.reconcile_singular,
        validation_failed: retries.validation_failed,
    })
}

/// Count and validate the curve with invariants `(c4, c6)` directly.
pub fn validate_external(
    modulus: &PrimeModulus,
    c4: &BigUint,
    c6: &BigUint,
    policy: &Policy,
    counting: &PointCounting,
) -> Result<(CurveParams, OrderData, ValidationReport), PipelineError> {
    policy.check().map_err(PipelineError::Config)?;
    let params = CurveParams::from_invariants(modulus.reduce(c4), modulus.reduce(c6)).ok_or_else(|| {
        PipelineError::SingularInput {
            c4: c4.clone(),
            c6: c6.clone(),
        }
    })?;
    let od = count_points_with(&params.curve, counting)?;
    let report = validate_all(&params, &od, policy);
    Ok((params, od, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo_context;
    use crate::validate::Profile;

    #[test]
    fn reference_curve_through_validate_external() {
        let ctx = demo_context();
        let m = ctx.modulus();
        let (params, od, report) = validate_external(
            m,
            &BigUint::from(82765u32),
            &BigUint::from(79541u32),
            &Policy::demo(),
            &PointCounting::default(),
        )
        .unwrap();
        assert_eq!(params.delta, m.elem(53954));
        assert_eq!(od.n, BigUint::from(99711u32));
        assert!(report.passed);

        let (_, _, strict) = validate_external(
            m,
            &BigUint::from(82765u32),
            &BigUint::from(79541u32),
            &Policy::from_profile(Profile::Strict, m),
            &PointCounting::default(),
        )
        .unwrap();
        assert!(!strict.passed);
        assert!(!strict.order.passed);
        assert!(strict.twist.passed && strict.anomalous.passed && strict.cm.passed && strict.embedding.passed);
    }

    #[test]
    fn singular_input() {
        let ctx = demo_context();
        let zero = BigUint::from(0u32);
        assert!(matches!(
            validate_external(ctx.modulus(), &zero, &zero, &Policy::demo(), &PointCounting::default()),
            Err(PipelineError::SingularInput { .. })
        ));
    }

    #[test]
    fn demo_generation_is_deterministic_and_accepted() {
        let ctx = demo_context();
        let cfg = GenerationConfig::for_modulus(ctx.modulus());
        let a = generate(&ctx, &cfg).unwrap();
        let b = generate(&ctx, &cfg).unwrap();
        assert_eq!(a.transcript, b.transcript);
        assert!(a.validation.passed);
        let t = &a.transcript;
        assert_eq!(t.retries.total(), t.trial_index);
        assert_eq!(t.streams.f2.end, 5 * (t.trial_index + 1 + t.rejections.quartic_total()));
        assert_eq!(t.streams.f3.end, 10 * (t.trial_index + 1 + t.rejections.cubic_total()));
        assert!(t.digest_matches());
    }

    #[test]
    fn unsatisfiable_policy_runs_out_of_trials() {
        let ctx = demo_context();
        let mut cfg = GenerationConfig::for_modulus(ctx.modulus());
        cfg.policy = Policy {
            max_trials: 3,
            k_max: 200_000,
            ..Policy::demo()
        };
        // p^(r-1) = 1 mod r for every prime r != p, so this k_max rejects everything
        match generate(&ctx, &cfg) {
            Err(PipelineError::MaxTrialsExceeded { trials, reconcile_singular, validation_failed }) => {
                assert_eq!(trials, 3);
                assert_eq!(reconcile_singular + validation_failed, 3);
            }
            other => panic!("{other:?}"),
        }
    }
}
