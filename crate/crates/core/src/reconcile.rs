//! Blend the quartic and cubic invariant pairs into the final `(c4, c6)`.

use crate::arith::{Fe, PrimeModulus};
use crate::curve::ShortWeierstrass;
use crate::stream::{MixLabel, SeedContext};

/// Final curve parameters: `y^2 = x^3 + A x + B` with `A = -27 c4`,
/// `B = -54 c6`, and the recorded discriminant `Δ = -16 (4 c4^3 + 27 c6^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParams {
    pub c4: Fe,
    pub c6: Fe,
    pub delta: Fe,
    pub curve: ShortWeierstrass,
}

impl CurveParams {
    /// Instantiate from `(c4, c6)`. Returns `None` when either `Δ` or the
    /// discriminant of the instantiated model vanishes.
    pub fn from_invariants(c4: Fe, c6: Fe) -> Option<Self> {
        let m = c4.modulus().clone();
        let delta = delta_of(&c4, &c6);
        let a = &m.from_i64(-27) * &c4;
        let b = &m.from_i64(-54) * &c6;
        let curve = ShortWeierstrass::new(a, b);
        if delta.is_zero() || curve.is_singular() {
            return None;
        }
        Some(Self {
            c4,
            c6,
            delta,
            curve,
        })
    }

    pub fn modulus(&self) -> &PrimeModulus {
        self.c4.modulus()
    }

    pub fn a(&self) -> &Fe {
        &self.curve.a
    }

    pub fn b(&self) -> &Fe {
        &self.curve.b
    }

    /// `j = c4^3 / Δ`.
    pub fn j_invariant(&self) -> Fe {
        &self.c4.pow_u64(3) * &self.delta.inv().expect("Δ is non-zero")
    }
}

/// `Δ = -16 (4 c4^3 + 27 c6^2)`.
pub fn delta_of(c4: &Fe, c6: &Fe) -> Fe {
    let m = c4.modulus();
    let inner = &(&m.elem(4) * &c4.pow_u64(3)) + &(&m.elem(27) * &c6.square());
    &m.from_i64(-16) * &inner
}

/// Everything the reconciliation step produces, including the mixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconciled {
    pub c4_mix: Fe,
    pub c6_mix: Fe,
    pub params: CurveParams,
}

/// Outcome of [`reconcile`]: either curve parameters or a request to restart
/// the whole trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconciliation {
    Curve(Box<Reconciled>),
    SingularRetry { c4: Fe, c6: Fe },
}

/// `c̃4 = H("REC_c4" ‖ DS ‖ σ ‖ c4⁽²⁾ ‖ c4⁽³⁾)`, `c4 = 2 c4⁽²⁾ + 3 c̃4`, and
/// likewise for `c6`.
pub fn reconcile(ctx: &SeedContext, c4_2: &Fe, c4_3: &Fe, c6_2: &Fe, c6_3: &Fe) -> Reconciliation {
    let c4_mix = ctx.rec_mix(MixLabel::C4, c4_2, c4_3);
    let c6_mix = ctx.rec_mix(MixLabel::C6, c6_2, c6_3);
    blend(c4_2, c6_2, c4_mix, c6_mix)
}

/// The linear blend with the mixes already computed.
pub fn blend(c4_2: &Fe, c6_2: &Fe, c4_mix: Fe, c6_mix: Fe) -> Reconciliation {
    let m = c4_2.modulus();
    let (two, three) = (m.elem(2), m.elem(3));
    let c4 = &(&two * c4_2) + &(&three * &c4_mix);
    let c6 = &(&two * c6_2) + &(&three * &c6_mix);
    match CurveParams::from_invariants(c4.clone(), c6.clone()) {
        Some(params) => Reconciliation::Curve(Box::new(Reconciled {
            c4_mix,
            c6_mix,
            params,
        })),
        None => Reconciliation::SingularRetry { c4, c6 },
    }
}
