//! Planning which scrollar sequences are realizable at a given genus and
//! gonality, and realizing a target sequence end to end through the
//! nodal-curve construction.

use serde::Serialize;

use crate::builder::{build_nodal_curve, NodalCurveCandidate};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linsys::NodeConfiguration;
use crate::scrollar::{cross_validate, CrossCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CharAssumption {
    Zero,
    Positive,
}

impl CharAssumption {
    pub fn of(characteristic: u64) -> Self {
        if characteristic == 0 {
            CharAssumption::Zero
        } else {
            CharAssumption::Positive
        }
    }
}

/// Genus bound `A(e)`: `(k-1)((k-1)e - 2)` in characteristic 0 and
/// `(k-1)((k-1)e - 1)` in characteristic p. Sequences with `g > A(e)`
/// are guaranteed realizable.
pub fn bound_a(k: i64, e: i64, characteristic: u64) -> i64 {
    let inner = (k - 1) * e - if characteristic == 0 { 2 } else { 1 };
    (k - 1) * inner
}

/// A target scrollar sequence mapped to construction parameters.
#[derive(Clone, Debug, Serialize)]
pub struct RealizationPlan {
    pub target_es: Vec<i64>,
    /// Spread `e_{k-1} - e_1`.
    pub e: i64,
    pub g: i64,
    pub k: i64,
    pub a: i64,
    pub ys: Vec<i64>,
    pub bound_a: i64,
    pub guaranteed: bool,
    /// True when the spread is 0 and the plan is the smooth balanced
    /// construction rather than an instance of the nodal bound.
    pub balanced: bool,
    pub char_assumption: CharAssumption,
}

/// Map a nondecreasing sequence to the minimal construction parameters:
/// `a = e_{k-1} + 2` and `ys_i = e_{k-1} - e_i` (so the smallest divisor
/// is empty). The closed form `e_i = a - y_i - 2` then reproduces the
/// target exactly.
pub fn plan_from_sequence(es: &[i64], characteristic: u64) -> Result<RealizationPlan> {
    if es.is_empty() {
        return Err(Error::usage("empty scrollar sequence"));
    }
    if es.windows(2).any(|w| w[0] > w[1]) || es[0] < 0 {
        return Err(Error::usage(
            "scrollar sequence must be nondecreasing and nonnegative",
        ));
    }
    let k = es.len() as i64 + 1;
    let e_top = *es.last().unwrap();
    let e = e_top - es[0];
    let a = e_top + 2;
    let ys: Vec<i64> = es.iter().map(|x| e_top - x).collect();
    let g = k - 1 + es.iter().sum::<i64>();
    let balanced = e == 0;
    let bound = bound_a(k, e, characteristic);
    let guaranteed = if balanced { true } else { g > bound };
    Ok(RealizationPlan {
        target_es: es.to_vec(),
        e,
        g,
        k,
        a,
        ys,
        bound_a: bound,
        guaranteed,
        balanced,
        char_assumption: CharAssumption::of(characteristic),
    })
}

/// All nondecreasing nonnegative sequences of length `k-1` summing to
/// `g - k + 1`, optionally filtered by spread, each with its plan.
pub fn enumerate_sequences(
    g: i64,
    k: i64,
    spread: Option<i64>,
    characteristic: u64,
) -> Result<Vec<RealizationPlan>> {
    if g < 1 || k < 2 {
        return Err(Error::usage("enumeration requires g >= 1 and k >= 2"));
    }
    let total = g - k + 1;
    if total < 0 {
        return Ok(Vec::new());
    }
    let len = (k - 1) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0i64; len];
    fn rec(
        cur: &mut Vec<i64>,
        pos: usize,
        min: i64,
        remaining: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        let len = cur.len();
        if pos == len {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // remaining slots must each hold at least `v`
        let slots = (len - pos) as i64;
        let mut v = min;
        while v * slots <= remaining {
            cur[pos] = v;
            rec(cur, pos + 1, v, remaining - v, out);
            v += 1;
        }
    }
    let mut seqs = Vec::new();
    rec(&mut cur, 0, 0, total, &mut seqs);
    for seq in seqs {
        let plan = plan_from_sequence(&seq, characteristic)?;
        if let Some(s) = spread {
            if plan.e != s {
                continue;
            }
        }
        out.push(plan);
    }
    Ok(out)
}

/// Full pipeline report: plan, constructed curve, both scrollar routes,
/// and whether the target sequence was recovered.
#[derive(Debug)]
pub struct RealizeOutcome<S> {
    pub plan: RealizationPlan,
    pub curve: NodalCurveCandidate<S>,
    pub cross_check: CrossCheck,
    pub recovered: bool,
}

/// Build the plan, sample a configuration with no shared vertical lines,
/// construct the nodal curve, and verify that both scrollar routes
/// recover the target sequence.
pub fn realize_end_to_end<S: Scalar>(
    es: &[i64],
    field: FieldSpec,
    seed: u64,
    max_attempts: usize,
) -> Result<RealizeOutcome<S>> {
    let FieldSpec::Prime { .. } = field else {
        return Err(Error::Unscannable(
            "end-to-end realization requires a prime field".into(),
        ));
    };
    let plan = plan_from_sequence(es, field.characteristic())?;
    let cfg = NodeConfiguration::<S>::sample(plan.k, plan.a, &plan.ys, field, seed, true)?;
    let curve = build_nodal_curve(&cfg, seed, max_attempts)?;
    let cross_check = cross_validate(&cfg)?;
    let recovered = cross_check.matches
        && cross_check.closed_form.es == plan.target_es
        && cross_check.closed_form.genus == plan.g;
    Ok(RealizeOutcome { plan, curve, cross_check, recovered })
}
