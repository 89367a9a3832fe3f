//! Scrollar invariants of the degree-k pencil on the normalization of a
//! nodal curve of type `(k,a)` with nodes on `k-1` horizontal lines.
//!
//! Two independent routes are provided: the closed form `e_i = a - y_i - 2`
//! and a ladder oracle that computes `dim |w_C - m g^1_k|` rank by rank
//! through the adjoint identification (curves of bidegree `(k-2, a-2-m)`
//! through the nodes) and reads the invariants off the descent pattern.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linsys::{system_dimension, NodeConfiguration, VanishingCondition};
use crate::surface::BiDegree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSource {
    ClosedForm,
    Ladder,
}

/// The scrollar invariants `e_1 <= ... <= e_{k-1}` with their genus and
/// provenance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScrollarProfile {
    pub k: i64,
    pub a: i64,
    pub ys: Vec<i64>,
    pub es: Vec<i64>,
    pub genus: i64,
    pub source: ProfileSource,
}

/// The canonical-side ladder: `canonical_dims[m] = dim |w_C - m g^1_k|`
/// for `m = 0..=m_max` and `f_values[n-1] = h0(w_C - (n-1)g^1_k) -
/// h0(w_C - n g^1_k)` for `n = 1..=m_max`.
#[derive(Clone, Debug, Serialize)]
pub struct LadderTable {
    pub k: i64,
    pub a: i64,
    pub ys: Vec<i64>,
    pub m_max: i64,
    pub canonical_dims: Vec<i64>,
    pub f_values: Vec<i64>,
}

impl LadderTable {
    /// `f(n)` with the tail of zeros beyond the table.
    pub fn f(&self, n: i64) -> i64 {
        if n >= 1 && n <= self.m_max {
            self.f_values[(n - 1) as usize]
        } else {
            0
        }
    }
}

/// `dim |w_C - m g^1_k|` computed as the dimension of curves of bidegree
/// `(k-2, a-2-m)` through all nodes; -1 when empty.
pub fn canonical_dim<S: Scalar>(cfg: &NodeConfiguration<S>, m: i64) -> Result<i64> {
    let d = BiDegree::new(cfg.k() - 2, cfg.a() - 2 - m);
    if !d.is_effective() {
        return Ok(-1);
    }
    let conditions: Vec<VanishingCondition<S>> = cfg
        .node_points()
        .into_iter()
        .map(VanishingCondition::simple)
        .collect();
    system_dimension(d, &conditions, cfg.field())
}

/// `h0(n g^1_k)` via Riemann-Roch from the canonical side:
/// `nk - g + 1 + h0(w_C - n g^1_k)`.
pub fn h0_pencil_multiples<S: Scalar>(cfg: &NodeConfiguration<S>, n: i64) -> Result<i64> {
    let g = cfg.genus();
    Ok(n * cfg.k() - g + 1 + (canonical_dim(cfg, n)? + 1))
}

/// Walk `m = 0..=a` on the canonical side and difference the h0 values.
pub fn compute_ladder<S: Scalar>(cfg: &NodeConfiguration<S>) -> Result<LadderTable> {
    let m_max = cfg.a();
    let mut dims = Vec::with_capacity((m_max + 1) as usize);
    for m in 0..=m_max {
        dims.push(canonical_dim(cfg, m)?);
    }
    let f_values: Vec<i64> = (1..=m_max as usize)
        .map(|n| dims[n - 1] - dims[n])
        .collect();
    Ok(LadderTable {
        k: cfg.k(),
        a: cfg.a(),
        ys: cfg.ys(),
        m_max,
        canonical_dims: dims,
        f_values,
    })
}

/// Closed form `e_i = a - y_i - 2`, sorted ascending; requires
/// `a >= y_1 + 2` so every invariant is nonnegative.
pub fn scrollar_closed_form<S: Scalar>(cfg: &NodeConfiguration<S>) -> Result<ScrollarProfile> {
    let ys = cfg.ys();
    let y1 = ys.first().copied().unwrap_or(0);
    if cfg.a() < y1 + 2 {
        return Err(Error::usage(format!(
            "a = {} < y_1 + 2 = {}; scrollar invariants would be negative",
            cfg.a(),
            y1 + 2
        )));
    }
    let mut es: Vec<i64> = ys.iter().map(|y| cfg.a() - y - 2).collect();
    es.sort_unstable();
    let genus = (cfg.k() - 1) + es.iter().sum::<i64>();
    Ok(ScrollarProfile {
        k: cfg.k(),
        a: cfg.a(),
        ys,
        es,
        genus,
        source: ProfileSource::ClosedForm,
    })
}

/// Read the invariants off a completed ladder: `e_i + 2` is the smallest
/// `n` with `f(n) < k - i`.
pub fn scrollar_from_ladder(table: &LadderTable, k: i64) -> Result<ScrollarProfile> {
    if table.m_max >= 1 && table.f(table.m_max) != 0 && table.canonical_dims[table.m_max as usize] != -1
    {
        return Err(Error::LadderIncomplete);
    }
    let mut es = Vec::with_capacity((k - 1).max(0) as usize);
    for i in 1..k {
        let n = (1..=table.m_max)
            .find(|&n| table.f(n) < k - i)
            .ok_or(Error::LadderIncomplete)?;
        es.push(n - 2);
    }
    es.sort_unstable();
    let genus: i64 = table.f_values.iter().sum();
    Ok(ScrollarProfile {
        k,
        a: table.a,
        ys: table.ys.clone(),
        es,
        genus,
        source: ProfileSource::Ladder,
    })
}

/// Both scrollar routes side by side.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub matches: bool,
    pub closed_form: ScrollarProfile,
    pub from_ladder: ScrollarProfile,
    pub ladder: LadderTable,
}

/// Run the closed form and the ladder oracle and compare.
pub fn cross_validate<S: Scalar>(cfg: &NodeConfiguration<S>) -> Result<CrossCheck> {
    let closed_form = scrollar_closed_form(cfg)?;
    let ladder = compute_ladder(cfg)?;
    let from_ladder = scrollar_from_ladder(&ladder, cfg.k())?;
    let matches = closed_form.es == from_ladder.es && closed_form.genus == from_ladder.genus;
    Ok(CrossCheck { matches, closed_form, from_ladder, ladder })
}
