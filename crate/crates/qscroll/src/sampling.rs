//! Seeded sampling of distinct points, lines, and node configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::surface::{Line, ProjPoint, QuadricPoint};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Index space for point sampling on P^1: over F_p the indices `0..p` are
/// the finite points `[1:x]` and index `p` is `[0:1]`; over the rationals
/// a bounded integer range is used (no infinity needed).
fn index_capacity(spec: &FieldSpec) -> u64 {
    match spec {
        FieldSpec::Prime { p } => p + 1,
        FieldSpec::Rational => 1 << 32,
    }
}

fn point_from_index<S: Scalar>(idx: u64, spec: &FieldSpec) -> ProjPoint<S> {
    match spec {
        FieldSpec::Prime { p } if idx == *p => ProjPoint::infinity(spec),
        _ => ProjPoint::finite(S::from_integer(idx as i64, spec), spec),
    }
}

fn sample_distinct_indices(
    rng: &mut ChaCha8Rng,
    n: usize,
    capacity: u64,
    taken: &mut Vec<u64>,
) -> Result<Vec<u64>> {
    if (taken.len() + n) as u64 > capacity {
        return Err(Error::FieldTooSmall {
            needed: taken.len() + n,
            available: capacity.min(usize::MAX as u64) as usize,
        });
    }
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let idx = rng.gen_range(0..capacity);
        if !taken.contains(&idx) {
            taken.push(idx);
            out.push(idx);
        }
    }
    Ok(out)
}

/// `n` distinct points of P^1, uniformly without replacement.
pub fn sample_distinct_points<S: Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    spec: &FieldSpec,
) -> Result<Vec<ProjPoint<S>>> {
    let mut taken = Vec::new();
    let idxs = sample_distinct_indices(rng, n, index_capacity(spec), &mut taken)?;
    Ok(idxs.into_iter().map(|i| point_from_index(i, spec)).collect())
}

/// Distinct horizontal lines carrying reduced divisors of the given
/// degrees. With `horace_free` the second coordinates are distinct across
/// the whole configuration (no vertical line meets two of the points);
/// otherwise they are only distinct within each line.
pub fn sample_line_divisors<S: Scalar>(
    rng: &mut ChaCha8Rng,
    ys: &[i64],
    spec: &FieldSpec,
    horace_free: bool,
) -> Result<Vec<(Line<S>, Vec<QuadricPoint<S>>)>> {
    let cap = index_capacity(spec);
    let line_points = sample_distinct_points::<S>(rng, ys.len(), spec)?;
    let mut global_taken: Vec<u64> = Vec::new();
    let mut out = Vec::with_capacity(ys.len());
    for (at, &y) in line_points.into_iter().zip(ys) {
        let line = Line::horizontal(at);
        let mut local_taken = Vec::new();
        let taken = if horace_free { &mut global_taken } else { &mut local_taken };
        let idxs = sample_distinct_indices(rng, y.max(0) as usize, cap, taken)?;
        let pts = idxs
            .into_iter()
            .map(|i| QuadricPoint::new(line.at.clone(), point_from_index(i, spec)))
            .collect();
        out.push((line, pts));
    }
    Ok(out)
}
