//! Randomized construction of irreducible nodal curves of type `(k,a)`
//! with nodes exactly at a prescribed configuration.
//!
//! Existence is guaranteed (for `a` above the `(k-1)y_1` bound) by a
//! Bertini-type argument; here a general member of the singular system is
//! sampled and then checked: every prescribed node must be an ordinary
//! node, the exhaustive rational-point scan must find no other singular
//! point, and no horizontal or vertical line may divide the form. The
//! scan and the line check only see F_q-rational data, which is the
//! documented limit of the certification.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linsys::{condition_matrix, NodeConfiguration, VanishingCondition};
use crate::sampling::rng_from_seed;
use crate::surface::{eval_univariate, BiDegree, BiForm, Line, ProjPoint, QuadricPoint, Var};

/// Largest prime the exhaustive singularity scan will accept.
pub const MAX_SCAN_PRIME: u64 = 2003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointType {
    Smooth,
    OrdinaryNode,
    DegenerateSingular,
}

/// Smallest `a` for which the nodal-curve existence result applies:
/// `(k-1) y_1` in characteristic 0, one more in characteristic p.
pub fn nodal_min_a(k: i64, y1: i64, characteristic: u64) -> i64 {
    let base = (k - 1) * y1;
    if characteristic == 0 {
        base
    } else {
        base + 1
    }
}

/// Kernel basis of the multiplicity-2 condition matrix on bidegree
/// `(k,a)`: the affine cone over the system of curves singular at every
/// prescribed node. Empty output means the system is empty.
pub fn singular_system<S: Scalar>(cfg: &NodeConfiguration<S>) -> Result<Vec<Vec<S>>> {
    let d = BiDegree::new(cfg.k(), cfg.a());
    let conditions: Vec<VanishingCondition<S>> = cfg
        .node_points()
        .into_iter()
        .map(VanishingCondition::double)
        .collect();
    let m = condition_matrix(d, &conditions, cfg.field())?;
    Ok(m.kernel_basis())
}

/// Classify a point of the curve by its order-2 jet. The node criterion
/// is the discriminant of the local quadratic part: chart-independent and
/// valid even when the two tangent directions live in a quadratic
/// extension.
pub fn classify_point<S: Scalar>(f: &BiForm<S>, p: &QuadricPoint<S>) -> Result<PointType> {
    let jet = f.local_jet2(p);
    if !jet.value.is_zero() {
        return Err(Error::NotOnCurve);
    }
    if !jet.grad.0.is_zero() || !jet.grad.1.is_zero() {
        return Ok(PointType::Smooth);
    }
    let (qa, qb, qc) = jet.quad;
    let four = S::from_integer(4, &f.field());
    let disc = qb.clone() * qb - four * qa * qc;
    if disc.is_zero() {
        Ok(PointType::DegenerateSingular)
    } else {
        Ok(PointType::OrdinaryNode)
    }
}

fn all_points_of_line<S: Scalar>(spec: &FieldSpec) -> Result<Vec<ProjPoint<S>>> {
    let FieldSpec::Prime { p } = spec else {
        return Err(Error::Unscannable(spec.to_string()));
    };
    if *p > MAX_SCAN_PRIME {
        return Err(Error::Unscannable(format!(
            "p = {p} exceeds the scan limit {MAX_SCAN_PRIME}"
        )));
    }
    let mut pts: Vec<ProjPoint<S>> = (0..*p as i64)
        .map(|x| ProjPoint::finite(S::from_integer(x, spec), spec))
        .collect();
    pts.push(ProjPoint::infinity(spec));
    Ok(pts)
}

/// Every F_q-rational point where the value and both chart partials
/// vanish. Fiber by fiber: restrict f and its four formal partials to
/// each horizontal line, then sweep the second coordinate.
pub fn scan_singularities<S: Scalar>(f: &BiForm<S>) -> Result<Vec<QuadricPoint<S>>> {
    let spec = f.field();
    let fibers = all_points_of_line::<S>(&spec)?;
    let seconds = fibers.clone();
    let fs = f.partial(Var::S);
    let ft = f.partial(Var::T);
    let fu = f.partial(Var::U);
    let fv = f.partial(Var::V);
    let mut out = Vec::new();
    for first in &fibers {
        let line = Line::horizontal(first.clone());
        let rf = f.restrict_to_line(&line);
        // chart partial in the first factor: d/dt at finite points, d/ds at infinity
        let rx = if first.is_infinity() {
            fs.restrict_to_line(&line)
        } else {
            ft.restrict_to_line(&line)
        };
        let ru = fu.restrict_to_line(&line);
        let rv = fv.restrict_to_line(&line);
        for second in &seconds {
            if !eval_univariate(&rf, second).is_zero() {
                continue;
            }
            if !eval_univariate(&rx, second).is_zero() {
                continue;
            }
            let ry = if second.is_infinity() { &ru } else { &rv };
            if eval_univariate(ry, second).is_zero() {
                out.push(QuadricPoint::new(first.clone(), second.clone()));
            }
        }
    }
    Ok(out)
}

/// An F_q-rational line (horizontal or vertical) dividing `f`, if any:
/// the fiber coordinates are scanned exhaustively.
pub fn detect_line_component<S: Scalar>(f: &BiForm<S>) -> Result<Option<Line<S>>> {
    let spec = f.field();
    let fibers = all_points_of_line::<S>(&spec)?;
    for at in &fibers {
        let line = Line::horizontal(at.clone());
        if f.restrict_to_line(&line).iter().all(|c| c.is_zero()) {
            return Ok(Some(line));
        }
    }
    for at in &fibers {
        let line = Line::vertical(at.clone());
        if f.restrict_to_line(&line).iter().all(|c| c.is_zero()) {
            return Ok(Some(line));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub classification: PointType,
}

/// A form passing every check, with the diagnostics that certified it.
#[derive(Clone, Debug)]
pub struct NodalCurveCandidate<S> {
    pub form: BiForm<S>,
    pub cfg: NodeConfiguration<S>,
    pub node_types: Vec<PointType>,
    pub extra_singular_points: Vec<QuadricPoint<S>>,
    pub line_component: Option<Line<S>>,
    pub attempts_used: usize,
    pub seed: u64,
}

fn same_point_set<S: Scalar>(a: &[QuadricPoint<S>], b: &[QuadricPoint<S>]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.contains(p))
}

/// Sample members of the singular system until one has ordinary nodes
/// exactly at the prescribed points, no other rational singular point,
/// and no line component.
pub fn build_nodal_curve<S: Scalar>(
    cfg: &NodeConfiguration<S>,
    seed: u64,
    max_attempts: usize,
) -> Result<NodalCurveCandidate<S>> {
    let spec = cfg.field();
    let FieldSpec::Prime { p } = spec else {
        return Err(Error::Unscannable(
            "nodal-curve construction requires a prime field".into(),
        ));
    };
    let basis = singular_system(cfg)?;
    if basis.is_empty() {
        return Err(Error::EmptySingularSystem);
    }
    let d = BiDegree::new(cfg.k(), cfg.a());
    let nodes = cfg.node_points();
    let mut rng = rng_from_seed(seed);
    let mut rejected_nodes = 0usize;
    let mut rejected_extra = 0usize;
    let mut rejected_line = 0usize;
    for attempt in 1..=max_attempts {
        let mut coeffs = vec![S::zero(); d.basis_len()];
        for vec in &basis {
            let c = S::from_integer(rng.gen_range(0..p) as i64, &spec);
            for (acc, x) in coeffs.iter_mut().zip(vec) {
                *acc = acc.clone() + c.clone() * x.clone();
            }
        }
        let form = BiForm::from_coeffs(d, coeffs, spec)?;
        if form.is_zero() {
            continue;
        }
        let node_types: Vec<PointType> = nodes
            .iter()
            .map(|pnt| classify_point(&form, pnt))
            .collect::<Result<_>>()?;
        if node_types.iter().any(|t| *t != PointType::OrdinaryNode) {
            rejected_nodes += 1;
            continue;
        }
        let singular = scan_singularities(&form)?;
        if !same_point_set(&singular, &nodes) {
            rejected_extra += 1;
            continue;
        }
        if let Some(_line) = detect_line_component(&form)? {
            rejected_line += 1;
            continue;
        }
        return Ok(NodalCurveCandidate {
            form,
            cfg: cfg.clone(),
            node_types,
            extra_singular_points: Vec::new(),
            line_component: None,
            attempts_used: attempt,
            seed,
        });
    }
    Err(Error::BuildFailed {
        attempts: max_attempts,
        rejected_nodes,
        rejected_extra,
        rejected_line,
    })
}
