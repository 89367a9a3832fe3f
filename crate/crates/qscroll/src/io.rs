//! JSON interchange for curves and configurations. Scalars travel as
//! canonical decimal strings ("17" over F_p, "-3/4" over the rationals)
//! so files are readable and field-independent; coefficient vectors use
//! the documented monomial order.

use serde::{Deserialize, Serialize};

use crate::builder::{NodalCurveCandidate, PointType};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linsys::NodeConfiguration;
use crate::surface::{BiDegree, BiForm, Line, ProjPoint, QuadricPoint};

fn point_repr<S: Scalar>(p: &ProjPoint<S>) -> [String; 2] {
    let (c0, c1) = p.coords();
    [c0.to_string(), c1.to_string()]
}

fn point_parse<S: Scalar>(repr: &[String; 2], spec: &FieldSpec) -> Result<ProjPoint<S>> {
    ProjPoint::new(S::parse(&repr[0], spec)?, S::parse(&repr[1], spec)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadricPointFile {
    pub first: [String; 2],
    pub second: [String; 2],
}

impl QuadricPointFile {
    pub fn from_point<S: Scalar>(p: &QuadricPoint<S>) -> Self {
        QuadricPointFile {
            first: point_repr(&p.first),
            second: point_repr(&p.second),
        }
    }

    pub fn to_point<S: Scalar>(&self, spec: &FieldSpec) -> Result<QuadricPoint<S>> {
        Ok(QuadricPoint::new(
            point_parse(&self.first, spec)?,
            point_parse(&self.second, spec)?,
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeConfigurationFile {
    pub k: i64,
    pub a: i64,
    pub field: FieldSpec,
    /// Fiber coordinate of each horizontal line, paired with its divisor.
    pub lines: Vec<[String; 2]>,
    pub divisors: Vec<Vec<QuadricPointFile>>,
}

impl NodeConfigurationFile {
    pub fn from_config<S: Scalar>(cfg: &NodeConfiguration<S>) -> Self {
        NodeConfigurationFile {
            k: cfg.k(),
            a: cfg.a(),
            field: cfg.field(),
            lines: cfg.lines().iter().map(|l| point_repr(&l.at)).collect(),
            divisors: cfg
                .divisors()
                .iter()
                .map(|pts| pts.iter().map(QuadricPointFile::from_point).collect())
                .collect(),
        }
    }

    pub fn to_config<S: Scalar>(&self) -> Result<NodeConfiguration<S>> {
        let lines: Vec<Line<S>> = self
            .lines
            .iter()
            .map(|r| Ok(Line::horizontal(point_parse(r, &self.field)?)))
            .collect::<Result<_>>()?;
        let divisors: Vec<Vec<QuadricPoint<S>>> = self
            .divisors
            .iter()
            .map(|pts| pts.iter().map(|p| p.to_point(&self.field)).collect())
            .collect::<Result<_>>()?;
        NodeConfiguration::new(self.k, self.a, lines, divisors, self.field)
    }
}

/// The interchange format for constructed curves, emitted by `build` and
/// accepted by `scrollar --from-file`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub field: FieldSpec,
    pub bidegree: BiDegree,
    /// Coefficients in documented monomial order.
    pub coeffs: Vec<String>,
    pub config: NodeConfigurationFile,
    pub node_types: Vec<PointType>,
    pub attempts_used: usize,
    pub seed: u64,
}

impl CurveFile {
    pub fn from_candidate<S: Scalar>(c: &NodalCurveCandidate<S>) -> Self {
        CurveFile {
            field: c.form.field(),
            bidegree: c.form.degree(),
            coeffs: c.form.coeffs().iter().map(|x| x.to_string()).collect(),
            config: NodeConfigurationFile::from_config(&c.cfg),
            node_types: c.node_types.clone(),
            attempts_used: c.attempts_used,
            seed: c.seed,
        }
    }

    pub fn to_form<S: Scalar>(&self) -> Result<BiForm<S>> {
        let coeffs: Vec<S> = self
            .coeffs
            .iter()
            .map(|s| S::parse(s, &self.field))
            .collect::<Result<_>>()?;
        BiForm::from_coeffs(self.bidegree, coeffs, self.field)
    }

    pub fn verify_consistent(&self) -> Result<()> {
        if self.config.field != self.field {
            return Err(Error::usage("curve file field disagrees with its config"));
        }
        if self.bidegree.d1 != self.config.k || self.bidegree.d2 != self.config.a {
            return Err(Error::usage("curve file bidegree disagrees with its config"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_nodal_curve;
    use crate::field::Fp;

    #[test]
    fn curve_file_roundtrip() {
        let spec = FieldSpec::prime(499).unwrap();
        let cfg = NodeConfiguration::<Fp>::sample(3, 5, &[2, 1], spec, 11, true).unwrap();
        let cand = build_nodal_curve(&cfg, 11, 20).unwrap();
        let file = CurveFile::from_candidate(&cand);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let back: CurveFile = serde_json::from_str(&json).unwrap();
        back.verify_consistent().unwrap();
        let form: BiForm<Fp> = back.to_form().unwrap();
        assert_eq!(form, cand.form);
        let cfg2: NodeConfiguration<Fp> = back.config.to_config().unwrap();
        assert_eq!(cfg2.ys(), cfg.ys());
        assert_eq!(cfg2.node_points(), cfg.node_points());
    }
}
