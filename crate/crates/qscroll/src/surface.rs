//! Bihomogeneous forms on the quadric surface P^1 x P^1: monomial bases,
//! points, evaluation, order-2 jets, and restriction to lines.
//!
//! Coefficient layout: a form of bidegree `(d1, d2)` stores the coefficient
//! of `s^(d1-i) t^i u^(d2-j) v^j` at index `i * (d2 + 1) + j`, with
//! `i = 0..=d1` outer and `j = 0..=d2` inner. For bidegree `(1,1)` the
//! order is `su, sv, tu, tv`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A class in Pic(P^1 x P^1). Negative entries denote empty linear systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub d1: i64,
    pub d2: i64,
}

impl BiDegree {
    pub fn new(d1: i64, d2: i64) -> Self {
        BiDegree { d1, d2 }
    }

    pub fn is_effective(&self) -> bool {
        self.d1 >= 0 && self.d2 >= 0
    }

    /// Number of monomials, 0 for empty systems.
    pub fn basis_len(&self) -> usize {
        if self.is_effective() {
            ((self.d1 + 1) * (self.d2 + 1)) as usize
        } else {
            0
        }
    }
}

/// Projective dimension of the full system `|(d1,d2)|`: `(d1+1)(d2+1)-1`,
/// or -1 when a degree is negative.
pub fn system_size(d: BiDegree) -> i64 {
    if d.is_effective() {
        (d.d1 + 1) * (d.d2 + 1) - 1
    } else {
        -1
    }
}

/// Intersection number `(a,b).(a',b') = ab' + ba'`.
pub fn intersection_number(c1: BiDegree, c2: BiDegree) -> i64 {
    c1.d1 * c2.d2 + c1.d2 * c2.d1
}

/// A point of P^1, stored with its first nonzero coordinate normalized to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint<S> {
    c0: S,
    c1: S,
}

impl<S: Scalar> ProjPoint<S> {
    pub fn new(c0: S, c1: S) -> Result<Self> {
        if let Some(inv) = c0.inv() {
            Ok(ProjPoint { c0: c0 * inv.clone(), c1: c1 * inv })
        } else if let Some(inv) = c1.inv() {
            Ok(ProjPoint { c0: c0 * inv.clone(), c1: c1 * inv })
        } else {
            Err(Error::usage("(0,0) is not a projective point"))
        }
    }

    /// The affine point `[1 : x]`.
    pub fn finite(x: S, spec: &FieldSpec) -> Self {
        ProjPoint { c0: S::from_integer(1, spec), c1: x }
    }

    /// The point at infinity `[0 : 1]`.
    pub fn infinity(spec: &FieldSpec) -> Self {
        ProjPoint { c0: S::zero(), c1: S::from_integer(1, spec) }
    }

    pub fn coords(&self) -> (&S, &S) {
        (&self.c0, &self.c1)
    }

    pub fn is_infinity(&self) -> bool {
        self.c0.is_zero()
    }
}

/// A point of the quadric, one normalized coordinate pair per factor.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricPoint<S> {
    pub first: ProjPoint<S>,
    pub second: ProjPoint<S>,
}

impl<S: Scalar> QuadricPoint<S> {
    pub fn new(first: ProjPoint<S>, second: ProjPoint<S>) -> Self {
        QuadricPoint { first, second }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineFamily {
    /// Fiber of the first projection, class (1,0).
    Horizontal,
    /// Fiber of the second projection, class (0,1).
    Vertical,
}

/// A line on the quadric: a fiber of one of the two projections.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<S> {
    pub family: LineFamily,
    pub at: ProjPoint<S>,
}

impl<S: Scalar> Line<S> {
    pub fn horizontal(at: ProjPoint<S>) -> Self {
        Line { family: LineFamily::Horizontal, at }
    }

    pub fn vertical(at: ProjPoint<S>) -> Self {
        Line { family: LineFamily::Vertical, at }
    }

    /// The defining form of the line, bidegree (1,0) or (0,1).
    pub fn to_form(&self, spec: &FieldSpec) -> BiForm<S> {
        let (c0, c1) = self.at.coords();
        let degree = match self.family {
            LineFamily::Horizontal => BiDegree::new(1, 0),
            LineFamily::Vertical => BiDegree::new(0, 1),
        };
        // vanishes exactly at the fiber coordinate: c1*first - c0*second
        BiForm::from_coeffs(degree, vec![c1.clone(), -(c0.clone())], *spec).unwrap()
    }

    pub fn contains(&self, p: &QuadricPoint<S>) -> bool {
        match self.family {
            LineFamily::Horizontal => p.first == self.at,
            LineFamily::Vertical => p.second == self.at,
        }
    }
}

/// Order-2 Taylor data of a form in the affine chart centered at a point.
#[derive(Clone, Debug)]
pub struct Jet2<S> {
    pub value: S,
    pub grad: (S, S),
    /// Coefficients of `x^2`, `xy`, `y^2` in local coordinates.
    pub quad: (S, S, S),
}

/// A bihomogeneous form, dense coefficients in the documented monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct BiForm<S> {
    degree: BiDegree,
    coeffs: Vec<S>,
    field: FieldSpec,
}

/// Truncated series `(A0 + A1 e + A2 e^2)` of one factor's monomial
/// `s^alpha t^beta` in the chart at a point of P^1.
fn factor_jet<S: Scalar>(alpha: i64, beta: i64, at: &ProjPoint<S>, spec: &FieldSpec) -> [S; 3] {
    if at.is_infinity() {
        // chart s = e, t = 1: the monomial is e^alpha
        [
            if alpha == 0 { S::one() * S::from_integer(1, spec) } else { S::zero() },
            if alpha == 1 { S::from_integer(1, spec) } else { S::zero() },
            if alpha == 2 { S::from_integer(1, spec) } else { S::zero() },
        ]
    } else {
        // chart s = 1, t = x0 + e: the monomial is (x0 + e)^beta
        let x0 = at.coords().1.clone();
        let pow = |e: i64| -> S {
            let mut acc = S::from_integer(1, spec);
            for _ in 0..e {
                acc = acc * x0.clone();
            }
            acc
        };
        let a0 = pow(beta);
        let a1 = if beta >= 1 {
            S::from_integer(beta, spec) * pow(beta - 1)
        } else {
            S::zero()
        };
        let a2 = if beta >= 2 {
            S::from_integer(beta * (beta - 1) / 2, spec) * pow(beta - 2)
        } else {
            S::zero()
        };
        [a0, a1, a2]
    }
}

impl<S: Scalar> BiForm<S> {
    pub fn from_coeffs(degree: BiDegree, coeffs: Vec<S>, field: FieldSpec) -> Result<Self> {
        if coeffs.len() != degree.basis_len() {
            return Err(Error::usage(format!(
                "bidegree ({},{}) needs {} coefficients, got {}",
                degree.d1,
                degree.d2,
                degree.basis_len(),
                coeffs.len()
            )));
        }
        Ok(BiForm { degree, coeffs, field })
    }

    pub fn zero(degree: BiDegree, field: FieldSpec) -> Self {
        BiForm { degree, coeffs: vec![S::zero(); degree.basis_len()], field }
    }

    pub fn degree(&self) -> BiDegree {
        self.degree
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn idx(&self, i: i64, j: i64) -> usize {
        (i * (self.degree.d2 + 1) + j) as usize
    }

    /// Coefficient of `s^(d1-i) t^i u^(d2-j) v^j`.
    pub fn coeff(&self, i: i64, j: i64) -> &S {
        &self.coeffs[self.idx(i, j)]
    }

    pub fn evaluate(&self, p: &QuadricPoint<S>) -> S {
        let row = monomial_row(self.degree, p, &self.field);
        self.coeffs
            .iter()
            .zip(row)
            .fold(S::zero(), |acc, (c, m)| acc + c.clone() * m)
    }

    /// Taylor data to order 2 in the chart where each factor's normalized
    /// nonzero coordinate is set to 1.
    pub fn local_jet2(&self, p: &QuadricPoint<S>) -> Jet2<S> {
        let d = self.degree;
        let mut value = S::zero();
        let mut gx = S::zero();
        let mut gy = S::zero();
        let mut qxx = S::zero();
        let mut qxy = S::zero();
        let mut qyy = S::zero();
        for i in 0..=d.d1 {
            let a = factor_jet(d.d1 - i, i, &p.first, &self.field);
            for j in 0..=d.d2 {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let b = factor_jet(d.d2 - j, j, &p.second, &self.field);
                value = value + c.clone() * a[0].clone() * b[0].clone();
                gx = gx + c.clone() * a[1].clone() * b[0].clone();
                gy = gy + c.clone() * a[0].clone() * b[1].clone();
                qxx = qxx + c.clone() * a[2].clone() * b[0].clone();
                qxy = qxy + c.clone() * a[1].clone() * b[1].clone();
                qyy = qyy + c.clone() * a[0].clone() * b[2].clone();
            }
        }
        Jet2 { value, grad: (gx, gy), quad: (qxx, qxy, qyy) }
    }

    /// Restriction to a line: substitute the fiber coordinate, leaving a
    /// univariate form of degree d2 (horizontal line) or d1 (vertical).
    /// Coefficient of `w0^(n-j) w1^j` at index j. The zero form signals
    /// that the line divides `self`.
    pub fn restrict_to_line(&self, line: &Line<S>) -> Vec<S> {
        let d = self.degree;
        let (c0, c1) = line.at.coords();
        match line.family {
            LineFamily::Horizontal => {
                // fix (s,t) = line.at; powers s^(d1-i) t^i
                let pows = power_pairs(c0, c1, d.d1);
                (0..=d.d2)
                    .map(|j| {
                        (0..=d.d1).fold(S::zero(), |acc, i| {
                            acc + self.coeff(i, j).clone() * pows[i as usize].clone()
                        })
                    })
                    .collect()
            }
            LineFamily::Vertical => {
                let pows = power_pairs(c0, c1, d.d2);
                (0..=d.d1)
                    .map(|i| {
                        (0..=d.d2).fold(S::zero(), |acc, j| {
                            acc + self.coeff(i, j).clone() * pows[j as usize].clone()
                        })
                    })
                    .collect()
            }
        }
    }

    /// Formal partial derivative with respect to one of the four
    /// homogeneous coordinates.
    pub fn partial(&self, var: Var) -> BiForm<S> {
        let d = self.degree;
        let (nd, spec) = match var {
            Var::S | Var::T => (BiDegree::new(d.d1 - 1, d.d2), self.field),
            Var::U | Var::V => (BiDegree::new(d.d1, d.d2 - 1), self.field),
        };
        let mut out = BiForm::zero(nd, spec);
        if !nd.is_effective() {
            return out;
        }
        for i in 0..=d.d1 {
            for j in 0..=d.d2 {
                let c = self.coeff(i, j).clone();
                if c.is_zero() {
                    continue;
                }
                match var {
                    // d/ds s^(d1-i) t^i = (d1-i) s^(d1-i-1) t^i
                    Var::S if i < d.d1 => {
                        let k = out.idx(i, j);
                        out.coeffs[k] =
                            out.coeffs[k].clone() + S::from_integer(d.d1 - i, &spec) * c;
                    }
                    // d/dt s^(d1-i) t^i = i s^(d1-i) t^(i-1)
                    Var::T if i > 0 => {
                        let k = out.idx(i - 1, j);
                        out.coeffs[k] = out.coeffs[k].clone() + S::from_integer(i, &spec) * c;
                    }
                    Var::U if j < d.d2 => {
                        let k = out.idx(i, j);
                        out.coeffs[k] =
                            out.coeffs[k].clone() + S::from_integer(d.d2 - j, &spec) * c;
                    }
                    Var::V if j > 0 => {
                        let k = out.idx(i, j - 1);
                        out.coeffs[k] = out.coeffs[k].clone() + S::from_integer(j, &spec) * c;
                    }
                    _ => {}
                }
            }
        }
        out
    }

    /// Product of two forms; bidegrees add.
    pub fn mul(&self, other: &BiForm<S>) -> BiForm<S> {
        let d = BiDegree::new(
            self.degree.d1 + other.degree.d1,
            self.degree.d2 + other.degree.d2,
        );
        let mut out: BiForm<S> = BiForm::zero(d, self.field);
        for i1 in 0..=self.degree.d1 {
            for j1 in 0..=self.degree.d2 {
                let c1 = self.coeff(i1, j1);
                if c1.is_zero() {
                    continue;
                }
                for i2 in 0..=other.degree.d1 {
                    for j2 in 0..=other.degree.d2 {
                        let c2 = other.coeff(i2, j2);
                        if c2.is_zero() {
                            continue;
                        }
                        let k = out.idx(i1 + i2, j1 + j2);
                        out.coeffs[k] = out.coeffs[k].clone() + c1.clone() * c2.clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &BiForm<S>) -> BiForm<S> {
        assert_eq!(self.degree, other.degree);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        BiForm { degree: self.degree, coeffs, field: self.field }
    }

    pub fn scale(&self, c: &S) -> BiForm<S> {
        let coeffs = self.coeffs.iter().map(|a| c.clone() * a.clone()).collect();
        BiForm { degree: self.degree, coeffs, field: self.field }
    }
}

/// `[c0^n, c0^(n-1) c1, ..., c1^n]`: the values of `s^(n-i) t^i` at a point.
fn power_pairs<S: Scalar>(c0: &S, c1: &S, n: i64) -> Vec<S> {
    let n = n.max(0) as usize;
    let mut p0 = vec![S::one(); n + 1];
    for i in (0..n).rev() {
        p0[i] = p0[i + 1].clone() * c0.clone();
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut p1 = S::one();
    for (i, base) in p0.into_iter().enumerate() {
        if i > 0 {
            p1 = p1 * c1.clone();
        }
        out.push(base * p1.clone());
    }
    out
}

/// Values of every monomial of bidegree `d` at a point, in documented
/// order: one row of a vanishing-condition matrix.
pub fn monomial_row<S: Scalar>(d: BiDegree, p: &QuadricPoint<S>, _spec: &FieldSpec) -> Vec<S> {
    let (s, t) = p.first.coords();
    let (u, v) = p.second.coords();
    let pows1 = power_pairs(s, t, d.d1);
    let pows2 = power_pairs(u, v, d.d2);
    let mut out = Vec::with_capacity(d.basis_len());
    for a in &pows1 {
        for b in &pows2 {
            out.push(a.clone() * b.clone());
        }
    }
    out
}

/// Per-monomial jet rows at a point: value row, then the two chart
/// partials. These are the three rows a multiplicity-2 condition emits.
pub fn monomial_jet_rows<S: Scalar>(
    d: BiDegree,
    p: &QuadricPoint<S>,
    spec: &FieldSpec,
) -> [Vec<S>; 3] {
    let n = d.basis_len();
    let mut value = Vec::with_capacity(n);
    let mut dx = Vec::with_capacity(n);
    let mut dy = Vec::with_capacity(n);
    for i in 0..=d.d1 {
        let a = factor_jet::<S>(d.d1 - i, i, &p.first, spec);
        for j in 0..=d.d2 {
            let b = factor_jet::<S>(d.d2 - j, j, &p.second, spec);
            value.push(a[0].clone() * b[0].clone());
            dx.push(a[1].clone() * b[0].clone());
            dy.push(a[0].clone() * b[1].clone());
        }
    }
    [value, dx, dy]
}

/// Evaluate a univariate form (`restrict_to_line` layout) at a point of P^1.
pub fn eval_univariate<S: Scalar>(coeffs: &[S], p: &ProjPoint<S>) -> S {
    let n = coeffs.len() as i64 - 1;
    let (c0, c1) = p.coords();
    let pows = power_pairs(c0, c1, n);
    coeffs
        .iter()
        .zip(pows)
        .fold(S::zero(), |acc, (c, m)| acc + c.clone() * m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    S,
    T,
    U,
    V,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::Zero;

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    fn pt(x0: i64, x1: i64, y0: i64, y1: i64, p: u64) -> QuadricPoint<Fp> {
        QuadricPoint::new(
            ProjPoint::new(Fp::new(x0, p), Fp::new(x1, p)).unwrap(),
            ProjPoint::new(Fp::new(y0, p), Fp::new(y1, p)).unwrap(),
        )
    }

    /// s*u as a (1,1)-form over F_p.
    fn su(p: u64) -> BiForm<Fp> {
        let spec = FieldSpec::prime(p).unwrap();
        BiForm::from_coeffs(
            BiDegree::new(1, 1),
            vec![Fp::new(1, p), Fp::new(0, p), Fp::new(0, p), Fp::new(0, p)],
            spec,
        )
        .unwrap()
    }

    #[test]
    fn system_size_matches_formula() {
        assert_eq!(system_size(BiDegree::new(0, 0)), 0);
        assert_eq!(system_size(BiDegree::new(3, 4)), 19);
        assert_eq!(system_size(BiDegree::new(-1, 2)), -1);
    }

    #[test]
    fn intersection_numbers() {
        assert_eq!(
            intersection_number(BiDegree::new(1, 0), BiDegree::new(0, 1)),
            1
        );
        assert_eq!(
            intersection_number(BiDegree::new(3, 5), BiDegree::new(0, 1)),
            3
        );
        assert_eq!(
            intersection_number(BiDegree::new(2, 3), BiDegree::new(2, 3)),
            12
        );
    }

    #[test]
    fn evaluate_su() {
        assert!(su(7).evaluate(&pt(0, 1, 1, 0, 7)).is_zero());
        assert_eq!(su(7).evaluate(&pt(1, 1, 1, 1, 7)).value(), 1);
    }

    #[test]
    fn monomial_row_order() {
        // bidegree (1,1) at ([1:2],[1:3]) over F_7: su, sv, tu, tv
        let spec = f7();
        let row = monomial_row(BiDegree::new(1, 1), &pt(1, 2, 1, 3, 7), &spec);
        let vals: Vec<u64> = row.iter().map(|x| x.value()).collect();
        assert_eq!(vals, vec![1, 3, 2, 6]);
    }

    #[test]
    fn restrict_su_to_its_own_line() {
        // horizontal line s = 0 is the fiber at [0:1]
        let line = Line::horizontal(ProjPoint::infinity(&f7()));
        let r = su(7).restrict_to_line(&line);
        assert!(r.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn restrict_sum_form() {
        // s*u + t*v on the horizontal line at [1:1] gives u + v
        let p = 7;
        let spec = f7();
        let f = BiForm::from_coeffs(
            BiDegree::new(1, 1),
            vec![Fp::new(1, p), Fp::new(0, p), Fp::new(0, p), Fp::new(1, p)],
            spec,
        )
        .unwrap();
        let line = Line::horizontal(ProjPoint::finite(Fp::new(1, p), &spec));
        let r = f.restrict_to_line(&line);
        assert_eq!(r.iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn restriction_degree_is_d1_on_vertical_lines() {
        let spec = f7();
        let f = BiForm::<Fp>::zero(BiDegree::new(3, 5), spec);
        let line = Line::vertical(ProjPoint::finite(Fp::new(2, 7), &spec));
        assert_eq!(f.restrict_to_line(&line).len(), 4);
    }

    #[test]
    fn jet_on_single_branch() {
        // s*u vanishes to order 1 at ([0:1],[1:3]): on the line s = 0 only
        let jet = su(7).local_jet2(&pt(0, 1, 1, 3, 7));
        assert!(jet.value.is_zero());
        assert!(!jet.grad.0.is_zero() || !jet.grad.1.is_zero());
    }

    #[test]
    fn jet_at_crossing_of_own_branches() {
        // s*u at ([0:1],[0:1]) sits on both s = 0 and u = 0: a node
        let jet = su(7).local_jet2(&pt(0, 1, 0, 1, 7));
        assert!(jet.value.is_zero());
        assert!(jet.grad.0.is_zero() && jet.grad.1.is_zero());
        assert!(!jet.quad.1.is_zero());
    }

    #[test]
    fn jet_of_node_model() {
        // (t - 2s)(v - 3u): node at ([1:2],[1:3]) with local model x*y
        let p = 7;
        let spec = f7();
        let l1 = Line::horizontal(ProjPoint::finite(Fp::new(2, p), &spec)).to_form(&spec);
        let l2 = Line::vertical(ProjPoint::finite(Fp::new(3, p), &spec)).to_form(&spec);
        let f = l1.mul(&l2);
        let jet = f.local_jet2(&pt(1, 2, 1, 3, 7));
        assert!(jet.value.is_zero());
        assert!(jet.grad.0.is_zero() && jet.grad.1.is_zero());
        assert!(jet.quad.0.is_zero());
        assert!(!jet.quad.1.is_zero());
        assert!(jet.quad.2.is_zero());
    }

    #[test]
    fn jet_of_squared_line_is_degenerate() {
        // (t - 2s)^2 at ([1:2], anything): local model x^2
        let p = 7;
        let spec = f7();
        let l = Line::horizontal(ProjPoint::finite(Fp::new(2, p), &spec)).to_form(&spec);
        let f = l.mul(&l);
        let jet = f.local_jet2(&pt(1, 2, 1, 0, 7));
        assert!(jet.value.is_zero());
        assert!(jet.grad.0.is_zero() && jet.grad.1.is_zero());
        assert!(!jet.quad.0.is_zero());
        assert!(jet.quad.1.is_zero());
        assert!(jet.quad.2.is_zero());
    }

    #[test]
    fn jet_value_agrees_with_evaluate() {
        let p = 10007;
        let spec = FieldSpec::prime(p).unwrap();
        let coeffs: Vec<Fp> = (0..12).map(|n| Fp::new(3 * n + 1, p)).collect();
        let f = BiForm::from_coeffs(BiDegree::new(2, 3), coeffs, spec).unwrap();
        for (a, b) in [(0i64, 5i64), (3, 0), (9, 11)] {
            let q = pt(1, a, 1, b, p);
            assert_eq!(f.local_jet2(&q).value, f.evaluate(&q));
        }
        let q = pt(0, 1, 1, 4, p);
        assert_eq!(f.local_jet2(&q).value, f.evaluate(&q));
    }

    #[test]
    fn partials_line_up_with_jets() {
        // at a finite point the chart partials are df/dt and df/dv
        let p = 10007;
        let spec = FieldSpec::prime(p).unwrap();
        let coeffs: Vec<Fp> = (0..12).map(|n| Fp::new(7 * n + 2, p)).collect();
        let f = BiForm::from_coeffs(BiDegree::new(2, 3), coeffs, spec).unwrap();
        let q = pt(1, 5, 1, 2, p);
        let jet = f.local_jet2(&q);
        assert_eq!(jet.grad.0, f.partial(Var::T).evaluate(&q));
        assert_eq!(jet.grad.1, f.partial(Var::V).evaluate(&q));
        // at an infinite first coordinate the x-partial is df/ds
        let q = pt(0, 1, 1, 2, p);
        let jet = f.local_jet2(&q);
        assert_eq!(jet.grad.0, f.partial(Var::S).evaluate(&q));
    }
}
