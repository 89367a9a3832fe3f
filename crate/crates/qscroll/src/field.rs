//! Exact coefficient fields: prime fields F_p and the rationals.
//!
//! All arithmetic in this crate is exact; every dimension claim is an
//! integer computed from ranks of matrices over one of these fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Signed};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which exact field coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } => *p,
            FieldSpec::Rational => 0,
        }
    }

    /// Number of points of P^1 over this field, `None` when infinite.
    pub fn projective_line_size(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime { p } => Some(p + 1),
            FieldSpec::Rational => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s == "rational" || s == "q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(ps) = s.strip_prefix("p:") {
            let p: u64 = ps
                .parse()
                .map_err(|_| Error::usage(format!("bad prime in field spec '{s}'")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::usage(format!(
            "bad field spec '{s}' (expected 'p:<prime>' or 'rational')"
        )))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "p:{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// An element of an exact field. The two instantiations used throughout are
/// [`Fp`] and [`num::BigRational`]; all geometry and linear algebra is
/// generic over this trait.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Image of an integer in the field designated by `spec`.
    fn from_integer(n: i64, spec: &FieldSpec) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Parse the canonical string form emitted by `Display`.
    fn parse(s: &str, spec: &FieldSpec) -> Result<Self>;

    /// Bring `rows` into reduced row echelon form, returning the pivot
    /// columns. The default is ordinary Gauss-Jordan with field division;
    /// the rational instance overrides it with fraction-free elimination.
    fn reduced_echelon(rows: &mut [Vec<Self>]) -> Vec<usize> {
        gauss_jordan(rows)
    }
}

/// Plain Gauss-Jordan over a field, in place; returns pivot columns.
pub(crate) fn gauss_jordan<S: Scalar>(rows: &mut [Vec<S>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for j in c..ncols {
            rows[r][j] = rows[r][j].clone() * inv.clone();
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    rows[i][j] = rows[i][j].clone() - factor.clone() * rows[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Element of F_p, canonically reduced to `[0, p)`.
///
/// `p == 0` marks the unbound constants produced by `Zero::zero` and
/// `One::one`; they acquire the modulus of the first bound operand they
/// meet. Two elements compare equal iff their canonical values agree.
#[derive(Clone, Copy, Debug, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        let m = p as i128;
        let r = ((v as i128 % m) + m) % m;
        Fp { v: r as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn unify(a: Fp, b: Fp) -> (u64, u64, u64) {
        let p = match (a.p, b.p) {
            (0, q) => q,
            (q, 0) => q,
            (q, q2) => {
                debug_assert_eq!(q, q2, "mixed moduli {q} and {q2}");
                q
            }
        };
        if p == 0 {
            // both unbound: small constants, plain integer arithmetic
            (a.v, b.v, 0)
        } else {
            (a.v % p, b.v % p, p)
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            Fp { v: a + b, p: 0 }
        } else {
            Fp { v: ((a as u128 + b as u128) % p as u128) as u64, p }
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            debug_assert!(a >= b, "unbound Fp subtraction would go negative");
            Fp { v: a - b, p: 0 }
        } else {
            Fp { v: ((a as u128 + (p - b) as u128) % p as u128) as u64, p }
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            Fp { v: a * b, p: 0 }
        } else {
            Fp { v: mul_mod(a, b, p), p }
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.p == 0 {
            debug_assert_eq!(self.v, 0, "cannot negate unbound nonzero constant");
            self
        } else {
            Fp { v: (self.p - self.v % self.p) % self.p, p: self.p }
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Scalar for Fp {
    fn from_integer(n: i64, spec: &FieldSpec) -> Self {
        match spec {
            FieldSpec::Prime { p } => Fp::new(n, *p),
            FieldSpec::Rational => panic!("Fp element requested from a rational FieldSpec"),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        if self.p == 0 {
            // unbound constants are only 0 and 1, and 1 is self-inverse
            debug_assert_eq!(self.v, 1);
            return Some(*self);
        }
        Some(Fp { v: pow_mod(self.v, self.p - 2, self.p), p: self.p })
    }

    fn parse(s: &str, spec: &FieldSpec) -> Result<Self> {
        let n: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad F_p element '{s}'")))?;
        Ok(Fp::from_integer(n, spec))
    }
}

/// Rationals in lowest terms; `BigRational` maintains the canonical form
/// (reduced, positive denominator) itself.
pub type Rational = BigRational;

impl Scalar for BigRational {
    fn from_integer(n: i64, _spec: &FieldSpec) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn parse(s: &str, _spec: &FieldSpec) -> Result<Self> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad rational '{s}'")))
    }

    fn reduced_echelon(rows: &mut [Vec<Self>]) -> Vec<usize> {
        bareiss_rref(rows)
    }
}

/// Fraction-free elimination for rational matrices.
///
/// Denominators are cleared per row, the integer matrix is reduced by
/// Bareiss one-step elimination (every division is exact, intermediate
/// entries stay minors of the input), and the echelon form is normalized
/// to RREF at the end.
fn bareiss_rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if nrows == 0 || ncols == 0 {
        return Vec::new();
    }

    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .map(|x| x.denom().clone())
                .fold(BigInt::one(), |acc, d| num::integer::lcm(acc, d));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // pick the smallest nonzero pivot to keep entries tame
        let pr = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].abs());
        let Some(pr) = pr else { continue };
        m.swap(r, pr);
        let pivot = m[r][c].clone();
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let t = &pivot * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = t / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }

    // back-substitute the integer echelon form into RREF over Q
    let mut rat: Vec<Vec<BigRational>> = m
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for (ri, &pc) in pivots.iter().enumerate().rev() {
        let inv = rat[ri][pc].inv().expect("nonzero pivot");
        for j in pc..ncols {
            let v = rat[ri][j].clone() * inv.clone();
            rat[ri][j] = v;
        }
        for i in 0..ri {
            if !rat[i][pc].is_zero() {
                let factor = rat[i][pc].clone();
                for j in pc..ncols {
                    let v = rat[i][j].clone() - factor.clone() * rat[ri][j].clone();
                    rat[i][j] = v;
                }
            }
        }
    }
    rows.clone_from_slice(&rat);
    pivots
}
