//! Exact scalar, vector and matrix arithmetic.
//!
//! Every quantity downstream of this module is an arbitrary-precision integer
//! or rational. Nothing is ever rounded except by [`nearest_lattice`], whose
//! rounding is itself exact.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_from_int(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

/// Parses `"7"`, `"-3/4"` or `"+2"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Malformed(format!("not an exact rational: {text:?}"));
    let parse_int = |s: &str| -> Result<Integer> {
        let s = s.strip_prefix('+').unwrap_or(s);
        if s.is_empty() || !s.trim_start_matches('-').bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<Integer>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A point of `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVector(pub Vec<Rational>);

/// A point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<Integer>);

impl RatVector {
    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RatVector(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVector) -> Result<Rational> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn dot_lattice(&self, other: &LatticeVector) -> Result<Rational> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t))
    }

    pub fn scale(&self, t: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|c| c * t).collect())
    }

    pub fn norm_sq(&self) -> Rational {
        self.0.iter().map(|c| c * c).sum()
    }

    /// The lattice point with the same coordinates, if every coordinate is integral.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }
}

impl LatticeVector {
    pub fn zeros(dim: usize) -> Self {
        LatticeVector(vec![Integer::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| Integer::from(c)).collect())
    }

    /// The `j`-th coordinate vector of `Z^dim`.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[j] = Integer::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Integer] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> Result<Integer> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn scale(&self, t: &Integer) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * t).collect())
    }

    pub fn norm_inf(&self) -> Integer {
        self.0.iter().map(Signed::abs).max().unwrap_or_else(Integer::zero)
    }

    pub fn norm_sq(&self) -> Integer {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn to_rational(&self) -> RatVector {
        RatVector(self.0.iter().cloned().map(Rational::from_integer).collect())
    }
}

macro_rules! impl_vector_ops {
    ($ty:ident) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
                $ty(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
                $ty(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(self.0.iter().map(|a| -a).collect())
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

impl_vector_ops!(RatVector);
impl_vector_ops!(LatticeVector);

/// Exact inner product `Σ x_i y_i`.
pub fn dot(x: &RatVector, y: &RatVector) -> Result<Rational> {
    x.dot(y)
}

/// Nearest integer, exact halves rounded toward `+∞`.
pub fn round_half_up(q: &Rational) -> Integer {
    (q + rat(1, 2)).floor().to_integer()
}

/// Componentwise nearest lattice point; ties go toward `+∞`.
pub fn nearest_lattice(p: &RatVector) -> LatticeVector {
    LatticeVector(p.0.iter().map(round_half_up).collect())
}

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.0.iter().fold(Integer::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector(v.0.iter().map(|c| c / &g).collect()))
}

/// The primitive integer vector positively proportional to a nonzero rational vector.
pub fn primitive_direction(v: &[Rational]) -> Result<LatticeVector> {
    let lcm = v.iter().fold(Integer::one(), |l, c| l.lcm(c.denom()));
    let scaled = LatticeVector(v.iter().map(|c| (c * &lcm).to_integer()).collect());
    primitive(&scaled)
}

/// A rectangular integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<LatticeVector>,
    cols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<LatticeVector>) -> Result<Self> {
        let cols = rows
            .first()
            .map(LatticeVector::dim)
            .ok_or_else(|| Error::Malformed("matrix needs at least one row".into()))?;
        if cols == 0 {
            return Err(Error::Malformed("matrix needs at least one column".into()));
        }
        for r in &rows {
            check_dims(cols, r.dim())?;
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| LatticeVector::from_ints(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[LatticeVector] {
        &self.rows
    }

    pub fn apply(&self, x: &RatVector) -> Result<RatVector> {
        check_dims(self.cols, x.dim())?;
        self.rows
            .iter()
            .map(|r| x.dot_lattice(r))
            .collect::<Result<Vec<_>>>()
            .map(RatVector)
    }

    pub fn apply_lattice(&self, x: &LatticeVector) -> Result<LatticeVector> {
        check_dims(self.cols, x.dim())?;
        self.rows
            .iter()
            .map(|r| r.dot(x))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    /// `Aᵀ y` for `y` in the row space dimension.
    pub fn apply_transpose(&self, y: &RatVector) -> Result<RatVector> {
        check_dims(self.nrows(), y.dim())?;
        let mut out = RatVector::zeros(self.cols);
        for (row, coef) in self.rows.iter().zip(&y.0) {
            for (o, a) in out.0.iter_mut().zip(&row.0) {
                *o += coef * Rational::from_integer(a.clone());
            }
        }
        Ok(out)
    }
}
