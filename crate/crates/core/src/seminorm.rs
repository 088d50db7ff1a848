//! Integer-valued seminorms on `R^d`, described as composable trees.
//!
//! Every total kind evaluates exactly and takes integer values on `Z^d` by
//! construction: weights and matrices are integral and the `vertices` kind
//! maximises over integer points. The `table` kind is a partial oracle used
//! to exercise the validators; it cannot drive reconstruction.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, rat_from_int, IntMatrix, Integer, LatticeVector, RatVector, Rational};
use crate::lattice::LatticeBall;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeminormSpec {
    /// `N(x) = max { ⟨x,y⟩ : y ∈ ±points }`.
    Vertices { dim: usize, points: Vec<LatticeVector> },
    /// `N(x) = Σ a_i |x_i|`.
    WeightedL1 { weights: Vec<Integer> },
    /// `N(x) = max_i a_i |x_i|`.
    WeightedLinf { weights: Vec<Integer> },
    Sum { dim: usize, terms: Vec<SeminormSpec> },
    Max { dim: usize, terms: Vec<SeminormSpec> },
    /// `N(x) = inner(A x)`.
    Pullback { matrix: IntMatrix, inner: Box<SeminormSpec> },
    /// Values known only at finitely many lattice points.
    Table { dim: usize, entries: BTreeMap<LatticeVector, Integer> },
}

fn positive_weights(weights: &[Integer]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Malformed("weights must be nonempty".into()));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
        return Err(Error::Malformed(format!("weight {w} is not a positive integer")));
    }
    Ok(())
}

fn common_dim(terms: &[SeminormSpec]) -> Result<usize> {
    let dim = terms
        .first()
        .map(SeminormSpec::dim)
        .ok_or_else(|| Error::Malformed("combinator needs at least one term".into()))?;
    for t in terms {
        if t.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: t.dim() });
        }
    }
    Ok(dim)
}

impl SeminormSpec {
    pub fn vertices(dim: usize, points: Vec<LatticeVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::Malformed("vertices kind needs at least one point".into()));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        Ok(SeminormSpec::Vertices { dim, points })
    }

    pub fn weighted_l1(weights: Vec<Integer>) -> Result<Self> {
        positive_weights(&weights)?;
        Ok(SeminormSpec::WeightedL1 { weights })
    }

    pub fn weighted_linf(weights: Vec<Integer>) -> Result<Self> {
        positive_weights(&weights)?;
        Ok(SeminormSpec::WeightedLinf { weights })
    }

    pub fn sum(terms: Vec<SeminormSpec>) -> Result<Self> {
        let dim = common_dim(&terms)?;
        Ok(SeminormSpec::Sum { dim, terms })
    }

    pub fn max(terms: Vec<SeminormSpec>) -> Result<Self> {
        let dim = common_dim(&terms)?;
        Ok(SeminormSpec::Max { dim, terms })
    }

    pub fn pullback(matrix: IntMatrix, inner: SeminormSpec) -> Result<Self> {
        if matrix.nrows() != inner.dim() {
            return Err(Error::DimensionMismatch { expected: inner.dim(), found: matrix.nrows() });
        }
        Ok(SeminormSpec::Pullback { matrix, inner: Box::new(inner) })
    }

    /// Builds a table oracle. Entries must be nonnegative and agree on `±x`.
    pub fn table(dim: usize, entries: BTreeMap<LatticeVector, Integer>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        for (x, v) in &entries {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: x.dim() });
            }
            if v.is_negative() {
                return Err(Error::Malformed(format!("table entry at {x} is negative")));
            }
            if let Some(w) = entries.get(&-x) {
                if w != v {
                    return Err(Error::Malformed(format!(
                        "table entries at {x} and its negation disagree ({v} vs {w})"
                    )));
                }
            }
        }
        Ok(SeminormSpec::Table { dim, entries })
    }

    /// The `vertices` kind from small integer rows.
    pub fn vertices_from_ints(points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<_> = points.iter().map(|p| LatticeVector::from_ints(p)).collect();
        let dim = pts.first().map(LatticeVector::dim).unwrap_or(0);
        Self::vertices(dim, pts)
    }

    pub fn dim(&self) -> usize {
        match self {
            SeminormSpec::Vertices { dim, .. }
            | SeminormSpec::Sum { dim, .. }
            | SeminormSpec::Max { dim, .. }
            | SeminormSpec::Table { dim, .. } => *dim,
            SeminormSpec::WeightedL1 { weights } | SeminormSpec::WeightedLinf { weights } => {
                weights.len()
            }
            SeminormSpec::Pullback { matrix, .. } => matrix.ncols(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SeminormSpec::Vertices { .. } => "vertices",
            SeminormSpec::WeightedL1 { .. } => "weighted_l1",
            SeminormSpec::WeightedLinf { .. } => "weighted_linf",
            SeminormSpec::Sum { .. } => "sum",
            SeminormSpec::Max { .. } => "max",
            SeminormSpec::Pullback { .. } => "pullback",
            SeminormSpec::Table { .. } => "table",
        }
    }

    /// False when any node of the tree is a `table`.
    pub fn is_total(&self) -> bool {
        match self {
            SeminormSpec::Table { .. } => false,
            SeminormSpec::Sum { terms, .. } | SeminormSpec::Max { terms, .. } => {
                terms.iter().all(SeminormSpec::is_total)
            }
            SeminormSpec::Pullback { inner, .. } => inner.is_total(),
            _ => true,
        }
    }

    /// The point set `F ∪ -F` of a `vertices` spec.
    pub fn symmetrized_points(&self) -> Option<Vec<LatticeVector>> {
        match self {
            SeminormSpec::Vertices { points, .. } => {
                Some(points.iter().flat_map(|p| [p.clone(), -p]).collect())
            }
            _ => None,
        }
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if self.dim() == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found })
        }
    }

    /// Exact value `N(x)` at a rational point.
    pub fn eval(&self, x: &RatVector) -> Result<Rational> {
        self.check_dim(x.dim())?;
        Ok(match self {
            SeminormSpec::Vertices { points, .. } => {
                let mut best = Rational::zero();
                for p in points {
                    let v = x.dot_lattice(p)?.abs();
                    if v > best {
                        best = v;
                    }
                }
                best
            }
            SeminormSpec::WeightedL1 { weights } => weights
                .iter()
                .zip(&x.0)
                .map(|(a, c)| rat_from_int(a) * c.abs())
                .sum(),
            SeminormSpec::WeightedLinf { weights } => weights
                .iter()
                .zip(&x.0)
                .map(|(a, c)| rat_from_int(a) * c.abs())
                .max()
                .unwrap_or_else(Rational::zero),
            SeminormSpec::Sum { terms, .. } => {
                let mut acc = Rational::zero();
                for t in terms {
                    acc += t.eval(x)?;
                }
                acc
            }
            SeminormSpec::Max { terms, .. } => {
                let mut best = Rational::zero();
                for t in terms {
                    best = best.max(t.eval(x)?);
                }
                best
            }
            SeminormSpec::Pullback { matrix, inner } => inner.eval(&matrix.apply(x)?)?,
            SeminormSpec::Table { entries, .. } => {
                let p = x.to_lattice().ok_or_else(|| Error::OracleUndefined(x.to_string()))?;
                rat_from_int(entries.get(&p).ok_or_else(|| Error::OracleUndefined(p.to_string()))?)
            }
        })
    }

    /// Exact value `N(x)` at a lattice point, computed in integers.
    pub fn eval_lattice(&self, x: &LatticeVector) -> Result<Integer> {
        self.check_dim(x.dim())?;
        Ok(match self {
            SeminormSpec::Vertices { points, .. } => {
                let mut best = Integer::zero();
                for p in points {
                    let v = x.dot(p)?.abs();
                    if v > best {
                        best = v;
                    }
                }
                best
            }
            SeminormSpec::WeightedL1 { weights } => {
                weights.iter().zip(&x.0).map(|(a, c)| a * c.abs()).sum()
            }
            SeminormSpec::WeightedLinf { weights } => weights
                .iter()
                .zip(&x.0)
                .map(|(a, c)| a * c.abs())
                .max()
                .unwrap_or_else(Integer::zero),
            SeminormSpec::Sum { terms, .. } => {
                let mut acc = Integer::zero();
                for t in terms {
                    acc += t.eval_lattice(x)?;
                }
                acc
            }
            SeminormSpec::Max { terms, .. } => {
                let mut best = Integer::zero();
                for t in terms {
                    best = best.max(t.eval_lattice(x)?);
                }
                best
            }
            SeminormSpec::Pullback { matrix, inner } => {
                inner.eval_lattice(&matrix.apply_lattice(x)?)?
            }
            SeminormSpec::Table { entries, .. } => entries
                .get(x)
                .cloned()
                .ok_or_else(|| Error::OracleUndefined(x.to_string()))?,
        })
    }
}

/// A concrete failure of one validation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub points: Vec<RatVector>,
    pub scalar: Option<Rational>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult { name, checked: 0, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per failing check.
    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter_map(|c| {
                let w = c.witness.as_ref()?;
                Some(format!("{}: {}", c.name, w.detail))
            })
            .collect()
    }
}

pub const NONNEGATIVITY: &str = "nonnegativity";
pub const SYMMETRY: &str = "symmetry";
pub const HOMOGENEITY: &str = "homogeneity";
pub const SUBADDITIVITY: &str = "subadditivity";
pub const INTEGRALITY: &str = "integrality";

fn random_rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> RatVector {
    RatVector((0..dim).map(|_| random_rational(rng, 12, 6)).collect())
}

/// Checks homogeneity, subadditivity, symmetry and nonnegativity exactly.
///
/// Total specs are sampled at `sample_budget` seeded random rational points
/// (one `x`, `y`, `t` per sample). Table specs are checked exhaustively over
/// all combinations of their entries instead, since they are undefined elsewhere.
pub fn validate_axioms(spec: &SeminormSpec, sample_budget: usize, seed: u64) -> Result<ValidationReport> {
    if let SeminormSpec::Table { entries, .. } = spec {
        return Ok(validate_table(entries));
    }
    let mut nonneg = CheckResult::new(NONNEGATIVITY);
    let mut symmetry = CheckResult::new(SYMMETRY);
    let mut homogeneity = CheckResult::new(HOMOGENEITY);
    let mut subadd = CheckResult::new(SUBADDITIVITY);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = spec.dim();
    for _ in 0..sample_budget {
        let x = random_point(&mut rng, dim);
        let y = random_point(&mut rng, dim);
        let t = random_rational(&mut rng, 8, 5);
        let nx = spec.eval(&x)?;
        let ny = spec.eval(&y)?;
        nonneg.record(!nx.is_negative(), || Witness {
            points: vec![x.clone()],
            scalar: None,
            detail: format!("N({x}) = {nx} < 0"),
        });
        let nneg = spec.eval(&-&x)?;
        symmetry.record(nneg == nx, || Witness {
            points: vec![x.clone()],
            scalar: None,
            detail: format!("N(-x) = {nneg} but N(x) = {nx} at x = {x}"),
        });
        let ntx = spec.eval(&x.scale(&t))?;
        let expected = t.abs() * &nx;
        homogeneity.record(ntx == expected, || Witness {
            points: vec![x.clone()],
            scalar: Some(t.clone()),
            detail: format!("N(t x) = {ntx} but |t| N(x) = {expected} at x = {x}, t = {t}"),
        });
        let nsum = spec.eval(&(&x + &y))?;
        subadd.record(nsum <= &nx + &ny, || Witness {
            points: vec![x.clone(), y.clone()],
            scalar: None,
            detail: format!("N(x+y) = {nsum} > N(x) + N(y) = {} at x = {x}, y = {y}", &nx + &ny),
        });
    }
    Ok(ValidationReport { checks: vec![nonneg, symmetry, homogeneity, subadd] })
}

fn validate_table(entries: &BTreeMap<LatticeVector, Integer>) -> ValidationReport {
    let mut nonneg = CheckResult::new(NONNEGATIVITY);
    let mut symmetry = CheckResult::new(SYMMETRY);
    let mut homogeneity = CheckResult::new(HOMOGENEITY);
    let mut subadd = CheckResult::new(SUBADDITIVITY);
    for (x, nx) in entries {
        nonneg.record(!nx.is_negative(), || Witness {
            points: vec![x.to_rational()],
            scalar: None,
            detail: format!("N({x}) = {nx} < 0"),
        });
        if let Some(nneg) = entries.get(&-x) {
            symmetry.record(nneg == nx, || Witness {
                points: vec![x.to_rational()],
                scalar: None,
                detail: format!("N(-x) = {nneg} but N(x) = {nx} at x = {x}"),
            });
        }
        for (y, ny) in entries {
            if let Some(t) = scalar_multiple(x, y) {
                let expected = t.abs() * rat_from_int(nx);
                homogeneity.record(rat_from_int(ny) == expected, || Witness {
                    points: vec![x.to_rational()],
                    scalar: Some(t.clone()),
                    detail: format!("N(t x) = {ny} but |t| N(x) = {expected} at x = {x}, t = {t}"),
                });
            }
            if let Some(nsum) = entries.get(&(x + y)) {
                subadd.record(nsum <= &(nx + ny), || Witness {
                    points: vec![x.to_rational(), y.to_rational()],
                    scalar: None,
                    detail: format!("N(x+y) = {nsum} > N(x) + N(y) = {} at x = {x}, y = {y}", nx + ny),
                });
            }
        }
    }
    ValidationReport { checks: vec![nonneg, symmetry, homogeneity, subadd] }
}

/// The `t` with `y = t x`, for nonzero `x`, if one exists.
fn scalar_multiple(x: &LatticeVector, y: &LatticeVector) -> Option<Rational> {
    let (i, xi) = x.0.iter().enumerate().find(|(_, c)| !c.is_zero())?;
    let t = Rational::new(y.0[i].clone(), xi.clone());
    let ok = x.0.iter().zip(&y.0).all(|(a, b)| rat_from_int(a) * &t == rat_from_int(b));
    ok.then_some(t)
}

/// Checks `N(x) ∈ Z` for every lattice point with `‖x‖∞ ≤ radius`.
pub fn validate_integrality(spec: &SeminormSpec, radius: u64) -> Result<ValidationReport> {
    if !spec.is_total() {
        return Err(Error::NotTotal);
    }
    let mut check = CheckResult::new(INTEGRALITY);
    for x in LatticeBall::new(spec.dim(), radius) {
        let xr = x.to_rational();
        let v = spec.eval(&xr)?;
        check.record(v.is_integer(), || Witness {
            points: vec![xr.clone()],
            scalar: None,
            detail: format!("N({x}) = {v} is not an integer"),
        });
    }
    Ok(ValidationReport { checks: vec![check] })
}
