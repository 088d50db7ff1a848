//! Recovery of the dual unit ball from seminorm evaluations.
//!
//! A ray probe walks `x_n = n·u + offset` and records the forward differences
//! `N(x_n + e_j) - N(x_n)`. When `u` lies in the interior of the normal cone of
//! a vertex `y` of the dual ball, these differences equal `y` exactly for all
//! large `n`, and `N(x_n) = ⟨x_n, y⟩`. A window of identical differences with
//! zero residual `N(x_n) - ⟨x_n, diffs⟩` is accepted as an exposure
//! certificate for `y`.
//!
//! [`reconstruct`] seeds probes along perturbed coordinate directions, takes
//! the hull of the certified vertices, and probes each facet normal (and each
//! direction orthogonal to the hull's affine span) until the oracle confirms
//! that no part of the dual ball lies beyond any of them.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::{primitive, rat_from_int, Integer, LatticeVector, RatVector, Rational};
use crate::geometry::{self, Polytope};
use crate::lattice::LatticeBall;
use crate::seminorm::{validate_axioms, validate_integrality, SeminormSpec};

/// Scale applied to a direction before the first perturbation; each further
/// attempt doubles it.
pub const PERTURB_SCALE_BASE: i64 = 4;

/// One step of a ray probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayProbe {
    pub direction: LatticeVector,
    pub offset: LatticeVector,
    pub n: u64,
    pub x_n: LatticeVector,
    /// `⟨x_n, y⟩` for the certified vertex `y`, once one exists.
    pub lambda_n: Option<Rational>,
    /// `‖x_n - λ_n x_0‖²` with `x_0 = direction / ⟨direction, y⟩`.
    pub z_sq: Option<Rational>,
    pub value: Integer,
    pub diffs: LatticeVector,
    pub residual: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExposureCertificate {
    pub vertex: LatticeVector,
    pub direction: LatticeVector,
    pub n_star: u64,
    pub window: usize,
    pub probes: Vec<RayProbe>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    Certified(ExposureCertificate),
    /// The step budget ran out before the differences stabilised; carries the trace.
    Unstable(Vec<RayProbe>),
}

impl ProbeOutcome {
    pub fn certificate(&self) -> Option<&ExposureCertificate> {
        match self {
            ProbeOutcome::Certified(c) => Some(c),
            ProbeOutcome::Unstable(_) => None,
        }
    }
}

/// Limits for the reconstruction loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Steps per probe; `None` means `64 · d · max |direction_i|`.
    pub n_max: Option<u64>,
    pub window: usize,
    /// Perturbation attempts per direction after the unperturbed one.
    pub attempts: u32,
    pub max_rounds: usize,
    /// Random samples for the seminorm axiom spot check.
    pub axiom_samples: usize,
    /// Lattice radius for the integrality spot check.
    pub integrality_radius: u64,
    pub parallel: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            n_max: None,
            window: 3,
            attempts: 8,
            max_rounds: 64,
            axiom_samples: 64,
            integrality_radius: 2,
            parallel: true,
        }
    }
}

impl Budget {
    pub fn n_max_for(&self, direction: &LatticeVector) -> u64 {
        self.n_max.unwrap_or_else(|| default_n_max(direction))
    }
}

pub fn default_n_max(direction: &LatticeVector) -> u64 {
    let m = direction.norm_inf();
    let m = u64::try_from(&m).unwrap_or(u64::MAX / 1024).max(1);
    64u64.saturating_mul(direction.dim() as u64).saturating_mul(m)
}

fn to_integer(q: Rational, at: &LatticeVector) -> Result<Integer> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::IntegralityViolated(format!("N({at}) = {q}")))
    }
}

/// `N` at a lattice point, insisting on an integer value.
fn eval_integer(oracle: &SeminormSpec, x: &LatticeVector) -> Result<Integer> {
    match oracle {
        // The rational path is the one that can expose a non-integral table value.
        SeminormSpec::Table { .. } => to_integer(oracle.eval(&x.to_rational())?, x),
        _ => oracle.eval_lattice(x),
    }
}

/// The probe record at lattice point `x_n`.
pub fn probe_at(
    oracle: &SeminormSpec,
    direction: &LatticeVector,
    offset: &LatticeVector,
    n: u64,
    x_n: LatticeVector,
) -> Result<RayProbe> {
    let d = x_n.dim();
    let value = eval_integer(oracle, &x_n)?;
    let mut diffs = Vec::with_capacity(d);
    for j in 0..d {
        let shifted = &x_n + &LatticeVector::unit(d, j);
        diffs.push(eval_integer(oracle, &shifted)? - &value);
    }
    let diffs = LatticeVector(diffs);
    let residual = &value - x_n.dot(&diffs)?;
    Ok(RayProbe {
        direction: direction.clone(),
        offset: offset.clone(),
        n,
        x_n,
        lambda_n: None,
        z_sq: None,
        value,
        diffs,
        residual,
    })
}

/// The probe record at step `n` of the ray `n·direction + offset`.
pub fn ray_probe(
    oracle: &SeminormSpec,
    direction: &LatticeVector,
    offset: &LatticeVector,
    n: u64,
) -> Result<RayProbe> {
    let x_n = &direction.scale(&Integer::from(n)) + offset;
    probe_at(oracle, direction, offset, n, x_n)
}

/// Fills `lambda_n` and `z_sq` relative to the vertex `y0`.
fn decompose(probe: &mut RayProbe, y0: &LatticeVector) {
    let lambda = rat_from_int(&probe.x_n.dot(y0).expect("same dimension"));
    let scale = probe.direction.dot(y0).expect("same dimension");
    if !scale.is_zero() {
        let x0 = probe.direction.to_rational().scale(&(Rational::one() / rat_from_int(&scale)));
        let z = &probe.x_n.to_rational() - &x0.scale(&lambda);
        probe.z_sq = Some(z.norm_sq());
    }
    probe.lambda_n = Some(lambda);
}

fn check_probe_args(oracle: &SeminormSpec, direction: &LatticeVector, offset: &LatticeVector) -> Result<()> {
    if !oracle.is_total() {
        return Err(Error::NotTotal);
    }
    if direction.dim() != oracle.dim() {
        return Err(Error::DimensionMismatch { expected: oracle.dim(), found: direction.dim() });
    }
    if offset.dim() != oracle.dim() {
        return Err(Error::DimensionMismatch { expected: oracle.dim(), found: offset.dim() });
    }
    if direction.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Whether `N` is linear with gradient `y` on the points `x ± e_j` around `x`.
///
/// Forward steps agree by construction of the differences; the backward steps
/// then force `y` to be the unique maximiser of `⟨x, ·⟩` over the dual ball.
fn two_sided(oracle: &SeminormSpec, probe: &RayProbe) -> Result<bool> {
    let d = probe.x_n.dim();
    for j in 0..d {
        let back = &probe.x_n - &LatticeVector::unit(d, j);
        if eval_integer(oracle, &back)? != &probe.value - &probe.diffs.0[j] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs the stabilisation test over a sequence of probe records.
fn stabilise(
    oracle: &SeminormSpec,
    steps: impl Iterator<Item = Result<RayProbe>>,
    window: usize,
    direction: &LatticeVector,
) -> Result<ProbeOutcome> {
    let mut trace: Vec<RayProbe> = Vec::new();
    let mut streak = 0usize;
    for step in steps {
        let step = step?;
        let extends = streak > 0 && trace.last().is_some_and(|prev| prev.diffs == step.diffs);
        streak = match (step.residual.is_zero(), extends) {
            (false, _) => 0,
            (true, true) => streak + 1,
            (true, false) => 1,
        };
        trace.push(step);
        if streak >= window {
            if !two_sided(oracle, trace.last().expect("nonempty"))? {
                // The ray runs along a wall of the normal fan.
                streak = 0;
                continue;
            }
            let vertex = trace.last().expect("nonempty").diffs.clone();
            let start = trace.len() - window;
            let mut probes = trace.split_off(start);
            for p in probes.iter_mut() {
                decompose(p, &vertex);
            }
            return Ok(ProbeOutcome::Certified(ExposureCertificate {
                vertex,
                direction: direction.clone(),
                n_star: probes[0].n,
                window,
                probes,
            }));
        }
    }
    Ok(ProbeOutcome::Unstable(trace))
}

/// Walks `x_n = n·direction + offset` for `n = 1..=n_max` and certifies the
/// vertex exposed by `direction` once `window` consecutive steps agree on
/// their differences with zero residual.
pub fn probe_vertex(
    oracle: &SeminormSpec,
    direction: &LatticeVector,
    offset: &LatticeVector,
    n_max: u64,
    window: usize,
) -> Result<ProbeOutcome> {
    check_probe_args(oracle, direction, offset)?;
    if window < 2 || n_max < window as u64 {
        return Err(Error::Precondition(format!(
            "need n_max >= window >= 2, got n_max = {n_max}, window = {window}"
        )));
    }
    let steps = (1..=n_max).map(|n| ray_probe(oracle, direction, offset, n));
    stabilise(oracle, steps, window, direction)
}

/// Probe along a rational direction `x0` with `x_n` the nearest lattice point to `n·x0`.
pub fn probe_rational_direction(
    oracle: &SeminormSpec,
    x0: &RatVector,
    n_max: u64,
    window: usize,
) -> Result<ProbeOutcome> {
    let direction = crate::exact::primitive_direction(&x0.0)?;
    let offset = LatticeVector::zeros(x0.dim());
    check_probe_args(oracle, &direction, &offset)?;
    if window < 2 || n_max < window as u64 {
        return Err(Error::Precondition(format!(
            "need n_max >= window >= 2, got n_max = {n_max}, window = {window}"
        )));
    }
    let steps = (1..=n_max).map(|n| {
        let x_n = crate::exact::nearest_lattice(&x0.scale(&Rational::from_integer(n.into())));
        let mut p = probe_at(oracle, &direction, &offset, n, x_n)?;
        p.offset = &p.x_n - &direction.scale(&Integer::from(n));
        Ok(p)
    });
    stabilise(oracle, steps, window, &direction)
}

/// Deterministic perturbation `primitive(L·direction + r)` with
/// `L = 2^attempt · PERTURB_SCALE_BASE` and `‖r‖∞ ≤ attempt`.
///
/// Attempt 0 returns `primitive(direction)`. The random offset is drawn from a
/// generator keyed by `(seed, attempt, direction)` only.
pub fn perturb_direction(direction: &LatticeVector, attempt: u32, seed: u64) -> Result<LatticeVector> {
    if attempt == 0 {
        return primitive(direction);
    }
    if direction.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(attempt.to_le_bytes());
    for c in direction.coords() {
        let bytes = c.to_signed_bytes_le();
        hasher.update((bytes.len() as u64).to_le_bytes());
        hasher.update(&bytes);
    }
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest[..32]);
    let mut rng = ChaCha8Rng::from_seed(key);
    let scale = Integer::from(PERTURB_SCALE_BASE) << attempt.min(4096) as usize;
    let bound = i64::from(attempt);
    let jitter = LatticeVector(
        (0..direction.dim()).map(|_| Integer::from(rng.gen_range(-bound..=bound))).collect(),
    );
    primitive(&(&direction.scale(&scale) + &jitter))
}

/// What a directional search is looking for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Goal {
    /// Any certified vertex.
    Any,
    /// A vertex on the hyperplane `⟨u, y⟩ = c`.
    OnPlane,
    /// A vertex strictly beyond `⟨u, y⟩ = c`.
    Beyond,
}

/// Probes `direction` and its perturbations (attempts `first..=attempts`)
/// until a certificate meets `goal` relative to the plane `⟨direction, y⟩ = level`.
fn search(
    oracle: &SeminormSpec,
    direction: &LatticeVector,
    level: &Rational,
    goal: Goal,
    first: u32,
    budget: &Budget,
    seed: u64,
) -> Result<Option<ExposureCertificate>> {
    let offset = LatticeVector::zeros(direction.dim());
    // Budgeted on the requested direction: perturbation rescales it without
    // moving the walls of the normal fan any closer.
    let n_max = budget.n_max_for(direction).max(budget.window as u64);
    for attempt in first..=budget.attempts.max(first) {
        let probe_dir = perturb_direction(direction, attempt, seed)?;
        if let ProbeOutcome::Certified(cert) =
            probe_vertex(oracle, &probe_dir, &offset, n_max, budget.window)?
        {
            let at = rat_from_int(&cert.vertex.dot(direction)?);
            let met = match goal {
                Goal::Any => true,
                Goal::OnPlane => &at == level,
                Goal::Beyond => &at > level,
            };
            if met {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// A direction whose half-space `⟨u, y⟩ ≤ level` must be confirmed against the oracle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    normal: LatticeVector,
    level: Rational,
}

#[derive(Clone, Debug)]
enum Verdict {
    Confirmed(ExposureCertificate),
    Extends(ExposureCertificate),
    Failed,
}

fn examine(
    oracle: &SeminormSpec,
    c: &Constraint,
    budget: &Budget,
    seed: u64,
) -> Result<Verdict> {
    // N is the support function of the dual ball, so N(u) is its exact extent along u.
    let extent = rat_from_int(&oracle.eval_lattice(&c.normal)?);
    let verdict = if extent == c.level {
        // u exposes a face that is usually not a vertex: start perturbed.
        search(oracle, &c.normal, &c.level, Goal::OnPlane, 1, budget, seed)?
            .map(Verdict::Confirmed)
    } else if extent > c.level {
        search(oracle, &c.normal, &c.level, Goal::Beyond, 0, budget, seed)?.map(Verdict::Extends)
    } else {
        return Err(Error::OracleViolation(format!(
            "N({}) = {extent} is below a certified vertex's value {}",
            c.normal, c.level
        )));
    };
    Ok(verdict.unwrap_or(Verdict::Failed))
}

fn run_all<T, F>(items: &[T], parallel: bool, f: F) -> Vec<Result<Verdict>>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<Verdict> + Sync + Send,
{
    if parallel {
        items.par_iter().map(&f).collect()
    } else {
        items.iter().map(&f).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub polytope: Polytope,
    /// One certificate per vertex of `polytope`, in vertex order.
    pub certificates: Vec<ExposureCertificate>,
    /// False when the budget ran out before every facet was confirmed.
    pub complete: bool,
    pub rounds: usize,
}

/// Reconstructs the dual unit ball of `oracle`.
///
/// Results depend only on `(oracle, budget, seed)`; probes within a round may
/// run concurrently and are merged in direction order.
pub fn reconstruct(oracle: &SeminormSpec, budget: &Budget, seed: u64) -> Result<Reconstruction> {
    if !oracle.is_total() {
        return Err(Error::NotTotal);
    }
    if budget.window < 2 {
        return Err(Error::Precondition("window must be at least 2".into()));
    }
    let axioms = validate_axioms(oracle, budget.axiom_samples, seed)?;
    if !axioms.passed() {
        return Err(Error::OracleViolation(axioms.failures().join("; ")));
    }
    let integrality = validate_integrality(oracle, budget.integrality_radius)?;
    if !integrality.passed() {
        return Err(Error::IntegralityViolated(integrality.failures().join("; ")));
    }

    let d = oracle.dim();
    let mut certified: BTreeMap<LatticeVector, ExposureCertificate> = BTreeMap::new();

    let mut seeds: Vec<LatticeVector> = (0..d)
        .flat_map(|j| {
            let e = LatticeVector::unit(d, j);
            [-&e, e]
        })
        .collect();
    seeds.sort();
    let zero = Rational::zero();
    let seeded = run_all(&seeds, budget.parallel, |u| {
        Ok(search(oracle, u, &zero, Goal::Any, 1, budget, seed)?
            .map(Verdict::Extends)
            .unwrap_or(Verdict::Failed))
    });
    for v in seeded {
        if let Verdict::Extends(cert) = v? {
            certified.entry(cert.vertex.clone()).or_insert(cert);
        }
    }
    if certified.is_empty() {
        // Should not happen for a total oracle; N(e_j) perturbations always land in some cone.
        return Err(Error::Precondition("no seed direction produced a certificate".into()));
    }

    let mut cache: BTreeMap<Constraint, Verdict> = BTreeMap::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let hull = Polytope::from_lattice_points(&certified.keys().cloned().collect::<Vec<_>>())?;
        let mut constraints: Vec<Constraint> = hull
            .facets()
            .iter()
            .map(|f| Constraint { normal: f.normal.clone(), level: f.offset.clone() })
            .collect();
        for (w, c) in hull.flat_equalities() {
            constraints.push(Constraint { normal: -&w, level: -c.clone() });
            constraints.push(Constraint { normal: w, level: c });
        }
        constraints.sort();

        let pending: Vec<Constraint> =
            constraints.iter().filter(|c| !cache.contains_key(c)).cloned().collect();
        let verdicts = run_all(&pending, budget.parallel, |c| examine(oracle, c, budget, seed));
        for (c, v) in pending.into_iter().zip(verdicts) {
            cache.insert(c, v?);
        }

        let mut grew = false;
        let mut all_confirmed = true;
        for c in &constraints {
            match &cache[c] {
                Verdict::Confirmed(cert) | Verdict::Extends(cert) => {
                    if matches!(cache[c], Verdict::Extends(_)) {
                        all_confirmed = false;
                    }
                    if !certified.contains_key(&cert.vertex) {
                        certified.insert(cert.vertex.clone(), cert.clone());
                        grew = true;
                    }
                }
                Verdict::Failed => all_confirmed = false,
            }
        }

        if !grew || rounds >= budget.max_rounds {
            let polytope =
                Polytope::from_lattice_points(&certified.keys().cloned().collect::<Vec<_>>())?;
            let certificates = polytope
                .integer_vertices()
                .expect("certified vertices are lattice points")
                .iter()
                .map(|v| certified[v].clone())
                .collect();
            let complete = all_confirmed && !grew;
            return Ok(Reconstruction { polytope, certificates, complete, rounds });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub point: LatticeVector,
    pub oracle_value: Integer,
    pub support_value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationReport {
    pub pass: bool,
    pub radius: u64,
    pub checked_count: u64,
    pub counterexample: Option<Counterexample>,
    /// For `vertices` oracles, whether `P` equals the hull of `±F` exactly.
    pub hull_equality: Option<bool>,
}

/// Default sweep radius `2 · d · max ‖v‖∞` over the vertices of `P`.
pub fn default_radius(p: &Polytope) -> u64 {
    let m = p
        .vertices()
        .iter()
        .flat_map(|v| v.0.iter().map(|c| c.abs().ceil().to_integer()))
        .max()
        .unwrap_or_else(Integer::zero);
    let m = u64::try_from(&m).unwrap_or(u64::MAX);
    2u64.saturating_mul(p.dim() as u64).saturating_mul(m)
}

/// Checks `max_{y ∈ P} ⟨x, y⟩ = N(x)` at every lattice point with `‖x‖∞ ≤ radius`.
///
/// Points are visited shell by shell (see [`LatticeBall`]) and the first
/// disagreement is reported. When the oracle is a `vertices` spec the result
/// is also compared with the exact hull of its symmetrised points; a mismatch
/// there yields a counterexample on a separating facet normal.
pub fn certify(oracle: &SeminormSpec, p: &Polytope, radius: u64) -> Result<CertificationReport> {
    if !oracle.is_total() {
        return Err(Error::NotTotal);
    }
    if p.dim() != oracle.dim() {
        return Err(Error::DimensionMismatch { expected: oracle.dim(), found: p.dim() });
    }
    if let Some(v) = p.vertices().iter().find(|v| !v.is_integral()) {
        return Err(Error::NonIntegerVertex(v.to_string()));
    }
    let mut checked = 0u64;
    let report = |counterexample: Option<Counterexample>, hull_equality, checked| {
        CertificationReport {
            pass: counterexample.is_none(),
            radius,
            checked_count: checked,
            counterexample,
            hull_equality,
        }
    };
    for x in LatticeBall::new(p.dim(), radius) {
        checked += 1;
        let n = oracle.eval_lattice(&x)?;
        let s = geometry::support_value(p, &x)?;
        if s != rat_from_int(&n) {
            let ce = Counterexample { point: x, oracle_value: n, support_value: s };
            return Ok(report(Some(ce), None, checked));
        }
    }
    let Some(points) = oracle.symmetrized_points() else {
        return Ok(report(None, None, checked));
    };
    let truth = Polytope::from_lattice_points(&points)?;
    match geometry::separating_direction(p, &truth)? {
        None => Ok(report(None, Some(true), checked)),
        Some(u) => {
            let ce = Counterexample {
                oracle_value: oracle.eval_lattice(&u)?,
                support_value: geometry::support_value(p, &u)?,
                point: u,
            };
            Ok(report(Some(ce), Some(false), checked))
        }
    }
}

/// One traced step of the ray decomposition `x_n = λ_n x_0 + z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub probe: RayProbe,
    /// A maximiser `y_n` of `⟨x_n, ·⟩` over the dual ball.
    pub argmax: RatVector,
    /// `N(x_n) - λ_n`.
    pub gap: Rational,
    /// `‖z_n‖² · ‖y_n - y_0‖²`, the squared Cauchy–Schwarz bound on the gap.
    pub bound_sq: Rational,
}

/// Traces the decomposition along `x_n = n·direction + offset` for `n = 0..=n_max`
/// and verifies, exactly at every step,
/// `λ_n ≤ N(x_n)`, `N(x_n) = λ_n ⟨x_0, y_n⟩ + ⟨z_n, y_n⟩` and, whenever `λ_n ≥ 0`,
/// `(N(x_n) - λ_n)² ≤ ‖z_n‖² ‖y_n - y_0‖²`.
///
/// `x_0 = direction / ⟨direction, y0⟩`, so `⟨x_0, y0⟩ = 1`; `dual_ball` supplies
/// the maximisers `y_n`.
pub fn lemma_trace(
    oracle: &SeminormSpec,
    dual_ball: &Polytope,
    direction: &LatticeVector,
    offset: &LatticeVector,
    y0: &LatticeVector,
    n_max: u64,
) -> Result<Vec<TraceStep>> {
    check_probe_args(oracle, direction, offset)?;
    if y0.dim() != oracle.dim() || dual_ball.dim() != oracle.dim() {
        return Err(Error::DimensionMismatch { expected: oracle.dim(), found: y0.dim() });
    }
    let scale = direction.dot(y0)?;
    if !scale.is_positive() {
        return Err(Error::Precondition(format!("⟨{direction}, {y0}⟩ = {scale} is not positive")));
    }
    let top = oracle.eval_lattice(direction)?;
    if top != scale {
        return Err(Error::Precondition(format!(
            "{y0} does not attain N({direction}) = {top}"
        )));
    }
    let x0 = direction.to_rational().scale(&(Rational::one() / rat_from_int(&scale)));
    let y0r = y0.to_rational();

    let mut steps = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut probe = ray_probe(oracle, direction, offset, n)?;
        decompose(&mut probe, y0);
        let lambda = probe.lambda_n.clone().expect("decomposed");
        let value = rat_from_int(&probe.value);
        let xr = probe.x_n.to_rational();
        let z = &xr - &x0.scale(&lambda);

        let sup = geometry::support(dual_ball, &xr)?;
        if sup.value != value {
            return Err(Error::Precondition(format!(
                "dual ball support {} differs from N(x_{n}) = {value}",
                sup.value
            )));
        }
        let argmax = dual_ball.vertices()[sup.argmax_vertices[0]].clone();

        let fail = |detail: String| Error::ChainViolation { n, detail };
        if lambda > value {
            return Err(fail(format!("λ = {lambda} exceeds N = {value}")));
        }
        let rebuilt = &lambda * x0.dot(&argmax)? + z.dot(&argmax)?;
        if rebuilt != value {
            return Err(fail(format!("λ⟨x0,y_n⟩ + ⟨z,y_n⟩ = {rebuilt} but N = {value}")));
        }
        let gap = &value - &lambda;
        let bound_sq = z.norm_sq() * (&argmax - &y0r).norm_sq();
        if !lambda.is_negative() && &gap * &gap > bound_sq {
            return Err(fail(format!("gap² = {} exceeds ‖z‖²‖y_n - y0‖² = {bound_sq}", &gap * &gap)));
        }
        steps.push(TraceStep { probe, argmax, gap, bound_sq });
    }
    Ok(steps)
}
