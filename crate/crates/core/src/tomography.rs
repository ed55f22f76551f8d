//! Linear-inversion state tomography in an MUB operator basis.
//!
//! `ρ = (1/d)(I + Σ_i a_i α_i)` with `a_i = Tr(ρ α_i)`. Because every
//! `α_i` is diagonal in one MUB, each `a_i` is a fixed linear combination of
//! that basis' outcome probabilities, so `d + 1` projective measurements fix
//! the state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::classes::{CoefficientVectors, OperatorSet};
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigen, ComplexMatrix, Tolerance, C64};
use crate::mub::MubFamily;

/// Hermitian, unit trace, positive semidefinite (each within tolerance).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() < 2 {
            return Err(Error::mismatch("a density matrix must be square with d >= 2"));
        }
        let eps = tol.eps();
        let h = matrix.hermiticity_deviation();
        if h > eps {
            return Err(Error::InvalidData(format!("not Hermitian (deviation {h:.3e})")));
        }
        let t = matrix.trace()?;
        if (t - C64::new(1.0, 0.0)).norm() > eps {
            return Err(Error::InvalidData(format!("trace is {t}, not 1")));
        }
        let min = hermitian_eigen(&matrix)?.values[0];
        if min < -eps {
            return Err(Error::InvalidData(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix { matrix })
    }

    /// `I / d`.
    pub fn maximally_mixed(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid(format!("dimension must be >= 2, got {d}")));
        }
        Ok(DensityMatrix {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
        })
    }

    /// `|ψ⟩⟨ψ|` for a normalized copy of `psi`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let n = crate::matcore::vector_norm(psi);
        if psi.len() < 2 || n == 0.0 || !n.is_finite() {
            return Err(Error::invalid("a pure state needs a nonzero vector of length >= 2"));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / n).collect();
        Ok(DensityMatrix {
            matrix: ComplexMatrix::outer(&v, &v),
        })
    }

    /// Skips validation; reconstructed estimates may be slightly indefinite.
    pub(crate) fn estimate(matrix: ComplexMatrix) -> Self {
        DensityMatrix { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.hs_inner(&self.matrix).expect("square").re
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionCoefficients {
    pub dim: usize,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisOutcome {
    pub label: String,
    pub p: Vec<f64>,
}

/// Outcome frequencies for each basis; `shots == None` marks exact
/// probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub dim: usize,
    pub shots: Option<u64>,
    pub bases: Vec<BasisOutcome>,
}

impl MeasurementRecord {
    pub fn validate(&self, tol: Tolerance) -> Result<()> {
        if self.shots == Some(0) {
            return Err(Error::InvalidData("shots must be positive when present".into()));
        }
        for b in &self.bases {
            if b.p.len() != self.dim {
                return Err(Error::mismatch(format!(
                    "basis {} has {} outcomes, record dimension is {}",
                    b.label,
                    b.p.len(),
                    self.dim
                )));
            }
            if b.p.iter().any(|&x| !(-tol.eps()..=1.0 + tol.eps()).contains(&x)) {
                return Err(Error::InvalidData(format!("basis {}: probability outside [0, 1]", b.label)));
            }
            let s: f64 = b.p.iter().sum();
            if (s - 1.0).abs() > tol.eps() {
                return Err(Error::InvalidData(format!("basis {}: probabilities sum to {s}", b.label)));
            }
        }
        Ok(())
    }
}

fn check_set_dim(rho: &DensityMatrix, set: &OperatorSet) -> Result<()> {
    if rho.dim() != set.dim() {
        return Err(Error::mismatch(format!(
            "state of dimension {} against operator set of dimension {}",
            rho.dim(),
            set.dim()
        )));
    }
    Ok(())
}

/// `a_i = Re Tr(ρ α_i)` in flat order.
pub fn coefficients(rho: &DensityMatrix, set: &OperatorSet) -> Result<ExpansionCoefficients> {
    check_set_dim(rho, set)?;
    let values = set
        .flat()
        .iter()
        .map(|a| a.hs_inner(rho.matrix()).map(|z| z.re))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpansionCoefficients { dim: set.dim(), values })
}

/// `(1/d)(I + Σ a_i α_i)`.
pub fn reconstruct(c: &ExpansionCoefficients, set: &OperatorSet) -> Result<DensityMatrix> {
    let d = set.dim();
    if c.dim != d || c.values.len() != set.len() {
        return Err(Error::mismatch(format!(
            "{} coefficients for dimension {} against a set of {} operators in dimension {d}",
            c.values.len(),
            c.dim,
            set.len()
        )));
    }
    let mut acc = ComplexMatrix::identity(d);
    for (a, &x) in set.flat().into_iter().zip(&c.values) {
        acc = acc.add(&a.scale_real(x))?;
    }
    Ok(DensityMatrix::estimate(acc.scale_real(1.0 / d as f64)))
}

/// `p^(b)_i = ⟨b_i|ρ|b_i⟩`.
pub fn probabilities(rho: &DensityMatrix, family: &MubFamily) -> Result<MeasurementRecord> {
    if rho.dim() != family.dim() {
        return Err(Error::mismatch(format!(
            "state of dimension {} against family of dimension {}",
            rho.dim(),
            family.dim()
        )));
    }
    let bases = family
        .bases()
        .iter()
        .map(|b| {
            let p = b
                .vectors()
                .map(|v| {
                    let rv = rho.matrix().apply(&v).expect("same dimension");
                    crate::matcore::inner(&v, &rv).re.clamp(0.0, 1.0)
                })
                .collect();
            BasisOutcome {
                label: b.label().to_string(),
                p,
            }
        })
        .collect();
    Ok(MeasurementRecord {
        dim: family.dim(),
        shots: None,
        bases,
    })
}

/// Class `b`, operator `k`: `Σ_i c[k][i] p^(b)_i`.
pub fn coefficients_from_probabilities(
    m: &MeasurementRecord,
    c: &CoefficientVectors,
) -> Result<ExpansionCoefficients> {
    if m.dim != c.dim() {
        return Err(Error::mismatch(format!(
            "record of dimension {} against coefficients of dimension {}",
            m.dim,
            c.dim()
        )));
    }
    let mut values = Vec::with_capacity(m.bases.len() * c.vectors().len());
    for b in &m.bases {
        if b.p.len() != m.dim {
            return Err(Error::mismatch(format!("basis {} has {} outcomes", b.label, b.p.len())));
        }
        for ck in c.vectors() {
            values.push(ck.iter().zip(&b.p).map(|(x, y)| x * y).sum());
        }
    }
    Ok(ExpansionCoefficients { dim: m.dim, values })
}

/// Draws `n` outcomes per basis from an exact record and returns
/// frequencies. Basis `b` uses ChaCha8 stream `b` of `seed`, so each basis
/// is independent of the others and of evaluation order.
pub fn sample_shots(m: &MeasurementRecord, n: u64, seed: u64) -> Result<MeasurementRecord> {
    if n == 0 {
        return Err(Error::invalid("shot count must be positive"));
    }
    if m.shots.is_some() {
        return Err(Error::invalid("can only sample from an exact record"));
    }
    let bases = m
        .bases
        .iter()
        .enumerate()
        .map(|(idx, b)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(idx as u64);
            let counts = multinomial(&mut rng, n, &b.p)?;
            Ok(BasisOutcome {
                label: b.label.clone(),
                p: counts.iter().map(|&k| k as f64 / n as f64).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementRecord {
        dim: m.dim,
        shots: Some(n),
        bases,
    })
}

/// Sequential conditional binomials.
fn multinomial<R: Rng>(rng: &mut R, n: u64, p: &[f64]) -> Result<Vec<u64>> {
    let mut remaining = n;
    let mut mass: f64 = p.iter().map(|x| x.max(0.0)).sum();
    let mut out = Vec::with_capacity(p.len());
    for (i, &pi) in p.iter().enumerate() {
        let pi = pi.max(0.0);
        let k = if i + 1 == p.len() {
            remaining
        } else if remaining == 0 || pi == 0.0 || mass <= 0.0 {
            0
        } else {
            let q = (pi / mass).clamp(0.0, 1.0);
            Binomial::new(remaining, q)
                .map_err(|e| Error::InvalidData(format!("bad outcome probability {q}: {e}")))?
                .sample(rng)
        };
        out.push(k);
        remaining -= k;
        mass -= pi;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fidelity {
    pub value: f64,
    /// `true` when `value` is the lower bound `(1 − T)²` rather than exact.
    pub is_bound: bool,
}

/// Purity threshold above which a reference counts as pure.
pub const PURE_THRESHOLD: f64 = 1.0 - 1e-9;

/// `⟨ψ|ρ̂|ψ⟩` when `reference = |ψ⟩⟨ψ|`; otherwise the Fuchs–van de Graaf
/// lower bound `(1 − T)²`.
pub fn fidelity(reference: &DensityMatrix, estimate: &DensityMatrix) -> Result<Fidelity> {
    if reference.purity() >= PURE_THRESHOLD {
        let v = reference.matrix().hs_inner(estimate.matrix())?.re;
        Ok(Fidelity { value: v, is_bound: false })
    } else {
        let t = trace_distance(reference, estimate)?.min(1.0);
        Ok(Fidelity {
            value: (1.0 - t).powi(2),
            is_bound: true,
        })
    }
}

/// `½ Σ |λ_i(a − b)|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    let diff = a.matrix().sub(b.matrix())?;
    let e = hermitian_eigen(&diff)?;
    Ok(0.5 * e.values.iter().map(|x| x.abs()).sum::<f64>())
}

/// Clips negative eigenvalues to zero and renormalizes the trace.
pub fn project_psd(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let d = rho.dim();
    let e = hermitian_eigen(rho.matrix())?;
    let clipped: Vec<f64> = e.values.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    if total <= 0.0 {
        return DensityMatrix::maximally_mixed(d);
    }
    let mut acc = ComplexMatrix::zeros(d, d);
    for (i, &l) in clipped.iter().enumerate() {
        if l > 0.0 {
            let v = e.vectors.column(i);
            acc = acc.add(&ComplexMatrix::outer(&v, &v).scale_real(l / total))?;
        }
    }
    Ok(DensityMatrix::estimate(acc))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructionReport {
    pub estimate: DensityMatrix,
    /// Against the reference, when one was supplied.
    pub trace_distance: Option<f64>,
    pub fidelity: Option<f64>,
    pub fidelity_is_bound: bool,
    pub shots: Option<u64>,
    pub projected: bool,
    /// Smallest eigenvalue of the raw linear-inversion estimate.
    pub min_eigenvalue: f64,
}

pub fn reconstruct_from_record(
    m: &MeasurementRecord,
    set: &OperatorSet,
    project: bool,
    reference: Option<&DensityMatrix>,
) -> Result<ReconstructionReport> {
    let c = coefficients_from_probabilities(m, set.coefficients())?;
    let raw = reconstruct(&c, set)?;
    let min_eigenvalue = hermitian_eigen(raw.matrix())?.values[0];
    let estimate = if project { project_psd(&raw)? } else { raw };
    let (trace_distance, fid) = match reference {
        Some(r) => (Some(trace_distance(r, &estimate)?), Some(fidelity(r, &estimate)?)),
        None => (None, None),
    };
    Ok(ReconstructionReport {
        estimate,
        trace_distance,
        fidelity: fid.map(|f| f.value),
        fidelity_is_bound: fid.is_some_and(|f| f.is_bound),
        shots: m.shots,
        projected: project,
        min_eigenvalue,
    })
}

/// `G G† / Tr(G G†)` with i.i.d. standard complex Gaussian `G`.
pub fn random_density(d: usize, seed: u64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::invalid(format!("dimension must be >= 2, got {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..d * d)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im)
        })
        .collect();
    let g = ComplexMatrix::from_vec(d, d, data)?;
    let gg = g.multiply(&g.adjoint())?;
    let t = gg.trace()?.re;
    let mut m = gg.scale_real(1.0 / t);
    // Exact Hermiticity despite rounding in the product.
    m = m.add(&m.adjoint())?.scale_real(0.5);
    Ok(DensityMatrix::estimate(m))
}

/// SplitMix64 finalizer; decorrelates per-trial seeds.
fn mix(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: u64,
    pub trace_distance: f64,
    pub fidelity: f64,
    pub fidelity_is_bound: bool,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub mean_trace_distance: f64,
    pub median_trace_distance: f64,
    pub max_trace_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialsReport {
    pub dim: usize,
    pub seed: u64,
    pub shots: Option<u64>,
    pub projected: bool,
    pub trials: Vec<TrialResult>,
    pub aggregate: Option<Aggregate>,
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

/// Random state → probabilities → optional sampling → reconstruction,
/// `trials` times. Trial `t` derives its state and shot seeds from
/// `(seed, t)` only.
pub fn run_trials(
    family: &MubFamily,
    set: &OperatorSet,
    seed: u64,
    shots: Option<u64>,
    trials: u64,
    project: bool,
) -> Result<TrialsReport> {
    let d = set.dim();
    let mut results = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        let state_seed = mix(seed, 2 * t);
        let rho = random_density(d, state_seed)?;
        let exact = probabilities(&rho, family)?;
        let record = match shots {
            Some(n) => sample_shots(&exact, n, mix(seed, 2 * t + 1))?,
            None => exact,
        };
        let r = reconstruct_from_record(&record, set, project, Some(&rho))?;
        results.push(TrialResult {
            trial: t,
            trace_distance: r.trace_distance.unwrap_or(f64::NAN),
            fidelity: r.fidelity.unwrap_or(f64::NAN),
            fidelity_is_bound: r.fidelity_is_bound,
            min_eigenvalue: r.min_eigenvalue,
        });
    }
    let tds: Vec<f64> = results.iter().map(|r| r.trace_distance).collect();
    let aggregate = median(&tds).map(|med| Aggregate {
        mean_trace_distance: tds.iter().sum::<f64>() / tds.len() as f64,
        median_trace_distance: med,
        max_trace_distance: tds.iter().copied().fold(0.0, f64::max),
    });
    Ok(TrialsReport {
        dim: d,
        seed,
        shots,
        projected: project,
        trials: results,
        aggregate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::build_set;
    use crate::mub::{family, paper_family};
    use crate::tables;
    use proptest::prelude::*;

    fn setup(d: usize) -> (MubFamily, OperatorSet) {
        let f = family(d, None).unwrap();
        let s = build_set(&f).unwrap();
        (f, s)
    }

    #[test]
    fn maximally_mixed_has_zero_coefficients() {
        let (_, s) = setup(3);
        let c = coefficients(&DensityMatrix::maximally_mixed(3).unwrap(), &s).unwrap();
        assert_eq!(c.values.len(), 8);
        assert!(c.values.iter().all(|x| x.abs() < 1e-15));
        let back = reconstruct(&c, &s).unwrap();
        assert!(back.matrix().approx_eq(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0), Tolerance::new(1e-15).unwrap()));
    }

    #[test]
    fn ground_state_coefficients_match_printed_operators() {
        let (_, s) = setup(3);
        let rho = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0]), Tolerance::default()).unwrap();
        let c = coefficients(&rho, &s).unwrap();
        assert!((c.values[0] - 1.5f64.sqrt()).abs() < 1e-14);
        assert!((c.values[1] - 0.5f64.sqrt()).abs() < 1e-14);
        // Independent route: the (0,0) entry of each printed operator.
        for (i, a) in tables::spin1_alphas().iter().enumerate() {
            let want = a.evaluate()[(0, 0)].re;
            assert!((c.values[i] - want).abs() < 1e-12, "a_{}", i + 1);
        }
        let back = reconstruct(&c, &s).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn fourier_state_has_no_first_class_weight() {
        let (f, s) = setup(3);
        let rho = DensityMatrix::pure(&f.bases()[1].vector(0)).unwrap();
        let c = coefficients(&rho, &s).unwrap();
        assert!(c.values[0].abs() < 1e-14 && c.values[1].abs() < 1e-14);
        assert!(c.values[2].abs() > 0.1 || c.values[3].abs() > 0.1);
        for x in &c.values[4..] {
            assert!(x.abs() < 1e-14);
        }
    }

    #[test]
    fn probability_examples() {
        let (f, _) = setup(4);
        let m = probabilities(&DensityMatrix::maximally_mixed(4).unwrap(), &f).unwrap();
        assert!(m.bases.iter().flat_map(|b| &b.p).all(|&p| (p - 0.25).abs() < 1e-15));

        let (f, _) = setup(5);
        let rho = DensityMatrix::pure(&f.bases()[0].vector(0)).unwrap();
        let m = probabilities(&rho, &f).unwrap();
        for b in &m.bases[1..] {
            assert!(b.p.iter().all(|&p| (p - 0.2).abs() < 1e-14));
        }
        m.validate(Tolerance::default()).unwrap();

        let (f, _) = setup(3);
        let m = probabilities(&random_density(3, 5).unwrap(), &f).unwrap();
        for b in &m.bases {
            assert!((b.p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn record_routes_examples() {
        let (f, s) = setup(3);
        let m = probabilities(&DensityMatrix::maximally_mixed(3).unwrap(), &f).unwrap();
        let c = coefficients_from_probabilities(&m, s.coefficients()).unwrap();
        assert!(c.values.iter().all(|x| x.abs() < 1e-15));

        let (_, s2) = setup(2);
        let rec = MeasurementRecord {
            dim: 2,
            shots: None,
            bases: vec![BasisOutcome {
                label: "B1".into(),
                p: vec![1.0, 0.0],
            }],
        };
        let c = coefficients_from_probabilities(&rec, s2.coefficients()).unwrap();
        assert_eq!(c.values.len(), 1);
        assert!((c.values[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_record_reconstructs_maximally_mixed() {
        let (f, s) = setup(5);
        let m = probabilities(&DensityMatrix::maximally_mixed(5).unwrap(), &f).unwrap();
        let r = reconstruct_from_record(&m, &s, false, None).unwrap();
        assert!(r.estimate.matrix().max_abs_diff(&ComplexMatrix::identity(5).scale_real(0.2)).unwrap() < 1e-15);
        assert!(r.trace_distance.is_none());
    }

    #[test]
    fn exact_round_trip_many_dimensions() {
        for d in [2, 3, 4, 5, 7] {
            let (f, s) = setup(d);
            for seed in 0..20 {
                let rho = random_density(d, seed).unwrap();
                let c = coefficients(&rho, &s).unwrap();
                let back = reconstruct(&c, &s).unwrap();
                assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-12);
                let m = probabilities(&rho, &f).unwrap();
                let c2 = coefficients_from_probabilities(&m, s.coefficients()).unwrap();
                for (x, y) in c.values.iter().zip(&c2.values) {
                    assert!((x - y).abs() < 1e-12);
                }
                let r = reconstruct_from_record(&m, &s, false, Some(&rho)).unwrap();
                assert!(r.trace_distance.unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn parameter_count_is_d_squared_minus_one() {
        for d in [2, 3, 4, 5, 7] {
            let (f, s) = setup(d);
            let m = probabilities(&random_density(d, 1).unwrap(), &f).unwrap();
            let free: usize = m.bases.iter().map(|b| b.p.len() - 1).sum();
            assert_eq!(free, d * d - 1);
            assert_eq!(s.len(), d * d - 1);
        }
    }

    #[test]
    fn sampling_is_deterministic_and_consistent() {
        let (f, _) = setup(3);
        let m = probabilities(&random_density(3, 9).unwrap(), &f).unwrap();
        let a = sample_shots(&m, 1000, 42).unwrap();
        let b = sample_shots(&m, 1000, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_shots(&m, 1000, 43).unwrap());
        assert_eq!(a.shots, Some(1000));
        for bo in &a.bases {
            let s: f64 = bo.p.iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
            assert!(bo.p.iter().all(|&x| (x * 1000.0 - (x * 1000.0).round()).abs() < 1e-9));
        }
        assert!(sample_shots(&a, 10, 1).is_err());
        assert!(sample_shots(&m, 0, 1).is_err());
    }

    #[test]
    fn deterministic_outcome_is_preserved() {
        let rec = MeasurementRecord {
            dim: 3,
            shots: None,
            bases: vec![BasisOutcome {
                label: "x".into(),
                p: vec![1.0, 0.0, 0.0],
            }],
        };
        for n in [1, 7, 1_000_000] {
            assert_eq!(sample_shots(&rec, n, 3).unwrap().bases[0].p, vec![1.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn large_sample_frequencies_are_close() {
        let (f, _) = setup(3);
        let m = probabilities(&random_density(3, 11).unwrap(), &f).unwrap();
        let s = sample_shots(&m, 1_000_000, 7).unwrap();
        for (a, b) in m.bases.iter().zip(&s.bases) {
            for (p, q) in a.p.iter().zip(&b.p) {
                assert!((p - q).abs() <= 5e-3);
            }
        }
    }

    #[test]
    fn sampled_reconstruction_is_in_the_expected_range() {
        let (f, s) = setup(3);
        let r = run_trials(&f, &s, 2024, Some(10_000), 100, false).unwrap();
        let mean = r.aggregate.unwrap().mean_trace_distance;
        assert!(mean > 1e-3 && mean < 1e-1, "{mean}");
    }

    #[test]
    fn projection_examples() {
        let (f, s) = setup(3);
        let rho = DensityMatrix::pure(&f.bases()[2].vector(1)).unwrap();
        let m = sample_shots(&probabilities(&rho, &f).unwrap(), 200, 5).unwrap();
        let raw = reconstruct_from_record(&m, &s, false, Some(&rho)).unwrap();
        let proj = reconstruct_from_record(&m, &s, true, Some(&rho)).unwrap();
        assert!(raw.min_eigenvalue < 0.0);
        let e = hermitian_eigen(proj.estimate.matrix()).unwrap();
        assert!(e.values[0] >= -1e-12);
        assert!((proj.estimate.matrix().trace().unwrap().re - 1.0).abs() < 1e-12);
        assert!(proj.trace_distance.unwrap() <= 2.0 * raw.trace_distance.unwrap());
        assert!(!proj.fidelity_is_bound);
    }

    #[test]
    fn fidelity_and_distance_examples() {
        let (f, _) = setup(3);
        let pure = DensityMatrix::pure(&f.bases()[1].vector(2)).unwrap();
        let fid = fidelity(&pure, &pure).unwrap();
        assert!((fid.value - 1.0).abs() < 1e-14 && !fid.is_bound);
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(trace_distance(&mixed, &mixed).unwrap() < 1e-15);
        let fid = fidelity(&mixed, &mixed).unwrap();
        assert!(fid.is_bound && (fid.value - 1.0).abs() < 1e-14);
        let a = DensityMatrix::pure(&f.bases()[0].vector(0)).unwrap();
        let b = DensityMatrix::pure(&f.bases()[0].vector(1)).unwrap();
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn density_validation() {
        let t = Tolerance::default();
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[1.0, 1.0]), t).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[1.5, -0.5]), t).is_err());
        assert!(DensityMatrix::new(tables::pauli_matrices()[2].evaluate(), t).is_err());
        assert!(random_density(1, 0).is_err());
    }

    #[test]
    fn record_json_round_trip() {
        let (f, _) = setup(2);
        let m = sample_shots(&probabilities(&random_density(2, 3).unwrap(), &f).unwrap(), 64, 1).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"shots\":64"));
        let back: MeasurementRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let exact = probabilities(&random_density(2, 3).unwrap(), &f).unwrap();
        assert!(serde_json::to_string(&exact).unwrap().contains("\"shots\":null"));
    }

    #[test]
    fn zero_trials_give_empty_report() {
        let (f, s) = setup(3);
        let r = run_trials(&f, &s, 1, None, 0, false).unwrap();
        assert!(r.trials.is_empty() && r.aggregate.is_none());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let s3 = build_set(&paper_family(3).unwrap()).unwrap();
        let rho = random_density(4, 0).unwrap();
        assert!(matches!(coefficients(&rho, &s3), Err(Error::DimensionMismatch(_))));
        let f4 = paper_family(4).unwrap();
        assert!(probabilities(&random_density(3, 0).unwrap(), &f4).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn random_density_is_a_state(seed in any::<u64>(), d in 2usize..8) {
            let rho = random_density(d, seed).unwrap();
            prop_assert!((rho.matrix().trace().unwrap().re - 1.0).abs() < 1e-14);
            prop_assert!(DensityMatrix::new(rho.matrix().clone(), Tolerance::default()).is_ok());
        }

        #[test]
        fn round_trip_d4(seed in any::<u64>()) {
            let f = paper_family(4).unwrap();
            let s = build_set(&f).unwrap();
            let rho = random_density(4, seed).unwrap();
            let m = probabilities(&rho, &f).unwrap();
            let r = reconstruct_from_record(&m, &s, false, Some(&rho)).unwrap();
            prop_assert!(r.trace_distance.unwrap() < 1e-10);
        }
    }
}
