//! Mutually unbiased bases.
//!
//! Two orthonormal bases `{a_i}`, `{b_j}` of `C^d` are mutually unbiased when
//! `|⟨a_i|b_j⟩|² = 1/d` for every pair. A complete family has `d + 1` members.
//!
//! Families come from two sources:
//!
//! - [`paper_family`]: literal tables for `d ∈ {2, 3, 4, 5}` (see [`crate::tables`]).
//! - [`odd_prime_family`]: the quadratic-phase construction for odd primes,
//!   vector `j` of basis `b` having components `ω^(b k² + j k) / √d`.
//!
//! Stored phases are kept as produced. Comparisons across constructions
//! always go through overlap moduli, never raw entries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{inner, root_of_unity, ComplexMatrix, Tolerance, C64};
use crate::tables;

pub const CONVENTION: &str = "m-descending";

/// An orthonormal basis, stored as the columns of a `d × d` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    label: String,
    matrix: ComplexMatrix,
}

impl Basis {
    /// Wraps `matrix` (columns = basis vectors). Orthonormality is checked to
    /// `tol`.
    pub fn new(label: impl Into<String>, matrix: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let label = label.into();
        if !matrix.is_square() || matrix.rows() < 2 {
            return Err(Error::mismatch(format!(
                "basis {label}: expected a square matrix of size >= 2, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.unitarity_deviation();
        if dev > tol.eps() {
            return Err(Error::InvalidData(format!(
                "basis {label} is not orthonormal (deviation {dev:.3e})"
            )));
        }
        Ok(Basis { label, matrix })
    }

    pub(crate) fn new_unchecked(label: impl Into<String>, matrix: ComplexMatrix) -> Self {
        Basis {
            label: label.into(),
            matrix,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.matrix.column(i)
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vec<C64>> + '_ {
        (0..self.dim()).map(|i| self.vector(i))
    }

    /// `|b_i⟩⟨b_i|`.
    pub fn projector(&self, i: usize) -> ComplexMatrix {
        let v = self.vector(i);
        ComplexMatrix::outer(&v, &v)
    }

    pub fn orthonormality_deviation(&self) -> f64 {
        self.matrix.unitarity_deviation()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// A unitary carrying one basis onto another.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisTransform {
    pub unitary: ComplexMatrix,
    pub source_label: String,
    pub target_label: String,
}

impl BasisTransform {
    pub fn dim(&self) -> usize {
        self.unitary.rows()
    }

    /// `u · b`, column by column.
    pub fn apply(&self, basis: &Basis) -> Result<Basis> {
        if basis.dim() != self.dim() {
            return Err(Error::mismatch(format!(
                "transform of size {} applied to basis of size {}",
                self.dim(),
                basis.dim()
            )));
        }
        Ok(Basis::new_unchecked(
            self.target_label.clone(),
            self.unitary.multiply(basis.matrix())?,
        ))
    }
}

/// Where a family came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilySource {
    /// Built-in literal tables ([`paper_family`]).
    Paper,
    /// The odd-prime quadratic-phase construction.
    Generated,
}

impl fmt::Display for FamilySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilySource::Paper => "paper",
            FamilySource::Generated => "generated",
        })
    }
}

/// `d + 1` bases; `bases[0]` is the canonical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MubFamily {
    dim: usize,
    bases: Vec<Basis>,
    source: FamilySource,
}

impl MubFamily {
    /// Assembles a family without certifying it; run [`check_family`] to do so.
    pub fn from_bases(bases: Vec<Basis>, source: FamilySource) -> Result<Self> {
        let dim = bases.first().map(Basis::dim).ok_or_else(|| Error::invalid("empty family"))?;
        if let Some(b) = bases.iter().find(|b| b.dim() != dim) {
            return Err(Error::mismatch(format!(
                "basis {} has dimension {}, family has {dim}",
                b.label(),
                b.dim()
            )));
        }
        Ok(MubFamily { dim, bases, source })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn source(&self) -> FamilySource {
        self.source
    }

    pub fn labels(&self) -> Vec<String> {
        self.bases.iter().map(|b| b.label().to_string()).collect()
    }

    pub fn basis(&self, label: &str) -> Option<&Basis> {
        self.bases.iter().find(|b| b.label() == label)
    }
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `Some((p, k))` when `n = p^k` for a prime `p`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|&p| n.is_multiple_of(p))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// The structured refusal for dimensions without a shipped complete family.
pub fn unsupported_dimension(d: usize, source: Option<FamilySource>) -> Error {
    let reason = match prime_power(d) {
        None if d == 6 => "no complete MUB family known: d = 6 is not a prime power, and Zauner's \
                           conjecture holds that at most three mutually unbiased bases exist there, so \
                           d + 1 = 7 commuting classes cannot be built"
            .to_string(),
        None => format!(
            "no complete MUB family known: d = {d} is not a prime power (complete families are \
             only known to exist for prime-power dimensions)"
        ),
        Some((p, k)) => {
            let avail = match source {
                Some(FamilySource::Paper) => "tables exist for d in {2, 3, 4, 5}".to_string(),
                Some(FamilySource::Generated) => "the generated construction covers odd primes".to_string(),
                None => "tables cover d in {2, 3, 4, 5} and the generated construction covers odd primes"
                    .to_string(),
            };
            format!("d = {p}^{k} is a prime power, but no construction for it is shipped ({avail})")
        }
    };
    Error::UnsupportedDimension { dim: d, reason }
}

fn require_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::invalid(format!("dimension must be >= 2, got {d}")));
    }
    Ok(())
}

/// Standard basis; index 0 is `m = +j`.
pub fn canonical_basis(d: usize) -> Result<Basis> {
    require_dim(d)?;
    Ok(Basis::new_unchecked("canonical", ComplexMatrix::identity(d)))
}

/// Vector `j` has `k`-th component `ω^{jk} / √d`.
pub fn fourier_basis(d: usize) -> Result<Basis> {
    require_dim(d)?;
    let s = 1.0 / (d as f64).sqrt();
    let mut m = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            m[(k, j)] = root_of_unity(d, (j * k) as i64) * s;
        }
    }
    Ok(Basis::new_unchecked("fourier", m))
}

/// `exp(−i Jz² t)`: diagonal with entries `e^{−i m² t}`, `m = j, j−1, …, −j`.
pub fn one_axis_twist(d: usize, t: f64) -> Result<BasisTransform> {
    require_dim(d)?;
    let j = (d as f64 - 1.0) / 2.0;
    let mut u = ComplexMatrix::zeros(d, d);
    for r in 0..d {
        let m = j - r as f64;
        let phase = -m * m * t;
        u[(r, r)] = C64::new(phase.cos(), phase.sin());
    }
    Ok(BasisTransform {
        unitary: u,
        source_label: "any".into(),
        target_label: format!("twist(t={t})"),
    })
}

/// Quadratic-phase family for an odd prime `d`.
///
/// Basis `b + 1` (for `b = 0..d`) has vector `j` with `k`-th component
/// `ω^(b k² + j k) / √d`; exponents are reduced mod `d` before evaluation.
pub fn odd_prime_family(d: usize) -> Result<MubFamily> {
    require_dim(d)?;
    if d == 2 || !is_prime(d) {
        return Err(if prime_power(d).is_none() {
            unsupported_dimension(d, Some(FamilySource::Generated))
        } else {
            Error::UnsupportedDimension {
                dim: d,
                reason: format!("the generated construction requires an odd prime, got {d}"),
            }
        });
    }
    let s = 1.0 / (d as f64).sqrt();
    let mut bases = vec![canonical_basis(d)?.with_label("M0")];
    for b in 0..d {
        let mut m = ComplexMatrix::zeros(d, d);
        for j in 0..d {
            for k in 0..d {
                let e = (b * k % d * k + j * k) % d;
                m[(k, j)] = root_of_unity(d, e as i64) * s;
            }
        }
        bases.push(Basis::new_unchecked(format!("M{}", b + 1), m));
    }
    MubFamily::from_bases(bases, FamilySource::Generated)
}

/// The literal tables for `d ∈ {2, 3, 4, 5}`.
pub fn paper_family(d: usize) -> Result<MubFamily> {
    require_dim(d)?;
    let tables = match d {
        2 => tables::spin_half_bases(),
        3 => tables::spin1_bases(),
        4 => tables::spin3half_bases(),
        5 => tables::spin2_bases(),
        _ => return Err(unsupported_dimension(d, Some(FamilySource::Paper))),
    };
    let bases = tables
        .iter()
        .map(|t| Basis::new(t.name, t.evaluate(), Tolerance::new(1e-13).expect("valid")))
        .collect::<Result<Vec<_>>>()?;
    MubFamily::from_bases(bases, FamilySource::Paper)
}

/// Tables where available, otherwise the odd-prime construction.
pub fn family(d: usize, source: Option<FamilySource>) -> Result<MubFamily> {
    require_dim(d)?;
    match source {
        Some(FamilySource::Paper) => paper_family(d),
        Some(FamilySource::Generated) => odd_prime_family(d),
        None if (2..=5).contains(&d) => paper_family(d),
        None if is_prime(d) => odd_prime_family(d),
        None => Err(unsupported_dimension(d, None)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnbiasedReport {
    pub a: String,
    pub b: String,
    /// `max_{i,j} | |⟨a_i|b_j⟩|² − 1/d |`.
    pub max_deviation: f64,
    pub pass: bool,
}

pub fn check_unbiased(a: &Basis, b: &Basis, tol: Tolerance) -> Result<UnbiasedReport> {
    if a.dim() != b.dim() {
        return Err(Error::mismatch(format!(
            "bases {} and {} have dimensions {} and {}",
            a.label(),
            b.label(),
            a.dim(),
            b.dim()
        )));
    }
    let target = 1.0 / a.dim() as f64;
    let bv: Vec<_> = b.vectors().collect();
    let mut worst: f64 = 0.0;
    for av in a.vectors() {
        for w in &bv {
            worst = worst.max((inner(&av, w).norm_sqr() - target).abs());
        }
    }
    Ok(UnbiasedReport {
        a: a.label().to_string(),
        b: b.label().to_string(),
        max_deviation: worst,
        pass: worst <= tol.eps(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub dim: usize,
    pub members: usize,
    pub count_ok: bool,
    pub worst_orthonormality: f64,
    pub worst_unbiasedness: f64,
    pub pairs: Vec<UnbiasedReport>,
    pub pass: bool,
}

/// Member count, per-basis orthonormality, and every pairwise overlap.
pub fn check_family(f: &MubFamily, tol: Tolerance) -> FamilyReport {
    let count_ok = f.bases.len() == f.dim + 1;
    let worst_orthonormality = f
        .bases
        .iter()
        .map(Basis::orthonormality_deviation)
        .fold(0.0, f64::max);
    let mut pairs = Vec::new();
    for (i, a) in f.bases.iter().enumerate() {
        for b in &f.bases[i + 1..] {
            pairs.push(check_unbiased(a, b, tol).expect("family members share a dimension"));
        }
    }
    let worst_unbiasedness = pairs.iter().map(|p| p.max_deviation).fold(0.0, f64::max);
    FamilyReport {
        dim: f.dim,
        members: f.bases.len(),
        count_ok,
        worst_orthonormality,
        worst_unbiasedness,
        pass: count_ok && worst_orthonormality <= tol.eps() && pairs.iter().all(|p| p.pass),
        pairs,
    }
}

/// `u = Σ_i |b_i⟩⟨a_i|`, so that `u a_i = b_i` exactly.
pub fn unitary_between(a: &Basis, b: &Basis) -> Result<BasisTransform> {
    if a.dim() != b.dim() {
        return Err(Error::mismatch(format!(
            "bases {} and {} have dimensions {} and {}",
            a.label(),
            b.label(),
            a.dim(),
            b.dim()
        )));
    }
    Ok(BasisTransform {
        unitary: b.matrix().multiply(&a.matrix().adjoint())?,
        source_label: a.label().to_string(),
        target_label: b.label().to_string(),
    })
}

/// Worst `1 − |⟨x_i|y_i⟩|` over columns; zero iff the bases agree column by
/// column up to per-column global phases.
pub fn phase_free_column_deviation(x: &Basis, y: &Basis) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::mismatch("bases of different dimensions"));
    }
    Ok(x.vectors()
        .zip(y.vectors())
        .map(|(a, b)| (1.0 - inner(&a, &b).norm()).abs())
        .fold(0.0, f64::max))
}

/// Worst deviation after matching each column of `x` to its best partner in
/// `y`; zero iff the bases are equal as sets of rays.
pub fn phase_free_set_deviation(x: &Basis, y: &Basis) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::mismatch("bases of different dimensions"));
    }
    let yv: Vec<_> = y.vectors().collect();
    Ok(x.vectors()
        .map(|a| {
            yv.iter()
                .map(|b| (1.0 - inner(&a, b).norm()).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max))
}
