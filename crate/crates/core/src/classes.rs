//! Maximally commuting operator classes.
//!
//! Each basis `{b_i}` of a complete MUB family yields `d − 1` commuting,
//! Hermitian, traceless operators `α^k = Σ_i c[k][i] |b_i⟩⟨b_i|`, where the
//! coefficient vectors `c[k]` are the diagonals of `τ^k_0`. With `d + 1`
//! bases this gives `d² − 1` operators normalized as `Tr(α_i† α_j) = d δ_ij`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, Tolerance, C64};
use crate::mub::{check_family, unsupported_dimension, Basis, BasisTransform, MubFamily};
use crate::tensors::{diagonal_tensor, SpinLabel};

/// Real coefficient vectors; vector `k − 1` holds the diagonal of `τ^k_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVectors {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl CoefficientVectors {
    /// The `τ^k_0` diagonals for `k = 1..d−1`; `2 ≤ d ≤ 26`.
    pub fn for_dim(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid(format!("dimension must be >= 2, got {d}")));
        }
        let spin = SpinLabel::from_dim(d).map_err(|_| Error::UnsupportedDimension {
            dim: d,
            reason: format!("coefficient vectors are tabulated for 2 <= d <= 26, got {d}"),
        })?;
        let vectors = (1..d as u32)
            .map(|k| diagonal_tensor(spin, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoefficientVectors { dim: d, vectors })
    }

    /// Accepts caller-supplied vectors if they satisfy the defining
    /// constraints: `d − 1` vectors of length `d`, each summing to zero,
    /// pairwise orthogonal, with squared norm `d`.
    pub fn from_vectors(vectors: Vec<Vec<f64>>, tol: Tolerance) -> Result<Self> {
        let d = vectors.len() + 1;
        if d < 2 {
            return Err(Error::invalid("at least one coefficient vector is required"));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::mismatch(format!(
                "{} vectors need length {d}, found one of length {}",
                d - 1,
                v.len()
            )));
        }
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        for (k, v) in vectors.iter().enumerate() {
            let sum: f64 = v.iter().sum();
            if sum.abs() > tol.eps() {
                return Err(Error::InvalidData(format!("vector {k} sums to {sum:e}, not 0")));
            }
            let n = dot(v, v);
            if (n - d as f64).abs() > tol.eps() {
                return Err(Error::InvalidData(format!("vector {k} has squared norm {n}, not {d}")));
            }
            for (l, w) in vectors.iter().enumerate().skip(k + 1) {
                let x = dot(v, w);
                if x.abs() > tol.eps() {
                    return Err(Error::InvalidData(format!("vectors {k} and {l} overlap by {x:e}")));
                }
            }
        }
        Ok(CoefficientVectors { dim: d, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutingClass {
    basis: Basis,
    operators: Vec<ComplexMatrix>,
    projectors: Vec<ComplexMatrix>,
}

impl CommutingClass {
    /// Wraps operators read back from storage. Only shapes are checked here;
    /// [`verify_set`] does the rest.
    pub fn from_parts(basis: Basis, operators: Vec<ComplexMatrix>) -> Result<Self> {
        let d = basis.dim();
        if let Some(op) = operators.iter().find(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::mismatch(format!(
                "class {}: operator of shape {}x{} in dimension {d}",
                basis.label(),
                op.rows(),
                op.cols()
            )));
        }
        let projectors = (0..d).map(|i| basis.projector(i)).collect();
        Ok(CommutingClass {
            basis,
            operators,
            projectors,
        })
    }

    pub fn basis_label(&self) -> &str {
        self.basis.label()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }
}

/// `(d + 1)` classes in family order.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSet {
    dim: usize,
    coefficients: CoefficientVectors,
    classes: Vec<CommutingClass>,
}

impl OperatorSet {
    /// Assembles a set from classes loaded elsewhere; coefficients default
    /// to the `τ^k_0` diagonals.
    pub fn from_parts(classes: Vec<CommutingClass>) -> Result<Self> {
        let dim = classes
            .first()
            .map(|c| c.basis.dim())
            .ok_or_else(|| Error::InvalidData("operator set has no classes".into()))?;
        if let Some(c) = classes.iter().find(|c| c.basis.dim() != dim) {
            return Err(Error::mismatch(format!(
                "class {} has dimension {}, set has {dim}",
                c.basis_label(),
                c.basis.dim()
            )));
        }
        Ok(OperatorSet {
            dim,
            coefficients: CoefficientVectors::for_dim(dim)?,
            classes,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &CoefficientVectors {
        &self.coefficients
    }

    pub fn classes(&self) -> &[CommutingClass] {
        &self.classes
    }

    pub fn classes_mut(&mut self) -> &mut [CommutingClass] {
        &mut self.classes
    }

    /// Class-major, coefficient-index-minor: `α_1 … α_{d²−1}`.
    pub fn flat(&self) -> Vec<&ComplexMatrix> {
        self.classes.iter().flat_map(|c| c.operators.iter()).collect()
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(|c| c.operators.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl CommutingClass {
    /// Mutable access for fault injection in tests and tools.
    pub fn operators_mut(&mut self) -> &mut Vec<ComplexMatrix> {
        &mut self.operators
    }
}

pub fn build_class(basis: &Basis, coeffs: &CoefficientVectors) -> Result<CommutingClass> {
    let d = basis.dim();
    if coeffs.dim() != d {
        return Err(Error::mismatch(format!(
            "basis {} has dimension {d}, coefficients have {}",
            basis.label(),
            coeffs.dim()
        )));
    }
    let projectors: Vec<_> = (0..d).map(|i| basis.projector(i)).collect();
    let operators = coeffs
        .vectors()
        .iter()
        .map(|c| {
            let mut acc = ComplexMatrix::zeros(d, d);
            for (p, &ci) in projectors.iter().zip(c) {
                if ci != 0.0 {
                    acc = acc.add(&p.scale_real(ci)).expect("same shape");
                }
            }
            acc
        })
        .collect();
    Ok(CommutingClass {
        basis: basis.clone(),
        operators,
        projectors,
    })
}

/// One class per basis of a certified family.
pub fn build_set(family: &MubFamily) -> Result<OperatorSet> {
    let d = family.dim();
    if d == 6 {
        return Err(unsupported_dimension(d, None));
    }
    let report = check_family(family, Tolerance::DEFAULT);
    if !report.pass {
        return Err(Error::InvalidData(format!(
            "family fails certification (members {}, worst orthonormality {:.3e}, worst unbiasedness {:.3e})",
            report.members, report.worst_orthonormality, report.worst_unbiasedness
        )));
    }
    let coefficients = CoefficientVectors::for_dim(d)?;
    let classes = family
        .bases()
        .iter()
        .map(|b| build_class(b, &coefficients))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorSet {
        dim: d,
        coefficients,
        classes,
    })
}

/// `A ↦ u A u†` on every operator and projector.
pub fn conjugate_class(class: &CommutingClass, u: &BasisTransform) -> Result<CommutingClass> {
    let basis = u.apply(&class.basis)?;
    let conj = |ms: &[ComplexMatrix]| -> Result<Vec<ComplexMatrix>> {
        ms.iter().map(|m| m.conjugate_by(&u.unitary)).collect()
    };
    Ok(CommutingClass {
        basis,
        operators: conj(&class.operators)?,
        projectors: conj(&class.projectors)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub worst_deviation: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(check: &str, worst_deviation: f64, pass: bool) -> Self {
        CheckResult {
            check: check.to_string(),
            worst_deviation,
            pass,
        }
    }

    fn within(check: &str, worst_deviation: f64, tol: f64) -> Self {
        Self::new(check, worst_deviation, worst_deviation <= tol)
    }
}

/// A commutator smaller than this between two classes does not count as a
/// non-commuting witness.
pub const WITNESS_FLOOR: f64 = 1e-6;

/// Minimum acceptable `det(G)` for the normalized Gram matrix of
/// `{I, α_1, …}`; an orthonormal set gives exactly 1.
pub const GRAM_DETERMINANT_FLOOR: f64 = 0.5;

pub fn all_pass(report: &[CheckResult]) -> bool {
    report.iter().all(|c| c.pass)
}

/// Runs every structural check; failures are reported, never raised.
pub fn verify_set(set: &OperatorSet, tol: Tolerance) -> Vec<CheckResult> {
    let d = set.dim;
    let eps = tol.eps();
    let ops = set.flat();
    let n = ops.len();
    let mut out = Vec::new();

    let expected = d * d - 1;
    let shape_ok = set.classes.len() == d + 1 && set.classes.iter().all(|c| c.operators.len() == d - 1);
    out.push(CheckResult::new(
        "count",
        (n as f64 - expected as f64).abs(),
        n == expected && shape_ok,
    ));

    let herm = ops.iter().map(|m| m.hermiticity_deviation()).fold(0.0, f64::max);
    out.push(CheckResult::within("hermitian", herm, eps));

    let trace = ops
        .iter()
        .map(|m| m.trace().map(|t| t.norm()).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    out.push(CheckResult::within("traceless", trace, eps));

    // Gram matrix of {I, α_1, …, α_n} under Tr(A† B).
    let identity = ComplexMatrix::identity(d);
    let members: Vec<&ComplexMatrix> = std::iter::once(&identity).chain(ops.iter().copied()).collect();
    let mut gram = ComplexMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in i..=n {
            let g = members[i].hs_inner(members[j]).expect("same shape");
            gram[(i, j)] = g;
            gram[(j, i)] = g.conj();
        }
    }
    // Includes orthogonality to the identity.
    let mut hs: f64 = 0.0;
    for i in 0..=n {
        for j in 0..=n {
            let target = if i == j { d as f64 } else { 0.0 };
            hs = hs.max((gram[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    out.push(CheckResult::within("hs_orthogonality", hs, eps));

    let mut within: f64 = 0.0;
    for c in &set.classes {
        for (i, a) in c.operators.iter().enumerate() {
            for b in &c.operators[i + 1..] {
                within = within.max(a.commutator(b).expect("same shape").max_abs());
            }
        }
    }
    out.push(CheckResult::within("within_class_commutation", within, eps));

    let mut eigen: f64 = 0.0;
    let coeffs = set.coefficients.vectors();
    for c in &set.classes {
        if c.operators.len() != coeffs.len() {
            eigen = f64::INFINITY;
            continue;
        }
        for (op, ck) in c.operators.iter().zip(coeffs) {
            for (i, &ci) in ck.iter().enumerate() {
                let v = c.basis.vector(i);
                let av = op.apply(&v).expect("same shape");
                let r = av
                    .iter()
                    .zip(&v)
                    .map(|(x, y)| (x - y * ci).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                eigen = eigen.max(r);
            }
        }
    }
    out.push(CheckResult::within("eigen_relation", eigen, eps));

    // Per class pair, the first commutator above the floor is the witness;
    // the weakest pair decides.
    let mut weakest = f64::INFINITY;
    for (i, a) in set.classes.iter().enumerate() {
        for b in &set.classes[i + 1..] {
            let mut best: f64 = 0.0;
            'search: for x in &a.operators {
                for y in &b.operators {
                    best = best.max(x.commutator(y).expect("same shape").max_abs());
                    if best >= WITNESS_FLOOR {
                        break 'search;
                    }
                }
            }
            weakest = weakest.min(best);
        }
    }
    if set.classes.len() < 2 {
        weakest = 0.0;
    }
    out.push(CheckResult::new(
        "cross_class_noncommutation",
        weakest,
        weakest >= WITNESS_FLOOR,
    ));

    let normalized = gram.scale_real(1.0 / d as f64);
    let det = normalized.determinant().map(|z| z.re).unwrap_or(0.0);
    out.push(CheckResult::new(
        "completeness",
        (1.0 - det).abs(),
        n == expected && det >= GRAM_DETERMINANT_FLOOR,
    ));

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::root_of_unity;
    use crate::mub::{family, odd_prime_family, paper_family, unitary_between, FamilySource};
    use crate::tables;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::new(1e-12).unwrap()
    }

    fn close(a: &[f64], b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= eps)
    }

    #[test]
    fn coefficient_vector_examples() {
        let h = 0.5f64.sqrt();
        let c3 = CoefficientVectors::for_dim(3).unwrap();
        let r = 1.5f64.sqrt();
        assert!(close(&c3.vectors()[0], &[r, 0.0, -r], 1e-14));
        assert!(close(&c3.vectors()[1], &[h, -2.0 * h, h], 1e-14));

        let c4 = CoefficientVectors::for_dim(4).unwrap();
        let s = 1.0 / 5f64.sqrt();
        assert!(close(&c4.vectors()[0], &[3.0 * s, s, -s, -3.0 * s], 1e-14));
        assert!(close(&c4.vectors()[1], &[1.0, -1.0, -1.0, 1.0], 1e-14));
        assert!(close(&c4.vectors()[2], &[s, -3.0 * s, 3.0 * s, -s], 1e-14));

        let c2 = CoefficientVectors::for_dim(2).unwrap();
        assert!(close(&c2.vectors()[0], &[1.0, -1.0], 1e-15));
    }

    #[test]
    fn coefficient_vectors_satisfy_constraints() {
        for d in 2..=26 {
            let c = CoefficientVectors::for_dim(d).unwrap();
            assert_eq!(c.vectors().len(), d - 1);
            let tol = Tolerance::new(1e-9).unwrap();
            CoefficientVectors::from_vectors(c.vectors().to_vec(), tol).unwrap_or_else(|e| panic!("d={d}: {e}"));
        }
        assert!(matches!(CoefficientVectors::for_dim(27), Err(Error::UnsupportedDimension { .. })));
        assert!(CoefficientVectors::for_dim(1).is_err());
    }

    #[test]
    fn from_vectors_rejects_bad_input() {
        let t = Tolerance::default();
        assert!(CoefficientVectors::from_vectors(vec![vec![1.0, 1.0]], t).is_err());
        assert!(CoefficientVectors::from_vectors(vec![vec![1.0, -1.0, 0.0]], t).is_err());
        let s = 2f64.sqrt();
        assert!(CoefficientVectors::from_vectors(vec![vec![s, -s]], t).is_err());
        let h = 1.5f64.sqrt();
        assert!(CoefficientVectors::from_vectors(vec![vec![h, 0.0, -h], vec![h, 0.0, -h]], t).is_err());
    }

    #[test]
    fn spin1_class_examples() {
        let f = paper_family(3).unwrap();
        let c = CoefficientVectors::for_dim(3).unwrap();
        let class1 = build_class(&f.bases()[0], &c).unwrap();
        let r = 1.5f64.sqrt();
        let h = 0.5f64.sqrt();
        assert!(class1.operators()[0]
            .approx_eq(&ComplexMatrix::from_real_diagonal(&[r, 0.0, -r]), tol()));
        assert!(class1.operators()[1]
            .approx_eq(&ComplexMatrix::from_real_diagonal(&[h, -2.0 * h, h]), tol()));

        let class2 = build_class(&f.bases()[1], &c).unwrap();
        let w = root_of_unity(3, 1);
        let want = -C64::new(0.0, 1.0) * w * h;
        assert!((class2.operators()[0][(0, 1)] - want).norm() < 1e-12);
    }

    #[test]
    fn spin_half_class_is_sigma_z() {
        let f = paper_family(2).unwrap();
        let c = CoefficientVectors::for_dim(2).unwrap();
        let class = build_class(&f.bases()[0], &c).unwrap();
        let sz = tables::pauli_matrices()[0].evaluate();
        assert!(class.operators()[0].approx_eq(&sz, tol()));
    }

    #[test]
    fn build_class_rejects_mismatch() {
        let f = paper_family(3).unwrap();
        let c = CoefficientVectors::for_dim(4).unwrap();
        assert!(matches!(build_class(&f.bases()[0], &c), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn spin1_set_matches_printed_alphas() {
        let set = build_set(&paper_family(3).unwrap()).unwrap();
        let printed: Vec<_> = tables::spin1_alphas().iter().map(|t| t.evaluate()).collect();
        let flat = set.flat();
        assert_eq!(flat.len(), 8);
        for (i, (a, b)) in flat.iter().zip(&printed).enumerate() {
            let dev = a.max_abs_diff(b).unwrap();
            assert!(dev <= 1e-12, "alpha_{}: {dev:e}", i + 1);
        }
    }

    #[test]
    fn spin_half_set_is_the_pauli_matrices() {
        let set = build_set(&paper_family(2).unwrap()).unwrap();
        let pauli: Vec<_> = tables::pauli_matrices().iter().map(|t| t.evaluate()).collect();
        for p in &pauli {
            assert!(set.flat().iter().any(|a| a.approx_eq(p, tol())));
        }
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn operator_counts() {
        for (d, n) in [(2, 3), (3, 8), (4, 15), (5, 24)] {
            assert_eq!(build_set(&paper_family(d).unwrap()).unwrap().len(), n);
        }
        assert_eq!(build_set(&odd_prime_family(7).unwrap()).unwrap().len(), 48);
    }

    #[test]
    fn build_set_rejects_uncertified_families() {
        let f = paper_family(3).unwrap();
        let mut bases = f.bases().to_vec();
        bases[2] = bases[1].clone();
        let bad = MubFamily::from_bases(bases, FamilySource::Paper).unwrap();
        assert!(matches!(build_set(&bad), Err(Error::InvalidData(_))));
    }

    #[test]
    fn conjugation_examples() {
        let f = paper_family(3).unwrap();
        let c = CoefficientVectors::for_dim(3).unwrap();
        let class1 = build_class(&f.bases()[0], &c).unwrap();
        let u = BasisTransform {
            unitary: tables::spin1_fourier().evaluate(),
            source_label: "B'1".into(),
            target_label: "B'2".into(),
        };
        let moved = conjugate_class(&class1, &u).unwrap();
        let direct = build_class(&f.bases()[1], &c).unwrap();
        for (a, b) in moved.operators().iter().zip(direct.operators()) {
            assert!(a.max_abs_diff(b).unwrap() < 1e-12);
        }

        let id = unitary_between(&f.bases()[2], &f.bases()[2]).unwrap();
        let same = conjugate_class(&direct, &id).unwrap();
        for (a, b) in same.operators().iter().zip(direct.operators()) {
            assert!(a.max_abs_diff(b).unwrap() < 1e-14);
        }

        let f4 = paper_family(4).unwrap();
        let c4 = CoefficientVectors::for_dim(4).unwrap();
        let u = unitary_between(&f4.bases()[0], &f4.bases()[2]).unwrap();
        let moved = conjugate_class(&build_class(&f4.bases()[0], &c4).unwrap(), &u).unwrap();
        let direct = build_class(&f4.bases()[2], &c4).unwrap();
        for (a, b) in moved.operators().iter().zip(direct.operators()) {
            assert!(a.max_abs_diff(b).unwrap() < 1e-12);
        }
    }

    #[test]
    fn conjugation_route_agrees_for_every_pair() {
        for d in [2, 3, 4, 5, 7] {
            let f = family(d, None).unwrap();
            let c = CoefficientVectors::for_dim(d).unwrap();
            let base = build_class(&f.bases()[0], &c).unwrap();
            for b in &f.bases()[1..] {
                let u = unitary_between(&f.bases()[0], b).unwrap();
                let moved = conjugate_class(&base, &u).unwrap();
                let direct = build_class(b, &c).unwrap();
                for (x, y) in moved.operators().iter().zip(direct.operators()) {
                    assert!(x.max_abs_diff(y).unwrap() < 1e-12, "d={d} {}", b.label());
                }
            }
        }
    }

    #[test]
    fn full_verification_passes() {
        for d in [2, 3, 4, 5, 7] {
            let set = build_set(&family(d, None).unwrap()).unwrap();
            let report = verify_set(&set, tol());
            assert!(all_pass(&report), "d={d}: {report:#?}");
            assert_eq!(report.len(), 8);
        }
    }

    #[test]
    fn identity_substitution_is_caught() {
        let mut set = build_set(&paper_family(3).unwrap()).unwrap();
        set.classes_mut()[1].operators_mut()[0] = ComplexMatrix::identity(3);
        let report = verify_set(&set, tol());
        let failed: Vec<_> = report.iter().filter(|c| !c.pass).map(|c| c.check.as_str()).collect();
        assert!(failed.contains(&"traceless"));
        assert!(failed.contains(&"hs_orthogonality"));
        assert!(failed.contains(&"completeness"));
    }

    #[test]
    fn commuting_classes_have_no_witness() {
        let f = paper_family(3).unwrap();
        let c = CoefficientVectors::for_dim(3).unwrap();
        let class = build_class(&f.bases()[0], &c).unwrap();
        let set = OperatorSet::from_parts(vec![class.clone(), class]).unwrap();
        let report = verify_set(&set, tol());
        let w = report.iter().find(|c| c.check == "cross_class_noncommutation").unwrap();
        assert!(!w.pass && w.worst_deviation < 1e-12);
    }

    #[test]
    fn d6_is_refused() {
        assert!(matches!(
            family(6, None).and_then(|f| build_set(&f)),
            Err(Error::UnsupportedDimension { dim: 6, .. })
        ));
    }

    fn hermitian_strategy(d: usize) -> impl Strategy<Value = ComplexMatrix> {
        proptest::collection::vec(-1.0f64..1.0, 2 * d * d).prop_map(move |v| {
            let mut m = ComplexMatrix::zeros(d, d);
            for r in 0..d {
                for c in 0..d {
                    let k = 2 * (r * d + c);
                    m[(r, c)] = C64::new(v[k], v[k + 1]);
                }
            }
            m.add(&m.adjoint()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn expansion_is_complete_d3(h in hermitian_strategy(3)) {
            let set = build_set(&paper_family(3).unwrap()).unwrap();
            let d = 3.0;
            let mut acc = ComplexMatrix::identity(3).scale(h.trace().unwrap() / d);
            for a in set.flat() {
                let coeff = a.hs_inner(&h).unwrap() / d;
                acc = acc.add(&a.scale(coeff)).unwrap();
            }
            prop_assert!(acc.max_abs_diff(&h).unwrap() < 1e-10);
        }

        #[test]
        fn expansion_is_complete_d5(h in hermitian_strategy(5)) {
            let set = build_set(&paper_family(5).unwrap()).unwrap();
            let d = 5.0;
            let mut acc = ComplexMatrix::identity(5).scale(h.trace().unwrap() / d);
            for a in set.flat() {
                let coeff = a.hs_inner(&h).unwrap() / d;
                acc = acc.add(&a.scale(coeff)).unwrap();
            }
            prop_assert!(acc.max_abs_diff(&h).unwrap() < 1e-10);
        }
    }
}
