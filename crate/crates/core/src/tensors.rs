//! Clebsch–Gordan coefficients and Fano spherical tensor operators.
//!
//! Half-integer quantum numbers are carried doubled (`two_j = 2j`) so that all
//! bookkeeping is in integers. Matrices use the `|j m⟩` basis with row/column
//! 0 at `m = +j` and `m` descending.
//!
//! `τ^k_q` is normalised in the Madison convention,
//! `⟨j m'|τ^k_q|j m⟩ = √(2k+1) · C(j k j; m q m')`, which gives
//! `Tr(τ^k_q† τ^k'_q') = (2j+1) δ_kk' δ_qq'`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::LazyLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, C64};

/// Largest supported `2j` for spin labels.
pub const MAX_TWO_J: u32 = 25;

const FACTORIAL_TABLE_LEN: usize = 171;

static FACTORIALS: LazyLock<[f64; FACTORIAL_TABLE_LEN]> = LazyLock::new(|| {
    let mut f = [1.0; FACTORIAL_TABLE_LEN];
    for n in 1..FACTORIAL_TABLE_LEN {
        f[n] = f[n - 1] * n as f64;
    }
    f
});

fn factorial(n: i64) -> f64 {
    assert!(
        (0..FACTORIAL_TABLE_LEN as i64).contains(&n),
        "factorial argument {n} out of table range"
    );
    FACTORIALS[n as usize]
}

/// A spin `j = two_j / 2` with Hilbert-space dimension `d = two_j + 1 ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SpinLabel {
    two_j: u32,
}

impl SpinLabel {
    pub fn new(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::invalid("spin 0 has a one-dimensional space; need d >= 2"));
        }
        if two_j > MAX_TWO_J {
            return Err(Error::invalid(format!("2j = {two_j} exceeds the supported maximum {MAX_TWO_J}")));
        }
        Ok(SpinLabel { two_j })
    }

    /// The spin whose multiplet has dimension `d`.
    pub fn from_dim(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid(format!("dimension {d} < 2")));
        }
        Self::new(u32::try_from(d - 1).map_err(|_| Error::invalid("dimension too large"))?)
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// Doubled `m` values in canonical (descending) order.
    pub fn two_m_values(self) -> impl Iterator<Item = i32> {
        let tj = self.two_j as i32;
        (0..=self.two_j as i32).map(move |r| tj - 2 * r)
    }
}

/// Converts `x` to `2x`, failing unless `x` is an integer or half-integer.
pub fn doubled(x: f64) -> Result<i32> {
    let two = 2.0 * x;
    let r = two.round();
    if !x.is_finite() || (two - r).abs() > 1e-9 || r.abs() > i32::MAX as f64 {
        return Err(Error::invalid(format!("{x} is not a half-integer")));
    }
    Ok(r as i32)
}

/// `C(j1 j2 j; m1 m2 m)` from doubled arguments via the Racah closed form.
///
/// Returns zero for any selection-rule violation: `m1 + m2 ≠ m`, broken
/// triangle, `|m_i| > j_i`, or mismatched integer/half-integer parity.
pub fn clebsch_gordan_doubled(two_j1: i32, two_j2: i32, two_j: i32, two_m1: i32, two_m2: i32, two_m: i32) -> f64 {
    if two_j1 < 0 || two_j2 < 0 || two_j < 0 {
        return 0.0;
    }
    if two_m1 + two_m2 != two_m {
        return 0.0;
    }
    if two_m1.abs() > two_j1 || two_m2.abs() > two_j2 || two_m.abs() > two_j {
        return 0.0;
    }
    if (two_j1 + two_m1) % 2 != 0 || (two_j2 + two_m2) % 2 != 0 || (two_j + two_m) % 2 != 0 {
        return 0.0;
    }
    if two_j < (two_j1 - two_j2).abs() || two_j > two_j1 + two_j2 || (two_j1 + two_j2 + two_j) % 2 != 0 {
        return 0.0;
    }

    // Every quantity below is an integer once halved.
    let h = |x: i32| -> i64 { i64::from(x / 2) };
    let a = h(two_j1 + two_j2 - two_j);
    let b = h(two_j1 - two_j2 + two_j);
    let c = h(-two_j1 + two_j2 + two_j);
    let s = h(two_j1 + two_j2 + two_j) + 1;

    let triangle = (two_j as f64 + 1.0) * factorial(a) * factorial(b) * factorial(c) / factorial(s);
    let moments = factorial(h(two_j + two_m))
        * factorial(h(two_j - two_m))
        * factorial(h(two_j1 - two_m1))
        * factorial(h(two_j1 + two_m1))
        * factorial(h(two_j2 - two_m2))
        * factorial(h(two_j2 + two_m2));

    let j1_minus_m1 = h(two_j1 - two_m1);
    let j2_plus_m2 = h(two_j2 + two_m2);
    let t1 = h(two_j - two_j2 + two_m1);
    let t2 = h(two_j - two_j1 - two_m2);

    let k_min = 0.max(-t1).max(-t2);
    let k_max = a.min(j1_minus_m1).min(j2_plus_m2);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(a - k)
            * factorial(j1_minus_m1 - k)
            * factorial(j2_plus_m2 - k)
            * factorial(t1 + k)
            * factorial(t2 + k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }
    (triangle * moments).sqrt() * sum
}

/// `C(j1 j2 j; m1 m2 m)` for real-valued half-integer arguments.
pub fn clebsch_gordan(j1: f64, j2: f64, j: f64, m1: f64, m2: f64, m: f64) -> Result<f64> {
    Ok(clebsch_gordan_doubled(
        doubled(j1)?,
        doubled(j2)?,
        doubled(j)?,
        doubled(m1)?,
        doubled(m2)?,
        doubled(m)?,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphericalTensor {
    pub spin: SpinLabel,
    pub k: u32,
    pub q: i32,
    pub matrix: ComplexMatrix,
}

fn check_rank(spin: SpinLabel, k: u32, q: i32) -> Result<()> {
    if k > spin.two_j() {
        return Err(Error::invalid(format!("rank k = {k} exceeds 2j = {}", spin.two_j())));
    }
    if q.unsigned_abs() > k {
        return Err(Error::invalid(format!("projection q = {q} exceeds rank k = {k}")));
    }
    Ok(())
}

/// `τ^k_q` with elements `(m', m) = √(2k+1) · C(j k j; m q m')`.
pub fn spherical_tensor(spin: SpinLabel, k: u32, q: i32) -> Result<SphericalTensor> {
    check_rank(spin, k, q)?;
    let d = spin.dim();
    let tj = spin.two_j() as i32;
    let tk = 2 * k as i32;
    let tq = 2 * q;
    let norm = (2.0 * k as f64 + 1.0).sqrt();
    let ms: Vec<i32> = spin.two_m_values().collect();
    let mut matrix = ComplexMatrix::zeros(d, d);
    for (row, &two_mp) in ms.iter().enumerate() {
        for (col, &two_m) in ms.iter().enumerate() {
            if two_m + tq != two_mp {
                continue;
            }
            let cg = clebsch_gordan_doubled(tj, tk, tj, two_m, tq, two_mp);
            matrix[(row, col)] = C64::new(norm * cg, 0.0);
        }
    }
    Ok(SphericalTensor { spin, k, q, matrix })
}

/// The real diagonal of `τ^k_0`.
pub fn diagonal_tensor(spin: SpinLabel, k: u32) -> Result<Vec<f64>> {
    Ok(spherical_tensor(spin, k, 0)?.matrix.diagonal().iter().map(|z| z.re).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngularMomentum {
    pub jx: ComplexMatrix,
    pub jy: ComplexMatrix,
    pub jz: ComplexMatrix,
}

impl AngularMomentum {
    /// `J² = Jx² + Jy² + Jz²`.
    pub fn j_squared(&self) -> ComplexMatrix {
        let sq = |m: &ComplexMatrix| m.multiply(m).expect("square");
        sq(&self.jx).add(&sq(&self.jy)).and_then(|s| s.add(&sq(&self.jz))).expect("same shape")
    }
}

/// `Jx`, `Jy`, `Jz` in the canonical basis.
pub fn angular_momentum(spin: SpinLabel) -> AngularMomentum {
    let d = spin.dim();
    let j = spin.j();
    let ms: Vec<f64> = spin.two_m_values().map(|tm| tm as f64 / 2.0).collect();
    let jz = ComplexMatrix::from_real_diagonal(&ms);
    // J+ |m⟩ = √(j(j+1) − m(m+1)) |m+1⟩; |m+1⟩ sits one row above |m⟩.
    let mut jp = ComplexMatrix::zeros(d, d);
    for col in 1..d {
        let m = ms[col];
        jp[(col - 1, col)] = C64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let jm = jp.adjoint();
    let jx = jp.add(&jm).expect("same shape").scale_real(0.5);
    let jy = jp.sub(&jm).expect("same shape").scale(C64::new(0.0, -0.5));
    AngularMomentum { jx, jy, jz }
}

/// Ways of reading the typeset cubic expression for `τ^3_0` at `j = 3/2`:
/// `(1/(3√5)) [4Jz³ − G_x · G_y]` with `G_a = Jz Ja² + Ja² Jz + Ja Jz Ja`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tau3Reading {
    /// `4Jz³ − G_x G_y` (literally as typeset; degree six).
    Product,
    /// `4Jz³ − G_x − G_y`.
    Difference,
    /// `4Jz³ − 2(G_x + G_y)`, the symmetrised cubic that actually equals `τ^3_0`.
    Symmetrized,
}

impl Tau3Reading {
    pub const ALL: [Tau3Reading; 3] = [Tau3Reading::Product, Tau3Reading::Difference, Tau3Reading::Symmetrized];
}

/// Evaluates the closed-form `τ^3_0` expression for spin 3/2 under `reading`.
pub fn tau3_closed_form(spin: SpinLabel, reading: Tau3Reading) -> Result<ComplexMatrix> {
    if spin.two_j() != 3 {
        return Err(Error::invalid(format!(
            "the closed-form tau^3_0 expression is for j = 3/2, got 2j = {}",
            spin.two_j()
        )));
    }
    let AngularMomentum { jx, jy, jz } = angular_momentum(spin);
    let mul = |a: &ComplexMatrix, b: &ComplexMatrix| a.multiply(b).expect("square");
    let group = |ja: &ComplexMatrix| {
        let ja2 = mul(ja, ja);
        mul(&jz, &ja2)
            .add(&mul(&ja2, &jz))
            .and_then(|s| s.add(&mul(&mul(ja, &jz), ja)))
            .expect("same shape")
    };
    let gx = group(&jx);
    let gy = group(&jy);
    let jz3 = mul(&mul(&jz, &jz), &jz).scale_real(4.0);
    let rest = match reading {
        Tau3Reading::Product => mul(&gx, &gy),
        Tau3Reading::Difference => gx.add(&gy)?,
        Tau3Reading::Symmetrized => gx.add(&gy)?.scale_real(2.0),
    };
    Ok(jz3.sub(&rest)?.scale_real(1.0 / (3.0 * 5f64.sqrt())))
}

/// Outcome of comparing one closed-form reading with `τ^3_0`.
#[derive(Debug, Clone, Serialize)]
pub struct Tau3Comparison {
    pub reading: Tau3Reading,
    pub max_abs_deviation: f64,
    pub matches: bool,
}

/// Compares every [`Tau3Reading`] against `spherical_tensor(3/2, 3, 0)`.
pub fn tau3_comparison(tol: f64) -> Vec<Tau3Comparison> {
    let spin = SpinLabel::new(3).expect("valid");
    let reference = spherical_tensor(spin, 3, 0).expect("valid rank").matrix;
    Tau3Reading::ALL
        .iter()
        .map(|&reading| {
            let m = tau3_closed_form(spin, reading).expect("spin 3/2");
            let dev = m.max_abs_diff(&reference).expect("same shape");
            Tau3Comparison {
                reading,
                max_abs_deviation: dev,
                matches: dev <= tol,
            }
        })
        .collect()
}

/// `N_kj = (2^k / k!) √(4π (2j−k)! (2j+1) / (2j+k+1)!)`.
pub fn weyl_normalization(spin: SpinLabel, k: u32) -> f64 {
    let tj = i64::from(spin.two_j());
    let k = i64::from(k);
    2f64.powi(k as i32) / factorial(k)
        * (4.0 * PI * factorial(tj - k) * (tj as f64 + 1.0) / factorial(tj + k + 1)).sqrt()
}

/// Monomial coefficients of `r^k P_k(cos θ)` keyed by `(x, y, z)` exponents.
fn solid_legendre(k: u32) -> HashMap<(u32, u32, u32), f64> {
    let k = i64::from(k);
    let mut poly = HashMap::new();
    for t in 0..=k / 2 {
        // (−1)^t (2k−2t)! / (2^k t! (k−t)! (k−2t)!) z^(k−2t) r^(2t)
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * factorial(2 * k - 2 * t)
            / (2f64.powi(k as i32) * factorial(t) * factorial(k - t) * factorial(k - 2 * t));
        // r^(2t) = Σ_{a+b+e=t} t!/(a! b! e!) x^(2a) y^(2b) z^(2e)
        for a in 0..=t {
            for b in 0..=t - a {
                let e = t - a - b;
                let multinomial = factorial(t) / (factorial(a) * factorial(b) * factorial(e));
                let key = ((2 * a) as u32, (2 * b) as u32, (k - 2 * t + 2 * e) as u32);
                *poly.entry(key).or_insert(0.0) += c * multinomial;
            }
        }
    }
    poly
}

/// Sum of all distinct words with `nx` copies of `Jx`, `ny` of `Jy`, `nz` of `Jz`.
fn symmetrized_word(
    am: &AngularMomentum,
    n: (u32, u32, u32),
    memo: &mut HashMap<(u32, u32, u32), ComplexMatrix>,
) -> ComplexMatrix {
    if let Some(m) = memo.get(&n) {
        return m.clone();
    }
    let d = am.jz.rows();
    let (nx, ny, nz) = n;
    let result = if nx + ny + nz == 0 {
        ComplexMatrix::identity(d)
    } else {
        let mut acc = ComplexMatrix::zeros(d, d);
        let steps = [
            (nx > 0, &am.jx, (nx.saturating_sub(1), ny, nz)),
            (ny > 0, &am.jy, (nx, ny.saturating_sub(1), nz)),
            (nz > 0, &am.jz, (nx, ny, nz.saturating_sub(1))),
        ];
        for (ok, op, rest) in steps {
            if ok {
                let tail = symmetrized_word(am, rest, memo);
                acc = acc.add(&op.multiply(&tail).expect("square")).expect("same shape");
            }
        }
        acc
    };
    memo.insert(n, result.clone());
    result
}

/// `τ^k_0` by the Weyl construction `N_kj (J·∇)^k r^k Y^k_0(r̂)`.
///
/// `(J·∇)^k` acting on a degree-`k` monomial `x^a y^b z^c` produces
/// `a! b! c!` times the sum over distinct orderings of the operator word,
/// which is what [`symmetrized_word`] enumerates. Only `q = 0` is supported.
pub fn weyl_tensor(spin: SpinLabel, k: u32, q: i32) -> Result<ComplexMatrix> {
    check_rank(spin, k, q)?;
    if q != 0 {
        return Err(Error::invalid("weyl_tensor is implemented for q = 0 only"));
    }
    let am = angular_momentum(spin);
    let d = spin.dim();
    let mut memo = HashMap::new();
    let mut acc = ComplexMatrix::zeros(d, d);
    let mut terms: Vec<_> = solid_legendre(k).into_iter().collect();
    terms.sort_by_key(|&(key, _)| key);
    for ((a, b, c), coeff) in terms {
        if coeff == 0.0 {
            continue;
        }
        let weight = coeff * factorial(a.into()) * factorial(b.into()) * factorial(c.into());
        let word = symmetrized_word(&am, (a, b, c), &mut memo);
        acc = acc.add(&word.scale_real(weight))?;
    }
    let y_norm = ((2.0 * k as f64 + 1.0) / (4.0 * PI)).sqrt();
    Ok(acc.scale_real(weyl_normalization(spin, k) * y_norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::Tolerance;

    fn spin(two_j: u32) -> SpinLabel {
        SpinLabel::new(two_j).unwrap()
    }

    fn diag(m: &ComplexMatrix) -> Vec<f64> {
        m.diagonal().iter().map(|z| z.re).collect()
    }

    fn assert_vec_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn spin_label_bounds() {
        assert!(SpinLabel::new(0).is_err());
        assert!(SpinLabel::new(26).is_err());
        assert_eq!(SpinLabel::from_dim(5).unwrap().two_j(), 4);
        assert_eq!(spin(3).two_m_values().collect::<Vec<_>>(), vec![3, 1, -1, -3]);
    }

    #[test]
    fn doubled_rejects_non_half_integers() {
        assert_eq!(doubled(1.5).unwrap(), 3);
        assert_eq!(doubled(-0.5).unwrap(), -1);
        assert!(doubled(0.3).is_err());
        assert!(doubled(f64::INFINITY).is_err());
        assert!(clebsch_gordan(1.0, 1.0, 1.0, 0.25, 0.0, 0.25).is_err());
    }

    #[test]
    fn cg_examples() {
        let c = clebsch_gordan(1.0, 1.0, 1.0, 1.0, 0.0, 1.0).unwrap();
        assert!((c - 0.5f64.sqrt()).abs() < 1e-15);
        for two_j in 1..8 {
            for two_m in (-two_j..=two_j).step_by(2) {
                assert!((clebsch_gordan_doubled(two_j, 0, two_j, two_m, 0, two_m) - 1.0).abs() < 1e-14);
            }
        }
        let c = clebsch_gordan(1.5, 2.0, 1.5, 1.5, 0.0, 1.5).unwrap();
        assert!((c - 1.0 / 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn cg_selection_rules_give_zero() {
        assert_eq!(clebsch_gordan_doubled(2, 2, 2, 2, 0, 0), 0.0);
        assert_eq!(clebsch_gordan_doubled(2, 2, 6, 2, 0, 2), 0.0);
        assert_eq!(clebsch_gordan_doubled(2, 2, 2, 4, -2, 2), 0.0);
        assert_eq!(clebsch_gordan_doubled(2, 2, 2, 1, 1, 2), 0.0);
    }

    // Closed forms for k = 1, 2: C(j1j;m0m) = m/√(j(j+1)),
    // C(j2j;m0m) = (3m² − j(j+1)) / √(j(j+1)(2j−1)(2j+3)).
    #[test]
    fn cg_matches_closed_forms_for_rank_one_and_two() {
        for two_j in 1..=25 {
            let j = two_j as f64 / 2.0;
            let jj = j * (j + 1.0);
            for two_m in (-two_j..=two_j).step_by(2) {
                let m = two_m as f64 / 2.0;
                let c1 = clebsch_gordan_doubled(two_j, 2, two_j, two_m, 0, two_m);
                assert!((c1 - m / jj.sqrt()).abs() < 1e-12, "j={j} m={m}");
                if two_j >= 2 {
                    let c2 = clebsch_gordan_doubled(two_j, 4, two_j, two_m, 0, two_m);
                    let want = (3.0 * m * m - jj) / (jj * (2.0 * j - 1.0) * (2.0 * j + 3.0)).sqrt();
                    assert!((c2 - want).abs() < 1e-12, "j={j} m={m}: {c2} vs {want}");
                }
            }
        }
    }

    #[test]
    fn cg_orthogonality() {
        for two_j1 in 0i32..=4 {
            for two_j2 in 0..=4 {
                let lo = (two_j1 - two_j2).abs();
                let hi = two_j1 + two_j2;
                for two_j in (lo..=hi).step_by(2) {
                    for two_jp in (lo..=hi).step_by(2) {
                        for two_m in (-two_j.min(two_jp)..=two_j.min(two_jp)).step_by(2) {
                            let mut s = 0.0;
                            for two_m1 in (-two_j1..=two_j1).step_by(2) {
                                let two_m2 = two_m - two_m1;
                                s += clebsch_gordan_doubled(two_j1, two_j2, two_j, two_m1, two_m2, two_m)
                                    * clebsch_gordan_doubled(two_j1, two_j2, two_jp, two_m1, two_m2, two_m);
                            }
                            let want = if two_j == two_jp { 1.0 } else { 0.0 };
                            assert!((s - want).abs() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spherical_tensor_examples() {
        let t = spherical_tensor(spin(2), 1, 0).unwrap();
        assert_vec_close(&diag(&t.matrix), &[1.5f64.sqrt(), 0.0, -(1.5f64.sqrt())], 1e-15);
        let t = spherical_tensor(spin(3), 3, 0).unwrap();
        let s5 = 5f64.sqrt();
        assert_vec_close(&diag(&t.matrix), &[1.0 / s5, -3.0 / s5, 3.0 / s5, -1.0 / s5], 1e-14);
        let t = spherical_tensor(spin(2), 0, 0).unwrap();
        assert!(t.matrix.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() < 1e-15);
        assert!(spherical_tensor(spin(2), 3, 0).is_err());
        assert!(spherical_tensor(spin(2), 1, 2).is_err());
    }

    #[test]
    fn tensor_orthogonality_and_symmetry() {
        for two_j in 1..=5 {
            let s = spin(two_j);
            let d = s.dim() as f64;
            let mut all = Vec::new();
            for k in 0..=two_j {
                for q in -(k as i32)..=(k as i32) {
                    all.push(spherical_tensor(s, k, q).unwrap());
                }
            }
            for a in &all {
                for b in &all {
                    let ip = a.matrix.hs_inner(&b.matrix).unwrap();
                    let want = if a.k == b.k && a.q == b.q { d } else { 0.0 };
                    assert!((ip - C64::new(want, 0.0)).norm() <= 1e-10, "2j={two_j} {},{} {},{}", a.k, a.q, b.k, b.q);
                }
                if a.k >= 1 {
                    assert!(a.matrix.trace().unwrap().norm() < 1e-12);
                }
                let partner = all.iter().find(|t| t.k == a.k && t.q == -a.q).unwrap();
                let sign = if a.q % 2 == 0 { 1.0 } else { -1.0 };
                let dev = a.matrix.adjoint().max_abs_diff(&partner.matrix.scale_real(sign)).unwrap();
                assert!(dev <= 1e-12, "symmetry 2j={two_j} k={} q={}", a.k, a.q);
            }
        }
    }

    #[test]
    fn diagonal_tensors_span_diagonals() {
        for two_j in 1..=10 {
            let s = spin(two_j);
            let d = s.dim();
            let mut rows = Vec::new();
            for k in 0..=two_j {
                let t = spherical_tensor(s, k, 0).unwrap();
                assert!(t.matrix.max_abs_diff(&ComplexMatrix::from_real_diagonal(&diag(&t.matrix))).unwrap() == 0.0);
                if k >= 1 {
                    assert!(diag(&t.matrix).iter().sum::<f64>().abs() < 1e-12);
                }
                rows.push(t.matrix.diagonal());
            }
            let gram_rows: Vec<Vec<C64>> = rows
                .iter()
                .map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>() / d as f64).collect())
                .collect();
            let det = ComplexMatrix::from_rows(&gram_rows).unwrap().determinant().unwrap();
            assert!((det.re - 1.0).abs() < 1e-9, "2j={two_j} det={det}");
        }
    }

    #[test]
    fn angular_momentum_examples() {
        let am = angular_momentum(spin(2));
        assert_vec_close(&diag(&am.jz), &[1.0, 0.0, -1.0], 0.0);
        let tau1 = spherical_tensor(spin(2), 1, 0).unwrap().matrix;
        assert!(am.jz.scale_real(1.5f64.sqrt()).max_abs_diff(&tau1).unwrap() < 1e-15);
        let jz2 = am.jz.multiply(&am.jz).unwrap();
        let tau2 = jz2.scale_real(3.0).sub(&am.j_squared()).unwrap().scale_real(1.0 / 2f64.sqrt());
        let want = spherical_tensor(spin(2), 2, 0).unwrap().matrix;
        assert!(tau2.max_abs_diff(&want).unwrap() < 1e-14);
    }

    #[test]
    fn angular_momentum_algebra() {
        let tol = Tolerance::new(1e-12).unwrap();
        for two_j in 1..=8 {
            let s = spin(two_j);
            let am = angular_momentum(s);
            let j = s.j();
            let cas = ComplexMatrix::identity(s.dim()).scale_real(j * (j + 1.0));
            assert!(am.j_squared().approx_eq(&cas, tol));
            let lhs = am.jx.commutator(&am.jy).unwrap();
            assert!(lhs.approx_eq(&am.jz.scale(C64::new(0.0, 1.0)), tol));
            assert!(am.jx.is_hermitian(tol) && am.jy.is_hermitian(tol));
        }
    }

    #[test]
    fn tau3_readings() {
        let s = spin(3);
        // G_x G_y is a product of non-commuting Hermitian operators.
        assert!(!tau3_closed_form(s, Tau3Reading::Product).unwrap().is_hermitian(Tolerance::default()));
        assert!(tau3_closed_form(s, Tau3Reading::Symmetrized).unwrap().is_hermitian(Tolerance::default()));
        let cmp = tau3_comparison(1e-12);
        let by = |r| cmp.iter().find(|c| c.reading == r).unwrap();
        assert!(!by(Tau3Reading::Product).matches);
        assert!(!by(Tau3Reading::Difference).matches);
        assert!(by(Tau3Reading::Symmetrized).matches);
        assert!(tau3_closed_form(spin(2), Tau3Reading::Product).is_err());
    }

    #[test]
    fn jz_cubed_term_alone() {
        let am = angular_momentum(spin(3));
        let jz3 = am.jz.multiply(&am.jz).unwrap().multiply(&am.jz).unwrap().scale_real(4.0 / (3.0 * 5f64.sqrt()));
        let want: Vec<f64> = [27.0, 1.0, -1.0, -27.0].iter().map(|x| 4.0 * x / 8.0 / (3.0 * 5f64.sqrt())).collect();
        assert_vec_close(&diag(&jz3), &want, 1e-15);
    }

    #[test]
    fn weyl_examples() {
        let w = weyl_tensor(spin(2), 1, 0).unwrap();
        let am = angular_momentum(spin(2));
        assert!(w.max_abs_diff(&am.jz.scale_real(1.5f64.sqrt())).unwrap() < 1e-14);
        let w = weyl_tensor(spin(1), 1, 0).unwrap();
        assert!(w.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, -1.0])).unwrap() < 1e-14);
        assert!(weyl_tensor(spin(2), 1, 1).is_err());
    }

    #[test]
    fn weyl_matches_cg_route() {
        for two_j in 1..=6 {
            let s = spin(two_j);
            for k in 0..=two_j {
                let w = weyl_tensor(s, k, 0).unwrap();
                let t = spherical_tensor(s, k, 0).unwrap().matrix;
                let dev = w.max_abs_diff(&t).unwrap();
                assert!(dev < 1e-10, "2j={two_j} k={k} dev={dev}");
            }
        }
    }
}
