//! Literal matrices for spin 1/2, 1, 3/2 and 2.
//!
//! Every table is held symbolically (integer × optional `i` × `ω^p`, with one
//! shared scalar prefactor) so the same source both evaluates to a
//! [`ComplexMatrix`] and prints in a form that can be compared by eye with
//! the hand-written originals.
//!
//! Index convention: row 0 is `m = +j`, descending.
//!
//! Known irregularities in the source tables:
//!
//! - The spin-2 canonical basis is typeset with a `1/√5` prefactor on the
//!   identity. That would not be normalised, so [`spin2_bases`] ships the
//!   plain identity.
//! - The spin-2 coefficient vectors ([`spin2_printed_coefficients`]) form a
//!   valid traceless, orthogonal set with squared norm 5, but they are not
//!   the diagonals of `τ^k_0` for `j = 2`. The operator sets built by
//!   [`crate::classes`] use the `τ^k_0` diagonals throughout.

use std::fmt::Write as _;

use crate::matcore::{root_of_unity, ComplexMatrix, C64};

/// One entry: `coeff · (i if imag) · ω^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coeff: i32,
    pub imag: bool,
    pub power: u32,
}

impl Term {
    pub const fn new(coeff: i32, imag: bool, power: u32) -> Self {
        Term { coeff, imag, power }
    }

    pub fn value(self, root_order: usize) -> C64 {
        let mut z = C64::new(self.coeff as f64, 0.0);
        if self.imag {
            z *= C64::new(0.0, 1.0);
        }
        if self.power != 0 {
            z *= root_of_unity(root_order, self.power as i64);
        }
        z
    }

    pub fn symbol(self) -> String {
        if self.coeff == 0 {
            return "0".into();
        }
        let mag = self.coeff.unsigned_abs();
        let mut parts: Vec<String> = Vec::new();
        if mag != 1 || (!self.imag && self.power == 0) {
            parts.push(mag.to_string());
        }
        if self.imag {
            parts.push("i".into());
        }
        match self.power {
            0 => {}
            1 => parts.push("w".into()),
            p => parts.push(format!("w^{p}")),
        }
        let sign = if self.coeff < 0 { "-" } else { "" };
        format!("{sign}{}", parts.join("*"))
    }
}

/// Scalar prefactor shared by every entry of a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prefactor {
    One,
    /// Entries are divided by `value`; printed as `/text`.
    Over(&'static str, f64),
    /// Entries are multiplied by `value`; printed as `*text`.
    Times(&'static str, f64),
}

impl Prefactor {
    pub fn value(self) -> f64 {
        match self {
            Prefactor::One => 1.0,
            Prefactor::Over(_, v) => 1.0 / v,
            Prefactor::Times(_, v) => v,
        }
    }

    fn suffix(self) -> String {
        match self {
            Prefactor::One => String::new(),
            Prefactor::Over(s, _) => format!("/{s}"),
            Prefactor::Times(s, _) => format!("*{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicMatrix {
    pub name: &'static str,
    /// `ω = e^{2πi/root_order}`.
    pub root_order: usize,
    pub prefactor: Prefactor,
    pub entries: Vec<Vec<Term>>,
}

impl SymbolicMatrix {
    pub fn evaluate(&self) -> ComplexMatrix {
        let s = self.prefactor.value();
        let rows: Vec<Vec<C64>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|t| t.value(self.root_order) * s).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).expect("tables are rectangular")
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Entries rendered as e.g. `-i*w/sqrt(2)`.
    pub fn render(&self) -> String {
        let suffix = self.prefactor.suffix();
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| if t.coeff == 0 { "0".to_string() } else { format!("{}{suffix}", t.symbol()) })
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = format!("{} (w = exp(2*pi*i/{})):\n", self.name, self.root_order);
        for row in cells {
            out.push_str("  [ ");
            for cell in row {
                let _ = write!(out, "{cell:>width$}  ");
            }
            out.push_str("]\n");
        }
        out
    }
}

const fn t(coeff: i32, imag: bool, power: u32) -> Term {
    Term::new(coeff, imag, power)
}

fn real_rows(rows: &[&[i32]]) -> Vec<Vec<Term>> {
    rows.iter().map(|r| r.iter().map(|&c| t(c, false, 0)).collect()).collect()
}

/// Rows of `(coeff, imag)` pairs with no root of unity.
fn gaussian_rows(rows: &[&[(i32, bool)]]) -> Vec<Vec<Term>> {
    rows.iter().map(|r| r.iter().map(|&(c, i)| t(c, i, 0)).collect()).collect()
}

/// Rows of pure powers `ω^p`.
fn power_rows(rows: &[&[u32]]) -> Vec<Vec<Term>> {
    rows.iter().map(|r| r.iter().map(|&p| t(1, false, p)).collect()).collect()
}

fn identity_rows(d: usize) -> Vec<Vec<Term>> {
    (0..d)
        .map(|i| (0..d).map(|j| t(i32::from(i == j), false, 0)).collect())
        .collect()
}

fn diagonal_rows(diag: &[i32]) -> Vec<Vec<Term>> {
    (0..diag.len())
        .map(|i| (0..diag.len()).map(|j| t(if i == j { diag[i] } else { 0 }, false, 0)).collect())
        .collect()
}

const SQRT2: Prefactor = Prefactor::Over("sqrt(2)", std::f64::consts::SQRT_2);

fn sqrt3() -> Prefactor {
    Prefactor::Over("sqrt(3)", 3f64.sqrt())
}

fn sqrt5() -> Prefactor {
    Prefactor::Over("sqrt(5)", 5f64.sqrt())
}

/// `B1`–`B3` for spin 1/2: eigenbases of σz, σx, σy.
pub fn spin_half_bases() -> Vec<SymbolicMatrix> {
    vec![
        SymbolicMatrix {
            name: "B1",
            root_order: 1,
            prefactor: Prefactor::One,
            entries: identity_rows(2),
        },
        SymbolicMatrix {
            name: "B2",
            root_order: 1,
            prefactor: SQRT2,
            entries: real_rows(&[&[1, 1], &[1, -1]]),
        },
        SymbolicMatrix {
            name: "B3",
            root_order: 1,
            prefactor: SQRT2,
            entries: gaussian_rows(&[&[(1, false), (1, false)], &[(1, true), (-1, true)]]),
        },
    ]
}

/// σz, σx, σy.
pub fn pauli_matrices() -> Vec<SymbolicMatrix> {
    vec![
        SymbolicMatrix {
            name: "sigma_z",
            root_order: 1,
            prefactor: Prefactor::One,
            entries: diagonal_rows(&[1, -1]),
        },
        SymbolicMatrix {
            name: "sigma_x",
            root_order: 1,
            prefactor: Prefactor::One,
            entries: real_rows(&[&[0, 1], &[1, 0]]),
        },
        SymbolicMatrix {
            name: "sigma_y",
            root_order: 1,
            prefactor: Prefactor::One,
            entries: gaussian_rows(&[&[(0, false), (-1, true)], &[(1, true), (0, false)]]),
        },
    ]
}

/// `B'1`–`B'4` for spin 1, `ω = e^{2πi/3}`.
pub fn spin1_bases() -> Vec<SymbolicMatrix> {
    vec![
        SymbolicMatrix {
            name: "B'1",
            root_order: 3,
            prefactor: Prefactor::One,
            entries: identity_rows(3),
        },
        SymbolicMatrix {
            name: "B'2",
            root_order: 3,
            prefactor: sqrt3(),
            entries: power_rows(&[&[0, 0, 0], &[0, 2, 1], &[0, 1, 2]]),
        },
        SymbolicMatrix {
            name: "B'3",
            root_order: 3,
            prefactor: sqrt3(),
            entries: power_rows(&[&[0, 0, 0], &[1, 0, 2], &[0, 1, 2]]),
        },
        SymbolicMatrix {
            name: "B'4",
            root_order: 3,
            prefactor: sqrt3(),
            entries: power_rows(&[&[0, 0, 0], &[2, 1, 0], &[0, 1, 2]]),
        },
    ]
}

/// The spin-1 Fourier transform `U'` mapping `B'1` onto `B'2`.
pub fn spin1_fourier() -> SymbolicMatrix {
    SymbolicMatrix {
        name: "U'",
        root_order: 3,
        prefactor: sqrt3(),
        entries: power_rows(&[&[0, 0, 0], &[0, 2, 1], &[0, 1, 2]]),
    }
}

/// `α1`–`α8`, the spin-1 operator set.
pub fn spin1_alphas() -> Vec<SymbolicMatrix> {
    let z = t(0, false, 0);
    let ni = |p| t(-1, true, p);
    let pi = |p| t(1, true, p);
    let nw = |p| t(-1, false, p);
    let off = |name, entries| SymbolicMatrix {
        name,
        root_order: 3,
        prefactor: SQRT2,
        entries,
    };
    vec![
        SymbolicMatrix {
            name: "alpha_1",
            root_order: 3,
            prefactor: Prefactor::Times("sqrt(3/2)", 1.5f64.sqrt()),
            entries: diagonal_rows(&[1, 0, -1]),
        },
        off("alpha_2", diagonal_rows(&[1, -2, 1])),
        off(
            "alpha_3",
            vec![vec![z, ni(1), pi(2)], vec![pi(2), z, ni(1)], vec![ni(1), pi(2), z]],
        ),
        off(
            "alpha_4",
            vec![vec![z, nw(1), nw(2)], vec![nw(2), z, nw(1)], vec![nw(1), nw(2), z]],
        ),
        off(
            "alpha_5",
            vec![vec![z, ni(0), pi(2)], vec![pi(0), z, ni(2)], vec![ni(1), pi(1), z]],
        ),
        off(
            "alpha_6",
            vec![vec![z, nw(0), nw(2)], vec![nw(0), z, nw(2)], vec![nw(1), nw(1), z]],
        ),
        off(
            "alpha_7",
            vec![vec![z, ni(2), pi(2)], vec![pi(1), z, ni(0)], vec![ni(1), pi(0), z]],
        ),
        off(
            "alpha_8",
            vec![vec![z, nw(2), nw(2)], vec![nw(1), z, nw(0)], vec![nw(1), nw(0), z]],
        ),
    ]
}

/// `B''1`–`B''5` for spin 3/2.
pub fn spin3half_bases() -> Vec<SymbolicMatrix> {
    const R: bool = false;
    const IM: bool = true;
    let half = Prefactor::Over("2", 2.0);
    vec![
        SymbolicMatrix {
            name: "B''1",
            root_order: 1,
            prefactor: Prefactor::One,
            entries: identity_rows(4),
        },
        SymbolicMatrix {
            name: "B''2",
            root_order: 1,
            prefactor: half,
            entries: real_rows(&[&[1, 1, 1, 1], &[1, -1, 1, -1], &[1, 1, -1, -1], &[1, -1, -1, 1]]),
        },
        SymbolicMatrix {
            name: "B''3",
            root_order: 1,
            prefactor: half,
            entries: gaussian_rows(&[
                &[(1, R), (1, R), (1, R), (1, R)],
                &[(1, IM), (-1, IM), (1, IM), (-1, IM)],
                &[(1, IM), (1, IM), (-1, IM), (-1, IM)],
                &[(-1, R), (1, R), (1, R), (-1, R)],
            ]),
        },
        SymbolicMatrix {
            name: "B''4",
            root_order: 1,
            prefactor: half,
            entries: gaussian_rows(&[
                &[(1, R), (1, R), (1, R), (1, R)],
                &[(1, IM), (-1, IM), (1, IM), (-1, IM)],
                &[(1, R), (1, R), (-1, R), (-1, R)],
                &[(-1, IM), (1, IM), (1, IM), (-1, IM)],
            ]),
        },
        SymbolicMatrix {
            name: "B''5",
            root_order: 1,
            prefactor: half,
            entries: gaussian_rows(&[
                &[(1, R), (1, R), (1, R), (1, R)],
                &[(1, R), (-1, R), (1, R), (-1, R)],
                &[(1, IM), (1, IM), (-1, IM), (-1, IM)],
                &[(-1, IM), (1, IM), (1, IM), (-1, IM)],
            ]),
        },
    ]
}

/// `β1 = τ^1_0`, `β2 = τ^2_0`, `β3 = τ^3_0` for spin 3/2.
pub fn spin3half_betas() -> Vec<SymbolicMatrix> {
    vec![
        SymbolicMatrix {
            name: "beta_1",
            root_order: 1,
            prefactor: sqrt5(),
            entries: diagonal_rows(&[3, 1, -1, -3]),
        },
        SymbolicMatrix {
            name: "beta_2",
            root_order: 1,
            prefactor: Prefactor::One,
            entries: diagonal_rows(&[1, -1, -1, 1]),
        },
        SymbolicMatrix {
            name: "beta_3",
            root_order: 1,
            prefactor: sqrt5(),
            entries: diagonal_rows(&[1, -3, 3, -1]),
        },
    ]
}

/// `B1`–`B6` for spin 2, `ω = e^{2πi/5}`. `B1` is the plain identity.
pub fn spin2_bases() -> Vec<SymbolicMatrix> {
    let b = |name, rows: &[&[u32]]| SymbolicMatrix {
        name,
        root_order: 5,
        prefactor: sqrt5(),
        entries: power_rows(rows),
    };
    vec![
        SymbolicMatrix {
            name: "B1",
            root_order: 5,
            prefactor: Prefactor::One,
            entries: identity_rows(5),
        },
        b("B2", &[&[0, 0, 0, 0, 0], &[0, 1, 2, 3, 4], &[0, 2, 4, 1, 3], &[0, 3, 1, 4, 2], &[0, 4, 3, 2, 1]]),
        b("B3", &[&[0, 0, 0, 0, 0], &[1, 2, 3, 4, 0], &[4, 1, 3, 0, 2], &[4, 2, 0, 3, 1], &[1, 0, 4, 3, 2]]),
        b("B4", &[&[0, 0, 0, 0, 0], &[2, 3, 4, 0, 1], &[3, 0, 2, 4, 1], &[3, 1, 4, 2, 0], &[2, 1, 0, 4, 3]]),
        b("B5", &[&[0, 0, 0, 0, 0], &[3, 4, 0, 1, 2], &[2, 4, 1, 3, 0], &[2, 0, 3, 1, 4], &[3, 2, 1, 0, 4]]),
        b("B6", &[&[0, 0, 0, 0, 0], &[4, 0, 1, 2, 3], &[1, 3, 0, 2, 4], &[1, 4, 2, 0, 3], &[4, 3, 2, 1, 0]]),
    ]
}

/// `γ1`–`γ4` for spin 2 as written (diagonal in the canonical basis).
pub fn spin2_gammas() -> Vec<SymbolicMatrix> {
    vec![
        SymbolicMatrix {
            name: "gamma_1",
            root_order: 1,
            prefactor: Prefactor::Times("sqrt(5/4)", 1.25f64.sqrt()),
            entries: diagonal_rows(&[1, -1, 0, 1, -1]),
        },
        SymbolicMatrix {
            name: "gamma_2",
            root_order: 1,
            prefactor: SQRT2,
            entries: diagonal_rows(&[2, 1, 0, -2, -1]),
        },
        SymbolicMatrix {
            name: "gamma_3",
            root_order: 1,
            prefactor: SQRT2,
            entries: diagonal_rows(&[1, -2, 0, -1, 2]),
        },
        SymbolicMatrix {
            name: "gamma_4",
            root_order: 1,
            prefactor: Prefactor::Over("2", 2.0),
            entries: diagonal_rows(&[1, 1, -4, 1, 1]),
        },
    ]
}

/// The spin-2 coefficient vectors as written (diagonals of [`spin2_gammas`]).
pub fn spin2_printed_coefficients() -> Vec<Vec<f64>> {
    spin2_gammas()
        .iter()
        .map(|g| g.evaluate().diagonal().iter().map(|z| z.re).collect())
        .collect()
}

/// Spin-1 `τ^1_0` and `τ^2_0` as written.
pub fn spin1_taus() -> Vec<SymbolicMatrix> {
    let mut v = spin1_alphas();
    v.truncate(2);
    v[0].name = "tau^1_0";
    v[1].name = "tau^2_0";
    v
}

/// Tables grouped by dimension, in display order.
pub fn all_tables() -> Vec<(usize, Vec<SymbolicMatrix>)> {
    let mut d2 = spin_half_bases();
    d2.extend(pauli_matrices());
    let mut d3 = spin1_bases();
    d3.push(spin1_fourier());
    d3.extend(spin1_taus());
    d3.extend(spin1_alphas());
    let mut d4 = spin3half_bases();
    d4.extend(spin3half_betas());
    let mut d5 = spin2_bases();
    d5.extend(spin2_gammas());
    vec![(2, d2), (3, d3), (4, d4), (5, d5)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_symbols() {
        assert_eq!(t(-1, true, 1).symbol(), "-i*w");
        assert_eq!(t(1, true, 2).symbol(), "i*w^2");
        assert_eq!(t(1, false, 0).symbol(), "1");
        assert_eq!(t(-2, false, 0).symbol(), "-2");
        assert_eq!(t(3, true, 0).symbol(), "3*i");
        assert_eq!(t(0, true, 2).symbol(), "0");
    }

    #[test]
    fn alpha3_renders_with_prefactor() {
        let a3 = &spin1_alphas()[2];
        let text = a3.render();
        assert!(text.contains("-i*w/sqrt(2)"), "{text}");
        assert!(text.starts_with("alpha_3"));
    }

    #[test]
    fn alpha3_entry_value() {
        let a3 = spin1_alphas()[2].evaluate();
        let w = root_of_unity(3, 1);
        let expected = -C64::new(0.0, 1.0) * w / 2f64.sqrt();
        assert!((a3[(0, 1)] - expected).norm() < 1e-15);
    }

    #[test]
    fn printed_tables_are_square_and_finite() {
        for (d, group) in all_tables() {
            for m in group {
                assert_eq!(m.dim(), d, "{}", m.name);
                assert!(m.entries.iter().all(|r| r.len() == d), "{}", m.name);
            }
        }
    }

    #[test]
    fn printed_bases_are_unitary() {
        let tol = crate::Tolerance::new(1e-14).unwrap();
        for group in [spin_half_bases(), spin1_bases(), spin3half_bases(), spin2_bases()] {
            for b in group {
                assert!(b.evaluate().is_unitary(tol), "{}", b.name);
            }
        }
    }

    #[test]
    fn printed_operators_are_hermitian_and_traceless() {
        let tol = crate::Tolerance::new(1e-15).unwrap();
        let ops = spin1_alphas().into_iter().chain(spin3half_betas()).chain(spin2_gammas()).chain(pauli_matrices());
        for op in ops {
            let m = op.evaluate();
            assert!(m.is_hermitian(tol), "{}", op.name);
            assert!(m.trace().unwrap().norm() < 1e-14, "{}", op.name);
        }
    }

    #[test]
    fn spin2_printed_coefficients_satisfy_the_linear_constraints() {
        let v = spin2_printed_coefficients();
        assert_eq!(v.len(), 4);
        for (a, va) in v.iter().enumerate() {
            assert!(va.iter().sum::<f64>().abs() < 1e-14);
            for (b, vb) in v.iter().enumerate() {
                let dot: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
                let want = if a == b { 5.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-13, "({a},{b}) -> {dot}");
            }
        }
    }
}
