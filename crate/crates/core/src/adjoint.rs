//! Adjoint representation from the Lie series and the classification of
//! one-dimensional subalgebras with replayable witnesses.
//!
//! Sign convention: `Ad(exp(eps Y)) Z = Z - eps [Y,Z] + (eps^2/2) [Y,[Y,Z]] - ...`,
//! i.e. the matrix `exp(-eps ad(Y))` acting on coefficient vectors. For the
//! basis in use every `ad(e_i)` is nilpotent or diagonal, so the
//! exponential is exact: a polynomial in `eps`, or `exp(+-eps)` entries.

use crate::expr::{eval_num, normalize, Bindings, Expr, ExprError, Symbol};
use crate::lie::{basis_vec, AlgebraElement, LieAlgebra};
use crate::linalg::QMat;
use crate::rational::{int, rat, to_f64, Rational};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdjointError {
    #[error("ad(e_{0}) is neither nilpotent nor diagonal; not exponentiable in closed form")]
    NotExponentiable(usize),
    #[error("cannot classify the zero element")]
    ZeroElement,
    #[error("algebra does not match the expected bracket pattern: {0}")]
    UnsupportedAlgebra(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Closed-form matrix of `Ad(exp(eps e_i))`; entries are expressions in
/// `eps`. At `eps = 0` the matrix is the identity.
#[derive(Clone, Debug)]
pub struct AdjointMap {
    pub generator: usize,
    entries: Vec<Vec<Expr>>,
}

impl AdjointMap {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Expr {
        &self.entries[row][col]
    }

    /// Column `j`: the coefficient vector of `Ad(exp(eps e_i)) e_j`.
    pub fn column(&self, j: usize) -> Vec<Expr> {
        (0..self.dim()).map(|k| self.entries[k][j].clone()).collect()
    }

    /// Exact rational matrix at a rational `eps`, when every entry reduces
    /// to a rational (always true for nilpotent and central generators).
    pub fn at_rational(&self, eps: &Rational) -> Option<QMat> {
        let n = self.dim();
        let mut m = QMat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let bound = self.entries[r][c].substitute(Symbol::Eps, &Expr::Const(eps.clone()));
                let reduced = normalize(&bound).ok()?;
                match reduced {
                    Expr::Const(v) => m[(r, c)] = v,
                    _ => return None,
                }
            }
        }
        Some(m)
    }

    /// Floating-point matrix at an arbitrary real `eps`.
    pub fn at_f64(&self, eps: f64) -> Vec<Vec<f64>> {
        let mut bindings = Bindings::new();
        bindings.insert(Symbol::Eps, eps);
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| eval_num(e, &bindings).expect("closed-form entry evaluates"))
                    .collect()
            })
            .collect()
    }

    pub fn apply_rational(&self, eps: &Rational, v: &[Rational]) -> Option<Vec<Rational>> {
        let m = self.at_rational(eps)?;
        Some(m.mul_vec(v))
    }

    pub fn apply_f64(&self, eps: f64, v: &[f64]) -> Vec<f64> {
        let m = self.at_f64(eps);
        (0..v.len())
            .map(|r| (0..v.len()).map(|c| m[r][c] * v[c]).sum())
            .collect()
    }
}

/// Matrix of `ad(v)` on coefficient vectors.
pub fn ad_matrix(algebra: &LieAlgebra, v: &AlgebraElement) -> QMat {
    algebra.ad(&v.coeffs)
}

/// Closed-form `exp(-eps ad(e_i))`. Nilpotent generators give a finite
/// polynomial with the `1/k!` factors; a diagonal `ad` gives `exp(-eps*d)`
/// entries; anything else is an error.
pub fn adjoint_exp(algebra: &LieAlgebra, i: usize) -> Result<AdjointMap, AdjointError> {
    let n = algebra.dim();
    let ad = algebra.ad(&basis_vec(n, i));

    // nilpotency: ad^n = 0
    let mut power = QMat::identity(n);
    let mut powers = vec![power.clone()];
    for _ in 0..n {
        power = ad.mul(&power);
        powers.push(power.clone());
    }
    if powers[n].is_zero() {
        let mut entries = vec![vec![Expr::zero(); n]; n];
        let mut factorial = int(1);
        for (k, pk) in powers.iter().take(n).enumerate() {
            if k > 0 {
                factorial *= int(k as i64);
            }
            let scale = rat(if k % 2 == 0 { 1 } else { -1 }, 1) / factorial.clone();
            for r in 0..n {
                for c in 0..n {
                    if pk[(r, c)].is_zero() {
                        continue;
                    }
                    let coeff = &scale * &pk[(r, c)];
                    let term = Expr::Const(coeff)
                        * Expr::pow(Expr::Var(Symbol::Eps), int(k as i64));
                    entries[r][c] = entries[r][c].clone() + term;
                }
            }
        }
        let entries = entries
            .into_iter()
            .map(|row| row.into_iter().map(|e| normalize(&e).unwrap()).collect())
            .collect();
        return Ok(AdjointMap {
            generator: i,
            entries,
        });
    }

    let diagonal = (0..n).all(|r| (0..n).all(|c| r == c || ad[(r, c)].is_zero()));
    if diagonal {
        let mut entries = vec![vec![Expr::zero(); n]; n];
        for (r, row) in entries.iter_mut().enumerate() {
            let d = &ad[(r, r)];
            row[r] = if d.is_zero() {
                Expr::one()
            } else {
                Expr::apply(
                    crate::expr::Func::Exp,
                    Expr::Const(-d.clone()) * Expr::Var(Symbol::Eps),
                )
            };
        }
        return Ok(AdjointMap {
            generator: i,
            entries,
        });
    }

    Err(AdjointError::NotExponentiable(i))
}

/// The full table of `Ad(exp(eps e_i)) e_j` coefficient vectors;
/// `table[i][j][k]` is the coefficient of `e_k`.
pub fn adjoint_table(algebra: &LieAlgebra) -> Result<Vec<Vec<Vec<Expr>>>, AdjointError> {
    let n = algebra.dim();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let map = adjoint_exp(algebra, i)?;
        out.push((0..n).map(|j| map.column(j)).collect());
    }
    Ok(out)
}

/// Human-readable form of one adjoint-table cell.
pub fn cell_string(coeffs: &[Expr], labels: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero_literal() {
            continue;
        }
        let s = c.to_string();
        let rendered = if s == "1" {
            labels[k].clone()
        } else if s == "-1" {
            format!("-{}", labels[k])
        } else if needs_parens(&s) {
            format!("({s})*{}", labels[k])
        } else {
            format!("{s}*{}", labels[k])
        };
        parts.push(rendered);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(stripped) = p.strip_prefix('-') {
            out.push('-');
            out.push_str(stripped);
        } else {
            out.push('+');
            out.push_str(p);
        }
    }
    out
}

/// Does a rendered coefficient need parentheses before `*label`?
/// Anything with a top-level `+` or an interior top-level `-` does.
fn needs_parens(s: &str) -> bool {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' if depth == 0 => return true,
            '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// Conjugation parameter: exact rational for nilpotent steps, floating
/// point where a logarithm is involved.
#[derive(Clone, Debug, PartialEq)]
pub enum EpsValue {
    Exact(Rational),
    Approx(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessStep {
    Conjugate { generator: usize, eps: EpsValue },
    Scale(EpsValue),
}

impl WitnessStep {
    pub fn scale(c: Rational) -> WitnessStep {
        WitnessStep::Scale(EpsValue::Exact(c))
    }
}

/// Replayable record of the adjoint conjugations and scalings that carry an
/// element to its canonical representative.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Witness {
    pub steps: Vec<WitnessStep>,
}

impl Witness {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl std::fmt::Display for EpsValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EpsValue::Exact(e) => write!(f, "{e}"),
            EpsValue::Approx(e) => write!(f, "{e}"),
        }
    }
}

impl std::fmt::Display for WitnessStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessStep::Scale(c) => write!(f, "scale by {c}"),
            WitnessStep::Conjugate { generator, eps } => {
                write!(f, "Ad(exp({} e{}))", eps, generator + 1)
            }
        }
    }
}

/// The seven families of the one-dimensional optimal system.
#[derive(Clone, Debug, PartialEq)]
pub enum CanonicalClass {
    X1,
    X2,
    X3,
    X3MinusX1,
    X3PlusX1,
    AX2PlusX3 { a: Rational },
    AX1BX2PlusX4 { a: Rational, b: Rational },
}

impl CanonicalClass {
    pub fn describe(&self) -> String {
        match self {
            CanonicalClass::X1 => "X1".into(),
            CanonicalClass::X2 => "X2".into(),
            CanonicalClass::X3 => "X3".into(),
            CanonicalClass::X3MinusX1 => "X3 - X1".into(),
            CanonicalClass::X3PlusX1 => "X3 + X1".into(),
            CanonicalClass::AX2PlusX3 { a } => format!("a*X2 + X3 with a = {a}"),
            CanonicalClass::AX1BX2PlusX4 { a, b } => {
                format!("a*X1 + b*X2 + X4 with a = {a}, b = {b}")
            }
        }
    }

    /// The representative coefficient vector.
    pub fn representative(&self) -> Vec<Rational> {
        match self {
            CanonicalClass::X1 => vec![int(1), int(0), int(0), int(0)],
            CanonicalClass::X2 => vec![int(0), int(1), int(0), int(0)],
            CanonicalClass::X3 => vec![int(0), int(0), int(1), int(0)],
            CanonicalClass::X3MinusX1 => vec![int(-1), int(0), int(1), int(0)],
            CanonicalClass::X3PlusX1 => vec![int(1), int(0), int(1), int(0)],
            CanonicalClass::AX2PlusX3 { a } => vec![int(0), a.clone(), int(1), int(0)],
            CanonicalClass::AX1BX2PlusX4 { a, b } => {
                vec![a.clone(), b.clone(), int(0), int(1)]
            }
        }
    }
}

/// Options for [`classify_with`]. The default follows the published
/// normalization path, which stops at `a X1 + b X2 + X4`; the extra step
/// additionally rescales that family through `Ad(exp(eps e2))`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClassifyOptions {
    pub extra_case1_normalization: bool,
}

/// Replay outcome: exact while every step is rational, floating point as
/// soon as a logarithmic conjugation enters.
#[derive(Clone, Debug, PartialEq)]
pub enum Replay {
    Exact(AlgebraElement),
    Approx(Vec<f64>),
}

impl Replay {
    pub fn as_f64(&self) -> Vec<f64> {
        match self {
            Replay::Exact(e) => e.coeffs.iter().map(to_f64).collect(),
            Replay::Approx(v) => v.clone(),
        }
    }
}

/// Classify a nonzero element into the seven canonical families, deriving
/// every conjugation parameter from the structure constants actually in
/// force. Returns the class together with a replayable witness.
pub fn classify(
    algebra: &LieAlgebra,
    v: &AlgebraElement,
) -> Result<(CanonicalClass, Witness), AdjointError> {
    classify_with(algebra, v, ClassifyOptions::default())
}

pub fn classify_with(
    algebra: &LieAlgebra,
    v: &AlgebraElement,
    options: ClassifyOptions,
) -> Result<(CanonicalClass, Witness), AdjointError> {
    if algebra.dim() != 4 {
        return Err(AdjointError::UnsupportedAlgebra(format!(
            "expected dimension 4, got {}",
            algebra.dim()
        )));
    }
    if v.is_zero() {
        return Err(AdjointError::ZeroElement);
    }
    // The constants the case analysis depends on.
    let c141 = algebra.structure_constant(0, 1, 0); // [e1,e2] = c141 e1
    let c143 = algebra.structure_constant(0, 3, 2); // e3-part of [e1,e4]
    let d1 = algebra.structure_constant(1, 0, 0); // [e2,e1] = d1 e1 (diagonal action)
    if c141.is_zero() || c143.is_zero() || d1.is_zero() {
        return Err(AdjointError::UnsupportedAlgebra(
            "required structure constants vanish".into(),
        ));
    }

    let e1_map = adjoint_exp(algebra, 0)?;
    let mut steps = Vec::new();
    let mut w = v.coeffs.clone();
    let scale = |w: &mut Vec<Rational>, by: Rational, steps: &mut Vec<WitnessStep>| {
        if by != int(1) {
            for c in w.iter_mut() {
                *c *= &by;
            }
            steps.push(WitnessStep::scale(by));
        }
    };
    let conjugate_e1 =
        |w: &mut Vec<Rational>, eps: Rational, steps: &mut Vec<WitnessStep>| {
            if !eps.is_zero() {
                *w = e1_map
                    .apply_rational(&eps, w)
                    .expect("nilpotent conjugation is exact");
                steps.push(WitnessStep::Conjugate {
                    generator: 0,
                    eps: EpsValue::Exact(eps),
                });
            }
        };

    if !w[3].is_zero() {
        // Case 1: normalize a4 to one, then kill the e3 coefficient with a
        // conjugation by e1. Under Ad(exp(eps e1)) the e3 coefficient moves
        // as a3 - eps*c143*a4, so eps = a3 / c143 once a4 = 1.
        let s = int(1) / w[3].clone();
        scale(&mut w, s, &mut steps);
        let eps = &w[2] / c143;
        conjugate_e1(&mut w, eps, &mut steps);
        debug_assert!(w[2].is_zero() && w[3] == int(1));
        if options.extra_case1_normalization {
            return Ok(extra_case1(algebra, w, steps)?);
        }
        return Ok((
            CanonicalClass::AX1BX2PlusX4 {
                a: w[0].clone(),
                b: w[1].clone(),
            },
            Witness { steps },
        ));
    }

    if !w[2].is_zero() {
        // Case 2: a4 = 0, a3 != 0.
        let s = int(1) / w[2].clone();
        scale(&mut w, s, &mut steps);
        if !w[1].is_zero() {
            // 2.1: kill e1 via Ad(exp(eps e1)): a1 - eps*c141*a2.
            let eps = &w[0] / (c141 * &w[1]);
            conjugate_e1(&mut w, eps, &mut steps);
            debug_assert!(w[0].is_zero());
            return Ok((
                CanonicalClass::AX2PlusX3 { a: w[1].clone() },
                Witness { steps },
            ));
        }
        if w[0].is_zero() {
            return Ok((CanonicalClass::X3, Witness { steps }));
        }
        // 2.2: scale |a1| to one with the diagonal action of e2:
        // a1 -> exp(-eps*d1)*a1; the exact landing point is sign(a1).
        let a1 = to_f64(&w[0]);
        let eps = a1.abs().ln() / to_f64(d1);
        if eps != 0.0 {
            steps.push(WitnessStep::Conjugate {
                generator: 1,
                eps: EpsValue::Approx(eps),
            });
        }
        let class = if w[0].is_positive() {
            CanonicalClass::X3PlusX1
        } else {
            CanonicalClass::X3MinusX1
        };
        return Ok((class, Witness { steps }));
    }

    if !w[1].is_zero() {
        // Case 3 with a2 != 0: kill e1, scale a2 to one.
        if !w[0].is_zero() {
            let eps = &w[0] / (c141 * &w[1]);
            conjugate_e1(&mut w, eps, &mut steps);
            debug_assert!(w[0].is_zero());
        }
        let s = int(1) / w[1].clone();
        scale(&mut w, s, &mut steps);
        return Ok((CanonicalClass::X2, Witness { steps }));
    }

    // Only a1 left.
    let s = int(1) / w[0].clone();
        scale(&mut w, s, &mut steps);
    Ok((CanonicalClass::X1, Witness { steps }))
}

/// Off-by-default extra normalization of `a X1 + b X2 + X4` using the
/// diagonal generator `e2`; parameters become floating point (stored as
/// the exact rationals the doubles represent).
///
/// Conjugating by `Ad(exp(eps e2))` multiplies the `e1` coefficient by
/// `exp(-eps d1)` and the `e4` coefficient by `exp(-eps d4)`; a trailing
/// scale by `exp(eps d4)` restores `a4 = 1`, so the net action is
/// `a -> exp(eps (d4 - d1)) a`, `b -> exp(eps d4) b`.
fn extra_case1(
    algebra: &LieAlgebra,
    w: Vec<Rational>,
    mut steps: Vec<WitnessStep>,
) -> Result<(CanonicalClass, Witness), AdjointError> {
    let d1 = to_f64(algebra.structure_constant(1, 0, 0));
    let d4 = to_f64(algebra.structure_constant(1, 3, 3));
    let a = to_f64(&w[0]);
    let b = to_f64(&w[1]);
    let eps = if a != 0.0 {
        -a.abs().ln() / (d4 - d1)
    } else if b != 0.0 {
        -b.abs().ln() / d4
    } else {
        0.0
    };
    let (a, b) = (
        a * (eps * (d4 - d1)).exp(),
        b * (eps * d4).exp(),
    );
    if eps != 0.0 {
        steps.push(WitnessStep::Conjugate {
            generator: 1,
            eps: EpsValue::Approx(eps),
        });
        steps.push(WitnessStep::Scale(EpsValue::Approx((eps * d4).exp())));
    }
    let exact = |x: f64| Rational::from_float(x).unwrap_or_else(|| int(0));
    Ok((
        CanonicalClass::AX1BX2PlusX4 {
            a: exact(a),
            b: exact(b),
        },
        Witness { steps },
    ))
}

/// Replay a witness. Exact as long as every step is rational; drops to
/// floating point at the first `Approx` epsilon or non-rational map.
pub fn apply_witness(
    algebra: &LieAlgebra,
    witness: &Witness,
    v: &AlgebraElement,
) -> Result<Replay, AdjointError> {
    let mut state = Replay::Exact(v.clone());
    for step in &witness.steps {
        state = match step {
            WitnessStep::Scale(c) => match (state, c) {
                (Replay::Exact(e), EpsValue::Exact(c)) => Replay::Exact(AlgebraElement::new(
                    e.coeffs.iter().map(|x| x * c).collect(),
                )),
                (Replay::Exact(e), EpsValue::Approx(cf)) => {
                    Replay::Approx(e.coeffs.iter().map(|x| to_f64(x) * cf).collect())
                }
                (Replay::Approx(vf), c) => {
                    let cf = match c {
                        EpsValue::Exact(c) => to_f64(c),
                        EpsValue::Approx(cf) => *cf,
                    };
                    Replay::Approx(vf.into_iter().map(|x| x * cf).collect())
                }
            },
            WitnessStep::Conjugate { generator, eps } => {
                let map = adjoint_exp(algebra, *generator)?;
                match (&state, eps) {
                    (Replay::Exact(e), EpsValue::Exact(r)) => {
                        match map.apply_rational(r, &e.coeffs) {
                            Some(next) => Replay::Exact(AlgebraElement::new(next)),
                            None => {
                                let vf: Vec<f64> = e.coeffs.iter().map(to_f64).collect();
                                Replay::Approx(map.apply_f64(to_f64(r), &vf))
                            }
                        }
                    }
                    (Replay::Exact(e), EpsValue::Approx(x)) => {
                        let vf: Vec<f64> = e.coeffs.iter().map(to_f64).collect();
                        Replay::Approx(map.apply_f64(*x, &vf))
                    }
                    (Replay::Approx(vf), EpsValue::Exact(r)) => {
                        Replay::Approx(map.apply_f64(to_f64(r), vf))
                    }
                    (Replay::Approx(vf), EpsValue::Approx(x)) => {
                        Replay::Approx(map.apply_f64(*x, vf))
                    }
                }
            }
        };
    }
    Ok(state)
}
