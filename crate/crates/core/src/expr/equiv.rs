//! Equivalence testing: structural proof through the normal form first,
//! seeded random sampling as the fallback for identities the polynomial
//! form cannot decide (radicals, special functions).

use super::eval::{eval_num_with, Bindings, FuncSymTable};
use super::normal::is_normalized_zero;
use super::{Expr, Symbol};
use crate::expr::ExprError;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of an equivalence check.
#[derive(Clone, Debug, PartialEq)]
pub enum EquivVerdict {
    /// The difference normalizes to the literal zero.
    ProvenZero,
    /// All sampled residuals were below tolerance; carries the largest one.
    NumericallyZero { max_residual: f64 },
    /// A concrete witness point where the two sides differ.
    NonZero {
        witness: Vec<(Symbol, f64)>,
        residual: f64,
    },
}

impl EquivVerdict {
    pub fn is_zero(&self) -> bool {
        !matches!(self, EquivVerdict::NonZero { .. })
    }

    pub fn is_proven(&self) -> bool {
        matches!(self, EquivVerdict::ProvenZero)
    }
}

/// Sampling ranges. `x` stays away from the singular axis of the equation
/// family; every other symbol draws from the symmetric range.
#[derive(Clone, Copy, Debug)]
pub struct SampleDomain {
    pub x_range: (f64, f64),
    pub other_range: (f64, f64),
}

impl Default for SampleDomain {
    fn default() -> Self {
        SampleDomain {
            x_range: (0.5, 3.0),
            other_range: (-2.0, 2.0),
        }
    }
}

pub fn equiv(
    e1: &Expr,
    e2: &Expr,
    seed: u64,
    samples: usize,
    tol: f64,
) -> Result<EquivVerdict, ExprError> {
    equiv_with(e1, e2, seed, samples, tol, SampleDomain::default(), None)
}

pub fn equiv_with(
    e1: &Expr,
    e2: &Expr,
    seed: u64,
    samples: usize,
    tol: f64,
    domain: SampleDomain,
    funcsyms: Option<&FuncSymTable>,
) -> Result<EquivVerdict, ExprError> {
    let difference = e1.clone() - e2.clone();
    if is_normalized_zero(&difference)? {
        return Ok(EquivVerdict::ProvenZero);
    }

    let mut vars: Vec<Symbol> = difference.free_symbols().into_iter().collect();
    for fs_name in difference.funcsym_names() {
        if funcsyms.map(|t| !t.contains_key(&fs_name)).unwrap_or(true) {
            return Err(ExprError::UnresolvedFuncSym(fs_name));
        }
    }
    vars.sort();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual = 0.0f64;
    let mut evaluated = 0usize;
    let mut last_err: Option<ExprError> = None;
    for _ in 0..samples.max(1) {
        let mut bindings = Bindings::new();
        for v in &vars {
            let (lo, hi) = if *v == Symbol::X {
                domain.x_range
            } else {
                domain.other_range
            };
            bindings.insert(*v, rng.gen_range(lo..=hi));
        }
        let v1 = eval_num_with(e1, &bindings, funcsyms);
        let v2 = eval_num_with(e2, &bindings, funcsyms);
        let (v1, v2) = match (v1, v2) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                last_err = Some(e);
                continue;
            }
        };
        evaluated += 1;
        let scale = v1.abs().max(v2.abs());
        let residual = v1 - v2;
        if residual.abs() >= tol * (1.0 + scale) {
            return Ok(EquivVerdict::NonZero {
                witness: bindings.into_iter().collect(),
                residual,
            });
        }
        max_residual = max_residual.max(residual.abs());
    }
    if evaluated == 0 {
        return Err(ExprError::AllSamplesFailed(
            last_err
                .map(|e| e.to_string())
                .unwrap_or_else(|| "no samples requested".into()),
        ));
    }
    Ok(EquivVerdict::NumericallyZero { max_residual })
}
