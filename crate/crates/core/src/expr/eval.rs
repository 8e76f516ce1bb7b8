//! IEEE double-precision evaluation.

use super::{Expr, Func, FuncSymbol, NamedConst, Symbol};
use crate::expr::ExprError;
use crate::rational::{as_i64, to_f64};
use crate::specfun::{self, SpecFun};
use std::collections::BTreeMap;

pub type Bindings = BTreeMap<Symbol, f64>;

/// Numeric interpretations for function symbols, keyed by name; called with
/// the symbol (including its derivative multi-index) and the bound argument
/// values.
pub type FuncSymTable<'a> = BTreeMap<String, &'a dyn Fn(&FuncSymbol, &[f64]) -> Option<f64>>;

pub fn eval_num(e: &Expr, bindings: &Bindings) -> Result<f64, ExprError> {
    eval_num_with(e, bindings, None)
}

pub fn eval_num_with(
    e: &Expr,
    bindings: &Bindings,
    funcsyms: Option<&FuncSymTable>,
) -> Result<f64, ExprError> {
    let v = eval_inner(e, bindings, funcsyms)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ExprError::NonFinite)
    }
}

fn eval_inner(
    e: &Expr,
    bindings: &Bindings,
    funcsyms: Option<&FuncSymTable>,
) -> Result<f64, ExprError> {
    match e {
        Expr::Const(c) => Ok(to_f64(c)),
        Expr::Named(NamedConst::Pi) => Ok(core::f64::consts::PI),
        Expr::Named(NamedConst::Gamma) => Ok(specfun::EULER_GAMMA),
        Expr::Var(s) => bindings
            .get(s)
            .copied()
            .ok_or_else(|| ExprError::UnboundSymbol(s.name())),
        Expr::Sum(terms) => {
            let mut acc = 0.0;
            for t in terms {
                acc += eval_inner(t, bindings, funcsyms)?;
            }
            Ok(acc)
        }
        Expr::Product(factors) => {
            let mut acc = 1.0;
            for f in factors {
                acc *= eval_inner(f, bindings, funcsyms)?;
            }
            Ok(acc)
        }
        Expr::Power(base, exp) => {
            let b = eval_inner(base, bindings, funcsyms)?;
            if let Some(n) = as_i64(exp) {
                if b == 0.0 && n < 0 {
                    return Err(ExprError::Domain("0^negative".into()));
                }
                return Ok(b.powi(n as i32));
            }
            let x = to_f64(exp);
            if b < 0.0 {
                return Err(ExprError::Domain(format!(
                    "({b})^({x}) with negative base"
                )));
            }
            if b == 0.0 && x < 0.0 {
                return Err(ExprError::Domain("0^negative".into()));
            }
            Ok(b.powf(x))
        }
        Expr::Apply(f, args) => {
            let x = eval_inner(&args[0], bindings, funcsyms)?;
            apply_f64(*f, x)
        }
        Expr::FuncSym(fs) => {
            let table = funcsyms.ok_or_else(|| {
                ExprError::UnresolvedFuncSym(fs.suffixed_name())
            })?;
            let callback = table.get(&fs.name).ok_or_else(|| {
                ExprError::UnresolvedFuncSym(fs.suffixed_name())
            })?;
            let mut argv = Vec::with_capacity(fs.args.len());
            for a in &fs.args {
                argv.push(
                    bindings
                        .get(a)
                        .copied()
                        .ok_or_else(|| ExprError::UnboundSymbol(a.name()))?,
                );
            }
            callback(fs, &argv).ok_or_else(|| ExprError::UnresolvedFuncSym(fs.suffixed_name()))
        }
    }
}

fn apply_f64(f: Func, x: f64) -> Result<f64, ExprError> {
    let v = match f {
        Func::Exp => x.exp(),
        Func::Ln => {
            if x <= 0.0 {
                return Err(ExprError::Domain(format!("ln({x})")));
            }
            x.ln()
        }
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Sinh => x.sinh(),
        Func::Cosh => x.cosh(),
        _ => {
            let sf = spec_fun_of(f).expect("non-elementary head maps to a special function");
            return specfun::eval(sf, x).map_err(|e| ExprError::Domain(e.to_string()));
        }
    };
    Ok(v)
}

pub(crate) fn spec_fun_of(f: Func) -> Option<SpecFun> {
    Some(match f {
        Func::BesselJ0 => SpecFun::J0,
        Func::BesselJ1 => SpecFun::J1,
        Func::BesselY0 => SpecFun::Y0,
        Func::BesselY1 => SpecFun::Y1,
        Func::BesselI0 => SpecFun::I0,
        Func::BesselI1 => SpecFun::I1,
        Func::BesselK0 => SpecFun::K0,
        Func::BesselK1 => SpecFun::K1,
        Func::Shi => SpecFun::Shi,
        Func::Chi => SpecFun::Chi,
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn bind(pairs: &[(Symbol, f64)]) -> Bindings {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn arithmetic() {
        let e = parse("x^2 + t").unwrap();
        let v = eval_num(&e, &bind(&[(Symbol::X, 2.0), (Symbol::T, 1.0)])).unwrap();
        assert_eq!(v, 5.0);
        let e = parse("x^4/8").unwrap();
        let v = eval_num(&e, &bind(&[(Symbol::X, 2.0)])).unwrap();
        assert_eq!(v, 2.0);
    }

    #[test]
    fn shi_at_zero() {
        let e = parse("shi(0)").unwrap();
        assert_eq!(eval_num(&e, &Bindings::new()).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        let e = parse("x").unwrap();
        assert!(matches!(
            eval_num(&e, &Bindings::new()),
            Err(ExprError::UnboundSymbol(_))
        ));
        let e = parse("ln(x)").unwrap();
        assert!(matches!(
            eval_num(&e, &bind(&[(Symbol::X, -1.0)])),
            Err(ExprError::Domain(_))
        ));
        let e = parse("bessely1(x)").unwrap();
        assert!(eval_num(&e, &bind(&[(Symbol::X, -1.0)])).is_err());
        let e = parse("psi(x,t)").unwrap();
        assert!(matches!(
            eval_num(&e, &bind(&[(Symbol::X, 1.0), (Symbol::T, 0.0)])),
            Err(ExprError::UnresolvedFuncSym(_))
        ));
    }

    #[test]
    fn funcsym_callbacks() {
        let e = parse("psi_x(x,t)").unwrap();
        let cb = |fs: &FuncSymbol, args: &[f64]| -> Option<f64> {
            // psi(x,t) = x^2 * t
            let (x, t) = (args[0], args[1]);
            match fs.dmi.as_slice() {
                [0, 0] => Some(x * x * t),
                [1, 0] => Some(2.0 * x * t),
                [2, 0] => Some(2.0 * t),
                [0, 1] => Some(x * x),
                [1, 1] => Some(2.0 * x),
                _ => Some(0.0),
            }
        };
        let mut table: FuncSymTable = BTreeMap::new();
        table.insert("psi".into(), &cb);
        let v = eval_num_with(&e, &bind(&[(Symbol::X, 3.0), (Symbol::T, 2.0)]), Some(&table))
            .unwrap();
        assert_eq!(v, 12.0);
    }

    #[test]
    fn named_constants() {
        let e = parse("pi").unwrap();
        assert_eq!(eval_num(&e, &Bindings::new()).unwrap(), core::f64::consts::PI);
    }
}
