//! Exact partial differentiation. Every symbol other than the
//! differentiation variable (jet coordinates included) is independent;
//! function symbols accumulate derivative multi-indices; special-function
//! heads follow the closed order-0/1 recurrences.

use super::{Expr, Func, Symbol};
use crate::rational::int;

pub fn diff(e: &Expr, v: Symbol) -> Expr {
    match e {
        Expr::Const(_) | Expr::Named(_) => Expr::zero(),
        Expr::Var(s) => {
            if *s == v {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Expr::Sum(terms) => Expr::sum(terms.iter().map(|t| diff(t, v)).collect()),
        Expr::Product(factors) => {
            let mut terms = Vec::with_capacity(factors.len());
            for (i, fi) in factors.iter().enumerate() {
                let dfi = diff(fi, v);
                if dfi.is_zero_literal() {
                    continue;
                }
                let mut fs: Vec<Expr> = Vec::with_capacity(factors.len());
                fs.extend(factors.iter().take(i).cloned());
                fs.push(dfi);
                fs.extend(factors.iter().skip(i + 1).cloned());
                terms.push(Expr::product(fs));
            }
            Expr::sum(terms)
        }
        Expr::Power(base, exp) => {
            let db = diff(base, v);
            if db.is_zero_literal() {
                return Expr::zero();
            }
            Expr::Const(exp.clone())
                * Expr::pow((**base).clone(), exp.clone() - int(1))
                * db
        }
        Expr::Apply(f, args) => {
            let g = &args[0];
            let dg = diff(g, v);
            if dg.is_zero_literal() {
                return Expr::zero();
            }
            outer_derivative(*f, g) * dg
        }
        Expr::FuncSym(fs) => match fs.derivative(v) {
            Some(d) => Expr::FuncSym(d),
            None => Expr::zero(),
        },
    }
}

/// d/dg of a function head, expressed through the order-0/1 pairs.
fn outer_derivative(f: Func, g: &Expr) -> Expr {
    let g = g.clone();
    match f {
        Func::Exp => Expr::apply(Func::Exp, g),
        Func::Ln => g.recip(),
        Func::Sin => Expr::apply(Func::Cos, g),
        Func::Cos => Expr::apply(Func::Sin, g).neg(),
        Func::Sinh => Expr::apply(Func::Cosh, g),
        Func::Cosh => Expr::apply(Func::Sinh, g),
        Func::BesselJ0 => Expr::apply(Func::BesselJ1, g).neg(),
        Func::BesselJ1 => {
            Expr::apply(Func::BesselJ0, g.clone()) - Expr::apply(Func::BesselJ1, g.clone()) / g
        }
        Func::BesselY0 => Expr::apply(Func::BesselY1, g).neg(),
        Func::BesselY1 => {
            Expr::apply(Func::BesselY0, g.clone()) - Expr::apply(Func::BesselY1, g.clone()) / g
        }
        Func::BesselI0 => Expr::apply(Func::BesselI1, g),
        Func::BesselI1 => {
            Expr::apply(Func::BesselI0, g.clone()) - Expr::apply(Func::BesselI1, g.clone()) / g
        }
        Func::BesselK0 => Expr::apply(Func::BesselK1, g).neg(),
        Func::BesselK1 => {
            (Expr::apply(Func::BesselK0, g.clone()) + Expr::apply(Func::BesselK1, g.clone()) / g)
                .neg()
        }
        Func::Shi => Expr::apply(Func::Sinh, g.clone()) / g,
        Func::Chi => Expr::apply(Func::Cosh, g.clone()) / g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{normalize, parse};

    fn d(src: &str, v: Symbol) -> Expr {
        normalize(&diff(&parse(src).unwrap(), v)).unwrap()
    }

    fn norm(src: &str) -> Expr {
        normalize(&parse(src).unwrap()).unwrap()
    }

    #[test]
    fn power_rule() {
        assert_eq!(d("x^4/2", Symbol::X), norm("2*x^3"));
        assert_eq!(d("u - x^4/8", Symbol::u()), Expr::one());
        assert_eq!(d("x^(1/2)", Symbol::X), norm("1/2*x^(-1/2)"));
    }

    #[test]
    fn jets_are_independent_symbols() {
        assert_eq!(d("x*u_t^2", Symbol::jet(0, 1)), norm("2*x*u_t"));
        assert_eq!(d("u_x", Symbol::u()), Expr::zero());
    }

    #[test]
    fn bessel_recurrences() {
        assert_eq!(
            d("besselj1(x)", Symbol::X),
            norm("besselj0(x) - besselj1(x)/x")
        );
        assert_eq!(d("besselj0(x)", Symbol::X), norm("-besselj1(x)"));
        assert_eq!(
            d("besselk1(x)", Symbol::X),
            norm("-besselk0(x) - besselk1(x)/x")
        );
        assert_eq!(d("besseli0(x)", Symbol::X), norm("besseli1(x)"));
    }

    #[test]
    fn hyperbolic_integrals_chain_rule() {
        assert_eq!(
            d("shi(1/2*x^2)", Symbol::X),
            norm("sinh(1/2*x^2)*x/(1/2*x^2)")
        );
        assert_eq!(
            d("chi(1/2*x^2)", Symbol::X),
            norm("cosh(1/2*x^2)*2/x")
        );
    }

    #[test]
    fn funcsym_derivatives_increment_multi_index() {
        let psi = parse("psi(x,t)").unwrap();
        let once = diff(&psi, Symbol::X);
        let twice = diff(&once, Symbol::T);
        assert_eq!(twice, parse("psi_xt(x,t)").unwrap());
        assert_eq!(diff(&psi, Symbol::u()), Expr::zero());
    }
}
