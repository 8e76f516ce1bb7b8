//! Plain-text rendering. Output always re-parses under the published
//! grammar to an expression with the same normal form.

use super::{Expr, Func};
use crate::rational::{is_integer, Rational};
use num_traits::{One, Signed};

pub fn print(e: &Expr) -> String {
    match e {
        Expr::Sum(terms) if terms.is_empty() => "0".into(),
        Expr::Sum(terms) => {
            let mut out = String::new();
            for (i, term) in terms.iter().enumerate() {
                let (neg, body) = signed_body(term);
                if i == 0 {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push(if neg { '-' } else { '+' });
                }
                out.push_str(&body);
            }
            out
        }
        Expr::Product(factors) if factors.is_empty() => "1".into(),
        Expr::Product(_) => {
            let (neg, body) = signed_body(e);
            if neg {
                format!("-{body}")
            } else {
                body
            }
        }
        Expr::Power(base, exp) => power_str(base, exp),
        Expr::Const(c) => rational_str(c),
        Expr::Named(n) => n.name().into(),
        Expr::Var(s) => s.name(),
        Expr::Apply(f, args) => apply_str(*f, args),
        Expr::FuncSym(fs) => {
            let args: Vec<String> = fs.args.iter().map(|a| a.name()).collect();
            format!("{}({})", fs.suffixed_name(), args.join(","))
        }
    }
}

fn rational_str(c: &Rational) -> String {
    if is_integer(c) {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Split a leading `-1` (or negative constant) out of a term so sums can be
/// joined with `-` instead of `+-1*`.
fn signed_body(term: &Expr) -> (bool, String) {
    match term {
        Expr::Const(c) if c.is_negative() => (true, rational_str(&-c.clone())),
        Expr::Product(factors) => {
            if let Some(Expr::Const(c)) = factors.first() {
                if c.is_negative() {
                    let abs = -c.clone();
                    let mut rest: Vec<Expr> = factors[1..].to_vec();
                    if !abs.is_one() || rest.is_empty() {
                        rest.insert(0, Expr::Const(abs));
                    }
                    return (true, product_str(&rest));
                }
            }
            (false, product_str(factors))
        }
        other => (false, print(other)),
    }
}

fn product_str(factors: &[Expr]) -> String {
    // Factors with negative exponents render as trailing divisions so that
    // monomials read naturally ("u_x/x^2").
    let mut heads: Vec<String> = Vec::new();
    let mut tails: Vec<String> = Vec::new();
    for f in factors {
        match f {
            Expr::Power(base, exp) if exp.is_negative() => {
                let inv = -exp.clone();
                // a divisor binds the whole factor: products need parens
                if inv.is_one() && matches!(**base, Expr::Product(_)) {
                    tails.push(format!("({})", print(base)));
                } else {
                    tails.push(power_str(base, &inv));
                }
            }
            other => heads.push(factor_str(other)),
        }
    }
    let mut out = if heads.is_empty() {
        "1".to_string()
    } else {
        heads.join("*")
    };
    for t in tails {
        out.push('/');
        out.push_str(&t);
    }
    out
}

fn factor_str(e: &Expr) -> String {
    match e {
        Expr::Sum(_) => format!("({})", print(e)),
        Expr::Const(c) if c.is_negative() => format!("({})", rational_str(c)),
        _ => print(e),
    }
}

fn power_str(base: &Expr, exp: &Rational) -> String {
    if exp.is_one() {
        return factor_str(base);
    }
    let base_str = match base {
        Expr::Var(_) | Expr::Named(_) | Expr::Apply(..) | Expr::FuncSym(_) => print(base),
        _ => format!("({})", print(base)),
    };
    if is_integer(exp) && !exp.is_negative() {
        format!("{base_str}^{}", exp.numer())
    } else {
        format!("{base_str}^({})", rational_str(exp))
    }
}

fn apply_str(f: Func, args: &[Expr]) -> String {
    let rendered: Vec<String> = args.iter().map(print).collect();
    format!("{}({})", f.name(), rendered.join(","))
}
