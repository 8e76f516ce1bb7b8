//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term { ("+"|"-") term } ;
//! term   := factor { ("*"|"/") factor } ;
//! factor := ["-"] base ["^" factor] ;
//! base   := NUMBER | IDENT | IDENT "(" expr {"," expr} ")" | "(" expr ")" ;
//! NUMBER := INT | INT "/" INT | DECIMAL ;
//! IDENT  := letter { letter | digit | "_" } ;
//! ```
//!
//! `^` binds tightest and is right-associative, then unary minus, then
//! `*`/`/`, then `+`/`-`. Exponents must constant-fold to a rational.

use super::{Expr, Func, FuncSymbol, NamedConst, Symbol};
use crate::expr::ExprError;
use crate::rational::{parse_rational, pow_rational, Rational};
use num_traits::{One, Zero};

/// Function-symbol signatures the parser recognizes (`name(args...)`,
/// optionally with a derivative suffix such as `psi_xt`).
const FUNCSYM_SIGNATURES: [(&str, &[Symbol]); 6] = [
    ("psi", &[Symbol::X, Symbol::T]),
    ("xi1", &[Symbol::X, Symbol::T, Symbol::U(super::Jet { nx: 0, nt: 0 })]),
    ("xi2", &[Symbol::X, Symbol::T, Symbol::U(super::Jet { nx: 0, nt: 0 })]),
    ("phi", &[Symbol::X, Symbol::T, Symbol::U(super::Jet { nx: 0, nt: 0 })]),
    ("F", &[Symbol::U(super::Jet { nx: 0, nt: 0 })]),
    ("G", &[Symbol::U(super::Jet { nx: 0, nt: 0 })]),
];

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err_expected("end of input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t') | Some(b'\n') | Some(b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("`{}`", c as char),
            None => "end of input".into(),
        }
    }

    fn err_expected(&self, expected: &str) -> ExprError {
        ExprError::Syntax {
            offset: self.pos,
            expected: expected.into(),
            found: self.found(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(self.term()?.neg());
            } else {
                break;
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.factor()?;
            } else if self.eat(b'/') {
                acc = acc / self.factor()?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let negate = self.eat(b'-');
        let base = self.base()?;
        let e = if self.eat(b'^') {
            let exp_offset = self.pos;
            let exp_tree = self.factor()?;
            let exp = const_fold(&exp_tree).ok_or(ExprError::Syntax {
                offset: exp_offset,
                expected: "rational constant exponent".into(),
                found: format!("`{exp_tree}`"),
            })?;
            Expr::pow(base, exp)
        } else {
            base
        };
        Ok(if negate { e.neg() } else { e })
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err_expected("`)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            _ => Err(self.err_expected("number, identifier or `(`")),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        // "p/q" is handled by exact constant division at the term level, so
        // that "x^4/8" keeps the grammar's precedence (Power binds to the
        // integer only).
        if self.peek() == Some(b'.') {
            self.pos += 1;
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.err_expected("digit after decimal point"));
            }
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value = parse_rational(text).ok_or(ExprError::Syntax {
            offset: start,
            expected: "number".into(),
            found: format!("`{text}`"),
        })?;
        self.skip_ws();
        Ok(Expr::Const(value))
    }

    fn ident(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            self.skip_ws();
            let mut args = vec![self.expr()?];
            while self.eat(b',') {
                args.push(self.expr()?);
            }
            if !self.eat(b')') {
                return Err(self.err_expected("`,` or `)`"));
            }
            return self.call(&name, args, start);
        }
        if let Some(sym) = Symbol::from_name(&name) {
            return Ok(Expr::Var(sym));
        }
        match name.as_str() {
            "pi" => Ok(Expr::Named(NamedConst::Pi)),
            "gamma" => Ok(Expr::Named(NamedConst::Gamma)),
            _ => Err(ExprError::UnknownSymbol {
                name,
                offset: start,
            }),
        }
    }

    fn call(&self, name: &str, args: Vec<Expr>, offset: usize) -> Result<Expr, ExprError> {
        if name == "sqrt" {
            if args.len() != 1 {
                return Err(ExprError::Syntax {
                    offset,
                    expected: "one argument to sqrt".into(),
                    found: format!("{} arguments", args.len()),
                });
            }
            return Ok(Expr::sqrt(args.into_iter().next().unwrap()));
        }
        if let Some(f) = Func::from_name(name) {
            if args.len() != 1 {
                return Err(ExprError::Syntax {
                    offset,
                    expected: format!("one argument to {name}"),
                    found: format!("{} arguments", args.len()),
                });
            }
            return Ok(Expr::Apply(f, args));
        }
        if let Some(fs) = self.funcsym(name, &args, offset)? {
            return Ok(Expr::FuncSym(fs));
        }
        Err(ExprError::UnknownSymbol {
            name: name.to_string(),
            offset,
        })
    }

    fn funcsym(
        &self,
        name: &str,
        args: &[Expr],
        offset: usize,
    ) -> Result<Option<FuncSymbol>, ExprError> {
        for (base, sig_args) in FUNCSYM_SIGNATURES {
            let derivs = if name == base {
                ""
            } else if let Some(rest) = name.strip_prefix(&format!("{base}_")) {
                rest
            } else {
                continue;
            };
            let mut fs = FuncSymbol::new(base, sig_args);
            for ch in derivs.chars() {
                let var = match ch {
                    'x' => Symbol::X,
                    't' => Symbol::T,
                    'u' => Symbol::u(),
                    _ => {
                        return Err(ExprError::UnknownSymbol {
                            name: name.to_string(),
                            offset,
                        })
                    }
                };
                fs = fs.derivative(var).ok_or(ExprError::Syntax {
                    offset,
                    expected: format!("derivative of {base} in its arguments"),
                    found: format!("`_{derivs}`"),
                })?;
            }
            let expected: Vec<Expr> = sig_args.iter().map(|s| Expr::Var(*s)).collect();
            if args != expected.as_slice() {
                return Err(ExprError::Syntax {
                    offset,
                    expected: format!(
                        "{base}({})",
                        sig_args.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")
                    ),
                    found: format!(
                        "{base}({})",
                        args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
                    ),
                });
            }
            return Ok(Some(fs));
        }
        Ok(None)
    }
}

/// Fold a constant subtree to a rational, if it is one.
fn const_fold(e: &Expr) -> Option<Rational> {
    match e {
        Expr::Const(c) => Some(c.clone()),
        Expr::Sum(terms) => {
            let mut acc = Rational::zero();
            for t in terms {
                acc += const_fold(t)?;
            }
            Some(acc)
        }
        Expr::Product(factors) => {
            let mut acc = Rational::one();
            for f in factors {
                acc *= const_fold(f)?;
            }
            Some(acc)
        }
        Expr::Power(b, e) => pow_rational(&const_fold(b)?, e),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn precedence_matches_grammar() {
        // "x^4/8" is Power then division: x^4 * 1/8
        let e = parse("x^4/8").unwrap();
        assert_eq!(
            e,
            Expr::Product(vec![
                Expr::Const(rat(1, 8)),
                Expr::Power(Box::new(Expr::x()), rat(4, 1))
            ])
        );
        let e = parse("u_x^2 + x*t").unwrap();
        assert_eq!(
            e,
            Expr::Sum(vec![
                Expr::Power(Box::new(Expr::jet(1, 0)), rat(2, 1)),
                Expr::Product(vec![Expr::x(), Expr::t()]),
            ])
        );
    }

    #[test]
    fn function_application() {
        let e = parse("besselj1(x)*exp(t)").unwrap();
        assert_eq!(
            e,
            Expr::Product(vec![
                Expr::apply(Func::BesselJ1, Expr::x()),
                Expr::apply(Func::Exp, Expr::t()),
            ])
        );
    }

    #[test]
    fn unary_minus_is_product_with_minus_one() {
        let e = parse("-x").unwrap();
        assert_eq!(e, Expr::Product(vec![Expr::num(-1), Expr::x()]));
        // unary minus binds looser than ^
        assert_eq!(parse("-x^2").unwrap(), parse("-(x^2)").unwrap());
    }

    #[test]
    fn caret_is_right_associative_and_constant_folds() {
        assert_eq!(parse("x^2^3").unwrap(), Expr::pow(Expr::x(), rat(8, 1)));
        assert_eq!(parse("x^-2").unwrap(), Expr::pow(Expr::x(), rat(-2, 1)));
        assert_eq!(parse("x^(1/2)").unwrap(), Expr::pow(Expr::x(), rat(1, 2)));
        assert_eq!(parse("x^1/2").unwrap(), parse("(1/2)*x").unwrap());
        assert!(matches!(
            parse("x^t"),
            Err(ExprError::Syntax { .. })
        ));
    }

    #[test]
    fn rational_literals_fold_exactly() {
        assert_eq!(parse("1/2").unwrap(), Expr::Const(rat(1, 2)));
        assert_eq!(parse("7/16").unwrap(), Expr::Const(rat(7, 16)));
        assert_eq!(parse("0.25").unwrap(), Expr::Const(rat(1, 4)));
    }

    #[test]
    fn unknown_symbols_are_reported_with_offset() {
        match parse("x + qq") {
            Err(ExprError::UnknownSymbol { name, offset }) => {
                assert_eq!(name, "qq");
                assert_eq!(offset, 4);
            }
            other => panic!("expected UnknownSymbol, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_offset_and_expectation() {
        match parse("x + ") {
            Err(ExprError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 4);
                assert!(expected.contains("number"));
            }
            other => panic!("expected Syntax, got {other:?}"),
        }
        assert!(parse("(x").is_err());
        assert!(parse("shi(x,t)").is_err());
    }

    #[test]
    fn funcsyms_parse_with_derivative_suffix() {
        let e = parse("psi_xt(x,t)").unwrap();
        match e {
            Expr::FuncSym(fs) => {
                assert_eq!(fs.name, "psi");
                assert_eq!(fs.dmi, vec![1, 1]);
            }
            other => panic!("{other:?}"),
        }
        assert!(parse("psi(x,u)").is_err());
        assert!(parse("F(u)").is_ok());
    }

    #[test]
    fn sqrt_becomes_half_power() {
        assert_eq!(parse("sqrt(x)").unwrap(), Expr::pow(Expr::x(), rat(1, 2)));
    }
}
