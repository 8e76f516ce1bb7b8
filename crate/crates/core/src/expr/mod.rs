//! Immutable expression trees over the fixed symbol alphabet of the
//! Grad-Shafranov analysis: base variables `x`, `t`, `u`, jet coordinates up
//! to order three, the free constants `C1`, `C2`, the group parameter `eps`,
//! the classification coefficients `a1..a4`, elementary and special
//! function applications, and opaque function symbols (`psi(x,t)`,
//! `xi1(x,t,u)`, `F(u)`, ...) carrying a derivative multi-index.

pub(crate) mod normal;
mod deriv;
mod equiv;
mod eval;

mod parser;
mod printer;

pub use deriv::diff;
pub use equiv::{equiv, equiv_with, EquivVerdict, SampleDomain};
pub use eval::{eval_num, eval_num_with, Bindings, FuncSymTable};
pub use normal::{as_jet_polynomial, normalize, JetTerm};
pub use parser::parse;

use crate::rational::{int, is_integer, rat, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Jet multi-index: how many `x`- and `t`-derivatives have been applied to
/// `u`. `(0,0)` is `u` itself; total order is capped at 3 by the alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Jet {
    pub nx: u8,
    pub nt: u8,
}

impl Jet {
    pub const MAX_ORDER: u8 = 3;

    pub fn new(nx: u8, nt: u8) -> Option<Jet> {
        if nx + nt <= Self::MAX_ORDER {
            Some(Jet { nx, nt })
        } else {
            None
        }
    }

    pub fn order(&self) -> u8 {
        self.nx + self.nt
    }

    pub fn raised(&self, dir: Dir) -> Option<Jet> {
        match dir {
            Dir::X => Jet::new(self.nx + 1, self.nt),
            Dir::T => Jet::new(self.nx, self.nt + 1),
        }
    }
}

/// Direction of a total derivative.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    X,
    T,
}

/// The declared variable alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    X,
    T,
    /// `u` and its jet coordinates (`U(Jet{0,0})` is `u` itself).
    U(Jet),
    C1,
    C2,
    Eps,
    /// Classification coefficients `a1..a4` (index 1..=4).
    A(u8),
}

impl Symbol {
    pub const fn u() -> Symbol {
        Symbol::U(Jet { nx: 0, nt: 0 })
    }

    pub fn jet(nx: u8, nt: u8) -> Symbol {
        Symbol::U(Jet::new(nx, nt).expect("jet order within alphabet"))
    }

    pub fn name(&self) -> String {
        match self {
            Symbol::X => "x".into(),
            Symbol::T => "t".into(),
            Symbol::U(j) if j.order() == 0 => "u".into(),
            Symbol::U(j) => {
                let mut s = String::from("u_");
                for _ in 0..j.nx {
                    s.push('x');
                }
                for _ in 0..j.nt {
                    s.push('t');
                }
                s
            }
            Symbol::C1 => "C1".into(),
            Symbol::C2 => "C2".into(),
            Symbol::Eps => "eps".into(),
            Symbol::A(i) => format!("a{i}"),
        }
    }

    /// Inverse of [`Symbol::name`]; `None` for identifiers outside the alphabet.
    pub fn from_name(name: &str) -> Option<Symbol> {
        match name {
            "x" => Some(Symbol::X),
            "t" => Some(Symbol::T),
            "u" => Some(Symbol::u()),
            "C1" => Some(Symbol::C1),
            "C2" => Some(Symbol::C2),
            "eps" => Some(Symbol::Eps),
            "a1" => Some(Symbol::A(1)),
            "a2" => Some(Symbol::A(2)),
            "a3" => Some(Symbol::A(3)),
            "a4" => Some(Symbol::A(4)),
            _ => {
                let rest = name.strip_prefix("u_")?;
                let mut nx = 0u8;
                let mut nt = 0u8;
                let mut seen_t = false;
                for ch in rest.chars() {
                    match ch {
                        'x' if !seen_t => nx += 1,
                        't' => {
                            seen_t = true;
                            nt += 1;
                        }
                        _ => return None,
                    }
                }
                if rest.is_empty() {
                    return None;
                }
                Jet::new(nx, nt).map(Symbol::U)
            }
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Named transcendental constants.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NamedConst {
    Pi,
    Gamma,
}

impl NamedConst {
    pub fn name(&self) -> &'static str {
        match self {
            NamedConst::Pi => "pi",
            NamedConst::Gamma => "gamma",
        }
    }
}

/// Known single-argument function heads.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
    BesselJ0,
    BesselJ1,
    BesselY0,
    BesselY1,
    BesselI0,
    BesselI1,
    BesselK0,
    BesselK1,
    Shi,
    Chi,
}

impl Func {
    pub const ALL: [Func; 16] = [
        Func::Exp,
        Func::Ln,
        Func::Sin,
        Func::Cos,
        Func::Sinh,
        Func::Cosh,
        Func::BesselJ0,
        Func::BesselJ1,
        Func::BesselY0,
        Func::BesselY1,
        Func::BesselI0,
        Func::BesselI1,
        Func::BesselK0,
        Func::BesselK1,
        Func::Shi,
        Func::Chi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::BesselJ0 => "besselj0",
            Func::BesselJ1 => "besselj1",
            Func::BesselY0 => "bessely0",
            Func::BesselY1 => "bessely1",
            Func::BesselI0 => "besseli0",
            Func::BesselI1 => "besseli1",
            Func::BesselK0 => "besselk0",
            Func::BesselK1 => "besselk1",
            Func::Shi => "shi",
            Func::Chi => "chi",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// An opaque function symbol with the partial derivatives already applied
/// recorded as a multi-index over its argument variables (order of
/// differentiation is immaterial, so only counts are kept).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FuncSymbol {
    pub name: String,
    pub args: Vec<Symbol>,
    /// Derivative counts, one per entry of `args`.
    pub dmi: Vec<u8>,
}

impl FuncSymbol {
    pub fn new(name: &str, args: &[Symbol]) -> FuncSymbol {
        FuncSymbol {
            name: name.to_string(),
            args: args.to_vec(),
            dmi: vec![0; args.len()],
        }
    }

    pub fn derivative(&self, v: Symbol) -> Option<FuncSymbol> {
        let pos = self.args.iter().position(|a| *a == v)?;
        let mut d = self.clone();
        d.dmi[pos] += 1;
        Some(d)
    }

    pub fn total_order(&self) -> u32 {
        self.dmi.iter().map(|&d| d as u32).sum()
    }

    /// Display name with the derivative suffix, e.g. `psi_xt`.
    pub fn suffixed_name(&self) -> String {
        let mut s = self.name.clone();
        if self.total_order() > 0 {
            s.push('_');
            for (arg, &count) in self.args.iter().zip(&self.dmi) {
                let letter = arg.name();
                for _ in 0..count {
                    s.push_str(&letter);
                }
            }
        }
        s
    }
}

/// Expression tree. Construction goes through the smart constructors below,
/// which flatten nested sums/products and drop neutral elements; full
/// canonicalization is [`normalize`]'s job.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Expr {
    Const(Rational),
    Named(NamedConst),
    Var(Symbol),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, Rational),
    Apply(Func, Vec<Expr>),
    FuncSym(FuncSymbol),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("unknown symbol `{name}` at byte {offset}")]
    UnknownSymbol { name: String, offset: usize },
    #[error("symbolic division by zero")]
    DivisionByZeroSymbolic,
    #[error("unbound symbol `{0}` in numeric evaluation")]
    UnboundSymbol(String),
    #[error("domain error evaluating {0}")]
    Domain(String),
    #[error("unresolved function symbol `{0}`")]
    UnresolvedFuncSym(String),
    #[error("jet order overflow: total derivative would exceed order {0}")]
    OrderOverflow(u8),
    #[error("every sampled point failed to evaluate: {0}")]
    AllSamplesFailed(String),
    #[error("non-finite value produced during evaluation")]
    NonFinite,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Const(int(0))
    }

    pub fn one() -> Expr {
        Expr::Const(int(1))
    }

    pub fn num(n: i64) -> Expr {
        Expr::Const(int(n))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::Const(rat(n, d))
    }

    pub fn var(s: Symbol) -> Expr {
        Expr::Var(s)
    }

    pub fn x() -> Expr {
        Expr::Var(Symbol::X)
    }

    pub fn t() -> Expr {
        Expr::Var(Symbol::T)
    }

    pub fn u() -> Expr {
        Expr::Var(Symbol::u())
    }

    pub fn jet(nx: u8, nt: u8) -> Expr {
        Expr::Var(Symbol::jet(nx, nt))
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(terms.len());
        let mut acc = int(0);
        for term in terms {
            match term {
                Expr::Sum(inner) => {
                    for e in inner {
                        match e {
                            Expr::Const(c) => acc += c,
                            other => flat.push(other),
                        }
                    }
                }
                Expr::Const(c) => acc += c,
                other => flat.push(other),
            }
        }
        if !acc.is_zero() {
            flat.push(Expr::Const(acc));
        }
        match flat.len() {
            0 => Expr::zero(),
            1 => flat.pop().unwrap(),
            _ => Expr::Sum(flat),
        }
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(factors.len());
        let mut acc = int(1);
        for factor in factors {
            match factor {
                Expr::Product(inner) => {
                    for e in inner {
                        match e {
                            Expr::Const(c) => acc *= c,
                            other => flat.push(other),
                        }
                    }
                }
                Expr::Const(c) => acc *= c,
                other => flat.push(other),
            }
        }
        if acc.is_zero() {
            return Expr::zero();
        }
        if !acc.is_one() {
            flat.insert(0, Expr::Const(acc));
        }
        match flat.len() {
            0 => Expr::one(),
            1 => flat.pop().unwrap(),
            _ => Expr::Product(flat),
        }
    }

    pub fn pow(base: Expr, exp: Rational) -> Expr {
        if exp.is_zero() {
            return Expr::one();
        }
        if exp.is_one() {
            return base;
        }
        match base {
            Expr::Const(c) => {
                if let Some(v) = crate::rational::pow_rational(&c, &exp) {
                    return Expr::Const(v);
                }
                Expr::Power(Box::new(Expr::Const(c)), exp)
            }
            Expr::Power(inner, e2) if is_integer(&exp) || is_integer(&e2) => {
                // (b^a)^n and (b^n)^a fold; fractional-on-fractional stays nested
                Expr::pow(*inner, e2 * exp)
            }
            other => Expr::Power(Box::new(other), exp),
        }
    }

    pub fn sqrt(e: Expr) -> Expr {
        Expr::pow(e, rat(1, 2))
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        Expr::Apply(f, vec![arg])
    }

    pub fn funcsym(name: &str, args: &[Symbol]) -> Expr {
        Expr::FuncSym(FuncSymbol::new(name, args))
    }

    pub fn neg(self) -> Expr {
        Expr::product(vec![Expr::num(-1), self])
    }

    pub fn recip(self) -> Expr {
        Expr::pow(self, int(-1))
    }

    /// All alphabet symbols appearing in the tree (FuncSym argument lists
    /// do not count; only actual `Var` leaves do).
    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut set = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Var(s) = e {
                set.insert(*s);
            }
        });
        set
    }

    /// Symbols the expression can depend on: `Var` leaves plus the argument
    /// variables of any function symbols (a `FuncSym` varies with its
    /// arguments even though they are not `Var` leaves).
    pub fn dependency_symbols(&self) -> BTreeSet<Symbol> {
        let mut set = BTreeSet::new();
        self.walk(&mut |e| match e {
            Expr::Var(s) => {
                set.insert(*s);
            }
            Expr::FuncSym(fs) => {
                set.extend(fs.args.iter().copied());
            }
            _ => {}
        });
        set
    }

    /// Distinct function-symbol names in the tree.
    pub fn funcsym_names(&self) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::FuncSym(fs) = e {
                set.insert(fs.name.clone());
            }
        });
        set
    }

    pub fn contains_funcsym(&self) -> bool {
        !self.funcsym_names().is_empty()
    }

    fn walk(&self, visit: &mut impl FnMut(&Expr)) {
        visit(self);
        match self {
            Expr::Sum(es) | Expr::Product(es) | Expr::Apply(_, es) => {
                for e in es {
                    e.walk(visit);
                }
            }
            Expr::Power(b, _) => b.walk(visit),
            _ => {}
        }
    }

    /// Replace every occurrence of `Var(sym)` by `replacement`.
    pub fn substitute(&self, sym: Symbol, replacement: &Expr) -> Expr {
        self.map(&mut |e| match e {
            Expr::Var(s) if *s == sym => Some(replacement.clone()),
            _ => None,
        })
    }

    /// Replace a function symbol by a concrete expression: every occurrence
    /// of `name` with derivative multi-index `J` becomes the `J`-th partial
    /// derivative of `replacement`.
    pub fn substitute_funcsym(&self, name: &str, replacement: &Expr) -> Expr {
        self.map(&mut |e| match e {
            Expr::FuncSym(fs) if fs.name == name => {
                let mut out = replacement.clone();
                for (arg, &count) in fs.args.iter().zip(&fs.dmi) {
                    for _ in 0..count {
                        out = diff(&out, *arg);
                    }
                }
                Some(out)
            }
            _ => None,
        })
    }

    /// Bottom-up rewrite; `f` returning `Some` replaces the node (children
    /// of the replacement are not revisited).
    pub fn map(&self, f: &mut impl FnMut(&Expr) -> Option<Expr>) -> Expr {
        if let Some(replaced) = f(self) {
            return replaced;
        }
        match self {
            Expr::Sum(es) => Expr::sum(es.iter().map(|e| e.map(f)).collect()),
            Expr::Product(es) => Expr::product(es.iter().map(|e| e.map(f)).collect()),
            Expr::Power(b, e) => Expr::pow(b.map(f), e.clone()),
            Expr::Apply(func, es) => Expr::Apply(*func, es.iter().map(|e| e.map(f)).collect()),
            leaf => leaf.clone(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", printer::print(self))
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, rhs])
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, rhs.neg()])
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product(vec![self, rhs])
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::product(vec![self, rhs.recip()])
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

pub use printer::print;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_names_round_trip() {
        let syms = [
            Symbol::X,
            Symbol::T,
            Symbol::u(),
            Symbol::jet(1, 0),
            Symbol::jet(0, 1),
            Symbol::jet(2, 0),
            Symbol::jet(1, 1),
            Symbol::jet(0, 2),
            Symbol::jet(3, 0),
            Symbol::jet(2, 1),
            Symbol::jet(1, 2),
            Symbol::jet(0, 3),
            Symbol::C1,
            Symbol::C2,
            Symbol::Eps,
            Symbol::A(1),
            Symbol::A(4),
        ];
        for s in syms {
            assert_eq!(Symbol::from_name(&s.name()), Some(s), "{}", s.name());
        }
        assert_eq!(Symbol::from_name("u_tx"), None, "jets spell x before t");
        assert_eq!(Symbol::from_name("u_xxxx"), None, "order cap");
        assert_eq!(Symbol::from_name("q"), None);
    }

    #[test]
    fn constructors_flatten() {
        let e = Expr::sum(vec![
            Expr::num(1),
            Expr::sum(vec![Expr::x(), Expr::num(2)]),
        ]);
        assert_eq!(e, Expr::Sum(vec![Expr::x(), Expr::num(3)]));
        let p = Expr::product(vec![Expr::num(0), Expr::x()]);
        assert!(p.is_zero_literal());
    }

    #[test]
    fn funcsym_derivative_tracks_multi_index() {
        let psi = FuncSymbol::new("psi", &[Symbol::X, Symbol::T]);
        let d = psi.derivative(Symbol::X).unwrap().derivative(Symbol::T).unwrap();
        assert_eq!(d.dmi, vec![1, 1]);
        assert_eq!(d.suffixed_name(), "psi_xt");
        assert!(psi.derivative(Symbol::u()).is_none());
    }
}
