//! Canonical form: a rational function over "atom" monomials.
//!
//! Atoms are variables, jet coordinates, named constants, function
//! applications keyed by their normalized arguments, function symbols, and
//! composite bases raised to non-integer powers. Exponents are exact
//! rationals, so `x^(1/2)*x^2` merges to `x^(5/2)`. Applications stay
//! opaque: nothing here knows that `exp(u)*exp(u)` could become `exp(2*u)`,
//! or that `sqrt((t^2+x^2)/x^2)*x` equals `sqrt(t^2+x^2)` for positive `x` —
//! those equalities fall back to the sampling oracle in `equiv`.

use super::{Expr, Func, FuncSymbol, NamedConst, Symbol};
use crate::expr::ExprError;
use crate::rational::{as_i64, int, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub(crate) enum Atom {
    Sym(Symbol),
    Named(NamedConst),
    /// Application with normalized argument trees.
    Apply(Func, Vec<Expr>),
    FuncSym(FuncSymbol),
    /// Composite base carrying non-integer exponents; the exponent lives in
    /// the monomial.
    PowBase(Box<Expr>),
}

/// atom -> exponent; exponents are nonzero.
pub(crate) type Monomial = BTreeMap<Atom, Rational>;

/// monomial -> coefficient; coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct Poly(pub BTreeMap<Monomial, Rational>);

impl Poly {
    fn zero() -> Poly {
        Poly(BTreeMap::new())
    }

    fn constant(c: Rational) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.0.insert(Monomial::new(), c);
        }
        p
    }

    fn one() -> Poly {
        Poly::constant(int(1))
    }

    fn atom(a: Atom, exp: Rational) -> Poly {
        if exp.is_zero() {
            return Poly::one();
        }
        let mut m = Monomial::new();
        m.insert(a, exp);
        let mut p = Poly::zero();
        p.0.insert(m, int(1));
        p
    }

    fn monomial(m: Monomial, c: Rational) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.0.insert(m, c);
        }
        p
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1
            && self
                .0
                .get(&Monomial::new())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.0 {
            let entry = self.0.entry(m.clone()).or_insert_with(|| int(0));
            *entry += c;
            if entry.is_zero() {
                self.0.remove(m);
            }
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                let m = mul_monomials(m1, m2);
                let c = c1 * c2;
                let entry = out.0.entry(m.clone()).or_insert_with(|| int(0));
                *entry += c;
                if entry.is_zero() {
                    out.0.remove(&m);
                }
            }
        }
        out
    }

    fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    fn scale(&mut self, c: &Rational) {
        for v in self.0.values_mut() {
            *v *= c;
        }
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = a.clone();
    for (atom, exp) in b {
        let e = out.entry(atom.clone()).or_insert_with(|| int(0));
        *e += exp;
        if e.is_zero() {
            out.remove(atom);
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct NormalForm {
    pub num: Poly,
    pub den: Poly,
}

impl NormalForm {
    fn constant(c: Rational) -> NormalForm {
        NormalForm {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    fn from_poly(p: Poly) -> NormalForm {
        NormalForm {
            num: p,
            den: Poly::one(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &NormalForm) -> NormalForm {
        if self.den == other.den {
            let mut num = self.num.clone();
            num.add_assign(&other.num);
            return NormalForm {
                num,
                den: self.den.clone(),
            };
        }
        let mut num = self.num.mul(&other.den);
        num.add_assign(&other.num.mul(&self.den));
        NormalForm {
            num,
            den: self.den.mul(&other.den),
        }
    }

    fn mul(&self, other: &NormalForm) -> NormalForm {
        NormalForm {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    fn pow_int(&self, n: i64) -> Result<NormalForm, ExprError> {
        if n >= 0 {
            Ok(NormalForm {
                num: self.num.pow(n as u32),
                den: self.den.pow(n as u32),
            })
        } else {
            if self.num.is_zero() {
                return Err(ExprError::DivisionByZeroSymbolic);
            }
            Ok(NormalForm {
                num: self.den.pow((-n) as u32),
                den: self.num.pow((-n) as u32),
            })
        }
    }

    /// Canonical representative: exponents shifted so each atom's minimum
    /// exponent across numerator and denominator is zero, denominator's
    /// leading coefficient scaled to one.
    fn canonical(mut self) -> Result<NormalForm, ExprError> {
        if self.den.is_zero() {
            return Err(ExprError::DivisionByZeroSymbolic);
        }
        if self.num.is_zero() {
            return Ok(NormalForm {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let mut mins: BTreeMap<Atom, Rational> = BTreeMap::new();
        let all_monos = self.num.0.keys().chain(self.den.0.keys());
        let mut seen: Vec<&Monomial> = Vec::new();
        for m in all_monos {
            seen.push(m);
            for (atom, exp) in m {
                let entry = mins.entry(atom.clone()).or_insert_with(|| exp.clone());
                if *exp < *entry {
                    *entry = exp.clone();
                }
            }
        }
        // An atom missing from some monomial has exponent zero there.
        for (atom, min) in mins.iter_mut() {
            if seen.iter().any(|m| !m.contains_key(atom)) && min.is_positive() {
                *min = int(0);
            }
        }
        mins.retain(|_, v| !v.is_zero());
        if !mins.is_empty() {
            let shift = |p: &Poly| -> Poly {
                let mut out = Poly::zero();
                for (m, c) in &p.0 {
                    let mut nm = m.clone();
                    for (atom, min) in &mins {
                        let e = nm.entry(atom.clone()).or_insert_with(|| int(0));
                        *e -= min;
                        if e.is_zero() {
                            nm.remove(atom);
                        }
                    }
                    out.0.insert(nm, c.clone());
                }
                out
            };
            self.num = shift(&self.num);
            self.den = shift(&self.den);
        }
        let lead = self
            .den
            .0
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        if !lead.is_one() {
            let inv = int(1) / lead;
            self.num.scale(&inv);
            self.den.scale(&inv);
        }
        Ok(self)
    }
}

pub(crate) fn nf(e: &Expr) -> Result<NormalForm, ExprError> {
    match e {
        Expr::Const(c) => Ok(NormalForm::constant(c.clone())),
        Expr::Named(n) => Ok(NormalForm::from_poly(Poly::atom(Atom::Named(*n), int(1)))),
        Expr::Var(s) => Ok(NormalForm::from_poly(Poly::atom(Atom::Sym(*s), int(1)))),
        Expr::Sum(terms) => {
            let mut acc = NormalForm::constant(int(0));
            for t in terms {
                acc = acc.add(&nf(t)?);
            }
            Ok(acc)
        }
        Expr::Product(factors) => {
            let mut acc = NormalForm::constant(int(1));
            for f in factors {
                acc = acc.mul(&nf(f)?);
                if acc.num.is_zero() && !acc.den.is_zero() {
                    acc = NormalForm::constant(int(0));
                }
            }
            Ok(acc)
        }
        Expr::Power(base, exp) => {
            let base_nf = nf(base)?;
            if let Some(n) = as_i64(exp) {
                return base_nf.pow_int(n);
            }
            fractional_power(base_nf, exp)
        }
        Expr::Apply(f, args) => {
            let normalized: Result<Vec<Expr>, ExprError> =
                args.iter().map(normalize).collect();
            let normalized = normalized?;
            if let Some(folded) = fold_exact_point(*f, &normalized) {
                return Ok(NormalForm::constant(folded));
            }
            Ok(NormalForm::from_poly(Poly::atom(
                Atom::Apply(*f, normalized),
                int(1),
            )))
        }
        Expr::FuncSym(fs) => Ok(NormalForm::from_poly(Poly::atom(
            Atom::FuncSym(fs.clone()),
            int(1),
        ))),
    }
}

/// The few exact special values the normal form knows: function heads at
/// the rational points where the value is itself rational.
fn fold_exact_point(f: Func, args: &[Expr]) -> Option<Rational> {
    let c = match args {
        [Expr::Const(c)] => c,
        _ => return None,
    };
    use num_traits::One;
    match f {
        Func::Exp | Func::Cos | Func::Cosh if c.is_zero() => Some(int(1)),
        Func::Sin | Func::Sinh | Func::Shi if c.is_zero() => Some(int(0)),
        Func::Ln if c.is_one() => Some(int(0)),
        Func::BesselJ0 | Func::BesselI0 if c.is_zero() => Some(int(1)),
        Func::BesselJ1 | Func::BesselI1 if c.is_zero() => Some(int(0)),
        _ => None,
    }
}

/// Non-integer power of a normalized base. A base that reduces to a single
/// monomial distributes the exponent over its dimensions (extracting the
/// coefficient only when its rational root is exact); anything else becomes
/// an opaque power atom keyed by the canonical base tree.
fn fractional_power(base: NormalForm, exp: &Rational) -> Result<NormalForm, ExprError> {
    let base = base.canonical()?;
    if base.is_zero() {
        if exp.is_positive() {
            return Ok(NormalForm::constant(int(0)));
        }
        return Err(ExprError::DivisionByZeroSymbolic);
    }
    if base.num.0.len() == 1 && base.den.0.len() == 1 {
        let (num_m, num_c) = base.num.0.iter().next().unwrap();
        let (den_m, den_c) = base.den.0.iter().next().unwrap();
        let coeff = num_c / den_c;
        let mut mono = num_m.clone();
        for (atom, e) in den_m {
            let entry = mono.entry(atom.clone()).or_insert_with(|| int(0));
            *entry -= e;
            if entry.is_zero() {
                mono.remove(atom);
            }
        }
        if let Some(croot) = crate::rational::pow_rational(&coeff, exp) {
            let mut scaled = Monomial::new();
            for (atom, e) in mono {
                scaled.insert(atom, e * exp);
            }
            return Ok(NormalForm::from_poly(Poly::monomial(scaled, croot)));
        }
    }
    let key = to_expr(&base);
    Ok(NormalForm::from_poly(Poly::atom(
        Atom::PowBase(Box::new(key)),
        exp.clone(),
    )))
}

/// Canonical expression tree for a normal form.
pub(crate) fn to_expr(form: &NormalForm) -> Expr {
    if form.num.is_zero() {
        return Expr::zero();
    }
    if form.den.is_one() {
        return poly_to_expr(&form.num);
    }
    if form.den.0.len() == 1 {
        // Fold a monomial denominator into the numerator so quotients print
        // as plain monomial divisions.
        let (den_m, den_c) = form.den.0.iter().next().unwrap();
        let mut folded = Poly::zero();
        for (m, c) in &form.num.0 {
            let mut nm = m.clone();
            for (atom, e) in den_m {
                let entry = nm.entry(atom.clone()).or_insert_with(|| int(0));
                *entry -= e;
                if entry.is_zero() {
                    nm.remove(atom);
                }
            }
            folded.0.insert(nm, c / den_c);
        }
        return poly_to_expr(&folded);
    }
    let num = poly_to_expr(&form.num);
    let den = poly_to_expr(&form.den);
    num * den.recip()
}

fn poly_to_expr(p: &Poly) -> Expr {
    let terms: Vec<Expr> = p
        .0
        .iter()
        .rev()
        .map(|(m, c)| monomial_to_expr(m, c))
        .collect();
    Expr::sum(terms)
}

fn monomial_to_expr(m: &Monomial, c: &Rational) -> Expr {
    let mut factors: Vec<Expr> = Vec::with_capacity(m.len() + 1);
    if !c.is_one() || m.is_empty() {
        factors.push(Expr::Const(c.clone()));
    }
    for (atom, exp) in m {
        let base = match atom {
            Atom::Sym(s) => Expr::Var(*s),
            Atom::Named(n) => Expr::Named(*n),
            Atom::Apply(f, args) => Expr::Apply(*f, args.clone()),
            Atom::FuncSym(fs) => Expr::FuncSym(fs.clone()),
            Atom::PowBase(b) => (**b).clone(),
        };
        factors.push(raw_pow(base, exp.clone()));
    }
    Expr::product(factors)
}

/// Power node without the smart-constructor folding; the normal form has
/// already decided the exponent structure.
fn raw_pow(base: Expr, exp: Rational) -> Expr {
    if exp.is_one() {
        base
    } else {
        Expr::Power(Box::new(base), exp)
    }
}

/// Normalize to the canonical tree; `0` normalizes to the literal `0`.
pub fn normalize(e: &Expr) -> Result<Expr, ExprError> {
    Ok(to_expr(&nf(e)?.canonical()?))
}

/// One term of a jet-polynomial decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct JetTerm {
    /// Exponents aligned with the jet list passed to [`as_jet_polynomial`].
    pub exponents: Vec<u32>,
    pub coefficient: Expr,
}

impl JetTerm {
    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Render the jet part, e.g. `u_x^2*u_t` (or `1` for the constant term).
    pub fn monomial_string(&self, jets: &[Symbol]) -> String {
        let mut parts = Vec::new();
        for (sym, &e) in jets.iter().zip(&self.exponents) {
            match e {
                0 => {}
                1 => parts.push(sym.name()),
                _ => parts.push(format!("{}^{}", sym.name(), e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Collect `e` as a polynomial in the given jet coordinates, sorted by total
/// degree then lexicographically in the listed order. Errors if a jet
/// coordinate appears in a denominator or with a fractional exponent.
pub fn as_jet_polynomial(e: &Expr, jets: &[Symbol]) -> Result<Vec<JetTerm>, ExprError> {
    let form = nf(e)?.canonical()?;
    for m in form.den.0.keys() {
        for atom in m.keys() {
            if let Atom::Sym(s) = atom {
                if jets.contains(s) {
                    return Err(ExprError::Domain(
                        "jet coordinate in denominator".into(),
                    ));
                }
            }
        }
    }
    let mut groups: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    for (m, c) in &form.num.0 {
        let mut exps = vec![0u32; jets.len()];
        let mut rest = Monomial::new();
        for (atom, exp) in m {
            let jet_slot = match atom {
                Atom::Sym(s) => jets.iter().position(|j| j == s),
                _ => None,
            };
            match jet_slot {
                Some(i) => {
                    let n = as_i64(exp).filter(|n| *n >= 0).ok_or_else(|| {
                        ExprError::Domain("fractional jet exponent".into())
                    })?;
                    exps[i] = n as u32;
                }
                None => {
                    rest.insert(atom.clone(), exp.clone());
                }
            }
        }
        groups
            .entry(exps)
            .or_insert_with(Poly::zero)
            .add_assign(&Poly::monomial(rest, c.clone()));
    }
    let mut terms: Vec<JetTerm> = Vec::with_capacity(groups.len());
    for (exponents, poly) in groups {
        let coeff_form = NormalForm {
            num: poly,
            den: form.den.clone(),
        }
        .canonical()?;
        terms.push(JetTerm {
            exponents,
            coefficient: to_expr(&coeff_form),
        });
    }
    terms.sort_by(|a, b| {
        (a.total_degree(), &a.exponents).cmp(&(b.total_degree(), &b.exponents))
    });
    Ok(terms)
}

/// Laurent-monomial view of an expression whose denominator is a single
/// monomial: returns `monomial -> coefficient` with the denominator folded
/// in. Used for expressing vector fields in a finite feature basis.
pub(crate) fn as_monomial_coeffs(
    e: &Expr,
) -> Result<BTreeMap<Monomial, Rational>, ExprError> {
    let form = nf(e)?.canonical()?;
    if form.num.is_zero() {
        return Ok(BTreeMap::new());
    }
    if form.den.0.len() != 1 {
        return Err(ExprError::Domain(
            "expression is not a Laurent polynomial".into(),
        ));
    }
    let (den_m, den_c) = form.den.0.iter().next().unwrap();
    let mut out = BTreeMap::new();
    for (m, c) in &form.num.0 {
        let mut nm = m.clone();
        for (atom, e) in den_m {
            let entry = nm.entry(atom.clone()).or_insert_with(|| int(0));
            *entry -= e;
            if entry.is_zero() {
                nm.remove(atom);
            }
        }
        out.insert(nm, c / den_c);
    }
    Ok(out)
}

pub(crate) fn is_normalized_zero(e: &Expr) -> Result<bool, ExprError> {
    Ok(nf(e)?.canonical()?.is_zero())
}
