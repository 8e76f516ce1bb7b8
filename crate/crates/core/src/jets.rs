//! Jet-space machinery: total derivatives, infinitesimal generators on
//! `(x, t, u)`, characteristics, second prolongations, and Lie brackets.
//!
//! A second prolongation is computed from the characteristic `Q`:
//!
//! ```text
//! phi^x  = D_x Q  + xi1*u_xx  + xi2*u_xt
//! phi^t  = D_t Q  + xi1*u_xt  + xi2*u_tt
//! phi^xx = D_x^2 Q + xi1*u_xxx + xi2*u_xxt
//! phi^xt = D_x D_t Q + xi1*u_xxt + xi2*u_xtt
//! phi^tt = D_t^2 Q + xi1*u_xtt + xi2*u_ttt
//! ```
//!
//! The third-order jets introduced by the correction terms must cancel
//! after normalization; that cancellation is asserted rather than assumed.

use crate::expr::{diff, normalize, Dir, Expr, ExprError, Jet, Symbol};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("vector field component contains a jet coordinate: {0}")]
    JetInComponent(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// All jet symbols up to the alphabet cap, `u` itself included.
pub fn jet_symbols() -> Vec<Symbol> {
    let mut out = Vec::new();
    for order in 0..=Jet::MAX_ORDER {
        for nx in (0..=order).rev() {
            out.push(Symbol::U(Jet::new(nx, order - nx).unwrap()));
        }
    }
    out
}

/// Second-order jet coordinates in the order used for determining-equation
/// collection: `u_x, u_t, u_xx, u_xt` (with `u_tt` eliminated on shell).
pub fn surviving_jets() -> [Symbol; 4] {
    [
        Symbol::jet(1, 0),
        Symbol::jet(0, 1),
        Symbol::jet(2, 0),
        Symbol::jet(1, 1),
    ]
}

/// Total derivative `D_dir e` on jet space. Each jet coordinate maps to its
/// raised neighbour; explicit `x`/`t` dependence is differentiated; errors
/// if a jet beyond `max_order` (capped by the alphabet at 3) would appear.
pub fn total_derivative(e: &Expr, dir: Dir, max_order: u8) -> Result<Expr, ExprError> {
    let cap = max_order.min(Jet::MAX_ORDER);
    let base = match dir {
        Dir::X => Symbol::X,
        Dir::T => Symbol::T,
    };
    let mut result = diff(e, base);
    let deps = e.dependency_symbols();
    for sym in deps {
        if let Symbol::U(j) = sym {
            let partial = diff(e, sym);
            if partial.is_zero_literal() {
                continue;
            }
            let raised = j
                .raised(dir)
                .filter(|r| r.order() <= cap)
                .ok_or(ExprError::OrderOverflow(cap))?;
            result = result + partial * Expr::Var(Symbol::U(raised));
        }
    }
    Ok(result)
}

/// Infinitesimal generator `xi1 d/dx + xi2 d/dt + phi d/du`. Components
/// live on `(x, t, u)` only (function symbols of those variables allowed).
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub xi1: Expr,
    pub xi2: Expr,
    pub phi: Expr,
    pub label: String,
}

impl VectorField {
    pub fn new(xi1: Expr, xi2: Expr, phi: Expr, label: &str) -> Result<VectorField, JetError> {
        for (name, comp) in [("xi1", &xi1), ("xi2", &xi2), ("phi", &phi)] {
            for sym in comp.free_symbols() {
                if let Symbol::U(j) = sym {
                    if j.order() > 0 {
                        return Err(JetError::JetInComponent(format!(
                            "{name} contains {}",
                            sym.name()
                        )));
                    }
                }
            }
        }
        Ok(VectorField {
            xi1,
            xi2,
            phi,
            label: label.to_string(),
        })
    }

    pub fn zero() -> VectorField {
        VectorField {
            xi1: Expr::zero(),
            xi2: Expr::zero(),
            phi: Expr::zero(),
            label: "0".into(),
        }
    }

    /// Apply the field as a derivation to a function of `(x, t, u)`.
    pub fn apply(&self, f: &Expr) -> Expr {
        self.xi1.clone() * diff(f, Symbol::X)
            + self.xi2.clone() * diff(f, Symbol::T)
            + self.phi.clone() * diff(f, Symbol::u())
    }

    /// Characteristic `Q = phi - xi1*u_x - xi2*u_t`.
    pub fn characteristic(&self) -> Expr {
        self.phi.clone() - self.xi1.clone() * Expr::jet(1, 0) - self.xi2.clone() * Expr::jet(0, 1)
    }

    pub fn scaled(&self, c: &crate::rational::Rational) -> VectorField {
        VectorField {
            xi1: Expr::Const(c.clone()) * self.xi1.clone(),
            xi2: Expr::Const(c.clone()) * self.xi2.clone(),
            phi: Expr::Const(c.clone()) * self.phi.clone(),
            label: format!("{}*({})", c, self.label),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            xi1: self.xi1.clone() + other.xi1.clone(),
            xi2: self.xi2.clone() + other.xi2.clone(),
            phi: self.phi.clone() + other.phi.clone(),
            label: format!("{}+{}", self.label, other.label),
        }
    }

    /// Componentwise normalized; also usable as a loose equality check.
    pub fn normalized(&self) -> Result<VectorField, ExprError> {
        Ok(VectorField {
            xi1: normalize(&self.xi1)?,
            xi2: normalize(&self.xi2)?,
            phi: normalize(&self.phi)?,
            label: self.label.clone(),
        })
    }

    pub fn is_zero(&self) -> Result<bool, ExprError> {
        let n = self.normalized()?;
        Ok(n.xi1.is_zero_literal() && n.xi2.is_zero_literal() && n.phi.is_zero_literal())
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}) d/dx + ({}) d/dt + ({}) d/du",
            self.xi1, self.xi2, self.phi
        )
    }
}

/// Second prolongation of a vector field.
#[derive(Clone, Debug)]
pub struct ProlongedField {
    pub base: VectorField,
    pub phi_x: Expr,
    pub phi_t: Expr,
    pub phi_xx: Expr,
    pub phi_xt: Expr,
    pub phi_tt: Expr,
}

/// Compute the second prolongation. Panics if a third-order jet survives in
/// any normalized coefficient; that would be an engine bug, not bad input.
pub fn prolong2(v: &VectorField) -> Result<ProlongedField, ExprError> {
    let q = v.characteristic();
    let xi1 = &v.xi1;
    let xi2 = &v.xi2;
    let dx_q = total_derivative(&q, Dir::X, 3)?;
    let dt_q = total_derivative(&q, Dir::T, 3)?;
    let dxx_q = total_derivative(&dx_q, Dir::X, 3)?;
    let dxt_q = total_derivative(&dt_q, Dir::X, 3)?;
    let dtt_q = total_derivative(&dt_q, Dir::T, 3)?;

    let jet = |nx, nt| Expr::Var(Symbol::jet(nx, nt));
    let phi_x = normalize(&(dx_q + xi1.clone() * jet(2, 0) + xi2.clone() * jet(1, 1)))?;
    let phi_t = normalize(&(dt_q + xi1.clone() * jet(1, 1) + xi2.clone() * jet(0, 2)))?;
    let phi_xx = normalize(&(dxx_q + xi1.clone() * jet(3, 0) + xi2.clone() * jet(2, 1)))?;
    let phi_xt = normalize(&(dxt_q + xi1.clone() * jet(2, 1) + xi2.clone() * jet(1, 2)))?;
    let phi_tt = normalize(&(dtt_q + xi1.clone() * jet(1, 2) + xi2.clone() * jet(0, 3)))?;

    for (name, coeff) in [
        ("phi_x", &phi_x),
        ("phi_t", &phi_t),
        ("phi_xx", &phi_xx),
        ("phi_xt", &phi_xt),
        ("phi_tt", &phi_tt),
    ] {
        for sym in coeff.free_symbols() {
            if let Symbol::U(j) = sym {
                assert!(
                    j.order() <= 2,
                    "third-order jet {} survives in {name} of {}",
                    sym.name(),
                    v.label
                );
            }
        }
    }

    Ok(ProlongedField {
        base: v.clone(),
        phi_x,
        phi_t,
        phi_xx,
        phi_xt,
        phi_tt,
    })
}

impl ProlongedField {
    /// Apply `pr^(2) X` as a derivation to a function on second-order jet
    /// space.
    pub fn apply(&self, e: &Expr) -> Expr {
        self.base.xi1.clone() * diff(e, Symbol::X)
            + self.base.xi2.clone() * diff(e, Symbol::T)
            + self.base.phi.clone() * diff(e, Symbol::u())
            + self.phi_x.clone() * diff(e, Symbol::jet(1, 0))
            + self.phi_t.clone() * diff(e, Symbol::jet(0, 1))
            + self.phi_xx.clone() * diff(e, Symbol::jet(2, 0))
            + self.phi_xt.clone() * diff(e, Symbol::jet(1, 1))
            + self.phi_tt.clone() * diff(e, Symbol::jet(0, 2))
    }
}

/// Lie bracket `[V, W]`, componentwise `V(W_i) - W(V_i)`, normalized.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField, ExprError> {
    Ok(VectorField {
        xi1: normalize(&(v.apply(&w.xi1) - w.apply(&v.xi1)))?,
        xi2: normalize(&(v.apply(&w.xi2) - w.apply(&v.xi2)))?,
        phi: normalize(&(v.apply(&w.phi) - w.apply(&v.phi)))?,
        label: format!("[{},{}]", v.label, w.label),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::gs::generators;

    fn norm(s: &str) -> Expr {
        normalize(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn total_derivative_examples() {
        let dx_u = total_derivative(&Expr::u(), Dir::X, 3).unwrap();
        assert_eq!(normalize(&dx_u).unwrap(), norm("u_x"));
        let e = parse("x*u_t^2").unwrap();
        let dt = total_derivative(&e, Dir::T, 3).unwrap();
        assert_eq!(normalize(&dt).unwrap(), norm("2*x*u_t*u_tt"));
        let e = parse("t*u_x").unwrap();
        let dx = total_derivative(&e, Dir::X, 3).unwrap();
        assert_eq!(normalize(&dx).unwrap(), norm("t*u_xx"));
    }

    #[test]
    fn total_derivative_overflows_beyond_alphabet() {
        let e = parse("u_xxx").unwrap();
        assert!(matches!(
            total_derivative(&e, Dir::X, 3),
            Err(ExprError::OrderOverflow(_))
        ));
    }

    #[test]
    fn characteristics() {
        let x1 = generators::x1();
        assert_eq!(
            normalize(&x1.characteristic()).unwrap(),
            norm("-u_t")
        );
        let x2 = generators::x2();
        assert_eq!(
            normalize(&x2.characteristic()).unwrap(),
            norm("x^4/2 - x*u_x - t*u_t")
        );
        let x5 = generators::x5(parse("psi(x,t)").unwrap());
        assert_eq!(
            normalize(&x5.characteristic()).unwrap(),
            norm("psi(x,t)")
        );
    }

    #[test]
    fn vector_fields_reject_jets_in_components() {
        assert!(VectorField::new(
            parse("u_x").unwrap(),
            Expr::zero(),
            Expr::zero(),
            "bad"
        )
        .is_err());
    }

    #[test]
    fn prolongation_of_time_translation_is_trivial() {
        let p = prolong2(&generators::x1()).unwrap();
        assert!(p.phi_x.is_zero_literal());
        assert!(p.phi_xx.is_zero_literal());
        assert!(p.phi_tt.is_zero_literal());
    }

    #[test]
    fn prolongation_of_x3() {
        // X3 = (u - x^4/8) d/du, Q = u - x^4/8
        let p = prolong2(&generators::x3()).unwrap();
        assert_eq!(p.phi_x, norm("u_x - x^3/2"));
        assert_eq!(p.phi_xx, norm("u_xx - 3/2*x^2"));
    }

    #[test]
    fn prolongation_of_psi_field() {
        let p = prolong2(&generators::x5(parse("psi(x,t)").unwrap())).unwrap();
        assert_eq!(p.phi_xx, norm("psi_xx(x,t)"));
        assert_eq!(p.phi_tt, norm("psi_tt(x,t)"));
    }

    #[test]
    fn apply_prolonged_reads_off_coefficients() {
        let p1 = prolong2(&generators::x1()).unwrap();
        assert_eq!(normalize(&p1.apply(&parse("u_t").unwrap())).unwrap(), Expr::zero());
        let p2 = prolong2(&generators::x2()).unwrap();
        assert_eq!(normalize(&p2.apply(&Expr::x())).unwrap(), norm("x"));
        let p3 = prolong2(&generators::x3()).unwrap();
        assert_eq!(
            normalize(&p3.apply(&parse("u_xx").unwrap())).unwrap(),
            norm("u_xx - 3/2*x^2")
        );
    }

    #[test]
    fn bracket_x1_x2_is_x1() {
        let b = lie_bracket(&generators::x1(), &generators::x2()).unwrap();
        assert_eq!(b.xi1, Expr::zero());
        assert_eq!(b.xi2, Expr::one());
        assert_eq!(b.phi, Expr::zero());
    }

    #[test]
    fn bracket_x3_x4_vanishes() {
        let b = lie_bracket(&generators::x3(), &generators::x4()).unwrap();
        assert!(b.is_zero().unwrap());
    }

    #[test]
    fn bracket_x1_x4_is_x2_plus_half_x3() {
        let b = lie_bracket(&generators::x1(), &generators::x4()).unwrap();
        let expected = generators::x2().add(&generators::x3().scaled(&crate::rational::rat(1, 2)));
        assert_eq!(b.xi1, normalize(&expected.xi1).unwrap());
        assert_eq!(b.xi2, normalize(&expected.xi2).unwrap());
        assert_eq!(b.phi, normalize(&expected.phi).unwrap());
        // the phi component spelled out: 7/16 x^4 + u/2
        assert_eq!(b.phi, norm("7/16*x^4 + u/2"));
    }

    #[test]
    fn brackets_propagate_funcsym_derivatives() {
        let x5 = generators::x5(parse("psi(x,t)").unwrap());
        let b = lie_bracket(&generators::x1(), &x5).unwrap();
        assert_eq!(b.phi, norm("psi_t(x,t)"));
    }

    #[test]
    fn zero_field_edge_cases() {
        let z = VectorField::zero();
        assert_eq!(normalize(&z.characteristic()).unwrap(), Expr::zero());
        let p = prolong2(&z).unwrap();
        assert!(p.phi_xx.is_zero_literal());
        assert!(p.phi_xt.is_zero_literal());
    }
}
