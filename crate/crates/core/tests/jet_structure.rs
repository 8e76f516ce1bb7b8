//! Field-level structure properties: bracket antisymmetry and Jacobi on
//! the generator set, linearity of the second prolongation, and the
//! guarantee that no third-order jet survives a normalized prolongation.

use gslie::expr::{normalize, parse, Expr, Symbol};
use gslie::gs::generators;
use gslie::jets::{lie_bracket, prolong2, VectorField};
use gslie::rational::rat;

fn is_zero_field(v: &VectorField) -> bool {
    v.is_zero().unwrap()
}

#[test]
fn bracket_antisymmetry_on_generators() {
    let basis = generators::basis();
    for v in &basis {
        for w in &basis {
            let vw = lie_bracket(v, w).unwrap();
            let wv = lie_bracket(w, v).unwrap();
            assert!(
                is_zero_field(&vw.add(&wv)),
                "[{},{}] + [{},{}] != 0",
                v.label,
                w.label,
                w.label,
                v.label
            );
        }
    }
}

#[test]
fn bracket_jacobi_on_generators() {
    let basis = generators::basis();
    for v in &basis {
        for w in &basis {
            for z in &basis {
                let a = lie_bracket(&lie_bracket(v, w).unwrap(), z).unwrap();
                let b = lie_bracket(&lie_bracket(w, z).unwrap(), v).unwrap();
                let c = lie_bracket(&lie_bracket(z, v).unwrap(), w).unwrap();
                assert!(
                    is_zero_field(&a.add(&b).add(&c)),
                    "Jacobi fails on ({}, {}, {})",
                    v.label,
                    w.label,
                    z.label
                );
            }
        }
    }
}

#[test]
fn prolongation_is_linear() {
    let alpha = rat(3, 4);
    let beta = rat(-5, 2);
    let pairs = [
        (generators::x1(), generators::x2()),
        (generators::x2(), generators::x3()),
        (generators::x3(), generators::x4()),
        (generators::x1(), generators::x4()),
    ];
    for (v, w) in pairs {
        let combined = v.scaled(&alpha).add(&w.scaled(&beta));
        let p = prolong2(&combined).unwrap();
        let pv = prolong2(&v).unwrap();
        let pw = prolong2(&w).unwrap();
        let scale = |e: &Expr, c: &gslie::Rational| Expr::Const(c.clone()) * e.clone();
        for (combined_coeff, (cv, cw)) in [
            (&p.phi_x, (&pv.phi_x, &pw.phi_x)),
            (&p.phi_t, (&pv.phi_t, &pw.phi_t)),
            (&p.phi_xx, (&pv.phi_xx, &pw.phi_xx)),
            (&p.phi_xt, (&pv.phi_xt, &pw.phi_xt)),
            (&p.phi_tt, (&pv.phi_tt, &pw.phi_tt)),
        ] {
            let expected = normalize(&(scale(cv, &alpha) + scale(cw, &beta))).unwrap();
            assert_eq!(combined_coeff, &expected, "{} + {}", v.label, w.label);
        }
    }
}

#[test]
fn no_third_order_jets_survive_prolongation() {
    let mut fields = generators::basis().to_vec();
    fields.push(generators::x5(parse("psi(x,t)").unwrap()));
    for v in fields {
        let p = prolong2(&v).unwrap();
        for coeff in [&p.phi_x, &p.phi_t, &p.phi_xx, &p.phi_xt, &p.phi_tt] {
            for sym in coeff.free_symbols() {
                if let Symbol::U(j) = sym {
                    assert!(j.order() <= 2, "{}: {}", v.label, sym.name());
                }
            }
        }
    }
}

#[test]
fn zero_field_has_zero_characteristic_and_prolongation() {
    let z = VectorField::zero();
    assert_eq!(normalize(&z.characteristic()).unwrap(), Expr::zero());
    let p = prolong2(&z).unwrap();
    for coeff in [&p.phi_x, &p.phi_t, &p.phi_xx, &p.phi_xt, &p.phi_tt] {
        assert!(coeff.is_zero_literal());
    }
}
