//! Finite-difference oracles for the closed-form derivative rules: the
//! symbolic recurrences must agree with central differences of the series
//! implementations.

use gslie::expr::{diff, eval_num, parse, Bindings, Symbol};
use gslie::specfun::{eval as sf_eval, SpecFun};

fn central_difference(f: SpecFun, x: f64, h: f64) -> f64 {
    (sf_eval(f, x + h).unwrap() - sf_eval(f, x - h).unwrap()) / (2.0 * h)
}

#[test]
fn besselj1_derivative_matches_finite_differences() {
    let rule = diff(&parse("besselj1(x)").unwrap(), Symbol::X);
    for x in [0.7, 1.5, 3.0] {
        let mut b = Bindings::new();
        b.insert(Symbol::X, x);
        let symbolic = eval_num(&rule, &b).unwrap();
        let numeric = central_difference(SpecFun::J1, x, 1e-5);
        assert!(
            (symbolic - numeric).abs() < 1e-6,
            "at {x}: rule {symbolic} vs difference {numeric}"
        );
    }
}

#[test]
fn every_special_function_derivative_matches_finite_differences() {
    let cases = [
        ("besselj0(x)", SpecFun::J0),
        ("besselj1(x)", SpecFun::J1),
        ("bessely0(x)", SpecFun::Y0),
        ("bessely1(x)", SpecFun::Y1),
        ("besseli0(x)", SpecFun::I0),
        ("besseli1(x)", SpecFun::I1),
        ("besselk0(x)", SpecFun::K0),
        ("besselk1(x)", SpecFun::K1),
        ("shi(x)", SpecFun::Shi),
        ("chi(x)", SpecFun::Chi),
    ];
    for (src, f) in cases {
        let rule = diff(&parse(src).unwrap(), Symbol::X);
        for x in [0.7, 1.5, 3.0] {
            let mut b = Bindings::new();
            b.insert(Symbol::X, x);
            let symbolic = eval_num(&rule, &b).unwrap();
            let numeric = central_difference(f, x, 1e-5);
            assert!(
                (symbolic - numeric).abs() < 1e-6 * symbolic.abs().max(1.0),
                "{src} at {x}: {symbolic} vs {numeric}"
            );
        }
    }
}

#[test]
fn shi_derivative_times_x_is_sinh() {
    // Shi'(x) * x = sinh(x), derivative by finite differences
    for k in 0..20 {
        let x = 0.3 + 0.35 * k as f64;
        let d = central_difference(SpecFun::Shi, x, 1e-6);
        assert!(
            (d * x - x.sinh()).abs() < 1e-9 * x.sinh().abs().max(1.0),
            "at {x}"
        );
    }
}
