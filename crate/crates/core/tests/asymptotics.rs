use comppat::asymptotics::{emit_curve, estimate, eval_f, find_rho, find_rho_with, winding_number, AsymptoticError};
use comppat::genfun::build;
use comppat::{PartSet, PatternId};
use num_bigint::BigInt;
use num_complex::Complex;

#[test]
fn roots_lie_above_one_half() {
    for p in PatternId::ALL {
        let rho: f64 = find_rho(p, 1e-11).unwrap();
        assert!(rho > 0.5 && rho < 0.62, "{p}: {rho}");
        assert!(eval_f(p, Complex::new(rho, 0.0), 1e-15).unwrap().value.norm() <= 1e-9);
    }
}

#[test]
fn tighter_tails_do_not_move_the_root() {
    for p in PatternId::ALL {
        let a: f64 = find_rho_with(p, 1e-12, 1e-14).unwrap();
        let b: f64 = find_rho_with(p, 1e-12, 1e-15).unwrap();
        assert!((a - b).abs() < 1e-9, "{p}: {a} vs {b}");
    }
}

#[test]
fn growth_matches_ratio_of_exact_counts() {
    for p in PatternId::ALL {
        let n = if p == PatternId::P111 { 25 } else { 20 };
        let seq = build::<BigInt>(p, &PartSet::nat(), n).unwrap().avoidance_sequence();
        let ratio = seq[n as usize].to_string().parse::<f64>().unwrap()
            / seq[n as usize - 1].to_string().parse::<f64>().unwrap();
        let v = estimate::<f64>(p).unwrap().growth_v;
        assert!((ratio - v).abs() / v < 5e-3, "{p}: ratio {ratio}, v {v}");
    }
}

#[test]
fn winding_is_stable_under_doubling() {
    for p in PatternId::ALL {
        assert_eq!(winding_number(p, 0.7, 2048).unwrap(), winding_number(p, 0.7, 4096).unwrap(), "{p}");
    }
}

#[test]
fn conjugate_symmetry() {
    for p in PatternId::ALL {
        for k in 0..16 {
            let x = Complex::from_polar(0.7, 0.39 * k as f64);
            let a = eval_f(p, x, 1e-15).unwrap().value;
            let b = eval_f(p, x.conj(), 1e-15).unwrap().value;
            assert!((a - b.conj()).norm() < 1e-13, "{p} at {x}");
        }
    }
}

#[test]
fn predictions_within_one_percent() {
    let cases = [(PatternId::P111, 25, 5_352_275.0), (PatternId::Peak, 20, 24_366.0), (PatternId::P123, 20, 357_518.0)];
    for (p, n, exact) in cases {
        let got = estimate::<f64>(p).unwrap().predict(n);
        assert!((got - exact).abs() / exact < 0.01, "{p}: {got}");
    }
}

#[test]
fn curve_rows_start_on_the_real_axis() {
    let rows = emit_curve(PatternId::Valley, 0.7f64, 1024).unwrap();
    assert_eq!((rows[0].x.re, rows[0].x.im, rows[0].f.im), (0.7, 0.0, 0.0));
}

#[test]
fn root_tolerance_floor() {
    assert!(matches!(find_rho::<f64>(PatternId::P112, 1e-13), Err(AsymptoticError::InvalidArgument(_))));
}

#[test]
fn single_precision_estimate_is_close() {
    let rho: f32 = find_rho_with(PatternId::Peak, 1e-6, 1e-7).unwrap();
    assert!((1.0 / rho - 1.62975).abs() < 1e-3);
}
