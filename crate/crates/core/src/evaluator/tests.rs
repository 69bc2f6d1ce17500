use super::*;
use crate::finite_field::FqContext;
use crate::formula_lang::{mk_alpha, mk_epsilon, mk_zeta, parse_formula, wp, Mode};

fn ctx(q: u64) -> Arc<FqContext> {
    FqContext::from_order(q).unwrap()
}

fn s(c: &Arc<FqContext>, text: &str) -> HahnSeries {
    HahnSeries::parse(c, text).unwrap()
}

fn at(c: &Arc<FqContext>, x: &str) -> Assignment {
    Assignment::from([("x".to_string(), s(c, x))])
}

fn field() -> EvalConfig {
    EvalConfig {
        mode: Mode::Field,
        ..EvalConfig::default()
    }
}

#[test]
fn inverse_of_zero_is_zero() {
    let f3 = ctx(3);
    let v = eval_term(&Term::inv(Term::var("x")), &at(&f3, "0"), &f3, &field()).unwrap();
    assert!(v.is_zero() && v.is_exact());
    let approx = Assignment::from([("x".to_string(), HahnSeries::big_o(&f3, Exponent::int(3)))]);
    assert!(eval_term(&Term::inv(Term::var("x")), &approx, &f3, &field()).is_err());
}

#[test]
fn term_values() {
    let f3 = ctx(3);
    let v = eval_term(&wp(3, Term::var("x")), &at(&f3, "t"), &f3, &EvalConfig::default()).unwrap();
    assert_eq!(v, s(&f3, "t^3 - t"));

    let alpha = mk_alpha(3, 1, "x").unwrap();
    let v = eval_term(&alpha, &at(&f3, "t^-1"), &f3, &field()).unwrap();
    // 1/(t^-3 - t^-1 - 1) by long division, independently: t^3 / (1 - t^2 - t^3)
    let denom = s(&f3, "1 - t^2 - t^3");
    let mut oracle = HahnSeries::zero(&f3);
    let mut rem = s(&f3, "t^3");
    for _ in 0..6 {
        let (e, c) = rem.leading().map(|(e, c)| (e.clone(), c)).unwrap();
        let m = HahnSeries::monomial(&c, e);
        oracle = oracle.add(&m);
        rem = rem.sub(&m.mul(&denom));
    }
    let cap = Exponent::int(8);
    assert_eq!(v.truncate(&cap), oracle.truncate(&cap));
    assert_eq!(v.truncate(&cap), s(&f3, "t^3 + t^5 + t^6 + t^7 + O(t^8)"));
}

#[test]
fn square_root_witness() {
    let f2 = ctx(2);
    let phi = parse_formula("exists y. y^2-x = 0", Mode::Ring).unwrap();
    match eval_formula(&phi, &at(&f2, "t"), &f2, &EvalConfig::default()).unwrap() {
        EvalVerdict::True(w) => assert_eq!(w["y"], s(&f2, "t^(1/2)")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn zeta_rejects_negative_valuation() {
    let f2 = ctx(2);
    let zeta = mk_zeta(2, None).unwrap();
    let v = eval_formula(&zeta, &at(&f2, "t^-1"), &f2, &field()).unwrap();
    assert_eq!(v, EvalVerdict::False);
}

#[test]
fn zeta_and_epsilon_match_ground_truth() {
    for q in [2, 3, 4] {
        let c = ctx(q);
        let zeta = mk_zeta(q, None).unwrap();
        let eps = mk_epsilon(q, None).unwrap();
        for x in ["0", "1", "t", "t^-1", "1 + t^(1/2)", "t^(1/3)", "t^-2 + t"] {
            let sigma = at(&c, x);
            let o = ground_truth_o(&sigma["x"]).unwrap();
            let m = ground_truth_m(&sigma["x"]).unwrap();
            let vz = eval_formula(&zeta, &sigma, &c, &field()).unwrap();
            let ve = eval_formula(&eps, &sigma, &c, &EvalConfig::default()).unwrap();
            assert_eq!(vz.truth(), Some(o), "zeta q={q} x={x}: {vz:?}");
            assert_eq!(ve.truth(), Some(m), "epsilon q={q} x={x}: {ve:?}");
        }
    }
}

#[test]
fn shifted_artin_schreier_has_no_root() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let c = ctx(q);
        let phi = Formula::exists("y", Formula::Eq(Term::minus(wp(q, Term::var("y")), Term::int(1)), Term::zero()));
        let v = eval_formula(&phi, &Assignment::new(), &c, &EvalConfig::default()).unwrap();
        assert_eq!(v, EvalVerdict::False, "q={q}");
    }
}

#[test]
fn witnesses_back_substitute() {
    let f3 = ctx(3);
    let phi = parse_formula("exists y. exists z. y^3-y = x & z*y = 1", Mode::Ring).unwrap();
    let sigma = at(&f3, "t");
    let cfg = EvalConfig::default();
    let v = eval_formula(&phi, &sigma, &f3, &cfg).unwrap();
    let EvalVerdict::True(w) = v else {
        panic!("expected a witness: {v:?}");
    };
    let y = &w["y"];
    let r = y.pow(3, None).sub(y).sub(&sigma["x"]);
    assert!(r.val().at_least(&cfg.target));
    assert!(w["z"].mul(y).sub(&HahnSeries::one(&f3)).val().at_least(&cfg.target));
}

#[test]
fn ring_mode_rejects_inverse() {
    let f2 = ctx(2);
    let phi = parse_formula("exists y. inv(y) = x", Mode::Field).unwrap();
    assert!(eval_formula(&phi, &at(&f2, "t"), &f2, &EvalConfig::default()).is_err());
    let unbound = parse_formula("exists y. y = x", Mode::Ring).unwrap();
    assert!(matches!(
        eval_formula(&unbound, &Assignment::new(), &f2, &EvalConfig::default()),
        Err(Error::UnboundVariable(_))
    ));
}

#[test]
fn ground_truth_examples() {
    let f5 = ctx(5);
    let cases = [("1 + t^(1/2)", true, false), ("t^(1/3)", true, true), ("t^-2", false, false)];
    for (x, o, m) in cases {
        let x = s(&f5, x);
        assert_eq!(ground_truth_o(&x).unwrap(), o);
        assert_eq!(ground_truth_m(&x).unwrap(), m);
    }
    assert!(ground_truth_o(&HahnSeries::big_o(&f5, Exponent::int(-1))).is_err());
}

#[test]
fn beta_examples() {
    let f2 = ctx(2);
    let f = crate::formula_lang::default_f(2);
    let cap = Exponent::int(12);
    assert!(eval_beta(&f, &HahnSeries::zero(&f2), &cap).unwrap().is_zero());

    let y = s(&f2, "t");
    let b = eval_beta(&f, &y, &cap).unwrap();
    // f(y) f(0) beta = f(0) - f(y)
    let fy = s(&f2, "t^2 + t + 1");
    let f0 = HahnSeries::one(&f2);
    let lhs = fy.mul(&f0).mul(&b);
    assert!(lhs.sub(&f0.sub(&fy)).val().at_least(&cap));
    assert_eq!(b.truncate(&Exponent::int(3)), s(&f2, "t + O(t^3)"));

    // beta = 1/f(y) - 1/f(0), so v(y) < 0 puts beta in -1/f(0) + m
    let b = eval_beta(&f, &s(&f2, "t^-1"), &cap).unwrap();
    assert!(ground_truth_o(&b).unwrap() && !ground_truth_m(&b).unwrap());
    assert!(ground_truth_m(&b.sub(&HahnSeries::one(&f2))).unwrap());
}

#[test]
fn rational_displays_agree() {
    use crate::formula_lang::{mk_epsilon_rational, mk_zeta_rational};
    for q in [2, 3] {
        let c = ctx(q);
        let zeta = mk_zeta_rational(q).unwrap();
        let eps = mk_epsilon_rational(q).unwrap();
        for x in ["0", "1 + t", "t^-1", "t^(1/2)"] {
            let sigma = at(&c, x);
            let o = ground_truth_o(&sigma["x"]).unwrap();
            let m = ground_truth_m(&sigma["x"]).unwrap();
            assert_eq!(eval_formula(&zeta, &sigma, &c, &field()).unwrap().truth(), Some(o), "q={q} x={x}");
            assert_eq!(eval_formula(&eps, &sigma, &c, &field()).unwrap().truth(), Some(m), "q={q} x={x}");
        }
    }
}
