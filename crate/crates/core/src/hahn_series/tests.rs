use std::collections::HashMap;

use super::*;

fn ctx(q: u64) -> Arc<FqContext> {
    FqContext::from_order(q).unwrap()
}

fn e(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

fn s(c: &Arc<FqContext>, text: &str) -> HahnSeries {
    HahnSeries::parse(c, text).unwrap()
}

#[test]
fn make_canonicalizes() {
    let f2 = ctx(2);
    let one = FqElem::one(&f2);
    let x = HahnSeries::make(&f2, vec![(e(1, 1), one.clone()), (e(1, 1), one)], None);
    assert!(x.is_zero());

    let f3 = ctx(3);
    let one = FqElem::one(&f3);
    let x = HahnSeries::make(&f3, vec![(e(2, 1), one.clone()), (e(1, 2), one.clone())], None);
    assert_eq!(x.exponents().cloned().collect::<Vec<_>>(), vec![e(1, 2), e(2, 1)]);

    let two = FqElem::from_int(&f3, 2);
    let x = HahnSeries::make(&f3, vec![(e(0, 1), one), (e(3, 1), two)], Some(e(3, 1)));
    assert_eq!(x.to_string(), "1 + O(t^(3))");
}

#[test]
fn valuations() {
    let f2 = ctx(2);
    assert_eq!(s(&f2, "t^(1/2) + t").val(), ValBound::Known(e(1, 2)));
    assert_eq!(HahnSeries::zero(&f2).val(), ValBound::Infinite);
    assert_eq!(s(&f2, "O(t^(3))").val(), ValBound::AtLeast(e(3, 1)));
}

#[test]
fn arithmetic_examples() {
    let f3 = ctx(3);
    let x = s(&f3, "1 + t + O(t^3)");
    let y = s(&f3, "1 - t + O(t^3)");
    assert_eq!(x.mul(&y), s(&f3, "1 + 2*t^2 + O(t^3)"));
    assert_eq!(s(&f3, "t^(-1)").mul(&s(&f3, "t")), HahnSeries::one(&f3));
    let f5 = ctx(5);
    let h = s(&f5, "t^(1/2)");
    assert!(h.add(&h.neg()).is_zero());
    let other = ctx(2);
    assert_eq!(
        HahnSeries::arith(SeriesOp::Add, &h, &HahnSeries::one(&other)),
        Err(Error::ContextMismatch)
    );
}

#[test]
fn inverse_examples() {
    let f2 = ctx(2);
    let x = s(&f2, "1 - t");
    assert_eq!(x.inv(&e(4, 1)).unwrap(), s(&f2, "1 + t + t^2 + t^3 + O(t^4)"));
    assert_eq!(s(&f2, "t").inv(&e(4, 1)).unwrap(), s(&f2, "t^(-1)"));

    // oracle: t^3 / (1 - t^2 - t^3) with b_n = b_{n-2} + b_{n-3} mod 3
    let mut b = vec![1i64, 0, 1];
    for n in 3..8 {
        b.push((b[n - 2] + b[n - 3]) % 3);
    }
    let f3 = ctx(3);
    let expected = HahnSeries::make(
        &f3,
        b.iter()
            .enumerate()
            .map(|(n, &c)| (e(n as i64 + 3, 1), FqElem::from_int(&f3, c)))
            .collect(),
        Some(e(8, 1)),
    );
    let got = s(&f3, "t^(-3) - t^(-1) - 1").inv(&e(8, 1)).unwrap();
    assert_eq!(got, expected);
    assert_eq!(got, s(&f3, "t^3 + t^5 + t^6 + t^7 + O(t^8)"));

    assert_eq!(s(&f3, "O(t^2)").inv(&e(4, 1)), Err(Error::CannotInvert));
    assert_eq!(HahnSeries::zero(&f3).inv(&e(4, 1)), Err(Error::CannotInvert));
}

#[test]
fn inverse_precision_rule() {
    // prec(x^-1) = prec(x) - 2 v(x)
    let f5 = ctx(5);
    let x = s(&f5, "2*t^(1/2) + t + O(t^3)");
    let y = x.inv(&e(100, 1)).unwrap();
    assert_eq!(y.prec(), Some(&e(2, 1)));
    let prod = x.mul(&y);
    assert_eq!(prod.compare(&HahnSeries::one(&f5)).unwrap(), SeriesEq::UpTo(e(5, 2)));
}

#[test]
fn residues() {
    let f5 = ctx(5);
    assert_eq!(s(&f5, "2 + t^(1/3)").residue().unwrap(), FqElem::from_int(&f5, 2));
    let f2 = ctx(2);
    assert!(s(&f2, "t").residue().unwrap().is_zero());
    assert_eq!(s(&f2, "t^(-1)").residue(), Err(Error::NotIntegral));
    assert!(matches!(s(&f2, "O(t^0)").residue(), Err(Error::InsufficientPrecision(_))));
}

#[test]
fn pth_roots() {
    let f2 = ctx(2);
    assert_eq!(s(&f2, "t").pth_root(), s(&f2, "t^(1/2)"));
    let f4 = ctx(4);
    let r = s(&f4, "(a)*t").pth_root();
    assert_eq!(r, s(&f4, "(a+1)*t^(1/2)"));
    assert_eq!(r.pow(2, None), s(&f4, "(a)*t"));
    assert!(HahnSeries::zero(&f4).pth_root().is_zero());
}

#[test]
fn polynomial_evaluation() {
    let f2 = ctx(2);
    let g = SeriesPoly::new(&f2, &["y"])
        .int_term(1, &[2])
        .term(s(&f2, "t").neg(), &[0]);
    let mut env = HashMap::new();
    env.insert("y".to_string(), s(&f2, "t^(1/2)"));
    assert!(g.eval(&env).unwrap().is_zero());

    let wp = SeriesPoly::new(&f2, &["y"]).int_term(1, &[2]).int_term(1, &[1]);
    env.insert("y".to_string(), s(&f2, "t^(-1)"));
    assert_eq!(wp.eval(&env).unwrap(), s(&f2, "t^(-2) + t^(-1)"));

    let xy = SeriesPoly::new(&f2, &["x", "y"]).int_term(1, &[1, 1]);
    env.insert("x".to_string(), s(&f2, "O(t^2)"));
    assert_eq!(xy.eval(&env).unwrap(), s(&f2, "O(t)"));
    env.remove("x");
    assert_eq!(xy.eval(&env), Err(Error::UnboundVariable("x".into())));
}

#[test]
fn literal_round_trip() {
    let f4 = ctx(4);
    let text = "2*t^(-1/3) + (a+1)*t + O(t^(5/2))";
    let f5 = ctx(5);
    let x = s(&f5, text);
    // in a prime field the generator reduces to 0, so (a+1) is 1
    assert_eq!(x.to_string(), "2*t^(-1/3) + t + O(t^(5/2))");
    let y = s(&f4, "(a+1)*t + (a)*t^(-1/3) + O(t^(5/2))");
    assert_eq!(s(&f4, &y.to_string()), y);
    assert_eq!(y.to_string(), "(a)*t^(-1/3) + (a+1)*t + O(t^(5/2))");
    assert_eq!(s(&f4, "a*t + a^2"), s(&f4, "(a+1) + (a)*t"));
    assert!(HahnSeries::parse(&f4, "t^(1/0)").is_err());
    assert!(HahnSeries::parse(&f4, "O(t) + 1").is_err());
}
