use circavoid::recurrence::Recurrences;
use circavoid::series::{
    a_vu_series, b11_series, b1u_series, c11_series, c1u_series, expand_rational, rational, series_arith, v_series,
    Argument, ArithKind, TruncatedSeries,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&c| rational(c)).collect()
}

fn big(n: &num_bigint::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

#[test]
fn division_examples() {
    let one = TruncatedSeries::one(5);
    let d = TruncatedSeries::from_integers(5, &[1, -1]);
    let g = series_arith(&one, &d, ArithKind::Div).unwrap();
    assert_eq!(g, TruncatedSeries::from_integers(5, &[1, 1, 1, 1, 1, 1]));

    let x2 = TruncatedSeries::monomial(4, 2);
    let x = TruncatedSeries::monomial(4, 1);
    let r = series_arith(&x2, &x, ArithKind::Div).unwrap();
    assert_eq!(r, TruncatedSeries::monomial(3, 1));
}

#[test]
fn rational_expansion_examples() {
    assert_eq!(expand_rational(&q(&[0, 1]), &q(&[1, -1]), 4).unwrap().to_string(), "0,1,1,1,1");
    assert_eq!(expand_rational(&q(&[1]), &q(&[1, -2]), 3).unwrap().to_string(), "1,2,4,8");
    assert_eq!(expand_rational(&q(&[1, -1]), &q(&[1, -3]), 3).unwrap().to_string(), "1,2,6,18");
}

#[test]
fn v1_counts_v_avoiders() {
    let rec = Recurrences::compute(9);
    let v1 = v_series(&Argument::one(), 9).unwrap();
    assert_eq!(v1.coeff(0), &rational(0));
    assert_eq!(v1.coeff(1), &rational(1));
    for n in 1..=9 {
        assert_eq!(v1.coeff(n), &big(&rec.v.total(n)), "n = {n}");
    }
}

#[test]
fn low_order_coefficients() {
    let c = c11_series(9).unwrap();
    assert_eq!(&c.coeffs()[..4], &q(&[0, 0, 0, 1])[..]);
    let b = b11_series(9).unwrap();
    assert_eq!(&b.coeffs()[..4], &q(&[0, 0, 1, 3])[..]);
    let rec = Recurrences::compute(9);
    for n in 2..=9 {
        assert_eq!(c.coeff(n), &big(&rec.c.total(n)), "C n = {n}");
        assert_eq!(b.coeff(n), &big(&rec.b.total(n)), "B n = {n}");
    }
}

#[test]
fn weighted_at_two() {
    let rec = Recurrences::compute(9);
    let c = c1u_series(&Argument::int(2), 9).unwrap();
    let b = b1u_series(&Argument::int(2), 9).unwrap();
    for n in 2..=9i64 {
        let mut wb = BigRational::from_integer(0.into());
        let mut wc = wb.clone();
        for j in 1..=n {
            wb += big(rec.b.marginal(n, j)) * rational(2).pow(j as i32 - 1);
            if j >= 2 {
                wc += big(rec.c.marginal(n, j)) * rational(2).pow(j as i32 - 2);
            }
        }
        assert_eq!(b.coeff(n as usize), &wb, "B n = {n}");
        assert_eq!(c.coeff(n as usize), &wc, "C n = {n}");
    }
}

#[test]
fn rational_scalars_are_accepted() {
    let half = Argument::Scalar(BigRational::new(1.into(), 2.into()));
    let s = a_vu_series(&half, &Argument::int(3), 6).unwrap();
    assert_eq!(s.coeff(1), &rational(1));
    let s = c1u_series(&half, 6).unwrap();
    assert_eq!(s.coeff(3), &rational(1));
}
