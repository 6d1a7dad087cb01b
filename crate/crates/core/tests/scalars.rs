use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tvgraph::scalar::parse_rational;
use tvgraph::{Cyclotomic, Rational, Scalar};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
}

const ORDERS: [u32; 4] = [8, 12, 20, 28];

/// A random real element `Σ c_k cos(2π e_k / m)` together with its value
/// computed in floating point.
fn cyclotomic() -> impl Strategy<Value = (Cyclotomic, f64)> {
    (0..ORDERS.len(), prop::collection::vec((-9i64..10, 1i64..5, 0i64..28), 1..4)).prop_map(|(o, terms)| {
        let m = ORDERS[o];
        let mut value = <Cyclotomic as Scalar>::zero();
        let mut approx = 0.0;
        for (n, d, e) in terms {
            let c = q(n, d);
            value = value.add(&Cyclotomic::from_rational(&c).mul(&Cyclotomic::cos_turn(m, e)));
            approx += n as f64 / d as f64 * (std::f64::consts::TAU * e as f64 / m as f64).cos();
        }
        (value, approx)
    })
}

/// Working precision of the fixed-point oracle, in bits.
const WORK: u32 = 320;
/// Claimed accuracy: enclosures are `value ± 2^-256` per term.
const CLAIM: u32 = 256;

/// `2^WORK · atan(1/k)` by the alternating series.
fn atan_inv(k: i64) -> BigInt {
    let k2 = BigInt::from(k * k);
    let mut power = (BigInt::one() << WORK) / BigInt::from(k);
    let mut total = BigInt::zero();
    let mut i = 0i64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * i + 1);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        power /= &k2;
        i += 1;
    }
    total
}

/// `2^WORK · cos(2πe/m)` by Machin's π and the Taylor series.
fn cos_fixed(m: u32, e: i64) -> BigInt {
    let pi = BigInt::from(16) * atan_inv(5) - BigInt::from(4) * atan_inv(239);
    let x = pi * BigInt::from(2 * e.rem_euclid(m as i64)) / BigInt::from(m);
    let x2 = (&x * &x) >> WORK;
    let mut term = BigInt::one() << WORK;
    let mut total = term.clone();
    let mut k = 0i64;
    while !term.is_zero() {
        term = -((&term * &x2) >> WORK) / BigInt::from((2 * k + 1) * (2 * k + 2));
        total += &term;
        k += 1;
    }
    total
}

/// Terms `(numerator, denominator, exponent)` of `Σ (n/d) cos(2πe/m)`.
type Terms = Vec<(i64, i64, i64)>;

fn exact_value(m: u32, terms: &Terms) -> Cyclotomic {
    terms.iter().fold(<Cyclotomic as Scalar>::zero(), |acc, &(n, d, e)| {
        acc.add(&Cyclotomic::from_rational(&q(n, d)).mul(&Cyclotomic::cos_turn(m, e)))
    })
}

/// Sign of the enclosure, or `None` when it contains zero.
fn interval_sign(m: u32, terms: &Terms) -> Option<i8> {
    let mut value = BigInt::zero();
    for &(n, d, e) in terms {
        value += cos_fixed(m, e) * BigInt::from(n) / BigInt::from(d);
    }
    let radius = BigInt::from(terms.len() as u64) << (WORK - CLAIM);
    if value.abs() <= radius {
        None
    } else {
        Some(if value.is_positive() { 1 } else { -1 })
    }
}

/// Random sums, some with cancelling mirror terms appended (exact zeros) or
/// replaced by a tiny multiple of one cosine (near-zeros).
fn sign_case() -> impl Strategy<Value = (u32, Terms)> {
    (
        0..ORDERS.len(),
        prop::collection::vec((-9i64..10, 1i64..5, 0i64..28), 1..4),
        0u8..3,
        0i64..28,
        0i64..28,
    )
        .prop_map(|(o, mut terms, variant, a, b)| {
            let m = ORDERS[o];
            match variant {
                // cos(x) = cos(-x): append the negated mirror image.
                1 => {
                    let mirror: Terms = terms.iter().map(|&(n, d, e)| (-n, d, m as i64 - e)).collect();
                    terms.extend(mirror);
                }
                2 => {
                    terms = vec![(1, 1, a), (-1, 1, m as i64 - a), (1, 1_000_000, b)];
                }
                _ => {}
            }
            (m, terms)
        })
}

fn field_laws<S: Scalar>(a: &S, b: &S, c: &S) {
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert!(a.sub(a).is_zero());
    assert_eq!(a.add(&S::zero()), *a);
    assert_eq!(a.mul(&S::one()), *a);
    assert_eq!(a.neg().neg(), *a);
    if !a.is_zero() {
        assert_eq!(a.mul(&a.inv()), S::one());
        assert_eq!(b.div(a).mul(a), *b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cyclotomic_sign_matches_interval((m, terms) in sign_case()) {
        let exact = exact_value(m, &terms);
        match interval_sign(m, &terms) {
            Some(s) => prop_assert_eq!(exact.signum(), s),
            None => prop_assert!(exact.is_zero() || exact.to_f64().abs() < 1e-70),
        }
        if exact.is_zero() {
            prop_assert_eq!(interval_sign(m, &terms), None);
        }
    }
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        field_laws(&a, &b, &c);
    }

    #[test]
    fn rational_order_is_total(a in rational(), b in rational()) {
        let s = Scalar::signum(&a.sub(&b));
        prop_assert_eq!(s, -Scalar::signum(&b.sub(&a)));
        prop_assert_eq!(a.cmp_value(&b), a.cmp(&b));
    }

    #[test]
    fn rational_text_round_trips(a in rational()) {
        prop_assert_eq!(parse_rational(&a.to_exact_string()), Some(a));
    }

    #[test]
    fn cyclotomic_field_laws((a, _) in cyclotomic(), (b, _) in cyclotomic(), (c, _) in cyclotomic()) {
        field_laws(&a, &b, &c);
    }

    #[test]
    fn cyclotomic_sign_matches_float((a, approx) in cyclotomic()) {
        if approx.abs() > 1e-9 {
            prop_assert_eq!(a.signum(), if approx > 0.0 { 1 } else { -1 });
        }
        prop_assert!((a.to_f64() - approx).abs() < 1e-9);
    }

    #[test]
    fn cyclotomic_difference_sign((a, x) in cyclotomic(), (b, y) in cyclotomic()) {
        let diff = a.sub(&b);
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(diff.signum(), if x > y { 1 } else { -1 });
        } else if diff.is_zero() {
            prop_assert_eq!(a.cmp_value(&b), std::cmp::Ordering::Equal);
        }
    }

    #[test]
    fn pythagorean_identity(o in 0..ORDERS.len(), e in 0i64..40) {
        let m = ORDERS[o];
        let c = Cyclotomic::cos_turn(m, e);
        let s = Cyclotomic::sin_turn(m, e);
        prop_assert_eq!(c.mul(&c).add(&s.mul(&s)), <Cyclotomic as Scalar>::one());
    }

    #[test]
    fn double_angle(o in 0..ORDERS.len(), e in 0i64..40) {
        let m = ORDERS[o];
        let c = Cyclotomic::cos_turn(m, e);
        let two = Cyclotomic::from_i64(2);
        prop_assert_eq!(Cyclotomic::cos_turn(m, 2 * e), two.mul(&c).mul(&c).sub(&<Cyclotomic as Scalar>::one()));
    }
}

#[test]
fn golden_ratio_in_order_five() {
    // 2 cos(2π/5) = (√5 - 1)/2, a root of x² + x - 1.
    let x = Cyclotomic::cos_turn(5, 1).mul(&Cyclotomic::from_i64(2));
    let one = <Cyclotomic as Scalar>::one();
    assert!(x.mul(&x).add(&x).sub(&one).is_zero());
    assert_eq!(x.signum(), 1);
}

#[test]
fn mixed_orders_compare() {
    // cos(π/4) = √2/2 > cos(π/3) = 1/2 > cos(2π/5) ≈ 0.309.
    let a = Cyclotomic::cos_turn(8, 1);
    let b = Cyclotomic::cos_turn(6, 1);
    let c = Cyclotomic::cos_turn(5, 1);
    assert_eq!(a.cmp_value(&b), std::cmp::Ordering::Greater);
    assert_eq!(b.cmp_value(&c), std::cmp::Ordering::Greater);
    assert_eq!(b, Cyclotomic::from_rational(&q(1, 2)));
}
