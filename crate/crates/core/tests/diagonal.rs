mod common;

use common::{q, sqrt_scaled_floor};
use definability_core::algnum::AlgebraicNumber;
use definability_core::diagonal::{
    curated_stream, diagonal_digit, diagonal_from_entries, diagonal_number, singleton_stream, NumberStream, Provenance,
    StreamEntry,
};
use definability_core::rational::Rational;
use definability_core::term::GeneratorKind::{Add, Mul, Nat};
use definability_core::Error;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

fn last_digit(v: BigInt) -> u8 {
    (v % 10u8).to_u8().unwrap()
}

/// `floor(10^n x) mod 10` for the curated values, each computed by its own
/// integer recipe.
fn curated_digit(index: usize, n: u32) -> u8 {
    let scale = BigInt::from(10u8).pow(n);
    last_digit(match index {
        1 => BigInt::from(0u8),
        2 => scale,
        3 => scale * 355u32 / 113u32,
        4 => sqrt_scaled_floor(2, n),
        // golden mean: floor((10^n + floor(sqrt(5) 10^n)) / 2)
        5 => (scale + sqrt_scaled_floor(5, n)) / 2u8,
        _ => unreachable!(),
    })
}

#[test]
fn curated_certificates() {
    let d = diagonal_number(&curated_stream(), 5).unwrap();
    assert_eq!(d.digits.len(), 5);
    for c in &d.certificates {
        let want = curated_digit(c.n, c.n as u32);
        assert_eq!(c.digit_of_value, want, "x_{}", c.n);
        assert_ne!(c.alpha, want);
        assert!(c.alpha == 3 || c.alpha == 7);
        assert_eq!(d.digits[c.n - 1], c.alpha);
        assert_eq!(c.provenance, Provenance::Listed);
    }
    // sqrt 2 = 1.4142..., digit 4 is 2; golden mean 1.61803..., digit 5 is 3
    assert_eq!(d.certificates[3].digit_of_value, 2);
    assert_eq!(d.certificates[4].digit_of_value, 3);
    assert_eq!(d.partial_value(), Rational::new(77777.into(), 100000.into()));
}

#[test]
fn diagonal_differs_from_each_entry() {
    // entries chosen so that digit n of x_n is 7, forcing alpha_n = 3
    let xs: Vec<AlgebraicNumber> =
        [q(7, 10), q(77, 100), q(17, 100), q(1007, 1000)].into_iter().map(AlgebraicNumber::from_rational).collect();
    let d = diagonal_number(&NumberStream::Curated(xs.clone()), 6).unwrap();
    assert_eq!(d.digits, vec![3, 3, 7, 7, 7, 7]);
    assert_eq!(d.certificates[4].provenance, Provenance::Padding);
    for (n, x) in xs.iter().enumerate() {
        assert_eq!(diagonal_digit(x, n as u64 + 1), d.digits[n]);
    }
    let neg =
        StreamEntry { index: 1, value: AlgebraicNumber::from_rational(q(-7, 10)), provenance: Provenance::Listed };
    assert_eq!(diagonal_from_entries(&[neg]).digits, vec![3]);
}

#[test]
fn enumerated_two_generators() {
    let d = diagonal_number(&NumberStream::Enumerated(vec![Add, Mul]), 13).unwrap();
    assert_eq!(d.digits, vec![7; 13]);
    for c in &d.certificates {
        assert_ne!(c.provenance, Provenance::Singleton);
        assert!(c.value.is_rational() && c.value.sign() == std::cmp::Ordering::Equal);
        assert!(c.render().starts_with(&format!("n={} x_n=0 digit(x_n)=0 alpha=7", c.n)));
    }
    // first unary terms are projections of projections
    let more = NumberStream::Enumerated(vec![Add, Mul]).take(116).unwrap();
    assert_eq!(more[114].provenance, Provenance::NotSingleton(1));
    assert_eq!(singleton_stream(&[Add, Mul, Nat], 3), Err(Error::NonSemialgebraic));
}
