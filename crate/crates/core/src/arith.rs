//! Exact scalar arithmetic: arbitrary-precision rationals and the field Q(i).
//!
//! Q(i) is the coefficient field of the whole crate. Values are canonical
//! (reduced, positive denominator) so structural equality is semantic
//! equality, and all operations are pure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::rng::DetRng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal: {0}")]
    BadLiteral(String),
}

/// Arbitrary-precision rational in lowest terms with positive denominator.
///
/// The sign lives on the numerator, so each value has exactly one
/// representation and `==` decides equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self, ArithError> {
        if denominator.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numerator, denominator)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact square root, if this value is a square in Q.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.0.numer().sqrt();
        let den = self.0.denom().sqrt();
        if &(&num * &num) == self.0.numer() && &(&den * &den) == self.0.denom() {
            Some(Rational(BigRational::new(num, den)))
        } else {
            None
        }
    }

    /// Uniform draw with |numerator| <= height and denominator <= height.
    pub fn sample(rng: &mut DetRng, height: u64) -> Self {
        assert!(height >= 1, "sample: height must be >= 1");
        let num = rng.int_signed(height);
        let den = rng.int_positive(height);
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, ArithError> {
        let s = s.trim();
        let bad = || ArithError::BadLiteral(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

// Integer operands stay canonical without any gcd work, and they dominate the
// polynomial workloads; take the raw path whenever both denominators are 1.
impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if self.0.is_integer() && rhs.0.is_integer() {
            return Rational(BigRational::new_raw(
                self.0.numer() + rhs.0.numer(),
                BigInt::from(1),
            ));
        }
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        if self.0.is_integer() && rhs.0.is_integer() {
            return Rational(BigRational::new_raw(
                self.0.numer() - rhs.0.numer(),
                BigInt::from(1),
            ));
        }
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if self.0.is_integer() && rhs.0.is_integer() {
            return Rational(BigRational::new_raw(
                self.0.numer() * rhs.0.numer(),
                BigInt::from(1),
            ));
        }
        Rational(&self.0 * &rhs.0)
    }
}

macro_rules! rational_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

rational_owned_binop!(Add, add);
rational_owned_binop!(Sub, sub);
rational_owned_binop!(Mul, mul);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Element of Q(i): `re + im*i` with both parts canonical rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(Rational::from_int(n), Rational::zero())
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        GaussianRational::from_int(0)
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// re^2 + im^2, the multiplicative norm into Q.
    pub fn norm_sq(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm_sq().inv()?;
        Ok(GaussianRational::new(&self.re * &n, -&(&self.im * &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact square root in Q(i), if one exists.
    ///
    /// For `a + b*i` with `b != 0` solves `x^2 - y^2 = a`, `2xy = b`; the
    /// solution is Gaussian-rational exactly when both `a^2 + b^2` and
    /// `(a + sqrt(a^2+b^2))/2` are rational squares.
    pub fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            if let Some(r) = self.re.sqrt() {
                return Some(GaussianRational::from_rational(r));
            }
            if let Some(r) = (-&self.re).sqrt() {
                return Some(GaussianRational::new(Rational::zero(), r));
            }
            return None;
        }
        let n = self.norm_sq().sqrt()?;
        let two = Rational::from_int(2);
        let xsq = &(&(&self.re + &n) * &two.inv().unwrap());
        let x = xsq.sqrt()?;
        if x.is_zero() {
            return None;
        }
        let y = &(&self.im * &x.inv().unwrap()) * &two.inv().unwrap();
        let cand = GaussianRational::new(x, y);
        debug_assert_eq!(&cand * &cand, *self);
        Some(cand)
    }

    /// Uniform draw: both components sampled at the given height.
    pub fn sample(rng: &mut DetRng, height: u64) -> Self {
        let re = Rational::sample(rng, height);
        let im = Rational::sample(rng, height);
        GaussianRational::new(re, im)
    }

    /// Nonzero uniform draw (resamples on zero).
    pub fn sample_nonzero(rng: &mut DetRng, height: u64) -> Self {
        loop {
            let v = Self::sample(rng, height);
            if !v.is_zero() {
                return v;
            }
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // avoid the full four-product form when a component is missing
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussianRational::new(&self.re * &rhs.re, Rational::zero()),
            (true, false) => {
                GaussianRational::new(&self.re * &rhs.re, &self.re * &rhs.im)
            }
            (false, true) => {
                GaussianRational::new(&self.re * &rhs.re, &self.im * &rhs.re)
            }
            (false, false) => {
                let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
                let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
                GaussianRational::new(re, im)
            }
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

macro_rules! gq_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    };
}

gq_owned_binop!(Add, add);
gq_owned_binop!(Sub, sub);
gq_owned_binop!(Mul, mul);
gq_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl fmt::Display for GaussianRational {
    /// Textual form like `1/2 + 3/4*i`, `-i`, `2`; reparses exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_mag = self.im.abs();
        let istr = if im_mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", im_mag)
        };
        if self.re.is_zero() {
            return if self.im.is_negative() {
                write!(f, "-{}", istr)
            } else {
                write!(f, "{}", istr)
            };
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}", self.re, sign, istr)
    }
}

impl FromStr for GaussianRational {
    type Err = ArithError;

    /// Accepts `a/b + c/d*i`, `a/b + c/d i`, pure real or pure imaginary
    /// forms, with insignificant whitespace.
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ArithError::BadLiteral(s.to_string());
        if compact.is_empty() {
            return Err(bad());
        }

        // Split at the last top-level +/- that is not a leading sign.
        let bytes = compact.as_bytes();
        let mut split_at = None;
        for k in (1..bytes.len()).rev() {
            if bytes[k] == b'+' || bytes[k] == b'-' {
                split_at = Some(k);
                break;
            }
        }

        let parse_imag = |part: &str| -> Result<Rational, ArithError> {
            // part ends with 'i', optionally preceded by '*'
            let body = part.strip_suffix('i').ok_or_else(bad)?;
            let body = body.strip_suffix('*').unwrap_or(body);
            if body.is_empty() || body == "+" {
                Ok(Rational::one())
            } else if body == "-" {
                Ok(-&Rational::one())
            } else {
                body.parse()
            }
        };

        if compact.ends_with('i') {
            match split_at {
                Some(k) => {
                    let (re_part, im_part) = compact.split_at(k);
                    let sign = if bytes[k] == b'-' { -1i64 } else { 1 };
                    let im = parse_imag(&im_part[1..])?;
                    let im = if sign < 0 { -&im } else { im };
                    Ok(GaussianRational::new(re_part.parse()?, im))
                }
                None => Ok(GaussianRational::new(Rational::zero(), parse_imag(&compact)?)),
            }
        } else {
            Ok(GaussianRational::from_rational(compact.parse()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gq(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(Rational::from_int(re), Rational::from_int(im))
    }

    #[test]
    fn conjugate_product() {
        // (1+i)*(1-i) = 2
        assert_eq!(&gq(1, 1) * &gq(1, -1), gq(2, 0));
    }

    #[test]
    fn inverse_of_one_plus_i() {
        // 1/(1+i) = 1/2 - (1/2)i, checked by multiplying back
        let v = gq(1, 1);
        let inv = v.inv().unwrap();
        let half = Rational::new(BigInt::from(1), BigInt::from(2)).unwrap();
        assert_eq!(inv, GaussianRational::new(half.clone(), -&half));
        assert_eq!(&v * &inv, GaussianRational::one());
    }

    #[test]
    fn rational_sum() {
        let a: Rational = "2/3".parse().unwrap();
        let b: Rational = "1/6".parse().unwrap();
        assert_eq!(&a + &b, "5/6".parse().unwrap());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(gq(1, 0).checked_div(&gq(0, 0)), Err(ArithError::DivisionByZero));
        assert!(Rational::new(BigInt::from(1), BigInt::from(0)).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = GaussianRational::sample(&mut DetRng::new(99), 100);
        let b = GaussianRational::sample(&mut DetRng::new(99), 100);
        assert_eq!(a, b);
    }

    #[test]
    fn sampling_height_one_stays_in_unit_box() {
        let mut rng = DetRng::new(5);
        for _ in 0..50 {
            let v = GaussianRational::sample(&mut rng, 1);
            for part in [&v.re, &v.im] {
                assert!(part.numerator().abs() <= BigInt::from(1));
                assert_eq!(part.denominator(), &BigInt::from(1));
            }
        }
    }

    // Golden value: generator is frozen, so this draw can never change.
    #[test]
    fn sampling_golden_value() {
        let v = GaussianRational::sample(&mut DetRng::new(12345), 100);
        assert_eq!(v.to_string(), "-16/49 - 43/51*i");
    }

    #[test]
    fn display_roundtrip() {
        let mut rng = DetRng::new(17);
        for _ in 0..500 {
            let v = GaussianRational::sample(&mut rng, 50);
            let back: GaussianRational = v.to_string().parse().unwrap();
            assert_eq!(v, back);
        }
    }

    #[test]
    fn parse_spaced_form() {
        let v: GaussianRational = "1/2 + 3/4 i".parse().unwrap();
        assert_eq!(v.to_string(), "1/2 + 3/4*i");
        let w: GaussianRational = "-i".parse().unwrap();
        assert_eq!(w, gq(0, -1));
    }

    #[test]
    fn field_laws_on_random_triples() {
        let mut rng = DetRng::new(2024);
        for _ in 0..1000 {
            let a = GaussianRational::sample(&mut rng, 10);
            let b = GaussianRational::sample(&mut rng, 10);
            let c = GaussianRational::sample(&mut rng, 10);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
            }
        }
    }

    #[test]
    fn sqrt_exact_cases() {
        assert_eq!(gq(4, 0).sqrt(), Some(gq(2, 0)));
        assert_eq!(gq(-4, 0).sqrt(), Some(gq(0, 2)));
        assert_eq!(gq(0, 2).sqrt(), Some(gq(1, 1))); // (1+i)^2 = 2i
        assert_eq!(gq(2, 0).sqrt(), None); // sqrt(2) is not in Q(i)
        let mut rng = DetRng::new(3);
        for _ in 0..200 {
            let v = GaussianRational::sample(&mut rng, 20);
            let sq = &v * &v;
            let r = sq.sqrt().expect("square of a value must have a root");
            assert!(r == v || r == -&v);
        }
    }
}
