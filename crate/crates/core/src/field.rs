//! Exact scalar rings.
//!
//! Rings are values rather than type parameters on the elements: a
//! [`PrimeField`] carries its modulus, a [`crate::poly::PolyRing`] carries its
//! variable count. All arithmetic goes through the ring object, so the same
//! matrix and elimination code runs over rationals, `F_q`, dual numbers and
//! polynomial rings.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// A commutative ring with unit.
pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The field of rational numbers, stored as reduced big fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_PRIME: u64 = 1 << 31;

/// `Z/qZ` for a prime `q <= 2^31`; elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Option<Self> {
        if q <= MAX_PRIME && is_prime(q) {
            Some(PrimeField { q })
        } else {
            None
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Reduces a rational; `None` when the denominator vanishes mod `q`.
    pub fn reduce(&self, r: &Rational) -> Option<u64> {
        let q = BigInt::from(self.q);
        let residue = |n: &BigInt| -> u64 {
            let m = n % &q;
            let m = if m.is_negative() { m + &q } else { m };
            m.to_u64().expect("residue below modulus")
        };
        let num = residue(r.numer());
        let den = residue(r.denom());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.q;
            }
            base = base * base % self.q;
            exp >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.q
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.q as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.q
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.q - a) % self.q
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.q
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.q - 2))
        }
    }
}

/// Dual numbers `R[eps]/(eps^2)`; elements are `(value, first-order part)`.
#[derive(Clone, Debug)]
pub struct Dual<R>(pub R);

impl<R: Ring> Dual<R> {
    pub fn lift(&self, a: R::Elem) -> (R::Elem, R::Elem) {
        (a, self.0.zero())
    }

    pub fn epsilon(&self) -> (R::Elem, R::Elem) {
        (self.0.zero(), self.0.one())
    }
}

impl<R: Ring> Ring for Dual<R> {
    type Elem = (R::Elem, R::Elem);

    fn zero(&self) -> Self::Elem {
        (self.0.zero(), self.0.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.0.one(), self.0.zero())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        (self.0.from_int(n), self.0.zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.0.add(&a.0, &b.0), self.0.add(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.0.neg(&a.0), self.0.neg(&a.1))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.0;
        (
            r.mul(&a.0, &b.0),
            r.add(&r.mul(&a.0, &b.1), &r.mul(&a.1, &b.0)),
        )
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.0.is_zero(&a.0) && self.0.is_zero(&a.1)
    }
}

/// Renders a rational as `num/den`, the canonical report form.
pub fn render_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form used inside polynomial strings and DSL text: `3` or `3/2`.
pub fn render_rational_compact(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d` with an optional sign.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(7).is_some());
        assert!(PrimeField::new(1).is_none());
        assert!(PrimeField::new(9).is_none());
        assert!(PrimeField::new(2_147_483_647).is_some());
        assert!(PrimeField::new(MAX_PRIME + 11).is_none());
    }

    #[test]
    fn rationals_stay_reduced() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(render_rational(&r), "-3/2");
        assert_eq!(render_rational(&rat(4, 2)), "2/1");
        assert_eq!(render_rational_compact(&rat(4, 2)), "2");
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-7"), Some(rat(-7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn reduce_mod_p() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.reduce(&rat(1, 2)), Some(3));
        assert_eq!(f.reduce(&rat(-1, 1)), Some(4));
        assert_eq!(f.reduce(&rat(1, 5)), None);
    }

    #[test]
    fn dual_numbers_square_epsilon_to_zero() {
        let d = Dual(Rationals);
        let e = d.epsilon();
        assert!(d.is_zero(&d.mul(&e, &e)));
        let x = d.add(&d.from_int(3), &e);
        // (3 + eps)^2 = 9 + 6 eps
        assert_eq!(d.mul(&x, &x), (rat(9, 1), rat(6, 1)));
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn rational_axioms(n1 in -50i64..50, d1 in 1i64..20, n2 in -50i64..50, d2 in 1i64..20) {
            let q = Rationals;
            let a = rat(n1, d1);
            let b = rat(n2, d2);
            prop_assert_eq!(q.mul(&a, &b), q.mul(&b, &a));
            if !a.is_zero() {
                prop_assert!(q.is_one(&q.mul(&a, &q.inv(&a).unwrap())));
            }
            let s = q.add(&a, &b);
            prop_assert!(s.denom().is_positive());
        }
    }
}
