//! Exact scalar fields: the rationals and prime fields.
//!
//! Every computation in this crate is generic over [`Field`]. Field values are
//! plain data; the field object carries the arithmetic (and for prime fields
//! the modulus), in the style of a ring store.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) if is_prime(p) && p < (1 << 62) => Ok(()),
            FieldSpec::PrimeField(p) => Err(Error::InvalidField(format!("{p} is not a supported prime"))),
        }
    }

    /// Rejects fields whose characteristic divides `order`.
    pub fn check_group_order(&self, order: usize) -> Result<()> {
        let p = self.characteristic();
        if p != 0 && (order as u64).is_multiple_of(p) {
            return Err(Error::CharacteristicDividesOrder { characteristic: p, order });
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Arithmetic of an exact field.
///
/// Besides the field operations, implementors provide the three hooks used by
/// sparse elimination. Over the rationals these keep every working vector a
/// primitive integer vector (fraction-free elimination); over a prime field
/// they are ordinary normalization.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Canonical text form: `"n/d"` over the rationals, `"n"` over a prime field.
    fn format(&self, a: &Self::Elem) -> String;
    /// Parses `"n"` or `"n/d"`.
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Multipliers `(alpha, beta)` with `alpha * target - beta * pivot == 0`.
    fn cancel(&self, target: &Self::Elem, pivot: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Scale that turns `v` (nonempty, leading entry first) into a canonical
    /// pivot row, or `None` if it already is one.
    fn pivot_scale(&self, v: &[(usize, Self::Elem)]) -> Option<Self::Elem>;

    /// Scale that removes common content after a combination step, if any.
    fn content_scale(&self, v: &[(usize, Self::Elem)]) -> Option<Self::Elem>;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// `1/n`, if `n` is invertible.
    fn inv_usize(&self, n: usize) -> Option<Self::Elem> {
        self.inv(&self.from_i64(n as i64))
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() + b.numer());
        }
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() - b.numer());
        }
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() * b.numer());
        }
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn format(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }

    fn cancel(&self, target: &BigRational, pivot: &BigRational) -> (BigRational, BigRational) {
        debug_assert!(target.is_integer() && pivot.is_integer());
        let (t, p) = (target.numer(), pivot.numer());
        let g = t.gcd(p);
        (
            BigRational::from_integer(p / &g),
            BigRational::from_integer(t / &g),
        )
    }

    fn pivot_scale(&self, v: &[(usize, BigRational)]) -> Option<BigRational> {
        let mut den = BigInt::one();
        for (_, x) in v {
            if !x.denom().is_one() {
                den = den.lcm(x.denom());
            }
        }
        let mut num = BigInt::zero();
        for (_, x) in v {
            num = num.gcd(&(x.numer() * (&den / x.denom())));
            if num.is_one() {
                break;
            }
        }
        if v[0].1.is_negative() {
            num = -num;
        }
        let scale = BigRational::new(den, num);
        (!scale.is_one()).then_some(scale)
    }

    fn content_scale(&self, v: &[(usize, BigRational)]) -> Option<BigRational> {
        let mut g = BigInt::zero();
        for (_, x) in v {
            g = g.gcd(x.numer());
            if g.is_one() {
                return None;
            }
        }
        (!g.is_zero() && !g.is_one()).then(|| BigRational::new(BigInt::one(), g))
    }
}

/// The prime field `F_p`, with `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::PrimeField(p).validate()?;
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| pow_mod(*a, self.p - 2, self.p))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let q = Rationals.parse(s)?;
        let n = (q.numer() % BigInt::from(self.p)).to_i64().expect("reduced below p");
        let d = (q.denom() % BigInt::from(self.p)).to_i64().expect("reduced below p");
        self.div(&self.from_i64(n), &self.from_i64(d))
            .ok_or_else(|| Error::Parse(format!("{s:?} has denominator divisible by {}", self.p)))
    }

    fn cancel(&self, target: &u64, pivot: &u64) -> (u64, u64) {
        if *pivot == 1 {
            (1, *target)
        } else {
            (1, self.div(target, pivot).expect("pivot is nonzero"))
        }
    }

    fn pivot_scale(&self, v: &[(usize, u64)]) -> Option<u64> {
        let lead = v[0].1;
        (lead != 1).then(|| self.inv(&lead).expect("stored entries are nonzero"))
    }

    fn content_scale(&self, _v: &[(usize, u64)]) -> Option<u64> {
        None
    }
}
