//! Exact coefficient arithmetic: arbitrary-precision rationals or a prime
//! field GF(p), selected at runtime by a [`FieldTag`].
//!
//! Every operation is exact — there is no floating point anywhere in this
//! crate. Mixing values from different fields is a caller error surfaced by
//! the `checked_*` operations; the operator impls (`+`, `-`, `*`) panic on a
//! mix, and are meant for engine-internal code that has already validated a
//! shared context.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("mixed coefficient fields: {0} vs {1}")]
    MixedTags(FieldTag, FieldTag),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a valid field characteristic (need a prime below 2^16)")]
    BadPrime(u64),
    #[error("invalid scalar literal `{0}`")]
    BadLiteral(String),
}

/// Discriminant naming the active coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rational,
    Fp(u16),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTag {
    /// Prime field of characteristic `p`; `p` must be prime and below 2^16.
    pub fn fp(p: u64) -> Result<FieldTag, ScalarError> {
        if p >= (1 << 16) || !is_prime(p) {
            return Err(ScalarError::BadPrime(p));
        }
        Ok(FieldTag::Fp(p as u16))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldTag::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldTag::Fp(p) => {
                let p64 = *p as i64;
                Scalar::Fp {
                    p: *p,
                    val: v.rem_euclid(p64) as u16,
                }
            }
        }
    }

    /// Parses a scalar literal: optional sign, integer, optional
    /// `/denominator`. In GF(p) the denominator is realized by inversion.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::BadLiteral(text.to_string());
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text.trim(), None),
        };
        let numer: BigInt = num_text.parse().map_err(|_| bad())?;
        let denom: BigInt = match den_text {
            Some(d) if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) => {
                d.parse().map_err(|_| bad())?
            }
            Some(_) => return Err(bad()),
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            FieldTag::Rational => Ok(Scalar::Rat(BigRational::new(numer, denom))),
            FieldTag::Fp(p) => {
                let p_big = BigInt::from(*p);
                let n = Scalar::Fp {
                    p: *p,
                    val: u16::try_from(numer.mod_floor(&p_big)).unwrap(),
                };
                let d = Scalar::Fp {
                    p: *p,
                    val: u16::try_from(denom.mod_floor(&p_big)).unwrap(),
                };
                n.checked_mul(&d.inverse()?)
            }
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Fp(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element. Rationals are stored reduced with positive
/// denominator (maintained by `BigRational`); GF(p) values lie in `[0,p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u16, val: u16 },
}

impl Scalar {
    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Rat(_) => FieldTag::Rational,
            Scalar::Fp { p, .. } => FieldTag::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    fn require_same(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.tag() == other.tag() {
            Ok(())
        } else {
            Err(ScalarError::MixedTags(self.tag(), other.tag()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.require_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: ((*a as u32 + *b as u32) % *p as u32) as u16,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.require_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: ((*a as u64 * *b as u64) % *p as u64) as u16,
            },
            _ => unreachable!(),
        })
    }

    pub fn negated(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fp { p, val } => {
                // Extended Euclid on (val, p); p prime and val nonzero.
                let (mut r0, mut r1) = (*val as i64, *p as i64);
                let (mut s0, mut s1) = (1i64, 0i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                Scalar::Fp {
                    p: *p,
                    val: s0.rem_euclid(*p as i64) as u16,
                }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.inverse()?)
    }
}

macro_rules! panicking_binop {
    ($trait_:ident, $method:ident, $checked:ident) => {
        impl $trait_<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}

panicking_binop!(Add, add, checked_add);
panicking_binop!(Sub, sub, checked_sub);
panicking_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

impl fmt::Display for Scalar {
    /// Canonical literal form, re-parseable by [`FieldTag::parse_scalar`]:
    /// `-3`, `5/6`, or a GF(p) value in `[0,p)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

impl Scalar {
    /// True for rationals with negative numerator; GF(p) values are never
    /// negative. Used only by the human-readable printer.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.abs()),
            fp => fp.clone(),
        }
    }
}
