//! Exact scalar arithmetic over the supported coefficient rings.
//!
//! Every scalar is stored in canonical form (residue in `[0, p)` for GF(p),
//! reduced fraction for rationals, arbitrary-precision integer for ℤ), so
//! equality of scalars, vectors and echelonized subspaces is representational.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An exact coefficient ring: GF(p) with p prime, ℚ, or ℤ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CoefficientRing {
    PrimeField(u64),
    Rationals,
    Integers,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(Error::BadParams(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    /// Number of elements for finite rings, `None` otherwise.
    pub fn order(&self) -> Option<u64> {
        match self {
            CoefficientRing::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CoefficientRing::PrimeField(p) => Scalar::Fp { p: *p, val: 0 },
            CoefficientRing::Rationals => Scalar::Rational(BigRational::zero()),
            CoefficientRing::Integers => Scalar::Integer(BigInt::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            CoefficientRing::PrimeField(p) => Scalar::Fp { p: *p, val: 1 % *p },
            CoefficientRing::Rationals => Scalar::Rational(BigRational::one()),
            CoefficientRing::Integers => Scalar::Integer(BigInt::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            CoefficientRing::PrimeField(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: m }
            }
            CoefficientRing::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            CoefficientRing::Integers => Scalar::Integer(BigInt::from(n)),
        }
    }

    /// Enumerates all ring elements; only finite rings support this.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            CoefficientRing::PrimeField(p) => {
                Some((0..*p).map(|v| Scalar::Fp { p: *p, val: v }).collect())
            }
            _ => None,
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::PrimeField(p) => write!(f, "GF({p})"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::Integers => write!(f, "Z"),
        }
    }
}

/// A scalar in canonical form. Mixing rings in arithmetic is a programming
/// error and panics; boundary code validates rings before arithmetic starts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Fp { p: u64, val: u64 },
    Rational(BigRational),
    Integer(BigInt),
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    // extended Euclid on (a, p)
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn ring(&self) -> CoefficientRing {
        match self {
            Scalar::Fp { p, .. } => CoefficientRing::PrimeField(*p),
            Scalar::Rational(_) => CoefficientRing::Rationals,
            Scalar::Integer(_) => CoefficientRing::Integers,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Integer(n) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { p, val } => *val == 1 % *p,
            Scalar::Rational(r) => r.is_one(),
            Scalar::Integer(n) => n.is_one(),
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.ring(),
            other.ring(),
            "scalar arithmetic across different rings"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: (a + b) % p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: mod_mul(*a, *b, *p),
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Integer(n) => Scalar::Integer(-n),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Fp { p, val } => mod_inv(*val, *p)
                .map(|v| Scalar::Fp { p: *p, val: v })
                .ok_or_else(|| Error::NonUnit(format!("{self} in GF({p})"))),
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::NonUnit("0 in Q".into()))
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Integer(n) => {
                if n.abs().is_one() {
                    Ok(Scalar::Integer(n.clone()))
                } else {
                    Err(Error::NonUnit(format!("{self} in Z")))
                }
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val != 0,
            Scalar::Rational(r) => !r.is_zero(),
            Scalar::Integer(n) => n.abs().is_one(),
        }
    }

    /// a - b*c, the row-reduction workhorse.
    pub fn sub_mul(&self, b: &Scalar, c: &Scalar) -> Scalar {
        self.sub(&b.mul(c))
    }

    /// Exact division; errors when the divisor is not a unit (over ℤ a
    /// non-unit divisor is accepted only when it divides exactly).
    pub fn div_exact(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => {
                if b.is_zero() {
                    return Err(Error::NonUnit("0 in Z".into()));
                }
                let (q, r) = num_integer::Integer::div_rem(a, b);
                if r.is_zero() {
                    Ok(Scalar::Integer(q))
                } else {
                    Err(Error::NonUnit(format!("{other} does not divide {self}")))
                }
            }
            _ => Ok(self.mul(&other.inv()?)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { val, .. } => write!(f, "{val}"),
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Integer(n) => write!(f, "{n}"),
        }
    }
}

/// Applies `op` after checking that both operands live in `ring`; the entry
/// point used by the CLI so that ring mismatches surface as errors instead
/// of panics.
pub fn checked_arith(ring: CoefficientRing, a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    if a.ring() != ring {
        return Err(Error::RingMismatch(a.ring(), ring));
    }
    if b.ring() != ring && matches!(op, ArithOp::Add | ArithOp::Mul) {
        return Err(Error::RingMismatch(b.ring(), ring));
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Neg => a.neg(),
        ArithOp::Inv => a.inv()?,
    })
}

#[derive(Clone, Copy, Debug)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}
