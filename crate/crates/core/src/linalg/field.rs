use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// The exact base field: the rationals or a prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

/// Largest modulus accepted, so that products of residues fit in `u128` comfortably.
const MAX_PRIME: u64 = u32::MAX as u64;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<FieldSpec, LinalgError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::P {
                v: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes in the field.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match *self {
            FieldSpec::Rational => {
                if den.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(BigRational::new(num.clone(), den.clone())))
                }
            }
            FieldSpec::Prime(p) => {
                let reduce = |x: &BigInt| -> u64 {
                    let m = BigInt::from(p);
                    let r = ((x % &m) + &m) % &m;
                    r.to_u64().expect("residue fits in u64")
                };
                let d = Scalar::P { v: reduce(den), p };
                let n = Scalar::P { v: reduce(num), p };
                d.inv().map(|di| n.mul(&di))
            }
        }
    }

    /// Parses "a" or "a/b" (optional sign) into this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::BadScalar(text.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        self.fraction(&num, &den).ok_or_else(bad)
    }

    /// Converts a scalar of another field into this one (rationals reduce mod p).
    pub fn convert(&self, s: &Scalar) -> Result<Scalar, LinalgError> {
        match (self, s) {
            (_, Scalar::Q(q)) => self
                .fraction(q.numer(), q.denom())
                .ok_or_else(|| LinalgError::BadScalar(s.to_string())),
            (FieldSpec::Prime(p), Scalar::P { p: q, .. }) if p == q => Ok(s.clone()),
            _ => Err(LinalgError::FieldMismatch),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        matches!((self, s), (FieldSpec::Rational, Scalar::Q(_)))
            || matches!((self, s), (FieldSpec::Prime(p), Scalar::P { p: q, .. }) if p == q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "rational" | "Q" => Ok(FieldSpec::Rational),
            other => {
                let p = other
                    .strip_prefix("prime:")
                    .and_then(|n| n.parse::<u64>().ok())
                    .ok_or_else(|| LinalgError::BadField(other.to_string()))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field element. Rationals are kept in lowest terms, residues in `0..p`,
/// so derived equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P { v: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rational,
            Scalar::P { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) if p == q => Scalar::P {
                v: (a + b) % p,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::P { v, p } => Scalar::P {
                v: (p - v) % p,
                p: *p,
            },
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) if p == q => Scalar::P {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Q(a) => Some(Scalar::Q(a.recip())),
            Scalar::P { v, p } => {
                // Fermat: v^(p-2)
                let (mut base, mut e, mut acc) = (*v as u128, p - 2, 1u128);
                let m = *p as u128;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Some(Scalar::P {
                    v: acc as u64,
                    p: *p,
                })
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::P { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions_in_lowest_terms() {
        let q = FieldSpec::Rational;
        assert_eq!(q.parse_scalar("6/4").unwrap().to_string(), "3/2");
        assert_eq!(q.parse_scalar("-5").unwrap().to_string(), "-5");
        assert_eq!(q.parse_scalar("3/-6").unwrap().to_string(), "-1/2");
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("x").is_err());
    }

    #[test]
    fn prime_field_reduces_fractions() {
        let f7 = FieldSpec::prime(7).unwrap();
        // 3/2 = 3 * 4 = 12 = 5 mod 7
        assert_eq!(f7.parse_scalar("3/2").unwrap().to_string(), "5");
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert!(f7.parse_scalar("1/7").is_err());
        assert!(FieldSpec::prime(9).is_err());
    }

    #[test]
    fn inverses_round_trip() {
        let f7 = FieldSpec::prime(7).unwrap();
        for n in 1..7 {
            let x = f7.from_i64(n);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        let q = FieldSpec::Rational.parse_scalar("-2/3").unwrap();
        assert!(q.mul(&q.inv().unwrap()).is_one());
    }

    #[test]
    fn field_spec_text_round_trip() {
        for s in ["rational", "prime:7", "prime:2"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert!("prime:1".parse::<FieldSpec>().is_err());
    }
}
