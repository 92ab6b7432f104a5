//! Exact rational distances.

use std::fmt;
use std::str::FromStr;
use std::ops::{Add, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Rational64);

impl Rational {
    pub const ZERO: Rational = Rational(Rational64::ZERO);

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Rational64::new(num, den))
    }

    pub fn int(value: i64) -> Self {
        Rational(Rational64::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        *self > Self::ZERO
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::int(value)
    }
}

/// Parses `"3/2"`, `"-1/4"` or `"2"`.
impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("not a rational: {s:?}");
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1i64),
        };
        if den == 0 {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalDoc {
    num: i64,
    den: i64,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalDoc { num: self.numer(), den: self.denom() }.serialize(serializer)
    }
}

/// Input forms: `{"num", "den"}`, an integer, or a string like `"3/2"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalInput {
    Doc(RationalDoc),
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = match RationalInput::deserialize(deserializer)? {
            RationalInput::Doc(doc) => doc,
            RationalInput::Int(v) => return Ok(Rational::int(v)),
            RationalInput::Text(t) => return t.parse().map_err(D::Error::custom),
        };
        if doc.den <= 0 {
            return Err(D::Error::custom(format!("denominator must be positive, got {}", doc.den)));
        }
        if doc.num.gcd(&doc.den) != 1 {
            return Err(D::Error::custom(format!("{}/{} is not in lowest terms", doc.num, doc.den)));
        }
        Ok(Rational::new(doc.num, doc.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deserializes_shorthand_forms() {
        let v: Vec<Rational> = serde_json::from_str(r#"[{"num": 1, "den": 2}, 3, "5/4", " 2 "]"#).unwrap();
        assert_eq!(v, vec![Rational::new(1, 2), Rational::int(3), Rational::new(5, 4), Rational::int(2)]);
        assert!(serde_json::from_str::<Rational>(r#""1/0""#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num": 2, "den": 4}"#).is_err());
    }

    #[test]
    fn parses() {
        assert_eq!("3/2".parse::<Rational>().unwrap(), Rational::new(3, 2));
        assert_eq!("4/2".parse::<Rational>().unwrap(), Rational::int(2));
        assert_eq!(" 7 ".parse::<Rational>().unwrap(), Rational::int(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn json_shape() {
        let r = Rational::new(6, 4);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":3,"den":2}"#);
        let back: Rational = serde_json::from_str(r#"{"num":3,"den":2}"#).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(serde_json::from_str::<Rational>(r#"{"num":2,"den":4}"#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":0}"#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":-2}"#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num":0,"den":1}"#).is_ok());
    }

    #[test]
    fn arithmetic() {
        let half = Rational::new(1, 2);
        assert_eq!(half + half, Rational::int(1));
        assert_eq!(Rational::int(1) - half, half);
        assert_eq!(format!("{}", Rational::new(3, 2)), "3/2");
    }
}
