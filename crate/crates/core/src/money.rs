//! Exact currency in integer pence.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Pounds sterling held as whole pence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Money(i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid currency amount {0:?}")]
pub struct ParseMoneyError(pub String);

impl Money {
    pub const ZERO: Money = Money(0);

    pub const fn from_pence(pence: i64) -> Self {
        Self(pence)
    }

    pub const fn from_pounds(pounds: i64) -> Self {
        Self(pounds * 100)
    }

    pub const fn pence(self) -> i64 {
        self.0
    }

    /// Lossy view for objective arithmetic; never used for totals.
    pub fn as_pounds_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn checked_mul(self, qty: u32) -> Option<Money> {
        self.0.checked_mul(i64::from(qty)).map(Money)
    }

    /// Plain decimal pounds without symbol or grouping: `76809`, `1024.50`.
    pub fn to_decimal_string(self) -> String {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        match abs % 100 {
            0 => format!("{sign}{}", abs / 100),
            p => format!("{sign}{}.{p:02}", abs / 100),
        }
    }
}

impl Add for Money {
    type Output = Money;
    fn add(self, rhs: Money) -> Money {
        Money(self.0 + rhs.0)
    }
}

impl Mul<u32> for Money {
    type Output = Money;
    fn mul(self, rhs: u32) -> Money {
        Money(self.0 * i64::from(rhs))
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        iter.fold(Money::ZERO, Add::add)
    }
}

impl FromStr for Money {
    type Err = ParseMoneyError;

    /// Parses `1234`, `1234.5`, `1,234.56` or `£1,234.56` without going
    /// through floating point.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseMoneyError(s.to_string());
        let t = s.trim();
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let t = t.strip_prefix('£').unwrap_or(t).replace(',', "");
        let (whole, frac) = match t.split_once('.') {
            Some((w, f)) => (w, f),
            None => (t.as_str(), ""),
        };
        if whole.is_empty() || !whole.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        if frac.len() > 2 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let pounds: i64 = whole.parse().map_err(|_| err())?;
        let pence: i64 = match frac.len() {
            0 => 0,
            1 => frac.parse::<i64>().map_err(|_| err())? * 10,
            _ => frac.parse().map_err(|_| err())?,
        };
        let total = pounds.checked_mul(100).and_then(|p| p.checked_add(pence)).ok_or_else(err)?;
        Ok(Money(if neg { -total } else { total }))
    }
}

impl fmt::Display for Money {
    /// `£76,809` for whole pounds, `£1,234.50` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let (pounds, pence) = (abs / 100, abs % 100);
        let digits = pounds.to_string();
        let mut grouped = String::with_capacity(digits.len() + digits.len() / 3);
        for (i, c) in digits.chars().enumerate() {
            if i > 0 && (digits.len() - i) % 3 == 0 {
                grouped.push(',');
            }
            grouped.push(c);
        }
        if pence == 0 {
            write!(f, "{sign}£{grouped}")
        } else {
            write!(f, "{sign}£{grouped}.{pence:02}")
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PoundsRepr {
    Int(i64),
    Float(f64),
    Text(String),
}

impl PoundsRepr {
    fn into_money(self) -> Result<Money, ParseMoneyError> {
        match self {
            PoundsRepr::Int(p) => p.checked_mul(100).map(Money).ok_or_else(|| ParseMoneyError(p.to_string())),
            PoundsRepr::Float(f) => f.to_string().parse(),
            PoundsRepr::Text(t) => t.parse(),
        }
    }
}

/// Human-edited amounts in pounds: accepts `417`, `1024.5` or `"£1,024.50"`
/// and writes them back as a decimal string.
pub mod pounds {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{Money, PoundsRepr};

    pub fn serialize<S: Serializer>(m: &Money, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&m.to_decimal_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Money, D::Error> {
        PoundsRepr::deserialize(d)?.into_money().map_err(serde::de::Error::custom)
    }
}

/// [`pounds`] for optional fields; pair with `#[serde(default)]`.
pub mod opt_pounds {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{Money, PoundsRepr};

    pub fn serialize<S: Serializer>(m: &Option<Money>, s: S) -> Result<S::Ok, S::Error> {
        match m {
            Some(m) => s.serialize_some(&m.to_decimal_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Money>, D::Error> {
        Option::<PoundsRepr>::deserialize(d)?
            .map(PoundsRepr::into_money)
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

/// Serialises [`Money`] as `{"pence": 7680900, "display": "£76,809"}`.
/// Deserialisation accepts that object, bare pence, or a pounds string.
pub mod with_display {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Money;

    #[derive(Serialize)]
    struct Out {
        pence: i64,
        display: String,
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum In {
        Tagged { pence: i64 },
        Pence(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(m: &Money, s: S) -> Result<S::Ok, S::Error> {
        Out { pence: m.pence(), display: m.to_string() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Money, D::Error> {
        match In::deserialize(d)? {
            In::Tagged { pence } | In::Pence(pence) => Ok(Money::from_pence(pence)),
            In::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
