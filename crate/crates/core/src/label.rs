//! Arc labels: an action name paired with an exact positive weight.
//!
//! Synchronisation in the products is decided by label equality, so weights
//! are exact rationals. They serialize as decimal strings when the
//! denominator has only the prime factors 2 and 5, and as `p/q` otherwise.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedMul, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("action name must not be empty")]
    EmptyAction,
    #[error("weight must be positive, got {0}")]
    NonPositiveWeight(String),
    #[error("malformed weight {0:?}")]
    MalformedWeight(String),
}

/// Exact positive weight (worst-case execution time of an action).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Ratio<i64>);

impl Weight {
    pub fn new(value: Ratio<i64>) -> Result<Self, LabelError> {
        if value.is_positive() {
            Ok(Weight(value))
        } else {
            Err(LabelError::NonPositiveWeight(value.to_string()))
        }
    }

    pub fn from_integer(value: i64) -> Result<Self, LabelError> {
        Self::new(Ratio::from_integer(value))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight(Ratio::from_integer(1))
    }
}

fn parse_decimal(s: &str) -> Option<Ratio<i64>> {
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut numer: i64 = 0;
    let mut denom: i64 = 1;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer.checked_mul(10)?.checked_add(i64::from(b - b'0'))?;
    }
    for _ in 0..frac_part.len() {
        denom = denom.checked_mul(10)?;
    }
    let value = Ratio::new(numer, denom);
    Some(if negative { -value } else { value })
}

impl FromStr for Weight {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let value = match trimmed.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| LabelError::MalformedWeight(s.to_string()))?;
                let d: i64 = d.trim().parse().map_err(|_| LabelError::MalformedWeight(s.to_string()))?;
                if d.is_zero() {
                    return Err(LabelError::MalformedWeight(s.to_string()));
                }
                Ratio::new(n, d)
            }
            None => parse_decimal(trimmed).ok_or_else(|| LabelError::MalformedWeight(s.to_string()))?,
        };
        Weight::new(value)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = *self.0.numer();
        let denom = *self.0.denom();
        if denom == 1 {
            return write!(f, "{numer}");
        }
        // Terminating decimal iff the reduced denominator is 2^a * 5^b.
        let mut rest = denom;
        let (mut twos, mut fives) = (0u32, 0u32);
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        if rest != 1 {
            return write!(f, "{numer}/{denom}");
        }
        let places = twos.max(fives);
        let scale = 10i64.checked_pow(places);
        let scaled = scale
            .and_then(|s| Ratio::from_integer(s).checked_mul(&self.0))
            .filter(|r| r.is_integer());
        match scaled {
            Some(scaled) => {
                let scaled = scaled.to_integer();
                let scale = scale.unwrap_or(1);
                let int_part = scaled / scale;
                let frac_part = scaled % scale;
                write!(f, "{int_part}.{frac_part:0width$}", width = places as usize)
            }
            None => write!(f, "{numer}/{denom}"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An `(action, weight)` pair. Equality is componentwise, so two arcs with the
/// same action but different weights never synchronise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Label {
    action: String,
    weight: Weight,
}

impl Label {
    pub fn new(action: impl Into<String>, weight: Weight) -> Result<Self, LabelError> {
        let action = action.into();
        if action.is_empty() {
            return Err(LabelError::EmptyAction);
        }
        Ok(Label { action, weight })
    }

    /// Label with unit weight.
    pub fn unit(action: impl Into<String>) -> Result<Self, LabelError> {
        Self::new(action, Weight::default())
    }

    pub fn action(&self) -> &str {
        &self.action
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.action, self.weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_parsing_and_display() {
        let cases = [("1", "1"), ("1.5", "1.5"), ("0.25", "0.25"), ("3/2", "1.5"), ("1/3", "1/3"), ("2.50", "2.5"), ("10", "10")];
        for (input, shown) in cases {
            let w: Weight = input.parse().unwrap();
            assert_eq!(w.to_string(), shown, "input {input}");
            let back: Weight = w.to_string().parse().unwrap();
            assert_eq!(back, w);
        }
    }

    #[test]
    fn weight_rejects_non_positive_and_garbage() {
        assert!(matches!("0".parse::<Weight>(), Err(LabelError::NonPositiveWeight(_))));
        assert!(matches!("-1.5".parse::<Weight>(), Err(LabelError::NonPositiveWeight(_))));
        assert!(matches!("abc".parse::<Weight>(), Err(LabelError::MalformedWeight(_))));
        assert!(matches!("1/0".parse::<Weight>(), Err(LabelError::MalformedWeight(_))));
        assert!(matches!(".".parse::<Weight>(), Err(LabelError::MalformedWeight(_))));
    }

    #[test]
    fn label_equality_needs_both_parts() {
        let a1 = Label::new("a", "1".parse().unwrap()).unwrap();
        let a2 = Label::new("a", "2".parse().unwrap()).unwrap();
        let a1_again = Label::new("a", "2/2".parse().unwrap()).unwrap();
        assert_ne!(a1, a2);
        assert_eq!(a1, a1_again);
        assert_eq!(Label::unit(""), Err(LabelError::EmptyAction));
    }
}
