//! Exact rates in `[0, 1]` for support and density thresholds.
//!
//! Thresholds are compared against integer counts (`count / total`), and the
//! boundary is inclusive, so `0.5` on two objects must accept a count of one.
//! A rate keeps the decimal it was written as (`"0.1"` is exactly one tenth)
//! and comparisons are done in integer arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const MAX_DECIMALS: u32 = 19;

/// A rational number in `[0, 1]`.
#[derive(Clone, Copy)]
pub struct Rate {
    num: u64,
    den: u64,
}

impl Rate {
    pub const ZERO: Rate = Rate { num: 0, den: 1 };
    pub const ONE: Rate = Rate { num: 1, den: 1 };

    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::rate("rate", format!("{num}/{den}"), "[0, 1]"));
        }
        Ok(Rate { num, den })
    }

    /// Builds a rate from the shortest decimal that round-trips to `value`,
    /// so `0.1_f64` becomes exactly 1/10. Decimals beyond 19 places are rounded.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::rate("rate", value, "[0, 1]"));
        }
        parse_decimal(&format!("{value}")).ok_or_else(|| Error::rate("rate", value, "[0, 1]"))
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `count / total >= self`.
    pub fn is_met_by(self, count: usize, total: usize) -> bool {
        (count as u128) * (self.den as u128) >= (self.num as u128) * (total as u128)
    }

    /// `count / total <= self`.
    pub fn is_not_exceeded_by(self, count: usize, total: usize) -> bool {
        (count as u128) * (self.den as u128) <= (self.num as u128) * (total as u128)
    }

    /// Smallest count `c` with `c / total >= self`.
    pub fn min_count(self, total: usize) -> usize {
        let need = (self.num as u128) * (total as u128);
        need.div_ceil(self.den as u128) as usize
    }

    pub fn is_positive(self) -> bool {
        self.num > 0
    }
}

fn parse_decimal(text: &str) -> Option<Rate> {
    let text = text.trim();
    if text.contains(['e', 'E']) {
        let v: f64 = text.parse().ok()?;
        return Rate::from_f64(v).ok();
    }
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let int_val: u64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let frac = frac_part.trim_end_matches('0');
    if int_val > 1 || (int_val == 1 && !frac.is_empty()) {
        return None;
    }
    if int_val == 1 {
        return Some(Rate::ONE);
    }
    let mut digits = frac.len() as u32;
    let mut num: u128 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    if digits > MAX_DECIMALS {
        let drop = 10u128.pow(digits - MAX_DECIMALS);
        num = (num + drop / 2) / drop;
        digits = MAX_DECIMALS;
    }
    let den = 10u128.pow(digits);
    let g = gcd(num, den);
    Some(Rate {
        num: (num / g) as u64,
        den: (den / g) as u64,
    })
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl FromStr for Rate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| Error::rate("rate", s, "[0, 1]"))?;
            let d = d.trim().parse().map_err(|_| Error::rate("rate", s, "[0, 1]"))?;
            return Rate::ratio(n, d);
        }
        parse_decimal(s).ok_or_else(|| Error::rate("rate", s, "[0, 1]"))
    }
}

impl TryFrom<f64> for Rate {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Rate::from_f64(value)
    }
}

impl PartialEq for Rate {
    fn eq(&self, other: &Self) -> bool {
        (self.num as u128) * (other.den as u128) == (other.num as u128) * (self.den as u128)
    }
}

impl Eq for Rate {}

impl PartialOrd for Rate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        ((self.num as u128) * (other.den as u128)).cmp(&((other.num as u128) * (self.den as u128)))
    }
}

impl fmt::Debug for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for Rate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Rate::from_f64(v).map_err(serde::de::Error::custom)
    }
}
