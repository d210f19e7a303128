use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact unsigned integer wide enough for window centers beyond the
/// 64-bit range (128 bits here; the centers of interest sit near 2^79).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WideInteger(pub u128);

impl WideInteger {
    pub fn new(value: u128) -> Self {
        WideInteger(value)
    }

    pub fn get(self) -> u128 {
        self.0
    }

    pub fn checked_add(self, rhs: u128) -> Result<Self> {
        self.0
            .checked_add(rhs)
            .map(WideInteger)
            .ok_or_else(|| Error::usage(format!("{} + {} overflows 128 bits", self.0, rhs)))
    }

    pub fn checked_sub(self, rhs: u128) -> Result<Self> {
        self.0
            .checked_sub(rhs)
            .map(WideInteger)
            .ok_or_else(|| Error::usage(format!("{} - {} underflows", self.0, rhs)))
    }
}

impl fmt::Display for WideInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for WideInteger {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::usage("empty integer literal"));
        }
        t.parse::<u128>()
            .map(WideInteger)
            .map_err(|_| Error::usage(format!("not a 128-bit unsigned decimal integer: {t:?}")))
    }
}

impl From<u64> for WideInteger {
    fn from(v: u64) -> Self {
        WideInteger(v as u128)
    }
}

impl From<u128> for WideInteger {
    fn from(v: u128) -> Self {
        WideInteger(v)
    }
}
