use std::fmt;

use serde::{Deserialize, Serialize};

/// A genus in ½ℕ stored as the doubled integer `2g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Genus2(pub u32);

impl Genus2 {
    pub const ZERO: Genus2 = Genus2(0);

    pub fn new(twice_genus: u32) -> Self {
        Genus2(twice_genus)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    /// Euler characteristic `2 - 2g`.
    pub fn euler_characteristic(self) -> i64 {
        2 - self.0 as i64
    }

    /// Orientable surfaces only occur at integral genus.
    pub fn is_integral(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Parses `"3/2"`, `"1"`, `"0.5"` and friends.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().ok()?;
            return match den.trim() {
                "2" => Some(Genus2(num)),
                "1" => Some(Genus2(2 * num)),
                _ => None,
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int: u32 = if int.is_empty() { 0 } else { int.parse().ok()? };
            return match frac.trim_end_matches('0') {
                "" => Some(Genus2(2 * int)),
                "5" => Some(Genus2(2 * int + 1)),
                _ => None,
            };
        }
        s.parse::<u32>().ok().map(|g| Genus2(2 * g))
    }
}

impl fmt::Display for Genus2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
