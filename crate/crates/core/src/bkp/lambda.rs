use std::fmt;

use crate::error::{Error, Result};

/// A derivative index `[ℓ, 3^{n3}, 2^{n2}, 1^{n1}]`, stored as a multiset with
/// at most one part larger than 3 (`ell`, 0 when absent).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LambdaIndex {
    pub ell: u32,
    pub n3: u32,
    pub n2: u32,
    pub n1: u32,
}

impl LambdaIndex {
    pub const EMPTY: LambdaIndex = LambdaIndex { ell: 0, n3: 0, n2: 0, n1: 0 };

    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let mut l = Self::EMPTY;
        for &p in parts {
            l = l.with_part(p)?;
        }
        Ok(l)
    }

    /// `[1^k]`.
    pub fn ones(k: u32) -> Self {
        LambdaIndex { n1: k, ..Self::EMPTY }
    }

    /// Adds one part; fails on a second part above 3 or on a zero part.
    pub fn with_part(self, p: u32) -> Result<Self> {
        let mut l = self;
        match p {
            0 => return Err(Error::UnreachableIndex(format!("{self} with a zero part"))),
            1 => l.n1 += 1,
            2 => l.n2 += 1,
            3 => l.n3 += 1,
            _ if l.ell == 0 => l.ell = p,
            _ => return Err(Error::UnreachableIndex(format!("{self} with another part {p}"))),
        }
        Ok(l)
    }

    /// Removes one part equal to `p`, if present.
    pub fn without_part(self, p: u32) -> Option<Self> {
        let mut l = self;
        match p {
            1 if l.n1 > 0 => l.n1 -= 1,
            2 if l.n2 > 0 => l.n2 -= 1,
            3 if l.n3 > 0 => l.n3 -= 1,
            _ if p > 3 && l.ell == p => l.ell = 0,
            _ => return None,
        }
        Some(l)
    }

    pub fn size(&self) -> u32 {
        self.ell + 3 * self.n3 + 2 * self.n2 + self.n1
    }

    /// Number of parts.
    pub fn len(&self) -> u32 {
        u32::from(self.ell > 0) + self.n3 + self.n2 + self.n1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn largest(&self) -> Option<u32> {
        if self.ell > 0 {
            Some(self.ell)
        } else if self.n3 > 0 {
            Some(3)
        } else if self.n2 > 0 {
            Some(2)
        } else if self.n1 > 0 {
            Some(1)
        } else {
            None
        }
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.len() as usize);
        if self.ell > 0 {
            v.push(self.ell);
        }
        for (p, k) in [(3, self.n3), (2, self.n2), (1, self.n1)] {
            v.extend(std::iter::repeat_n(p, k as usize));
        }
        v
    }

    /// The small parts `(n3, n2, n1)` as an index with no large part.
    pub fn small(&self) -> LambdaIndex {
        LambdaIndex { ell: 0, ..*self }
    }
}

impl fmt::Display for LambdaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        if self.ell > 0 {
            items.push(self.ell.to_string());
        }
        for (p, k) in [(3, self.n3), (2, self.n2), (1, self.n1)] {
            match k {
                0 => {}
                1 => items.push(p.to_string()),
                _ => items.push(format!("{p}^{k}")),
            }
        }
        write!(f, "[{}]", items.join(","))
    }
}

impl std::str::FromStr for LambdaIndex {
    type Err = Error;

    /// Reads `[5,1]`, `2^2,1^2` or `1^6`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut l = Self::EMPTY;
        for item in body.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let bad = || Error::Invalid(format!("bad part `{item}` in `{s}`"));
            let (p, k) = match item.split_once('^') {
                Some((p, k)) => (p.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?),
                None => (item.parse().map_err(|_| bad())?, 1u32),
            };
            for _ in 0..k {
                l = l.with_part(p)?;
            }
        }
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_semantics() {
        let a = LambdaIndex::from_parts(&[1, 5, 1]).unwrap();
        let b: LambdaIndex = "[5,1^2]".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.size(), 7);
        assert_eq!(a.len(), 3);
        assert_eq!(a.parts(), vec![5, 1, 1]);
        assert_eq!(a.to_string(), "[5,1^2]");
        assert!(a.with_part(4).is_err());
        assert_eq!(a.without_part(5).unwrap(), LambdaIndex::ones(2));
        assert_eq!(a.without_part(2), None);
        assert_eq!(LambdaIndex::EMPTY.to_string(), "[]");
    }
}
