//! Rooted triangulations on all surfaces, counted by half the number of
//! faces `n` (so `3n` edges) and genus.
//!
//! Unlike the other models the prefactor depends on the genus:
//! `D(n, g) = 2n^2 + (3 - 2g)n + (1 - g)(1 - 2g)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{missing, to_integer, IntTable};
use crate::arith::{binomial, int, pow2, rat};
use crate::error::{Error, Result};

const MODEL: &str = "triangulations";

pub type TriTable = IntTable;

/// `t_1^0, t_2^0, t_1^{1/2}, t_2^{1/2}, t_1^1, t_2^1, t_2^{3/2}`.
pub fn initial_conditions() -> TriTable {
    let mut t = TriTable::new();
    for (n, g2, v) in [(1, 0, 4), (2, 0, 32), (1, 1, 9), (2, 1, 118), (1, 2, 7), (2, 2, 202), (2, 3, 128)] {
        t.insert(n, g2, BigInt::from(v));
    }
    t
}

/// Twice the genus-dependent prefactor denominator, `2 D(n, g)`, which stays
/// integral for half-integer `g`.
pub fn denominator2(n: i64, g2: i64) -> i64 {
    4 * n * n + 2 * (3 - g2) * n + (2 - g2) * (1 - g2)
}

fn lookup(table: &TriTable, n: i64, g2: i64) -> Result<BigRational> {
    if n <= 0 || g2 < 0 || g2 > n + 1 {
        return Ok(BigRational::zero());
    }
    table.get(n as u32, g2 as u32).map(|c| BigRational::from_integer(c.clone())).ok_or_else(|| missing(MODEL, n, g2))
}

/// `sum (3n_1 - 1)(3n_2 - 1) t_{n_1 - 1}^{g_1} t_{n_2 - 1}^{g_2}` over
/// `n_1 + n_2 = m`, `g_1 + g_2 = g`.
fn conv(table: &TriTable, m: i64, g2: i64) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for a in 0..=g2 {
        for m1 in 2..=m - 2 {
            let x = lookup(table, m1 - 1, a)?;
            if x.is_zero() {
                continue;
            }
            acc += x * lookup(table, m - m1 - 1, g2 - a)? * int((3 * m1 - 1) * (3 * (m - m1) - 1));
        }
    }
    Ok(acc)
}

/// `(3m-1) t_{m-1}^g + 2(3m-4)((3m-2) m t_{m-2}^{g-1} + 2(t_{m-2}^{g-1/2} + t_{m-2}^g))`.
fn chain(table: &TriTable, m: i64, g2: i64) -> Result<BigRational> {
    let mut acc = lookup(table, m - 1, g2)? * int(3 * m - 1);
    let inner = lookup(table, m - 2, g2 - 2)? * int((3 * m - 2) * m)
        + (lookup(table, m - 2, g2 - 1)? + lookup(table, m - 2, g2)?) * int(2);
    acc += inner * int(2 * (3 * m - 4));
    Ok(acc)
}

/// The `n_1 = n` terms that survive always have `g_0 != g`, so the first
/// correction applies unconditionally.
fn bracket(table: &TriTable, n2: i64, g2: i64) -> Result<BigRational> {
    let d = |k: i64| i64::from(g2 == k);
    let mut acc = match n2 {
        0 => rat(d(0) - d(1), 8),
        1 => int(2 * d(0) + 2 * d(1) + d(2)),
        2 => int(4 * (d(0) + 2 * d(1) + 9 * d(2) + 8 * d(3))),
        _ => BigRational::zero(),
    };
    if n2 >= 1 {
        acc -= lookup(table, n2, g2)? * rat(n2 + 1, 8);
        acc += chain(table, n2, g2)?;
        acc += conv(table, n2, g2)?;
    }
    Ok(acc)
}

fn step(table: &TriTable, n: i64, g2: i64) -> Result<BigInt> {
    let d2 = denominator2(n, g2);
    if d2 == 0 {
        return Err(Error::ZeroDenominator { n, g2 });
    }
    let first = (chain(table, n, g2)? + conv(table, n, g2)?) * int(6 * n);
    let mut second = BigRational::zero();
    for g1 in 0..=g2 {
        for n1 in 1..=n {
            let n2 = n - n1;
            let mut coef = BigRational::zero();
            for g0 in (0..=g1).filter(|g0| (g1 - g0) % 2 == 0) {
                // The g0 = g term at n1 = n multiplies a vanishing bracket.
                if n1 == n && g0 == g2 {
                    continue;
                }
                let x = lookup(table, n1, g0)?;
                if !x.is_zero() {
                    coef += x * BigRational::from_integer(binomial(n1 + 2 - g0, n1 - g1) * pow2((2 + g1 - g0) as u32));
                }
            }
            if coef.is_zero() {
                continue;
            }
            second += coef * bracket(table, n2, g2 - g1)?;
        }
    }
    let v = (first - second) * rat(4, d2);
    to_integer(MODEL, n as u32, g2 as u32, v)
}

/// `t_n^g` from entries of smaller size and, at size `n`, smaller genus.
pub fn tri_rec(n: u32, g2: u32, table: &TriTable) -> Result<BigInt> {
    if n <= 2 {
        return Err(Error::RecurrenceDomain { model: MODEL, n: n as i64 });
    }
    step(table, n as i64, g2 as i64)
}

pub fn extend_triangulations(table: &mut TriTable, n_max: u32, g2_max: u32) -> Result<()> {
    for ((n, g2), c) in initial_conditions().iter() {
        if n <= n_max && g2 <= g2_max && !table.contains(n, g2) {
            table.insert(n, g2, c.clone());
        }
    }
    for n in 3..=n_max {
        for g2 in 0..=g2_max.min(n + 1) {
            if !table.contains(n, g2) {
                let v = tri_rec(n, g2, table)?;
                table.insert(n, g2, v);
            }
        }
    }
    Ok(())
}

pub fn compute_triangulations(n_max: u32, g2_max: u32) -> Result<TriTable> {
    let mut t = TriTable::new();
    extend_triangulations(&mut t, n_max, g2_max)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let t = compute_triangulations(5, 6).unwrap();
        let get = |n, g2| t.get(n, g2).unwrap().clone();
        assert_eq!(get(1, 2), BigInt::from(7));
        assert_eq!(get(2, 3), BigInt::from(128));
        assert_eq!(get(5, 5), BigInt::from(17742726));
    }

    #[test]
    fn reference_table() {
        let t = compute_triangulations(15, 8).unwrap();
        let mut seen = 0;
        for line in include_str!("../../tests/data/triangulations.txt").lines() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let (n, g2): (u32, u32) = (f[0].parse().unwrap(), f[1].parse().unwrap());
            let want: BigInt = f[2].parse().unwrap();
            let got = t.get(n, g2).cloned().unwrap_or_default();
            assert_eq!(got, want, "n={n} g2={g2}");
            seen += 1;
        }
        assert!(seen > 100);
    }

    #[test]
    fn denominator_positive_in_range() {
        for n in 1..200 {
            for g2 in 0..=n + 1 {
                assert!(denominator2(n, g2) > 0, "n={n} g2={g2}");
            }
        }
    }
}
