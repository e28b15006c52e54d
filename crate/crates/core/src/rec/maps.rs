//! Rooted maps on all surfaces, counted by edges, genus, vertices (`u`) and
//! faces (`z`).
//!
//! Two independent engines produce the bivariate polynomials `H_n^g(u, z)`:
//! [`Engine::Kz`] extracts coefficients from the shifted functional equation
//! of the specialised tau function, [`Engine::Cc`] works through the
//! bipartite-quadrangulation form. They use different values of `H_0`, so each
//! carries its own boundary constant and exported tables hold `n >= 1` only.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ensure_integral, missing, to_integer, IntTable, PolyTable};
use crate::arith::{binomial, int, pow2, rat, MPoly, Monomial, Var};
use crate::error::{Error, Result};

const MODEL: &str = "maps";

pub type MapsTable = PolyTable;
pub type OneFaceTable = IntTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Kz,
    Cc,
}

fn u() -> MPoly {
    MPoly::var(Var::U)
}

fn z() -> MPoly {
    MPoly::var(Var::Z)
}

fn uz() -> MPoly {
    MPoly::mono(1, 1, 1, 0)
}

/// `H_1^0, H_2^0, H_1^{1/2}, H_2^{1/2}, H_2^1`.
pub fn initial_conditions() -> MapsTable {
    let mut t = MapsTable::new();
    let upz = &u() + &z();
    t.insert(1, 0, &uz() * &upz);
    t.insert(2, 0, &uz() * &(MPoly::mono(2, 2, 0, 0) + MPoly::mono(5, 1, 1, 0) + MPoly::mono(2, 0, 2, 0)));
    t.insert(1, 1, uz());
    t.insert(2, 1, (&uz() * &upz).scale_int(5));
    t.insert(2, 2, uz().scale_int(5));
    t
}

/// Table access with the boundary conventions of one engine.
struct Lookup<'a> {
    table: &'a MapsTable,
    h0: MPoly,
    zero: MPoly,
}

impl<'a> Lookup<'a> {
    fn new(table: &'a MapsTable, engine: Engine) -> Self {
        let h0 = match engine {
            Engine::Kz => MPoly::zero(),
            Engine::Cc => uz(),
        };
        Lookup { table, h0, zero: MPoly::zero() }
    }

    fn h(&self, n: i64, g2: i64) -> Result<&MPoly> {
        if n < 0 || g2 < 0 || g2 > n {
            return Ok(&self.zero);
        }
        if n == 0 {
            return Ok(if g2 == 0 { &self.h0 } else { &self.zero });
        }
        self.table.get(n as u32, g2 as u32).ok_or_else(|| missing(MODEL, n, g2))
    }
}

/// Memoised sub-expressions shared between consecutive `(n, g)` steps. Every
/// cached value depends only on table rows that are final when it is first
/// requested.
#[derive(Default)]
struct Memo {
    conv: HashMap<(i64, i64), MPoly>,
    coef: HashMap<(i64, i64), MPoly>,
    bracket: HashMap<(i64, i64), MPoly>,
}

/// `sum_{g1+g2=g} sum_{n1+n2=n} (2n1-1)(2n2-1) H_{n1-1}^{g1} H_{n2-1}^{g2}`.
fn conv(lk: &Lookup, memo: &mut Memo, n: i64, g2: i64) -> Result<MPoly> {
    if let Some(p) = memo.conv.get(&(n, g2)) {
        return Ok(p.clone());
    }
    let mut acc = MPoly::zero();
    for a in 0..=g2 {
        for n1 in 0..=n {
            let n2 = n - n1;
            let (x, y) = (lk.h(n1 - 1, a)?, lk.h(n2 - 1, g2 - a)?);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc += (x * y).scale_int((2 * n1 - 1) * (2 * n2 - 1));
        }
    }
    memo.conv.insert((n, g2), acc.clone());
    Ok(acc)
}

/// Coefficient of `H_{n1}^{g0}` after the double shift `u -> u ± 2`, summed
/// over `g0`: `sum_{g0} 2^r sum_{p+j} C(p, r) u^{p-r} z^j [u^p z^j] H_{n1}^{g0}`
/// with `r = 2 + 2(g1 - g0)`. The term `g0 = skip` is left out.
fn kz_coefficient(lk: &Lookup, n1: i64, g1: i64, skip: Option<i64>) -> Result<MPoly> {
    let mut acc = MPoly::zero();
    for g0 in (0..=g1).filter(|g0| (g1 - g0) % 2 == 0) {
        if Some(g0) == skip {
            continue;
        }
        let r = 2 + g1 - g0;
        let h = lk.h(n1, g0)?;
        let w = BigRational::from_integer(pow2(r as u32));
        for (m, c) in h.terms() {
            let p = m.u as i64;
            if p < r {
                continue;
            }
            let b = BigRational::from_integer(binomial(p, r));
            acc.add_term(Monomial::new((p - r) as u32, m.z, 0), c * &b * &w);
        }
    }
    Ok(acc)
}

/// The `g0`-independent part of the second factor, for `n2 >= 1`.
fn kz_bracket(lk: &Lookup, memo: &mut Memo, n2: i64, g2: i64) -> Result<MPoly> {
    if let Some(p) = memo.bracket.get(&(n2, g2)) {
        return Ok(p.clone());
    }
    let fuz = &MPoly::mono(4, 1, 0, 0) + &z();
    let mut b = lk.h(n2, g2)?.scale(&rat(-(n2 + 1), 2));
    b += (&(&fuz * lk.h(n2 - 1, g2)?) - &lk.h(n2 - 1, g2 - 1)?.scale_int(2)).scale_int(2 * n2 - 1);
    b += (&lk.h(n2 - 2, g2 - 2)?.scale_int((2 * n2 - 1) * (n2 - 1)) + &(&uz() * lk.h(n2 - 2, g2)?).scale_int(3))
        .scale_int(2 * (2 * n2 - 3));
    if n2 == 1 {
        match g2 {
            0 => b += &uz() * &fuz,
            1 => b -= uz().scale_int(2),
            _ => {}
        }
    }
    if n2 == 2 {
        match g2 {
            0 => b += (&uz() * &uz()).scale_int(3),
            2 => b += uz().scale_int(6),
            _ => {}
        }
    }
    b += conv(lk, memo, n2, g2)?.scale_int(3);
    memo.bracket.insert((n2, g2), b.clone());
    Ok(b)
}

fn kz_step(lk: &Lookup, memo: &mut Memo, n: i64, g2: i64) -> Result<MPoly> {
    let fuz = &MPoly::mono(4, 1, 0, 0) + &z();
    let mut first = (&(&fuz * lk.h(n - 1, g2)?) - &lk.h(n - 1, g2 - 1)?.scale_int(2)).scale_int(2 * (2 * n - 1));
    first += (&(&uz() * lk.h(n - 2, g2)?).scale_int(3) + &lk.h(n - 2, g2 - 2)?.scale_int((2 * n - 1) * (n - 1)))
        .scale_int(4 * (2 * n - 3));
    first += conv(lk, memo, n, g2)?.scale_int(6);
    let first = first.scale_int(n);

    let mut second = MPoly::zero();
    for g1 in 0..=g2 {
        for n1 in 1..=n {
            let n2 = n - n1;
            let gg2 = g2 - g1;
            let coef = if n1 == n && g1 == g2 {
                // H_n^g itself sits on the left-hand side.
                kz_coefficient(lk, n1, g1, Some(g2))?
            } else if let Some(c) = memo.coef.get(&(n1, g1)) {
                c.clone()
            } else {
                let c = kz_coefficient(lk, n1, g1, None)?;
                memo.coef.insert((n1, g1), c.clone());
                c
            };
            if coef.is_zero() {
                continue;
            }
            let bracket = if n2 == 0 {
                // Only the boundary constant survives; g0 != g holds for every
                // retained term.
                match gg2 {
                    0 => (&u() * &u()).scale(&rat(3, 2)),
                    1 => u().scale(&rat(-3, 2)),
                    _ => MPoly::zero(),
                }
            } else {
                kz_bracket(lk, memo, n2, gg2)?
            };
            if !bracket.is_zero() {
                second += &coef * &bracket;
            }
        }
    }

    let nn = n * (n + 1);
    let rhs = (first - second).scale(&rat(1, nn));
    // Invert Id + 3 u^2 d^2/du^2 / (n(n+1)) on the monomial basis.
    Ok(rhs.map_terms(|m, c| {
        let i = m.u as i64;
        c / (int(1) + rat(3 * i * (i - 1), nn))
    }))
}

fn phi(p: i64, q: i64, m: i64) -> MPoly {
    let mut acc = MPoly::zero();
    for i in 0..=m.min(p) {
        let j = m - i;
        if j > q {
            continue;
        }
        let c = binomial(p, i) * binomial(q, j);
        acc.add_term(Monomial::new(i as u32, j as u32, 0), BigRational::from_integer(c));
    }
    acc
}

/// `sum_{g0} 2^r sum_{p+q} phi_{p,q,n1-g1} [u^p z^q] H_{n1}^{g0}` with
/// `r = 2 + 2(g1 - g0)`.
fn cc_coefficient(lk: &Lookup, n1: i64, g1: i64) -> Result<MPoly> {
    let m = n1 - g1;
    let mut acc = MPoly::zero();
    if m < 0 {
        return Ok(acc);
    }
    for g0 in (0..=g1).filter(|g0| (g1 - g0) % 2 == 0) {
        let w = BigRational::from_integer(pow2((2 + g1 - g0) as u32));
        for (mono, c) in lk.h(n1, g0)?.terms() {
            acc += phi(mono.u as i64, mono.z as i64, m).scale(&(c * &w));
        }
    }
    Ok(acc)
}

fn cc_bracket(lk: &Lookup, memo: &mut Memo, n2: i64, g2: i64, with_self: bool) -> Result<MPoly> {
    let cacheable = with_self;
    if cacheable {
        if let Some(p) = memo.bracket.get(&(n2, g2)) {
            return Ok(p.clone());
        }
    }
    let upz = &u() + &z();
    let mut b = lk.h(n2 - 2, g2 - 2)?.scale(&rat((2 * n2 - 1) * (2 * n2 - 2) * (2 * n2 - 3), 2));
    if with_self {
        b -= lk.h(n2, g2)?.scale(&rat(n2 + 1, 4));
    }
    b += (&(&upz * lk.h(n2 - 1, g2)?) + lk.h(n2 - 1, g2 - 1)?).scale(&rat(2 * n2 - 1, 2));
    b += conv(lk, memo, n2, g2)?.scale(&rat(6, 4));
    if cacheable {
        memo.bracket.insert((n2, g2), b.clone());
    }
    Ok(b)
}

fn cc_step(lk: &Lookup, memo: &mut Memo, n: i64, g2: i64) -> Result<MPoly> {
    let upz = &u() + &z();
    let mut first = (&(&upz * lk.h(n - 1, g2)?) + lk.h(n - 1, g2 - 1)?).scale_int(n * (2 * n - 1));
    first += lk.h(n - 2, g2 - 2)?.scale(&rat((2 * n - 3) * (2 * n - 2) * (2 * n - 1) * (2 * n), 2));
    for a in 0..=g2 {
        for n1 in 0..=n {
            let n2 = n - n1;
            let (x, y) = (lk.h(n2 - 1, g2 - a)?, lk.h(n1 - 1, a)?);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            first += (x * y).scale(&rat(12 * (2 * n2 - 1) * (2 * n1 - 1) * n1, 2));
        }
    }

    let mut second = MPoly::zero();
    for g1 in 0..=g2 {
        for n1 in 0..n {
            let n2 = n - n1;
            let gg2 = g2 - g1;
            let coef = match memo.coef.get(&(n1, g1)) {
                Some(c) => c.clone(),
                None => {
                    let c = cc_coefficient(lk, n1, g1)?;
                    memo.coef.insert((n1, g1), c.clone());
                    c
                }
            };
            if coef.is_zero() {
                continue;
            }
            let bracket = if n2 == n {
                let b = cc_bracket(lk, memo, n2, gg2, false)?;
                if gg2 == g2 {
                    b
                } else {
                    b - lk.h(n2, gg2)?.scale(&rat(n2 + 1, 4))
                }
            } else {
                cc_bracket(lk, memo, n2, gg2, true)?
            };
            second += &coef * &bracket;
        }
    }
    Ok((first - second).scale(&rat(2, (n + 1) * (n - 2))))
}

fn check_domain(n: u32) -> Result<()> {
    if n <= 2 {
        return Err(Error::RecurrenceDomain { model: MODEL, n: n as i64 });
    }
    Ok(())
}

/// One step of the vertex/face recurrence obtained from the shifted
/// functional equation of the maps tau function. The table must hold every
/// `H_{n'}^{g'}` with `n' < n` and `H_n^{g'}` with `g' < g`.
pub fn maps_rec_kz(n: u32, g2: u32, table: &MapsTable) -> Result<MPoly> {
    check_domain(n)?;
    let lk = Lookup::new(table, Engine::Kz);
    let p = kz_step(&lk, &mut Memo::default(), n as i64, g2 as i64)?;
    ensure_integral(MODEL, n, g2, &p)?;
    Ok(p)
}

/// One step of the recurrence obtained through bipartite quadrangulations.
pub fn maps_rec_cc(n: u32, g2: u32, table: &MapsTable) -> Result<MPoly> {
    check_domain(n)?;
    let lk = Lookup::new(table, Engine::Cc);
    let p = cc_step(&lk, &mut Memo::default(), n as i64, g2 as i64)?;
    ensure_integral(MODEL, n, g2, &p)?;
    Ok(p)
}

/// Fills `table` up to `n_max` edges and doubled genus `g2_max`, keeping any
/// entries already present.
pub fn extend_maps(table: &mut MapsTable, n_max: u32, g2_max: u32, engine: Engine) -> Result<()> {
    for ((n, g2), p) in initial_conditions().iter() {
        if n <= n_max && g2 <= g2_max && !table.contains(n, g2) {
            table.insert(n, g2, p.clone());
        }
    }
    let mut memo = Memo::default();
    for n in 3..=n_max {
        for g2 in 0..=g2_max.min(n) {
            if table.contains(n, g2) {
                continue;
            }
            let p = {
                let lk = Lookup::new(table, engine);
                match engine {
                    Engine::Kz => kz_step(&lk, &mut memo, n as i64, g2 as i64)?,
                    Engine::Cc => cc_step(&lk, &mut memo, n as i64, g2 as i64)?,
                }
            };
            ensure_integral(MODEL, n, g2, &p)?;
            table.insert(n, g2, p);
        }
    }
    Ok(())
}

pub fn compute_maps(n_max: u32, g2_max: u32, engine: Engine) -> Result<MapsTable> {
    let mut t = MapsTable::new();
    extend_maps(&mut t, n_max, g2_max, engine)?;
    Ok(t)
}

/// `H_n^g(1, 1)`.
pub fn total(p: &MPoly) -> BigInt {
    p.eval_ones().to_integer()
}

/// Counts by edges and genus only, through the integer specialisation of the
/// quadrangulation recurrence at `u = z = 1`.
pub fn compute_univariate(n_max: u32, g2_max: u32) -> Result<IntTable> {
    let mut t = IntTable::new();
    extend_univariate(&mut t, n_max, g2_max)?;
    Ok(t)
}

pub fn extend_univariate(table: &mut IntTable, n_max: u32, g2_max: u32) -> Result<()> {
    for ((n, g2), c) in [((1, 0), 2), ((2, 0), 9), ((1, 1), 1), ((2, 1), 10), ((2, 2), 5)] {
        if n <= n_max && g2 <= g2_max && !table.contains(n, g2) {
            table.insert(n, g2, BigInt::from(c));
        }
    }
    for n in 3..=n_max as i64 {
        for g2 in 0..=(g2_max as i64).min(n) {
            if table.contains(n as u32, g2 as u32) {
                continue;
            }
            let v = univariate_step(table, n, g2)?;
            table.insert(n as u32, g2 as u32, to_integer(MODEL, n as u32, g2 as u32, v)?);
        }
    }
    Ok(())
}

fn univariate_step(table: &IntTable, n: i64, g2: i64) -> Result<BigRational> {
    let h = |n: i64, g: i64| -> Result<BigRational> {
        if n < 0 || g < 0 || g > n {
            return Ok(BigRational::zero());
        }
        if n == 0 {
            return Ok(if g == 0 { BigRational::one() } else { BigRational::zero() });
        }
        table.get(n as u32, g as u32).map(|c| BigRational::from_integer(c.clone())).ok_or_else(|| missing(MODEL, n, g))
    };
    let conv = |m: i64, g: i64| -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for a in 0..=g {
            for m1 in 0..=m {
                acc += h(m1 - 1, a)? * h(m - m1 - 1, g - a)? * int((2 * m1 - 1) * (2 * (m - m1) - 1));
            }
        }
        Ok(acc)
    };
    let mut first = (h(n - 1, g2)? * int(2) + h(n - 1, g2 - 1)?) * int(n * (2 * n - 1));
    first += h(n - 2, g2 - 2)? * rat((2 * n - 3) * (2 * n - 2) * (2 * n - 1) * (2 * n), 2);
    for a in 0..=g2 {
        for n1 in 0..=n {
            let n2 = n - n1;
            first += h(n2 - 1, g2 - a)? * h(n1 - 1, a)? * rat(12 * (2 * n2 - 1) * (2 * n1 - 1) * n1, 2);
        }
    }
    let mut second = BigRational::zero();
    for g1 in 0..=g2 {
        for n1 in 0..n {
            let n2 = n - n1;
            let gg2 = g2 - g1;
            let mut coef = BigRational::zero();
            for g0 in (0..=g1).filter(|g0| (g1 - g0) % 2 == 0) {
                let b = binomial(n1 + 2 - g0, n1 - g1) * pow2((2 + g1 - g0) as u32);
                coef += h(n1, g0)? * BigRational::from_integer(b);
            }
            if coef.is_zero() {
                continue;
            }
            let mut br = h(n2 - 2, gg2 - 2)? * rat((2 * n2 - 1) * (2 * n2 - 2) * (2 * n2 - 3), 2);
            if (n2, gg2) != (n, g2) {
                br -= h(n2, gg2)? * rat(n2 + 1, 4);
            }
            br += (h(n2 - 1, gg2)? * int(2) + h(n2 - 1, gg2 - 1)?) * rat(2 * n2 - 1, 2);
            br += conv(n2, gg2)? * rat(6, 4);
            second += coef * br;
        }
    }
    Ok((first - second) * rat(2, (n + 1) * (n - 2)))
}

/// One-face maps with `n` edges and doubled genus `g2`; `u_0^0 = 1`.
fn oneface_lookup(table: &OneFaceTable, n: i64, g2: i64) -> Result<BigInt> {
    if n < 0 || g2 < 0 || g2 > n {
        return Ok(BigInt::zero());
    }
    if n == 0 {
        return Ok(if g2 == 0 { BigInt::one() } else { BigInt::zero() });
    }
    table.get(n as u32, g2 as u32).cloned().ok_or_else(|| missing("oneface", n, g2))
}

/// One step of the linear recursion for one-face maps.
pub fn ledoux(n: u32, g2: u32, table: &OneFaceTable) -> Result<BigInt> {
    let (n, g) = (n as i64, g2 as i64);
    if n < 2 {
        return Err(Error::RecurrenceDomain { model: "oneface", n });
    }
    let f = |a: i64, b: i64| oneface_lookup(table, a, b);
    let b = |x: i64| BigInt::from(x);
    let p3 = (2 * n - 3) * (2 * n - 4) * (2 * n - 5);
    let mut acc = b(8 * n - 2) * f(n - 1, g)?;
    acc -= b(4 * n - 1) * f(n - 1, g - 1)?;
    acc += b(n * (2 * n - 3) * (10 * n - 9)) * f(n - 2, g - 2)?;
    acc -= b(8 * (2 * n - 3)) * f(n - 2, g)?;
    acc -= b(10 * p3) * f(n - 3, g - 2)?;
    acc += b(5 * p3) * f(n - 3, g - 3)?;
    acc += b(8 * (2 * n - 3)) * f(n - 2, g - 1)?;
    acc -= b(2 * p3 * (2 * n - 6) * (2 * n - 7)) * f(n - 4, g - 4)?;
    let d = b(n + 1);
    if !(&acc % &d).is_zero() {
        return Err(Error::NonIntegral { model: "oneface", n, g2: g, value: format!("{acc}/{d}") });
    }
    Ok(acc / d)
}

/// One-face counts for all genera up to `n_max` edges, seeded with `n = 1`.
pub fn compute_oneface(n_max: u32) -> Result<OneFaceTable> {
    let mut t = OneFaceTable::new();
    if n_max >= 1 {
        t.insert(1, 0, BigInt::one());
        t.insert(1, 1, BigInt::one());
    }
    for n in 2..=n_max {
        for g2 in 0..=n {
            let v = ledoux(n, g2, &t)?;
            t.insert(n, g2, v);
        }
    }
    Ok(t)
}

/// `[u^{n+1-2g} z] H_n^g`.
pub fn oneface_slice(p: &MPoly, n: u32, g2: u32) -> BigRational {
    let e = (n + 1).saturating_sub(g2);
    if g2 > n + 1 {
        return BigRational::zero();
    }
    p.coeff(&Monomial::new(e, 1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn totals(t: &MapsTable) -> Vec<((u32, u32), BigInt)> {
        t.iter().map(|(k, p)| (k, total(p))).collect()
    }

    #[test]
    fn kz_reproduces_small_rows() {
        let t = compute_maps(5, 5, Engine::Kz).unwrap();
        assert_eq!(total(t.get(3, 3).unwrap()), BigInt::from(41));
        assert_eq!(total(t.get(4, 4).unwrap()), BigInt::from(509));
        assert_eq!(total(t.get(5, 5).unwrap()), BigInt::from(8229));
        assert_eq!(total(t.get(3, 0).unwrap()), BigInt::from(54));
    }

    #[test]
    fn cc_reproduces_small_rows() {
        let t = compute_maps(6, 6, Engine::Cc).unwrap();
        assert_eq!(total(t.get(5, 5).unwrap()), BigInt::from(8229));
        assert_eq!(total(t.get(6, 6).unwrap()), BigInt::from(166377));
        assert_eq!(total(t.get(4, 2).unwrap()), BigInt::from(1647));
    }

    #[test]
    fn engines_agree() {
        let a = compute_maps(7, 7, Engine::Kz).unwrap();
        let b = compute_maps(7, 7, Engine::Cc).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn univariate_matches_bivariate() {
        let a = compute_maps(7, 7, Engine::Cc).unwrap();
        let b = compute_univariate(7, 7).unwrap();
        let ta: Vec<_> = totals(&a);
        let tb: Vec<_> = b.iter().map(|(k, v)| (k, v.clone())).collect();
        assert_eq!(ta, tb);
    }

    #[test]
    fn no_maps_below_twice_genus() {
        let t = compute_maps(3, 4, Engine::Kz).unwrap();
        assert!(t.get(3, 4).is_none());
        assert!(maps_rec_kz(2, 0, &t).is_err());
    }

    #[test]
    fn polynomials_are_homogeneous_and_self_dual() {
        let t = compute_maps(7, 7, Engine::Kz).unwrap();
        for ((n, g2), p) in t.iter() {
            assert!(p.is_homogeneous_of_degree(n + 2 - g2), "H_{n}^{g2}");
            assert_eq!(p.swap(Var::U, Var::Z), *p);
            assert!(p.has_nonnegative_coefficients());
        }
    }

    #[test]
    fn single_step_matches_fill() {
        let t = compute_maps(5, 5, Engine::Kz).unwrap();
        let partial = t.restrict(4, 5);
        let mut with_lower = partial.clone();
        for g2 in 0..3 {
            with_lower.insert(5, g2, t.get(5, g2).unwrap().clone());
        }
        assert_eq!(&maps_rec_kz(5, 3, &with_lower).unwrap(), t.get(5, 3).unwrap());
        assert_eq!(&maps_rec_cc(5, 3, &with_lower).unwrap(), t.get(5, 3).unwrap());
    }

    #[test]
    fn ledoux_initial_values() {
        let t = compute_oneface(3).unwrap();
        let get = |n, g2| t.get(n, g2).unwrap().clone();
        assert_eq!(get(2, 2), BigInt::from(5));
        assert_eq!(get(2, 1), BigInt::from(5));
        assert_eq!(get(3, 3), BigInt::from(41));
        assert_eq!(get(3, 2), BigInt::from(52));
        assert_eq!(get(3, 1), BigInt::from(22));
    }

    #[test]
    fn ledoux_matches_slice() {
        let maps = compute_maps(8, 8, Engine::Kz).unwrap();
        let one = compute_oneface(8).unwrap();
        for ((n, g2), p) in maps.iter() {
            let s = oneface_slice(p, n, g2);
            assert_eq!(BigRational::from_integer(one.get(n, g2).unwrap().clone()), s, "n={n} g2={g2}");
        }
    }
}
