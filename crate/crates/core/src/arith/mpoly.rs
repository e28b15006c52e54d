use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::binomial;
use crate::error::{Error, Result};

/// The three polynomial variables: `u` (vertices, or black vertices), `z`
/// (faces) and `v` (white vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    Z,
    V,
}

/// Exponent triple `(e_u, e_z, e_v)`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub u: u32,
    pub z: u32,
    pub v: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { u: 0, z: 0, v: 0 };

    pub fn new(u: u32, z: u32, v: u32) -> Self {
        Monomial { u, z, v }
    }

    pub fn degree(&self) -> u32 {
        self.u + self.z + self.v
    }

    pub fn exponent(&self, var: Var) -> u32 {
        match var {
            Var::U => self.u,
            Var::Z => self.z,
            Var::V => self.v,
        }
    }

    fn with_exponent(mut self, var: Var, e: u32) -> Self {
        match var {
            Var::U => self.u = e,
            Var::Z => self.z = e,
            Var::V => self.v = e,
        }
        self
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial { u: self.u + other.u, z: self.z + other.z, v: self.v + other.v }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.u.cmp(&other.u))
            .then(self.z.cmp(&other.z))
            .then(self.v.cmp(&other.v))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("u", self.u), ("z", self.z), ("v", self.v)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sparse polynomial in `u, z, v` with exact rational coefficients.
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(var: Var) -> Self {
        Self::term(Monomial::ONE.with_exponent(var, 1), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// Integer-coefficient monomial `c * u^a z^b v^c`.
    pub fn mono(c: i64, u: u32, z: u32, v: u32) -> Self {
        Self::term(Monomial::new(u, z, v), BigRational::from_integer(BigInt::from(c)))
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, summing duplicates.
    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = MPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> MPoly {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Multiplies by the monomial `u^a z^b v^c`.
    pub fn shift_monomial(&self, m: Monomial) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(k, x)| (k.times(m), x.clone())).collect() }
    }

    /// Applies `f` to every coefficient; `f` sees the monomial too. Zeros are dropped.
    pub fn map_terms<F>(&self, mut f: F) -> MPoly
    where
        F: FnMut(&Monomial, &BigRational) -> BigRational,
    {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(m, c))))
    }

    /// Least common multiple of all coefficient denominators together with the
    /// integer numerators it produces.
    fn integer_form(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let nums = self
            .terms
            .iter()
            .map(|(m, c)| {
                let n = if den.is_one() { c.numer().clone() } else { c.numer() * (&den / c.denom()) };
                (*m, n)
            })
            .collect();
        (nums, den)
    }

    /// Substitutes `var -> var + delta`.
    pub fn shift(&self, var: Var, delta: i64) -> MPoly {
        if delta == 0 {
            return self.clone();
        }
        let mut out = MPoly::zero();
        let d = BigInt::from(delta);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let mut dpow = BigInt::one();
            // (x + d)^e = sum_k C(e, k) x^k d^(e-k); iterate k from e downwards
            for k in (0..=e).rev() {
                let coef = binomial(e as i64, k as i64) * &dpow;
                out.add_term(m.with_exponent(var, k), c * BigRational::from_integer(coef));
                dpow *= &d;
            }
        }
        out
    }

    /// Substitutes `u -> u + delta` and `v -> v + delta` simultaneously.
    pub fn shift_uv(&self, delta: i64) -> MPoly {
        self.shift(Var::U, delta).shift(Var::V, delta)
    }

    /// Exchanges two variables.
    pub fn swap(&self, a: Var, b: Var) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let (ea, eb) = (m.exponent(a), m.exponent(b));
                    (m.with_exponent(a, eb).with_exponent(b, ea), c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, u: &BigRational, z: &BigRational, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in [(u, m.u), (z, m.z), (v, m.v)] {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Value at `u = z = v = 1`.
    pub fn eval_ones(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Exact division by `z`; errors if some monomial has no `z`.
    pub fn div_z(&self) -> Result<MPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.z == 0 {
                return Err(Error::NotDivisibleByZ(self.to_string()));
            }
            terms.insert(Monomial { z: m.z - 1, ..*m }, c.clone());
        }
        Ok(MPoly { terms })
    }

    /// Coefficient of `var^e`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: Var, e: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(var) == e)
                .map(|(m, c)| (m.with_exponent(var, 0), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn max_degree(&self, var: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &'a MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for MPoly {
    fn add_assign(&mut self, rhs: MPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> SubAssign<&'a MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &'a MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl SubAssign for MPoly {
    fn sub_assign(&mut self, rhs: MPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self -= rhs;
        self
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        // Multiply integer numerators and divide once per output term.
        let (a, da) = self.integer_form();
        let (b, db) = rhs.integer_form();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let prod = ca * cb;
                match acc.entry(ma.times(*mb)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
        let den = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let r = if den.is_one() { BigRational::from_integer(c) } else { BigRational::new(c, den.clone()) };
                (m, r)
            })
            .collect();
        MPoly { terms }
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}
