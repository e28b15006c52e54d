use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::mpoly::{MPoly, Var};
use crate::error::{Error, Result};

/// Truncation order of a series that is known exactly (a polynomial in t).
pub const EXACT: i64 = i64::MAX / 8;

fn clamp(order: i64) -> i64 {
    order.min(EXACT)
}

/// Truncated Laurent series `sum_k c_k t^k` with coefficients in ℚ[u, z, v].
///
/// Every coefficient of order `<= max_order` is known; coefficients above
/// `max_order` are unknown and reading them is an error. Leading and trailing
/// zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    min_order: i64,
    coeffs: Vec<MPoly>,
    max_order: i64,
}

impl TSeries {
    /// Builds `sum_k coeffs[k] t^(min_order + k)`, known up to `max_order`.
    /// Coefficients above `max_order` are discarded.
    pub fn new(min_order: i64, coeffs: Vec<MPoly>, max_order: i64) -> Self {
        let mut s = TSeries { min_order, coeffs, max_order: clamp(max_order) };
        s.normalize();
        s
    }

    pub fn zero(max_order: i64) -> Self {
        TSeries::new(0, Vec::new(), max_order)
    }

    pub fn exact_zero() -> Self {
        Self::zero(EXACT)
    }

    /// The exact series `p * t^k`.
    pub fn monomial(k: i64, p: MPoly) -> Self {
        TSeries::new(k, vec![p], EXACT)
    }

    pub fn constant(p: MPoly) -> Self {
        Self::monomial(0, p)
    }

    fn normalize(&mut self) {
        let keep = (self.max_order - self.min_order + 1).max(0);
        if (self.coeffs.len() as i64) > keep {
            self.coeffs.truncate(keep as usize);
        }
        while self.coeffs.last().is_some_and(MPoly::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_order += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_order = 0;
        }
    }

    pub fn max_order(&self) -> i64 {
        self.max_order
    }

    pub fn is_exact(&self) -> bool {
        self.max_order >= EXACT
    }

    /// First order with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min_order)
        }
    }

    /// Valuation used for truncation bookkeeping: an all-zero series is
    /// known to vanish through `max_order`.
    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or_else(|| clamp(self.max_order.saturating_add(1)))
    }

    /// Highest stored (nonzero) order.
    pub fn top_order(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `t^k`; an error if `k` is beyond the truncation order.
    pub fn coeff(&self, k: i64) -> Result<MPoly> {
        if k > self.max_order {
            return Err(Error::BeyondWindow { order: k, max: self.max_order });
        }
        Ok(self.coeff_unchecked(k))
    }

    fn coeff_unchecked(&self, k: i64) -> MPoly {
        if k < self.min_order {
            return MPoly::zero();
        }
        self.coeffs.get((k - self.min_order) as usize).cloned().unwrap_or_default()
    }

    /// Stored nonzero coefficients with their orders.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &MPoly)> {
        let m = self.min_order;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (m + k as i64, c))
    }

    /// True if every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops everything above order `k`.
    pub fn truncate(&self, k: i64) -> TSeries {
        TSeries::new(self.min_order, self.coeffs.clone(), self.max_order.min(k))
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        let max = self.max_order.min(other.max_order);
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return TSeries::zero(max),
        };
        let hi = self.top_order().into_iter().chain(other.top_order()).max().unwrap().min(max);
        if hi < lo {
            return TSeries::zero(max);
        }
        let coeffs = (lo..=hi)
            .map(|k| {
                let mut c = self.coeff_unchecked(k);
                c += &other.coeff_unchecked(k);
                c
            })
            .collect();
        TSeries::new(lo, coeffs, max)
    }

    pub fn neg(&self) -> TSeries {
        TSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        self.add(&other.neg())
    }

    /// Cauchy product, valid up to `min(max_a + v_b, max_b + v_a)`.
    pub fn mul(&self, other: &TSeries) -> TSeries {
        let (va, vb) = (self.effective_valuation(), other.effective_valuation());
        // An exact operand places no bound of its own.
        let bound = |s: &TSeries, v: i64| if s.is_exact() { EXACT } else { clamp(s.max_order.saturating_add(v)) };
        let max = bound(self, vb).min(bound(other, va));
        if self.is_zero() || other.is_zero() {
            return TSeries::zero(max);
        }
        let lo = va + vb;
        let hi = (self.top_order().unwrap() + other.top_order().unwrap()).min(max);
        if hi < lo {
            return TSeries::zero(max);
        }
        let mut coeffs = vec![MPoly::zero(); (hi - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                if !b.is_zero() {
                    coeffs[k] += a * b;
                }
            }
        }
        TSeries::new(lo, coeffs, max)
    }

    pub fn square(&self) -> TSeries {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> TSeries {
        let mut acc = TSeries::constant(MPoly::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> TSeries {
        TSeries::new(self.min_order, self.coeffs.iter().map(|p| p.scale(c)).collect(), self.max_order)
    }

    pub fn scale_int(&self, c: i64) -> TSeries {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Multiplies by a t-independent polynomial; the window is unchanged.
    pub fn mul_poly(&self, p: &MPoly) -> TSeries {
        TSeries::new(self.min_order, self.coeffs.iter().map(|c| c * p).collect(), self.max_order)
    }

    /// Multiplies by `t^k` for any integer `k`.
    pub fn mul_t_pow(&self, k: i64) -> TSeries {
        let max = if self.is_exact() { EXACT } else { self.max_order + k };
        TSeries { min_order: self.min_order + k, coeffs: self.coeffs.clone(), max_order: max }
    }

    /// d/dt. The truncation order drops by one.
    pub fn dt(&self) -> TSeries {
        let max = if self.is_exact() { EXACT } else { self.max_order - 1 };
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c.scale_int(self.min_order + i as i64)).collect();
        TSeries::new(self.min_order - 1, coeffs, max)
    }

    /// t·d/dt, which keeps the truncation order.
    pub fn t_dt(&self) -> TSeries {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c.scale_int(self.min_order + i as i64)).collect();
        TSeries::new(self.min_order, coeffs, self.max_order)
    }

    pub fn map_coeffs<F>(&self, f: F) -> TSeries
    where
        F: FnMut(&MPoly) -> MPoly,
    {
        TSeries::new(self.min_order, self.coeffs.iter().map(f).collect(), self.max_order)
    }

    pub fn try_map_coeffs<F>(&self, f: F) -> Result<TSeries>
    where
        F: FnMut(&MPoly) -> Result<MPoly>,
    {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(TSeries::new(self.min_order, coeffs, self.max_order))
    }

    /// Exact coefficient-wise division by `z`.
    pub fn div_z(&self) -> Result<TSeries> {
        self.try_map_coeffs(MPoly::div_z)
    }

    pub fn mul_var(&self, var: Var) -> TSeries {
        self.mul_poly(&MPoly::var(var))
    }

    /// Substitutes `var -> var + delta` in every coefficient.
    pub fn shift(&self, var: Var, delta: i64) -> TSeries {
        self.map_coeffs(|c| c.shift(var, delta))
    }

    /// The range of orders on which the series is meaningful: from its
    /// declared start to its truncation order. Errors when empty.
    pub fn window(&self) -> Result<(i64, i64)> {
        let lo = self.min_order;
        if self.max_order < lo {
            return Err(Error::EmptyWindow { min: lo, max: self.max_order });
        }
        Ok((lo, self.max_order))
    }

    /// First nonzero coefficient within the window, with its order.
    pub fn first_nonzero(&self) -> Option<(i64, &MPoly)> {
        self.iter().next()
    }
}

impl Default for TSeries {
    fn default() -> Self {
        TSeries::exact_zero()
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (k, c) in self.iter() {
            if any {
                write!(f, " + ")?;
            }
            any = true;
            write!(f, "({c})*t^{k}")?;
        }
        if !any {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(t^{})", self.max_order + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn p(c: i64) -> MPoly {
        MPoly::from_int(c)
    }

    #[test]
    fn dt_of_monomial() {
        let uz = MPoly::mono(1, 1, 1, 0);
        let s = TSeries::monomial(2, uz.clone());
        assert_eq!(s.dt(), TSeries::monomial(1, uz.scale_int(2)));
    }

    #[test]
    fn dt_of_constant_is_zero() {
        let s = TSeries::new(0, vec![p(7)], 5);
        let d = s.dt();
        assert!(d.is_zero());
        assert_eq!(d.max_order(), 4);
    }

    #[test]
    fn dt_laurent() {
        let s = TSeries::monomial(-1, p(1));
        assert_eq!(s.dt(), TSeries::monomial(-2, p(-1)));
    }

    #[test]
    fn truncated_product() {
        let a = TSeries::new(0, vec![p(1), p(1)], 5);
        let b = TSeries::new(0, vec![p(1), p(-1)], 5);
        let c = a.mul(&b);
        assert_eq!(c, TSeries::new(0, vec![p(1), p(0), p(-1)], 5));
    }

    #[test]
    fn laurent_product() {
        let a = TSeries::monomial(-2, MPoly::var(Var::U));
        let b = TSeries::monomial(3, MPoly::var(Var::Z));
        assert_eq!(a.mul(&b), TSeries::monomial(1, MPoly::mono(1, 1, 1, 0)));
    }

    #[test]
    fn theta_squared_t4() {
        // Θ = (H_1/4) t² + (H_2/8) t⁴ + O(t⁵), genus-0 part only
        let h1 = MPoly::mono(1, 2, 1, 0) + MPoly::mono(1, 1, 2, 0);
        let h2 = MPoly::mono(2, 3, 1, 0) + MPoly::mono(5, 2, 2, 0) + MPoly::mono(2, 1, 3, 0);
        let theta = TSeries::new(2, vec![h1.scale(&rat(1, 4)), MPoly::zero(), h2.scale(&rat(1, 8))], 4);
        let sq = theta.square();
        assert_eq!(sq.max_order(), 6);
        assert_eq!(sq.coeff(4).unwrap(), (&h1 * &h1).scale(&rat(1, 16)));
        assert!(sq.coeff(7).is_err());
    }

    #[test]
    fn reading_beyond_window_fails() {
        let s = TSeries::new(0, vec![p(1)], 3);
        assert!(s.coeff(3).is_ok());
        assert!(s.coeff(4).is_err());
        assert!(s.dt().dt().dt().dt().window().is_err());
    }

    #[test]
    fn windows_take_the_minimum() {
        let a = TSeries::new(0, vec![p(1)], 3);
        let b = TSeries::new(0, vec![p(1)], 8);
        assert_eq!(a.add(&b).max_order(), 3);
        assert_eq!(a.mul_t_pow(-2).max_order(), 1);
        assert_eq!(a.t_dt().max_order(), 3);
        assert_eq!(a.coeff(0).unwrap().eval_ones(), int(1));
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 0..4)
            .prop_map(|ts| ts.into_iter().fold(MPoly::zero(), |acc, (c, a, b)| acc + MPoly::mono(c, a, b, 0)))
    }

    fn small_series() -> impl Strategy<Value = TSeries> {
        (-2i64..3, prop::collection::vec(small_poly(), 0..5), 2i64..8)
            .prop_map(|(lo, cs, len)| TSeries::new(lo, cs, lo + len))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_associative(a in small_series(), b in small_series(), c in small_series()) {
            let l = a.mul(&b).mul(&c);
            let r = a.mul(&b.mul(&c));
            let top = l.max_order().min(r.max_order());
            prop_assert_eq!(l.truncate(top), r.truncate(top));
        }

        #[test]
        fn mul_distributive(a in small_series(), b in small_series(), c in small_series()) {
            let l = a.mul(&b.add(&c));
            let r = a.mul(&b).add(&a.mul(&c));
            let top = l.max_order().min(r.max_order());
            prop_assert_eq!(l.truncate(top), r.truncate(top));
        }

        #[test]
        fn mul_commutative(a in small_series(), b in small_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn leibniz(a in small_series(), b in small_series()) {
            let l = a.mul(&b).dt();
            let r = a.mul(&b.dt()).add(&a.dt().mul(&b));
            let top = l.max_order().min(r.max_order());
            prop_assert_eq!(l.truncate(top), r.truncate(top));
        }

        #[test]
        fn shift_round_trip(p in small_poly(), d in -3i64..=3) {
            prop_assert_eq!(p.shift(Var::U, d).shift(Var::U, -d), p);
        }

        #[test]
        fn shift_is_multiplicative(p in small_poly(), q in small_poly(), d in -3i64..=3) {
            prop_assert_eq!((&p * &q).shift(Var::U, d), &p.shift(Var::U, d) * &q.shift(Var::U, d));
        }
    }
}
