//! `F^θ_λ` on truncated series, by structural recursion on `|λ|`.
//!
//! Maps and bipartite maps use one Virasoro-derived relation each, peeling a
//! single part of `λ`. Triangulations first strip parts equal to 3 through
//! the homogeneity relation, handle `[1^l]` directly, and otherwise peel the
//! large part (or a 2), dividing by `t^2 z` at every step.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::lambda::LambdaIndex;
use crate::arith::{binomial, rat, MPoly, Monomial, TSeries, Var};
use crate::error::{Error, Result};
use crate::rec::bipartite::{compute_bipartite, BipTable};
use crate::rec::maps::{compute_maps, Engine, MapsTable};
use crate::rec::triangulations::{compute_triangulations, TriTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Maps,
    Bipartite,
    Triangulations,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Maps => "maps",
            Model::Bipartite => "bipartite",
            Model::Triangulations => "triangulations",
        }
    }

    /// Largest admissible large part.
    fn ell_limit(self) -> u32 {
        match self {
            Model::Triangulations => 10,
            _ => 9,
        }
    }
}

/// Which small part is peeled off when `λ` has no part above 3. Both choices
/// must give the same series; the alternative is kept as a cross-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Peel {
    #[default]
    Largest,
    Smallest,
}

#[derive(Clone, Debug)]
pub struct SeriesContext {
    model: Model,
    base: TSeries,
    peel: Peel,
    memo: HashMap<LambdaIndex, TSeries>,
}

fn poly(c: i64, u: u32, z: u32, v: u32) -> MPoly {
    MPoly::mono(c, u, z, v)
}

fn half(p: MPoly) -> MPoly {
    p.scale(&rat(1, 2))
}

fn series_of(p: MPoly, k: i64) -> TSeries {
    TSeries::monomial(k, p)
}

/// `sum H_n^g / (4n) t^{2n}`, known through `t^{2 n_max + 1}`.
pub fn theta_series(table: &MapsTable, n_max: u32) -> TSeries {
    let mut coeffs = vec![MPoly::zero(); 2 * n_max as usize + 1];
    for ((n, _), p) in table.iter() {
        if n <= n_max {
            coeffs[2 * n as usize] += &p.scale(&rat(1, 4 * n as i64));
        }
    }
    TSeries::new(0, coeffs, 2 * n_max as i64 + 1)
}

/// `sum K_n^g / (2n) t^n`, known through `t^{n_max}`.
pub fn eta_series(table: &BipTable, n_max: u32) -> TSeries {
    let mut coeffs = vec![MPoly::zero(); n_max as usize + 1];
    for ((n, _), p) in table.iter() {
        if n <= n_max {
            coeffs[n as usize] += &p.scale(&rat(1, 2 * n as i64));
        }
    }
    TSeries::new(0, coeffs, n_max as i64)
}

/// `sum t_n^g / (12n) t^{6n} z^{2n} u^{n+2-2g}`, known through `t^{6 n_max + 5}`.
pub fn xi_series(table: &TriTable, n_max: u32) -> TSeries {
    let mut coeffs = vec![MPoly::zero(); 6 * n_max as usize + 1];
    for ((n, g2), c) in table.iter() {
        if n <= n_max && g2 <= n + 2 {
            let w = BigRational::new(c.clone(), BigInt::from(12 * n));
            coeffs[6 * n as usize].add_term(Monomial::new(n + 2 - g2, 2 * n, 0), w);
        }
    }
    TSeries::new(0, coeffs, 6 * n_max as i64 + 5)
}

impl SeriesContext {
    pub fn new(model: Model, base: TSeries) -> Self {
        SeriesContext { model, base, peel: Peel::default(), memo: HashMap::new() }
    }

    pub fn with_peel(mut self, peel: Peel) -> Self {
        self.peel = peel;
        self.memo.clear();
        self
    }

    /// Θ from the vertex/face tables, known through `t^order`.
    pub fn maps(order: u32) -> Result<Self> {
        let n = order / 2;
        let table = compute_maps(n, n, Engine::Cc)?;
        Ok(Self::new(Model::Maps, theta_series(&table, n).truncate(order as i64)))
    }

    /// η from the trivariate tables, known through `t^order`.
    pub fn bipartite(order: u32) -> Result<Self> {
        let table = compute_bipartite(order, order)?;
        Ok(Self::new(Model::Bipartite, eta_series(&table, order)))
    }

    /// Ξ from the triangulation tables, known through `t^order`.
    pub fn triangulations(order: u32) -> Result<Self> {
        let n = order / 6;
        let table = compute_triangulations(n, n + 1)?;
        Ok(Self::new(Model::Triangulations, xi_series(&table, n).truncate(order as i64)))
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Θ, η or Ξ.
    pub fn base(&self) -> &TSeries {
        &self.base
    }

    pub fn clear_memo(&mut self) {
        self.memo.clear();
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `F^θ_λ` (or its bipartite / triangulation analogue).
    pub fn ftheta(&mut self, lambda: LambdaIndex) -> Result<TSeries> {
        if lambda.is_empty() {
            return Ok(self.base.clone());
        }
        if let Some(s) = self.memo.get(&lambda) {
            return Ok(s.clone());
        }
        if lambda.ell > self.model.ell_limit() {
            return Err(Error::UnreachableIndex(format!("{lambda} for {}", self.model.name())));
        }
        let s = match self.model {
            Model::Maps | Model::Bipartite => self.peel_virasoro(lambda)?,
            Model::Triangulations => self.triangulation_step(lambda)?,
        };
        self.memo.insert(lambda, s.clone());
        Ok(s)
    }

    /// `F^θ` of the parts of `rest` together with `a`.
    fn f_with(&mut self, rest: LambdaIndex, a: u32) -> Result<TSeries> {
        self.ftheta(rest.with_part(a)?)
    }

    fn leading_part(&self, lambda: LambdaIndex) -> u32 {
        if lambda.ell > 0 {
            return lambda.ell;
        }
        let small = [(3, lambda.n3), (2, lambda.n2), (1, lambda.n1)];
        let mut present = small.iter().filter(|(_, k)| *k > 0).map(|(p, _)| *p);
        match self.peel {
            Peel::Largest => present.next(),
            Peel::Smallest => present.next_back(),
        }
        .expect("non-empty index")
    }

    /// The two quadratic sums shared by every model:
    /// `sum_{a+b=i} ab (sum_l C(n,l) F_{a,l} F_{b,rest-l} + F_{a,b,rest})`.
    fn quadratic_terms(&mut self, i: i64, rest: LambdaIndex) -> Result<TSeries> {
        let mut acc = TSeries::exact_zero();
        for a in 1..i {
            let b = i - a;
            let ab = a * b;
            let mut pair = TSeries::exact_zero();
            for l3 in 0..=rest.n3 {
                for l2 in 0..=rest.n2 {
                    for l1 in 0..=rest.n1 {
                        let left = LambdaIndex { ell: 0, n3: l3, n2: l2, n1: l1 };
                        let right = LambdaIndex { ell: 0, n3: rest.n3 - l3, n2: rest.n2 - l2, n1: rest.n1 - l1 };
                        let c = binomial(rest.n1 as i64, l1 as i64)
                            * binomial(rest.n2 as i64, l2 as i64)
                            * binomial(rest.n3 as i64, l3 as i64);
                        let fa = self.f_with(left, a as u32)?;
                        let fb = self.f_with(right, b as u32)?;
                        pair = pair.add(&fa.mul(&fb).scale(&BigRational::from_integer(c)));
                    }
                }
            }
            let both = self.ftheta(rest.with_part(a as u32)?.with_part(b as u32)?)?;
            acc = acc.add(&pair.add(&both).scale_int(2 * ab));
        }
        Ok(acc)
    }

    /// `sum_j n_j (i+j) F_{i+j, rest - e_j}` over the small parts `j`.
    fn reattach_terms(&mut self, i: i64, rest: LambdaIndex) -> Result<TSeries> {
        let mut acc = TSeries::exact_zero();
        for (j, nj) in [(1i64, rest.n1), (2, rest.n2), (3, rest.n3)] {
            if nj == 0 || i + j <= 0 {
                continue;
            }
            let r = rest.without_part(j as u32).expect("part present");
            let f = self.f_with(r, (i + j) as u32)?;
            acc = acc.add(&f.scale_int(nj as i64 * (i + j)));
        }
        Ok(acc)
    }

    fn peel_virasoro(&mut self, lambda: LambdaIndex) -> Result<TSeries> {
        let ell = self.leading_part(lambda);
        let rest = lambda.without_part(ell).expect("leading part present");
        let bip = self.model == Model::Bipartite;
        // Maps: ℓ = i + 2 and the relation carries t^{-2}; bipartite: ℓ = i + 1, t^{-1}.
        let i = ell as i64 - if bip { 1 } else { 2 };
        let f_rest = self.ftheta(rest)?;
        let mut rhs = self.quadratic_terms(i, rest)?;
        rhs = rhs.add(&self.reattach_terms(i, rest)?);
        rhs = rhs.add(&f_rest.t_dt().sub(&f_rest.scale_int(rest.size() as i64)));
        for a in 1..=i {
            let f = self.f_with(rest, a as u32)?;
            rhs = rhs.sub(&f.mul_var(Var::Z).scale_int(a));
        }
        if i > 0 {
            let f = self.f_with(rest, i as u32)?;
            let c = if bip {
                poly(i, 1, 0, 0) + poly(i, 0, 0, 1) + MPoly::from_int(i * i)
            } else {
                poly(2 * i, 1, 0, 0) + MPoly::from_int(i * (i + 1))
            };
            rhs = rhs.add(&f.mul_poly(&c));
        }
        let no_big = rest.n2 == 0 && rest.n3 == 0;
        let inhom = if bip {
            if i == 0 && rest.is_empty() {
                half(poly(1, 1, 0, 1))
            } else {
                MPoly::zero()
            }
        } else if no_big {
            let half_u = half(poly(1, 1, 0, 0));
            match (i, rest.n1) {
                (-1, 1) => half_u,
                (-1, 0) => &half_u * &MPoly::var(Var::Z),
                (0, 0) => &half_u * &(poly(1, 1, 0, 0) + MPoly::one()),
                _ => MPoly::zero(),
            }
        } else {
            MPoly::zero()
        };
        if !inhom.is_zero() {
            rhs = rhs.add(&series_of(inhom, 0));
        }
        let shift = if bip { 1 } else { 2 };
        Ok(rhs.mul_t_pow(shift).scale(&rat(1, ell as i64)))
    }

    fn triangulation_step(&mut self, lambda: LambdaIndex) -> Result<TSeries> {
        if let Some(rest) = lambda.without_part(3) {
            // 3z F_{3,μ} = t d/dt F_μ - |μ| F_μ
            let f = self.ftheta(rest)?;
            let s = f.t_dt().sub(&f.scale_int(rest.size() as i64));
            return s.div_z().map(|s| s.scale(&rat(1, 3)));
        }
        if lambda.ell == 0 && lambda.n2 == 0 {
            let l = lambda.n1;
            let prev = self.ftheta(LambdaIndex::ones(l - 1))?;
            let mut s = prev.dt().mul_t_pow(5).mul_var(Var::Z);
            if l == 1 {
                s = s.add(&series_of(half(poly(1, 2, 1, 0) + poly(1, 1, 1, 0)), 4));
            }
            if l == 2 {
                s = s.add(&series_of(half(poly(1, 1, 0, 0)), 2));
            }
            return Ok(s);
        }
        let ell = if lambda.ell > 0 { lambda.ell } else { 2 };
        let rest = lambda.without_part(ell).expect("leading part present");
        let i = ell as i64 - 3;
        // t^2 z ℓ F_{ℓ,rest} = -t^2 (quadratic + reattach + [i != -1](2u+i+1) i F_{i,rest}
        //                          + inhomogeneous) + (i+2) F_{i+2,rest}
        let mut inner = self.quadratic_terms(i, rest)?;
        inner = inner.add(&self.reattach_terms(i, rest)?);
        if i > 0 {
            let f = self.f_with(rest, i as u32)?;
            inner = inner.add(&f.mul_poly(&(poly(2 * i, 1, 0, 0) + MPoly::from_int(i * (i + 1)))));
        }
        if rest.n2 == 0 {
            let half_u = half(poly(1, 1, 0, 0));
            let c = match (i, rest.n1) {
                (-1, 1) => half_u,
                (0, 0) => &half_u * &(poly(1, 1, 0, 0) + MPoly::one()),
                _ => MPoly::zero(),
            };
            if !c.is_zero() {
                inner = inner.add(&series_of(c, 0));
            }
        }
        let top = self.f_with(rest, (i + 2) as u32)?.scale_int(i + 2);
        let numer = top.sub(&inner.mul_t_pow(2));
        Ok(numer.mul_t_pow(-2).div_z()?.scale(&rat(1, ell as i64)))
    }
}
