//! The functional identities, evaluated as residual series.
//!
//! Every check returns `lhs - rhs` as a [`TSeries`]; the identity holds on the
//! window when every retained coefficient is zero.

use std::ops::Add;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;

use super::context::{Model, SeriesContext};
use super::lambda::LambdaIndex;
use super::oneface::{bip_oneface_ode, bip_oneface_series, ledoux_ode, oneface_series};
use crate::arith::{parse_series, rat, MPoly, TSeries, Var};
use crate::error::{Error, Result};
use crate::rec::bipartite::compute_bip_oneface;
use crate::rec::maps::compute_oneface;

fn lam(parts: &[u32]) -> LambdaIndex {
    LambdaIndex::from_parts(parts).expect("static index")
}

fn fixed(src: &str) -> TSeries {
    parse_series(src).expect("static coefficient")
}

/// The three combinations in the normalisation with `p -> 2p` absorbed.
#[derive(Clone, Debug)]
pub struct KpCombinations {
    pub kp1: TSeries,
    pub kp2: TSeries,
    pub kp3: TSeries,
}

pub fn kp_combinations(ctx: &mut SeriesContext) -> Result<KpCombinations> {
    let mut f = |p: &[u32]| ctx.ftheta(lam(p));
    let f11 = f(&[1, 1])?;
    let f1111 = f(&[1, 1, 1, 1])?;
    let f21 = f(&[2, 1])?;
    let f31 = f(&[3, 1])?;
    let f22 = f(&[2, 2])?;

    let kp1 = f22.sub(&f31).scale_int(4).add(&f11.square().scale_int(6).add(&f1111).scale(&rat(4, 3)));

    let kp2 = f(&[3, 2])?
        .sub(&f(&[4, 1])?)
        .scale_int(4)
        .add(&f21.mul(&f11).scale_int(6).add(&f(&[2, 1, 1, 1])?).scale(&rat(8, 3)));

    let kp3 = f(&[5, 1])?
        .scale_int(-6)
        .add(&f(&[4, 2])?.scale_int(4))
        .add(&f(&[3, 3])?.scale_int(2))
        .add(&f31.mul(&f11).scale_int(6).add(&f(&[3, 1, 1, 1])?).scale(&rat(8, 3)))
        .add(&f21.square().scale_int(4).add(&f22.mul(&f11).scale_int(2)).add(&f(&[2, 2, 1, 1])?).scale_int(4))
        .add(
            &f11.pow(3)
                .scale_int(60)
                .add(&f1111.mul(&f11).scale_int(30))
                .add(&f(&[1, 1, 1, 1, 1, 1])?)
                .scale(&rat(4, 45)),
        );
    Ok(KpCombinations { kp1, kp2, kp3 })
}

/// `∇f - 2f`, with the shift acting on `u` (and on `v` for bipartite maps).
fn second_difference(model: Model, s: &TSeries) -> TSeries {
    let shift = |d: i64| match model {
        Model::Bipartite => s.map_coeffs(|c| c.shift_uv(d)),
        _ => s.shift(Var::U, d),
    };
    shift(2).add(&shift(-2)).sub(&s.scale_int(2))
}

/// `∂_t(∇Θ - 2Θ) KP1 - ∂_t KP1 + (4/t) KP1`, the first equation with the
/// exponential eliminated by a logarithmic derivative.
pub fn shifted_bkp1_residual(ctx: &mut SeriesContext) -> Result<TSeries> {
    let kp = kp_combinations(ctx)?;
    let lhs = second_difference(ctx.model(), ctx.base()).dt().mul(&kp.kp1);
    Ok(lhs.sub(&kp.kp1.dt()).add(&kp.kp1.mul_t_pow(-1).scale_int(4)))
}

/// The shift-free ODE of the context's model, assembled from the KP
/// combinations and derivatives of the base series.
pub fn ode_residual(ctx: &mut SeriesContext) -> Result<TSeries> {
    let kp = kp_combinations(ctx)?;
    let base = ctx.base().clone();
    let (k1, k2, k3) = (&kp.kp1, &kp.kp2, &kp.kp3);
    let (d1, d2) = (k1.dt(), k1.dt().dt());
    let (b1, b2) = (base.dt(), base.dt().dt());
    let (front, kp2_term, operator) = match ctx.model() {
        Model::Maps => {
            let op = d2.mul_t_pow(6).add(&d1.mul_t_pow(5).scale_int(2)).add(
                &b2.mul_t_pow(6)
                    .scale_int(2)
                    .add(&b1.mul_t_pow(5).scale_int(4))
                    .add(&fixed("t^4*(u*z-4) + t^2*(3*u+1-z)"))
                    .mul(k1),
            );
            (fixed("t^6"), k2.scale(&rat(1, 2)), op)
        }
        Model::Bipartite => {
            let op = d2.mul_t_pow(4).add(&d1.mul_t_pow(3).scale_int(4)).add(
                &b2.mul_t_pow(4)
                    .scale_int(2)
                    .add(&b1.mul_t_pow(3).scale_int(8))
                    .add(&fixed("3*u*v*t^2 - (u+v)*t"))
                    .mul(k1),
            );
            let k2c = k2.mul(&fixed("t*(u+v+1-z) + 1")).scale(&rat(1, 2));
            (fixed("t^4"), k2c, op)
        }
        Model::Triangulations => {
            let z2 = MPoly::mono(1, 0, 2, 0);
            let op = d2.mul_t_pow(10).add(&d1.mul_t_pow(9).scale_int(5)).mul_poly(&z2).add(
                &b2.mul_t_pow(10)
                    .scale_int(2)
                    .add(&b1.mul_t_pow(9).scale_int(10))
                    .mul_poly(&z2)
                    .add(&fixed("4*t^8*z^2*(u^2+u) + t^2*u"))
                    .mul(k1),
            );
            let k2c = k2.div_z()?.mul_t_pow(-2).scale(&rat(1, 2));
            (fixed("t^10*z^2"), k2c, op)
        }
    };
    let inner = k3.sub(&kp2_term).sub(&operator);
    Ok(front.mul(&d1.square()).sub(&k2.square()).add(&k1.mul(&inner)))
}

/// A polynomial in the symbols `F_λ` (derivatives of `log τ`), kept
/// symbolic so that `p_j`-derivatives can be taken by the product rule.
#[derive(Clone, Debug, Default)]
pub struct Expr {
    terms: Vec<(BigRational, Vec<LambdaIndex>)>,
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(mut self, other: Expr) -> Expr {
        self.terms.extend(other.terms);
        self
    }
}

impl Expr {
    pub fn symbol(l: LambdaIndex) -> Self {
        Expr { terms: vec![(rat(1, 1), vec![l])] }
    }

    pub fn parse_symbol(s: &str) -> Self {
        Self::symbol(s.parse().expect("static index"))
    }

    pub fn scale(mut self, c: BigRational) -> Self {
        for t in &mut self.terms {
            t.0 = &t.0 * &c;
        }
        self
    }

    pub fn mul(&self, other: &Expr) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, fa) in &self.terms {
            for (b, fb) in &other.terms {
                let mut f = fa.clone();
                f.extend(fb.iter().copied());
                terms.push((a * b, f));
            }
        }
        Expr { terms }
    }

    /// `∂/∂p_j`, adding a part `j` to one factor at a time.
    pub fn diff(&self, j: u32) -> Result<Self> {
        let mut terms = Vec::new();
        for (c, factors) in &self.terms {
            for k in 0..factors.len() {
                let mut f = factors.clone();
                f[k] = f[k].with_part(j)?;
                terms.push((c.clone(), f));
            }
        }
        Ok(Expr { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Specialises every `F_λ` of `F(t, 2p)` at `p_i = z/2`, which is
    /// `2^{ℓ(λ)} F^θ_λ`.
    pub fn eval(&self, ctx: &mut SeriesContext) -> Result<TSeries> {
        let mut acc = TSeries::exact_zero();
        for (c, factors) in &self.terms {
            let mut prod = TSeries::constant(MPoly::constant(c.clone()));
            for l in factors {
                let f = ctx.ftheta(*l)?.scale_int(1 << l.len());
                prod = prod.mul(&f);
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    }
}

fn sym(s: &str) -> Expr {
    Expr::parse_symbol(s)
}

/// The unrescaled combinations of a generic tau function.
pub fn kp_exprs() -> (Expr, Expr, Expr) {
    let f11 = sym("[1^2]");
    let kp1 = sym("[3,1]")
        .scale(rat(-1, 1))
        .add(sym("[2^2]"))
        .add(f11.mul(&f11).scale(rat(1, 2)))
        .add(sym("[1^4]").scale(rat(1, 12)));
    let kp2 = sym("[4,1]")
        .scale(rat(-2, 1))
        .add(sym("[3,2]").scale(rat(2, 1)))
        .add(sym("[2,1]").mul(&f11).scale(rat(2, 1)))
        .add(sym("[2,1^3]").scale(rat(1, 3)));
    let kp3 = sym("[5,1]")
        .scale(rat(-6, 1))
        .add(sym("[4,2]").scale(rat(4, 1)))
        .add(sym("[3^2]").scale(rat(2, 1)))
        .add(sym("[3,1]").mul(&f11).scale(rat(4, 1)))
        .add(sym("[3,1^3]").scale(rat(2, 3)))
        .add(sym("[2,1]").mul(&sym("[2,1]")).scale(rat(4, 1)))
        .add(sym("[2^2]").mul(&f11).scale(rat(2, 1)))
        .add(sym("[2^2,1^2]"))
        .add(f11.mul(&f11).mul(&f11).scale(rat(1, 3)))
        .add(sym("[1^4]").mul(&f11).scale(rat(1, 6)))
        .add(sym("[1^6]").scale(rat(1, 180)));
    (kp1, kp2, kp3)
}

/// Residual of the fixed-charge identity, `lhs - rhs`, on maps.
pub fn fixed_charge_residual(ctx: &mut SeriesContext) -> Result<TSeries> {
    let (kp1, kp2, kp3) = kp_exprs();
    let mut ev = |e: &Expr| e.eval(ctx);
    let k1 = ev(&kp1)?;
    let k2 = ev(&kp2)?;
    let k3 = ev(&kp3)?;
    let k1_1 = ev(&kp1.diff(1)?)?;
    let k1_11 = ev(&kp1.diff(1)?.diff(1)?)?;
    let k1_111 = ev(&kp1.diff(1)?.diff(1)?.diff(1)?)?;
    let k1_2 = ev(&kp1.diff(2)?)?;
    let k2_1 = ev(&kp2.diff(1)?)?;
    let k2_2 = ev(&kp2.diff(2)?)?;
    let k3_1 = ev(&kp3.diff(1)?)?;
    let f111 = ev(&sym("[1^3]"))?;

    let k1sq = k1.square();
    let lhs = f111.mul(&k1sq.mul(&k1)).scale_int(2);
    let rhs = k3_1
        .sub(&k2_2.scale_int(2))
        .mul(&k1sq)
        .sub(&k3.sub(&k1_11.scale_int(3)).mul(&k1).mul(&k1_1))
        .add(&k1_2.sub(&k2_1).mul(&k1).mul(&k2).scale_int(2))
        .add(&k2.square().mul(&k1_1).scale_int(2))
        .sub(&k1_1.pow(3).scale_int(2))
        .sub(&k1sq.mul(&k1_111));
    Ok(lhs.sub(&rhs))
}

/// Which identity a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    ShiftedBkp1,
    OdeMaps,
    OdeBipartite,
    OdeTriangulations,
    Ledoux,
    BipOneface,
    FixedCharge,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::ShiftedBkp1,
        Identity::OdeMaps,
        Identity::OdeBipartite,
        Identity::OdeTriangulations,
        Identity::Ledoux,
        Identity::BipOneface,
        Identity::FixedCharge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::ShiftedBkp1 => "shifted-bkp1",
            Identity::OdeMaps => "ode-maps",
            Identity::OdeBipartite => "ode-bipartite",
            Identity::OdeTriangulations => "ode-triangulations",
            Identity::Ledoux => "ledoux",
            Identity::BipOneface => "bip-oneface",
            Identity::FixedCharge => "fixed-charge",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|i| i.name() == s).ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }

    fn model(self) -> Model {
        match self {
            Identity::OdeBipartite | Identity::BipOneface => Model::Bipartite,
            Identity::OdeTriangulations => Model::Triangulations,
            _ => Model::Maps,
        }
    }

    /// Residual for a context whose base series is known through `input`.
    fn residual_for(self, input: u32) -> Result<TSeries> {
        match self {
            Identity::ShiftedBkp1 => shifted_bkp1_residual(&mut SeriesContext::maps(input)?),
            Identity::OdeMaps => ode_residual(&mut SeriesContext::maps(input)?),
            Identity::OdeBipartite => ode_residual(&mut SeriesContext::bipartite(input)?),
            Identity::OdeTriangulations => ode_residual(&mut SeriesContext::triangulations(input)?),
            Identity::FixedCharge => fixed_charge_residual(&mut SeriesContext::maps(input)?),
            Identity::Ledoux => {
                let table = compute_oneface(input / 2 + 1)?;
                Ok(ledoux_ode().apply(&oneface_series(&table, input as i64)))
            }
            Identity::BipOneface => {
                let table = compute_bip_oneface(input.max(3))?;
                Ok(bip_oneface_ode().apply(&bip_oneface_series(&table, input as i64)))
            }
        }
    }

    /// Residual known at least through `t^order`, growing the input until the
    /// window is wide enough.
    pub fn residual(self, order: u32) -> Result<(TSeries, u32)> {
        let mut input = order;
        loop {
            let r = self.residual_for(input)?;
            if r.max_order() >= order as i64 {
                return Ok((r, input));
            }
            let short = (order as i64 - r.max_order()).max(1) as u32;
            input += short;
        }
    }

    pub fn verify(self, order: u32) -> Result<VerifyReport> {
        let start = Instant::now();
        let (r, input) = self.residual(order)?;
        let first = r.first_nonzero().map(|(k, c)| (k, c.to_string()));
        let window = r.window().ok();
        Ok(VerifyReport {
            identity: self,
            model: self.model().name(),
            order,
            input_order: input,
            window,
            passed: first.is_none() && window.is_some(),
            first_nonzero: first,
            seconds: start.elapsed().as_secs_f64(),
        })
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub identity: Identity,
    pub model: &'static str,
    /// Requested order: the residual is known at least through `t^order`.
    pub order: u32,
    /// Truncation order of the base series that was needed for that.
    pub input_order: u32,
    /// Range of orders actually checked.
    pub window: Option<(i64, i64)>,
    pub passed: bool,
    /// First nonzero coefficient: its order and value.
    pub first_nonzero: Option<(i64, String)>,
    pub seconds: f64,
}
