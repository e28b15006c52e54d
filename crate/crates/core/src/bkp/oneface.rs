//! Linear ODEs satisfied by the one-face generating functions.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{parse_series, MPoly, Monomial, TSeries};
use crate::rec::bipartite::BipOneFaceTable;
use crate::rec::maps::OneFaceTable;

/// `sum_k c_k(t) d^k/dt^k f + r(t)`.
#[derive(Clone, Debug)]
pub struct LinearOde {
    coeffs: Vec<TSeries>,
    inhomogeneous: TSeries,
}

impl LinearOde {
    fn from_strings(coeffs: &[&str], inhomogeneous: &str) -> Self {
        let parse = |s: &str| parse_series(s).expect("fixed operator coefficients parse");
        LinearOde { coeffs: coeffs.iter().map(|s| parse(s)).collect(), inhomogeneous: parse(inhomogeneous) }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn apply(&self, f: &TSeries) -> TSeries {
        let mut acc = self.inhomogeneous.clone();
        let mut d = f.clone();
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&d));
            }
            d = d.dt();
        }
        acc
    }
}

/// The operator annihilating the one-face map series `[z] Θ`.
pub fn ledoux_ode() -> LinearOde {
    LinearOde::from_strings(
        &[
            "0",
            "32*t^4*(u^2-u-5) + 240*t^6*(2*u-1) + t^2*(10-20*u) + 2880*t^8 + 3",
            "t*(2*t^4*(8*u^2-8*u-109) + 360*t^6*(2*u-1) + t^2*(4-8*u) + 7200*t^8 + 1)",
            "6*t^6*(20*t^2*(2*u-1) + 800*t^4 - 11)",
            "5*t^7*(-1 + 2*t^2*(2*u-1) + 240*t^4)",
            "120*t^12",
            "4*t^13",
        ],
        "240*t^7*u + 30*t^5*(2*u^2-u) + 2*t^3*(4*u^3-4*u^2-11*u) - 2*t*(u^2+u)",
    )
}

/// The operator annihilating the one-face bipartite series `[z] η`.
///
/// The `t^3` part of the first-order coefficient carries `9 (u + v - 1)`; the
/// commonly quoted form has `7 (u + v - 1)` there ([`bip_oneface_ode_literal`]),
/// which leaves the residual `-5 u v (u + v - 1) t^3 + ...`.
pub fn bip_oneface_ode() -> LinearOde {
    bip_ode_with(9)
}

pub fn bip_oneface_ode_literal() -> LinearOde {
    bip_ode_with(7)
}

fn bip_ode_with(k: i64) -> LinearOde {
    let c1 = format!(
        "2 + 7*t*(1-u-v) + t^2*(3*(3*u^2+3*v^2+2*u*v) - 12*(u+v) - 29) \
         + 5*t^3*(-u^3 + u^2*v + u*v^2 - v^3 + (u-v)^2 + {k}*(u+v-1)) \
         + t^4*((u-v)^4 - 18*(u-v)^2 + 81)"
    );
    LinearOde::from_strings(
        &[
            "0",
            &c1,
            "t + 4*t^2*(1-u-v) + t^3*(2*(3*u^2+3*v^2+2*u*v) - 8*(u+v) - 86) \
             - 4*t^4*(u^3 - u^2*v - u*v^2 + v^3 - (u-v)^2 - 37*(u+v-1)) \
             + t^5*((u-v)^4 - 64*(u-v)^2 + 719)",
            "-44*t^4 + 82*t^5*(u+v-1) + t^6*(-38*(u-v)^2 + 1078)",
            "-5*t^5 + 10*t^6*(u+v-1) + t^7*(-5*(u-v)^2 + 493)",
            "80*t^8",
            "4*t^9",
        ],
        "-u*v + t*(2*u^2*v + 2*u*v^2 - 5*u*v) - t^2*u*v*((u-v)^2 - 1)",
    )
}

/// `sum u_n^g / (4n) t^{2n} u^{n+1-2g}`, known through `t^order`.
pub fn oneface_series(table: &OneFaceTable, order: i64) -> TSeries {
    let mut coeffs = vec![MPoly::zero(); (order.max(0) + 1) as usize];
    for ((n, g2), c) in table.iter() {
        let k = 2 * n as i64;
        if k > order || g2 > n + 1 {
            continue;
        }
        let w = BigRational::new(c.clone(), BigInt::from(4 * n));
        coeffs[k as usize].add_term(Monomial::new(n + 1 - g2, 0, 0), w);
    }
    TSeries::new(0, coeffs, order)
}

/// `sum b_n^{i,j} / (2n) t^n u^i v^j`, known through `t^order`.
pub fn bip_oneface_series(table: &BipOneFaceTable, order: i64) -> TSeries {
    let mut coeffs = vec![MPoly::zero(); (order.max(0) + 1) as usize];
    for ((n, i, j), c) in table.iter() {
        if n as i64 > order {
            continue;
        }
        let w = BigRational::new(c.clone(), BigInt::from(2 * n));
        coeffs[n as usize].add_term(Monomial::new(i, 0, j), w);
    }
    TSeries::new(0, coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rec::bipartite::compute_bip_oneface;
    use crate::rec::maps::compute_oneface;

    fn vanishes(r: &TSeries) -> bool {
        r.iter().all(|(_, c)| c.is_zero())
    }

    #[test]
    fn ledoux_ode_annihilates() {
        let f = oneface_series(&compute_oneface(9).unwrap(), 18);
        let r = ledoux_ode().apply(&f);
        assert!(r.max_order() >= 12);
        assert!(vanishes(&r));
    }

    #[test]
    fn bip_ode_annihilates() {
        let f = bip_oneface_series(&compute_bip_oneface(12).unwrap(), 12);
        let r = bip_oneface_ode().apply(&f);
        assert!(r.max_order() >= 10);
        assert!(vanishes(&r));
        let lit = bip_oneface_ode_literal().apply(&f);
        assert_eq!(lit.first_nonzero().map(|(k, _)| k), Some(3));
    }
}
