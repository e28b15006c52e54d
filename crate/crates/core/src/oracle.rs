//! Brute-force ground truth from the flag model.
//!
//! A map with `n` edges is a transitive triple of fixed-point-free involutions
//! `(τ0, τ1, τ2)` on `4n` flags where `τ0 τ2 = τ2 τ0` is also fixed-point-free.
//! Vertices are orbits of `⟨τ1, τ2⟩`, edges orbits of `⟨τ0, τ2⟩`, faces orbits
//! of `⟨τ0, τ1⟩`.
//!
//! Two independent enumerators are provided:
//! * [`oracle_count`] runs over labeled triples with `τ2` fixed, then divides out
//!   the labelings (tiny sizes only);
//! * [`rooted_count`] generates each rooted map once through its canonical
//!   breadth-first labeling, which is cheap enough for the triangulations with
//!   up to 9 edges.
//!
//! Both return polynomials in `u` (vertices, or black vertices), `v` (white
//! vertices) and `z` (faces), keyed like the recurrence tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::rec::PolyTable;

/// Largest edge count accepted by the labeled enumerator.
pub const LABELED_EDGE_LIMIT: u32 = 3;
/// Largest edge count accepted by the rooted generator (triangulations / others).
pub const ROOTED_EDGE_LIMIT_TRIANGULATIONS: u32 = 9;
pub const ROOTED_EDGE_LIMIT: u32 = 6;

const UNDEF: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Filter {
    #[default]
    All,
    Bipartite,
    Triangulation,
}

impl Filter {
    pub fn name(self) -> &'static str {
        match self {
            Filter::All => "maps",
            Filter::Bipartite => "bipartite",
            Filter::Triangulation => "triangulations",
        }
    }

    /// Table size index of a map with `edges` edges.
    pub fn size_of(self, edges: u32) -> Option<u32> {
        match self {
            Filter::Triangulation if !edges.is_multiple_of(3) => None,
            Filter::Triangulation => Some(edges / 3),
            _ => Some(edges),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "all" | "maps" => Ok(Filter::All),
            "bipartite" => Ok(Filter::Bipartite),
            "triangulation" | "triangulations" => Ok(Filter::Triangulation),
            _ => Err(Error::Invalid(format!("unknown oracle filter `{s}`"))),
        }
    }
}

/// A complete flag triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagMap {
    pub tau: [Vec<u8>; 3],
}

/// Per-root statistics: the monomial seen from a root in the colour class of
/// flag 0, and from a root in the other class (bipartite filter only).
struct Keys {
    g2: u32,
    own: (Monomial, u64),
    other: Option<(Monomial, u64)>,
}

fn orbits(a: &[u8], b: &[u8]) -> (usize, Vec<u8>) {
    let mut id = vec![UNDEF; a.len()];
    let mut count = 0u8;
    for s in 0..a.len() {
        if id[s] != UNDEF {
            continue;
        }
        let mut stack = vec![s];
        id[s] = count;
        while let Some(x) = stack.pop() {
            for y in [a[x], b[x]] {
                if id[y as usize] == UNDEF {
                    id[y as usize] = count;
                    stack.push(y as usize);
                }
            }
        }
        count += 1;
    }
    (count as usize, id)
}

impl FlagMap {
    pub fn flags(&self) -> usize {
        self.tau[0].len()
    }

    pub fn edges(&self) -> u32 {
        (self.flags() / 4) as u32
    }

    pub fn vertices(&self) -> usize {
        orbits(&self.tau[1], &self.tau[2]).0
    }

    pub fn faces(&self) -> usize {
        orbits(&self.tau[0], &self.tau[1]).0
    }

    /// The axioms: involutive, fixed-point-free, `τ0 τ2` commuting and
    /// fixed-point-free, transitive.
    pub fn is_valid(&self) -> bool {
        let n = self.flags();
        if n == 0 || !n.is_multiple_of(4) {
            return false;
        }
        for t in &self.tau {
            if t.len() != n
                || (0..n).any(|x| t[x] as usize >= n || t[x] as usize == x || t[t[x] as usize] as usize != x)
            {
                return false;
            }
        }
        let (t0, t2) = (&self.tau[0], &self.tau[2]);
        let commute = (0..n).all(|x| t0[t2[x] as usize] == t2[t0[x] as usize] && t0[t2[x] as usize] as usize != x);
        commute && self.is_connected()
    }

    fn is_connected(&self) -> bool {
        let n = self.flags();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for t in &self.tau {
                let y = t[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// Exchanges the vertex and face involutions.
    pub fn dual(&self) -> FlagMap {
        FlagMap { tau: [self.tau[2].clone(), self.tau[1].clone(), self.tau[0].clone()] }
    }

    /// `2 - (v - e + f)`.
    pub fn twice_genus(&self) -> i64 {
        2 - (self.vertices() as i64 - self.edges() as i64 + self.faces() as i64)
    }

    fn keys(&self, filter: Filter) -> Option<Keys> {
        let (t0, t1, t2) = (&self.tau[0], &self.tau[1], &self.tau[2]);
        let n = t0.len();
        let (nv, vid) = orbits(t1, t2);
        let (nf, _) = orbits(t0, t1);
        let chi = nv as i64 - (n / 4) as i64 + nf as i64;
        let g2 = u32::try_from(2 - chi).expect("Euler characteristic at most 2");
        match filter {
            Filter::All => Some(Keys { g2, own: (Monomial::new(nv as u32, nf as u32, 0), n as u64), other: None }),
            Filter::Triangulation => {
                let (_, fid) = orbits(t0, t1);
                let mut size = vec![0u32; nf];
                for &f in &fid {
                    size[f as usize] += 1;
                }
                size.iter().all(|&s| s == 6).then(|| Keys {
                    g2,
                    own: (Monomial::new(nv as u32, nf as u32, 0), n as u64),
                    other: None,
                })
            }
            Filter::Bipartite => {
                let mut colour = vec![UNDEF; nv];
                let mut adj = vec![Vec::new(); nv];
                for x in 0..n {
                    let (a, b) = (vid[x] as usize, vid[t0[x] as usize] as usize);
                    adj[a].push(b);
                }
                colour[vid[0] as usize] = 0;
                let mut stack = vec![vid[0] as usize];
                while let Some(a) = stack.pop() {
                    for &b in &adj[a] {
                        if colour[b] == UNDEF {
                            colour[b] = 1 - colour[a];
                            stack.push(b);
                        } else if colour[b] == colour[a] {
                            return None;
                        }
                    }
                }
                let black = colour.iter().filter(|&&c| c == 0).count() as u32;
                let white = nv as u32 - black;
                let own_roots = (0..n).filter(|&x| colour[vid[x] as usize] == 0).count() as u64;
                Some(Keys {
                    g2,
                    own: (Monomial::new(black, nf as u32, white), own_roots),
                    other: Some((Monomial::new(white, nf as u32, black), n as u64 - own_roots)),
                })
            }
        }
    }
}

type Tally = BTreeMap<(u32, Monomial), u64>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (k, c) in b {
        *a.entry(k).or_default() += c;
    }
    a
}

fn to_table(tally: Tally, filter: Filter, edges: u32, scale: impl Fn(BigInt) -> Result<BigInt>) -> Result<PolyTable> {
    let size = filter.size_of(edges).expect("edge count checked");
    let mut polys: BTreeMap<u32, MPoly> = BTreeMap::new();
    for ((g2, m), c) in tally {
        let c = scale(BigInt::from(c))?;
        polys.entry(g2).or_insert_with(MPoly::zero).add_term(m, BigRational::from_integer(c));
    }
    let mut table = PolyTable::new();
    for (g2, p) in polys {
        table.insert(size, g2, p);
    }
    Ok(table)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn double_factorial(n: u64) -> BigInt {
    (1..=n).rev().step_by(2).fold(BigInt::one(), |acc, k| acc * k)
}

fn check_edges(edges: u32, filter: Filter, limit: u32) -> Result<()> {
    if edges == 0 || edges > limit {
        return Err(Error::OracleLimit(format!("{edges} edges for {filter} (allowed 1..={limit})")));
    }
    if filter.size_of(edges).is_none() {
        return Err(Error::Invalid(format!("triangulations need a multiple of 3 edges, got {edges}")));
    }
    Ok(())
}

/// The fixed-point-free involutions commuting with `τ2 = (0 1)(2 3)...` whose
/// product with it is fixed-point-free: a perfect matching of the `τ2` pairs,
/// plus a twist bit per matched couple.
fn commuting_partners(flags: usize) -> Vec<Vec<u8>> {
    fn rec(t0: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let Some(a) = (0..t0.len() / 2).find(|&p| t0[2 * p] == UNDEF) else {
            out.push(t0.clone());
            return;
        };
        for b in a + 1..t0.len() / 2 {
            if t0[2 * b] != UNDEF {
                continue;
            }
            for twist in 0..2 {
                let (x0, x1) = (2 * a, 2 * a + 1);
                let (y0, y1) = (2 * b + twist, 2 * b + 1 - twist);
                t0[x0] = y0 as u8;
                t0[y0] = x0 as u8;
                t0[x1] = y1 as u8;
                t0[y1] = x1 as u8;
                rec(t0, out);
                for f in [x0, x1, y0, y1] {
                    t0[f] = UNDEF;
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![UNDEF; flags], &mut out);
    out
}

struct Dsu {
    parent: Vec<u8>,
    /// Flags of the component whose `τ1` is still unassigned.
    open: Vec<u8>,
    size: Vec<u8>,
}

impl Dsu {
    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }
}

/// Enumerates every `τ1` for fixed `τ0`, `τ2`, pruning as soon as a component
/// closes up without covering all flags.
fn labeled_for(t0: &[u8], t2: &[u8], filter: Filter) -> Tally {
    let n = t0.len();
    let mut dsu = Dsu { parent: (0..n as u8).collect(), open: vec![1; n], size: vec![1; n] };
    // Components start as the edges.
    for x in 0..n {
        for y in [t0[x] as usize, t2[x] as usize] {
            let (a, b) = (dsu.find(x), dsu.find(y));
            if a != b {
                dsu.parent[b] = a as u8;
                dsu.open[a] += dsu.open[b];
                dsu.size[a] += dsu.size[b];
            }
        }
    }
    let mut t1 = vec![UNDEF; n];
    let mut tally = Tally::new();
    fn rec(t: (&[u8], &mut Vec<u8>, &[u8]), dsu: &mut Dsu, filter: Filter, tally: &mut Tally) {
        let (t0, t1, t2) = t;
        let n = t0.len();
        let Some(x) = t1.iter().position(|&y| y == UNDEF) else {
            let m = FlagMap { tau: [t0.to_vec(), t1.clone(), t2.to_vec()] };
            if let Some(k) = m.keys(filter) {
                *tally.entry((k.g2, k.own.0)).or_default() += k.own.1;
                if let Some((mono, c)) = k.other {
                    if c > 0 {
                        *tally.entry((k.g2, mono)).or_default() += c;
                    }
                }
            }
            return;
        };
        for y in x + 1..n {
            if t1[y] != UNDEF {
                continue;
            }
            let (a, b) = (dsu.find(x), dsu.find(y));
            let saved = (dsu.parent.clone(), dsu.open.clone(), dsu.size.clone());
            let root = if a == b {
                dsu.open[a] -= 2;
                a
            } else {
                dsu.parent[b] = a as u8;
                dsu.open[a] = dsu.open[a] + dsu.open[b] - 2;
                dsu.size[a] += dsu.size[b];
                a
            };
            if dsu.open[root] > 0 || dsu.size[root] as usize == n {
                t1[x] = y as u8;
                t1[y] = x as u8;
                rec((t0, t1, t2), dsu, filter, tally);
                t1[x] = UNDEF;
                t1[y] = UNDEF;
            }
            (dsu.parent, dsu.open, dsu.size) = saved;
        }
    }
    rec((t0, &mut t1, t2), &mut dsu, filter, &mut tally);
    tally
}

/// Rooted counts by `(size, g2)` from all labeled triples on `4·edges` flags.
///
/// `τ2` is fixed to `(0 1)(2 3)...`; all fixed-point-free involutions are
/// conjugate, so the triple count is the fixed-`τ2` count times `(4e-1)!!`.
/// Rooted maps are triples divided by `(4e-1)!` with the root at a uniformly
/// chosen flag, i.e. the per-root tallies times `(4e-1)!! / (4e)!`.
pub fn oracle_count(edges: u32, filter: Filter) -> Result<PolyTable> {
    check_edges(edges, filter, LABELED_EDGE_LIMIT)?;
    let flags = 4 * edges as usize;
    let t2: Vec<u8> = (0..flags as u8).map(|x| x ^ 1).collect();
    let tally = commuting_partners(flags).par_iter().map(|t0| labeled_for(t0, &t2, filter)).reduce(Tally::new, merge);
    let conj = double_factorial(flags as u64 - 1);
    let divisor = factorial(flags as u64);
    to_table(tally, filter, edges, |c| {
        let (q, r) = (c.clone() * &conj).div_rem(&divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::OracleDivision {
                count: (c * &conj).to_string(),
                divisor: divisor.to_string(),
                key: filter.to_string(),
            })
        }
    })
}

/// Flags come in edge blocks `4k..4k+4` with `τ0 = (4k 4k+1)(4k+2 4k+3)` and
/// `τ2 = (4k 4k+2)(4k+1 4k+3)`; only `τ1` is searched.
fn block_partner(x: usize, which: usize) -> u8 {
    let base = x & !3;
    let r = x & 3;
    (base + if which == 0 { r ^ 1 } else { r ^ 2 }) as u8
}

/// Flags on the (possibly open) face chain through `x`, and whether it closed.
fn face_chain(t0: &[u8], t1: &[u8], x: usize) -> (usize, bool) {
    let mut len = 1;
    let mut cur = x;
    let mut use0 = true;
    loop {
        let next = if use0 { t0[cur] } else { t1[cur] };
        if next == UNDEF {
            break;
        }
        if next as usize == x {
            return (len, true);
        }
        len += 1;
        cur = next as usize;
        use0 = !use0;
    }
    cur = x;
    use0 = false;
    loop {
        let next = if use0 { t0[cur] } else { t1[cur] };
        if next == UNDEF {
            break;
        }
        len += 1;
        cur = next as usize;
        use0 = !use0;
    }
    (len, false)
}

struct Generator {
    edges: usize,
    filter: Filter,
    t0: Vec<u8>,
    t1: Vec<u8>,
    t2: Vec<u8>,
    used: usize,
    tally: Tally,
}

impl Generator {
    fn run(&mut self) {
        let Some(x) = (0..4 * self.used).find(|&x| self.t1[x] == UNDEF) else {
            if self.used == self.edges {
                let m = FlagMap { tau: [self.t0.clone(), self.t1.clone(), self.t2.clone()] };
                if let Some(k) = m.keys(self.filter) {
                    *self.tally.entry((k.g2, k.own.0)).or_default() += 1;
                }
            }
            return;
        };
        for y in x + 1..4 * self.used {
            if self.t1[y] == UNDEF {
                self.try_pair(x, y);
            }
        }
        if self.used < self.edges {
            let y = 4 * self.used;
            self.used += 1;
            self.try_pair(x, y);
            self.used -= 1;
        }
    }

    fn try_pair(&mut self, x: usize, y: usize) {
        self.t1[x] = y as u8;
        self.t1[y] = x as u8;
        let ok = self.filter != Filter::Triangulation || {
            let (len, closed) = face_chain(&self.t0, &self.t1, x);
            if closed {
                len == 6
            } else {
                len <= 6
            }
        };
        if ok {
            self.run();
        }
        self.t1[x] = UNDEF;
        self.t1[y] = UNDEF;
    }
}

/// Rooted counts by `(size, g2)`, generating each rooted map exactly once.
///
/// The root is flag 0. Flags are labeled in discovery order: scanning flags in
/// label order, `τ1` of the first unmatched flag is either a later labeled
/// flag or the first flag of a fresh edge block.
pub fn rooted_count(edges: u32, filter: Filter) -> Result<PolyTable> {
    let limit = match filter {
        Filter::Triangulation => ROOTED_EDGE_LIMIT_TRIANGULATIONS,
        _ => ROOTED_EDGE_LIMIT,
    };
    check_edges(edges, filter, limit)?;
    let flags = 4 * edges as usize;
    let mut g = Generator {
        edges: edges as usize,
        filter,
        t0: (0..flags).map(|x| block_partner(x, 0)).collect(),
        t1: vec![UNDEF; flags],
        t2: (0..flags).map(|x| block_partner(x, 2)).collect(),
        used: 1,
        tally: Tally::new(),
    };
    g.run();
    to_table(g.tally, filter, edges, Ok)
}

/// Sum of all coefficients of each entry, by `(size, g2)`.
pub fn totals(table: &PolyTable) -> BTreeMap<(u32, u32), BigInt> {
    table.iter().map(|(k, p)| (k, p.terms().map(|(_, c)| c.to_integer()).sum())).collect()
}
