//! Feasible weight distributions and exact non-negative integer solving of
//! the reduced pattern-count systems.
//!
//! Both stages are instances of the same problem: all non-negative integer
//! points of an affine lattice slice, within explicit upper bounds, subject
//! to optional quadratic side constraints. The solver is a plain depth-first
//! search over variable intervals with exhaustive interval propagation:
//!
//! * every linear equation tightens every incident variable to the integer
//!   interval compatible with the other variables' current intervals, to a
//!   fixpoint (single-variable constraints, such as the "0 = y + C" zero
//!   equations, pin their variable in the first pass);
//! * quadratic constraints prune a branch as soon as zero falls outside
//!   their interval hull, and are checked exactly at the leaves;
//! * branching picks the variable with the smallest remaining interval
//!   (ties by index) and tries values in ascending order.
//!
//! The search is exact and complete; there is no relaxation and no floating
//! point. A node/time budget turns an over-long run into an explicit
//! `Inconclusive` outcome, never a silently truncated solution list.

use crate::countsys::{CountingIdentities, IndetIds};
use crate::exact::{Monomial, SymPoly, SymSystem};
use crate::patterns::WeightSets;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

/// Non-negative integer values for every admissible point and plane weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WeightDistribution {
    /// u -> n_u.
    pub points: BTreeMap<u32, u64>,
    /// w -> m_w.
    pub planes: BTreeMap<u32, u64>,
}

impl WeightDistribution {
    pub fn point_vector(&self) -> Vec<u64> {
        self.points.values().copied().collect()
    }

    pub fn plane_vector(&self) -> Vec<u64> {
        self.planes.values().copied().collect()
    }
}

/// Search budget. Nodes are branch assignments; the time limit is checked
/// periodically.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_secs: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 100_000_000, max_secs: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetReport {
    pub nodes_used: u64,
    pub max_nodes: u64,
    pub elapsed_secs: f64,
    pub max_secs: Option<u64>,
}

/// Outcome of an exhaustive solve: either the complete solution list or an
/// explicit budget exhaustion report.
#[derive(Clone, Debug)]
pub enum Exhaustive<T> {
    Complete(Vec<T>),
    Inconclusive(BudgetReport),
}

impl<T> Exhaustive<T> {
    pub fn complete(self) -> Option<Vec<T>> {
        match self {
            Exhaustive::Complete(v) => Some(v),
            Exhaustive::Inconclusive(_) => None,
        }
    }
}

struct LinearEq {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    /// Indices with nonzero coefficient.
    support: Vec<usize>,
}

/// A quadratic constraint compiled to integer terms. The polynomials are
/// content-normalized, hence integral; with every variable capped, term
/// magnitudes are bounded ahead of time, and the common case fits i128.
#[derive(Clone)]
struct CompiledQuad {
    /// (coefficient, variable indices of the monomial: 0, 1 or 2 entries).
    terms: Vec<(BigInt, Vec<usize>)>,
    vars: Vec<usize>,
    i128_safe: bool,
}

impl CompiledQuad {
    fn compile(p: &SymPoly, caps: &[BigInt]) -> CompiledQuad {
        let mut terms = Vec::new();
        let mut vars = Vec::new();
        let mut magnitude = BigInt::zero();
        for (m, c) in p.terms() {
            debug_assert!(c.denom().is_one());
            let coeff = c.numer().clone();
            let mono: Vec<usize> = match *m {
                Monomial::One => vec![],
                Monomial::Lin(a) => vec![a as usize],
                Monomial::Quad(a, b) => vec![a as usize, b as usize],
            };
            let mut bound = coeff.clone();
            if bound.is_negative() {
                bound = -bound;
            }
            for &v in &mono {
                bound *= &caps[v];
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            magnitude += bound;
            terms.push((coeff, mono));
        }
        vars.sort_unstable();
        let i128_safe = magnitude < BigInt::from(i128::MAX / 4);
        CompiledQuad { terms, vars, i128_safe }
    }
}

struct Solver<'a> {
    eqs: Vec<LinearEq>,
    quads: &'a [CompiledQuad],
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
    /// i64 mirrors of the bounds for the i128 fast path (bounds always fit:
    /// they are capped by the input caps).
    nodes: u64,
    budget: Budget,
    start: Instant,
    exhausted: bool,
    solutions: Vec<Vec<BigInt>>,
}

fn to_i128(v: &BigInt) -> i128 {
    i128::try_from(v).expect("bounded by caps")
}

fn div_floor_i128(n: i128, d: i128) -> i128 {
    let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
    n.div_euclid(d)
}

fn div_ceil_i128(n: i128, d: i128) -> i128 {
    -div_floor_i128(-n, d)
}

fn isqrt_floor(v: i128) -> i128 {
    debug_assert!(v >= 0);
    if v < 2 {
        return v;
    }
    // integer Newton iteration, monotonically decreasing once above the root
    let shift = (128 - v.leading_zeros()).div_ceil(2);
    let mut x = 1i128 << shift;
    loop {
        let y = (x + v / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn isqrt_ceil(v: i128) -> i128 {
    let f = isqrt_floor(v);
    if f * f == v {
        f
    } else {
        f + 1
    }
}

fn div_ceil_big(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    if a.mod_floor(b).is_zero() {
        a.div_floor(b)
    } else {
        a.div_floor(b) + 1
    }
}

impl<'a> Solver<'a> {
    /// One propagation pass over all equations; returns Err(()) on an empty
    /// interval and Ok(changed) otherwise.
    fn propagate_once(&mut self) -> Result<bool, ()> {
        let mut changed = false;
        for e in 0..self.eqs.len() {
            // contribution interval of the whole row under current bounds
            let mut min_sum = BigInt::zero();
            let mut max_sum = BigInt::zero();
            for si in 0..self.eqs[e].support.len() {
                let i = self.eqs[e].support[si];
                let a = &self.eqs[e].coeffs[i];
                if a.is_positive() {
                    min_sum += a * &self.lo[i];
                    max_sum += a * &self.hi[i];
                } else {
                    min_sum += a * &self.hi[i];
                    max_sum += a * &self.lo[i];
                }
            }
            let rhs = self.eqs[e].rhs.clone();
            if min_sum > rhs || max_sum < rhs {
                return Err(());
            }
            for si in 0..self.eqs[e].support.len() {
                let i = self.eqs[e].support[si];
                let a = self.eqs[e].coeffs[i].clone();
                let (own_min, own_max) = if a.is_positive() {
                    (&a * &self.lo[i], &a * &self.hi[i])
                } else {
                    (&a * &self.hi[i], &a * &self.lo[i])
                };
                // a*v must lie in [rhs - others_max, rhs - others_min]
                let term_lo = &rhs - (&max_sum - &own_max);
                let term_hi = &rhs - (&min_sum - &own_min);
                let (mut new_lo, mut new_hi) = if a.is_positive() {
                    (div_ceil_big(&term_lo, &a), term_hi.div_floor(&a))
                } else {
                    let na = -a.clone();
                    (div_ceil_big(&-term_hi, &na), (-term_lo).div_floor(&na))
                };
                if new_lo < self.lo[i] {
                    new_lo = self.lo[i].clone();
                }
                if new_hi > self.hi[i] {
                    new_hi = self.hi[i].clone();
                }
                if new_lo > new_hi {
                    return Err(());
                }
                if new_lo != self.lo[i] || new_hi != self.hi[i] {
                    // keep the pass sums consistent with the tightened bounds
                    if a.is_positive() {
                        min_sum += &a * (&new_lo - &self.lo[i]);
                        max_sum += &a * (&new_hi - &self.hi[i]);
                    } else {
                        min_sum += &a * (&new_hi - &self.hi[i]);
                        max_sum += &a * (&new_lo - &self.lo[i]);
                    }
                    self.lo[i] = new_lo;
                    self.hi[i] = new_hi;
                    changed = true;
                }
            }
        }
        Ok(changed)
    }

    /// Interval hull check of a compiled quadratic constraint; variables
    /// are non-negative, so term bounds come straight from endpoint
    /// products.
    fn quad_feasible(&self, q: &CompiledQuad) -> bool {
        if q.i128_safe {
            let (mut min, mut max) = (0i128, 0i128);
            for (c, mono) in &q.terms {
                let c: i128 = i128::try_from(c).expect("safe");
                let (tlo, thi) = match mono.len() {
                    0 => (1i128, 1i128),
                    1 => (to_i128(&self.lo[mono[0]]), to_i128(&self.hi[mono[0]])),
                    _ => (
                        to_i128(&self.lo[mono[0]]) * to_i128(&self.lo[mono[1]]),
                        to_i128(&self.hi[mono[0]]) * to_i128(&self.hi[mono[1]]),
                    ),
                };
                if c > 0 {
                    min += c * tlo;
                    max += c * thi;
                } else {
                    min += c * thi;
                    max += c * tlo;
                }
            }
            min <= 0 && max >= 0
        } else {
            let (mut min, mut max) = (BigInt::zero(), BigInt::zero());
            for (c, mono) in &q.terms {
                let (tlo, thi) = match mono.len() {
                    0 => (BigInt::one(), BigInt::one()),
                    1 => (self.lo[mono[0]].clone(), self.hi[mono[0]].clone()),
                    _ => (
                        &self.lo[mono[0]] * &self.lo[mono[1]],
                        &self.hi[mono[0]] * &self.hi[mono[1]],
                    ),
                };
                if c.is_positive() {
                    min += c * tlo;
                    max += c * thi;
                } else {
                    min += c * thi;
                    max += c * tlo;
                }
            }
            !min.is_positive() && !max.is_negative()
        }
    }

    /// One round of variable tightening from the quadratic constraints:
    /// writing p = v * A + B with v not squared in p, the interval of
    /// -B/A bounds v whenever A's interval misses zero. Only the i128-safe
    /// constraints participate; the rest still prune via the hull check.
    fn propagate_quads_once(&mut self) -> Result<bool, ()> {
        let mut changed = false;
        for q in self.quads {
            if !self.quad_feasible(q) {
                return Err(());
            }
            if !q.i128_safe {
                continue;
            }
            for &v in &q.vars {
                let squared = q
                    .terms
                    .iter()
                    .any(|(_, mono)| mono.len() == 2 && mono[0] == v && mono[1] == v);
                if squared {
                    // usable when v occurs only as v^2: c v^2 = -B gives
                    // sqrt bounds (v is non-negative)
                    let elsewhere = q.terms.iter().any(|(_, mono)| {
                        let occurs = mono.contains(&v);
                        let is_square = mono.len() == 2 && mono[0] == v && mono[1] == v;
                        occurs && !is_square
                    });
                    if elsewhere {
                        continue;
                    }
                    let mut c_sq = 0i128;
                    let (mut b_lo, mut b_hi) = (0i128, 0i128);
                    for (c, mono) in &q.terms {
                        let c: i128 = i128::try_from(c).expect("safe");
                        if mono.len() == 2 && mono[0] == v && mono[1] == v {
                            c_sq = c;
                            continue;
                        }
                        let (part_lo, part_hi) = match mono.len() {
                            0 => (1i128, 1i128),
                            1 => (to_i128(&self.lo[mono[0]]), to_i128(&self.hi[mono[0]])),
                            _ => (
                                to_i128(&self.lo[mono[0]]) * to_i128(&self.lo[mono[1]]),
                                to_i128(&self.hi[mono[0]]) * to_i128(&self.hi[mono[1]]),
                            ),
                        };
                        if c > 0 {
                            b_lo += c * part_lo;
                            b_hi += c * part_hi;
                        } else {
                            b_lo += c * part_hi;
                            b_hi += c * part_lo;
                        }
                    }
                    debug_assert!(c_sq != 0);
                    // c_sq * v^2 in [-b_hi, -b_lo]
                    let (sq_lo, sq_hi) = if c_sq > 0 {
                        (div_ceil_i128(-b_hi, c_sq), div_floor_i128(-b_lo, c_sq))
                    } else {
                        (div_ceil_i128(-b_lo, c_sq), div_floor_i128(-b_hi, c_sq))
                    };
                    if sq_hi < 0 {
                        return Err(());
                    }
                    let mut new_hi = BigInt::from(isqrt_floor(sq_hi.max(0)));
                    let mut new_lo = if sq_lo > 0 {
                        BigInt::from(isqrt_ceil(sq_lo))
                    } else {
                        BigInt::zero()
                    };
                    if new_lo < self.lo[v] {
                        new_lo = self.lo[v].clone();
                    }
                    if new_hi > self.hi[v] {
                        new_hi = self.hi[v].clone();
                    }
                    if new_lo > new_hi {
                        return Err(());
                    }
                    if new_lo != self.lo[v] || new_hi != self.hi[v] {
                        self.lo[v] = new_lo;
                        self.hi[v] = new_hi;
                        changed = true;
                    }
                    continue;
                }
                let (mut a_lo, mut a_hi) = (0i128, 0i128);
                let (mut b_lo, mut b_hi) = (0i128, 0i128);
                for (c, mono) in &q.terms {
                    let c: i128 = i128::try_from(c).expect("safe");
                    let (part_lo, part_hi, is_a) = match mono.len() {
                        0 => (1i128, 1i128, false),
                        1 if mono[0] == v => (1i128, 1i128, true),
                        1 => (to_i128(&self.lo[mono[0]]), to_i128(&self.hi[mono[0]]), false),
                        _ if mono[0] == v || mono[1] == v => {
                            let w = if mono[0] == v { mono[1] } else { mono[0] };
                            (to_i128(&self.lo[w]), to_i128(&self.hi[w]), true)
                        }
                        _ => (
                            to_i128(&self.lo[mono[0]]) * to_i128(&self.lo[mono[1]]),
                            to_i128(&self.hi[mono[0]]) * to_i128(&self.hi[mono[1]]),
                            false,
                        ),
                    };
                    let (t_lo, t_hi) =
                        if c > 0 { (c * part_lo, c * part_hi) } else { (c * part_hi, c * part_lo) };
                    if is_a {
                        a_lo += t_lo;
                        a_hi += t_hi;
                    } else {
                        b_lo += t_lo;
                        b_hi += t_hi;
                    }
                }
                if a_lo <= 0 && a_hi >= 0 {
                    continue;
                }
                // v in -B/A over the corner quotients
                let corners = [(-b_lo, a_lo), (-b_lo, a_hi), (-b_hi, a_lo), (-b_hi, a_hi)];
                let mut vmin: Option<i128> = None; // ceil of the least corner
                let mut vmax: Option<i128> = None; // floor of the greatest
                for (n, d) in corners {
                    let lo_c = div_ceil_i128(n, d);
                    let hi_c = div_floor_i128(n, d);
                    vmin = Some(vmin.map_or(lo_c, |x: i128| x.min(lo_c)));
                    vmax = Some(vmax.map_or(hi_c, |x: i128| x.max(hi_c)));
                }
                let mut new_lo = BigInt::from(vmin.unwrap());
                let mut new_hi = BigInt::from(vmax.unwrap());
                if new_lo < self.lo[v] {
                    new_lo = self.lo[v].clone();
                }
                if new_hi > self.hi[v] {
                    new_hi = self.hi[v].clone();
                }
                if new_lo > new_hi {
                    return Err(());
                }
                if new_lo != self.lo[v] || new_hi != self.hi[v] {
                    self.lo[v] = new_lo;
                    self.hi[v] = new_hi;
                    changed = true;
                }
            }
        }
        Ok(changed)
    }

    fn propagate(&mut self) -> bool {
        loop {
            match self.propagate_once() {
                Err(()) => return false,
                Ok(true) => continue,
                Ok(false) => {}
            }
            match self.propagate_quads_once() {
                Err(()) => return false,
                Ok(true) => continue,
                Ok(false) => break,
            }
        }
        true
    }

    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        if self.nodes >= self.budget.max_nodes {
            self.exhausted = true;
            return true;
        }
        if let Some(secs) = self.budget.max_secs {
            if self.nodes % 1024 == 0 && self.start.elapsed().as_secs() >= secs {
                self.exhausted = true;
                return true;
            }
        }
        false
    }

    fn leaf_ok(&self) -> bool {
        for e in &self.eqs {
            let mut sum = BigInt::zero();
            for &i in &e.support {
                sum += &e.coeffs[i] * &self.lo[i];
            }
            if sum != e.rhs {
                return false;
            }
        }
        for q in self.quads {
            let mut acc = BigInt::zero();
            for (c, mono) in &q.terms {
                let v = match mono.len() {
                    0 => BigInt::one(),
                    1 => self.lo[mono[0]].clone(),
                    _ => &self.lo[mono[0]] * &self.lo[mono[1]],
                };
                acc += c * v;
            }
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    fn search(&mut self) {
        if !self.propagate() {
            return;
        }
        // branch variable: smallest open interval, ties by index
        let mut pick: Option<(BigInt, usize)> = None;
        for i in 0..self.lo.len() {
            if self.lo[i] < self.hi[i] {
                let width = &self.hi[i] - &self.lo[i];
                match &pick {
                    Some((w, _)) if *w <= width => {}
                    _ => pick = Some((width, i)),
                }
            }
        }
        let Some((_, var)) = pick else {
            if self.leaf_ok() {
                self.solutions.push(self.lo.clone());
            }
            return;
        };
        let saved_lo = self.lo.clone();
        let saved_hi = self.hi.clone();
        let mut v = saved_lo[var].clone();
        while v <= saved_hi[var] {
            if self.out_of_budget() {
                return;
            }
            self.nodes += 1;
            self.lo = saved_lo.clone();
            self.hi = saved_hi.clone();
            self.lo[var] = v.clone();
            self.hi[var] = v.clone();
            self.search();
            if self.exhausted {
                return;
            }
            v += 1;
        }
        self.lo = saved_lo;
        self.hi = saved_hi;
    }
}

/// Exhaustively solve integer equations `coeffs . v = rhs` with
/// `0 <= v_i <= caps[i]` and quadratic side constraints `p(v) = 0` (their
/// indeterminate ids address variables by index). Solutions come back in
/// ascending lexicographic order.
///
/// Variables split into connected components of the constraint graph; each
/// component is solved independently and the solution sets are combined,
/// which turns the frequent "points times planes" block structure into two
/// small searches instead of one large one.
pub fn solve_bounded(
    eqs: Vec<(Vec<BigInt>, BigInt)>,
    caps: &[BigInt],
    quads: &[SymPoly],
    budget: &Budget,
) -> Exhaustive<Vec<BigInt>> {
    let n = caps.len();
    // union-find over constraint supports
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let unite = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for (coeffs, _) in &eqs {
        let support: Vec<usize> = (0..n).filter(|&i| !coeffs[i].is_zero()).collect();
        for w in support.windows(2) {
            unite(&mut parent, w[0], w[1]);
        }
    }
    for p in quads {
        let vars: Vec<u32> = p.indeterminates().into_iter().collect();
        for w in vars.windows(2) {
            unite(&mut parent, w[0] as usize, w[1] as usize);
        }
    }
    let mut comp_of = vec![0usize; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    {
        let mut roots: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            let ci = match roots.iter().position(|&x| x == r) {
                Some(ci) => ci,
                None => {
                    roots.push(r);
                    comps.push(Vec::new());
                    roots.len() - 1
                }
            };
            comp_of[i] = ci;
            comps[ci].push(i);
        }
    }
    if comps.len() <= 1 {
        return solve_component(eqs, caps, quads.to_vec(), budget);
    }
    // project constraints into each component and solve separately
    let start = Instant::now();
    let mut per_comp: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(comps.len());
    for (ci, vars) in comps.iter().enumerate() {
        let back: BTreeMap<usize, usize> =
            vars.iter().enumerate().map(|(local, &v)| (v, local)).collect();
        let sub_eqs: Vec<(Vec<BigInt>, BigInt)> = eqs
            .iter()
            .filter(|(coeffs, _)| {
                (0..n).any(|i| !coeffs[i].is_zero() && comp_of[i] == ci)
            })
            .map(|(coeffs, rhs)| {
                let mut c = vec![BigInt::zero(); vars.len()];
                for (&v, &local) in &back {
                    c[local] = coeffs[v].clone();
                }
                (c, rhs.clone())
            })
            .collect();
        let sub_quads: Vec<SymPoly> = quads
            .iter()
            .filter(|p| {
                p.indeterminates().iter().any(|&v| comp_of[v as usize] == ci)
            })
            .map(|p| {
                let mut q = SymPoly::zero();
                for (m, c) in p.terms() {
                    let mm = match *m {
                        Monomial::One => Monomial::One,
                        Monomial::Lin(a) => Monomial::Lin(back[&(a as usize)] as u32),
                        Monomial::Quad(a, b) => Monomial::quad(
                            back[&(a as usize)] as u32,
                            back[&(b as usize)] as u32,
                        ),
                    };
                    q.add_term(mm, c.clone());
                }
                q
            })
            .collect();
        let sub_caps: Vec<BigInt> = vars.iter().map(|&v| caps[v].clone()).collect();
        match solve_component(sub_eqs, &sub_caps, sub_quads, budget) {
            Exhaustive::Inconclusive(mut r) => {
                r.elapsed_secs = start.elapsed().as_secs_f64();
                return Exhaustive::Inconclusive(r);
            }
            Exhaustive::Complete(sols) => {
                if sols.is_empty() {
                    return Exhaustive::Complete(Vec::new());
                }
                per_comp.push(sols);
            }
        }
    }
    // cross product, assembled in original variable order
    let mut out: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]];
    for (ci, sols) in per_comp.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * sols.len());
        for partial in &out {
            for sol in sols {
                let mut v = partial.clone();
                for (local, &var) in comps[ci].iter().enumerate() {
                    v[var] = sol[local].clone();
                }
                next.push(v);
            }
        }
        out = next;
    }
    out.sort();
    Exhaustive::Complete(out)
}

fn solve_component(
    eqs: Vec<(Vec<BigInt>, BigInt)>,
    caps: &[BigInt],
    quads: Vec<SymPoly>,
    budget: &Budget,
) -> Exhaustive<Vec<BigInt>> {
    let eqs: Vec<LinearEq> = eqs
        .into_iter()
        .map(|(coeffs, rhs)| {
            let support = (0..coeffs.len()).filter(|&i| !coeffs[i].is_zero()).collect();
            LinearEq { coeffs, rhs, support }
        })
        .collect();
    let compiled: Vec<CompiledQuad> = quads.iter().map(|p| CompiledQuad::compile(p, caps)).collect();
    let mut solver = Solver {
        eqs,
        quads: &compiled,
        lo: vec![BigInt::zero(); caps.len()],
        hi: caps.to_vec(),
        nodes: 0,
        budget: *budget,
        start: Instant::now(),
        exhausted: false,
        solutions: Vec::new(),
    };
    solver.search();
    if solver.exhausted {
        return Exhaustive::Inconclusive(BudgetReport {
            nodes_used: solver.nodes,
            max_nodes: solver.budget.max_nodes,
            elapsed_secs: solver.start.elapsed().as_secs_f64(),
            max_secs: solver.budget.max_secs,
        });
    }
    let mut sols = solver.solutions;
    sols.sort();
    Exhaustive::Complete(sols)
}

/// Degree-<=1 polynomial constraint `p = 0` as an integer linear equation
/// (the polynomial is content-normalized, hence integral).
fn linear_eq_from_poly(p: &SymPoly, nvars: usize) -> (Vec<BigInt>, BigInt) {
    let mut coeffs = vec![BigInt::zero(); nvars];
    let mut rhs = BigInt::zero();
    for (m, c) in p.terms() {
        debug_assert!(c.denom().is_one());
        match *m {
            Monomial::One => rhs -= c.numer(),
            Monomial::Lin(a) => coeffs[a as usize] = c.numer().clone(),
            Monomial::Quad(_, _) => unreachable!("degree checked by caller"),
        }
    }
    (coeffs, rhs)
}

/// All feasible weight distributions: non-negative integer solutions of the
/// three counting identities on each side, further constrained by every zero
/// constraint extracted from the symbolic reduction. Output is sorted
/// lexicographically in the concatenated (n, m) vector.
pub fn enumerate_weight_distributions(
    identities: &CountingIdentities,
    zero_constraints: &[SymPoly],
    sets: &WeightSets,
    indets: &IndetIds,
    budget: &Budget,
) -> Exhaustive<WeightDistribution> {
    let nvars = indets.n_ids.len() + indets.m_ids.len();
    let mut eqs: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for (ids, weights) in [
        (&indets.n_ids, &sets.point_weights),
        (&indets.m_ids, &sets.plane_weights),
    ] {
        let targets = [identities.total, identities.flag_total, identities.pair_total];
        for (k, &target) in targets.iter().enumerate() {
            let mut coeffs = vec![BigInt::zero(); nvars];
            for &w in weights.iter() {
                let w64 = w as u64;
                let factor = match k {
                    0 => 1,
                    1 => w64,
                    _ => w64 * w64.saturating_sub(1),
                };
                coeffs[ids[&w] as usize] = BigInt::from(factor);
            }
            eqs.push((coeffs, BigInt::from(target)));
        }
    }
    let mut quads: Vec<SymPoly> = Vec::new();
    for zc in zero_constraints {
        if zc.degree() <= 1 {
            eqs.push(linear_eq_from_poly(zc, nvars));
        } else {
            quads.push(zc.clone());
        }
    }
    let caps = vec![BigInt::from(identities.total); nvars];
    match solve_bounded(eqs, &caps, &quads, budget) {
        Exhaustive::Inconclusive(r) => Exhaustive::Inconclusive(r),
        Exhaustive::Complete(sols) => Exhaustive::Complete(
            sols.into_iter()
                .map(|v| {
                    let get = |id: u32| u64::try_from(&v[id as usize]).expect("non-negative");
                    WeightDistribution {
                        points: indets.n_ids.iter().map(|(&u, &id)| (u, get(id))).collect(),
                        planes: indets.m_ids.iter().map(|(&w, &id)| (w, get(id))).collect(),
                    }
                })
                .collect(),
        ),
    }
}

/// Substitute a weight distribution into a system's right-hand sides,
/// producing a constant system.
pub fn substitute_distribution(
    system: &SymSystem,
    dist: &WeightDistribution,
    indets: &IndetIds,
) -> SymSystem {
    let mut assignment: BTreeMap<u32, BigInt> = BTreeMap::new();
    for (u, &id) in &indets.n_ids {
        assignment.insert(id, BigInt::from(dist.points[u]));
    }
    for (w, &id) in &indets.m_ids {
        assignment.insert(id, BigInt::from(dist.planes[w]));
    }
    let names = |id: u32| system.indet_name(id);
    let mut out = system.clone();
    for row in out.rows.iter_mut() {
        let v = row
            .rhs
            .evaluate(&assignment, &names)
            .expect("distribution covers all indeterminates");
        row.rhs = SymPoly::constant(v);
    }
    out
}

/// All non-negative integer solutions of a constant-right-hand-side system,
/// under per-variable caps. Every returned vector satisfies every row
/// exactly; `Inconclusive` carries the budget report.
pub fn solve_nonneg_integers(
    system: &SymSystem,
    caps: &[u64],
    budget: &Budget,
) -> Exhaustive<Vec<u64>> {
    assert_eq!(caps.len(), system.num_vars());
    let mut eqs = Vec::with_capacity(system.rows.len());
    for row in &system.rows {
        let rhs = row.rhs.constant_value().expect("constant right-hand side");
        // scale the row to integer coefficients
        let mut lcm = rhs.denom().clone();
        for c in &row.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let coeffs: Vec<BigInt> = row
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        eqs.push((coeffs, rhs.numer() * (&lcm / rhs.denom())));
    }
    let caps: Vec<BigInt> = caps.iter().map(|&c| BigInt::from(c)).collect();
    match solve_bounded(eqs, &caps, &[], budget) {
        Exhaustive::Inconclusive(r) => Exhaustive::Inconclusive(r),
        Exhaustive::Complete(sols) => Exhaustive::Complete(
            sols.into_iter()
                .map(|v| v.iter().map(|x| u64::try_from(x).expect("bounded")).collect())
                .collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::countsys::build_system;
    use crate::exact::{rat_int, rref_symbolic, SymRow};
    use crate::patterns::weight_sets;

    fn dist(points: &[(u32, u64)], planes: &[(u32, u64)]) -> WeightDistribution {
        WeightDistribution {
            points: points.iter().copied().collect(),
            planes: planes.iter().copied().collect(),
        }
    }

    #[test]
    fn q3_x5_unique_distribution() {
        let sets = weight_sets(3, 5, 2).unwrap();
        let bundle = build_system(&sets);
        let red = rref_symbolic(&bundle.system);
        let dists = enumerate_weight_distributions(
            &bundle.identities,
            &red.zero_constraints,
            &sets,
            &bundle.indets,
            &Budget::default(),
        )
        .complete()
        .unwrap();
        assert_eq!(
            dists,
            vec![dist(&[(2, 10), (6, 15), (10, 15)], &[(3, 15), (7, 15), (11, 10)])]
        );
    }

    #[test]
    fn infeasible_cases_q4_q5() {
        for (q, x) in [(4u16, 5u32), (4, 6), (5, 5), (5, 6), (5, 8), (5, 9)] {
            for n in crate::patterns::modular_solutions(q, x) {
                let sets = weight_sets(q, x, n).unwrap();
                let bundle = build_system(&sets);
                let red = rref_symbolic(&bundle.system);
                let dists = enumerate_weight_distributions(
                    &bundle.identities,
                    &red.zero_constraints,
                    &sets,
                    &bundle.indets,
                    &Budget::default(),
                )
                .complete()
                .unwrap();
                // either no feasible weights at all, or no z-solution for any
                let mut any = false;
                for d in dists {
                    let constant = substitute_distribution(&red.reduced, &d, &bundle.indets);
                    let unit = q as u64 * q as u64 + q as u64 + 1;
                    let caps: Vec<u64> = (0..bundle.num_unknowns())
                        .map(|i| {
                            if i < bundle.patterns_in.len() {
                                x as u64 * unit
                            } else {
                                (q as u64 * q as u64 + 1 - x as u64) * unit
                            }
                        })
                        .collect();
                    let sols = solve_nonneg_integers(&constant, &caps, &Budget::default())
                        .complete()
                        .unwrap();
                    any |= !sols.is_empty();
                }
                assert!(!any, "q={q} x={x} n={n} unexpectedly feasible");
            }
        }
    }

    #[test]
    fn forced_negative_is_infeasible() {
        // z1 + z2 = 1, z1 - z2 = 3 forces z2 = -1
        let system = SymSystem {
            z_names: vec!["z1".into(), "z2".into()],
            indet_names: vec![],
            rows: vec![
                SymRow {
                    coeffs: vec![rat_int(1), rat_int(1)],
                    rhs: SymPoly::constant(rat_int(1)),
                },
                SymRow {
                    coeffs: vec![rat_int(1), rat_int(-1)],
                    rhs: SymPoly::constant(rat_int(3)),
                },
            ],
        };
        let sols = solve_nonneg_integers(&system, &[10, 10], &Budget::default())
            .complete()
            .unwrap();
        assert!(sols.is_empty());
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        // an underdetermined system with a huge box and a tiny budget
        let system = SymSystem {
            z_names: (1..=4).map(|i| format!("z{i}")).collect(),
            indet_names: vec![],
            rows: vec![SymRow {
                coeffs: vec![rat_int(1), rat_int(1), rat_int(1), rat_int(1)],
                rhs: SymPoly::constant(rat_int(600)),
            }],
        };
        let out = solve_nonneg_integers(
            &system,
            &[600, 600, 600, 600],
            &Budget { max_nodes: 50, max_secs: None },
        );
        match out {
            Exhaustive::Inconclusive(report) => {
                assert!(report.nodes_used >= 50);
                assert_eq!(report.max_nodes, 50);
            }
            Exhaustive::Complete(_) => panic!("expected budget exhaustion"),
        }
    }

    /// Solver equality with boxed brute force on random small systems.
    #[test]
    fn random_systems_match_brute_force() {
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..60 {
            let nvars = 4usize;
            let neqs = 2 + (next() % 2) as usize;
            let eqs: Vec<(Vec<i64>, i64)> = (0..neqs)
                .map(|_| {
                    let coeffs: Vec<i64> =
                        (0..nvars).map(|_| (next() % 9) as i64 - 4).collect();
                    let rhs = (next() % 30) as i64;
                    (coeffs, rhs)
                })
                .collect();
            let cap = 12u64;
            let mut brute = Vec::new();
            for code in 0..(cap + 1).pow(nvars as u32) {
                let mut v = Vec::with_capacity(nvars);
                let mut c = code;
                for _ in 0..nvars {
                    v.push(c % (cap + 1));
                    c /= cap + 1;
                }
                v.reverse();
                if eqs.iter().all(|(cs, rhs)| {
                    cs.iter().zip(&v).map(|(a, &x)| a * x as i64).sum::<i64>() == *rhs
                }) {
                    brute.push(v);
                }
            }
            brute.sort();
            let system = SymSystem {
                z_names: (0..nvars).map(|i| format!("z{i}")).collect(),
                indet_names: vec![],
                rows: eqs
                    .iter()
                    .map(|(cs, rhs)| SymRow {
                        coeffs: cs.iter().map(|&c| rat_int(c)).collect(),
                        rhs: SymPoly::constant(rat_int(*rhs)),
                    })
                    .collect(),
            };
            let sols = solve_nonneg_integers(&system, &[cap; 4], &Budget::default())
                .complete()
                .unwrap();
            assert_eq!(sols, brute, "trial {trial} eqs {eqs:?}");
        }
    }
}
