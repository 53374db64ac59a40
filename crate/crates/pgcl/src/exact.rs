//! Exact rational arithmetic, degree-<=2 polynomials in the weight-count
//! indeterminates, and row reduction of linear systems whose right-hand
//! sides are such polynomials.
//!
//! The systems reduced here are linear in the per-pattern unknowns `z_i`,
//! while the right-hand sides stay symbolic in the point/plane weight counts
//! (`n_u`, `m_w`). Reducing with the coefficients over Q and carrying the
//! polynomial right-hand sides along yields, besides the pivot rows, the
//! "zero equations": rows whose z-coefficients vanished but whose right-hand
//! side did not. Those polynomials must all be zero for the system to be
//! consistent, and they are the extra constraints fed to the weight-
//! distribution enumeration.
//!
//! Everything is arbitrary precision; intermediate eliminations overflow 64
//! bits already for moderate systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_big(v: BigInt) -> Rat {
    Rat::from_integer(v)
}

/// Render as "num/den" (always with the denominator, as used in the JSON
/// serialization of systems).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_string(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("assignment is missing indeterminate `{0}`")]
    MissingIndeterminate(String),
}

/// Monomial of total degree at most 2 over indeterminate ids.
/// Quadratic ids are stored sorted, so equality is multiset equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    One,
    Lin(u32),
    Quad(u32, u32),
}

impl Monomial {
    pub fn quad(a: u32, b: u32) -> Monomial {
        if a <= b {
            Monomial::Quad(a, b)
        } else {
            Monomial::Quad(b, a)
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Monomial::One => 0,
            Monomial::Lin(_) => 1,
            Monomial::Quad(_, _) => 2,
        }
    }
}

/// Polynomial of total degree <= 2 with rational coefficients. No zero
/// coefficients are stored and the term map itself is the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl SymPoly {
    pub fn zero() -> SymPoly {
        SymPoly::default()
    }

    pub fn constant(c: Rat) -> SymPoly {
        let mut p = SymPoly::zero();
        p.add_term(Monomial::One, c);
        p
    }

    pub fn linear(id: u32, c: Rat) -> SymPoly {
        let mut p = SymPoly::zero();
        p.add_term(Monomial::Lin(id), c);
        p
    }

    pub fn quadratic(a: u32, b: u32, c: Rat) -> SymPoly {
        let mut p = SymPoly::zero();
        p.add_term(Monomial::quad(a, b), c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn indeterminates(&self) -> BTreeSet<u32> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            match *m {
                Monomial::One => {}
                Monomial::Lin(a) => {
                    s.insert(a);
                }
                Monomial::Quad(a, b) => {
                    s.insert(a);
                    s.insert(b);
                }
            }
        }
        s
    }

    pub fn add_assign(&mut self, other: &SymPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub_scaled(&mut self, other: &SymPoly, factor: &Rat) {
        for (m, c) in &other.terms {
            self.add_term(*m, -(c * factor));
        }
    }

    pub fn scale(&mut self, factor: &Rat) {
        if factor.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= factor;
        }
    }

    /// Exact evaluation under an integer assignment of the indeterminates.
    pub fn evaluate(
        &self,
        assignment: &BTreeMap<u32, BigInt>,
        names: &dyn Fn(u32) -> String,
    ) -> Result<Rat, ExactError> {
        let get = |id: u32| -> Result<BigInt, ExactError> {
            assignment
                .get(&id)
                .cloned()
                .ok_or_else(|| ExactError::MissingIndeterminate(names(id)))
        };
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let factor = match *m {
                Monomial::One => BigInt::one(),
                Monomial::Lin(a) => get(a)?,
                Monomial::Quad(a, b) => get(a)? * get(b)?,
            };
            acc += c * rat_big(factor);
        }
        Ok(acc)
    }

    /// Content-and-sign normalization: scale so that all coefficients are
    /// coprime integers and the leading (highest monomial) coefficient is
    /// positive. Used to deduplicate zero constraints.
    pub fn normalized(&self) -> SymPoly {
        if self.is_zero() {
            return SymPoly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut factor = Rat::new(den_lcm, num_gcd);
        let lead = self.terms.iter().next_back().expect("nonzero poly");
        if (lead.1 * &factor).is_negative() {
            factor = -factor;
        }
        let mut out = self.clone();
        out.scale(&factor);
        out
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.degree() == 0 {
            return self.terms.get(&Monomial::One).cloned();
        }
        None
    }

    /// Human-readable rendering using the supplied indeterminate names.
    pub fn render(&self, names: &dyn Fn(u32) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // highest-degree terms first reads better in reports
        for (m, c) in self.terms.iter().rev() {
            let mono = match *m {
                Monomial::One => String::new(),
                Monomial::Lin(a) => names(a),
                Monomial::Quad(a, b) if a == b => format!("{}^2", names(a)),
                Monomial::Quad(a, b) => format!("{}*{}", names(a), names(b)),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            let coeff = if abs.is_one() && !mono.is_empty() {
                String::new()
            } else if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            match (coeff.is_empty(), mono.is_empty()) {
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&coeff),
                (false, false) => out.push_str(&format!("{coeff}*{mono}")),
                (true, true) => out.push('1'),
            }
        }
        out
    }
}

/// One equation: `coeffs . z = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymRow {
    pub coeffs: Vec<Rat>,
    pub rhs: SymPoly,
}

/// Linear system in the z-variables with polynomial right-hand sides.
#[derive(Clone, Debug, Default)]
pub struct SymSystem {
    pub z_names: Vec<String>,
    pub indet_names: Vec<String>,
    pub rows: Vec<SymRow>,
}

impl SymSystem {
    pub fn num_vars(&self) -> usize {
        self.z_names.len()
    }

    pub fn indet_name(&self, id: u32) -> String {
        self.indet_names
            .get(id as usize)
            .cloned()
            .unwrap_or_else(|| format!("t{id}"))
    }

    /// JSON document: {"vars":[...], "indets":[...], "rows":[{"coeffs":
    /// ["p/q",...], "rhs":[{"mono":["n2","n6"],"coef":"-1/1"},...]}]}
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let coeffs: Vec<Value> =
                    row.coeffs.iter().map(|c| json!(rat_to_string(c))).collect();
                let rhs: Vec<Value> = row
                    .rhs
                    .terms()
                    .map(|(m, c)| {
                        let mono: Vec<String> = match *m {
                            Monomial::One => vec![],
                            Monomial::Lin(a) => vec![self.indet_name(a)],
                            Monomial::Quad(a, b) => {
                                vec![self.indet_name(a), self.indet_name(b)]
                            }
                        };
                        json!({"mono": mono, "coef": rat_to_string(c)})
                    })
                    .collect();
                json!({"coeffs": coeffs, "rhs": rhs})
            })
            .collect();
        json!({"vars": self.z_names, "indets": self.indet_names, "rows": rows})
    }
}

/// Result of the symbolic row reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Row-reduced echelon form: pivot columns strictly increasing, pivots 1,
    /// pivot columns eliminated from every other row.
    pub reduced: SymSystem,
    pub rank: usize,
    /// Pivot column of each reduced row.
    pub pivot_cols: Vec<usize>,
    /// Normalized, deduplicated right-hand sides of rows whose z-coefficients
    /// vanished under elimination ("0 = p(n, m)" constraints).
    pub zero_constraints: Vec<SymPoly>,
}

/// Gaussian elimination over Q with the right-hand sides carried along as
/// polynomials. Pivot selection is the first row with a nonzero entry in
/// variable order, so the output is deterministic in the input row order;
/// the reduced rows themselves are independent of it.
pub fn rref_symbolic(system: &SymSystem) -> Reduction {
    let ncols = system.num_vars();
    let mut rows: Vec<SymRow> = system.rows.clone();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut processed = 0usize;
    for col in 0..ncols {
        let Some(r) = (processed..rows.len()).find(|&r| !rows[r].coeffs[col].is_zero()) else {
            continue;
        };
        rows.swap(processed, r);
        let inv = rows[processed].coeffs[col].clone().recip();
        for c in rows[processed].coeffs.iter_mut() {
            *c *= &inv;
        }
        rows[processed].rhs.scale(&inv);
        let pivot_row = rows[processed].clone();
        for (rr, row) in rows.iter_mut().enumerate() {
            if rr == processed || row.coeffs[col].is_zero() {
                continue;
            }
            let factor = row.coeffs[col].clone();
            for (c, pc) in row.coeffs.iter_mut().zip(&pivot_row.coeffs) {
                *c -= &factor * pc;
            }
            row.rhs.sub_scaled(&pivot_row.rhs, &factor);
        }
        pivot_cols.push(col);
        processed += 1;
    }
    let leftovers: Vec<SymPoly> = rows
        .iter()
        .skip(processed)
        .map(|row| {
            debug_assert!(row.coeffs.iter().all(Rat::is_zero));
            row.rhs.clone()
        })
        .filter(|p| !p.is_zero())
        .collect();
    let reduced = SymSystem {
        z_names: system.z_names.clone(),
        indet_names: system.indet_names.clone(),
        rows: rows.into_iter().take(processed).collect(),
    };
    Reduction {
        rank: processed,
        reduced,
        pivot_cols,
        zero_constraints: reduce_poly_span(leftovers),
    }
}

/// Canonical basis of the linear span of a set of polynomials: row reduction
/// over the monomial basis (highest monomials pivot first), then content and
/// sign normalization. The result depends only on the span, not on the
/// elimination path that produced the inputs, which is what makes zero
/// constraint counts stable and deduplication exact.
pub fn reduce_poly_span(polys: Vec<SymPoly>) -> Vec<SymPoly> {
    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for p in &polys {
        for (m, _) in p.terms() {
            monos.insert(*m);
        }
    }
    // highest-degree monomials first
    let cols: Vec<Monomial> = monos.into_iter().rev().collect();
    let col_of: BTreeMap<Monomial, usize> =
        cols.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut mat: Vec<Vec<Rat>> = polys
        .iter()
        .map(|p| {
            let mut v = vec![Rat::zero(); cols.len()];
            for (m, c) in p.terms() {
                v[col_of[m]] = c.clone();
            }
            v
        })
        .collect();
    let mut processed = 0usize;
    for col in 0..cols.len() {
        let Some(r) = (processed..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(processed, r);
        let inv = mat[processed][col].clone().recip();
        for v in mat[processed].iter_mut() {
            *v *= &inv;
        }
        let pivot = mat[processed].clone();
        for (rr, row) in mat.iter_mut().enumerate() {
            if rr == processed || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (a, b) in row.iter_mut().zip(&pivot) {
                *a -= &factor * b;
            }
        }
        processed += 1;
        if processed == mat.len() {
            break;
        }
    }
    let mut out: Vec<SymPoly> = mat
        .into_iter()
        .take(processed)
        .map(|v| {
            let mut p = SymPoly::zero();
            for (i, c) in v.into_iter().enumerate() {
                p.add_term(cols[i], c);
            }
            p.normalized()
        })
        .collect();
    out.sort();
    out
}

/// Exact solution set of a linear system with constant right-hand sides.
#[derive(Clone, Debug, PartialEq)]
pub enum ConstSolution {
    Inconsistent,
    Unique(Vec<Rat>),
    Affine { particular: Vec<Rat>, basis: Vec<Vec<Rat>> },
}

pub fn solve_constant(system: &SymSystem) -> ConstSolution {
    debug_assert!(system.rows.iter().all(|r| r.rhs.degree() == 0));
    let red = rref_symbolic(system);
    if !red.zero_constraints.is_empty() {
        return ConstSolution::Inconsistent;
    }
    let n = system.num_vars();
    let mut particular = vec![Rat::zero(); n];
    for (row, &pc) in red.reduced.rows.iter().zip(&red.pivot_cols) {
        particular[pc] = row.rhs.constant_value().expect("constant rhs");
    }
    let free: Vec<usize> = (0..n).filter(|c| !red.pivot_cols.contains(c)).collect();
    if free.is_empty() {
        return ConstSolution::Unique(particular);
    }
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (row, &pc) in red.reduced.rows.iter().zip(&red.pivot_cols) {
            v[pc] = -row.coeffs[f].clone();
        }
        // sign convention: first nonzero entry positive
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        basis.push(v);
    }
    ConstSolution::Affine { particular, basis }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(nvars: usize, rows: Vec<(Vec<i64>, i64)>) -> SymSystem {
        SymSystem {
            z_names: (1..=nvars).map(|i| format!("z{i}")).collect(),
            indet_names: vec![],
            rows: rows
                .into_iter()
                .map(|(cs, rhs)| SymRow {
                    coeffs: cs.into_iter().map(rat_int).collect(),
                    rhs: SymPoly::constant(rat_int(rhs)),
                })
                .collect(),
        }
    }

    #[test]
    fn single_pivot() {
        let s = sys(1, vec![(vec![2], 10)]);
        let red = rref_symbolic(&s);
        assert_eq!(red.rank, 1);
        assert!(red.zero_constraints.is_empty());
        assert_eq!(red.reduced.rows[0].coeffs[0], rat_int(1));
        assert_eq!(red.reduced.rows[0].rhs.constant_value().unwrap(), rat_int(5));
        assert_eq!(solve_constant(&s), ConstSolution::Unique(vec![rat_int(5)]));
    }

    #[test]
    fn inconsistent_rows() {
        let s = sys(2, vec![(vec![1, 1], 1), (vec![1, 1], 2)]);
        assert_eq!(solve_constant(&s), ConstSolution::Inconsistent);
    }

    #[test]
    fn one_free_variable() {
        let s = sys(2, vec![(vec![1, 1], 3)]);
        match solve_constant(&s) {
            ConstSolution::Affine { particular, basis } => {
                assert_eq!(particular, vec![rat_int(3), rat_int(0)]);
                assert_eq!(basis, vec![vec![rat_int(1), rat_int(-1)]]);
            }
            other => panic!("unexpected solution {other:?}"),
        }
    }

    #[test]
    fn rref_row_permutation_invariant() {
        let rows = vec![
            (vec![1, 2, 1], 4),
            (vec![2, 4, 3], 9),
            (vec![0, 1, 1], 3),
            (vec![3, 7, 5], 16),
        ];
        let base = rref_symbolic(&sys(3, rows.clone()));
        // a couple of fixed permutations
        for perm in [[3usize, 1, 0, 2], [2, 3, 1, 0], [1, 0, 3, 2]] {
            let permuted: Vec<_> = perm.iter().map(|&i| rows[i].clone()).collect();
            let red = rref_symbolic(&sys(3, permuted));
            assert_eq!(red.rank, base.rank);
            let rows_a: BTreeSet<String> = base
                .reduced
                .rows
                .iter()
                .map(|r| format!("{:?}", r))
                .collect();
            let rows_b: BTreeSet<String> =
                red.reduced.rows.iter().map(|r| format!("{:?}", r)).collect();
            assert_eq!(rows_a, rows_b);
            assert_eq!(red.zero_constraints, base.zero_constraints);
        }
    }

    #[test]
    fn zero_constraint_extraction_and_normalization() {
        // z1 + z2 = n0,  z1 + z2 = 5  ->  0 = n0 - 5
        let mut s = sys(2, vec![(vec![1, 1], 5)]);
        let mut rhs = SymPoly::linear(0, rat_int(3));
        rhs.add_term(Monomial::One, rat_int(0));
        s.indet_names = vec!["n0".into()];
        s.rows.push(SymRow { coeffs: vec![rat_int(3), rat_int(3)], rhs });
        let red = rref_symbolic(&s);
        assert_eq!(red.rank, 1);
        assert_eq!(red.zero_constraints.len(), 1);
        let zc = &red.zero_constraints[0];
        // normalized: n0 - 5 (leading coefficient positive, content 1)
        let rendered = zc.render(&|_| "n0".to_string());
        assert_eq!(rendered, "n0 - 5");
    }

    #[test]
    fn resubstitution_of_original_rows() {
        // every original row must be a combination of reduced rows: check by
        // eliminating the original rows against the reduced ones
        let rows = vec![
            (vec![1, 2, 0, 1], 7),
            (vec![0, 1, 1, 0], 3),
            (vec![1, 3, 1, 1], 10),
            (vec![2, 4, 0, 2], 14),
        ];
        let s = sys(4, rows);
        let red = rref_symbolic(&s);
        for row in &s.rows {
            let mut work = row.clone();
            for (prow, &pc) in red.reduced.rows.iter().zip(&red.pivot_cols) {
                let factor = work.coeffs[pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for (c, p) in work.coeffs.iter_mut().zip(&prow.coeffs) {
                    *c -= &factor * p;
                }
                work.rhs.sub_scaled(&prow.rhs, &factor);
            }
            assert!(work.coeffs.iter().all(Rat::is_zero));
            // remaining rhs must lie in the span of the zero constraints
            if !work.rhs.is_zero() {
                let mut extended = red.zero_constraints.clone();
                extended.push(work.rhs.clone());
                assert_eq!(reduce_poly_span(extended).len(), red.zero_constraints.len());
            }
        }
    }

    #[test]
    fn evaluate_polys() {
        let names = |id: u32| ["n2", "n6", "m3"][id as usize].to_string();
        let mut p = SymPoly::quadratic(0, 1, rat_int(1));
        p.add_term(Monomial::One, rat_int(-150));
        let mut asn = BTreeMap::new();
        asn.insert(0u32, BigInt::from(10));
        asn.insert(1u32, BigInt::from(15));
        assert_eq!(p.evaluate(&asn, &names).unwrap(), rat_int(0));
        assert_eq!(SymPoly::zero().evaluate(&asn, &names).unwrap(), rat_int(0));
        let q = SymPoly::linear(2, rat_int(1));
        assert_eq!(
            q.evaluate(&asn, &names).unwrap_err(),
            ExactError::MissingIndeterminate("m3".into())
        );
    }

    #[test]
    fn json_round_shape() {
        let mut s = sys(2, vec![(vec![1, -1], 0)]);
        s.indet_names = vec!["n2".into(), "n6".into()];
        s.rows[0].rhs = SymPoly::quadratic(0, 1, rat_int(-1));
        let v = s.to_json();
        assert_eq!(v["vars"][0], "z1");
        assert_eq!(v["rows"][0]["coeffs"][1], "-1/1");
        assert_eq!(v["rows"][0]["rhs"][0]["mono"][0], "n2");
        assert_eq!(v["rows"][0]["rhs"][0]["coef"], "-1/1");
    }

    #[test]
    fn rational_string_round_trip() {
        let r = Rat::new(BigInt::from(-3), BigInt::from(6));
        assert_eq!(rat_to_string(&r), "-1/2");
        assert_eq!(rat_from_string("-1/2").unwrap(), r);
        assert_eq!(rat_from_string("7").unwrap(), rat_int(7));
        assert!(rat_from_string("1/0").is_none());
    }
}
