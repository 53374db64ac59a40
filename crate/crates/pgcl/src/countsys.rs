//! The global counting identities and the full linear system over the
//! per-pattern line counts z_i.
//!
//! With patterns T_1..T_{k1} for class lines (index set I1) and
//! T_{k1+1}..T_{k1+k0} for complement lines (I0), z_i counts the lines with
//! pattern T_i. Writing c_{i,w} / r_{i,u} for the number of columns / rows
//! of T_i summing to w - chi(i) / u - chi(i), the emitted equations are, per
//! instantiation:
//!
//! * totals over I1 and I0 (one row each);
//! * per weight w in M (and dually u in N): the all-pattern column count
//!   against (q^2+q+1) m_w, and the I1-only count against w m_w;
//! * per weight: the ordered same-weight plane pair count against
//!   m_w (m_w - 1);
//! * per unordered weight pair w < w': the mixed pair count against
//!   m_w m_{w'};
//! * per (w, u) in M x N: the pencil balance
//!   (q+1-k) sum_{I1} c_{i,w} r_{i,u} z_i = k sum_{I0} c_{j,w} r_{j,u} z_j
//!   with k = (w + u - x)/(q + 1).
//!
//! This is the maximal instantiation; rows that are identically zero (all
//! z-coefficients and the right-hand side) are dropped before reduction.
//! Degenerate pencil rows (k = 0 or k = q+1) are emitted, not skipped, and
//! pairs (w, u) whose pencil count k falls outside [0, q+1] still yield
//! valid rows: no flag of those weights can exist, and the row forces the
//! two sums to vanish. Reported equation counts depend on this convention
//! and are informational only; solution sets are what downstream stages
//! consume.

use crate::exact::{rat_int, Monomial, Rat, SymPoly, SymRow, SymSystem};
use crate::patterns::{generate_both, sum_profile, Membership, Pattern, SumProfile, WeightSets};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// Right-hand sides of the three weight-count identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountingIdentities {
    pub q: u16,
    pub x: u32,
    /// Number of points (equivalently planes): q^3 + q^2 + q + 1.
    pub total: u64,
    /// Weighted sum target: x (q^2+q+1) (q+1).
    pub flag_total: u64,
    /// Second-moment target: x (q^2+q+1) ((q+1) x + q^2 - 1).
    pub pair_total: u64,
}

pub fn counting_identities(q: u16, x: u32) -> CountingIdentities {
    let (qq, xx) = (q as u64, x as u64);
    let unit = qq * qq + qq + 1;
    CountingIdentities {
        q,
        x,
        total: qq * qq * qq + qq * qq + qq + 1,
        flag_total: xx * unit * (qq + 1),
        pair_total: xx * unit * ((qq + 1) * xx + qq * qq - 1),
    }
}

/// Indeterminate ids: n_u for u in N (ascending) first, then m_w for w in M.
#[derive(Clone, Debug, Default)]
pub struct IndetIds {
    pub n_ids: BTreeMap<u32, u32>,
    pub m_ids: BTreeMap<u32, u32>,
}

impl IndetIds {
    pub fn names(&self) -> Vec<String> {
        let mut v = vec![String::new(); self.n_ids.len() + self.m_ids.len()];
        for (u, &id) in &self.n_ids {
            v[id as usize] = format!("n{u}");
        }
        for (w, &id) in &self.m_ids {
            v[id as usize] = format!("m{w}");
        }
        v
    }
}

/// The generated patterns, their sum profiles, and the assembled system for
/// one (q, x, weight-set) case.
pub struct SystemBundle {
    pub sets: WeightSets,
    pub identities: CountingIdentities,
    pub patterns_in: Vec<Pattern>,
    pub patterns_out: Vec<Pattern>,
    /// Profiles aligned with `patterns_in` followed by `patterns_out`.
    pub profiles: Vec<SumProfile>,
    pub indets: IndetIds,
    pub system: SymSystem,
    /// One tag per system row, e.g. "Eq10 w=9 u=13".
    pub row_tags: Vec<String>,
}

impl SystemBundle {
    pub fn num_unknowns(&self) -> usize {
        self.patterns_in.len() + self.patterns_out.len()
    }

    pub fn membership(&self, i: usize) -> Membership {
        if i < self.patterns_in.len() {
            Membership::In
        } else {
            Membership::Out
        }
    }

    pub fn pattern(&self, i: usize) -> &Pattern {
        if i < self.patterns_in.len() {
            &self.patterns_in[i]
        } else {
            &self.patterns_out[i - self.patterns_in.len()]
        }
    }
}

/// Map externally numbered pattern matrices (class-line matrices first, then
/// complement ones) to z-indices of the bundle, via canonical form. Returns
/// None when a matrix is not among the generated patterns.
pub fn locate_patterns(
    bundle: &SystemBundle,
    mats_in: &[Vec<Vec<u8>>],
    mats_out: &[Vec<Vec<u8>>],
) -> Option<Vec<usize>> {
    let (q, x) = (bundle.sets.q, bundle.sets.x);
    let mut map = Vec::with_capacity(mats_in.len() + mats_out.len());
    for m in mats_in {
        let key = Pattern::from_matrix(q, x, Membership::In, m).key();
        map.push(bundle.patterns_in.iter().position(|p| p.key() == key)?);
    }
    for m in mats_out {
        let key = Pattern::from_matrix(q, x, Membership::Out, m).key();
        let pos = bundle.patterns_out.iter().position(|p| p.key() == key)?;
        map.push(bundle.patterns_in.len() + pos);
    }
    Some(map)
}

pub fn build_system(sets: &WeightSets) -> SystemBundle {
    let (q, x) = (sets.q, sets.x);
    let (patterns_in, patterns_out) = generate_both(q, x, sets);
    build_system_from_patterns(sets, patterns_in, patterns_out)
}

pub fn build_system_from_patterns(
    sets: &WeightSets,
    patterns_in: Vec<Pattern>,
    patterns_out: Vec<Pattern>,
) -> SystemBundle {
    let (q, x) = (sets.q, sets.x);
    let identities = counting_identities(q, x);
    let k1 = patterns_in.len();
    let k = k1 + patterns_out.len();
    let profiles: Vec<SumProfile> = patterns_in
        .iter()
        .chain(&patterns_out)
        .map(|p| sum_profile(p, sets).expect("generated pattern sums lie in the weight sets"))
        .collect();

    let mut indets = IndetIds::default();
    for &u in &sets.point_weights {
        let id = indets.n_ids.len() as u32;
        indets.n_ids.insert(u, id);
    }
    for &w in &sets.plane_weights {
        let id = (indets.n_ids.len() + indets.m_ids.len()) as u32;
        indets.m_ids.insert(w, id);
    }

    let unit = (q as u64) * (q as u64) + q as u64 + 1;
    let mut rows: Vec<SymRow> = Vec::new();
    let mut tags: Vec<String> = Vec::new();
    let mut push = |coeffs: Vec<Rat>, rhs: SymPoly, tag: String| {
        if coeffs.iter().all(Rat::is_zero) && rhs.is_zero() {
            return;
        }
        rows.push(SymRow { coeffs, rhs });
        tags.push(tag);
    };

    // totals
    let mut c_in = vec![Rat::zero(); k];
    for c in c_in.iter_mut().take(k1) {
        *c = rat_int(1);
    }
    push(
        c_in,
        SymPoly::constant(rat_int((x as u64 * unit) as i64)),
        "Eq5(in)".into(),
    );
    let mut c_out = vec![Rat::zero(); k];
    for c in c_out.iter_mut().skip(k1) {
        *c = rat_int(1);
    }
    let out_total = ((q as u64 * q as u64 + 1) - x as u64) * unit;
    push(c_out, SymPoly::constant(rat_int(out_total as i64)), "Eq5(out)".into());

    // per-weight counts: planes via columns, points via rows
    enum Side {
        Planes,
        Points,
    }
    for side in [Side::Planes, Side::Points] {
        let (weights, label) = match side {
            Side::Planes => (&sets.plane_weights, "w"),
            Side::Points => (&sets.point_weights, "u"),
        };
        let count_of = |i: usize, w: u32| -> u64 {
            match side {
                Side::Planes => profiles[i].col_count(w) as u64,
                Side::Points => profiles[i].row_count(w) as u64,
            }
        };
        let indet_of = |w: u32| -> u32 {
            match side {
                Side::Planes => indets.m_ids[&w],
                Side::Points => indets.n_ids[&w],
            }
        };
        for &w in weights {
            // all lines in a weight-w object
            let coeffs: Vec<Rat> = (0..k).map(|i| rat_int(count_of(i, w) as i64)).collect();
            push(
                coeffs,
                SymPoly::linear(indet_of(w), rat_int(unit as i64)),
                format!("Eq6 {label}={w}"),
            );
            // class lines only
            let coeffs: Vec<Rat> = (0..k)
                .map(|i| {
                    if i < k1 {
                        rat_int(count_of(i, w) as i64)
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            push(
                coeffs,
                SymPoly::linear(indet_of(w), rat_int(w as i64)),
                format!("Eq7 {label}={w}"),
            );
            // ordered pairs of distinct weight-w objects
            let coeffs: Vec<Rat> = (0..k)
                .map(|i| {
                    let c = count_of(i, w) as i64;
                    rat_int(c * (c - 1))
                })
                .collect();
            let mut rhs = SymPoly::quadratic(indet_of(w), indet_of(w), rat_int(1));
            rhs.add_term(Monomial::Lin(indet_of(w)), rat_int(-1));
            push(coeffs, rhs, format!("Eq8 {label}={w}"));
        }
        // pairs of distinct weights
        for (a, &w) in weights.iter().enumerate() {
            for &w2 in weights.iter().skip(a + 1) {
                let coeffs: Vec<Rat> = (0..k)
                    .map(|i| rat_int((count_of(i, w) * count_of(i, w2)) as i64))
                    .collect();
                let rhs = SymPoly::quadratic(indet_of(w), indet_of(w2), rat_int(1));
                push(coeffs, rhs, format!("Eq9 {label}={w},{w2}"));
            }
        }
    }

    // pencil balance per (plane weight, point weight)
    for &w in &sets.plane_weights {
        for &u in &sets.point_weights {
            let num = w as i64 + u as i64 - x as i64;
            assert_eq!(
                num.rem_euclid(q as i64 + 1),
                0,
                "weight sets malformed: {w}+{u}-{x} not divisible by q+1"
            );
            let pk = num / (q as i64 + 1);
            let lhs_factor = q as i64 + 1 - pk;
            let coeffs: Vec<Rat> = (0..k)
                .map(|i| {
                    let cr = (profiles[i].col_count(w) * profiles[i].row_count(u)) as i64;
                    if i < k1 {
                        rat_int(lhs_factor * cr)
                    } else {
                        rat_int(-pk * cr)
                    }
                })
                .collect();
            push(coeffs, SymPoly::zero(), format!("Eq10 w={w} u={u}"));
        }
    }

    let system = SymSystem {
        z_names: (1..=k).map(|i| format!("z{i}")).collect(),
        indet_names: indets.names(),
        rows,
    };
    SystemBundle {
        sets: sets.clone(),
        identities,
        patterns_in,
        patterns_out,
        profiles,
        indets,
        system,
        row_tags: tags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rref_symbolic, solve_constant, ConstSolution};
    use crate::patterns::weight_sets;

    #[test]
    fn identity_targets() {
        let c = counting_identities(3, 5);
        assert_eq!((c.total, c.flag_total, c.pair_total), (40, 260, 1820));
        let c = counting_identities(5, 0);
        assert_eq!((c.total, c.flag_total, c.pair_total), (156, 0, 0));
        let c = counting_identities(5, 12);
        assert_eq!(c.total, 156);
        assert_eq!(c.flag_total, 2232);
        // 12 * 31 * (6*12 + 24) = 372 * 96
        assert_eq!(c.pair_total, 35712);
    }

    #[test]
    fn q3_x5_system_reduces_to_known_solution() {
        let sets = weight_sets(3, 5, 2).unwrap();
        let bundle = build_system(&sets);
        assert_eq!(bundle.num_unknowns(), 4);
        assert_eq!(bundle.system.rows.len(), 33);
        let red = rref_symbolic(&bundle.system);
        assert_eq!(red.rank, 4);
        assert_eq!(red.zero_constraints.len(), 18);
        // with the unique weight distribution substituted the system is
        // constant and already solved by the pivot rows
        let mut constant = bundle.system.clone();
        let mut asn = std::collections::BTreeMap::new();
        for (u, dist) in sets.point_weights.iter().zip([10i64, 15, 15]) {
            asn.insert(bundle.indets.n_ids[u], num_bigint::BigInt::from(dist));
        }
        for (w, dist) in sets.plane_weights.iter().zip([15i64, 15, 10]) {
            asn.insert(bundle.indets.m_ids[w], num_bigint::BigInt::from(dist));
        }
        let names = |id: u32| bundle.system.indet_name(id);
        for row in constant.rows.iter_mut() {
            let v = row.rhs.evaluate(&asn, &names).unwrap();
            row.rhs = SymPoly::constant(v);
        }
        match solve_constant(&constant) {
            ConstSolution::Unique(z) => {
                let z: Vec<i64> = z
                    .iter()
                    .map(|r| {
                        assert!(num_traits::One::is_one(r.denom()));
                        i64::try_from(r.numer().clone()).unwrap()
                    })
                    .collect();
                // compare in the reference T-numbering
                let mats_in: Vec<Vec<Vec<u8>>> = crate::tables::Q3_X5_PATTERNS_IN
                    .iter()
                    .map(|m| m.iter().map(|r| r.to_vec()).collect())
                    .collect();
                let mats_out: Vec<Vec<Vec<u8>>> = crate::tables::Q3_X5_PATTERNS_OUT
                    .iter()
                    .map(|m| m.iter().map(|r| r.to_vec()).collect())
                    .collect();
                let map = locate_patterns(&bundle, &mats_in, &mats_out).unwrap();
                let in_reference_order: Vec<i64> = map.iter().map(|&i| z[i]).collect();
                assert_eq!(in_reference_order, vec![20, 45, 20, 45]);
            }
            other => panic!("expected unique solution, got {other:?}"),
        }
    }

    #[test]
    fn zero_constraint_shapes_q3() {
        let sets = weight_sets(3, 5, 2).unwrap();
        let bundle = build_system(&sets);
        let red = rref_symbolic(&bundle.system);
        assert_eq!(red.zero_constraints.len(), 18);
        // every zero constraint has shape "y + C" or "y y' + C": exactly one
        // non-constant monomial, linear or quadratic
        for zc in &red.zero_constraints {
            let non_const: Vec<_> = zc
                .terms()
                .filter(|(m, _)| !matches!(m, crate::exact::Monomial::One))
                .collect();
            assert_eq!(non_const.len(), 1, "{:?}", zc);
        }
    }

    #[test]
    fn known_ranks() {
        for (q, x, n, rank, k) in [
            (4u16, 7u32, 1u32, 11usize, 11usize),
            (5, 10, 1, 16, 16),
            (5, 12, 0, 16, 16),
            (5, 13, 0, 20, 20),
            (5, 13, 3, 20, 20),
        ] {
            let sets = weight_sets(q, x, n).unwrap();
            let bundle = build_system(&sets);
            assert_eq!(bundle.num_unknowns(), k, "unknowns for q={q} x={x}");
            let red = rref_symbolic(&bundle.system);
            assert_eq!(red.rank, rank, "rank for q={q} x={x}");
        }
    }

    #[test]
    fn pattern_counts_for_small_cases() {
        for (q, x, n, c_in, c_out) in [
            (3u16, 5u32, 2u32, 2usize, 2usize),
            (4, 7, 1, 7, 4),
            (5, 10, 1, 10, 6),
            (5, 12, 0, 8, 8),
            (5, 13, 0, 10, 10),
            (5, 13, 3, 10, 10),
        ] {
            let sets = weight_sets(q, x, n).unwrap();
            let bundle = build_system(&sets);
            assert_eq!(bundle.patterns_in.len(), c_in, "q={q} x={x} in");
            assert_eq!(bundle.patterns_out.len(), c_out, "q={q} x={x} out");
        }
    }
}
