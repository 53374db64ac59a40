//! The quotient-plane point-set search: does PG(2,5) contain a 12-point set
//! B such that around every point the counts of B-points on its pencil
//! lines (excluding the point itself) form one of the prescribed rows —
//! with exactly one selected point carrying the distinguished row?
//!
//! The rows come from the weight-12 rows of the patterns that can occur in
//! a given pattern-count solution; the distinguished row belongs to the
//! pattern with forced count one.

use super::planecfg::{enumerate_configs, SearchSpace};
use crate::projgeom::Geometry;

#[derive(Clone, Debug)]
pub struct QuotientConstraint {
    pub target: usize,
    /// Sorted allowed rows for selected points.
    pub selected_rows: Vec<Vec<u8>>,
    /// Sorted allowed rows for unselected points.
    pub unselected_rows: Vec<Vec<u8>>,
    /// Row (from `selected_rows`) required to occur exactly once.
    pub unique_row: Option<Vec<u8>>,
}

/// All admissible point sets, as masks over the plane's points.
pub fn search_quotient_bsets(g2: &Geometry, constraint: &QuotientConstraint) -> Vec<u32> {
    assert_eq!(g2.n, 2);
    let space = SearchSpace::points_of(g2);
    let all = enumerate_configs(
        &space,
        constraint.target,
        &constraint.selected_rows,
        &constraint.unselected_rows,
    );
    match &constraint.unique_row {
        None => all,
        Some(unique) => {
            let mut unique_sorted = unique.clone();
            unique_sorted.sort_unstable();
            all.into_iter()
                .filter(|&mask| {
                    let mut count = 0;
                    for p in 0..space.n_items {
                        if mask >> p & 1 == 0 {
                            continue;
                        }
                        let mut row: Vec<u8> = space.item_blocks[p]
                            .iter()
                            .map(|&l| {
                                let c = space.block_items[l]
                                    .iter()
                                    .filter(|&&e| mask >> e & 1 == 1)
                                    .count() as u8;
                                c - 1
                            })
                            .collect();
                        row.sort_unstable();
                        if row == unique_sorted {
                            count += 1;
                        }
                    }
                    count == 1
                })
                .collect()
        }
    }
}


/// Build the constraint for one pattern-count solution: the weight-12 rows
/// of the patterns with a positive count, split by membership, plus the
/// distinguished row of the unique count-one class-line pattern.
pub fn constraint_from_solution(
    bundle: &crate::countsys::SystemBundle,
    z: &[u64],
) -> QuotientConstraint {
    use crate::patterns::Membership;
    let weight = 12u32;
    let mut selected_rows: Vec<Vec<u8>> = Vec::new();
    let mut unselected_rows: Vec<Vec<u8>> = Vec::new();
    let mut unique_row = None;
    for (i, &zi) in z.iter().enumerate() {
        if zi == 0 {
            continue;
        }
        let pat = bundle.pattern(i);
        let chi = pat.membership.chi();
        if weight < chi {
            continue;
        }
        let target = weight - chi;
        for row in pat.rows() {
            let sum: u32 = row.iter().map(|&v| v as u32).sum();
            if sum != target {
                continue;
            }
            let mut sorted = row.clone();
            sorted.sort_unstable();
            let family = match pat.membership {
                Membership::In => &mut selected_rows,
                Membership::Out => &mut unselected_rows,
            };
            if !family.contains(&sorted) {
                family.push(sorted.clone());
            }
            if zi == 1 && pat.membership == Membership::In {
                unique_row = Some(sorted);
            }
        }
    }
    selected_rows.sort();
    unselected_rows.sort();
    QuotientConstraint { target: weight as usize, selected_rows, unselected_rows, unique_row }
}
