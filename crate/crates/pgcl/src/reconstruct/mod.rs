//! Search machinery: completion of a class from the lines meeting a fixed
//! base line, exhaustive configuration searches in PG(2,q) with
//! isomorph rejection, the quotient-plane point-set search, and the
//! reconstruction drivers.

pub mod bset;
pub mod planecfg;
pub mod q3;
pub mod x12;

use crate::bitset::Bitset;
use crate::classes::LineClass;
use crate::projgeom::{Geometry, LineId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompletionError {
    #[error("input line {0} does not meet the base line")]
    NotIncident(LineId),
    #[error("skew line {line} sees {count} class lines through the base line, expected {expect_out} or {expect_in}")]
    Contradiction { line: LineId, count: u64, expect_out: u64, expect_in: u64 },
}

/// Complete a class from its base-line neighbourhood.
///
/// Every line skew to the base line meets x + q(chi(base) + chi(l)) class
/// lines that also meet the base line, so the membership of each skew line
/// is read off from the count of `incident` lines meeting it: x + q chi_b
/// means out, x + q(chi_b + 1) means in, anything else contradicts the
/// neighbourhood. Lines meeting the base line are taken as given.
pub fn complete_from_incident_set(
    g: &Geometry,
    x: u32,
    base: LineId,
    base_in_class: bool,
    incident: &Bitset,
) -> Result<LineClass, CompletionError> {
    let q = g.q() as u64;
    let meets_base = &g.meets[base as usize];
    for l in incident.iter_ones() {
        if !meets_base.get(l) {
            return Err(CompletionError::NotIncident(l as LineId));
        }
    }
    let chi_b = base_in_class as u64;
    let expect_out = x as u64 + q * chi_b;
    let expect_in = x as u64 + q * (chi_b + 1);
    let mut lines = incident.clone();
    lines.set(base as usize, base_in_class);
    for l in 0..g.num_lines() {
        if l == base as usize || meets_base.get(l) {
            continue;
        }
        let count = g.meets[l].intersection_count(incident) as u64;
        if count == expect_in {
            lines.insert(l);
        } else if count != expect_out {
            return Err(CompletionError::Contradiction {
                line: l as LineId,
                count,
                expect_out,
                expect_in,
            });
        }
    }
    Ok(LineClass { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{catalog, verify_cl};
    use crate::projgeom::{build_geometry, PointId};

    #[test]
    fn round_trip_on_trivial_class() {
        let g = build_geometry(3, 3).unwrap();
        let p_off = (0..g.num_points() as PointId)
            .find(|&p| !g.planes[0].points.get(p as usize))
            .unwrap();
        let cl = catalog::star_union_plane(&g, p_off, 0).unwrap();
        assert_eq!(verify_cl(&g, &cl).unwrap(), 2);
        for base in cl.line_ids().into_iter().step_by(7) {
            let mut incident = g.meets[base as usize].clone();
            incident.intersect_with(&cl.lines);
            let back = complete_from_incident_set(&g, 2, base, true, &incident).unwrap();
            assert_eq!(back, cl);
        }
        // also from a base line outside the class
        let base = (0..g.num_lines() as LineId).find(|&l| !cl.contains(l)).unwrap();
        let mut incident = g.meets[base as usize].clone();
        incident.intersect_with(&cl.lines);
        let back = complete_from_incident_set(&g, 2, base, false, &incident).unwrap();
        assert_eq!(back, cl);
    }

    #[test]
    fn toggled_neighbourhood_contradicts() {
        let g = build_geometry(3, 3).unwrap();
        let cl = catalog::star(&g, 0);
        let base = cl.line_ids()[0];
        let mut incident = g.meets[base as usize].clone();
        incident.intersect_with(&cl.lines);
        // toggle one line of the neighbourhood
        let victim = incident.iter_ones().next().unwrap();
        let mut broken = incident.clone();
        broken.set(victim, false);
        let out = complete_from_incident_set(&g, 1, base, true, &broken);
        assert!(matches!(out, Err(CompletionError::Contradiction { .. })));
    }
}
