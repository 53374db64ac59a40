//! Full reconstruction of the nontrivial x=5 class of PG(3,3).
//!
//! Fix the base line l* = <e1,e2> outside the class with the admissible
//! pattern whose point weights are (2,6,6,6) and plane weights (11,3,3,3);
//! normalize the weight-2 point onto e1 and the weight-11 plane onto
//! <e1,e2,e3> — legitimate because the stabilizer of l* acts on its points
//! and on its planes through independent PGL(2,3) actions. The base-line
//! neighbourhood splits into the sixteen pencils at (P_i, pi_j), each
//! contributing exactly t_ij of its 3 non-base lines, so all candidate
//! neighbourhoods come from the product of per-pencil choices; each one is
//! completed through the skew-line count and verified.

use super::complete_from_incident_set;
use crate::bitset::Bitset;
use crate::classes::{verify_cl, LineClass};
use crate::projgeom::{Geometry, LineId, PlaneId, PointId};

/// All x=5 classes whose pattern at l* matches the normalized frame;
/// deduplicated as line sets, sorted canonically.
pub fn search_q3_x5(g: &Geometry) -> Vec<LineClass> {
    assert_eq!(g.n, 3);
    assert_eq!(g.q(), 3);
    let x = 5u32;
    let e1 = g.point_id(&[1, 0, 0, 0]).unwrap();
    let e2 = g.point_id(&[0, 1, 0, 0]).unwrap();
    let base = g.line_through(e1, e2);
    let line = &g.lines[base as usize];
    // points ordered with e1 first; planes with <e1,e2,e3> = {x4=0} first
    let mut points: Vec<PointId> = line.points.clone();
    points.sort_by_key(|&p| (p != e1, p));
    let pi1 = g.plane_id(&[0, 0, 0, 1]).unwrap();
    let mut planes: Vec<PlaneId> = line.planes.clone();
    planes.sort_by_key(|&pl| (pl != pi1, pl));
    // t(e1, pi1) = 2, t(e1, .) = 0, t(P, pi1) = 3, t(P, .) = 1
    let t = |i: usize, j: usize| -> usize {
        match (i == 0, j == 0) {
            (true, true) => 2,
            (true, false) => 0,
            (false, true) => 3,
            (false, false) => 1,
        }
    };
    // non-base lines of each pencil
    let mut cells: Vec<(usize, Vec<LineId>)> = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        for (j, &pl) in planes.iter().enumerate() {
            let pencil: Vec<LineId> = g
                .pencil(p, pl)
                .expect("incident pair")
                .into_iter()
                .filter(|&l| l != base)
                .collect();
            debug_assert_eq!(pencil.len(), 3);
            cells.push((t(i, j), pencil));
        }
    }
    let mut found: Vec<LineClass> = Vec::new();
    let mut chosen: Vec<LineId> = Vec::new();
    fn rec(
        g: &Geometry,
        x: u32,
        base: LineId,
        cells: &[(usize, Vec<LineId>)],
        level: usize,
        chosen: &mut Vec<LineId>,
        found: &mut Vec<LineClass>,
    ) {
        if level == cells.len() {
            let incident = Bitset::from_indices(
                g.num_lines(),
                &chosen.iter().map(|&l| l as usize).collect::<Vec<_>>(),
            );
            if let Ok(cl) = complete_from_incident_set(g, x, base, false, &incident) {
                if verify_cl(g, &cl) == Ok(x) {
                    found.push(cl);
                }
            }
            return;
        }
        let (take, ref lines) = cells[level];
        // all `take`-subsets of the 3 pencil lines
        let k = lines.len();
        let mut idx: Vec<usize> = (0..take).collect();
        loop {
            for &i in &idx {
                chosen.push(lines[i]);
            }
            rec(g, x, base, cells, level + 1, chosen, found);
            for _ in 0..take {
                chosen.pop();
            }
            // next combination
            let mut i = take;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] != i + k - take {
                    idx[i] += 1;
                    for j in (i + 1)..take {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced || take == 0 {
                return;
            }
        }
    }
    rec(g, x, base, &cells, 0, &mut chosen, &mut found);
    found.sort();
    found.dedup();
    found
}
