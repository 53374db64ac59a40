//! The x=12 reconstruction in PG(3,5).
//!
//! Fix the base line l* = <e1,e2> outside the class, carrying the unique
//! frame pattern whose plane weights around l* are (12, 18, 24, 6, 6, 6)
//! and point weights (6, 18, 12, 12, 12, 12). With pi1 = <e1,e2,e3> as the
//! weight-12 plane and pi2 = <e1,e2,e4> as the weight-18 plane, the driver:
//!
//! 1. fixes one weight-12 section in pi1 (all admissible placements form a
//!    single orbit under the stabilizer of e1, e2, so one representative is
//!    exhaustive);
//! 2. enumerates weight-18 sections of pi2 up to the residual symmetry
//!    (elements fixing e1 and e2, every plane through l*, and the chosen
//!    pi1 section) — four classes;
//! 3. enumerates all placements of the weight-6 and weight-24 sections in
//!    pi3 = <e1,e2,e3+e4> (1200 and 400 candidates);
//! 4. extends each triple through the quotient geometries at the points of
//!    l*, matching point-star configurations (the duals of the planar
//!    sections) against the fixed lines, completes the class from the
//!    base-line neighbourhood, and verifies.
//!
//! Everything downstream of the triple loop is independent per triple and
//! runs in parallel; results are canonically sorted, so the outcome does
//! not depend on thread count.

use super::planecfg::{
    classify, enumerate_all_configs, line_duals, plane_group, PlaneGroup, SearchSpace,
};
use crate::bitset::Bitset;
use crate::classes::{verify_cl, LineClass};
use crate::countsys::{build_system, SystemBundle};
use crate::exact::rref_symbolic;
use crate::feasibility::{
    enumerate_weight_distributions, solve_nonneg_integers, substitute_distribution, Budget,
};
use crate::patterns::{weight_sets, Membership};
use crate::projgeom::{
    quotient_at_point, Geometry, LineId, PlaneEmbedding, PlaneId, PointId,
};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Allowed section columns by plane weight, split by membership, written as
/// sorted count-vectors excluding the line itself.
pub struct SectionColumns {
    pub in_cols: BTreeMap<u32, Vec<Vec<u8>>>,
    pub out_cols: BTreeMap<u32, Vec<Vec<u8>>>,
}

/// Derive the allowed columns from the patterns carrying a positive count
/// in the unique x=12 solution.
pub fn x12_section_columns() -> (SystemBundle, Vec<u64>, SectionColumns) {
    let sets = weight_sets(5, 12, 0).expect("base solution");
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
    .expect("x=12 weight stage is small");
    assert_eq!(dists.len(), 1, "unique weight distribution");
    let constant = substitute_distribution(&red.reduced, &dists[0], &bundle.indets);
    let caps = crate::pipeline::z_caps(&bundle);
    let sols = solve_nonneg_integers(&constant, &caps, &Budget::default())
        .complete()
        .expect("x=12 solve is small");
    assert_eq!(sols.len(), 1, "unique pattern-count solution");
    let z = sols[0].clone();
    let mut cols = SectionColumns { in_cols: BTreeMap::new(), out_cols: BTreeMap::new() };
    for (i, zi) in z.iter().enumerate() {
        if *zi == 0 {
            continue;
        }
        let pat = bundle.pattern(i);
        let chi = pat.membership.chi();
        let size = pat.size();
        for j in 0..size {
            let mut col: Vec<u8> = (0..size).map(|r| pat.entry(r, j)).collect();
            col.sort_unstable();
            let w = pat.col_sums[j] + chi;
            let family = match pat.membership {
                Membership::In => cols.in_cols.entry(w).or_default(),
                Membership::Out => cols.out_cols.entry(w).or_default(),
            };
            if !family.contains(&col) {
                family.push(col);
            }
        }
    }
    for family in cols.in_cols.values_mut().chain(cols.out_cols.values_mut()) {
        family.sort();
    }
    (bundle, z, cols)
}

/// One classified section weight: every admissible configuration (as line
/// masks over the standard plane) and the class representatives.
pub struct SectionCatalog {
    pub weight: u32,
    pub configs: Vec<u32>,
    pub classes: Vec<(u32, Vec<u32>)>,
}

/// Exhaustive classification of the weight-w planar sections.
pub fn classify_planar_sections(
    g2: &Geometry,
    group: &PlaneGroup,
    cols: &SectionColumns,
    weight: u32,
) -> SectionCatalog {
    let space = SearchSpace::lines_of(g2);
    let empty = Vec::new();
    let sel = cols.in_cols.get(&weight).unwrap_or(&empty);
    let unsel = cols.out_cols.get(&weight).unwrap_or(&empty);
    let (configs, classes) =
        enumerate_all_configs(&space, weight as usize, sel, unsel, &group.line_perms);
    SectionCatalog { weight, configs, classes }
}

/// Lines of a configuration that could belong to a pattern whose weight-w
/// column equals `col` (counts at the line's points, excluding the line).
fn lines_with_column(g2: &Geometry, mask: u32, member: bool, col: &[u8]) -> Vec<LineId> {
    let space = SearchSpace::lines_of(g2);
    let mut out = Vec::new();
    for l in 0..space.n_items {
        let selected = mask >> l & 1 == 1;
        if selected != member {
            continue;
        }
        let mut counts: Vec<u8> = space.item_blocks[l]
            .iter()
            .map(|&p| {
                space.block_items[p].iter().filter(|&&e| mask >> e & 1 == 1).count() as u8
                    - selected as u8
            })
            .collect();
        counts.sort_unstable();
        if counts == col {
            out.push(l as LineId);
        }
    }
    out
}

/// The x=12 search outcome.
pub struct X12Outcome {
    /// (pi1 candidates, pi2 candidates, pi3 weight-6, pi3 weight-24).
    pub stage_counts: [usize; 4],
    /// Completed classes, deduplicated and canonically sorted.
    pub classes: Vec<LineClass>,
    /// Number of completed (pre-deduplication) successes.
    pub completions: usize,
}

struct Frame {
    base: LineId,
    points: [PointId; 6],
    planes: [PlaneId; 6],
    /// t(P_i, pi_j) with pi3 as the weight-24 plane.
    rows24: [[u8; 6]; 6],
    /// t(P_i, pi_j) with pi3 as a weight-6 plane (the weight-24 plane is
    /// then one of pi4..pi6, undetermined).
    rows6: [[u8; 6]; 6],
}

fn build_frame(g3: &Geometry) -> Frame {
    let e1 = g3.point_id(&[1, 0, 0, 0]).unwrap();
    let e2 = g3.point_id(&[0, 1, 0, 0]).unwrap();
    let base = g3.line_through(e1, e2);
    let line = &g3.lines[base as usize];
    let mut points = [0; 6];
    points[0] = e1;
    points[1] = e2;
    let mut rest: Vec<PointId> =
        line.points.iter().copied().filter(|&p| p != e1 && p != e2).collect();
    rest.sort_unstable();
    points[2..6].copy_from_slice(&rest);
    let pi1 = g3.plane_id(&[0, 0, 0, 1]).unwrap();
    let pi2 = g3.plane_id(&[0, 0, 1, 0]).unwrap();
    let pi3 = g3.plane_id(&[0, 0, 1, 4]).unwrap(); // contains e3+e4
    let mut planes = [0; 6];
    planes[0] = pi1;
    planes[1] = pi2;
    planes[2] = pi3;
    let mut rest: Vec<PlaneId> = line
        .planes
        .iter()
        .copied()
        .filter(|&pl| pl != pi1 && pl != pi2 && pl != pi3)
        .collect();
    rest.sort_unstable();
    planes[3..6].copy_from_slice(&rest);
    // frame rows: weight-12, weight-18 columns fixed; third column is the
    // weight-24 one in `rows24` and a weight-6 one in `rows6`
    let col12 = [1u8, 3, 2, 2, 2, 2];
    let col18 = [2u8, 4, 3, 3, 3, 3];
    let col24 = [3u8, 5, 4, 4, 4, 4];
    let col6 = [0u8, 2, 1, 1, 1, 1];
    let mut rows24 = [[0u8; 6]; 6];
    let mut rows6 = [[0u8; 6]; 6];
    for i in 0..6 {
        rows24[i] = [col12[i], col18[i], col24[i], col6[i], col6[i], col6[i]];
        rows6[i] = [col12[i], col18[i], col6[i], col6[i], col6[i], col6[i]];
    }
    Frame { base, points, planes, rows24, rows6 }
}

/// Filter configurations by exact pencil counts at the images of the frame
/// points on the base line.
fn filter_by_counts(
    configs: &[u32],
    pencil_masks: &[u32; 6],
    counts: &[u8; 6],
    base_local: u8,
) -> Vec<u32> {
    configs
        .iter()
        .copied()
        .filter(|&mask| {
            if mask >> base_local & 1 == 1 {
                return false;
            }
            (0..6).all(|i| (mask & pencil_masks[i]).count_ones() as u8 == counts[i])
        })
        .collect()
}

/// Pencil masks (lines through each of six local points) in a plane
/// embedding, ordered by the frame points.
fn local_pencils(g2: &Geometry, emb: &PlaneEmbedding, frame_points: &[PointId; 6]) -> [u32; 6] {
    let mut out = [0u32; 6];
    for (i, &p) in frame_points.iter().enumerate() {
        let local = emb.point_to_local[&p];
        let mut mask = 0u32;
        for l in g2.stars[local as usize].iter_ones() {
            mask |= 1 << l;
        }
        out[i] = mask;
    }
    out
}

/// Data for the quotient extension at one point of the base line.
struct PointContext {
    /// Star candidates (point masks in the standard plane), refined down to
    /// the current section triple.
    candidates: Vec<u32>,
    /// Images of the six planes through the base line, as local point masks
    /// of the quotient plane.
    plane_masks: [u32; 6],
    /// Global line for each local point.
    to_global: Vec<LineId>,
}

pub fn search_x12(g3: &Geometry, g2: &Geometry) -> X12Outcome {
    let (_bundle, _z, cols) = x12_section_columns();
    let group = plane_group(g2);
    let duals = line_duals(g2);
    let frame = build_frame(g3);

    // --- classified section catalogs ---------------------------------
    let cat6 = classify_planar_sections(g2, &group, &cols, 6);
    let cat12 = classify_planar_sections(g2, &group, &cols, 12);
    let cat18 = classify_planar_sections(g2, &group, &cols, 18);
    let cat24 = classify_planar_sections(g2, &group, &cols, 24);
    assert_eq!(cat6.classes.len(), 2, "two weight-6 section classes");
    assert_eq!(cat12.classes.len(), 2, "two weight-12 section classes");
    assert_eq!(cat18.classes.len(), 1, "one weight-18 section class");
    assert_eq!(cat24.classes.len(), 2, "two weight-24 section classes");

    // the occurring weight-6 class mixes two column kinds (three lines each)
    let col6_t3: Vec<u8> = vec![0, 0, 1, 1, 1, 2];
    let six_class = cat6
        .classes
        .iter()
        .find(|(rep, _)| !lines_with_column(g2, *rep, true, &col6_t3).is_empty())
        .expect("mixed weight-6 class exists");
    // the occurring weight-24 class has exactly one uniform external line
    let col24_t10: Vec<u8> = vec![4, 4, 4, 4, 4, 4];
    let twentyfour_class = cat24
        .classes
        .iter()
        .find(|(rep, _)| lines_with_column(g2, *rep, false, &col24_t10).len() == 1)
        .expect("single-external-uniform weight-24 class exists");

    // --- plane embeddings and stage candidate lists -------------------
    let emb1 = PlaneEmbedding::new(g3, g2, frame.planes[0]);
    let emb2 = PlaneEmbedding::new(g3, g2, frame.planes[1]);
    let emb3 = PlaneEmbedding::new(g3, g2, frame.planes[2]);
    let base1 = emb1.line_to_local[&frame.base] as u8;
    let base2 = emb2.line_to_local[&frame.base] as u8;
    let base3 = emb3.line_to_local[&frame.base] as u8;
    let pencils1 = local_pencils(g2, &emb1, &frame.points);
    let pencils2 = local_pencils(g2, &emb2, &frame.points);
    let pencils3 = local_pencils(g2, &emb3, &frame.points);

    let col12_counts = [1u8, 3, 2, 2, 2, 2];
    let col18_counts = [2u8, 4, 3, 3, 3, 3];
    let col24_counts = [3u8, 5, 4, 4, 4, 4];
    let col6_counts = [0u8, 2, 1, 1, 1, 1];

    let stage1_all = filter_by_counts(&cat12.configs, &pencils1, &col12_counts, base1);
    // all stage-1 placements are equivalent under the stabilizer of
    // (e1, e2): one orbit, checked, then one representative taken
    let stab12: Vec<Vec<u8>> = {
        let e1l = emb1.point_to_local[&frame.points[0]] as u8;
        let e2l = emb1.point_to_local[&frame.points[1]] as u8;
        group
            .point_perms
            .iter()
            .zip(&group.line_perms)
            .filter(|(pp, _)| pp[e1l as usize] == e1l && pp[e2l as usize] == e2l)
            .map(|(_, lp)| lp.clone())
            .collect()
    };
    let stage1_classes = classify(&stage1_all, &stab12);
    assert_eq!(stage1_classes.len(), 1, "pi1 placements form one orbit");
    let s1 = stage1_classes[0].0;

    // --- residual symmetry for stage 2 --------------------------------
    // global maps [[diag(1,a), B],[0, diag(d1,d2)]] fix e1 and e2, the
    // weight-12 plane pi1 and the weight-18 plane pi2 (setwise); the
    // remaining planes through the base line may move, which is harmless
    // because stages 3 and 4 treat them symmetrically. Those elements that
    // also stabilize the chosen pi1 section act on the pi2 sections, and
    // candidates are classified up to that action.
    let f = &g3.field;
    let q = f.q as u8;
    let mut residual_perms: Vec<Vec<u8>> = Vec::new();
    {
        let s1_global: Vec<LineId> =
            super::planecfg::mask_to_lines(s1).iter().map(|&l| emb1.local_to_line[l as usize]).collect();
        let s1_set: std::collections::BTreeSet<LineId> = s1_global.iter().copied().collect();
        let mut params = Vec::new();
        for a in 1..q {
            for d1 in 1..q {
                for d2 in 1..q {
                    for b11 in 0..q {
                        for b12 in 0..q {
                            for b21 in 0..q {
                                for b22 in 0..q {
                                    params.push([a, d1, d2, b11, b12, b21, b22]);
                                }
                            }
                        }
                    }
                }
            }
        }
        for [a, d1, d2, b11, b12, b21, b22] in params {
            let matrix =
                [[1, 0, b11, b12], [0, a, b21, b22], [0, 0, d1, 0], [0, 0, 0, d2]];
            let map_point = |p: PointId| -> PointId {
                let c = &g3.points[p as usize];
                let mut img = [0u8; 4];
                for (r, row) in matrix.iter().enumerate() {
                    let mut acc = 0u8;
                    for (k, &mm) in row.iter().enumerate() {
                        acc = f.add(acc, f.mul(mm, c[k]));
                    }
                    img[r] = acc;
                }
                g3.point_id(&img).expect("bijective")
            };
            let map_line = |l: LineId| -> LineId {
                let ln = &g3.lines[l as usize];
                g3.line_through(map_point(ln.points[0]), map_point(ln.points[1]))
            };
            // must stabilize the chosen pi1 section
            if !s1_global.iter().all(|&l| s1_set.contains(&map_line(l))) {
                continue;
            }
            // induced permutation of pi2's local lines
            let mut perm = vec![0u8; g2.num_lines()];
            for (local, &global) in emb2.local_to_line.iter().enumerate() {
                perm[local] = emb2.line_to_local[&map_line(global)] as u8;
            }
            residual_perms.push(perm);
        }
    }
    residual_perms.sort();
    residual_perms.dedup();

    let stage2_all = filter_by_counts(&cat18.configs, &pencils2, &col18_counts, base2);
    let stage2_classes = classify(&stage2_all, &residual_perms);
    let stage2: Vec<u32> = stage2_classes.iter().map(|(rep, _)| *rep).collect();

    let stage3_six = filter_by_counts(&six_class.1, &pencils3, &col6_counts, base3);
    let stage3_twentyfour =
        filter_by_counts(&twentyfour_class.1, &pencils3, &col24_counts, base3);

    // --- quotient contexts ---------------------------------------------
    // valid star configurations by point weight: duals of the section
    // classes that occur for that weight
    let dual_list = |masks: &[u32]| -> Vec<u32> {
        let mut v: Vec<u32> = masks
            .iter()
            .map(|&mask| {
                let mut pm = 0u32;
                for l in super::planecfg::mask_to_lines(mask) {
                    pm |= 1 << duals[l as usize];
                }
                pm
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let stars6 = dual_list(&six_class.1);
    let stars12 = dual_list(&cat12.configs);
    let stars18 = dual_list(&cat18.configs);
    let star_lists: [&Vec<u32>; 6] =
        [&stars6, &stars18, &stars12, &stars12, &stars12, &stars12];

    // quotient maps per frame point
    let quotients: Vec<_> = frame
        .points
        .iter()
        .map(|&p| quotient_at_point(g3, g2, p))
        .collect();

    let plane_masks_of = |qi: usize| -> [u32; 6] {
        let mut out = [0u32; 6];
        for (j, &pl) in frame.planes.iter().enumerate() {
            let ql = quotients[qi].plane_to_qline[&pl];
            let mut mask = 0u32;
            for &p in &g2.lines[ql as usize].points {
                mask |= 1 << p;
            }
            out[j] = mask;
        }
        out
    };

    // fixed quotient points contributed by a section in plane j
    let fixed_from_section =
        |qi: usize, emb: &PlaneEmbedding, mask: u32| -> u32 {
            let mut out = 0u32;
            for l in super::planecfg::mask_to_lines(mask) {
                let global = emb.local_to_line[l as usize];
                if let Some(&qp) = quotients[qi].line_to_qpoint.get(&global) {
                    out |= 1 << qp;
                }
            }
            out
        };

    // --- main loop -------------------------------------------------------
    // per-point fixed quotient points and masks that do not depend on pi3
    let all_plane_masks: Vec<[u32; 6]> = (0..6).map(plane_masks_of).collect();
    let base_locals: Vec<u32> =
        (0..6).map(|i| quotients[i].line_to_qpoint[&frame.base]).collect();
    let fixed1_per_point: Vec<u32> = (0..6).map(|i| fixed_from_section(i, &emb1, s1)).collect();

    let mut total = 0usize;
    let mut completions: Vec<LineClass> = Vec::new();
    for &s2 in &stage2 {
        // prefilter star candidates by the pi1 and pi2 sections only
        let prefiltered: Vec<Vec<u32>> = (0..6)
            .map(|i| {
                let fixed = fixed1_per_point[i] | fixed_from_section(i, &emb2, s2);
                let pm = &all_plane_masks[i];
                star_lists[i]
                    .iter()
                    .copied()
                    .filter(|&b| {
                        b & (1 << base_locals[i]) == 0
                            && b & fixed == fixed
                            && (0..2).all(|j| b & pm[j] == fixed & pm[j])
                            && (3..6).all(|j| {
                                let c = (b & pm[j]).count_ones() as u8;
                                c == frame.rows6[i][j] || c == frame.rows24[i][2]
                            })
                    })
                    .collect()
            })
            .collect();
        let run_case = |s3: u32, weight24_pi3: bool| -> Vec<LineClass> {
            let contexts: Vec<PointContext> = (0..6)
                .map(|i| {
                    let fixed3 = fixed_from_section(i, &emb3, s3);
                    let pm = &all_plane_masks[i];
                    let candidates: Vec<u32> = prefiltered[i]
                        .iter()
                        .copied()
                        .filter(|&b| b & pm[2] == fixed3 && fixed3 & b == fixed3)
                        .collect();
                    PointContext {
                        candidates,
                        plane_masks: *pm,
                        to_global: quotients[i].qpoint_to_line.clone(),
                    }
                })
                .collect();
            let mut results = Vec::new();
            let mut stack: Vec<u32> = Vec::with_capacity(6);
            combine(g3, &frame, &contexts, weight24_pi3, &mut stack, &mut results);
            results
        };
        let mut tasks: Vec<(u32, bool)> =
            stage3_twentyfour.iter().map(|&s3| (s3, true)).collect();
        tasks.extend(stage3_six.iter().map(|&s3| (s3, false)));
        let batch: Vec<LineClass> = tasks
            .par_iter()
            .flat_map_iter(|&(s3, w24)| run_case(s3, w24))
            .collect();
        total += batch.len();
        completions.extend(batch);
    }
    completions.sort();
    completions.dedup();

    X12Outcome {
        stage_counts: [1, stage2.len(), stage3_six.len(), stage3_twentyfour.len()],
        classes: completions,
        completions: total,
    }
}

/// Depth-first combination of per-point star candidates with the
/// plane-weight consistency filter, completing and verifying at the leaves.
fn combine(
    g3: &Geometry,
    frame: &Frame,
    contexts: &[PointContext],
    weight24_pi3: bool,
    stack: &mut Vec<u32>,
    results: &mut Vec<LineClass>,
) {
    let level = stack.len();
    if level == 6 {
        // plane-weight consistency for pi4..pi6
        let mut heavy = 0;
        for j in 3..6 {
            let mut weight = 0u32;
            for (i, &b) in stack.iter().enumerate() {
                weight += (b & contexts[i].plane_masks[j]).count_ones();
            }
            match weight {
                6 => {}
                24 => heavy += 1,
                _ => return,
            }
        }
        let expected_heavy = if weight24_pi3 { 0 } else { 1 };
        if heavy != expected_heavy {
            return;
        }
        // assemble the base-line neighbourhood and complete
        let mut incident = Bitset::new(g3.num_lines());
        for (i, &b) in stack.iter().enumerate() {
            for p in 0..32 {
                if b >> p & 1 == 1 {
                    incident.insert(contexts[i].to_global[p] as usize);
                }
            }
        }
        if let Ok(cl) = super::complete_from_incident_set(g3, 12, frame.base, false, &incident)
        {
            if verify_cl(g3, &cl) == Ok(12) {
                results.push(cl);
            }
        }
        return;
    }
    // per-point exact row check against the two cases is already encoded in
    // the prefilter; here the partial plane-weight consistency prunes
    for &cand in &contexts[level].candidates {
        stack.push(cand);
        // partial consistency: counts at planes 4..6 must agree across the
        // already chosen stars with a single column type per plane
        let mut ok = true;
        for j in 3..6 {
            let mut case6 = true;
            let mut case24 = true;
            for (i, &b) in stack.iter().enumerate() {
                let c = (b & contexts[i].plane_masks[j]).count_ones() as u8;
                if c != frame.rows6[i][j] {
                    case6 = false;
                }
                if c != frame.rows24[i][2] {
                    case24 = false;
                }
            }
            if !(case6 || case24) {
                ok = false;
                break;
            }
            if case24 && weight24_pi3 {
                ok = false;
                break;
            }
        }
        if ok {
            combine(g3, frame, contexts, weight24_pi3, stack, results);
        }
        stack.pop();
    }
}
