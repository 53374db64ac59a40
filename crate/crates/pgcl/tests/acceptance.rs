//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured values. Budgets for the large q=7/8 cases come from
//! `PGCL_TEST_BUDGET_SECS` (default 7200) and the extended cases from
//! `PGCL_EXTENDED_BUDGET_SECS` (default 600); an extended case that runs
//! out of budget must say so explicitly and still passes, per its
//! criterion.

use pgcl::classes::equiv::{equivalent, EquivOutcome};
use pgcl::classes::{
    ab_set_parameters, cap_analysis, catalog, complement, dualize, pattern_census,
    plane_weights, point_weights, projective_point_count, verify_cl, weight_profile, LineClass,
};
use pgcl::countsys::{build_system, locate_patterns, SystemBundle};
use pgcl::exact::{rat_int, rref_symbolic, solve_constant, ConstSolution, SymPoly, SymRow, SymSystem};
use pgcl::feasibility::{
    enumerate_weight_distributions, solve_nonneg_integers, substitute_distribution, Budget,
    Exhaustive, WeightDistribution,
};
use pgcl::patterns::{
    generate_patterns, generate_raw, modular_solutions, sum_profile, weight_sets, Membership,
    Pattern,
};
use pgcl::pipeline::{run_pipeline, z_caps, Verdict};
use pgcl::projgeom::{build_geometry, polarity, Geometry, LineId};
use pgcl::reconstruct::bset::{constraint_from_solution, search_quotient_bsets};
use pgcl::reconstruct::complete_from_incident_set;
use pgcl::reconstruct::x12::search_x12;
use pgcl::tables;
use std::collections::BTreeMap;

fn budget_secs(var: &str, default: u64) -> u64 {
    std::env::var(var).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

fn big_budget() -> Budget {
    Budget {
        max_nodes: u64::MAX,
        max_secs: Some(budget_secs("PGCL_TEST_BUDGET_SECS", 7200)),
    }
}

fn extended_budget() -> Budget {
    Budget {
        max_nodes: u64::MAX,
        max_secs: Some(budget_secs("PGCL_EXTENDED_BUDGET_SECS", 600)),
    }
}

fn to_matrix_vecs<const N: usize, const K: usize>(t: &[[[u8; N]; N]; K]) -> Vec<Vec<Vec<u8>>> {
    t.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect()
}

#[test]
fn criterion_01_modular_gate() {
    for x in [3u32, 4] {
        assert!(modular_solutions(3, x).is_empty(), "q=3 x={x} must be rejected");
    }
    for x in [3u32, 4, 8] {
        assert!(modular_solutions(4, x).is_empty(), "q=4 x={x} must be rejected");
    }
    for x in [3u32, 7, 11] {
        assert!(modular_solutions(5, x).is_empty(), "q=5 x={x} must be rejected");
    }
    let admissible = |q: u16| -> Vec<u32> {
        let max_x = (q as u32 * q as u32 + 1) / 2;
        (q as u32 + 1..=max_x).filter(|&x| !modular_solutions(q, x).is_empty()).collect()
    };
    assert_eq!(admissible(7), tables::Q7_ADMISSIBLE.to_vec());
    assert_eq!(admissible(8), tables::Q8_ADMISSIBLE.to_vec());
    println!(
        "PASS criterion 1: modular gate rejects/admits exactly the reference parameter lists"
    );
}

fn pattern_counts(q: u16, x: u32) -> Vec<(usize, usize)> {
    modular_solutions(q, x)
        .into_iter()
        .map(|n| {
            let sets = weight_sets(q, x, n).unwrap();
            (
                generate_patterns(q, x, Membership::In, &sets).len(),
                generate_patterns(q, x, Membership::Out, &sets).len(),
            )
        })
        .collect()
}

/// Every reference matrix must appear among the generated patterns (up to
/// canonical form).
fn assert_matrices_present(
    q: u16,
    x: u32,
    n: u32,
    mats_in: &[Vec<Vec<u8>>],
    mats_out: &[Vec<Vec<u8>>],
) {
    let sets = weight_sets(q, x, n).unwrap();
    let pin = generate_patterns(q, x, Membership::In, &sets);
    let pout = generate_patterns(q, x, Membership::Out, &sets);
    for (k, m) in mats_in.iter().enumerate() {
        let key = Pattern::from_matrix(q, x, Membership::In, m).key();
        assert!(
            pin.iter().any(|p| p.key() == key),
            "q={q} x={x}: reference class-line matrix #{k} missing"
        );
    }
    for (k, m) in mats_out.iter().enumerate() {
        let key = Pattern::from_matrix(q, x, Membership::Out, m).key();
        assert!(
            pout.iter().any(|p| p.key() == key),
            "q={q} x={x}: reference complement matrix #{k} missing"
        );
    }
}

#[test]
fn criterion_02_pattern_counts() {
    assert_eq!(pattern_counts(3, 5), vec![(2, 2)]);
    assert_eq!(pattern_counts(4, 7), vec![(7, 4)]);
    assert_eq!(pattern_counts(5, 4), vec![(0, 0)]);
    assert_eq!(pattern_counts(5, 10), vec![(10, 6)]);
    assert_eq!(pattern_counts(5, 12), vec![(8, 8)]);
    assert_eq!(pattern_counts(5, 13), vec![(10, 10), (10, 10)]);
    for x in [8u32, 9, 10, 13] {
        for c in pattern_counts(7, x) {
            assert_eq!(c, (0, 0), "q=7 x={x}");
        }
    }
    for x in [9u32, 10, 13, 16] {
        for c in pattern_counts(8, x) {
            assert_eq!(c, (0, 0), "q=8 x={x}");
        }
    }
    assert_matrices_present(
        3,
        5,
        2,
        &to_matrix_vecs(&tables::Q3_X5_PATTERNS_IN),
        &to_matrix_vecs(&tables::Q3_X5_PATTERNS_OUT),
    );
    assert_matrices_present(
        5,
        13,
        0,
        &to_matrix_vecs(&tables::X13G1_PATTERNS_IN),
        &to_matrix_vecs(&tables::X13G1_PATTERNS_OUT),
    );
    assert_matrices_present(
        5,
        12,
        0,
        &to_matrix_vecs(&tables::X12_PATTERNS_IN),
        &to_matrix_vecs(&tables::X12_PATTERNS_OUT),
    );
    assert_matrices_present(
        5,
        13,
        3,
        &to_matrix_vecs(&tables::X13G2_PATTERNS_IN),
        &to_matrix_vecs(&tables::X13G2_PATTERNS_OUT),
    );
    println!("PASS criterion 2: pattern counts and reference matrices reproduced");
}

#[test]
fn criterion_03_infeasibility_verdicts_small() {
    for (q, xs) in [(4u16, vec![5u32, 6]), (5, vec![5, 6, 8, 9])] {
        for x in xs {
            let r = run_pipeline(q, x, &Budget::default());
            assert_eq!(r.verdict, Verdict::Infeasible, "q={q} x={x}");
        }
    }
    println!("PASS criterion 3a: q<=5 infeasible parameters all report no solution");
}

#[test]
fn criterion_03_infeasibility_verdicts_q7_q8() {
    for (q, x) in [(7u16, 16u32), (7, 17), (8, 11), (8, 18), (8, 19)] {
        let r = run_pipeline(q, x, &big_budget());
        assert_eq!(
            r.verdict,
            Verdict::Infeasible,
            "q={q} x={x} must resolve infeasible within the budget"
        );
        println!("PASS criterion 3b: ({q},{x}) no solution in non-negative integers");
    }
    // (8,20) is tagged EXTENDED: inconclusive acceptable, but only with an
    // explicit budget report
    let r = run_pipeline(8, 20, &extended_budget());
    match r.verdict {
        Verdict::Infeasible => {
            println!("PASS criterion 3c: (8,20) no solution in non-negative integers")
        }
        Verdict::Inconclusive => {
            let rep = r
                .groups
                .iter()
                .find_map(|g| g.inconclusive.as_ref())
                .expect("inconclusive verdict carries a budget report");
            println!(
                "PASS criterion 3c: (8,20) EXTENDED inconclusive with budget report \
                 ({} nodes, {:.0}s)",
                rep.nodes_used, rep.elapsed_secs
            );
        }
        v => panic!("(8,20) unexpected verdict {v:?}"),
    }
}

/// Pipeline solutions mapped into the reference T-numbering of a table.
fn solutions_in_reference_order(
    q: u16,
    x: u32,
    n: u32,
    mats_in: &[Vec<Vec<u8>>],
    mats_out: &[Vec<Vec<u8>>],
) -> (Vec<(Vec<u64>, Vec<u64>, Vec<u64>)>, usize) {
    let r = run_pipeline(q, x, &Budget::default());
    let sets = weight_sets(q, x, n).unwrap();
    let bundle = build_system(&sets);
    let map = locate_patterns(&bundle, mats_in, mats_out).unwrap();
    let group = r.groups.iter().find(|g| g.n_base == n).expect("group present");
    let mut out = Vec::new();
    for sol in &group.solutions {
        let d = &group.distributions[sol.distribution_index];
        let ordered: Vec<u64> = map.iter().map(|&i| sol.z[i]).collect();
        let leftover: u64 = sol.z.iter().sum::<u64>() - ordered.iter().sum::<u64>();
        assert_eq!(leftover, 0, "all lines carry reference-numbered patterns");
        out.push((d.point_vector(), d.plane_vector(), ordered));
    }
    (out, group.solutions.len())
}

#[test]
fn criterion_04_exact_solutions() {
    // (3,5)
    let (sols, count) = solutions_in_reference_order(
        3,
        5,
        2,
        &to_matrix_vecs(&tables::Q3_X5_PATTERNS_IN),
        &to_matrix_vecs(&tables::Q3_X5_PATTERNS_OUT),
    );
    assert_eq!(count, 1);
    assert_eq!(sols[0].0, tables::Q3_X5_POINT_DIST.to_vec());
    assert_eq!(sols[0].1, tables::Q3_X5_PLANE_DIST.to_vec());
    assert_eq!(sols[0].2, tables::Q3_X5_Z.to_vec());

    // (4,7): unique distribution, unique solution
    let r = run_pipeline(4, 7, &Budget::default());
    assert_eq!(r.verdict, Verdict::Solutions);
    assert_eq!(r.total_solutions, 1);
    assert_eq!(r.groups[0].distributions.len(), 1);

    // (5,10): unique distribution, unique solution
    let r = run_pipeline(5, 10, &Budget::default());
    assert_eq!(r.verdict, Verdict::Solutions);
    assert_eq!(r.total_solutions, 1);
    assert_eq!(r.groups[0].solutions.len(), 1);

    // (5,12)
    let (sols, count) = solutions_in_reference_order(
        5,
        12,
        0,
        &to_matrix_vecs(&tables::X12_PATTERNS_IN),
        &to_matrix_vecs(&tables::X12_PATTERNS_OUT),
    );
    assert_eq!(count, 1);
    assert_eq!(sols[0].0, tables::X12_DIST.to_vec());
    assert_eq!(sols[0].1, tables::X12_DIST.to_vec());
    assert_eq!(sols[0].2, tables::X12_Z.to_vec());

    // (5,13) group 1: exactly the three reference rows
    let (sols, count) = solutions_in_reference_order(
        5,
        13,
        0,
        &to_matrix_vecs(&tables::X13G1_PATTERNS_IN),
        &to_matrix_vecs(&tables::X13G1_PATTERNS_OUT),
    );
    assert_eq!(count, 3);
    let got: std::collections::BTreeSet<_> = sols.into_iter().collect();
    let want: std::collections::BTreeSet<_> = (0..3)
        .map(|i| {
            (
                tables::X13G1_POINT_DISTS[i].to_vec(),
                tables::X13G1_PLANE_DISTS[i].to_vec(),
                tables::X13G1_Z[i].to_vec(),
            )
        })
        .collect();
    assert_eq!(got, want);

    // (5,13) group 2: exactly the two reference rows
    let (sols, count) = solutions_in_reference_order(
        5,
        13,
        3,
        &to_matrix_vecs(&tables::X13G2_PATTERNS_IN),
        &to_matrix_vecs(&tables::X13G2_PATTERNS_OUT),
    );
    assert_eq!(count, 2);
    let got: std::collections::BTreeSet<_> = sols.into_iter().collect();
    let want: std::collections::BTreeSet<_> = (0..2)
        .map(|i| {
            (
                tables::X13G2_POINT_DISTS[i].to_vec(),
                tables::X13G2_PLANE_DISTS[i].to_vec(),
                tables::X13G2_Z[i].to_vec(),
            )
        })
        .collect();
    assert_eq!(got, want);
    println!("PASS criterion 4: exact weight distributions and pattern counts reproduced");
}

#[test]
fn criterion_05_bset_search_empty() {
    let g2 = build_geometry(2, 5).unwrap();
    let sets = weight_sets(5, 13, 0).unwrap();
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
    let caps = z_caps(&bundle);
    let mut searched = 0;
    for d in &dists {
        let constant = substitute_distribution(&red.reduced, d, &bundle.indets);
        for z in solve_nonneg_integers(&constant, &caps, &Budget::default())
            .complete()
            .unwrap()
        {
            let constraint = constraint_from_solution(&bundle, &z);
            if constraint.unique_row.is_none() {
                continue;
            }
            // the reference row lists, bit-exact
            let want_sel: Vec<Vec<u8>> = {
                let mut v: Vec<Vec<u8>> = tables::BSET_ROWS_IN
                    .iter()
                    .map(|r| {
                        let mut s = r.to_vec();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                v.sort();
                v
            };
            let want_unsel: Vec<Vec<u8>> = {
                let mut v: Vec<Vec<u8>> = tables::BSET_ROWS_OUT
                    .iter()
                    .map(|r| {
                        let mut s = r.to_vec();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                v.sort();
                v
            };
            assert_eq!(constraint.selected_rows, want_sel);
            assert_eq!(constraint.unselected_rows, want_unsel);
            let mut unique = tables::BSET_ROWS_IN[tables::BSET_UNIQUE_ROW].to_vec();
            unique.sort_unstable();
            assert_eq!(constraint.unique_row.as_deref(), Some(unique.as_slice()));
            let found = search_quotient_bsets(&g2, &constraint);
            assert!(found.is_empty(), "no admissible 12-point set may exist");
            searched += 1;
        }
    }
    assert_eq!(searched, 2, "both first-group solutions with a distinguished row");
    println!("PASS criterion 5: quotient point-set search empty for both solution variants");
}

#[test]
fn criterion_06_x12_reconstruction_and_07_extension() {
    let g3 = build_geometry(3, 5).unwrap();
    let g2 = build_geometry(2, 5).unwrap();
    let out = search_x12(&g3, &g2);
    assert_eq!(out.stage_counts, [1, 4, 1200, 400], "stage candidate counts");
    assert_eq!(out.classes.len(), 1, "exactly one completed class");
    let found = &out.classes[0];
    assert_eq!(verify_cl(&g3, found), Ok(12));
    let (pts, pls) = weight_profile(&g3, found);
    let expect: BTreeMap<u32, u32> =
        [(0, 1), (6, 31), (12, 62), (18, 31), (24, 31)].into_iter().collect();
    assert_eq!(pts, expect);
    assert_eq!(pls, expect);
    // census equals the unique solution, in reference numbering
    let sets = weight_sets(5, 12, 0).unwrap();
    let bundle = build_system(&sets);
    let map = locate_patterns(
        &bundle,
        &to_matrix_vecs(&tables::X12_PATTERNS_IN),
        &to_matrix_vecs(&tables::X12_PATTERNS_OUT),
    )
    .unwrap();
    let census = pattern_census(&g3, found, &bundle).unwrap();
    let ordered: Vec<u64> = map.iter().map(|&i| census[i]).collect();
    assert_eq!(ordered, tables::X12_Z.to_vec());
    // the found class matches the shipped fixture
    assert_eq!(*found, catalog::load_known(&g3, catalog::KnownClass::Q5X12));
    println!("PASS criterion 6: x=12 reconstruction: stages 1/4/1200/400, one class, x=12");

    // criterion 7: extend by the unique weight-0 plane and match solution #3
    let extended = catalog::extend_by_empty_plane(&g3, found).expect("unique weight-0 plane");
    assert_eq!(verify_cl(&g3, &extended), Ok(13));
    let sets1 = weight_sets(5, 13, 0).unwrap();
    let bundle1 = build_system(&sets1);
    let map1 = locate_patterns(
        &bundle1,
        &to_matrix_vecs(&tables::X13G1_PATTERNS_IN),
        &to_matrix_vecs(&tables::X13G1_PATTERNS_OUT),
    )
    .unwrap();
    let census1 = pattern_census(&g3, &extended, &bundle1).unwrap();
    let ordered1: Vec<u64> = map1.iter().map(|&i| census1[i]).collect();
    assert_eq!(ordered1, tables::X13G1_Z[2].to_vec(), "solution #3 row");
    let (pts1, pls1) = weight_profile(&g3, &extended);
    let expect_n: BTreeMap<u32, u32> =
        [(0, 1), (6, 31), (12, 31), (18, 62), (24, 31)].into_iter().collect();
    let expect_m: BTreeMap<u32, u32> =
        [(1, 31), (7, 62), (13, 31), (19, 31), (31, 1)].into_iter().collect();
    let _ = (expect_n, expect_m);
    assert_eq!(pts1.get(&0), Some(&1));
    assert_eq!(pls1.get(&31), Some(&1));
    assert_eq!(
        pts1.values().sum::<u32>(),
        g3.num_points() as u32,
        "every point weighted"
    );
    let dist3: Vec<u64> = sets1
        .point_weights
        .iter()
        .map(|u| *pts1.get(u).unwrap_or(&0) as u64)
        .collect();
    assert_eq!(dist3, tables::X13G1_POINT_DISTS[2].to_vec());
    let dist3m: Vec<u64> = sets1
        .plane_weights
        .iter()
        .map(|w| *pls1.get(w).unwrap_or(&0) as u64)
        .collect();
    assert_eq!(dist3m, tables::X13G1_PLANE_DISTS[2].to_vec());
    println!("PASS criterion 7: extension verifies at x=13 and matches solution #3");
}

#[test]
fn criterion_08_q7_x18_extended() {
    let r = run_pipeline(7, 18, &extended_budget());
    match r.verdict {
        Verdict::Solutions => {
            assert_eq!(r.total_solutions, 5, "exactly 5 non-negative integer solutions");
            println!("PASS criterion 8: (7,18) has exactly 5 solutions");
        }
        Verdict::Inconclusive => {
            let rep = r
                .groups
                .iter()
                .find_map(|g| g.inconclusive.as_ref())
                .expect("inconclusive verdict carries a budget report");
            println!(
                "PASS criterion 8: (7,18) EXTENDED inconclusive with exhausted-budget \
                 report ({} nodes, {:.0}s of {:?}s)",
                rep.nodes_used, rep.elapsed_secs, rep.max_secs
            );
        }
        v => panic!("(7,18) unexpected verdict {v:?}"),
    }
}

fn catalog_classes(g3: &Geometry, gq3: &Geometry) -> Vec<(catalog::KnownClass, LineClass)> {
    catalog::KnownClass::all()
        .into_iter()
        .map(|k| {
            let g = if k.q() == 3 { gq3 } else { g3 };
            (k, catalog::load_known(g, k))
        })
        .collect()
}

#[test]
fn criterion_09_property_suites() {
    // pattern identities on every generated pattern over the full sweep
    for q in [3u16, 4, 5] {
        let max_x = (q as u32 * q as u32 + 1) / 2;
        for x in 0..=max_x {
            for n in modular_solutions(q, x) {
                let sets = weight_sets(q, x, n).unwrap();
                for mem in [Membership::In, Membership::Out] {
                    for p in generate_raw(q, x, mem, &sets) {
                        assert!(p.satisfies_identities(), "q={q} x={x} {mem:?}");
                        sum_profile(&p, &sets).unwrap();
                    }
                }
            }
        }
    }
    println!("PASS criterion 9a: pattern identities hold on every generated pattern");

    // brute-force enumeration oracle at q=3: all 4x4 matrices over [0,3]
    // satisfying the identities with admissible sums, via the additive
    // parametrization by first row and column
    let sets = weight_sets(3, 5, 2).unwrap();
    for mem in [Membership::In, Membership::Out] {
        let chi = mem.chi();
        let rvals: Vec<u32> = sets.point_weights.iter().map(|u| u - chi).collect();
        let cvals: Vec<u32> = sets.plane_weights.iter().map(|w| w - chi).collect();
        let mut found = std::collections::BTreeSet::new();
        for code in 0..4u64.pow(7) {
            let mut digits = [0u8; 7];
            let mut c = code;
            for d in digits.iter_mut() {
                *d = (c % 4) as u8;
                c /= 4;
            }
            let mut m = vec![vec![0u8; 4]; 4];
            m[0] = digits[0..4].to_vec();
            m[1][0] = digits[4];
            m[2][0] = digits[5];
            m[3][0] = digits[6];
            let mut ok = true;
            'fill: for i in 1..4 {
                for j in 1..4 {
                    let v = m[i][0] as i32 + m[0][j] as i32 - m[0][0] as i32;
                    if !(0..=3).contains(&v) {
                        ok = false;
                        break 'fill;
                    }
                    m[i][j] = v as u8;
                }
            }
            if !ok {
                continue;
            }
            let p = Pattern::from_matrix(3, 5, mem, &m);
            if p.row_sums.iter().all(|s| rvals.contains(s))
                && p.col_sums.iter().all(|s| cvals.contains(s))
                && p.satisfies_identities()
            {
                found.insert(p.key());
            }
        }
        let generated: std::collections::BTreeSet<_> =
            generate_patterns(3, 5, mem, &sets).iter().map(|p| p.key()).collect();
        assert_eq!(found, generated, "{mem:?}");
    }
    println!("PASS criterion 9b: q=3 brute-force pattern enumeration oracle agrees");

    let g3 = build_geometry(3, 5).unwrap();
    let gq3 = build_geometry(3, 3).unwrap();
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };

    // completion round-trip at 10 random base lines per cataloged class
    for (k, cl) in catalog_classes(&g3, &gq3) {
        let g = if k.q() == 3 { &gq3 } else { &g3 };
        let x = verify_cl(g, &cl).unwrap();
        for _ in 0..10 {
            let base = (next() % g.num_lines() as u64) as LineId;
            let mut incident = g.meets[base as usize].clone();
            incident.intersect_with(&cl.lines);
            let back =
                complete_from_incident_set(g, x, base, cl.contains(base), &incident).unwrap();
            assert_eq!(back, cl, "{k:?} completion round-trip at line {base}");
        }
        // a toggled neighbourhood must contradict
        let base = (next() % g.num_lines() as u64) as LineId;
        let mut incident = g.meets[base as usize].clone();
        incident.intersect_with(&cl.lines);
        let victim = incident.iter_ones().next().unwrap();
        incident.set(victim, false);
        assert!(
            complete_from_incident_set(g, x, base, cl.contains(base), &incident).is_err(),
            "{k:?} perturbed neighbourhood must contradict"
        );
    }
    println!("PASS criterion 9c: completion round-trips on every cataloged class");

    // complement / dual involutions and parameter bookkeeping
    let rho5 = polarity(&g3);
    let rho3 = polarity(&gq3);
    for (k, cl) in catalog_classes(&g3, &gq3) {
        let (g, rho) = if k.q() == 3 { (&gq3, &rho3) } else { (&g3, &rho5) };
        let x = verify_cl(g, &cl).unwrap();
        let q = g.q() as u32;
        let co = complement(g, &cl);
        assert_eq!(verify_cl(g, &co), Ok(q * q + 1 - x), "{k:?} complement parameter");
        assert_eq!(complement(g, &co), cl);
        let dual = dualize(g, rho, &cl);
        assert_eq!(verify_cl(g, &dual), Ok(x), "{k:?} dual parameter");
        assert_eq!(dualize(g, rho, &dual), cl);
        // Result 1(c) on 1000 random skew pairs
        let mut checked = 0;
        while checked < 1000 {
            let a = (next() % g.num_lines() as u64) as LineId;
            let b = (next() % g.num_lines() as u64) as LineId;
            if a == b || g.meets[a as usize].get(b as usize) {
                continue;
            }
            let mut both = g.meets[a as usize].clone();
            both.intersect_with(&g.meets[b as usize]);
            both.intersect_with(&cl.lines);
            let expected = x as u64 + q as u64 * (cl.chi(a) + cl.chi(b)) as u64;
            assert_eq!(both.count() as u64, expected, "{k:?} skew pair ({a},{b})");
            checked += 1;
        }
    }
    println!("PASS criterion 9d: complement/dual bookkeeping and skew-pair counts");

    // counting identities and the full symbolic system hold on every
    // cataloged class's measured weights and census
    for (k, cl) in catalog_classes(&g3, &gq3) {
        let g = if k.q() == 3 { &gq3 } else { &g3 };
        let x = verify_cl(g, &cl).unwrap();
        let q = g.q();
        let pw = point_weights(g, &cl);
        let n_res = pw[0] % (q as u32 + 1);
        let partner = (x as i64 - n_res as i64).rem_euclid(q as i64 + 1) as u32;
        let sets = weight_sets(q, x, n_res.min(partner)).unwrap();
        let bundle = build_system(&sets);
        let census = pattern_census(g, &cl, &bundle)
            .expect("catalog censuses lie inside the admissible patterns");
        // weight distribution measured from the class
        let (pts, pls) = weight_profile(g, &cl);
        let dist = WeightDistribution {
            points: sets
                .point_weights
                .iter()
                .map(|&u| (u, *pts.get(&u).unwrap_or(&0) as u64))
                .collect(),
            planes: sets
                .plane_weights
                .iter()
                .map(|&w| (w, *pls.get(&w).unwrap_or(&0) as u64))
                .collect(),
        };
        // identities
        let ids = bundle.identities;
        let total: u64 = dist.points.values().sum();
        assert_eq!(total, ids.total, "{k:?}");
        let flag: u64 = dist.points.iter().map(|(&u, &n)| u as u64 * n).sum();
        assert_eq!(flag, ids.flag_total, "{k:?}");
        let pair: u64 =
            dist.points.iter().map(|(&u, &n)| u as u64 * (u as u64 - 1).max(0) * n).sum();
        assert_eq!(pair, ids.pair_total, "{k:?}");
        // every row of the built system, exactly
        let constant = substitute_distribution(&bundle.system, &dist, &bundle.indets);
        for (row, tag) in constant.rows.iter().zip(&bundle.row_tags) {
            let lhs: pgcl::exact::Rat = row
                .coeffs
                .iter()
                .zip(&census)
                .map(|(c, &z)| c * rat_int(z as i64))
                .sum();
            assert_eq!(
                lhs,
                row.rhs.constant_value().unwrap(),
                "{k:?}: row {tag} violated by the measured census"
            );
        }
        // modular consistency of every weight
        for (&u, &cnt) in &pts {
            if cnt > 0 {
                assert!(
                    sets.point_weights.contains(&u),
                    "{k:?}: point weight {u} outside the admissible set"
                );
            }
        }
    }
    println!("PASS criterion 9e: identities and the full system hold on measured censuses");

    // integer solver equality with boxed brute force on 200 random systems
    let mut state2 = 0xD1B54A32D192ED03u64;
    let mut next2 = move || {
        state2 ^= state2 << 13;
        state2 ^= state2 >> 7;
        state2 ^= state2 << 17;
        state2
    };
    for trial in 0..200 {
        let nvars = 3 + (next2() % 2) as usize; // 3 or 4
        let neqs = 2 + (next2() % 2) as usize;
        let cap = 9u64;
        let eqs: Vec<(Vec<i64>, i64)> = (0..neqs)
            .map(|_| {
                let coeffs: Vec<i64> = (0..nvars).map(|_| (next2() % 9) as i64 - 4).collect();
                (coeffs, (next2() % 25) as i64)
            })
            .collect();
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
        let sols = solve_nonneg_integers(&system, &vec![cap; nvars], &Budget::default())
            .complete()
            .unwrap();
        assert_eq!(sols, brute, "trial {trial}");
    }
    println!("PASS criterion 9f: integer solver agrees with boxed brute force (200 systems)");

    // solve_constant spot checks used by the reduction path
    let sys = SymSystem {
        z_names: vec!["z1".into(), "z2".into()],
        indet_names: vec![],
        rows: vec![SymRow {
            coeffs: vec![rat_int(1), rat_int(1)],
            rhs: SymPoly::constant(rat_int(3)),
        }],
    };
    assert!(matches!(solve_constant(&sys), ConstSolution::Affine { .. }));
    println!("PASS criterion 9: property suites complete");
}

#[test]
fn criterion_10_ab_set_parameters() {
    let p = ab_set_parameters(3, 9, -1, -1).unwrap();
    assert_eq!((p.a, p.b), (2, 5));
    assert_eq!(p.cl_parameter, Some(32));
    let p2 = ab_set_parameters(3, 9, -1, 1).unwrap();
    assert_eq!((p2.a, p2.b), (2, 5));
    assert_eq!(p2.cl_parameter, Some(41));
    for eps in [-1, 1] {
        for delta in [-1, 1] {
            let a = ab_set_parameters(3, 9, eps, delta).unwrap();
            let b = ab_set_parameters(3, 9, -eps, -delta).unwrap();
            assert_eq!(a.size + b.size, projective_point_count(3, 9));
        }
    }
    println!("PASS criterion 10: two-intersection parameters (2,5), classes {{32, 41}}");
}

#[test]
fn criterion_11_x10_report_discrepancy_note() {
    let r = run_pipeline(5, 10, &Budget::default());
    let g = &r.groups[0];
    assert_eq!(g.rank, 16, "rank recorded");
    assert_eq!(g.zero_constraints, 46, "own zero-constraint count recorded");
    assert!(
        g.notes.iter().any(|n| n.contains("62-16=48") && n.contains("inconsistent")),
        "report must flag the reference tally inconsistency"
    );
    println!(
        "PASS criterion 11: (5,10) reports rank 16, {} zero constraints, and flags \
         the 62-16=48 inconsistency",
        g.zero_constraints
    );
}

#[test]
fn catalog_cross_checks() {
    // extra regression on the shipped catalog: the quadric-derived class and
    // its switching partner match the two second-group solutions, and the
    // weight-3 points of the quadric class form a cap with the reference
    // secant/tangent counts
    let g3 = build_geometry(3, 5).unwrap();
    let sets = weight_sets(5, 13, 3).unwrap();
    let bundle = build_system(&sets);
    let map = locate_patterns(
        &bundle,
        &to_matrix_vecs(&tables::X13G2_PATTERNS_IN),
        &to_matrix_vecs(&tables::X13G2_PATTERNS_OUT),
    )
    .unwrap();
    let quadric = catalog::load_known(&g3, catalog::KnownClass::Q5X13Quadric);
    let census: Vec<u64> = {
        let c = pattern_census(&g3, &quadric, &bundle).unwrap();
        map.iter().map(|&i| c[i]).collect()
    };
    assert_eq!(census, tables::X13G2_Z[1].to_vec(), "quadric class is solution #2");
    let switched = catalog::load_known(&g3, catalog::KnownClass::Q5X13Switched);
    let census: Vec<u64> = {
        let c = pattern_census(&g3, &switched, &bundle).unwrap();
        map.iter().map(|&i| c[i]).collect()
    };
    assert_eq!(census, tables::X13G2_Z[0].to_vec(), "switched class is solution #1");

    // 26-cap structure of the weight-3 points
    let pw = point_weights(&g3, &quadric);
    let cap_pts: Vec<u32> =
        (0..g3.num_points() as u32).filter(|&p| pw[p as usize] == 3).collect();
    assert_eq!(cap_pts.len(), 26);
    let cap = cap_analysis(&g3, &cap_pts).expect("weight-3 points form a cap");
    assert!(cap.elliptic_quadric);
    assert_eq!(cap.secant.len(), 325);
    assert_eq!(cap.tangent.len(), 156);

    // the switched class relates to the quadric class by one switching move
    // (already encoded in its provenance); both are inequivalent to the
    // extension class: different censuses
    let ext = catalog::load_known(&g3, catalog::KnownClass::Q5X13Extension);
    assert!(matches!(
        equivalent(&g3, &ext, &quadric, &Budget::default()),
        EquivOutcome::NotEquivalent
    ));
    // weight-0 plane bookkeeping for the x=12 class: the union of the 31
    // weight-6 planes carries 31*6 = 186 class lines
    let r = catalog::load_known(&g3, catalog::KnownClass::Q5X12);
    let pl_w = plane_weights(&g3, &r);
    let mut seen = pgcl::bitset::Bitset::new(g3.num_lines());
    for pl in 0..g3.planes.len() {
        if pl_w[pl] == 6 {
            let mut inside = g3.planes[pl].lines.clone();
            inside.intersect_with(&r.lines);
            assert_eq!(inside.count(), 6);
            seen.union_with(&inside);
        }
    }
    assert_eq!(seen.count(), 186);
    println!("PASS catalog cross-checks: second-group solutions realised and cap structure");
}
