use pgcl::countsys::build_system;
use pgcl::exact::rref_symbolic;
use pgcl::feasibility::*;
use pgcl::patterns::weight_sets;
use pgcl::pipeline::z_caps;
use pgcl::projgeom::build_geometry;
use pgcl::reconstruct::bset::{constraint_from_solution, search_quotient_bsets};
use pgcl::tables;
use std::time::Instant;
fn main() {
    let g2 = build_geometry(2, 5).unwrap();
    let sets = weight_sets(5, 13, 0).unwrap();
    let bundle = build_system(&sets);
    let red = rref_symbolic(&bundle.system);
    let dists = enumerate_weight_distributions(&bundle.identities, &red.zero_constraints, &sets, &bundle.indets, &Budget::default()).complete().unwrap();
    println!("x13 group1 distributions: {}", dists.len());
    let caps = z_caps(&bundle);
    let mut solutions = Vec::new();
    for d in &dists {
        let constant = substitute_distribution(&red.reduced, d, &bundle.indets);
        for z in solve_nonneg_integers(&constant, &caps, &Budget::default()).complete().unwrap() {
            println!("  dist {:?} -> z {:?}", d.point_vector(), z);
            solutions.push(z);
        }
    }
    // the two solutions with a forced unique pattern (count 1, class side)
    for (si, z) in solutions.iter().enumerate() {
        let c = constraint_from_solution(&bundle, z);
        if c.unique_row.is_none() {
            println!("solution #{si}: no unique distinguished row, skipping");
            continue;
        }
        println!("solution #{si}: sel rows {:?}", c.selected_rows);
        println!("             unsel rows {:?}", c.unselected_rows);
        println!("             unique {:?}", c.unique_row);
        let t = Instant::now();
        let found = search_quotient_bsets(&g2, &c);
        println!("  -> {} sets [{:.1}s]", found.len(), t.elapsed().as_secs_f64());
    }
    let _ = tables::BSET_ROWS_IN;
}
