use pgcl::classes::{complement, dualize, io::read_pgcl, pattern_census, verify_cl};
use pgcl::countsys::{build_system, locate_patterns};
use pgcl::patterns::weight_sets;
use pgcl::projgeom::{build_geometry, polarity};
use pgcl::tables;
use std::fs::File;
use std::io::BufReader;

fn main() {
    let g3 = build_geometry(3, 5).unwrap();
    let rho = polarity(&g3);
    let load = |p: &str| read_pgcl(BufReader::new(File::open(p).unwrap()), &g3).unwrap().0;

    // x=12: census of R against the solution table
    let r = load("crates/pgcl/fixtures/q5_x12_r.pgcl");
    let sets12 = weight_sets(5, 12, 0).unwrap();
    let b12 = build_system(&sets12);
    let mats_in: Vec<Vec<Vec<u8>>> = tables::X12_PATTERNS_IN.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
    let mats_out: Vec<Vec<Vec<u8>>> = tables::X12_PATTERNS_OUT.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
    let map12 = locate_patterns(&b12, &mats_in, &mats_out).unwrap();
    let census = pattern_census(&g3, &r, &b12).unwrap();
    let in_ref_order: Vec<u64> = map12.iter().map(|&i| census[i]).collect();
    println!("R census (reference order) = {:?}", in_ref_order);
    println!("expected                   = {:?}", tables::X12_Z);
    let others: u64 = census.iter().sum::<u64>() - in_ref_order.iter().sum::<u64>();
    println!("sum over unlisted patterns = {others}");

    // x=13 group 1: R+ against solution #3
    let rp = load("crates/pgcl/fixtures/q5_x13_rplus.pgcl");
    let sets131 = weight_sets(5, 13, 0).unwrap();
    let b131 = build_system(&sets131);
    let mi: Vec<Vec<Vec<u8>>> = tables::X13G1_PATTERNS_IN.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
    let mo: Vec<Vec<Vec<u8>>> = tables::X13G1_PATTERNS_OUT.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
    let map131 = locate_patterns(&b131, &mi, &mo).unwrap();
    let census = pattern_census(&g3, &rp, &b131).unwrap();
    let in_ref: Vec<u64> = map131.iter().map(|&i| census[i]).collect();
    println!("R+ census = {:?}", in_ref);
    println!("expected  = {:?}", tables::X13G1_Z[2]);

    // x=13 group 2: which D/P variant matches which solution row
    let sets132 = weight_sets(5, 13, 3).unwrap();
    let b132 = build_system(&sets132);
    let mi: Vec<Vec<Vec<u8>>> = tables::X13G2_PATTERNS_IN.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
    let mo: Vec<Vec<Vec<u8>>> = tables::X13G2_PATTERNS_OUT.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
    let map132 = locate_patterns(&b132, &mi, &mo).unwrap();
    let d = load("crates/pgcl/fixtures/q5_x13_d.pgcl");
    let p = load("crates/pgcl/fixtures/q5_x13_p.pgcl");
    for (name, cl) in [("D", d.clone()), ("D-dual", dualize(&g3, &rho, &d)), ("P", p.clone()), ("P-dual", dualize(&g3, &rho, &p))] {
        print!("{name}: x={:?} ", verify_cl(&g3, &cl));
        match pattern_census(&g3, &cl, &b132) {
            Some(c) => {
                let in_ref: Vec<u64> = map132.iter().map(|&i| c[i]).collect();
                println!("census = {:?}", in_ref);
            }
            None => println!("census not in group-2 patterns"),
        }
    }
    println!("row1 = {:?}", tables::X13G2_Z[0]);
    println!("row2 = {:?}", tables::X13G2_Z[1]);
    let _ = complement;
}
