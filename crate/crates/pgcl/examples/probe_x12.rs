use pgcl::classes::{verify_cl, weight_profile};
use pgcl::projgeom::build_geometry;
use pgcl::reconstruct::x12::search_x12;
use std::time::Instant;
fn main() {
    let t = Instant::now();
    let g3 = build_geometry(3, 5).unwrap();
    let g2 = build_geometry(2, 5).unwrap();
    println!("geometries [{:.2}s]", t.elapsed().as_secs_f64());
    let out = search_x12(&g3, &g2);
    println!("stage counts = {:?}", out.stage_counts);
    println!("completions = {}, distinct classes = {}", out.completions, out.classes.len());
    for cl in &out.classes {
        let x = verify_cl(&g3, cl).unwrap();
        let (pts, pls) = weight_profile(&g3, cl);
        println!("class: x={x} size={} points={:?} planes={:?}", cl.size(), pts, pls);
    }
    println!("total [{:.2}s]", t.elapsed().as_secs_f64());
}
