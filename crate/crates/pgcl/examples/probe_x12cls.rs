use pgcl::projgeom::build_geometry;
use pgcl::reconstruct::planecfg::plane_group;
use pgcl::reconstruct::x12::{classify_planar_sections, x12_section_columns};
use std::time::Instant;
fn main() {
    let g2 = build_geometry(2, 5).unwrap();
    let t = Instant::now();
    let group = plane_group(&g2);
    println!("group: {} elements [{:.2}s]", group.order(), t.elapsed().as_secs_f64());
    let (_b, z, cols) = x12_section_columns();
    println!("z = {:?}", z);
    for w in [6u32, 12, 24, 18] {
        let t = Instant::now();
        let cat = classify_planar_sections(&g2, &group, &cols, w);
        println!(
            "weight {w}: {} configs, {} classes (orbit sizes {:?}) [{:.2}s]",
            cat.configs.len(),
            cat.classes.len(),
            cat.classes.iter().map(|(_, m)| m.len()).collect::<Vec<_>>(),
            t.elapsed().as_secs_f64()
        );
    }
}
