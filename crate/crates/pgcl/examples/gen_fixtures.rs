use pgcl::classes::{catalog, complement, io::write_pgcl, verify_cl, weight_profile, LineClass};
use pgcl::projgeom::{build_geometry, polarity};
use pgcl::reconstruct::{q3::search_q3_x5, x12::search_x12};
use std::fs::File;
use std::io::BufWriter;
use std::time::Instant;

fn save(path: &str, g: &pgcl::projgeom::Geometry, cl: &LineClass, x: u32) {
    let f = BufWriter::new(File::create(path).unwrap());
    write_pgcl(f, g, cl, x).unwrap();
    println!("wrote {path} (x={x}, {} lines)", cl.size());
}

fn main() {
    let t = Instant::now();
    let g3q3 = build_geometry(3, 3).unwrap();
    let found = search_q3_x5(&g3q3);
    println!("q3 search: {} completions [{:.1}s]", found.len(), t.elapsed().as_secs_f64());
    save("crates/pgcl/fixtures/q3_x5.pgcl", &g3q3, &found[0], 5);

    let g3 = build_geometry(3, 5).unwrap();
    let g2 = build_geometry(2, 5).unwrap();
    let t = Instant::now();
    let out = search_x12(&g3, &g2);
    println!("x12 search: stages {:?}, {} classes [{:.1}s]", out.stage_counts, out.classes.len(), t.elapsed().as_secs_f64());
    let r = &out.classes[0];
    save("crates/pgcl/fixtures/q5_x12.pgcl", &g3, r, 12);
    let rp = catalog::extend_by_empty_plane(&g3, r).unwrap();
    println!("r_plus verify: {:?}", verify_cl(&g3, &rp));
    save("crates/pgcl/fixtures/q5_x13_extension.pgcl", &g3, &rp, 13);

    let t = Instant::now();
    let d = catalog::quadric_half_tangent_class(&g3).expect("quadric class found");
    println!("quadric class: x={:?} [{:.1}s]", verify_cl(&g3, &d), t.elapsed().as_secs_f64());
    let rho_early = polarity(&g3);
    let d = pgcl::classes::dualize(&g3, &rho_early, &d);
    let (pts, pls) = weight_profile(&g3, &d);
    println!("  quadric class profile: points {:?} planes {:?}", pts, pls);
    save("crates/pgcl/fixtures/q5_x13_quadric.pgcl", &g3, &d, 13);

    // the switch partner: scan D, its complement, dual, dual-complement
    let rho = polarity(&g3);
    let t = Instant::now();
    let variants = [
        ("quadric", d.clone()),
        ("dual", pgcl::classes::dualize(&g3, &rho, &d)),
    ];
    let mut p_like = None;
    for (name, v) in &variants {
        if let Some(sw) = catalog::switch_partner(&g3, v) {
            let x = verify_cl(&g3, &sw);
            let (pts, _) = weight_profile(&g3, &sw);
            println!("switch partner of {name}: x={x:?} points {pts:?}");
            p_like = Some(sw);
            break;
        }
        println!("no switch partner from {name}");
    }
    println!("switch scan [{:.1}s]", t.elapsed().as_secs_f64());
    if let Some(p) = p_like {
        save("crates/pgcl/fixtures/q5_x13_switched.pgcl", &g3, &p, 13);
    }
}
