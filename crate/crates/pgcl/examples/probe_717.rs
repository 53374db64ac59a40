use pgcl::countsys::build_system;
use pgcl::exact::rref_symbolic;
use pgcl::patterns::weight_sets;
fn main() {
    let sets = weight_sets(7, 17, 0).unwrap();
    let b = build_system(&sets);
    let red = rref_symbolic(&b.system);
    println!("unknowns={} rank={} zero={}", b.num_unknowns(), red.rank, red.zero_constraints.len());
    let names = |id: u32| b.system.indet_name(id);
    let mut shapes = std::collections::BTreeMap::new();
    for zc in &red.zero_constraints {
        let vars = zc.indeterminates().len();
        let deg = zc.degree();
        *shapes.entry((deg, vars)).or_insert(0) += 1;
    }
    println!("zero-constraint shapes (degree, #vars): {:?}", shapes);
    for zc in red.zero_constraints.iter().take(25) {
        println!("  0 = {}", zc.render(&names));
    }
}
