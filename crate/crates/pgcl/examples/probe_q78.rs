use pgcl::feasibility::Budget;
use pgcl::pipeline::run_pipeline;
fn main() {
    let args: Vec<String> = std::env::args().collect();
    let q: u16 = args[1].parse().unwrap();
    let x: u32 = args[2].parse().unwrap();
    let secs: u64 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(600);
    let t = std::time::Instant::now();
    let r = run_pipeline(q, x, &Budget { max_nodes: 2_000_000_000, max_secs: Some(secs) });
    println!("q={q} x={x}: verdict={:?} sols={} [{:.1}s]", r.verdict, r.total_solutions, t.elapsed().as_secs_f64());
    for g in &r.groups {
        println!("  n={} raw {}/{} closure_empty={} dists={} inconclusive={}",
            g.n_base, g.patterns_in, g.patterns_out, g.support_closure_empty,
            g.distributions.len(), g.inconclusive.is_some());
    }
}
