// Enumerate exchange graphs and count clusters and variables.

use qcluster::seed::enumerate_exchange_graph;
use qcluster::Sl2Instance;

pub fn run_example() -> qcluster::Result<()> {
    for n in 1..=4 {
        let inst = Sl2Instance::build(n)?;
        let graph = enumerate_exchange_graph(inst.initial_seed(), 10_000)?;
        println!(
            "n = {n}: {} clusters, {} variables, {} edges",
            graph.cluster_count(),
            graph.variable_count(),
            graph.edges.len()
        );
        assert_eq!(graph.variable_count(), (n + 1) * (n + 2) / 2);
    }
    let small = enumerate_exchange_graph(Sl2Instance::build(2)?.initial_seed(), 2)?;
    println!("capped at 2 seeds: truncated = {}", small.truncated);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("enumeration example failed");
}
