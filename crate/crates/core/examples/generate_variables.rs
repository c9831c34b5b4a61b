// Express the initial cluster and every cluster variable in the generators.

use qcluster::grothendieck::{check_kr_labels, express_in_generators, iota};
use qcluster::seed::enumerate_exchange_graph;
use qcluster::Sl2Instance;

pub fn run_example() -> qcluster::Result<()> {
    let inst = Sl2Instance::build(3)?;
    for id in inst.express_y_in_x()? {
        println!("{} = {}", id.target, id.expression);
    }

    let graph = enumerate_exchange_graph(inst.initial_seed(), 1_000)?;
    for v in &graph.variables {
        let g = express_in_generators(&inst, v)?;
        assert_eq!(&iota(&inst, &g)?, v);
        println!("{}  =  {g}", v.pretty("Y"));
    }

    for c in check_kr_labels(&inst)? {
        println!(
            "position {} ~ {} (longest word {:?})",
            c.position, c.label, c.longest_words
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("generation example failed");
}
