//! JADE on every benchmark density at increasing order.
//!
//! cargo run --release --example corpus_reconstruction

use jade::comparison::{compare, CompareOptions, MethodSpec};
use jade::{CorpusConfig, CorpusDensity, CorpusId};

fn main() -> jade::Result<()> {
    let orders = [10, 20, 50, 100];
    let specs: Vec<MethodSpec> = orders.iter().map(|&n| MethodSpec::Jade { order: Some(n) }).collect();
    print!("{:<18}", "density");
    for n in orders {
        print!("{:>12}", format!("L2 N={n}"));
    }
    println!();
    for id in CorpusId::ALL {
        let d = CorpusDensity::build(id, &CorpusConfig::default())?;
        let c = compare(&d, &specs, &CompareOptions::default())?;
        print!("{:<18}", id.as_str());
        for row in &c.report.methods {
            print!("{:>12.3e}", row.metrics.l2);
        }
        println!();
        if let Some(j) = &c.report.methods.last().and_then(|m| m.jump_locations.clone()) {
            println!("{:<18}steepest slopes at {j:?}", "");
        }
    }
    Ok(())
}
