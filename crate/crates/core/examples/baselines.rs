//! JADE against Gram-Charlier and a Gaussian KDE at the benchmark orders.
//!
//! cargo run --release --example baselines

use jade::comparison::{compare, CompareOptions, MethodSpec};
use jade::{CorpusConfig, CorpusDensity, CorpusId};

fn main() -> jade::Result<()> {
    for id in [CorpusId::BimodalPoly, CorpusId::MultimodalGauss, CorpusId::AsymUniform, CorpusId::Sigmoid] {
        let d = CorpusDensity::build(id, &CorpusConfig::default())?;
        let specs = [
            MethodSpec::Jade { order: Some(id.paper_order()) },
            MethodSpec::GramCharlier { cumulants: 10 },
            MethodSpec::Kde { samples: 10_000 },
        ];
        let c = compare(&d, &specs, &CompareOptions::default())?;
        println!("{id}");
        for (row, est) in c.report.methods.iter().zip(&c.estimates) {
            println!("  {:<20} L2 {:.3e}  min {:+.3e}", row.label, row.metrics.l2, est.min());
        }
    }
    Ok(())
}
