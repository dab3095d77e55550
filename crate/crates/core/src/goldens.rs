//! Frozen regression thresholds. Each value is measured once by the
//! pipeline itself, checked into `tests/data/goldens.json`, and later runs
//! must stay within `value * (1 + slack)`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::comparison::{compare, spectrum_convergence, CompareOptions, MethodSpec, SpectrumOptions};
use crate::corpus::{CorpusConfig, CorpusDensity, CorpusId};
use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::spectral::SpectralProblem;

/// Relative regression slack of every golden.
pub const GOLDEN_SLACK: f64 = 0.10;

/// The four benchmark cases of the baseline comparison.
pub const FIGURE_CASES: [CorpusId; 4] = [
    CorpusId::BimodalPoly,
    CorpusId::MultimodalGauss,
    CorpusId::AsymUniform,
    CorpusId::Sigmoid,
];

/// Orders of the spectral convergence study.
pub const SPECTRAL_ORDERS: [usize; 3] = [20, 50, 100];

/// Dimension and seed of the spectral golden problem.
pub const SPECTRAL_DIM: usize = 64;
pub const SPECTRAL_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Golden {
    pub value: f64,
    pub slack: f64,
    pub description: String,
}

impl Golden {
    pub fn limit(&self) -> f64 {
        self.value * (1.0 + self.slack)
    }

    pub fn accepts(&self, measured: f64) -> bool {
        measured <= self.limit()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GoldenManifest {
    pub goldens: BTreeMap<String, Golden>,
}

impl GoldenManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: format!("line {}, column {}: {e}", e.line(), e.column()),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, (serde_json::to_string_pretty(self)? + "\n").as_bytes())
    }

    pub fn get(&self, name: &str) -> Result<&Golden> {
        self.goldens
            .get(name)
            .ok_or_else(|| Error::InvalidParameter(format!("no golden named `{name}`")))
    }

    fn insert(&mut self, name: String, value: f64, description: String) {
        self.goldens.insert(
            name,
            Golden {
                value,
                slack: GOLDEN_SLACK,
                description,
            },
        );
    }
}

/// Location of the checked-in manifest.
pub fn default_manifest_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/goldens.json")
}

pub fn jade_l2_key(id: CorpusId) -> String {
    format!("figure/{id}/jade-l2")
}

pub fn gram_charlier_l2_key(id: CorpusId) -> String {
    format!("figure/{id}/gram-charlier-10-l2")
}

pub fn spectral_l1_key(order: usize) -> String {
    format!("spectral/jade-{order}-l1")
}

/// Grid L2 errors of JADE at the benchmark order and of the 10-cumulant
/// Gram-Charlier series, for one corpus case.
pub fn figure_errors(id: CorpusId, options: &CompareOptions) -> Result<(f64, f64)> {
    let reference = CorpusDensity::build(id, &CorpusConfig::default())?;
    let c = compare(
        &reference,
        &[
            MethodSpec::Jade { order: None },
            MethodSpec::GramCharlier { cumulants: 10 },
        ],
        options,
    )?;
    let l2 = |i: usize| c.report.methods[i].metrics.l2;
    Ok((l2(0), l2(1)))
}

/// L1 errors of the seeded spectral problem at each order.
pub fn spectral_errors() -> Result<Vec<(usize, f64)>> {
    let p = SpectralProblem::random(SPECTRAL_DIM, SPECTRAL_SEED)?;
    let run = spectrum_convergence(
        &p,
        &SpectrumOptions {
            orders: SPECTRAL_ORDERS.to_vec(),
            ..SpectrumOptions::default()
        },
    )?;
    Ok(run
        .report
        .convergence
        .iter()
        .map(|row| (row.order, row.metrics.l1))
        .collect())
}

/// Measures every golden afresh.
pub fn compute_goldens() -> Result<GoldenManifest> {
    let mut m = GoldenManifest::default();
    let options = CompareOptions::default();
    for id in FIGURE_CASES {
        let (jade, gc) = figure_errors(id, &options)?;
        m.insert(
            jade_l2_key(id),
            jade,
            format!("grid L2 error of JADE with {} moments on {id}", id.paper_order()),
        );
        m.insert(
            gram_charlier_l2_key(id),
            gc,
            format!("grid L2 error of Gram-Charlier with 10 cumulants on {id}"),
        );
    }
    for (order, l1) in spectral_errors()? {
        m.insert(
            spectral_l1_key(order),
            l1,
            format!(
                "L1 error of broadened JADE with {order} moments, seeded {SPECTRAL_DIM}x{SPECTRAL_DIM} problem"
            ),
        );
    }
    Ok(m)
}
