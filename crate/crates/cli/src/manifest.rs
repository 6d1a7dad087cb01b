//! Run manifests, written next to artifacts so the artifacts themselves stay
//! byte-identical across reruns.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use tvgraph::generators::{GeneratorSpec, RNG_NAME};

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
pub struct Manifest {
    command: String,
    argv: Vec<String>,
    version: &'static str,
    inputs: Vec<InputDigest>,
    generator: Option<GeneratorSpec>,
    seeds: Vec<u64>,
    rng: &'static str,
    duration_secs: f64,
}

impl Manifest {
    pub fn new(argv: Vec<String>) -> Self {
        Manifest {
            command: String::new(),
            argv,
            version: env!("CARGO_PKG_VERSION"),
            inputs: Vec::new(),
            generator: None,
            seeds: Vec::new(),
            rng: RNG_NAME,
            duration_secs: 0.0,
        }
    }

    pub fn set_command(&mut self, command: &str) {
        self.command = command.to_string();
    }

    pub fn set_generator(&mut self, spec: &GeneratorSpec) {
        self.generator = Some(spec.clone());
    }

    pub fn add_seed(&mut self, seed: u64) {
        if !self.seeds.contains(&seed) {
            self.seeds.push(seed);
        }
    }

    pub fn add_input(&mut self, path: &Path) -> std::io::Result<()> {
        let bytes = std::fs::read(path)?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        Ok(())
    }

    /// Stamps the elapsed time and renders the manifest as JSON.
    pub fn finish(&mut self, started: Instant) -> String {
        self.duration_secs = started.elapsed().as_secs_f64();
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
