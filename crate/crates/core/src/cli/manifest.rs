use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::config::ParsedConfig;
use crate::error::Result;

pub const TOOL: &str = "qgk";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance block embedded in every output. It carries no timestamps, so
/// identical inputs give byte-identical files.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentManifest {
    pub command: String,
    /// Canonical resolved config text, when the command read one.
    pub config: Option<String>,
    pub config_hash: Option<String>,
    pub seed: Option<u64>,
    /// Command-line parameters that are not part of a config.
    pub parameters: Vec<(String, String)>,
    pub inputs: Vec<(PathBuf, String)>,
    pub outputs: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

impl ExperimentManifest {
    pub fn new(command: impl Into<String>) -> Self {
        ExperimentManifest {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn with_config(mut self, parsed: &ParsedConfig) -> Self {
        self.config = Some(parsed.canonical.clone());
        self.config_hash = Some(parsed.hash.clone());
        self.seed = Some(parsed.config.seed);
        self.inputs.extend(parsed.inputs.iter().cloned());
        self.add_warnings(&parsed.warnings);
        self
    }

    pub fn parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn add_warnings(&mut self, warnings: &[String]) {
        for w in warnings {
            if !self.warnings.contains(w) {
                self.warnings.push(w.clone());
            }
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "tool: {TOOL} {VERSION}");
        let _ = writeln!(s, "command: {}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "param: {k} = {v}");
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        if let Some(h) = &self.config_hash {
            let _ = writeln!(s, "config_sha256: {h}");
        }
        if let Some(c) = &self.config {
            for line in c.lines() {
                let _ = writeln!(s, "config: {line}");
            }
        }
        for (p, h) in &self.inputs {
            let _ = writeln!(s, "input: {} sha256={h}", p.display());
        }
        for p in &self.outputs {
            let _ = writeln!(s, "output: {}", p.display());
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }

    /// The manifest as `# `-prefixed lines for the top of a CSV file.
    pub fn csv_comment(&self) -> String {
        self.render().lines().map(|l| format!("# {l}\n")).collect()
    }

    /// Writes `<path>.manifest` next to a binary output.
    pub fn write_sidecar(&self, path: &Path) -> Result<PathBuf> {
        let mut name = path.as_os_str().to_owned();
        name.push(".manifest");
        let side = PathBuf::from(name);
        std::fs::write(&side, self.render())?;
        Ok(side)
    }

    /// Writes a CSV file with the manifest as a comment header.
    pub fn write_csv(&self, path: &Path, body: &str) -> Result<()> {
        let mut text = self.csv_comment();
        text.push_str(body);
        std::fs::write(path, text)?;
        Ok(())
    }
}
