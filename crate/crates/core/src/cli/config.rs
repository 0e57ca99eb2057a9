//! Flat `key = value` experiment files.
//!
//! Blank lines and lines starting with `#` are ignored; a `#` after a value
//! starts a trailing comment. Every key may appear once. Relative paths are
//! resolved against the directory holding the config file.
//!
//! | key | default | meaning |
//! |-----|---------|---------|
//! | `grid.n` | required | points per side, even |
//! | `grid.box_length` | required | side `L` |
//! | `grid.dealias` | `three_halves` | or `two_thirds` |
//! | `mu` | required | viscosity, `≥ 0` |
//! | `dt`, `t_end` | required | `t_end` must be a multiple of `dt` |
//! | `stepper` | `if_rk4` | `if_rk2`, `etd_rk4` |
//! | `galerkin_cut` | none | sharp cut `|ξ|² ≤ n` |
//! | `nonlinear` | `true` | `false` drops the transport term |
//! | `seed` / `ic.seed` | `0` | aliases; conflicting values are rejected |
//! | `diagnostics_every` | `1` | steps between time-series rows |
//! | `snapshot_every` | none | steps between snapshots |
//! | `diagnostics.sigma`, `diagnostics.s` | empty | comma lists |
//! | `ic.kind` | `zero` | see below |
//! | `forcing.kind` | `zero` | `separable_decaying`, `tabulated` |
//! | `forcing.k`, `forcing.eta` | required if separable | `K > 0`, `η ∈ (0,1)` |
//! | `forcing.g.*` | | spatial profile, same keys as `ic.*` |
//! | `forcing.table` | required if tabulated | file of `time snapshot-path` lines |
//!
//! Field sources (`ic.kind`, `forcing.g.kind`) and their keys:
//! `zero`; `cosine` (`k1 = 1`, `k2 = 0`, `amplitude = 1`); `gaussian` and
//! `laplacian_gaussian` (`amplitude = 1`, `width = 1`, `width_y = width`);
//! `random` (`kmin = 1`, `kmax` required, `s = 3`, `norm = 1`, the `H^s`
//! norm); `analytic` (`decay = 1`, `norm = 1`, the `H³` norm); `file`
//! (`file`, a snapshot). A random forcing profile draws from the stream
//! seeded with `seed + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::evolution::{cfl_number, ForcingSpec, InitialCondition, RunConfig, Stepper, CFL_LIMIT};
use crate::spectral::random::BandSpec;
use crate::spectral::{snapshot, DealiasPolicy, GridSpec, SpectralField};

const KNOWN: &[&str] = &[
    "grid.n",
    "grid.box_length",
    "grid.dealias",
    "mu",
    "dt",
    "t_end",
    "stepper",
    "galerkin_cut",
    "nonlinear",
    "seed",
    "diagnostics_every",
    "snapshot_every",
    "diagnostics.sigma",
    "diagnostics.s",
    "forcing.kind",
    "forcing.k",
    "forcing.eta",
    "forcing.table",
];

const SOURCE_KEYS: &[&str] = &[
    "kind",
    "amplitude",
    "width",
    "width_y",
    "k1",
    "k2",
    "kmin",
    "kmax",
    "s",
    "norm",
    "decay",
    "file",
    "seed",
];

fn is_known(key: &str) -> bool {
    if KNOWN.contains(&key) {
        return true;
    }
    for prefix in ["ic.", "forcing.g."] {
        if let Some(rest) = key.strip_prefix(prefix) {
            return SOURCE_KEYS.contains(&rest) && !(prefix == "forcing.g." && rest == "seed");
        }
    }
    false
}

/// A parsed and resolved experiment file.
#[derive(Clone, Debug)]
pub struct ParsedConfig {
    pub config: RunConfig,
    /// Every setting after defaults, one sorted `key = value` per line.
    pub canonical: String,
    /// Hex SHA-256 of [`ParsedConfig::canonical`].
    pub hash: String,
    /// Files read while resolving, with their hex SHA-256.
    pub inputs: Vec<(PathBuf, String)>,
    pub warnings: Vec<String>,
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<ParsedConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut parsed = parse_config_str(&text, base)?;
    parsed
        .inputs
        .insert(0, (path.to_path_buf(), sha256_hex(text.as_bytes())));
    Ok(parsed)
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Entry {
    value: String,
    line: usize,
}

struct Reader {
    entries: BTreeMap<String, Entry>,
    used: BTreeSet<String>,
    resolved: BTreeMap<String, String>,
    base: PathBuf,
    inputs: Vec<(PathBuf, String)>,
}

impl Reader {
    fn line_of(&self, key: &str) -> usize {
        self.entries.get(key).map_or(0, |e| e.line)
    }

    fn err(&self, key: &str, message: impl Into<String>) -> Error {
        Error::config(key, self.line_of(key), message)
    }

    fn raw(&mut self, key: &str) -> Option<(String, usize)> {
        self.used.insert(key.to_string());
        self.entries.get(key).map(|e| (e.value.clone(), e.line))
    }

    fn parse_as<T: std::str::FromStr>(&mut self, key: &str, what: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((v, line)) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::config(key, line, format!("`{v}` is not {what}"))),
        }
    }

    fn real(&mut self, key: &str) -> Result<Option<f64>> {
        let v = self.parse_as::<f64>(key, "a number")?;
        if let Some(x) = v {
            if !x.is_finite() {
                return Err(self.err(key, "must be finite"));
            }
        }
        Ok(v)
    }

    fn required_real(&mut self, key: &str) -> Result<f64> {
        self.real(key)?
            .ok_or_else(|| Error::config(key, 0, "required key is missing"))
    }

    fn check(&self, key: &str, ok: bool, message: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(self.err(key, message))
        }
    }

    fn set(&mut self, key: &str, value: impl ToString) {
        self.resolved.insert(key.to_string(), value.to_string());
    }

    fn real_list(&mut self, key: &str) -> Result<Vec<f64>> {
        let Some((v, line)) = self.raw(key) else {
            return Ok(Vec::new());
        };
        v.split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| match s.parse::<f64>() {
                Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
                _ => Err(Error::config(
                    key,
                    line,
                    format!("`{s}` is not a nonnegative number"),
                )),
            })
            .collect()
    }

    fn path(&mut self, key: &str) -> Result<PathBuf> {
        let (v, _) = self
            .raw(key)
            .ok_or_else(|| Error::config(key, 0, "required key is missing"))?;
        let p = Path::new(&v);
        self.set(key, &v);
        Ok(if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        })
    }

    fn load_snapshot(&mut self, key: &str, path: &Path) -> Result<(SpectralField, f64)> {
        let bytes =
            std::fs::read(path).map_err(|e| self.err(key, format!("cannot read {}: {e}", path.display())))?;
        let hash = sha256_hex(&bytes);
        let out = snapshot::read_snapshot(bytes.as_slice())
            .map_err(|e| self.err(key, format!("{}: {e}", path.display())))?;
        // the content hash goes into the canonical text so edits to the
        // referenced file change the config hash
        self.set(&format!("{key}.sha256"), &hash);
        self.inputs.push((path.to_path_buf(), hash));
        Ok(out)
    }

    /// Reads a field source under `prefix` (`ic.` or `forcing.g.`).
    fn source(&mut self, prefix: &str, grid: GridSpec) -> Result<InitialCondition> {
        let k = |name: &str| format!("{prefix}{name}");
        let kind_key = k("kind");
        let kind = self.raw(&kind_key).map(|v| v.0).unwrap_or_else(|| {
            if prefix == "ic." {
                "zero"
            } else {
                "laplacian_gaussian"
            }
            .to_string()
        });
        self.set(&kind_key, &kind);
        let ic = match kind.as_str() {
            "zero" => InitialCondition::Zero,
            "cosine" => {
                let k1 = self.parse_as::<i64>(&k("k1"), "an integer")?.unwrap_or(1);
                let k2 = self.parse_as::<i64>(&k("k2"), "an integer")?.unwrap_or(0);
                let amplitude = self.real(&k("amplitude"))?.unwrap_or(1.0);
                let half = grid.n() as i64 / 2;
                self.check(
                    &k("k1"),
                    k1.abs() < half && k2.abs() < half,
                    "mode is not resolved on this grid",
                )?;
                self.set(&k("k1"), k1);
                self.set(&k("k2"), k2);
                self.set(&k("amplitude"), amplitude);
                InitialCondition::Cosine { k1, k2, amplitude }
            }
            "gaussian" | "laplacian_gaussian" => {
                let amplitude = self.real(&k("amplitude"))?.unwrap_or(1.0);
                let w = self.real(&k("width"))?.unwrap_or(1.0);
                self.check(&k("width"), w > 0.0, "must be > 0")?;
                let wy = self.real(&k("width_y"))?.unwrap_or(w);
                self.check(&k("width_y"), wy > 0.0, "must be > 0")?;
                self.set(&k("amplitude"), amplitude);
                self.set(&k("width"), w);
                self.set(&k("width_y"), wy);
                if kind == "gaussian" {
                    InitialCondition::Gaussian {
                        amplitude,
                        widths: [w, wy],
                    }
                } else {
                    InitialCondition::LaplacianGaussian {
                        amplitude,
                        widths: [w, wy],
                    }
                }
            }
            "random" => {
                let k_min = self.real(&k("kmin"))?.unwrap_or(1.0);
                let k_max = self
                    .real(&k("kmax"))?
                    .ok_or_else(|| Error::config(k("kmax"), 0, "required for random fields"))?;
                let s = self.real(&k("s"))?.unwrap_or(3.0);
                let norm = self.real(&k("norm"))?.unwrap_or(1.0);
                self.check(&k("kmin"), k_min >= 0.0, "must be ≥ 0")?;
                self.check(&k("kmax"), k_max >= k_min, "must be ≥ kmin")?;
                self.check(&k("norm"), norm >= 0.0, "must be ≥ 0")?;
                self.set(&k("kmin"), k_min);
                self.set(&k("kmax"), k_max);
                self.set(&k("s"), s);
                self.set(&k("norm"), norm);
                InitialCondition::Random(BandSpec {
                    k_min,
                    k_max,
                    s,
                    hs_norm: norm,
                })
            }
            "analytic" => {
                let decay = self.real(&k("decay"))?.unwrap_or(1.0);
                let norm = self.real(&k("norm"))?.unwrap_or(1.0);
                self.check(&k("decay"), decay > 0.0, "must be > 0")?;
                self.check(&k("norm"), norm >= 0.0, "must be ≥ 0")?;
                self.set(&k("decay"), decay);
                self.set(&k("norm"), norm);
                InitialCondition::Analytic { decay, h3_norm: norm }
            }
            "file" => {
                let p = self.path(&k("file"))?;
                let (field, _) = self.load_snapshot(&k("file"), &p)?;
                if field.grid() != &grid {
                    return Err(self.err(&k("file"), "snapshot grid differs from the configured grid"));
                }
                InitialCondition::Field(field)
            }
            other => return Err(self.err(&kind_key, format!("unknown field source `{other}`"))),
        };
        Ok(ic)
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

/// Parses config text; relative paths resolve against `base`.
pub fn parse_config_str(text: &str, base: &Path) -> Result<ParsedConfig> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Error::config(content, line, "expected `key = value`"))?;
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        if !is_known(&key) {
            return Err(Error::config(key, line, "unknown key"));
        }
        if value.is_empty() {
            return Err(Error::config(key, line, "empty value"));
        }
        if let Some(prev) = entries.get(&key) {
            return Err(Error::config(
                key,
                line,
                format!("duplicate key, first set on line {}", prev.line),
            ));
        }
        entries.insert(key, Entry { value, line });
    }

    let mut r = Reader {
        entries,
        used: BTreeSet::new(),
        resolved: BTreeMap::new(),
        base: base.to_path_buf(),
        inputs: Vec::new(),
    };

    let n = r
        .parse_as::<usize>("grid.n", "a positive integer")?
        .ok_or_else(|| Error::config("grid.n", 0, "required key is missing"))?;
    r.check("grid.n", n >= 4 && n % 2 == 0, "must be an even integer ≥ 4")?;
    let box_length = r.required_real("grid.box_length")?;
    r.check("grid.box_length", box_length > 0.0, "must be > 0")?;
    let dealias = match r.raw("grid.dealias") {
        None => DealiasPolicy::default(),
        Some((v, line)) => v
            .parse::<DealiasPolicy>()
            .map_err(|e| Error::config("grid.dealias", line, e.to_string()))?,
    };
    let grid = GridSpec::new(n, box_length)
        .map_err(|e| r.err("grid.n", e.to_string()))?
        .with_dealias(dealias);
    r.set("grid.n", n);
    r.set("grid.box_length", box_length);
    r.set("grid.dealias", dealias.as_str());

    let mu = r.required_real("mu")?;
    r.check("mu", mu >= 0.0, "must be ≥ 0")?;
    let dt = r.required_real("dt")?;
    r.check("dt", dt > 0.0, "must be > 0")?;
    let t_end = r.required_real("t_end")?;
    r.check("t_end", t_end > 0.0, "must be > 0")?;
    r.set("mu", mu);
    r.set("dt", dt);
    r.set("t_end", t_end);

    let mut cfg = RunConfig::new(grid, mu, dt, t_end);
    cfg.steps().map_err(|e| r.err("t_end", e.to_string()))?;

    if let Some((v, line)) = r.raw("stepper") {
        cfg.stepper = v
            .parse::<Stepper>()
            .map_err(|e| Error::config("stepper", line, e.to_string()))?;
    }
    r.set("stepper", cfg.stepper);

    if let Some(c) = r.real("galerkin_cut")? {
        r.check("galerkin_cut", c > 0.0, "must be > 0")?;
        cfg.galerkin_cut = Some(c);
        r.set("galerkin_cut", c);
    }
    if let Some((v, line)) = r.raw("nonlinear") {
        cfg.nonlinear = parse_bool(&v)
            .ok_or_else(|| Error::config("nonlinear", line, format!("`{v}` is not a boolean")))?;
    }
    r.set("nonlinear", cfg.nonlinear);

    let seed = r.parse_as::<u64>("seed", "an unsigned integer")?;
    let ic_seed = r.parse_as::<u64>("ic.seed", "an unsigned integer")?;
    cfg.seed = match (seed, ic_seed) {
        (Some(a), Some(b)) if a != b => {
            return Err(r.err("ic.seed", format!("conflicts with seed = {a}")));
        }
        (a, b) => a.or(b).unwrap_or(0),
    };
    r.set("seed", cfg.seed);

    if let Some(k) = r.parse_as::<usize>("diagnostics_every", "a positive integer")? {
        r.check("diagnostics_every", k >= 1, "must be ≥ 1")?;
        cfg.diagnostics_every = k;
    }
    r.set("diagnostics_every", cfg.diagnostics_every);
    if let Some(k) = r.parse_as::<usize>("snapshot_every", "a positive integer")? {
        r.check("snapshot_every", k >= 1, "must be ≥ 1")?;
        cfg.snapshot_every = Some(k);
        r.set("snapshot_every", k);
    }
    cfg.sigmas = r.real_list("diagnostics.sigma")?;
    cfg.tilde_s = r.real_list("diagnostics.s")?;
    let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    if !cfg.sigmas.is_empty() {
        let v = join(&cfg.sigmas);
        r.set("diagnostics.sigma", v);
    }
    if !cfg.tilde_s.is_empty() {
        let v = join(&cfg.tilde_s);
        r.set("diagnostics.s", v);
    }

    let ic = r.source("ic.", grid)?;
    let r0 = ic
        .build(grid, cfg.seed)
        .map_err(|e| r.err("ic.kind", e.to_string()))?;
    cfg.initial_condition = ic;

    let fkind = r
        .raw("forcing.kind")
        .map(|v| v.0)
        .unwrap_or_else(|| "zero".into());
    r.set("forcing.kind", &fkind);
    cfg.forcing = match fkind.as_str() {
        "zero" => ForcingSpec::Zero,
        "separable_decaying" => {
            let k = r.required_real("forcing.k")?;
            r.check("forcing.k", k > 0.0, "must be > 0")?;
            let eta = r.required_real("forcing.eta")?;
            r.check("forcing.eta", eta > 0.0 && eta < 1.0, "must lie in (0, 1)")?;
            r.set("forcing.k", k);
            r.set("forcing.eta", eta);
            let g = r.source("forcing.g.", grid)?;
            let profile = g
                .build(grid, cfg.seed.wrapping_add(1))
                .map_err(|e| r.err("forcing.g.kind", e.to_string()))?;
            ForcingSpec::separable(profile, k, eta).map_err(|e| r.err("forcing.kind", e.to_string()))?
        }
        "tabulated" => {
            let table = r.path("forcing.table")?;
            tabulated(&mut r, &table, grid)?
        }
        other => return Err(r.err("forcing.kind", format!("unknown forcing kind `{other}`"))),
    };

    // keys present in the file but irrelevant to the chosen kinds
    let unused: Vec<&String> = r.entries.keys().filter(|k| !r.used.contains(*k)).collect();
    if let Some(key) = unused.first() {
        return Err(r.err(key, "not used by the selected kinds"));
    }

    cfg.validate()
        .map_err(|e| Error::config("config", 0, e.to_string()))?;

    let mut warnings = Vec::new();
    if mu == 0.0 {
        warnings.push("mu = 0: inviscid run, stability is not certified".to_string());
    }
    if cfg.nonlinear {
        let cfl = cfl_number(&r0, dt);
        if cfl > CFL_LIMIT {
            warnings.push(format!(
                "initial CFL number {cfl:.3e} exceeds {CFL_LIMIT} for dt = {dt}"
            ));
        }
    }

    let mut canonical = String::new();
    for (k, v) in &r.resolved {
        let _ = writeln!(canonical, "{k} = {v}");
    }
    let hash = sha256_hex(canonical.as_bytes());
    Ok(ParsedConfig {
        config: cfg,
        canonical,
        hash,
        inputs: r.inputs,
        warnings,
    })
}

fn tabulated(r: &mut Reader, table: &Path, grid: GridSpec) -> Result<ForcingSpec> {
    let key = "forcing.table";
    let text = std::fs::read_to_string(table)
        .map_err(|e| r.err(key, format!("cannot read {}: {e}", table.display())))?;
    r.inputs.push((table.to_path_buf(), sha256_hex(text.as_bytes())));
    let dir = table.parent().unwrap_or(Path::new(".")).to_path_buf();
    let mut times = Vec::new();
    let mut fields = Vec::new();
    let mut digest = String::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        let (Some(t), Some(p), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(r.err(key, format!("table line {}: expected `time path`", i + 1)));
        };
        let t: f64 = t
            .parse()
            .map_err(|_| r.err(key, format!("table line {}: bad time `{t}`", i + 1)))?;
        let path = if Path::new(p).is_absolute() {
            PathBuf::from(p)
        } else {
            dir.join(p)
        };
        let bytes =
            std::fs::read(&path).map_err(|e| r.err(key, format!("cannot read {}: {e}", path.display())))?;
        let hash = sha256_hex(&bytes);
        let (field, _) = snapshot::read_snapshot(bytes.as_slice())
            .map_err(|e| r.err(key, format!("{}: {e}", path.display())))?;
        if field.grid() != &grid {
            return Err(r.err(
                key,
                format!("{}: grid differs from the configured grid", path.display()),
            ));
        }
        let _ = write!(digest, "{t}:{hash};");
        r.inputs.push((path, hash));
        times.push(t);
        fields.push(field);
    }
    r.set("forcing.table.sha256", sha256_hex(digest.as_bytes()));
    ForcingSpec::tabulated(times, fields).map_err(|e| r.err(key, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "grid.n=64\ngrid.box_length=6.2831853\nmu=1.0\ndt=1e-3\nt_end=1.0\n";

    fn parse(text: &str) -> Result<ParsedConfig> {
        parse_config_str(text, Path::new("."))
    }

    fn config_error(text: &str) -> (String, usize) {
        match parse(text) {
            Err(Error::Config { key, line, .. }) => (key, line),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let p = parse(MINIMAL).unwrap();
        let c = &p.config;
        assert_eq!(c.grid.n(), 64);
        assert_eq!(c.stepper, Stepper::IfRk4);
        assert_eq!(c.forcing, ForcingSpec::Zero);
        assert_eq!(c.initial_condition, InitialCondition::Zero);
        assert_eq!(c.diagnostics_every, 1);
        assert!(c.nonlinear);
        assert!(p.warnings.is_empty());
        assert!(p.canonical.contains("stepper = if_rk4\n"));
        assert_eq!(p.hash.len(), 64);
    }

    #[test]
    fn negative_mu_names_the_key() {
        let text = MINIMAL.replace("mu=1.0", "mu=-1");
        assert_eq!(config_error(&text), ("mu".to_string(), 3));
    }

    #[test]
    fn unknown_duplicate_and_missing_keys() {
        assert_eq!(
            config_error(&format!("{MINIMAL}colour = red\n")),
            ("colour".into(), 6)
        );
        assert_eq!(config_error(&format!("{MINIMAL}mu = 2\n")), ("mu".into(), 6));
        let (key, _) = config_error(&MINIMAL.replace("dt=1e-3\n", ""));
        assert_eq!(key, "dt");
    }

    #[test]
    fn irrelevant_key_is_rejected() {
        let text = format!("{MINIMAL}ic.kind = cosine\nic.width = 2\n");
        assert_eq!(config_error(&text), ("ic.width".into(), 7));
    }

    #[test]
    fn seed_alias_and_conflict() {
        let p = parse(&format!("{MINIMAL}ic.seed = 9\n")).unwrap();
        assert_eq!(p.config.seed, 9);
        let q = parse(&format!("{MINIMAL}seed = 9\n")).unwrap();
        assert_eq!(p.canonical, q.canonical);
        let (key, _) = config_error(&format!("{MINIMAL}seed = 9\nic.seed = 8\n"));
        assert_eq!(key, "ic.seed");
    }

    #[test]
    fn cfl_violation_warns() {
        let text = format!("{MINIMAL}ic.kind = cosine\nic.amplitude = 1000\n").replace("dt=1e-3", "dt=0.1");
        let p = parse(&text).unwrap();
        assert_eq!(p.warnings.len(), 1, "{:?}", p.warnings);
        assert!(p.warnings[0].contains("CFL"));
    }

    #[test]
    fn separable_forcing_requires_its_keys() {
        let base = format!("{MINIMAL}forcing.kind = separable_decaying\n");
        assert_eq!(config_error(&format!("{base}forcing.eta = 0.5\n")).0, "forcing.k");
        let (key, _) = config_error(&format!("{base}forcing.k = 1\nforcing.eta = 1.5\n"));
        assert_eq!(key, "forcing.eta");
        let p = parse(&format!(
            "{base}forcing.k = 1\nforcing.eta = 0.5\nforcing.g.width = 0.7\n"
        ))
        .unwrap();
        assert!(matches!(p.config.forcing, ForcingSpec::SeparableDecaying { .. }));
    }

    #[test]
    fn comments_and_whitespace_do_not_change_the_hash() {
        let a = parse(MINIMAL).unwrap();
        let b = parse(&format!(
            "# header\n{}",
            MINIMAL.replace("mu=1.0", "  mu =  1   # viscosity")
        ))
        .unwrap();
        assert_eq!(a.hash, b.hash);
        let c = parse(&MINIMAL.replace("mu=1.0", "mu=0.5")).unwrap();
        assert_ne!(a.hash, c.hash);
    }

    #[test]
    fn canonical_text_parses_to_itself() {
        let text = format!(
            "{MINIMAL}grid.dealias = two_thirds_truncation\nic.kind = random\nic.kmax = 5\n\
             forcing.kind = separable_decaying\nforcing.k = 2\nforcing.eta = 0.25\n\
             diagnostics.sigma = 1, 2.5\nsnapshot_every = 10\n"
        );
        let a = parse(&text).unwrap();
        let b = parse(&a.canonical).unwrap();
        assert_eq!(a.canonical, b.canonical);
        assert_eq!(a.config, b.config);
    }

    #[test]
    fn step_count_must_be_integral() {
        let (key, _) = config_error(&MINIMAL.replace("t_end=1.0", "t_end=1.0005"));
        assert_eq!(key, "t_end");
    }
}
