use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{parse_config, sha256_hex, ParsedConfig};
use super::manifest::ExperimentManifest;
use super::{CompareArgs, ConvergenceArgs, DecayArgs, LpArgs, StabilityArgs, Status};
use crate::bilinear::{antisymmetry_residual, pairing_first, pairing_second};
use crate::decay::{
    duhamel_moment, fit_exponent, log_spaced, moment_integral, DecaySeries, EnvelopeReport, RadialProfile,
};
use crate::diagnostics::{compare_h3, first_balance_residual, second_balance_residual, Sample};
use crate::error::{Error, Result};
use crate::evolution::{compare_runs, fill_balance, linear_evolve, RunConfig, Simulation, TimeSeriesRecord};
use crate::lp::DyadicPartition;
use crate::spectral::random::{band_limited, BandSpec};
use crate::spectral::{dealiased_product, snapshot, DealiasPolicy, SpectralField};

fn csv_of(cfg: &RunConfig, records: &[TimeSeriesRecord]) -> String {
    let mut body = TimeSeriesRecord::csv_header(&cfg.sigmas, &cfg.tilde_s);
    body.push('\n');
    for r in records {
        body.push_str(&r.csv_row());
        body.push('\n');
    }
    body
}

fn save_with_sidecar(m: &ExperimentManifest, path: &Path, field: &SpectralField, t: f64) -> Result<()> {
    snapshot::save(path, field, t)?;
    m.write_sidecar(path)?;
    Ok(())
}

/// `qgk run` (`nonlinear = true`) and `qgk linear`.
pub(super) fn run(config: &Path, out_dir: &Path, nonlinear: bool, out: &mut dyn Write) -> Result<Status> {
    let parsed = parse_config(config)?;
    let name = if nonlinear { "run" } else { "linear" };
    std::fs::create_dir_all(out_dir)?;
    let mut m = ExperimentManifest::new(format!(
        "{name} --config {} --out {}",
        config.display(),
        out_dir.display()
    ))
    .with_config(&parsed);
    let cfg = parsed.config.clone();
    let sim = Simulation::new(cfg.clone())?;
    m.add_warnings(sim.warnings());

    let (records, snaps, final_state, final_time) = if nonlinear {
        match sim.run(Some(out_dir), |_, _, _| Ok(())) {
            Ok(o) => {
                let snaps = o
                    .snapshot_files
                    .iter()
                    .map(|p| (p.clone(), None))
                    .collect::<Vec<_>>();
                (o.records, snaps, o.final_state, o.final_time)
            }
            Err(e) => {
                if let Error::NumericalAbort {
                    last_good: Some(p), ..
                } = &e
                {
                    m.add_warnings(&[format!("aborted: {e}")]);
                    m.outputs.push(p.clone());
                    m.write_sidecar(p)?;
                }
                return Err(e);
            }
        }
    } else {
        linear_series(&cfg, sim, out_dir)?
    };

    let final_path = out_dir.join("final.qgk");
    let series_path = out_dir.join("series.csv");
    m.outputs.push(series_path.clone());
    m.outputs.extend(snaps.iter().map(|s| s.0.clone()));
    m.outputs.push(final_path.clone());
    for (p, field) in &snaps {
        if let Some((t, f)) = field {
            snapshot::save(p, f, *t)?;
        }
        m.write_sidecar(p)?;
    }
    save_with_sidecar(&m, &final_path, &final_state, final_time)?;
    m.write_csv(&series_path, &csv_of(&cfg, &records))?;

    let last = records.last().expect("a run records its final step");
    writeln!(
        out,
        "{name}: {} steps to t = {final_time}, first balance residual {:.3e}, second {:.3e}",
        cfg.steps()?,
        first_balance_residual(&records)?,
        second_balance_residual(&records)?
    )?;
    writeln!(
        out,
        "final H3 = {:.6e}, E_first = {:.6e}",
        last.energy.h3, last.energy.e_first
    )?;
    for w in &m.warnings {
        writeln!(out, "warning: {w}")?;
    }
    Ok(Status::Ok)
}

type Snap = (PathBuf, Option<(f64, SpectralField)>);

/// The exact linear solution sampled on the run's diagnostics and snapshot
/// cadences, starting from the same projected datum as the stepper.
fn linear_series(
    cfg: &RunConfig,
    sim: Simulation,
    out_dir: &Path,
) -> Result<(Vec<TimeSeriesRecord>, Vec<Snap>, SpectralField, f64)> {
    let steps = cfg.steps()?;
    let solver = sim.solver();
    let r0 = sim.state().clone();
    let forcing = cfg.forcing.map_fields(|f| {
        let mut g = solver.project(f);
        g.zero_nyquist();
        g
    });
    let wanted = |s: usize, k: usize| s.is_multiple_of(k) || s == steps;
    let sample_steps: Vec<usize> = (0..=steps)
        .filter(|&s| wanted(s, cfg.diagnostics_every) || cfg.snapshot_every.is_some_and(|k| wanted(s, k)))
        .collect();
    let times: Vec<f64> = sample_steps.iter().map(|&s| s as f64 * cfg.dt).collect();
    let states = linear_evolve(&r0, &forcing, cfg.mu, &times)?;
    let mut records = Vec::new();
    let mut snaps = Vec::new();
    for ((&s, &t), w) in sample_steps.iter().zip(&times).zip(&states) {
        if wanted(s, cfg.diagnostics_every) {
            let f = forcing.evaluate(t);
            records.push(TimeSeriesRecord::from_state(s, t, w, f.as_ref(), cfg)?);
        }
        if cfg.snapshot_every.is_some_and(|k| wanted(s, k)) {
            snaps.push((out_dir.join(format!("snap_{s:08}.qgk")), Some((t, w.clone()))));
        }
    }
    fill_balance(&mut records)?;
    let final_state = states.last().cloned().unwrap_or(r0);
    Ok((records, snaps, final_state, steps as f64 * cfg.dt))
}

fn decay_profile(s: &str) -> Result<RadialProfile> {
    s.parse()
}

pub(super) fn decay(a: &DecayArgs, out: &mut dyn Write) -> Result<Status> {
    let profile = decay_profile(&a.profile)?;
    if !(a.t_min > 0.0 && a.t_max > a.t_min) || a.samples < 8 {
        return Err(Error::InvalidArgument(
            "need 0 < t_min < t_max and at least 8 samples".into(),
        ));
    }
    if a.moments.is_empty() {
        return Err(Error::InvalidArgument("no moments requested".into()));
    }
    let forcing = match (&a.eta, &a.forcing_profile) {
        (Some(_), Some(p)) => Some(decay_profile(p)?),
        (Some(_), None) => Some(profile.clone()),
        (None, Some(_)) => {
            return Err(Error::InvalidArgument("--forcing-profile needs --eta".into()));
        }
        (None, None) => None,
    };
    let times = log_spaced(a.t_min, a.t_max, a.samples);
    let mut series = Vec::new();
    for &k in &a.moments {
        let values = times
            .par_iter()
            .map(|&t| moment_integral(&profile, k, a.mu, t))
            .collect::<Result<Vec<_>>>()?;
        series.push(DecaySeries::new(times.clone(), values)?);
    }
    let mut duhamel = Vec::new();
    if let (Some(eta), Some(fp)) = (a.eta, &forcing) {
        for &k in &a.moments {
            let values = times
                .par_iter()
                .map(|&t| duhamel_moment(fp, k, a.mu, eta, a.amplitude, t))
                .collect::<Result<Vec<_>>>()?;
            duhamel.push(values);
        }
    }

    let rate = |k: u32| (k as f64 + 1.0) / 4.0;
    let mut body = String::from("t");
    for k in &a.moments {
        let _ = write!(body, ",M{k}");
    }
    for k in &a.moments {
        let _ = write!(body, ",env_M{k}");
    }
    if !duhamel.is_empty() {
        for k in &a.moments {
            let _ = write!(body, ",D{k}");
        }
        body.push_str(",env_D");
    }
    body.push('\n');
    let envs: Vec<Vec<f64>> = a
        .moments
        .iter()
        .zip(&series)
        .map(|(k, s)| s.envelope(rate(*k)))
        .collect();
    for (i, t) in times.iter().enumerate() {
        let _ = write!(body, "{t:.17e}");
        for s in &series {
            let _ = write!(body, ",{:.17e}", s.values[i]);
        }
        for e in &envs {
            let _ = write!(body, ",{:.17e}", e[i]);
        }
        if !duhamel.is_empty() {
            let mut sum = 0.0;
            for d in &duhamel {
                let _ = write!(body, ",{:.17e}", d[i]);
                sum += d[i];
            }
            let _ = write!(body, ",{:.17e}", (1.0 + t).sqrt() * sum);
        }
        body.push('\n');
    }

    let mut summary = String::from("# summary {\n");
    for ((k, s), e) in a.moments.iter().zip(&series).zip(&envs) {
        let fit = fit_exponent(s, (a.t_min, a.t_max))?;
        let env = EnvelopeReport::new(&times, e);
        let _ = writeln!(
            summary,
            "#   \"M{k}\": {{\"slope\": {:.6}, \"stderr\": {:.3e}, \"envelope_rate\": {}, \"envelope_sup\": {:.6e}, \"envelope_non_increasing\": {}}},",
            fit.slope,
            fit.stderr,
            rate(*k),
            env.sup,
            env.is_non_increasing(0.0)
        );
        writeln!(
            out,
            "M{k}: slope {:.4} ± {:.1e}, envelope (1+t)^{} sup {:.4e}",
            fit.slope,
            fit.stderr,
            rate(*k),
            env.sup
        )?;
    }
    if !duhamel.is_empty() {
        let env: Vec<f64> = times
            .iter()
            .enumerate()
            .map(|(i, t)| (1.0 + t).sqrt() * duhamel.iter().map(|d| d[i]).sum::<f64>())
            .collect();
        let rep = EnvelopeReport::new(&times, &env);
        let _ = writeln!(
            summary,
            "#   \"D\": {{\"envelope_rate\": 0.5, \"envelope_sup\": {:.6e}, \"tail_ratio\": {:.6}}},",
            rep.sup, rep.tail_ratio
        );
        writeln!(
            out,
            "Duhamel envelope (1+t)^0.5 sup {:.4e}, tail ratio {:.4}",
            rep.sup, rep.tail_ratio
        )?;
    }
    summary.push_str("# }\n");
    body.push_str(&summary);

    let mut m = ExperimentManifest::new("decay")
        .parameter("profile", &profile)
        .parameter("mu", a.mu)
        .parameter(
            "moments",
            a.moments
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )
        .parameter("window", format!("{},{}", a.t_min, a.t_max))
        .parameter("samples", a.samples);
    if let (Some(eta), Some(fp)) = (a.eta, &forcing) {
        m = m
            .parameter("eta", eta)
            .parameter("amplitude", a.amplitude)
            .parameter("forcing_profile", fp);
    }
    m.outputs.push(a.out.clone());
    m.write_csv(&a.out, &body)?;
    Ok(Status::Ok)
}

fn load_run_snapshots(arg: &Path, inputs: &mut Vec<(PathBuf, String)>) -> Result<Vec<Sample>> {
    let dir = if arg.is_file() {
        arg.parent().unwrap_or(Path::new(".")).to_path_buf()
    } else {
        arg.to_path_buf()
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("snap_") && n.ends_with(".qgk"))
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} holds no snapshots (set snapshot_every in the run config)",
            dir.display()
        )));
    }
    let mut out = Vec::new();
    for p in paths {
        let bytes = std::fs::read(&p)?;
        let (field, t) = snapshot::read_snapshot(bytes.as_slice())?;
        inputs.push((p, sha256_hex(&bytes)));
        out.push((t, field));
    }
    Ok(out)
}

pub(super) fn compare(a: &CompareArgs, out: &mut dyn Write) -> Result<Status> {
    if !(a.eta > 0.0 && a.eta < 1.0) {
        return Err(Error::InvalidArgument(format!("eta = {} outside (0, 1)", a.eta)));
    }
    let mut inputs = Vec::new();
    let run_a = load_run_snapshots(&a.run_a, &mut inputs)?;
    let run_b = load_run_snapshots(&a.run_b, &mut inputs)?;
    let cmp = compare_h3(&run_a, &run_b, a.eta)?;
    let mut body = String::from("t,h3_difference,envelope_ratio\n");
    for ((t, d), r) in cmp
        .difference
        .times
        .iter()
        .zip(&cmp.difference.values)
        .zip(&cmp.ratio)
    {
        let _ = writeln!(body, "{t:.17e},{d:.17e},{r:.17e}");
    }
    let late: Vec<(f64, f64)> = cmp
        .difference
        .times
        .iter()
        .zip(&cmp.ratio)
        .filter(|(t, _)| **t >= 10.0)
        .map(|(t, r)| (*t, *r))
        .collect();
    let non_increasing = late.windows(2).all(|w| w[1].1 <= w[0].1);
    let sup = cmp.sup_ratio((1.0, f64::INFINITY));
    let _ = writeln!(
        body,
        "# summary: sup ratio on t >= 1 = {sup:.6e}; ratio non-increasing on t >= 10: {non_increasing} ({} samples)",
        late.len()
    );
    let mut m = ExperimentManifest::new("compare")
        .parameter("run_a", a.run_a.display())
        .parameter("run_b", a.run_b.display())
        .parameter("eta", a.eta);
    m.inputs = inputs;
    m.outputs.push(a.out.clone());
    m.write_csv(&a.out, &body)?;
    writeln!(
        out,
        "compare: {} samples, sup ratio on t >= 1 = {sup:.4e}, non-increasing on t >= 10: {non_increasing}",
        cmp.ratio.len()
    )?;
    Ok(Status::Ok)
}

pub(super) fn stability(a: &StabilityArgs, out: &mut dyn Write) -> Result<Status> {
    let parsed = parse_config(&a.config)?;
    let bytes = std::fs::read(&a.perturb)?;
    let (delta, _) = snapshot::read_snapshot(bytes.as_slice())?;
    let report = compare_runs(&parsed.config, &delta.scaled(a.scale))?;
    std::fs::create_dir_all(&a.out)?;
    let path = a.out.join("stability.csv");
    let mut body = String::from("t,energy_delta,h3_delta,gronwall_integral,envelope_ratio\n");
    for i in 0..report.times.len() {
        let _ = writeln!(
            body,
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            report.times[i],
            report.energy_delta[i],
            report.h3_delta[i],
            report.gronwall_integral[i],
            report.envelope_ratio[i]
        );
    }
    let _ = writeln!(
        body,
        "# summary: C = {:.6e}, K = {:.6e}, within_envelope = {}, sup h3_delta = {:.6e}",
        report.c,
        report.k,
        report.within_envelope,
        report.sup_h3_delta()
    );
    let mut m = ExperimentManifest::new(format!(
        "stability --config {} --perturb {} --out {}",
        a.config.display(),
        a.perturb.display(),
        a.out.display()
    ))
    .with_config(&parsed)
    .parameter("scale", a.scale);
    m.inputs.push((a.perturb.clone(), sha256_hex(&bytes)));
    m.outputs.push(path.clone());
    m.write_csv(&path, &body)?;
    writeln!(
        out,
        "stability: C = {:.4e}, K = {:.4e}, within envelope: {}",
        report.c, report.k, report.within_envelope
    )?;
    Ok(if report.within_envelope {
        Status::Ok
    } else {
        Status::Failed
    })
}

struct Check {
    name: &'static str,
    value: f64,
    threshold: f64,
    /// `None` when the check does not apply to this config.
    pass: Option<bool>,
}

impl Check {
    fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        Check {
            name,
            value,
            threshold,
            pass: Some(value <= threshold),
        }
    }

    fn skipped(name: &'static str) -> Self {
        Check {
            name,
            value: f64::NAN,
            threshold: f64::NAN,
            pass: None,
        }
    }
}

fn relative_diff(a: &SpectralField, b: &SpectralField) -> f64 {
    let scale = b.max_abs();
    let d = (a - b).max_abs();
    if scale == 0.0 {
        d
    } else {
        d / scale
    }
}

pub(super) fn invariants(config: &Path, out: &mut dyn Write) -> Result<Status> {
    let parsed: ParsedConfig = parse_config(config)?;
    let cfg = &parsed.config;
    let grid = cfg.grid;
    let mut checks = Vec::new();

    // algebraic identities on seeded fields of the configured grid
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    let band = BandSpec {
        k_min: 1.0,
        k_max: grid.n() as f64 / 4.0,
        s: 3.0,
        hs_norm: 1.0,
    };
    let u = band_limited(grid, &band, &mut rng);
    let v = band_limited(grid, &band, &mut rng);
    if grid.dealias() == DealiasPolicy::ThreeHalvesPadding {
        checks.push(Check::at_most(
            "cancellation <Λ(ρ,ζ),(Id−Δ)ρ>",
            pairing_first(&u, &v)?.relative(),
            1e-12,
        ));
        checks.push(Check::at_most(
            "cancellation <Λ(ρ,ζ),Δ²ζ>",
            pairing_second(&u, &v)?.relative(),
            1e-12,
        ));
        checks.push(Check::at_most(
            "antisymmetry residual",
            antisymmetry_residual(&u, &v)?,
            1e-12,
        ));
        let lp = DyadicPartition::new(grid);
        let mut bony = lp.paraproduct(&u, &v)?;
        bony.axpy(1.0, &lp.paraproduct(&v, &u)?)?;
        bony.axpy(1.0, &lp.remainder(&u, &v)?)?;
        checks.push(Check::at_most(
            "Bony reconstruction",
            relative_diff(&bony, &dealiased_product(&u, &v)?),
            1e-12,
        ));
    } else {
        checks.push(Check::skipped("cancellations (two-thirds truncation)"));
    }
    let pu = DyadicPartition::new(grid)
        .partition_sum()
        .iter()
        .fold(0.0f64, |m, s| m.max((s - 1.0).abs()));
    checks.push(Check::at_most("partition of unity", pu, 1e-12));

    // properties of the configured run
    let sim = Simulation::new(cfg.clone())?;
    let r0 = sim.state().clone();
    let run = sim.run(None, |_, _, _| Ok(()))?;
    let recs = &run.records;
    let fin = &run.final_state;
    let herm = fin.hermitian_defect() / fin.max_abs().max(f64::MIN_POSITIVE);
    checks.push(Check::at_most("Hermitian symmetry", herm, 1e-12));
    checks.push(Check::at_most(
        "first balance residual",
        first_balance_residual(recs)?,
        1e-6,
    ));
    checks.push(Check::at_most(
        "second balance residual",
        second_balance_residual(recs)?,
        1e-6,
    ));
    let forcing_mean_free = cfg.forcing.evaluate(0.0).is_none_or(|f| f.mean() == 0.0)
        && cfg.forcing.evaluate(cfg.t_end).is_none_or(|f| f.mean() == 0.0);
    if forcing_mean_free {
        let d = (fin.mean() - r0.mean()).abs() / r0.mean().abs().max(1.0);
        checks.push(Check::at_most("mean conservation", d, 1e-12));
    } else {
        checks.push(Check::skipped("mean conservation (forcing has a mean)"));
    }
    if cfg.forcing.is_zero() && cfg.mu > 0.0 {
        let rise = |get: fn(&TimeSeriesRecord) -> f64| {
            recs.windows(2)
                .map(|w| (get(&w[1]) - get(&w[0])) / get(&w[0]).max(f64::MIN_POSITIVE))
                .fold(0.0f64, f64::max)
        };
        checks.push(Check::at_most(
            "E_first non-increasing",
            rise(|r| r.energy.e_first),
            1e-12,
        ));
        checks.push(Check::at_most(
            "E_second non-increasing",
            rise(|r| r.energy.e_second),
            1e-12,
        ));
    } else {
        checks.push(Check::skipped("energy monotonicity (forced or inviscid)"));
    }
    let x_excess = recs
        .iter()
        .map(|r| (r.energy.x - 2.0 * r.energy.e_first) / r.energy.e_first.max(f64::MIN_POSITIVE))
        .fold(f64::NEG_INFINITY, f64::max);
    checks.push(Check::at_most("X <= 2 E_first", x_excess.max(0.0), 1e-12));

    let mut failed = false;
    writeln!(out, "{:<40} {:>12} {:>10}  result", "check", "value", "threshold")?;
    for c in &checks {
        let verdict = match c.pass {
            Some(true) => "PASS",
            Some(false) => {
                failed = true;
                "FAIL"
            }
            None => "SKIP",
        };
        if c.pass.is_some() {
            writeln!(
                out,
                "{:<40} {:>12.3e} {:>10.0e}  {verdict}",
                c.name, c.value, c.threshold
            )?;
        } else {
            writeln!(out, "{:<40} {:>12} {:>10}  {verdict}", c.name, "-", "-")?;
        }
    }
    for w in parsed.warnings.iter().chain(&run.warnings) {
        writeln!(out, "warning: {w}")?;
    }
    Ok(if failed { Status::Failed } else { Status::Ok })
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

pub(super) fn convergence(a: &ConvergenceArgs, out: &mut dyn Write) -> Result<Status> {
    let parsed = parse_config(&a.config)?;
    if a.dts.len() < 2 {
        return Err(Error::InvalidArgument("need at least two dt values".into()));
    }
    let mut rows = Vec::new();
    for &dt in &a.dts {
        let mut cfg = parsed.config.clone();
        cfg.dt = dt;
        // Simpson on every step, so the quadrature does not limit the order
        cfg.diagnostics_every = 1;
        cfg.snapshot_every = None;
        cfg.validate()?;
        let run = Simulation::new(cfg)?.run(None, |_, _, _| Ok(()))?;
        rows.push((
            dt,
            first_balance_residual(&run.records)?,
            second_balance_residual(&run.records)?,
        ));
    }
    let dts: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let first: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let second: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let positive = first.iter().chain(&second).all(|v| *v > 0.0);
    let (o1, o2) = if positive {
        (log_slope(&dts, &first), log_slope(&dts, &second))
    } else {
        (f64::NAN, f64::NAN)
    };
    let nominal = parsed.config.stepper.order() as f64;
    let ok = o1 >= nominal - 0.5 && o2 >= nominal - 0.5;

    let mut body = String::from("dt,first_balance_residual,second_balance_residual\n");
    for (dt, f, s) in &rows {
        let _ = writeln!(body, "{dt:.17e},{f:.17e},{s:.17e}");
    }
    let _ = writeln!(
        body,
        "# summary: fitted order first = {o1:.4}, second = {o2:.4}, nominal = {nominal}, pass = {ok}"
    );
    let m = ExperimentManifest::new(format!("convergence --config {}", a.config.display()))
        .with_config(&parsed)
        .parameter(
            "dts",
            dts.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
        );
    match &a.out {
        Some(p) => {
            let mut m = m;
            m.outputs.push(p.clone());
            m.write_csv(p, &body)?;
            writeln!(
                out,
                "fitted order: first {o1:.3}, second {o2:.3} (nominal {nominal}): {}",
                if ok { "PASS" } else { "FAIL" }
            )?;
        }
        None => write!(out, "{}{body}", m.csv_comment())?,
    }
    Ok(if ok { Status::Ok } else { Status::Failed })
}

pub(super) fn lp_spectrum(a: &LpArgs, out: &mut dyn Write) -> Result<Status> {
    let bytes = std::fs::read(&a.input)?;
    let (u, _) = snapshot::read_snapshot(bytes.as_slice())?;
    let body = DyadicPartition::new(*u.grid()).spectrum_csv(&u, a.s)?;
    let mut m = ExperimentManifest::new("lp-spectrum").parameter("s", a.s);
    m.inputs.push((a.input.clone(), sha256_hex(&bytes)));
    match &a.out {
        Some(p) => {
            m.outputs.push(p.clone());
            m.write_csv(p, &body)?;
        }
        None => write!(out, "{}{body}", m.csv_comment())?,
    }
    Ok(Status::Ok)
}
