use std::path::{Path, PathBuf};

use super::config::RunConfig;
use super::solver::Solver;
use crate::diagnostics::{
    dissipation_first, dissipation_second, first_balance_series, second_balance_series, work_first,
    work_second, EnergyReport,
};
use crate::error::{Error, Result};
use crate::spectral::{snapshot, SpectralField};

/// CFL number above which a warning is recorded.
pub const CFL_LIMIT: f64 = 0.5;

/// One diagnostics row.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeriesRecord {
    pub step: usize,
    pub t: f64,
    pub energy: EnergyReport,
    pub first_balance_residual: f64,
    pub second_balance_residual: f64,
    /// `⟨f, (Id − Δ)r⟩`
    pub work_first: f64,
    /// `⟨f, (Id − Δ + Δ²)r⟩`
    pub work_second: f64,
    pub dissipation_first: f64,
    pub dissipation_second: f64,
}

impl TimeSeriesRecord {
    pub fn csv_header(sigmas: &[f64], tilde_s: &[f64]) -> String {
        let mut cols = vec![
            "t".to_string(),
            "X".into(),
            "Y".into(),
            "E_first".into(),
            "E_second".into(),
        ];
        cols.extend(sigmas.iter().map(|s| format!("E_sigma_{s}")));
        cols.extend(tilde_s.iter().map(|s| format!("Etilde_s_{s}")));
        for c in [
            "H3",
            "H4",
            "first_balance_residual",
            "second_balance_residual",
            "work_first",
            "work_second",
            "dissipation_first",
            "dissipation_second",
        ] {
            cols.push(c.into());
        }
        cols.join(",")
    }

    /// Row for `state` at time `t` under forcing `f`; the balance columns
    /// are left at zero, see [`fill_balance`].
    pub fn from_state(
        step: usize,
        t: f64,
        state: &SpectralField,
        f: Option<&SpectralField>,
        cfg: &RunConfig,
    ) -> Result<Self> {
        let (w1, w2) = match f {
            Some(f) => (work_first(f, state)?, work_second(f, state)?),
            None => (0.0, 0.0),
        };
        Ok(TimeSeriesRecord {
            step,
            t,
            energy: EnergyReport::new(state, &cfg.sigmas, &cfg.tilde_s)?,
            first_balance_residual: 0.0,
            second_balance_residual: 0.0,
            work_first: w1,
            work_second: w2,
            dissipation_first: dissipation_first(state, cfg.mu),
            dissipation_second: dissipation_second(state, cfg.mu),
        })
    }

    pub fn csv_row(&self) -> String {
        let e = &self.energy;
        let mut v = vec![self.t, e.x, e.y, e.e_first, e.e_second];
        v.extend(&e.e_sigma);
        v.extend(&e.e_tilde_s);
        v.extend([
            e.h3,
            e.h4,
            self.first_balance_residual,
            self.second_balance_residual,
            self.work_first,
            self.work_second,
            self.dissipation_first,
            self.dissipation_second,
        ]);
        v.iter()
            .map(|x| format!("{x:.17e}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Result of a completed run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub final_state: SpectralField,
    pub final_time: f64,
    pub records: Vec<TimeSeriesRecord>,
    /// In-memory snapshots, kept when no output directory was given.
    pub snapshots: Vec<(f64, SpectralField)>,
    pub snapshot_files: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

/// A run in progress. Owns its state.
#[derive(Clone, Debug)]
pub struct Simulation {
    config: RunConfig,
    solver: Solver,
    state: SpectralField,
    step: usize,
    steps: usize,
    warnings: Vec<String>,
}

impl Simulation {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let r0 = config.initial_condition.build(config.grid, config.seed)?;
        Simulation::with_state(config, r0)
    }

    /// Starts from `r0` instead of the configured initial condition. Nyquist
    /// modes are zeroed and `𝒥ₙ` is applied so the state lies in the band the
    /// scheme evolves.
    pub fn with_state(config: RunConfig, r0: SpectralField) -> Result<Self> {
        let solver = Solver::new(&config)?;
        config.grid.ensure_same(r0.grid())?;
        if !r0.is_finite() {
            return Err(Error::NonFinite("initial state".into()));
        }
        let mut state = solver.project(&r0);
        state.zero_nyquist();
        state.symmetrize();
        let mut warnings = Vec::new();
        if config.mu == 0.0 {
            warnings.push("mu = 0: inviscid run, stability is not certified".to_string());
        }
        if config.nonlinear {
            let cfl = solver.cfl_number(&state);
            if cfl > CFL_LIMIT {
                warnings.push(format!(
                    "initial CFL number {cfl:.3e} exceeds {CFL_LIMIT} for dt = {}",
                    config.dt
                ));
            }
        }
        let steps = config.steps()?;
        Ok(Simulation {
            config,
            solver,
            state,
            step: 0,
            steps,
            warnings,
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn solver(&self) -> &Solver {
        &self.solver
    }

    pub fn state(&self) -> &SpectralField {
        &self.state
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn total_steps(&self) -> usize {
        self.steps
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.config.dt
    }

    pub fn is_finished(&self) -> bool {
        self.step >= self.steps
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Diagnostics of the current state; balance columns are filled by
    /// [`Simulation::run`].
    pub fn record(&self) -> Result<TimeSeriesRecord> {
        let t = self.time();
        let f = self.solver.forcing_at(t);
        TimeSeriesRecord::from_state(self.step, t, &self.state, f.as_ref(), &self.config)
    }

    /// One step. A non-finite result leaves the state untouched and reports
    /// a numerical abort.
    pub fn advance(&mut self) -> Result<()> {
        let t = self.time();
        match self.solver.step(&self.state, t) {
            Ok(next) => {
                self.state = next;
                self.step += 1;
                Ok(())
            }
            Err(Error::NonFinite(reason)) => Err(Error::NumericalAbort {
                time: t,
                step: self.step,
                reason,
                last_good: None,
            }),
            Err(e) => Err(e),
        }
    }

    /// Runs to `t_end`. `observe(step, t, state)` sees the initial state and
    /// every later step. Snapshots go to `dir` when given, otherwise they are
    /// kept in memory.
    pub fn run(
        mut self,
        dir: Option<&Path>,
        mut observe: impl FnMut(usize, f64, &SpectralField) -> Result<()>,
    ) -> Result<RunOutput> {
        let mut records = Vec::new();
        let mut snapshots = Vec::new();
        let mut files = Vec::new();
        let every = self.config.diagnostics_every;
        let snap_every = self.config.snapshot_every;
        loop {
            let s = self.step;
            let t = self.time();
            observe(s, t, &self.state)?;
            let last = self.is_finished();
            if s.is_multiple_of(every) || last {
                records.push(self.record()?);
            }
            if let Some(k) = snap_every {
                if s.is_multiple_of(k) || last {
                    match dir {
                        Some(d) => {
                            let p = d.join(format!("snap_{s:08}.qgk"));
                            snapshot::save(&p, &self.state, t)?;
                            files.push(p);
                        }
                        None => snapshots.push((t, self.state.clone())),
                    }
                }
            }
            if last {
                break;
            }
            if let Err(e) = self.advance() {
                return Err(match (e, dir) {
                    (
                        Error::NumericalAbort {
                            time, step, reason, ..
                        },
                        Some(d),
                    ) => {
                        let p = d.join("last_good.qgk");
                        snapshot::save(&p, &self.state, self.time())?;
                        Error::NumericalAbort {
                            time,
                            step,
                            reason,
                            last_good: Some(p),
                        }
                    }
                    (e, _) => e,
                });
            }
        }
        fill_balance(&mut records)?;
        Ok(RunOutput {
            final_time: self.time(),
            final_state: self.state,
            records,
            snapshots,
            snapshot_files: files,
            warnings: self.warnings,
        })
    }
}

/// Fills the running balance residual columns of a complete series.
pub fn fill_balance(records: &mut [TimeSeriesRecord]) -> Result<()> {
    let first = first_balance_series(records)?;
    let second = second_balance_series(records)?;
    for ((r, a), b) in records.iter_mut().zip(first).zip(second) {
        r.first_balance_residual = a;
        r.second_balance_residual = b;
    }
    Ok(())
}

/// Runs `cfg` from its configured initial condition, keeping snapshots in memory.
pub fn simulate(cfg: &RunConfig) -> Result<RunOutput> {
    Simulation::new(cfg.clone())?.run(None, |_, _, _| Ok(()))
}

/// Runs `cfg`, writing snapshots (and a last-good state on abort) into `dir`.
pub fn simulate_to_dir(cfg: &RunConfig, dir: &Path) -> Result<RunOutput> {
    std::fs::create_dir_all(dir)?;
    Simulation::new(cfg.clone())?.run(Some(dir), |_, _, _| Ok(()))
}
