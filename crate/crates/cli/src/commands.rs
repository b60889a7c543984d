use std::fmt::Write as _;

use fockmult_core::fock::fmt_sig17;
use fockmult_core::operators::fmt_complex;
use fockmult_core::{
    circulant_of, default_grid, finfty_sweep, hardy_norm_grid, make_pair, pair_norm, popescu_norm, run_check, Check,
    CheckConfig, Error, FockVector, MonoidKind, MonoidSpec, NormConfig, Polynomial, C64, DEFAULT_SWEEP_TOL,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Common, Format, Target};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

/// Fully resolved inputs of a run, echoed into the report.
#[derive(Serialize, Debug)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
    pub spec: Value,
    pub symbol: Option<Value>,
    pub level: Option<usize>,
    pub levels: Option<Vec<usize>>,
    pub tol: Option<f64>,
    pub kernel_tol: f64,
    pub max_iters: usize,
    pub kernel_seed: u64,
    pub grid: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub block_size: usize,
    pub capacity: usize,
    pub format: Format,
}

#[derive(Serialize, Debug)]
pub struct Outcome {
    pub status: &'static str,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            status: "pass",
            exit_code: EXIT_PASS,
            message: None,
        }
    }

    fn not_converged(message: impl Into<String>) -> Self {
        Outcome {
            status: "not_converged",
            exit_code: EXIT_NOT_CONVERGED,
            message: Some(message.into()),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Outcome {
            status: "fail",
            exit_code: EXIT_FAILED,
            message: Some(message.into()),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub config: RunConfig,
    pub results: Value,
    pub verdict: Outcome,
    pub runtime_ms: u64,
}

/// A finished command: the report body plus its CSV rendering.
pub struct Finished {
    pub results: Value,
    pub csv: String,
    pub verdict: Outcome,
}

pub struct Context {
    pub spec: MonoidSpec,
    pub symbol: Option<Polynomial>,
    pub common: Common,
}

impl Context {
    pub fn new(common: &Common) -> Result<Self, Error> {
        let spec = MonoidSpec::from_json(&common.spec)?.with_capacity(common.capacity);
        let symbol = match &common.symbol {
            Some(text) => Some(parse_symbol(&spec, text)?),
            None => None,
        };
        if let Some(levels) = &common.levels {
            if levels.is_empty() || levels.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(
                    "--levels must be non-empty and strictly increasing".into(),
                ));
            }
        }
        for (name, value) in [("--tol", common.tol), ("--kernel-tol", Some(common.kernel_tol))] {
            if value.is_some_and(|x| !(x > 0.0 && x.is_finite())) {
                return Err(Error::InvalidArgument(format!("{name} must be positive")));
            }
        }
        if common.max_iters == 0 || common.trials == 0 || common.block_size == 0 || common.grid == Some(0) {
            return Err(Error::InvalidArgument("counts must be positive".into()));
        }
        Ok(Context {
            spec,
            symbol,
            common: common.clone(),
        })
    }

    pub fn config(&self, command: &str) -> RunConfig {
        let c = &self.common;
        RunConfig {
            command: command.to_string(),
            check: None,
            target: None,
            spec: self.spec.to_value(),
            symbol: self
                .symbol
                .as_ref()
                .map(|p| serde_json::from_str(&p.to_json_string()).expect("printer emits JSON")),
            level: c.level,
            levels: c.levels.clone(),
            tol: c.tol,
            kernel_tol: c.kernel_tol,
            max_iters: c.max_iters,
            kernel_seed: c.kernel_seed,
            grid: c.grid,
            trials: c.trials,
            seed: c.seed,
            block_size: c.block_size,
            capacity: c.capacity,
            format: c.format,
        }
    }

    fn norm_config(&self) -> NormConfig {
        NormConfig {
            tol: self.common.kernel_tol,
            max_iters: self.common.max_iters,
            seed: self.common.kernel_seed,
        }
    }

    fn symbol(&self) -> Result<&Polynomial, Error> {
        self.symbol
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("this command needs --symbol".into()))
    }

    fn single_level(&self) -> Result<usize, Error> {
        match (self.common.level, &self.common.levels) {
            (Some(k), _) => Ok(k),
            (None, Some(levels)) if levels.len() == 1 => Ok(levels[0]),
            _ if self.spec.is_finite() => Ok(0),
            _ => Err(Error::InvalidArgument("this command needs --level".into())),
        }
    }

    fn level_list(&self) -> Result<Vec<usize>, Error> {
        match (&self.common.levels, self.common.level) {
            (Some(levels), _) => Ok(levels.clone()),
            (None, Some(k)) => Ok(vec![k]),
            _ => Err(Error::InvalidArgument("this command needs --levels".into())),
        }
    }
}

/// Reads `--symbol`: JSON text or `@path`. A list of numbers (or `[re, im]`
/// pairs) is taken as dense coefficients on the smallest window that holds it.
pub fn parse_symbol(spec: &MonoidSpec, text: &str) -> Result<Polynomial, Error> {
    let owned;
    let text = match text.strip_prefix('@') {
        Some(path) => {
            owned = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read symbol file {path}: {e}")))?;
            owned.as_str()
        }
        None => text,
    };
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: e.column(),
        message: format!("symbol: {e}"),
    })?;
    match dense_coefficients(&value) {
        Some(values) => {
            let mut level = 0;
            while spec.window_size(level) < values.len() as u128 {
                if spec.is_finite() || level >= values.len() {
                    return Err(Error::InvalidArgument(format!(
                        "{} coefficients do not fit a window of {}",
                        values.len(),
                        spec.describe()
                    )));
                }
                level += 1;
            }
            let window = spec.window(level)?;
            let mut padded = values;
            padded.resize(window.len(), C64::new(0.0, 0.0));
            FockVector::from_dense(&window, &padded)?.compact()
        }
        None => FockVector::from_value(spec, &value),
    }
}

fn dense_coefficients(value: &Value) -> Option<Vec<C64>> {
    let items = value.as_array()?;
    if items.is_empty() {
        return None;
    }
    items
        .iter()
        .map(|v| match v {
            Value::Number(n) => Some(C64::new(n.as_f64()?, 0.0)),
            Value::Array(pair) if pair.len() == 2 => Some(C64::new(pair[0].as_f64()?, pair[1].as_f64()?)),
            _ => None,
        })
        .collect()
}

pub fn norm(ctx: &Context) -> Result<Finished, Error> {
    let level = ctx.single_level()?;
    let pair = make_pair(ctx.symbol()?, level)?;
    let est = pair_norm(&pair, &ctx.norm_config())?;
    let verdict = if est.converged {
        Outcome::pass()
    } else {
        Outcome::not_converged(format!("power iteration stopped after {} iterations", est.iterations))
    };
    Ok(Finished {
        results: json!({
            "level": pair.level(),
            "domain_size": pair.domain().len(),
            "norm": est.value,
            "iterations": est.iterations,
            "converged": est.converged,
        }),
        csv: format!("level,norm\n{},{}\n", pair.level(), fmt_sig17(est.value)),
        verdict,
    })
}

pub fn sweep(ctx: &Context) -> Result<Finished, Error> {
    let tol = ctx.common.tol.unwrap_or(DEFAULT_SWEEP_TOL);
    let report = finfty_sweep(ctx.symbol()?, &ctx.level_list()?, tol, &ctx.norm_config())?;
    let verdict = if !report.kernel_converged {
        Outcome::not_converged("power iteration did not converge at every level")
    } else if !report.converged {
        Outcome::not_converged(format!("last increment exceeds {tol}"))
    } else {
        Outcome::pass()
    };
    let mut results = serde_json::to_value(&report).expect("report serializes");
    results["tol"] = json!(tol);
    results["kernel_converged"] = json!(report.kernel_converged);
    Ok(Finished {
        csv: report.to_csv(),
        results,
        verdict,
    })
}

pub fn verify(ctx: &Context, check: Check) -> Result<Finished, Error> {
    let c = &ctx.common;
    let mut cfg = CheckConfig {
        trials: c.trials,
        seed: c.seed,
        n: c.block_size,
        norm: ctx.norm_config(),
        ..CheckConfig::default()
    };
    if let Some(level) = c.level {
        cfg.level = level;
    }
    if let Some(tol) = c.tol {
        cfg.tol = tol;
    }
    let v = run_check(check, &ctx.spec, &cfg)?;
    let verdict = if v.passed {
        Outcome::pass()
    } else {
        Outcome::failed(format!("max residual {} exceeds {}", v.max_residual, v.tolerance))
    };
    let csv = format!(
        "check,passed,trials,seed,tolerance,max_residual\n{},{},{},{},{},{}\n",
        v.check,
        v.passed,
        v.trials,
        v.seed,
        fmt_sig17(v.tolerance),
        fmt_sig17(v.max_residual)
    );
    let mut results = serde_json::to_value(&v).expect("verdict serializes");
    results["level"] = json!(cfg.level);
    Ok(Finished { results, csv, verdict })
}

pub fn identify(ctx: &Context, target: Target) -> Result<Finished, Error> {
    match target {
        Target::Circulant => identify_circulant(ctx),
        Target::Hardy => identify_hardy(ctx),
        Target::Popescu => identify_popescu(ctx),
    }
}

fn identify_circulant(ctx: &Context) -> Result<Finished, Error> {
    let tol = ctx.common.tol.unwrap_or(1e-12);
    let report = circulant_of(ctx.symbol()?)?;
    let v = report.verdict(tol);
    let dense = report.matrix.to_dense();
    let matrix: Vec<Vec<[f64; 2]>> = dense
        .iter()
        .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
        .collect();
    let mut csv = String::new();
    for row in &dense {
        let cells: Vec<String> = row.iter().map(|c| fmt_complex(*c)).collect();
        writeln!(csv, "{}", cells.join(",")).unwrap();
    }
    let verdict = if v.passed {
        Outcome::pass()
    } else {
        Outcome::failed(format!("wrap-around diagonals deviate by {}", report.max_deviation))
    };
    Ok(Finished {
        results: json!({
            "matrix": matrix,
            "symbol": report.symbol.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "max_deviation": report.max_deviation,
            "round_trip": report.round_trip,
            "check": v,
        }),
        csv,
        verdict,
    })
}

fn torus_dimension(spec: &MonoidSpec) -> usize {
    match spec.kind() {
        MonoidKind::NonNegVectors { d } => *d,
        _ => 1,
    }
}

fn identify_hardy(ctx: &Context) -> Result<Finished, Error> {
    let phi = ctx.symbol()?;
    let tol = ctx.common.tol.unwrap_or(1e-4);
    let grid = ctx
        .common
        .grid
        .unwrap_or_else(|| default_grid(torus_dimension(&ctx.spec)));
    // Reject an unsupported monoid or grid before the expensive sweep.
    let sup = hardy_norm_grid(phi, grid)?;
    let levels = ctx.level_list()?;
    let report = finfty_sweep(phi, &levels, DEFAULT_SWEEP_TOL, &ctx.norm_config())?;
    let gap = sup - report.extrapolate;
    let verdict = if !report.kernel_converged {
        Outcome::not_converged("power iteration did not converge at every level")
    } else if gap.abs() > tol {
        Outcome::failed(format!("gap {gap} exceeds {tol}"))
    } else {
        Outcome::pass()
    };
    let mut csv = String::from("level,norm,grid_sup,gap\n");
    for (k, v) in report.levels.iter().zip(&report.norms) {
        writeln!(csv, "{k},{},{},{}", fmt_sig17(*v), fmt_sig17(sup), fmt_sig17(sup - v)).unwrap();
    }
    Ok(Finished {
        results: json!({
            "levels": report.levels,
            "norms": report.norms,
            "sweep_final": report.extrapolate,
            "grid": grid,
            "grid_sup": sup,
            "gap": gap,
            "tol": tol,
        }),
        csv,
        verdict,
    })
}

fn identify_popescu(ctx: &Context) -> Result<Finished, Error> {
    let phi = ctx.symbol()?;
    let tol = ctx.common.tol.unwrap_or(DEFAULT_SWEEP_TOL);
    let depths = match (&ctx.common.levels, ctx.common.level) {
        (Some(levels), _) => levels.clone(),
        (None, Some(k)) => (1..=k.max(1)).collect(),
        _ => return Err(Error::InvalidArgument("popescu needs --level or --levels".into())),
    };
    let cfg = ctx.norm_config();
    let mut norms = Vec::with_capacity(depths.len());
    let mut kernel_converged = true;
    for &depth in &depths {
        let est = popescu_norm(phi, depth, &cfg)?;
        kernel_converged &= est.converged;
        norms.push(est.value);
    }
    let increment = match norms.len() {
        0 | 1 => None,
        n => Some(norms[n - 1] - norms[n - 2]),
    };
    let verdict = if !kernel_converged {
        Outcome::not_converged("power iteration did not converge at every depth")
    } else {
        match increment {
            Some(d) if d <= tol => Outcome::pass(),
            Some(d) => Outcome::not_converged(format!("last increment {d} exceeds {tol}")),
            None => Outcome::not_converged("a single depth has no increment"),
        }
    };
    let mut csv = String::from("depth,norm\n");
    for (d, v) in depths.iter().zip(&norms) {
        writeln!(csv, "{d},{}", fmt_sig17(*v)).unwrap();
    }
    Ok(Finished {
        results: json!({
            "depths": depths,
            "norms": norms,
            "last_increment": increment,
            "tol": tol,
        }),
        csv,
        verdict,
    })
}
