use std::fs;
use std::path::Path;

use latnp::analysis::{analytic_pe, exact_pe_area, level_curve_points, monte_carlo_pe, PeEstimate};
use latnp::lattice::{canonicalize_2d, cvp_bruteforce, gauss_reduce_2d, is_minkowski_reduced_2d};
use latnp::protocol::{
    build_ratio_table, centralized_rate_bound, interactive_rate, run_scenario, Scenario,
    SourceModel,
};
use latnp::{nearest_plane, GeneratorMatrix, LatticeError, MatrixSpec, Rational, ReducedBasis2D};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::output::csv_row;
use crate::{Cli, CliError, Command, Format, PeMethod};

pub const LEVEL_CSV_HEADER: &str = "a,b,pe_analytic,pe_exact,pe_mc,mc_stderr";

pub const DEFAULT_LEVELS: [f64; 6] = [0.0, 0.01, 0.02, 0.04, 0.06, 1.0 / 12.0];

/// Largest `b` on the `k = 0` segment `a = 0`.
const ZERO_LEVEL_B_MAX: f64 = 2.0;

/// A decimal or an exact fraction such as `1/12`.
pub fn parse_level(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .or_else(|_| s.parse::<Rational>().map(|r| r.to_f64()))
        .map_err(|_| format!("not a number or fraction: {s:?}"))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let input = |message: String| CliError::Input {
        path: path.display().to_string(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| input(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| input(e.to_string()))
}

fn load_matrix(path: &Path) -> Result<GeneratorMatrix, CliError> {
    let spec: MatrixSpec = read_json(path)?;
    spec.to_matrix().map_err(|e| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

fn json_only(cli: &Cli, name: &str) -> Result<(), CliError> {
    if cli.format == Some(Format::Csv) {
        return Err(CliError::Usage(format!("`{name}` only emits json")));
    }
    Ok(())
}

fn columns(v: &GeneratorMatrix) -> Vec<Vec<f64>> {
    v.columns().map(<[f64]>::to_vec).collect()
}

pub(crate) fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Reduce { matrix } => {
            json_only(cli, "reduce")?;
            reduce(&load_matrix(matrix)?)
        }
        Command::Babai { matrix, x } | Command::Cvp { matrix, x } => {
            let name = if matches!(cli.command, Command::Babai { .. }) {
                "babai"
            } else {
                "cvp"
            };
            json_only(cli, name)?;
            closest(&load_matrix(matrix)?, x)
        }
        Command::Perror {
            matrix,
            method,
            samples,
        } => perror(
            &load_matrix(matrix)?,
            *method,
            *samples,
            cli.seed,
            cli.format.unwrap_or(Format::Json),
        ),
        Command::Levelcurves { k, grid, samples } => {
            let levels = k.clone().unwrap_or_else(|| DEFAULT_LEVELS.to_vec());
            levelcurves(
                &levels,
                *grid,
                *samples,
                cli.seed,
                cli.format.unwrap_or(Format::Csv),
            )
        }
        Command::Simulate { scenario } => {
            let scenario: Scenario = read_json(scenario)?;
            simulate(&scenario, cli.format.unwrap_or(Format::Json))
        }
        Command::Rates {
            matrix,
            alpha,
            sources,
        } => {
            json_only(cli, "rates")?;
            rates(&load_matrix(matrix)?, *alpha, sources)
        }
    }
}

fn reduce(v: &GeneratorMatrix) -> Result<String, CliError> {
    let (w, u) = gauss_reduce_2d(v)?;
    let c = canonicalize_2d(v)?;
    Ok(json_text(&json!({
        "input_reduced": is_minkowski_reduced_2d(v)?,
        "reduced": columns(&w),
        "transform": u.0,
        "a": c.basis.a(),
        "b": c.basis.b(),
        "scale": c.scale,
        "theta": c.basis.theta(),
        "rho": c.basis.rho(),
    })))
}

fn closest(v: &GeneratorMatrix, x: &[f64]) -> Result<String, CliError> {
    let np = nearest_plane(v, x)?;
    let nl = cvp_bruteforce(v, x)?;
    let dist = |p: &[f64]| {
        p.iter()
            .zip(x)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    };
    Ok(json_text(&json!({
        "x": x,
        "babai": { "coeffs": np.coeffs, "point": np.point, "residuals": np.residuals, "distance": dist(&np.point) },
        "cvp": { "coeffs": nl.coeffs, "point": nl.point, "distance": dist(&nl.point) },
        "match": np.coeffs == nl.coeffs,
    })))
}

/// Canonical `(a, b)` of a 2D basis, for reporting.
fn canonical_ab(v: &GeneratorMatrix) -> Result<Option<ReducedBasis2D>, CliError> {
    if v.n() != 2 {
        return Ok(None);
    }
    Ok(Some(canonicalize_2d(v)?.basis))
}

fn perror(
    v: &GeneratorMatrix,
    method: PeMethod,
    samples: u64,
    seed: u64,
    format: Format,
) -> Result<String, CliError> {
    let canon = canonical_ab(v)?;
    let (mut analytic, mut exact, mut mc): (Option<f64>, Option<f64>, Option<PeEstimate>) =
        (None, None, None);
    match method {
        PeMethod::Analytic => {
            // The closed form describes the partition of a reduced basis only.
            if v.n() != 2 || !is_minkowski_reduced_2d(v)? {
                return Err(CliError::Lattice(LatticeError::Domain(
                    "the analytic formula needs a reduced 2D basis; reduce it or use --method area"
                        .into(),
                )));
            }
            let c = canon.expect("2D");
            analytic = Some(analytic_pe(c.a(), c.b())?);
        }
        PeMethod::Area => exact = Some(exact_pe_area(v)?),
        PeMethod::Mc => mc = Some(monte_carlo_pe(v, samples, seed)?),
    }
    let pe = analytic
        .or(exact)
        .or(mc.map(|e| e.estimate))
        .expect("one method ran");
    Ok(match format {
        Format::Json => json_text(&json!({
            "method": format!("{method:?}").to_lowercase(),
            "pe": pe,
            "std_error": mc.map(|e| e.std_error),
            "n_samples": mc.map(|e| e.n_samples),
            "seed": mc.map(|e| e.seed),
            "a": canon.map(|c| c.a()),
            "b": canon.map(|c| c.b()),
        })),
        Format::Csv => format!(
            "{LEVEL_CSV_HEADER}\n{}\n",
            csv_row(&[
                canon.map(|c| c.a()),
                canon.map(|c| c.b()),
                analytic,
                exact,
                mc.map(|e| e.estimate),
                mc.map(|e| e.std_error)
            ])
        ),
    })
}

struct LevelPoint {
    k: f64,
    a: f64,
    b: f64,
    analytic: f64,
    exact: f64,
    mc: Option<PeEstimate>,
}

fn level_points(k: f64, grid: usize) -> Result<Vec<(f64, f64)>, CliError> {
    if k == 0.0 {
        // F vanishes on the whole a = 0 edge of the region.
        if grid < 2 {
            return Err(CliError::Usage("--grid must be at least 2".into()));
        }
        return Ok((0..grid)
            .map(|i| {
                (
                    0.0,
                    1.0 + (ZERO_LEVEL_B_MAX - 1.0) * i as f64 / (grid - 1) as f64,
                )
            })
            .collect());
    }
    Ok(level_curve_points(k, grid)?)
}

fn levelcurves(
    levels: &[f64],
    grid: usize,
    samples: u64,
    seed: u64,
    format: Format,
) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for &k in levels {
        for (a, b) in level_points(k, grid)? {
            let m = ReducedBasis2D::new(a, b)?.matrix();
            let mc = match samples {
                0 => None,
                n => Some(monte_carlo_pe(&m, n, seed.wrapping_add(rows.len() as u64))?),
            };
            rows.push(LevelPoint {
                k,
                a,
                b,
                analytic: analytic_pe(a, b)?,
                exact: exact_pe_area(&m)?,
                mc,
            });
        }
    }
    Ok(match format {
        Format::Csv => {
            let mut out = format!("{LEVEL_CSV_HEADER}\n");
            for r in &rows {
                out += &csv_row(&[
                    Some(r.a),
                    Some(r.b),
                    Some(r.analytic),
                    Some(r.exact),
                    r.mc.map(|e| e.estimate),
                    r.mc.map(|e| e.std_error),
                ]);
                out.push('\n');
            }
            out
        }
        Format::Json => json_text(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "k": r.k, "a": r.a, "b": r.b, "pe_analytic": r.analytic, "pe_exact": r.exact,
                        "pe_mc": r.mc.map(|e| e.estimate), "mc_stderr": r.mc.map(|e| e.std_error),
                    })
                })
                .collect(),
        )),
    })
}

fn simulate(scenario: &Scenario, format: Format) -> Result<String, CliError> {
    let report = run_scenario(scenario)?;
    Ok(match format {
        Format::Json => json_text(&serde_json::to_value(&report).expect("serializable report")),
        Format::Csv => {
            let model = serde_json::to_value(report.model).expect("serializable model");
            format!(
                "model,trials,correct,mean_total_bits,side_info_bits,side_info_bound,analytic_rate_bound,empirical_broadcast_rate,fixed_length_broadcast_bits\n{},{},{},{}\n",
                model.as_str().expect("string tag"),
                report.trials,
                report.correct,
                csv_row(&[
                    Some(report.mean_total_bits),
                    Some(report.side_info_bits as f64),
                    Some(report.side_info_bound),
                    Some(report.analytic_rate_bound),
                    Some(report.empirical_broadcast_rate),
                    Some(report.fixed_length_broadcast_bits),
                ])
            )
        }
    })
}

fn rates(v: &GeneratorMatrix, alpha: f64, sources: &[String]) -> Result<String, CliError> {
    let parsed = sources
        .iter()
        .map(|s| s.parse::<SourceModel>())
        .collect::<Result<Vec<_>, _>>()?;
    let n = v.n();
    let models = match parsed.len() {
        1 => vec![parsed[0]; n],
        len if len == n => parsed,
        len => {
            return Err(CliError::Usage(format!(
                "expected 1 or {n} --source values, got {len}"
            )))
        }
    };
    // Each rate needs its own structure of the basis; report what is unavailable instead of failing.
    let or_reason = |r: latnp::Result<f64>| match r {
        Ok(v) => (Some(v), None),
        Err(e @ LatticeError::ProtocolUnsupported(_)) => (None, Some(e.to_string())),
        Err(e) => (None, Some(e.to_string())),
    };
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(LatticeError::Domain(format!("alpha must be positive, got {alpha}")).into());
    }
    let (central, central_why) = or_reason(centralized_rate_bound(&models, v, alpha));
    let (inter, inter_why) = or_reason(interactive_rate(&models, v, alpha));
    let table = build_ratio_table(v).ok();
    Ok(json_text(&json!({
        "alpha": alpha,
        "differential_entropy": models.iter().map(SourceModel::differential_entropy).collect::<Vec<_>>(),
        "centralized_rate_bound": central,
        "centralized_unavailable": central_why,
        "side_info_bound": table.as_ref().map(|t| t.side_info_bound()),
        "side_info_bits": table.as_ref().map(|t| t.side_info_bits()),
        "q": table.as_ref().map(|t| t.q().to_vec()),
        "interactive_rate": inter,
        "interactive_unavailable": inter_why,
    })))
}
