//! Command-line plumbing for the bilocal network toolkit: state-spec parsing,
//! plain-text report rendering, the flat scan config format, and file output.
//!
//! Every numeric value in a report is produced by a `bilocal-core` call and
//! printed through [`format_real`]; this crate adds no arithmetic of its own
//! beyond the numeric-minus-analytic gap its report contract asks for.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use bilocal_core::criteria::{
    filtered_chsh_bound, hidden_nonlocality_state, steering_report, FilterParams, SteeringVerdict,
};
use bilocal_core::network::{analytic_bound, maximize_bilocal, swap, BellLabel};
pub use bilocal_core::scan::format_real;
use bilocal_core::scan::{render_csv, render_json, run_scan, Figure, ScanConfig, ScanTable};
use bilocal_core::states::{
    alpha_state, concurrence_x, horodecki, locality_vars, ThresholdVerdict, TParams, XParams,
};

/// CLI failure split by exit-code class: bad input (2) vs I/O failure (3).
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

fn input_err(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Parse one state spec of the form `family:v1,v2,...`.
///
/// Families: `x:pop00,pop01,pop10,pop11,coh_outer,coh_inner` |
/// `t:c1,c2,c3` | `werner:visibility` | `alpha:alpha` | `hidden:alpha`.
/// Values accept anything `f64` parses, including scientific notation.
pub fn parse_state_spec(spec: &str) -> Result<XParams, CliError> {
    let (family, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Input(format!("state spec `{spec}` lacks a `family:` prefix")))?;
    let values: Vec<f64> = rest
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("`{tok}` is not a number in spec `{spec}`")))
        })
        .collect::<Result<_, _>>()?;
    let expect = |n: usize| {
        if values.len() == n {
            Ok(())
        } else {
            Err(CliError::Input(format!(
                "family `{family}` takes {n} value(s), got {} in `{spec}`",
                values.len()
            )))
        }
    };
    match family {
        "x" => {
            expect(6)?;
            XParams::new(values[0], values[1], values[2], values[3], values[4], values[5])
                .map_err(input_err)
        }
        "t" => {
            expect(3)?;
            Ok(TParams::new(values[0], values[1], values[2]).map_err(input_err)?.to_x())
        }
        "werner" => {
            expect(1)?;
            Ok(TParams::werner(values[0]).map_err(input_err)?.to_x())
        }
        "alpha" => {
            expect(1)?;
            alpha_state(values[0]).map_err(input_err)
        }
        "hidden" => {
            expect(1)?;
            hidden_nonlocality_state(values[0]).map_err(input_err)
        }
        other => Err(CliError::Input(format!(
            "unknown state family `{other}` (expected x, t, werner, alpha, or hidden)"
        ))),
    }
}

fn push_kv(out: &mut String, key: &str, value: impl fmt::Display) {
    out.push_str(key);
    out.push_str(": ");
    out.push_str(&value.to_string());
    out.push('\n');
}

fn push_real(out: &mut String, key: &str, value: f64) {
    push_kv(out, key, format_real(value));
}

fn push_params(out: &mut String, prefix: &str, x: &XParams) {
    for (name, value) in [
        ("pop00", x.pop00),
        ("pop01", x.pop01),
        ("pop10", x.pop10),
        ("pop11", x.pop11),
        ("coh_outer", x.coh_outer),
        ("coh_inner", x.coh_inner),
    ] {
        push_real(out, &format!("{prefix}{name}"), value);
    }
}

fn locality_word(v: ThresholdVerdict) -> &'static str {
    match v {
        ThresholdVerdict::Below => "local",
        ThresholdVerdict::Boundary => "boundary",
        ThresholdVerdict::Above => "nonlocal",
    }
}

fn bilocal_word(v: ThresholdVerdict) -> &'static str {
    match v {
        ThresholdVerdict::Below => "bilocal_not_refuted",
        ThresholdVerdict::Boundary => "boundary",
        ThresholdVerdict::Above => "nonbilocal",
    }
}

fn steering_word(v: SteeringVerdict) -> &'static str {
    match v {
        SteeringVerdict::Guaranteed => "guaranteed",
        SteeringVerdict::NotGuaranteed => "not_guaranteed",
    }
}

fn label_name(label: BellLabel) -> &'static str {
    match label {
        BellLabel::PhiPlus => "phi_plus",
        BellLabel::PhiMinus => "phi_minus",
        BellLabel::PsiPlus => "psi_plus",
        BellLabel::PsiMinus => "psi_minus",
    }
}

/// Single-state assessment: validity, CHSH reach, concurrence, plane margins,
/// and the identical-copy steering/nonbilocality report.
pub fn assess_report(x: &XParams) -> Result<String, CliError> {
    let mut out = String::new();
    push_kv(&mut out, "valid", true);
    push_params(&mut out, "", x);
    let h = horodecki(&x.matrix()).map_err(input_err)?;
    push_real(&mut out, "horodecki_m", h.m);
    push_real(&mut out, "chsh", h.chsh);
    push_kv(&mut out, "chsh_verdict", locality_word(h.verdict));
    push_real(&mut out, "concurrence", concurrence_x(x));
    let vars = locality_vars(x);
    push_real(&mut out, "margin_xy", vars.margin_xy);
    push_real(&mut out, "margin_zx", vars.margin_zx);
    push_real(&mut out, "margin_zy", vars.margin_zy);
    match steering_report(x) {
        Ok(s) => {
            for (i, v) in s.r.iter().enumerate() {
                push_real(&mut out, &format!("steering_r{}", i + 1), *v);
            }
            push_kv(&mut out, "steering_pre", steering_word(s.pre_verdict));
            push_real(&mut out, "swap_branch_weight", s.weight);
            for (i, v) in s.r_post.iter().enumerate() {
                push_real(&mut out, &format!("steering_post_r{}", i + 1), *v);
            }
            push_kv(&mut out, "steering_post", steering_word(s.post_verdict));
            push_kv(&mut out, "swap_nonbilocal", s.nonbilocal);
        }
        Err(e) => push_kv(&mut out, "steering", format!("unavailable ({e})")),
    }
    Ok(out)
}

/// Which side(s) of the bilocal evaluation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BilocalMode {
    Analytic,
    Numeric,
    Both,
}

/// Two-source bilocal report: closed-form bound, numeric settings maximum
/// with the achieving angles, and their gap.
pub fn bilocal_report(x1: &XParams, x2: &XParams, mode: BilocalMode) -> Result<String, CliError> {
    let mut out = String::new();
    let bound = analytic_bound(x1, x2);
    if mode != BilocalMode::Numeric {
        push_real(&mut out, "analytic_b1", bound.value);
        push_kv(&mut out, "analytic_clamped", bound.clamped);
    }
    if mode != BilocalMode::Analytic {
        let a = maximize_bilocal(x1, x2).map_err(input_err)?;
        push_real(&mut out, "numeric_b", a.b_value);
        push_real(&mut out, "i_term", a.i_term);
        push_real(&mut out, "j_term", a.j_term);
        for (party, pair) in [("alice", &a.settings.alice), ("charlie", &a.settings.charlie)] {
            for (i, s) in pair.iter().enumerate() {
                push_real(&mut out, &format!("{party}{}_theta", i + 1), s.theta);
                push_real(&mut out, &format!("{party}{}_phi", i + 1), s.phi);
            }
        }
        if mode == BilocalMode::Both {
            push_real(&mut out, "gap", a.b_value - bound.value);
        }
        push_kv(&mut out, "verdict", bilocal_word(a.verdict));
    } else {
        use bilocal_core::states::{classify, BOUNDARY_TOL};
        push_kv(&mut out, "verdict", bilocal_word(classify(bound.value, 1.0, BOUNDARY_TOL)));
    }
    Ok(out)
}

/// Swap inspection: the four Bell branches with probabilities and the
/// conditional end-state parameters.
pub fn swap_report(x1: &XParams, x2: &XParams) -> String {
    let mut out = String::new();
    for outcome in swap(x1, x2) {
        let name = label_name(outcome.label);
        push_real(&mut out, &format!("{name}_probability"), outcome.probability);
        match &outcome.conditional {
            Some(rho) => match XParams::from_matrix(rho) {
                Ok(params) => push_params(&mut out, &format!("{name}_"), &params),
                Err(e) => push_kv(&mut out, &format!("{name}_conditional"), format!("({e})")),
            },
            None => {
                push_kv(&mut out, &format!("{name}_conditional"), "none (negligible probability)")
            }
        }
    }
    out
}

/// Filtering report: the filtered state, its spectral CHSH ground truth, and
/// the two tabulated closed-form entries.
pub fn filter_report(x: &XParams, lambda1: f64, lambda2: f64) -> Result<String, CliError> {
    let f = FilterParams::new(lambda1, lambda2).map_err(input_err)?;
    let report = filtered_chsh_bound(x, &f).map_err(input_err)?;
    let mut out = String::new();
    push_real(&mut out, "normalization", f.normalization(x));
    push_params(&mut out, "filtered_", &report.filtered);
    push_real(&mut out, "chsh_ground_truth", report.ground_truth);
    push_real(&mut out, "table_first", report.table_first);
    push_real(&mut out, "table_second", report.table_second);
    Ok(out)
}

/// Output encoding for scan tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

/// Build a scan configuration from `--fig`/`--config` plus an optional
/// uniform `--step` override.
pub fn scan_config_from_args(
    fig: Option<u8>,
    config: Option<&Path>,
    step: Option<f64>,
) -> Result<ScanConfig, CliError> {
    let mut cfg = match (fig, config) {
        (Some(_), Some(_)) => {
            return Err(CliError::Input("--fig and --config are mutually exclusive".into()))
        }
        (None, None) => return Err(CliError::Input("one of --fig or --config is required".into())),
        (Some(n), None) => ScanConfig::figure(
            Figure::from_number(n)
                .ok_or_else(|| CliError::Input(format!("figure {n} outside 2..=6")))?,
        ),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            parse_scan_config(&text)?
        }
    };
    if let Some(step) = step {
        cfg = cfg.with_step(step);
    }
    Ok(cfg)
}

/// Parse the flat key-value scan config format.
///
/// `figure` picks the built-in scan (2..=6); `step` overrides every axis;
/// `coh_outer`/`coh_inner` bind the population-scan coherences; and
/// `<axis>.min`/`<axis>.max`/`<axis>.step` override a single named axis.
/// `#` starts a comment; blank lines are ignored.
pub fn parse_scan_config(text: &str) -> Result<ScanConfig, CliError> {
    let mut entries: Vec<(&str, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Input(format!("config line {}: expected `key = value`", idx + 1))
        })?;
        entries.push((key.trim(), value.trim()));
    }
    let number = |key: &str, value: &str| -> Result<f64, CliError> {
        value
            .parse::<f64>()
            .map_err(|_| CliError::Input(format!("config key `{key}`: `{value}` is not a number")))
    };
    let figure_value = entries
        .iter()
        .find(|(k, _)| *k == "figure")
        .ok_or_else(|| CliError::Input("config is missing the `figure` key".into()))?
        .1;
    let figure_number = figure_value
        .parse::<u8>()
        .ok()
        .and_then(Figure::from_number)
        .ok_or_else(|| CliError::Input(format!("config figure `{figure_value}` outside 2..=6")))?;
    let mut cfg = ScanConfig::figure(figure_number);
    for (key, value) in entries {
        match key {
            "figure" => {}
            "step" => cfg = cfg.with_step(number(key, value)?),
            "coh_outer" => cfg.coh_outer = number(key, value)?,
            "coh_inner" => cfg.coh_inner = number(key, value)?,
            _ => {
                let (axis_name, field) = key.split_once('.').ok_or_else(|| {
                    CliError::Input(format!("unknown config key `{key}`"))
                })?;
                let axis = cfg
                    .axes
                    .iter_mut()
                    .find(|a| a.name == axis_name)
                    .ok_or_else(|| {
                        CliError::Input(format!("config key `{key}`: no axis `{axis_name}`"))
                    })?;
                match field {
                    "min" => axis.min = number(key, value)?,
                    "max" => axis.max = number(key, value)?,
                    "step" => axis.step = number(key, value)?,
                    _ => {
                        return Err(CliError::Input(format!(
                            "config key `{key}`: axis field must be min, max, or step"
                        )))
                    }
                }
            }
        }
    }
    Ok(cfg)
}

/// Run a configured scan, mapping grid errors to the input exit class.
pub fn execute_scan(cfg: &ScanConfig) -> Result<ScanTable, CliError> {
    run_scan(cfg).map_err(input_err)
}

/// Resolve an output path against the default output directory (the
/// `BILOCAL_OUT_DIR` environment variable): relative paths land under it.
pub fn resolve_out_path(out: &Path, default_dir: Option<&Path>) -> PathBuf {
    match default_dir {
        Some(dir) if out.is_relative() => dir.join(out),
        _ => out.to_path_buf(),
    }
}

/// Where an emitted scan table went.
#[derive(Debug)]
pub enum Emitted {
    /// No output path was given; the caller prints the rendered text.
    Stdout(String),
    /// The table was written to this file.
    File(PathBuf),
}

/// Render a scan table and either write it to `out` or hand it back for
/// stdout.
pub fn emit(
    table: &ScanTable,
    format: OutFormat,
    out: Option<&Path>,
) -> Result<Emitted, CliError> {
    let rendered = match format {
        OutFormat::Csv => render_csv(table),
        OutFormat::Json => render_json(table),
    };
    match out {
        None => Ok(Emitted::Stdout(rendered)),
        Some(path) => {
            fs::write(path, rendered)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(Emitted::File(path.to_path_buf()))
        }
    }
}
