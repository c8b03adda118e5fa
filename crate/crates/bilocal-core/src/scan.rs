//! Deterministic grid scanners over the parameter regions of the criteria
//! families, emitting tabular records as CSV or JSON text.
//!
//! Five built-in scans cover the standard regions: the same-copy T plane,
//! the Werner visibility trade-off, the population simplex of the steering
//! analysis, the single-parameter entangled-mixture square, and the
//! zx-margin plane.  Axis ranges and steps are overridable; grids are
//! row-major with inclusive endpoints, the last step clamped to the maximum.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::criteria::{
    alpha_nonbilocal, maximal_plane_condition, steering_report, t_local_condition,
    t_nonbilocal_condition, visibility_analysis, SteeringVerdict,
};
use crate::states::{TParams, XParams};

/// Relative slack when deciding whether a grid endpoint is already covered.
const GRID_TOL: f64 = 1e-9;

/// Built-in region scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Same-copy T plane `(c1, c3)` with `c2 = 0`: locality and
    /// nonbilocality values and the local-but-nonbilocal region.
    Fig2,
    /// Werner visibility offsets `(phi1, phi2)`: the trade-off margin.
    Fig3,
    /// Population simplex `(pop00, pop01, pop10)` at fixed coherences:
    /// steering guarantees before and after the swap, and nonbilocality.
    Fig4,
    /// Entangled-mixture parameters `(alpha1, alpha2)`: the certified
    /// nonbilocal square.
    Fig5,
    /// zx-margins `(delta1, delta2)`: where the margin product leaves room
    /// for nonbilocality.
    Fig6,
}

impl Figure {
    /// Map a figure number in `2..=6` to its scan.
    pub fn from_number(n: u8) -> Option<Figure> {
        match n {
            2 => Some(Figure::Fig2),
            3 => Some(Figure::Fig3),
            4 => Some(Figure::Fig4),
            5 => Some(Figure::Fig5),
            6 => Some(Figure::Fig6),
            _ => None,
        }
    }

    pub fn number(&self) -> u8 {
        match self {
            Figure::Fig2 => 2,
            Figure::Fig3 => 3,
            Figure::Fig4 => 4,
            Figure::Fig5 => 5,
            Figure::Fig6 => 6,
        }
    }
}

/// One scan axis: inclusive range walked in fixed steps.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub name: &'static str,
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

/// A configured scan: a built-in figure with adjustable axes and fixed
/// parameter bindings.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub figure: Figure,
    pub axes: Vec<AxisSpec>,
    /// Outer coherence bound to the population simplex scan.
    pub coh_outer: f64,
    /// Inner coherence bound to the population simplex scan.
    pub coh_inner: f64,
}

impl ScanConfig {
    /// Default configuration for a built-in scan.
    pub fn figure(figure: Figure) -> Self {
        let unit = 1.0 - core::f64::consts::FRAC_1_SQRT_2;
        let axes: Vec<AxisSpec> = match figure {
            Figure::Fig2 => [("c1", -1.0, 1.0, 0.01), ("c3", -1.0, 1.0, 0.01)]
                .iter()
                .map(|&(name, min, max, step)| AxisSpec { name, min, max, step })
                .collect(),
            Figure::Fig3 => [("phi1", 0.0, unit, 0.005), ("phi2", 0.0, unit, 0.005)]
                .iter()
                .map(|&(name, min, max, step)| AxisSpec { name, min, max, step })
                .collect(),
            Figure::Fig4 => [
                ("pop00", 0.0, 1.0, 0.02),
                ("pop01", 0.0, 1.0, 0.02),
                ("pop10", 0.0, 1.0, 0.02),
            ]
            .iter()
            .map(|&(name, min, max, step)| AxisSpec { name, min, max, step })
            .collect(),
            Figure::Fig5 => [("alpha1", 0.0, 1.0, 0.01), ("alpha2", 0.0, 1.0, 0.01)]
                .iter()
                .map(|&(name, min, max, step)| AxisSpec { name, min, max, step })
                .collect(),
            Figure::Fig6 => [("delta1", -1.0, 1.0, 0.01), ("delta2", -1.0, 1.0, 0.01)]
                .iter()
                .map(|&(name, min, max, step)| AxisSpec { name, min, max, step })
                .collect(),
        };
        let (coh_outer, coh_inner) = match figure {
            Figure::Fig4 => (0.24, 0.0),
            _ => (0.0, 0.0),
        };
        ScanConfig { figure, axes, coh_outer, coh_inner }
    }

    /// Set every axis to the same step.
    pub fn with_step(mut self, step: f64) -> Self {
        for axis in &mut self.axes {
            axis.step = step;
        }
        self
    }

    /// Criterion column names of this scan, after the axis columns.
    pub fn column_names(&self) -> Vec<&'static str> {
        match self.figure {
            Figure::Fig2 => {
                ["valid", "local_value", "local", "nonbilocal_value", "nonbilocal", "flagged"]
                    .to_vec()
            }
            Figure::Fig3 => ["valid", "margin", "flagged"].to_vec(),
            Figure::Fig4 => {
                ["valid", "pre_steering", "post_steering", "nonbilocal", "flagged"].to_vec()
            }
            Figure::Fig5 => ["valid", "value", "flagged"].to_vec(),
            Figure::Fig6 => ["valid", "product", "both_positive", "flagged"].to_vec(),
        }
    }
}

/// One emitted cell: a real criterion value or a boolean flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Real(f64),
    Flag(bool),
}

/// One grid point: axis values followed by criterion columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub axes: Vec<f64>,
    pub columns: Vec<Value>,
}

/// A completed scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub axis_names: Vec<String>,
    pub column_names: Vec<String>,
    pub records: Vec<ScanRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanError {
    /// The figure expects a different number of axes.
    AxisCount { expected: usize, got: usize },
    /// Axis step must be positive.
    AxisStep { axis: usize, step: f64 },
    /// Axis minimum must not exceed its maximum.
    AxisRange { axis: usize, min: f64, max: f64 },
}

impl core::fmt::Display for ScanError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ScanError::AxisCount { expected, got } => {
                write!(f, "scan expects {expected} axes, got {got}")
            }
            ScanError::AxisStep { axis, step } => {
                write!(f, "axis {axis} has nonpositive step {step}")
            }
            ScanError::AxisRange { axis, min, max } => {
                write!(f, "axis {axis} has min {min} above max {max}")
            }
        }
    }
}

impl core::error::Error for ScanError {}

fn axis_points(axis: &AxisSpec) -> Vec<f64> {
    let span = axis.max - axis.min;
    if span == 0.0 {
        return [axis.min].to_vec();
    }
    let full = libm::floor(span / axis.step + GRID_TOL) as usize;
    let mut points = Vec::with_capacity(full + 2);
    for k in 0..=full {
        let v = axis.min + (k as f64) * axis.step;
        points.push(if v > axis.max { axis.max } else { v });
    }
    let covered = axis.max - points[points.len() - 1];
    if covered > GRID_TOL * span.max(1.0) {
        points.push(axis.max);
    }
    points
}

fn validate(cfg: &ScanConfig) -> Result<(), ScanError> {
    let expected = match cfg.figure {
        Figure::Fig4 => 3,
        _ => 2,
    };
    if cfg.axes.len() != expected {
        return Err(ScanError::AxisCount { expected, got: cfg.axes.len() });
    }
    for (i, axis) in cfg.axes.iter().enumerate() {
        if !(axis.step > 0.0) {
            return Err(ScanError::AxisStep { axis: i, step: axis.step });
        }
        if !(axis.min <= axis.max) {
            return Err(ScanError::AxisRange { axis: i, min: axis.min, max: axis.max });
        }
    }
    Ok(())
}

fn evaluate(cfg: &ScanConfig, coords: &[f64], out: &mut Vec<Value>) {
    out.clear();
    match cfg.figure {
        Figure::Fig2 => {
            let (c1, c3) = (coords[0], coords[1]);
            let valid = TParams::new(c1, 0.0, c3).is_ok();
            let t = TParams { corr_x: c1, corr_y: 0.0, corr_z: c3 };
            let loc = t_local_condition(&t, &t);
            let non = t_nonbilocal_condition(&t, &t);
            out.push(Value::Flag(valid));
            out.push(Value::Real(loc.value));
            out.push(Value::Flag(loc.local));
            out.push(Value::Real(non.value));
            out.push(Value::Flag(non.nonbilocal));
            out.push(Value::Flag(loc.local && non.nonbilocal));
        }
        Figure::Fig3 => match visibility_analysis(coords[0], coords[1]) {
            Ok(v) => {
                out.push(Value::Flag(true));
                out.push(Value::Real(v.margin));
                out.push(Value::Flag(v.nonbilocal));
            }
            Err(_) => {
                out.push(Value::Flag(false));
                out.push(Value::Real(0.0));
                out.push(Value::Flag(false));
            }
        },
        Figure::Fig4 => {
            let (s, k, z) = (coords[0], coords[1], coords[2]);
            let report = XParams::new(s, k, z, 1.0 - s - k - z, cfg.coh_outer, cfg.coh_inner)
                .and_then(|x| steering_report(&x));
            match report {
                Ok(rep) => {
                    let pre = rep.pre_verdict == SteeringVerdict::Guaranteed;
                    let post = rep.post_verdict == SteeringVerdict::Guaranteed;
                    out.push(Value::Flag(true));
                    out.push(Value::Flag(pre));
                    out.push(Value::Flag(post));
                    out.push(Value::Flag(rep.nonbilocal));
                    out.push(Value::Flag(rep.nonbilocal && !pre && !post));
                }
                Err(_) => {
                    out.push(Value::Flag(false));
                    for _ in 0..4 {
                        out.push(Value::Flag(false));
                    }
                }
            }
        }
        Figure::Fig5 => {
            let (a1, a2) = (coords[0], coords[1]);
            let valid = (0.0..=1.0).contains(&a1) && (0.0..=1.0).contains(&a2);
            let r = alpha_nonbilocal(a1, a2);
            out.push(Value::Flag(valid));
            out.push(Value::Real(r.value));
            out.push(Value::Flag(valid && r.nonbilocal));
        }
        Figure::Fig6 => {
            let (d1, d2) = (coords[0], coords[1]);
            let valid = (-1.0..=1.0).contains(&d1) && (-1.0..=1.0).contains(&d2);
            let c = maximal_plane_condition(d1, d2);
            out.push(Value::Flag(valid));
            out.push(Value::Real(c.product));
            out.push(Value::Flag(c.both_positive));
            out.push(Value::Flag(valid && c.capable));
        }
    }
}

/// Walk the full grid in row-major axis order, handing each record's axis
/// values and criterion columns to the callback.  Streaming form for grids
/// too large to materialize.
pub fn scan_for_each<F>(cfg: &ScanConfig, mut f: F) -> Result<(), ScanError>
where
    F: FnMut(&[f64], &[Value]),
{
    validate(cfg)?;
    let grids: Vec<Vec<f64>> = cfg.axes.iter().map(axis_points).collect();
    let mut idx = [0usize; 3];
    let n = grids.len();
    let mut coords: Vec<f64> = grids.iter().map(|g| g[0]).collect();
    let mut columns: Vec<Value> = Vec::new();
    loop {
        for (a, grid) in grids.iter().enumerate() {
            coords[a] = grid[idx[a]];
        }
        evaluate(cfg, &coords, &mut columns);
        f(&coords, &columns);
        let mut axis = n;
        loop {
            if axis == 0 {
                return Ok(());
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < grids[axis].len() {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Run a scan and collect every record.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanTable, ScanError> {
    let mut records = Vec::new();
    scan_for_each(cfg, |coords, columns| {
        records.push(ScanRecord { axes: coords.to_vec(), columns: columns.to_vec() });
    })?;
    Ok(ScanTable {
        axis_names: cfg.axes.iter().map(|a| String::from(a.name)).collect(),
        column_names: cfg.column_names().iter().map(|&n| String::from(n)).collect(),
        records,
    })
}

/// Fixed-width scientific notation with 12 significant digits; negative zero
/// normalizes to zero so identical values always print identically.
pub fn format_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn push_value(out: &mut String, v: &Value) {
    match v {
        Value::Real(x) => out.push_str(&format_real(*x)),
        Value::Flag(b) => out.push_str(if *b { "true" } else { "false" }),
    }
}

/// Render a table as CSV: one header row, then one line per record.
pub fn render_csv(table: &ScanTable) -> String {
    let mut out = String::new();
    let mut first = true;
    for name in table.axis_names.iter().chain(table.column_names.iter()) {
        if !first {
            out.push(',');
        }
        out.push_str(name);
        first = false;
    }
    out.push('\n');
    for record in &table.records {
        let mut first = true;
        for axis in &record.axes {
            if !first {
                out.push(',');
            }
            out.push_str(&format_real(*axis));
            first = false;
        }
        for column in &record.columns {
            out.push(',');
            push_value(&mut out, column);
        }
        out.push('\n');
    }
    out
}

/// Render a table as a JSON array of flat objects keyed by axis and column
/// names.
pub fn render_json(table: &ScanTable) -> String {
    let mut out = String::from("[");
    for (i, record) in table.records.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n  {");
        let mut first = true;
        for (name, axis) in table.axis_names.iter().zip(record.axes.iter()) {
            if !first {
                out.push(',');
            }
            out.push_str(&format!("\"{name}\":{}", format_real(*axis)));
            first = false;
        }
        for (name, column) in table.column_names.iter().zip(record.columns.iter()) {
            if !first {
                out.push(',');
            }
            out.push('"');
            out.push_str(name);
            out.push_str("\":");
            push_value(&mut out, column);
            first = false;
        }
        out.push('}');
    }
    out.push_str("\n]\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::analytic_bound;

    fn record_at<'a>(table: &'a ScanTable, axes: &[f64]) -> &'a ScanRecord {
        table
            .records
            .iter()
            .find(|r| r.axes.iter().zip(axes).all(|(a, b)| (a - b).abs() < 1e-9))
            .expect("grid point present")
    }

    fn flag(record: &ScanRecord, table: &ScanTable, name: &str) -> bool {
        let i = table.column_names.iter().position(|n| n == name).unwrap();
        match record.columns[i] {
            Value::Flag(b) => b,
            Value::Real(_) => panic!("column {name} is real-valued"),
        }
    }

    #[test]
    fn axis_points_cover_inclusive_range() {
        let exact = axis_points(&AxisSpec { name: "a", min: 0.0, max: 1.0, step: 0.25 });
        assert_eq!(exact.len(), 5);
        assert!((exact[4] - 1.0).abs() < 1e-15);

        let clamped = axis_points(&AxisSpec { name: "a", min: 0.0, max: 1.0, step: 0.3 });
        assert_eq!(clamped.len(), 5);
        assert!((clamped[3] - 0.9).abs() < 1e-15);
        assert!((clamped[4] - 1.0).abs() < 1e-15);

        let single = axis_points(&AxisSpec { name: "a", min: 0.5, max: 0.5, step: 0.1 });
        assert_eq!(single, [0.5].to_vec());
    }

    #[test]
    fn config_validation_errors() {
        let mut cfg = ScanConfig::figure(Figure::Fig2);
        cfg.axes[0].step = 0.0;
        assert!(matches!(run_scan(&cfg), Err(ScanError::AxisStep { axis: 0, .. })));

        let mut cfg = ScanConfig::figure(Figure::Fig2);
        cfg.axes[1].min = 2.0;
        assert!(matches!(run_scan(&cfg), Err(ScanError::AxisRange { axis: 1, .. })));

        let mut cfg = ScanConfig::figure(Figure::Fig4);
        cfg.axes.pop();
        assert!(matches!(run_scan(&cfg), Err(ScanError::AxisCount { expected: 3, got: 2 })));
    }

    #[test]
    fn same_copy_plane_region_examples() {
        let cfg = ScanConfig::figure(Figure::Fig2).with_step(0.05);
        let table = run_scan(&cfg).unwrap();
        assert_eq!(table.records.len(), 41 * 41);

        let inside = record_at(&table, &[0.8, 0.8]);
        assert!(flag(inside, &table, "local"));
        assert!(flag(inside, &table, "nonbilocal"));
        assert!(flag(inside, &table, "flagged"));

        let outside = record_at(&table, &[0.6, 0.6]);
        assert!(flag(outside, &table, "local"));
        assert!(!flag(outside, &table, "nonbilocal"));
        assert!(!flag(outside, &table, "flagged"));
    }

    #[test]
    fn same_copy_plane_flags_match_analytic_bound() {
        let cfg = ScanConfig::figure(Figure::Fig2).with_step(0.05);
        let mut flagged = 0;
        scan_for_each(&cfg, |coords, columns| {
            if columns[5] == Value::Flag(true) {
                flagged += 1;
                let t = TParams { corr_x: coords[0], corr_y: 0.0, corr_z: coords[1] };
                let b = analytic_bound(&t.to_x(), &t.to_x());
                assert!(b.value > 1.0);
            }
        })
        .unwrap();
        assert!(flagged > 0);
    }

    #[test]
    fn visibility_scan_bounds_first_offset() {
        let cfg = ScanConfig::figure(Figure::Fig3).with_step(0.01);
        let table = run_scan(&cfg).unwrap();
        let phi_limit = 0.21 + 0.01;
        for record in &table.records {
            assert!(flag(record, &table, "valid"));
            if flag(record, &table, "flagged") {
                assert!(record.axes[0] < phi_limit);
            }
        }
    }

    #[test]
    fn steering_scan_finds_blind_nonbilocal_points() {
        let cfg = ScanConfig::figure(Figure::Fig4).with_step(0.05);
        let table = run_scan(&cfg).unwrap();
        assert_eq!(table.records.len(), 21 * 21 * 21);
        let mut blind = 0;
        let mut valid = 0;
        for record in &table.records {
            if flag(record, &table, "valid") {
                valid += 1;
            }
            if flag(record, &table, "flagged") {
                blind += 1;
                assert!(flag(record, &table, "valid"));
                assert!(!flag(record, &table, "pre_steering"));
                assert!(!flag(record, &table, "post_steering"));
                assert!(flag(record, &table, "nonbilocal"));
            }
        }
        assert!(valid > 0);
        assert!(blind > 0);
    }

    #[test]
    fn mixture_scan_respects_half_threshold() {
        let cfg = ScanConfig::figure(Figure::Fig5).with_step(0.02);
        let table = run_scan(&cfg).unwrap();
        let mut flagged = 0;
        for record in &table.records {
            if flag(record, &table, "flagged") {
                flagged += 1;
                assert!(record.axes[0].min(record.axes[1]) >= 0.5);
            }
        }
        assert!(flagged > 0);
    }

    #[test]
    fn margin_scan_excludes_positive_pairs() {
        let cfg = ScanConfig::figure(Figure::Fig6).with_step(0.05);
        let table = run_scan(&cfg).unwrap();
        for record in &table.records {
            if flag(record, &table, "flagged") {
                assert!(!flag(record, &table, "both_positive"));
                assert!(record.axes[0].min(record.axes[1]) < 0.0);
            }
        }
    }

    #[test]
    fn scans_are_deterministic() {
        let cfg = ScanConfig::figure(Figure::Fig5).with_step(0.1);
        let a = run_scan(&cfg).unwrap();
        let b = run_scan(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(render_csv(&a), render_csv(&b));
        assert_eq!(render_json(&a), render_json(&b));
    }

    #[test]
    fn csv_shape_and_formatting() {
        let table = ScanTable {
            axis_names: ["x"].iter().map(|&s| String::from(s)).collect(),
            column_names: ["valid", "value"].iter().map(|&s| String::from(s)).collect(),
            records: [
                ScanRecord {
                    axes: [0.25].to_vec(),
                    columns: [Value::Flag(true), Value::Real(-0.0)].to_vec(),
                },
                ScanRecord {
                    axes: [0.5].to_vec(),
                    columns: [Value::Flag(false), Value::Real(1.0 / 3.0)].to_vec(),
                },
            ]
            .to_vec(),
        };
        let csv = render_csv(&table);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "x,valid,value");
        assert_eq!(lines[1], "2.50000000000e-1,true,0.00000000000e0");
        assert_eq!(lines[2], "5.00000000000e-1,false,3.33333333333e-1");
    }

    #[test]
    fn json_round_trips() {
        let cfg = ScanConfig::figure(Figure::Fig6).with_step(0.5);
        let table = run_scan(&cfg).unwrap();
        let json = render_json(&table);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        let rows = parsed.as_array().unwrap();
        assert_eq!(rows.len(), table.records.len());
        for (row, record) in rows.iter().zip(&table.records) {
            let obj = row.as_object().unwrap();
            for (name, axis) in table.axis_names.iter().zip(&record.axes) {
                assert!((obj[name].as_f64().unwrap() - axis).abs() < 1e-9);
            }
            for (name, column) in table.column_names.iter().zip(&record.columns) {
                match column {
                    Value::Flag(b) => assert_eq!(obj[name].as_bool().unwrap(), *b),
                    Value::Real(x) => {
                        assert!((obj[name].as_f64().unwrap() - x).abs() < 1e-9)
                    }
                }
            }
        }
    }

    #[test]
    fn figure_numbers_round_trip() {
        for n in 2..=6u8 {
            assert_eq!(Figure::from_number(n).unwrap().number(), n);
        }
        assert!(Figure::from_number(1).is_none());
        assert!(Figure::from_number(7).is_none());
    }
}
