use gapseries::criteria::{class_membership, cond_88, ClassKind, ClassMembershipParams};
use gapseries::measure::{
    h1_measure_of_log_image, h_log_measure, h_measure, log_measure, Interval, IntervalSet,
    MonotoneFn,
};
use gapseries::series::{PhaseDomain, PhaseSearchOpts, SeriesKind, SeriesSpec};
use rayon::prelude::*;

use super::search_opts;
use crate::config::{grid, RunConfig};
use crate::error::CliError;
use crate::report::{real, Table};
use crate::source::{build_series, builtin, ClassFn};

/// Values at one abscissa, all scaled by `μ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub log_mu: f64,
    pub nu: usize,
    /// `M/μ`, a lower bound of the true maximum.
    pub max_scaled: f64,
    /// `m/μ`, an upper bound of the true minimum.
    pub min_scaled: f64,
    pub sum_scaled: f64,
    /// `M/μ − 1`.
    pub ratio_m_mu: f64,
    /// `M/m − 1`, infinite when `m` is at the rounding-noise floor.
    pub ratio_m_m: f64,
    pub flagged: bool,
    /// The phase search covered a finite window only.
    pub window_approximate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub x: f64,
    pub values: Result<PointValues, String>,
}

/// `m` below `√ε · Σ|terms|` cannot be told apart from zero.
fn noise_floor(sum_scaled: f64) -> f64 {
    f64::EPSILON.sqrt() * sum_scaled
}

fn point(
    spec: &SeriesSpec<f64>,
    x: f64,
    opts: &PhaseSearchOpts<f64>,
    beta: f64,
) -> Result<PointValues, String> {
    let ext = spec.phase_extremes(x, opts).map_err(|e| e.to_string())?;
    let (max, min, sum) = (ext.max.value, ext.min.value, ext.sum);
    let ratio_m_mu = max - 1.0;
    let ratio_m_m = if min <= noise_floor(sum) {
        f64::INFINITY
    } else {
        max / min - 1.0
    };
    Ok(PointValues {
        log_mu: ext.max.log_mu,
        nu: ext.nu,
        max_scaled: max,
        min_scaled: min,
        sum_scaled: sum,
        ratio_m_mu,
        ratio_m_m,
        flagged: ratio_m_mu > beta || ratio_m_m > beta,
        window_approximate: matches!(ext.max.domain, PhaseDomain::Window(_)),
    })
}

/// Evaluates every abscissa in parallel; the result keeps the order of `xs`.
pub fn sweep_points(
    spec: &SeriesSpec<f64>,
    xs: &[f64],
    opts: &PhaseSearchOpts<f64>,
    beta: f64,
) -> Vec<SweepPoint> {
    xs.par_iter()
        .map(|&x| SweepPoint {
            x,
            values: point(spec, x, opts, beta),
        })
        .collect()
}

/// Union of the grid cells of flagged points. The cell of `t_i` runs between
/// the midpoints to its neighbours (to `lo`, `hi` at the ends), so adjacent
/// cells share an endpoint exactly and runs of flagged points merge.
pub fn detect(ts: &[f64], flags: &[bool], lo: f64, hi: f64) -> IntervalSet<f64> {
    let mids: Vec<f64> = ts.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let cells = (0..ts.len()).filter(|&i| flags[i]).map(|i| {
        let start = if i == 0 { lo } else { mids[i - 1] };
        let end = if i + 1 == ts.len() { hi } else { mids[i] };
        Interval::half_open(start, end)
    });
    IntervalSet::from_intervals(cells).expect("cells are ordered and nonempty")
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    /// Grid in the sweep variable: `x` for Dirichlet series, `r` for gap power series.
    pub grid: Vec<f64>,
    pub points: Vec<SweepPoint>,
    pub detected: IntervalSet<f64>,
    pub table: Table,
}

const SWEEP_HEADER: [&str; 11] = [
    "x",
    "log_mu",
    "nu",
    "M_scaled",
    "m_scaled",
    "sum_scaled",
    "ratio_M_mu",
    "ratio_M_m",
    "flagged",
    "window",
    "error",
];

fn row(lead: Vec<String>, p: &SweepPoint) -> Vec<String> {
    let mut r = lead;
    match &p.values {
        Ok(v) => r.extend([
            real(v.log_mu),
            v.nu.to_string(),
            real(v.max_scaled),
            real(v.min_scaled),
            real(v.sum_scaled),
            real(v.ratio_m_mu),
            real(v.ratio_m_m),
            u8::from(v.flagged).to_string(),
            u8::from(v.window_approximate).to_string(),
            String::new(),
        ]),
        Err(e) => {
            r.extend(std::iter::repeat_n(String::new(), 9));
            r.push(e.clone());
        }
    }
    r
}

fn flags(points: &[SweepPoint]) -> Vec<bool> {
    points
        .iter()
        .map(|p| p.values.as_ref().is_ok_and(|v| v.flagged))
        .collect()
}

fn spec_for(cfg: &RunConfig, seed: u64) -> Result<SeriesSpec<f64>, CliError> {
    Ok(build_series(&cfg.series, seed)?.0)
}

fn measure_footer(
    table: &mut Table,
    h: &dyn MonotoneFn<f64>,
    set: &IntervalSet<f64>,
    quad_tol: f64,
) {
    table.measure("lebesgue", Ok(set.total_length()));
    table.measure("log", log_measure(set, false).map_err(|e| e.to_string()));
    table.measure(
        "h",
        h_measure(h, &set.clip(h.domain_floor(), f64::INFINITY)).map_err(|e| e.to_string()),
    );
    table.measure(
        "h_log",
        h_log_measure(h, &set.clip(1.0, f64::INFINITY), quad_tol).map_err(|e| e.to_string()),
    );
}

/// Sweep over `x` of `M/μ − 1` and `M/m − 1` with detection of the set
/// where either exceeds `β`.
pub fn cmd_sweep(cfg: &RunConfig, seed: u64) -> Result<SweepReport, CliError> {
    let sw = cfg
        .sweep
        .ok_or_else(|| CliError::Config("[sweep] table is required".into()))?;
    let spec = spec_for(cfg, seed)?;
    let xs = grid(sw.x_min, sw.x_max, sw.step);
    let points = sweep_points(&spec, &xs, &search_opts(&cfg.tolerances), cfg.beta);
    let detected = detect(&xs, &flags(&points), sw.x_min, sw.x_max);
    let mut table = Table::new(&SWEEP_HEADER);
    for p in &points {
        table.push(row(vec![real(p.x)], p));
    }
    let h = builtin(cfg.h);
    measure_footer(&mut table, &h, &detected, cfg.tolerances.quad_tol);
    Ok(SweepReport {
        grid: xs,
        points,
        detected,
        table,
    })
}

/// Sweep over `r` of a gap power series through `x = ln r`, with the
/// h-logarithmic measure of the detected set and the class and gap checks.
pub fn cmd_gap_power(cfg: &RunConfig, seed: u64) -> Result<SweepReport, CliError> {
    let rc = cfg
        .radius
        .ok_or_else(|| CliError::Config("[radius] table is required".into()))?;
    let spec = spec_for(cfg, seed)?;
    if spec.kind() != SeriesKind::GapPower {
        return Err(CliError::Config(
            "gap-power needs series.kind = \"gap-power\"".into(),
        ));
    }
    let rs = grid(rc.r_min, rc.r_max, rc.step);
    let xs: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
    let points = sweep_points(&spec, &xs, &search_opts(&cfg.tolerances), cfg.beta);
    let detected = detect(&rs, &flags(&points), rc.r_min, rc.r_max);

    let mut header = vec!["r"];
    header.extend(&SWEEP_HEADER);
    let mut table = Table::new(&header);
    for (p, &r) in points.iter().zip(&rs) {
        table.push(row(vec![real(r), real(p.x)], p));
    }
    let h = builtin(cfg.h);
    let tol = cfg.tolerances.quad_tol;
    table.measure("lebesgue", Ok(detected.total_length()));
    table.measure(
        "log",
        log_measure(&detected, false).map_err(|e| e.to_string()),
    );
    table.measure(
        "h_log",
        h_log_measure(&h, &detected, tol).map_err(|e| e.to_string()),
    );
    table.measure(
        "h1_of_ln_image",
        h1_measure_of_log_image(&h, &detected, tol).map_err(|e| e.to_string()),
    );

    let class = ClassFn::new(cfg.phi);
    let samples: Vec<f64> = xs.iter().copied().filter(|&x| x >= 1.0).collect();
    if !samples.is_empty() {
        let params = ClassMembershipParams {
            guard_margin: cfg.tolerances.guard_margin,
            ..ClassMembershipParams::new(&class.forward, samples)
        };
        match class_membership(&spec, &params, ClassKind::D) {
            Ok(rep) => table.check(
                "clac1",
                vec![
                    u8::from(rep.passed).to_string(),
                    rep.holds_from.map(|x| real(x.exp())).unwrap_or_default(),
                ],
            ),
            Err(e) => table.check("clac1", vec![String::new(), String::new(), e.to_string()]),
        }
    }
    let n = spec.len().saturating_sub(1);
    for &b in &cfg.b_grid {
        match cond_88(spec.lambdas(), &h, &class.phi(), b, n) {
            Ok(rep) => table.check(
                "cond88",
                vec![real(b), rep.verdict.as_str().into(), real(rep.total())],
            ),
            Err(e) => table.check(
                "cond88",
                vec![real(b), String::new(), String::new(), e.to_string()],
            ),
        }
    }
    Ok(SweepReport {
        grid: rs,
        points,
        detected,
        table,
    })
}
