use std::path::Path;

use gapseries::constructions::{
    build_extremal, extremal_exceptional_set, extremal_hmeas_partials, extremal_intervals,
    extremal_verify, ExtremalSeries, HMeasPartials,
};
use gapseries::criteria::{class_membership, ClassKind, ClassMembershipParams, MembershipReport};
use gapseries::measure::{h_measure, PhiHandle};

use super::eval_opts;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{real, Table};
use crate::source::{builtin, exponents};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyRow {
    pub n: usize,
    pub at: &'static str,
    pub x: f64,
    pub ratio: f64,
    pub nu: usize,
    pub in_set: bool,
}

#[derive(Debug, Clone)]
pub struct ConstructReport {
    pub extremal: ExtremalSeries<f64>,
    pub verification: Vec<Result<VerifyRow, String>>,
    pub hmeas: Vec<(usize, Result<HMeasPartials<f64>, String>)>,
    pub membership: Option<MembershipReport<f64>>,
    pub series_table: Table,
    pub set_table: Table,
    pub verify_table: Table,
    pub hmeas_table: Table,
    pub membership_table: Option<Table>,
}

impl VerifyRow {
    /// `M/μ ≥ 1 + e^{-1}` up to `1e-9`.
    pub fn ok(&self, beta: f64) -> bool {
        self.ratio >= beta - 1e-9
    }
}

/// Builds the extremal series on the configured exponents, verifies the
/// ratio on its exceptional intervals and tabulates the h-measure sums.
pub fn cmd_construct(cfg: &RunConfig) -> Result<ConstructReport, CliError> {
    let cc = cfg
        .construct
        .clone()
        .ok_or_else(|| CliError::Config("[construct] table is required".into()))?;
    let exps = exponents(&cfg.series)?;
    let phi1 = builtin(cc.phi1);
    let es = build_extremal(&exps, &PhiHandle::Direct(&phi1), cc.b, exps.len())?;
    let stored = es.len() - 1;

    let mut series_table = Table::new(&["n", "lambda", "log_a", "kappa", "r", "psi"]);
    for n in 0..es.len() {
        series_table.push(vec![
            n.to_string(),
            real(es.lambdas()[n]),
            real(es.spec.log_moduli()[n]),
            if n >= 1 {
                real(es.kappa(n))
            } else {
                String::new()
            },
            if (1..=es.len() - 2).contains(&n) {
                real(es.r(n))
            } else {
                String::new()
            },
            real(es.psi(n)),
        ]);
    }
    series_table.check("eq14_from", vec![es.eq14_from.to_string()]);
    series_table.check("fits_from", vec![es.fits_from.to_string()]);

    let mut set_table = Table::new(&["n", "start", "end", "length"]);
    for (i, iv) in extremal_intervals(&es, stored)?.iter().enumerate() {
        set_table.push(vec![
            (i + 1).to_string(),
            real(iv.start),
            real(iv.end),
            real(iv.length()),
        ]);
    }
    let set = extremal_exceptional_set(&es, stored)?;
    let h = builtin(cfg.h);
    set_table.measure("lebesgue", Ok(set.total_length()));
    set_table.measure("h", h_measure(&h, &set).map_err(|e| e.to_string()));

    let opts = eval_opts(&cfg.tolerances);
    let mut verification = Vec::new();
    for iv in extremal_intervals(&es, cc.verify_intervals.min(stored))?.iter() {
        let n = verification.len() / 3 + 1;
        for (at, x) in [
            ("start", iv.start),
            ("mid", 0.5 * (iv.start + iv.end)),
            ("end", iv.end),
        ] {
            verification.push(
                extremal_verify(&es, x, &opts)
                    .map(|v| VerifyRow {
                        n,
                        at,
                        x,
                        ratio: v.ratio,
                        nu: v.nu,
                        in_set: v.in_set,
                    })
                    .map_err(|e| e.to_string()),
            );
        }
    }
    let mut verify_table = Table::new(&["n", "at", "x", "ratio", "nu", "in_set", "ok", "error"]);
    for v in &verification {
        verify_table.push(match v {
            Ok(v) => vec![
                v.n.to_string(),
                v.at.into(),
                real(v.x),
                real(v.ratio),
                v.nu.to_string(),
                u8::from(v.in_set).to_string(),
                u8::from(v.ok(es.beta)).to_string(),
                String::new(),
            ],
            Err(e) => vec![String::new(); 7]
                .into_iter()
                .chain([e.clone()])
                .collect(),
        });
    }

    let hmeas: Vec<_> = cc
        .hmeas_checkpoints
        .iter()
        .map(|&n| {
            (
                n,
                extremal_hmeas_partials(&es, &h, n).map_err(|e| e.to_string()),
            )
        })
        .collect();
    let mut hmeas_table = Table::new(&[
        "N",
        "h_measure",
        "derivative_lower",
        "gap_condition",
        "error",
    ]);
    for (n, p) in &hmeas {
        hmeas_table.push(match p {
            Ok(p) => vec![
                n.to_string(),
                real(p.h_measure[n - 1]),
                real(p.derivative_lower[n - 1]),
                real(p.gap_condition[n - 1]),
                String::new(),
            ],
            Err(e) => vec![
                n.to_string(),
                String::new(),
                String::new(),
                String::new(),
                e.clone(),
            ],
        });
    }

    let (membership, membership_table) = match cc.membership {
        Some(m) => {
            let class = builtin(cfg.phi);
            let samples = crate::config::grid(
                m.x_min,
                m.x_max,
                (m.x_max - m.x_min) / (m.samples.max(2) - 1) as f64,
            );
            let params = ClassMembershipParams {
                k1: m.k1,
                k2: m.k2,
                x0: m.x_min,
                guard_margin: cfg.tolerances.guard_margin,
                ..ClassMembershipParams::new(&class, samples)
            };
            let rep = class_membership(&es.spec, &params, ClassKind::D1)?;
            let mut t = Table::new(&["x", "margin"]);
            for &(x, margin) in &rep.points {
                t.push(vec![real(x), real(margin)]);
            }
            t.check(
                "d1",
                vec![
                    u8::from(rep.passed).to_string(),
                    rep.holds_from.map(real).unwrap_or_default(),
                ],
            );
            (Some(rep), Some(t))
        }
        None => (None, None),
    };

    Ok(ConstructReport {
        extremal: es,
        verification,
        hmeas,
        membership,
        series_table,
        set_table,
        verify_table,
        hmeas_table,
        membership_table,
    })
}

impl ConstructReport {
    /// Writes `series.csv`, `exceptional_set.csv`, `verification.csv`,
    /// `hmeas.csv` and, when configured, `membership.csv` into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut files = vec![
            ("series.csv", &self.series_table),
            ("exceptional_set.csv", &self.set_table),
            ("verification.csv", &self.verify_table),
            ("hmeas.csv", &self.hmeas_table),
        ];
        if let Some(t) = &self.membership_table {
            files.push(("membership.csv", t));
        }
        for (name, table) in files {
            let path = dir.join(name);
            let f = std::fs::File::create(&path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            table.write(std::io::BufWriter::new(f))?;
        }
        Ok(())
    }
}
