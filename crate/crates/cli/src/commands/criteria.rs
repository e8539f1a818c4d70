use gapseries::criteria::{
    cond_11, cond_12, cond_8, cond_88, cond_conjecture, cond_gap, cond_thm6, CriterionReport,
};
use gapseries::measure::PhiHandle;

use crate::config::{Condition, RunConfig};
use crate::error::CliError;
use crate::report::{real, Table};
use crate::source::{builtin, exponents, ClassFn};

/// One `(condition, b, N)` row.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaRow {
    pub condition: Condition,
    pub b: Option<f64>,
    pub n: usize,
    pub report: Result<CriterionReport<f64>, String>,
}

impl CriteriaRow {
    fn cells(&self) -> Vec<String> {
        let mut cells = vec![
            self.condition.as_str().to_string(),
            self.b.map(real).unwrap_or_default(),
            self.n.to_string(),
        ];
        match &self.report {
            Ok(r) => cells.extend([
                r.terms.last().copied().map(real).unwrap_or_default(),
                real(r.total()),
                r.block_ratios.last().copied().map(real).unwrap_or_default(),
                r.verdict.as_str().to_string(),
                String::new(),
            ]),
            Err(e) => cells.extend([
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                e.clone(),
            ]),
        }
        cells
    }
}

/// Condition tables over the b-grid at each checkpoint.
pub fn cmd_criteria(cfg: &RunConfig) -> Result<(Vec<CriteriaRow>, Table), CliError> {
    let cc = cfg
        .criteria
        .as_ref()
        .ok_or_else(|| CliError::Config("[criteria] table is required".into()))?;
    let exps = exponents(&cfg.series)?;
    let l = exps.values();
    let checkpoints = cc.checkpoints.clone().unwrap_or_else(|| vec![cc.n]);
    if let Some(&bad) = checkpoints.iter().find(|&&c| c == 0 || c > cc.n) {
        return Err(CliError::Config(format!(
            "checkpoint {bad} outside 1..={}",
            cc.n
        )));
    }
    let h = builtin(cfg.h);
    let class = ClassFn::new(cfg.phi);
    let phi = class.phi();
    let phi0 = ClassFn::new(cc.phi0);
    let phi1 = builtin(cc.phi1);
    let phi1 = PhiHandle::Direct(&phi1);

    let run = |cond: Condition, b: f64| -> gapseries::Result<CriterionReport<f64>> {
        match cond {
            Condition::Gap => cond_gap(l, cc.n),
            Condition::C8 => cond_8(l, &h, &phi, b, cc.n),
            Condition::C11 => cond_11(l, &h, &phi0.phi(), b, cc.n),
            Condition::C12 => cond_12(l, &h, &phi1, b, cc.n),
            Condition::Thm6 => cond_thm6(l, &h, cc.alpha, b, cc.n),
            Condition::C88 => cond_88(l, &h, &phi, b, cc.n),
            Condition::Conjecture => cond_conjecture(l, &h, &phi, cc.n),
        }
    };

    let mut rows = Vec::new();
    for &cond in &cc.conditions {
        let bs: Vec<Option<f64>> = if cond.uses_b() {
            cfg.b_grid.iter().map(|&b| Some(b)).collect()
        } else {
            vec![None]
        };
        for b in bs {
            let full = run(cond, b.unwrap_or(1.0)).map_err(|e| e.to_string());
            for &n in &checkpoints {
                let report = full.as_ref().map(|r| r.truncated(n)).map_err(Clone::clone);
                rows.push(CriteriaRow {
                    condition: cond,
                    b,
                    n,
                    report,
                });
            }
        }
    }
    let mut table = Table::new(&[
        "condition",
        "b",
        "n",
        "term",
        "partial_sum",
        "block_ratio",
        "verdict",
        "error",
    ]);
    for r in &rows {
        table.push(r.cells());
    }
    Ok((rows, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gapseries::criteria::Verdict;

    fn cfg(exps: &str, h: &str) -> RunConfig {
        RunConfig::from_toml(&format!(
            "h = {h}\n[series]\nexponents = {exps}\n[criteria]\nn = 30\ncheckpoints = [10, 30]\n"
        ))
        .unwrap()
    }

    #[test]
    fn geometric_gap_condition() {
        let c = cfg(
            r#"{ type = "geometric", c = 2.0, count = 31 }"#,
            r#"{ name = "identity" }"#,
        );
        let (rows, _) = cmd_criteria(&c).unwrap();
        let gap = rows
            .iter()
            .find(|r| r.condition == Condition::Gap && r.n == 30)
            .unwrap();
        let rep = gap.report.as_ref().unwrap();
        assert_eq!(rep.verdict, Verdict::Converging);
        // Σ_{k<30} 1/g_k = 1/2 + Σ_{k=1}^{29} 2^{-k}
        assert!((rep.total() - (1.5 - 2f64.powi(-29))).abs() < 1e-15);
    }

    #[test]
    fn identity_h_rows_repeat_gap_rows() {
        let c = cfg(
            r#"{ type = "power", c = 1.0, p = 2.0, count = 40 }"#,
            r#"{ name = "identity" }"#,
        );
        let (rows, _) = cmd_criteria(&c).unwrap();
        let gap: Vec<_> = rows
            .iter()
            .filter(|r| r.condition == Condition::Gap)
            .collect();
        for r in rows.iter().filter(|r| r.condition != Condition::Gap) {
            let twin = gap.iter().find(|g| g.n == r.n).unwrap();
            assert_eq!(
                r.report.as_ref().unwrap().terms,
                twin.report.as_ref().unwrap().terms,
                "{:?}",
                r.condition
            );
        }
    }

    #[test]
    fn linear_exponents_diverge() {
        let c = cfg(
            r#"{ type = "power", c = 1.0, p = 1.0, count = 64 }"#,
            r#"{ name = "identity" }"#,
        );
        let (rows, table) = cmd_criteria(&c).unwrap();
        let gap = rows
            .iter()
            .find(|r| r.condition == Condition::Gap && r.n == 30)
            .unwrap();
        assert_eq!(gap.report.as_ref().unwrap().verdict, Verdict::Diverging);
        assert_eq!(table.rows.len(), rows.len());
    }
}
