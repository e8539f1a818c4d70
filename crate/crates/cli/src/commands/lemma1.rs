use gapseries::constructions::{build_gadget, lemma1_check, TailModel};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{real, Table};
use crate::source::exponents;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginRow {
    pub q: f64,
    pub n: usize,
    pub k: usize,
    pub margin: f64,
}

impl MarginRow {
    /// Nonnegative up to rounding that grows with the index distance.
    pub fn ok(&self) -> bool {
        self.margin >= -1e-9 * (self.n.abs_diff(self.k) as f64 + 1.0)
    }
}

/// Margins of the separation inequality over all pairs `n, k ≤ n_max`.
pub fn cmd_lemma1(cfg: &RunConfig) -> Result<(Vec<MarginRow>, Table), CliError> {
    let lc = cfg
        .lemma1
        .clone()
        .ok_or_else(|| CliError::Config("[lemma1] table is required".into()))?;
    let exps = exponents(&cfg.series)?;
    let n_max = lc.n_max.unwrap_or(exps.len().saturating_sub(1));
    let tail = lc
        .tail_bound
        .map_or_else(TailModel::default, TailModel::Explicit);
    let mut rows = Vec::new();
    for &q in &lc.q {
        let g = build_gadget(exps.values(), q, n_max, cfg.tolerances.tail_tol, tail)?;
        for n in 0..=n_max {
            for k in 0..=n_max {
                rows.push(MarginRow {
                    q,
                    n,
                    k,
                    margin: lemma1_check(&g, n, k)?,
                });
            }
        }
    }
    let mut table = Table::new(&["q", "n", "k", "margin", "ok"]);
    for r in &rows {
        table.push(vec![
            real(r.q),
            r.n.to_string(),
            r.k.to_string(),
            real(r.margin),
            u8::from(r.ok()).to_string(),
        ]);
    }
    let failures = rows.iter().filter(|r| !r.ok()).count();
    table.check("margins", vec!["failures".into(), failures.to_string()]);
    Ok((rows, table))
}
