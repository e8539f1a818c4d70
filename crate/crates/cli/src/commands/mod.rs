//! One function per subcommand, each returning a structured report that
//! renders to CSV.

mod construct;
mod criteria;
mod lemma1;
mod sweep;

pub use construct::{cmd_construct, ConstructReport};
pub use criteria::{cmd_criteria, CriteriaRow};
pub use lemma1::{cmd_lemma1, MarginRow};
pub use sweep::{
    cmd_gap_power, cmd_sweep, detect, sweep_points, PointValues, SweepPoint, SweepReport,
};

use gapseries::series::{EvalOptions, PhaseSearchOpts};

use crate::config::Tolerances;

pub(crate) fn eval_opts(t: &Tolerances) -> EvalOptions<f64> {
    EvalOptions {
        rel_tol: t.rel_tol,
        delta: t.delta,
        guard_margin: t.guard_margin,
    }
}

pub(crate) fn search_opts(t: &Tolerances) -> PhaseSearchOpts<f64> {
    PhaseSearchOpts {
        grid_points: t.grid_points,
        phase_tol: t.phase_tol,
        eval: eval_opts(t),
        ..Default::default()
    }
}
