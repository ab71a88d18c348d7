pub mod compare;
pub mod figure;
pub mod simulate;
pub mod verify;

pub use compare::{cmd_compare_measures, compare_measures, NEGATIVITY_AGREEMENT};
pub use figure::{cmd_figure, figure_datasets, Figure, FigureOptions};
pub use simulate::{cmd_simulate, simulate};
pub use verify::{
    cmd_verify, run_verify, AmplitudeFn, CheckResult, Tolerances, VerifyOptions, VerifyReport,
};
