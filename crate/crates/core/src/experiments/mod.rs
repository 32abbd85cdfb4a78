//! Scenario configs, parameter sweeps and result files.

mod analysis;
mod config;
mod plot;
mod sweep;
mod table;

pub use analysis::{crossover_report, write_crossover_csv, write_xi_opt_csv, xi_opt_report, CrossoverRow, XiOptRow};
pub use config::{
    preset_names, preset_source, ExperimentConfig, Series, Sweep, SweepAxis, XiSetting, DEFAULT_REALIZATIONS,
    DEFAULT_SEED, SCHEMA_VERSION,
};
pub use plot::{emit_plot, render_svg};
pub use sweep::{output_stem, point_config, run_sweep, write_outputs};
pub use table::{emit_csv, Cell, ResultRow, ResultTable, CSV_HEADER};
