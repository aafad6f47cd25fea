//! Experiment configuration, single runs, aggregation and result files.

pub mod aggregate;
pub mod config;
pub mod experiment;
pub mod io;
pub mod run;

pub use aggregate::{aggregate_quartiles, quartiles, resolve_start, resolve_t_max, ConfigSummary, QuartileSummary, WindowSummary};
pub use config::{Algorithm, ExperimentConfig, Horizon, StartRule, Window};
pub use experiment::{
    experiment_matrix, reaggregate, run_experiment, write_outputs, ExperimentOutcome, ExperimentPlan, ExperimentSummary,
    Overrides, TableKind,
};
pub use io::{read_run_csv, run_csv_path, write_run_csv};
pub use run::{detect_start, detect_t_start, detect_t_start_lotz, run_single, GenerationRow, RunRecord};
