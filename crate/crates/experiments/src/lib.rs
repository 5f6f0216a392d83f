//! Sweeps over n, figure reproduction, and the CSV/SVG formats behind the
//! `bon` command line tool.

pub mod csv_io;
pub mod error;
pub mod grid;
pub mod reproduce;
pub mod scenarios;
pub mod svg;
pub mod sweep;

pub use csv_io::{parse_mc_var_csv, parse_sweep_csv, write_mc_var_csv, write_sweep_csv, McVarRow, SweepRow};
pub use error::{ExpError, Result};
pub use grid::NGrid;
pub use reproduce::{reproduce, write_panels, FigurePanel};
pub use scenarios::BuiltinScenario;
pub use svg::{emit_svg, SvgStyle};
pub use sweep::{mc_variance_study, run_sweep, Source, SweepConfig};
