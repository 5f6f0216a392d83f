//! Curve sets for the three figure families: the two-outcome example, uniform
//! supports of several sizes, and the two hand-built policies.

use std::path::Path;

use crate::csv_io::{write_sweep_csv, SweepRow};
use crate::error::{io_error, ExpError, Result};
use crate::grid::NGrid;
use crate::scenarios::BuiltinScenario;
use crate::svg::{emit_svg, SvgStyle};
use crate::sweep::sweep_policy;

/// Default number of log-spaced grid points per figure.
pub const DEFAULT_POINTS: usize = 50;

/// Uniform support sizes plotted when no size is given.
pub const FIGURE2_SIZES: [usize; 4] = [10, 100, 1_000, 10_000];

/// One emitted panel.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePanel {
    pub scenario: BuiltinScenario,
    pub rows: Vec<SweepRow>,
    pub csv: String,
    pub svg: String,
}

impl FigurePanel {
    /// Base file name without extension, e.g. `fig2_uniform_100`.
    pub fn stem(&self, figure: u8) -> String {
        format!("fig{figure}_{}", self.scenario.slug())
    }
}

fn panel(scenario: BuiltinScenario, max_n: u64, points: usize, curves: &[&str]) -> Result<FigurePanel> {
    let grid = NGrid::log_spaced(1, max_n, points)?;
    let rows = sweep_policy(&scenario.policy()?, &grid, 0, 0)?;
    let csv = write_sweep_csv(&rows)?;
    let style = SvgStyle { title: scenario.to_string(), ..SvgStyle::default() };
    let svg = emit_svg(&rows, curves, &style)?;
    Ok(FigurePanel { scenario, rows, csv, svg })
}

/// Build every panel of a figure. `uniform_size` restricts figure 2 to one size.
pub fn reproduce(figure: u8, uniform_size: Option<usize>, points: usize) -> Result<Vec<FigurePanel>> {
    let four = ["formula", "exact_kl", "alt_expected", "proposed_expected"];
    if uniform_size.is_some() && figure != 2 {
        return Err(ExpError::Config("--L only applies to figure 2".into()));
    }
    match figure {
        1 => Ok(vec![panel(
            BuiltinScenario::Example1,
            1_000,
            points,
            &["formula", "exact_kl", "proposed_expected"],
        )?]),
        2 => {
            let sizes = match uniform_size {
                Some(l) if l < 2 => return Err(ExpError::Config("--L must be at least 2".into())),
                Some(l) => vec![l],
                None => FIGURE2_SIZES.to_vec(),
            };
            sizes
                .into_iter()
                .map(|l| panel(BuiltinScenario::Uniform(l), 1_000_000, points, &four))
                .collect()
        }
        3 => [BuiltinScenario::CherryLeft, BuiltinScenario::CherryRight]
            .into_iter()
            .map(|s| panel(s, 1_000_000, points, &four))
            .collect(),
        other => Err(ExpError::Config(format!("unknown figure {other}; expected 1, 2 or 3"))),
    }
}

/// Write `<stem>.csv` and `<stem>.svg` for every panel into `dir`.
pub fn write_panels(figure: u8, panels: &[FigurePanel], dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir).map_err(io_error(dir))?;
    let mut written = Vec::new();
    for p in panels {
        for (ext, body) in [("csv", &p.csv), ("svg", &p.svg)] {
            let path = dir.join(format!("{}.{ext}", p.stem(figure)));
            std::fs::write(&path, body).map_err(io_error(&path))?;
            written.push(path);
        }
    }
    Ok(written)
}
