//! One calculator run: input → grid → simplified grid → table → report.

use std::path::PathBuf;

use log::{info, warn};

use crate::arrangement::build_arrangement;
use crate::braid::{parse_braid, parse_braid_text};
use crate::grid::GridDiagram;
use crate::homology::HFKTable;
use crate::ovals::select_best_config;
use crate::pipeline::{compute, genus, Pipeline, RunError, SkipPolicy};
use crate::reduce::Strategy;
use crate::report::{Mode, Report};
use crate::ring::{Ring, RingKind, F2};
use crate::simplify::{minimize, SearchBudget};

/// Grids up to this size get the MOS crosscheck and the Euler check by default.
pub const CHECK_LIMIT: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Braid(String),
    /// Grid file, or a file holding a single braid word.
    File(PathBuf),
    Grid(GridDiagram),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: Input,
    pub coeff: RingKind,
    pub mode: Mode,
    /// `None`: faithful reduction up to CHECK_LIMIT, paths above.
    pub strategy: Option<Strategy>,
    pub simplify_budget: usize,
    pub skip: SkipPolicy,
    /// `None`: on iff n ≤ CHECK_LIMIT.
    pub crosscheck: Option<bool>,
    pub dump_arrangement: bool,
}

impl RunConfig {
    pub fn new(input: Input) -> Self {
        RunConfig {
            input,
            coeff: RingKind::Integers,
            mode: Mode::Hfk,
            strategy: None,
            simplify_budget: 2000,
            skip: SkipPolicy::Auto,
            crosscheck: None,
            dump_arrangement: false,
        }
    }
}

fn load(input: &Input) -> Result<(String, GridDiagram), RunError> {
    match input {
        Input::Braid(s) => {
            let w = parse_braid_text(s)?;
            Ok((format!("braid {}", join(&w)), parse_braid(&w)?))
        }
        Input::Grid(g) => Ok(("grid".to_string(), g.clone())),
        Input::File(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| RunError::Usage(format!("{}: {e}", p.display())))?;
            if text.lines().any(|l| l.trim_start().starts_with("X:")) {
                Ok((format!("grid {}", p.display()), GridDiagram::from_text(&text)?))
            } else {
                let w = parse_braid_text(&text)?;
                Ok((format!("braid {}", join(&w)), parse_braid(&w)?))
            }
        }
    }
}

fn join(w: &[i32]) -> String {
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn same_table(a: &HFKTable, b: &HFKTable) -> Result<(), RunError> {
    if a.groups == b.groups {
        Ok(())
    } else {
        Err(RunError::Crosscheck(format!("tables differ: {:?} vs mos {:?}", a.groups, b.groups)))
    }
}

fn run_ring<R: Ring>(g: &GridDiagram, pipeline: Pipeline, mode: Mode, skip: SkipPolicy, checks: bool, crosscheck: bool) -> Result<(Option<HFKTable>, i32, bool), RunError> {
    match mode {
        Mode::Genus | Mode::Fibered => {
            let (gen, fib) = genus::<R>(g, pipeline)?;
            if crosscheck && pipeline != Pipeline::Mos {
                let m = genus::<R>(g, Pipeline::Mos)?;
                if m != (gen, fib) {
                    return Err(RunError::Crosscheck(format!("genus/fibered {:?} vs mos {:?}", (gen, fib), m)));
                }
            }
            Ok((None, gen, fib))
        }
        Mode::Hfk | Mode::Torsion => {
            let t = compute::<R>(g, pipeline, skip, checks)?;
            if crosscheck && pipeline != Pipeline::Mos {
                same_table(&t, &compute::<R>(g, Pipeline::Mos, skip, false)?)?;
            }
            let (gen, fib) = (t.genus, t.fibered);
            Ok((Some(t), gen, fib))
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    if cfg.mode == Mode::Torsion && cfg.coeff == RingKind::Mod2 {
        return Err(RunError::Usage("torsion mode needs integer coefficients".into()));
    }
    let (knot, g) = load(&cfg.input)?;
    g.validate()?;
    let g = if cfg.simplify_budget > 0 {
        let m = minimize(&g, SearchBudget::new(cfg.simplify_budget));
        info!("simplifier: n {} -> {}", g.n(), m.n());
        m
    } else {
        g
    };
    let n = g.n();
    if cfg.dump_arrangement {
        eprint!("{}", build_arrangement(&select_best_config(&g)).dump());
    }
    let strategy = cfg.strategy.unwrap_or_else(|| {
        if n <= CHECK_LIMIT {
            Strategy::Faithful
        } else {
            warn!("n = {n}: the long complex is too big to materialize, using path counting");
            Strategy::Paths
        }
    });
    let pipeline = Pipeline::Oval(strategy);
    let checks = n <= CHECK_LIMIT;
    let crosscheck = cfg.crosscheck.unwrap_or(checks);
    let (table, genus, fibered) = match cfg.coeff {
        RingKind::Integers => run_ring::<i64>(&g, pipeline, cfg.mode, cfg.skip, checks, crosscheck)?,
        RingKind::Mod2 => run_ring::<F2>(&g, pipeline, cfg.mode, cfg.skip, checks, crosscheck)?,
    };
    Ok(Report { knot, n, pipeline: pipeline.name().to_string(), ring: cfg.coeff, mode: cfg.mode, table, genus, fibered })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_braid() {
        let r = run(&RunConfig::new(Input::Braid("1".into()))).unwrap();
        let t = r.table.unwrap();
        assert_eq!(t.groups.len(), 1);
        assert_eq!(t.groups[&(0, 0)].rank, 1);
        assert_eq!((r.genus, r.fibered), (0, true));
    }

    #[test]
    fn torsion_needs_integers() {
        let mut c = RunConfig::new(Input::Braid("1".into()));
        c.mode = Mode::Torsion;
        c.coeff = RingKind::Mod2;
        assert!(matches!(run(&c), Err(RunError::Usage(_))));
    }
}
