use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use hfk::{emit_report, run, Format, Input, Mode, RingKind, RunConfig, SkipPolicy, Strategy};

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Z,
    Z2,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Hfk,
    Genus,
    Fibered,
    Torsion,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Faithful,
    Fast,
    Paths,
}

#[derive(Clone, Copy, ValueEnum)]
enum SkipArg {
    Auto,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

/// Hat knot Floer homology of a knot given as a braid closure or a grid diagram.
#[derive(Parser)]
#[command(name = "hfk", version)]
struct Args {
    /// Braid word, e.g. "1 1 1" for the trefoil (negative = inverse generator)
    #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
    braid: Option<String>,
    /// Grid file ("n", "X: ...", "O: ..."), or a file holding one braid word
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "z")]
    coeff: Coeff,
    #[arg(long, value_enum, default_value = "hfk")]
    mode: ModeArg,
    /// Default: faithful for n <= 7, paths above
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    /// Simplifier search expansions; 0 disables
    #[arg(long, default_value_t = 2000)]
    simplify_budget: usize,
    #[arg(long, value_enum, default_value = "auto")]
    skip: SkipArg,
    /// Also run the MOS complex and compare; default on for n <= 7
    #[arg(long, value_enum)]
    crosscheck: Option<Switch>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Print the oval arrangement to stderr
    #[arg(long)]
    dump_arrangement: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let a = Args::parse();
    let input = match (a.braid, a.grid) {
        (Some(b), _) => Input::Braid(b),
        (None, Some(p)) => Input::File(p),
        (None, None) => unreachable!("clap requires one input"),
    };
    let cfg = RunConfig {
        input,
        coeff: match a.coeff {
            Coeff::Z => RingKind::Integers,
            Coeff::Z2 => RingKind::Mod2,
        },
        mode: match a.mode {
            ModeArg::Hfk => Mode::Hfk,
            ModeArg::Genus => Mode::Genus,
            ModeArg::Fibered => Mode::Fibered,
            ModeArg::Torsion => Mode::Torsion,
        },
        strategy: a.strategy.map(|s| match s {
            StrategyArg::Faithful => Strategy::Faithful,
            StrategyArg::Fast => Strategy::Fast,
            StrategyArg::Paths => Strategy::Paths,
        }),
        simplify_budget: a.simplify_budget,
        skip: match a.skip {
            SkipArg::Auto => SkipPolicy::Auto,
            SkipArg::None => SkipPolicy::None,
        },
        crosscheck: a.crosscheck.map(|s| matches!(s, Switch::On)),
        dump_arrangement: a.dump_arrangement,
    };
    let format = match a.format {
        FormatArg::Text => Format::Text,
        FormatArg::Machine => Format::Machine,
    };
    match run(&cfg) {
        Ok(r) => {
            print!("{}", emit_report(&r, format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
