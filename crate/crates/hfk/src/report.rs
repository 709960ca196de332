//! Text and machine-readable reports, and the parser for the latter.

use std::fmt::Write as _;

use thiserror::Error;

use crate::homology::{GradedGroups, Group, HFKTable};
use crate::ring::RingKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Hfk,
    Genus,
    Fibered,
    Torsion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// What a run found; `table` is absent for the genus and fibered fast paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub knot: String,
    pub n: usize,
    pub pipeline: String,
    pub ring: RingKind,
    pub mode: Mode,
    pub table: Option<HFKTable>,
    pub genus: i32,
    pub fibered: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("missing header field {0}")]
    MissingHeader(&'static str),
}

fn group_text(g: &Group, ring: RingKind) -> String {
    let mut parts = Vec::new();
    let base = match ring {
        RingKind::Integers => "Z",
        RingKind::Mod2 => "F2",
    };
    match g.rank {
        0 => {}
        1 => parts.push(base.to_string()),
        r => parts.push(format!("{base}^{r}")),
    }
    for d in &g.torsion {
        parts.push(format!("Z/{d}"));
    }
    parts.join(" + ")
}

fn half(a2: i32) -> String {
    if a2 % 2 == 0 {
        (a2 / 2).to_string()
    } else {
        format!("{}/2", a2)
    }
}

fn parse_half(s: &str) -> Option<i32> {
    match s.strip_suffix("/2") {
        Some(num) => num.parse().ok(),
        None => s.parse::<i32>().ok().map(|a| 2 * a),
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Hfk => "hfk",
        Mode::Genus => "genus",
        Mode::Fibered => "fibered",
        Mode::Torsion => "torsion",
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Text => emit_text(r),
        Format::Machine => emit_machine(r),
    }
}

fn emit_text(r: &Report) -> String {
    let mut s = String::new();
    if let Some(t) = &r.table {
        if matches!(r.mode, Mode::Hfk | Mode::Torsion) {
            let rows: Vec<(String, String)> = t
                .groups
                .iter()
                .rev()
                .map(|(&(a, m), g)| (format!("({}, {})", half(a), m), group_text(g, t.ring)))
                .collect();
            let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
            for (k, v) in rows {
                let _ = writeln!(s, "{k:>w$}: {v}");
            }
        }
    }
    let _ = write!(s, "genus {}, fibered {}", r.genus, r.fibered);
    if let Some(t) = &r.table {
        if t.ring == RingKind::Integers {
            let _ = write!(s, ", torsion free {}", t.torsion_free);
        }
        let _ = write!(s, ", total rank {}", t.total_rank());
    }
    let _ = writeln!(s, "  [{} n={} {}]", r.pipeline, r.n, r.ring.tag());
    s
}

fn emit_machine(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# knot {}", r.knot);
    let _ = writeln!(s, "# n {}", r.n);
    let _ = writeln!(s, "# pipeline {}", r.pipeline);
    let _ = writeln!(s, "# ring {}", r.ring.tag());
    let _ = writeln!(s, "# mode {}", mode_name(r.mode));
    let _ = writeln!(s, "# genus {}", r.genus);
    let _ = writeln!(s, "# fibered {}", r.fibered);
    if let Some(t) = &r.table {
        for (&(a, m), g) in t.groups.iter().rev() {
            let _ = write!(s, "{} {} {}", half(a), m, g.rank);
            for d in &g.torsion {
                let _ = write!(s, " {d}");
            }
            s.push('\n');
        }
    }
    s
}

/// Reads back the output of the machine format.
pub fn parse_machine(text: &str) -> Result<Report, ParseError> {
    let (mut knot, mut n, mut pipeline, mut ring, mut mode, mut genus, mut fibered) =
        (None, None, None, None, None, None, None);
    let mut groups = GradedGroups::new();
    let mut records = false;
    for (i, line) in text.lines().enumerate() {
        let bad = |m: &str| ParseError::Line(i + 1, m.to_string());
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            let h = h.trim();
            let (key, val) = h.split_once(' ').unwrap_or((h, ""));
            match key {
                "knot" => knot = Some(val.to_string()),
                "n" => n = Some(val.parse().map_err(|_| bad("bad n"))?),
                "pipeline" => pipeline = Some(val.to_string()),
                "ring" => {
                    ring = Some(match val {
                        "z" => RingKind::Integers,
                        "z2" => RingKind::Mod2,
                        _ => return Err(bad("unknown ring")),
                    })
                }
                "mode" => {
                    mode = Some(match val {
                        "hfk" => Mode::Hfk,
                        "genus" => Mode::Genus,
                        "fibered" => Mode::Fibered,
                        "torsion" => Mode::Torsion,
                        _ => return Err(bad("unknown mode")),
                    })
                }
                "genus" => genus = Some(val.parse().map_err(|_| bad("bad genus"))?),
                "fibered" => fibered = Some(val.parse().map_err(|_| bad("bad fibered flag"))?),
                _ => return Err(bad("unknown header")),
            }
            continue;
        }
        records = true;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() < 3 {
            return Err(bad("record needs a m rank"));
        }
        let a = parse_half(f[0]).ok_or_else(|| bad("bad Alexander grading"))?;
        let m: i32 = f[1].parse().map_err(|_| bad("bad Maslov grading"))?;
        let rank: u64 = f[2].parse().map_err(|_| bad("bad rank"))?;
        let torsion = f[3..]
            .iter()
            .map(|d| d.parse::<u64>().map_err(|_| bad("bad torsion factor")))
            .collect::<Result<Vec<_>, _>>()?;
        groups.insert((a, m), Group { rank, torsion });
    }
    let ring = ring.ok_or(ParseError::MissingHeader("ring"))?;
    let table = if records {
        Some(HFKTable::from_groups(ring, groups).map_err(|e| ParseError::Line(0, e.to_string()))?)
    } else {
        None
    };
    Ok(Report {
        knot: knot.ok_or(ParseError::MissingHeader("knot"))?,
        n: n.ok_or(ParseError::MissingHeader("n"))?,
        pipeline: pipeline.ok_or(ParseError::MissingHeader("pipeline"))?,
        ring,
        mode: mode.ok_or(ParseError::MissingHeader("mode"))?,
        table,
        genus: genus.ok_or(ParseError::MissingHeader("genus"))?,
        fibered: fibered.ok_or(ParseError::MissingHeader("fibered"))?,
    })
}
