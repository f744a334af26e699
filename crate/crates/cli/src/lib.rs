//! Command implementations for the `shiftforge` binary.
//!
//! Each command returns the bytes it prints on stdout; artifacts named by
//! `--out` (and `--sidecar`) are written by the command itself.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use shiftforge::aperiodic::{evidence_for, robinson_tileset};
use shiftforge::compile::{parse_decode_comments, sft_to_wang, tm_to_tileset, TmSpec};
use shiftforge::macrotile::{check_isomorphism, find_simulation, macro_tiles, MacroOutcome};
use shiftforge::solve::{domino_semidecide, solve_rectangle, solve_torus, BoundaryConstraint, SearchBudget};
use shiftforge::subshift::{check_sequence, check_window, lift_1d, SequenceVerdict, Subshift1dSpec, WindowVerdict, WordSource};
use shiftforge::{validate_tiling, Error, LetterGrid, SftSpec, TileSet, Tiling, TorusTiling};

pub mod render;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::usage(format!("{}: {e}", path.display()))
    }

    fn in_file(path: &Path) -> impl FnOnce(Error) -> CliError + '_ {
        move |e| {
            let mut c = CliError::from(e);
            c.message = format!("{}: {}", path.display(), c.message);
            c
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) => EXIT_UNSUPPORTED,
            Error::TileIndex { .. } => EXIT_VALIDATION,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T = Vec<u8>> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "shiftforge", version, about = "Subshifts, Wang tiles, and tiling search")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Search node budget
    #[arg(long, global = true, default_value_t = SearchBudget::default().max_nodes)]
    pub budget_nodes: u64,
    /// Wall-clock budget in milliseconds
    #[arg(long, global = true, default_value_t = SearchBudget::default().max_millis)]
    pub budget_ms: u64,
    /// Write the command's artifact here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a specification into a Wang tile set
    Compile {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Tape width, for --kind tm
        #[arg(long)]
        width: Option<usize>,
    },
    /// Solve a rectangle, torus, or domino sweep
    Solve {
        tileset: PathBuf,
        /// rect <w> <h> | torus <p> <q> | domino <max_n>
        #[arg(long, num_args = 2..=3, value_names = ["MODE", "ARGS"], required = true)]
        mode: Vec<String>,
    },
    /// Render a tiling as PPM or SVG
    Render {
        tileset: PathBuf,
        tiling: PathBuf,
        #[arg(long, default_value_t = 8)]
        cell_pixels: usize,
        #[arg(long, value_enum, default_value_t = render::Format::Ppm)]
        format: render::Format,
    },
    /// Check a window, or a tiling decoded through a compiled tile set
    Verify {
        spec: PathBuf,
        artifact: PathBuf,
        /// Tile set with decode comments, when the artifact is a tiling
        #[arg(long)]
        tileset: Option<PathBuf>,
        /// Treat the tiling as a torus and check patterns across the wrap
        #[arg(long)]
        torus: bool,
        /// Words drawn from a stream source per row
        #[arg(long, default_value_t = shiftforge::subshift::DEFAULT_WORD_BUDGET)]
        word_budget: usize,
    },
    /// Built-in Robinson tile set
    Robinson {
        #[command(subcommand)]
        action: RobinsonAction,
    },
    /// Enumerate n x n macro-tiles
    Macro {
        tileset: PathBuf,
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        max_tiles: usize,
        /// Where to write the block listing
        #[arg(long)]
        sidecar: Option<PathBuf>,
        /// Look for an adjacency-preserving map from the macro set to this set
        #[arg(long)]
        simulate: Option<PathBuf>,
        /// Look for an isomorphism between the macro set and this set
        #[arg(long)]
        isomorphic: Option<PathBuf>,
    },
    /// Square and torus verdicts (Robinson set unless --tileset is given)
    Evidence {
        #[arg(long, default_value_t = 16)]
        max_square: usize,
        #[arg(long, default_value_t = 6)]
        max_period: usize,
        #[arg(long)]
        tileset: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum RobinsonAction {
    Export,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Sft,
    Subshift1d,
    Tm,
}

impl Common {
    pub fn budget(&self) -> CliResult<SearchBudget> {
        Ok(SearchBudget::new(self.budget_nodes, self.budget_ms)?)
    }

    /// Writes `artifact` to `--out` and returns `summary`, or returns the
    /// artifact itself when there is no `--out`.
    fn emit(&self, artifact: Vec<u8>, summary: impl FnOnce() -> String) -> CliResult {
        match &self.out {
            Some(path) => {
                fs::write(path, &artifact).map_err(|e| CliError::io(path, e))?;
                Ok(summary().into_bytes())
            }
            None => Ok(artifact),
        }
    }
}

pub fn run(cli: &Cli) -> CliResult {
    let c = &cli.common;
    match &cli.command {
        Command::Compile { input, kind, width } => cmd_compile(c, input, *kind, *width),
        Command::Solve { tileset, mode } => cmd_solve(c, tileset, mode),
        Command::Render {
            tileset,
            tiling,
            cell_pixels,
            format,
        } => cmd_render(c, tileset, tiling, *cell_pixels, *format),
        Command::Verify {
            spec,
            artifact,
            tileset,
            torus,
            word_budget,
        } => cmd_verify(spec, artifact, tileset.as_deref(), *torus, *word_budget),
        Command::Robinson {
            action: RobinsonAction::Export,
        } => cmd_robinson_export(c),
        Command::Macro {
            tileset,
            n,
            max_tiles,
            sidecar,
            simulate,
            isomorphic,
        } => cmd_macro(c, tileset, *n, *max_tiles, sidecar.as_deref(), simulate.as_deref(), isomorphic.as_deref()),
        Command::Evidence {
            max_square,
            max_period,
            tileset,
        } => cmd_evidence(c, *max_square, *max_period, tileset.as_deref()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn read_tileset(path: &Path) -> CliResult<TileSet> {
    TileSet::parse(&read(path)?).map_err(CliError::in_file(path))
}

pub fn cmd_compile(c: &Common, input: &Path, kind: Kind, width: Option<usize>) -> CliResult {
    let text = read(input)?;
    let (tileset, comments) = match kind {
        Kind::Sft | Kind::Subshift1d => {
            let sft = if kind == Kind::Sft {
                SftSpec::parse(&text).map_err(CliError::in_file(input))?
            } else {
                let spec = Subshift1dSpec::parse(&text).map_err(CliError::in_file(input))?;
                lift_1d(&spec)?
            };
            let compiled = sft_to_wang(&sft)?;
            let comments = compiled.comment_lines();
            (compiled.tileset, comments)
        }
        Kind::Tm => {
            let width = width.ok_or_else(|| CliError::usage("--kind tm needs --width <tape cells>"))?;
            let tm = TmSpec::parse(&text).map_err(CliError::in_file(input))?;
            let compiled = tm_to_tileset(&tm, width)?;
            let comp = &compiled.compilation;
            let comments = comp
                .decode
                .iter()
                .zip(&comp.provenance)
                .enumerate()
                .map(|(i, (cell, role))| format!("cell {i} {cell} {role}"))
                .collect();
            (comp.tileset.clone(), comments)
        }
    };
    let artifact = tileset.to_text_with_comments(&comments).into_bytes();
    c.emit(artifact, || format!("tileset {} tiles={} colors={}\n", tileset.name(), tileset.len(), tileset.num_colors()))
}

fn dim(s: &str) -> CliResult<usize> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CliError::usage(format!("expected a positive dimension, found `{s}`"))),
    }
}

pub fn cmd_solve(c: &Common, path: &Path, mode: &[String]) -> CliResult {
    let tileset = read_tileset(path)?;
    let budget = c.budget()?;
    let args: Vec<&str> = mode.iter().map(String::as_str).collect();
    let text = match args.as_slice() {
        ["rect", w, h] => solve_rectangle(&tileset, dim(w)?, dim(h)?, &BoundaryConstraint::none(), &budget)?.to_text(),
        ["torus", p, q] => solve_torus(&tileset, dim(p)?, dim(q)?, &budget)?.to_text(),
        ["domino", n] => domino_semidecide(&tileset, dim(n)?, &budget)?.to_text(),
        _ => return Err(CliError::usage("--mode expects `rect <w> <h>`, `torus <p> <q>`, or `domino <max_n>`")),
    };
    let first = text.lines().next().unwrap_or_default().to_string();
    c.emit(text.into_bytes(), || format!("{first}\n"))
}

/// Reads rows of tile indices, skipping a leading `SAT` line as written by
/// `solve`.
fn read_tiling(path: &Path) -> CliResult<Tiling> {
    let text = read(path)?;
    let body = strip_verdict(&text)?;
    Tiling::parse_rows(body).map_err(CliError::in_file(path))
}

fn strip_verdict(text: &str) -> CliResult<&str> {
    let first = text.lines().find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match first.map(str::trim) {
        Some("SAT") => Ok(text.split_once("SAT").map(|(_, rest)| rest).unwrap_or_default()),
        Some(v @ ("UNSAT" | "UNKNOWN")) => Err(CliError::usage(format!("the result file holds no witness ({v})"))),
        _ => Ok(text),
    }
}

pub fn cmd_render(c: &Common, ts: &Path, tiling: &Path, cell_pixels: usize, format: render::Format) -> CliResult {
    let tileset = read_tileset(ts)?;
    let tiling = read_tiling(tiling)?;
    if !validate_tiling(&tileset, &tiling)? {
        return Err(CliError::validation("tiling does not match the tile set"));
    }
    let spec = render::RenderSpec::new(cell_pixels, format).map_err(CliError::usage)?;
    let bytes = spec.render(&tileset, &tiling);
    c.emit(bytes, || format!("rendered {}x{} cells\n", tiling.width(), tiling.height()))
}

enum SpecKind {
    Sft(SftSpec),
    OneD(Subshift1dSpec),
}

fn read_spec(path: &Path) -> CliResult<SpecKind> {
    let text = read(path)?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or_default();
    if header.starts_with("subshift") {
        Ok(SpecKind::OneD(Subshift1dSpec::parse(&text).map_err(CliError::in_file(path))?))
    } else {
        Ok(SpecKind::Sft(SftSpec::parse(&text).map_err(CliError::in_file(path))?))
    }
}

fn alphabet_of(spec: &SpecKind) -> &[char] {
    match spec {
        SpecKind::Sft(s) => s.alphabet(),
        SpecKind::OneD(s) => s.alphabet(),
    }
}

pub fn cmd_verify(spec_path: &Path, artifact: &Path, tileset: Option<&Path>, torus: bool, word_budget: usize) -> CliResult {
    let spec = read_spec(spec_path)?;
    let window = match tileset {
        Some(ts_path) => {
            let ts_text = read(ts_path)?;
            let ts = TileSet::parse(&ts_text).map_err(CliError::in_file(ts_path))?;
            let decode = parse_decode_comments(&ts_text)
                .filter(|d| d.len() == ts.len())
                .ok_or_else(|| CliError::usage(format!("{}: no decode map for every tile", ts_path.display())))?;
            let tiling = read_tiling(artifact)?;
            if torus {
                let t = TorusTiling::new(tiling.width(), tiling.height(), tiling.cells().to_vec())?;
                if !shiftforge::validate_torus(&ts, &t)? {
                    return Err(CliError::validation("torus tiling does not match the tile set"));
                }
            } else if !validate_tiling(&ts, &tiling)? {
                return Err(CliError::validation("tiling does not match the tile set"));
            }
            let cells = tiling.cells().iter().map(|&i| decode[i]).collect();
            LetterGrid::new(tiling.width(), tiling.height(), cells)?
        }
        None => LetterGrid::parse_window(&read(artifact)?).map_err(CliError::in_file(artifact))?,
    };
    if let Some(c) = window.cells().iter().find(|c| !alphabet_of(&spec).contains(c)) {
        return Err(CliError::usage(format!("letter `{c}` is not in the specification's alphabet")));
    }
    let window = if torus { unroll(&window, &spec) } else { window };
    let line = match &spec {
        SpecKind::Sft(s) => window_verdict(check_window(s, &window)?),
        SpecKind::OneD(s) => match s.source() {
            WordSource::Explicit(_) => window_verdict(check_window(&lift_1d(s)?, &window)?),
            WordSource::Stream(_) => verify_rows(s, &window, word_budget)?,
        },
    };
    Ok(format!("{line}\n").into_bytes())
}

/// Extends a torus configuration so every pattern crossing the wrap shows up
/// as an ordinary occurrence.
fn unroll(w: &LetterGrid, spec: &SpecKind) -> LetterGrid {
    let k = match spec {
        SpecKind::Sft(s) => s.window().max(1),
        SpecKind::OneD(s) => match s.source() {
            WordSource::Explicit(words) => words.iter().map(|x| x.chars().count()).max().unwrap_or(1).max(2),
            WordSource::Stream(_) => w.width().max(2),
        },
    };
    let (ww, hh) = (w.width() + k - 1, w.height() + k - 1);
    let mut cells = Vec::with_capacity(ww * hh);
    for y in 0..hh {
        for x in 0..ww {
            cells.push(w.get(x % w.width(), y % w.height()));
        }
    }
    LetterGrid::new(ww, hh, cells).expect("positive dimensions")
}

fn window_verdict(v: WindowVerdict) -> String {
    match v {
        WindowVerdict::Clean => "CLEAN".into(),
        WindowVerdict::Violation { pattern, x, y } => format!("VIOLATION pattern={pattern} x={x} y={y}"),
    }
}

/// Stream sources: columns must be constant and each row is checked against
/// the first `budget` words.
fn verify_rows(spec: &Subshift1dSpec, w: &LetterGrid, budget: usize) -> CliResult<String> {
    for y in 1..w.height() {
        for x in 0..w.width() {
            if w.get(x, y) != w.get(x, y - 1) {
                return Ok(format!("VIOLATION column x={x} y={}", y - 1));
            }
        }
    }
    let row: String = w.row(0).iter().collect();
    Ok(match check_sequence(spec, &row, budget)? {
        SequenceVerdict::Clean => "CLEAN".into(),
        SequenceVerdict::BudgetExhaustedClean => "BUDGET_EXHAUSTED_CLEAN".into(),
        SequenceVerdict::Violation { word, position } => format!("VIOLATION word={word} x={position} y=0"),
    })
}

pub fn cmd_robinson_export(c: &Common) -> CliResult {
    let r = robinson_tileset();
    let text = r.tileset.to_text_with_comments(&r.comment_lines());
    c.emit(text.into_bytes(), || format!("tileset robinson tiles={}\n", r.tileset.len()))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_macro(
    c: &Common,
    ts: &Path,
    n: usize,
    max_tiles: usize,
    sidecar: Option<&Path>,
    simulate: Option<&Path>,
    isomorphic: Option<&Path>,
) -> CliResult {
    let tileset = read_tileset(ts)?;
    let budget = c.budget()?;
    if n == 0 {
        return Err(CliError::usage("block size must be at least 1"));
    }
    let m = match macro_tiles(&tileset, n, max_tiles, &budget)? {
        MacroOutcome::Complete(m) => m,
        MacroOutcome::BudgetExceeded { found } => {
            return Ok(format!("BUDGET_EXCEEDED found={found}\n").into_bytes());
        }
    };
    let export = m.export();
    let mut report = format!(
        "MACRO n={n} blocks={} tiles={} colors={}\n",
        m.blocks.len(),
        export.tileset.len(),
        export.tileset.num_colors()
    );
    if let Some(path) = sidecar {
        fs::write(path, export.sidecar(&m)).map_err(|e| CliError::io(path, e))?;
    }
    if let Some(path) = simulate {
        let target = read_tileset(path)?;
        if export.tileset.is_empty() {
            report.push_str("simulation: no macro-tiles\n");
        } else {
            let r = find_simulation(&export.tileset, &target, &budget)?;
            report.push_str("simulation ");
            report.push_str(&r.to_text());
        }
    }
    if let Some(path) = isomorphic {
        let target = read_tileset(path)?;
        report.push_str("isomorphism ");
        report.push_str(&check_isomorphism(&export.tileset, &target, &budget).to_text());
    }
    if let Some(path) = &c.out {
        fs::write(path, export.tileset.to_text()).map_err(|e| CliError::io(path, e))?;
    }
    Ok(report.into_bytes())
}

pub fn cmd_evidence(c: &Common, max_square: usize, max_period: usize, ts: Option<&Path>) -> CliResult {
    if max_square == 0 || max_period == 0 {
        return Err(CliError::usage("bounds must be at least 1"));
    }
    let tileset = match ts {
        Some(p) => read_tileset(p)?,
        None => robinson_tileset().tileset,
    };
    let report = evidence_for(&tileset, max_square, max_period, &c.budget()?)?;
    let verdict = if report.consistent_with_aperiodicity() { "CONSISTENT" } else { "INCONSISTENT" };
    let text = format!("{verdict}\n{}", report.to_text());
    c.emit(text.into_bytes(), || format!("{verdict}\n"))
}
