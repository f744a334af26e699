//! Exact tiling search: rectangles (optionally with boundary colors or forced
//! cells), tori, and the domino-problem sweep.
//!
//! The engine is depth-first backtracking over cells in row-major order
//! (bottom row first, west to east) trying tile indices in ascending order.
//! After every assignment per-cell domains are pruned to arc consistency on
//! the four-neighbor matching constraint. Because both orders are fixed, the
//! first solution found is the lexicographically least one, and repeated runs
//! return identical witnesses.

use std::collections::VecDeque;
use std::fmt;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::tiles::{Color, Direction, TileSet, Tiling, TorusTiling};

/// Limits on one search. Nodes (tile assignments tried) are the primary,
/// machine-independent measure; wall-clock time is a backstop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_millis: u64,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_millis: u64) -> Result<Self> {
        if max_nodes == 0 || max_millis == 0 {
            return Err(Error::InvalidInput("search budgets must be positive".into()));
        }
        Ok(SearchBudget { max_nodes, max_millis })
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: max_nodes.max(1),
            ..SearchBudget::default()
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
            max_millis: 10 * 60 * 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult<T> {
    Sat(T),
    /// The search space was exhausted.
    Unsat,
    /// The budget ran out first.
    Unknown,
}

impl<T> SolveResult<T> {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveResult::Unsat)
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            SolveResult::Sat(_) => "SAT",
            SolveResult::Unsat => "UNSAT",
            SolveResult::Unknown => "UNKNOWN",
        }
    }

    pub fn sat(self) -> Option<T> {
        match self {
            SolveResult::Sat(t) => Some(t),
            _ => None,
        }
    }
}

impl SolveResult<Tiling> {
    /// Verdict line, then for SAT the rows top-down.
    pub fn to_text(&self) -> String {
        match self {
            SolveResult::Sat(t) => format!("SAT\n{}", t.to_text()),
            other => format!("{}\n", other.keyword()),
        }
    }
}

impl SolveResult<TorusTiling> {
    pub fn to_text(&self) -> String {
        match self {
            SolveResult::Sat(t) => format!("SAT\n{}", t.to_text()),
            other => format!("{}\n", other.keyword()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountResult {
    Exact(u64),
    Unknown,
}

/// Fixes cell contents of a rectangle from outside: edge colors and
/// individual tiles.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundaryConstraint {
    /// North colors of the top row, west to east.
    pub north: Option<Vec<Color>>,
    /// South colors of the bottom row, west to east.
    pub south: Option<Vec<Color>>,
    /// East colors of the rightmost column, bottom to top.
    pub east: Option<Vec<Color>>,
    /// West colors of the leftmost column, bottom to top.
    pub west: Option<Vec<Color>>,
    /// `(x, y, tile index)` triples.
    pub forced: Vec<(usize, usize, usize)>,
}

impl BoundaryConstraint {
    pub fn none() -> Self {
        BoundaryConstraint::default()
    }

    fn check(&self, tileset: &TileSet, w: usize, h: usize) -> Result<()> {
        let edges = [(&self.north, w, "north"), (&self.south, w, "south"), (&self.east, h, "east"), (&self.west, h, "west")];
        for (edge, len, name) in edges {
            if let Some(colors) = edge {
                if colors.len() != len {
                    return Err(Error::InvalidInput(format!("{name} boundary has {} colors, expected {len}", colors.len())));
                }
            }
        }
        for &(x, y, t) in &self.forced {
            if x >= w || y >= h {
                return Err(Error::InvalidInput(format!("forced cell ({x},{y}) outside {w}x{h}")));
            }
            tileset.tile(t)?;
        }
        Ok(())
    }
}

/// Tile bitsets indexed by side color, for support computation.
struct Tables {
    words: usize,
    ntiles: usize,
    side: [Vec<u32>; 4],
    by_color: [Vec<Vec<u64>>; 4],
    num_colors: usize,
}

impl Tables {
    fn new(tileset: &TileSet) -> Self {
        let ntiles = tileset.len();
        let words = ntiles.div_ceil(64).max(1);
        let num_colors = tileset.num_colors() as usize;
        let side = Direction::ALL.map(|d| tileset.tiles().iter().map(|t| t.side(d).0).collect::<Vec<_>>());
        let by_color = Direction::ALL.map(|d| {
            let mut sets = vec![vec![0u64; words]; num_colors];
            for (t, &c) in side[d.index()].iter().enumerate() {
                sets[c as usize][t / 64] |= 1 << (t % 64);
            }
            sets
        });
        Tables {
            words,
            ntiles,
            side,
            by_color,
            num_colors,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Geometry {
    w: usize,
    h: usize,
    torus: bool,
}

impl Geometry {
    fn cells(&self) -> usize {
        self.w * self.h
    }

    fn neighbor(&self, cell: usize, dir: Direction) -> Option<usize> {
        let (x, y) = (cell % self.w, cell / self.w);
        let (nx, ny) = match dir {
            Direction::North if y + 1 < self.h => (x, y + 1),
            Direction::North if self.torus => (x, 0),
            Direction::South if y > 0 => (x, y - 1),
            Direction::South if self.torus => (x, self.h - 1),
            Direction::East if x + 1 < self.w => (x + 1, y),
            Direction::East if self.torus => (0, y),
            Direction::West if x > 0 => (x - 1, y),
            Direction::West if self.torus => (self.w - 1, y),
            _ => return None,
        };
        Some(ny * self.w + nx)
    }
}

enum Flow {
    Continue,
    Stop,
    OutOfBudget,
}

/// One search over one grid. Holds scratch buffers and the node counter.
struct Engine<'t> {
    tables: &'t Tables,
    geo: Geometry,
    budget: SearchBudget,
    started: Instant,
    nodes: u64,
    color_stamp: Vec<u64>,
    stamp: u64,
    scratch: Vec<u64>,
}

impl<'t> Engine<'t> {
    fn new(tables: &'t Tables, geo: Geometry, budget: SearchBudget) -> Self {
        Engine {
            tables,
            geo,
            budget,
            started: Instant::now(),
            nodes: 0,
            color_stamp: vec![0; tables.num_colors],
            stamp: 0,
            scratch: vec![0; tables.words],
        }
    }

    fn dom<'d>(&self, doms: &'d [u64], cell: usize) -> &'d [u64] {
        let w = self.tables.words;
        &doms[cell * w..(cell + 1) * w]
    }

    fn full_domains(&self) -> Vec<u64> {
        let w = self.tables.words;
        let mut one = vec![0u64; w];
        for t in 0..self.tables.ntiles {
            one[t / 64] |= 1 << (t % 64);
        }
        let mut doms = Vec::with_capacity(w * self.geo.cells());
        for _ in 0..self.geo.cells() {
            doms.extend_from_slice(&one);
        }
        doms
    }

    /// Intersects `cell`'s domain with `mask`. Returns `Some(changed)` or
    /// `None` if the domain became empty.
    fn restrict(&self, doms: &mut [u64], cell: usize, mask: &[u64]) -> Option<bool> {
        let w = self.tables.words;
        let d = &mut doms[cell * w..(cell + 1) * w];
        let mut changed = false;
        let mut any = false;
        for (a, &m) in d.iter_mut().zip(mask) {
            let n = *a & m;
            changed |= n != *a;
            any |= n != 0;
            *a = n;
        }
        any.then_some(changed)
    }

    /// Fills `self.scratch` with the tiles that may sit next to `cell` in
    /// direction `dir`, given `cell`'s current domain.
    fn support(&mut self, doms: &[u64], cell: usize, dir: Direction) {
        self.stamp += 1;
        self.scratch.iter_mut().for_each(|x| *x = 0);
        let w = self.tables.words;
        let side = &self.tables.side[dir.index()];
        let by_color = &self.tables.by_color[dir.opposite().index()];
        for (wi, &word) in doms[cell * w..(cell + 1) * w].iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let t = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let c = side[t] as usize;
                if self.color_stamp[c] != self.stamp {
                    self.color_stamp[c] = self.stamp;
                    for (s, &b) in self.scratch.iter_mut().zip(&by_color[c]) {
                        *s |= b;
                    }
                }
            }
        }
    }

    /// Arc consistency to fixpoint starting from `queue`.
    fn propagate(&mut self, doms: &mut [u64], seeds: impl IntoIterator<Item = usize>) -> bool {
        let cells = self.geo.cells();
        let mut queued = vec![false; cells];
        let mut queue = VecDeque::new();
        for c in seeds {
            if !queued[c] {
                queued[c] = true;
                queue.push_back(c);
            }
        }
        while let Some(c) = queue.pop_front() {
            queued[c] = false;
            for dir in Direction::ALL {
                let Some(n) = self.geo.neighbor(c, dir) else { continue };
                self.support(doms, c, dir);
                let mask = std::mem::take(&mut self.scratch);
                let res = self.restrict(doms, n, &mask);
                self.scratch = mask;
                match res {
                    None => return false,
                    Some(true) if !queued[n] => {
                        queued[n] = true;
                        queue.push_back(n);
                    }
                    Some(_) => {}
                }
            }
        }
        true
    }

    fn out_of_budget(&self) -> bool {
        self.nodes > self.budget.max_nodes
            || (self.nodes.is_multiple_of(256) && self.started.elapsed() > Duration::from_millis(self.budget.max_millis))
    }

    fn search(&mut self, doms: &mut Vec<u64>, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> Flow {
        let w = self.tables.words;
        let branch = (0..self.geo.cells()).find(|&c| self.dom(doms, c).iter().map(|x| x.count_ones()).sum::<u32>() > 1);
        let Some(cell) = branch else {
            let assignment: Vec<usize> = (0..self.geo.cells())
                .map(|c| {
                    let d = self.dom(doms, c);
                    let wi = d.iter().position(|&x| x != 0).expect("nonempty domain");
                    wi * 64 + d[wi].trailing_zeros() as usize
                })
                .collect();
            return match visit(&assignment) {
                ControlFlow::Continue(()) => Flow::Continue,
                ControlFlow::Break(()) => Flow::Stop,
            };
        };
        let candidates: Vec<usize> = self
            .dom(doms, cell)
            .iter()
            .enumerate()
            .flat_map(|(wi, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| wi * 64 + b))
            .collect();
        for t in candidates {
            self.nodes += 1;
            if self.out_of_budget() {
                return Flow::OutOfBudget;
            }
            let mut child = doms.clone();
            let slot = &mut child[cell * w..(cell + 1) * w];
            slot.iter_mut().for_each(|x| *x = 0);
            slot[t / 64] = 1 << (t % 64);
            if !self.propagate(&mut child, [cell]) {
                continue;
            }
            match self.search(&mut child, visit) {
                Flow::Continue => {}
                other => return other,
            }
        }
        Flow::Continue
    }
}

/// Whether a search ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    /// Every solution was visited.
    Exhausted,
    /// The visitor asked to stop.
    Stopped,
    OutOfBudget,
}

fn run(
    tileset: &TileSet,
    geo: Geometry,
    boundary: Option<&BoundaryConstraint>,
    budget: &SearchBudget,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<Completion> {
    if geo.w == 0 || geo.h == 0 {
        return Err(Error::InvalidInput(format!("dimensions must be positive, got {}x{}", geo.w, geo.h)));
    }
    if let Some(b) = boundary {
        b.check(tileset, geo.w, geo.h)?;
    }
    if tileset.is_empty() {
        return Ok(Completion::Exhausted);
    }
    let tables = Tables::new(tileset);
    let mut engine = Engine::new(&tables, geo, *budget);
    let mut doms = engine.full_domains();
    if let Some(b) = boundary {
        if !apply_boundary(&engine, &mut doms, b) {
            return Ok(Completion::Exhausted);
        }
    }
    if !engine.propagate(&mut doms, 0..geo.cells()) {
        return Ok(Completion::Exhausted);
    }
    Ok(match engine.search(&mut doms, visit) {
        Flow::Continue => Completion::Exhausted,
        Flow::Stop => Completion::Stopped,
        Flow::OutOfBudget => Completion::OutOfBudget,
    })
}

fn apply_boundary(engine: &Engine<'_>, doms: &mut [u64], b: &BoundaryConstraint) -> bool {
    let Geometry { w, h, .. } = engine.geo;
    let tables = engine.tables;
    let empty = vec![0u64; tables.words];
    let color_mask = |dir: Direction, c: Color| tables.by_color[dir.index()].get(c.0 as usize).unwrap_or(&empty);
    let mut ok = true;
    let mut edge = |colors: &Option<Vec<Color>>, dir: Direction, cell_of: &dyn Fn(usize) -> usize| {
        if let Some(colors) = colors {
            for (i, &c) in colors.iter().enumerate() {
                ok &= engine.restrict(doms, cell_of(i), color_mask(dir, c)).is_some();
            }
        }
    };
    edge(&b.north, Direction::North, &|x| (h - 1) * w + x);
    edge(&b.south, Direction::South, &|x| x);
    edge(&b.east, Direction::East, &|y| y * w + w - 1);
    edge(&b.west, Direction::West, &|y| y * w);
    for &(x, y, t) in &b.forced {
        let mut mask = vec![0u64; tables.words];
        mask[t / 64] = 1 << (t % 64);
        ok &= engine.restrict(doms, y * w + x, &mask).is_some();
    }
    ok
}

/// Visits every tiling of a `w × h` rectangle, in lexicographic order.
pub fn enumerate_rectangle(
    tileset: &TileSet,
    w: usize,
    h: usize,
    boundary: &BoundaryConstraint,
    budget: &SearchBudget,
    mut visit: impl FnMut(&Tiling) -> ControlFlow<()>,
) -> Result<Completion> {
    let geo = Geometry { w, h, torus: false };
    run(tileset, geo, Some(boundary), budget, &mut |cells| visit(&Tiling::new(w, h, cells.to_vec()).expect("dims checked")))
}

/// Visits every `p × q` torus tiling, in lexicographic order.
pub fn enumerate_torus(
    tileset: &TileSet,
    p: usize,
    q: usize,
    budget: &SearchBudget,
    mut visit: impl FnMut(&TorusTiling) -> ControlFlow<()>,
) -> Result<Completion> {
    let geo = Geometry { w: p, h: q, torus: true };
    run(tileset, geo, None, budget, &mut |cells| visit(&TorusTiling::new(p, q, cells.to_vec()).expect("dims checked")))
}

/// The lexicographically least tiling of a `w × h` rectangle.
pub fn solve_rectangle(
    tileset: &TileSet,
    w: usize,
    h: usize,
    boundary: &BoundaryConstraint,
    budget: &SearchBudget,
) -> Result<SolveResult<Tiling>> {
    let mut found = None;
    let done = enumerate_rectangle(tileset, w, h, boundary, budget, |t| {
        found = Some(t.clone());
        ControlFlow::Break(())
    })?;
    Ok(first_result(found, done))
}

/// The lexicographically least `p × q` torus tiling. A SAT answer certifies a
/// periodic tiling of the whole plane.
pub fn solve_torus(tileset: &TileSet, p: usize, q: usize, budget: &SearchBudget) -> Result<SolveResult<TorusTiling>> {
    let mut found = None;
    let done = enumerate_torus(tileset, p, q, budget, |t| {
        found = Some(t.clone());
        ControlFlow::Break(())
    })?;
    Ok(first_result(found, done))
}

fn first_result<T>(found: Option<T>, done: Completion) -> SolveResult<T> {
    match (found, done) {
        (Some(t), _) => SolveResult::Sat(t),
        (None, Completion::OutOfBudget) => SolveResult::Unknown,
        (None, _) => SolveResult::Unsat,
    }
}

/// Exact number of tilings of a `w × h` rectangle.
pub fn count_rectangle(
    tileset: &TileSet,
    w: usize,
    h: usize,
    boundary: &BoundaryConstraint,
    budget: &SearchBudget,
) -> Result<CountResult> {
    let mut n = 0u64;
    let done = enumerate_rectangle(tileset, w, h, boundary, budget, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count_result(n, done))
}

/// Exact number of `p × q` torus tilings.
pub fn count_torus(tileset: &TileSet, p: usize, q: usize, budget: &SearchBudget) -> Result<CountResult> {
    let mut n = 0u64;
    let done = enumerate_torus(tileset, p, q, budget, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count_result(n, done))
}

fn count_result(n: u64, done: Completion) -> CountResult {
    match done {
        Completion::OutOfBudget => CountResult::Unknown,
        _ => CountResult::Exact(n),
    }
}

/// One step of the domino sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepStep {
    Square { n: usize, verdict: &'static str },
    Torus { p: usize, q: usize, verdict: &'static str },
}

impl fmt::Display for SweepStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepStep::Square { n, verdict } => write!(f, "square {n}x{n} {verdict}"),
            SweepStep::Torus { p, q, verdict } => write!(f, "torus {p}x{q} {verdict}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominoVerdict {
    TilesPeriodically { p: usize, q: usize, witness: TorusTiling },
    /// The `n × n` square cannot be tiled, hence neither can the plane.
    NoTiling { n: usize },
    /// Neither answer was reached. `completed` is the largest `n` whose
    /// sweep finished without hitting the budget.
    Undetermined { completed: usize, budget_hit: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominoReport {
    pub verdict: DominoVerdict,
    pub steps: Vec<SweepStep>,
}

impl DominoReport {
    pub fn verdict_line(&self) -> String {
        match &self.verdict {
            DominoVerdict::TilesPeriodically { p, q, .. } => format!("TILES_PERIODICALLY {p} {q}"),
            DominoVerdict::NoTiling { n } => format!("NO_TILING {n}"),
            DominoVerdict::Undetermined { completed, budget_hit } => {
                format!("UNDETERMINED completed={completed}{}", if *budget_hit { " budget_hit" } else { "" })
            }
        }
    }

    /// Verdict line, the sweep trace as comments, and the periodic block if
    /// one was found.
    pub fn to_text(&self) -> String {
        let mut out = self.verdict_line();
        out.push('\n');
        for s in &self.steps {
            out.push_str(&format!("# {s}\n"));
        }
        if let DominoVerdict::TilesPeriodically { witness, .. } = &self.verdict {
            out.push_str(&witness.to_text());
        }
        out
    }
}

/// Semi-decides the domino problem by sweeping `n = 1..=max_n`: first the
/// `n × n` square (UNSAT proves no plane tiling exists), then every torus
/// `p × q` with `max(p, q) = n` in lexicographic `(p, q)` order (SAT proves a
/// periodic tiling exists). Aperiodic tile sets never resolve.
pub fn domino_semidecide(tileset: &TileSet, max_n: usize, budget: &SearchBudget) -> Result<DominoReport> {
    if max_n == 0 {
        return Err(Error::InvalidInput("max_n must be at least 1".into()));
    }
    let mut steps = Vec::new();
    let mut completed = 0;
    let mut budget_hit = false;
    for n in 1..=max_n {
        let mut clean = true;
        let square = solve_rectangle(tileset, n, n, &BoundaryConstraint::none(), budget)?;
        steps.push(SweepStep::Square { n, verdict: square.keyword() });
        match square {
            SolveResult::Unsat => {
                return Ok(DominoReport {
                    verdict: DominoVerdict::NoTiling { n },
                    steps,
                })
            }
            SolveResult::Unknown => clean = false,
            SolveResult::Sat(_) => {}
        }
        for (p, q) in new_periods(n) {
            let torus = solve_torus(tileset, p, q, budget)?;
            steps.push(SweepStep::Torus { p, q, verdict: torus.keyword() });
            match torus {
                SolveResult::Sat(witness) => {
                    return Ok(DominoReport {
                        verdict: DominoVerdict::TilesPeriodically { p, q, witness },
                        steps,
                    })
                }
                SolveResult::Unknown => clean = false,
                SolveResult::Unsat => {}
            }
        }
        if clean && !budget_hit {
            completed = n;
        }
        budget_hit |= !clean;
    }
    Ok(DominoReport {
        verdict: DominoVerdict::Undetermined { completed, budget_hit },
        steps,
    })
}

/// Period pairs first reached at sweep step `n`.
pub fn new_periods(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |p| (1..=n).map(move |q| (p, q))).filter(move |&(p, q)| p.max(q) == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::{validate_tiling, validate_torus, Tile};

    fn set(tiles: &[(u32, u32, u32, u32)]) -> TileSet {
        TileSet::from_tiles("t", tiles.iter().map(|&(n, e, s, w)| Tile::new(n, e, s, w)).collect()).unwrap()
    }

    fn budget() -> SearchBudget {
        SearchBudget::nodes(1_000_000)
    }

    #[test]
    fn single_tile_rectangle() {
        let ts = set(&[(0, 0, 0, 0)]);
        let r = solve_rectangle(&ts, 5, 5, &BoundaryConstraint::none(), &budget()).unwrap();
        assert_eq!(r, SolveResult::Sat(Tiling::new(5, 5, vec![0; 25]).unwrap()));
    }

    #[test]
    fn mismatch_tile() {
        let ts = set(&[(0, 1, 0, 2)]);
        assert!(solve_rectangle(&ts, 1, 2, &BoundaryConstraint::none(), &budget()).unwrap().is_sat());
        assert!(solve_rectangle(&ts, 2, 1, &BoundaryConstraint::none(), &budget()).unwrap().is_unsat());
        assert!(solve_torus(&ts, 1, 1, &budget()).unwrap().is_unsat());
        assert!(solve_torus(&set(&[(0, 0, 0, 0)]), 1, 1, &budget()).unwrap().is_sat());
    }

    #[test]
    fn counts() {
        let one = set(&[(0, 0, 0, 0)]);
        assert_eq!(count_rectangle(&one, 2, 2, &BoundaryConstraint::none(), &budget()).unwrap(), CountResult::Exact(1));
        // two tiles that never sit next to each other
        let two = set(&[(0, 0, 0, 0), (1, 1, 1, 1)]);
        assert_eq!(count_rectangle(&two, 2, 2, &BoundaryConstraint::none(), &budget()).unwrap(), CountResult::Exact(2));
    }

    #[test]
    fn witness_is_lexicographically_least() {
        // three tiles with a free horizontal choice
        let ts = set(&[(0, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)]);
        let r = solve_rectangle(&ts, 3, 1, &BoundaryConstraint::none(), &budget()).unwrap().sat().unwrap();
        assert_eq!(r.cells(), &[0, 0, 0]);
        let forced = BoundaryConstraint {
            forced: vec![(0, 0, 1)],
            ..Default::default()
        };
        let r = solve_rectangle(&ts, 3, 1, &forced, &budget()).unwrap().sat().unwrap();
        assert_eq!(r.cells(), &[1, 2, 0]);
    }

    #[test]
    fn boundary_colors_restrict_edges() {
        let ts = set(&[(0, 0, 0, 0), (1, 0, 1, 0)]);
        let b = BoundaryConstraint {
            south: Some(vec![Color(1), Color(0)]),
            ..Default::default()
        };
        let r = solve_rectangle(&ts, 2, 2, &b, &budget()).unwrap().sat().unwrap();
        assert_eq!(r.cells(), &[1, 0, 1, 0]);
        let bad = BoundaryConstraint {
            south: Some(vec![Color(1)]),
            ..Default::default()
        };
        assert!(solve_rectangle(&ts, 2, 2, &bad, &budget()).is_err());
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let ts = set(&[(0, 0, 0, 0), (1, 1, 1, 1), (2, 2, 2, 2)]);
        let tiny = SearchBudget::nodes(2);
        assert_eq!(count_rectangle(&ts, 3, 3, &BoundaryConstraint::none(), &tiny).unwrap(), CountResult::Unknown);
    }

    #[test]
    fn domino_examples() {
        let one = set(&[(0, 0, 0, 0)]);
        let r = domino_semidecide(&one, 3, &budget()).unwrap();
        assert!(matches!(r.verdict, DominoVerdict::TilesPeriodically { p: 1, q: 1, .. }));
        let bad = set(&[(0, 1, 0, 2)]);
        let r = domino_semidecide(&bad, 3, &budget()).unwrap();
        assert_eq!(r.verdict, DominoVerdict::NoTiling { n: 2 });
        assert_eq!(
            r.steps,
            vec![
                SweepStep::Square { n: 1, verdict: "SAT" },
                SweepStep::Torus { p: 1, q: 1, verdict: "UNSAT" },
                SweepStep::Square { n: 2, verdict: "UNSAT" },
            ]
        );
    }

    #[test]
    fn period_order() {
        let v: Vec<_> = new_periods(2).collect();
        assert_eq!(v, vec![(1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn torus_witness_validates() {
        // checkerboard of two tiles
        let ts = set(&[(0, 0, 1, 1), (1, 1, 0, 0)]);
        assert!(solve_torus(&ts, 1, 1, &budget()).unwrap().is_unsat());
        let t = solve_torus(&ts, 2, 2, &budget()).unwrap().sat().unwrap();
        assert!(validate_torus(&ts, &t).unwrap());
        assert!(validate_tiling(&ts, &t.unroll(5, 3)).unwrap());
    }
}
