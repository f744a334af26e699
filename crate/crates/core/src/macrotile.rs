//! Macro-tiles: valid `n × n` blocks viewed as single tiles, and maps between
//! tile sets that preserve adjacency.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::solve::{enumerate_rectangle, BoundaryConstraint, Completion, SearchBudget};
use crate::tiles::{normalize_tile_list, Color, Direction, Tile, TileSet, Tiling};

/// All valid `n × n` blocks of a base set. Block borders are sequences of
/// base colors: north/south read west to east, east/west read bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacroTileSet {
    pub base: TileSet,
    pub n: usize,
    /// In lexicographic order of their cells.
    pub blocks: Vec<Tiling>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MacroOutcome {
    Complete(MacroTileSet),
    /// More than `max_tiles` blocks exist, or the search budget ran out.
    BudgetExceeded { found: usize },
}

/// The macro-tile set as a plain tile set, with composite colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacroExport {
    pub tileset: TileSet,
    /// Block index to tile index. Blocks with equal borders share a tile.
    pub block_tile: Vec<usize>,
    /// Composite color id to the base color sequence it stands for.
    pub sequences: Vec<Vec<Color>>,
}

impl MacroTileSet {
    pub fn border(&self, block: usize, dir: Direction) -> Vec<Color> {
        border(&self.base, &self.blocks[block], dir)
    }

    pub fn matches_horizontally(&self, left: usize, right: usize) -> bool {
        self.border(left, Direction::East) == self.border(right, Direction::West)
    }

    pub fn matches_vertically(&self, lower: usize, upper: usize) -> bool {
        self.border(lower, Direction::North) == self.border(upper, Direction::South)
    }

    /// Composite colors are numbered in order of their base sequences,
    /// east/west sequences before north/south ones.
    pub fn export(&self) -> MacroExport {
        let mut ids: BTreeMap<(bool, Vec<Color>), u32> = BTreeMap::new();
        let keys: Vec<[(bool, Vec<Color>); 4]> = (0..self.blocks.len())
            .map(|b| Direction::ALL.map(|d| (matches!(d, Direction::North | Direction::South), self.border(b, d))))
            .collect();
        for k in keys.iter().flatten() {
            ids.entry(k.clone()).or_insert(0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as u32;
        }
        let raw: Vec<Tile> = keys
            .iter()
            .map(|k| {
                let [n, e, s, w] = [&k[0], &k[1], &k[2], &k[3]].map(|key| ids[key]);
                Tile::new(n, e, s, w)
            })
            .collect();
        let norm = normalize_tile_list(&format!("{}-macro{}", self.base.name(), self.n), &raw);
        // every composite color is used, so ids survive normalization unchanged
        let labels = ids.iter().map(|((_, seq), &id)| (id, seq_label(seq))).collect();
        MacroExport {
            tileset: norm.tileset.with_labels(labels),
            block_tile: norm.tile_map,
            sequences: ids.into_keys().map(|(_, s)| s).collect(),
        }
    }
}

impl MacroExport {
    /// Sidecar text: for each block, `block <id> tile <index>` followed by
    /// its rows of base tile indices, top row first.
    pub fn sidecar(&self, m: &MacroTileSet) -> String {
        let mut out = format!("macro {} n={} blocks={}\n", m.base.name(), m.n, m.blocks.len());
        for (b, block) in m.blocks.iter().enumerate() {
            out.push_str(&format!("block {b} tile {}\n", self.block_tile[b]));
            out.push_str(&block.to_text());
        }
        out
    }
}

fn seq_label(seq: &[Color]) -> String {
    let parts: Vec<String> = seq.iter().map(|c| c.0.to_string()).collect();
    parts.join(".")
}

fn border(base: &TileSet, t: &Tiling, dir: Direction) -> Vec<Color> {
    let (w, h) = (t.width(), t.height());
    let side = |x, y| base.tiles()[t.get(x, y)].side(dir);
    match dir {
        Direction::North => (0..w).map(|x| side(x, h - 1)).collect(),
        Direction::South => (0..w).map(|x| side(x, 0)).collect(),
        Direction::East => (0..h).map(|y| side(w - 1, y)).collect(),
        Direction::West => (0..h).map(|y| side(0, y)).collect(),
    }
}

/// Enumerates every valid `n × n` block of `tileset`.
pub fn macro_tiles(tileset: &TileSet, n: usize, max_tiles: usize, budget: &SearchBudget) -> Result<MacroOutcome> {
    if n == 0 {
        return Err(Error::InvalidInput("block size must be at least 1".into()));
    }
    let mut blocks = Vec::new();
    let mut overflow = false;
    let done = enumerate_rectangle(tileset, n, n, &BoundaryConstraint::none(), budget, |t| {
        if blocks.len() == max_tiles {
            overflow = true;
            return ControlFlow::Break(());
        }
        blocks.push(t.clone());
        ControlFlow::Continue(())
    })?;
    if overflow || done == Completion::OutOfBudget {
        return Ok(MacroOutcome::BudgetExceeded { found: blocks.len() });
    }
    Ok(MacroOutcome::Complete(MacroTileSet {
        base: tileset.clone(),
        n,
        blocks,
    }))
}

/// Result of a map search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSearch {
    /// `map[i]` is the image of source tile `i`.
    Found(Vec<usize>),
    /// Exhaustive: no map exists.
    NoMap,
    Unknown,
}

impl MapSearch {
    pub fn found(&self) -> Option<&[usize]> {
        match self {
            MapSearch::Found(m) => Some(m),
            _ => None,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            MapSearch::Found(m) => {
                let mut out = String::from("MAP\n");
                for (i, j) in m.iter().enumerate() {
                    out.push_str(&format!("{i} -> {j}\n"));
                }
                out
            }
            MapSearch::NoMap => "NONE\n".into(),
            MapSearch::Unknown => "UNKNOWN\n".into(),
        }
    }
}

struct Adjacency {
    h: Vec<Vec<bool>>,
    v: Vec<Vec<bool>>,
}

impl Adjacency {
    fn of(ts: &TileSet) -> Self {
        let n = ts.len();
        let h = (0..n).map(|i| (0..n).map(|j| ts.matches_horizontally(i, j)).collect()).collect();
        let v = (0..n).map(|i| (0..n).map(|j| ts.matches_vertically(i, j)).collect()).collect();
        Adjacency { h, v }
    }

    /// `(out h, in h, out v, in v, self h, self v)` degree profile.
    fn profile(&self, i: usize) -> [usize; 6] {
        let n = self.h.len();
        let count = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&j| f(j)).count();
        [
            count(&|j| self.h[i][j]),
            count(&|j| self.h[j][i]),
            count(&|j| self.v[i][j]),
            count(&|j| self.v[j][i]),
            self.h[i][i] as usize,
            self.v[i][i] as usize,
        ]
    }
}

/// Checks that `map` sends adjacent source pairs to adjacent target pairs.
pub fn preserves_adjacency(source: &TileSet, target: &TileSet, map: &[usize]) -> bool {
    map.len() == source.len()
        && map.iter().all(|&j| j < target.len())
        && (0..source.len()).all(|i| {
            (0..source.len()).all(|k| {
                (!source.matches_horizontally(i, k) || target.matches_horizontally(map[i], map[k]))
                    && (!source.matches_vertically(i, k) || target.matches_vertically(map[i], map[k]))
            })
        })
}

struct MapSearcher<'a> {
    src: &'a Adjacency,
    dst: &'a Adjacency,
    bijective: bool,
    map: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl MapSearcher<'_> {
    fn relation_ok(&self, s: bool, d: bool) -> bool {
        if self.bijective {
            s == d
        } else {
            !s || d
        }
    }

    /// Whether `i -> j` and `k -> l` can both hold.
    fn compatible(&self, i: usize, j: usize, k: usize, l: usize) -> bool {
        (!self.bijective || (i == k) == (j == l))
            && self.relation_ok(self.src.h[i][k], self.dst.h[j][l])
            && self.relation_ok(self.src.h[k][i], self.dst.h[l][j])
            && self.relation_ok(self.src.v[i][k], self.dst.v[j][l])
            && self.relation_ok(self.src.v[k][i], self.dst.v[l][j])
    }

    /// Assigns source tiles in index order, trying targets in ascending
    /// order, and prunes the remaining domains after each choice.
    fn search(&mut self, i: usize, domains: &[Vec<usize>]) -> Step {
        if i == self.map.len() {
            return Step::Found;
        }
        for &j in &domains[i] {
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes
                || (self.nodes.is_multiple_of(1024) && self.started.elapsed() > Duration::from_millis(self.budget.max_millis))
            {
                return Step::OutOfBudget;
            }
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(domains.len());
            next.extend(domains[..=i].iter().cloned());
            let mut wiped = false;
            for k in i + 1..domains.len() {
                let d: Vec<usize> = domains[k].iter().copied().filter(|&l| self.compatible(i, j, k, l)).collect();
                if d.is_empty() {
                    wiped = true;
                    break;
                }
                next.push(d);
            }
            if wiped {
                continue;
            }
            self.map[i] = j;
            match self.search(i + 1, &next) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn map_search(source: &TileSet, target: &TileSet, bijective: bool, budget: &SearchBudget) -> MapSearch {
    let (src, dst) = (Adjacency::of(source), Adjacency::of(target));
    let mut s = MapSearcher {
        src: &src,
        dst: &dst,
        bijective,
        map: vec![0; source.len()],
        nodes: 0,
        budget: *budget,
        started: Instant::now(),
    };
    let domains: Vec<Vec<usize>> = (0..source.len())
        .map(|i| {
            let p = src.profile(i);
            (0..target.len())
                .filter(|&j| !bijective || p == dst.profile(j))
                .filter(|&j| s.compatible(i, j, i, j))
                .collect()
        })
        .collect();
    if domains.iter().any(Vec::is_empty) {
        return MapSearch::NoMap;
    }
    match s.search(0, &domains) {
        Step::Found => MapSearch::Found(s.map),
        Step::Exhausted => MapSearch::NoMap,
        Step::OutOfBudget => MapSearch::Unknown,
    }
}

/// Lexicographically least map `source -> target` under which every
/// adjacent pair of source tiles lands on an adjacent pair of target tiles.
pub fn find_simulation(source: &TileSet, target: &TileSet, budget: &SearchBudget) -> Result<MapSearch> {
    if source.is_empty() || target.is_empty() {
        return Err(Error::InvalidInput("both tile sets must be nonempty".into()));
    }
    Ok(map_search(source, target, false, budget))
}

/// Lexicographically least bijection preserving adjacency and
/// non-adjacency in both directions.
pub fn check_isomorphism(a: &TileSet, b: &TileSet, budget: &SearchBudget) -> MapSearch {
    if a.len() != b.len() {
        return MapSearch::NoMap;
    }
    map_search(a, b, true, budget)
}
