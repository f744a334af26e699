//! The Robinson aperiodic tile set and desk-scale aperiodicity evidence.
//!
//! Tiles are Robinson's crosses and arms. Every side carries one line of the
//! arrow pattern, described by its absolute flow direction and whether it is
//! the edge of a box (and on which side the box lies). A parity marking pins
//! crosses to cells whose coordinates are both odd, vertical arms to even
//! column/odd row, horizontal arms to odd column/even row, and lets every
//! tile occur at even/even cells. Each side color is the pair (line, parity).
//!
//! Base tiles:
//! * cross facing `(h, v)`: all four lines flow outward; the `h` and `v`
//!   lines are edges of a box lying towards `h` and `v`. 4 tiles.
//! * arm with a vertical principal line flowing `N` or `S` with mark
//!   `plain | box-E | box-W` on both ends, and two side lines flowing inward
//!   with a shared mark `plain | box-N | box-S`; a side box towards `N` forces
//!   the principal to flow `S` and vice versa. 12 tiles, and 12 horizontal.
//!
//! That is 28 base tiles; with parity, 4 + 12 + 12 + 28 = 56 Wang tiles.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::solve::{solve_rectangle, solve_torus, BoundaryConstraint, SearchBudget, SolveResult};
use crate::tiles::{normalize_with_maps, Direction, Tile, TileSet};

/// Number of Wang tiles in the pinned variant.
pub const ROBINSON_TILE_COUNT: usize = 56;

/// Marking of one side's line: a plain line or the edge of a box that lies
/// towards the given direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Plain,
    Box(Direction),
}

/// The line crossing one side of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub flow: Direction,
    pub mark: Mark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// Facing `(horizontal, vertical)`.
    Cross(Direction, Direction),
    /// Principal line flowing `dir`, marked `principal`; side lines marked `side`.
    Arm { dir: Direction, principal: Mark, side: Mark },
}

/// A Robinson tile before flattening: shape plus parity class
/// `(column parity, row parity)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Role {
    pub shape: Shape,
    pub parity: (u8, u8),
}

fn dir_name(d: Direction) -> &'static str {
    match d {
        Direction::North => "N",
        Direction::East => "E",
        Direction::South => "S",
        Direction::West => "W",
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mark::Plain => f.write_str("plain"),
            Mark::Box(d) => write!(f, "box-{}", dir_name(*d)),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (px, py) = self.parity;
        match self.shape {
            Shape::Cross(h, v) => write!(f, "cross {}{} parity {px}{py}", dir_name(v), dir_name(h)),
            Shape::Arm { dir, principal, side } => {
                write!(f, "arm {} principal {principal} side {side} parity {px}{py}", dir_name(dir))
            }
        }
    }
}

fn is_vertical(d: Direction) -> bool {
    matches!(d, Direction::North | Direction::South)
}

impl Shape {
    /// The line crossing side `s`.
    pub fn line(&self, s: Direction) -> Line {
        match *self {
            Shape::Cross(h, v) => {
                let facing = if is_vertical(s) { v } else { h };
                let across = if is_vertical(s) { h } else { v };
                let mark = if s == facing { Mark::Box(across) } else { Mark::Plain };
                Line { flow: s, mark }
            }
            Shape::Arm { dir, principal, side } => {
                if is_vertical(s) == is_vertical(dir) {
                    Line { flow: dir, mark: principal }
                } else {
                    Line { flow: s.opposite(), mark: side }
                }
            }
        }
    }

    pub fn all() -> Vec<Shape> {
        use Direction::*;
        let mut out = Vec::new();
        for v in [North, South] {
            for h in [East, West] {
                out.push(Shape::Cross(h, v));
            }
        }
        for dir in [North, South, East, West] {
            let (along, across) = if is_vertical(dir) { ([East, West], [North, South]) } else { ([North, South], [East, West]) };
            let principals = [Mark::Plain, Mark::Box(along[0]), Mark::Box(along[1])];
            let sides = [Mark::Plain, Mark::Box(across[0]), Mark::Box(across[1])];
            for principal in principals {
                for side in sides {
                    // a box on the side lines lies on the far side from the principal's flow
                    if side == Mark::Box(dir) {
                        continue;
                    }
                    out.push(Shape::Arm { dir, principal, side });
                }
            }
        }
        out
    }

    pub fn parities(&self) -> &'static [(u8, u8)] {
        match self {
            Shape::Cross(..) => &[(1, 1), (0, 0)],
            Shape::Arm { dir, .. } if is_vertical(*dir) => &[(0, 1), (0, 0)],
            Shape::Arm { .. } => &[(1, 0), (0, 0)],
        }
    }
}

/// Side color before numbering: the line and the parity label.
type SideKey = (Line, (u8, u8));

impl Role {
    fn side(&self, s: Direction) -> SideKey {
        let (px, py) = self.parity;
        let label = match s {
            Direction::East | Direction::North => (px, py),
            Direction::West => (1 - px, py),
            Direction::South => (px, 1 - py),
        };
        (self.shape.line(s), label)
    }
}

/// The pinned Robinson set with a role per tile index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobinsonSet {
    pub tileset: TileSet,
    pub roles: Vec<Role>,
}

impl RobinsonSet {
    pub fn index_of(&self, role: &Role) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    /// One `role` comment line per tile, for export.
    pub fn comment_lines(&self) -> Vec<String> {
        self.roles.iter().enumerate().map(|(i, r)| format!("role {i} {r}")).collect()
    }
}

pub fn robinson_tileset() -> RobinsonSet {
    let mut roles = Vec::new();
    for shape in Shape::all() {
        for &parity in shape.parities() {
            roles.push(Role { shape, parity });
        }
    }
    let mut ids: BTreeMap<SideKey, u32> = BTreeMap::new();
    for r in &roles {
        for d in Direction::ALL {
            ids.entry(r.side(d)).or_insert(0);
        }
    }
    for (i, id) in ids.values_mut().enumerate() {
        *id = i as u32;
    }
    let tiles = roles
        .iter()
        .map(|r| {
            let [n, e, s, w] = Direction::ALL.map(|d| ids[&r.side(d)]);
            Tile::new(n, e, s, w)
        })
        .collect();
    let labels = ids
        .iter()
        .map(|((line, (px, py)), &id)| (id, format!("{}:{} parity {px}{py}", dir_name(line.flow), line.mark)))
        .collect();
    let raw = TileSet::new("robinson", ids.len() as u32, tiles)
        .expect("roles flatten to distinct tiles")
        .with_labels(labels);
    let n = normalize_with_maps(&raw);
    let mut sorted: Vec<Option<Role>> = vec![None; n.tileset.len()];
    for (old, &new) in n.tile_map.iter().enumerate() {
        sorted[new] = Some(roles[old]);
    }
    RobinsonSet {
        tileset: n.tileset,
        roles: sorted.into_iter().map(|r| r.expect("bijective")).collect(),
    }
}

/// Square and torus verdicts for one tile set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceReport {
    /// `(n, verdict)` for `n = 1..=max_square`.
    pub squares: Vec<(usize, &'static str)>,
    /// `((p, q), verdict)` for all `1 <= p, q <= max_period`.
    pub tori: Vec<((usize, usize), &'static str)>,
}

impl EvidenceReport {
    /// Largest `n` such that every square up to `n` is tileable.
    pub fn largest_square(&self) -> Option<usize> {
        self.squares.iter().take_while(|(_, v)| *v == "SAT").last().map(|(n, _)| *n)
    }

    pub fn periodic(&self) -> Option<(usize, usize)> {
        self.tori.iter().find(|(_, v)| *v == "SAT").map(|(pq, _)| *pq)
    }

    pub fn budget_hits(&self) -> usize {
        self.squares.iter().map(|(_, v)| v).chain(self.tori.iter().map(|(_, v)| v)).filter(|v| **v == "UNKNOWN").count()
    }

    /// Squares tileable through the bound and no torus found.
    pub fn consistent_with_aperiodicity(&self) -> bool {
        self.budget_hits() == 0
            && self.largest_square() == self.squares.last().map(|(n, _)| *n)
            && self.tori.iter().all(|(_, v)| *v == "UNSAT")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let largest = self.largest_square().map_or("none".to_string(), |n| n.to_string());
        out.push_str(&format!("largest_square {largest}\n"));
        match self.periodic() {
            Some((p, q)) => out.push_str(&format!("periodic {p} {q} (not aperiodic)\n")),
            None => out.push_str("periodic none\n"),
        }
        out.push_str(&format!("budget_hits {}\n", self.budget_hits()));
        for (n, v) in &self.squares {
            out.push_str(&format!("square {n} {v}\n"));
        }
        for ((p, q), v) in &self.tori {
            out.push_str(&format!("torus {p} {q} {v}\n"));
        }
        out
    }
}

/// Runs the evidence suite on the Robinson set.
pub fn aperiodicity_evidence(max_square: usize, max_period: usize, budget: &SearchBudget) -> Result<EvidenceReport> {
    evidence_for(&robinson_tileset().tileset, max_square, max_period, budget)
}

/// Runs the evidence suite on any tile set.
pub fn evidence_for(tileset: &TileSet, max_square: usize, max_period: usize, budget: &SearchBudget) -> Result<EvidenceReport> {
    let mut squares = Vec::new();
    for n in 1..=max_square {
        let r = solve_rectangle(tileset, n, n, &BoundaryConstraint::none(), budget)?;
        squares.push((n, r.keyword()));
    }
    let mut tori = Vec::new();
    for p in 1..=max_period {
        for q in 1..=max_period {
            let r: SolveResult<_> = solve_torus(tileset, p, q, budget)?;
            tori.push(((p, q), r.keyword()));
        }
    }
    Ok(EvidenceReport { squares, tori })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::{normalize_tileset, validate_tiling};

    #[test]
    fn pinned_count_and_normal_form() {
        let r = robinson_tileset();
        assert_eq!(Shape::all().len(), 28);
        assert_eq!(r.tileset.len(), ROBINSON_TILE_COUNT);
        assert_eq!(normalize_tileset(&r.tileset), r.tileset);
        assert_eq!(robinson_tileset(), r);
    }

    #[test]
    fn parity_classes() {
        let r = robinson_tileset();
        let count = |p: (u8, u8)| r.roles.iter().filter(|x| x.parity == p).count();
        assert_eq!([count((1, 1)), count((0, 1)), count((1, 0)), count((0, 0))], [4, 12, 12, 28]);
    }

    #[test]
    fn cross_lines_flow_outward() {
        use Direction::*;
        let c = Shape::Cross(East, North);
        assert_eq!(c.line(East), Line { flow: East, mark: Mark::Box(North) });
        assert_eq!(c.line(North), Line { flow: North, mark: Mark::Box(East) });
        assert_eq!(c.line(West), Line { flow: West, mark: Mark::Plain });
        assert_eq!(c.line(South), Line { flow: South, mark: Mark::Plain });
    }

    #[test]
    fn small_square_and_torus() {
        let r = robinson_tileset();
        let b = SearchBudget::default();
        let t = solve_rectangle(&r.tileset, 4, 4, &BoundaryConstraint::none(), &b).unwrap().sat().unwrap();
        assert!(validate_tiling(&r.tileset, &t).unwrap());
        assert!(solve_torus(&r.tileset, 2, 2, &b).unwrap().is_unsat());
    }

    #[test]
    fn control_tileset_is_flagged_periodic() {
        let one = TileSet::from_tiles("one", vec![Tile::new(0, 0, 0, 0)]).unwrap();
        let rep = evidence_for(&one, 2, 1, &SearchBudget::default()).unwrap();
        assert_eq!(rep.periodic(), Some((1, 1)));
        assert!(!rep.consistent_with_aperiodicity());
    }
}
