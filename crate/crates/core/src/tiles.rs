//! Wang tiles, tile sets, and finite (rectangular or toroidal) tilings.
//!
//! Orientation is fixed crate-wide: `north` is the top edge and `y` grows
//! upward, so row 0 of a [`Tiling`] is its bottom row. Two tiles match
//! horizontally when `east(left) == west(right)` and vertically when
//! `north(lower) == south(upper)`. Tiles are never rotated.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::text;

/// A side color. Ids are local to one tile set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    North,
    East,
    South,
    West,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::North, Direction::East, Direction::South, Direction::West];

    pub fn opposite(self) -> Direction {
        match self {
            Direction::North => Direction::South,
            Direction::East => Direction::West,
            Direction::South => Direction::North,
            Direction::West => Direction::East,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

/// A Wang tile: exactly its four side colors.
///
/// The derived ordering is lexicographic on `(north, east, south, west)`,
/// which is the canonical tile order used by [`normalize_tileset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub north: Color,
    pub east: Color,
    pub south: Color,
    pub west: Color,
}

impl Tile {
    pub fn new(north: u32, east: u32, south: u32, west: u32) -> Self {
        Tile {
            north: Color(north),
            east: Color(east),
            south: Color(south),
            west: Color(west),
        }
    }

    pub fn side(&self, dir: Direction) -> Color {
        match dir {
            Direction::North => self.north,
            Direction::East => self.east,
            Direction::South => self.south,
            Direction::West => self.west,
        }
    }

    fn map_colors(&self, f: impl Fn(Color) -> Color) -> Tile {
        Tile {
            north: f(self.north),
            east: f(self.east),
            south: f(self.south),
            west: f(self.west),
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.north, self.east, self.south, self.west)
    }
}

/// A duplicate-free list of tiles over a color universe `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSet {
    name: String,
    num_colors: u32,
    labels: BTreeMap<u32, String>,
    tiles: Vec<Tile>,
}

impl TileSet {
    pub fn new(name: impl Into<String>, num_colors: u32, tiles: Vec<Tile>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(tiles.len());
        for tile in &tiles {
            for dir in Direction::ALL {
                let c = tile.side(dir);
                if c.0 >= num_colors {
                    return Err(Error::ColorRange {
                        color: c.0,
                        colors: num_colors,
                    });
                }
            }
            if seen.insert(*tile, ()).is_some() {
                return Err(Error::DuplicateTile(tile.to_string()));
            }
        }
        Ok(TileSet {
            name: name.into(),
            num_colors,
            labels: BTreeMap::new(),
            tiles,
        })
    }

    /// Builds a set whose universe is `0..=max color used`.
    pub fn from_tiles(name: impl Into<String>, tiles: Vec<Tile>) -> Result<Self> {
        let num_colors = tiles
            .iter()
            .flat_map(|t| Direction::ALL.map(|d| t.side(d).0))
            .max()
            .map_or(0, |m| m + 1);
        TileSet::new(name, num_colors, tiles)
    }

    pub fn with_labels(mut self, labels: BTreeMap<u32, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn label(&self, color: Color) -> Option<&str> {
        self.labels.get(&color.0).map(String::as_str)
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile(&self, index: usize) -> Result<&Tile> {
        self.tiles.get(index).ok_or(Error::TileIndex {
            index,
            len: self.tiles.len(),
        })
    }

    /// Whether `right` may sit immediately east of `left`.
    pub fn matches_horizontally(&self, left: usize, right: usize) -> bool {
        self.tiles[left].east == self.tiles[right].west
    }

    /// Whether `upper` may sit immediately north of `lower`.
    pub fn matches_vertically(&self, lower: usize, upper: usize) -> bool {
        self.tiles[lower].north == self.tiles[upper].south
    }

    /// Serializes in the plain-text tile-set format.
    pub fn to_text(&self) -> String {
        self.to_text_with_comments(&[])
    }

    /// Serializes with extra `#` comment lines after the header. Color
    /// labels go in `# color <id> <label>` comments.
    pub fn to_text_with_comments(&self, comments: &[String]) -> String {
        let mut out = format!("tileset {} colors={}\n", self.name, self.num_colors);
        for (id, label) in &self.labels {
            out.push_str(&format!("# color {id} {label}\n"));
        }
        for c in comments {
            for line in c.lines() {
                out.push_str("# ");
                out.push_str(line);
                out.push('\n');
            }
        }
        for t in &self.tiles {
            out.push_str(&format!("tile {} {} {} {}\n", t.north, t.east, t.south, t.west));
        }
        out
    }

    /// Parses the plain-text tile-set format:
    ///
    /// ```text
    /// tileset <name> colors=<n>
    /// tile <north> <east> <south> <west>
    /// ...
    /// ```
    pub fn parse(input: &str) -> Result<TileSet> {
        let lines = text::lines(input);
        let header = lines
            .first()
            .ok_or_else(|| Error::parse(1, 1, "empty input, expected `tileset <name> colors=<n>`"))?;
        if header.keyword() != "tileset" {
            return Err(header.tokens[0].error("expected `tileset` header"));
        }
        header.expect_len(3, "tileset <name> colors=<n>")?;
        let name = header.tokens[1].text.to_string();
        let colors_tok = header.tokens[2].key_value("colors")?;
        let num_colors = colors_tok.parse_u32("color count")?;

        let mut tiles = Vec::new();
        let mut seen = HashMap::new();
        for line in &lines[1..] {
            if line.keyword() != "tile" {
                return Err(line.tokens[0].error(format!("unknown directive `{}`", line.keyword())));
            }
            line.expect_len(5, "tile <north> <east> <south> <west>")?;
            let mut sides = [0u32; 4];
            for (i, side) in sides.iter_mut().enumerate() {
                let tok = &line.tokens[i + 1];
                *side = tok.parse_u32("color id")?;
                if *side >= num_colors {
                    return Err(tok.error(format!("color {} outside [0,{num_colors})", *side)));
                }
            }
            let tile = Tile::new(sides[0], sides[1], sides[2], sides[3]);
            if let Some(prev) = seen.insert(tile, line.number) {
                return Err(line.error(format!("duplicate tile {tile}, first listed on line {prev}")));
            }
            tiles.push(tile);
        }
        Ok(TileSet::new(name, num_colors, tiles)?.with_labels(parse_labels(input, num_colors)))
    }
}

fn parse_labels(input: &str, num_colors: u32) -> BTreeMap<u32, String> {
    let mut labels = BTreeMap::new();
    for line in input.lines() {
        let Some(rest) = line.trim_start().strip_prefix("# color ") else { continue };
        let Some((id, label)) = rest.split_once(' ') else { continue };
        if let Ok(id) = id.parse::<u32>() {
            if id < num_colors {
                labels.insert(id, label.trim_end().to_string());
            }
        }
    }
    labels
}

/// Canonical form of a tile set together with the index/color maps that
/// produced it.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub tileset: TileSet,
    /// Old tile index to new tile index.
    pub tile_map: Vec<usize>,
    /// Old color id to new color id; `None` for colors no tile uses.
    pub color_map: Vec<Option<Color>>,
}

/// Removes duplicates, renumbers used colors densely (order-preserving), and
/// sorts tiles lexicographically by `(north, east, south, west)`.
pub fn normalize_tileset(tileset: &TileSet) -> TileSet {
    normalize_with_maps(tileset).tileset
}

pub fn normalize_with_maps(tileset: &TileSet) -> Normalized {
    normalize_parts(&tileset.name, tileset.num_colors, &tileset.labels, &tileset.tiles)
}

/// Normalizes a raw tile list that may contain duplicates.
pub fn normalize_tile_list(name: &str, tiles: &[Tile]) -> Normalized {
    let num_colors = tiles
        .iter()
        .flat_map(|t| Direction::ALL.map(|d| t.side(d).0))
        .max()
        .map_or(0, |m| m + 1);
    normalize_parts(name, num_colors, &BTreeMap::new(), tiles)
}

fn normalize_parts(name: &str, num_colors: u32, labels: &BTreeMap<u32, String>, tiles: &[Tile]) -> Normalized {
    let mut used = vec![false; num_colors as usize];
    for t in tiles {
        for d in Direction::ALL {
            used[t.side(d).0 as usize] = true;
        }
    }
    let mut color_map = vec![None; used.len()];
    let mut next = 0u32;
    for (old, &u) in used.iter().enumerate() {
        if u {
            color_map[old] = Some(Color(next));
            next += 1;
        }
    }
    let renamed: Vec<Tile> = tiles
        .iter()
        .map(|t| t.map_colors(|c| color_map[c.0 as usize].expect("used color")))
        .collect();
    let mut sorted = renamed.clone();
    sorted.sort();
    sorted.dedup();
    let position: HashMap<Tile, usize> = sorted.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let tile_map = renamed.iter().map(|t| position[t]).collect();

    let labels = labels
        .iter()
        .filter_map(|(&old, label)| {
            color_map
                .get(old as usize)
                .copied()
                .flatten()
                .map(|c| (c.0, label.clone()))
        })
        .collect();

    Normalized {
        tileset: TileSet {
            name: name.to_string(),
            num_colors: next,
            labels,
            tiles: sorted,
        },
        tile_map,
        color_map,
    }
}

/// A finite rectangular assignment of tile indices. `cells[y * width + x]`,
/// with `y = 0` the bottom row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    width: usize,
    height: usize,
    cells: Vec<usize>,
}

/// A `p × q` block of tile indices whose matching constraints wrap around.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusTiling {
    p: usize,
    q: usize,
    cells: Vec<usize>,
}

macro_rules! grid_accessors {
    ($ty:ident, $w:ident, $h:ident) => {
        impl $ty {
            pub fn get(&self, x: usize, y: usize) -> usize {
                self.cells[y * self.$w + x]
            }

            pub fn cells(&self) -> &[usize] {
                &self.cells
            }

            /// Rows from the top (north) row down, as written in text form.
            pub fn rows_top_down(&self) -> Vec<&[usize]> {
                self.cells.chunks(self.$w).rev().collect()
            }

            fn check_indices(&self, tileset: &TileSet) -> Result<()> {
                match self.cells.iter().find(|&&i| i >= tileset.len()) {
                    Some(&index) => Err(Error::TileIndex {
                        index,
                        len: tileset.len(),
                    }),
                    None => Ok(()),
                }
            }

            pub fn to_text(&self) -> String {
                grid_to_text(self.rows_top_down())
            }
        }
    };
}

grid_accessors!(Tiling, width, height);
grid_accessors!(TorusTiling, p, q);

impl Tiling {
    pub fn new(width: usize, height: usize, cells: Vec<usize>) -> Result<Self> {
        check_dims(width, height, cells.len())?;
        Ok(Tiling { width, height, cells })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Parses whitespace-separated rows of tile indices, top row first.
    pub fn parse_rows(input: &str) -> Result<Tiling> {
        let (w, h, cells) = parse_index_rows(input)?;
        Tiling::new(w, h, cells)
    }
}

impl TorusTiling {
    pub fn new(p: usize, q: usize, cells: Vec<usize>) -> Result<Self> {
        check_dims(p, q, cells.len())?;
        Ok(TorusTiling { p, q, cells })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Unrolls the periodic block into a `width × height` rectangle.
    pub fn unroll(&self, width: usize, height: usize) -> Tiling {
        let cells = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| self.get(x % self.p, y % self.q))
            .collect();
        Tiling {
            width,
            height,
            cells,
        }
    }

    pub fn as_tiling(&self) -> Tiling {
        self.unroll(self.p, self.q)
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidInput(format!("grid dimensions must be positive, got {width}x{height}")));
    }
    if width * height != len {
        return Err(Error::InvalidInput(format!(
            "{width}x{height} grid needs {} cells, got {len}",
            width * height
        )));
    }
    Ok(())
}

fn grid_to_text(rows: Vec<&[usize]>) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|i| i.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn parse_index_rows(input: &str) -> Result<(usize, usize, Vec<usize>)> {
    let mut rows = Vec::new();
    for line in text::lines(input) {
        let row = line
            .tokens
            .iter()
            .map(|t| t.parse_usize("tile index"))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            let first: &Vec<usize> = first;
            if row.len() != first.len() {
                return Err(line.error(format!("row has {} cells, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, 1, "no rows"));
    }
    let (w, h) = (rows[0].len(), rows.len());
    let cells = rows.into_iter().rev().flatten().collect();
    Ok((w, h, cells))
}

/// Checks every adjacent pair of a rectangular tiling.
pub fn validate_tiling(tileset: &TileSet, tiling: &Tiling) -> Result<bool> {
    tiling.check_indices(tileset)?;
    let (w, h) = (tiling.width, tiling.height);
    for y in 0..h {
        for x in 0..w {
            let here = tiling.get(x, y);
            if x + 1 < w && !tileset.matches_horizontally(here, tiling.get(x + 1, y)) {
                return Ok(false);
            }
            if y + 1 < h && !tileset.matches_vertically(here, tiling.get(x, y + 1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks every adjacent pair of a torus tiling, wrapping indices.
pub fn validate_torus(tileset: &TileSet, tiling: &TorusTiling) -> Result<bool> {
    tiling.check_indices(tileset)?;
    let (p, q) = (tiling.p, tiling.q);
    for y in 0..q {
        for x in 0..p {
            let here = tiling.get(x, y);
            if !tileset.matches_horizontally(here, tiling.get((x + 1) % p, y))
                || !tileset.matches_vertically(here, tiling.get(x, (y + 1) % q))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
