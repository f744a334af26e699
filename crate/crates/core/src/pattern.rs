//! Letter grids (patterns and windows) and two-dimensional SFT specifications.

use std::fmt;

use crate::error::{Error, Result};
use crate::text;

/// A letter of a subshift alphabet.
pub type Letter = char;

/// A finite rectangle of letters. `cells[y * width + x]`, `y = 0` at the
/// bottom; text forms list rows top-down.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterGrid {
    width: usize,
    height: usize,
    cells: Vec<Letter>,
}

/// A forbidden pattern.
pub type Pattern = LetterGrid;
/// A finite restriction of a configuration.
pub type Window = LetterGrid;

impl LetterGrid {
    pub fn new(width: usize, height: usize, cells: Vec<Letter>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!("grid dimensions must be positive, got {width}x{height}")));
        }
        if cells.len() != width * height {
            return Err(Error::InvalidInput(format!(
                "{width}x{height} grid needs {} letters, got {}",
                width * height,
                cells.len()
            )));
        }
        Ok(LetterGrid { width, height, cells })
    }

    /// Builds a grid from rows given top row first.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().chars().count());
        let mut cells = Vec::with_capacity(width * height);
        for row in rows.iter().rev() {
            let row: Vec<char> = row.as_ref().chars().collect();
            if row.len() != width {
                return Err(Error::InvalidInput(format!("ragged rows: expected {width} letters, got {}", row.len())));
            }
            cells.extend(row);
        }
        LetterGrid::new(width, height, cells)
    }

    /// A `len × 1` horizontal strip.
    pub fn horizontal(word: &[Letter]) -> Result<Self> {
        LetterGrid::new(word.len(), 1, word.to_vec())
    }

    /// A `1 × 2` column with `lower` at the bottom.
    pub fn vertical_pair(lower: Letter, upper: Letter) -> Self {
        LetterGrid {
            width: 1,
            height: 2,
            cells: vec![lower, upper],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> Letter {
        self.cells[y * self.width + x]
    }

    pub fn cells(&self) -> &[Letter] {
        &self.cells
    }

    /// Row `y` (0 = bottom).
    pub fn row(&self, y: usize) -> &[Letter] {
        &self.cells[y * self.width..(y + 1) * self.width]
    }

    pub fn rows_top_down(&self) -> Vec<String> {
        (0..self.height).rev().map(|y| self.row(y).iter().collect()).collect()
    }

    /// The `w × h` sub-grid with bottom-left corner `(x, y)`.
    pub fn sub_grid(&self, x: usize, y: usize, w: usize, h: usize) -> LetterGrid {
        let cells = (y..y + h).flat_map(|yy| (x..x + w).map(move |xx| (xx, yy))).map(|(xx, yy)| self.get(xx, yy)).collect();
        LetterGrid {
            width: w,
            height: h,
            cells,
        }
    }

    /// Whether `pattern` occurs with its bottom-left corner at `(x, y)`,
    /// reading coordinates modulo the grid size when `wrap` is set.
    pub fn occurs_at(&self, pattern: &LetterGrid, x: usize, y: usize, wrap: bool) -> bool {
        if !wrap && (x + pattern.width > self.width || y + pattern.height > self.height) {
            return false;
        }
        (0..pattern.height).all(|dy| {
            (0..pattern.width).all(|dx| {
                let (xx, yy) = ((x + dx) % self.width, (y + dy) % self.height);
                self.get(xx, yy) == pattern.get(dx, dy)
            })
        })
    }

    /// `window <w> <h>` followed by `h` rows, top row first.
    pub fn to_window_text(&self) -> String {
        let mut out = format!("window {} {}\n", self.width, self.height);
        for row in self.rows_top_down() {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    pub fn parse_window(input: &str) -> Result<Window> {
        let lines = text::lines(input);
        let header = lines
            .first()
            .ok_or_else(|| Error::parse(1, 1, "empty input, expected `window <w> <h>`"))?;
        if header.keyword() != "window" {
            return Err(header.tokens[0].error("expected `window` header"));
        }
        header.expect_len(3, "window <w> <h>")?;
        let w = header.tokens[1].parse_usize("width")?;
        let h = header.tokens[2].parse_usize("height")?;
        let (grid, rest) = read_grid_rows(&lines[1..], w, h, header)?;
        if let Some(extra) = rest.first() {
            return Err(extra.error("unexpected line after window rows"));
        }
        Ok(grid)
    }
}

impl fmt::Display for LetterGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rows_top_down().join("/"))
    }
}

/// Reads `h` rows of `w` letters; returns the grid and the unread lines.
fn read_grid_rows<'l, 'a>(
    lines: &'l [text::Line<'a>],
    w: usize,
    h: usize,
    header: &text::Line<'a>,
) -> Result<(LetterGrid, &'l [text::Line<'a>])> {
    if w == 0 || h == 0 {
        return Err(header.error("dimensions must be positive"));
    }
    if lines.len() < h {
        return Err(header.error(format!("expected {h} rows after this line, found {}", lines.len())));
    }
    let mut rows = Vec::with_capacity(h);
    for line in &lines[..h] {
        let row = line.compact();
        if row.chars().count() != w {
            return Err(line.error(format!("expected a row of {w} letters, found `{row}`")));
        }
        rows.push(row);
    }
    Ok((LetterGrid::from_rows(&rows)?, &lines[h..]))
}

/// A two-dimensional subshift of finite type: an alphabet and a finite list
/// of forbidden patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpec {
    alphabet: Vec<Letter>,
    forbidden: Vec<Pattern>,
}

impl SftSpec {
    pub fn new(alphabet: Vec<Letter>, forbidden: Vec<Pattern>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidSpec("alphabet is empty".into()));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(a) {
                return Err(Error::InvalidSpec(format!("letter `{a}` listed twice")));
            }
        }
        for p in &forbidden {
            if let Some(bad) = p.cells().iter().find(|c| !alphabet.contains(c)) {
                return Err(Error::InvalidSpec(format!("pattern {p} uses letter `{bad}` outside the alphabet")));
            }
        }
        Ok(SftSpec { alphabet, forbidden })
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    /// Side of the smallest square containing every forbidden pattern
    /// (0 when nothing is forbidden).
    pub fn window(&self) -> usize {
        self.forbidden.iter().map(|p| p.width().max(p.height())).max().unwrap_or(0)
    }

    pub fn letter_index(&self, letter: Letter) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == letter)
    }

    pub fn check_letters(&self, grid: &LetterGrid) -> Result<()> {
        match grid.cells().iter().find(|c| !self.alphabet.contains(c)) {
            Some(c) => Err(Error::InvalidInput(format!("letter `{c}` is not in the alphabet"))),
            None => Ok(()),
        }
    }

    /// Whether no forbidden pattern occurs anywhere in `grid` (wrapping
    /// around when `torus` is set).
    pub fn is_legal(&self, grid: &LetterGrid, torus: bool) -> bool {
        self.forbidden.iter().all(|p| {
            let (xs, ys) = if torus {
                (grid.width(), grid.height())
            } else {
                if p.width() > grid.width() || p.height() > grid.height() {
                    return true;
                }
                (grid.width() - p.width() + 1, grid.height() - p.height() + 1)
            };
            !(0..ys).any(|y| (0..xs).any(|x| grid.occurs_at(p, x, y, torus)))
        })
    }

    pub fn to_text(&self) -> String {
        let letters: Vec<String> = self.alphabet.iter().map(|c| c.to_string()).collect();
        let mut out = format!("sft alphabet={}\n", letters.join(","));
        for p in &self.forbidden {
            out.push_str(&format!("forbid {} {}\n", p.width(), p.height()));
            for row in p.rows_top_down() {
                out.push_str(&row);
                out.push('\n');
            }
        }
        out
    }

    /// Parses `sft alphabet=<comma-list>` followed by `forbid <w> <h>` blocks,
    /// each with `h` rows of `w` letters, top row first.
    pub fn parse(input: &str) -> Result<SftSpec> {
        let lines = text::lines(input);
        let header = lines
            .first()
            .ok_or_else(|| Error::parse(1, 1, "empty input, expected `sft alphabet=...`"))?;
        if header.keyword() != "sft" {
            return Err(header.tokens[0].error("expected `sft` header"));
        }
        header.expect_len(2, "sft alphabet=<comma-list>")?;
        let alphabet = text::parse_alphabet(&header.tokens[1].key_value("alphabet")?)?;
        let mut forbidden = Vec::new();
        let mut rest = &lines[1..];
        while let Some(line) = rest.first() {
            if line.keyword() != "forbid" {
                return Err(line.tokens[0].error(format!("expected `forbid <w> <h>`, found `{}`", line.keyword())));
            }
            line.expect_len(3, "forbid <w> <h>")?;
            let w = line.tokens[1].parse_usize("width")?;
            let h = line.tokens[2].parse_usize("height")?;
            let (grid, tail) = read_grid_rows(&rest[1..], w, h, line)?;
            if let Some(bad) = grid.cells().iter().find(|c| !alphabet.contains(c)) {
                return Err(line.error(format!("pattern uses letter `{bad}` outside the alphabet")));
            }
            forbidden.push(grid);
            rest = tail;
        }
        SftSpec::new(alphabet, forbidden).map_err(|e| header.error(e.to_string()))
    }
}
