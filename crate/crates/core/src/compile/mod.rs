//! Compilers from rule systems to Wang tile sets.

mod sft;
mod tm;

pub use sft::{sft_to_wang, MAX_BLOCKS};
pub use tm::{tm_to_tileset, Configuration, Move, StepOutcome, TmCell, TmCompilation, TmSpec};

use crate::error::Result;
use crate::pattern::{Letter, LetterGrid};
use crate::tiles::{normalize_with_maps, TileSet, Tiling, TorusTiling};

/// A compiled tile set with its decoding map `tile index -> letter` and a
/// per-tile description of what the tile encodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileCompilation<L> {
    pub tileset: TileSet,
    pub decode: Vec<L>,
    pub provenance: Vec<String>,
}

impl<L: Clone> TileCompilation<L> {
    /// Normalizes the tile set, carrying decode and provenance along.
    /// Tiles that collapse together must decode identically.
    pub(crate) fn normalized(self) -> Self {
        let n = normalize_with_maps(&self.tileset);
        let mut decode: Vec<Option<L>> = vec![None; n.tileset.len()];
        let mut provenance = vec![String::new(); n.tileset.len()];
        for (old, &new) in n.tile_map.iter().enumerate() {
            decode[new].get_or_insert_with(|| self.decode[old].clone());
            if provenance[new].is_empty() {
                provenance[new] = self.provenance[old].clone();
            }
        }
        TileCompilation {
            tileset: n.tileset,
            decode: decode.into_iter().map(|d| d.expect("every new tile has a preimage")).collect(),
            provenance,
        }
    }

    pub fn decode_cells(&self, cells: &[usize]) -> Vec<L> {
        cells.iter().map(|&i| self.decode[i].clone()).collect()
    }
}

impl TileCompilation<Letter> {
    pub fn decode_tiling(&self, t: &Tiling) -> Result<LetterGrid> {
        LetterGrid::new(t.width(), t.height(), self.decode_cells(t.cells()))
    }

    pub fn decode_torus(&self, t: &TorusTiling) -> Result<LetterGrid> {
        LetterGrid::new(t.p(), t.q(), self.decode_cells(t.cells()))
    }

    /// Comment lines recording `decode <index> <letter>` and provenance,
    /// suitable for [`TileSet::to_text_with_comments`].
    pub fn comment_lines(&self) -> Vec<String> {
        self.decode
            .iter()
            .zip(&self.provenance)
            .enumerate()
            .map(|(i, (l, p))| format!("decode {i} {l} {p}"))
            .collect()
    }
}

/// Reads `# decode <index> <letter> ...` comment lines back from a tile-set
/// file. Returns `None` when the file carries no decode map.
pub fn parse_decode_comments(input: &str) -> Option<Vec<Letter>> {
    let mut pairs = Vec::new();
    for line in input.lines() {
        let Some(rest) = line.trim_start().strip_prefix('#') else { continue };
        let mut toks = rest.split_whitespace();
        if toks.next() != Some("decode") {
            continue;
        }
        let index: usize = toks.next()?.parse().ok()?;
        let mut letter = toks.next()?.chars();
        let c = letter.next()?;
        if letter.next().is_some() {
            return None;
        }
        pairs.push((index, c));
    }
    if pairs.is_empty() {
        return None;
    }
    pairs.sort();
    pairs.iter().enumerate().all(|(i, &(idx, _))| i == idx).then(|| pairs.into_iter().map(|(_, c)| c).collect())
}
