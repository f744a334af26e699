//! SFT to Wang tiles by overlap coding.
//!
//! Each tile is a legal `k × k` block of letters. Its west/east colors name
//! the block's left/right `(k-1)`-wide strips and its south/north colors the
//! bottom/top `(k-1)`-tall strips, so neighboring tiles must agree on their
//! overlap. Decoding reads the block's bottom-left letter.

use std::collections::BTreeMap;

use super::TileCompilation;
use crate::error::{Error, Result};
use crate::pattern::{Letter, LetterGrid, SftSpec};
use crate::tiles::{Tile, TileSet};

/// Upper bound on `|A|^(k*k)` candidate blocks.
pub const MAX_BLOCKS: u64 = 1 << 22;

pub fn sft_to_wang(spec: &SftSpec) -> Result<TileCompilation<Letter>> {
    // Blocks of side 1 would give every letter the same four (empty) colors.
    let k = spec.window().max(2);
    let alphabet = spec.alphabet();
    let cells = k * k;
    let total = (alphabet.len() as u64).checked_pow(cells as u32).filter(|&t| t <= MAX_BLOCKS);
    let Some(total) = total else {
        return Err(Error::InvalidSpec(format!(
            "{}^{cells} candidate blocks exceeds the limit of {MAX_BLOCKS}",
            alphabet.len()
        )));
    };

    let mut blocks = Vec::new();
    let mut digits = vec![0usize; cells];
    for _ in 0..total {
        let letters = digits.iter().map(|&d| alphabet[d]).collect();
        let block = LetterGrid::new(k, k, letters)?;
        if spec.is_legal(&block, false) {
            blocks.push(block);
        }
        // last cell varies fastest
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < alphabet.len() {
                break;
            }
            *d = 0;
        }
    }

    let mut side_ids: BTreeMap<(bool, LetterGrid), u32> = BTreeMap::new();
    for b in &blocks {
        for (vertical, strip) in strips(b, k) {
            side_ids.entry((vertical, strip)).or_insert(0);
        }
    }
    for (i, id) in side_ids.values_mut().enumerate() {
        *id = i as u32;
    }
    let mut tiles = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let [w, e, s, n] = strips(b, k).map(|key| side_ids[&key]);
        tiles.push(Tile::new(n, e, s, w));
    }
    let labels = side_ids
        .iter()
        .map(|((vertical, strip), &id)| (id, format!("{}{strip}", if *vertical { "ns:" } else { "we:" })))
        .collect();
    let tileset = TileSet::new("sft", side_ids.len() as u32, tiles)?.with_labels(labels);
    let compiled = TileCompilation {
        tileset,
        decode: blocks.iter().map(|b| b.get(0, 0)).collect(),
        provenance: blocks.iter().map(|b| format!("block {b}")).collect(),
    };
    Ok(compiled.normalized())
}

/// West, east, south, north strips; the flag marks north/south strips.
fn strips(b: &LetterGrid, k: usize) -> [(bool, LetterGrid); 4] {
    [
        (false, b.sub_grid(0, 0, k - 1, k)),
        (false, b.sub_grid(1, 0, k - 1, k)),
        (true, b.sub_grid(0, 0, k, k - 1)),
        (true, b.sub_grid(0, 1, k, k - 1)),
    ]
}
