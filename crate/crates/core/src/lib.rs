//! Symbolic dynamics on the line and the plane: subshift specifications,
//! compilers to Wang tile sets, exact tiling solvers, the Robinson aperiodic
//! set, and macro-tile analysis.

pub mod aperiodic;
pub mod compile;
pub mod error;
pub mod macrotile;
pub mod pattern;
pub mod solve;
pub mod subshift;
mod text;
pub mod tiles;

pub use error::{Error, Result};
pub use pattern::{Letter, LetterGrid, Pattern, SftSpec, Window};
pub use tiles::{
    normalize_tileset, normalize_with_maps, validate_tiling, validate_torus, Color, Direction, Tile, TileSet, Tiling,
    TorusTiling,
};
