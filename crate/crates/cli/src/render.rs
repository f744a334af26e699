//! PPM and SVG pictures of tilings. Each cell is split along its diagonals
//! into four triangles painted with the side colors.

use clap::ValueEnum;
use shiftforge::{Color, Direction, TileSet, Tiling};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ppm,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub cell_pixels: usize,
    pub format: Format,
}

/// Fixed color for a color id (splitmix64 of the id).
pub fn palette(c: Color) -> [u8; 3] {
    let mut z = (c.0 as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    [(z >> 16) as u8, (z >> 8) as u8, z as u8]
}

impl RenderSpec {
    pub fn new(cell_pixels: usize, format: Format) -> Result<Self, String> {
        if cell_pixels == 0 {
            return Err("cell size must be at least one pixel".into());
        }
        Ok(RenderSpec { cell_pixels, format })
    }

    pub fn render(&self, tileset: &TileSet, tiling: &Tiling) -> Vec<u8> {
        match self.format {
            Format::Ppm => self.ppm(tileset, tiling),
            Format::Svg => self.svg(tileset, tiling).into_bytes(),
        }
    }

    fn ppm(&self, tileset: &TileSet, tiling: &Tiling) -> Vec<u8> {
        let c = self.cell_pixels;
        let (w, h) = (tiling.width() * c, tiling.height() * c);
        let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
        out.reserve(w * h * 3);
        for py in 0..h {
            // image rows run top-down, tiling rows bottom-up
            let y = tiling.height() - 1 - py / c;
            for px in 0..w {
                let tile = &tileset.tiles()[tiling.get(px / c, y)];
                let side = triangle(px % c, py % c, c);
                out.extend_from_slice(&palette(tile.side(side)));
            }
        }
        out
    }

    fn svg(&self, tileset: &TileSet, tiling: &Tiling) -> String {
        let c = self.cell_pixels;
        let (w, h) = (tiling.width() * c, tiling.height() * c);
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" shape-rendering=\"crispEdges\">\n"
        );
        for row in 0..tiling.height() {
            let y = tiling.height() - 1 - row;
            for x in 0..tiling.width() {
                let tile = &tileset.tiles()[tiling.get(x, y)];
                let (x0, y0) = (x * c, row * c);
                let (x1, y1) = (x0 + c, y0 + c);
                let (mx, my) = (x0 as f64 + c as f64 / 2.0, y0 as f64 + c as f64 / 2.0);
                let corners = [
                    (Direction::North, (x0, y0), (x1, y0)),
                    (Direction::East, (x1, y0), (x1, y1)),
                    (Direction::South, (x1, y1), (x0, y1)),
                    (Direction::West, (x0, y1), (x0, y0)),
                ];
                for (dir, a, b) in corners {
                    let [r, g, bl] = palette(tile.side(dir));
                    out.push_str(&format!(
                        "<polygon points=\"{},{} {},{} {mx},{my}\" fill=\"#{r:02x}{g:02x}{bl:02x}\"/>\n",
                        a.0, a.1, b.0, b.1
                    ));
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Which side's triangle contains pixel `(u, v)` of a `c`-pixel cell, with
/// `v` counted from the top.
fn triangle(u: usize, v: usize, c: usize) -> Direction {
    // compare doubled pixel centers against the two diagonals
    let (u2, v2, c2) = (2 * u + 1, 2 * v + 1, 2 * c);
    let below_main = v2 > u2;
    let below_anti = u2 + v2 > c2;
    match (below_main, below_anti) {
        (false, false) => Direction::North,
        (false, true) => Direction::East,
        (true, true) => Direction::South,
        (true, false) => Direction::West,
    }
}
