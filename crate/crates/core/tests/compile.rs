use std::collections::BTreeSet;
use std::ops::ControlFlow;

use proptest::prelude::*;
use shiftforge::compile::{parse_decode_comments, sft_to_wang, tm_to_tileset, Configuration, StepOutcome, TmSpec};
use shiftforge::solve::{count_rectangle, enumerate_rectangle, enumerate_torus, solve_rectangle, BoundaryConstraint, CountResult, SearchBudget};
use shiftforge::subshift::{lift_1d, Subshift1dSpec};
use shiftforge::{LetterGrid, SftSpec, TileSet};

fn budget() -> SearchBudget {
    SearchBudget::nodes(50_000_000)
}

/// All `w × h` letter grids, optionally read on a torus, with no forbidden
/// pattern anywhere.
fn legal_configs(spec: &SftSpec, w: usize, h: usize, torus: bool) -> BTreeSet<Vec<char>> {
    let a = spec.alphabet();
    let mut out = BTreeSet::new();
    let total = a.len().pow((w * h) as u32);
    for mut v in 0..total {
        let mut cells = Vec::with_capacity(w * h);
        for _ in 0..w * h {
            cells.push(a[v % a.len()]);
            v /= a.len();
        }
        let g = LetterGrid::new(w, h, cells).unwrap();
        let clean = (0..h).all(|y| {
            (0..w).all(|x| {
                spec.forbidden().iter().all(|p| {
                    let fits = torus || (x + p.width() <= w && y + p.height() <= h);
                    !fits || !g.occurs_at(p, x, y, torus)
                })
            })
        });
        if clean {
            out.insert(g.cells().to_vec());
        }
    }
    out
}

fn torus_images(spec: &SftSpec, p: usize, q: usize) -> (BTreeSet<Vec<char>>, usize) {
    let c = sft_to_wang(spec).unwrap();
    let mut images = BTreeSet::new();
    let mut count = 0;
    enumerate_torus(&c.tileset, p, q, &budget(), |t| {
        count += 1;
        images.insert(c.decode_cells(t.cells()));
        ControlFlow::Continue(())
    })
    .unwrap();
    (images, count)
}

fn lifted_11() -> SftSpec {
    lift_1d(&Subshift1dSpec::explicit(vec!['0', '1'], &["11"]).unwrap()).unwrap()
}

#[test]
fn lifted_11_torus_images_match_brute_force() {
    let spec = lifted_11();
    let c = sft_to_wang(&spec).unwrap();
    assert_eq!(c.tileset.len(), 3);
    for (p, q) in [(2, 2), (3, 2), (4, 4)] {
        let (images, count) = torus_images(&spec, p, q);
        let legal = legal_configs(&spec, p, q, true);
        assert_eq!(images, legal, "{p}x{q}");
        assert_eq!(count, legal.len());
    }
}

#[test]
fn constant_sft_only_has_constant_tilings() {
    let spec = SftSpec::parse("sft alphabet=0,1\nforbid 2 1\n01\nforbid 2 1\n10\nforbid 1 2\n0\n1\nforbid 1 2\n1\n0\n").unwrap();
    let c = sft_to_wang(&spec).unwrap();
    assert_eq!(c.tileset.len(), 2);
    let mut decoded = BTreeSet::new();
    enumerate_rectangle(&c.tileset, 3, 3, &BoundaryConstraint::none(), &budget(), |t| {
        decoded.insert(c.decode_tiling(t).unwrap().cells().to_vec());
        ControlFlow::Continue(())
    })
    .unwrap();
    assert_eq!(decoded, BTreeSet::from([vec!['0'; 9], vec!['1'; 9]]));
    // every mixed assignment of the two tiles breaks a match
    for mask in 1u32..(1 << 4) - 1 {
        let cells: Vec<usize> = (0..4).map(|i| (mask >> i & 1) as usize).collect();
        let t = shiftforge::Tiling::new(2, 2, cells).unwrap();
        assert!(!shiftforge::validate_tiling(&c.tileset, &t).unwrap());
    }
}

/// Windows of `(w + k - 1) × (h + k - 1)` letters whose `k × k` sub-windows
/// are all legal blocks: the objects a `w × h` tiling stands for.
fn block_windows(spec: &SftSpec, w: usize, h: usize) -> usize {
    let k = spec.window().max(2);
    let (ww, hh) = (w + k - 1, h + k - 1);
    let blocks = legal_configs(spec, k, k, false);
    let a = spec.alphabet();
    let mut count = 0;
    for mut v in 0..a.len().pow((ww * hh) as u32) {
        let mut cells = Vec::new();
        for _ in 0..ww * hh {
            cells.push(a[v % a.len()]);
            v /= a.len();
        }
        let g = LetterGrid::new(ww, hh, cells).unwrap();
        if (0..h).all(|y| (0..w).all(|x| blocks.contains(g.sub_grid(x, y, k, k).cells()))) {
            count += 1;
        }
    }
    count
}

#[test]
fn rectangle_counts_match_block_windows() {
    let spec = lifted_11();
    let c = sft_to_wang(&spec).unwrap();
    for (w, h) in [(1, 1), (2, 2), (3, 2), (2, 3)] {
        let n = count_rectangle(&c.tileset, w, h, &BoundaryConstraint::none(), &budget()).unwrap();
        assert_eq!(n, CountResult::Exact(block_windows(&spec, w, h) as u64), "{w}x{h}");
    }
    assert_eq!(count_rectangle(&c.tileset, 2, 2, &BoundaryConstraint::none(), &budget()).unwrap(), CountResult::Exact(5));
}

#[test]
fn decode_comments_round_trip() {
    let c = sft_to_wang(&lifted_11()).unwrap();
    let text = c.tileset.to_text_with_comments(&c.comment_lines());
    assert_eq!(TileSet::parse(&text).unwrap(), c.tileset);
    assert_eq!(parse_decode_comments(&text), Some(c.decode.clone()));
    assert_eq!(parse_decode_comments(&c.tileset.to_text()), None);
}

fn sft_strategy() -> impl Strategy<Value = SftSpec> {
    let letters = ['a', 'b', 'c'];
    (2usize..=3, prop::collection::vec((1usize..=2, 1usize..=2, prop::collection::vec(0usize..3, 4)), 0..=3)).prop_map(
        move |(n, pats)| {
            let alphabet = letters[..n].to_vec();
            let forbidden = pats
                .into_iter()
                .map(|(w, h, ls)| LetterGrid::new(w, h, (0..w * h).map(|i| alphabet[ls[i] % n]).collect()).unwrap())
                .collect();
            SftSpec::new(alphabet, forbidden).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decoded_tilings_have_legal_blocks(spec in sft_strategy()) {
        let c = sft_to_wang(&spec).unwrap();
        let k = spec.window().max(2);
        let mut seen = 0;
        enumerate_rectangle(&c.tileset, 3, 3, &BoundaryConstraint::none(), &SearchBudget::nodes(200_000), |t| {
            let w = c.decode_tiling(t).unwrap();
            for y in 0..=3 - k {
                for x in 0..=3 - k {
                    assert!(spec.is_legal(&w.sub_grid(x, y, k, k), false));
                }
            }
            seen += 1;
            if seen == 2000 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
        })
        .unwrap();
    }

    #[test]
    fn torus_images_are_exactly_the_legal_configurations(spec in sft_strategy(), p in 2usize..=3, q in 2usize..=3) {
        let legal = legal_configs(&spec, p, q, true);
        let (images, count) = torus_images(&spec, p, q);
        prop_assert_eq!(count, legal.len());
        prop_assert_eq!(images, legal);
    }
}

const HALT: &str = "tm states=1 start=0 blank=_ symbols=_,1\nhalt 0\n";
const INCREMENTER: &str = "tm states=2 start=0 blank=_\nrule 0 1 -> 0 1 R\nrule 0 _ -> 1 1 R\nrule 1 _ -> 1 _ R\n";
const BUSY: &str = "\
tm states=3 start=0 blank=0
rule 0 0 -> 1 1 R
rule 0 1 -> 2 0 R
rule 1 0 -> 2 1 R
rule 1 1 -> 0 1 R
rule 2 0 -> 1 1 L
rule 2 1 -> 0 1 R
";

/// Checks every height `1..=max_rows + 1`: heights the run reaches have a
/// unique tiling decoding to the simulation, taller ones have none.
fn check_diagram(tm_text: &str, input: &str, n: usize, max_steps: usize) -> usize {
    let tm = TmSpec::parse(tm_text).unwrap();
    let compiled = tm_to_tileset(&tm, n).unwrap();
    let (configs, _) = tm.run(input, n, max_steps).unwrap();
    for r in 0..=max_steps {
        let rows = r + 1;
        let boundary = compiled.boundary(input, rows).unwrap();
        let result = solve_rectangle(compiled.tileset(), n, rows, &boundary, &budget()).unwrap();
        if r < configs.len() {
            let t = result.sat().unwrap_or_else(|| panic!("no diagram with {rows} rows"));
            let expected: Vec<_> = configs[..rows].iter().map(Configuration::cells).collect();
            assert_eq!(compiled.decode_rows(&t), expected, "rows={rows}");
            let count = count_rectangle(compiled.tileset(), n, rows, &boundary, &budget()).unwrap();
            assert_eq!(count, CountResult::Exact(1));
        } else {
            assert!(result.is_unsat(), "rows={rows} should be untileable");
        }
    }
    configs.len()
}

#[test]
fn halting_machine_stops_the_diagram() {
    let tm = TmSpec::parse(HALT).unwrap();
    assert_eq!(tm.step(&tm.initial("1", 3).unwrap()), StepOutcome::Halted);
    assert_eq!(check_diagram(HALT, "1", 3, 4), 1);
}

#[test]
fn incrementer_diagram() {
    assert_eq!(check_diagram(INCREMENTER, "1", 4, 5), 4);
    assert_eq!(check_diagram(INCREMENTER, "11", 12, 14), 12);
}

#[test]
fn busy_machine_diagram() {
    let tm = TmSpec::parse(BUSY).unwrap();
    let (configs, stop) = tm.run("", 12, 20).unwrap();
    assert_eq!(stop, None);
    assert_eq!(configs.len(), 21);
    assert_eq!(check_diagram(BUSY, "", 12, 20), 21);
}

#[test]
fn undefined_transition_blocks_the_next_row() {
    let tm_text = "tm states=2 start=0 blank=_ symbols=_,1\nrule 0 _ -> 1 1 R\n";
    assert_eq!(check_diagram(tm_text, "", 3, 3), 2);
}

#[test]
fn oversized_input_is_rejected() {
    let tm = TmSpec::parse(INCREMENTER).unwrap();
    let compiled = tm_to_tileset(&tm, 2).unwrap();
    assert!(compiled.boundary("111", 1).is_err());
    assert!(compiled.boundary("1x", 1).is_err());
}
