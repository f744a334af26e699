use proptest::prelude::*;
use shiftforge::aperiodic::robinson_tileset;
use shiftforge::solve::{
    count_rectangle, count_torus, domino_semidecide, solve_rectangle, solve_torus, BoundaryConstraint, CountResult,
    DominoVerdict, SearchBudget, SolveResult, SweepStep,
};
use shiftforge::{validate_tiling, validate_torus, Tile, TileSet, Tiling, TorusTiling};

fn set(tiles: &[(u32, u32, u32, u32)]) -> TileSet {
    TileSet::from_tiles("t", tiles.iter().map(|&(n, e, s, w)| Tile::new(n, e, s, w)).collect()).unwrap()
}

fn budget() -> SearchBudget {
    SearchBudget::nodes(10_000_000)
}

/// Every assignment in lexicographic order of cells (cell 0 most significant).
fn naive_all(tiles: &[Tile], w: usize, h: usize, torus: bool) -> Vec<Vec<usize>> {
    let n = w * h;
    let mut out = Vec::new();
    let mut cells = vec![0usize; n];
    loop {
        let ok = (0..h).all(|y| {
            (0..w).all(|x| {
                let t = tiles[cells[y * w + x]];
                let right = if x + 1 < w { Some((x + 1, y)) } else if torus { Some((0, y)) } else { None };
                let up = if y + 1 < h { Some((x, y + 1)) } else if torus { Some((x, 0)) } else { None };
                right.is_none_or(|(rx, ry)| t.east == tiles[cells[ry * w + rx]].west)
                    && up.is_none_or(|(ux, uy)| t.north == tiles[cells[uy * w + ux]].south)
            })
        });
        if ok {
            out.push(cells.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cells[i] += 1;
            if cells[i] < tiles.len() {
                break;
            }
            cells[i] = 0;
        }
    }
}

fn random_set(raw: Vec<(u32, u32, u32, u32)>) -> Option<TileSet> {
    let mut tiles = Vec::new();
    for (n, e, s, w) in raw {
        let t = Tile::new(n, e, s, w);
        if !tiles.contains(&t) {
            tiles.push(t);
        }
    }
    TileSet::from_tiles("r", tiles).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_naive_enumeration(
        raw in prop::collection::vec((0u32..3, 0u32..3, 0u32..3, 0u32..3), 1..=4),
        w in 1usize..=3,
        h in 1usize..=3,
    ) {
        let ts = random_set(raw).unwrap();
        for torus in [false, true] {
            let all = naive_all(ts.tiles(), w, h, torus);
            let (count, first) = if torus {
                let c = count_torus(&ts, w, h, &budget()).unwrap();
                let r = solve_torus(&ts, w, h, &budget()).unwrap();
                if let SolveResult::Sat(t) = &r {
                    prop_assert!(validate_torus(&ts, t).unwrap());
                }
                (c, r.sat().map(|t| t.cells().to_vec()))
            } else {
                let c = count_rectangle(&ts, w, h, &BoundaryConstraint::none(), &budget()).unwrap();
                let r = solve_rectangle(&ts, w, h, &BoundaryConstraint::none(), &budget()).unwrap();
                if let SolveResult::Sat(t) = &r {
                    prop_assert!(validate_tiling(&ts, t).unwrap());
                }
                (c, r.sat().map(|t| t.cells().to_vec()))
            };
            prop_assert_eq!(count, CountResult::Exact(all.len() as u64));
            prop_assert_eq!(first, all.first().cloned());
        }
    }

    #[test]
    fn unsat_squares_stay_unsat(raw in prop::collection::vec((0u32..3, 0u32..3, 0u32..3, 0u32..3), 1..=4)) {
        let ts = random_set(raw).unwrap();
        let mut prev_unsat = false;
        for n in 1..=4 {
            let r = solve_rectangle(&ts, n, n, &BoundaryConstraint::none(), &budget()).unwrap();
            if prev_unsat {
                prop_assert!(r.is_unsat());
            }
            prev_unsat = r.is_unsat();
        }
    }

    #[test]
    fn repeated_calls_agree(raw in prop::collection::vec((0u32..3, 0u32..3, 0u32..3, 0u32..3), 1..=4)) {
        let ts = random_set(raw).unwrap();
        prop_assert_eq!(domino_semidecide(&ts, 3, &budget()).unwrap(), domino_semidecide(&ts, 3, &budget()).unwrap());
        prop_assert_eq!(
            solve_rectangle(&ts, 3, 2, &BoundaryConstraint::none(), &budget()).unwrap(),
            solve_rectangle(&ts, 3, 2, &BoundaryConstraint::none(), &budget()).unwrap()
        );
    }
}

#[test]
fn trivial_instances() {
    let one = set(&[(0, 0, 0, 0)]);
    let r = solve_rectangle(&one, 5, 5, &BoundaryConstraint::none(), &budget()).unwrap();
    assert_eq!(r, SolveResult::Sat(Tiling::new(5, 5, vec![0; 25]).unwrap()));
    assert_eq!(count_rectangle(&one, 2, 2, &BoundaryConstraint::none(), &budget()).unwrap(), CountResult::Exact(1));
    assert_eq!(solve_torus(&one, 1, 1, &budget()).unwrap(), SolveResult::Sat(TorusTiling::new(1, 1, vec![0]).unwrap()));

    let mismatch = set(&[(0, 1, 0, 2)]);
    assert!(solve_rectangle(&mismatch, 2, 1, &BoundaryConstraint::none(), &budget()).unwrap().is_unsat());
    assert!(solve_torus(&mismatch, 1, 1, &budget()).unwrap().is_unsat());

    let uniform_pair = set(&[(0, 0, 0, 0), (1, 1, 1, 1)]);
    assert_eq!(count_rectangle(&uniform_pair, 2, 2, &BoundaryConstraint::none(), &budget()).unwrap(), CountResult::Exact(2));
}

#[test]
fn invalid_dimensions_are_errors() {
    let one = set(&[(0, 0, 0, 0)]);
    assert!(solve_rectangle(&one, 0, 3, &BoundaryConstraint::none(), &budget()).is_err());
    assert!(solve_torus(&one, 2, 0, &budget()).is_err());
}

#[test]
fn domino_traces() {
    let one = set(&[(0, 0, 0, 0)]);
    let r = domino_semidecide(&one, 3, &budget()).unwrap();
    assert!(matches!(r.verdict, DominoVerdict::TilesPeriodically { p: 1, q: 1, .. }));

    let mismatch = set(&[(0, 1, 0, 2)]);
    let r = domino_semidecide(&mismatch, 5, &budget()).unwrap();
    assert_eq!(r.verdict, DominoVerdict::NoTiling { n: 2 });
    let keywords: Vec<String> = r.steps.iter().map(|s| s.to_string()).collect();
    assert_eq!(keywords, ["square 1x1 SAT", "torus 1x1 UNSAT", "square 2x2 UNSAT"]);
    assert!(matches!(r.steps[0], SweepStep::Square { n: 1, .. }));
}

#[test]
fn robinson_instances() {
    let r = robinson_tileset();
    let t = solve_rectangle(&r.tileset, 8, 8, &BoundaryConstraint::none(), &budget()).unwrap().sat().unwrap();
    assert!(validate_tiling(&r.tileset, &t).unwrap());
    let d = domino_semidecide(&r.tileset, 6, &budget()).unwrap();
    assert_eq!(d.verdict, DominoVerdict::Undetermined { completed: 6, budget_hit: false });
}

#[test]
fn tiny_budget_is_unknown() {
    let r = robinson_tileset();
    let tiny = SearchBudget::nodes(1);
    assert_eq!(solve_rectangle(&r.tileset, 6, 6, &BoundaryConstraint::none(), &tiny).unwrap(), SolveResult::Unknown);
    let d = domino_semidecide(&r.tileset, 6, &tiny).unwrap();
    assert!(matches!(d.verdict, DominoVerdict::Undetermined { budget_hit: true, .. }));
}
