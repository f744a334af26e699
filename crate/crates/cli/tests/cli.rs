use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: Vec<u8>,
    stderr: String,
}

impl Run {
    fn text(&self) -> String {
        String::from_utf8(self.stdout.clone()).unwrap()
    }
}

fn shiftforge(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_shiftforge")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const F11: &str = "subshift alphabet=0,1\nforbid 11\n";

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(shiftforge(&["no-such-command"]).code, 2);
    let bad = write(&dir, "bad.sft", "sft alphabet=0,1\nforbid 2 1\n0x\n");
    let r = shiftforge(&["compile", s(&bad), "--kind", "sft"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stderr.contains("bad.sft"));
    let missing = dir.path().join("missing");
    assert_eq!(shiftforge(&["solve", s(&missing), "--mode", "rect", "2", "2"]).code, 2);
    let tm = write(&dir, "m.tm", "tm states=1 start=0 blank=_\nhalt 0\n");
    assert_eq!(shiftforge(&["compile", s(&tm), "--kind", "tm"]).code, 2);
    let ts = write(&dir, "one.tiles", "tileset one colors=1\ntile 0 0 0 0\n");
    assert_eq!(shiftforge(&["solve", s(&ts), "--mode", "rect", "0", "2"]).code, 2);
}

#[test]
fn unsupported_exits_3() {
    let dir = TempDir::new().unwrap();
    let stream = write(&dir, "s.sub", "subshift alphabet=0,1\nstream all_words_min_len 5\n");
    let r = shiftforge(&["compile", s(&stream), "--kind", "subshift1d"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
}

#[test]
fn bad_tilings_exit_4() {
    let dir = TempDir::new().unwrap();
    let ts = write(&dir, "m.tiles", "tileset m colors=3\ntile 0 1 0 2\n");
    let tiling = write(&dir, "t.txt", "0 0\n");
    assert_eq!(shiftforge(&["render", s(&ts), s(&tiling)]).code, 4);
    let out_of_range = write(&dir, "u.txt", "5\n");
    assert_eq!(shiftforge(&["render", s(&ts), s(&out_of_range)]).code, 4);
}

#[test]
fn render_writes_ppm_and_svg() {
    let dir = TempDir::new().unwrap();
    let ts = write(&dir, "one.tiles", "tileset one colors=1\ntile 0 0 0 0\n");
    let tiling = write(&dir, "t.txt", "0\n");
    let r = shiftforge(&["render", s(&ts), s(&tiling)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with(b"P6\n8 8\n255\n"));
    assert_eq!(r.stdout.len(), b"P6\n8 8\n255\n".len() + 8 * 8 * 3);
    let svg = shiftforge(&["render", s(&ts), s(&tiling), "--format", "svg"]).text();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
}

#[test]
fn compile_solve_verify_pipeline() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "f11.sub", F11);
    let tiles = dir.path().join("f11.tiles");
    let r = shiftforge(&["compile", s(&spec), "--kind", "subshift1d", "--out", s(&tiles)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.text().starts_with("tileset "));
    let witness = dir.path().join("w.txt");
    let r = shiftforge(&["solve", s(&tiles), "--mode", "torus", "4", "4", "--out", s(&witness)]);
    assert_eq!(r.text(), "SAT\n");
    let r = shiftforge(&["verify", s(&spec), s(&witness), "--tileset", s(&tiles), "--torus"]);
    assert_eq!((r.code, r.text()), (0, "CLEAN\n".to_string()), "{}", r.stderr);
}

#[test]
fn verify_windows() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "f11.sub", F11);
    let clean = write(&dir, "c.txt", "window 3 2\n010\n010\n");
    assert_eq!(shiftforge(&["verify", s(&spec), s(&clean)]).text(), "CLEAN\n");
    let dirty = write(&dir, "d.txt", "window 4 2\n0110\n0110\n");
    assert!(shiftforge(&["verify", s(&spec), s(&dirty)]).text().starts_with("VIOLATION"));
    // wrapping a row of 1 0 1 puts two 1s next to each other
    let wraps = write(&dir, "t.txt", "window 3 2\n101\n101\n");
    assert_eq!(shiftforge(&["verify", s(&spec), s(&wraps)]).text(), "CLEAN\n");
    assert!(shiftforge(&["verify", s(&spec), s(&wraps), "--torus"]).text().starts_with("VIOLATION"));
    let stream = write(&dir, "s.sub", "subshift alphabet=0,1\nstream all_words_min_len 5\n");
    let short = write(&dir, "short.txt", "window 4 1\n0101\n");
    assert_eq!(shiftforge(&["verify", s(&stream), s(&short), "--word-budget", "100"]).text(), "BUDGET_EXHAUSTED_CLEAN\n");
    let letter = write(&dir, "x.txt", "window 2 1\n0x\n");
    assert_eq!(shiftforge(&["verify", s(&spec), s(&letter)]).code, 2);
}

#[test]
fn domino_and_evidence_reports() {
    let dir = TempDir::new().unwrap();
    let mismatch = write(&dir, "m.tiles", "tileset m colors=3\ntile 0 1 0 2\n");
    let r = shiftforge(&["solve", s(&mismatch), "--mode", "domino", "5"]);
    assert!(r.text().contains("NO_TILING"), "{}", r.text());
    let r = shiftforge(&["evidence", "--max-square", "8", "--max-period", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.text().starts_with("CONSISTENT\n"));
    let one = write(&dir, "one.tiles", "tileset one colors=1\ntile 0 0 0 0\n");
    let r = shiftforge(&["evidence", "--tileset", s(&one), "--max-square", "3", "--max-period", "2"]);
    assert!(r.text().starts_with("INCONSISTENT\n"));
}

#[test]
fn robinson_export_round_trips_through_macro() {
    let dir = TempDir::new().unwrap();
    let rob = dir.path().join("rob.tiles");
    assert_eq!(shiftforge(&["robinson", "export", "--out", s(&rob)]).code, 0);
    let text = fs::read_to_string(&rob).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("tile ")).count(), 56);
    let side = dir.path().join("side.txt");
    let r = shiftforge(&["macro", s(&rob), "2", "--sidecar", s(&side), "--isomorphic", s(&rob)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.text().starts_with("MACRO n=2 blocks=272"), "{}", r.text());
    assert!(fs::read_to_string(&side).unwrap().starts_with("macro robinson n=2 blocks=272"));
    let r = shiftforge(&["macro", s(&rob), "2", "--max-tiles", "5"]);
    assert_eq!(r.text(), "BUDGET_EXCEEDED found=5\n");
}

#[test]
fn runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "f11.sub", F11);
    let rob = dir.path().join("rob.tiles");
    shiftforge(&["robinson", "export", "--out", s(&rob)]);
    let tiling = dir.path().join("r.txt");
    shiftforge(&["solve", s(&rob), "--mode", "rect", "6", "6", "--out", s(&tiling)]);
    let runs: Vec<Vec<&str>> = vec![
        vec!["compile", s(&spec), "--kind", "subshift1d"],
        vec!["solve", s(&rob), "--mode", "rect", "6", "6"],
        vec!["render", s(&rob), s(&tiling)],
        vec!["render", s(&rob), s(&tiling), "--format", "svg"],
        vec!["evidence", "--max-square", "6", "--max-period", "3"],
    ];
    for args in runs {
        let a = shiftforge(&args);
        let b = shiftforge(&args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert!(a.stdout == b.stdout, "{args:?} differs between runs");
    }
}
