//! Turing machines and their space-time diagrams as Wang tiles.
//!
//! A tile sits between two rows of the diagram: its south color is a tape
//! cell before a step and its north color the same cell after. Horizontal
//! colors carry the head from one column to the next. The bottom row reads
//! special `init` colors so that the initial configuration can be forced from
//! the south boundary, and the outer columns read edge colors that no head
//! signal can cross.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::TileCompilation;
use crate::error::{Error, Result};
use crate::solve::BoundaryConstraint;
use crate::text::{lines, parse_alphabet};
use crate::tiles::{Color, Tile, TileSet, Tiling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    L,
    R,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::R => "R",
        })
    }
}

/// A deterministic machine. States are `0..num_states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmSpec {
    num_states: usize,
    start: usize,
    blank: char,
    symbols: Vec<char>,
    rules: BTreeMap<(usize, char), (usize, char, Move)>,
    halting: BTreeSet<usize>,
}

impl TmSpec {
    /// The tape alphabet is `blank`, `extra_symbols`, and every symbol named
    /// by a rule.
    pub fn new(
        num_states: usize,
        start: usize,
        blank: char,
        extra_symbols: &[char],
        rules: impl IntoIterator<Item = ((usize, char), (usize, char, Move))>,
        halting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::InvalidSpec("a machine needs at least one state".into()));
        }
        let check_state = |q: usize| {
            if q < num_states {
                Ok(q)
            } else {
                Err(Error::InvalidSpec(format!("state {q} out of range 0..{num_states}")))
            }
        };
        check_state(start)?;
        let halting = halting.into_iter().map(check_state).collect::<Result<BTreeSet<_>>>()?;
        let mut symbols: BTreeSet<char> = extra_symbols.iter().copied().collect();
        symbols.insert(blank);
        let mut table = BTreeMap::new();
        for ((q, a), (q2, b, m)) in rules {
            check_state(q)?;
            check_state(q2)?;
            if halting.contains(&q) {
                return Err(Error::InvalidSpec(format!("rule defined on halting state {q}")));
            }
            if table.insert((q, a), (q2, b, m)).is_some() {
                return Err(Error::InvalidSpec(format!("two rules for state {q} reading `{a}`")));
            }
            symbols.insert(a);
            symbols.insert(b);
        }
        Ok(TmSpec {
            num_states,
            start,
            blank,
            symbols: symbols.into_iter().collect(),
            rules: table,
            halting,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn blank(&self) -> char {
        self.blank
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn is_halting(&self, q: usize) -> bool {
        self.halting.contains(&q)
    }

    pub fn rule(&self, q: usize, a: char) -> Option<(usize, char, Move)> {
        self.rules.get(&(q, a)).copied()
    }

    /// Format: `tm states=<n> start=<s> blank=<b> [symbols=<list>]`, then
    /// `rule <q> <read> -> <q'> <write> <L|R>` and `halt <q>` lines.
    pub fn parse(input: &str) -> Result<TmSpec> {
        let lines = lines(input);
        let Some((header, body)) = lines.split_first() else {
            return Err(Error::parse(1, 1, "empty input, expected `tm states=<n> start=<s> blank=<b>`"));
        };
        if header.keyword() != "tm" {
            return Err(header.tokens[0].error("expected `tm` header"));
        }
        if header.tokens.len() != 4 && header.tokens.len() != 5 {
            return Err(header.error("usage: tm states=<n> start=<s> blank=<b> [symbols=<list>]"));
        }
        let num_states = header.tokens[1].key_value("states")?.parse_usize("state count")?;
        let start_tok = header.tokens[2].key_value("start")?;
        let start = start_tok.parse_usize("start state")?;
        let blank = header.tokens[3].key_value("blank")?.single_char("blank symbol")?;
        let extra = match header.tokens.get(4) {
            Some(t) => parse_alphabet(&t.key_value("symbols")?)?,
            None => Vec::new(),
        };
        if start >= num_states {
            return Err(start_tok.error(format!("start state {start} out of range 0..{num_states}")));
        }

        let mut rules = Vec::new();
        let mut halting = Vec::new();
        let mut seen = BTreeSet::new();
        for line in body {
            let state = |i: usize| -> Result<usize> {
                let q = line.tokens[i].parse_usize("state")?;
                if q >= num_states {
                    return Err(line.tokens[i].error(format!("state {q} out of range 0..{num_states}")));
                }
                Ok(q)
            };
            match line.keyword() {
                "rule" => {
                    const USAGE: &str = "rule <state> <read> -> <state'> <write> <L|R>";
                    line.expect_len(7, USAGE)?;
                    let q = state(1)?;
                    let a = line.tokens[2].single_char("read symbol")?;
                    if line.tokens[3].text != "->" {
                        return Err(line.tokens[3].error(format!("expected `->`; usage: {USAGE}")));
                    }
                    let q2 = state(4)?;
                    let b = line.tokens[5].single_char("write symbol")?;
                    let m = match line.tokens[6].text {
                        "L" => Move::L,
                        "R" => Move::R,
                        other => return Err(line.tokens[6].error(format!("expected L or R, found `{other}`"))),
                    };
                    if !seen.insert((q, a)) {
                        return Err(line.error(format!("duplicate rule for state {q} reading `{a}`")));
                    }
                    rules.push((line.number, (q, a), (q2, b, m)));
                }
                "halt" => {
                    line.expect_len(2, "halt <state>")?;
                    halting.push(state(1)?);
                }
                other => return Err(line.tokens[0].error(format!("unknown directive `{other}`"))),
            }
        }
        for (number, (q, _), _) in &rules {
            if halting.contains(q) {
                return Err(Error::parse(*number, 1, format!("rule defined on halting state {q}")));
            }
        }
        TmSpec::new(num_states, start, blank, &extra, rules.into_iter().map(|(_, k, v)| (k, v)), halting)
    }

    pub fn to_text(&self) -> String {
        let symbols: Vec<String> = self.symbols.iter().map(|c| c.to_string()).collect();
        let mut out = format!(
            "tm states={} start={} blank={} symbols={}\n",
            self.num_states,
            self.start,
            self.blank,
            symbols.join(",")
        );
        for (&(q, a), &(q2, b, m)) in &self.rules {
            out.push_str(&format!("rule {q} {a} -> {q2} {b} {m}\n"));
        }
        for q in &self.halting {
            out.push_str(&format!("halt {q}\n"));
        }
        out
    }

    /// The machine started in `start` at cell 0 of an `n`-cell tape holding
    /// `input` followed by blanks.
    pub fn initial(&self, input: &str, n: usize) -> Result<Configuration> {
        let input: Vec<char> = input.chars().collect();
        if n == 0 {
            return Err(Error::InvalidInput("tape width must be at least 1".into()));
        }
        if input.len() > n {
            return Err(Error::InvalidInput(format!("input of length {} exceeds tape width {n}", input.len())));
        }
        if let Some(c) = input.iter().find(|c| !self.symbols.contains(c)) {
            return Err(Error::InvalidInput(format!("input symbol `{c}` not in the tape alphabet")));
        }
        let mut tape = input;
        tape.resize(n, self.blank);
        Ok(Configuration {
            state: self.start,
            head: 0,
            tape,
        })
    }

    pub fn step(&self, c: &Configuration) -> StepOutcome {
        if self.is_halting(c.state) {
            return StepOutcome::Halted;
        }
        let Some((q, b, m)) = self.rule(c.state, c.tape[c.head]) else {
            return StepOutcome::Stuck;
        };
        let head = match m {
            Move::L => c.head.checked_sub(1),
            Move::R => Some(c.head + 1).filter(|&h| h < c.tape.len()),
        };
        let Some(head) = head else { return StepOutcome::OffTape };
        let mut tape = c.tape.clone();
        tape[c.head] = b;
        StepOutcome::Next(Configuration { state: q, head, tape })
    }

    /// Configurations at steps `0, 1, ...` up to `steps` or until the run
    /// stops, together with the reason it stopped early.
    pub fn run(&self, input: &str, n: usize, steps: usize) -> Result<(Vec<Configuration>, Option<StepOutcome>)> {
        let mut out = vec![self.initial(input, n)?];
        while out.len() <= steps {
            match self.step(out.last().expect("nonempty")) {
                StepOutcome::Next(c) => out.push(c),
                other => return Ok((out, Some(other))),
            }
        }
        Ok((out, None))
    }
}

/// A machine configuration on a bounded tape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub state: usize,
    pub head: usize,
    pub tape: Vec<char>,
}

impl Configuration {
    pub fn cells(&self) -> Vec<TmCell> {
        self.tape
            .iter()
            .enumerate()
            .map(|(i, &symbol)| TmCell {
                symbol,
                state: (i == self.head).then_some(self.state),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Next(Configuration),
    Halted,
    /// No rule for the current state and symbol.
    Stuck,
    /// The head would leave the tape.
    OffTape,
}

/// One decoded cell of a diagram row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TmCell {
    pub symbol: char,
    pub state: Option<usize>,
}

impl fmt::Display for TmCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.state {
            Some(q) => write!(f, "{}@{q}", self.symbol),
            None => write!(f, "{}", self.symbol),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Signal {
    None,
    LeftEdge,
    RightEdge,
    Head(usize, Move),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum SideColor {
    H(Signal),
    Cell(TmCell),
    Init(TmCell),
}

impl fmt::Display for SideColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideColor::H(Signal::None) => f.write_str("none"),
            SideColor::H(Signal::LeftEdge) => f.write_str("left-edge"),
            SideColor::H(Signal::RightEdge) => f.write_str("right-edge"),
            SideColor::H(Signal::Head(q, m)) => write!(f, "head {q} moving {m}"),
            SideColor::Cell(c) => write!(f, "cell {c}"),
            SideColor::Init(c) => write!(f, "init {c}"),
        }
    }
}

/// `tm_to_tileset` output: the tile set, its decoding into diagram cells,
/// and the colors needed to force boundaries.
#[derive(Debug, Clone)]
pub struct TmCompilation {
    pub compilation: TileCompilation<TmCell>,
    pub width: usize,
    colors: BTreeMap<SideColor, Color>,
    spec: TmSpec,
}

impl TmCompilation {
    pub fn tileset(&self) -> &TileSet {
        &self.compilation.tileset
    }

    /// Boundary for a `width × rows` rectangle: bottom row reads the initial
    /// configuration on `input`, side columns read edge colors.
    pub fn boundary(&self, input: &str, rows: usize) -> Result<BoundaryConstraint> {
        let init = self.spec.initial(input, self.width)?;
        let lookup = |c: SideColor| {
            self.colors
                .get(&c)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("color `{c}` does not occur in the tile set")))
        };
        let south = init.cells().into_iter().map(|c| lookup(SideColor::Init(c))).collect::<Result<_>>()?;
        Ok(BoundaryConstraint {
            south: Some(south),
            west: Some(vec![lookup(SideColor::H(Signal::LeftEdge))?; rows]),
            east: Some(vec![lookup(SideColor::H(Signal::RightEdge))?; rows]),
            ..BoundaryConstraint::none()
        })
    }

    /// Row `r` of the result is the configuration the diagram shows after
    /// `r` steps.
    pub fn decode_rows(&self, t: &Tiling) -> Vec<Vec<TmCell>> {
        (0..t.height())
            .map(|y| (0..t.width()).map(|x| self.compilation.decode[t.get(x, y)]).collect())
            .collect()
    }
}

/// Compiles `tm` into tiles for an `n`-cell tape.
pub fn tm_to_tileset(tm: &TmSpec, n: usize) -> Result<TmCompilation> {
    if n == 0 {
        return Err(Error::InvalidInput("tape width must be at least 1".into()));
    }
    let cell = |symbol, state| TmCell { symbol, state };
    // (north, east, south, west, role)
    let mut raw: Vec<(SideColor, Signal, SideColor, Signal, String)> = Vec::new();
    let none = Signal::None;
    for &a in &tm.symbols {
        for state in [None, Some(tm.start)] {
            let c = cell(a, state);
            raw.push((SideColor::Cell(c), none, SideColor::Init(c), none, format!("init {c}")));
        }
        raw.push((SideColor::Cell(cell(a, None)), none, SideColor::Cell(cell(a, None)), none, format!("idle {a}")));
        for q in 0..tm.num_states {
            // the head arrives in state q
            let north = SideColor::Cell(cell(a, Some(q)));
            let south = SideColor::Cell(cell(a, None));
            raw.push((north, none, south, Signal::Head(q, Move::R), format!("receive {a} state {q} from west")));
            raw.push((north, Signal::Head(q, Move::L), south, none, format!("receive {a} state {q} from east")));
        }
    }
    for (&(q, a), &(q2, b, m)) in &tm.rules {
        let south = SideColor::Cell(cell(a, Some(q)));
        let north = SideColor::Cell(cell(b, None));
        let (east, west) = match m {
            Move::R => (Signal::Head(q2, m), none),
            Move::L => (none, Signal::Head(q2, m)),
        };
        raw.push((north, east, south, west, format!("step {q} {a} -> {q2} {b} {m}")));
    }

    let mut tiles = Vec::new();
    for (north, east, south, west, role) in raw {
        let wests: &[Signal] = if west == none { &[Signal::None, Signal::LeftEdge] } else { &[west] };
        let easts: &[Signal] = if east == none { &[Signal::None, Signal::RightEdge] } else { &[east] };
        for &w in wests {
            for &e in easts {
                tiles.push((north, SideColor::H(e), south, SideColor::H(w), role.clone()));
            }
        }
    }

    let mut ids: BTreeMap<SideColor, u32> = BTreeMap::new();
    for (nn, e, s, w, _) in &tiles {
        for c in [nn, e, s, w] {
            ids.entry(*c).or_insert(0);
        }
    }
    for (i, id) in ids.values_mut().enumerate() {
        *id = i as u32;
    }
    let tile_list = tiles.iter().map(|(nn, e, s, w, _)| Tile::new(ids[nn], ids[e], ids[s], ids[w])).collect();
    let labels = ids.iter().map(|(c, &id)| (id, c.to_string())).collect();
    let tileset = TileSet::new("tm", ids.len() as u32, tile_list)?.with_labels(labels);
    let decode = tiles
        .iter()
        .map(|(nn, ..)| match nn {
            SideColor::Cell(c) => *c,
            _ => unreachable!("north sides are always cells"),
        })
        .collect();
    let provenance = tiles.into_iter().map(|t| t.4).collect();
    let compilation = TileCompilation { tileset, decode, provenance }.normalized();
    // normalization only renumbers used colors, in order, and every color here is used
    let colors = ids.into_iter().map(|(c, id)| (c, Color(id))).collect();
    Ok(TmCompilation {
        compilation,
        width: n,
        colors,
        spec: tm.clone(),
    })
}
