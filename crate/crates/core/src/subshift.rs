//! One-dimensional subshifts: forbidden-word checking on finite strings, the
//! vertical lift to a two-dimensional SFT, and window checking for SFTs.

use aho_corasick::AhoCorasick;

use crate::error::{Error, Result};
use crate::pattern::{Letter, LetterGrid, SftSpec, Window};
use crate::text;

/// Per-query stream budget used when the caller has no preference.
pub const DEFAULT_WORD_BUDGET: usize = 10_000;

/// A pull-based enumerator of forbidden words. Single consumer.
pub trait WordStream {
    fn next_word(&mut self) -> Option<String>;
}

impl<I: Iterator<Item = String>> WordStream for I {
    fn next_word(&mut self) -> Option<String> {
        self.next()
    }
}

/// A registered word generator and its parameters, as written in a
/// subshift file (`stream <name> <params...>`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamSpec {
    pub generator: String,
    pub params: Vec<String>,
}

/// Names of the built-in generators.
pub const GENERATORS: &[&str] = &["all_words_min_len", "all_words_len_range"];

impl StreamSpec {
    pub fn new(generator: &str, params: &[&str]) -> Result<Self> {
        let spec = StreamSpec {
            generator: generator.to_string(),
            params: params.iter().map(|p| p.to_string()).collect(),
        };
        spec.lengths()?;
        Ok(spec)
    }

    fn lengths(&self) -> Result<(usize, Option<usize>)> {
        let num = |i: usize| -> Result<usize> {
            self.params
                .get(i)
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| Error::InvalidSpec(format!("generator `{}` needs integer parameter #{}", self.generator, i + 1)))
        };
        let (min, max, arity) = match self.generator.as_str() {
            "all_words_min_len" => (num(0)?, None, 1),
            "all_words_len_range" => (num(0)?, Some(num(1)?), 2),
            other => return Err(Error::InvalidSpec(format!("unknown generator `{other}`"))),
        };
        if self.params.len() != arity {
            return Err(Error::InvalidSpec(format!("generator `{}` takes {arity} parameter(s)", self.generator)));
        }
        if min == 0 {
            return Err(Error::InvalidSpec("forbidden words must be nonempty".into()));
        }
        Ok((min, max))
    }

    /// Opens a fresh stream over `alphabet`.
    pub fn open(&self, alphabet: &[Letter]) -> Result<Box<dyn WordStream>> {
        let (min, max) = self.lengths()?;
        Ok(Box::new(LengthLex::new(alphabet.to_vec(), min, max)))
    }
}

/// All words with length in `min..=max` (unbounded if `max` is `None`), by
/// length then lexicographically in alphabet order.
struct LengthLex {
    alphabet: Vec<Letter>,
    digits: Vec<usize>,
    max: Option<usize>,
}

impl LengthLex {
    fn new(alphabet: Vec<Letter>, min: usize, max: Option<usize>) -> Self {
        LengthLex {
            alphabet,
            digits: vec![0; min],
            max,
        }
    }
}

impl Iterator for LengthLex {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        if self.alphabet.is_empty() || self.max.is_some_and(|m| self.digits.len() > m) {
            return None;
        }
        let word = self.digits.iter().map(|&d| self.alphabet[d]).collect();
        // odometer increment; overflow grows the length
        let base = self.alphabet.len();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.digits = vec![0; self.digits.len() + 1];
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < base {
                break;
            }
            self.digits[i] = 0;
        }
        Some(word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSource {
    /// A finite list, kept sorted and duplicate-free.
    Explicit(Vec<String>),
    Stream(StreamSpec),
}

/// A one-dimensional subshift given by an alphabet and forbidden words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subshift1dSpec {
    alphabet: Vec<Letter>,
    source: WordSource,
}

impl Subshift1dSpec {
    pub fn explicit<S: AsRef<str>>(alphabet: Vec<Letter>, words: &[S]) -> Result<Self> {
        check_alphabet(&alphabet)?;
        let mut list = Vec::with_capacity(words.len());
        for w in words {
            let w = w.as_ref();
            if w.is_empty() {
                return Err(Error::InvalidSpec("forbidden words must be nonempty".into()));
            }
            if let Some(c) = w.chars().find(|c| !alphabet.contains(c)) {
                return Err(Error::InvalidSpec(format!("word `{w}` uses letter `{c}` outside the alphabet")));
            }
            list.push(w.to_string());
        }
        list.sort();
        list.dedup();
        Ok(Subshift1dSpec {
            alphabet,
            source: WordSource::Explicit(list),
        })
    }

    pub fn stream(alphabet: Vec<Letter>, stream: StreamSpec) -> Result<Self> {
        check_alphabet(&alphabet)?;
        stream.lengths()?;
        Ok(Subshift1dSpec {
            alphabet,
            source: WordSource::Stream(stream),
        })
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn source(&self) -> &WordSource {
        &self.source
    }

    /// Parses `subshift alphabet=<comma-list>` followed by either
    /// `forbid <word>` lines or a single `stream <generator> <params...>`.
    pub fn parse(input: &str) -> Result<Subshift1dSpec> {
        let lines = text::lines(input);
        let header = lines
            .first()
            .ok_or_else(|| Error::parse(1, 1, "empty input, expected `subshift alphabet=...`"))?;
        if header.keyword() != "subshift" {
            return Err(header.tokens[0].error("expected `subshift` header"));
        }
        header.expect_len(2, "subshift alphabet=<comma-list>")?;
        let alphabet = text::parse_alphabet(&header.tokens[1].key_value("alphabet")?)?;
        if alphabet.is_empty() {
            return Err(header.error("alphabet is empty"));
        }
        let mut words = Vec::new();
        let mut stream = None;
        for line in &lines[1..] {
            match line.keyword() {
                "forbid" => {
                    line.expect_len(2, "forbid <word>")?;
                    let tok = &line.tokens[1];
                    if let Some((i, c)) = tok.text.chars().enumerate().find(|(_, c)| !alphabet.contains(c)) {
                        return Err(Error::parse(line.number, tok.column + i, format!("letter `{c}` is not in the alphabet")));
                    }
                    words.push(tok.text.to_string());
                }
                "stream" => {
                    if stream.is_some() {
                        return Err(line.error("only one `stream` line is allowed"));
                    }
                    if line.tokens.len() < 2 {
                        return Err(line.error("usage: stream <generator> <params...>"));
                    }
                    let params: Vec<&str> = line.tokens[2..].iter().map(|t| t.text).collect();
                    let spec = StreamSpec::new(line.tokens[1].text, &params).map_err(|e| line.tokens[1].error(e.to_string()))?;
                    stream = Some((line.number, spec));
                }
                other => return Err(line.tokens[0].error(format!("unknown directive `{other}`"))),
            }
        }
        match stream {
            Some((number, _)) if !words.is_empty() => Err(Error::parse(number, 1, "cannot mix `forbid` and `stream` lines")),
            Some((_, s)) => Subshift1dSpec::stream(alphabet, s),
            None => Subshift1dSpec::explicit(alphabet, &words),
        }
    }

    pub fn to_text(&self) -> String {
        let letters: Vec<String> = self.alphabet.iter().map(|c| c.to_string()).collect();
        let mut out = format!("subshift alphabet={}\n", letters.join(","));
        match &self.source {
            WordSource::Explicit(words) => {
                for w in words {
                    out.push_str(&format!("forbid {w}\n"));
                }
            }
            WordSource::Stream(s) => {
                out.push_str(&format!("stream {}", s.generator));
                for p in &s.params {
                    out.push(' ');
                    out.push_str(p);
                }
                out.push('\n');
            }
        }
        out
    }
}

fn check_alphabet(alphabet: &[Letter]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::InvalidSpec("alphabet is empty".into()));
    }
    for (i, a) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(a) {
            return Err(Error::InvalidSpec(format!("letter `{a}` listed twice")));
        }
    }
    Ok(())
}

/// Multi-pattern matcher over a sorted, duplicate-free word list.
#[derive(Debug, Clone)]
pub struct MatchAutomaton {
    words: Vec<String>,
    automaton: AhoCorasick,
}

/// Builds the matcher. Words are deduplicated and sorted first so equal
/// inputs give identical automata.
pub fn build_matcher<S: AsRef<str>>(words: &[S]) -> Result<MatchAutomaton> {
    let mut list: Vec<String> = words.iter().map(|w| w.as_ref().to_string()).collect();
    if list.iter().any(String::is_empty) {
        return Err(Error::InvalidSpec("forbidden words must be nonempty".into()));
    }
    list.sort();
    list.dedup();
    let automaton = AhoCorasick::new(&list).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    Ok(MatchAutomaton { words: list, automaton })
}

impl MatchAutomaton {
    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Leftmost-starting occurrence as `(word index, letter position)`; ties
    /// go to the smaller word index.
    pub fn first_match(&self, s: &str) -> Option<(usize, usize)> {
        self.automaton
            .find_overlapping_iter(s)
            .map(|m| (m.start(), m.pattern().as_usize()))
            .min()
            .map(|(byte, word)| (word, s[..byte].chars().count()))
    }

    pub fn is_match(&self, s: &str) -> bool {
        self.automaton.is_match(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceVerdict {
    Clean,
    Violation { word: String, position: usize },
    /// No violation among the words drawn, but the stream was not exhausted.
    BudgetExhaustedClean,
}

/// Checks `s` against the first `budget` forbidden words of `spec`.
pub fn check_sequence(spec: &Subshift1dSpec, s: &str, budget: usize) -> Result<SequenceVerdict> {
    match &spec.source {
        WordSource::Explicit(words) => {
            let mut iter = words.iter().cloned();
            check_sequence_with(&spec.alphabet, &mut iter, s, budget)
        }
        WordSource::Stream(stream) => {
            let mut open = stream.open(&spec.alphabet)?;
            check_sequence_with(&spec.alphabet, open.as_mut(), s, budget)
        }
    }
}

/// Checks `s` against at most `budget` words pulled from `stream`.
pub fn check_sequence_with(alphabet: &[Letter], stream: &mut dyn WordStream, s: &str, budget: usize) -> Result<SequenceVerdict> {
    if let Some(c) = s.chars().find(|c| !alphabet.contains(c)) {
        return Err(Error::InvalidInput(format!("letter `{c}` is not in the alphabet")));
    }
    let len = s.chars().count();
    let mut drawn = Vec::new();
    let mut pulled = 0;
    let exhausted = loop {
        if pulled == budget {
            // one extra pull tells "exactly `budget` words" apart from "more";
            // the extra word is not checked
            break stream.next_word().is_none();
        }
        match stream.next_word() {
            Some(w) if w.is_empty() => return Err(Error::InvalidSpec("stream produced an empty word".into())),
            Some(w) => {
                pulled += 1;
                if w.chars().count() <= len {
                    drawn.push(w);
                }
            }
            None => break true,
        }
    };
    let matcher = build_matcher(&drawn)?;
    if let Some((word, position)) = matcher.first_match(s) {
        return Ok(SequenceVerdict::Violation {
            word: matcher.words[word].clone(),
            position,
        });
    }
    Ok(if exhausted {
        SequenceVerdict::Clean
    } else {
        SequenceVerdict::BudgetExhaustedClean
    })
}

/// The vertical lift of a finite-type 1D subshift: columns must be constant
/// and every row must avoid the forbidden words.
///
/// Pattern order: the vertical mismatches `upper over lower` (upper-major in
/// alphabet order), then each word as a horizontal strip in sorted order.
pub fn lift_1d(spec: &Subshift1dSpec) -> Result<SftSpec> {
    let words = match &spec.source {
        WordSource::Explicit(words) => words,
        WordSource::Stream(s) => {
            return Err(Error::Unsupported(format!(
                "cannot lift a stream-defined subshift (`{}`) to a finite-type specification",
                s.generator
            )))
        }
    };
    let mut forbidden = Vec::new();
    for &upper in &spec.alphabet {
        for &lower in &spec.alphabet {
            if upper != lower {
                forbidden.push(LetterGrid::vertical_pair(lower, upper));
            }
        }
    }
    for w in words {
        let letters: Vec<Letter> = w.chars().collect();
        forbidden.push(LetterGrid::horizontal(&letters)?);
    }
    SftSpec::new(spec.alphabet.clone(), forbidden)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowVerdict {
    Clean,
    Violation { pattern: usize, x: usize, y: usize },
}

/// Finds the occurrence of a forbidden pattern fully inside `window` that is
/// least by `(y, x, pattern index)`.
pub fn check_window(spec: &SftSpec, window: &Window) -> Result<WindowVerdict> {
    spec.check_letters(window)?;
    for y in 0..window.height() {
        for x in 0..window.width() {
            for (i, p) in spec.forbidden().iter().enumerate() {
                if window.occurs_at(p, x, y, false) {
                    return Ok(WindowVerdict::Violation { pattern: i, x, y });
                }
            }
        }
    }
    Ok(WindowVerdict::Clean)
}
