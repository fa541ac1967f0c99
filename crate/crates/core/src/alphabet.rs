//! Alignment alphabets, seed alphabets, seeds and alignment texts.
//!
//! Letters of an alignment alphabet are addressed by their index; subsets of
//! letters are stored as [`LetterSet`] bit sets, which is why alphabets are
//! capped at 32 letters.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_LETTERS: usize = 32;
/// Non-hash positions are tracked as bits of a `u64`.
pub const MAX_R: usize = 64;

/// A set of letter indices in `0..32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LetterSet(u32);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn from_bits(bits: u32) -> Self {
        LetterSet(bits)
    }

    pub fn singleton(letter: usize) -> Self {
        LetterSet(1 << letter)
    }

    /// All letters `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            LetterSet(u32::MAX)
        } else {
            LetterSet((1u32 << n) - 1)
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, letter: usize) -> bool {
        letter < 32 && self.0 >> letter & 1 == 1
    }

    pub fn insert(&mut self, letter: usize) {
        self.0 |= 1 << letter;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        LetterSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        LetterSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 >> i & 1 == 1)
    }
}

impl FromIterator<usize> for LetterSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = LetterSet::EMPTY;
        for i in iter {
            set.insert(i);
        }
        set
    }
}

/// Ordered alignment letters with a distinguished match letter `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlignmentAlphabet {
    letters: Vec<char>,
    match_index: usize,
}

impl AlignmentAlphabet {
    pub fn new(letters: Vec<char>, match_letter: char) -> Result<Self> {
        check_letters(&letters)?;
        let match_index = letters
            .iter()
            .position(|&c| c == match_letter)
            .ok_or(Error::MissingMatchLetter(match_letter))?;
        Ok(AlignmentAlphabet {
            letters,
            match_index,
        })
    }

    /// `{1, 0}`: match / mismatch.
    pub fn binary() -> Self {
        AlignmentAlphabet {
            letters: vec!['1', '0'],
            match_index: 0,
        }
    }

    /// `{1, h, 0}`: match / transition / transversion.
    pub fn ternary() -> Self {
        AlignmentAlphabet {
            letters: vec!['1', 'h', '0'],
            match_index: 0,
        }
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn match_index(&self) -> usize {
        self.match_index
    }

    pub fn match_letter(&self) -> char {
        self.letters[self.match_index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&l| l == c)
    }
}

fn check_letters(letters: &[char]) -> Result<()> {
    if letters.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    if letters.len() > MAX_LETTERS {
        return Err(Error::AlphabetTooLarge(letters.len()));
    }
    for (i, c) in letters.iter().enumerate() {
        if letters[..i].contains(c) {
            return Err(Error::DuplicateSymbol(*c));
        }
    }
    Ok(())
}

/// Seed letters, each denoting a subset of alignment letters that contains `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedAlphabet {
    align: AlignmentAlphabet,
    entries: Vec<(char, LetterSet)>,
    hash_symbol: char,
}

impl SeedAlphabet {
    pub fn new(
        align: AlignmentAlphabet,
        entries: Vec<(char, LetterSet)>,
        hash_symbol: char,
    ) -> Result<Self> {
        let hash = entries
            .iter()
            .find(|(s, _)| *s == hash_symbol)
            .ok_or(Error::MissingHash(hash_symbol))?;
        if hash.1 != LetterSet::singleton(align.match_index) {
            return Err(Error::HashNotMatchOnly(hash_symbol));
        }
        for (i, (sym, set)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(s, _)| s == sym) {
                return Err(Error::DuplicateSymbol(*sym));
            }
            if !set.contains(align.match_index) {
                return Err(Error::SubsetLacksMatch(*sym));
            }
            if !set.is_subset(LetterSet::full(align.len())) {
                return Err(Error::Config(format!(
                    "seed letter '{sym}' has out-of-range letters"
                )));
            }
        }
        Ok(SeedAlphabet {
            align,
            entries,
            hash_symbol,
        })
    }

    /// Spaced seeds: `# = {1}`, `_ = {1,0}`.
    pub fn binary() -> Self {
        let align = AlignmentAlphabet::binary();
        SeedAlphabet {
            align,
            entries: vec![
                ('#', LetterSet::from_bits(0b01)),
                ('_', LetterSet::from_bits(0b11)),
            ],
            hash_symbol: '#',
        }
    }

    /// Transition-aware seeds: `# = {1}`, `@ = {1,h}`, `_ = {1,h,0}`.
    pub fn ternary() -> Self {
        let align = AlignmentAlphabet::ternary();
        SeedAlphabet {
            align,
            entries: vec![
                ('#', LetterSet::from_bits(0b001)),
                ('@', LetterSet::from_bits(0b011)),
                ('_', LetterSet::from_bits(0b111)),
            ],
            hash_symbol: '#',
        }
    }

    pub fn alignment(&self) -> &AlignmentAlphabet {
        &self.align
    }

    pub fn entries(&self) -> &[(char, LetterSet)] {
        &self.entries
    }

    pub fn hash_symbol(&self) -> char {
        self.hash_symbol
    }

    pub fn subset(&self, symbol: char) -> Option<LetterSet> {
        self.entries
            .iter()
            .find(|(s, _)| *s == symbol)
            .map(|&(_, set)| set)
    }

    /// Whether seed letter `b` matches alignment letter `a`.
    pub fn letter_matches(&self, b: char, a: char) -> Result<bool> {
        let set = self.subset(b).ok_or(Error::UnknownSeedSymbol(b))?;
        let idx = self.align.index_of(a).ok_or(Error::UnknownLetter(a))?;
        Ok(set.contains(idx))
    }
}

pub fn seed_letter_matches(sa: &SeedAlphabet, b: char, a: char) -> Result<bool> {
    sa.letter_matches(b, a)
}

/// Parses the four-line alphabet description:
///
/// ```text
/// align: 1 h 0
/// match: 1
/// seed: #=1; @=1h; _=1h0
/// hash: #
/// ```
pub fn parse_alphabet_spec(text: &str) -> Result<(AlignmentAlphabet, SeedAlphabet)> {
    let mut align = None;
    let mut match_letter = None;
    let mut seed = None;
    let mut hash = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err("expected `key: value`"))?;
        let value = value.trim();
        let slot = match key.trim() {
            "align" => &mut align,
            "match" => &mut match_letter,
            "seed" => &mut seed,
            "hash" => &mut hash,
            other => return Err(err(&format!("unknown key `{other}`"))),
        };
        if slot.is_some() {
            return Err(err(&format!("duplicate key `{}`", key.trim())));
        }
        *slot = Some((lineno + 1, value.to_string()));
    }

    let missing = |k: &str| Error::Parse {
        line: 0,
        msg: format!("missing `{k}:` line"),
    };
    let (align_line, align) = align.ok_or_else(|| missing("align"))?;
    let (match_line, match_letter) = match_letter.ok_or_else(|| missing("match"))?;
    let (seed_line, seed) = seed.ok_or_else(|| missing("seed"))?;
    let (hash_line, hash) = hash.ok_or_else(|| missing("hash"))?;

    let letters = align
        .split_whitespace()
        .map(|tok| single_char(tok, align_line))
        .collect::<Result<Vec<_>>>()?;
    let match_letter = single_char(&match_letter, match_line)?;
    let align = AlignmentAlphabet::new(letters, match_letter)?;

    let mut entries = Vec::new();
    for entry in seed.split(';').map(str::trim).filter(|e| !e.is_empty()) {
        let (sym, set) = entry.split_once('=').ok_or_else(|| Error::Parse {
            line: seed_line,
            msg: format!("seed entry `{entry}` is not `symbol=letters`"),
        })?;
        let sym = single_char(sym.trim(), seed_line)?;
        let mut subset = LetterSet::EMPTY;
        for c in set.trim().chars() {
            subset.insert(align.index_of(c).ok_or(Error::UnknownLetter(c))?);
        }
        entries.push((sym, subset));
    }
    let hash = single_char(&hash, hash_line)?;
    let seed_alpha = SeedAlphabet::new(align.clone(), entries, hash)?;
    Ok((align, seed_alpha))
}

fn single_char(tok: &str, line: usize) -> Result<char> {
    let mut it = tok.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Parse {
            line,
            msg: format!("expected a single symbol, got `{tok}`"),
        }),
    }
}

/// Inverse of [`parse_alphabet_spec`].
pub fn alphabet_spec_string(sa: &SeedAlphabet) -> String {
    let align = sa.alignment();
    let letters: Vec<String> = align.letters().iter().map(|c| c.to_string()).collect();
    let entries: Vec<String> = sa
        .entries()
        .iter()
        .map(|(sym, set)| {
            let members: String = set.iter().map(|i| align.letters()[i]).collect();
            format!("{sym}={members}")
        })
        .collect();
    format!(
        "align: {}\nmatch: {}\nseed: {}\nhash: {}\n",
        letters.join(" "),
        align.match_letter(),
        entries.join("; "),
        sa.hash_symbol()
    )
}

/// A seed over a text alphabet, stored as one letter set per position.
///
/// `run` is the set of text letters matched by every position. For classic
/// subset seeds it is `{1}`; every run letter extends the trailing run counter
/// of the automaton instead of touching the prefix set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    symbols: Vec<char>,
    sets: Vec<LetterSet>,
    text_letters: Vec<char>,
    run: LetterSet,
    r_positions: Vec<usize>,
}

impl Seed {
    /// Parses a seed string such as `#@_#` over `sa`.
    pub fn parse(sa: &SeedAlphabet, text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut sets = Vec::new();
        for c in text.trim().chars() {
            sets.push(sa.subset(c).ok_or(Error::UnknownSeedSymbol(c))?);
            symbols.push(c);
        }
        let run = LetterSet::singleton(sa.alignment().match_index());
        Seed::from_sets(symbols, sets, sa.alignment().letters().to_vec(), run)
    }

    /// Builds a seed from per-position letter sets. `run` must be contained in
    /// every position's set.
    pub fn from_sets(
        symbols: Vec<char>,
        sets: Vec<LetterSet>,
        text_letters: Vec<char>,
        run: LetterSet,
    ) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptySeed);
        }
        check_letters(&text_letters)?;
        let all = LetterSet::full(text_letters.len());
        for (i, set) in sets.iter().enumerate() {
            if !run.is_subset(*set) {
                return Err(Error::Config(format!(
                    "position {} does not contain the run letters",
                    i + 1
                )));
            }
            if set.is_empty() {
                return Err(Error::VacuousPosition(i + 1));
            }
            if !set.is_subset(all) {
                return Err(Error::Config(format!(
                    "position {} has out-of-range letters",
                    i + 1
                )));
            }
        }
        let r_positions: Vec<usize> = (1..=sets.len())
            .filter(|&p| !sets[p - 1].is_subset(run))
            .collect();
        if r_positions.len() > MAX_R {
            return Err(Error::TooManyPositions(r_positions.len()));
        }
        Ok(Seed {
            symbols,
            sets,
            text_letters,
            run,
            r_positions,
        })
    }

    pub fn span(&self) -> usize {
        self.sets.len()
    }

    /// Number of positions matching run letters only (the `#`-weight).
    pub fn weight(&self) -> usize {
        self.span() - self.r()
    }

    pub fn r(&self) -> usize {
        self.r_positions.len()
    }

    /// Non-hash positions `z_1 < … < z_r`, 1-based.
    pub fn r_positions(&self) -> &[usize] {
        &self.r_positions
    }

    /// Letter set of 1-based position `pos`.
    pub fn set_at(&self, pos: usize) -> LetterSet {
        self.sets[pos - 1]
    }

    pub fn sets(&self) -> &[LetterSet] {
        &self.sets
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn text_letters(&self) -> &[char] {
        &self.text_letters
    }

    pub fn n_letters(&self) -> usize {
        self.text_letters.len()
    }

    pub fn run_letters(&self) -> LetterSet {
        self.run
    }

    pub fn is_run_letter(&self, letter: usize) -> bool {
        self.run.contains(letter)
    }

    pub fn starts_with_hash(&self) -> bool {
        self.r_positions.first() != Some(&1)
    }

    /// Whether `self` and `other` read the same texts with the same run letters.
    pub fn same_alphabet(&self, other: &Seed) -> bool {
        self.text_letters == other.text_letters && self.run == other.run
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A text over an alphabet, stored as letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AlignmentText {
    symbols: Vec<u8>,
}

impl AlignmentText {
    /// Parses one symbol per character. Surrounding whitespace is ignored.
    pub fn parse(letters: &[char], text: &str) -> Result<Self> {
        let symbols = text
            .trim()
            .chars()
            .enumerate()
            .map(|(i, ch)| {
                letters
                    .iter()
                    .position(|&l| l == ch)
                    .map(|idx| idx as u8)
                    .ok_or(Error::TextLetter { pos: i + 1, ch })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlignmentText { symbols })
    }

    pub fn from_indices(symbols: Vec<u8>) -> Self {
        AlignmentText { symbols }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn render(&self, letters: &[char]) -> String {
        self.symbols.iter().map(|&i| letters[i as usize]).collect()
    }
}

/// All 1-based start positions where `seed` matches `text`, by direct scan.
pub fn naive_match_positions(seed: &Seed, text: &AlignmentText) -> Vec<usize> {
    let s = seed.span();
    let a = text.symbols();
    if a.len() < s {
        return Vec::new();
    }
    (0..=a.len() - s)
        .filter(|&p| (0..s).all(|i| seed.sets[i].contains(a[p + i] as usize)))
        .map(|p| p + 1)
        .collect()
}
