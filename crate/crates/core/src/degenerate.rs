//! Subset matching over degenerate texts.
//!
//! A pattern is a sequence of subsets of a base alphabet (IUPAC codes for
//! DNA). Text letters are base letters (exact semantics) or subsets of them
//! (inclusion or intersection semantics). The problem reduces to a [`Seed`]
//! over the text letters: position `x` accepts text letter `a` iff the
//! pattern subset matches `a`. There is no text letter playing the role of
//! the match letter `1`, so by default the run counter stays at 0 and every
//! position is tracked in the prefix set. [`RunLetters::Universal`] instead
//! lets the text letters matched by every position extend the run counter.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{AlignmentText, LetterSet, Seed};
use crate::error::{Error, Result};

/// Translation initiation site motif of *E. coli*.
pub const ECOLI_TIS_MOTIF: &str = "[GA][GA]GGGNNNNAN[CT]ATGNN[AT]NNNNN[CTG]";

const IUPAC: [(char, &str); 15] = [
    ('A', "A"),
    ('C', "C"),
    ('G', "G"),
    ('T', "T"),
    ('R', "AG"),
    ('Y', "CT"),
    ('S', "CG"),
    ('W', "AT"),
    ('K', "GT"),
    ('M', "AC"),
    ('B', "CGT"),
    ('D', "AGT"),
    ('H', "ACT"),
    ('V', "ACG"),
    ('N', "ACGT"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatchSemantics {
    /// Text letters are base letters; `b` matches `a` iff `a ∈ b`.
    Exact,
    /// `b` matches `a` iff `a ⊆ b`.
    Inclusion,
    /// `b` matches `a` iff `a ∩ b ≠ ∅`.
    Intersection,
}

impl MatchSemantics {
    pub fn matches(self, pattern: LetterSet, text: LetterSet) -> bool {
        match self {
            MatchSemantics::Exact | MatchSemantics::Inclusion => text.is_subset(pattern),
            MatchSemantics::Intersection => text.intersects(pattern),
        }
    }
}

impl FromStr for MatchSemantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(MatchSemantics::Exact),
            "inclusion" => Ok(MatchSemantics::Inclusion),
            "intersection" => Ok(MatchSemantics::Intersection),
            other => Err(Error::Config(format!("unknown semantics `{other}`"))),
        }
    }
}

impl fmt::Display for MatchSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchSemantics::Exact => "exact",
            MatchSemantics::Inclusion => "inclusion",
            MatchSemantics::Intersection => "intersection",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateAlphabet {
    base: Vec<char>,
    text_letters: Vec<(char, LetterSet)>,
    pattern_letters: Vec<(char, LetterSet)>,
}

impl DegenerateAlphabet {
    pub fn new(
        base: Vec<char>,
        text_letters: Vec<(char, LetterSet)>,
        pattern_letters: Vec<(char, LetterSet)>,
    ) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if base.len() > 32 {
            return Err(Error::AlphabetTooLarge(base.len()));
        }
        if text_letters.len() > 32 {
            return Err(Error::AlphabetTooLarge(text_letters.len()));
        }
        for (i, c) in base.iter().enumerate() {
            if base[..i].contains(c) {
                return Err(Error::DuplicateSymbol(*c));
            }
        }
        let full = LetterSet::full(base.len());
        for list in [&text_letters, &pattern_letters] {
            for (i, (name, set)) in list.iter().enumerate() {
                if list[..i].iter().any(|(n, _)| n == name) {
                    return Err(Error::DuplicateSymbol(*name));
                }
                if set.is_empty() || !set.is_subset(full) {
                    return Err(Error::Config(format!(
                        "letter '{name}' is not a nonempty subset"
                    )));
                }
            }
        }
        Ok(DegenerateAlphabet {
            base,
            text_letters,
            pattern_letters,
        })
    }

    /// DNA with all 15 nonempty subsets as text letters and IUPAC pattern codes.
    pub fn iupac_dna() -> Self {
        let base = vec!['A', 'C', 'G', 'T'];
        let iupac = iupac_sets(&base).expect("IUPAC table covers ACGT");
        DegenerateAlphabet {
            base,
            text_letters: iupac.clone(),
            pattern_letters: iupac,
        }
    }

    /// Parses
    ///
    /// ```text
    /// base: A C G T
    /// textsets: all-nonempty        (or `base`, or `name=letters; …`)
    /// patsets: iupac                (or `name=letters; …`)
    /// ```
    ///
    /// `textsets` defaults to `all-nonempty` and `patsets` to `iupac`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut base = None;
        let mut textsets = None;
        let mut patsets = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| err("expected `key: value`".into()))?;
            let slot = match key.trim() {
                "base" => &mut base,
                "textsets" => &mut textsets,
                "patsets" => &mut patsets,
                other => return Err(err(format!("unknown key `{other}`"))),
            };
            *slot = Some((lineno + 1, value.trim().to_string()));
        }
        let (base_line, base) = base.ok_or(Error::Parse {
            line: 0,
            msg: "missing `base:` line".into(),
        })?;
        let base: Vec<char> = base
            .split_whitespace()
            .map(|tok| {
                let mut it = tok.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(Error::Parse {
                        line: base_line,
                        msg: format!("bad letter `{tok}`"),
                    }),
                }
            })
            .collect::<Result<_>>()?;

        let named = |line: usize, value: &str, base: &[char]| -> Result<Vec<(char, LetterSet)>> {
            match value {
                "base" => Ok(base
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (c, LetterSet::singleton(i)))
                    .collect()),
                "all-nonempty" | "iupac" => iupac_sets(base).ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("`{value}` needs the base alphabet A C G T"),
                }),
                list => parse_named_sets(list, base, line),
            }
        };
        let text_letters = match textsets {
            Some((line, v)) => named(line, &v, &base)?,
            None => named(0, "all-nonempty", &base)?,
        };
        let pattern_letters = match patsets {
            Some((line, v)) => named(line, &v, &base)?,
            None => named(0, "iupac", &base)?,
        };
        DegenerateAlphabet::new(base, text_letters, pattern_letters)
    }

    pub fn base(&self) -> &[char] {
        &self.base
    }

    pub fn text_letters(&self) -> &[(char, LetterSet)] {
        &self.text_letters
    }

    pub fn pattern_letters(&self) -> &[(char, LetterSet)] {
        &self.pattern_letters
    }

    /// Text letters in effect under `sem`: base singletons for exact matching.
    pub fn text_alphabet(&self, sem: MatchSemantics) -> Vec<(char, LetterSet)> {
        match sem {
            MatchSemantics::Exact => self
                .base
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, LetterSet::singleton(i)))
                .collect(),
            _ => self.text_letters.clone(),
        }
    }

    fn base_index(&self, c: char) -> Option<usize> {
        self.base.iter().position(|&b| b == c)
    }

    fn pattern_letter(&self, c: char) -> Option<LetterSet> {
        self.pattern_letters
            .iter()
            .find(|(n, _)| *n == c)
            .map(|&(_, s)| s)
            .or_else(|| self.base_index(c).map(LetterSet::singleton))
    }

    /// Parses a pattern such as `[GA]GGNN[CT]`. Outside brackets each
    /// character is a pattern letter; inside, the named subsets are joined.
    pub fn parse_pattern(&self, pattern: &str) -> Result<Vec<LetterSet>> {
        let mut out = Vec::new();
        let mut chars = pattern.trim().chars();
        while let Some(c) = chars.next() {
            if c == '[' {
                let mut set = LetterSet::EMPTY;
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(m) => {
                            set = set.union(
                                self.pattern_letter(m)
                                    .ok_or(Error::UnknownPatternLetter(m))?,
                            )
                        }
                        None => return Err(Error::Config("unterminated `[` in pattern".into())),
                    }
                }
                if set.is_empty() {
                    return Err(Error::VacuousPosition(out.len() + 1));
                }
                out.push(set);
            } else {
                out.push(
                    self.pattern_letter(c)
                        .ok_or(Error::UnknownPatternLetter(c))?,
                );
            }
        }
        if out.is_empty() {
            return Err(Error::EmptySeed);
        }
        Ok(out)
    }

    /// Parses a text over the text letters in effect under `sem`.
    pub fn parse_text(&self, text: &str, sem: MatchSemantics) -> Result<AlignmentText> {
        let letters: Vec<char> = self.text_alphabet(sem).iter().map(|&(c, _)| c).collect();
        AlignmentText::parse(&letters, text)
    }

    /// Base-letter subsets of a parsed text, for the brute-force matcher.
    pub fn text_sets(&self, text: &AlignmentText, sem: MatchSemantics) -> Vec<LetterSet> {
        let alphabet = self.text_alphabet(sem);
        text.symbols()
            .iter()
            .map(|&i| alphabet[i as usize].1)
            .collect()
    }

    fn name_of(&self, set: LetterSet) -> char {
        self.pattern_letters
            .iter()
            .find(|&&(_, s)| s == set)
            .map_or('?', |&(c, _)| c)
    }
}

fn iupac_sets(base: &[char]) -> Option<Vec<(char, LetterSet)>> {
    let mut sorted = base.to_vec();
    sorted.sort_unstable();
    if sorted != ['A', 'C', 'G', 'T'] {
        return None;
    }
    Some(
        IUPAC
            .iter()
            .map(|&(name, members)| {
                let set = members
                    .chars()
                    .map(|m| base.iter().position(|&b| b == m).expect("checked above"))
                    .collect();
                (name, set)
            })
            .collect(),
    )
}

fn parse_named_sets(list: &str, base: &[char], line: usize) -> Result<Vec<(char, LetterSet)>> {
    list.split(';')
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .map(|entry| {
            let (name, members) = entry.split_once('=').ok_or_else(|| Error::Parse {
                line,
                msg: format!("entry `{entry}` is not `name=letters`"),
            })?;
            let mut it = name.trim().chars();
            let name = match (it.next(), it.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("bad name `{name}`"),
                    })
                }
            };
            let set = members
                .trim()
                .chars()
                .map(|m| {
                    base.iter()
                        .position(|&b| b == m)
                        .ok_or(Error::UnknownLetter(m))
                })
                .collect::<Result<LetterSet>>()?;
            Ok((name, set))
        })
        .collect()
}

/// Which text letters only extend the run counter of the reduced seed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum RunLetters {
    /// None: the automaton tracks every pattern prefix.
    #[default]
    Empty,
    /// The text letters matched by every pattern position.
    Universal,
}

/// Reduces a degenerate pattern to a seed over the text letters in effect
/// under `sem`, with no run letters.
pub fn generalize_seed(
    pattern: &[LetterSet],
    alpha: &DegenerateAlphabet,
    sem: MatchSemantics,
) -> Result<Seed> {
    generalize_seed_with(pattern, alpha, sem, RunLetters::Empty)
}

pub fn generalize_seed_with(
    pattern: &[LetterSet],
    alpha: &DegenerateAlphabet,
    sem: MatchSemantics,
    runs: RunLetters,
) -> Result<Seed> {
    if pattern.is_empty() {
        return Err(Error::EmptySeed);
    }
    let text = alpha.text_alphabet(sem);
    let mut sets = Vec::with_capacity(pattern.len());
    for (i, &b) in pattern.iter().enumerate() {
        if !b.is_subset(LetterSet::full(alpha.base.len())) {
            return Err(Error::Config(format!(
                "pattern position {} has unknown letters",
                i + 1
            )));
        }
        let set: LetterSet = text
            .iter()
            .enumerate()
            .filter(|(_, &(_, a))| sem.matches(b, a))
            .map(|(j, _)| j)
            .collect();
        if set.is_empty() {
            return Err(Error::VacuousPosition(i + 1));
        }
        sets.push(set);
    }
    let run = match runs {
        RunLetters::Empty => LetterSet::EMPTY,
        RunLetters::Universal => sets
            .iter()
            .fold(LetterSet::full(text.len()), |acc, &s| acc.intersection(s)),
    };
    let symbols = pattern.iter().map(|&b| alpha.name_of(b)).collect();
    Seed::from_sets(symbols, sets, text.iter().map(|&(c, _)| c).collect(), run)
}

/// All 1-based start positions where `pattern` matches `text` under `sem`,
/// by direct scan. Both are sequences of base-letter subsets.
pub fn naive_degenerate_match(
    pattern: &[LetterSet],
    text: &[LetterSet],
    sem: MatchSemantics,
) -> Vec<usize> {
    if pattern.is_empty() || text.len() < pattern.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&p| {
            pattern
                .iter()
                .zip(&text[p..])
                .all(|(&b, &a)| sem.matches(b, a))
        })
        .map(|p| p + 1)
        .collect()
}
