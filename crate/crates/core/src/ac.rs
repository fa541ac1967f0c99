//! Aho-Corasick baseline: the trie of every word matched by a seed prefix,
//! completed with longest-suffix transitions and a single merged sink.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::alphabet::Seed;
use crate::automaton::format_label;
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};

const SINK: StateId = 0;
const ROOT: StateId = 1;
const ROOT_LABEL: &str = "ε";

pub fn build_ac(seed: &Seed) -> Dfa {
    build_ac_multi(std::slice::from_ref(seed)).expect("a single seed is a valid family")
}

/// Trie over the union of the prefix-matched words of all seeds. A node is
/// sent to the sink when it completes a seed or when its failure target
/// already is the sink (a suffix completes a seed).
pub fn build_ac_multi(seeds: &[Seed]) -> Result<Dfa> {
    let first = seeds.first().ok_or(Error::NoSeeds)?;
    if seeds.iter().any(|s| !s.same_alphabet(first)) {
        return Err(Error::MixedAlphabets);
    }
    if seeds.len() > 64 {
        return Err(Error::Config("at most 64 seeds per family".into()));
    }
    let k = first.n_letters();
    let letters = first.text_letters();

    let mut words: Vec<Vec<u8>> = vec![Vec::new(), Vec::new()];
    let mut matchers: Vec<u64> = vec![0, low_bits(seeds.len())];
    let mut fail: Vec<StateId> = vec![SINK, ROOT];
    let mut table: Vec<StateId> = vec![SINK; 2 * k];
    let mut queue = VecDeque::from([ROOT]);

    while let Some(u) = queue.pop_front() {
        let ui = u as usize;
        let depth = words[ui].len();
        for a in 0..k {
            let mut child_matchers = 0u64;
            let mut completes = false;
            for (i, seed) in seeds.iter().enumerate() {
                if matchers[ui] >> i & 1 == 1
                    && depth < seed.span()
                    && seed.set_at(depth + 1).contains(a)
                {
                    child_matchers |= 1 << i;
                    completes |= depth + 1 == seed.span();
                }
            }
            let via_fail = if u == ROOT {
                ROOT
            } else {
                table[fail[ui] as usize * k + a]
            };
            let target = if child_matchers == 0 {
                via_fail
            } else if completes || via_fail == SINK {
                SINK
            } else {
                let id = words.len() as StateId;
                let mut word = words[ui].clone();
                word.push(a as u8);
                words.push(word);
                matchers.push(child_matchers);
                fail.push(via_fail);
                table.extend(std::iter::repeat_n(SINK, k));
                queue.push_back(id);
                id
            };
            table[ui * k + a] = target;
        }
    }

    let mut finals = vec![false; words.len()];
    finals[SINK as usize] = true;
    let labels = words
        .iter()
        .enumerate()
        .map(|(q, w)| match q as StateId {
            SINK => "<>".to_string(),
            ROOT => ROOT_LABEL.to_string(),
            _ => w.iter().map(|&a| letters[a as usize]).collect(),
        })
        .collect();
    Ok(Dfa::new(k, ROOT, finals, table, Some(labels))?.canonical())
}

/// Failure of the Aho-Corasick → subset seed automaton mapping check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("state `{0}` is not a word over the seed alphabet")]
    BadLabel(String),
    #[error("image `{image}` of `{word}` is not a state of the seed automaton")]
    MissingImage { word: String, image: String },
    #[error("initial state is not mapped to the initial state")]
    Initial,
    #[error("finality differs between `{word}` and its image")]
    Finality { word: String },
    #[error("transition from `{word}` on letter {letter} does not commute")]
    NotMorphism { word: String, letter: usize },
    #[error("{0} reachable seed automaton states have no preimage")]
    NotSurjective(usize),
    #[error("automata are not labelled")]
    Unlabelled,
}

/// The checked mapping: `image[q]` is the seed automaton state of AC state `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectionMap {
    pub image: Vec<StateId>,
}

/// Maps an AC word `A = A'·1^t` to `<X,t>` where `X` holds every non-hash
/// prefix of each seed matching a suffix of `A'`.
fn image_label(seeds: &[&Seed], word: &[u8]) -> String {
    let run = seeds[0].run_letters();
    let t = word
        .iter()
        .rev()
        .take_while(|&&a| run.contains(a as usize))
        .count();
    let head = &word[..word.len() - t];
    let sets: Vec<u64> = seeds
        .iter()
        .map(|seed| {
            seed.r_positions()
                .iter()
                .enumerate()
                .filter(|&(_, &z)| {
                    z <= head.len()
                        && head[head.len() - z..]
                            .iter()
                            .enumerate()
                            .all(|(j, &c)| seed.set_at(j + 1).contains(c as usize))
                })
                .fold(0u64, |x, (i, _)| x | 1 << i)
        })
        .collect();
    format_label(seeds, &sets, t)
}

pub fn surjection_map(ac: &Dfa, spi: &Dfa, seed: &Seed) -> Result<SurjectionMap, MorphismError> {
    surjection_map_multi(ac, spi, &[seed])
}

/// Computes the mapping from AC states onto seed automaton states and checks
/// that it is a surjective automaton morphism.
pub fn surjection_map_multi(
    ac: &Dfa,
    spi: &Dfa,
    seeds: &[&Seed],
) -> Result<SurjectionMap, MorphismError> {
    let (Some(ac_labels), Some(spi_labels)) = (ac.labels(), spi.labels()) else {
        return Err(MorphismError::Unlabelled);
    };
    let letters = seeds[0].text_letters();
    let spi_index: HashMap<&str, StateId> = spi_labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i as StateId))
        .collect();

    let mut image = Vec::with_capacity(ac.n_states());
    for label in ac_labels {
        let target = if ac.is_final(image.len() as StateId) {
            "<>".to_string()
        } else {
            let word = if label == ROOT_LABEL {
                Vec::new()
            } else {
                label
                    .chars()
                    .map(|c| letters.iter().position(|&l| l == c).map(|i| i as u8))
                    .collect::<Option<Vec<u8>>>()
                    .ok_or_else(|| MorphismError::BadLabel(label.clone()))?
            };
            image_label(seeds, &word)
        };
        let q = *spi_index
            .get(target.as_str())
            .ok_or_else(|| MorphismError::MissingImage {
                word: label.clone(),
                image: target,
            })?;
        image.push(q);
    }

    if image[ac.initial() as usize] != spi.initial() {
        return Err(MorphismError::Initial);
    }
    for q in 0..ac.n_states() {
        let fq = image[q];
        if ac.is_final(q as StateId) != spi.is_final(fq) {
            return Err(MorphismError::Finality {
                word: ac_labels[q].clone(),
            });
        }
        for a in 0..ac.n_letters() {
            if image[ac.next(q as StateId, a) as usize] != spi.next(fq, a) {
                return Err(MorphismError::NotMorphism {
                    word: ac_labels[q].clone(),
                    letter: a,
                });
            }
        }
    }

    let mut hit = vec![false; spi.n_states()];
    for &q in &image {
        hit[q as usize] = true;
    }
    // every spi state reachable from the initial state must be hit
    let spi_reach = spi.canonical();
    let missing = spi_reach
        .labels()
        .into_iter()
        .flatten()
        .filter(|l| spi_index.get(l.as_str()).is_none_or(|&q| !hit[q as usize]))
        .count();
    if missing > 0 {
        return Err(MorphismError::NotSurjective(missing));
    }
    Ok(SurjectionMap { image })
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
