//! The subset seed automaton.
//!
//! A live state is a pair `<X,t>`: `t` is the length of the trailing run of
//! run letters (the match letter `1` for classic seeds) and `X` is the set of
//! non-hash seed prefixes matching a suffix of the text read before that run.
//! `X` is kept as a bit set over prefix indices (bit `i-1` stands for `z_i`).
//! Every state with `max{X} + t = s` is merged into the absorbing final
//! state `<>`.

mod incremental;
mod multi;
mod naive;

pub use incremental::{
    build_incremental, build_incremental_with_stats, BuildStats, PrecomputedTables,
};
pub use multi::build_multi;
pub use naive::build_naive;

use crate::alphabet::{naive_match_positions, AlignmentText, Seed};
use crate::dfa::Dfa;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpiState {
    Live { x_set: u64, t: usize },
    Final,
}

impl SpiState {
    pub const INITIAL: SpiState = SpiState::Live { x_set: 0, t: 0 };

    pub fn is_final(self) -> bool {
        matches!(self, SpiState::Final)
    }

    /// `<{2,7},2>` with prefix positions, or `<>` for the final state.
    pub fn label(self, seed: &Seed) -> String {
        match self {
            SpiState::Final => "<>".to_string(),
            SpiState::Live { x_set, t } => format_label(&[seed], &[x_set], t),
        }
    }
}

/// Highest prefix position in `x_set`, with `max{∅} = 0`.
pub(crate) fn max_pos(seed: &Seed, x_set: u64) -> usize {
    if x_set == 0 {
        0
    } else {
        seed.r_positions()[63 - x_set.leading_zeros() as usize]
    }
}

pub(crate) fn format_label(seeds: &[&Seed], sets: &[u64], t: usize) -> String {
    let mut out = String::from("<");
    for (seed, &x) in seeds.iter().zip(sets) {
        let positions: Vec<String> = bits(x).map(|i| seed.r_positions()[i].to_string()).collect();
        out.push('{');
        out.push_str(&positions.join(","));
        out.push_str("},");
    }
    out.push_str(&t.to_string());
    out.push('>');
    out
}

pub(crate) fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

/// One transition of the automaton, straight from its definition.
pub(crate) fn step(seed: &Seed, x_set: u64, t: usize, a: usize) -> SpiState {
    let s = seed.span();
    let r = seed.r_positions();
    if seed.is_run_letter(a) {
        let t = t + 1;
        return if max_pos(seed, x_set) + t >= s {
            SpiState::Final
        } else {
            SpiState::Live { x_set, t }
        };
    }
    let mut y = 0u64;
    // X_U: prefixes of length <= t+1 matching run^t a
    for (i, &z) in r.iter().enumerate() {
        if z > t + 1 {
            break;
        }
        if seed.set_at(z).contains(a) {
            y |= 1 << i;
        }
    }
    // X_V: extend each prefix in X across the run and the new letter
    for i in bits(x_set) {
        let p = r[i] + t + 1;
        if p <= s && seed.set_at(p).contains(a) {
            let j = r
                .binary_search(&p)
                .expect("non-run letter only matches non-hash positions");
            y |= 1 << j;
        }
    }
    if max_pos(seed, y) >= s {
        SpiState::Final
    } else {
        SpiState::Live { x_set: y, t: 0 }
    }
}

/// Transition function `ψ(q, a)`.
pub fn psi_step(seed: &Seed, q: SpiState, a: usize) -> Result<SpiState> {
    if a >= seed.n_letters() {
        return Err(Error::LetterOutOfRange(a));
    }
    Ok(match q {
        SpiState::Final => SpiState::Final,
        SpiState::Live { x_set, t } => step(seed, x_set, t, a),
    })
}

/// Recomputes the state for `text` from scratch: final if any seed occurs
/// in it, otherwise the trailing run length and the matching prefix sets.
pub(crate) fn brute_force_sets(seeds: &[&Seed], text: &[u8]) -> Option<(Vec<u64>, usize)> {
    let owned = AlignmentText::from_indices(text.to_vec());
    if seeds
        .iter()
        .any(|s| !naive_match_positions(s, &owned).is_empty())
    {
        return None;
    }
    let run = seeds[0].run_letters();
    let t = text
        .iter()
        .rev()
        .take_while(|&&a| run.contains(a as usize))
        .count();
    let head = &text[..text.len() - t];
    let sets = seeds
        .iter()
        .map(|seed| {
            let mut x = 0u64;
            for (i, &z) in seed.r_positions().iter().enumerate() {
                if z <= head.len() {
                    let tail = &head[head.len() - z..];
                    if (0..z).all(|j| seed.set_at(j + 1).contains(tail[j] as usize)) {
                        x |= 1 << i;
                    }
                }
            }
            x
        })
        .collect();
    Some((sets, t))
}

/// Label of the state a correct automaton for `seeds` must be in after `text`.
pub fn brute_force_label(seeds: &[&Seed], text: &[u8]) -> String {
    match brute_force_sets(seeds, text) {
        None => "<>".to_string(),
        Some((sets, t)) => format_label(seeds, &sets, t),
    }
}

/// Brute-force state of a single seed after `text`.
pub fn brute_force_state(seed: &Seed, text: &[u8]) -> SpiState {
    match brute_force_sets(&[seed], text) {
        None => SpiState::Final,
        Some((sets, t)) => SpiState::Live { x_set: sets[0], t },
    }
}

/// Runs `dfa` (built for `seed`) over every prefix of `text` and checks each
/// reached state against [`brute_force_state`]. Stops at the first final
/// state.
pub fn verify_state_invariant(seed: &Seed, dfa: &Dfa, text: &AlignmentText) -> bool {
    verify_multi_state_invariant(&[seed], dfa, text)
}

pub fn verify_multi_state_invariant(seeds: &[&Seed], dfa: &Dfa, text: &AlignmentText) -> bool {
    let symbols = text.symbols();
    let mut q = dfa.initial();
    for p in 0..=symbols.len() {
        if p > 0 {
            q = dfa.next(q, symbols[p - 1] as usize);
        }
        let expected = brute_force_label(seeds, &symbols[..p]);
        if dfa.label(q) != Some(expected.as_str()) {
            return false;
        }
        if dfa.is_final(q) {
            return true;
        }
    }
    true
}

/// Smallest 1-based `p` such that the automaton is final after `a_1…a_p`.
pub fn first_hit(dfa: &Dfa, text: &AlignmentText) -> Option<usize> {
    let mut q = dfa.initial();
    if dfa.is_final(q) {
        return Some(0);
    }
    for (i, &a) in text.symbols().iter().enumerate() {
        q = dfa.next(q, a as usize);
        if dfa.is_final(q) {
            return Some(i + 1);
        }
    }
    None
}
