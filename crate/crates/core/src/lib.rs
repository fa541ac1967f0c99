//! Subset seed matching automata.
//!
//! A subset seed is a pattern whose letters denote sets of alignment letters,
//! each containing the match letter `1`. This crate builds the compact
//! automaton recognizing alignments hit by a seed, either by direct
//! breadth-first search or by an incremental construction that spends
//! constant time per transition, and compares it with the Aho-Corasick
//! automaton and with the minimal automaton. Multi-seed families and subset
//! matching over degenerate (IUPAC) texts are supported as well.

pub mod ac;
pub mod alphabet;
pub mod automaton;
pub mod degenerate;
pub mod dfa;
pub mod error;
pub mod experiments;

pub use ac::{
    build_ac, build_ac_multi, surjection_map, surjection_map_multi, MorphismError, SurjectionMap,
};
pub use alphabet::{
    naive_match_positions, parse_alphabet_spec, seed_letter_matches, AlignmentAlphabet,
    AlignmentText, LetterSet, Seed, SeedAlphabet,
};
pub use automaton::{
    brute_force_label, brute_force_state, build_incremental, build_incremental_with_stats,
    build_multi, build_naive, first_hit, psi_step, verify_multi_state_invariant,
    verify_state_invariant, BuildStats, PrecomputedTables, SpiState,
};
pub use degenerate::{
    generalize_seed, generalize_seed_with, naive_degenerate_match, DegenerateAlphabet,
    MatchSemantics, RunLetters, ECOLI_TIS_MOTIF,
};
pub use dfa::{Dfa, StateId};
pub use error::{Error, Result};
pub use experiments::{
    product_of_minimal, random_family, random_seed, run_stats, sample_counts, size_bound,
    write_csv, StatsConfig, StatsRow,
};
