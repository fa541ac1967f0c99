#![allow(dead_code)]

use proptest::prelude::*;
use seedautomaton::{Seed, SeedAlphabet};

pub fn symbol_matches(symbol: char, letter: char) -> bool {
    match symbol {
        '#' => letter == '1',
        '@' => letter == '1' || letter == 'h',
        '_' => true,
        other => panic!("unexpected seed symbol {other}"),
    }
}

/// 1-based start positions of `seed` in `text` by direct comparison.
pub fn scan(seed: &str, text: &str) -> Vec<usize> {
    let s: Vec<char> = seed.chars().collect();
    let t: Vec<char> = text.chars().collect();
    if t.len() < s.len() {
        return Vec::new();
    }
    (0..=t.len() - s.len())
        .filter(|&p| s.iter().zip(&t[p..]).all(|(&b, &a)| symbol_matches(b, a)))
        .map(|p| p + 1)
        .collect()
}

pub fn encode(letters: &[char], text: &str) -> Vec<u8> {
    text.chars()
        .map(|c| letters.iter().position(|&l| l == c).unwrap() as u8)
        .collect()
}

pub fn all_words(letters: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn ternary(text: &str) -> Seed {
    Seed::parse(&SeedAlphabet::ternary(), text).unwrap()
}

pub fn binary(text: &str) -> Seed {
    Seed::parse(&SeedAlphabet::binary(), text).unwrap()
}

pub fn ternary_seed(max_span: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('#'), Just('@'), Just('_')], 1..=max_span)
        .prop_map(|v| v.into_iter().collect())
}

pub fn binary_seed(max_span: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('#'), Just('_')], 1..=max_span)
        .prop_map(|v| v.into_iter().collect())
}

pub fn ternary_text(max_len: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('1'), Just('h'), Just('0')], 0..=max_len)
        .prop_map(|v| v.into_iter().collect())
}
