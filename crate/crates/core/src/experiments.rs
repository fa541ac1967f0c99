//! Random seeds and average automaton sizes over many samples.

use std::collections::HashSet;
use std::io::Write;
use std::ops::RangeInclusive;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ac::build_ac_multi;
use crate::alphabet::{Seed, SeedAlphabet};
use crate::automaton::{build_incremental, build_multi};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsConfig {
    /// Short name written to the `alphabet` CSV column.
    pub alphabet_name: String,
    pub alphabet: SeedAlphabet,
    pub weight: usize,
    pub span_min: usize,
    pub span_max: usize,
    /// Relative frequencies of the non-hash seed symbols, in alphabet order.
    pub joker_weights: Vec<u32>,
    pub samples: usize,
    pub seeds_per_sample: usize,
    pub rng_seed: u64,
}

impl StatsConfig {
    /// Binary seeds with spans `w ..= w+7`, or ternary seeds with spans
    /// `w ..= w+8` where `_` is twice as frequent as `@`.
    pub fn builtin(
        ternary: bool,
        weight: usize,
        samples: usize,
        seeds_per_sample: usize,
        rng_seed: u64,
    ) -> Self {
        let (alphabet_name, alphabet, extra, joker_weights) = if ternary {
            (
                "ternary".to_string(),
                SeedAlphabet::ternary(),
                8,
                vec![1, 2],
            )
        } else {
            ("binary".to_string(), SeedAlphabet::binary(), 7, vec![1])
        };
        StatsConfig {
            alphabet_name,
            alphabet,
            weight,
            span_min: weight,
            span_max: weight + extra,
            joker_weights,
            samples,
            seeds_per_sample,
            rng_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if self.weight == 0 {
            return bad("weight must be positive");
        }
        if self.span_min < self.weight {
            return bad("minimum span is below the weight");
        }
        if self.span_min > self.span_max {
            return bad("empty span range");
        }
        if self.span_max - self.weight > 64 {
            return bad("spans leave more than 64 joker positions");
        }
        if self.samples == 0 {
            return bad("sample count must be at least 1");
        }
        if self.seeds_per_sample == 0 {
            return bad("seeds per sample must be at least 1");
        }
        if self.seeds_per_sample > 64 {
            return bad("at most 64 seeds per sample");
        }
        let jokers = self.jokers().len();
        if jokers == 0 && self.span_max > self.weight {
            return bad("alphabet has no joker symbol for spans above the weight");
        }
        if jokers > 0 && self.joker_weights.len() != jokers {
            return bad("need one joker weight per non-hash seed symbol");
        }
        if jokers > 0 && self.joker_weights.iter().all(|&x| x == 0) {
            return bad("joker weights are all zero");
        }
        Ok(())
    }

    pub fn span_range(&self) -> RangeInclusive<usize> {
        self.span_min..=self.span_max
    }

    fn jokers(&self) -> Vec<char> {
        let hash = self.alphabet.hash_symbol();
        self.alphabet
            .entries()
            .iter()
            .map(|&(c, _)| c)
            .filter(|&c| c != hash)
            .collect()
    }
}

/// Draws one seed: uniform span, exactly `w` hash positions with the first
/// and last forced to `#` when `w ≥ 2`, other symbols drawn from the
/// non-hash seed letters by `joker_weights`. With `w = 1` the single `#`
/// goes first.
pub fn random_seed<R: Rng + ?Sized>(config: &StatsConfig, rng: &mut R) -> Result<Seed> {
    config.validate()?;
    let w = config.weight;
    let span = rng.gen_range(config.span_range());
    let hash = config.alphabet.hash_symbol();
    let jokers = config.jokers();

    let mut symbols = vec![hash; span];
    if span > w {
        let mut is_hash = vec![false; span];
        if w >= 2 {
            is_hash[0] = true;
            is_hash[span - 1] = true;
            for i in sample(rng, span - 2, w - 2) {
                is_hash[i + 1] = true;
            }
        } else {
            is_hash[0] = true;
        }
        let pick = WeightedIndex::new(&config.joker_weights)
            .map_err(|e| Error::Config(format!("joker weights: {e}")))?;
        for (sym, h) in symbols.iter_mut().zip(is_hash) {
            if !h {
                *sym = jokers[pick.sample(rng)];
            }
        }
    }
    let text: String = symbols.into_iter().collect();
    Seed::parse(&config.alphabet, &text)
}

/// `seeds_per_sample` independent seeds.
pub fn random_family<R: Rng + ?Sized>(config: &StatsConfig, rng: &mut R) -> Result<Vec<Seed>> {
    (0..config.seeds_per_sample)
        .map(|_| random_seed(config, rng))
        .collect()
}

/// Generator for sample `index`; independent of evaluation order.
pub fn sample_rng(rng_seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(index as u64);
    rng
}

/// State counts of one sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleCounts {
    pub ac: usize,
    pub spi: usize,
    pub min: usize,
}

/// Builds the three automata for a seed family and checks
/// `min ≤ spi ≤ ac` and, for a single seed, `spi ≤ (w+1)·2^r`.
pub fn sample_counts(seeds: &[Seed]) -> Result<SampleCounts> {
    let spi = match seeds {
        [seed] => build_incremental(seed),
        _ => build_multi(seeds)?,
    };
    let ac = build_ac_multi(seeds)?;
    let min = spi.minimize();
    let counts = SampleCounts {
        ac: ac.reachable_count(),
        spi: spi.reachable_count(),
        min: min.reachable_count(),
    };
    let family = || {
        seeds
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    if !(counts.min <= counts.spi && counts.spi <= counts.ac) {
        return Err(Error::Invariant(format!(
            "ordering min={} spi={} ac={} fails for {}",
            counts.min,
            counts.spi,
            counts.ac,
            family()
        )));
    }
    if let [seed] = seeds {
        if counts.spi as u128 > size_bound(seed) {
            return Err(Error::Invariant(format!(
                "{} states exceed the size bound for {}",
                counts.spi,
                family()
            )));
        }
    }
    Ok(counts)
}

/// `(w+1)·2^r`, tightened to `w·2^r + 1` for seeds starting with the hash
/// letter (the `+1` is the final state).
pub fn size_bound(seed: &Seed) -> u128 {
    let w = seed.weight() as u128;
    if seed.starts_with_hash() {
        (w << seed.r()) + 1
    } else {
        (w + 1) << seed.r()
    }
}

/// Reachable states of the product of the minimal single-seed automata,
/// with every pair containing a final state merged into one sink. An upper
/// bound on the minimal automaton of the family.
pub fn product_of_minimal(seeds: &[Seed]) -> Result<usize> {
    let first = seeds.first().ok_or(Error::NoSeeds)?;
    if seeds.iter().any(|s| !s.same_alphabet(first)) {
        return Err(Error::MixedAlphabets);
    }
    let parts: Vec<_> = seeds
        .iter()
        .map(|s| build_incremental(s).minimize())
        .collect();
    let start: Vec<_> = parts.iter().map(|d| d.initial()).collect();
    let mut seen = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    let mut sink = parts.iter().any(|d| d.is_final(d.initial()));
    while let Some(tuple) = stack.pop() {
        for a in 0..first.n_letters() {
            let next: Vec<_> = parts
                .iter()
                .zip(&tuple)
                .map(|(d, &q)| d.next(q, a))
                .collect();
            if parts.iter().zip(&next).any(|(d, &q)| d.is_final(q)) {
                sink = true;
            } else if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    Ok(seen.len() + usize::from(sink))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsRow {
    pub alphabet: String,
    pub w: usize,
    pub seeds_per_sample: usize,
    pub samples: usize,
    pub avg_ac: f64,
    pub ratio_ac: f64,
    pub avg_spi: f64,
    pub ratio_spi: f64,
    pub avg_min: f64,
}

/// Draws and evaluates every sample, in parallel, then averages in sample order.
pub fn run_stats(config: &StatsConfig) -> Result<StatsRow> {
    config.validate()?;
    let counts: Vec<SampleCounts> = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let seeds = random_family(config, &mut sample_rng(config.rng_seed, i))?;
            sample_counts(&seeds)
        })
        .collect::<Result<_>>()?;
    let n = counts.len() as f64;
    let avg = |f: fn(&SampleCounts) -> usize| counts.iter().map(f).sum::<usize>() as f64 / n;
    let avg_ac = avg(|c| c.ac);
    let avg_spi = avg(|c| c.spi);
    let avg_min = avg(|c| c.min);
    Ok(StatsRow {
        alphabet: config.alphabet_name.clone(),
        w: config.weight,
        seeds_per_sample: config.seeds_per_sample,
        samples: config.samples,
        avg_ac,
        ratio_ac: avg_ac / avg_min,
        avg_spi,
        ratio_spi: avg_spi / avg_min,
        avg_min,
    })
}

/// Writes the header and one line per row.
pub fn write_csv<W: Write>(out: W, rows: &[StatsRow]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Config(format!("csv: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(())
}
