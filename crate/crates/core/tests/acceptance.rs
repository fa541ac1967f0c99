//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any required check fails. Lines marked `known-red` report a
//! reference claim that does not hold; the check printed right after each of
//! them pins down the measured discrepancy and is required.
//!
//! `ACCEPTANCE_SAMPLES` sets the sample count of the size-ratio criterion
//! (default 500).

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use seedautomaton::experiments::sample_rng;
use seedautomaton::{
    build_ac, build_ac_multi, build_incremental, build_incremental_with_stats, build_multi,
    build_naive, first_hit, generalize_seed, generalize_seed_with, naive_match_positions,
    product_of_minimal, random_family, run_stats, surjection_map, surjection_map_multi,
    verify_state_invariant, AlignmentText, DegenerateAlphabet, MatchSemantics, RunLetters, Seed,
    SeedAlphabet, StatsConfig, ECOLI_TIS_MOTIF,
};

const OPS_PER_TRANSITION: u64 = 64;
const RATIO_TOLERANCE: f64 = 0.20;

#[derive(Default)]
struct Report {
    failed: Vec<String>,
}

impl Report {
    fn line(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        println!(
            "[{id:>3}] {:<4} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            self.failed.push(id.to_string());
        }
    }

    fn known_red(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{id:>3}] {tag:<4} {name} (known-red): {detail}");
    }
}

fn seed_symbol_matches(symbol: char, letter: char) -> bool {
    match symbol {
        '#' => letter == '1',
        '@' => letter == '1' || letter == 'h',
        '_' => true,
        _ => unreachable!("corpus uses # @ _ only"),
    }
}

/// Start positions (1-based) of `seed` in `text`, by direct comparison of
/// characters.
fn scan(seed: &str, text: &str) -> Vec<usize> {
    let s: Vec<char> = seed.chars().collect();
    let t: Vec<char> = text.chars().collect();
    if t.len() < s.len() {
        return Vec::new();
    }
    (0..=t.len() - s.len())
        .filter(|&p| {
            s.iter()
                .zip(&t[p..])
                .all(|(&b, &a)| seed_symbol_matches(b, a))
        })
        .map(|p| p + 1)
        .collect()
}

fn encode(seed: &Seed, text: &str) -> Vec<u8> {
    text.chars()
        .map(|c| seed.text_letters().iter().position(|&l| l == c).unwrap() as u8)
        .collect()
}

fn all_words(letters: &[char], max_len: usize) -> Vec<String> {
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

fn random_word(rng: &mut ChaCha8Rng, letters: &[char], len: usize) -> String {
    (0..len)
        .map(|_| letters[rng.gen_range(0..letters.len())])
        .collect()
}

struct Corpus {
    binary: Vec<Seed>,
    ternary: Vec<Seed>,
}

impl Corpus {
    fn new() -> Self {
        let bin = SeedAlphabet::binary();
        let binary = all_words(&['#', '_'], 6)
            .into_iter()
            .filter(|w| !w.is_empty())
            .map(|w| Seed::parse(&bin, &w).unwrap())
            .collect();
        let ter = SeedAlphabet::ternary();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let ternary = (0..500)
            .map(|_| {
                let span = rng.gen_range(1..=14);
                Seed::parse(&ter, &random_word(&mut rng, &['#', '@', '_'], span)).unwrap()
            })
            .collect();
        Corpus { binary, ternary }
    }

    fn all(&self) -> impl Iterator<Item = &Seed> {
        self.binary.iter().chain(&self.ternary)
    }
}

fn example_state_set(report: &mut Report) {
    let expected: BTreeSet<&str> = [
        "<{},0>",
        "<{},1>",
        "<{},2>",
        "<{},3>",
        "<{2},0>",
        "<{2},1>",
        "<{3},0>",
        "<{2,3},0>",
        "<>",
    ]
    .into_iter()
    .collect();
    let mut ok = true;
    let mut detail = Vec::new();
    for text in ["#@_#", "#_@#"] {
        let seed = Seed::parse(&SeedAlphabet::ternary(), text).unwrap();
        for dfa in [build_incremental(&seed), build_naive(&seed)] {
            let labels: BTreeSet<&str> = dfa.labels().unwrap().iter().map(String::as_str).collect();
            ok &= labels == expected && dfa.n_states() == 9;
        }
        detail.push(format!(
            "{text}: {} states",
            build_incremental(&seed).n_states()
        ));
    }
    report.line("1", "example state set", ok, detail.join(", "));
}

fn example_trace(report: &mut Report) {
    let seed = Seed::parse(&SeedAlphabet::ternary(), "#@#_##_###").unwrap();
    let dfa = build_incremental(&seed);
    let text = AlignmentText::parse(seed.text_letters(), "111h1011h11").unwrap();
    let label = dfa.label(dfa.run(text.symbols())).unwrap().to_string();
    let invariant = verify_state_invariant(&seed, &dfa, &text);
    report.line(
        "2",
        "example trace",
        label == "<{2,7},2>" && invariant,
        format!("111h1011h11 ends in {label}, prefix invariant {invariant}"),
    );
}

fn example_matching(report: &mut Report) {
    let seed = Seed::parse(&SeedAlphabet::ternary(), "#@_#").unwrap();
    let text = AlignmentText::parse(seed.text_letters(), "10h1h1101").unwrap();
    let oracle = scan("#@_#", "10h1h1101");
    let library = naive_match_positions(&seed, &text);
    let hit = first_hit(&build_incremental(&seed), &text);
    report.line(
        "3",
        "matching example",
        oracle == vec![4, 6] && library == oracle && hit == Some(7),
        format!("starts {oracle:?}, first hit ends at {hit:?}"),
    );
}

fn language_equivalence(report: &mut Report, corpus: &Corpus) {
    let texts = all_words(&['1', '0'], 10);
    let mut bad = Vec::new();
    for seed in &corpus.binary {
        let spi = build_incremental(seed);
        let ac = build_ac(seed);
        let pattern = seed.to_string();
        let same =
            spi.minimize().n_states() == ac.minimize().n_states() && spi.equivalent(&ac).unwrap();
        let decisions = texts
            .iter()
            .all(|t| spi.accepts(&encode(seed, t)) == !scan(&pattern, t).is_empty());
        if !(same && decisions) {
            bad.push(pattern);
        }
    }
    let bad_ternary: Vec<String> = corpus
        .ternary
        .par_iter()
        .enumerate()
        .filter_map(|(i, seed)| {
            let spi = build_incremental(seed);
            let ac = build_ac(seed);
            let pattern = seed.to_string();
            let same = spi.minimize().n_states() == ac.minimize().n_states()
                && spi.equivalent(&ac).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let decisions = (0..200).all(|_| {
                let len = rng.gen_range(0..=30);
                let t = random_word(&mut rng, &['1', 'h', '0'], len);
                spi.accepts(&encode(seed, &t)) == !scan(&pattern, &t).is_empty()
            });
            (!(same && decisions)).then_some(pattern)
        })
        .collect();
    bad.extend(bad_ternary);
    report.line(
        "4",
        "language equivalence with Aho-Corasick and scan",
        bad.is_empty(),
        format!(
            "{} binary + {} ternary seeds, {} mismatches {:?}",
            corpus.binary.len(),
            corpus.ternary.len(),
            bad.len(),
            &bad[..bad.len().min(5)]
        ),
    );
}

fn size_bound(report: &mut Report, corpus: &Corpus) {
    let mut general = 0;
    let mut literal = Vec::new();
    let mut off_by_more = 0;
    let mut checked = 0;
    for seed in corpus.all() {
        let n = build_incremental(seed).reachable_count() as u128;
        let (w, r) = (seed.weight() as u128, seed.r());
        if n > (w + 1) << r {
            general += 1;
        }
        if seed.starts_with_hash() {
            checked += 1;
            if n > w << r {
                literal.push(seed.to_string());
                if n != (w << r) + 1 {
                    off_by_more += 1;
                }
            }
        }
    }
    report.line(
        "5a",
        "size bound (w+1)·2^r",
        general == 0,
        format!("{general} violations"),
    );
    report.known_red(
        "5b",
        "size bound w·2^r for seeds starting with #",
        literal.is_empty(),
        format!(
            "{} of {checked} seeds exceed it, e.g. {:?}",
            literal.len(),
            &literal[..literal.len().min(4)]
        ),
    );
    report.line(
        "5c",
        "size bound w·2^r + 1 for seeds starting with # (final state counted)",
        off_by_more == 0,
        format!("{off_by_more} seeds exceed it; every 5b excess is exactly the final state"),
    );
}

fn reduced_family(report: &mut Report) {
    let mut detail = Vec::new();
    let mut ok = true;
    for r in 1..=10 {
        let text = format!("#{}#", "_".repeat(r));
        let seed = Seed::parse(&SeedAlphabet::binary(), &text).unwrap();
        let spi = build_incremental(&seed);
        let (n, m) = (spi.reachable_count(), spi.minimize().reachable_count());
        ok &= n == m;
        detail.push(format!("{n}/{m}"));
    }
    report.line(
        "6",
        "#_…_# automata are minimal (r = 1..10)",
        ok,
        detail.join(" "),
    );
}

fn surjection(report: &mut Report, corpus: &Corpus) {
    let mut bad = Vec::new();
    for seed in corpus.all() {
        let spi = build_incremental(seed);
        let ac = build_ac(seed);
        if surjection_map(&ac, &spi, seed).is_err() || spi.reachable_count() > ac.reachable_count()
        {
            bad.push(seed.to_string());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut pairs = Vec::new();
    for _ in 0..200 {
        let i = rng.gen_range(0..corpus.binary.len());
        let j = rng.gen_range(0..corpus.binary.len());
        pairs.push([corpus.binary[i].clone(), corpus.binary[j].clone()]);
    }
    let small: Vec<&Seed> = corpus.ternary.iter().filter(|s| s.span() <= 10).collect();
    for _ in 0..100 {
        let i = rng.gen_range(0..small.len());
        let j = rng.gen_range(0..small.len());
        pairs.push([small[i].clone(), small[j].clone()]);
    }
    let bad_pairs: Vec<String> = pairs
        .par_iter()
        .filter_map(|pair| {
            let spi = build_multi(pair).unwrap();
            let ac = build_ac_multi(pair).unwrap();
            let ok = surjection_map_multi(&ac, &spi, &[&pair[0], &pair[1]]).is_ok()
                && spi.reachable_count() <= ac.reachable_count();
            (!ok).then(|| format!("{},{}", pair[0], pair[1]))
        })
        .collect();
    let total = bad.len() + bad_pairs.len();
    report.line(
        "7",
        "Aho-Corasick maps onto the seed automaton",
        total == 0,
        format!(
            "{} single seeds, {} pairs, {total} failures {:?}",
            corpus.binary.len() + corpus.ternary.len(),
            pairs.len(),
            bad.iter().chain(&bad_pairs).take(4).collect::<Vec<_>>()
        ),
    );
}

fn incremental_fidelity(report: &mut Report, corpus: &Corpus) {
    let mismatches: Vec<String> = corpus
        .all()
        .filter(|seed| !build_incremental(seed).label_isomorphic(&build_naive(seed)))
        .map(ToString::to_string)
        .collect();
    let ter = SeedAlphabet::ternary();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = 0;
    let mut builds = 0;
    for span in 5..=30 {
        for _ in 0..12 {
            let r = rng.gen_range(0..=(span - 2).min(12));
            let mut symbols = vec!['#'; span];
            for i in rand::seq::index::sample(&mut rng, span - 2, r) {
                symbols[i + 1] = if rng.gen_bool(0.5) { '@' } else { '_' };
            }
            let seed = Seed::parse(&ter, &symbols.iter().collect::<String>()).unwrap();
            let (_, stats) = build_incremental_with_stats(&seed);
            worst = worst.max(stats.max_transition_ops);
            builds += 1;
        }
    }
    report.line(
        "8",
        "incremental build matches naive build in constant work per transition",
        mismatches.is_empty() && worst <= OPS_PER_TRANSITION,
        format!(
            "{} label mismatches; at most {worst} steps per transition over {builds} builds (bound {OPS_PER_TRANSITION})",
            mismatches.len()
        ),
    );
}

fn motif_counts(report: &mut Report) {
    let start = Instant::now();
    let alpha = DegenerateAlphabet::iupac_dna();
    let motif = alpha.parse_pattern(ECOLI_TIS_MOTIF).unwrap();
    let mut detail = Vec::new();
    let mut ok = true;
    for (sem, expected) in [
        (MatchSemantics::Exact, (138, 126)),
        (MatchSemantics::Inclusion, (139, 127)),
        (MatchSemantics::Intersection, (87617, 10482)),
    ] {
        let dfa = build_incremental(&generalize_seed(&motif, &alpha, sem).unwrap());
        let got = (dfa.reachable_count(), dfa.minimize().reachable_count());
        if got != expected {
            ok = false;
            eprintln!("motif count mismatch under {sem}: got {got:?}, expected {expected:?}");
        }
        detail.push(format!("{sem} {}/{}", got.0, got.1));
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs() < 60;
    report.line(
        "9",
        "motif automaton sizes",
        ok,
        format!("{} in {elapsed:.1?}", detail.join(", ")),
    );

    let universal = generalize_seed_with(
        &motif,
        &alpha,
        MatchSemantics::Intersection,
        RunLetters::Universal,
    )
    .unwrap();
    println!(
        "      info: with universal text letters as run letters, intersection gives {} states",
        build_incremental(&universal).reachable_count()
    );
}

struct Reference {
    ternary: bool,
    pairs: bool,
    ratio_ac: [f64; 5],
    ratio_spi: [f64; 5],
}

const REFERENCES: [Reference; 4] = [
    Reference {
        ternary: false,
        pairs: false,
        ratio_ac: [2.46, 2.51, 2.55, 2.57, 2.59],
        ratio_spi: [1.260, 1.255, 1.254, 1.248, 1.246],
    },
    Reference {
        ternary: true,
        pairs: false,
        ratio_ac: [16.46, 16.91, 17.18, 17.50, 17.67],
        ratio_spi: [1.293, 1.291, 1.291, 1.287, 1.284],
    },
    Reference {
        ternary: false,
        pairs: true,
        ratio_ac: [2.01, 2.07, 2.11, 2.15, 2.18],
        ratio_spi: [1.10, 1.10, 1.10, 1.10, 1.10],
    },
    Reference {
        ternary: true,
        pairs: true,
        ratio_ac: [12.09, 12.53, 12.86, 13.14, 13.39],
        ratio_spi: [1.15, 1.14, 1.14, 1.14, 1.14],
    },
];

fn within(measured: f64, expected: f64) -> bool {
    (measured - expected).abs() <= RATIO_TOLERANCE * expected
}

fn size_ratios(report: &mut Report) {
    let samples: usize = std::env::var("ACCEPTANCE_SAMPLES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(500);
    let mut single = (0, 0, Vec::new());
    let mut pair_min = (0, 0, Vec::new());
    let mut pair_product = (0, 0, Vec::new());
    let mut ordering_ok = true;
    for reference in &REFERENCES {
        for (i, w) in (9..=13).enumerate() {
            let spp = if reference.pairs { 2 } else { 1 };
            let config = StatsConfig::builtin(reference.ternary, w, samples, spp, 2024);
            let row = match run_stats(&config) {
                Ok(row) => row,
                Err(e) => {
                    ordering_ok = false;
                    eprintln!("stats run failed: {e}");
                    continue;
                }
            };
            let name = format!("{}{}w{w}", if reference.ternary { "t" } else { "b" }, spp);
            let (ac_ok, spi_ok) = (
                within(row.ratio_ac, reference.ratio_ac[i]),
                within(row.ratio_spi, reference.ratio_spi[i]),
            );
            let tally = if reference.pairs {
                &mut pair_min
            } else {
                &mut single
            };
            tally.0 += usize::from(ac_ok) + usize::from(spi_ok);
            tally.1 += 2;
            tally
                .2
                .push(format!("{name} {:.2}/{:.3}", row.ratio_ac, row.ratio_spi));
            if reference.pairs {
                let product: f64 = (0..samples)
                    .into_par_iter()
                    .map(|k| {
                        let seeds =
                            random_family(&config, &mut sample_rng(config.rng_seed, k)).unwrap();
                        product_of_minimal(&seeds).unwrap() as f64
                    })
                    .sum::<f64>()
                    / samples as f64;
                let (rac, rspi) = (row.avg_ac / product, row.avg_spi / product);
                pair_product.0 += usize::from(within(rac, reference.ratio_ac[i]))
                    + usize::from(within(rspi, reference.ratio_spi[i]));
                pair_product.1 += 2;
                pair_product.2.push(format!("{name} {rac:.2}/{rspi:.3}"));
            }
        }
    }
    report.line(
        "10o",
        "per-sample ordering min ≤ S ≤ AC and size bound",
        ordering_ok,
        format!("{samples} samples per row"),
    );
    report.line(
        "10a",
        "single-seed size ratios within ±20%",
        single.0 == single.1,
        format!(
            "{}/{} ratios in band [{}]",
            single.0,
            single.1,
            single.2.join(", ")
        ),
    );
    report.known_red(
        "10b",
        "seed-pair size ratios against the minimal automaton within ±20%",
        pair_min.0 == pair_min.1,
        format!(
            "{}/{} ratios in band [{}]",
            pair_min.0,
            pair_min.1,
            pair_min.2.join(", ")
        ),
    );
    report.line(
        "10c",
        "seed-pair size ratios against the product of minimal single-seed automata within ±20%",
        pair_product.0 == pair_product.1,
        format!(
            "{}/{} ratios in band [{}]",
            pair_product.0,
            pair_product.1,
            pair_product.2.join(", ")
        ),
    );
}

fn main() -> ExitCode {
    let mut report = Report::default();
    let corpus = Corpus::new();
    example_state_set(&mut report);
    example_trace(&mut report);
    example_matching(&mut report);
    language_equivalence(&mut report, &corpus);
    size_bound(&mut report, &corpus);
    reduced_family(&mut report);
    surjection(&mut report, &corpus);
    incremental_fidelity(&mut report, &corpus);
    motif_counts(&mut report);
    size_ratios(&mut report);
    if report.failed.is_empty() {
        println!("acceptance: all required checks passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {}", report.failed.join(", "));
        ExitCode::FAILURE
    }
}
