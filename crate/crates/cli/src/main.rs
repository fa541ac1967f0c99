use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seedautomaton::{
    build_ac_multi, build_incremental, build_multi, build_naive, first_hit, generalize_seed_with,
    naive_degenerate_match, naive_match_positions, parse_alphabet_spec, run_stats,
    surjection_map_multi, write_csv, AlignmentText, DegenerateAlphabet, Dfa, Error, MatchSemantics,
    RunLetters, Seed, SeedAlphabet, StatsConfig,
};

#[derive(Parser)]
#[command(
    name = "seedautomaton",
    version,
    about = "Subset seed automata: build, compare, match"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the seed automaton and write it as DOT or text.
    Build(BuildArgs),
    /// Minimize a serialized automaton.
    Minimize(MinimizeArgs),
    /// Print Aho-Corasick, seed automaton and minimal automaton sizes.
    Compare(CompareArgs),
    /// Report seed occurrences in a text file.
    Match(MatchArgs),
    /// Build the automaton of a degenerate motif.
    Motif(MotifArgs),
    /// Average automaton sizes over random seeds, as CSV.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BuiltinAlphabet {
    Binary,
    Ternary,
}

#[derive(Args)]
struct AlphabetArgs {
    /// Alphabet spec file (`align:`, `match:`, `seed:`, `hash:` lines).
    #[arg(long, conflicts_with = "alphabet")]
    spec: Option<PathBuf>,
    /// Built-in alphabet, used when no spec file is given.
    #[arg(long, value_enum, default_value = "binary")]
    alphabet: BuiltinAlphabet,
}

impl AlphabetArgs {
    fn load(&self) -> Result<SeedAlphabet, CliError> {
        match &self.spec {
            Some(path) => Ok(parse_alphabet_spec(&read(path)?)?.1),
            None => Ok(match self.alphabet {
                BuiltinAlphabet::Binary => SeedAlphabet::binary(),
                BuiltinAlphabet::Ternary => SeedAlphabet::ternary(),
            }),
        }
    }

    fn seeds(&self, raw: &[String]) -> Result<Vec<Seed>, CliError> {
        let sa = self.load()?;
        Ok(raw
            .iter()
            .map(|s| Seed::parse(&sa, s))
            .collect::<Result<_, _>>()?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Incremental,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Text,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    alphabet: AlphabetArgs,
    /// Seed string; repeat for a seed family.
    #[arg(long = "seed", required = true)]
    seeds: Vec<String>,
    #[arg(long, value_enum, default_value = "incremental")]
    method: Method,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MinimizeArgs {
    /// Serialized automaton to minimize.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    alphabet: AlphabetArgs,
    #[arg(long = "seed", required = true)]
    seeds: Vec<String>,
}

#[derive(Args)]
struct MatchArgs {
    #[command(flatten)]
    alphabet: AlphabetArgs,
    #[arg(long)]
    seed: String,
    /// File holding the text on a single line.
    #[arg(long)]
    text: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Semantics {
    Exact,
    Inclusion,
    Intersection,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunChoice {
    Empty,
    Universal,
}

#[derive(Args)]
struct MotifArgs {
    /// Degenerate alphabet spec (`base:`, `textsets:`, `patsets:`); IUPAC DNA when absent.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Pattern such as `[GA]GGNN[CT]`.
    #[arg(long)]
    pattern: String,
    #[arg(long, value_enum, default_value = "exact")]
    semantics: Semantics,
    /// Text letters that only extend the run counter.
    #[arg(long, value_enum, default_value = "empty")]
    run_letters: RunChoice,
    /// Optional text file to search.
    #[arg(long)]
    text: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    alphabet: AlphabetArgs,
    /// Seed weight; repeat for several rows.
    #[arg(long = "weight", required = true)]
    weights: Vec<usize>,
    /// Smallest span, as an offset above the weight.
    #[arg(long)]
    span_min_extra: Option<usize>,
    /// Largest span, as an offset above the weight.
    #[arg(long)]
    span_max_extra: Option<usize>,
    /// Comma-separated frequencies of the non-hash seed symbols.
    #[arg(long, value_delimiter = ',')]
    joker_weights: Option<Vec<u32>>,
    #[arg(long, default_value_t = 10000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seeds_per_sample: usize,
    #[arg(long, default_value_t = 1)]
    rng_seed: u64,
    /// CSV output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Invariant(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(msg) => CliError::Invariant(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_line(path: &Path) -> Result<String, CliError> {
    Ok(read(path)?.trim_end_matches(['\n', '\r']).to_string())
}

fn emit(output: &OutputArgs, dfa: &Dfa, letters: Option<&[char]>) -> Result<(), CliError> {
    let text = match output.format {
        Format::Dot => dfa.to_dot(letters),
        Format::Text => dfa.serialize(),
    };
    match &output.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn summary(dfa: &Dfa) -> String {
    let finals: Vec<String> = dfa.final_states().map(|q| q.to_string()).collect();
    let finals = if finals.is_empty() {
        "none".to_string()
    } else {
        finals.join(",")
    };
    format!("states={} final={finals}", dfa.reachable_count())
}

fn positions_line(positions: &[usize]) -> String {
    positions
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn hit_line(hit: Option<usize>) -> String {
    match hit {
        Some(p) => format!("first_hit_end={p}"),
        None => "first_hit_end=none".to_string(),
    }
}

fn build(args: &BuildArgs) -> Result<(), CliError> {
    let seeds = args.alphabet.seeds(&args.seeds)?;
    let dfa = match (&seeds[..], args.method) {
        ([seed], Method::Naive) => build_naive(seed),
        ([seed], Method::Incremental) => build_incremental(seed),
        _ => build_multi(&seeds)?,
    };
    emit(&args.output, &dfa, Some(seeds[0].text_letters()))?;
    println!("{}", summary(&dfa));
    Ok(())
}

fn minimize(args: &MinimizeArgs) -> Result<(), CliError> {
    let dfa = Dfa::deserialize(&read(&args.input)?)?;
    let min = dfa.minimize();
    emit(&args.output, &min, None)?;
    println!("{}", summary(&min));
    Ok(())
}

fn compare(args: &CompareArgs) -> Result<(), CliError> {
    let seeds = args.alphabet.seeds(&args.seeds)?;
    let spi = match &seeds[..] {
        [seed] => build_incremental(seed),
        _ => build_multi(&seeds)?,
    };
    let ac = build_ac_multi(&seeds)?;
    let min = spi.minimize();
    let (a, s, m) = (
        ac.reachable_count(),
        spi.reachable_count(),
        min.reachable_count(),
    );
    println!("ac={a} spi={s} min={m}");
    if !(m <= s && s <= a) {
        return Err(CliError::Invariant(format!(
            "ordering min <= spi <= ac fails: {m} {s} {a}"
        )));
    }
    let refs: Vec<&Seed> = seeds.iter().collect();
    surjection_map_multi(&ac, &spi, &refs).map_err(|e| CliError::Invariant(e.to_string()))?;
    Ok(())
}

fn match_text(args: &MatchArgs) -> Result<(), CliError> {
    let seed = args
        .alphabet
        .seeds(std::slice::from_ref(&args.seed))?
        .remove(0);
    let text = AlignmentText::parse(seed.text_letters(), &read_line(&args.text)?)?;
    let positions = naive_match_positions(&seed, &text);
    let hit = first_hit(&build_incremental(&seed), &text);
    println!("{}", positions_line(&positions));
    println!("{}", hit_line(hit));
    let expected = positions.first().map(|p| p + seed.span() - 1);
    if hit != expected {
        return Err(CliError::Invariant(format!(
            "automaton hit {hit:?} but scan expects {expected:?}"
        )));
    }
    Ok(())
}

fn motif(args: &MotifArgs) -> Result<(), CliError> {
    let alpha = match &args.spec {
        Some(path) => DegenerateAlphabet::parse(&read(path)?)?,
        None => DegenerateAlphabet::iupac_dna(),
    };
    let sem = match args.semantics {
        Semantics::Exact => MatchSemantics::Exact,
        Semantics::Inclusion => MatchSemantics::Inclusion,
        Semantics::Intersection => MatchSemantics::Intersection,
    };
    let runs = match args.run_letters {
        RunChoice::Empty => RunLetters::Empty,
        RunChoice::Universal => RunLetters::Universal,
    };
    let pattern = alpha.parse_pattern(&args.pattern)?;
    let seed = generalize_seed_with(&pattern, &alpha, sem, runs)?;
    let dfa = build_incremental(&seed);
    let min = dfa.minimize();
    println!(
        "states={} min={}",
        dfa.reachable_count(),
        min.reachable_count()
    );
    if let Some(path) = &args.text {
        let text = alpha.parse_text(&read_line(path)?, sem)?;
        let positions = naive_degenerate_match(&pattern, &alpha.text_sets(&text, sem), sem);
        let hit = first_hit(&dfa, &text);
        println!("{}", positions_line(&positions));
        println!("{}", hit_line(hit));
        let expected = positions.first().map(|p| p + pattern.len() - 1);
        if hit != expected {
            return Err(CliError::Invariant(format!(
                "automaton hit {hit:?} but scan expects {expected:?}"
            )));
        }
    }
    Ok(())
}

fn stats(args: &StatsArgs) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &w in &args.weights {
        let mut config = match (&args.alphabet.spec, args.alphabet.alphabet) {
            (None, kind) => StatsConfig::builtin(
                matches!(kind, BuiltinAlphabet::Ternary),
                w,
                args.samples,
                args.seeds_per_sample,
                args.rng_seed,
            ),
            (Some(_), _) => {
                let alphabet = args.alphabet.load()?;
                let jokers = alphabet.entries().len() - 1;
                StatsConfig {
                    alphabet_name: "custom".to_string(),
                    alphabet,
                    weight: w,
                    span_min: w,
                    span_max: w + 7,
                    joker_weights: vec![1; jokers],
                    samples: args.samples,
                    seeds_per_sample: args.seeds_per_sample,
                    rng_seed: args.rng_seed,
                }
            }
        };
        if let Some(extra) = args.span_min_extra {
            config.span_min = w + extra;
        }
        if let Some(extra) = args.span_max_extra {
            config.span_max = w + extra;
        }
        if let Some(weights) = &args.joker_weights {
            config.joker_weights = weights.clone();
        }
        rows.push(run_stats(&config)?);
    }
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            write_csv(file, &rows)?;
        }
        None => {
            let stdout = io::stdout();
            write_csv(stdout.lock(), &rows)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build(args) => build(args),
        Command::Minimize(args) => minimize(args),
        Command::Compare(args) => compare(args),
        Command::Match(args) => match_text(args),
        Command::Motif(args) => motif(args),
        Command::Stats(args) => stats(args),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(1)
        }
    }
}
