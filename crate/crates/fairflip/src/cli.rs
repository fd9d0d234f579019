//! Argument parsing and the five subcommands.

use std::io::Read;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use fairflip_core::exact::{self, ExactReport};
use fairflip_core::extractor::{extract_bits, transduce, Input};
use fairflip_core::oracle::{self, EventPattern};
use fairflip_core::simulate::{self, IntervalKind, TrialConfig};
use fairflip_core::stats::{chi_square_uniform, proportion_z, BitCounts, Significance};
use fairflip_core::{CoinBias, Distribution, InputKind, ProtocolKind};

use crate::dist::parse_distribution;
use crate::output::{num, Document};
use crate::{parallel, text};

/// Exact probabilities, decision protocols and Monte Carlo for biased coins
/// and dice.
#[derive(Debug, Parser)]
#[command(name = "fairflip", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Suppress the summary on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Cross-check closed forms against brute-force enumeration and exact
    /// chain solves.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Emit a JSON document (default for exact, simulate and dice-game).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit the document as section,key,value CSV.
    #[arg(long, global = true)]
    pub csv: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form quantities for a distribution or a coin.
    Exact(ExactArgs),
    /// Monte Carlo trials of one protocol.
    Simulate(SimulateArgs),
    /// Turn H/T tosses into C/W sounds.
    Transduce(TransduceArgs),
    /// Extract 0/1 bits with a protocol.
    Extract(ExtractArgs),
    /// Play the triple-versus-two-doubles dice game.
    DiceGame(DiceGameArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["dist", "p"])))]
pub struct ExactArgs {
    /// Comma-separated face probabilities.
    #[arg(long)]
    pub dist: Option<String>,
    /// Probability of heads.
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// vn, single-sound, sound-vn, four-toss, blind or first-whistle.
    #[arg(long, value_parser = parse_protocol)]
    pub protocol: ProtocolKind,
    /// Probability of heads.
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Trials still undecided after this many tosses are counted as undecided.
    #[arg(long, default_value_t = simulate::DEFAULT_MAX_TOSSES)]
    pub max_tosses: u64,
    /// Interval half-width in standard errors.
    #[arg(long, default_value_t = simulate::DEFAULT_Z)]
    pub z: f64,
    /// Wilson score interval instead of the normal approximation.
    #[arg(long)]
    pub wilson: bool,
}

#[derive(Debug, Args)]
pub struct TransduceArgs {
    /// File of H/T characters; `-` reads standard input.
    #[arg(long, default_value = "-")]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StreamFormat {
    Ht,
    Cw,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "p"])))]
pub struct ExtractArgs {
    /// vn, single-sound, sound-vn, four-toss, blind or first-whistle.
    #[arg(long, value_parser = parse_protocol)]
    pub mode: ProtocolKind,
    /// File of tosses or sounds; `-` reads standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Alphabet of the input: H/T tosses or C/W sounds.
    #[arg(long, value_enum, default_value_t = StreamFormat::Ht)]
    pub format: StreamFormat,
    /// Generate tosses from a seeded coin with this bias instead of reading.
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// Number of bits to generate with --p.
    #[arg(long, default_value_t = 10_000, requires = "p")]
    pub bits: usize,
}

#[derive(Debug, Args)]
pub struct DiceGameArgs {
    /// Comma-separated face probabilities.
    #[arg(long)]
    pub dist: String,
    #[arg(long, default_value_t = 100_000)]
    pub rounds: u64,
}

fn parse_protocol(s: &str) -> Result<ProtocolKind, String> {
    s.parse().map_err(|_| {
        let tags: Vec<_> = ProtocolKind::ALL.iter().map(|k| k.tag()).collect();
        format!("unknown protocol {s:?}; expected one of {}", tags.join(", "))
    })
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// What one invocation prints.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub stdout: String,
    pub summary: String,
}

enum Rendered {
    Doc(Document),
    Text(String, Document),
}

pub fn run(cli: &Cli) -> Result<Invocation, CliError> {
    let common = &cli.common;
    let (rendered, summary) = match &cli.command {
        Command::Exact(args) => cmd_exact(args, common).map(|(d, s)| (Rendered::Doc(d), s))?,
        Command::Simulate(args) => cmd_simulate(args, common).map(|(d, s)| (Rendered::Doc(d), s))?,
        Command::Transduce(args) => cmd_transduce(args)?,
        Command::Extract(args) => cmd_extract(args, common)?,
        Command::DiceGame(args) => cmd_dice_game(args, common).map(|(d, s)| (Rendered::Doc(d), s))?,
    };
    let stdout = match rendered {
        Rendered::Doc(doc) | Rendered::Text(_, doc) if common.csv => doc.to_csv(),
        Rendered::Text(_, doc) if common.json => doc.to_json(),
        Rendered::Doc(doc) => doc.to_json(),
        Rendered::Text(text, _) => text,
    };
    Ok(Invocation { stdout, summary })
}

fn coin_from(p: f64) -> Result<CoinBias, CliError> {
    CoinBias::new(p).map_err(usage)
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|e| CliError::Internal(format!("reading standard input: {e}")))?;
    } else {
        bytes = std::fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    String::from_utf8(bytes).map_err(|e| {
        usage(format!(
            "input is not valid UTF-8 at byte offset {}",
            e.utf8_error().valid_up_to()
        ))
    })
}

fn cmd_exact(args: &ExactArgs, common: &Common) -> Result<(Document, String), CliError> {
    let mut doc = Document::new("exact");
    let (d, coin): (Distribution, Option<CoinBias>) = match (&args.dist, args.p) {
        (Some(text), _) => {
            let parsed = parse_distribution(text).map_err(usage)?;
            doc.input("dist", parsed.raw.iter().map(|&x| num(x)).collect::<Vec<_>>())
                .input("normalization_correction", num(parsed.correction));
            (parsed.distribution, None)
        }
        (None, Some(p)) => {
            let b = coin_from(p)?;
            doc.input("p", num(p));
            (b.to_distribution(), Some(b))
        }
        (None, None) => return Err(usage("one of --dist or --p is required")),
    };

    let report = match coin {
        Some(b) => ExactReport::for_coin(b),
        None => ExactReport::for_distribution(&d),
    };
    doc.result("faces", d.faces())
        .result("pr_triple", num(report.pr_triple))
        .result("pr_two_doubles", num(report.pr_two_doubles))
        .result("advantage", num(report.advantage))
        .result("pr_match", num(report.pr_match))
        .result("pr_match_given_mismatch", report.pr_match_given_mismatch.map_or(Value::Null, num))
        .result("is_point_mass", d.is_point_mass())
        .result("is_uniform_on_support", d.is_uniform_on_support());
    if report.pr_match_given_mismatch.is_none() {
        doc.note("pr_match_given_mismatch is undefined: a point mass never produces B != A");
    }

    // (label, closed form, oracle) pairs for --oracle
    let mut compared: Vec<(String, f64, f64)> = Vec::new();

    if let Some(b) = coin {
        let peak = exact::argmax_triple_advantage();
        doc.result(
            "advantage_peak",
            json!({"p_low": num(peak.p_low), "p_high": num(peak.p_high), "value": num(peak.value)}),
        );
        let mut protocols = Map::new();
        for kind in ProtocolKind::ALL {
            let tosses = exact::expected_tosses(kind, b).ok();
            let win = exact::flawed_win_probability(kind, b).ok();
            protocols.insert(
                kind.tag().to_owned(),
                json!({
                    "expected_tosses": tosses.map_or(Value::Null, num),
                    "excludes_initial_toss": kind.has_initial_toss(),
                    "p1_win": win.map_or(Value::Null, num),
                    "fair": kind.is_fair(),
                }),
            );
            if common.oracle {
                if let (Ok(chain), Some(t), Some(w)) = (oracle::absorbing_solve(kind, b), tosses, win) {
                    compared.push((format!("{}.p1_win", kind.tag()), w, chain.p1_win));
                    compared.push((format!("{}.expected_tosses", kind.tag()), t, chain.expected_tosses));
                }
            }
        }
        doc.result("protocols", Value::Object(protocols));
        if b.is_degenerate() {
            doc.note("protocols that retry never terminate when p is 0 or 1; their fields are null");
        }
    }

    if common.oracle {
        let mut enumerated = Map::new();
        let closed = [
            (EventPattern::TwoDoubles, "pr_two_doubles", Some(report.pr_two_doubles)),
            (EventPattern::Triple, "pr_triple", Some(report.pr_triple)),
            (EventPattern::Match, "pr_match", Some(report.pr_match)),
            (EventPattern::MatchGivenMismatch, "pr_match_given_mismatch", report.pr_match_given_mismatch),
        ];
        for (pattern, key, closed_value) in closed {
            match oracle::joint_event_prob(&d, pattern) {
                Ok(v) => {
                    enumerated.insert(key.to_owned(), num(v));
                    if let Some(c) = closed_value {
                        compared.push((key.to_owned(), c, v));
                    }
                }
                Err(e) => {
                    enumerated.insert(key.to_owned(), Value::Null);
                    doc.note(format!("oracle {key}: {e}"));
                }
            }
        }
        let mut chains = Map::new();
        if let Some(b) = coin {
            for kind in ProtocolKind::ALL {
                let v = oracle::absorbing_solve(kind, b).map_or(Value::Null, |s| {
                    json!({
                        "p1_win": num(s.p1_win),
                        "p2_win": num(s.p2_win),
                        "expected_tosses": num(s.expected_tosses),
                        "states": s.states,
                    })
                });
                chains.insert(kind.tag().to_owned(), v);
            }
        }
        let max_dev = compared.iter().map(|(_, a, b)| (a - b).abs()).fold(0.0, f64::max);
        doc.result(
            "oracle",
            json!({
                "enumeration": Value::Object(enumerated),
                "chains": Value::Object(chains),
                "compared": compared.len(),
                "max_abs_deviation": num(max_dev),
            }),
        );
    }

    let summary = format!(
        "triple {:.6}  two doubles {:.6}  advantage {:.6}  match {:.6}",
        report.pr_triple, report.pr_two_doubles, report.advantage, report.pr_match
    );
    Ok((doc, summary))
}

fn cmd_simulate(args: &SimulateArgs, common: &Common) -> Result<(Document, String), CliError> {
    let b = coin_from(args.p)?;
    if b.is_degenerate() {
        return Err(usage(format!("--p must lie strictly between 0 and 1, got {}", args.p)));
    }
    let mut config = TrialConfig::new(args.protocol, b, args.trials, common.seed);
    config.max_tosses = args.max_tosses;
    config.z = args.z;
    config.interval = if args.wilson {
        IntervalKind::Wilson
    } else {
        IntervalKind::Normal
    };
    let r = parallel::run_protocol_trials(&config, common.threads).map_err(usage)?;

    let mut doc = Document::new("simulate");
    doc.input("protocol", args.protocol.tag())
        .input("p", num(args.p))
        .input("trials", args.trials)
        .input("seed", common.seed)
        .input("max_tosses", args.max_tosses)
        .input("z", num(args.z))
        .input("interval", if args.wilson { "wilson" } else { "normal" });

    let decided = r.p1_wins + r.p2_wins;
    let exact_win = exact::flawed_win_probability(args.protocol, b).map_err(usage)?;
    let exact_tosses = exact::expected_tosses(args.protocol, b).map_err(usage)?
        + if args.protocol.has_initial_toss() { 1.0 } else { 0.0 };
    let (rate_z, tosses_z) = if decided == 0 {
        doc.note("no trial reached a decision; rates and means are placeholders");
        (Value::Null, Value::Null)
    } else {
        let se = (exact_win * (1.0 - exact_win) / decided as f64).sqrt();
        let tz = if r.tosses_std_error > 0.0 {
            num((r.mean_tosses - exact_tosses) / r.tosses_std_error)
        } else {
            Value::Null
        };
        (num((r.p1_rate - exact_win) / se), tz)
    };
    if r.undecided > 0 {
        doc.note(format!("{} trials hit the {}-toss cap", r.undecided, args.max_tosses));
    }
    doc.result("trials", r.trials)
        .result("p1_wins", r.p1_wins)
        .result("p2_wins", r.p2_wins)
        .result("undecided", r.undecided)
        .result("p1_rate", num(r.p1_rate))
        .result("ci_low", num(r.ci_low))
        .result("ci_high", num(r.ci_high))
        .result("mean_tosses", num(r.mean_tosses))
        .result("tosses_std_error", num(r.tosses_std_error))
        .result("max_tosses_hit", r.max_tosses_hit)
        .result("max_tosses_observed", r.max_tosses_observed)
        .result(
            "exact",
            json!({
                "p1_win": num(exact_win),
                "expected_tosses": num(exact_tosses),
                "z_score": rate_z,
                "mean_tosses_z": tosses_z,
            }),
        );
    let summary = format!(
        "{} p={}: player 1 {:.6} [{:.6}, {:.6}] vs exact {:.6}; mean tosses {:.4} vs {:.4}",
        args.protocol.tag(),
        args.p,
        r.p1_rate,
        r.ci_low,
        r.ci_high,
        exact_win,
        r.mean_tosses,
        exact_tosses
    );
    Ok((doc, summary))
}

fn cmd_transduce(args: &TransduceArgs) -> Result<(Rendered, String), CliError> {
    let input = read_input(&args.input)?;
    let tosses = text::parse_tosses(&input).map_err(usage)?;
    let sounds = transduce(&tosses).unwrap_or_default();
    let out = text::format_sounds(&sounds);
    let mut doc = Document::new("transduce");
    doc.input("tosses", tosses.len()).result("sounds", out.clone());
    let summary = format!("{} tosses -> {} sounds", tosses.len(), sounds.len());
    Ok((Rendered::Text(out + "\n", doc), summary))
}

fn cmd_extract(args: &ExtractArgs, common: &Common) -> Result<(Rendered, String), CliError> {
    let mut doc = Document::new("extract");
    doc.input("mode", args.mode.tag());
    let bits = match (&args.input, args.p) {
        (Some(path), _) => {
            let input = read_input(path)?;
            doc.input("format", match args.format {
                StreamFormat::Ht => "ht",
                StreamFormat::Cw => "cw",
            });
            match args.format {
                StreamFormat::Ht => {
                    let tosses = text::parse_tosses(&input).map_err(usage)?;
                    doc.input("tosses", tosses.len());
                    extract_bits(args.mode, Input::Tosses(&tosses)).map_err(usage)?
                }
                StreamFormat::Cw => {
                    if args.mode.input_kind() == InputKind::Tosses {
                        return Err(usage(format!("mode {} needs --format ht", args.mode.tag())));
                    }
                    let sounds = text::parse_sounds(&input).map_err(usage)?;
                    doc.input("sounds", sounds.len());
                    extract_bits(args.mode, Input::Sounds(&sounds)).map_err(usage)?
                }
            }
        }
        (None, Some(p)) => {
            let b = coin_from(p)?;
            doc.input("p", num(p)).input("bits", args.bits).input("seed", common.seed);
            parallel::seeded_bits(args.mode, b, common.seed, args.bits, common.threads).map_err(usage)?
        }
        (None, None) => return Err(usage("one of --input or --p is required")),
    };

    let counts = BitCounts::from_bits(&bits);
    let out = text::format_bits(&bits);
    doc.result("bits", out.clone())
        .result("count", bits.len())
        .result("ones", counts.ones)
        .result("zeros", counts.zeros);
    match (chi_square_uniform(counts, Significance::P05), proportion_z(counts, 0.5)) {
        (Ok(chi), Ok(z)) => {
            doc.result(
                "chi_square",
                json!({"statistic": num(chi.statistic), "alpha": 0.05, "reject": chi.reject}),
            )
            .result("proportion_z", num(z));
        }
        (Err(e), _) | (_, Err(e)) => {
            doc.result("chi_square", Value::Null).result("proportion_z", Value::Null);
            doc.note(format!("fairness tests skipped: {e}"));
        }
    }
    let summary = format!("{} bits ({} ones) via {}", bits.len(), counts.ones, args.mode.tag());
    Ok((Rendered::Text(out + "\n", doc), summary))
}

fn cmd_dice_game(args: &DiceGameArgs, common: &Common) -> Result<(Document, String), CliError> {
    let parsed = parse_distribution(&args.dist).map_err(usage)?;
    let d = &parsed.distribution;
    let r = simulate::run_dice_game(d, args.rounds, common.seed).map_err(usage)?;
    let n = r.rounds as f64;
    let outcome = match r.outcome {
        simulate::DiceOutcome::TripleWins => "triple_wins",
        simulate::DiceOutcome::DoublesWins => "doubles_wins",
        simulate::DiceOutcome::Draw => "draw",
    };
    let mut doc = Document::new("dice-game");
    doc.input("dist", parsed.raw.iter().map(|&x| num(x)).collect::<Vec<_>>())
        .input("normalization_correction", num(parsed.correction))
        .input("rounds", args.rounds)
        .input("seed", common.seed)
        .result("rounds", r.rounds)
        .result("triple_points", r.triple_points)
        .result("doubles_points", r.doubles_points)
        .result("outcome", outcome)
        .result("triple_rate", num(r.triple_points as f64 / n))
        .result("doubles_rate", num(r.doubles_points as f64 / n))
        .result(
            "exact",
            json!({
                "pr_triple": num(exact::pr_triple(d)),
                "pr_two_doubles": num(exact::pr_two_doubles(d)),
                "advantage": num(exact::pr_triple(d) - exact::pr_two_doubles(d)),
            }),
        );
    let summary = format!(
        "triple {} vs doubles {} over {} rounds: {outcome}",
        r.triple_points, r.doubles_points, r.rounds
    );
    Ok((doc, summary))
}
