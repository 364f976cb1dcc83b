//! Command-line front end: parse automata, run analyses, print stable
//! `key: value` reports. Exit codes: 0 success (including `verdict: unknown`),
//! 1 resource exhaustion, 2 parse/usage errors.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use syncolor::alphabet::Word;
use syncolor::dfa::Sink;
use syncolor::error::Error;
use syncolor::families;
use syncolor::group;
use syncolor::lang::IdealLang;
use syncolor::mealy::{color, gen, inv, Generator, GroupColoring, MealyMachine};
use syncolor::reset;
use syncolor::text::{parse_automaton, parse_dfa, parse_mealy, render_dfa, render_mealy, Parsed};

#[derive(Parser)]
#[command(name = "syncolor", version, about = "Synchronizing automata and Mealy coloring analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Input file; `-` or absent reads stdin.
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Structural classification of a DFA or Mealy machine.
    Analyze(InputArg),
    /// Reset / weakly-reset verdict for a Mealy machine.
    CheckReset {
        #[command(flatten)]
        input: InputArg,
        /// Generator words of an explicit ideal (weakly-reset analysis).
        #[arg(long, num_args = 1..)]
        ideal: Vec<String>,
    },
    /// Freeness / singularity certificate.
    Certify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, num_args = 1..)]
        ideal: Vec<String>,
    },
    /// Group/semigroup queries on an invertible Mealy machine.
    Group {
        #[command(flatten)]
        input: InputArg,
        #[command(subcommand)]
        query: GroupQuery,
    },
    /// Emit a member of a built-in family.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Color a DFA into a Mealy machine.
    Color {
        #[command(flatten)]
        input: InputArg,
        #[command(subcommand)]
        scheme: ColorScheme,
    },
}

#[derive(Subcommand)]
enum GroupQuery {
    /// Exact group order by closure, under an element cap.
    Order {
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// All relations among positive generator words up to a length.
    Relations {
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
    },
    /// Order of the element given by a generator word such as `q0.q1^-1`.
    ElementOrder {
        word: String,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// The n-state Černý automaton.
    Cerny { n: usize },
    /// De Bruijn automaton over a finite group, with its canonical coloring.
    Debruijn {
        k: usize,
        /// `zM` for the cyclic group of order M.
        #[arg(long)]
        group: Option<String>,
        /// Cayley-table file (header of tokens, then product rows).
        #[arg(long)]
        cayley: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ColorScheme {
    /// Identity outputs everywhere.
    Identity,
    /// Complement every output bit (binary alphabets).
    Flip,
    /// The infinite-order construction for non-nilpotent sink automata.
    AddingMachine,
    /// One-swap coloring: state `q` swaps letters `a` and `b`.
    PropExample { q: String, a: String, b: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. }
                | Error::UnknownState(_)
                | Error::UnknownSymbol(_)
                | Error::Invalid(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn read_input(arg: &InputArg) -> Result<String, Error> {
    let text = match &arg.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Invalid(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    Ok(text)
}

fn header(input: &str) {
    println!("tool: syncolor {}", env!("CARGO_PKG_VERSION"));
    let digest = Sha256::digest(input.as_bytes());
    println!("input-sha256: {digest:x}");
}

fn parse_ideal(machine: &MealyMachine, words: &[String]) -> Result<Option<IdealLang>, Error> {
    if words.is_empty() {
        return Ok(None);
    }
    let gens: Vec<Word> = words
        .iter()
        .map(|w| machine.alphabet().parse_word(w))
        .collect::<Result<_, _>>()?;
    Ok(Some(IdealLang::new(machine.alphabet().clone(), gens)?))
}

fn parse_generator_word(machine: &MealyMachine, text: &str) -> Result<Vec<Generator>, Error> {
    text.split('.')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (name, inverse) = match t.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (t, false),
            };
            let state = machine.dfa().state_index(name)?;
            Ok(if inverse { inv(state) } else { gen(state) })
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Analyze(input) => {
            let text = read_input(&input)?;
            header(&text);
            match parse_automaton(&text)? {
                Parsed::Dfa(dfa) => {
                    println!("type: dfa");
                    print_classification(&dfa);
                }
                Parsed::Mealy(machine) => {
                    println!("type: mealy");
                    print_classification(machine.dfa());
                    println!("invertible: {}", machine.is_invertible());
                    println!("reduced: {}", machine.is_reduced());
                    let report = reset::is_reset(&machine)?;
                    println!("reset: {}", report.is_reset());
                }
            }
        }
        Command::CheckReset { input, ideal } => {
            let text = read_input(&input)?;
            header(&text);
            let machine = parse_mealy(&text)?;
            match parse_ideal(&machine, &ideal)? {
                None => {
                    let report = reset::is_reset(&machine)?;
                    println!("verdict: {}", if report.is_reset() { "reset" } else { "not-reset" });
                    println!("synchronizing: {}", report.synchronizing);
                    for (q, ok) in report.per_state.iter().enumerate() {
                        println!("state {} preserves-syn: {ok}", machine.dfa().state_name(q));
                    }
                }
                Some(h) => {
                    let ok = reset::is_weakly_reset(&machine, &h)?;
                    println!("verdict: {}", if ok { "weakly-reset" } else { "not-weakly-reset" });
                }
            }
        }
        Command::Certify { input, ideal } => {
            let text = read_input(&input)?;
            header(&text);
            let machine = parse_mealy(&text)?;
            let h = parse_ideal(&machine, &ideal)?;
            let cert = reset::freeness_certificate(&machine, h.as_ref())?;
            let verdict = match cert.verdict {
                reset::FreenessVerdict::Free => "free".to_string(),
                reset::FreenessVerdict::Singular => "singular".to_string(),
                reset::FreenessVerdict::NotApplicable => {
                    format!("not-applicable ({})", cert.reason)
                }
            };
            println!("verdict: {verdict}");
            println!(
                "ideal: {}",
                match &cert.ideal {
                    reset::IdealUsed::Syn => "syn".to_string(),
                    reset::IdealUsed::Explicit(i) => i
                        .generators
                        .iter()
                        .map(|w| machine.alphabet().format_word(w))
                        .collect::<Vec<_>>()
                        .join(" "),
                }
            );
            for (p, q, w) in &cert.witnesses {
                println!(
                    "witness {} {}: {}",
                    machine.dfa().state_name(*p),
                    machine.dfa().state_name(*q),
                    machine.alphabet().format_word(w)
                );
            }
        }
        Command::Group { input, query } => {
            let text = read_input(&input)?;
            header(&text);
            let machine = parse_mealy(&text)?;
            match query {
                GroupQuery::Order { cap } => {
                    let table = group::enumerate_group(&machine, cap)?;
                    match table.status {
                        group::ClosureStatus::Closed { order } => println!("order: {order}"),
                        group::ClosureStatus::CapExceeded => println!("verdict: unknown"),
                    }
                }
                GroupQuery::Relations { maxlen } => {
                    let pairs = group::relation_search(&machine, maxlen)?;
                    println!("relations: {}", pairs.len());
                    for (w1, w2) in pairs {
                        println!(
                            "relation: {} = {}",
                            format_generator_word(&machine, &w1),
                            format_generator_word(&machine, &w2)
                        );
                    }
                }
                GroupQuery::ElementOrder { word, cap } => {
                    let g = parse_generator_word(&machine, &word)?;
                    match group::element_order(&machine, &g, cap)? {
                        group::OrderResult::Finite(n) => println!("order: {n}"),
                        group::OrderResult::ExceedsCap(c) => {
                            println!("verdict: exceeds-cap {c}")
                        }
                    }
                }
            }
        }
        Command::Gen { family } => match family {
            GenFamily::Cerny { n } => {
                print!("{}", render_dfa(&families::cerny(n)?));
            }
            GenFamily::Debruijn { k, group, cayley } => {
                let table = match (group, cayley) {
                    (Some(spec), None) => {
                        let m: usize = spec
                            .strip_prefix('z')
                            .and_then(|s| s.parse().ok())
                            .filter(|&m| m >= 1)
                            .ok_or_else(|| {
                                Error::Invalid(format!("unsupported group spec `{spec}`"))
                            })?;
                        families::FiniteGroupTable::cyclic(m)
                    }
                    (None, Some(path)) => {
                        let text = std::fs::read_to_string(&path).map_err(|e| {
                            Error::Invalid(format!("cannot read {}: {e}", path.display()))
                        })?;
                        families::FiniteGroupTable::from_cayley_text(&text)?
                    }
                    _ => {
                        return Err(Error::Invalid(
                            "exactly one of --group and --cayley is required".into(),
                        ))
                    }
                };
                let db = families::DeBruijn::new(k, &table)?;
                print!("{}", render_mealy(&db.machine));
            }
        },
        Command::Color { input, scheme } => {
            let text = read_input(&input)?;
            let dfa = parse_dfa(&text)?;
            let coloring = match scheme {
                ColorScheme::Identity => GroupColoring::identity(&dfa),
                ColorScheme::Flip => {
                    if dfa.alphabet().len() != 2 {
                        return Err(Error::Invalid("--flip needs a binary alphabet".into()));
                    }
                    GroupColoring {
                        perms: vec![vec![1, 0]; dfa.n_states()],
                    }
                }
                ColorScheme::AddingMachine => group::adding_machine_coloring(&dfa)?.coloring,
                ColorScheme::PropExample { q, a, b } => {
                    let q = dfa.state_index(&q)?;
                    let a = dfa.alphabet().index_of(&a)?;
                    let b = dfa.alphabet().index_of(&b)?;
                    reset::prop_example_coloring(&dfa, q, a, b)?.0
                }
            };
            print!("{}", render_mealy(&color(&dfa, &coloring)?));
        }
    }
    Ok(())
}

fn print_classification(dfa: &syncolor::dfa::Dfa) {
    let c = dfa.classify();
    println!("synchronizing: {}", c.synchronizing);
    match (c.shortest_reset_length, dfa.shortest_reset_word()) {
        (Some(len), Some(w)) => {
            println!("shortest_reset_length: {len}");
            println!("shortest_reset_word: {}", dfa.alphabet().format_word(&w));
        }
        _ => println!("shortest_reset_length: none"),
    }
    match c.sink {
        Sink::None => println!("sink: none"),
        Sink::Unique(s) => println!("sink: {}", dfa.state_name(s)),
        Sink::Multiple(ss) => println!(
            "sink: multiple ({})",
            ss.iter()
                .map(|&s| dfa.state_name(s))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    }
    println!("nilpotent: {}", c.nilpotent);
    match c.bounded {
        Some(b) => println!("bounded: {b}"),
        None => println!("bounded: undefined"),
    }
    println!("simple: {}", c.simple);
    println!("strongly_connected: {}", c.strongly_connected);
}

fn format_generator_word(machine: &MealyMachine, w: &[Generator]) -> String {
    w.iter()
        .map(|g| {
            let name = machine.dfa().state_name(g.state);
            if g.inverse {
                format!("{name}^-1")
            } else {
                name.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(".")
}
