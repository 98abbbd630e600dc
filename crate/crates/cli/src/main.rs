use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use shrinkca::{
    attack_sg, ca_step, cell_trace, evolve, lfsr_generate, model_sg, phase_report,
    render_triangle, sg_generate, sg_predict, transfer_polynomials, triangle_rows, BitPoly, BitSeq,
    CaState, Error, Lfsr, RuleVector, ShrinkingGenerator,
};

/// Shrinking generator analysis through linear 90/150 cellular automata.
#[derive(Parser)]
#[command(name = "shrinkca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Output of a single LFSR.
    Lfsr {
        /// Feedback polynomial, e.g. 1+D+D^3 or 0xb.
        #[arg(long)]
        poly: BitPoly,
        /// Initial state (s_1 .. s_L); s_L is emitted first.
        #[arg(long)]
        seed: BitSeq,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Shrunken sequence of a control register R1 and a data register R2.
    Sg {
        #[arg(long)]
        p1: BitPoly,
        #[arg(long)]
        seed1: BitSeq,
        #[arg(long)]
        p2: BitPoly,
        #[arg(long)]
        seed2: BitSeq,
        #[arg(short = 'n')]
        n: usize,
        /// Also print the closed-form period, weight and complexity as JSON.
        #[arg(long)]
        predict: bool,
    },
    /// The two automata modelling a generator.
    Model {
        #[arg(long)]
        l1: usize,
        /// Characteristic polynomial of R2.
        #[arg(long)]
        p2: BitPoly,
        #[arg(long)]
        json: bool,
    },
    /// Run an automaton from a given state.
    CaRun {
        /// Rule string, 0 = rule 90, 1 = rule 150.
        #[arg(long)]
        rules: RuleVector,
        #[arg(long)]
        state: CaState,
        #[arg(short = 'n')]
        n: usize,
        /// Print only the sequence of this cell (1-based).
        #[arg(long, conflicts_with = "triangle")]
        cell: Option<usize>,
        /// Right-aligned triangle as used for state recovery.
        #[arg(long)]
        triangle: bool,
    },
    /// Recover the keystream from an intercepted window.
    Attack {
        #[arg(long)]
        l1: usize,
        /// Characteristic polynomial of R2.
        #[arg(long)]
        p2: BitPoly,
        #[arg(long)]
        window: BitSeq,
        /// Keystream bits to output (default: the window length).
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Shift relations between cell sequences.
    Phaseshift {
        #[arg(long)]
        rules: RuleVector,
        #[arg(long)]
        json: bool,
    },
    /// Linear complexity and connection polynomial of a sequence.
    Bm {
        #[arg(long)]
        seq: BitSeq,
        #[arg(long)]
        json: bool,
    },
    /// Check the built-in worked examples.
    VerifyPaper,
}

enum Failure {
    Usage(String),
    Analysis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Analysis(e.to_string()),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

#[derive(Serialize)]
struct BmReport {
    lc: usize,
    connection: BitPoly,
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Lfsr { poly, seed, n } => {
            let reg = Lfsr::new(poly, &seed)?;
            writeln!(out, "{}", lfsr_generate(&reg, n)).unwrap();
        }
        Command::Sg { p1, seed1, p2, seed2, n, predict } => {
            let (l1, l2) = (seed1.len(), seed2.len());
            let sg = ShrinkingGenerator::new(Lfsr::new(p1, &seed1)?, Lfsr::new(p2.clone(), &seed2)?)?;
            writeln!(out, "{}", sg_generate(&sg, n)?).unwrap();
            if predict {
                // Predictions take the characteristic polynomial of R2.
                out += &to_json(&sg_predict(l1, l2, &p2.reverse())?);
            }
        }
        Command::Model { l1, p2, json } => {
            let m = model_sg(l1, &p2)?;
            if json {
                out += &to_json(&m);
            } else {
                writeln!(out, "{}", m.rules_a).unwrap();
                writeln!(out, "{}", m.rules_b).unwrap();
                let check = if m.charpoly_check { "passed" } else { "FAILED" };
                writeln!(out, "P(D) {}, length {}, charpoly check {check}", m.p, m.length).unwrap();
            }
        }
        Command::CaRun { rules, state, n, cell, triangle } => {
            if let Some(c) = cell {
                writeln!(out, "{}", cell_trace(&rules, &state, c, n)?).unwrap();
            } else {
                let states = evolve(&rules, &state, n)?;
                if triangle {
                    writeln!(out, "{rules}").unwrap();
                    out += &render_triangle(&triangle_rows(&states), rules.len());
                } else {
                    for s in &states {
                        writeln!(out, "{s}").unwrap();
                    }
                }
                // Validates the pair even when n = 0.
                ca_step(&rules, &state)?;
            }
        }
        Command::Attack { l1, p2, window, horizon, json } => {
            let report = attack_sg(l1, &p2, &window, horizon.unwrap_or(window.len()))?;
            if json {
                out += &to_json(&report);
            } else {
                writeln!(out, "{report}").unwrap();
            }
        }
        Command::Phaseshift { rules, json } => {
            let report = phase_report(&rules)?;
            if json {
                out += &to_json(&report);
            } else {
                writeln!(out, "M(D) {}", report.charpoly).unwrap();
                for t in transfer_polynomials(&rules) {
                    writeln!(out, "X{} = ({}) X{}", t.cell, t.poly, t.reference).unwrap();
                }
                for class in report.classes.iter().filter(|c| c.members.len() > 1) {
                    let members: Vec<String> = class.members[1..]
                        .iter()
                        .map(|m| format!("{} (+{})", m.cell, m.shift))
                        .collect();
                    writeln!(out, "cell {}: {}", class.reference, members.join(", ")).unwrap();
                }
                let unmatched: Vec<String> = report.unmatched.iter().map(|c| c.to_string()).collect();
                writeln!(out, "unmatched: {}", unmatched.join(" ")).unwrap();
            }
        }
        Command::Bm { seq, json } => {
            let bm = shrinkca::berlekamp_massey(&seq);
            let report = BmReport { lc: bm.lc, connection: bm.connection };
            if json {
                out += &to_json(&report);
            } else {
                writeln!(out, "lc {}", report.lc).unwrap();
                writeln!(out, "connection {}", report.connection).unwrap();
            }
        }
        Command::VerifyPaper => {
            let checks = shrinkca::reproduce::worked_examples();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}: {}", c.name, c.detail).unwrap();
            }
            if checks.iter().any(|c| !c.passed) {
                print!("{out}");
                return Err(Failure::Analysis("worked examples failed".into()));
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
