//! `holant`: classify signatures, evaluate grids, and build the named
//! corpus signatures from the command line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use holant_core::classes::{
    classify_csp2c, classify_holant_c, holant_star_tractable, in_a, in_a_alpha, in_l_characterization,
    in_l_definition, in_m, in_p, in_t,
};
use holant_core::corpus::{generate, known_names, replay_figure1};
use holant_core::expr::parse_symmetric;
use holant_core::format::{read_grid_file, read_signature_file, write_signature};
use holant_core::grid::{compose_gadget_capped, holant_brute_capped, DEFAULT_BRUTE_CAP};
use holant_core::solvers::{solve_with, SolveOptions};
use holant_core::{BundleTable, Cyc8, Error, Signature};

#[derive(Parser)]
#[command(name = "holant", version, about = "Exact Holant evaluation and tractability classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Csp2c,
    Holantc,
}

#[derive(Subcommand)]
enum Command {
    /// Report class memberships of one signature (a file, or `[f0,...,fn]`).
    ClassifyFn { input: String },
    /// Classify a set of signatures.
    ClassifySet {
        #[arg(required = true)]
        files: Vec<String>,
        #[arg(long, value_enum, default_value = "csp2c")]
        mode: Mode,
    },
    /// Evaluate a closed grid, choosing a polynomial-time method when one applies.
    Solve {
        grid: PathBuf,
        /// Always enumerate, even when a faster method applies.
        #[arg(long)]
        force_brute: bool,
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        max_brute_edges: usize,
        /// Print only the value.
        #[arg(long)]
        quiet: bool,
    },
    /// Contract a grid with dangling ports into a signature file.
    Compose {
        grid: PathBuf,
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        max_brute_edges: usize,
    },
    /// Write a named signature (`-` for standard output).
    Gen { name: String, out: PathBuf },
    /// Replay a built-in gadget construction.
    Check { name: String },
    /// Evaluate a closed grid by enumeration only.
    Oracle {
        grid: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        max_brute_edges: usize,
        #[arg(long)]
        quiet: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } => 2,
        Error::NotRealValued(_) | Error::NotInClass { .. } => 3,
        _ => 1,
    }
}

fn load_signature(input: &str) -> Result<Signature, Error> {
    if input.trim_start().starts_with('[') {
        let values = parse_symmetric(input).map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;
        return Ok(Signature::symmetric(&values)?.with_name("f"));
    }
    read_signature_file(Path::new(input))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn value_line(v: &Cyc8) -> String {
    format!("{v}  ({})", v.decimal())
}

fn classify_fn(input: &str) -> Result<String, Error> {
    let f = load_signature(input)?;
    let mut out = String::new();
    writeln!(out, "signature {} arity {} support {}", f.display_name(), f.arity(), f.support_size()).unwrap();
    if let Ok(bt) = BundleTable::of(&f) {
        let types: Vec<String> = bt.bundles.iter().map(|b| format!("({})", b.type_string())).collect();
        writeln!(out, "rank {} bundles {}", bt.rank, types.join(" ")).unwrap();
    }
    let (l, cert) = in_l_characterization(&f);
    let rows = [
        ("P", yes_no(in_p(&f)).to_string()),
        ("A", yes_no(in_a(&f)).to_string()),
        ("Aalpha", yes_no(in_a_alpha(&f)).to_string()),
        ("L", format!("{} ({cert})", yes_no(l))),
        ("L-definition", yes_no(in_l_definition(&f)).to_string()),
        ("M", yes_no(in_m(&f)).to_string()),
        ("T", yes_no(in_t(&f)).to_string()),
    ];
    for (name, val) in rows {
        writeln!(out, "{name:<13}{val}").unwrap();
    }
    let star = holant_star_tractable(std::slice::from_ref(&f));
    writeln!(out, "{:<13}{}", "Holant*", star.map_or("none".to_string(), |w| w.to_string())).unwrap();
    out.push_str(&classify_csp2c(&[f]).to_text());
    Ok(out)
}

fn classify_set(files: &[String], mode: Mode) -> Result<String, Error> {
    let set = files.iter().map(|f| load_signature(f)).collect::<Result<Vec<_>, _>>()?;
    let verdict = match mode {
        Mode::Csp2c => classify_csp2c(&set),
        Mode::Holantc => classify_holant_c(&set)?,
    };
    Ok(verdict.to_text())
}

fn write_out(path: &Path, text: &str) -> Result<(), Error> {
    if path == Path::new("-") {
        print!("{text}");
    } else {
        fs::write(path, text)?;
    }
    Ok(())
}

fn run(cmd: Command) -> Result<String, Error> {
    match cmd {
        Command::ClassifyFn { input } => classify_fn(&input),
        Command::ClassifySet { files, mode } => classify_set(&files, mode),
        Command::Solve { grid, force_brute, max_brute_edges, quiet } => {
            let g = read_grid_file(&grid)?;
            let (v, method) = solve_with(&g, SolveOptions { force_brute, max_brute_edges })?;
            Ok(if quiet { format!("{v}\n") } else { format!("{}\nmethod {method}\n", value_line(&v)) })
        }
        Command::Compose { grid, out, max_brute_edges } => {
            let g = read_grid_file(&grid)?;
            let name = grid.file_stem().and_then(|s| s.to_str()).unwrap_or("composed").to_string();
            let f = compose_gadget_capped(&g, max_brute_edges)?.with_name(name);
            write_out(&out, &write_signature(&f))?;
            Ok(String::new())
        }
        Command::Gen { name, out } => {
            let f = generate(&name)?;
            write_out(&out, &write_signature(&f))?;
            Ok(String::new())
        }
        Command::Check { name } => match name.as_str() {
            "figure1" => {
                let (f, ok) = replay_figure1()?;
                let bt = BundleTable::of(&f)?;
                let types: Vec<String> = bt.bundles.iter().map(|b| format!("({})", b.type_string())).collect();
                Ok(format!(
                    "figure1 arity {} bundles {}\nproportional to f7a_pp: {}\n",
                    f.arity(),
                    types.join(" "),
                    yes_no(ok)
                ))
            }
            other => Err(Error::UnknownSignature(other.to_string())),
        },
        Command::Oracle { grid, max_brute_edges, quiet } => {
            let g = read_grid_file(&grid)?;
            let v = holant_brute_capped(&g, max_brute_edges)?;
            Ok(if quiet { format!("{v}\n") } else { format!("{}\nmethod brute\n", value_line(&v)) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let is_check = matches!(&cli.command, Command::Check { .. });
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            if is_check && text.contains(": no") {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::UnknownSignature(_) = e {
                eprintln!("known generators: {}", known_names().join(", "));
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
