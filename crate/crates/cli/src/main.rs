use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sheafspec::cohomology::{spectrum_from_table, table_from_spectrum};
use sheafspec::invariants::euler_characteristic_raw;
use sheafspec::sheafcalc::splice_ses;
use sheafspec::spectrum::enumerate_spectra;
use sheafspec::workbench::{
    catalog_load, check_slope_examples, component_report, rao_pairs, realizability_gap, slope_examples_markdown,
};
use sheafspec::{
    Catalog, ChainUpParam, ChernClasses, CohomologyTable, Error, ShortExactSequenceSpec, Spectrum, SpectrumWithS,
    SplittingType, TwistRange,
};

/// Spectra and cohomology tables of rank-2 torsion-free sheaves on P3.
#[derive(Parser)]
#[command(name = "sheafspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Md,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Euler characteristic chi(E(t)).
    Chi {
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
        #[arg(long, allow_hyphen_values = true)]
        c3: i64,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
    },
    /// All candidate spectra of a class.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
        #[arg(long, allow_hyphen_values = true)]
        c3: i64,
        /// Chain-up parameter: a number or "unbounded".
        #[arg(long, default_value = "unbounded")]
        seh: ChainUpParam,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cohomology table determined by a spectrum.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        spectrum: Spectrum,
        #[arg(long)]
        s: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        range: TwistRange,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Recover (spectrum, s) from a table in JSON.
    InvertTable {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        e: i64,
    },
    /// Solve a short exact sequence for its unknown term.
    Splice {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "-8:4")]
        range: TwistRange,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Components of a moduli class, with recomputed spectra.
    Report {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_moduli)]
        moduli: ChernClasses,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Distinct components sharing a spectrum.
    RaoPairs {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_moduli)]
        moduli: ChernClasses,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Candidates no known component realizes.
    Gap {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_moduli)]
        moduli: ChernClasses,
        #[arg(long, default_value = "unbounded")]
        seh: ChainUpParam,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The slope-semistable kernels with s above the zero-dimensional bound.
    CheckExamples {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn parse_moduli(s: &str) -> Result<ChernClasses, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| format!("bad integer {p:?}")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [e, c2, c3] => ChernClasses::new(*e, *c2, *c3).map_err(|e| e.to_string()),
        _ => Err("expected E,C2,C3".into()),
    }
}

enum Failure {
    Malformed(String),
    Constraint(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Catalog(_) | Error::MalformedSequence(_) | Error::InvalidSpectrum(_) => Failure::Malformed(e.to_string()),
            _ => Failure::Constraint(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, Failure> {
    match path {
        Some(p) => Ok(catalog_load(&read(p)?)?),
        None => Ok(Catalog::bundled()),
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn table_output(t: &CohomologyTable, format: Format) -> String {
    match format {
        Format::Md => t.to_markdown(),
        Format::Json => t.to_json(),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Chi { e, c2, c3, twist } => Ok(euler_characteristic_raw(e, c2, c3, twist)?.to_string()),
        Command::Enumerate { e, c2, c3, seh, format } => {
            let cc = ChernClasses::new(e, c2, c3)?;
            let list = enumerate_spectra(&cc, seh)?;
            Ok(match format {
                Format::Json => json(&list),
                Format::Md => {
                    let mut out = String::from("| spectrum | s |\n|---|---|\n");
                    for sw in &list {
                        let _ = writeln!(out, "| {} | {} |", sw.spectrum, sw.s);
                    }
                    out
                }
            })
        }
        Command::Table { spectrum, s, e, range, format } => {
            let sw = SpectrumWithS::new(spectrum, s)?;
            let t = table_from_spectrum(&sw, &SplittingType::for_e(e)?, range);
            Ok(table_output(&t, format))
        }
        Command::InvertTable { file, e } => {
            let table = CohomologyTable::from_json(&read(&file)?).map_err(|e| Failure::Malformed(e.to_string()))?;
            let sw = spectrum_from_table(&table, &SplittingType::for_e(e)?)?;
            Ok(json(&sw))
        }
        Command::Splice { spec, range, format } => {
            let spec: ShortExactSequenceSpec =
                serde_json::from_str(&read(&spec)?).map_err(|e| Failure::Malformed(e.to_string()))?;
            let out = splice_ses(&spec, range)?;
            Ok(match format {
                Format::Json => json(&out),
                Format::Md => {
                    let mut s = out.table.to_markdown();
                    let open = out.undetermined();
                    if !open.is_empty() {
                        let _ = writeln!(s, "\nundetermined at twists {open:?}");
                    }
                    s
                }
            })
        }
        Command::Report { moduli, catalog, format } => {
            let cat = load_catalog(catalog.as_deref())?;
            let report = component_report(&cat, &moduli);
            let text = match format {
                Format::Json => report.to_json(),
                Format::Md => report.to_markdown(),
            };
            match report.ensure_verified() {
                Ok(()) => Ok(text),
                Err(e) => {
                    println!("{text}");
                    Err(Failure::Constraint(e.to_string()))
                }
            }
        }
        Command::RaoPairs { moduli, catalog, format } => {
            let pairs = rao_pairs(&load_catalog(catalog.as_deref())?, &moduli);
            Ok(match format {
                Format::Json => json(&pairs),
                Format::Md => {
                    let mut out = String::from("| first | second | spectrum | s |\n|---|---|---|---|\n");
                    for p in &pairs {
                        let _ = writeln!(out, "| {} | {} | {} | {} / {} |", p.first, p.second, p.spectrum, p.s_first, p.s_second);
                    }
                    out
                }
            })
        }
        Command::Gap { moduli, seh, catalog, format } => {
            let gap = realizability_gap(&load_catalog(catalog.as_deref())?, &moduli, seh)?;
            Ok(match format {
                Format::Json => json(&gap),
                Format::Md => {
                    let list = |v: &[Spectrum]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ");
                    let mut out = format!("candidates: {}\nmissing: {}\n", gap.candidates.len(), list(&gap.missing));
                    match &gap.extra_candidates {
                        Some(extra) => {
                            let _ = writeln!(out, "not in printed list: {}", list(extra));
                        }
                        None => out.push_str("no printed list for this class\n"),
                    }
                    out
                }
            })
        }
        Command::CheckExamples { format } => {
            let rows = check_slope_examples()?;
            Ok(match format {
                Format::Json => json(&rows),
                Format::Md => slope_examples_markdown(&rows),
            })
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
    match run(cli.command) {
        Ok(text) => {
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Constraint(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
