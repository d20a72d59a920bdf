use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use posetmat::enumerate::MAX_ENUMERATION_ORDER;
use posetmat::io::catalog::write_catalog;
use posetmat::io::{
    eval_recipe, parse_matrix, parse_recipe, parse_table, render_index, serialize_matrix,
    serialize_table, to_dot, SymbolTable,
};
use posetmat::{
    are_isomorphic, canonical_form, compose, composition_closure, count_table, dual,
    enumerate_oracle, hasse_edges, induced_subposet, is_connected, maximal_elements,
    minimal_elements, validate_axioms, with_workers, ClassCatalog, CompositionKind,
    CompositionResult, Error, LabelSet, Methods, PosetMatrix,
};

const DOMAIN_NEGATIVE: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "posetmat", version, about = "Poset matrix toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the poset axioms and lower-triangular storage
    Validate { file: PathBuf },
    /// List minimal and maximal elements
    Minmax { file: PathBuf },
    /// Print the dual matrix
    Dual { file: PathBuf },
    /// Exit 0 if the poset is connected, 1 otherwise
    Connected { file: PathBuf },
    /// Print the Hasse diagram edges
    Hasse {
        file: PathBuf,
        /// Emit Graphviz DOT instead of "lower upper" lines
        #[arg(long)]
        dot: bool,
    },
    /// Print the principal submatrix on a set of labels
    Sub {
        file: PathBuf,
        /// Comma-separated element labels
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
    },
    /// Compose two matrices
    Compose {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_parser = parse_kind)]
        op: CompositionKind,
        /// 1-based position in the left matrix
        #[arg(long)]
        at: usize,
        /// Replace provenance labels by 1..n
        #[arg(long)]
        relabel: bool,
    },
    /// Evaluate a recipe such as "A sq@2 C2"
    Eval {
        expr: String,
        /// Directory of NAME.txt matrix files
        #[arg(long)]
        defs: Option<PathBuf>,
        #[arg(long)]
        relabel: bool,
    },
    /// List the isomorphism classes of one order
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value = "oracle", value_parser = parse_methods)]
        method: Methods,
        /// Write matrix files and index.txt here
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Worker threads, 0 for all cores
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Tabulate class counts per order
    Count {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value = "oracle", value_parser = parse_methods)]
        method: Methods,
        /// Exit 1 if a count differs from the known value
        #[arg(long)]
        expect: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Print the canonical key
    Canon { file: PathBuf },
    /// Exit 0 if the two posets are isomorphic, 1 otherwise
    Iso { first: PathBuf, second: PathBuf },
}

fn parse_kind(s: &str) -> Result<CompositionKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_methods(s: &str) -> Result<Methods, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_input(path: &Path) -> Result<String, Error> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
    }
}

fn load(path: &Path) -> Result<PosetMatrix, Error> {
    parse_matrix(&read_input(path)?)
}

fn verdict(ok: bool) -> u8 {
    if ok {
        0
    } else {
        DOMAIN_NEGATIVE
    }
}

fn print_composition(
    out: &mut impl Write,
    result: CompositionResult,
    relabel: bool,
) -> Result<u8, Error> {
    let result = if relabel { result.relabeled() } else { result };
    write!(out, "{}", serialize_table(&result.matrix))?;
    if result.is_valid() {
        Ok(0)
    } else {
        eprintln!("not a poset matrix: {}", result.report);
        Ok(DOMAIN_NEGATIVE)
    }
}

fn catalogs(order: usize, method: posetmat::Method) -> Result<ClassCatalog, Error> {
    match method {
        posetmat::Method::Oracle => enumerate_oracle(order),
        posetmat::Method::Compose => composition_closure(order, &CompositionKind::ALL)?
            .pop()
            .ok_or(Error::OrderOutOfRange {
                order,
                min: 1,
                max: MAX_ENUMERATION_ORDER,
            }),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Validate { file } => {
            let table = parse_table(&read_input(&file)?)?;
            let report = validate_axioms(&table);
            writeln!(out, "{report}")?;
            Ok(verdict(report.is_poset() && report.lower_triangular_ok))
        }
        Command::Minmax { file } => {
            let m = load(&file)?;
            writeln!(
                out,
                "minimal: {}",
                minimal_elements(&m).labels(&m).join(" ")
            )?;
            writeln!(
                out,
                "maximal: {}",
                maximal_elements(&m).labels(&m).join(" ")
            )?;
            Ok(0)
        }
        Command::Dual { file } => {
            write!(out, "{}", serialize_matrix(&dual(&load(&file)?)))?;
            Ok(0)
        }
        Command::Connected { file } => {
            let connected = is_connected(&load(&file)?);
            writeln!(
                out,
                "{}",
                if connected {
                    "connected"
                } else {
                    "disconnected"
                }
            )?;
            Ok(verdict(connected))
        }
        Command::Hasse { file, dot } => {
            let m = load(&file)?;
            if dot {
                write!(out, "{}", to_dot(&m))?;
            } else {
                for (lower, upper) in hasse_edges(&m) {
                    writeln!(out, "{} {}", m.label(lower), m.label(upper))?;
                }
            }
            Ok(0)
        }
        Command::Sub { file, labels } => {
            let m = load(&file)?;
            let mut subset = LabelSet::empty();
            for label in &labels {
                let position = m
                    .position_of(label)
                    .ok_or_else(|| Error::InvalidLabels(format!("no element labeled {label:?}")))?;
                subset.insert(position);
            }
            write!(out, "{}", serialize_matrix(&induced_subposet(&m, subset)?))?;
            Ok(0)
        }
        Command::Compose {
            left,
            right,
            op,
            at,
            relabel,
        } => {
            let result = compose(op, &load(&left)?, at, &load(&right)?)?;
            print_composition(&mut out, result, relabel)
        }
        Command::Eval {
            expr,
            defs,
            relabel,
        } => {
            let mut symbols = SymbolTable::with_builtins();
            if let Some(dir) = defs {
                symbols.load_dir(&dir)?;
            }
            let parsed = parse_recipe(&expr)?;
            print_composition(&mut out, eval_recipe(&parsed, &symbols)?, relabel)
        }
        Command::Enumerate {
            order,
            connected,
            method,
            emit,
            jobs,
        } => {
            let mut built = Vec::new();
            for &m in method.list() {
                let catalog = with_workers(jobs, || catalogs(order, m))??;
                let catalog = if connected {
                    catalog.connected_only()
                } else {
                    catalog
                };
                built.push((m, catalog));
            }
            for (m, catalog) in &built {
                if let Some(dir) = &emit {
                    let dir = if built.len() > 1 {
                        dir.join(m.name())
                    } else {
                        dir.clone()
                    };
                    write_catalog(&dir, catalog)?;
                }
                if built.len() > 1 {
                    writeln!(out, "# method {}", m.name())?;
                }
                write!(out, "{}", render_index(catalog))?;
            }
            let agree = built.windows(2).all(|w| w[0].1.keys().eq(w[1].1.keys()));
            if !agree {
                eprintln!("oracle and composition catalogs differ");
            }
            Ok(verdict(agree))
        }
        Command::Count {
            max_order,
            method,
            expect,
            jobs,
        } => {
            let table = with_workers(jobs, || count_table(max_order, method))??;
            write!(out, "{table}")?;
            Ok(verdict(!expect || table.all_match()))
        }
        Command::Canon { file } => {
            writeln!(out, "{}", canonical_form(&load(&file)?))?;
            Ok(0)
        }
        Command::Iso { first, second } => {
            let iso = are_isomorphic(&load(&first)?, &load(&second)?);
            writeln!(out, "{}", if iso { "isomorphic" } else { "not isomorphic" })?;
            Ok(verdict(iso))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_usage() {
                USAGE
            } else {
                DOMAIN_NEGATIVE
            })
        }
    }
}
