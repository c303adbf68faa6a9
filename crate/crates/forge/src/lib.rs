//! Command-line front end. [`run`] parses arguments and returns the exit
//! code and both output streams, so the binary only forwards them.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use clap::{Parser, Subcommand, ValueEnum};
use definability_core::algnum::parse_algebraic;
use definability_core::chaitin::{self, DiophantineInstance};
use definability_core::codec::{self, FiniteSequence};
use definability_core::diagonal::{self, curated_stream, NumberStream};
use definability_core::digits::DigitStream;
use definability_core::enumerator;
use definability_core::overtake::{self, SequenceTable};
use definability_core::parse::parse_formula;
use definability_core::qe;
use definability_core::rational::{self, Rational};
use definability_core::term::GeneratorKind;

/// Digits per output line for long digit strings.
const WRAP: usize = 50;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] definability_core::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad table: {0}")]
    Table(String),
    /// Flags that parse but do not fit together.
    #[error("{0}")]
    Usage(&'static str),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Io { .. } => "IoError",
            CliError::Table(_) => "TableError",
            CliError::Usage(_) => "UsageError",
        }
    }
}

/// Digit stream shared between threads.
#[derive(Clone, Debug)]
pub struct SharedDigitStream(Arc<Mutex<DigitStream>>);

impl SharedDigitStream {
    pub fn new(stream: DigitStream) -> Self {
        SharedDigitStream(Arc::new(Mutex::new(stream)))
    }

    pub fn digit(&self, n: u64) -> u8 {
        self.0.lock().expect("digit stream lock").digit(n)
    }

    pub fn prefix(&self, count: usize) -> Vec<u8> {
        self.0.lock().expect("digit stream lock").prefix(count)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "definability-forge", version, about = "Definable relations and numbers over the reals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Comma-separated generator keywords.
#[derive(Clone, Debug)]
struct Generators(Vec<GeneratorKind>);

fn parse_generators(s: &str) -> Result<Generators, String> {
    s.split(',')
        .map(|w| GeneratorKind::from_keyword(w.trim()).ok_or_else(|| format!("unknown generator {w:?}")))
        .collect::<Result<_, _>>()
        .map(Generators)
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Relation terms in enumeration order.
    Enumerate {
        #[arg(long, value_parser = parse_generators)]
        generators: Generators,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Instruction tuples `k,opcode,a,b,arity`.
    Instructions {
        #[arg(long, value_parser = parse_generators)]
        generators: Generators,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Block boundaries k_1, k_2, ...
    Boundaries {
        #[arg(long, value_parser = parse_generators)]
        generators: Generators,
        #[arg(long)]
        blocks: usize,
    },
    /// Truth of a closed formula.
    Decide {
        #[arg(long)]
        formula: String,
    },
    /// Quantifier-free equivalent of a formula.
    Eliminate {
        #[arg(long)]
        formula: String,
    },
    /// Components of the set defined by a formula in one free variable.
    Describe {
        #[arg(long)]
        formula: String,
    },
    /// Decimal digits of a number in (0, 1).
    Digits {
        #[arg(long)]
        value: String,
        #[arg(long)]
        count: usize,
    },
    /// Digit interleaving of several numbers in (0, 1).
    Interleave {
        /// Repeat once per entry.
        #[arg(long, required = true, allow_hyphen_values = true)]
        value: Vec<String>,
        /// Print this many digits instead of the exact value.
        #[arg(long)]
        count: Option<usize>,
        /// Map each entry into (0, 1) first.
        #[arg(long)]
        encode: bool,
    },
    /// Splits a rational into the entries it interleaves.
    Deinterleave {
        #[arg(long)]
        value: String,
        #[arg(long)]
        length: usize,
        /// Undo the map into (0, 1) as well.
        #[arg(long)]
        decode: bool,
    },
    /// Diagonal number against enumerated singletons, or a curated list
    /// when no generators are given.
    Diagonal {
        #[arg(long, value_parser = parse_generators)]
        generators: Option<Generators>,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The overtaking sequence of a table of sequences.
    Overtake {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Between increasing index lists and 0/1 digit strings.
    Bridge {
        #[arg(long, value_delimiter = ',', conflicts_with = "digits", required_unless_present = "digits")]
        indices: Vec<u64>,
        #[arg(long)]
        digits: Option<String>,
        #[arg(long)]
        count: u64,
        /// The index list is complete; later digits are 0.
        #[arg(long)]
        finite: bool,
    },
    /// Bits and lower approximations from a parametric Diophantine equation.
    Omega {
        #[arg(long)]
        poly: String,
        /// Search bound M.
        #[arg(long)]
        count: Option<u64>,
        #[arg(long = "param-N")]
        param_n: Option<u64>,
        #[arg(long)]
        cap: Option<u64>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(CliError::Usage(why)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {why}\n") },
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}: {e}\n", e.name()) },
    }
}

type Out = Result<String, CliError>;

fn dispatch(cmd: Command) -> Out {
    match cmd {
        Command::Enumerate { generators, count, format } => enumerate(&generators.0, count, format),
        Command::Instructions { generators, count, format } => instructions(&generators.0, count, format),
        Command::Boundaries { generators, blocks } => {
            let ks = enumerator::block_boundaries(&generators.0, blocks).0;
            Ok(lines(ks.iter()))
        }
        Command::Decide { formula } => {
            let f = parse_formula(&formula)?;
            Ok(format!("{}\n", qe::decide(&f.formula)?))
        }
        Command::Eliminate { formula } => {
            let f = parse_formula(&formula)?;
            let g = qe::eliminate(&f.formula)?;
            Ok(format!("{}\n", g.render(&|v| f.name(v))))
        }
        Command::Describe { formula } => {
            let f = parse_formula(&formula)?;
            Ok(format!("{}\n", qe::describe_unary(&f.formula)?.render()))
        }
        Command::Digits { value, count } => {
            let x = parse_algebraic(&value)?;
            let s = SharedDigitStream::new(DigitStream::algebraic(&x)?);
            Ok(wrap_digits(&s.prefix(count)))
        }
        Command::Interleave { value, count, encode } => interleave(&value, count, encode),
        Command::Deinterleave { value, length, decode } => {
            let z = rational::parse(&value)?;
            let out = if decode {
                codec::decode_rational(&z, length)?.map(|xs| codec::render_rationals(&xs))
            } else {
                codec::deinterleave(&z, length)?.map(|s| s.to_string())
            };
            Ok(format!("{}\n", out.as_deref().unwrap_or("empty")))
        }
        Command::Diagonal { generators, count, format } => diagonal(generators.map(|g| g.0), count, format),
        Command::Overtake { table, count, format } => overtake(&table, count, format),
        Command::Bridge { indices, digits, count, finite } => bridge(&indices, digits.as_deref(), count, finite),
        Command::Omega { poly, count, param_n, cap } => omega(&poly, count, param_n, cap),
    }
}

fn lines<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.fold(String::new(), |mut s, x| {
        let _ = writeln!(s, "{x}");
        s
    })
}

fn wrap_digits(ds: &[u8]) -> String {
    let mut s = String::new();
    for chunk in ds.chunks(WRAP) {
        s.extend(chunk.iter().map(|&d| char::from(b'0' + d)));
        s.push('\n');
    }
    s
}

fn csv_out(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Out {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Table(e.to_string());
    if !header.is_empty() {
        w.write_record(header).map_err(fail)?;
    }
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Table(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn enumerate(gens: &[GeneratorKind], count: usize, format: Format) -> Out {
    let terms = enumerator::enumerate(gens, count);
    let rows = terms.iter().enumerate().map(|(i, t)| vec![(i + 1).to_string(), t.arity().to_string(), t.render()]);
    match format {
        Format::Text => Ok(lines(terms.iter().enumerate().map(|(i, t)| format!("{} {t}", i + 1)))),
        Format::Csv => csv_out(&["k", "arity", "term"], rows),
    }
}

fn instructions(gens: &[GeneratorKind], count: usize, format: Format) -> Out {
    let rows = enumerator::encode_instructions(gens, count).into_iter().enumerate().map(|(i, ins)| {
        let (o, a, b, ar) = ins.tuple();
        vec![(i + 1).to_string(), o.to_string(), a.to_string(), b.to_string(), ar.to_string()]
    });
    let header: &[&str] = match format {
        Format::Text => &[],
        Format::Csv => &["k", "opcode", "a", "b", "arity"],
    };
    csv_out(header, rows)
}

fn interleave(values: &[String], count: Option<usize>, encode: bool) -> Out {
    let xs = values.iter().map(|v| parse_algebraic(v)).collect::<Result<Vec<_>, _>>()?;
    let rationals: Option<Vec<Rational>> = xs.iter().map(|x| x.as_rational().cloned()).collect();
    match (count, rationals) {
        (None, Some(qs)) => {
            let z = if encode { codec::encode_rational(&qs)? } else { codec::interleave_rational(&qs)? };
            Ok(format!("{}\n", rational::render(&z)))
        }
        (None, None) => Err(CliError::Usage("--count is required for irrational entries")),
        (Some(n), _) => {
            let s = FiniteSequence::new(xs)?;
            let mut z = if encode { codec::encode(&s)? } else { codec::interleave(&s)? };
            Ok(wrap_digits(&z.prefix(n)))
        }
    }
}

fn diagonal(gens: Option<Vec<GeneratorKind>>, count: usize, format: Format) -> Out {
    let stream = match gens {
        Some(g) => NumberStream::Enumerated(g),
        None => curated_stream(),
    };
    let d = diagonal::diagonal_number(&stream, count)?;
    match format {
        Format::Text => {
            let digits: String = d.digits.iter().map(|&x| char::from(b'0' + x)).collect();
            let mut s = format!("0.{digits}\n");
            for c in &d.certificates {
                let _ = writeln!(s, "{} ({})", c.render(), c.provenance);
            }
            Ok(s)
        }
        Format::Csv => csv_out(
            &["n", "x_n", "provenance", "digit", "alpha"],
            d.certificates.iter().map(|c| {
                vec![
                    c.n.to_string(),
                    c.value.render(),
                    c.provenance.to_string(),
                    c.digit_of_value.to_string(),
                    c.alpha.to_string(),
                ]
            }),
        ),
    }
}

/// Reads a table of naturals; row `i` holds element `i` of every sequence.
/// Lines starting with `#` are skipped.
pub fn read_table(path: &Path) -> Result<SequenceTable, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Table(e.to_string()))?;
        let row = record
            .iter()
            .map(|f| f.parse::<u64>().map_err(|_| CliError::Table(format!("row {}: {f:?} is not a natural", i + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(SequenceTable::new(rows)?)
}

fn overtake(path: &Path, count: Option<usize>, format: Format) -> Out {
    let t = read_table(path)?;
    let n = count.unwrap_or_else(|| t.n_max());
    let ys = overtake::overtake_sequence(&t, n)?;
    match format {
        Format::Text => Ok(lines(ys.iter())),
        Format::Csv => {
            csv_out(&["n", "y"], ys.iter().enumerate().map(|(i, y)| vec![(i + 1).to_string(), y.to_string()]))
        }
    }
}

fn bridge(indices: &[u64], digits: Option<&str>, count: u64, finite: bool) -> Out {
    match digits {
        None => {
            let ds = if finite {
                overtake::number_from_finite_indices(indices, count)?
            } else {
                overtake::number_from_indices(indices, count)?
            };
            Ok(wrap_digits(&ds))
        }
        Some(text) => {
            let ds: Vec<u8> = text
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect::<Option<_>>()
                .ok_or(CliError::Usage("--digits must contain decimal digits only"))?;
            let bound = ds.len() as u64;
            let mut s = DigitStream::from_fn(move |n| ds.get(n as usize - 1).copied().unwrap_or(0));
            let ks = overtake::indices_from_number(&mut s, count as usize, bound)?;
            let parts: Vec<String> = ks.iter().map(u64::to_string).collect();
            Ok(format!("{}\n", parts.join(",")))
        }
    }
}

fn omega(poly: &str, count: Option<u64>, param_n: Option<u64>, cap: Option<u64>) -> Out {
    let f = DiophantineInstance::parse(poly)?;
    match (param_n, count, cap) {
        (Some(n), _, Some(cap)) => Ok(match chaitin::stabilization_bound(&f, n, cap) {
            Some(m) => format!("{m}\n"),
            None => String::from("none\n"),
        }),
        (Some(n), Some(m), None) => Ok(match chaitin::bounded_bit(&f, m, n) {
            Some(w) => {
                let parts: Vec<String> =
                    f.search_names().iter().zip(&w).map(|(name, x)| format!("{name}={x}")).collect();
                format!("1 {}\n", parts.join(" "))
            }
            None => String::from("0\n"),
        }),
        (None, Some(m), _) => Ok(format!("{}\n", chaitin::omega_approx(&f, m).render())),
        _ => Err(CliError::Usage("omega needs --count, or --param-N with --count or --cap")),
    }
}
