//! `dynkin-hh`: bigraded Hochschild cohomology tables for ADE Landau-Ginzburg orbifolds.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dynkin_hh::closed_forms::{enumerate_closed_form, EXTRAPOLATED};
use dynkin_hh::oracle::hh_bigraded_oracle;
use dynkin_hh::orbifold::fully_twisted_count;
use dynkin_hh::quiver::{dynkin, trivial_extension, Orientation};
use dynkin_hh::table::BigradedTable;
use dynkin_hh::{hh_table, Error, Family, HhOptions, LgModel};

use output::{Document, Format};

const EXIT_MISMATCH: u8 = 1;
const EXIT_UNCERTIFIED: u8 = 2;
const EXIT_MODEL: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "dynkin-hh", version, about = "Bigraded Hochschild cohomology of ADE Landau-Ginzburg orbifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate HH^t(...)^s over a window of degrees.
    Hh(TableArgs),
    /// The same table, labelled as symplectic cohomology of the Milnor fiber.
    Sh(TableArgs),
    /// Compare the orbifold table with the closed forms, the bar-complex oracle or a saved document.
    Compare(CompareArgs),
    /// List the sectors (elements of ker χ) with their fixed sets.
    Sectors(SectorArgs),
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// A, D, E6, E7 or E8.
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Rank; may be omitted for E types.
    #[arg(long)]
    rank: Option<usize>,
    /// The dimension n of the Milnor fiber.
    #[arg(long = "dim-n", value_parser = clap::value_parser!(u64).range(1..=64))]
    dim_n: u64,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Lowest degree t (default -20).
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<i64>,
    /// Highest degree t (default n+1).
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<i64>,
    /// Attach a label to every class.
    #[arg(long)]
    labels: bool,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Against {
    ClosedForm,
    Oracle,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Degree window "LO,HI" (default "-30,n+1").
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<(i64, i64)>,
    #[arg(long, value_enum, default_value_t = Against::ClosedForm, conflicts_with = "against_file")]
    against: Against,
    /// A JSON document written by `hh --format json`.
    #[arg(long)]
    against_file: Option<PathBuf>,
    /// Longest bar cochain used by the oracle.
    #[arg(long, default_value_t = 4)]
    r_max: usize,
    /// Largest Dynkin rank accepted in oracle mode.
    #[arg(long, default_value_t = 8)]
    oracle_max_rank: usize,
}

#[derive(Args, Debug)]
struct SectorArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family {s:?}; expected A, D, E6, E7 or E8"))
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("window {s:?} must look like LO,HI"))?;
    let num = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("window bound {x:?}: {e}"));
    Ok((num(lo)?, num(hi)?))
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RMaxTooSmall(_) => EXIT_UNCERTIFIED,
            _ => EXIT_MODEL,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

impl ModelArgs {
    fn rank(&self) -> Result<usize, Failure> {
        match (self.family, self.rank) {
            (_, Some(r)) => Ok(r),
            (Family::E6, None) => Ok(6),
            (Family::E7, None) => Ok(7),
            (Family::E8, None) => Ok(8),
            _ => Err(Failure {
                code: EXIT_USAGE,
                message: format!("--rank is required for type {}", self.family.name()),
            }),
        }
    }

    fn n(&self) -> usize {
        self.dim_n as usize
    }

    fn build(&self) -> Result<LgModel, Failure> {
        Ok(LgModel::preset(self.family, self.rank()?, self.n())?)
    }

    fn tag(&self) -> Result<String, Failure> {
        let r = self.rank()?;
        Ok(match self.family {
            Family::A | Family::D => format!("{}{r}", self.family.name()),
            _ => self.family.name().to_string(),
        })
    }
}

fn table_window(args: &TableArgs) -> (i64, i64) {
    let n = args.model.n() as i64;
    (args.t_min.unwrap_or(-20), args.t_max.unwrap_or(n + 1))
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn cmd_hh(args: &TableArgs, symplectic: bool) -> CmdResult {
    let model = args.model.build()?;
    let (lo, hi) = table_window(args);
    let opts = HhOptions {
        with_labels: args.labels,
        parallel: true,
    };
    let table = hh_table(&model, lo, hi, opts)?;
    let doc = Document::from_table(&table);
    let n = args.model.n();
    let title = if symplectic {
        let fiber = if (args.model.family, args.model.rank()?) == (Family::A, 1) {
            format!("T*S^{n}")
        } else {
            format!("M_{}^{}", args.model.tag()?, 2 * n)
        };
        format!("SH*({fiber}) as HH* of the wrapped Fukaya category; degree t, weight s")
    } else {
        format!("HH^t(...)^s of {}", model.describe())
    };
    match args.format {
        Format::Json => emit(&doc.to_json())?,
        Format::Csv if symplectic => emit(&format!("# {title}\n{}", doc.to_csv()))?,
        _ => emit(&doc.render(args.format, &title))?,
    }
    Ok(if table.certified { 0 } else { EXIT_UNCERTIFIED })
}

fn report_mismatch(ours: &BigradedTable, theirs: &BigradedTable, name: &str) -> u8 {
    match ours.first_mismatch(theirs) {
        None => 0,
        Some(m) => {
            println!("mismatch at (t, s) = ({}, {}): hh = {}, {name} = {}", m.t, m.s, m.left, m.right);
            EXIT_MISMATCH
        }
    }
}

fn cmd_compare(args: &CompareArgs) -> CmdResult {
    let n = args.model.n();
    let rank = args.model.rank()?;
    let model = args.model.build()?;

    if let Some(path) = &args.against_file {
        let text = fs::read_to_string(path)?;
        let doc = Document::from_json(&text).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("{}: {e}", path.display()),
        })?;
        let (lo, hi) = args.window.unwrap_or((doc.meta.t_min, doc.meta.t_max));
        let ours = hh_table(&model, lo, hi, HhOptions::default())?;
        let theirs = doc.to_table().filtered(|t, _| (lo..=hi).contains(&t));
        let code = report_mismatch(&ours, &theirs, "file");
        if code == 0 {
            println!("agree with {} on t in [{lo}, {hi}] ({} classes)", path.display(), ours.total());
        }
        return Ok(code);
    }

    let (lo, hi) = args.window.unwrap_or((-30, n as i64 + 1));
    match args.against {
        Against::ClosedForm => {
            let ours = hh_table(&model, lo, hi, HhOptions::default())?;
            let theirs = enumerate_closed_form(args.model.family, rank, n, lo, hi, false)?;
            let code = report_mismatch(&ours, &theirs, "closed form");
            if code == 0 {
                println!("agree with the closed forms on t in [{lo}, {hi}] ({} classes)", ours.total());
                if theirs.meta.flags.iter().any(|f| f == EXTRAPOLATED) {
                    println!("note: closed forms for this case are extrapolated from the n >= 2 lists");
                }
            }
            Ok(code)
        }
        Against::Oracle => {
            if rank > args.oracle_max_rank {
                return Err(Failure {
                    code: EXIT_UNCERTIFIED,
                    message: format!("rank {rank} exceeds --oracle-max-rank {}", args.oracle_max_rank),
                });
            }
            let quiver = dynkin(args.model.family, rank, &Orientation::Linear)?;
            let oracle = hh_bigraded_oracle(&trivial_extension(&quiver, n)?, args.r_max)?;
            let keep = |t: i64, s: i64| (lo..=hi).contains(&t) && oracle.is_certified(t, s);
            let ours = hh_table(&model, lo, hi, HhOptions::default())?.filtered(keep);
            let mut theirs = BigradedTable::new(lo, hi, ours.meta.clone());
            for (&(t, s), &d) in oracle.dims.iter().filter(|(k, _)| keep(k.0, k.1)) {
                for _ in 0..d {
                    theirs.add(t, s, None);
                }
            }
            if lo > hi {
                println!("empty window: nothing can be certified");
                return Ok(EXIT_UNCERTIFIED);
            }
            let code = report_mismatch(&ours, &theirs, "oracle");
            if code == 0 {
                println!(
                    "agree with the bar-complex oracle on t in [{lo}, {hi}], 0 <= t - s <= {} ({} classes)",
                    args.r_max - 1,
                    ours.total()
                );
            }
            Ok(code)
        }
    }
}

#[derive(serde::Serialize)]
struct SectorRow {
    id: usize,
    fixed: Vec<usize>,
    codim: usize,
    tuple: String,
    fully_twisted: bool,
}

fn cmd_sectors(args: &SectorArgs) -> CmdResult {
    let model = args.model.build()?;
    let sectors = model.sectors()?;
    let rows: Vec<SectorRow> = sectors
        .iter()
        .map(|s| SectorRow {
            id: s.id,
            fixed: s.fixed_indices(),
            codim: s.codim,
            tuple: s.display_tuple(),
            fully_twisted: s.is_fully_twisted(),
        })
        .collect();
    match args.format {
        Format::Json => {
            let v = serde_json::to_value(&rows).expect("rows serialize");
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("value serializes")))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "fixed", "codim", "tuple", "fully_twisted"]).expect("in-memory write");
            for (r, s) in rows.iter().zip(&sectors) {
                w.write_record([r.id.to_string(), s.fixed_set_string(), r.codim.to_string(), r.tuple.clone(), r.fully_twisted.to_string()])
                    .expect("in-memory write");
            }
            emit(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"))?;
        }
        Format::Pretty => {
            let mut out = format!("# sectors of {}\n", model.describe());
            out.push_str(&format!("# {} sectors, {} with empty fixed set\n", rows.len(), fully_twisted_count(&model)?));
            let fixed: Vec<String> = sectors.iter().map(|s| s.fixed_set_string()).collect();
            let wf = fixed.iter().map(String::len).max().unwrap_or(0).max(5);
            let wi = rows.len().to_string().len().max(2);
            out.push_str(&format!("{:>wi$}  {:<wf$}  codim  tuple\n", "id", "fixed"));
            for (r, f) in rows.iter().zip(&fixed) {
                let flag = if r.fully_twisted { "  [fully twisted]" } else { "" };
                out.push_str(&format!("{:>wi$}  {:<wf$}  {:>5}  {}{flag}\n", r.id, f, r.codim, r.tuple));
            }
            emit(&out)?;
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Hh(a) => cmd_hh(a, false),
        Command::Sh(a) => cmd_hh(a, true),
        Command::Compare(a) => cmd_compare(a),
        Command::Sectors(a) => cmd_sectors(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
