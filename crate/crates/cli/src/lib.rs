//! Command-line front end: argument parsing, dispatch and file emission.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parry_pascal::checks::{verify_all, Status, VerifyConfig};
use parry_pascal::hausdorff::{convergence_report, write_convergence_csv, DEFAULT_SEGMENT_SPACING};
use parry_pascal::star::{a0_approx, an_approx};
use parry_pascal::triangle::u_set;
use parry_pascal::{
    BetaExpansionSpec, BlockMode, CustomLinearSystem, Error, NumerationSystem, ResidueSpec, Result, TriangleBlock, Word,
};

#[derive(Parser, Debug)]
#[command(
    name = "parry-pascal",
    version,
    about = "Pascal-like triangles of Parry numeration systems"
)]
pub struct Cli {
    /// Worker threads for parallel sections (default: available cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print β, the expansions of 1, the first terms of U, C_β and the automaton
    Describe {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        custom: CustomArgs,
        /// Number of terms of U to print
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Convert between integers and their greedy representations
    Convert {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        custom: CustomArgs,
        #[command(subcommand)]
        direction: Direction,
    },
    /// Print a block of the triangle of binomial coefficients of words
    Triangle {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long, default_value_t = 8)]
        cols: usize,
        /// Reduce entries modulo this prime
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the square set of entries congruent to the residue
    Uset {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        residue: ResidueArgs,
        #[arg(long, default_value_t = 9)]
        n: usize,
        /// Pixels per cell side
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the segment approximation of the limit set
    Segments {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        residue: ResidueArgs,
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
        #[arg(long, default_value_t = 4)]
        iters: usize,
        #[arg(long, default_value_t = 0.0015)]
        stroke: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hausdorff distances from the square sets to the segment approximation
    Converge {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        residue: ResidueArgs,
        /// Smallest level
        #[arg(long, default_value_t = 4)]
        from: usize,
        /// Largest level
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
        #[arg(long, default_value_t = 4)]
        iters: usize,
        /// Sampling step along segments
        #[arg(long, default_value_t = DEFAULT_SEGMENT_SPACING)]
        spacing: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the property suites
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        residue: ResidueArgs,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Direction {
    /// Integer to representation
    Rep { n: u64 },
    /// Representation to integer
    Val { word: String },
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// Digits of d_β(1): `t1,…,tm` or `t1,…,tm;period`
    #[arg(long, default_value = "1,1")]
    pub dbeta: String,
    /// Bisection tolerance for β
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct CustomArgs {
    /// Recurrence coefficients a_0,…,a_{k-1} of a custom linear system
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, requires = "custom_init")]
    pub custom_coeffs: Option<Vec<i64>>,
    /// Initial values U(0),…,U(k-1) of a custom linear system
    #[arg(long, value_delimiter = ',', requires = "custom_coeffs")]
    pub custom_init: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
pub struct ResidueArgs {
    /// Prime modulus
    #[arg(long = "mod", default_value_t = 2)]
    pub modulus: u64,
    /// Residue class, between 1 and the modulus minus 1
    #[arg(long, default_value_t = 1)]
    pub residue: u64,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pbm,
    Svg,
    Csv,
    Json,
}

impl SystemArgs {
    fn build(&self) -> Result<NumerationSystem> {
        let spec: BetaExpansionSpec = parry_pascal::numeration::parse_beta_spec(&self.dbeta)?;
        match self.tol {
            Some(tol) => NumerationSystem::with_tolerance(spec, tol),
            None => NumerationSystem::new(spec),
        }
    }
}

impl CustomArgs {
    fn build(&self) -> Result<Option<CustomLinearSystem>> {
        match (&self.custom_coeffs, &self.custom_init) {
            (Some(c), Some(i)) => Ok(Some(CustomLinearSystem::new(c.clone(), i.clone())?)),
            _ => Ok(None),
        }
    }
}

impl ResidueArgs {
    fn build(&self) -> Result<ResidueSpec> {
        ResidueSpec::new(self.modulus, self.residue)
    }
}

impl OutputArgs {
    fn format(&self, allowed: &[Format], default: Format) -> Result<Format> {
        let format = self.format.unwrap_or(default);
        if allowed.contains(&format) {
            Ok(format)
        } else {
            Err(Error::InvalidArgument(format!(
                "format {format:?} is not available here"
            )))
        }
    }

    /// Runs `emit` on the output file, or on `stdout` when none is given.
    fn emit(&self, stdout: &mut dyn Write, emit: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
        match &self.out {
            Some(path) => {
                let mut file = BufWriter::new(File::create(path)?);
                emit(&mut file)?;
                file.flush()?;
                Ok(())
            }
            None => emit(stdout),
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code: 0 on success, 1 on invalid input or failed checks, 2 on I/O errors.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut buffer = Vec::new();
    let result = match cli.threads {
        Some(0) => Err(Error::InvalidArgument("--threads must be at least 1".into())),
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| execute(&cli.command, &mut buffer)),
            Err(e) => Err(Error::InvalidArgument(e.to_string())),
        },
        None => execute(&cli.command, &mut buffer),
    };
    let result = result.and_then(|code| {
        stdout.write_all(&buffer)?;
        stdout.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_io() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Describe { system, custom, terms } => {
            match custom.build()? {
                Some(mut sys) => describe_custom(&mut sys, *terms, stdout)?,
                None => describe(&system.build()?, *terms, stdout)?,
            }
            Ok(0)
        }
        Command::Convert {
            system,
            custom,
            direction,
        } => {
            let line = match custom.build()? {
                Some(mut sys) => match direction {
                    Direction::Rep { n } => sys.rep(*n)?.to_plain(),
                    Direction::Val { word } => sys.val(&word.parse()?)?.to_string(),
                },
                None => {
                    let sys = system.build()?;
                    match direction {
                        Direction::Rep { n } => sys.rep(*n).to_plain(),
                        Direction::Val { word } => {
                            let w: Word = word.parse()?;
                            if !sys.is_in_language(&w, true) {
                                return Err(Error::NotInLanguage(w.to_string()));
                            }
                            sys.val(&w)?.to_string()
                        }
                    }
                }
            };
            writeln!(stdout, "{line}")?;
            Ok(0)
        }
        Command::Triangle {
            system,
            rows,
            cols,
            modulus,
            output,
        } => {
            let sys = system.build()?;
            let mode = match modulus {
                Some(q) => {
                    ResidueSpec::new(*q, 1)?;
                    BlockMode::Residue(*q)
                }
                None => BlockMode::Exact,
            };
            let block = TriangleBlock::new(&sys, *rows, *cols, mode)?;
            match output.format {
                None => output.emit(stdout, |w| write_table(&block, w))?,
                Some(_) => {
                    output.format(&[Format::Csv], Format::Csv)?;
                    output.emit(stdout, |w| block.write_csv(w))?
                }
            }
            Ok(0)
        }
        Command::Uset {
            system,
            residue,
            n,
            scale,
            output,
        } => {
            let sys = system.build()?;
            if *scale == 0 {
                return Err(Error::InvalidArgument("scale must be at least 1".into()));
            }
            let set = u_set(&sys, *n, residue.build()?)?;
            match output.format(&[Format::Pbm, Format::Csv], Format::Pbm)? {
                Format::Csv => output.emit(stdout, |w| set.write_csv(w))?,
                _ => output.emit(stdout, |w| set.write_pbm(*scale, w))?,
            }
            Ok(0)
        }
        Command::Segments {
            system,
            residue,
            maxlen,
            iters,
            stroke,
            output,
        } => {
            let sys = system.build()?;
            let a0 = a0_approx(&sys, *maxlen, residue.build()?)?;
            let set = an_approx(&a0, *iters, &sys);
            match output.format(&[Format::Svg, Format::Json], Format::Svg)? {
                Format::Json => output.emit(stdout, |w| set.write_json(w))?,
                _ => output.emit(stdout, |w| set.write_svg(*stroke, w))?,
            }
            Ok(0)
        }
        Command::Converge {
            system,
            residue,
            from,
            n,
            maxlen,
            iters,
            spacing,
            output,
        } => {
            let sys = system.build()?;
            if from > n {
                return Err(Error::InvalidArgument(format!("empty level range {from}..={n}")));
            }
            output.format(&[Format::Csv], Format::Csv)?;
            let levels: Vec<usize> = (*from..=*n).collect();
            let rows = convergence_report(&sys, residue.build()?, &levels, *maxlen, *iters, *spacing)?;
            output.emit(stdout, |w| write_convergence_csv(&rows, w))?;
            Ok(0)
        }
        Command::Verify {
            system,
            residue,
            maxlen,
        } => {
            let sys = system.build()?;
            let cfg = VerifyConfig {
                maxlen: *maxlen,
                residue: residue.build()?,
                ..VerifyConfig::default()
            };
            let outcomes = verify_all(&sys, &cfg)?;
            for o in &outcomes {
                writeln!(stdout, "{o}")?;
            }
            let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
            writeln!(stdout, "{} checks, {failed} failed", outcomes.len())?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn describe(sys: &NumerationSystem, terms: usize, out: &mut dyn Write) -> Result<()> {
    let beta = sys.beta();
    writeln!(out, "d_β(1)  = {}", sys.spec())?;
    writeln!(out, "d*_β(1) = {}", sys.quasi_greedy())?;
    writeln!(out, "β ≈ {beta:.6} ({beta:.15})")?;
    let u = sys.u_sequence(terms.saturating_sub(1))?;
    let u: Vec<String> = u.iter().map(|x| x.to_string()).collect();
    writeln!(out, "U = {},…", u.join(","))?;
    writeln!(out, "C_β = {}", sys.c_beta())?;
    writeln!(
        out,
        "automaton ({} states, all final, initial a0):",
        sys.automaton().state_count()
    )?;
    write!(out, "{}", sys.automaton())?;
    Ok(())
}

fn describe_custom(sys: &mut CustomLinearSystem, terms: usize, out: &mut dyn Write) -> Result<()> {
    let u: Vec<String> = (0..terms)
        .map(|n| sys.u(n).map(|x| x.to_string()))
        .collect::<Result<_>>()?;
    writeln!(out, "U = {},…", u.join(","))?;
    Ok(())
}

fn write_table(block: &TriangleBlock, out: &mut dyn Write) -> Result<()> {
    let label = |w: &Word| if w.is_empty() { "ε".to_string() } else { w.to_plain() };
    let mut cells: Vec<Vec<String>> = vec![std::iter::once(String::new())
        .chain((0..block.cols()).map(|j| label(block.col_word(j))))
        .collect()];
    for i in 0..block.rows() {
        cells.push(
            std::iter::once(label(block.row_word(i)))
                .chain(block.row(i).iter().map(|x| x.to_string()))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..=block.cols())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        writeln!(out, "{}", line.join(" ").trim_end())?;
    }
    Ok(())
}

/// Runs with the process arguments and standard streams.
pub fn main_with_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = run(std::env::args_os(), &mut out, &mut err);
    if out.flush().is_err() {
        return 2;
    }
    code
}
