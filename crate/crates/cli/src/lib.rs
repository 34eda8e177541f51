//! The `postulate` command line: expectations, sampled verdicts, parameter
//! schedules, table regeneration and batch sweeps, reported as human text,
//! JSON lines or CSV.
//!
//! [`run`] is the whole program behind `main`; it takes the argument list and
//! the two output streams and returns the process exit status.

pub mod args;
pub mod report;
pub mod sweep;
pub mod tables;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use clap::Parser;
use postulation_core::engine::{verify_postulation, CERTIFY_TRIALS, DEFECT_TRIALS};
use postulation_core::ledger::{exception_rule, expected_counts, verify_schedule, ExceptionClass};
use postulation_core::{ComponentKind, Error, PrimeField, SchemeConfig, TrialOptions};
use rayon::prelude::*;

use args::{Cli, Command, Format, RunArgs};
use report::{CsvSink, Expectation, Header, HumanSink, JsonLinesSink, Record, Sink, Summary};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    /// Every record agrees with its expectation.
    Match = 0,
    Mismatch = 2,
    Usage = 64,
    Data = 65,
    Internal = 70,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    fn new(status: ExitStatus, message: impl Into<String>) -> Self {
        Self { status, message: message.into() }
    }

    fn io(e: io::Error) -> Self {
        Self::new(ExitStatus::Internal, format!("writing the report: {e}"))
    }

    /// Maps a core error, blaming `input_status` for bad parameters.
    fn core(e: Error, input_status: ExitStatus) -> Self {
        let status = match e {
            Error::OutOfRange(_) | Error::Unsatisfiable(_) | Error::NotPrime(_) | Error::Overflow(_) => input_status,
            Error::Genericity { .. } | Error::Degenerate(_) | Error::ZeroInverse | Error::UnsupportedSplit(_) => {
                ExitStatus::Internal
            }
        };
        Self::new(status, e.to_string())
    }
}

/// The exception classification, for configurations made of one fat linear
/// space or fat point plus generic lines.
pub fn classify(config: &SchemeConfig) -> Option<ExceptionClass> {
    if config.context.is_some() {
        return None;
    }
    let mut fat = None;
    let mut lines = 0u32;
    for c in &config.components {
        match c.kind {
            ComponentKind::Line => lines += 1,
            ComponentKind::FatLinearSpace { dim, mult } if fat.is_none() => fat = Some((dim, mult)),
            ComponentKind::FatPoint { mult } if fat.is_none() => fat = Some((0, mult)),
            _ => return None,
        }
    }
    let (r, m) = fat?;
    exception_rule(config.n, config.d, r, m, lines).ok()
}

pub fn expectation(config: &SchemeConfig) -> Expectation {
    match classify(config) {
        Some(c) if c.exceptional => Expectation { exceptional: true, virtual_defect: c.virtual_defect },
        _ => Expectation { exceptional: false, virtual_defect: 0 },
    }
}

fn field(prime: u64) -> Result<PrimeField, CliError> {
    PrimeField::new(prime).map_err(|e| CliError::core(e, ExitStatus::Usage))
}

/// Samples `config` and compares the verdict with [`expectation`].
pub fn verify_record(config: &SchemeConfig, run: &RunArgs, field: PrimeField, line: Option<usize>) -> postulation_core::Result<Record> {
    let expectation = expectation(config);
    let default_trials = if expectation.exceptional { DEFECT_TRIALS } else { CERTIFY_TRIALS };
    let opts = TrialOptions::new(run.trials.unwrap_or(default_trials), run.seed).with_field(field);
    let verdict = verify_postulation(config, &opts)?;
    let matches = if expectation.exceptional {
        !verdict.certified && verdict.virtual_defect == expectation.virtual_defect as i64
    } else {
        verdict.certified
    };
    let note = verdict.caveat().map(str::to_string);
    Ok(Record::Verdict { line, config: config.clone(), expectation, verdict, matches, note })
}

struct Emitter<'a> {
    sink: &'a mut dyn Sink,
    summary: Summary,
    started: Instant,
}

impl<'a> Emitter<'a> {
    fn start(sink: &'a mut dyn Sink, header: Header) -> Result<Self, CliError> {
        sink.header(&header).map_err(CliError::io)?;
        Ok(Self { sink, summary: Summary::default(), started: Instant::now() })
    }

    fn emit(&mut self, r: &Record) -> Result<(), CliError> {
        self.summary.add(r);
        self.sink.record(r).map_err(CliError::io)
    }

    fn finish(mut self) -> Result<ExitStatus, CliError> {
        self.summary.wall_time_us = self.started.elapsed().as_micros() as u64;
        self.sink.summary(&self.summary).map_err(CliError::io)?;
        Ok(if self.summary.failed == 0 { ExitStatus::Match } else { ExitStatus::Mismatch })
    }
}

const SWEEP_CHUNK: usize = 32;

/// Runs one parsed command against `sink`.
pub fn execute(command: &Command, sink: &mut dyn Sink) -> Result<ExitStatus, CliError> {
    let usage = |e| CliError::core(e, ExitStatus::Usage);
    match command {
        Command::Expect(flags) => {
            let config = flags.to_config();
            config.validate().map_err(usage)?;
            let expected = expected_counts(&config).map_err(usage)?;
            let record = Record::Expect { classification: classify(&config), config, expected };
            let mut out = Emitter::start(sink, Header::new("expect", None, None))?;
            out.emit(&record)?;
            out.finish()
        }
        Command::Verify { config: flags, run } => {
            let config = flags.to_config();
            config.validate().map_err(usage)?;
            let field = field(run.prime)?;
            let record = verify_record(&config, run, field, None).map_err(usage)?;
            let mut out = Emitter::start(sink, Header::new("verify", Some(run.seed), Some(field.modulus())))?;
            out.emit(&record)?;
            out.finish()
        }
        Command::Schedule { n, d } => {
            let checklist = verify_schedule(*n, *d).map_err(usage)?;
            let mut out = Emitter::start(sink, Header::new("schedule", None, None))?;
            out.emit(&Record::Schedule { checklist })?;
            out.finish()
        }
        Command::Tables => {
            let records = tables::regenerate().map_err(|e| CliError::core(e, ExitStatus::Internal))?;
            let mut out = Emitter::start(sink, Header::new("tables", None, None))?;
            for r in &records {
                out.emit(r)?;
            }
            out.finish()
        }
        Command::Sweep { file, run } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::new(ExitStatus::Data, format!("{}: {e}", file.display())))?;
            let entries = sweep::parse_sweep(&text)
                .map_err(|e| CliError::new(ExitStatus::Data, format!("{}: {e}", file.display())))?;
            let field = field(run.prime)?;
            let mut out = Emitter::start(sink, Header::new("sweep", Some(run.seed), Some(field.modulus())))?;
            for chunk in entries.chunks(SWEEP_CHUNK) {
                let records = chunk
                    .par_iter()
                    .map(|e| {
                        verify_record(&e.config, run, field, Some(e.line)).map_err(|err| {
                            let err = CliError::core(err, ExitStatus::Data);
                            CliError { message: format!("line {}: {}", e.line, err.message), ..err }
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                for r in &records {
                    out.emit(r)?;
                }
            }
            out.finish()
        }
    }
}

fn run_with_sink(cli: &Cli, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    match cli.format {
        Format::Human => execute(&cli.command, &mut HumanSink::new(out)),
        Format::JsonLines => execute(&cli.command, &mut JsonLinesSink::new(out)),
        Format::Csv => execute(&cli.command, &mut CsvSink::new(out)),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status. Errors are reported on `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                ExitStatus::Usage.code()
            } else {
                let _ = write!(stdout, "{text}");
                ExitStatus::Match.code()
            };
        }
    };
    let result = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                run_with_sink(&cli, &mut w).and_then(|s| w.flush().map(|_| s).map_err(CliError::io))
            }
            Err(e) => Err(CliError::new(ExitStatus::Usage, format!("{}: {e}", path.display()))),
        },
        None => run_with_sink(&cli, stdout),
    };
    match result {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(stderr, "postulate: error: {e}");
            e.status.code()
        }
    }
}
