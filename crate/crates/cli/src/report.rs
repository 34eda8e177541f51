//! Report records and the three output formats.
//!
//! A report is a header, a sequence of records and a summary. In the
//! `json-lines` format each of these is one JSON object on its own line,
//! discriminated by its `"type"` field (`header`, `expect`, `verdict`,
//! `schedule`, `table`, `summary`), and [`RunReport::from_json_lines`] reads
//! such a stream back.

use std::io::{self, Write};

use postulation_core::engine::PostulationVerdict;
use postulation_core::ledger::{ChecklistReport, ExceptionClass, ExpectedCounts};
use postulation_core::SchemeConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Base seed; `None` for commands that sample nothing.
    pub seed: Option<u64>,
    pub prime: Option<u64>,
}

impl Header {
    pub fn new(command: &str, seed: Option<u64>, prime: Option<u64>) -> Self {
        Self { tool: "postulate".into(), version: env!("CARGO_PKG_VERSION").into(), command: command.into(), seed, prime }
    }
}

/// What the classifier predicts for a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub exceptional: bool,
    /// Predicted `h0 - (N - HP)`.
    pub virtual_defect: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub d: u32,
    pub expected: Vec<i64>,
    pub computed: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Expect {
        config: SchemeConfig,
        expected: ExpectedCounts,
        classification: Option<ExceptionClass>,
    },
    Verdict {
        /// Line of the sweep file this record came from.
        line: Option<usize>,
        config: SchemeConfig,
        expectation: Expectation,
        verdict: PostulationVerdict,
        matches: bool,
        note: Option<String>,
    },
    Schedule {
        checklist: ChecklistReport,
    },
    Table {
        name: String,
        columns: Vec<String>,
        rows: Vec<TableRow>,
        matches: bool,
    },
}

impl Record {
    /// Whether the record agrees with what was expected of it.
    pub fn passed(&self) -> bool {
        match self {
            Record::Expect { .. } => true,
            Record::Verdict { matches, .. } | Record::Table { matches, .. } => *matches,
            Record::Schedule { checklist } => checklist.all_hold(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub wall_time_us: u64,
}

impl Summary {
    pub fn add(&mut self, r: &Record) {
        self.records += 1;
        if r.passed() {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub header: Header,
    pub records: Vec<Record>,
    pub summary: Summary,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum FramingOut<'a> {
    Header(&'a Header),
    Summary(&'a Summary),
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum FramingIn {
    Header(Header),
    Summary(Summary),
}

#[derive(Debug, thiserror::Error)]
pub enum ParseReportError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("report is missing its {0}")]
    Missing(&'static str),
}

impl RunReport {
    pub fn to_json_lines(&self) -> String {
        let mut out = Vec::new();
        let mut sink = JsonLinesSink::new(&mut out);
        sink.header(&self.header).expect("writing to memory");
        for r in &self.records {
            sink.record(r).expect("writing to memory");
        }
        sink.summary(&self.summary).expect("writing to memory");
        String::from_utf8(out).expect("JSON is UTF-8")
    }

    pub fn from_json_lines(text: &str) -> Result<Self, ParseReportError> {
        let mut header = None;
        let mut summary = None;
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let json = |source| ParseReportError::Json { line: i + 1, source };
            let value: serde_json::Value = serde_json::from_str(line).map_err(json)?;
            match value.get("type").and_then(|t| t.as_str()) {
                Some("header" | "summary") => match serde_json::from_value(value).map_err(json)? {
                    FramingIn::Header(h) => header = Some(h),
                    FramingIn::Summary(s) => summary = Some(s),
                },
                _ => records.push(serde_json::from_value(value).map_err(json)?),
            }
        }
        Ok(Self {
            header: header.ok_or(ParseReportError::Missing("header"))?,
            records,
            summary: summary.ok_or(ParseReportError::Missing("summary"))?,
        })
    }
}

/// Receives a report piece by piece, so sweeps can stream.
pub trait Sink {
    fn header(&mut self, h: &Header) -> io::Result<()>;
    fn record(&mut self, r: &Record) -> io::Result<()>;
    fn summary(&mut self, s: &Summary) -> io::Result<()>;
}

pub struct JsonLinesSink<W: Write> {
    out: W,
}

impl<W: Write> JsonLinesSink<W> {
    pub fn new(out: W) -> Self {
        Self { out }
    }

    fn line(&mut self, v: &impl Serialize) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, v)?;
        self.out.write_all(b"\n")?;
        self.out.flush()
    }
}

impl<W: Write> Sink for JsonLinesSink<W> {
    fn header(&mut self, h: &Header) -> io::Result<()> {
        self.line(&FramingOut::Header(h))
    }

    fn record(&mut self, r: &Record) -> io::Result<()> {
        self.line(r)
    }

    fn summary(&mut self, s: &Summary) -> io::Result<()> {
        self.line(&FramingOut::Summary(s))
    }
}

/// Keeps everything in memory.
#[derive(Debug, Default)]
pub struct CollectSink {
    pub header: Option<Header>,
    pub records: Vec<Record>,
    pub summary: Option<Summary>,
}

impl Sink for CollectSink {
    fn header(&mut self, h: &Header) -> io::Result<()> {
        self.header = Some(h.clone());
        Ok(())
    }

    fn record(&mut self, r: &Record) -> io::Result<()> {
        self.records.push(r.clone());
        Ok(())
    }

    fn summary(&mut self, s: &Summary) -> io::Result<()> {
        self.summary = Some(*s);
        Ok(())
    }
}

impl CollectSink {
    pub fn into_report(self) -> Option<RunReport> {
        Some(RunReport { header: self.header?, records: self.records, summary: self.summary? })
    }
}

pub const CSV_COLUMNS: [&str; 20] = [
    "record", "line", "label", "n", "d", "N", "HP", "exp_h0", "exp_h1", "virtual_h0", "observed_h0", "observed_h1", "defect",
    "virtual_defect", "certified", "passed", "trials", "seed", "prime", "detail",
];

/// One row per verdict, expectation, schedule check or table row.
pub struct CsvSink<W: Write> {
    out: csv::Writer<W>,
    seed: Option<u64>,
    prime: Option<u64>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Self {
        Self { out: csv::Writer::from_writer(out), seed: None, prime: None }
    }

    fn row(&mut self, cells: [String; 20]) -> io::Result<()> {
        self.out.write_record(&cells)?;
        self.out.flush()
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl<W: Write> Sink for CsvSink<W> {
    fn header(&mut self, h: &Header) -> io::Result<()> {
        self.seed = h.seed;
        self.prime = h.prime;
        self.out.write_record(CSV_COLUMNS)?;
        self.out.flush()
    }

    fn record(&mut self, r: &Record) -> io::Result<()> {
        let s = String::new;
        match r {
            Record::Expect { config, expected: e, classification } => self.row([
                "expect".into(),
                s(),
                config.to_string(),
                config.n.to_string(),
                config.d.to_string(),
                e.ambient.to_string(),
                e.conditions.to_string(),
                e.exp_h0.to_string(),
                e.exp_h1.to_string(),
                e.virtual_h0.to_string(),
                s(),
                s(),
                s(),
                opt(classification.map(|c| c.virtual_defect)),
                s(),
                r.passed().to_string(),
                s(),
                opt(self.seed),
                opt(self.prime),
                classification.map_or_else(s, |c| if c.exceptional { "exceptional".into() } else { "generic".into() }),
            ]),
            Record::Verdict { line, config, verdict: v, note, .. } => {
                let e = v.expected;
                self.row([
                    "verdict".into(),
                    opt(*line),
                    config.to_string(),
                    config.n.to_string(),
                    config.d.to_string(),
                    e.ambient.to_string(),
                    e.conditions.to_string(),
                    e.exp_h0.to_string(),
                    e.exp_h1.to_string(),
                    e.virtual_h0.to_string(),
                    v.observed_h0.to_string(),
                    v.observed_h1.to_string(),
                    v.defect.to_string(),
                    v.virtual_defect.to_string(),
                    v.certified.to_string(),
                    r.passed().to_string(),
                    v.trials_run.to_string(),
                    v.seed.to_string(),
                    v.prime.to_string(),
                    note.clone().unwrap_or_default(),
                ])
            }
            Record::Schedule { checklist } => {
                let (n, d) = (checklist.schedule.n, checklist.schedule.d);
                for c in &checklist.checks {
                    let mut cells: [String; 20] = Default::default();
                    cells[0] = "schedule".into();
                    cells[2] = c.name.clone();
                    cells[3] = n.to_string();
                    cells[4] = d.to_string();
                    cells[15] = c.holds.to_string();
                    cells[19] = c.statement.clone();
                    self.row(cells)?;
                }
                Ok(())
            }
            Record::Table { name, columns, rows, .. } => {
                for row in rows {
                    let mut cells: [String; 20] = Default::default();
                    cells[0] = "table".into();
                    cells[2] = name.clone();
                    cells[4] = row.d.to_string();
                    cells[15] = (row.expected == row.computed).to_string();
                    cells[19] = columns
                        .iter()
                        .zip(row.computed.iter().zip(&row.expected))
                        .map(|(c, (got, want))| format!("{c}={got} (expected {want})"))
                        .collect::<Vec<_>>()
                        .join("; ");
                    self.row(cells)?;
                }
                Ok(())
            }
        }
    }

    fn summary(&mut self, _: &Summary) -> io::Result<()> {
        self.out.flush()
    }
}

/// Plain text for people.
pub struct HumanSink<W: Write> {
    out: W,
}

impl<W: Write> HumanSink<W> {
    pub fn new(out: W) -> Self {
        Self { out }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl<W: Write> Sink for HumanSink<W> {
    fn header(&mut self, h: &Header) -> io::Result<()> {
        write!(self.out, "# {} {} {}", h.tool, h.version, h.command)?;
        if let Some(seed) = h.seed {
            write!(self.out, "  seed={seed}")?;
        }
        if let Some(p) = h.prime {
            write!(self.out, "  prime={p}")?;
        }
        writeln!(self.out)
    }

    fn record(&mut self, r: &Record) -> io::Result<()> {
        let w = &mut self.out;
        match r {
            Record::Expect { config, expected: e, classification } => {
                writeln!(w, "{config}")?;
                writeln!(
                    w,
                    "  N = {}  HP = {}  exp_h0 = {}  exp_h1 = {}  virtual_h0 = {}",
                    e.ambient, e.conditions, e.exp_h0, e.exp_h1, e.virtual_h0
                )?;
                match classification {
                    Some(c) if c.exceptional => {
                        writeln!(w, "  classification: EXCEPTIONAL, predicted virtual defect {}", c.virtual_defect)?
                    }
                    Some(_) => writeln!(w, "  classification: not exceptional, maximal rank expected")?,
                    None => writeln!(w, "  classification: outside the classified family, maximal rank expected")?,
                }
            }
            Record::Verdict { line, config, expectation, verdict: v, matches, note } => {
                match line {
                    Some(l) => writeln!(w, "[line {l}] {config}")?,
                    None => writeln!(w, "{config}")?,
                }
                let e = v.expected;
                writeln!(w, "  N = {}  HP = {}  exp_h0 = {}  exp_h1 = {}", e.ambient, e.conditions, e.exp_h0, e.exp_h1)?;
                let ranks: Vec<String> = v.per_trial_ranks.iter().map(u64::to_string).collect();
                writeln!(w, "  trials = {}  seed = {}  prime = {}  ranks = [{}]", v.trials_run, v.seed, v.prime, ranks.join(", "))?;
                writeln!(
                    w,
                    "  observed_h0 = {}  observed_h1 = {}  defect = {}  virtual_defect = {}  certified = {}",
                    v.observed_h0,
                    v.observed_h1,
                    v.defect,
                    v.virtual_defect,
                    yes_no(v.certified)
                )?;
                let want = if expectation.exceptional {
                    format!("defect with virtual defect {}", expectation.virtual_defect)
                } else {
                    "maximal rank".to_string()
                };
                writeln!(w, "  expected {want}: {}", if *matches { "MATCH" } else { "MISMATCH" })?;
                if let Some(n) = note {
                    writeln!(w, "  note: {n}")?;
                }
            }
            Record::Schedule { checklist } => {
                let s = &checklist.schedule;
                writeln!(w, "schedule for n = {}, d = {}", s.n, s.d)?;
                writeln!(w, "  r = {}  q = {}  r' = {}  q' = {}  x = {}", s.r, s.q, s.r_prime, s.q_prime, s.x)?;
                if let (Some(rb), Some(qb)) = (s.r_bar, s.q_bar) {
                    writeln!(w, "  r_bar = {rb}  q_bar = {qb}")?;
                }
                if let (Some(rh), Some(qh)) = (s.r_hat, s.q_hat) {
                    writeln!(w, "  r_hat = {rh}  q_hat = {qh}")?;
                }
                for c in &checklist.checks {
                    writeln!(w, "  [{}] {:<18} {}", if c.holds { "pass" } else { "FAIL" }, c.name, c.statement)?;
                }
            }
            Record::Table { name, columns, rows, matches } => {
                writeln!(w, "{name}: {}", if *matches { "matches" } else { "MISMATCH" })?;
                writeln!(w, "  {:>4}  {}", "d", columns.iter().map(|c| format!("{c:>10}")).collect::<String>())?;
                for row in rows {
                    let cells: String = row.computed.iter().map(|x| format!("{x:>10}")).collect();
                    let flag = if row.computed == row.expected { "" } else { "  <- expected differs" };
                    writeln!(w, "  {:>4}  {cells}{flag}", row.d)?;
                }
            }
        }
        w.flush()
    }

    fn summary(&mut self, s: &Summary) -> io::Result<()> {
        writeln!(
            self.out,
            "# {} record(s): {} passed, {} failed ({:.3} s)",
            s.records,
            s.passed,
            s.failed,
            s.wall_time_us as f64 / 1e6
        )?;
        self.out.flush()
    }
}
