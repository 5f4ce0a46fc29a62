//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a theorem
//! check finds a violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::enumeration::{self, CapPolicy};
use crate::filtration;
use crate::homology::{HomologyReport, SConnected};
use crate::kupisch::{self, Kind, KupischSeries, RelationSystem};
use crate::verify::{self, Suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nakayama", version, about = "Homological invariants of Nakayama algebras")]
struct Cli {
    /// Worker threads for enumeration and verification (0 = all cores).
    #[arg(long, global = true, env = "NAKAYAMA_JOBS", default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Projective dimensions, global dimension and the ε-tower of one algebra.
    Analyze {
        #[command(flatten)]
        kind: KindFlag,
        /// Kupisch series, e.g. 3,4,4
        series: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Enumerate isomorphism classes with n vertices.
    Enumerate {
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        kind: KindFlag,
        /// Largest Kupisch entry for cyclic series (default 2n-1).
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Print every series, one per line.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run theorem suites over every algebra up to a vertex bound.
    Verify {
        /// Comma separated suites; all of them by default.
        #[arg(long, value_delimiter = ',')]
        theorems: Vec<Suite>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Convert between relation systems and Kupisch series.
    Convert {
        #[command(flatten)]
        kind: KindFlag,
        /// Relations "s1:e1;s2:e2;..."
        #[arg(long, conflicts_with = "kupisch", requires = "n")]
        relations: Option<String>,
        #[arg(short)]
        n: Option<usize>,
        #[arg(long, required_unless_present = "relations")]
        kupisch: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct KindFlag {
    #[arg(long)]
    cyclic: bool,
    #[arg(long)]
    linear: bool,
}

impl KindFlag {
    fn kind(&self) -> Kind {
        if self.cyclic {
            Kind::Cyclic
        } else {
            Kind::Linear
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Qh,
    Maximal,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {} workers: {e}", cli.jobs);
            return EXIT_INPUT;
        }
    };
    let result = pool.install(|| dispatch(cli.command));
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

type Outcome = Result<(String, i32), String>;

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Analyze { kind, series, format } => analyze(kind.kind(), &series, format),
        Command::Enumerate {
            n,
            kind,
            cap,
            filter,
            list,
            format,
        } => enumerate(n, kind.kind(), cap, filter, list, format),
        Command::Verify {
            theorems,
            n_max,
            cap,
            format,
        } => verify(&theorems, n_max, cap, format),
        Command::Convert {
            kind,
            relations,
            n,
            kupisch,
            format,
        } => convert(kind.kind(), relations, n, kupisch, format),
    }
}

fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json renders");
    s.push('\n');
    s
}

fn parse_series(kind: Kind, text: &str) -> Result<KupischSeries, String> {
    let entries = kupisch::parse_entries(text).map_err(|e| e.to_string())?;
    KupischSeries::new(kind, entries).map_err(|e| format!("{kind} series {text}: {e}"))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn analyze(kind: Kind, text: &str, format: Format) -> Outcome {
    let series = parse_series(kind, text)?;
    let report = HomologyReport::new(&series);
    let relations = series.to_relations();
    let tower = if series.is_cyclic() {
        Some(filtration::epsilon_tower(&series).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let canonical = series.canonical_form();
    let text = match format {
        Format::Json => {
            let mut value = report.to_json();
            let obj = value.as_object_mut().expect("report is an object");
            obj.insert("canonical".into(), json!(canonical.entries()));
            obj.insert("relations".into(), json!(relations.to_string()));
            obj.insert("relation_count".into(), json!(series.relation_count()));
            obj.insert(
                "epsilon_tower".into(),
                tower.as_ref().map_or(Value::Null, |t| t.to_json()),
            );
            json_text(&value)
        }
        Format::Table | Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "series            {kind} {series}");
            let _ = writeln!(s, "canonical         {canonical}");
            let _ = writeln!(s, "selfinjective     {}", report.selfinjective);
            let _ = writeln!(s, "pd simples        {}", join(&report.pd_simple));
            let _ = writeln!(s, "gldim             {}", report.gldim);
            let _ = writeln!(s, "O_A               {{{}}}", join(&report.o_set));
            let lambda = report.lambda.iter().map(|(c, l)| format!("λ_{c}={l}"));
            let _ = writeln!(s, "lambda            {}", lambda.collect::<Vec<_>>().join(" "));
            let _ = writeln!(
                s,
                "s-connected       {}",
                match report.s_connected {
                    SConnected::Yes => "yes",
                    SConnected::No => "no",
                    SConnected::UndefinedInfiniteGldim => "undefined (infinite gldim)",
                }
            );
            let _ = writeln!(s, "quasi-hereditary  {}", report.quasi_hereditary);
            let _ = writeln!(s, "relations         {relations}");
            if let Some(t) = &tower {
                let steps = t.steps.iter().map(|st| format!("{} {}", st.algebra.kind(), st.algebra));
                let chain: Vec<String> = std::iter::once(series.to_string()).chain(steps).collect();
                let _ = writeln!(s, "epsilon tower     {} ({:?})", chain.join(" -> "), t.terminal);
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn enumerate(n: usize, kind: Kind, cap: Option<u32>, filter: Filter, list: bool, format: Format) -> Outcome {
    if n < 2 {
        return Err(format!("-n must be at least 2, got {n}"));
    }
    let cap_policy = cap.map_or(CapPolicy::Default, CapPolicy::Fixed);
    let all = match kind {
        Kind::Cyclic => enumeration::enumerate_cyclic(n, cap_policy.cap(n)),
        Kind::Linear => enumeration::enumerate_linear(n),
    };
    let keep = |a: &KupischSeries| match filter {
        Filter::All => true,
        Filter::Qh => !a.is_selfinjective() && HomologyReport::new(a).quasi_hereditary,
        Filter::Maximal => !a.is_selfinjective() && HomologyReport::new(a).is_maximal(),
    };
    let selected: Vec<KupischSeries> = {
        use rayon::prelude::*;
        all.into_par_iter().filter(keep).collect()
    };

    if filter == Filter::Maximal && format != Format::Table {
        let table = enumeration::census(n..=n, kind, cap_policy).map_err(|e| e.to_string())?;
        let code = if table.violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        };
        let text = match format {
            Format::Csv => table.to_csv(),
            _ => json_text(&json!({
                "algebras": selected,
                "census": table.to_json(),
                "count": selected.len(),
                "filter": "maximal",
                "kind": kind,
                "n": n,
            })),
        };
        return Ok((text, code));
    }

    let text = match format {
        Format::Table => {
            let mut s = format!("{}\n", selected.len());
            if list {
                for a in &selected {
                    let _ = writeln!(s, "{a}");
                }
            }
            s
        }
        Format::Json => json_text(&json!({
            "algebras": selected,
            "count": selected.len(),
            "filter": format!("{filter:?}").to_lowercase(),
            "kind": kind,
            "n": n,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["kind", "kupisch", "gldim", "quasi_hereditary"])
                .expect("in-memory write");
            for a in &selected {
                let r = HomologyReport::new(a);
                w.write_record([
                    kind.to_string(),
                    a.to_string(),
                    r.gldim.to_string(),
                    r.quasi_hereditary.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
    };
    Ok((text, EXIT_OK))
}

fn verify(theorems: &[Suite], n_max: usize, cap: Option<u32>, format: Format) -> Outcome {
    if n_max < 2 {
        return Err(format!("--n-max must be at least 2, got {n_max}"));
    }
    let suites = if theorems.is_empty() { &Suite::ALL[..] } else { theorems };
    let cap = cap.map_or(CapPolicy::Default, CapPolicy::Fixed);
    let reports = verify::run_suites(suites, n_max, cap);
    let code = if reports.iter().all(SuiteReport::passed) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    let text = match format {
        Format::Json => json_text(&serde_json::to_value(&reports).expect("reports serialize")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "algebras", "violations", "errors", "passed"])
                .expect("in-memory write");
            for r in &reports {
                w.write_record([
                    r.suite.to_string(),
                    r.algebras.to_string(),
                    r.violations.len().to_string(),
                    r.errors.len().to_string(),
                    r.passed().to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
        Format::Table => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{}", r.summary);
                for v in &r.violations {
                    let _ = writeln!(s, "  {} {} {}: {}", v.series.kind(), v.series, v.property, v.detail);
                }
                for e in &r.errors {
                    let _ = writeln!(s, "  {e}");
                }
            }
            s
        }
    };
    Ok((text, code))
}

fn convert(
    kind: Kind,
    relations: Option<String>,
    n: Option<usize>,
    kupisch: Option<String>,
    format: Format,
) -> Outcome {
    let from_relations = relations.is_some();
    let (series, system) = match (relations, kupisch) {
        (Some(rel), _) => {
            let n = n.ok_or("--relations needs -n")?;
            let parsed = kupisch::parse_relations(&rel).map_err(|e| e.to_string())?;
            let system = RelationSystem::new(kind, n, parsed).map_err(|e| e.to_string())?;
            let series = system.to_kupisch().map_err(|e| e.to_string())?.canonical_form();
            (series, system.normalized())
        }
        (None, Some(text)) => {
            let series = parse_series(kind, &text)?.canonical_form();
            let system = series.to_relations().normalized();
            (series, system)
        }
        (None, None) => return Err("give --relations or --kupisch".into()),
    };
    let text = match format {
        Format::Json => json_text(&json!({
            "kind": kind,
            "kupisch": series.entries(),
            "n": series.n(),
            "relation_count": system.relation_count(),
            "relations": system.to_string(),
        })),
        Format::Table | Format::Csv if from_relations => format!("{series}\n"),
        Format::Table | Format::Csv => format!("{system}\n"),
    };
    Ok((text, EXIT_OK))
}
