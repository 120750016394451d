use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morsetilings_core::complex::independence_complex_capped;
use morsetilings_core::matchings::bad_matching_report;
use morsetilings_core::morse::{even_tiling_schedule, grid_schedule, odd_simple_schedule};
use morsetilings_core::verify::{conjecture_sweep, sweep_csv};
use morsetilings_core::{
    enumerate_bad_matchings, f_vector, perfect_matching_complex_capped, reduced_betti,
    reduced_euler_characteristic, run_job, run_schedule, Error, FamilyDescriptor, Graph, Job,
    JobReport, PairingSchedule, SimplicialComplex, Status, VerifyConfig,
};
use serde_json::{json, Value};

const CONFIG_ENV: &str = "MORSETILINGS_CONFIG";

#[derive(Parser)]
#[command(
    name = "morsetilings",
    version,
    about = "Perfect matching complexes of ladders and line tilings: Morse pairings, folds, homology"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Emit JSON (sorted keys) instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit Graphviz DOT (family only).
    #[arg(long, global = true, conflicts_with = "json")]
    dot: bool,
    /// Write the primary output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Refuse to build complexes with more than N faces.
    #[arg(long = "cap-faces", global = true, value_name = "N")]
    cap_faces: Option<usize>,
    /// key=value settings file; falls back to $MORSETILINGS_CONFIG.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print its vertices and edges.
    Family(FamilyArgs),
    /// List the minimal non-extendable matchings of a graph.
    Badmatchings(FamilyArgs),
    /// Build the perfect matching complex (or independence complex) of a graph.
    Complex {
        #[command(flatten)]
        family: FamilyArgs,
        /// Use the independence complex of the graph instead.
        #[arg(long)]
        independence: bool,
        /// Include every face in the JSON output, not just facets.
        #[arg(long)]
        faces: bool,
    },
    /// Run an element pairing schedule and report critical cells.
    Morse {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated edge labels; defaults to the family's prescribed schedule.
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Exact integer homology of the complex.
    Homology {
        #[command(flatten)]
        family: FamilyArgs,
        /// Use the independence complex of the graph instead.
        #[arg(long)]
        independence: bool,
    },
    /// Run a verification job (or `all`) and print one line per instance.
    Verify {
        /// Job name, or `all`.
        job: String,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
        #[arg(long = "k-max")]
        k_max: Option<usize>,
        #[arg(long = "m-max")]
        m_max: Option<usize>,
    },
    /// Homology sweep over m×n grids, as CSV.
    Conjecture {
        #[arg(long = "m-max")]
        m_max: Option<usize>,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Grid2,
    Grid,
    Cycle,
    Path,
    EvenTiling,
    OddSimple,
    OddAlternate,
    Triangles,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    family: FamilyName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

impl FamilyArgs {
    fn descriptor(&self) -> Result<FamilyDescriptor, CliError> {
        let name = self
            .family
            .to_possible_value()
            .map_or_else(String::new, |v| v.get_name().to_owned());
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| CliError::Usage(format!("{name} requires --{flag}")))
        };
        let reject = |v: Option<usize>, flag: &str| match v {
            Some(_) => Err(CliError::Usage(format!("{name} takes no --{flag}"))),
            None => Ok(()),
        };
        let d = match self.family {
            FamilyName::Grid2 => {
                reject(self.m, "m")?;
                reject(self.k, "k")?;
                FamilyDescriptor::Grid2xN {
                    n: need(self.n, "n")?,
                }
            }
            FamilyName::Grid => {
                reject(self.k, "k")?;
                FamilyDescriptor::GridMxN {
                    m: need(self.m, "m")?,
                    n: need(self.n, "n")?,
                }
            }
            FamilyName::Cycle | FamilyName::Path => {
                reject(self.n, "n")?;
                reject(self.k, "k")?;
                let m = need(self.m, "m")?;
                if matches!(self.family, FamilyName::Cycle) {
                    FamilyDescriptor::Cycle { m }
                } else {
                    FamilyDescriptor::Path { m }
                }
            }
            FamilyName::EvenTiling | FamilyName::OddSimple | FamilyName::OddAlternate => {
                reject(self.m, "m")?;
                let (n, k) = (need(self.n, "n")?, need(self.k, "k")?);
                match self.family {
                    FamilyName::EvenTiling => FamilyDescriptor::EvenTiling { n, k },
                    FamilyName::OddSimple => FamilyDescriptor::OddTilingSimple { n, k },
                    _ => FamilyDescriptor::OddTilingAlternate { n, k },
                }
            }
            FamilyName::Triangles => {
                reject(self.n, "n")?;
                reject(self.m, "m")?;
                FamilyDescriptor::TriangleTiling {
                    k: need(self.k, "k")?,
                }
            }
        };
        Ok(d)
    }

    fn graph(&self) -> Result<(FamilyDescriptor, Graph), CliError> {
        let d = self.descriptor()?;
        let g = d.build()?;
        Ok((d, g))
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                Error::InvalidParameter { .. }
                | Error::UnknownEdgeLabel(..)
                | Error::UnknownVertexLabel(..)
                | Error::UnknownScheduleLabel(..)
                | Error::DuplicateScheduleLabel(..),
            ) => 2,
            CliError::Core(Error::FaceCapExceeded { .. } | Error::GroundSetTooLarge(_)) => 3,
            CliError::Core(_) | CliError::Io(..) => 1,
        }
    }
}

/// Effective settings: defaults, then the config file, then flags.
struct Settings {
    verify: VerifyConfig,
    out: Option<PathBuf>,
    json: bool,
    dot: bool,
}

fn parse_config(text: &str, settings: &mut Settings) -> Result<(), String> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "out" {
            settings.out = Some(PathBuf::from(value));
            continue;
        }
        let n: usize = value
            .parse()
            .map_err(|_| format!("line {}: `{value}` is not a non-negative integer", i + 1))?;
        settings
            .verify
            .set(key, n)
            .map_err(|e| format!("line {}: {e}", i + 1))?;
    }
    Ok(())
}

fn load_settings(global: &GlobalOpts) -> Result<Settings, CliError> {
    let mut settings = Settings {
        verify: VerifyConfig::default(),
        out: None,
        json: global.json,
        dot: global.dot,
    };
    let path = global.config.clone().or_else(|| {
        std::env::var_os(CONFIG_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    });
    if let Some(path) = path {
        let text = fs::read_to_string(&path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        parse_config(&text, &mut settings)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    }
    if let Some(out) = &global.out {
        settings.out = Some(out.clone());
    }
    if let Some(cap) = global.cap_faces {
        settings.verify.face_cap = cap;
    }
    Ok(settings)
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))
        }
    }
}

fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

fn build_complex(g: &Graph, independence: bool, cap: usize) -> Result<SimplicialComplex, CliError> {
    let c = if independence {
        independence_complex_capped(g, cap)?
    } else {
        perfect_matching_complex_capped(g, cap)?
    };
    Ok(c)
}

fn complex_name(d: &FamilyDescriptor, independence: bool) -> String {
    if independence {
        format!("independence complex of {d}")
    } else {
        format!("perfect matching complex of {d}")
    }
}

fn cmd_family(args: &FamilyArgs, s: &Settings) -> Result<u8, CliError> {
    let (d, g) = args.graph()?;
    let text = if s.dot {
        g.to_dot()
    } else if s.json {
        json_text(&g.to_json())
    } else {
        let mut t = format!(
            "{d}: {} vertices, {} edges\n",
            g.vertex_count(),
            g.edge_count()
        );
        for e in g.edges() {
            let (u, v) = (&g.vertex(e.u)?.label, &g.vertex(e.v)?.label);
            t.push_str(&format!("{}: {u} -- {v}\n", e.label));
        }
        t
    };
    write_output(&text, s.out.as_deref())?;
    Ok(0)
}

fn cmd_badmatchings(args: &FamilyArgs, s: &Settings) -> Result<u8, CliError> {
    let (d, g) = args.graph()?;
    let bad = enumerate_bad_matchings(&g)?;
    let text = if s.json {
        json_text(&bad_matching_report(&g, &bad))
    } else {
        let mut t = format!("{d}: {} bad matchings\n", bad.len());
        for m in &bad {
            t.push_str(&braces(&m.labels(&g)));
            t.push('\n');
        }
        t
    };
    write_output(&text, s.out.as_deref())?;
    Ok(0)
}

fn cmd_complex(
    args: &FamilyArgs,
    independence: bool,
    faces: bool,
    s: &Settings,
) -> Result<u8, CliError> {
    let (d, g) = args.graph()?;
    let c = build_complex(&g, independence, s.verify.face_cap)?;
    let text = if s.json {
        json_text(&c.to_json(faces))
    } else {
        let facets = c.facets();
        let mut t = format!("{}\n", complex_name(&d, independence));
        match c.dimension() {
            None => t.push_str("void complex (no faces)\n"),
            Some(dim) => {
                let f: Vec<String> = f_vector(&c).iter().map(u64::to_string).collect();
                t.push_str(&format!(
                    "dimension {dim}, {} faces, {} facets\n",
                    c.len(),
                    facets.len()
                ));
                t.push_str(&format!("f-vector {}\n", f.join(" ")));
                if let Some(chi) = reduced_euler_characteristic(&c) {
                    t.push_str(&format!("reduced euler characteristic {chi}\n"));
                }
            }
        }
        for f in facets {
            t.push_str(&braces(&c.face_labels(f)));
            t.push('\n');
        }
        t
    };
    write_output(&text, s.out.as_deref())?;
    Ok(0)
}

/// The schedule each family is known to be collapsed by, if any.
fn prescribed_schedule(d: &FamilyDescriptor) -> Option<PairingSchedule> {
    match *d {
        FamilyDescriptor::Grid2xN { n } => Some(grid_schedule(n)),
        FamilyDescriptor::EvenTiling { n, .. } => Some(even_tiling_schedule(n)),
        FamilyDescriptor::OddTilingSimple { n, .. } => Some(odd_simple_schedule(n)),
        _ => None,
    }
}

fn cmd_morse(args: &FamilyArgs, schedule: Option<&str>, s: &Settings) -> Result<u8, CliError> {
    let (d, g) = args.graph()?;
    let prescribed = prescribed_schedule(&d);
    let schedule = match (schedule, &prescribed) {
        (Some(text), _) => PairingSchedule::parse(text),
        (None, Some(p)) => p.clone(),
        (None, None) => {
            return Err(CliError::Usage(format!(
                "{d} has no default schedule; pass --schedule"
            )))
        }
    };
    let c = build_complex(&g, false, s.verify.face_cap)?;
    let report = run_schedule(&c, &schedule)?;
    // the odd-simple schedule is expected to leave nothing critical
    let discrepancy = matches!(d, FamilyDescriptor::OddTilingSimple { .. })
        && prescribed
            .as_ref()
            .is_some_and(|p| p.elements() == schedule.elements())
        && report.critical_count() > 0;
    let text = if s.json {
        json_text(&report.to_json())
    } else {
        let mut t = format!("{d} schedule {schedule}\n");
        t.push_str(&format!(
            "paired {} pairs, empty face paired: {}\n",
            report.paired_count, report.empty_paired
        ));
        t.push_str(&format!("acyclic: {}\n", report.acyclic));
        if report.critical.is_empty() {
            t.push_str("critical: none\n");
        }
        for (dim, faces) in &report.critical {
            for f in faces {
                t.push_str(&format!("critical dim {dim}: {}\n", braces(f)));
            }
        }
        t.push_str(&format!("homotopy: {}\n", report.homotopy.kind));
        t
    };
    write_output(&text, s.out.as_deref())?;
    if discrepancy {
        eprintln!(
            "discrepancy: prescribed schedule leaves {} critical cells on {d}",
            report.critical_count()
        );
        return Ok(1);
    }
    Ok(0)
}

fn cmd_homology(args: &FamilyArgs, independence: bool, s: &Settings) -> Result<u8, CliError> {
    let (d, g) = args.graph()?;
    let c = build_complex(&g, independence, s.verify.face_cap)?;
    let r = reduced_betti(&c);
    let text = if s.json {
        json_text(&r.to_json())
    } else {
        let mut t = format!("{}\n", complex_name(&d, independence));
        if r.void {
            t.push_str("void complex\n");
        } else {
            let betti: Vec<String> = r.reduced_betti.iter().map(u64::to_string).collect();
            t.push_str(&format!("reduced betti {}\n", betti.join(" ")));
            if r.reduced_betti_minus_one > 0 {
                t.push_str("reduced betti in dimension -1: 1\n");
            }
            for (dim, tors) in r.torsion.iter().enumerate() {
                if !tors.is_empty() {
                    let orders: Vec<String> = tors.iter().map(|t| format!("Z/{t}")).collect();
                    t.push_str(&format!("torsion dim {dim}: {}\n", orders.join(" + ")));
                }
            }
            if r.is_torsion_free() {
                t.push_str("torsion free\n");
            }
        }
        t.push_str(&format!("consistent with {}\n", r.shadow().kind));
        t
    };
    write_output(&text, s.out.as_deref())?;
    Ok(0)
}

/// Maps the generic range flags onto the caps a job actually reads.
fn apply_limits(
    job: Job,
    cfg: &mut VerifyConfig,
    n_max: Option<usize>,
    k_max: Option<usize>,
    m_max: Option<usize>,
    strict: bool,
) -> Result<(), CliError> {
    let unused = |flag: &str, v: Option<usize>| -> Result<(), CliError> {
        if strict && v.is_some() {
            Err(CliError::Usage(format!("{job} takes no --{flag}")))
        } else {
            Ok(())
        }
    };
    match job {
        Job::ThmGrid
        | Job::LemmaBad
        | Job::LemmaBc
        | Job::IndEqualsPm
        | Job::FoldSequence
        | Job::AppendixSchedules => {
            unused("k-max", k_max)?;
            unused("m-max", m_max)?;
            if let Some(n) = n_max {
                cfg.grid_n_max = n;
            }
        }
        Job::ThmEvenTiling => {
            unused("m-max", m_max)?;
            if let Some(n) = n_max {
                cfg.even_n_max = n;
            }
            if let Some(k) = k_max {
                cfg.even_k_max = k;
            }
        }
        Job::ThmOddAlternate | Job::ThmOddSimple | Job::LemmaAttach => {
            unused("m-max", m_max)?;
            if let Some(n) = n_max {
                cfg.odd_n_max = n;
            }
            if let Some(k) = k_max {
                cfg.odd_k_max = k;
                if job == Job::LemmaAttach {
                    cfg.triangles_k_max = k;
                }
            }
        }
        Job::ThmTriangles => {
            unused("n-max", n_max)?;
            unused("m-max", m_max)?;
            if let Some(k) = k_max {
                cfg.triangles_k_max = k;
            }
        }
        Job::Conjecture => {
            unused("k-max", k_max)?;
            if let Some(m) = m_max {
                cfg.sweep_m_max = m;
            }
            if let Some(n) = n_max {
                cfg.sweep_n_max = n;
            }
        }
    }
    Ok(())
}

fn combined_exit(reports: &[JobReport]) -> u8 {
    let any = |st: Status| reports.iter().any(|r| r.count(st) > 0);
    if any(Status::Fail) {
        1
    } else if any(Status::Skip) {
        3
    } else {
        0
    }
}

fn cmd_verify(
    job: &str,
    n_max: Option<usize>,
    k_max: Option<usize>,
    m_max: Option<usize>,
    s: &Settings,
) -> Result<u8, CliError> {
    let jobs: Vec<Job> = if job == "all" {
        Job::ALL.to_vec()
    } else {
        vec![job.parse::<Job>().map_err(CliError::Usage)?]
    };
    let strict = jobs.len() == 1;
    let mut reports = Vec::new();
    for &j in &jobs {
        let mut cfg = s.verify.clone();
        apply_limits(j, &mut cfg, n_max, k_max, m_max, strict)?;
        reports.push(run_job(j, &cfg));
    }
    let mut lines = String::new();
    for r in &reports {
        for l in r.lines() {
            lines.push_str(&l);
            lines.push('\n');
        }
        lines.push_str(&format!(
            "{}: {} pass, {} fail, {} skip, {} evidence\n",
            r.job,
            r.count(Status::Pass),
            r.count(Status::Fail),
            r.count(Status::Skip),
            r.count(Status::Evidence)
        ));
    }
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        json!({"jobs": reports.iter().map(JobReport::to_json).collect::<Vec<_>>()})
    };
    match (&s.out, s.json) {
        (Some(path), _) => {
            write_output(&lines, None)?;
            write_output(&json_text(&json), Some(path))?;
        }
        (None, true) => write_output(&json_text(&json), None)?,
        (None, false) => write_output(&lines, None)?,
    }
    Ok(combined_exit(&reports))
}

fn cmd_conjecture(
    m_max: Option<usize>,
    n_max: Option<usize>,
    s: &Settings,
) -> Result<u8, CliError> {
    let mut cfg = s.verify.clone();
    apply_limits(Job::Conjecture, &mut cfg, n_max, None, m_max, true)?;
    let rows = conjecture_sweep(&cfg);
    let text = if s.json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| match &r.outcome {
                Ok(h) => json!({"m": r.m, "n": r.n, "homology": h.to_json()}),
                Err(e) => json!({"m": r.m, "n": r.n, "skipped": e.to_string()}),
            })
            .collect();
        json_text(&Value::Array(rows))
    } else {
        sweep_csv(&rows)
    };
    write_output(&text, s.out.as_deref())?;
    Ok(if rows.iter().any(|r| r.outcome.is_err()) {
        3
    } else {
        0
    })
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let s = load_settings(&cli.global)?;
    if s.dot && !matches!(cli.command, Command::Family(_)) {
        return Err(CliError::Usage("--dot applies to `family` only".into()));
    }
    match &cli.command {
        Command::Family(f) => cmd_family(f, &s),
        Command::Badmatchings(f) => cmd_badmatchings(f, &s),
        Command::Complex {
            family,
            independence,
            faces,
        } => cmd_complex(family, *independence, *faces, &s),
        Command::Morse { family, schedule } => cmd_morse(family, schedule.as_deref(), &s),
        Command::Homology {
            family,
            independence,
        } => cmd_homology(family, *independence, &s),
        Command::Verify {
            job,
            n_max,
            k_max,
            m_max,
        } => cmd_verify(job, *n_max, *k_max, *m_max, &s),
        Command::Conjecture { m_max, n_max } => cmd_conjecture(*m_max, *n_max, &s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> Settings {
        Settings {
            verify: VerifyConfig::default(),
            out: None,
            json: false,
            dot: false,
        }
    }

    #[test]
    fn config_lines_parse() {
        let mut s = settings();
        parse_config(
            "# caps\ngrid_n_max = 6\n\nout=/tmp/x.json\nface_cap=10\n",
            &mut s,
        )
        .unwrap();
        assert_eq!(s.verify.grid_n_max, 6);
        assert_eq!(s.verify.face_cap, 10);
        assert_eq!(s.out, Some(PathBuf::from("/tmp/x.json")));
    }

    #[test]
    fn config_rejects_garbage() {
        assert!(parse_config("grid_n_max", &mut settings()).is_err());
        assert!(parse_config("grid_n_max=-1", &mut settings()).is_err());
        assert!(parse_config("colour=3", &mut settings()).is_err());
    }

    #[test]
    fn limits_route_to_the_right_caps() {
        let mut cfg = VerifyConfig::default();
        apply_limits(Job::ThmEvenTiling, &mut cfg, Some(4), Some(2), None, true).unwrap();
        assert_eq!((cfg.even_n_max, cfg.even_k_max), (4, 2));
        apply_limits(Job::Conjecture, &mut cfg, Some(3), None, Some(2), true).unwrap();
        assert_eq!((cfg.sweep_m_max, cfg.sweep_n_max), (2, 3));
        assert!(apply_limits(Job::ThmTriangles, &mut cfg, Some(3), None, None, true).is_err());
        assert!(apply_limits(Job::ThmTriangles, &mut cfg, Some(3), None, None, false).is_ok());
    }

    #[test]
    fn missing_family_parameters_are_usage_errors() {
        let args = FamilyArgs {
            family: FamilyName::EvenTiling,
            n: Some(3),
            m: None,
            k: None,
        };
        assert!(matches!(args.descriptor(), Err(CliError::Usage(_))));
        let args = FamilyArgs {
            family: FamilyName::Grid2,
            n: Some(3),
            m: None,
            k: Some(2),
        };
        assert!(matches!(args.descriptor(), Err(CliError::Usage(_))));
    }

    #[test]
    fn error_codes() {
        let bad = CliError::Core(Error::InvalidParameter {
            family: "grid2",
            reason: String::new(),
        });
        assert_eq!(bad.exit_code(), 2);
        assert_eq!(
            CliError::Core(Error::FaceCapExceeded { cap: 1 }).exit_code(),
            3
        );
        assert_eq!(CliError::Core(Error::VoidComplex).exit_code(), 1);
    }
}
