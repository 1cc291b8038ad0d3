//! Command implementations behind the `eqo` binary.
//!
//! Each `cmd_*` reads a problem document and returns a [`ReportDocument`];
//! rendering and exit codes are handled by [`render_text`], [`render_json`]
//! and [`CliError::exit_code`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::classify::{classify, classify_2d, ClassifyOptions, DEFAULT_SEED};
use crate::document::{
    ClassificationReport, CommandEcho, DocumentError, HammersteinSection, Problem, ProblemDocument, Rank1Section,
    ReportDocument, RootReport, TraceReport,
};
use crate::error::Error;
use crate::gallery;
use crate::hammerstein::solve_hammerstein;
use crate::linalg::Vector;
use crate::qop::QopProblem;
use crate::quadrature::Quadrature;
use crate::rank1::{check_condition, solve_rank1};
use crate::solver::{
    certify_stability, dedup_roots, default_box, enumerate_stable, low_discrepancy, nk_iterate, polish, solve_2d,
    solve_all, solve_homotopy, NkOptions, Outcome, SearchBox, SolveReport, MAX_HOMOTOPY_DIM, POLISH_STEPS,
};

/// Default number of multi-start points.
pub const DEFAULT_STARTS: usize = 256;

/// Environment variable that overrides the deterministic seed.
pub const SEED_ENV: &str = "EQO_SEED";

/// Errors surfaced by the command layer.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Invalid { path: String, source: Error },
    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    /// `1` for input problems, `2` for usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Which root finder `solve` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverChoice {
    /// Multi-start merged with the algebraic solvers.
    #[default]
    Auto,
    Multistart,
    Resultant,
    Homotopy,
}

impl std::str::FromStr for SolverChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "auto" => Ok(SolverChoice::Auto),
            "multistart" => Ok(SolverChoice::Multistart),
            "resultant" => Ok(SolverChoice::Resultant),
            "homotopy" => Ok(SolverChoice::Homotopy),
            _ => Err(CliError::Usage(format!("unknown solver `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyFlags {
    pub seed: u64,
}

impl Default for ClassifyFlags {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveFlags {
    pub starts: usize,
    pub box_center: Option<Vec<f64>>,
    pub box_radius: Option<f64>,
    pub tol: Option<f64>,
    pub from: Option<Vec<f64>>,
    pub trace: bool,
    pub solver: SolverChoice,
    pub seed: u64,
}

impl Default for SolveFlags {
    fn default() -> Self {
        Self {
            starts: DEFAULT_STARTS,
            box_center: None,
            box_radius: None,
            tol: None,
            from: None,
            trace: false,
            solver: SolverChoice::Auto,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Flags {
    pub starts: usize,
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Default for Rank1Flags {
    fn default() -> Self {
        Self {
            starts: DEFAULT_STARTS,
            tol: None,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HammersteinFlags {
    pub quadrature: Option<Quadrature>,
    pub starts: usize,
    pub out_dir: PathBuf,
    pub seed: u64,
}

impl Default for HammersteinFlags {
    fn default() -> Self {
        Self {
            quadrature: None,
            starts: DEFAULT_STARTS,
            out_dir: PathBuf::from("eqo-solutions"),
            seed: DEFAULT_SEED,
        }
    }
}

/// Seed from [`SEED_ENV`] when set, else the library default.
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Parses `(a, b, ...)`, `[a, b]` or `a,b`.
pub fn parse_point(s: &str) -> Result<Vec<f64>, CliError> {
    let t = s.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .unwrap_or(t);
    t.split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse point `{s}`")))
        })
        .collect()
}

fn load(path: &Path) -> Result<(ProblemDocument, Problem), CliError> {
    let p = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: p.clone(),
        message: e.to_string(),
    })?;
    ProblemDocument::read(&text).map_err(|e| match e {
        DocumentError::Parse { line, column, message } => CliError::Parse {
            path: p,
            line,
            column,
            message,
        },
        DocumentError::Invalid(source) => CliError::Invalid { path: p, source },
    })
}

fn invalid(path: &Path, source: Error) -> CliError {
    CliError::Invalid {
        path: path.display().to_string(),
        source,
    }
}

fn echo(name: &str, path: &Path, options: Vec<(&str, String)>) -> CommandEcho {
    CommandEcho {
        name: name.into(),
        input: path.display().to_string(),
        options: options.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn classification_report(q: &crate::qop::QuadraticOperator, seed: u64) -> ClassificationReport {
    let opts = ClassifyOptions {
        seed,
        ..ClassifyOptions::default()
    };
    let (cls, delta) = match classify_2d(q, &opts) {
        Ok(pc) => (pc.classification, Some(pc.delta)),
        Err(_) => (classify(q, &opts), None),
    };
    ClassificationReport {
        kind: cls.kind.to_string(),
        witness: cls.witness.map(|w| w.lambda().to_vec()),
        margin: cls.margin,
        restarts_used: cls.restarts_used,
        heuristic: cls.heuristic,
        delta,
    }
}

fn nk_options(tol: Option<f64>) -> Result<NkOptions, CliError> {
    let mut opts = NkOptions::default();
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
        opts.tol_res = t;
    }
    Ok(opts)
}

fn fill_roots(report: &mut ReportDocument, rep: &SolveReport) {
    report.roots = rep.roots.iter().map(RootReport::from).collect();
    report.starts_run = Some(rep.starts_run);
    report.even_count_ok = Some(rep.even_count_ok);
}

/// Kind, witness and margin; the planar discriminant when `n = 2`.
pub fn cmd_classify(path: &Path, flags: &ClassifyFlags) -> Result<ReportDocument, CliError> {
    let t0 = Instant::now();
    let (doc, problem) = load(path)?;
    let rule = doc.quadrature.unwrap_or(Quadrature::Trapezoid);
    let q = problem.operator(rule).map_err(|e| invalid(path, e))?;
    let mut report = ReportDocument::new(echo("classify", path, vec![("seed", flags.seed.to_string())]));
    report.classification = Some(classification_report(&q, flags.seed));
    report.elapsed_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

/// Root enumeration, or a single Newton run with `--from`.
pub fn cmd_solve(path: &Path, flags: &SolveFlags) -> Result<ReportDocument, CliError> {
    let t0 = Instant::now();
    if flags.starts == 0 {
        return Err(CliError::Usage("--starts must be at least 1".into()));
    }
    let opts = nk_options(flags.tol)?;
    let (_, problem) = load(path)?;
    let p: QopProblem = match &problem {
        Problem::Full(p) => p.clone(),
        Problem::Rank1(r) => r.to_qop(),
        Problem::Hammerstein(_) => {
            return Err(CliError::Usage(
                "Hammerstein documents are solved with `eqo hammerstein`".into(),
            ));
        }
    };
    let n = p.dim();
    let mut options = vec![
        ("solver", format!("{:?}", flags.solver).to_lowercase()),
        ("starts", flags.starts.to_string()),
        ("seed", flags.seed.to_string()),
        ("tol", opts.tol_res.to_string()),
        ("trace", flags.trace.to_string()),
    ];
    let mut report_roots: Vec<crate::solver::Root> = Vec::new();
    let mut traces = Vec::new();
    let mut starts_run = 0;
    let mut warnings = Vec::new();

    if let Some(x0) = &flags.from {
        if x0.len() != n {
            return Err(CliError::Usage(format!(
                "--from needs {n} coordinates, got {}",
                x0.len()
            )));
        }
        options.push(("from", fmt_vec(x0)));
        let trace = nk_iterate(&p, &Vector::from_row_slice(x0), &opts).map_err(|e| invalid(path, e))?;
        if trace.outcome == Outcome::Converged {
            if let Ok(root) = certify_stability(&p, &polish(&p, trace.last(), POLISH_STEPS), &opts) {
                report_roots.push(root);
            }
        }
        starts_run = 1;
        traces.push(trace);
    } else {
        let def = default_box(&p);
        let center = match &flags.box_center {
            Some(c) if c.len() != n => {
                return Err(CliError::Usage(format!(
                    "--box-center needs {n} coordinates, got {}",
                    c.len()
                )));
            }
            Some(c) => Vector::from_row_slice(c),
            None => def.center.clone(),
        };
        let radius = match flags.box_radius {
            Some(r) if !(r > 0.0) => return Err(CliError::Usage(format!("--box-radius must be positive, got {r}"))),
            Some(r) => r,
            None => def.radius,
        };
        let bx = SearchBox::new(center, radius).with_seed(flags.seed);
        options.push(("box_center", fmt_vec(bx.center.as_slice())));
        options.push(("box_radius", bx.radius.to_string()));
        let solved = match flags.solver {
            SolverChoice::Auto => solve_all(&p, flags.starts, &bx, &opts),
            SolverChoice::Multistart => enumerate_stable(&p, flags.starts, &bx, &opts),
            SolverChoice::Resultant => {
                if n != 2 {
                    return Err(CliError::Usage(format!("the resultant solver needs n = 2, got {n}")));
                }
                solve_2d(&p, &opts)
            }
            SolverChoice::Homotopy => {
                if n > MAX_HOMOTOPY_DIM {
                    return Err(CliError::Usage(format!(
                        "the homotopy solver needs n <= {MAX_HOMOTOPY_DIM}, got {n}"
                    )));
                }
                solve_homotopy(&p, bx.seed, &opts)
            }
        };
        match solved {
            Ok(rep) => {
                starts_run += rep.starts_run;
                report_roots.extend(rep.roots);
            }
            // Numeric failures are reported, not fatal.
            Err(e) => warnings.push(format!("{} solver: {e}", options[0].1)),
        }
        let sampled = matches!(flags.solver, SolverChoice::Auto | SolverChoice::Multistart);
        if flags.trace && sampled {
            for u in low_discrepancy(n, flags.starts, bx.seed) {
                let x0 = &bx.center + (u * 2.0 - Vector::from_element(n, 1.0)) * bx.radius;
                traces.push(nk_iterate(&p, &x0, &opts).map_err(|e| invalid(path, e))?);
            }
        }
    }
    let rep = SolveReport::new(dedup_roots(report_roots), starts_run);
    let mut report = ReportDocument::new(echo("solve", path, options));
    report.classification = Some(classification_report(p.q(), flags.seed));
    fill_roots(&mut report, &rep);
    report.traces = traces.iter().map(TraceReport::from).collect();
    report.warnings = warnings;
    if !flags.trace && flags.from.is_some() {
        // Keep only the end point of the single run.
        for t in &mut report.traces {
            let last = t.iterates.len() - 1;
            t.iterates = vec![t.iterates[last].clone()];
            t.residual_norms = vec![t.residual_norms[last]];
        }
    }
    report.elapsed_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

/// Certificate, supremum root and all roots of a rank-one document.
pub fn cmd_rank1(path: &Path, flags: &Rank1Flags) -> Result<ReportDocument, CliError> {
    let t0 = Instant::now();
    if flags.starts == 0 {
        return Err(CliError::Usage("--starts must be at least 1".into()));
    }
    let opts = nk_options(flags.tol)?;
    let (_, problem) = load(path)?;
    let Problem::Rank1(r) = problem else {
        return Err(CliError::Usage(
            "`eqo rank1` needs a document with a `rank1` block".into(),
        ));
    };
    let options = vec![("starts", flags.starts.to_string()), ("seed", flags.seed.to_string())];
    let mut report = ReportDocument::new(echo("rank1", path, options));
    let certificate = check_condition(&r);
    let message = crate::rank1::sign_normalize(&r).err().map(|e| e.to_string());
    let result = solve_rank1(&r, flags.starts, &opts);
    report.classification = Some(classification_report(
        &crate::qop::QuadraticOperator::diag_squares(r.dim()),
        flags.seed,
    ));
    fill_roots(&mut report, &result.report);
    report.rank1 = Some(Rank1Section {
        certificate,
        start_alpha: result.sup.as_ref().map(|s| s.start.alpha),
        sup: result.sup.as_ref().map(|s| s.root.x.iter().copied().collect()),
        sup_iterations: result.sup.as_ref().map(|s| s.trace.iterates.len() - 1),
        message,
        theorem_violation: result.theorem_violation.clone(),
    });
    report.elapsed_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

/// Reduces, solves, and writes one `t,x` CSV file per root to `out_dir`.
pub fn cmd_hammerstein(path: &Path, flags: &HammersteinFlags) -> Result<ReportDocument, CliError> {
    let t0 = Instant::now();
    if flags.starts == 0 {
        return Err(CliError::Usage("--starts must be at least 1".into()));
    }
    let (doc, problem) = load(path)?;
    let Problem::Hammerstein(spec) = problem else {
        return Err(CliError::Usage(
            "`eqo hammerstein` needs a document with a `hammerstein` block".into(),
        ));
    };
    let rule = flags.quadrature.or(doc.quadrature).unwrap_or(Quadrature::Trapezoid);
    let sol = solve_hammerstein(&spec, rule, flags.starts, &NkOptions::default()).map_err(|e| invalid(path, e))?;
    fs::create_dir_all(&flags.out_dir).map_err(|e| CliError::Io {
        path: flags.out_dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut files = Vec::new();
    for (i, x) in sol.functions.iter().enumerate() {
        let name = format!("solution_{i}.csv");
        let mut text = String::from("t,x\n");
        for (t, v) in spec.grid.iter().zip(x) {
            let _ = writeln!(text, "{t},{v}");
        }
        let file = flags.out_dir.join(&name);
        fs::write(&file, text).map_err(|e| CliError::Io {
            path: file.display().to_string(),
            message: e.to_string(),
        })?;
        files.push(name);
    }
    let options = vec![
        ("quadrature", rule.to_string()),
        ("starts", flags.starts.to_string()),
        ("seed", flags.seed.to_string()),
    ];
    let mut report = ReportDocument::new(echo("hammerstein", path, options));
    let cls = &sol.classification;
    report.classification = Some(ClassificationReport {
        kind: cls.kind.to_string(),
        witness: cls.witness.as_ref().map(|w| w.lambda().to_vec()),
        margin: cls.margin,
        restarts_used: cls.restarts_used,
        heuristic: cls.heuristic,
        delta: None,
    });
    fill_roots(&mut report, &sol.report);
    report.hammerstein = Some(HammersteinSection {
        quadrature: rule.to_string(),
        labels: sol.reduced.labels(),
        residuals: sol.residuals.clone(),
        solution_files: files,
    });
    report.warnings.extend(sol.warning.clone());
    report.elapsed_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

pub fn cmd_gallery_list() -> String {
    let mut out = String::new();
    for id in gallery::list_entries() {
        let entry = gallery::make_entry(&id).expect("catalog ids resolve");
        let _ = writeln!(out, "{id:<24} {}", entry.provenance);
    }
    out
}

pub fn cmd_gallery_export(id: &str) -> Result<String, CliError> {
    gallery::export(id)
        .map(|d| d.to_json() + "\n")
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Runs `f` on a pool of `threads` workers; results do not depend on the
/// count.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Usage(e.to_string())),
    }
}

pub fn render_json(report: &ReportDocument) -> String {
    report.to_json() + "\n"
}

/// Human-readable report.
pub fn render_text(report: &ReportDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "eqo {} {}", report.command.name, report.command.input);
    for (k, v) in &report.command.options {
        let _ = writeln!(s, "  {k}: {v}");
    }
    if let Some(c) = &report.classification {
        let _ = write!(s, "classification: {} (margin {:.6e}", c.kind, c.margin);
        if c.heuristic {
            s.push_str(", heuristic");
        }
        s.push(')');
        if let Some(d) = c.delta {
            let _ = write!(s, ", delta {d}");
        }
        s.push('\n');
        if let Some(w) = &c.witness {
            let _ = writeln!(s, "  witness: {}", fmt_vec(w));
        }
    }
    if let Some(r) = &report.rank1 {
        let c = &r.certificate;
        let _ = writeln!(
            s,
            "certificate: holds={} column_sign_ok={} m={} beta={} condition_value={}",
            c.holds, c.column_sign_ok, c.m, c.beta, c.condition_value
        );
        if let Some(m) = &r.message {
            let _ = writeln!(s, "  {m}");
        }
        if let Some(x) = &r.sup {
            let _ = writeln!(s, "x* (componentwise largest root): {}", fmt_vec(x));
        }
        if let Some(v) = &r.theorem_violation {
            let _ = writeln!(s, "  {v}");
        }
    }
    if report.starts_run.is_some() || !report.roots.is_empty() {
        let stable = report.roots.iter().filter(|r| r.stable).count();
        let _ = writeln!(
            s,
            "roots: {} ({} stable, parity {})",
            report.roots.len(),
            stable,
            if stable % 2 == 0 { "even" } else { "odd" }
        );
        let _ = writeln!(s, "  {:<40} {:>12} {:>12}  stable", "x", "residual", "min sv");
        for r in &report.roots {
            let _ = writeln!(
                s,
                "  {:<40} {:>12.3e} {:>12.3e}  {}",
                fmt_vec(&r.x),
                r.residual,
                r.jac_min_sv,
                r.stable
            );
        }
    }
    if let Some(h) = &report.hammerstein {
        let _ = writeln!(s, "moments: {}", h.labels.join(" "));
        for (f, r) in h.solution_files.iter().zip(&h.residuals) {
            let _ = writeln!(s, "  {f}: integral residual {r:.3e}");
        }
    }
    for t in &report.traces {
        let _ = writeln!(s, "trace from {}: {}", fmt_vec(&t.start), t.outcome);
        let _ = writeln!(s, "  {:>4}  {:<40} {:>12}", "k", "x", "residual");
        let offset = if t.iterates.len() == 1 {
            t.residual_norms.len().max(1) - 1
        } else {
            0
        };
        for (k, (x, r)) in t.iterates.iter().zip(&t.residual_norms).enumerate() {
            let _ = writeln!(s, "  {:>4}  {:<40} {:>12.3e}", k + offset, fmt_vec(x), r);
        }
    }
    for w in &report.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    if let Some(ms) = report.elapsed_ms {
        let _ = writeln!(s, "elapsed: {ms:.1} ms");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_doc(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("(2,4)").unwrap(), vec![2.0, 4.0]);
        assert_eq!(parse_point("[1, -0.5]").unwrap(), vec![1.0, -0.5]);
        assert_eq!(parse_point("3").unwrap(), vec![3.0]);
        assert!(parse_point("(a,b)").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        let dir = tempfile::tempdir().unwrap();
        let e = cmd_classify(&dir.path().join("missing.json"), &ClassifyFlags::default()).unwrap_err();
        assert!(matches!(e, CliError::Io { .. }));
        assert_eq!(e.exit_code(), 1);
        let bad = write_doc(dir.path(), "bad.json", "{ \"version\": \"1\",\n \"n\": }");
        let e = cmd_classify(&bad, &ClassifyFlags::default()).unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }), "{e}");
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn classify_planar_reports_delta() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_doc(
            dir.path(),
            "q.json",
            &cmd_gallery_export("discriminant-hyperbolic").unwrap(),
        );
        let rep = cmd_classify(&p, &ClassifyFlags::default()).unwrap();
        let c = rep.classification.unwrap();
        assert_eq!(c.kind, "Hyperbolic");
        assert_eq!(c.delta, Some(-1.0));
    }

    #[test]
    fn solve_with_zero_starts_is_usage_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_doc(dir.path(), "a.json", &cmd_gallery_export("example-a").unwrap());
        let flags = SolveFlags {
            starts: 0,
            ..SolveFlags::default()
        };
        assert_eq!(cmd_solve(&p, &flags).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn single_run_from_start() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_doc(dir.path(), "iii.json", &cmd_gallery_export("example-iii").unwrap());
        let flags = SolveFlags {
            from: Some(vec![2.0, 4.0]),
            trace: true,
            ..SolveFlags::default()
        };
        let rep = cmd_solve(&p, &flags).unwrap();
        assert_eq!(rep.traces.len(), 1);
        assert!(rep.traces[0].iterates.len() > 2);
        let last = rep.traces[0].iterates.last().unwrap();
        assert!((last[0] - 3.0_f64.sqrt()).abs() < 1e-8 && (last[1] - 3.0).abs() < 1e-8);
        assert_eq!(rep.roots.len(), 1);
        assert!(rep.roots[0].stable);
        assert!(render_text(&rep).contains("trace from (2,4): Converged"));
    }

    #[test]
    fn rank1_mixed_sign_falls_back() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_doc(
            dir.path(),
            "r.json",
            r#"{"version":"1","n":2,"rank1":{"coef":[[1,-1],[-1,1]],"rhs":[1,1]}}"#,
        );
        let rep = cmd_rank1(&p, &Rank1Flags::default()).unwrap();
        let r = rep.rank1.unwrap();
        assert!(!r.certificate.holds);
        assert!(r.message.unwrap().contains("both signs"));
        assert!(r.sup.is_none());
    }

    #[test]
    fn hammerstein_zero_kernel_writes_forcing() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_doc(
            dir.path(),
            "h.json",
            r#"{"version":"1","n":3,"hammerstein":{"n_basis":1,"grid":[0,0.5,1],
               "a":[[0,0,0]],"b":[[0,0,0]],"c":[[0,0,0]],"d":[[0,0,0]],"e":[[0,0,0]],"f":[1,2,3]}}"#,
        );
        let out = dir.path().join("out");
        let flags = HammersteinFlags {
            out_dir: out.clone(),
            starts: 4,
            ..HammersteinFlags::default()
        };
        let rep = cmd_hammerstein(&p, &flags).unwrap();
        assert_eq!(rep.hammerstein.unwrap().solution_files, vec!["solution_0.csv"]);
        let text = fs::read_to_string(out.join("solution_0.csv")).unwrap();
        assert_eq!(text, "t,x\n0,1\n0.5,2\n1,3\n");
    }

    #[test]
    fn zero_threads_rejected() {
        assert!(with_threads(Some(0), || ()).is_err());
        assert_eq!(with_threads(Some(2), || 7).unwrap(), 7);
    }
}
