//! Front end for the `zinbiel` binary.
//!
//! [`run`] parses arguments, calls into the library and renders the report.
//! It never touches the process (no `exit`, no direct printing), so tests can
//! call it in-process and compare output byte for byte.
//!
//! Exit codes: `0` success or property holds, `1` property fails, `2` usage or
//! parse error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zinbiel::analysis::{
    classify_shape, fingerprint, natural_grading, nilindex, power_series, Fingerprint, Shape,
};
use zinbiel::catalog::{
    fixture_manifest, known_aliases, make_dim4, make_f1, make_f2, make_f3, make_filiform, make_nf, parse_dsl,
    serialize_algebra, CatalogId,
};
use zinbiel::iso::{
    distinguish, iso_search_fp, normalize_filiform, reduce_mod_p, split_scan_fp, verify_normalization, ModMatrix,
    NormalizingChange, PrimeNote, PrimeOutcome, Verdict,
};
use zinbiel::scalar::{format_rational, parse_rational};
use zinbiel::{verify_isomorphism, Algebra, BasisChange, Error, Field, Rational};

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "zinbiel", version, about = "Exact computations with Zinbiel algebras")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the searches (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Zinbiel identity on every basis triple.
    Check { file: PathBuf },
    /// Dimensions of the powers A^1, A^2, ...
    Powers { file: PathBuf },
    /// Least s with A^s = 0.
    Nilindex { file: PathBuf },
    /// Nul-filiform, filiform or other.
    Shape { file: PathBuf },
    /// Associated graded algebra, printed as a table file.
    Grade { file: PathBuf },
    /// Rank invariants used to tell algebras apart.
    Fingerprint { file: PathBuf },
    /// Print a catalog algebra: nf|f1|f2|f3 N, fab N --alpha --beta, a1..a16 [--alpha].
    Gen(GenArgs),
    /// Reduce the filiform family F_n(alpha, beta) to a normal form.
    Normalize {
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Compare two algebras up to isomorphism.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        /// Work over F_P only.
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        /// With --mod, run the exhaustive search.
        #[arg(long)]
        search: bool,
    },
    /// Check that a basis change carries FILE1 onto FILE2.
    VerifyChange {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Look for a direct-sum splitting over F_P.
    Split {
        file: PathBuf,
        #[arg(long = "mod", value_name = "P")]
        modulus: u64,
    },
    /// Fixture catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    /// nf, f1, f2, f3, fab or a1 ... a16.
    kind: String,
    /// Dimension (not used by a1 ... a16).
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Write to FILE instead of stdout.
    #[arg(short = 'o', value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Check every fixture and print the pairwise distinction matrix.
    Verify {
        #[arg(long, default_value = "data/catalog")]
        dir: PathBuf,
    },
}

/// A usage or input problem; always exit code 2.
#[derive(Debug)]
struct Failure {
    message: String,
    file: Option<String>,
    line: Option<usize>,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Failure { message: message.into(), file: None, line: None }
    }

    fn in_file(path: &Path, err: Error) -> Self {
        let line = match &err {
            Error::Syntax { line, .. } | Error::IndexOutOfRange { line, .. } | Error::DuplicateProduct { line, .. } => {
                Some(*line).filter(|&l| l > 0)
            }
            _ => None,
        };
        Failure { message: err.to_string(), file: Some(path.display().to_string()), line }
    }

    fn render(&self) -> String {
        match (&self.file, self.line) {
            // library errors already name the line
            (Some(f), Some(l)) if !self.message.starts_with("line ") => format!("{f}:{l}: {}", self.message),
            (Some(f), _) => format!("{f}: {}", self.message),
            _ => self.message.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(e.to_string())
    }
}

/// What a subcommand produced: exit code, text report and JSON report.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { code: 0, text, json }
    }
}

/// Runs one invocation. `args` includes the program name, as with `std::env::args`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let json_mode = cli.json;
    let name = command_name(&cli.command);
    let result = match cli.threads {
        Some(0) => Err(Failure::new("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Failure::new(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(&cli.command),
    };
    match result {
        Ok(report) => {
            let stdout = if json_mode {
                let mut obj = report.json;
                obj["command"] = json!(name);
                format!("{}\n", serde_json::to_string(&obj).expect("json values serialize"))
            } else {
                report.text
            };
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(f) => {
            if json_mode {
                let obj = json!({
                    "command": name,
                    "error": { "message": f.message, "file": f.file, "line": f.line },
                });
                let stdout = format!("{}\n", serde_json::to_string(&obj).expect("json values serialize"));
                Outcome { code: 2, stdout, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", f.render()) }
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Powers { .. } => "powers",
        Command::Nilindex { .. } => "nilindex",
        Command::Shape { .. } => "shape",
        Command::Grade { .. } => "grade",
        Command::Fingerprint { .. } => "fingerprint",
        Command::Gen(_) => "gen",
        Command::Normalize { .. } => "normalize",
        Command::Iso { .. } => "iso",
        Command::VerifyChange { .. } => "verify-change",
        Command::Split { .. } => "split",
        Command::Catalog { .. } => "catalog verify",
    }
}

fn dispatch(c: &Command) -> Result<Report, Failure> {
    match c {
        Command::Check { file } => check(file),
        Command::Powers { file } => powers(file),
        Command::Nilindex { file } => nilindex_cmd(file),
        Command::Shape { file } => shape(file),
        Command::Grade { file } => grade(file),
        Command::Fingerprint { file } => fingerprint_cmd(file),
        Command::Gen(args) => gen(args),
        Command::Normalize { n, alpha, beta } => normalize(*n, alpha, beta),
        Command::Iso { file1, file2, modulus, search } => iso(file1, file2, *modulus, *search),
        Command::VerifyChange { file1, file2, matrix } => verify_change(file1, file2, matrix),
        Command::Split { file, modulus } => split(file, *modulus),
        Command::Catalog { action: CatalogAction::Verify { dir } } => catalog_verify(dir),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        message: format!("cannot read file: {e}"),
        file: Some(path.display().to_string()),
        line: None,
    })
}

/// Reads a `.zb` file; parameters take their declared values.
fn load(path: &Path) -> Result<(String, Algebra), Failure> {
    let doc = parse_dsl(&read_text(path)?).map_err(|e| Failure::in_file(path, e))?;
    let algebra = doc.instantiate(&[]).map_err(|e| Failure::in_file(path, e))?;
    Ok((doc.name, algebra))
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn shape_name(s: Shape) -> &'static str {
    match s {
        Shape::NulFiliform => "nul-filiform",
        Shape::Filiform => "filiform",
        Shape::Other => "other",
    }
}

fn check(file: &Path) -> Result<Report, Failure> {
    let (name, a) = load(file)?;
    let report = a.zinbiel_check();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({ "i": v.i + 1, "j": v.j + 1, "k": v.k + 1, "residual": rationals(&v.residual) }))
        .collect();
    let mut text = String::new();
    if report.holds {
        text.push_str("Zinbiel identity: holds\n");
    } else {
        let _ = writeln!(text, "Zinbiel identity: fails ({} violating triples)", report.violations.len());
        for v in &report.violations {
            let _ = writeln!(
                text,
                "  violation at ({}, {}, {}): residual [{}]",
                v.i + 1,
                v.j + 1,
                v.k + 1,
                rationals(&v.residual).join(", ")
            );
        }
    }
    Ok(Report {
        code: if report.holds { 0 } else { 1 },
        text,
        json: json!({ "name": name, "holds": report.holds, "violations": violations }),
    })
}

fn powers(file: &Path) -> Result<Report, Failure> {
    let (name, a) = load(file)?;
    let series = power_series(&a);
    let mut text = String::new();
    for (i, d) in series.dims.iter().enumerate() {
        let _ = writeln!(text, "dim A^{} = {}", i + 1, d);
    }
    if !series.is_nilpotent() {
        text.push_str("(the sequence stabilises above zero: not nilpotent)\n");
    }
    Ok(Report::ok(text, json!({ "name": name, "power_dims": series.dims, "nilpotent": series.is_nilpotent() })))
}

fn nilindex_cmd(file: &Path) -> Result<Report, Failure> {
    let (name, a) = load(file)?;
    Ok(match nilindex(&a) {
        Ok(s) => Report::ok(format!("{s}\n"), json!({ "name": name, "nilpotent": true, "nilindex": s })),
        Err(Error::NotNilpotent { stable_dim }) => Report {
            code: 1,
            text: format!("not nilpotent (powers stabilise at dimension {stable_dim})\n"),
            json: json!({ "name": name, "nilpotent": false, "nilindex": null }),
        },
        Err(e) => return Err(e.into()),
    })
}

fn shape(file: &Path) -> Result<Report, Failure> {
    let (name, a) = load(file)?;
    let s = shape_name(classify_shape(&a));
    Ok(Report::ok(format!("{s}\n"), json!({ "name": name, "shape": s })))
}

fn grade(file: &Path) -> Result<Report, Failure> {
    let (name, a) = load(file)?;
    let g = match natural_grading(&a) {
        Ok(g) => g,
        Err(Error::NotNilpotent { stable_dim }) => {
            return Ok(Report {
                code: 1,
                text: format!("not nilpotent (powers stabilise at dimension {stable_dim}); no grading\n"),
                json: json!({ "name": name, "nilpotent": false }),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let graded_name = format!("{name}_graded");
    let table = serialize_algebra(&graded_name, &g.algebra)?;
    let degrees: Vec<String> = g.degrees.iter().map(usize::to_string).collect();
    let mut text = format!("# degrees: {}\n", degrees.join(" "));
    for (i, row) in g.basis.matrix().iter().enumerate() {
        let _ = writeln!(text, "# e'{} = {}", i + 1, combination(row));
    }
    text.push_str(&table);
    let basis: Vec<Vec<String>> = g.basis.matrix().iter().map(|r| rationals(r)).collect();
    Ok(Report::ok(
        text,
        json!({ "name": name, "degrees": g.degrees, "basis": basis, "table": table, "graded": g.is_graded() }),
    ))
}

/// `2 e1 + e3`, `-1/2 e2`, or `0`.
fn combination<F: Field>(row: &[F]) -> String {
    let terms: Vec<String> = row
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| if c.is_one() { format!("e{}", k + 1) } else { format!("({c}) e{}", k + 1) })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn fingerprint_json(fp: &Fingerprint) -> Value {
    serde_json::to_value(fp).expect("fingerprint serializes")
}

fn fingerprint_cmd(file: &Path) -> Result<Report, Failure> {
    let (name, a) = load(file)?;
    let fp = fingerprint(&a);
    let dims: Vec<String> = fp.power_dims.iter().map(usize::to_string).collect();
    let text = format!(
        "dim: {}\npower_dims: {}\nleft_ann: {}\nright_ann: {}\ntwo_sided_ann: {}\nsym_rank: {}\nantisym_rank: {}\ngenerators: {}\n",
        fp.dim,
        dims.join(" "),
        fp.left_ann,
        fp.right_ann,
        fp.two_sided_ann,
        fp.sym_rank,
        fp.antisym_rank,
        fp.generators
    );
    Ok(Report::ok(text, json!({ "name": name, "fingerprint": fingerprint_json(&fp) })))
}

fn parse_param(flag: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|_| Failure::new(format!("--{flag}: `{text}` is not a rational (use p or p/q)")))
}

fn gen(args: &GenArgs) -> Result<Report, Failure> {
    let kind = args.kind.to_ascii_lowercase();
    let need_n = || args.n.ok_or_else(|| Failure::new(format!("gen {kind} needs a dimension N")));
    let no_params = |what: &str| {
        if args.alpha.is_some() || args.beta.is_some() {
            Err(Failure::new(format!("gen {what} takes no --alpha/--beta")))
        } else {
            Ok(())
        }
    };
    let (name, algebra) = match kind.as_str() {
        "nf" | "f1" | "f2" | "f3" => {
            no_params(&kind)?;
            let n = need_n()?;
            let (id, a) = match kind.as_str() {
                "nf" => (CatalogId::Nf(n), make_nf(n)?),
                "f1" => (CatalogId::F1(n), make_f1(n)?),
                "f2" => (CatalogId::F2(n), make_f2(n)?),
                _ => (CatalogId::F3(n), make_f3(n)?),
            };
            (id.to_string(), a)
        }
        "fab" => {
            let n = need_n()?;
            let alpha = parse_param("alpha", args.alpha.as_deref().ok_or_else(|| Failure::new("gen fab needs --alpha"))?)?;
            let beta = parse_param("beta", args.beta.as_deref().ok_or_else(|| Failure::new("gen fab needs --beta"))?)?;
            let a = make_filiform(n, &alpha, &beta)?;
            (CatalogId::Fab { n, alpha, beta }.to_string(), a)
        }
        k if k.starts_with('a') => {
            let index: u8 = k[1..].parse().map_err(|_| Failure::new(format!("unknown algebra `{}`", args.kind)))?;
            if args.n.is_some() || args.beta.is_some() {
                return Err(Failure::new(format!("gen {kind} takes no N or --beta")));
            }
            let alpha = args.alpha.as_deref().map(|t| parse_param("alpha", t)).transpose()?;
            let id = CatalogId::dim4(index, alpha)?;
            (id.to_string(), make_dim4(&id)?)
        }
        _ => return Err(Failure::new(format!("unknown algebra kind `{}`", args.kind))),
    };
    let table = serialize_algebra(&name, &algebra)?;
    let (text, written) = match &args.output {
        Some(path) => {
            std::fs::write(path, &table).map_err(|e| Failure {
                message: format!("cannot write file: {e}"),
                file: Some(path.display().to_string()),
                line: None,
            })?;
            (format!("wrote {} to {}\n", name, path.display()), Some(path.display().to_string()))
        }
        None => (table.clone(), None),
    };
    Ok(Report::ok(text, json!({ "name": name, "table": table, "written_to": written })))
}

fn normalize(n: usize, alpha: &str, beta: &str) -> Result<Report, Failure> {
    let alpha = parse_param("alpha", alpha)?;
    let beta = parse_param("beta", beta)?;
    let r = normalize_filiform(n, &alpha, &beta)?;
    let verified = verify_normalization(n, &alpha, &beta, &r)?;
    let c = &r.coefficients;
    let (field, rows): (String, Vec<Vec<String>>) = match &r.change {
        NormalizingChange::Rational(m) => ("Q".to_string(), m.matrix().iter().map(|row| rationals(row)).collect()),
        NormalizingChange::Quadratic(m) => {
            let radicand = zinbiel::iso::radicand(&r.change).expect("quadratic change has a radicand");
            (
                format!("Q(sqrt({radicand}))"),
                m.matrix().iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
            )
        }
    };
    let mut text = format!(
        "class: {}\nfield: {}\na1 = {}\nan = {}\nbn = {}\nb(n-2) = {}\nbasis change (row i = e'_i in the old basis):\n",
        r.class,
        field,
        format_rational(&c.a1),
        format_rational(&c.an),
        c.bn,
        c.bn_minus_2
    );
    for row in &rows {
        let _ = writeln!(text, "  {}", row.join("  "));
    }
    let _ = writeln!(text, "verified: {verified}");
    Ok(Report {
        code: if verified { 0 } else { 1 },
        text,
        json: json!({
            "n": n,
            "alpha": format_rational(&alpha),
            "beta": format_rational(&beta),
            "class": r.class.to_string(),
            "field": field,
            "coefficients": {
                "a1": format_rational(&c.a1),
                "an": format_rational(&c.an),
                "bn": c.bn.to_string(),
                "bn_minus_2": c.bn_minus_2.to_string(),
            },
            "matrix": rows,
            "verified": verified,
        }),
    })
}

fn mod_rows(m: &ModMatrix) -> Vec<String> {
    m.iter().map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")).collect()
}

fn note_json(n: &PrimeNote) -> Value {
    let (outcome, detail): (&str, Value) = match &n.outcome {
        PrimeOutcome::NoIsomorphism => ("no-isomorphism", Value::Null),
        PrimeOutcome::Isomorphic(m) => ("isomorphic", json!(m)),
        PrimeOutcome::ReductionIllegal(e) => ("reduction-illegal", json!(e)),
        PrimeOutcome::TooLarge => ("too-large", Value::Null),
        PrimeOutcome::Failed(e) => ("failed", json!(e)),
    };
    json!({ "p": n.p, "outcome": outcome, "detail": detail })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::NonIsomorphic { witness } => json!({ "kind": v.kind(), "witness": witness }),
        Verdict::IsomorphicOverQ(change) => {
            let rows: Vec<Vec<String>> = change.matrix().iter().map(|r| rationals(r)).collect();
            json!({ "kind": v.kind(), "matrix": rows })
        }
        Verdict::IsomorphicOverFp { p, matrix, notes } => json!({
            "kind": v.kind(), "p": p, "matrix": matrix, "notes": notes.iter().map(note_json).collect::<Vec<_>>(),
        }),
        Verdict::Inconclusive { notes } => {
            json!({ "kind": v.kind(), "notes": notes.iter().map(note_json).collect::<Vec<_>>() })
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    match v {
        Verdict::NonIsomorphic { witness } => {
            let _ = writeln!(out, "verdict: NonIsomorphic (fingerprint component `{witness}` differs)");
        }
        Verdict::IsomorphicOverQ(change) => {
            let _ = writeln!(out, "verdict: IsomorphicOverQ");
            for r in change.matrix() {
                let _ = writeln!(out, "  {}", rationals(r).join("  "));
            }
        }
        Verdict::IsomorphicOverFp { p, matrix, notes } => {
            let _ = writeln!(out, "verdict: IsomorphicOverFp (p = {p}; evidence only, not a statement over C)");
            for r in mod_rows(matrix) {
                let _ = writeln!(out, "  {r}");
            }
            for n in notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        Verdict::Inconclusive { notes } => {
            let _ = writeln!(out, "verdict: Inconclusive");
            for n in notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
    }
    out
}

fn iso(file1: &Path, file2: &Path, modulus: Option<u64>, search: bool) -> Result<Report, Failure> {
    let (n1, a) = load(file1)?;
    let (n2, b) = load(file2)?;
    if a.dim() != b.dim() {
        let text = format!("verdict: NonIsomorphic (dimensions {} and {} differ)\n", a.dim(), b.dim());
        return Ok(Report::ok(text, json!({ "left": n1, "right": n2, "verdict": { "kind": "NonIsomorphic", "witness": "dim" } })));
    }
    match modulus {
        None if search => Err(Failure::new("--search needs --mod P")),
        None => {
            let v = distinguish(&a, &b, &[])?;
            Ok(Report::ok(verdict_text(&v), json!({ "left": n1, "right": n2, "verdict": verdict_json(&v) })))
        }
        Some(p) => {
            let ma = reduce_mod_p(&a, p).map_err(|e| Failure::in_file(file1, e))?;
            let mb = reduce_mod_p(&b, p).map_err(|e| Failure::in_file(file2, e))?;
            let (text, verdict) = if search {
                match iso_search_fp(&ma, &mb)? {
                    Some(m) => {
                        let mut t = format!("isomorphic over F_{p}; matrix (rows are images in {}):\n", file1.display());
                        for r in mod_rows(&m) {
                            let _ = writeln!(t, "  {r}");
                        }
                        (t, json!({ "kind": "isomorphic", "p": p, "matrix": m }))
                    }
                    None => (
                        format!("no isomorphism over F_{p} (exhaustive search)\n"),
                        json!({ "kind": "no-isomorphism", "p": p }),
                    ),
                }
            } else if ma.power_dims() != mb.power_dims() {
                (
                    format!("not isomorphic over F_{p}: power dimensions differ\n"),
                    json!({ "kind": "no-isomorphism", "p": p }),
                )
            } else if ma == mb {
                (format!("equal tables over F_{p}\n"), json!({ "kind": "isomorphic", "p": p, "matrix": zinbiel::iso::modular::identity_mod(a.dim()) }))
            } else {
                (
                    format!("undecided over F_{p} without --search\n"),
                    json!({ "kind": "undecided", "p": p }),
                )
            };
            Ok(Report::ok(text, json!({ "left": n1, "right": n2, "verdict": verdict })))
        }
    }
}

fn read_matrix(path: &Path) -> Result<Vec<Vec<Rational>>, Failure> {
    let text = read_text(path)?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure { message: e.to_string(), file: Some(path.display().to_string()), line: Some(idx + 1) })?;
        rows.push(row);
    }
    Ok(rows)
}

fn verify_change(file1: &Path, file2: &Path, matrix: &Path) -> Result<Report, Failure> {
    let (n1, a) = load(file1)?;
    let (n2, b) = load(file2)?;
    let rows = read_matrix(matrix)?;
    if rows.len() != a.dim() || rows.iter().any(|r| r.len() != a.dim()) {
        return Err(Failure {
            message: format!("matrix must be {0} x {0}", a.dim()),
            file: Some(matrix.display().to_string()),
            line: None,
        });
    }
    let change = BasisChange::new(rows).map_err(|e| Failure::in_file(matrix, e))?;
    let holds = verify_isomorphism(&a, &b, &change).map_err(Failure::from)?;
    let text = if holds {
        format!("basis change verified: {n1} -> {n2}\n")
    } else {
        format!("basis change does not carry {n1} onto {n2}\n")
    };
    Ok(Report { code: if holds { 0 } else { 1 }, text, json: json!({ "left": n1, "right": n2, "verified": holds }) })
}

fn split(file: &Path, p: u64) -> Result<Report, Failure> {
    let (name, a) = load(file)?;
    let found = split_scan_fp(&a, p).map_err(|e| match e {
        Error::DenominatorDivisibleByP { .. } | Error::NotPrime(_) => Failure::in_file(file, e),
        other => other.into(),
    })?;
    Ok(match found {
        Some((i, j)) => {
            let mut text = format!("splits over F_{p}: I (dim {}) + J (dim {})\n", i.dim(), j.dim());
            for r in mod_rows(&i.rows) {
                let _ = writeln!(text, "  I: {r}");
            }
            for r in mod_rows(&j.rows) {
                let _ = writeln!(text, "  J: {r}");
            }
            Report::ok(text, json!({ "name": name, "p": p, "splits": true, "i": i.rows, "j": j.rows }))
        }
        None => Report::ok(
            format!("no splitting over F_{p}\n"),
            json!({ "name": name, "p": p, "splits": false, "i": null, "j": null }),
        ),
    })
}

struct Entry {
    file: String,
    name: String,
    expected: Option<CatalogId>,
    algebra: Algebra,
}

fn verdict_symbol(v: &Verdict) -> char {
    match v {
        Verdict::NonIsomorphic { .. } => 'N',
        Verdict::IsomorphicOverQ(_) => 'Q',
        Verdict::IsomorphicOverFp { .. } => 'p',
        Verdict::Inconclusive { .. } => '?',
    }
}

fn catalog_verify(dir: &Path) -> Result<Report, Failure> {
    let manifest = fixture_manifest();
    let missing: Vec<&str> =
        manifest.iter().map(|(f, _)| f.as_str()).filter(|f| !dir.join(f).is_file()).collect();
    if !missing.is_empty() {
        return Err(Failure {
            message: format!("missing fixture(s): {}", missing.join(", ")),
            file: Some(dir.display().to_string()),
            line: None,
        });
    }
    let listing = std::fs::read_dir(dir).map_err(|e| Failure::new(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<String> = listing
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|f| f.ends_with(".zb") && !manifest.iter().any(|(m, _)| m == f))
        .collect();
    files.sort();
    // manifest order first, then anything else in the directory
    let files: Vec<String> = manifest.iter().map(|(f, _)| f.clone()).chain(files).collect();

    let mut entries = Vec::with_capacity(files.len());
    for f in &files {
        let (name, algebra) = load(&dir.join(f))?;
        let expected = manifest.iter().find(|(m, _)| m == f).map(|(_, id)| id.clone());
        entries.push(Entry { file: f.clone(), name, expected, algebra });
    }

    let mut ok = true;
    let mut text = String::from("fixtures:\n");
    let mut algebras_json = Vec::new();
    for e in &entries {
        let holds = e.algebra.zinbiel_check().holds;
        let fp = fingerprint(&e.algebra);
        let s = classify_shape(&e.algebra);
        // manifest entries must reproduce their constructor exactly
        let matches = match &e.expected {
            Some(id) => Some(id.build()? == e.algebra),
            None => None,
        };
        let good = holds && fp.power_dims.last() == Some(&0) && matches != Some(false);
        ok &= good;
        let dims: Vec<String> = fp.power_dims.iter().map(usize::to_string).collect();
        let _ = writeln!(
            text,
            "  {:<12} {:<10} identity {:<5}  {:<12}  {:<24}  powers [{}]{}",
            e.file,
            e.name,
            if holds { "holds" } else { "FAILS" },
            shape_name(s),
            match matches {
                Some(true) => "matches constructor",
                Some(false) => "DIFFERS FROM CONSTRUCTOR",
                None => "extra file",
            },
            dims.join(" "),
            if fp.power_dims.last() == Some(&0) { "" } else { " NOT NILPOTENT" },
        );
        algebras_json.push(json!({
            "file": e.file,
            "name": e.name,
            "identity_holds": holds,
            "shape": shape_name(s),
            "matches_constructor": matches,
            "fingerprint": fingerprint_json(&fp),
        }));
    }

    let aliases = known_aliases();
    let is_alias = |x: &Entry, y: &Entry| match (&x.expected, &y.expected) {
        (Some(a), Some(b)) => aliases.iter().any(|(p, q)| (p == a && q == b) || (p == b && q == a)),
        _ => false,
    };
    let count = entries.len();
    let mut matrix = vec![vec!['-'; count]; count];
    let mut pairs_json = Vec::new();
    let mut details = String::new();
    for x in 0..count {
        matrix[x][x] = '=';
        for y in x + 1..count {
            let (ex, ey) = (&entries[x], &entries[y]);
            if ex.algebra.dim() != ey.algebra.dim() {
                continue;
            }
            let v = distinguish(&ex.algebra, &ey.algebra, &[])?;
            let alias = is_alias(ex, ey);
            if matches!(v, Verdict::IsomorphicOverQ(_)) && !alias {
                ok = false;
            }
            let sym = verdict_symbol(&v);
            matrix[x][y] = sym;
            matrix[y][x] = sym;
            if sym != 'N' {
                let _ = writeln!(details, "  {} vs {}{}:", ex.file, ey.file, if alias { " (known alias)" } else { "" });
                for line in verdict_text(&v).lines() {
                    let _ = writeln!(details, "    {line}");
                }
            }
            pairs_json.push(json!({ "left": ex.file, "right": ey.file, "known_alias": alias, "verdict": verdict_json(&v) }));
        }
    }
    text.push_str("\ndistinction matrix (N non-isomorphic, Q isomorphic over Q, p isomorphic mod p only, ? inconclusive, - different dimension):\n");
    for (x, row) in matrix.iter().enumerate() {
        let _ = writeln!(text, "  {:>3} {:<12} {}", x + 1, entries[x].file, row.iter().collect::<String>());
    }
    if !details.is_empty() {
        text.push_str("\npairs not separated by fingerprints:\n");
        text.push_str(&details);
    }
    let _ = writeln!(text, "\ncatalog verify: {}", if ok { "ok" } else { "FAILED" });
    Ok(Report {
        code: if ok { 0 } else { 1 },
        text,
        json: json!({ "dir": dir.display().to_string(), "ok": ok, "algebras": algebras_json, "pairs": pairs_json }),
    })
}
