//! Command-line front end. `dispatch` parses argv, runs one subcommand and
//! returns its JSON payload together with a text rendering, so that the
//! binary and the tests share one code path.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::freelie::{self, LieElement};
use crate::grading::{ExtPair, OrdinalCnf};
use crate::johnson::{self, Battery, TauValue};
use crate::magnus::{self, MembershipVerdict, Weights};
use crate::verify::{self, Area, Settings};
use crate::words::{AlphabetSpec, FreeGroupAut, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bigrade", version, about = "Double filtrations of free groups and double Johnson maps")]
pub struct Cli {
    /// Print the JSON payload.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Print the text rendering (default).
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Alphabet selection; inferred from the input when omitted.
#[derive(Debug, Args, Clone, Copy)]
pub struct AlphabetArgs {
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Surface alphabet of genus g (p = q = g).
    #[arg(long, conflicts_with_all = ["p", "q"])]
    pub genus: Option<usize>,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct BatteryArgs {
    #[arg(long, default_value_t = johnson::DEFAULT_BOUND)]
    pub bound: u32,
    #[arg(long, default_value_t = johnson::DEFAULT_BATTERY)]
    pub battery: usize,
    #[arg(long, default_value_t = johnson::DEFAULT_SEED)]
    pub seed: u64,
}

impl BatteryArgs {
    fn battery(&self) -> Battery {
        Battery {
            size: self.battery,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TauKindArg {
    Classical,
    Double,
    Edge,
    Alt,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Magnus expansion of a word.
    Expand {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = johnson::DEFAULT_BOUND)]
        bound: u32,
        /// Weighted mode, e.g. `2,1`.
        #[arg(long)]
        weights: Option<String>,
        #[command(flatten)]
        alpha: AlphabetArgs,
    },
    /// Bidegree-(m,n) component of the Magnus expansion.
    Delta {
        #[arg(long)]
        word: String,
        #[arg(long)]
        grade: String,
        #[arg(long)]
        bound: Option<u32>,
        #[command(flatten)]
        alpha: AlphabetArgs,
    },
    /// Membership of a word in the double dimension subgroup of level (m,n).
    Member {
        #[arg(long)]
        word: String,
        #[arg(long)]
        grade: String,
        #[arg(long, default_value_t = johnson::DEFAULT_BOUND)]
        bound: u32,
        #[command(flatten)]
        alpha: AlphabetArgs,
    },
    /// Membership of a word in the k-th lower central series term.
    Gamma {
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        alpha: AlphabetArgs,
    },
    /// Rank of the bigraded piece Lie_{m,n}.
    LieDim {
        #[command(flatten)]
        alpha: AlphabetArgs,
        #[arg(long)]
        grade: String,
    },
    /// Lyndon basis of Lie_{m,n} as bracket expressions.
    LieBasis {
        #[command(flatten)]
        alpha: AlphabetArgs,
        #[arg(long)]
        grade: String,
    },
    /// Writes a tensor polynomial in the Lyndon basis, or reports that it is
    /// not a Lie element.
    LieProject {
        #[command(flatten)]
        alpha: AlphabetArgs,
        /// Polynomial such as `X1*Y1 - Y1*X1`.
        #[arg(long)]
        poly: String,
    },
    /// Johnson image of a catalog element.
    Tau {
        #[arg(long, value_enum)]
        kind: TauKindArg,
        /// `m,n` for double and edge, a single degree for classical and alt.
        #[arg(long, allow_hyphen_values = true)]
        level: String,
        /// Catalog name (`h_12`, `surface_g3:h_12`) or a catalog file.
        #[arg(long)]
        aut: String,
        #[command(flatten)]
        knobs: BatteryArgs,
    },
    /// Maximal extended levels an element is verified to lie in.
    Probe {
        #[arg(long)]
        aut: String,
        #[arg(long, default_value_t = 4)]
        max_total: i32,
        #[command(flatten)]
        knobs: BatteryArgs,
    },
    /// Symplectic matrix of a surface element and its block shape.
    Sigma {
        #[arg(long)]
        aut: String,
    },
    /// Natural (Hessenberg) sum of two ordinals in Cantor normal form.
    OrdinalSum { a: String, b: String },
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Runs the fact list and prints a pass/fail table.
    VerifyPaper {
        /// `all` or a comma-separated module list.
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        knobs: BatteryArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Checks every claim of every entry.
    Validate {
        /// A catalog file; defaults to the default catalog.
        file: Option<PathBuf>,
        #[command(flatten)]
        knobs: BatteryArgs,
    },
    /// Writes the built-in catalogs as JSON files.
    Export { dir: PathBuf },
    /// Lists entry names per catalog file.
    List,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub ok: bool,
    pub payload: Value,
    pub human_text: String,
}

impl CommandResult {
    fn ok(payload: Value, human_text: String) -> Self {
        CommandResult {
            ok: true,
            payload,
            human_text,
        }
    }

    fn verdict(ok: bool, payload: Value, human_text: String) -> Self {
        CommandResult {
            ok,
            payload,
            human_text,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }

    /// JSON document with the status wrapped around the payload.
    pub fn to_json(&self) -> Value {
        json!({
            "status": if self.ok { "ok" } else { "error" },
            "payload": self.payload,
        })
    }
}

/// Output of one invocation: stdout text, stderr text and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::InvalidLetter(_)
            | Error::InvalidIndex(_)
            | Error::InvalidDegree(_)
            | Error::EmptyBracket
            | Error::BoundMismatch
            | Error::Catalog(_)
    )
}

/// Parses argv (including the program name) and runs it.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match run(&cli.command) {
        Ok(r) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&r.to_json()).expect("json values serialize");
                s.push('\n');
                s
            } else {
                let mut s = r.human_text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: r.exit_code(),
            }
        }
        Err(e) => {
            let code = if is_usage(&e) { EXIT_USAGE } else { EXIT_FAILURE };
            let stdout = if cli.json {
                let v = json!({"status": "error", "error": e.to_string()});
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr: format!("error: {e}\n"),
                code,
            }
        }
    }
}

fn parse_grade(s: &str) -> Result<(usize, usize)> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected m,n, got {s:?}")))?;
    let p = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad grade entry {t:?}")))
    };
    Ok((p(a)?, p(b)?))
}

fn parse_level(s: &str) -> Result<ExtPair> {
    let l = ExtPair::parse(s)?;
    let raw = s.trim().trim_start_matches('(').trim_end_matches(')');
    let below = raw.split(',').any(|t| t.trim().parse::<i32>().is_ok_and(|v| v < -1));
    if below {
        return Err(Error::Parse(format!("levels need m,n >= -1, got {s:?}")));
    }
    Ok(l)
}

impl AlphabetArgs {
    fn resolve(&self, text: Option<&str>) -> Result<AlphabetSpec> {
        if let Some(g) = self.genus {
            return AlphabetSpec::surface(g);
        }
        match (self.p, self.q, text) {
            (Some(p), Some(q), _) => AlphabetSpec::new(p, q),
            (None, None, Some(t)) => AlphabetSpec::infer(t),
            (p, q, Some(t)) => {
                let inferred = AlphabetSpec::infer(t)?;
                AlphabetSpec::new(p.unwrap_or(inferred.p), q.unwrap_or(inferred.q))
            }
            _ => Err(Error::Parse("give --p and --q, or --genus".into())),
        }
    }
}

fn load_aut(spec: &str) -> Result<CatalogEntry> {
    let path = Path::new(spec);
    if path.is_file() {
        let entries = catalog::load_file(path)?;
        return match entries.len() {
            1 => Ok(entries.into_iter().next().expect("one entry")),
            n => Err(Error::Catalog(format!(
                "{spec} holds {n} entries; name one as <file>:<entry>"
            ))),
        };
    }
    if let Some((file, name)) = spec.rsplit_once(':') {
        if Path::new(file).is_file() {
            return catalog::load_file(Path::new(file))?
                .into_iter()
                .find(|e| e.name == name)
                .ok_or_else(|| Error::Catalog(format!("{file} has no entry {name:?}")));
        }
    }
    catalog::find(spec)
}

fn word_json(alpha: &AlphabetSpec, w: &Word) -> Value {
    json!(w.display(alpha).to_string())
}

fn verdict_json(alpha: &AlphabetSpec, v: &MembershipVerdict) -> Value {
    match v {
        MembershipVerdict::Verified { bound } => json!({"verdict": "verified", "bound": bound}),
        MembershipVerdict::Refuted { witness, coeff } => json!({
            "verdict": "refuted",
            "witness": witness.display(alpha).to_string(),
            "coeff": coeff.to_string(),
        }),
    }
}

fn lie_json(u: &LieElement) -> Value {
    json!(u
        .terms()
        .into_iter()
        .map(|(b, c)| json!({"bracket": b, "coeff": c.to_string()}))
        .collect::<Vec<_>>())
}

fn tau_text(t: &TauValue) -> String {
    let mut s = format!("{}\n", t.kind);
    match t.wedge() {
        Some(w) => s.push_str(&format!("wedge: {w}\n")),
        None => s.push_str(&format!("{}\n", t.value)),
    }
    if let Some(ok) = t.symplectic_ok {
        s.push_str(&format!("contraction vanishes: {ok}\n"));
    }
    s
}

fn matrix_json(m: &crate::snf::Matrix) -> Value {
    json!(m
        .iter()
        .map(|r| r.iter().map(|x| json!(x.to_string())).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn matrix_text(m: &crate::snf::Matrix) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_scope(s: &str) -> Result<Vec<Area>> {
    if s.trim() == "all" {
        return Ok(Area::ALL.to_vec());
    }
    let mut out: Vec<Area> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Parse("empty scope".into()));
    }
    Ok(out)
}

fn validation_result(reports: &[(String, Vec<catalog::ValidationReport>)]) -> CommandResult {
    let ok = reports.iter().all(|(_, rs)| rs.iter().all(|r| r.passed()));
    let mut text = String::new();
    for (file, rs) in reports {
        for r in rs {
            let mark = if r.passed() { "PASS" } else { "FAIL" };
            text.push_str(&format!("{mark}  {file}:{}", r.name));
            for c in r.failures() {
                text.push_str(&format!("\n      {}: {}", c.claim, c.detail));
            }
            text.push('\n');
        }
    }
    let total: usize = reports.iter().map(|(_, rs)| rs.len()).sum();
    let failed: usize = reports
        .iter()
        .map(|(_, rs)| rs.iter().filter(|r| !r.passed()).count())
        .sum();
    text.push_str(&format!("{} of {total} entries passed\n", total - failed));
    let payload = json!({
        "passed": ok,
        "files": reports.iter().map(|(f, rs)| json!({
            "file": f,
            "entries": rs.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    CommandResult::verdict(ok, payload, text)
}

/// Runs a parsed command.
pub fn run(cmd: &Command) -> Result<CommandResult> {
    match cmd {
        Command::Expand {
            word,
            bound,
            weights,
            alpha,
        } => {
            let a = alpha.resolve(Some(word))?;
            let w = Word::parse(&a, word)?;
            let wt = weights.as_deref().map(Weights::parse).transpose()?.unwrap_or(Weights::UNIT);
            let s = magnus::magnus_expand(&a, &w, *bound, wt)?;
            let text = s.to_string();
            let terms: Vec<Value> = s
                .terms()
                .iter()
                .map(|(m, c)| json!({"monomial": m.display(&a).to_string(), "coeff": c.to_string()}))
                .collect();
            Ok(CommandResult::ok(
                json!({
                    "word": word_json(&a, &w),
                    "p": a.p, "q": a.q,
                    "bound": bound,
                    "weights": [wt.wx, wt.wy],
                    "series": text,
                    "terms": terms,
                }),
                text,
            ))
        }
        Command::Delta {
            word,
            grade,
            bound,
            alpha,
        } => {
            let a = alpha.resolve(Some(word))?;
            let w = Word::parse(&a, word)?;
            let mn = parse_grade(grade)?;
            let bound = bound.unwrap_or((mn.0 + mn.1) as u32);
            let p = magnus::delta_component(&a, &w, mn, bound)?;
            let text = magnus::format_poly(&a, &p);
            Ok(CommandResult::ok(
                json!({"word": word_json(&a, &w), "grade": [mn.0, mn.1], "delta": text}),
                text,
            ))
        }
        Command::Member {
            word,
            grade,
            bound,
            alpha,
        } => {
            let a = alpha.resolve(Some(word))?;
            let w = Word::parse(&a, word)?;
            let mn = parse_grade(grade)?;
            let v = magnus::dmn_membership(&a, &w, mn, *bound)?;
            let text = match &v {
                MembershipVerdict::Verified { bound } => format!("verified up to degree {bound}"),
                MembershipVerdict::Refuted { witness, coeff } => {
                    format!("refuted: {coeff} {} has bidegree below ({},{})", witness.display(&a), mn.0, mn.1)
                }
            };
            let mut payload = verdict_json(&a, &v);
            payload["word"] = word_json(&a, &w);
            payload["grade"] = json!([mn.0, mn.1]);
            Ok(CommandResult::ok(payload, text))
        }
        Command::Gamma { word, k, alpha } => {
            let a = alpha.resolve(Some(word))?;
            let w = Word::parse(&a, word)?;
            let m = magnus::gamma_membership(&a, &w, *k)?;
            Ok(CommandResult::ok(
                json!({"word": word_json(&a, &w), "k": k, "member": m}),
                m.to_string(),
            ))
        }
        Command::LieDim { alpha, grade } => {
            let a = alpha.resolve(None)?;
            let mn = parse_grade(grade)?;
            let r = freelie::lie_rank(&a, mn);
            Ok(CommandResult::ok(
                json!({"p": a.p, "q": a.q, "grade": [mn.0, mn.1], "rank": r}),
                r.to_string(),
            ))
        }
        Command::LieBasis { alpha, grade } => {
            let a = alpha.resolve(None)?;
            let mn = parse_grade(grade)?;
            let b = freelie::lyndon_basis(&a, mn);
            let items: Vec<String> = (0..b.len()).map(|i| b.bracket_text(i)).collect();
            Ok(CommandResult::ok(
                json!({"p": a.p, "q": a.q, "grade": [mn.0, mn.1], "basis": items}),
                items.join("\n"),
            ))
        }
        Command::LieProject { alpha, poly } => {
            let a = alpha.resolve(None)?;
            let p = magnus::parse_poly(&a, poly)?;
            match freelie::lie_project(&a, &p) {
                Ok(u) => Ok(CommandResult::ok(
                    json!({"lie": true, "element": u.to_string(), "terms": lie_json(&u)}),
                    u.to_string(),
                )),
                Err(Error::NotALieElement(d)) => Ok(CommandResult::verdict(
                    false,
                    json!({"lie": false, "detail": d}),
                    format!("not a Lie element: {d}"),
                )),
                Err(e) => Err(e),
            }
        }
        Command::Tau { kind, level, aut, knobs } => {
            let e = load_aut(aut)?;
            let h = e.to_aut()?;
            let t = match kind {
                TauKindArg::Classical | TauKindArg::Alt => {
                    let n: u32 = level
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("expected a degree, got {level:?}")))?;
                    if *kind == TauKindArg::Classical {
                        johnson::tau_classical(&h, n, knobs.bound)?
                    } else {
                        johnson::tau_alt(&h, n, knobs.bound)?
                    }
                }
                TauKindArg::Double => johnson::tau_double_with(&h, parse_level(level)?, knobs.bound, knobs.battery())?,
                TauKindArg::Edge => johnson::tau_edge_with(&h, parse_level(level)?, knobs.bound, knobs.battery())?,
            };
            let mut payload = t.to_json();
            payload["aut"] = json!(e.name);
            Ok(CommandResult::ok(payload, tau_text(&t)))
        }
        Command::Probe { aut, max_total, knobs } => {
            let e = load_aut(aut)?;
            let h = e.to_aut()?;
            let r = johnson::probe(&h, *max_total, knobs.bound, knobs.battery())?;
            let levels: Vec<String> = r.verified.iter().map(ExtPair::to_string).collect();
            let refuted: Vec<String> = r.refutations.iter().map(|f| f.level.to_string()).collect();
            let text = format!(
                "maximal verified levels: {}\nrefuted: {}\n",
                levels.join(" "),
                refuted.join(" ")
            );
            let mut payload = r.to_json();
            payload["aut"] = json!(e.name);
            Ok(CommandResult::ok(payload, text))
        }
        Command::Sigma { aut } => {
            let e = load_aut(aut)?;
            let h: FreeGroupAut = e.to_aut()?;
            let m = catalog::sigma(&h)?;
            let shape = catalog::block_shape_classify(&m);
            let symp = catalog::is_symplectic(&m);
            Ok(CommandResult::ok(
                json!({"aut": e.name, "sigma": matrix_json(&m), "shape": shape.to_string(), "symplectic": symp}),
                format!("{}\nshape: {shape}\nsymplectic: {symp}", matrix_text(&m)),
            ))
        }
        Command::OrdinalSum { a, b } => {
            let x = OrdinalCnf::parse(a)?;
            let y = OrdinalCnf::parse(b)?;
            let s = x.hessenberg_sum(&y).to_string();
            Ok(CommandResult::ok(json!({"a": x.to_string(), "b": y.to_string(), "sum": s}), s))
        }
        Command::Catalog { action } => match action {
            CatalogAction::Validate { file, knobs } => {
                let files = match file {
                    Some(f) => vec![(f.display().to_string(), catalog::load_file(f)?)],
                    None => catalog::default_catalog()?,
                };
                let reports: Vec<_> = files
                    .iter()
                    .map(|(n, es)| (n.clone(), catalog::validate_all(es, knobs.bound, knobs.battery())))
                    .collect();
                Ok(validation_result(&reports))
            }
            CatalogAction::Export { dir } => {
                let written = catalog::export(dir)?;
                Ok(CommandResult::ok(json!({"written": written}), written.join("\n")))
            }
            CatalogAction::List => {
                let files = catalog::default_catalog()?;
                let text = files
                    .iter()
                    .map(|(f, es)| {
                        let names: Vec<&str> = es.iter().map(|e| e.name.as_str()).collect();
                        format!("{f}: {}", names.join(" "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                let payload = json!(files
                    .iter()
                    .map(|(f, es)| json!({"file": f, "entries": es.iter().map(|e| &e.name).collect::<Vec<_>>()}))
                    .collect::<Vec<_>>());
                Ok(CommandResult::ok(payload, text))
            }
        },
        Command::VerifyPaper { scope, samples, knobs } => {
            let areas = parse_scope(scope)?;
            let s = Settings {
                bound: knobs.bound,
                battery: knobs.battery(),
                samples: *samples,
                seed: knobs.seed,
            };
            let r = verify::run(&areas, &s);
            Ok(CommandResult::verdict(r.passed(), r.to_json(&s), r.to_text()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> Outcome {
        dispatch(std::iter::once("bigrade").chain(args.iter().copied()))
    }

    #[test]
    fn worked_examples() {
        assert_eq!(out(&["expand", "--word", "x1^-1", "--bound", "3"]).stdout, "1 - X1 + X1^2 - X1^3\n");
        assert_eq!(out(&["ordinal-sum", "w*2+3", "w*1+4"]).stdout, "w*3+7\n");
        assert_eq!(out(&["lie-dim", "--p", "2", "--q", "2", "--grade", "2,1"]).stdout, "8\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(out(&["nonsense"]).code, EXIT_USAGE);
        assert_eq!(out(&["expand", "--word", "z1"]).code, EXIT_USAGE);
        assert_eq!(out(&["ordinal-sum", "w+w*2", "1"]).code, EXIT_USAGE);
        assert_eq!(out(&["lie-dim", "--p", "2", "--q", "2", "--grade", "2"]).code, EXIT_USAGE);
        assert_eq!(out(&["verify-paper", "--scope", "optics"]).code, EXIT_USAGE);
    }

    #[test]
    fn json_is_wrapped() {
        let o = out(&["--json", "ordinal-sum", "w", "1"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["payload"]["sum"], "w+1");
    }

    #[test]
    fn lie_project_rejects_non_lie() {
        let o = out(&["lie-project", "--p", "1", "--q", "1", "--poly", "X1*Y1"]);
        assert_eq!(o.code, EXIT_FAILURE);
        let o = out(&["lie-project", "--p", "1", "--q", "1", "--poly", "X1*Y1 - Y1*X1"]);
        assert_eq!(o.code, EXIT_OK);
    }
}
