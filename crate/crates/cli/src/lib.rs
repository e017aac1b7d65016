//! The `tlwb` command line.
//!
//! Exit codes: 0 success, 1 a verification or check failed, 2 usage or
//! parse error, 3 a resource cap was hit.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use tlwb_coxeter::CoxeterGraph;
use tlwb_diagram::{is_admissible, reduce, simple_diagram, Diagram, DiagramElement, RuleSet};
use tlwb_factorize::{FactorizeError, Factorizer, Limits};
use tlwb_fullcomm::{
    canonical_form, commutation_class, enumerate_fc, is_fc_reduced, FcError, FcStatus, Word,
};
use tlwb_iso::{verify_suite, Suite, Theta, VerifyConfig};
use tlwb_tl::{reduce_word, TlElement};

pub mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Environment variable overriding the commutation class cap.
pub const CLASS_CAP_VAR: &str = "TLWB_CLASS_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "tlwb",
    version,
    about = "Temperley-Lieb algebras of affine type D and their diagram calculus"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Fully commutative elements.
    Fc {
        #[command(subcommand)]
        cmd: FcCmd,
    },
    /// Products in the Temperley-Lieb algebra.
    Tl {
        #[command(subcommand)]
        cmd: TlCmd,
    },
    /// Decorated diagrams.
    Diag {
        #[command(subcommand)]
        cmd: DiagCmd,
    },
    /// Writes an admissible diagram as a product of simple diagrams.
    Factorize {
        #[arg(long)]
        diagram: String,
        /// Print each peel step.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = tlwb_factorize::DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long)]
        rules: Option<std::path::PathBuf>,
    },
    /// Runs verification suites.
    Verify {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma separated: relations, welldef, hom, inj, admis, roundtrip.
        #[arg(long, default_value = "relations,welldef,hom,inj,admis,roundtrip")]
        suites: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        rules: Option<std::path::PathBuf>,
    },
    /// Draws a diagram.
    Render {
        #[arg(long)]
        diagram: String,
        #[arg(long, value_enum, default_value_t = Picture::Ascii)]
        format: Picture,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphType {
    AffineD,
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Picture {
    Ascii,
    Svg,
}

#[derive(Subcommand, Debug)]
enum FcCmd {
    /// Lists FC elements by length in canonical form.
    Enum {
        #[arg(long = "type", value_enum, default_value_t = GraphType::AffineD)]
        graph: GraphType,
        /// Rank for affine-d, number of nodes for path.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_len: usize,
        /// Print only the number of elements of each length.
        #[arg(long)]
        count_only: bool,
    },
    /// Tests whether a word is a reduced word of an FC element.
    Check {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Lists the commutation class of a word.
    Class {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Prints the canonical representative of a commutation class.
    Canon {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum TlCmd {
    /// Multiplies two words or elements.
    Mul {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Reduces a word or element to the monomial basis.
    Reduce {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum DiagCmd {
    /// Concatenates two diagrams or diagram elements and reduces.
    Mul {
        left: String,
        right: String,
        #[arg(long)]
        rules: Option<std::path::PathBuf>,
    },
    /// Reduces a diagram or diagram element.
    Reduce {
        diagram: String,
        #[arg(long)]
        rules: Option<std::path::PathBuf>,
    },
    /// Tests admissibility of a reduced diagram.
    Admissible { diagram: String },
    /// Prints the simple diagram `D_i`.
    Simple {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        index: usize,
    },
    /// Prints the image of a word or algebra element.
    Theta {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        rules: Option<std::path::PathBuf>,
    },
    /// Prints the rules in use.
    Rules {
        #[arg(long)]
        rules: Option<std::path::PathBuf>,
    },
}

/// A failed command with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.to_string(),
    }
}

impl From<FcError> for Failure {
    fn from(e: FcError) -> Self {
        let code = if matches!(e, FcError::ResourceCap { .. }) {
            EXIT_CAP
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<FactorizeError> for Failure {
    fn from(e: FactorizeError) -> Self {
        let code = match e {
            FactorizeError::ResourceCap { .. } => EXIT_CAP,
            FactorizeError::NoFactorization { .. } | FactorizeError::NotFcReduced { .. } => {
                EXIT_FAILED
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<tlwb_iso::IsoError> for Failure {
    fn from(e: tlwb_iso::IsoError) -> Self {
        match e {
            tlwb_iso::IsoError::Fc(f) => f.into(),
            e => usage(e),
        }
    }
}

type Out<'a> = &'a mut dyn Write;

fn emit(out: Out, text: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure {
        code: EXIT_USAGE,
        msg: format!("write failed: {e}"),
    })
}

fn affine(n: usize) -> Result<CoxeterGraph, Failure> {
    CoxeterGraph::affine_d(n).map_err(usage)
}

fn word(s: &str, g: &CoxeterGraph) -> Result<Word, Failure> {
    let w: Word = s.parse().map_err(usage)?;
    w.validate(g)?;
    Ok(w)
}

/// A word `0,1` or an element `2 * [0,1] + [2]`, in normal form.
fn tl_element(s: &str, g: &CoxeterGraph) -> Result<TlElement, Failure> {
    if s.contains('[') {
        let a: TlElement = s.parse().map_err(usage)?;
        for w in a.terms().keys() {
            w.validate(g)?;
        }
        Ok(a.canonicalize(g)?)
    } else {
        Ok(TlElement::from_word(&word(s, g)?, g)?)
    }
}

fn load_rules(path: &Option<std::path::PathBuf>) -> Result<RuleSet, Failure> {
    match path {
        None => Ok(RuleSet::default()),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            text.parse()
                .map_err(|e| usage(format!("{}: {e}", p.display())))
        }
    }
}

fn diagram(s: &str) -> Result<Diagram, Failure> {
    s.parse().map_err(usage)
}

/// A single diagram or a `{...}` element.
fn diagram_element(s: &str) -> Result<DiagramElement, Failure> {
    if s.contains('{') {
        s.parse().map_err(usage)
    } else {
        Ok(DiagramElement::monomial(
            diagram(s)?,
            tlwb_ring::DeltaPoly::one(),
        ))
    }
}

fn fc(cmd: FcCmd, out: Out) -> Result<i32, Failure> {
    match cmd {
        FcCmd::Enum {
            graph,
            n,
            max_len,
            count_only,
        } => {
            let g = match graph {
                GraphType::AffineD => affine(n)?,
                GraphType::Path => CoxeterGraph::path(n).map_err(usage)?,
            };
            let levels = enumerate_fc(&g, max_len)?;
            if count_only {
                let counts: Vec<String> = levels.iter().map(|l| l.len().to_string()).collect();
                emit(out, counts.join(" "))?;
            } else {
                for w in levels.iter().flatten() {
                    emit(out, format_args!("[{w}]"))?;
                }
            }
        }
        FcCmd::Check { n, word: w } => {
            let g = affine(n)?;
            let w = word(&w, &g)?;
            return Ok(match is_fc_reduced(&w, &g)? {
                FcStatus::Fc => {
                    emit(out, "fc")?;
                    EXIT_OK
                }
                FcStatus::NotFc { witness } => {
                    emit(out, format_args!("not fc: [{witness}]"))?;
                    EXIT_FAILED
                }
                FcStatus::NotReduced { witness } => {
                    emit(out, format_args!("not reduced: [{witness}]"))?;
                    EXIT_FAILED
                }
            });
        }
        FcCmd::Class { n, word: w } => {
            let g = affine(n)?;
            for v in commutation_class(&word(&w, &g)?, &g)? {
                emit(out, format_args!("[{v}]"))?;
            }
        }
        FcCmd::Canon { n, word: w } => {
            let g = affine(n)?;
            emit(
                out,
                format_args!("[{}]", canonical_form(&word(&w, &g)?, &g)?),
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn tl(cmd: TlCmd, out: Out) -> Result<i32, Failure> {
    match cmd {
        TlCmd::Mul { n, left, right } => {
            let g = affine(n)?;
            let (a, b) = (tl_element(&left, &g)?, tl_element(&right, &g)?);
            emit(out, a.mul(&b, &g)?)?;
        }
        TlCmd::Reduce { n, word: w } => {
            let g = affine(n)?;
            if w.contains('[') {
                emit(out, tl_element(&w, &g)?)?;
            } else {
                let (c, u) = reduce_word(&word(&w, &g)?, &g)?;
                emit(out, TlElement::monomial(u, c))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn diag(cmd: DiagCmd, out: Out) -> Result<i32, Failure> {
    match cmd {
        DiagCmd::Mul { left, right, rules } => {
            let rules = load_rules(&rules)?;
            let (a, b) = (diagram_element(&left)?, diagram_element(&right)?);
            emit(out, a.mul(&b, &rules).map_err(usage)?)?;
        }
        DiagCmd::Reduce { diagram: d, rules } => {
            let rules = load_rules(&rules)?;
            if d.contains('{') {
                emit(out, diagram_element(&d)?.reduced(&rules).map_err(usage)?)?;
            } else {
                let raw = tlwb_diagram::text::parse_raw(&d).map_err(usage)?;
                let (c, r) = reduce(raw, &rules).map_err(usage)?;
                emit(out, DiagramElement::monomial(r, c))?;
            }
        }
        DiagCmd::Admissible { diagram: d } => {
            let d = diagram(&d)?;
            let rules = RuleSet::default();
            let (c, r) = reduce(d.raw().clone(), &rules).map_err(usage)?;
            if !c.is_one() || r != d {
                emit(out, "not reduced")?;
                return Ok(EXIT_FAILED);
            }
            let ok = is_admissible(&d);
            emit(out, if ok { "admissible" } else { "not admissible" })?;
            return Ok(if ok { EXIT_OK } else { EXIT_FAILED });
        }
        DiagCmd::Simple { n, index } => emit(out, simple_diagram(n, index).map_err(usage)?)?,
        DiagCmd::Theta { n, word: w, rules } => {
            let theta = Theta::new(n, load_rules(&rules)?)?;
            let a = tl_element(&w, theta.graph())?;
            emit(out, theta.element(&a)?)?;
        }
        DiagCmd::Rules { rules } => write!(out, "{}", load_rules(&rules)?).map_err(usage)?,
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: Out) -> Result<i32, Failure> {
    match cli.cmd {
        Cmd::Fc { cmd } => fc(cmd, out),
        Cmd::Tl { cmd } => tl(cmd, out),
        Cmd::Diag { cmd } => diag(cmd, out),
        Cmd::Factorize {
            diagram: d,
            trace,
            max_len,
            rules,
        } => {
            let d = diagram(&d)?;
            if d.k() < 4 {
                return Err(FactorizeError::TooFewStrands(d.k()).into());
            }
            let limits = Limits {
                max_len,
                ..Limits::default()
            };
            let mut f = Factorizer::new(d.k() - 2, load_rules(&rules)?, limits)?;
            let w = f.factorize(&d)?;
            emit(out, format_args!("[{w}]"))?;
            if trace {
                for (i, rest) in f.trace(&d)? {
                    emit(out, format_args!("{i} {{{rest}}}"))?;
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Verify {
            n,
            max_len,
            seed,
            suites,
            samples,
            format,
            rules,
        } => {
            let suites = suites
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse::<Suite>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            if n < 2 {
                return Err(usage("verify needs n >= 2"));
            }
            let mut cfg = VerifyConfig::new(n, max_len, seed, suites);
            cfg.samples = samples;
            let report = verify_suite(&cfg, load_rules(&rules)?)?;
            match format {
                ReportFormat::Text => emit(out, &report)?,
                ReportFormat::Json => emit(out, report.to_json())?,
            }
            Ok(if report.aborted.is_some() {
                EXIT_CAP
            } else if report.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Cmd::Render { diagram: d, format } => {
            let d = diagram(&d)?;
            let pic = match format {
                Picture::Ascii => render::ascii(&d),
                Picture::Svg => render::svg(&d),
            };
            write!(out, "{pic}").map_err(usage)?;
            Ok(EXIT_OK)
        }
    }
}

fn apply_env() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(CLASS_CAP_VAR) {
        let cap: usize = v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{CLASS_CAP_VAR}={v:?} is not a number")))?;
        tlwb_fullcomm::set_class_cap(cap);
    }
    Ok(())
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let shown = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{shown}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{shown}");
                EXIT_OK
            };
        }
    };
    match apply_env().and_then(|()| dispatch(cli, out)) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
