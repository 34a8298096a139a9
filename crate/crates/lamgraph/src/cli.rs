//! The `lamgraph` command line, as a function from arguments to output so it
//! can be driven from tests.

use std::fmt::Write;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dot::to_dot;
use crate::graph::{Signature, TermGraph};
use crate::ho::{validate_ap_ho_diag, validate_ho_diag, ApHoTermGraph, HoTermGraph};
use crate::lattice::{check_lattice, enumerate_images_bounded, DEFAULT_MAX_VERTICES};
use crate::letrec::{parse, term_to_ap_ho, unfolding_equivalent, LetrecTerm};
use crate::morphism::are_bisimilar;
use crate::partition::collapse;
use crate::scope::{classify, infer_prefix_sig_i_diag, ScopeClassification};
use crate::text::{looks_like_graph, parse_document, write_ap_ho, write_graph, write_ho, Document};
use crate::transform::{
    erase_delimiters, insert_delimiters, max_share_stages, prefixes_to_scopes, scopes_to_prefixes,
    PipelineStages,
};

#[derive(Parser, Debug)]
#[command(
    name = "lamgraph",
    version,
    about = "Scope checking and maximal sharing for cyclic λ-terms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a graph or term file
    Check {
        file: String,
        /// Reinterpret a graph over this signature
        #[arg(long)]
        sig: Option<String>,
    },
    /// Print the full scope classification
    Classify {
        file: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        sig: Option<String>,
    },
    /// Convert between representations
    Translate {
        #[arg(long, value_enum)]
        from: Option<FromKind>,
        #[arg(long, value_enum)]
        to: ToKind,
        /// Target signature for `--to ltg` (delimiter arity)
        #[arg(long)]
        sig: Option<String>,
        file: String,
    },
    /// Print the maximally shared form
    Collapse {
        file: String,
        /// Collapse higher-order graphs even without eager scope
        #[arg(long)]
        allow_lazy: bool,
        /// Print every pipeline stage as DOT instead of the result
        #[arg(long)]
        stages: bool,
    },
    /// Decide bisimilarity or unfolding equivalence
    Equal { a: String, b: String },
    /// Enumerate homomorphic images and check the lattice property
    Lattice {
        file: String,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Emit Graphviz DOT
    Dot { file: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FromKind {
    Ho,
    Apho,
    Ltg,
    Term,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ToKind {
    Ho,
    Apho,
    Ltg,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(holds: bool, stdout: String) -> Self {
        Outcome {
            code: if holds { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn negative(stdout: String, stderr: String) -> Self {
        Outcome {
            code: 1,
            stdout,
            stderr,
        }
    }

    fn usage(stderr: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Input {
    Term(LetrecTerm),
    Doc(Document),
}

struct Failure(Outcome);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(Outcome::usage(format!("error: {e}\n")))
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::from(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn load(path: &str, stdin: &mut dyn Read, sig: Option<&str>) -> Result<Input, Failure> {
    let text = read_source(path, stdin)?;
    if looks_like_graph(&text) {
        let mut doc = parse_document(&text)?;
        if let Some(code) = sig {
            doc.graph = doc.graph.with_signature(parse_sig(code)?)?;
        }
        Ok(Input::Doc(doc))
    } else {
        Ok(Input::Term(parse(&text)?))
    }
}

fn parse_sig(code: &str) -> Result<Signature, Failure> {
    Signature::parse(code).ok_or_else(|| Failure::from(format!("unknown signature `{code}`")))
}

fn ho_of(doc: &Document) -> Result<HoTermGraph, Failure> {
    let scopes = doc
        .scopes
        .clone()
        .ok_or_else(|| Failure::from("input has no scope lines"))?;
    Ok(HoTermGraph::new(doc.graph.clone(), scopes)?)
}

fn ap_ho_of(doc: &Document) -> Result<ApHoTermGraph, Failure> {
    let p = doc
        .prefixes
        .clone()
        .ok_or_else(|| Failure::from("input has no prefix lines"))?;
    Ok(ApHoTermGraph::new(doc.graph.clone(), p)?)
}

fn as_graph(input: &Input) -> TermGraph {
    match input {
        Input::Term(t) => crate::letrec::term_to_graph(t),
        Input::Doc(d) => d.graph.clone(),
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) | Err(Failure(out)) => out,
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    match command {
        Command::Check { file, sig } => check(&file, sig.as_deref(), stdin),
        Command::Classify { file, json, sig } => {
            let input = load(&file, stdin, sig.as_deref())?;
            let g = as_graph(&input);
            let c = classify(&g);
            Ok(Outcome::ok(if json {
                report_json(&g, &c)
            } else {
                report_text(&g, &c)
            }))
        }
        Command::Translate { from, to, sig, file } => translate(from, to, sig.as_deref(), &file, stdin),
        Command::Collapse {
            file,
            allow_lazy,
            stages,
        } => collapse_cmd(&file, !allow_lazy, stages, stdin),
        Command::Equal { a, b } => {
            let ia = load(&a, stdin, None)?;
            let ib = load(&b, stdin, None)?;
            let same = match (&ia, &ib) {
                (Input::Term(s), Input::Term(t)) => unfolding_equivalent(s, t),
                _ => are_bisimilar(&as_graph(&ia), &as_graph(&ib)),
            };
            let word = if same { "equivalent" } else { "not equivalent" };
            Ok(Outcome::verdict(same, format!("{word}\n")))
        }
        Command::Lattice { file, max_vertices } => {
            let g = as_graph(&load(&file, stdin, None)?);
            let images = enumerate_images_bounded(&g, max_vertices)?;
            let graphs: Vec<TermGraph> = images.into_iter().map(|i| i.graph).collect();
            let holds = check_lattice(&graphs);
            Ok(Outcome::verdict(
                holds,
                format!("images: {}\nlattice: {holds}\n", graphs.len()),
            ))
        }
        Command::Dot { file } => {
            let out = match load(&file, stdin, None)? {
                Input::Term(t) => to_dot(&crate::letrec::term_to_graph(&t), None),
                Input::Doc(d) => match (&d.scopes, &d.prefixes) {
                    (Some(sc), _) => to_dot(&d.graph, Some(sc)),
                    (None, Some(_)) => {
                        let h = prefixes_to_scopes(&ap_ho_of(&d)?);
                        to_dot(h.carrier(), Some(h.scopes()))
                    }
                    (None, None) => to_dot(&d.graph, None),
                },
            };
            Ok(Outcome::ok(out))
        }
    }
}

fn check(file: &str, sig: Option<&str>, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    let text = read_source(file, stdin)?;
    // content errors are a negative verdict here, not a usage error
    let invalid = |e: String| Outcome::negative(format!("invalid: {e}\n"), String::new());
    if !looks_like_graph(&text) {
        return Ok(match parse(&text) {
            Ok(t) => {
                let g = crate::letrec::term_to_graph(&t);
                Outcome::ok(format!(
                    "valid closed term; λ-term-graph over l12 with {} vertices\n",
                    g.len()
                ))
            }
            Err(e) => invalid(e.to_string()),
        });
    }
    let mut doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => return Ok(invalid(e.to_string())),
    };
    if let Some(code) = sig {
        doc.graph = doc.graph.with_signature(parse_sig(code)?)?;
    }
    let g = &doc.graph;
    if let Some(sc) = &doc.scopes {
        return Ok(match validate_ho_diag(g, sc) {
            Ok(()) if matches!(g.signature(), Signature::L0 | Signature::L1) => {
                Outcome::ok("valid higher-order term graph\n".into())
            }
            Ok(()) => invalid(format!(
                "scope functions need signature l0 or l1, got {}",
                g.signature()
            )),
            Err(v) => invalid(v.describe(g)),
        });
    }
    if let Some(p) = &doc.prefixes {
        return Ok(match validate_ap_ho_diag(g, p) {
            Ok(()) => Outcome::ok("valid prefixed term graph\n".into()),
            Err(v) => invalid(v.describe(g)),
        });
    }
    match g.signature() {
        Signature::L | Signature::L0 => Ok(match infer_prefix_sig_i_diag(g) {
            Ok(_) => Outcome::ok(format!(
                "sig: {}\nadmits a correct prefix function\n",
                g.signature()
            )),
            Err(v) => invalid(v.describe(g)),
        }),
        _ => {
            let c = classify(g);
            let mut out = format!(
                "sig: {}\nis_ltg: {}\nis_eager: {}\nis_fbl: {}\nis_ltg_up_to_S: {}\n",
                c.sig, c.is_ltg, c.is_eager, c.is_fbl, c.is_ltg_up_to_s
            );
            if let Some(v) = c.first_violation {
                let _ = writeln!(out, "violation: {}", v.describe(g));
            }
            Ok(Outcome::verdict(c.is_ltg, out))
        }
    }
}

fn report_text(g: &TermGraph, c: &ScopeClassification) -> String {
    let mut out = format!(
        "sig: {}\nis_ltg: {}\nis_eager: {}\nis_fbl: {}\nis_ltg_up_to_S: {}\n",
        c.sig, c.is_ltg, c.is_eager, c.is_fbl, c.is_ltg_up_to_s
    );
    if let Some(v) = c.first_violation {
        let _ = writeln!(out, "violation: {}", v.describe(g));
    }
    if let Some(p) = &c.prefix {
        for v in g.vertices() {
            let _ = writeln!(out, "prefix {}: {}", g.name(v), p.show(g, v));
        }
    }
    out
}

#[derive(Serialize)]
struct Report<'a> {
    sig: &'a str,
    is_ltg: bool,
    is_eager: bool,
    is_fbl: bool,
    #[serde(rename = "is_ltg_up_to_S")]
    is_ltg_up_to_s: bool,
    violation: Option<ViolationReport<'a>>,
    prefix: Option<Vec<PrefixEntry<'a>>>,
}

/// A vertex name and its prefix word; `None` for an unconstrained vertex.
type PrefixEntry<'a> = (&'a str, Option<Vec<&'a str>>);

#[derive(Serialize)]
struct ViolationReport<'a> {
    condition: &'static str,
    vertex: &'a str,
    edge: Option<usize>,
}

fn report_json(g: &TermGraph, c: &ScopeClassification) -> String {
    let report = Report {
        sig: c.sig.code(),
        is_ltg: c.is_ltg,
        is_eager: c.is_eager,
        is_fbl: c.is_fbl,
        is_ltg_up_to_s: c.is_ltg_up_to_s,
        violation: c.first_violation.map(|v| ViolationReport {
            condition: v.condition.name(),
            vertex: g.name(v.vertex),
            edge: v.edge,
        }),
        prefix: c.prefix.as_ref().map(|p| {
            g.vertices()
                .map(|v| {
                    (
                        g.name(v),
                        p.try_get(v).map(|w| w.iter().map(|&x| g.name(x)).collect()),
                    )
                })
                .collect()
        }),
    };
    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
}

fn translate(
    from: Option<FromKind>,
    to: ToKind,
    sig: Option<&str>,
    file: &str,
    stdin: &mut dyn Read,
) -> Result<Outcome, Failure> {
    let input = load(file, stdin, None)?;
    let from = from.unwrap_or(match &input {
        Input::Term(_) => FromKind::Term,
        Input::Doc(d) if d.scopes.is_some() => FromKind::Ho,
        Input::Doc(d) if d.prefixes.is_some() => FromKind::Apho,
        Input::Doc(_) => FromKind::Ltg,
    });
    let j = match sig {
        Some(code) => parse_sig(code)?
            .del_arity()
            .ok_or_else(|| Failure::from(format!("`{code}` has no delimiters")))?,
        None => 2,
    };
    let ap_ho = match (&input, from) {
        (Input::Term(t), FromKind::Term) => term_to_ap_ho(t),
        (Input::Doc(d), FromKind::Ho) => scopes_to_prefixes(&ho_of(d)?),
        (Input::Doc(d), FromKind::Apho) => ap_ho_of(d)?,
        (Input::Doc(d), FromKind::Ltg) => {
            if to == ToKind::Ltg {
                return Ok(Outcome::ok(write_graph(&d.graph)));
            }
            erase_delimiters(&d.graph)?
        }
        _ => return Err(Failure::from("input does not match `--from`")),
    };
    let out = match to {
        ToKind::Apho => write_ap_ho(&ap_ho),
        ToKind::Ho => write_ho(&prefixes_to_scopes(&ap_ho)),
        ToKind::Ltg => write_graph(&insert_delimiters(&ap_ho, j)?),
    };
    Ok(Outcome::ok(out))
}

fn stages_dot(input: &HoTermGraph, s: &PipelineStages) -> String {
    [
        ("input", to_dot(input.carrier(), Some(input.scopes()))),
        ("delimited", to_dot(&s.delimited, None)),
        ("collapsed", to_dot(&s.collapsed, None)),
        ("result", to_dot(s.result.carrier(), Some(s.result.scopes()))),
    ]
    .iter()
    .map(|(name, dot)| format!("// {name}\n{dot}"))
    .collect::<Vec<_>>()
    .join("\n")
}

fn collapse_cmd(
    file: &str,
    eager_required: bool,
    stages: bool,
    stdin: &mut dyn Read,
) -> Result<Outcome, Failure> {
    let out = match load(file, stdin, None)? {
        Input::Term(t) if stages => {
            let h = prefixes_to_scopes(&crate::letrec::term_to_ap_ho(&t));
            match max_share_stages(&h, eager_required) {
                Ok(s) => stages_dot(&h, &s),
                Err(e) => return Ok(Outcome::negative(String::new(), format!("error: {e}\n"))),
            }
        }
        Input::Term(t) => write_graph(&collapse(&crate::letrec::term_to_graph(&t)).0),
        Input::Doc(d) => {
            if d.scopes.is_some() || d.prefixes.is_some() {
                let (h, ap) = match d.scopes {
                    Some(_) => (ho_of(&d)?, false),
                    None => (prefixes_to_scopes(&ap_ho_of(&d)?), true),
                };
                match max_share_stages(&h, eager_required) {
                    Ok(s) if stages => stages_dot(&h, &s),
                    Ok(s) if ap => write_ap_ho(&scopes_to_prefixes(&s.result)),
                    Ok(s) => write_ho(&s.result),
                    Err(e) => return Ok(Outcome::negative(String::new(), format!("error: {e}\n"))),
                }
            } else if stages {
                return Err(Failure::from(
                    "--stages needs a term or a graph with scopes or prefixes",
                ));
            } else {
                write_graph(&collapse(&d.graph).0)
            }
        }
    };
    Ok(Outcome::ok(out))
}
