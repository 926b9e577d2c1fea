//! The `parikh-kit` command line.
//!
//! Exit codes: 0 success, 1 parse error or bad arguments, 2 I/O error,
//! 3 a `check` that found a counterexample.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::json;

use crate::check::{run_checks, MAX_LEN_CAP};
use crate::cs::{build_condition_automaton, build_erasing_homomorphism, render_annotated, Bracket};
use crate::extraction::{parikh_image, render_trace, run_pipeline, ExtractionError};
use crate::grammar::{enumerate_words, to_cnf, Grammar, GrammarError};
use crate::semilinear::{NVector, ParikhImage, SemilinearError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print the Parikh image as a semilinear set
    Image,
    /// Print the bracket construction
    Cs,
    /// Test a vector for membership in the image
    Member,
    /// Cross-check the image against brute-force oracles
    Check,
    /// List the words of the language up to --max-len
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "parikh-kit",
    version,
    about = "Parikh images of context-free grammars"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    pub grammar_path: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,
    #[arg(long = "format", value_enum, default_value_t = OutputFormat::Text)]
    pub output_format: OutputFormat,
    /// Vector for `member`, e.g. "[3,3]"
    #[arg(long)]
    pub vector: Option<String>,
    /// `check` only: validate this JSON image instead of the computed one
    #[arg(long)]
    pub image: Option<PathBuf>,
    /// `image` only: list the trees behind each component
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Io(String),
}

impl From<GrammarError> for Failure {
    fn from(e: GrammarError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SemilinearError> for Failure {
    fn from(e: SemilinearError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ExtractionError> for Failure {
    fn from(e: ExtractionError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return EXIT_INPUT;
        }
    };
    match execute(&cfg, out) {
        Ok(code) => code,
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_IO
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    if cfg.max_len > MAX_LEN_CAP {
        return Err(Failure::Input(format!(
            "--max-len must be at most {MAX_LEN_CAP}"
        )));
    }
    let g = Grammar::parse(&read(&cfg.grammar_path)?)?;
    let json = cfg.output_format == OutputFormat::Json;
    let (text, code) = match cfg.command {
        Command::Image => (cmd_image(&g, json, cfg.trace)?, EXIT_OK),
        Command::Cs => (cmd_cs(&g, json), EXIT_OK),
        Command::Member => {
            let v = cfg
                .vector
                .as_deref()
                .ok_or_else(|| Failure::Input("member requires --vector".into()))?;
            (cmd_member(&g, v, json)?, EXIT_OK)
        }
        Command::Check => {
            let image = match &cfg.image {
                Some(p) => ParikhImage::from_json(&read(p)?)?,
                None => parikh_image(&g)?,
            };
            if image.alphabet != *g.alphabet() {
                return Err(Failure::Input(
                    "image alphabet differs from the grammar's".into(),
                ));
            }
            let report = run_checks(&g, &image, cfg.max_len);
            let text = if json {
                let checks: Vec<_> = report
                    .outcomes
                    .iter()
                    .map(|o| json!({"name": o.name, "passed": o.passed(), "counterexample": o.failure}))
                    .collect();
                pretty(&json!({ "passed": report.passed(), "checks": checks }))
            } else {
                report.to_string()
            };
            (text, if report.passed() { EXIT_OK } else { EXIT_CHECK })
        }
        Command::Enumerate => (cmd_enumerate(&g, cfg.max_len, json), EXIT_OK),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Io(e.to_string()))?;
    Ok(code)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn cmd_image(g: &Grammar, json: bool, trace: bool) -> Result<String, Failure> {
    if trace && !json {
        return Ok(render_trace(&run_pipeline(g)?));
    }
    let image = parikh_image(g)?;
    Ok(if json {
        image.to_json() + "\n"
    } else {
        image.to_text()
    })
}

fn cmd_cs(g: &Grammar, json: bool) -> String {
    let cnf = to_cnf(g);
    let ann = crate::cs::build_annotated_grammar(&cnf);
    let h = build_erasing_homomorphism(&cnf);
    let dfa = build_condition_automaton(&cnf);
    let brackets: Vec<String> = ann
        .bracket_alphabet()
        .iter()
        .map(Bracket::to_string)
        .collect();
    let accepting: Vec<String> = (0..dfa.num_states())
        .filter(|&s| dfa.is_accepting(s))
        .map(|s| dfa.state_name(s))
        .collect();
    if json {
        let rules: Vec<String> = render_annotated(&ann).lines().map(str::to_owned).collect();
        let table: Vec<_> = ann
            .bracket_alphabet()
            .iter()
            .map(|&b| json!([b.to_string(), h.image(b).map(|a| cnf.alphabet().letter(a))]))
            .collect();
        let transitions: Vec<_> = (0..dfa.num_states())
            .flat_map(|s| {
                let dfa = &dfa;
                ann.bracket_alphabet().iter().map(move |&b| {
                    json!([
                        dfa.state_name(s),
                        b.to_string(),
                        dfa.state_name(dfa.step(s, b))
                    ])
                })
            })
            .collect();
        return pretty(&json!({
            "rules": rules,
            "brackets": brackets,
            "homomorphism": table,
            "automaton": {
                "initial": dfa.state_name(dfa.initial()),
                "accepting": accepting,
                "transitions": transitions,
            },
        }));
    }
    format!(
        "# annotated grammar\n{}# brackets\n{}\n# homomorphism\n{}# accepting states\n{}\n# condition automaton\n{}",
        render_annotated(&ann),
        brackets.join(" "),
        h.table(),
        accepting.join(" "),
        dfa.dump()
    )
}

fn cmd_member(g: &Grammar, vector: &str, json: bool) -> Result<String, Failure> {
    let v = NVector::parse(vector)
        .ok_or_else(|| Failure::Input(format!("cannot parse vector {vector:?}")))?;
    let image = parikh_image(g)?;
    let witness = image.set.member(&v)?;
    Ok(match (json, witness) {
        (true, w) => pretty(&json!({
            "member": w.is_some(),
            "component": w.as_ref().map(|w| w.component),
            "lambda": w.map(|w| w.lambda),
        })),
        (false, Some(w)) => {
            let lambda: Vec<String> = w.lambda.iter().map(u64::to_string).collect();
            format!(
                "yes component={} lambda=({})\n",
                w.component,
                lambda.join(",")
            )
        }
        (false, None) => "no\n".into(),
    })
}

fn cmd_enumerate(g: &Grammar, max_len: usize, json: bool) -> String {
    let mut words: Vec<(usize, String)> = enumerate_words(&to_cnf(g), max_len)
        .into_iter()
        .map(|w| (w.len(), g.alphabet().render_word(&w)))
        .collect();
    words.sort();
    if json {
        let list: Vec<&str> = words.iter().map(|(_, w)| w.as_str()).collect();
        return pretty(&json!(list));
    }
    words.into_iter().map(|(_, w)| w + "\n").collect()
}
