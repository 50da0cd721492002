//! The `tbm` batch front end. [`execute`] is pure apart from reading input
//! files, so tests drive it directly.

use std::fmt::Write as _;
use std::io::Read as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::draw;
use crate::equivalence::{monoid_verdict, Verdict, DEFAULT_BUDGET};
use crate::fuzz;
use crate::moves::{
    add_fixed_tie, add_tie, algebraic_l_move, conjugate, destabilize, loop_conjugate, stabilize, t_bbm, MoveError,
    TieCriterion,
};
use crate::rewriting::{normal_form, relation_catalog, RelationKind};
use crate::semantics::{closure_summary, scan_semantics, ClosureSummary};
use crate::words::{Context, Sign, TiedWord, WordFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Exit code and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr }
    }
}

#[derive(Parser, Debug)]
#[command(name = "tbm", version, about = "Tied braid monoid toolkit")]
struct Cli {
    /// Context such as "g=1 n=3 M=lens p=2"; overrides the file header.
    #[arg(long, global = true)]
    ctx: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Handle-reduction steps before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Input {
    /// Word file (`-` for stdin).
    file: Option<String>,
    /// Inline word; may repeat. Needs --ctx unless a file supplies one.
    #[arg(long = "word", short = 'w')]
    words: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate words and print them canonically.
    Parse(Input),
    /// Print the mobility normal form of each word.
    Normalize(Input),
    /// Decide monoid equality of the first two words.
    Eq(Input),
    /// Closure report of each word.
    Closure {
        #[command(flatten)]
        input: Input,
        /// One canonical line per word instead of the key=value report.
        #[arg(long)]
        record: bool,
    },
    /// Apply one move to the first word: conjugate I SIGN, loop-conjugate K SIGN,
    /// stabilize SIGN, destabilize, l-move SPLIT SIGN, add-tie I J,
    /// add-fixed-tie K J, t-bbm SIGN. SIGN is + or -.
    Move {
        name: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
        #[arg(long, short = 'f')]
        file: Option<String>,
        #[arg(long = "word", short = 'w')]
        words: Vec<String>,
    },
    /// Print the relation catalog admitted by the context.
    Relations,
    /// Verify catalog relations by scan semantics and monoid equality.
    Check {
        /// Defining relations.
        #[arg(long)]
        relations: bool,
        /// Derived identities.
        #[arg(long)]
        derived: bool,
    },
    /// Seeded property sweep.
    Fuzz {
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Draw the first word.
    Draw {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
}

/// Runs one command line (including the program name).
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::usage(text)
            };
        }
    };
    match run(&cli) {
        Ok(out) => out,
        Err(msg) => Outcome::usage(format!("error: {msg}")),
    }
}

type Usage = String;

fn ok(code: i32, stdout: String) -> Result<Outcome, Usage> {
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn cli_ctx(cli: &Cli) -> Result<Option<Context>, Usage> {
    cli.ctx.as_deref().map(|s| s.parse().map_err(|e| format!("--ctx: {e}"))).transpose()
}

fn require_ctx(cli: &Cli) -> Result<Context, Usage> {
    cli_ctx(cli)?.ok_or_else(|| "this command needs --ctx".to_string())
}

fn read_source(path: &str) -> Result<String, Usage> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| format!("stdin: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

/// Raw word lines plus the effective context.
fn load_lines(cli: &Cli, file: Option<&str>, inline: &[String]) -> Result<(Context, Vec<String>), Usage> {
    let mut header = None;
    let mut lines = Vec::new();
    if let Some(path) = file {
        let parsed = WordFile::parse(&read_source(path)?).map_err(|e| format!("{path}: {e}"))?;
        header = parsed.ctx;
        lines = parsed.lines;
    }
    lines.extend(inline.iter().cloned());
    let ctx = cli_ctx(cli)?
        .or(header)
        .ok_or_else(|| "no context: give a `%ctx` header or --ctx".to_string())?;
    if lines.is_empty() {
        return Err("no input words".to_string());
    }
    Ok((ctx, lines))
}

fn load_words(cli: &Cli, file: Option<&str>, inline: &[String]) -> Result<Vec<TiedWord>, Usage> {
    let (ctx, lines) = load_lines(cli, file, inline)?;
    lines
        .iter()
        .enumerate()
        .map(|(i, l)| TiedWord::parse(l, ctx).map_err(|e| format!("word {}: {e}", i + 1)))
        .collect()
}

fn run(cli: &Cli) -> Result<Outcome, Usage> {
    match &cli.command {
        Command::Parse(input) => cmd_parse(cli, input),
        Command::Normalize(input) => {
            let words = load_words(cli, input.file.as_deref(), &input.words)?;
            let mut out = String::new();
            for (i, w) in words.iter().enumerate() {
                let nf = normal_form(w);
                let _ = writeln!(out, "nf.{}={nf}", i + 1);
                let _ = writeln!(out, "reconstruction.{}={}", i + 1, nf.reconstruct());
            }
            ok(EXIT_OK, out)
        }
        Command::Eq(input) => {
            let words = load_words(cli, input.file.as_deref(), &input.words)?;
            if words.len() != 2 {
                return Err(format!("eq needs exactly two words, got {}", words.len()));
            }
            let verdict = monoid_verdict(&words[0], &words[1], cli.budget).map_err(|e| e.to_string())?;
            let code = match verdict {
                Verdict::Equal => EXIT_OK,
                Verdict::Differ(_) => EXIT_NEGATIVE,
                Verdict::Undecided => EXIT_UNDECIDED,
            };
            ok(code, format!("{verdict}\n"))
        }
        Command::Closure { input, record } => {
            let words = load_words(cli, input.file.as_deref(), &input.words)?;
            let mut out = String::new();
            for (i, w) in words.iter().enumerate() {
                let summary = closure_summary(w);
                if *record {
                    let _ = writeln!(out, "{}", summary.record());
                } else {
                    if words.len() > 1 {
                        let _ = writeln!(out, "word={}", i + 1);
                    }
                    out.push_str(&summary.report());
                }
            }
            ok(EXIT_OK, out)
        }
        Command::Move { name, args, file, words } => cmd_move(cli, name, args, file.as_deref(), words),
        Command::Relations => {
            let ctx = require_ctx(cli)?;
            let catalog = relation_catalog(&ctx).map_err(|e| e.to_string())?;
            let mut out = String::new();
            for rel in catalog.relations() {
                let kind = match rel.kind {
                    RelationKind::Defining => "defining",
                    RelationKind::Derived => "derived",
                };
                let _ = writeln!(
                    out,
                    "relation={} kind={kind} params={} instances={} statement=\"{}\"",
                    rel.id,
                    rel.params.join(","),
                    rel.instances(&ctx).len(),
                    rel.statement
                );
            }
            ok(EXIT_OK, out)
        }
        Command::Check { relations, derived } => cmd_check(cli, *relations, *derived),
        Command::Fuzz { cases } => {
            let only = cli_ctx(cli)?;
            let tallies = fuzz::sweep(cli.seed, *cases, only, cli.budget);
            let mut out = String::new();
            let mut code = EXIT_OK;
            for t in &tallies {
                let _ = writeln!(
                    out,
                    "property={} cases={} failures={} undecided={}",
                    t.name, t.cases, t.failures, t.undecided
                );
                if let Some(f) = &t.first_failure {
                    let _ = writeln!(out, "failure.{}={f}", t.name);
                }
                if t.failures > 0 {
                    code = EXIT_NEGATIVE;
                } else if t.undecided > 0 && code == EXIT_OK {
                    code = EXIT_UNDECIDED;
                }
            }
            let _ = writeln!(out, "seed={}", cli.seed);
            ok(code, out)
        }
        Command::Draw { input, format } => {
            let words = load_words(cli, input.file.as_deref(), &input.words)?;
            let doc = match format {
                Format::Ascii => draw::ascii(&words[0]),
                Format::Svg => draw::svg(&words[0]),
            };
            ok(EXIT_OK, doc)
        }
    }
}

fn cmd_parse(cli: &Cli, input: &Input) -> Result<Outcome, Usage> {
    let (ctx, lines) = load_lines(cli, input.file.as_deref(), &input.words)?;
    let mut out = String::new();
    let mut code = EXIT_OK;
    let _ = writeln!(out, "ctx={ctx}");
    for (i, line) in lines.iter().enumerate() {
        match TiedWord::parse(line, ctx) {
            Ok(w) => {
                let _ = writeln!(out, "word.{}={} length={} ties={}", i + 1, w.render(), w.len(), w.has_ties());
            }
            Err(e) => {
                code = EXIT_NEGATIVE;
                let _ = writeln!(out, "word.{} error=\"{e}\"", i + 1);
            }
        }
    }
    ok(code, out)
}

fn parse_sign(s: &str) -> Result<Sign, Usage> {
    match s {
        "+" | "+1" | "1" | "pos" => Ok(Sign::Plus),
        "-" | "-1" | "neg" => Ok(Sign::Minus),
        _ => Err(format!("bad sign `{s}` (use + or -)")),
    }
}

fn parse_index(s: &str) -> Result<usize, Usage> {
    s.parse().map_err(|_| format!("bad index `{s}`"))
}

fn cmd_move(cli: &Cli, name: &str, args: &[String], file: Option<&str>, inline: &[String]) -> Result<Outcome, Usage> {
    let arity = match name {
        "destabilize" => 0,
        "stabilize" | "t-bbm" => 1,
        "conjugate" | "loop-conjugate" | "l-move" | "add-tie" | "add-fixed-tie" => 2,
        _ => return Err(format!("unknown move `{name}`")),
    };
    if args.len() != arity {
        return Err(format!("move {name} takes {arity} argument(s), got {}", args.len()));
    }
    let words = load_words(cli, file, inline)?;
    let w = &words[0];
    let mut criterion = None;
    let result: Result<TiedWord, MoveError> = match name {
        "conjugate" => conjugate(w, parse_index(&args[0])?, parse_sign(&args[1])?),
        "loop-conjugate" => loop_conjugate(w, parse_index(&args[0])?, parse_sign(&args[1])?),
        "stabilize" => stabilize(w, parse_sign(&args[0])?),
        "destabilize" => destabilize(w),
        "t-bbm" => t_bbm(w, parse_sign(&args[0])?),
        "l-move" => {
            let split = parse_index(&args[0])?;
            if split > w.len() {
                return Err(format!("split {split} beyond word length {}", w.len()));
            }
            let w1 = TiedWord::new(*w.ctx(), w.letters()[..split].to_vec()).map_err(|e| e.to_string())?;
            let w2 = TiedWord::new(*w.ctx(), w.letters()[split..].to_vec()).map_err(|e| e.to_string())?;
            algebraic_l_move(&w1, &w2, parse_sign(&args[1])?)
        }
        "add-tie" => add_tie(w, parse_index(&args[0])?, parse_index(&args[1])?).map(|(out, c)| {
            criterion = Some(c);
            out
        }),
        "add-fixed-tie" => add_fixed_tie(w, parse_index(&args[0])?, parse_index(&args[1])?).map(|(out, c)| {
            criterion = Some(c);
            out
        }),
        _ => unreachable!("arity table covers every move"),
    };
    let moved = match result {
        Ok(moved) => moved,
        Err(e) => {
            return Ok(Outcome {
                code: EXIT_NEGATIVE,
                stdout: format!("move={name} status=rejected\n"),
                stderr: format!("error: {e}\n"),
            })
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "move={name} status=applied");
    if moved.ctx() != w.ctx() {
        let _ = writeln!(out, "ctx={}", moved.ctx());
    }
    let _ = writeln!(out, "word={moved}");
    if let Some(c) = criterion {
        let _ = writeln!(
            out,
            "criterion={}",
            match c {
                TieCriterion::Permutation => "permutation",
                TieCriterion::SameCycle => "same-cycle",
            }
        );
    }
    let diff = closure_diff(&closure_summary(w), &closure_summary(&moved));
    if diff.is_empty() {
        let _ = writeln!(out, "diff=none");
        ok(EXIT_OK, out)
    } else {
        out.push_str(&diff);
        ok(EXIT_NEGATIVE, out)
    }
}

/// Lines describing how two closures differ; empty when their invariants agree.
pub fn closure_diff(before: &ClosureSummary, after: &ClosureSummary) -> String {
    let mut out = String::new();
    if before.component_count() != after.component_count() {
        let _ = writeln!(out, "diff.components={}->{}", before.component_count(), after.component_count());
    }
    if before.tie_class_count() != after.tie_class_count() {
        let _ = writeln!(out, "diff.tieClasses={}->{}", before.tie_class_count(), after.tie_class_count());
    }
    if out.is_empty() && before.signature() != after.signature() {
        let _ = writeln!(out, "diff.signature=changed");
        let _ = writeln!(out, "diff.before={}", before.record());
        let _ = writeln!(out, "diff.after={}", after.record());
    }
    out
}

fn cmd_check(cli: &Cli, relations: bool, derived: bool) -> Result<Outcome, Usage> {
    let ctx = require_ctx(cli)?;
    let (relations, derived) = if relations || derived { (relations, derived) } else { (true, true) };
    let catalog = relation_catalog(&ctx).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let (mut total, mut failures, mut undecided) = (0usize, 0usize, 0usize);
    for rel in catalog.relations() {
        let wanted = match rel.kind {
            RelationKind::Defining => relations,
            RelationKind::Derived => derived,
        };
        if !wanted {
            continue;
        }
        let (mut fail, mut open) = (0, 0);
        let instances = rel.instances(&ctx);
        for inst in &instances {
            let lhs = TiedWord::new_unchecked(ctx, inst.lhs.clone());
            let rhs = TiedWord::new_unchecked(ctx, inst.rhs.clone());
            if scan_semantics(&lhs) != scan_semantics(&rhs) {
                fail += 1;
                continue;
            }
            match monoid_verdict(&lhs, &rhs, cli.budget).map_err(|e| e.to_string())? {
                Verdict::Equal => {}
                Verdict::Differ(_) => fail += 1,
                Verdict::Undecided => open += 1,
            }
        }
        let status = if fail > 0 {
            "fail"
        } else if open > 0 {
            "undecided"
        } else {
            "pass"
        };
        let _ = writeln!(out, "relation={} instances={} status={status}", rel.id, instances.len());
        total += instances.len();
        failures += fail;
        undecided += open;
    }
    let _ = writeln!(out, "checked={total} failures={failures} undecided={undecided}");
    let code = if failures > 0 {
        EXIT_NEGATIVE
    } else if undecided > 0 {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    };
    ok(code, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        execute(std::iter::once("tbm").chain(args.iter().copied()))
    }

    #[test]
    fn eq_braid_relation() {
        let out = run(&["eq", "--ctx", "g=0 n=3 M=s3", "-w", "s1 s2 s1", "-w", "s2 s1 s2"]);
        assert_eq!(out.stdout, "EQUAL\n");
        assert_eq!(out.code, 0);
    }

    #[test]
    fn closure_of_single_tie() {
        let out = run(&["closure", "--ctx", "g=0 n=2 M=s3", "-w", "t1"]);
        assert!(out.stdout.starts_with("components=2 tieClasses=1\n"), "{}", out.stdout);
    }

    #[test]
    fn usage_errors_exit_3() {
        assert_eq!(run(&["frobnicate"]).code, 3);
        assert_eq!(run(&["eq", "-w", "s1", "-w", "s1"]).code, 3);
        assert_eq!(run(&["move", "spin", "--ctx", "g=0 n=2 M=s3", "-w", "s1"]).code, 3);
    }

    #[test]
    fn move_reports_empty_diff() {
        let out = run(&["move", "--ctx", "g=0 n=2 M=s3", "-w", "s1 t1", "stabilize", "-"]);
        assert_eq!(out.code, 0, "{out:?}");
        assert!(out.stdout.contains("word=s1 t1 S2\n"));
        assert!(out.stdout.contains("diff=none"));
        let rejected = run(&["move", "--ctx", "g=1 n=2 M=hb", "-w", "s1", "loop-conjugate", "1", "+"]);
        assert_eq!(rejected.code, 1);
    }
}
