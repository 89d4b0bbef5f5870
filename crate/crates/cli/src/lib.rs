//! Command-line front end for nilaff: the `.naf` workspace format, command dispatch and the
//! fixture corpus runner.

pub mod commands;
pub mod report;
pub mod syntax;
pub mod workspace;

use std::path::{Path, PathBuf};

use clap::Parser;

use commands::{execute, Command, CommandError};
use report::{Format, Report};
use workspace::Workspace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCOPE: i32 = 3;

/// Environment variable overriding the corpus directory.
pub const CORPUS_ENV: &str = "NAF_CORPUS_DIR";

#[derive(Debug, Parser)]
#[command(name = "nilaff", version, about = "Exact computations with NIL-affine actions")]
pub struct Cli {
    /// Input `.naf` files, loaded together as one workspace.
    #[arg(short, long = "file", global = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Exit with status 1 unless the verdict matches.
    #[arg(long, global = true)]
    pub expect: Option<bool>,
    #[command(subcommand)]
    pub command: Command,
}

/// Output text and exit status of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    fn fail(code: i32, message: impl std::fmt::Display) -> Run {
        Run {
            code,
            stdout: String::new(),
            stderr: format!("{message}\n"),
        }
    }
}

pub fn default_corpus_dir() -> PathBuf {
    std::env::var_os(CORPUS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

pub fn load_files(files: &[PathBuf]) -> Result<Workspace, Run> {
    let mut sources = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| Run::fail(EXIT_USAGE, format!("{}: {e}", f.display())))?;
        sources.push((f.display().to_string(), text));
    }
    Workspace::parse_sources(&sources).map_err(|e| {
        let code = if e.scope_violation { EXIT_SCOPE } else { EXIT_USAGE };
        Run::fail(code, e)
    })
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Run {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Run::fail(code, text.trim_end())
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Run {
    if let Command::Corpus { dir } = &cli.command {
        let dir = dir.clone().unwrap_or_else(default_corpus_dir);
        return run_corpus(&dir, cli.format);
    }
    if cli.files.is_empty() {
        return Run::fail(EXIT_USAGE, "no input files; pass them with --file");
    }
    let ws = match load_files(&cli.files) {
        Ok(ws) => ws,
        Err(run) => return run,
    };
    run_command(&ws, &cli.command, cli.format, cli.expect)
}

/// Runs a command against a loaded workspace and maps the outcome to an exit status.
pub fn run_command(ws: &Workspace, command: &Command, format: Format, expect: Option<bool>) -> Run {
    match execute(ws, command) {
        Ok(outcome) => {
            let code = match expect {
                Some(want) if want != outcome.verdict => EXIT_NEGATIVE,
                Some(_) => EXIT_OK,
                None if outcome.predicate || outcome.verdict => EXIT_OK,
                None => EXIT_NEGATIVE,
            };
            Run {
                code,
                stdout: outcome.report.render(format),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = match e {
                CommandError::Usage(_) => EXIT_USAGE,
                CommandError::Scope(_) => EXIT_SCOPE,
                CommandError::Math(_) => EXIT_NEGATIVE,
            };
            Run::fail(code, e)
        }
    }
}

/// Loads every `.naf` file in `dir` and checks its `[expect]` lines, one report per fixture.
pub fn run_corpus(dir: &Path, format: Format) -> Run {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "naf"))
            .collect(),
        Err(e) => return Run::fail(EXIT_USAGE, format!("{}: {e}", dir.display())),
    };
    files.sort();
    let mut stdout = String::new();
    let mut all_ok = true;
    for f in &files {
        let stem = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let mut report = Report::new("corpus", &stem);
        match load_files(std::slice::from_ref(f)) {
            Err(run) => {
                all_ok = false;
                report.push("load", run.stderr.trim_end());
            }
            Ok(ws) => {
                for e in &ws.expectations {
                    let key = format!("{} {}", e.command, e.item);
                    let got = match Command::for_item(&e.command, &e.item) {
                        None => Err(format!("unknown command `{}`", e.command)),
                        Some(cmd) => execute(&ws, &cmd).map(|o| o.verdict).map_err(|err| err.to_string()),
                    };
                    let line = match got {
                        Ok(v) if v == e.expected => format!("pass ({v})"),
                        Ok(v) => {
                            all_ok = false;
                            format!("FAIL (expected {}, got {v})", e.expected)
                        }
                        Err(msg) => {
                            all_ok = false;
                            format!("FAIL ({msg})")
                        }
                    };
                    report.push(key, line);
                }
            }
        }
        stdout.push_str(&report.render(format));
    }
    Run {
        code: if all_ok { EXIT_OK } else { EXIT_NEGATIVE },
        stdout,
        stderr: String::new(),
    }
}
