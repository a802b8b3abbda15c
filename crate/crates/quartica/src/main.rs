use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quartica::atlas::atlas;
use quartica::plot::{plot_svg, Chart};
use quartica::reproduce::{reproduce, Group};
use quartica_dsl::{parse_field_spec, run_source, Evaluator};

#[derive(Parser)]
#[command(name = "quartica", version, about = "Exact verification of plane quartic configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive every explicit claim from the verified atlas.
    Reproduce {
        /// 2, 3, 4, 5 (or fermat-lines, kk-lines, sextactic, conics), comma-separated, or all.
        #[arg(long, default_value = "all")]
        section: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for independent checks.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Evaluate one expression in a field.
    Eval {
        expr: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Draw the real points of atlas entries as SVG.
    Plot {
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long, default_value = "z=1")]
        chart: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// List atlas entries, or print one.
    Atlas { id: Option<String> },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("quartica: {msg}");
    ExitCode::from(1)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn code(n: i32) -> ExitCode {
    ExitCode::from(n as u8)
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, String> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().map_err(|e| e.to_string())?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R: Send>(_jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, String> {
    Ok(f())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { file, report, out } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", file.display())),
            };
            let result = match run_source(&text) {
                Ok(r) => r,
                Err(e) => return fail(format!("{}:{e}", file.display())),
            };
            let body = match report {
                Format::Json => result.to_json() + "\n",
                Format::Text => result.to_text(),
            };
            if let Err(e) = emit(&body, out.as_ref()) {
                return fail(e);
            }
            code(result.exit_code())
        }
        Command::Reproduce { section, out, jobs } => {
            let groups = match Group::parse_selection(&section) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let report = match with_jobs(jobs, || reproduce(&groups)) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let json = report.to_json() + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = emit(&json, Some(&path)) {
                        return fail(e);
                    }
                    print!("{}", report.to_text());
                }
                None => print!("{json}"),
            }
            code(report.exit_code())
        }
        Command::Eval { expr, field } => {
            let tower = match parse_field_spec(&field) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            match Evaluator::with_tower(tower).eval_str(&expr) {
                Ok(v) => {
                    println!("{v}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Plot { ids, chart, out } => {
            let chart = match Chart::parse(&chart) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
            match plot_svg(&ids, chart) {
                Ok(p) => match emit(&p.svg, Some(&out)) {
                    Ok(()) => {
                        let s = p.summary;
                        println!(
                            "{}: {} real lines, {} real points of non-real lines, {} points, {} curves",
                            out.display(),
                            s.real_lines,
                            s.line_points,
                            s.points,
                            s.curves
                        );
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(e),
                },
                Err(e) => fail(e),
            }
        }
        Command::Atlas { id } => {
            let atlas = match atlas() {
                Ok(a) => a,
                Err(e) => return fail(e),
            };
            match id {
                None => {
                    for e in atlas.entries() {
                        println!("{:<28} {:<12} {}", e.id, serde_json::to_value(e.kind).unwrap_or_default().as_str().unwrap_or_default(), e.description);
                    }
                    ExitCode::SUCCESS
                }
                Some(id) => match atlas.get(&id) {
                    Ok(e) => {
                        println!("{}: {}", e.id, e.description);
                        for line in e.render() {
                            println!("  {line}");
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(e),
                },
            }
        }
    }
}
