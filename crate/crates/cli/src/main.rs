use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pretzel::bracket::{kb_closed, kb_recursive};
use pretzel::census::{render_json, render_text};
use pretzel::planar::DEFAULT_STATE_SUM_LIMIT;
use pretzel::tables::{render_reports_json, render_reports_text};
use pretzel::{
    brute_census, classify, enumerate, jones, jones_span, load_table, span_formula, BigPoly,
    PlanarDiagram, PretzelDiagram,
};

const STATE_SUM_ENV: &str = "PRETZEL_MAX_STATE_SUM";

#[derive(Parser)]
#[command(name = "pretzel", version, about = "Kauffman brackets, Jones spans and span censuses of pretzel diagrams")]
struct Cli {
    /// Worker threads for `enumerate` and `classify` (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kauffman bracket from the closed formula.
    Bracket {
        #[arg(allow_hyphen_values = true, value_parser = parse_diagram)]
        entries: PretzelDiagram,
        /// Cross-check against the recurrence and, within the crossing cap, the state sum.
        #[arg(long)]
        verify: bool,
    },
    /// Span of the Jones polynomial and the case of the span law that applies.
    Span {
        #[arg(allow_hyphen_values = true, value_parser = parse_diagram)]
        entries: PretzelDiagram,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Jones polynomial: in t for knots (V has half-integral powers), in A for links.
    Jones {
        #[arg(allow_hyphen_values = true, value_parser = parse_diagram)]
        entries: PretzelDiagram,
        /// Divide by the unknot value (-A^-2 - A^2).
        #[arg(long)]
        v1: bool,
    },
    /// Reduced canonical form and its parameters.
    Reduce {
        #[arg(allow_hyphen_values = true, value_parser = parse_diagram)]
        entries: PretzelDiagram,
    },
    /// Complete set of reduced diagrams with the given span.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        span: i64,
        /// Knots only.
        #[arg(long)]
        knots: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also rebuild the set from bracket spans and require equality.
        #[arg(long)]
        oracle: bool,
    },
    /// Match a knot table against the censuses of the matching spans.
    Classify {
        #[arg(long)]
        table: PathBuf,
        /// Only knots with this Jones span.
        #[arg(long)]
        span: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Bracket,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_diagram(s: &str) -> Result<PretzelDiagram, String> {
    s.parse().map_err(|e: pretzel::diagram::DiagramError| e.to_string())
}

/// A domain error: printed to stderr, exit code 1.
struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// `A = t^(-1/4)`; exponents of a knot's `V` are even in `A`, so at worst
/// half-integral in `t`, written `t^(k/2)`.
fn render_in_t(poly: &BigPoly) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in poly.terms().iter().rev().enumerate() {
        let text = c.to_string();
        let (negative, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, text.as_str()),
        };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let power = if e % 4 == 0 {
            format!("t^{}", -e / 4)
        } else {
            format!("t^({}/2)", -e / 2)
        };
        match (*e == 0, mag == "1") {
            (true, _) => out.push_str(mag),
            (false, true) => out.push_str(&power),
            (false, false) => out.push_str(&format!("{mag}*{power}")),
        }
    }
    out
}

fn state_sum_limit() -> Result<usize, String> {
    match std::env::var(STATE_SUM_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{STATE_SUM_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_STATE_SUM_LIMIT),
    }
}

fn run(command: Command, limit: usize) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Bracket { entries, verify } => {
            let closed: BigPoly = kb_closed(&entries);
            out.push_str(&format!("{closed}\n"));
            if verify {
                let rec: BigPoly = kb_recursive(&entries);
                if rec != closed {
                    return Err(Failure(format!("recurrence disagrees: {rec}")));
                }
                out.push_str("recursive: agrees\n");
                let planar = PlanarDiagram::build(&entries);
                let c = planar.crossing_count();
                if c > limit {
                    out.push_str(&format!("state sum: skipped ({c} crossings, limit {limit})\n"));
                } else {
                    let sum: BigPoly = planar.state_sum(limit)?;
                    if sum != closed {
                        return Err(Failure(format!("state sum disagrees: {sum}")));
                    }
                    out.push_str("state sum: agrees\n");
                }
            }
        }
        Command::Span { entries, method } => {
            let p = entries.reduce().sort_desc();
            let line = match method {
                Method::Formula => span_formula(&p)?.to_string(),
                Method::Bracket => format!("S={}", jones_span(&p)?),
                Method::Both => {
                    let v = span_formula(&p)?;
                    let b = jones_span(&p)?;
                    if v.span != b {
                        return Err(Failure(format!(
                            "span law and bracket disagree on {p}: {v}, bracket S={b}"
                        )));
                    }
                    v.to_string()
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        Command::Jones { entries, v1 } => {
            let j = jones(&entries)?;
            let v: BigPoly = j.poly;
            let poly = if v1 { v.divide_exact(&BigPoly::delta())? } else { v };
            if j.components == 1 {
                out.push_str(&render_in_t(&poly));
            } else {
                out.push_str(&poly.to_string());
            }
            out.push('\n');
        }
        Command::Reduce { entries } => {
            let r = entries.reduce().canonical();
            out.push_str(&format!("{r}\n{}\n", r.params()));
        }
        Command::Enumerate {
            span,
            knots,
            format,
            oracle,
        } => {
            let census = enumerate(span, knots)?;
            if oracle {
                let brute = brute_census(span, knots)?;
                let a: Vec<_> = census.iter().map(|e| &e.diagram).collect();
                let b: Vec<_> = brute.iter().map(|e| &e.diagram).collect();
                if a != b {
                    let only_a: Vec<String> = a.iter().filter(|d| !b.contains(d)).map(|d| d.to_string()).collect();
                    let only_b: Vec<String> = b.iter().filter(|d| !a.contains(d)).map(|d| d.to_string()).collect();
                    return Err(Failure(format!(
                        "census oracle disagrees at S={span}: span law only {only_a:?}, bracket only {only_b:?}"
                    )));
                }
                eprintln!("oracle: {} diagrams agree", census.len());
            }
            out = match format {
                Format::Text => render_text(&census),
                Format::Json => render_json(&census) + "\n",
            };
        }
        Command::Classify { table, span, format } => {
            let mut records = load_table(&table)?;
            if let Some(s) = span {
                records.retain(|r| r.span_v() == s);
            }
            let reports = classify(&records, |s| enumerate(s, true))?;
            out = match format {
                Format::Text => render_reports_text(&reports),
                Format::Json => render_reports_json(&reports) + "\n",
            };
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limit = match state_sum_limit() {
        Ok(l) => l,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli.command, limit) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
