//! Command-line front end. Exit codes: 0 success, 1 parse error,
//! 2 precondition violation, 3 theorem/oracle mismatch or internal
//! consistency failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use skewlab::central::Trilean;
use skewlab::error::Error;
use skewlab::parse::{self, RingSpec};
use skewlab::report::{self, AnalysisReport};
use skewlab::sweep;
use skewlab::Context;

#[derive(Parser)]
#[command(
    name = "skewlab",
    version,
    about = "Skew polynomial eigenrings and A-polynomials"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one polynomial: hhat, eigenring, A-polynomial classification.
    Analyze {
        /// Ring spec: inline JSON (starts with '{') or a path to a JSON file.
        #[arg(long)]
        ring: String,
        /// Polynomial text, lowest degree first, e.g. "[1, 0, 1]".
        #[arg(long)]
        poly: String,
        /// Human-readable rendering instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Build prod(t - Omega_{c_i}(b)) and analyze it.
    Construct {
        #[arg(long)]
        ring: String,
        /// Element text for b.
        #[arg(long)]
        b: String,
        /// Comma-separated element texts c_1,...,c_m (last must be 1).
        #[arg(long)]
        cs: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Exhaustive (twisted) or corpus-driven (differential) verification sweep.
    Sweep {
        #[arg(long)]
        ring: String,
        /// Largest degree to include.
        #[arg(long)]
        max_degree: usize,
        /// Corpus file with one polynomial text per line ('#' comments).
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Worker threads for the sweep.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        pretty: bool,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::InvalidRingSpec(_) => 1,
        Error::Internal(_) => 3,
        _ => 2,
    }
}

fn load_ring(arg: &str) -> Result<(Context, RingSpec), Error> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("cannot read ring spec file {arg:?}: {e}"),
        })?
    };
    parse::parse_ring_spec(&text)
}

fn print_report(rep: &AnalysisReport, pretty: bool) {
    if pretty {
        println!(
            "ring:              {}",
            serde_json::to_string(&rep.ring).unwrap()
        );
        println!("f:                 {}", rep.f);
        println!("m:                 {}", rep.m);
        println!("constant term != 0: {}", rep.constant_term_nonzero);
        println!("hhat:              [{}]", rep.hhat.join(", "));
        println!("hhat square-free:  {}", rep.hhat_squarefree);
        println!("hhat irreducible:  {:?}", rep.hhat_irreducible);
        println!(
            "eigenring:         dim {}, center dim {}, simple {:?} ({:?})",
            rep.eigenring.dim,
            rep.eigenring.center_dim,
            rep.eigenring.simple,
            rep.eigenring.provenance
        );
        println!(
            "is_apoly:          {:?} via {:?}",
            rep.apoly.is_apoly, rep.apoly.route
        );
        if let Some(w) = &rep.apoly.witnesses {
            if let Some(a) = &w.a {
                println!("witnesses:         a = {a}");
            }
            if let (Some(b), Some(cs)) = (&w.b, &w.cs) {
                println!("witnesses:         b = {b}, cs = [{}]", cs.join(", "));
            }
        }
        if let Some(fac) = &rep.apoly.factorization {
            println!("factorization:     {}", fac.join(" * "));
        }
        if let Some(note) = &rep.apoly.note {
            println!("note:              {note}");
        }
        println!("timings (ms):      total {:.3}", rep.timings_ms.total_ms);
    } else {
        println!("{}", serde_json::to_string_pretty(rep).unwrap());
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze { ring, poly, pretty } => {
            let (ctx, spec) = load_ring(&ring)?;
            let f = parse::parse_poly(&ctx, &poly)?;
            let rep = report::analyze(&ctx, spec, &f)?;
            print_report(&rep, pretty);
            Ok(0)
        }
        Cmd::Construct {
            ring,
            b,
            cs,
            pretty,
        } => {
            let (ctx, spec) = load_ring(&ring)?;
            let (text, rep) = report::construct_and_analyze(&ctx, spec, &b, &cs)?;
            if pretty {
                println!("constructed:       {text}");
                print_report(&rep, true);
            } else {
                let out = serde_json::json!({ "poly": text, "report": rep });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            }
            if rep.apoly.is_apoly != Trilean::Yes {
                eprintln!(
                    "error: constructed polynomial is not an A-polynomial \
                     (route {:?}); the witnesses violate the classification hypotheses",
                    rep.apoly.route
                );
                return Ok(2);
            }
            Ok(0)
        }
        Cmd::Sweep {
            ring,
            max_degree,
            corpus,
            jobs,
            pretty,
        } => {
            let (ctx, _spec) = load_ring(&ring)?;
            let (instances, mode) = match (&corpus, ctx.is_twisted()) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                        pos: 0,
                        msg: format!("cannot read corpus {path:?}: {e}"),
                    })?;
                    let mut polys = vec![];
                    for line in text.lines() {
                        let line = line.trim();
                        if line.is_empty() || line.starts_with('#') {
                            continue;
                        }
                        let f = parse::parse_poly(&ctx, line)?;
                        if f.degree()
                            .map(|d| d >= 1 && d <= max_degree)
                            .unwrap_or(false)
                        {
                            polys.push(f);
                        }
                    }
                    (polys, "corpus")
                }
                (None, true) => (
                    sweep::twisted_instances(&ctx, max_degree)?,
                    "twisted-exhaustive",
                ),
                (None, false) => {
                    return Err(Error::Precondition(
                        "differential sweeps need --corpus; the coefficient field is infinite"
                            .into(),
                    ))
                }
            };
            let rep = sweep::run(&instances, jobs.max(1), mode)?;
            if pretty {
                let s = &rep.summary;
                println!("mode:                 {}", s.mode);
                println!("instances:            {}", s.instances);
                for dc in &s.by_degree {
                    println!("  degree {}: {}", dc.degree, dc.count);
                }
                println!("apoly yes:            {}", s.apoly_yes);
                println!("apoly no:             {}", s.apoly_no);
                println!("skipped (not sq-free): {}", s.skipped_not_squarefree);
                println!("mismatches:           {}", s.mismatches);
                println!("elapsed:              {:.1} ms", s.elapsed_ms);
            } else {
                println!("{}", serde_json::to_string_pretty(&rep.summary).unwrap());
            }
            if rep.summary.mismatches > 0 {
                eprintln!("error: theorem/oracle mismatches detected");
                return Ok(3);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
