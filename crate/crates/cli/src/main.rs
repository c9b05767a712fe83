//! Command-line surface for the predimension/closure calculus.
//!
//! Structures come from a file or an inline literal; subspaces and vectors
//! use the comma/semicolon literal syntax. Every run is fully determined by
//! its arguments (plus the optional `PREDIM_GUARDRAIL` default), and output
//! is byte-stable across runs and worker counts.
//!
//! Exit codes: 0 success/pass, 1 semantic failure (a failing verdict,
//! suite, or false predicate), 2 usage or parse errors, 3 guardrail
//! exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use predim::closure;
use predim::enumerate::Guardrail;
use predim::free;
use predim::propcheck::{run_suite, CatalogConfig, LemmaId, ALL_LEMMAS};
use predim::structure::{BilinearStructure, FewRelationsVerdict, ScaledDelta};
use predim::subspace::Subspace;
use predim::vector::FpVector;
use predim::wedge::Bivector;
use predim::Error;

#[derive(Parser)]
#[command(name = "predim", version, about = "Predimension and closure calculus for alternating bilinear maps over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output form: human text or versioned key-value lines.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,

    /// Enumeration guardrail (maximum items). Defaults to 1000000 or the
    /// PREDIM_GUARDRAIL environment variable.
    #[arg(long, global = true)]
    guardrail: Option<u64>,

    /// Acknowledge that raising the guardrail above its default may lead
    /// to very long runtimes.
    #[arg(long, global = true)]
    allow_expensive: bool,

    /// Report measured wall times instead of 0 in suite lines.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Machine,
}

#[derive(Args)]
struct StructureSource {
    /// Structure file path.
    #[arg(long, conflicts_with = "inline")]
    structure: Option<PathBuf>,

    /// Inline structure literal; `;` separates lines, e.g.
    /// "p 2;dim 3;k 1;rel 1 0 0".
    #[arg(long)]
    inline: Option<String>,

    /// Override the few-relations constant of the structure.
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Scaled predimension k·dim(H) - dim(N(H)) of a subspace.
    Delta {
        #[command(flatten)]
        src: StructureSource,
        /// Subspace literal, e.g. "1,0,0;0,1,0" (or "zero").
        #[arg(long)]
        subspace: String,
    },
    /// The relation subspace N(H) = N ∩ Λ²H.
    Nof {
        #[command(flatten)]
        src: StructureSource,
        #[arg(long)]
        subspace: String,
    },
    /// The value β(u, v) as a canonical representative modulo the relations.
    Beta {
        #[command(flatten)]
        src: StructureSource,
        /// Vector literal, e.g. "1,0,0".
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Check dim N(H) ≤ k·dim(H) over every subspace of the ambient.
    FewRelations {
        #[command(flatten)]
        src: StructureSource,
    },
    /// Whether no superspace has a smaller predimension.
    Selfsufficient {
        #[command(flatten)]
        src: StructureSource,
        #[arg(long)]
        subspace: String,
    },
    /// The selfsufficient closure of a subspace.
    Css {
        #[command(flatten)]
        src: StructureSource,
        #[arg(long)]
        subspace: String,
    },
    /// d_k of a vector set: the predimension of the closure of its span.
    Dk {
        #[command(flatten)]
        src: StructureSource,
        /// Semicolon-separated vector literals; empty for the empty set.
        #[arg(long, default_value = "")]
        vectors: String,
    },
    /// Whether adjoining A to B leaves d_k unchanged.
    InClosure {
        #[command(flatten)]
        src: StructureSource,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The closure set of a subspace with its subspace verdict.
    Closure {
        #[command(flatten)]
        src: StructureSource,
        #[arg(long)]
        subspace: String,
    },
    /// Relative predimension δ_k(K/H) for selfsufficient H.
    DeltaRel {
        #[command(flatten)]
        src: StructureSource,
        /// The subspace K.
        #[arg(long)]
        subspace: String,
        /// The selfsufficient base H.
        #[arg(long)]
        over: String,
    },
    /// All minimal extensions of a selfsufficient subspace.
    MinimalExtensions {
        #[command(flatten)]
        src: StructureSource,
        #[arg(long)]
        subspace: String,
    },
    /// The full closure chain report of a selfsufficient subspace.
    Chain {
        #[command(flatten)]
        src: StructureSource,
        #[arg(long)]
        subspace: String,
    },
    /// Rank of a bivector's alternating matrix.
    BivectorRank {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Bivector literal of length n(n-1)/2 in wedge-basis order.
        #[arg(long)]
        bivector: String,
    },
    /// Rank-separated orbit witnesses in the free structure.
    FreeOrbits {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        p: u64,
    },
    /// Check that w_m avoids Λ²E for all E with dim E < m.
    Lemma41 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run one named law suite, or all of them.
    Verify {
        /// A lemma id (L3.1, L3.2, L3.3, L4.1, L5.1, L5.2, T6.1-chain,
        /// DREL, CSS-oracle) or "all".
        lemma: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads for catalog suites; results are identical for
        /// every worker count.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Parse a structure and print its canonical serialization.
    Fmt {
        #[command(flatten)]
        src: StructureSource,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GuardrailExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn guardrail(cli: &Cli) -> Result<Guardrail, Error> {
    let default = std::env::var("PREDIM_GUARDRAIL")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(Guardrail::DEFAULT_LIMIT);
    match cli.guardrail {
        None => Ok(Guardrail::new(default)),
        Some(limit) if limit <= default || cli.allow_expensive => Ok(Guardrail::new(limit)),
        Some(limit) => Err(Error::Parse(format!(
            "--guardrail {limit} exceeds the default {default}; pass --allow-expensive to confirm"
        ))),
    }
}

impl StructureSource {
    fn load(&self) -> Result<BilinearStructure, Error> {
        let text = match (&self.structure, &self.inline) {
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
            (None, Some(inline)) => inline.replace(';', "\n"),
            _ => {
                return Err(Error::Parse(
                    "exactly one of --structure or --inline is required".into(),
                ))
            }
        };
        let s = BilinearStructure::parse(&text)?;
        match self.k {
            Some(k) => s.with_k(k),
            None => Ok(s),
        }
    }
}

/// Collects the output of one command in both renderings.
struct Report {
    command: &'static str,
    text: String,
    machine: String,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            text: String::new(),
            machine: String::new(),
        }
    }

    fn line(&mut self, text: impl AsRef<str>, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{}", text.as_ref());
        let _ = writeln!(self.machine, "{key} {value}");
    }

    fn text_line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.text, "{}", text.as_ref());
    }

    fn machine_line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.machine, "{key} {value}");
    }

    fn print(self, mode: OutputMode) {
        match mode {
            OutputMode::Text => print!("{}", self.text),
            OutputMode::Machine => {
                println!("format 1");
                println!("command {}", self.command);
                print!("{}", self.machine);
            }
        }
    }
}

fn delta_lines(report: &mut Report, label: &str, key: &str, d: ScaledDelta) {
    report.text_line(format!(
        "{label}: {} (scaled), {} (rational, k={})",
        d.value(),
        d.rational(),
        d.k()
    ));
    report.machine_line(&format!("{key}_scaled"), d.value());
    report.machine_line("k", d.k());
    report.machine_line(&format!("{key}_rational"), d.rational());
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let guard = guardrail(cli)?;
    match &cli.command {
        Command::Delta { src, subspace } => {
            let s = src.load()?;
            let h = Subspace::parse(subspace, s.p(), s.n())?;
            let d = s.delta(&h)?;
            let mut r = Report::new("delta");
            delta_lines(&mut r, "delta", "delta", d);
            r.print(cli.output);
            Ok(0)
        }
        Command::Nof { src, subspace } => {
            let s = src.load()?;
            let h = Subspace::parse(subspace, s.p(), s.n())?;
            let n_h = s.n_of(&h)?;
            let mut r = Report::new("nof");
            r.line(format!("N(H): {n_h}"), "nof", &n_h);
            r.line(format!("dim: {}", n_h.dim()), "nof_dim", n_h.dim());
            r.print(cli.output);
            Ok(0)
        }
        Command::Beta { src, u, v } => {
            let s = src.load()?;
            let u = FpVector::parse(u, s.p(), s.n())?;
            let v = FpVector::parse(v, s.p(), s.n())?;
            let b = s.beta_map(&u, &v)?;
            let mut r = Report::new("beta");
            r.line(format!("beta: {b}"), "beta", &b);
            r.print(cli.output);
            Ok(0)
        }
        Command::FewRelations { src } => {
            let s = src.load()?;
            let verdict = s.check_few_relations(&guard)?;
            let mut r = Report::new("few-relations");
            let code = match &verdict {
                FewRelationsVerdict::Holds { subspaces_checked } => {
                    r.line(
                        format!("holds (checked {subspaces_checked} subspaces)"),
                        "verdict",
                        "holds",
                    );
                    r.line(
                        format!("checked: {subspaces_checked}"),
                        "checked",
                        subspaces_checked,
                    );
                    0
                }
                FewRelationsVerdict::Fails {
                    witness,
                    relation_dim,
                } => {
                    r.line(
                        format!(
                            "fails: witness {witness} has dim N(H) = {relation_dim} > {}",
                            s.k() * witness.dim() as u64
                        ),
                        "verdict",
                        "fails",
                    );
                    r.line(format!("witness: {witness}"), "witness", witness);
                    r.line(
                        format!("witness dim: {}", witness.dim()),
                        "witness_dim",
                        witness.dim(),
                    );
                    r.line(
                        format!("dim N(witness): {relation_dim}"),
                        "relation_dim",
                        relation_dim,
                    );
                    1
                }
            };
            r.print(cli.output);
            Ok(code)
        }
        Command::Selfsufficient { src, subspace } => {
            let s = src.load()?;
            let h = Subspace::parse(subspace, s.p(), s.n())?;
            let verdict = closure::is_selfsufficient(&s, &h, &guard)?;
            let mut r = Report::new("selfsufficient");
            r.line(format!("{verdict}"), "selfsufficient", verdict);
            r.print(cli.output);
            Ok(if verdict { 0 } else { 1 })
        }
        Command::Css { src, subspace } => {
            let s = src.load()?;
            let h = Subspace::parse(subspace, s.p(), s.n())?;
            let c = closure::css(&s, &h, &guard)?;
            let d = s.delta(&c)?;
            let mut r = Report::new("css");
            r.line(format!("css: {c}"), "css", &c);
            r.line(format!("dim: {}", c.dim()), "css_dim", c.dim());
            delta_lines(&mut r, "delta", "delta", d);
            r.print(cli.output);
            Ok(0)
        }
        Command::Dk { src, vectors } => {
            let s = src.load()?;
            let vecs = parse_vector_list(vectors, s.p(), s.n())?;
            let d = closure::dk(&s, &vecs, &guard)?;
            let mut r = Report::new("dk");
            delta_lines(&mut r, "d_k", "dk", d);
            r.print(cli.output);
            Ok(0)
        }
        Command::InClosure { src, a, b } => {
            let s = src.load()?;
            let a = parse_vector_list(a, s.p(), s.n())?;
            let b = parse_vector_list(b, s.p(), s.n())?;
            let verdict = closure::in_closure(&s, &a, &b, &guard)?;
            let mut r = Report::new("in-closure");
            r.line(format!("{verdict}"), "in_closure", verdict);
            r.print(cli.output);
            Ok(if verdict { 0 } else { 1 })
        }
        Command::Closure { src, subspace } => {
            let s = src.load()?;
            let h = Subspace::parse(subspace, s.p(), s.n())?;
            let c = closure::closure_set(&s, &h, &guard)?;
            let mut r = Report::new("closure");
            r.line(
                format!("closure size: {}", c.size()),
                "closure_size",
                c.size(),
            );
            r.line(
                format!("is subspace: {}", c.is_subspace()),
                "closure_is_subspace",
                c.is_subspace(),
            );
            if let Some(sub) = &c.subspace {
                r.line(format!("subspace: {sub}"), "closure_subspace", sub);
            }
            for m in &c.members {
                r.line(format!("  member: {m}"), "member", m);
            }
            r.print(cli.output);
            Ok(0)
        }
        Command::DeltaRel {
            src,
            subspace,
            over,
        } => {
            let s = src.load()?;
            let k_sub = Subspace::parse(subspace, s.p(), s.n())?;
            let h = Subspace::parse(over, s.p(), s.n())?;
            let d = closure::delta_rel(&s, &k_sub, &h, &guard)?;
            let mut r = Report::new("delta-rel");
            delta_lines(&mut r, "delta_rel", "delta_rel", d);
            r.print(cli.output);
            Ok(0)
        }
        Command::MinimalExtensions { src, subspace } => {
            let s = src.load()?;
            let h = Subspace::parse(subspace, s.p(), s.n())?;
            let exts = closure::minimal_extensions(&s, &h, &guard)?;
            let mut r = Report::new("minimal-extensions");
            r.line(format!("count: {}", exts.len()), "count", exts.len());
            for (i, e) in exts.iter().enumerate() {
                r.line(format!("  extension: {e}"), &format!("extension_{i}"), e);
            }
            r.print(cli.output);
            Ok(0)
        }
        Command::Chain { src, subspace } => {
            let s = src.load()?;
            let h = Subspace::parse(subspace, s.p(), s.n())?;
            let report = closure::closure_chain(&s, &h, &guard)?;
            match cli.output {
                OutputMode::Text => print!("{}", report.render_text()),
                OutputMode::Machine => {
                    println!("format 1");
                    println!("command chain");
                    print!("{}", report.render_machine());
                }
            }
            Ok(0)
        }
        Command::BivectorRank { p, n, bivector } => {
            let w = Bivector::parse(bivector, *p, *n)?;
            let rank = w.rank();
            let mut r = Report::new("bivector-rank");
            r.line(format!("{rank}"), "rank", rank);
            r.print(cli.output);
            Ok(0)
        }
        Command::FreeOrbits { count, p } => {
            let witnesses = free::orbit_separation_witnesses(*count, *p, &guard)?;
            let mut r = Report::new("free-orbits");
            r.line(format!("count: {count}"), "count", count);
            for (i, w) in witnesses.iter().enumerate() {
                r.text_line(format!(
                    "w_{}: rank {} (g index {})",
                    w.m,
                    w.rank,
                    w.g_index.unwrap_or(i)
                ));
                r.machine_line(&format!("witness_{i}_m"), w.m);
                r.machine_line(&format!("witness_{i}_rank"), w.rank);
            }
            let mut ranks: Vec<usize> = witnesses.iter().map(|w| w.rank).collect();
            let distinct = {
                ranks.dedup();
                ranks.len() == witnesses.len()
            };
            r.line(
                format!(
                    "ranks are pairwise distinct: {distinct}; since the rank is invariant under \
                     any change of ambient basis, these {count} uniformly built elements lie in \
                     {count} distinct orbits"
                ),
                "distinct_ranks",
                distinct,
            );
            r.print(cli.output);
            Ok(if distinct { 0 } else { 1 })
        }
        Command::Lemma41 { m, p, seed } => {
            let report = free::verify_lemma_4_1(*m, *p, *seed, &guard)?;
            let mut r = Report::new("lemma41");
            r.line(
                format!(
                    "mode: {}",
                    if report.exhaustive { "exhaustive" } else { "sampled" }
                ),
                "mode",
                if report.exhaustive { "exhaustive" } else { "sampled" },
            );
            r.line(
                format!("bound holds (no membership below dim {m}): {}", report.bound_holds),
                "bound_holds",
                report.bound_holds,
            );
            r.line(
                format!("observed membership threshold: {}", report.sharp_threshold),
                "sharp_threshold",
                report.sharp_threshold,
            );
            r.line(
                format!("subspaces checked: {}", report.subspaces_checked),
                "subspaces_checked",
                report.subspaces_checked,
            );
            r.print(cli.output);
            Ok(if report.bound_holds { 0 } else { 1 })
        }
        Command::Verify {
            lemma,
            seed,
            workers,
        } => {
            let ids: Vec<LemmaId> = if lemma == "all" {
                ALL_LEMMAS.to_vec()
            } else {
                vec![lemma.parse()?]
            };
            if cli.output == OutputMode::Machine {
                println!("format 1");
                println!("command verify");
            }
            let mut all_pass = true;
            for id in ids {
                let cfg = CatalogConfig {
                    seed: *seed,
                    guardrail: guard,
                    ..CatalogConfig::acceptance_default(id)
                };
                let result = run_suite(id, &cfg, *workers)?;
                all_pass &= result.pass;
                match cli.output {
                    OutputMode::Text => print!("{}", result.render_text(cli.timings)),
                    OutputMode::Machine => println!("{}", result.machine_line(cli.timings)),
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Fmt { src } => {
            let s = src.load()?;
            print!("{}", s.serialize());
            Ok(0)
        }
    }
}

fn parse_vector_list(text: &str, p: u64, n: usize) -> Result<Vec<FpVector>, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|part| FpVector::parse(part, p, n))
        .collect()
}
