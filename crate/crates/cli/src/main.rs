use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use layconf::analysis::{check_realizability, find_diagram, Realizability};
use layconf::congruence::congruent;
use layconf::cyclic::{canonical_cyclic_unifier, verify_cyclic_unifier};
use layconf::layering::{check_dlo, check_rank_nonincreasing, is_overlay, Ranker};
use layconf::parse::parse_equations;
use layconf::report::{render, Format};
use layconf::subrewrite::{sub_rewrite, sub_rewrite_all};
use layconf::unify::{derivation, solve, UnifProblem};
use layconf::{analyze, cyclic_critical_pairs, parse_term_for, parse_term_with_vars, parse_trs, AnalysisConfig, IndexedTrs, Position};

/// Exit code for input and usage errors.
const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "layconf", version, about = "Confluence analysis for layered term rewriting systems")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// Maximal equalization derivation length.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    eq_depth: u64,
    /// Maximal derivation length per diagram side.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    diagram_depth: u64,
    /// Rewrite depth used to build realizer candidates.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    realizer_depth: u64,
    /// Maximal number of terms explored by one search.
    #[arg(long, default_value_t = 50_000, value_parser = clap::value_parser!(u64).range(1..))]
    node_bound: u64,
    /// Skip the rank check and assume it holds. Flagged in every report.
    #[arg(long)]
    assume_rank_nonincreasing: bool,
}

impl Bounds {
    fn config(&self) -> AnalysisConfig {
        AnalysisConfig {
            eq_depth: self.eq_depth as usize,
            diagram_depth: self.diagram_depth as usize,
            realizer_depth: self.realizer_depth as usize,
            node_bound: self.node_bound as usize,
            assume_rank_nonincreasing: self.assume_rank_nonincreasing,
            ..AnalysisConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print the verdict.
    Check {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check that left-hand sides overlap only at disjoint or equal positions.
    Layered { file: PathBuf },
    /// Rank of a term.
    Rank { file: PathBuf, term: String },
    /// Sufficient check for rank non-increase.
    Rankcheck { file: PathBuf },
    /// Unify two terms over rational trees.
    Unify {
        t1: String,
        t2: String,
        /// Comma-separated variable names.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Decide congruence of two terms modulo ground equations (variables as constants).
    Congruent {
        u: String,
        v: String,
        /// File with one `lhs = rhs` equation per line.
        #[arg(long)]
        eqs: PathBuf,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// List cyclic critical pairs with solved forms and unifiers.
    Ccp { file: PathBuf },
    /// Search a decreasing diagram for one pair.
    Diagram {
        file: PathBuf,
        /// 1-based pair number as listed by `ccp`.
        #[arg(long)]
        pair: usize,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// List sub-rewriting steps of a term.
    Subrewrite {
        file: PathBuf,
        term: String,
        /// Restrict to one position, e.g. `1.2`.
        #[arg(long)]
        pos: Option<String>,
        /// Maximal equalization derivation length.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Run `check` on every .trs file of a directory.
    Corpus {
        dir: PathBuf,
        /// Analyze this many files in parallel.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        bounds: Bounds,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            if e.use_stderr() {
                eprintln!("\n{}", Cli::command().render_help());
            }
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn load(path: &Path) -> Result<IndexedTrs> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_trs(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn json_out(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(String, u8)> {
    let fmt = cli.format;
    match cli.command {
        Command::Check { file, bounds } => {
            let trs = load(&file)?;
            let a = analyze(&trs, &bounds.config());
            Ok((render(&trs, &a, fmt), a.verdict.exit_code() as u8))
        }
        Command::Layered { file } => {
            let trs = load(&file)?;
            let rep = check_dlo(&trs);
            let overlay = is_overlay(&trs);
            let out = match fmt {
                Format::Json => json_out(json!({"layered": rep.layered, "overlay": overlay, "violations": rep.violations})),
                Format::Text => {
                    let mut s = format!(
                        "layered: {}\noverlay: {}\n",
                        if rep.layered { "yes" } else { "no" },
                        if overlay { "yes" } else { "no" }
                    );
                    for v in &rep.violations {
                        s += &format!("violation: {v}\n");
                    }
                    s
                }
            };
            Ok((out, 0))
        }
        Command::Rank { file, term } => {
            let trs = load(&file)?;
            let t = parse_term_for(&term, &trs).map_err(|e| anyhow!("term: {e}"))?;
            let mut rk = Ranker::new(&trs)?;
            let r = rk.rank(&t);
            let out = match fmt {
                Format::Json => json_out(json!({"term": t.to_string(), "rank": r})),
                Format::Text => format!("{r}\n"),
            };
            Ok((out, 0))
        }
        Command::Rankcheck { file } => {
            let trs = load(&file)?;
            let rc = check_rank_nonincreasing(&trs);
            let out = match fmt {
                Format::Json => json_out(serde_json::to_value(&rc)?),
                Format::Text => {
                    let mut s = format!("rank non-increase check: {}\n", if rc.ok { "passed" } else { "failed" });
                    for v in &rc.violations {
                        s += &format!("{v}\n");
                    }
                    s
                }
            };
            Ok((out, if rc.ok { 0 } else { 2 }))
        }
        Command::Unify { t1, t2, vars } => {
            let vs: Vec<&str> = vars.iter().map(String::as_str).collect();
            let s = parse_term_with_vars(&t1, &vs).map_err(|e| anyhow!("first term: {e}"))?;
            let t = parse_term_with_vars(&t2, &vs).map_err(|e| anyhow!("second term: {e}"))?;
            let p = UnifProblem::single(s, t);
            let steps = derivation(&p);
            let sf = solve(&p);
            let out = match (fmt, &sf) {
                (Format::Json, _) => {
                    let cu = sf.as_ref().map(canonical_cyclic_unifier);
                    json_out(json!({
                        "problem": p.to_string(),
                        "steps": steps.iter().map(|s| json!({"rule": format!("{:?}", s.rule), "result": s.result.to_string()})).collect::<Vec<_>>(),
                        "classification": match &sf { None => "fail", Some(f) if f.is_tree() => "tree", Some(_) => "omega" },
                        "solved_form": sf,
                        "unifier": cu,
                    }))
                }
                (Format::Text, None) => {
                    let mut o = format!("problem: {p}\n");
                    for st in &steps {
                        o += &format!("  {:?} ⇒ {}\n", st.rule, st.result);
                    }
                    o + "classification: fail (⊥)\n"
                }
                (Format::Text, Some(f)) => {
                    let cu = canonical_cyclic_unifier(f);
                    let ok = verify_cyclic_unifier(&cu, &p).ok();
                    let mut o = format!("problem: {p}\n");
                    for st in &steps {
                        o += &format!("  {:?} ⇒ {}\n", st.rule, st.result);
                    }
                    o += &format!(
                        "classification: {}\nsolved form: {f}\nparameters: {{{}}}\ncanonical cyclic unifier: {cu}\nverified: {ok}\n",
                        if f.is_tree() { "tree" } else { "omega" },
                        f.parameters.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
                    );
                    o
                }
            };
            Ok((out, 0))
        }
        Command::Congruent { u, v, eqs, vars } => {
            let vs: Vec<&str> = vars.iter().map(String::as_str).collect();
            let text = std::fs::read_to_string(&eqs).with_context(|| format!("cannot read {}", eqs.display()))?;
            let e = parse_equations(&text, &vs).map_err(|e| anyhow!("{}: {e}", eqs.display()))?;
            let a = parse_term_with_vars(&u, &vs).map_err(|e| anyhow!("first term: {e}"))?;
            let b = parse_term_with_vars(&v, &vs).map_err(|e| anyhow!("second term: {e}"))?;
            let c = congruent(&a, &b, &e);
            let out = match fmt {
                Format::Json => json_out(json!({"congruent": c})),
                Format::Text => format!("{c}\n"),
            };
            Ok((out, if c { 0 } else { 1 }))
        }
        Command::Ccp { file } => {
            let trs = load(&file)?;
            let peaks = cyclic_critical_pairs(&trs);
            let out = match fmt {
                Format::Json => json_out(serde_json::to_value(&peaks)?),
                Format::Text => {
                    let mut o = format!("cyclic critical pairs: {}\n", peaks.len());
                    for p in &peaks {
                        o += &format!(
                            "#{} rules {}/{} at {}: {} ⟵ {} ⟶ {}\n  solved form: {}\n  unifier: {}\n  context has variables: {}\n",
                            p.number,
                            p.outer_rule + 1,
                            p.inner_rule + 1,
                            p.position,
                            p.left,
                            p.top,
                            p.right,
                            p.solved,
                            p.unifier,
                            p.context_has_vars
                        );
                    }
                    o
                }
            };
            Ok((out, 0))
        }
        Command::Diagram { file, pair, bounds } => {
            let trs = load(&file)?;
            let cfg = bounds.config();
            let peaks = cyclic_critical_pairs(&trs);
            let peak = peaks
                .iter()
                .find(|p| p.number == pair)
                .ok_or(layconf::AnalysisError::NoSuchPair(pair))?;
            let layered = check_dlo(&trs).layered;
            let mut rk = Ranker::assume_layered(&trs);
            let d = find_diagram(peak, &trs, &mut rk, &cfg);
            let real = check_realizability(peak, &trs, &cfg);
            let found = d.is_ok();
            let out = match fmt {
                Format::Json => json_out(json!({
                    "peak": peak,
                    "layered": layered,
                    "diagram": d.as_ref().ok(),
                    "failure": d.as_ref().err(),
                    "realizability": real,
                })),
                Format::Text => {
                    let mut o = format!("{peak}\n");
                    if !layered {
                        o += "warning: system is not layered, labels are not meaningful\n";
                    }
                    match &d {
                        Ok(e) => {
                            o += &format!(
                                "diagram: {} →* {} =cc {} ⟵* {}\nI = {:?}\nJ = {:?}\n",
                                peak.left, e.s, e.t, peak.right, e.left_indexes, e.right_indexes
                            );
                            for (side, steps) in [("left", &e.left_steps), ("right", &e.right_steps)] {
                                for s in steps {
                                    o += &format!(
                                        "  {side} ⟨{},{}⟩ {} → {} at {}\n",
                                        s.label.0, s.label.1, s.step.source, s.step.result, s.step.position
                                    );
                                }
                            }
                        }
                        Err(f) => {
                            o += &format!(
                                "no decreasing diagram: explored {} left and {} right states ({})\n",
                                f.explored_left,
                                f.explored_right,
                                if f.complete { "exhausted" } else { "bound reached" }
                            );
                        }
                    }
                    o += &match &real {
                        Realizability::Realizable { gamma, .. } => format!("realizable: γ = {gamma}\n"),
                        Realizability::Unrealizable { inert, cycle } => format!(
                            "unrealizable: cycle {} through inert symbols {{{}}}\n",
                            cycle.join(" → "),
                            inert.join(", ")
                        ),
                        Realizability::Unknown { reason } => format!("realizability unknown: {reason}\n"),
                    };
                    o
                }
            };
            Ok((out, if found { 0 } else { 2 }))
        }
        Command::Subrewrite { file, term, pos, depth } => {
            let trs = load(&file)?;
            let t = parse_term_for(&term, &trs).map_err(|e| anyhow!("term: {e}"))?;
            let mut rk = Ranker::new(&trs).ok();
            let nodes = AnalysisConfig::default().node_bound;
            let steps = match pos {
                Some(p) => {
                    let p: Position = p.parse().map_err(|e| anyhow!("--pos: {e}"))?;
                    if t.subterm_at(&p).is_err() {
                        bail!("--pos: {p} is not a position of {t}");
                    }
                    (0..trs.len())
                        .flat_map(|k| sub_rewrite(&t, &trs, k, &p, depth, nodes, rk.as_mut()))
                        .collect()
                }
                None => sub_rewrite_all(&t, &trs, depth, nodes, rk.as_mut()),
            };
            let out = match fmt {
                Format::Json => json_out(serde_json::to_value(&steps)?),
                Format::Text => {
                    let mut o = format!("sub-rewriting steps of {t}: {}\n", steps.len());
                    for s in &steps {
                        let label = s
                            .label
                            .map(|(r, k)| format!("⟨{r},{k}⟩"))
                            .unwrap_or_else(|| "unlabelled".into());
                        o += &format!(
                            "{} rule {} at {}: {} → {} ({} equalization steps, redex {})\n",
                            label,
                            s.rule + 1,
                            s.position,
                            s.source,
                            s.result,
                            s.equalization.len(),
                            s.redex
                        );
                    }
                    o
                }
            };
            Ok((out, 0))
        }
        Command::Corpus { dir, jobs, bounds } => corpus(&dir, jobs, &bounds.config(), fmt),
    }
}

struct Row {
    file: String,
    verdict: String,
    pairs: Option<usize>,
    millis: f64,
}

fn analyze_file(path: &Path, cfg: &AnalysisConfig) -> Row {
    let start = Instant::now();
    let (verdict, pairs) = match load(path) {
        Ok(trs) => {
            let a = analyze(&trs, cfg);
            (a.verdict.to_string(), Some(a.pairs.len()))
        }
        Err(e) => (format!("ERROR ({e:#})"), None),
    };
    Row {
        file: path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
        verdict,
        pairs,
        millis: start.elapsed().as_secs_f64() * 1000.0,
    }
}

fn corpus(dir: &Path, jobs: Option<usize>, cfg: &AnalysisConfig, fmt: Format) -> Result<(String, u8)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "trs"))
        .collect();
    files.sort();
    let rows: Vec<Row> = match jobs {
        Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(|| files.par_iter().map(|f| analyze_file(f, cfg)).collect()),
        _ => files.iter().map(|f| analyze_file(f, cfg)).collect(),
    };
    let out = match fmt {
        Format::Json => json_out(json!(rows
            .iter()
            .map(|r| json!({"file": r.file, "verdict": r.verdict, "pairs": r.pairs, "time_ms": r.millis}))
            .collect::<Vec<_>>())),
        Format::Text => {
            let w = rows.iter().map(|r| r.file.len()).max().unwrap_or(4).max(4);
            let mut o = format!("{:<w$}  {:<13}  {:>6}  {:>10}\n", "file", "verdict", "#pairs", "time (ms)");
            for r in &rows {
                let pairs = r.pairs.map_or("-".to_string(), |n| n.to_string());
                o += &format!("{:<w$}  {:<13}  {:>6}  {:>10.1}\n", r.file, r.verdict, pairs, r.millis);
            }
            o
        }
    };
    Ok((out, 0))
}
