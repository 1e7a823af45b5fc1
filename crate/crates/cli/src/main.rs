use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};
use serde_json::{json, Value};

use floerkit::classify::{classify, filtered_equivalent};
use floerkit::complex::{
    almost_staircase_1, almost_staircase_2, box_complex, direct_sum, figure_eight, free_generator,
    mirror, parse, reduce, serialize, staircase, tensor,
};
use floerkit::enumerate::{enumerate_candidates, verify_theorem, SearchSpec};
use floerkit::invariants::{genus, hfk, hook_profile, large_surgery_rank, tau};
use floerkit::regions::{double_triangle, exact_triangle, point_triangle, region_homology};
use floerkit::surgery::{detect, pegboard_params, stability_check, surgery_rank};
use floerkit::{Error, KnotComplex, Region};

#[derive(Parser)]
#[command(
    name = "floerkit",
    version,
    about = "Knot Floer complexes over F2[U, U^-1]"
)]
struct Cli {
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
    /// Also draw complexes on a text grid.
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check arrow invariants and d^2 = 0.
    Validate {
        file: PathBuf,
    },
    /// HFK-hat, genus, tau and hook ranks.
    Invariants {
        file: PathBuf,
        /// Also report the rank of N-surgery (N large).
        #[arg(long)]
        n: Option<i64>,
    },
    /// Homology of the subquotient complex over a region.
    Region {
        file: PathBuf,
        #[arg(long)]
        region: String,
    },
    /// Exact triangle of a pair sub ⊆ total, or one of the standard triangles.
    Triangle {
        file: PathBuf,
        #[arg(long, requires = "total")]
        sub: Option<String>,
        #[arg(long, requires = "sub")]
        total: Option<String>,
        /// The UX_m ⊂ UX_m ∪ Y_m and Y_m ⊂ X_m ∪ Y_m pair.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["sub", "point"])]
        double: Option<i64>,
        /// {i<0, j=m} ⊂ X_m.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "sub")]
        point: Option<i64>,
    },
    /// Filtered homotopy type among the template families.
    Classify {
        file: PathBuf,
    },
    /// L-space / almost L-space detection from hook ranks.
    Detect {
        file: PathBuf,
    },
    /// Rank of HF-hat of p/q surgery.
    Surgery {
        file: PathBuf,
        #[arg(long, value_parser = parse_slope, allow_hyphen_values = true)]
        pq: (i64, i64),
    },
    /// Checks the stable rank formula at the given slopes.
    Stability {
        file: PathBuf,
        #[arg(long, value_parser = parse_slope, value_delimiter = ',', required = true)]
        pq: Vec<(i64, i64)>,
    },
    /// Emits a constructor output.
    Make {
        #[command(subcommand)]
        model: Model,
    },
    Mirror {
        file: PathBuf,
    },
    Tensor {
        a: PathBuf,
        b: PathBuf,
    },
    Sum {
        a: PathBuf,
        b: PathBuf,
    },
    /// Filtered chain homotopy equivalence.
    Equiv {
        a: PathBuf,
        b: PathBuf,
    },
    /// Exhaustive search for almost L-space complexes.
    Enumerate {
        #[arg(long)]
        genus: i64,
        #[arg(long, default_value_t = 1)]
        max_step: i64,
        /// Write each candidate to DIR/candidate_NNN.cfk.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerates and classifies every candidate.
    VerifyTheorem {
        #[arg(long)]
        genus: i64,
        #[arg(long, default_value_t = 1)]
        max_step: i64,
    },
}

#[derive(Subcommand)]
enum Model {
    /// Staircase with comma-separated steps, e.g. 1,1.
    Staircase {
        #[arg(value_delimiter = ',')]
        steps: Vec<i64>,
    },
    /// Box with top generator at Alexander A and Maslov M.
    Box {
        #[arg(allow_hyphen_values = true)]
        alexander: i64,
        #[arg(allow_hyphen_values = true)]
        maslov: i64,
    },
    /// Type 1 almost staircase; unit steps unless given.
    Almost1 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<i64>>,
    },
    /// Type 2 almost staircase; unit steps unless given.
    Almost2 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<i64>>,
    },
    /// Box plus a free generator.
    Figure8,
    /// A single generator: the unknot.
    Unknot,
}

fn parse_slope(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p = p
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in {s:?}"))?;
    let q = q
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in {s:?}"))?;
    Ok((p, q))
}

/// What a command prints: text for people, a value for `--json`.
struct Output {
    text: String,
    value: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, value: Value) -> Self {
        Self {
            text: text.into(),
            value,
            ok: true,
        }
    }

    fn failing(mut self) -> Self {
        self.ok = false;
        self
    }
}

enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read(path: &Path) -> Result<KnotComplex, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    Ok(parse(&text)?)
}

fn read_valid(path: &Path) -> Result<KnotComplex, Failure> {
    let c = read(path)?;
    c.require_valid()?;
    Ok(c)
}

/// Places each generator by following arrows from the first one in its
/// component: `s -> t` with power `a` puts `t` at `i_s - a`.
fn layout(c: &KnotComplex) -> Vec<(i64, i64)> {
    let n = c.len();
    let arrows = c.indexed_arrows().unwrap_or_default();
    let mut i: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if i[root].is_some() {
            continue;
        }
        i[root] = Some(0);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            let ix = i[x].expect("placed");
            for &(s, t, a) in &arrows {
                let (y, iy) = if s == x {
                    (t, ix - a)
                } else if t == x {
                    (s, ix + a)
                } else {
                    continue;
                };
                if i[y].is_none() {
                    i[y] = Some(iy);
                    stack.push(y);
                }
            }
        }
    }
    c.generators
        .iter()
        .zip(i)
        .map(|(g, i)| {
            let i = i.unwrap_or(0);
            (i, g.alexander + i)
        })
        .collect()
}

fn ascii(c: &KnotComplex) -> String {
    let pos = layout(c);
    if pos.is_empty() {
        return String::new();
    }
    let mut cells: BTreeMap<(i64, i64), Vec<&str>> = BTreeMap::new();
    for (g, &p) in c.generators.iter().zip(&pos) {
        cells.entry(p).or_default().push(&g.name);
    }
    let (i0, i1) = (
        pos.iter().map(|p| p.0).min().unwrap(),
        pos.iter().map(|p| p.0).max().unwrap(),
    );
    let (j0, j1) = (
        pos.iter().map(|p| p.1).min().unwrap(),
        pos.iter().map(|p| p.1).max().unwrap(),
    );
    let width = cells
        .values()
        .map(|v| v.join(",").len())
        .max()
        .unwrap_or(1)
        .max(1);
    let mut out = String::new();
    for j in (j0..=j1).rev() {
        out.push_str(&format!("{j:>4} |"));
        for i in i0..=i1 {
            let cell = cells
                .get(&(i, j))
                .map(|v| v.join(","))
                .unwrap_or(".".into());
            out.push_str(&format!(" {cell:^width$}"));
        }
        out.push('\n');
    }
    out.push_str("     +");
    out.push_str(&"-".repeat((width + 1) * (i1 - i0 + 1) as usize));
    out.push('\n');
    out.push_str("      ");
    for i in i0..=i1 {
        out.push_str(&format!(" {i:^width$}"));
    }
    out.push('\n');
    out
}

fn complex_output(c: &KnotComplex, draw: bool) -> Output {
    let mut text = serialize(c);
    if draw {
        text.push('\n');
        text.push_str(&ascii(c));
    }
    Output::new(
        text.trim_end().to_string(),
        serde_json::to_value(c).expect("serializable"),
    )
}

fn unit_steps(n: usize, steps: Option<Vec<i64>>) -> Vec<i64> {
    steps.unwrap_or_else(|| vec![1; n])
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let draw = cli.ascii;
    Ok(match cli.command {
        Command::Validate { file } => {
            let c = read(&file)?;
            let report = c.validate();
            let value = serde_json::to_value(&report).expect("serializable");
            if report.is_valid() {
                Output::new("valid", value)
            } else {
                let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                Output::new(format!("invalid\n{}", lines.join("\n")), value).failing()
            }
        }
        Command::Invariants { file, n } => {
            let c = read_valid(&file)?;
            let table = hfk(&c)?;
            let (g, t) = (genus(&c)?, tau(&c)?);
            let hooks = hook_profile(&c)?;
            let surgery = n.map(|n| large_surgery_rank(&c, n)).transpose()?;
            let mut text = format!("genus {g}\ntau {t}\nHFK-hat:\n");
            for (s, h) in table.by_alexander.iter().rev() {
                text.push_str(&format!("  A={s}: {h}\n"));
            }
            text.push_str(&format!("hook ranks {hooks}"));
            if let (Some(n), Some(r)) = (n, surgery) {
                text.push_str(&format!("\nrank HF-hat of {n}-surgery: {r}"));
            }
            Output::new(
                text,
                json!({
                    "genus": g,
                    "tau": t,
                    "hfk": table,
                    "hook_profile": hooks,
                    "large_surgery": n.map(|n| json!({"n": n, "rank": surgery})),
                }),
            )
        }
        Command::Region { file, region } => {
            let c = read_valid(&file)?;
            let r = Region::parse(&region)?;
            let h = region_homology(&c, &r)?;
            Output::new(
                h.to_string(),
                json!({"region": r.to_string(), "homology": h, "rank": h.total()}),
            )
        }
        Command::Triangle {
            file,
            sub,
            total,
            double,
            point,
        } => {
            let c = read_valid(&file)?;
            let reports = match (sub, total, double, point) {
                (Some(s), Some(t), None, None) => {
                    vec![exact_triangle(
                        &c,
                        &Region::parse(&s)?,
                        &Region::parse(&t)?,
                    )?]
                }
                (None, None, Some(m), None) => {
                    let d = double_triangle(&c, m)?;
                    vec![d.lower, d.upper]
                }
                (None, None, None, Some(m)) => vec![point_triangle(&c, m)?],
                _ => {
                    return Err(Failure::Usage(
                        "give --sub and --total, --double M, or --point M".into(),
                    ))
                }
            };
            let text = reports
                .iter()
                .map(|r| {
                    format!(
                        "exact: H(sub) = {}, H(total) = {}, H(quotient) = {}; map ranks {} {} {}",
                        r.sub,
                        r.total,
                        r.quotient,
                        r.inclusion_rank,
                        r.projection_rank,
                        r.connecting_rank
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::new(text, serde_json::to_value(&reports).expect("serializable"))
        }
        Command::Classify { file } => {
            let c = read_valid(&file)?;
            let cl = classify(&c)?;
            let mut text = cl.verdict.to_string();
            if let Some(t) = &cl.template {
                text.push_str(&format!("; {t:?}"));
            }
            if cl.overlap {
                text.push_str("; also an almost staircase");
            }
            text.push('\n');
            text.push_str(serialize(&cl.witness).trim_end());
            if draw {
                text.push_str("\n\n");
                text.push_str(&ascii(&cl.witness));
            }
            Output::new(
                text.trim_end().to_string(),
                serde_json::to_value(&cl).expect("serializable"),
            )
        }
        Command::Detect { file } => {
            let c = read_valid(&file)?;
            let d = detect(&c)?;
            Output::new(
                format!("{:?}; hook profile {}", d.verdict, d.witness),
                serde_json::to_value(&d).expect("serializable"),
            )
        }
        Command::Surgery { file, pq: (p, q) } => {
            let c = read_valid(&file)?;
            let params = pegboard_params(&c)?;
            let rank = surgery_rank(params, p, q)?;
            Output::new(
                rank.to_string(),
                json!({"p": p, "q": q, "rank": rank, "params": params}),
            )
        }
        Command::Stability { file, pq } => {
            let c = read_valid(&file)?;
            let r = stability_check(&c, &pq)?;
            let mut lines = vec![format!(
                "{:?}, genus {}, (m, n) = ({}, {})",
                r.verdict, r.genus, r.params.m, r.params.n
            )];
            for s in r.samples.iter().chain(r.boundary.as_ref()) {
                lines.push(format!(
                    "{}/{}: rank {} expected {} {}",
                    s.p,
                    s.q,
                    s.rank,
                    s.expected,
                    if s.ok { "ok" } else { "FAIL" }
                ));
            }
            let out = Output::new(
                lines.join("\n"),
                serde_json::to_value(&r).expect("serializable"),
            );
            if r.passed() {
                out
            } else {
                out.failing()
            }
        }
        Command::Make { model } => {
            let c = match model {
                Model::Staircase { steps } => staircase(&steps)?,
                Model::Box { alexander, maslov } => box_complex(alexander, maslov),
                Model::Almost1 { n, steps } => almost_staircase_1(n, &unit_steps(2 * n, steps))?,
                Model::Almost2 { n, steps } => {
                    almost_staircase_2(n, &unit_steps((2 * n).saturating_sub(1), steps))?
                }
                Model::Figure8 => figure_eight(),
                Model::Unknot => free_generator("x"),
            };
            complex_output(&c, draw)
        }
        Command::Mirror { file } => complex_output(&mirror(&read_valid(&file)?)?, draw),
        Command::Tensor { a, b } => {
            complex_output(&tensor(&read_valid(&a)?, &read_valid(&b)?)?, draw)
        }
        Command::Sum { a, b } => {
            complex_output(&direct_sum(&read_valid(&a)?, &read_valid(&b)?), draw)
        }
        Command::Equiv { a, b } => {
            let (a, b) = (read_valid(&a)?, read_valid(&b)?);
            let eq = filtered_equivalent(&a, &b)?;
            Output::new(
                eq.to_string(),
                json!({"equivalent": eq, "reduced_sizes": [reduce(&a)?.len(), reduce(&b)?.len()]}),
            )
        }
        Command::Enumerate {
            genus,
            max_step,
            out,
        } => {
            let found = enumerate_candidates(&SearchSpec::new(genus, max_step))?;
            let mut files = Vec::new();
            if let Some(dir) = &out {
                fs::create_dir_all(dir)
                    .map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
                for (k, c) in found.iter().enumerate() {
                    let path = dir.join(format!("candidate_{k:03}.cfk"));
                    fs::write(&path, serialize(c))
                        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    files.push(path.display().to_string());
                }
            }
            let text = match &out {
                Some(dir) => format!("{} candidates written to {}", found.len(), dir.display()),
                None => {
                    let bodies: Vec<String> = found.iter().map(serialize).collect();
                    format!("{} candidates\n\n{}", found.len(), bodies.join("\n"))
                }
            };
            Output::new(
                text.trim_end().to_string(),
                json!({"count": found.len(), "candidates": found, "files": files}),
            )
        }
        Command::VerifyTheorem { genus, max_step } => {
            let r = verify_theorem(&SearchSpec::new(genus, max_step))?;
            let mut lines = vec![format!("{} candidates", r.candidates)];
            for (class, k) in &r.by_class {
                lines.push(format!("  {class}: {k}"));
            }
            lines.push(format!("overlaps: {}", r.overlaps));
            for (case, k) in &r.by_case {
                lines.push(format!("  Maslov case {case}: {k}"));
            }
            for (label, list) in [
                ("classification violations", &r.violations),
                ("uncovered Maslov patterns", &r.uncovered),
                ("delta0 failures", &r.delta0_failures),
                ("X_m rank bound failures", &r.x_rank_failures),
                ("triangle failures", &r.triangle_failures),
            ] {
                lines.push(format!("{label}: {}", list.len()));
            }
            let out = Output::new(
                lines.join("\n"),
                serde_json::to_value(&r).expect("serializable"),
            );
            if r.passed() {
                out
            } else {
                out.failing()
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("FLOERKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.value).expect("serializable")
                );
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(e)) => {
            if json {
                println!("{}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            if json {
                println!("{}", json!({"error": msg}));
            }
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
    }
}
