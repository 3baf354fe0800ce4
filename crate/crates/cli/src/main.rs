use clap::{Args, Parser, Subcommand};
use rootgame::oracle::{branching_expand, intersection_number, OracleError};
use rootgame::solver::replay_from;
use rootgame::sweep::{self, Suite, SweepOptions};
use rootgame::{
    Embedding, Mode, Position, RootSet, RootSystem, SolverConfig, SplittingPolicy, Status, Step, Verdict, WeylElement,
};
use serde::Serialize;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "rootgame", version, about = "Play, solve and check the root game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a winning line or a loss witness.
    Solve(SolveArgs),
    /// Exact intersection numbers and branching coefficients.
    Oracle(OracleArgs),
    /// Run a verification sweep.
    Verify(VerifyArgs),
    /// Draw the board of a position.
    Render(RenderArgs),
    /// Draw the image of every target root on the target board.
    Describe {
        #[arg(long)]
        embedding: String,
    },
    /// Serve the session API and the explorer assets.
    Serve(ServeArgs),
}

#[derive(Args)]
struct GameArgs {
    /// e.g. `diag(id:A4,id:A4,id:A4)` or `so-in-sl:5`
    #[arg(long)]
    embedding: String,
    /// One-line notation, factors separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pi: String,
    #[arg(long, default_value = "top", value_parser = ["top", "free"])]
    mode: String,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Allow merges between copies.
    #[arg(long)]
    merges: bool,
    /// 1-based copies whose roots may be used as move directions.
    #[arg(long, value_delimiter = ',')]
    copies: Option<Vec<usize>>,
    /// Never split.
    #[arg(long, conflicts_with = "discretionary")]
    no_split: bool,
    /// Search over splits instead of always splitting maximally.
    #[arg(long)]
    discretionary: bool,
    /// Positions explored before giving up.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, conflicts_with = "embedding", required_unless_present = "embedding")]
    group: Option<String>,
    #[arg(long)]
    embedding: Option<String>,
    /// Elements in one-line notation; signed entries may start with `-`, so give other flags first.
    #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
    pi: Vec<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = suite_names())]
    suite: String,
    /// Instances drawn by sampling suites.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    /// Structure-table cache; defaults to $ROOTGAME_CACHE_DIR.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    game: GameArgs,
    /// JSON array of steps to play first.
    #[arg(long)]
    steps: Option<String>,
    /// Split along every qualifying subset before drawing.
    #[arg(long)]
    split: bool,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    /// Directory of UI assets.
    #[arg(long = "static")]
    static_dir: Option<PathBuf>,
    /// JSON-lines file to keep sessions across restarts.
    #[arg(long)]
    persist: Option<PathBuf>,
    /// Origin allowed by CORS; any when omitted.
    #[arg(long)]
    cors_origin: Option<String>,
}

fn suite_names() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

enum Failure {
    Usage(String),
    Failed(String),
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Failed(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Inconsistent(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Failed(m) | Failure::Inconsistent(m) => m,
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            e if e.is_consistency_failure() => Failure::Inconsistent(e.to_string()),
            OracleError::Group(_) | OracleError::WrongGroup(_) | OracleError::NoRestriction(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Failed(e.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("output serializes"));
}

fn embedding(spec: &str) -> Result<Arc<Embedding>, Failure> {
    Embedding::parse(spec).map(Arc::new).map_err(usage)
}

fn start(g: &GameArgs) -> Result<Position, Failure> {
    let mode: Mode = g.mode.parse().map_err(usage)?;
    Position::initial_from_literal(embedding(&g.embedding)?, &g.pi, mode).map_err(usage)
}

fn names(rs: &RootSystem, s: &RootSet) -> String {
    let v: Vec<String> = s.iter().map(|a| rs.name(a)).collect();
    format!("{{{}}}", v.join(", "))
}

fn describe_step(rs: &RootSystem, step: &Step) -> String {
    match step {
        Step::Split { ideal } => format!("split off {}", names(rs, ideal)),
        Step::Move { beta, region } => format!("move by {} in region {region}", rs.name(*beta)),
        Step::Merge {
            region,
            from_copy,
            to_copy,
        } => format!("merge copy {from_copy} into copy {to_copy} in region {region}"),
    }
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    embedding: &'a str,
    pi: &'a str,
    config: &'a SolverConfig,
    verdict: &'a Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    final_position: Option<Position>,
}

fn solve(a: &SolveArgs) -> Result<(), Failure> {
    let p = start(&a.game)?;
    let mut cfg = SolverConfig {
        mode: p.mode(),
        allow_merges: a.merges,
        movable_copies: a.copies.clone(),
        splitting_policy: if a.no_split {
            SplittingPolicy::None
        } else if a.discretionary {
            SplittingPolicy::Discretionary
        } else {
            SplittingPolicy::Maximal
        },
        ..SolverConfig::default()
    };
    if let Some(b) = a.budget {
        cfg.node_budget = b;
    }
    let verdict = rootgame::solve_position(&p, &cfg);
    let final_position = match &verdict {
        Verdict::Won { certificate } => {
            let end = replay_from(&p, certificate)
                .map_err(|e| Failure::Inconsistent(format!("certificate does not replay: {e}")))?;
            if end.status() != Status::Won {
                return Err(Failure::Inconsistent("certificate does not end in a won position".into()));
            }
            Some(end)
        }
        _ => None,
    };
    if a.json {
        print_json(&SolveOutput {
            embedding: p.embedding().spec(),
            pi: a.game.pi.trim(),
            config: &cfg,
            verdict: &verdict,
            final_position,
        });
        return Ok(());
    }
    let rs = p.embedding().target();
    match &verdict {
        Verdict::Won { certificate } => {
            println!("WON in {} steps", certificate.len());
            for (i, s) in certificate.iter().enumerate() {
                println!("  {:>3}. {}", i + 1, describe_step(rs, s));
            }
        }
        Verdict::Doomed {
            witness,
            tokens,
            capacity,
        } => {
            println!("DOOMED");
            println!("  {tokens} tokens on {} whose image has {capacity} roots", names(rs, witness));
        }
        v => println!("{v}"),
    }
    Ok(())
}

fn oracle(a: &OracleArgs) -> Result<(), Failure> {
    if let Some(spec) = &a.embedding {
        let e = embedding(spec)?;
        if a.pi.len() != 1 {
            return Err(Failure::Usage("--embedding takes exactly one --pi".into()));
        }
        let pi = WeylElement::parse(e.target(), &a.pi[0]).map_err(usage)?;
        let v = branching_expand(&e, &pi)?;
        if a.json {
            print_json(&v);
        } else {
            println!("{v}");
        }
        return Ok(());
    }
    let spec = a.group.as_deref().expect("clap requires --group or --embedding");
    let rs = Arc::new(RootSystem::parse(spec).map_err(usage)?);
    let pis: Vec<WeylElement> = a
        .pi
        .iter()
        .map(|l| WeylElement::parse(&rs, l).map_err(usage))
        .collect::<Result<_, _>>()?;
    let n = intersection_number(&rs, &pis)?;
    if a.json {
        print_json(&serde_json::json!({ "group": rs.spec(), "pi": a.pi, "value": n }));
    } else {
        println!("{n}");
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = a.suite.parse().map_err(usage)?;
    let mut opts = SweepOptions::default();
    if let Some(d) = &a.cache_dir {
        opts.cache_dir = Some(d.clone());
    }
    if let Some(n) = a.sample {
        opts.sample_size = n;
    }
    if let Some(s) = a.seed {
        opts.seed = s;
    }
    if let Some(b) = a.budget {
        opts.node_budget = b;
    }
    let report = sweep::run(suite, &opts).map_err(|e| {
        if e.is_consistency_failure() {
            Failure::Inconsistent(e.to_string())
        } else {
            Failure::Failed(e.to_string())
        }
    })?;
    if a.json {
        print_json(&report);
    } else {
        println!("{report}");
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Failed(format!("suite {suite} found mismatches or failed checks")))
    }
}

fn render(a: &RenderArgs) -> Result<(), Failure> {
    let mut p = start(&a.game)?;
    if let Some(json) = &a.steps {
        let steps: Vec<Step> = serde_json::from_str(json).map_err(usage)?;
        p = replay_from(&p, &steps).map_err(usage)?;
    }
    if a.split {
        p = p.split_maximally();
    }
    println!("{}", p.render());
    if let Some(labels) = p.render_labels() {
        println!();
        println!("{labels}");
    }
    let rs = p.embedding().target();
    match p.status() {
        Status::Won => println!("status: won"),
        Status::Open => println!("status: open"),
        Status::Lost {
            witness,
            tokens,
            capacity,
        } => println!("status: lost, {tokens} tokens on {} with image of {capacity}", names(rs, &witness)),
    }
    Ok(())
}

fn serve(a: &ServeArgs) -> Result<(), Failure> {
    let addr: SocketAddr = format!("{}:{}", a.host, a.port).parse().map_err(usage)?;
    let config = rootgame_service::Config {
        persist: a.persist.clone(),
        static_dir: a.static_dir.clone(),
        cors_origin: a.cors_origin.clone(),
    };
    let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Failed(e.to_string()))?;
    eprintln!("listening on http://{addr}");
    rt.block_on(rootgame_service::serve(addr, config))
        .map_err(|e| Failure::Failed(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Oracle(a) => oracle(a),
        Command::Verify(a) => verify(a),
        Command::Render(a) => render(a),
        Command::Describe { embedding: spec } => embedding(spec).map(|e| println!("{}", e.describe())),
        Command::Serve(a) => serve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
