//! `chaindeck` command-line tool. Exit status: 0 success, 1 usage or domain
//! error, 2 negative verification, check or search result.

mod config;

use std::collections::hash_map::RandomState;
use std::fs;
use std::hash::BuildHasher;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chaindeck::constructions::{construct, list_supported, tables, TRIVIAL_TAG};
use chaindeck::digraph::Decomposition;
use chaindeck::oracle::{default_budget, search, SearchStatus};
use chaindeck::spectrum::{balanced_k, enumerate_profiles_bounded, histogram_csv, necessary_conditions, LengthProfile};
use chaindeck::taskgen::{generate_task_set, Format, GenerateOptions, Labeling, Redraw, RedrawPolicy};
use chaindeck::verifier::verify;

use config::Config;

#[derive(Parser)]
#[command(
    name = "chaindeck",
    version,
    about = "Balanced path decompositions of complete digraphs and chain rule task sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List length profiles of path decompositions of the complete digraph.
    Spectrum {
        #[arg(long)]
        n: u32,
        /// Only profiles meeting the balance conditions.
        #[arg(long)]
        admissible: bool,
        /// Histogram of profile sizes as CSV instead of the profile list.
        #[arg(long)]
        csv: bool,
    },
    /// Evaluate the necessary conditions for a profile.
    Check {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Build the stored decomposition for a profile.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long, required_unless_present = "list")]
        profile: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// List the profiles with a stored construction.
        #[arg(long, conflicts_with = "profile")]
        list: bool,
    },
    /// Check a decomposition file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact search for a decomposition with a given profile.
    Search {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        balanced: bool,
        /// Node budget; defaults to the config value, else unlimited up to n = 5.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Render a task set from a decomposition and a labeling.
    Generate(GenerateArgs),
    /// Export a decomposition file as Graphviz DOT.
    Dot {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    n: u32,
    /// Comma-separated x_1,...,x_{n-2}.
    #[arg(long)]
    profile: String,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, requires = "profile", conflicts_with = "input")]
    n: Option<u32>,
    #[arg(long, requires = "n")]
    profile: Option<String>,
    /// Decomposition file to use instead of a stored construction.
    #[arg(long, required_unless_present = "n")]
    input: Option<PathBuf>,
    /// Labeling file.
    #[arg(long)]
    labels: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Latex)]
    format: OutputFormat,
    #[arg(long)]
    allow_unbalanced: bool,
    /// Redraw granularity for class labels; default redraws Log and Exp per occurrence only.
    #[arg(long, value_enum)]
    redraw: Option<RedrawArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Latex,
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RedrawArg {
    Labeling,
    Occurrence,
}

enum Failure {
    Domain(String),
    Negative,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn write_or_print(cfg: &Config, out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => {
            let path = cfg.output_path(path);
            fs::write(&path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn spectrum(cfg: &Config, n: u32, admissible: bool, csv: bool) -> Outcome {
    let profiles = enumerate_profiles_bounded(n, admissible, cfg.max_order())?;
    if csv {
        let mut hist = std::collections::BTreeMap::new();
        for p in &profiles {
            *hist.entry(p.size()).or_insert(0) += 1;
        }
        print!("{}", histogram_csv(&hist));
        return Ok(());
    }
    for p in &profiles {
        match balanced_k(p)? {
            Some(k) if necessary_conditions(p).admissible => println!("{p}  paths={}  k={k}", p.size()),
            _ => println!("{p}  paths={}", p.size()),
        }
    }
    eprintln!("{} profiles", profiles.len());
    Ok(())
}

fn check(target: &Target, as_json: bool) -> Outcome {
    let p = LengthProfile::parse(target.n, &target.profile)?;
    let r = necessary_conditions(&p);
    if as_json {
        print!("{}", json(&r));
    } else {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        println!("profile:             {p}");
        println!("arc count n(n-1):    {}", yes_no(r.arc_count_ok));
        match r.k {
            Some(k) => println!("balance constant k:  {k}"),
            None => println!("balance constant k:  not integral"),
        }
        println!("n | paths:           {}", yes_no(r.path_count_divisible));
        println!("n | interior:        {}", yes_no(r.interior_divisible));
        println!("admissible:          {}", yes_no(r.admissible));
    }
    if r.admissible {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn construct_cmd(cfg: &Config, n: u32, profile: Option<&str>, out: Option<&Path>, list: bool) -> Outcome {
    if list {
        for (p, tag) in list_supported(n) {
            println!("{p}  {tag}");
        }
        return Ok(());
    }
    let p = LengthProfile::parse(n, profile.expect("clap requires --profile"))?;
    let d = construct(n, &p)?;
    write_or_print(cfg, out, &d.to_json())
}

fn verify_cmd(input: &Path, as_json: bool) -> Outcome {
    let d = Decomposition::from_json(&read(input)?)?;
    let r = verify(&d);
    if as_json {
        print!("{}", json(&r));
    } else {
        print!("{r}");
    }
    if r.is_clean() {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn search_cmd(
    cfg: &Config,
    target: &Target,
    balanced: bool,
    budget: Option<u64>,
    out: Option<&Path>,
    as_json: bool,
) -> Outcome {
    let p = LengthProfile::parse(target.n, &target.profile)?;
    let budget = budget.or(cfg.budget).unwrap_or_else(|| default_budget(target.n));
    let outcome = search(target.n, &p, balanced, budget)?;
    if as_json {
        print!("{}", json(&outcome));
    } else {
        eprintln!("{:?} after {} nodes", outcome.status, outcome.nodes_explored);
    }
    if let Some(w) = &outcome.witness {
        if out.is_some() || !as_json {
            write_or_print(cfg, out, &w.to_json())?;
        }
    }
    match outcome.status {
        SearchStatus::Found => Ok(()),
        _ => Err(Failure::Negative),
    }
}

fn entropy_seed() -> u64 {
    RandomState::new().hash_one(std::time::SystemTime::now())
}

fn generate(cfg: &Config, args: &GenerateArgs) -> Outcome {
    let labels = Labeling::from_json(&read(&args.labels)?)?;
    let (d, source) = match (&args.input, args.n, &args.profile) {
        (Some(path), _, _) => (Decomposition::from_json(&read(path)?)?, Some(path.display().to_string())),
        (None, Some(n), Some(profile)) => {
            let p = LengthProfile::parse(n, profile)?;
            let d = construct(n, &p)?;
            let tag = tables()
                .iter()
                .find(|t| t.n == n && t.profile == p)
                .map_or_else(|| TRIVIAL_TAG.to_string(), |t| t.source.clone());
            (d, Some(tag))
        }
        _ => return Err(Failure::Domain("give --input or both --n and --profile".into())),
    };
    let seed = match args.seed.or(cfg.seed) {
        Some(s) => s,
        None => {
            let s = entropy_seed();
            eprintln!("seed: {s}");
            s
        }
    };
    let policy = match args.redraw {
        None => RedrawPolicy::default(),
        Some(RedrawArg::Labeling) => RedrawPolicy::uniform(Redraw::PerLabeling),
        Some(RedrawArg::Occurrence) => RedrawPolicy::uniform(Redraw::PerOccurrence),
    };
    let opts = GenerateOptions { allow_unbalanced: args.allow_unbalanced, policy, source };
    let ts = generate_task_set(&d, &labels, seed, &opts)?;
    let format = match args.format {
        OutputFormat::Latex => Format::Latex,
        OutputFormat::Text => Format::PlainText,
        OutputFormat::Json => Format::Json,
    };
    print!("{}", ts.render(format));
    Ok(())
}

fn run(cli: Cli, cfg: &Config) -> Outcome {
    match cli.command {
        Command::Spectrum { n, admissible, csv } => spectrum(cfg, n, admissible, csv),
        Command::Check { target, json } => check(&target, json),
        Command::Construct { n, profile, out, list } => construct_cmd(cfg, n, profile.as_deref(), out.as_deref(), list),
        Command::Verify { input, json } => verify_cmd(&input, json),
        Command::Search { target, balanced, budget, out, json } => {
            search_cmd(cfg, &target, balanced, budget, out.as_deref(), json)
        }
        Command::Generate(args) => generate(cfg, &args),
        Command::Dot { input } => {
            print!("{}", Decomposition::from_json(&read(&input)?)?.to_dot());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match Config::from_env() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run(cli, &cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(2),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
