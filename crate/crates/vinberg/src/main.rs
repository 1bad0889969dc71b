use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use vinberg::expr::{parse_expr, Scope};
use vinberg::formats::{
    seed_to_dot, seed_to_text, CartanFile, PointFile, PresentationFile, SeedFile, SpecFile,
};
use vinberg::suites::{self, Config};
use vinberg::{max_seeds_from_env, CliError};
use vinberg_core::cartan::RootDatum;
use vinberg_core::cluster::{enumerate_seeds, membership, mutate_state, SeedState};
use vinberg_core::group::{label_values, random_point};
use vinberg_core::monoid::{build_dotted_cartan, gl2_cartan, gl2_family, sl2_env_presentation};
use vinberg_core::seed::{build_seed, framed_seed, longest_double_word, DoubleWord, MinorLabel, Seed};

#[derive(Parser)]
#[command(name = "vinberg", version, about = "Cluster structures on framed double Bruhat cells and Vinberg monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or mutate seeds.
    #[command(subcommand)]
    Seed(SeedCmd),
    /// Run a verification suite; exit 0 iff every check passes.
    Verify(VerifyArgs),
    /// Bounded membership test for an expression in the initial cluster.
    Membership(MembershipArgs),
    /// Monoid presentations and dotted Cartan matrices.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// A seeded random point of SL_n x^Z T and the framed cluster variables there.
    Point(PointArgs),
}

#[derive(Subcommand)]
enum SeedCmd {
    Build(BuildArgs),
    Mutate(MutateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args, Clone)]
struct SeedSource {
    /// Cartan type such as A1, A2, B2.
    #[arg(long = "type", value_name = "TYPE")]
    cartan_type: Option<String>,
    /// Cartan matrix as JSON `{"labels": [...], "matrix": [[...]]}`.
    #[arg(long, value_name = "FILE")]
    cartan: Option<PathBuf>,
    /// Framed seed of the (w0, w0) word.
    #[arg(long)]
    framed: bool,
    /// Double word as a JSON array of signed letters, e.g. "[1,-1]".
    #[arg(long)]
    word: Option<String>,
    /// Use the unshuffled (w0, w0) word.
    #[arg(long)]
    auto_word: bool,
    /// Previously written seed JSON.
    #[arg(long, value_name = "FILE")]
    seed_file: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    source: SeedSource,
    #[arg(long, value_enum, default_value = "json")]
    out: Format,
    #[arg(short = 'o', long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MutateArgs {
    #[command(flatten)]
    source: SeedSource,
    /// Vertex names to mutate at, in order.
    #[arg(long = "at", required = true, num_args = 1..)]
    at: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    out: Format,
    #[arg(short = 'o', long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of sl2, presentations, sl3, valuations, crystal, gl2, properties, monomial.
    suite: String,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    depth: Option<usize>,
    /// Family parameters for the gl2 suite.
    #[arg(long, num_args = 1..)]
    k: Vec<u32>,
    #[arg(long, value_enum, default_value = "json")]
    out: Format,
    #[arg(short = 'o', long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MembershipArgs {
    /// Seed to test against; defaults to the framed A1 seed.
    #[command(flatten)]
    source: SeedSource,
    #[arg(long, conflicts_with = "expr_file")]
    expr: Option<String>,
    #[arg(long, value_name = "FILE")]
    expr_file: Option<PathBuf>,
    /// `all`, `none`, `default` (the seed's Sigma) or comma-separated names.
    #[arg(long, default_value = "default")]
    sigma: String,
    #[arg(long, default_value_t = 2)]
    depth: usize,
}

#[derive(Subcommand)]
enum MonoidCmd {
    Sl2,
    Gl2 {
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    Dotted {
        #[arg(long, value_name = "FILE")]
        cartan: PathBuf,
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long = "type", default_value = "A1")]
    cartan_type: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

struct Loaded {
    seed: Seed,
    labels: Option<Vec<MinorLabel>>,
    sigma: Option<Vec<usize>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_seed(src: &SeedSource) -> Result<Loaded, CliError> {
    if let Some(path) = &src.seed_file {
        let f: SeedFile = serde_json::from_str(&read(path)?)?;
        let seed = f.to_seed()?;
        let sigma = match &f.sigma {
            Some(names) => Some(
                names
                    .iter()
                    .map(|n| {
                        seed.position_of_name(n)
                            .ok_or_else(|| CliError::Input(format!("sigma names unknown vertex {n}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        return Ok(Loaded {
            labels: f.labels()?,
            seed,
            sigma,
        });
    }
    let datum = match (&src.cartan_type, &src.cartan) {
        (Some(t), None) => RootDatum::of_type(t)?,
        (None, Some(path)) => {
            let c: CartanFile = serde_json::from_str(&read(path)?)?;
            RootDatum::new(c.to_cartan()?)
        }
        (None, None) => return Err(CliError::Input("give --type, --cartan or --seed-file".into())),
        (Some(_), Some(_)) => return Err(CliError::Input("--type and --cartan are exclusive".into())),
    };
    if src.framed {
        let fs = framed_seed(&datum)?;
        return Ok(Loaded {
            seed: fs.built.seed,
            labels: Some(fs.built.labels),
            sigma: Some(fs.sigma),
        });
    }
    let word = match &src.word {
        Some(w) => {
            let letters: Vec<i32> = serde_json::from_str(w)
                .map_err(|e| CliError::Input(format!("--word must be a JSON array of integers: {e}")))?;
            DoubleWord::new(datum, letters)?
        }
        None if src.auto_word || src.cartan_type.is_some() => longest_double_word(&datum)?,
        None => return Err(CliError::Input("give --word, --auto-word or --framed".into())),
    };
    let built = build_seed(&word)?;
    Ok(Loaded {
        seed: built.seed,
        labels: Some(built.labels),
        sigma: None,
    })
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty<T: serde::Serialize>(v: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn seed_output(file: &SeedFile, seed: &Seed, out: Format) -> Result<String, CliError> {
    match out {
        Format::Json => pretty(file),
        Format::Dot => Ok(seed_to_dot(seed)),
        Format::Text => {
            let mut t = seed_to_text(seed);
            if let Some(vars) = &file.variables {
                for (n, v) in seed.names().iter().zip(vars) {
                    t.push_str(&format!("{n} = {v}\n"));
                }
            }
            Ok(t)
        }
    }
}

fn cmd_build(a: &BuildArgs) -> Result<bool, CliError> {
    let l = load_seed(&a.source)?;
    let mut file = SeedFile::from_seed(&l.seed, l.labels.as_deref());
    file.sigma = l.sigma.map(|s| s.iter().map(|&p| l.seed.names()[p].clone()).collect());
    emit(&seed_output(&file, &l.seed, a.out)?, &a.output)?;
    Ok(true)
}

fn cmd_mutate(a: &MutateArgs) -> Result<bool, CliError> {
    let l = load_seed(&a.source)?;
    let names = l.seed.names().to_vec();
    let mut st = SeedState::initial(l.seed.clone());
    for name in &a.at {
        let p = l
            .seed
            .position_of_name(name)
            .ok_or_else(|| CliError::Input(format!("unknown vertex {name}")))?;
        st = mutate_state(&st, p)?;
    }
    let mut file = SeedFile::from_state(&st, &names, None);
    file.sigma = l.sigma.map(|s| s.iter().map(|&p| names[p].clone()).collect());
    emit(&seed_output(&file, &st.seed, a.out)?, &a.output)?;
    Ok(true)
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool, CliError> {
    if !suites::SUITES.contains(&a.suite.as_str()) {
        return Err(CliError::Input(format!(
            "unknown suite {:?}; expected one of {}",
            a.suite,
            suites::SUITES.join(", ")
        )));
    }
    let cfg = Config {
        rng_seed: a.seed,
        depth: a.depth,
        samples: a.samples,
        k: a.k.clone(),
        max_seeds: max_seeds_from_env(),
    };
    let report = suites::run_suite(&a.suite, &cfg)?;
    let text = match a.out {
        Format::Json => pretty(&report)?,
        Format::Dot => return Err(CliError::Input("reports are json or text".into())),
        Format::Text => {
            let mut t = format!(
                "suite {} seed {} depth {} samples {}\n",
                report.suite, report.rng_seed, report.depth, report.samples
            );
            for c in &report.checks {
                t.push_str(&format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id));
            }
            t
        }
    };
    emit(&text, &a.output)?;
    Ok(report.passed)
}

fn cmd_membership(a: &MembershipArgs) -> Result<bool, CliError> {
    let has_source = a.source.cartan_type.is_some() || a.source.cartan.is_some() || a.source.seed_file.is_some();
    let l = if has_source {
        load_seed(&a.source)?
    } else {
        let fs = framed_seed(&RootDatum::of_type("A1")?)?;
        Loaded {
            seed: fs.built.seed,
            labels: Some(fs.built.labels),
            sigma: Some(fs.sigma),
        }
    };
    let src = match (&a.expr, &a.expr_file) {
        (Some(e), _) => e.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => return Err(CliError::Input("give --expr or --expr-file".into())),
    };
    let seed = &l.seed;
    let f = parse_expr(&src, &Scope::for_seed(seed)?)?;
    let sigma: Vec<usize> = match a.sigma.as_str() {
        "all" => seed.frozen_positions(),
        "none" => Vec::new(),
        "default" => l.sigma.clone().unwrap_or_else(|| seed.frozen_positions()),
        list => list
            .split(',')
            .map(|n| {
                let n = n.trim();
                seed.position_of_name(n)
                    .filter(|&p| !seed.is_mutable(p))
                    .ok_or_else(|| CliError::Input(format!("{n} is not a frozen vertex")))
            })
            .collect::<Result<_, _>>()?,
    };
    let states = enumerate_seeds(&SeedState::initial(seed.clone()), a.depth, max_seeds_from_env())?;
    let rep = membership(seed, &f, &sigma, &states, a.depth)?;
    let names = seed.names();
    let witnesses: Vec<_> = rep
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "seed_path": w.seed_path.iter().map(|&p| names[p].clone()).collect::<Vec<_>>(),
                "offending_vertex": names[w.offending_vertex],
                "exponent": w.exponent,
            })
        })
        .collect();
    let verdict = json!({
        "expression": f.display(names),
        "verdict": format!("{:?}", rep.verdict),
        "sigma": sigma.iter().map(|&p| names[p].clone()).collect::<Vec<_>>(),
        "depth": rep.depth,
        "seeds_checked": rep.seeds_checked,
        "witnesses": witnesses,
    });
    emit(&pretty(&verdict)?, &None)?;
    Ok(true)
}

fn cmd_monoid(m: &MonoidCmd) -> Result<bool, CliError> {
    match m {
        MonoidCmd::Sl2 => {
            let p = PresentationFile::from_presentation(&sl2_env_presentation())?;
            emit(&pretty(&p)?, &None)?;
            Ok(p.verified)
        }
        MonoidCmd::Gl2 { k } => {
            let p = PresentationFile::from_presentation(&gl2_family(*k))?;
            let out = json!({
                "k": k,
                "cartan": CartanFile::from_cartan(&gl2_cartan(*k)?),
                "presentation": p,
            });
            emit(&pretty(&out)?, &None)?;
            Ok(p.verified)
        }
        MonoidCmd::Dotted { cartan, spec } => {
            let c: CartanFile = serde_json::from_str(&read(cartan)?)?;
            let s: SpecFile = serde_json::from_str(&read(spec)?)?;
            let d = build_dotted_cartan(&c.to_cartan()?, s.matrix())?;
            emit(&pretty(&CartanFile::from_cartan(&d))?, &None)?;
            Ok(true)
        }
    }
}

fn cmd_point(a: &PointArgs) -> Result<bool, CliError> {
    let datum = RootDatum::of_type(&a.cartan_type)?;
    let p = random_point(&datum, a.seed)?;
    let fs = framed_seed(&datum)?;
    let vals = label_values(&datum, &fs.built.labels, &p)?;
    let values: serde_json::Map<String, serde_json::Value> = fs
        .built
        .seed
        .names()
        .iter()
        .zip(&vals)
        .map(|(n, v)| (n.clone(), json!(v.to_string())))
        .collect();
    let out = json!({
        "type": a.cartan_type,
        "rng_seed": a.seed,
        "point": PointFile::from_point(&p),
        "valid": p.is_valid(),
        "framed_values": values,
    });
    emit(&pretty(&out)?, &None)?;
    Ok(p.is_valid())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Seed(SeedCmd::Build(a)) => cmd_build(a),
        Command::Seed(SeedCmd::Mutate(a)) => cmd_mutate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Membership(a) => cmd_membership(a),
        Command::Monoid(m) => cmd_monoid(m),
        Command::Point(a) => cmd_point(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
