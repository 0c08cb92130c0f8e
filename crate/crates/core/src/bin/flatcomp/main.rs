use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context as _};
use clap::{Args, Parser, Subcommand};

use flatcomp::completions::{complete, Notion};
use flatcomp::enriched::{presheaf_hom, LeftModule, Space};
use flatcomp::filters::{m_minus, PrincipalFilter};
use flatcomp::flatness::{budget_from_env, is_flat, FlatnessClass, FlatnessError, OracleConfig, OracleTable};
use flatcomp::quantale::QValue;
use flatcomp::text::{parse_document, parse_qvalue, parse_space, write_space, ParsedModule};
use flatcomp::verify::{self, broken_hom, quantale_suite, CatalogParams, Context};

const PROPERTY: u8 = 1;
const INPUT: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "flatcomp", version, about = "Flat presheaves and completions of finite enriched spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and check the laws of every space and module in it.
    Validate { file: PathBuf },
    /// Compute a completion and write it as a space file.
    Complete(CompleteArgs),
    /// Compare the closed-form flatness test with the definitional oracle.
    Flat(FlatArgs),
    /// Run the property suites over a generated catalog of small spaces.
    Verify(VerifyArgs),
    /// Distance between two filters or modules, as presheaf hom of their modules.
    Dist(DistArgs),
}

#[derive(Args)]
struct CompleteArgs {
    /// File holding exactly one space.
    file: PathBuf,
    #[arg(long)]
    notion: Notion,
    /// Output space file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Point table: completion point, generator, module values.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Embedding of the source points into the completion.
    #[arg(long)]
    embedding: Option<PathBuf>,
}

#[derive(Args)]
struct FlatArgs {
    /// Space file.
    space: PathBuf,
    /// Module file, or an inline list of values such as `[0,0,4]`.
    module: String,
    #[arg(long, value_parser = parse_class)]
    notion: FlatnessClass,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    max_points: usize,
    /// Off-diagonal distances, comma separated.
    #[arg(long, default_value = "0,1,2,inf")]
    grid: String,
    #[arg(long)]
    symmetric_only: bool,
    /// Seed for the sampled quantale laws; every other suite is exhaustive.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run only the named suites.
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    /// Replace the internal hom with a wrong one in the quantale suite.
    #[arg(long, hide = true)]
    mutate_hom: bool,
}

#[derive(Args)]
struct DistArgs {
    /// Space file.
    space: PathBuf,
    /// Filter or module file, or an inline generator such as `{a,b}`.
    first: String,
    second: String,
}

fn parse_class(s: &str) -> Result<FlatnessClass, String> {
    [FlatnessClass::P0, FlatnessClass::P1, FlatnessClass::P2]
        .into_iter()
        .find(|c| c.keyword() == s)
        .ok_or_else(|| format!("unknown notion `{s}` (expected p0, p1 or p2)"))
}

/// An error carrying its exit code.
#[derive(Debug)]
struct Exit(u8, anyhow::Error);

fn input(e: impl Into<anyhow::Error>) -> Exit {
    Exit(INPUT, e.into())
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(input)
}

fn load_space(path: &Path) -> Result<Arc<Space>, Exit> {
    let space = parse_space(&read(path)?).map_err(|e| input(anyhow!("{}: {e}", path.display())))?;
    let violations = space.violations();
    if let Some(v) = violations.first() {
        return Err(input(anyhow!("{}: space {} is not valid: {v}", path.display(), space.name())));
    }
    Ok(space.into_ref())
}

fn validate(file: &Path) -> Result<u8, Exit> {
    let doc = parse_document(&read(file)?, &[]).map_err(|e| input(anyhow!("{}: {e}", file.display())))?;
    let mut bad = 0;
    for s in &doc.spaces {
        let violations = s.violations();
        if violations.is_empty() {
            println!("space {}: ok ({} points)", s.name(), s.len());
        } else {
            bad += 1;
            println!("space {}: {} violation(s)", s.name(), violations.len());
            for v in violations {
                println!("  {v}");
            }
        }
    }
    for m in &doc.modules {
        println!("module {}: ok", m.name);
    }
    for f in &doc.filters {
        println!("filter {}: ok, generator {}", f.name, f.filter.label());
    }
    for s in &doc.sequences {
        println!("seq {}: ok", s.name);
    }
    Ok(if bad == 0 { 0 } else { PROPERTY })
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Exit> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(input),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_complete(args: &CompleteArgs) -> Result<u8, Exit> {
    let s = load_space(&args.file)?;
    let c = complete(&s, args.notion).map_err(input)?;
    write_or_print(args.output.as_deref(), &write_space(c.result()))?;
    if let Some(t) = &args.table {
        write_or_print(Some(t), &c.point_table_tsv())?;
    }
    if let Some(e) = &args.embedding {
        write_or_print(Some(e), &c.embedding_tsv())?;
    }
    Ok(0)
}

/// `[0,0,4]`, `0,0,4` or `0 0 4`.
fn inline_values(s: &Arc<Space>, text: &str) -> Result<Vec<QValue>, Exit> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let values = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_qvalue(s.base(), t).map_err(|e| input(anyhow!(e))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != s.len() {
        return Err(input(anyhow!("expected {} values, found {}", s.len(), values.len())));
    }
    Ok(values)
}

fn load_module(s: &Arc<Space>, arg: &str) -> Result<LeftModule, Exit> {
    let path = Path::new(arg);
    if !path.exists() {
        return LeftModule::new(s.clone(), inline_values(s, arg)?).map_err(input);
    }
    let doc = parse_document(&read(path)?, std::slice::from_ref(s)).map_err(|e| input(anyhow!("{arg}: {e}")))?;
    match doc.modules.into_iter().next().map(|m| m.module) {
        Some(ParsedModule::Left(m)) => Ok(m),
        Some(ParsedModule::Right(_)) => Err(input(anyhow!("{arg}: flatness is defined for left modules"))),
        None => Err(input(anyhow!("{arg}: no module block"))),
    }
}

fn verdict(flat: bool) -> &'static str {
    if flat {
        "flat"
    } else {
        "not flat"
    }
}

fn run_flat(args: &FlatArgs) -> Result<u8, Exit> {
    let s = load_space(&args.space)?;
    let m = load_module(&s, &args.module)?;
    let closed = is_flat(&m, args.notion);
    let table = OracleTable::new(&s, &OracleConfig::new(s.base()));
    let oracle = table.and_then(|t| t.check(&m, args.notion));
    let v = match oracle {
        Ok(v) => v,
        Err(e @ FlatnessError::Budget { .. }) => {
            println!("closed form: {}", verdict(closed));
            println!("oracle: {e}");
            return Ok(BUDGET);
        }
        Err(e) => return Err(input(e)),
    };
    println!("notion: {}", args.notion);
    println!("closed form: {}", verdict(closed));
    println!("oracle: {} ({} checks)", verdict(v.holds), v.checks);
    if let Some(w) = &v.witness {
        println!("witness: {w}");
    }
    if closed != v.holds {
        println!("DISAGREEMENT");
        return Ok(PROPERTY);
    }
    Ok(0)
}

fn run_verify(args: &VerifyArgs) -> Result<u8, Exit> {
    let grid = args
        .grid
        .split(',')
        .map(|t| parse_qvalue(flatcomp::quantale::Base::RPlus, t.trim()).map_err(|e| input(anyhow!("--grid: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let params = CatalogParams {
        max_points: args.max_points,
        grid,
        symmetric_only: args.symmetric_only,
        seed: args.seed,
        ..CatalogParams::default()
    };
    for name in &args.suites {
        if !verify::SUITES.contains(&name.as_str()) {
            return Err(input(anyhow!("unknown suite `{name}` (known: {})", verify::SUITES.join(", "))));
        }
    }
    let ctx = Context::new(params, budget_from_env());
    println!("catalog: {} rplus spaces, {} bool preorders", ctx.rplus.len(), ctx.bools.len());
    let names: Vec<&str> =
        if args.suites.is_empty() { verify::SUITES.to_vec() } else { args.suites.iter().map(String::as_str).collect() };
    let mut results = Vec::new();
    for name in names {
        let r = if name == "quantale" && args.mutate_hom {
            quantale_suite(10_000, args.seed, broken_hom)
        } else {
            verify::run_suite(name, &ctx).expect("known suite")
        };
        println!("{r}");
        results.push(r);
    }
    Ok(verify::exit_code(&results) as u8)
}

fn load_module_or_filter(s: &Arc<Space>, arg: &str) -> Result<LeftModule, Exit> {
    let path = Path::new(arg);
    if !path.exists() {
        let inner = arg.trim().trim_start_matches('{').trim_end_matches('}');
        let names: Vec<&str> = inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        let f = PrincipalFilter::from_names(s, &names).map_err(|e| input(anyhow!("{arg}: {e}")))?;
        return Ok(m_minus(&f));
    }
    let doc = parse_document(&read(path)?, std::slice::from_ref(s)).map_err(|e| input(anyhow!("{arg}: {e}")))?;
    if let Some(f) = doc.filters.first() {
        return Ok(m_minus(&f.filter));
    }
    match doc.modules.into_iter().next().map(|m| m.module) {
        Some(ParsedModule::Left(m)) => Ok(m),
        _ => Err(input(anyhow!("{arg}: expected a filter or a left module"))),
    }
}

fn run_dist(args: &DistArgs) -> Result<u8, Exit> {
    let s = load_space(&args.space)?;
    let a = load_module_or_filter(&s, &args.first)?;
    let b = load_module_or_filter(&s, &args.second)?;
    println!("{}", presheaf_hom(&a, &b).map_err(input)?);
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Exit> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Complete(args) => run_complete(args),
        Command::Flat(args) => run_flat(args),
        Command::Verify(args) => run_verify(args),
        Command::Dist(args) => run_dist(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
