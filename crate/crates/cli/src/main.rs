use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _};
use clap::{Parser, Subcommand, ValueEnum};

use normforge::formula_lib::{
    self, compose, cp2_formula, formula_for, norm_check_cost, palfy_c4, q8_transcribed,
    DIRECT_CHECK_BUDGET,
};
use normforge::group::{build_group, FiniteGroup, GroupSpec};
use normforge::matrix_oracle::{
    diagonal_assignment, oracle_check_with, perturbed_assignment, DEFAULT_SEED,
};
use normforge::method::{build_system, catalog_setup, generic_setup, run_pipeline, Setup};
use normforge::ncring::{io, latex, NCPoly};

const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Parser)]
#[command(
    name = "normforge",
    version,
    about = "Norm-one formulas for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Catalog groups
    Groups {
        #[command(subcommand)]
        cmd: GroupsCmd,
    },
    /// Generate, check and transform formula files
    Formula {
        #[command(subcommand)]
        cmd: FormulaCmd,
    },
    /// The equation system of the method
    System {
        #[command(subcommand)]
        cmd: SystemCmd,
    },
    /// Extraspecial and almost extraspecial subquotients
    Fset { spec: String },
    /// Group ring identities
    Identity {
        #[command(subcommand)]
        cmd: IdentityCmd,
    },
    /// The equation-system method end to end
    Pipeline {
        #[command(subcommand)]
        cmd: PipelineCmd,
    },
    /// Numeric check in the regular representation
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Subcommand)]
enum GroupsCmd {
    /// Group spec syntax
    List,
    /// Invariants of a group
    Info {
        spec: String,
        /// print the multiplication table as JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Pipeline,
    Reduce,
}

#[derive(Subcommand)]
enum FormulaCmd {
    /// Build a formula for a group
    Generate {
        spec: String,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Symbolic and oracle verification
    Verify {
        file: PathBuf,
        /// reduce N_G(y) directly even when it is estimated to be large
        #[arg(long)]
        force: bool,
    },
    /// Monomial count and degree
    Stats { file: PathBuf },
    /// LaTeX rendering
    Latex { file: PathBuf },
    /// Substitute the formula `inner` for variable `var` of `outer`
    Compose {
        outer: PathBuf,
        var: usize,
        inner: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SystemCmd {
    /// Print the presentation and the generated equations
    Show { spec: String },
}

#[derive(Subcommand)]
enum IdentityCmd {
    /// The group ring identity used for the order-27 solution
    #[command(name = "check-85")]
    Check85,
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// Run the method and emit the formula file
    Run {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Evaluate N_G of a formula file in both matrix models
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type CliResult = Result<(), Failure>;

fn max_order() -> anyhow::Result<usize> {
    match std::env::var("NORMFORGE_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("NORMFORGE_MAX_ORDER must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn check_order(order: usize, what: &str) -> anyhow::Result<()> {
    let bound = max_order()?;
    if order > bound {
        bail!("{what} has order {order}, above NORMFORGE_MAX_ORDER = {bound}");
    }
    Ok(())
}

fn parse_spec(s: &str) -> anyhow::Result<GroupSpec> {
    let spec: GroupSpec = s.parse().with_context(|| format!("bad group spec {s:?}"))?;
    check_order(spec.order(), &spec.to_string())?;
    Ok(spec)
}

fn group(spec: &GroupSpec) -> anyhow::Result<Arc<FiniteGroup>> {
    Ok(Arc::new(build_group(spec)?))
}

fn load(path: &Path) -> anyhow::Result<NCPoly> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let p = io::from_json(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    check_order(p.ctx().group().order(), p.ctx().group().label())?;
    Ok(p)
}

fn emit(p: &NCPoly, output: Option<&Path>) -> anyhow::Result<()> {
    let text = io::to_json(p)?;
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn subgroup_names(g: &FiniteGroup, members: &[usize]) -> String {
    let names: Vec<&str> = members.iter().map(|&m| g.name(m)).collect();
    format!("{{{}}}", names.join(","))
}

fn describe(p: &NCPoly) -> Vec<String> {
    let ctx = p.ctx();
    let g = ctx.group();
    let mut out = vec![format!("group: {} (order {})", g.label(), g.order())];
    for v in 0..ctx.num_vars() {
        out.push(format!(
            "variable {v}: {} on {}",
            ctx.var_name(v),
            subgroup_names(g, ctx.var_subgroup(v).members())
        ));
    }
    let (len, deg) = p.stats();
    out.push(format!("{len} monomials, degree {deg}"));
    out
}

/// Both checks on `N_G(p) = 1`. Returns the report and whether nothing failed.
fn verification_report(p: &NCPoly, force: bool) -> (Vec<String>, bool) {
    let g = p.ctx().group();
    let whole = g.whole();
    let mut lines = describe(p);
    let mut ok = true;
    let cost = norm_check_cost(p, &whole);
    if force || cost <= DIRECT_CHECK_BUDGET {
        let good = p.is_norm_one(&whole);
        ok &= good;
        lines.push(format!("symbolic: {}", if good { "ok" } else { "FAILED" }));
    } else {
        lines.push(format!(
            "symbolic: skipped (about {cost:.1e} words, budget {DIRECT_CHECK_BUDGET:.0e}; use --force)"
        ));
    }
    for (name, assignment) in [
        ("diagonal", diagonal_assignment(p)),
        ("perturbed", perturbed_assignment(p, DEFAULT_SEED)),
    ] {
        let line = match oracle_check_with(p, &whole, &assignment) {
            Ok(true) => "ok".to_string(),
            Ok(false) => {
                ok = false;
                "FAILED".to_string()
            }
            Err(e) => {
                ok = false;
                format!("error: {e}")
            }
        };
        lines.push(format!("oracle ({name}): {line}"));
    }
    (lines, ok)
}

/// Prints the report to stdout, or to stderr when stdout carries the
/// formula file.
fn print_report(lines: &[String], to_stderr: bool) {
    for l in lines {
        if to_stderr {
            eprintln!("{l}");
        } else {
            println!("{l}");
        }
    }
}

fn finish(lines: Vec<String>, ok: bool, to_stderr: bool) -> CliResult {
    print_report(&lines, to_stderr);
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("verification failed".into()))
    }
}

fn closed_formula(spec: &GroupSpec) -> anyhow::Result<Option<NCPoly>> {
    let f = match spec {
        GroupSpec::Cyclic(4) => palfy_c4()?,
        GroupSpec::Quaternion(8) => q8_transcribed()?,
        &GroupSpec::Cyclic(n) if n > 1 => {
            let g = group(spec)?;
            match g.prime() {
                Some(p) if n == p => formula_for(g)?,
                Some(p) if n == p * p && p <= 7 => cp2_formula(p)?,
                _ => return Ok(None),
            }
        }
        GroupSpec::ElemAbelian(..) => formula_for(group(spec)?)?,
        _ => return Ok(None),
    };
    Ok(Some(f))
}

fn generate(spec: &GroupSpec, method: Option<Method>) -> anyhow::Result<(NCPoly, &'static str)> {
    let closed = || -> anyhow::Result<NCPoly> {
        closed_formula(spec)?.ok_or_else(|| {
            anyhow!("no closed formula for {spec}; closed formulas exist for C_p, C_(p^2) with p ≤ 7, E(p,r) and Q8")
        })
    };
    let pipeline = || -> anyhow::Result<NCPoly> { Ok(run_pipeline(spec)?.assembly.y) };
    let reduce = || -> anyhow::Result<NCPoly> { Ok(formula_for(group(spec)?)?) };
    Ok(match method {
        Some(Method::Closed) => (closed()?, "closed"),
        Some(Method::Pipeline) => (pipeline()?, "pipeline"),
        Some(Method::Reduce) => (reduce()?, "reduce"),
        None => {
            if let Some(f) = closed_formula(spec)? {
                (f, "closed")
            } else if matches!(
                spec,
                GroupSpec::Quaternion(_) | GroupSpec::Dihedral(_) | GroupSpec::ModMax(3)
            ) {
                (pipeline()?, "pipeline")
            } else {
                (reduce()?, "reduce")
            }
        }
    })
}

fn groups_list() {
    let rows = [
        ("C<n>", "cyclic group of order n"),
        ("E(p,r)", "elementary abelian group of order p^r"),
        ("Q<m>", "generalized quaternion group of order m = 2^k ≥ 8"),
        ("D<m>", "dihedral group of order m = 2^k ≥ 8"),
        ("G<p^3>", "order p^3, exponent p^2 (p odd), e.g. G27"),
        ("S3", "symmetric group on three letters"),
        ("AxB", "direct product, e.g. Q8xC2"),
    ];
    for (s, d) in rows {
        println!("{s:<8} {d}");
    }
}

fn groups_info(spec: &GroupSpec, json: bool) -> anyhow::Result<()> {
    let g = group(spec)?;
    if json {
        println!("{}", g.to_json());
        return Ok(());
    }
    let inv = g.invariants();
    println!("group: {spec}");
    println!("order: {}", g.order());
    println!("isomorphism type: {}", g.iso_label());
    println!("abelian: {}", inv.abelian);
    println!("exponent: {}", inv.exponent);
    println!("center order: {}", g.center().order());
    println!(
        "generators: {}",
        g.generators()
            .iter()
            .map(|&s| g.name(s))
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("subgroups: {}", g.all_subgroups().len());
    println!(
        "elementary abelian subgroups: {}",
        g.elementary_abelian_subgroups().len()
    );
    if g.prime().is_some() {
        println!("classification: {}", g.classify()?);
    }
    Ok(())
}

fn setup_for(spec: &GroupSpec) -> anyhow::Result<Setup> {
    let g = group(spec)?;
    Ok(match catalog_setup(g.clone()) {
        Ok(s) => s,
        Err(_) => generic_setup(g)?,
    })
}

fn system_show(spec: &GroupSpec) -> anyhow::Result<()> {
    let s = setup_for(spec)?;
    let g = s.ctx.group();
    println!("group: {spec}");
    println!("presentation: {}", s.pres.display(g));
    println!("U = {}", subgroup_names(g, s.bctx.subgroup().members()));
    println!("sigma = {}", g.name(s.bctx.sigma()));
    let system = build_system(&s.bctx, &s.pres)?;
    for (i, eq) in system.iter().enumerate() {
        println!("({}) {}", i + 1, eq.display(g, &s.pres));
    }
    Ok(())
}

fn fset(spec: &GroupSpec) -> anyhow::Result<()> {
    let g = group(spec)?;
    let labels = g.f_set(max_order()?)?;
    let list: Vec<String> = labels.into_iter().collect();
    println!("F({spec}) = {{{}}}", list.join(", "));
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::Groups { cmd } => match cmd {
            GroupsCmd::List => groups_list(),
            GroupsCmd::Info { spec, json } => groups_info(&parse_spec(&spec)?, json)?,
        },
        Cmd::Formula { cmd } => match cmd {
            FormulaCmd::Generate {
                spec,
                method,
                output,
            } => {
                let spec = parse_spec(&spec)?;
                let (f, used) = generate(&spec, method)?;
                emit(&f, output.as_deref())?;
                let (mut lines, ok) = verification_report(&f, false);
                lines.insert(0, format!("method: {used}"));
                return finish(lines, ok, output.is_none());
            }
            FormulaCmd::Verify { file, force } => {
                let p = load(&file)?;
                let (lines, ok) = verification_report(&p, force);
                return finish(lines, ok, false);
            }
            FormulaCmd::Stats { file } => print_report(&describe(&load(&file)?), false),
            FormulaCmd::Latex { file } => println!("{}", latex::to_latex(&load(&file)?)),
            FormulaCmd::Compose {
                outer,
                var,
                inner,
                output,
            } => {
                let (o, i) = (load(&outer)?, load(&inner)?);
                let f = compose(&o, var, &i).map_err(|e| match e {
                    formula_lib::FormulaError::Verification(m) => Failure::Verification(m),
                    e => Failure::Usage(e.into()),
                })?;
                emit(&f, output.as_deref())?;
                let (lines, ok) = verification_report(&f, false);
                return finish(lines, ok, output.is_none());
            }
        },
        Cmd::System {
            cmd: SystemCmd::Show { spec },
        } => system_show(&parse_spec(&spec)?)?,
        Cmd::Fset { spec } => fset(&parse_spec(&spec)?)?,
        Cmd::Identity {
            cmd: IdentityCmd::Check85,
        } => {
            if formula_lib::identity_85().map_err(anyhow::Error::from)? {
                println!("identity holds in Z[G27]");
            } else {
                println!("identity FAILS in Z[G27]");
                return Err(Failure::Verification("identity".into()));
            }
        }
        Cmd::Pipeline {
            cmd: PipelineCmd::Run { spec, output },
        } => {
            let spec = parse_spec(&spec)?;
            let r = run_pipeline(&spec).map_err(anyhow::Error::from)?;
            let y = &r.assembly.y;
            emit(y, output.as_deref())?;
            let mut lines = vec![
                format!("solution: {:?}", r.source).to_lowercase(),
                format!("equations: {}", r.system.len()),
                format!("witness: {} monomials, degree {}", r.w.len(), r.w.degree()),
                format!(
                    "N_G(y) reduced directly: {}",
                    if r.assembly.direct_check {
                        "yes"
                    } else {
                        "no (certified by invariance and quotient norm)"
                    }
                ),
            ];
            let (rep, ok) = verification_report(y, false);
            lines.extend(rep);
            return finish(lines, ok, output.is_none());
        }
        Cmd::Oracle {
            cmd: OracleCmd::Check { file, seed },
        } => {
            let p = load(&file)?;
            let whole = p.ctx().group().whole();
            let mut lines = describe(&p);
            let mut ok = true;
            for (name, a) in [
                ("diagonal", diagonal_assignment(&p)),
                ("perturbed", perturbed_assignment(&p, seed)),
            ] {
                let good = oracle_check_with(&p, &whole, &a).map_err(anyhow::Error::from)?;
                ok &= good;
                lines.push(format!(
                    "oracle ({name}): {}",
                    if good { "ok" } else { "FAILED" }
                ));
            }
            return finish(lines, ok, false);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("normforge: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("normforge: {e:#}");
            ExitCode::from(2)
        }
    }
}
