use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tgwa::equivalence::find_signed_permutation;
use tgwa::multiquiver::{actual_orbit_count, one_sided_rows, row_gcds, stated_orbit_count};
use tgwa::problem::{self, EquivMap, Form, Problem};
use tgwa::{
    apply_linear, build_solution, check_binary, check_equivalence, check_non_symmetric, check_ternary, classify,
    decode, decompose, encode, factor_by_residue, parse_poly, random_config, render_svg, support_pair, symmetrize,
    symmetrized_solution, unsymmetrize, validate, validate_beta, AutomorphismSpec, CheckReport, RenderOptions,
    SolutionTuple,
};

#[derive(Parser)]
#[command(name = "tgwa", version, about = "Consistency equations, orbital factorization and vertex configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Sym,
    Nonsym,
}

#[derive(Subcommand)]
enum Command {
    /// Check tuples against the consistency equations and configurations
    /// against conservation. Exit 0 on pass, 1 on failure.
    Verify {
        file: PathBuf,
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long)]
        config: Option<String>,
        /// Override the form declared in the file.
        #[arg(long, value_enum)]
        form: Option<FormArg>,
    },
    /// Write the symmetrized tuple (or, with --inverse, the non-symmetric one) as a problem file.
    Symmetrize {
        file: PathBuf,
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long)]
        inverse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print orbital pieces with generators, stabilizers and support pairs.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        tuple: Option<String>,
    },
    /// Encode a single orbital piece as a vertex configuration.
    Encode {
        file: PathBuf,
        #[arg(long)]
        tuple: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decode a vertex configuration to a factored solution.
    Decode {
        file: PathBuf,
        #[arg(long)]
        config: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify a monic solution: one configuration per orbit.
    Classify {
        file: PathBuf,
        #[arg(long)]
        tuple: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the multiquiver solutions of a beta matrix.
    Multiquiver {
        #[arg(long)]
        beta: PathBuf,
    },
    /// Draw a configuration as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        config: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the equivalence declared in the [equiv] section. Exit 0 if equivalent, 1 if not.
    Equiv { file: PathBuf },
    /// Generate a reproducible random configuration.
    GenRandom {
        /// File providing alpha (and the orbit, with --orbit).
        file: PathBuf,
        /// Name of a configuration in the file whose generator and pair are reused.
        #[arg(long, conflicts_with_all = ["generator", "pair"])]
        orbit: Option<String>,
        #[arg(long, requires = "pair")]
        generator: Option<String>,
        /// One-based index pair, e.g. 1,2.
        #[arg(long, value_delimiter = ',')]
        pair: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        loops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<Problem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Problem::from_toml(&text).with_context(|| format!("loading {}", path.display()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_tuple(t: &SolutionTuple, form: Form) -> CheckReport {
    match form {
        Form::Sym => check_binary(t).merge(check_ternary(t)),
        Form::Nonsym => check_non_symmetric(t),
    }
}

fn form_name(form: Form) -> &'static str {
    match form {
        Form::Sym => "sym",
        Form::Nonsym => "nonsym",
    }
}

fn print_report(label: &str, report: &CheckReport) -> bool {
    println!("{label}: {}", report.to_string().trim_end());
    report.passed()
}

fn verify(file: &Path, tuple: Option<&str>, config: Option<&str>, form: Option<FormArg>) -> Result<bool> {
    let p = load(file)?;
    let mut ok = true;
    let pick_all = tuple.is_none() && config.is_none();
    let tuples: Vec<_> = match tuple {
        Some(n) => vec![(n.to_string(), p.tuple(Some(n))?)],
        None if pick_all => p.tuples.iter().map(|(k, v)| (k.clone(), v)).collect(),
        None => vec![],
    };
    for (name, t) in tuples {
        let f = match form {
            Some(FormArg::Sym) => Form::Sym,
            Some(FormArg::Nonsym) => Form::Nonsym,
            None => t.form,
        };
        ok &= print_report(&format!("tuple {name} ({})", form_name(f)), &check_tuple(&t.tuple, f));
    }
    let configs: Vec<_> = match config {
        Some(n) => vec![(n.to_string(), p.config(Some(n))?)],
        None if pick_all => p.configs.iter().map(|(k, v)| (k.clone(), v)).collect(),
        None => vec![],
    };
    for (name, c) in configs {
        let mut report = validate(c);
        if report.passed() {
            let piece = decode(c)?;
            report = check_binary(&piece.solution).merge(check_ternary(&piece.solution));
        }
        ok &= print_report(&format!("config {name}"), &report);
    }
    if pick_all && p.tuples.is_empty() && p.configs.is_empty() {
        bail!("nothing to verify: the file has no tuples and no configs");
    }
    Ok(ok)
}

fn symmetrize_cmd(file: &Path, tuple: Option<&str>, inverse: bool, output: Option<&Path>) -> Result<()> {
    let p = load(file)?;
    let t = p.tuple(tuple)?;
    let (out, form, name) = if inverse {
        (unsymmetrize(&t.tuple), Form::Nonsym, "nonsym")
    } else {
        (symmetrize(&t.tuple), Form::Sym, "sym")
    };
    let mut raw = problem::raw_system(out.sys());
    raw.tuples.insert(name.into(), problem::raw_tuple(&out, form, false));
    emit(&problem::to_toml(&raw), output)
}

fn decompose_cmd(file: &Path, tuple: Option<&str>) -> Result<()> {
    let p = load(file)?;
    let t = &p.tuple(tuple)?.tuple;
    let pieces = decompose(t)?;
    println!("{} orbital piece(s)", pieces.len());
    for (k, piece) in pieces.iter().enumerate() {
        println!("piece {}:", k + 1);
        println!("  generator: {}", piece.generator());
        println!("  stabilizer on all indices: {}", piece.orbit.stabilizer());
        match support_pair(piece) {
            Ok(s) => println!("  support: {s}"),
            Err(e) => println!("  support: none ({e})"),
        }
        for (i, e) in piece.solution.entries().iter().enumerate() {
            println!("  p{} = {e}", i + 1);
        }
    }
    Ok(())
}

fn encode_cmd(file: &Path, tuple: Option<&str>, output: Option<&Path>) -> Result<()> {
    let p = load(file)?;
    let t = &p.tuple(tuple)?.tuple;
    let pieces = decompose(t)?;
    let [piece] = &pieces[..] else {
        bail!("the tuple has {} orbital pieces; encode takes one (use classify for several)", pieces.len());
    };
    let c = encode(piece)?;
    let mut raw = problem::raw_system(t.sys());
    raw.configs.insert("config".into(), problem::raw_config(&c));
    emit(&problem::to_toml(&raw), output)
}

fn decode_cmd(file: &Path, config: Option<&str>, output: Option<&Path>) -> Result<()> {
    let p = load(file)?;
    let c = p.config(config)?;
    let piece = decode(c)?;
    let mut raw = problem::raw_system(c.sys());
    raw.tuples.insert("decoded".into(), problem::raw_tuple(&piece.solution, Form::Sym, false));
    emit(&problem::to_toml(&raw), output)
}

fn classify_cmd(file: &Path, tuple: Option<&str>, output: Option<&Path>) -> Result<()> {
    let p = load(file)?;
    let t = &p.tuple(tuple)?.tuple;
    let record = classify(t)?;
    let mut text = String::new();
    for (k, e) in record.entries.iter().enumerate() {
        text.push_str(&format!(
            "# piece{}: orbit of {} on {{{}, {}}}, lattice {}\n",
            k + 1,
            e.orbit.generator(),
            e.pair.0 + 1,
            e.pair.1 + 1,
            e.config.lattice()
        ));
    }
    text.push_str(&problem::to_toml(&problem::raw_classification(t.sys(), &record)));
    emit(&text, output)
}

fn show(label: &str, t: &SolutionTuple) {
    println!("{label}:");
    for (i, e) in t.entries().iter().enumerate() {
        println!("  {} = {e}", i + 1);
    }
}

fn multiquiver_cmd(file: &Path) -> Result<()> {
    let p = load(file)?;
    let beta = p.beta.as_ref().ok_or_else(|| anyhow!("{} has no beta matrix", file.display()))?;
    let report = validate_beta(beta);
    if !report.passed() {
        println!("beta: {report}");
        bail!("beta violates the sign condition");
    }
    let one_sided = one_sided_rows(beta);
    if !one_sided.is_empty() {
        let rows: Vec<String> = one_sided.iter().map(|j| (j + 1).to_string()).collect();
        println!("warning: rows {} have a single nonzero entry (one-sided families)", rows.join(", "));
    }
    let t = build_solution(beta)?;
    show("t (non-symmetric)", &t);
    println!("  check: {}", check_non_symmetric(&t));
    let q = symmetrized_solution(beta)?;
    show("q (symmetrized)", &q);
    println!("  check: {}", check_binary(&q).merge(check_ternary(&q)));
    let gcds: Vec<String> = row_gcds(beta)?.iter().map(i64::to_string).collect();
    println!("row gcds: {}", gcds.join(", "));
    println!("orbits: {} (product of row gcds: {})", actual_orbit_count(beta)?, stated_orbit_count(beta)?);
    match factor_by_residue(beta) {
        Ok(pieces) => {
            for (k, piece) in pieces.iter().enumerate() {
                show(&format!("residue piece {} (generator {})", k + 1, piece.generator()), &piece.solution);
            }
        }
        Err(e) => println!("residue factorization: {e}"),
    }
    Ok(())
}

fn render_cmd(file: &Path, config: Option<&str>, output: &Path) -> Result<()> {
    let p = load(file)?;
    let c = p.config(config)?;
    let report = validate(c);
    if !report.passed() {
        bail!("configuration is invalid: {report}");
    }
    emit(&render_svg(c, &RenderOptions::default()), Some(output))
}

fn equiv_cmd(file: &Path) -> Result<bool> {
    let p = load(file)?;
    let spec = p.equiv.as_ref().ok_or_else(|| anyhow!("{} has no [equiv] section", file.display()))?;
    let a = &p.tuple(Some(&spec.a))?.tuple;
    let b = &p.tuple(Some(&spec.b))?.tuple;
    let psi = match &spec.map {
        EquivMap::Explicit(psi) => psi.clone(),
        EquivMap::Linear(g) => AutomorphismSpec::linear(g)?,
        EquivMap::Search => match find_signed_permutation(a, b)? {
            Some(g) => {
                println!("found g = {g}");
                AutomorphismSpec::linear(&g)?
            }
            None => {
                println!("no signed permutation matrix maps {} to {}", spec.a, spec.b);
                return Ok(false);
            }
        },
    };
    if let EquivMap::Linear(g) = &spec.map {
        let image = apply_linear(g, a)?;
        println!("g applied to {}: alpha' = {}", spec.a, image.sys().alpha());
    }
    Ok(print_report(&format!("{} ~ {}", spec.a, spec.b), &check_equivalence(&psi, a, b)))
}

#[allow(clippy::too_many_arguments)]
fn gen_random_cmd(
    file: &Path,
    orbit: Option<&str>,
    generator: Option<&str>,
    pair: Option<&[usize]>,
    loops: usize,
    seed: u64,
    output: Option<&Path>,
) -> Result<()> {
    let p = load(file)?;
    let sys = p.system()?;
    let (g, pr) = match (orbit, generator, pair) {
        (Some(name), None, None) => {
            let c = p.config(Some(name))?;
            (c.generator().clone(), c.pair())
        }
        (None, Some(g), Some(&[i, j])) if i >= 1 && j >= 1 => (parse_poly(g, sys.m())?, (i - 1, j - 1)),
        _ => bail!("give --orbit NAME, or --generator EXPR with --pair I,J (one-based)"),
    };
    let c = random_config(sys, g, pr, loops, seed)?;
    let mut raw = problem::raw_system(sys);
    raw.configs.insert("random".into(), problem::raw_config(&c));
    emit(&problem::to_toml(&raw), output)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { file, tuple, config, form } => verify(&file, tuple.as_deref(), config.as_deref(), form),
        Command::Symmetrize { file, tuple, inverse, output } => {
            symmetrize_cmd(&file, tuple.as_deref(), inverse, output.as_deref()).map(|_| true)
        }
        Command::Decompose { file, tuple } => decompose_cmd(&file, tuple.as_deref()).map(|_| true),
        Command::Encode { file, tuple, output } => encode_cmd(&file, tuple.as_deref(), output.as_deref()).map(|_| true),
        Command::Decode { file, config, output } => {
            decode_cmd(&file, config.as_deref(), output.as_deref()).map(|_| true)
        }
        Command::Classify { file, tuple, output } => {
            classify_cmd(&file, tuple.as_deref(), output.as_deref()).map(|_| true)
        }
        Command::Multiquiver { beta } => multiquiver_cmd(&beta).map(|_| true),
        Command::Render { file, config, output } => render_cmd(&file, config.as_deref(), &output).map(|_| true),
        Command::Equiv { file } => equiv_cmd(&file),
        Command::GenRandom { file, orbit, generator, pair, loops, seed, output } => gen_random_cmd(
            &file,
            orbit.as_deref(),
            generator.as_deref(),
            pair.as_deref(),
            loops,
            seed,
            output.as_deref(),
        )
        .map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
