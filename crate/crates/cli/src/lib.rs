//! Command-line front end. [`run`] returns the exit code and the text for
//! stdout and stderr so that tests can drive it in-process.

pub mod suites;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use nilharm::cz::{self, PseudoDistance};
use nilharm::io;
use nilharm::lie::{derivation_space, is_characteristically_nilpotent, jordan_holder_flag, CharNilpotency};
use nilharm::orbit::OrbitData;
use nilharm::rational::{format_rational, int, parse_rational, random_vec, unit_vec};
use nilharm::report::Report;
use nilharm::seed::{Streams, DEFAULT_SEED};
use nilharm::symplectic::{central_extension, first_cocycle_violation, graph_lie_algebra, symplectic_exists_graph};
use nilharm::twist::{
    delta_action, symbols, twisted_convolve, twisted_convolve_direct, verify_pedersen_identities, Grid,
    PedersenCalculus, PredualGroup, SampledSymbol,
};
use nilharm::{catalog, Error, LieAlgebra, Rational};

#[derive(Parser, Debug)]
#[command(name = "nilharm", version, about = "Nilpotent Lie algebras, twisted convolution and twisted CZ checks")]
pub struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, env = "NILHARM_SEED")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a Lie algebra given as a JSON file or a catalog name.
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Central extension by a 2-cocycle.
    Extend {
        algebra: String,
        form: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-step algebra of a graph.
    GraphLie {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Built-in algebras: abelian(n), h3, g0st, nonhomog, triangle and extensions.
    Catalog {
        name: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: String,
        /// Extra certification: `charnilp`.
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coadjoint orbit data for a functional.
    Orbit {
        #[arg(long, default_value = "h3")]
        algebra: String,
        /// Comma-separated rationals; defaults to the first dual basis vector.
        #[arg(long, allow_hyphen_values = true)]
        xi0: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Twisted convolution and the Heisenberg Pedersen calculus.
    Twist {
        #[command(subcommand)]
        op: TwistOp,
    },
    /// Twisted Calderón-Zygmund checks.
    Cz {
        #[command(subcommand)]
        op: CzOp,
    },
    /// Run a verification suite: exact, examples, pedersen, cz, multiplier.
    Report { suite: String },
}

#[derive(Subcommand, Debug)]
pub enum AlgebraOp {
    Validate { source: String },
    Series { source: String },
    Flag { source: String },
    Derivations { source: String },
    Charnilp { source: String },
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    #[arg(long, default_value = "h3")]
    pub algebra: String,
    #[arg(long, allow_hyphen_values = true)]
    pub xi0: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum TwistOp {
    /// `a *_e b` on a shared grid.
    Conv {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Force the direct double sum.
        #[arg(long)]
        direct: bool,
    },
    /// `φ *_e δ_v`.
    Delta {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pedersen identities for one symbol (and optionally a second factor).
    Pedersen {
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// Full identity suite on built-in Hermite-Gaussian symbols.
    Verify {
        #[arg(long, default_value = "h3")]
        catalog: String,
        #[arg(long, default_value = "8,128")]
        grid: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CzArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value = "8,128")]
    pub grid: String,
    /// Symbol file whose real part is the input function.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Built-in test function 0, 1 or 2 when no input file is given.
    #[arg(long, default_value_t = 0)]
    pub test: usize,
}

#[derive(Subcommand, Debug)]
pub enum CzOp {
    Cover {
        #[command(flatten)]
        common: CzArgs,
        #[arg(long)]
        alpha: f64,
    },
    Decompose {
        #[command(flatten)]
        common: CzArgs,
        #[arg(long)]
        alpha: f64,
    },
    /// Twisted Hörmander integral of a kernel.
    KernelCheck {
        #[command(flatten)]
        common: CzArgs,
        /// Kernel symbol file; default `|x|^{-3}` on `1 < |x| < 4`.
        #[arg(long)]
        kernel: Option<PathBuf>,
        /// Defaults to `4 C_m`.
        #[arg(long)]
        c2: Option<f64>,
    },
    /// Empirical weak-(1,1) ratios.
    Weak11 {
        #[command(flatten)]
        common: CzArgs,
        /// Kernel symbol file; default `|x|^{-2}` on `0.5 < |x| < 4`.
        #[arg(long)]
        kernel: Option<PathBuf>,
        #[arg(long, default_value = "0.125,0.25,0.5,1")]
        alpha: String,
    },
    /// Pedersen multiplier identities for `u` (Heisenberg only).
    Multiplier {
        #[arg(long, default_value = "8,128")]
        grid: String,
        /// Multiplier symbol file; default an approximate identity of width 0.1.
        #[arg(long)]
        symbol: Option<PathBuf>,
    },
}

/// Exit status with captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

/// 2 for bad flags or arguments, 3 for unreadable or malformed files, 1 otherwise.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Parse(_) => 3,
        Error::InvalidGrid(_)
        | Error::AlphaNonPositive(_)
        | Error::C2TooSmall { .. }
        | Error::DimensionNot2(_)
        | Error::ZeroParameter
        | Error::PairingNotOne(_)
        | Error::GridMismatch => 2,
        Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. } => 2,
        _ => 1,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let mut report = Report::new(command, seed);
    match dispatch(cli.command, seed, &mut report) {
        Ok(()) => Outcome {
            code: if report.passed() { 0 } else { 1 },
            stdout: report.to_json(),
            stderr: report.failures().map(|c| format!("check failed: {}\n", c.name)).collect(),
        },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Core(e)) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: Command, seed: u64, r: &mut Report) -> CliResult<()> {
    match cmd {
        Command::Algebra { op } => algebra(op, r),
        Command::Extend { algebra, form, out } => extend(&algebra, &form, out.as_deref(), r),
        Command::GraphLie { graph, out } => graph_lie(&graph, out.as_deref(), r),
        Command::Catalog { name, s, t, a, b, check, out } => {
            catalog_cmd(&name, [&s, &t, &a, &b], check.as_deref(), out.as_deref(), r)
        }
        Command::Orbit { algebra, xi0, samples } => orbit(&algebra, xi0.as_deref(), samples, seed, r),
        Command::Twist { op } => twist(op, r),
        Command::Cz { op } => cz_cmd(op, seed, r),
        Command::Report { suite } => match suites::run_suite(&suite, seed) {
            Some(res) => {
                let mut full = res?;
                full.command = r.command.clone();
                *r = full;
                Ok(())
            }
            None => usage(format!("unknown suite {suite}; expected one of {}", suites::SUITES.join(", "))),
        },
    }
}

fn load_algebra(source: &str) -> CliResult<(LieAlgebra, String)> {
    let path = Path::new(source);
    if path.exists() || source.ends_with(".json") {
        return Ok((io::read_algebra(path)?, source.to_string()));
    }
    match catalog::by_name(source) {
        Some(a) => Ok((a, source.to_string())),
        None => usage(format!("{source} is neither a file nor a catalog name")),
    }
}

fn rationals(text: &str) -> CliResult<Vec<Rational>> {
    text.split(',').map(|s| parse_rational(s.trim()).map_err(Failure::Core)).collect()
}

fn floats(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().or_else(|_| usage(format!("{s} is not a number"))))
        .collect()
}

fn grid_flag(text: &str, d: usize) -> CliResult<Grid> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return usage(format!("--grid expects L,N; got {text}"));
    }
    let l: f64 = parts[0].trim().parse().or_else(|_| usage(format!("bad half width {}", parts[0])))?;
    let n: usize = parts[1].trim().parse().or_else(|_| usage(format!("bad point count {}", parts[1])))?;
    Ok(Grid::new(d, l, n)?)
}

fn vec_json(v: &[Rational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

fn basis_json(b: &[Vec<Rational>]) -> Value {
    Value::from(b.iter().map(|v| vec_json(v)).collect::<Vec<_>>())
}

fn write_out<T: serde::Serialize>(out: Option<&Path>, value: &T, r: &mut Report) -> CliResult<()> {
    if let Some(p) = out {
        io::write_json(p, value)?;
        r.data("written", p.display().to_string());
    }
    Ok(())
}

fn algebra(op: AlgebraOp, r: &mut Report) -> CliResult<()> {
    let source = match &op {
        AlgebraOp::Validate { source }
        | AlgebraOp::Series { source }
        | AlgebraOp::Flag { source }
        | AlgebraOp::Derivations { source }
        | AlgebraOp::Charnilp { source } => source.clone(),
    };
    let (alg, id) = match load_algebra(&source) {
        Ok(v) => v,
        Err(Failure::Core(e @ (Error::JacobiViolation { .. } | Error::NotNilpotent { .. }))) => {
            r.holds("structure constants define a nilpotent Lie algebra", false).detail(&e.to_string());
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    r.catalog_id(id);
    r.data("dim", alg.dim());
    match op {
        AlgebraOp::Validate { .. } => {
            r.holds("structure constants define a nilpotent Lie algebra", true);
            r.data("step", alg.nilpotency_step());
        }
        AlgebraOp::Series { .. } => {
            let series = alg.lower_central_series();
            r.data("step", alg.nilpotency_step());
            r.data("dims", series.iter().map(|s| s.dim()).collect::<Vec<_>>());
            r.data("bases", series.iter().map(|s| basis_json(s.basis())).collect::<Vec<_>>());
            r.holds("series ends at zero", series.last().is_some_and(|s| s.is_zero()));
        }
        AlgebraOp::Flag { .. } => {
            let flag = jordan_holder_flag(&alg, None)?;
            let verdict = flag.verify(&alg);
            r.holds("Jordan-Hölder flag invariants", verdict.is_ok());
            if let Err(d) = verdict {
                r.detail(&format!("{d:?}"));
            }
            r.data("basis", basis_json(flag.basis()));
        }
        AlgebraOp::Derivations { .. } => {
            let der = derivation_space(&alg);
            r.data("derivation_dim", der.len());
            r.holds("basis satisfies the Leibniz rule", der.leibniz_defect(&alg).is_none());
            r.holds("closed under commutator", der.is_closed_under_commutator());
            let mats: Vec<Value> = der.basis().iter().map(|m| basis_json(m)).collect();
            r.data("basis", mats);
        }
        AlgebraOp::Charnilp { .. } => charnilp(&alg, r),
    }
    Ok(())
}

fn charnilp(alg: &LieAlgebra, r: &mut Report) {
    let der = derivation_space(alg);
    r.data("derivation_dim", der.len());
    match is_characteristically_nilpotent(alg, &der) {
        CharNilpotency::Nilpotent { flag } => {
            r.holds("every derivation is nilpotent", true);
            r.data("engel_flag", basis_json(&flag));
        }
        CharNilpotency::NotNilpotent { stage, partial_flag } => {
            r.holds("every derivation is nilpotent", false)
                .detail(&format!("no common kernel vector beyond dimension {stage}"));
            r.data("partial_flag", basis_json(&partial_flag));
        }
    }
}

fn extension_checks(base: &LieAlgebra, ext: &LieAlgebra, r: &mut Report) {
    r.holds("extension center has dimension 1", ext.center().dim() == 1);
    r.holds("step increases by 1", ext.nilpotency_step() == base.nilpotency_step() + 1);
    r.data("extension", serde_json::to_value(io::algebra_to_json(ext)).expect("serializable"));
}

fn extend(source: &str, form: &Path, out: Option<&Path>, r: &mut Report) -> CliResult<()> {
    let (alg, id) = load_algebra(source)?;
    r.catalog_id(id);
    let omega = io::form_from_json(&io::read_json(form)?)?;
    if let Some((i, j, k)) = first_cocycle_violation(&alg, &omega)? {
        r.holds("form is a 2-cocycle", false).detail(&format!("violated on (X{}, X{}, X{})", i + 1, j + 1, k + 1));
        return Ok(());
    }
    r.holds("form is a 2-cocycle", true);
    r.measured("form nondegenerate", omega.is_nondegenerate());
    let ext = central_extension(&alg, &omega)?;
    extension_checks(&alg, &ext, r);
    write_out(out, &io::algebra_to_json(&ext), r)
}

fn graph_lie(path: &Path, out: Option<&Path>, r: &mut Report) -> CliResult<()> {
    let g = io::graph_from_json(&io::read_json(path)?)?;
    let alg = graph_lie_algebra(&g);
    r.data("dim", alg.dim());
    r.data("step", alg.nilpotency_step());
    r.data("components", g.components().iter().map(|&(v, e)| json!({"vertices": v, "edges": e})).collect::<Vec<_>>());
    r.measured("symplectic structure exists", symplectic_exists_graph(&g));
    r.data("algebra", serde_json::to_value(io::algebra_to_json(&alg)).expect("serializable"));
    write_out(out, &io::algebra_to_json(&alg), r)
}

fn catalog_cmd(name: &str, params: [&String; 4], check: Option<&str>, out: Option<&Path>, r: &mut Report) -> CliResult<()> {
    let p = |s: &String| parse_rational(s).map_err(Failure::Core);
    let (s, t, a, b) = (p(params[0])?, p(params[1])?, p(params[2])?, p(params[3])?);
    r.catalog_id(name);
    let alg = match name {
        "g0st" => {
            let (alg, form) = catalog::g0st(s.clone(), t.clone())?;
            r.data("s", format_rational(&s)).data("t", format_rational(&t));
            r.holds("form is a 2-cocycle", first_cocycle_violation(&alg, &form)?.is_none());
            r.holds("form nondegenerate", form.is_nondegenerate());
            r.data("form", serde_json::to_value(io::form_to_json(&form)).expect("serializable"));
            alg
        }
        "ext-g0st" => catalog::ext_g0st(s, t)?,
        "ext-nonhomog" => catalog::ext_nonhomog(a, b)?,
        "nonhomog-form" => {
            let form = catalog::nonhomog_form(a.clone(), b.clone());
            let alg = catalog::nonhomog();
            r.holds("form is a 2-cocycle", first_cocycle_violation(&alg, &form)?.is_none());
            r.measured("form nondegenerate", form.is_nondegenerate());
            r.data("form", serde_json::to_value(io::form_to_json(&form)).expect("serializable"));
            alg
        }
        other => match catalog::by_name(other) {
            Some(alg) => alg,
            None => return usage(format!("unknown catalog entry {other}")),
        },
    };
    r.data("dim", alg.dim()).data("step", alg.nilpotency_step());
    match check {
        None => {}
        Some("charnilp") => charnilp(&alg, r),
        Some(c) => return usage(format!("unknown check {c}; expected charnilp")),
    }
    r.data("algebra", serde_json::to_value(io::algebra_to_json(&alg)).expect("serializable"));
    write_out(out, &io::algebra_to_json(&alg), r)
}

fn orbit_data(args: &GroupArgs) -> CliResult<OrbitData> {
    let (alg, _) = load_algebra(&args.algebra)?;
    let xi0 = match &args.xi0 {
        Some(s) => rationals(s)?,
        None => unit_vec(alg.dim(), 0),
    };
    if xi0.len() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: xi0.len() }.into());
    }
    Ok(OrbitData::new(&alg, &xi0)?)
}

fn orbit(source: &str, xi0: Option<&str>, samples: usize, seed: u64, r: &mut Report) -> CliResult<()> {
    let args = GroupArgs { algebra: source.to_string(), xi0: xi0.map(str::to_string) };
    let o = orbit_data(&args)?;
    r.catalog_id(source);
    r.data("e", o.jump_set().to_vec()).data("d", o.d()).data("flat", o.is_flat());
    r.data("isotropy", basis_json(o.isotropy().basis()));
    r.data("flag", basis_json(o.flag().basis()));
    r.measured("flat", o.is_flat());
    let det = o.direct_sum_determinant();
    r.holds("isotropy and predual span the algebra", det != int(0));
    if o.is_flat() {
        let mut rng = Streams::new(seed).stream("orbit/cocycle");
        let d = o.d();
        let mut ok = true;
        for _ in 0..samples {
            let (x, y, z) = (random_vec(&mut rng, d, 3, 4), random_vec(&mut rng, d, 3, 4), random_vec(&mut rng, d, 3, 4));
            ok &= o.gamma_identities(&x, &y, &z)?.exact.iter().all(|&b| b);
        }
        r.holds(&format!("cocycle identities exact on {samples} samples"), ok);
    } else {
        r.skipped("cocycle identities", "orbit is not flat");
    }
    Ok(())
}

fn group_of(args: &GroupArgs) -> CliResult<PredualGroup> {
    Ok(PredualGroup::from_orbit(&orbit_data(args)?)?)
}

fn read_symbol(p: &Path) -> CliResult<SampledSymbol> {
    Ok(io::symbol_from_json(&io::read_json(p)?)?)
}

fn heisenberg_calc(grid: &Grid) -> CliResult<PedersenCalculus> {
    if grid.d() != 2 {
        return Err(Error::DimensionNot2(grid.d()).into());
    }
    Ok(PedersenCalculus::calibrate(grid.half_width(), grid.points_per_axis())?)
}

fn on_plane(s: &SampledSymbol, calc: &PedersenCalculus) -> SampledSymbol {
    s.with_grid_measure(calc.plane().measure())
}

fn twist(op: TwistOp, r: &mut Report) -> CliResult<()> {
    match op {
        TwistOp::Conv { group, a, b, out, direct } => {
            let g = group_of(&group)?;
            r.catalog_id(group.algebra.clone());
            let (a, b) = (read_symbol(&a)?, read_symbol(&b)?);
            let c = if direct { twisted_convolve_direct(&g, &a, &b)? } else { twisted_convolve(&g, &a, &b)? };
            r.measured("|a|_2", a.l2_norm()).measured("|b|_2", b.l2_norm()).measured("|a * b|_2", c.l2_norm());
            r.data("fast_path", !direct && g.is_additive() && g.bilinear_alpha().is_some());
            write_out(out.as_deref(), &io::symbol_to_json(&c), r)
        }
        TwistOp::Delta { group, symbol, shift, out } => {
            let g = group_of(&group)?;
            r.catalog_id(group.algebra.clone());
            let phi = read_symbol(&symbol)?;
            let v = floats(&shift)?;
            let res = delta_action(&g, &phi, &v)?;
            r.measured("|phi|_2", phi.l2_norm()).measured("|phi * delta_v|_2", res.l2_norm());
            write_out(out.as_deref(), &io::symbol_to_json(&res), r)
        }
        TwistOp::Pedersen { symbol, other } => {
            let b = read_symbol(&symbol)?;
            let calc = heisenberg_calc(b.grid())?;
            let g = suites::h3_group()?;
            r.catalog_id("h3");
            let b = on_plane(&b, &calc);
            let a = match other {
                Some(p) => on_plane(&read_symbol(&p)?, &calc),
                None => b.clone(),
            };
            let res = verify_pedersen_identities(&calc, &g, &a, &b)?;
            r.at_most("trace identity", res.trace, 1e-3);
            r.at_most("HS isometry relative error", res.isometry, 1e-3);
            r.at_most("adjoint identity HS residual", res.adjoint, 1e-8);
            r.at_most("homomorphism residual", res.homomorphism, 1e-3);
            Ok(())
        }
        TwistOp::Verify { catalog: name, grid } => {
            let alg = catalog::by_name(&name).ok_or_else(|| Failure::Usage(format!("unknown catalog entry {name}")))?;
            let o = OrbitData::new(&alg, &unit_vec(alg.dim(), 0))?;
            if o.d() != 2 {
                return Err(Error::DimensionNot2(o.d()).into());
            }
            let g = grid_flag(&grid, 2)?;
            suites::pedersen_at(r, g.half_width(), g.points_per_axis())?;
            Ok(())
        }
    }
}

fn cz_input(common: &CzArgs, grid: &Grid) -> CliResult<Vec<f64>> {
    match &common.input {
        Some(p) => {
            let s = read_symbol(p)?;
            grid.check(s.grid()).map_err(|_| Failure::Usage("input grid differs from --grid".into()))?;
            let f: Vec<f64> = s.values().iter().map(|v| v.re).collect();
            if f.iter().any(|v| *v < 0.0) {
                return usage("input function must be nonnegative");
            }
            Ok(f)
        }
        None => {
            let mut fs = suites::cz_test_functions(grid);
            if common.test >= fs.len() {
                return usage(format!("--test must be below {}", fs.len()));
            }
            Ok(fs.swap_remove(common.test).1)
        }
    }
}

fn cz_setup(common: &CzArgs, seed: u64, r: &mut Report) -> CliResult<(PredualGroup, PseudoDistance, Grid)> {
    let g = group_of(&common.group)?;
    r.catalog_id(common.group.algebra.clone());
    let m = suites::calibrated_metric(&g, seed)?;
    r.measured("pseudo-distance C_m", m.c_m()).measured("doubling constant", m.doubling());
    let grid = grid_flag(&common.grid, g.d())?;
    Ok((g, m, grid))
}

fn cz_cmd(op: CzOp, seed: u64, r: &mut Report) -> CliResult<()> {
    match op {
        CzOp::Cover { common, alpha } | CzOp::Decompose { common, alpha } if alpha.is_nan() || alpha <= 0.0 => {
            let _ = common;
            Err(Error::AlphaNonPositive(alpha).into())
        }
        CzOp::Cover { common, alpha } => {
            let (_, m, grid) = cz_setup(&common, seed, r)?;
            let f = cz_input(&common, &grid)?;
            let cov = cz::cz_cover(&f, alpha, &m, &grid)?;
            cover_report(&cov, &grid, r);
            Ok(())
        }
        CzOp::Decompose { common, alpha } => {
            let (g, m, grid) = cz_setup(&common, seed, r)?;
            let f = cz_input(&common, &grid)?;
            let cov = cz::cz_cover(&f, alpha, &m, &grid)?;
            cover_report(&cov, &grid, r);
            let dec = cz::cz_decompose(&f, Some(&cov), &g, &grid)?;
            let c = dec.checks;
            r.at_most("reconstruction f = g + sum b_i", c.reconstruction, 1e-12);
            r.at_most("twisted mean zero / |f|_1", c.mean_zero, 1e-12);
            r.holds("bad parts supported in their balls", c.support_contained);
            r.holds("C'' finite", c.c_double_prime.is_finite());
            r.measured("max|g| / alpha", c.good_sup_ratio);
            r.measured("|g|_1 / |f|_1", c.good_l1_ratio);
            r.measured("sum |b_i|_1 / |f|_1", c.bad_l1_ratio);
            r.measured("C''", c.c_double_prime);
            Ok(())
        }
        CzOp::KernelCheck { common, kernel, c2 } => {
            let (_, m, grid) = cz_setup(&common, seed, r)?;
            let k = match kernel {
                Some(p) => read_symbol(&p)?,
                None => cz::truncated_power(grid, 3.0, 1.0, 4.0),
            };
            let c2 = c2.unwrap_or(4.0 * m.c_m());
            let e = cz::hormander_twist_estimate(&k, &m, c2, &grid)?;
            r.measured("C2", e.c2);
            r.measured("Hörmander twist estimate", e.value);
            r.holds("estimate finite", e.value.is_finite());
            r.data("argmax", e.argmax.map_or(Value::Null, Value::from));
            r.data("admissible_u", e.samples);
            Ok(())
        }
        CzOp::Weak11 { common, kernel, alpha } => {
            let (g, _, grid) = cz_setup(&common, seed, r)?;
            let k = match kernel {
                Some(p) => read_symbol(&p)?,
                None => cz::truncated_power(grid, 2.0, 0.5, 4.0),
            };
            let f = match &common.input {
                Some(_) => {
                    let v = cz_input(&common, &grid)?;
                    SampledSymbol::from_values(grid, v.into_iter().map(|x| Complex64::new(x, 0.0)).collect())?
                }
                None => symbols::approximate_identity(grid, vec![0.0; grid.d()], 0.15),
            };
            let levels = floats(&alpha)?;
            if let Some(&a) = levels.iter().find(|a| a.is_nan() || **a <= 0.0) {
                return Err(Error::AlphaNonPositive(a).into());
            }
            let w = cz::weak11_empirical(&g, &k, &f, &levels)?;
            for l in &w.levels {
                r.measured(&format!("ratio at alpha = {}", l.alpha), l.ratio);
            }
            r.measured("empirical A_1", w.a1);
            r.at_most("ratio spread across levels", w.spread, 4.0);
            r.holds("2f / 2 alpha scaling exact", cz::weak11_scaling_check(&g, &k, &f, &levels)?);
            Ok(())
        }
        CzOp::Multiplier { grid, symbol } => {
            let grid = grid_flag(&grid, 2)?;
            let calc = heisenberg_calc(&grid)?;
            let g = suites::h3_group()?;
            r.catalog_id("h3");
            let u = match symbol {
                Some(p) => on_plane(&read_symbol(&p)?, &calc),
                None => symbols::approximate_identity(*calc.plane(), vec![0.0, 0.0], 0.1),
            };
            let fam = symbols::hermite_family(*calc.plane());
            let rep = cz::multiplier_check(&calc, &g, &u, &fam)?;
            let max = |v: &[f64]| v.iter().cloned().fold(0.0, f64::max);
            r.at_most("T(C_M phi) = M T(phi) residual", max(&rep.definition), 1e-2);
            r.at_most("C_M(phi * psi) = (C_M phi) * psi residual", max(&rep.associativity), 1e-2);
            r.at_most("left-delta superposition route residual", max(&rep.superposition), 1e-2);
            r.at_most("agreement with Pedersen identity checker", rep.route_agreement, 1e-10);
            r.measured("|M T(phi) - T(phi)| / |T(phi)|", max(&rep.identity_defect));
            for (p, ratio) in cz::lp_ratios(&g, &u, &fam, &[1.25, 1.5, 2.0])? {
                r.measured(&format!("L^{p} ratio"), ratio);
            }
            r.measured("|u|_1", u.l1_norm());
            Ok(())
        }
    }
}

fn cover_report(cov: &cz::Covering, grid: &Grid, r: &mut Report) {
    r.holds("f <= alpha off the balls", cov.covers_level_set);
    r.holds("C' finite", cov.c_prime.is_finite());
    r.measured("C'", cov.c_prime);
    r.measured("overlap M", cov.overlap);
    r.measured("balls", cov.balls.len());
    r.measured("repaired balls", cov.repaired);
    r.measured("min ball average / alpha", cov.min_average_ratio);
    let balls: Vec<Value> = cov
        .balls
        .iter()
        .map(|b| json!({"center": grid.point(b.center), "radius": b.radius, "nodes": b.members.len()}))
        .collect();
    r.data("balls", balls);
}
