//! Command-line front end for the nilpotent differential kernel.
//!
//! Exit codes: 0 success, 1 mathematical failure (broken axiom, nonzero
//! residual, failed variational check), 2 input error (unreadable or
//! malformed fixture, out-of-range parameters), 3 internal invariant
//! breach (the recurrence and the path-sum oracle disagree).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ndga_core::dqm::{self, AdjacencyGraph, LGraph};
use ndga_core::fixture::{
    self, complex_from_fixture, dga_from_fixture, fixture_from_complex, fixture_from_dga,
    fixture_to_json, ComplexFixture,
};
use ndga_core::ncomplex::{nilpotency_order, tensor_complex};
use ndga_core::ndga::tensor_dga;
use ndga_core::{cs, gallery, mc, CoreError, MultiIndex, NComplex};

#[derive(Parser)]
#[command(name = "ndga", version, about = "Exact computations with N-complexes and N-dgas")]
struct Cli {
    /// Output format for reports (fixture-emitting commands always print JSON).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a complex or algebra fixture.
    Verify {
        /// Fixture file (JSON).
        fixture: PathBuf,
    },
    /// Generalized cohomology dimensions ker d^p / im d^{N-p}.
    Cohomology {
        /// Fixture file (JSON); must describe a complex or algebra.
        fixture: PathBuf,
        /// Kernel exponent p, 1 <= p < N.
        #[arg(long)]
        p: Option<u32>,
        /// Degree i of the component.
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
        /// Sweep all p and all supported degrees.
        #[arg(long, conflicts_with_all = ["p", "degree"])]
        all: bool,
    },
    /// The expansion of (d+e)^N into terms c(s,N) e^(s) d^(N(s)).
    Mc(McArgs),
    /// Cyclic functionals of weight K and their variational check.
    Cs {
        /// Weight K >= 1 of the functional.
        #[arg(long)]
        weight: u32,
        /// Also test that the variation lies in the span of the cyclic relations.
        #[arg(long)]
        variational: bool,
    },
    /// Path kernels of weighted digraphs.
    Kernel(KernelArgs),
    /// Tensor two fixtures and emit the product fixture.
    Tensor {
        /// Left factor fixture (JSON).
        left: PathBuf,
        /// Right factor fixture (JSON).
        right: PathBuf,
        /// Write the result here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit a built-in example as a fixture.
    ExportGallery {
        /// Name: chain1..chain6, grid, or forms-V-M (V vars, total degree cap M).
        name: String,
        /// Write the result here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct McArgs {
    /// Power N of (d+e).
    #[arg(long)]
    order: u32,
    /// Filter order M: keep only terms with every part below M. N >= M >= 1.
    #[arg(long)]
    filter: u32,
    /// List the filtered coefficients c(s,N), zero terms suppressed.
    #[arg(long, conflicts_with_all = ["oracle", "residual"])]
    coeffs: bool,
    /// Compare the recurrence against the path-sum oracle term by term.
    #[arg(long, conflicts_with = "residual")]
    oracle: bool,
    /// Evaluate the residual operator on a complex fixture and a
    /// perturbation fixture (same degrees, `d` holding the entries of e).
    #[arg(long, num_args = 2, value_names = ["FIXTURE", "E_FIXTURE"])]
    residual: Option<Vec<PathBuf>>,
}

#[derive(Args)]
struct KernelArgs {
    /// Weighted digraph fixture ({"edges": [{from, to, weight}]}).
    #[arg(long, conflicts_with = "builtin_l")]
    graph: Option<PathBuf>,
    /// Use the built-in multi-index graph; vertices look like "()", "(0,1)".
    #[arg(long)]
    builtin_l: bool,
    /// Path length n.
    #[arg(long)]
    steps: u32,
    /// Start vertex.
    #[arg(long)]
    from: String,
    /// End vertex.
    #[arg(long)]
    to: String,
}

/// A failed run: message for stderr plus the process exit code.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::Fixture(_) | CoreError::Argument(_) | CoreError::SpaceMismatch(_) => 2,
            CoreError::Containment => 3,
            CoreError::Structural(_) | CoreError::Precondition(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Verify { fixture } => cmd_verify(fixture, cli.format),
        Command::Cohomology { fixture, p, degree, all } => {
            cmd_cohomology(fixture, *p, *degree, *all, cli.format)
        }
        Command::Mc(args) => cmd_mc(args, cli.format),
        Command::Cs { weight, variational } => cmd_cs(*weight, *variational, cli.format),
        Command::Kernel(args) => cmd_kernel(args, cli.format),
        Command::Tensor { left, right, output } => cmd_tensor(left, right, output.as_deref()),
        Command::ExportGallery { name, output } => cmd_export(name, output.as_deref()),
    }
}

/// Reads a fixture file, mapping I/O and JSON problems to exit code 2.
fn load(path: &Path) -> Result<ComplexFixture, Failure> {
    Ok(fixture::read_fixture(path)?)
}

fn emit(json: String, output: Option<&Path>) -> Result<String, Failure> {
    match output {
        None => Ok(json),
        Some(path) => {
            std::fs::write(path, json)
                .map_err(|e| fail(2, format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
    }
}

fn cmd_verify(path: &Path, format: Format) -> Result<String, Failure> {
    let fx = load(path)?;
    let kind = if fx.product.is_some() { "dga" } else { "complex" };
    // Construction already proves d^N = 0 and the degree rules; the
    // algebra path re-checks associativity, Leibniz, and the unit.
    let (complex, violations) = if fx.product.is_some() {
        let algebra = dga_from_fixture(&fx)?;
        let report = algebra.verify();
        if !report.is_valid() {
            let mut msg = String::new();
            for line in report.lines() {
                let _ = writeln!(msg, "{line}");
            }
            return Err(fail(1, msg.trim_end().to_string()));
        }
        (algebra.complex()?, report.lines())
    } else {
        (complex_from_fixture(&fx)?, Vec::new())
    };
    let order = complex.order();
    let realized = nilpotency_order(complex.d(), order)?
        .expect("construction verified d^order = 0");
    let proper = complex.is_proper()?;
    let dim = complex.space().total_dim();
    match format {
        Format::Text => {
            let mut out = String::new();
            let qualifier = if proper { "proper " } else { "" };
            let _ = writeln!(out, "{qualifier}{order}-{kind} on {dim} basis elements");
            let _ = writeln!(out, "smallest vanishing power of d: {realized}");
            if !proper {
                let _ = writeln!(out, "not proper: d^{} = 0 already", order.saturating_sub(1));
            }
            let _ = writeln!(out, "all axioms hold");
            Ok(out)
        }
        Format::Json => {
            let value = serde_json::json!({
                "kind": kind,
                "order": order,
                "basis": dim,
                "proper": proper,
                "smallest_vanishing_power": realized,
                "violations": violations,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))
        }
    }
}

fn load_complex(path: &Path) -> Result<NComplex, Failure> {
    let fx = load(path)?;
    if fx.product.is_some() {
        Ok(dga_from_fixture(&fx)?.complex()?)
    } else {
        Ok(complex_from_fixture(&fx)?)
    }
}

fn cmd_cohomology(
    path: &Path,
    p: Option<u32>,
    degree: Option<i64>,
    all: bool,
    format: Format,
) -> Result<String, Failure> {
    if !all && (p.is_none() || degree.is_none()) {
        return Err(fail(2, "pass --p and --degree, or --all"));
    }
    // Parameter ranges are checked before the fixture is touched.
    if let Some(p) = p {
        if p == 0 {
            return Err(fail(2, "p must satisfy 1 <= p < N"));
        }
    }
    let complex = load_complex(path)?;
    if let Some(p) = p {
        if p >= complex.order() {
            return Err(fail(
                2,
                format!("p must satisfy 1 <= p < N = {}", complex.order()),
            ));
        }
    }
    let rows = if all {
        complex.cohomology_table()?
    } else {
        vec![complex.cohomology(p.expect("checked"), degree.expect("checked"))?]
    };
    match format {
        Format::Text => {
            let mut out = String::new();
            for row in &rows {
                let _ = writeln!(out, "({}, {}, {})", row.p, row.degree, row.dimension);
            }
            Ok(out)
        }
        Format::Json => {
            let value: Vec<_> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "p": row.p,
                        "degree": row.degree,
                        "dimension": row.dimension,
                    })
                })
                .collect();
            Ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))
        }
    }
}

fn cmd_mc(args: &McArgs, format: Format) -> Result<String, Failure> {
    let (n, m) = (args.order, args.filter);
    if m == 0 || n < m {
        return Err(fail(2, "orders must satisfy N >= M >= 1"));
    }
    if let Some(paths) = &args.residual {
        return cmd_mc_residual(&paths[0], &paths[1], m, n, format);
    }
    // Coefficient listing and the oracle comparison share the filtered
    // enumeration; the listing suppresses zero terms, the comparison
    // keeps them so vanishing itself is cross-checked.
    let table = mc::CoeffTable::new();
    let mut out = String::new();
    let mut rows = Vec::new();
    let mut mismatches = 0u32;
    for s in ndga_core::multiindex::enumerate_admissible(n) {
        if s.parts().iter().any(|&part| part >= m) {
            continue;
        }
        let c = table.c(&s, n);
        let dpow = n - s.weight() - s.len() as u32;
        if args.oracle {
            let oracle = dqm::c_oracle(&s, n);
            let verdict = if c == oracle { "MATCH" } else { "MISMATCH" };
            if c != oracle {
                mismatches += 1;
            }
            let _ = writeln!(out, "s={s}  recurrence={c}  oracle={oracle}  {verdict}");
            rows.push(serde_json::json!({
                "s": s.parts(),
                "recurrence": c.to_string(),
                "oracle": oracle.to_string(),
                "match": c == oracle,
            }));
        } else {
            if c.is_zero() {
                continue;
            }
            let _ = writeln!(out, "s={s}  c={c}  dpow={dpow}");
            rows.push(serde_json::json!({
                "s": s.parts(),
                "c": c.to_string(),
                "dpow": dpow,
            }));
        }
    }
    if args.oracle && mismatches > 0 {
        return Err(fail(3, format!("{mismatches} coefficient(s) disagree with the path-sum oracle")));
    }
    match format {
        Format::Text => Ok(out),
        Format::Json => {
            Ok(format!("{}\n", serde_json::to_string_pretty(&rows).expect("serializable")))
        }
    }
}

fn cmd_mc_residual(
    base: &Path,
    e_path: &Path,
    m: u32,
    n: u32,
    format: Format,
) -> Result<String, Failure> {
    let complex = load_complex(base)?;
    let e_fx = load(e_path)?;
    let e_space = fixture::space_from_fixture(&e_fx)?;
    if *e_space != **complex.space() {
        return Err(fail(2, "perturbation fixture degrees differ from the base fixture"));
    }
    let e = fixture::map_from_fixture(&e_fx, complex.space())?;
    let residual = mc::mc_residual(complex.d(), &e, m, n)?;
    let max = mc::max_abs_entry(&residual);
    let zero = residual.is_zero();
    let report = match format {
        Format::Text => {
            let status = if zero { "zero" } else { "nonzero" };
            format!("max |entry| = {max}\nresidual is {status}\n")
        }
        Format::Json => {
            let value = serde_json::json!({ "max_abs_entry": max.to_string(), "zero": zero });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
    };
    if zero {
        Ok(report)
    } else {
        // The report itself is the useful output; print it before
        // signalling the mathematical failure.
        print!("{report}");
        Err(fail(1, "the perturbation does not satisfy the equation"))
    }
}

fn cmd_cs(weight: u32, variational: bool, format: Format) -> Result<String, Failure> {
    let functional = cs::cs_functional(weight)?;
    let passed = if variational { Some(cs::variational_check(weight)?) } else { None };
    let report = match format {
        Format::Text => {
            let mut out = format!("{}\n", cs::format_functional(&functional));
            if let Some(passed) = passed {
                let _ = writeln!(out, "variational check: {passed}");
            }
            out
        }
        Format::Json => {
            let terms: Vec<_> = functional
                .iter()
                .map(|(word, coeff)| {
                    serde_json::json!({ "coeff": coeff.to_string(), "word": word.to_string() })
                })
                .collect();
            let mut value = serde_json::json!({ "weight": weight, "terms": terms });
            if let Some(passed) = passed {
                value["variational"] = serde_json::json!(passed);
            }
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
    };
    if passed == Some(false) {
        print!("{report}");
        return Err(fail(1, "variation leaves the span of the cyclic relations"));
    }
    Ok(report)
}

/// Parses "(2,0,1)" or "()" into a multi-index.
fn parse_multi_index(text: &str) -> Result<MultiIndex, Failure> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| fail(2, format!("multi-index must look like () or (0,1), got {text:?}")))?;
    if inner.is_empty() {
        return Ok(MultiIndex::empty());
    }
    let parts = inner
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<u32>, _>>()
        .map_err(|_| fail(2, format!("multi-index parts must be nonnegative integers, got {text:?}")))?;
    Ok(MultiIndex::new(parts))
}

fn cmd_kernel(args: &KernelArgs, format: Format) -> Result<String, Failure> {
    let value = if args.builtin_l {
        let x = parse_multi_index(&args.from)?;
        let y = parse_multi_index(&args.to)?;
        dqm::kernel(&LGraph, args.steps, &x, &y)
    } else {
        let path = args
            .graph
            .as_deref()
            .ok_or_else(|| fail(2, "pass --graph FILE or --builtin-l"))?;
        let graph: AdjacencyGraph = fixture::read_graph(path)?;
        for v in [&args.from, &args.to] {
            if !graph.contains(v) {
                return Err(fail(2, format!("unknown vertex {v:?}")));
            }
        }
        dqm::kernel(&graph, args.steps, &args.from, &args.to)
    };
    match format {
        Format::Text => Ok(format!("{} <- {} : {}\n", args.to, args.from, value)),
        Format::Json => {
            let value = serde_json::json!({
                "from": args.from,
                "to": args.to,
                "steps": args.steps,
                "value": value.to_string(),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))
        }
    }
}

fn cmd_tensor(left: &Path, right: &Path, output: Option<&Path>) -> Result<String, Failure> {
    let a = load(left)?;
    let b = load(right)?;
    let fx = match (a.product.is_some(), b.product.is_some()) {
        (false, false) => {
            let t = tensor_complex(&complex_from_fixture(&a)?, &complex_from_fixture(&b)?)?;
            fixture_from_complex(&t)
        }
        (true, true) => {
            let t = tensor_dga(&dga_from_fixture(&a)?, &dga_from_fixture(&b)?)?;
            fixture_from_dga(&t)
        }
        _ => {
            return Err(fail(2, "cannot tensor a complex with an algebra; fixtures must match"))
        }
    };
    emit(fixture_to_json(&fx), output)
}

fn cmd_export(name: &str, output: Option<&Path>) -> Result<String, Failure> {
    let fx = if let Some(m) = name.strip_prefix("chain") {
        let m: u32 = m
            .parse()
            .map_err(|_| fail(2, format!("unknown gallery name {name:?}")))?;
        if !(1..=6).contains(&m) {
            return Err(fail(2, "chain length must lie in 1..=6"));
        }
        fixture_from_complex(&gallery::chain(m))
    } else if name == "grid" {
        fixture_from_complex(&gallery::grid_complex())
    } else if let Some(rest) = name.strip_prefix("forms-") {
        let (vars, max_total) = rest
            .split_once('-')
            .and_then(|(v, m)| Some((v.parse::<usize>().ok()?, m.parse::<u32>().ok()?)))
            .ok_or_else(|| fail(2, format!("unknown gallery name {name:?}")))?;
        fixture_from_dga(&gallery::forms_model(vars, max_total)?)
    } else {
        return Err(fail(
            2,
            format!("unknown gallery name {name:?}; try chain3, grid, or forms-2-2"),
        ));
    };
    emit(fixture_to_json(&fx), output)
}
