//! Command-line front end.  Every subcommand prints a single JSON report
//! (sorted keys, one line) so runs can be diffed and archived; `reproduce`
//! additionally compares its output byte-for-byte against a golden file.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skewmrd::codes::{compare_known_families, NuclearReport};
use skewmrd::{
    reproduce, Automorphism, Code, Error, FieldCtx, NuclearParams, Poly, QuotientCtx, SkewPoly,
    SkewRing, VerifyMode,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "skewmrd",
    version,
    about = "Rank-metric codes and semifields built from twisted polynomial rings over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code, evaluate its existence condition, and verify its minimum rank
    Construct(ConstructArgs),
    /// Least monic central multiple (a polynomial in x^n over K) of a skew polynomial
    Mclm(MclmArgs),
    /// Greatest common right divisor of two skew polynomials, with Bezout cofactors
    Gcrd(GcrdArgs),
    /// Rank of a residue in the quotient by an expanded centre modulus
    Rank(RankArgs),
    /// Invariant sizes (idealisers, centraliser, centre) of a normalized code
    Nuclei(NucleiArgs),
    /// Regenerate a stored worked example and compare it with its golden file
    Reproduce(ReproduceArgs),
    /// Find a monic irreducible right divisor of the expanded centre modulus
    DivisorSearch(DivisorSearchArgs),
}

/// Parameters of the coefficient field and its twist.  The ring is
/// `L[x; sigma]` with `L = F_{p^{en}}` and `sigma` fixing exactly the
/// subfield of degree `e`.
#[derive(Args, Clone)]
struct RingArgs {
    /// Field characteristic
    #[arg(short = 'p', long = "p", default_value_t = 2)]
    p: u64,

    /// Degree of the fixed field K over the prime field
    #[arg(short = 'e', long = "e", default_value_t = 1)]
    e: usize,

    /// Order of the twist; the coefficient field has degree e*n over the prime field
    #[arg(short = 'n', long = "n")]
    n: usize,

    /// Frobenius exponent of the twist (defaults to e, giving order exactly n)
    #[arg(long = "sigma-exp", value_name = "EXP")]
    sigma_exp: Option<usize>,
}

impl RingArgs {
    fn build(&self) -> Result<SkewRing, Error> {
        if self.e == 0 || self.n == 0 {
            return Err(Error::InvalidParameter("e and n must be positive".into()));
        }
        let m = self
            .e
            .checked_mul(self.n)
            .ok_or_else(|| Error::InvalidParameter("e * n overflows".into()))?;
        let field = FieldCtx::new(self.p, m)?;
        let sigma = Automorphism::new(self.sigma_exp.unwrap_or(self.e));
        let ring = SkewRing::new(field, sigma);
        if ring.e() != self.e || ring.n() != self.n {
            return Err(Error::InvalidParameter(format!(
                "twist exponent {} fixes a subfield of degree {} over the prime field, \
                 but e = {} was requested",
                sigma.exp,
                ring.e(),
                self.e
            )));
        }
        Ok(ring)
    }
}

/// Ring parameters plus the centre modulus `F` of degree `s`, giving the
/// quotient by `F(x^n)`.
#[derive(Args, Clone)]
struct QuotArgs {
    #[command(flatten)]
    ring: RingArgs,

    /// Degree of the centre modulus F
    #[arg(short = 's', long = "s")]
    s: usize,

    /// Coefficients of F over K, constant first, comma separated
    /// (defaults to the least monic irreducible of degree s)
    #[arg(long = "F", value_name = "C0,C1,..")]
    centre: Option<String>,
}

impl QuotArgs {
    fn build(&self) -> Result<QuotientCtx, Error> {
        let ring = self.ring.build()?;
        if self.s == 0 {
            return Err(Error::InvalidParameter("s must be positive".into()));
        }
        let cf = match &self.centre {
            Some(text) => {
                let poly = Poly::from_coeffs(parse_coeffs(text)?);
                if poly.deg() != Some(self.s) {
                    return Err(Error::InvalidParameter(format!(
                        "centre modulus must have degree s = {}, got {}",
                        self.s,
                        poly.to_text()
                    )));
                }
                poly
            }
            None => Poly::least_irreducible_over(ring.field(), ring.e(), self.s)?,
        };
        QuotientCtx::new(ring, cf)
    }
}

/// Code-shape parameters on top of a quotient.
#[derive(Args, Clone)]
struct CodeArgs {
    #[command(flatten)]
    quot: QuotArgs,

    /// Number of coefficient blocks; the code has q^(n*s*k) elements
    #[arg(short = 'k', long = "k", default_value_t = 1)]
    k: usize,

    /// Twist coefficient, as an integer encoding in the coefficient field
    #[arg(long, default_value_t = 0)]
    eta: u64,

    /// Frobenius exponent of the twisting automorphism rho
    #[arg(long = "rho-exp", value_name = "EXP", default_value_t = 0)]
    rho_exp: usize,

    /// Degree over the prime field of the linearity subfield K'
    /// (defaults to the largest valid choice)
    #[arg(long)]
    kprime: Option<usize>,
}

impl CodeArgs {
    fn build(&self) -> Result<(QuotientCtx, Automorphism), Error> {
        Ok((self.quot.build()?, Automorphism::new(self.rho_exp)))
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(short = 'o', long = "output", value_name = "FILE")]
    output: Option<PathBuf>,

    /// Report format; csv is available only for tabular examples
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Enumerate every nonzero element (subject to --budget)
    Exhaustive,
    /// Check a seeded random subset of elements
    Sampled,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    code: CodeArgs,

    /// Maximum number of elements an exhaustive check may enumerate
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,

    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,

    /// Number of random elements checked in sampled mode
    #[arg(long, default_value_t = 10_000)]
    samples: u64,

    /// RNG seed for sampled mode
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Skip the invariant-size computation on the normalized code
    #[arg(long)]
    no_nuclei: bool,

    /// Worker threads for the enumeration (defaults to all cores)
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct MclmArgs {
    #[command(flatten)]
    ring: RingArgs,

    /// Coefficients of f, constant first, comma separated integer encodings
    #[arg(long = "f", value_name = "C0,C1,..")]
    f: String,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct GcrdArgs {
    #[command(flatten)]
    ring: RingArgs,

    /// Coefficients of f, constant first
    #[arg(long = "f", value_name = "C0,C1,..")]
    f: String,

    /// Coefficients of g, constant first
    #[arg(long = "g", value_name = "C0,C1,..")]
    g: String,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    quot: QuotArgs,

    /// Coefficients of the residue, constant first
    #[arg(long = "a", value_name = "C0,C1,..")]
    a: String,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct NucleiArgs {
    #[command(flatten)]
    code: CodeArgs,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Example name: ns2, ns3, or table52
    name: String,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct DivisorSearchArgs {
    #[command(flatten)]
    quot: QuotArgs,

    /// Maximum number of candidates to try
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,

    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Construct(a) => run_construct(a),
        Cmd::Mclm(a) => run_mclm(a),
        Cmd::Gcrd(a) => run_gcrd(a),
        Cmd::Rank(a) => run_rank(a),
        Cmd::Nuclei(a) => run_nuclei(a),
        Cmd::Reproduce(a) => run_reproduce(a),
        Cmd::DivisorSearch(a) => run_divisor_search(a),
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExhausted { .. } | Error::BasisNotFound => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn run_construct(args: ConstructArgs) -> Result<ExitCode, Error> {
    require_json(&args.out)?;
    if let Some(jobs) = args.jobs {
        // Ignore failure: the global pool can only be sized once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let (quo, rho) = args.code.build()?;
    let code = Code::new(&quo, args.code.k, args.code.eta, rho, args.code.kprime)?;
    let mode = match args.mode {
        ModeArg::Exhaustive => VerifyMode::Exhaustive { budget: args.budget },
        ModeArg::Sampled => VerifyMode::Sampled { samples: args.samples, seed: args.seed },
    };
    let outcome = code.verify(mode)?;
    let mut report = code_header(&quo, &code);
    report["size"] = json!(code.size().to_string());
    report["mrd_bound"] = json!(outcome.mrd_bound);
    report["min_rank"] = json!(outcome.min_rank);
    // A sample can only bound the minimum rank from above, so it never
    // produces a verdict.
    report["mrd"] = if outcome.exhaustive {
        json!(outcome.is_mrd())
    } else {
        serde_json::Value::Null
    };
    report["witness"] = json!(quo.ring().poly_text(&outcome.witness));
    report["mode"] = json!(if outcome.exhaustive { "exhaustive" } else { "sampled" });
    report["checked"] = json!(outcome.checked);
    if let ModeArg::Sampled = args.mode {
        report["seed"] = json!(args.seed);
    }
    if !args.no_nuclei {
        let rep = code.nuclear_parameters()?;
        report["nuclei"] = nuclei_value(quo.field().p(), &rep);
    }
    emit(&args.out, &render_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn run_mclm(args: MclmArgs) -> Result<ExitCode, Error> {
    require_json(&args.out)?;
    let ring = args.ring.build()?;
    let f = parse_skew(&ring, &args.f)?;
    let central = ring.mclm(&f)?;
    let report = json!({
        "f": f.coeffs(),
        "f_text": ring.poly_text(&f),
        "central": central.coeffs(),
        "central_text": central.to_text(),
        "central_degree": central.deg(),
        "irreducible": ring.is_irreducible(&f)?,
    });
    emit(&args.out, &render_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn run_gcrd(args: GcrdArgs) -> Result<ExitCode, Error> {
    require_json(&args.out)?;
    let ring = args.ring.build()?;
    let f = parse_skew(&ring, &args.f)?;
    let g = parse_skew(&ring, &args.g)?;
    let (d, u, v) = ring.extended_gcrd(&f, &g)?;
    let report = json!({
        "f": f.coeffs(),
        "g": g.coeffs(),
        "gcrd": d.coeffs(),
        "gcrd_text": ring.poly_text(&d),
        "u": u.coeffs(),
        "v": v.coeffs(),
    });
    emit(&args.out, &render_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn run_rank(args: RankArgs) -> Result<ExitCode, Error> {
    require_json(&args.out)?;
    let quo = args.quot.build()?;
    let raw = parse_skew(quo.ring(), &args.a)?;
    let a = quo.reduce(&raw);
    let report = json!({
        "residue": a.coeffs(),
        "residue_text": quo.ring().poly_text(&a),
        "rank": quo.rank(&a),
        "full_rank": quo.n(),
        "invertible": quo.is_invertible(&a),
    });
    emit(&args.out, &render_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn run_nuclei(args: NucleiArgs) -> Result<ExitCode, Error> {
    require_json(&args.out)?;
    let (quo, rho) = args.code.build()?;
    let code = Code::new(&quo, args.code.k, args.code.eta, rho, args.code.kprime)?;
    let rep = code.nuclear_parameters()?;
    let mut report = code_header(&quo, &code);
    report["nuclei"] = nuclei_value(quo.field().p(), &rep);
    emit(&args.out, &render_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn run_reproduce(args: ReproduceArgs) -> Result<ExitCode, Error> {
    let value = reproduce::by_name(&args.name)?;
    let text = match args.out.format {
        FormatArg::Json => reproduce::render(&value),
        FormatArg::Csv => table_csv(&args.name, &value)?,
    };
    emit(&args.out, &text)?;
    if args.out.format == FormatArg::Json {
        if let Some(golden) = golden_for(&args.name) {
            if golden != text {
                eprintln!(
                    "golden mismatch for '{}': {} golden bytes vs {} generated",
                    args.name,
                    golden.len(),
                    text.len()
                );
                return Ok(ExitCode::from(4));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_divisor_search(args: DivisorSearchArgs) -> Result<ExitCode, Error> {
    require_json(&args.out)?;
    let mut quo = args.quot.build()?;
    let divisor = quo.find_divisor(args.budget)?.clone();
    let report = json!({
        "central_modulus": quo.modulus().coeffs(),
        "central_modulus_text": quo.modulus().to_text(),
        "divisor": divisor.coeffs(),
        "divisor_text": quo.ring().poly_text(&divisor),
        "degree": divisor.deg(),
    });
    emit(&args.out, &render_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

/// Shared leading fields of code-shaped reports.
fn code_header(quo: &QuotientCtx, code: &Code<'_>) -> Value {
    let ring = quo.ring();
    json!({
        "p": quo.field().p(),
        "e": ring.e(),
        "n": quo.n(),
        "s": quo.s(),
        "k": code.k(),
        "sigma_exp": ring.sigma().exp,
        "rho_exp": code.rho().exp,
        "kprime": code.kprime(),
        "eta": code.eta(),
        "field_modulus": quo.field().modulus(),
        "central_modulus": quo.modulus().coeffs(),
        "condition_satisfied": code.condition(),
    })
}

fn nuclei_value(p: u64, rep: &NuclearReport) -> Value {
    fn tuple(t: &NuclearParams) -> Value {
        json!({
            "size": t.size.to_string(),
            "left_idealiser": t.left_idealiser.to_string(),
            "right_idealiser": t.right_idealiser.to_string(),
            "centraliser": t.centraliser.to_string(),
            "centre": t.centre.to_string(),
        })
    }
    json!({
        "computed": tuple(&rep.computed),
        "predicted": rep.predicted.as_ref().map(tuple),
        "families": compare_known_families(p, &rep.computed),
    })
}

fn golden_for(name: &str) -> Option<&'static str> {
    match name {
        "ns2" => Some(include_str!("../goldens/ns2.json")),
        "ns3" => Some(include_str!("../goldens/ns3.json")),
        "table52" => Some(include_str!("../goldens/table52.json")),
        _ => None,
    }
}

fn table_csv(name: &str, value: &Value) -> Result<String, Error> {
    if name != "table52" {
        return Err(Error::InvalidParameter(format!(
            "csv output is only available for table52, not '{name}'"
        )));
    }
    let mut out = String::from("n,s,e,i,size,left_idealiser,right_idealiser,centraliser,centre\n");
    for row in value["rows"].as_array().expect("table has rows") {
        let params: Vec<&str> = row["parameters"]
            .as_array()
            .expect("row has parameter strings")
            .iter()
            .map(|v| v.as_str().expect("parameters are strings"))
            .collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row["n"], row["s"], row["e"], row["i"],
            params.join(",")
        ));
    }
    Ok(out)
}

fn parse_coeffs(text: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad coefficient '{t}'")))
        })
        .collect()
}

fn parse_skew(ring: &SkewRing, text: &str) -> Result<SkewPoly, Error> {
    let coeffs = parse_coeffs(text)?;
    for &c in &coeffs {
        if !ring.field().contains(c) {
            return Err(Error::ElementOutOfRange(c));
        }
    }
    Ok(SkewPoly::from_coeffs(coeffs))
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("report serializes");
    s.push('\n');
    s
}

fn require_json(out: &OutputArgs) -> Result<(), Error> {
    if out.format != FormatArg::Json {
        return Err(Error::InvalidParameter(
            "csv output is only available for the tabular reproduce examples".into(),
        ));
    }
    Ok(())
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Error> {
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
