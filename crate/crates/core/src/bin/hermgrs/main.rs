use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hermgrs::constructions::{
    construct_theorem1, construct_theorem2, construct_theorem3, family_b, family_blm, named_pool,
    Construction,
};
use hermgrs::ff::{make_field, prime_power};
use hermgrs::grs::{hermitian_gram, is_mds_with, CodeSpec, CodeSpecJson};
use hermgrs::linalg::SolverLimits;
use hermgrs::selfdual::{
    conjecture_sweep, criterion_direct, criterion_lemma, existence_scan, find_multipliers,
    ScanOptions,
};
use hermgrs::{Element, Error, Field};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "hermgrs", version, about = "Hermitian self-dual GRS codes over F_{q^2}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Budgets {
    /// Maximum number of subfield points enumerated per linear system.
    #[arg(long, default_value_t = 10_000_000)]
    coset_budget: u128,
    /// Maximum number of unknowns in one multiplier search.
    #[arg(long, default_value_t = 24)]
    max_unknowns: usize,
    /// Maximum number of messages enumerated for the brute-force distance.
    #[arg(long, default_value_t = 1_000_000)]
    codeword_budget: u128,
    /// Maximum generator-matrix width for the exhaustive minor check.
    #[arg(long, default_value_t = 12)]
    minor_columns: usize,
    /// Maximum number of locator subsets visited by a sweep.
    #[arg(long, default_value_t = 1_000_000)]
    subset_budget: u128,
}

impl Budgets {
    fn limits(&self) -> SolverLimits {
        SolverLimits {
            max_unknowns: self.max_unknowns,
            coset_budget: self.coset_budget,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the field record of F_{q^2}, q = p^m, with V and the B families.
    Field {
        p: u64,
        m: u32,
        /// Also print trace and norm of every element.
        #[arg(long)]
        tables: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a self-dual code from one of the three locator families.
    Construct {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Exponent of θ^e (family S).
        #[arg(long, allow_hyphen_values = true)]
        e: Option<i64>,
        /// Translation b of family S, e.g. `0`, `θ^3`.
        #[arg(long)]
        b: Option<String>,
        /// Index l into V (families B_l and B_{l,m}).
        #[arg(long)]
        l: Option<usize>,
        /// Exponent m of β_m = θ^m (family B_{l,m}).
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        extended: bool,
        /// Explicit locators (comma separated) instead of the first n of the family.
        #[arg(long, value_delimiter = ',')]
        locators: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
        /// Write the CodeSpec JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Check a CodeSpec JSON file (`-` for stdin).
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Search multipliers for explicit locators.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        extended: bool,
        #[arg(required = true, allow_hyphen_values = true)]
        locators: Vec<String>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Run the multiplier search on every n-subset of a pool.
    Scan {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value = "all-nonzero")]
        pool: String,
    },
    /// Evaluate the span condition and existence on every n-subset of a pool.
    Conjecture {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value = "subgroup")]
        pool: String,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    extended: bool,
    /// JSON report path; a CSV with the same stem is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    workers: Option<usize>,
    /// Leave the report timestamp empty so reruns are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
    #[command(flatten)]
    budgets: Budgets,
}

impl SweepArgs {
    fn options(&self) -> ScanOptions {
        ScanOptions {
            limits: self.budgets.limits(),
            subset_budget: self.budgets.subset_budget,
            workers: self.workers,
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Lib(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(if e.is_budget() { EXIT_BUDGET } else { EXIT_INPUT })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error[io]: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Field { p, m, tables, json } => cmd_field(p, m, tables, json),
        Command::Construct {
            theorem,
            q,
            n,
            e,
            b,
            l,
            m,
            extended,
            locators,
            json,
            out,
            budgets,
        } => {
            let field = field_for_q(q)?;
            let locators = locators
                .map(|xs| parse_elements(&field, &xs))
                .transpose()?;
            let locs = locators.as_deref();
            let c = match theorem {
                1 => {
                    let e = e.ok_or_else(|| missing("--e"))?;
                    let b = field.parse_element(b.as_deref().unwrap_or("0"))?;
                    construct_theorem1(&field, e, b, n, extended, locs)?
                }
                2 => construct_theorem2(&field, l.ok_or_else(|| missing("--l"))?, n, extended, locs)?,
                _ => construct_theorem3(
                    &field,
                    l.ok_or_else(|| missing("--l"))?,
                    m.ok_or_else(|| missing("--m"))?,
                    n,
                    extended,
                    locs,
                )?,
            };
            cmd_construct(&field, &c, json, out.as_deref(), budgets)
        }
        Command::Verify { file, json, budgets } => cmd_verify(&file, json, budgets),
        Command::Search {
            q,
            extended,
            locators,
            json,
            budgets,
        } => {
            let field = field_for_q(q)?;
            let locators = parse_elements(&field, &locators)?;
            cmd_search(&field, &locators, extended, json, budgets)
        }
        Command::Scan { sweep, pool } => cmd_scan(&sweep, &pool),
        Command::Conjecture { sweep, pool } => cmd_conjecture(&sweep, &pool),
    }
}

fn missing(flag: &str) -> Error {
    Error::Parse(format!("{flag} is required for this theorem"))
}

fn field_for_q(q: u64) -> Result<Field, Error> {
    let (p, m) = prime_power(q)?;
    make_field(p, m)
}

fn parse_elements(field: &Field, xs: &[String]) -> Result<Vec<Element>, Error> {
    xs.iter().map(|s| field.parse_element(s.trim())).collect()
}

fn render_set(field: &Field, xs: &[Element]) -> String {
    let mut xs = xs.to_vec();
    xs.sort_by_key(|&x| field.dlog_or_minus_one(x));
    let parts: Vec<String> = xs.iter().map(|&x| field.render(x)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn render_list(field: &Field, xs: &[Element]) -> String {
    xs.iter()
        .map(|&x| field.render(x))
        .collect::<Vec<_>>()
        .join(" ")
}

fn dlogs(field: &Field, xs: &[Element]) -> Vec<i64> {
    xs.iter().map(|&x| field.dlog_or_minus_one(x)).collect()
}

fn cmd_field(p: u64, m: u32, tables: bool, json: bool) -> CmdResult {
    let field = make_field(p, m)?;
    let q = field.q();
    let v = field.trace_zero_set();
    let b_families: Vec<Result<Vec<Element>, Error>> =
        (1..=q as usize).map(|l| family_b(&field, l).map(|f| f.elements)).collect();
    let blm_families: Vec<Result<Vec<Element>, Error>> = (1..=q as usize)
        .map(|l| family_blm(&field, l, 1).map(|f| f.elements))
        .collect();
    if json {
        let fam = |r: &Result<Vec<Element>, Error>| match r {
            Ok(xs) => json!(dlogs(&field, xs)),
            Err(e) => json!({ "error": e.code() }),
        };
        let mut out = json!({
            "record": field.record(),
            "p": p,
            "m": m,
            "q": q,
            "order": field.order(),
            "modulus": field.modulus(),
            "theta": field.theta().index(),
            "trace_zero": dlogs(&field, &v.elements),
            "B": b_families.iter().map(fam).collect::<Vec<_>>(),
            "B_m1": blm_families.iter().map(fam).collect::<Vec<_>>(),
        });
        if tables {
            out["tables"] = field
                .elements()
                .map(|x| {
                    json!({
                        "element": field.dlog_or_minus_one(x),
                        "trace": field.dlog_or_minus_one(field.trace(x)),
                        "norm": field.dlog_or_minus_one(field.norm(x)),
                    })
                })
                .collect();
        }
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        return Ok(0);
    }
    println!("record: {}", field.record());
    println!("q = {q}, |F_{{q^2}}| = {}", field.order());
    println!("theta: canonical index {}", field.theta().index());
    println!("V = {}", render_set(&field, &v.elements));
    for (name, fams) in [("B_{}", &b_families), ("B_{},1", &blm_families)] {
        for (l, r) in fams.iter().enumerate() {
            let label = name.replace("{}", &(l + 1).to_string());
            match r {
                Ok(xs) => println!("{label} = {}", render_set(&field, xs)),
                Err(e) => println!("{label}: {e}"),
            }
        }
    }
    if tables {
        println!("element\ttrace\tnorm");
        for x in field.elements() {
            println!(
                "{}\t{}\t{}",
                field.render(x),
                field.render(field.trace(x)),
                field.render(field.norm(x))
            );
        }
    }
    Ok(0)
}

struct Verification {
    gram_zero: bool,
    mds: bool,
    lemma_criterion: bool,
}

impl Verification {
    fn run(field: &Field, code: &CodeSpec, budgets: Budgets) -> Result<Self, Error> {
        Ok(Verification {
            gram_zero: criterion_direct(field, code)?,
            mds: is_mds_with(field, code, budgets.minor_columns, budgets.codeword_budget)?,
            lemma_criterion: criterion_lemma(field, code)?,
        })
    }

    fn all(&self) -> bool {
        self.gram_zero && self.mds && self.lemma_criterion
    }

    fn to_json(&self) -> serde_json::Value {
        json!({
            "gram_zero": self.gram_zero,
            "mds": self.mds,
            "lemma_criterion": self.lemma_criterion,
        })
    }
}

fn code_parameters(code: &CodeSpec) -> String {
    format!(
        "[{},{},{}]",
        code.length(),
        code.k(),
        code.designed_distance()
    )
}

fn cmd_construct(
    field: &Field,
    c: &Construction,
    json: bool,
    out: Option<&Path>,
    budgets: Budgets,
) -> CmdResult {
    let ver = Verification::run(field, &c.code, budgets)?;
    let spec = c.code.to_json(field);
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(&spec).expect("json") + "\n")?;
    }
    if json {
        let out = json!({
            "theorem": c.theorem,
            "parameters": code_parameters(&c.code),
            "code": spec,
            "lambda": field.dlog_or_minus_one(c.lambda),
            "affine": [field.dlog_or_minus_one(c.affine.0), field.dlog_or_minus_one(c.affine.1)],
            "proof_exponents": c.proof_exponents,
            "s": c.s,
            "verification": ver.to_json(),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        let code = &c.code;
        println!(
            "theorem {}: {} {}code over F_{}",
            c.theorem,
            code_parameters(code),
            if code.is_extended() { "extended " } else { "" },
            field.order()
        );
        println!("locators:    {}", render_list(field, code.locators()));
        println!("multipliers: {}", render_list(field, code.multipliers()));
        println!("proof exponents: {:?}", c.proof_exponents);
        println!("lambda: {}", field.render(c.lambda));
        if let Some(s) = c.s {
            println!("s: {s}");
        }
        println!(
            "gram_zero: {}  mds: {}  lemma_criterion: {}",
            ver.gram_zero, ver.mds, ver.lemma_criterion
        );
    }
    Ok(if ver.all() { 0 } else { EXIT_NEGATIVE })
}

fn cmd_verify(file: &Path, json: bool, budgets: Budgets) -> CmdResult {
    let text = if file == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(file)?
    };
    let spec: CodeSpecJson =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("CodeSpec JSON: {e}")))?;
    let (field, code) = spec.to_code()?;
    let ver = Verification::run(&field, &code, budgets)?;
    let gram = (!ver.gram_zero).then(|| hermitian_gram(&field, &code).to_dlog_rows(&field));
    let verdict = if ver.all() {
        "self-dual"
    } else {
        "not self-dual"
    };
    if json {
        let mut out = json!({
            "verdict": verdict,
            "parameters": code_parameters(&code),
            "verification": ver.to_json(),
        });
        if let Some(g) = &gram {
            out["gram"] = json!(g);
        }
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("{} {verdict}", code_parameters(&code));
        println!(
            "gram_zero: {}  mds: {}  lemma_criterion: {}",
            ver.gram_zero, ver.mds, ver.lemma_criterion
        );
        if let Some(g) = gram {
            println!("gram (dlog, -1 = 0):");
            for row in g {
                println!("  {row:?}");
            }
        }
    }
    Ok(if ver.all() { 0 } else { EXIT_NEGATIVE })
}

fn cmd_search(
    field: &Field,
    locators: &[Element],
    extended: bool,
    json: bool,
    budgets: Budgets,
) -> CmdResult {
    let found = find_multipliers(field, locators, extended, budgets.limits())?;
    match (&found, json) {
        (Some(code), true) => println!(
            "{}",
            serde_json::to_string_pretty(&code.to_json(field)).expect("json")
        ),
        (Some(code), false) => println!("{}", render_list(field, code.multipliers())),
        (None, true) => println!("{}", json!({ "result": "none" })),
        (None, false) => println!("none"),
    }
    Ok(if found.is_some() { 0 } else { EXIT_NEGATIVE })
}

fn write_report<T: serde::Serialize>(
    path: &Path,
    report: &T,
    csv: impl FnOnce(fs::File) -> Result<(), Error>,
) -> Result<(), Failure> {
    fs::write(path, serde_json::to_string_pretty(report).expect("json") + "\n")?;
    csv(fs::File::create(path.with_extension("csv"))?)?;
    Ok(())
}

fn cmd_scan(args: &SweepArgs, pool: &str) -> CmdResult {
    let field = field_for_q(args.q)?;
    let pool = named_pool(&field, pool)?;
    let mut report = existence_scan(&field, args.n, &pool, args.extended, args.options())?;
    if !args.no_timestamp {
        report.metadata.stamp_now();
    }
    if let Some(path) = &args.out {
        write_report(path, &report, |f| report.write_csv(f))?;
    }
    if args.json {
        println!("{}", report.to_json_pretty());
    } else {
        let t = report.totals;
        let mut stdout = io::stdout().lock();
        for e in report.entries.iter().filter(|e| e.exists) {
            writeln!(
                stdout,
                "{:?} -> {:?}",
                e.locators,
                e.multipliers.as_deref().unwrap_or_default()
            )?;
        }
        writeln!(
            stdout,
            "tested {}  exists {}  none {}  errors {}",
            t.tested, t.exists, t.none, t.errors
        )?;
    }
    Ok(0)
}

fn cmd_conjecture(args: &SweepArgs, pool: &str) -> CmdResult {
    let field = field_for_q(args.q)?;
    let pool = named_pool(&field, pool)?;
    let mut report = conjecture_sweep(&field, args.n, &pool, args.extended, args.options())?;
    if !args.no_timestamp {
        report.metadata.stamp_now();
    }
    if let Some(path) = &args.out {
        write_report(path, &report, |f| report.write_csv(f))?;
    }
    let t = report.totals;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("json")
        );
    } else {
        println!(
            "n = {}, bound = {}: tested {}  span {}  exists {}  span&exists {}  counterexamples {}",
            report.n,
            report.bound,
            t.tested,
            t.span_holds,
            t.exists,
            t.span_and_exists,
            t.counterexamples
        );
    }
    Ok(if t.counterexamples == 0 { 0 } else { EXIT_NEGATIVE })
}
