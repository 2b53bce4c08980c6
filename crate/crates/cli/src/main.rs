//! `jordan`: command-line front end for jordan-core.
//!
//! Exit codes: 0 holds or success, 1 fails, 2 unknown, 3 usage, parse or
//! input error. The default budget can be set with `JORDAN_BUDGET`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use jordan_core::algebra::{squares_span, validate_jordan};
use jordan_core::annihilators::{idempotents, left_annihilator, right_annihilator};
use jordan_core::corpus::{self, random_special_algebra, run_corpus};
use jordan_core::deciders::{
    bj_check_via_lattice, check, verify_idempotent_map, verify_witness, Analysis, ModeChoice, Settings,
};
use jordan_core::enumerate::Enumerated;
use jordan_core::format::{load, AnyAlgebra};
use jordan_core::lattice::IdemLattice;
use jordan_core::peirce::peirce;
use jordan_core::radicals::{radical, RadicalKind};
use jordan_core::report::{
    coords, describe_witness, element_from_coords, parse_witness_file, witness_elements, AnnihilatorJson, CheckReport,
    InfoJson, LatticeJson, PeirceJson, RadicalJson, Side, SubspaceReport, ValidateJson, VerifyJson, WitnessFile,
};
use jordan_core::{with_algebra, Element, Error, Field, JordanAlgebra, Outcome, PrimeField, Property, Rationals};
use jordan_core::{BUDGET_ENV, DEFAULT_BUDGET};

const USAGE_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "jordan", version, about = "Exact computations in finite-dimensional Jordan algebras")]
struct Cli {
    /// Largest p^dim enumerated exhaustively [default: $JORDAN_BUDGET or 1000000]
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Print JSON reports instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (output does not depend on this)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Auto,
    Exhaustive,
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Direct,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Deg,
    Nil,
    Rad,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the unit and the Jordan identity
    Validate { file: PathBuf },
    /// Summarize an algebra
    Info { file: PathBuf },
    /// Decide a property, or re-verify a saved witness
    Check {
        file: PathBuf,
        /// rj, bj, rickart, baer, nondeg, quad-nondeg or nil-sqrt
        #[arg(long, value_parser = parse_property, required_unless_present = "verify_witness")]
        property: Option<Property>,
        /// Decision route for bj
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
        /// Re-verify the witness and idempotent map in a saved report
        #[arg(long, value_name = "FILE")]
        verify_witness: Option<PathBuf>,
        /// Extra elements tried by symbolic searches (comma-separated coordinates)
        #[arg(long = "probe", value_name = "COORDS", allow_hyphen_values = true)]
        probes: Vec<String>,
    },
    /// Left or right annihilator of a set of elements
    Annihilator {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Element as comma-separated coordinates; repeat for a set
        #[arg(long = "element", value_name = "COORDS", required = true, allow_hyphen_values = true)]
        elements: Vec<String>,
    },
    /// Degenerate, nil or Jacobson radical
    Radical {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Deg)]
        kind: KindArg,
    },
    /// The idempotent lattice
    Lattice { file: PathBuf },
    /// Peirce decomposition relative to an idempotent
    Peirce {
        file: PathBuf,
        #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
        idempotent: String,
    },
    /// Seeded random special Jordan algebra, printed as an algebra file
    Random {
        #[arg(long)]
        seed: u64,
        /// An odd prime, or q for the rationals
        #[arg(long, default_value = "3")]
        field: String,
        #[arg(long, default_value_t = 4)]
        dim_bound: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The built-in example algebras and claims
    Corpus {
        #[command(subcommand)]
        action: CorpusCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Run the claims suite
    Run {
        /// Only claims whose id or group contains this string
        #[arg(long)]
        filter: Option<String>,
    },
    /// List corpus algebras and claims
    List,
    /// Write every corpus algebra to DIR/<id>.json
    Export { dir: PathBuf },
}

fn parse_property(s: &str) -> Result<Property, String> {
    Property::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
        format!("unknown property {s:?}; expected one of {}", names.join(", "))
    })
}

/// A finished command: what to print and how to exit.
struct Output {
    text: String,
    json: String,
    code: u8,
}

impl Output {
    fn new(text: String, report: &impl Serialize, code: u8) -> Self {
        let mut json = serde_json::to_string_pretty(report).expect("serializable");
        json.push('\n');
        Output { text, json, code }
    }
}

fn exit_of(o: Outcome) -> u8 {
    o.exit_code() as u8
}

struct Options {
    budget: u64,
    mode: ModeChoice,
}

fn budget_from_env() -> Result<u64, String> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{BUDGET_ENV}={v:?} is not a nonnegative integer")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn parse_element<F: Field>(a: &JordanAlgebra<F>, s: &str) -> Result<Element<F>, Error> {
    let parts: Vec<String> = s.split(',').map(|c| c.trim().to_string()).collect();
    element_from_coords(a, &parts)
}

fn settings<F: Field>(opts: &Options) -> Settings<F> {
    Settings::new(opts.budget).with_mode(opts.mode)
}

fn field_line<F: Field>(a: &JordanAlgebra<F>) -> String {
    format!("algebra: {} over {}, dim {}\n", a.name(), a.field().desc(), a.dim())
}

fn cmd_validate<F: Field>(a: &JordanAlgebra<F>, opts: &Options) -> Result<Output, Error> {
    let r = validate_jordan(a, opts.budget)?;
    let j = ValidateJson::new(a, &r);
    let mut text = field_line(a);
    text += &format!("method: {:?}, {} checks\n", r.method, r.checked).to_lowercase();
    match &j.violation {
        None => text += "valid Jordan algebra\n",
        Some(v) => text += &format!("not a Jordan algebra: {v:?}\n"),
    }
    Ok(Output::new(text, &j, if j.valid { 0 } else { 1 }))
}

fn cmd_info<F: Field>(a: &JordanAlgebra<F>, opts: &Options) -> Result<Output, Error> {
    let f = a.field();
    let elements = f.order().and_then(|p| p.checked_pow(a.dim() as u32));
    let enumerable = elements.is_some_and(|n| n <= opts.budget);
    let idem = idempotents(a, opts.budget);
    let j = InfoJson {
        algebra: a.name().to_string(),
        field: f.desc(),
        dim: a.dim(),
        basis: a.labels().to_vec(),
        unit: a.unit().map(|u| coords(a, u)),
        elements,
        enumerable,
        squares_span: SubspaceReport::new(&squares_span(a)),
        idempotents: idem.complete.then_some(idem.elements.len()),
    };
    let mut text = field_line(a);
    text += &format!("basis: {}\n", a.labels().join(" "));
    text += &match a.unit() {
        Some(u) => format!("unit: {}\n", a.display(u)),
        None => "unit: none\n".into(),
    };
    if let Some(n) = elements {
        text += &format!("elements: {n} ({})\n", if enumerable { "enumerable" } else { "over budget" });
    }
    text += &format!("span of squares: dimension {}\n", j.squares_span.dim);
    if let Some(n) = j.idempotents {
        text += &format!("idempotents: {n}\n");
    }
    Ok(Output::new(text, &j, 0))
}

fn check_text<F: Field>(a: &JordanAlgebra<F>, r: &jordan_core::ClassReport<F>) -> String {
    let mut text = field_line(a);
    text += &format!("property: {}\n", r.property.name());
    text += &format!("method: {} ({:?})\n", r.method, r.mode).to_lowercase();
    text += &format!("outcome: {:?}\n", r.outcome()).to_lowercase();
    if let Some(w) = &r.verdict.witness {
        text += &format!("witness: {}\n", describe_witness(a, w));
    }
    if let Some(reason) = &r.verdict.reason {
        text += &format!("reason: {reason}\n");
    }
    if !r.idempotent_map.is_empty() {
        text += &format!("idempotent map ({} entries):\n", r.idempotent_map.len());
        for (x, e) in &r.idempotent_map {
            text += &format!("  {} -> {}\n", a.display(x), a.display(e));
        }
    }
    for n in &r.notes {
        text += &format!("note: {n}\n");
    }
    text
}

fn cmd_check<F: Field>(
    a: &JordanAlgebra<F>,
    property: Property,
    route: Route,
    probes: &[String],
    opts: &Options,
) -> Result<Output, Error> {
    let mut s = settings::<F>(opts);
    s.probes = probes.iter().map(|p| parse_element(a, p)).collect::<Result<_, _>>()?;
    let r = match (property, route) {
        (Property::Bj, Route::Lattice) => bj_check_via_lattice(a, &s)?,
        _ => check(a, property, &s)?,
    };
    let j = CheckReport::new(a, &r, opts.budget);
    Ok(Output::new(check_text(a, &r), &j, exit_of(r.outcome())))
}

fn cmd_verify<F: Field>(a: &JordanAlgebra<F>, file: &WitnessFile, opts: &Options) -> Result<Output, Error> {
    let witness_verified = match file.witness() {
        Some(w) => Some(verify_witness(a, &witness_elements(a, w)?, opts.budget)?),
        None => None,
    };
    let idempotent_map_verified = match file {
        WitnessFile::Report(r) if !r.idempotent_map.is_empty() => {
            let map = r
                .idempotent_map
                .iter()
                .map(|m| Ok((element_from_coords(a, &m.x)?, element_from_coords(a, &m.e)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            Some(verify_idempotent_map(a, &map, opts.budget)?)
        }
        _ => None,
    };
    if witness_verified.is_none() && idempotent_map_verified.is_none() {
        return Err(Error::Parse {
            location: "witness file".into(),
            message: "contains neither a witness nor an idempotent map".into(),
        });
    }
    let verified = witness_verified.unwrap_or(true) && idempotent_map_verified.unwrap_or(true);
    let j = VerifyJson {
        algebra: a.name().to_string(),
        witness_verified,
        idempotent_map_verified,
        verified,
    };
    let mut text = field_line(a);
    if let Some(v) = witness_verified {
        text += &format!("witness: {}\n", if v { "verified" } else { "REJECTED" });
    }
    if let Some(v) = idempotent_map_verified {
        text += &format!("idempotent map: {}\n", if v { "verified" } else { "REJECTED" });
    }
    Ok(Output::new(text, &j, if verified { 0 } else { 1 }))
}

fn cmd_annihilator<F: Field>(
    a: &JordanAlgebra<F>,
    side: SideArg,
    elements: &[String],
    opts: &Options,
) -> Result<Output, Error> {
    let s: Vec<Element<F>> = elements.iter().map(|e| parse_element(a, e)).collect::<Result<_, _>>()?;
    let en = Enumerated::new(a, opts.budget).ok();
    let idem = idempotents(a, opts.budget);
    let mut text = field_line(a);
    let (subspace, found, matching) = match side {
        SideArg::Left => {
            let left = left_annihilator(a, &s);
            let matching = idem.elements.iter().find(|e| {
                let inner = a.inner_ideal(e);
                match &en {
                    Some(en) => en.squares_in(&left) == en.squares_in(&inner),
                    None => {
                        let span = squares_span(a);
                        matches!((left.intersect(&span), inner.intersect(&span)), (Ok(x), Ok(y)) if x == y)
                    }
                }
            });
            text += &format!("left annihilator: dimension {}\n", left.dim());
            for b in left.basis() {
                text += &format!("  {}\n", a.display(&Element::new(b.clone())));
            }
            (Some(SubspaceReport::new(&left)), None, matching.cloned())
        }
        SideArg::Right => {
            let right = right_annihilator(a, &s, opts.budget)?;
            let matching = en.as_ref().and_then(|en| {
                let mut set = en.empty_square_set();
                set.grow(en.len());
                for x in &right {
                    set.insert(en.index_of(x));
                }
                idem.elements.iter().find(|e| en.elements_in(&a.inner_ideal(e)) == set).cloned()
            });
            text += &format!("right annihilator: {} elements\n", right.len());
            (None, Some(right.iter().map(|x| coords(a, x)).collect()), matching)
        }
    };
    text += &match &matching {
        Some(e) => format!("matching idempotent: {}\n", a.display(e)),
        None => "matching idempotent: none found\n".into(),
    };
    let j = AnnihilatorJson {
        algebra: a.name().to_string(),
        field: a.field().desc(),
        side: match side {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        },
        subset: s.iter().map(|x| coords(a, x)).collect(),
        subspace,
        elements: found,
        matching_idempotent: matching.as_ref().map(|e| coords(a, e)),
        exhaustive: idem.complete,
    };
    Ok(Output::new(text, &j, 0))
}

fn cmd_radical<F: Field>(a: &JordanAlgebra<F>, kind: KindArg, opts: &Options) -> Result<Output, Error> {
    let kind = match kind {
        KindArg::Deg => RadicalKind::Deg,
        KindArg::Nil => RadicalKind::Nil,
        KindArg::Rad => RadicalKind::Rad,
    };
    let r = radical(a, kind, opts.budget);
    let j = RadicalJson::new(a, &r);
    let mut text = field_line(a);
    text += &format!("{} radical: dimension {} (method {})\n", j.kind, r.subspace.dim(), r.method);
    for b in r.subspace.basis() {
        text += &format!("  {}\n", a.display(&Element::new(b.clone())));
    }
    for (i, step) in r.chain.iter().enumerate() {
        let count = step.trivial_count.map_or("?".to_string(), |c| c.to_string());
        text += &format!("step {i}: {count} trivial elements, ideal of dimension {}\n", step.ideal_dim);
    }
    text += &format!("verification: {:?}\n", r.verification.outcome).to_lowercase();
    if let Some(reason) = &r.verification.reason {
        text += &format!("reason: {reason}\n");
    }
    Ok(Output::new(text, &j, exit_of(r.verification.outcome)))
}

fn cmd_lattice<F: Field>(a: &JordanAlgebra<F>, opts: &Options) -> Result<Output, Error> {
    let (l, exhaustive) = match Analysis::new(a, opts.budget) {
        Ok(an) => (an.lattice(), true),
        Err(_) => {
            let idem = idempotents(a, opts.budget);
            (IdemLattice::new(a, idem.elements), idem.complete)
        }
    };
    let j = LatticeJson::new(a, &l, exhaustive);
    let mut text = field_line(a);
    text += &format!(
        "idempotents: {}{}\n",
        l.len(),
        if exhaustive { "" } else { " (bounded search)" }
    );
    for (i, e) in l.elements().iter().enumerate() {
        text += &format!("  [{i}] {}\n", a.display(e));
    }
    let name = |i: Option<usize>| i.map_or("none".to_string(), |i| format!("[{i}]"));
    text += &format!("top: {}, bottom: {}\n", name(l.top()), name(l.bottom()));
    text += &match &j.gap {
        None => "complete lattice\n".into(),
        Some(g) => format!("not complete: a subset of {} elements has no {:?}\n", g.subset.len(), g.missing)
            .to_lowercase(),
    };
    let code = match (exhaustive, j.complete) {
        (_, false) => 1,
        (true, true) => 0,
        (false, true) => 2,
    };
    Ok(Output::new(text, &j, code))
}

fn cmd_peirce<F: Field>(a: &JordanAlgebra<F>, idempotent: &str) -> Result<Output, Error> {
    let e = parse_element(a, idempotent)?;
    let p = peirce(a, &e)?;
    let j = PeirceJson::new(a, &e, &p);
    let mut text = field_line(a);
    text += &format!("idempotent: {}\n", a.display(&e));
    for (name, v) in [("A_1", &p.one), ("A_1/2", &p.half), ("A_0", &p.zero)] {
        text += &format!("{name}: dimension {}\n", v.dim());
        for b in v.basis() {
            text += &format!("  {}\n", a.display(&Element::new(b.clone())));
        }
    }
    text += &format!("direct sum: {}\n", if j.decomposition_verified { "verified" } else { "FAILED" });
    Ok(Output::new(text, &j, if j.decomposition_verified { 0 } else { 1 }))
}

fn cmd_random(seed: u64, field: &str, dim_bound: usize, output: Option<&Path>) -> Result<Output, Error> {
    let any = if field.eq_ignore_ascii_case("q") {
        AnyAlgebra::Q(random_special_algebra(seed, Rationals, dim_bound)?.algebra)
    } else {
        let p: u32 = field
            .parse()
            .map_err(|_| Error::InvalidField(format!("{field:?} is neither q nor a prime")))?;
        AnyAlgebra::Fp(random_special_algebra(seed, PrimeField::new(p)?, dim_bound)?.algebra)
    }
    .with_name(format!("random-{seed}"));
    let json = any.to_json();
    if let Some(path) = output {
        std::fs::write(path, &json)?;
        let text = format!("wrote {} (dim {})\n", path.display(), any.dim());
        return Ok(Output {
            text: text.clone(),
            json: text,
            code: 0,
        });
    }
    Ok(Output {
        text: json.clone(),
        json,
        code: 0,
    })
}

#[derive(Serialize)]
struct ListJson {
    algebras: Vec<ListEntry>,
    claims: Vec<ListClaim>,
}

#[derive(Serialize)]
struct ListEntry {
    id: &'static str,
    description: &'static str,
}

#[derive(Serialize)]
struct ListClaim {
    id: String,
    group: &'static str,
    statement: String,
}

fn cmd_corpus(action: &CorpusCommand) -> Result<Output, Error> {
    match action {
        CorpusCommand::Run { filter } => {
            let r = run_corpus(filter.as_deref());
            let mut text = String::new();
            for c in &r.claims {
                text += &format!(
                    "{:<7} {:<34} {} (expected {}, observed {})\n",
                    format!("{:?}", c.status).to_lowercase(),
                    c.id,
                    c.statement,
                    c.expected,
                    c.observed
                );
            }
            for f in &r.findings {
                text += &format!("finding {}: {}\n", f.id, f.summary);
            }
            text += &format!(
                "{} passed, {} failed, {} unknown\n",
                r.summary.pass, r.summary.fail, r.summary.unknown
            );
            Ok(Output {
                text,
                json: r.to_json(),
                code: r.exit_code() as u8,
            })
        }
        CorpusCommand::List => {
            let j = ListJson {
                algebras: corpus::entries()
                    .iter()
                    .map(|e| ListEntry {
                        id: e.id,
                        description: e.description,
                    })
                    .collect(),
                claims: corpus::claims::claims()
                    .into_iter()
                    .map(|c| ListClaim {
                        id: c.id,
                        group: c.group,
                        statement: c.statement,
                    })
                    .collect(),
            };
            let mut text = String::from("algebras:\n");
            for e in &j.algebras {
                text += &format!("  {:<12} {}\n", e.id, e.description);
            }
            text += "claims:\n";
            for c in &j.claims {
                text += &format!("  {:<34} [{}] {}\n", c.id, c.group, c.statement);
            }
            Ok(Output::new(text, &j, 0))
        }
        CorpusCommand::Export { dir } => {
            std::fs::create_dir_all(dir)?;
            let mut written = Vec::new();
            for e in corpus::entries() {
                let path = dir.join(format!("{}.json", e.id));
                std::fs::write(&path, e.build()?.to_json())?;
                written.push(path.display().to_string());
            }
            let text = written.iter().map(|p| format!("wrote {p}\n")).collect();
            Ok(Output::new(text, &written, 0))
        }
    }
}

fn run(cli: &Cli, opts: &Options) -> Result<Output, Error> {
    let loaded = |file: &Path| {
        load(file).map_err(|e| match e {
            Error::Io(io) => Error::Parse {
                location: file.display().to_string(),
                message: io.to_string(),
            },
            e => e,
        })
    };
    match &cli.command {
        Command::Validate { file } => with_algebra!(&loaded(file)?, a => cmd_validate(a, opts)),
        Command::Info { file } => with_algebra!(&loaded(file)?, a => cmd_info(a, opts)),
        Command::Check {
            file,
            property,
            route,
            verify_witness,
            probes,
        } => {
            let any = loaded(file)?;
            if let Some(w) = verify_witness {
                let text = std::fs::read_to_string(w).map_err(|e| Error::Parse {
                    location: w.display().to_string(),
                    message: e.to_string(),
                })?;
                let wf = parse_witness_file(&text)?;
                return with_algebra!(&any, a => cmd_verify(a, &wf, opts));
            }
            let property = property.expect("required by clap");
            with_algebra!(&any, a => cmd_check(a, property, *route, probes, opts))
        }
        Command::Annihilator { file, side, elements } => {
            with_algebra!(&loaded(file)?, a => cmd_annihilator(a, *side, elements, opts))
        }
        Command::Radical { file, kind } => with_algebra!(&loaded(file)?, a => cmd_radical(a, *kind, opts)),
        Command::Lattice { file } => with_algebra!(&loaded(file)?, a => cmd_lattice(a, opts)),
        Command::Peirce { file, idempotent } => with_algebra!(&loaded(file)?, a => cmd_peirce(a, idempotent)),
        Command::Random {
            seed,
            field,
            dim_bound,
            output,
        } => cmd_random(*seed, field, *dim_bound, output.as_deref()),
        Command::Corpus { action } => cmd_corpus(action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let budget = match cli.budget.map_or_else(budget_from_env, Ok) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    }
    let opts = Options {
        budget,
        mode: match cli.mode {
            ModeArg::Auto => ModeChoice::Auto,
            ModeArg::Exhaustive => ModeChoice::Exhaustive,
            ModeArg::Symbolic => ModeChoice::Symbolic,
        },
    };
    match run(&cli, &opts) {
        Ok(out) => {
            print!("{}", if cli.json { &out.json } else { &out.text });
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
