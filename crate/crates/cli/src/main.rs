mod args;
mod search;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use serde::{Deserialize, Serialize};

use rtheta::code::{brute_force_dual, build, self_checks, SelfChecks};
use rtheta::dnamap::{fit_table, Conventions, Evidence, LAMBDAS};
use rtheta::ring::format_vector;
use rtheta::verify::fixtures::parse_dna_list;
use rtheta::verify::harness::{self as h, HarnessReport, HarnessScope};
use rtheta::verify::{conjecture_harness, default_table, reproduce_tables, ConjectureReport, ConjectureScope, RowResult};
use rtheta::{CodeReport, DnaString, Error, GauTable, RingElement, Theta};

use args::{Cli, Command, Format, HarnessName, RunConfig};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CodeTooLarge { .. } | Error::DualTooLarge { .. } | Error::SearchCapExceeded { .. } | Error::ScopeTooLarge(_) => {
                Failure::Cap(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;
type HarnessFn = fn(&HarnessScope) -> rtheta::Result<Vec<HarnessReport>>;

/// `build` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildOutput {
    pub report: CodeReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dna: Option<Vec<DnaString>>,
}

/// `dual` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualOutput {
    pub theta: Theta,
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub dual_size: usize,
    pub checks: SelfChecks,
    pub dual_generators: Vec<Vec<RingElement>>,
}

/// `ring-table` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingTable {
    pub theta: Theta,
    pub elements: Vec<RingElement>,
    pub addition: Vec<Vec<RingElement>>,
    pub multiplication: Vec<Vec<RingElement>>,
    pub units: Vec<RingElement>,
    pub zero_divisors: Vec<RingElement>,
}

/// `fit-table` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitOutput {
    pub theta: Theta,
    pub tables: usize,
    pub written: Vec<String>,
}

fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn table(config: &RunConfig) -> Result<GauTable, Failure> {
    match &config.table_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(GauTable::from_file_str(config.theta, &text)?)
        }
        None => Ok(default_table(config.theta)?.clone()),
    }
}

fn opt(d: Option<u32>) -> String {
    d.map_or("inf".into(), |d| d.to_string())
}

fn ring_table(config: &RunConfig, out: &mut impl Write) -> Outcome {
    let ring = config.theta.ring();
    let elements: Vec<RingElement> = RingElement::all().collect();
    let class = ring.classify();
    let t = RingTable {
        theta: config.theta,
        addition: elements.iter().map(|&x| elements.iter().map(|&y| x.add(y)).collect()).collect(),
        multiplication: elements.iter().map(|&x| elements.iter().map(|&y| ring.mul(x, y)).collect()).collect(),
        units: class.units.clone(),
        zero_divisors: class.zero_divisors.clone(),
        elements,
    };
    match config.format {
        Format::Json => json_line(out, &t)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["x", "y", "x+y", "x*y"])?;
            for (i, x) in t.elements.iter().enumerate() {
                for (j, y) in t.elements.iter().enumerate() {
                    w.write_record([x.to_string(), y.to_string(), t.addition[i][j].to_string(), t.multiplication[i][j].to_string()])?;
                }
            }
            w.flush()?;
        }
        Format::Human => {
            for (name, grid) in [("+", &t.addition), ("*", &t.multiplication)] {
                write!(out, "{name:>6}")?;
                for x in &t.elements {
                    write!(out, "{:>6}", x.to_string())?;
                }
                writeln!(out)?;
                for (x, row) in t.elements.iter().zip(grid) {
                    write!(out, "{:>6}", x.to_string())?;
                    for v in row {
                        write!(out, "{:>6}", v.to_string())?;
                    }
                    writeln!(out)?;
                }
                writeln!(out)?;
            }
            let list = |v: &[RingElement]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            writeln!(out, "units ({}): {}", t.units.len(), list(&t.units))?;
            writeln!(out, "zero divisors ({}): {}", t.zero_divisors.len(), list(&t.zero_divisors))?;
        }
    }
    Ok(0)
}

fn report_human(r: &CodeReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "theta            {}", r.theta)?;
    writeln!(out, "(2n, M, d_dna)   ({}, {}, {})", r.dna_length, r.m, opt(r.d_dna))?;
    writeln!(out, "d_ring / d_gau   {} / {}", opt(r.d_ring), opt(r.d_gau))?;
    let c = &r.constraints;
    writeln!(
        out,
        "reversible       ring {} / dna {}\ncomplement       {}\nrev-complement   {}",
        c.reversible_ring, c.reversible_dna, c.complement, c.reverse_complement
    )?;
    let d = &r.duality;
    writeln!(
        out,
        "self-orthogonal  {}\nself-dual        {}\nfree             {} (free basis {})",
        d.self_orthogonal, d.self_dual, d.free, d.free_basis
    )?;
    if let (Some(b), Some(q)) = (&r.sphere_bound, r.bound_ratio) {
        writeln!(out, "sphere bound     {b} (M / bound = {q:.6})")?;
    }
    for w in &r.warnings {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}

const REPORT_HEADER: [&str; 17] = [
    "theta", "n", "2n", "M", "d_ring", "d_dna", "d_gau", "reversible_ring", "reversible_dna", "complement",
    "reverse_complement", "self_orthogonal", "self_dual", "free", "free_basis", "sphere_bound", "bound_ratio",
];

fn report_record(r: &CodeReport) -> Vec<String> {
    let c = &r.constraints;
    let d = &r.duality;
    vec![
        r.theta.to_string(),
        r.n.to_string(),
        r.dna_length.to_string(),
        r.m.to_string(),
        opt(r.d_ring),
        opt(r.d_dna),
        opt(r.d_gau),
        c.reversible_ring.to_string(),
        c.reversible_dna.to_string(),
        c.complement.to_string(),
        c.reverse_complement.to_string(),
        d.self_orthogonal.to_string(),
        d.self_dual.to_string(),
        d.free.to_string(),
        d.free_basis.to_string(),
        r.sphere_bound.clone().unwrap_or_default(),
        r.bound_ratio.map(|q| q.to_string()).unwrap_or_default(),
    ]
}

fn build_cmd(config: &RunConfig, spec: &args::CodeSpec, emit_dna: bool, out: &mut impl Write) -> Outcome {
    let construction = spec.construction()?;
    let table = table(config)?;
    let code = build(config.theta, &construction, config.max_size)?;
    let report = CodeReport::new(&code, &table)?;
    let dna = emit_dna.then(|| code.codewords().map(|w| table.encode(&w)).collect::<Vec<_>>());
    let output = BuildOutput { report, dna };
    match config.format {
        Format::Json => json_line(out, &output)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(REPORT_HEADER)?;
            w.write_record(report_record(&output.report))?;
            w.flush()?;
            if let Some(dna) = &output.dna {
                let out = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
                writeln!(out, "dna")?;
                for s in dna {
                    writeln!(out, "{s}")?;
                }
            }
        }
        Format::Human => {
            report_human(&output.report, out)?;
            if let Some(dna) = &output.dna {
                writeln!(out, "codewords:")?;
                for s in dna {
                    writeln!(out, "  {s}")?;
                }
            }
        }
    }
    Ok(0)
}

fn dual_cmd(config: &RunConfig, spec: &args::CodeSpec, out: &mut impl Write) -> Outcome {
    let code = build(config.theta, &spec.construction()?, config.max_size)?;
    let dual = brute_force_dual(&code, config.dual_cap)?;
    let o = DualOutput {
        theta: config.theta,
        n: code.len(),
        m: code.size(),
        dual_size: dual.size(),
        checks: self_checks(&code),
        dual_generators: dual.generators().to_vec(),
    };
    match config.format {
        Format::Json => json_line(out, &o)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["theta", "n", "M", "dual_size", "self_orthogonal", "self_dual", "free", "free_basis", "dual_generators"])?;
            let gens: Vec<String> = o.dual_generators.iter().map(|g| format_vector(g)).collect();
            w.write_record([
                o.theta.to_string(),
                o.n.to_string(),
                o.m.to_string(),
                o.dual_size.to_string(),
                o.checks.self_orthogonal.to_string(),
                o.checks.self_dual.to_string(),
                o.checks.free.to_string(),
                o.checks.free_basis.to_string(),
                gens.join(" "),
            ])?;
            w.flush()?;
        }
        Format::Human => {
            writeln!(out, "theta {}, n = {}, |C| = {}, |C⊥| = {}", o.theta, o.n, o.m, o.dual_size)?;
            writeln!(
                out,
                "self-orthogonal {}, self-dual {}, free {}, free basis {}",
                o.checks.self_orthogonal, o.checks.self_dual, o.checks.free, o.checks.free_basis
            )?;
            writeln!(out, "dual generators:")?;
            for g in &o.dual_generators {
                writeln!(out, "  {}", format_vector(g))?;
            }
        }
    }
    Ok(0)
}

fn row_status(r: &RowResult) -> &'static str {
    if r.matches() {
        "match"
    } else if r.unexplained_mismatch() {
        "MISMATCH"
    } else {
        "erratum"
    }
}

fn verify_cmd(config: &RunConfig, out: &mut impl Write) -> Outcome {
    let rows = reproduce_tables()?;
    match config.format {
        Format::Json => {
            for r in &rows {
                json_line(out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "expected_2n", "expected_M", "expected_d", "2n", "M", "d_dna", "list_equal", "status", "errata"])?;
            for r in &rows {
                let errata: Vec<String> = r.errata.iter().map(|e| format!("{}: {}", e.field, e.reason)).collect();
                w.write_record([
                    r.id.clone(),
                    r.expected.dna_length.to_string(),
                    r.expected.m.to_string(),
                    r.expected.d_h.to_string(),
                    r.report.dna_length.to_string(),
                    r.report.m.to_string(),
                    opt(r.report.d_dna),
                    r.list.as_ref().map(|l| l.equal.to_string()).unwrap_or_default(),
                    row_status(r).to_string(),
                    errata.join("; "),
                ])?;
            }
            w.flush()?;
        }
        Format::Human => {
            for r in &rows {
                let e = r.expected;
                writeln!(
                    out,
                    "{:<14} expected ({}, {}, {})  got ({}, {}, {})  {}",
                    r.id,
                    e.dna_length,
                    e.m,
                    e.d_h,
                    r.report.dna_length,
                    r.report.m,
                    opt(r.report.d_dna),
                    row_status(r)
                )?;
                if let Some(l) = &r.list {
                    writeln!(out, "{:<14} codeword list: {} listed, {} encoded, {} in common", "", l.listed, l.encoded, l.common)?;
                }
                for err in &r.errata {
                    writeln!(out, "{:<14} erratum in {}: {}", "", err.field, err.reason)?;
                }
            }
        }
    }
    Ok(if rows.iter().any(RowResult::unexplained_mismatch) { EXIT_MISMATCH } else { 0 })
}

fn harness_reports(out: &mut impl Write, format: Format, reports: &[HarnessReport]) -> Result<(), Failure> {
    match format {
        Format::Json => {
            for r in reports {
                json_line(out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "statement", "verdict", "cases", "agreements", "vacuous", "failures"])?;
            for r in reports {
                w.write_record([
                    r.id.clone(),
                    format!("{:?}", r.statement),
                    format!("{:?}", r.verdict),
                    r.cases.to_string(),
                    r.agreements.to_string(),
                    r.vacuous.to_string(),
                    r.failures.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Human => {
            for r in reports {
                writeln!(
                    out,
                    "{:<22} {:<60} {:<9} {} cases, {} agree, {} fail, {} vacuous",
                    r.id,
                    format!("{:?}", r.statement),
                    format!("{:?}", r.verdict),
                    r.cases,
                    r.agreements,
                    r.failures,
                    r.vacuous
                )?;
                if let Some(c) = r.counterexamples.first() {
                    writeln!(out, "{:<22} first counterexample: {}", "", c.detail)?;
                    writeln!(out, "{:<22} case: {}", "", serde_json::to_string(&c.case).unwrap_or_default())?;
                }
                for n in &r.notes {
                    writeln!(out, "{:<22} note: {n}", "")?;
                }
            }
        }
    }
    Ok(())
}

fn harness_cmd(
    config: &RunConfig,
    only: &[HarnessName],
    generator_samples: Option<usize>,
    pair_samples: Option<usize>,
    out: &mut impl Write,
) -> Outcome {
    let mut scope = HarnessScope { seed: config.seed, max_size: config.max_size, dual_cap: config.dual_cap, ..HarnessScope::default() };
    if let Some(s) = generator_samples {
        scope.generator_samples = s;
    }
    if let Some(s) = pair_samples {
        scope.pair_samples = s;
    }
    scope.validate()?;
    let all = only.contains(&HarnessName::All);
    let want = |n: HarnessName| all || only.contains(&n);
    let mut reports = Vec::new();
    let runs: [(HarnessName, HarnessFn); 7] = [
        (HarnessName::Ideals, h::ideal_harness),
        (HarnessName::Generators, h::generator_harness),
        (HarnessName::Distance, h::distance_harness),
        (HarnessName::Gray, h::gray_harness),
        (HarnessName::Frobenius, h::frobenius_harness),
        (HarnessName::SelfDual, h::self_dual_harness),
        (HarnessName::R2, h::r2_structure_harness),
    ];
    for (name, run) in runs {
        if want(name) {
            reports.extend(run(&scope)?);
        }
    }
    harness_reports(out, config.format, &reports)?;
    Ok(0)
}

fn conjecture_cmd(config: &RunConfig, samples: usize, out: &mut impl Write) -> Outcome {
    let report: ConjectureReport = conjecture_harness(&ConjectureScope { samples, seed: config.seed, ..ConjectureScope::default() })?;
    match config.format {
        Format::Json => json_line(out, &report)?,
        _ => {
            harness_reports(out, config.format, &[report.if_direction.clone(), report.only_if_direction.clone()])?;
            if config.format == Format::Human {
                for c in &report.fixtures {
                    writeln!(
                        out,
                        "{}: l = {}, m = {}, palindromic row {}, reversible and RC {}, if holds {}, only-if holds {}",
                        c.id, c.index, c.co_index, c.palindromic_row, c.reversible_and_rc, c.if_direction, c.only_if_direction
                    )?;
                }
            }
        }
    }
    Ok(0)
}

fn search_cmd(
    config: &RunConfig,
    kind: args::Kind,
    index: usize,
    length: usize,
    require: &[args::Requirement],
    samples: usize,
    out: &mut impl Write,
) -> Outcome {
    let table = table(config)?;
    let report = search::search(&search::SearchParams {
        theta: config.theta,
        kind,
        index,
        n: length,
        require,
        samples,
        seed: config.seed,
        max_size: config.max_size,
        table: &table,
    })?;
    match config.format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["row", "2n", "M", "d_dna", "reversible", "complement", "reverse_complement", "sphere_bound", "bound_ratio"])?;
            for f in &report.findings {
                w.write_record([
                    format_vector(&f.row),
                    f.dna_length.to_string(),
                    f.m.to_string(),
                    f.d_dna.to_string(),
                    f.constraints.reversible_dna.to_string(),
                    f.constraints.complement.to_string(),
                    f.constraints.reverse_complement.to_string(),
                    f.sphere_bound.clone(),
                    f.bound_ratio.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Human => {
            writeln!(
                out,
                "{} search over {} first rows (coverage {:.6}), {} over the size cap, {} admissible",
                if report.exhaustive { "exhaustive" } else { "sampled" },
                report.candidates,
                report.coverage,
                report.skipped_over_cap,
                report.admissible
            )?;
            for f in &report.findings {
                writeln!(
                    out,
                    "({}, {}, {})  {}  bound {} ratio {:.6}",
                    f.dna_length,
                    f.m,
                    f.d_dna,
                    format_vector(&f.row),
                    f.sphere_bound,
                    f.bound_ratio
                )?;
            }
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn fit_cmd(
    config: &RunConfig,
    kind: Option<args::Kind>,
    index: usize,
    generators: &[String],
    length: Option<usize>,
    dna_file: Option<&std::path::Path>,
    subset: bool,
    any_lambda: bool,
    out_dir: Option<&std::path::Path>,
    limit: usize,
    out: &mut impl Write,
) -> Outcome {
    let mut conventions = Conventions::for_theta(config.theta);
    if any_lambda {
        conventions.lambdas = LAMBDAS.to_vec();
    }
    let mut evidence = Vec::new();
    if let (Some(kind), Some(path)) = (kind, dna_file) {
        let construction = args::construction(kind, index, generators, length)?;
        let code = build(config.theta, &construction, config.max_size)?;
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let dna = parse_dna_list(&text)?;
        let words = code.packed_words().to_vec();
        evidence.push(if subset { Evidence::subset(code.len(), words, dna) } else { Evidence::exact(code.len(), words, dna) });
    }
    let family = fit_table(config.theta, &evidence, &conventions)?;
    let mut written = Vec::new();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        for (k, t) in family.iter().take(limit).enumerate() {
            let path = dir.join(format!("table-{k}.txt"));
            std::fs::write(&path, t.to_file_string())?;
            written.push(path.display().to_string());
        }
    }
    let o = FitOutput { theta: config.theta, tables: family.len(), written };
    match config.format {
        Format::Json => json_line(out, &o)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["theta", "tables", "written"])?;
            w.write_record([o.theta.to_string(), o.tables.to_string(), o.written.join(" ")])?;
            w.flush()?;
        }
        Format::Human => {
            writeln!(out, "{} consistent table(s) for theta = {}", o.tables, o.theta)?;
            if o.written.is_empty() {
                for t in family.iter().take(limit) {
                    writeln!(out, "{}", t.to_file_string())?;
                }
            }
            for p in &o.written {
                writeln!(out, "wrote {p}")?;
            }
        }
    }
    Ok(0)
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    if let Some(jobs) = cli.config.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let c = &cli.config;
    match &cli.command {
        Command::RingTable => ring_table(c, out),
        Command::Build { spec, emit_dna } => build_cmd(c, spec, *emit_dna, out),
        Command::Dual { spec } => dual_cmd(c, spec, out),
        Command::VerifyPaper => verify_cmd(c, out),
        Command::Harness { only, generator_samples, pair_samples } => harness_cmd(c, only, *generator_samples, *pair_samples, out),
        Command::Conjecture { samples } => conjecture_cmd(c, *samples, out),
        Command::Search { kind, index, length, require, samples } => search_cmd(c, *kind, *index, *length, require, *samples, out),
        Command::FitTable { kind, index, generators, length, dna_file, subset, any_lambda, out_dir, limit } => fit_cmd(
            c,
            *kind,
            *index,
            generators,
            *length,
            dna_file.as_deref(),
            *subset,
            *any_lambda,
            out_dir.as_deref(),
            *limit,
            out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            EXIT_CAP
        }
    };
    if let Err(e) = out.flush() {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::from(code)
}
