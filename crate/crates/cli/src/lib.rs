//! Command-line front end for `fillsurg`.
//!
//! Exit codes: 0 on success, 1 when the computation returns a negative
//! domain verdict (invalid certificate, obstruction, undetermined rule,
//! failed table check), 2 on parse or usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use fillsurg::catalog::{self, MuEntry, TableReport};
use fillsurg::construct::{self, ConstructionError, ConstructionVerdict, Fillable};
use fillsurg::disk::{self, DiskClass};
use fillsurg::{
    alexander, parse_braid, positive_braid_genus, self_linking, BraidWord, Certificate,
    CertificateError, TorusKnot,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fillsurg",
    version,
    about = "Certificates and exact arithmetic for fillable positive contact surgery"
)]
struct Cli {
    /// Emit tab-separated values instead of prose.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction, blowup schedule and minimal fillable coefficient of T(p,q).
    Torus {
        p: Option<i64>,
        q: Option<i64>,
        /// Sweep all coprime 2 <= q < p <= MAX instead of a single knot.
        #[arg(long, value_name = "MAX", conflicts_with_all = ["p", "q"])]
        max: Option<i64>,
    },
    /// Closure invariants of a braid word `B<n>: letters` (literal or file).
    Braid { word: String },
    /// Validate a band/twist certificate (JSON file or inline literal).
    Certify {
        certificate: String,
        /// Compare the closure with this braid through invariants.
        #[arg(long)]
        target: Option<String>,
    },
    /// Surgery coefficient and genus of a disk class `n1,n2,...`.
    Diskclass { parts: String },
    /// Values r <= LIMIT with no sum-of-squares representation avoiding 1.
    Gapset { limit: u64 },
    /// Disk classes with coefficient r and genus g, and bounds on mu for genus g.
    Consistent { r: u64, g: u64 },
    /// Existence rules for fillable surgeries.
    Construct {
        #[command(subcommand)]
        rule: ConstructRule,
    },
    /// Verify the knot catalog.
    Table {
        /// Catalog file; defaults to the shipped catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Alexander polynomial file; defaults to alexander.tsv beside the catalog.
        #[arg(long)]
        alexander: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructRule {
    /// (a) closure of a positive braid.
    PositiveBraid { word: String },
    /// (b) knot with a lens space surgery at the given coefficient.
    Lens {
        #[arg(long)]
        genus: u64,
        #[arg(long, allow_hyphen_values = true)]
        coefficient: i64,
    },
    /// (c) satellite with a braided fillable pattern.
    Satellite {
        pattern: String,
        /// Fillable coefficient m of the companion.
        #[arg(long, allow_hyphen_values = true)]
        companion: i64,
        /// Slice genus of the satellite, if known.
        #[arg(long)]
        genus: Option<u64>,
    },
    /// (d) (p,q) cable of a companion with fillable coefficient m.
    Cable {
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        companion: i64,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn domain(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let tsv = cli.tsv;
    let mut buf = String::new();
    let result = dispatch(cli.command, tsv, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, tsv: bool, out: &mut String) -> Outcome {
    match command {
        Command::Torus { p, q, max } => match (p, q, max) {
            (_, _, Some(max)) => torus_sweep(max, tsv, out),
            (Some(p), Some(q), None) => torus(p, q, tsv, out),
            _ => Err(usage("torus needs P and Q, or --max")),
        },
        Command::Braid { word } => braid(&word, tsv, out),
        Command::Certify {
            certificate,
            target,
        } => certify(&certificate, target.as_deref(), tsv, out),
        Command::Diskclass { parts } => diskclass(&parts, tsv, out),
        Command::Gapset { limit } => gapset(limit, tsv, out),
        Command::Consistent { r, g } => consistent(r, g, tsv, out),
        Command::Construct { rule } => construct_cmd(rule, tsv, out),
        Command::Table { catalog, alexander } => table(catalog, alexander, tsv, out),
    }
}

macro_rules! line {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn read_braid(arg: &str) -> Result<BraidWord, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    parse_braid(text.trim()).map_err(|e| usage(format!("braid {:?}: {e}", text.trim())))
}

fn read_certificate(arg: &str) -> Result<Certificate, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?
    };
    Certificate::from_json(&text).map_err(|e| usage(e.to_string()))
}

fn schedule_text(rep: &fillsurg::TorusReport, sep: &str) -> String {
    rep.schedule
        .iter()
        .map(|s| format!("{}x{}", s.multiplicity, s.count))
        .collect::<Vec<_>>()
        .join(sep)
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

const TORUS_HEADER: &str = "p\tq\tcf\tremainders\tschedule\tmu\tm\tc\tgenus\tdisk_class";

fn torus_row(rep: &fillsurg::TorusReport) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        rep.knot.p(),
        rep.knot.q(),
        join(rep.cf.coefficients(), ","),
        join(&rep.remainders, ","),
        if rep.schedule.is_empty() {
            "-".to_string()
        } else {
            schedule_text(rep, ",")
        },
        rep.mu,
        rep.m,
        rep.c,
        rep.genus,
        rep.disk_class
    )
}

fn torus(p: i64, q: i64, tsv: bool, out: &mut String) -> Outcome {
    let knot = TorusKnot::new(p, q).map_err(|e| usage(e.to_string()))?;
    let rep = knot.report();
    if tsv {
        line!(out, "{TORUS_HEADER}");
        line!(out, "{}", torus_row(&rep));
        return Ok(EXIT_OK);
    }
    let (p, q) = (knot.p(), knot.q());
    line!(out, "{knot}");
    if knot.is_unknot() {
        line!(out, "  unknot: genus 0, mu = 0 (slice disk, no blowup needed)");
        return Ok(EXIT_OK);
    }
    line!(out, "  continued fraction  {p}/{q} = {}", rep.cf);
    line!(out, "  Euclidean remainders {}", join(&rep.remainders, ", "));
    line!(
        out,
        "  blowup schedule     {} then smooth with tangency a_n = {}",
        schedule_text(&rep, ", "),
        rep.terminal_tangency
    );
    line!(
        out,
        "  disk class          {{{}}}: r = sum of squares = {}, genus {}",
        rep.disk_class,
        rep.resolved_self_intersection(),
        rep.disk_class.genus()
    );
    line!(
        out,
        "  c = {}, m = pq - c = {} (c is also the reversed continued fraction)",
        rep.c,
        rep.m
    );
    line!(
        out,
        "  mu = pq - a_n = {}, the ceiling of m, realized by the resolution above",
        rep.mu
    );
    line!(
        out,
        "  genus (p-1)(q-1)/2 = {}; 2g < mu <= 4g: {} < {} <= {}",
        rep.genus,
        2 * rep.genus,
        rep.mu,
        4 * rep.genus
    );
    Ok(EXIT_OK)
}

fn torus_sweep(max: i64, tsv: bool, out: &mut String) -> Outcome {
    if max < 3 {
        return Err(usage("--max must be at least 3"));
    }
    if tsv {
        line!(out, "{TORUS_HEADER}");
    } else {
        line!(out, "{:>5} {:>5}  {:>7} {:>10} {:>6}  {:<16} schedule", "p", "q", "mu", "m", "genus", "cf");
    }
    for p in 3..=max {
        for q in 2..p {
            let Ok(knot) = TorusKnot::new(p, q) else {
                continue;
            };
            let rep = knot.report();
            if tsv {
                line!(out, "{}", torus_row(&rep));
            } else {
                line!(
                    out,
                    "{:>5} {:>5}  {:>7} {:>10} {:>6}  {:<16} {}",
                    p,
                    q,
                    rep.mu,
                    rep.m.to_string(),
                    rep.genus,
                    rep.cf.to_string(),
                    schedule_text(&rep, ", ")
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn braid(arg: &str, tsv: bool, out: &mut String) -> Outcome {
    let word = read_braid(arg)?;
    let components = word.closure_components();
    let alex = (components == 1).then(|| alexander(&word).expect("knot closure"));
    let genus = positive_braid_genus(&word).ok();
    let fields: Vec<(&str, String)> = vec![
        ("word", word.to_string()),
        ("strands", word.strands().to_string()),
        ("length", word.len().to_string()),
        ("permutation", word.permutation().to_string()),
        ("components", components.to_string()),
        ("exponent_sum", word.exponent_sum().to_string()),
        ("self_linking", self_linking(&word).to_string()),
        (
            "alexander",
            alex.as_ref().map_or("-".into(), |a| a.to_string()),
        ),
        (
            "positive_genus",
            genus.map_or("-".into(), |g| g.to_string()),
        ),
    ];
    if tsv {
        for (k, v) in &fields {
            line!(out, "{k}\t{v}");
        }
    } else {
        line!(out, "{word}");
        line!(out, "  permutation {} ({components} component(s))", word.permutation());
        line!(out, "  exponent sum {}, self-linking e - n = {}", word.exponent_sum(), self_linking(&word));
        if let Some(a) = &alex {
            line!(out, "  Alexander polynomial {a} (reduced Burau)");
        }
        if let Some(g) = genus {
            line!(out, "  positive braid: genus (e - n + 1)/2 = {g}");
        }
    }
    Ok(EXIT_OK)
}

fn certify(arg: &str, target: Option<&str>, tsv: bool, out: &mut String) -> Outcome {
    let cert = read_certificate(arg)?;
    let target = target.map(read_braid).transpose()?;
    let report = match cert.validate() {
        Ok(r) => r,
        Err(e @ CertificateError::IndexOutOfRange { .. }) => return Err(usage(e.to_string())),
        Err(e) => {
            if tsv {
                line!(out, "valid\tfalse");
                line!(out, "error\t{e}");
            } else {
                line!(out, "certificate rejected: {e}");
            }
            return Ok(EXIT_DOMAIN);
        }
    };
    let check = target
        .as_ref()
        .map(|t| cert.check_target(t).expect("certificate validated"));
    if tsv {
        line!(out, "valid\ttrue");
        line!(out, "strands\t{}", cert.strands);
        line!(out, "bands\t{}", report.band_count);
        line!(out, "g\t{}", report.genus);
        line!(out, "r\t{}", report.surgery_coefficient);
        line!(out, "sl\t{}", report.self_linking);
        line!(out, "disk_class\t{}", report.disk_class);
        line!(out, "extended\t{}", report.extended);
        line!(out, "flattened\t{}", report.flattened);
        if let Some(c) = &check {
            line!(out, "consistent\t{}", c.consistent());
        }
    } else {
        line!(out, "{cert}");
        line!(
            out,
            "  {} bands on {} strands, closure is a knot",
            report.band_count,
            cert.strands
        );
        line!(out, "  disk class {{{}}}", report.disk_class);
        line!(
            out,
            "  g = {}  (2g = sum m(m-1))",
            report.genus
        );
        line!(
            out,
            "  r = {}  (sum m^2 = 2g + sum m): smooth {}-surgery is fillable, so mu <= {}",
            report.surgery_coefficient,
            report.surgery_coefficient,
            report.surgery_coefficient
        );
        line!(out, "  sl = {}  (= 2g - 1)", report.self_linking);
        if report.extended {
            line!(out, "  extended: uses a full twist of multiplicity >= 3 (one blowup per singular point)");
        }
        line!(out, "  flattened {}", report.flattened);
        if let Some(c) = &check {
            line!(
                out,
                "  target: components {} vs {}, self-linking {} vs {}, Alexander {}",
                c.components.0,
                c.components.1,
                c.self_linking.0,
                c.self_linking.1,
                match &c.alexander {
                    Some((a, b)) if a == b => "agrees".to_string(),
                    Some((a, b)) => format!("{a} vs {b}"),
                    None => "not compared".to_string(),
                }
            );
            line!(
                out,
                "  {}",
                if c.consistent() {
                    "consistent with the target (invariants only, not a proof of equality)"
                } else {
                    "inconsistent with the target"
                }
            );
        }
    }
    Ok(match check {
        Some(c) if !c.consistent() => EXIT_DOMAIN,
        _ => EXIT_OK,
    })
}

fn diskclass(arg: &str, tsv: bool, out: &mut String) -> Outcome {
    let class: DiskClass = arg.parse().map_err(|e: disk::DiskError| usage(e.to_string()))?;
    let r = class.surgery_coefficient();
    let g = class.genus();
    if tsv {
        line!(out, "parts\tr\tg\tunit_part");
        line!(out, "{class}\t{r}\t{g}\t{}", class.has_unit_part());
    } else {
        line!(out, "disk class {{{class}}}");
        line!(out, "  r = -D.D = sum n^2 = {r}");
        line!(out, "  g = sum n(n-1)/2 = {g}");
        if class.has_unit_part() {
            line!(
                out,
                "  has a part equal to 1: blowing down gives {{{}}}",
                class.blow_down().expect("unit part present")
            );
        }
    }
    Ok(EXIT_OK)
}

fn gapset(limit: u64, tsv: bool, out: &mut String) -> Outcome {
    let computed = disk::gap_set(limit);
    let computed: Vec<u64> = computed.into_iter().collect();
    let cited: Vec<u64> = disk::CITED_GAP_LIST.iter().copied().filter(|&v| v <= limit).collect();
    let extra = disk::gap_discrepancies(limit);
    let missing: Vec<u64> = cited.iter().copied().filter(|v| !computed.contains(v)).collect();
    if tsv {
        line!(out, "limit\tcited\tcomputed\tdiscrepancies");
        let show = |v: &[u64]| if v.is_empty() { "-".to_string() } else { join(v, ",") };
        line!(out, "{limit}\t{}\t{}\t{}", show(&cited), show(&computed), show(&extra));
    } else {
        line!(out, "gaps of the semigroup generated by squares >= 4, up to {limit}");
        line!(out, "  cited list:  {{{}}}", join(&cited, ", "));
        line!(out, "  computed:    {{{}}}", join(&computed, ", "));
        for v in &extra {
            line!(
                out,
                "  DISCREPANCY: {v} is a gap (every sum of squares equal to {v} uses 1) but is missing from the cited list"
            );
        }
        for v in &missing {
            line!(out, "  DISCREPANCY: {v} is cited but is not a gap");
        }
        line!(out, "  for r in the computed set, a fillable r-surgery forces a disk class with a unit part, which blows down");
    }
    Ok(EXIT_OK)
}

fn consistent(r: u64, g: u64, tsv: bool, out: &mut String) -> Outcome {
    let classes = disk::consistent_classes(r, g);
    let bounds = disk::mu_bounds(g, false).expect("no slice disk claimed");
    if tsv {
        line!(out, "r\tg\tclass");
        for c in &classes {
            line!(out, "{r}\t{g}\t{c}");
        }
    } else {
        line!(out, "disk classes with r = {r}, g = {g}: {}", classes.len());
        for c in &classes {
            line!(out, "  {{{c}}}");
        }
        if classes.is_empty() {
            line!(out, "  none: no fillable {r}-surgery on a knot of slice genus {g}");
        }
        line!(
            out,
            "mu bounds for g = {g}: {} <= mu <= {}, least consistent coefficient {}",
            bounds.effective_lower.max(bounds.arithmetic_lower),
            bounds.upper,
            bounds.arithmetic_lower
        );
    }
    Ok(EXIT_OK)
}

fn print_verdict(v: &ConstructionVerdict, tsv: bool, out: &mut String) -> i32 {
    if tsv {
        line!(out, "rule\tfillable\tbound\tcrossing_changes\tnotes");
        line!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            v.rule.clause(),
            match v.fillable {
                Fillable::Yes => "yes",
                Fillable::NotDetermined => "not_determined",
            },
            v.coefficient_bound.map_or("-".into(), |b| b.to_string()),
            v.crossing_changes.map_or("-".into(), |b| b.to_string()),
            if v.notes.is_empty() { "-".into() } else { v.notes.join("; ") }
        );
    } else {
        line!(out, "rule {}: fillable {}", v.rule, v.fillable);
        if let Some(b) = v.coefficient_bound {
            line!(out, "  fillable smooth coefficient {b}, so mu <= {b}");
        }
        if let Some(c) = v.crossing_changes {
            line!(out, "  unknotting budget: {c} crossing change(s), (l - n + 1)/2");
        }
        for n in &v.notes {
            line!(out, "  {n}");
        }
    }
    match v.fillable {
        Fillable::Yes => EXIT_OK,
        Fillable::NotDetermined => EXIT_DOMAIN,
    }
}

fn construct_cmd(rule: ConstructRule, tsv: bool, out: &mut String) -> Outcome {
    let verdict = match rule {
        ConstructRule::PositiveBraid { word } => construct::positive_braid_rule(&read_braid(&word)?),
        ConstructRule::Lens { genus, coefficient } => construct::lens_rule(genus, coefficient),
        ConstructRule::Satellite {
            pattern,
            companion,
            genus,
        } => construct::satellite_rule(&read_certificate(&pattern)?, companion, genus),
        ConstructRule::Cable { p, q, companion } => construct::cable_rule(p, q, companion),
    };
    match verdict {
        Ok(v) => Ok(print_verdict(&v, tsv, out)),
        Err(
            e @ (ConstructionError::NotCoprime { .. }
            | ConstructionError::BadWinding(_)
            | ConstructionError::NonPositiveCoefficient(_)),
        ) => Err(usage(e.to_string())),
        Err(e) => Err(domain(e.to_string())),
    }
}

fn print_table(report: &TableReport, tsv: bool, out: &mut String) {
    let witness = |w: Option<(u64, u64)>| w.map_or("-".into(), |(g, r)| format!("{g},{r}"));
    if tsv {
        line!(out, "name\tfillable\tmu\twitness_g_r\tderived\tobstruction\tstatus");
        for row in &report.rows {
            line!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                row.name,
                if row.fillable { "Y" } else { "N" },
                row.mu,
                witness(row.witness),
                row.derived.map_or("-".into(), |(a, b)| format!("{a}..{b}")),
                if row.obstruction.is_empty() { "-".into() } else { join(&row.obstruction, ",") },
                if row.passed() { "ok" } else { "FAIL" }
            );
        }
    } else {
        for row in &report.rows {
            let mu = match row.mu {
                MuEntry::Infinite => "inf".to_string(),
                m => m.to_string(),
            };
            line!(
                out,
                "{:<7} {} mu {:<5} witness {:<6} {:<18} {}",
                row.name,
                if row.fillable { "Y" } else { "N" },
                mu,
                witness(row.witness),
                if row.obstruction.is_empty() { String::new() } else { join(&row.obstruction, ",") },
                if row.passed() { "ok" } else { "FAIL" }
            );
            for f in &row.failures {
                line!(out, "        failure: {f}");
            }
            for r in &row.remarks {
                line!(out, "        note: {r}");
            }
        }
    }
    line!(
        out,
        "# rows {} yes {} no {} failures {}",
        report.total(),
        report.yes,
        report.no,
        report.failure_count()
    );
}

fn table(path: Option<PathBuf>, alexander: Option<PathBuf>, tsv: bool, out: &mut String) -> Outcome {
    let report = match path {
        None => catalog::verify_table(),
        Some(path) => {
            let records = catalog::load_catalog(&path).map_err(|e| usage(e.to_string()))?;
            let alex_path = alexander.or_else(|| {
                let sibling = path.parent().unwrap_or(Path::new(".")).join("alexander.tsv");
                sibling.is_file().then_some(sibling)
            });
            let alex = match alex_path {
                Some(p) => catalog::load_alexander(&p).map_err(|e| usage(e.to_string()))?,
                None => Default::default(),
            };
            catalog::verify_records(&records, &alex)
        }
    };
    print_table(&report, tsv, out);
    Ok(if report.failure_count() == 0 {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    })
}
