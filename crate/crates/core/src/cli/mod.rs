//! Command-line surface.
//!
//! [`run`] parses arguments, executes one command and returns the rendered
//! output with its exit code, so the binary and the tests share one path.
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input.

mod output;
pub mod replay;

use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::{gcd_u128, mod_inverse, reduce};
use crate::dedekind::{DedekindEval, Method};
use crate::equality::{
    classify_pair, integer_difference, necessary_condition, EqualityClass, UnitTable,
};
use crate::error::Error;
use crate::families::{
    corollary1_family, corollary2_classify, corollary3_family, corollary4_family, shift_t,
    table1_row, theorem1_family, PowerFamily, QuadraticFamily, Sign, Verification, TABLE1_T,
};

use output::{join, Fmt};
pub use output::{render_json, Format, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dedekind",
    version,
    about = "Exact Dedekind sums S(m,n) = 12 s(m,n)"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Fractional digits in decimal renderings (round half to even)
    #[arg(long, global = true, default_value_t = 10)]
    pub digits: usize,

    /// Worker threads for parallel sweeps (default: available cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate S(m, n)
    #[command(allow_negative_numbers = true)]
    Sum {
        m: i128,
        n: u64,
        /// Use the O(n) term-by-term evaluator
        #[arg(long)]
        oracle: bool,
        /// Also print s(m, n) = S(m, n) / 12
        #[arg(long)]
        little: bool,
    },
    /// Partition the units mod n into classes of equal S(., n)
    Classes(ClassesArgs),
    /// Relation between S(m1, n) and S(m2, n)
    #[command(allow_negative_numbers = true)]
    CheckPair { m1: i128, m2: i128, n: u64 },
    /// Construct and verify a family of equal sums
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Regenerate the table of eligible primes for small square-free t
    Table1 {
        /// Only this t (must be square-free)
        #[arg(long = "t")]
        t: Option<u64>,
        /// Primes per row
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
    /// Replay every published numeric example
    VerifyPaper {
        /// List item identifiers without running them
        #[arg(long)]
        list: bool,
        /// Run only items whose identifier starts with this prefix
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct ClassesArgs {
    pub n: u64,
    /// Keep members a + b j with gcd(j, b) = 1, written `amodb` (e.g. 1mod9)
    #[arg(long)]
    pub filter: Option<ResidueFilter>,
    /// Drop classes with a single (filtered) member
    #[arg(long)]
    pub nonsingleton: bool,
    /// Keep only classes containing a non-obvious equality
    #[arg(long)]
    pub nonobvious: bool,
    /// Append the square-free size bounds report
    #[arg(long)]
    pub bounds: bool,
    /// Partner statistics for pivots, `a..b` or a single value
    #[arg(long)]
    pub pivot: Option<PivotRange>,
    /// Largest modulus accepted without complaint
    #[arg(long, default_value_t = 1_000_000)]
    pub max_n: u64,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// S(eps + d n m, d n^2) for m prime to n
    Theorem1 {
        #[arg(short = 'd')]
        d: u64,
        #[arg(short = 'n')]
        n: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
    },
    /// S(eps + l^r q m, l^k) for m prime to l^(k-r)/q
    Corollary1 {
        #[arg(short = 'l')]
        l: u64,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'r')]
        r: u32,
        #[arg(short = 'q')]
        q: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
    },
    /// Full class of eps + p^r m' mod p^k, k/2 <= r <= k
    Corollary2 {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'r')]
        r: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
    },
    /// S(eps + p m, p^2) for m = 1..p-1
    Corollary3 {
        #[arg(short = 'p')]
        p: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
    },
    /// S(1 + m t, n t) over the roots of m^2 - t m - 1 mod n
    Quad {
        #[arg(short = 't')]
        t: u64,
        /// Comma-separated odd primes
        #[arg(short = 'p', value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Replace t by t + l n
        #[arg(long)]
        shift: Option<u64>,
    },
}

/// `a + b j` with `gcd(j, b) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueFilter {
    pub a: i128,
    pub b: u64,
}

impl ResidueFilter {
    pub fn matches(&self, m: u64) -> bool {
        let diff = m as i128 - self.a;
        let b = self.b as i128;
        diff % b == 0 && gcd_u128((diff / b).unsigned_abs(), self.b as u128) == 1
    }
}

impl FromStr for ResidueFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once("mod")
            .ok_or_else(|| format!("expected `amodb`, got `{s}`"))?;
        let a = a.trim().parse().map_err(|e| format!("bad residue: {e}"))?;
        let b: u64 = b.trim().parse().map_err(|e| format!("bad modulus: {e}"))?;
        if b == 0 {
            return Err("modulus must be positive".into());
        }
        Ok(ResidueFilter { a, b })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotRange(pub RangeInclusive<i128>);

impl FromStr for PivotRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| {
            v.trim()
                .parse::<i128>()
                .map_err(|e| format!("bad pivot: {e}"))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(PivotRange(parse(a)?..=parse(b.trim_start_matches('='))?)),
            None => {
                let v = parse(s)?;
                Ok(PivotRange(v..=v))
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
///
/// Returns `(stdout, stderr, exit code)`.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (text, String::new(), code)
            } else {
                (String::new(), text, code)
            };
        }
    };
    let pool = match cli.threads {
        Some(0) => {
            return (
                String::new(),
                "--threads must be positive\n".into(),
                EXIT_INVALID,
            )
        }
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return (String::new(), format!("thread pool: {e}\n"), EXIT_INVALID),
    };
    let fmt = Fmt { digits: cli.digits };
    match pool.install(|| execute(&cli.command, fmt)) {
        Ok(report) => (report.render(cli.format), String::new(), report.exit_code),
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_INVALID),
    }
}

#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn execute(cmd: &Command, fmt: Fmt) -> CliResult<Report> {
    match cmd {
        Command::Sum {
            m,
            n,
            oracle,
            little,
        } => cmd_sum(*m, *n, *oracle, *little, fmt),
        Command::Classes(args) => cmd_classes(args, fmt),
        Command::CheckPair { m1, m2, n } => cmd_check_pair(*m1, *m2, *n, fmt),
        Command::Family(f) => cmd_family(f, fmt),
        Command::Table1 { t, count } => cmd_table1(*t, *count),
        Command::VerifyPaper { list, only } => Ok(replay::cmd_verify(*list, only.as_deref())),
    }
}

fn ok(text: String, json: Value, tables: Vec<Table>) -> Report {
    Report {
        text,
        json,
        tables,
        exit_code: EXIT_OK,
    }
}

pub fn cmd_sum(m: i128, n: u64, oracle: bool, little: bool, fmt: Fmt) -> CliResult<Report> {
    let method = if oracle { Method::Oracle } else { Method::Fast };
    let eval = DedekindEval::new(m, n, method)?;
    let mut text = format!("{}\n", fmt.text(&eval.value));
    let mut json = json!({
        "m": eval.m.to_string(),
        "n": n.to_string(),
        "method": eval.method,
        "S": fmt.json(&eval.value),
    });
    let mut table = Table::new(&["m", "n", "S_num", "S_den", "S_decimal"]);
    let [a, b, c] = fmt.cells(&eval.value);
    let mut row = vec![eval.m.to_string(), n.to_string(), a, b, c];
    if little {
        let s = eval.little();
        text.push_str(&format!("s = {}\n", fmt.text(&s)));
        json["s"] = fmt.json(&s);
        table
            .header
            .extend(["s_num", "s_den", "s_decimal"].map(String::from));
        row.extend(fmt.cells(&s));
    }
    table.push(row);
    Ok(ok(text, json, vec![table]))
}

fn class_json(c: &EqualityClass, fmt: Fmt) -> Value {
    json!({
        "value": fmt.json(&c.value),
        "members": c.members,
        "non_obvious_pairs": c.non_obvious_pairs(),
    })
}

pub fn cmd_classes(args: &ClassesArgs, fmt: Fmt) -> CliResult<Report> {
    let n = args.n;
    if n > args.max_n {
        return Err(CliError::Usage(format!(
            "modulus {n} exceeds the scale bound {}; raise it with --max-n",
            args.max_n
        )));
    }
    let table = UnitTable::new(n)?;
    let bounds = if args.bounds {
        Some(table.bounds_report()?)
    } else {
        None
    };
    let pivots = match &args.pivot {
        Some(range) => range
            .0
            .clone()
            .map(|m| table.pivot_report(m))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let all = table.classes();
    let total = all.len();
    let classes: Vec<EqualityClass> = all
        .into_iter()
        .map(|c| match args.filter {
            Some(f) => c.restricted(|m| f.matches(m)),
            None => c,
        })
        .filter(|c| !c.is_empty())
        .filter(|c| !args.nonsingleton || c.len() > 1)
        .filter(|c| !args.nonobvious || c.has_non_obvious())
        .collect();

    let mut text = format!(
        "n = {n}: {} units, {total} distinct values, {} classes shown\n",
        table.len(),
        classes.len()
    );
    let mut csv = Table::new(&[
        "min_member",
        "size",
        "num",
        "den",
        "decimal",
        "members",
        "non_obvious_pairs",
    ]);
    for c in &classes {
        let pairs = c.non_obvious_pairs();
        text.push_str(&format!(
            "{{{}}}  S = {}",
            join(&c.members, ", "),
            fmt.text(&c.value)
        ));
        if !pairs.is_empty() {
            let shown: Vec<String> = pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect();
            text.push_str(&format!("  non-obvious: {}", shown.join(", ")));
        }
        text.push('\n');
        let [num, den, dec] = fmt.cells(&c.value);
        let shown: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        csv.push(vec![
            c.members[0].to_string(),
            c.len().to_string(),
            num,
            den,
            dec,
            join(&c.members, " "),
            shown.join(" "),
        ]);
    }
    let mut json = json!({
        "n": n,
        "units": table.len(),
        "distinct_values": total,
        "classes": classes.iter().map(|c| class_json(c, fmt)).collect::<Vec<_>>(),
    });
    let mut tables = vec![csv];
    if let Some(b) = &bounds {
        text.push_str(&format!(
            "bounds: r = {}, max integer-difference set {} <= 2^r = {}: {}; distinct values {} >= {}: {}; largest equal class {}\n",
            b.r,
            b.max_class_size,
            b.bound_2r,
            b.max_within_bound,
            b.distinct_values,
            b.lower_bound,
            b.distinct_at_least_lower,
            b.max_equal_class_size,
        ));
        json["bounds"] = serde_json::to_value(b).expect("serializable");
        let mut t = Table::new(&[
            "n",
            "r",
            "max_class_size",
            "max_equal_class_size",
            "distinct_values",
            "bound_2r",
            "lower_bound",
        ]);
        t.push(
            [
                b.n,
                b.r as u64,
                b.max_class_size,
                b.max_equal_class_size,
                b.distinct_values,
                b.bound_2r,
                b.lower_bound,
            ]
            .iter()
            .map(u64::to_string)
            .collect(),
        );
        tables.push(t);
    }
    if !pivots.is_empty() {
        let mut t = Table::new(&[
            "m1",
            "partners",
            "integer_difference_partners",
            "class_size",
            "largest_equal_group",
            "non_obvious_among_partners",
        ]);
        for p in &pivots {
            text.push_str(&format!(
                "pivot {}: {} partners, largest equal-value group {}, own class size {}, non-obvious among partners: {}\n",
                p.m1, p.partners, p.largest_equal_group, p.class_size, p.non_obvious_among_partners
            ));
            t.push(vec![
                p.m1.to_string(),
                p.partners.to_string(),
                p.integer_difference_partners.to_string(),
                p.class_size.to_string(),
                p.largest_equal_group.to_string(),
                p.non_obvious_among_partners.to_string(),
            ]);
        }
        json["pivots"] = serde_json::to_value(&pivots).expect("serializable");
        tables.push(t);
    }
    Ok(ok(text, json, tables))
}

pub fn cmd_check_pair(m1: i128, m2: i128, n: u64, fmt: Fmt) -> CliResult<Report> {
    let verdict = classify_pair(m1, m2, n)?;
    let s1 = DedekindEval::new(m1, n, Method::Fast)?.value;
    let s2 = DedekindEval::new(m2, n, Method::Fast)?.value;
    let cond = necessary_condition(m1, m2, n)?;
    let intd = integer_difference(m1, m2, n)?;
    let text = format!(
        "S({}, {n}) = {}\nS({}, {n}) = {}\nrelation: {}\n(m1 - m2)(m1 m2 - 1) ≡ 0 mod n: {cond}\ninteger difference: {intd}\n",
        verdict.m1,
        fmt.text(&s1),
        verdict.m2,
        fmt.text(&s2),
        verdict.relation.as_str(),
    );
    let json = json!({
        "m1": verdict.m1,
        "m2": verdict.m2,
        "n": n,
        "S1": fmt.json(&s1),
        "S2": fmt.json(&s2),
        "relation": verdict.relation,
        "necessary_condition": cond,
        "integer_difference": intd,
    });
    let mut t = Table::new(&[
        "m1",
        "m2",
        "n",
        "relation",
        "necessary_condition",
        "integer_difference",
    ]);
    t.push(vec![
        verdict.m1.to_string(),
        verdict.m2.to_string(),
        n.to_string(),
        verdict.relation.as_str().into(),
        cond.to_string(),
        intd.to_string(),
    ]);
    Ok(ok(text, json, vec![t]))
}

fn verification_json(v: &Verification, fmt: Fmt) -> Value {
    json!({
        "checked": v.checked,
        "verified": v.passed(),
        "mismatches": v.mismatches.iter().map(|(m, val)| json!({"member": m, "value": fmt.json(val)})).collect::<Vec<_>>(),
    })
}

fn verification_text(v: &Verification) -> String {
    if v.passed() {
        format!(
            "verified: all {} members evaluate to the predicted value\n",
            v.checked
        )
    } else {
        let bad: Vec<String> = v
            .mismatches
            .iter()
            .map(|(m, val)| format!("{m} -> {val}"))
            .collect();
        format!("MISMATCH: {}\n", bad.join(", "))
    }
}

fn exit_for(v: &Verification) -> i32 {
    if v.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn power_report(f: &PowerFamily, fmt: Fmt) -> Report {
    let v = f.verify();
    let text = format!(
        "modulus {}\nvalue {}\nmembers ({}): {}\n{}",
        f.modulus,
        fmt.text(&f.predicted_value),
        f.members.len(),
        join(&f.members, ", "),
        verification_text(&v)
    );
    let json = json!({
        "params": f.params,
        "modulus": f.modulus,
        "value": fmt.json(&f.predicted_value),
        "members": f.members,
        "verification": verification_json(&v, fmt),
    });
    let mut t = Table::new(&["member", "modulus", "num", "den", "decimal"]);
    for &m in &f.members {
        let [a, b, c] = fmt.cells(&f.predicted_value);
        t.push(vec![m.to_string(), f.modulus.to_string(), a, b, c]);
    }
    Report {
        text,
        json,
        tables: vec![t],
        exit_code: exit_for(&v),
    }
}

fn quad_report(f: &QuadraticFamily, fmt: Fmt) -> CliResult<Report> {
    let v = f.verify();
    let inverses: Vec<u64> = f
        .arguments
        .iter()
        .map(|&a| mod_inverse(a as i128, f.nt))
        .collect::<Result<_, _>>()?;
    let mut text = format!(
        "t = {}, t^2 + 4 = {} * {}^2\nprimes {}; n = {}, nt = {}\nvalue {}\n{} solutions of m^2 - t m - 1 ≡ 0 mod n: {}\narguments 1 + m t mod nt: {}\ninverses mod nt: {}\n",
        f.t,
        f.q,
        f.k,
        join(&f.primes, ", "),
        f.n,
        f.nt,
        fmt.text(&f.predicted_value),
        f.solutions.len(),
        join(&f.solutions, ", "),
        join(&f.arguments, ", "),
        join(&inverses, ", "),
    );
    if f.nt_not_square_free {
        text.push_str("warning: nt is not square-free\n");
    }
    text.push_str(&verification_text(&v));
    let json = json!({
        "t": f.t,
        "q": f.q,
        "k": f.k,
        "primes": f.primes,
        "n": f.n,
        "nt": f.nt,
        "value": fmt.json(&f.predicted_value),
        "solutions": f.solutions,
        "arguments": f.arguments,
        "inverses": inverses,
        "nt_not_square_free": f.nt_not_square_free,
        "verification": verification_json(&v, fmt),
    });
    let mut t = Table::new(&[
        "solution", "argument", "inverse", "nt", "num", "den", "decimal",
    ]);
    let mut by_arg: Vec<(u64, u64)> = f
        .solutions
        .iter()
        .map(|&m| (reduce(1 + m as i128 * f.t as i128, f.nt), m))
        .collect();
    by_arg.sort_unstable();
    for ((a, m), inv) in by_arg.iter().zip(&inverses) {
        let [x, y, z] = fmt.cells(&f.predicted_value);
        t.push(vec![
            m.to_string(),
            a.to_string(),
            inv.to_string(),
            f.nt.to_string(),
            x,
            y,
            z,
        ]);
    }
    Ok(Report {
        text,
        json,
        tables: vec![t],
        exit_code: exit_for(&v),
    })
}

pub fn cmd_family(cmd: &FamilyCommand, fmt: Fmt) -> CliResult<Report> {
    match *cmd {
        FamilyCommand::Theorem1 { d, n, eps } => Ok(power_report(
            &theorem1_family(d, n, Sign::try_from(eps)?)?,
            fmt,
        )),
        FamilyCommand::Corollary1 { l, k, r, q, eps } => Ok(power_report(
            &corollary1_family(l, k, r, q, Sign::try_from(eps)?)?,
            fmt,
        )),
        FamilyCommand::Corollary3 { p, eps } => Ok(power_report(
            &corollary3_family(p, Sign::try_from(eps)?)?,
            fmt,
        )),
        FamilyCommand::Corollary2 { p, k, r, eps } => {
            let class = corollary2_classify(p, k, r, Sign::try_from(eps)?)?;
            let table = UnitTable::new(class.modulus)?;
            let brute = table
                .classes()
                .into_iter()
                .find(|c| c.contains(class.members[0]))
                .expect("every unit lies in a class");
            let matches = brute == class;
            let text = format!(
                "modulus {}\nvalue {}\nclass ({}): {}\nexhaustive class {}\n",
                class.modulus,
                fmt.text(&class.value),
                class.len(),
                join(&class.members, ", "),
                if matches { "matches" } else { "DIFFERS" },
            );
            let json = json!({
                "modulus": class.modulus,
                "value": fmt.json(&class.value),
                "members": class.members,
                "matches_exhaustive": matches,
            });
            let mut t = Table::new(&["member", "modulus", "num", "den", "decimal"]);
            for &m in &class.members {
                let [a, b, c] = fmt.cells(&class.value);
                t.push(vec![m.to_string(), class.modulus.to_string(), a, b, c]);
            }
            Ok(Report {
                text,
                json,
                tables: vec![t],
                exit_code: if matches { EXIT_OK } else { EXIT_MISMATCH },
            })
        }
        FamilyCommand::Quad {
            t,
            ref primes,
            shift,
        } => {
            let mut family = corollary4_family(t, primes)?;
            if let Some(l) = shift {
                family = shift_t(&family, l)?;
            }
            quad_report(&family, fmt)
        }
    }
}

pub fn cmd_table1(t: Option<u64>, count: usize) -> CliResult<Report> {
    let ts: Vec<u64> = match t {
        Some(t) => vec![t],
        None => TABLE1_T.to_vec(),
    };
    let mut rows = Vec::new();
    for t in ts {
        let mut row = table1_row(t).map_err(|e| match e {
            Error::NotSquareFree(t) => {
                CliError::Usage(format!("t must be square-free for the table, got {t}"))
            }
            other => other.into(),
        })?;
        if count != row.primes.len() {
            row.primes = crate::families::table1_sieve(t, count, true)?;
        }
        rows.push(row);
    }
    let mut text = String::from("t | q | k | p\n");
    let mut csv = Table::new(&["t", "q", "k", "primes"]);
    for r in &rows {
        text.push_str(&format!(
            "{} | {} | {} | {}\n",
            r.t,
            r.q,
            r.k,
            join(&r.primes, ",")
        ));
        csv.push(vec![
            r.t.to_string(),
            r.q.to_string(),
            r.k.to_string(),
            join(&r.primes, " "),
        ]);
    }
    let json = json!({ "rows": rows });
    Ok(ok(text, json, vec![csv]))
}
