use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use rayon::prelude::*;
use serde::Serialize;

use hooklab::enumerate::{BranchingOracle, FamilySpec, WeightParam};
use hooklab::exact::{ExactValue, Rational};
use hooklab::identities::{self, IdentityReport};
use hooklab::sampler::{
    check_growable, for_each_labeled_tree, grow_traced, labeling_probability, lemma_check,
    shape_probability, trajectory_rng, GrowthState,
};
use hooklab::stats::{self, GofReport};

use crate::{CensusArgs, Check, Family, FamilyArgs, McArgs, SampleArgs, VerifyArgs};

/// Largest size the completion census accepts.
const CENSUS_MAX_N: usize = 8;

pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<hooklab::Error> for CliError {
    fn from(e: hooklab::Error) -> Self {
        match e {
            hooklab::Error::Consistency(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("I/O error: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("HOOKLAB_THREADS") else {
        return Ok(());
    };
    let threads = raw
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| CliError::Usage(format!("HOOKLAB_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure threads: {e}")))
}

/// How an ordered family without `--m` is parameterized.
enum DefaultWeight {
    Symbolic,
    Size(usize),
}

fn family_spec(args: &FamilyArgs, family: Family, default_m: DefaultWeight) -> CliResult<FamilySpec> {
    if args.m.is_some() && family != Family::Ordered {
        return Err(CliError::Usage("--m applies only to --family ordered".into()));
    }
    if args.oracle.is_some() && family != Family::Tbar {
        return Err(CliError::Usage("--oracle applies only to --family tbar".into()));
    }
    Ok(match family {
        Family::Binary => FamilySpec::Binary,
        Family::Ordered => FamilySpec::Ordered(match args.m.as_deref() {
            Some("symbolic") => WeightParam::Symbolic,
            Some(m) => WeightParam::Value(
                m.parse::<Rational>()
                    .map_err(|e| CliError::Usage(format!("bad --m {m:?}: {e}")))?,
            ),
            None => match default_m {
                DefaultWeight::Symbolic => WeightParam::Symbolic,
                DefaultWeight::Size(n) => WeightParam::Value(Rational::from(n)),
            },
        }),
        Family::Tbar => FamilySpec::Slotted(oracle(args.oracle.as_deref())?),
    })
}

fn oracle(spec: Option<&str>) -> CliResult<BranchingOracle> {
    Ok(BranchingOracle::from_spec(spec.unwrap_or("const:2"))?)
}

/// Writes one record: a JSON document on one line, or the table line.
fn emit<T: Serialize>(out: &mut impl Write, json: bool, value: &T, table: impl FnOnce() -> String) -> CliResult<()> {
    if json {
        let line = serde_json::to_string(value).map_err(|e| CliError::Failure(e.to_string()))?;
        writeln!(out, "{line}")?;
    } else {
        writeln!(out, "{}", table())?;
    }
    Ok(())
}

pub fn verify(args: VerifyArgs) -> CliResult<bool> {
    let sizes = match (args.n, args.n_max) {
        (Some(n), _) => n..=n,
        (None, n_max) => {
            let default = match args.check {
                Check::Han | Check::Han2 => 10,
                Check::Yang | Check::Tbar => 7,
                Check::Lemma | Check::Labelprob => 6,
            };
            1..=n_max.unwrap_or(default)
        }
    };
    if *sizes.start() == 0 || sizes.is_empty() {
        return Err(CliError::Usage("sizes start at 1".into()));
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut all = true;
    match args.check {
        Check::Han | Check::Yang | Check::Tbar | Check::Han2 => {
            let f = &args.family;
            let wanted_family = if args.check == Check::Tbar { Family::Tbar } else { Family::Binary };
            let family = f.family.unwrap_or(wanted_family);
            if family != wanted_family || f.m.is_some() {
                return Err(CliError::Usage(format!(
                    "verify {} takes no --family or --m",
                    check_name(args.check)
                )));
            }
            if f.oracle.is_some() && args.check != Check::Tbar {
                return Err(CliError::Usage("--oracle applies only to verify tbar".into()));
            }
            let oracle = oracle(f.oracle.as_deref())?;
            for n in sizes {
                let r = match args.check {
                    Check::Han => identities::han_report(n)?,
                    Check::Yang => identities::yang_report(n)?,
                    Check::Tbar => identities::tbar_report(&oracle, n)?,
                    _ => identities::han2_report(n)?,
                };
                all &= r.holds;
                emit(&mut out, args.json, &r, || identity_line(&r))?;
            }
        }
        Check::Lemma => {
            let family = family_spec(&args.family, args.family.family.unwrap_or(Family::Binary), DefaultWeight::Symbolic)?;
            for n in sizes {
                let r = lemma_report(&family, n)?;
                all &= r.holds;
                emit(&mut out, args.json, &r, || {
                    format!("lemma {} n={} states={} holds={}", r.family, r.n, r.states, r.holds)
                })?;
            }
        }
        Check::Labelprob => {
            let family = family_spec(&args.family, args.family.family.unwrap_or(Family::Binary), DefaultWeight::Symbolic)?;
            for n in sizes {
                let r = labelprob_report(&family, n)?;
                all &= r.holds;
                emit(&mut out, args.json, &r, || {
                    format!(
                        "labelprob {} n={} shapes={} labelings={} equal_likelihood={} closed_form={} total={} holds={}",
                        r.family, r.n, r.shapes, r.labelings, r.equal_likelihood, r.closed_form, r.total, r.holds
                    )
                })?;
            }
        }
    }
    Ok(all)
}

fn check_name(check: Check) -> &'static str {
    match check {
        Check::Han => "han",
        Check::Yang => "yang",
        Check::Tbar => "tbar",
        Check::Han2 => "han2",
        Check::Lemma => "lemma",
        Check::Labelprob => "labelprob",
    }
}

fn identity_line(r: &IdentityReport) -> String {
    format!(
        "{} n={} lhs={} expected={} holds={} terms={}",
        r.identity, r.n, r.lhs, r.expected, r.holds, r.term_count
    )
}

#[derive(Serialize)]
struct LemmaReport {
    check: &'static str,
    family: String,
    n: usize,
    states: u64,
    holds: bool,
}

/// Checks that site probabilities sum to 1 in every labeled tree of size `n`.
fn lemma_report(family: &FamilySpec, n: usize) -> CliResult<LemmaReport> {
    let mut states = 0;
    let mut holds = true;
    let mut failure = None;
    for_each_labeled_tree(family, n, |_, t| {
        states += 1;
        match GrowthState::from_tree(family, t).and_then(|s| lemma_check(&s)) {
            Ok(ok) => holds &= ok,
            Err(e) => {
                failure.get_or_insert(e);
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(LemmaReport {
        check: "lemma",
        family: family.to_string(),
        n,
        states,
        holds,
    })
}

#[derive(Serialize)]
struct LabelprobReport {
    check: &'static str,
    family: String,
    n: usize,
    shapes: usize,
    labelings: u64,
    equal_likelihood: bool,
    closed_form: bool,
    total: ExactValue,
    holds: bool,
}

/// Checks that every labeling of a shape is equally likely, that the common
/// value is the closed form, and that all labelings together have mass 1.
fn labelprob_report(family: &FamilySpec, n: usize) -> CliResult<LabelprobReport> {
    let mut by_shape: HashMap<String, ExactValue> = HashMap::new();
    let mut labelings = 0;
    let mut equal = true;
    let mut closed = true;
    let mut total = ExactValue::zero();
    let mut failure = None;
    for_each_labeled_tree(family, n, |sk, t| {
        labelings += 1;
        let p = match labeling_probability(&t, family) {
            Ok(p) => p,
            Err(e) => {
                failure.get_or_insert(e);
                return;
            }
        };
        let key: Vec<String> = sk.nodes().iter().map(|v| v.address.to_string()).collect();
        let key = key.join(";");
        match by_shape.get(&key) {
            Some(first) => equal &= *first == p,
            None => {
                match shape_probability(sk, family) {
                    Ok(pi) => closed &= pi == p,
                    Err(e) => {
                        failure.get_or_insert(e);
                    }
                }
                by_shape.insert(key, p.clone());
            }
        }
        total = total.add(&p);
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    let holds = equal && closed && total.is_one();
    Ok(LabelprobReport {
        check: "labelprob",
        family: family.to_string(),
        n,
        shapes: by_shape.len(),
        labelings,
        equal_likelihood: equal,
        closed_form: closed,
        total,
        holds,
    })
}

#[derive(Serialize)]
struct SampleRecord {
    index: u64,
    tree: String,
}

pub fn sample(args: SampleArgs) -> CliResult<bool> {
    let family_kind = args.family.family.unwrap_or(Family::Binary);
    let family = family_spec(&args.family, family_kind, DefaultWeight::Size(args.n))?;
    check_growable(&family, args.n)?;
    let grown = (0..args.count)
        .into_par_iter()
        .map(|i| grow_traced(&family, args.n, &mut trajectory_rng(args.seed, i)))
        .collect::<Result<Vec<_>, _>>()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let stderr = io::stderr();
    let mut log = stderr.lock();
    for (i, (tree, steps)) in grown.into_iter().enumerate() {
        if args.verbose {
            for step in &steps {
                writeln!(log, "tree {i}: {step}")?;
            }
        }
        let record = SampleRecord {
            index: i as u64,
            tree: tree.encode(),
        };
        emit(&mut out, args.json, &record, || record.tree.clone())?;
    }
    out.flush()?;
    Ok(true)
}

#[derive(Serialize)]
struct McReport {
    #[serde(flatten)]
    gof: GofReport,
    seed: u64,
    min_samples: u64,
}

pub fn mc(args: McArgs) -> CliResult<bool> {
    let family_kind = args.family.family.unwrap_or(Family::Binary);
    let family = family_spec(&args.family, family_kind, DefaultWeight::Size(args.n))?;
    if !(0.0..=1.0).contains(&args.alpha) {
        return Err(CliError::Usage(format!("--alpha must lie in [0, 1], got {}", args.alpha)));
    }
    let min_samples = stats::minimum_samples(&family, args.n)?;
    if args.samples < min_samples {
        return Err(CliError::Usage(format!(
            "{} samples is below the minimum of {min_samples} for {family} at n = {}",
            args.samples, args.n
        )));
    }
    let census = stats::run_census(&family, args.n, args.samples, args.seed)?;
    if let Some(path) = &args.csv {
        let file = File::create(path)
            .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
        census.write_csv(BufWriter::new(file))?;
    }
    let gof = stats::chi_squared_gof(&census, args.alpha)?;
    let pass = gof.pass;
    let report = McReport {
        gof,
        seed: args.seed,
        min_samples,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    emit(&mut out, args.json, &report, || {
        let g = &report.gof;
        [
            format!("family      {}", g.family),
            format!("n           {}", g.n),
            format!("samples     {}", g.samples),
            format!("min_samples {}", report.min_samples),
            format!("seed        {}", report.seed),
            format!("categories  {}", g.categories),
            format!("statistic   {}", g.statistic),
            format!("dof         {}", g.dof),
            format!("p_value     {}", g.p_value),
            format!("alpha       {}", g.alpha),
            format!("pass        {}", g.pass),
        ]
        .join("\n")
    })?;
    Ok(pass)
}

#[derive(Serialize)]
struct CensusSummary {
    n: usize,
    trees: usize,
    total: Rational,
    holds: bool,
}

pub fn census(args: CensusArgs) -> CliResult<bool> {
    if args.n == 0 || args.n > CENSUS_MAX_N {
        return Err(CliError::Usage(format!("census needs 1 <= n <= {CENSUS_MAX_N}")));
    }
    let rows = identities::completion_census(args.n)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if !args.json {
        writeln!(out, "tree\thooks\tcompletion_labelings\tweight\trunning_total")?;
    }
    for row in &rows {
        emit(&mut out, args.json, row, || {
            let hooks: Vec<String> = row.hooks.iter().map(|h| h.to_string()).collect();
            format!(
                "{}\t{}\t{}\t{}\t{}",
                row.tree,
                hooks.join(","),
                row.completion_labelings.0,
                row.weight,
                row.running_total
            )
        })?;
    }
    let total = rows.last().map(|r| r.running_total.clone()).unwrap_or_else(Rational::zero);
    let summary = CensusSummary {
        n: args.n,
        trees: rows.len(),
        holds: total.is_one(),
        total,
    };
    emit(&mut out, args.json, &summary, || {
        format!("total\t{}\ttrees={}\tholds={}", summary.total, summary.trees, summary.holds)
    })?;
    out.flush()?;
    Ok(summary.holds)
}
