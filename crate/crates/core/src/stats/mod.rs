//! Monte Carlo check of the growth process: tally many grown trees by
//! labeling, compare with the exact probabilities, and run a chi-squared
//! goodness-of-fit test.

pub mod gamma;

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::FamilySpec;
use crate::error::{Error, Result};
use crate::exact::{ExactValue, Rational};
use crate::sampler::{
    check_growable, for_each_labeled_tree, grow, labeling_count, labeling_probability,
    shape_probability, trajectory_rng,
};

/// Largest number of labelings a census will enumerate.
pub const MAX_CATEGORIES: u64 = 1_000_000;

pub const DEFAULT_ALPHA: f64 = 0.001;

/// Smallest expected count per category for the chi-squared test to apply.
pub const MIN_EXPECTED: u64 = 5;

/// One labeling's tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    /// Canonical labeled encoding.
    pub category: String,
    pub observed: u64,
    /// `samples * labeling_probability`.
    pub expected: Rational,
}

/// Observed and expected counts over every increasing labeling of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub family: FamilySpec,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// Sorted by category.
    pub rows: Vec<CensusRow>,
}

impl Census {
    /// Writes `category,observed,expected` rows with expected as `p/q`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidInput(format!("cannot write CSV: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["category", "observed", "expected"]).map_err(io)?;
        for row in &self.rows {
            w.write_record([row.category.clone(), row.observed.to_string(), row.expected.to_string()])
                .map_err(io)?;
        }
        w.flush().map_err(|e| Error::InvalidInput(format!("cannot write CSV: {e}")))
    }
}

/// Draws `samples` trees of size `n` and tallies them against the exact
/// distribution. Trajectory `i` uses stream `i` of `seed`, so the result does
/// not depend on how the work is split across threads.
pub fn run_census(family: &FamilySpec, n: usize, samples: u64, seed: u64) -> Result<Census> {
    check_growable(family, n)?;
    let count = labeling_count(family, n)?;
    if count > BigUint::from(MAX_CATEGORIES) {
        return Err(Error::TooLarge {
            what: "number of increasing labelings",
            size: u128::try_from(count).unwrap_or(u128::MAX),
            limit: MAX_CATEGORIES as u128,
        });
    }

    let mut expected = BTreeMap::new();
    let mut failure = None;
    for_each_labeled_tree(family, n, |_, t| {
        match labeling_probability(&t, family) {
            Ok(ExactValue::Number(p)) => {
                expected.insert(t.encode(), p * Rational::from(samples));
            }
            Ok(ExactValue::Function(_)) => {
                failure.get_or_insert(Error::Config("census needs a concrete m".into()));
            }
            Err(e) => {
                failure.get_or_insert(e);
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let total: Rational = expected.values().cloned().sum();
    if total != Rational::from(samples) {
        return Err(Error::Consistency(format!(
            "expected counts sum to {total}, not {samples}"
        )));
    }

    let observed = (0..samples)
        .into_par_iter()
        .try_fold(HashMap::new, |mut tally: HashMap<String, u64>, i| {
            let t = grow(family, n, &mut trajectory_rng(seed, i))?;
            *tally.entry(t.encode()).or_insert(0) += 1;
            Ok::<_, Error>(tally)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;

    if let Some(stray) = observed.keys().find(|k| !expected.contains_key(*k)) {
        return Err(Error::Consistency(format!("grew {stray}, which has no expected mass")));
    }
    let rows = expected
        .into_iter()
        .map(|(category, expected)| CensusRow {
            observed: observed.get(&category).copied().unwrap_or(0),
            category,
            expected,
        })
        .collect();
    Ok(Census {
        family: family.clone(),
        n,
        samples,
        seed,
        rows,
    })
}

/// Smallest sample count giving every labeling an expected count of at
/// least [`MIN_EXPECTED`]: `ceil(5 / min_T pi(T))`.
pub fn minimum_samples(family: &FamilySpec, n: usize) -> Result<u64> {
    check_growable(family, n)?;
    let mut smallest: Option<Rational> = None;
    for sk in family.shapes(n)? {
        let p = match shape_probability(&sk, family)? {
            ExactValue::Number(p) => p,
            ExactValue::Function(_) => return Err(Error::Config("needs a concrete m".into())),
        };
        if p.is_zero() {
            continue;
        }
        if smallest.as_ref().is_none_or(|s| p < *s) {
            smallest = Some(p);
        }
    }
    let smallest = smallest.ok_or_else(|| Error::Consistency("no shape has positive probability".into()))?;
    let need = Rational::from(MIN_EXPECTED).checked_div(&smallest)?;
    let ceil = (need.numer() + need.denom() - 1u8) / need.denom();
    u64::try_from(ceil).map_err(|_| Error::TooLarge {
        what: "required sample count",
        size: u128::MAX,
        limit: u64::MAX as u128,
    })
}

/// Chi-squared goodness-of-fit summary of a census.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GofReport {
    pub n: usize,
    pub family: String,
    pub samples: u64,
    pub categories: usize,
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub alpha: f64,
    pub pass: bool,
    pub min_expected: f64,
}

/// `sum (O - E)^2 / E` against the chi-squared distribution with
/// `categories - 1` degrees of freedom.
pub fn chi_squared_gof(census: &Census, alpha: f64) -> Result<GofReport> {
    if census.rows.is_empty() {
        return Err(Error::InvalidInput("empty census".into()));
    }
    let mut statistic = 0.0;
    let mut min_expected = f64::INFINITY;
    for row in &census.rows {
        if row.expected.is_zero() {
            return Err(Error::InvalidInput(format!(
                "category {} has zero expected count",
                row.category
            )));
        }
        let e = row.expected.to_f64();
        let diff = row.observed as f64 - e;
        statistic += diff * diff / e;
        min_expected = min_expected.min(e);
    }
    let dof = census.rows.len() - 1;
    let p_value = gamma::chi_squared_sf(statistic, dof);
    Ok(GofReport {
        n: census.n,
        family: census.family.to_string(),
        samples: census.samples,
        categories: census.rows.len(),
        statistic,
        dof,
        p_value,
        alpha,
        pass: p_value >= alpha,
        min_expected,
    })
}
