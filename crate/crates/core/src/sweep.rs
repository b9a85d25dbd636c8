//! Seeded sampling of generated arrays and bulk verification.
//!
//! Sample `i` draws its scalars from a ChaCha stream keyed by
//! `(seed, i)` alone, so the outcome of a sweep does not depend on how
//! samples are spread over worker threads.

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::array::{a_star_unchecked, a_unchecked, ParameterArray};
use crate::error::{Error, Result};
use crate::families::{
    generate, generate_case0_d1, generate_case0_d2, CaseData, CaseIData, CaseIIData, CaseMinusOneData, CaseVData,
};
use crate::field::{FieldDescriptor, FieldElement};
use crate::matrix::oracle_a;
use crate::theorems::{check_all_with, TheoremReport};

/// Draws a sample makes from its own stream before it counts as
/// discarded.
pub const MAX_ATTEMPTS: usize = 8;

/// Largest d for which the matrix oracle is run.
pub const ORACLE_MAX_D: usize = 8;

/// Generator families the sweep can draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "String")]
pub enum Family {
    D1,
    D2,
    CaseI,
    CaseII,
    CaseIII,
    CaseIV,
    CaseV,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::D1, Family::D2, Family::CaseI, Family::CaseII, Family::CaseIII, Family::CaseIV, Family::CaseV];

    pub fn name(self) -> &'static str {
        match self {
            Family::D1 => "d1",
            Family::D2 => "d2",
            Family::CaseI => "case1",
            Family::CaseII => "case2",
            Family::CaseIII => "case3",
            Family::CaseIV => "case4",
            Family::CaseV => "case5",
        }
    }

    /// Whether the family's construction makes sense over `field`. Case I
    /// needs some q with q^i ≠ 1 for i ≤ 3, which GF(4) lacks.
    pub fn supports(self, field: FieldDescriptor) -> bool {
        let even = field.characteristic() == 2;
        match self {
            Family::D1 | Family::D2 => true,
            Family::CaseI => field.order().is_none_or(|n| n > 4),
            Family::CaseII | Family::CaseIII | Family::CaseIV => !even,
            Family::CaseV => even,
        }
    }

    /// Diameters the family is drawn at, given the configured range.
    /// d1, d2 and case5 have a fixed diameter and ignore the range.
    pub fn diameters(self, d_min: usize, d_max: usize) -> Vec<usize> {
        let range = d_min.max(3)..=d_max;
        match self {
            Family::D1 => vec![1],
            Family::D2 => vec![2],
            Family::CaseV => vec![3],
            Family::CaseI | Family::CaseII => range.collect(),
            Family::CaseIII => range.filter(|d| d % 2 == 0).collect(),
            Family::CaseIV => range.filter(|d| d % 2 == 1).collect(),
        }
    }
}

impl Family {
    /// Case I over a finite field needs q with q^i ≠ 1 for i ≤ d, so d
    /// must stay below the order of the multiplicative group.
    pub fn admits(self, field: FieldDescriptor, d: usize) -> bool {
        match (self, field.order()) {
            (Family::CaseI, Some(n)) => (d as u64) < n - 1,
            _ => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.name().to_string()
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::Precondition(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    /// Samples drawn for each supported (family, field) pair.
    pub samples: usize,
    pub families: Vec<Family>,
    pub fields: Vec<FieldDescriptor>,
    pub d_min: usize,
    pub d_max: usize,
}

impl SweepConfig {
    pub fn default_fields() -> Vec<FieldDescriptor> {
        vec![
            FieldDescriptor::Rational,
            FieldDescriptor::Prime(5),
            FieldDescriptor::Prime(7),
            FieldDescriptor::Prime(11),
            FieldDescriptor::Prime(13),
            FieldDescriptor::Binary(2),
            FieldDescriptor::Binary(3),
        ]
    }

    /// The (family, field, diameters) blocks in sampling order; sample
    /// `i` belongs to block `i / samples`.
    pub fn plan(&self) -> Vec<Block> {
        let mut blocks = Vec::new();
        for &family in &self.families {
            let diameters = family.diameters(self.d_min, self.d_max);
            if diameters.is_empty() {
                continue;
            }
            for &field in &self.fields {
                let diameters: Vec<usize> = diameters.iter().copied().filter(|&d| family.admits(field, d)).collect();
                if family.supports(field) && !diameters.is_empty() {
                    blocks.push(Block { family, field, diameters });
                }
            }
        }
        blocks
    }

    pub fn total(&self) -> usize {
        self.plan().len() * self.samples
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 42,
            samples: 100,
            families: Family::ALL.to_vec(),
            fields: SweepConfig::default_fields(),
            d_min: 3,
            d_max: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub family: Family,
    pub field: FieldDescriptor,
    pub diameters: Vec<usize>,
}

/// A drawn sample before verification.
#[derive(Debug, Clone)]
pub struct Draw {
    pub index: usize,
    pub family: Family,
    pub field: FieldDescriptor,
    /// The generated array and its case scalars, or why the last of
    /// [`MAX_ATTEMPTS`] draws failed.
    pub generated: std::result::Result<(ParameterArray, Option<CaseData>), String>,
}

/// Matrix oracle outcome for one array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleCheck {
    Agrees,
    Skipped,
    Disagrees(String),
}

#[derive(Debug, Clone)]
pub struct CheckedSample {
    pub array: ParameterArray,
    pub data: Option<CaseData>,
    pub report: TheoremReport,
    pub oracle: OracleCheck,
}

impl CheckedSample {
    pub fn verified(&self) -> bool {
        self.report.holds && !self.oracle_failed()
    }

    pub fn oracle_failed(&self) -> bool {
        matches!(self.oracle, OracleCheck::Disagrees(_))
    }
}

#[derive(Debug, Clone)]
pub struct SampleRecord {
    pub index: usize,
    pub family: Family,
    pub field: FieldDescriptor,
    /// `None` when the generator rejected the drawn scalars.
    pub checked: Option<CheckedSample>,
}

/// The first (lowest-index) failing sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub index: usize,
    pub family: Family,
    pub field: FieldDescriptor,
    pub failed: Vec<String>,
    pub detail: Vec<String>,
    pub array: ParameterArray,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub attempted: usize,
    pub valid: usize,
    pub verified: usize,
    pub failures: usize,
    pub first_failure: Option<FailureWitness>,
}

impl SweepSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Uniform draw from the sampling grid: −3..3 over ℚ, the whole field
/// otherwise.
fn element(rng: &mut ChaCha8Rng, field: FieldDescriptor) -> FieldElement {
    match field.order() {
        None => field.int(rng.random_range(-3..=3)),
        Some(order) if order <= 256 => {
            let elements = field.elements().expect("finite field");
            elements.choose(rng).expect("nonempty field").clone()
        }
        Some(order) => field.int(rng.random_range(0..order as i64)),
    }
}

fn nonzero(rng: &mut ChaCha8Rng, field: FieldDescriptor) -> FieldElement {
    loop {
        let x = element(rng, field);
        if !x.is_zero() {
            return x;
        }
    }
}

/// q for Case I: the fixed grid over ℚ, otherwise a uniform nonzero
/// element with q^i ≠ 1 for 1 ≤ i ≤ d.
fn case_i_q(rng: &mut ChaCha8Rng, field: FieldDescriptor, d: usize) -> FieldElement {
    match field.elements() {
        None => {
            let grid = ["2", "3", "1/2", "-2", "-1/2"];
            field.parse(grid.choose(rng).expect("nonempty grid")).expect("grid parses")
        }
        Some(elements) => {
            let admissible: Vec<FieldElement> =
                elements.into_iter().filter(|q| !q.is_zero() && (1..=d).all(|i| !q.pow(i as u32).is_one())).collect();
            admissible.choose(rng).expect("diameters are filtered by field order").clone()
        }
    }
}

fn ratio(num: FieldElement, den: FieldElement) -> std::result::Result<FieldElement, String> {
    num.checked_div(&den).map_err(|e| e.to_string())
}

/// Sampling mode: 0 is fully generic and drawn half the time; 1 to 3
/// steer towards H = 0, the essentially bipartite locus and its dual.
fn mode(rng: &mut ChaCha8Rng) -> u8 {
    match rng.random_range(0..6) {
        m @ 1..=3 => m,
        _ => 0,
    }
}

fn draw_generated(
    rng: &mut ChaCha8Rng,
    family: Family,
    field: FieldDescriptor,
    d: usize,
) -> std::result::Result<(ParameterArray, Option<CaseData>), String> {
    let int = |n: i64| field.int(n);
    let mode = mode(rng);
    let e = |rng: &mut ChaCha8Rng| element(rng, field);
    let data = match family {
        Family::D1 => {
            let theta = [e(rng), e(rng)];
            let theta_star = [e(rng), e(rng)];
            let varphi = if mode == 1 && field.characteristic() != 2 {
                ratio(-(&theta_star[1] - &theta_star[0]) * (&theta[1] - &theta[0]), int(2))?
            } else {
                e(rng)
            };
            let pa = generate_case0_d1(theta, theta_star, varphi).map_err(|e| e.to_string())?;
            return Ok((pa, None));
        }
        Family::D2 => {
            let mut theta = [e(rng), e(rng), e(rng)];
            let mut theta_star = [e(rng), e(rng), e(rng)];
            let h = if mode == 0 { e(rng) } else { field.zero() };
            if mode == 2 {
                theta[2] = int(2) * &theta[1] - &theta[0];
            }
            if mode == 3 {
                theta_star[2] = int(2) * &theta_star[1] - &theta_star[0];
            }
            let pa = generate_case0_d2(theta, theta_star, h).map_err(|e| e.to_string())?;
            return Ok((pa, None));
        }
        Family::CaseI => {
            let q = case_i_q(rng, field, d);
            let (eta, mut mu, h, eta_star, mu_star, mut h_star) = (e(rng), e(rng), e(rng), e(rng), e(rng), e(rng));
            let tau = match mode {
                1 => {
                    let qd1 = q.pow(d as u32 - 1);
                    ratio(&qd1 * (&h + &mu) * (&h_star + &mu_star), &qd1 + int(1))?
                }
                2 => {
                    mu = -&h;
                    field.zero()
                }
                3 => {
                    h_star = -&mu_star;
                    field.zero()
                }
                _ => e(rng),
            };
            CaseData::I(CaseIData { d, q, eta, mu, h, eta_star, mu_star, h_star, tau })
        }
        Family::CaseII => {
            let (eta, mu, mut h, eta_star, mu_star, mut h_star) = (e(rng), e(rng), e(rng), e(rng), e(rng), e(rng));
            let tau = match mode {
                1 => ratio(-(&h * &h_star) * int(((d - 1) * (d - 1)) as i64), int(2))?,
                2 => {
                    h = field.zero();
                    field.zero()
                }
                3 => {
                    h_star = field.zero();
                    field.zero()
                }
                _ => e(rng),
            };
            CaseData::II(CaseIIData { d, eta, mu, h, eta_star, mu_star, h_star, tau })
        }
        Family::CaseIII | Family::CaseIV => {
            let (eta, h, mut s, eta_star, h_star, mut s_star) = (e(rng), e(rng), e(rng), e(rng), e(rng), e(rng));
            let di = d as i64;
            let tau = match (family, mode) {
                (Family::CaseIII, 1) => ratio(int(2) * &s * &s_star, int(1 - di))?,
                (Family::CaseIII, 2) => {
                    s = field.zero();
                    field.zero()
                }
                (Family::CaseIII, 3) => {
                    s_star = field.zero();
                    field.zero()
                }
                (Family::CaseIV, 1 | 2) => ratio(-int(di * di + 1) * &h * &h_star, int(2))?,
                _ => e(rng),
            };
            let data = CaseMinusOneData { d, eta, h, s, eta_star, h_star, s_star, tau };
            if family == Family::CaseIII {
                CaseData::III(data)
            } else {
                CaseData::IV(data)
            }
        }
        Family::CaseV => CaseData::V(CaseVData {
            theta0: e(rng),
            theta0_star: e(rng),
            h: nonzero(rng, field),
            s: e(rng),
            h_star: nonzero(rng, field),
            s_star: e(rng),
            r: e(rng),
        }),
    };
    let pa = generate(&data).map_err(|e| e.to_string())?;
    Ok((pa, Some(data)))
}

/// Draws sample `index` of the sweep described by `config`.
pub fn draw_sample(config: &SweepConfig, index: usize) -> Option<Draw> {
    draw_from_plan(config, &config.plan(), index)
}

fn draw_from_plan(config: &SweepConfig, plan: &[Block], index: usize) -> Option<Draw> {
    let block = plan.get(index / config.samples.max(1))?;
    let mut rng = sample_rng(config.seed, index);
    let mut generated = Err(String::new());
    for _ in 0..MAX_ATTEMPTS {
        let d = *block.diameters.choose(&mut rng).expect("nonempty diameters");
        generated = draw_generated(&mut rng, block.family, block.field, d);
        if generated.is_ok() {
            break;
        }
    }
    Some(Draw { index, family: block.family, field: block.field, generated })
}

/// Runs the identity suite and, for d ≤ [`ORACLE_MAX_D`], the matrix
/// oracle on one array.
pub fn check_sample(array: ParameterArray, data: Option<CaseData>) -> Result<CheckedSample> {
    let report = check_all_with(&array, data.as_ref())?;
    let oracle = if array.d() > ORACLE_MAX_D {
        OracleCheck::Skipped
    } else {
        match oracle_a(&array) {
            Ok((a, a_star)) if a == a_unchecked(&array) && a_star == a_star_unchecked(&array) => OracleCheck::Agrees,
            Ok((a, a_star)) => OracleCheck::Disagrees(format!(
                "oracle a = {}, a* = {}",
                serde_json::to_string(&a).expect("elements serialize"),
                serde_json::to_string(&a_star).expect("elements serialize")
            )),
            Err(e) => OracleCheck::Disagrees(e.to_string()),
        }
    };
    Ok(CheckedSample { array, data, report, oracle })
}

fn run_one(config: &SweepConfig, plan: &[Block], index: usize) -> SampleRecord {
    let draw = draw_from_plan(config, plan, index).expect("index within plan");
    let checked =
        draw.generated.ok().map(|(array, data)| check_sample(array, data).expect("generated arrays are valid"));
    SampleRecord { index, family: draw.family, field: draw.field, checked }
}

/// Draws and checks every sample, in index order.
pub fn run_samples(config: &SweepConfig) -> Vec<SampleRecord> {
    let plan = config.plan();
    let total = plan.len() * config.samples;
    (0..total).into_par_iter().map(|i| run_one(config, &plan, i)).collect()
}

pub fn summarize(records: &[SampleRecord]) -> SweepSummary {
    let mut summary =
        SweepSummary { attempted: records.len(), valid: 0, verified: 0, failures: 0, first_failure: None };
    for record in records {
        let Some(checked) = &record.checked else { continue };
        summary.valid += 1;
        if checked.verified() {
            summary.verified += 1;
            continue;
        }
        summary.failures += 1;
        let earlier = summary.first_failure.as_ref().is_some_and(|w| w.index < record.index);
        if !earlier {
            let mut failed: Vec<String> = checked.report.failures().map(|e| e.id.to_string()).collect();
            let mut detail: Vec<String> = checked.report.failures().filter_map(|e| e.detail.clone()).collect();
            if let OracleCheck::Disagrees(why) = &checked.oracle {
                failed.push("matrix_oracle".into());
                detail.push(why.clone());
            }
            summary.first_failure = Some(FailureWitness {
                index: record.index,
                family: record.family,
                field: record.field,
                failed,
                detail,
                array: checked.array.clone(),
            });
        }
    }
    summary
}

pub fn sweep(config: &SweepConfig) -> SweepSummary {
    summarize(&run_samples(config))
}
