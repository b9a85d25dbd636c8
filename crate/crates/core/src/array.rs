//! Parameter arrays: the data model, the existence conditions, and the
//! scalars derived from an array (a_i, a*_i, H, β and the case label).

use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, FieldError};
use crate::theorems;

/// `(θ_0..θ_d; θ*_0..θ*_d; φ_1..φ_d; ϕ_1..ϕ_d)` over a fixed field.
///
/// Construction only enforces structure (lengths and a common field);
/// whether the array belongs to a Leonard pair is decided by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArrayRepr", into = "ArrayRepr")]
pub struct ParameterArray {
    field: FieldDescriptor,
    theta: Vec<FieldElement>,
    theta_star: Vec<FieldElement>,
    varphi: Vec<FieldElement>,
    phi: Vec<FieldElement>,
}

#[derive(Serialize, Deserialize)]
struct ArrayRepr {
    field: FieldDescriptor,
    d: usize,
    theta: Vec<String>,
    theta_star: Vec<String>,
    varphi: Vec<String>,
    phi: Vec<String>,
}

impl TryFrom<ArrayRepr> for ParameterArray {
    type Error = Error;

    fn try_from(repr: ArrayRepr) -> Result<Self> {
        let parse = |xs: &[String]| -> Result<Vec<FieldElement>> {
            xs.iter().map(|s| FieldElement::parse(repr.field, s).map_err(Error::from)).collect()
        };
        let pa = ParameterArray::new(
            repr.field,
            parse(&repr.theta)?,
            parse(&repr.theta_star)?,
            parse(&repr.varphi)?,
            parse(&repr.phi)?,
        )?;
        if pa.d() != repr.d {
            return Err(Error::Structure(format!("declared d = {} but theta has {} entries", repr.d, pa.theta.len())));
        }
        Ok(pa)
    }
}

impl From<ParameterArray> for ArrayRepr {
    fn from(pa: ParameterArray) -> Self {
        let text = |xs: &[FieldElement]| xs.iter().map(ToString::to_string).collect();
        ArrayRepr {
            field: pa.field,
            d: pa.d(),
            theta: text(&pa.theta),
            theta_star: text(&pa.theta_star),
            varphi: text(&pa.varphi),
            phi: text(&pa.phi),
        }
    }
}

impl ParameterArray {
    pub fn new(
        field: FieldDescriptor,
        theta: Vec<FieldElement>,
        theta_star: Vec<FieldElement>,
        varphi: Vec<FieldElement>,
        phi: Vec<FieldElement>,
    ) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::Structure("theta must have at least one entry".into()));
        }
        let d = theta.len() - 1;
        let lengths = [("theta_star", theta_star.len(), d + 1), ("varphi", varphi.len(), d), ("phi", phi.len(), d)];
        for (name, got, want) in lengths {
            if got != want {
                return Err(Error::Structure(format!("{name} has {got} entries, expected {want}")));
            }
        }
        for x in theta.iter().chain(&theta_star).chain(&varphi).chain(&phi) {
            if x.descriptor() != field {
                return Err(FieldError::DescriptorMismatch(field, x.descriptor()).into());
            }
        }
        Ok(ParameterArray { field, theta, theta_star, varphi, phi })
    }

    /// Parses every entry with the field's element grammar.
    pub fn from_strs(
        field: FieldDescriptor,
        theta: &[&str],
        theta_star: &[&str],
        varphi: &[&str],
        phi: &[&str],
    ) -> Result<Self> {
        let parse = |xs: &[&str]| -> Result<Vec<FieldElement>> {
            xs.iter().map(|s| field.parse(s).map_err(Error::from)).collect()
        };
        ParameterArray::new(field, parse(theta)?, parse(theta_star)?, parse(varphi)?, parse(phi)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("array serializes")
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    /// The diameter d.
    pub fn d(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn theta(&self) -> &[FieldElement] {
        &self.theta
    }

    pub fn theta_star(&self) -> &[FieldElement] {
        &self.theta_star
    }

    /// First split sequence, `varphi()[i - 1]` is φ_i.
    pub fn varphi(&self) -> &[FieldElement] {
        &self.varphi
    }

    /// Second split sequence, `phi()[i - 1]` is ϕ_i.
    pub fn phi(&self) -> &[FieldElement] {
        &self.phi
    }

    /// φ_i for 1 ≤ i ≤ d.
    pub fn varphi_at(&self, i: usize) -> &FieldElement {
        &self.varphi[i - 1]
    }

    /// ϕ_i for 1 ≤ i ≤ d.
    pub fn phi_at(&self, i: usize) -> &FieldElement {
        &self.phi[i - 1]
    }

    /// The array of the pair with the roles of the two transformations
    /// exchanged: `(θ*; θ; φ_1..φ_d; ϕ_d..ϕ_1)`.
    pub fn dualize(&self) -> ParameterArray {
        ParameterArray {
            field: self.field,
            theta: self.theta_star.clone(),
            theta_star: self.theta.clone(),
            varphi: self.varphi.clone(),
            phi: self.phi.iter().rev().cloned().collect(),
        }
    }
}

/// The five existence conditions, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "C1_nonzero")]
    Nonzero,
    #[serde(rename = "C2_distinct")]
    Distinct,
    #[serde(rename = "C3_phi_identity")]
    FirstSplitIdentity,
    #[serde(rename = "C4_phi2_identity")]
    SecondSplitIdentity,
    #[serde(rename = "C5_beta_constant")]
    BetaConstant,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Condition::Nonzero => "C1_nonzero",
            Condition::Distinct => "C2_distinct",
            Condition::FirstSplitIdentity => "C3_phi_identity",
            Condition::SecondSplitIdentity => "C4_phi2_identity",
            Condition::BetaConstant => "C5_beta_constant",
        };
        f.write_str(tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFailure {
    pub condition: Condition,
    pub index: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub verdict: Verdict,
    pub failures: Vec<ConditionFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> =
            self.failures.iter().map(|x| format!("{} at {} ({})", x.condition, x.index, x.detail)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// `Σ_{h=0}^{i-1} (θ_h − θ_{d−h}) / (θ_0 − θ_d)`
fn theta_ratio_sum(theta: &[FieldElement], i: usize) -> Result<FieldElement, FieldError> {
    let d = theta.len() - 1;
    let denom = &theta[0] - &theta[d];
    let mut sum = theta[0].descriptor().zero();
    for h in 0..i {
        sum = sum + (&theta[h] - &theta[d - h]).checked_div(&denom)?;
    }
    Ok(sum)
}

/// `(θ_{i−2} − θ_{i+1}) / (θ_{i−1} − θ_i)`
fn three_term_ratio(theta: &[FieldElement], i: usize) -> Result<FieldElement, FieldError> {
    (&theta[i - 2] - &theta[i + 1]).checked_div(&(&theta[i - 1] - &theta[i]))
}

/// Checks every existence condition and reports all failures.
pub fn validate(pa: &ParameterArray) -> ValidationReport {
    let d = pa.d();
    let mut failures = Vec::new();
    let mut fail = |condition, index, detail: String| {
        failures.push(ConditionFailure { condition, index, detail });
    };

    for i in 1..=d {
        if pa.varphi_at(i).is_zero() {
            fail(Condition::Nonzero, i, format!("varphi_{i} = 0"));
        }
        if pa.phi_at(i).is_zero() {
            fail(Condition::Nonzero, i, format!("phi_{i} = 0"));
        }
    }

    for (name, seq) in [("theta", pa.theta()), ("theta_star", pa.theta_star())] {
        for j in 1..=d {
            if let Some(i) = (0..j).find(|&i| seq[i] == seq[j]) {
                fail(Condition::Distinct, j, format!("{name}_{j} = {name}_{i}"));
            }
        }
    }

    let (theta, theta_star) = (pa.theta(), pa.theta_star());
    for i in 1..=d {
        let first = theta_ratio_sum(theta, i)
            .map(|sum| pa.phi_at(1) * &sum + (&theta_star[i] - &theta_star[0]) * (&theta[i - 1] - &theta[d]));
        match first {
            Ok(rhs) if &rhs == pa.varphi_at(i) => {}
            Ok(rhs) => fail(Condition::FirstSplitIdentity, i, format!("varphi_{i} should be {rhs}")),
            Err(e) => fail(Condition::FirstSplitIdentity, i, e.to_string()),
        }
        let second = theta_ratio_sum(theta, i)
            .map(|sum| pa.varphi_at(1) * &sum + (&theta_star[i] - &theta_star[0]) * (&theta[d - i + 1] - &theta[0]));
        match second {
            Ok(rhs) if &rhs == pa.phi_at(i) => {}
            Ok(rhs) => fail(Condition::SecondSplitIdentity, i, format!("phi_{i} should be {rhs}")),
            Err(e) => fail(Condition::SecondSplitIdentity, i, e.to_string()),
        }
    }

    // For d = 3 only i = 2 exists: the two ratios must still agree.
    if d >= 3 {
        let mut reference: Option<FieldElement> = None;
        for i in 2..d {
            match (three_term_ratio(theta, i), three_term_ratio(theta_star, i)) {
                (Ok(r), Ok(rs)) => {
                    if r != rs {
                        fail(Condition::BetaConstant, i, format!("ratios differ: {r} vs {rs}"));
                    }
                    match &reference {
                        None => reference = Some(r),
                        Some(r2) if *r2 != r => {
                            fail(Condition::BetaConstant, i, format!("ratio {r} differs from {r2} at i = 2"))
                        }
                        Some(_) => {}
                    }
                }
                (Err(e), _) | (_, Err(e)) => fail(Condition::BetaConstant, i, e.to_string()),
            }
        }
    }

    let verdict = if failures.is_empty() { Verdict::Valid } else { Verdict::Invalid };
    ValidationReport { verdict, failures }
}

pub(crate) fn ensure_valid(pa: &ParameterArray) -> Result<()> {
    let report = validate(pa);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid(report))
    }
}

/// One side of the a_i formula, with the φ_0 = φ_{d+1} = 0 boundary
/// terms dropped:
/// `base_i + s_i/(ev_i − ev_{i−1}) − s_{i+1}/(ev_{i+1} − ev_i)`.
fn diagonal_formula(
    base: impl Fn(usize) -> FieldElement,
    split: impl Fn(usize) -> FieldElement,
    ev: &[FieldElement],
) -> Vec<FieldElement> {
    let d = ev.len() - 1;
    (0..=d)
        .map(|i| {
            let mut value = base(i);
            if i >= 1 {
                value = value + split(i) / (&ev[i] - &ev[i - 1]);
            }
            if i < d {
                value = value - split(i + 1) / (&ev[i + 1] - &ev[i]);
            }
            value
        })
        .collect()
}

pub(crate) fn a_unchecked(pa: &ParameterArray) -> Vec<FieldElement> {
    diagonal_formula(|i| pa.theta[i].clone(), |i| pa.varphi_at(i).clone(), &pa.theta_star)
}

pub(crate) fn a_star_unchecked(pa: &ParameterArray) -> Vec<FieldElement> {
    diagonal_formula(|i| pa.theta_star[i].clone(), |i| pa.varphi_at(i).clone(), &pa.theta)
}

/// a_0..a_d from the first split sequence.
pub fn compute_a(pa: &ParameterArray) -> Result<Vec<FieldElement>> {
    ensure_valid(pa)?;
    Ok(a_unchecked(pa))
}

/// a*_0..a*_d from the first split sequence.
pub fn compute_a_star(pa: &ParameterArray) -> Result<Vec<FieldElement>> {
    ensure_valid(pa)?;
    Ok(a_star_unchecked(pa))
}

pub(crate) fn second_split_unchecked(pa: &ParameterArray) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let d = pa.d();
    let a = diagonal_formula(|i| pa.theta[d - i].clone(), |i| pa.phi_at(i).clone(), &pa.theta_star);
    // a*_i pairs ϕ_{d−i+1} with (θ_i − θ_{i−1}) and ϕ_{d−i} with (θ_{i+1} − θ_i)
    let a_star = diagonal_formula(|i| pa.theta_star[d - i].clone(), |j| pa.phi_at(d - j + 1).clone(), &pa.theta);
    (a, a_star)
}

/// (a, a*) recomputed from the second split sequence.
pub fn compute_a_via_second_split(pa: &ParameterArray) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    ensure_valid(pa)?;
    Ok(second_split_unchecked(pa))
}

/// Both expressions for H, from the a-side and the a*-side.
pub(crate) fn h_expressions(
    pa: &ParameterArray,
    a: &[FieldElement],
    a_star: &[FieldElement],
) -> (FieldElement, FieldElement) {
    let d = pa.d();
    let (t, ts) = (&pa.theta, &pa.theta_star);
    let from_a = (&a[0] - &a[d]) * (&ts[0] - &ts[1]) * (&ts[d - 1] - &ts[d]) / (&ts[0] - &ts[d]);
    let from_a_star = (&a_star[0] - &a_star[d]) * (&t[0] - &t[1]) * (&t[d - 1] - &t[d]) / (&t[0] - &t[d]);
    (from_a, from_a_star)
}

/// The scalar H, which vanishes exactly when a_0 = a_d. Defined for d ≥ 1.
pub fn compute_h(pa: &ParameterArray) -> Result<FieldElement> {
    ensure_valid(pa)?;
    if pa.d() == 0 {
        return Err(Error::Precondition("H is undefined for d = 0".into()));
    }
    let (from_a, from_a_star) = h_expressions(pa, &a_unchecked(pa), &a_star_unchecked(pa));
    if from_a != from_a_star {
        return Err(Error::Violation(format!("H expressions disagree: {from_a} vs {from_a_star}")));
    }
    Ok(from_a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Case0,
    CaseI,
    CaseII,
    CaseIII,
    CaseIV,
    CaseV,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The case of an array, with β = q + q⁻¹ recorded for d ≥ 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseLabel {
    pub tag: CaseTag,
    pub beta: Option<FieldElement>,
}

/// `(θ_0 − θ_3)/(θ_1 − θ_2) − 1`, the common three-term ratio minus one.
pub(crate) fn beta_unchecked(pa: &ParameterArray) -> FieldElement {
    let t = &pa.theta;
    (&t[0] - &t[3]) / (&t[1] - &t[2]) - pa.field.one()
}

pub(crate) fn classify_unchecked(pa: &ParameterArray) -> CaseLabel {
    let d = pa.d();
    if d <= 2 {
        return CaseLabel { tag: CaseTag::Case0, beta: None };
    }
    let beta = beta_unchecked(pa);
    let field = pa.field;
    let tag = if field.characteristic() == 2 {
        if beta.is_zero() {
            CaseTag::CaseV
        } else {
            CaseTag::CaseI
        }
    } else if beta == field.int(2) {
        CaseTag::CaseII
    } else if beta == field.int(-2) {
        if d.is_multiple_of(2) {
            CaseTag::CaseIII
        } else {
            CaseTag::CaseIV
        }
    } else {
        CaseTag::CaseI
    };
    CaseLabel { tag, beta: Some(beta) }
}

pub fn classify_case(pa: &ParameterArray) -> Result<CaseLabel> {
    ensure_valid(pa)?;
    Ok(classify_unchecked(pa))
}

/// The array for the ordering `(θ_d..θ_0; θ*_0..θ*_d)`; the two split
/// sequences trade places.
pub fn reverse_theta(pa: &ParameterArray) -> Result<ParameterArray> {
    ensure_valid(pa)?;
    Ok(ParameterArray {
        field: pa.field,
        theta: pa.theta.iter().rev().cloned().collect(),
        theta_star: pa.theta_star.clone(),
        varphi: pa.phi.clone(),
        phi: pa.varphi.clone(),
    })
}

/// Everything derivable from a single valid array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub a: Vec<FieldElement>,
    pub a_star: Vec<FieldElement>,
    #[serde(rename = "H")]
    pub h: Option<FieldElement>,
    pub case: CaseTag,
    pub beta: Option<FieldElement>,
    pub balanced: bool,
    pub essentially_bipartite: bool,
    pub xi: Option<FieldElement>,
    pub essentially_dual_bipartite: bool,
    pub xi_star: Option<FieldElement>,
}

pub fn analyze(pa: &ParameterArray) -> Result<AnalysisReport> {
    ensure_valid(pa)?;
    let a = a_unchecked(pa);
    let a_star = a_star_unchecked(pa);
    let h = if pa.d() >= 1 { Some(compute_h(pa)?) } else { None };
    let label = classify_unchecked(pa);
    let (essentially_bipartite, xi) = theorems::is_essentially_bipartite(pa)?;
    let (essentially_dual_bipartite, xi_star) = theorems::is_essentially_dual_bipartite(pa)?;
    Ok(AnalysisReport {
        balanced: theorems::is_balanced(pa)?,
        a,
        a_star,
        h,
        case: label.tag,
        beta: label.beta,
        essentially_bipartite,
        xi,
        essentially_dual_bipartite,
        xi_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn q(s: &str) -> FieldElement {
        Q.parse(s).unwrap()
    }

    fn qs(xs: &[&str]) -> Vec<FieldElement> {
        xs.iter().map(|s| q(s)).collect()
    }

    fn d1() -> ParameterArray {
        ParameterArray::from_strs(Q, &["0", "1"], &["0", "1"], &["1"], &["2"]).unwrap()
    }

    fn case1_q2() -> ParameterArray {
        ParameterArray::from_strs(
            Q,
            &["1", "2", "4", "8"],
            &["1", "2", "4", "8"],
            &["14", "9", "-7"],
            &["21", "27", "21"],
        )
        .unwrap()
    }

    fn case1_eta5() -> ParameterArray {
        ParameterArray::from_strs(
            Q,
            &["-2", "3", "7", "12"],
            &["25", "14", "10", "11"],
            &["77", "36", "-7"],
            &["-77", "-36", "7"],
        )
        .unwrap()
    }

    fn d2_counter() -> ParameterArray {
        ParameterArray::from_strs(Q, &["0", "1", "3"], &["0", "1", "3"], &["-1", "-4"], &["2", "2"]).unwrap()
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(ParameterArray::from_strs(Q, &["0", "1"], &["0"], &["1"], &["2"]), Err(Error::Structure(_))));
        assert!(matches!(
            ParameterArray::from_strs(Q, &["0", "1"], &["0", "1"], &[], &["2"]),
            Err(Error::Structure(_))
        ));
        assert!(matches!(ParameterArray::from_strs(Q, &[], &[], &[], &[]), Err(Error::Structure(_))));
        let gf5 = FieldDescriptor::prime(5).unwrap();
        let mixed = ParameterArray::new(Q, vec![gf5.one()], vec![Q.one()], vec![], vec![]);
        assert!(matches!(mixed, Err(Error::Field(FieldError::DescriptorMismatch(..)))));
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&d1()).is_valid());
        assert!(validate(&case1_q2()).is_valid());
        assert!(validate(&case1_eta5()).is_valid());
        assert!(validate(&d2_counter()).is_valid());

        let zero = ParameterArray::from_strs(Q, &["0", "1"], &["0", "1"], &["0"], &["2"]).unwrap();
        let report = validate(&zero);
        assert_eq!(report.verdict, Verdict::Invalid);
        assert_eq!(report.failures[0].condition, Condition::Nonzero);
        assert_eq!(report.failures[0].index, 1);
    }

    #[test]
    fn validation_reports_every_failure() {
        // repeated eigenvalue, zero split entry and broken identities at once
        let bad = ParameterArray::from_strs(
            Q,
            &["1", "2", "2", "8"],
            &["1", "2", "4", "8"],
            &["0", "9", "-7"],
            &["21", "27", "21"],
        )
        .unwrap();
        let report = validate(&bad);
        let conditions: Vec<Condition> = report.failures.iter().map(|f| f.condition).collect();
        assert!(conditions.contains(&Condition::Nonzero));
        assert!(conditions.contains(&Condition::Distinct));
        assert!(conditions.contains(&Condition::FirstSplitIdentity));
        assert!(conditions.contains(&Condition::BetaConstant));
        assert_eq!(report.verdict, Verdict::Invalid);
    }

    #[test]
    fn ratio_mismatch_at_d3_is_rejected() {
        // θ* follows a different three-term ratio than θ
        let bad = ParameterArray::from_strs(
            Q,
            &["1", "2", "4", "8"],
            &["0", "1", "2", "3"],
            &["14", "9", "-7"],
            &["21", "27", "21"],
        )
        .unwrap();
        let report = validate(&bad);
        assert!(report.failures.iter().any(|f| f.condition == Condition::BetaConstant && f.index == 2));
    }

    #[test]
    fn d0_is_valid() {
        let pa = ParameterArray::from_strs(Q, &["5"], &["7"], &[], &[]).unwrap();
        assert!(validate(&pa).is_valid());
        assert_eq!(compute_a(&pa).unwrap(), qs(&["5"]));
        assert_eq!(compute_a_star(&pa).unwrap(), qs(&["7"]));
        assert!(matches!(compute_h(&pa), Err(Error::Precondition(_))));
        assert_eq!(classify_case(&pa).unwrap().tag, CaseTag::Case0);
    }

    #[test]
    fn compute_a_examples() {
        assert_eq!(compute_a(&d1()).unwrap(), qs(&["-1", "2"]));
        assert_eq!(compute_a(&case1_eta5()).unwrap(), qs(&["5", "5", "5", "5"]));
        assert_eq!(compute_a(&d2_counter()).unwrap(), qs(&["1", "2", "1"]));
    }

    #[test]
    fn compute_a_star_examples() {
        assert_eq!(compute_a_star(&d1()).unwrap(), qs(&["-1", "2"]));
        assert_eq!(compute_a_star(&d2_counter()).unwrap(), qs(&["1", "2", "1"]));
        for pa in [d1(), case1_q2(), case1_eta5(), d2_counter()] {
            let dual = pa.dualize();
            assert!(validate(&dual).is_valid());
            assert_eq!(compute_a_star(&dual).unwrap(), compute_a(&pa).unwrap());
            assert_eq!(compute_a(&dual).unwrap(), compute_a_star(&pa).unwrap());
        }
    }

    #[test]
    fn second_split_examples() {
        assert_eq!(compute_a_via_second_split(&d1()).unwrap(), (qs(&["-1", "2"]), qs(&["-1", "2"])));
        assert_eq!(compute_a_via_second_split(&d2_counter()).unwrap(), (qs(&["1", "2", "1"]), qs(&["1", "2", "1"])));
        let pa = case1_eta5();
        let (a, a_star) = compute_a_via_second_split(&pa).unwrap();
        assert_eq!(a, qs(&["5", "5", "5", "5"]));
        assert_eq!(a_star, compute_a_star(&pa).unwrap());
        let pa = case1_q2();
        assert_eq!(compute_a_via_second_split(&pa).unwrap(), (compute_a(&pa).unwrap(), compute_a_star(&pa).unwrap()));
    }

    #[test]
    fn h_examples() {
        assert_eq!(compute_h(&d1()).unwrap(), q("3"));
        assert_eq!(compute_h(&case1_q2()).unwrap(), q("11"));
        assert!(compute_h(&d2_counter()).unwrap().is_zero());
        assert!(compute_h(&case1_eta5()).unwrap().is_zero());
    }

    #[test]
    fn classify_examples() {
        let label = classify_case(&case1_q2()).unwrap();
        assert_eq!(label.tag, CaseTag::CaseI);
        assert_eq!(label.beta, Some(q("5/2")));
        let linear = ParameterArray::from_strs(
            Q,
            &["0", "1", "2", "3"],
            &["0", "1", "2", "3"],
            &["-3/2", "-2", "-3/2"],
            &["3/2", "2", "3/2"],
        )
        .unwrap();
        assert_eq!(classify_case(&linear).unwrap().tag, CaseTag::CaseII);
        assert_eq!(classify_case(&d2_counter()).unwrap().tag, CaseTag::Case0);
        assert_eq!(classify_case(&d2_counter()).unwrap().beta, None);
    }

    #[test]
    fn reverse_theta_examples() {
        let rev = reverse_theta(&d1()).unwrap();
        assert_eq!(rev, ParameterArray::from_strs(Q, &["1", "0"], &["0", "1"], &["2"], &["1"]).unwrap());
        assert!(validate(&rev).is_valid());
        for pa in [d1(), case1_q2(), case1_eta5(), d2_counter()] {
            let rev = reverse_theta(&pa).unwrap();
            assert!(validate(&rev).is_valid());
            assert_eq!(reverse_theta(&rev).unwrap(), pa);
        }
        let rev = reverse_theta(&case1_q2()).unwrap();
        assert_eq!(classify_case(&rev).unwrap().beta, Some(q("5/2")));
    }

    #[test]
    fn invalid_input_is_an_error() {
        let zero = ParameterArray::from_strs(Q, &["0", "1"], &["0", "1"], &["0"], &["2"]).unwrap();
        assert!(matches!(compute_a(&zero), Err(Error::Invalid(_))));
        assert!(matches!(compute_h(&zero), Err(Error::Invalid(_))));
        assert!(matches!(classify_case(&zero), Err(Error::Invalid(_))));
        assert!(matches!(reverse_theta(&zero), Err(Error::Invalid(_))));
    }

    #[test]
    fn json_round_trip() {
        let pa = case1_q2();
        let json = pa.to_json();
        assert_eq!(
            json,
            r#"{"field":{"kind":"rational"},"d":3,"theta":["1","2","4","8"],"theta_star":["1","2","4","8"],"varphi":["14","9","-7"],"phi":["21","27","21"]}"#
        );
        assert_eq!(ParameterArray::from_json(&json).unwrap(), pa);
        let wrong_d = json.replace(r#""d":3"#, r#""d":2"#);
        assert!(ParameterArray::from_json(&wrong_d).is_err());
    }

    #[test]
    fn analysis_report_json_shape() {
        let report = analyze(&d2_counter()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"a":["1","2","1"],"a_star":["1","2","1"],"H":"0","case":"Case0","beta":null,"balanced":true,"essentially_bipartite":false,"xi":null,"essentially_dual_bipartite":false,"xi_star":null}"#
        );
    }
}
