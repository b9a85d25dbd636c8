//! Closed-form parameter arrays for each case of the classification.
//!
//! Every generator validates its own output: a formula evaluated at
//! arbitrary scalars can collide two eigenvalues or zero a split entry,
//! and such an array is reported as an error rather than returned.

use serde::Serialize;

use crate::array::{ensure_valid, ParameterArray};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, FieldError};

fn common_field(values: &[&FieldElement]) -> Result<FieldDescriptor> {
    let field = values[0].descriptor();
    for v in values {
        if v.descriptor() != field {
            return Err(FieldError::DescriptorMismatch(field, v.descriptor()).into());
        }
    }
    Ok(field)
}

fn precondition(ok: bool, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(message()))
    }
}

fn finish(
    field: FieldDescriptor,
    theta: Vec<FieldElement>,
    theta_star: Vec<FieldElement>,
    varphi: Vec<FieldElement>,
    phi: Vec<FieldElement>,
) -> Result<ParameterArray> {
    let pa = ParameterArray::new(field, theta, theta_star, varphi, phi)?;
    ensure_valid(&pa)?;
    Ok(pa)
}

/// Scalars for the case q ≠ ±1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseIData {
    pub d: usize,
    pub q: FieldElement,
    pub eta: FieldElement,
    pub mu: FieldElement,
    pub h: FieldElement,
    pub eta_star: FieldElement,
    pub mu_star: FieldElement,
    pub h_star: FieldElement,
    pub tau: FieldElement,
}

/// Scalars for q = 1 in characteristic ≠ 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseIIData {
    pub d: usize,
    pub eta: FieldElement,
    pub mu: FieldElement,
    pub h: FieldElement,
    pub eta_star: FieldElement,
    pub mu_star: FieldElement,
    pub h_star: FieldElement,
    pub tau: FieldElement,
}

/// Scalars for q = −1 in characteristic ≠ 2; shared by even d and odd d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseMinusOneData {
    pub d: usize,
    pub eta: FieldElement,
    pub h: FieldElement,
    pub s: FieldElement,
    pub eta_star: FieldElement,
    pub h_star: FieldElement,
    pub s_star: FieldElement,
    pub tau: FieldElement,
}

pub type CaseIIIData = CaseMinusOneData;
pub type CaseIVData = CaseMinusOneData;

/// Scalars for q = 1 in characteristic 2, where d = 3 is forced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseVData {
    pub theta0: FieldElement,
    pub theta0_star: FieldElement,
    pub h: FieldElement,
    pub s: FieldElement,
    pub h_star: FieldElement,
    pub s_star: FieldElement,
    pub r: FieldElement,
}

/// The scalars a generator was called with, for checking the case-specific
/// closed forms against the resulting array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum CaseData {
    #[serde(rename = "CaseI")]
    I(CaseIData),
    #[serde(rename = "CaseII")]
    II(CaseIIData),
    #[serde(rename = "CaseIII")]
    III(CaseIIIData),
    #[serde(rename = "CaseIV")]
    IV(CaseIVData),
    #[serde(rename = "CaseV")]
    V(CaseVData),
}

pub fn generate_case_i(data: &CaseIData) -> Result<ParameterArray> {
    let CaseIData { d, q, eta, mu, h, eta_star, mu_star, h_star, tau } = data;
    let field = common_field(&[q, eta, mu, h, eta_star, mu_star, h_star, tau])?;
    let d = *d;
    precondition(d >= 3, || format!("case I needs d >= 3, got {d}"))?;
    precondition(!q.is_zero(), || "q must be nonzero".into())?;
    for i in 1..=d {
        precondition(!q.pow(i as u32).is_one(), || format!("q^{i} = 1"))?;
    }
    let pw = |e: usize| q.pow(e as u32);
    let one = field.one();
    let theta = (0..=d).map(|i| eta + mu * pw(i) + h * pw(d - i)).collect();
    let theta_star = (0..=d).map(|i| eta_star + mu_star * pw(i) + h_star * pw(d - i)).collect();
    let lead = |i: usize| (pw(i) - &one) * (pw(d - i + 1) - &one);
    let varphi = (1..=d).map(|i| lead(i) * (tau - mu * mu_star * pw(i - 1) - h * h_star * pw(d - i))).collect();
    let phi = (1..=d).map(|i| lead(i) * (tau - h * mu_star * pw(i - 1) - mu * h_star * pw(d - i))).collect();
    finish(field, theta, theta_star, varphi, phi)
}

pub fn generate_case_ii(data: &CaseIIData) -> Result<ParameterArray> {
    let CaseIIData { d, eta, mu, h, eta_star, mu_star, h_star, tau } = data;
    let field = common_field(&[eta, mu, h, eta_star, mu_star, h_star, tau])?;
    let d = *d;
    precondition(d >= 3, || format!("case II needs d >= 3, got {d}"))?;
    let p = field.characteristic();
    precondition(p != 2, || "case II needs characteristic other than 2".into())?;
    precondition(p == 0 || p > d as u64, || format!("characteristic {p} is a prime not exceeding d = {d}"))?;
    precondition(!(h.is_zero() && mu.is_zero()), || "h = 0 requires mu != 0".into())?;
    precondition(!(h_star.is_zero() && mu_star.is_zero()), || "h_star = 0 requires mu_star != 0".into())?;

    let n = |k: i64| field.int(k);
    let two = n(2);
    let half_d = n(d as i64) / &two;
    let mid = n(d as i64 + 1) / &two;
    let di = d as i64;
    let theta = (0..=di).map(|i| eta + mu * (n(i) - &half_d) + h * n(i * (di - i))).collect();
    let theta_star = (0..=di).map(|i| eta_star + mu_star * (n(i) - &half_d) + h_star * n(i * (di - i))).collect();
    let half_mm = mu * mu_star / &two;
    let hh = h * h_star;
    let varphi = (1..=di)
        .map(|i| {
            n(i * (di - i + 1))
                * (tau - &half_mm + (h * mu_star + mu * h_star) * (n(i) - &mid) + &hh * n((i - 1) * (di - i)))
        })
        .collect();
    let phi = (1..=di)
        .map(|i| {
            n(i * (di - i + 1))
                * (tau + &half_mm + (h * mu_star - mu * h_star) * (n(i) - &mid) + &hh * n((i - 1) * (di - i)))
        })
        .collect();
    finish(field, theta, theta_star, varphi, phi)
}

/// θ_i for q = −1: `η ± s ± h(i − d/2)` with the sign set by the parity of i.
fn alternating_theta(
    field: FieldDescriptor,
    d: usize,
    eta: &FieldElement,
    s: &FieldElement,
    h: &FieldElement,
) -> Vec<FieldElement> {
    let half_d = field.int(d as i64) / field.int(2);
    (0..=d)
        .map(|i| {
            let offset = h * (field.int(i as i64) - &half_d);
            if i % 2 == 0 {
                eta + s + offset
            } else {
                eta - s - offset
            }
        })
        .collect()
}

fn minus_one_preconditions(data: &CaseMinusOneData, even: bool) -> Result<FieldDescriptor> {
    let CaseMinusOneData { d, eta, h, s, eta_star, h_star, s_star, tau } = data;
    let field = common_field(&[eta, h, s, eta_star, h_star, s_star, tau])?;
    let d = *d;
    let label = if even { "III" } else { "IV" };
    precondition(d >= 3, || format!("case {label} needs d >= 3, got {d}"))?;
    precondition((d % 2 == 0) == even, || {
        format!("case {label} needs {} d, got {d}", if even { "even" } else { "odd" })
    })?;
    precondition(field.characteristic() != 2, || format!("case {label} needs characteristic other than 2"))?;
    precondition(!h.is_zero(), || "h must be nonzero".into())?;
    precondition(!h_star.is_zero(), || "h_star must be nonzero".into())?;
    Ok(field)
}

/// q = −1, d even.
pub fn generate_case_iii(data: &CaseIIIData) -> Result<ParameterArray> {
    let field = minus_one_preconditions(data, true)?;
    let CaseMinusOneData { d, eta, h, s, eta_star, h_star, s_star, tau } = data;
    let d = *d;
    let n = |k: usize| field.int(k as i64);
    let mid = field.int(d as i64 + 1) / field.int(2);
    let theta = alternating_theta(field, d, eta, s, h);
    let theta_star = alternating_theta(field, d, eta_star, s_star, h_star);
    let sh = s * h_star;
    let hs = s_star * h;
    let varphi = (1..=d)
        .map(|i| {
            let slope = h * h_star * (n(i) - &mid);
            if i % 2 == 0 {
                n(i) * (tau - &sh - &hs - slope)
            } else {
                n(d - i + 1) * (tau + &sh + &hs + slope)
            }
        })
        .collect();
    let phi = (1..=d)
        .map(|i| {
            let slope = h * h_star * (n(i) - &mid);
            if i % 2 == 0 {
                n(i) * (tau - &sh + &hs + slope)
            } else {
                n(d - i + 1) * (tau + &sh - &hs - slope)
            }
        })
        .collect();
    finish(field, theta, theta_star, varphi, phi)
}

/// q = −1, d odd.
pub fn generate_case_iv(data: &CaseIVData) -> Result<ParameterArray> {
    let field = minus_one_preconditions(data, false)?;
    let CaseMinusOneData { d, eta, h, s, eta_star, h_star, s_star, tau } = data;
    let d = *d;
    let n = |k: usize| field.int(k as i64);
    let two = field.int(2);
    let mid = field.int(d as i64 + 1) / &two;
    let theta = alternating_theta(field, d, eta, s, h);
    let theta_star = alternating_theta(field, d, eta_star, s_star, h_star);
    let hh = h * h_star;
    let two_ss = &two * s * s_star;
    let varphi = (1..=d)
        .map(|i| {
            let core = &hh * n(i * (d - i + 1));
            if i % 2 == 0 {
                core
            } else {
                tau - &two_ss + core - &two * (h * s_star + h_star * s) * (n(i) - &mid)
            }
        })
        .collect();
    let phi = (1..=d)
        .map(|i| {
            let core = &hh * n(i * (d - i + 1));
            if i % 2 == 0 {
                core
            } else {
                tau + &two_ss + core - &two * (h * s_star - h_star * s) * (n(i) - &mid)
            }
        })
        .collect();
    finish(field, theta, theta_star, varphi, phi)
}

/// q = 1 in characteristic 2; always d = 3.
pub fn generate_case_v(data: &CaseVData) -> Result<ParameterArray> {
    let CaseVData { theta0, theta0_star, h, s, h_star, s_star, r } = data;
    let field = common_field(&[theta0, theta0_star, h, s, h_star, s_star, r])?;
    precondition(field.characteristic() == 2, || "case V needs characteristic 2".into())?;
    precondition(field.order().is_some_and(|q| q >= 4), || "case V needs a field with at least 4 elements".into())?;
    for (name, x) in [("h", h), ("s", s), ("h_star", h_star), ("s_star", s_star)] {
        precondition(!x.is_zero(), || format!("{name} must be nonzero"))?;
    }
    precondition(!s.is_one(), || "s must differ from 1".into())?;
    precondition(!s_star.is_one(), || "s_star must differ from 1".into())?;

    let one = field.one();
    let theta = vec![theta0.clone(), theta0 + h * (s + &one), theta0 + h, theta0 + h * s];
    let theta_star = vec![
        theta0_star.clone(),
        theta0_star + h_star * (s_star + &one),
        theta0_star + h_star,
        theta0_star + h_star * s_star,
    ];
    let hh = h * h_star;
    let varphi = vec![&hh * r, hh.clone(), &hh * (r + s + s_star)];
    let phi = vec![&hh * (r + s * (&one + s_star)), hh.clone(), &hh * (r + s_star * (&one + s))];
    for (i, (x, y)) in varphi.iter().zip(&phi).enumerate() {
        precondition(!x.is_zero(), || format!("varphi_{} = 0", i + 1))?;
        precondition(!y.is_zero(), || format!("phi_{} = 0", i + 1))?;
    }
    finish(field, theta, theta_star, varphi, phi)
}

fn pairwise_distinct(values: &[FieldElement]) -> bool {
    values.iter().enumerate().all(|(j, x)| !values[..j].contains(x))
}

/// The d = 2 family with H = 0, which is balanced but, for generic
/// eigenvalues, neither essentially bipartite nor essentially dual
/// bipartite.
pub fn generate_d2_counterexample(theta: [FieldElement; 3], theta_star: [FieldElement; 3]) -> Result<ParameterArray> {
    generate_case0_d2(theta.clone(), theta_star.clone(), theta[0].descriptor().zero())
}

/// General d = 2 array with prescribed H:
/// φ_1 = H − (θ_0−θ_1)(θ*_0−θ*_1), φ_2 = H − (θ_1−θ_2)(θ*_1−θ*_2),
/// ϕ_1 = H + (θ_1−θ_2)(θ*_0−θ*_1), ϕ_2 = H + (θ_0−θ_1)(θ*_1−θ*_2).
pub fn generate_case0_d2(
    theta: [FieldElement; 3],
    theta_star: [FieldElement; 3],
    h: FieldElement,
) -> Result<ParameterArray> {
    let [t0, t1, t2] = &theta;
    let [s0, s1, s2] = &theta_star;
    let field = common_field(&[t0, t1, t2, s0, s1, s2, &h])?;
    precondition(pairwise_distinct(&theta), || "theta entries must be distinct".into())?;
    precondition(pairwise_distinct(&theta_star), || "theta_star entries must be distinct".into())?;
    let varphi = vec![&h - (t0 - t1) * (s0 - s1), &h - (t1 - t2) * (s1 - s2)];
    let phi = vec![&h + (t1 - t2) * (s0 - s1), &h + (t0 - t1) * (s1 - s2)];
    finish(field, theta.to_vec(), theta_star.to_vec(), varphi, phi)
}

/// d = 1 array with ϕ_1 = φ_1 + (θ*_1 − θ*_0)(θ_1 − θ_0).
pub fn generate_case0_d1(
    theta: [FieldElement; 2],
    theta_star: [FieldElement; 2],
    varphi1: FieldElement,
) -> Result<ParameterArray> {
    let [t0, t1] = &theta;
    let [s0, s1] = &theta_star;
    let field = common_field(&[t0, t1, s0, s1, &varphi1])?;
    precondition(t0 != t1, || "theta_0 = theta_1".into())?;
    precondition(s0 != s1, || "theta_star_0 = theta_star_1".into())?;
    precondition(!varphi1.is_zero(), || "varphi_1 must be nonzero".into())?;
    let phi1 = &varphi1 + (s1 - s0) * (t1 - t0);
    precondition(!phi1.is_zero(), || "derived phi_1 is zero".into())?;
    finish(field, theta.to_vec(), theta_star.to_vec(), vec![varphi1], vec![phi1])
}

/// Regenerates the array described by `data`.
pub fn generate(data: &CaseData) -> Result<ParameterArray> {
    match data {
        CaseData::I(x) => generate_case_i(x),
        CaseData::II(x) => generate_case_ii(x),
        CaseData::III(x) => generate_case_iii(x),
        CaseData::IV(x) => generate_case_iv(x),
        CaseData::V(x) => generate_case_v(x),
    }
}
