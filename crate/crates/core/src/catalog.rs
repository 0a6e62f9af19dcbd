//! The identity catalog: every checked identity, parametric family,
//! conjecture scan and exploratory comparison, with uniform reports.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::sigma;
use crate::error::{Error, Result};
use crate::lambert::{self as lq, resolve_params, ParamSpec, Params, ENGINE_ORDER_LIMIT};
use crate::partitions::kappa_sum;
use crate::partitions::visit_up_to;
use crate::series::{format_coeff, rat, ratio, Coeff, Exponent, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Identity,
    ParametricFamily,
    ConjectureScan,
    Exploratory,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Identity => "identity",
            Kind::ParametricFamily => "parametric-family",
            Kind::ConjectureScan => "conjecture-scan",
            Kind::Exploratory => "exploratory",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where an entry comes from: a location and a short verbatim quote.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Anchor {
    pub location: &'static str,
    pub quote: &'static str,
}

/// One side-by-side comparison inside an entry.
#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
}

impl Case {
    pub fn new(label: impl Into<String>, lhs: TruncatedSeries, rhs: TruncatedSeries) -> Self {
        Case { label: label.into(), lhs, rhs }
    }
}

/// Result of a conjecture scan before it is wrapped into a report.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub counterexample: Option<Counterexample>,
    pub checked_range: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub exponent: Exponent,
    pub expected: String,
    pub actual: String,
}

type CaseBuilder = fn(Exponent) -> Result<Vec<Case>>;
type ScanBuilder = fn(Exponent, &Params) -> Result<ScanOutcome>;

#[derive(Clone, Copy)]
pub enum Check {
    Cases(CaseBuilder),
    Scan(ScanBuilder),
}

/// A catalog entry.
#[derive(Clone, Copy)]
pub struct IdentityEntry {
    pub id: &'static str,
    pub kind: Kind,
    pub summary: &'static str,
    pub default_order: Exponent,
    /// Largest order the entry accepts; `verify_all` clamps to it.
    pub max_order: Exponent,
    pub params: &'static [ParamSpec],
    pub anchor: Anchor,
    pub check: Check,
}

impl std::fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("default_order", &self.default_order)
            .field("max_order", &self.max_order)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub order: Exponent,
    pub status: Status,
    pub first_mismatch: Option<Exponent>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub elapsed_ms: u64,
    /// Label of the failing case, for text output.
    #[serde(skip)]
    pub case: Option<String>,
    #[serde(skip)]
    pub cases_checked: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub id: String,
    pub order: Exponent,
    pub status: Status,
    pub first_mismatch: Option<Exponent>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub elapsed_ms: u64,
    pub counterexample: Option<Counterexample>,
    pub params: BTreeMap<String, i64>,
    pub checked_range: String,
}

/// Outcome of `verify_all`: the roll-up and the exploratory entries.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub checked: Vec<VerificationReport>,
    pub exploratory: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checked.iter().all(VerificationReport::passed)
    }
}

fn one(label: &str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> Result<Vec<Case>> {
    Ok(vec![Case::new(label, lhs, rhs)])
}

/// Compares every case at the largest order both sides trust (capped by `order`).
/// The first failing case decides the report.
pub fn compare_cases(id: &str, order: Exponent, cases: &[Case]) -> Result<VerificationReport> {
    let mut compared = order;
    for case in cases {
        for side in [&case.lhs, &case.rhs] {
            if let Some((e, _)) = side.terms().find(|(e, c)| *e < 0 && !c.is_zero()) {
                return Err(Error::NegativeExponent { id: id.to_string(), exponent: e });
            }
        }
        let m = order.min(case.lhs.order()).min(case.rhs.order());
        compared = compared.min(m);
        if m < 0 {
            continue;
        }
        if let Some(e) = case.lhs.equals_up_to(&case.rhs, m)? {
            return Ok(VerificationReport {
                id: id.to_string(),
                order: m,
                status: Status::Fail,
                first_mismatch: Some(e),
                lhs: Some(format_coeff(&case.lhs.coeff(e)?)),
                rhs: Some(format_coeff(&case.rhs.coeff(e)?)),
                elapsed_ms: 0,
                case: Some(case.label.clone()),
                cases_checked: cases.len(),
            });
        }
    }
    Ok(VerificationReport {
        id: id.to_string(),
        order: compared,
        status: Status::Pass,
        first_mismatch: None,
        lhs: None,
        rhs: None,
        elapsed_ms: 0,
        case: None,
        cases_checked: cases.len(),
    })
}

pub fn list_catalog() -> &'static [IdentityEntry] {
    CATALOG
}

pub fn entry(id: &str) -> Result<&'static IdentityEntry> {
    CATALOG.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownId {
        id: id.to_string(),
        valid: CATALOG.iter().map(|e| e.id).collect::<Vec<_>>().join(", "),
    })
}

fn check_entry_order(entry: &IdentityEntry, order: Exponent) -> Result<()> {
    if order < 1 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    if order > entry.max_order {
        return Err(Error::EngineLimit {
            id: entry.id.to_string(),
            order,
            limit: entry.max_order,
        });
    }
    Ok(())
}

/// The cases an entry compares at `order`.
pub fn build_cases(id: &str, order: Exponent) -> Result<Vec<Case>> {
    let e = entry(id)?;
    check_entry_order(e, order)?;
    match e.check {
        Check::Cases(build) => build(order),
        Check::Scan(_) => Err(Error::WrongKind {
            id: id.to_string(),
            kind: e.kind.name().to_string(),
            operation: "verify".to_string(),
        }),
    }
}

pub fn verify(id: &str, order: Exponent) -> Result<VerificationReport> {
    let start = Instant::now();
    let cases = build_cases(id, order)?;
    let mut report = compare_cases(id, order, &cases)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Verifies every non-scan entry at `min(order, max_order)`, in parallel.
/// Reports come back in catalog order; exploratory entries are kept apart.
pub fn verify_all(order: Exponent) -> Result<SuiteReport> {
    if order < 1 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    let entries: Vec<&IdentityEntry> = CATALOG.iter().filter(|e| matches!(e.check, Check::Cases(_))).collect();
    let reports = entries
        .par_iter()
        .map(|e| verify(e.id, order.min(e.max_order)).map(|r| (e.kind, r)))
        .collect::<Result<Vec<_>>>()?;
    let mut suite = SuiteReport { checked: Vec::new(), exploratory: Vec::new() };
    for (kind, r) in reports {
        if kind == Kind::Exploratory {
            suite.exploratory.push(r);
        } else {
            suite.checked.push(r);
        }
    }
    Ok(suite)
}

pub fn scan(id: &str, order: Exponent, params: &Params) -> Result<ScanReport> {
    let e = entry(id)?;
    let Check::Scan(run) = e.check else {
        return Err(Error::WrongKind {
            id: id.to_string(),
            kind: e.kind.name().to_string(),
            operation: "scan".to_string(),
        });
    };
    let resolved = resolve_params(e.params, params)?;
    check_entry_order(e, order)?;
    let start = Instant::now();
    let outcome = run(order, &resolved)?;
    let (status, first, lhs, rhs) = match &outcome.counterexample {
        Some(c) => (Status::Fail, Some(c.exponent), Some(c.actual.clone()), Some(c.expected.clone())),
        None => (Status::Pass, None, None, None),
    };
    Ok(ScanReport {
        id: id.to_string(),
        order,
        status,
        first_mismatch: first,
        lhs,
        rhs,
        elapsed_ms: start.elapsed().as_millis() as u64,
        counterexample: outcome.counterexample,
        params: resolved,
        checked_range: outcome.checked_range,
    })
}

// ---------------------------------------------------------------------------
// Case builders

fn intro_mod3(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = rhs", lq::intro_mod3_lhs(n)?, lq::intro_mod3_rhs(n)?)
}

fn thm41(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = rhs", lq::thm41_lhs(n)?, lq::thm41_rhs(n)?)
}

fn thm41_sumrep(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = lattice sums", lq::thm41_lhs(n)?, lq::thm41_sumrep(n)?)
}

fn lem44(n: Exponent) -> Result<Vec<Case>> {
    one("lattice sums = sum c(m) q^m", lq::thm41_sumrep(n)?, lq::lem44_rhs(n)?)
}

fn lem31(n: Exponent) -> Result<Vec<Case>> {
    let f1 = lq::f1(n)?;
    Ok(vec![
        Case::new("f1 = divisor form", f1.clone(), lq::lem31_rhs(n)?),
        Case::new("f1 = a(n) - b(n)", f1, lq::rect_ab_series(n)?),
    ])
}

fn thm32(n: Exponent) -> Result<Vec<Case>> {
    let f2 = lq::f2(n)?;
    let f3 = lq::f3(n)?;
    Ok(vec![
        Case::new("f2 = f3", f2.clone(), f3.clone()),
        Case::new("f2 = c(n) + d(n)", f2, lq::twosize_cd_series(n)?),
        Case::new("f3 = 2c(n)", f3, lq::twosize_2c_series(n)?),
    ])
}

fn thm34(n: Exponent) -> Result<Vec<Case>> {
    one("f1 = f3", lq::f1(n)?, lq::f3(n)?)
}

fn lem33(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = rhs", lq::lem33_lhs(n)?, lq::lem33_rhs(n)?)
}

fn lem33_quintuple(n: Exponent) -> Result<Vec<Case>> {
    let five = lq::quintuple_sum(n)?;
    Ok(vec![
        Case::new("five-fold sum = rhs", five.clone(), lq::lem33_rhs(n)?),
        Case::new("five-fold sum = lhs", five.clone(), lq::lem33_lhs(n)?),
        Case::new("five-fold sum = triple Lambert form", five, lq::liouville_triple(n)?),
    ])
}

fn identity33(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = rhs", lq::identity33_lhs(n)?, lq::identity33_rhs(n)?)
}

fn kappa_vanishing(n: Exponent) -> Result<Vec<Case>> {
    let direct = TruncatedSeries::from_fn(0, n, |e| rat(if e == 0 { 0 } else { kappa_sum(e as u64) }));
    let mut frob = vec![0i64; n as usize + 1];
    visit_up_to(n as u64, &mut |parts| {
        let w: u32 = parts.iter().sum();
        frob[w as usize] += crate::partitions::Partition::new(parts.to_vec()).kappa_frobenius();
    });
    let frob = TruncatedSeries::from_integers(0, &frob);
    Ok(vec![
        Case::new("sum of kappa over partitions of n = 0", direct.clone(), TruncatedSeries::zero(n)),
        Case::new("Frobenius form = direct form", frob, direct),
    ])
}

fn lem42(n: Exponent) -> Result<Vec<Case>> {
    (1..=12)
        .map(|k| Ok(Case::new(format!("n = {k}"), lq::wz_sum(k, n)?, lq::wz_closed(k, n)?)))
        .collect()
}

fn cor43(n: Exponent) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for k in 0..=10 {
        cases.push(Case::new(format!("aa1({k}) closed form"), lq::aa1(k, n)?, lq::aa1_closed(k, n)?));
    }
    for k in 0..=10 {
        cases.push(Case::new(format!("aa({k}) reconstruction"), lq::aa(k, n)?, lq::aa_reconstructed(k, n)?));
    }
    Ok(cases)
}

fn shifted(s: TruncatedSeries, by: Exponent, order: Exponent) -> Result<TruncatedSeries> {
    s.shift(by).truncate(order)
}

fn wz_recurrence(n: Exponent) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for k in 0..=8i64 {
        for j in 1..=k + 4 {
            let mut lhs = lq::wz_f(k + 3, j, n)?;
            lhs.add_scaled_assign(&shifted(lq::wz_f(k + 2, j, n)?, k + 2, n)?, &rat(-1));
            lhs.add_scaled_assign(&shifted(lq::wz_f(k + 1, j, n)?, 3 * k + 5, n)?, &rat(-1));
            lhs.add_assign(&shifted(lq::wz_f(k, j, n)?, 4 * k + 5, n)?);
            let mut rhs = lq::wz_g(k, j, n)?;
            rhs.sub_assign(&lq::wz_g(k, j - 1, n)?);
            cases.push(Case::new(format!("n = {k}, j = {j}"), lhs, rhs));
        }
        let mut lhs = lq::wz_sum(k + 3, n)?;
        lhs.add_scaled_assign(&shifted(lq::wz_sum(k + 2, n)?, k + 2, n)?, &rat(-1));
        lhs.add_scaled_assign(&shifted(lq::wz_sum(k + 1, n)?, 3 * k + 5, n)?, &rat(-1));
        lhs.add_assign(&shifted(lq::wz_sum(k, n)?, 4 * k + 5, n)?);
        let b = (k + 3) * (k + 2) / 2;
        let rhs = TruncatedSeries::polynomial([(1, b), (1, b + k + 2)], n);
        cases.push(Case::new(format!("n = {k}, summed over j"), lhs, rhs));
    }
    Ok(cases)
}

fn thm46(n: Exponent) -> Result<Vec<Case>> {
    let lhs = lq::thm46_lhs(n)?;
    Ok(vec![
        Case::new("lhs = rhs", lhs.clone(), lq::thm46_rhs(n)?),
        Case::new("lhs = Bailey form", lhs, lq::thm46_bailey(n)?),
    ])
}

fn thm46_sumrep(n: Exponent) -> Result<Vec<Case>> {
    let rep = lq::thm46_sumrep(n)?;
    Ok(vec![
        Case::new("lhs = sum representation", lq::thm46_lhs(n)?, rep.clone()),
        Case::new("sum representation = rhs", rep, lq::thm46_rhs(n)?),
    ])
}

fn bailey_ac(n: Exponent) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for k in 0..=10 {
        cases.push(Case::new(format!("A_{k} = C_{k}"), lq::bailey_a(k, n)?, lq::bailey_c(k, n)?));
    }
    for (name, seq) in [
        ("A", lq::bailey_a_normalized as fn(i64, Exponent) -> Result<TruncatedSeries>),
        ("C", lq::bailey_c_normalized),
    ] {
        for k in 0..=7 {
            let mut lhs = seq(k + 3, n)?;
            lhs.add_assign(&shifted(seq(k, n)?, 4 * k + 5, n)?);
            cases.push(Case::new(format!("{name} recurrence at n = {k}"), lhs, TruncatedSeries::zero(n)));
        }
    }
    for k in 0..=10 {
        cases.push(Case::new(format!("B_{k} from A_r"), lq::bailey_b_from_a(k, n)?, lq::inverse_qfactorial(k, n)?));
    }
    Ok(cases)
}

fn prop53(n: Exponent) -> Result<Vec<Case>> {
    let yt = lq::ytilde(n)?;
    let minus_q_yt = shifted(-lq::ytilde(n - 1)?, 1, n)?;
    Ok(vec![
        Case::new("Ytilde = single-sum form", yt, lq::prop53_rhs(n)?),
        Case::new("Y = -q Ytilde", lq::y_series(n)?, minus_q_yt),
    ])
}

fn thm54(n: Exponent) -> Result<Vec<Case>> {
    one("product form = partition sum", lq::thm54_lhs(n)?, lq::thm54_rhs(n)?)
}

fn lem57_id1(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = rhs", lq::lem57_id1_lhs(n)?, lq::alt_y_lhs(n)?)
}

fn lem57_id2(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = rhs", lq::lem57_id2_lhs(n)?, lq::odd_square_sum(n)?)
}

fn alt_y(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = rhs", lq::alt_y_lhs(n)?, lq::alt_y_rhs(n)?)
}

fn thm58(n: Exponent) -> Result<Vec<Case>> {
    one("lhs = rhs", lq::thm58_lhs(n)?, lq::thm58_rhs(n)?)
}

fn cor59(n: Exponent) -> Result<Vec<Case>> {
    one("coefficient law", lq::thm58_lhs(n)?, lq::cor59_law(n)?)
}

fn prop510(n: Exponent) -> Result<Vec<Case>> {
    let lhs = lq::prop510_lhs(n)?;
    Ok(vec![
        Case::new("lhs = q psi(q^2)^2", lhs.clone(), lq::psi2sq(n)?),
        Case::new("coefficient law", lhs, lq::prop510_law(n)?),
    ])
}

fn prop511(n: Exponent) -> Result<Vec<Case>> {
    (1..=5)
        .map(|m| Ok(Case::new(format!("m = {m}"), lq::prop511_lhs(m, n)?, lq::prop511_rhs(m, n)?)))
        .collect()
}

fn prop511_base_q2m(n: Exponent) -> Result<Vec<Case>> {
    (1..=5)
        .map(|m| Ok(Case::new(format!("m = {m}"), lq::prop511_lhs(m, n)?, lq::prop511_rhs_base_q2m(m, n)?)))
        .collect()
}

fn thm46_signed(n: Exponent) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for k in 0..=10 {
        cases.push(Case::new(format!("A_{k} = signed C_{k}"), lq::bailey_a(k, n)?, lq::bailey_c_signed(k, n)?));
    }
    for k in 0..=7 {
        let lhs = lq::bailey_c_signed_normalized(k + 3, n)?;
        let rhs = shifted(lq::bailey_c_signed_normalized(k, n)?, 4 * k + 5, n)?;
        cases.push(Case::new(format!("signed C: f(n+3) = q^(4n+5) f(n) at n = {k}"), lhs, rhs));
    }
    let lhs = lq::thm46_lhs(n)?;
    cases.push(Case::new("lhs = signed sum representation", lhs, lq::thm46_sumrep_signed(n)?));
    cases.push(Case::new("Bailey form = signed sum representation", lq::thm46_bailey(n)?, lq::thm46_sumrep_signed(n)?));
    Ok(cases)
}

fn theta_pythagoras(n: Exponent) -> Result<Vec<Case>> {
    let mut rhs = lq::theta2pow4(n)?;
    rhs.add_assign(&lq::theta4(n)?.pow(4));
    one("theta3^4 = theta2^4 + theta4^4", lq::theta3(n)?.pow(4), rhs)
}

fn modular_triple(n: Exponent) -> Result<Vec<Case>> {
    let alt = lq::alt_y_lhs(n)?;
    let odd = lq::odd_square_sum(n)?;
    let even = lq::thm58_rhs(n)?.scale_int(2);
    let theta3 = lq::theta3(n)?;
    let theta4 = lq::theta4(n)?;
    // (D theta4)(q^2) / theta4(q^2): the operator acts before substituting q^2
    let theta4_log_q2 = lq::log_derivative(&lq::theta4(n.div_euclid(2) + 1)?)?
        .substitute_power(2)?
        .truncate(n)?;
    Ok(vec![
        Case::new("q(...)^2 = theta2^4/16", alt.clone(), lq::theta2pow4(n)?.scale(&ratio(1, 16))),
        Case::new("q(...)^2 = E2 combination (1, -3, 2)", alt, lq::e2_combination(1, -3, 2, -24, n)?),
        Case::new("odd squares = D theta3 / (2 theta3)", odd.clone(), lq::log_derivative(&theta3)?.scale(&ratio(1, 2))),
        Case::new("odd squares = E2 combination (1, -5, 4)", odd, lq::e2_combination(1, -5, 4, -24, n)?),
        Case::new("even part = -(D theta4)(q^2) / theta4(q^2)", even.clone(), -theta4_log_q2),
        Case::new("even part = E2 combination (0, 1, -1)", even, lq::e2_combination(0, 1, -1, -12, n)?),
        Case::new("D theta2 / theta2", lq::theta2_log_derivative(n)?, lq::e2_theta_combination(-1, 5, n)?),
        Case::new("D theta3 / theta3", lq::log_derivative(&theta3)?, lq::e2_theta_combination(5, -1, n)?),
        Case::new("D theta4 / theta4", lq::log_derivative(&theta4)?, lq::e2_theta_combination(-1, -1, n)?),
    ])
}

// ---------------------------------------------------------------------------
// Scans

fn adsy(n: Exponent, _: &Params) -> Result<ScanOutcome> {
    let y = lq::y_series(n)?;
    let mut counterexample = None;
    for e in (0..=n).step_by(2) {
        let c = y.coeff(e)?;
        if !c.is_zero() {
            counterexample = Some(Counterexample { exponent: e, expected: "0".into(), actual: format_coeff(&c) });
            break;
        }
    }
    Ok(ScanOutcome {
        counterexample,
        checked_range: format!("even exponents 0..={n} of Y"),
    })
}

fn kick3(n: Exponent, params: &Params) -> Result<ScanOutcome> {
    let a = params["a"];
    let s = lq::kick3(a, n)?;
    let step = 1i64 << a;
    let mut counterexample = None;
    let mut r = 1;
    while r * step <= n {
        let expected = Coeff::from_integer(sigma(1, r as u64).into());
        let actual = s.coeff(r * step)?;
        if actual != expected {
            counterexample = Some(Counterexample {
                exponent: r * step,
                expected: format_coeff(&expected),
                actual: format_coeff(&actual),
            });
            break;
        }
        r += 1;
    }
    Ok(ScanOutcome {
        counterexample,
        checked_range: format!("r = 1..={} (exponents r*{step} <= {n})", n / step),
    })
}

fn kick4(n: Exponent, _: &Params) -> Result<ScanOutcome> {
    let lhs = lq::kick4_lhs(n)?;
    let rhs = lq::kick4_rhs(n)?;
    let mut counterexample = None;
    for e in (2..=n).step_by(2) {
        let (a, b) = (lhs.coeff(e)?, rhs.coeff(e)?);
        if a != b {
            counterexample = Some(Counterexample { exponent: e, expected: format_coeff(&b), actual: format_coeff(&a) });
            break;
        }
    }
    Ok(ScanOutcome {
        counterexample,
        checked_range: format!("even exponents 2..={n}"),
    })
}

fn prop52_bound(n: Exponent, params: &Params) -> Result<ScanOutcome> {
    let (mmax, nmax) = (params["m"], params["n"]);
    let pairs: Vec<(i64, i64)> = (1..=mmax).flat_map(|m| (1..=nmax).map(move |k| (m, k))).collect();
    let found = pairs
        .par_iter()
        .map(|&(m, k)| -> Result<Option<(i64, i64, Counterexample)>> {
            let t = lq::ytilde_term(m, k, n)?;
            for (e, c) in t.terms() {
                if c.abs() > Coeff::from_integer(1.into()) || !c.is_integer() {
                    return Ok(Some((m, k, Counterexample {
                        exponent: e,
                        expected: "-1, 0 or 1".into(),
                        actual: format_coeff(c),
                    })));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    let first = found.into_iter().flatten().next();
    let checked_range = match &first {
        Some((m, k, _)) => format!("term a({m},{k}) up to q^{n}"),
        None => format!("terms a(m,n) for m <= {mmax}, n <= {nmax}, up to q^{n}"),
    };
    Ok(ScanOutcome { counterexample: first.map(|(_, _, c)| c), checked_range })
}

// ---------------------------------------------------------------------------
// Contents

const NO_PARAMS: &[ParamSpec] = &[];
const KICK3_PARAMS: &[ParamSpec] = &[ParamSpec { name: "a", default: 1, min: 1, max: 12 }];
const BOUND_PARAMS: &[ParamSpec] = &[
    ParamSpec { name: "m", default: 25, min: 1, max: 200 },
    ParamSpec { name: "n", default: 25, min: 1, max: 200 },
];

const fn at(location: &'static str, quote: &'static str) -> Anchor {
    Anchor { location, quote }
}

macro_rules! cases {
    ($id:expr, $kind:expr, $summary:expr, $default:expr, $max:expr, $anchor:expr, $f:expr) => {
        IdentityEntry {
            id: $id,
            kind: $kind,
            summary: $summary,
            default_order: $default,
            max_order: $max,
            params: NO_PARAMS,
            anchor: $anchor,
            check: Check::Cases($f),
        }
    };
}

use Kind::{ConjectureScan, Exploratory, Identity, ParametricFamily};

pub static CATALOG: &[IdentityEntry] = &[
    cases!("intro-mod3", Identity,
        "sum (q;q)_n (q;q)_{n-1} q^{n^2}/(q;q)_{2n} = sum (n/3) q^n/(1-q^n)",
        200, 2000, at("section 1", "is the Legendre symbol"), intro_mod3),
    cases!("thm-4.1", Identity,
        "sum (-1)^{n-1} q^{binom(n+1,2)} (q;q)_n (q;q)_{n-1}/(q;q)_{2n} = sum (5/n) q^n/(1-q^n)",
        200, 2000, at("section 4", "(\\frac{5}n)\\, q^n"), thm41),
    cases!("thm-4.1-sumrep", Identity,
        "the same left side equals two lattice sums over 5n^2 - j^2",
        200, 2000, at("section 4, proof", "q^{5n^2-j^2+5n-j+1}"), thm41_sumrep),
    cases!("lem-4.4", Identity,
        "the two lattice sums equal sum c(m) q^m",
        200, 2000, at("section 4", "occurs as the norm of an ideal"), lem44),
    cases!("lem-3.1", Identity,
        "f1 = sum_n sum_{d|n} (d^2+d-2n) q^n",
        300, 1000, at("section 3", "(d^2+d-2n)"), lem31),
    cases!("thm-3.2", Identity,
        "f2 = f3",
        300, 600, at("section 3", "$f_2(q)=f_3(q)$"), thm32),
    cases!("thm-3.4", Identity,
        "f1 = f3",
        300, 600, at("section 3", "$f_1(q)=f_3(q)$"), thm34),
    cases!("lem-3.3", Identity,
        "sum_{l>k} k q^l/((1-q^k)(1-q^l)) = sum k^2 q^k/(1-q^k) - sum k q^k/(1-q^k)^2",
        300, 600, at("section 3", "Using Bell's identity"), lem33),
    cases!("lem-3.3-quintuple", Identity,
        "brute-force five-fold sum against both sides",
        40, 120, at("section 3", "q^{x_1x_2+x_2{x_3}+{x_3}x_4+x_4x_5}"), lem33_quintuple),
    cases!("identity-3.3-reduced", Identity,
        "sum q^{m+n}/((1-q^n)(1-q^{m+n})^2) = sum q^{2i}/(1-q^i)^3",
        300, 600, at("section 3", "The task now reduces to proving"), identity33),
    cases!("kappa-vanishing", Identity,
        "sum over partitions of n of kappa vanishes; both kappa forms agree",
        35, 45, at("section 3", "forces the vanishing of"), kappa_vanishing),
    cases!("lem-4.2", ParametricFamily,
        "WZ finite sum equals its closed form, n <= 12",
        120, 1000, at("section 4", "invoke the Wilf-Zeilberger (WZ) method"), lem42),
    cases!("cor-4.3", ParametricFamily,
        "aa1 parity closed forms and aa reconstruction, n <= 10",
        120, 1000, at("section 4", "aa1(n):=aa(n)+q^{n-1}aa(n-1)"), cor43),
    cases!("wz-recurrence", ParametricFamily,
        "F/G telescoping recurrence, n <= 8 and 1 <= j <= n+4, plus its sum over j",
        120, 1000, at("section 4", "f(n+3)-q^{n+2}f(n+2)"), wz_recurrence),
    cases!("thm-4.6", Identity,
        "sum (-1)^n q^{binom(n+1,2)} (q;q)_n/(q;q)_{2n} = sum (-1)^m |a(7m)| q^m",
        150, 2000, at("section 4", "(-1)^m\\, \\vert a(7m)\\vert\\, q^m"), thm46),
    cases!("thm-4.6-sumrep", Identity,
        "the same left side as a sum of binomial-weighted monomials",
        150, 2000, at("section 4, proof", "q^{\\frac{(3n+2)(7n+5)}2}(1-q^{6n+5})"), thm46_sumrep),
    cases!("bailey-AC", ParametricFamily,
        "A_n = C_n for n <= 10, the order-3 recurrence on both, and the inversion back to B_n",
        150, 1000, at("section 4, proof", "f(n+3)+q^{4n+5}f(n)=0"), bailey_ac),
    cases!("prop-5.3", Identity,
        "Ytilde = sum_{k>=2} q^{k-1}/(1+q^{2k-1}) sum_{n<k} q^n/(1+q^n)",
        200, 1000, at("section 5", "\\sum_{k\\geq2} \\frac{q^{k-1}}{1+q^{2k-1}}"), prop53),
    cases!("thm-5.4", Identity,
        "product form equals the signed partition sum",
        30, 30, at("section 5", "(\\lambda_{2\\ell-1}-\\lambda_{2\\ell})(\\lambda_1-\\lambda_{\\ell})"), thm54),
    cases!("lem-5.7-id1", Identity,
        "double series with [q^{m-1} + q^{-m}] = q (sum q^{n-1}/(1+q^{2n-1}))^2",
        200, 1000, at("section 5", "We have the identities"), lem57_id1),
    cases!("lem-5.7-id2", Identity,
        "double series with [q^{-m} - q^{m-1}] = sum q^{2n-1}/(1+q^{2n-1})^2",
        200, 1000, at("section 5", "We have the identities"), lem57_id2),
    cases!("altY", Identity,
        "q (sum q^{n-1}/(1+q^{2n-1}))^2 = sum q^{2n-1}/(1+q^{2n-1})^2 + 2 sum q^{4n-2}/(1-q^{4n-2})^2",
        200, 1000, at("section 5", "a consequence of modularity"), alt_y),
    cases!("thm-5.8", Identity,
        "sum (-q)^{2mn+m-1}/((1+q^{2n-1})(1-q^{2m-1})) = sum q^{4n-2}/(1-q^{4n-2})^2",
        200, 1000, at("section 5", "\\frac{q^{4n-2}}{(1-q^{4n-2})^2}"), thm58),
    cases!("cor-5.9", Identity,
        "odd coefficients vanish; [q^{2r}] = sum of d | r with r/d odd",
        300, 1000, at("section 5", "$\\frac{r}d$ is odd"), cor59),
    cases!("prop-5.10", Identity,
        "sum q^n/(1+q^{2n-1}) = q psi(q^2)^2 and [q^{2r-1}] = ordered triangular pairs of r-1",
        200, 1000, at("section 5", "sum of two triangular numbers"), prop510),
    cases!("prop-5.11", ParametricFamily,
        "sum q^{2mn}/(1-q^n) equals the 2phi1-type sum over (q^{2m};q)_n, m <= 5",
        150, 1000, at("section 5", "(q^{2m};q^{2m})_n"), prop511),
    cases!("theta-pythagoras", Identity,
        "theta3^4 = theta2^4 + theta4^4",
        500, 2000, at("section 5", "\\theta_3^4(q)=\\theta_2^4(q)+\\theta_4^4(q)"), theta_pythagoras),
    cases!("thm58-modular-triple", Exploratory,
        "the three Eisenstein displays behind altY, read with theta2^4, and the theta log-derivative relations",
        200, 1000, at("section 5, proof", "a consequence of modularity"), modular_triple),
    cases!("thm-4.6-signed", Exploratory,
        "A_n against C_n with sign -1 exactly when n = 2 mod 3, and the left side against the sign-corrected sum representation",
        150, 2000, at("section 4, proof", "(-q)^{\\frac{n(2n-1)}3}"), thm46_signed),
    cases!("prop-5.11-base-q2m", Exploratory,
        "the 2phi1-type sum read with (q^{2m};q^{2m})_n in the denominator, m <= 5",
        150, 1000, at("section 5", "(q^{2m};q^{2m})_n"), prop511_base_q2m),
    IdentityEntry {
        id: "adsy",
        kind: ConjectureScan,
        summary: "Y(q) is odd: every even-exponent coefficient vanishes",
        default_order: 400,
        max_order: 2000,
        params: NO_PARAMS,
        anchor: at("section 5", "an odd function of $q$"),
        check: Check::Scan(adsy),
    },
    IdentityEntry {
        id: "kick3",
        kind: ConjectureScan,
        summary: "[q^{r 2^a}] sum q^{mn2^a}/((1+q^{n2^{a-1}})(1-q^{2m-1})) = sigma(r)",
        default_order: 200,
        max_order: 2000,
        params: KICK3_PARAMS,
        anchor: at("section 5", "the sum of divisors of $n$"),
        check: Check::Scan(kick3),
    },
    IdentityEntry {
        id: "kick4",
        kind: ConjectureScan,
        summary: "even coefficients of the two displayed series agree",
        default_order: 200,
        max_order: 2000,
        params: NO_PARAMS,
        anchor: at("section 5", "\\frac{(n-1)q^n}{1+q^{2n-1}}"),
        check: Check::Scan(kick4),
    },
    IdentityEntry {
        id: "prop-5.2-bound",
        kind: ConjectureScan,
        summary: "every coefficient of a single term a(m,n) is -1, 0 or 1",
        default_order: 600,
        max_order: ENGINE_ORDER_LIMIT,
        params: BOUND_PARAMS,
        anchor: at("section 5", "either $-1$ or $0$ or $1$"),
        check: Check::Scan(prop52_bound),
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_defaults_within_limits() {
        let mut ids: Vec<&str> = CATALOG.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CATALOG.len());
        for e in CATALOG {
            assert!(e.default_order >= 1 && e.default_order <= e.max_order, "{}", e.id);
            assert!(e.max_order <= ENGINE_ORDER_LIMIT, "{}", e.id);
        }
    }

    // Statements that do not hold as printed, with the exponent where they first break.
    const PRINTED_DISCREPANCIES: &[(&str, Exponent, Exponent)] = &[
        ("thm-4.6", 150, 43),
        ("thm-4.6-sumrep", 150, 5),
        ("bailey-AC", 150, 2),
        ("prop-5.11-base-q2m", 150, 8),
    ];

    #[test]
    fn low_order_verify_passes_for_every_checked_entry() {
        for e in CATALOG.iter().filter(|e| matches!(e.check, Check::Cases(_))) {
            let r = verify(e.id, 20.min(e.max_order)).unwrap();
            match PRINTED_DISCREPANCIES.iter().find(|d| d.0 == e.id) {
                Some(&(_, _, at)) if at <= 20 => assert_eq!(r.first_mismatch, Some(at), "{}", e.id),
                _ => assert!(r.passed(), "{} failed: {:?}", e.id, r),
            }
        }
    }

    #[test]
    fn printed_discrepancies_are_located_exactly() {
        for &(id, order, at) in PRINTED_DISCREPANCIES {
            let r = verify(id, order).unwrap();
            assert_eq!(r.status, Status::Fail, "{id}");
            assert_eq!(r.first_mismatch, Some(at), "{id}");
        }
    }

    #[test]
    fn perturbed_rhs_reports_exact_mismatch() {
        let mut cases = build_cases("thm-3.2", 30).unwrap();
        *cases[0].rhs.coeff_mut(3).unwrap() += rat(1);
        let r = compare_cases("thm-3.2", 30, &cases).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.first_mismatch, Some(3));
        assert_eq!(r.lhs.as_deref(), Some("2"));
        assert_eq!(r.rhs.as_deref(), Some("3"));
    }

    #[test]
    fn thm46_rhs_spot_values() {
        let cases = build_cases("thm-4.6", 10).unwrap();
        assert_eq!(cases[0].rhs.coeff(1).unwrap(), rat(-1));
        assert_eq!(cases[0].rhs.coeff(5).unwrap(), rat(-1));
    }

    #[test]
    fn unknown_id_and_order_limits() {
        assert!(matches!(verify("nope", 10), Err(Error::UnknownId { .. })));
        assert!(matches!(verify("thm-5.4", 31), Err(Error::EngineLimit { .. })));
        assert!(matches!(verify("thm-3.2", 0), Err(Error::InvalidOrder { .. })));
        assert!(matches!(verify("adsy", 10), Err(Error::WrongKind { .. })));
        assert!(matches!(scan("thm-3.2", 10, &Params::new()), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn negative_exponents_are_rejected() {
        let lhs = TruncatedSeries::polynomial([(1, -1)], 3);
        let cases = vec![Case::new("x", lhs.clone(), lhs)];
        assert!(matches!(
            compare_cases("x", 3, &cases),
            Err(Error::NegativeExponent { exponent: -1, .. })
        ));
    }

    #[test]
    fn kick3_scan_low_order() {
        let r = scan("kick3", 60, &Params::new()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.counterexample.is_none());
        assert!(r.checked_range.contains("1..=30"));
        let s = lq::kick3(1, 4).unwrap();
        assert_eq!(s.coeff(2).unwrap(), rat(1));
        assert_eq!(s.coeff(4).unwrap(), rat(3));
    }

    #[test]
    fn scan_rejects_unknown_params() {
        let mut ps = Params::new();
        ps.insert("z".into(), 1);
        assert!(matches!(scan("kick3", 20, &ps), Err(Error::MalformedParams(_))));
    }

    #[test]
    fn report_json_schema() {
        let r = verify("lem-3.1", 10).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);
        for k in ["id", "order", "status", "first_mismatch", "lhs", "rhs", "elapsed_ms"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["status"], "pass");
        assert!(v["first_mismatch"].is_null());
    }
}
