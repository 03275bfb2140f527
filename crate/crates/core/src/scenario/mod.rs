//! Batch scenarios and their reports.
//!
//! A scenario names one input (a tower, or a walker context with elements),
//! the analyses to run, and optional expectations. Running it produces a
//! [`ScenarioReport`] whose `checks` record every expectation as pass/fail.
//! Reports carry no timing, so equal inputs give byte-identical JSON.
//!
//! ```
//! use lim1::scenario::{run_suite, Report};
//!
//! let report: Report = run_suite("paper-examples", 0).unwrap();
//! assert!(report.passed);
//! ```

mod property;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::FgAbGroup;
use crate::ordinal::OrdinalCNF;
use crate::tower::{
    analyze, decompose, AnalysisReport, Completeness, Length, Lim1Status, LimValue, MlStatus, Tower, Verdict,
    DEFAULT_HORIZON,
};
use crate::walker::{parse_element, ulm_probe, UlmProbe, WalkerContext};
use crate::{Error, Result};

pub use property::run_property_suite;

pub const SCHEMA_VERSION: u32 = 1;

const PAPER_EXAMPLES: &str = include_str!("../../data/paper-examples.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    Ml,
    Length,
    Lim,
    Local,
    OmegaComplete,
    Decompose,
    NormalForm,
    UlmProbe,
}

const TOWER_ANALYSES: [Analysis; 6] = [
    Analysis::Ml,
    Analysis::Length,
    Analysis::Lim,
    Analysis::Local,
    Analysis::OmegaComplete,
    Analysis::Decompose,
];

const WALKER_ANALYSES: [Analysis; 2] = [Analysis::NormalForm, Analysis::UlmProbe];

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkerInput {
    pub p: u64,
    pub alpha: OrdinalCNF,
    /// Elements in the text syntax, e.g. `2*e[0, 1] + e[w]`.
    #[serde(default)]
    pub elements: Vec<String>,
    /// Ordinals below `alpha` for the Ulm probe.
    #[serde(default)]
    pub sample: Vec<OrdinalCNF>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Input {
    Tower(Tower),
    Walker(WalkerInput),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_horizon")]
    pub horizon: usize,
}

fn default_horizon() -> usize {
    DEFAULT_HORIZON
}

impl Default for Options {
    fn default() -> Self {
        Options {
            horizon: DEFAULT_HORIZON,
        }
    }
}

/// Expected outcomes; every field present becomes one check.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    /// `stabilized`, `never_stabilizes` or `unknown`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ml: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ml_stage: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<OrdinalCNF>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lim: Option<FgAbGroup>,
    /// `zero`, `non_zero` or `unknown`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lim1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_complete: Option<bool>,
    /// The tail group of the epimorphic part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epimorphic_tail: Option<FgAbGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_part_null: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_forms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<OrdinalCNF>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights_exact: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(flatten)]
    pub input: Input,
    /// Empty means every analysis that applies to the input.
    #[serde(default)]
    pub analyses: Vec<Analysis>,
    #[serde(default)]
    pub options: Options,
    #[serde(default)]
    pub expect: Expectation,
}

impl Scenario {
    pub fn tower(name: &str, tower: Tower) -> Scenario {
        Scenario {
            name: name.to_string(),
            input: Input::Tower(tower),
            analyses: Vec::new(),
            options: Options::default(),
            expect: Expectation::default(),
        }
    }

    /// Reads one scenario or a list of scenarios.
    pub fn parse_many(text: &str) -> Result<Vec<Scenario>> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        if v.is_array() {
            Ok(serde_json::from_value(v)?)
        } else {
            Ok(vec![serde_json::from_value(v)?])
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum DecompositionSummary {
    Exact {
        epimorphic: Tower,
        local_part: Tower,
        epimorphic_is_epimorphic: bool,
        local_part_lim_zero: bool,
    },
    Unknown {
        horizon: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TowerResults {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ml: Option<MlStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<Length>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lim: Option<LimValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lim1: Option<Lim1Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_complete: Option<Completeness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFormEntry {
    pub input: String,
    pub normal_form: String,
    pub height: OrdinalCNF,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkerResults {
    pub p: u64,
    pub alpha: OrdinalCNF,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub normal_forms: Vec<NormalFormEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ulm_probe: Option<UlmProbe>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerResults>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walker: Option<WalkerResults>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl ScenarioReport {
    pub fn from_checks(name: impl Into<String>, checks: Vec<Check>) -> ScenarioReport {
        ScenarioReport {
            name: name.into(),
            tower: None,
            walker: None,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    /// Sorted by name.
    pub scenarios: Vec<ScenarioReport>,
    pub checks_total: usize,
    pub checks_failed: usize,
    pub passed: bool,
}

impl Report {
    pub fn new(mut scenarios: Vec<ScenarioReport>) -> Report {
        scenarios.sort_by(|a, b| a.name.cmp(&b.name));
        let checks_total = scenarios.iter().map(|s| s.checks.len()).sum();
        let checks_failed = scenarios.iter().flat_map(|s| &s.checks).filter(|c| !c.passed).count();
        Report {
            schema_version: SCHEMA_VERSION,
            scenarios,
            checks_total,
            checks_failed,
            passed: checks_failed == 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn expect_eq<T: PartialEq + fmt::Display>(checks: &mut Vec<Check>, name: &str, want: &T, got: Option<&T>) {
    let (passed, got) = match got {
        Some(g) => (g == want, g.to_string()),
        None => (false, "unknown".to_string()),
    };
    checks.push(Check::new(name, passed, format!("expected {want}, got {got}")));
}

fn lim1_kind(l: &Lim1Status) -> &'static str {
    match l {
        Lim1Status::Zero => "zero",
        Lim1Status::NonZero { .. } => "non_zero",
        Lim1Status::Unknown { .. } => "unknown",
    }
}

fn completeness_bool(c: &Completeness) -> Option<bool> {
    match c {
        Completeness::Complete => Some(true),
        Completeness::Incomplete { .. } => Some(false),
        Completeness::Unknown { .. } | Completeness::NotApplicable => None,
    }
}

fn selected(requested: &[Analysis], applicable: &[Analysis]) -> Result<Vec<Analysis>> {
    if requested.is_empty() {
        return Ok(applicable.to_vec());
    }
    if let Some(a) = requested.iter().find(|a| !applicable.contains(a)) {
        return Err(Error::Precondition(format!(
            "analysis {a:?} does not apply to this input"
        )));
    }
    Ok(requested.to_vec())
}

fn run_tower(sc: &Scenario, s: &Tower) -> Result<ScenarioReport> {
    let wanted = selected(&sc.analyses, &TOWER_ANALYSES)?;
    let has = |a: Analysis| wanted.contains(&a);
    let horizon = sc.options.horizon;
    let AnalysisReport {
        ml,
        length,
        lim,
        lim1,
        local,
        omega_complete,
    } = analyze(s, horizon);
    let ex = &sc.expect;
    let mut checks = Vec::new();
    if let Some(k) = &ex.ml {
        expect_eq(&mut checks, "ml", k, Some(&ml.kind().to_string()));
    }
    if let Some(n) = ex.ml_stage {
        let got = match ml {
            MlStatus::Stabilized { stage } => Some(stage),
            _ => None,
        };
        expect_eq(&mut checks, "ml_stage", &n, got.as_ref());
    }
    if let Some(l) = &ex.length {
        expect_eq(&mut checks, "length", l, length.exact());
    }
    if let Some(g) = &ex.lim {
        expect_eq(&mut checks, "lim", g, lim.group());
    }
    if let Some(k) = &ex.lim1 {
        expect_eq(&mut checks, "lim1", k, Some(&lim1_kind(&lim1).to_string()));
    }
    if let Some(b) = ex.local {
        expect_eq(&mut checks, "local", &b, local.as_bool().as_ref());
    }
    if let Some(b) = ex.omega_complete {
        expect_eq(
            &mut checks,
            "omega_complete",
            &b,
            completeness_bool(&omega_complete).as_ref(),
        );
    }
    let decomposition = if has(Analysis::Decompose) || ex.epimorphic_tail.is_some() || ex.local_part_null.is_some() {
        Some(match decompose(s, horizon) {
            Ok(d) => DecompositionSummary::Exact {
                epimorphic_is_epimorphic: d.epimorphic.is_epimorphic(),
                local_part_lim_zero: analyze(&d.local_part, horizon)
                    .lim
                    .group()
                    .is_some_and(FgAbGroup::is_trivial),
                epimorphic: d.epimorphic,
                local_part: d.local_part,
            },
            Err(_) => DecompositionSummary::Unknown { horizon },
        })
    } else {
        None
    };
    if let Some(DecompositionSummary::Exact {
        epimorphic,
        local_part,
        epimorphic_is_epimorphic,
        local_part_lim_zero,
    }) = &decomposition
    {
        checks.push(Check::new(
            "epimorphic_part",
            *epimorphic_is_epimorphic,
            "E is levelwise epimorphic",
        ));
        checks.push(Check::new("local_part", *local_part_lim_zero, "lim L = 0"));
        if let Some(g) = &ex.epimorphic_tail {
            expect_eq(&mut checks, "epimorphic_tail", g, Some(epimorphic.tail_group()));
        }
        if let Some(b) = ex.local_part_null {
            expect_eq(&mut checks, "local_part_null", &b, Some(&local_part.is_null()));
        }
    } else if ex.epimorphic_tail.is_some() || ex.local_part_null.is_some() {
        checks.push(Check::new("decomposition", false, "filtration undecided"));
    }
    let results = TowerResults {
        ml: has(Analysis::Ml).then_some(ml),
        length: has(Analysis::Length).then_some(length),
        lim1: has(Analysis::Lim).then_some(lim1),
        lim: has(Analysis::Lim).then_some(lim),
        local: has(Analysis::Local).then_some(local),
        omega_complete: has(Analysis::OmegaComplete).then_some(omega_complete),
        decomposition: decomposition.filter(|_| has(Analysis::Decompose)),
    };
    let mut report = ScenarioReport::from_checks(&sc.name, checks);
    report.tower = Some(results);
    Ok(report)
}

fn run_walker(sc: &Scenario, w: &WalkerInput) -> Result<ScenarioReport> {
    let wanted = selected(&sc.analyses, &WALKER_ANALYSES)?;
    let ctx = WalkerContext::new(w.p, w.alpha.clone())?;
    let mut normal_forms = Vec::new();
    if wanted.contains(&Analysis::NormalForm) {
        for text in &w.elements {
            let x = parse_element(&ctx, text)?.normalize();
            normal_forms.push(NormalFormEntry {
                input: text.clone(),
                normal_form: x.to_string(),
                height: x.height(),
            });
        }
    }
    let probe = if wanted.contains(&Analysis::UlmProbe) {
        Some(ulm_probe(&ctx, &w.sample)?)
    } else {
        None
    };
    let ex = &sc.expect;
    let mut checks = Vec::new();
    if let Some(want) = &ex.normal_forms {
        let got: Vec<String> = normal_forms.iter().map(|e| e.normal_form.clone()).collect();
        checks.push(Check::new(
            "normal_forms",
            &got == want,
            format!("expected {want:?}, got {got:?}"),
        ));
    }
    if let Some(want) = &ex.heights {
        let got: Vec<OrdinalCNF> = normal_forms.iter().map(|e| e.height.clone()).collect();
        checks.push(Check::new(
            "heights",
            &got == want,
            format!("expected {want:?}, got {got:?}"),
        ));
    }
    if let Some(b) = ex.heights_exact {
        let got = probe.as_ref().map(UlmProbe::heights_exact);
        expect_eq(&mut checks, "heights_exact", &b, got.as_ref());
    }
    let mut report = ScenarioReport::from_checks(&sc.name, checks);
    report.walker = Some(WalkerResults {
        p: w.p,
        alpha: w.alpha.clone(),
        normal_forms,
        ulm_probe: probe,
    });
    Ok(report)
}

pub fn run_scenario(sc: &Scenario) -> Result<ScenarioReport> {
    match &sc.input {
        Input::Tower(s) => run_tower(sc, s),
        Input::Walker(w) => run_walker(sc, w),
    }
}

/// Runs every scenario; an input error stops the batch.
pub fn run_scenarios(list: &[Scenario]) -> Result<Report> {
    let reports = list.iter().map(run_scenario).collect::<Result<Vec<_>>>()?;
    Ok(Report::new(reports))
}

pub fn paper_examples() -> Vec<Scenario> {
    Scenario::parse_many(PAPER_EXAMPLES).expect("bundled scenarios parse")
}

pub const SUITES: [&str; 2] = ["paper-examples", "property-suite"];

/// `paper-examples` ignores the seed; `property-suite` draws everything from it.
pub fn run_suite(name: &str, seed: u64) -> Result<Report> {
    match name {
        "paper-examples" => run_scenarios(&paper_examples()),
        "property-suite" => Ok(run_property_suite(seed)),
        _ => Err(Error::UnknownSuite(name.to_string())),
    }
}

fn tower_line(t: &TowerResults) -> String {
    let mut parts = Vec::new();
    if let Some(ml) = &t.ml {
        parts.push(match ml {
            MlStatus::Stabilized { stage } => format!("ML at {stage}"),
            MlStatus::NeverStabilizes { multiplier, .. } => format!("not ML (x{multiplier})"),
            MlStatus::Unknown { horizon } => format!("ML unknown past {horizon}"),
        });
    }
    if let Some(l) = &t.length {
        parts.push(match l {
            Length::Exact { length } => format!("length {length}"),
            Length::UnknownBeyond { horizon } => format!("length > {horizon}"),
        });
    }
    if let Some(l) = &t.lim {
        parts.push(match l.group() {
            Some(g) => format!("lim {g}"),
            None => "lim unknown".into(),
        });
    }
    if let Some(l) = &t.lim1 {
        parts.push(format!("lim1 {}", lim1_kind(l)));
    }
    if let Some(v) = &t.local {
        parts.push(match v.as_bool() {
            Some(b) => format!("local {b}"),
            None => "local unknown".into(),
        });
    }
    if let Some(c) = &t.omega_complete {
        parts.push(match completeness_bool(c) {
            Some(b) => format!("w-complete {b}"),
            None => "w-complete unknown".into(),
        });
    }
    parts.join(", ")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.scenarios {
            let mark = if s.passed { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", s.name)?;
            if let Some(t) = &s.tower {
                write!(f, ": {}", tower_line(t))?;
            }
            if let Some(w) = &s.walker {
                write!(f, ": p = {}, alpha = {}", w.p, w.alpha)?;
                for e in &w.normal_forms {
                    write!(f, "\n       {} -> {} (height {})", e.input, e.normal_form, e.height)?;
                }
                if let Some(u) = &w.ulm_probe {
                    write!(
                        f,
                        "\n       ulm probe: {} samples, exact {}",
                        u.samples.len(),
                        u.heights_exact()
                    )?;
                }
            }
            writeln!(f)?;
            for c in s.checks.iter().filter(|c| !c.passed) {
                writeln!(f, "       {} failed: {}", c.name, c.detail)?;
            }
        }
        write!(
            f,
            "{} scenarios, {} checks, {} failed",
            self.scenarios.len(),
            self.checks_total,
            self.checks_failed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_examples_pass() {
        let r = run_suite("paper-examples", 0).unwrap();
        let failed: Vec<_> = r
            .scenarios
            .iter()
            .flat_map(|s| s.checks.iter().filter(|c| !c.passed).map(move |c| (&s.name, c)))
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(r.scenarios.len() >= 12);
        assert!(r.scenarios.windows(2).all(|w| w[0].name <= w[1].name));
    }

    #[test]
    fn unknown_suite_and_empty_batch() {
        assert!(matches!(run_suite("nope", 0), Err(Error::UnknownSuite(_))));
        let r = run_scenarios(&[]).unwrap();
        assert!(r.passed && r.scenarios.is_empty());
    }

    #[test]
    fn failed_expectation_is_reported() {
        let text = r#"{"name": "wrong", "tower": {"kind": "S_of_A", "group": "Z/6", "multiplier": 2},
                       "expect": {"lim": "Z/2"}}"#;
        let r = run_scenarios(&Scenario::parse_many(text).unwrap()).unwrap();
        assert!(!r.passed);
        assert_eq!(r.checks_failed, 1);
    }

    #[test]
    fn analyses_subset() {
        let text = r#"{"name": "sub", "tower": {"kind": "S_of_A", "group": "Z", "multiplier": 2},
                       "analyses": ["ml"]}"#;
        let r = run_scenario(&Scenario::parse_many(text).unwrap()[0]).unwrap();
        let t = r.tower.unwrap();
        assert!(t.ml.is_some() && t.lim.is_none() && t.decomposition.is_none());
        let bad = r#"{"name": "bad", "tower": {"kind": "S_of_A", "group": "Z", "multiplier": 2},
                      "analyses": ["ulm_probe"]}"#;
        assert!(run_scenario(&Scenario::parse_many(bad).unwrap()[0]).is_err());
    }
}
