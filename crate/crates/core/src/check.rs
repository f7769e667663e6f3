//! Runs the validation pipeline and theorem battery on a spec document and
//! assembles a deterministic JSON report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::basis::{check_finitary_basis, Basis};
use crate::dsl::SpecDocument;
use crate::error::Result;
use crate::generate::{all_posets, random_poset, random_subset, rng};
use crate::ideal::{bottom_ideal, build_completion, Completion};
use crate::oracle::{self, Outcome};
use crate::order::{validate_poset, Poset, DEFAULT_MAX_CARRIER};
use crate::subset::Subset;

/// Subset families up to this many members are checked exhaustively;
/// larger ones are sampled.
pub const EXHAUSTIVE_SUBSETS_UP_TO: usize = 12;
pub const SAMPLE_SIZE: usize = 4096;
/// The union-of-directed-ideals check runs on completions up to this size.
pub const UNION_CHECK_MAX_IDEALS: usize = 12;
pub const RANDOM_INSTANCES: usize = 256;
pub const RANDOM_MAX_SIZE: usize = 8;
/// Largest `--exhaustive-size` accepted.
pub const MAX_EXHAUSTIVE_SIZE: usize = 6;

/// How far the pipeline runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Validate,
    Ideals,
    Complete,
    Check,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub force_closure: bool,
    pub max_carrier: usize,
    pub seed: u64,
    pub exhaustive_size: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            force_closure: false,
            max_carrier: DEFAULT_MAX_CARRIER,
            seed: 0,
            exhaustive_size: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecSection {
    pub name: String,
    pub elements: Vec<String>,
    pub order: Vec<[String; 2]>,
    pub mode: String,
    pub subset: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetSection {
    pub valid: bool,
    pub error: Option<String>,
    pub size: usize,
    pub relation_size: usize,
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisSection {
    pub members: Vec<String>,
    pub is_basis: bool,
    pub bottom: Option<String>,
    pub failure: Option<BasisFailureEntry>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisFailureEntry {
    pub reason: String,
    pub subset: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealsSection {
    pub count: usize,
    pub list: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionSection {
    pub size: usize,
    pub bottom: Option<String>,
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleEntry {
    pub status: Status,
    pub checked: u64,
    pub violations: usize,
    pub scope: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub oracle: String,
    pub detail: String,
}

/// Everything `run_checks` found. Serializes with sorted keys.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub spec: SpecSection,
    pub poset: PosetSection,
    pub basis: Option<BasisSection>,
    pub ideals: Option<IdealsSection>,
    pub completion: Option<CompletionSection>,
    pub oracles: BTreeMap<String, OracleEntry>,
    pub witnesses: Vec<WitnessEntry>,
    pub seed: Option<u64>,
}

/// Witness lists are truncated to this many entries per oracle.
const WITNESS_LIMIT: usize = 5;

impl RunReport {
    /// True iff nothing failed.
    pub fn passed(&self) -> bool {
        self.poset.valid
            && self.basis.as_ref().is_none_or(|b| b.is_basis)
            && self.oracles.values().all(|o| o.status != Status::Fail)
    }

    /// Canonical JSON: sorted keys, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
        text.push('\n');
        text
    }

    fn oracle(&mut self, name: &str, scope: impl Into<String>, outcome: Outcome) {
        let status = if outcome.holds() { Status::Pass } else { Status::Fail };
        for detail in outcome.violations.iter().take(WITNESS_LIMIT) {
            self.witnesses.push(WitnessEntry {
                oracle: name.to_string(),
                detail: detail.clone(),
            });
        }
        self.oracles.insert(
            name.to_string(),
            OracleEntry {
                status,
                checked: outcome.checked,
                violations: outcome.violations.len(),
                scope: scope.into(),
            },
        );
    }

    fn skip(&mut self, name: &str, scope: impl Into<String>) {
        self.oracles.insert(
            name.to_string(),
            OracleEntry {
                status: Status::Skipped,
                checked: 0,
                violations: 0,
                scope: scope.into(),
            },
        );
    }

    fn defect(&mut self, name: &str, err: crate::error::Error) {
        self.oracle(
            name,
            "aborted",
            Outcome {
                checked: 1,
                violations: vec![err.to_string()],
            },
        );
    }

    /// Human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "spec {}: {} elements, mode {}\n",
            self.spec.name,
            self.spec.elements.len(),
            self.spec.mode
        );
        match &self.poset.error {
            None => out.push_str(&format!(
                "poset: valid ({} pairs, {} covers)\n",
                self.poset.relation_size,
                self.poset.covers.len()
            )),
            Some(e) => out.push_str(&format!("poset: INVALID: {e}\n")),
        }
        if let Some(b) = &self.basis {
            match (&b.failure, &b.bottom) {
                (None, Some(bot)) => out.push_str(&format!("basis: finitary, bottom {bot}\n")),
                (Some(f), _) => out.push_str(&format!(
                    "basis: NOT finitary: {} for {{{}}}\n",
                    f.reason,
                    f.subset.join(",")
                )),
                _ => out.push_str("basis: finitary\n"),
            }
        }
        if let Some(i) = &self.ideals {
            out.push_str(&format!("ideals: {}\n", i.count));
            for members in &i.list {
                out.push_str(&format!("  {{{}}}\n", members.join(",")));
            }
        }
        if let Some(c) = &self.completion {
            out.push_str(&format!(
                "completion: {} ideals, {} covers, bottom {}\n",
                c.size,
                c.covers.len(),
                c.bottom.as_deref().unwrap_or("none")
            ));
        }
        for (name, o) in &self.oracles {
            let status = match o.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            out.push_str(&format!(
                "oracle {name}: {status} ({} checked, {})\n",
                o.checked, o.scope
            ));
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness [{}]: {}\n", w.oracle, w.detail));
        }
        out.push_str(if self.passed() { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }
}

fn pair_names(p: &Poset, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<[String; 2]> {
    pairs
        .into_iter()
        .map(|(x, y)| [p.element(x).to_string(), p.element(y).to_string()])
        .collect()
}

/// Runs the pipeline up to `stage`. Failures are recorded in the report,
/// never returned.
pub fn run_checks(spec: &SpecDocument, options: &CheckOptions, stage: Stage) -> RunReport {
    let mut report = RunReport {
        spec: SpecSection {
            name: spec.name.clone(),
            elements: spec.elements.iter().map(ToString::to_string).collect(),
            order: spec
                .order_pairs
                .iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
            mode: spec.closure_mode.to_string(),
            subset: spec
                .basis_subset
                .as_ref()
                .map(|s| s.iter().map(ToString::to_string).collect()),
        },
        poset: PosetSection {
            valid: false,
            error: None,
            size: spec.elements.len(),
            relation_size: 0,
            covers: Vec::new(),
        },
        basis: None,
        ideals: None,
        completion: None,
        oracles: BTreeMap::new(),
        witnesses: Vec::new(),
        seed: (stage == Stage::Check).then_some(options.seed),
    };

    let poset = match spec.poset(options.force_closure, options.max_carrier) {
        Ok(p) => p,
        Err(e) => {
            report.poset.error = Some(e.to_string());
            return report;
        }
    };
    report.poset.valid = true;
    report.poset.size = poset.len();
    report.poset.relation_size = poset.pairs().count();
    report.poset.covers = pair_names(&poset, poset.covers());

    let b = match &spec.basis_subset {
        Some(names) => poset
            .subset(names.iter().map(|e| e.as_str()))
            .expect("parser checks subset names"),
        None => poset.carrier(),
    };
    let basis_report = match check_finitary_basis(&poset, b) {
        Ok(r) => r,
        Err(e) => {
            report.defect("finitary_basis", e);
            return report;
        }
    };
    report.basis = Some(BasisSection {
        members: poset.names(b),
        is_basis: basis_report.is_basis,
        bottom: basis_report.bottom.map(|x| poset.element(x).to_string()),
        failure: basis_report.failure.map(|f| BasisFailureEntry {
            reason: f.reason.to_string(),
            subset: poset.names(f.subset),
        }),
        notes: basis_report.notes.iter().map(ToString::to_string).collect(),
    });
    if stage == Stage::Check && !basis_report.is_basis {
        for name in BASIS_ORACLES {
            report.skip(name, "basis check failed");
        }
        if let Err(e) = poset_oracles(&mut report, &poset, b, options) {
            report.defect("lubs_unique", e);
        }
        random_suite(&mut report, options);
        exhaustive_suite(&mut report, options);
        return report;
    }
    if stage == Stage::Validate || !basis_report.is_basis {
        return report;
    }

    let basis = Basis::new(&poset, b).expect("verdict was finitary");
    let completion = match build_completion(&basis) {
        Ok(c) => c,
        Err(e) => {
            report.defect("principality", e);
            return report;
        }
    };
    report.ideals = Some(IdealsSection {
        count: completion.len(),
        list: completion
            .ideals()
            .iter()
            .map(|i| poset.names(i.members()))
            .collect(),
    });
    if stage >= Stage::Complete {
        let cp = completion.poset();
        report.completion = Some(CompletionSection {
            size: completion.len(),
            bottom: completion
                .bottom()
                .and_then(|i| completion.index_of(i.members()))
                .map(|k| completion.label(k)),
            covers: cp
                .covers()
                .into_iter()
                .map(|(x, y)| [completion.label(x), completion.label(y)])
                .collect(),
        });
    }
    if stage < Stage::Check {
        return report;
    }

    if let Err(e) = poset_oracles(&mut report, &poset, b, options) {
        report.defect("lubs_unique", e);
    }
    if let Err(e) = basis_oracles(&mut report, &basis, &completion) {
        report.defect("union_of_directed_ideals", e);
    }
    random_suite(&mut report, options);
    exhaustive_suite(&mut report, options);
    report
}

const BASIS_ORACLES: [&str; 5] = [
    "bot_singleton_is_bot_ideal",
    "completion_is_poset",
    "pr_idl_is_idl",
    "principality",
    "union_of_directed_ideals",
];

/// Subsets of `universe`: all of them when small, otherwise a seeded sample.
fn candidates(universe: Subset, seed: u64) -> (Vec<Subset>, String) {
    if universe.len() <= EXHAUSTIVE_SUBSETS_UP_TO {
        (universe.submasks().collect(), "exhaustive".to_string())
    } else {
        let mut r = rng(seed);
        let sample = (0..SAMPLE_SIZE).map(|_| random_subset(&mut r, universe)).collect();
        (sample, format!("sampled {SAMPLE_SIZE}"))
    }
}

fn poset_oracles(report: &mut RunReport, p: &Poset, b: Subset, options: &CheckOptions) -> Result<()> {
    let (subsets, scope) = candidates(p.carrier(), options.seed);
    let mut lubs = oracle::lubs_unique(p, p.carrier(), subsets.iter().copied())?;
    if b != p.carrier() {
        let (within, _) = candidates(b, options.seed);
        lubs.absorb(oracle::lubs_unique(p, b, within)?);
    }
    report.oracle("lubs_unique", scope, lubs);

    let (within_b, scope) = candidates(b, options.seed);
    report.oracle("dc_eqv", scope.clone(), oracle::dc_eqv(p, b, within_b.iter().copied())?);
    report.oracle("directed_inhabited", scope, oracle::directed_inhabited(p, within_b)?);
    Ok(())
}

fn basis_oracles(report: &mut RunReport, basis: &Basis<'_>, completion: &Completion) -> Result<()> {
    let cp = completion.poset();
    let mut poset_ok = Outcome {
        checked: 1,
        violations: Vec::new(),
    };
    let revalidated = validate_poset(
        cp.elements().to_vec(),
        cp.pairs().map(|(x, y)| (cp.element(x).clone(), cp.element(y).clone())),
    );
    if let Err(e) = revalidated {
        poset_ok.violations.push(format!("inclusion order is not a partial order: {e}"));
    }
    if completion.bottom() != Some(bottom_ideal(basis)) {
        poset_ok.violations.push("completion's least element is not the bottom ideal".to_string());
    }
    report.oracle("completion_is_poset", "inclusion order", poset_ok);
    report.oracle(
        "pr_idl_is_idl",
        "every basis element",
        oracle::principal_ideals_are_ideals(basis)?,
    );
    report.oracle(
        "bot_singleton_is_bot_ideal",
        "every ideal",
        oracle::bottom_singleton_is_bottom_ideal(basis, completion)?,
    );
    report.oracle(
        "principality",
        "every basis pair",
        oracle::principality(basis, completion)?,
    );
    if completion.len() <= UNION_CHECK_MAX_IDEALS {
        report.oracle(
            "union_of_directed_ideals",
            "exhaustive",
            oracle::union_of_directed_ideals(
                basis,
                completion,
                completion.poset().carrier().submasks(),
            )?,
        );
    } else {
        report.skip(
            "union_of_directed_ideals",
            format!("completion above {UNION_CHECK_MAX_IDEALS} ideals"),
        );
    }
    Ok(())
}

/// Seeded random posets: downward-closure agreement and lub uniqueness on
/// random subsets, plus the full battery whenever the poset is a basis.
fn random_suite(report: &mut RunReport, options: &CheckOptions) {
    let mut r = rng(options.seed);
    let mut total = Outcome::default();
    let mut run = || -> Result<()> {
        for _ in 0..RANDOM_INSTANCES {
            let n = rand::Rng::gen_range(&mut r, 1..=RANDOM_MAX_SIZE);
            let p = random_poset(&mut r, n);
            let b = random_subset(&mut r, p.carrier());
            let i = random_subset(&mut r, b);
            let s = random_subset(&mut r, p.carrier());
            total.absorb(oracle::dc_eqv(&p, b, [i])?);
            total.absorb(oracle::lubs_unique(&p, p.carrier(), [s])?);
            if let Ok(basis) = Basis::of_poset(&p) {
                let completion = build_completion(&basis)?;
                total.absorb(oracle::principal_ideals_are_ideals(&basis)?);
                total.absorb(oracle::bottom_singleton_is_bottom_ideal(&basis, &completion)?);
                total.absorb(oracle::principality(&basis, &completion)?);
            }
        }
        Ok(())
    };
    match run() {
        Ok(()) => report.oracle(
            "random_suite",
            format!("{RANDOM_INSTANCES} posets up to size {RANDOM_MAX_SIZE}"),
            total,
        ),
        Err(e) => report.defect("random_suite", e),
    }
}

fn exhaustive_suite(report: &mut RunReport, options: &CheckOptions) {
    let n_max = options.exhaustive_size.min(MAX_EXHAUSTIVE_SIZE);
    if n_max == 0 {
        return;
    }
    let mut total = Outcome::default();
    for n in 1..=n_max {
        for p in all_posets(n) {
            match oracle::sweep(&p) {
                Ok(sweep) => {
                    for (_, o) in sweep.outcomes() {
                        total.absorb(o.clone());
                    }
                }
                Err(e) => {
                    report.defect("exhaustive_suite", e);
                    return;
                }
            }
        }
    }
    report.oracle(
        "exhaustive_suite",
        format!("all labeled posets up to size {n_max}"),
        total,
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_spec;

    const BOOL: &str = "basis Bool\nelements bot tt ff\norder bot <= tt\norder bot <= ff\n";

    #[test]
    fn flat_booleans_pass() {
        let spec = parse_spec(BOOL).unwrap();
        let report = run_checks(&spec, &CheckOptions::default(), Stage::Check);
        assert!(report.passed(), "{}", report.summary());
        assert_eq!(report.ideals.as_ref().unwrap().count, 3);
        assert_eq!(report.seed, Some(0));
    }

    #[test]
    fn antichain_fails_on_empty_set() {
        let spec = parse_spec("basis A\nelements a b\n").unwrap();
        let report = run_checks(&spec, &CheckOptions::default(), Stage::Check);
        assert!(!report.passed());
        let failure = report.basis.as_ref().unwrap().failure.as_ref().unwrap();
        assert_eq!(failure.reason, "BoundedSubsetWithoutLub");
        assert!(failure.subset.is_empty());
        assert_eq!(report.oracles["principality"].status, Status::Skipped);
    }

    #[test]
    fn singleton_passes() {
        let spec = parse_spec("basis One\nelements x\n").unwrap();
        let report = run_checks(&spec, &CheckOptions::default(), Stage::Check);
        assert!(report.passed());
        assert_eq!(report.ideals.as_ref().unwrap().count, 1);
    }

    #[test]
    fn invalid_poset_is_reported() {
        let spec = parse_spec("basis C\nelements a b\norder a <= b\norder b <= a\n").unwrap();
        let report = run_checks(&spec, &CheckOptions::default(), Stage::Check);
        assert!(!report.passed());
        assert!(report.poset.error.as_ref().unwrap().contains("antisymmetric"));
        assert!(report.basis.is_none());
    }

    #[test]
    fn report_is_deterministic_with_sorted_keys() {
        let spec = parse_spec(BOOL).unwrap();
        let a = run_checks(&spec, &CheckOptions::default(), Stage::Check).to_json();
        let b = run_checks(&spec, &CheckOptions::default(), Stage::Check).to_json();
        assert_eq!(a, b);
        let value: serde_json::Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["basis", "completion", "ideals", "oracles", "poset", "seed", "spec", "witnesses"]
        );
    }

    #[test]
    fn exhaustive_suite_runs_when_asked() {
        let spec = parse_spec(BOOL).unwrap();
        let options = CheckOptions {
            exhaustive_size: 3,
            ..CheckOptions::default()
        };
        let report = run_checks(&spec, &options, Stage::Check);
        let entry = &report.oracles["exhaustive_suite"];
        assert_eq!(entry.status, Status::Pass);
        assert!(entry.checked > 0);
    }

    #[test]
    fn restricted_basis() {
        let spec = parse_spec(&format!("{BOOL}subset bot tt\n")).unwrap();
        let report = run_checks(&spec, &CheckOptions::default(), Stage::Complete);
        assert_eq!(report.basis.as_ref().unwrap().members, ["bot", "tt"]);
        assert_eq!(report.completion.as_ref().unwrap().size, 2);
    }
}
