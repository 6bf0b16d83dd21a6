//! Batch runner: checks the table, induction, Artin and certificate
//! properties over a list of groups and produces a deterministic report.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artin::{cyclic_witness, decompose_rational, prime_power_closed_form, span_rank, verify_decomposition, SubgroupFamily};
use crate::certify::{certify_all_irreducibles, check_certificate, TheoremCertificate};
use crate::characters::{induce, induced_trivial, CharacterTable, ClassFunction};
use crate::cyclotomic::{units_mod, CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::permgroup::{all_subgroups_up_to_conjugacy, FiniteGroup, GroupSpec, SubgroupHandle, DEFAULT_LATTICE_BOUND};

/// A group given either as a spec string (`"S4"`, `"(0 1),(0 1 2)"`) or a
/// GroupSpec object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Text(String),
    Spec(GroupSpec),
}

impl GroupInput {
    pub fn spec(&self) -> Result<GroupSpec> {
        match self {
            GroupInput::Text(s) => GroupSpec::parse(s),
            GroupInput::Spec(s) => Ok(s.clone()),
        }
    }
}

/// A manifest entry; a bare group (string or GroupSpec object) is accepted
/// as shorthand for an entry without expectations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "EntryForm")]
pub struct ManifestEntry {
    pub group: GroupInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
    /// Overrides the run-wide order bound for this entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryForm {
    Full {
        group: GroupInput,
        #[serde(default)]
        order: Option<usize>,
        #[serde(default)]
        classes: Option<usize>,
        #[serde(default)]
        max_order: Option<usize>,
    },
    Bare(GroupInput),
}

impl From<EntryForm> for ManifestEntry {
    fn from(f: EntryForm) -> Self {
        match f {
            EntryForm::Full { group, order, classes, max_order } => ManifestEntry { group, order, classes, max_order },
            EntryForm::Bare(group) => ManifestEntry { group, order: None, classes: None, max_order: None },
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suites {
    #[serde(default = "yes")]
    pub tables: bool,
    #[serde(default = "yes")]
    pub power_maps: bool,
    #[serde(default = "yes")]
    pub induction: bool,
    #[serde(default = "yes")]
    pub artin: bool,
    #[serde(default = "yes")]
    pub witness: bool,
    #[serde(default = "yes")]
    pub certify: bool,
}

impl Default for Suites {
    fn default() -> Self {
        Suites { tables: true, power_maps: true, induction: true, artin: true, witness: true, certify: true }
    }
}

fn default_mutations() -> usize {
    20
}

fn default_seed() -> u64 {
    0x5eed
}

fn default_induction_bound() -> usize {
    60
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub groups: Vec<ManifestEntry>,
    #[serde(default)]
    pub suites: Suites,
    #[serde(default = "default_mutations")]
    pub mutations: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Induction checks run only on groups of at most this order.
    #[serde(default = "default_induction_bound")]
    pub induction_max_order: usize,
}

impl CorpusManifest {
    pub fn new(groups: Vec<ManifestEntry>) -> Self {
        CorpusManifest {
            groups,
            suites: Suites::default(),
            mutations: default_mutations(),
            seed: default_seed(),
            induction_max_order: default_induction_bound(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("manifest: {e}")))
    }
}

fn entry(name: &str, order: usize, classes: usize) -> ManifestEntry {
    ManifestEntry { group: GroupInput::Text(name.into()), order: Some(order), classes: Some(classes), max_order: None }
}

/// Cyclic groups up to 24, dihedral groups up to 12, and a handful of
/// small non-abelian groups including the perfect group `A5`.
pub fn default_corpus() -> CorpusManifest {
    let mut groups: Vec<ManifestEntry> = (1..=24).map(|n| entry(&format!("C{n}"), n, n)).collect();
    groups.push(entry("C2xC4", 8, 8));
    groups.push(entry("C2xC2", 4, 4));
    for n in 3..=12 {
        let classes = if n % 2 == 1 { (n + 3) / 2 } else { n / 2 + 3 };
        groups.push(entry(&format!("D{n}"), 2 * n, classes));
    }
    groups.push(entry("S3", 6, 3));
    groups.push(entry("S4", 24, 5));
    groups.push(entry("A4", 12, 4));
    groups.push(entry("A5", 60, 5));
    groups.push(entry("Q8", 8, 5));
    groups.push(entry("S3xC2", 12, 6));
    CorpusManifest::new(groups)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    /// Number of individual identities checked.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Bad group input.
    Input,
    /// Order or lattice bound exceeded.
    Resource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub suites: Vec<SuiteResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub groups: Vec<GroupReport>,
    pub passed: usize,
    pub failed: usize,
    pub input_errors: usize,
    pub resource_errors: usize,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.input_errors == 0 && self.resource_errors == 0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub max_order: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

/// Runs every entry, isolating failures (including panics) per entry.
pub fn run_corpus(manifest: &CorpusManifest, options: RunOptions) -> Result<CorpusReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let mut groups: Vec<(String, usize, GroupReport)> = pool.install(|| {
        manifest
            .groups
            .par_iter()
            .enumerate()
            .map(|(i, e)| {
                let report = run_entry(manifest, e, options.max_order);
                (report.name.clone(), i, report)
            })
            .collect()
    });
    groups.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let groups: Vec<GroupReport> = groups.into_iter().map(|(_, _, r)| r).collect();
    let count = |s: Status| groups.iter().filter(|r| r.status == s).count();
    Ok(CorpusReport {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        input_errors: count(Status::Input),
        resource_errors: count(Status::Resource),
        groups,
    })
}

fn error_status(e: &Error) -> Status {
    match e {
        Error::OrderBound { .. } => Status::Resource,
        Error::InvalidInput(_) | Error::Parse(_) => Status::Input,
        _ => Status::Fail,
    }
}

pub fn run_entry(manifest: &CorpusManifest, e: &ManifestEntry, max_order: usize) -> GroupReport {
    let name = match &e.group {
        GroupInput::Text(s) => s.trim().to_string(),
        GroupInput::Spec(s) => s.label(),
    };
    let failed = |status, error: String| GroupReport {
        name: name.clone(),
        status,
        order: None,
        classes: None,
        error: Some(error),
        suites: Vec::new(),
    };
    let group = e.group.spec().and_then(|s| s.build(e.max_order.unwrap_or(max_order)));
    let g = match group {
        Ok(g) => Arc::new(g),
        Err(err) => return failed(error_status(&err), err.to_string()),
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| run_suites(manifest, e, &name, &g)));
    match outcome {
        Ok(Ok(suites)) => {
            let ok = suites.iter().all(|s| s.passed);
            GroupReport {
                name,
                status: if ok { Status::Pass } else { Status::Fail },
                order: Some(g.order()),
                classes: Some(g.num_classes()),
                error: None,
                suites,
            }
        }
        Ok(Err(err)) => {
            let mut r = failed(error_status(&err), err.to_string());
            r.order = Some(g.order());
            r.classes = Some(g.num_classes());
            r
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            failed(Status::Fail, format!("internal error: {msg}"))
        }
    }
}

/// Accumulates checks for one suite, keeping the first failure.
struct Tally {
    suite: &'static str,
    checks: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Tally { suite, checks: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            suite: self.suite.into(),
            passed: self.failure.is_none(),
            checks: self.checks,
            failure: self.failure,
        }
    }
}

fn run_suites(manifest: &CorpusManifest, e: &ManifestEntry, name: &str, g: &Arc<FiniteGroup>) -> Result<Vec<SuiteResult>> {
    let mut out = Vec::new();
    let mut shape = Tally::new("shape");
    if let Some(order) = e.order {
        shape.check(g.order() == order, || format!("order {} != expected {order}", g.order()));
    }
    if let Some(classes) = e.classes {
        shape.check(g.num_classes() == classes, || format!("{} classes != expected {classes}", g.num_classes()));
    }
    out.push(shape.finish());

    let table = Arc::new(CharacterTable::compute(g)?);
    let s = &manifest.suites;
    if s.tables {
        out.push(table_axioms(&table));
    }
    if s.power_maps {
        out.push(power_maps(&table));
    }
    if s.induction && g.order() <= manifest.induction_max_order {
        out.push(induction(&table)?);
    }
    if s.artin {
        out.push(artin_sweep(&table)?);
    }
    if s.witness && g.is_cyclic() {
        out.push(witness(&table)?);
    }
    if s.certify {
        let (sweep, certs) = certify_sweep(&table);
        out.push(sweep);
        out.push(mutations(&certs, manifest.mutations, manifest.seed ^ fnv1a(name)));
    }
    Ok(out)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Row and column orthogonality and `Σ d² = |G|`.
pub fn table_axioms(t: &CharacterTable) -> SuiteResult {
    let g = t.group();
    let mut tally = Tally::new("tables");
    let irr = t.irreducibles();
    tally.check(irr.len() == g.num_classes(), || format!("{} rows for {} classes", irr.len(), g.num_classes()));
    for i in 0..irr.len() {
        for j in 0..irr.len() {
            let ip = irr[i].inner_product(&irr[j]).expect("same group");
            let want = if i == j { CycloNumber::one() } else { CycloNumber::zero() };
            tally.check(ip == want, || format!("<χ{i}, χ{j}> = {ip}"));
        }
    }
    for a in 0..g.num_classes() {
        for b in 0..g.num_classes() {
            let s: CycloNumber = irr.iter().map(|chi| chi.value(a) * &chi.value(b).conj()).sum();
            let want = if a == b {
                CycloNumber::from_integer(g.centralizer_order(a) as i64)
            } else {
                CycloNumber::zero()
            };
            tally.check(s == want, || format!("column sum over classes {a}, {b} = {s}"));
        }
    }
    let total: u64 = t.degrees().iter().map(|d| d * d).sum();
    tally.check(total == g.order() as u64, || format!("Σ d² = {total}"));
    tally.finish()
}

/// `χ(g^k) = σ_k(χ(g))` for every irreducible, class and unit `k`.
pub fn power_maps(t: &CharacterTable) -> SuiteResult {
    let g = t.group();
    let mut tally = Tally::new("power_maps");
    for k in units_mod(g.exponent()) {
        let map = g.power_class_map(k as i64);
        for (i, chi) in t.irreducibles().iter().enumerate() {
            for (c, &target) in map.iter().enumerate() {
                let sigma = chi.value(c).galois_conjugate(k as i64).expect("unit");
                tally.check(*chi.value(target) == sigma, || format!("χ{i} at class {c}, k = {k}"));
            }
        }
    }
    tally.finish()
}

/// Embeds a subgroup of `h` (given as a handle on `h.as_group()`) into the
/// parent of `h`.
fn lift(h: &SubgroupHandle, j: &SubgroupHandle) -> Result<SubgroupHandle> {
    let elems: Vec<usize> = j.elements().iter().map(|&x| h.to_parent(x)).collect();
    SubgroupHandle::from_elements(h.parent(), &elems)
}

/// Frobenius reciprocity and transitivity of induction on every chain
/// `J ≤ H ≤ G` of subgroup representatives.
pub fn induction(t: &CharacterTable) -> Result<SuiteResult> {
    let g = t.group();
    let mut tally = Tally::new("induction");
    for h in all_subgroups_up_to_conjugacy(g, DEFAULT_LATTICE_BOUND)? {
        let th = CharacterTable::compute(h.as_group())?;
        for (a, psi) in th.irreducibles().iter().enumerate() {
            let up = induce(&h, psi)?;
            for (b, chi) in t.irreducibles().iter().enumerate() {
                let lhs = up.inner_product(chi)?;
                let rhs = psi.inner_product(&chi.restrict(&h)?)?;
                tally.check(lhs == rhs, || format!("reciprocity fails on H of order {}, ψ{a}, χ{b}", h.order()));
            }
        }
        for j in all_subgroups_up_to_conjugacy(h.as_group(), DEFAULT_LATTICE_BOUND)? {
            let j_in_g = lift(&h, &j)?;
            let tj = CharacterTable::compute(j.as_group())?;
            for (a, theta) in tj.irreducibles().iter().enumerate() {
                let two_steps = induce(&h, &induce(&j, theta)?)?;
                let one_step = induce(&j_in_g, theta)?;
                tally.check(two_steps == one_step, || {
                    format!("transitivity fails for |J| = {}, |H| = {}, θ{a}", j.order(), h.order())
                });
            }
        }
    }
    Ok(tally.finish())
}

/// Orbit sums of all irreducibles and all permutation characters decompose
/// over cyclic subgroups; the span has full rank; denominators divide `|G|`.
pub fn artin_sweep(t: &CharacterTable) -> Result<SuiteResult> {
    let g = t.group();
    let mut tally = Tally::new("artin");
    let mut targets: Vec<(String, ClassFunction)> = t
        .irreducibles()
        .iter()
        .enumerate()
        .map(|(i, chi)| (format!("orbit sum of χ{i}"), chi.galois_orbit_sum()))
        .collect();
    for h in all_subgroups_up_to_conjugacy(g, DEFAULT_LATTICE_BOUND)? {
        targets.push((format!("Ind 1 from a subgroup of order {}", h.order()), induced_trivial(&h)));
    }
    let order = Rational::from_integer((g.order() as i64).into());
    for (what, chi) in &targets {
        match decompose_rational(chi) {
            Ok(d) => {
                tally.check(verify_decomposition(&d), || format!("{what}: decomposition does not verify"));
                let bad = d.terms().iter().find(|term| !(&order / term.coefficient.denom()).is_integer());
                tally.check(bad.is_none(), || format!("{what}: denominator does not divide |G|"));
            }
            Err(err) => tally.check(false, || format!("{what}: {err}")),
        }
    }
    let rank = span_rank(g, SubgroupFamily::Cyclic)?;
    let orbits = g.rational_class_orbits().len();
    tally.check(rank == orbits, || format!("span rank {rank}, {orbits} rational classes"));
    Ok(tally.finish())
}

fn prime_power(n: usize) -> Option<(u64, u32)> {
    let n = n as u64;
    let p = (2..=n).find(|p| n % p == 0)?;
    let mut m = n;
    let mut r = 0;
    while m % p == 0 {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

/// Cyclic groups: the structural witness and the solver reconstruct the
/// same function; for prime-power order the closed form matches the
/// Galois averages of the faithful characters.
pub fn witness(t: &CharacterTable) -> Result<SuiteResult> {
    let g = t.group();
    let mut tally = Tally::new("witness");
    let mut targets: Vec<ClassFunction> = t.irreducibles().iter().map(ClassFunction::galois_average).collect();
    targets.extend(crate::permgroup::cyclic_subgroups_up_to_conjugacy(g).iter().map(induced_trivial));
    for (i, chi) in targets.iter().enumerate() {
        let w = cyclic_witness(chi)?;
        let s = decompose_rational(chi)?;
        tally.check(w.reconstruct() == s.reconstruct(), || format!("target {i}: witness and solver disagree"));
        tally.check(verify_decomposition(&w), || format!("target {i}: witness does not verify"));
    }
    if let Some((p, r)) = prime_power(g.order()) {
        let closed = prime_power_closed_form(g, p, r)?;
        let n = g.order() as u64;
        for chi in t.irreducibles() {
            // a linear character is faithful when it takes the value 1 only at the identity
            if chi.values().iter().filter(|v| **v == CycloNumber::one()).count() == 1 {
                tally.check(chi.galois_average() == closed, || format!("closed form on C{n}"));
            }
        }
    }
    Ok(tally.finish())
}

/// Certifies every irreducible and re-checks each certificate.
pub fn certify_sweep(t: &Arc<CharacterTable>) -> (SuiteResult, Vec<TheoremCertificate>) {
    let mut tally = Tally::new("certify");
    let mut certs = Vec::new();
    for (i, c) in certify_all_irreducibles(t).into_iter().enumerate() {
        match c {
            Ok(c) => {
                tally.check(check_certificate(&c), || format!("certificate for χ{i} does not check"));
                certs.push(c);
            }
            Err(err) => tally.check(false, || format!("χ{i}: {err}")),
        }
    }
    (tally.finish(), certs)
}

/// Perturbs one coefficient of a random certificate by a random nonzero
/// rational and expects the checker to reject it, `count` times.
pub fn mutations(certs: &[TheoremCertificate], count: usize, seed: u64) -> SuiteResult {
    let mut tally = Tally::new("mutations");
    let mut rng = StdRng::seed_from_u64(seed);
    let candidates: Vec<&TheoremCertificate> = certs.iter().filter(|c| !c.decomposition.terms().is_empty()).collect();
    if candidates.is_empty() {
        tally.check(false, || "no certificate with terms to mutate".into());
        return tally.finish();
    }
    for _ in 0..count {
        let mut c = candidates[rng.gen_range(0..candidates.len())].clone();
        let terms = c.decomposition.terms_mut();
        let at = rng.gen_range(0..terms.len());
        let num = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=6i64);
        terms[at].coefficient += Rational::new(num.into(), den.into());
        tally.check(!check_certificate(&c), || format!("mutating term {at} by {num}/{den} went unnoticed"));
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::DEFAULT_MAX_ORDER;

    fn opts() -> RunOptions {
        RunOptions { max_order: DEFAULT_MAX_ORDER, jobs: 2 }
    }

    #[test]
    fn small_manifest_passes() {
        let m = CorpusManifest::parse(r#"{"groups": [{"group": "S3", "order": 6, "classes": 3}, {"group": "C4"}, {"group": {"degree": 3, "generators": [[[0, 1, 2]]]}}]}"#).unwrap();
        let r = run_corpus(&m, opts()).unwrap();
        assert!(r.all_passed(), "{r:#?}");
        let names: Vec<&str> = r.groups.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["(0 1 2)", "C4", "S3"]);
        let mutation = r.groups[2].suites.iter().find(|s| s.suite == "mutations").unwrap();
        assert_eq!(mutation.checks, 20);
    }

    #[test]
    fn wrong_expectation_fails() {
        let m = CorpusManifest::parse(r#"{"groups": [{"group": "S3", "order": 7}]}"#).unwrap();
        let r = run_corpus(&m, opts()).unwrap();
        assert_eq!(r.failed, 1);
    }

    #[test]
    fn bound_and_input_errors_are_isolated() {
        let m = CorpusManifest::parse(r#"{"groups": ["C2", "S4", "X9", "(0 0 1)"]}"#).unwrap();
        let r = run_corpus(&m, RunOptions { max_order: 3, jobs: 1 }).unwrap();
        let status: Vec<(&str, Status)> = r.groups.iter().map(|g| (g.name.as_str(), g.status)).collect();
        assert_eq!(
            status,
            vec![("(0 0 1)", Status::Input), ("C2", Status::Pass), ("S4", Status::Resource), ("X9", Status::Input)]
        );
    }

    #[test]
    fn empty_manifest() {
        let r = run_corpus(&CorpusManifest::parse(r#"{"groups": []}"#).unwrap(), opts()).unwrap();
        assert!(r.groups.is_empty() && r.all_passed());
    }

    #[test]
    fn default_corpus_shape() {
        let m = default_corpus();
        assert_eq!(m.groups.len(), 24 + 2 + 10 + 6);
        let back = CorpusManifest::parse(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
