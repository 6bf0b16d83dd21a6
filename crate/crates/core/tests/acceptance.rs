//! Acceptance run over the default corpus. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;

use artin_core::artin::{cyclic_witness, decompose_rational, prime_power_closed_form, verify_decomposition};
use artin_core::characters::induced_trivial;
use artin_core::corpus::{default_corpus, run_corpus, CorpusReport, RunOptions, Status};
use artin_core::cyclotomic::rat;
use artin_core::permgroup::{named_group, DEFAULT_MAX_ORDER};
use artin_core::{CharacterTable, ClassFunction, CycloNumber, FiniteGroup, Rational, SubgroupHandle};

type Verdict = Result<String, String>;

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(named_group(name, DEFAULT_MAX_ORDER).unwrap())
}

/// Passes when the named suite passed for every group it ran on, and it ran
/// on every group selected by `applies`.
fn suite(report: &CorpusReport, name: &str, applies: impl Fn(usize, bool) -> bool) -> Verdict {
    let mut runs = 0;
    let mut checks = 0;
    for g in &report.groups {
        if g.status == Status::Input || g.status == Status::Resource {
            return Err(format!("{}: {}", g.name, g.error.clone().unwrap_or_default()));
        }
        let order = g.order.unwrap_or(0);
        let cyclic = g.classes == Some(order) && is_cyclic_name(&g.name);
        match g.suites.iter().find(|s| s.suite == name) {
            Some(s) if !s.passed => return Err(format!("{}: {}", g.name, s.failure.clone().unwrap_or_default())),
            Some(s) => {
                runs += 1;
                checks += s.checks;
            }
            None if applies(order, cyclic) => return Err(format!("{}: suite {name} did not run", g.name)),
            None => {}
        }
    }
    Ok(format!("{runs} groups, {checks} identities"))
}

fn is_cyclic_name(name: &str) -> bool {
    name.strip_prefix('C').is_some_and(|n| n.chars().all(|c| c.is_ascii_digit()))
}

fn criterion_5() -> Verdict {
    let mut checked = 0;
    for (p, r) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let n = p.pow(r);
        let g = group(&format!("C{n}"));
        let a = (0..g.order()).find(|&x| g.element(x).order() == n).unwrap();
        let powers: Vec<usize> = (0..n as i64).map(|t| g.pow(a, t)).collect();
        // independent closed form: (n·[x = 1] − (n/p)·[x ∈ ⟨a^(p^(r-1))⟩]) / (p^(r-1)(p-1))
        let mut closed = vec![Rational::from_integer(0.into()); g.num_classes()];
        for (t, &x) in powers.iter().enumerate() {
            let mut v = Rational::from_integer(0.into());
            if t == 0 {
                v += Rational::from_integer((n as i64).into());
            }
            if t as u64 % p.pow(r - 1) == 0 {
                v -= Rational::from_integer(((n / p) as i64).into());
            }
            closed[g.class_of(x)] = v / Rational::from_integer(((p.pow(r - 1) * (p - 1)) as i64).into());
        }
        let closed = ClassFunction::from_rationals(&g, &closed).unwrap();
        let library = prime_power_closed_form(&g, p, r).map_err(|e| e.to_string())?;
        if library != closed {
            return Err(format!("C{n}: library closed form differs from the direct formula"));
        }
        for k in (1..n).filter(|k| k % p != 0) {
            let mut values = vec![CycloNumber::zero(); g.num_classes()];
            for (t, &x) in powers.iter().enumerate() {
                values[g.class_of(x)] = CycloNumber::root_of_unity(n, (k * t as u64) as i64);
            }
            let phi_k = ClassFunction::new(&g, values).unwrap();
            if phi_k.galois_average() != closed {
                return Err(format!("C{n}, k = {k}: Galois average differs from the closed form"));
            }
            let w = cyclic_witness(&phi_k.galois_average()).map_err(|e| e.to_string())?;
            if w.reconstruct() != closed || !verify_decomposition(&w) {
                return Err(format!("C{n}, k = {k}: witness does not reproduce the closed form"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} characters φ_k"))
}

/// Looks up the class containing a permutation given by cycles.
fn class_of(g: &FiniteGroup, cycles: &[Vec<u32>]) -> usize {
    let p = artin_core::Permutation::from_cycles(g.degree(), cycles).unwrap();
    g.class_of(g.index_of(&p).unwrap())
}

fn by_class(g: &Arc<FiniteGroup>, pairs: &[(&[Vec<u32>], i64)]) -> ClassFunction {
    let mut v = vec![0i64; g.num_classes()];
    for (cycles, x) in pairs {
        v[class_of(g, cycles)] = *x;
    }
    ClassFunction::from_integers(g, &v).unwrap()
}

fn criterion_8() -> Verdict {
    // S3: standard (2, 0, −1) on (e, transpositions, 3-cycles); Ind_{C2} 1 = (3, 1, 0)
    let s3 = group("S3");
    let e: &[Vec<u32>] = &[];
    let tr: &[Vec<u32>] = &[vec![0, 1]];
    let cy: &[Vec<u32>] = &[vec![0, 1, 2]];
    let standard = by_class(&s3, &[(e, 2), (tr, 0), (cy, -1)]);
    let c2 = SubgroupHandle::generated_by(&s3, &[artin_core::Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()]).unwrap();
    let golden = &induced_trivial(&c2) - &induced_trivial(&SubgroupHandle::whole(&s3));
    let table = CharacterTable::compute(&s3).unwrap();
    if golden != standard || !table.irreducibles().contains(&standard) {
        return Err("S3 golden combination is not the standard character".into());
    }
    let d = decompose_rational(&standard).map_err(|e| e.to_string())?;
    if d.reconstruct() != golden {
        return Err("S3 standard: reconstruction differs".into());
    }

    // Q8: 2-dim (2, −2, 0, 0, 0); ½ Ind_1 − ½ Ind_{⟨−1⟩}
    let q8 = group("Q8");
    let minus_one = (0..q8.order())
        .find(|&x| q8.element(x).order() == 2)
        .unwrap();
    let centre = SubgroupHandle::generated_by(&q8, &[q8.element(minus_one).clone()]).unwrap();
    let golden = &induced_trivial(&SubgroupHandle::trivial(&q8)).scale(&rat(1, 2))
        - &induced_trivial(&centre).scale(&rat(1, 2));
    let mut v = vec![0i64; q8.num_classes()];
    v[0] = 2;
    v[q8.class_of(minus_one)] = -2;
    let two_dim = ClassFunction::from_integers(&q8, &v).unwrap();
    if golden != two_dim || !CharacterTable::compute(&q8).unwrap().irreducibles().contains(&two_dim) {
        return Err("Q8 golden combination is not the 2-dimensional character".into());
    }
    if decompose_rational(&two_dim).map_err(|e| e.to_string())?.reconstruct() != golden {
        return Err("Q8 2-dim: reconstruction differs".into());
    }

    // C3: average of φ1 = (1, −½, −½) = ½(Ind_1 − Ind_C3)
    let c3 = group("C3");
    let golden = (&induced_trivial(&SubgroupHandle::trivial(&c3)) - &induced_trivial(&SubgroupHandle::whole(&c3)))
        .scale(&rat(1, 2));
    let mut v = vec![rat(-1, 2); 3];
    v[0] = rat(1, 1);
    let avg = ClassFunction::from_rationals(&c3, &v).unwrap();
    let phi1 = CharacterTable::compute(&c3)
        .unwrap()
        .irreducibles()
        .iter()
        .find(|c| !c.is_rational())
        .unwrap()
        .galois_average();
    if golden != avg || phi1 != avg {
        return Err("C3 golden combination is not the Galois average of φ1".into());
    }
    if decompose_rational(&avg).map_err(|e| e.to_string())?.reconstruct() != golden
        || cyclic_witness(&avg).map_err(|e| e.to_string())?.reconstruct() != golden
    {
        return Err("C3 average: reconstruction differs".into());
    }
    Ok("S3, Q8, C3".into())
}

fn main() -> ExitCode {
    let manifest = default_corpus();
    let options = RunOptions { max_order: DEFAULT_MAX_ORDER, jobs: 0 };
    let first = run_corpus(&manifest, options).expect("corpus run");
    let second = run_corpus(&manifest, options).expect("corpus run");
    let first_json = serde_json::to_string(&first).unwrap();
    let second_json = serde_json::to_string(&second).unwrap();

    let mutations_ok = |r: &CorpusReport| -> Verdict {
        let certify = suite(r, "certify", |_, _| true)?;
        let mutations = suite(r, "mutations", |_, _| true)?;
        let short = r.groups.iter().find(|g| {
            g.suites.iter().any(|s| s.suite == "mutations" && s.checks < 20)
        });
        match short {
            Some(g) => Err(format!("{}: fewer than 20 mutations", g.name)),
            None => Ok(format!("certify {certify}; mutations {mutations}")),
        }
    };

    let criteria: Vec<(&str, Verdict)> = vec![
        ("character-table axioms", suite(&first, "tables", |_, _| true).and_then(|s| {
            suite(&first, "shape", |_, _| true).map(|_| s)
        })),
        ("power-map consistency", suite(&first, "power_maps", |_, _| true)),
        ("Frobenius reciprocity and transitivity (|G| <= 60)", suite(&first, "induction", |o, _| o <= 60)),
        ("decomposition sweep and span rank", suite(&first, "artin", |_, _| true)),
        ("prime-power closed form", criterion_5()),
        ("witness/solver agreement on cyclic groups", suite(&first, "witness", |_, cyclic| cyclic)),
        ("certification sweep and mutation test", mutations_ok(&first)),
        ("golden reconstructions", criterion_8()),
        (
            "determinism",
            if first_json == second_json {
                Ok(format!("{} bytes identical", first_json.len()))
            } else {
                Err("two corpus runs differ".into())
            },
        ),
    ];

    let mut failed = 0;
    for (i, (name, verdict)) in criteria.iter().enumerate() {
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
