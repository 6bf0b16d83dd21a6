//! Plain-text renderings for `--pretty`.

use artin_core::artin::ArtinDecomposition;
use artin_core::certify::KernelReport;
use artin_core::corpus::{CorpusReport, Status};
use artin_core::{CharacterTable, TheoremCertificate};

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn table(t: &CharacterTable) -> String {
    let g = t.group();
    let mut rows = vec![
        std::iter::once("class".to_string())
            .chain(g.classes().iter().map(|c| c.representative.to_string()))
            .collect::<Vec<_>>(),
        std::iter::once("size".to_string())
            .chain(g.classes().iter().map(|c| c.size.to_string()))
            .collect(),
        std::iter::once("order".to_string())
            .chain(g.classes().iter().map(|c| c.element_order.to_string()))
            .collect(),
    ];
    for (i, chi) in t.irreducibles().iter().enumerate() {
        rows.push(
            std::iter::once(format!("X.{i}"))
                .chain(chi.values().iter().map(ToString::to_string))
                .collect(),
        );
    }
    format!("order {}, exponent {}, prime {}\n{}", g.order(), g.exponent(), t.prime(), aligned(&rows))
}

pub fn decomposition(d: &ArtinDecomposition, verified: bool) -> String {
    let mut out = format!("target {}\n", d.target().describe());
    let mut rows = vec![vec!["coefficient".to_string(), "|H|".to_string(), "generators".to_string()]];
    for t in d.terms() {
        let gens: Vec<String> = t.subgroup.generators().iter().map(ToString::to_string).collect();
        let gens = if gens.is_empty() { "()".to_string() } else { gens.join(", ") };
        rows.push(vec![t.coefficient.to_string(), t.subgroup.order().to_string(), gens]);
    }
    out.push_str(&aligned(&rows));
    out.push_str(if verified { "verified\n" } else { "NOT verified\n" });
    out
}

pub fn certificate(c: &TheoremCertificate, valid: bool, report: Option<&KernelReport>) -> String {
    let mut out = format!(
        "input {}\norbit of size {} (k = {})\norbit sum {}\n",
        c.input_character.describe(),
        c.orbit.len(),
        c.orbit.iter().map(|(k, _)| k.to_string()).collect::<Vec<_>>().join(", "),
        c.orbit_sum.describe()
    );
    out.push_str(&decomposition(&c.decomposition, c.verified));
    out.push_str(if valid { "certificate checks\n" } else { "certificate does NOT check\n" });
    if let Some(r) = report {
        out.push_str(&format!("for every {}: {}\n", r.for_every, r.conclusion));
        if let Some(s) = &r.input_conclusion {
            out.push_str(&format!("and {s}\n"));
        }
    }
    out
}

pub fn corpus(r: &CorpusReport) -> String {
    let mut rows = vec![vec!["group".to_string(), "order".into(), "status".into(), "checks".into(), "note".into()]];
    for g in &r.groups {
        let status = match g.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Input => "input error",
            Status::Resource => "bound",
        };
        let checks: usize = g.suites.iter().map(|s| s.checks).sum();
        let note = g
            .error
            .clone()
            .or_else(|| g.suites.iter().find_map(|s| s.failure.as_ref().map(|f| format!("{}: {f}", s.suite))))
            .unwrap_or_default();
        rows.push(vec![
            g.name.clone(),
            g.order.map(|o| o.to_string()).unwrap_or_else(|| "-".into()),
            status.into(),
            checks.to_string(),
            note,
        ]);
    }
    let mut out = aligned(&rows);
    out.push_str(&format!(
        "{} passed, {} failed, {} input errors, {} over bound\n",
        r.passed, r.failed, r.input_errors, r.resource_errors
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_line_up() {
        let rows = vec![vec!["a".to_string(), "bbb".into()], vec!["cc".into(), "d".into()]];
        assert_eq!(aligned(&rows), " a  bbb\ncc    d\n");
    }
}
