//! Certificates that a Galois-orbit sum lies in the span of the
//! permutation characters `Ind_H^G 𝟙`, and therefore in the kernel of any
//! linear functional `δ` on `R(G)` that vanishes on all of them.
//!
//! `δ` itself is never evaluated. A certificate carries every number a
//! checker needs (group generators, class representatives, the orbit, the
//! sum, the decomposition) and [`check_certificate`] re-derives all of it.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artin::{decompose_rational, verify_decomposition, ArtinDecomposition, ArtinTerm, DecompositionJson};
use crate::characters::{same_group, CharacterTable, ClassFunction};
use crate::cyclotomic::{euler_phi, parse_rational, units_mod, CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::permgroup::{FiniteGroup, GroupJson, Permutation, SubgroupHandle};

pub const SCHEMA: &str = "artin-cert/1";

#[derive(Clone, Debug)]
pub struct TheoremCertificate {
    pub group: Arc<FiniteGroup>,
    pub input_character: ClassFunction,
    /// `(k, σ_k(χ))` for `k` in `(Z/e)^×`, increasing.
    pub orbit: Vec<(u64, ClassFunction)>,
    pub orbit_sum: ClassFunction,
    pub rationality_witness: bool,
    pub decomposition: ArtinDecomposition,
    pub verified: bool,
}

/// Certifies `Σ_k σ_k(χ)`, computing the character table to confirm that
/// `χ` is a virtual character (rational combination of irreducibles).
pub fn certify_galois_orbit_sum(chi: &ClassFunction) -> Result<TheoremCertificate> {
    let table = Arc::new(CharacterTable::compute(chi.group())?);
    certify_with_table(&table, chi)
}

pub fn certify_with_table(table: &Arc<CharacterTable>, chi: &ClassFunction) -> Result<TheoremCertificate> {
    table.decompose(chi)?;
    let g = Arc::clone(chi.group());
    let orbit = units_mod(g.exponent())
        .into_iter()
        .map(|k| Ok((k, chi.galois_act(k as i64)?)))
        .collect::<Result<Vec<_>>>()?;
    let orbit_sum = orbit
        .iter()
        .fold(ClassFunction::zero(&g), |acc, (_, f)| &acc + f);
    if !orbit_sum.is_rational() {
        return Err(Error::Defect("Galois-orbit sum has an irrational value".into()));
    }
    let decomposition = decompose_rational(&orbit_sum)
        .map_err(|e| Error::Defect(format!("orbit sum does not decompose over permutation characters: {e}")))?;
    let verified = verify_decomposition(&decomposition);
    if !verified {
        return Err(Error::Defect("decomposition of the orbit sum failed verification".into()));
    }
    Ok(TheoremCertificate {
        group: g,
        input_character: chi.clone(),
        orbit,
        orbit_sum,
        rationality_witness: true,
        decomposition,
        verified,
    })
}

/// One certificate per irreducible, computed in parallel; results keep row
/// order.
pub fn certify_all_irreducibles(table: &Arc<CharacterTable>) -> Vec<Result<TheoremCertificate>> {
    table
        .irreducibles()
        .par_iter()
        .map(|chi| certify_with_table(table, chi))
        .collect()
}

/// Re-derives the orbit with `σ_k` on values, re-adds it, re-checks
/// rationality and recomputes every permutation character from its
/// generators. Cached flags count only if the recomputation agrees.
pub fn check_certificate(c: &TheoremCertificate) -> bool {
    let g = &c.group;
    let parts = [&c.input_character, &c.orbit_sum, c.decomposition.target()];
    if parts.iter().any(|f| !same_group(f.group(), g)) || !same_group(c.decomposition.group(), g) {
        return false;
    }
    let units = units_mod(g.exponent());
    if c.orbit.len() != units.len() || c.orbit.iter().zip(&units).any(|((k, _), u)| k != u) {
        return false;
    }
    let mut sum = vec![CycloNumber::zero(); g.num_classes()];
    for (k, claimed) in &c.orbit {
        if !same_group(claimed.group(), g) {
            return false;
        }
        for (i, v) in c.input_character.values().iter().enumerate() {
            let Ok(image) = v.galois_conjugate(*k as i64) else {
                return false;
            };
            if image != *claimed.value(i) {
                return false;
            }
            sum[i] += &image;
        }
    }
    if sum.iter().zip(c.orbit_sum.values()).any(|(a, b)| a != b) {
        return false;
    }
    let rational = sum.iter().all(CycloNumber::is_rational);
    if !rational || !c.rationality_witness {
        return false;
    }
    if *c.decomposition.target() != c.orbit_sum {
        return false;
    }
    c.verified && verify_decomposition(&c.decomposition)
}

/// What a verified certificate proves about an arbitrary `δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelReport {
    /// The hypothesis on `δ`.
    pub for_every: String,
    pub conclusion: String,
    pub orbit_sum: Vec<CycloNumber>,
    pub orbit_size: usize,
    /// Subgroups whose permutation characters carry the decomposition.
    pub subgroups_used: usize,
    pub input_rational: bool,
    /// `δ(χ) = 0`, present only when `χ` is rational.
    pub input_conclusion: Option<String>,
    /// `1/φ(e)`, with `χ = orbitSum · 1/φ(e)` when `χ` is rational.
    pub input_scalar: Option<String>,
    /// Summing over `Gal(K/Q)` for a larger value field `K` repeats each
    /// `σ_k` exactly `[K : Q(ζ_e)]` times, so the conclusion is unchanged.
    pub field_note: String,
}

pub fn kernel_conclusion(c: &TheoremCertificate) -> Result<KernelReport> {
    if !check_certificate(c) {
        return Err(Error::InvalidInput("certificate does not verify".into()));
    }
    let e = c.group.exponent();
    let input_rational = c.input_character.is_rational();
    let scalar = Rational::new(1.into(), euler_phi(e).into());
    debug_assert!(!input_rational || c.orbit_sum.scale(&scalar) == c.input_character);
    Ok(KernelReport {
        for_every: "Q-linear map δ on R(G) with δ(Ind_H^G 1) = 0 for every subgroup H".into(),
        conclusion: "δ(orbitSum) = 0".into(),
        orbit_sum: c.orbit_sum.values().to_vec(),
        orbit_size: c.orbit.len(),
        subgroups_used: c.decomposition.terms().len(),
        input_rational,
        input_conclusion: input_rational.then(|| format!("δ(χ) = {scalar} · δ(orbitSum) = 0")),
        input_scalar: input_rational.then(|| scalar.to_string()),
        field_note: format!("Galois sums over Gal(K/Q) for K ⊇ Q(ζ_{e}) equal [K : Q(ζ_{e})] · orbitSum"),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitEntryJson {
    pub k: u64,
    pub values: Vec<CycloNumber>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateJson {
    pub schema: String,
    pub group: GroupJson,
    pub input_character: Vec<CycloNumber>,
    pub orbit: Vec<OrbitEntryJson>,
    pub orbit_sum: Vec<CycloNumber>,
    pub rationality_witness: bool,
    pub decomposition: DecompositionJson,
    pub verified: bool,
}

impl TheoremCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            schema: SCHEMA.into(),
            group: GroupJson::from_group(&self.group),
            input_character: self.input_character.values().to_vec(),
            orbit: self
                .orbit
                .iter()
                .map(|(k, f)| OrbitEntryJson { k: *k, values: f.values().to_vec() })
                .collect(),
            orbit_sum: self.orbit_sum.values().to_vec(),
            rationality_witness: self.rationality_witness,
            decomposition: self.decomposition.to_json(),
            verified: self.verified,
        }
    }

    /// Rebuilds a certificate from its JSON form. Only structural problems
    /// (unknown schema, wrong vector lengths, bad generators) are errors;
    /// wrong numbers are left for [`check_certificate`] to reject.
    pub fn from_json(json: &CertificateJson, max_order: usize) -> Result<Self> {
        if json.schema != SCHEMA {
            return Err(Error::Parse(format!("unknown certificate schema {:?}", json.schema)));
        }
        let g = Arc::new(json.group.build(max_order)?);
        if json.decomposition.group != json.group {
            return Err(Error::InvalidInput("decomposition refers to a different group".into()));
        }
        let function = |values: &[CycloNumber]| ClassFunction::new(&g, values.to_vec());
        let orbit = json
            .orbit
            .iter()
            .map(|entry| Ok((entry.k, function(&entry.values)?)))
            .collect::<Result<Vec<_>>>()?;
        let orbit_sum = function(&json.orbit_sum)?;
        let terms = json
            .decomposition
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let gens = t
                    .subgroup_generators
                    .iter()
                    .map(|cycles| Permutation::from_cycles(g.degree(), cycles))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::Parse(format!("term {i}: {e}")))?;
                let subgroup = SubgroupHandle::generated_by(&g, &gens)?;
                if subgroup.order() != t.subgroup_order {
                    return Err(Error::InvalidInput(format!(
                        "term {i}: generators give order {}, recorded {}",
                        subgroup.order(),
                        t.subgroup_order
                    )));
                }
                Ok(ArtinTerm { subgroup, coefficient: parse_rational(&t.coefficient)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let decomposition = ArtinDecomposition::new(function(&json.decomposition.target)?, terms);
        Ok(TheoremCertificate {
            group: Arc::clone(&g),
            input_character: function(&json.input_character)?,
            orbit,
            orbit_sum,
            rationality_witness: json.rationality_witness,
            decomposition,
            verified: json.verified,
        })
    }
}

/// Total of the coefficients times subgroup index; equals the degree of
/// the orbit sum. Handy as a cheap sanity figure in reports.
pub fn weighted_index_sum(d: &ArtinDecomposition) -> Rational {
    d.terms()
        .iter()
        .map(|t| &t.coefficient * Rational::from_integer(t.subgroup.index().into()))
        .fold(Rational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rat;
    use crate::permgroup::{named_group, DEFAULT_MAX_ORDER};

    fn table(name: &str) -> Arc<CharacterTable> {
        let g = Arc::new(named_group(name, DEFAULT_MAX_ORDER).unwrap());
        Arc::new(CharacterTable::compute(&g).unwrap())
    }

    fn irrational_row(t: &CharacterTable) -> ClassFunction {
        t.irreducibles().iter().find(|c| !c.is_rational()).unwrap().clone()
    }

    #[test]
    fn trivial_character() {
        let t = table("S4");
        let one = t.irreducible(0).clone();
        let c = certify_with_table(&t, &one).unwrap();
        assert_eq!(c.orbit.len(), 4); // e = 12
        assert_eq!(c.orbit_sum, one.scale(&rat(4, 1)));
        assert!(check_certificate(&c));
        assert_eq!(weighted_index_sum(&c.decomposition), rat(4, 1));
        let report = kernel_conclusion(&c).unwrap();
        assert!(report.input_rational);
        assert_eq!(report.input_scalar.as_deref(), Some("1/4"));
    }

    #[test]
    fn c3_orbit_sum() {
        let t = table("C3");
        let phi = irrational_row(&t);
        let c = certify_with_table(&t, &phi).unwrap();
        // (2, -1, -1) = Ind_1 − Ind_C3
        let mut values: Vec<Rational> = c.orbit_sum.to_rationals().unwrap();
        values.sort();
        assert_eq!(values, vec![rat(-1, 1), rat(-1, 1), rat(2, 1)]);
        let summary: Vec<(usize, Rational)> = c
            .decomposition
            .terms()
            .iter()
            .map(|t| (t.subgroup.order(), t.coefficient.clone()))
            .collect();
        assert_eq!(summary, vec![(3, rat(-1, 1)), (1, rat(1, 1))]);
        assert!(check_certificate(&c));
    }

    #[test]
    fn c5_reports_only_the_sum() {
        let t = table("C5");
        let phi = irrational_row(&t);
        let c = certify_with_table(&t, &phi).unwrap();
        assert_eq!(c.orbit.len(), 4);
        let report = kernel_conclusion(&c).unwrap();
        assert!(!report.input_rational);
        assert!(report.input_conclusion.is_none());
        // φ1 + φ2 + φ3 + φ4 = (4, -1, -1, -1, -1)
        let irr_sum = t.irreducibles()[1..].iter().fold(ClassFunction::zero(t.group()), |a, b| &a + b);
        assert_eq!(c.orbit_sum, irr_sum);
    }

    #[test]
    fn s3_standard_doubles() {
        let t = table("S3");
        let std = t.irreducible(2).clone();
        let c = certify_with_table(&t, &std).unwrap();
        assert_eq!(c.orbit_sum, std.scale(&rat(2, 1)));
        assert!(check_certificate(&c));
    }

    #[test]
    fn tampering_is_detected() {
        let t = table("D5");
        let c = certify_with_table(&t, &irrational_row(&t)).unwrap();
        assert!(check_certificate(&c));

        let mut bad = c.clone();
        bad.decomposition.terms_mut()[0].coefficient += rat(1, 3);
        assert!(!check_certificate(&bad));

        let mut short = c.clone();
        short.orbit.pop();
        assert!(!check_certificate(&short));

        let mut flag = c.clone();
        flag.verified = false;
        assert!(!check_certificate(&flag));
        assert!(kernel_conclusion(&flag).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = table("Q8");
        let c = certify_with_table(&t, t.irreducible(4)).unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        let parsed: CertificateJson = serde_json::from_str(&text).unwrap();
        let back = TheoremCertificate::from_json(&parsed, DEFAULT_MAX_ORDER).unwrap();
        assert!(check_certificate(&back));
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);

        let mut tampered = parsed.clone();
        tampered.decomposition.terms[0].coefficient = "7/2".into();
        let back = TheoremCertificate::from_json(&tampered, DEFAULT_MAX_ORDER).unwrap();
        assert!(!check_certificate(&back));
    }

    #[test]
    fn parallel_sweep() {
        let t = table("A5");
        for c in certify_all_irreducibles(&t) {
            assert!(check_certificate(&c.unwrap()));
        }
    }

    #[test]
    fn rejects_non_virtual_input() {
        let t = table("C3");
        let g = t.group();
        let half_root = ClassFunction::new(
            g,
            vec![CycloNumber::one(), CycloNumber::root_of_unity(12, 1), CycloNumber::zero()],
        )
        .unwrap();
        assert!(certify_with_table(&t, &half_root).is_err());
    }
}
