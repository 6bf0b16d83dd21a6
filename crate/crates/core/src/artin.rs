//! Explicit Artin induction: rational virtual characters as rational
//! combinations of permutation characters `Ind_H^G 𝟙`.
//!
//! Two independent routes are provided. [`decompose_rational`] solves the
//! linear system over the cyclic subgroups (or all subgroups). For cyclic
//! groups, [`cyclic_witness`] instead builds the combination structurally:
//! split `C_n` into its primary parts, write each Galois orbit sum of linear
//! characters on `C_{p^r}` in closed form (pulling back from the quotient
//! `C_{p^(r-1)}` when `p` divides the character index), and multiply the
//! pieces back together.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{external_product, induced_trivial, inflate, same_group, ClassFunction};
use crate::cyclotomic::{euler_phi, CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::permgroup::{
    all_subgroups_up_to_conjugacy, cyclic_subgroups_up_to_conjugacy, named_group, DirectProduct, FiniteGroup,
    GroupHom, GroupJson, SubgroupHandle, DEFAULT_LATTICE_BOUND,
};

/// Which subgroups may appear in a decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubgroupFamily {
    #[default]
    Cyclic,
    /// Every subgroup up to conjugacy; the group order must not exceed the bound.
    All { bound: usize },
}

impl SubgroupFamily {
    pub fn all() -> Self {
        SubgroupFamily::All { bound: DEFAULT_LATTICE_BOUND }
    }

    pub fn subgroups(&self, g: &Arc<FiniteGroup>) -> Result<Vec<SubgroupHandle>> {
        match *self {
            SubgroupFamily::Cyclic => Ok(cyclic_subgroups_up_to_conjugacy(g)),
            SubgroupFamily::All { bound } => all_subgroups_up_to_conjugacy(g, bound),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ArtinTerm {
    pub subgroup: SubgroupHandle,
    pub coefficient: Rational,
}

/// `target = Σ coefficient · Ind_H^G 𝟙` over the listed terms.
#[derive(Clone, Debug)]
pub struct ArtinDecomposition {
    group: Arc<FiniteGroup>,
    terms: Vec<ArtinTerm>,
    target: ClassFunction,
}

impl ArtinDecomposition {
    pub fn new(target: ClassFunction, terms: Vec<ArtinTerm>) -> Self {
        ArtinDecomposition { group: Arc::clone(target.group()), terms, target }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn terms(&self) -> &[ArtinTerm] {
        &self.terms
    }

    pub fn terms_mut(&mut self) -> &mut Vec<ArtinTerm> {
        &mut self.terms
    }

    pub fn target(&self) -> &ClassFunction {
        &self.target
    }

    /// `Σ coefficient · Ind_H^G 𝟙`.
    pub fn reconstruct(&self) -> ClassFunction {
        self.terms.iter().fold(ClassFunction::zero(&self.group), |acc, t| {
            &acc + &induced_trivial(&t.subgroup).scale(&t.coefficient)
        })
    }

    /// Same combination, every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| ArtinTerm { subgroup: t.subgroup.clone(), coefficient: &t.coefficient * factor })
            .collect();
        ArtinDecomposition { group: Arc::clone(&self.group), terms, target: self.target.scale(factor) }
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            group: GroupJson::from_group(&self.group),
            target: self.target.values().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    subgroup_generators: t.subgroup.generators().iter().map(|p| p.cycles()).collect(),
                    subgroup_order: t.subgroup.order(),
                    coefficient: t.coefficient.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub subgroup_generators: Vec<Vec<Vec<u32>>>,
    pub subgroup_order: usize,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub group: GroupJson,
    pub target: Vec<CycloNumber>,
    pub terms: Vec<TermJson>,
}

/// Recomputes every `Ind_H^G 𝟙` from the subgroup generators by counting
/// fixed cosets, `#{xH : g·xH = xH}`, and compares with the target.
pub fn verify_decomposition(d: &ArtinDecomposition) -> bool {
    let g = &d.group;
    if !same_group(d.target.group(), g) {
        return false;
    }
    let mut acc = vec![Rational::zero(); g.num_classes()];
    for term in &d.terms {
        let Ok(h) = SubgroupHandle::generated_by(g, term.subgroup.generators()) else {
            return false;
        };
        let reps = g.coset_representatives(&h);
        for (k, class) in g.classes().iter().enumerate() {
            let x = &class.representative;
            let fixed = reps
                .iter()
                .filter(|r| {
                    let conj = r.inverse().compose(x).compose(r);
                    g.index_of(&conj).is_some_and(|i| h.contains(i))
                })
                .count();
            acc[k] += &term.coefficient * Rational::from_integer(fixed.into());
        }
    }
    acc.into_iter()
        .zip(d.target.values())
        .all(|(a, t)| CycloNumber::from_rational(a) == *t)
}

/// `χ` must be constant on the classes of `x` and `x^k` for `k` prime to
/// the exponent, which every rational virtual character is.
fn check_rational_input(chi: &ClassFunction) -> Result<()> {
    if let Some(k) = chi.first_irrational_class() {
        return Err(Error::NotRational(format!("value {} at class {k}", chi.value(k))));
    }
    Ok(())
}

fn is_galois_invariant(chi: &ClassFunction) -> bool {
    let g = chi.group();
    crate::cyclotomic::units_mod(g.exponent())
        .into_iter()
        .all(|k| chi.galois_act_by_power_map(k as i64).is_ok_and(|c| c == *chi))
}

fn ordered_columns(subgroups: Vec<SubgroupHandle>) -> Vec<SubgroupHandle> {
    let mut indexed: Vec<(usize, SubgroupHandle)> = subgroups.into_iter().enumerate().collect();
    indexed.sort_by_key(|(i, h)| (std::cmp::Reverse(h.order()), *i));
    indexed.into_iter().map(|(_, h)| h).collect()
}

fn permutation_character_matrix(g: &Arc<FiniteGroup>, columns: &[SubgroupHandle]) -> Vec<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = columns
        .iter()
        .map(|h| induced_trivial(h).to_rationals().expect("permutation characters are rational"))
        .collect();
    (0..g.num_classes()).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect()
}

pub fn decompose_rational(chi: &ClassFunction) -> Result<ArtinDecomposition> {
    decompose_rational_with(chi, SubgroupFamily::Cyclic)
}

/// Solves `Σ_H c_H Ind_H^G 𝟙 = χ` exactly. Columns are ordered by subgroup
/// order (largest first), then enumeration position; free variables are set
/// to zero and zero coefficients are dropped.
pub fn decompose_rational_with(chi: &ClassFunction, family: SubgroupFamily) -> Result<ArtinDecomposition> {
    check_rational_input(chi)?;
    let g = chi.group();
    if chi.is_zero() {
        return Ok(ArtinDecomposition::new(chi.clone(), Vec::new()));
    }
    let columns = ordered_columns(family.subgroups(g)?);
    let matrix = permutation_character_matrix(g, &columns);
    let rhs = chi.to_rationals()?;
    let Some(x) = linalg::solve(&matrix, &rhs) else {
        if !is_galois_invariant(chi) {
            return Err(Error::InvalidInput(
                "rational class function is not a virtual character (not constant on rational classes)".into(),
            ));
        }
        return Err(Error::Defect("no combination of permutation characters matches a rational virtual character".into()));
    };
    let terms = columns
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .map(|(subgroup, coefficient)| ArtinTerm { subgroup, coefficient })
        .collect();
    let d = ArtinDecomposition::new(chi.clone(), terms);
    if d.reconstruct() != *chi {
        return Err(Error::Defect("solver output does not reconstruct the target".into()));
    }
    Ok(d)
}

/// Rank of the permutation characters of the family; for the cyclic family
/// this equals `dim R_rat(G)`, the number of rational classes.
pub fn span_rank(g: &Arc<FiniteGroup>, family: SubgroupFamily) -> Result<usize> {
    let columns = family.subgroups(g)?;
    Ok(linalg::rank(&permutation_character_matrix(g, &columns)))
}

fn prime_power_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut r = 0;
            while n % p == 0 {
                n /= p;
                r += 1;
            }
            out.push((p, r));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Sum of the linear characters `b^t ↦ ζ_n^{kt}` with `gcd(k, n) = d`, on a
/// cyclic group with chosen generator `b` (element index `gen`). `d` must
/// divide `n`; `d = n` gives the trivial character.
pub fn cyclic_orbit_sum(g: &Arc<FiniteGroup>, gen: usize, d: u64) -> ClassFunction {
    let n = g.order() as u64;
    let ks: Vec<u64> = (0..n).filter(|&k| k.gcd(&n) == d).collect();
    let mut values = vec![CycloNumber::zero(); g.num_classes()];
    let mut x = 0usize;
    for t in 0..n {
        let v: CycloNumber = ks
            .iter()
            .map(|&k| CycloNumber::root_of_unity(n, ((k * t) % n) as i64))
            .sum();
        values[g.class_of(x)] = v;
        x = g.mul(x, gen);
    }
    ClassFunction::new(g, values).expect("one value per class")
}

fn first_generator(g: &FiniteGroup) -> Option<usize> {
    let n = g.order() as u64;
    (0..g.order()).find(|&x| g.element(x).order() == n)
}

/// Orbit sum on `C_{p^r}` for the characters whose index has `p`-adic
/// valuation `v`, as permutation characters of subgroups of `f`.
fn prime_power_witness(f: &Arc<FiniteGroup>, p: u64, r: u32, v: u32) -> Result<Vec<(SubgroupHandle, Rational)>> {
    let one = Rational::one();
    if v >= r {
        return Ok(vec![(SubgroupHandle::whole(f), one)]);
    }
    let b = first_generator(f).ok_or_else(|| Error::Defect("factor group is not cyclic".into()))?;
    if v == 0 {
        // Σ_{p ∤ k} φ_k = Ind_{1} 𝟙 − Ind_{⟨b^{p^(r-1)}⟩} 𝟙
        let order_p = f.pow(b, p.pow(r - 1) as i64);
        let small = SubgroupHandle::generated_by(f, &[f.element(order_p).clone()])?;
        return Ok(vec![(SubgroupHandle::trivial(f), one.clone()), (small, -one)]);
    }
    // p | k: the characters factor through C_{p^r} → C_{p^(r-1)}
    let q = Arc::new(named_group(&format!("C{}", p.pow(r - 1)), f.order())?);
    let q_gen = first_generator(&q).ok_or_else(|| Error::Defect("quotient is not cyclic".into()))?;
    let images: Vec<_> = f
        .generators()
        .iter()
        .map(|s| {
            let t = discrete_log(f, b, f.index_of(s).expect("generator is an element"));
            q.element(q.pow(q_gen, t as i64)).clone()
        })
        .collect();
    let quotient = GroupHom::from_generator_images(f, &q, &images)?;
    let upstairs = cyclic_orbit_sum(f, b, p.pow(v));
    let downstairs = cyclic_orbit_sum(&q, q_gen, p.pow(v - 1));
    if inflate(&quotient, &downstairs)? != upstairs {
        return Err(Error::Defect(format!("orbit sum on C{} is not inflated from the quotient", f.order())));
    }
    prime_power_witness(&q, p, r - 1, v - 1)?
        .into_iter()
        .map(|(h, c)| Ok((quotient.preimage(&h)?, c)))
        .collect()
}

fn discrete_log(g: &FiniteGroup, base: usize, x: usize) -> u64 {
    let mut y = 0usize;
    for t in 0..g.order() as u64 {
        if y == x {
            return t;
        }
        y = g.mul(y, base);
    }
    panic!("element is not a power of the generator")
}

/// Structural decomposition of a rational virtual character of a cyclic
/// group, following the primary decomposition of `C_n`.
pub fn cyclic_witness(chi: &ClassFunction) -> Result<ArtinDecomposition> {
    check_rational_input(chi)?;
    let g = chi.group();
    if !g.is_cyclic() {
        return Err(Error::InvalidInput("cyclic witness needs a cyclic group".into()));
    }
    let n = g.order() as u64;
    let a = first_generator(g).expect("cyclic group has a generator");

    // C_n ≅ C_{q_1} × ... × C_{q_s}, a ↦ (b_1, ..., b_s)
    let primes = prime_power_factors(n);
    let factors = primes
        .iter()
        .map(|&(p, r)| named_group(&format!("C{}", p.pow(r)), g.order()).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let product = DirectProduct::new(factors.clone(), g.order())?;
    let factor_gens: Vec<usize> = factors.iter().map(|f| first_generator(f).expect("cyclic")).collect();
    let image_of_a = product.combine(&factor_gens);
    let images: Vec<_> = g
        .generators()
        .iter()
        .map(|s| {
            let t = discrete_log(g, a, g.index_of(s).expect("generator is an element"));
            let pg = product.group();
            pg.element(pg.pow(image_of_a, t as i64)).clone()
        })
        .collect();
    let iso = GroupHom::from_generator_images(g, product.group(), &images)?;
    if !iso.is_surjective() {
        return Err(Error::Defect("primary decomposition map is not bijective".into()));
    }

    let mut coefficients: BTreeMap<Vec<usize>, (SubgroupHandle, Rational)> = BTreeMap::new();
    let mut rebuilt = ClassFunction::zero(g);
    for d in (1..=n).filter(|d| n % d == 0) {
        let orbit_sum = cyclic_orbit_sum(g, a, d);
        let weight = chi.inner_product(&orbit_sum)?.to_rational()?
            / Rational::from_integer((euler_phi(n / d) as i64).into());
        if weight.is_zero() {
            continue;
        }
        rebuilt = &rebuilt + &orbit_sum.scale(&weight);

        // per-factor orbit sums and their closed forms
        let mut pieces = Vec::with_capacity(primes.len());
        let mut factor_sums = Vec::with_capacity(primes.len());
        for (i, &(p, r)) in primes.iter().enumerate() {
            let v = valuation(d, p).min(r);
            factor_sums.push(cyclic_orbit_sum(&factors[i], factor_gens[i], p.pow(v)));
            pieces.push(prime_power_witness(&factors[i], p, r, v)?);
        }
        let sum_refs: Vec<&ClassFunction> = factor_sums.iter().collect();
        if inflate(&iso, &external_product(&product, &sum_refs)?)? != orbit_sum {
            return Err(Error::Defect(format!("orbit sum for gcd {d} does not split over the primary parts")));
        }

        // expand the product of the per-factor combinations
        let mut combos: Vec<(Vec<&SubgroupHandle>, Rational)> = vec![(Vec::new(), Rational::one())];
        for piece in &pieces {
            combos = combos
                .into_iter()
                .flat_map(|(hs, c)| {
                    piece.iter().map(move |(h, ch)| {
                        let mut hs = hs.clone();
                        hs.push(h);
                        (hs, &c * ch)
                    })
                })
                .collect();
        }
        for (hs, c) in combos {
            let h = iso.preimage(&product.product_subgroup(&hs)?)?;
            let entry = coefficients
                .entry(h.elements().to_vec())
                .or_insert_with(|| (h.clone(), Rational::zero()));
            entry.1 += &c * &weight;
        }
    }
    if rebuilt != *chi {
        return Err(Error::InvalidInput(
            "rational class function is not a virtual character (not constant on rational classes)".into(),
        ));
    }

    // express over the enumerated representatives, largest subgroup first
    let reps = ordered_columns(cyclic_subgroups_up_to_conjugacy(g));
    let mut terms = Vec::new();
    for rep in reps {
        if let Some((_, c)) = coefficients.remove(rep.elements()) {
            if !c.is_zero() {
                terms.push(ArtinTerm { subgroup: rep, coefficient: c });
            }
        }
    }
    if !coefficients.is_empty() {
        return Err(Error::Defect("witness used a subgroup outside the enumerated representatives".into()));
    }
    let d = ArtinDecomposition::new(chi.clone(), terms);
    if d.reconstruct() != *chi {
        return Err(Error::Defect("cyclic witness does not reconstruct the target".into()));
    }
    Ok(d)
}

/// The closed form `(Ind_1 𝟙 − Ind_{⟨a^{p^(r-1)}⟩} 𝟙) / (p^(r-1)(p-1))` on
/// `C_{p^r}`, for comparison with Galois averages of primitive characters.
pub fn prime_power_closed_form(g: &Arc<FiniteGroup>, p: u64, r: u32) -> Result<ClassFunction> {
    if g.order() as u64 != p.pow(r) || !g.is_cyclic() {
        return Err(Error::InvalidInput(format!("expected a cyclic group of order {p}^{r}")));
    }
    let a = first_generator(g).expect("cyclic");
    let small = SubgroupHandle::generated_by(g, &[g.element(g.pow(a, p.pow(r - 1) as i64)).clone()])?;
    let diff = &induced_trivial(&SubgroupHandle::trivial(g)) - &induced_trivial(&small);
    let scale = Rational::new(1.into(), ((p.pow(r - 1) * (p - 1)) as i64).into());
    Ok(diff.scale(&scale))
}
