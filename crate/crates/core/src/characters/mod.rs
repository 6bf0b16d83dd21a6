//! Class functions with exact cyclotomic values, character tables, and the
//! operations of the representation ring: inner products, induction,
//! restriction, external products, inflation and the Galois action.

mod dixon;
mod modp;

use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::{euler_phi, units_mod, CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::permgroup::{ClassJson, DirectProduct, FiniteGroup, GroupHom, SubgroupHandle};

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A class function on `G`, stored as its value at each class
/// representative in the group's class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<CycloNumber>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<CycloNumber>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::InvalidInput(format!(
                "{} values given for {} classes",
                values.len(),
                group.num_classes()
            )));
        }
        Ok(ClassFunction { group: Arc::clone(group), values })
    }

    pub fn from_rationals(group: &Arc<FiniteGroup>, values: &[Rational]) -> Result<Self> {
        Self::new(group, values.iter().cloned().map(CycloNumber::from_rational).collect())
    }

    pub fn from_integers(group: &Arc<FiniteGroup>, values: &[i64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&v| CycloNumber::from_integer(v)).collect())
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        ClassFunction { group: Arc::clone(group), values: vec![CycloNumber::zero(); group.num_classes()] }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        ClassFunction { group: Arc::clone(group), values: vec![CycloNumber::one(); group.num_classes()] }
    }

    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let mut f = Self::zero(group);
        f.values[0] = CycloNumber::from_integer(group.order() as i64);
        f
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycloNumber] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycloNumber {
        &self.values[class]
    }

    /// Value at an arbitrary element (by index).
    pub fn at(&self, element: usize) -> &CycloNumber {
        &self.values[self.group.class_of(element)]
    }

    /// Value at the identity.
    pub fn degree(&self) -> &CycloNumber {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycloNumber::is_zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|v| v.scale(q))
    }

    pub fn map(&self, f: impl Fn(&CycloNumber) -> CycloNumber) -> Self {
        ClassFunction { group: Arc::clone(&self.group), values: self.values.iter().map(f).collect() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycloNumber, &CycloNumber) -> CycloNumber) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFunction { group: Arc::clone(&self.group), values })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise (tensor) product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// `⟨χ, ψ⟩ = (1/|G|) Σ_k |C_k| χ(g_k) conj(ψ(g_k))`.
    pub fn inner_product(&self, other: &Self) -> Result<CycloNumber> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let sizes = self.group.class_sizes();
        let mut acc = CycloNumber::zero();
        for ((a, b), &h) in self.values.iter().zip(&other.values).zip(&sizes) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc += &(a * &b.conj()).scale(&Rational::from_integer((h as i64).into()));
        }
        Ok(acc.scale(&Rational::new(1.into(), (self.group.order() as i64).into())))
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(CycloNumber::is_rational)
    }

    pub fn first_irrational_class(&self) -> Option<usize> {
        self.values.iter().position(|v| !v.is_rational())
    }

    pub fn to_rationals(&self) -> Result<Vec<Rational>> {
        self.values.iter().map(CycloNumber::to_rational).collect()
    }

    fn check_unit(&self, k: i64) -> Result<()> {
        let e = self.group.exponent();
        if e > 1 && num_integer::gcd(k.rem_euclid(e as i64) as u64, e) != 1 {
            return Err(Error::NotCoprime { k, modulus: e });
        }
        Ok(())
    }

    /// `σ_k` applied to every value.
    pub fn galois_act(&self, k: i64) -> Result<Self> {
        self.check_unit(k)?;
        let values = self
            .values
            .iter()
            .map(|v| v.galois_conjugate(k))
            .collect::<Result<Vec<_>>>()?;
        let out = ClassFunction { group: Arc::clone(&self.group), values };
        debug_assert!(
            !self.is_virtual_character_hint() || out == self.galois_act_by_power_map(k)?,
            "σ_{k} on values disagrees with the power map"
        );
        Ok(out)
    }

    // Cheap proxy for "this is a combination of characters": the two Galois
    // routes only agree on the span of the irreducibles, so the debug
    // cross-check is limited to functions whose values stay in Q(ζ_e).
    fn is_virtual_character_hint(&self) -> bool {
        let e = self.group.exponent();
        self.values.iter().all(|v| e % v.conductor() == 0)
    }

    /// `x ↦ χ(x^k)`; agrees with [`ClassFunction::galois_act`] on virtual
    /// characters.
    pub fn galois_act_by_power_map(&self, k: i64) -> Result<Self> {
        self.check_unit(k)?;
        let map = self.group.power_class_map(k);
        let values = map.iter().map(|&c| self.values[c].clone()).collect();
        Ok(ClassFunction { group: Arc::clone(&self.group), values })
    }

    /// `Σ_{k ∈ (Z/e)^×} σ_k(χ)`.
    pub fn galois_orbit_sum(&self) -> Self {
        let e = self.group.exponent();
        let mut acc = ClassFunction::zero(&self.group);
        for k in units_mod(e) {
            let conj = self.galois_act(k as i64).expect("units are coprime to e");
            acc = acc.try_add(&conj).expect("same group");
        }
        acc
    }

    /// `(1/φ(e)) Σ_{k ∈ (Z/e)^×} σ_k(χ)`, always rational valued.
    pub fn galois_average(&self) -> Self {
        let phi = euler_phi(self.group.exponent());
        self.galois_orbit_sum().scale(&Rational::new(1.into(), (phi as i64).into()))
    }

    pub fn restrict(&self, h: &SubgroupHandle) -> Result<Self> {
        if !same_group(&self.group, h.parent()) {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        let sub = h.as_group();
        let values = sub
            .classes()
            .iter()
            .map(|c| self.at(h.to_parent(c.rep_index)).clone())
            .collect();
        Ok(ClassFunction { group: Arc::clone(sub), values })
    }

    /// Values as rationals, with one line per class; for tests and display.
    pub fn describe(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        format!("({})", vals.join(", "))
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;

    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        self.try_add(rhs).expect("class functions on different groups")
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;

    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        self.try_sub(rhs).expect("class functions on different groups")
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;

    fn neg(self) -> ClassFunction {
        self.map(|v| -v)
    }
}

/// `Ind_H^G χ`. Uses `(Ind χ)(g) = |C_G(g)|/|H| · Σ_{h ∈ H ∩ [g]} χ(h)`.
pub fn induce(h: &SubgroupHandle, chi: &ClassFunction) -> Result<ClassFunction> {
    if !same_group(chi.group(), h.as_group()) {
        return Err(Error::NotSubgroup("class function is not defined on this subgroup".into()));
    }
    let g = h.parent();
    let mut sums = vec![CycloNumber::zero(); g.num_classes()];
    for (i, &x) in h.elements().iter().enumerate() {
        sums[g.class_of(x)] += chi.at(i);
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.scale(&Rational::new((g.centralizer_order(k) as i64).into(), (h.order() as i64).into())))
        .collect();
    Ok(ClassFunction { group: Arc::clone(g), values })
}

/// `Ind_H^G 𝟙`, the permutation character on the cosets of `H`.
pub fn induced_trivial(h: &SubgroupHandle) -> ClassFunction {
    let g = h.parent();
    let mut counts = vec![0i64; g.num_classes()];
    for &x in h.elements() {
        counts[g.class_of(x)] += 1;
    }
    let values = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            CycloNumber::from_rational(Rational::new(
                (c * g.centralizer_order(k) as i64).into(),
                (h.order() as i64).into(),
            ))
        })
        .collect();
    ClassFunction { group: Arc::clone(g), values }
}

/// `χ_1 ⊠ ... ⊠ χ_k` on `G_1 × ... × G_k`.
pub fn external_product(product: &DirectProduct, factors: &[&ClassFunction]) -> Result<ClassFunction> {
    if factors.len() != product.factors().len() {
        return Err(Error::InvalidInput(format!(
            "{} class functions for {} factors",
            factors.len(),
            product.factors().len()
        )));
    }
    for (chi, f) in factors.iter().zip(product.factors()) {
        if !same_group(chi.group(), f) {
            return Err(Error::GroupMismatch);
        }
    }
    let g = product.group();
    let values = g
        .classes()
        .iter()
        .map(|c| {
            factors
                .iter()
                .enumerate()
                .fold(CycloNumber::one(), |acc, (i, chi)| &acc * chi.at(product.project(i, c.rep_index)))
        })
        .collect();
    Ok(ClassFunction { group: Arc::clone(g), values })
}

/// `f^*χ = χ ∘ f` for a surjective homomorphism `f: G → G'`.
pub fn inflate(f: &GroupHom, chi: &ClassFunction) -> Result<ClassFunction> {
    if !same_group(chi.group(), f.target()) {
        return Err(Error::GroupMismatch);
    }
    if !f.is_surjective() {
        return Err(Error::NotHomomorphism("map is not surjective".into()));
    }
    let g = f.source();
    let values = g.classes().iter().map(|c| chi.at(f.apply(c.rep_index)).clone()).collect();
    Ok(ClassFunction { group: Arc::clone(g), values })
}

/// The irreducible characters of a group, with degrees.
///
/// Rows are ordered: the trivial character first, then by degree, then by
/// the value tuples in decreasing lexicographic order (values compared via
/// [`CycloNumber::lex_cmp`]).
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    prime: u64,
}

impl CharacterTable {
    pub fn compute(group: &Arc<FiniteGroup>) -> Result<Self> {
        let out = dixon::compute(group)?;
        let mut rows: Vec<(u64, ClassFunction)> = out
            .rows
            .into_iter()
            .map(|(d, values)| (d, ClassFunction { group: Arc::clone(group), values }))
            .collect();
        let trivial = ClassFunction::trivial(group);
        rows.sort_by(|(da, a), (db, b)| {
            (*a != trivial)
                .cmp(&(*b != trivial))
                .then(da.cmp(db))
                .then_with(|| {
                    a.values
                        .iter()
                        .zip(&b.values)
                        .map(|(x, y)| y.lex_cmp(x))
                        .find(|o| *o != Ordering::Equal)
                        .unwrap_or(Ordering::Equal)
                })
        });
        let (degrees, irreducibles) = rows.into_iter().unzip();
        Ok(CharacterTable { group: Arc::clone(group), irreducibles, degrees, prime: out.prime })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn irreducible(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// The prime used for the modular eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Coordinates `m_i = ⟨χ, χ_i⟩`; fails when some coordinate is not
    /// rational, i.e. `χ` is not in the rational span of the irreducibles.
    pub fn decompose(self: &Arc<Self>, chi: &ClassFunction) -> Result<VirtualCharacter> {
        if !same_group(chi.group(), &self.group) {
            return Err(Error::GroupMismatch);
        }
        let multiplicities = self
            .irreducibles
            .iter()
            .map(|irr| chi.inner_product(irr)?.to_rational())
            .collect::<Result<Vec<_>>>()?;
        let v = VirtualCharacter { table: Arc::clone(self), multiplicities };
        if v.to_class_function() != *chi {
            return Err(Error::InvalidInput("class function is not a virtual character".into()));
        }
        Ok(v)
    }

    /// Row permutation induced by `σ_k`: row `i` maps to row `perm[i]`.
    pub fn galois_permutation(&self, k: i64) -> Result<Vec<usize>> {
        self.irreducibles
            .iter()
            .map(|chi| {
                let image = chi.galois_act(k)?;
                self.irreducibles
                    .iter()
                    .position(|psi| *psi == image)
                    .ok_or_else(|| Error::Defect("Galois image of an irreducible is not in the table".into()))
            })
            .collect()
    }

    /// Galois orbits of the irreducibles, each as sorted row indices, in
    /// order of their first row.
    pub fn galois_orbits(&self) -> Result<Vec<Vec<usize>>> {
        let e = self.group.exponent();
        let perms = units_mod(e)
            .into_iter()
            .map(|k| self.galois_permutation(k as i64))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = vec![false; self.len()];
        let mut orbits = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = perms.iter().map(|p| p[i]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &j in &orbit {
                seen[j] = true;
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    pub fn to_json(&self) -> TableJson {
        let g = &self.group;
        TableJson {
            order: g.order(),
            exponent: g.exponent(),
            prime: self.prime,
            classes: g
                .classes()
                .iter()
                .map(|c| ClassJson {
                    representative: c.representative.cycles(),
                    size: c.size,
                    order: c.element_order,
                })
                .collect(),
            degrees: self.degrees.clone(),
            irreducibles: self.irreducibles.iter().map(|chi| chi.values.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableJson {
    pub order: usize,
    pub exponent: u64,
    pub prime: u64,
    pub classes: Vec<ClassJson>,
    pub degrees: Vec<u64>,
    pub irreducibles: Vec<Vec<CycloNumber>>,
}

/// An element of `R(G) = ⊕ Q·χ_i`, by its rational coordinates.
#[derive(Clone, Debug)]
pub struct VirtualCharacter {
    table: Arc<CharacterTable>,
    multiplicities: Vec<Rational>,
}

impl VirtualCharacter {
    pub fn new(table: &Arc<CharacterTable>, multiplicities: Vec<Rational>) -> Result<Self> {
        if multiplicities.len() != table.len() {
            return Err(Error::InvalidInput(format!(
                "{} multiplicities for {} irreducibles",
                multiplicities.len(),
                table.len()
            )));
        }
        Ok(VirtualCharacter { table: Arc::clone(table), multiplicities })
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn multiplicities(&self) -> &[Rational] {
        &self.multiplicities
    }

    pub fn to_class_function(&self) -> ClassFunction {
        let mut acc = ClassFunction::zero(&self.table.group);
        for (m, chi) in self.multiplicities.iter().zip(&self.table.irreducibles) {
            if m.is_zero() {
                continue;
            }
            let term = if m.is_one() { chi.clone() } else { chi.scale(m) };
            acc = &acc + &term;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rat;
    use crate::permgroup::{cyclic_subgroups_up_to_conjugacy, named_group, DEFAULT_MAX_ORDER};

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(named_group(name, DEFAULT_MAX_ORDER).unwrap())
    }

    fn table(name: &str) -> Arc<CharacterTable> {
        Arc::new(CharacterTable::compute(&group(name)).unwrap())
    }

    fn ints(g: &Arc<FiniteGroup>, v: &[i64]) -> ClassFunction {
        ClassFunction::from_integers(g, v).unwrap()
    }

    /// Class indices of S3 in the (identity, transpositions, 3-cycles) order.
    fn s3_order(g: &FiniteGroup) -> [usize; 3] {
        let by_order = |o| g.classes().iter().position(|c| c.element_order == o).unwrap();
        [0, by_order(2), by_order(3)]
    }

    fn s3_function(g: &Arc<FiniteGroup>, vals: [i64; 3]) -> ClassFunction {
        let idx = s3_order(g);
        let mut v = vec![0; 3];
        for (slot, val) in idx.iter().zip(vals) {
            v[*slot] = val;
        }
        ints(g, &v)
    }

    #[test]
    fn c2_table() {
        let t = table("C2");
        let g = t.group().clone();
        assert_eq!(t.irreducible(0), &ints(&g, &[1, 1]));
        assert_eq!(t.irreducible(1), &ints(&g, &[1, -1]));
    }

    #[test]
    fn s3_table() {
        let t = table("S3");
        let g = t.group().clone();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(t.irreducible(0), &s3_function(&g, [1, 1, 1]));
        assert_eq!(t.irreducible(1), &s3_function(&g, [1, -1, 1]));
        assert_eq!(t.irreducible(2), &s3_function(&g, [2, 0, -1]));
    }

    #[test]
    fn q8_table() {
        let t = table("Q8");
        let g = t.group().clone();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        assert_eq!(t.irreducible(4), &ints(&g, &[2, -2, 0, 0, 0]));
        assert!(t.irreducible(4).is_rational());
    }

    #[test]
    fn trivial_group_table() {
        let t = table("C1");
        assert_eq!(t.degrees(), &[1]);
    }

    #[test]
    fn inner_products() {
        let g = group("S3");
        let triv = ClassFunction::trivial(&g);
        assert_eq!(triv.inner_product(&triv).unwrap(), CycloNumber::one());
        let a = s3_function(&g, [3, 1, 0]);
        let b = s3_function(&g, [2, 0, -1]);
        assert_eq!(a.inner_product(&b).unwrap(), CycloNumber::one());
        let t = table("S3");
        assert!(t.irreducible(0).inner_product(t.irreducible(2)).unwrap().is_zero());
        let other = ClassFunction::trivial(&group("C3"));
        assert!(matches!(triv.inner_product(&other), Err(Error::GroupMismatch)));
    }

    #[test]
    fn induction_examples() {
        let s3 = group("S3");
        let cyc = cyclic_subgroups_up_to_conjugacy(&s3);
        let c2 = cyc.iter().find(|h| h.order() == 2).unwrap();
        let ind = induce(c2, &ClassFunction::trivial(c2.as_group())).unwrap();
        assert_eq!(ind, s3_function(&s3, [3, 1, 0]));
        assert_eq!(induced_trivial(c2), ind);

        let whole = SubgroupHandle::whole(&s3);
        let chi = table("S3").irreducible(2).clone();
        let chi_on_whole = ClassFunction::new(whole.as_group(), chi.values().to_vec()).unwrap();
        assert_eq!(induce(&whole, &chi_on_whole).unwrap().values(), chi.values());

        let q8 = group("Q8");
        let center = cyclic_subgroups_up_to_conjugacy(&q8)[1].clone();
        assert_eq!(induced_trivial(&center), ints(&q8, &[4, 4, 0, 0, 0]));

        let wrong = ClassFunction::trivial(&q8);
        assert!(induce(&center, &wrong).is_err());
    }

    #[test]
    fn restriction_examples() {
        let s3 = group("S3");
        let cyc = cyclic_subgroups_up_to_conjugacy(&s3);
        let c2 = cyc.iter().find(|h| h.order() == 2).unwrap();
        let std = s3_function(&s3, [2, 0, -1]);
        let res = std.restrict(c2).unwrap();
        assert_eq!(res.values(), &[CycloNumber::from_integer(2), CycloNumber::zero()]);
        assert_eq!(ClassFunction::trivial(&s3).restrict(c2).unwrap(), ClassFunction::trivial(c2.as_group()));
        let back = induced_trivial(c2).restrict(c2).unwrap();
        assert_eq!(back.degree(), &CycloNumber::from_integer(3));
        let foreign = cyclic_subgroups_up_to_conjugacy(&group("C4"))[1].clone();
        assert!(std.restrict(&foreign).is_err());
    }

    #[test]
    fn galois_action_on_c3() {
        let t = table("C3");
        let g = t.group().clone();
        // the classes of C3 are e, a, a^2 with a = (0 1 2)
        let a = g.index_of(&g.generators()[0]).unwrap();
        let ca = g.class_of(a);
        let phi1 = t
            .irreducibles()
            .iter()
            .find(|chi| *chi.value(ca) == CycloNumber::root_of_unity(3, 1))
            .unwrap();
        let phi2 = phi1.galois_act(2).unwrap();
        assert_eq!(*phi2.value(ca), CycloNumber::root_of_unity(3, 2));
        assert_eq!(phi2, phi1.galois_act_by_power_map(2).unwrap());
        assert_eq!(phi1.galois_act(1).unwrap(), *phi1);
        assert!(!phi1.is_rational());
        assert!(phi1.galois_act(3).is_err());
        let avg = phi1.galois_average();
        assert_eq!(avg, ClassFunction::from_rationals(&g, &[rat(1, 1), rat(-1, 2), rat(-1, 2)]).unwrap());
        let triv = ClassFunction::trivial(&g);
        assert_eq!(triv.galois_average(), triv);
    }

    #[test]
    fn galois_average_on_c5() {
        let t = table("C5");
        let g = t.group().clone();
        let phi = t.irreducibles().iter().find(|chi| !chi.is_rational()).unwrap();
        let quarter = rat(-1, 4);
        let expected: Vec<Rational> =
            (0..5).map(|k| if k == 0 { rat(1, 1) } else { quarter.clone() }).collect();
        assert_eq!(phi.galois_average(), ClassFunction::from_rationals(&g, &expected).unwrap());
    }

    #[test]
    fn decompositions() {
        let t = table("S3");
        let g = t.group().clone();
        let unit = t.decompose(t.irreducible(1)).unwrap();
        assert_eq!(unit.multiplicities(), &[rat(0, 1), rat(1, 1), rat(0, 1)]);
        let perm = t.decompose(&s3_function(&g, [3, 1, 0])).unwrap();
        assert_eq!(perm.multiplicities(), &[rat(1, 1), rat(0, 1), rat(1, 1)]);
        let reg = t.decompose(&ClassFunction::regular(&g)).unwrap();
        assert_eq!(reg.multiplicities(), &[rat(1, 1), rat(1, 1), rat(2, 1)]);
        assert_eq!(reg.to_class_function(), ClassFunction::regular(&g));
        let junk = ClassFunction::new(&g, vec![CycloNumber::root_of_unity(5, 1); 3]).unwrap();
        assert!(t.decompose(&junk).is_err());
    }

    #[test]
    fn external_products() {
        let c2 = group("C2");
        let c3 = group("C3");
        let prod = crate::permgroup::direct_product(&c2, &c3, 100).unwrap();
        let t2 = table("C2");
        let t3 = table("C3");
        // tables computed on freshly built but equal groups
        let sign = ClassFunction::new(&c2, t2.irreducible(1).values().to_vec()).unwrap();
        let phi = ClassFunction::new(&c3, t3.irreducibles().iter().find(|c| !c.is_rational()).unwrap().values().to_vec()).unwrap();
        let both = external_product(&prod, &[&sign, &phi]).unwrap();
        for c in prod.group().classes() {
            let x = c.rep_index;
            let expected = sign.at(prod.project(0, x)) * phi.at(prod.project(1, x));
            assert_eq!(*both.at(x), expected);
        }
        let triv = external_product(&prod, &[&ClassFunction::trivial(&c2), &ClassFunction::trivial(&c3)]).unwrap();
        assert_eq!(triv, ClassFunction::trivial(prod.group()));
        let s3 = group("S3");
        let prod2 = crate::permgroup::direct_product(&s3, &s3, 100).unwrap();
        let std = table("S3").irreducible(2).clone();
        let std = ClassFunction::new(&s3, std.values().to_vec()).unwrap();
        assert_eq!(external_product(&prod2, &[&std, &std]).unwrap().degree(), &CycloNumber::from_integer(4));
    }

    #[test]
    fn inflation() {
        let c4 = group("C4");
        let c2 = group("C2");
        let f = GroupHom::from_generator_images(&c4, &c2, &[c2.generators()[0].clone()]).unwrap();
        let sign = ints(&c2, &[1, -1]);
        let inflated = inflate(&f, &sign).unwrap();
        let a = c4.index_of(&c4.generators()[0]).unwrap();
        let pattern: Vec<CycloNumber> = (0..4).map(|t| inflated.at(c4.pow(a, t)).clone()).collect();
        let expected: Vec<CycloNumber> = [1, -1, 1, -1].iter().map(|&v| CycloNumber::from_integer(v)).collect();
        assert_eq!(pattern, expected);
        assert_eq!(inflate(&f, &ClassFunction::trivial(&c2)).unwrap(), ClassFunction::trivial(&c4));
        let id = GroupHom::from_generator_images(&c4, &c4, c4.generators()).unwrap();
        let chi = table("C4").irreducible(2).clone();
        let chi = ClassFunction::new(&c4, chi.values().to_vec()).unwrap();
        assert_eq!(inflate(&id, &chi).unwrap(), chi);
        let into_c4 = GroupHom::from_generator_images(&c2, &c4, &[c4.generators()[0].pow(2)]).unwrap();
        assert!(inflate(&into_c4, &chi).is_err());
    }
}
