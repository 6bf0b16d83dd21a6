//! Finite permutation groups by full enumeration.
//!
//! Elements are stored sorted lexicographically by their image arrays, so the
//! identity always has index 0 and element indices do not depend on the
//! choice of generators. Conjugacy classes are ordered identity first, then
//! by class size, then by the index of their smallest member.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 10080;
pub const DEFAULT_LATTICE_BOUND: usize = 200;

/// A permutation of `{0, .., d-1}` given by its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| Error::InvalidInput(format!("image {i} out of range in {images:?}")))?;
            if *slot {
                return Err(Error::InvalidInput(format!("{images:?} is not a bijection")));
            }
            *slot = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    /// Builds a permutation from disjoint cycles. Repeated points, within a
    /// cycle or across cycles, are rejected.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                let slot = used.get_mut(p as usize).ok_or_else(|| {
                    Error::Parse(format!("point {p} out of range for degree {degree} in cycle {cycle:?}"))
                })?;
                if *slot {
                    return Err(Error::Parse(format!("point {p} repeated in cycle {cycle:?}")));
                }
                *slot = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut p = self.0[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.0[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// The same permutation acting on `offset..offset+d` inside a set of
    /// `total` points, fixing everything else.
    fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &p) in self.0.iter().enumerate() {
            images[offset + i] = offset as u32 + p;
        }
        Permutation(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    /// Index of the representative (the smallest member) in the element list.
    pub rep_index: usize,
    pub size: usize,
    /// Order of the elements in this class.
    pub element_order: u64,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub representative: Vec<Vec<u32>>,
    pub size: usize,
    pub order: u64,
}

/// Raw group data: generators plus the class representatives, which fix
/// the order of every value vector written next to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
    pub classes: Vec<ClassJson>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            order: g.order(),
            generators: g.generators().iter().map(Permutation::cycles).collect(),
            classes: g
                .classes()
                .iter()
                .map(|c| ClassJson {
                    representative: c.representative.cycles(),
                    size: c.size,
                    order: c.element_order,
                })
                .collect(),
        }
    }

    /// Rebuilds the group and checks that the recorded classes match, so
    /// value vectors can be read in the recorded order.
    pub fn build(&self, max_order: usize) -> Result<FiniteGroup> {
        let spec = GroupSpec::Explicit { degree: self.degree, generators: self.generators.clone() };
        let g = spec.build(max_order)?;
        if g.order() != self.order {
            return Err(Error::InvalidInput(format!("recorded order {} but generators give {}", self.order, g.order())));
        }
        if GroupJson::from_group(&g).classes != self.classes {
            return Err(Error::InvalidInput("recorded conjugacy classes do not match the generators".into()));
        }
        Ok(g)
    }
}

/// A finite permutation group with all elements enumerated.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    class_of: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    exponent: u64,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Closes the generators under multiplication. Fails with
    /// [`Error::OrderBound`] as soon as more than `max_order` elements appear.
    pub fn enumerate(generators: &[Permutation], degree: usize, max_order: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "generator {i} ({g}) has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut elements = Vec::new();
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y = x.compose(s);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    if seen.len() > max_order {
                        return Err(Error::OrderBound { bound: max_order });
                    }
                    queue.push_back(y);
                }
            }
            elements.push(x);
        }
        if elements.len() > max_order {
            return Err(Error::OrderBound { bound: max_order });
        }
        elements.sort();
        Ok(Self::from_sorted_elements(generators.to_vec(), degree, elements))
    }

    fn from_sorted_elements(generators: Vec<Permutation>, degree: usize, elements: Vec<Permutation>) -> Self {
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let gen_idx: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        let gen_inv: Vec<Permutation> = generators.iter().map(Permutation::inverse).collect();

        // conjugacy orbits under the generators
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            orbit_of[start] = id;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let x = &elements[members[i]];
                for (s, s_inv) in gen_idx.iter().zip(&gen_inv) {
                    let y = s_inv.compose(x).compose(&elements[*s]);
                    let j = index[&y];
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = id;
                        members.push(j);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            orbits.push(members);
        }
        // orbits are discovered in order of their smallest member
        let mut order: Vec<usize> = (0..orbits.len()).collect();
        order.sort_by_key(|&o| (orbits[o].len(), orbits[o][0]));
        let mut class_of = vec![0usize; n];
        let mut classes = Vec::with_capacity(orbits.len());
        for (c, &o) in order.iter().enumerate() {
            let members = std::mem::take(&mut orbits[o]);
            for &m in &members {
                class_of[m] = c;
            }
            let representative = elements[members[0]].clone();
            classes.push(ConjugacyClass {
                element_order: representative.order(),
                representative,
                rep_index: members[0],
                size: members.len(),
                members,
            });
        }
        let exponent = classes.iter().fold(1u64, |acc, c| acc.lcm(&c.element_order));
        FiniteGroup { degree, generators, elements, index, class_of, classes, exponent }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        self.index[&self.elements[a].pow(k)]
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn centralizer_order(&self, class: usize) -> usize {
        self.order() / self.classes[class].size
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    pub fn is_cyclic(&self) -> bool {
        self.classes.iter().any(|c| c.element_order as usize == self.order())
    }

    /// Class map `[x] ↦ [x^k]`; `k` may be negative.
    pub fn power_class_map(&self, k: i64) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| self.class_of[self.pow(c.rep_index, k)])
            .collect()
    }

    pub fn inverse_classes(&self) -> Vec<usize> {
        self.power_class_map(-1)
    }

    /// Rational classes: orbits of `[x] ↦ [x^k]` for `k` prime to the
    /// exponent. Each orbit is sorted, orbits ordered by their first class.
    pub fn rational_class_orbits(&self) -> Vec<Vec<usize>> {
        let maps: Vec<Vec<usize>> = crate::cyclotomic::units_mod(self.exponent)
            .into_iter()
            .map(|k| self.power_class_map(k as i64))
            .collect();
        let mut seen = vec![false; self.classes.len()];
        let mut orbits = Vec::new();
        for c in 0..self.classes.len() {
            if seen[c] {
                continue;
            }
            let mut orbit: Vec<usize> = maps.iter().map(|m| m[c]).collect();
            orbit.push(c);
            orbit.sort_unstable();
            orbit.dedup();
            for &d in &orbit {
                seen[d] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Left coset representatives of `h`, one per coset `gH`, each the
    /// smallest element of its coset.
    pub fn coset_representatives(&self, h: &SubgroupHandle) -> Vec<Permutation> {
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::with_capacity(self.order() / h.order());
        for g in 0..self.order() {
            if covered[g] {
                continue;
            }
            reps.push(self.elements[g].clone());
            for &x in h.elements() {
                covered[self.mul(g, x)] = true;
            }
        }
        reps
    }

    /// Closure of a set of element indices under multiplication.
    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    fn conjugate_set(&self, set: &[usize], by: usize) -> Vec<usize> {
        let inv = self.inv(by);
        let mut out: Vec<usize> = set.iter().map(|&x| self.mul(self.mul(inv, x), by)).collect();
        out.sort_unstable();
        out
    }

    /// Smallest element set among all conjugates of `set`.
    fn canonical_conjugate(&self, set: &[usize]) -> Vec<usize> {
        let gens: Vec<usize> = self.generators.iter().map(|g| self.index[g]).collect();
        let mut seen = BTreeSet::from([set.to_vec()]);
        let mut queue = vec![set.to_vec()];
        while let Some(s) = queue.pop() {
            for &g in &gens {
                let t = self.conjugate_set(&s, g);
                if seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        seen.into_iter().next().expect("orbit is nonempty")
    }
}

/// `H ≤ G`, carried both as a set of parent element indices and as a
/// standalone [`FiniteGroup`] with its own conjugacy classes.
///
/// Because both element lists are sorted the same way, the `i`-th element
/// of the standalone group is parent element `elements[i]`.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    parent: Arc<FiniteGroup>,
    generators: Vec<Permutation>,
    elements: Vec<usize>,
    group: Arc<FiniteGroup>,
}

impl SubgroupHandle {
    pub fn generated_by(parent: &Arc<FiniteGroup>, generators: &[Permutation]) -> Result<Self> {
        let mut idx = Vec::with_capacity(generators.len());
        for g in generators {
            idx.push(parent.index_of(g).ok_or_else(|| {
                Error::NotSubgroup(format!("{g} is not an element of the group"))
            })?);
        }
        let elements = parent.closure(&idx);
        Ok(Self::build(parent, generators.to_vec(), elements))
    }

    /// Subgroup with the given element set; fails unless the set is closed.
    pub fn from_elements(parent: &Arc<FiniteGroup>, set: &[usize]) -> Result<Self> {
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in &set {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = parent.closure(&gens);
            }
        }
        if span != set {
            return Err(Error::NotSubgroup(format!(
                "element set of size {} is not closed under multiplication",
                set.len()
            )));
        }
        let generators = gens.iter().map(|&i| parent.element(i).clone()).collect();
        Ok(Self::build(parent, generators, set))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::build(parent, parent.generators().to_vec(), (0..parent.order()).collect())
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::build(parent, Vec::new(), vec![0])
    }

    fn build(parent: &Arc<FiniteGroup>, generators: Vec<Permutation>, elements: Vec<usize>) -> Self {
        let perms: Vec<Permutation> = elements.iter().map(|&i| parent.element(i).clone()).collect();
        let group = FiniteGroup::from_sorted_elements(generators.clone(), parent.degree(), perms);
        SubgroupHandle { parent: Arc::clone(parent), generators, elements, group: Arc::new(group) }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Sorted parent element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.elements.binary_search(&element).is_ok()
    }

    /// Parent element index of the subgroup's own `i`-th element.
    pub fn to_parent(&self, i: usize) -> usize {
        self.elements[i]
    }

    pub fn is_cyclic(&self) -> bool {
        self.group.is_cyclic()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.parent == other.parent && self.elements.iter().all(|&x| other.contains(x))
    }

    /// Canonical label of the conjugacy class of this subgroup.
    pub fn conjugacy_key(&self) -> Vec<usize> {
        self.parent.canonical_conjugate(&self.elements)
    }

    pub fn is_conjugate_to(&self, other: &SubgroupHandle) -> bool {
        self.order() == other.order() && self.conjugacy_key() == other.conjugacy_key()
    }
}

/// One cyclic subgroup per conjugacy class, ordered by order and then by the
/// class of the generator.
///
/// `⟨x⟩` and `⟨y⟩` are conjugate exactly when `y` is conjugate to some
/// generator `x^k` of `⟨x⟩`, so the set of classes of generators is a
/// complete invariant.
pub fn cyclic_subgroups_up_to_conjugacy(g: &Arc<FiniteGroup>) -> Vec<SubgroupHandle> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for class in g.classes() {
        let x = class.rep_index;
        let n = class.element_order;
        let key: BTreeSet<usize> = (1..=n)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| g.class_of(g.pow(x, k as i64)))
            .collect();
        if seen.insert(key.into_iter().collect()) {
            let gens = if x == 0 { Vec::new() } else { vec![class.representative.clone()] };
            let elements = g.closure(&[x]);
            out.push(SubgroupHandle::build(g, gens, elements));
        }
    }
    out.sort_by_key(|h| h.order());
    out
}

/// One subgroup per conjugacy class, ordered by order and then by canonical
/// element set. Every subgroup arises from a smaller one by adjoining a
/// single element, and adjoining to a conjugate gives a conjugate, so it is
/// enough to extend class representatives.
pub fn all_subgroups_up_to_conjugacy(g: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<SubgroupHandle>> {
    if g.order() > bound {
        return Err(Error::OrderBound { bound });
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let trivial = vec![0usize];
    found.insert(trivial.clone());
    reps.push((Vec::new(), trivial));
    let mut i = 0;
    while i < reps.len() {
        let (gens, elems) = reps[i].clone();
        for x in 0..g.order() {
            if elems.binary_search(&x).is_ok() {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let span = g.closure(&new_gens);
            let key = g.canonical_conjugate(&span);
            if found.insert(key) {
                reps.push((new_gens, span));
            }
        }
        i += 1;
    }
    let mut out: Vec<SubgroupHandle> = reps
        .into_iter()
        .map(|(gens, elems)| {
            let perms = gens.iter().map(|&x| g.element(x).clone()).collect();
            SubgroupHandle::build(g, perms, elems)
        })
        .collect();
    out.sort_by_cached_key(|h| (h.order(), h.conjugacy_key()));
    Ok(out)
}

/// A direct product of permutation groups acting on the disjoint union of
/// their point sets, with projections back onto the factors.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    group: Arc<FiniteGroup>,
    factors: Vec<Arc<FiniteGroup>>,
    offsets: Vec<usize>,
}

impl DirectProduct {
    pub fn new(factors: Vec<Arc<FiniteGroup>>, max_order: usize) -> Result<Self> {
        let total: usize = factors.iter().map(|f| f.degree()).sum();
        let mut offsets = Vec::with_capacity(factors.len());
        let mut gens = Vec::new();
        let mut off = 0;
        for f in &factors {
            offsets.push(off);
            gens.extend(f.generators().iter().map(|s| s.shifted(off, total)));
            off += f.degree();
        }
        let group = FiniteGroup::enumerate(&gens, total, max_order)?;
        Ok(DirectProduct { group: Arc::new(group), factors, offsets })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn factors(&self) -> &[Arc<FiniteGroup>] {
        &self.factors
    }

    /// Index in factor `i` of the `i`-th component of a product element.
    pub fn project(&self, i: usize, element: usize) -> usize {
        let f = &self.factors[i];
        let off = self.offsets[i];
        let images = &self.group.element(element).images()[off..off + f.degree()];
        let p = Permutation(images.iter().map(|&x| x - off as u32).collect());
        f.index_of(&p).expect("projection lands in the factor")
    }

    /// Product element with the given factor components.
    pub fn combine(&self, parts: &[usize]) -> usize {
        assert_eq!(parts.len(), self.factors.len());
        let mut images = Vec::with_capacity(self.group.degree());
        for ((f, &off), &x) in self.factors.iter().zip(&self.offsets).zip(parts) {
            images.extend(f.element(x).images().iter().map(|&p| p + off as u32));
        }
        self.group.index_of(&Permutation(images)).expect("components lie in the factors")
    }

    /// `H_1 × ... × H_k` as a subgroup of the product.
    pub fn product_subgroup(&self, parts: &[&SubgroupHandle]) -> Result<SubgroupHandle> {
        let total = self.group.degree();
        let mut gens = Vec::new();
        for (i, h) in parts.iter().enumerate() {
            gens.extend(h.generators().iter().map(|s| s.shifted(self.offsets[i], total)));
        }
        SubgroupHandle::generated_by(&self.group, &gens)
    }
}

pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>, max_order: usize) -> Result<DirectProduct> {
    DirectProduct::new(vec![Arc::clone(a), Arc::clone(b)], max_order)
}

/// A homomorphism between enumerated groups, stored as a full element map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    /// Extends an assignment on the source generators. Every edge `x → x·s`
    /// of the Cayley graph is checked, which proves the extension is a
    /// well-defined homomorphism.
    pub fn from_generator_images(
        source: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        generator_images: &[Permutation],
    ) -> Result<Self> {
        if generator_images.len() != source.generators().len() {
            return Err(Error::NotHomomorphism(format!(
                "{} generator images given for {} generators",
                generator_images.len(),
                source.generators().len()
            )));
        }
        let gens: Vec<usize> = source.generators().iter().map(|s| source.index_of(s).unwrap()).collect();
        let mut gen_images = Vec::with_capacity(gens.len());
        for p in generator_images {
            gen_images.push(target.index_of(p).ok_or_else(|| {
                Error::NotHomomorphism(format!("image {p} is not in the target group"))
            })?);
        }
        let mut images = vec![usize::MAX; source.order()];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &fs) in gens.iter().zip(&gen_images) {
                let y = source.mul(x, s);
                let fy = target.mul(images[x], fs);
                if images[y] == usize::MAX {
                    images[y] = fy;
                    queue.push_back(y);
                } else if images[y] != fy {
                    return Err(Error::NotHomomorphism(format!(
                        "relation violated at {}",
                        source.element(y)
                    )));
                }
            }
        }
        Ok(GroupHom { source: Arc::clone(source), target: Arc::clone(target), images })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, element: usize) -> usize {
        self.images[element]
    }

    pub fn is_surjective(&self) -> bool {
        let image: BTreeSet<usize> = self.images.iter().copied().collect();
        image.len() == self.target.order()
    }

    pub fn preimage(&self, h: &SubgroupHandle) -> Result<SubgroupHandle> {
        if *h.parent() != self.target {
            return Err(Error::GroupMismatch);
        }
        let set: Vec<usize> = (0..self.source.order()).filter(|&x| h.contains(self.images[x])).collect();
        SubgroupHandle::from_elements(&self.source, &set)
    }
}

/// Builds one of the standard groups: `Cn`, `Dn` (order `2n`), `Sn`, `An`,
/// `Q8`, or products of these joined with `x`, e.g. `S3xC2`.
pub fn named_group(name: &str, max_order: usize) -> Result<FiniteGroup> {
    let parts: Vec<&str> = name.split(['x', '×', '*']).map(str::trim).collect();
    if parts.len() > 1 {
        let factors = parts
            .iter()
            .map(|p| named_group(p, max_order).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        let prod = DirectProduct::new(factors, max_order)?;
        return Ok(Arc::try_unwrap(prod.group).unwrap_or_else(|g| (*g).clone()));
    }
    let unknown = || Error::InvalidInput(format!("unknown group name {name:?}"));
    if name == "Q8" {
        return FiniteGroup::enumerate(&quaternion_generators(), 8, max_order);
    }
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let cycle = |n: usize| Permutation((0..n as u32).map(|i| (i + 1) % n as u32).collect());
    let (gens, degree) = match family {
        'C' if n >= 1 => (vec![cycle(n)], n),
        'D' if n >= 3 => {
            let refl = Permutation((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
            (vec![cycle(n), refl], n)
        }
        'S' if n >= 1 => {
            if n < 2 {
                (Vec::new(), n)
            } else {
                (vec![Permutation::from_cycles(n, &[vec![0, 1]])?, cycle(n)], n)
            }
        }
        'A' if n >= 1 => {
            let gens = (2..n as u32)
                .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
                .collect::<Result<Vec<_>>>()?;
            (gens, n)
        }
        _ => return Err(unknown()),
    };
    FiniteGroup::enumerate(&gens, degree, max_order)
}

/// Left multiplications by `i` and `j` on `Q8 = {±1, ±i, ±j, ±k}`, with
/// points `0..8` standing for `1, i, j, k, -1, -i, -j, -k`.
fn quaternion_generators() -> Vec<Permutation> {
    // unit products: table[a][b] = (sign, unit) for a*b, units 1,i,j,k
    const TABLE: [[(bool, u32); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let left = |a: u32| {
        let images = (0..8u32)
            .map(|x| {
                let (neg_x, ux) = (x >= 4, x % 4);
                let (neg_p, up) = TABLE[a as usize][ux as usize];
                if neg_x ^ neg_p {
                    up + 4
                } else {
                    up
                }
            })
            .collect();
        Permutation(images)
    };
    vec![left(1), left(2)]
}

/// Group input in JSON form: either a named group or explicit generators
/// in cycle notation with 0-based points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named { name: String },
    Explicit { degree: usize, generators: Vec<Vec<Vec<u32>>> },
}

impl GroupSpec {
    pub fn build(&self, max_order: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Named { name } => named_group(name, max_order),
            GroupSpec::Explicit { degree, generators } => {
                let perms = generators
                    .iter()
                    .enumerate()
                    .map(|(i, cycles)| {
                        Permutation::from_cycles(*degree, cycles)
                            .map_err(|e| Error::Parse(format!("generator {i}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::enumerate(&perms, *degree, max_order)
            }
        }
    }

    /// Display label: the name, or the generators in cycle notation.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Named { name } => name.clone(),
            GroupSpec::Explicit { generators, .. } => generators
                .iter()
                .map(|cycles| {
                    if cycles.is_empty() {
                        return "()".to_string();
                    }
                    cycles
                        .iter()
                        .map(|c| {
                            let pts: Vec<String> = c.iter().map(ToString::to_string).collect();
                            format!("({})", pts.join(" "))
                        })
                        .collect::<String>()
                })
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    /// Accepts a group name (`S4`), a JSON object, or comma-separated
    /// generators in cycle notation (`(0 1),(0 1 2)`), in which case the
    /// degree is one more than the largest point mentioned.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Parse(format!("group JSON: {e}")));
        }
        if !text.starts_with('(') {
            return Ok(GroupSpec::Named { name: text.to_string() });
        }
        let mut generators = Vec::new();
        for (i, gen) in text.split(',').enumerate() {
            let gen = gen.trim();
            let bad = |msg: &str| Error::Parse(format!("generator {i} {gen:?}: {msg}"));
            let mut cycles = Vec::new();
            let mut rest = gen;
            while !rest.is_empty() {
                let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
                let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
                let pts = body[..close]
                    .split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| bad(&format!("bad point {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                let distinct: BTreeSet<u32> = pts.iter().copied().collect();
                if distinct.len() != pts.len() {
                    return Err(bad("repeated point in cycle"));
                }
                if !pts.is_empty() {
                    cycles.push(pts);
                }
                rest = body[close + 1..].trim_start();
            }
            generators.push(cycles);
        }
        let degree = generators
            .iter()
            .flatten()
            .flatten()
            .max()
            .map_or(1, |&m| m as usize + 1);
        Ok(GroupSpec::Explicit { degree, generators })
    }
}
