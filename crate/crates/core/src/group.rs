//! Concrete permutation groups with full multiplication tables.
//!
//! Every group is stored as an explicit list of permutations with the
//! identity at index 0 and the remaining elements sorted by their image
//! tuples, so element indices are stable across runs. Products multiply
//! indices through a precomputed table.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{input, internal, Error, Result};

/// Default cap on the order of any group the library will materialize.
pub const DEFAULT_MAX_ORDER: usize = 200;

/// A permutation of `0..degree`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return input(format!("{images:?} is not a permutation"));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation of `0..degree` from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return input(format!("point {p} outside degree {degree}"));
                }
                if touched[p] {
                    return input(format!("point {p} appears twice in cycle notation"));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    /// Disjoint union with `other` acting on the points after `self`'s.
    pub fn juxtapose(&self, other: &Permutation) -> Permutation {
        let shift = self.0.len() as u32;
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&i| i + shift));
        Permutation(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.0[p] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite group given by a faithful permutation representation together with
/// its full multiplication and inversion tables.
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mul_table: Vec<u32>,
    inv_table: Vec<u32>,
}

impl FiniteGroup {
    /// Closure of `gens` under composition, refusing groups larger than `max_order`.
    pub fn generate(gens: &[Permutation], max_order: usize) -> Result<FiniteGroup> {
        let degree = gens.first().map_or(0, Permutation::degree);
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return input(format!("generators act on different point sets ({} vs {})", degree, g.degree()));
        }
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut all = Vec::new();
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = g.compose(&p);
                if !seen.contains_key(&q) {
                    if seen.len() >= max_order {
                        return Err(Error::Size { what: "group order".into(), limit: max_order });
                    }
                    seen.insert(q.clone(), ());
                    queue.push_back(q);
                }
            }
            all.push(p);
        }
        all.sort();
        Ok(FiniteGroup::from_sorted_elements(degree, all))
    }

    fn from_sorted_elements(degree: usize, elements: Vec<Permutation>) -> FiniteGroup {
        debug_assert!(elements[0].is_identity());
        let n = elements.len();
        let index: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul_table = vec![0u32; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul_table[a * n + b] = index[&pa.compose(pb)] as u32;
            }
        }
        let inv_table = elements.iter().map(|p| index[&p.inverse()] as u32).collect();
        FiniteGroup { degree, elements, index, mul_table, inv_table }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_sorted_elements(1, vec![Permutation::identity(1)])
    }

    pub fn degree(&self) -> usize {
        self.degree
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

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv_table[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.order())
    }

    pub fn full_set(&self) -> BitSet {
        BitSet::from_indices(self.order(), 0..self.order())
    }

    /// The subgroup generated by the given elements, as a member set.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> BitSet {
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g != 0).collect();
        let mut set = BitSet::from_indices(self.order(), [0]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(g, x);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: &BitSet) -> bool {
        set.contains(0) && set.iter().all(|a| set.iter().all(|b| set.contains(self.mul(a, self.inv(b)))))
    }

    /// Exhaustive check of the group axioms on the stored tables.
    pub fn verify_tables(&self) -> bool {
        let n = self.order();
        let assoc =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))));
        let ident = (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a);
        let inverse = (0..n).all(|a| self.mul(a, self.inv(a)) == 0 && self.mul(self.inv(a), a) == 0);
        let distinct = self.index.len() == n;
        assoc && ident && inverse && distinct
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, degree {})", self.order(), self.degree)
    }
}

/// Convenience wrapper around [`FiniteGroup::generate`] with the default order cap.
pub fn group_from_generators(gens: &[Permutation]) -> Result<FiniteGroup> {
    FiniteGroup::generate(gens, DEFAULT_MAX_ORDER)
}

/// A group homomorphism between two materialized groups, as an element-index map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<GroupHom> {
        if map.len() != source.order() || map.iter().any(|&t| t >= target.order()) {
            return input("homomorphism map has the wrong shape");
        }
        let n = source.order();
        for a in 0..n {
            for b in 0..n {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return input("element map is not a homomorphism");
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> GroupHom {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order()).collect() }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.target.order(), set.iter().map(|x| self.map[x]))
    }

    pub fn preimage(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.source.order(), (0..self.source.order()).filter(|&x| set.contains(self.map[x])))
    }

    pub fn kernel(&self) -> BitSet {
        BitSet::from_indices(self.source.order(), (0..self.source.order()).filter(|&x| self.map[x] == 0))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.source.full_set()).count() == self.target.order()
    }

    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if **first.target() != *self.source {
            return Err(Error::Mismatch("composing homomorphisms with unequal middle groups".into()));
        }
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Result<GroupHom> {
        if !(self.is_injective() && self.is_surjective()) {
            return input("only isomorphisms can be inverted");
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(GroupHom { source: self.target.clone(), target: self.source.clone(), map: inv })
    }
}

/// Materializes the subgroup with the given member set as a group of its own,
/// returning the inclusion homomorphism into `g`.
pub fn subgroup_embedding(g: &Arc<FiniteGroup>, members: &BitSet) -> Result<GroupHom> {
    if !g.is_subgroup(members) {
        return input("member set is not a subgroup");
    }
    let perms: Vec<Permutation> = members.iter().map(|x| g.element(x).clone()).collect();
    let sub = Arc::new(FiniteGroup::generate(&perms, perms.len())?);
    let map = sub.elements().iter().map(|p| g.index_of(p).expect("member of parent")).collect();
    Ok(GroupHom { source: sub, target: g.clone(), map })
}

/// The quotient map `G → G/N`, with `G/N` realized as a permutation group on
/// the left cosets of `N`.
pub fn quotient(g: &Arc<FiniteGroup>, normal: &BitSet) -> Result<GroupHom> {
    if !g.is_subgroup(normal) {
        return input("quotient by a non-subgroup");
    }
    let n = g.order();
    if !(0..n).all(|x| normal.iter().all(|k| normal.contains(g.conjugate(x, k)))) {
        return input("quotient by a subgroup that is not normal");
    }
    let (coset_of, reps) = left_cosets(g, normal);
    let perms: Vec<Permutation> =
        (0..n).map(|x| Permutation(reps.iter().map(|&r| coset_of[g.mul(x, r)] as u32).collect())).collect();
    let q = Arc::new(FiniteGroup::generate(&perms, reps.len().max(1))?);
    let map = perms.iter().map(|p| q.index_of(p).expect("generated")).collect();
    GroupHom::new(g.clone(), q, map)
}

/// Left cosets `xH`: returns the coset index of every element and the least
/// element index of every coset.
pub fn left_cosets(g: &FiniteGroup, sub: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for h in sub.iter() {
            coset_of[g.mul(x, h)] = c;
        }
    }
    (coset_of, reps)
}

/// The direct product `G × H` acting on the disjoint union of the two point sets.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    group: Arc<FiniteGroup>,
    left: Arc<FiniteGroup>,
    right: Arc<FiniteGroup>,
    pair_index: Vec<usize>,
    components: Vec<(usize, usize)>,
}

impl DirectProduct {
    pub fn new(left: &Arc<FiniteGroup>, right: &Arc<FiniteGroup>) -> Result<DirectProduct> {
        let (m, k) = (left.order(), right.order());
        let mut perms = Vec::with_capacity(m * k);
        for a in 0..m {
            for b in 0..k {
                perms.push(left.element(a).juxtapose(right.element(b)));
            }
        }
        let mut sorted = perms.clone();
        sorted.sort();
        let group = Arc::new(FiniteGroup::from_sorted_elements(left.degree() + right.degree(), sorted));
        let pair_index: Vec<usize> = perms.iter().map(|p| group.index_of(p).unwrap()).collect();
        let mut components = vec![(0, 0); m * k];
        for (i, &e) in pair_index.iter().enumerate() {
            components[e] = (i / k, i % k);
        }
        if group.order() != m * k {
            return internal("direct product has the wrong order");
        }
        Ok(DirectProduct { group, left: left.clone(), right: right.clone(), pair_index, components })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn left(&self) -> &Arc<FiniteGroup> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteGroup> {
        &self.right
    }

    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        self.pair_index[a * self.right.order() + b]
    }

    #[inline]
    pub fn components(&self, x: usize) -> (usize, usize) {
        self.components[x]
    }

    /// `A × B` as a member set of the product.
    pub fn product_set(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let mut s = self.group.empty_set();
        for x in a.iter() {
            for y in b.iter() {
                s.insert(self.pair(x, y));
            }
        }
        s
    }

    pub fn left_projection(&self) -> GroupHom {
        GroupHom {
            source: self.group.clone(),
            target: self.left.clone(),
            map: self.components.iter().map(|c| c.0).collect(),
        }
    }

    pub fn right_projection(&self) -> GroupHom {
        GroupHom {
            source: self.group.clone(),
            target: self.right.clone(),
            map: self.components.iter().map(|c| c.1).collect(),
        }
    }
}
