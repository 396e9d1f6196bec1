//! The subgroup lattice of a finite group: every subgroup exactly once, with
//! inclusion, simultaneous conjugation, normalizers, Sylow subgroups, derived
//! series and the Möbius function of the inclusion order.
//!
//! Subgroups are numbered by `(order, member bits)` ascending, so lattice ids
//! form a linear extension of inclusion and the least id in a conjugacy class
//! is also its least member set.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::bitset::BitSet;
use crate::error::{input, internal, Result};
use crate::group::FiniteGroup;

pub type SubgroupId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub members: BitSet,
    pub order: usize,
    pub id: SubgroupId,
}

pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    by_members: HashMap<BitSet, SubgroupId>,
    // above[a] ∋ b  iff  a ≤ b
    above: Vec<BitSet>,
    below: Vec<BitSet>,
    // conj[g * L + s] = id of g s g⁻¹
    conj: Vec<u32>,
    class_rep: Vec<SubgroupId>,
    class_reps: Vec<SubgroupId>,
    normalizer: Vec<SubgroupId>,
    derived: Vec<SubgroupId>,
    mobius: Vec<i64>,
}

impl SubgroupLattice {
    /// Enumerates all subgroups by closing cyclic subgroups under adjoining
    /// one element at a time.
    pub fn new(group: Arc<FiniteGroup>) -> Result<SubgroupLattice> {
        let g = &*group;
        let n = g.order();
        let mut found: HashMap<BitSet, Vec<usize>> = HashMap::new();
        let mut queue: VecDeque<BitSet> = VecDeque::new();
        for x in 0..n {
            let c = g.closure([x]);
            if !found.contains_key(&c) {
                found.insert(c.clone(), vec![x]);
                queue.push_back(c);
            }
        }
        while let Some(h) = queue.pop_front() {
            let gens = found[&h].clone();
            for x in 0..n {
                if h.contains(x) {
                    continue;
                }
                let mut ext = gens.clone();
                ext.push(x);
                let k = g.closure(ext.iter().copied());
                if !found.contains_key(&k) {
                    found.insert(k.clone(), ext);
                    queue.push_back(k);
                }
            }
        }
        let mut sets: Vec<BitSet> = found.into_keys().collect();
        sets.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
        let count = sets.len();
        let subgroups: Vec<Subgroup> = sets
            .into_iter()
            .enumerate()
            .map(|(id, members)| Subgroup { order: members.count(), members, id })
            .collect();
        let by_members: HashMap<BitSet, SubgroupId> = subgroups.iter().map(|s| (s.members.clone(), s.id)).collect();

        let mut above = vec![BitSet::new(count); count];
        let mut below = vec![BitSet::new(count); count];
        for a in 0..count {
            for b in a..count {
                if subgroups[a].order <= subgroups[b].order && subgroups[a].members.is_subset(&subgroups[b].members) {
                    above[a].insert(b);
                    below[b].insert(a);
                }
            }
        }

        let mut conj = vec![0u32; n * count];
        for x in 0..n {
            for s in &subgroups {
                let img = BitSet::from_indices(n, s.members.iter().map(|m| g.conjugate(x, m)));
                let Some(&id) = by_members.get(&img) else {
                    return internal("conjugate of a subgroup is missing from the lattice");
                };
                conj[x * count + s.id] = id as u32;
            }
        }

        let mut class_rep = vec![usize::MAX; count];
        let mut class_reps = Vec::new();
        for s in 0..count {
            if class_rep[s] != usize::MAX {
                continue;
            }
            class_reps.push(s);
            for x in 0..n {
                class_rep[conj[x * count + s] as usize] = s;
            }
        }

        let normalizer = (0..count)
            .map(|s| {
                let set = BitSet::from_indices(n, (0..n).filter(|&x| conj[x * count + s] as usize == s));
                by_members[&set]
            })
            .collect();

        let derived = subgroups
            .iter()
            .map(|s| {
                let mut comms = Vec::new();
                for a in s.members.iter() {
                    for b in s.members.iter() {
                        comms.push(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
                    }
                }
                by_members[&g.closure(comms)]
            })
            .collect();

        let mobius = mobius_table(&above, &below)?;

        Ok(SubgroupLattice {
            group,
            subgroups,
            by_members,
            above,
            below,
            conj,
            class_rep,
            class_reps,
            normalizer,
            derived,
            mobius,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn order(&self, id: SubgroupId) -> usize {
        self.subgroups[id].order
    }

    pub fn id_of(&self, members: &BitSet) -> Option<SubgroupId> {
        self.by_members.get(members).copied()
    }

    pub fn trivial(&self) -> SubgroupId {
        0
    }

    pub fn whole(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    #[inline]
    pub fn leq(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.above[a].contains(b)
    }

    /// Ids of all supergroups of `a` (including `a`), ascending.
    pub fn above(&self, a: SubgroupId) -> &BitSet {
        &self.above[a]
    }

    /// Ids of all subgroups of `b` (including `b`), ascending.
    pub fn below(&self, b: SubgroupId) -> &BitSet {
        &self.below[b]
    }

    /// Subgroups `U` with `lo ≤ U ≤ hi`, ascending by id.
    pub fn interval(&self, lo: SubgroupId, hi: SubgroupId) -> impl Iterator<Item = SubgroupId> + '_ {
        self.above[lo].iter().filter(move |&u| self.below[hi].contains(u))
    }

    /// Id of `g S g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, s: SubgroupId) -> SubgroupId {
        self.conj[g * self.subgroups.len() + s] as usize
    }

    pub fn class_rep(&self, s: SubgroupId) -> SubgroupId {
        self.class_rep[s]
    }

    /// Canonical representatives of the conjugacy classes, ascending.
    pub fn class_reps(&self) -> &[SubgroupId] {
        &self.class_reps
    }

    pub fn normalizer(&self, s: SubgroupId) -> SubgroupId {
        self.normalizer[s]
    }

    pub fn is_normal(&self, s: SubgroupId) -> bool {
        self.normalizer[s] == self.whole()
    }

    pub fn intersection(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let m = self.subgroups[a].members.intersection(&self.subgroups[b].members);
        self.by_members[&m]
    }

    /// The set product `PS`, which must itself be a subgroup (true whenever
    /// `P` normalizes `S`).
    pub fn product(&self, p: SubgroupId, s: SubgroupId) -> Result<SubgroupId> {
        let g = &*self.group;
        let mut set = g.empty_set();
        for x in self.subgroups[p].members.iter() {
            for y in self.subgroups[s].members.iter() {
                set.insert(g.mul(x, y));
            }
        }
        match self.by_members.get(&set) {
            Some(&id) => Ok(id),
            None => internal(format!("product of subgroups {p} and {s} is not closed")),
        }
    }

    /// The subgroup generated by a set of elements.
    pub fn generated(&self, elements: impl IntoIterator<Item = usize>) -> SubgroupId {
        self.by_members[&self.group.closure(elements)]
    }

    pub fn derived_subgroup(&self, s: SubgroupId) -> SubgroupId {
        self.derived[s]
    }

    /// The last term of the derived series of `s`.
    pub fn perfect_core(&self, s: SubgroupId) -> SubgroupId {
        let mut cur = s;
        loop {
            let next = self.derived[cur];
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.perfect_core(self.whole()) == self.trivial()
    }

    pub fn is_p_group(&self, s: SubgroupId, p: u64) -> bool {
        p_part(self.order(s) as u64, p) == self.order(s) as u64
    }

    /// A Sylow `p`-subgroup of `h`: the one with least member set among those
    /// of maximal `p`-power order.
    pub fn sylow(&self, h: SubgroupId, p: u64) -> Result<SubgroupId> {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        let target = p_part(self.order(h) as u64, p) as usize;
        match self.below[h].iter().find(|&k| self.order(k) == target) {
            Some(k) => Ok(k),
            None => internal("no Sylow subgroup found"),
        }
    }

    /// One representative per double coset `S g T`, least element index first.
    pub fn double_coset_reps(&self, s: SubgroupId, t: SubgroupId) -> Vec<usize> {
        let g = &*self.group;
        let mut used = g.empty_set();
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if used.contains(x) {
                continue;
            }
            reps.push(x);
            for a in self.subgroups[s].members.iter() {
                let ax = g.mul(a, x);
                for b in self.subgroups[t].members.iter() {
                    used.insert(g.mul(ax, b));
                }
            }
        }
        reps
    }

    /// Least-index representatives of the left cosets `g S`.
    pub fn left_coset_reps(&self, s: SubgroupId) -> Vec<usize> {
        crate::group::left_cosets(&self.group, &self.subgroups[s].members).1
    }

    /// Möbius function of the subgroup lattice.
    pub fn mobius(&self, a: SubgroupId, b: SubgroupId) -> BigInt {
        BigInt::from(self.mobius_i64(a, b))
    }

    #[inline]
    pub fn mobius_i64(&self, a: SubgroupId, b: SubgroupId) -> i64 {
        self.mobius[a * self.subgroups.len() + b]
    }
}

fn mobius_table(above: &[BitSet], below: &[BitSet]) -> Result<Vec<i64>> {
    let l = above.len();
    let mut mu = vec![0i64; l * l];
    for a in 0..l {
        mu[a * l + a] = 1;
        for b in above[a].iter().filter(|&b| b != a) {
            let mut acc = 0i64;
            for u in above[a].iter().filter(|&u| u != b && below[b].contains(u)) {
                acc = acc.checked_add(mu[a * l + u]).ok_or_else(|| crate::Error::Internal("Möbius overflow".into()))?;
            }
            mu[a * l + b] = -acc;
        }
    }
    Ok(mu)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            ps.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}
