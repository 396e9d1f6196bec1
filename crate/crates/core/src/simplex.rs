//! Explicit finite G-sets and chains of equivariant maps `X_0 → … → X_n`.
//!
//! These are the brute-force substrate: marks of basis elements are checked
//! against fixed-point counts and morphism counts on concrete instances.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{input, Error, Result};
use crate::group::{left_cosets, FiniteGroup};
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::ring::BurnsideElt;
use crate::slices::{Slice, SliceClassTable};

/// A finite left G-set on the points `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    // action[g * size + x] = g·x
    action: Vec<u32>,
}

impl GSet {
    pub fn new(group: &Arc<FiniteGroup>, size: usize, action: Vec<u32>) -> Result<GSet> {
        if action.len() != group.order() * size {
            return input("action table has the wrong size");
        }
        let s = GSet { group: group.clone(), size, action };
        s.validate()?;
        Ok(s)
    }

    pub fn empty(group: &Arc<FiniteGroup>) -> GSet {
        GSet { group: group.clone(), size: 0, action: Vec::new() }
    }

    pub fn point(group: &Arc<FiniteGroup>) -> GSet {
        GSet { group: group.clone(), size: 1, action: vec![0; group.order()] }
    }

    /// The left cosets `G/H`, point `i` being the coset of the `i`-th
    /// least-index representative.
    pub fn cosets(lattice: &SubgroupLattice, h: SubgroupId) -> GSet {
        let g = lattice.group();
        let (coset_of, reps) = left_cosets(g, &lattice.subgroup(h).members);
        let size = reps.len();
        let mut action = vec![0u32; g.order() * size];
        for x in 0..g.order() {
            for (i, &r) in reps.iter().enumerate() {
                action[x * size + i] = coset_of[g.mul(x, r)] as u32;
            }
        }
        GSet { group: g.clone(), size, action }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x] as usize
    }

    pub fn validate(&self) -> Result<()> {
        let g = &*self.group;
        for x in 0..self.size {
            if self.act(0, x) != x {
                return input("identity does not act trivially");
            }
        }
        if self.action.iter().any(|&y| y as usize >= self.size) {
            return input("action leaves the set");
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                for x in 0..self.size {
                    if self.act(ab, x) != self.act(a, self.act(b, x)) {
                        return input("action is not compatible with multiplication");
                    }
                }
            }
        }
        Ok(())
    }

    /// Disjoint union; points of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        let size = self.size + other.size;
        let mut action = Vec::with_capacity(self.group.order() * size);
        for g in 0..self.group.order() {
            action.extend((0..self.size).map(|x| self.act(g, x) as u32));
            action.extend((0..other.size).map(|x| (self.size + other.act(g, x)) as u32));
        }
        GSet { group: self.group.clone(), size, action }
    }

    /// Cartesian product with diagonal action; point `(x, y)` is `x * other.len() + y`.
    pub fn product(&self, other: &GSet) -> GSet {
        let size = self.size * other.size;
        let mut action = Vec::with_capacity(self.group.order() * size);
        for g in 0..self.group.order() {
            for x in 0..self.size {
                for y in 0..other.size {
                    action.push((self.act(g, x) * other.size + other.act(g, y)) as u32);
                }
            }
        }
        GSet { group: self.group.clone(), size, action }
    }

    pub fn stabilizer(&self, lattice: &SubgroupLattice, x: usize) -> SubgroupId {
        let set =
            crate::BitSet::from_indices(self.group.order(), (0..self.group.order()).filter(|&g| self.act(g, x) == x));
        lattice.id_of(&set).expect("stabilizers are subgroups")
    }

    /// Least point of each orbit.
    pub fn orbit_reps(&self) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut reps = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for g in 0..self.group.order() {
                seen[self.act(g, x)] = true;
            }
        }
        reps
    }

    pub fn fixed_points(&self, lattice: &SubgroupLattice, h: SubgroupId) -> Vec<usize> {
        let members: Vec<usize> = lattice.subgroup(h).members.iter().collect();
        (0..self.size).filter(|&x| members.iter().all(|&g| self.act(g, x) == x)).collect()
    }
}

/// A chain `X_0 → X_1 → … → X_n` of G-sets and equivariant maps;
/// `maps[i - 1]` is `f_i : X_{i-1} → X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexInstance {
    sets: Vec<GSet>,
    maps: Vec<Vec<usize>>,
}

impl SimplexInstance {
    pub fn new(sets: Vec<GSet>, maps: Vec<Vec<usize>>) -> Result<SimplexInstance> {
        let s = SimplexInstance { sets, maps };
        s.validate()?;
        Ok(s)
    }

    pub fn degree(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn sets(&self) -> &[GSet] {
        &self.sets
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.sets[0].group()
    }

    pub fn validate(&self) -> Result<()> {
        if self.sets.is_empty() || self.maps.len() + 1 != self.sets.len() {
            return input("a simplex needs n + 1 sets and n maps");
        }
        let g = self.sets[0].group();
        if self.sets.iter().any(|s| s.group() != g) {
            return Err(Error::Mismatch("G-sets over different groups".into()));
        }
        for (i, f) in self.maps.iter().enumerate() {
            let (src, dst) = (&self.sets[i], &self.sets[i + 1]);
            if f.len() != src.len() || f.iter().any(|&y| y >= dst.len()) {
                return input(format!("map f_{} has the wrong shape", i + 1));
            }
            for a in 0..g.order() {
                for x in 0..src.len() {
                    if f[src.act(a, x)] != dst.act(a, f[x]) {
                        return input(format!("map f_{} is not equivariant", i + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// The chain of projections `G/S_0 → … → G/S_n`.
    pub fn from_slice(lattice: &SubgroupLattice, s: &Slice) -> Result<SimplexInstance> {
        if !s.is_chain(lattice) {
            return input("not a chain of subgroups");
        }
        let g = lattice.group();
        let sets: Vec<GSet> = s.0.iter().map(|&h| GSet::cosets(lattice, h)).collect();
        let mut maps = Vec::new();
        for i in 1..s.0.len() {
            let (_, reps) = left_cosets(g, &lattice.subgroup(s.0[i - 1]).members);
            let (coset_of, _) = left_cosets(g, &lattice.subgroup(s.0[i]).members);
            maps.push(reps.iter().map(|&r| coset_of[r]).collect());
        }
        SimplexInstance::new(sets, maps)
    }

    /// The point chain `• → … → •`.
    pub fn point(group: &Arc<FiniteGroup>, n: usize) -> SimplexInstance {
        SimplexInstance { sets: vec![GSet::point(group); n + 1], maps: vec![vec![0]; n] }
    }

    pub fn empty(group: &Arc<FiniteGroup>, n: usize) -> SimplexInstance {
        SimplexInstance { sets: vec![GSet::empty(group); n + 1], maps: vec![Vec::new(); n] }
    }

    pub fn disjoint_union(&self, other: &SimplexInstance) -> Result<SimplexInstance> {
        if self.degree() != other.degree() {
            return Err(Error::Mismatch("simplices of different degree".into()));
        }
        let sets = self.sets.iter().zip(&other.sets).map(|(a, b)| a.disjoint_union(b)).collect();
        let maps = (0..self.maps.len())
            .map(|i| {
                let shift = self.sets[i + 1].len();
                let mut m = self.maps[i].clone();
                m.extend(other.maps[i].iter().map(|&y| y + shift));
                m
            })
            .collect();
        SimplexInstance::new(sets, maps)
    }

    pub fn product(&self, other: &SimplexInstance) -> Result<SimplexInstance> {
        if self.degree() != other.degree() {
            return Err(Error::Mismatch("simplices of different degree".into()));
        }
        let sets = self.sets.iter().zip(&other.sets).map(|(a, b)| a.product(b)).collect();
        let maps = (0..self.maps.len())
            .map(|i| {
                let (w_src, w_dst) = (other.sets[i].len(), other.sets[i + 1].len());
                let mut m = Vec::with_capacity(self.sets[i].len() * w_src);
                for x in 0..self.sets[i].len() {
                    for y in 0..w_src {
                        m.push(self.maps[i][x] * w_dst + other.maps[i][y]);
                    }
                }
                m
            })
            .collect();
        SimplexInstance::new(sets, maps)
    }

    /// Image of `x ∈ X_0` in each `X_i`.
    pub fn trajectory(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        for f in &self.maps {
            out.push(f[*out.last().unwrap()]);
        }
        out
    }

    /// `Σ_{x ∈ [G\X_0]} ⟨(G_x, G_{f_1 x}, …)⟩`.
    pub fn linearize(&self, table: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
        if table.degree() != self.degree() {
            return Err(Error::Mismatch("simplex degree does not match the table".into()));
        }
        if !Arc::ptr_eq(table.lattice().group(), self.group()) && **table.lattice().group() != **self.group() {
            return Err(Error::Mismatch("simplex and table are over different groups".into()));
        }
        let l = &**table.lattice();
        let mut counts: HashMap<usize, BigInt> = HashMap::new();
        for x in self.sets[0].orbit_reps() {
            let s = Slice(self.trajectory(x).iter().zip(&self.sets).map(|(&y, set)| set.stabilizer(l, y)).collect());
            *counts.entry(table.class_of_checked(&s)?).or_default() += 1;
        }
        BurnsideElt::from_terms(table, counts)
    }

    /// `|Inv_S̄(X)|` by nested fixed points: `Y_n = X_n^{S_n}`,
    /// `Y_i = f_{i+1}^{-1}(Y_{i+1}) ∩ X_i^{S_i}`; the answer is `|Y_0|`.
    pub fn phi_fixed_points(&self, lattice: &SubgroupLattice, s: &Slice) -> Result<u64> {
        self.check_slice(lattice, s)?;
        let n = self.degree();
        let mut keep: Vec<bool> = vec![false; self.sets[n].len()];
        for y in self.sets[n].fixed_points(lattice, s.0[n]) {
            keep[y] = true;
        }
        for i in (0..n).rev() {
            let mut next = vec![false; self.sets[i].len()];
            for x in self.sets[i].fixed_points(lattice, s.0[i]) {
                if keep[self.maps[i][x]] {
                    next[x] = true;
                }
            }
            keep = next;
        }
        Ok(keep.iter().filter(|&&b| b).count() as u64)
    }

    /// Counts morphisms `(G/S_0 → … → G/S_n) → X` directly: every choice of
    /// `μ_i(S_i) ∈ X_i^{S_i}` is extended to the whole orbit and the squares
    /// are checked coset by coset.
    pub fn phi_morphism_count(&self, lattice: &SubgroupLattice, s: &Slice) -> Result<u64> {
        self.check_slice(lattice, s)?;
        let g = lattice.group();
        let chain = SimplexInstance::from_slice(lattice, s)?;
        let coset_reps: Vec<Vec<usize>> = s.0.iter().map(|&h| left_cosets(g, &lattice.subgroup(h).members).1).collect();
        let candidates: Vec<Vec<usize>> =
            s.0.iter().zip(&self.sets).map(|(&h, set)| set.fixed_points(lattice, h)).collect();
        let mut count = 0u64;
        let mut choice: Vec<usize> = Vec::with_capacity(s.0.len());
        // mu_i(r S_i) = r · x_i for each coset representative r
        let extend =
            |i: usize, x: usize| -> Vec<usize> { coset_reps[i].iter().map(|&r| self.sets[i].act(r, x)).collect() };
        fn rec(
            me: &SimplexInstance,
            chain: &SimplexInstance,
            candidates: &[Vec<usize>],
            extend: &dyn Fn(usize, usize) -> Vec<usize>,
            choice: &mut Vec<usize>,
            prev: Option<Vec<usize>>,
            count: &mut u64,
        ) {
            let i = choice.len();
            if i == candidates.len() {
                *count += 1;
                return;
            }
            for &x in &candidates[i] {
                let mu = extend(i, x);
                if let Some(p) = &prev {
                    let ok = (0..chain.sets[i - 1].len()).all(|c| me.maps[i - 1][p[c]] == mu[chain.maps[i - 1][c]]);
                    if !ok {
                        continue;
                    }
                }
                choice.push(x);
                rec(me, chain, candidates, extend, choice, Some(mu), count);
                choice.pop();
            }
        }
        rec(self, &chain, &candidates, &extend, &mut choice, None, &mut count);
        Ok(count)
    }

    fn check_slice(&self, lattice: &SubgroupLattice, s: &Slice) -> Result<()> {
        if s.0.len() != self.sets.len() {
            return Err(Error::Mismatch("slice degree does not match the simplex".into()));
        }
        if !s.is_chain(lattice) {
            return input("not a chain of subgroups");
        }
        Ok(())
    }
}

/// A random simplex of degree `n`: each `X_i` is a random disjoint union of
/// coset spaces, and each `f_i` sends every orbit of `X_{i-1}` to a randomly
/// chosen admissible point (one whose stabilizer contains the orbit
/// representative's stabilizer), adding a coset space when none exists.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    lattice: &SubgroupLattice,
    n: usize,
    max_orbits: usize,
) -> SimplexInstance {
    let g = lattice.group();
    let random_set = |rng: &mut R| {
        let k = rng.gen_range(0..=max_orbits);
        (0..k)
            .fold(GSet::empty(g), |acc, _| acc.disjoint_union(&GSet::cosets(lattice, rng.gen_range(0..lattice.len()))))
    };
    let mut sets = vec![random_set(rng)];
    let mut maps = Vec::new();
    for _ in 0..n {
        let src = sets.last().unwrap().clone();
        let mut dst = random_set(rng);
        let mut f = vec![usize::MAX; src.len()];
        for x in src.orbit_reps() {
            let h = src.stabilizer(lattice, x);
            let mut admissible: Vec<usize> = dst.fixed_points(lattice, h);
            if admissible.is_empty() {
                let ups: Vec<SubgroupId> = lattice.above(h).iter().collect();
                let k = *ups.choose(rng).unwrap();
                let base = dst.len();
                dst = dst.disjoint_union(&GSet::cosets(lattice, k));
                admissible = dst.fixed_points(lattice, h).into_iter().filter(|&y| y >= base).collect();
            }
            let y = *admissible.choose(rng).unwrap();
            for a in 0..g.order() {
                f[src.act(a, x)] = dst.act(a, y);
            }
        }
        maps.push(f);
        sets.push(dst);
    }
    SimplexInstance::new(sets, maps).expect("random simplices are valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::named_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table(spec: &str, n: usize) -> Arc<SliceClassTable> {
        let l = SubgroupLattice::new(Arc::new(named_group(spec).unwrap())).unwrap();
        Arc::new(SliceClassTable::new(Arc::new(l), n).unwrap())
    }

    #[test]
    fn chain_linearizes_to_basis() {
        let t = table("S3", 1);
        let l = t.lattice();
        for c in 0..t.len() {
            let sx = SimplexInstance::from_slice(l, t.rep(c)).unwrap();
            assert_eq!(sx.linearize(&t).unwrap(), BurnsideElt::basis(&t, c));
            for d in 0..t.len() {
                let m = u64::from(t.mark(d, c) + if d > c { t.mark_slices(t.rep(d), t.rep(c)) as u32 } else { 0 });
                assert_eq!(sx.phi_fixed_points(l, t.rep(d)).unwrap(), m);
                assert_eq!(sx.phi_morphism_count(l, t.rep(d)).unwrap(), m);
            }
        }
    }

    #[test]
    fn c2_product_simplex() {
        let t = table("C2", 1);
        let x = SimplexInstance::from_slice(t.lattice(), t.rep(1)).unwrap();
        let sq = x.product(&x).unwrap();
        assert_eq!(sq.sets()[0].len(), 4);
        assert_eq!(sq.linearize(&t).unwrap(), BurnsideElt::basis(&t, 1).scaled(&BigInt::from(2)));
        let u = x.disjoint_union(&SimplexInstance::from_slice(t.lattice(), t.rep(2)).unwrap()).unwrap();
        assert_eq!(
            u.linearize(&t).unwrap(),
            BurnsideElt::from_terms(&t, [(1, BigInt::from(1)), (2, BigInt::from(1))]).unwrap()
        );
    }

    #[test]
    fn point_and_empty() {
        let t = table("S3", 2);
        let g = t.lattice().group();
        let p = SimplexInstance::point(g, 2);
        let e = SimplexInstance::empty(g, 2);
        assert_eq!(p.linearize(&t).unwrap(), BurnsideElt::unit(&t));
        assert!(e.linearize(&t).unwrap().is_zero());
        for s in t.classes() {
            assert_eq!(p.phi_fixed_points(t.lattice(), s).unwrap(), 1);
            assert_eq!(e.phi_fixed_points(t.lattice(), s).unwrap(), 0);
            assert_eq!(p.phi_morphism_count(t.lattice(), s).unwrap(), 1);
        }
    }

    #[test]
    fn rejects_non_equivariant_map() {
        let t = table("C2", 1);
        let g = t.lattice().group();
        let free = GSet::cosets(t.lattice(), 0);
        let pt = GSet::point(g);
        assert!(SimplexInstance::new(vec![pt, free.clone()], vec![vec![0]]).is_err());
        assert!(SimplexInstance::new(vec![free.clone(), free], vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn random_instances_agree() {
        let t = table("S3", 2);
        let l = t.lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let sx = random_instance(&mut rng, l, 2, 3);
            let ghost = sx.linearize(&t).unwrap().ghost();
            for (c, s) in t.classes().iter().enumerate() {
                let a = sx.phi_fixed_points(l, s).unwrap();
                assert_eq!(sx.phi_morphism_count(l, s).unwrap(), a);
                assert_eq!(ghost.values()[c], BigInt::from(a));
            }
        }
    }
}
