//! Brute-force oracles shared by the integration tests. They work on raw
//! member sets and the multiplication table only, never on the lattice ids
//! or cached tables of the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use sburnside::biset::context;
use sburnside::{named_group, BitSet, FiniteGroup, SliceClassTable};

/// Every group the group-spec grammar names with order at most 24: the families
/// C<n>, D<n>, S3, S4, A4, Q8 and all products of them (as multisets of
/// factors) within the bound. Aliases of smaller families (S2, A3, S1, …)
/// are left out; isomorphic spellings such as C6 and C2xC3 are both kept.
pub fn named_24() -> &'static [&'static str] {
    static CELL: OnceLock<Vec<&'static str>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut factors: Vec<(String, usize)> = (2..=24).map(|k| (format!("C{k}"), k)).collect();
        factors.extend((4..=24).step_by(2).map(|k| (format!("D{k}"), k)));
        factors.extend([("S3", 6), ("S4", 24), ("A4", 12), ("Q8", 8)].map(|(s, k)| (s.to_string(), k)));
        let mut out = vec!["C1".to_string()];
        fn extend(factors: &[(String, usize)], from: usize, prefix: &str, order: usize, out: &mut Vec<String>) {
            for (i, (f, k)) in factors.iter().enumerate().skip(from) {
                if order * k > 24 {
                    continue;
                }
                let spec = if prefix.is_empty() { f.clone() } else { format!("{prefix}x{f}") };
                out.push(spec.clone());
                extend(factors, i, &spec, order * k, out);
            }
        }
        extend(&factors, 0, "", 1, &mut out);
        out.into_iter().map(|s| &*Box::leak(s.into_boxed_str())).collect()
    })
}

pub fn order_of(spec: &str) -> usize {
    named_group(spec).unwrap().order()
}

pub fn named_upto(max: usize) -> Vec<&'static str> {
    named_24().iter().copied().filter(|s| order_of(s) <= max).collect()
}

pub fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(named_group(spec).unwrap())
}

pub fn table(spec: &str, n: usize) -> Arc<SliceClassTable> {
    context(&group(spec), n).unwrap()
}

/// Every subgroup, as the closures of all subsets of at most three elements.
pub fn brute_subgroups(g: &FiniteGroup) -> Vec<BitSet> {
    let n = g.order();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut two: Vec<BitSet> = Vec::new();
    for a in 0..n {
        for b in a..n {
            let c = g.closure([a, b]);
            if seen.insert(c.clone()) {
                two.push(c);
            }
        }
    }
    for h in &two {
        for x in 0..n {
            if !h.contains(x) {
                let mut gens: Vec<usize> = h.iter().collect();
                gens.push(x);
                seen.insert(g.closure(gens));
            }
        }
    }
    let mut out: Vec<BitSet> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn conjugate_set(g: &FiniteGroup, x: usize, s: &BitSet) -> BitSet {
    BitSet::from_indices(g.order(), s.iter().map(|m| g.conjugate(x, m)))
}

pub fn brute_chains(g: &FiniteGroup, n: usize) -> Vec<Vec<BitSet>> {
    let subs = brute_subgroups(g);
    let mut chains: Vec<Vec<BitSet>> = subs.iter().map(|s| vec![s.clone()]).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for c in &chains {
            for s in &subs {
                if c.last().unwrap().is_subset(s) {
                    let mut d = c.clone();
                    d.push(s.clone());
                    next.push(d);
                }
            }
        }
        chains = next;
    }
    chains
}

/// Number of n-slices up to simultaneous conjugation.
pub fn brute_class_count(g: &FiniteGroup, n: usize) -> usize {
    let mut canon: BTreeSet<Vec<BitSet>> = BTreeSet::new();
    for c in brute_chains(g, n) {
        let best = (0..g.order()).map(|x| c.iter().map(|s| conjugate_set(g, x, s)).collect::<Vec<_>>()).min().unwrap();
        canon.insert(best);
    }
    canon.len()
}

pub fn members(t: &SliceClassTable, class: usize) -> Vec<BitSet> {
    t.rep(class).parts().iter().map(|&s| t.lattice().subgroup(s).members.clone()).collect()
}

/// `#{g : g⁻¹ S_i g ⊆ T_i ∀ i} / |T_0|` on raw member sets.
pub fn brute_mark(g: &FiniteGroup, s: &[BitSet], t: &[BitSet]) -> u64 {
    let hits = (0..g.order())
        .filter(|&x| {
            let xi = g.inv(x);
            s.iter().zip(t).all(|(si, ti)| conjugate_set(g, xi, si).is_subset(ti))
        })
        .count();
    (hits / t[0].count()) as u64
}

/// `|∩ N_G(S_i)| / |S_0|` on raw member sets.
pub fn brute_weyl(g: &FiniteGroup, s: &[BitSet]) -> usize {
    let nrm = (0..g.order()).filter(|&x| s.iter().all(|si| conjugate_set(g, x, si) == *si)).count();
    nrm / s[0].count()
}

/// Fraction-free Gaussian elimination (Bareiss).
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..k {
        if m[i][i].is_zero() {
            match (i + 1..k).find(|&r| !m[r][i].is_zero()) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let v = (&m[r][c] * &m[i][i] - &m[r][i] * &m[i][c]) / &prev;
                m[r][c] = v;
            }
            m[r][i] = BigInt::zero();
        }
        prev = m[i][i].clone();
    }
    sign * &m[k - 1][k - 1]
}

/// Slice tables of degrees `0..=max` over one shared lattice, as faces and
/// degeneracies require.
pub fn tower(g: &Arc<FiniteGroup>, max: usize) -> Vec<Arc<SliceClassTable>> {
    let lattice = Arc::new(sburnside::SubgroupLattice::new(g.clone()).unwrap());
    (0..=max).map(|n| Arc::new(SliceClassTable::new(lattice.clone(), n).unwrap())).collect()
}
