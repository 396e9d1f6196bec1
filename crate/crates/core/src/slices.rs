//! The poset of n-slices `S_0 ≤ … ≤ S_n`, its classes under simultaneous
//! conjugation, and the Möbius function of the componentwise order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use crate::error::{input, Error, Result};
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::ring::ProductTable;

pub const DEFAULT_MAX_SLICES: usize = 100_000;

/// A chain of subgroups given by lattice ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice(pub Vec<SubgroupId>);

impl Slice {
    pub fn new(parts: Vec<SubgroupId>) -> Slice {
        Slice(parts)
    }

    pub fn parts(&self) -> &[SubgroupId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_chain(&self, lattice: &SubgroupLattice) -> bool {
        !self.0.is_empty() && self.0.windows(2).all(|w| lattice.leq(w[0], w[1]))
    }

    /// `g S̄ g⁻¹`.
    pub fn conjugate(&self, lattice: &SubgroupLattice, g: usize) -> Slice {
        Slice(self.0.iter().map(|&s| lattice.conjugate(g, s)).collect())
    }

    /// Componentwise inclusion `self ⪯ other`.
    pub fn leq(&self, other: &Slice, lattice: &SubgroupLattice) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| lattice.leq(a, b))
    }

    pub fn intersect(&self, other: &Slice, lattice: &SubgroupLattice) -> Slice {
        Slice(self.0.iter().zip(&other.0).map(|(&a, &b)| lattice.intersection(a, b)).collect())
    }
}

impl fmt::Debug for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All n-slices of a group, grouped into conjugacy classes listed in a fixed
/// linear extension of `⪯_G`.
pub struct SliceClassTable {
    lattice: Arc<SubgroupLattice>,
    n: usize,
    classes: Vec<Slice>,
    class_of: HashMap<Slice, usize>,
    normalizer: Vec<SubgroupId>,
    weyl: Vec<usize>,
    slice_count: usize,
    marks: OnceLock<Vec<u32>>,
    products: OnceLock<ProductTable>,
}

impl SliceClassTable {
    pub fn new(lattice: Arc<SubgroupLattice>, n: usize) -> Result<SliceClassTable> {
        SliceClassTable::with_cap(lattice, n, DEFAULT_MAX_SLICES)
    }

    pub fn with_cap(lattice: Arc<SubgroupLattice>, n: usize, max_slices: usize) -> Result<SliceClassTable> {
        let slices = all_slices(&lattice, n, max_slices)?;
        let g_order = lattice.group().order();
        let mut class_of: HashMap<Slice, usize> = HashMap::with_capacity(slices.len());
        let mut reps: Vec<(Vec<usize>, Slice, Vec<Slice>)> = Vec::new();
        for s in &slices {
            if class_of.contains_key(s) {
                continue;
            }
            let mut orbit: Vec<Slice> = (0..g_order).map(|g| s.conjugate(&lattice, g)).collect();
            orbit.sort();
            orbit.dedup();
            let rep = orbit[0].clone();
            for o in &orbit {
                class_of.insert(o.clone(), usize::MAX);
            }
            let key = rep.0.iter().map(|&p| lattice.order(p)).collect();
            reps.push((key, rep, orbit));
        }
        reps.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let mut classes = Vec::with_capacity(reps.len());
        for (idx, (_, rep, orbit)) in reps.into_iter().enumerate() {
            for o in orbit {
                class_of.insert(o, idx);
            }
            classes.push(rep);
        }
        let normalizer: Vec<SubgroupId> = classes
            .iter()
            .map(|c| c.0.iter().fold(lattice.whole(), |acc, &s| lattice.intersection(acc, lattice.normalizer(s))))
            .collect();
        let weyl =
            classes.iter().zip(&normalizer).map(|(c, &nrm)| lattice.order(nrm) / lattice.order(c.0[0])).collect();
        Ok(SliceClassTable {
            lattice,
            n,
            classes,
            class_of,
            normalizer,
            weyl,
            slice_count: slices.len(),
            marks: OnceLock::new(),
            products: OnceLock::new(),
        })
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of slices before taking conjugacy classes.
    pub fn slice_count(&self) -> usize {
        self.slice_count
    }

    pub fn classes(&self) -> &[Slice] {
        &self.classes
    }

    pub fn rep(&self, class: usize) -> &Slice {
        &self.classes[class]
    }

    /// All slices of the poset (every member of every class).
    pub fn slices(&self) -> impl Iterator<Item = (&Slice, usize)> {
        self.class_of.iter().map(|(s, &c)| (s, c))
    }

    pub fn class_of(&self, s: &Slice) -> Option<usize> {
        self.class_of.get(s).copied()
    }

    pub fn class_of_checked(&self, s: &Slice) -> Result<usize> {
        self.class_of(s).ok_or_else(|| Error::Input(format!("{s:?} is not a {}-slice of this group", self.n)))
    }

    /// `N_G(S̄) = ∩ N_G(S_i)` for the class representative.
    pub fn normalizer(&self, class: usize) -> SubgroupId {
        self.normalizer[class]
    }

    pub fn normalizer_of(&self, s: &Slice) -> SubgroupId {
        let l = &*self.lattice;
        s.0.iter().fold(l.whole(), |acc, &x| l.intersection(acc, l.normalizer(x)))
    }

    /// `|N_G(S̄)| / |S_0|`.
    pub fn weyl_order(&self, class: usize) -> usize {
        self.weyl[class]
    }

    /// The class of `(G, …, G)`, always last.
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    /// The class of `(1, …, 1)`, always first.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Whether some conjugate of class `a` lies componentwise below class `b`.
    pub fn leq_classes(&self, a: usize, b: usize) -> bool {
        let l = &*self.lattice;
        let (sa, sb) = (&self.classes[a], &self.classes[b]);
        (0..l.group().order()).any(|g| sa.conjugate(l, g).leq(sb, l))
    }

    /// `φ_S̄(⟨T̄⟩)`: the number of cosets `g T_0` with `g⁻¹ S_i g ≤ T_i` for all i.
    pub fn mark_slices(&self, s: &Slice, t: &Slice) -> u64 {
        let l = &*self.lattice;
        let g = l.group();
        let hits =
            (0..g.order()).filter(|&x| s.0.iter().zip(&t.0).all(|(&si, &ti)| l.leq(si, l.conjugate(x, ti)))).count();
        (hits / l.order(t.0[0])) as u64
    }

    /// Dense mark table, `marks()[i * len + j] = φ_i(⟨j⟩)`.
    pub fn marks(&self) -> &[u32] {
        self.marks.get_or_init(|| {
            let k = self.len();
            let mut m = vec![0u32; k * k];
            for i in 0..k {
                for j in i..k {
                    m[i * k + j] = self.mark_slices(&self.classes[i], &self.classes[j]) as u32;
                }
            }
            m
        })
    }

    #[inline]
    pub fn mark(&self, i: usize, j: usize) -> u32 {
        let k = self.len();
        self.marks()[i * k + j]
    }

    /// Cached products of all pairs of basis elements.
    pub fn products(&self) -> &ProductTable {
        self.products.get_or_init(|| ProductTable::new(self))
    }

    /// Whether `T̄` and `S̄` are interleaved: `T_0 ≤ S_0 ≤ T_1 ≤ S_1 ≤ … ≤ T_n ≤ S_n`.
    pub fn interleaved(&self, t: &Slice, s: &Slice) -> bool {
        let l = &*self.lattice;
        t.0.len() == s.0.len() && (0..t.0.len()).all(|i| l.leq(t.0[i], s.0[i]) && (i == 0 || l.leq(s.0[i - 1], t.0[i])))
    }

    /// `μ_Π(T̄, S̄)` by the product formula over interleaved chains.
    pub fn mobius_pi(&self, t: &Slice, s: &Slice) -> Result<BigInt> {
        self.check_pair(t, s)?;
        if !self.interleaved(t, s) {
            return Ok(BigInt::from(0));
        }
        let l = &*self.lattice;
        Ok(t.0.iter().zip(&s.0).map(|(&a, &b)| l.mobius(a, b)).product())
    }

    /// `μ_Π(T̄, S̄)` by the defining recursion on the interval `[T̄, S̄]` of
    /// the slice poset.
    pub fn mobius_pi_recursive(&self, t: &Slice, s: &Slice) -> Result<BigInt> {
        self.check_pair(t, s)?;
        let l = &*self.lattice;
        if !t.leq(s, l) {
            return Ok(BigInt::from(0));
        }
        let mut interval = interval_slices(l, t, s);
        sort_by_orders(l, &mut interval);
        let mut mu: Vec<BigInt> = Vec::with_capacity(interval.len());
        for (k, u) in interval.iter().enumerate() {
            if k == 0 {
                mu.push(BigInt::from(1));
                continue;
            }
            let acc: BigInt = (0..k).filter(|&v| interval[v].leq(u, l)).map(|v| &mu[v]).sum();
            mu.push(-acc);
        }
        Ok(mu.pop().unwrap_or_default())
    }

    /// `μ_Π(T̄, S̄)` for every slice `T̄ ⪯ S̄`, by the recursion
    /// `μ(T̄,S̄) = −Σ_{T̄ ≺ Ū ⪯ S̄} μ(Ū,S̄)` over the down-set of `S̄`.
    pub fn mobius_pi_column(&self, s: &Slice) -> Result<Vec<(Slice, i64)>> {
        if s.0.len() != self.n + 1 {
            return input("slice degree does not match the table");
        }
        let l = &*self.lattice;
        let bottom = Slice(vec![l.trivial(); self.n + 1]);
        let mut down = interval_slices(l, &bottom, s);
        sort_by_orders(l, &mut down);
        let k = down.len();
        let mut mu = vec![0i64; k];
        for a in (0..k).rev() {
            if a == k - 1 {
                mu[a] = 1;
                continue;
            }
            let mut acc = 0i64;
            for b in a + 1..k {
                if down[a].leq(&down[b], l) {
                    acc = acc.checked_add(mu[b]).ok_or_else(|| Error::Internal("Möbius overflow".into()))?;
                }
            }
            mu[a] = -acc;
        }
        Ok(down.into_iter().zip(mu).collect())
    }

    fn check_pair(&self, t: &Slice, s: &Slice) -> Result<()> {
        if t.0.len() != self.n + 1 || s.0.len() != self.n + 1 {
            return input("slice degree does not match the table");
        }
        if !t.is_chain(&self.lattice) || !s.is_chain(&self.lattice) {
            return input("not a chain of subgroups");
        }
        Ok(())
    }
}

/// Every chain `S_0 ≤ … ≤ S_n`, by depth-first extension.
pub fn all_slices(lattice: &SubgroupLattice, n: usize, max_slices: usize) -> Result<Vec<Slice>> {
    let mut out = Vec::new();
    let mut stack: Vec<SubgroupId> = Vec::with_capacity(n + 1);
    fn rec(l: &SubgroupLattice, n: usize, cap: usize, stack: &mut Vec<SubgroupId>, out: &mut Vec<Slice>) -> Result<()> {
        if stack.len() == n + 1 {
            if out.len() >= cap {
                return Err(Error::Size { what: format!("number of {n}-slices"), limit: cap });
            }
            out.push(Slice(stack.clone()));
            return Ok(());
        }
        let choices: Vec<SubgroupId> = match stack.last() {
            None => (0..l.len()).collect(),
            Some(&prev) => l.above(prev).iter().collect(),
        };
        for c in choices {
            stack.push(c);
            rec(l, n, cap, stack, out)?;
            stack.pop();
        }
        Ok(())
    }
    rec(lattice, n, max_slices, &mut stack, &mut out)?;
    Ok(out)
}

/// Chains `Ū` with `T̄ ⪯ Ū ⪯ S̄`.
fn interval_slices(l: &SubgroupLattice, t: &Slice, s: &Slice) -> Vec<Slice> {
    let n = t.0.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(l: &SubgroupLattice, t: &Slice, s: &Slice, cur: &mut Vec<SubgroupId>, out: &mut Vec<Slice>) {
        let i = cur.len();
        if i == t.0.len() {
            out.push(Slice(cur.clone()));
            return;
        }
        let opts: Vec<SubgroupId> = l.interval(t.0[i], s.0[i]).filter(|&u| i == 0 || l.leq(cur[i - 1], u)).collect();
        for u in opts {
            cur.push(u);
            rec(l, t, s, cur, out);
            cur.pop();
        }
    }
    rec(l, t, s, &mut cur, &mut out);
    out
}

fn sort_by_orders(l: &SubgroupLattice, v: &mut [Slice]) {
    v.sort_by_cached_key(|s| (s.0.iter().map(|&p| l.order(p)).sum::<usize>(), s.0.clone()));
}
