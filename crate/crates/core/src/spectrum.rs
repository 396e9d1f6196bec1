//! Prime ideals of `B_n(G)`: Sylow closure of slices, p-local idempotents and
//! the connected components of the spectrum.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{input, internal, Result};
use crate::idempotents::idempotent;
use crate::lattice::{is_prime, prime_divisors, SubgroupId, SubgroupLattice};
use crate::ring::QBurnsideElt;
use crate::slices::{Slice, SliceClassTable};

/// The prime ideal `I_{S̄,p}` (`p = 0` for characteristic zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub class: usize,
    pub characteristic: u64,
}

/// `(P S_0, …, P S_n)` for a p-subgroup `P` normalizing every `S_i`.
pub fn slice_plus_with(lattice: &SubgroupLattice, s: &Slice, p_sub: SubgroupId) -> Result<Slice> {
    let parts = s.0.iter().map(|&si| lattice.product(p_sub, si)).collect::<Result<Vec<_>>>()?;
    Ok(Slice(parts))
}

/// `S̄⁺_p = (P S_0, …, P S_n)` with `P` the canonical Sylow p-subgroup of `N_G(S̄)`.
pub fn slice_plus_p(table: &SliceClassTable, s: &Slice, p: u64) -> Result<Slice> {
    let l = &**table.lattice();
    let sylow = l.sylow(table.normalizer_of(s), p)?;
    let out = slice_plus_with(l, s, sylow)?;
    if !s.leq(&out, l) {
        return internal("Sylow closure is not above the slice");
    }
    Ok(out)
}

/// Iterates `S̄ ↦ S̄⁺_p`, passing to the class representative after each step,
/// until the Sylow subgroup lies in `S_0`. Returns the class representative.
pub fn slice_infinity(table: &SliceClassTable, s: &Slice, p: u64) -> Result<Slice> {
    let c = table.class_of_checked(s)?;
    Ok(table.rep(slice_infinity_class(table, c, p)?).clone())
}

pub fn slice_infinity_class(table: &SliceClassTable, class: usize, p: u64) -> Result<usize> {
    let mut cur = class;
    loop {
        let next = table.class_of_checked(&slice_plus_p(table, table.rep(cur), p)?)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

pub fn normalize_ideal(table: &SliceClassTable, class: usize, p: u64) -> Result<PrimeIdeal> {
    if p == 0 {
        return Ok(PrimeIdeal { class, characteristic: 0 });
    }
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    let k = slice_infinity_class(table, class, p)?;
    if (table.weyl_order(k) as u64).is_multiple_of(p) {
        return internal("normalized class has Weyl order divisible by p");
    }
    Ok(PrimeIdeal { class: k, characteristic: p })
}

/// Whether `J ⊆ I` for normalized ideals.
pub fn ideal_contains(table: &SliceClassTable, i: PrimeIdeal, j: PrimeIdeal) -> Result<bool> {
    if i == j {
        return Ok(true);
    }
    if i.characteristic > 0 && j.characteristic == 0 {
        return Ok(slice_infinity_class(table, j.class, i.characteristic)? == i.class);
    }
    Ok(false)
}

/// `ẽ_S̄ = Σ e_{S̄'}` over the classes `S̄'` with `S̄'→_p = S̄`.
pub fn p_local_idempotent(table: &Arc<SliceClassTable>, class: usize, p: u64) -> Result<QBurnsideElt> {
    check_p_class(table, class, p)?;
    let arrow = arrow_classes(table, p)?;
    sum_fiber(table, class, p, &arrow, |c| idempotent(table, c))
}

/// `ẽ_S̄` for every class with Weyl order prime to `p`.
pub fn p_local_idempotents(table: &Arc<SliceClassTable>, p: u64) -> Result<Vec<(usize, QBurnsideElt)>> {
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    let arrow = arrow_classes(table, p)?;
    let es: Vec<QBurnsideElt> = (0..table.len()).map(|c| idempotent(table, c)).collect();
    (0..table.len())
        .filter(|&c| !(table.weyl_order(c) as u64).is_multiple_of(p))
        .map(|c| Ok((c, sum_fiber(table, c, p, &arrow, |d| es[d].clone())?)))
        .collect()
}

/// `S̄→_p` for every class.
pub fn arrow_classes(table: &SliceClassTable, p: u64) -> Result<Vec<usize>> {
    (0..table.len()).map(|c| slice_infinity_class(table, c, p)).collect()
}

fn check_p_class(table: &SliceClassTable, class: usize, p: u64) -> Result<()> {
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    if (table.weyl_order(class) as u64).is_multiple_of(p) {
        return input(format!("class {class} has Weyl order divisible by {p}"));
    }
    Ok(())
}

fn sum_fiber(
    table: &Arc<SliceClassTable>,
    class: usize,
    p: u64,
    arrow: &[usize],
    mut e: impl FnMut(usize) -> QBurnsideElt,
) -> Result<QBurnsideElt> {
    check_p_class(table, class, p)?;
    let mut out = QBurnsideElt::zero(table);
    for (c, _) in arrow.iter().enumerate().filter(|(_, &a)| a == class) {
        out = out.plus(&e(c))?;
    }
    let pb = BigInt::from(p);
    if out.terms().any(|(_, q)| (q.denom() % &pb).is_zero()) {
        return internal(format!("p-local idempotent of class {class} has a denominator divisible by {p}"));
    }
    Ok(out)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn partition(keys: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (c, &k) in keys.iter().enumerate() {
        groups.entry(k).or_default().push(c);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Components joined through shared closed points: `S̄ ~ S̄'` when
/// `S̄→_p = S̄'→_p` for some prime `p` dividing `|G|`.
pub fn components_by_closure(table: &SliceClassTable) -> Result<Vec<Vec<usize>>> {
    let k = table.len();
    let mut uf = UnionFind((0..k).collect());
    for p in prime_divisors(table.lattice().group().order() as u64) {
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for c in 0..k {
            let target = slice_infinity_class(table, c, p)?;
            match first.get(&target) {
                Some(&other) => uf.union(c, other),
                None => {
                    first.insert(target, c);
                }
            }
        }
    }
    let keys: Vec<usize> = (0..k).map(|c| uf.find(c)).collect();
    Ok(partition(&keys))
}

/// Components grouped by the class of `(D^∞(S_0), …, D^∞(S_n))`.
pub fn components_by_perfect_core(table: &SliceClassTable) -> Result<Vec<Vec<usize>>> {
    let l = &**table.lattice();
    let keys = table
        .classes()
        .iter()
        .map(|s| table.class_of_checked(&Slice(s.0.iter().map(|&x| l.perfect_core(x)).collect())))
        .collect::<Result<Vec<_>>>()?;
    Ok(partition(&keys))
}

/// Connected components of `Spec B_n(G)` as sets of classes (ordered by their
/// least class), computed by both criteria, which must agree.
pub fn connected_components(table: &SliceClassTable) -> Result<Vec<Vec<usize>>> {
    let a = components_by_closure(table)?;
    let b = components_by_perfect_core(table)?;
    if a != b {
        return internal("the two descriptions of the connected components disagree");
    }
    Ok(b)
}

pub fn is_spec_connected(table: &SliceClassTable) -> Result<bool> {
    let connected = connected_components(table)?.len() == 1;
    if connected != table.lattice().is_solvable() {
        return internal("connectedness of the spectrum disagrees with solvability");
    }
    Ok(connected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::named_group;

    fn table(spec: &str, n: usize) -> Arc<SliceClassTable> {
        let l = SubgroupLattice::new(Arc::new(named_group(spec).unwrap())).unwrap();
        Arc::new(SliceClassTable::new(Arc::new(l), n).unwrap())
    }

    fn class_of_orders(t: &SliceClassTable, orders: &[usize]) -> usize {
        let l = t.lattice();
        let hits: Vec<usize> =
            (0..t.len()).filter(|&c| t.rep(c).0.iter().map(|&s| l.order(s)).collect::<Vec<_>>() == orders).collect();
        assert_eq!(hits.len(), 1, "{orders:?}");
        hits[0]
    }

    #[test]
    fn s3_closures() {
        let t = table("S3", 1);
        let l = t.lattice();
        let bottom = t.rep(0).clone();
        let plus = slice_plus_p(&t, &bottom, 2).unwrap();
        assert_eq!(plus.0.iter().map(|&s| l.order(s)).collect::<Vec<_>>(), vec![2, 2]);
        let c22 = class_of_orders(&t, &[2, 2]);
        let c33 = class_of_orders(&t, &[3, 3]);
        assert_eq!(slice_infinity_class(&t, 0, 2).unwrap(), c22);
        assert_eq!(t.weyl_order(c22), 1);
        assert_eq!(slice_infinity_class(&t, 0, 3).unwrap(), c33);
        assert_eq!(t.weyl_order(c33), 2);
        assert_eq!(slice_plus_p(&t, t.rep(t.top()), 2).unwrap(), t.rep(t.top()).clone());
        assert_eq!(slice_plus_p(&t, &bottom, 5).unwrap(), bottom);
        assert_eq!(normalize_ideal(&t, 0, 2).unwrap(), PrimeIdeal { class: c22, characteristic: 2 });
        assert_eq!(normalize_ideal(&t, 4, 0).unwrap(), PrimeIdeal { class: 4, characteristic: 0 });
        assert!(normalize_ideal(&t, 0, 6).is_err());
        let i = PrimeIdeal { class: c22, characteristic: 2 };
        let j = PrimeIdeal { class: 0, characteristic: 0 };
        assert!(ideal_contains(&t, i, j).unwrap());
        assert!(!ideal_contains(&t, j, i).unwrap());
        assert!(ideal_contains(&t, i, i).unwrap());
    }

    #[test]
    fn c2_local_idempotent() {
        let t = table("C2", 0);
        let es = p_local_idempotents(&t, 2).unwrap();
        assert_eq!(es.len(), 1);
        assert_eq!(es[0].1, QBurnsideElt::unit(&t));
        assert!(p_local_idempotent(&t, 0, 2).is_err());
        let s3 = table("S3", 1);
        for (c, e) in p_local_idempotents(&s3, 5).unwrap() {
            assert_eq!(e, idempotent(&s3, c));
        }
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&table("S3", 1)).unwrap().len(), 1);
        assert_eq!(connected_components(&table("A5", 0)).unwrap().len(), 2);
        assert!(is_spec_connected(&table("S4", 1)).unwrap());
        assert!(!is_spec_connected(&table("A5", 0)).unwrap());
        assert!(is_spec_connected(&table("Q8", 1)).unwrap());
    }

    #[test]
    fn sylow_choice_does_not_matter() {
        let t = table("S4", 1);
        let l = t.lattice();
        for p in [2, 3] {
            for s in t.classes() {
                let nrm = t.normalizer_of(s);
                let canonical = t.class_of(&slice_plus_p(&t, s, p).unwrap()).unwrap();
                let target = l.order(l.sylow(nrm, p).unwrap());
                for q in l.below(nrm).iter().filter(|&q| l.order(q) == target) {
                    let other = slice_plus_with(l, s, q).unwrap();
                    assert_eq!(t.class_of(&other).unwrap(), canonical);
                }
            }
        }
    }
}
