//! Biset operations on `B_n`: restriction, induction, inflation, deflation and
//! transport along homomorphisms, external products, and the generic
//! `U ×_G (−)` for a transitive biset `U = (H × G)/L`.
//!
//! The closed formulas come in two shapes. For a homomorphism `φ: K → M`,
//! pulling back an `M`-chain `M/S̄` along `φ` gives
//! `Σ_{g ∈ [φ(K)\M/S_0]} ⟨φ⁻¹(g S̄ g⁻¹)⟩` (restriction, inflation), and pushing a
//! `K`-chain forward gives `⟨φ(T̄)⟩` (induction, deflation, isomorphisms).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::bitset::BitSet;
use crate::error::{input, internal, Error, Result};
use crate::group::{quotient, subgroup_embedding, DirectProduct, FiniteGroup, GroupHom};
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::ring::BurnsideElt;
use crate::simplex::{GSet, SimplexInstance};
use crate::slices::{Slice, SliceClassTable};

/// Builds the subgroup lattice and the degree-`n` slice table of a group.
pub fn context(group: &Arc<FiniteGroup>, n: usize) -> Result<Arc<SliceClassTable>> {
    let lattice = Arc::new(SubgroupLattice::new(group.clone())?);
    Ok(Arc::new(SliceClassTable::new(lattice, n)?))
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_tables(hom: &GroupHom, source: &SliceClassTable, target: &SliceClassTable) -> Result<()> {
    if !same_group(hom.source(), source.lattice().group()) || !same_group(hom.target(), target.lattice().group()) {
        return Err(Error::Mismatch("homomorphism does not match the slice tables".into()));
    }
    if source.degree() != target.degree() {
        return Err(Error::Mismatch("slice tables of different degree".into()));
    }
    Ok(())
}

/// Pulls an element of `B_n(M)` back along `φ: K → M` to `B_n(K)`.
/// `x` lives over `from` (the `M` table), the result over `to` (the `K` table).
pub fn pullback(hom: &GroupHom, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
    let from = x.table();
    check_tables(hom, to, from)?;
    let lm = &**from.lattice();
    let lk = &**to.lattice();
    let pre: Vec<SubgroupId> = lm
        .subgroups()
        .iter()
        .map(|s| lk.id_of(&hom.preimage(&s.members)).expect("preimages of subgroups are subgroups"))
        .collect();
    let image = lm.id_of(&hom.image(&hom.source().full_set())).expect("image is a subgroup");
    x.map_basis(to, |s| {
        Ok(lm
            .double_coset_reps(image, s.0[0])
            .into_iter()
            .map(|g| (Slice(s.0.iter().map(|&si| pre[lm.conjugate(g, si)]).collect()), BigInt::one()))
            .collect())
    })
}

/// Pushes an element of `B_n(K)` forward along `φ: K → M`: `⟨T̄⟩ ↦ ⟨φ(T̄)⟩`.
pub fn pushforward(hom: &GroupHom, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
    let from = x.table();
    check_tables(hom, from, to)?;
    let lk = &**from.lattice();
    let lm = &**to.lattice();
    let img: Vec<SubgroupId> = lk
        .subgroups()
        .iter()
        .map(|s| lm.id_of(&hom.image(&s.members)).expect("images of subgroups are subgroups"))
        .collect();
    x.map_basis(to, |s| Ok(vec![(Slice(s.0.iter().map(|&t| img[t]).collect()), BigInt::one())]))
}

/// `Res^G_H` along the inclusion `emb: H → G`.
pub fn restriction(emb: &GroupHom, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
    if !emb.is_injective() {
        return input("restriction needs an injective homomorphism");
    }
    pullback(emb, x, to)
}

/// `Ind^G_H` along the inclusion `emb: H → G`.
pub fn induction(emb: &GroupHom, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
    if !emb.is_injective() {
        return input("induction needs an injective homomorphism");
    }
    pushforward(emb, x, to)
}

/// `Inf^G_{G/N}` along the quotient map `q: G → G/N`.
pub fn inflation(q: &GroupHom, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
    if !q.is_surjective() {
        return input("inflation needs a surjective homomorphism");
    }
    pullback(q, x, to)
}

/// `Def^G_{G/N}` along the quotient map `q: G → G/N`.
pub fn deflation(q: &GroupHom, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
    if !q.is_surjective() {
        return input("deflation needs a surjective homomorphism");
    }
    pushforward(q, x, to)
}

/// Transport along an isomorphism.
pub fn isogation(f: &GroupHom, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
    if !(f.is_injective() && f.is_surjective()) {
        return input("transport needs an isomorphism");
    }
    pushforward(f, x, to)
}

/// `⟨S̄⟩ × ⟨T̄⟩ = ⟨(S_0 × T_0, …, S_n × T_n)⟩` in `B_n(G × H)`.
pub fn external_product(
    dp: &DirectProduct,
    x: &BurnsideElt,
    y: &BurnsideElt,
    to: &Arc<SliceClassTable>,
) -> Result<BurnsideElt> {
    let (tx, ty) = (x.table(), y.table());
    if tx.degree() != ty.degree() || tx.degree() != to.degree() {
        return Err(Error::Mismatch("external product of different degrees".into()));
    }
    if !same_group(dp.left(), tx.lattice().group())
        || !same_group(dp.right(), ty.lattice().group())
        || !same_group(dp.group(), to.lattice().group())
    {
        return Err(Error::Mismatch("direct product does not match the slice tables".into()));
    }
    let (lx, ly, lp) = (&**tx.lattice(), &**ty.lattice(), &**to.lattice());
    let mut out = BurnsideElt::zero(to);
    for (i, a) in x.terms() {
        for (j, b) in y.terms() {
            let (s, t) = (tx.rep(i), ty.rep(j));
            let parts =
                s.0.iter()
                    .zip(&t.0)
                    .map(|(&si, &ti)| {
                        lp.id_of(&dp.product_set(&lx.subgroup(si).members, &ly.subgroup(ti).members))
                            .expect("products of subgroups are subgroups")
                    })
                    .collect();
            out.add_term(to.class_of_checked(&Slice(parts))?, a * b);
        }
    }
    Ok(out)
}

/// A finite `(H, G)`-biset: commuting left `H` and right `G` actions on `0..size`.
#[derive(Clone, Debug)]
pub struct Biset {
    left: Arc<FiniteGroup>,
    right: Arc<FiniteGroup>,
    size: usize,
    // left_act[h * size + u] = h·u, right_act[g * size + u] = u·g
    left_act: Vec<u32>,
    right_act: Vec<u32>,
}

impl Biset {
    /// `(H × G)/L` with `h · (x, y)L · g = (h x, g⁻¹ y)L`.
    pub fn from_subgroup(dp: &DirectProduct, l: &BitSet) -> Result<Biset> {
        let p = dp.group();
        if !p.is_subgroup(l) {
            return input("L is not a subgroup of H × G");
        }
        let (coset_of, reps) = crate::group::left_cosets(p, l);
        let size = reps.len();
        let (h, g) = (dp.left(), dp.right());
        let mut left_act = vec![0u32; h.order() * size];
        for a in 0..h.order() {
            let pa = dp.pair(a, 0);
            for (u, &r) in reps.iter().enumerate() {
                left_act[a * size + u] = coset_of[p.mul(pa, r)] as u32;
            }
        }
        let mut right_act = vec![0u32; g.order() * size];
        for b in 0..g.order() {
            let pb = dp.pair(0, g.inv(b));
            for (u, &r) in reps.iter().enumerate() {
                right_act[b * size + u] = coset_of[p.mul(pb, r)] as u32;
            }
        }
        Ok(Biset { left: h.clone(), right: g.clone(), size, left_act, right_act })
    }

    pub fn left(&self) -> &Arc<FiniteGroup> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteGroup> {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act_left(&self, h: usize, u: usize) -> usize {
        self.left_act[h * self.size + u] as usize
    }

    #[inline]
    pub fn act_right(&self, u: usize, g: usize) -> usize {
        self.right_act[g * self.size + u] as usize
    }

    pub fn disjoint_union(&self, other: &Biset) -> Result<Biset> {
        if !same_group(&self.left, &other.left) || !same_group(&self.right, &other.right) {
            return Err(Error::Mismatch("bisets over different groups".into()));
        }
        let size = self.size + other.size;
        let stack = |a: &[u32], b: &[u32], n: usize| -> Vec<u32> {
            let mut out = Vec::with_capacity(n * size);
            for x in 0..n {
                out.extend_from_slice(&a[x * self.size..(x + 1) * self.size]);
                out.extend(b[x * other.size..(x + 1) * other.size].iter().map(|&v| v + self.size as u32));
            }
            out
        };
        Ok(Biset {
            left: self.left.clone(),
            right: self.right.clone(),
            size,
            left_act: stack(&self.left_act, &other.left_act, self.left.order()),
            right_act: stack(&self.right_act, &other.right_act, self.right.order()),
        })
    }

    /// `U ×_G X` for a left `G`-set `X`, with the class of each pair
    /// `(u, x)` (indexed `u * |X| + x`).
    pub fn tensor(&self, x: &GSet) -> Result<(GSet, Vec<usize>)> {
        let g = &self.right;
        if !same_group(g, x.group()) {
            return Err(Error::Mismatch("G-set is over the wrong group".into()));
        }
        let w = x.len();
        let total = self.size * w;
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for b in 0..g.order() {
            for u in 0..self.size {
                let ub = self.act_right(u, b);
                for y in 0..w {
                    let (r1, r2) = (find(&mut parent, ub * w + y), find(&mut parent, u * w + x.act(b, y)));
                    if r1 != r2 {
                        parent[r1.max(r2)] = r1.min(r2);
                    }
                }
            }
        }
        let mut class = vec![usize::MAX; total];
        let mut count = 0;
        let mut root_class = vec![usize::MAX; total];
        for i in 0..total {
            let r = find(&mut parent, i);
            if root_class[r] == usize::MAX {
                root_class[r] = count;
                count += 1;
            }
            class[i] = root_class[r];
        }
        let mut first = vec![usize::MAX; count];
        for (i, &c) in class.iter().enumerate() {
            if first[c] == usize::MAX {
                first[c] = i;
            }
        }
        let h = &self.left;
        let mut action = vec![0u32; h.order() * count];
        for a in 0..h.order() {
            for (c, &i) in first.iter().enumerate() {
                let (u, y) = (i / w, i % w);
                action[a * count + c] = class[self.act_left(a, u) * w + y] as u32;
            }
        }
        Ok((GSet::new(h, count, action)?, class))
    }

    /// `U ×_G (X_0 → … → X_n)`.
    pub fn apply_simplex(&self, sx: &SimplexInstance) -> Result<SimplexInstance> {
        let mut sets = Vec::with_capacity(sx.sets().len());
        let mut classes = Vec::with_capacity(sx.sets().len());
        for s in sx.sets() {
            let (t, c) = self.tensor(s)?;
            sets.push(t);
            classes.push(c);
        }
        let mut maps = Vec::with_capacity(sx.maps().len());
        for (i, f) in sx.maps().iter().enumerate() {
            let (ws, wt) = (sx.sets()[i].len(), sx.sets()[i + 1].len());
            let mut m = vec![usize::MAX; sets[i].len()];
            for u in 0..self.size {
                for y in 0..ws {
                    m[classes[i][u * ws + y]] = classes[i + 1][u * wt + f[y]];
                }
            }
            maps.push(m);
        }
        SimplexInstance::new(sets, maps)
    }

    /// `V ×_H U` for an `(K, H)`-biset `V` and this `(H, G)`-biset `U`.
    pub fn compose_after(&self, v: &Biset) -> Result<Biset> {
        if !same_group(v.right(), &self.left) {
            return Err(Error::Mismatch("bisets do not compose".into()));
        }
        // V ×_H U as a K-set is the tensor of V with U seen as a left H-set;
        // the right G-action is carried along on the U factor.
        let u_as_hset = GSet::new(&self.left, self.size, self.left_act.clone())?;
        let (tensor, class) = v.tensor(&u_as_hset)?;
        let size = tensor.len();
        let k = v.left().clone();
        let left_act =
            (0..k.order()).flat_map(|a| (0..size).map(move |c| (a, c))).map(|(a, c)| tensor.act(a, c) as u32).collect();
        let mut first = vec![usize::MAX; size];
        for (i, &c) in class.iter().enumerate() {
            if first[c] == usize::MAX {
                first[c] = i;
            }
        }
        let g = &self.right;
        let mut right_act = vec![0u32; g.order() * size];
        for b in 0..g.order() {
            for (c, &i) in first.iter().enumerate() {
                let (vv, u) = (i / self.size, i % self.size);
                right_act[b * size + c] = class[vv * self.size + self.act_right(u, b)] as u32;
            }
        }
        Ok(Biset { left: k, right: g.clone(), size, left_act, right_act })
    }
}

/// `x ↦ U ×_G x`, computed on explicit chains of coset spaces and decomposed
/// over `H`.
pub fn biset_apply(u: &Biset, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
    let from = x.table();
    if !same_group(u.right(), from.lattice().group()) || !same_group(u.left(), to.lattice().group()) {
        return Err(Error::Mismatch("biset does not match the slice tables".into()));
    }
    let mut out = BurnsideElt::zero(to);
    for (i, c) in x.terms() {
        let sx = SimplexInstance::from_slice(from.lattice(), from.rep(i))?;
        let y = u.apply_simplex(&sx)?.linearize(to)?;
        out = out.plus(&y.scaled(c))?;
    }
    Ok(out)
}

/// `{(k, φ(k))} ≤ K × M`: the `(K, M)`-biset realizing pullback along `φ`.
/// `dp` must be `K × M`.
pub fn graph_left(dp: &DirectProduct, hom: &GroupHom) -> BitSet {
    BitSet::from_indices(dp.group().order(), (0..hom.source().order()).map(|k| dp.pair(k, hom.apply(k))))
}

/// `{(φ(k), k)} ≤ M × K`: the `(M, K)`-biset realizing pushforward along `φ`.
/// `dp` must be `M × K`.
pub fn graph_right(dp: &DirectProduct, hom: &GroupHom) -> BitSet {
    BitSet::from_indices(dp.group().order(), (0..hom.source().order()).map(|k| dp.pair(hom.apply(k), k)))
}

/// The five-step factorization `Ind^H_D ∘ Inf^D_{D/C} ∘ Iso(f) ∘ Def^B_{B/A} ∘ Res^G_B`
/// of `(H × G)/L`, with `D, C` the projection and kernel of `L` on `H` and
/// `B, A` those on `G`.
pub struct Factorization {
    pub res: GroupHom,
    pub def: GroupHom,
    pub iso: GroupHom,
    pub inf: GroupHom,
    pub ind: GroupHom,
}

pub fn factorize(dp: &DirectProduct, l: &BitSet) -> Result<Factorization> {
    let p = dp.group();
    if !p.is_subgroup(l) {
        return input("L is not a subgroup of H × G");
    }
    let (h, g) = (dp.left(), dp.right());
    let pairs: Vec<(usize, usize)> = l.iter().map(|x| dp.components(x)).collect();
    let d = BitSet::from_indices(h.order(), pairs.iter().map(|pr| pr.0));
    let c = BitSet::from_indices(h.order(), pairs.iter().filter(|pr| pr.1 == 0).map(|pr| pr.0));
    let b = BitSet::from_indices(g.order(), pairs.iter().map(|pr| pr.1));
    let a = BitSet::from_indices(g.order(), pairs.iter().filter(|pr| pr.0 == 0).map(|pr| pr.1));

    let res = subgroup_embedding(g, &b)?;
    let def = quotient(res.source(), &res.preimage(&a))?;
    let ind = subgroup_embedding(h, &d)?;
    let inf = quotient(ind.source(), &ind.preimage(&c))?;

    let b_index = |x: usize| res.source().index_of(g.element(x)).expect("member of B");
    let d_index = |x: usize| ind.source().index_of(h.element(x)).expect("member of D");
    let (ba, dc) = (def.target(), inf.target());
    let mut map = vec![usize::MAX; ba.order()];
    for &(x, y) in &pairs {
        let src = def.apply(b_index(y));
        let dst = inf.apply(d_index(x));
        if map[src] != usize::MAX && map[src] != dst {
            return internal("L does not induce a well-defined map B/A → D/C");
        }
        map[src] = dst;
    }
    let iso = GroupHom::new(ba.clone(), dc.clone(), map)?;
    if !(iso.is_injective() && iso.is_surjective()) {
        return internal("B/A → D/C is not an isomorphism");
    }
    Ok(Factorization { res, def, iso, inf, ind })
}

impl Factorization {
    /// Applies the five elementary steps to `x ∈ B_n(G)`, landing in `to = B_n(H)`.
    pub fn apply(&self, x: &BurnsideElt, to: &Arc<SliceClassTable>) -> Result<BurnsideElt> {
        let n = x.table().degree();
        let tb = context(self.res.source(), n)?;
        let tba = context(self.def.target(), n)?;
        let tdc = context(self.iso.target(), n)?;
        let td = context(self.ind.source(), n)?;
        let y = restriction(&self.res, x, &tb)?;
        let y = deflation(&self.def, &y, &tba)?;
        let y = isogation(&self.iso, &y, &tdc)?;
        let y = inflation(&self.inf, &y, &td)?;
        induction(&self.ind, &y, to)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::named_group;

    fn grp(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(named_group(spec).unwrap())
    }

    fn orders(t: &SliceClassTable, c: usize) -> Vec<usize> {
        t.rep(c).0.iter().map(|&s| t.lattice().order(s)).collect()
    }

    fn class_by_orders(t: &SliceClassTable, o: &[usize]) -> usize {
        let hits: Vec<usize> = (0..t.len()).filter(|&c| orders(t, c) == o).collect();
        assert_eq!(hits.len(), 1, "{o:?}");
        hits[0]
    }

    #[test]
    fn s3_c3_restriction_and_induction() {
        let g = grp("S3");
        let tg = context(&g, 1).unwrap();
        let c3 = tg.lattice().class_reps()[2];
        assert_eq!(tg.lattice().order(c3), 3);
        let emb = subgroup_embedding(&g, &tg.lattice().subgroup(c3).members).unwrap();
        let th = context(emb.source(), 1).unwrap();
        let x = BurnsideElt::basis(&tg, class_by_orders(&tg, &[2, 6]));
        let r = restriction(&emb, &x, &th).unwrap();
        assert_eq!(r, BurnsideElt::basis(&th, class_by_orders(&th, &[1, 3])));
        let dp = DirectProduct::new(emb.source(), &g).unwrap();
        let u = Biset::from_subgroup(&dp, &graph_left(&dp, &emb)).unwrap();
        assert_eq!(biset_apply(&u, &x, &th).unwrap(), r);

        let y = BurnsideElt::basis(&th, class_by_orders(&th, &[1, 3]));
        let i = induction(&emb, &y, &tg).unwrap();
        assert_eq!(i, BurnsideElt::basis(&tg, class_by_orders(&tg, &[1, 3])));
        let dp2 = DirectProduct::new(&g, emb.source()).unwrap();
        let v = Biset::from_subgroup(&dp2, &graph_right(&dp2, &emb)).unwrap();
        assert_eq!(biset_apply(&v, &y, &tg).unwrap(), i);
        assert_eq!(restriction(&emb, &BurnsideElt::unit(&tg), &th).unwrap(), BurnsideElt::unit(&th));
    }

    #[test]
    fn s3_inflation_deflation() {
        let g = grp("S3");
        let tg = context(&g, 1).unwrap();
        let c3 = tg.lattice().class_reps()[2];
        let q = quotient(&g, &tg.lattice().subgroup(c3).members).unwrap();
        let tq = context(q.target(), 1).unwrap();
        let x = BurnsideElt::basis(&tq, class_by_orders(&tq, &[1, 2]));
        assert_eq!(inflation(&q, &x, &tg).unwrap(), BurnsideElt::basis(&tg, class_by_orders(&tg, &[3, 6])));
        let y = BurnsideElt::basis(&tg, class_by_orders(&tg, &[2, 6]));
        assert_eq!(deflation(&q, &y, &tq).unwrap(), BurnsideElt::basis(&tq, class_by_orders(&tq, &[2, 2])));
        assert!(inflation(&subgroup_embedding(&g, &tg.lattice().subgroup(c3).members).unwrap(), &x, &tg).is_err());
    }

    #[test]
    fn identity_biset() {
        let g = grp("D8");
        let t = context(&g, 1).unwrap();
        let dp = DirectProduct::new(&g, &g).unwrap();
        let u = Biset::from_subgroup(&dp, &graph_left(&dp, &GroupHom::identity(&g))).unwrap();
        for c in 0..t.len() {
            let x = BurnsideElt::basis(&t, c);
            assert_eq!(biset_apply(&u, &x, &t).unwrap(), x);
        }
    }

    #[test]
    fn external_products() {
        let c2 = grp("C2");
        let t = context(&c2, 0).unwrap();
        let dp = DirectProduct::new(&c2, &c2).unwrap();
        let tp = context(dp.group(), 0).unwrap();
        let one = BurnsideElt::basis(&t, 0);
        let p = external_product(&dp, &one, &one, &tp).unwrap();
        assert_eq!(p, BurnsideElt::basis(&tp, 0));
        assert_eq!(p.mark(0), BigInt::from(4));
    }

    #[test]
    fn five_step_factorization_on_s3_squared() {
        let g = grp("S3");
        let t = context(&g, 1).unwrap();
        let dp = DirectProduct::new(&g, &g).unwrap();
        let lp = SubgroupLattice::new(dp.group().clone()).unwrap();
        for s in lp.subgroups().iter().step_by(3) {
            let u = Biset::from_subgroup(&dp, &s.members).unwrap();
            let f = factorize(&dp, &s.members).unwrap();
            for c in 0..t.len() {
                let x = BurnsideElt::basis(&t, c);
                assert_eq!(f.apply(&x, &t).unwrap(), biset_apply(&u, &x, &t).unwrap());
            }
        }
    }
}
