mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use sburnside::biset::{self, context, Biset};
use sburnside::group::{quotient, subgroup_embedding};
use sburnside::{BitSet, BurnsideElt, DirectProduct, FiniteGroup, GroupHom, SliceClassTable};

/// Re-indexes `members` (indices in `from`) as a member set of `into`.
fn reindex(from: &FiniteGroup, into: &FiniteGroup, members: &BitSet) -> BitSet {
    BitSet::from_indices(into.order(), members.iter().map(|x| into.index_of(from.element(x)).unwrap()))
}

fn random_element(rng: &mut ChaCha8Rng, t: &Arc<SliceClassTable>) -> BurnsideElt {
    let terms = (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0..t.len()), BigInt::from(rng.gen_range(-2..=3))));
    BurnsideElt::from_terms(t, terms).unwrap()
}

/// `x ↦ g x g⁻¹` from the materialized subgroup `a` onto `b`, both sitting in `g`.
fn conjugation(g: &FiniteGroup, x0: usize, a: &GroupHom, b: &GroupHom) -> GroupHom {
    let map = (0..a.source().order())
        .map(|y| {
            let img = g.conjugate(x0, a.apply(y));
            b.source().index_of(g.element(img)).unwrap()
        })
        .collect();
    GroupHom::new(a.source().clone(), b.source().clone(), map).unwrap()
}

#[test]
fn mackey_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for spec in ["S3", "D8", "A4", "C2xS3", "S4"] {
        let g = group(spec);
        for n in 0..=1 {
            let tg = context(&g, n).unwrap();
            let l = tg.lattice().clone();
            for _ in 0..8 {
                let (k, h) = (rng.gen_range(0..l.len()), rng.gen_range(0..l.len()));
                let ek = subgroup_embedding(&g, &l.subgroup(k).members).unwrap();
                let eh = subgroup_embedding(&g, &l.subgroup(h).members).unwrap();
                let (tk, th) = (context(ek.source(), n).unwrap(), context(eh.source(), n).unwrap());
                let x = random_element(&mut rng, &th);
                let lhs = biset::induction(&eh, &x, &tg).and_then(|y| biset::restriction(&ek, &y, &tk)).unwrap();

                let mut rhs = BurnsideElt::zero(&tk);
                for x0 in l.double_coset_reps(k, h) {
                    let xi = g.inv(x0);
                    // A = H ∩ g⁻¹Kg inside H, B = K ∩ gHg⁻¹ inside K
                    let a = l.intersection(h, l.conjugate(xi, k));
                    let b = l.intersection(k, l.conjugate(x0, h));
                    let ea = subgroup_embedding(&g, &l.subgroup(a).members).unwrap();
                    let eb = subgroup_embedding(&g, &l.subgroup(b).members).unwrap();
                    let a_in_h =
                        subgroup_embedding(eh.source(), &reindex(&g, eh.source(), &l.subgroup(a).members)).unwrap();
                    let b_in_k =
                        subgroup_embedding(ek.source(), &reindex(&g, ek.source(), &l.subgroup(b).members)).unwrap();
                    let (ta, tb) = (context(a_in_h.source(), n).unwrap(), context(b_in_k.source(), n).unwrap());
                    let c = conjugation(&g, x0, &ea, &eb);
                    // ea/eb and a_in_h/b_in_k materialize the same permutation groups
                    let c = GroupHom::new(
                        a_in_h.source().clone(),
                        b_in_k.source().clone(),
                        (0..c.source().order())
                            .map(|y| {
                                let src = ea.source().index_of(a_in_h.source().element(y)).unwrap();
                                b_in_k.source().index_of(c.target().element(c.apply(src))).unwrap()
                            })
                            .collect(),
                    )
                    .unwrap();
                    let y = biset::restriction(&a_in_h, &x, &ta).unwrap();
                    let y = biset::isogation(&c, &y, &tb).unwrap();
                    let y = biset::induction(&b_in_k, &y, &tk).unwrap();
                    rhs = rhs.plus(&y).unwrap();
                }
                assert_eq!(lhs, rhs, "{spec}/{n}: Mackey fails for K = {k}, H = {h}");
            }
        }
    }
}

#[test]
fn transitivity_of_restriction_and_induction() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for spec in ["D8", "A4", "S4", "C2xD8"] {
        let g = group(spec);
        for n in 0..=2 {
            let tg = context(&g, n).unwrap();
            let l = tg.lattice().clone();
            for _ in 0..5 {
                let h = rng.gen_range(0..l.len());
                let below: Vec<usize> = l.below(h).iter().collect();
                let k = below[rng.gen_range(0..below.len())];
                let eh = subgroup_embedding(&g, &l.subgroup(h).members).unwrap();
                let ek = subgroup_embedding(&g, &l.subgroup(k).members).unwrap();
                let ekh = subgroup_embedding(eh.source(), &reindex(&g, eh.source(), &l.subgroup(k).members)).unwrap();
                let (th, tk) = (context(eh.source(), n).unwrap(), context(ek.source(), n).unwrap());
                let tkh = context(ekh.source(), n).unwrap();

                // K materialized inside H and inside G: same permutations, possibly other indices
                let relabel = GroupHom::new(
                    ekh.source().clone(),
                    ek.source().clone(),
                    ekh.source().elements().iter().map(|p| ek.source().index_of(p).unwrap()).collect(),
                )
                .unwrap();

                let x = random_element(&mut rng, &tg);
                let direct = biset::restriction(&ek, &x, &tk).unwrap();
                let staged = biset::restriction(&eh, &x, &th)
                    .and_then(|y| biset::restriction(&ekh, &y, &tkh))
                    .and_then(|y| biset::isogation(&relabel, &y, &tk))
                    .unwrap();
                assert_eq!(direct, staged, "{spec}/{n}: Res not transitive");

                let y = random_element(&mut rng, &tk);
                let direct = biset::induction(&ek, &y, &tg).unwrap();
                let staged = biset::isogation(&relabel.inverse().unwrap(), &y, &tkh)
                    .and_then(|z| biset::induction(&ekh, &z, &th))
                    .and_then(|z| biset::induction(&eh, &z, &tg))
                    .unwrap();
                assert_eq!(direct, staged, "{spec}/{n}: Ind not transitive");
            }
        }
    }
}

#[test]
fn biset_composition_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for (ks, hs, gs) in [("C2", "S3", "C3"), ("S3", "C2", "S3"), ("C2xC2", "D8", "C2")] {
        let (k, h, g) = (group(ks), group(hs), group(gs));
        let dkh = DirectProduct::new(&k, &h).unwrap();
        let dhg = DirectProduct::new(&h, &g).unwrap();
        let lkh = sburnside::SubgroupLattice::new(dkh.group().clone()).unwrap();
        let lhg = sburnside::SubgroupLattice::new(dhg.group().clone()).unwrap();
        for n in 0..=1 {
            let (tk, th, tg) = (context(&k, n).unwrap(), context(&h, n).unwrap(), context(&g, n).unwrap());
            for _ in 0..6 {
                let v = Biset::from_subgroup(&dkh, &lkh.subgroup(rng.gen_range(0..lkh.len())).members).unwrap();
                let u = Biset::from_subgroup(&dhg, &lhg.subgroup(rng.gen_range(0..lhg.len())).members).unwrap();
                let vu = u.compose_after(&v).unwrap();
                let x = random_element(&mut rng, &tg);
                let staged = biset::biset_apply(&u, &x, &th).and_then(|y| biset::biset_apply(&v, &y, &tk)).unwrap();
                let direct = biset::biset_apply(&vu, &x, &tk).unwrap();
                assert_eq!(direct, staged, "{ks}×{hs}×{gs}/{n}");
            }
        }
    }
}

#[test]
fn faces_and_degeneracies_commute_with_elementary_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for spec in ["S3", "D8", "A4", "C2xS3"] {
        let g = group(spec);
        let tg = tower(&g, 2);
        let l = tg[0].lattice().clone();
        for h in l.class_reps().iter().copied() {
            let eh = subgroup_embedding(&g, &l.subgroup(h).members).unwrap();
            let th = tower(eh.source(), 2);
            let x = random_element(&mut rng, &tg[2]);
            let y = random_element(&mut rng, &th[1]);
            for j in 1..=2 {
                let a = x.face(j, &tg[1]).and_then(|z| biset::restriction(&eh, &z, &th[1])).unwrap();
                let b = biset::restriction(&eh, &x, &th[2]).and_then(|z| z.face(j, &th[1])).unwrap();
                assert_eq!(a, b, "{spec}: d_{j} ∘ Res");
            }
            for i in 0..=1 {
                let a = y.degeneracy(i, &th[2]).and_then(|z| biset::induction(&eh, &z, &tg[2])).unwrap();
                let b = biset::induction(&eh, &y, &tg[1]).and_then(|z| z.degeneracy(i, &tg[2])).unwrap();
                assert_eq!(a, b, "{spec}: s_{i} ∘ Ind");
            }
            let a = y.face(1, &th[0]).and_then(|z| biset::induction(&eh, &z, &tg[0])).unwrap();
            let b = biset::induction(&eh, &y, &tg[1]).and_then(|z| z.face(1, &tg[0])).unwrap();
            assert_eq!(a, b, "{spec}: d_1 ∘ Ind");
        }
        for nid in (0..l.len()).filter(|&s| l.is_normal(s)) {
            let q = quotient(&g, &l.subgroup(nid).members).unwrap();
            let tq = tower(q.target(), 2);
            let x = random_element(&mut rng, &tg[1]);
            let y = random_element(&mut rng, &tq[1]);
            for i in 0..=1 {
                let a = x.degeneracy(i, &tg[2]).and_then(|z| biset::deflation(&q, &z, &tq[2])).unwrap();
                let b = biset::deflation(&q, &x, &tq[1]).and_then(|z| z.degeneracy(i, &tq[2])).unwrap();
                assert_eq!(a, b, "{spec}: s_{i} ∘ Def");
                let a = y.degeneracy(i, &tq[2]).and_then(|z| biset::inflation(&q, &z, &tg[2])).unwrap();
                let b = biset::inflation(&q, &y, &tg[1]).and_then(|z| z.degeneracy(i, &tg[2])).unwrap();
                assert_eq!(a, b, "{spec}: s_{i} ∘ Inf");
            }
            let a = x.face(1, &tg[0]).and_then(|z| biset::deflation(&q, &z, &tq[0])).unwrap();
            let b = biset::deflation(&q, &x, &tq[1]).and_then(|z| z.face(1, &tq[0])).unwrap();
            assert_eq!(a, b, "{spec}: d_1 ∘ Def");
            let a = y.face(1, &tq[0]).and_then(|z| biset::inflation(&q, &z, &tg[0])).unwrap();
            let b = biset::inflation(&q, &y, &tg[1]).and_then(|z| z.face(1, &tg[0])).unwrap();
            assert_eq!(a, b, "{spec}: d_1 ∘ Inf");
        }
    }
}

#[test]
fn external_product_is_bilinear_on_basis() {
    let (h, g) = (group("C2"), group("S3"));
    let dp = DirectProduct::new(&h, &g).unwrap();
    let prod = context(dp.group(), 1).unwrap();
    let (th, tg) = (context(&h, 1).unwrap(), context(&g, 1).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..20 {
        let (a, a2, b) = (random_element(&mut rng, &th), random_element(&mut rng, &th), random_element(&mut rng, &tg));
        let lhs = biset::external_product(&dp, &a.plus(&a2).unwrap(), &b, &prod).unwrap();
        let rhs = biset::external_product(&dp, &a, &b, &prod)
            .unwrap()
            .plus(&biset::external_product(&dp, &a2, &b, &prod).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
    let one = biset::external_product(&dp, &BurnsideElt::unit(&th), &BurnsideElt::unit(&tg), &prod).unwrap();
    assert_eq!(one, BurnsideElt::unit(&prod));
}
