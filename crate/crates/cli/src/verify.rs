//! The invariant suite behind `sburn verify`. Exhaustive where the ring is
//! small, sampled with a fixed seed where it is not.

use std::sync::Arc;

use anyhow::Result;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sburnside::cokernel::{cokernel_order, verify_exact_sequence, CheckReport};
use sburnside::idempotents::{all_idempotents, verify_products};
use sburnside::lattice::prime_divisors;
use sburnside::simplex::random_instance;
use sburnside::spectrum::{connected_components, p_local_idempotents, slice_plus_with};
use sburnside::{BurnsideElt, QBurnsideElt, Slice, SliceClassTable};

const PAIR_BUDGET: usize = 20_000;
const TRIPLE_BUDGET: usize = 3_000;
const MOBIUS_BUDGET: usize = 2_000_000;

fn pairs(k: usize, rng: &mut StdRng) -> Vec<(usize, usize)> {
    if k * k <= PAIR_BUDGET {
        (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect()
    } else {
        (0..PAIR_BUDGET).map(|_| (rng.gen_range(0..k), rng.gen_range(0..k))).collect()
    }
}

fn scope(k: usize, total: usize, budget: usize) -> &'static str {
    if total <= budget || k == 0 {
        "all"
    } else {
        "sampled"
    }
}

fn report(name: &str, r: Result<(bool, String)>) -> CheckReport {
    match r {
        Ok((pass, detail)) => CheckReport::new(name, pass, detail),
        Err(e) => CheckReport::new(name, false, e.to_string()),
    }
}

fn marks(t: &SliceClassTable) -> Result<(bool, String)> {
    let k = t.len();
    for i in 0..k {
        if t.mark(i, i) as usize != t.weyl_order(i) {
            return Ok((false, format!("diagonal entry {i} is not the Weyl order")));
        }
        if (0..i).any(|j| t.mark_slices(t.rep(i), t.rep(j)) != 0) {
            return Ok((false, format!("row {i} has an entry below the diagonal")));
        }
    }
    let weyl: BigInt = (0..k).map(|c| BigInt::from(t.weyl_order(c))).product();
    Ok((cokernel_order(t) == weyl, format!("triangular, det = ∏|W| = {weyl}")))
}

fn ring_laws(t: &Arc<SliceClassTable>, rng: &mut StdRng) -> Result<(bool, String)> {
    let k = t.len();
    let b: Vec<BurnsideElt> = (0..k).map(|c| BurnsideElt::basis(t, c)).collect();
    let unit = BurnsideElt::unit(t);
    for x in &b {
        if x.multiply(&unit)? != *x {
            return Ok((false, "unit law fails".into()));
        }
    }
    let ps = pairs(k, rng);
    for &(i, j) in &ps {
        let p = b[i].multiply(&b[j])?;
        if p != b[j].multiply(&b[i])? {
            return Ok((false, format!("⟨{i}⟩⟨{j}⟩ is not commutative")));
        }
        if p.ghost() != b[i].ghost().pointwise(&b[j].ghost())? {
            return Ok((false, format!("ghost is not multiplicative on ({i}, {j})")));
        }
    }
    let triples = if k * k * k <= TRIPLE_BUDGET {
        (0..k).flat_map(|a| (0..k).flat_map(move |b| (0..k).map(move |c| (a, b, c)))).collect::<Vec<_>>()
    } else {
        (0..TRIPLE_BUDGET).map(|_| (rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k))).collect()
    };
    for &(x, y, z) in &triples {
        if b[x].multiply(&b[y])?.multiply(&b[z])? != b[x].multiply(&b[y].multiply(&b[z])?)? {
            return Ok((false, format!("associativity fails on ({x}, {y}, {z})")));
        }
    }
    Ok((
        true,
        format!(
            "unit; commutativity and ghost multiplicativity on {} pairs ({}); associativity on {} triples ({})",
            ps.len(),
            scope(k, k * k, PAIR_BUDGET),
            triples.len(),
            scope(k, k * k * k, TRIPLE_BUDGET)
        ),
    ))
}

fn oracles(t: &Arc<SliceClassTable>, rng: &mut StdRng) -> Result<(bool, String)> {
    let l = t.lattice();
    let runs = 50;
    for _ in 0..runs {
        let sx = random_instance(rng, l, t.degree(), 3);
        let ghost = sx.linearize(t)?.ghost();
        for (c, s) in t.classes().iter().enumerate() {
            let fixed = sx.phi_fixed_points(l, s)?;
            if BigInt::from(fixed) != ghost.values()[c] || sx.phi_morphism_count(l, s)? != fixed {
                return Ok((false, format!("mark of class {c} disagrees between the three computations")));
            }
        }
    }
    Ok((true, format!("{runs} random simplices: coset formula = fixed points = morphism count")))
}

fn idempotents(t: &Arc<SliceClassTable>, rng: &mut StdRng) -> Result<(bool, String)> {
    let es = all_idempotents(t)?;
    let k = es.len();
    let mut ps = pairs(k, rng);
    ps.extend((0..k).map(|a| (a, a)));
    let n = ps.len();
    let ok = verify_products(&es, ps)?;
    Ok((ok, format!("{k} idempotents: ghost indicators, Σ = 1, {n} products checked directly")))
}

fn mobius(t: &SliceClassTable, rng: &mut StdRng) -> Result<(bool, String)> {
    let all: Vec<Slice> = t.slices().map(|(s, _)| s.clone()).collect();
    let reps: Vec<usize> = if all.len() * t.len() <= MOBIUS_BUDGET {
        (0..t.len()).collect()
    } else {
        (0..MOBIUS_BUDGET / all.len().max(1)).map(|_| rng.gen_range(0..t.len())).collect()
    };
    let mut count = 0usize;
    for &c in &reps {
        let rep = t.rep(c);
        let column: std::collections::HashMap<Slice, i64> = t.mobius_pi_column(rep)?.into_iter().collect();
        for u in &all {
            let expect = BigInt::from(column.get(u).copied().unwrap_or(0));
            if t.mobius_pi(u, rep)? != expect {
                return Ok((false, format!("μ({u:?}, {rep:?}) disagrees with the recursion")));
            }
            count += 1;
        }
    }
    Ok((
        true,
        format!("product formula = recursion on {count} pairs ({})", scope(1, all.len() * t.len(), MOBIUS_BUDGET)),
    ))
}

fn congruences(t: &SliceClassTable) -> Result<(bool, String)> {
    let l = t.lattice();
    let k = t.len();
    for j in 0..k {
        let d = t.mark(j, j);
        if (0..=j).any(|i| !t.mark(i, j).is_multiple_of(d)) {
            return Ok((false, format!("column {j} is not divisible by its diagonal")));
        }
    }
    let mut count = 0usize;
    for c in 0..k {
        let nrm = t.normalizer(c);
        for p in prime_divisors(l.order(nrm) as u64) {
            for sub in l.below(nrm).iter().filter(|&s| s != l.trivial() && l.is_p_group(s, p)) {
                let d = t.class_of_checked(&slice_plus_with(l, t.rep(c), sub)?)?;
                for j in 0..k {
                    if (i64::from(t.mark(c, j)) - i64::from(t.mark(d, j))) % p as i64 != 0 {
                        return Ok((false, format!("congruence mod {p} fails for class {c}, basis {j}")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok((true, format!("{count} congruences mod p; columns divisible by the diagonal")))
}

fn spectrum(t: &SliceClassTable) -> Result<(bool, String)> {
    let comps = connected_components(t)?;
    let solvable = t.lattice().is_solvable();
    let pass = (comps.len() == 1) == solvable;
    let k = comps.len();
    let noun = if k == 1 { "component" } else { "components" };
    Ok((pass, format!("{k} {noun} (both descriptions agree); group is {}solvable", if solvable { "" } else { "not " })))
}

fn p_local(t: &Arc<SliceClassTable>, p: u64) -> Result<(bool, String)> {
    let es = p_local_idempotents(t, p)?;
    let p_prime = (0..t.len()).filter(|&c| !(t.weyl_order(c) as u64).is_multiple_of(p)).count();
    if es.len() != p_prime {
        return Ok((false, format!("{} idempotents for {p_prime} classes prime to {p}", es.len())));
    }
    let pb = BigInt::from(p);
    let mut sum = QBurnsideElt::zero(t);
    for (_, e) in &es {
        if e.terms().any(|(_, c)| (c.denom() % &pb).is_zero()) {
            return Ok((false, format!("a denominator is divisible by {p}")));
        }
        if !e.ghost().values().iter().all(|v| v.is_zero() || v.is_one()) {
            return Ok((false, "a ghost value is not 0 or 1".into()));
        }
        sum = sum.plus(e)?;
    }
    let elts: Vec<QBurnsideElt> = es.into_iter().map(|(_, e)| e).collect();
    let m = elts.len();
    let ok = sum == QBurnsideElt::unit(t) && verify_products(&elts, (0..m).flat_map(|a| (0..m).map(move |b| (a, b))))?;
    Ok((ok, format!("{m} idempotents, p-free denominators, Σ = 1, orthogonal")))
}

/// Face and degeneracy checks need the neighbouring degrees over the same lattice.
fn simplicial(tables: &[Arc<SliceClassTable>], n: usize, rng: &mut StdRng) -> Result<(bool, String)> {
    let t = &tables[n];
    let k = t.len();
    let mut count = 0usize;
    let ps = pairs(k, rng);
    for &(a, b) in ps.iter().take(2_000) {
        let (x, y) = (BurnsideElt::basis(t, a), BurnsideElt::basis(t, b));
        let xy = x.multiply(&y)?;
        for j in 1..=n {
            let lo = &tables[n - 1];
            if xy.face(j, lo)? != x.face(j, lo)?.multiply(&y.face(j, lo)?)? {
                return Ok((false, format!("d_{j} is not multiplicative")));
            }
            count += 1;
        }
        if let Some(hi) = tables.get(n + 1) {
            for i in 0..=n {
                if xy.degeneracy(i, hi)? != x.degeneracy(i, hi)?.multiply(&y.degeneracy(i, hi)?)? {
                    return Ok((false, format!("s_{i} is not multiplicative")));
                }
                count += 1;
            }
        }
    }
    for c in 0..k {
        let x = BurnsideElt::basis(t, c);
        for j in 2..=n {
            for i in 1..j {
                let lhs = x.face(j, &tables[n - 1])?.face(i, &tables[n - 2])?;
                let rhs = x.face(i, &tables[n - 1])?.face(j - 1, &tables[n - 2])?;
                if lhs != rhs {
                    return Ok((false, format!("d_{i} d_{j} ≠ d_{} d_{i}", j - 1)));
                }
                count += 1;
            }
        }
        if let Some(hi) = tables.get(n + 1) {
            for j in 0..=n {
                let up = x.degeneracy(j, hi)?;
                for i in [j, j + 1].into_iter().filter(|&i| i >= 1) {
                    if up.face(i, t)? != x {
                        return Ok((false, format!("d_{i} s_{j} ≠ id")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok((true, format!("{count} identities and homomorphism checks")))
}

/// Runs every property for `tables[n]`; `tables` holds degrees `0..=n` and
/// optionally `n + 1`, all over one lattice.
pub fn run(tables: &[Arc<SliceClassTable>], n: usize) -> Vec<CheckReport> {
    let t = &tables[n];
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut out = vec![
        report("marks_triangular", marks(t)),
        report("ring_laws", ring_laws(t, &mut rng)),
        report("mark_oracles", oracles(t, &mut rng)),
        report("idempotents", idempotents(t, &mut rng)),
        report("mobius", mobius(t, &mut rng)),
        report("congruences", congruences(t)),
    ];
    for p in prime_divisors(t.lattice().group().order() as u64) {
        match verify_exact_sequence(t, p) {
            Ok(reps) => {
                out.extend(reps.into_iter().map(|r| CheckReport::new(format!("{}[p={p}]", r.check), r.pass, r.detail)))
            }
            Err(e) => out.push(CheckReport::new(format!("exact_sequence[p={p}]"), false, e.to_string())),
        }
        out.push(report(&format!("p_local_idempotents[p={p}]"), p_local(t, p)));
    }
    out.push(report("spectrum", spectrum(t)));
    if n >= 1 || tables.len() > n + 1 {
        out.push(report("simplicial", simplicial(tables, n, &mut rng)));
    }
    out
}
