//! The cokernel of the ghost map: `Obs(G)`, the maps `Ψ_p`, the `J′` basis
//! and the p-local exact sequence `0 → B_n(G)_(p) → C_n(G)_(p) → Obs(G)_(p) → 0`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{input, internal, Result};
use crate::lattice::{is_prime, p_part};
use crate::ring::{BurnsideElt, GhostVector};
use crate::slices::{Slice, SliceClassTable};

/// A value of `⊕_S̄ Z/m_S̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObsVector {
    pub moduli: Vec<u64>,
    pub residues: Vec<u64>,
}

impl ObsVector {
    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    pub fn add(&self, other: &ObsVector) -> ObsVector {
        assert_eq!(self.moduli, other.moduli, "ObsVectors with different moduli");
        let residues =
            self.residues.iter().zip(&other.residues).zip(&self.moduli).map(|((a, b), m)| (a + b) % m).collect();
        ObsVector { moduli: self.moduli.clone(), residues }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, pass: bool, detail: impl Into<String>) -> CheckReport {
        CheckReport { check: check.into(), pass, detail: detail.into() }
    }
}

/// `|W_G(S̄)|` per class, or its p-part.
pub fn obs_moduli(table: &SliceClassTable, p: Option<u64>) -> Result<Vec<u64>> {
    if let Some(p) = p {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
    }
    Ok((0..table.len())
        .map(|c| {
            let w = table.weyl_order(c) as u64;
            match p {
                Some(p) => p_part(w, p),
                None => w,
            }
        })
        .collect())
}

/// The linear map `Ψ_p : C_n(G) → Obs(G)_(p)` in coordinates.
pub struct PsiMap {
    pub p: u64,
    pub moduli: Vec<u64>,
    /// `rows[T]` lists `(class of ⟨g⟩T̄, multiplicity)` over the cosets
    /// `g T_0` of a Sylow p-subgroup of `W_G(T̄)`.
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl PsiMap {
    /// The Sylow p-subgroup of `W_G(T̄)` is taken as `P T_0 / T_0` for the
    /// canonical Sylow `P` of `N_G(T̄)`, with least-index coset representatives.
    pub fn new(table: &SliceClassTable, p: u64) -> Result<PsiMap> {
        let moduli = obs_moduli(table, Some(p))?;
        let l = &**table.lattice();
        let g = l.group();
        let mut rows = Vec::with_capacity(table.len());
        for (c, t) in table.classes().iter().enumerate() {
            let sylow = l.sylow(table.normalizer(c), p)?;
            let pt0 = l.product(sylow, t.0[0])?;
            if (l.order(pt0) / l.order(t.0[0])) as u64 != moduli[c] {
                return internal("Sylow subgroup of the Weyl group has the wrong order");
            }
            let t0: Vec<usize> = l.subgroup(t.0[0]).members.iter().collect();
            let mut used = g.empty_set();
            let mut counts: Vec<(usize, u64)> = Vec::new();
            for x in l.subgroup(pt0).members.iter() {
                if used.contains(x) {
                    continue;
                }
                for &y in &t0 {
                    used.insert(g.mul(x, y));
                }
                let cyc = l.generated([x]);
                let parts = t.0.iter().map(|&ti| l.product(cyc, ti)).collect::<Result<Vec<_>>>()?;
                let k = table.class_of_checked(&Slice(parts))?;
                match counts.iter_mut().find(|(kk, _)| *kk == k) {
                    Some(e) => e.1 += 1,
                    None => counts.push((k, 1)),
                }
            }
            rows.push(counts);
        }
        Ok(PsiMap { p, moduli, rows })
    }

    pub fn apply(&self, v: &GhostVector<BigInt>) -> ObsVector {
        let residues = self
            .rows
            .iter()
            .zip(&self.moduli)
            .map(|(row, &m)| {
                let mut acc = BigInt::zero();
                for &(k, mult) in row {
                    acc += &v.values()[k] * mult;
                }
                acc.mod_floor(&BigInt::from(m)).to_u64().unwrap()
            })
            .collect();
        ObsVector { moduli: self.moduli.clone(), residues }
    }

    /// Image of the `j`-th standard basis vector of `C_n(G)`.
    pub fn column(&self, j: usize) -> Vec<u64> {
        self.rows
            .iter()
            .zip(&self.moduli)
            .map(|(row, &m)| row.iter().filter(|(k, _)| *k == j).map(|(_, c)| c % m).sum::<u64>() % m)
            .collect()
    }
}

pub fn psi_p(v: &GhostVector<BigInt>, p: u64) -> Result<ObsVector> {
    Ok(PsiMap::new(v.table(), p)?.apply(v))
}

/// `|det M| = ∏ |W_G(S̄)|`, read off the diagonal of the triangular table.
pub fn cokernel_order(table: &SliceClassTable) -> BigInt {
    (0..table.len()).map(|c| BigInt::from(table.mark(c, c))).product()
}

/// `J[T][S] = φ_T(⟨S⟩) / φ_S(⟨S⟩)`, checked to be integral and unitriangular.
pub fn jprime_matrix(table: &SliceClassTable) -> Result<Vec<Vec<BigInt>>> {
    let k = table.len();
    let mut j = vec![vec![BigInt::zero(); k]; k];
    for s in 0..k {
        let d = table.mark(s, s);
        for t in 0..=s {
            let m = table.mark(t, s);
            if !m.is_multiple_of(d) {
                return internal(format!("mark φ_{t}(⟨{s}⟩) = {m} is not divisible by {d}"));
            }
            j[t][s] = BigInt::from(m / d);
        }
        if !j[s][s].is_one() {
            return internal("J′ diagonal entry is not 1");
        }
    }
    Ok(j)
}

/// `log_p` of the order of the subgroup of `(Z/p^e)^k` generated by `gens`
/// (each coordinate reduced mod `p^e`), by elimination that keeps the
/// annihilator multiple of every pivot row.
pub fn generated_order_log(gens: &[Vec<u64>], p: u64, e: u32) -> u32 {
    let q = p.pow(e);
    let val = |x: u64| -> u32 {
        if x.is_multiple_of(q) {
            return e;
        }
        let mut v = 0;
        let mut y = x;
        while y.is_multiple_of(p) {
            y /= p;
            v += 1;
        }
        v
    };
    let inv = |u: u64| -> u64 {
        let g = (u as i64).extended_gcd(&(q as i64));
        g.x.rem_euclid(q as i64) as u64
    };
    let k = gens.first().map_or(0, Vec::len);
    let mut pool: Vec<Vec<u64>> = gens.iter().map(|g| g.iter().map(|x| x % q).collect()).collect();
    let mut total = 0;
    for col in 0..k {
        let pick =
            pool.iter().enumerate().filter(|(_, w)| w[col] != 0).min_by_key(|(_, w)| val(w[col])).map(|(i, _)| i);
        let Some(idx) = pick else { continue };
        let pivot = pool.swap_remove(idx);
        let a = val(pivot[col]);
        let unit_inv = inv(pivot[col] / p.pow(a));
        for w in pool.iter_mut() {
            if w[col] == 0 {
                continue;
            }
            let t = (w[col] / p.pow(a)) % q * unit_inv % q;
            for (x, &y) in w.iter_mut().zip(&pivot) {
                *x = (*x + q - t * y % q) % q;
            }
        }
        let scale = p.pow(e - a);
        let ann: Vec<u64> = pivot.iter().map(|&y| y * scale % q).collect();
        if ann.iter().any(|&y| y != 0) {
            pool.push(ann);
        }
        total += e - a;
    }
    total
}

pub fn verify_exact_sequence(table: &Arc<SliceClassTable>, p: u64) -> Result<Vec<CheckReport>> {
    let psi = PsiMap::new(table, p)?;
    let mut reports = Vec::new();

    let failing: Vec<usize> =
        (0..table.len()).filter(|&c| !psi.apply(&BurnsideElt::basis(table, c).ghost()).is_zero()).collect();
    reports.push(CheckReport::new(
        "psi_after_ghost_vanishes",
        failing.is_empty(),
        if failing.is_empty() {
            format!("Ψ_{p}(Φ(⟨S⟩)) = 0 for all {} basis elements", table.len())
        } else {
            format!("nonzero on classes {failing:?}")
        },
    ));

    let live: Vec<usize> = (0..table.len()).filter(|&c| psi.moduli[c] > 1).collect();
    let e = live.iter().map(|&c| psi.moduli[c].ilog(p)).max().unwrap_or(0);
    let target_log: u32 = live.iter().map(|&c| psi.moduli[c].ilog(p)).sum();
    let gens: Vec<Vec<u64>> = (0..table.len())
        .map(|j| {
            let col = psi.column(j);
            live.iter().map(|&c| col[c] * p.pow(e - psi.moduli[c].ilog(p))).collect()
        })
        .collect();
    let got_log = if live.is_empty() { 0 } else { generated_order_log(&gens, p, e) };
    reports.push(CheckReport::new(
        "psi_surjective",
        got_log == target_log,
        format!("image has order {p}^{got_log}, target has order {p}^{target_log}"),
    ));

    let det_part = p_part_big(&cokernel_order(table), p);
    let moduli_product = psi.moduli.iter().fold(BigInt::one(), |a, &m| a * m);
    reports.push(CheckReport::new(
        "cokernel_order_p_part",
        det_part == moduli_product,
        format!("p-part of |det| = {det_part}, product of moduli = {moduli_product}"),
    ));
    Ok(reports)
}

fn p_part_big(n: &BigInt, p: u64) -> BigInt {
    let mut n = n.clone();
    let mut r = BigInt::one();
    let p = BigInt::from(p);
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        r *= &p;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SubgroupLattice;
    use crate::named::named_group;
    use std::collections::HashSet;

    fn table(spec: &str, n: usize) -> Arc<SliceClassTable> {
        let l = SubgroupLattice::new(Arc::new(named_group(spec).unwrap())).unwrap();
        Arc::new(SliceClassTable::new(Arc::new(l), n).unwrap())
    }

    #[test]
    fn moduli_examples() {
        assert_eq!(obs_moduli(&table("C2", 1), None).unwrap(), vec![2, 2, 1]);
        assert_eq!(obs_moduli(&table("C1", 0), None).unwrap(), vec![1]);
        assert_eq!(obs_moduli(&table("S3", 0), Some(2)).unwrap(), vec![2, 1, 2, 1]);
        assert!(obs_moduli(&table("S3", 0), Some(4)).is_err());
    }

    #[test]
    fn cokernel_orders() {
        assert_eq!(cokernel_order(&table("C2", 1)), BigInt::from(4));
        assert_eq!(cokernel_order(&table("S3", 0)), BigInt::from(12));
        assert_eq!(cokernel_order(&table("C1", 3)), BigInt::from(1));
    }

    #[test]
    fn jprime_c2() {
        let j = jprime_matrix(&table("C2", 1)).unwrap();
        let expect: Vec<Vec<BigInt>> =
            [[1, 1, 1], [0, 1, 1], [0, 0, 1]].iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(j, expect);
    }

    #[test]
    fn psi_examples() {
        let t = table("C2", 1);
        let v = BurnsideElt::basis(&t, 0).ghost();
        let psi = PsiMap::new(&t, 2).unwrap();
        assert_eq!(psi.rows[0], vec![(0, 1), (2, 1)]);
        assert!(psi.apply(&v).is_zero());
        let zero = BurnsideElt::zero(&t).ghost();
        assert!(psi_p(&zero, 2).unwrap().is_zero());
        for rep in verify_exact_sequence(&t, 2).unwrap() {
            assert!(rep.pass, "{rep:?}");
        }
        for p in [2, 3, 5] {
            for rep in verify_exact_sequence(&table("S3", 1), p).unwrap() {
                assert!(rep.pass, "{p} {rep:?}");
            }
        }
    }

    #[test]
    fn psi_is_additive() {
        let t = table("S3", 1);
        let psi = PsiMap::new(&t, 2).unwrap();
        let a = GhostVector::new(&t, (0..t.len()).map(|i| BigInt::from(i * 3 + 1)).collect()).unwrap();
        let b = GhostVector::new(&t, (0..t.len()).map(|i| BigInt::from(7 * i * i) - 5).collect()).unwrap();
        let sum = GhostVector::new(&t, a.values().iter().zip(b.values()).map(|(x, y)| x + y).collect()).unwrap();
        assert_eq!(psi.apply(&sum), psi.apply(&a).add(&psi.apply(&b)));
    }

    /// Brute-force closure of the generated subgroup.
    fn brute_order(gens: &[Vec<u64>], q: u64) -> usize {
        let k = gens[0].len();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut frontier = vec![vec![0u64; k]];
        seen.insert(vec![0; k]);
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % q).collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn generated_order_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (p, e) = if rng.gen_bool(0.5) { (2u64, 3u32) } else { (3, 2) };
            let q = p.pow(e);
            let k = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let gens: Vec<Vec<u64>> = (0..m).map(|_| (0..k).map(|_| rng.gen_range(0..q)).collect()).collect();
            let log = generated_order_log(&gens, p, e);
            assert_eq!(p.pow(log) as usize, brute_order(&gens, q), "{gens:?} mod {q}");
        }
    }
}
