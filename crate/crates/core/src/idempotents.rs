//! Primitive idempotents of `Q ⊗ B_n(G)` from the Möbius function of the
//! subgroup lattice.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{internal, Result};
use crate::ring::{ghost_solve, GhostVector, QBurnsideElt};
use crate::slices::{Slice, SliceClassTable};

/// `e_S̄ = 1/|N_G(S̄)| Σ |T_0| μ(T_0,S_0)⋯μ(T_n,S_n) ⟨T̄⟩`, the sum running over
/// chains with `T_0 ≤ S_0 ≤ T_1 ≤ S_1 ≤ … ≤ T_n ≤ S_n`.
pub fn idempotent(table: &Arc<SliceClassTable>, class: usize) -> QBurnsideElt {
    let l = &**table.lattice();
    let s = table.rep(class).clone();
    let n = s.0.len();
    let mut terms: Vec<(usize, BigRational)> = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let denom = BigInt::from(l.order(table.normalizer(class)));
    fn rec(
        table: &SliceClassTable,
        s: &Slice,
        cur: &mut Vec<usize>,
        weight: BigInt,
        denom: &BigInt,
        terms: &mut Vec<(usize, BigRational)>,
    ) {
        let l = &**table.lattice();
        let i = cur.len();
        if i == s.0.len() {
            let c = table.class_of(&Slice(cur.clone())).expect("interleaved chains are slices");
            terms.push((c, BigRational::new(weight, denom.clone())));
            return;
        }
        let lo = if i == 0 { l.trivial() } else { s.0[i - 1] };
        let options: Vec<usize> = l.interval(lo, s.0[i]).collect();
        for t in options {
            let mu = l.mobius_i64(t, s.0[i]);
            if mu == 0 {
                continue;
            }
            let mut w = &weight * mu;
            if i == 0 {
                w *= l.order(t);
            }
            cur.push(t);
            rec(table, s, cur, w, denom, terms);
            cur.pop();
        }
    }
    rec(table, &s, &mut cur, BigInt::one(), &denom, &mut terms);
    QBurnsideElt::from_terms(table, terms).expect("class indices come from the table")
}

/// The 0/1 ghost vector of a class.
pub fn indicator(table: &Arc<SliceClassTable>, class: usize) -> GhostVector<BigInt> {
    let values = (0..table.len()).map(|i| if i == class { BigInt::one() } else { BigInt::zero() }).collect();
    GhostVector::new(table, values).expect("length matches")
}

/// One idempotent per class, each checked against the ghost indicator and
/// against back substitution, and checked to sum to `e_n`. Products are
/// certified through the ghost map, which is an injective ring homomorphism;
/// [`verify_products`] multiplies directly.
pub fn all_idempotents(table: &Arc<SliceClassTable>) -> Result<Vec<QBurnsideElt>> {
    let mut out = Vec::with_capacity(table.len());
    let mut sum = QBurnsideElt::zero(table);
    for c in 0..table.len() {
        let e = idempotent(table, c);
        let ind = indicator(table, c);
        let ghost = e.ghost();
        if ghost.values().iter().zip(ind.values()).any(|(a, b)| *a != BigRational::from_integer(b.clone())) {
            return internal(format!("ghost of idempotent {c} is not the indicator"));
        }
        if ghost_solve(&ind).0 != e {
            return internal(format!("idempotent {c} disagrees with back substitution"));
        }
        let nrm = BigInt::from(table.lattice().order(table.normalizer(c)));
        if e.terms().any(|(_, q)| !(&nrm % q.denom()).is_zero()) {
            return internal(format!("denominator of idempotent {c} does not divide |N_G(S)|"));
        }
        sum = sum.plus(&e)?;
        out.push(e);
    }
    if sum != QBurnsideElt::unit(table) {
        return internal("idempotents do not sum to the unit");
    }
    Ok(out)
}

/// Checks `e_a² = e_a` and `e_a e_b = 0` by direct multiplication for the
/// given index pairs (`a == b` tests idempotency).
pub fn verify_products(idempotents: &[QBurnsideElt], pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<bool> {
    for (a, b) in pairs {
        let p = idempotents[a].multiply(&idempotents[b])?;
        let ok = if a == b { p == idempotents[a] } else { p.is_zero() };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `x · e_S̄ = φ_S̄(x) · e_S̄`.
pub fn characterization_check(table: &Arc<SliceClassTable>, class: usize, x: &QBurnsideElt) -> Result<bool> {
    let e = idempotent(table, class);
    Ok(x.multiply(&e)? == e.scaled(&x.mark(class)))
}

/// For `y`, returns whether `⟨T̄⟩ · y = φ_S̄(⟨T̄⟩) · y` holds for every basis
/// element, and whether `y` is a rational multiple of `e_S̄` (its ghost is
/// supported at the class alone).
pub fn characterization_converse(table: &Arc<SliceClassTable>, class: usize, y: &QBurnsideElt) -> Result<(bool, bool)> {
    let mut hypothesis = true;
    for t in 0..table.len() {
        let b = QBurnsideElt::basis(table, t);
        if b.multiply(y)? != y.scaled(&b.mark(class)) {
            hypothesis = false;
            break;
        }
    }
    let ghost = y.ghost();
    let multiple = ghost.values().iter().enumerate().all(|(i, v)| i == class || v.is_zero());
    Ok((hypothesis, multiple))
}
