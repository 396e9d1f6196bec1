//! Elements of `B_n(G)` and `Q ⊗ B_n(G)`, multiplication by the double coset
//! formula, the ghost map, and the face and degeneracy operators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{input, Error, Result};
use crate::slices::{Slice, SliceClassTable};

/// Coefficient rings used for Burnside ring elements.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: BigInt) -> Self;
}

impl Coeff for BigInt {
    fn from_int(v: BigInt) -> Self {
        v
    }
}

impl Coeff for BigRational {
    fn from_int(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
}

/// A finite linear combination of basis elements `⟨S̄⟩`.
#[derive(Clone)]
pub struct Combination<C> {
    table: Arc<SliceClassTable>,
    coeffs: BTreeMap<usize, C>,
}

pub type BurnsideElt = Combination<BigInt>;
pub type QBurnsideElt = Combination<BigRational>;

impl<C: Coeff> Combination<C> {
    pub fn zero(table: &Arc<SliceClassTable>) -> Self {
        Combination { table: table.clone(), coeffs: BTreeMap::new() }
    }

    /// The unit `e_n = ⟨(G, …, G)⟩`.
    pub fn unit(table: &Arc<SliceClassTable>) -> Self {
        Self::basis(table, table.top())
    }

    pub fn basis(table: &Arc<SliceClassTable>, class: usize) -> Self {
        assert!(class < table.len(), "class index out of range");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(class, C::one());
        Combination { table: table.clone(), coeffs }
    }

    pub fn from_terms(table: &Arc<SliceClassTable>, terms: impl IntoIterator<Item = (usize, C)>) -> Result<Self> {
        let mut x = Self::zero(table);
        for (i, c) in terms {
            if i >= table.len() {
                return input(format!("class index {i} out of range"));
            }
            x.add_term(i, c);
        }
        Ok(x)
    }

    /// The basis element of the class containing slice `s`.
    pub fn of_slice(table: &Arc<SliceClassTable>, s: &Slice) -> Result<Self> {
        Ok(Self::basis(table, table.class_of_checked(s)?))
    }

    pub fn table(&self) -> &Arc<SliceClassTable> {
        &self.table
    }

    pub fn coeff(&self, class: usize) -> C {
        self.coeffs.get(&class).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms in class order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn add_term(&mut self, class: usize, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(class).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&class);
        }
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::Mismatch("elements belong to different slice tables".into()))
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-C::one()))
    }

    pub fn scaled(&self, k: &C) -> Self {
        let mut out = Self::zero(&self.table);
        for (i, c) in self.terms() {
            out.add_term(i, c.clone() * k.clone());
        }
        out
    }

    /// Product by the double coset formula on basis elements.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let products = self.table.products();
        let mut out = Self::zero(&self.table);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let ab = a.clone() * b.clone();
                for &(k, m) in products.product(&self.table, i, j) {
                    out.add_term(k as usize, ab.clone() * C::from_int(BigInt::from(m)));
                }
            }
        }
        Ok(out)
    }

    /// `φ_S̄(x)` for the class `s`.
    pub fn mark(&self, s: usize) -> C {
        let mut acc = C::zero();
        for (j, c) in self.coeffs.range(s..) {
            let m = self.table.mark(s, *j);
            if m != 0 {
                acc = acc + c.clone() * C::from_int(BigInt::from(m));
            }
        }
        acc
    }

    pub fn ghost(&self) -> GhostVector<C> {
        GhostVector { table: self.table.clone(), values: (0..self.table.len()).map(|i| self.mark(i)).collect() }
    }

    pub fn to_rational(&self) -> QBurnsideElt
    where
        C: Into<BigRational>,
    {
        Combination {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, c.clone().into())).collect(),
        }
    }

    /// Applies a slice operation to each basis element, landing in `target`.
    pub(crate) fn map_basis(
        &self,
        target: &Arc<SliceClassTable>,
        mut f: impl FnMut(&Slice) -> Result<Vec<(Slice, BigInt)>>,
    ) -> Result<Self> {
        let mut out = Self::zero(target);
        for (i, c) in self.terms() {
            for (s, m) in f(self.table.rep(i))? {
                out.add_term(target.class_of_checked(&s)?, c.clone() * C::from_int(m));
            }
        }
        Ok(out)
    }

    /// Face operator `d_j` (`1 ≤ j ≤ n`): deletes `S_j`.
    pub fn face(&self, j: usize, target: &Arc<SliceClassTable>) -> Result<Self> {
        let n = self.table.degree();
        check_same_lattice(&self.table, target)?;
        if j == 0 {
            return input("the face operator d_0 is not defined on basis elements");
        }
        if j > n || target.degree() + 1 != n {
            return input(format!("face d_{j} needs 1 ≤ j ≤ {n} and a target of degree {}", n.max(1) - 1));
        }
        self.map_basis(target, |s| Ok(vec![(face_slice(s, j), BigInt::one())]))
    }

    /// Degeneracy operator `s_i` (`0 ≤ i ≤ n`): repeats `S_i`, raising the degree by one.
    pub fn degeneracy(&self, i: usize, target: &Arc<SliceClassTable>) -> Result<Self> {
        let n = self.table.degree();
        check_same_lattice(&self.table, target)?;
        if i > n || target.degree() != n + 1 {
            return input(format!("degeneracy s_{i} needs 0 ≤ i ≤ {n} and a target of degree {}", n + 1));
        }
        self.map_basis(target, |s| Ok(vec![(degeneracy_slice(s, i), BigInt::one())]))
    }

    /// The operator induced by a monotone map `f: [m] → [n]`, given by its
    /// images `f(0), …, f(m)`, sending `⟨S̄⟩` to `⟨(S_{f(0)}, …, S_{f(m)})⟩`.
    ///
    /// Computed as the composite of the faces `d_i` for `i ∉ im f` (in
    /// decreasing order) followed by the degeneracies `s_j` for each `j` with
    /// `f(j) = f(j+1)` (in increasing order). Maps that would need `d_0`,
    /// i.e. `f(0) > 0`, are rejected.
    pub fn simplicial_map(&self, f: &[usize], target: &Arc<SliceClassTable>) -> Result<Self> {
        check_same_lattice(&self.table, target)?;
        let ops = simplicial_factorization(f, self.table.degree())?;
        if target.degree() + 1 != f.len() {
            return input("target degree does not match the length of f");
        }
        self.map_basis(target, |s| {
            let mut cur = s.clone();
            for op in &ops {
                cur = match *op {
                    SimplicialOp::Face(j) => face_slice(&cur, j),
                    SimplicialOp::Degeneracy(i) => degeneracy_slice(&cur, i),
                };
            }
            Ok(vec![(cur, BigInt::one())])
        })
    }
}

impl QBurnsideElt {
    /// The element with integer coefficients, if there is one.
    pub fn to_integral(&self) -> Option<BurnsideElt> {
        let mut out = BurnsideElt::zero(&self.table);
        for (i, c) in self.terms() {
            if !c.is_integer() {
                return None;
            }
            out.add_term(i, c.to_integer());
        }
        Some(out)
    }
}

impl From<&BurnsideElt> for QBurnsideElt {
    fn from(x: &BurnsideElt) -> Self {
        x.to_rational()
    }
}

impl<C: Coeff> PartialEq for Combination<C> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) && self.coeffs == other.coeffs
    }
}

impl<C: Coeff> fmt::Debug for Combination<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(i, c)| format!("{c}·{:?}", self.table.rep(i))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplicialOp {
    Face(usize),
    Degeneracy(usize),
}

/// The face/degeneracy word realizing `f: [m] → [n]`, in application order.
pub fn simplicial_factorization(f: &[usize], n: usize) -> Result<Vec<SimplicialOp>> {
    if f.is_empty() {
        return input("f must have at least one value");
    }
    if f.windows(2).any(|w| w[0] > w[1]) {
        return input("f is not monotone");
    }
    if f.iter().any(|&v| v > n) {
        return input(format!("f takes values outside [0, {n}]"));
    }
    if f[0] != 0 {
        return input("f misses 0, which would require the face operator d_0");
    }
    let mut ops: Vec<SimplicialOp> = (0..=n).rev().filter(|i| !f.contains(i)).map(SimplicialOp::Face).collect();
    ops.extend((0..f.len() - 1).filter(|&j| f[j] == f[j + 1]).map(SimplicialOp::Degeneracy));
    Ok(ops)
}

pub fn face_slice(s: &Slice, j: usize) -> Slice {
    let mut p = s.0.clone();
    p.remove(j);
    Slice(p)
}

pub fn degeneracy_slice(s: &Slice, i: usize) -> Slice {
    let mut p = s.0.clone();
    p.insert(i, s.0[i]);
    Slice(p)
}

fn check_same_lattice(a: &SliceClassTable, b: &SliceClassTable) -> Result<()> {
    if Arc::ptr_eq(a.lattice(), b.lattice()) {
        Ok(())
    } else {
        Err(Error::Mismatch("slice tables are over different subgroup lattices".into()))
    }
}

/// Values of all marks of an element, indexed by class.
#[derive(Clone)]
pub struct GhostVector<C = BigInt> {
    table: Arc<SliceClassTable>,
    values: Vec<C>,
}

impl<C: Coeff> GhostVector<C> {
    pub fn new(table: &Arc<SliceClassTable>, values: Vec<C>) -> Result<Self> {
        if values.len() != table.len() {
            return input(format!("ghost vector has length {} but there are {} classes", values.len(), table.len()));
        }
        Ok(GhostVector { table: table.clone(), values })
    }

    pub fn table(&self) -> &Arc<SliceClassTable> {
        &self.table
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    /// Componentwise product.
    pub fn pointwise(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.table, &other.table) {
            return Err(Error::Mismatch("ghost vectors over different tables".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() * b.clone()).collect();
        Ok(GhostVector { table: self.table.clone(), values })
    }

    /// Solves `M x = v` by back substitution; `M` is upper triangular in the
    /// class order.
    pub fn solve(&self) -> QBurnsideElt
    where
        C: Into<BigRational>,
    {
        let t = &*self.table;
        let k = t.len();
        // nonzero coordinates found so far, all with index above the current row
        let mut found: Vec<(usize, BigRational)> = Vec::new();
        for i in (0..k).rev() {
            let mut r: BigRational = self.values[i].clone().into();
            for (j, xj) in &found {
                let m = t.mark(i, *j);
                if m != 0 {
                    r -= xj * BigRational::from_integer(BigInt::from(m));
                }
            }
            if !r.is_zero() {
                found.push((i, r / BigRational::from_integer(BigInt::from(t.mark(i, i)))));
            }
        }
        let mut out = QBurnsideElt::zero(&self.table);
        for (i, c) in found {
            out.add_term(i, c);
        }
        out
    }
}

impl<C: Coeff> PartialEq for GhostVector<C> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) && self.values == other.values
    }
}

impl<C: Coeff> fmt::Debug for GhostVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter().map(|v| format!("{v}"))).finish()
    }
}

/// Solves the ghost equations, reporting whether the solution is integral.
pub fn ghost_solve<C: Coeff + Into<BigRational>>(v: &GhostVector<C>) -> (QBurnsideElt, bool) {
    let x = v.solve();
    let integral = x.terms().all(|(_, c)| c.is_integer());
    (x, integral)
}

/// `⟨S̄⟩ · ⟨T̄⟩ = Σ_{g ∈ [S_0\G/T_0]} ⟨S̄ ∩ g T̄ g⁻¹⟩`, as (class, multiplicity) pairs.
pub fn basis_product(table: &SliceClassTable, i: usize, j: usize) -> Vec<(u32, u32)> {
    let l = &**table.lattice();
    let (s, t) = (table.rep(i), table.rep(j));
    let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
    for g in l.double_coset_reps(s.0[0], t.0[0]) {
        let meet = s.intersect(&t.conjugate(l, g), l);
        let c = table.class_of(&meet).expect("intersection of chains is a chain");
        *acc.entry(c as u32).or_default() += 1;
    }
    acc.into_iter().collect()
}

/// Lazily filled cache of basis products, one row per left factor.
pub struct ProductTable {
    rows: Vec<OnceLock<Vec<Vec<(u32, u32)>>>>,
}

impl ProductTable {
    pub(crate) fn new(table: &SliceClassTable) -> ProductTable {
        ProductTable { rows: (0..table.len()).map(|_| OnceLock::new()).collect() }
    }

    pub fn product(&self, table: &SliceClassTable, i: usize, j: usize) -> &[(u32, u32)] {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let row = self.rows[i].get_or_init(|| (i..table.len()).map(|j| basis_product(table, i, j)).collect());
        &row[j - i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SubgroupLattice;
    use crate::named::named_group;

    fn table(spec: &str, n: usize) -> Arc<SliceClassTable> {
        let l = SubgroupLattice::new(Arc::new(named_group(spec).unwrap())).unwrap();
        Arc::new(SliceClassTable::new(Arc::new(l), n).unwrap())
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn s3_c2_times_c3() {
        let t = table("S3", 0);
        let c2 = BurnsideElt::basis(&t, 1);
        let c3 = BurnsideElt::basis(&t, 2);
        assert_eq!(c2.multiply(&c3).unwrap(), BurnsideElt::basis(&t, 0));
    }

    #[test]
    fn c2_square() {
        let t = table("C2", 1);
        let x = BurnsideElt::basis(&t, 1);
        let sq = x.multiply(&x).unwrap();
        assert_eq!(sq, x.scaled(&int(2)));
        assert_eq!(x.ghost().values(), &[int(2), int(2), int(0)]);
        assert_eq!(sq.ghost(), x.ghost().pointwise(&x.ghost()).unwrap());
    }

    #[test]
    fn unit_and_zero() {
        let t = table("D8", 1);
        let e = BurnsideElt::unit(&t);
        assert!(e.ghost().values().iter().all(|v| v.is_one()));
        for c in 0..t.len() {
            let b = BurnsideElt::basis(&t, c);
            assert_eq!(b.multiply(&e).unwrap(), b);
        }
        assert!(BurnsideElt::zero(&t).ghost().values().iter().all(|v| v.is_zero()));
        let (one, integral) = ghost_solve(&e.ghost());
        assert!(integral);
        assert_eq!(one.to_integral().unwrap(), e);
    }

    #[test]
    fn ghost_solve_indicator_c2() {
        let t = table("C2", 1);
        let v = GhostVector::new(&t, vec![int(0), int(0), int(1)]).unwrap();
        let (x, integral) = ghost_solve(&v);
        assert!(!integral);
        let half = BigRational::new(int(-1), int(2));
        let expect = QBurnsideElt::from_terms(&t, [(2, BigRational::one()), (1, half)]).unwrap();
        assert_eq!(x, expect);
    }

    #[test]
    fn mismatched_contexts() {
        let a = table("C2", 1);
        let b = table("C2", 1);
        let x = BurnsideElt::unit(&a);
        let y = BurnsideElt::unit(&b);
        assert!(matches!(x.multiply(&y), Err(Error::Mismatch(_))));
        assert!(x.face(1, &table("C2", 0)).is_err());
    }

    #[test]
    fn face_and_degeneracy_examples() {
        let l = Arc::new(SubgroupLattice::new(Arc::new(named_group("C2").unwrap())).unwrap());
        let t0 = Arc::new(SliceClassTable::new(l.clone(), 0).unwrap());
        let t1 = Arc::new(SliceClassTable::new(l.clone(), 1).unwrap());
        let t2 = Arc::new(SliceClassTable::new(l, 2).unwrap());
        let x = BurnsideElt::basis(&t1, 1); // (1, C2)
        let fx = x.face(1, &t0).unwrap();
        assert_eq!(fx, BurnsideElt::basis(&t0, 0));
        assert_eq!(x.multiply(&x).unwrap().face(1, &t0).unwrap(), fx.multiply(&fx).unwrap());
        assert_eq!(BurnsideElt::unit(&t2).face(1, &t1).unwrap(), BurnsideElt::unit(&t1));
        assert_eq!(BurnsideElt::unit(&t0).degeneracy(0, &t1).unwrap(), BurnsideElt::unit(&t1));
        assert_eq!(BurnsideElt::basis(&t0, 0).degeneracy(0, &t1).unwrap(), BurnsideElt::basis(&t1, 0));
        assert!(x.face(0, &t0).is_err());
        assert!(x.face(2, &t0).is_err());
        assert!(x.degeneracy(2, &t2).is_err());
        for c in 0..t1.len() {
            let b = BurnsideElt::basis(&t1, c);
            assert_eq!(b.degeneracy(1, &t2).unwrap().face(1, &t1).unwrap(), b);
        }
    }

    #[test]
    fn simplicial_maps() {
        let l = Arc::new(SubgroupLattice::new(Arc::new(named_group("S3").unwrap())).unwrap());
        let t: Vec<Arc<SliceClassTable>> =
            (0..3).map(|n| Arc::new(SliceClassTable::new(l.clone(), n).unwrap())).collect();
        for c in 0..t[1].len() {
            let b = BurnsideElt::basis(&t[1], c);
            assert_eq!(b.simplicial_map(&[0, 1], &t[1]).unwrap(), b);
            assert_eq!(b.simplicial_map(&[0], &t[0]).unwrap(), b.face(1, &t[0]).unwrap());
            assert_eq!(b.simplicial_map(&[0, 0, 1], &t[2]).unwrap(), b.degeneracy(0, &t[2]).unwrap());
            assert!(b.simplicial_map(&[1], &t[0]).is_err());
            assert!(b.simplicial_map(&[1, 0], &t[1]).is_err());
        }
        for c in 0..t[0].len() {
            let b = BurnsideElt::basis(&t[0], c);
            assert_eq!(b.simplicial_map(&[0, 0], &t[1]).unwrap(), b.degeneracy(0, &t[1]).unwrap());
        }
        for c in 0..t[2].len() {
            let b = BurnsideElt::basis(&t[2], c);
            let s = t[2].rep(c);
            for f in [[0usize, 2], [0, 1], [0, 0], [2, 2]] {
                let got = b.simplicial_map(&f, &t[1]);
                if f[0] != 0 {
                    assert!(got.is_err());
                    continue;
                }
                let direct = Slice(f.iter().map(|&k| s.0[k]).collect());
                assert_eq!(got.unwrap(), BurnsideElt::of_slice(&t[1], &direct).unwrap());
            }
        }
        assert_eq!(
            simplicial_factorization(&[0, 0, 2], 3).unwrap(),
            vec![SimplicialOp::Face(3), SimplicialOp::Face(1), SimplicialOp::Degeneracy(0)]
        );
    }
}
