//! Stable names for subgroup classes and slice classes.
//!
//! A subgroup class is named by its order, with a letter appended when
//! several classes share that order ("2a", "2b", …, in lattice order). A
//! chain is written `1 ≤ 2a ≤ 6`; a slice class can also be addressed
//! directly as `#<class id>`.

use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use num_traits::Signed;
use sburnside::ring::{Coeff, Combination};
use sburnside::{Slice, SliceClassTable, SubgroupId, SubgroupLattice};

pub struct Labels {
    lattice: Arc<SubgroupLattice>,
    // indexed by subgroup id; only meaningful on class representatives
    names: Vec<String>,
}

fn letters(mut k: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

impl Labels {
    pub fn new(lattice: &Arc<SubgroupLattice>) -> Labels {
        let mut names = vec![String::new(); lattice.len()];
        let reps = lattice.class_reps();
        for &r in reps {
            let order = lattice.order(r);
            let same: Vec<SubgroupId> = reps.iter().copied().filter(|&s| lattice.order(s) == order).collect();
            names[r] = if same.len() == 1 {
                order.to_string()
            } else {
                let k = same.iter().position(|&s| s == r).unwrap();
                format!("{order}{}", letters(k))
            };
        }
        Labels { lattice: lattice.clone(), names }
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn subgroup(&self, s: SubgroupId) -> &str {
        &self.names[self.lattice.class_rep(s)]
    }

    pub fn chain(&self, s: &Slice) -> String {
        s.parts().iter().map(|&p| self.subgroup(p)).collect::<Vec<_>>().join(" ≤ ")
    }

    pub fn class(&self, table: &SliceClassTable, c: usize) -> String {
        self.chain(table.rep(c))
    }

    fn is_cyclic(&self, s: SubgroupId) -> bool {
        let g = self.lattice.group();
        let order = self.lattice.order(s);
        self.lattice.subgroup(s).members.iter().any(|x| g.element_order(x) == order)
    }

    /// Every subgroup the token can denote. `@k` names the single subgroup
    /// with lattice id `k`; any other form names whole conjugacy classes.
    pub fn resolve_subgroup(&self, token: &str) -> Result<Vec<SubgroupId>> {
        let token = token.trim();
        let l = &self.lattice;
        if let Some(id) = token.strip_prefix('@') {
            let id: usize = id.parse().map_err(|_| anyhow!("bad subgroup id '{token}'"))?;
            if id >= l.len() {
                bail!("subgroup id {id} out of range (the lattice has {} subgroups)", l.len());
            }
            return Ok(vec![id]);
        }
        let (base, pick) = match token.split_once('#') {
            Some((b, k)) => (b, Some(k.parse::<usize>().map_err(|_| anyhow!("bad disambiguator in '{token}'"))?)),
            None => (token, None),
        };
        let reps = l.class_reps();
        let mut classes: Vec<SubgroupId> = if base == "G" {
            vec![l.whole()]
        } else if let Some(k) = base.strip_prefix('C').and_then(|k| k.parse::<usize>().ok()) {
            reps.iter().copied().filter(|&r| l.order(r) == k && self.is_cyclic(r)).collect()
        } else if let Ok(k) = base.parse::<usize>() {
            reps.iter().copied().filter(|&r| l.order(r) == k).collect()
        } else {
            reps.iter().copied().filter(|&r| self.names[r] == base).collect()
        };
        if let Some(k) = pick {
            if k == 0 || k > classes.len() {
                bail!("'{token}': there are {} matching classes", classes.len());
            }
            classes = vec![classes[k - 1]];
        }
        if classes.is_empty() {
            bail!("no subgroup class matches '{token}'");
        }
        if classes.len() > 1 {
            let names: Vec<&str> = classes.iter().map(|&c| self.names[c].as_str()).collect();
            bail!("'{token}' is ambiguous: {} (append #k to pick one)", names.join(", "));
        }
        let c = classes[0];
        Ok((0..l.len()).filter(|&s| l.class_rep(s) == c).collect())
    }

    /// One subgroup class, returned as its representative.
    pub fn resolve_class_rep(&self, token: &str) -> Result<SubgroupId> {
        let subs = self.resolve_subgroup(token)?;
        Ok(if subs.len() == 1 { subs[0] } else { self.lattice.class_rep(subs[0]) })
    }

    fn tokens(chain: &str) -> Vec<&str> {
        chain.split(['≤', ',']).flat_map(|t| t.split("<=")).map(str::trim).collect()
    }

    /// The slice class a chain string denotes.
    pub fn resolve_chain(&self, table: &SliceClassTable, chain: &str) -> Result<usize> {
        let chain = chain.trim();
        if let Some(id) = chain.strip_prefix('#') {
            let id: usize = id.parse().map_err(|_| anyhow!("bad class id '{chain}'"))?;
            if id >= table.len() {
                bail!("class id {id} out of range ({} classes)", table.len());
            }
            return Ok(id);
        }
        let tokens = Self::tokens(chain);
        if tokens.len() != table.degree() + 1 {
            bail!("degree mismatch: '{chain}' has {} terms, expected {}", tokens.len(), table.degree() + 1);
        }
        let allowed: Vec<Vec<SubgroupId>> = tokens.iter().map(|t| self.resolve_subgroup(t)).collect::<Result<_>>()?;
        let mut hits: Vec<usize> = table
            .slices()
            .filter(|(s, _)| s.parts().iter().zip(&allowed).all(|(p, a)| a.contains(p)))
            .map(|(_, c)| c)
            .collect();
        hits.sort_unstable();
        hits.dedup();
        match hits.len() {
            0 => bail!("no chain of subgroups matches '{chain}'"),
            1 => Ok(hits[0]),
            _ => {
                let ids: Vec<String> = hits.iter().map(|c| format!("#{c}")).collect();
                bail!("'{chain}' matches several slice classes: {} (address one by id)", ids.join(", "))
            }
        }
    }

    /// A single slice, requiring every term to name exactly one subgroup.
    pub fn resolve_slice(&self, chain: &str) -> Result<Slice> {
        let parts = Self::tokens(chain)
            .into_iter()
            .map(|t| match self.resolve_subgroup(t)?.as_slice() {
                [s] => Ok(*s),
                _ => bail!("'{t}' denotes several conjugate subgroups; use @<subgroup id>"),
            })
            .collect::<Result<Vec<_>>>()?;
        let s = Slice(parts);
        if !s.is_chain(&self.lattice) {
            bail!("'{chain}' is not a chain of subgroups");
        }
        Ok(s)
    }

    pub fn element<C>(&self, x: &Combination<C>) -> String
    where
        C: Coeff + Signed,
    {
        let mut out = String::new();
        for (c, m) in x.terms() {
            let body = format!("{}·[{}]", m.abs(), self.class(x.table(), c));
            if out.is_empty() {
                out = if m.is_negative() { format!("-{body}") } else { body };
            } else {
                out.push_str(if m.is_negative() { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}
