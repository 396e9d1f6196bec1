//! Parsing of group specifications such as `S3`, `C2xD8`, `Q8` or
//! `perm:(1 2)(3 4),(1 2 3)`.

use crate::error::{input, Result};
use crate::group::{FiniteGroup, Permutation, DEFAULT_MAX_ORDER};

/// Parses a group spec with the default order cap.
pub fn named_group(spec: &str) -> Result<FiniteGroup> {
    named_group_with_cap(spec, DEFAULT_MAX_ORDER)
}

pub fn named_group_with_cap(spec: &str, max_order: usize) -> Result<FiniteGroup> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("perm:") {
        let gens = parse_generators(rest)?;
        return FiniteGroup::generate(&gens, max_order);
    }
    let factors: Vec<&str> = spec.split(['x', '×']).map(str::trim).collect();
    if factors.iter().any(|f| f.is_empty()) {
        return input(format!("cannot parse group spec '{spec}'"));
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut degree = 0usize;
    let mut projected = 1usize;
    for f in factors {
        let (fd, fgens, order) = factor_generators(f)?;
        projected = projected.saturating_mul(order);
        if projected > max_order {
            return Err(crate::Error::Size { what: format!("order of '{spec}'"), limit: max_order });
        }
        // shift existing generators by the new factor's points and vice versa
        let pad_new = Permutation::identity(fd);
        gens = gens.iter().map(|g| g.juxtapose(&pad_new)).collect();
        let pad_old = Permutation::identity(degree);
        gens.extend(fgens.iter().map(|g| pad_old.juxtapose(g)));
        degree += fd;
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(degree.max(1)));
    }
    FiniteGroup::generate(&gens, max_order)
}

/// Degree, generators and expected order of one factor.
fn factor_generators(f: &str) -> Result<(usize, Vec<Permutation>, usize)> {
    if f == "Q8" {
        return Ok((8, quaternion_regular(), 8));
    }
    let (kind, num) = f.split_at(1);
    let n: usize = num.parse().map_err(|_| crate::Error::Input(format!("cannot parse group factor '{f}'")))?;
    let cyc = |d: usize, pts: Vec<usize>| Permutation::from_cycles(d, &[pts]);
    match kind {
        "C" => {
            if n == 0 {
                return input("C0 is not a group");
            }
            Ok((n, vec![cyc(n, (0..n).collect())?], n))
        }
        "S" => {
            if n == 0 {
                return input("S0 is not supported");
            }
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(cyc(n, vec![0, 1])?);
                gens.push(cyc(n, (0..n).collect())?);
            }
            Ok((n, gens, factorial(n)))
        }
        "A" => {
            if n == 0 {
                return input("A0 is not supported");
            }
            let gens = (2..n).map(|k| cyc(n, vec![0, 1, k])).collect::<Result<Vec<_>>>()?;
            Ok((n, gens, (factorial(n) / 2).max(1)))
        }
        "D" => {
            if n < 4 || !n.is_multiple_of(2) {
                return input(format!("D{n}: dihedral groups are written D<order> with even order ≥ 4"));
            }
            let m = n / 2;
            if m == 2 {
                let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
                let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?;
                return Ok((4, vec![a, b], 4));
            }
            let rot = cyc(m, (0..m).collect())?;
            let refl = Permutation::from_images((0..m).map(|i| ((m - i) % m) as u32).collect())?;
            Ok((m, vec![rot, refl], n))
        }
        _ => input(format!("unknown group family in '{f}'")),
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |a, b| a.saturating_mul(b))
}

/// Q8 through its left regular representation on {±1, ±i, ±j, ±k}.
fn quaternion_regular() -> Vec<Permutation> {
    // unit q encoded as (sign, axis) where axis 0..4 = 1, i, j, k; index = 4*sign + axis
    fn mul(a: usize, b: usize) -> usize {
        let (sa, xa) = (a / 4, a % 4);
        let (sb, xb) = (b / 4, b % 4);
        // table of (sign, axis) for products of basis units
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let (s, x) = T[xa][xb];
        4 * ((sa + sb + s) % 2) + x
    }
    [1usize, 2].iter().map(|&g| Permutation::from_images((0..8).map(|x| mul(g, x) as u32).collect()).unwrap()).collect()
}

/// Parses `(1 2)(3 4),(1 2 3)` as a list of generators with 1-based points.
pub fn parse_generators(s: &str) -> Result<Vec<Permutation>> {
    let mut raw: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut degree = 0usize;
    for part in split_top_level(s) {
        let part = part.trim();
        let mut cycles = Vec::new();
        let mut rest = part;
        while !rest.is_empty() {
            let Some(open) = rest.strip_prefix('(') else {
                return input(format!("expected '(' in '{part}'"));
            };
            let Some(close) = open.find(')') else {
                return input(format!("unbalanced parentheses in '{part}'"));
            };
            let pts = open[..close]
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if p >= 1 => Ok(p - 1),
                    _ => Err(crate::Error::Input(format!("bad point '{t}'"))),
                })
                .collect::<Result<Vec<usize>>>()?;
            degree = degree.max(pts.iter().map(|p| p + 1).max().unwrap_or(0));
            cycles.push(pts);
            rest = open[close + 1..].trim_start();
        }
        raw.push(cycles);
    }
    raw.iter().map(|c| Permutation::from_cycles(degree.max(1), c)).collect()
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts.into_iter().filter(|p| !p.trim().is_empty()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_named_groups() {
        for (spec, order) in [
            ("C1", 1),
            ("C2", 2),
            ("S3", 6),
            ("C2xC2", 4),
            ("D4", 4),
            ("D8", 8),
            ("D12", 12),
            ("Q8", 8),
            ("A4", 12),
            ("A5", 60),
            ("S4", 24),
            ("C2xS3", 12),
            ("C2xC2xC2", 8),
            ("perm:(1 2)(3 4),(1 2 3)", 12),
            ("perm:(1 2)", 2),
        ] {
            let g = named_group(spec).unwrap();
            assert_eq!(g.order(), order, "{spec}");
            assert!(g.verify_tables(), "{spec}");
        }
    }

    #[test]
    fn klein_four_has_exponent_two() {
        let g = named_group("C2xC2").unwrap();
        assert_eq!(g.exponent(), 2);
        assert!(g.is_abelian());
        let q = named_group("Q8").unwrap();
        assert_eq!(q.exponent(), 4);
        assert!(!q.is_abelian());
        // Q8 has a unique involution
        assert_eq!((0..8).filter(|&a| q.element_order(a) == 2).count(), 1);
    }

    #[test]
    fn bad_specs() {
        for spec in ["", "X3", "D5", "D2", "C", "C2x", "perm:(1 2", "perm:(0 1)"] {
            assert!(named_group(spec).is_err(), "{spec}");
        }
        assert!(matches!(named_group("S6"), Err(crate::Error::Size { .. })));
        assert!(named_group_with_cap("S6", 720).is_ok());
    }
}
