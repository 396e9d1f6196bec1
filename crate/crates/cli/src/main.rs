mod labels;
mod verify;

/// `println!` that tolerates a closed stdout (e.g. piping into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use labels::Labels;
use sburnside::biset;
use sburnside::cokernel::{cokernel_order, obs_moduli, verify_exact_sequence, CheckReport};
use sburnside::group::{quotient, subgroup_embedding, DEFAULT_MAX_ORDER};
use sburnside::idempotents::all_idempotents;
use sburnside::lattice::prime_divisors;
use sburnside::named::named_group_with_cap;
use sburnside::ring::{Coeff, Combination};
use sburnside::spectrum::connected_components;
use sburnside::{BurnsideElt, FiniteGroup, SliceClassTable, SubgroupLattice, DEFAULT_MAX_SLICES};

#[derive(Parser)]
#[command(name = "sburn", version, about = "n-simplicial Burnside rings of small finite groups")]
struct Cli {
    /// Group spec: C<n>, D<n>, S<n>, A<n>, Q8, products with `x`, or perm:<cycles>,...
    #[arg(long, global = true)]
    group: Option<String>,
    /// Simplicial degree.
    #[arg(long, global = true, default_value_t = 0)]
    n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SLICES)]
    max_slices: usize,
    /// Largest accepted degree.
    #[arg(long, global = true, default_value_t = 3)]
    max_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the slice classes (the basis) and the subgroup class names.
    Slices,
    /// Table of marks with its determinant.
    Marks,
    /// Product of two basis elements.
    Multiply { a: String, b: String },
    /// Primitive idempotents over Q.
    Idempotents,
    /// Connected components of the prime spectrum.
    Spectrum,
    /// Run the invariant suite; exit code 1 if any property fails.
    Verify,
    /// Möbius function μ(T, S) of the slice poset for all T below S.
    Mobius {
        upper: String,
        /// A single lower slice; every term must name one subgroup (use @<id>).
        #[arg(long)]
        lower: Option<String>,
    },
    /// Face d_j (1 ≤ j ≤ n), deleting term j.
    Face {
        #[arg(long)]
        j: usize,
        chain: String,
    },
    /// Degeneracy s_i (0 ≤ i ≤ n), repeating term i.
    Degeneracy {
        #[arg(long)]
        i: usize,
        chain: String,
    },
    /// Restriction to a subgroup H; output uses the names of H's own classes.
    Restrict {
        #[arg(long)]
        subgroup: String,
        chain: String,
    },
    /// Induction from a subgroup H; the chain is written in H's names.
    Induce {
        #[arg(long)]
        subgroup: String,
        chain: String,
    },
    /// Inflation from G/N; the chain is written in G/N's names.
    Inflate {
        #[arg(long)]
        normal: String,
        chain: String,
    },
    /// Deflation to G/N.
    Deflate {
        #[arg(long)]
        normal: String,
        chain: String,
    },
    /// Cokernel of the ghost map: moduli per class and the exact-sequence checks.
    Obs {
        #[arg(long)]
        p: Option<u64>,
    },
}

struct Ring {
    spec: String,
    labels: Labels,
    table: Arc<SliceClassTable>,
}

impl Ring {
    fn over(spec: String, group: Arc<FiniteGroup>, n: usize, max_slices: usize) -> Result<Ring> {
        let lattice = Arc::new(SubgroupLattice::new(group)?);
        Ring::on(spec, &lattice, n, max_slices)
    }

    fn on(spec: String, lattice: &Arc<SubgroupLattice>, n: usize, max_slices: usize) -> Result<Ring> {
        let table = Arc::new(SliceClassTable::with_cap(lattice.clone(), n, max_slices)?);
        Ok(Ring { spec, labels: Labels::new(lattice), table })
    }

    fn classes_json(&self) -> Value {
        let t = &self.table;
        (0..t.len())
            .map(
                |c| json!({"id": c.to_string(), "chain": self.labels.class(t, c), "weyl": t.weyl_order(c).to_string()}),
            )
            .collect()
    }

    fn header(&self) -> Value {
        json!({"group": self.spec, "n": self.table.degree().to_string(), "classes": self.classes_json()})
    }
}

fn q_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn element_json<C: Coeff>(x: &Combination<C>, show: impl Fn(&C) -> String) -> Value
where
    Combination<C>: GhostStrings,
{
    json!({
        "terms": x.terms().map(|(c, m)| json!({"class": c.to_string(), "coeff": show(m)})).collect::<Vec<_>>(),
        "ghost": x.ghost_strings(),
    })
}

trait GhostStrings {
    fn ghost_strings(&self) -> Vec<String>;
}

impl GhostStrings for Combination<BigInt> {
    fn ghost_strings(&self) -> Vec<String> {
        self.ghost().values().iter().map(|v| v.to_string()).collect()
    }
}

impl GhostStrings for Combination<BigRational> {
    fn ghost_strings(&self) -> Vec<String> {
        self.ghost().values().iter().map(q_string).collect()
    }
}

fn print_json(v: &Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_checks(checks: &[CheckReport]) {
    for c in checks {
        say!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.check, c.detail);
    }
}

fn checks_json(checks: &[CheckReport]) -> Value {
    checks.iter().map(|c| json!({"check": c.check, "pass": c.pass, "detail": c.detail})).collect()
}

/// Prints one integral element in the chosen format.
fn emit_element(ring: &Ring, format: Format, x: &BurnsideElt, extra: Value) {
    match format {
        Format::Text => say!("{}", ring.labels.element(x)),
        Format::Json => {
            let mut v = ring.header();
            v["elements"] = json!([element_json(x, |m| m.to_string())]);
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, extra) {
                dst.extend(src);
            }
            print_json(&v);
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let spec = cli.group.clone().context("--group is required")?;
    if cli.n > cli.max_n {
        bail!("degree {} exceeds --max-n {}", cli.n, cli.max_n);
    }
    let group = Arc::new(named_group_with_cap(&spec, cli.max_order)?);
    let n = cli.n;
    let ring = Ring::over(spec.clone(), group.clone(), n, cli.max_slices)?;
    let t = &ring.table;
    let fmt = cli.format;

    match cli.command {
        Command::Slices => match fmt {
            Format::Text => {
                let l = ring.labels.lattice();
                say!(
                    "{} class{} of {n}-slices of {spec} ({} slices)",
                    t.len(),
                    if t.len() == 1 { "" } else { "es" },
                    t.slice_count()
                );
                say!("subgroup classes:");
                for &r in l.class_reps() {
                    let conj = (0..l.len()).filter(|&s| l.class_rep(s) == r).count();
                    say!(
                        "  {:<5} order {:<4} @{} ({} conjugate{})",
                        ring.labels.subgroup(r),
                        l.order(r),
                        r,
                        conj,
                        if conj == 1 { "" } else { "s" }
                    );
                }
                say!("slice classes:");
                for c in 0..t.len() {
                    let orders: Vec<String> = t.rep(c).parts().iter().map(|&s| l.order(s).to_string()).collect();
                    say!(
                        "  #{c:<4} {:<24} orders ({})  |W| = {}  |N| = {}",
                        ring.labels.class(t, c),
                        orders.join(", "),
                        t.weyl_order(c),
                        l.order(t.normalizer(c))
                    );
                }
            }
            Format::Json => print_json(&ring.header()),
        },

        Command::Marks => {
            let k = t.len();
            let row =
                |i: usize| -> Vec<u64> { (0..k).map(|j| if i <= j { u64::from(t.mark(i, j)) } else { 0 }).collect() };
            let det = cokernel_order(t);
            let weyl: BigInt = (0..k).map(|c| BigInt::from(t.weyl_order(c))).product();
            let ok = det == weyl;
            match fmt {
                Format::Text => {
                    for i in 0..k {
                        let r: Vec<String> = row(i).iter().map(|v| format!("{v:>3}")).collect();
                        say!("{:<20} {}", ring.labels.class(t, i), r.join(" "));
                    }
                    say!("det = {det}; ∏|W| = {weyl}: {}", if ok { "equal" } else { "DIFFERENT" });
                }
                Format::Json => {
                    let mut v = ring.header();
                    v["matrix"] = (0..k).map(|i| row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect();
                    v["det"] = json!(det.to_string());
                    v["weyl_product"] = json!(weyl.to_string());
                    print_json(&v);
                }
            }
            return Ok(ok);
        }

        Command::Multiply { a, b } => {
            let x = BurnsideElt::basis(t, ring.labels.resolve_chain(t, &a)?);
            let y = BurnsideElt::basis(t, ring.labels.resolve_chain(t, &b)?);
            emit_element(&ring, fmt, &x.multiply(&y)?, json!({}));
        }

        Command::Idempotents => {
            let es = all_idempotents(t)?;
            match fmt {
                Format::Text => {
                    for (c, e) in es.iter().enumerate() {
                        say!("e[{}] = {}", ring.labels.class(t, c), ring.labels.element(e));
                    }
                    say!("verified: {} idempotents, ghost indicators, formula = back substitution, Σ = 1", es.len());
                }
                Format::Json => {
                    let mut v = ring.header();
                    v["elements"] = es.iter().map(|e| element_json(e, q_string)).collect();
                    print_json(&v);
                }
            }
        }

        Command::Spectrum => {
            let comps = connected_components(t)?;
            let solvable = ring.labels.lattice().is_solvable();
            match fmt {
                Format::Text => {
                    say!("{} component{}", comps.len(), if comps.len() == 1 { "" } else { "s" });
                    for (i, comp) in comps.iter().enumerate() {
                        let names: Vec<String> =
                            comp.iter().map(|&c| format!("[{}]", ring.labels.class(t, c))).collect();
                        say!("  {i}: {}", names.join(" "));
                    }
                    say!("{}", if solvable { "solvable" } else { "not solvable" });
                }
                Format::Json => {
                    let mut v = ring.header();
                    v["components"] =
                        comps.iter().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect();
                    v["solvable"] = json!(solvable);
                    print_json(&v);
                }
            }
            return Ok((comps.len() == 1) == solvable);
        }

        Command::Verify => {
            let lattice = ring.labels.lattice();
            let mut tables: Vec<Arc<SliceClassTable>> = (0..n)
                .map(|d| SliceClassTable::with_cap(lattice.clone(), d, cli.max_slices).map(Arc::new))
                .collect::<sburnside::Result<_>>()?;
            tables.push(t.clone());
            if n < cli.max_n {
                if let Ok(up) = SliceClassTable::with_cap(lattice.clone(), n + 1, cli.max_slices) {
                    tables.push(Arc::new(up));
                }
            }
            let checks = verify::run(&tables, n);
            let ok = checks.iter().all(|c| c.pass);
            match fmt {
                Format::Text => print_checks(&checks),
                Format::Json => {
                    let mut v = ring.header();
                    v["checks"] = checks_json(&checks);
                    print_json(&v);
                }
            }
            return Ok(ok);
        }

        Command::Mobius { upper, lower } => {
            let s = t.rep(ring.labels.resolve_chain(t, &upper)?).clone();
            if let Some(lower) = lower {
                let u = ring.labels.resolve_slice(&lower)?;
                let formula = t.mobius_pi(&u, &s)?;
                let recursive = t.mobius_pi_recursive(&u, &s)?;
                let ok = formula == recursive;
                match fmt {
                    Format::Text => say!("μ = {formula} (recursion: {recursive})"),
                    Format::Json => {
                        let mut v = ring.header();
                        v["mobius"] = json!(formula.to_string());
                        v["recursive"] = json!(recursive.to_string());
                        print_json(&v);
                    }
                }
                return Ok(ok);
            }
            let column = t.mobius_pi_column(&s)?;
            let mut per_class: Vec<(usize, BigInt)> = vec![(0, BigInt::from(0)); t.len()];
            let mut ok = true;
            for (u, mu) in &column {
                ok &= t.mobius_pi(u, &s)? == BigInt::from(*mu);
                let c = t.class_of_checked(u)?;
                per_class[c].0 += 1;
                per_class[c].1 += *mu;
            }
            let rows: Vec<(usize, &(usize, BigInt))> =
                per_class.iter().enumerate().filter(|(_, (cnt, _))| *cnt > 0).collect();
            match fmt {
                Format::Text => {
                    say!("μ(T, S) for S = ({}), summed over the T in each class:", ring.labels.chain(&s));
                    for (c, (cnt, sum)) in &rows {
                        say!(
                            "  [{}]  {cnt} slice{}  Σμ = {sum}",
                            ring.labels.class(t, *c),
                            if *cnt == 1 { "" } else { "s" }
                        );
                    }
                    say!(
                        "product formula {} the recursion on all {} slices",
                        if ok { "matches" } else { "DIFFERS FROM" },
                        column.len()
                    );
                }
                Format::Json => {
                    let mut v = ring.header();
                    v["mobius"] = rows
                        .iter()
                        .map(|(c, (cnt, sum))| json!({"class": c.to_string(), "slices": cnt.to_string(), "sum": sum.to_string()}))
                        .collect();
                    print_json(&v);
                }
            }
            return Ok(ok);
        }

        Command::Face { j, chain } => {
            if n == 0 {
                bail!("no faces in degree 0");
            }
            let x = BurnsideElt::basis(t, ring.labels.resolve_chain(t, &chain)?);
            let target = Ring::on(spec, ring.labels.lattice(), n - 1, cli.max_slices)?;
            emit_element(&target, fmt, &x.face(j, &target.table)?, json!({}));
        }

        Command::Degeneracy { i, chain } => {
            if n + 1 > cli.max_n {
                bail!("degree {} exceeds --max-n {}", n + 1, cli.max_n);
            }
            let x = BurnsideElt::basis(t, ring.labels.resolve_chain(t, &chain)?);
            let target = Ring::on(spec, ring.labels.lattice(), n + 1, cli.max_slices)?;
            emit_element(&target, fmt, &x.degeneracy(i, &target.table)?, json!({}));
        }

        Command::Restrict { subgroup, chain } => {
            let l = ring.labels.lattice();
            let h = ring.labels.resolve_class_rep(&subgroup)?;
            let emb = subgroup_embedding(&group, &l.subgroup(h).members)?;
            let sub =
                Ring::over(format!("{spec}|{}", ring.labels.subgroup(h)), emb.source().clone(), n, cli.max_slices)?;
            let x = BurnsideElt::basis(t, ring.labels.resolve_chain(t, &chain)?);
            emit_element(&sub, fmt, &biset::restriction(&emb, &x, &sub.table)?, json!({}));
        }

        Command::Induce { subgroup, chain } => {
            let l = ring.labels.lattice();
            let h = ring.labels.resolve_class_rep(&subgroup)?;
            let emb = subgroup_embedding(&group, &l.subgroup(h).members)?;
            let sub =
                Ring::over(format!("{spec}|{}", ring.labels.subgroup(h)), emb.source().clone(), n, cli.max_slices)?;
            let x = BurnsideElt::basis(&sub.table, sub.labels.resolve_chain(&sub.table, &chain)?);
            emit_element(&ring, fmt, &biset::induction(&emb, &x, t)?, json!({}));
        }

        Command::Inflate { normal, chain } => {
            let (q, quot) = quotient_ring(&ring, &group, &normal, n, cli.max_slices)?;
            let x = BurnsideElt::basis(&quot.table, quot.labels.resolve_chain(&quot.table, &chain)?);
            emit_element(&ring, fmt, &biset::inflation(&q, &x, t)?, json!({}));
        }

        Command::Deflate { normal, chain } => {
            let (q, quot) = quotient_ring(&ring, &group, &normal, n, cli.max_slices)?;
            let x = BurnsideElt::basis(t, ring.labels.resolve_chain(t, &chain)?);
            emit_element(&quot, fmt, &biset::deflation(&q, &x, &quot.table)?, json!({}));
        }

        Command::Obs { p } => {
            let primes = match p {
                Some(p) => vec![p],
                None => prime_divisors(group.order() as u64),
            };
            let order = cokernel_order(t);
            let mut checks = Vec::new();
            let mut per_prime = Vec::new();
            for &p in &primes {
                let moduli = obs_moduli(t, Some(p))?;
                per_prime.push((p, moduli));
                checks.extend(
                    verify_exact_sequence(t, p)?
                        .into_iter()
                        .map(|r| CheckReport::new(format!("{}[p={p}]", r.check), r.pass, r.detail)),
                );
            }
            let ok = checks.iter().all(|c| c.pass);
            match fmt {
                Format::Text => {
                    say!("|Obs| = {order}");
                    for (p, moduli) in &per_prime {
                        let part: u64 = moduli.iter().product();
                        say!("p = {p}: p-part {part}");
                        for (c, m) in moduli.iter().enumerate().filter(|(_, &m)| m > 1) {
                            say!("  [{}]  Z/{m}", ring.labels.class(t, c));
                        }
                    }
                    print_checks(&checks);
                }
                Format::Json => {
                    let mut v = ring.header();
                    v["order"] = json!(order.to_string());
                    v["moduli"] = per_prime
                        .iter()
                        .map(|(p, m)| json!({"p": p.to_string(), "moduli": m.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
                        .collect();
                    v["checks"] = checks_json(&checks);
                    print_json(&v);
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn quotient_ring(
    ring: &Ring,
    group: &Arc<FiniteGroup>,
    normal: &str,
    n: usize,
    max_slices: usize,
) -> Result<(sburnside::GroupHom, Ring)> {
    let l = ring.labels.lattice();
    let nid = ring.labels.resolve_class_rep(normal)?;
    if !l.is_normal(nid) {
        bail!("'{normal}' is not a normal subgroup");
    }
    let q = quotient(group, &l.subgroup(nid).members)?;
    let quot = Ring::over(format!("{}/{}", ring.spec, ring.labels.subgroup(nid)), q.target().clone(), n, max_slices)?;
    Ok((q, quot))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
