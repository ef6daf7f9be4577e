//! Exhaustive checks of the structural identities at small degree.
//!
//! Every check takes its bounds explicitly and returns a [`Tally`] of cases
//! and failures. The [`SUITES`] registry exposes them under stable ids with a
//! single degree parameter, clamped to a per-suite cap.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::anticyclic::{apply_tau, apply_theta, apply_theta_inv, convention, diese, tau_matrix};
use crate::categorify::{
    build_m, check_relations, decategorify, random_path_check, tensor, PosetModule, ProductKind, MAX_MODULE_DEGREE,
};
use crate::dendriform::{
    compose, eval_operation, over_elem, over_graft, star, star_interval, under_elem, under_graft, DendElem,
    LabeledElem, LabeledTree,
};
use crate::error::{Error, Result};
use crate::noncrossing::{
    compose_ncp, enumerate_ncp, enumerate_nct, ncp_to_dend, simple_nct, star_ncp, AngleKind, NcPlant, NcTable,
};
use crate::projective::{
    decompose_based, hasse_pivot_match, is_projective_elem, is_projective_nct, projective_index, projective_table,
    star_factorization,
};
use crate::tamari::{euler_quadratic, leq, PosetView};
use crate::trees::{catalan, enumerate_trees, Tree};

const LISTED_FAILURES: usize = 10;

/// Cases examined and failures found by a check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub cases: u64,
    pub failed: u64,
    /// The first few failures, in a deterministic order.
    pub failures: Vec<String>,
}

impl Tally {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failed += other.failed;
        let room = LISTED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

fn par_cases<T, F>(items: Vec<T>, f: F) -> Result<Tally>
where
    T: Send,
    F: Fn(T, &mut Tally) -> Result<()> + Sync + Send,
{
    items
        .into_par_iter()
        .map(|item| {
            let mut t = Tally::default();
            f(item, &mut t)?;
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

fn basis(t: &Tree) -> DendElem {
    DendElem::basis(t.clone())
}

fn proj(x: &Tree) -> Result<DendElem> {
    let view = PosetView::shared(x.degree())?;
    Ok(view.down_sum(view.index_of(x).expect("tree of the view's degree")))
}

fn gauche() -> Tree {
    Tree::unit().over(&Tree::unit())
}

fn marbre_image() -> Result<DendElem> {
    DendElem::sum_all(2)
}

/// Degree pairs `(m, n)` with `m, n >= 1` and `m + n <= max_sum`.
fn degree_pairs(max_sum: usize) -> Vec<(usize, usize)> {
    (1..max_sum)
        .flat_map(|m| (1..=max_sum - m).map(move |n| (m, n)))
        .collect()
}

/// All basis pairs `(x, y)` with degree pair in `degrees`.
fn tree_pairs(degrees: impl IntoIterator<Item = (usize, usize)>) -> Result<Vec<(Tree, Tree)>> {
    let mut out = Vec::new();
    for (m, n) in degrees {
        let ys = enumerate_trees(n)?;
        for x in enumerate_trees(m)? {
            out.extend(ys.iter().map(|y| (x.clone(), y.clone())));
        }
    }
    Ok(out)
}

fn tree_triples(degrees: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Vec<(Tree, Tree, Tree)>> {
    let mut out = Vec::new();
    for (m, n, p) in degrees {
        for (x, y) in tree_pairs([(m, n)])? {
            out.extend(enumerate_trees(p)?.into_iter().map(|z| (x.clone(), y.clone(), z)));
        }
    }
    Ok(out)
}

fn each_at_most(k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for m in 1..=k {
        for n in 1..=k {
            for p in 1..=k {
                out.push((m, n, p));
            }
        }
    }
    out
}

fn sum_at_most(s: usize) -> Vec<(usize, usize, usize)> {
    each_at_most(s)
        .into_iter()
        .filter(|&(m, n, p)| m + n + p <= s)
        .collect()
}

fn nct_pairs(degrees: impl IntoIterator<Item = (usize, usize)>) -> Result<Vec<(NcPlant, NcPlant)>> {
    let mut out = Vec::new();
    for (m, n) in degrees {
        let qs = enumerate_nct(n)?;
        for p in enumerate_nct(m)? {
            out.extend(qs.iter().map(|q| (p, *q)));
        }
    }
    Ok(out)
}

// ---- trees

/// `|Y_n|` is the Catalan number, leaves number `n + 1`, text round-trips.
pub fn tree_counts(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        let ts = enumerate_trees(n)?;
        let c = ts.len() as u64;
        t.check(c == catalan(n), || format!("|Y_{n}| = {c}, expected {}", catalan(n)));
        for x in &ts {
            let ok = x.degree() == n && x.leaf_count() == n + 1 && Tree::parse(&x.to_string()).as_ref() == Ok(x);
            t.check(ok, || format!("shape invariants fail on {x}"));
        }
        t.check(ts.windows(2).all(|w| w[0] < w[1]), || {
            format!("Y_{n} not strictly ordered")
        });
    }
    Ok(t)
}

/// Over and under are associative and add degrees.
pub fn tree_grafting(per_factor: usize) -> Result<Tally> {
    par_cases(tree_triples(each_at_most(per_factor))?, |(x, y, z), t| {
        t.check(x.over(&y).over(&z) == x.over(&y.over(&z)), || {
            format!("over not associative on {x}, {y}, {z}")
        });
        t.check(x.under(&y).under(&z) == x.under(&y.under(&z)), || {
            format!("under not associative on {x}, {y}, {z}")
        });
        let d = x.degree() + y.degree();
        t.check(x.over(&y).degree() == d && x.under(&y).degree() == d, || {
            format!("grafting {x} and {y} changes the degree")
        });
        Ok(())
    })
}

/// Reversal is an involution exchanging over and under.
pub fn tree_reversal(max_sum: usize) -> Result<Tally> {
    par_cases(tree_pairs(degree_pairs(max_sum))?, |(x, y), t| {
        t.check(x.reverse().reverse() == x, || {
            format!("reversal of {x} is not an involution")
        });
        t.check(x.over(&y).reverse() == y.reverse().under(&x.reverse()), || {
            format!("reverse({x} / {y}) differs")
        });
        t.check(x.under(&y).reverse() == y.reverse().over(&x.reverse()), || {
            format!("reverse({x} \\ {y}) differs")
        });
        Ok(())
    })
}

// ---- tamari

/// Every tree of degree `n` has exactly `n - 1` lower and upper covers.
pub fn tamari_regularity(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        let view = PosetView::shared(n)?;
        for i in 0..view.len() {
            let deg = view.lower_covers(i).len() + view.upper_covers(i).len();
            t.check(deg == n - 1, || format!("{} has {deg} neighbours", view.element(i)));
        }
    }
    Ok(t)
}

/// Reversal reverses the order.
pub fn tamari_reversal(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        let view = PosetView::shared(n)?;
        let r: Vec<usize> = view
            .elements()
            .iter()
            .map(|x| view.index_of(&x.reverse()).unwrap())
            .collect();
        for i in 0..view.len() {
            for j in 0..view.len() {
                t.check(view.leq_idx(i, j) == view.leq_idx(r[j], r[i]), || {
                    format!("reversal breaks {} <= {}", view.element(i), view.element(j))
                });
            }
        }
    }
    Ok(t)
}

/// `μ · ζ = Id` and `μ` takes values in `{-1, 0, 1}`.
pub fn tamari_mobius(max_n: usize) -> Result<Tally> {
    let mut total = Tally::default();
    for n in 1..=max_n {
        let view = PosetView::shared(n)?;
        let part = par_cases((0..view.len()).collect(), |s, t| {
            let row = view.mobius_row(s);
            t.check(
                row.iter().all(|&(u, v)| (-1..=1).contains(&v) && view.leq_idx(s, u)),
                || format!("Möbius row of {} out of range", view.element(s)),
            );
            for u in view.up_set(s).iter() {
                let acc: i64 = row.iter().filter(|&&(w, _)| view.leq_idx(w, u)).map(|&(_, v)| v).sum();
                t.check(acc == (s == u) as i64, || {
                    format!("(μζ)[{}][{}] = {acc}", view.element(s), view.element(u))
                });
            }
            Ok(())
        })?;
        total = total.merge(part);
    }
    Ok(total)
}

/// Intervals agree with a filter by two independent order tests.
pub fn tamari_intervals(max_n: usize) -> Result<Tally> {
    let mut total = Tally::default();
    for n in 1..=max_n {
        let view = PosetView::shared(n)?;
        let ts = view.elements();
        let below: Vec<Vec<bool>> = ts
            .par_iter()
            .map(|x| ts.iter().map(|z| leq(x, z)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let part = par_cases((0..ts.len()).collect(), |i, t| {
            for j in 0..ts.len() {
                let direct = view.interval(&ts[i], &ts[j])?;
                let filtered: Vec<Tree> = (0..ts.len())
                    .filter(|&k| below[i][k] && below[k][j])
                    .map(|k| ts[k].clone())
                    .collect();
                t.check(direct == filtered, || {
                    format!("interval [{}, {}] differs", ts[i], ts[j])
                });
            }
            Ok(())
        })?;
        total = total.merge(part);
    }
    Ok(total)
}

// ---- dendriform

/// Unit laws of composition; evaluation on vertices reproduces the tree.
pub fn dend_unit(max_n: usize) -> Result<Tally> {
    let unit = DendElem::unit();
    let mut t = Tally::default();
    for n in 1..=max_n {
        for x in enumerate_trees(n)? {
            let bx = basis(&x);
            for i in 1..=n {
                t.check(compose(&bx, i, &unit)? == bx, || format!("{x} ∘_{i} unit differs"));
            }
            t.check(compose(&unit, 1, &bx)? == bx, || format!("unit ∘_1 {x} differs"));
            let args: Vec<LabeledElem> = (1..=n as u32)
                .map(|k| LabeledElem::from([(LabeledTree::vertex(k), 1)]))
                .collect();
            let expect = LabeledElem::from([(LabeledTree::from_shape(&x, 1), 1)]);
            t.check(eval_operation(&x, &args)? == expect, || {
                format!("evaluating {x} on vertices")
            });
        }
    }
    Ok(t)
}

/// Sequential and parallel associativity of the composition maps.
pub fn dend_operad(max_sum: usize) -> Result<Tally> {
    par_cases(tree_triples(sum_at_most(max_sum))?, |(x, y, z), t| {
        let (m, n) = (x.degree(), y.degree());
        let (bx, by, bz) = (basis(&x), basis(&y), basis(&z));
        for i in 1..=m {
            let xy = compose(&bx, i, &by)?;
            for j in 1..=n {
                let lhs = compose(&xy, i + j - 1, &bz)?;
                let rhs = compose(&bx, i, &compose(&by, j, &bz)?)?;
                t.check(lhs == rhs, || format!("sequential axiom on {x} ∘_{i} {y} ∘_{j} {z}"));
            }
            for j in i + 1..=m {
                let lhs = compose(&xy, j + n - 1, &bz)?;
                let rhs = compose(&compose(&bx, j, &bz)?, i, &by)?;
                t.check(lhs == rhs, || format!("parallel axiom on {x}, {y} at {i}, {z} at {j}"));
            }
        }
        Ok(())
    })
}

/// Compositions and the `*` product commute with reversal.
pub fn dend_reversal(per_factor: usize) -> Result<Tally> {
    let degrees = (1..=per_factor).flat_map(|m| (1..=per_factor).map(move |n| (m, n)));
    par_cases(tree_pairs(degrees)?, |(x, y), t| {
        let m = x.degree();
        let (bx, by) = (basis(&x), basis(&y));
        let (rx, ry) = (basis(&x.reverse()), basis(&y.reverse()));
        for i in 1..=m {
            t.check(compose(&bx, i, &by)?.reverse() == compose(&rx, m + 1 - i, &ry)?, || {
                format!("reversal of {x} ∘_{i} {y}")
            });
        }
        t.check(star(&bx, &by)?.reverse() == star(&ry, &rx)?, || {
            format!("reversal of {x} * {y}")
        });
        Ok(())
    })
}

/// Compositions of basis trees are sums of distinct trees.
pub fn dend_multiplicity_free(max_sum: usize) -> Result<Tally> {
    par_cases(tree_pairs(degree_pairs(max_sum))?, |(x, y), t| {
        for i in 1..=x.degree() {
            let c = compose(&basis(&x), i, &basis(&y))?;
            t.check(!c.is_zero() && c.terms().all(|(_, k)| k == 1), || {
                format!("{x} ∘_{i} {y} = {c}")
            });
        }
        Ok(())
    })
}

/// The composition formula for `*` equals the interval sum.
pub fn dend_star_interval(max_sum: usize) -> Result<Tally> {
    par_cases(tree_pairs(degree_pairs(max_sum))?, |(x, y), t| {
        let a = star(&basis(&x), &basis(&y))?;
        let b = star_interval(&x, &y)?;
        t.check(a == b, || format!("{x} * {y}: {a} against {b}"));
        Ok(())
    })
}

pub fn dend_star_assoc(max_sum: usize) -> Result<Tally> {
    par_cases(tree_triples(sum_at_most(max_sum))?, |(x, y, z), t| {
        let (bx, by, bz) = (basis(&x), basis(&y), basis(&z));
        t.check(star(&star(&bx, &by)?, &bz)? == star(&bx, &star(&by, &bz)?)?, || {
            format!("* not associative on {x}, {y}, {z}")
        });
        Ok(())
    })
}

/// Over and under computed through compositions agree with grafting.
pub fn dend_grafting(max_sum: usize) -> Result<Tally> {
    par_cases(tree_pairs(degree_pairs(max_sum))?, |(x, y), t| {
        let (bx, by) = (basis(&x), basis(&y));
        t.check(over_elem(&bx, &by)? == basis(&x.over(&y)), || format!("{x} / {y}"));
        t.check(under_elem(&bx, &by)? == basis(&x.under(&y)), || format!("{x} \\ {y}"));
        Ok(())
    })
}

/// Mixed relations between over, `*` and `∘_1`.
pub fn dend_relations(per_factor: usize) -> Result<Tally> {
    par_cases(tree_triples(each_at_most(per_factor))?, |(x, y, z), t| {
        let (bx, by, bz) = (basis(&x), basis(&y), basis(&z));
        t.check(
            over_graft(&bx, &star(&by, &bz)?) == star(&over_graft(&bx, &by), &bz)?,
            || format!("x / (y * z) on {x}, {y}, {z}"),
        );
        t.check(
            over_graft(&compose(&bx, 1, &by)?, &bz) == compose(&over_graft(&bx, &bz), 1, &by)?,
            || format!("(x ∘_1 y) / z on {x}, {y}, {z}"),
        );
        t.check(
            star(&compose(&bx, 1, &by)?, &bz)? == compose(&star(&bx, &bz)?, 1, &by)?,
            || format!("(x ∘_1 y) * z on {x}, {y}, {z}"),
        );
        Ok(())
    })
}

// ---- Euler form

fn euler_pairs(
    pairs: Vec<(Tree, Tree)>,
    op: impl Fn(&DendElem, &DendElem, usize) -> Result<Vec<DendElem>> + Sync + Send,
) -> Result<Tally> {
    par_cases(pairs, |(x, y), t| {
        let (bx, by) = (basis(&x), basis(&y));
        let e = euler_quadratic(&bx)? * euler_quadratic(&by)?;
        for (k, r) in op(&bx, &by, x.degree())?.into_iter().enumerate() {
            let er = euler_quadratic(&r)?;
            t.check(er == e, || {
                format!("E of product #{k} of {x}, {y} is {er}, expected {e}")
            });
        }
        Ok(())
    })
}

/// `E(x ∘_i y) = E(x) E(y)` for all `i`.
pub fn euler_compose(max_result: usize) -> Result<Tally> {
    euler_pairs(tree_pairs(degree_pairs(max_result + 1))?, |a, b, m| {
        (1..=m).map(|i| compose(a, i, b)).collect()
    })
}

pub fn euler_star(max_result: usize) -> Result<Tally> {
    euler_pairs(tree_pairs(degree_pairs(max_result))?, |a, b, _| Ok(vec![star(a, b)?]))
}

pub fn euler_diese(max_result: usize) -> Result<Tally> {
    euler_pairs(tree_pairs(degree_pairs(max_result + 1))?, |a, b, _| {
        Ok(vec![diese(a, b)?])
    })
}

// ---- anticyclic

/// A unique sign/transpose convention for `θ` satisfies its identities.
pub fn theta_convention() -> Result<Tally> {
    let mut t = Tally::default();
    let c = convention();
    t.check(c.is_ok(), || format!("{:?}", c.as_ref().err()));
    Ok(t)
}

/// Identities relating `θ`, `θ⁻¹` to over, under, `*` and reversal.
pub fn theta_relations(max_result: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let unit = DendElem::unit();
    t.check(apply_theta(&unit)? == -&unit, || "θ(unit) != -unit".into());
    let pairs = par_cases(tree_pairs(degree_pairs(max_result))?, |(x, y), t| {
        let (bx, by) = (basis(&x), basis(&y));
        let (tx, ty) = (apply_theta(&bx)?, apply_theta(&by)?);
        let (ix, iy) = (apply_theta_inv(&bx)?, apply_theta_inv(&by)?);
        t.check(apply_theta(&under_graft(&bx, &by))? == -star(&tx, &ty)?, || {
            format!("θ({x} \\ {y})")
        });
        t.check(apply_theta(&star(&bx, &by)?)? == -over_graft(&tx, &ty), || {
            format!("θ({x} * {y})")
        });
        t.check(apply_theta_inv(&over_graft(&bx, &by))? == -star(&ix, &iy)?, || {
            format!("θ⁻¹({x} / {y})")
        });
        t.check(apply_theta_inv(&star(&bx, &by)?)? == -under_graft(&ix, &iy), || {
            format!("θ⁻¹({x} * {y})")
        });
        Ok(())
    })?;
    let mut rev = Tally::default();
    for n in 1..=max_result {
        for x in enumerate_trees(n)? {
            rev.check(
                apply_theta(&basis(&x.reverse()))? == apply_theta_inv(&basis(&x))?.reverse(),
                || format!("θ of the reverse of {x}"),
            );
        }
    }
    Ok(t.merge(pairs).merge(rev))
}

/// The anticyclic axioms for `τ`.
pub fn tau_anticyclic(max_result: usize) -> Result<Tally> {
    par_cases(tree_pairs(degree_pairs(max_result + 1))?, |(x, y), t| {
        let n = x.degree();
        let (bx, by) = (basis(&x), basis(&y));
        let (tx, ty) = (apply_tau(&bx)?, apply_tau(&by)?);
        t.check(apply_tau(&compose(&bx, n, &by)?)? == -compose(&ty, 1, &tx)?, || {
            format!("τ({x} ∘_{n} {y})")
        });
        for i in 1..n {
            t.check(apply_tau(&compose(&bx, i, &by)?)? == compose(&tx, i + 1, &by)?, || {
                format!("τ({x} ∘_{i} {y})")
            });
        }
        Ok(())
    })
}

/// `τ(unit) = -unit` and `τ^{n+1} = Id`.
pub fn tau_order(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let unit = DendElem::unit();
    t.check(apply_tau(&unit)? == -&unit, || "τ(unit) != -unit".into());
    for n in 1..=max_n {
        let p = tau_matrix(n)?.pow(n as u32 + 1)?;
        t.check(p.is_identity(), || format!("τ^{} != Id on Dend({n})", n + 1));
    }
    Ok(t)
}

// ---- noncrossing

/// Every noncrossing tree of degree `n` has `n - 1` angles.
pub fn nc_angles(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for p in enumerate_nct(n)? {
            let c = p.angle_counts()?;
            t.check(c.total() == n - 1, || format!("{p} has {} angles", c.total()));
        }
    }
    Ok(t)
}

/// Generation from the three generators gives every plant.
pub fn nc_generation(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let table = NcTable::shared(max_n.max(2))?;
    for n in 1..=max_n {
        let generated: BTreeSet<NcPlant> = table.plants(n).iter().copied().collect();
        let direct: BTreeSet<NcPlant> = enumerate_ncp(n)?.into_iter().collect();
        t.check(generated == direct, || {
            format!("degree {n}: {} generated, {} enumerated", generated.len(), direct.len())
        });
    }
    let g = basis(&gauche());
    let d = basis(&Tree::unit().under(&Tree::unit()));
    t.check(ncp_to_dend(&NcPlant::garbre())? == g, || "image of Garbre".into());
    t.check(ncp_to_dend(&NcPlant::marbre())? == &g + &d, || "image of Marbre".into());
    t.check(ncp_to_dend(&NcPlant::darbre())? == d, || "image of Darbre".into());
    Ok(t)
}

/// The `*` product of noncrossing trees has no numerator edge.
pub fn nc_star_closed(max_sum: usize) -> Result<Tally> {
    par_cases(nct_pairs(degree_pairs(max_sum))?, |(p, q), t| {
        let r = star_ncp(&p, &q)?;
        t.check(r.is_tree(), || format!("{p} * {q} = {r}"));
        Ok(())
    })
}

/// `P ∘_i Q` is a tree iff `Q` is based or `P` contains the side `i`.
pub fn nc_gluing(max_result: usize) -> Result<Tally> {
    par_cases(nct_pairs(degree_pairs(max_result + 1))?, |(p, q), t| {
        for i in 1..=p.degree() {
            let r = compose_ncp(&p, i, &q)?;
            t.check(r.is_tree() == (q.is_based() || p.contains_side(i)), || {
                format!("{p} ∘_{i} {q} = {r}")
            });
        }
        Ok(())
    })
}

/// The map to `Dend` commutes with all compositions.
pub fn nc_morphism(max_result: usize) -> Result<Tally> {
    let table = NcTable::shared(max_result.max(2))?;
    let mut pairs = Vec::new();
    for (m, n) in degree_pairs(max_result + 1) {
        for p in table.plants(m) {
            pairs.extend(table.plants(n).iter().map(|q| (*p, *q)));
        }
    }
    par_cases(pairs, |(p, q), t| {
        for i in 1..=p.degree() {
            let lhs = ncp_to_dend(&compose_ncp(&p, i, &q)?)?;
            let rhs = compose(table.image(&p)?, i, table.image(&q)?)?;
            t.check(lhs == rhs, || format!("image of {p} ∘_{i} {q}"));
        }
        Ok(())
    })
}

/// The base path factorization into based trees recomposes.
pub fn nc_star_decomposition(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for p in enumerate_nct(n)? {
            let fs = p.decompose_star()?;
            let mut acc = fs[0];
            for f in &fs[1..] {
                acc = star_ncp(&acc, f)?;
            }
            t.check(fs.iter().all(NcPlant::is_based) && acc == p, || {
                format!("factors of {p}: {fs:?}")
            });
        }
    }
    Ok(t)
}

/// Simple noncrossing trees are in bijection with trees.
pub fn nc_simple(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for x in enumerate_trees(n)? {
            let p = simple_nct(&x)?;
            t.check(p.is_tree() && p.tree_of_simple().as_ref() == Ok(&x), || {
                format!("round trip of {x} through {p}")
            });
            t.check(ncp_to_dend(&p)? == basis(&x), || format!("image of {p} is not {x}"));
        }
        let simple: Vec<NcPlant> = enumerate_nct(n)?
            .into_iter()
            .filter(|p| p.angle_counts().map(|c| c.m == 0).unwrap_or(false))
            .collect();
        let decoded: BTreeSet<Tree> = simple.iter().filter_map(|p| p.tree_of_simple().ok()).collect();
        t.check(
            simple.len() as u64 == catalan(n) && decoded.len() == simple.len(),
            || format!("degree {n}: {} simple trees, {} decoded", simple.len(), decoded.len()),
        );
    }
    Ok(t)
}

/// Pivots between the simple noncrossing trees of one degree, read
/// through the bijection with trees.
#[derive(Clone, Debug, Serialize)]
pub struct SimplePivots {
    pub n: usize,
    pub hasse_edges: usize,
    /// Unordered pairs joined by a pivot.
    pub pivot_edges: usize,
    /// Pivots not along a Hasse edge, or not going up the order exactly
    /// when a G angle becomes a D angle.
    pub stray: Vec<String>,
}

impl SimplePivots {
    pub fn is_isomorphic(&self) -> bool {
        self.stray.is_empty() && self.pivot_edges == self.hasse_edges
    }
}

pub fn simple_pivots(n: usize) -> Result<SimplePivots> {
    let view = PosetView::shared(n)?;
    let simple: HashMap<NcPlant, usize> = enumerate_nct(n)?
        .into_iter()
        .filter_map(|p| p.tree_of_simple().ok().map(|x| (p, view.index_of(&x).unwrap())))
        .collect();
    let hasse: BTreeSet<(usize, usize)> = view.hasse_edges().into_iter().map(|(hi, lo)| (lo, hi)).collect();
    let mut edges = BTreeSet::new();
    let mut stray = Vec::new();
    for (p, &x) in &simple {
        for pv in p.pivots()? {
            let Some(&y) = simple.get(&pv.target) else { continue };
            let up = view.leq_idx(x, y);
            let g_to_d = pv.angle.kind == AngleKind::G && pv.after == AngleKind::D;
            let (lo, hi) = if up { (x, y) } else { (y, x) };
            if !hasse.contains(&(lo, hi)) || up != g_to_d {
                stray.push(format!("{p} -> {}", pv.target));
            }
            edges.insert((lo, hi));
        }
    }
    stray.sort();
    Ok(SimplePivots {
        n,
        hasse_edges: hasse.len(),
        pivot_edges: edges.len(),
        stray,
    })
}

/// Every pivot between simple noncrossing trees is a Hasse edge, going up
/// the order when it turns a G angle into a D angle.
pub fn nc_simple_pivots(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        let r = simple_pivots(n)?;
        t.check(r.stray.is_empty(), || {
            format!("degree {n}: pivots off the Hasse diagram {:?}", r.stray)
        });
    }
    Ok(t)
}

// ---- projective

/// Projective elements are the noncrossing trees without D angles.
pub fn proj_characterization(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        let table = projective_table(n)?;
        let view = PosetView::shared(n)?;
        for p in &table {
            let i = view.index_of(&p.x).unwrap();
            let c = p.nct.angle_counts()?;
            let ok = p.elem.terms().all(|(_, k)| k == 1)
                && p.elem.len() == view.down_set(i).len()
                && ncp_to_dend(&p.nct)? == p.elem
                && p.nct.contains_side(1)
                && c.d == 0
                && c.g + c.m == n - 1;
            t.check(ok, || format!("projective at {} with tree {}", p.x, p.nct));
        }
        let passing: BTreeSet<NcPlant> = enumerate_nct(n)?.into_iter().filter(is_projective_nct).collect();
        let images: BTreeSet<NcPlant> = table.iter().map(|p| p.nct).collect();
        t.check(passing.len() as u64 == catalan(n) && passing == images, || {
            format!("degree {n}: {} trees without D angles", passing.len())
        });
    }
    Ok(t)
}

/// `𝒫(x / y) = 𝒫(x) / 𝒫(y)`.
pub fn proj_over(per_factor: usize) -> Result<Tally> {
    let degrees = (1..=per_factor).flat_map(|m| (1..=per_factor).map(move |n| (m, n)));
    par_cases(tree_pairs(degrees)?, |(x, y), t| {
        t.check(proj(&x.over(&y))? == over_graft(&proj(&x)?, &proj(&y)?), || {
            format!("𝒫({x} / {y})")
        });
        Ok(())
    })
}

/// `𝒫(unit \ x) = unit * 𝒫(x) = Marbre ∘_2 𝒫(x)`.
pub fn proj_under(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let (unit, m) = (DendElem::unit(), marbre_image()?);
    for n in 1..max_n {
        for x in enumerate_trees(n)? {
            let px = proj(&x)?;
            let lhs = proj(&Tree::unit().under(&x))?;
            t.check(lhs == star(&unit, &px)? && lhs == compose(&m, 2, &px)?, || {
                format!("𝒫(unit \\ {x})")
            });
        }
    }
    Ok(t)
}

/// Over, `*`, `Marbre ∘_2`, `Garbre ∘_1` and tree-valued `∘_i` keep
/// projective elements projective.
pub fn proj_closure(max_result: usize) -> Result<Tally> {
    let g = basis(&gauche());
    let m = marbre_image()?;
    let mut t = Tally::default();
    for n in 1..max_result {
        for x in enumerate_trees(n)? {
            let px = proj(&x)?;
            t.check(is_projective_elem(&compose(&m, 2, &px)?)?, || {
                format!("Marbre ∘_2 𝒫({x})")
            });
            let based = compose(&g, 1, &px)?;
            let ok = match projective_index(&based)? {
                Some(y) => crate::projective::projective_element(&y)?.nct.is_based(),
                None => false,
            };
            t.check(ok, || format!("Garbre ∘_1 𝒫({x}) is not based projective"));
        }
    }
    let pairs = par_cases(tree_pairs(degree_pairs(max_result + 1))?, |(x, y), t| {
        let (px, py) = (
            crate::projective::projective_element(&x)?,
            crate::projective::projective_element(&y)?,
        );
        if x.degree() + y.degree() <= max_result {
            t.check(is_projective_elem(&over_graft(&px.elem, &py.elem))?, || {
                format!("𝒫({x}) / 𝒫({y})")
            });
            t.check(is_projective_elem(&star(&px.elem, &py.elem)?)?, || {
                format!("𝒫({x}) * 𝒫({y})")
            });
        }
        t.check(is_projective_elem(&compose(&px.elem, 1, &py.elem)?)?, || {
            format!("𝒫({x}) ∘_1 𝒫({y})")
        });
        for i in 1..=x.degree() {
            if compose_ncp(&px.nct, i, &py.nct)?.is_tree() {
                t.check(is_projective_elem(&compose(&px.elem, i, &py.elem)?)?, || {
                    format!("𝒫({x}) ∘_{i} 𝒫({y})")
                });
            }
        }
        Ok(())
    })?;
    Ok(t.merge(pairs))
}

/// Every projective of degree at least 2 is `P / Q` or `Marbre ∘_2 P`.
pub fn proj_alternative(max_n: usize) -> Result<Tally> {
    let m = marbre_image()?;
    let mut t = Tally::default();
    for n in 2..=max_n {
        let mut reachable = HashSet::new();
        for (x, y) in tree_pairs((1..n).map(|a| (a, n - a)))? {
            reachable.insert(over_graft(&proj(&x)?, &proj(&y)?));
        }
        for x in enumerate_trees(n - 1)? {
            reachable.insert(compose(&m, 2, &proj(&x)?)?);
        }
        for x in enumerate_trees(n)? {
            t.check(reachable.contains(&proj(&x)?), || {
                format!("𝒫({x}) has no decomposition")
            });
        }
    }
    Ok(t)
}

/// Based projectives are `Garbre ∘_1 Q` with `Q` projective.
pub fn proj_based(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 2..=max_n {
        for p in projective_table(n)? {
            if !p.nct.is_based() {
                t.check(decompose_based(&p.nct) == Err(Error::NotBased), || {
                    format!("{} is not based but decomposes", p.nct)
                });
                continue;
            }
            let q = decompose_based(&p.nct);
            t.check(
                q.as_ref()
                    .map(|q| is_projective_nct(q) && compose_ncp(&NcPlant::garbre(), 1, q) == Ok(p.nct))
                    == Ok(true),
                || format!("based decomposition of {}", p.nct),
            );
        }
    }
    Ok(t)
}

/// Projectives factor through `*` into based projectives.
pub fn proj_factorization(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for p in projective_table(n)? {
            let fs = star_factorization(&p.nct)?;
            let mut acc = fs[0];
            for f in &fs[1..] {
                acc = star_ncp(&acc, f)?;
            }
            t.check(
                acc == p.nct && fs.iter().all(|f| f.is_based() && is_projective_nct(f)),
                || format!("factorization of {}", p.nct),
            );
        }
    }
    Ok(t)
}

/// Hasse edges match good pivots between projectives.
pub fn proj_pivots(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 2..=max_n {
        let r = hasse_pivot_match(n);
        t.check(r.as_ref().is_ok_and(|m| m.hasse_edges == m.good_pivots), || {
            format!("degree {n}: {r:?}")
        });
    }
    Ok(t)
}

// ---- #

fn diese_unit(max_n: usize) -> Result<Tally> {
    let unit = DendElem::unit();
    let mut t = Tally::default();
    for n in 1..=max_n {
        for x in enumerate_trees(n)? {
            let bx = basis(&x);
            t.check(diese(&unit, &bx)? == bx && diese(&bx, &unit)? == bx, || {
                format!("unit # {x}")
            });
        }
    }
    Ok(t)
}

/// `#` is associative with unit the one-vertex tree. Triples have every
/// degree at most `min(bound, 3)` or degrees summing to at most `bound`.
pub fn diese_assoc(bound: usize) -> Result<Tally> {
    let degrees: BTreeSet<(usize, usize, usize)> = each_at_most(bound.min(3))
        .into_iter()
        .chain(sum_at_most(bound))
        .collect();
    let assoc = par_cases(tree_triples(degrees)?, |(x, y, z), t| {
        let (bx, by, bz) = (basis(&x), basis(&y), basis(&z));
        t.check(diese(&diese(&bx, &by)?, &bz)? == diese(&bx, &diese(&by, &bz)?)?, || {
            format!("# not associative on {x}, {y}, {z}")
        });
        Ok(())
    })?;
    Ok(assoc.merge(diese_unit(bound.saturating_sub(1))?))
}

/// Reversal is an anti-automorphism of `#`.
pub fn diese_reversal(per_factor: usize) -> Result<Tally> {
    let degrees = (1..=per_factor).flat_map(|m| (1..=per_factor).map(move |n| (m, n)));
    par_cases(tree_pairs(degrees)?, |(x, y), t| {
        let lhs = diese(&basis(&x), &basis(&y))?.reverse();
        let rhs = diese(&basis(&y.reverse()), &basis(&x.reverse()))?;
        t.check(lhs == rhs, || format!("reversal of {x} # {y}"));
        Ok(())
    })
}

/// Mixed associativity of `#` with `*`, over and under.
pub fn diese_mixed(per_factor: usize) -> Result<Tally> {
    par_cases(tree_triples(each_at_most(per_factor))?, |(x, y, z), t| {
        let (bx, by, bz) = (basis(&x), basis(&y), basis(&z));
        t.check(diese(&star(&bx, &by)?, &bz)? == star(&bx, &diese(&by, &bz)?)?, || {
            format!("(x * y) # z on {x}, {y}, {z}")
        });
        t.check(star(&diese(&bx, &by)?, &bz)? == diese(&bx, &star(&by, &bz)?)?, || {
            format!("(x # y) * z on {x}, {y}, {z}")
        });
        t.check(
            diese(&bx, &under_graft(&by, &bz))? == under_graft(&diese(&bx, &by)?, &bz),
            || format!("x # (y \\ z) on {x}, {y}, {z}"),
        );
        t.check(
            diese(&over_graft(&bx, &by), &bz)? == over_graft(&bx, &diese(&by, &bz)?),
            || format!("(x / y) # z on {x}, {y}, {z}"),
        );
        Ok(())
    })
}

/// `ΣY_m # ΣY_n = ΣY_{m+n-1}`.
pub fn diese_sums(max_result: usize) -> Result<Tally> {
    par_cases(degree_pairs(max_result + 1), |(m, n), t| {
        let r = diese(&DendElem::sum_all(m)?, &DendElem::sum_all(n)?)?;
        t.check(r == DendElem::sum_all(m + n - 1)?, || format!("ΣY_{m} # ΣY_{n} = {r}"));
        Ok(())
    })
}

/// `#` of projectives is projective.
pub fn diese_projective(max_result: usize) -> Result<Tally> {
    par_cases(tree_pairs(degree_pairs(max_result + 1))?, |(x, y), t| {
        t.check(is_projective_elem(&diese(&proj(&x)?, &proj(&y)?)?)?, || {
            format!("𝒫({x}) # 𝒫({y})")
        });
        Ok(())
    })
}

/// The closure of the images of Garbre and Marbre under `∘_1` and `#`
/// is the set of projectives of degree at least 2.
pub fn diese_closure(max_n: usize) -> Result<Tally> {
    let mut found: HashSet<DendElem> = HashSet::from([basis(&gauche()), marbre_image()?]);
    loop {
        let items: Vec<DendElem> = found.iter().cloned().collect();
        let mut fresh = HashSet::new();
        for a in &items {
            for b in &items {
                if a.degree() + b.degree() - 1 > max_n {
                    continue;
                }
                for c in [compose(a, 1, b)?, diese(a, b)?] {
                    if !found.contains(&c) {
                        fresh.insert(c);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        found.extend(fresh);
    }
    let mut t = Tally::default();
    for n in 2..=max_n {
        let expected: HashSet<DendElem> = enumerate_trees(n)?.iter().map(proj).collect::<Result<_>>()?;
        let got: HashSet<DendElem> = found.iter().filter(|a| a.degree() == n).cloned().collect();
        t.check(got == expected, || {
            format!(
                "degree {n}: closure has {} elements, {} projectives",
                got.len(),
                expected.len()
            )
        });
    }
    Ok(t)
}

fn subset_sum(n: usize, ts: &[Tree], mask: u64) -> Result<DendElem> {
    DendElem::sum_of(
        n,
        ts.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, t)| t.clone()),
    )
}

/// `S # T` is a sum of distinct trees, for all nonempty subsets of `Y_2` and
/// `samples` random pairs of nonempty subsets of `Y_3`.
pub fn diese_subsets(samples: usize, seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    let y2 = enumerate_trees(2)?;
    for s in 1..4u64 {
        for u in 1..4u64 {
            let r = diese(&subset_sum(2, &y2, s)?, &subset_sum(2, &y2, u)?)?;
            t.check(r.terms().all(|(_, k)| k == 1), || {
                format!("subsets {s:b} # {u:b} of Y_2 give {r}")
            });
        }
    }
    let y3 = enumerate_trees(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (s, u) = (rng.gen_range(1..32u64), rng.gen_range(1..32u64));
        let r = diese(&subset_sum(3, &y3, s)?, &subset_sum(3, &y3, u)?)?;
        t.check(r.terms().all(|(_, k)| k == 1), || {
            format!("subsets {s:05b} # {u:05b} of Y_3 give {r}")
        });
    }
    Ok(t)
}

// ---- categorification

fn module_params(max_result: usize) -> Vec<(ProductKind, usize, usize)> {
    let mut out = Vec::new();
    for kind in ProductKind::ALL {
        for (m, n) in degree_pairs(max_result + 1) {
            if kind.result_degree(m, n) <= max_result {
                out.push((kind, m, n));
            }
        }
    }
    out
}

/// Every tri-module satisfies all relations of its quiver.
pub fn cat_relations(max_result: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for (kind, m, n) in module_params(max_result.min(MAX_MODULE_DEGREE)) {
        let r = check_relations(&build_m(kind, m, n)?);
        t.check(r.passed, || {
            format!(
                "{kind} ({m}, {n}): {} violations, first {:?}",
                r.violation_count,
                r.violations.first()
            )
        });
    }
    Ok(t)
}

/// Random long parallel paths agree on every tri-module.
pub fn cat_random_paths(max_result: usize, samples: usize, seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    for (kind, m, n) in module_params(max_result.min(MAX_MODULE_DEGREE)) {
        let (sampled, bad) = random_path_check(&build_m(kind, m, n)?, samples, seed);
        t.check(bad == 0, || {
            format!("{kind} ({m}, {n}): {bad} of {sampled} path pairs disagree")
        });
    }
    Ok(t)
}

/// Tensoring `P(x) ⊠ P(y)` with a tri-module gives the product of projectives.
pub fn cat_decategorify(max_result: usize) -> Result<Tally> {
    let mut total = Tally::default();
    for (kind, m, n) in module_params(max_result.min(MAX_MODULE_DEGREE)) {
        let module = build_m(kind, m, n)?;
        let (vm, vn) = (PosetView::shared(m)?, PosetView::shared(n)?);
        let pairs = tree_pairs([(m, n)])?;
        let part = par_cases(pairs, |(x, y), t| {
            let expected = kind.apply(&proj(&x)?, &proj(&y)?)?;
            t.check(decategorify(&module, &x, &y)? == expected, || {
                format!("{kind}: class of P({x}) ⊠ P({y}) differs from {expected}")
            });
            let nmod = PosetModule::projective_product(&[(vm.clone(), x.clone()), (vn.clone(), y.clone())])?;
            let out = tensor(&nmod, &module)?;
            t.check(out.check_relations().is_ok(), || {
                format!("{kind}: tensor of P({x}) ⊠ P({y}) is not a module")
            });
            Ok(())
        })?;
        total = total.merge(part);
    }
    Ok(total)
}

/// Zeroing one map of a tri-module is detected, both on a commuting square
/// and on a pentagon where only paths of length 2 and 3 disagree.
pub fn cat_mutants(seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    for kind in ProductKind::ALL {
        let module = build_m(kind, 2, 2)?;
        let Some(a) = module.square_arrow() else {
            t.check(false, || format!("{kind}: no square to break"));
            continue;
        };
        let r = check_relations(&module.with_zeroed_arrow(a));
        t.check(!r.passed, || format!("{kind}: zeroed arrow {a} not detected"));
    }
    let module = build_m(ProductKind::Circ1, 1, 3)?;
    let q = module.quiver().clone();
    let v3 = PosetView::shared(3)?;
    let top = v3.index_of(v3.maximum()).unwrap();
    let v = q.vertex(&[0, top, top]);
    let a = q
        .out_arrows(v)
        .iter()
        .copied()
        .find(|&a| q.arrows()[a].factor == 2)
        .unwrap();
    let broken = module.with_zeroed_arrow(a);
    let r = check_relations(&broken);
    t.check(!r.passed && r.violations.iter().all(|v| v.relation == "path"), || {
        format!("pentagon fault: {r:?}")
    });
    let (sampled, bad) = random_path_check(&broken, 500, seed);
    t.check(bad > 0, || {
        format!("pentagon fault missed by {sampled} random path pairs")
    });
    Ok(t)
}

// ---- registry

/// A named check with one degree parameter.
pub struct Suite {
    pub id: &'static str,
    pub statement: &'static str,
    /// What the degree parameter `d` bounds.
    pub range: &'static str,
    pub cap: usize,
    run: fn(usize) -> Result<Tally>,
}

impl Suite {
    pub fn run(&self, d: usize) -> Result<Tally> {
        (self.run)(d.min(self.cap))
    }
}

const SUBSET_SAMPLES: usize = 100;
const SEED: u64 = 0x5eed;

macro_rules! suite {
    ($id:literal, $statement:literal, $range:literal, $cap:expr, $run:expr) => {
        Suite {
            id: $id,
            statement: $statement,
            range: $range,
            cap: $cap,
            run: $run,
        }
    };
}

pub static SUITES: &[Suite] = &[
    suite!(
        "trees.catalan",
        "|Y_n| is the n-th Catalan number",
        "n <= d",
        9,
        tree_counts
    ),
    suite!(
        "trees.grafting",
        "over and under are associative and add degrees",
        "each degree <= d",
        3,
        tree_grafting
    ),
    suite!(
        "trees.reversal",
        "reversal is an involution exchanging over and under",
        "degree sum <= d",
        6,
        tree_reversal
    ),
    suite!(
        "tamari.regularity",
        "the Hasse diagram of Y_n is regular of degree n-1",
        "n <= d",
        7,
        tamari_regularity
    ),
    suite!(
        "tamari.reversal",
        "reversal is an order anti-automorphism",
        "n <= d",
        5,
        tamari_reversal
    ),
    suite!(
        "tamari.mobius",
        "the Möbius function inverts zeta and takes values in {-1, 0, 1}",
        "n <= d",
        8,
        tamari_mobius
    ),
    suite!(
        "tamari.interval",
        "intervals agree with a double filter on the order",
        "n <= d",
        5,
        tamari_intervals
    ),
    suite!(
        "dend.unit",
        "the one-vertex tree is a unit for the compositions",
        "n <= d",
        5,
        dend_unit
    ),
    suite!(
        "dend.operad",
        "sequential and parallel operad axioms",
        "degree sum <= d",
        7,
        dend_operad
    ),
    suite!(
        "dend.reversal",
        "reversal sends x o_i y to rev x o_(m+1-i) rev y and is an anti-automorphism of *",
        "each degree <= d",
        3,
        dend_reversal
    ),
    suite!(
        "dend.multiplicity_free",
        "compositions of trees are sums of distinct trees",
        "degree sum <= d",
        7,
        dend_multiplicity_free
    ),
    suite!(
        "dend.star_interval",
        "x * y is the sum over the interval [x/y, x\\y]",
        "degree sum <= d",
        7,
        dend_star_interval
    ),
    suite!(
        "dend.star_assoc",
        "the * product is associative",
        "degree sum <= d",
        6,
        dend_star_assoc
    ),
    suite!(
        "dend.grafting",
        "over and under through compositions agree with grafting",
        "degree sum <= d",
        6,
        dend_grafting
    ),
    suite!(
        "dend.relations",
        "mixed relations between /, * and o_1",
        "each degree <= d",
        3,
        dend_relations
    ),
    suite!(
        "euler.compose",
        "the compositions preserve the Euler form",
        "result degree <= d",
        7,
        euler_compose
    ),
    suite!(
        "euler.star",
        "the * product preserves the Euler form",
        "result degree <= d",
        7,
        euler_star
    ),
    suite!(
        "euler.diese",
        "the # product preserves the Euler form",
        "result degree <= d",
        6,
        euler_diese
    ),
    suite!(
        "theta.convention",
        "exactly one convention for theta satisfies its identities",
        "none",
        0,
        |_| theta_convention()
    ),
    suite!(
        "theta.relations",
        "theta and its inverse against /, \\, * and reversal",
        "result degree <= d",
        5,
        theta_relations
    ),
    suite!(
        "tau.anticyclic",
        "the anticyclic axioms for tau",
        "result degree <= d",
        5,
        tau_anticyclic
    ),
    suite!(
        "tau.order",
        "tau(unit) = -unit and tau^(n+1) = Id",
        "n <= d",
        6,
        tau_order
    ),
    suite!(
        "nc.angles",
        "a noncrossing tree of degree n has n-1 angles",
        "n <= d",
        6,
        nc_angles
    ),
    suite!(
        "nc.generation",
        "the three generators generate every noncrossing plant",
        "n <= d",
        5,
        nc_generation
    ),
    suite!(
        "nc.star_closed",
        "noncrossing trees are closed under *",
        "degree sum <= d",
        5,
        nc_star_closed
    ),
    suite!(
        "nc.gluing",
        "P o_i Q is a tree iff Q is based or P contains side i",
        "result degree <= d",
        5,
        nc_gluing
    ),
    suite!(
        "nc.morphism",
        "the map to Dend is a morphism of operads",
        "result degree <= d",
        5,
        nc_morphism
    ),
    suite!(
        "nc.star_decomposition",
        "noncrossing trees factor into based trees along the base path",
        "n <= d",
        5,
        nc_star_decomposition
    ),
    suite!(
        "nc.simple",
        "simple noncrossing trees are in bijection with trees",
        "n <= d",
        5,
        nc_simple
    ),
    suite!(
        "nc.simple_pivots",
        "pivots between simple noncrossing trees are upward Hasse edges",
        "n <= d",
        5,
        nc_simple_pivots
    ),
    suite!(
        "proj.characterization",
        "projectives are the noncrossing trees without D angles",
        "n <= d",
        5,
        proj_characterization
    ),
    suite!("proj.over", "P(x/y) = P(x)/P(y)", "each degree <= d", 3, proj_over),
    suite!(
        "proj.under",
        "P(unit\\x) = unit * P(x) = Marbre o_2 P(x)",
        "result degree <= d",
        5,
        proj_under
    ),
    suite!(
        "proj.closure",
        "/, *, Marbre o_2, Garbre o_1 and tree-valued o_i preserve projectives",
        "result degree <= d",
        5,
        proj_closure
    ),
    suite!(
        "proj.alternative",
        "each projective is P/Q or Marbre o_2 P",
        "n <= d",
        5,
        proj_alternative
    ),
    suite!(
        "proj.based",
        "based projectives are Garbre o_1 Q with Q projective",
        "n <= d",
        5,
        proj_based
    ),
    suite!(
        "proj.factorization",
        "projectives factor under * into based projectives",
        "n <= d",
        5,
        proj_factorization
    ),
    suite!(
        "proj.pivots",
        "Hasse edges correspond to good pivots between projectives",
        "n <= d",
        5,
        proj_pivots
    ),
    suite!(
        "diese.assoc",
        "# is associative and unital",
        "each degree <= min(d, 3) or degree sum <= d",
        6,
        diese_assoc
    ),
    suite!(
        "diese.reversal",
        "reversal is an anti-automorphism of #",
        "each degree <= d",
        3,
        diese_reversal
    ),
    suite!(
        "diese.mixed",
        "mixed associativity of # with *, / and \\",
        "each degree <= d",
        3,
        diese_mixed
    ),
    suite!(
        "diese.sums",
        "sum(Y_m) # sum(Y_n) = sum(Y_(m+n-1))",
        "result degree <= d",
        6,
        diese_sums
    ),
    suite!(
        "diese.projective",
        "# of projectives is projective",
        "result degree <= d",
        5,
        diese_projective
    ),
    suite!(
        "diese.closure",
        "projectives are generated by Garbre and Marbre under o_1 and #",
        "n <= d",
        5,
        diese_closure
    ),
    suite!(
        "diese.subsets",
        "subset sums multiply under # to subset sums",
        "Y_2 pairs, 100 seeded Y_3 pairs",
        0,
        |_| diese_subsets(SUBSET_SAMPLES, SEED)
    ),
    suite!(
        "cat.relations",
        "the tri-modules satisfy all relations",
        "result degree <= d",
        5,
        cat_relations
    ),
    suite!(
        "cat.paths",
        "random long parallel paths act identically",
        "result degree <= d",
        4,
        |d| cat_random_paths(d, 200, SEED)
    ),
    suite!(
        "cat.decategorify",
        "tensoring with a tri-module decategorifies to o_1, * or #",
        "result degree <= d",
        4,
        cat_decategorify
    ),
    suite!(
        "cat.mutants",
        "injected faults in a tri-module are detected",
        "none",
        0,
        |_| cat_mutants(SEED)
    ),
];

pub fn find_suite(id: &str) -> Result<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownSuite(id.to_string()))
}

/// Outcome of one suite in a report.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub id: &'static str,
    pub statement: &'static str,
    pub range: &'static str,
    pub d: usize,
    pub passed: bool,
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub max_degree: usize,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

pub fn run_suite(suite: &Suite, max_degree: usize) -> SuiteResult {
    let d = max_degree.min(suite.cap);
    let (tally, error) = match suite.run(max_degree) {
        Ok(t) => (t, None),
        Err(e) => (Tally::default(), Some(e.to_string())),
    };
    SuiteResult {
        id: suite.id,
        statement: suite.statement,
        range: suite.range,
        d,
        passed: error.is_none() && tally.passed(),
        cases: tally.cases,
        failed: tally.failed,
        failures: tally.failures,
        error,
    }
}

/// Runs the given suites in parallel; results keep the input order.
pub fn run_suites(suites: &[&'static Suite], max_degree: usize) -> Report {
    let results: Vec<SuiteResult> = suites.par_iter().map(|s| run_suite(s, max_degree)).collect();
    Report {
        max_degree,
        passed: results.iter().all(|r| r.passed),
        suites: results,
    }
}

pub fn run_all(max_degree: usize) -> Report {
    run_suites(&SUITES.iter().collect::<Vec<_>>(), max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids: BTreeSet<&str> = SUITES.iter().map(|s| s.id).collect();
        assert_eq!(ids.len(), SUITES.len());
        assert!(find_suite("no.such").is_err());
    }

    #[test]
    fn tally_keeps_first_failures() {
        let mut a = Tally::default();
        for k in 0..15 {
            a.check(k % 2 == 0, || format!("case {k}"));
        }
        assert_eq!((a.cases, a.failed, a.failures.len()), (15, 7, 7));
        let b = a.clone().merge(a);
        assert_eq!((b.failed, b.failures.len()), (14, LISTED_FAILURES));
        assert_eq!(b.failures[0], "case 1");
    }

    #[test]
    fn small_degree_run_passes() {
        let report = run_all(3);
        let failing: Vec<_> = report.suites.iter().filter(|s| !s.passed).collect();
        assert!(failing.is_empty(), "{failing:#?}");
    }
}
