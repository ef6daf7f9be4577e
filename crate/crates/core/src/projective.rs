//! Projective elements: the sums `𝒫(x)` of lower intervals `[0̂, x]`,
//! seen both in `Dend(n)` and as noncrossing trees.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::dendriform::DendElem;
use crate::error::{Error, Result};
use crate::noncrossing::{compose_ncp, NcPlant, NcTable, MAX_TABLE_DEGREE};
use crate::tamari::PosetView;
use crate::trees::{enumerate_trees, Tree};

/// The three faces of a projective element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveElem {
    pub x: Tree,
    pub elem: DendElem,
    pub nct: NcPlant,
}

fn check_degree(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::ZeroDegree),
        n if n > MAX_TABLE_DEGREE => Err(Error::DegreeOutOfRange {
            n,
            max: MAX_TABLE_DEGREE,
        }),
        _ => Ok(()),
    }
}

/// `𝒫(x)` together with its noncrossing tree.
pub fn projective_element(x: &Tree) -> Result<ProjectiveElem> {
    let n = x.degree();
    check_degree(n)?;
    let view = PosetView::shared(n)?;
    let idx = view.index_of(x).expect("tree of the right degree");
    let elem = view.down_sum(idx);
    let table = NcTable::shared(n.max(2))?;
    match table.trees_with_image(&elem) {
        [p] => Ok(ProjectiveElem {
            x: x.clone(),
            elem,
            nct: *p,
        }),
        [] => Err(Error::TableMiss(format!("no noncrossing tree with image {elem}"))),
        many => Err(Error::Inconsistent(format!(
            "{} noncrossing trees share the image {elem}",
            many.len()
        ))),
    }
}

/// All projective elements of degree `n`, in tree order.
pub fn projective_table(n: usize) -> Result<Vec<ProjectiveElem>> {
    check_degree(n)?;
    enumerate_trees(n)?.iter().map(projective_element).collect()
}

/// No angle of type D. Plants with numerator edges are never projective.
pub fn is_projective_nct(p: &NcPlant) -> bool {
    p.is_tree() && p.angle_counts().map(|c| c.d == 0).unwrap_or(false)
}

/// The tree `x` with `a = 𝒫(x)`, if there is one.
pub fn projective_index(a: &DendElem) -> Result<Option<Tree>> {
    if a.is_zero() || !a.is_multiplicity_free() {
        return Ok(None);
    }
    let view = PosetView::shared(a.degree())?;
    for t in a.support() {
        let i = view.index_of(t).expect("homogeneous element");
        if view.down_set(i).len() == a.len() && view.down_sum(i) == *a {
            return Ok(Some(t.clone()));
        }
    }
    Ok(None)
}

pub fn is_projective_elem(a: &DendElem) -> Result<bool> {
    Ok(projective_index(a)?.is_some())
}

/// The unique `Q` with `P = Garbre ∘_1 Q`, for a based projective tree `P`.
pub fn decompose_based(p: &NcPlant) -> Result<NcPlant> {
    let n = p.degree();
    if !p.is_tree() || !is_projective_nct(p) {
        return Err(Error::NotProjective(p.to_string()));
    }
    if n < 2 || !p.is_based() {
        return Err(Error::NotBased);
    }
    let den = p.den_edges();
    if den.iter().any(|&(u, v)| v == n && u != 0) {
        return Err(Error::Inconsistent(format!("corner {n} of {p} has degree above one")));
    }
    let q = NcPlant::tree(n - 1, den.into_iter().filter(|&(_, v)| v < n))?;
    if compose_ncp(&NcPlant::garbre(), 1, &q)? != *p {
        return Err(Error::Inconsistent(format!("Garbre ∘_1 {q} differs from {p}")));
    }
    Ok(q)
}

/// Factors of a projective tree along its base path, all projective.
pub fn star_factorization(p: &NcPlant) -> Result<Vec<NcPlant>> {
    if !is_projective_nct(p) {
        return Err(Error::NotProjective(p.to_string()));
    }
    let factors = p.decompose_star()?;
    if let Some(f) = factors.iter().find(|f| !is_projective_nct(f)) {
        return Err(Error::Inconsistent(format!("factor {f} of {p} is not projective")));
    }
    Ok(factors)
}

/// Outcome of matching Hasse edges with good pivots between projectives.
#[derive(Clone, Debug, Serialize)]
pub struct PivotMatch {
    pub n: usize,
    pub hasse_edges: usize,
    pub good_pivots: usize,
    /// Matched pairs `(x, y)`: `y` covers `x` and `𝒫(x) → 𝒫(y)` is a good pivot.
    pub pairs: Vec<(Tree, Tree)>,
}

/// Checks that Hasse edges `y → x` and good pivots `𝒫(x) → 𝒫(y)` are in bijection.
pub fn hasse_pivot_match(n: usize) -> Result<PivotMatch> {
    let table = projective_table(n)?;
    let view = PosetView::shared(n)?;
    let by_nct: HashMap<NcPlant, &Tree> = table.iter().map(|p| (p.nct, &p.x)).collect();
    let proj = |t: &Tree| &table[table.binary_search_by(|p| p.x.cmp(t)).unwrap()];

    let mut hasse = BTreeSet::new();
    for (hi, lo) in view.hasse_edges() {
        let (y, x) = (view.element(hi).clone(), view.element(lo).clone());
        let target = proj(&y).nct;
        if !proj(&x).nct.good_pivots()?.iter().any(|(_, t)| *t == target) {
            return Err(Error::Inconsistent(format!(
                "Hasse edge {y} → {x} has no good pivot {} → {target}",
                proj(&x).nct
            )));
        }
        hasse.insert((x, y));
    }

    let mut pivots = BTreeSet::new();
    for p in &table {
        let out = p.nct.good_pivots()?;
        let inn = p.nct.good_pivots_into()?;
        if out.len() + inn.len() != n - 1 {
            return Err(Error::Inconsistent(format!(
                "{} touches {} good pivots instead of {}",
                p.nct,
                out.len() + inn.len(),
                n - 1
            )));
        }
        let pairs = out
            .iter()
            .map(|(_, t)| (p.nct, *t))
            .chain(inn.iter().map(|(_, s)| (*s, p.nct)));
        for (s, t) in pairs {
            let (Some(&xs), Some(&xt)) = (by_nct.get(&s), by_nct.get(&t)) else {
                return Err(Error::Inconsistent(format!(
                    "good pivot {s} → {t} leaves the projective elements"
                )));
            };
            pivots.insert((xs.clone(), xt.clone()));
        }
    }
    if pivots != hasse {
        return Err(Error::Inconsistent(format!(
            "{} Hasse edges against {} good pivots",
            hasse.len(),
            pivots.len()
        )));
    }
    Ok(PivotMatch {
        n,
        hasse_edges: hasse.len(),
        good_pivots: pivots.len(),
        pairs: hasse.into_iter().collect(),
    })
}
