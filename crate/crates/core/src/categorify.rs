//! Modules over products of Tamari quivers.
//!
//! A [`TriModule`] lives on `Y_m^op × Y_n^op × Y_r` and is one-dimensional
//! exactly on the triples `(x, y, z)` with `z` in the support of
//! `𝒫(x) • 𝒫(y)`, for a product `•` among `∘_1`, `*` and `#`. Its arrows act
//! by the identity when both ends are nonzero and by zero otherwise.
//! Tensoring a `Y_m × Y_n`-module with it gives a `Y_r`-module whose class in
//! the Grothendieck group is the corresponding product.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::anticyclic::diese;
use crate::dendriform::{compose, star, DendElem};
use crate::error::{Error, Result};
use crate::linalg::{rational, Echelon, QMatrix, Rational};
use crate::tamari::PosetView;
use crate::trees::Tree;

/// Largest degree of the third factor of a tri-module.
pub const MAX_MODULE_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Arrows go down the order, from an element to its lower covers.
    Straight,
    /// Arrows go up the order.
    Opposite,
}

/// An arrow of a product quiver; it changes one coordinate by a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub factor: usize,
    pub source: usize,
    pub target: usize,
}

/// Product of Hasse quivers. Vertices are numbered in mixed radix with the
/// first factor most significant.
pub struct ProductQuiver {
    factors: Vec<(Arc<PosetView>, Orientation)>,
    strides: Vec<usize>,
    len: usize,
    arrows: Vec<Arrow>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
}

impl ProductQuiver {
    pub fn new(factors: Vec<(Arc<PosetView>, Orientation)>) -> ProductQuiver {
        let mut strides = vec![1; factors.len()];
        for f in (0..factors.len().saturating_sub(1)).rev() {
            strides[f] = strides[f + 1] * factors[f + 1].0.len();
        }
        let len = factors.iter().map(|(v, _)| v.len()).product();
        let mut q = ProductQuiver {
            factors,
            strides,
            len,
            arrows: Vec::new(),
            out: vec![Vec::new(); len],
            inc: vec![Vec::new(); len],
            index: HashMap::new(),
        };
        for v in 0..len {
            for f in 0..q.factors.len() {
                let c = q.coord(v, f);
                let (view, orient) = &q.factors[f];
                let next = match orient {
                    Orientation::Straight => view.lower_covers(c),
                    Orientation::Opposite => view.upper_covers(c),
                };
                for &t in next {
                    let w = v - c * q.strides[f] + t * q.strides[f];
                    let a = q.arrows.len();
                    q.arrows.push(Arrow {
                        factor: f,
                        source: v,
                        target: w,
                    });
                    q.out[v].push(a);
                    q.inc[w].push(a);
                    q.index.insert((v, w), a);
                }
            }
        }
        q
    }

    pub fn factors(&self) -> &[(Arc<PosetView>, Orientation)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn coord(&self, v: usize, f: usize) -> usize {
        v / self.strides[f] % self.factors[f].0.len()
    }

    pub fn coords(&self, v: usize) -> Vec<usize> {
        (0..self.factors.len()).map(|f| self.coord(v, f)).collect()
    }

    pub fn vertex(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    fn with_coord(&self, v: usize, f: usize, c: usize) -> usize {
        v - self.coord(v, f) * self.strides[f] + c * self.strides[f]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn arrow_between(&self, s: usize, t: usize) -> Option<usize> {
        self.index.get(&(s, t)).copied()
    }

    /// Canonical texts of the coordinates of `v`.
    pub fn label(&self, v: usize) -> Vec<String> {
        self.coords(v)
            .iter()
            .zip(&self.factors)
            .map(|(&c, (view, _))| view.element(c).to_string())
            .collect()
    }

    /// Whether some path leads from `u` to `w`.
    pub fn reaches(&self, u: usize, w: usize) -> bool {
        (0..self.factors.len()).all(|f| {
            let (cu, cw) = (self.coord(u, f), self.coord(w, f));
            match self.factors[f].1 {
                Orientation::Straight => self.factors[f].0.leq_idx(cw, cu),
                Orientation::Opposite => self.factors[f].0.leq_idx(cu, cw),
            }
        })
    }

    /// Coordinates of factor `f` lying between those of `u` and `w`.
    fn between(&self, u: usize, w: usize, f: usize) -> Vec<usize> {
        let (view, orient) = &self.factors[f];
        let (cu, cw) = (self.coord(u, f), self.coord(w, f));
        let (lo, hi) = match orient {
            Orientation::Straight => (cw, cu),
            Orientation::Opposite => (cu, cw),
        };
        view.down_set(hi).intersection(view.up_set(lo)).iter().collect()
    }

    /// Commuting squares `(v, a1, b1, a2, b2, w)` with `a1, b2` in one factor
    /// and `a2, b1` in another.
    fn squares_at(&self, v: usize) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for (k, &a1) in self.out[v].iter().enumerate() {
            for &a2 in &self.out[v][k + 1..] {
                let (x1, x2) = (self.arrows[a1], self.arrows[a2]);
                if x1.factor == x2.factor {
                    continue;
                }
                let w = self.with_coord(x1.target, x2.factor, self.coord(x2.target, x2.factor));
                let b1 = self.index[&(x1.target, w)];
                let b2 = self.index[&(x2.target, w)];
                out.push([a1, b1, a2, b2]);
            }
        }
        out
    }
}

/// Which product of projective elements a tri-module categorifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Circ1,
    Star,
    Diese,
}

impl ProductKind {
    pub const ALL: [ProductKind; 3] = [ProductKind::Circ1, ProductKind::Star, ProductKind::Diese];

    pub fn result_degree(self, m: usize, n: usize) -> usize {
        match self {
            ProductKind::Star => m + n,
            _ => m + n - 1,
        }
    }

    pub fn apply(self, a: &DendElem, b: &DendElem) -> Result<DendElem> {
        match self {
            ProductKind::Circ1 => compose(a, 1, b),
            ProductKind::Star => star(a, b),
            ProductKind::Diese => diese(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Circ1 => "circ1",
            ProductKind::Star => "star",
            ProductKind::Diese => "diese",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ProductKind> {
        ProductKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "product kind",
                position: 0,
                reason: format!("expected circ1, star or diese, found `{s}`"),
            })
    }
}

/// A module of dimension 0 or 1 at every vertex of
/// `Y_m^op × Y_n^op × Y_r`, acting by identity where possible.
#[derive(Clone)]
pub struct TriModule {
    kind: ProductKind,
    m: usize,
    n: usize,
    quiver: Arc<ProductQuiver>,
    support: Vec<bool>,
    zeroed: BTreeSet<usize>,
}

/// The tri-module whose support is `{(x, y, z) : z ∈ 𝒫(x) • 𝒫(y)}`.
pub fn build_m(kind: ProductKind, m: usize, n: usize) -> Result<TriModule> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroDegree);
    }
    let r = kind.result_degree(m, n);
    if r > MAX_MODULE_DEGREE {
        return Err(Error::DegreeOutOfRange {
            n: r,
            max: MAX_MODULE_DEGREE,
        });
    }
    let (vm, vn, vr) = (PosetView::shared(m)?, PosetView::shared(n)?, PosetView::shared(r)?);
    let quiver = Arc::new(ProductQuiver::new(vec![
        (vm.clone(), Orientation::Opposite),
        (vn.clone(), Orientation::Opposite),
        (vr.clone(), Orientation::Straight),
    ]));
    let fibers: Vec<Vec<usize>> = (0..vm.len() * vn.len())
        .into_par_iter()
        .map(|k| {
            let (ix, iy) = (k / vn.len(), k % vn.len());
            let p = kind.apply(&vm.down_sum(ix), &vn.down_sum(iy))?;
            p.terms()
                .map(|(z, c)| {
                    if c != 1 {
                        return Err(Error::Inconsistent(format!(
                            "coefficient {c} of {z} in the product of projectives at ({}, {})",
                            vm.element(ix),
                            vn.element(iy)
                        )));
                    }
                    Ok(vr.index_of(z).expect("product has the result degree"))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut support = vec![false; quiver.len()];
    for (k, zs) in fibers.iter().enumerate() {
        let (ix, iy) = (k / vn.len(), k % vn.len());
        for &iz in zs {
            support[quiver.vertex(&[ix, iy, iz])] = true;
        }
    }
    Ok(TriModule {
        kind,
        m,
        n,
        quiver,
        support,
        zeroed: BTreeSet::new(),
    })
}

impl TriModule {
    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn degrees(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.kind.result_degree(self.m, self.n))
    }

    pub fn quiver(&self) -> &Arc<ProductQuiver> {
        &self.quiver
    }

    pub fn is_supported(&self, v: usize) -> bool {
        self.support[v]
    }

    pub fn dim(&self, v: usize) -> usize {
        self.support[v] as usize
    }

    pub fn support_size(&self) -> usize {
        self.support.iter().filter(|&&s| s).count()
    }

    /// Scalar of the arrow: 1 when both ends are nonzero, 0 otherwise.
    pub fn scalar(&self, a: usize) -> i64 {
        let arrow = self.quiver.arrows[a];
        (self.support[arrow.source] && self.support[arrow.target] && !self.zeroed.contains(&a)) as i64
    }

    /// The `z` with `(x, y, z)` in the support, as a sum of trees.
    pub fn fiber(&self, x: &Tree, y: &Tree) -> Result<DendElem> {
        let fs = self.quiver.factors();
        let ix = fs[0].0.index_of(x).ok_or(Error::DegreeMismatch {
            left: self.m,
            right: x.degree(),
        })?;
        let iy = fs[1].0.index_of(y).ok_or(Error::DegreeMismatch {
            left: self.n,
            right: y.degree(),
        })?;
        let vr = &fs[2].0;
        let zs = (0..vr.len()).filter(|&iz| self.support[self.quiver.vertex(&[ix, iy, iz])]);
        DendElem::sum_of(vr.degree(), zs.map(|iz| vr.element(iz).clone()))
    }

    /// Copy with the map of arrow `a` replaced by zero.
    pub fn with_zeroed_arrow(&self, a: usize) -> TriModule {
        let mut out = self.clone();
        out.zeroed.insert(a);
        out
    }

    /// An identity arrow lying on a commuting square whose four corners
    /// are all nonzero; zeroing it breaks that square.
    pub fn square_arrow(&self) -> Option<usize> {
        (0..self.quiver.len())
            .filter(|&v| self.support[v])
            .flat_map(|v| self.quiver.squares_at(v))
            .find(|sq| sq.iter().all(|&a| self.scalar(a) == 1))
            .map(|sq| sq[0])
    }

    fn path_product(&self, path: &[usize]) -> i64 {
        path.iter().map(|&a| self.scalar(a)).product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `square` or `path`.
    pub relation: &'static str,
    pub source: Vec<String>,
    pub target: Vec<String>,
}

/// Result of checking every relation of the product quiver on a tri-module.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub kind: ProductKind,
    pub m: usize,
    pub n: usize,
    pub vertices: usize,
    pub support: usize,
    pub arrows: usize,
    pub squares_checked: usize,
    pub paths_checked: usize,
    pub violation_count: usize,
    /// The first few violations, in vertex order.
    pub violations: Vec<Violation>,
    pub passed: bool,
}

const REPORTED_VIOLATIONS: usize = 20;

/// Checks that parallel paths act identically.
///
/// Relations are the commuting squares between different factors and, in
/// each factor, the equality of all paths with the same ends. For the
/// latter, two supported ends `u, w` are joined by a path of identities iff
/// some such path exists in the nonzero part; the relation then fails iff
/// some arrow inside the interval between `u` and `w` acts by zero, since
/// every such arrow lies on a path from `u` to `w`.
pub fn check_relations(module: &TriModule) -> RelationReport {
    let q = &module.quiver;
    let per_vertex: Vec<(usize, usize, Vec<Violation>)> = (0..q.len())
        .into_par_iter()
        .map(|v| {
            let mut violations = Vec::new();
            let squares = q.squares_at(v);
            for &[a1, b1, a2, b2] in &squares {
                if module.path_product(&[a1, b1]) != module.path_product(&[a2, b2]) {
                    violations.push(Violation {
                        relation: "square",
                        source: q.label(v),
                        target: q.label(q.arrows[b1].target),
                    });
                }
            }
            let mut paths = 0;
            if module.support[v] {
                for f in 0..q.factors.len() {
                    for w in identity_reach(module, v, f) {
                        paths += 1;
                        if zero_inside(module, v, w, f) {
                            violations.push(Violation {
                                relation: "path",
                                source: q.label(v),
                                target: q.label(w),
                            });
                        }
                    }
                }
            }
            (squares.len(), paths, violations)
        })
        .collect();
    let squares_checked = per_vertex.iter().map(|p| p.0).sum();
    let paths_checked = per_vertex.iter().map(|p| p.1).sum();
    let all: Vec<Violation> = per_vertex.into_iter().flat_map(|p| p.2).collect();
    RelationReport {
        kind: module.kind,
        m: module.m,
        n: module.n,
        vertices: q.len(),
        support: module.support_size(),
        arrows: q.arrows.len(),
        squares_checked,
        paths_checked,
        violation_count: all.len(),
        passed: all.is_empty(),
        violations: all.into_iter().take(REPORTED_VIOLATIONS).collect(),
    }
}

// Vertices other than `v` reached from `v` by identity arrows of factor `f`.
fn identity_reach(module: &TriModule, v: usize, f: usize) -> Vec<usize> {
    let q = &module.quiver;
    let mut seen = vec![v];
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &a in &q.out[u] {
            let arrow = q.arrows[a];
            if arrow.factor == f && module.scalar(a) == 1 && !seen.contains(&arrow.target) {
                seen.push(arrow.target);
                queue.push_back(arrow.target);
            }
        }
    }
    seen.remove(0);
    seen.sort_unstable();
    seen
}

fn zero_inside(module: &TriModule, v: usize, w: usize, f: usize) -> bool {
    let q = &module.quiver;
    let inside = q.between(v, w, f);
    inside.iter().any(|&c| {
        let u = q.with_coord(v, f, c);
        q.out[u].iter().any(|&a| {
            let arrow = q.arrows[a];
            arrow.factor == f && inside.binary_search(&q.coord(arrow.target, f)).is_ok() && module.scalar(a) == 0
        })
    })
}

/// Samples pairs of random parallel paths of arbitrary length and counts
/// those acting differently. Returns `(pairs sampled, disagreements)`.
pub fn random_path_check(module: &TriModule, samples: usize, seed: u64) -> (usize, usize) {
    let q = &module.quiver;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let supported: Vec<usize> = (0..q.len()).filter(|&v| module.support[v]).collect();
    let mut sampled = 0;
    let mut bad = 0;
    if supported.is_empty() {
        return (0, 0);
    }
    for _ in 0..samples {
        let v = *supported.choose(&mut rng).unwrap();
        // a random endpoint reached by a random walk
        let mut w = v;
        let steps = rng.gen_range(1..=q.factors.iter().map(|(p, _)| p.degree()).sum::<usize>() * 3);
        for _ in 0..steps {
            match q.out[w].choose(&mut rng) {
                Some(&a) => w = q.arrows[a].target,
                None => break,
            }
        }
        if w == v || !module.support[w] {
            continue;
        }
        let p1 = random_path(q, v, w, &mut rng);
        let p2 = random_path(q, v, w, &mut rng);
        sampled += 1;
        if module.path_product(&p1) != module.path_product(&p2) {
            bad += 1;
        }
    }
    (sampled, bad)
}

fn random_path(q: &ProductQuiver, mut u: usize, w: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut path = Vec::new();
    while u != w {
        let options: Vec<usize> = q.out[u]
            .iter()
            .copied()
            .filter(|&a| q.reaches(q.arrows[a].target, w))
            .collect();
        let a = *options.choose(rng).expect("target is reachable");
        path.push(a);
        u = q.arrows[a].target;
    }
    path
}

/// A finite-dimensional representation of a product quiver over the rationals.
#[derive(Clone)]
pub struct PosetModule {
    quiver: Arc<ProductQuiver>,
    dims: Vec<usize>,
    maps: Vec<QMatrix>,
}

impl PosetModule {
    /// Checks that every arrow map has the shape `dim(target) × dim(source)`.
    pub fn new(quiver: Arc<ProductQuiver>, dims: Vec<usize>, maps: Vec<QMatrix>) -> Result<PosetModule> {
        if dims.len() != quiver.len() || maps.len() != quiver.arrows.len() {
            return Err(Error::Incompatible(
                "dimension or map count differs from the quiver".into(),
            ));
        }
        for (a, m) in quiver.arrows.iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::Incompatible(format!(
                    "map on arrow {a:?} has shape {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(PosetModule { quiver, dims, maps })
    }

    /// Dimension 0 or 1 per vertex, identity maps where possible.
    pub fn from_support(quiver: Arc<ProductQuiver>, support: &[bool]) -> PosetModule {
        let dims: Vec<usize> = support.iter().map(|&s| s as usize).collect();
        let maps = quiver
            .arrows
            .iter()
            .map(|a| QMatrix::scalar(dims[a.target], dims[a.source], 1))
            .collect();
        PosetModule { quiver, dims, maps }
    }

    /// `P(x_1) ⊠ ... ⊠ P(x_k)` over the straight product of the given posets.
    pub fn projective_product(factors: &[(Arc<PosetView>, Tree)]) -> Result<PosetModule> {
        let mut idx = Vec::new();
        for (view, x) in factors {
            idx.push(view.index_of(x).ok_or(Error::DegreeMismatch {
                left: view.degree(),
                right: x.degree(),
            })?);
        }
        let quiver = Arc::new(ProductQuiver::new(
            factors
                .iter()
                .map(|(v, _)| (v.clone(), Orientation::Straight))
                .collect(),
        ));
        let support: Vec<bool> = (0..quiver.len())
            .map(|v| (0..factors.len()).all(|f| factors[f].0.leq_idx(quiver.coord(v, f), idx[f])))
            .collect();
        Ok(PosetModule::from_support(quiver, &support))
    }

    /// The projective module `P(x)`: one dimension on the interval `[0̂, x]`.
    pub fn projective(view: Arc<PosetView>, x: &Tree) -> Result<PosetModule> {
        PosetModule::projective_product(&[(view, x.clone())])
    }

    pub fn simple(view: Arc<PosetView>, t: &Tree) -> Result<PosetModule> {
        let i = view.index_of(t).ok_or(Error::DegreeMismatch {
            left: view.degree(),
            right: t.degree(),
        })?;
        let quiver = Arc::new(ProductQuiver::new(vec![(view, Orientation::Straight)]));
        let support: Vec<bool> = (0..quiver.len()).map(|v| v == i).collect();
        Ok(PosetModule::from_support(quiver, &support))
    }

    pub fn zero(view: Arc<PosetView>) -> PosetModule {
        let quiver = Arc::new(ProductQuiver::new(vec![(view, Orientation::Straight)]));
        let support = vec![false; quiver.len()];
        PosetModule::from_support(quiver, &support)
    }

    pub fn quiver(&self) -> &Arc<ProductQuiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, a: usize) -> &QMatrix {
        &self.maps[a]
    }

    /// Verifies commuting squares and path independence inside each factor.
    pub fn check_relations(&self) -> Result<()> {
        let q = &self.quiver;
        for v in 0..q.len() {
            for [a1, b1, a2, b2] in q.squares_at(v) {
                if self.maps[b1].mul(&self.maps[a1]) != self.maps[b2].mul(&self.maps[a2]) {
                    return Err(Error::Inconsistent(format!(
                        "square at {:?} does not commute",
                        q.label(v)
                    )));
                }
            }
            for f in 0..q.factors.len() {
                self.check_factor_paths(v, f)?;
            }
        }
        Ok(())
    }

    // Composite maps from `v` along factor `f`, in path order; every
    // incoming arrow must give the same composite.
    fn check_factor_paths(&self, v: usize, f: usize) -> Result<()> {
        let q = &self.quiver;
        let (view, orient) = &q.factors[f];
        let c0 = q.coord(v, f);
        let mut reach: Vec<usize> = match orient {
            Orientation::Straight => view.down_set(c0).iter().collect(),
            Orientation::Opposite => view.up_set(c0).iter().collect(),
        };
        if *orient == Orientation::Straight {
            reach.reverse();
        }
        let mut composite: HashMap<usize, QMatrix> = HashMap::new();
        composite.insert(c0, QMatrix::identity(self.dims[v]));
        for &c in reach.iter().filter(|&&c| c != c0) {
            let u = q.with_coord(v, f, c);
            let mut value: Option<QMatrix> = None;
            for &a in &q.inc[u] {
                let arrow = q.arrows[a];
                if arrow.factor != f {
                    continue;
                }
                let Some(prev) = composite.get(&q.coord(arrow.source, f)) else {
                    continue;
                };
                let cand = self.maps[a].mul(prev);
                match &value {
                    None => value = Some(cand),
                    Some(x) if *x != cand => {
                        return Err(Error::Inconsistent(format!(
                            "paths from {:?} to {:?} differ",
                            q.label(v),
                            q.label(u)
                        )))
                    }
                    _ => {}
                }
            }
            composite.insert(c, value.expect("every element of the interval has a predecessor"));
        }
        Ok(())
    }

    /// Dimension vector read in the basis of simples, for a module over a
    /// single poset.
    pub fn grothendieck_class(&self) -> Result<DendElem> {
        let [(view, _)] = self.quiver.factors() else {
            return Err(Error::Incompatible("class of a module over a product".into()));
        };
        DendElem::from_terms(
            view.degree(),
            self.dims
                .iter()
                .enumerate()
                .map(|(i, &d)| (view.element(i).clone(), d as i64)),
        )
    }
}

impl fmt::Debug for PosetModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PosetModule(dims {:?})", self.dims)
    }
}

struct Fiber {
    offsets: HashMap<usize, usize>,
    echelon: Echelon,
    free: Vec<usize>,
    width: usize,
}

/// `N ⊗ M` for a module `N` over `Y_m × Y_n` and a tri-module `M`, as a
/// module over the third factor of `M`.
pub fn tensor(nmod: &PosetModule, module: &TriModule) -> Result<PosetModule> {
    let nq = &nmod.quiver;
    let mq = &module.quiver;
    let (m, n, _) = module.degrees();
    let shape_ok = nq.factors.len() == 2
        && nq.factors.iter().all(|(_, o)| *o == Orientation::Straight)
        && nq.factors[0].0.degree() == m
        && nq.factors[1].0.degree() == n;
    if !shape_ok {
        return Err(Error::Incompatible(format!(
            "expected a module over Y_{m} × Y_{n} with straight arrows"
        )));
    }
    let vr = mq.factors[2].0.clone();
    let mvert = |u: usize, z: usize| mq.vertex(&[nq.coord(u, 0), nq.coord(u, 1), z]);

    let fibers: Vec<Fiber> = (0..vr.len())
        .map(|z| {
            let mut offsets = HashMap::new();
            let mut width = 0;
            for u in 0..nq.len() {
                if nmod.dims[u] > 0 && module.support[mvert(u, z)] {
                    offsets.insert(u, width);
                    width += nmod.dims[u];
                }
            }
            let mut rows = Vec::new();
            for (a, arrow) in nq.arrows.iter().enumerate() {
                let (u, u2) = (arrow.source, arrow.target);
                if !module.support[mvert(u2, z)] {
                    continue;
                }
                let back = mq
                    .arrow_between(mvert(u2, z), mvert(u, z))
                    .expect("opposite arrow in the tri-module");
                let s = module.scalar(back);
                for k in 0..nmod.dims[u] {
                    let mut row = vec![Rational::zero(); width];
                    if let Some(&o2) = offsets.get(&u2) {
                        for (i, val) in nmod.maps[a].column(k).into_iter().enumerate() {
                            row[o2 + i] = val;
                        }
                    }
                    if s != 0 {
                        let o = offsets[&u];
                        row[o + k] = &row[o + k] - rational(s);
                    }
                    rows.push(row);
                }
            }
            let echelon = Echelon::new(rows, width);
            let free = echelon.free_columns();
            Fiber {
                offsets,
                echelon,
                free,
                width,
            }
        })
        .collect();

    let out_q = Arc::new(ProductQuiver::new(vec![(vr.clone(), Orientation::Straight)]));
    let dims: Vec<usize> = fibers.iter().map(|f| f.free.len()).collect();
    let mut maps = Vec::with_capacity(out_q.arrows.len());
    for arrow in &out_q.arrows {
        let (z, z2) = (arrow.source, arrow.target);
        let (src, dst) = (&fibers[z], &fibers[z2]);
        let mut mat = QMatrix::zeros(dst.free.len(), src.free.len());
        for (j, &col) in src.free.iter().enumerate() {
            let (&u, &o) = src
                .offsets
                .iter()
                .filter(|(_, &o)| o <= col)
                .max_by_key(|(_, &o)| o)
                .expect("column belongs to a block");
            let mut v = vec![Rational::zero(); dst.width];
            let a = mq
                .arrow_between(mvert(u, z), mvert(u, z2))
                .expect("arrow of the third factor");
            if module.scalar(a) != 0 {
                if let Some(&o2) = dst.offsets.get(&u) {
                    v[o2 + col - o] = rational(module.scalar(a));
                }
            }
            dst.echelon.reduce(&mut v);
            for (i, &c) in dst.free.iter().enumerate() {
                mat.set(i, j, v[c].clone());
            }
        }
        maps.push(mat);
    }
    PosetModule::new(out_q, dims, maps)
}

/// Class of `(P(x) ⊠ P(y)) ⊗ M`.
pub fn decategorify(module: &TriModule, x: &Tree, y: &Tree) -> Result<DendElem> {
    let fs = module.quiver.factors();
    let n = PosetModule::projective_product(&[(fs[0].0.clone(), x.clone()), (fs[1].0.clone(), y.clone())])?;
    tensor(&n, module)?.grothendieck_class()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::enumerate_trees;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn point_module() {
        let m = build_m(ProductKind::Circ1, 1, 1).unwrap();
        assert_eq!(m.support_size(), 1);
        assert_eq!(m.quiver().len(), 1);
        assert!(check_relations(&m).passed);
        let c = decategorify(&m, &Tree::unit(), &Tree::unit()).unwrap();
        assert_eq!(c, DendElem::unit());
    }

    #[test]
    fn star_support() {
        let m = build_m(ProductKind::Star, 1, 1).unwrap();
        assert_eq!(
            m.fiber(&Tree::unit(), &Tree::unit()).unwrap(),
            DendElem::sum_all(2).unwrap()
        );
    }

    #[test]
    fn relations_hold_and_faults_are_found() {
        for kind in ProductKind::ALL {
            let m = build_m(kind, 2, 2).unwrap();
            let report = check_relations(&m);
            assert!(report.passed, "{kind}: {:?}", report.violations);
            assert!(report.squares_checked > 0);
            let a = m.square_arrow().expect("a fully supported square");
            let bad = check_relations(&m.with_zeroed_arrow(a));
            assert!(!bad.passed);
        }
    }

    #[test]
    fn pentagon_relation_needs_long_paths() {
        // a zero arrow on one side of a pentagon, with both ends of the
        // pentagon supported, is only visible through paths of length 2 and 3
        let m = build_m(ProductKind::Circ1, 1, 3).unwrap();
        let q = m.quiver();
        let v3 = PosetView::shared(3).unwrap();
        let (hi, lo) = (v3.index_of(v3.maximum()).unwrap(), v3.index_of(v3.minimum()).unwrap());
        let top = q.vertex(&[0, hi, hi]);
        let bottom = q.vertex(&[0, hi, lo]);
        assert!(m.is_supported(top) && m.is_supported(bottom));
        let a = *q.out_arrows(top).iter().find(|&&a| q.arrows()[a].factor == 2).unwrap();
        let bad = m.with_zeroed_arrow(a);
        let report = check_relations(&bad);
        assert!(!report.passed);
        let (sampled, disagreements) = random_path_check(&bad, 400, 7);
        assert!(sampled > 0 && disagreements > 0);
    }

    #[test]
    fn module_classes() {
        let view = PosetView::shared(3).unwrap();
        let top = view.maximum().clone();
        let p = PosetModule::projective(view.clone(), &top).unwrap();
        p.check_relations().unwrap();
        assert_eq!(p.grothendieck_class().unwrap(), DendElem::sum_all(3).unwrap());
        let s = PosetModule::simple(view.clone(), &top).unwrap();
        assert_eq!(s.grothendieck_class().unwrap(), DendElem::basis(top));
        assert!(PosetModule::zero(view).grothendieck_class().unwrap().is_zero());
    }

    #[test]
    fn tensor_of_projectives() {
        let m = build_m(ProductKind::Circ1, 2, 2).unwrap();
        let v2 = PosetView::shared(2).unwrap();
        for x in enumerate_trees(2).unwrap() {
            for y in enumerate_trees(2).unwrap() {
                let n = PosetModule::projective_product(&[(v2.clone(), x.clone()), (v2.clone(), y.clone())]).unwrap();
                n.check_relations().unwrap();
                let out = tensor(&n, &m).unwrap();
                out.check_relations().unwrap();
                assert_eq!(out.grothendieck_class().unwrap(), m.fiber(&x, &y).unwrap());
            }
        }
        assert!(tensor(&PosetModule::projective(v2, &t("((o o) o)")).unwrap(), &m).is_err());
        assert!(build_m(ProductKind::Star, 3, 4).is_err());
    }
}
