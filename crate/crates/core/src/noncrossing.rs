//! Noncrossing trees and plants in the polygon `O_n`.
//!
//! The corners of `O_n` are numbered `0..=n` clockwise. The base side is
//! `{0, n}` and the border side `i` is `{i - 1, i}`. A plant carries two
//! disjoint edge sets, the denominator and the numerator. Edges never
//! cross, every bounded face of the denominator graph contains exactly one
//! numerator edge, every numerator edge lies in such a face, and no edge can
//! be added while keeping these properties. Trees are plants without
//! numerator edges.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dendriform::{self, DendElem};
use crate::error::{Error, Result};
use crate::trees::{Tree, MAX_DEGREE};

/// Largest degree accepted by the exhaustive enumerations.
pub const MAX_ENUM_DEGREE: usize = 6;

/// Largest degree of the closure table of plants.
pub const MAX_TABLE_DEGREE: usize = 7;

/// An edge `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

fn edge_index(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

fn edge_of_index(k: usize) -> Edge {
    let mut v = 1;
    while (v + 1) * v / 2 <= k {
        v += 1;
    }
    (k - v * (v - 1) / 2, v)
}

fn edge_count(n: usize) -> usize {
    (n + 1) * n / 2
}

fn bit(u: usize, v: usize) -> u64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    1u64 << edge_index(u, v)
}

fn edges_of(mask: u64) -> Vec<Edge> {
    let mut out: Vec<Edge> = BitIter(mask).map(edge_of_index).collect();
    out.sort_unstable();
    out
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let k = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(k)
    }
}

fn crosses((a, b): Edge, (c, d): Edge) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn is_boundary(n: usize, (u, v): Edge) -> bool {
    v == u + 1 || (u == 0 && v == n)
}

/// A noncrossing plant. Trees are the plants with no numerator edge.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct NcPlant {
    n: usize,
    den: u64,
    num: u64,
}

/// Type of an angle, named after the generator it looks like.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AngleKind {
    G,
    M,
    D,
}

/// A pair of edges adjacent around a common corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Angle {
    pub vertex: usize,
    pub edges: [Edge; 2],
    pub triangle: [usize; 3],
    pub kind: AngleKind,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AngleCounts {
    pub g: usize,
    pub m: usize,
    pub d: usize,
}

impl AngleCounts {
    pub fn total(&self) -> usize {
        self.g + self.m + self.d
    }
}

/// One edge exchange at an angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub angle: Angle,
    pub removed: Edge,
    pub added: Edge,
    /// Type of the angle formed by the two remaining sides of the triangle.
    pub after: AngleKind,
    pub target: NcPlant,
}

impl Pivot {
    /// Turns an angle of type G into an angle of type M.
    pub fn is_good(&self) -> bool {
        self.angle.kind == AngleKind::G && self.after == AngleKind::M
    }
}

fn kind_at(vertex: usize, [a, b, _]: [usize; 3]) -> AngleKind {
    if vertex == a {
        AngleKind::G
    } else if vertex == b {
        AngleKind::M
    } else {
        AngleKind::D
    }
}

/// Bounded faces of the denominator graph, as corner bitmasks.
///
/// On convex corners a cycle visits its corners in increasing order, and it
/// bounds a face iff no denominator edge is a chord of it.
fn faces(n: usize, den: u64) -> Vec<u32> {
    let mut adj = vec![0u32; n + 1];
    for (u, v) in BitIter(den).map(edge_of_index) {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..=n {
        path.clear();
        path.push(s);
        cycles_from(s, &adj, &mut path, &mut out);
    }
    out.retain(|&set| {
        let corners: Vec<usize> = (0..=n).filter(|&c| set >> c & 1 == 1).collect();
        let k = corners.len();
        let mut sides = 0u64;
        for j in 0..k {
            sides |= bit(corners[j], corners[(j + 1) % k]);
        }
        let mut inside = 0u64;
        for (x, &u) in corners.iter().enumerate() {
            for &v in &corners[x + 1..] {
                inside |= bit(u, v);
            }
        }
        den & inside & !sides == 0
    });
    out
}

fn cycles_from(s: usize, adj: &[u32], path: &mut Vec<usize>, out: &mut Vec<u32>) {
    let last = *path.last().unwrap();
    for v in last + 1..adj.len() {
        if adj[last] >> v & 1 == 0 {
            continue;
        }
        path.push(v);
        if path.len() >= 3 && adj[v] >> s & 1 == 1 {
            out.push(path.iter().fold(0u32, |acc, &c| acc | 1 << c));
        }
        cycles_from(s, adj, path, out);
        path.pop();
    }
}

fn check_conditions(n: usize, den: u64, num: u64) -> std::result::Result<(), String> {
    if den & num != 0 {
        return Err("an edge is both denominator and numerator".into());
    }
    let all = edges_of(den | num);
    for (x, &e) in all.iter().enumerate() {
        for &f in &all[x + 1..] {
            if crosses(e, f) {
                return Err(format!("edges {e:?} and {f:?} cross"));
            }
        }
    }
    let nums = edges_of(num);
    if let Some(e) = nums.iter().find(|&&e| is_boundary(n, e)) {
        return Err(format!("numerator edge {e:?} lies on the boundary"));
    }
    let faces = faces(n, den);
    let inside = |set: u32, (u, v): Edge| set >> u & 1 == 1 && set >> v & 1 == 1;
    for &f in &faces {
        let k = nums.iter().filter(|&&e| inside(f, e)).count();
        if k != 1 {
            return Err(format!(
                "a denominator cycle encloses {k} numerator edges instead of one"
            ));
        }
    }
    if let Some(e) = nums.iter().find(|&&e| !faces.iter().any(|&f| inside(f, e))) {
        return Err(format!("numerator edge {e:?} is not enclosed by a denominator cycle"));
    }
    Ok(())
}

fn check_maximal(n: usize, den: u64, num: u64) -> std::result::Result<(), String> {
    let used = den | num;
    for k in 0..edge_count(n) {
        let b = 1u64 << k;
        if used & b != 0 {
            continue;
        }
        if check_conditions(n, den | b, num).is_ok() || check_conditions(n, den, num | b).is_ok() {
            return Err(format!("edge {:?} can be added", edge_of_index(k)));
        }
    }
    Ok(())
}

fn validate(n: usize, den: u64, num: u64) -> Result<()> {
    check_conditions(n, den, num)
        .and_then(|_| check_maximal(n, den, num))
        .map_err(Error::InvalidPlant)
}

impl NcPlant {
    /// Builds and validates a plant of degree `n`.
    pub fn new(n: usize, den: impl IntoIterator<Item = Edge>, num: impl IntoIterator<Item = Edge>) -> Result<NcPlant> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange { n, max: MAX_DEGREE });
        }
        let mask = |edges: &mut dyn Iterator<Item = Edge>| -> Result<u64> {
            let mut m = 0u64;
            for (u, v) in edges {
                if u >= v || v > n {
                    return Err(Error::InvalidPlant(format!("bad edge ({u}, {v}) on O_{n}")));
                }
                if m & bit(u, v) != 0 {
                    return Err(Error::InvalidPlant(format!("repeated edge ({u}, {v})")));
                }
                m |= bit(u, v);
            }
            Ok(m)
        };
        let den = mask(&mut den.into_iter())?;
        let num = mask(&mut num.into_iter())?;
        validate(n, den, num)?;
        Ok(NcPlant { n, den, num })
    }

    /// Builds and validates a noncrossing tree.
    pub fn tree(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<NcPlant> {
        NcPlant::new(n, edges, [])
    }

    /// The single edge of `O_1`.
    pub fn unit() -> NcPlant {
        NcPlant {
            n: 1,
            den: bit(0, 1),
            num: 0,
        }
    }

    pub fn garbre() -> NcPlant {
        NcPlant {
            n: 2,
            den: bit(0, 1) | bit(0, 2),
            num: 0,
        }
    }

    pub fn marbre() -> NcPlant {
        NcPlant {
            n: 2,
            den: bit(0, 1) | bit(1, 2),
            num: 0,
        }
    }

    pub fn darbre() -> NcPlant {
        NcPlant {
            n: 2,
            den: bit(1, 2) | bit(0, 2),
            num: 0,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn den_edges(&self) -> Vec<Edge> {
        edges_of(self.den)
    }

    pub fn num_edges(&self) -> Vec<Edge> {
        edges_of(self.num)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u.max(v) <= self.n && self.den & bit(u, v) != 0
    }

    pub fn is_tree(&self) -> bool {
        self.num == 0
    }

    /// Contains the base side `{0, n}`.
    pub fn is_based(&self) -> bool {
        self.has_edge(0, self.n)
    }

    /// Contains the border side `{i - 1, i}`.
    pub fn contains_side(&self, i: usize) -> bool {
        i >= 1 && i <= self.n && self.has_edge(i - 1, i)
    }

    /// Re-checks every defining condition.
    pub fn validate(&self) -> Result<()> {
        validate(self.n, self.den, self.num)
    }

    fn require_tree(&self) -> Result<()> {
        if self.is_tree() {
            Ok(())
        } else {
            Err(Error::NotATree)
        }
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..=self.n).filter(|&u| self.has_edge(u, v)).collect();
        let m = self.n + 1;
        out.sort_by_key(|&u| (u + m - v) % m);
        out
    }

    /// All angles, corner by corner.
    pub fn angles(&self) -> Result<Vec<Angle>> {
        self.require_tree()?;
        let mut out = Vec::new();
        for v in 0..=self.n {
            let nb = self.neighbors(v);
            for w in nb.windows(2) {
                let mut triangle = [v, w[0], w[1]];
                triangle.sort_unstable();
                out.push(Angle {
                    vertex: v,
                    edges: [(v.min(w[0]), v.max(w[0])), (v.min(w[1]), v.max(w[1]))],
                    triangle,
                    kind: kind_at(v, triangle),
                });
            }
        }
        Ok(out)
    }

    pub fn angle_counts(&self) -> Result<AngleCounts> {
        let mut c = AngleCounts::default();
        for a in self.angles()? {
            match a.kind {
                AngleKind::G => c.g += 1,
                AngleKind::M => c.m += 1,
                AngleKind::D => c.d += 1,
            }
        }
        Ok(c)
    }

    /// Exchanges `removed`, one of the two edges of `angle`, for the third
    /// side of the triangle of the angle.
    pub fn pivot(&self, angle: &Angle, removed: Edge) -> Result<Pivot> {
        self.require_tree()?;
        if !angle.edges.contains(&removed) || !self.has_edge(removed.0, removed.1) {
            return Err(Error::InvalidPlant(format!(
                "edge {removed:?} is not a side of the angle at {}",
                angle.vertex
            )));
        }
        let kept = if angle.edges[0] == removed {
            angle.edges[1]
        } else {
            angle.edges[0]
        };
        let other = |(u, v): Edge| if u == angle.vertex { v } else { u };
        let added = {
            let (p, q) = (other(removed), other(kept));
            (p.min(q), p.max(q))
        };
        let common = other(kept);
        let target = NcPlant {
            n: self.n,
            den: (self.den & !bit(removed.0, removed.1)) | bit(added.0, added.1),
            num: 0,
        };
        target
            .validate()
            .map_err(|e| Error::Inconsistent(format!("pivot of {self} at {angle:?} is not a tree: {e}")))?;
        Ok(Pivot {
            angle: *angle,
            removed,
            added,
            after: kind_at(common, angle.triangle),
            target,
        })
    }

    /// Both edge exchanges at every angle.
    pub fn pivots(&self) -> Result<Vec<Pivot>> {
        let mut out = Vec::new();
        for a in self.angles()? {
            for e in a.edges {
                out.push(self.pivot(&a, e)?);
            }
        }
        Ok(out)
    }

    /// Good pivots leaving this tree.
    pub fn good_pivots(&self) -> Result<Vec<(Angle, NcPlant)>> {
        Ok(self
            .pivots()?
            .into_iter()
            .filter(Pivot::is_good)
            .map(|p| (p.angle, p.target))
            .collect())
    }

    /// Good pivots arriving at this tree, as (angle of the source, source).
    pub fn good_pivots_into(&self) -> Result<Vec<(Angle, NcPlant)>> {
        let mut out = Vec::new();
        for a in self.angles()? {
            if a.kind != AngleKind::M {
                continue;
            }
            // the source has {a, b} and {a, c} where this tree has {a, b} and {b, c}
            let [x, y, z] = a.triangle;
            let source = NcPlant {
                n: self.n,
                den: (self.den & !bit(y, z)) | bit(x, z),
                num: 0,
            };
            let (angle, _) = source
                .good_pivots()?
                .into_iter()
                .find(|(_, t)| t == self)
                .ok_or_else(|| Error::Inconsistent(format!("no good pivot from {source} to {self}")))?;
            out.push((angle, source));
        }
        Ok(out)
    }

    /// Restriction to the corners `lo..=hi`, renumbered from 0.
    fn restrict(&self, lo: usize, hi: usize) -> NcPlant {
        let pick = |mask: u64| {
            BitIter(mask)
                .map(edge_of_index)
                .filter(|&(u, v)| lo <= u && v <= hi)
                .fold(0u64, |acc, (u, v)| acc | bit(u - lo, v - lo))
        };
        NcPlant {
            n: hi - lo,
            den: pick(self.den),
            num: pick(self.num),
        }
    }

    /// Corners on the tree path from 0 to `n`.
    fn base_path(&self) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.n + 1];
        let mut stack = vec![0usize];
        prev[0] = 0;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if prev[u] == usize::MAX {
                    prev[u] = v;
                    stack.push(u);
                }
            }
        }
        let mut path = vec![self.n];
        while *path.last().unwrap() != 0 {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        path
    }

    /// Factors along the path from corner 0 to corner `n`, each based.
    pub fn decompose_star(&self) -> Result<Vec<NcPlant>> {
        self.require_tree()?;
        if self.n == 1 {
            return Ok(vec![*self]);
        }
        let path = self.base_path();
        if path.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Inconsistent(format!("base path of {self} is not increasing")));
        }
        let factors: Vec<NcPlant> = path.windows(2).map(|w| self.restrict(w[0], w[1])).collect();
        let covered: u32 = factors.iter().map(|f| f.den.count_ones()).sum();
        if covered != self.den.count_ones() {
            return Err(Error::Inconsistent(format!("factors of {self} miss edges")));
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(factors)
    }

    /// Unique factorization through the simple trees, inverse of [`simple_nct`].
    pub fn tree_of_simple(&self) -> Result<Tree> {
        self.require_tree()?;
        if self.angle_counts()?.m > 0 {
            return Err(Error::NotSimple);
        }
        let t = simple_decode(self).ok_or(Error::NotSimple)?;
        if simple_nct(&t)? != *self {
            return Err(Error::NotSimple);
        }
        Ok(t)
    }
}

fn simple_decode(p: &NcPlant) -> Option<Tree> {
    if p.n == 0 {
        return Some(Tree::leaf());
    }
    if !p.is_based() {
        return None;
    }
    let rest = NcPlant {
        n: p.n,
        den: p.den & !bit(0, p.n),
        num: 0,
    };
    // corners reachable from 0 without the base side
    let mut seen = 1u32;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for u in rest.neighbors(v) {
            if seen >> u & 1 == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    let split = seen.count_ones() as usize - 1;
    if seen != (1u32 << (split + 1)) - 1 || split >= p.n {
        return None;
    }
    let left = simple_decode(&rest.restrict(0, split))?;
    let right = simple_decode(&rest.restrict(split + 1, p.n))?;
    Some(Tree::node(left, right))
}

/// The noncrossing tree whose image is the single tree `t`.
pub fn simple_nct(t: &Tree) -> Result<NcPlant> {
    if t.degree() == 0 {
        return Err(Error::ZeroDegree);
    }
    if t.degree() > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange {
            n: t.degree(),
            max: MAX_DEGREE,
        });
    }
    fn build(t: &Tree, offset: usize) -> u64 {
        match t.children() {
            None => 0,
            Some((l, r)) => {
                let p = l.degree();
                let n = t.degree();
                build(l, offset) | build(r, offset + p + 1) | bit(offset, offset + n)
            }
        }
    }
    let p = NcPlant {
        n: t.degree(),
        den: build(t, 0),
        num: 0,
    };
    p.validate()?;
    Ok(p)
}

/// Operad composition `P ∘_i Q` by gluing the base side of `Q` on side `i` of `P`.
pub fn compose_ncp(p: &NcPlant, i: usize, q: &NcPlant) -> Result<NcPlant> {
    let (m, n) = (p.n, q.n);
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, arity: m });
    }
    let total = m + n - 1;
    if total > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange {
            n: total,
            max: MAX_DEGREE,
        });
    }
    let map_p = |j: usize| if j < i { j } else { j + n - 1 };
    let map_q = |k: usize| i - 1 + k;
    let side = bit(i - 1, i);
    let base = bit(0, n);
    let moved = |mask: u64, f: &dyn Fn(usize) -> usize| {
        BitIter(mask)
            .map(edge_of_index)
            .fold(0u64, |acc, (u, v)| acc | bit(f(u), f(v)))
    };
    let mut den = moved(p.den & !side, &map_p) | moved(q.den & !base, &map_q);
    let mut num = moved(p.num, &map_p) | moved(q.num, &map_q);
    let glue = bit(i - 1, i + n - 1);
    match (p.den & side != 0, q.den & base != 0) {
        (true, true) => den |= glue,
        (false, false) => num |= glue,
        _ => {}
    }
    let out = NcPlant { n: total, den, num };
    out.validate()
        .map_err(|e| Error::Inconsistent(format!("{p} ∘_{i} {q}: {e}")))?;
    Ok(out)
}

/// `P * Q = (Marbre ∘_2 Q) ∘_1 P`.
pub fn star_ncp(p: &NcPlant, q: &NcPlant) -> Result<NcPlant> {
    compose_ncp(&compose_ncp(&NcPlant::marbre(), 2, q)?, 1, p)
}

/// `P / Q = (Q ∘_1 Garbre) ∘_1 P`.
pub fn over_ncp(p: &NcPlant, q: &NcPlant) -> Result<NcPlant> {
    compose_ncp(&compose_ncp(q, 1, &NcPlant::garbre())?, 1, p)
}

/// `P \ Q = (P ∘_m Darbre) ∘_{m+1} Q`.
pub fn under_ncp(p: &NcPlant, q: &NcPlant) -> Result<NcPlant> {
    let m = p.n;
    compose_ncp(&compose_ncp(p, m, &NcPlant::darbre())?, m + 1, q)
}

fn check_enum_degree(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::ZeroDegree),
        n if n > MAX_ENUM_DEGREE => Err(Error::DegreeOutOfRange {
            n,
            max: MAX_ENUM_DEGREE,
        }),
        _ => Ok(()),
    }
}

/// All plants of degree `n` by exhaustive search, sorted.
pub fn enumerate_ncp(n: usize) -> Result<Vec<NcPlant>> {
    check_enum_degree(n)?;
    Ok(search(n, true))
}

/// All noncrossing trees of degree `n` by exhaustive search, sorted.
pub fn enumerate_nct(n: usize) -> Result<Vec<NcPlant>> {
    check_enum_degree(n)?;
    Ok(search(n, false))
}

fn search(n: usize, with_num: bool) -> Vec<NcPlant> {
    let edges: Vec<Edge> = (0..edge_count(n)).map(edge_of_index).collect();
    let mut out = Vec::new();
    extend(n, &edges, 0, Vec::new(), 0, 0, with_num, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    n: usize,
    edges: &[Edge],
    k: usize,
    mut chosen: Vec<Edge>,
    den: u64,
    num: u64,
    with_num: bool,
    out: &mut Vec<NcPlant>,
) {
    if k == edges.len() {
        if validate(n, den, num).is_ok() {
            out.push(NcPlant { n, den, num });
        }
        return;
    }
    extend(n, edges, k + 1, chosen.clone(), den, num, with_num, out);
    let e = edges[k];
    if chosen.iter().any(|&f| crosses(e, f)) {
        return;
    }
    chosen.push(e);
    let b = 1u64 << k;
    if with_num && !is_boundary(n, e) {
        extend(n, edges, k + 1, chosen.clone(), den, num | b, with_num, out);
    }
    extend(n, edges, k + 1, chosen, den | b, num, with_num, out);
}

impl Ord for NcPlant {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.den_edges(), self.num_edges()).cmp(&(other.n, other.den_edges(), other.num_edges()))
    }
}

impl PartialOrd for NcPlant {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NcPlant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |edges: Vec<Edge>| {
            edges
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}:{{{}", self.n, join(self.den_edges()))?;
        if self.num != 0 {
            write!(f, "|{}", join(self.num_edges()))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for NcPlant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPlant({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct PlantJson {
    n: usize,
    den: Vec<[usize; 2]>,
    num: Vec<[usize; 2]>,
}

impl Serialize for NcPlant {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PlantJson {
            n: self.n,
            den: self.den_edges().into_iter().map(|(u, v)| [u, v]).collect(),
            num: self.num_edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NcPlant {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<NcPlant, D::Error> {
        let raw = PlantJson::deserialize(deserializer)?;
        let norm = |[u, v]: [usize; 2]| (u.min(v), u.max(v));
        NcPlant::new(raw.n, raw.den.into_iter().map(norm), raw.num.into_iter().map(norm))
            .map_err(serde::de::Error::custom)
    }
}

/// Plants of degree up to some bound together with their images in `Dend`,
/// generated from the three degree-2 generators under all compositions.
pub struct NcTable {
    max_degree: usize,
    by_degree: Vec<Vec<NcPlant>>,
    images: HashMap<NcPlant, DendElem>,
    trees_by_image: HashMap<DendElem, Vec<NcPlant>>,
}

impl NcTable {
    pub fn build(max_degree: usize) -> Result<NcTable> {
        if max_degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if max_degree > MAX_TABLE_DEGREE {
            return Err(Error::DegreeOutOfRange {
                n: max_degree,
                max: MAX_TABLE_DEGREE,
            });
        }
        let gauche = DendElem::basis(Tree::left_comb(2)?);
        let droite = DendElem::basis(Tree::right_comb(2)?);
        let generators = [
            (NcPlant::garbre(), gauche.clone()),
            (NcPlant::marbre(), &gauche + &droite),
            (NcPlant::darbre(), droite),
        ];
        let mut images: HashMap<NcPlant, DendElem> = HashMap::new();
        let mut by_degree = vec![Vec::new(), vec![NcPlant::unit()]];
        images.insert(NcPlant::unit(), DendElem::unit());
        if max_degree >= 2 {
            by_degree.push(generators.iter().map(|g| g.0).collect());
            images.extend(generators.iter().cloned());
        }
        for d in 2..max_degree {
            let mut next = BTreeSet::new();
            for p in &by_degree[d] {
                let img = images[p].clone();
                for i in 1..=d {
                    for (g, gi) in &generators {
                        let q = compose_ncp(p, i, g)?;
                        let qi = dendriform::compose(&img, i, gi)?;
                        match images.get(&q) {
                            Some(prev) if *prev != qi => {
                                return Err(Error::Inconsistent(format!("{q} reached with images {prev} and {qi}")))
                            }
                            Some(_) => {}
                            None => {
                                images.insert(q, qi);
                            }
                        }
                        next.insert(q);
                    }
                }
            }
            by_degree.push(next.into_iter().collect());
        }
        for level in &mut by_degree {
            level.sort();
        }
        let mut trees_by_image: HashMap<DendElem, Vec<NcPlant>> = HashMap::new();
        for level in &by_degree {
            for p in level.iter().filter(|p| p.is_tree()) {
                trees_by_image.entry(images[p].clone()).or_default().push(*p);
            }
        }
        Ok(NcTable {
            max_degree,
            by_degree,
            images,
            trees_by_image,
        })
    }

    /// A process-wide table covering at least `max_degree`.
    pub fn shared(max_degree: usize) -> Result<Arc<NcTable>> {
        static CACHE: OnceLock<Mutex<Option<Arc<NcTable>>>> = OnceLock::new();
        let mut slot = CACHE.get_or_init(Default::default).lock().unwrap();
        if let Some(t) = slot.as_ref() {
            if t.max_degree >= max_degree {
                return Ok(t.clone());
            }
        }
        let t = Arc::new(NcTable::build(max_degree)?);
        *slot = Some(t.clone());
        Ok(t)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Sorted plants of degree `n`.
    pub fn plants(&self, n: usize) -> &[NcPlant] {
        self.by_degree.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn trees(&self, n: usize) -> impl Iterator<Item = &NcPlant> + '_ {
        self.plants(n).iter().filter(|p| p.is_tree())
    }

    pub fn image(&self, p: &NcPlant) -> Result<&DendElem> {
        self.images.get(p).ok_or_else(|| Error::TableMiss(p.to_string()))
    }

    /// Noncrossing trees with the given image.
    pub fn trees_with_image(&self, a: &DendElem) -> &[NcPlant] {
        self.trees_by_image.get(a).map_or(&[], Vec::as_slice)
    }
}

/// Image of a plant under the operad morphism to `Dend`.
pub fn ncp_to_dend(p: &NcPlant) -> Result<DendElem> {
    let n = p.degree();
    if n > MAX_TABLE_DEGREE {
        return Err(Error::DegreeOutOfRange {
            n,
            max: MAX_TABLE_DEGREE,
        });
    }
    NcTable::shared(n.max(2))?.image(p).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::enumerate_trees;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn edge_indexing() {
        for k in 0..45 {
            let (u, v) = edge_of_index(k);
            assert!(u < v);
            assert_eq!(edge_index(u, v), k);
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_nct(1).unwrap(), vec![NcPlant::unit()]);
        let nct2 = enumerate_nct(2).unwrap();
        assert_eq!(nct2.len(), 3);
        for g in [NcPlant::garbre(), NcPlant::marbre(), NcPlant::darbre()] {
            assert!(nct2.contains(&g));
        }
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_nct(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 12, 55, 273]);
        assert_eq!(enumerate_ncp(3).unwrap().len(), 14);
        assert!(enumerate_nct(0).is_err());
        assert!(enumerate_nct(7).is_err());
    }

    #[test]
    fn validation_rejects_bad_plants() {
        assert!(NcPlant::tree(3, [(0, 2), (1, 3), (0, 1)]).is_err()); // crossing
        assert!(NcPlant::tree(2, [(0, 1)]).is_err()); // not maximal
        assert!(NcPlant::tree(2, [(0, 1), (1, 2), (0, 2)]).is_err()); // empty cycle
        assert!(NcPlant::new(3, [(0, 1), (1, 2), (2, 3)], [(0, 3)]).is_err()); // boundary numerator
        let square = NcPlant::new(3, [(0, 1), (1, 2), (2, 3), (0, 3)], [(1, 3)]).unwrap();
        assert!(!square.is_tree());
    }

    #[test]
    fn gluing_examples() {
        let m = NcPlant::marbre();
        let path = compose_ncp(&m, 1, &m).unwrap();
        assert_eq!(path, NcPlant::tree(3, [(0, 1), (1, 2), (2, 3)]).unwrap());
        let plant = compose_ncp(&NcPlant::garbre(), 2, &m).unwrap();
        assert_eq!(plant.num_edges(), vec![(1, 3)]);
        assert_eq!(plant.den_edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(
            compose_ncp(&m, 3, &m),
            Err(Error::IndexOutOfRange { index: 3, arity: 2 })
        );
    }

    #[test]
    fn angle_types_of_generators() {
        let c = NcPlant::garbre().angle_counts().unwrap();
        assert_eq!((c.g, c.m, c.d), (1, 0, 0));
        let c = NcPlant::darbre().angle_counts().unwrap();
        assert_eq!((c.g, c.m, c.d), (0, 0, 1));
        let path = NcPlant::tree(3, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let angles = path.angles().unwrap();
        assert_eq!(angles.len(), 2);
        assert!(angles.iter().all(|a| a.kind == AngleKind::M));
        assert_eq!(angles.iter().map(|a| a.vertex).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn pivots_of_generators() {
        let g = NcPlant::garbre();
        let good = g.good_pivots().unwrap();
        assert_eq!(good.len(), 1);
        assert_eq!(good[0].1, NcPlant::marbre());
        assert!(NcPlant::darbre().good_pivots().unwrap().is_empty());
        let into = NcPlant::marbre().good_pivots_into().unwrap();
        assert_eq!(into.len(), 1);
        assert_eq!(into[0].1, g);
        let angle = g.angles().unwrap()[0];
        assert_eq!(g.pivot(&angle, (0, 2)).unwrap().target, NcPlant::marbre());
        assert!(g.pivot(&angle, (1, 2)).is_err());
    }

    #[test]
    fn star_decomposition() {
        let m = NcPlant::marbre();
        assert_eq!(m.decompose_star().unwrap(), vec![NcPlant::unit(); 2]);
        assert_eq!(NcPlant::garbre().decompose_star().unwrap(), vec![NcPlant::garbre()]);
        for p in enumerate_nct(4).unwrap() {
            let factors = p.decompose_star().unwrap();
            assert!(factors.iter().all(NcPlant::is_based));
            let back = factors[1..]
                .iter()
                .try_fold(factors[0], |acc, f| star_ncp(&acc, f))
                .unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn simple_trees() {
        assert_eq!(simple_nct(&t("((o o) o)")).unwrap(), NcPlant::garbre());
        assert_eq!(simple_nct(&t("(o (o o))")).unwrap(), NcPlant::darbre());
        assert_eq!(simple_nct(&Tree::unit()).unwrap(), NcPlant::unit());
        assert_eq!(NcPlant::marbre().tree_of_simple(), Err(Error::NotSimple));
        for n in 1..=5 {
            for x in enumerate_trees(n).unwrap() {
                let p = simple_nct(&x).unwrap();
                assert_eq!(p.tree_of_simple().unwrap(), x);
                assert_eq!(ncp_to_dend(&p).unwrap(), DendElem::basis(x));
            }
        }
    }

    #[test]
    fn generator_images() {
        let gauche = DendElem::basis(t("((o o) o)"));
        let droite = DendElem::basis(t("(o (o o))"));
        assert_eq!(ncp_to_dend(&NcPlant::garbre()).unwrap(), gauche);
        assert_eq!(ncp_to_dend(&NcPlant::marbre()).unwrap(), &gauche + &droite);
        assert_eq!(ncp_to_dend(&NcPlant::darbre()).unwrap(), droite);
        assert_eq!(ncp_to_dend(&NcPlant::unit()).unwrap(), DendElem::unit());
    }

    #[test]
    fn json_form() {
        let p = compose_ncp(&NcPlant::garbre(), 2, &NcPlant::marbre()).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"n":3,"den":[[0,1],[0,3],[1,2],[2,3]],"num":[[1,3]]}"#);
        assert_eq!(serde_json::from_str::<NcPlant>(&json).unwrap(), p);
        assert!(serde_json::from_str::<NcPlant>(r#"{"n":2,"den":[[0,1]],"num":[]}"#).is_err());
    }
}
