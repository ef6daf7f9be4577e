//! The Tamari order on trees of a fixed degree.
//!
//! `x <= y` when `x` is reached from `y` by a sequence of elementary moves,
//! each rewriting a subtree `(a (b c))` into `((a b) c)`. Hasse diagram arrows
//! point downwards, from a tree to its lower covers.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::dendriform::DendElem;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::trees::{enumerate_trees, Tree, MAX_DEGREE};

/// All trees obtained from `t` by one elementary move.
pub fn lower_covers(t: &Tree) -> Vec<Tree> {
    let mut out = Vec::new();
    let Some((l, r)) = t.children() else {
        return out;
    };
    if let Some((b, c)) = r.children() {
        out.push(Tree::node(Tree::node(l.clone(), b.clone()), c.clone()));
    }
    for l2 in lower_covers(l) {
        out.push(Tree::node(l2, r.clone()));
    }
    for r2 in lower_covers(r) {
        out.push(Tree::node(l.clone(), r2));
    }
    out
}

/// All trees from which `t` is reached by one elementary move.
pub fn upper_covers(t: &Tree) -> Vec<Tree> {
    let mut out = Vec::new();
    let Some((l, r)) = t.children() else {
        return out;
    };
    if let Some((a, b)) = l.children() {
        out.push(Tree::node(a.clone(), Tree::node(b.clone(), r.clone())));
    }
    for l2 in upper_covers(l) {
        out.push(Tree::node(l2, r.clone()));
    }
    for r2 in upper_covers(r) {
        out.push(Tree::node(l.clone(), r2));
    }
    out
}

fn check_same_degree(x: &Tree, y: &Tree) -> Result<usize> {
    if x.degree() != y.degree() {
        return Err(Error::DegreeMismatch {
            left: x.degree(),
            right: y.degree(),
        });
    }
    Ok(x.degree())
}

/// `x <= y` in the Tamari order, decided by searching downwards from `y`.
pub fn leq(x: &Tree, y: &Tree) -> Result<bool> {
    check_same_degree(x, y)?;
    let mut seen = HashSet::new();
    let mut stack = vec![y.clone()];
    while let Some(t) = stack.pop() {
        if &t == x {
            return Ok(true);
        }
        for c in lower_covers(&t) {
            if seen.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    Ok(false)
}

/// Fixed-size bit set over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// The Tamari poset of one degree, with its order relation and Möbius function.
///
/// Elements are listed in a fixed linear extension (minimum first), obtained by
/// topological sort with the lexicographic tree order breaking ties. All matrices
/// are indexed by that order.
#[derive(Debug)]
pub struct PosetView {
    n: usize,
    elements: Vec<Tree>,
    index: HashMap<Tree, usize>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
    // nonzero Möbius values per row, sorted by column
    mobius: Vec<Vec<(usize, i64)>>,
}

impl PosetView {
    pub fn build(n: usize) -> Result<PosetView> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange { n, max: MAX_DEGREE });
        }
        let lex = enumerate_trees(n)?;
        let lex_index: HashMap<&Tree, usize> = lex.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let lex_lower: Vec<Vec<usize>> = lex
            .iter()
            .map(|t| lower_covers(t).iter().map(|c| lex_index[c]).collect())
            .collect();

        // Kahn's algorithm: an element becomes available once all its lower covers are placed.
        let size = lex.len();
        let mut pending: Vec<usize> = lex_lower.iter().map(Vec::len).collect();
        let mut lex_upper = vec![Vec::new(); size];
        for (t, cs) in lex_lower.iter().enumerate() {
            for &c in cs {
                lex_upper[c].push(t);
            }
        }
        let mut heap: BinaryHeap<Reverse<usize>> = (0..size).filter(|&i| pending[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(size);
        while let Some(Reverse(i)) = heap.pop() {
            order.push(i);
            for &u in &lex_upper[i] {
                pending[u] -= 1;
                if pending[u] == 0 {
                    heap.push(Reverse(u));
                }
            }
        }
        if order.len() != size {
            return Err(Error::Inconsistent("cycle among elementary moves".into()));
        }
        let mut position = vec![0; size];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p;
        }
        let elements: Vec<Tree> = order.iter().map(|&i| lex[i].clone()).collect();
        let index = elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let lower: Vec<Vec<usize>> = order
            .iter()
            .map(|&i| {
                let mut v: Vec<usize> = lex_lower[i].iter().map(|&c| position[c]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut upper = vec![Vec::new(); size];
        for (t, cs) in lower.iter().enumerate() {
            for &c in cs {
                upper[c].push(t);
            }
        }

        let mut down = Vec::with_capacity(size);
        for (t, cs) in lower.iter().enumerate() {
            let mut d = BitSet::new(size);
            d.insert(t);
            for &c in cs {
                d.union_with(&down[c]);
            }
            down.push(d);
        }
        let mut up = vec![BitSet::new(size); size];
        for t in (0..size).rev() {
            let mut u = BitSet::new(size);
            u.insert(t);
            for &p in &upper[t] {
                u.union_with(&up[p]);
            }
            up[t] = u;
        }

        // A single elementary move always gives a cover; check it rather than assume it.
        for (t, cs) in lower.iter().enumerate() {
            for &c in cs {
                if cs.iter().any(|&c2| c2 != c && down[c2].contains(c)) {
                    return Err(Error::Inconsistent(format!(
                        "elementary move {} -> {} is not a cover",
                        elements[t], elements[c]
                    )));
                }
            }
        }

        // Row s of the inverse of the zeta matrix, by back substitution over [s, t].
        let mut mobius = Vec::with_capacity(size);
        let mut scratch = vec![0i64; size];
        for s in 0..size {
            let mut row = vec![(s, 1)];
            scratch[s] = 1;
            for t in up[s].iter().filter(|&t| t != s) {
                let mut acc: i64 = 0;
                for u in down[t].intersection(&up[s]).iter().filter(|&u| u != t) {
                    acc = acc.checked_add(scratch[u]).ok_or(Error::Overflow)?;
                }
                let mu = acc.checked_neg().ok_or(Error::Overflow)?;
                scratch[t] = mu;
                if mu != 0 {
                    row.push((t, mu));
                }
            }
            for t in up[s].iter() {
                scratch[t] = 0;
            }
            mobius.push(row);
        }

        Ok(PosetView {
            n,
            elements,
            index,
            lower,
            upper,
            down,
            up,
            mobius,
        })
    }

    /// Shared, lazily built view for degree `n`.
    pub fn shared(n: usize) -> Result<Arc<PosetView>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PosetView>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(v) = cache.lock().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let view = Arc::new(PosetView::build(n)?);
        Ok(cache.lock().unwrap().entry(n).or_insert(view).clone())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Tree] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Tree {
        &self.elements[i]
    }

    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.index.get(t).copied()
    }

    fn require_index(&self, t: &Tree) -> Result<usize> {
        self.index_of(t).ok_or(Error::DegreeMismatch {
            left: self.n,
            right: t.degree(),
        })
    }

    /// Indices of the lower covers of element `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    /// Hasse diagram arrows `(from, to)`, oriented decreasingly.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.lower
            .iter()
            .enumerate()
            .flat_map(|(t, cs)| cs.iter().map(move |&c| (t, c)))
            .collect()
    }

    pub fn down_set(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    pub fn up_set(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    pub fn leq(&self, x: &Tree, y: &Tree) -> Result<bool> {
        Ok(self.leq_idx(self.require_index(x)?, self.require_index(y)?))
    }

    /// Nonzero values `μ(s, t)`, sorted by `t`.
    pub fn mobius_row(&self, s: usize) -> &[(usize, i64)] {
        &self.mobius[s]
    }

    pub fn mobius_idx(&self, s: usize, t: usize) -> i64 {
        let row = &self.mobius[s];
        row.binary_search_by_key(&t, |&(k, _)| k).map_or(0, |p| row[p].1)
    }

    /// Indices of `[i, j]`, in element order; empty unless `i <= j`.
    pub fn interval_idx(&self, i: usize, j: usize) -> Vec<usize> {
        self.down[j].intersection(&self.up[i]).iter().collect()
    }

    pub fn interval(&self, x: &Tree, y: &Tree) -> Result<Vec<Tree>> {
        let (i, j) = (self.require_index(x)?, self.require_index(y)?);
        Ok(self
            .interval_idx(i, j)
            .into_iter()
            .map(|k| self.elements[k].clone())
            .collect())
    }

    pub fn minimum(&self) -> &Tree {
        &self.elements[0]
    }

    pub fn maximum(&self) -> &Tree {
        self.elements.last().expect("nonempty poset")
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> Result<usize> {
        let common = self.down[i].intersection(&self.down[j]);
        // the greatest element, if any, comes last in a linear extension
        let m = common
            .iter()
            .last()
            .ok_or_else(|| Error::Inconsistent("no common lower bound".into()))?;
        if !common.is_subset(&self.down[m]) {
            return Err(Error::Inconsistent(format!(
                "no greatest lower bound for {} and {}",
                self.elements[i], self.elements[j]
            )));
        }
        Ok(m)
    }

    pub fn join_idx(&self, i: usize, j: usize) -> Result<usize> {
        let common = self.up[i].intersection(&self.up[j]);
        let m = common
            .iter()
            .next()
            .ok_or_else(|| Error::Inconsistent("no common upper bound".into()))?;
        if !common.is_subset(&self.up[m]) {
            return Err(Error::Inconsistent(format!(
                "no least upper bound for {} and {}",
                self.elements[i], self.elements[j]
            )));
        }
        Ok(m)
    }

    pub fn meet(&self, x: &Tree, y: &Tree) -> Result<Tree> {
        let m = self.meet_idx(self.require_index(x)?, self.require_index(y)?)?;
        Ok(self.elements[m].clone())
    }

    pub fn join(&self, x: &Tree, y: &Tree) -> Result<Tree> {
        let m = self.join_idx(self.require_index(x)?, self.require_index(y)?)?;
        Ok(self.elements[m].clone())
    }

    /// Zeta matrix `C[s][t] = 1` iff `s <= t`. Upper unitriangular in element order.
    pub fn zeta_matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut c = IntMatrix::zeros(n, n);
        for t in 0..n {
            for s in self.down[t].iter() {
                c.set(s, t, 1);
            }
        }
        c
    }

    pub fn mobius_matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut m = IntMatrix::zeros(n, n);
        for (s, row) in self.mobius.iter().enumerate() {
            for &(t, v) in row {
                m.set(s, t, v);
            }
        }
        m
    }

    /// Distinct Möbius values occurring in the poset.
    pub fn mobius_values(&self) -> BTreeSet<i64> {
        let mut vals: BTreeSet<i64> = self.mobius.iter().flatten().map(|&(_, v)| v).collect();
        if self.len() > 1 {
            vals.insert(0);
        }
        vals
    }

    /// Coefficient vector of an element in element order.
    pub fn to_vector(&self, a: &DendElem) -> Result<Vec<i64>> {
        if a.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: a.degree(),
            });
        }
        let mut v = vec![0; self.len()];
        for (t, c) in a.terms() {
            v[self.require_index(t)?] = c;
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &[i64]) -> DendElem {
        DendElem::from_terms_unchecked(
            self.n,
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (self.elements[i].clone(), c)),
        )
    }

    /// Sum of all trees in the down-set of `i`.
    pub fn down_sum(&self, i: usize) -> DendElem {
        DendElem::from_terms_unchecked(self.n, self.down[i].iter().map(|k| (self.elements[k].clone(), 1)))
    }

    /// Bilinear Euler form `<a, b> = sum_{s <= t} a_s b_t mu(s, t)`.
    pub fn euler_form(&self, a: &DendElem, b: &DendElem) -> Result<i64> {
        let (va, vb) = (self.to_vector(a)?, self.to_vector(b)?);
        let mut acc: i64 = 0;
        for (s, &x) in va.iter().enumerate().filter(|(_, &x)| x != 0) {
            for &(t, mu) in &self.mobius[s] {
                let y = vb[t];
                if y != 0 {
                    let term = x
                        .checked_mul(y)
                        .and_then(|p| p.checked_mul(mu))
                        .ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(acc)
    }
}

/// All `z` with `x <= z <= y`, in linear-extension order.
pub fn interval(x: &Tree, y: &Tree) -> Result<Vec<Tree>> {
    let n = check_same_degree(x, y)?;
    PosetView::shared(n)?.interval(x, y)
}

pub fn meet(x: &Tree, y: &Tree) -> Result<Tree> {
    let n = check_same_degree(x, y)?;
    PosetView::shared(n)?.meet(x, y)
}

pub fn join(x: &Tree, y: &Tree) -> Result<Tree> {
    let n = check_same_degree(x, y)?;
    PosetView::shared(n)?.join(x, y)
}

/// Euler form of two homogeneous elements of the same degree.
pub fn euler_form(a: &DendElem, b: &DendElem) -> Result<i64> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    PosetView::shared(a.degree())?.euler_form(a, b)
}

/// Quadratic form `E(a) = <a, a>`.
pub fn euler_quadratic(a: &DendElem) -> Result<i64> {
    euler_form(a, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::Side;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn covers_of_small_trees() {
        let g = t("((o o) o)");
        let d = t("(o (o o))");
        assert_eq!(lower_covers(&d), vec![g.clone()]);
        assert!(lower_covers(&g).is_empty());
        assert_eq!(upper_covers(&g), vec![d]);
        for n in 1..=6 {
            let top = Tree::comb(n, Side::Right).unwrap();
            assert_eq!(lower_covers(&top).len(), n - 1);
        }
    }

    #[test]
    fn order_basics() {
        let g = t("((o o) o)");
        let d = t("(o (o o))");
        assert!(leq(&g, &d).unwrap());
        assert!(!leq(&d, &g).unwrap());
        assert!(leq(&Tree::unit(), &g).is_err());
        assert_eq!(interval(&g, &d).unwrap(), vec![g.clone(), d.clone()]);
        assert_eq!(meet(&g, &d).unwrap(), g);
        assert_eq!(join(&g, &d).unwrap(), d);
    }

    #[test]
    fn small_posets() {
        let v2 = PosetView::build(2).unwrap();
        assert_eq!(v2.len(), 2);
        assert_eq!(v2.hasse_edges().len(), 1);
        assert_eq!(v2.mobius_idx(0, 1), -1);

        let v3 = PosetView::build(3).unwrap();
        assert_eq!(v3.len(), 5);
        assert_eq!(v3.hasse_edges().len(), 5);
        for i in 0..5 {
            assert_eq!(v3.lower_covers(i).len() + v3.upper_covers(i).len(), 2);
        }
        assert_eq!(*v3.minimum(), Tree::left_comb(3).unwrap());
        assert_eq!(*v3.maximum(), Tree::right_comb(3).unwrap());
        assert_eq!(v3.interval(v3.minimum(), v3.maximum()).unwrap().len(), 5);
        assert!(PosetView::build(0).is_err());
        assert!(PosetView::build(MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn left_comb_has_no_lower_cover() {
        let v4 = PosetView::build(4).unwrap();
        let bottoms: Vec<&Tree> = (0..v4.len())
            .filter(|&i| v4.lower_covers(i).is_empty())
            .map(|i| v4.element(i))
            .collect();
        assert_eq!(bottoms, vec![&Tree::left_comb(4).unwrap()]);
    }

    #[test]
    fn linear_extension_and_matrices() {
        for n in 1..=5 {
            let v = PosetView::build(n).unwrap();
            for i in 0..v.len() {
                for j in 0..v.len() {
                    if i != j && v.leq_idx(i, j) {
                        assert!(i < j);
                    }
                }
            }
            let zeta = v.zeta_matrix();
            assert!(zeta.is_upper_unitriangular());
            assert!(v.mobius_matrix().mul(&zeta).unwrap().is_identity());
            assert_eq!(zeta.inverse_upper_unitriangular().unwrap(), v.mobius_matrix());
        }
    }

    #[test]
    fn poset_agrees_with_search() {
        let v = PosetView::build(4).unwrap();
        for x in v.elements() {
            for y in v.elements() {
                assert_eq!(v.leq(x, y).unwrap(), leq(x, y).unwrap());
            }
        }
    }

    #[test]
    fn euler_form_examples() {
        let g = DendElem::basis(t("((o o) o)"));
        let d = DendElem::basis(t("(o (o o))"));
        assert_eq!(euler_form(&g, &g).unwrap(), 1);
        assert_eq!(euler_form(&g, &d).unwrap(), -1);
        assert_eq!(euler_form(&d, &g).unwrap(), 0);
        assert_eq!(euler_quadratic(&(&g + &d)).unwrap(), 1);
        assert!(euler_form(&g, &DendElem::basis(Tree::unit())).is_err());
    }

    #[test]
    fn bitset_ops() {
        let mut a = BitSet::new(130);
        a.insert(3);
        a.insert(129);
        let mut b = BitSet::new(130);
        b.insert(129);
        assert!(b.is_subset(&a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 129]);
        assert_eq!(a.intersection(&b).len(), 1);
        b.union_with(&a);
        assert_eq!(b, a);
    }
}
