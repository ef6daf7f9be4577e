//! The dendriform operad: `Dend(n)` is the free abelian group on trees of
//! degree `n`, with composition maps `compose(x, i, y)`.
//!
//! Compositions are computed by realizing every tree as an operation of the
//! free dendriform algebra. A tree `t = (t_l t_r)` applied to arguments split
//! as `(A | a | B)` evaluates to
//!
//! * `a` when both subtrees are leaves,
//! * `a ≺ t_r(B)` when only the left subtree is a leaf,
//! * `t_l(A) ≻ a` when only the right subtree is a leaf,
//! * `(t_l(A) ≻ a) ≺ t_r(B)` otherwise.
//!
//! The two half products act on labeled trees by
//! `x ≺ y = (x_l, root(x), x_r ⋆ y)` and `x ≻ y = (x ⋆ y_l, root(y), y_r)`,
//! where `⋆ = ≺ + ≻` and an empty side is absorbed. Substituting the labeled
//! copy of `y` for the `i`-th argument of `x` and forgetting labels gives
//! `compose(x, i, y)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tamari::PosetView;
use crate::trees::Tree;

/// A homogeneous integer combination of trees, an element of `Dend(n)`.
///
/// Zero coefficients are never stored. The degree is kept even for the zero
/// element, so that compositions of zero still land in the right component.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DendElem {
    degree: usize,
    terms: BTreeMap<Tree, i64>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

impl DendElem {
    pub fn zero(degree: usize) -> DendElem {
        DendElem {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(t: Tree) -> DendElem {
        let degree = t.degree();
        DendElem {
            degree,
            terms: BTreeMap::from([(t, 1)]),
        }
    }

    pub fn unit() -> DendElem {
        DendElem::basis(Tree::unit())
    }

    /// Builds an element from `(tree, coefficient)` pairs, merging repeated trees.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Tree, i64)>) -> Result<DendElem> {
        let mut out = DendElem::zero(degree);
        for (t, c) in terms {
            if t.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: t.degree(),
                });
            }
            out.add_term(t, c);
        }
        Ok(out)
    }

    pub(crate) fn from_terms_unchecked(degree: usize, terms: impl IntoIterator<Item = (Tree, i64)>) -> DendElem {
        let mut out = DendElem::zero(degree);
        for (t, c) in terms {
            debug_assert_eq!(t.degree(), degree);
            out.add_term(t, c);
        }
        out
    }

    /// Sum of the given trees, each with coefficient one.
    pub fn sum_of(degree: usize, trees: impl IntoIterator<Item = Tree>) -> Result<DendElem> {
        DendElem::from_terms(degree, trees.into_iter().map(|t| (t, 1)))
    }

    /// Sum of all trees of degree `n`.
    pub fn sum_all(n: usize) -> Result<DendElem> {
        let view = PosetView::shared(n)?;
        Ok(DendElem::from_terms_unchecked(
            n,
            view.elements().iter().map(|t| (t.clone(), 1)),
        ))
    }

    fn add_term(&mut self, t: Tree, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(t);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = checked_add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Terms in tree order.
    pub fn terms(&self) -> impl Iterator<Item = (&Tree, i64)> + '_ {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn coeff(&self, t: &Tree) -> i64 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    /// Number of trees with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Tree> + '_ {
        self.terms.keys()
    }

    /// Every coefficient equals one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|&c| c == 1)
    }

    /// The tree itself, when the element is a single tree with coefficient one.
    pub fn as_single_tree(&self) -> Option<&Tree> {
        match (self.terms.len(), self.terms.iter().next()) {
            (1, Some((t, 1))) => Some(t),
            _ => None,
        }
    }

    /// Image under left-right reversal of trees.
    pub fn reverse(&self) -> DendElem {
        DendElem::from_terms_unchecked(self.degree, self.terms().map(|(t, c)| (t.reverse(), c)))
    }

    pub fn try_add(&self, other: &DendElem) -> Result<DendElem> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DendElem) -> Result<DendElem> {
        self.try_add(&-other)
    }

    pub fn scale(&self, k: i64) -> DendElem {
        DendElem::from_terms_unchecked(self.degree, self.terms().map(|(t, c)| (t.clone(), checked_mul(c, k))))
    }
}

impl Add for &DendElem {
    type Output = DendElem;

    /// Panics if the degrees differ; see [`DendElem::try_add`].
    fn add(self, rhs: &DendElem) -> DendElem {
        self.try_add(rhs).expect("adding elements of different degrees")
    }
}

impl Add for DendElem {
    type Output = DendElem;

    fn add(self, rhs: DendElem) -> DendElem {
        &self + &rhs
    }
}

impl Sub for &DendElem {
    type Output = DendElem;

    fn sub(self, rhs: &DendElem) -> DendElem {
        self.try_sub(rhs).expect("subtracting elements of different degrees")
    }
}

impl Sub for DendElem {
    type Output = DendElem;

    fn sub(self, rhs: DendElem) -> DendElem {
        &self - &rhs
    }
}

impl Neg for &DendElem {
    type Output = DendElem;

    fn neg(self) -> DendElem {
        self.scale(-1)
    }
}

impl Neg for DendElem {
    type Output = DendElem;

    fn neg(self) -> DendElem {
        self.scale(-1)
    }
}

impl Mul<i64> for &DendElem {
    type Output = DendElem;

    fn mul(self, k: i64) -> DendElem {
        self.scale(k)
    }
}

impl fmt::Display for DendElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (k, c.unsigned_abs()) {
                (0, 1) if c > 0 => write!(f, "{t}")?,
                (0, 1) => write!(f, "-{t}")?,
                (0, a) if c > 0 => write!(f, "{a}*{t}")?,
                (0, a) => write!(f, "-{a}*{t}")?,
                (_, 1) => write!(f, " {sign} {t}")?,
                (_, a) => write!(f, " {sign} {a}*{t}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DendElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DendElem[{}]({self})", self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    tree: Tree,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct ElemJson {
    degree: usize,
    terms: Vec<TermJson>,
}

impl Serialize for DendElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElemJson {
            degree: self.degree,
            terms: self
                .terms()
                .map(|(t, c)| TermJson {
                    tree: t.clone(),
                    coeff: c,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DendElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<DendElem, D::Error> {
        let raw = ElemJson::deserialize(deserializer)?;
        DendElem::from_terms(raw.degree, raw.terms.into_iter().map(|t| (t.tree, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

/// A planar binary tree whose vertices carry generator labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabeledTree {
    Leaf,
    Node(Box<LabeledTree>, u32, Box<LabeledTree>),
}

/// Integer combination of labeled trees.
pub type LabeledElem = BTreeMap<LabeledTree, i64>;

impl LabeledTree {
    /// The one-vertex tree labeled `label`.
    pub fn vertex(label: u32) -> LabeledTree {
        LabeledTree::Node(Box::new(LabeledTree::Leaf), label, Box::new(LabeledTree::Leaf))
    }

    /// Labels `shape` with `first, first + 1, ...` in infix order.
    pub fn from_shape(shape: &Tree, first: u32) -> LabeledTree {
        fn go(t: &Tree, next: &mut u32) -> LabeledTree {
            match t.children() {
                None => LabeledTree::Leaf,
                Some((l, r)) => {
                    let l = go(l, next);
                    let label = *next;
                    *next += 1;
                    let r = go(r, next);
                    LabeledTree::Node(Box::new(l), label, Box::new(r))
                }
            }
        }
        let mut next = first;
        go(shape, &mut next)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, LabeledTree::Leaf)
    }

    pub fn shape(&self) -> Tree {
        match self {
            LabeledTree::Leaf => Tree::leaf(),
            LabeledTree::Node(l, _, r) => Tree::node(l.shape(), r.shape()),
        }
    }

    /// Labels in infix order.
    pub fn labels(&self) -> Vec<u32> {
        fn go(t: &LabeledTree, out: &mut Vec<u32>) {
            if let LabeledTree::Node(l, a, r) = t {
                go(l, out);
                out.push(*a);
                go(r, out);
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

fn prec_mono(x: &LabeledTree, y: &LabeledTree, out: &mut Vec<LabeledTree>) {
    let LabeledTree::Node(xl, a, xr) = x else {
        unreachable!("left factor of ≺ is nonempty")
    };
    let mut inner = Vec::new();
    star_mono(xr, y, &mut inner);
    out.extend(
        inner
            .into_iter()
            .map(|t| LabeledTree::Node(xl.clone(), *a, Box::new(t))),
    );
}

fn succ_mono(x: &LabeledTree, y: &LabeledTree, out: &mut Vec<LabeledTree>) {
    let LabeledTree::Node(yl, b, yr) = y else {
        unreachable!("right factor of ≻ is nonempty")
    };
    let mut inner = Vec::new();
    star_mono(x, yl, &mut inner);
    out.extend(
        inner
            .into_iter()
            .map(|t| LabeledTree::Node(Box::new(t), *b, yr.clone())),
    );
}

fn star_mono(x: &LabeledTree, y: &LabeledTree, out: &mut Vec<LabeledTree>) {
    match (x.is_leaf(), y.is_leaf()) {
        (true, _) => out.push(y.clone()),
        (_, true) => out.push(x.clone()),
        _ => {
            prec_mono(x, y, out);
            succ_mono(x, y, out);
        }
    }
}

fn bilinear(
    a: &LabeledElem,
    b: &LabeledElem,
    mono: fn(&LabeledTree, &LabeledTree, &mut Vec<LabeledTree>),
) -> LabeledElem {
    let mut out = LabeledElem::new();
    let mut buf = Vec::new();
    for (x, &cx) in a {
        for (y, &cy) in b {
            buf.clear();
            mono(x, y, &mut buf);
            let c = checked_mul(cx, cy);
            for t in buf.drain(..) {
                let e = out.entry(t).or_insert(0);
                *e = checked_add(*e, c);
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Left half product `a ≺ b`.
pub fn prec(a: &LabeledElem, b: &LabeledElem) -> LabeledElem {
    bilinear(a, b, prec_mono)
}

/// Right half product `a ≻ b`.
pub fn succ(a: &LabeledElem, b: &LabeledElem) -> LabeledElem {
    bilinear(a, b, succ_mono)
}

/// Associative product `a ⋆ b = a ≺ b + a ≻ b`.
pub fn dstar(a: &LabeledElem, b: &LabeledElem) -> LabeledElem {
    bilinear(a, b, star_mono)
}

/// Which bracketing to use when both subtrees of the root are nonempty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracketing {
    /// `(t_l(A) ≻ a) ≺ t_r(B)`
    SucceedFirst,
    /// `t_l(A) ≻ (a ≺ t_r(B))`
    PrecedeFirst,
}

/// Evaluates the operation `t` on `args` in the free dendriform algebra.
pub fn eval_operation(t: &Tree, args: &[LabeledElem]) -> Result<LabeledElem> {
    eval_operation_bracketed(t, args, Bracketing::SucceedFirst)
}

pub fn eval_operation_bracketed(t: &Tree, args: &[LabeledElem], bracketing: Bracketing) -> Result<LabeledElem> {
    if args.len() != t.degree() {
        return Err(Error::ArityMismatch {
            expected: t.degree(),
            found: args.len(),
        });
    }
    if args.iter().any(|a| a.is_empty()) {
        return Err(Error::EmptyArgument);
    }
    Ok(eval_rec(t, args, bracketing))
}

fn eval_rec(t: &Tree, args: &[LabeledElem], bracketing: Bracketing) -> LabeledElem {
    let (tl, tr) = t.children().expect("arity matches degree");
    let k = tl.degree();
    let a = &args[k];
    match (tl.is_leaf(), tr.is_leaf()) {
        (true, true) => a.clone(),
        (true, false) => prec(a, &eval_rec(tr, &args[k + 1..], bracketing)),
        (false, true) => succ(&eval_rec(tl, &args[..k], bracketing), a),
        (false, false) => {
            let left = eval_rec(tl, &args[..k], bracketing);
            let right = eval_rec(tr, &args[k + 1..], bracketing);
            match bracketing {
                Bracketing::SucceedFirst => prec(&succ(&left, a), &right),
                Bracketing::PrecedeFirst => succ(&left, &prec(a, &right)),
            }
        }
    }
}

fn single(t: LabeledTree) -> LabeledElem {
    LabeledElem::from([(t, 1)])
}

type ComposeKey = (Tree, usize, Tree);

fn compose_cache() -> &'static RwLock<HashMap<ComposeKey, DendElem>> {
    static CACHE: OnceLock<RwLock<HashMap<ComposeKey, DendElem>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `x ∘_i y` on basis trees.
pub fn compose_trees(x: &Tree, i: usize, y: &Tree) -> Result<DendElem> {
    let (m, n) = (x.degree(), y.degree());
    if m == 0 || n == 0 {
        return Err(Error::ZeroDegree);
    }
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, arity: m });
    }
    let key = (x.clone(), i, y.clone());
    if let Some(hit) = compose_cache().read().unwrap().get(&key) {
        return Ok(hit.clone());
    }

    let inner_args: Vec<LabeledElem> = (0..n as u32)
        .map(|k| single(LabeledTree::vertex(i as u32 + k)))
        .collect();
    let inner = eval_operation(y, &inner_args)?;
    let args: Vec<LabeledElem> = (1..=m as u32)
        .map(|j| match (j as usize).cmp(&i) {
            std::cmp::Ordering::Less => single(LabeledTree::vertex(j)),
            std::cmp::Ordering::Equal => inner.clone(),
            std::cmp::Ordering::Greater => single(LabeledTree::vertex(j + n as u32 - 1)),
        })
        .collect();
    let evaluated = eval_operation(x, &args)?;

    let total = (m + n - 1) as u32;
    let expected: Vec<u32> = (1..=total).collect();
    let mut out = DendElem::zero(m + n - 1);
    for (lt, c) in evaluated {
        if lt.labels() != expected {
            return Err(Error::Inconsistent(format!(
                "labels out of infix order in {x} ∘_{i} {y}"
            )));
        }
        out.add_term(lt.shape(), c);
    }
    compose_cache().write().unwrap().insert(key, out.clone());
    Ok(out)
}

/// Operad composition `x ∘_i y`, extended bilinearly.
pub fn compose(x: &DendElem, i: usize, y: &DendElem) -> Result<DendElem> {
    let (m, n) = (x.degree(), y.degree());
    if m == 0 || n == 0 {
        return Err(Error::ZeroDegree);
    }
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, arity: m });
    }
    let mut out = DendElem::zero(m + n - 1);
    for (tx, cx) in x.terms() {
        for (ty, cy) in y.terms() {
            let c = checked_mul(cx, cy);
            for (t, d) in compose_trees(tx, i, ty)?.terms() {
                out.add_term(t.clone(), checked_mul(c, d));
            }
        }
    }
    Ok(out)
}

fn degree_two_sum() -> DendElem {
    DendElem::from_terms_unchecked(2, [(Tree::left_comb(2).unwrap(), 1), (Tree::right_comb(2).unwrap(), 1)])
}

/// Associative product `a * b = ((gauche + droite) ∘_2 b) ∘_1 a`.
pub fn star(a: &DendElem, b: &DendElem) -> Result<DendElem> {
    compose(&compose(&degree_two_sum(), 2, b)?, 1, a)
}

/// `x * y` as the sum of the Tamari interval `[x / y, x \ y]`.
pub fn star_interval(x: &Tree, y: &Tree) -> Result<DendElem> {
    let lo = x.over(y);
    let hi = x.under(y);
    let n = lo.degree();
    let view = PosetView::shared(n)?;
    DendElem::sum_of(n, view.interval(&lo, &hi)?)
}

/// Over product through the operad: `a / b = (b ∘_1 gauche) ∘_1 a`.
pub fn over_elem(a: &DendElem, b: &DendElem) -> Result<DendElem> {
    let gauche = DendElem::basis(Tree::left_comb(2)?);
    compose(&compose(b, 1, &gauche)?, 1, a)
}

/// Under product through the operad: `a \ b = (a ∘_m droite) ∘_{m+1} b`.
pub fn under_elem(a: &DendElem, b: &DendElem) -> Result<DendElem> {
    let m = a.degree();
    let droite = DendElem::basis(Tree::right_comb(2)?);
    compose(&compose(a, m, &droite)?, m + 1, b)
}

/// Over product by grafting, extended bilinearly.
pub fn over_graft(a: &DendElem, b: &DendElem) -> DendElem {
    let mut out = DendElem::zero(a.degree() + b.degree());
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            out.add_term(x.over(y), checked_mul(cx, cy));
        }
    }
    out
}

/// Under product by grafting, extended bilinearly.
pub fn under_graft(a: &DendElem, b: &DendElem) -> DendElem {
    let mut out = DendElem::zero(a.degree() + b.degree());
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            out.add_term(x.under(y), checked_mul(cx, cy));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::enumerate_trees;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    fn b(s: &str) -> DendElem {
        DendElem::basis(t(s))
    }

    fn vertices(n: usize) -> Vec<LabeledElem> {
        (1..=n as u32).map(|k| single(LabeledTree::vertex(k))).collect()
    }

    #[test]
    fn element_arithmetic() {
        let g = b("((o o) o)");
        let d = b("(o (o o))");
        let s = &g + &d;
        assert_eq!(s.len(), 2);
        assert!((&s - &s).is_zero());
        assert_eq!((&s * 3).coeff(&t("((o o) o)")), 3);
        assert_eq!(s.reverse(), s);
        assert!(g.try_add(&DendElem::unit()).is_err());
        assert_eq!(format!("{}", &g - &(&d * 2)), "((o o) o) - 2*(o (o o))");
    }

    #[test]
    fn json_round_trip() {
        let e = &b("((o o) o)") + &(&b("(o (o o))") * -2);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"degree":2,"terms":[{"tree":"((o o) o)","coeff":1},{"tree":"(o (o o))","coeff":-2}]}"#
        );
        let back: DendElem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        let bad = r#"{"degree":3,"terms":[{"tree":"((o o) o)","coeff":1}]}"#;
        assert!(serde_json::from_str::<DendElem>(bad).is_err());
    }

    #[test]
    fn unit_arguments_reproduce_the_tree() {
        for n in 1..=5 {
            for x in enumerate_trees(n).unwrap() {
                let r = eval_operation(&x, &vertices(n)).unwrap();
                assert_eq!(r, single(LabeledTree::from_shape(&x, 1)));
            }
        }
    }

    #[test]
    fn degree_two_operations() {
        let [a, bb] = [LabeledTree::vertex(1), LabeledTree::vertex(2)];
        let (sa, sb) = (single(a), single(bb));
        let g = eval_operation(&t("((o o) o)"), &vertices(2)).unwrap();
        assert_eq!(g, succ(&sa, &sb));
        let d = eval_operation(&t("(o (o o))"), &vertices(2)).unwrap();
        assert_eq!(d, prec(&sa, &sb));
    }

    #[test]
    fn mixed_associativity_on_vertices() {
        let v = vertices(3);
        let lhs = prec(&succ(&v[0], &v[1]), &v[2]);
        let rhs = succ(&v[0], &prec(&v[1], &v[2]));
        assert_eq!(lhs, rhs);
        // the other two dendriform axioms
        assert_eq!(prec(&prec(&v[0], &v[1]), &v[2]), prec(&v[0], &dstar(&v[1], &v[2])));
        assert_eq!(succ(&dstar(&v[0], &v[1]), &v[2]), succ(&v[0], &succ(&v[1], &v[2])));
    }

    #[test]
    fn both_bracketings_agree() {
        for n in 1..=5 {
            for x in enumerate_trees(n).unwrap() {
                let args = vertices(n);
                assert_eq!(
                    eval_operation_bracketed(&x, &args, Bracketing::SucceedFirst).unwrap(),
                    eval_operation_bracketed(&x, &args, Bracketing::PrecedeFirst).unwrap()
                );
            }
        }
    }

    #[test]
    fn eval_errors() {
        assert_eq!(
            eval_operation(&Tree::unit(), &vertices(2)),
            Err(Error::ArityMismatch { expected: 1, found: 2 })
        );
        assert_eq!(
            eval_operation(&Tree::unit(), &[LabeledElem::new()]),
            Err(Error::EmptyArgument)
        );
    }

    #[test]
    fn unit_axioms() {
        let u = DendElem::unit();
        for n in 1..=4 {
            for x in enumerate_trees(n).unwrap() {
                let x = DendElem::basis(x);
                assert_eq!(compose(&u, 1, &x).unwrap(), x);
                for i in 1..=n {
                    assert_eq!(compose(&x, i, &u).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn compose_index_errors() {
        let g = b("((o o) o)");
        assert_eq!(compose(&g, 3, &g), Err(Error::IndexOutOfRange { index: 3, arity: 2 }));
        assert!(compose(&g, 0, &g).is_err());
    }

    #[test]
    fn star_examples() {
        let u = DendElem::unit();
        let expected = &b("((o o) o)") + &b("(o (o o))");
        assert_eq!(star(&u, &u).unwrap(), expected);
        assert_eq!(star_interval(&Tree::unit(), &Tree::unit()).unwrap(), expected);
        let g = t("((o o) o)");
        let lo = g.over(&Tree::unit());
        let hi = g.under(&Tree::unit());
        assert_eq!(
            star_interval(&g, &Tree::unit()).unwrap(),
            DendElem::sum_of(3, crate::tamari::interval(&lo, &hi).unwrap()).unwrap()
        );
    }

    #[test]
    fn over_under_through_operad() {
        let u = DendElem::unit();
        assert_eq!(over_elem(&u, &u).unwrap(), b("((o o) o)"));
        assert_eq!(under_elem(&u, &u).unwrap(), b("(o (o o))"));
    }

    #[test]
    fn compose_is_label_ordered_and_multiplicity_free() {
        for m in 1..=3 {
            for n in 1..=3 {
                for x in enumerate_trees(m).unwrap() {
                    for y in enumerate_trees(n).unwrap() {
                        for i in 1..=m {
                            let c = compose_trees(&x, i, &y).unwrap();
                            assert!(!c.is_zero());
                            assert!(c.is_multiplicity_free());
                        }
                    }
                }
            }
        }
    }
}
