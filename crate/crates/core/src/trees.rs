//! Planar binary trees.
//!
//! A tree is either a leaf or a pair of trees. The degree of a tree is its
//! number of internal vertices, so the trees of degree `n` have `n + 1` leaves.
//! Trees are immutable and share subtrees through reference counting, which
//! makes cloning cheap and lets them serve as map keys.
//!
//! The canonical text form follows the grammar `T ::= "o" | "(" T " " T ")"`,
//! where `o` is a leaf. The total order on trees ([`Ord`]) is the lexicographic
//! order of these strings, computed structurally.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree accepted by the enumeration routines.
pub const MAX_DEGREE: usize = 9;

#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    left: Tree,
    right: Tree,
    degree: usize,
}

/// A planar binary tree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Tree(Option<Arc<Node>>);

/// Which extreme of the Tamari order a comb sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Result of [`Tree::decompose_basic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicDecomposition {
    /// `x = over(y, z)` with both factors of positive degree.
    Over(Tree, Tree),
    /// `x = under(unit, z)`.
    UnderUnit(Tree),
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree(None)
    }

    pub fn node(left: Tree, right: Tree) -> Tree {
        let degree = left.degree() + right.degree() + 1;
        Tree(Some(Arc::new(Node { left, right, degree })))
    }

    /// The one-vertex tree, unit of the operad.
    pub fn unit() -> Tree {
        Tree::node(Tree::leaf(), Tree::leaf())
    }

    pub fn is_leaf(&self) -> bool {
        self.0.is_none()
    }

    pub fn degree(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.degree)
    }

    /// Left and right subtrees of the root, or `None` for a leaf.
    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        self.0.as_ref().map(|n| (&n.left, &n.right))
    }

    pub fn left(&self) -> Option<&Tree> {
        self.children().map(|(l, _)| l)
    }

    pub fn right(&self) -> Option<&Tree> {
        self.children().map(|(_, r)| r)
    }

    /// Number of leaves, always `degree + 1`.
    pub fn leaf_count(&self) -> usize {
        match self.children() {
            None => 1,
            Some((l, r)) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Grafts the root of `self` onto the leftmost leaf of `other`.
    pub fn over(&self, other: &Tree) -> Tree {
        match other.children() {
            None => self.clone(),
            Some((l, r)) => Tree::node(self.over(l), r.clone()),
        }
    }

    /// Grafts the root of `other` onto the rightmost leaf of `self`.
    pub fn under(&self, other: &Tree) -> Tree {
        match self.children() {
            None => other.clone(),
            Some((l, r)) => Tree::node(l.clone(), r.under(other)),
        }
    }

    /// Left-right mirror image.
    pub fn reverse(&self) -> Tree {
        match self.children() {
            None => Tree::leaf(),
            Some((l, r)) => Tree::node(r.reverse(), l.reverse()),
        }
    }

    /// Left comb (minimum of the Tamari order) or right comb (maximum).
    pub fn comb(n: usize, side: Side) -> Result<Tree> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut t = Tree::unit();
        for _ in 1..n {
            t = match side {
                Side::Left => Tree::node(t, Tree::leaf()),
                Side::Right => Tree::node(Tree::leaf(), t),
            };
        }
        Ok(t)
    }

    pub fn left_comb(n: usize) -> Result<Tree> {
        Tree::comb(n, Side::Left)
    }

    pub fn right_comb(n: usize) -> Result<Tree> {
        Tree::comb(n, Side::Right)
    }

    /// Writes a tree of degree at least 2 either as an over product of two
    /// nonempty trees or as `unit` under a tree.
    ///
    /// The first form is used exactly when the root has a vertex on its left.
    pub fn decompose_basic(&self) -> Result<BasicDecomposition> {
        if self.degree() < 2 {
            return Err(Error::DegreeOutOfRange {
                n: self.degree(),
                max: usize::MAX,
            });
        }
        let (l, r) = self.children().expect("degree >= 2");
        if l.is_leaf() {
            Ok(BasicDecomposition::UnderUnit(r.clone()))
        } else {
            Ok(BasicDecomposition::Over(l.clone(), Tree::node(Tree::leaf(), r.clone())))
        }
    }

    /// Parses the canonical text form.
    pub fn parse(s: &str) -> Result<Tree> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let t = parse_tree(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse {
                what: "tree",
                position: pos,
                reason: "trailing input".into(),
            });
        }
        Ok(t)
    }

    fn write_to(&self, out: &mut String) {
        match self.children() {
            None => out.push('o'),
            Some((l, r)) => {
                out.push('(');
                l.write_to(out);
                out.push(' ');
                r.write_to(out);
                out.push(')');
            }
        }
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<Tree> {
    let err = |pos: usize, reason: &str| Error::Parse {
        what: "tree",
        position: pos,
        reason: reason.into(),
    };
    match bytes.get(*pos) {
        Some(b'o') => {
            *pos += 1;
            Ok(Tree::leaf())
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_tree(bytes, pos)?;
            if bytes.get(*pos) != Some(&b' ') {
                return Err(err(*pos, "expected a single space"));
            }
            *pos += 1;
            let r = parse_tree(bytes, pos)?;
            if bytes.get(*pos) != Some(&b')') {
                return Err(err(*pos, "expected `)`"));
            }
            *pos += 1;
            Ok(Tree::node(l, r))
        }
        Some(_) => Err(err(*pos, "expected `o` or `(`")),
        None => Err(err(*pos, "unexpected end of input")),
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(4 * self.degree() + 1);
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({self})")
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        Tree::parse(s)
    }
}

// Canonical texts are prefix-free, so comparing the strings of two nodes
// reduces to comparing left subtrees, then right subtrees. '(' sorts before 'o'.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.children(), other.children()) {
            (None, None) => Ordering::Equal,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some((l1, r1)), Some((l2, r2))) => {
                if Arc::ptr_eq(self.0.as_ref().unwrap(), other.0.as_ref().unwrap()) {
                    return Ordering::Equal;
                }
                l1.cmp(l2).then_with(|| r1.cmp(r2))
            }
        }
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Tree, D::Error> {
        let s = String::deserialize(deserializer)?;
        Tree::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> u64 {
    // c_{k+1} = c_k * 2(2k+1) / (k+2)
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

fn all_trees(n: usize) -> Vec<Tree> {
    if n == 0 {
        return vec![Tree::leaf()];
    }
    let mut out = Vec::new();
    for k in 0..n {
        let lefts = all_trees(k);
        let rights = all_trees(n - 1 - k);
        for l in &lefts {
            for r in &rights {
                out.push(Tree::node(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// All trees of degree `n`, sorted by canonical text.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange { n, max: MAX_DEGREE });
    }
    let mut trees = all_trees(n);
    trees.sort();
    Ok(trees)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    fn gauche() -> Tree {
        t("((o o) o)")
    }

    fn droite() -> Tree {
        t("(o (o o))")
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_trees(1).unwrap(), vec![Tree::unit()]);
        assert_eq!(enumerate_trees(2).unwrap(), vec![gauche(), droite()]);
        assert_eq!(enumerate_trees(5).unwrap().len(), 42);
        assert_eq!(enumerate_trees(0), Err(Error::ZeroDegree));
        assert!(enumerate_trees(MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn catalan_counts_and_order() {
        for n in 1..=8 {
            let trees = enumerate_trees(n).unwrap();
            assert_eq!(trees.len() as u64, catalan(n));
            let texts: Vec<String> = trees.iter().map(|t| t.to_string()).collect();
            let mut sorted = texts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(texts, sorted, "order must be lexicographic on text");
            assert!(trees.iter().all(|t| t.degree() == n && t.leaf_count() == n + 1));
        }
    }

    #[test]
    fn grafting_examples() {
        let u = Tree::unit();
        assert_eq!(u.over(&u), gauche());
        assert_eq!(u.under(&u), droite());
        assert_eq!(gauche().reverse(), droite());
        // reverse(over(gauche, droite)) grafted by hand
        let x = gauche().over(&droite());
        assert_eq!(x, t("(((o o) o) (o o))"));
        assert_eq!(x.reverse(), gauche().under(&droite()));
        assert_eq!(gauche().under(&droite()), t("((o o) (o (o o)))"));
    }

    #[test]
    fn combs() {
        assert_eq!(Tree::left_comb(2).unwrap(), gauche());
        assert_eq!(Tree::right_comb(2).unwrap(), droite());
        assert_eq!(Tree::left_comb(3).unwrap(), t("(((o o) o) o)"));
        assert_eq!(Tree::comb(0, Side::Left), Err(Error::ZeroDegree));
    }

    #[test]
    fn basic_decomposition() {
        assert_eq!(
            gauche().decompose_basic().unwrap(),
            BasicDecomposition::Over(Tree::unit(), Tree::unit())
        );
        assert_eq!(
            droite().decompose_basic().unwrap(),
            BasicDecomposition::UnderUnit(Tree::unit())
        );
        assert!(Tree::unit().decompose_basic().is_err());
        for n in 3..=6 {
            for x in enumerate_trees(n).unwrap() {
                let back = match x.decompose_basic().unwrap() {
                    BasicDecomposition::Over(y, z) => {
                        assert!(y.degree() > 0 && z.degree() > 0);
                        y.over(&z)
                    }
                    BasicDecomposition::UnderUnit(z) => Tree::unit().under(&z),
                };
                assert_eq!(back, x);
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!(Tree::parse("").is_err());
        assert!(Tree::parse("(o  o)").is_err());
        assert!(Tree::parse("(o o").is_err());
        assert!(Tree::parse("(o o)x").is_err());
        assert_eq!(Tree::parse("o").unwrap(), Tree::leaf());
    }

    #[test]
    fn serde_uses_text_form() {
        let json = serde_json::to_string(&gauche()).unwrap();
        assert_eq!(json, "\"((o o) o)\"");
        let back: Tree = serde_json::from_str(&json).unwrap();
        assert_eq!(back, gauche());
    }
}
