//! The transforms `θ` and `τ = (-1)^n θ²` on `Dend(n)`, and the `#` product.
//!
//! `θ` is a Coxeter transformation of the incidence algebra of the Tamari
//! order, built from the zeta matrix `C` (`C[s][t] = 1` iff `s ≤ t`). Several
//! sign and transpose conventions are in use; the one that satisfies
//!
//! * `θ(unit) = -unit`,
//! * `θ(x \ y) = -θ(x) * θ(y)`,
//! * `θ(x * y) = -θ(x) / θ(y)`
//!
//! on all basis trees of degree at most 3 is selected once, on first use.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::dendriform::{compose, over_graft, star, under_graft, DendElem};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::tamari::PosetView;
use crate::trees::{enumerate_trees, Tree};

/// Largest degree for which the transforms are built.
pub const MAX_TRANSFORM_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
enum Factor {
    C,
    CInv,
    CT,
    CInvT,
}

impl Factor {
    fn inverse(self) -> Factor {
        match self {
            Factor::C => Factor::CInv,
            Factor::CInv => Factor::C,
            Factor::CT => Factor::CInvT,
            Factor::CInvT => Factor::CT,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Factor::C => "C",
            Factor::CInv => "C^-1",
            Factor::CT => "C^T",
            Factor::CInvT => "C^-T",
        }
    }
}

/// A candidate `θ = sign · A · B` with `A, B` built from the zeta matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Convention {
    sign: i64,
    left: Factor,
    right: Factor,
}

impl Convention {
    fn candidates() -> Vec<Convention> {
        let forms = [
            (Factor::CInvT, Factor::C),
            (Factor::C, Factor::CInvT),
            (Factor::CInv, Factor::CT),
            (Factor::CT, Factor::CInv),
        ];
        [1, -1]
            .into_iter()
            .flat_map(|sign| {
                forms
                    .into_iter()
                    .map(move |(left, right)| Convention { sign, left, right })
            })
            .collect()
    }

    fn inverse(self) -> Convention {
        Convention {
            sign: self.sign,
            left: self.right.inverse(),
            right: self.left.inverse(),
        }
    }

    /// Formula such as `-C·C^-T`.
    pub fn formula(&self) -> String {
        let sign = if self.sign < 0 { "-" } else { "" };
        format!("{sign}{}·{}", self.left.symbol(), self.right.symbol())
    }

    fn matrix(&self, zeta: &Zeta) -> Result<IntMatrix> {
        zeta.get(self.left).mul(zeta.get(self.right))?.scale(self.sign)
    }
}

struct Zeta {
    c: IntMatrix,
    c_inv: IntMatrix,
    c_t: IntMatrix,
    c_inv_t: IntMatrix,
}

impl Zeta {
    fn new(view: &PosetView) -> Zeta {
        let c = view.zeta_matrix();
        let c_inv = view.mobius_matrix();
        Zeta {
            c_t: c.transpose(),
            c_inv_t: c_inv.transpose(),
            c,
            c_inv,
        }
    }

    fn get(&self, f: Factor) -> &IntMatrix {
        match f {
            Factor::C => &self.c,
            Factor::CInv => &self.c_inv,
            Factor::CT => &self.c_t,
            Factor::CInvT => &self.c_inv_t,
        }
    }
}

fn apply_matrix(view: &PosetView, m: &IntMatrix, a: &DendElem) -> Result<DendElem> {
    Ok(view.from_vector(&m.apply(&view.to_vector(a)?)?))
}

fn probe(conv: Convention) -> Result<bool> {
    let mut views = Vec::new();
    let mut mats = Vec::new();
    for n in 1..=3 {
        let view = PosetView::shared(n)?;
        mats.push(conv.matrix(&Zeta::new(&view))?);
        views.push(view);
    }
    let theta = |a: &DendElem| apply_matrix(&views[a.degree() - 1], &mats[a.degree() - 1], a);

    let unit = DendElem::unit();
    if theta(&unit)? != -&unit {
        return Ok(false);
    }
    for p in 1..=2 {
        for q in 1..=3 - p {
            for x in enumerate_trees(p)? {
                for y in enumerate_trees(q)? {
                    let (x, y) = (DendElem::basis(x.clone()), DendElem::basis(y));
                    let (tx, ty) = (theta(&x)?, theta(&y)?);
                    if theta(&under_graft(&x, &y))? != -star(&tx, &ty)? {
                        return Ok(false);
                    }
                    if theta(&star(&x, &y)?)? != -over_graft(&tx, &ty) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The convention for `θ`, determined on first use.
pub fn convention() -> Result<Convention> {
    static CONVENTION: OnceLock<Result<Convention>> = OnceLock::new();
    CONVENTION
        .get_or_init(|| {
            let mut passing = Vec::new();
            for c in Convention::candidates() {
                if probe(c)? {
                    passing.push(c);
                }
            }
            match passing.as_slice() {
                [c] => Ok(*c),
                [] => Err(Error::Inconsistent(
                    "no sign/transpose convention for θ satisfies its defining identities".into(),
                )),
                many => Err(Error::Inconsistent(format!(
                    "{} conventions for θ satisfy its defining identities",
                    many.len()
                ))),
            }
        })
        .clone()
}

/// `θ`, `θ⁻¹` and `τ` on `Dend(n)`, indexed by the element order of the
/// Tamari poset.
pub struct Transforms {
    view: Arc<PosetView>,
    theta: IntMatrix,
    theta_inv: IntMatrix,
    tau: OnceLock<Result<IntMatrix>>,
}

impl Transforms {
    fn build(n: usize) -> Result<Transforms> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > MAX_TRANSFORM_DEGREE {
            return Err(Error::DegreeOutOfRange {
                n,
                max: MAX_TRANSFORM_DEGREE,
            });
        }
        let conv = convention()?;
        let view = PosetView::shared(n)?;
        let zeta = Zeta::new(&view);
        let theta = conv.matrix(&zeta)?;
        let theta_inv = conv.inverse().matrix(&zeta)?;
        Ok(Transforms {
            view,
            theta,
            theta_inv,
            tau: OnceLock::new(),
        })
    }

    /// Cached transforms for degree `n`.
    pub fn shared(n: usize) -> Result<Arc<Transforms>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Transforms>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&n) {
            return Ok(t.clone());
        }
        let t = Arc::new(Transforms::build(n)?);
        Ok(cache.lock().unwrap().entry(n).or_insert(t).clone())
    }

    pub fn degree(&self) -> usize {
        self.view.degree()
    }

    pub fn view(&self) -> &Arc<PosetView> {
        &self.view
    }

    pub fn theta(&self) -> &IntMatrix {
        &self.theta
    }

    pub fn theta_inv(&self) -> &IntMatrix {
        &self.theta_inv
    }

    /// `τ = (-1)^n θ²`.
    pub fn tau(&self) -> Result<&IntMatrix> {
        self.tau
            .get_or_init(|| {
                let sq = self.theta.mul(&self.theta)?;
                if self.degree() % 2 == 1 {
                    sq.neg()
                } else {
                    Ok(sq)
                }
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

pub fn theta_matrix(n: usize) -> Result<IntMatrix> {
    Ok(Transforms::shared(n)?.theta().clone())
}

pub fn theta_inv_matrix(n: usize) -> Result<IntMatrix> {
    Ok(Transforms::shared(n)?.theta_inv().clone())
}

pub fn tau_matrix(n: usize) -> Result<IntMatrix> {
    Transforms::shared(n)?.tau().cloned()
}

pub fn apply_theta(a: &DendElem) -> Result<DendElem> {
    let t = Transforms::shared(a.degree())?;
    apply_matrix(&t.view, &t.theta, a)
}

pub fn apply_theta_inv(a: &DendElem) -> Result<DendElem> {
    let t = Transforms::shared(a.degree())?;
    apply_matrix(&t.view, &t.theta_inv, a)
}

pub fn apply_tau(a: &DendElem) -> Result<DendElem> {
    let t = Transforms::shared(a.degree())?;
    apply_matrix(&t.view, t.tau()?, a)
}

/// `a # b = -θ⁻¹(θ(b) ∘_1 θ(a)) = -θ(θ⁻¹(a) ∘_m θ⁻¹(b))` with `m = deg a`.
///
/// Both expressions are evaluated and must agree.
pub fn diese(a: &DendElem, b: &DendElem) -> Result<DendElem> {
    let m = a.degree();
    let first = -apply_theta_inv(&compose(&apply_theta(b)?, 1, &apply_theta(a)?)?)?;
    let second = -apply_theta(&compose(&apply_theta_inv(a)?, m, &apply_theta_inv(b)?)?)?;
    if first != second {
        return Err(Error::Inconsistent(format!(
            "the two expressions of {a} # {b} differ: {first} vs {second}"
        )));
    }
    Ok(first)
}

/// `x # y` on basis trees.
pub fn diese_trees(x: &Tree, y: &Tree) -> Result<DendElem> {
    diese(&DendElem::basis(x.clone()), &DendElem::basis(y.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noncrossing::NcTable;

    fn b(s: &str) -> DendElem {
        DendElem::basis(Tree::parse(s).unwrap())
    }

    #[test]
    fn convention_is_unique() {
        let c = convention().unwrap();
        assert_eq!(c.formula(), "-C·C^-T");
    }

    #[test]
    fn low_degree_values() {
        let unit = DendElem::unit();
        assert_eq!(apply_theta(&unit).unwrap(), -&unit);
        assert_eq!(apply_tau(&unit).unwrap(), -&unit);
        let (g, d) = (b("((o o) o)"), b("(o (o o))"));
        assert_eq!(apply_theta(&g).unwrap(), d);
        assert_eq!(apply_theta(&d).unwrap(), -&(&g + &d));
        for n in 1..=4 {
            let t = Transforms::shared(n).unwrap();
            assert!(t.theta().mul(t.theta_inv()).unwrap().is_identity());
        }
    }

    #[test]
    fn tau_has_finite_order() {
        for n in 1..=5 {
            let tau = tau_matrix(n).unwrap();
            assert!(tau.pow(n as u32 + 1).unwrap().is_identity(), "n = {n}");
        }
    }

    #[test]
    fn diese_examples() {
        let s2 = DendElem::sum_all(2).unwrap();
        assert_eq!(diese(&s2, &s2).unwrap(), DendElem::sum_all(3).unwrap());
        let u = DendElem::unit();
        for x in enumerate_trees(3).unwrap() {
            let x = DendElem::basis(x);
            assert_eq!(diese(&u, &x).unwrap(), x);
            assert_eq!(diese(&x, &u).unwrap(), x);
        }
        let dg = diese(&b("(o (o o))"), &b("((o o) o)")).unwrap();
        let table = NcTable::shared(3).unwrap();
        assert!(table.trees_with_image(&dg).is_empty());
    }

    #[test]
    fn degree_limits() {
        assert!(Transforms::shared(0).is_err());
        assert!(Transforms::shared(MAX_TRANSFORM_DEGREE + 1).is_err());
    }
}
