//! Weak bitorsors: two-sided `M`-sets whose left action is read off from
//! `α`, and when they are genuine bitorsors.

use serde::Serialize;

use super::{check_right_torsor, left_action, make_bitorsor, AlphaCondition, Bitorsor, BitorsorError};
use crate::xmod::EquivariantCrossedModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakLaw {
    /// `1·p = p` and `(mn)·p = m·(n·p)`
    LeftAction,
    /// `(mp)n = m(pn)`
    Bimodule,
    /// `ᵍ(mp) = ᵍm·ᵍp`
    GLeft,
    /// `mp = p·^ξ(p)m`
    Xi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakBitorsor {
    pub size: usize,
    pub right: Vec<usize>,
    pub g_act: Vec<usize>,
    pub alpha: Vec<usize>,
    /// `m·p` at `m·|P| + p`
    pub left: Vec<usize>,
}

fn weak(law: WeakLaw, a: usize, b: usize, c: usize) -> BitorsorError {
    BitorsorError::WeakViolation { law, a, b, c }
}

/// Validates a weak bitorsor; tables are indexed `[p][m]`, `[x][p]`, `[p]`
/// and `[m][p]`.
pub fn make_weak_bitorsor(
    right_act: Vec<Vec<usize>>,
    g_act: Vec<Vec<usize>>,
    alpha: Vec<usize>,
    left_act: Vec<Vec<usize>>,
    exm: &EquivariantCrossedModule,
) -> Result<WeakBitorsor, BitorsorError> {
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    let size = right_act.len();
    let n = m.order();
    if right_act.iter().any(|row| row.len() != n) {
        return Err(BitorsorError::Shape { table: "right_act" });
    }
    let right = right_act.concat();
    check_right_torsor(size, &right, exm)?;
    if g_act.len() != g.order()
        || g_act
            .iter()
            .any(|row| row.len() != size || row.iter().any(|&q| q >= size))
    {
        return Err(BitorsorError::Shape { table: "g_act" });
    }
    if alpha.len() != size || alpha.iter().any(|&t| t >= l.order()) {
        return Err(BitorsorError::Shape { table: "alpha" });
    }
    if left_act.len() != n
        || left_act
            .iter()
            .any(|row| row.len() != size || row.iter().any(|&q| q >= size))
    {
        return Err(BitorsorError::Shape { table: "left_act" });
    }
    let r = |p: usize, a: usize| right[p * n + a];
    let lf = |a: usize, p: usize| left_act[a][p];
    for p in 0..size {
        if g_act[0][p] != p {
            return Err(BitorsorError::GCompatViolation { x: 0, p, m: 0 });
        }
        if lf(0, p) != p {
            return Err(weak(WeakLaw::LeftAction, 0, 0, p));
        }
        for a in m.elements() {
            for b in m.elements() {
                if lf(m.mul(a, b), p) != lf(a, lf(b, p)) {
                    return Err(weak(WeakLaw::LeftAction, a, b, p));
                }
                if r(lf(a, p), b) != lf(a, r(p, b)) {
                    return Err(weak(WeakLaw::Bimodule, a, p, b));
                }
            }
        }
        for x in g.elements() {
            for y in g.elements() {
                if g_act[g.mul(x, y)][p] != g_act[x][g_act[y][p]] {
                    return Err(BitorsorError::GCompatViolation { x, p, m: 0 });
                }
            }
            for a in m.elements() {
                if g_act[x][r(p, a)] != r(g_act[x][p], exm.g_m(x, a)) {
                    return Err(BitorsorError::GCompatViolation { x, p, m: a });
                }
                if g_act[x][lf(a, p)] != lf(exm.g_m(x, a), g_act[x][p]) {
                    return Err(weak(WeakLaw::GLeft, x, a, p));
                }
            }
        }
        let xi = l.inv(alpha[p]);
        for a in m.elements() {
            if lf(a, p) != r(p, exm.base().act(xi, a)) {
                return Err(weak(WeakLaw::Xi, a, p, 0));
            }
        }
    }
    Ok(WeakBitorsor {
        size,
        right,
        g_act: g_act.concat(),
        alpha,
        left: left_act.concat(),
    })
}

impl WeakBitorsor {
    /// A bitorsor with its derived left action.
    pub fn from_bitorsor(b: &Bitorsor, exm: &EquivariantCrossedModule) -> Self {
        let left = left_action(b, exm);
        let rows = |t: &[usize], w: usize| t.chunks(w).map(<[usize]>::to_vec).collect::<Vec<_>>();
        let n = exm.m().order();
        make_weak_bitorsor(
            rows(&b.right, n),
            rows(&b.g_act, b.size),
            b.alpha.clone(),
            rows(&left, b.size),
            exm,
        )
        .expect("a bitorsor is a weak bitorsor")
    }
}

/// Checks both `α` conditions, `ξ(ˣp) = ˣξ(p)` first and then
/// `ξ(p) = ∂(n)·ξ(pn)`. Over a faithful crossed module they are asserted;
/// otherwise a failure is reported as `NotPromotable`.
pub fn promote_weak(w: &WeakBitorsor, exm: &EquivariantCrossedModule) -> Result<Bitorsor, BitorsorError> {
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    let n = m.order();
    let xi = |p: usize| l.inv(w.alpha[p]);
    let faithful = exm.base().is_faithful();
    let fail = |condition, p, witness| {
        assert!(
            !faithful,
            "a weak bitorsor over a faithful crossed module is a bitorsor"
        );
        Err(BitorsorError::NotPromotable { condition, p, witness })
    };
    for p in 0..w.size {
        for x in g.elements() {
            if xi(w.g_act[x * w.size + p]) != exm.g_l(x, xi(p)) {
                return fail(AlphaCondition::I, p, x);
            }
        }
    }
    for p in 0..w.size {
        for a in m.elements() {
            if xi(p) != l.mul(exm.base().d(a), xi(w.right[p * n + a])) {
                return fail(AlphaCondition::Ii, p, a);
            }
        }
    }
    let rows = |t: &[usize], width: usize| t.chunks(width).map(<[usize]>::to_vec).collect::<Vec<_>>();
    let b =
        make_bitorsor(rows(&w.right, n), rows(&w.g_act, w.size), w.alpha.clone(), exm).expect("both α conditions hold");
    assert_eq!(left_action(&b, exm), w.left, "the left action is the derived one");
    Ok(b)
}
