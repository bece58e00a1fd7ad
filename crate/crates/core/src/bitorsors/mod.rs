//! `(M → L)`-bitorsors and their classification by `H¹`.
//!
//! A bitorsor is a finite right `M`-torsor `P` with a compatible left
//! `G`-action and a map `α: P → L`. Tables are flat: `p·m` at `p·|M| + m`,
//! `ˣp` at `x·|P| + p`.

mod obstruction;
mod weak;

pub use obstruction::{obstruction, obstruction_all, ObstructionReport};
pub use weak::{make_weak_bitorsor, promote_weak, WeakBitorsor, WeakLaw};

use serde::Serialize;
use thiserror::Error;

use crate::bouquets::BouquetError;
use crate::cohomology::{
    check_cocycle1, enumerate_z1, h1_act, h1_classes, ClassSet, Cocycle1, CocycleViolation, CohomologyError,
};
use crate::extensions::ExtensionError;
use crate::search::{Budget, BudgetExceeded, DisjointSets};
use crate::xmod::{CrossedExtensionParts, EquivariantCrossedModule};

/// Which condition on `α` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaCondition {
    /// `α(ˣp) = ˣα(p)`
    I,
    /// `α(pm) = α(p)·∂(m)`
    Ii,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BitorsorError {
    #[error("table {table} has the wrong shape or an entry out of range")]
    Shape { table: &'static str },
    /// The right `M`-action fails a law, or some `m ↦ pm` is not a bijection
    /// (`p·m = p·n` for `m ≠ n`).
    #[error("right action is not free and transitive at p = {p} (m = {m}, n = {n})")]
    NotFreeTransitive { p: usize, m: usize, n: usize },
    /// `G` does not act, or `ˣ(pm) ≠ ˣp·ˣm`.
    #[error("G-action incompatible at x = {x}, p = {p}, m = {m}")]
    GCompatViolation { x: usize, p: usize, m: usize },
    /// `witness` is `x` for condition i and `m` for condition ii.
    #[error("α fails condition {condition:?} at p = {p}, witness {witness}")]
    AlphaViolation {
        condition: AlphaCondition,
        p: usize,
        witness: usize,
    },
    #[error("not a degree-1 cocycle: {violation:?}")]
    NotACocycle { violation: CocycleViolation },
    #[error("weak bitorsor law {law:?} fails at ({a}, {b}, {c})")]
    WeakViolation { law: WeakLaw, a: usize, b: usize, c: usize },
    #[error("weak bitorsor does not promote: condition {condition:?} fails at p = {p}, witness {witness}")]
    NotPromotable {
        condition: AlphaCondition,
        p: usize,
        witness: usize,
    },
    #[error("{a} is not fixed by G")]
    NotFixedPoint { a: usize },
    #[error(transparent)]
    BudgetExceeded(#[from] BudgetExceeded),
    #[error(transparent)]
    #[serde(untagged)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    #[serde(untagged)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    #[serde(untagged)]
    Bouquet(#[from] BouquetError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bitorsor {
    pub size: usize,
    pub right: Vec<usize>,
    pub g_act: Vec<usize>,
    pub alpha: Vec<usize>,
    #[serde(skip)]
    m_order: usize,
    #[serde(skip)]
    divide: Vec<usize>,
}

impl Bitorsor {
    pub fn act(&self, p: usize, m: usize) -> usize {
        self.right[p * self.m_order + m]
    }

    pub fn g(&self, x: usize, p: usize) -> usize {
        self.g_act[x * self.size + p]
    }

    /// `[p \ q]`: the unique `m` with `q = p·m`.
    pub fn divide(&self, p: usize, q: usize) -> usize {
        self.divide[p * self.size + q]
    }

    /// `ξ(p) = α(p)⁻¹`
    pub fn xi(&self, exm: &EquivariantCrossedModule, p: usize) -> usize {
        exm.l().inv(self.alpha[p])
    }
}

fn check_right_torsor(
    size: usize,
    right: &[usize],
    exm: &EquivariantCrossedModule,
) -> Result<Vec<usize>, BitorsorError> {
    let m = exm.m();
    let n = m.order();
    if right.len() != size * n || right.iter().any(|&q| q >= size) {
        return Err(BitorsorError::Shape { table: "right_act" });
    }
    for p in 0..size {
        if right[p * n] != p {
            return Err(BitorsorError::NotFreeTransitive { p, m: 0, n: 0 });
        }
        for a in m.elements() {
            for b in m.elements() {
                if right[right[p * n + a] * n + b] != right[p * n + m.mul(a, b)] {
                    return Err(BitorsorError::NotFreeTransitive { p, m: a, n: b });
                }
            }
        }
    }
    let mut divide = vec![usize::MAX; size * size];
    for p in 0..size {
        for a in m.elements() {
            let q = right[p * n + a];
            if divide[p * size + q] != usize::MAX {
                return Err(BitorsorError::NotFreeTransitive {
                    p,
                    m: divide[p * size + q],
                    n: a,
                });
            }
            divide[p * size + q] = a;
        }
        if size != n {
            return Err(BitorsorError::NotFreeTransitive { p, m: 0, n: 0 });
        }
    }
    for p in 0..size {
        for q in 0..size {
            assert_eq!(right[p * n + divide[p * size + q]], q, "q = p[p \\ q]");
        }
    }
    Ok(divide)
}

/// Validates an `(M → L)`-bitorsor; tables are indexed `[p][m]`, `[x][p]`
/// and `[p]`.
pub fn make_bitorsor(
    right_act: Vec<Vec<usize>>,
    g_act: Vec<Vec<usize>>,
    alpha: Vec<usize>,
    exm: &EquivariantCrossedModule,
) -> Result<Bitorsor, BitorsorError> {
    let size = right_act.len();
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    if right_act.iter().any(|row| row.len() != m.order()) {
        return Err(BitorsorError::Shape { table: "right_act" });
    }
    let right = right_act.concat();
    let divide = check_right_torsor(size, &right, exm)?;
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
    let n = m.order();
    for p in 0..size {
        if g_act[0][p] != p {
            return Err(BitorsorError::GCompatViolation { x: 0, p, m: 0 });
        }
        for x in g.elements() {
            for y in g.elements() {
                if g_act[g.mul(x, y)][p] != g_act[x][g_act[y][p]] {
                    return Err(BitorsorError::GCompatViolation { x, p, m: 0 });
                }
            }
            for a in m.elements() {
                if g_act[x][right[p * n + a]] != right[g_act[x][p] * n + exm.g_m(x, a)] {
                    return Err(BitorsorError::GCompatViolation { x, p, m: a });
                }
            }
        }
    }
    for p in 0..size {
        for x in g.elements() {
            if alpha[g_act[x][p]] != exm.g_l(x, alpha[p]) {
                return Err(BitorsorError::AlphaViolation {
                    condition: AlphaCondition::I,
                    p,
                    witness: x,
                });
            }
        }
    }
    for p in 0..size {
        for a in m.elements() {
            if alpha[right[p * n + a]] != l.mul(alpha[p], exm.base().d(a)) {
                return Err(BitorsorError::AlphaViolation {
                    condition: AlphaCondition::Ii,
                    p,
                    witness: a,
                });
            }
        }
    }
    for p in 0..size {
        for q in 0..size {
            assert_eq!(
                l.mul(alpha[p], exm.base().d(divide[p * size + q])),
                alpha[q],
                "α(p)·∂([p\\q]) = α(q)"
            );
        }
    }
    Ok(Bitorsor {
        size,
        right,
        g_act: g_act.concat(),
        alpha,
        m_order: n,
        divide,
    })
}

/// `M` acting on itself by right translation, with the given `G`-action
/// and `α = ∂`.
pub fn trivial_bitorsor(exm: &EquivariantCrossedModule) -> Bitorsor {
    cocycle_to_bitorsor(
        &Cocycle1 {
            f: vec![0; exm.g().order()],
            tau: 0,
        },
        exm,
    )
    .expect("trivial cocycle")
}

fn extract(b: &Bitorsor, p0: usize, exm: &EquivariantCrossedModule) -> Cocycle1 {
    Cocycle1 {
        f: exm.g().elements().map(|x| b.divide(p0, b.g(x, p0))).collect(),
        tau: exm.l().inv(b.alpha[p0]),
    }
}

/// `f(x) = [p₀ \ ˣp₀]` and `τ = α(p₀)⁻¹`.
///
/// The result is asserted to be a cocycle, and the cocycle of every other
/// base point `p` is asserted to be carried to it by `m = [p₀ \ p]`.
pub fn bitorsor_to_cocycle(b: &Bitorsor, p0: usize, exm: &EquivariantCrossedModule) -> Cocycle1 {
    let c = extract(b, p0, exm);
    check_cocycle1(exm, &c).expect("a bitorsor yields a degree-1 cocycle");
    for p in 0..b.size {
        let other = extract(b, p, exm);
        assert_eq!(
            h1_act(exm, b.divide(p0, p), &other),
            c,
            "base point change is a coboundary"
        );
    }
    c
}

/// `P = M` with right multiplication, `ˣ·m = f(x)·ˣm` and `α(m) = τ⁻¹·∂(m)`.
pub fn cocycle_to_bitorsor(c: &Cocycle1, exm: &EquivariantCrossedModule) -> Result<Bitorsor, BitorsorError> {
    check_cocycle1(exm, c).map_err(|violation| BitorsorError::NotACocycle { violation })?;
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    let right = m
        .elements()
        .map(|p| m.elements().map(|a| m.mul(p, a)).collect())
        .collect();
    let g_act = g
        .elements()
        .map(|x| m.elements().map(|p| m.mul(c.f[x], exm.g_m(x, p))).collect())
        .collect();
    let alpha = m.elements().map(|p| l.mul(l.inv(c.tau), exm.base().d(p))).collect();
    Ok(make_bitorsor(right, g_act, alpha, exm).expect("the cocycle bitorsor satisfies both α conditions"))
}

/// A morphism `P → P'` respecting `G`, `M` and `α`, if one exists.
///
/// Such a map is fixed by the image `q` of the base point `0`:
/// `φ(p) = q·[0 \ p]`, so only `|P'|` candidates are tried.
pub fn bitorsor_isomorphism(
    b: &Bitorsor,
    b2: &Bitorsor,
    exm: &EquivariantCrossedModule,
    budget: &Budget,
) -> Result<Option<Vec<usize>>, BitorsorError> {
    if b.size != b2.size {
        return Ok(None);
    }
    let g = exm.g();
    for q in 0..b2.size {
        budget.charge(1)?;
        let phi: Vec<usize> = (0..b.size).map(|p| b2.act(q, b.divide(0, p))).collect();
        let ok = (0..b.size)
            .all(|p| b2.alpha[phi[p]] == b.alpha[p] && g.elements().all(|x| phi[b.g(x, p)] == b2.g(x, phi[p])));
        if ok {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Bitorsors up to isomorphism, matched against `H¹`.
#[derive(Clone, Debug)]
pub struct BitorsorClassification {
    pub h1: ClassSet<Cocycle1>,
    /// The bitorsor of each `H¹` representative.
    pub bitorsors: Vec<Bitorsor>,
    /// Isomorphism class of the bitorsor of each `Z¹` member.
    pub member_class: Vec<usize>,
}

impl BitorsorClassification {
    pub fn count(&self) -> usize {
        self.bitorsors.len()
    }
}

impl Serialize for BitorsorClassification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BitorsorClassification", 3)?;
        st.serialize_field("count", &self.count())?;
        st.serialize_field("h1", &self.h1)?;
        st.serialize_field("bitorsors", &self.bitorsors)?;
        st.end()
    }
}

/// Builds a bitorsor for every cocycle, sorts them into isomorphism classes
/// by morphism search, and checks that the partition is the `H¹` partition
/// and that both composites are the identity on classes.
pub fn classify_bitorsors(
    exm: &EquivariantCrossedModule,
    budget: &Budget,
) -> Result<BitorsorClassification, BitorsorError> {
    let z1 = enumerate_z1(exm, budget)?;
    let h1 = h1_classes(exm, budget)?;
    let all: Vec<Bitorsor> = z1
        .iter()
        .map(|c| cocycle_to_bitorsor(c, exm))
        .collect::<Result<_, _>>()?;
    let mut sets = DisjointSets::new(all.len());
    let mut roots: Vec<usize> = Vec::new();
    for (i, b) in all.iter().enumerate() {
        let mut found = false;
        for &r in &roots {
            if bitorsor_isomorphism(&all[r], b, exm, budget)?.is_some() {
                sets.union(r, i);
                found = true;
                break;
            }
        }
        if !found {
            roots.push(i);
        }
    }
    let member_class: Vec<usize> = (0..all.len())
        .map(|i| roots.iter().position(|&r| r == sets.find(i)).expect("root"))
        .collect();
    assert_eq!(roots.len(), h1.count(), "as many bitorsor classes as H¹ classes");
    for (i, c) in z1.iter().enumerate() {
        assert_eq!(
            h1.class_of(c),
            Some(member_class[i]),
            "bitorsor classes match H¹ classes"
        );
    }
    let bitorsors: Vec<Bitorsor> = roots.iter().map(|&r| all[r].clone()).collect();
    for (k, b) in bitorsors.iter().enumerate() {
        for p0 in 0..b.size {
            assert_eq!(
                h1.class_of(&bitorsor_to_cocycle(b, p0, exm)),
                Some(k),
                "H¹ → Bitor → H¹ is the identity"
            );
        }
        let back = cocycle_to_bitorsor(&bitorsor_to_cocycle(b, 0, exm), exm)?;
        assert!(
            bitorsor_isomorphism(b, &back, exm, budget)?.is_some(),
            "Bitor → H¹ → Bitor is the identity"
        );
    }
    Ok(BitorsorClassification {
        h1,
        bitorsors,
        member_class,
    })
}

/// `m * p = p·^ξ(p)m`, at `m·|P| + p`.
pub fn left_action(b: &Bitorsor, exm: &EquivariantCrossedModule) -> Vec<usize> {
    let (g, m) = (exm.g(), exm.m());
    let xm = exm.base();
    let size = b.size;
    let mut table = vec![0; m.order() * size];
    for a in m.elements() {
        for p in 0..size {
            table[a * size + p] = b.act(p, xm.act(b.xi(exm, p), a));
        }
    }
    let star = |a: usize, p: usize| table[a * size + p];
    for p in 0..size {
        assert_eq!(star(0, p), p);
        for a in m.elements() {
            for c in m.elements() {
                assert_eq!(b.act(star(a, p), c), star(a, b.act(p, c)), "(m*p)n = m*(pn)");
                assert_eq!(star(m.mul(a, c), p), star(a, star(c, p)), "(m₁m₂)*p = m₁*(m₂*p)");
            }
            for x in g.elements() {
                assert_eq!(b.g(x, star(a, p)), star(exm.g_m(x, a), b.g(x, p)), "ᵍ(m*p) = ᵍm*ᵍp");
            }
        }
        for q in 0..size {
            let sol = xm.act(exm.l().inv(b.xi(exm, p)), b.divide(p, q));
            assert_eq!(star(sol, p), q, "left torsor solution");
            assert_eq!(
                m.elements().filter(|&a| star(a, p) == q).count(),
                1,
                "left action is free"
            );
        }
    }
    table
}

/// `π*(P) = π(ξ(p))`, asserted constant over `P` and fixed by `G`.
pub fn pi_star(b: &Bitorsor, exm: &EquivariantCrossedModule, parts: &CrossedExtensionParts) -> usize {
    let value = parts.pi(b.xi(exm, 0));
    for p in 0..b.size {
        assert_eq!(parts.pi(b.xi(exm, p)), value, "π(ξ(p)) does not depend on p");
    }
    assert!(
        exm.g().elements().all(|x| parts.g_on_q.apply(x, value) == value),
        "π*(P) ∈ Qᴳ"
    );
    value
}
