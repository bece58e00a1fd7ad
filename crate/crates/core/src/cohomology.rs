//! Cocycles and cohomology classes in degrees 0, 1 and 2.
//!
//! Everything is computed by brute force: cocycles are enumerated
//! exhaustively (normalized ones only) and classes are orbits of the
//! coboundary action, merged with a disjoint-set forest. After merging,
//! every orbit is compared with its class, so a relation that failed to be
//! symmetric or transitive would be reported rather than silently closed up.
//!
//! Degree 2 works over any group `Π` and a crossed module `M → L`; the
//! `G`-actions of an equivariant crossed module play no role there.

use std::collections::HashMap;
use std::hash::Hash;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupAction};
use crate::search::{decode_tuple, for_each_tuple, Budget, BudgetExceeded, DisjointSets};
use crate::xmod::{trivial_module, CrossedModule, EquivariantCrossedModule, XmodError};

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CohomologyError {
    #[error(transparent)]
    BudgetExceeded(#[from] BudgetExceeded),
    #[error("{name} is not abelian: elements {a} and {b} do not commute")]
    NotAbelian { name: String, a: usize, b: usize },
    #[error("action does not fit: expected {expected_actors} actors on {expected_points} points")]
    ActionMismatch {
        expected_actors: usize,
        expected_points: usize,
    },
    #[error("member {member} is sent outside the cocycle set by witness {witness}")]
    NotClosed { member: usize, witness: usize },
    #[error("relation is not an equivalence: members {a} and {b} share a class but not an orbit")]
    NotAnEquivalence { a: usize, b: usize },
    #[error("thick class {thick} meets more than one weak class")]
    NotCanonical { thick: usize },
    #[error("weak class {weak} is not the image of any thick class")]
    NotSurjective { weak: usize },
    #[error(transparent)]
    #[serde(untagged)]
    Xmod(#[from] XmodError),
}

/// Which coboundary relation is used in degree 2.
///
/// `Thick` allows only `t: Π → M`; `Weak` also lets `τ ∈ L` conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Thick,
    Weak,
}

/// Which condition a candidate cocycle breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum CocycleViolation {
    /// Tables of the wrong size or entries out of range.
    Shape,
    NotNormalized,
    /// `f(xy) ≠ f(x)·ˣf(y)`
    Product {
        x: usize,
        y: usize,
    },
    /// `τ ≠ ∂f(x)·ˣτ`
    Twist {
        x: usize,
    },
    /// `φ(xy) ≠ ∂f(x,y)·φ(x)·φ(y)`
    Boundary {
        x: usize,
        y: usize,
    },
    /// `f(xy,z)·f(x,y) ≠ f(x,yz)·^φ(x)f(y,z)`
    Associativity {
        x: usize,
        y: usize,
        z: usize,
    },
}

/// A degree-1 cocycle `(f, τ)` with `f: G → M` and `τ ∈ L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cocycle1 {
    pub f: Vec<usize>,
    pub tau: usize,
}

/// A degree-2 cocycle `(f, φ)` with `f: Π×Π → M` and `φ: Π → L`.
///
/// `f` is stored row-major: `f(x, y)` lives at `x·|Π| + y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocycle2 {
    pub f: Vec<usize>,
    pub phi: Vec<usize>,
}

impl Cocycle2 {
    pub fn trivial(order: usize) -> Self {
        Cocycle2 {
            f: vec![0; order * order],
            phi: vec![0; order],
        }
    }

    pub fn from_rows(f: &[Vec<usize>], phi: Vec<usize>) -> Self {
        Cocycle2 { f: f.concat(), phi }
    }

    pub fn order(&self) -> usize {
        self.phi.len()
    }

    pub fn f(&self, x: usize, y: usize) -> usize {
        self.f[x * self.order() + y]
    }

    pub fn phi(&self, x: usize) -> usize {
        self.phi[x]
    }

    pub fn f_rows(&self) -> Vec<Vec<usize>> {
        rows(&self.f, self.order())
    }
}

fn rows(flat: &[usize], n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    flat.chunks(n).map(<[usize]>::to_vec).collect()
}

impl Serialize for Cocycle2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cocycle2", 2)?;
        st.serialize_field("f", &self.f_rows())?;
        st.serialize_field("phi", &self.phi)?;
        st.end()
    }
}

/// An abelian factor set `f: G×G → A`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSet {
    pub order: usize,
    pub f: Vec<usize>,
}

impl FactorSet {
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.f[x * self.order + y]
    }

    pub fn is_trivial(&self) -> bool {
        self.f.iter().all(|&a| a == 0)
    }
}

impl Serialize for FactorSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rows(&self.f, self.order).serialize(s)
    }
}

/// Cocycles partitioned into classes.
///
/// Classes are numbered by their least member in enumeration order, and that
/// member is the class representative.
#[derive(Clone, Debug)]
pub struct ClassSet<C> {
    mode: Option<Mode>,
    members: Vec<C>,
    index: HashMap<C, usize>,
    member_class: Vec<usize>,
    representatives: Vec<usize>,
}

impl<C: Clone + Eq + Hash> ClassSet<C> {
    pub fn mode(&self) -> Option<Mode> {
        self.mode
    }

    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    /// Every enumerated cocycle, in enumeration order.
    pub fn members(&self) -> &[C] {
        &self.members
    }

    pub fn representative(&self, class: usize) -> &C {
        &self.members[self.representatives[class]]
    }

    pub fn representatives(&self) -> Vec<&C> {
        self.representatives.iter().map(|&i| &self.members[i]).collect()
    }

    /// The class of an enumerated cocycle, or `None` for a stranger.
    pub fn class_of(&self, c: &C) -> Option<usize> {
        self.index.get(c).map(|&i| self.member_class[i])
    }

    pub fn class_of_member(&self, member: usize) -> usize {
        self.member_class[member]
    }

    pub fn class_members(&self, class: usize) -> Vec<&C> {
        self.members
            .iter()
            .zip(&self.member_class)
            .filter(|(_, &k)| k == class)
            .map(|(c, _)| c)
            .collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count()];
        for &k in &self.member_class {
            sizes[k] += 1;
        }
        sizes
    }
}

impl<C: Serialize> Serialize for ClassSet<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let reps: Vec<&C> = self.representatives.iter().map(|&i| &self.members[i]).collect();
        let mut st = s.serialize_struct("ClassSet", 3)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("count", &reps.len())?;
        st.serialize_field("representatives", &reps)?;
        st.end()
    }
}

/// Splits `members` into orbits of a group of `witnesses` acting through
/// `image`, with witness 0 acting as the identity.
fn orbit_classes<C: Clone + Eq + Hash>(
    members: Vec<C>,
    mode: Option<Mode>,
    witnesses: usize,
    budget: &Budget,
    image: impl Fn(&C, usize) -> C,
) -> Result<ClassSet<C>, CohomologyError> {
    let index: HashMap<C, usize> = members.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut sets = DisjointSets::new(members.len());
    let mut orbits = Vec::with_capacity(members.len());
    for (i, c) in members.iter().enumerate() {
        budget.charge(witnesses as u64)?;
        let mut orbit = Vec::new();
        for w in 0..witnesses {
            let j = *index
                .get(&image(c, w))
                .ok_or(CohomologyError::NotClosed { member: i, witness: w })?;
            sets.union(i, j);
            orbit.push(j);
        }
        orbit.sort_unstable();
        orbit.dedup();
        orbits.push(orbit);
    }
    let roots: Vec<usize> = (0..members.len()).map(|i| sets.find(i)).collect();
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &r) in roots.iter().enumerate() {
        by_root.entry(r).or_default().push(i);
    }
    for (i, orbit) in orbits.iter().enumerate() {
        let class = &by_root[&roots[i]];
        if orbit.binary_search(&i).is_err() {
            return Err(CohomologyError::NotAnEquivalence { a: i, b: i });
        }
        if orbit != class {
            let b = class
                .iter()
                .copied()
                .find(|j| orbit.binary_search(j).is_err())
                .unwrap_or(i);
            return Err(CohomologyError::NotAnEquivalence { a: i, b });
        }
    }
    let mut representatives = Vec::new();
    let mut class_of_root = HashMap::new();
    let mut member_class = Vec::with_capacity(members.len());
    for &r in &roots {
        let k = *class_of_root.entry(r).or_insert_with(|| {
            representatives.push(r);
            representatives.len() - 1
        });
        member_class.push(k);
    }
    Ok(ClassSet {
        mode,
        members,
        index,
        member_class,
        representatives,
    })
}

/// `H⁰ = {m ∈ M : ∂m = 1 and ˣm = m for all x ∈ G}`.
pub fn h0(exm: &EquivariantCrossedModule) -> Vec<usize> {
    exm.m()
        .elements()
        .filter(|&m| exm.base().d(m) == 0 && exm.g().elements().all(|x| exm.g_m(x, m) == m))
        .collect()
}

/// Fixed points of a `G`-group.
pub fn h0_of_action(action: &GroupAction) -> Vec<usize> {
    action.fixed_points()
}

pub fn check_cocycle1(exm: &EquivariantCrossedModule, c: &Cocycle1) -> Result<(), CocycleViolation> {
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    if c.f.len() != g.order() || c.f.iter().any(|&v| v >= m.order()) || c.tau >= l.order() {
        return Err(CocycleViolation::Shape);
    }
    if c.f[0] != 0 {
        return Err(CocycleViolation::NotNormalized);
    }
    for x in g.elements() {
        for y in g.elements() {
            if c.f[g.mul(x, y)] != m.mul(c.f[x], exm.g_m(x, c.f[y])) {
                return Err(CocycleViolation::Product { x, y });
            }
        }
    }
    for x in g.elements() {
        if c.tau != l.mul(exm.base().d(c.f[x]), exm.g_l(x, c.tau)) {
            return Err(CocycleViolation::Twist { x });
        }
    }
    Ok(())
}

/// All degree-1 cocycles, ordered by `f` (lexicographically) and then `τ`.
pub fn enumerate_z1(exm: &EquivariantCrossedModule, budget: &Budget) -> Result<Vec<Cocycle1>, CohomologyError> {
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    let mut out = Vec::new();
    let radices = vec![m.order(); g.order().saturating_sub(1)];
    for_each_tuple(&radices, |tail| {
        budget.charge(1)?;
        let mut f = Vec::with_capacity(g.order());
        f.push(0);
        f.extend_from_slice(tail);
        let product_ok = g
            .elements()
            .all(|x| g.elements().all(|y| f[g.mul(x, y)] == m.mul(f[x], exm.g_m(x, f[y]))));
        if !product_ok {
            return Ok(());
        }
        budget.charge(l.order() as u64)?;
        for tau in l.elements() {
            if g.elements().all(|x| tau == l.mul(exm.base().d(f[x]), exm.g_l(x, tau))) {
                out.push(Cocycle1 { f: f.clone(), tau });
            }
        }
        Ok::<(), CohomologyError>(())
    })?;
    Ok(out)
}

/// The cocycle `(f, τ)` with `τ = ∂(m)·τ'` and `f(x) = m·f'(x)·(ˣm)⁻¹`.
pub fn h1_act(exm: &EquivariantCrossedModule, m: usize, c: &Cocycle1) -> Cocycle1 {
    let mg = exm.m();
    Cocycle1 {
        f: exm
            .g()
            .elements()
            .map(|x| mg.product(&[m, c.f[x], mg.inv(exm.g_m(x, m))]))
            .collect(),
        tau: exm.l().mul(exm.base().d(m), c.tau),
    }
}

/// Some `m` with `h1_act(m, b) = a`, if the two cocycles are cohomologous.
pub fn h1_equivalent(
    exm: &EquivariantCrossedModule,
    a: &Cocycle1,
    b: &Cocycle1,
    budget: &Budget,
) -> Result<Option<usize>, CohomologyError> {
    for m in exm.m().elements() {
        budget.charge(1)?;
        if &h1_act(exm, m, b) == a {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn h1_classes(exm: &EquivariantCrossedModule, budget: &Budget) -> Result<ClassSet<Cocycle1>, CohomologyError> {
    let z1 = enumerate_z1(exm, budget)?;
    orbit_classes(z1, None, exm.m().order(), budget, |c, m| h1_act(exm, m, c))
}

pub fn check_cocycle2(pi: &FiniteGroup, xm: &CrossedModule, c: &Cocycle2) -> Result<(), CocycleViolation> {
    let (m, l) = (xm.m(), xm.l());
    let n = pi.order();
    if c.phi.len() != n
        || c.f.len() != n * n
        || c.phi.iter().any(|&v| v >= l.order())
        || c.f.iter().any(|&v| v >= m.order())
    {
        return Err(CocycleViolation::Shape);
    }
    if c.phi[0] != 0 || pi.elements().any(|x| c.f(0, x) != 0 || c.f(x, 0) != 0) {
        return Err(CocycleViolation::NotNormalized);
    }
    for x in pi.elements() {
        for y in pi.elements() {
            if c.phi(pi.mul(x, y)) != l.product(&[xm.d(c.f(x, y)), c.phi(x), c.phi(y)]) {
                return Err(CocycleViolation::Boundary { x, y });
            }
        }
    }
    associativity(pi, xm, c).map_or(Ok(()), |(x, y, z)| Err(CocycleViolation::Associativity { x, y, z }))
}

fn associativity(pi: &FiniteGroup, xm: &CrossedModule, c: &Cocycle2) -> Option<(usize, usize, usize)> {
    let m = xm.m();
    for x in pi.elements() {
        for y in pi.elements() {
            for z in pi.elements() {
                let lhs = m.mul(c.f(pi.mul(x, y), z), c.f(x, y));
                let rhs = m.mul(c.f(x, pi.mul(y, z)), xm.act(c.phi(x), c.f(y, z)));
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// All normalized degree-2 cocycles over `Π`.
///
/// `φ` is enumerated first; each `f(x, y)` is then drawn from the fiber of
/// `∂` over `φ(xy)·φ(y)⁻¹·φ(x)⁻¹`, which settles the boundary condition and
/// leaves only associativity to test.
pub fn enumerate_z2(pi: &FiniteGroup, xm: &CrossedModule, budget: &Budget) -> Result<Vec<Cocycle2>, CohomologyError> {
    let mut out = Vec::new();
    let radices = vec![xm.l().order(); pi.order().saturating_sub(1)];
    for_each_tuple(&radices, |tail| {
        budget.charge(1)?;
        let mut phi = Vec::with_capacity(pi.order());
        phi.push(0);
        phi.extend_from_slice(tail);
        z2_over_phi(pi, xm, &phi, budget, &mut out)
    })?;
    Ok(out)
}

/// The degree-2 cocycles whose `φ` is the given table.
pub fn enumerate_z2_fiber(
    pi: &FiniteGroup,
    xm: &CrossedModule,
    phi: &[usize],
    budget: &Budget,
) -> Result<Vec<Cocycle2>, CohomologyError> {
    let mut out = Vec::new();
    if phi.first() == Some(&0) {
        z2_over_phi(pi, xm, phi, budget, &mut out)?;
    }
    Ok(out)
}

fn z2_over_phi(
    pi: &FiniteGroup,
    xm: &CrossedModule,
    phi: &[usize],
    budget: &Budget,
    out: &mut Vec<Cocycle2>,
) -> Result<(), CohomologyError> {
    let (m, l) = (xm.m(), xm.l());
    let n = pi.order();
    let mut fibers = vec![Vec::new(); l.order()];
    for a in m.elements() {
        fibers[xm.d(a)].push(a);
    }
    let mut slots = Vec::new();
    for x in 1..n {
        for y in 1..n {
            let need = l.product(&[phi[pi.mul(x, y)], l.inv(phi[y]), l.inv(phi[x])]);
            slots.push((x * n + y, &fibers[need]));
        }
    }
    let radices: Vec<usize> = slots.iter().map(|(_, fib)| fib.len()).collect();
    let mut c = Cocycle2 {
        f: vec![0; n * n],
        phi: phi.to_vec(),
    };
    for_each_tuple(&radices, |choice| {
        budget.charge(1)?;
        for (&(pos, fib), &k) in slots.iter().zip(choice) {
            c.f[pos] = fib[k];
        }
        if associativity(pi, xm, &c).is_none() {
            out.push(c.clone());
        }
        Ok(())
    })
}

/// A coboundary witness: `t: Π → M` with `t(1) = 1`, and `τ ∈ L`
/// (`τ = 1` in thick mode).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness2 {
    pub t: Vec<usize>,
    pub tau: usize,
}

impl Witness2 {
    pub fn identity(order: usize) -> Self {
        Witness2 {
            t: vec![0; order],
            tau: 0,
        }
    }
}

/// Moves a cocycle along a witness:
///
/// `φ'(x) = ∂t(x)⁻¹·τ·φ(x)·τ⁻¹` and
/// `f'(x,y) = t(xy)⁻¹·ᵗf(x,y)·t(x)·^φ'(x)t(y)` (with `ᵗ` the action of `τ`).
///
/// When `M` is abelian and `τ = 1` the second formula can be rearranged to
/// put `^φ(x)t(y)` next to `t(x)` in either order; for nonabelian `M` only
/// the order above keeps cocycles cocycles.
pub fn transform2(pi: &FiniteGroup, xm: &CrossedModule, c: &Cocycle2, w: &Witness2) -> Cocycle2 {
    let (m, l) = (xm.m(), xm.l());
    let n = pi.order();
    let tau_inv = l.inv(w.tau);
    let phi: Vec<usize> = (0..n)
        .map(|x| l.product(&[l.inv(xm.d(w.t[x])), w.tau, c.phi(x), tau_inv]))
        .collect();
    let mut f = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            f[x * n + y] = m.product(&[
                m.inv(w.t[pi.mul(x, y)]),
                xm.act(w.tau, c.f(x, y)),
                w.t[x],
                xm.act(phi[x], w.t[y]),
            ]);
        }
    }
    Cocycle2 { f, phi }
}

/// Witness list: thick witnesses first (`τ = 1`), identity at index 0.
fn witnesses2(pi: &FiniteGroup, xm: &CrossedModule, mode: Mode) -> Vec<Witness2> {
    let radices = vec![xm.m().order(); pi.order().saturating_sub(1)];
    let taus = match mode {
        Mode::Thick => 1,
        Mode::Weak => xm.l().order(),
    };
    let per_tau: usize = radices.iter().product();
    let mut out = Vec::with_capacity(per_tau * taus);
    for tau in 0..taus {
        for i in 0..per_tau {
            let mut t = vec![0];
            t.extend(decode_tuple(i, &radices));
            out.push(Witness2 { t, tau });
        }
    }
    out
}

/// A witness moving `a` to `b`, if there is one.
pub fn cocycle2_equivalent(
    pi: &FiniteGroup,
    xm: &CrossedModule,
    a: &Cocycle2,
    b: &Cocycle2,
    mode: Mode,
    budget: &Budget,
) -> Result<Option<Witness2>, CohomologyError> {
    for w in witnesses2(pi, xm, mode) {
        budget.charge(1)?;
        if &transform2(pi, xm, a, &w) == b {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn classes_of_z2(
    pi: &FiniteGroup,
    xm: &CrossedModule,
    z2: Vec<Cocycle2>,
    mode: Mode,
    budget: &Budget,
) -> Result<ClassSet<Cocycle2>, CohomologyError> {
    let ws = witnesses2(pi, xm, mode);
    orbit_classes(z2, Some(mode), ws.len(), budget, |c, w| transform2(pi, xm, c, &ws[w]))
}

/// Degree-2 classes in the given mode.
///
/// In weak mode the thick classes are computed as well and the canonical
/// map from thick to weak classes is checked to be well defined and onto.
pub fn h2_classes(
    pi: &FiniteGroup,
    xm: &CrossedModule,
    mode: Mode,
    budget: &Budget,
) -> Result<ClassSet<Cocycle2>, CohomologyError> {
    match mode {
        Mode::Thick => classes_of_z2(pi, xm, enumerate_z2(pi, xm, budget)?, Mode::Thick, budget),
        Mode::Weak => Ok(h2_thick_and_weak(pi, xm, budget)?.1),
    }
}

/// Both degree-2 class sets over one enumeration, with the surjection checked.
pub fn h2_thick_and_weak(
    pi: &FiniteGroup,
    xm: &CrossedModule,
    budget: &Budget,
) -> Result<(ClassSet<Cocycle2>, ClassSet<Cocycle2>), CohomologyError> {
    let z2 = enumerate_z2(pi, xm, budget)?;
    let thick = classes_of_z2(pi, xm, z2.clone(), Mode::Thick, budget)?;
    let weak = classes_of_z2(pi, xm, z2, Mode::Weak, budget)?;
    canonical_surjection(&thick, &weak)?;
    Ok((thick, weak))
}

/// The map thick class ↦ weak class, checked to be well defined and onto.
pub fn canonical_surjection(
    thick: &ClassSet<Cocycle2>,
    weak: &ClassSet<Cocycle2>,
) -> Result<Vec<usize>, CohomologyError> {
    let mut map = vec![usize::MAX; thick.count()];
    for (i, c) in thick.members().iter().enumerate() {
        let k = thick.class_of_member(i);
        let target = weak.class_of(c).ok_or(CohomologyError::NotCanonical { thick: k })?;
        if map[k] == usize::MAX {
            map[k] = target;
        } else if map[k] != target {
            return Err(CohomologyError::NotCanonical { thick: k });
        }
    }
    let mut hit = vec![false; weak.count()];
    for &k in &map {
        hit[k] = true;
    }
    if let Some(weak) = hit.iter().position(|&h| !h) {
        return Err(CohomologyError::NotSurjective { weak });
    }
    Ok(map)
}

fn check_module(g: &FiniteGroup, a: &FiniteGroup, action: &GroupAction) -> Result<(), CohomologyError> {
    if let Some((x, y)) = a.non_commuting_pair() {
        return Err(CohomologyError::NotAbelian {
            name: a.name().to_string(),
            a: x,
            b: y,
        });
    }
    if action.actor_order() != g.order() || action.target_size() != a.order() {
        return Err(CohomologyError::ActionMismatch {
            expected_actors: g.order(),
            expected_points: a.order(),
        });
    }
    Ok(())
}

/// `H²(G, A)` for an abelian `G`-module `A`: normalized factor sets with
/// `f(xy,z)·f(x,y) = f(x,yz)·ˣf(y,z)` modulo `b(x,y) = t(xy)⁻¹·t(x)·ˣt(y)`.
///
/// The zero factor set is enumerated first, so class 0 is the trivial class.
pub fn classical_h2(
    g: &FiniteGroup,
    a: &FiniteGroup,
    action: &GroupAction,
    budget: &Budget,
) -> Result<ClassSet<FactorSet>, CohomologyError> {
    check_module(g, a, action)?;
    let n = g.order();
    let mut z2 = Vec::new();
    let radices = vec![a.order(); n.saturating_sub(1).pow(2)];
    let mut f = vec![0; n * n];
    for_each_tuple(&radices, |choice| {
        budget.charge(1)?;
        for (k, &v) in choice.iter().enumerate() {
            f[(k / (n - 1) + 1) * n + k % (n - 1) + 1] = v;
        }
        let ok = g.elements().all(|x| {
            g.elements().all(|y| {
                g.elements().all(|z| {
                    a.mul(f[g.mul(x, y) * n + z], f[x * n + y])
                        == a.mul(f[x * n + g.mul(y, z)], action.apply(x, f[y * n + z]))
                })
            })
        });
        if ok {
            z2.push(FactorSet { order: n, f: f.clone() });
        }
        Ok::<(), CohomologyError>(())
    })?;
    let t_radices = vec![a.order(); n.saturating_sub(1)];
    let witnesses: Vec<Vec<usize>> = (0..t_radices.iter().product())
        .map(|i| {
            let mut t = vec![0];
            t.extend(decode_tuple(i, &t_radices));
            t
        })
        .collect();
    orbit_classes(z2, Some(Mode::Thick), witnesses.len(), budget, |c, w| {
        let t = &witnesses[w];
        let mut out = c.clone();
        for x in 0..n {
            for y in 0..n {
                let b = a.product(&[a.inv(t[g.mul(x, y)]), t[x], action.apply(x, t[y])]);
                out.f[x * n + y] = a.mul(c.get(x, y), b);
            }
        }
        out
    })
}

/// The same count as [`classical_h2`], reached through crossed-module
/// cohomology: thick classes of `A → G` (trivial boundary, `G` acting on `A`)
/// whose `φ` is the identity of `G`.
pub fn classical_h2_via_xmod(
    g: &FiniteGroup,
    a: &FiniteGroup,
    action: &GroupAction,
    budget: &Budget,
) -> Result<usize, CohomologyError> {
    check_module(g, a, action)?;
    let xm = trivial_module(a, g, action)?;
    let identity: Vec<usize> = g.elements().collect();
    let fiber = enumerate_z2_fiber(g, &xm, &identity, budget)?;
    Ok(classes_of_z2(g, &xm, fiber, Mode::Thick, budget)?.count())
}
