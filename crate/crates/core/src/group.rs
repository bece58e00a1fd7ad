//! Finite groups as dense multiplication tables.
//!
//! Elements are the indices `0..order`. The identity is always index 0, and
//! every table stays small enough (a few dozen elements) that all checks in
//! this crate are exhaustive.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Errors raised while validating groups, homomorphisms and actions.
///
/// Every variant carries the offending element indices so that callers can
/// report a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupError {
    #[error("a group needs at least one element")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, found: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("identity is element {identity}, but it must be element 0")]
    IdentityNotFirst { identity: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("expected a table of length {expected}, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("map is not a homomorphism at ({x}, {y})")]
    NotHomomorphism { x: usize, y: usize },
    #[error("the identity of the acting group moves {x}")]
    IdentityMoves { x: usize },
    #[error("action is not functorial: ({g}*{h}).{x} != {g}.({h}.{x})")]
    NotFunctorial { g: usize, h: usize, x: usize },
    /// Either the map of `g` is not multiplicative at `(x, y)`, or `x ≠ y`
    /// have the same image.
    #[error("element {g} does not act by an automorphism (witness pair ({x}, {y}))")]
    NotAutomorphic { g: usize, x: usize, y: usize },
    #[error("subset is not closed under multiplication: {x}*{y}")]
    NotSubgroup { x: usize, y: usize },
    #[error("subgroup is not normal: {x} * {n} * {x}^-1 leaves it")]
    NotNormal { n: usize, x: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
}

/// A validated finite group.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a Cayley table given as rows and computes the inverse table.
    ///
    /// Checks run in the order shape, range, associativity, identity,
    /// inverses, so a non-associative magma is reported as such even when it
    /// also lacks an identity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    found: r.len(),
                    expected: n,
                });
            }
        }
        Self::from_flat(n, table.into_iter().flatten().collect())
    }

    /// Same as [`FiniteGroup::from_table`] for a row-major flat table.
    pub fn from_flat(order: usize, mul: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if mul.len() != order * order {
            return Err(GroupError::WrongLength {
                expected: order * order,
                found: mul.len(),
            });
        }
        for (i, &v) in mul.iter().enumerate() {
            if v >= order {
                return Err(GroupError::OutOfRange {
                    row: i / order,
                    col: i % order,
                    value: v,
                });
            }
        }
        let m = |a: usize, b: usize| mul[a * order + b];
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        if identity != 0 {
            return Err(GroupError::IdentityNotFirst { identity });
        }
        let mut inv = Vec::with_capacity(order);
        for x in 0..order {
            let y = (0..order)
                .find(|&y| m(x, y) == 0 && m(y, x) == 0)
                .ok_or(GroupError::NoInverse { element: x })?;
            inv.push(y);
        }
        let labels = (0..order).map(|i| i.to_string()).collect();
        Ok(FiniteGroup {
            name: format!("G{order}"),
            order,
            mul,
            inv,
            labels,
        })
    }

    /// Builds a group from any closed set of values under a binary operation.
    /// `elements[0]` must be the identity.
    pub fn from_elements<T: Eq + std::hash::Hash + Clone>(
        elements: &[T],
        op: impl Fn(&T, &T) -> T,
    ) -> Result<Self, GroupError> {
        let index: std::collections::HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for (x, a) in elements.iter().enumerate() {
            for (y, b) in elements.iter().enumerate() {
                let c = op(a, b);
                mul.push(*index.get(&c).ok_or(GroupError::NotSubgroup { x, y })?);
            }
        }
        Self::from_flat(n, mul)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GroupError> {
        if labels.len() != self.order {
            return Err(GroupError::LabelCount {
                expected: self.order,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    /// `a * b * a^-1`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks an element up by label, falling back to a decimal index.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .or_else(|| label.parse::<usize>().ok().filter(|&i| i < self.order))
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        for a in self.elements() {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Number of elements of each order.
    pub fn order_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for a in self.elements() {
            *census.entry(self.element_order(a)).or_insert(0) += 1;
        }
        census
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// A small generating set, chosen greedily by element index.
    ///
    /// Elements of larger order are preferred, which keeps the generator
    /// count at one for cyclic groups.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().skip(1).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![0];
        for a in by_order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// Re-indexes a subgroup as a fresh group together with its embedding.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let mut members: Vec<usize> = elements.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if members.first() != Some(&0) {
            members.insert(0, 0);
        }
        let pos = |x: usize| members.binary_search(&x).ok();
        let n = members.len();
        let mut mul = Vec::with_capacity(n * n);
        for &x in &members {
            for &y in &members {
                mul.push(pos(self.mul(x, y)).ok_or(GroupError::NotSubgroup { x, y })?);
            }
        }
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        let group = FiniteGroup::from_flat(n, mul)?
            .with_name(format!("sub({})", self.name))
            .with_labels(labels)?;
        Ok(Subgroup {
            group,
            embedding: members,
        })
    }

    pub fn check_normal(&self, members: &[usize]) -> Result<(), GroupError> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        for &n in members {
            for x in self.elements() {
                if !set.contains(&self.conj(x, n)) {
                    return Err(GroupError::NotNormal { n, x });
                }
            }
        }
        Ok(())
    }

    /// Quotient by a normal subgroup, with cosets indexed by their least
    /// element (so the identity coset is 0).
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient, GroupError> {
        self.subgroup(normal)?;
        self.check_normal(normal)?;
        let mut projection = vec![usize::MAX; self.order];
        let mut representatives = Vec::new();
        for x in self.elements() {
            if projection[x] != usize::MAX {
                continue;
            }
            let idx = representatives.len();
            representatives.push(x);
            for &n in normal {
                projection[self.mul(x, n)] = idx;
            }
        }
        let q = representatives.len();
        let mut mul = Vec::with_capacity(q * q);
        for &a in &representatives {
            for &b in &representatives {
                mul.push(projection[self.mul(a, b)]);
            }
        }
        let labels = representatives
            .iter()
            .map(|&r| format!("[{}]", self.labels[r]))
            .collect();
        let group = FiniteGroup::from_flat(q, mul)?
            .with_name(format!("{}/N", self.name))
            .with_labels(labels)?;
        Ok(Quotient {
            group,
            projection,
            representatives,
        })
    }
}

/// A subgroup re-indexed as its own group. `embedding[i]` is the parent
/// element corresponding to subgroup element `i`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FiniteGroup,
    pub embedding: Vec<usize>,
}

impl Subgroup {
    /// Subgroup index of a parent element, if it belongs to the subgroup.
    pub fn index_of(&self, parent: usize) -> Option<usize> {
        self.embedding.binary_search(&parent).ok()
    }
}

/// A quotient group with its projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

/// A validated homomorphism, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(src: &FiniteGroup, dst: &FiniteGroup, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != src.order() {
            return Err(GroupError::WrongLength {
                expected: src.order(),
                found: map.len(),
            });
        }
        if let Some(col) = map.iter().position(|&v| v >= dst.order()) {
            return Err(GroupError::OutOfRange {
                row: 0,
                col,
                value: map[col],
            });
        }
        for x in src.elements() {
            for y in src.elements() {
                if map[src.mul(x, y)] != dst.mul(map[x], map[y]) {
                    return Err(GroupError::NotHomomorphism { x, y });
                }
            }
        }
        Ok(GroupHom { map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            map: g.elements().collect(),
        }
    }

    pub fn trivial(src: &FiniteGroup) -> Self {
        GroupHom {
            map: vec![0; src.order()],
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        self.map.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self, dst: &FiniteGroup) -> bool {
        self.image().len() == dst.order()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }
}

/// A left action of a finite group on a finite set or group, as a table
/// `actor × target → target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAction {
    target_size: usize,
    table: Vec<usize>,
}

impl GroupAction {
    /// Action on a plain finite set of `target_size` points.
    pub fn on_set(actor: &FiniteGroup, target_size: usize, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let flat = Self::flatten(actor.order(), target_size, table)?;
        Self::validate_set(actor, target_size, flat)
    }

    /// Action on a group; every element must act by an automorphism.
    pub fn on_group(actor: &FiniteGroup, target: &FiniteGroup, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let flat = Self::flatten(actor.order(), target.order(), table)?;
        Self::from_flat_on_group(actor, target, flat)
    }

    pub fn from_flat_on_group(actor: &FiniteGroup, target: &FiniteGroup, flat: Vec<usize>) -> Result<Self, GroupError> {
        let n = target.order();
        if flat.len() != actor.order() * n {
            return Err(GroupError::WrongLength {
                expected: actor.order() * n,
                found: flat.len(),
            });
        }
        // bijectivity and the automorphism property come before functoriality
        // so that a non-automorphic map is reported as such
        for g in actor.elements() {
            let row = &flat[g * n..(g + 1) * n];
            if let Some(col) = row.iter().position(|&v| v >= n) {
                return Err(GroupError::OutOfRange {
                    row: g,
                    col,
                    value: row[col],
                });
            }
            for x in target.elements() {
                for y in target.elements() {
                    if row[target.mul(x, y)] != target.mul(row[x], row[y]) {
                        return Err(GroupError::NotAutomorphic { g, x, y });
                    }
                }
            }
            for x in 0..n {
                if let Some(y) = (x + 1..n).find(|&y| row[y] == row[x]) {
                    return Err(GroupError::NotAutomorphic { g, x, y });
                }
            }
        }
        Self::validate_set(actor, n, flat)
    }

    /// Action of `actor` on itself by conjugation.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let table = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .map(|(x, y)| g.conj(x, y))
            .collect();
        GroupAction {
            target_size: g.order(),
            table,
        }
    }

    pub fn trivial(actor: &FiniteGroup, target_size: usize) -> Self {
        GroupAction {
            target_size,
            table: (0..actor.order()).flat_map(|_| 0..target_size).collect(),
        }
    }

    /// Pulls an action back along a homomorphism `src → actor`.
    pub fn pullback(&self, hom: &GroupHom) -> Self {
        let table = hom.table().iter().flat_map(|&a| self.row(a).to_vec()).collect();
        GroupAction {
            target_size: self.target_size,
            table,
        }
    }

    fn flatten(actors: usize, n: usize, table: Vec<Vec<usize>>) -> Result<Vec<usize>, GroupError> {
        if table.len() != actors {
            return Err(GroupError::WrongLength {
                expected: actors,
                found: table.len(),
            });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    found: r.len(),
                    expected: n,
                });
            }
        }
        Ok(table.into_iter().flatten().collect())
    }

    fn validate_set(actor: &FiniteGroup, n: usize, flat: Vec<usize>) -> Result<Self, GroupError> {
        if flat.len() != actor.order() * n {
            return Err(GroupError::WrongLength {
                expected: actor.order() * n,
                found: flat.len(),
            });
        }
        if let Some(i) = flat.iter().position(|&v| v >= n) {
            return Err(GroupError::OutOfRange {
                row: i / n,
                col: i % n,
                value: flat[i],
            });
        }
        if let Some(x) = (0..n).find(|&x| flat[x] != x) {
            return Err(GroupError::IdentityMoves { x });
        }
        for g in actor.elements() {
            for h in actor.elements() {
                let gh = actor.mul(g, h);
                for x in 0..n {
                    if flat[gh * n + x] != flat[g * n + flat[h * n + x]] {
                        return Err(GroupError::NotFunctorial { g, h, x });
                    }
                }
            }
        }
        Ok(GroupAction {
            target_size: n,
            table: flat,
        })
    }

    /// Wraps a table whose validity follows from how it was built.
    pub(crate) fn from_parts(target_size: usize, table: Vec<usize>) -> Self {
        GroupAction { target_size, table }
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.table[g * self.target_size + x]
    }

    /// The permutation by which `g` acts.
    pub fn row(&self, g: usize) -> &[usize] {
        &self.table[g * self.target_size..(g + 1) * self.target_size]
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn actor_order(&self) -> usize {
        self.table.len() / self.target_size.max(1)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.actor_order()).all(|g| self.row(g).iter().enumerate().all(|(i, &v)| i == v))
    }

    /// Points fixed by every element of the actor.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.target_size)
            .filter(|&x| (0..self.actor_order()).all(|g| self.apply(g, x) == x))
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.actor_order()).map(|g| self.row(g).to_vec()).collect()
    }
}

/// The cyclic group of order `n`, element `i` being the `i`-th power of the
/// generator, labelled with the given generator symbol.
pub fn cyclic_named(n: usize, generator: &str) -> FiniteGroup {
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => generator.to_string(),
            _ => format!("{generator}^{i}"),
        })
        .collect();
    FiniteGroup::from_flat(n, mul)
        .expect("cyclic table is a group")
        .with_name(format!("C{n}"))
        .with_labels(labels)
        .expect("label count")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    cyclic_named(n, "g")
}

pub fn trivial_group() -> FiniteGroup {
    cyclic(1)
}

/// The Klein four-group, as bit vectors under xor.
pub fn klein_four() -> FiniteGroup {
    let mul = (0..4).flat_map(|a| (0..4).map(move |b| a ^ b)).collect();
    FiniteGroup::from_flat(4, mul)
        .expect("xor table is a group")
        .with_name("K4")
        .with_labels(vec!["1".into(), "a".into(), "b".into(), "ab".into()])
        .expect("label count")
}

/// The symmetric group on three points. Elements are the permutations of
/// `[0, 1, 2]` in lexicographic order of their image lists, composed as
/// functions: `(p * q)(i) = p(q(i))`.
pub fn symmetric3() -> FiniteGroup {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
    FiniteGroup::from_elements(&perms, |p, q| [p[q[0]], p[q[1]], p[q[2]]])
        .expect("S3 is closed")
        .with_name("S3")
        .with_labels(labels)
        .expect("label count")
}

/// Direct product with element `(a, b)` at index `a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let nb = b.order();
    let n = a.order() * nb;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            mul.push(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
        .collect();
    FiniteGroup::from_flat(n, mul)
        .expect("product of groups is a group")
        .with_name(format!("{}x{}", a.name(), b.name()))
        .with_labels(labels)
        .expect("label count")
}

/// Names accepted by [`builtin_group`].
pub const BUILTIN_GROUPS: [&str; 7] = ["C1", "C2", "C3", "C4", "C8", "K4", "S3"];

pub fn builtin_group(name: &str) -> Option<FiniteGroup> {
    match name {
        "C1" => Some(cyclic(1)),
        "C2" => Some(cyclic(2)),
        "C3" => Some(cyclic(3)),
        "C4" => Some(cyclic(4)),
        "C8" => Some(cyclic(8)),
        "K4" => Some(klein_four()),
        "S3" => Some(symmetric3()),
        _ => None,
    }
}
