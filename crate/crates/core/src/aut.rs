//! Homomorphism search by generator images: automorphism groups and
//! isomorphism tests for small groups.

use std::collections::{HashMap, VecDeque};

use crate::group::{FiniteGroup, GroupAction, GroupHom};

/// Extends an assignment of generator images to a map on all of `src`,
/// returning `None` unless the result is a homomorphism.
fn extend(src: &FiniteGroup, gens: &[usize], images: &[usize], dst: &FiniteGroup) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let fy = dst.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    // words in the generators only fix the map; it still has to respect
    // every product
    for x in src.elements() {
        for y in src.elements() {
            if map[src.mul(x, y)] != dst.mul(map[x], map[y]) {
                return None;
            }
        }
    }
    Some(map)
}

/// Backtracks over generator images whose order divides the generator's
/// order, calling `visit` on every homomorphism found. `visit` returns
/// `false` to stop early.
fn search_homs(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    require_same_order: bool,
    mut visit: impl FnMut(Vec<usize>) -> bool,
) {
    let gens = src.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let k = src.element_order(g);
            dst.elements()
                .filter(|&y| {
                    let o = dst.element_order(y);
                    if require_same_order {
                        o == k
                    } else {
                        k.is_multiple_of(o)
                    }
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return;
    }
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend(src, &gens, &images, dst) {
            if !visit(map) {
                return;
            }
        }
        // odometer step
        let mut pos = 0;
        loop {
            if pos == gens.len() {
                return;
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// All homomorphisms `src → dst`, sorted lexicographically by table.
pub fn homomorphisms(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<GroupHom> {
    let mut maps = Vec::new();
    search_homs(src, dst, false, |m| {
        maps.push(m);
        true
    });
    maps.sort();
    maps.dedup();
    maps.into_iter()
        .map(|m| GroupHom::new(src, dst, m).expect("search only yields homomorphisms"))
        .collect()
}

/// An isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.order_census() != b.order_census() {
        return None;
    }
    let mut found = None;
    search_homs(a, b, true, |m| {
        let mut seen = vec![false; b.order()];
        for &y in &m {
            seen[y] = true;
        }
        if seen.iter().all(|&s| s) {
            found = Some(m);
            false
        } else {
            true
        }
    });
    found
}

pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(a, b).is_some()
}

/// The automorphism group of a finite group.
///
/// Elements are the automorphisms sorted lexicographically by their map
/// tables (the identity map comes first), multiplied by composition:
/// `(α * β)(m) = α(β(m))`.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub group: FiniteGroup,
    pub maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl AutomorphismGroup {
    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }

    /// `α(m)` for the automorphism with index `alpha`.
    pub fn apply(&self, alpha: usize, m: usize) -> usize {
        self.maps[alpha][m]
    }

    /// The tautological action of `Aut(M)` on `M`.
    pub fn action(&self) -> GroupAction {
        let m_order = self.maps.first().map_or(0, Vec::len);
        GroupAction::from_parts(m_order, self.maps.concat())
    }

    /// Index of the inner automorphism `x ↦ m x m^-1`.
    pub fn inner(&self, m_group: &FiniteGroup, m: usize) -> usize {
        let map: Vec<usize> = m_group.elements().map(|x| m_group.conj(m, x)).collect();
        self.index_of(&map).expect("inner automorphisms are automorphisms")
    }
}

pub fn automorphism_group(m: &FiniteGroup) -> AutomorphismGroup {
    let mut maps = Vec::new();
    search_homs(m, m, true, |map| {
        let mut seen = vec![false; m.order()];
        for &y in &map {
            seen[y] = true;
        }
        if seen.iter().all(|&s| s) {
            maps.push(map);
        }
        true
    });
    maps.sort();
    maps.dedup();
    let index: HashMap<Vec<usize>, usize> = maps.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let n = maps.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &maps {
        for b in &maps {
            let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
            mul.push(index[&ab]);
        }
    }
    let group = FiniteGroup::from_flat(n, mul)
        .expect("automorphisms form a group")
        .with_name(format!("Aut({})", m.name()));
    AutomorphismGroup { group, maps, index }
}
