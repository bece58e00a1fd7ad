//! Finite `G`-groupoids and bouquets, plain or over a crossed module.
//!
//! Morphisms are structural triples `(src, payload, dst)`; the payload means
//! whatever the construction says (an element of `B`, of `M`, or a morphism
//! of another groupoid). Composition, identities, inverses and the
//! `G`-action are dense tables over morphism indices, all checked on
//! construction.

use std::collections::HashMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::aut::automorphism_group;
use crate::cohomology::{check_cocycle2, transform2, ClassSet, Cocycle2, CohomologyError, Witness2};
use crate::extensions::{make_extension, Extension, ExtensionError};
use crate::group::{FiniteGroup, GroupError, GroupHom};
use crate::search::{for_each_tuple, DisjointSets};
use crate::xmod::{aut, CrossedModule};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// A morphism index or endpoint is out of range, a triple is listed
    /// twice, or a computed triple is missing from the list.
    UnknownMorphism,
    /// A composite does not run from the source of the first factor to the
    /// target of the second.
    Typing,
    Associativity,
    Identity,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionLaw {
    /// `ᵍα` does not run from `ᵍa` to `ᵍb`.
    Typing,
    /// `Φ(1)` is not the identity.
    Unit,
    /// `Φ(gh) ≠ Φ(g)∘Φ(h)`
    Composition,
    /// `ᵍ(β∘α) ≠ ᵍβ∘ᵍα`
    Functor,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BouquetError {
    #[error("category axiom {axiom:?} fails at morphisms {morphisms:?}")]
    CategoryAxiomViolation { axiom: Axiom, morphisms: Vec<usize> },
    #[error("G-action law {law:?} fails for g = {g}, h = {h} on item {item}")]
    ActionNotFunctorial {
        law: ActionLaw,
        g: usize,
        h: usize,
        item: usize,
    },
    #[error("groupoid is empty or not connected")]
    NotABouquet,
    #[error("morphism {lambda} does not run from the g-translate of the object to the object (g = {g})")]
    TypeMismatch { g: usize, lambda: usize },
    #[error("η is not an isomorphism onto the vertex group (witness m = {m})")]
    EtaNotIso { m: usize },
    #[error("θ does not act as ϑ at g = {g}, λ = {lambda}, m = {m}")]
    ThetaMismatch { g: usize, lambda: usize, m: usize },
    #[error("θ is not multiplicative on elements {a} and {b} of the pair group")]
    ThetaNotMultiplicative { a: usize, b: usize },
    #[error("bad morphism family at g = {g}")]
    BadFamily { g: usize },
    #[error("object {object} is not fixed by G")]
    NotFixed { object: usize },
    #[error("cocycle check failed")]
    NotACocycle,
    #[error(transparent)]
    #[serde(untagged)]
    Group(#[from] GroupError),
    #[error(transparent)]
    #[serde(untagged)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    #[serde(untagged)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Morphism {
    pub src: usize,
    pub payload: usize,
    pub dst: usize,
}

impl Morphism {
    pub fn new(src: usize, payload: usize, dst: usize) -> Self {
        Morphism { src, payload, dst }
    }
}

fn axiom(axiom: Axiom, morphisms: &[usize]) -> BouquetError {
    BouquetError::CategoryAxiomViolation {
        axiom,
        morphisms: morphisms.to_vec(),
    }
}

fn action_law(law: ActionLaw, g: usize, h: usize, item: usize) -> BouquetError {
    BouquetError::ActionNotFunctorial { law, g, h, item }
}

/// A finite groupoid with a strict action of a finite group.
#[derive(Clone, Debug)]
pub struct GGroupoid {
    group: FiniteGroup,
    objects: usize,
    morphisms: Vec<Morphism>,
    index: HashMap<Morphism, usize>,
    compose: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    homs: Vec<Vec<usize>>,
    act_obj: Vec<usize>,
    act_mor: Vec<usize>,
}

/// Builds and validates a `G`-groupoid.
///
/// `compose(β, α)` is only asked for `β∘α` with `α.dst == β.src`.
pub fn make_ggroupoid(
    group: &FiniteGroup,
    objects: usize,
    morphisms: Vec<Morphism>,
    compose: impl Fn(&Morphism, &Morphism) -> Morphism,
    act_obj: impl Fn(usize, usize) -> usize,
    act_mor: impl Fn(usize, &Morphism) -> Morphism,
) -> Result<GGroupoid, BouquetError> {
    let n = morphisms.len();
    let mut index = HashMap::with_capacity(n);
    let mut homs = vec![Vec::new(); objects * objects];
    for (i, m) in morphisms.iter().enumerate() {
        if m.src >= objects || m.dst >= objects || index.insert(*m, i).is_some() {
            return Err(axiom(Axiom::UnknownMorphism, &[i]));
        }
        homs[m.src * objects + m.dst].push(i);
    }
    let lookup = |m: &Morphism, witness: &[usize]| {
        index
            .get(m)
            .copied()
            .ok_or_else(|| axiom(Axiom::UnknownMorphism, witness))
    };

    let mut table = vec![NONE; n * n];
    for (a, ma) in morphisms.iter().enumerate() {
        for b in (0..objects).flat_map(|o| homs[ma.dst * objects + o].iter().copied()) {
            let c = compose(&morphisms[b], ma);
            let k = lookup(&c, &[b, a])?;
            if c.src != ma.src || c.dst != morphisms[b].dst {
                return Err(axiom(Axiom::Typing, &[b, a]));
            }
            table[b * n + a] = k;
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ba = table[b * n + a];
            if ba == NONE {
                continue;
            }
            for c in 0..n {
                let cb = table[c * n + b];
                if cb != NONE && table[c * n + ba] != table[cb * n + a] {
                    return Err(axiom(Axiom::Associativity, &[c, b, a]));
                }
            }
        }
    }
    let mut identity = vec![NONE; objects];
    for (o, slot) in identity.iter_mut().enumerate() {
        let loops = &homs[o * objects + o];
        let e = loops
            .iter()
            .copied()
            .find(|&e| table[e * n + e] == e)
            .ok_or_else(|| axiom(Axiom::Identity, loops))?;
        for (a, ma) in morphisms.iter().enumerate() {
            if (ma.src == o && table[a * n + e] != a) || (ma.dst == o && table[e * n + a] != a) {
                return Err(axiom(Axiom::Identity, &[e, a]));
            }
        }
        *slot = e;
    }
    let mut inverse = vec![NONE; n];
    for (a, ma) in morphisms.iter().enumerate() {
        inverse[a] = homs[ma.dst * objects + ma.src]
            .iter()
            .copied()
            .find(|&b| table[b * n + a] == identity[ma.src] && table[a * n + b] == identity[ma.dst])
            .ok_or_else(|| axiom(Axiom::Inverse, &[a]))?;
    }

    let order = group.order();
    let mut obj_rows = vec![0; order * objects];
    let mut mor_rows = vec![0; order * n];
    for g in group.elements() {
        for o in 0..objects {
            let go = act_obj(g, o);
            if go >= objects {
                return Err(action_law(ActionLaw::Typing, g, g, o));
            }
            obj_rows[g * objects + o] = go;
        }
        for (a, ma) in morphisms.iter().enumerate() {
            mor_rows[g * n + a] = lookup(&act_mor(g, ma), &[a])?;
        }
    }
    for g in group.elements() {
        for (a, ma) in morphisms.iter().enumerate() {
            let ga = &morphisms[mor_rows[g * n + a]];
            if ga.src != obj_rows[g * objects + ma.src] || ga.dst != obj_rows[g * objects + ma.dst] {
                return Err(action_law(ActionLaw::Typing, g, g, a));
            }
        }
        for b in 0..n {
            for a in 0..n {
                let ba = table[b * n + a];
                if ba != NONE && mor_rows[g * n + ba] != table[mor_rows[g * n + b] * n + mor_rows[g * n + a]] {
                    return Err(action_law(ActionLaw::Functor, g, g, ba));
                }
            }
        }
    }
    if let Some(o) = (0..objects).find(|&o| obj_rows[o] != o) {
        return Err(action_law(ActionLaw::Unit, 0, 0, o));
    }
    if let Some(a) = (0..n).find(|&a| mor_rows[a] != a) {
        return Err(action_law(ActionLaw::Unit, 0, 0, a));
    }
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for o in 0..objects {
                if obj_rows[gh * objects + o] != obj_rows[g * objects + obj_rows[h * objects + o]] {
                    return Err(action_law(ActionLaw::Composition, g, h, o));
                }
            }
            for a in 0..n {
                if mor_rows[gh * n + a] != mor_rows[g * n + mor_rows[h * n + a]] {
                    return Err(action_law(ActionLaw::Composition, g, h, a));
                }
            }
        }
    }
    Ok(GGroupoid {
        group: group.clone(),
        objects,
        morphisms,
        index,
        compose: table,
        identity,
        inverse,
        homs,
        act_obj: obj_rows,
        act_mor: mor_rows,
    })
}

impl GGroupoid {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, a: usize) -> Morphism {
        self.morphisms[a]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn find(&self, m: &Morphism) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects + b]
    }

    /// `β∘α`, or `None` when `α.dst ≠ β.src`.
    pub fn compose(&self, beta: usize, alpha: usize) -> Option<usize> {
        let k = self.compose[beta * self.morphisms.len() + alpha];
        (k != NONE).then_some(k)
    }

    /// Composes a chain written left to right as `γ∘β∘α`.
    pub fn chain(&self, maps: &[usize]) -> usize {
        let (&last, rest) = maps.split_last().expect("nonempty chain");
        rest.iter()
            .rev()
            .fold(last, |acc, &m| self.compose(m, acc).expect("composable chain"))
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn act_obj(&self, g: usize, o: usize) -> usize {
        self.act_obj[g * self.objects + o]
    }

    pub fn act_mor(&self, g: usize, a: usize) -> usize {
        self.act_mor[g * self.morphisms.len() + a]
    }

    pub fn is_connected(&self) -> bool {
        let mut sets = DisjointSets::new(self.objects);
        for m in &self.morphisms {
            sets.union(m.src, m.dst);
        }
        (0..self.objects).all(|o| sets.find(o) == 0)
    }

    /// Nonempty and connected.
    pub fn is_bouquet(&self) -> bool {
        self.objects > 0 && self.is_connected()
    }

    pub fn acts_freely_on_objects(&self) -> bool {
        (0..self.objects).all(|o| self.group.elements().skip(1).all(|g| self.act_obj(g, o) != o))
    }

    /// `Aut(x)` as a group with `id_x` first.
    pub fn vertex_group(&self, x: usize) -> VertexGroup {
        let id = self.identity[x];
        let mut morphisms = vec![id];
        morphisms.extend(self.hom(x, x).iter().copied().filter(|&a| a != id));
        let position: HashMap<usize, usize> = morphisms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let table: Vec<Vec<usize>> = morphisms
            .iter()
            .map(|&a| {
                morphisms
                    .iter()
                    .map(|&b| position[&self.compose(a, b).expect("loops compose")])
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_table(table)
            .expect("automorphisms of an object form a group")
            .with_name(format!("Aut({x})"));
        VertexGroup {
            group,
            morphisms,
            position,
        }
    }
}

impl Serialize for GGroupoid {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Action<'a> {
            objects: Vec<&'a [usize]>,
            morphisms: Vec<&'a [usize]>,
        }
        let n = self.morphisms.len();
        let compose: Vec<[usize; 3]> = (0..n)
            .flat_map(|b| (0..n).map(move |a| (b, a)))
            .filter_map(|(b, a)| self.compose(b, a).map(|c| [b, a, c]))
            .collect();
        let action = Action {
            objects: self.act_obj.chunks(self.objects.max(1)).collect(),
            morphisms: self.act_mor.chunks(n.max(1)).collect(),
        };
        let mut st = s.serialize_struct("GGroupoid", 4)?;
        st.serialize_field("objects", &self.objects)?;
        st.serialize_field("homs", &self.morphisms)?;
        st.serialize_field("compose", &compose)?;
        st.serialize_field("action", &action)?;
        st.end()
    }
}

/// The automorphism group of one object, with `morphisms[i]` the morphism
/// behind group element `i`.
#[derive(Clone, Debug)]
pub struct VertexGroup {
    pub group: FiniteGroup,
    pub morphisms: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl VertexGroup {
    pub fn position(&self, morphism: usize) -> Option<usize> {
        self.position.get(&morphism).copied()
    }
}

/// A one-object `G`-groupoid from a `G`-group.
pub fn one_object(
    g: &FiniteGroup,
    m: &FiniteGroup,
    action: &crate::group::GroupAction,
) -> Result<GGroupoid, BouquetError> {
    let morphisms = m.elements().map(|a| Morphism::new(0, a, 0)).collect();
    make_ggroupoid(
        g,
        1,
        morphisms,
        |b, a| Morphism::new(0, m.mul(b.payload, a.payload), 0),
        |_, o| o,
        |x, a| Morphism::new(0, action.apply(x, a.payload), 0),
    )
}

/// A functor given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Functor {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorCheck {
    pub functorial: bool,
    pub equivariant: bool,
    pub full: bool,
    pub faithful: bool,
    pub essentially_surjective: bool,
    pub bijective: bool,
}

impl FunctorCheck {
    pub fn is_weak_equivalence(&self) -> bool {
        self.functorial && self.equivariant && self.full && self.faithful && self.essentially_surjective
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_weak_equivalence() && self.bijective
    }
}

pub fn check_functor(src: &GGroupoid, dst: &GGroupoid, f: &Functor) -> FunctorCheck {
    let n = src.morphism_count();
    let typed = f.obj.len() == src.objects
        && f.mor.len() == n
        && f.obj.iter().all(|&o| o < dst.objects)
        && f.mor.iter().all(|&a| a < dst.morphism_count());
    if !typed {
        return FunctorCheck {
            functorial: false,
            equivariant: false,
            full: false,
            faithful: false,
            essentially_surjective: false,
            bijective: false,
        };
    }
    let functorial = src.morphisms.iter().enumerate().all(|(a, m)| {
        let fm = dst.morphism(f.mor[a]);
        fm.src == f.obj[m.src] && fm.dst == f.obj[m.dst]
    }) && (0..src.objects).all(|o| f.mor[src.identity(o)] == dst.identity(f.obj[o]))
        && (0..n).all(|b| {
            (0..n).all(|a| match src.compose(b, a) {
                Some(ba) => dst.compose(f.mor[b], f.mor[a]) == Some(f.mor[ba]),
                None => true,
            })
        });
    let equivariant = src.group.order() == dst.group.order()
        && src.group.elements().all(|g| {
            (0..src.objects).all(|o| f.obj[src.act_obj(g, o)] == dst.act_obj(g, f.obj[o]))
                && (0..n).all(|a| f.mor[src.act_mor(g, a)] == dst.act_mor(g, f.mor[a]))
        });
    let mut full = true;
    let mut faithful = true;
    for a in 0..src.objects {
        for b in 0..src.objects {
            let mut images: Vec<usize> = src.hom(a, b).iter().map(|&m| f.mor[m]).collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            faithful &= images.len() == before;
            full &= images.len() == dst.hom(f.obj[a], f.obj[b]).len();
        }
    }
    let essentially_surjective = (0..dst.objects).all(|y| f.obj.iter().any(|&x| !dst.hom(x, y).is_empty()));
    let mut seen_obj = vec![false; dst.objects];
    f.obj.iter().for_each(|&o| seen_obj[o] = true);
    let mut seen_mor = vec![false; dst.morphism_count()];
    f.mor.iter().for_each(|&a| seen_mor[a] = true);
    let bijective = src.objects == dst.objects
        && n == dst.morphism_count()
        && seen_obj.iter().all(|&s| s)
        && seen_mor.iter().all(|&s| s);
    FunctorCheck {
        functorial,
        equivariant,
        full,
        faithful,
        essentially_surjective,
        bijective,
    }
}

/// Replaces the objects by the free `G`-set `G × Ob(Γ)`, with `π(g, a) = ᵍa`.
///
/// Object `(g, a)` has index `g·|Ob| + a`; morphisms `(g,a) → (h,b)` carry a
/// morphism `ᵍa → ʰb` of `Γ` as payload. The projection is returned with the
/// groupoid and checked to be a `G`-equivariant weak equivalence.
pub fn freeify(gamma: &GGroupoid) -> (GGroupoid, Functor) {
    let g = &gamma.group;
    let n_ob = gamma.objects;
    let objects = g.order() * n_ob;
    let pi = |x: usize| gamma.act_obj(x / n_ob, x % n_ob);
    let mut morphisms = Vec::new();
    for x in 0..objects {
        for y in 0..objects {
            for &mu in gamma.hom(pi(x), pi(y)) {
                morphisms.push(Morphism::new(x, mu, y));
            }
        }
    }
    let free = make_ggroupoid(
        g,
        objects,
        morphisms,
        |b, a| Morphism::new(a.src, gamma.compose(b.payload, a.payload).expect("composable"), b.dst),
        |k, x| g.mul(k, x / n_ob) * n_ob + x % n_ob,
        |k, a| {
            let shift = |x: usize| g.mul(k, x / n_ob) * n_ob + x % n_ob;
            Morphism::new(shift(a.src), gamma.act_mor(k, a.payload), shift(a.dst))
        },
    )
    .expect("pulled-back groupoid is a G-groupoid");
    let functor = Functor {
        obj: (0..objects).map(pi).collect(),
        mor: free.morphisms.iter().map(|m| m.payload).collect(),
    };
    let check = check_functor(&free, gamma, &functor);
    assert!(check.is_weak_equivalence(), "projection is a weak equivalence");
    assert!(free.acts_freely_on_objects() || objects == 0);
    (free, functor)
}

/// `ϑ_{g,λ}(α) = λ∘ᵍα∘λ⁻¹` as a table on the vertex group of `x`.
pub fn theta_auto(gamma: &GGroupoid, x: usize, g: usize, lambda: usize) -> Result<Vec<usize>, BouquetError> {
    let l = gamma.morphism(lambda);
    if l.src != gamma.act_obj(g, x) || l.dst != x {
        return Err(BouquetError::TypeMismatch { g, lambda });
    }
    let vg = gamma.vertex_group(x);
    let inv = gamma.inverse(lambda);
    let table: Vec<usize> = vg
        .morphisms
        .iter()
        .map(|&a| {
            vg.position(gamma.chain(&[lambda, gamma.act_mor(g, a), inv]))
                .expect("lands in Aut(x)")
        })
        .collect();
    let hom = GroupHom::new(&vg.group, &vg.group, table.clone()).expect("ϑ is a homomorphism");
    assert!(hom.is_injective(), "ϑ is bijective");
    Ok(table)
}

/// The group of pairs `(g, λ: ᵍx → x)` with `(g,λ)·(h,μ) = (gh, λ∘ᵍμ)`,
/// extending `G` by `Aut(x)`.
#[derive(Clone, Debug)]
pub struct BGamma {
    pub group: FiniteGroup,
    pub base: usize,
    pub pairs: Vec<(usize, usize)>,
    pub vertex: VertexGroup,
    /// `Aut(x) → B_Γ`, `m ↦ (1, m)`
    pub kappa: GroupHom,
    /// `B_Γ → G`, `(g, λ) ↦ g`
    pub p: GroupHom,
    index: HashMap<(usize, usize), usize>,
}

impl BGamma {
    pub fn index_of(&self, g: usize, lambda: usize) -> Option<usize> {
        self.index.get(&(g, lambda)).copied()
    }
}

pub fn b_gamma(gamma: &GGroupoid, x: usize) -> Result<BGamma, BouquetError> {
    if !gamma.is_bouquet() {
        return Err(BouquetError::NotABouquet);
    }
    let g = &gamma.group;
    let vertex = gamma.vertex_group(x);
    let mut pairs: Vec<(usize, usize)> = vertex.morphisms.iter().map(|&a| (0, a)).collect();
    for h in g.elements().skip(1) {
        pairs.extend(gamma.hom(gamma.act_obj(h, x), x).iter().map(|&lam| (h, lam)));
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let table: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(a, lam)| {
            pairs
                .iter()
                .map(|&(b, mu)| {
                    index[&(
                        g.mul(a, b),
                        gamma.compose(lam, gamma.act_mor(a, mu)).expect("composable"),
                    )]
                })
                .collect()
        })
        .collect();
    let group = FiniteGroup::from_table(table)?.with_name(format!("B_Γ({x})"));
    let kappa = GroupHom::new(&vertex.group, &group, (0..vertex.morphisms.len()).collect())?;
    let p = GroupHom::new(&group, g, pairs.iter().map(|&(h, _)| h).collect())?;
    assert_eq!(group.order(), vertex.group.order() * g.order(), "|B_Γ| = |Aut(x)|·|G|");
    assert!(p.is_surjective(g) && p.kernel() == (0..vertex.morphisms.len()).collect::<Vec<_>>());
    Ok(BGamma {
        group,
        base: x,
        pairs,
        vertex,
        kappa,
        p,
        index,
    })
}

/// `Γ(B)`: objects `G`, morphisms `(f, b, g)` with `σ(b) = g⁻¹f`, composition
/// `(g,c,h)∘(f,b,g) = (f,cb,h)` and `ʰ(f,b,g) = (hf,b,hg)`.
pub fn gamma_of_extension(b: &FiniteGroup, sigma: &GroupHom, g: &FiniteGroup) -> GGroupoid {
    let mut morphisms = Vec::new();
    for f in g.elements() {
        for h in g.elements() {
            let need = g.mul(g.inv(h), f);
            morphisms.extend(
                b.elements()
                    .filter(|&y| sigma.apply(y) == need)
                    .map(|y| Morphism::new(f, y, h)),
            );
        }
    }
    let gamma = make_ggroupoid(
        g,
        g.order(),
        morphisms,
        |c, a| Morphism::new(a.src, b.mul(c.payload, a.payload), c.dst),
        |h, f| g.mul(h, f),
        |h, a| Morphism::new(g.mul(h, a.src), a.payload, g.mul(h, a.dst)),
    )
    .expect("Γ(B) is a G-groupoid");
    assert!(gamma.is_bouquet());
    gamma
}

/// `(g, (g, b, 1)) ↦ b` from `B_{Γ(B)}` at the object `1` back to `B`,
/// checked to be an isomorphism over `G`.
pub fn pair_group_to_extension(gamma_b: &GGroupoid, bg: &BGamma, b: &FiniteGroup, sigma: &GroupHom) -> Vec<usize> {
    let map: Vec<usize> = bg.pairs.iter().map(|&(_, lam)| gamma_b.morphism(lam).payload).collect();
    let hom = GroupHom::new(&bg.group, b, map.clone()).expect("pair group maps homomorphically");
    assert!(hom.is_injective() && bg.group.order() == b.order());
    assert!(bg.group.elements().all(|i| sigma.apply(map[i]) == bg.p.apply(i)));
    map
}

/// `Ψ: Γ(B_Γ) → Γ`, `Ψ(g) = ᵍx`, `Ψ(f, (k, λ), g) = ᵍλ`.
pub fn psi(gamma: &GGroupoid, bg: &BGamma, gamma_of_bg: &GGroupoid) -> Functor {
    let g = &gamma.group;
    Functor {
        obj: g.elements().map(|h| gamma.act_obj(h, bg.base)).collect(),
        mor: gamma_of_bg
            .morphisms
            .iter()
            .map(|m| gamma.act_mor(m.dst, bg.pairs[m.payload].1))
            .collect(),
    }
}

/// The full one-object subgroupoid at a `G`-fixed object, with its
/// inclusion.
pub fn fixed_object_subgroupoid(gamma: &GGroupoid, x: usize) -> Result<(GGroupoid, Functor), BouquetError> {
    if gamma.group.elements().any(|g| gamma.act_obj(g, x) != x) {
        return Err(BouquetError::NotFixed { object: x });
    }
    let loops = gamma.hom(x, x).to_vec();
    let sub = make_ggroupoid(
        &gamma.group,
        1,
        loops.iter().map(|&a| Morphism::new(0, a, 0)).collect(),
        |b, a| Morphism::new(0, gamma.compose(b.payload, a.payload).expect("loops"), 0),
        |_, o| o,
        |g, a| Morphism::new(0, gamma.act_mor(g, a.payload), 0),
    )?;
    let inclusion = Functor {
        obj: vec![x],
        mor: loops,
    };
    Ok((sub, inclusion))
}

/// A bouquet over `M → L`: a base object `a`, `η: M ≅ Aut(a)` and
/// `θ_{g,λ} ∈ L` for every `λ: ᵍa → a`.
#[derive(Clone, Debug)]
pub struct BouquetOverXM {
    pub gamma: GGroupoid,
    pub base: usize,
    /// `η(m)` as a morphism index
    pub eta: Vec<usize>,
    pub pairs: BGamma,
    /// `θ` indexed by elements of the pair group
    pub theta: Vec<usize>,
    /// The pair group as an `(M → L)`-extension with `ϱ = θ`.
    pub extension: Extension,
    xm: CrossedModule,
    eta_inv: HashMap<usize, usize>,
}

impl BouquetOverXM {
    pub fn crossed_module(&self) -> &CrossedModule {
        &self.xm
    }

    pub fn theta_of(&self, g: usize, lambda: usize) -> Option<usize> {
        self.pairs.index_of(g, lambda).map(|i| self.theta[i])
    }

    pub fn eta_inv(&self, morphism: usize) -> Option<usize> {
        self.eta_inv.get(&morphism).copied()
    }
}

/// Validates a bouquet over `M → L`.
///
/// Besides `θ_{1,η(m)} = ∂(m)` and `λ∘ᵍη(α)∘λ⁻¹ = η(^θ α)`, `θ` must be
/// multiplicative on the pair group, and the pair group with `ϱ = θ` is then
/// checked as an `(M → L)`-extension.
pub fn make_bouquet_over_xm(
    gamma: GGroupoid,
    base: usize,
    eta: Vec<usize>,
    theta: impl Fn(usize, usize) -> usize,
    xm: &CrossedModule,
) -> Result<BouquetOverXM, BouquetError> {
    let pairs = b_gamma(&gamma, base)?;
    let m = xm.m();
    if eta.len() != m.order() {
        return Err(BouquetError::EtaNotIso { m: eta.len() });
    }
    let mut table = Vec::with_capacity(m.order());
    for (a, &mor) in eta.iter().enumerate() {
        table.push(pairs.vertex.position(mor).ok_or(BouquetError::EtaNotIso { m: a })?);
    }
    let hom = GroupHom::new(m, &pairs.vertex.group, table.clone()).map_err(|e| match e {
        GroupError::NotHomomorphism { x, .. } => BouquetError::EtaNotIso { m: x },
        other => other.into(),
    })?;
    if !hom.is_injective() || m.order() != pairs.vertex.group.order() {
        return Err(BouquetError::EtaNotIso { m: 0 });
    }
    let eta_inv: HashMap<usize, usize> = eta.iter().enumerate().map(|(a, &mor)| (mor, a)).collect();
    let theta_table: Vec<usize> = pairs.pairs.iter().map(|&(g, lam)| theta(g, lam)).collect();
    if theta_table.iter().any(|&t| t >= xm.l().order()) {
        return Err(BouquetError::ThetaMismatch { g: 0, lambda: 0, m: 0 });
    }
    for (a, &mor) in eta.iter().enumerate() {
        if theta_table[pairs.index_of(0, mor).expect("loop pair")] != xm.d(a) {
            return Err(BouquetError::ThetaMismatch {
                g: 0,
                lambda: mor,
                m: a,
            });
        }
    }
    for (i, &(g, lam)) in pairs.pairs.iter().enumerate() {
        let inv = gamma.inverse(lam);
        for (a, &mor) in eta.iter().enumerate() {
            let lhs = gamma.chain(&[lam, gamma.act_mor(g, mor), inv]);
            if lhs != eta[xm.act(theta_table[i], a)] {
                return Err(BouquetError::ThetaMismatch { g, lambda: lam, m: a });
            }
        }
    }
    let varrho = GroupHom::new(&pairs.group, xm.l(), theta_table.clone()).map_err(|e| match e {
        GroupError::NotHomomorphism { x, y } => BouquetError::ThetaNotMultiplicative { a: x, b: y },
        other => other.into(),
    })?;
    let kappa = GroupHom::new(
        m,
        &pairs.group,
        eta.iter()
            .map(|&mor| pairs.index_of(0, mor).expect("loop pair"))
            .collect(),
    )?;
    let extension = make_extension(pairs.group.clone(), kappa, pairs.p.clone(), varrho, gamma.group(), xm)?;
    Ok(BouquetOverXM {
        gamma,
        base,
        eta,
        pairs,
        theta: theta_table,
        extension,
        xm: xm.clone(),
        eta_inv,
    })
}

/// Any bouquet is defined over `M → Aut(M)` with `θ = ϑ`, for `M` the
/// vertex group at `a` and `η` the identity.
pub fn over_aut(gamma: GGroupoid, a: usize) -> Result<(BouquetOverXM, CrossedModule), BouquetError> {
    let vg = gamma.vertex_group(a);
    let one = crate::group::trivial_group();
    let xm = aut(
        &vg.group,
        &one,
        &crate::group::GroupAction::trivial(&one, vg.group.order()),
    )
    .expect("Aut(M) is a crossed module")
    .base()
    .clone();
    let auts = automorphism_group(&vg.group);
    let mut thetas = HashMap::new();
    for h in gamma.group.elements() {
        for &lam in gamma.hom(gamma.act_obj(h, a), a) {
            let table = theta_auto(&gamma, a, h, lam)?;
            thetas.insert((h, lam), auts.index_of(&table).expect("ϑ is an automorphism"));
        }
    }
    let eta = vg.morphisms.clone();
    let bq = make_bouquet_over_xm(gamma, a, eta, |h, lam| thetas[&(h, lam)], &xm)?;
    Ok((bq, xm))
}

/// All families `λ_g: ᵍa → a` with `λ_1 = id`, lexicographically.
pub fn families(bq: &BouquetOverXM) -> Vec<Vec<usize>> {
    let gamma = &bq.gamma;
    let a = bq.base;
    let choices: Vec<&[usize]> = gamma
        .group
        .elements()
        .skip(1)
        .map(|g| gamma.hom(gamma.act_obj(g, a), a))
        .collect();
    let radices: Vec<usize> = choices.iter().map(|c| c.len()).collect();
    let mut out = Vec::new();
    for_each_tuple::<()>(&radices, |pick| {
        let mut fam = vec![gamma.identity(a)];
        fam.extend(pick.iter().zip(&choices).map(|(&k, c)| c[k]));
        out.push(fam);
        Ok(())
    })
    .expect("infallible");
    out
}

fn check_family(bq: &BouquetOverXM, family: &[usize]) -> Result<(), BouquetError> {
    let gamma = &bq.gamma;
    if family.len() != gamma.group.order() || family[0] != gamma.identity(bq.base) {
        return Err(BouquetError::BadFamily { g: 0 });
    }
    for (g, &lam) in family.iter().enumerate() {
        let m = gamma.morphisms.get(lam).ok_or(BouquetError::BadFamily { g })?;
        if m.src != gamma.act_obj(g, bq.base) || m.dst != bq.base {
            return Err(BouquetError::BadFamily { g });
        }
    }
    Ok(())
}

/// `φ(g) = θ_{g,λ_g}` and `f(g,h) = η⁻¹(λ_{gh}∘ᵍλ_h⁻¹∘λ_g⁻¹)`.
pub fn bouquet_to_cocycle(bq: &BouquetOverXM, family: &[usize]) -> Result<Cocycle2, BouquetError> {
    check_family(bq, family)?;
    let gamma = &bq.gamma;
    let g = gamma.group();
    let n = g.order();
    let phi: Vec<usize> = g
        .elements()
        .map(|x| bq.theta_of(x, family[x]).expect("family pair"))
        .collect();
    let mut f = vec![0; n * n];
    for x in g.elements() {
        for y in g.elements() {
            let loop_ = gamma.chain(&[
                family[g.mul(x, y)],
                gamma.act_mor(x, gamma.inverse(family[y])),
                gamma.inverse(family[x]),
            ]);
            f[x * n + y] = bq.eta_inv(loop_).expect("loop at the base object");
        }
    }
    let c = Cocycle2 { f, phi };
    check_cocycle2(g, &bq.xm, &c).map_err(|_| BouquetError::NotACocycle)?;
    Ok(c)
}

/// `s(g) = η⁻¹(λ'_g∘λ_g⁻¹)`; the cocycle of `λ'` is carried to that of `λ`
/// by the thick witness `s`, which is asserted.
pub fn family_change(bq: &BouquetOverXM, family: &[usize], family2: &[usize]) -> Result<Vec<usize>, BouquetError> {
    let c = bouquet_to_cocycle(bq, family)?;
    let c2 = bouquet_to_cocycle(bq, family2)?;
    let gamma = &bq.gamma;
    let s: Vec<usize> = family
        .iter()
        .zip(family2)
        .map(|(&l, &l2)| {
            bq.eta_inv(gamma.compose(l2, gamma.inverse(l)).expect("composable"))
                .expect("loop")
        })
        .collect();
    let w = Witness2 { t: s.clone(), tau: 0 };
    assert_eq!(
        transform2(gamma.group(), &bq.xm, &c2, &w),
        c,
        "family change is a thick coboundary"
    );
    Ok(s)
}

/// The thick class of the bouquet's cocycle for `family`.
pub fn characteristic_class(
    bq: &BouquetOverXM,
    family: &[usize],
    thick: &ClassSet<Cocycle2>,
) -> Result<Option<usize>, BouquetError> {
    Ok(thick.class_of(&bouquet_to_cocycle(bq, family)?))
}

/// `Γ(φ, f)`: objects `G`, morphisms `(g, α, h)` for `α ∈ M`, action
/// `ᵗ(g,α,h) = (tg, f(t,h)·^φ(t)α·f(t,g)⁻¹, th)`, base object `1`,
/// `η(α) = (1,α,1)` and `θ_{g,(g,λ,1)} = ∂(λ)·φ(g)`.
pub fn bouquet_of_cocycle(c: &Cocycle2, g: &FiniteGroup, xm: &CrossedModule) -> Result<BouquetOverXM, BouquetError> {
    check_cocycle2(g, xm, c).map_err(|_| BouquetError::NotACocycle)?;
    let (m, l) = (xm.m(), xm.l());
    let mut morphisms = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            morphisms.extend(m.elements().map(|a| Morphism::new(x, a, y)));
        }
    }
    let gamma = make_ggroupoid(
        g,
        g.order(),
        morphisms,
        |b, a| Morphism::new(a.src, m.mul(b.payload, a.payload), b.dst),
        |t, x| g.mul(t, x),
        |t, a| {
            let payload = m.product(&[c.f(t, a.dst), xm.act(c.phi(t), a.payload), m.inv(c.f(t, a.src))]);
            Morphism::new(g.mul(t, a.src), payload, g.mul(t, a.dst))
        },
    )?;
    let eta: Vec<usize> = m
        .elements()
        .map(|a| gamma.find(&Morphism::new(0, a, 0)).expect("loop"))
        .collect();
    let theta = |x: usize, lam: usize| l.mul(xm.d(gamma.morphism(lam).payload), c.phi(x));
    let gamma2 = gamma.clone();
    make_bouquet_over_xm(gamma2, 0, eta, theta, xm)
}

/// The family `λ_g = (g, 1, 1)` of `Γ(φ, f)`.
pub fn standard_family(bq: &BouquetOverXM) -> Vec<usize> {
    bq.gamma
        .group()
        .elements()
        .map(|x| bq.gamma.find(&Morphism::new(x, 0, 0)).expect("standard morphism"))
        .collect()
}

/// A functor between bouquets over the same crossed module is defined over
/// it when it keeps the base object, `η` and `θ`.
pub fn defined_over(src: &BouquetOverXM, dst: &BouquetOverXM, f: &Functor) -> bool {
    f.obj[src.base] == dst.base
        && src.eta.iter().zip(&dst.eta).all(|(&a, &b)| f.mor[a] == b)
        && src
            .pairs
            .pairs
            .iter()
            .enumerate()
            .all(|(i, &(g, lam))| dst.theta_of(g, f.mor[lam]) == Some(src.theta[i]))
}

/// `F(g, α, h) = (g, s(h)⁻¹·α·s(g), h)` from `Γ(c)` to `Γ(c')`, where `s` is
/// a thick witness carrying `c` to `c'`.
pub fn coboundary_functor(src: &BouquetOverXM, dst: &BouquetOverXM, s: &[usize]) -> Functor {
    let m = src.xm.m();
    Functor {
        obj: (0..src.gamma.object_count()).collect(),
        mor: src
            .gamma
            .morphisms
            .iter()
            .map(|a| {
                let payload = m.product(&[m.inv(s[a.dst]), a.payload, s[a.src]]);
                dst.gamma
                    .find(&Morphism::new(a.src, payload, a.dst))
                    .expect("same shape")
            })
            .collect(),
    }
}

/// `T(g) = ᵍx`, `T(g, α, h) = λ_h⁻¹∘η(α)∘λ_g` from `Γ(φ, f)` (the cocycle of
/// `family`) into the bouquet itself.
pub fn comparison_functor(model: &BouquetOverXM, bq: &BouquetOverXM, family: &[usize]) -> Functor {
    let gamma = &bq.gamma;
    Functor {
        obj: model
            .gamma
            .group()
            .elements()
            .map(|g| gamma.act_obj(g, bq.base))
            .collect(),
        mor: model
            .gamma
            .morphisms
            .iter()
            .map(|a| gamma.chain(&[gamma.inverse(family[a.dst]), bq.eta[a.payload], family[a.src]]))
            .collect(),
    }
}
