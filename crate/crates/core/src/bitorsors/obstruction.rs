//! The obstruction class `o(a) ∈ H²(G, A)` of an element `a ∈ Qᴳ`.

use serde::Serialize;

use super::BitorsorError;
use crate::bouquets::{b_gamma, make_ggroupoid, GGroupoid, Morphism};
use crate::cohomology::{classical_h2, h0_of_action, ClassSet, Cocycle1, FactorSet};
use crate::extensions::{make_extension, Extension};
use crate::group::{FiniteGroup, GroupHom};
use crate::search::{for_each_tuple, Budget};
use crate::xmod::{crossed_extension_parts, trivial_module, CrossedExtensionParts, EquivariantCrossedModule};

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub a: usize,
    pub l_a: Vec<usize>,
    pub chosen_x: usize,
    /// Elements `(m, g)` of the extension group, in index order.
    pub b_ext_elements: Vec<(usize, usize)>,
    pub factor_set: FactorSet,
    pub o_class: usize,
    pub vanishes: bool,
    pub bitorsor_witness: Option<Cocycle1>,
    /// `B_ext` as an extension over `A → G`.
    #[serde(skip)]
    pub b_ext: Extension,
}

/// `B^x`: pairs `(m, g)` with `∂(m)·ᵍx = x` and `(m,g)(n,h) = (m·ᵍn, gh)`.
struct PairGroup {
    group: FiniteGroup,
    pairs: Vec<(usize, usize)>,
}

impl PairGroup {
    fn index(&self, m: usize, g: usize) -> usize {
        self.pairs.iter().position(|&p| p == (m, g)).expect("pair in B^x")
    }
}

fn pair_group(exm: &EquivariantCrossedModule, x: usize) -> PairGroup {
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    let mut pairs = Vec::new();
    for h in g.elements() {
        for a in m.elements() {
            if l.mul(exm.base().d(a), exm.g_l(h, x)) == x {
                pairs.push((a, h));
            }
        }
    }
    let position = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("closed under the law");
    let table = pairs
        .iter()
        .map(|&(a, h)| {
            pairs
                .iter()
                .map(|&(b, k)| position((m.mul(a, exm.g_m(h, b)), g.mul(h, k))))
                .collect()
        })
        .collect();
    let group = FiniteGroup::from_table(table)
        .expect("B^x is a group")
        .with_name(format!("B^{x}"));
    PairGroup { group, pairs }
}

/// `B^x` as an extension over the trivial-boundary crossed module `A → G`,
/// which checks exactness and that conjugation on `A` is the `G`-action.
fn as_extension(exm: &EquivariantCrossedModule, parts: &CrossedExtensionParts, b: &PairGroup) -> Extension {
    let a = &parts.a;
    let xm = trivial_module(&a.group, exm.g(), &parts.g_on_a).expect("A is a G-module");
    let kappa = GroupHom::new(&a.group, &b.group, a.embedding.iter().map(|&m| b.index(m, 0)).collect())
        .expect("κ(α) = (α, 1) is a homomorphism");
    let p = GroupHom::new(&b.group, exm.g(), b.pairs.iter().map(|&(_, h)| h).collect()).expect("p is a homomorphism");
    make_extension(b.group.clone(), kappa, p.clone(), p, exm.g(), &xm).expect("B^x is an extension of G by A")
}

/// `c(g,h) = s(g)·s(h)·s(gh)⁻¹` for the section `s(g) = (ψ(g), g)`.
fn factor_set(
    exm: &EquivariantCrossedModule,
    parts: &CrossedExtensionParts,
    b: &PairGroup,
    psi: &[usize],
) -> FactorSet {
    let g = exm.g();
    let n = g.order();
    let s: Vec<usize> = g.elements().map(|h| b.index(psi[h], h)).collect();
    let mut f = vec![0; n * n];
    for x in g.elements() {
        for y in g.elements() {
            let c = b.group.product(&[s[x], s[y], b.group.inv(s[g.mul(x, y)])]);
            let (m, k) = b.pairs[c];
            assert_eq!(k, 0, "s(g)s(h)s(gh)⁻¹ lies over 1");
            f[x * n + y] = parts.a.index_of(m).expect("lies in A");
        }
    }
    FactorSet { order: n, f }
}

/// All `ψ: G → M` with `ψ(1) = 1` and `∂(ψ(g))·ᵍx = x`.
fn section_choices(
    exm: &EquivariantCrossedModule,
    x: usize,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>, BitorsorError> {
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    let fibers: Vec<Vec<usize>> = g
        .elements()
        .skip(1)
        .map(|h| {
            m.elements()
                .filter(|&a| l.mul(exm.base().d(a), exm.g_l(h, x)) == x)
                .collect()
        })
        .collect();
    let radices: Vec<usize> = fibers.iter().map(Vec::len).collect();
    let mut out = Vec::new();
    for_each_tuple(&radices, |pick| {
        budget.charge(1)?;
        let mut psi = vec![0];
        psi.extend(pick.iter().zip(&fibers).map(|(&k, f)| f[k]));
        out.push(psi);
        Ok::<(), BitorsorError>(())
    })?;
    Ok(out)
}

/// `Γ_a`: objects `L_a`, morphisms `(x, m, y)` with `y = ∂(m)·x`.
fn gamma_a(exm: &EquivariantCrossedModule, l_a: &[usize]) -> GGroupoid {
    let (m, l) = (exm.m(), exm.l());
    let obj = |x: usize| {
        l_a.iter()
            .position(|&y| y == x)
            .expect("L_a is G-invariant and ∂-stable")
    };
    let mut morphisms = Vec::new();
    for (i, &x) in l_a.iter().enumerate() {
        for a in m.elements() {
            morphisms.push(Morphism::new(i, a, obj(l.mul(exm.base().d(a), x))));
        }
    }
    make_ggroupoid(
        exm.g(),
        l_a.len(),
        morphisms,
        |b, a| Morphism::new(a.src, m.mul(b.payload, a.payload), b.dst),
        |h, i| obj(exm.g_l(h, l_a[i])),
        |h, a| {
            Morphism::new(
                obj(exm.g_l(h, l_a[a.src])),
                exm.g_m(h, a.payload),
                obj(exm.g_l(h, l_a[a.dst])),
            )
        },
    )
    .expect("Γ_a is a G-groupoid")
}

/// Computes `o(a)` and decides whether a bitorsor with `π* = a` exists,
/// once by searching for a homomorphic section and once by comparing the
/// class with the trivial class.
pub fn obstruction(
    exm: &EquivariantCrossedModule,
    a: usize,
    budget: &Budget,
) -> Result<ObstructionReport, BitorsorError> {
    let parts = crossed_extension_parts(exm);
    let classes = classical_h2(exm.g(), &parts.a.group, &parts.g_on_a, budget)?;
    obstruction_with(exm, &parts, &classes, a, budget)
}

/// `o(a)` for every `a ∈ Qᴳ`.
pub fn obstruction_all(
    exm: &EquivariantCrossedModule,
    budget: &Budget,
) -> Result<Vec<ObstructionReport>, BitorsorError> {
    let parts = crossed_extension_parts(exm);
    let classes = classical_h2(exm.g(), &parts.a.group, &parts.g_on_a, budget)?;
    h0_of_action(&parts.g_on_q)
        .into_iter()
        .map(|a| obstruction_with(exm, &parts, &classes, a, budget))
        .collect()
}

fn obstruction_with(
    exm: &EquivariantCrossedModule,
    parts: &CrossedExtensionParts,
    classes: &ClassSet<FactorSet>,
    a: usize,
    budget: &Budget,
) -> Result<ObstructionReport, BitorsorError> {
    let g = exm.g();
    let (m, l) = (exm.m(), exm.l());
    if a >= parts.q.group.order() || g.elements().any(|h| parts.g_on_q.apply(h, a) != a) {
        return Err(BitorsorError::NotFixedPoint { a });
    }
    let l_a = parts.fiber(a);
    assert!(
        l_a.iter().all(|&x| g.elements().all(|h| l_a.contains(&exm.g_l(h, x)))),
        "L_a is G-invariant"
    );
    assert_eq!(l_a.len(), exm.base().boundary().image().len(), "|L_a| = |Im ∂|");
    let x = l_a[0];

    let gamma = gamma_a(exm, &l_a);
    assert!(gamma.is_bouquet(), "Γ_a is a bouquet");
    let vg = gamma.vertex_group(0);
    let to_vertex: Vec<usize> = parts
        .a
        .embedding
        .iter()
        .map(|&al| {
            vg.position(gamma.find(&Morphism::new(0, al, 0)).expect("(x, α, x)"))
                .expect("a loop")
        })
        .collect();
    let iso = GroupHom::new(&parts.a.group, &vg.group, to_vertex).expect("A → Aut(x) is a homomorphism");
    assert!(
        iso.is_injective() && vg.group.order() == parts.a.group.order(),
        "A ≅ Aut(x)"
    );

    let b = pair_group(exm, x);
    let bg = b_gamma(&gamma, 0)?;
    let to_pairs: Vec<usize> = bg
        .pairs
        .iter()
        .map(|&(h, lam)| b.index(gamma.morphism(lam).payload, h))
        .collect();
    let iso = GroupHom::new(&bg.group, &b.group, to_pairs).expect("B_Γ → B^x is a homomorphism");
    assert!(iso.is_injective() && bg.group.order() == b.group.order(), "B_Γ ≅ B^x");
    let b_ext = as_extension(exm, parts, &b);

    let sections = section_choices(exm, x, budget)?;
    let factor = factor_set(exm, parts, &b, &sections[0]);
    let o_class = classes.class_of(&factor).expect("a normalized factor set");
    for psi in &sections[1..] {
        assert_eq!(
            classes.class_of(&factor_set(exm, parts, &b, psi)),
            Some(o_class),
            "o(a) does not depend on the section"
        );
    }
    for &y in &l_a[1..] {
        let n = m
            .elements()
            .find(|&n| l.mul(exm.base().d(n), x) == y)
            .expect("L_a is one ∂-orbit");
        let b_y = pair_group(exm, y);
        let eta: Vec<usize> = b
            .pairs
            .iter()
            .map(|&(mm, h)| b_y.index(m.product(&[n, mm, exm.g_m(h, m.inv(n))]), h))
            .collect();
        let hom = GroupHom::new(&b.group, &b_y.group, eta.clone()).expect("η is a homomorphism");
        assert!(hom.is_injective() && b.group.order() == b_y.group.order());
        for &al in &parts.a.embedding {
            assert_eq!(eta[b.index(al, 0)], b_y.index(al, 0), "η is the identity on A");
        }
        let sections_y = section_choices(exm, y, budget)?;
        assert_eq!(
            classes.class_of(&factor_set(exm, parts, &b_y, &sections_y[0])),
            Some(o_class),
            "o(a) does not depend on x"
        );
    }

    let trivial = classes.class_of(&FactorSet {
        order: g.order(),
        f: vec![0; g.order() * g.order()],
    });
    let by_class = Some(o_class) == trivial;
    let split = sections.iter().find(|psi| {
        g.elements().all(|h| {
            g.elements()
                .all(|k| psi[g.mul(h, k)] == m.mul(psi[h], exm.g_m(h, psi[k])))
        })
    });
    assert_eq!(split.is_some(), by_class, "section search and class triviality agree");
    let bitorsor_witness = split.map(|psi| Cocycle1 { f: psi.clone(), tau: x });
    if let Some(c) = &bitorsor_witness {
        crate::cohomology::check_cocycle1(exm, c).expect("(ψ, x) is a degree-1 cocycle");
        assert_eq!(parts.pi(c.tau), a);
    }
    Ok(ObstructionReport {
        a,
        l_a,
        chosen_x: x,
        b_ext_elements: b.pairs.clone(),
        factor_set: factor,
        o_class,
        vanishes: by_class,
        bitorsor_witness,
        b_ext,
    })
}
