//! Crossed modules, their equivariant versions, the standard constructions,
//! and the kernel/cokernel parts `1 → A → M → L → Q → 1`.
//!
//! Notation: for `x ∈ L` and `m ∈ M`, `ˣm` is [`CrossedModule::act`]; for
//! `x ∈ G`, `ˣm` and `ˣt` are [`EquivariantCrossedModule::g_m`] and
//! [`EquivariantCrossedModule::g_l`].

use serde::Serialize;
use thiserror::Error;

use crate::aut::automorphism_group;
use crate::group::{cyclic, cyclic_named, FiniteGroup, GroupAction, GroupError, GroupHom, Quotient, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum XmodError {
    /// `∂(ˣm) ≠ x ∂(m) x⁻¹`
    #[error("CM1 fails at x = {x}, m = {m}")]
    Cm1Violation { x: usize, m: usize },
    /// `^(∂n)m ≠ n m n⁻¹`
    #[error("Peiffer identity fails at n = {n}, m = {m}")]
    Cm2Violation { n: usize, m: usize },
    #[error("boundary is not G-equivariant at x = {x}, m = {m}")]
    BoundaryNotEquivariant { x: usize, m: usize },
    #[error("G-action does not commute with the L-action at x = {x}, t = {t}, m = {m}")]
    ActionsNotCompatible { x: usize, t: usize, m: usize },
    #[error("group {name} is not abelian: {a} and {b} do not commute")]
    NotAbelian { name: String, a: usize, b: usize },
    #[error(transparent)]
    #[serde(untagged)]
    Group(#[from] GroupError),
}

/// A crossed module `∂: M → L` with a left action of `L` on `M`.
#[derive(Clone, Debug)]
pub struct CrossedModule {
    m: FiniteGroup,
    l: FiniteGroup,
    boundary: GroupHom,
    l_action: GroupAction,
}

impl CrossedModule {
    /// Validates both crossed-module axioms exhaustively.
    pub fn new(m: FiniteGroup, l: FiniteGroup, boundary: GroupHom, l_action: GroupAction) -> Result<Self, XmodError> {
        // re-validate the parts against these particular groups
        let boundary = GroupHom::new(&m, &l, boundary.table().to_vec())?;
        let l_action = GroupAction::from_flat_on_group(&l, &m, l_action.to_rows().concat())?;
        for x in l.elements() {
            for mm in m.elements() {
                if boundary.apply(l_action.apply(x, mm)) != l.conj(x, boundary.apply(mm)) {
                    return Err(XmodError::Cm1Violation { x, m: mm });
                }
            }
        }
        for n in m.elements() {
            for mm in m.elements() {
                if l_action.apply(boundary.apply(n), mm) != m.conj(n, mm) {
                    return Err(XmodError::Cm2Violation { n, m: mm });
                }
            }
        }
        Ok(CrossedModule {
            m,
            l,
            boundary,
            l_action,
        })
    }

    pub fn m(&self) -> &FiniteGroup {
        &self.m
    }

    pub fn l(&self) -> &FiniteGroup {
        &self.l
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn l_action(&self) -> &GroupAction {
        &self.l_action
    }

    /// `∂(m)`
    #[inline]
    pub fn d(&self, m: usize) -> usize {
        self.boundary.apply(m)
    }

    /// `ˣm` for `x ∈ L`.
    #[inline]
    pub fn act(&self, x: usize, m: usize) -> usize {
        self.l_action.apply(x, m)
    }

    /// Elements of `L` acting trivially on `M`, i.e. the kernel of `ρ`.
    pub fn rho_kernel(&self) -> Vec<usize> {
        self.l
            .elements()
            .filter(|&x| self.m.elements().all(|mm| self.act(x, mm) == mm))
            .collect()
    }

    /// `ρ: L → Aut(M)` injective.
    pub fn is_faithful(&self) -> bool {
        self.rho_kernel().len() == 1
    }

    /// The canonical morphism `(id, ρ)` into `M → Aut(M)`: returns that
    /// crossed module and the table of `ρ`.
    pub fn to_aut(&self) -> (CrossedModule, Vec<usize>) {
        let (aut, _) = aut_crossed_module(&self.m);
        let auts = automorphism_group(&self.m);
        let rho = self
            .l
            .elements()
            .map(|x| auts.index_of(self.l_action.row(x)).expect("L acts by automorphisms"))
            .collect();
        (aut, rho)
    }
}

fn aut_crossed_module(m: &FiniteGroup) -> (CrossedModule, crate::aut::AutomorphismGroup) {
    let auts = automorphism_group(m);
    let boundary: Vec<usize> = m.elements().map(|x| auts.inner(m, x)).collect();
    let xm = CrossedModule::new(
        m.clone(),
        auts.group.clone(),
        GroupHom::new(m, &auts.group, boundary).expect("inner automorphism map is a homomorphism"),
        auts.action(),
    )
    .expect("M → Aut(M) is a crossed module");
    (xm, auts)
}

/// A crossed module with compatible actions of a group `G` on `M` and `L`.
#[derive(Clone, Debug)]
pub struct EquivariantCrossedModule {
    name: String,
    base: CrossedModule,
    g: FiniteGroup,
    g_on_m: GroupAction,
    g_on_l: GroupAction,
}

impl EquivariantCrossedModule {
    /// Validates `∂(ˣm) = ˣ∂(m)` and `ˣ(ᵗm) = ^(ˣt)(ˣm)` for all `x ∈ G`.
    pub fn new(
        base: CrossedModule,
        g: FiniteGroup,
        g_on_m: GroupAction,
        g_on_l: GroupAction,
    ) -> Result<Self, XmodError> {
        let g_on_m = GroupAction::from_flat_on_group(&g, base.m(), g_on_m.to_rows().concat())?;
        let g_on_l = GroupAction::from_flat_on_group(&g, base.l(), g_on_l.to_rows().concat())?;
        for x in g.elements() {
            for m in base.m().elements() {
                if base.d(g_on_m.apply(x, m)) != g_on_l.apply(x, base.d(m)) {
                    return Err(XmodError::BoundaryNotEquivariant { x, m });
                }
                for t in base.l().elements() {
                    let lhs = g_on_m.apply(x, base.act(t, m));
                    let rhs = base.act(g_on_l.apply(x, t), g_on_m.apply(x, m));
                    if lhs != rhs {
                        return Err(XmodError::ActionsNotCompatible { x, t, m });
                    }
                }
            }
        }
        Ok(EquivariantCrossedModule {
            name: format!("({} -> {})", base.m().name(), base.l().name()),
            base,
            g,
            g_on_m,
            g_on_l,
        })
    }

    /// `G` acting trivially on both groups.
    pub fn with_trivial_action(base: CrossedModule, g: FiniteGroup) -> Self {
        let g_on_m = GroupAction::trivial(&g, base.m().order());
        let g_on_l = GroupAction::trivial(&g, base.l().order());
        Self::new(base, g, g_on_m, g_on_l).expect("trivial actions are equivariant")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &CrossedModule {
        &self.base
    }

    pub fn m(&self) -> &FiniteGroup {
        self.base.m()
    }

    pub fn l(&self) -> &FiniteGroup {
        self.base.l()
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn g_on_m(&self) -> &GroupAction {
        &self.g_on_m
    }

    pub fn g_on_l(&self) -> &GroupAction {
        &self.g_on_l
    }

    /// `ˣm` for `x ∈ G`.
    #[inline]
    pub fn g_m(&self, x: usize, m: usize) -> usize {
        self.g_on_m.apply(x, m)
    }

    /// `ˣt` for `x ∈ G`, `t ∈ L`.
    #[inline]
    pub fn g_l(&self, x: usize, t: usize) -> usize {
        self.g_on_l.apply(x, t)
    }

    pub fn is_faithful(&self) -> bool {
        self.base.is_faithful()
    }
}

/// `ι: M → Aut(M)` with `G` acting on `Aut(M)` by `(ˣα)(m) = ˣ(α(ˣ⁻¹m))`.
pub fn aut(m: &FiniteGroup, g: &FiniteGroup, g_on_m: &GroupAction) -> Result<EquivariantCrossedModule, XmodError> {
    let (base, auts) = aut_crossed_module(m);
    let g_on_m = GroupAction::from_flat_on_group(g, m, g_on_m.to_rows().concat())?;
    let mut rows = Vec::with_capacity(g.order());
    for x in g.elements() {
        let xinv = g.inv(x);
        let row: Vec<usize> = (0..auts.maps.len())
            .map(|a| {
                let map: Vec<usize> = m
                    .elements()
                    .map(|mm| g_on_m.apply(x, auts.apply(a, g_on_m.apply(xinv, mm))))
                    .collect();
                auts.index_of(&map)
                    .expect("conjugate of an automorphism is an automorphism")
            })
            .collect();
        rows.push(row);
    }
    let g_on_l = GroupAction::on_group(g, &auts.group, rows)?;
    Ok(EquivariantCrossedModule::new(base, g.clone(), g_on_m, g_on_l)?.with_name(format!("A({})", m.name())))
}

/// The inclusion of a normal subgroup, with `L` acting by conjugation.
pub fn inclusion(l: &FiniteGroup, normal: &[usize]) -> Result<CrossedModule, XmodError> {
    l.check_normal(normal)?;
    let sub = l.subgroup(normal)?;
    let rows: Vec<Vec<usize>> = l
        .elements()
        .map(|x| {
            sub.embedding
                .iter()
                .map(|&y| {
                    sub.index_of(l.conj(x, y))
                        .expect("normal subgroup is conjugation-stable")
                })
                .collect()
        })
        .collect();
    let boundary = GroupHom::new(&sub.group, l, sub.embedding.clone())?;
    let action = GroupAction::on_group(l, &sub.group, rows)?;
    CrossedModule::new(sub.group, l.clone(), boundary, action)
}

/// A `Q`-module `A` with the trivial boundary `A → Q`.
pub fn trivial_module(a: &FiniteGroup, q: &FiniteGroup, action: &GroupAction) -> Result<CrossedModule, XmodError> {
    if let Some((x, y)) = a.non_commuting_pair() {
        return Err(XmodError::NotAbelian {
            name: a.name().to_string(),
            a: x,
            b: y,
        });
    }
    CrossedModule::new(a.clone(), q.clone(), GroupHom::trivial(a), action.clone())
}

/// An abelian group over the trivial group.
pub fn abelian_to_zero(a: &FiniteGroup) -> Result<CrossedModule, XmodError> {
    let one = cyclic(1);
    let action = GroupAction::trivial(&one, a.order());
    trivial_module(a, &one, &action)
}

/// Kernel and cokernel of the boundary with all induced actions.
#[derive(Clone, Debug)]
pub struct CrossedExtensionParts {
    /// `A = Ker ∂` re-indexed, with its embedding into `M`.
    pub a: Subgroup,
    /// `Q = L / Im ∂` with the projection `π: L → Q`.
    pub q: Quotient,
    pub q_on_a: GroupAction,
    pub g_on_a: GroupAction,
    pub g_on_q: GroupAction,
    pub faithful: bool,
}

impl CrossedExtensionParts {
    pub fn pi(&self, x: usize) -> usize {
        self.q.projection[x]
    }

    /// `L_a = π⁻¹(a)`, sorted.
    pub fn fiber(&self, a: usize) -> Vec<usize> {
        (0..self.q.projection.len())
            .filter(|&x| self.q.projection[x] == a)
            .collect()
    }
}

/// Builds `1 → A → M → L → Q → 1` and checks exactness at every node.
pub fn crossed_extension_parts(exm: &EquivariantCrossedModule) -> CrossedExtensionParts {
    let xm = exm.base();
    let (m, l, g) = (xm.m(), xm.l(), exm.g());
    let a = m
        .subgroup(&xm.boundary().kernel())
        .expect("kernel is a subgroup")
        .with_group_name(format!("Ker({})", exm.name()));
    let q = l.quotient(&xm.boundary().image()).expect("image of ∂ is normal by CM1");
    for &x in &a.embedding {
        assert!(
            m.elements().all(|y| m.mul(x, y) == m.mul(y, x)),
            "Ker ∂ must be central"
        );
    }
    // exactness by counting: |A| |Im ∂| = |M| and |Im ∂| |Q| = |L|
    assert_eq!(a.group.order() * xm.boundary().image().len(), m.order());
    assert_eq!(xm.boundary().image().len() * q.group.order(), l.order());
    let restrict = |act: &dyn Fn(usize, usize) -> usize, actors: usize| -> Vec<Vec<usize>> {
        (0..actors)
            .map(|x| {
                a.embedding
                    .iter()
                    .map(|&y| a.index_of(act(x, y)).expect("A is stable"))
                    .collect()
            })
            .collect()
    };
    let q_rows = (0..q.group.order()).map(|c| q.representatives[c]).collect::<Vec<_>>();
    let q_on_a = GroupAction::on_group(
        &q.group,
        &a.group,
        restrict(&|c, y| xm.act(q_rows[c], y), q.group.order()),
    )
    .expect("Im ∂ acts trivially on the centre, so Q acts on A");
    let g_on_a =
        GroupAction::on_group(g, &a.group, restrict(&|x, y| exm.g_m(x, y), g.order())).expect("G preserves Ker ∂");
    let g_on_q_rows = g
        .elements()
        .map(|x| q.representatives.iter().map(|&r| q.projection[exm.g_l(x, r)]).collect())
        .collect();
    let g_on_q = GroupAction::on_group(g, &q.group, g_on_q_rows).expect("G preserves Im ∂");
    CrossedExtensionParts {
        faithful: xm.is_faithful(),
        a,
        q,
        q_on_a,
        g_on_a,
        g_on_q,
    }
}

impl Subgroup {
    fn with_group_name(mut self, name: String) -> Self {
        self.group = self.group.with_name(name);
        self
    }
}

/// Names of the builtin fixtures.
pub const FIXTURES: [&str; 5] = ["XM_T22", "XM_ID2", "XM_A2", "XM_A3", "XM_OBS"];

/// Looks up a builtin fixture by name.
///
/// * `XM_T22`: `C2 → C2`, trivial boundary and actions, `G = C2`.
/// * `XM_ID2`: `C2 → C2` the identity, `G = C2` trivial.
/// * `XM_A2`: `C2 → Aut(C2) = 1`, `G = C2` trivial.
/// * `XM_A3`: `C3 → Aut(C3) ≅ C2`, `G = C3` trivial.
/// * `XM_OBS`: `C4 = ⟨u⟩ → C8 = ⟨l⟩` with `∂u = l⁴`, `ˡu = u⁻¹`, and
///   `G = C2 = ⟨s⟩` acting by `ˢl = l⁵`, `ˢu = u`.
pub fn fixture(name: &str) -> Option<EquivariantCrossedModule> {
    let c2 = cyclic(2);
    let xm = match name {
        "XM_T22" => {
            let base = CrossedModule::new(
                c2.clone(),
                c2.clone(),
                GroupHom::trivial(&c2),
                GroupAction::trivial(&c2, 2),
            )
            .expect("fixture");
            EquivariantCrossedModule::with_trivial_action(base, c2)
        }
        "XM_ID2" => {
            let base = CrossedModule::new(
                c2.clone(),
                c2.clone(),
                GroupHom::identity(&c2),
                GroupAction::trivial(&c2, 2),
            )
            .expect("fixture");
            EquivariantCrossedModule::with_trivial_action(base, c2)
        }
        "XM_A2" => aut(&c2, &c2, &GroupAction::trivial(&c2, 2)).expect("fixture"),
        "XM_A3" => {
            let c3 = cyclic(3);
            aut(&c3, &c3, &GroupAction::trivial(&c3, 3)).expect("fixture")
        }
        "XM_OBS" => xm_obs(),
        _ => return None,
    };
    Some(xm.with_name(name))
}

fn xm_obs() -> EquivariantCrossedModule {
    let m = cyclic_named(4, "u");
    let l = cyclic_named(8, "l");
    let s = cyclic_named(2, "s");
    let boundary = GroupHom::new(&m, &l, (0..4).map(|k| (4 * k) % 8).collect()).expect("u ↦ l⁴");
    let l_rows = (0..8)
        .map(|j| (0..4).map(|k| if j % 2 == 0 { k } else { (4 - k) % 4 }).collect())
        .collect();
    let base = CrossedModule::new(
        m.clone(),
        l.clone(),
        boundary,
        GroupAction::on_group(&l, &m, l_rows).expect("inversion"),
    )
    .expect("fixture");
    let g_on_m = GroupAction::trivial(&s, 4);
    let g_on_l =
        GroupAction::on_group(&s, &l, vec![(0..8).collect(), (0..8).map(|j| (5 * j) % 8).collect()]).expect("l ↦ l⁵");
    EquivariantCrossedModule::new(base, s, g_on_m, g_on_l).expect("fixture")
}
