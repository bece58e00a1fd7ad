//! Extensions of `Π` by `M` over a crossed module `M → L`.
//!
//! An extension is `1 → M → B → Π → 1` (maps `κ`, `σ`) together with
//! `ϱ: B → L` such that `ϱκ = ∂` and `b·κ(m)·b⁻¹ = κ(^ϱ(b)m)`. Congruence is
//! decided on cocycles and the isomorphism `α: B → B'` is then rebuilt from
//! the cocycle witness and checked against the diagrams directly.

use serde::Serialize;
use thiserror::Error;

use crate::aut::homomorphisms;
use crate::cohomology::{
    check_cocycle2, classical_h2, cocycle2_equivalent, h2_classes, ClassSet, Cocycle2, CocycleViolation,
    CohomologyError, Mode, Witness2,
};
use crate::group::{FiniteGroup, GroupError, GroupHom};
use crate::search::{Budget, BudgetExceeded};
use crate::xmod::CrossedModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    KappaNotInjective,
    SigmaNotSurjective,
    ImageNotKernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarrhoCheck {
    /// `ϱ(κ(m)) ≠ ∂(m)`
    Boundary,
    /// `b·κ(m)·b⁻¹ ≠ κ(^ϱ(b)m)`
    Conjugation,
}

/// Which part of a (weak) congruence `(α, τ)` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CongruenceCheck {
    NotIsomorphism,
    /// `α(κ(m)) ≠ κ'(ᵗm)`
    Kernel,
    /// `σ'(α(b)) ≠ σ(b)`
    Quotient,
    /// `τ⁻¹·ϱ'(α(b))·τ ≠ ϱ(b)`
    Varrho,
    /// `ᵗ⁻¹(ζ'(α(b))(ᵗm)) ≠ ζ(b)(m)`
    Zeta,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtensionError {
    #[error("sequence is not exact ({condition:?}) at element {element}")]
    NotExact { condition: Exactness, element: usize },
    #[error("ϱ is incompatible ({condition:?}) at b = {b}, m = {m}")]
    VarrhoMismatch { condition: VarrhoCheck, b: usize, m: usize },
    #[error("not a section: σ(u({x})) ≠ {x}")]
    NotASection { x: usize },
    #[error("not a cocycle: {violation:?}")]
    NotACocycle { violation: CocycleViolation },
    #[error("not a congruence ({condition:?}) at b = {b}")]
    NotACongruence { condition: CongruenceCheck, b: usize },
    #[error("the boundary is not trivial")]
    BoundaryNotTrivial,
    #[error(transparent)]
    #[serde(untagged)]
    Group(#[from] GroupError),
    #[error(transparent)]
    #[serde(untagged)]
    Cohomology(#[from] CohomologyError),
}

impl From<BudgetExceeded> for ExtensionError {
    fn from(e: BudgetExceeded) -> Self {
        ExtensionError::Cohomology(e.into())
    }
}

/// A validated extension of `Π` by `M` over `M → L`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub b: FiniteGroup,
    pub kappa: GroupHom,
    pub sigma: GroupHom,
    pub varrho: GroupHom,
    pi: FiniteGroup,
    xm: CrossedModule,
    kappa_inv: Vec<Option<usize>>,
}

/// A set-theoretic section `u: Π → B` with `u(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub u: Vec<usize>,
}

pub fn make_extension(
    b: FiniteGroup,
    kappa: GroupHom,
    sigma: GroupHom,
    varrho: GroupHom,
    pi: &FiniteGroup,
    xm: &CrossedModule,
) -> Result<Extension, ExtensionError> {
    let m = xm.m();
    let kappa = GroupHom::new(m, &b, kappa.table().to_vec())?;
    let sigma = GroupHom::new(&b, pi, sigma.table().to_vec())?;
    let varrho = GroupHom::new(&b, xm.l(), varrho.table().to_vec())?;
    let mut kappa_inv = vec![None; b.order()];
    for a in m.elements() {
        let slot = &mut kappa_inv[kappa.apply(a)];
        if slot.is_some() {
            return Err(ExtensionError::NotExact {
                condition: Exactness::KappaNotInjective,
                element: a,
            });
        }
        *slot = Some(a);
    }
    if let Some(x) = pi.elements().find(|&x| !b.elements().any(|y| sigma.apply(y) == x)) {
        return Err(ExtensionError::NotExact {
            condition: Exactness::SigmaNotSurjective,
            element: x,
        });
    }
    if let Some(y) = b.elements().find(|&y| (sigma.apply(y) == 0) != kappa_inv[y].is_some()) {
        return Err(ExtensionError::NotExact {
            condition: Exactness::ImageNotKernel,
            element: y,
        });
    }
    for a in m.elements() {
        if varrho.apply(kappa.apply(a)) != xm.d(a) {
            return Err(ExtensionError::VarrhoMismatch {
                condition: VarrhoCheck::Boundary,
                b: kappa.apply(a),
                m: a,
            });
        }
    }
    for y in b.elements() {
        for a in m.elements() {
            if b.conj(y, kappa.apply(a)) != kappa.apply(xm.act(varrho.apply(y), a)) {
                return Err(ExtensionError::VarrhoMismatch {
                    condition: VarrhoCheck::Conjugation,
                    b: y,
                    m: a,
                });
            }
        }
    }
    Ok(Extension {
        b,
        kappa,
        sigma,
        varrho,
        pi: pi.clone(),
        xm: xm.clone(),
        kappa_inv,
    })
}

impl Extension {
    pub fn pi(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn crossed_module(&self) -> &CrossedModule {
        &self.xm
    }

    /// `κ⁻¹(b)` for `b` in the kernel of `σ`.
    pub fn kappa_inv(&self, b: usize) -> Option<usize> {
        self.kappa_inv[b]
    }

    /// `ζ(b)(m) = κ⁻¹(b·κ(m)·b⁻¹)`.
    pub fn zeta(&self, b: usize, m: usize) -> usize {
        self.kappa_inv[self.b.conj(b, self.kappa.apply(m))].expect("Ker σ is normal")
    }

    /// The least element of each fiber of `σ`.
    pub fn canonical_section(&self) -> Section {
        let mut u = vec![usize::MAX; self.pi.order()];
        for y in self.b.elements().rev() {
            u[self.sigma.apply(y)] = y;
        }
        Section { u }
    }

    /// Every section, in lexicographic order of their tables.
    pub fn sections(&self) -> Vec<Section> {
        let fibers: Vec<Vec<usize>> = self
            .pi
            .elements()
            .map(|x| self.b.elements().filter(|&y| self.sigma.apply(y) == x).collect())
            .collect();
        let radices: Vec<usize> = fibers[1..].iter().map(Vec::len).collect();
        let mut out = Vec::new();
        crate::search::for_each_tuple::<()>(&radices, |choice| {
            let mut u = vec![0];
            u.extend(choice.iter().zip(&fibers[1..]).map(|(&k, fib)| fib[k]));
            out.push(Section { u });
            Ok(())
        })
        .expect("infallible");
        out
    }

    pub fn check_section(&self, s: &Section) -> Result<(), ExtensionError> {
        if s.u.len() != self.pi.order() {
            return Err(ExtensionError::NotASection { x: s.u.len() });
        }
        if s.u[0] != 0 {
            return Err(ExtensionError::NotASection { x: 0 });
        }
        match self
            .pi
            .elements()
            .find(|&x| s.u[x] >= self.b.order() || self.sigma.apply(s.u[x]) != x)
        {
            Some(x) => Err(ExtensionError::NotASection { x }),
            None => Ok(()),
        }
    }
}

/// `f(x,y) = κ⁻¹(u(xy)·u(y)⁻¹·u(x)⁻¹)` and `φ = ϱ∘u`.
///
/// The result is checked to be a cocycle, and `u(x)·κ(m) = κ(^φ(x)m)·u(x)`
/// is checked for all `x` and `m`.
pub fn section_to_cocycle(e: &Extension, s: &Section) -> Result<Cocycle2, ExtensionError> {
    e.check_section(s)?;
    let (b, pi) = (&e.b, &e.pi);
    let n = pi.order();
    let u = &s.u;
    let mut f = vec![0; n * n];
    for x in pi.elements() {
        for y in pi.elements() {
            let k = b.product(&[u[pi.mul(x, y)], b.inv(u[y]), b.inv(u[x])]);
            f[x * n + y] = e.kappa_inv[k].expect("u(xy)·u(y)⁻¹·u(x)⁻¹ lies in Ker σ");
        }
    }
    let phi: Vec<usize> = u.iter().map(|&v| e.varrho.apply(v)).collect();
    let c = Cocycle2 { f, phi };
    assert_eq!(check_cocycle2(pi, &e.xm, &c), Ok(()), "section cocycle");
    for x in pi.elements() {
        for m in e.xm.m().elements() {
            assert_eq!(
                b.mul(u[x], e.kappa.apply(m)),
                b.mul(e.kappa.apply(e.xm.act(c.phi(x), m)), u[x]),
                "u(x)·κ(m) = κ(^φ(x)m)·u(x)"
            );
        }
    }
    Ok(c)
}

/// The extension on `M × Π` with `(a,x)(b,y) = (a·^φ(x)b·f(x,y)⁻¹, xy)`.
///
/// The pair `(a, x)` has index `x·|M| + a`, so `u(x) = (1, x)` is the
/// canonical section and gives back `c` exactly.
pub fn cocycle_to_extension(c: &Cocycle2, pi: &FiniteGroup, xm: &CrossedModule) -> Result<Extension, ExtensionError> {
    check_cocycle2(pi, xm, c).map_err(|violation| ExtensionError::NotACocycle { violation })?;
    let (m, l) = (xm.m(), xm.l());
    let (nm, n) = (m.order(), pi.order());
    let mut mul = Vec::with_capacity(nm * n * nm * n);
    for x in 0..n {
        for a in 0..nm {
            for y in 0..n {
                for bb in 0..nm {
                    let first = m.product(&[a, xm.act(c.phi(x), bb), m.inv(c.f(x, y))]);
                    mul.push(pi.mul(x, y) * nm + first);
                }
            }
        }
    }
    let labels = (0..n)
        .flat_map(|x| (0..nm).map(move |a| (a, x)))
        .map(|(a, x)| format!("({},{})", m.label(a), pi.label(x)))
        .collect();
    let b = FiniteGroup::from_flat(n * nm, mul)?
        .with_labels(labels)?
        .with_name(format!("B({}; {})", pi.name(), m.name()));
    let kappa = GroupHom::new(m, &b, (0..nm).collect())?;
    let sigma = GroupHom::new(&b, pi, (0..n * nm).map(|i| i / nm).collect())?;
    let varrho_map: Vec<usize> = (0..n * nm).map(|i| l.mul(xm.d(i % nm), c.phi(i / nm))).collect();
    let varrho = GroupHom::new(&b, l, varrho_map)?;
    make_extension(b, kappa, sigma, varrho, pi, xm)
}

/// A (weak) congruence `α: B → B'` with its twist `τ` and cocycle witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub alpha: Vec<usize>,
    pub tau: usize,
    pub t: Vec<usize>,
}

/// Checks every condition on `(α, τ)` directly on the groups.
pub fn verify_congruence(e: &Extension, e2: &Extension, alpha: &[usize], tau: usize) -> Result<(), ExtensionError> {
    let (b, b2, xm) = (&e.b, &e2.b, &e.xm);
    let (l, m) = (xm.l(), xm.m());
    let fail = |condition, b| Err(ExtensionError::NotACongruence { condition, b });
    let hom = GroupHom::new(b, b2, alpha.to_vec()).map_err(|_| ExtensionError::NotACongruence {
        condition: CongruenceCheck::NotIsomorphism,
        b: 0,
    })?;
    if b.order() != b2.order() || !hom.is_injective() {
        return fail(CongruenceCheck::NotIsomorphism, 0);
    }
    for a in m.elements() {
        if alpha[e.kappa.apply(a)] != e2.kappa.apply(xm.act(tau, a)) {
            return fail(CongruenceCheck::Kernel, e.kappa.apply(a));
        }
    }
    let tau_inv = l.inv(tau);
    for y in b.elements() {
        if e2.sigma.apply(alpha[y]) != e.sigma.apply(y) {
            return fail(CongruenceCheck::Quotient, y);
        }
        if l.product(&[tau_inv, e2.varrho.apply(alpha[y]), tau]) != e.varrho.apply(y) {
            return fail(CongruenceCheck::Varrho, y);
        }
        for a in m.elements() {
            if xm.act(tau_inv, e2.zeta(alpha[y], xm.act(tau, a))) != e.zeta(y, a) {
                return fail(CongruenceCheck::Zeta, y);
            }
        }
    }
    Ok(())
}

/// Decides (weak) congruence through the canonical-section cocycles.
///
/// On success `α(κ(m)·u(x)) = κ'(ᵗm)·κ'(t(x))·u'(x)` is built from the
/// cocycle witness and verified with [`verify_congruence`].
pub fn extensions_equivalent(
    e: &Extension,
    e2: &Extension,
    mode: Mode,
    budget: &Budget,
) -> Result<Option<Congruence>, ExtensionError> {
    let (s, s2) = (e.canonical_section(), e2.canonical_section());
    let (c, c2) = (section_to_cocycle(e, &s)?, section_to_cocycle(e2, &s2)?);
    let Some(Witness2 { t, tau }) = cocycle2_equivalent(&e.pi, &e.xm, &c, &c2, mode, budget)? else {
        return Ok(None);
    };
    let (b, b2, xm) = (&e.b, &e2.b, &e.xm);
    let mut alpha = vec![0; b.order()];
    for x in e.pi.elements() {
        for a in xm.m().elements() {
            let src = b.mul(e.kappa.apply(a), s.u[x]);
            alpha[src] = b2.product(&[e2.kappa.apply(xm.act(tau, a)), e2.kappa.apply(t[x]), s2.u[x]]);
        }
    }
    verify_congruence(e, e2, &alpha, tau)?;
    Ok(Some(Congruence { alpha, tau, t }))
}

/// One extension per degree-2 class.
#[derive(Clone, Debug)]
pub struct Classification {
    pub classes: ClassSet<Cocycle2>,
    pub extensions: Vec<Extension>,
}

pub fn classify_extensions(
    pi: &FiniteGroup,
    xm: &CrossedModule,
    mode: Mode,
    budget: &Budget,
) -> Result<Classification, ExtensionError> {
    let classes = h2_classes(pi, xm, mode, budget)?;
    let extensions = classes
        .representatives()
        .into_iter()
        .map(|c| cocycle_to_extension(c, pi, xm))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Classification { classes, extensions })
}

/// For a trivial boundary: the number of thick classes counted as a sum of
/// classical `H²(Π, M_φ)` over all homomorphisms `φ: Π → L`.
pub fn trivial_boundary_count(pi: &FiniteGroup, xm: &CrossedModule, budget: &Budget) -> Result<usize, ExtensionError> {
    if !xm.boundary().table().iter().all(|&v| v == 0) {
        return Err(ExtensionError::BoundaryNotTrivial);
    }
    let mut total = 0;
    for phi in homomorphisms(pi, xm.l()) {
        let action = xm.l_action().pullback(&phi);
        total += classical_h2(pi, xm.m(), &action, budget)?.count();
    }
    Ok(total)
}
