//! Independent oracles for the integration suites.
//!
//! Nothing here calls the library's search, classification or validation
//! code. The oracles borrow only table lookups (`mul`, `inv`, `d`, `act`)
//! and recompute everything else by brute force from the definitions.
#![allow(dead_code)]

pub mod invariants;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use xcohom::cohomology::{Cocycle1, Cocycle2};
use xcohom::group::{cyclic, klein_four, symmetric3, FiniteGroup, GroupAction, GroupHom};
use xcohom::search::Budget;
use xcohom::xmod::{aut, fixture, CrossedModule, EquivariantCrossedModule, FIXTURES};

pub fn budget() -> Budget {
    Budget::default()
}

pub fn fixtures() -> Vec<EquivariantCrossedModule> {
    FIXTURES.iter().map(|n| fixture(n).unwrap()).collect()
}

/// Equivariant crossed modules beyond the fixtures: automorphism crossed
/// modules with nontrivial `G`-actions, one of them with nonabelian `M`.
pub fn extra_models() -> Vec<EquivariantCrossedModule> {
    let c2 = cyclic(2);
    let c4 = cyclic(4);
    let inversion = GroupAction::on_group(&c2, &c4, vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).unwrap();
    let k4 = klein_four();
    let c3 = cyclic(3);
    let rotate = GroupAction::on_group(&c3, &k4, vec![vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]]).unwrap();
    let s3 = symmetric3();
    let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
    let conj_t = GroupAction::on_group(
        &c2,
        &s3,
        vec![s3.elements().collect(), s3.elements().map(|x| s3.conj(t, x)).collect()],
    )
    .unwrap();
    vec![
        aut(&c4, &c2, &inversion).unwrap().with_name("A(C4)/inv"),
        aut(&k4, &c3, &rotate).unwrap().with_name("A(K4)/rot"),
        aut(&s3, &c2, &conj_t).unwrap().with_name("A(S3)/conj"),
    ]
}

pub fn models() -> Vec<EquivariantCrossedModule> {
    let mut all = fixtures();
    all.extend(extra_models());
    all
}

/// A degree-2 test case: a group `Π` and a crossed module.
pub struct Case {
    pub name: String,
    pub pi: FiniteGroup,
    pub xm: CrossedModule,
}

/// Every fixture against `Π ∈ {C2, C3}` (which always contains the
/// fixture's own `G`), plus `S3 → Aut(S3)` over `C2`, where `M` is
/// nonabelian.
pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for exm in fixtures() {
        for pi in [cyclic(2), cyclic(3)] {
            out.push(Case {
                name: format!("{} over {}", exm.name(), pi.name()),
                pi,
                xm: exm.base().clone(),
            });
        }
    }
    let s3 = extra_models().pop().unwrap();
    out.push(Case {
        name: "A(S3) over C2".into(),
        pi: cyclic(2),
        xm: s3.base().clone(),
    });
    out
}

/// Degree-2 cases small enough for the quadratic pairwise checks.
pub fn small_cases() -> Vec<Case> {
    cases()
        .into_iter()
        .filter(|c| !c.name.starts_with("XM_OBS over C3"))
        .collect()
}

// ---------------------------------------------------------------- groups

pub fn naive_order(g: &FiniteGroup, x: usize) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != 0 {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

pub fn census(g: &FiniteGroup) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for x in g.elements() {
        *out.entry(naive_order(g, x)).or_insert(0) += 1;
    }
    out
}

pub fn associative(g: &FiniteGroup) -> bool {
    g.elements().all(|a| {
        g.elements()
            .all(|b| g.elements().all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))))
    })
}

/// Backtracking over bijections, element by element, checking every product
/// whose three entries are already assigned.
pub fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() || census(a) != census(b) {
        return false;
    }
    let n = a.order();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[0] = 0;
    used[0] = true;
    fn go(a: &FiniteGroup, b: &FiniteGroup, i: usize, image: &mut [usize], used: &mut [bool]) -> bool {
        let n = a.order();
        if i == n {
            return true;
        }
        for y in 0..n {
            if used[y] || naive_order(a, i) != naive_order(b, y) {
                continue;
            }
            image[i] = y;
            let ok = (0..=i).all(|j| {
                (0..=i).all(|k| {
                    let jk = a.mul(j, k);
                    jk > i || image[jk] == b.mul(image[j], image[k])
                })
            });
            if ok {
                used[y] = true;
                if go(a, b, i + 1, image, used) {
                    return true;
                }
                used[y] = false;
            }
        }
        image[i] = usize::MAX;
        false
    }
    go(a, b, 1, &mut image, &mut used)
}

/// All maps `src → dst` that are homomorphisms, by listing every table.
pub fn naive_homs(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = dst.order().pow(src.order() as u32);
    for code in 0..total {
        let mut map = Vec::with_capacity(src.order());
        let mut c = code;
        for _ in src.elements() {
            map.push(c % dst.order());
            c /= dst.order();
        }
        if src
            .elements()
            .all(|x| src.elements().all(|y| map[src.mul(x, y)] == dst.mul(map[x], map[y])))
        {
            out.push(map);
        }
    }
    out
}

/// Every tuple over `radix` of length `len`, in counting order.
pub fn tuples(radix: usize, len: usize) -> Vec<Vec<usize>> {
    let total = radix.pow(len as u32);
    (0..total)
        .map(|mut c| {
            (0..len)
                .map(|_| {
                    let d = c % radix;
                    c /= radix;
                    d
                })
                .collect()
        })
        .collect()
}

/// Whether `σ: B → G` has a homomorphic section, by trying every map.
pub fn splits(b: &FiniteGroup, sigma: &GroupHom, g: &FiniteGroup) -> bool {
    let fibers: Vec<Vec<usize>> = g
        .elements()
        .map(|x| b.elements().filter(|&y| sigma.apply(y) == x).collect())
        .collect();
    let mut choice = vec![0usize; g.order()];
    loop {
        let s: Vec<usize> = (0..g.order()).map(|x| fibers[x][choice[x]]).collect();
        if g.elements()
            .all(|x| g.elements().all(|y| s[g.mul(x, y)] == b.mul(s[x], s[y])))
        {
            return true;
        }
        let mut k = 0;
        loop {
            if k == g.order() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < fibers[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

// ------------------------------------------------------------- degree 1

/// `Z¹` by listing every `f: G → M` (unnormalized too) and every `τ`.
pub fn naive_z1(exm: &EquivariantCrossedModule) -> Vec<Cocycle1> {
    let (g, m, l) = (exm.g(), exm.m(), exm.l());
    let mut out = Vec::new();
    for f in tuples(m.order(), g.order()) {
        let crossed = g
            .elements()
            .all(|x| g.elements().all(|y| f[g.mul(x, y)] == m.mul(f[x], exm.g_m(x, f[y]))));
        if !crossed {
            continue;
        }
        for tau in l.elements() {
            if g.elements().all(|x| l.mul(exm.base().d(f[x]), exm.g_l(x, tau)) == tau) {
                out.push(Cocycle1 { f: f.clone(), tau });
            }
        }
    }
    out
}

/// Orbits of `Z¹` under `m·(f, τ) = (m·f(x)·(ˣm)⁻¹, ∂(m)·τ)`.
pub fn naive_h1(exm: &EquivariantCrossedModule) -> Vec<BTreeSet<Cocycle1>> {
    let (g, m) = (exm.g(), exm.m());
    orbits(naive_z1(exm), |c| {
        m.elements()
            .map(|a| Cocycle1 {
                f: g.elements()
                    .map(|x| m.product(&[a, c.f[x], m.inv(exm.g_m(x, a))]))
                    .collect(),
                tau: exm.l().mul(exm.base().d(a), c.tau),
            })
            .collect()
    })
}

// ------------------------------------------------------------- degree 2

/// Multiplication on `M × Π` for the pair `(f, φ)`, with `(a, x)` meaning
/// `κ(a)·u(x)` and `u(x)·u(y) = κ(f(x,y))⁻¹·u(xy)`. Index `a + |M|·x`.
pub fn schreier_table(pi: &FiniteGroup, xm: &CrossedModule, c: &Cocycle2) -> Vec<Vec<usize>> {
    let m = xm.m();
    let nm = m.order();
    let n = pi.order();
    let f = |x: usize, y: usize| c.f[x * n + y];
    (0..nm * n)
        .map(|i| {
            let (a, x) = (i % nm, i / nm);
            (0..nm * n)
                .map(|j| {
                    let (b, y) = (j % nm, j / nm);
                    m.product(&[a, xm.act(c.phi[x], b), m.inv(f(x, y))]) + nm * pi.mul(x, y)
                })
                .collect()
        })
        .collect()
}

/// A normalized pair is a cocycle exactly when the Schreier product is
/// associative and `(a, x) ↦ ∂(a)·φ(x)` is multiplicative.
pub fn is_cocycle2(pi: &FiniteGroup, xm: &CrossedModule, c: &Cocycle2) -> bool {
    let n = pi.order();
    if c.phi[0] != 0 || (0..n).any(|x| c.f[x] != 0 || c.f[x * n] != 0) {
        return false;
    }
    let table = schreier_table(pi, xm, c);
    let size = table.len();
    let nm = xm.m().order();
    let l = xm.l();
    let varrho = |i: usize| l.mul(xm.d(i % nm), c.phi[i / nm]);
    (0..size).all(|i| (0..size).all(|j| varrho(table[i][j]) == l.mul(varrho(i), varrho(j))))
        && (0..size).all(|i| (0..size).all(|j| (0..size).all(|k| table[table[i][j]][k] == table[i][table[j][k]])))
}

/// `Z²` by listing every normalized `(f, φ)`.
pub fn naive_z2(pi: &FiniteGroup, xm: &CrossedModule) -> Vec<Cocycle2> {
    let (m, l) = (xm.m(), xm.l());
    let n = pi.order();
    let mut out = Vec::new();
    for phi_tail in tuples(l.order(), n - 1) {
        let mut phi = vec![0];
        phi.extend(phi_tail);
        // boundary condition first, so the f loop only runs over survivors
        let fiber_ok = |x: usize, y: usize, fxy: usize| l.mul(xm.d(fxy), l.mul(phi[x], phi[y])) == phi[pi.mul(x, y)];
        for f_tail in tuples(m.order(), (n - 1) * (n - 1)) {
            let mut f = vec![0; n * n];
            for (k, &v) in f_tail.iter().enumerate() {
                f[(k / (n - 1) + 1) * n + k % (n - 1) + 1] = v;
            }
            if !pi
                .elements()
                .all(|x| pi.elements().all(|y| fiber_ok(x, y, f[x * n + y])))
            {
                continue;
            }
            let c = Cocycle2 { f, phi: phi.clone() };
            if is_cocycle2(pi, xm, &c) {
                out.push(c);
            }
        }
    }
    out
}

/// The cocycles of all sections `u(x) = κ(s(x))·(1, x)` of the Schreier
/// extension of `c`: by Schreier theory, the thick class of `c`.
pub fn section_cocycles(pi: &FiniteGroup, xm: &CrossedModule, c: &Cocycle2) -> Vec<Cocycle2> {
    let table = schreier_table(pi, xm, c);
    let b = FiniteGroup::from_table(table).unwrap();
    let (m, l) = (xm.m(), xm.l());
    let (nm, n) = (m.order(), pi.order());
    let varrho = |i: usize| l.mul(xm.d(i % nm), c.phi[i / nm]);
    tuples(nm, n - 1)
        .into_iter()
        .map(|s_tail| {
            let mut s = vec![0];
            s.extend(s_tail);
            let u: Vec<usize> = (0..n).map(|x| b.mul(s[x], nm * x)).collect();
            let mut f = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    let k = b.product(&[u[pi.mul(x, y)], b.inv(u[y]), b.inv(u[x])]);
                    assert!(k < nm, "u(xy)·u(y)⁻¹·u(x)⁻¹ lies over 1");
                    f[x * n + y] = k;
                }
            }
            Cocycle2 {
                f,
                phi: u.iter().map(|&i| varrho(i)).collect(),
            }
        })
        .collect()
}

/// `(ᵗf, τ·φ·τ⁻¹)`
pub fn twist(xm: &CrossedModule, c: &Cocycle2, tau: usize) -> Cocycle2 {
    let l = xm.l();
    Cocycle2 {
        f: c.f.iter().map(|&v| xm.act(tau, v)).collect(),
        phi: c.phi.iter().map(|&p| l.product(&[tau, p, l.inv(tau)])).collect(),
    }
}

/// Thick orbits of `Z²` from sections, weak orbits from sections of all
/// twists.
pub fn naive_h2(pi: &FiniteGroup, xm: &CrossedModule, weak: bool) -> Vec<BTreeSet<Cocycle2>> {
    orbits(naive_z2(pi, xm), |c| {
        if weak {
            xm.l()
                .elements()
                .flat_map(|tau| section_cocycles(pi, xm, &twist(xm, c, tau)))
                .collect()
        } else {
            section_cocycles(pi, xm, c)
        }
    })
}

/// `|Z²(G, A)| / |B²(G, A)|` for an abelian `G`-module, both sets listed
/// by brute force over normalized tables.
pub fn naive_classical_h2(g: &FiniteGroup, a: &FiniteGroup, action: &GroupAction) -> usize {
    let n = g.order();
    let mut z2 = 0;
    for tail in tuples(a.order(), (n - 1) * (n - 1)) {
        let mut f = vec![0; n * n];
        for (k, &v) in tail.iter().enumerate() {
            f[(k / (n - 1) + 1) * n + k % (n - 1) + 1] = v;
        }
        let ok = g.elements().all(|x| {
            g.elements().all(|y| {
                g.elements().all(|z| {
                    a.mul(action.apply(x, f[y * n + z]), f[x * n + g.mul(y, z)])
                        == a.mul(f[g.mul(x, y) * n + z], f[x * n + y])
                })
            })
        });
        z2 += ok as usize;
    }
    let mut b2 = BTreeSet::new();
    for tail in tuples(a.order(), n - 1) {
        let mut t = vec![0];
        t.extend(tail);
        let b: Vec<usize> = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                a.product(&[t[x], action.apply(x, t[y]), a.inv(t[g.mul(x, y)])])
            })
            .collect();
        b2.insert(b);
    }
    assert_eq!(z2 % b2.len(), 0, "B² is a subgroup of Z²");
    z2 / b2.len()
}

// ----------------------------------------------------------------- misc

/// Orbits of a relation given by a neighbour function, checked to be a
/// partition (every orbit computed from any of its members is the same).
pub fn orbits<C: Clone + Ord + std::fmt::Debug>(items: Vec<C>, neighbours: impl Fn(&C) -> Vec<C>) -> Vec<BTreeSet<C>> {
    let set: BTreeSet<C> = items.iter().cloned().collect();
    let mut seen: BTreeMap<C, usize> = BTreeMap::new();
    let mut out: Vec<BTreeSet<C>> = Vec::new();
    for c in &items {
        if seen.contains_key(c) {
            continue;
        }
        let orbit: BTreeSet<C> = neighbours(c).into_iter().collect();
        assert!(orbit.contains(c), "relation is reflexive");
        assert!(orbit.is_subset(&set), "orbit stays inside the enumerated set");
        for d in &orbit {
            assert!(!seen.contains_key(d), "orbits are disjoint");
            seen.insert(d.clone(), out.len());
        }
        out.push(orbit);
    }
    for (k, orbit) in out.iter().enumerate() {
        for d in orbit {
            let again: BTreeSet<C> = neighbours(d).into_iter().collect();
            assert_eq!(&again, orbit, "orbit {k} is the same from each member");
        }
    }
    out
}

/// Index of each member's orbit.
pub fn orbit_index<C: Clone + Ord + std::hash::Hash>(orbits: &[BTreeSet<C>]) -> HashMap<C, usize> {
    orbits
        .iter()
        .enumerate()
        .flat_map(|(k, o)| o.iter().map(move |c| (c.clone(), k)))
        .collect()
}

/// Run each check, catching panics; returns the failures.
pub fn run_all(checks: &[(&'static str, fn())]) -> Vec<(&'static str, String)> {
    let mut failures = Vec::new();
    for &(name, check) in checks {
        if let Err(e) = std::panic::catch_unwind(check) {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            failures.push((name, msg));
        }
    }
    failures
}
