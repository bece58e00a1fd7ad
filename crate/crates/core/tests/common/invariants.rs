//! One check per listed invariant, each exhaustive over the fixtures (and
//! the extra models and cases where that adds coverage). A check panics on
//! the first failure.

use std::collections::BTreeSet;

use xcohom::aut::{automorphism_group, is_isomorphic};
use xcohom::bitorsors::{
    bitorsor_to_cocycle, classify_bitorsors, cocycle_to_bitorsor, left_action, obstruction_all, pi_star,
};
use xcohom::bouquets::{
    b_gamma, bouquet_of_cocycle, bouquet_to_cocycle, characteristic_class, check_functor, coboundary_functor,
    comparison_functor, defined_over, families, family_change, fixed_object_subgroupoid, freeify, gamma_of_extension,
    one_object, over_aut, pair_group_to_extension, psi, standard_family, theta_auto, GGroupoid,
};
use xcohom::cohomology::{
    canonical_surjection, check_cocycle1, classical_h2, classical_h2_via_xmod, cocycle2_equivalent, enumerate_z1,
    enumerate_z2, h1_classes, h1_equivalent, h2_classes, h2_thick_and_weak, transform2, Mode,
};
use xcohom::extensions::{
    classify_extensions, cocycle_to_extension, extensions_equivalent, section_to_cocycle, trivial_boundary_count,
    Extension,
};
use xcohom::group::{builtin_group, cyclic, klein_four, FiniteGroup, GroupAction, BUILTIN_GROUPS};
use xcohom::xmod::{crossed_extension_parts, fixture, EquivariantCrossedModule};

use super::*;

pub const ALL: &[(&str, fn())] = &[
    ("group_tables_are_associative", group_tables_are_associative),
    (
        "automorphism_groups_embed_faithfully",
        automorphism_groups_embed_faithfully,
    ),
    (
        "actions_accepted_iff_homomorphism_into_aut",
        actions_accepted_iff_homomorphism_into_aut,
    ),
    ("rho_is_a_homomorphism", rho_is_a_homomorphism),
    ("kernel_of_boundary_is_central", kernel_of_boundary_is_central),
    (
        "aut_actions_commute_with_iota_and_evaluation",
        aut_actions_commute_with_iota_and_evaluation,
    ),
    ("canonical_morphism_to_aut", canonical_morphism_to_aut),
    (
        "equivalences_are_equivalence_relations",
        equivalences_are_equivalence_relations,
    ),
    ("thick_surjects_onto_weak", thick_surjects_onto_weak),
    ("classical_routes_agree", classical_routes_agree),
    ("contractible_coefficients", contractible_coefficients),
    ("canonical_section_round_trip", canonical_section_round_trip),
    ("every_section_gives_the_same_class", every_section_gives_the_same_class),
    ("weak_congruence_twists_zeta", weak_congruence_twists_zeta),
    ("trivial_boundary_sum_formula", trivial_boundary_sum_formula),
    ("pair_group_recovers_the_extension", pair_group_recovers_the_extension),
    ("psi_is_a_weak_equivalence", psi_is_a_weak_equivalence),
    (
        "fixed_object_inclusion_is_an_equivalence",
        fixed_object_inclusion_is_an_equivalence,
    ),
    ("characteristic_class_is_invariant", characteristic_class_is_invariant),
    ("theta_auto_identities", theta_auto_identities),
    ("bitorsors_biject_with_h1", bitorsors_biject_with_h1),
    (
        "obstruction_vanishes_iff_lift_exists",
        obstruction_vanishes_iff_lift_exists,
    ),
    (
        "pi_star_image_is_the_unobstructed_set",
        pi_star_image_is_the_unobstructed_set,
    ),
    (
        "aut_bitorsors_are_two_sided_torsors",
        aut_bitorsors_are_two_sided_torsors,
    ),
    ("coset_sizes_match_image", coset_sizes_match_image),
];

// ------------------------------------------------------------ group-core

fn every_group() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = BUILTIN_GROUPS.iter().map(|n| builtin_group(n).unwrap()).collect();
    for exm in models() {
        out.extend([exm.m().clone(), exm.l().clone(), exm.g().clone()]);
        let parts = crossed_extension_parts(&exm);
        out.extend([parts.a.group, parts.q.group]);
    }
    for case in cases() {
        for e in classify_extensions(&case.pi, &case.xm, Mode::Thick, &budget())
            .unwrap()
            .extensions
        {
            out.push(e.b);
        }
    }
    out
}

pub fn group_tables_are_associative() {
    for g in every_group() {
        assert!(associative(&g), "{}", g.name());
        assert!(g
            .elements()
            .all(|x| g.mul(x, g.inv(x)) == 0 && g.mul(0, x) == x && g.mul(x, 0) == x));
    }
}

pub fn automorphism_groups_embed_faithfully() {
    let mut groups: Vec<FiniteGroup> = BUILTIN_GROUPS.iter().map(|n| builtin_group(n).unwrap()).collect();
    groups.push(klein_four());
    for m in groups {
        let auts = automorphism_group(&m);
        let n_fact: usize = (1..=m.order()).product();
        assert_eq!(n_fact % auts.group.order(), 0, "|Aut({})| divides n!", m.name());
        let distinct: BTreeSet<&Vec<usize>> = auts.maps.iter().collect();
        assert_eq!(
            distinct.len(),
            auts.maps.len(),
            "distinct automorphisms have distinct tables"
        );
        assert_eq!(auts.maps.len(), auts.group.order());
        let homs = naive_homs(&m, &m);
        let bijective = homs
            .iter()
            .filter(|h| h.iter().collect::<BTreeSet<_>>().len() == m.order())
            .count();
        assert_eq!(bijective, auts.group.order(), "brute-force count of Aut({})", m.name());
        for a in auts.group.elements() {
            assert_eq!(auts.index_of(&auts.maps[a]), Some(a));
            for b in auts.group.elements() {
                let composite: Vec<usize> = m.elements().map(|x| auts.maps[a][auts.maps[b][x]]).collect();
                assert_eq!(auts.maps[auts.group.mul(a, b)], composite, "product is composition");
            }
        }
    }
}

/// Exhaustive over every table shape for `C2` on `K4` and `C3` on `C3`.
pub fn actions_accepted_iff_homomorphism_into_aut() {
    for (g, m) in [(cyclic(2), klein_four()), (cyclic(3), cyclic(3))] {
        let auts = automorphism_group(&m);
        let rows = tuples(m.order(), m.order());
        for choice in tuples(rows.len(), g.order()) {
            let table: Vec<Vec<usize>> = choice.iter().map(|&k| rows[k].clone()).collect();
            let index: Option<Vec<usize>> = table.iter().map(|r| auts.index_of(r)).collect();
            let expected = index.is_some_and(|ix| {
                g.elements()
                    .all(|x| g.elements().all(|y| ix[g.mul(x, y)] == auts.group.mul(ix[x], ix[y])))
            });
            assert_eq!(
                GroupAction::on_group(&g, &m, table.clone()).is_ok(),
                expected,
                "{table:?}"
            );
        }
    }
}

// ------------------------------------------------------------------ xmod

pub fn rho_is_a_homomorphism() {
    for exm in models() {
        let xm = exm.base();
        let (aut_xm, rho) = xm.to_aut();
        let auts = automorphism_group(xm.m());
        for x in xm.l().elements() {
            assert_eq!(auts.maps[rho[x]], xm.l_action().row(x), "ρ(x) is the action of x");
            for y in xm.l().elements() {
                assert_eq!(rho[xm.l().mul(x, y)], aut_xm.l().mul(rho[x], rho[y]), "{}", exm.name());
            }
        }
    }
}

pub fn kernel_of_boundary_is_central() {
    for exm in models() {
        let m = exm.m();
        let parts = crossed_extension_parts(&exm);
        let kernel: Vec<usize> = m.elements().filter(|&a| exm.base().d(a) == 0).collect();
        assert_eq!(parts.a.embedding, kernel);
        for &a in &kernel {
            assert!(m.elements().all(|y| m.mul(a, y) == m.mul(y, a)), "{}", exm.name());
        }
    }
}

fn aut_models() -> Vec<EquivariantCrossedModule> {
    let mut out = vec![fixture("XM_A2").unwrap(), fixture("XM_A3").unwrap()];
    out.extend(extra_models());
    out
}

pub fn aut_actions_commute_with_iota_and_evaluation() {
    for exm in aut_models() {
        let xm = exm.base();
        for x in exm.g().elements() {
            for m in exm.m().elements() {
                let inner: Vec<usize> = exm.m().elements().map(|y| exm.m().conj(m, y)).collect();
                assert_eq!(xm.l_action().row(xm.d(m)), inner, "ι(m) is conjugation by m");
                assert_eq!(exm.g_l(x, xm.d(m)), xm.d(exm.g_m(x, m)), "ˣι(m) = ι(ˣm)");
                for alpha in xm.l().elements() {
                    assert_eq!(
                        xm.act(exm.g_l(x, alpha), exm.g_m(x, m)),
                        exm.g_m(x, xm.act(alpha, m)),
                        "ˣα(ˣm) = ˣ(αm) in {}",
                        exm.name()
                    );
                }
            }
        }
    }
}

pub fn canonical_morphism_to_aut() {
    for exm in models() {
        let xm = exm.base();
        let (aut_xm, rho) = xm.to_aut();
        for m in xm.m().elements() {
            assert_eq!(rho[xm.d(m)], aut_xm.d(m), "ρ∘∂ = ι");
            for x in xm.l().elements() {
                assert_eq!(aut_xm.act(rho[x], m), xm.act(x, m), "ˣm = ^ρ(x)m");
            }
        }
    }
}

// ------------------------------------------------------------ cohomology

pub fn equivalences_are_equivalence_relations() {
    let b = budget();
    for case in small_cases() {
        let (pi, xm) = (&case.pi, &case.xm);
        let z2 = enumerate_z2(pi, xm, &b).unwrap();
        for mode in [Mode::Thick, Mode::Weak] {
            let classes = h2_classes(pi, xm, mode, &b).unwrap();
            let n = z2.len();
            let mut rel = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if let Some(w) = cocycle2_equivalent(pi, xm, &z2[i], &z2[j], mode, &b).unwrap() {
                        assert_eq!(transform2(pi, xm, &z2[i], &w), z2[j], "witness moves {i} to {j}");
                        if mode == Mode::Thick {
                            assert_eq!(w.tau, 0);
                        }
                        rel[i][j] = true;
                    }
                }
            }
            for i in 0..n {
                assert!(rel[i][i], "reflexive");
                for j in 0..n {
                    assert_eq!(rel[i][j], rel[j][i], "symmetric in {}", case.name);
                    assert_eq!(rel[i][j], classes.class_of(&z2[i]) == classes.class_of(&z2[j]));
                    for k in 0..n {
                        assert!(!(rel[i][j] && rel[j][k]) || rel[i][k], "transitive");
                    }
                }
            }
        }
    }
    for exm in models() {
        let z1 = enumerate_z1(&exm, &b).unwrap();
        let classes = h1_classes(&exm, &b).unwrap();
        for a in &z1 {
            for c in &z1 {
                let ac = h1_equivalent(&exm, a, c, &b).unwrap().is_some();
                assert_eq!(ac, h1_equivalent(&exm, c, a, &b).unwrap().is_some(), "symmetric");
                assert_eq!(
                    ac,
                    classes.class_of(a) == classes.class_of(c),
                    "H¹ relation matches classes"
                );
            }
        }
    }
}

pub fn thick_surjects_onto_weak() {
    for case in cases() {
        let (thick, weak) = h2_thick_and_weak(&case.pi, &case.xm, &budget()).unwrap();
        assert!(thick.count() >= weak.count(), "{}", case.name);
        let map = canonical_surjection(&thick, &weak).unwrap();
        let image: BTreeSet<usize> = map.iter().copied().collect();
        assert_eq!(image.len(), weak.count(), "every weak class is hit in {}", case.name);
    }
}

pub fn classical_routes_agree() {
    let b = budget();
    for exm in models() {
        let parts = crossed_extension_parts(&exm);
        let (g, a) = (exm.g(), &parts.a.group);
        let lib = classical_h2(g, a, &parts.g_on_a, &b).unwrap().count();
        assert_eq!(
            lib,
            classical_h2_via_xmod(g, a, &parts.g_on_a, &b).unwrap(),
            "{}",
            exm.name()
        );
        assert_eq!(lib, naive_classical_h2(g, a, &parts.g_on_a), "{}", exm.name());
    }
    for (g, a) in [
        (cyclic(2), cyclic(2)),
        (cyclic(2), cyclic(4)),
        (cyclic(3), cyclic(3)),
        (cyclic(2), klein_four()),
    ] {
        let trivial = GroupAction::trivial(&g, a.order());
        let lib = classical_h2(&g, &a, &trivial, &b).unwrap().count();
        assert_eq!(lib, classical_h2_via_xmod(&g, &a, &trivial, &b).unwrap());
        assert_eq!(lib, naive_classical_h2(&g, &a, &trivial));
    }
}

pub fn contractible_coefficients() {
    let id2 = fixture("XM_ID2").unwrap();
    assert_eq!(h1_classes(&id2, &budget()).unwrap().count(), 1);
    for pi in [cyclic(2), cyclic(3), cyclic(4), klein_four()] {
        for mode in [Mode::Thick, Mode::Weak] {
            assert_eq!(
                h2_classes(&pi, id2.base(), mode, &budget()).unwrap().count(),
                1,
                "{}",
                pi.name()
            );
        }
    }
}

// ------------------------------------------------------------ extensions

pub fn canonical_section_round_trip() {
    for case in cases() {
        for c in enumerate_z2(&case.pi, &case.xm, &budget()).unwrap() {
            let e = cocycle_to_extension(&c, &case.pi, &case.xm).unwrap();
            assert_eq!(
                section_to_cocycle(&e, &e.canonical_section()).unwrap(),
                c,
                "{}",
                case.name
            );
        }
    }
}

pub fn every_section_gives_the_same_class() {
    for case in cases() {
        let thick = h2_classes(&case.pi, &case.xm, Mode::Thick, &budget()).unwrap();
        for c in thick.members() {
            let e = cocycle_to_extension(c, &case.pi, &case.xm).unwrap();
            for s in e.sections() {
                let c2 = section_to_cocycle(&e, &s).unwrap();
                assert_eq!(thick.class_of(&c2), thick.class_of(c), "{}", case.name);
            }
        }
    }
}

/// For every congruence `(α, τ)` found: `τ⁻¹·ζ'(α(b))·τ = ζ(b)` on `M`.
pub fn weak_congruence_twists_zeta() {
    let b = budget();
    for case in small_cases() {
        let exts: Vec<Extension> = enumerate_z2(&case.pi, &case.xm, &b)
            .unwrap()
            .iter()
            .map(|c| cocycle_to_extension(c, &case.pi, &case.xm).unwrap())
            .collect();
        let xm = &case.xm;
        let l = xm.l();
        for e in &exts {
            for e2 in &exts {
                for mode in [Mode::Thick, Mode::Weak] {
                    let Some(cong) = extensions_equivalent(e, e2, mode, &b).unwrap() else {
                        continue;
                    };
                    for y in e.b.elements() {
                        for m in xm.m().elements() {
                            let lhs = xm.act(l.inv(cong.tau), e2.zeta(cong.alpha[y], xm.act(cong.tau, m)));
                            assert_eq!(lhs, e.zeta(y, m), "{}", case.name);
                        }
                    }
                }
            }
        }
    }
}

pub fn trivial_boundary_sum_formula() {
    let t22 = fixture("XM_T22").unwrap();
    let xm = t22.base();
    for pi in [cyclic(2), cyclic(3), cyclic(4), klein_four()] {
        let thick = h2_classes(&pi, xm, Mode::Thick, &budget()).unwrap().count();
        assert_eq!(
            trivial_boundary_count(&pi, xm, &budget()).unwrap(),
            thick,
            "{}",
            pi.name()
        );
        let oracle: usize = naive_homs(&pi, xm.l())
            .iter()
            .map(|phi| {
                let rows = pi.elements().map(|x| xm.l_action().row(phi[x]).to_vec()).collect();
                naive_classical_h2(&pi, xm.m(), &GroupAction::on_group(&pi, xm.m(), rows).unwrap())
            })
            .sum();
        assert_eq!(oracle, thick, "{}", pi.name());
    }
}

// --------------------------------------------------------------- bouquets

fn extension_bouquets() -> Vec<(String, Extension, GGroupoid)> {
    let mut out = Vec::new();
    for case in cases() {
        for e in classify_extensions(&case.pi, &case.xm, Mode::Thick, &budget())
            .unwrap()
            .extensions
        {
            let gamma = gamma_of_extension(&e.b, &e.sigma, &case.pi);
            out.push((case.name.clone(), e, gamma));
        }
    }
    out
}

pub fn pair_group_recovers_the_extension() {
    for (name, e, gamma) in extension_bouquets() {
        let bg = b_gamma(&gamma, 0).unwrap();
        let map = pair_group_to_extension(&gamma, &bg, &e.b, &e.sigma);
        for (i, &(g, lam)) in bg.pairs.iter().enumerate() {
            let mor = gamma.morphism(lam);
            assert_eq!((mor.src, mor.dst), (g, 0), "(g, (g, b, 1)) in {name}");
            assert_eq!(map[i], mor.payload);
        }
        for m in e.crossed_module().m().elements() {
            assert_eq!(
                map[bg.kappa.apply(e.kappa.apply(m))],
                e.kappa.apply(m),
                "κ is carried along"
            );
        }
        for x in 0..gamma.object_count() {
            assert!(
                isomorphic(&b_gamma(&gamma, x).unwrap().group, &e.b),
                "B_Γ at object {x} in {name}"
            );
        }
    }
}

pub fn psi_is_a_weak_equivalence() {
    for (name, _, gamma) in extension_bouquets() {
        for x in 0..gamma.object_count() {
            let bg = b_gamma(&gamma, x).unwrap();
            let gamma_bg = gamma_of_extension(&bg.group, &bg.p, gamma.group());
            let check = check_functor(&gamma_bg, &gamma, &psi(&gamma, &bg, &gamma_bg));
            assert!(check.is_weak_equivalence(), "{name} at {x}: {check:?}");
        }
    }
}

pub fn fixed_object_inclusion_is_an_equivalence() {
    let mut groupoids: Vec<GGroupoid> = Vec::new();
    for exm in models() {
        let gamma = one_object(exm.g(), exm.m(), exm.g_on_m()).unwrap();
        groupoids.push(freeify(&gamma).0);
        groupoids.push(gamma);
    }
    groupoids.extend(extension_bouquets().into_iter().map(|(_, _, g)| g));
    let mut fixed_seen = 0;
    for gamma in &groupoids {
        for x in 0..gamma.object_count() {
            let fixed = gamma.group().elements().all(|g| gamma.act_obj(g, x) == x);
            match fixed_object_subgroupoid(gamma, x) {
                Ok((sub, inc)) => {
                    assert!(fixed);
                    fixed_seen += 1;
                    assert!(sub.is_bouquet());
                    for g in gamma.group().elements() {
                        for &a in gamma.hom(x, x) {
                            assert!(gamma.hom(x, x).contains(&gamma.act_mor(g, a)), "G-stable");
                        }
                    }
                    assert!(check_functor(&sub, gamma, &inc).is_weak_equivalence());
                }
                Err(_) => assert!(!fixed),
            }
        }
    }
    assert!(fixed_seen > 0);
}

pub fn characteristic_class_is_invariant() {
    let b = budget();
    for case in small_cases() {
        let (pi, xm) = (&case.pi, &case.xm);
        let thick = h2_classes(pi, xm, Mode::Thick, &b).unwrap();
        let bouquets: Vec<_> = thick
            .members()
            .iter()
            .map(|c| bouquet_of_cocycle(c, pi, xm).unwrap())
            .collect();
        for (c, bq) in thick.members().iter().zip(&bouquets) {
            let std = standard_family(bq);
            assert_eq!(&bouquet_to_cocycle(bq, &std).unwrap(), c);
            for fam in families(bq) {
                family_change(bq, &std, &fam).unwrap();
                assert_eq!(
                    characteristic_class(bq, &fam, &thick).unwrap(),
                    thick.class_of(c),
                    "{}",
                    case.name
                );
            }
        }
        for (i, c) in thick.members().iter().enumerate() {
            for (j, c2) in thick.members().iter().enumerate() {
                let Some(w) = cocycle2_equivalent(pi, xm, c, c2, Mode::Thick, &b).unwrap() else {
                    continue;
                };
                let f = coboundary_functor(&bouquets[i], &bouquets[j], &w.t);
                assert!(check_functor(&bouquets[i].gamma, &bouquets[j].gamma, &f).is_weak_equivalence());
                assert!(defined_over(&bouquets[i], &bouquets[j], &f));
                let class2 = characteristic_class(&bouquets[j], &standard_family(&bouquets[j]), &thick).unwrap();
                assert_eq!(class2, thick.class_of(c));
            }
        }
    }
    // Γ(B) over M → Aut(M): every family, compared with its model bouquet
    for (name, e, gamma) in extension_bouquets() {
        let (bq, aut_xm) = over_aut(gamma, 0).unwrap();
        let pi = bq.gamma.group().clone();
        let thick = h2_classes(&pi, &aut_xm, Mode::Thick, &b).unwrap();
        let fams = families(&bq);
        let first = characteristic_class(&bq, &fams[0], &thick).unwrap();
        assert!(first.is_some());
        for fam in &fams {
            assert_eq!(characteristic_class(&bq, fam, &thick).unwrap(), first, "{name}");
            let c = bouquet_to_cocycle(&bq, fam).unwrap();
            let model = bouquet_of_cocycle(&c, &pi, &aut_xm).unwrap();
            let t = comparison_functor(&model, &bq, fam);
            assert!(
                check_functor(&model.gamma, &bq.gamma, &t).is_weak_equivalence(),
                "{name}"
            );
            assert!(defined_over(&model, &bq, &t));
        }
        assert!(is_isomorphic(&bq.extension.b, &e.b));
    }
}

pub fn theta_auto_identities() {
    for (name, _, gamma) in extension_bouquets() {
        let g = gamma.group().clone();
        for x in 0..gamma.object_count() {
            let vg = gamma.vertex_group(x);
            for h in g.elements() {
                for &lam in gamma.hom(gamma.act_obj(h, x), x) {
                    let th = theta_auto(&gamma, x, h, lam).unwrap();
                    let auto: BTreeSet<usize> = th.iter().copied().collect();
                    assert_eq!(auto.len(), th.len(), "ϑ is bijective");
                    for i in vg.group.elements() {
                        for j in vg.group.elements() {
                            assert_eq!(
                                th[vg.group.mul(i, j)],
                                vg.group.mul(th[i], th[j]),
                                "ϑ is multiplicative"
                            );
                        }
                        // ᵍα = λ⁻¹∘ϑ(α)∘λ
                        let back = gamma.chain(&[gamma.inverse(lam), vg.morphisms[th[i]], lam]);
                        assert_eq!(back, gamma.act_mor(h, vg.morphisms[i]), "{name}");
                    }
                    for &lam2 in gamma.hom(gamma.act_obj(h, x), x) {
                        let th2 = theta_auto(&gamma, x, h, lam2).unwrap();
                        let s = vg.position(gamma.compose(lam2, gamma.inverse(lam)).unwrap()).unwrap();
                        assert!(vg.group.elements().all(|i| th2[i] == vg.group.conj(s, th[i])), "ι_s∘ϑ");
                    }
                    let hi = g.inv(h);
                    for &mu in gamma.hom(gamma.act_obj(hi, x), x) {
                        let th_mu = theta_auto(&gamma, x, hi, mu).unwrap();
                        let eps = vg.position(gamma.compose(mu, gamma.act_mor(hi, lam)).unwrap()).unwrap();
                        assert!(vg.group.elements().all(|i| th_mu[th[i]] == vg.group.conj(eps, i)));
                    }
                }
            }
        }
    }
}

// -------------------------------------------------------------- bitorsors

pub fn bitorsors_biject_with_h1() {
    for exm in models() {
        let cls = classify_bitorsors(&exm, &budget()).unwrap();
        let oracle = naive_h1(&exm);
        assert_eq!(cls.count(), oracle.len(), "{}", exm.name());
        assert_eq!(cls.h1.count(), oracle.len());
        let index = orbit_index(&oracle);
        let z1 = enumerate_z1(&exm, &budget()).unwrap();
        assert_eq!(z1.len(), index.len(), "Z¹ sizes agree");
        for (i, c) in z1.iter().enumerate() {
            for (j, c2) in z1.iter().enumerate() {
                assert_eq!(cls.member_class[i] == cls.member_class[j], index[c] == index[c2]);
            }
        }
        for (k, b) in cls.bitorsors.iter().enumerate() {
            for p in 0..b.size {
                let c = bitorsor_to_cocycle(b, p, &exm);
                assert_eq!(cls.h1.class_of(&c), Some(k));
                assert_eq!(cocycle_to_bitorsor(&c, &exm).unwrap().size, b.size);
            }
        }
    }
}

fn q_fixed(exm: &EquivariantCrossedModule) -> Vec<usize> {
    let parts = crossed_extension_parts(exm);
    parts
        .q
        .group
        .elements()
        .filter(|&a| exm.g().elements().all(|x| parts.g_on_q.apply(x, a) == a))
        .collect()
}

pub fn obstruction_vanishes_iff_lift_exists() {
    for exm in models() {
        let parts = crossed_extension_parts(&exm);
        let z1 = naive_z1(&exm);
        let reports = obstruction_all(&exm, &budget()).unwrap();
        assert_eq!(reports.iter().map(|r| r.a).collect::<Vec<_>>(), q_fixed(&exm));
        for r in &reports {
            let lift = z1.iter().any(|c| parts.pi(c.tau) == r.a);
            let split = splits(&r.b_ext.b, &r.b_ext.sigma, exm.g());
            assert_eq!(r.vanishes, lift, "{} at a = {}", exm.name(), r.a);
            assert_eq!(r.vanishes, split, "{} at a = {}", exm.name(), r.a);
            assert_eq!(r.vanishes, r.o_class == 0);
            match &r.bitorsor_witness {
                Some(w) => {
                    assert!(r.vanishes);
                    assert_eq!(check_cocycle1(&exm, w), Ok(()));
                    assert_eq!(parts.pi(w.tau), r.a);
                }
                None => assert!(!r.vanishes),
            }
        }
    }
}

pub fn pi_star_image_is_the_unobstructed_set() {
    for exm in models() {
        let parts = crossed_extension_parts(&exm);
        let cls = classify_bitorsors(&exm, &budget()).unwrap();
        let image: BTreeSet<usize> = cls.bitorsors.iter().map(|b| pi_star(b, &exm, &parts)).collect();
        let unobstructed: BTreeSet<usize> = obstruction_all(&exm, &budget())
            .unwrap()
            .iter()
            .filter(|r| r.vanishes)
            .map(|r| r.a)
            .collect();
        assert_eq!(image, unobstructed, "{}", exm.name());
    }
}

pub fn aut_bitorsors_are_two_sided_torsors() {
    for exm in aut_models() {
        let xm = exm.base();
        let m = exm.m();
        for c in enumerate_z1(&exm, &budget()).unwrap() {
            let b = cocycle_to_bitorsor(&c, &exm).unwrap();
            let left = left_action(&b, &exm);
            for p in 0..b.size {
                // m ↦ [p \ m*p] is an automorphism, and it is ξ(p) = α(p)⁻¹
                let map: Vec<usize> = m.elements().map(|a| b.divide(p, left[a * b.size + p])).collect();
                assert_eq!(map, xm.l_action().row(b.xi(&exm, p)));
                assert_eq!(exm.l().inv(b.alpha[p]), b.xi(&exm, p));
                for q in 0..b.size {
                    let movers = m.elements().filter(|&a| left[a * b.size + p] == q).count();
                    assert_eq!(movers, 1, "left action is simply transitive");
                }
            }
        }
    }
}

pub fn coset_sizes_match_image() {
    for exm in models() {
        let parts = crossed_extension_parts(&exm);
        let image = exm.base().boundary().image();
        for r in obstruction_all(&exm, &budget()).unwrap() {
            assert_eq!(r.l_a.len(), image.len(), "{}", exm.name());
            assert!(r.l_a.iter().all(|&x| parts.pi(x) == r.a));
            assert!(r.l_a.contains(&r.chosen_x));
        }
    }
}
