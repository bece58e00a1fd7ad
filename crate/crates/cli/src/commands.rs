use std::collections::BTreeMap;

use serde_json::{json, Value};
use xcohom::bitorsors::{classify_bitorsors, obstruction_all, pi_star, ObstructionReport};
use xcohom::bouquets::{
    b_gamma, bouquet_of_cocycle, bouquet_to_cocycle, check_functor, gamma_of_extension, psi, standard_family,
};
use xcohom::cohomology::{
    enumerate_z2, h0 as fixed_points, h0_of_action, h1_classes, h2_classes, Cocycle1, Cocycle2, Mode,
};
use xcohom::extensions::{classify_extensions, cocycle_to_extension, section_to_cocycle};
use xcohom::group::FiniteGroup;
use xcohom::search::Budget;
use xcohom::xmod::{crossed_extension_parts, fixture, FIXTURES};

use crate::model::{canonical, digest, Model};
use crate::report::{Outcome, Table};
use crate::CliError;

pub struct Context<'a> {
    pub model: &'a Model,
    pub pi: &'a FiniteGroup,
    pub budget: &'a Budget,
}

fn counts(pairs: &[(&'static str, usize)]) -> BTreeMap<&'static str, usize> {
    pairs.iter().copied().collect()
}

fn labels(g: &FiniteGroup, xs: &[usize]) -> String {
    let inner: Vec<&str> = xs.iter().map(|&x| g.label(x)).collect();
    format!("[{}]", inner.join(","))
}

fn rows(f: &[usize], width: usize) -> String {
    let inner: Vec<String> = f.chunks(width.max(1)).map(|r| format!("{r:?}")).collect();
    inner.join(" ")
}

fn lib<E: serde::Serialize + std::fmt::Display>(e: E) -> CliError {
    CliError::library(e)
}

pub fn fixtures() -> Result<Outcome, CliError> {
    let mut table = Table::new(&["name", "|M|", "|L|", "|G|", "faithful", "digest"]);
    let mut list = Vec::new();
    for name in FIXTURES {
        let exm = fixture(name).expect("builtin");
        let d = digest(&exm);
        table.push(vec![
            name.to_string(),
            exm.m().order().to_string(),
            exm.l().order().to_string(),
            exm.g().order().to_string(),
            exm.is_faithful().to_string(),
            d[..16].to_string(),
        ]);
        list.push(json!({
            "name": name,
            "M": exm.m().order(),
            "L": exm.l().order(),
            "G": exm.g().order(),
            "faithful": exm.is_faithful(),
            "digest": d,
        }));
    }
    Ok(Outcome {
        counts: counts(&[("fixtures", list.len())]),
        result: json!({ "fixtures": list }),
        table,
    })
}

pub fn validate(ctx: &Context) -> Result<Outcome, CliError> {
    let exm = &ctx.model.exm;
    let parts = crossed_extension_parts(exm);
    let mut table = Table::new(&["property", "value"]);
    let props = [
        ("M", exm.m().order().to_string()),
        ("L", exm.l().order().to_string()),
        ("G", exm.g().order().to_string()),
        ("A = Ker ∂", parts.a.group.order().to_string()),
        ("Q = Coker ∂", parts.q.group.order().to_string()),
        ("faithful", exm.is_faithful().to_string()),
    ];
    for (k, v) in &props {
        table.push(vec![k.to_string(), v.clone()]);
    }
    Ok(Outcome {
        counts: counts(&[
            ("M", exm.m().order()),
            ("L", exm.l().order()),
            ("G", exm.g().order()),
            ("A", parts.a.group.order()),
            ("Q", parts.q.group.order()),
        ]),
        result: json!({
            "valid": true,
            "faithful": exm.is_faithful(),
            "model": canonical(exm),
        }),
        table,
    })
}

pub fn h0(ctx: &Context) -> Result<Outcome, CliError> {
    let exm = &ctx.model.exm;
    let parts = crossed_extension_parts(exm);
    let fixed = fixed_points(exm);
    let qg = h0_of_action(&parts.g_on_q);
    let mut table = Table::new(&["set", "elements"]);
    table.push(vec!["H0".into(), labels(exm.m(), &fixed)]);
    table.push(vec!["Q^G".into(), labels(&parts.q.group, &qg)]);
    Ok(Outcome {
        counts: counts(&[("h0", fixed.len()), ("q_fixed", qg.len())]),
        result: json!({ "h0": fixed, "q_fixed": qg }),
        table,
    })
}

fn cocycle1_row(class: usize, size: usize, c: &Cocycle1) -> Vec<String> {
    vec![
        class.to_string(),
        size.to_string(),
        format!("{:?}", c.f),
        c.tau.to_string(),
    ]
}

pub fn h1(ctx: &Context) -> Result<Outcome, CliError> {
    let classes = h1_classes(&ctx.model.exm, ctx.budget).map_err(lib)?;
    let mut table = Table::new(&["class", "size", "f", "tau"]);
    for (k, (c, size)) in classes
        .representatives()
        .into_iter()
        .zip(classes.class_sizes())
        .enumerate()
    {
        table.push(cocycle1_row(k, size, c));
    }
    Ok(Outcome {
        counts: counts(&[("z1", classes.members().len()), ("classes", classes.count())]),
        result: json!({ "classes": classes, "class_sizes": classes.class_sizes() }),
        table,
    })
}

fn cocycle2_row(class: usize, size: usize, c: &Cocycle2) -> Vec<String> {
    vec![
        class.to_string(),
        size.to_string(),
        format!("{:?}", c.phi),
        rows(&c.f, c.order()),
    ]
}

pub fn h2(ctx: &Context, mode: Mode) -> Result<Outcome, CliError> {
    let classes = h2_classes(ctx.pi, ctx.model.exm.base(), mode, ctx.budget).map_err(lib)?;
    let mut table = Table::new(&["class", "size", "phi", "f"]);
    for (k, (c, size)) in classes
        .representatives()
        .into_iter()
        .zip(classes.class_sizes())
        .enumerate()
    {
        table.push(cocycle2_row(k, size, c));
    }
    Ok(Outcome {
        counts: counts(&[("z2", classes.members().len()), ("classes", classes.count())]),
        result: json!({ "classes": classes, "class_sizes": classes.class_sizes() }),
        table,
    })
}

pub fn classify_ext(ctx: &Context, mode: Mode) -> Result<Outcome, CliError> {
    let cls = classify_extensions(ctx.pi, ctx.model.exm.base(), mode, ctx.budget).map_err(lib)?;
    let mut table = Table::new(&["class", "|B|", "element orders", "phi", "f"]);
    let mut out = Vec::new();
    for (k, (e, c)) in cls.extensions.iter().zip(cls.classes.representatives()).enumerate() {
        let census = e.b.order_census();
        let census_text: Vec<String> = census.iter().map(|(o, n)| format!("{o}:{n}")).collect();
        table.push(vec![
            k.to_string(),
            e.b.order().to_string(),
            census_text.join(" "),
            format!("{:?}", c.phi),
            rows(&c.f, c.order()),
        ]);
        out.push(json!({
            "class": k,
            "order": e.b.order(),
            "order_census": census,
            "cayley_table": e.b.cayley_table(),
            "cocycle": c,
        }));
    }
    Ok(Outcome {
        counts: counts(&[("z2", cls.classes.members().len()), ("classes", cls.classes.count())]),
        result: json!({ "mode": mode, "extensions": out }),
        table,
    })
}

pub fn bitorsors(ctx: &Context) -> Result<Outcome, CliError> {
    let exm = &ctx.model.exm;
    let parts = crossed_extension_parts(exm);
    let cls = classify_bitorsors(exm, ctx.budget).map_err(lib)?;
    let mut table = Table::new(&["class", "f", "tau", "alpha", "pi*"]);
    let mut out = Vec::new();
    for (k, (b, c)) in cls.bitorsors.iter().zip(cls.h1.representatives()).enumerate() {
        let p = pi_star(b, exm, &parts);
        table.push(vec![
            k.to_string(),
            format!("{:?}", c.f),
            c.tau.to_string(),
            format!("{:?}", b.alpha),
            parts.q.group.label(p).to_string(),
        ]);
        out.push(json!({ "class": k, "cocycle": c, "bitorsor": b, "pi_star": p }));
    }
    Ok(Outcome {
        counts: counts(&[("classes", cls.count()), ("h1_classes", cls.h1.count())]),
        result: json!({ "bitorsors": out }),
        table,
    })
}

fn parse_element(ctx: &Context, text: &str) -> Result<usize, CliError> {
    let exm = &ctx.model.exm;
    let parts = crossed_extension_parts(exm);
    let q = &parts.q.group;
    if let Ok(i) = text.parse::<usize>() {
        if i < q.order() {
            return Ok(i);
        }
    }
    if let Some(i) = q.find(text) {
        return Ok(i);
    }
    if let Some(x) = exm.l().find(text) {
        return Ok(parts.pi(x));
    }
    Err(CliError::Parse(format!("{text:?} names no element of Q")))
}

pub fn obstruction(ctx: &Context, element: Option<&str>, all: bool) -> Result<Outcome, CliError> {
    let exm = &ctx.model.exm;
    let parts = crossed_extension_parts(exm);
    let reports: Vec<ObstructionReport> = match (element, all) {
        (Some(text), _) => {
            let a = parse_element(ctx, text)?;
            vec![xcohom::bitorsors::obstruction(exm, a, ctx.budget).map_err(lib)?]
        }
        (None, _) => obstruction_all(exm, ctx.budget).map_err(lib)?,
    };
    let mut table = Table::new(&["a", "L_a", "x", "|B|", "o(a)", "vanishes", "witness"]);
    for r in &reports {
        table.push(vec![
            parts.q.group.label(r.a).to_string(),
            labels(exm.l(), &r.l_a),
            exm.l().label(r.chosen_x).to_string(),
            r.b_ext_elements.len().to_string(),
            r.o_class.to_string(),
            r.vanishes.to_string(),
            match &r.bitorsor_witness {
                Some(c) => format!("f={:?} tau={}", c.f, exm.l().label(c.tau)),
                None => "-".into(),
            },
        ]);
    }
    let vanishing = reports.iter().filter(|r| r.vanishes).count();
    Ok(Outcome {
        counts: counts(&[("elements", reports.len()), ("vanishing", vanishing)]),
        result: json!({
            "q_labels": parts.q.group.labels(),
            "reports": reports,
        }),
        table,
    })
}

pub fn bouquet_roundtrip(ctx: &Context) -> Result<Outcome, CliError> {
    let (pi, xm) = (ctx.pi, ctx.model.exm.base());
    let thick = h2_classes(pi, xm, Mode::Thick, ctx.budget).map_err(lib)?;
    let z2 = enumerate_z2(pi, xm, ctx.budget).map_err(lib)?;
    let mut table = Table::new(&["cocycle", "extension", "bouquet", "psi"]);
    let (mut ext_fail, mut bq_fail, mut psi_fail) = (0, 0, 0);
    let mut out = Vec::new();
    for (i, c) in z2.iter().enumerate() {
        let e = cocycle_to_extension(c, pi, xm).map_err(lib)?;
        let back = section_to_cocycle(&e, &e.canonical_section()).map_err(lib)?;
        let ext_ok = thick.class_of(&back) == thick.class_of(c);
        let bq = bouquet_of_cocycle(c, pi, xm).map_err(lib)?;
        let bq_ok = bouquet_to_cocycle(&bq, &standard_family(&bq)).map_err(lib)? == *c;
        let gamma = gamma_of_extension(&e.b, &e.sigma, pi);
        let bg = b_gamma(&gamma, 0).map_err(lib)?;
        let gamma_bg = gamma_of_extension(&bg.group, &bg.p, pi);
        let psi_ok = check_functor(&gamma_bg, &gamma, &psi(&gamma, &bg, &gamma_bg)).is_weak_equivalence();
        ext_fail += usize::from(!ext_ok);
        bq_fail += usize::from(!bq_ok);
        psi_fail += usize::from(!psi_ok);
        table.push(vec![
            i.to_string(),
            ext_ok.to_string(),
            bq_ok.to_string(),
            psi_ok.to_string(),
        ]);
        out.push(json!({ "cocycle": c, "extension": ext_ok, "bouquet": bq_ok, "psi": psi_ok }));
    }
    Ok(Outcome {
        counts: counts(&[
            ("cocycles", z2.len()),
            ("extension_failures", ext_fail),
            ("bouquet_failures", bq_fail),
            ("psi_failures", psi_fail),
        ]),
        result: Value::Array(out),
        table,
    })
}
