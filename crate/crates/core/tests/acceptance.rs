//! The nine acceptance criteria, one `PASS`/`FAIL` line each. Runs
//! without the libtest harness so the lines are always printed.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use indpro::defsets::{bundled, increasing_union, type_system, DefCategory, DefSet};
use indpro::fincat::FinCategory;
use indpro::indpro::{
    build_iso_from_points_ind, build_iso_from_points_pro, compose_ind, compose_pro, hom_ind, identity_ind,
    identity_pro, ind_from_base,
};
use indpro::points::{
    d_on_morphisms, graph_to_morphism, hom_dm, point_graph, points_ind, points_pro, required_bound, DmMode,
    GraphSubobject,
};
use indpro::sample::{bijective_ind, bijective_pro, non_bijective_ind, non_bijective_pro};
use indpro::setval::filtered_colimit;
use indpro::verify::{run_suite, strict_chains, VerifyConfig, SUITES};
use indpro::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

fn structures() -> Vec<(&'static str, DefCategory)> {
    vec![
        ("S1", DefCategory::new(bundled::s1())),
        ("S2", DefCategory::new(bundled::s2())),
        ("S3", DefCategory::new(bundled::s3())),
    ]
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn hom_dm_bijection() -> Outcome {
    let mut total = 0;
    for (name, cat) in structures() {
        for y in cat.enumerate(1).map_err(e)? {
            let h = hom_dm(&cat, 1, &y, DmMode::Full).map_err(e)?;
            ensure(h.class_count() == y.len(), || {
                format!("{name} {}: {} classes, {} points", cat.set_label(&y), h.class_count(), y.len())
            })?;
            for c in 0..h.class_count() {
                // the forward map evaluates the representative at its point
                let (o, f) = h.representative(c);
                let obj = &h.index().objects()[o];
                let x = &h.index().sets()[obj.set];
                let a = x.position(obj.point).ok_or("point outside its set")?;
                ensure(f.apply_at(a) == h.forward[c], || format!("{name}: evaluation at class {c}"))?;
                ensure(h.inverse[y.position(h.forward[c]).unwrap()] == c, || format!("{name}: class {c} not recovered"))?;
            }
            for (p, &b) in y.members().iter().enumerate() {
                ensure(h.forward[h.inverse[p]] == b, || format!("{name}: point {p} not recovered"))?;
            }
            total += y.len();
        }
    }
    Ok(format!("points={total}"))
}

fn d_fully_faithful() -> Outcome {
    let mut counts = Vec::new();
    for ((name, cat), expected) in structures().into_iter().zip([6, 3, 1]) {
        let oracle = brute_force_automorphisms(cat.structure());
        ensure(oracle == expected, || format!("{name}: brute force finds {oracle} automorphisms"))?;
        let bound = required_bound(&cat).max(1);
        let d = d_on_morphisms(&cat, &cat, bound, DmMode::Full).map_err(e)?;
        ensure(d.families.len() == oracle, || format!("{name}: {} endomorphisms, |Aut| = {oracle}", d.families.len()))?;
        counts.push(format!("{name}:{}", d.families.len()));
    }
    Ok(counts.join(","))
}

fn hom_calculus() -> Outcome {
    let base = FinCategory::finite_sets(&[0, 1, 2, 3]).map_err(e)?;
    let tables = finite_set_tables(&base);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut total = 0;
    for s in 0..200 {
        let a = random_base_system(&mut rng, &base, &tables);
        let b = random_base_system(&mut rng, &base, &tables);
        let count = hom_ind(&base, &a, &b).map_err(e)?.len();
        let oracle = count_natural_transformations(&base, &ColimPresheaf::new(&base, &a), &ColimPresheaf::new(&base, &b));
        ensure(count == oracle, || format!("sample {s}: hom_ind {count}, natural transformations {oracle}"))?;
        total += count;
    }
    Ok(format!("samples=200 morphisms={total}"))
}

fn filtered_colimits() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut elements = 0;
    for s in 0..500 {
        let d = random_filtered_diagram(&mut rng, 4);
        let r = filtered_colimit(&d, None).map_err(e)?;
        let c = d.index();
        let arrows: Vec<_> = (0..c.morphism_count()).map(|t| (c.dom(t), c.cod(t), d.map(t).to_vec())).collect();
        let oracle = zigzag_classes(d.sizes(), &arrows);
        let got: Vec<Vec<usize>> = (0..d.sizes().len())
            .map(|i| (0..d.sizes()[i]).map(|x| r.class(i, x)).collect())
            .collect();
        ensure(same_partition(&got, &oracle), || format!("diagram {s}: partition differs from the zig-zag closure"))?;
        for i in 0..d.sizes().len() {
            for x in 0..d.sizes()[i] {
                for j in 0..d.sizes().len() {
                    for y in 0..d.sizes()[j] {
                        let same = r.class(i, x) == r.class(j, y);
                        ensure(same == filtered_relation(&d, i, x, j, y), || {
                            format!("diagram {s}: ({i},{x}) and ({j},{y}) disagree with the two-sided test")
                        })?;
                    }
                }
                elements += 1;
            }
        }
    }
    Ok(format!("diagrams=500 elements={elements}"))
}

fn compactness() -> Outcome {
    let cats = structures();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for s in 0..100 {
        let cat = &cats[s % 3].1;
        let f = bijective_ind(cat, &mut rng).map_err(e)?;
        let inv = build_iso_from_points_ind(cat, &f).map_err(|err| format!("ind sample {s}: {err}"))?.certificate.inverse;
        ensure(compose_ind(cat, &f, &inv).map_err(e)? == identity_ind(cat, f.source()).map_err(e)?, || format!("ind sample {s}: g . f"))?;
        ensure(compose_ind(cat, &inv, &f).map_err(e)? == identity_ind(cat, f.target()).map_err(e)?, || format!("ind sample {s}: f . g"))?;

        let f = bijective_pro(cat, &mut rng).map_err(e)?;
        let inv = build_iso_from_points_pro(cat, &f).map_err(|err| format!("pro sample {s}: {err}"))?.certificate.inverse;
        ensure(compose_pro(cat, &f, &inv).map_err(e)? == identity_pro(cat, f.source()).map_err(e)?, || format!("pro sample {s}: g . f"))?;
        ensure(compose_pro(cat, &inv, &f).map_err(e)? == identity_pro(cat, f.target()).map_err(e)?, || format!("pro sample {s}: f . g"))?;
    }
    for s in 0..20 {
        let cat = &cats[s % 3].1;
        let f = non_bijective_ind(cat, &mut rng).map_err(e)?;
        let r = build_iso_from_points_ind(cat, &f);
        ensure(matches!(r, Err(Error::NotBijective(_))), || format!("ind negative {s}: {:?}", r.map(|_| ())))?;
        let f = non_bijective_pro(cat, &mut rng).map_err(e)?;
        let r = build_iso_from_points_pro(cat, &f);
        ensure(matches!(r, Err(Error::NotBijective(_))), || format!("pro negative {s}: {:?}", r.map(|_| ())))?;
    }
    Ok("bijective=100+100 rejected=20+20".into())
}

fn graph_round_trip() -> Outcome {
    let cats = structures();
    let mut maps = 0;
    for (name, cat) in &cats[1..] {
        let m = cat.full(1).map_err(e)?;
        for h in cat.hom(&m, &m, usize::MAX).map_err(e)? {
            let f = ind_from_base(cat, &h).map_err(e)?;
            let back = graph_to_morphism(cat, &point_graph(cat, &f).map_err(e)?).map_err(e)?;
            ensure(back == f, || format!("{name}: {h:?} does not come back"))?;
            maps += 1;
        }
    }
    let s1 = &cats[0].1;
    let m = s1.full(1).map_err(e)?;
    let r = GraphSubobject::constant(s1, m.clone(), m, s1.full(2).map_err(e)?).map_err(e)?;
    let out = graph_to_morphism(s1, &r);
    ensure(matches!(out, Err(Error::NotAFunction(_))), || format!("S1 full square: {:?}", out.map(|_| ())))?;
    Ok(format!("maps={maps}"))
}

fn members(x: &DefSet) -> BTreeSet<u32> {
    x.members().iter().copied().collect()
}

fn unions_and_types() -> Outcome {
    let cat = DefCategory::new(bundled::s3());
    let chains = strict_chains(&cat.enumerate(1).map_err(e)?);
    for chain in &chains {
        let union: BTreeSet<u32> = chain.iter().flat_map(members).collect();
        let meet: BTreeSet<u32> = chain.iter().map(members).reduce(|a, b| &a & &b).unwrap();

        let u = increasing_union(&cat, chain).map_err(e)?;
        let pts = points_ind(&u);
        let got: BTreeSet<u32> = (0..pts.class_count())
            .map(|c| {
                let (i, k) = pts.representative(c);
                u.object(i).members()[k]
            })
            .collect();
        ensure(got == union && pts.class_count() == union.len(), || format!("union of {chain:?}"))?;

        let mut down = chain.clone();
        down.reverse();
        let t = type_system(&cat, &down).map_err(e)?;
        let fams = points_pro(&t).map_err(e)?;
        let got: BTreeSet<u32> = fams.families().iter().map(|f| t.object(0).members()[f[0]]).collect();
        ensure(got == meet && fams.len() == meet.len(), || format!("intersection of {down:?}"))?;
    }
    Ok(format!("chains={}", chains.len()))
}

fn slices() -> Outcome {
    let s3 = Arc::new(DefCategory::new(bundled::s3()));
    let config = VerifyConfig::new(vec![("S3".into(), s3)]);
    let r = run_suite("slice", &config).map_err(e)?;
    ensure(r.passed(), || r.render_text())?;
    let line = r.render_text();
    Ok(line.lines().next().unwrap_or_default().trim_start_matches("PASS ").to_string())
}

fn determinism() -> Outcome {
    let config = VerifyConfig {
        seed: 7,
        ..VerifyConfig::bundled()
    };
    for suite in SUITES {
        let first = run_suite(suite, &config).map_err(e)?.render_text();
        let second = run_suite(suite, &config).map_err(e)?.render_text();
        ensure(first == second, || format!("{suite} differs between runs"))?;
    }
    Ok(format!("suites={}", SUITES.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 9] = [
        ("1 hom-dm-bijection", hom_dm_bijection, Some(10)),
        ("2 d-fully-faithful", d_fully_faithful, Some(10)),
        ("3 hom-calculus", hom_calculus, Some(30)),
        ("4 filtered-colimits", filtered_colimits, Some(10)),
        ("5 compactness", compactness, Some(60)),
        ("6 graph-round-trip", graph_round_trip, Some(10)),
        ("7 unions-and-types", unions_and_types, Some(5)),
        ("8 slices", slices, Some(10)),
        ("9 determinism", determinism, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => Err(format!("took {elapsed:.2?}, limit {s}s")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {name} {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} {why} ({elapsed:.2?})");
            }
        }
    }
    println!("acceptance: {}/9 passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
