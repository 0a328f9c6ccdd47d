//! Named verification suites over a list of structures, with reports that
//! depend only on the configuration.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::{Category, Over};
use crate::defsets::{bundled, increasing_union, type_system, DefCategory, DefMap, DefSet, Definability};
use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::indpro::{
    build_iso_from_points_ind, build_iso_from_points_pro, check_iso_lemma, check_iso_pullback, check_iso_pushout,
    ind_from_base, ind_morphism, slice_transport_ind, slice_transport_pro, IndObject,
};
use crate::points::{
    d_on_morphisms, graph_to_morphism, hom_dm, point_graph, pro_subsets, required_bound, verify_cor_proind,
    verify_prop_morphisms, DmMode, GraphSubobject,
};
use crate::sample::{
    bijective_ind, bijective_pro, candidate_sets, ind_point_codes, non_bijective_ind, non_bijective_pro,
    pro_point_codes, random_ind,
};

pub const SUITES: [&str; 6] = ["prop-points", "prop-compact", "prop-morphisms", "cor-proind", "lemma-iso", "slice"];

#[derive(Clone)]
pub struct VerifyConfig {
    pub structures: Vec<(String, Arc<DefCategory>)>,
    pub seed: u64,
    /// Arity bound of `d(M)`.
    pub arity_bound: usize,
    /// Randomized samples per randomized check.
    pub samples: usize,
    /// Samples that must be rejected, where a check has them.
    pub negatives: usize,
}

impl VerifyConfig {
    pub fn new(structures: Vec<(String, Arc<DefCategory>)>) -> Self {
        Self {
            structures,
            seed: 0,
            arity_bound: 1,
            samples: 100,
            negatives: 20,
        }
    }

    /// The three bundled structures.
    pub fn bundled() -> Self {
        let structures = bundled::ALL
            .iter()
            .map(|(name, text)| {
                let m = crate::defsets::parse_structure(text).expect("bundled structure");
                (name.to_string(), Arc::new(DefCategory::new(Definability::new(m))))
            })
            .collect();
        Self::new(structures)
    }
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub fields: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One `PASS name k=v ...` or `FAIL ...` line per check and a summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            for (k, v) in &c.fields {
                let _ = write!(out, " {k}={v}");
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "{}: {} {passed}/{}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        );
        out
    }
}

type Fields = Vec<(String, String)>;

fn field(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

/// Runs `body`; an error or a failed assertion becomes a failing line.
fn check(name: String, body: impl FnOnce() -> Result<Fields>) -> Check {
    match body() {
        Ok(fields) => Check {
            name,
            passed: true,
            fields,
        },
        Err(e) => Check {
            name,
            passed: false,
            fields: vec![field("error", format!("{e:?}").replace('\n', " "))],
        },
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(what()))
    }
}

pub fn run_suite(name: &str, config: &VerifyConfig) -> Result<Report> {
    let checks = match name {
        "prop-points" => prop_points(config),
        "prop-compact" => prop_compact(config),
        "prop-morphisms" => prop_morphisms(config),
        "cor-proind" => cor_proind(config),
        "lemma-iso" => lemma_iso(config),
        "slice" => slice(config),
        other => return Err(Error::Unsupported(format!("unknown suite `{other}`"))),
    };
    Ok(Report {
        suite: name.to_string(),
        checks,
    })
}

fn unary(cat: &DefCategory) -> Result<Vec<DefSet>> {
    cat.enumerate(1)
}

/// All strictly increasing chains in a list of sets.
pub fn strict_chains(sets: &[DefSet]) -> Vec<Vec<DefSet>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<DefSet>> = sets.iter().map(|s| vec![s.clone()]).collect();
    stack.reverse();
    while let Some(chain) = stack.pop() {
        let last = chain.last().unwrap().clone();
        out.push(chain.clone());
        for s in sets.iter().rev() {
            if last.is_subset(s) && last != *s {
                let mut next = chain.clone();
                next.push(s.clone());
                stack.push(next);
            }
        }
    }
    out
}

fn prop_points(config: &VerifyConfig) -> Vec<Check> {
    let bound = config.arity_bound;
    let mut checks = Vec::new();
    for (name, cat) in &config.structures {
        checks.push(check(format!("hom-dm/{name}"), || {
            let mut points = 0;
            let mut sets = 0;
            for y in unary(cat)? {
                let h = hom_dm(cat, bound, &y, DmMode::Full)?;
                ensure(h.class_count() == y.len(), || {
                    format!("{} classes for {} points", h.class_count(), y.len())
                })?;
                for (p, &b) in y.members().iter().enumerate() {
                    ensure(h.forward[h.inverse[p]] == b, || "inverse then forward".into())?;
                }
                for (c, &v) in h.forward.iter().enumerate() {
                    ensure(h.inverse[y.position(v).unwrap()] == c, || "forward then inverse".into())?;
                }
                points += y.len();
                sets += 1;
            }
            Ok(vec![field("bound", bound), field("sets", sets), field("points", points)])
        }));
        checks.push(check(format!("naturality/{name}"), || {
            let ys = unary(cat)?;
            let homs: Vec<_> = ys.iter().map(|y| hom_dm(cat, bound, y, DmMode::Full)).collect::<Result<_>>()?;
            let mut squares = 0;
            for (a, y) in ys.iter().enumerate() {
                for (b, y2) in ys.iter().enumerate() {
                    for g in cat.hom(y, y2)? {
                        for (p, &class) in homs[a].inverse.iter().enumerate() {
                            let (o, h) = homs[a].representative(class);
                            let obj = &homs[a].index().objects()[o];
                            let x = &homs[a].index().sets()[obj.set];
                            let moved = homs[b]
                                .classify(x, obj.point, &h.then(&g))
                                .ok_or_else(|| Error::Internal("object missing from the index".into()))?;
                            ensure(homs[b].forward[moved] == g.apply_at(p), || {
                                format!("square fails at member {p}")
                            })?;
                        }
                        squares += 1;
                    }
                }
            }
            Ok(vec![field("maps", squares)])
        }));
        checks.push(check(format!("d-morphisms/{name}"), || {
            let b = bound.max(required_bound(cat));
            let mode = if b <= cat.arity_cap() { DmMode::Full } else { DmMode::Orbits };
            let e = d_on_morphisms(cat, cat, b, mode)?;
            ensure(e.families.len() == cat.aut().order(), || "count differs from |Aut(M)|".into())?;
            Ok(vec![
                field("bound", b),
                field("objects", e.index_objects),
                field("families", e.families.len()),
                field("aut", cat.aut().order()),
            ])
        }));
        checks.push(check(format!("unions-and-types/{name}"), || {
            let chains = strict_chains(&unary(cat)?);
            for chain in &chains {
                let top = chain.last().unwrap();
                let u = increasing_union(cat, chain)?;
                ensure(ind_point_codes(&u) == top.members(), || "union differs".into())?;
                let mut down = chain.clone();
                down.reverse();
                let t = type_system(cat, &down)?;
                ensure(pro_point_codes(&t)? == chain[0].members(), || "intersection differs".into())?;
            }
            Ok(vec![field("chains", chains.len())])
        }));
    }
    checks
}

fn structure_cycle(config: &VerifyConfig, s: usize) -> &Arc<DefCategory> {
    &config.structures[s % config.structures.len()].1
}

fn prop_compact(config: &VerifyConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    checks.push(check("ind-bijective".into(), || {
        for s in 0..config.samples {
            let cat = structure_cycle(config, s);
            let f = bijective_ind(cat, &mut rng)?;
            build_iso_from_points_ind(cat, &f)?;
        }
        Ok(vec![field("samples", config.samples)])
    }));
    checks.push(check("pro-bijective".into(), || {
        for s in 0..config.samples {
            let cat = structure_cycle(config, s);
            let f = bijective_pro(cat, &mut rng)?;
            build_iso_from_points_pro(cat, &f)?;
        }
        Ok(vec![field("samples", config.samples)])
    }));
    checks.push(check("ind-non-bijective".into(), || {
        for s in 0..config.negatives {
            let cat = structure_cycle(config, s);
            let f = non_bijective_ind(cat, &mut rng)?;
            let r = build_iso_from_points_ind(cat, &f);
            ensure(matches!(r, Err(Error::NotBijective(_))), || format!("sample {s}: {r:?}"))?;
        }
        Ok(vec![field("samples", config.negatives)])
    }));
    checks.push(check("pro-non-bijective".into(), || {
        for s in 0..config.negatives {
            let cat = structure_cycle(config, s);
            let f = non_bijective_pro(cat, &mut rng)?;
            let r = build_iso_from_points_pro(cat, &f);
            ensure(matches!(r, Err(Error::NotBijective(_))), || format!("sample {s}: {r:?}"))?;
        }
        Ok(vec![field("samples", config.negatives)])
    }));
    checks
}

fn prop_morphisms(config: &VerifyConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    for (name, cat) in &config.structures {
        checks.push(check(format!("round-trip/{name}"), || {
            let m = cat.full(1)?;
            let homs = cat.hom(&m, &m)?;
            for h in &homs {
                let f = ind_from_base(cat.as_ref(), h)?;
                let back = graph_to_morphism(cat, &point_graph(cat, &f)?)?;
                ensure(back == f, || format!("{h:?} comes back different"))?;
            }
            Ok(vec![field("maps", homs.len())])
        }));
        checks.push(check(format!("not-a-function/{name}"), || {
            let m = cat.full(1)?;
            if m.len() < 2 {
                return Ok(vec![field("skipped", "one-point universe")]);
            }
            let r = GraphSubobject::constant(cat, m.clone(), m.clone(), cat.full(2)?)?;
            let out = graph_to_morphism(cat, &r);
            ensure(matches!(out, Err(Error::NotAFunction(_))), || format!("{out:?}"))?;
            Ok(vec![field("relation", "M×M")])
        }));
    }
    checks.push(check("inverse".into(), || {
        let mut levels = 0;
        for s in 0..config.samples {
            let cat = structure_cycle(config, s);
            let f = bijective_ind(cat, &mut rng)?;
            levels += verify_prop_morphisms(cat, &f)?.levels.len();
            // a system against the same system with every level doubled
            let sets = candidate_sets(cat)?;
            let y = random_ind(cat, &mut rng, &sets)?;
            let doubled: Vec<DefSet> = y.objects().iter().flat_map(|o| [o.clone(), o.clone()]).collect();
            let x = increasing_union(cat, &doubled)?;
            let comps: Vec<_> = (0..x.len()).map(|i| (i / 2, DefMap::identity(x.object(i)))).collect();
            let f = ind_morphism(cat.as_ref(), &x, &y, &comps)?;
            levels += verify_prop_morphisms(cat, &f)?.levels.len();
        }
        Ok(vec![field("samples", 2 * config.samples), field("levels", levels)])
    }));
    checks
}

fn cor_proind(config: &VerifyConfig) -> Vec<Check> {
    let per = (config.samples / 5).max(1);
    config
        .structures
        .iter()
        .enumerate()
        .map(|(k, (name, cat))| {
            check(format!("cor/{name}"), || {
                let r = verify_cor_proind(cat, config.seed.wrapping_add(k as u64), per)?;
                let fields = vec![
                    field("ind_pairs", r.ind_pairs),
                    field("pro_pairs", r.pro_pairs),
                    field("morphisms", r.morphisms),
                    field("lifted", r.lifted),
                    field("realized", r.realized),
                ];
                match r.counterexample {
                    Some(c) => Err(Error::Internal(c)),
                    None => Ok(fields),
                }
            })
        })
        .collect()
}

fn lemma_iso(config: &VerifyConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    checks.push(check("pullback-form".into(), || {
        for s in 0..config.samples {
            let cat = structure_cycle(config, s);
            let f = bijective_ind(cat, &mut rng)?;
            let built = build_iso_from_points_ind(cat, &f)?;
            let cert = check_iso_pullback(cat, &f, &built.g, built.certificate.zero)?;
            ensure(cert.inverse == built.certificate.inverse, || "two inverses".into())?;
        }
        Ok(vec![field("samples", config.samples)])
    }));
    checks.push(check("image-form".into(), || {
        for s in 0..config.samples {
            let cat = structure_cycle(config, s);
            let f = bijective_pro(cat, &mut rng)?;
            let built = build_iso_from_points_pro(cat, &f)?;
            check_iso_pushout(cat, &f, &built.g, built.certificate.zero)?;
        }
        Ok(vec![field("samples", config.samples)])
    }));
    for (name, cat) in &config.structures {
        checks.push(check(format!("condition-fails/{name}"), || {
            let m = cat.full(1)?;
            if m.len() < 2 {
                return Ok(vec![field("skipped", "one-point universe")]);
            }
            // projection off M×M against the diagonal: a section, not an inverse
            let (sq, p1, _) = cat.product(&m, &m);
            let x = IndObject::constant(cat.as_ref(), sq.clone());
            let y = IndObject::constant(cat.as_ref(), m.clone());
            let f = ind_morphism(cat.as_ref(), &x, &y, &[(0, p1)])?;
            let g = cat.map_fn(&m, &sq, |t| vec![t[0], t[0]])?;
            let r = check_iso_lemma(cat.as_ref(), &f, &g, 0, &[x.index().identity(0)]);
            ensure(matches!(r, Err(Error::ConditionFails { index: 0, .. })), || format!("{r:?}"))?;
            let r = check_iso_pullback(cat, &f, &g, 0);
            ensure(matches!(r, Err(Error::NoWitness(0))), || format!("{r:?}"))?;
            Ok(vec![field("levels", 1)])
        }));
    }
    checks.push(check("finite-base".into(), || {
        let c = FinCategory::finite_sets(&[0, 1, 2, 3])?;
        let mut isos = 0;
        for x in 0..4 {
            let sys = IndObject::constant(&c, x);
            for f in c.hom(x, x).iter().copied() {
                let is_iso = c.hom(x, x).iter().any(|&g| c.compose(g, f) == c.identity(x));
                let m = ind_morphism(&c, &sys, &sys, &[(0, f)])?;
                for g in c.hom(x, x).iter().copied() {
                    let r = check_iso_lemma(&c, &m, &g, 0, &[sys.index().identity(0)]);
                    let inverse = c.compose(f, g) == c.identity(x) && is_iso;
                    ensure(r.is_ok() == inverse, || format!("{f} and {g} on object {x}: {r:?}"))?;
                    isos += usize::from(r.is_ok());
                }
            }
        }
        Ok(vec![field("inverse_pairs", isos)])
    }));
    checks
}

fn slice(config: &VerifyConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for (name, cat) in &config.structures {
        checks.push(check(format!("slice/{name}"), || {
            let cat = cat.as_ref();
            let mut ind_pairs = 0;
            let mut pro_pairs = 0;
            let mut morphisms = 0;
            for x in unary(cat)? {
                let subsets: Vec<DefSet> = unary(cat)?.into_iter().filter(|s| s.is_subset(&x)).collect();
                let chains = strict_chains(&subsets);
                let over = Over::new(cat, x.clone());
                let ind: Vec<_> = chains
                    .iter()
                    .map(|chain| {
                        let objs: Vec<_> = chain
                            .iter()
                            .map(|s| over.object(DefMap::inclusion(s, &x).unwrap()).unwrap())
                            .collect();
                        let steps = objs
                            .windows(2)
                            .map(|w| over.morphism(&w[0], &w[1], DefMap::inclusion(&w[0].source, &w[1].source).unwrap()).unwrap())
                            .collect();
                        IndObject::chain(&over, objs, steps)
                    })
                    .collect::<Result<_>>()?;
                for a in &ind {
                    for b in &ind {
                        let r = slice_transport_ind(cat, &x, a, b)?;
                        ensure(r.bijective, || format!("{r:?}"))?;
                        morphisms += r.in_slice;
                        ind_pairs += 1;
                    }
                }
                let pro: Vec<_> = chains
                    .iter()
                    .map(|chain| pro_subsets(cat, &x, chain))
                    .collect::<Result<_>>()?;
                for a in &pro {
                    for b in &pro {
                        let r = slice_transport_pro(cat, &x, a, b)?;
                        ensure(r.bijective, || format!("{r:?}"))?;
                        morphisms += r.in_slice;
                        pro_pairs += 1;
                    }
                }
            }
            Ok(vec![
                field("ind_pairs", ind_pairs),
                field("pro_pairs", pro_pairs),
                field("morphisms", morphisms),
            ])
        }));
    }
    checks
}
