//! Command implementations. Each returns a report; input problems surface as errors.

use std::path::Path;

use serde_json::{json, Value};

use ssetkit_core::delta::{counit_compare, j_embed, loops, pi0_structure, segal_check, DeltaSpace, SegalVerdict};
use ssetkit_core::group::FiniteGroup;
use ssetkit_core::gset::{natural_end, GSet};
use ssetkit_core::gspace::GSimplicialSet;
use ssetkit_core::homology::homology;
use ssetkit_core::kan::kan_check;
use ssetkit_core::localization::{compare_pi0, ho_localize_until_stable, RelativeCategory};
use ssetkit_core::loopgroup::loop_group;
use ssetkit_core::pi1::edge_path_group;
use ssetkit_core::precategory::SegalPrecategory;
use ssetkit_core::presentation::GroupPresentation;
use ssetkit_core::sgroup::{eg_dg, FiniteSimplicialGroup};
use ssetkit_core::slice::{borel, covering_monodromy, monodromy_m, CoveringData, Monodromy};
use ssetkit_core::{Error, SimplicialSet};

use crate::format::{load_document, Document, FormatError, LoadedGSet, LoadedGroup};
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub max_dim: usize,
    pub budget: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("input: {0}")]
    Input(#[from] FormatError),
    #[error("input: {0}")]
    Usage(String),
    #[error("search budget exceeded: {0}")]
    Budget(Error),
    #[error("{0}")]
    Core(Error),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => CommandError::Budget(e),
            Error::Parameter(_)
            | Error::InvalidSet { .. }
            | Error::InvalidGroup(_)
            | Error::InvalidCategory(_)
            | Error::InvalidMap(_)
            | Error::NotReduced(_)
            | Error::NotCovering(_)
            | Error::Truncated { .. } => CommandError::Usage(e.to_string()),
            _ => CommandError::Core(e),
        }
    }
}

impl CommandError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CommandError::Input(_) | CommandError::Usage(_) => 2,
            CommandError::Budget(_) => 3,
            CommandError::Core(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CommandError>;

fn start(command: Vec<String>, opts: &Options) -> Report {
    let mut r = Report::new(command);
    r.bound("max_dim", opts.max_dim);
    r.bound("budget", opts.budget);
    r
}

fn finite_group(path: &Path, opts: &Options) -> Result<FiniteGroup> {
    match load_document(path, opts.max_dim)? {
        Document::Group(g) => Ok(g.finite(opts.budget)?),
        d => Err(CommandError::Usage(format!("expected a group document, found {}", d.kind()))),
    }
}

fn presentation_json(p: &GroupPresentation) -> Value {
    json!({
        "generators": p.generators,
        "relators": p.relators,
        "abelianization": p.abelianization().to_string(),
    })
}

fn classifying_set(g: &FiniteGroup, dim: usize) -> Result<SimplicialSet> {
    let e = eg_dg(&FiniteSimplicialGroup::constant(g, dim), dim)?;
    Ok(e.dg.normalize()?.set)
}

fn subgroup_name(g: &FiniteGroup, t: &GSet) -> String {
    let h = t.stabilizer(0);
    format!("<{}>", h.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(","))
}

pub enum What {
    Homology(usize),
    Pi1,
    Segal(usize),
    Kan(usize),
    LoopGroup(usize),
}

pub fn compute(command: Vec<String>, input: &Path, what: What, opts: &Options) -> Result<Report> {
    let mut r = start(command, opts);
    let doc = load_document(input, opts.max_dim)?;
    r.result("input_kind", doc.kind());
    let set = match &doc {
        Document::Set(s) => Some(s.set.clone()),
        _ => None,
    };
    let space_of = |doc: &Document, m: usize| -> Result<DeltaSpace> {
        Ok(match doc {
            Document::Delta(a) => a.clone(),
            Document::Group(g) => (*j_embed(&FiniteSimplicialGroup::constant(&g.finite(opts.budget)?, opts.max_dim), m.max(1))).clone(),
            Document::Category(rc) => SegalPrecategory::from_category(&rc.category, opts.max_dim, m.max(1))?.space().clone(),
            d => return Err(CommandError::Usage(format!("segal needs a group, category or Δ°-space document, found {}", d.kind()))),
        })
    };
    let as_set = |doc: &Document, need: usize| -> Result<SimplicialSet> {
        match (doc, &set) {
            (_, Some(x)) => Ok(x.clone()),
            (Document::Group(g), None) => classifying_set(&g.finite(opts.budget)?, need),
            (d, None) => Err(CommandError::Usage(format!("expected a simplicial set or group document, found {}", d.kind()))),
        }
    };
    match what {
        What::Homology(n) => {
            let x = as_set(&doc, n + 1)?;
            match homology(&x, n) {
                Ok(h) => {
                    let groups: Vec<String> = h.groups.iter().map(|g| g.to_string()).collect();
                    r.result("homology", groups);
                    r.check(Check::new("homology", true, h.to_string()).with_bound(n));
                }
                Err(Error::Truncated { available, .. }) => {
                    r.check(Check::undetermined("homology", available, "input is truncated below the requested degree"));
                }
                Err(e) => return Err(e.into()),
            }
        }
        What::Pi1 => {
            let x = as_set(&doc, 3)?;
            let (p, _) = edge_path_group(&x, 0)?;
            let mut p = p.simplify();
            r.result("presentation", presentation_json(&p));
            match p.certify_order(opts.budget.min(1_000_000)) {
                Ok(n) => {
                    r.result("order", n);
                    r.check(Check::new("pi1", true, format!("order {n}")));
                }
                Err(Error::BudgetExceeded(_)) => {
                    r.result("order", "not certified");
                    r.check(Check::new("pi1", true, "presentation only; coset enumeration did not close"));
                }
                Err(e) => return Err(e.into()),
            }
        }
        What::Segal(m) => {
            let a = space_of(&doc, m)?;
            let rep = segal_check(&a, m, opts.max_dim.saturating_sub(1))?;
            let verdict = match rep.verdict {
                SegalVerdict::Iso => "iso".to_string(),
                SegalVerdict::EquivalenceCertified { through } => format!("equivalence through degree {through}"),
                SegalVerdict::Failed => "failed".to_string(),
            };
            r.result("segal", verdict.clone());
            r.check(Check::new(format!("segal map at m = {m}"), rep.verdict != SegalVerdict::Failed, verdict));
        }
        What::Kan(d) => {
            let x = as_set(&doc, d + 1)?;
            let k = kan_check(&x, d)?;
            r.result("horns", k.horns);
            r.result("unfillable", k.unfillable.len());
            let witness = k.unfillable.first().map_or(Value::Null, |h| {
                json!({"m": h.m, "k": h.k, "faces": h.faces.iter().map(|f| f.as_ref().map(|s| s.to_string())).collect::<Vec<_>>()})
            });
            r.check(Check::new("kan", k.is_kan(), format!("{} horns through dimension {}", k.horns, k.checked_through)).with_witness(witness));
        }
        What::LoopGroup(n) => {
            let x = as_set(&doc, n + 1)?;
            let g = loop_group(&x, n)?;
            g.validate()?;
            r.result("ranks", (0..=g.top()).map(|k| g.rank(k)).collect::<Vec<_>>());
            let mut p = g.pi0()?.simplify();
            r.result("pi0", presentation_json(&p));
            if let Ok(order) = p.certify_order(opts.budget.min(1_000_000)) {
                r.result("pi0_order", order);
            }
            r.check(Check::new("loop group", true, format!("levels through {}", g.top())));
        }
    }
    Ok(r)
}

pub fn galois(command: Vec<String>, group: &Path, bound: usize, opts: &Options) -> Result<Report> {
    let mut r = start(command, opts);
    r.bound("galois_bound", bound);
    let g = finite_group(group, opts)?;
    r.result("group_order", g.order());
    let sg = FiniteSimplicialGroup::constant(&g, bound);
    let e = eg_dg(&sg, bound)?;
    let iso = e.witness.is_bijective(&e.dg) && e.witness.check_simplicial(&e.orbits, &e.dg).is_ok();
    r.check(Check::new("EG/G = dG", iso, format!("through dimension {bound}")));
    let h = homology(&e.eg.levels.normalize()?.set, bound - 1)?.reduced();
    let acyclic = h.groups.iter().all(|a| a.is_trivial());
    r.check(Check::new("EG acyclic", acyclic, format!("reduced homology zero through degree {}", bound - 1)).with_bound(bound - 1));
    let catalog = GSet::transitive_catalog(&g);
    let round_bound = bound.min(3);
    r.bound("round_trip_dim", round_bound);
    for t in &catalog {
        let name = format!("round trip G/{}", subgroup_name(&g, t));
        let b = borel(&GSimplicialSet::from_gset(t, round_bound), round_bound)?;
        let m = monodromy_m(&b.slice, &FiniteSimplicialGroup::constant(&g, round_bound), None, opts.budget)?;
        let Monodromy::Exact { object, .. } = &m else {
            r.check(Check::new(name, false, "D(T) is not a covering"));
            continue;
        };
        let Some(w) = m.vertex_gset().isomorphism_to(t) else {
            r.check(Check::new(name, false, "M(D(T)) is not isomorphic to T"));
            continue;
        };
        let back = borel(object, round_bound)?.slice.isomorphism_to(&b.slice, opts.budget)?;
        let witness = json!({
            "fiber_to_T": w.iter().map(|&k| t.names[k].clone()).collect::<Vec<_>>(),
        });
        r.check(Check::new(name, back.is_some(), format!("|T| = {}; D(M(D(T))) = D(T) over dG", t.len())).with_witness(witness));
    }
    Ok(r)
}

pub fn reconstruct(command: Vec<String>, group: &Path, opts: &Options) -> Result<Report> {
    let mut r = start(command, opts);
    let g = finite_group(group, opts)?;
    r.result("group_order", g.order());
    let dim = opts.max_dim.saturating_sub(1).max(1);
    let nerve_dim = 2 * dim + 1;
    r.bound("counit_dim", dim);
    let x = classifying_set(&g, nerve_dim)?;
    // (a) counit
    let c = counit_compare(&x, dim, opts.budget)?;
    let cert = &c.certificate;
    let ok = cert.pi0_bijective && cert.pi1_iso != Some(false) && cert.homology_through == Some(dim - 1);
    r.check(
        Check::new("counit d(Omega X) -> X", ok, format!("pi0 bijective {}, pi1 iso {:?}, homology iso through {:?}", cert.pi0_bijective, cert.pi1_iso, cert.homology_through))
            .with_bound(dim),
    );
    // (b) π₀ of the loop Δ°-space
    let l = loops(&x, 0, 2, 1, opts.budget)?;
    let s = pi0_structure(&l.space)?;
    let iso = if s.is_group { FiniteGroup::from_table(&s.table, None).ok().and_then(|h| h.isomorphism_to(&g)) } else { None };
    r.check(Check::new("pi0 of loops", iso.is_some(), format!("order {}, group {}", s.order(), s.is_group)).with_witness(json!(iso)));
    // (c) endomorphisms of the fiber functor
    let ne = natural_end(&g, &GSet::transitive_catalog(&g))?;
    let comparison = ne.comparison.clone().filter(|c| c.1);
    r.check(
        Check::new("End of the fiber functor", comparison.is_some(), format!("{} natural families", ne.families.len()))
            .with_witness(json!(comparison.map(|c| c.0.iter().map(|&k| g.label(k).to_string()).collect::<Vec<_>>()))),
    );
    // (d) π₀ of the loop group
    let norm = eg_dg(&FiniteSimplicialGroup::constant(&g, 3), 3)?.dg.normalize()?;
    let lg = loop_group(&norm.set, 2)?;
    let mut p = lg.pi0()?;
    let images: Vec<usize> = lg.generators[0].iter().map(|s| norm.base_index[1][s.base]).collect();
    let witnessed = p.attach_witness(&g, images.clone(), opts.budget.min(10_000_000))?;
    r.check(
        Check::new("pi0 of the loop group", witnessed, format!("{} generators, order {:?}", p.rank(), p.order))
            .with_witness(json!(images.iter().map(|&k| g.label(k).to_string()).collect::<Vec<_>>())),
    );
    Ok(r)
}

pub fn localize(command: Vec<String>, category: &Path, length: usize, opts: &Options) -> Result<Report> {
    let mut r = start(command, opts);
    r.bound("zigzag_length", length);
    let rc: RelativeCategory = match load_document(category, opts.max_dim)? {
        Document::Category(c) => c,
        d => return Err(CommandError::Usage(format!("expected a category document, found {}", d.kind()))),
    };
    let c = &rc.category;
    let loc = ho_localize_until_stable(&rc, length);
    r.result("length_bound", loc.length_bound);
    r.result("hom_counts", json!(loc.hom_counts));
    r.result("morphisms", loc.representatives.iter().map(|z| z.render(c)).collect::<Vec<_>>());
    if loc.stabilized {
        r.check(Check::new("localization stabilized", true, format!("at zig-zag length {}", loc.length_bound)));
    } else {
        r.check(Check::undetermined("localization stabilized", loc.length_bound, "hom-set counts still changing"));
    }
    let n = c.object_count();
    for x in 0..n {
        for y in 0..n {
            let cmp = compare_pi0(&rc, &loc, x, y)?;
            let name = format!("pi0 hammocks({}, {})", c.objects[x], c.objects[y]);
            let detail = format!("{} components, {} localized morphisms", cmp.hammock_components, cmp.localized_homs);
            r.check(if cmp.stabilized {
                Check::new(name, cmp.bijective, detail).with_bound(cmp.hammock_length)
            } else {
                Check::undetermined(name, cmp.hammock_length, detail)
            });
        }
    }
    r.bound("hammock_length", 2 * loc.length_bound);
    Ok(r)
}

pub fn inspect(command: Vec<String>, input: &Path, opts: &Options) -> Result<Report> {
    let mut r = start(command, opts);
    let doc = load_document(input, opts.max_dim)?;
    r.result("kind", doc.kind());
    match &doc {
        Document::Set(s) => {
            let x = &s.set;
            r.result("counts", x.counts());
            r.result("dim", x.dim());
            if let Some(b) = x.bound() {
                r.result("bound", b);
            }
            r.result("components", x.components().1);
            r.result("reduced", x.is_reduced());
            let euler: i64 = x.counts().iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
            r.result("euler_characteristic", euler);
            r.check(Check::new("simplicial identities", x.check_identities().is_ok(), ""));
        }
        Document::Group(LoadedGroup::Finite(g)) => {
            r.result("order", g.order());
            r.result("abelian", g.is_abelian());
            r.result("subgroups_up_to_conjugacy", g.subgroups_up_to_conjugacy().len());
            r.result("elements", g.labels().to_vec());
            r.check(Check::new("group axioms", true, ""));
        }
        Document::Group(LoadedGroup::Presented(p)) => {
            r.result("presentation", presentation_json(p));
            let mut q = p.clone();
            if let Ok(order) = q.certify_order(opts.budget.min(1_000_000)) {
                r.result("order", order);
            }
            r.check(Check::new("presentation", true, ""));
        }
        Document::GSet(LoadedGSet::Finite(t)) => {
            let (orbit_of, k) = t.orbits();
            r.result("size", t.len());
            r.result("orbits", k);
            r.result("transitive", t.is_transitive());
            let reps: Vec<usize> = (0..k).map(|o| orbit_of.iter().position(|&w| w == o).unwrap_or(0)).collect();
            r.result(
                "stabilizers",
                reps.iter().map(|&x| json!({"point": t.names[x], "stabilizer": t.stabilizer(x).iter().map(|&e| t.group.label(e).to_string()).collect::<Vec<_>>()})).collect::<Vec<_>>(),
            );
            r.check(Check::new("action laws", t.validate().is_ok(), ""));
        }
        Document::GSet(LoadedGSet::Presented(t)) => {
            r.result("size", t.perms.first().map_or(0, |p| p.len()));
            r.result("generators", t.presentation.generators.clone());
            r.check(Check::new("relators act trivially", true, ""));
        }
        Document::Category(rc) => {
            let c = &rc.category;
            r.result("objects", c.object_count());
            r.result("morphisms", c.morphism_count());
            r.result("isomorphisms", c.isomorphisms().len());
            r.result("marked", rc.marked().iter().map(|&f| c.morphisms[f].name.clone()).collect::<Vec<_>>());
            r.check(Check::new("category laws", true, ""));
        }
        Document::Slice(y) => {
            r.result("total_counts", y.total.counts().to_vec());
            r.result("base_counts", y.base.counts().to_vec());
            let through = y.top().saturating_sub(1);
            match CoveringData::new(y.clone(), through) {
                Ok(cov) => {
                    r.result("covering", true);
                    let fibers: Vec<usize> = (0..y.base.count(0)).map(|v| cov.vertex_fiber(v).len()).collect();
                    r.result("vertex_fibers", fibers);
                    if let Ok((act, _)) = covering_monodromy(&cov) {
                        r.result("monodromy", json!({"generators": act.presentation.generators, "permutations": act.perms}));
                    }
                }
                Err(Error::NotCovering(why)) => {
                    r.result("covering", false);
                    r.result("not_covering", why);
                }
                Err(e) => return Err(e.into()),
            }
            r.check(Check::new("map is simplicial", true, "").with_bound(y.top()));
        }
        Document::Delta(a) => {
            r.result("m_bound", a.m_bound());
            r.result("p_top", a.p_top());
            r.result("level_counts", (0..=a.m_bound()).map(|m| a.level(m).counts().to_vec()).collect::<Vec<_>>());
            r.check(Check::new("simplicial identities", a.validate().is_ok(), "").with_bound(a.p_top()));
        }
    }
    Ok(r)
}
